#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "gta/algebra.hpp"

namespace gta {

struct ParseError : std::runtime_error {
  ParseError(int line, int col, const std::string& msg)
      : std::runtime_error("line " + std::to_string(line) + ", col " + std::to_string(col) + ": " + msg),
        line(line),
        col(col) {}
  int line, col;
};

struct GtaFile {
  AlgebraBuilder builder;
  bool explicit_basis = false;  // elem lines present; otherwise the basis is generated from components
  std::vector<std::pair<std::string, std::string>> tau;
};

GtaFile parse_gta(const std::string& text);
AlgebraPtr build_gta(const GtaFile& f);
GtaFile read_gta_file(const std::string& path);

std::string export_gta(const TriangularAlgebra& a, const std::vector<std::pair<std::string, std::string>>& tau = {});

}  // namespace gta
