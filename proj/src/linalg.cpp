#include "gta/linalg.hpp"

namespace gta {

std::optional<std::map<int, DegreeSolution>> solve_degreewise(const GradedMap& m, const std::map<int, VecQ>& targets,
                                                              const Field& f) {
  std::map<int, DegreeSolution> out;
  for (const auto& [deg, t] : targets) {
    auto it = m.blocks.find(deg);
    if (it == m.blocks.end()) throw std::out_of_range("degree " + std::to_string(deg) + " outside window");
    auto x = solve(it->second, t, f.zero());
    if (!x) return std::nullopt;
    out[deg] = DegreeSolution{*x, kernel(it->second, f.zero())};
  }
  return out;
}

}  // namespace gta
