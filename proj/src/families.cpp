#include "graphk/families.hpp"

namespace graphk {

Graph family_E(std::uint64_t x, std::uint64_t y, std::uint64_t z) {
  return Graph::from_matrix({{0, 0, 0, 0}, {x, 1, 1, 0}, {y, 1, 1, 1}, {z, 0, 1, 1}});
}

Graph family_F(std::uint64_t y, std::uint64_t z) {
  return Graph::from_matrix({{0, 0, 0}, {y, 3, 1}, {Multiplicity::infinite(), z, 3}});
}

AdmissiblePair family_E_pair() { return {{0}, {}}; }
AdmissiblePair family_F_pair() { return {{0}, {2}}; }

}  // namespace graphk
