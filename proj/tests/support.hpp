#pragma once

#include "anyonqi/bipartition.hpp"
#include "anyonqi/recoupling.hpp"
#include "anyonqi/text_format.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

namespace testing_support {

using namespace anyonqi;

inline const double phi = std::numbers::phi;

inline BasisPtr basis_of(int n) { return enumerate_basis(shared_fibonacci(), TreeShape::left_comb(n)); }
inline BasisPtr basis_of(const std::string& shape) {
  return enumerate_basis(shared_fibonacci(), TreeShape::parse(shape));
}

inline AnyonState state_of(const BasisPtr& b, std::initializer_list<std::pair<Complex, const char*>> terms) {
  Vector v = Vector::Zero(static_cast<Eigen::Index>(b->size()));
  for (const auto& [w, label] : terms) v(static_cast<Eigen::Index>(parse_basis_label(*b, label))) += w;
  return AnyonState(b, v);
}

inline std::size_t idx(const BasisPtr& b, const char* label) { return parse_basis_label(*b, label); }

}  // namespace testing_support
