#pragma once

#include <Eigen/Dense>

#include <complex>
#include <compare>
#include <cstdint>

namespace anyonqi {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

// Index of a particle type within its AnyonModel.
struct Charge {
  std::uint8_t id = 0;

  friend constexpr auto operator<=>(Charge, Charge) = default;
};

inline constexpr std::size_t npos = static_cast<std::size_t>(-1);

}  // namespace anyonqi
