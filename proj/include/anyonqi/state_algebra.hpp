#pragma once

#include "anyonqi/fusion_space.hpp"

#include <span>
#include <string>
#include <utility>
#include <vector>

namespace anyonqi {

inline constexpr double kStructuralTol = 1e-12;
inline constexpr double kSpectralTol = 1e-10;

/// Pure state over a fusion-tree basis, confined to one global-charge sector.
class AnyonState {
 public:
  // Throws DomainError on size mismatch or a zero vector, CssrViolation when
  // more than one sector carries weight above `tol`.
  AnyonState(BasisPtr basis, Vector amplitudes, double tol = kStructuralTol);

  const SectorBasis& basis() const { return *basis_; }
  const BasisPtr& basis_ptr() const { return basis_; }
  const Vector& amplitudes() const { return amps_; }
  Complex operator[](std::size_t i) const { return amps_(static_cast<Eigen::Index>(i)); }
  Complex amplitude(const FusionTree& tree) const;

  Charge sector() const { return sector_; }
  double norm() const { return amps_.norm(); }
  bool is_normalized(double tol = kSpectralTol) const { return std::abs(norm() - 1.0) <= tol; }

 private:
  BasisPtr basis_;
  Vector amps_;
  Charge sector_;
};

AnyonState ket(BasisPtr basis, const FusionTree& tree);
AnyonState ket(BasisPtr basis, std::size_t index);

struct Superposition {
  AnyonState state;
  double norm;  // norm of the raw sum before normalization
};

// Sum of weighted states over the same basis, normalized. Cross-sector terms
// throw CssrViolation; an empty or vanishing sum throws DomainError.
Superposition superpose(std::span<const std::pair<Complex, AnyonState>> terms);
Superposition superpose(std::initializer_list<std::pair<Complex, AnyonState>> terms);

/// Operator over a full basis with no superselection structure imposed.
/// Used for imported matrices and for the unrestricted (cSSR-ignoring) mode.
struct DenseOperator {
  BasisPtr basis;
  Matrix matrix;
};

/// Operator that is block diagonal across global-charge sectors.
class BlockOperator {
 public:
  static BlockOperator zero(BasisPtr basis);
  static BlockOperator identity(BasisPtr basis);
  static BlockOperator projector(const AnyonState& psi);
  // Throws CssrViolation if an entry between different sectors exceeds tol.
  static BlockOperator from_dense(BasisPtr basis, const Matrix& m, double tol = kStructuralTol);
  static BlockOperator from_dense(const DenseOperator& op, double tol = kStructuralTol);

  const SectorBasis& basis() const { return *basis_; }
  const BasisPtr& basis_ptr() const { return basis_; }

  // Sector block of charge g (0x0 for empty sectors).
  const Matrix& block(Charge g) const { return blocks_.at(g.id); }
  Matrix& block(Charge g) { return blocks_.at(g.id); }
  Complex element(std::size_t row, std::size_t col) const;

  Matrix to_dense() const;
  DenseOperator dense() const { return {basis_, to_dense()}; }

  BlockOperator adjoint() const;
  Vector apply(const Vector& v) const;
  // The image may be zero or unnormalized; throws DomainError if it vanishes.
  AnyonState apply(const AnyonState& psi) const;

  BlockOperator& operator+=(const BlockOperator& o);
  BlockOperator& operator-=(const BlockOperator& o);
  BlockOperator& operator*=(Complex s);
  friend BlockOperator operator+(BlockOperator a, const BlockOperator& b) { return a += b; }
  friend BlockOperator operator-(BlockOperator a, const BlockOperator& b) { return a -= b; }
  friend BlockOperator operator*(BlockOperator a, Complex s) { return a *= s; }
  friend BlockOperator operator*(Complex s, BlockOperator a) { return a *= s; }
  friend BlockOperator operator*(const BlockOperator& a, const BlockOperator& b);

 private:
  explicit BlockOperator(BasisPtr basis);
  void check_same(const BlockOperator& o) const;

  BasisPtr basis_;
  std::vector<Matrix> blocks_;
};

Complex trace(const BlockOperator& op);
// Tr(a * b) without forming the product.
Complex trace_product(const BlockOperator& a, const BlockOperator& b);
double purity(const BlockOperator& rho);
// All eigenvalues of a self-adjoint operator, sorted descending.
std::vector<double> spectrum(const BlockOperator& rho);
// <psi|rho|psi>; DomainError when the bases differ.
double fidelity(const AnyonState& psi, const BlockOperator& rho);
double fidelity(const AnyonState& psi, const DenseOperator& rho);

// True iff every cross-sector entry of m is at most tol in modulus.
bool validate_cssr(const SectorBasis& basis, const Matrix& m, double tol);
bool validate_cssr(const DenseOperator& op, double tol);
bool validate_cssr(const BlockOperator& op, double tol);

// Violated density-operator conditions (self-adjoint, PSD, unit trace).
std::vector<std::string> density_violations(const BlockOperator& rho, double tol = kSpectralTol);
bool is_density(const BlockOperator& rho, double tol = kSpectralTol);

double max_abs(const Matrix& m);

}  // namespace anyonqi
