#pragma once

#include "anyonqi/types.hpp"

#include <iosfwd>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace anyonqi {

/// Defining data of a multiplicity-free anyon theory: particle types, fusion
/// rules N^c_{ab} in {0,1}, F-symbols [F^{abc}_g]_{df}, R-symbols R^{ab}_c and
/// quantum dimensions.
///
/// F-symbols follow the convention
///   |(a,b),c; d; g> = sum_f [F^{abc}_g]_{df} |a,(b,c); f; g>
/// where d is the intermediate charge of (a,b) and f the one of (b,c).
///
/// The setters exist for construction and model loading; share the finished
/// model as `ModelPtr` and treat it as immutable.
class AnyonModel {
 public:
  AnyonModel(std::vector<std::string> names, Charge vacuum);

  std::size_t num_charges() const { return names_.size(); }
  std::vector<Charge> charges() const;
  Charge vacuum() const { return vacuum_; }

  const std::string& name(Charge c) const;
  std::optional<Charge> find(std::string_view name) const;
  // Throws DomainError for unknown labels.
  Charge charge(std::string_view name) const;

  bool fuses(Charge a, Charge b, Charge c) const;
  std::vector<Charge> fusion_outcomes(Charge a, Charge b) const;

  Complex f_symbol(Charge a, Charge b, Charge c, Charge g, Charge d, Charge f) const;
  Complex r_symbol(Charge a, Charge b, Charge c) const;
  double quantum_dim(Charge c) const;

  // Valid intermediate labels of [F^{abc}_g]: rows d with d in a x b and
  // g in d x c, columns f with f in b x c and g in a x f.
  std::vector<Charge> f_rows(Charge a, Charge b, Charge c, Charge g) const;
  std::vector<Charge> f_cols(Charge a, Charge b, Charge c, Charge g) const;
  Matrix f_matrix(Charge a, Charge b, Charge c, Charge g) const;

  void set_fusion(Charge a, Charge b, const std::vector<Charge>& outcomes);
  void set_f_symbol(Charge a, Charge b, Charge c, Charge g, Charge d, Charge f, Complex value);
  void set_r_symbol(Charge a, Charge b, Charge c, Complex value);
  void set_quantum_dim(Charge c, double value);

  // Fills every F-symbol with 1 on fusion-consistent labelings and 0 elsewhere,
  // and every R-symbol with 1 where c is in a x b. Call after the fusion table
  // is complete; later set_* calls override individual entries.
  void fill_trivial_symbols();

 private:
  std::size_t f_offset(Charge a, Charge b, Charge c, Charge g, Charge d, Charge f) const;
  std::size_t r_offset(Charge a, Charge b, Charge c) const;
  void check(Charge c) const;

  std::vector<std::string> names_;
  Charge vacuum_;
  std::vector<bool> fusion_;  // n^3, [a][b][c]
  std::vector<Complex> f_;    // n^6, [a][b][c][g][d][f]
  std::vector<Complex> r_;    // n^3
  std::vector<double> dims_;
};

using ModelPtr = std::shared_ptr<const AnyonModel>;

/// Fibonacci anyons: charges {e, tau}, tau x tau = e + tau.
AnyonModel fibonacci_model();

/// Process-wide shared instance of fibonacci_model().
ModelPtr shared_fibonacci();

namespace fib {
inline constexpr Charge e{0};
inline constexpr Charge tau{1};
}  // namespace fib

/// Every violated model constraint as a human-readable line; empty when the
/// model is consistent within `tol`. Includes the pentagon identity over all
/// four-leaf labelings.
std::vector<std::string> validate_model(const AnyonModel& model, double tol);

/// Largest |lhs - rhs| of the pentagon identity over all labelings.
double pentagon_residual(const AnyonModel& model);

/// Largest ||F^dagger F - I||_max over all F-matrices (infinity when one is not square).
double f_unitarity_residual(const AnyonModel& model);

/// Line-oriented model definition, e.g.
///   charges e tau
///   vacuum e
///   fusion tau tau -> e tau
///   F tau tau tau ; tau ; e e = 0.6180339887498949 0.0
///   R tau tau ; e = -0.8090169943749475 -0.5877852522924731
///   dim tau 1.618033988749895
/// Unlisted F- and R-symbols take the trivial gauge (1 where consistent).
AnyonModel parse_model(std::istream& in);
AnyonModel load_model(const std::string& path);

}  // namespace anyonqi
