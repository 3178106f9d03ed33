#pragma once

#include "anyonqi/bipartition.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace anyonqi {

/// Hermitian spanning set of the block-diagonal operators on `subsystem`:
/// per sector, E_ii, then E_ij + E_ji and i(E_ji - E_ij) for i < j.
std::vector<BlockOperator> local_observable_basis(const BasisPtr& subsystem);

/// Signed Tr(O_A O_B rho) - Tr(O_A rho_A) Tr(O_B rho_B) for Hermitian O_A, O_B.
double correlation_defect(const BlockOperator& rho, const Bipartition& bip, const BlockOperator& o_a,
                          const BlockOperator& o_b);
// Defects for every pair of spanning observables, rows indexed by O_A.
Eigen::MatrixXd correlation_matrix(const BlockOperator& rho, const Bipartition& bip);

struct CorrelationReport {
  bool uncorrelated = false;
  double max_violation = 0.0;
  std::size_t witness_a = 0;  // index into local_observable_basis of side A
  std::size_t witness_b = 0;
  std::vector<double> spectrum_a;
  std::vector<double> spectrum_b;
  bool spectra_symmetric = false;
};

CorrelationReport is_uncorrelated(const BlockOperator& rho, const Bipartition& bip, double tol);

// Equal spectra after padding the shorter one with zeros.
bool same_spectra(std::vector<double> a, std::vector<double> b, double tol);

enum class PureClass { product_e_alpha, product_e_beta, class_1_tau, class_2_tau, entangled };

struct PureClassLabel {
  Charge sector;
  PureClass cls;
};

std::string to_string(PureClass c);
bool is_uncorrelated_class(PureClass c);

/// Coefficients of a two-anyon pure state:
///   alpha_e |e,e;e> + beta_e |tau,tau;e>,
///   alpha_tau |tau,e;tau> + beta_tau |e,tau;tau> + gamma_tau |tau,tau;tau>.
struct TwoAnyonCoefficients {
  Complex alpha_e, beta_e, alpha_tau, beta_tau, gamma_tau;
};
TwoAnyonCoefficients two_anyon_coefficients(const AnyonState& psi);

/// Closed-form class from the coefficient support. Coefficients below tol
/// count as zero; when both alpha_tau and beta_tau vanish the label is
/// class-1-tau. Throws DomainError unless psi is a two-anyon Fibonacci state.
PureClassLabel classify_pure_2anyon(const AnyonState& psi, double tol = 1e-10);

struct MaximalEntanglement {
  bool maximal = false;
  // arg(alpha_tau) - arg(beta_tau) for the tau-sector form, in (-pi, pi].
  std::optional<double> phase;
};

// True iff both one-anyon marginals equal diag(1/2, 1/2) within tol.
MaximalEntanglement is_maximally_entangled_2anyon(const AnyonState& psi, double tol = 1e-10);

/// Applies `samples` random products U_A V_B of local cSSR unitaries and
/// checks that every amplitude modulus is unchanged to 1e-12.
bool local_unitary_orbit_check(const AnyonState& psi, int samples, std::uint64_t seed);

}  // namespace anyonqi
