#pragma once

#include "anyonqi/bipartition.hpp"
#include "anyonqi/sampling.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace anyonqi {

/// Message alpha |tau,e;tau> + beta |e,tau;tau> on two anyons.
struct MessageQubit {
  Complex alpha = 1.0;
  Complex beta = 0.0;

  // Throws DomainError unless |alpha|^2 + |beta|^2 = 1 within tol.
  static MessageQubit make(Complex alpha, Complex beta, double tol = kSpectralTol);
  AnyonState state(ModelPtr model) const;
};

// (1,0), (0,1), (1/sqrt2, 1/sqrt2), (0.6, 0.8), (1/sqrt2, i/sqrt2).
std::vector<MessageQubit> message_grid();

enum class Direction {
  a_to_b,  // message joins Alice: M(AB), measured MA, receiver B
  b_to_a,  // message joins Bob: (AB)M, measured BM, receiver A
};
std::string to_string(Direction d);
// Accepts "ab" and "ba".
Direction parse_direction(std::string_view text);

/// Where the message qubit lives on the receiver's two anyons.
struct ReceiverEncoding {
  std::size_t zero = 0;
  std::size_t one = 0;
};

/// Receiver density entries allowed to be nonzero: either the diagonal of
/// `indices`, or the full block they span.
struct ReachableSet {
  std::vector<std::size_t> indices;
  bool diagonal_only = true;
};

struct TeleportScenario {
  std::string name;
  Direction direction = Direction::a_to_b;
  AnyonState resource;  // four anyons, shape ((0 1)(2 3)); A = leaves 0,1
  Charge channel;       // global charge of the six-anyon composition
  // Projectors on the measured pair, shape ((0 1)(2 3)) with the sender's
  // resource anyons first for a_to_b and the message last for b_to_a.
  std::vector<DenseOperator> pvm;
  // One unitary per projector on the receiver's two anyons.
  std::vector<DenseOperator> corrections;
  ReceiverEncoding encoding;
  // Off: projectors and corrections may couple sectors and the receiver
  // state is the plain product-space trace.
  bool enforce_cssr = true;
  std::optional<ReachableSet> reachable;
};

/// Six-anyon state joining message and resource under the root charge
/// `channel`: shape ((0 1)((2 3)(4 5))) for a_to_b and (((0 1)(2 3))(4 5))
/// for b_to_a. Throws FusionError when `channel` is not an outcome of the
/// two global charges.
AnyonState compose(const AnyonState& message, const AnyonState& resource, Direction d, Charge channel);
// The same state written in the measured grouping, (((0 1)(2 3))(4 5)) for
// a_to_b and ((0 1)((2 3)(4 5))) for b_to_a, from one explicit F-move at the
// root rather than the general recoupling engine.
AnyonState compose_in_measured_grouping(const AnyonState& message, const AnyonState& resource, Direction d,
                                        Charge channel);
TreeShape measured_grouping(Direction d);
// Bipartition of the measured grouping, and the side that is measured.
Bipartition measurement_split(const BasisPtr& whole, Direction d);
Side measured_side(Direction d);
Side receiver_side(Direction d);

/// Violations of the projective-measurement conditions: Hermitian,
/// idempotent, mutually orthogonal, summing to at most the identity and, when
/// `enforce_cssr`, free of cross-sector entries. Empty when valid.
std::vector<std::string> validate_pvm(std::span<const DenseOperator> pvm, const SectorBasis& basis, double tol,
                                      bool enforce_cssr = true);
std::vector<std::string> validate_corrections(std::span<const DenseOperator> corrections, const SectorBasis& basis,
                                              double tol, bool enforce_cssr = true);

struct OutcomeBranch {
  double probability = 0.0;
  std::optional<DenseOperator> receiver_state;  // empty at zero probability
  double fidelity = 0.0;
};

struct TeleportOutcome {
  std::vector<OutcomeBranch> outcomes;
  OutcomeBranch no_click;  // residual of the PVM, left uncorrected
  double click_probability = 0.0;
  double average_fidelity = 0.0;  // sum of p_k F_k including the no-click term
};

// Outcomes below this probability carry no state.
inline constexpr double kZeroProbability = 1e-14;

/// Runs measurement, classical communication and correction. Throws
/// CssrViolation (cSSR enforced) or DomainError when the scenario's
/// projectors or corrections are invalid.
TeleportOutcome run_protocol(const TeleportScenario& scenario, const MessageQubit& message);
// As above on a precomposed state in the measured grouping.
TeleportOutcome run_protocol(const TeleportScenario& scenario, const MessageQubit& message,
                             const AnyonState& composed);

/// Sum of |rho_ij| over entries outside `set`.
double off_support_mass(const Matrix& rho, const ReachableSet& set);

/// Complete rank-1 PVM respecting the sectors of `basis`: the columns of an
/// independent Haar unitary in each sector block.
std::vector<DenseOperator> random_sector_pvm(const BasisPtr& basis, Rng& rng);

struct ReachabilityReport {
  std::size_t pvm_samples = 0;
  std::size_t messages = 0;
  std::size_t conditional_states = 0;  // branches with nonzero probability
  double max_off_support = 0.0;
  std::size_t worst_sample = 0;
  // Largest average fidelity when every branch gets the best sector-respecting
  // correction in hindsight.
  double max_hindsight_fidelity = 0.0;
  double max_probability_defect = 0.0;  // |sum p_k - 1|
};

/// Random sector-respecting PVMs on the measured pair (sample k seeded by
/// task_rng(seed, k)), each run against every message; reports the largest
/// receiver mass outside `set`. Scenario PVM and corrections are ignored.
ReachabilityReport receiver_reachability_check(const TeleportScenario& scenario,
                                               std::span<const MessageQubit> messages, std::size_t pvm_samples,
                                               std::uint64_t seed, const ReachableSet& set);

/// Catalog: "main-text", "appendix-d1-symmetric", "appendix-d2-asymmetric".
std::vector<std::string> builtin_scenario_names();
// Throws DomainError for unknown names.
TeleportScenario builtin_scenario(const std::string& name, Direction d, ModelPtr model = shared_fibonacci());

/// a |(e,e),(e,e);e,e;e> + b |(tau,tau),(tau,tau);e,e;e>, normalized.
AnyonState symmetric_vacuum_resource(Complex a, Complex b, ModelPtr model = shared_fibonacci());

/// Receiver-side B to A attempt on the main-text resource with the cSSR
/// ignored: a cross-sector PVM on BM and cross-sector corrections that
/// teleport perfectly in the plain product-space picture.
TeleportScenario unrestricted_reverse_scenario(ModelPtr model = shared_fibonacci());

}  // namespace anyonqi
