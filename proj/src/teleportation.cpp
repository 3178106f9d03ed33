#include "anyonqi/teleportation.hpp"

#include "anyonqi/errors.hpp"
#include "anyonqi/recoupling.hpp"
#include "anyonqi/text_format.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <numbers>

namespace anyonqi {

namespace {

using Eigen::Index;

Index ix(std::size_t i) { return static_cast<Index>(i); }

std::vector<Charge> concat(std::initializer_list<std::span<const Charge>> parts) {
  std::vector<Charge> out;
  for (auto p : parts) out.insert(out.end(), p.begin(), p.end());
  return out;
}

// Tree of one side of a resource state's root split.
struct Parts {
  FusionTree a;
  FusionTree b;
};

Parts split_tree(const Bipartition& bip, std::size_t i) {
  return {bip.subsystem(Side::A)->tree_at(bip.part_index(i, Side::A)),
          bip.subsystem(Side::B)->tree_at(bip.part_index(i, Side::B))};
}

void require_fusion(const AnyonModel& m, Charge a, Charge b, Charge channel) {
  if (!m.fuses(a, b, channel)) {
    throw FusionError(m.name(channel) + " is not a fusion outcome of " + m.name(a) + " x " + m.name(b));
  }
}

void require_same_model(const AnyonState& x, const AnyonState& y) {
  if (x.basis().model_ptr() != y.basis().model_ptr()) throw DomainError("message and resource use different models");
}

void require_resource(const AnyonState& resource) {
  if (resource.basis().num_leaves() != 4 || !(resource.basis().shape() == TreeShape::grouped(2, 2))) {
    throw ShapeError("resource must be a four-anyon state of shape ((0 1)(2 3))");
  }
}

Matrix rank_one(const Vector& v) { return v * v.adjoint(); }

double min_eigenvalue(const Matrix& m) {
  if (m.rows() == 0) return 0.0;
  const Matrix h = 0.5 * (m + m.adjoint());
  return Eigen::SelfAdjointEigenSolver<Matrix>(h, Eigen::EigenvaluesOnly).eigenvalues().minCoeff();
}

double max_eigenvalue(const Matrix& m) {
  if (m.rows() == 0) return 0.0;
  const Matrix h = 0.5 * (m + m.adjoint());
  return Eigen::SelfAdjointEigenSolver<Matrix>(h, Eigen::EigenvaluesOnly).eigenvalues().maxCoeff();
}

void require_operator_on(const DenseOperator& op, const SectorBasis& basis, const char* what) {
  const Index n = ix(basis.size());
  if (op.matrix.rows() != n || op.matrix.cols() != n) {
    throw DomainError(std::string(what) + " has size " + std::to_string(op.matrix.rows()) + ", expected " +
                      std::to_string(n));
  }
  if (op.basis && !(op.basis->shape() == basis.shape())) {
    throw DomainError(std::string(what) + " is defined on shape " + op.basis->shape().to_string() + ", expected " +
                      basis.shape().to_string());
  }
}

Vector encoded_target(const SectorBasis& receiver, const ReceiverEncoding& enc, const MessageQubit& msg) {
  if (enc.zero >= receiver.size() || enc.one >= receiver.size() || enc.zero == enc.one) {
    throw DomainError("receiver encoding indices are invalid");
  }
  Vector t = Vector::Zero(ix(receiver.size()));
  t(ix(enc.zero)) = msg.alpha;
  t(ix(enc.one)) = msg.beta;
  return t;
}

OutcomeBranch make_branch(double p, Matrix rho, const Matrix* correction, const Vector& target) {
  OutcomeBranch br;
  br.probability = p;
  if (p < kZeroProbability) return br;
  if (correction) rho = (*correction) * rho * correction->adjoint();
  br.fidelity = target.dot(rho * target).real();
  br.receiver_state = DenseOperator{nullptr, std::move(rho)};
  return br;
}

// Pauli-like operator acting on the (zero, one) pair, identity elsewhere.
Matrix encoded_pauli(char which, const ReceiverEncoding& enc, std::size_t n) {
  Matrix m = Matrix::Identity(ix(n), ix(n));
  const Index z = ix(enc.zero), o = ix(enc.one);
  switch (which) {
    case 'I': break;
    case 'X':
      m(z, z) = m(o, o) = 0.0;
      m(z, o) = m(o, z) = 1.0;
      break;
    case 'Y':
      m(z, z) = m(o, o) = 0.0;
      m(z, o) = Complex(0.0, -1.0);
      m(o, z) = Complex(0.0, 1.0);
      break;
    case 'Z': m(o, o) = -1.0; break;
    default: throw DomainError(std::string("unknown Pauli ") + which);
  }
  return m;
}

struct Catalog {
  BasisPtr pair;      // two anyons, receiver side
  BasisPtr measured;  // ((0 1)(2 3))
  BasisPtr resource;  // ((0 1)(2 3))
};

Catalog catalog_bases(const ModelPtr& model) {
  const auto four = enumerate_basis(model, TreeShape::grouped(2, 2));
  return {enumerate_basis(model, TreeShape::left_comb(2)), four, four};
}

Vector combo(const SectorBasis& b, std::initializer_list<std::pair<Complex, std::string_view>> terms) {
  Vector v = Vector::Zero(ix(b.size()));
  for (const auto& [w, label] : terms) v(ix(parse_basis_label(b, label))) += w;
  return v / v.norm();
}

AnyonState resource_state(const BasisPtr& b, std::initializer_list<std::pair<Complex, std::string_view>> terms) {
  return AnyonState(b, combo(*b, terms));
}

// Projectors onto (x +- y)/sqrt2 for each listed pair, in order +, -.
std::vector<DenseOperator> bell_pvm(const BasisPtr& b, std::initializer_list<std::pair<const char*, const char*>> pairs) {
  std::vector<DenseOperator> out;
  for (const auto& [x, y] : pairs) {
    out.push_back({b, rank_one(combo(*b, {{1.0, x}, {1.0, y}}))});
    out.push_back({b, rank_one(combo(*b, {{1.0, x}, {-1.0, y}}))});
  }
  return out;
}

std::vector<DenseOperator> paulis(const BasisPtr& pair, const ReceiverEncoding& enc, std::string_view which) {
  std::vector<DenseOperator> out;
  for (char c : which) out.push_back({pair, encoded_pauli(c, enc, pair->size())});
  return out;
}

ReceiverEncoding encoding(const SectorBasis& pair, const char* zero, const char* one) {
  return {parse_basis_label(pair, zero), parse_basis_label(pair, one)};
}

ReachableSet reach(const SectorBasis& pair, std::initializer_list<const char*> labels, bool diagonal_only) {
  ReachableSet s;
  for (const char* l : labels) s.indices.push_back(parse_basis_label(pair, l));
  s.diagonal_only = diagonal_only;
  return s;
}

}  // namespace

MessageQubit MessageQubit::make(Complex alpha, Complex beta, double tol) {
  const double n = std::norm(alpha) + std::norm(beta);
  if (std::abs(n - 1.0) > tol) throw DomainError("message is not normalized: |alpha|^2 + |beta|^2 = " + format_double(n));
  return {alpha, beta};
}

AnyonState MessageQubit::state(ModelPtr model) const {
  const auto b = enumerate_basis(model, TreeShape::left_comb(2));
  Vector v = Vector::Zero(ix(b->size()));
  v(ix(parse_basis_label(*b, "tau,e;tau"))) = alpha;
  v(ix(parse_basis_label(*b, "e,tau;tau"))) = beta;
  return AnyonState(b, v);
}

std::vector<MessageQubit> message_grid() {
  const double s = 1.0 / std::numbers::sqrt2;
  return {{1.0, 0.0}, {0.0, 1.0}, {s, s}, {0.6, 0.8}, {s, Complex(0.0, s)}};
}

std::string to_string(Direction d) { return d == Direction::a_to_b ? "ab" : "ba"; }

Direction parse_direction(std::string_view text) {
  if (text == "ab") return Direction::a_to_b;
  if (text == "ba") return Direction::b_to_a;
  throw DomainError("direction must be ab or ba, got '" + std::string(text) + "'");
}

TreeShape measured_grouping(Direction d) {
  return d == Direction::a_to_b ? TreeShape::parse("(((0 1)(2 3))(4 5))") : TreeShape::parse("((0 1)((2 3)(4 5)))");
}

Side measured_side(Direction d) { return d == Direction::a_to_b ? Side::A : Side::B; }
Side receiver_side(Direction d) { return d == Direction::a_to_b ? Side::B : Side::A; }

Bipartition measurement_split(const BasisPtr& whole, Direction d) {
  return Bipartition(whole, d == Direction::a_to_b ? 4 : 2);
}

AnyonState compose(const AnyonState& message, const AnyonState& resource, Direction d, Charge channel) {
  require_same_model(message, resource);
  const AnyonState& left = d == Direction::a_to_b ? message : resource;
  const AnyonState& right = d == Direction::a_to_b ? resource : message;
  const AnyonModel& m = message.basis().model();
  require_fusion(m, left.sector(), right.sector(), channel);
  const auto basis = enumerate_basis(message.basis().model_ptr(),
                                     TreeShape::join(left.basis().shape(), right.basis().shape()));
  Vector v = Vector::Zero(ix(basis->size()));
  const Charge root[] = {channel};
  for (std::size_t i = 0; i < left.basis().size(); ++i) {
    if (left[i] == 0.0) continue;
    const FusionTree& lt = left.basis().tree_at(i);
    for (std::size_t j = 0; j < right.basis().size(); ++j) {
      if (right[j] == 0.0) continue;
      const FusionTree& rt = right.basis().tree_at(j);
      FusionTree t{concat({lt.leaves, rt.leaves}), concat({root, lt.internal, rt.internal}), channel};
      v(ix(basis->index_of(t))) += left[i] * right[j];
    }
  }
  return AnyonState(basis, v);
}

AnyonState compose_in_measured_grouping(const AnyonState& message, const AnyonState& resource, Direction d,
                                        Charge channel) {
  require_same_model(message, resource);
  require_resource(resource);
  const AnyonModel& m = message.basis().model();
  require_fusion(m, message.sector(), resource.sector(), channel);
  const auto basis = enumerate_basis(message.basis().model_ptr(), measured_grouping(d));
  const Bipartition rb(resource.basis_ptr());
  Vector v = Vector::Zero(ix(basis->size()));
  const Charge g = channel;
  for (std::size_t i = 0; i < message.basis().size(); ++i) {
    if (message[i] == 0.0) continue;
    const FusionTree& mt = message.basis().tree_at(i);
    for (std::size_t j = 0; j < resource.basis().size(); ++j) {
      if (resource[j] == 0.0) continue;
      const Complex c = message[i] * resource[j];
      const Charge y = resource.basis().tree_at(j).global;
      const auto [at, bt] = split_tree(rb, j);
      if (d == Direction::a_to_b) {
        // (M (A B)_y)_g -> ((M A)_x B)_g
        for (Charge x : m.f_rows(mt.global, at.global, bt.global, g)) {
          const Complex f = std::conj(m.f_symbol(mt.global, at.global, bt.global, g, x, y));
          if (f == 0.0) continue;
          const Charge head[] = {g, x};
          FusionTree t{concat({mt.leaves, at.leaves, bt.leaves}), concat({head, mt.internal, at.internal, bt.internal}),
                       g};
          v(ix(basis->index_of(t))) += f * c;
        }
      } else {
        // ((A B)_y M)_g -> (A (B M)_z)_g
        for (Charge z : m.f_cols(at.global, bt.global, mt.global, g)) {
          const Complex f = m.f_symbol(at.global, bt.global, mt.global, g, y, z);
          if (f == 0.0) continue;
          const Charge head[] = {g};
          const Charge mid[] = {z};
          FusionTree t{concat({at.leaves, bt.leaves, mt.leaves}),
                       concat({head, at.internal, mid, bt.internal, mt.internal}), g};
          v(ix(basis->index_of(t))) += f * c;
        }
      }
    }
  }
  return AnyonState(basis, v);
}

std::vector<std::string> validate_pvm(std::span<const DenseOperator> pvm, const SectorBasis& basis, double tol,
                                      bool enforce_cssr) {
  std::vector<std::string> out;
  const Index n = ix(basis.size());
  Matrix sum = Matrix::Zero(n, n);
  bool sized = true;
  for (std::size_t k = 0; k < pvm.size(); ++k) {
    const Matrix& p = pvm[k].matrix;
    const std::string tag = "projector " + std::to_string(k);
    if (p.rows() != n || p.cols() != n) {
      out.push_back(tag + " has the wrong size");
      sized = false;
      continue;
    }
    if (enforce_cssr && !validate_cssr(basis, p, tol)) out.push_back(tag + " couples different global-charge sectors");
    if (max_abs(p - p.adjoint()) > tol) out.push_back(tag + " is not Hermitian");
    if (max_abs(p * p - p) > tol) out.push_back(tag + " is not idempotent");
    sum += p;
  }
  if (!sized) return out;
  for (std::size_t i = 0; i < pvm.size(); ++i) {
    for (std::size_t j = i + 1; j < pvm.size(); ++j) {
      if (max_abs(pvm[i].matrix * pvm[j].matrix) > tol) {
        out.push_back("projectors " + std::to_string(i) + " and " + std::to_string(j) + " are not orthogonal");
      }
    }
  }
  if (min_eigenvalue(Matrix::Identity(n, n) - sum) < -tol) out.push_back("projectors sum to more than the identity");
  return out;
}

std::vector<std::string> validate_corrections(std::span<const DenseOperator> corrections, const SectorBasis& basis,
                                              double tol, bool enforce_cssr) {
  std::vector<std::string> out;
  const Index n = ix(basis.size());
  for (std::size_t k = 0; k < corrections.size(); ++k) {
    const Matrix& u = corrections[k].matrix;
    const std::string tag = "correction " + std::to_string(k);
    if (u.rows() != n || u.cols() != n) {
      out.push_back(tag + " has the wrong size");
      continue;
    }
    if (enforce_cssr && !validate_cssr(basis, u, tol)) out.push_back(tag + " couples different global-charge sectors");
    if (max_abs(u.adjoint() * u - Matrix::Identity(n, n)) > tol) out.push_back(tag + " is not unitary");
  }
  return out;
}

TeleportOutcome run_protocol(const TeleportScenario& scenario, const MessageQubit& message) {
  require_resource(scenario.resource);
  const auto composed = compose(message.state(scenario.resource.basis().model_ptr()), scenario.resource,
                                scenario.direction, scenario.channel);
  return run_protocol(scenario, message, change_shape(composed, measured_grouping(scenario.direction)));
}

TeleportOutcome run_protocol(const TeleportScenario& s, const MessageQubit& message, const AnyonState& composed) {
  const Bipartition bip = measurement_split(composed.basis_ptr(), s.direction);
  const Side ms = measured_side(s.direction), rs = receiver_side(s.direction);
  const BasisPtr& measured = bip.subsystem(ms);
  const BasisPtr& receiver = bip.subsystem(rs);
  if (s.corrections.size() != s.pvm.size()) throw DomainError("need one correction per projector");
  for (const auto& p : s.pvm) require_operator_on(p, *measured, "projector");
  for (const auto& u : s.corrections) require_operator_on(u, *receiver, "correction");

  const double tol = 1e-10;
  auto problems = validate_pvm(s.pvm, *measured, tol, s.enforce_cssr);
  const auto cproblems = validate_corrections(s.corrections, *receiver, tol, s.enforce_cssr);
  problems.insert(problems.end(), cproblems.begin(), cproblems.end());
  if (!problems.empty()) {
    const bool cssr = std::any_of(problems.begin(), problems.end(),
                                  [](const std::string& p) { return p.find("sectors") != std::string::npos; });
    if (cssr) throw CssrViolation(problems.front());
    throw DomainError(problems.front());
  }

  const Vector target = encoded_target(*receiver, s.encoding, message);
  const Index nm = ix(measured->size());
  Matrix residual = Matrix::Identity(nm, nm);
  for (const auto& p : s.pvm) residual -= p.matrix;

  TeleportOutcome out;
  auto finish = [&](OutcomeBranch br) {
    if (br.receiver_state) br.receiver_state->basis = receiver;
    return br;
  };

  if (s.enforce_cssr) {
    auto branch = [&](const Matrix& p, const Matrix* correction) {
      const auto big = embed_local(BlockOperator::from_dense(measured, p, tol), bip, ms);
      const Vector phi = big.apply(composed.amplitudes());
      const double prob = phi.squaredNorm();
      if (prob < kZeroProbability) return OutcomeBranch{prob, std::nullopt, 0.0};
      const auto rho = partial_trace(AnyonState(composed.basis_ptr(), phi / std::sqrt(prob)), bip, ms);
      return finish(make_branch(prob, rho.to_dense(), correction, target));
    };
    for (std::size_t k = 0; k < s.pvm.size(); ++k) out.outcomes.push_back(branch(s.pvm[k].matrix, &s.corrections[k].matrix));
    out.no_click = branch(residual, nullptr);
  } else {
    // Plain product-space picture: amplitudes indexed by (measured, receiver) labelings.
    Matrix psi = Matrix::Zero(nm, ix(receiver->size()));
    for (std::size_t i = 0; i < composed.basis().size(); ++i) {
      psi(ix(bip.part_index(i, ms)), ix(bip.part_index(i, rs))) += composed[i];
    }
    auto branch = [&](const Matrix& p, const Matrix* correction) {
      const Matrix phi = p * psi;
      const double prob = phi.squaredNorm();
      if (prob < kZeroProbability) return OutcomeBranch{prob, std::nullopt, 0.0};
      Matrix rho = phi.transpose() * phi.conjugate() / prob;
      return finish(make_branch(prob, std::move(rho), correction, target));
    };
    for (std::size_t k = 0; k < s.pvm.size(); ++k) out.outcomes.push_back(branch(s.pvm[k].matrix, &s.corrections[k].matrix));
    out.no_click = branch(residual, nullptr);
  }

  for (const auto& br : out.outcomes) {
    out.click_probability += br.probability;
    out.average_fidelity += br.probability * br.fidelity;
  }
  out.average_fidelity += out.no_click.probability * out.no_click.fidelity;
  return out;
}

double off_support_mass(const Matrix& rho, const ReachableSet& set) {
  std::vector<bool> in(static_cast<std::size_t>(rho.rows()), false);
  for (std::size_t i : set.indices) {
    if (i < in.size()) in[i] = true;
  }
  double mass = 0.0;
  for (Index j = 0; j < rho.cols(); ++j) {
    for (Index i = 0; i < rho.rows(); ++i) {
      const bool ok = set.diagonal_only ? (i == j && in[static_cast<std::size_t>(i)])
                                        : (in[static_cast<std::size_t>(i)] && in[static_cast<std::size_t>(j)]);
      if (!ok) mass += std::abs(rho(i, j));
    }
  }
  return mass;
}

std::vector<DenseOperator> random_sector_pvm(const BasisPtr& basis, Rng& rng) {
  std::vector<DenseOperator> out;
  const Index n = ix(basis->size());
  for (std::size_t g = 0; g < basis->num_sectors(); ++g) {
    const Charge c{static_cast<std::uint8_t>(g)};
    const std::size_t d = basis->sector_dimension(c);
    if (d == 0) continue;
    const Matrix u = haar_unitary(rng, d);
    const Index off = ix(basis->sector_offset(c));
    for (Index k = 0; k < u.cols(); ++k) {
      Matrix p = Matrix::Zero(n, n);
      p.block(off, off, u.rows(), u.rows()) = rank_one(u.col(k));
      out.push_back({basis, std::move(p)});
    }
  }
  return out;
}

ReachabilityReport receiver_reachability_check(const TeleportScenario& scenario,
                                               std::span<const MessageQubit> messages, std::size_t pvm_samples,
                                               std::uint64_t seed, const ReachableSet& set) {
  require_resource(scenario.resource);
  ReachabilityReport report;
  report.pvm_samples = pvm_samples;
  report.messages = messages.size();
  if (messages.empty() || pvm_samples == 0) return report;

  const ModelPtr& model = scenario.resource.basis().model_ptr();
  std::vector<AnyonState> composed;
  for (const auto& msg : messages) {
    composed.push_back(change_shape(compose(msg.state(model), scenario.resource, scenario.direction, scenario.channel),
                                    measured_grouping(scenario.direction)));
  }
  const Bipartition bip = measurement_split(composed.front().basis_ptr(), scenario.direction);
  const Side ms = measured_side(scenario.direction);
  const SectorBasis& receiver = *bip.subsystem(receiver_side(scenario.direction));
  const Charge target_sector = receiver.sector_of(scenario.encoding.zero);

  struct Sample {
    std::size_t states = 0;
    double off = 0.0;
    double hindsight = 0.0;
    double prob_defect = 0.0;
  };
  std::vector<Sample> samples(pvm_samples);
  const auto n = static_cast<std::int64_t>(pvm_samples);
#pragma omp parallel for schedule(dynamic)
  for (std::int64_t s = 0; s < n; ++s) {
    Rng rng = task_rng(seed, static_cast<std::uint64_t>(s));
    std::vector<BlockOperator> big;
    for (const auto& p : random_sector_pvm(bip.subsystem(ms), rng)) {
      big.push_back(embed_local(BlockOperator::from_dense(p), bip, ms));
    }
    Sample& out = samples[static_cast<std::size_t>(s)];
    for (const auto& psi : composed) {
      double total = 0.0, fid = 0.0;
      for (const auto& b : big) {
        const Vector phi = b.apply(psi.amplitudes());
        const double prob = phi.squaredNorm();
        total += prob;
        if (prob < kZeroProbability) continue;
        const auto rho = partial_trace(AnyonState(psi.basis_ptr(), phi / std::sqrt(prob)), bip, ms);
        ++out.states;
        out.off = std::max(out.off, off_support_mass(rho.to_dense(), set));
        fid += prob * max_eigenvalue(rho.block(target_sector));
      }
      out.hindsight = std::max(out.hindsight, fid);
      out.prob_defect = std::max(out.prob_defect, std::abs(total - 1.0));
    }
  }
  for (std::size_t s = 0; s < samples.size(); ++s) {
    report.conditional_states += samples[s].states;
    if (samples[s].off > report.max_off_support) {
      report.max_off_support = samples[s].off;
      report.worst_sample = s;
    }
    report.max_hindsight_fidelity = std::max(report.max_hindsight_fidelity, samples[s].hindsight);
    report.max_probability_defect = std::max(report.max_probability_defect, samples[s].prob_defect);
  }
  return report;
}

std::vector<std::string> builtin_scenario_names() {
  return {"main-text", "appendix-d1-symmetric", "appendix-d2-asymmetric"};
}

AnyonState symmetric_vacuum_resource(Complex a, Complex b, ModelPtr model) {
  const auto basis = enumerate_basis(model, TreeShape::grouped(2, 2));
  return resource_state(basis, {{a, "(e,e),(e,e);e,e;e"}, {b, "(tau,tau),(tau,tau);e,e;e"}});
}

TeleportScenario builtin_scenario(const std::string& name, Direction d, ModelPtr model) {
  const Catalog c = catalog_bases(model);
  const SectorBasis& pair = *c.pair;
  const bool ab = d == Direction::a_to_b;
  const ReceiverEncoding qubit = encoding(pair, "tau,e;tau", "e,tau;tau");
  const double r2 = std::numbers::sqrt2;

  if (name == "main-text") {
    auto res = resource_state(c.resource, {{1.0, "(e,e),(e,tau);e,tau;tau"}, {1.0, "(tau,e),(tau,e);tau,tau;tau"}});
    if (ab) {
      return {name, d, std::move(res), fib::e,
              bell_pvm(c.measured, {{"(tau,e),(e,e);tau,e;tau", "(e,tau),(tau,e);tau,tau;tau"},
                                    {"(tau,e),(tau,e);tau,tau;tau", "(e,tau),(e,e);tau,e;tau"}}),
              paulis(c.pair, qubit, "XYIZ"), qubit, true,
              reach(pair, {"tau,e;tau", "e,tau;tau", "tau,tau;tau"}, false)};
    }
    return {name, d, std::move(res), fib::e,
            bell_pvm(c.measured, {{"(e,tau),(tau,e);tau,tau;e", "(e,tau),(e,tau);tau,tau;e"},
                                  {"(tau,e),(tau,e);tau,tau;tau", "(tau,e),(e,tau);tau,tau;tau"}}),
            paulis(c.pair, qubit, "IIII"), qubit, true, reach(pair, {"e,e;e", "tau,e;tau"}, true)};
  }

  if (name == "appendix-d1-symmetric") {
    const ReceiverEncoding vac = encoding(pair, "tau,tau;e", "e,e;e");
    auto pvm = ab ? bell_pvm(c.measured, {{"(tau,e),(e,e);tau,e;tau", "(e,tau),(tau,tau);tau,e;tau"},
                                          {"(tau,e),(tau,tau);tau,e;tau", "(e,tau),(e,e);tau,e;tau"}})
                  : bell_pvm(c.measured, {{"(e,e),(tau,e);e,tau;tau", "(tau,tau),(e,tau);e,tau;tau"},
                                          {"(tau,tau),(tau,e);e,tau;tau", "(e,e),(e,tau);e,tau;tau"}});
    return {name, d, symmetric_vacuum_resource(1.0, 1.0, model), fib::tau, std::move(pvm),
            paulis(c.pair, vac, "XYIZ"), vac, true, reach(pair, {"e,e;e", "tau,tau;e"}, false)};
  }

  if (name == "appendix-d2-asymmetric") {
    auto res = resource_state(c.resource, {{r2, "(e,e),(e,tau);e,tau;tau"},
                                           {1.0, "(e,tau),(e,e);tau,e;tau"},
                                           {1.0, "(tau,e),(e,tau);tau,tau;tau"}});
    if (ab) {
      return {name, d, std::move(res), fib::e,
              bell_pvm(c.measured, {{"(tau,e),(e,e);tau,e;tau", "(e,tau),(tau,e);tau,tau;tau"},
                                    {"(tau,e),(tau,e);tau,tau;tau", "(e,tau),(e,e);tau,e;tau"},
                                    {"(tau,e),(e,tau);tau,tau;e", "(e,tau),(e,tau);tau,tau;e"}}),
              paulis(c.pair, qubit, "XYIZII"), qubit, true, reach(pair, {"e,tau;tau", "e,e;e"}, true)};
    }
    return {name, d, std::move(res), fib::e,
            bell_pvm(c.measured, {{"(e,e),(tau,e);e,tau;tau", "(e,tau),(e,tau);tau,tau;tau"},
                                  {"(e,tau),(tau,e);tau,tau;tau", "(e,e),(e,tau);e,tau;tau"}}),
            paulis(c.pair, qubit, "XYIZ"), qubit, true, std::nullopt};
  }

  throw DomainError("unknown scenario '" + name + "'");
}

TeleportScenario unrestricted_reverse_scenario(ModelPtr model) {
  TeleportScenario s = builtin_scenario("main-text", Direction::b_to_a, model);
  const Catalog c = catalog_bases(model);
  const SectorBasis& pair = *c.pair;
  s.name = "main-text-unrestricted";
  s.enforce_cssr = false;
  s.pvm = bell_pvm(c.measured, {{"(e,tau),(tau,e);tau,tau;e", "(tau,e),(e,tau);tau,tau;tau"},
                                {"(e,tau),(e,tau);tau,tau;e", "(tau,e),(tau,e);tau,tau;tau"}});
  // Cyclic relabeling ee -> tau e -> e tau -> ee moves Alice's reachable pair onto the qubit.
  const Index ee = ix(parse_basis_label(pair, "e,e;e"));
  const Index te = ix(parse_basis_label(pair, "tau,e;tau"));
  const Index et = ix(parse_basis_label(pair, "e,tau;tau"));
  const Index n = ix(pair.size());
  Matrix cycle = Matrix::Identity(n, n);
  cycle(ee, ee) = cycle(te, te) = cycle(et, et) = 0.0;
  cycle(te, ee) = cycle(et, te) = cycle(ee, et) = 1.0;
  const Matrix x = encoded_pauli('X', s.encoding, pair.size());
  const Matrix z = encoded_pauli('Z', s.encoding, pair.size());
  s.corrections = {{c.pair, cycle}, {c.pair, z * cycle}, {c.pair, x * cycle}, {c.pair, z * x * cycle}};
  s.reachable.reset();
  return s;
}

}  // namespace anyonqi
