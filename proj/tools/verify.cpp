#include "verify.hpp"

#include "anyonqi/correlations.hpp"
#include "anyonqi/errors.hpp"
#include "anyonqi/recoupling.hpp"
#include "anyonqi/sampling.hpp"
#include "anyonqi/teleportation.hpp"
#include "anyonqi/text_format.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <numbers>

namespace anyonqi::cli {

namespace {

using Eigen::Index;

class Tally {
 public:
  explicit Tally(SuiteResult& r, double tol) : r_(r), tol_(tol) {}
  // Records |residual| against the suite tolerance (or `limit` when given).
  void residual(double value, double limit = -1.0) {
    ++r_.checks;
    const double v = std::abs(value);
    r_.max_residual = std::max(r_.max_residual, v);
    if (!(v <= (limit < 0.0 ? tol_ : limit))) r_.passed = false;
  }
  void require(bool ok) {
    ++r_.checks;
    if (!ok) r_.passed = false;
  }

 private:
  SuiteResult& r_;
  double tol_;
};

BasisPtr comb(const ModelPtr& m, int n) { return enumerate_basis(m, TreeShape::left_comb(n)); }

AnyonState labelled(const BasisPtr& b, std::initializer_list<std::pair<Complex, const char*>> terms) {
  Vector v = Vector::Zero(static_cast<Index>(b->size()));
  for (const auto& [w, l] : terms) v(static_cast<Index>(parse_basis_label(*b, l))) += w;
  return AnyonState(b, v / v.norm());
}

std::vector<double> padded(std::vector<double> s, std::size_t n) {
  s.resize(std::max(n, s.size()), 0.0);
  return s;
}

void spectrum_matches(Tally& t, const std::vector<double>& got, std::vector<double> want, double tol) {
  want = padded(want, got.size());
  std::sort(want.begin(), want.end(), std::greater<>());
  t.require(got.size() == want.size());
  for (std::size_t i = 0; i < std::min(got.size(), want.size()); ++i) t.residual(got[i] - want[i], tol);
}

void suite_dims(SuiteResult& r, const VerifyOptions& o) {
  Tally t(r, 0.0);
  std::vector<std::uint64_t> fibs{0, 1};
  while (fibs.size() < 20) fibs.push_back(fibs[fibs.size() - 1] + fibs[fibs.size() - 2]);
  auto table = nlohmann::ordered_json::array();
  r.notes.push_back("N  total  e  tau");
  for (int n = 1; n <= 8; ++n) {
    const auto b = comb(o.model, n);
    const std::size_t want = fibs[static_cast<std::size_t>(2 * n + 1)];
    t.require(b->size() == want);
    nlohmann::ordered_json row{{"n", n}, {"total", b->size()}};
    std::string line = std::to_string(n) + "  " + std::to_string(b->size());
    for (Charge g : o.model->charges()) {
      row[o.model->name(g)] = b->sector_dimension(g);
      line += "  " + std::to_string(b->sector_dimension(g));
    }
    table.push_back(row);
    r.notes.push_back(line);
  }
  r.extra["table"] = table;
}

void suite_model(SuiteResult& r, const VerifyOptions& o) {
  Tally t(r, 1e-12);
  const double pent = pentagon_residual(*o.model);
  const double unit = f_unitarity_residual(*o.model);
  t.residual(pent);
  t.residual(unit);
  const auto problems = validate_model(*o.model, 1e-12);
  t.require(problems.empty());
  for (const auto& p : problems) r.notes.push_back(p);
  r.extra["pentagon_residual"] = pent;
  r.extra["unitarity_residual"] = unit;
}

void suite_recoupling(SuiteResult& r, const VerifyOptions& o) {
  Tally t(r, 1e-12);
  for (int n = 2; n <= 5; ++n) {
    const auto right = TreeShape::right_comb(n);
    for (const auto& s : TreeShape::all_shapes(n)) {
      const auto via_left = basis_change(o.model, s, right, CanonicalRoute::left_comb);
      const auto via_right = basis_change(o.model, s, right, CanonicalRoute::right_comb);
      t.residual(via_left.unitarity_residual());
      t.residual(max_abs(via_left.to_dense() - via_right.to_dense()));
      const auto back = basis_change(o.model, right, s);
      const Matrix round = back.after(via_left).to_dense();
      t.residual(max_abs(round - Matrix::Identity(round.rows(), round.cols())));
    }
  }
}

void suite_purity(SuiteResult& r, const VerifyOptions& o) {
  Tally t(r, o.tol);
  for (int n = 1; n <= 4; ++n) {
    const auto b = comb(o.model, n);
    for (std::size_t i = 0; i < b->size(); ++i) t.residual(purity(BlockOperator::projector(ket(b, i))) - 1.0);
  }
  std::size_t tau_states = 0;
  for (std::uint64_t k = 0; k < 1000; ++k) {
    Rng rng = task_rng(o.seed, k);
    const auto psi = random_state(comb(o.model, 1 + static_cast<int>(k % 4)), rng);
    tau_states += psi.sector() != o.model->vacuum();
    t.residual(purity(BlockOperator::projector(psi)) - 1.0);
  }
  t.require(tau_states > 0);
}

void suite_consistency(SuiteResult& r, const VerifyOptions& o) {
  Tally t(r, o.tol);
  for (int n : {4, 6}) {
    const auto b = enumerate_basis(o.model, TreeShape::grouped(n / 2, n - n / 2));
    const Bipartition bip(b);
    for (std::uint64_t k = 0; k < 500; ++k) {
      Rng rng = task_rng(o.seed + static_cast<std::uint64_t>(n), k);
      const auto rho = random_density(b, rng);
      const auto oa = random_hermitian(bip.subsystem(Side::A), rng);
      const Complex lhs = trace_product(oa, partial_trace(rho, bip, Side::B));
      const Complex rhs = trace_product(embed_local(oa, bip, Side::A), rho);
      t.residual(std::abs(lhs - rhs));
    }
  }
}

void suite_marginals(SuiteResult& r, const VerifyOptions& o) {
  Tally t(r, 1e-12);
  const auto two = comb(o.model, 2);
  const Bipartition bip(two);
  const auto amb = labelled(two, {{1.0, "e,tau;tau"}, {1.0, "tau,tau;tau"}});
  spectrum_matches(t, spectrum(partial_trace(amb, bip, Side::B)), {0.5, 0.5}, 1e-12);
  spectrum_matches(t, spectrum(partial_trace(amb, bip, Side::A)), {1.0, 0.0}, 1e-12);

  const auto mixed = 0.5 * (BlockOperator::projector(ket(two, parse_basis_label(*two, "tau,tau;e"))) +
                            BlockOperator::projector(ket(two, parse_basis_label(*two, "tau,tau;tau"))));
  t.residual(purity(partial_trace(mixed, bip, Side::B)) - 1.0, 1e-10);
  t.residual(purity(partial_trace(mixed, bip, Side::A)) - 1.0, 1e-10);
  t.residual(purity(mixed) - 0.5, 1e-10);

  const auto main = builtin_scenario("main-text", Direction::a_to_b, o.model).resource;
  const Bipartition rb(main.basis_ptr());
  t.require(same_spectra(spectrum(partial_trace(main, rb, Side::B)), spectrum(partial_trace(main, rb, Side::A)), 1e-12));
  const auto d2 = builtin_scenario("appendix-d2-asymmetric", Direction::a_to_b, o.model).resource;
  spectrum_matches(t, spectrum(partial_trace(d2, rb, Side::B)), {0.5, 0.25, 0.25}, 1e-12);
  spectrum_matches(t, spectrum(partial_trace(d2, rb, Side::A)), {0.75, 0.25}, 1e-12);
}

void suite_classification(SuiteResult& r, const VerifyOptions& o) {
  Tally t(r, 0.0);
  const auto two = comb(o.model, 2);
  const Bipartition bip(two);
  const std::size_t n = 10000;
  std::vector<int> agree(n, 0), redraws(n, 0);
#pragma omp parallel for schedule(dynamic, 64)
  for (std::int64_t k = 0; k < static_cast<std::int64_t>(n); ++k) {
    Rng rng = task_rng(o.seed, static_cast<std::uint64_t>(k));
    for (;;) {
      const auto psi = random_state(two, rng);
      const bool closed = is_uncorrelated_class(classify_pure_2anyon(psi).cls);
      const double v = is_uncorrelated(BlockOperator::projector(psi), bip, 1e-8).max_violation;
      if (!closed && v <= 1e-6) {
        ++redraws[static_cast<std::size_t>(k)];
        continue;
      }
      agree[static_cast<std::size_t>(k)] = closed == (v <= 1e-8);
      break;
    }
  }
  std::size_t ok = 0, boundary = 0;
  for (std::size_t k = 0; k < n; ++k) {
    ok += static_cast<std::size_t>(agree[k]);
    boundary += static_cast<std::size_t>(redraws[k]);
    t.require(agree[k] == 1);
  }
  r.extra["samples"] = n;
  r.extra["agreements"] = ok;
  r.extra["redrawn_boundary_samples"] = boundary;
  r.notes.push_back("agreement " + std::to_string(ok) + "/" + std::to_string(n) + ", redrawn " +
                    std::to_string(boundary));

  // Both uncorrelated families.
  Tally fam(r, 1e-12);
  for (std::uint64_t k = 0; k < 200; ++k) {
    Rng rng = task_rng(o.seed ^ 0x5eedULL, k);
    const Vector c = random_unit_vector(rng, 2);
    for (const char* first : {"e,tau;tau", "tau,e;tau"}) {
      Vector v = Vector::Zero(5);
      v(static_cast<Index>(parse_basis_label(*two, first))) = c(0);
      v(static_cast<Index>(parse_basis_label(*two, "tau,tau;tau"))) = c(1);
      fam.residual(is_uncorrelated(BlockOperator::projector(AnyonState(two, v)), bip, 1e-12).max_violation);
    }
  }
}

void suite_bilinearity(SuiteResult& r, const VerifyOptions& o) {
  Tally t(r, o.tol);
  const auto two = comb(o.model, 2);
  const Bipartition bip(two);
  Rng rng = task_rng(o.seed, 0);
  const auto rho = BlockOperator::projector(random_state(two, rng));
  const auto obs_a = local_observable_basis(bip.subsystem(Side::A));
  const auto obs_b = local_observable_basis(bip.subsystem(Side::B));
  const Eigen::MatrixXd v = correlation_matrix(rho, bip);
  const double vmax = v.cwiseAbs().maxCoeff();
  auto coeffs = [](const BlockOperator& h) {
    std::vector<double> c;
    for (std::size_t g = 0; g < h.basis().num_sectors(); ++g) {
      const Matrix& b = h.block(Charge{static_cast<std::uint8_t>(g)});
      for (Index i = 0; i < b.rows(); ++i) c.push_back(b(i, i).real());
      for (Index i = 0; i < b.rows(); ++i) {
        for (Index j = i + 1; j < b.rows(); ++j) {
          c.push_back(b(i, j).real());
          c.push_back(-b(i, j).imag());
        }
      }
    }
    return Eigen::VectorXd::Map(c.data(), static_cast<Index>(c.size())).eval();
  };
  for (std::uint64_t k = 0; k < 1000; ++k) {
    Rng rr = task_rng(o.seed, k + 1);
    const auto oa = random_hermitian(bip.subsystem(Side::A), rr);
    const auto ob = random_hermitian(bip.subsystem(Side::B), rr);
    const Eigen::VectorXd ca = coeffs(oa), cb = coeffs(ob);
    const double d = correlation_defect(rho, bip, oa, ob);
    t.residual(d - ca.dot(v * cb));
    t.require(std::abs(d) <= ca.lpNorm<1>() * cb.lpNorm<1>() * vmax + o.tol);
  }
}

void suite_orbit(SuiteResult& r, const VerifyOptions& o) {
  Tally t(r, 0.0);
  const auto two = comb(o.model, 2);
  t.require(local_unitary_orbit_check(labelled(two, {{0.6, "tau,e;tau"}, {0.8, "tau,tau;tau"}}), 100, o.seed));
  t.require(local_unitary_orbit_check(labelled(two, {{0.6, "e,tau;tau"}, {0.8, "tau,tau;tau"}}), 100, o.seed + 1));
}

void suite_teleport_ab(SuiteResult& r, const VerifyOptions& o) {
  Tally t(r, o.tol);
  const auto sc = builtin_scenario("main-text", Direction::a_to_b, o.model);
  for (const auto& m : message_grid()) {
    const auto out = run_protocol(sc, m);
    t.require(out.outcomes.size() == 4);
    for (const auto& br : out.outcomes) {
      t.residual(br.probability - 0.25, 1e-12);
      t.residual(br.fidelity - 1.0);
    }
    t.residual(out.average_fidelity - 1.0);
  }
}

// Best average fidelity over ensembles of diagonal receiver states averaging
// to diag(p_vac, 1 - p_vac), each corrected optimally in hindsight.
double classical_mixture_bound(double p_vac) {
  double best = 0.0;
  const int n = 200;
  for (int iw = 0; iw <= n; ++iw) {
    const double w = static_cast<double>(iw) / n;
    for (int ix = 0; ix <= n; ++ix) {
      const double x1 = static_cast<double>(ix) / n;
      if (iw == n) {
        if (std::abs(x1 - p_vac) <= 0.5 / n) best = std::max(best, 1.0 - x1);
        continue;
      }
      const double x2 = (p_vac - w * x1) / (1.0 - w);
      if (x2 < 0.0 || x2 > 1.0) continue;
      best = std::max(best, w * (1.0 - x1) + (1.0 - w) * (1.0 - x2));
    }
  }
  return best;
}

void suite_teleport_ba(SuiteResult& r, const VerifyOptions& o) {
  Tally t(r, o.tol);
  const auto sc = builtin_scenario("main-text", Direction::b_to_a, o.model);
  std::vector<MessageQubit> msgs;
  for (std::uint64_t k = 0; k < 10; ++k) {
    Rng rng = task_rng(o.seed ^ 0xba5eULL, k);
    const Vector v = random_unit_vector(rng, 2);
    msgs.push_back(MessageQubit::make(v(0), v(1)));
  }
  const auto rep = receiver_reachability_check(sc, msgs, 1000, o.seed, *sc.reachable);
  t.residual(rep.max_off_support);
  t.residual(rep.max_probability_defect);

  const auto grouped = change_shape(compose(msgs[0].state(o.model), sc.resource, Direction::b_to_a, sc.channel),
                                    measured_grouping(Direction::b_to_a));
  const Bipartition bip = measurement_split(grouped.basis_ptr(), Direction::b_to_a);
  const auto rho_a = partial_trace(grouped, bip, Side::B);
  const std::size_t vac = parse_basis_label(*bip.subsystem(Side::A), "e,e;e");
  const double bound = classical_mixture_bound(rho_a.element(vac, vac).real());
  t.require(rep.max_hindsight_fidelity <= bound + o.tol);

  double unrestricted = 1.0;
  const auto free = unrestricted_reverse_scenario(o.model);
  for (const auto& m : message_grid()) unrestricted = std::min(unrestricted, run_protocol(free, m).average_fidelity);
  t.residual(unrestricted - 1.0);

  r.extra["pvm_samples"] = rep.pvm_samples;
  r.extra["messages"] = rep.messages;
  r.extra["max_off_support"] = rep.max_off_support;
  r.extra["max_hindsight_fidelity"] = rep.max_hindsight_fidelity;
  r.extra["classical_bound"] = bound;
  r.extra["unrestricted_fidelity"] = unrestricted;
}

void suite_symmetric(SuiteResult& r, const VerifyOptions& o) {
  Tally t(r, o.tol);
  for (Direction d : {Direction::a_to_b, Direction::b_to_a}) {
    const auto sc = builtin_scenario("appendix-d1-symmetric", d, o.model);
    for (const auto& m : message_grid()) {
      for (const auto& br : run_protocol(sc, m).outcomes) t.residual(br.fidelity - 1.0);
    }
  }
  for (std::uint64_t k = 0; k < 10; ++k) {
    Rng rng = task_rng(o.seed, k);
    const Vector ab = random_unit_vector(rng, 2);
    const Vector mv = random_unit_vector(rng, 2);
    const auto m = MessageQubit::make(mv(0), mv(1));
    auto fwd = builtin_scenario("appendix-d1-symmetric", Direction::a_to_b, o.model);
    auto rev = builtin_scenario("appendix-d1-symmetric", Direction::b_to_a, o.model);
    fwd.resource = rev.resource = symmetric_vacuum_resource(ab(0), ab(1), o.model);
    t.residual(run_protocol(fwd, m).average_fidelity - run_protocol(rev, m).average_fidelity);
  }
}

void suite_asymmetric(SuiteResult& r, const VerifyOptions& o) {
  Tally t(r, o.tol);
  const auto rev = builtin_scenario("appendix-d2-asymmetric", Direction::b_to_a, o.model);
  for (const auto& m : message_grid()) {
    const auto out = run_protocol(rev, m);
    t.residual(out.click_probability - 0.5, 1e-12);
    for (const auto& br : out.outcomes) t.residual(br.fidelity - 1.0);
  }
  auto fwd = builtin_scenario("appendix-d2-asymmetric", Direction::a_to_b, o.model);
  for (auto& u : fwd.corrections) u.matrix.setIdentity();
  const auto grid = message_grid();
  for (const auto& m : grid) {
    for (const auto& br : run_protocol(fwd, m).outcomes) {
      if (br.receiver_state) t.residual(off_support_mass(br.receiver_state->matrix, *fwd.reachable));
    }
  }
  const auto rep = receiver_reachability_check(fwd, grid, 200, o.seed, *fwd.reachable);
  t.residual(rep.max_off_support);
  r.extra["max_off_support"] = rep.max_off_support;
}

void suite_probability(SuiteResult& r, const VerifyOptions& o) {
  Tally t(r, o.tol);
  for (const auto& name : builtin_scenario_names()) {
    for (Direction d : {Direction::a_to_b, Direction::b_to_a}) {
      const auto sc = builtin_scenario(name, d, o.model);
      for (std::uint64_t k = 0; k < 100; ++k) {
        Rng rng = task_rng(o.seed, k);
        const Vector v = random_unit_vector(rng, 2);
        const auto m = MessageQubit::make(v(0), v(1));
        const auto out = run_protocol(sc, m);
        t.residual(out.click_probability + out.no_click.probability - 1.0);
        for (const auto& br : out.outcomes) t.require(br.fidelity >= -o.tol && br.fidelity <= 1.0 + o.tol);
        // Building the measured grouping directly changes nothing.
        const auto direct = compose_in_measured_grouping(m.state(o.model), sc.resource, d, sc.channel);
        t.residual(run_protocol(sc, m, direct).average_fidelity - out.average_fidelity);
      }
    }
  }
}

using SuiteFn = void (*)(SuiteResult&, const VerifyOptions&);

const std::vector<std::pair<std::string, SuiteFn>>& suites() {
  static const std::vector<std::pair<std::string, SuiteFn>> all{
      {"dims", suite_dims},
      {"model", suite_model},
      {"recoupling", suite_recoupling},
      {"purity", suite_purity},
      {"consistency", suite_consistency},
      {"marginals", suite_marginals},
      {"classification", suite_classification},
      {"bilinearity", suite_bilinearity},
      {"orbit", suite_orbit},
      {"teleport-ab", suite_teleport_ab},
      {"teleport-ba", suite_teleport_ba},
      {"symmetric", suite_symmetric},
      {"asymmetric", suite_asymmetric},
      {"probability", suite_probability},
  };
  return all;
}

}  // namespace

std::vector<std::string> suite_names() {
  std::vector<std::string> out;
  for (const auto& s : suites()) out.push_back(s.first);
  return out;
}

SuiteResult run_suite(const std::string& name, const VerifyOptions& opts) {
  for (const auto& [n, fn] : suites()) {
    if (n != name) continue;
    SuiteResult r;
    r.name = name;
    fn(r, opts);
    return r;
  }
  throw DomainError("unknown suite '" + name + "'");
}

ModelPtr corrupted_fibonacci() {
  AnyonModel m = fibonacci_model();
  m.set_f_symbol(fib::tau, fib::tau, fib::tau, fib::tau, fib::e, fib::e, 0.6);
  return std::make_shared<const AnyonModel>(std::move(m));
}

}  // namespace anyonqi::cli
