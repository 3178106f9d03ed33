// One PASS/FAIL line per acceptance criterion. Exit status is nonzero when
// any criterion fails.

#include "cli.hpp"

#include "anyonqi/correlations.hpp"
#include "anyonqi/recoupling.hpp"
#include "anyonqi/sampling.hpp"
#include "anyonqi/teleportation.hpp"
#include "anyonqi/text_format.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

using namespace anyonqi;
using Eigen::Index;

namespace {

const std::uint64_t kSeed = 20261018;

struct Check {
  bool ok = true;
  double worst = 0.0;
  std::string detail;

  void within(double value, double tol) {
    worst = std::max(worst, std::abs(value));
    if (!(std::abs(value) <= tol)) ok = false;
  }
  void that(bool cond, const std::string& why) {
    if (!cond && ok) detail = why;
    ok = ok && cond;
  }
};

AnyonState from_labels(const BasisPtr& b, std::initializer_list<std::pair<Complex, const char*>> terms) {
  Vector v = Vector::Zero(static_cast<Index>(b->size()));
  for (const auto& [w, l] : terms) v(static_cast<Index>(parse_basis_label(*b, l))) += w;
  return AnyonState(b, v.normalized());
}

void spectrum_is(Check& c, std::vector<double> got, std::vector<double> want, double tol) {
  got.resize(std::max(got.size(), want.size()), 0.0);
  want.resize(got.size(), 0.0);
  std::sort(got.begin(), got.end(), std::greater<>());
  std::sort(want.begin(), want.end(), std::greater<>());
  for (std::size_t i = 0; i < got.size(); ++i) c.within(got[i] - want[i], tol);
}

Check dimensions() {
  Check c;
  const std::size_t want[] = {2, 5, 13, 34, 89, 233, 610, 1597};
  for (int n = 1; n <= 8; ++n) {
    const auto b = enumerate_basis(shared_fibonacci(), TreeShape::left_comb(n));
    c.that(b->size() == want[n - 1], "N=" + std::to_string(n) + " has " + std::to_string(b->size()));
  }
  return c;
}

Check model_consistency() {
  Check c;
  const ModelPtr m = shared_fibonacci();
  c.within(f_unitarity_residual(*m), 1e-12);
  c.within(pentagon_residual(*m), 1e-12);
  for (int n = 2; n <= 5; ++n) {
    const auto shapes = TreeShape::all_shapes(n);
    for (const auto& from : shapes) {
      for (const auto& to : shapes) {
        const auto a = basis_change(m, from, to, CanonicalRoute::left_comb).to_dense();
        const auto b = basis_change(m, from, to, CanonicalRoute::right_comb).to_dense();
        c.within(max_abs(a - b), 1e-12);
        const Matrix round = basis_change(m, to, from).to_dense() * a;
        c.within(max_abs(round - Matrix::Identity(round.rows(), round.cols())), 1e-12);
      }
    }
  }
  return c;
}

Check marginal_ambiguity() {
  Check c;
  const auto two = enumerate_basis(shared_fibonacci(), TreeShape::left_comb(2));
  const Bipartition bip(two);
  const auto psi = from_labels(two, {{1.0, "e,tau;tau"}, {1.0, "tau,tau;tau"}});
  spectrum_is(c, spectrum(partial_trace(psi, bip, Side::B)), {0.5, 0.5}, 1e-12);
  spectrum_is(c, spectrum(partial_trace(psi, bip, Side::A)), {1.0, 0.0}, 1e-12);
  const auto mixed = 0.5 * (BlockOperator::projector(from_labels(two, {{1.0, "tau,tau;e"}})) +
                            BlockOperator::projector(from_labels(two, {{1.0, "tau,tau;tau"}})));
  c.within(purity(partial_trace(mixed, bip, Side::A)) - 1.0, 1e-10);
  c.within(purity(partial_trace(mixed, bip, Side::B)) - 1.0, 1e-10);
  c.within(purity(mixed) - 0.5, 1e-10);
  return c;
}

Check trace_consistency() {
  Check c;
  for (int n : {4, 6}) {
    const auto b = enumerate_basis(shared_fibonacci(), TreeShape::grouped(n / 2, n / 2));
    const Bipartition bip(b);
    for (std::uint64_t k = 0; k < 500; ++k) {
      Rng rng = task_rng(kSeed + static_cast<std::uint64_t>(n), k);
      const auto rho = random_density(b, rng);
      const auto oa = random_hermitian(bip.subsystem(Side::A), rng);
      // Direct trace of the products, without trace_product.
      const Complex lhs = trace(BlockOperator(oa) * partial_trace(rho, bip, Side::B));
      const Complex rhs = trace(embed_local(oa, bip, Side::A) * rho);
      c.within(std::abs(lhs - rhs), 1e-10);
    }
  }
  return c;
}

Check classification() {
  Check c;
  const auto two = enumerate_basis(shared_fibonacci(), TreeShape::left_comb(2));
  const Bipartition bip(two);
  std::size_t agree = 0, judged = 0;
  for (std::uint64_t k = 0; k < 10000; ++k) {
    Rng rng = task_rng(kSeed, k);
    const auto psi = random_state(two, rng);
    const double v = is_uncorrelated(BlockOperator::projector(psi), bip, 1e-8).max_violation;
    const bool closed = is_uncorrelated_class(classify_pure_2anyon(psi).cls);
    if (!closed && v <= 1e-6) continue;  // numerically on the boundary
    ++judged;
    agree += closed == (v <= 1e-8);
  }
  c.that(agree == judged, std::to_string(judged - agree) + " disagreements");
  c.that(judged >= 9990, "only " + std::to_string(judged) + " non-boundary samples");
  for (std::uint64_t k = 0; k < 100; ++k) {
    Rng rng = task_rng(kSeed ^ 0xc1a55ULL, k);
    const Vector w = random_unit_vector(rng, 2);
    for (const char* label : {"tau,e;tau", "e,tau;tau"}) {
      const auto psi = from_labels(two, {{w(0), label}, {w(1), "tau,tau;tau"}});
      c.within(is_uncorrelated(BlockOperator::projector(psi), bip, 1e-12).max_violation, 1e-12);
    }
  }
  c.detail += (c.detail.empty() ? "" : "; ") + std::to_string(agree) + "/" + std::to_string(judged) + " agree";
  return c;
}

Check main_forward() {
  Check c;
  const auto sc = builtin_scenario("main-text", Direction::a_to_b);
  for (const auto& m : message_grid()) {
    const auto out = run_protocol(sc, m);
    c.that(out.outcomes.size() == 4, "outcome count");
    for (const auto& br : out.outcomes) {
      c.within(br.probability - 0.25, 1e-12);
      c.within(br.fidelity - 1.0, 1e-10);
    }
  }
  return c;
}

Check main_reverse() {
  Check c;
  const auto sc = builtin_scenario("main-text", Direction::b_to_a);
  std::vector<MessageQubit> msgs;
  for (std::uint64_t k = 0; k < 10; ++k) {
    Rng rng = task_rng(kSeed ^ 0x7e1eULL, k);
    const Vector v = random_unit_vector(rng, 2);
    msgs.push_back(MessageQubit::make(v(0), v(1)));
  }
  const auto rep = receiver_reachability_check(sc, msgs, 1000, kSeed, *sc.reachable);
  c.that(rep.pvm_samples == 1000 && rep.messages == 10, "sweep size");
  c.within(rep.max_off_support, 1e-10);
  const auto free = unrestricted_reverse_scenario();
  for (const auto& m : message_grid()) c.within(run_protocol(free, m).average_fidelity - 1.0, 1e-10);
  char buf[64];
  std::snprintf(buf, sizeof buf, "max off-support %.3g", rep.max_off_support);
  c.detail = buf;
  return c;
}

Check symmetric_resource() {
  Check c;
  for (Direction d : {Direction::a_to_b, Direction::b_to_a}) {
    const auto sc = builtin_scenario("appendix-d1-symmetric", d);
    for (const auto& m : message_grid()) {
      for (const auto& br : run_protocol(sc, m).outcomes) c.within(br.fidelity - 1.0, 1e-10);
    }
  }
  for (std::uint64_t k = 0; k < 10; ++k) {
    Rng rng = task_rng(kSeed ^ 0xd1ULL, k);
    const Vector ab = random_unit_vector(rng, 2);
    const Vector mv = random_unit_vector(rng, 2);
    const auto m = MessageQubit::make(mv(0), mv(1));
    auto fwd = builtin_scenario("appendix-d1-symmetric", Direction::a_to_b);
    auto rev = builtin_scenario("appendix-d1-symmetric", Direction::b_to_a);
    fwd.resource = rev.resource = symmetric_vacuum_resource(ab(0), ab(1));
    c.within(run_protocol(fwd, m).average_fidelity - run_protocol(rev, m).average_fidelity, 1e-10);
  }
  return c;
}

Check asymmetric_resource() {
  Check c;
  const auto rev = builtin_scenario("appendix-d2-asymmetric", Direction::b_to_a);
  for (const auto& m : message_grid()) {
    const auto out = run_protocol(rev, m);
    c.within(out.click_probability - 0.5, 1e-12);
    for (const auto& br : out.outcomes) c.within(br.fidelity - 1.0, 1e-10);
  }
  auto fwd = builtin_scenario("appendix-d2-asymmetric", Direction::a_to_b);
  for (auto& u : fwd.corrections) u.matrix.setIdentity();
  for (const auto& m : message_grid()) {
    for (const auto& br : run_protocol(fwd, m).outcomes) {
      if (br.receiver_state) c.within(off_support_mass(br.receiver_state->matrix, *fwd.reachable), 1e-10);
    }
  }
  const auto grid = message_grid();
  c.within(receiver_reachability_check(fwd, grid, 200, kSeed, *fwd.reachable).max_off_support, 1e-10);
  const Bipartition bip(fwd.resource.basis_ptr());
  spectrum_is(c, spectrum(partial_trace(fwd.resource, bip, Side::B)), {0.5, 0.25, 0.25}, 1e-12);
  spectrum_is(c, spectrum(partial_trace(fwd.resource, bip, Side::A)), {0.75, 0.25}, 1e-12);
  return c;
}

Check purity_of_pure_states() {
  Check c;
  for (int n = 1; n <= 4; ++n) {
    const auto b = enumerate_basis(shared_fibonacci(), TreeShape::left_comb(n));
    for (std::size_t i = 0; i < b->size(); ++i) c.within(purity(BlockOperator::projector(ket(b, i))) - 1.0, 1e-10);
  }
  std::size_t tau = 0;
  for (std::uint64_t k = 0; k < 1000; ++k) {
    Rng rng = task_rng(kSeed ^ 0xb0ULL, k);
    const auto b = enumerate_basis(shared_fibonacci(), TreeShape::left_comb(1 + static_cast<int>(k % 4)));
    const Charge g = k % 2 == 0 ? fib::e : fib::tau;
    const auto psi = random_state(b, g, rng);
    tau += g == fib::tau;
    c.within(purity(BlockOperator::projector(psi)) - 1.0, 1e-10);
  }
  c.that(tau > 0, "no tau-sector samples");
  return c;
}

Check cli_determinism() {
  Check c;
  const std::string root = ANYONQI_SOURCE_DIR;
  const std::vector<std::pair<std::vector<std::string>, std::string>> cases{
      {{"basis", "--n", "2"}, "basis_n2.txt"},
      {{"marginals", "--state", root + "/data/states/ambiguity.state"}, "marginals_ambiguity.txt"},
      {{"--seed", "42", "--format", "json", "teleport", "--scenario", "main-text", "--direction", "ab"},
       "teleport_main_ab.json"},
  };
  for (const auto& [args, golden] : cases) {
    std::ifstream f(root + "/tests/golden/" + golden, std::ios::binary);
    std::ostringstream want, out, err;
    want << f.rdbuf();
    const int code = cli::run_cli(args, out, err);
    c.that(f.good() && code == 0 && out.str() == want.str(), golden + " differs");
  }
  return c;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Check()>>> criteria{
      {"dimensions", dimensions},
      {"model consistency", model_consistency},
      {"marginal spectra ambiguity", marginal_ambiguity},
      {"partial trace consistency", trace_consistency},
      {"two-anyon classification", classification},
      {"main teleportation A to B", main_forward},
      {"main teleportation B to A", main_reverse},
      {"symmetric resource", symmetric_resource},
      {"asymmetric resource", asymmetric_resource},
      {"purity of pure states", purity_of_pure_states},
      {"CLI determinism", cli_determinism},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Check c;
    try {
      c = criteria[i].second();
    } catch (const std::exception& e) {
      c.ok = false;
      c.detail = std::string("exception: ") + e.what();
    }
    failed += !c.ok;
    std::printf("%s %2zu %-28s max_residual=%.3g%s%s\n", c.ok ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(),
                c.worst, c.detail.empty() ? "" : "  ", c.detail.c_str());
  }
  return failed == 0 ? 0 : 1;
}
