#include "cli.hpp"

#include "verify.hpp"

#include "anyonqi/correlations.hpp"
#include "anyonqi/errors.hpp"
#include "anyonqi/recoupling.hpp"
#include "anyonqi/teleportation.hpp"
#include "anyonqi/text_format.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <sstream>

namespace anyonqi::cli {

namespace {

using json = nlohmann::ordered_json;
using Eigen::Index;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Common {
  std::string model = "fibonacci";
  std::uint64_t seed = 42;
  double tol = 1e-10;
  std::string format = "text";
  std::string out;
};

bool as_json(const Common& c) { return c.format == "json"; }

ModelPtr load(const Common& c) {
  if (c.model == "fibonacci") return shared_fibonacci();
  return std::make_shared<const AnyonModel>(load_model(c.model));
}

std::string fmt6(double x) {
  if (x == 0.0) x = 0.0;  // drop the sign of -0
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return std::string(buf) == "-0" ? "0" : buf;
}

double clean(double x) { return std::abs(x) < 1e-12 ? 0.0 : x; }

json complex_json(Complex z) { return json::array({z.real(), z.imag()}); }

// Nonzero entries as {row, col, re, im} with tree labels.
json operator_json(const SectorBasis& b, const Matrix& m) {
  json out = json::array();
  for (Index i = 0; i < m.rows(); ++i) {
    for (Index j = 0; j < m.cols(); ++j) {
      const Complex z = m(i, j);
      if (std::abs(z) <= 1e-14) continue;
      out.push_back({{"row", format_tree_label(b, static_cast<std::size_t>(i))},
                     {"col", format_tree_label(b, static_cast<std::size_t>(j))},
                     {"re", z.real()},
                     {"im", z.imag()}});
    }
  }
  return out;
}

void operator_text(std::ostream& os, const SectorBasis& b, const Matrix& m) {
  for (Index i = 0; i < m.rows(); ++i) {
    for (Index j = 0; j < m.cols(); ++j) {
      const Complex z = m(i, j);
      if (std::abs(z) <= 1e-14) continue;
      os << "  " << format_tree_label(b, static_cast<std::size_t>(i)) << " | "
         << format_tree_label(b, static_cast<std::size_t>(j)) << " : " << fmt6(z.real()) << " " << fmt6(z.imag())
         << "\n";
    }
  }
}

std::pair<std::vector<double>, std::vector<double>> padded_spectra(std::vector<double> a, std::vector<double> b) {
  const std::size_t n = std::max(a.size(), b.size());
  for (auto* s : {&a, &b}) {
    s->resize(n, 0.0);
    for (double& x : *s) x = clean(x);
    std::sort(s->begin(), s->end(), std::greater<>());
  }
  return {a, b};
}

std::string join_text(const std::vector<double>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? " " : "") + fmt6(v[i]);
  return s;
}

double parse_real(std::string_view s) {
  double x = 0.0;
  while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
  while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
  const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), x);
  if (ec != std::errc() || p != s.data() + s.size()) throw UsageError("not a number: '" + std::string(s) + "'");
  return x;
}

// "re", "re,im" or "r@theta".
Complex parse_complex(const std::string& text) {
  if (const auto at = text.find('@'); at != std::string::npos) {
    return std::polar(parse_real(std::string_view(text).substr(0, at)), parse_real(std::string_view(text).substr(at + 1)));
  }
  if (const auto comma = text.find(','); comma != std::string::npos) {
    return {parse_real(std::string_view(text).substr(0, comma)), parse_real(std::string_view(text).substr(comma + 1))};
  }
  return parse_real(text);
}

struct SplitState {
  AnyonState state;
  int split;
};

SplitState load_split_state(const std::string& path, int split, const ModelPtr& model) {
  AnyonState psi = load_state(path, model);
  if (!psi.is_normalized()) throw DomainError("state in '" + path + "' is not normalized");
  const int n = psi.basis().num_leaves();
  if (n < 2) throw DomainError("state needs at least two anyons to split");
  const TreeShape& shape = psi.basis().shape();
  const int root = shape.leaf_count(shape.node(0).left);
  if (split < 0) split = root;
  if (split < 1 || split >= n) throw UsageError("--split must lie in [1, " + std::to_string(n - 1) + "]");
  if (split != root) psi = change_shape(psi, TreeShape::grouped(split, n - split));
  return {std::move(psi), split};
}

void cmd_basis(std::ostream& os, const Common& c, int n, const std::string& shape_text) {
  const ModelPtr model = load(c);
  const TreeShape shape = shape_text.empty() ? TreeShape::left_comb(n) : TreeShape::parse(shape_text);
  if (shape.num_leaves() != n) throw DomainError("shape " + shape.to_string() + " does not have " + std::to_string(n) + " leaves");
  const auto basis = enumerate_basis(model, shape);
  if (as_json(c)) {
    json sectors = json::array();
    for (Charge g : model->charges()) sectors.push_back({{"charge", model->name(g)}, {"dimension", basis->sector_dimension(g)}});
    json trees = json::array();
    for (std::size_t i = 0; i < basis->size(); ++i) {
      trees.push_back({{"index", i}, {"sector", model->name(basis->sector_of(i))}, {"label", format_tree_label(*basis, i)}});
    }
    os << json{{"n", n}, {"shape", shape.to_string()}, {"size", basis->size()}, {"sectors", sectors}, {"trees", trees}}.dump(2)
       << "\n";
    return;
  }
  std::size_t width = 0;
  for (Charge g : model->charges()) width = std::max(width, model->name(g).size());
  for (std::size_t i = 0; i < basis->size(); ++i) {
    std::string sector = model->name(basis->sector_of(i));
    sector.resize(width, ' ');
    os << i << "  " << sector << "  " << format_tree_label(*basis, i) << "\n";
  }
}

void cmd_dims(std::ostream& os, const Common& c, int max_n) {
  const ModelPtr model = load(c);
  json rows = json::array();
  if (!as_json(c)) {
    os << "N  total";
    for (Charge g : model->charges()) os << "  " << model->name(g);
    os << "\n";
  }
  for (int n = 1; n <= max_n; ++n) {
    const auto b = enumerate_basis(model, TreeShape::left_comb(n));
    json row{{"n", n}, {"total", b->size()}};
    if (!as_json(c)) os << n << "  " << b->size();
    for (Charge g : model->charges()) {
      row[model->name(g)] = b->sector_dimension(g);
      if (!as_json(c)) os << "  " << b->sector_dimension(g);
    }
    if (!as_json(c)) os << "\n";
    rows.push_back(row);
  }
  if (as_json(c)) os << json{{"dims", rows}}.dump(2) << "\n";
}

void cmd_marginals(std::ostream& os, const Common& c, const std::string& path, int split) {
  const auto [psi, k] = load_split_state(path, split, load(c));
  const Bipartition bip(psi.basis_ptr(), k);
  const auto rho_a = partial_trace(psi, bip, Side::B);
  const auto rho_b = partial_trace(psi, bip, Side::A);
  const auto [sa, sb] = padded_spectra(spectrum(rho_a), spectrum(rho_b));
  const bool symmetric = same_spectra(sa, sb, c.tol);
  const SectorBasis& ba = *bip.subsystem(Side::A);
  const SectorBasis& bb = *bip.subsystem(Side::B);
  if (as_json(c)) {
    os << json{{"split", k},
               {"shape", psi.basis().shape().to_string()},
               {"rho_a", operator_json(ba, rho_a.to_dense())},
               {"rho_b", operator_json(bb, rho_b.to_dense())},
               {"spectrum_a", sa},
               {"spectrum_b", sb},
               {"purity_a", purity(rho_a)},
               {"purity_b", purity(rho_b)},
               {"symmetric", symmetric}}
              .dump(2)
       << "\n";
    return;
  }
  os << "split " << k << "\nshape " << psi.basis().shape().to_string() << "\nrho_A\n";
  operator_text(os, ba, rho_a.to_dense());
  os << "rho_B\n";
  operator_text(os, bb, rho_b.to_dense());
  os << "spectrum_A " << join_text(sa) << "\nspectrum_B " << join_text(sb) << "\npurity_A " << fmt6(purity(rho_a))
     << "\npurity_B " << fmt6(purity(rho_b)) << "\nsymmetric " << (symmetric ? "true" : "false") << "\n";
}

void cmd_correlations(std::ostream& os, const Common& c, const std::string& path, int split) {
  const auto [psi, k] = load_split_state(path, split, load(c));
  const Bipartition bip(psi.basis_ptr(), k);
  const auto rep = is_uncorrelated(BlockOperator::projector(psi), bip, c.tol);
  const auto [sa, sb] = padded_spectra(rep.spectrum_a, rep.spectrum_b);
  std::optional<std::string> cls;
  const AnyonModel& m = psi.basis().model();
  if (psi.basis().num_leaves() == 2 && m.num_charges() == 2 && m.find("e") && m.find("tau")) {
    cls = to_string(classify_pure_2anyon(psi).cls);
  }
  if (as_json(c)) {
    os << json{{"uncorrelated", rep.uncorrelated},
               {"max_violation", rep.max_violation},
               {"witness_a", rep.witness_a},
               {"witness_b", rep.witness_b},
               {"spectrum_a", sa},
               {"spectrum_b", sb},
               {"spectra_symmetric", rep.spectra_symmetric},
               {"class", cls ? json(*cls) : json(nullptr)}}
              .dump(2)
       << "\n";
    return;
  }
  os << "uncorrelated " << (rep.uncorrelated ? "true" : "false") << "\nmax_violation " << fmt6(rep.max_violation)
     << "\nwitness " << rep.witness_a << " " << rep.witness_b << "\nspectrum_A " << join_text(sa) << "\nspectrum_B "
     << join_text(sb) << "\nspectra_symmetric " << (rep.spectra_symmetric ? "true" : "false") << "\nclass "
     << cls.value_or("n/a") << "\n";
}

json branch_json(const OutcomeBranch& br) {
  json j{{"probability", br.probability}, {"fidelity", br.fidelity}};
  j["receiver_state"] =
      br.receiver_state ? operator_json(*br.receiver_state->basis, br.receiver_state->matrix) : json(nullptr);
  return j;
}

void cmd_teleport(std::ostream& os, const Common& c, const std::string& scenario, const std::string& direction,
                  const std::string& alpha, const std::string& beta, std::size_t samples) {
  const ModelPtr model = load(c);
  const Direction d = parse_direction(direction);
  const auto sc = builtin_scenario(scenario, d, model);
  const auto msg = MessageQubit::make(parse_complex(alpha), parse_complex(beta), c.tol);
  const auto out = run_protocol(sc, msg);

  std::optional<ReachabilityReport> reach;
  ReachableSet set;
  if (samples > 0) {
    if (sc.reachable) {
      set = *sc.reachable;
    } else {
      set.diagonal_only = false;
      for (std::size_t i = 0; i < 5; ++i) set.indices.push_back(i);
    }
    auto msgs = message_grid();
    msgs.push_back(msg);
    reach = receiver_reachability_check(sc, msgs, samples, c.seed, set);
  }

  if (as_json(c)) {
    json j{{"scenario", scenario},
           {"direction", direction},
           {"channel", model->name(sc.channel)},
           {"message", {{"alpha", complex_json(msg.alpha)}, {"beta", complex_json(msg.beta)}}}};
    json outcomes = json::array();
    for (std::size_t k = 0; k < out.outcomes.size(); ++k) {
      json b{{"index", k}};
      b.update(branch_json(out.outcomes[k]));
      outcomes.push_back(b);
    }
    j["outcomes"] = outcomes;
    j["no_click"] = branch_json(out.no_click);
    j["click_probability"] = out.click_probability;
    j["average_fidelity"] = out.average_fidelity;
    if (reach) {
      j["reachability"] = {{"pvm_samples", reach->pvm_samples},
                           {"messages", reach->messages},
                           {"seed", c.seed},
                           {"conditional_states", reach->conditional_states},
                           {"max_off_support", reach->max_off_support},
                           {"within_tolerance", reach->max_off_support <= c.tol},
                           {"max_hindsight_fidelity", reach->max_hindsight_fidelity}};
    }
    os << j.dump(2) << "\n";
    return;
  }
  os << "scenario " << scenario << "  direction " << direction << "  channel " << model->name(sc.channel) << "\n";
  os << "message alpha=" << fmt6(msg.alpha.real()) << "," << fmt6(msg.alpha.imag()) << " beta=" << fmt6(msg.beta.real())
     << "," << fmt6(msg.beta.imag()) << "\n";
  os << "outcome  probability  fidelity\n";
  for (std::size_t k = 0; k < out.outcomes.size(); ++k) {
    const auto& br = out.outcomes[k];
    os << k << "  " << fmt6(br.probability) << "  " << (br.receiver_state ? fmt6(br.fidelity) : "-") << "\n";
  }
  os << "no-click  " << fmt6(clean(out.no_click.probability)) << "  "
     << (out.no_click.receiver_state ? fmt6(clean(out.no_click.fidelity)) : "-") << "\n";
  os << "click probability " << fmt6(out.click_probability) << "\naverage fidelity " << fmt6(out.average_fidelity)
     << "\n";
  if (reach) {
    os << "reachability samples=" << reach->pvm_samples << " messages=" << reach->messages
       << " states=" << reach->conditional_states << " max_off_support=" << fmt6(reach->max_off_support) << " ("
       << (reach->max_off_support <= c.tol ? "within" : "exceeds") << " tol) max_hindsight_fidelity="
       << fmt6(reach->max_hindsight_fidelity) << "\n";
  }
}

bool cmd_verify(std::ostream& os, std::ostream& err, const Common& c, const std::string& suite,
                const std::string& hook) {
  VerifyOptions opts{load(c), c.seed, c.tol};
  if (hook == "corrupt-model") opts.model = corrupted_fibonacci();
  const auto names = suite.empty() ? suite_names() : std::vector<std::string>{suite};
  const auto start = std::chrono::steady_clock::now();
  bool all = true;
  json suites = json::array();
  for (const auto& name : names) {
    SuiteResult r;
    try {
      r = run_suite(name, opts);
    } catch (const Error& e) {
      r.name = name;
      r.passed = false;
      r.notes.push_back(std::string("error: ") + e.what());
    }
    all = all && r.passed;
    if (as_json(c)) {
      json j{{"name", r.name}, {"passed", r.passed}, {"checks", r.checks}, {"max_residual", r.max_residual}};
      if (!r.extra.empty()) j["details"] = r.extra;
      if (!r.notes.empty()) j["notes"] = r.notes;
      suites.push_back(j);
    } else {
      os << (r.passed ? "PASS " : "FAIL ") << r.name << "  checks=" << r.checks
         << "  max_residual=" << fmt6(r.max_residual) << "\n";
      for (const auto& n : r.notes) os << "  " << n << "\n";
    }
  }
  if (as_json(c)) {
    os << json{{"passed", all}, {"suites", suites}}.dump(2) << "\n";
  } else {
    os << (all ? "all suites passed" : "some suites failed") << "\n";
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  err << "verify runtime " << fmt6(secs) << " s\n";
  return all;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Fibonacci anyon quantum-information toolkit", "anyonqi"};
  app.require_subcommand(1);
  Common c;
  app.add_option("--model", c.model, "fibonacci or a model file")->capture_default_str();
  app.add_option("--seed", c.seed, "master seed")->capture_default_str();
  app.add_option("--tol", c.tol, "tolerance")->capture_default_str()->check(CLI::PositiveNumber);
  app.add_option("--format", c.format, "text or json")->capture_default_str()->check(CLI::IsMember({"text", "json"}));
  app.add_option("--out", c.out, "write the report here instead of stdout");

  int n = 0;
  std::string shape;
  auto* basis = app.add_subcommand("basis", "list the fusion-tree basis");
  basis->add_option("--n", n, "number of anyons")->required()->check(CLI::Range(1, 10));
  basis->add_option("--shape", shape, "coupling shape, e.g. ((0 1)(2 3))");

  int max_n = 8;
  auto* dims = app.add_subcommand("dims", "basis dimensions per global charge");
  dims->add_option("--max-n", max_n, "largest anyon count")->capture_default_str()->check(CLI::Range(1, 12));

  std::string state;
  int split = -1;
  auto* marg = app.add_subcommand("marginals", "both marginals of a pure state");
  marg->add_option("--state", state, "state file")->required();
  marg->add_option("--split", split, "number of anyons held by A");
  auto* corr = app.add_subcommand("correlations", "uncorrelated test and two-anyon class");
  corr->add_option("--state", state, "state file")->required();
  corr->add_option("--split", split, "number of anyons held by A");

  std::string scenario = "main-text", direction = "ab", alpha = "0.6", beta = "0.8";
  std::size_t samples = 0;
  auto* tel = app.add_subcommand("teleport", "run a teleportation scenario");
  tel->add_option("--scenario", scenario, "catalog scenario")
      ->capture_default_str()
      ->check(CLI::IsMember(builtin_scenario_names()));
  tel->add_option("--direction", direction, "ab or ba")->capture_default_str()->check(CLI::IsMember({"ab", "ba"}));
  tel->add_option("--alpha", alpha, "re,im or r@theta")->capture_default_str();
  tel->add_option("--beta", beta, "re,im or r@theta")->capture_default_str();
  tel->add_option("--samples", samples, "random sector-respecting PVMs for the reachability sweep")
      ->capture_default_str();

  std::string suite, hook;
  auto* ver = app.add_subcommand("verify", "run the invariant suites");
  ver->add_option("--suite", suite, "single suite")->check(CLI::IsMember(suite_names()));
  ver->add_option("--test-hook", hook, "")->group("")->check(CLI::IsMember({"corrupt-model"}));

  for (auto* sub : {basis, dims, marg, corr, tel, ver}) sub->fallthrough();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  }

  std::ostringstream report;
  int code = 0;
  try {
    if (*basis) cmd_basis(report, c, n, shape);
    if (*dims) cmd_dims(report, c, max_n);
    if (*marg) cmd_marginals(report, c, state, split);
    if (*corr) cmd_correlations(report, c, state, split);
    if (*tel) cmd_teleport(report, c, scenario, direction, alpha, beta, samples);
    if (*ver) code = cmd_verify(report, err, c, suite, hook) ? 0 : 1;
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }

  if (c.out.empty()) {
    out << report.str();
  } else {
    std::ofstream f(c.out, std::ios::binary);
    if (!(f << report.str())) {
      err << "error: cannot write '" << c.out << "'\n";
      return 1;
    }
  }
  return code;
}

}  // namespace anyonqi::cli
