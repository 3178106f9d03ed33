#include "anyonqi/anyon_model.hpp"

#include "anyonqi/errors.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <numbers>
#include <sstream>

namespace anyonqi {

AnyonModel::AnyonModel(std::vector<std::string> names, Charge vacuum)
    : names_(std::move(names)), vacuum_(vacuum) {
  if (names_.empty() || names_.size() > 255) {
    throw DomainError("anyon model needs between 1 and 255 charges");
  }
  check(vacuum);
  const std::size_t n = names_.size();
  fusion_.assign(n * n * n, false);
  f_.assign(n * n * n * n * n * n, Complex{0.0, 0.0});
  r_.assign(n * n * n, Complex{0.0, 0.0});
  dims_.assign(n, 1.0);
}

std::vector<Charge> AnyonModel::charges() const {
  std::vector<Charge> out;
  out.reserve(names_.size());
  for (std::size_t i = 0; i < names_.size(); ++i) {
    out.push_back(Charge{static_cast<std::uint8_t>(i)});
  }
  return out;
}

void AnyonModel::check(Charge c) const {
  if (c.id >= names_.size()) {
    throw DomainError("charge index " + std::to_string(c.id) + " not in model");
  }
}

const std::string& AnyonModel::name(Charge c) const {
  check(c);
  return names_[c.id];
}

std::optional<Charge> AnyonModel::find(std::string_view name) const {
  if (name == "\xCF\x84") name = "tau";
  for (std::size_t i = 0; i < names_.size(); ++i) {
    if (names_[i] == name) return Charge{static_cast<std::uint8_t>(i)};
  }
  return std::nullopt;
}

Charge AnyonModel::charge(std::string_view name) const {
  if (auto c = find(name)) return *c;
  throw DomainError("unknown charge label '" + std::string(name) + "'");
}

bool AnyonModel::fuses(Charge a, Charge b, Charge c) const {
  check(a);
  check(b);
  check(c);
  const std::size_t n = names_.size();
  return fusion_[(a.id * n + b.id) * n + c.id];
}

std::vector<Charge> AnyonModel::fusion_outcomes(Charge a, Charge b) const {
  std::vector<Charge> out;
  for (Charge c : charges()) {
    if (fuses(a, b, c)) out.push_back(c);
  }
  return out;
}

std::size_t AnyonModel::f_offset(Charge a, Charge b, Charge c, Charge g, Charge d,
                                 Charge f) const {
  for (Charge x : {a, b, c, g, d, f}) check(x);
  const std::size_t n = names_.size();
  return (((((a.id * n + b.id) * n + c.id) * n + g.id) * n + d.id) * n) + f.id;
}

std::size_t AnyonModel::r_offset(Charge a, Charge b, Charge c) const {
  for (Charge x : {a, b, c}) check(x);
  const std::size_t n = names_.size();
  return (a.id * n + b.id) * n + c.id;
}

Complex AnyonModel::f_symbol(Charge a, Charge b, Charge c, Charge g, Charge d, Charge f) const {
  return f_[f_offset(a, b, c, g, d, f)];
}

Complex AnyonModel::r_symbol(Charge a, Charge b, Charge c) const { return r_[r_offset(a, b, c)]; }

double AnyonModel::quantum_dim(Charge c) const {
  check(c);
  return dims_[c.id];
}

std::vector<Charge> AnyonModel::f_rows(Charge a, Charge b, Charge c, Charge g) const {
  std::vector<Charge> out;
  for (Charge d : charges()) {
    if (fuses(a, b, d) && fuses(d, c, g)) out.push_back(d);
  }
  return out;
}

std::vector<Charge> AnyonModel::f_cols(Charge a, Charge b, Charge c, Charge g) const {
  std::vector<Charge> out;
  for (Charge f : charges()) {
    if (fuses(b, c, f) && fuses(a, f, g)) out.push_back(f);
  }
  return out;
}

Matrix AnyonModel::f_matrix(Charge a, Charge b, Charge c, Charge g) const {
  const auto rows = f_rows(a, b, c, g);
  const auto cols = f_cols(a, b, c, g);
  Matrix m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(cols.size()));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < cols.size(); ++j) {
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
          f_symbol(a, b, c, g, rows[i], cols[j]);
    }
  }
  return m;
}

void AnyonModel::set_fusion(Charge a, Charge b, const std::vector<Charge>& outcomes) {
  const std::size_t n = names_.size();
  check(a);
  check(b);
  for (Charge c : charges()) fusion_[(a.id * n + b.id) * n + c.id] = false;
  for (Charge c : outcomes) {
    check(c);
    fusion_[(a.id * n + b.id) * n + c.id] = true;
  }
}

void AnyonModel::set_f_symbol(Charge a, Charge b, Charge c, Charge g, Charge d, Charge f,
                              Complex value) {
  f_[f_offset(a, b, c, g, d, f)] = value;
}

void AnyonModel::set_r_symbol(Charge a, Charge b, Charge c, Complex value) {
  r_[r_offset(a, b, c)] = value;
}

void AnyonModel::set_quantum_dim(Charge c, double value) {
  check(c);
  dims_[c.id] = value;
}

void AnyonModel::fill_trivial_symbols() {
  const auto all = charges();
  for (Charge a : all)
    for (Charge b : all)
      for (Charge c : all)
        for (Charge g : all)
          for (Charge d : all)
            for (Charge f : all) {
              const bool ok = fuses(a, b, d) && fuses(d, c, g) && fuses(b, c, f) && fuses(a, f, g);
              set_f_symbol(a, b, c, g, d, f, ok ? Complex{1.0, 0.0} : Complex{0.0, 0.0});
            }
  for (Charge a : all)
    for (Charge b : all)
      for (Charge c : all) set_r_symbol(a, b, c, fuses(a, b, c) ? Complex{1.0, 0.0} : Complex{});
}

AnyonModel fibonacci_model() {
  using fib::e;
  using fib::tau;
  AnyonModel m({"e", "tau"}, e);
  m.set_fusion(e, e, {e});
  m.set_fusion(e, tau, {tau});
  m.set_fusion(tau, e, {tau});
  m.set_fusion(tau, tau, {e, tau});
  m.fill_trivial_symbols();

  const double phi = std::numbers::phi;
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  const double inv_sqrt_phi = 1.0 / std::sqrt(phi);
  m.set_f_symbol(tau, tau, tau, tau, e, e, inv_phi);
  m.set_f_symbol(tau, tau, tau, tau, e, tau, inv_sqrt_phi);
  m.set_f_symbol(tau, tau, tau, tau, tau, e, inv_sqrt_phi);
  m.set_f_symbol(tau, tau, tau, tau, tau, tau, -inv_phi);

  m.set_r_symbol(tau, tau, e, std::polar(1.0, -4.0 * std::numbers::pi / 5.0));
  m.set_r_symbol(tau, tau, tau, std::polar(1.0, 3.0 * std::numbers::pi / 5.0));

  m.set_quantum_dim(e, 1.0);
  m.set_quantum_dim(tau, phi);
  return m;
}

ModelPtr shared_fibonacci() {
  static const ModelPtr model = std::make_shared<const AnyonModel>(fibonacci_model());
  return model;
}

double f_unitarity_residual(const AnyonModel& model) {
  double worst = 0.0;
  const auto all = model.charges();
  for (Charge a : all)
    for (Charge b : all)
      for (Charge c : all)
        for (Charge g : all) {
          const Matrix f = model.f_matrix(a, b, c, g);
          if (f.rows() != f.cols()) return std::numeric_limits<double>::infinity();
          if (f.size() == 0) continue;
          const Matrix diff = f.adjoint() * f - Matrix::Identity(f.rows(), f.cols());
          worst = std::max(worst, diff.cwiseAbs().maxCoeff());
        }
  return worst;
}

double pentagon_residual(const AnyonModel& model) {
  // ((a b)_f c)_g d ; e  ->  a (b (c d)_l)_k ; e  along the two rotation paths.
  const auto all = model.charges();
  double worst = 0.0;
  for (Charge a : all)
    for (Charge b : all)
      for (Charge c : all)
        for (Charge d : all)
          for (Charge e : all)
            for (Charge f : all)
              for (Charge g : all)
                for (Charge k : all)
                  for (Charge l : all) {
                    const Complex lhs =
                        model.f_symbol(f, c, d, e, g, l) * model.f_symbol(a, b, l, e, f, k);
                    Complex rhs{0.0, 0.0};
                    for (Charge h : all) {
                      rhs += model.f_symbol(a, b, c, g, f, h) * model.f_symbol(a, h, d, e, g, k) *
                             model.f_symbol(b, c, d, k, h, l);
                    }
                    worst = std::max(worst, std::abs(lhs - rhs));
                  }
  return worst;
}

std::vector<std::string> validate_model(const AnyonModel& model, double tol) {
  std::vector<std::string> report;
  const auto all = model.charges();
  const Charge vac = model.vacuum();
  auto nm = [&](Charge c) { return model.name(c); };

  for (Charge a : all)
    for (Charge b : all) {
      if (model.fusion_outcomes(a, b) != model.fusion_outcomes(b, a)) {
        report.push_back("fusion not symmetric: " + nm(a) + " x " + nm(b));
      }
    }

  for (Charge a : all) {
    const std::vector<Charge> expected{a};
    if (model.fusion_outcomes(vac, a) != expected || model.fusion_outcomes(a, vac) != expected) {
      report.push_back("vacuum not identity: " + nm(vac) + " x " + nm(a));
    }
    int conjugates = 0;
    for (Charge b : all) conjugates += model.fuses(a, b, vac) ? 1 : 0;
    if (conjugates != 1) report.push_back("conjugate missing or not unique: " + nm(a));
  }

  for (Charge a : all)
    for (Charge b : all)
      for (Charge c : all)
        for (Charge g : all) {
          const Matrix f = model.f_matrix(a, b, c, g);
          const std::string tag = "F[" + nm(a) + " " + nm(b) + " " + nm(c) + "; " + nm(g) + "]";
          if (f.rows() != f.cols()) {
            report.push_back("F-matrix not unitary: " + tag + " is not square");
            continue;
          }
          if (f.size() == 0) continue;
          const Matrix diff = f.adjoint() * f - Matrix::Identity(f.rows(), f.cols());
          const double res = diff.cwiseAbs().maxCoeff();
          if (res > tol) {
            std::ostringstream os;
            os << "F-matrix not unitary: " << tag << " residual " << res;
            report.push_back(os.str());
          }
        }

  for (Charge a : all)
    for (Charge b : all)
      for (Charge c : all) {
        if (!model.fuses(a, b, c)) continue;
        const Complex r = model.r_symbol(a, b, c);
        if (std::abs(std::abs(r) - 1.0) > tol) {
          report.push_back("R-symbol not a phase: R[" + nm(a) + " " + nm(b) + "; " + nm(c) + "]");
        }
        if ((a == vac || b == vac) && std::abs(r - Complex{1.0, 0.0}) > tol) {
          report.push_back("vacuum R-symbol not 1: R[" + nm(a) + " " + nm(b) + "; " + nm(c) + "]");
        }
      }

  const double pent = pentagon_residual(model);
  if (pent > tol) {
    std::ostringstream os;
    os << "pentagon violated: residual " << pent;
    report.push_back(os.str());
  }
  return report;
}

namespace {

std::string strip_comment(const std::string& line) {
  const auto pos = line.find('#');
  return pos == std::string::npos ? line : line.substr(0, pos);
}

std::vector<std::string> tokens(const std::string& s) {
  std::istringstream is(s);
  std::vector<std::string> out;
  std::string t;
  while (is >> t) out.push_back(t);
  return out;
}

std::string normalize_label(const std::string& label) {
  return label == "\xCF\x84" ? std::string("tau") : label;
}

double parse_number(const std::string& s, int line) {
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw ParseError("model line " + std::to_string(line) + ": bad number '" + s + "'");
  }
}

}  // namespace

AnyonModel parse_model(std::istream& in) {
  struct Pending {
    std::vector<std::string> toks;
    int line;
  };
  std::vector<std::string> names;
  std::string vacuum_name;
  std::vector<Pending> fusion_lines, symbol_lines, dim_lines;

  std::string raw;
  int lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    auto toks = tokens(strip_comment(raw));
    if (toks.empty()) continue;
    for (auto& t : toks) t = normalize_label(t);
    const std::string& kw = toks[0];
    if (kw == "charges") {
      names.assign(toks.begin() + 1, toks.end());
    } else if (kw == "vacuum" && toks.size() == 2) {
      vacuum_name = toks[1];
    } else if (kw == "fusion") {
      fusion_lines.push_back({toks, lineno});
    } else if (kw == "F" || kw == "R") {
      symbol_lines.push_back({toks, lineno});
    } else if (kw == "dim" && toks.size() == 3) {
      dim_lines.push_back({toks, lineno});
    } else {
      throw ParseError("model line " + std::to_string(lineno) + ": unrecognized declaration");
    }
  }
  if (names.empty()) {
    // Charges in order of first appearance on fusion lines.
    for (const auto& [toks, line] : fusion_lines) {
      for (std::size_t i = 1; i < toks.size(); ++i) {
        if (i == 3) continue;
        if (std::find(names.begin(), names.end(), toks[i]) == names.end()) names.push_back(toks[i]);
      }
    }
    if (names.empty()) throw ParseError("model: no 'charges' or 'fusion' declarations");
    const auto vac = std::find(names.begin(), names.end(), vacuum_name.empty() ? "e" : vacuum_name);
    if (vac != names.end()) std::rotate(names.begin(), vac, vac + 1);
  }
  if (vacuum_name.empty()) {
    vacuum_name = std::find(names.begin(), names.end(), "e") != names.end() ? "e" : names.front();
  }

  auto lookup = [&](const std::string& s, int line) -> Charge {
    for (std::size_t i = 0; i < names.size(); ++i) {
      if (names[i] == s) return Charge{static_cast<std::uint8_t>(i)};
    }
    throw ParseError("model line " + std::to_string(line) + ": unknown charge '" + s + "'");
  };

  AnyonModel model(names, lookup(vacuum_name, 0));
  // Undeclared products: vacuum acts as identity, and a x b mirrors b x a.
  for (Charge a : model.charges()) {
    model.set_fusion(model.vacuum(), a, {a});
    model.set_fusion(a, model.vacuum(), {a});
  }
  std::vector<std::pair<Charge, Charge>> declared;
  for (const auto& [toks, line] : fusion_lines) {
    // fusion a b -> c...
    if (toks.size() < 4 || toks[3] != "->") {
      throw ParseError("model line " + std::to_string(line) + ": expected 'fusion a b -> c ...'");
    }
    std::vector<Charge> out;
    for (std::size_t i = 4; i < toks.size(); ++i) out.push_back(lookup(toks[i], line));
    const Charge a = lookup(toks[1], line), b = lookup(toks[2], line);
    model.set_fusion(a, b, out);
    declared.emplace_back(a, b);
    if (std::find(declared.begin(), declared.end(), std::pair{b, a}) == declared.end()) model.set_fusion(b, a, out);
  }
  model.fill_trivial_symbols();
  for (const auto& [toks, line] : symbol_lines) {
    const std::string where = "model line " + std::to_string(line);
    if (toks[0] == "F") {
      // F a b c ; g ; d f = re im
      if (toks.size() != 12 || toks[4] != ";" || toks[6] != ";" || toks[9] != "=") {
        throw ParseError(where + ": expected 'F a b c ; g ; d f = re im'");
      }
      model.set_f_symbol(lookup(toks[1], line), lookup(toks[2], line), lookup(toks[3], line),
                         lookup(toks[5], line), lookup(toks[7], line), lookup(toks[8], line),
                         Complex{parse_number(toks[10], line), parse_number(toks[11], line)});
    } else {
      // R a b ; c = re im
      if (toks.size() != 8 || toks[3] != ";" || toks[5] != "=") {
        throw ParseError(where + ": expected 'R a b ; c = re im'");
      }
      model.set_r_symbol(lookup(toks[1], line), lookup(toks[2], line), lookup(toks[4], line),
                         Complex{parse_number(toks[6], line), parse_number(toks[7], line)});
    }
  }
  for (const auto& [toks, line] : dim_lines) {
    model.set_quantum_dim(lookup(toks[1], line), parse_number(toks[2], line));
  }
  return model;
}

AnyonModel load_model(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open model file '" + path + "'");
  return parse_model(in);
}

}  // namespace anyonqi
