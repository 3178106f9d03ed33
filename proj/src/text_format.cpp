#include "anyonqi/text_format.hpp"

#include "anyonqi/errors.hpp"

#include <charconv>
#include <fstream>
#include <functional>
#include <istream>
#include <ostream>
#include <sstream>

namespace anyonqi {

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (;;) {
    const auto p = s.find(sep, start);
    out.push_back(trim(s.substr(start, p == std::string_view::npos ? std::string_view::npos : p - start)));
    if (p == std::string_view::npos) return out;
    start = p + 1;
  }
}

std::string normalize_label(std::string_view s) {
  std::string out;
  for (std::size_t i = 0; i < s.size(); ++i) {
    // UTF-8 for U+03C4 GREEK SMALL LETTER TAU.
    if (s.compare(i, 2, "\xCF\x84") == 0) {
      out += "tau";
      ++i;
      continue;
    }
    const char c = s[i];
    if (c == '(' || c == ')' || c == ' ' || c == '\t') continue;
    out += c;
  }
  return out;
}

std::vector<Charge> parse_charges(const AnyonModel& model, const std::string& section, std::string_view whole) {
  std::vector<Charge> out;
  if (section.empty()) return out;
  for (const std::string& name : split(section, ',')) {
    const auto c = model.find(name);
    if (!c) throw ParseError("unknown charge '" + name + "' in label '" + std::string(whole) + "'");
    out.push_back(*c);
  }
  return out;
}

double parse_number(const std::string& s, std::string_view line) {
  double v = 0.0;
  const char* first = s.data();
  const char* last = s.data() + s.size();
  const auto [p, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || p != last) throw ParseError("bad number '" + s + "' in line '" + std::string(line) + "'");
  return v;
}

Complex parse_value(std::string_view text, std::string_view line) {
  std::istringstream ss{std::string(text)};
  std::string re, im, extra;
  if (!(ss >> re >> im) || (ss >> extra)) throw ParseError("expected '<re> <im>' in line '" + std::string(line) + "'");
  return {parse_number(re, line), parse_number(im, line)};
}

struct Header {
  BasisPtr basis;
  std::vector<std::string> body;
};

Header read_header(std::istream& in, ModelPtr model) {
  Header h;
  std::string line;
  while (std::getline(in, line)) {
    const auto hash = line.find('#');
    std::string t = trim(hash == std::string::npos ? line : line.substr(0, hash));
    if (t.empty()) continue;
    if (!h.basis) {
      if (t.rfind("shape:", 0) != 0) throw ParseError("expected 'shape: <tree shape>' header, got '" + t + "'");
      h.basis = enumerate_basis(model, TreeShape::parse(trim(std::string_view(t).substr(6))));
      continue;
    }
    h.body.push_back(t);
  }
  if (!h.basis) throw ParseError("missing 'shape:' header");
  return h;
}

}  // namespace

std::string format_double(double x) {
  char buf[64];
  const auto [p, ec] = std::to_chars(buf, buf + sizeof buf, x);
  if (ec != std::errc()) throw Error("cannot format number");
  return std::string(buf, p);
}

std::string format_tree_label(const AnyonModel& model, const TreeShape& shape, const FusionTree& tree) {
  if (shape.num_leaves() == 1) return model.name(tree.global);
  const auto labels = node_charges(shape, tree);
  std::function<std::string(int)> render = [&](int i) -> std::string {
    const auto& n = shape.node(i);
    if (n.is_leaf()) return model.name(labels[static_cast<std::size_t>(i)]);
    const std::string inner = render(n.left) + "," + render(n.right);
    return i == 0 ? inner : "(" + inner + ")";
  };
  std::string out = render(0);
  if (shape.num_internal() > 1) {
    out += ";";
    for (int k = 1; k < shape.num_internal(); ++k) {
      if (k > 1) out += ",";
      out += model.name(tree.internal[static_cast<std::size_t>(k)]);
    }
  }
  return out + ";" + model.name(tree.global);
}

std::string format_tree_label(const SectorBasis& basis, std::size_t index) {
  return format_tree_label(basis.model(), basis.shape(), basis.tree_at(index));
}

FusionTree parse_tree_label(const AnyonModel& model, const TreeShape& shape, std::string_view text) {
  const std::string norm = normalize_label(text);
  const auto sections = split(norm, ';');
  const int n = shape.num_leaves();
  FusionTree t;
  if (n == 1) {
    if (sections.size() != 1 && sections.size() != 2) throw ParseError("bad one-anyon label '" + std::string(text) + "'");
    t.leaves = parse_charges(model, sections[0], text);
    if (t.leaves.size() != 1) throw ParseError("expected one leaf charge in '" + std::string(text) + "'");
    t.global = t.leaves[0];
    if (sections.size() == 2) {
      const auto g = parse_charges(model, sections[1], text);
      if (g.size() != 1 || g[0] != t.global) throw ParseError("one-anyon global charge must equal its leaf");
    }
    return t;
  }
  const std::size_t expected_sections = n == 2 ? 2 : 3;
  if (sections.size() != expected_sections) {
    throw ParseError("label '" + std::string(text) + "' needs " + std::to_string(expected_sections) +
                     " ';'-separated sections for " + std::to_string(n) + " anyons");
  }
  t.leaves = parse_charges(model, sections[0], text);
  if (static_cast<int>(t.leaves.size()) != n) {
    throw ParseError("label '" + std::string(text) + "' has " + std::to_string(t.leaves.size()) + " leaf charges, expected " +
                     std::to_string(n));
  }
  const auto g = parse_charges(model, sections.back(), text);
  if (g.size() != 1) throw ParseError("label '" + std::string(text) + "' needs exactly one global charge");
  t.global = g[0];
  t.internal.push_back(t.global);
  if (n > 2) {
    const auto rest = parse_charges(model, sections[1], text);
    if (static_cast<int>(rest.size()) != n - 2) {
      throw ParseError("label '" + std::string(text) + "' has " + std::to_string(rest.size()) +
                       " internal charges, expected " + std::to_string(n - 2));
    }
    t.internal.insert(t.internal.end(), rest.begin(), rest.end());
  }
  return t;
}

std::size_t parse_basis_label(const SectorBasis& basis, std::string_view text) {
  return basis.index_of(parse_tree_label(basis.model(), basis.shape(), text));
}

AnyonState read_state(std::istream& in, ModelPtr model) {
  Header h = read_header(in, std::move(model));
  Vector v = Vector::Zero(static_cast<Eigen::Index>(h.basis->size()));
  for (const std::string& line : h.body) {
    const auto colon = line.rfind(':');
    if (colon == std::string::npos) throw ParseError("expected '<label> : <re> <im>', got '" + line + "'");
    const std::size_t i = parse_basis_label(*h.basis, trim(std::string_view(line).substr(0, colon)));
    v(static_cast<Eigen::Index>(i)) += parse_value(std::string_view(line).substr(colon + 1), line);
  }
  return AnyonState(h.basis, std::move(v));
}

AnyonState load_state(const std::string& path, ModelPtr model) {
  std::ifstream f(path);
  if (!f) throw DomainError("cannot open state file '" + path + "'");
  return read_state(f, std::move(model));
}

void write_state(std::ostream& out, const AnyonState& state) {
  const SectorBasis& b = state.basis();
  out << "shape: " << b.shape().to_string() << "\n";
  for (std::size_t i = 0; i < b.size(); ++i) {
    const Complex a = state[i];
    if (a == 0.0) continue;
    out << format_tree_label(b, i) << " : " << format_double(a.real()) << " " << format_double(a.imag()) << "\n";
  }
}

DenseOperator read_operator(std::istream& in, ModelPtr model) {
  Header h = read_header(in, std::move(model));
  const auto n = static_cast<Eigen::Index>(h.basis->size());
  Matrix m = Matrix::Zero(n, n);
  for (const std::string& line : h.body) {
    const auto colon = line.rfind(':');
    const auto bar = line.find('|');
    if (colon == std::string::npos || bar == std::string::npos || bar > colon) {
      throw ParseError("expected '<row label> | <column label> : <re> <im>', got '" + line + "'");
    }
    const std::size_t r = parse_basis_label(*h.basis, trim(std::string_view(line).substr(0, bar)));
    const std::size_t c = parse_basis_label(*h.basis, trim(std::string_view(line).substr(bar + 1, colon - bar - 1)));
    m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) += parse_value(std::string_view(line).substr(colon + 1), line);
  }
  return {h.basis, std::move(m)};
}

void write_operator(std::ostream& out, const DenseOperator& op, double drop_below) {
  const SectorBasis& b = *op.basis;
  out << "shape: " << b.shape().to_string() << "\n";
  for (std::size_t i = 0; i < b.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) {
      const Complex a = op.matrix(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
      if (a == 0.0 || std::abs(a) < drop_below) continue;
      out << format_tree_label(b, i) << " | " << format_tree_label(b, j) << " : " << format_double(a.real()) << " "
          << format_double(a.imag()) << "\n";
    }
  }
}

void write_operator(std::ostream& out, const BlockOperator& op, double drop_below) {
  write_operator(out, op.dense(), drop_below);
}

}  // namespace anyonqi
