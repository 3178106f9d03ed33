#pragma once

#include "anyonqi/state_algebra.hpp"

#include <iosfwd>
#include <string>
#include <string_view>

namespace anyonqi {

/// Tree labels mirror Dirac strings: leaf charges grouped by the shape's
/// parentheses (outer root pair dropped), then the non-root internal charges
/// in preorder, then the global charge, separated by ';'. For example
///   tau,tau;e                          two anyons
///   (tau,e),(e,tau);tau,tau;e          ((0 1)(2 3))
///   tau                                one anyon
/// Parentheses and whitespace are ignored on input; `τ` is read as `tau`.
std::string format_tree_label(const AnyonModel& model, const TreeShape& shape, const FusionTree& tree);
std::string format_tree_label(const SectorBasis& basis, std::size_t index);
// Throws ParseError on bad syntax, unknown charges or wrong label counts.
FusionTree parse_tree_label(const AnyonModel& model, const TreeShape& shape, std::string_view text);
// As above, and additionally DomainError when the tree is not in `basis`.
std::size_t parse_basis_label(const SectorBasis& basis, std::string_view text);

/// State file:
///   shape: <canonical shape>
///   <label> : <re> <im>
/// Operator file lines are `<row label> | <column label> : <re> <im>`, the
/// coefficient of |row><column|. Blank lines and `#` comments are skipped.
AnyonState read_state(std::istream& in, ModelPtr model);
AnyonState load_state(const std::string& path, ModelPtr model);
void write_state(std::ostream& out, const AnyonState& state);

DenseOperator read_operator(std::istream& in, ModelPtr model);
void write_operator(std::ostream& out, const DenseOperator& op, double drop_below = 0.0);
void write_operator(std::ostream& out, const BlockOperator& op, double drop_below = 0.0);

// Shortest decimal form that reads back to the same double.
std::string format_double(double x);

}  // namespace anyonqi
