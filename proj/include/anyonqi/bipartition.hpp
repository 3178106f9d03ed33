#pragma once

#include "anyonqi/state_algebra.hpp"

#include <vector>

namespace anyonqi {

enum class Side { A, B };

/// Split of a grouped shape into the root's left subtree (party A, leaves
/// [0, split)) and right subtree (party B, leaves [split, N)). Each party gets
/// its own subsystem basis over the corresponding subtree shape.
class Bipartition {
 public:
  // Splits at the root. Throws ShapeError for a single leaf.
  explicit Bipartition(BasisPtr whole);
  // Throws ShapeError unless the root joins leaves [0, split) and [split, N);
  // reshape with change_shape first in that case.
  Bipartition(BasisPtr whole, int split);

  const SectorBasis& whole() const { return *whole_; }
  const BasisPtr& whole_ptr() const { return whole_; }
  const BasisPtr& subsystem(Side s) const { return s == Side::A ? a_ : b_; }
  int split() const { return split_; }

  // Subsystem basis index of the part of whole-basis tree i on side s.
  std::size_t part_index(std::size_t i, Side s) const { return (s == Side::A ? a_index_ : b_index_)[i]; }
  // Root charge of that part.
  Charge part_root(std::size_t i, Side s) const;
  // Whole-basis index of the tree joining (a, b) into g, or npos.
  std::size_t join_index(std::size_t a, std::size_t b, Charge g) const;

 private:
  BasisPtr whole_;
  BasisPtr a_;
  BasisPtr b_;
  int split_ = 0;
  std::vector<std::size_t> a_index_;
  std::vector<std::size_t> b_index_;
  std::vector<std::size_t> join_;  // [(g * dim_a + a) * dim_b + b]
};

// Shape joining a left comb over n_a leaves with a left comb over n_b leaves.
TreeShape grouped_shape(int n_a, int n_b);

/// Extends an operator on one party to the whole system: for each subsystem
/// element |x><x'| with equal root charge, the sum over every compatible
/// labeling of the other party and every global charge.
BlockOperator embed_local(const BlockOperator& op, const Bipartition& bip, Side side);

/// Anyonic partial trace over side `traced`. Keeps the terms whose traced-side
/// labelings coincide and whose kept-side root charges coincide.
BlockOperator partial_trace(const BlockOperator& rho, const Bipartition& bip, Side traced);
// Same for |psi><psi| without forming the full projector.
BlockOperator partial_trace(const AnyonState& psi, const Bipartition& bip, Side traced);

namespace reference {

// Serial, entry-by-entry transcriptions of the definitions above. Slow; used
// as test oracles for the parallel kernels.
BlockOperator embed_local(const BlockOperator& op, const Bipartition& bip, Side side);
BlockOperator partial_trace(const BlockOperator& rho, const Bipartition& bip, Side traced);

}  // namespace reference

}  // namespace anyonqi
