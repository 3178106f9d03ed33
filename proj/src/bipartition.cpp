#include "anyonqi/bipartition.hpp"

#include "anyonqi/errors.hpp"

namespace anyonqi {

namespace {

using Eigen::Index;

Index ix(std::size_t i) { return static_cast<Index>(i); }

Side other(Side s) { return s == Side::A ? Side::B : Side::A; }

struct Member {
  std::size_t kept;   // kept-side subsystem index
  std::size_t whole;  // index in the whole basis
};

// For every (global charge g, traced-side index t): whole-basis trees with that
// traced part, in ascending whole index.
std::vector<std::vector<Member>> group_by_traced(const Bipartition& bip, Side traced) {
  const SectorBasis& w = bip.whole();
  const std::size_t nt = bip.subsystem(traced)->size();
  std::vector<std::vector<Member>> groups(w.num_sectors() * nt);
  for (std::size_t i = 0; i < w.size(); ++i) {
    const std::size_t t = bip.part_index(i, traced);
    groups[w.sector_of(i).id * nt + t].push_back({bip.part_index(i, other(traced)), i});
  }
  return groups;
}

Complex whole_element(const BlockOperator& op, const std::vector<std::size_t>& offset, Charge g, std::size_t i,
                      std::size_t j) {
  return op.block(g)(ix(i - offset[g.id]), ix(j - offset[g.id]));
}

std::vector<std::size_t> offsets(const SectorBasis& b) {
  std::vector<std::size_t> o(b.num_sectors());
  for (std::size_t g = 0; g < o.size(); ++g) o[g] = b.sector_offset(Charge{static_cast<std::uint8_t>(g)});
  return o;
}

void require_whole(const SectorBasis& b, const Bipartition& bip) {
  if (!same_space(b, bip.whole())) throw DomainError("operator is not on the bipartitioned basis");
}

void require_sub(const SectorBasis& b, const Bipartition& bip, Side s) {
  if (!same_space(b, *bip.subsystem(s))) throw DomainError("operator is not on the subsystem basis");
}

std::size_t side_join(const Bipartition& bip, Side kept, std::size_t x, std::size_t t, Charge g) {
  return kept == Side::A ? bip.join_index(x, t, g) : bip.join_index(t, x, g);
}

int root_split(const BasisPtr& whole) {
  if (!whole) throw DomainError("bipartition needs a basis");
  const TreeShape& shape = whole->shape();
  if (shape.num_leaves() < 2) throw ShapeError("a single anyon cannot be bipartitioned");
  return shape.leaf_count(shape.node(0).left);
}

}  // namespace

TreeShape grouped_shape(int n_a, int n_b) { return TreeShape::grouped(n_a, n_b); }

Bipartition::Bipartition(BasisPtr whole) : Bipartition(whole, root_split(whole)) {}

Bipartition::Bipartition(BasisPtr whole, int split) : whole_(std::move(whole)), split_(split) {
  if (!whole_) throw DomainError("bipartition needs a basis");
  const TreeShape& shape = whole_->shape();
  if (shape.num_leaves() < 2) throw ShapeError("a single anyon cannot be bipartitioned");
  const auto& root = shape.node(0);
  if (shape.leaf_count(root.left) != split) {
    throw ShapeError("shape " + shape.to_string() + " does not group leaves [0," + std::to_string(split) + ") and [" +
                     std::to_string(split) + "," + std::to_string(shape.num_leaves()) +
                     "); reshape with change_shape first");
  }
  const ModelPtr& model = whole_->model_ptr();
  a_ = enumerate_basis(model, shape.subtree(root.left));
  b_ = enumerate_basis(model, shape.subtree(root.right));

  const std::size_t na = a_->size(), nb = b_->size();
  join_.assign(whole_->num_sectors() * na * nb, npos);
  a_index_.resize(whole_->size());
  b_index_.resize(whole_->size());
  const int a_nodes = a_->shape().num_nodes();
  const int b_nodes = b_->shape().num_nodes();
  for (std::size_t i = 0; i < whole_->size(); ++i) {
    const auto labels = node_charges(shape, whole_->tree_at(i));
    const std::span<const Charge> all(labels);
    const FusionTree ta = tree_from_node_charges(a_->shape(), all.subspan(static_cast<std::size_t>(root.left), static_cast<std::size_t>(a_nodes)));
    const FusionTree tb = tree_from_node_charges(b_->shape(), all.subspan(static_cast<std::size_t>(root.right), static_cast<std::size_t>(b_nodes)));
    a_index_[i] = a_->index_of(ta);
    b_index_[i] = b_->index_of(tb);
    join_[(whole_->sector_of(i).id * na + a_index_[i]) * nb + b_index_[i]] = i;
  }
}

Charge Bipartition::part_root(std::size_t i, Side s) const {
  return subsystem(s)->tree_at(part_index(i, s)).global;
}

std::size_t Bipartition::join_index(std::size_t a, std::size_t b, Charge g) const {
  const std::size_t na = a_->size(), nb = b_->size();
  if (a >= na || b >= nb || g.id >= whole_->num_sectors()) return npos;
  return join_[(g.id * na + a) * nb + b];
}

BlockOperator embed_local(const BlockOperator& op, const Bipartition& bip, Side side) {
  require_sub(op.basis(), bip, side);
  const SectorBasis& w = bip.whole();
  const SectorBasis& sub = *bip.subsystem(side);
  const Side traced = other(side);
  const auto groups = group_by_traced(bip, traced);
  const std::size_t nt = bip.subsystem(traced)->size();
  const auto woff = offsets(w);
  const auto soff = offsets(sub);
  BlockOperator out = BlockOperator::zero(bip.whole_ptr());
  const Index n = ix(w.size());
  // Each row is written by exactly one iteration.
#pragma omp parallel for schedule(static)
  for (Index r = 0; r < n; ++r) {
    const std::size_t i = static_cast<std::size_t>(r);
    const Charge g = w.sector_of(i);
    const std::size_t k = bip.part_index(i, side);
    const Charge kg = sub.tree_at(k).global;
    Matrix& blk = out.block(g);
    for (const Member& m : groups[g.id * nt + bip.part_index(i, traced)]) {
      if (sub.tree_at(m.kept).global != kg) continue;
      blk(ix(i - woff[g.id]), ix(m.whole - woff[g.id])) = whole_element(op, soff, kg, k, m.kept);
    }
  }
  return out;
}

BlockOperator partial_trace(const BlockOperator& rho, const Bipartition& bip, Side traced) {
  require_whole(rho.basis(), bip);
  const Side kept = other(traced);
  const SectorBasis& w = bip.whole();
  const SectorBasis& sub = *bip.subsystem(kept);
  const std::size_t nt = bip.subsystem(traced)->size();
  const std::size_t nk = sub.size();
  const auto woff = offsets(w);
  Matrix dense = Matrix::Zero(ix(nk), ix(nk));
  // Entry (x, x') is accumulated by the single iteration owning row x, over
  // (g, t) ascending, so the result does not depend on the thread schedule.
#pragma omp parallel for schedule(dynamic)
  for (Index r = 0; r < ix(nk); ++r) {
    const std::size_t x = static_cast<std::size_t>(r);
    const Charge xg = sub.tree_at(x).global;
    for (std::size_t g = 0; g < w.num_sectors(); ++g) {
      const Charge gc{static_cast<std::uint8_t>(g)};
      for (std::size_t t = 0; t < nt; ++t) {
        const std::size_t i = side_join(bip, kept, x, t, gc);
        if (i == npos) continue;
        const Matrix& blk = rho.block(gc);
        const Index li = ix(i - woff[g]);
        for (std::size_t x2 = 0; x2 < nk; ++x2) {
          if (sub.tree_at(x2).global != xg) continue;
          const std::size_t j = side_join(bip, kept, x2, t, gc);
          if (j == npos) continue;
          dense(r, ix(x2)) += blk(li, ix(j - woff[g]));
        }
      }
    }
  }
  return BlockOperator::from_dense(bip.subsystem(kept), dense, 0.0);
}

BlockOperator partial_trace(const AnyonState& psi, const Bipartition& bip, Side traced) {
  require_whole(psi.basis(), bip);
  const Side kept = other(traced);
  const SectorBasis& sub = *bip.subsystem(kept);
  const std::size_t nk = sub.size();
  const std::size_t nt = bip.subsystem(traced)->size();
  Matrix amp = Matrix::Zero(ix(nk), ix(nt));
  for (std::size_t x = 0; x < nk; ++x) {
    for (std::size_t t = 0; t < nt; ++t) {
      const std::size_t i = side_join(bip, kept, x, t, psi.sector());
      if (i != npos) amp(ix(x), ix(t)) = psi[i];
    }
  }
  Matrix dense = amp * amp.adjoint();
  for (std::size_t x = 0; x < nk; ++x) {
    for (std::size_t x2 = 0; x2 < nk; ++x2) {
      if (sub.tree_at(x).global != sub.tree_at(x2).global) dense(ix(x), ix(x2)) = 0.0;
    }
  }
  return BlockOperator::from_dense(bip.subsystem(kept), dense, 0.0);
}

namespace reference {

BlockOperator embed_local(const BlockOperator& op, const Bipartition& bip, Side side) {
  require_sub(op.basis(), bip, side);
  const SectorBasis& w = bip.whole();
  const Side traced = other(side);
  Matrix out = Matrix::Zero(ix(w.size()), ix(w.size()));
  for (std::size_t i = 0; i < w.size(); ++i) {
    for (std::size_t j = 0; j < w.size(); ++j) {
      if (w.sector_of(i) != w.sector_of(j)) continue;
      if (bip.part_index(i, traced) != bip.part_index(j, traced)) continue;
      if (bip.part_root(i, side) != bip.part_root(j, side)) continue;
      out(ix(i), ix(j)) = op.element(bip.part_index(i, side), bip.part_index(j, side));
    }
  }
  return BlockOperator::from_dense(bip.whole_ptr(), out, 0.0);
}

BlockOperator partial_trace(const BlockOperator& rho, const Bipartition& bip, Side traced) {
  require_whole(rho.basis(), bip);
  const SectorBasis& w = bip.whole();
  const Side kept = other(traced);
  const std::size_t nk = bip.subsystem(kept)->size();
  Matrix out = Matrix::Zero(ix(nk), ix(nk));
  for (std::size_t i = 0; i < w.size(); ++i) {
    for (std::size_t j = 0; j < w.size(); ++j) {
      if (w.sector_of(i) != w.sector_of(j)) continue;
      if (bip.part_index(i, traced) != bip.part_index(j, traced)) continue;
      if (bip.part_root(i, kept) != bip.part_root(j, kept)) continue;
      out(ix(bip.part_index(i, kept)), ix(bip.part_index(j, kept))) += rho.element(i, j);
    }
  }
  return BlockOperator::from_dense(bip.subsystem(kept), out, 0.0);
}

}  // namespace reference

}  // namespace anyonqi
