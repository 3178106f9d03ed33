#include "anyonqi/recoupling.hpp"

#include "anyonqi/errors.hpp"

namespace anyonqi {

namespace {

using Eigen::Index;

Index ix(std::size_t i) { return static_cast<Index>(i); }

Charge cid(std::size_t g) { return Charge{static_cast<std::uint8_t>(g)}; }

struct Entry {
  std::size_t row;
  Complex value;
};

// Nonzero coefficients <target tree | source tree i> of one rotation.
std::vector<Entry> rotation_column(const RotationStep& step, const SectorBasis& src, const SectorBasis& dst,
                                   std::size_t i) {
  const AnyonModel& model = src.model();
  const auto old = node_charges(src.shape(), src.tree_at(i));
  const auto& top = step.source.node(step.vertex);
  const auto& in = step.source.node(step.inner);
  Charge x, y, z, inner_old;
  const Charge g = old[static_cast<std::size_t>(step.vertex)];
  inner_old = old[static_cast<std::size_t>(step.inner)];
  if (step.direction == Rotation::right) {
    x = old[static_cast<std::size_t>(in.left)];
    y = old[static_cast<std::size_t>(in.right)];
    z = old[static_cast<std::size_t>(top.right)];
  } else {
    x = old[static_cast<std::size_t>(top.left)];
    y = old[static_cast<std::size_t>(in.left)];
    z = old[static_cast<std::size_t>(in.right)];
  }
  std::vector<Charge> fresh(old.size());
  for (std::size_t k = 0; k < old.size(); ++k) fresh[static_cast<std::size_t>(step.node_map[k])] = old[k];
  std::vector<Entry> out;
  for (Charge c : model.charges()) {
    Complex coeff;
    if (step.direction == Rotation::right) {
      if (!model.fuses(y, z, c) || !model.fuses(x, c, g)) continue;
      coeff = model.f_symbol(x, y, z, g, inner_old, c);
    } else {
      if (!model.fuses(x, y, c) || !model.fuses(c, z, g)) continue;
      coeff = std::conj(model.f_symbol(x, y, z, g, c, inner_old));
    }
    if (coeff == 0.0) continue;
    fresh[static_cast<std::size_t>(step.node_map[static_cast<std::size_t>(step.inner)])] = c;
    out.push_back({dst.index_of(tree_from_node_charges(dst.shape(), fresh)), coeff});
  }
  return out;
}

void check_step_bases(const RotationStep& step, const SectorBasis& src, const SectorBasis& dst) {
  if (!(src.shape() == step.source) || !(dst.shape() == step.target)) {
    throw ShapeError("rotation applied to a basis of a different shape");
  }
}

}  // namespace

RotationStep plan_rotation(const TreeShape& shape, int vertex, Rotation direction) {
  if (vertex < 0 || vertex >= shape.num_nodes() || shape.node(vertex).is_leaf()) {
    throw ShapeError("rotation vertex " + std::to_string(vertex) + " is not an internal node of " + shape.to_string());
  }
  const auto& top = shape.node(vertex);
  auto links = shape.links();
  RotationStep step;
  step.source = shape;
  step.vertex = vertex;
  step.direction = direction;
  if (direction == Rotation::right) {
    if (shape.node(top.left).is_leaf()) {
      throw ShapeError("right rotation needs an internal left child at vertex " + std::to_string(vertex));
    }
    const int inner = top.left;
    const auto& in = shape.node(inner);
    const int x = in.left, y = in.right, z = top.right;
    links[static_cast<std::size_t>(vertex)] = {x, inner, -1};
    links[static_cast<std::size_t>(inner)] = {y, z, -1};
    step.inner = inner;
  } else {
    if (shape.node(top.right).is_leaf()) {
      throw ShapeError("left rotation needs an internal right child at vertex " + std::to_string(vertex));
    }
    const int inner = top.right;
    const auto& in = shape.node(inner);
    const int x = top.left, y = in.left, z = in.right;
    links[static_cast<std::size_t>(vertex)] = {inner, z, -1};
    links[static_cast<std::size_t>(inner)] = {x, y, -1};
    step.inner = inner;
  }
  // Node 0 is the root in preorder; a rotation keeps the root vertex on top.
  step.target = TreeShape::from_links(links, 0, &step.node_map);
  return step;
}

std::vector<RotationStep> route_to_left_comb(const TreeShape& shape) {
  std::vector<RotationStep> out;
  TreeShape cur = shape;
  for (;;) {
    int v = -1;
    for (int i = 0; i < cur.num_nodes() && v < 0; ++i) {
      const auto& n = cur.node(i);
      if (!n.is_leaf() && !cur.node(n.right).is_leaf()) v = i;
    }
    if (v < 0) return out;
    out.push_back(plan_rotation(cur, v, Rotation::left));
    cur = out.back().target;
  }
}

std::vector<RotationStep> route_to_right_comb(const TreeShape& shape) {
  std::vector<RotationStep> out;
  TreeShape cur = shape;
  for (;;) {
    int v = -1;
    for (int i = 0; i < cur.num_nodes() && v < 0; ++i) {
      const auto& n = cur.node(i);
      if (!n.is_leaf() && !cur.node(n.left).is_leaf()) v = i;
    }
    if (v < 0) return out;
    out.push_back(plan_rotation(cur, v, Rotation::right));
    cur = out.back().target;
  }
}

std::vector<RotationStep> invert_route(const std::vector<RotationStep>& route) {
  std::vector<RotationStep> out;
  for (auto it = route.rbegin(); it != route.rend(); ++it) {
    const Rotation back = it->direction == Rotation::right ? Rotation::left : Rotation::right;
    out.push_back(plan_rotation(it->target, it->node_map[static_cast<std::size_t>(it->vertex)], back));
  }
  return out;
}

std::vector<RotationStep> route(const TreeShape& from, const TreeShape& to, CanonicalRoute via) {
  if (from.num_leaves() != to.num_leaves()) {
    throw ShapeError("shapes have different leaf counts: " + from.to_string() + " vs " + to.to_string());
  }
  auto down = via == CanonicalRoute::left_comb ? route_to_left_comb(from) : route_to_right_comb(from);
  auto up = invert_route(via == CanonicalRoute::left_comb ? route_to_left_comb(to) : route_to_right_comb(to));
  down.insert(down.end(), up.begin(), up.end());
  return down;
}

Vector apply_rotation(const RotationStep& step, const SectorBasis& src, const SectorBasis& dst, const Vector& v) {
  check_step_bases(step, src, dst);
  Vector out = Vector::Zero(ix(dst.size()));
  for (std::size_t i = 0; i < src.size(); ++i) {
    const Complex a = v(ix(i));
    if (a == 0.0) continue;
    for (const Entry& e : rotation_column(step, src, dst, i)) out(ix(e.row)) += e.value * a;
  }
  return out;
}

BasisChange::BasisChange(BasisPtr source, BasisPtr target, std::vector<Matrix> blocks)
    : source_(std::move(source)), target_(std::move(target)), blocks_(std::move(blocks)) {
  if (source_->model_ptr() != target_->model_ptr() || source_->num_leaves() != target_->num_leaves()) {
    throw DomainError("basis change between incompatible bases");
  }
  if (blocks_.size() != source_->num_sectors()) throw DomainError("basis change needs one block per sector");
  for (std::size_t g = 0; g < blocks_.size(); ++g) {
    const Index d = ix(source_->sector_dimension(cid(g)));
    if (blocks_[g].rows() != d || blocks_[g].cols() != d) throw DomainError("basis change block has wrong size");
  }
}

Matrix BasisChange::to_dense() const {
  const Index n = ix(source_->size());
  Matrix m = Matrix::Zero(n, n);
  for (std::size_t g = 0; g < blocks_.size(); ++g) {
    const Index off = ix(source_->sector_offset(cid(g)));
    m.block(off, off, blocks_[g].rows(), blocks_[g].cols()) = blocks_[g];
  }
  return m;
}

Vector BasisChange::apply(const Vector& v) const {
  if (static_cast<std::size_t>(v.size()) != source_->size()) throw DomainError("vector size does not match basis");
  Vector out(v.size());
  for (std::size_t g = 0; g < blocks_.size(); ++g) {
    const Index off = ix(source_->sector_offset(cid(g)));
    out.segment(off, blocks_[g].rows()) = blocks_[g] * v.segment(off, blocks_[g].cols());
  }
  return out;
}

AnyonState BasisChange::apply(const AnyonState& s) const {
  if (!same_space(s.basis(), *source_)) throw DomainError("state is not in the basis change's source basis");
  return AnyonState(target_, apply(s.amplitudes()));
}

BasisChange BasisChange::inverse() const {
  std::vector<Matrix> inv;
  for (const auto& b : blocks_) inv.push_back(b.adjoint());
  return BasisChange(target_, source_, std::move(inv));
}

BasisChange BasisChange::after(const BasisChange& first) const {
  if (!same_space(first.target(), *source_)) throw DomainError("basis changes do not compose");
  std::vector<Matrix> prod;
  for (std::size_t g = 0; g < blocks_.size(); ++g) prod.push_back(blocks_[g] * first.blocks_[g]);
  return BasisChange(first.source_, target_, std::move(prod));
}

double BasisChange::unitarity_residual() const {
  double r = 0.0;
  for (const auto& b : blocks_) {
    if (b.size() == 0) continue;
    r = std::max(r, max_abs(b.adjoint() * b - Matrix::Identity(b.rows(), b.cols())));
  }
  return r;
}

namespace {

// Matrix of a sequence of rotations, built column by column in parallel.
BasisChange route_matrix(ModelPtr model, const TreeShape& from, const std::vector<RotationStep>& steps,
                         const TreeShape& to) {
  std::vector<BasisPtr> bases{enumerate_basis(model, from)};
  for (const auto& s : steps) bases.push_back(enumerate_basis(model, s.target));
  if (!(bases.back()->shape() == to)) throw ShapeError("rotation route does not end at " + to.to_string());
  if (bases.size() == 1) bases.push_back(enumerate_basis(model, to));

  const std::size_t n = bases.front()->size();
  Matrix full = Matrix::Zero(ix(n), ix(n));
#pragma omp parallel for schedule(dynamic)
  for (Index j = 0; j < ix(n); ++j) {
    Vector col = Vector::Zero(ix(n));
    col(j) = 1.0;
    for (std::size_t k = 0; k < steps.size(); ++k) col = apply_rotation(steps[k], *bases[k], *bases[k + 1], col);
    full.col(j) = col;
  }
  const auto& src = *bases.front();
  std::vector<Matrix> blocks;
  for (std::size_t g = 0; g < src.num_sectors(); ++g) {
    const Index off = ix(src.sector_offset(cid(g)));
    const Index d = ix(src.sector_dimension(cid(g)));
    blocks.push_back(full.block(off, off, d, d));
  }
  return BasisChange(bases.front(), bases.back(), std::move(blocks));
}

}  // namespace

BasisChange elementary_fmove(ModelPtr model, const TreeShape& shape, int vertex, Rotation direction) {
  const RotationStep step = plan_rotation(shape, vertex, direction);
  return route_matrix(std::move(model), shape, {step}, step.target);
}

BasisChange basis_change(ModelPtr model, const TreeShape& from, const TreeShape& to, CanonicalRoute via) {
  return route_matrix(std::move(model), from, route(from, to, via), to);
}

AnyonState change_shape(const AnyonState& state, BasisPtr target) {
  const SectorBasis& src = state.basis();
  if (src.num_leaves() != target->num_leaves()) {
    throw ShapeError("cannot reshape " + std::to_string(src.num_leaves()) + " anyons into a " +
                     std::to_string(target->num_leaves()) + "-leaf shape");
  }
  if (src.model_ptr() != target->model_ptr()) throw DomainError("target basis uses a different model");
  const auto steps = route(src.shape(), target->shape());
  Vector v = state.amplitudes();
  BasisPtr cur = state.basis_ptr();
  for (std::size_t k = 0; k < steps.size(); ++k) {
    BasisPtr next = k + 1 == steps.size() ? target : enumerate_basis(src.model_ptr(), steps[k].target);
    v = apply_rotation(steps[k], *cur, *next, v);
    cur = next;
  }
  return AnyonState(target, std::move(v));
}

AnyonState change_shape(const AnyonState& state, const TreeShape& target) {
  if (state.basis().shape() == target) return state;
  if (state.basis().num_leaves() != target.num_leaves()) {
    throw ShapeError("cannot reshape " + std::to_string(state.basis().num_leaves()) + " anyons into " +
                     target.to_string());
  }
  return change_shape(state, enumerate_basis(state.basis().model_ptr(), target));
}

AnyonState braid_adjacent(const AnyonState& state, int leaf, BraidDirection direction) {
  const SectorBasis& basis = state.basis();
  const TreeShape& shape = basis.shape();
  if (leaf < 0 || leaf + 1 >= shape.num_leaves()) throw ShapeError("braid leaves out of range");
  const int p = shape.leaf_node(leaf);
  const int q = shape.leaf_node(leaf + 1);
  int vertex = -1;
  for (int i = 0; i < shape.num_nodes(); ++i) {
    const auto& n = shape.node(i);
    if (!n.is_leaf() && n.left == p && n.right == q) vertex = i;
  }
  if (vertex < 0) {
    throw ShapeError("leaves " + std::to_string(leaf) + " and " + std::to_string(leaf + 1) +
                     " do not meet at a vertex of " + shape.to_string() + "; reshape first");
  }
  const AnyonModel& model = basis.model();
  Vector out = Vector::Zero(state.amplitudes().size());
  for (std::size_t i = 0; i < basis.size(); ++i) {
    const Complex amp = state[i];
    if (amp == 0.0) continue;
    FusionTree t = basis.tree_at(i);
    const Charge a = t.leaves[static_cast<std::size_t>(leaf)];
    const Charge b = t.leaves[static_cast<std::size_t>(leaf + 1)];
    const Charge c = node_charges(shape, t)[static_cast<std::size_t>(vertex)];
    const Complex phase =
        direction == BraidDirection::counterclockwise ? model.r_symbol(a, b, c) : std::conj(model.r_symbol(b, a, c));
    std::swap(t.leaves[static_cast<std::size_t>(leaf)], t.leaves[static_cast<std::size_t>(leaf + 1)]);
    out(ix(basis.index_of(t))) += phase * amp;
  }
  return AnyonState(state.basis_ptr(), std::move(out));
}

}  // namespace anyonqi
