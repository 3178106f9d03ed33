#include "anyonqi/fusion_space.hpp"

#include "anyonqi/errors.hpp"

#include <algorithm>

namespace anyonqi {

namespace {

std::vector<Charge> lookup_key(const FusionTree& t) {
  std::vector<Charge> key = t.leaves;
  key.insert(key.end(), t.internal.begin(), t.internal.end());
  return key;
}

// Every consistent labeling of the subtree at node i, as node-charge arrays
// over the whole shape (entries outside the subtree left untouched).
void enumerate_node(const AnyonModel& model, const TreeShape& shape, int i,
                    std::vector<std::vector<Charge>>& out) {
  const auto& n = shape.node(i);
  const auto all = model.charges();
  std::vector<std::vector<Charge>> result;
  if (n.is_leaf()) {
    for (Charge c : all) {
      std::vector<Charge> labels(static_cast<std::size_t>(shape.num_nodes()));
      labels[static_cast<std::size_t>(i)] = c;
      result.push_back(std::move(labels));
    }
    out = std::move(result);
    return;
  }
  std::vector<std::vector<Charge>> left, right;
  enumerate_node(model, shape, n.left, left);
  enumerate_node(model, shape, n.right, right);
  for (const auto& l : left) {
    for (const auto& r : right) {
      const Charge x = l[static_cast<std::size_t>(n.left)];
      const Charge y = r[static_cast<std::size_t>(n.right)];
      for (Charge z : model.fusion_outcomes(x, y)) {
        std::vector<Charge> labels = l;
        // The right subtree occupies a contiguous preorder range after the left one.
        for (int k = n.right; k < n.right + 2 * shape.leaf_count(n.right) - 1; ++k) {
          labels[static_cast<std::size_t>(k)] = r[static_cast<std::size_t>(k)];
        }
        labels[static_cast<std::size_t>(i)] = z;
        result.push_back(std::move(labels));
      }
    }
  }
  out = std::move(result);
}

}  // namespace

std::vector<Charge> node_charges(const TreeShape& shape, const FusionTree& tree) {
  if (static_cast<int>(tree.leaves.size()) != shape.num_leaves() ||
      static_cast<int>(tree.internal.size()) != shape.num_internal()) {
    throw DomainError("fusion tree does not match shape " + shape.to_string());
  }
  std::vector<Charge> out(static_cast<std::size_t>(shape.num_nodes()));
  for (int leaf = 0; leaf < shape.num_leaves(); ++leaf) {
    out[static_cast<std::size_t>(shape.leaf_node(leaf))] = tree.leaves[static_cast<std::size_t>(leaf)];
  }
  for (int k = 0; k < shape.num_internal(); ++k) {
    out[static_cast<std::size_t>(shape.internal_node(k))] = tree.internal[static_cast<std::size_t>(k)];
  }
  return out;
}

FusionTree tree_from_node_charges(const TreeShape& shape, std::span<const Charge> charges) {
  FusionTree t;
  t.leaves.resize(static_cast<std::size_t>(shape.num_leaves()));
  t.internal.resize(static_cast<std::size_t>(shape.num_internal()));
  for (int leaf = 0; leaf < shape.num_leaves(); ++leaf) {
    t.leaves[static_cast<std::size_t>(leaf)] = charges[static_cast<std::size_t>(shape.leaf_node(leaf))];
  }
  for (int k = 0; k < shape.num_internal(); ++k) {
    t.internal[static_cast<std::size_t>(k)] = charges[static_cast<std::size_t>(shape.internal_node(k))];
  }
  t.global = charges[0];
  return t;
}

bool is_consistent(const AnyonModel& model, const TreeShape& shape, const FusionTree& tree) {
  if (static_cast<int>(tree.leaves.size()) != shape.num_leaves() ||
      static_cast<int>(tree.internal.size()) != shape.num_internal()) {
    return false;
  }
  const auto labels = node_charges(shape, tree);
  if (labels[0] != tree.global) return false;
  for (int i = 0; i < shape.num_nodes(); ++i) {
    const auto& n = shape.node(i);
    if (n.is_leaf()) continue;
    if (!model.fuses(labels[static_cast<std::size_t>(n.left)], labels[static_cast<std::size_t>(n.right)],
                     labels[static_cast<std::size_t>(i)])) {
      return false;
    }
  }
  return true;
}

SectorBasis::SectorBasis(ModelPtr model, TreeShape shape) : model_(std::move(model)), shape_(std::move(shape)) {
  if (!model_) throw DomainError("sector basis needs a model");
  std::vector<std::vector<Charge>> labelings;
  enumerate_node(*model_, shape_, 0, labelings);
  trees_.reserve(labelings.size());
  for (const auto& l : labelings) trees_.push_back(tree_from_node_charges(shape_, l));

  std::sort(trees_.begin(), trees_.end(), [](const FusionTree& a, const FusionTree& b) {
    if (a.global != b.global) return a.global < b.global;
    if (!std::equal(a.leaves.rbegin(), a.leaves.rend(), b.leaves.rbegin(), b.leaves.rend())) {
      return std::lexicographical_compare(a.leaves.rbegin(), a.leaves.rend(), b.leaves.rbegin(),
                                          b.leaves.rend());
    }
    return a.internal < b.internal;
  });

  const std::size_t n = model_->num_charges();
  offsets_.assign(n + 1, 0);
  for (const auto& t : trees_) ++offsets_[t.global.id + 1u];
  for (std::size_t g = 0; g < n; ++g) offsets_[g + 1] += offsets_[g];
  for (std::size_t i = 0; i < trees_.size(); ++i) lookup_.emplace(lookup_key(trees_[i]), i);
}

const FusionTree& SectorBasis::tree_at(std::size_t index) const {
  if (index >= trees_.size()) {
    throw DomainError("basis index " + std::to_string(index) + " out of range (size " +
                      std::to_string(trees_.size()) + ")");
  }
  return trees_[index];
}

std::optional<std::size_t> SectorBasis::find(const FusionTree& tree) const {
  if (static_cast<int>(tree.leaves.size()) != shape_.num_leaves() ||
      static_cast<int>(tree.internal.size()) != shape_.num_internal()) {
    return std::nullopt;
  }
  const auto it = lookup_.find(lookup_key(tree));
  if (it == lookup_.end() || trees_[it->second].global != tree.global) return std::nullopt;
  return it->second;
}

std::size_t SectorBasis::index_of(const FusionTree& tree) const {
  if (auto i = find(tree)) return *i;
  if (static_cast<int>(tree.leaves.size()) != shape_.num_leaves() ||
      static_cast<int>(tree.internal.size()) != shape_.num_internal()) {
    throw DomainError("fusion tree has the wrong number of labels for shape " + shape_.to_string());
  }
  throw DomainError("fusion tree is not fusion-consistent for shape " + shape_.to_string());
}

void SectorBasis::check_charge(Charge g) const {
  if (g.id >= model_->num_charges()) {
    throw DomainError("charge index " + std::to_string(g.id) + " not in model");
  }
}

std::size_t SectorBasis::sector_dimension(Charge g) const {
  check_charge(g);
  return offsets_[g.id + 1u] - offsets_[g.id];
}

std::size_t SectorBasis::sector_offset(Charge g) const {
  check_charge(g);
  return offsets_[g.id];
}

BasisPtr enumerate_basis(ModelPtr model, TreeShape shape) {
  return std::make_shared<const SectorBasis>(std::move(model), std::move(shape));
}

std::size_t sector_dimension(const SectorBasis& basis, Charge g) { return basis.sector_dimension(g); }

bool same_space(const SectorBasis& a, const SectorBasis& b) {
  return &a == &b || (a.model_ptr() == b.model_ptr() && a.shape() == b.shape());
}

}  // namespace anyonqi
