#pragma once

#include "anyonqi/anyon_model.hpp"
#include "anyonqi/tree_shape.hpp"

#include <map>
#include <memory>
#include <optional>
#include <span>
#include <vector>

namespace anyonqi {

/// One labeling of a TreeShape: a basis vector of the fusion space.
///
/// `internal` lists the charge of each internal node in the shape's preorder,
/// so `internal[0]` is the root (and equals `global`) whenever N >= 2. For a
/// single anyon `internal` is empty and `global` equals the leaf charge.
struct FusionTree {
  std::vector<Charge> leaves;
  std::vector<Charge> internal;
  Charge global;

  friend bool operator==(const FusionTree&, const FusionTree&) = default;
};

/// Charge at every node of `shape`, in node (preorder) order.
std::vector<Charge> node_charges(const TreeShape& shape, const FusionTree& tree);
FusionTree tree_from_node_charges(const TreeShape& shape, std::span<const Charge> charges);

/// True iff every vertex (x, y) -> z of the labeled shape has z in x * y.
bool is_consistent(const AnyonModel& model, const TreeShape& shape, const FusionTree& tree);

/// Orthonormal fusion-tree basis of one shape, grouped into global-charge
/// sectors. Sectors follow the model's charge order (vacuum first for the
/// built-in models); inside a sector trees are ordered by leaf charges read
/// from the last leaf to the first, then by internal charges. For two anyons
/// this gives |e,e;e>, |tau,tau;e>, |tau,e;tau>, |e,tau;tau>, |tau,tau;tau>.
class SectorBasis {
 public:
  SectorBasis(ModelPtr model, TreeShape shape);

  const AnyonModel& model() const { return *model_; }
  const ModelPtr& model_ptr() const { return model_; }
  const TreeShape& shape() const { return shape_; }
  int num_leaves() const { return shape_.num_leaves(); }

  std::size_t size() const { return trees_.size(); }
  std::span<const FusionTree> trees() const { return trees_; }

  // Throws DomainError when out of range.
  const FusionTree& tree_at(std::size_t index) const;
  // Throws DomainError for trees that are fusion-inconsistent or of another shape.
  std::size_t index_of(const FusionTree& tree) const;
  std::optional<std::size_t> find(const FusionTree& tree) const;

  std::size_t sector_dimension(Charge g) const;
  // Offset of sector g inside the flat index range.
  std::size_t sector_offset(Charge g) const;
  Charge sector_of(std::size_t index) const { return tree_at(index).global; }
  std::size_t num_sectors() const { return offsets_.size() - 1; }

 private:
  void check_charge(Charge g) const;

  ModelPtr model_;
  TreeShape shape_;
  std::vector<FusionTree> trees_;
  std::vector<std::size_t> offsets_;  // per charge id, plus end
  std::map<std::vector<Charge>, std::size_t> lookup_;
};

using BasisPtr = std::shared_ptr<const SectorBasis>;

BasisPtr enumerate_basis(ModelPtr model, TreeShape shape);
std::size_t sector_dimension(const SectorBasis& basis, Charge g);

/// Same model instance and same shape: indices of the two bases coincide.
bool same_space(const SectorBasis& a, const SectorBasis& b);

}  // namespace anyonqi
