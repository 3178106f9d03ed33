#pragma once

#include "anyonqi/state_algebra.hpp"

#include <vector>

namespace anyonqi {

enum class Rotation {
  right,  // ((X Y)_d Z)_g -> (X (Y Z)_f)_g, coefficients [F^{xyz}_g]_{df}
  left,   // (X (Y Z)_f)_g -> ((X Y)_d Z)_g, coefficients conj([F^{xyz}_g]_{df})
};

/// One tree rotation, located by the preorder index of its top vertex.
struct RotationStep {
  TreeShape source;
  TreeShape target;
  int vertex = 0;
  Rotation direction = Rotation::right;
  // Position in `target` of each node of `source`.
  std::vector<int> node_map;
  // Source node whose charge is replaced (the inner vertex).
  int inner = 0;
};

// Throws ShapeError when the rotation does not apply at `vertex`.
RotationStep plan_rotation(const TreeShape& shape, int vertex, Rotation direction);

/// Rotations taking `shape` to the left comb, or to the right comb.
std::vector<RotationStep> route_to_left_comb(const TreeShape& shape);
std::vector<RotationStep> route_to_right_comb(const TreeShape& shape);
// The inverse rotations of `route`, in reverse order.
std::vector<RotationStep> invert_route(const std::vector<RotationStep>& route);

enum class CanonicalRoute { left_comb, right_comb };
std::vector<RotationStep> route(const TreeShape& from, const TreeShape& to,
                                CanonicalRoute via = CanonicalRoute::left_comb);

/// Unitary between two bases of the same leaves, stored per global-charge
/// sector. Sector offsets and dimensions agree between bases of one model,
/// so each block is square.
class BasisChange {
 public:
  BasisChange(BasisPtr source, BasisPtr target, std::vector<Matrix> blocks);

  const SectorBasis& source() const { return *source_; }
  const SectorBasis& target() const { return *target_; }
  const BasisPtr& source_ptr() const { return source_; }
  const BasisPtr& target_ptr() const { return target_; }
  const Matrix& block(Charge g) const { return blocks_.at(g.id); }
  Matrix to_dense() const;

  Vector apply(const Vector& v) const;
  AnyonState apply(const AnyonState& s) const;
  BasisChange inverse() const;
  // (*this) after `first`: first.source -> this->target.
  BasisChange after(const BasisChange& first) const;
  // Largest |U^dagger U - I| over the sector blocks.
  double unitarity_residual() const;

 private:
  BasisPtr source_;
  BasisPtr target_;
  std::vector<Matrix> blocks_;
};

BasisChange elementary_fmove(ModelPtr model, const TreeShape& shape, int vertex, Rotation direction);
BasisChange basis_change(ModelPtr model, const TreeShape& from, const TreeShape& to,
                         CanonicalRoute via = CanonicalRoute::left_comb);

/// Re-expresses a state in the basis of `target` by rotating through the
/// left comb. Throws ShapeError on a leaf-count mismatch.
AnyonState change_shape(const AnyonState& state, const TreeShape& target);
AnyonState change_shape(const AnyonState& state, BasisPtr target);

// Applies one rotation to amplitude vectors over `src`, giving vectors over `dst`.
Vector apply_rotation(const RotationStep& step, const SectorBasis& src, const SectorBasis& dst, const Vector& v);

enum class BraidDirection { counterclockwise, clockwise };

/// Exchanges leaves `leaf` and `leaf + 1`, which must be the two children of
/// one vertex. Counterclockwise multiplies by R^{ab}_c, clockwise by
/// conj(R^{ba}_c), so the two directions are inverse to each other.
AnyonState braid_adjacent(const AnyonState& state, int leaf, BraidDirection direction);

}  // namespace anyonqi
