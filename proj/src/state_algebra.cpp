#include "anyonqi/state_algebra.hpp"

#include "anyonqi/errors.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <functional>

namespace anyonqi {

namespace {

using Eigen::Index;

Index ix(std::size_t i) { return static_cast<Index>(i); }

void require_same_basis(const SectorBasis& a, const SectorBasis& b, const char* what) {
  if (!same_space(a, b)) throw DomainError(std::string(what) + ": operands live on different bases");
}

}  // namespace

double max_abs(const Matrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

AnyonState::AnyonState(BasisPtr basis, Vector amplitudes, double tol)
    : basis_(std::move(basis)), amps_(std::move(amplitudes)) {
  if (!basis_) throw DomainError("state needs a basis");
  if (static_cast<std::size_t>(amps_.size()) != basis_->size()) {
    throw DomainError("amplitude vector has size " + std::to_string(amps_.size()) + ", basis has " +
                      std::to_string(basis_->size()));
  }
  std::vector<double> weight(basis_->num_sectors(), 0.0);
  for (std::size_t i = 0; i < basis_->size(); ++i) weight[basis_->sector_of(i).id] += std::norm(amps_(ix(i)));
  const auto best = std::max_element(weight.begin(), weight.end());
  if (*best == 0.0) throw DomainError("zero vector is not a state");
  sector_ = Charge{static_cast<std::uint8_t>(best - weight.begin())};
  for (std::size_t g = 0; g < weight.size(); ++g) {
    if (g != sector_.id && std::sqrt(weight[g]) > tol) {
      throw CssrViolation("state superposes global charges " + basis_->model().name(sector_) + " and " +
                          basis_->model().name(Charge{static_cast<std::uint8_t>(g)}));
    }
  }
}

Complex AnyonState::amplitude(const FusionTree& tree) const { return amps_(ix(basis_->index_of(tree))); }

AnyonState ket(BasisPtr basis, std::size_t index) {
  if (!basis) throw DomainError("ket needs a basis");
  if (index >= basis->size()) throw DomainError("ket index out of range");
  Vector v = Vector::Zero(ix(basis->size()));
  v(ix(index)) = 1.0;
  return AnyonState(std::move(basis), std::move(v));
}

AnyonState ket(BasisPtr basis, const FusionTree& tree) {
  const std::size_t i = basis->index_of(tree);
  return ket(std::move(basis), i);
}

Superposition superpose(std::span<const std::pair<Complex, AnyonState>> terms) {
  if (terms.empty()) throw DomainError("superposition of no states");
  const AnyonState& first = terms.front().second;
  Vector sum = Vector::Zero(first.amplitudes().size());
  for (const auto& [w, s] : terms) {
    require_same_basis(first.basis(), s.basis(), "superpose");
    if (s.sector() != first.sector()) {
      throw CssrViolation("superposition of global charges " + first.basis().model().name(first.sector()) +
                          " and " + first.basis().model().name(s.sector()) + " is unphysical");
    }
    sum += w * s.amplitudes();
  }
  const double n = sum.norm();
  if (n == 0.0) throw DomainError("superposition vanishes");
  return {AnyonState(first.basis_ptr(), sum / n), n};
}

Superposition superpose(std::initializer_list<std::pair<Complex, AnyonState>> terms) {
  return superpose(std::span<const std::pair<Complex, AnyonState>>(terms.begin(), terms.size()));
}

BlockOperator::BlockOperator(BasisPtr basis) : basis_(std::move(basis)) {
  if (!basis_) throw DomainError("operator needs a basis");
  blocks_.resize(basis_->num_sectors());
  for (std::size_t g = 0; g < blocks_.size(); ++g) {
    const Index d = ix(basis_->sector_dimension(Charge{static_cast<std::uint8_t>(g)}));
    blocks_[g] = Matrix::Zero(d, d);
  }
}

BlockOperator BlockOperator::zero(BasisPtr basis) { return BlockOperator(std::move(basis)); }

BlockOperator BlockOperator::identity(BasisPtr basis) {
  BlockOperator op(std::move(basis));
  for (auto& b : op.blocks_) b.setIdentity();
  return op;
}

BlockOperator BlockOperator::projector(const AnyonState& psi) {
  BlockOperator op(psi.basis_ptr());
  const Index off = ix(psi.basis().sector_offset(psi.sector()));
  Matrix& b = op.blocks_[psi.sector().id];
  const Vector seg = psi.amplitudes().segment(off, b.rows());
  b = seg * seg.adjoint();
  return op;
}

BlockOperator BlockOperator::from_dense(BasisPtr basis, const Matrix& m, double tol) {
  if (!basis) throw DomainError("operator needs a basis");
  const Index n = ix(basis->size());
  if (m.rows() != n || m.cols() != n) throw DomainError("matrix size does not match basis dimension");
  if (!validate_cssr(*basis, m, tol)) throw CssrViolation("operator couples different global-charge sectors");
  BlockOperator op(basis);
  for (std::size_t g = 0; g < op.blocks_.size(); ++g) {
    const Index off = ix(basis->sector_offset(Charge{static_cast<std::uint8_t>(g)}));
    Matrix& b = op.blocks_[g];
    b = m.block(off, off, b.rows(), b.cols());
  }
  return op;
}

BlockOperator BlockOperator::from_dense(const DenseOperator& op, double tol) {
  return from_dense(op.basis, op.matrix, tol);
}

Complex BlockOperator::element(std::size_t row, std::size_t col) const {
  const Charge g = basis_->sector_of(row);
  if (basis_->sector_of(col) != g) return 0.0;
  const std::size_t off = basis_->sector_offset(g);
  return blocks_[g.id](ix(row - off), ix(col - off));
}

Matrix BlockOperator::to_dense() const {
  const Index n = ix(basis_->size());
  Matrix m = Matrix::Zero(n, n);
  for (std::size_t g = 0; g < blocks_.size(); ++g) {
    const Index off = ix(basis_->sector_offset(Charge{static_cast<std::uint8_t>(g)}));
    m.block(off, off, blocks_[g].rows(), blocks_[g].cols()) = blocks_[g];
  }
  return m;
}

BlockOperator BlockOperator::adjoint() const {
  BlockOperator out(basis_);
  for (std::size_t g = 0; g < blocks_.size(); ++g) out.blocks_[g] = blocks_[g].adjoint();
  return out;
}

Vector BlockOperator::apply(const Vector& v) const {
  if (static_cast<std::size_t>(v.size()) != basis_->size()) throw DomainError("vector size does not match basis");
  Vector out(v.size());
  for (std::size_t g = 0; g < blocks_.size(); ++g) {
    const Index off = ix(basis_->sector_offset(Charge{static_cast<std::uint8_t>(g)}));
    const Index d = blocks_[g].rows();
    out.segment(off, d) = blocks_[g] * v.segment(off, d);
  }
  return out;
}

AnyonState BlockOperator::apply(const AnyonState& psi) const {
  require_same_basis(*basis_, psi.basis(), "apply");
  return AnyonState(basis_, apply(psi.amplitudes()));
}

void BlockOperator::check_same(const BlockOperator& o) const { require_same_basis(*basis_, *o.basis_, "operator"); }

BlockOperator& BlockOperator::operator+=(const BlockOperator& o) {
  check_same(o);
  for (std::size_t g = 0; g < blocks_.size(); ++g) blocks_[g] += o.blocks_[g];
  return *this;
}

BlockOperator& BlockOperator::operator-=(const BlockOperator& o) {
  check_same(o);
  for (std::size_t g = 0; g < blocks_.size(); ++g) blocks_[g] -= o.blocks_[g];
  return *this;
}

BlockOperator& BlockOperator::operator*=(Complex s) {
  for (auto& b : blocks_) b *= s;
  return *this;
}

BlockOperator operator*(const BlockOperator& a, const BlockOperator& b) {
  a.check_same(b);
  BlockOperator out(a.basis_);
  for (std::size_t g = 0; g < out.blocks_.size(); ++g) out.blocks_[g] = a.blocks_[g] * b.blocks_[g];
  return out;
}

Complex trace(const BlockOperator& op) {
  Complex t = 0.0;
  for (std::size_t g = 0; g < op.basis().num_sectors(); ++g) {
    t += op.block(Charge{static_cast<std::uint8_t>(g)}).trace();
  }
  return t;
}

Complex trace_product(const BlockOperator& a, const BlockOperator& b) {
  require_same_basis(a.basis(), b.basis(), "trace_product");
  Complex t = 0.0;
  for (std::size_t g = 0; g < a.basis().num_sectors(); ++g) {
    const Charge c{static_cast<std::uint8_t>(g)};
    t += a.block(c).cwiseProduct(b.block(c).transpose()).sum();
  }
  return t;
}

double purity(const BlockOperator& rho) {
  Complex t = 0.0;
  for (std::size_t g = 0; g < rho.basis().num_sectors(); ++g) {
    const Matrix& b = rho.block(Charge{static_cast<std::uint8_t>(g)});
    t += (b * b).trace();
  }
  return t.real();
}

std::vector<double> spectrum(const BlockOperator& rho) {
  std::vector<double> out;
  out.reserve(rho.basis().size());
  for (std::size_t g = 0; g < rho.basis().num_sectors(); ++g) {
    const Matrix& b = rho.block(Charge{static_cast<std::uint8_t>(g)});
    if (b.rows() == 0) continue;
    const Matrix h = 0.5 * (b + b.adjoint());
    Eigen::SelfAdjointEigenSolver<Matrix> es(h, Eigen::EigenvaluesOnly);
    for (Index k = 0; k < es.eigenvalues().size(); ++k) out.push_back(es.eigenvalues()(k));
  }
  std::sort(out.begin(), out.end(), std::greater<>());
  return out;
}

double fidelity(const AnyonState& psi, const BlockOperator& rho) {
  require_same_basis(psi.basis(), rho.basis(), "fidelity");
  return psi.amplitudes().dot(rho.apply(psi.amplitudes())).real();
}

double fidelity(const AnyonState& psi, const DenseOperator& rho) {
  require_same_basis(psi.basis(), *rho.basis, "fidelity");
  return psi.amplitudes().dot(rho.matrix * psi.amplitudes()).real();
}

bool validate_cssr(const SectorBasis& basis, const Matrix& m, double tol) {
  if (static_cast<std::size_t>(m.rows()) != basis.size() || static_cast<std::size_t>(m.cols()) != basis.size()) {
    return false;
  }
  for (Index j = 0; j < m.cols(); ++j) {
    const Charge gj = basis.sector_of(static_cast<std::size_t>(j));
    for (Index i = 0; i < m.rows(); ++i) {
      if (basis.sector_of(static_cast<std::size_t>(i)) != gj && std::abs(m(i, j)) > tol) return false;
    }
  }
  return true;
}

bool validate_cssr(const DenseOperator& op, double tol) { return validate_cssr(*op.basis, op.matrix, tol); }

bool validate_cssr(const BlockOperator&, double) { return true; }

std::vector<std::string> density_violations(const BlockOperator& rho, double tol) {
  std::vector<std::string> out;
  double herm = 0.0;
  for (std::size_t g = 0; g < rho.basis().num_sectors(); ++g) {
    const Matrix& b = rho.block(Charge{static_cast<std::uint8_t>(g)});
    herm = std::max(herm, max_abs(b - b.adjoint()));
  }
  if (herm > tol) out.push_back("not self-adjoint");
  const auto spec = spectrum(rho);
  if (!spec.empty() && spec.back() < -tol) out.push_back("not positive semidefinite");
  if (std::abs(trace(rho) - 1.0) > tol) out.push_back("trace not 1");
  return out;
}

bool is_density(const BlockOperator& rho, double tol) { return density_violations(rho, tol).empty(); }

}  // namespace anyonqi
