#include "anyonqi/sampling.hpp"

#include "anyonqi/errors.hpp"

#include <Eigen/QR>

namespace anyonqi {

namespace {

using Eigen::Index;

Matrix gaussian(Rng& rng, Index rows, Index cols) {
  std::normal_distribution<double> n(0.0, 1.0);
  Matrix m(rows, cols);
  for (Index j = 0; j < cols; ++j) {
    for (Index i = 0; i < rows; ++i) {
      const double re = n(rng);
      const double im = n(rng);
      m(i, j) = Complex(re, im);
    }
  }
  return m;
}

Charge cid(std::size_t g) { return Charge{static_cast<std::uint8_t>(g)}; }

}  // namespace

Rng task_rng(std::uint64_t master, std::uint64_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(master), static_cast<std::uint32_t>(master >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
  return Rng(seq);
}

Vector random_unit_vector(Rng& rng, std::size_t n) {
  Vector v = gaussian(rng, static_cast<Index>(n), 1).col(0);
  return v / v.norm();
}

Matrix haar_unitary(Rng& rng, std::size_t n) {
  const Index d = static_cast<Index>(n);
  if (d == 0) return Matrix(0, 0);
  Eigen::HouseholderQR<Matrix> qr(gaussian(rng, d, d));
  Matrix q = qr.householderQ();
  const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  // Fix the phase of each column so the distribution is Haar.
  for (Index k = 0; k < d; ++k) {
    const Complex rk = r(k, k);
    if (std::abs(rk) > 0.0) q.col(k) *= rk / std::abs(rk);
  }
  return q;
}

AnyonState random_state(BasisPtr basis, Charge sector, Rng& rng) {
  const std::size_t d = basis->sector_dimension(sector);
  if (d == 0) throw DomainError("sector " + basis->model().name(sector) + " is empty");
  Vector v = Vector::Zero(static_cast<Index>(basis->size()));
  v.segment(static_cast<Index>(basis->sector_offset(sector)), static_cast<Index>(d)) = random_unit_vector(rng, d);
  return AnyonState(std::move(basis), std::move(v));
}

AnyonState random_state(BasisPtr basis, Rng& rng) {
  std::vector<Charge> nonempty;
  for (std::size_t g = 0; g < basis->num_sectors(); ++g) {
    if (basis->sector_dimension(cid(g)) > 0) nonempty.push_back(cid(g));
  }
  std::uniform_int_distribution<std::size_t> pick(0, nonempty.size() - 1);
  const Charge g = nonempty[pick(rng)];
  return random_state(std::move(basis), g, rng);
}

BlockOperator random_density(BasisPtr basis, Rng& rng) {
  BlockOperator rho = BlockOperator::zero(basis);
  for (std::size_t g = 0; g < basis->num_sectors(); ++g) {
    Matrix& b = rho.block(cid(g));
    if (b.rows() == 0) continue;
    const Matrix w = gaussian(rng, b.rows(), b.rows());
    b = w * w.adjoint();
  }
  const double t = trace(rho).real();
  return rho * Complex(1.0 / t);
}

BlockOperator random_hermitian(BasisPtr basis, Rng& rng) {
  BlockOperator h = BlockOperator::zero(basis);
  for (std::size_t g = 0; g < basis->num_sectors(); ++g) {
    Matrix& b = h.block(cid(g));
    if (b.rows() == 0) continue;
    const Matrix w = gaussian(rng, b.rows(), b.rows());
    b = 0.5 * (w + w.adjoint());
  }
  return h;
}

BlockOperator random_block_unitary(BasisPtr basis, Rng& rng) {
  BlockOperator u = BlockOperator::zero(basis);
  for (std::size_t g = 0; g < basis->num_sectors(); ++g) {
    Matrix& b = u.block(cid(g));
    b = haar_unitary(rng, static_cast<std::size_t>(b.rows()));
  }
  return u;
}

}  // namespace anyonqi
