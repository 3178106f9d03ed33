#include "anyonqi/correlations.hpp"

#include "anyonqi/errors.hpp"
#include "anyonqi/sampling.hpp"

#include <algorithm>
#include <functional>

namespace anyonqi {

namespace {

using Eigen::Index;

Charge cid(std::size_t g) { return Charge{static_cast<std::uint8_t>(g)}; }

const AnyonModel& require_two_anyon_fibonacci(const AnyonState& psi) {
  const SectorBasis& b = psi.basis();
  if (b.num_leaves() != 2) throw DomainError("two-anyon state required, got " + std::to_string(b.num_leaves()));
  const AnyonModel& m = b.model();
  if (m.num_charges() != 2 || !m.find("e") || !m.find("tau")) {
    throw DomainError("two-anyon classification needs the Fibonacci charges e and tau");
  }
  return m;
}

}  // namespace

std::vector<BlockOperator> local_observable_basis(const BasisPtr& subsystem) {
  std::vector<BlockOperator> out;
  for (std::size_t g = 0; g < subsystem->num_sectors(); ++g) {
    const Index d = static_cast<Index>(subsystem->sector_dimension(cid(g)));
    for (Index i = 0; i < d; ++i) {
      BlockOperator o = BlockOperator::zero(subsystem);
      o.block(cid(g))(i, i) = 1.0;
      out.push_back(std::move(o));
    }
    for (Index i = 0; i < d; ++i) {
      for (Index j = i + 1; j < d; ++j) {
        BlockOperator sym = BlockOperator::zero(subsystem);
        sym.block(cid(g))(i, j) = 1.0;
        sym.block(cid(g))(j, i) = 1.0;
        out.push_back(std::move(sym));
        BlockOperator asym = BlockOperator::zero(subsystem);
        asym.block(cid(g))(i, j) = Complex(0.0, -1.0);
        asym.block(cid(g))(j, i) = Complex(0.0, 1.0);
        out.push_back(std::move(asym));
      }
    }
  }
  return out;
}

double correlation_defect(const BlockOperator& rho, const Bipartition& bip, const BlockOperator& o_a,
                          const BlockOperator& o_b) {
  const auto rho_a = partial_trace(rho, bip, Side::B);
  const auto rho_b = partial_trace(rho, bip, Side::A);
  const Complex joint = trace(embed_local(o_a, bip, Side::A) * embed_local(o_b, bip, Side::B) * rho);
  return (joint - trace(o_a * rho_a) * trace(o_b * rho_b)).real();
}

Eigen::MatrixXd correlation_matrix(const BlockOperator& rho, const Bipartition& bip) {
  const auto basis_a = local_observable_basis(bip.subsystem(Side::A));
  const auto basis_b = local_observable_basis(bip.subsystem(Side::B));
  const auto rho_a = partial_trace(rho, bip, Side::B);
  const auto rho_b = partial_trace(rho, bip, Side::A);
  std::vector<BlockOperator> big_a, big_b;
  std::vector<double> mean_a, mean_b;
  for (const auto& o : basis_a) {
    big_a.push_back(embed_local(o, bip, Side::A) * rho);
    mean_a.push_back(trace(o * rho_a).real());
  }
  for (const auto& o : basis_b) {
    big_b.push_back(embed_local(o, bip, Side::B));
    mean_b.push_back(trace(o * rho_b).real());
  }
  Eigen::MatrixXd out(static_cast<Index>(basis_a.size()), static_cast<Index>(basis_b.size()));
  const Index na = out.rows(), nb = out.cols();
  // Local operators on A and B commute once embedded, so O_B O_A rho = O_A O_B rho.
#pragma omp parallel for schedule(dynamic)
  for (Index i = 0; i < na; ++i) {
    for (Index j = 0; j < nb; ++j) {
      const double joint = trace_product(big_b[static_cast<std::size_t>(j)], big_a[static_cast<std::size_t>(i)]).real();
      out(i, j) = joint - mean_a[static_cast<std::size_t>(i)] * mean_b[static_cast<std::size_t>(j)];
    }
  }
  return out;
}

bool same_spectra(std::vector<double> a, std::vector<double> b, double tol) {
  const std::size_t n = std::max(a.size(), b.size());
  a.resize(n, 0.0);
  b.resize(n, 0.0);
  std::sort(a.begin(), a.end(), std::greater<>());
  std::sort(b.begin(), b.end(), std::greater<>());
  for (std::size_t i = 0; i < n; ++i) {
    if (std::abs(a[i] - b[i]) > tol) return false;
  }
  return true;
}

CorrelationReport is_uncorrelated(const BlockOperator& rho, const Bipartition& bip, double tol) {
  CorrelationReport r;
  const Eigen::MatrixXd v = correlation_matrix(rho, bip);
  Index wi = 0, wj = 0;
  r.max_violation = v.size() == 0 ? 0.0 : v.cwiseAbs().maxCoeff(&wi, &wj);
  r.witness_a = static_cast<std::size_t>(wi);
  r.witness_b = static_cast<std::size_t>(wj);
  r.uncorrelated = r.max_violation <= tol;
  r.spectrum_a = spectrum(partial_trace(rho, bip, Side::B));
  r.spectrum_b = spectrum(partial_trace(rho, bip, Side::A));
  r.spectra_symmetric = same_spectra(r.spectrum_a, r.spectrum_b, std::max(tol, kSpectralTol));
  return r;
}

std::string to_string(PureClass c) {
  switch (c) {
    case PureClass::product_e_alpha: return "product-e-alpha";
    case PureClass::product_e_beta: return "product-e-beta";
    case PureClass::class_1_tau: return "class-1-tau";
    case PureClass::class_2_tau: return "class-2-tau";
    case PureClass::entangled: return "entangled";
  }
  return "entangled";
}

bool is_uncorrelated_class(PureClass c) { return c != PureClass::entangled; }

TwoAnyonCoefficients two_anyon_coefficients(const AnyonState& psi) {
  const AnyonModel& m = require_two_anyon_fibonacci(psi);
  const Charge e = m.charge("e"), t = m.charge("tau");
  const SectorBasis& b = psi.basis();
  auto amp = [&](Charge x, Charge y, Charge g) { return psi[b.index_of(FusionTree{{x, y}, {g}, g})]; };
  return {amp(e, e, e), amp(t, t, e), amp(t, e, t), amp(e, t, t), amp(t, t, t)};
}

PureClassLabel classify_pure_2anyon(const AnyonState& psi, double tol) {
  const auto c = two_anyon_coefficients(psi);
  const AnyonModel& m = psi.basis().model();
  if (psi.sector() == m.charge("e")) {
    if (std::abs(c.beta_e) < tol) return {psi.sector(), PureClass::product_e_alpha};
    if (std::abs(c.alpha_e) < tol) return {psi.sector(), PureClass::product_e_beta};
    return {psi.sector(), PureClass::entangled};
  }
  if (std::abs(c.alpha_tau) < tol) return {psi.sector(), PureClass::class_1_tau};
  if (std::abs(c.beta_tau) < tol) return {psi.sector(), PureClass::class_2_tau};
  return {psi.sector(), PureClass::entangled};
}

MaximalEntanglement is_maximally_entangled_2anyon(const AnyonState& psi, double tol) {
  const auto c = two_anyon_coefficients(psi);
  const Bipartition bip(psi.basis_ptr());
  const Matrix half = Matrix::Identity(2, 2) * 0.5;
  MaximalEntanglement out;
  out.maximal = max_abs(partial_trace(psi, bip, Side::B).to_dense() - half) <= tol &&
                max_abs(partial_trace(psi, bip, Side::A).to_dense() - half) <= tol;
  if (out.maximal && psi.sector() == psi.basis().model().charge("tau") && std::abs(c.gamma_tau) <= tol) {
    out.phase = std::arg(c.alpha_tau / c.beta_tau);
  }
  return out;
}

bool local_unitary_orbit_check(const AnyonState& psi, int samples, std::uint64_t seed) {
  if (psi.basis().num_leaves() != 2) throw DomainError("local unitary orbit check needs a two-anyon state");
  const Bipartition bip(psi.basis_ptr());
  const Eigen::ArrayXd moduli = psi.amplitudes().cwiseAbs().array();
  bool ok = true;
  for (int k = 0; k < samples; ++k) {
    Rng rng = task_rng(seed, static_cast<std::uint64_t>(k));
    const auto u = embed_local(random_block_unitary(bip.subsystem(Side::A), rng), bip, Side::A);
    const auto v = embed_local(random_block_unitary(bip.subsystem(Side::B), rng), bip, Side::B);
    const Vector out = (u * v).apply(psi.amplitudes());
    ok = ok && (out.cwiseAbs().array() - moduli).abs().maxCoeff() <= 1e-12;
  }
  return ok;
}

}  // namespace anyonqi
