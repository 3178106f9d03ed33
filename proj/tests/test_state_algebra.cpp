#include "support.hpp"

#include "anyonqi/errors.hpp"
#include "anyonqi/sampling.hpp"

#include <sstream>

using namespace anyonqi;
using namespace testing_support;
using fib::e;
using fib::tau;

namespace {

const double s2 = 1.0 / std::sqrt(2.0);

AnyonState ambiguous_state() {
  const auto b = basis_of(2);
  return state_of(b, {{s2, "e,tau;tau"}, {s2, "tau,tau;tau"}});
}

BlockOperator diag_op(const BasisPtr& b, std::vector<Complex> d) {
  Matrix m = Matrix::Zero(static_cast<Eigen::Index>(d.size()), static_cast<Eigen::Index>(d.size()));
  for (std::size_t i = 0; i < d.size(); ++i) m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) = d[i];
  return BlockOperator::from_dense(b, m);
}

std::vector<double> sorted_desc(std::vector<double> v) {
  std::sort(v.begin(), v.end(), std::greater<>());
  return v;
}

void check_spectrum(const std::vector<double>& got, std::vector<double> want, double tol) {
  want = sorted_desc(want);
  REQUIRE(got.size() == want.size());
  for (std::size_t i = 0; i < got.size(); ++i) CHECK(std::abs(got[i] - want[i]) <= tol);
}

}  // namespace

TEST_CASE("kets and superpositions") {
  const auto psi = ambiguous_state();
  CHECK(psi.sector() == tau);
  CHECK(psi.is_normalized());
  CHECK(std::abs(psi[3] - s2) < 1e-15);
  CHECK(std::abs(psi[4] - s2) < 1e-15);

  const auto b = basis_of(2);
  const auto sum = superpose({{1.0, ket(b, idx(b, "e,tau;tau"))}, {1.0, ket(b, idx(b, "tau,tau;tau"))}});
  CHECK(std::abs(sum.norm - std::sqrt(2.0)) < 1e-15);
  CHECK((sum.state.amplitudes() - psi.amplitudes()).norm() < 1e-15);

  CHECK_THROWS_AS(superpose({{1.0, ket(b, idx(b, "e,e;e"))}, {1.0, ket(b, idx(b, "tau,e;tau"))}}), CssrViolation);
  CHECK_THROWS_AS(superpose({{1.0, ket(b, 0)}, {-1.0, ket(b, 0)}}), DomainError);

  const auto one = enumerate_basis(shared_fibonacci(), TreeShape::single());
  const auto t = ket(one, FusionTree{{tau}, {}, tau});
  CHECK(t.sector() == tau);
  CHECK(t[1] == Complex(1.0));
  CHECK(t[0] == Complex(0.0));
}

TEST_CASE("states spanning two sectors are rejected") {
  const auto b = basis_of(2);
  Vector v = Vector::Zero(5);
  v(0) = s2;
  v(2) = s2;
  CHECK_THROWS_AS(AnyonState(b, v), CssrViolation);
  CHECK_THROWS_AS(AnyonState(b, Vector::Zero(5)), DomainError);
  CHECK_THROWS_AS(AnyonState(b, Vector::Zero(4)), DomainError);
}

TEST_CASE("embedding a one-anyon diagonal unitary") {
  const auto ab = basis_of(2);
  const Bipartition bip(ab, 1);
  const double ph = 0.37, eta = -1.21;
  const auto u = diag_op(bip.subsystem(Side::A), {std::polar(1.0, ph), std::polar(1.0, eta)});
  const Matrix big = embed_local(u, bip, Side::A).to_dense();
  const std::vector<double> want{ph, eta, eta, ph, eta};
  Matrix expected = Matrix::Zero(5, 5);
  for (int i = 0; i < 5; ++i) expected(i, i) = std::polar(1.0, want[static_cast<std::size_t>(i)]);
  CHECK(max_abs(big - expected) < 1e-15);
  CHECK(validate_cssr(*ab, big, 1e-12));
}

TEST_CASE("identity embeds to identity") {
  for (const char* shape : {"((0 1)(2 3))", "(((0 1) 2)((3 4) 5))", "(0 ((1 2) 3))"}) {
    const auto ab = basis_of(shape);
    const Bipartition bip(ab);
    for (Side s : {Side::A, Side::B}) {
      const Matrix m = embed_local(BlockOperator::identity(bip.subsystem(s)), bip, s).to_dense();
      CHECK(max_abs(m - Matrix::Identity(m.rows(), m.cols())) == 0.0);
    }
  }
}

TEST_CASE("projecting A onto the vacuum in the spectra-ambiguity state") {
  const auto psi = ambiguous_state();
  const Bipartition bip(psi.basis_ptr(), 1);
  const auto p = embed_local(diag_op(bip.subsystem(Side::A), {1.0, 0.0}), bip, Side::A);
  const Vector out = p.apply(psi.amplitudes());
  CHECK(std::abs(out(3) - s2) < 1e-15);
  CHECK(std::abs(out(4)) == 0.0);
}

TEST_CASE("marginals of the spectra-ambiguity state") {
  const auto psi = ambiguous_state();
  const Bipartition bip(psi.basis_ptr());
  const auto rho_a = partial_trace(psi, bip, Side::B);
  const auto rho_b = partial_trace(psi, bip, Side::A);
  CHECK(max_abs(rho_a.to_dense() - Matrix(Eigen::Vector2cd(0.5, 0.5).asDiagonal())) < 1e-15);
  CHECK(max_abs(rho_b.to_dense() - Matrix(Eigen::Vector2cd(0.0, 1.0).asDiagonal())) < 1e-15);
  check_spectrum(spectrum(rho_a), {0.5, 0.5}, 1e-12);
  check_spectrum(spectrum(rho_b), {1.0, 0.0}, 1e-12);
  // The block kernel and the pure-state path agree.
  const auto rho = BlockOperator::projector(psi);
  CHECK(max_abs(partial_trace(rho, bip, Side::B).to_dense() - rho_a.to_dense()) < 1e-15);
  CHECK(max_abs(partial_trace(rho, bip, Side::A).to_dense() - rho_b.to_dense()) < 1e-15);
}

TEST_CASE("mixed state with pure marginals") {
  const auto b = basis_of(2);
  const auto rho = (BlockOperator::projector(ket(b, idx(b, "tau,tau;e"))) +
                    BlockOperator::projector(ket(b, idx(b, "tau,tau;tau")))) *
                   Complex(0.5);
  const Bipartition bip(b);
  const auto rho_a = partial_trace(rho, bip, Side::B);
  const auto rho_b = partial_trace(rho, bip, Side::A);
  CHECK(max_abs(rho_a.to_dense() - Matrix(Eigen::Vector2cd(0.0, 1.0).asDiagonal())) < 1e-15);
  CHECK(max_abs(rho_b.to_dense() - Matrix(Eigen::Vector2cd(0.0, 1.0).asDiagonal())) < 1e-15);
  CHECK(std::abs(purity(rho_a) - 1.0) <= 1e-10);
  CHECK(std::abs(purity(rho_b) - 1.0) <= 1e-10);
  CHECK(std::abs(purity(rho) - 0.5) <= 1e-10);
}

TEST_CASE("asymmetric four-anyon resource marginals") {
  const auto b = basis_of("((0 1)(2 3))");
  const auto psi = state_of(b, {{std::sqrt(2.0) / 2.0, "(e,e),(e,tau);e,tau;tau"},
                                {0.5, "(e,tau),(e,e);tau,e;tau"},
                                {0.5, "(tau,e),(e,tau);tau,tau;tau"}});
  const Bipartition bip(b);
  check_spectrum(spectrum(partial_trace(psi, bip, Side::B)), {0.5, 0.25, 0.25, 0.0, 0.0}, 1e-12);
  check_spectrum(spectrum(partial_trace(psi, bip, Side::A)), {0.75, 0.25, 0.0, 0.0, 0.0}, 1e-12);
}

TEST_CASE("non-grouped shapes are refused") {
  const auto b = basis_of(4);
  CHECK_THROWS_AS(Bipartition(b, 2), ShapeError);
  CHECK_NOTHROW(Bipartition(b, 3));
  CHECK_THROWS_AS(Bipartition(enumerate_basis(shared_fibonacci(), TreeShape::single())), ShapeError);
}

TEST_CASE("trace, purity, spectrum and fidelity") {
  const auto one = enumerate_basis(shared_fibonacci(), TreeShape::single());
  const auto t = BlockOperator::projector(ket(one, 1));
  CHECK(std::abs(purity(t) - 1.0) < 1e-15);
  const auto mixed = BlockOperator::identity(one) * Complex(0.5);
  CHECK(std::abs(purity(mixed) - 0.5) < 1e-15);
  CHECK(std::abs(trace(mixed) - 1.0) < 1e-15);
  check_spectrum(spectrum(mixed), {0.5, 0.5}, 1e-15);
  CHECK(std::abs(fidelity(ket(one, 1), t) - 1.0) < 1e-15);
  CHECK(std::abs(fidelity(ket(one, 0), t)) < 1e-15);
  CHECK_THROWS_AS(fidelity(ket(basis_of(2), 0), t), DomainError);
  CHECK(is_density(mixed));
  CHECK_FALSE(is_density(mixed * Complex(2.0)));
}

TEST_CASE("cSSR validation of imported matrices") {
  const auto b = basis_of(2);
  Matrix m = Matrix::Identity(5, 5);
  CHECK(validate_cssr(*b, m, 1e-12));
  m(0, 2) = 0.1;
  CHECK_FALSE(validate_cssr(*b, m, 1e-12));
  CHECK_THROWS_AS(BlockOperator::from_dense(b, m), CssrViolation);
  CHECK(validate_cssr(*b, BlockOperator::projector(ambiguous_state()).to_dense(), 1e-12));
}

TEST_CASE("partial-trace consistency with embedding") {
  for (const char* shape : {"((0 1)(2 3))", "(((0 1) 2)((3 4) 5))", "((0 1)(((2 3) 4) 5))"}) {
    const auto ab = basis_of(shape);
    const Bipartition bip(ab);
    for (int k = 0; k < 25; ++k) {
      auto rng = task_rng(100, static_cast<std::uint64_t>(k));
      const auto rho = random_density(ab, rng);
      for (Side s : {Side::A, Side::B}) {
        const Side traced = s == Side::A ? Side::B : Side::A;
        const auto o = random_hermitian(bip.subsystem(s), rng);
        const Complex lhs = trace(o * partial_trace(rho, bip, traced));
        const Complex rhs = trace(embed_local(o, bip, s) * rho);
        CHECK(std::abs(lhs - rhs) <= 1e-10);
      }
    }
  }
}

TEST_CASE("partial trace of a density is a density") {
  const auto ab = basis_of("(((0 1) 2)((3 4) 5))");
  const Bipartition bip(ab);
  for (int k = 0; k < 10; ++k) {
    auto rng = task_rng(5, static_cast<std::uint64_t>(k));
    const auto rho = random_density(ab, rng);
    for (Side s : {Side::A, Side::B}) {
      const auto r = partial_trace(rho, bip, s);
      CHECK(density_violations(r).empty());
      const auto spec = spectrum(r);
      double sum = 0.0;
      for (double x : spec) {
        CHECK(x >= -1e-10);
        CHECK(x <= 1.0 + 1e-10);
        sum += x;
      }
      CHECK(std::abs(sum - 1.0) <= 1e-10);
    }
  }
}

TEST_CASE("embedding is an algebra homomorphism") {
  const auto ab = basis_of("((0 1)((2 3) 4))");
  const Bipartition bip(ab);
  auto rng = task_rng(9, 0);
  for (Side s : {Side::A, Side::B}) {
    for (int k = 0; k < 5; ++k) {
      BlockOperator o1 = random_hermitian(bip.subsystem(s), rng) + random_block_unitary(bip.subsystem(s), rng);
      BlockOperator o2 = random_block_unitary(bip.subsystem(s), rng);
      const Matrix lhs = embed_local(o1 * o2, bip, s).to_dense();
      const Matrix rhs = (embed_local(o1, bip, s) * embed_local(o2, bip, s)).to_dense();
      CHECK(max_abs(lhs - rhs) <= 1e-12);
      CHECK(max_abs(embed_local(o1.adjoint(), bip, s).to_dense() - embed_local(o1, bip, s).adjoint().to_dense()) <= 1e-12);
    }
  }
}

TEST_CASE("parallel kernels match the serial reference") {
  for (const char* shape : {"((0 1)(2 3))", "(((0 1) 2)((3 4) 5))", "(0 (((1 2) 3) 4))"}) {
    const auto ab = basis_of(shape);
    const Bipartition bip(ab);
    auto rng = task_rng(21, 0);
    const auto rho = random_density(ab, rng);
    for (Side s : {Side::A, Side::B}) {
      CHECK(max_abs(partial_trace(rho, bip, s).to_dense() - reference::partial_trace(rho, bip, s).to_dense()) <= 1e-14);
      const auto o = random_hermitian(bip.subsystem(s), rng);
      CHECK(max_abs(embed_local(o, bip, s).to_dense() - reference::embed_local(o, bip, s).to_dense()) == 0.0);
    }
    const auto psi = random_state(ab, rng);
    for (Side s : {Side::A, Side::B}) {
      CHECK(max_abs(partial_trace(psi, bip, s).to_dense() -
                    reference::partial_trace(BlockOperator::projector(psi), bip, s).to_dense()) <= 1e-14);
    }
  }
}

TEST_CASE("purity of pure states") {
  for (int n = 1; n <= 4; ++n) {
    const auto b = basis_of(n);
    for (std::size_t i = 0; i < b->size(); ++i) CHECK(std::abs(purity(BlockOperator::projector(ket(b, i))) - 1.0) <= 1e-10);
  }
  auto rng = task_rng(1, 0);
  const auto b = basis_of(4);
  for (int k = 0; k < 50; ++k) {
    const auto psi = random_state(b, k % 2 == 0 ? e : tau, rng);
    CHECK(std::abs(purity(BlockOperator::projector(psi)) - 1.0) <= 1e-10);
  }
}

TEST_CASE("state and operator files round trip") {
  auto rng = task_rng(2, 0);
  const auto psi = random_state(basis_of("((0 1)((2 3)(4 5)))"), tau, rng);
  std::stringstream ss;
  write_state(ss, psi);
  const auto back = read_state(ss, shared_fibonacci());
  CHECK(back.basis().shape() == psi.basis().shape());
  CHECK((back.amplitudes() - psi.amplitudes()).cwiseAbs().maxCoeff() == 0.0);

  const auto rho = random_density(basis_of(3), rng);
  std::stringstream so;
  write_operator(so, rho);
  const auto op = read_operator(so, shared_fibonacci());
  CHECK(max_abs(op.matrix - rho.to_dense()) == 0.0);
}

TEST_CASE("state file parsing") {
  std::istringstream in("shape: (0 1)\ne,τ;τ : 0.7071067811865476 0\ntau,tau;tau : 0.7071067811865476 0\n");
  const auto psi = read_state(in, shared_fibonacci());
  CHECK(std::abs(psi[3] - s2) < 1e-15);
  std::istringstream bad("shape: (0 1)\ne,e;tau : 1 0\n");
  CHECK_THROWS_AS(read_state(bad, shared_fibonacci()), DomainError);
  std::istringstream cross("shape: (0 1)\ne,e;e : 1 0\ntau,e;tau : 1 0\n");
  CHECK_THROWS_AS(read_state(cross, shared_fibonacci()), CssrViolation);
  std::istringstream noshape("e,e;e : 1 0\n");
  CHECK_THROWS_AS(read_state(noshape, shared_fibonacci()), ParseError);
  std::istringstream badnum("shape: (0 1)\ne,e;e : one 0\n");
  CHECK_THROWS_AS(read_state(badnum, shared_fibonacci()), ParseError);
}

TEST_CASE("tree labels") {
  const auto b = basis_of("((0 1)(2 3))");
  const auto i = idx(b, "(tau,e),(e,tau);tau,tau;e");
  CHECK(format_tree_label(*b, i) == "(tau,e),(e,tau);tau,tau;e");
  const auto six = basis_of("((0 1)((2 3)(4 5)))");
  const auto j = idx(six, "(tau,e),((e,e),(e,tau));tau,tau,e,tau;e");
  CHECK(format_tree_label(*six, j) == "(tau,e),((e,e),(e,tau));tau,tau,e,tau;e");
  CHECK_THROWS_AS(idx(b, "tau,e;tau"), ParseError);
  CHECK_THROWS_AS(idx(b, "(tau,e),(e,x);tau,tau;e"), ParseError);
}
