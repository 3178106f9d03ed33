#include "support.hpp"

#include "anyonqi/errors.hpp"

#include <algorithm>
#include <sstream>

using namespace anyonqi;
using namespace testing_support;
using fib::e;
using fib::tau;

namespace {

bool report_has(const std::vector<std::string>& report, const std::string& needle) {
  return std::any_of(report.begin(), report.end(), [&](const std::string& s) { return s.find(needle) != std::string::npos; });
}

}  // namespace

TEST_CASE("fibonacci fusion rules") {
  const auto m = fibonacci_model();
  CHECK(m.fusion_outcomes(tau, tau) == std::vector<Charge>{e, tau});
  CHECK(m.fusion_outcomes(e, tau) == std::vector<Charge>{tau});
  CHECK(m.fusion_outcomes(tau, e) == std::vector<Charge>{tau});
  CHECK(m.fusion_outcomes(e, e) == std::vector<Charge>{e});
  CHECK(m.name(tau) == "tau");
  CHECK(m.charge("τ") == tau);
  CHECK_THROWS_AS(m.charge("sigma"), DomainError);
}

TEST_CASE("fibonacci F and R symbols") {
  const auto m = fibonacci_model();
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  CHECK(std::abs(m.f_symbol(tau, tau, tau, tau, e, e) - inv_phi) < 1e-15);
  CHECK(std::abs(m.f_symbol(tau, tau, tau, tau, tau, tau) + inv_phi) < 1e-15);
  CHECK(std::abs(m.f_symbol(tau, tau, tau, tau, e, tau) - 1.0 / std::sqrt(phi)) < 1e-15);
  CHECK(std::abs(m.f_symbol(tau, tau, tau, tau, e, e) - 0.6180339887) < 1e-10);
  CHECK(std::abs(m.r_symbol(tau, tau, e) - std::polar(1.0, -4.0 * std::numbers::pi / 5.0)) < 1e-15);
  CHECK(std::abs(m.r_symbol(tau, tau, tau) - std::polar(1.0, 3.0 * std::numbers::pi / 5.0)) < 1e-15);
  CHECK(m.r_symbol(e, tau, tau) == Complex(1.0));
  // Trivial gauge: 1 on consistent labelings, 0 otherwise.
  CHECK(m.f_symbol(e, tau, tau, e, tau, e) == Complex(1.0));
  CHECK(m.f_symbol(e, tau, tau, e, e, e) == Complex(0.0));
  CHECK(m.quantum_dim(tau) == doctest::Approx(phi));
}

TEST_CASE("fibonacci model validates") {
  const auto m = fibonacci_model();
  CHECK(validate_model(m, 1e-12).empty());
  CHECK(f_unitarity_residual(m) <= 1e-12);
  CHECK(pentagon_residual(m) <= 1e-12);
}

TEST_CASE("broken models are reported") {
  SUBCASE("zeroed F entry") {
    auto m = fibonacci_model();
    m.set_f_symbol(tau, tau, tau, tau, e, e, 0.0);
    CHECK(report_has(validate_model(m, 1e-12), "F-matrix not unitary"));
  }
  SUBCASE("vacuum not identity") {
    auto m = fibonacci_model();
    m.set_fusion(e, tau, {e});
    m.set_fusion(tau, e, {e});
    CHECK(report_has(validate_model(m, 1e-12), "vacuum not identity"));
  }
  SUBCASE("asymmetric fusion") {
    auto m = fibonacci_model();
    m.set_fusion(e, tau, {e, tau});
    CHECK(report_has(validate_model(m, 1e-12), "fusion not symmetric"));
  }
  SUBCASE("R not a phase") {
    auto m = fibonacci_model();
    m.set_r_symbol(tau, tau, e, 2.0);
    CHECK(report_has(validate_model(m, 1e-12), "R-symbol not a phase"));
  }
  SUBCASE("pentagon") {
    auto m = fibonacci_model();
    // A diagonal sign change keeps F unitary but breaks the pentagon.
    m.set_f_symbol(tau, tau, tau, tau, tau, tau, (std::sqrt(5.0) - 1.0) / 2.0);
    m.set_f_symbol(tau, tau, tau, tau, e, e, -(std::sqrt(5.0) - 1.0) / 2.0);
    const auto report = validate_model(m, 1e-12);
    CHECK(report_has(report, "pentagon violated"));
  }
}

TEST_CASE("model file round trip") {
  std::istringstream in(R"(# Fibonacci, written out
fusion tau tau -> e tau
F tau tau tau ; tau ; e e = 0.6180339887498949 0.0
F tau tau tau ; tau ; e tau = 0.7861513777574233 0.0
F tau tau tau ; tau ; tau e = 0.7861513777574233 0.0
F tau tau tau ; tau ; tau tau = -0.6180339887498949 0.0
R tau tau ; e = -0.8090169943749475 -0.5877852522924731
R tau tau ; tau = -0.30901699437494734 0.9510565162951536
dim τ 1.618033988749895
)");
  const auto m = parse_model(in);
  REQUIRE(m.num_charges() == 2);
  CHECK(m.name(m.vacuum()) == "e");
  CHECK(validate_model(m, 1e-12).empty());
  const auto ref = fibonacci_model();
  for (Charge g : {e, tau})
    for (Charge d : {e, tau})
      for (Charge f : {e, tau}) CHECK(std::abs(m.f_symbol(tau, tau, tau, g, d, f) - ref.f_symbol(tau, tau, tau, g, d, f)) < 1e-15);
  CHECK(std::abs(m.r_symbol(tau, tau, e) - ref.r_symbol(tau, tau, e)) < 1e-15);
}

TEST_CASE("model file errors") {
  std::istringstream bad_kw("charges e tau\nfoo bar\n");
  CHECK_THROWS_AS(parse_model(bad_kw), ParseError);
  std::istringstream bad_f("charges e tau\nfusion tau tau -> e tau\nF tau tau tau ; tau ; e = 1 0\n");
  CHECK_THROWS_AS(parse_model(bad_f), ParseError);
  std::istringstream unknown("charges e tau\nfusion tau sigma -> e\n");
  CHECK_THROWS_AS(parse_model(unknown), ParseError);
}
