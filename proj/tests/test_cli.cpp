#include "cli.hpp"
#include "support.hpp"

#include "anyonqi/bipartition.hpp"

#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace testing_support;
using anyonqi::cli::run_cli;
using json = nlohmann::json;

namespace {

const std::string kRoot = ANYONQI_SOURCE_DIR;

std::string state_path(const std::string& name) { return kRoot + "/data/states/" + name + ".state"; }

std::string slurp(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  REQUIRE_MESSAGE(f.good(), "missing " << path);
  std::ostringstream s;
  s << f.rdbuf();
  return s.str();
}

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

void check_golden(const std::vector<std::string>& args, const std::string& golden) {
  const Run r = run(args);
  REQUIRE(r.code == 0);
  CHECK(r.out == slurp(kRoot + "/tests/golden/" + golden));
}

// Rebuilds an operator from JSON entries through the label parser.
Matrix matrix_from_json(const json& entries, const SectorBasis& basis) {
  const auto n = static_cast<Eigen::Index>(basis.size());
  Matrix m = Matrix::Zero(n, n);
  for (const auto& e : entries) {
    const auto i = static_cast<Eigen::Index>(parse_basis_label(basis, e["row"].get<std::string>()));
    const auto j = static_cast<Eigen::Index>(parse_basis_label(basis, e["col"].get<std::string>()));
    m(i, j) = Complex(e["re"].get<double>(), e["im"].get<double>());
  }
  return m;
}

}  // namespace

TEST_CASE("golden outputs") {
  check_golden({"basis", "--n", "2"}, "basis_n2.txt");
  check_golden({"--format", "json", "basis", "--n", "2"}, "basis_n2.json");
  check_golden({"dims"}, "dims.txt");
  check_golden({"marginals", "--state", state_path("ambiguity")}, "marginals_ambiguity.txt");
  check_golden({"--format", "json", "marginals", "--state", state_path("asymmetric_resource")},
               "marginals_asymmetric.json");
  check_golden({"--format", "json", "correlations", "--state", state_path("ambiguity")}, "correlations_ambiguity.json");
  check_golden({"--format", "json", "teleport", "--scenario", "main-text", "--direction", "ab"},
               "teleport_main_ab.json");
  check_golden({"teleport", "--scenario", "main-text", "--direction", "ba", "--samples", "50"}, "teleport_main_ba.txt");
  check_golden({"verify", "--suite", "dims"}, "verify_dims.txt");
}

TEST_CASE("repeated runs are byte identical") {
  const std::vector<std::string> args{"--seed", "7", "--format", "json", "teleport", "--direction", "ba", "--samples", "20"};
  CHECK(run(args).out == run(args).out);
}

TEST_CASE("basis listing sizes") {
  const Run two = run({"basis", "--n", "2"});
  CHECK(std::count(two.out.begin(), two.out.end(), '\n') == 5);
  const Run four = run({"basis", "--n", "4"});
  CHECK(std::count(four.out.begin(), four.out.end(), '\n') == 34);
  const Run shaped = run({"--format", "json", "basis", "--n", "4", "--shape", "((0 1)(2 3))"});
  REQUIRE(shaped.code == 0);
  const json j = json::parse(shaped.out);
  CHECK(j["size"] == 34);
  CHECK(j["trees"][0]["label"] == "(e,e),(e,e);e,e;e");
}

TEST_CASE("usage errors exit with 2") {
  CHECK(run({"basis", "--n", "0"}).code == 2);
  CHECK(run({"basis", "--n", "11"}).code == 2);
  CHECK(run({}).code == 2);
  CHECK(run({"--format", "xml", "dims"}).code == 2);
  CHECK(run({"teleport", "--direction", "up"}).code == 2);
  CHECK(run({"teleport", "--alpha", "abc"}).code == 2);
  CHECK(run({"marginals", "--state", state_path("ambiguity"), "--split", "2"}).code == 2);
  const Run r = run({"--help"});
  CHECK(r.code == 0);
  CHECK(r.out.find("teleport") != std::string::npos);
}

TEST_CASE("domain errors exit with 1 and go to stderr") {
  const Run missing = run({"marginals", "--state", kRoot + "/no/such/file.state"});
  CHECK(missing.code == 1);
  CHECK(missing.out.empty());
  CHECK(missing.err.find("cannot open") != std::string::npos);
  CHECK(run({"teleport", "--alpha", "1", "--beta", "1"}).code == 1);
  CHECK(run({"basis", "--n", "3", "--shape", "((0 1)(2 3))"}).code == 1);
}

TEST_CASE("verify reports failure for a corrupted model") {
  const Run r = run({"verify", "--suite", "model", "--test-hook", "corrupt-model"});
  CHECK(r.code == 1);
  CHECK(r.out.rfind("FAIL model", 0) == 0);
  CHECK(r.err.find("verify runtime") != std::string::npos);
  CHECK(run({"verify", "--suite", "model"}).code == 0);
}

TEST_CASE("teleport accepts complex message forms") {
  const std::string h = "0.7071067811865476";
  for (const auto& beta : {"0," + h, h + "@1.5707963267948966"}) {
    const Run r = run({"--format", "json", "teleport", "--alpha", h, "--beta", beta});
    REQUIRE(r.code == 0);
    const json j = json::parse(r.out);
    CHECK(j["message"]["beta"][1].get<double>() == doctest::Approx(std::stod(h)).epsilon(1e-15));
    CHECK(j["average_fidelity"].get<double>() == doctest::Approx(1.0).epsilon(1e-10));
  }
}

TEST_CASE("appendix scenarios through the CLI") {
  const json d2 = json::parse(
      run({"--format", "json", "teleport", "--scenario", "appendix-d2-asymmetric", "--direction", "ba"}).out);
  CHECK(d2["click_probability"].get<double>() == doctest::Approx(0.5).epsilon(1e-12));
  const json reach =
      json::parse(run({"--format", "json", "teleport", "--direction", "ba", "--samples", "30"}).out)["reachability"];
  CHECK(reach["within_tolerance"] == true);
  CHECK(reach["pvm_samples"] == 30);
}

TEST_CASE("marginals split reshapes the state") {
  const Run r = run({"--format", "json", "marginals", "--state", state_path("main_resource"), "--split", "1"});
  REQUIRE(r.code == 0);
  const json j = json::parse(r.out);
  CHECK(j["split"] == 1);
  CHECK(j["shape"] == "(0 ((1 2) 3))" );
}

TEST_CASE("JSON operators round-trip through the label parser") {
  const Run r = run({"--format", "json", "marginals", "--state", state_path("asymmetric_resource")});
  REQUIRE(r.code == 0);
  const json j = json::parse(r.out);
  const AnyonState psi = load_state(state_path("asymmetric_resource"), shared_fibonacci());
  const Bipartition bip(psi.basis_ptr(), 2);
  const Matrix a = partial_trace(psi, bip, Side::B).to_dense();
  const Matrix b = partial_trace(psi, bip, Side::A).to_dense();
  CHECK((matrix_from_json(j["rho_a"], *bip.subsystem(Side::A)) - a).cwiseAbs().maxCoeff() == 0.0);
  CHECK((matrix_from_json(j["rho_b"], *bip.subsystem(Side::B)) - b).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("--out writes the report to a file") {
  const auto path = std::filesystem::temp_directory_path() / "anyonqi_cli_out.txt";
  const Run r = run({"--out", path.string(), "basis", "--n", "2"});
  CHECK(r.code == 0);
  CHECK(r.out.empty());
  CHECK(slurp(path.string()) == slurp(kRoot + "/tests/golden/basis_n2.txt"));
  std::filesystem::remove(path);
}
