#pragma once

#include "anyonqi/anyon_model.hpp"

#include <json.hpp>

#include <cstdint>
#include <string>
#include <vector>

namespace anyonqi::cli {

struct VerifyOptions {
  ModelPtr model;
  std::uint64_t seed = 42;
  double tol = 1e-10;
};

struct SuiteResult {
  std::string name;
  bool passed = true;
  std::size_t checks = 0;
  double max_residual = 0.0;
  std::vector<std::string> notes;  // extra text lines
  nlohmann::ordered_json extra = nlohmann::ordered_json::object();
};

std::vector<std::string> suite_names();
// Throws DomainError for unknown suites.
SuiteResult run_suite(const std::string& name, const VerifyOptions& opts);

// Fibonacci model with one F-symbol perturbed; the model suite must reject it.
ModelPtr corrupted_fibonacci();

}  // namespace anyonqi::cli
