#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace semiclass {

struct RunSettings {
  std::string model = "all";  // numeric suite filter: cp1 | torus | all
  int pMin = 2;
  int pMax = 20;
  int quadratureOrder = 0;  // 0 = per-model default
  std::uint64_t seed = 12345;
  double tolScale = 1.0;
  std::string outputDir;  // experiment CSVs land here when non-empty
};

struct CheckResult {
  bool pass = false;
  std::string residue;  // defect rendering, empty on pass
};

struct CheckDef {
  std::string id;
  std::string anchor;  // verbatim target label carried into the manifest
  std::string suite;   // "symbolic" | "numeric"
  std::function<CheckResult(const RunSettings&)> run;
};

const std::vector<CheckDef>& symbolic_checks();
const std::vector<CheckDef>& numeric_checks();
std::vector<CheckDef> all_checks();

}  // namespace semiclass
