#pragma once

#include <string>

#include "kirchhoff/lemmas.hpp"
#include "kirchhoff/nehari.hpp"
#include "kirchhoff/solver.hpp"

#include "json.hpp"

namespace kirchhoff {

// CSV writers.  Field files start with a '#' header recording the grid so
// they can be read back; numeric columns use 17 significant digits.
void write_field_csv(const std::string& path, const ScalarField& u);
ScalarField read_field_csv(const std::string& path);

void write_trace_csv(const std::string& path, const SolveReport& report);
void write_surface_csv(const std::string& path, const SurfaceScan& scan);

// JSON report builders; keys come out in insertion order so reruns diff
// cleanly.  Every report carries the library version and the config hash.
nlohmann::ordered_json hypotheses_json(const HypothesisReport& report,
                                       const std::string& cfg_hash);
nlohmann::ordered_json lemmas_json(const LemmaSuiteResult& suite,
                                   const std::string& cfg_hash);
nlohmann::ordered_json solve_json(const SolveReport& report,
                                  const AuditReport& audit,
                                  const std::string& cfg_hash);

void write_json(const std::string& path, const nlohmann::ordered_json& doc);

}  // namespace kirchhoff
