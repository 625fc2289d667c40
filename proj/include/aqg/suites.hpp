#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "aqg/presentation.hpp"
#include "aqg/report.hpp"

namespace aqg {

struct VerifyOptions {
    std::string example = "group:C[Z2]";   // token, or "file:<path>" display name
    mpq_class q = mpq_class(1, 4);
    int degree = 3;
    double tolerance = 1e-9;
    std::uint64_t seed = 20230426;
    std::vector<double> t_samples = {0.5, 1.0};
    bool exact_polar = false;
    bool pentagon = false;
    std::vector<std::string> suites = {"all"};
};

struct RunResult {
    ReportEnvironment env;
    std::vector<SuiteReport> suites;
    bool passed = true;
};

/// Runs the requested named suites (axioms, modular, duality, gns,
/// appendix; "all" expands to the full list) in dependency order, sharing
/// the derived modular and dual data between them.
RunResult run_suites(std::shared_ptr<Presentation> pres, const VerifyOptions& opt);

/// One verified statement of the theory and the check ids that cover it.
struct CatalogueEntry {
    std::string proposition;           // stable proposition id
    std::string statement;             // the identity, as a formula
    std::vector<std::string> check_ids;
};

const std::vector<CatalogueEntry>& proposition_catalogue();

/// Check ids every full run can emit; the audit validates the catalogue
/// against this set.
std::vector<std::string> all_known_check_ids();

/// Propositions with no registered check id (must be empty) and catalogue
/// references to unknown check ids (must also be empty).
struct CoverageAudit {
    std::vector<std::string> uncovered_propositions;
    std::vector<std::string> unknown_check_ids;
    bool clean() const { return uncovered_propositions.empty() && unknown_check_ids.empty(); }
};
CoverageAudit run_coverage_audit();

}  // namespace aqg
