#pragma once

#include <chrono>
#include <cstdint>
#include <deque>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "aqg/presentation.hpp"

namespace aqg {

enum class CheckStatus { Pass, Fail, Info };

struct CheckRecord {
    std::string id;        // stable check id, e.g. "gns.modular-operator-formulas"
    std::string anchor;    // the identity being verified, as a formula
    std::string tier;      // "exact", "float" or "mixed"
    CheckStatus status = CheckStatus::Pass;
    std::string residual = "0";
    std::string witness;
    std::string note;
    double wall_ms = 0;
};

struct ReportEnvironment {
    std::string example;
    std::string q;          // exact scalar string, empty when not applicable
    int degree = 0;
    double tolerance = 1e-9;
    std::uint64_t seed = 0;
    std::vector<double> t_samples;
};

class Recorder;

/// Accumulator for one check id. A check may aggregate many instances
/// (typically one per basis tuple); it fails on the first violated
/// requirement and keeps the worst residual seen.
class Check {
public:
    void require_exact_zero(const Scalar& s, const std::string& witness);
    void require_exact_zero(const Element& e, const std::string& witness);
    void require_exact_zero(const TensorElement& e, const std::string& witness);
    void require_true(bool ok, const std::string& witness);
    void require_float(double residual, const std::string& witness);  // |r| <= tol
    void fail(const std::string& witness);
    void note(const std::string& text);
    void mark_info();                      // informational record, never fails

    bool passed() const { return record_.status != CheckStatus::Fail; }

private:
    friend class Recorder;
    Check(std::string id, std::string anchor, double tol);
    void touch();
    CheckRecord finalize() const;

    CheckRecord record_;
    double tol_;
    bool any_float_ = false;
    double max_float_residual_ = 0;
    std::chrono::steady_clock::time_point start_, last_;
};

/// Collects check records for one suite run. Checks are finalized sorted by
/// id so report output is deterministic.
class Recorder {
public:
    Recorder(std::string suite, double tolerance) : suite_(std::move(suite)), tol_(tolerance) {}

    Check& check(const std::string& id, const std::string& anchor);

    const std::string& suite() const { return suite_; }
    double tolerance() const { return tol_; }
    std::vector<CheckRecord> finalize() const;
    bool all_passed() const;

private:
    std::string suite_;
    double tol_;
    std::deque<Check> checks_;   // deque keeps references stable
};

struct SuiteReport {
    std::string name;
    std::vector<CheckRecord> checks;
    bool passed() const;
};

/// Serialized forms of a full run. The JSON form is byte-stable for a fixed
/// (example, flags, seed); timing appears only in the markdown summary.
std::string report_json(const ReportEnvironment& env, const std::vector<SuiteReport>& suites);
std::string report_markdown(const ReportEnvironment& env, const std::vector<SuiteReport>& suites);

}  // namespace aqg
