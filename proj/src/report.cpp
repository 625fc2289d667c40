#include "aqg/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include <json.hpp>

namespace aqg {

namespace {

std::string float_residual_str(double r) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.3e", r);
    return buf;
}

double element_abs(const Element& e) {
    double m = 0;
    for (const auto& [i, s] : e.coeffs()) m = std::max(m, s.abs());
    return m;
}

double tensor_abs(const TensorElement& e) {
    double m = 0;
    for (const auto& [k, s] : e.coeffs()) m = std::max(m, s.abs());
    return m;
}

}  // namespace

Check::Check(std::string id, std::string anchor, double tol) : tol_(tol) {
    record_.id = std::move(id);
    record_.anchor = std::move(anchor);
    record_.tier = "exact";
    start_ = last_ = std::chrono::steady_clock::now();
}

void Check::touch() { last_ = std::chrono::steady_clock::now(); }

void Check::require_exact_zero(const Scalar& s, const std::string& witness) {
    touch();
    if (!passed()) return;
    if (!s.is_exact()) {
        any_float_ = true;
        max_float_residual_ = std::max(max_float_residual_, s.abs());
        if (s.abs() > tol_) fail(witness);
        return;
    }
    if (!s.is_zero()) {
        record_.status = CheckStatus::Fail;
        record_.residual = s.str();
        record_.witness = witness;
    }
}

void Check::require_exact_zero(const Element& e, const std::string& witness) {
    touch();
    if (!passed()) return;
    if (!e.all_exact()) {
        any_float_ = true;
        double r = element_abs(e);
        max_float_residual_ = std::max(max_float_residual_, r);
        if (r > tol_) fail(witness);
        return;
    }
    if (!e.is_zero()) {
        record_.status = CheckStatus::Fail;
        record_.residual = e.str();
        record_.witness = witness;
    }
}

void Check::require_exact_zero(const TensorElement& e, const std::string& witness) {
    touch();
    if (!passed()) return;
    if (!e.all_exact()) {
        any_float_ = true;
        double r = tensor_abs(e);
        max_float_residual_ = std::max(max_float_residual_, r);
        if (r > tol_) fail(witness);
        return;
    }
    if (!e.is_zero()) {
        record_.status = CheckStatus::Fail;
        record_.residual = e.str();
        record_.witness = witness;
    }
}

void Check::require_true(bool ok, const std::string& witness) {
    touch();
    if (!passed() || ok) return;
    record_.status = CheckStatus::Fail;
    record_.residual = "violated";
    record_.witness = witness;
}

void Check::require_float(double residual, const std::string& witness) {
    touch();
    any_float_ = true;
    max_float_residual_ = std::max(max_float_residual_, std::abs(residual));
    if (!passed()) return;
    if (std::abs(residual) > tol_) {
        record_.status = CheckStatus::Fail;
        record_.residual = float_residual_str(residual);
        record_.witness = witness;
    }
}

void Check::fail(const std::string& witness) {
    touch();
    if (!passed()) return;
    record_.status = CheckStatus::Fail;
    if (record_.residual == "0") record_.residual = "violated";
    record_.witness = witness;
}

void Check::note(const std::string& text) {
    touch();
    if (!record_.note.empty()) record_.note += "; ";
    record_.note += text;
}

void Check::mark_info() {
    if (record_.status == CheckStatus::Pass) record_.status = CheckStatus::Info;
}

CheckRecord Check::finalize() const {
    CheckRecord r = record_;
    if (any_float_) {
        r.tier = "float";
        if (r.status != CheckStatus::Fail) r.residual = float_residual_str(max_float_residual_);
    }
    r.wall_ms =
        std::chrono::duration_cast<std::chrono::duration<double, std::milli>>(last_ - start_)
            .count();
    return r;
}

Check& Recorder::check(const std::string& id, const std::string& anchor) {
    checks_.push_back(Check(id, anchor, tol_));
    return checks_.back();
}

std::vector<CheckRecord> Recorder::finalize() const {
    std::vector<CheckRecord> out;
    out.reserve(checks_.size());
    for (const Check& c : checks_) out.push_back(c.finalize());
    std::sort(out.begin(), out.end(),
              [](const CheckRecord& a, const CheckRecord& b) { return a.id < b.id; });
    return out;
}

bool Recorder::all_passed() const {
    return std::all_of(checks_.begin(), checks_.end(), [](const Check& c) { return c.passed(); });
}

bool SuiteReport::passed() const {
    return std::all_of(checks.begin(), checks.end(),
                       [](const CheckRecord& c) { return c.status != CheckStatus::Fail; });
}

namespace {

const char* status_str(CheckStatus s) {
    switch (s) {
        case CheckStatus::Pass: return "pass";
        case CheckStatus::Fail: return "fail";
        default: return "info";
    }
}

}  // namespace

std::string report_json(const ReportEnvironment& env, const std::vector<SuiteReport>& suites) {
    nlohmann::ordered_json j;
    j["schema"] = "aqg-report v1";
    nlohmann::ordered_json e;
    e["example"] = env.example;
    e["q"] = env.q;
    e["degree"] = env.degree;
    e["tolerance"] = env.tolerance;
    e["seed"] = env.seed;
    e["t_samples"] = env.t_samples;
    j["environment"] = e;
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const SuiteReport& s : suites) {
        nlohmann::ordered_json js;
        js["name"] = s.name;
        js["passed"] = s.passed();
        nlohmann::ordered_json checks = nlohmann::ordered_json::array();
        for (const CheckRecord& c : s.checks) {
            nlohmann::ordered_json jc;
            jc["id"] = c.id;
            jc["anchor"] = c.anchor;
            jc["tier"] = c.tier;
            jc["status"] = status_str(c.status);
            jc["residual"] = c.residual;
            if (!c.witness.empty()) jc["witness"] = c.witness;
            if (!c.note.empty()) jc["note"] = c.note;
            checks.push_back(jc);
        }
        js["checks"] = checks;
        arr.push_back(js);
    }
    j["suites"] = arr;
    return j.dump(2) + "\n";
}

std::string report_markdown(const ReportEnvironment& env, const std::vector<SuiteReport>& suites) {
    std::ostringstream os;
    os << "# Verification report\n\n";
    os << "- example: `" << env.example << "`\n";
    if (!env.q.empty()) os << "- q: `" << env.q << "`\n";
    os << "- degree: " << env.degree << "\n";
    os << "- tolerance: " << env.tolerance << "\n";
    os << "- seed: " << env.seed << "\n\n";
    for (const SuiteReport& s : suites) {
        os << "## Suite `" << s.name << "` — " << (s.passed() ? "PASS" : "FAIL") << "\n\n";
        os << "| check | status | tier | residual | time (ms) |\n";
        os << "|---|---|---|---|---|\n";
        for (const CheckRecord& c : s.checks) {
            char ms[32];
            std::snprintf(ms, sizeof ms, "%.1f", c.wall_ms);
            os << "| `" << c.id << "` | " << status_str(c.status) << " | " << c.tier << " | `"
               << c.residual << "` | " << ms << " |\n";
        }
        os << "\n";
        for (const CheckRecord& c : s.checks) {
            if (c.status == CheckStatus::Fail)
                os << "- **" << c.id << "** failed: " << c.anchor
                   << (c.witness.empty() ? "" : " at " + c.witness) << "\n";
            if (!c.note.empty()) os << "- note (" << c.id << "): " << c.note << "\n";
        }
        os << "\n";
    }
    return os.str();
}

}  // namespace aqg
