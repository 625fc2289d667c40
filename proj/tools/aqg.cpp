#include <cstdlib>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "aqg/examples.hpp"
#include "aqg/presentation_io.hpp"
#include "aqg/report.hpp"
#include "aqg/suites.hpp"

namespace {

bool parse_rational(const std::string& text, mpq_class& out) {
    auto s = aqg::Scalar::parse(text);
    if (!s || !s->is_exact() || !s->is_real()) return false;
    out = s->re();
    return true;
}

std::vector<double> parse_t_list(const std::string& text) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (tok == "pi")
            out.push_back(3.14159265358979323846);
        else
            out.push_back(std::stod(tok));
    }
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"aqg — exact verification engine for *-algebraic quantum groups"};
    app.require_subcommand(1);

    auto* verify = app.add_subcommand(
        "verify", "run named verification suites on a built-in or loaded presentation");
    std::string example = "group:C[Z2]";
    std::string qtext = "1/4";
    int degree = 3;
    std::string suite = "all";
    std::string tlist;
    double tolerance = -1;
    std::uint64_t seed = 20230426;
    std::string report_json_path, report_md_path, presentation_path;
    bool exact_polar = false, pentagon = false;
    verify->add_option("--example", example,
                       "built-in example: group:C[Z2|Z4|Z8|S3|D4], group:F[...], suq2");
    verify->add_option("--q", qtext, "deformation parameter for suq2, exact rational in (0,1)");
    verify->add_option("--degree", degree, "working truncation degree");
    verify->add_option("--suite", suite, "axioms|modular|duality|gns|appendix|all");
    verify->add_option("--t", tlist, "comma list of real one-parameter samples (accepts 'pi')");
    verify->add_option("--tolerance", tolerance,
                       "float-tier tolerance (default 1e-9 or AQG_DEFAULT_TOLERANCE)");
    verify->add_option("--seed", seed, "seed for randomized property checks");
    verify->add_option("--report-json", report_json_path, "write the JSON report here");
    verify->add_option("--report-md", report_md_path, "write the markdown summary here");
    verify->add_option("--presentation-file", presentation_path,
                       "load a presentation instead of a built-in example");
    verify->add_flag("--exact-polar", exact_polar,
                     "demand exact polar parts (suq2 requires q to be a rational square)");
    verify->add_flag("--pentagon", pentagon, "also run the optional pentagon check");

    auto* audit = app.add_subcommand("coverage-audit",
                                     "list catalogued propositions lacking a check id");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    if (audit->parsed()) {
        aqg::CoverageAudit a = aqg::run_coverage_audit();
        const auto& cat = aqg::proposition_catalogue();
        std::cout << "catalogued propositions: " << cat.size() << "\n";
        for (const auto& e : cat) {
            std::cout << "  " << e.proposition << " -> ";
            for (std::size_t i = 0; i < e.check_ids.size(); ++i)
                std::cout << (i ? ", " : "") << e.check_ids[i];
            std::cout << "\n";
        }
        if (!a.clean()) {
            for (const auto& s : a.uncovered_propositions)
                std::cout << "UNCOVERED: " << s << "\n";
            for (const auto& s : a.unknown_check_ids)
                std::cout << "UNKNOWN CHECK ID: " << s << "\n";
            return 1;
        }
        std::cout << "uncovered propositions: none\n";
        return 0;
    }

    aqg::VerifyOptions opt;
    opt.degree = degree;
    opt.seed = seed;
    opt.exact_polar = exact_polar;
    opt.pentagon = pentagon;
    opt.suites = {suite};
    if (!tlist.empty()) {
        try {
            opt.t_samples = parse_t_list(tlist);
        } catch (const std::exception&) {
            std::cerr << "usage error: bad --t list '" << tlist << "'\n";
            return 2;
        }
    }
    if (tolerance >= 0) {
        opt.tolerance = tolerance;
    } else if (const char* env = std::getenv("AQG_DEFAULT_TOLERANCE")) {
        opt.tolerance = std::atof(env);
    }
    if (!parse_rational(qtext, opt.q) || sgn(opt.q) <= 0 || opt.q >= 1) {
        std::cerr << "usage error: --q must be an exact rational in (0,1), got '" << qtext
                  << "'\n";
        return 2;
    }
    if (exact_polar && example == "suq2" && !aqg::is_perfect_square(opt.q)) {
        std::cerr << "usage error: --exact-polar requires q to be the square of a rational, got "
                  << opt.q.get_str() << "\n";
        return 2;
    }
    static const std::set<std::string> known_suites = {"axioms", "modular", "duality",
                                                       "gns", "appendix", "all"};
    if (!known_suites.count(suite)) {
        std::cerr << "usage error: unknown suite '" << suite << "'\n";
        return 2;
    }

    std::shared_ptr<aqg::Presentation> pres;
    try {
        if (!presentation_path.empty()) {
            pres = aqg::load_presentation_file(presentation_path);
            opt.example = "file:" + presentation_path;
            opt.degree = std::max(opt.degree, aqg::declared_check_degree(*pres));
        } else {
            pres = aqg::make_example(example, opt.q, degree);
            opt.example = example;
        }
    } catch (const std::exception& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    }

    aqg::RunResult result = aqg::run_suites(pres, opt);

    for (const aqg::SuiteReport& s : result.suites) {
        std::cout << "suite " << s.name << ": " << (s.passed() ? "pass" : "FAIL") << "\n";
        for (const aqg::CheckRecord& c : s.checks) {
            const char* st = c.status == aqg::CheckStatus::Pass
                                 ? "pass"
                                 : (c.status == aqg::CheckStatus::Fail ? "FAIL" : "info");
            std::cout << "  [" << st << "] " << c.id << " (" << c.tier
                      << ", residual " << c.residual << ")\n";
            if (c.status == aqg::CheckStatus::Fail && !c.witness.empty())
                std::cout << "         witness: " << c.witness << "\n";
        }
    }

    if (!report_json_path.empty()) {
        std::ofstream f(report_json_path);
        f << aqg::report_json(result.env, result.suites);
    }
    if (!report_md_path.empty()) {
        std::ofstream f(report_md_path);
        f << aqg::report_markdown(result.env, result.suites);
    }
    return result.passed ? 0 : 1;
}
