#include "vstab/cli.hpp"

#include "vstab/errors.hpp"
#include "vstab/oracle.hpp"
#include "vstab/rng.hpp"
#include "vstab/univariate.hpp"
#include "vstab/vandermonde.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <ostream>
#include <sstream>

namespace vstab::cli {

using nlohmann::json;

namespace {

std::size_t line_of_byte(const std::string& text, std::size_t byte) {
    std::size_t line = 1;
    for (std::size_t i = 0; i < byte && i < text.size(); ++i)
        if (text[i] == '\n') ++line;
    return line;
}

} // namespace

NodeSet parse_nodeset(const std::string& json_text) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ValidationError("node set: parse error at line " +
                              std::to_string(line_of_byte(json_text, e.byte)) + ": " + e.what());
    }
    if (!doc.is_object()) throw ValidationError("node set: top level must be an object");
    if (!doc.contains("n")) throw ValidationError("node set: missing field \"n\"");
    if (!doc["n"].is_number_integer()) throw ValidationError("node set: \"n\" must be an integer");
    if (!doc.contains("points")) throw ValidationError("node set: missing field \"points\"");
    if (!doc["points"].is_array()) throw ValidationError("node set: \"points\" must be an array");

    int n = doc["n"].get<int>();
    std::vector<std::vector<double>> points;
    points.reserve(doc["points"].size());
    for (std::size_t i = 0; i < doc["points"].size(); ++i) {
        const json& row = doc["points"][i];
        if (!row.is_array())
            throw ValidationError("node set: points[" + std::to_string(i) + "] must be an array");
        std::vector<double> point;
        point.reserve(row.size());
        for (std::size_t l = 0; l < row.size(); ++l) {
            if (!row[l].is_number())
                throw ValidationError("node set: points[" + std::to_string(i) + "][" +
                                      std::to_string(l) + "] must be a number");
            point.push_back(row[l].get<double>());
        }
        points.push_back(std::move(point));
    }
    return NodeSet::create(n, std::move(points));
}

NodeSet parse_nodeset_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ValidationError("cannot open input file: " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_nodeset(buffer.str());
}

namespace {

int parse_degree_arg(const std::string& degree) {
    if (degree == "auto") return -1;
    try {
        std::size_t used = 0;
        int value = std::stoi(degree, &used);
        if (used != degree.size() || value < 0)
            throw ValidationError("degree must be \"auto\" or a non-negative integer");
        return value;
    } catch (const ValidationError&) {
        throw;
    } catch (...) {
        throw ValidationError("degree must be \"auto\" or a non-negative integer");
    }
}

void write_text(const std::string& text, const std::string& output, std::ostream& out) {
    if (output.empty()) {
        out << text;
        return;
    }
    std::ofstream file(output, std::ios::binary);
    if (!file) throw ValidationError("cannot open output file: " + output);
    file << text;
}

} // namespace

int run_analyze(const AnalyzeConfig& config, std::ostream& out, std::ostream& err) {
    try {
        if (config.format != "json" && config.format != "table")
            throw ValidationError("format must be json or table");
        NodeSet Z = parse_nodeset_file(config.input_path);
        int degree = parse_degree_arg(config.degree);

        AnalyzeOptions options;
        options.search.seed = config.seed;
        options.search.random_candidates = config.budget;
        options.max_nu = config.max_nu;
        StabilityReport report = analyze(Z, degree, options);

        ConfigEcho echo;
        echo.input = config.input_path;
        echo.degree_arg = config.degree;
        echo.degree = report.global.degree;
        echo.seed = config.seed;
        echo.budget = config.budget;
        echo.max_nu = config.max_nu;
        echo.rel_slack = options.rel_slack;
        echo.kron_tol = options.kron_tol;
        echo.format = config.format;

        std::string text = config.format == "json" ? emit_report_json(echo, report)
                                                   : emit_report_table(echo, report);
        write_text(text, config.output, out);
        if (!report.all_pass) {
            err << "certificate failure: see report for the failing inequality\n";
            return kExitCertificateFailure;
        }
        return kExitPass;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitInputError;
    }
}

namespace {

struct FamilyRatio {
    const char* name;
    double worst = 0.0;          // max of constrained/limit, <= 1 when satisfied
    std::uint64_t instance = 0;  // argmax
    void update(double constrained, double limit, std::uint64_t index) {
        double r = limit > 0.0 ? constrained / limit
                               : (constrained > 0.0 ? std::numeric_limits<double>::infinity() : 0.0);
        if (r > worst) {
            worst = r;
            instance = index;
        }
    }
};

struct InstanceOutcome {
    int s = 0;
    int n = 0;
    int degree = 0;
    std::uint64_t seed = 0;
    bool pass = false;
    bool errored = false;
    std::string message;
    StabilityReport report;
};

NodeSet random_node_set(Rng& rng, int n, int s) {
    std::vector<std::vector<double>> points;
    points.reserve(static_cast<std::size_t>(s));
    int attempts = 0;
    while (static_cast<int>(points.size()) < s) {
        std::vector<double> candidate = rng.ball_point(n);
        bool duplicate = false;
        for (const auto& p : points) duplicate = duplicate || p == candidate;
        if (!duplicate) points.push_back(std::move(candidate));
        if (++attempts > 100 * s)
            throw InternalError("random_node_set: repeated duplicate draws");
    }
    return NodeSet::create(n, std::move(points));
}

} // namespace

int run_suite(const SuiteConfig& config, std::ostream& out, std::ostream& err) {
    try {
        if (config.format != "json" && config.format != "table")
            throw ValidationError("format must be json or table");
        if (config.s_min < 2 || config.s_max < config.s_min || config.s_max > 8)
            throw ValidationError("suite: s range must satisfy 2 <= s_min <= s_max <= 8");
        if (config.n_min < 1 || config.n_max < config.n_min || config.n_max > 4)
            throw ValidationError("suite: n range must satisfy 1 <= n_min <= n_max <= 4");
        int fixed_degree = parse_degree_arg(config.degree);
        if (fixed_degree >= 0 && fixed_degree < config.s_max - 1)
            throw ValidationError("suite: degree " + std::to_string(fixed_degree) +
                                  " is below s_max - 1 = " + std::to_string(config.s_max - 1));

        const std::uint64_t count = config.count;
        std::vector<InstanceOutcome> outcomes(count);

        auto run_instance = [&](std::uint64_t index) {
            InstanceOutcome& o = outcomes[index];
            o.seed = derive_seed(config.seed, index);
            try {
                Rng rng(o.seed);
                o.s = config.s_min + static_cast<int>(rng.below(
                                        static_cast<std::uint64_t>(config.s_max - config.s_min + 1)));
                o.n = config.n_min + static_cast<int>(rng.below(
                                        static_cast<std::uint64_t>(config.n_max - config.n_min + 1)));
                NodeSet Z = random_node_set(rng, o.n, o.s);
                o.degree = fixed_degree < 0 ? o.s - 1 : fixed_degree;

                AnalyzeOptions options;
                options.search.seed = o.seed;
                options.search.random_candidates = config.budget;
                options.max_nu = config.max_nu;
                o.report = analyze(Z, o.degree, options);
                o.pass = o.report.all_pass;
            } catch (const std::exception& e) {
                o.errored = true;
                o.message = e.what();
            }
        };

#pragma omp parallel for schedule(dynamic)
        for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(count); ++i)
            run_instance(static_cast<std::uint64_t>(i));

        // ordered aggregation
        std::uint64_t passes = 0;
        FamilyRatio qj_sharp{"qj_sharp"};
        FamilyRatio qj_lemma{"qj_lemma"};
        FamilyRatio distance{"distance"};
        FamilyRatio distance_actual{"distance_actual"};
        FamilyRatio angle{"angle"};
        FamilyRatio sigma_min{"sigma_min"};
        FamilyRatio sigma_max{"sigma_max"};
        FamilyRatio cond{"cond"};
        FamilyRatio rinv_norm{"rinv_norm"};
        FamilyRatio rinv_sigma{"rinv_sigma"};
        double max_kron = 0.0;
        double max_identity = 0.0;
        std::vector<const InstanceOutcome*> failures;
        for (std::uint64_t i = 0; i < count; ++i) {
            const InstanceOutcome& o = outcomes[i];
            if (!o.pass) {
                failures.push_back(&o);
                if (o.errored) continue;
            }
            for (const auto& r : o.report.per_node) {
                qj_sharp.update(r.qj_norm, r.qj_bound, i);
                qj_lemma.update(r.qj_norm, r.qj_bound_lemma, i);
                distance.update(r.dist_bound, r.dist_lower_via_cj, i);
                distance_actual.update(r.dist_lower_via_cj, r.dist_actual, i);
                angle.update(r.sin_theta_bound, r.sin_theta_actual, i);
            }
            const GlobalRecord& g = o.report.global;
            sigma_min.update(g.sigma_min_bound, g.sigma_min_actual, i);
            sigma_max.update(g.sigma_max_actual, g.sigma_max_bound, i);
            cond.update(g.cond_actual, g.cond_bound, i);
            rinv_norm.update(g.rinv_norm_actual, g.rinv_norm_bound, i);
            rinv_sigma.update(1.0 / g.rinv_norm_actual, g.sigma_min_actual, i);
            max_kron = std::fmax(max_kron, g.max_kron_residual);
            max_identity = std::fmax(max_identity, g.rinv_identity_residual);
            if (o.pass) ++passes;
        }
        bool all_pass = passes == count;

        std::ostringstream text;
        if (config.format == "json") {
            text << "{\"config\":{\"seed\":" << config.seed << ",\"count\":" << count
                 << ",\"s_min\":" << config.s_min << ",\"s_max\":" << config.s_max
                 << ",\"n_min\":" << config.n_min << ",\"n_max\":" << config.n_max
                 << ",\"degree\":\"" << config.degree << "\",\"budget\":" << config.budget
                 << ",\"max_nu\":" << config.max_nu << "},";
            text << "\"instances\":" << count << ",\"passes\":" << passes << ",";
            text << "\"failures\":[";
            for (std::size_t f = 0; f < failures.size(); ++f) {
                const InstanceOutcome& o = *failures[f];
                if (f) text << ",";
                text << "{\"seed\":" << o.seed << ",\"s\":" << o.s << ",\"n\":" << o.n
                     << ",\"degree\":" << o.degree << ",\"error\":\""
                     << (o.errored ? o.message : "certificate failure") << "\"}";
            }
            text << "],";
            text << "\"worst_ratios\":{";
            bool first = true;
            for (const FamilyRatio* fr : {&qj_sharp, &qj_lemma, &distance, &distance_actual,
                                          &angle, &sigma_min, &sigma_max, &cond, &rinv_norm,
                                          &rinv_sigma}) {
                if (!first) text << ",";
                first = false;
                text << "\"" << fr->name << "\":" << format_double17(fr->worst);
            }
            text << "},";
            text << "\"max_kron_residual\":" << format_double17(max_kron) << ",";
            text << "\"max_rinv_identity_residual\":" << format_double17(max_identity) << ",";
            text << "\"all_pass\":" << (all_pass ? "true" : "false") << "}\n";
        } else {
            text << "suite seed=" << config.seed << " count=" << count << " s=[" << config.s_min
                 << "," << config.s_max << "] n=[" << config.n_min << "," << config.n_max
                 << "] degree=" << config.degree << " budget=" << config.budget << "\n";
            text << "passes: " << passes << "/" << count << "\n";
            for (const FamilyRatio* fr : {&qj_sharp, &qj_lemma, &distance, &distance_actual,
                                          &angle, &sigma_min, &sigma_max, &cond, &rinv_norm,
                                          &rinv_sigma})
                text << "  worst " << fr->name << " ratio: " << format_double17(fr->worst)
                     << " (instance " << fr->instance << ")\n";
            text << "  max kronecker residual: " << format_double17(max_kron) << "\n";
            text << "  max identity residual:  " << format_double17(max_identity) << "\n";
            for (const InstanceOutcome* o : failures)
                text << "FAIL seed=" << o->seed << " s=" << o->s << " n=" << o->n << ": "
                     << (o->errored ? o->message : "certificate failure") << "\n";
            text << "all_pass: " << (all_pass ? "true" : "false") << "\n";
        }
        write_text(text.str(), config.output, out);
        return all_pass ? kExitPass : kExitCertificateFailure;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitInputError;
    }
}

int run_oracle_check(const OracleCheckConfig& config, std::ostream& out) {
    using oracle::Rational;
    bool all_pass = true;
    out << "oracle-check seed=" << config.seed << "\n";

    // floating univariate Lagrange coefficients vs the exact rational pipeline
    {
        std::uint64_t ok = 0;
        double worst = 0.0;
        for (std::uint64_t k = 0; k < config.univariate_instances; ++k) {
            Rng rng(derive_seed(config.seed, k));
            int s = 2 + static_cast<int>(rng.below(4)); // 2..5
            std::vector<double> t;
            while (static_cast<int>(t.size()) < s) {
                auto den = static_cast<long long>(1 + rng.below(64));
                auto num = static_cast<long long>(rng.below(2 * static_cast<std::uint64_t>(den) + 1)) - den;
                double value = static_cast<double>(num) / static_cast<double>(den);
                if (std::find(t.begin(), t.end(), value) == t.end()) t.push_back(value);
            }
            UnivariateNodes nodes = UnivariateNodes::create(t);
            std::vector<Rational> exact_t;
            exact_t.reserve(t.size());
            for (double v : t) exact_t.push_back(oracle::rational_from_double(v));
            bool instance_ok = true;
            for (int j = 0; j < s; ++j) {
                CoeffVector approx = lagrange_basis_coeffs(nodes, j);
                std::vector<Rational> exact = oracle::exact_lagrange_univariate(exact_t, j);
                for (int c = 0; c < s; ++c) {
                    double e = oracle::to_double(exact[static_cast<std::size_t>(c)]);
                    double diff = std::fabs(approx.coeffs[static_cast<std::size_t>(c)] - e);
                    double rel = diff / std::fmax(1.0, std::fabs(e));
                    worst = std::fmax(worst, rel);
                    instance_ok = instance_ok && rel <= 1e-12;
                }
            }
            if (instance_ok) ++ok;
        }
        bool pass = ok == config.univariate_instances;
        all_pass = all_pass && pass;
        out << "  univariate lagrange vs exact rational: " << ok << "/"
            << config.univariate_instances << " within 1e-12 (worst "
            << format_double17(worst) << ")  " << (pass ? "PASS" : "FAIL") << "\n";
    }

    // exact full-rank confirmation by fraction-free elimination
    {
        std::uint64_t ok = 0;
        for (std::uint64_t k = 0; k < config.rank_instances; ++k) {
            Rng rng(derive_seed(config.seed ^ 0x5cull, k));
            int s = 2 + static_cast<int>(rng.below(4)); // 2..5
            int n = 1 + static_cast<int>(rng.below(3)); // 1..3
            NodeSet Z = random_node_set(rng, n, s);
            std::vector<std::vector<Rational>> exact_points;
            exact_points.reserve(Z.points.size());
            for (const auto& p : Z.points) {
                std::vector<Rational> q;
                q.reserve(p.size());
                for (double c : p) q.push_back(oracle::rational_from_double(c));
                exact_points.push_back(std::move(q));
            }
            auto solved = oracle::exact_vandermonde_solve(exact_points, n, s - 1, 0);
            if (solved.rank == s) ++ok;
        }
        bool pass = ok == config.rank_instances;
        all_pass = all_pass && pass;
        out << "  exact rank via fraction-free elimination: " << ok << "/"
            << config.rank_instances << " full rank  " << (pass ? "PASS" : "FAIL") << "\n";
    }

    // planar exact solver vs the dense angular grid
    {
        std::uint64_t ok = 0;
        double worst = 0.0;
        for (std::uint64_t k = 0; k < config.planar_instances; ++k) {
            Rng rng(derive_seed(config.seed ^ 0xb1ull, k));
            int s = 2 + static_cast<int>(rng.below(5)); // 2..6
            NodeSet Z = random_node_set(rng, 2, s);
            int j = static_cast<int>(k % static_cast<std::uint64_t>(s));
            DirectionCertificate cert = exact_rho_planar(Z, j);
            double grid = oracle::grid_rho(Z, j, config.grid_resolution);
            double diff = std::fabs(cert.delta - grid);
            worst = std::fmax(worst, diff);
            if (diff <= 1e-4 && cert.delta >= grid - 1e-12) ++ok;
        }
        bool pass = ok == config.planar_instances;
        all_pass = all_pass && pass;
        out << "  planar exact solver vs angular grid (" << config.grid_resolution
            << "): " << ok << "/" << config.planar_instances << " within 1e-4 (worst "
            << format_double17(worst) << ")  " << (pass ? "PASS" : "FAIL") << "\n";
    }

    out << "oracle-check: " << (all_pass ? "PASS" : "FAIL") << "\n";
    return all_pass ? kExitPass : kExitCertificateFailure;
}

} // namespace vstab::cli
