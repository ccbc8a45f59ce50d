#include "vstab/report_io.hpp"

#include "vstab/errors.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

namespace vstab {

std::string format_double17(double x) {
    if (std::isnan(x)) return "\"NaN\"";
    if (std::isinf(x)) return x > 0 ? "\"Infinity\"" : "\"-Infinity\"";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

namespace {

class JsonWriter {
public:
    void begin_object() { separator(); out_ << '{'; fresh_ = true; }
    void end_object() { out_ << '}'; fresh_ = false; }
    void begin_array(const std::string& key) { separator(); out_ << '"' << key << "\":["; fresh_ = true; }
    void end_array() { out_ << ']'; fresh_ = false; }

    void key(const std::string& k) { separator(); out_ << '"' << k << "\":"; fresh_ = true; }
    void value_string(const std::string& v) { separator(); out_ << '"' << v << '"'; fresh_ = false; }
    void value_double(double v) { separator(); out_ << format_double17(v); fresh_ = false; }
    void value_int(long long v) { separator(); out_ << v; fresh_ = false; }
    void value_uint(std::uint64_t v) { separator(); out_ << v; fresh_ = false; }
    void value_bool(bool v) { separator(); out_ << (v ? "true" : "false"); fresh_ = false; }

    void field(const std::string& k, const std::string& v) { key(k); value_string(v); }
    void field(const std::string& k, double v) { key(k); value_double(v); }
    void field(const std::string& k, int v) { key(k); value_int(v); }
    void field(const std::string& k, std::uint64_t v) { key(k); value_uint(v); }
    void field(const std::string& k, bool v) { key(k); value_bool(v); }

    std::string str() const { return out_.str(); }

private:
    void separator() {
        if (!fresh_) out_ << ',';
        fresh_ = true;
    }
    std::ostringstream out_;
    bool fresh_ = true;
};

void emit_config(JsonWriter& w, const ConfigEcho& c) {
    w.key("config");
    w.begin_object();
    w.field("input", c.input);
    w.field("degree_arg", c.degree_arg);
    w.field("degree", c.degree);
    w.field("seed", c.seed);
    w.field("budget", c.budget);
    w.field("max_nu", c.max_nu);
    w.field("rel_slack", c.rel_slack);
    w.field("kron_tol", c.kron_tol);
    w.field("format", c.format);
    w.end_object();
}

void emit_node(JsonWriter& w, const NodeRecord& r) {
    w.begin_object();
    w.field("j", r.j);
    w.field("delta", r.delta);
    w.field("exact", r.exact);
    w.field("qj_norm", r.qj_norm);
    w.field("qj_bound", r.qj_bound);
    w.field("qj_bound_lemma", r.qj_bound_lemma);
    w.field("kron_residual", r.kron_residual);
    w.field("dist_actual", r.dist_actual);
    w.field("dist_lower_via_cj", r.dist_lower_via_cj);
    w.field("dist_bound", r.dist_bound);
    w.field("sin_theta_actual", r.sin_theta_actual);
    w.field("sin_theta_bound", r.sin_theta_bound);
    w.field("row_norm", r.row_norm);
    w.field("pass", r.pass);
    w.end_object();
}

void emit_global(JsonWriter& w, const GlobalRecord& g) {
    w.key("global");
    w.begin_object();
    w.field("s", g.s);
    w.field("n", g.n);
    w.field("degree", g.degree);
    w.field("nu", g.nu);
    w.field("kappa_hat", g.kappa_hat);
    w.field("sigma_min_actual", g.sigma_min_actual);
    w.field("sigma_min_bound", g.sigma_min_bound);
    w.field("sigma_max_actual", g.sigma_max_actual);
    w.field("sigma_max_bound", g.sigma_max_bound);
    w.field("rinv_norm_actual", g.rinv_norm_actual);
    w.field("rinv_norm_bound", g.rinv_norm_bound);
    w.field("pinv_norm", g.pinv_norm);
    w.field("rinv_identity_residual", g.rinv_identity_residual);
    w.field("cond_actual", g.cond_actual);
    w.field("cond_bound", g.cond_bound);
    w.field("rank", g.rank);
    w.field("full_rank_expected", g.full_rank_expected);
    w.field("kernel_dim", g.kernel_dim);
    w.field("kernel_dim_expected", g.kernel_dim_expected);
    w.field("max_kron_residual", g.max_kron_residual);
    w.field("pass", g.pass);
    w.end_object();
}

} // namespace

std::string emit_report_json(const ConfigEcho& config, const StabilityReport& report) {
    JsonWriter w;
    w.begin_object();
    emit_config(w, config);
    w.begin_array("per_node");
    for (const auto& r : report.per_node) emit_node(w, r);
    w.end_array();
    emit_global(w, report.global);
    w.field("all_pass", report.all_pass);
    w.end_object();
    return w.str() + "\n";
}

namespace {

std::string cell(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

void table_line(std::ostringstream& out, const std::string& name, double actual,
                double limit, const char* relation, bool pass) {
    out << "  " << name;
    for (std::size_t i = name.size(); i < 24; ++i) out << ' ';
    out << cell(actual) << ' ' << relation << ' ' << cell(limit) << "  "
        << (pass ? "ok" : "FAIL") << '\n';
}

} // namespace

std::string emit_report_table(const ConfigEcho& config, const StabilityReport& report) {
    std::ostringstream out;
    const GlobalRecord& g = report.global;
    out << "stability report  s=" << g.s << " n=" << g.n << " N=" << g.degree
        << " nu=" << g.nu << " seed=" << config.seed << " budget=" << config.budget << '\n';
    out << "input: " << config.input << '\n';
    out << "kappa_hat = " << cell(g.kappa_hat) << '\n';
    for (const auto& r : report.per_node) {
        out << "node " << r.j << "  delta=" << cell(r.delta)
            << (r.exact ? " (exact)" : " (certified lower bound)") << '\n';
        table_line(out, "coeff norm (sharp)", r.qj_norm, r.qj_bound, "<=", true);
        table_line(out, "coeff norm (lemma)", r.qj_norm, r.qj_bound_lemma, "<=", true);
        table_line(out, "kronecker residual", r.kron_residual, 0.0, "->", true);
        table_line(out, "row distance", r.dist_actual, r.dist_bound, ">=", true);
        table_line(out, "  via 1/||c_j||", r.dist_lower_via_cj, r.dist_bound, ">=", true);
        table_line(out, "sin(angle)", r.sin_theta_actual, r.sin_theta_bound, ">=", true);
        out << "  node pass: " << (r.pass ? "ok" : "FAIL") << '\n';
    }
    out << "global\n";
    table_line(out, "sigma_min", g.sigma_min_actual, g.sigma_min_bound, ">=", true);
    table_line(out, "sigma_max", g.sigma_max_actual, g.sigma_max_bound, "<=", true);
    table_line(out, "cond", g.cond_actual, g.cond_bound, "<=", true);
    table_line(out, "rinv norm", g.rinv_norm_actual, g.rinv_norm_bound, "<=", true);
    table_line(out, "pinv norm", g.pinv_norm, g.rinv_norm_actual, "<=", true);
    table_line(out, "V*Vplus residual", g.rinv_identity_residual, 0.0, "->", true);
    out << "  rank " << g.rank << " / expected " << g.full_rank_expected
        << ", kernel dim " << g.kernel_dim << " / expected " << g.kernel_dim_expected << '\n';
    out << "all_pass: " << (report.all_pass ? "true" : "false") << '\n';
    return out.str();
}

namespace {

using nlohmann::json;

double read_double(const json& v, const char* key) {
    const json& x = v.at(key);
    if (x.is_string()) {
        std::string s = x.get<std::string>();
        if (s == "NaN") return std::nan("");
        if (s == "Infinity") return std::numeric_limits<double>::infinity();
        if (s == "-Infinity") return -std::numeric_limits<double>::infinity();
        throw ValidationError(std::string("report: bad numeric string at ") + key);
    }
    return x.get<double>();
}

} // namespace

ParsedReport parse_report_json(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::exception& e) {
        throw ValidationError(std::string("report: ") + e.what());
    }
    try {
        ParsedReport out;
        const json& c = doc.at("config");
        out.config.input = c.at("input").get<std::string>();
        out.config.degree_arg = c.at("degree_arg").get<std::string>();
        out.config.degree = c.at("degree").get<int>();
        out.config.seed = c.at("seed").get<std::uint64_t>();
        out.config.budget = c.at("budget").get<std::uint64_t>();
        out.config.max_nu = c.at("max_nu").get<std::uint64_t>();
        out.config.rel_slack = read_double(c, "rel_slack");
        out.config.kron_tol = read_double(c, "kron_tol");
        out.config.format = c.at("format").get<std::string>();

        for (const json& nj : doc.at("per_node")) {
            NodeRecord r;
            r.j = nj.at("j").get<int>();
            r.delta = read_double(nj, "delta");
            r.exact = nj.at("exact").get<bool>();
            r.qj_norm = read_double(nj, "qj_norm");
            r.qj_bound = read_double(nj, "qj_bound");
            r.qj_bound_lemma = read_double(nj, "qj_bound_lemma");
            r.kron_residual = read_double(nj, "kron_residual");
            r.dist_actual = read_double(nj, "dist_actual");
            r.dist_lower_via_cj = read_double(nj, "dist_lower_via_cj");
            r.dist_bound = read_double(nj, "dist_bound");
            r.sin_theta_actual = read_double(nj, "sin_theta_actual");
            r.sin_theta_bound = read_double(nj, "sin_theta_bound");
            r.row_norm = read_double(nj, "row_norm");
            r.pass = nj.at("pass").get<bool>();
            out.report.per_node.push_back(r);
        }

        const json& gj = doc.at("global");
        GlobalRecord& g = out.report.global;
        g.s = gj.at("s").get<int>();
        g.n = gj.at("n").get<int>();
        g.degree = gj.at("degree").get<int>();
        g.nu = gj.at("nu").get<std::uint64_t>();
        g.kappa_hat = read_double(gj, "kappa_hat");
        g.sigma_min_actual = read_double(gj, "sigma_min_actual");
        g.sigma_min_bound = read_double(gj, "sigma_min_bound");
        g.sigma_max_actual = read_double(gj, "sigma_max_actual");
        g.sigma_max_bound = read_double(gj, "sigma_max_bound");
        g.rinv_norm_actual = read_double(gj, "rinv_norm_actual");
        g.rinv_norm_bound = read_double(gj, "rinv_norm_bound");
        g.pinv_norm = read_double(gj, "pinv_norm");
        g.rinv_identity_residual = read_double(gj, "rinv_identity_residual");
        g.cond_actual = read_double(gj, "cond_actual");
        g.cond_bound = read_double(gj, "cond_bound");
        g.rank = gj.at("rank").get<int>();
        g.full_rank_expected = gj.at("full_rank_expected").get<int>();
        g.kernel_dim = gj.at("kernel_dim").get<std::uint64_t>();
        g.kernel_dim_expected = gj.at("kernel_dim_expected").get<std::uint64_t>();
        g.max_kron_residual = read_double(gj, "max_kron_residual");
        g.pass = gj.at("pass").get<bool>();

        out.report.all_pass = doc.at("all_pass").get<bool>();
        return out;
    } catch (const json::exception& e) {
        throw ValidationError(std::string("report: missing or mistyped field: ") + e.what());
    }
}

} // namespace vstab
