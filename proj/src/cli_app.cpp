#include "exptower/cli_app.hpp"

#include <cstdlib>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "exptower/acceptance.hpp"
#include "exptower/analysis.hpp"
#include "exptower/errors.hpp"
#include "exptower/evaluator.hpp"
#include "exptower/representer.hpp"
#include "exptower/words.hpp"
#include "exptower/xreal.hpp"

namespace exptower::cli {

namespace {

using json = nlohmann::ordered_json;

constexpr const char* k_word_grammar =
    "word grammar: WORD := SIGNS | SIGNS '(' SIGNS+ ')' with SIGNS over {+,-}; "
    "aliases: all+ = (+), all- = (-)";

// Flag/semantic validation problems; reported as usage errors (exit 2).
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

json x_json(XReal x) {
    if (x.infinite()) return json(x.value() > 0 ? "+inf" : "-inf");
    return json(x.value());
}

json interval_json(const Interval& I) { return json{{"lo", x_json(I.lo())}, {"hi", x_json(I.hi())}}; }

// Solver outputs carry the tolerance they were computed to.
json solved_json(double value, double tol) { return json{{"value", value}, {"tol", tol}}; }

XReal parse_xreal(const std::string& text, const std::string& flag) {
    if (text == "inf" || text == "+inf") return XReal::plus_infinity();
    if (text == "-inf") return XReal::minus_infinity();
    try {
        std::size_t used = 0;
        const double v = std::stod(text, &used);
        if (used != text.size()) throw std::invalid_argument(text);
        return XReal(v);
    } catch (const std::exception&) {
        throw UsageError(flag + ": expected a real number or inf/+inf/-inf, got \"" + text + "\"");
    }
}

Base checked_base(double value) {
    if (!(value > 0.0) || !std::isfinite(value))
        throw UsageError("--base: must be a positive finite real");
    return Base(value);
}

void flatten_json(const json& j, const std::string& path, std::ostream& out) {
    if (j.is_object()) {
        for (const auto& [key, value] : j.items())
            flatten_json(value, path.empty() ? key : path + "." + key, out);
    } else if (j.is_array()) {
        for (std::size_t i = 0; i < j.size(); ++i)
            flatten_json(j[i], path + "[" + std::to_string(i) + "]", out);
    } else {
        out << path << " = " << j.dump() << "\n";
    }
}

struct Output {
    json report;
    std::vector<std::string> csv_rows; // header first; empty when csv is unsupported
    int code = k_exit_ok;
};

json certificate_json(const QuadCertificate& cert) {
    json j;
    j["family"] = "quad";
    j["base"] = cert.base;
    j["t_param"] = cert.t_param ? solved_json(*cert.t_param, 1e-12) : json(nullptr);
    j["lambda"] = cert.lambda ? json(*cert.lambda) : json(nullptr);
    j["convex_ok"] = cert.convex_ok;
    j["grid"] = json{{"lo", cert.grid.lo}, {"hi", cert.grid.hi}, {"points", cert.grid.points}};
    j["grid_min"] = cert.grid_min ? json(*cert.grid_min) : json(nullptr);
    j["tail_ok"] = cert.tail_ok;
    j["verdict"] = cert.verdict;
    return j;
}

json certificate_json(const PowCertificate& cert) {
    json j;
    j["family"] = "pow";
    j["base"] = cert.base;
    j["nu"] = cert.nu;
    j["nu_prime"] = cert.nu_prime;
    j["lhs1"] = cert.lhs1;
    j["lhs2"] = cert.lhs2;
    j["cond1"] = cert.cond1;
    j["cond2"] = cert.cond2;
    j["verdict"] = cert.verdict;
    return j;
}

struct EvalFlags {
    double base = 0;
    std::string word;
    std::size_t steps = k_default_max_steps;
    double tol = k_default_tol;
    bool trace = false;
};

Output do_eval(const EvalFlags& f) {
    Output o;
    const Base a = checked_base(f.base);
    const Word w = parse_word(f.word);
    const auto* iw = std::get_if<InfiniteWord>(&w);
    if (!iw)
        throw UsageError("--word: eval needs an eventually periodic word; append a cycle, e.g. \"+-(+)\"");
    const TowerReport rep = classify(a, *iw, f.steps, f.tol);

    o.report["config"] = json{{"base", f.base},   {"word", format_word(w)}, {"steps", f.steps},
                              {"tol", f.tol},     {"trace", f.trace}};
    json result;
    result["status"] = std::string(to_string(rep.status));
    result["limit"] = rep.limit ? x_json(*rep.limit) : json(nullptr);
    result["cycle"] = rep.cycle ? json{{"p", x_json(rep.cycle->first)}, {"q", x_json(rep.cycle->second)}}
                                : json(nullptr);
    result["steps_used"] = rep.steps_used;
    if (f.trace) {
        json tr = json::array();
        for (const XReal u : rep.trace) tr.push_back(x_json(u));
        result["trace"] = std::move(tr);
    }
    o.report["result"] = std::move(result);

    json tail = json::array();
    const std::size_t nt = rep.trace.size();
    for (std::size_t i = nt > 8 ? nt - 8 : 0; i < nt; ++i) tail.push_back(x_json(rep.trace[i]));
    o.report["diagnostics"] =
        json{{"trace_tail", std::move(tail)},
             {"limit_interval", interval_json(limit_interval(a, *iw, std::max<std::size_t>(rep.steps_used, 1)))}};

    o.csv_rows.push_back("n,u_n");
    for (std::size_t i = 0; i < rep.trace.size(); ++i)
        o.csv_rows.push_back(std::to_string(i + 1) + "," + x_json(rep.trace[i]).dump());
    o.code = rep.status == TowerStatus::undetermined ? k_exit_negative : k_exit_ok;
    return o;
}

struct ExpandFlags {
    double base = 0;
    std::string target;
    std::size_t signs = 64;
};

Output do_expand(const ExpandFlags& f) {
    Output o;
    const Base a = checked_base(f.base);
    const XReal t = parse_xreal(f.target, "--target");
    const Expansion ex = expand(a, t, f.signs);
    const auto alt = alternate_expansion(a, t, f.signs);

    o.report["config"] = json{{"base", f.base}, {"target", x_json(t)}, {"signs", f.signs}};
    json result;
    result["word"] = format_word(ex.word);
    result["tail_periodic"] = ex.tail_periodic;
    result["hit_zero_at"] = ex.hit_zero_at ? json(*ex.hit_zero_at) : json(nullptr);
    result["alternate_word"] = alt ? json(format_word(alt->word)) : json(nullptr);
    json orbit = json::array();
    for (const XReal u : ex.orbit) orbit.push_back(x_json(u));
    result["orbit"] = std::move(orbit);
    o.report["result"] = std::move(result);
    o.report["diagnostics"] = json::object();

    o.csv_rows.push_back("k,u_k");
    for (std::size_t i = 0; i < ex.orbit.size(); ++i)
        o.csv_rows.push_back(std::to_string(i) + "," + x_json(ex.orbit[i]).dump());
    return o;
}

struct RoundtripFlags {
    double base = 0;
    std::string target;
    std::size_t signs = 200;
    double tol = k_roundtrip_tol;
};

Output do_roundtrip(const RoundtripFlags& f) {
    Output o;
    const Base a = checked_base(f.base);
    const XReal t = parse_xreal(f.target, "--target");
    const RoundTrip rt = roundtrip(a, t, f.signs, f.tol);

    o.report["config"] =
        json{{"base", f.base}, {"target", x_json(t)}, {"signs", f.signs}, {"tol", f.tol}};
    json result;
    result["word"] = format_word(rt.expansion.word);
    result["verdict"] = std::string(to_string(rt.verdict));
    result["final_residual"] = x_json(rt.final_residual);
    json res = json::array();
    for (const XReal r : rt.residuals) res.push_back(x_json(r));
    result["residuals"] = std::move(res);
    o.report["result"] = std::move(result);
    o.report["diagnostics"] = json{{"tail_periodic", rt.expansion.tail_periodic}};

    o.csv_rows.push_back("n,residual");
    for (std::size_t i = 0; i < rt.residuals.size(); ++i)
        o.csv_rows.push_back(std::to_string(i + 1) + "," + x_json(rt.residuals[i]).dump());
    o.code = rt.verdict == RoundTripVerdict::represented ? k_exit_ok : k_exit_negative;
    return o;
}

Output do_fixed_points(double base) {
    Output o;
    const Base a = checked_base(base);
    const MinusFixedPoint mf = minus_fixed_point(a);

    o.report["config"] = json{{"base", base}};
    json result;
    result["minus"] = json{{"m_minus", solved_json(mf.m_minus, 1e-12)}, {"repulsive", mf.repulsive}};
    json diagnostics = json::object();
    if (base <= k_inv_e) {
        const PlusFixedPoints fp = plus_fixed_points(a);
        result["plus"] = json{{"m", solved_json(fp.m, 1e-12)}, {"M", solved_json(fp.M, 1e-12)}};
    } else {
        result["plus"] = nullptr;
        diagnostics["note"] = "the increasing map has no real fixed points for a > 1/e";
    }
    o.report["result"] = std::move(result);
    o.report["diagnostics"] = std::move(diagnostics);
    return o;
}

Output do_cycle(double base, double tol) {
    Output o;
    const Base a = checked_base(base);
    const CyclePair cp = two_cycle(a, tol); // NoCycleError for a <= e
    const MinusFixedPoint mf = minus_fixed_point(a);
    const double r1 = abs_diff(apply_sign(Sign::minus, a, XReal(cp.p)), XReal(cp.q));
    const double r2 = abs_diff(apply_sign(Sign::minus, a, XReal(cp.q)), XReal(cp.p));

    o.report["config"] = json{{"base", base}, {"tol", tol}};
    o.report["result"] = json{{"p", solved_json(cp.p, tol)},
                              {"q", solved_json(cp.q, tol)},
                              {"m_minus", solved_json(mf.m_minus, 1e-12)}};
    o.report["diagnostics"] =
        json{{"steps", cp.steps}, {"exchange_residuals", json::array({r1, r2})}};
    return o;
}

Output do_constants() {
    Output o;
    const Constants k = constants_ab();
    o.report["config"] = json::object();
    o.report["result"] = json{{"A", solved_json(k.A, 1e-12)},
                              {"B", solved_json(k.B, 1e-12)},
                              {"product", k.A * k.B}};
    o.report["diagnostics"] = json::object();
    return o;
}

struct CertifyFlags {
    double base = 0;
    std::string family;
    std::optional<double> lambda;
    GridSpec grid;
};

Output do_certify(const CertifyFlags& f) {
    Output o;
    const Base a = checked_base(f.base);
    bool verdict = false;
    json config{{"base", f.base}, {"family", f.family}};
    if (f.family == "quad") {
        if (f.lambda) config["lambda"] = *f.lambda;
        config["grid"] = json{{"lo", f.grid.lo}, {"hi", f.grid.hi}, {"points", f.grid.points}};
        const QuadCertificate cert = certify_quad(a, f.grid, f.lambda);
        verdict = cert.verdict;
        o.report["result"] = certificate_json(cert);
    } else {
        if (f.lambda) throw UsageError("--lambda: only meaningful for --family quad");
        const PowCertificate cert = certify_pow(a);
        verdict = cert.verdict;
        o.report["result"] = certificate_json(cert);
    }
    o.report["config"] = std::move(config);
    o.report["diagnostics"] = json::object();
    o.code = verdict ? k_exit_ok : k_exit_negative;
    return o;
}

struct MeasureFlags {
    std::string family;
    std::optional<double> base;
    double lambda = 1.0;
    std::optional<double> nu;
    std::string lo;
    std::string hi;
    bool contraction = false;
};

Output do_measure(const MeasureFlags& f) {
    Output o;
    const XReal lo = parse_xreal(f.lo, "--lo");
    const XReal hi = parse_xreal(f.hi, "--hi");
    if (hi < lo) throw UsageError("--lo/--hi: interval endpoints out of order");
    const Interval I(lo, hi);

    PhiFamily family = QuadPhi{f.lambda};
    json config{{"family", f.family}};
    if (f.family == "quad") {
        if (!(f.lambda > 0.0)) throw UsageError("--lambda: must be positive");
        config["lambda"] = f.lambda;
    } else {
        if (!f.base) throw UsageError("--base: required for --family pow");
        const double nu = f.nu ? *f.nu : 1.0 + 1.0 / *f.base;
        if (!(nu > 1.0)) throw UsageError("--nu: must exceed 1");
        family = PowPhi{*f.base, nu};
        config["base"] = *f.base;
        config["nu"] = nu;
    }
    config["lo"] = x_json(lo);
    config["hi"] = x_json(hi);
    config["contraction"] = f.contraction;
    o.report["config"] = std::move(config);

    json result{{"measure", phi_measure(family, I)}};
    if (f.contraction) {
        if (!f.base) throw UsageError("--base: required for --contraction");
        const ContractionCheck chk = contraction_check(checked_base(*f.base), family, I);
        result["contraction"] = json{{"m_before", chk.m_before},
                                     {"m_after_plus", chk.m_after_plus},
                                     {"m_after_minus", chk.m_after_minus},
                                     {"contracted", chk.contracted}};
        o.code = chk.contracted ? k_exit_ok : k_exit_negative;
    }
    o.report["result"] = std::move(result);
    o.report["diagnostics"] = json::object();
    return o;
}

struct AtlasFlags {
    double base = 0;
    std::size_t depth = 3;
    std::optional<std::string> target;
};

Output do_atlas(const AtlasFlags& f) {
    Output o;
    const Base a = checked_base(f.base);
    const Atlas atlas = atlas_build(a, f.depth); // OutOfRangeError for a > 1/e

    json config{{"base", f.base}, {"depth", f.depth}};
    json result;
    result["m"] = solved_json(atlas.m, 1e-12);
    result["core_half_width"] = atlas.core_half_width;
    result["piece_count"] = atlas.pieces.size();
    json pieces = json::array();
    for (const auto& piece : atlas.pieces)
        pieces.push_back(json{{"gamma", format_word(piece.gamma)}, {"box", interval_json(piece.box)}});
    result["pieces"] = std::move(pieces);
    json comps = json::array();
    for (const auto& component : atlas.components) comps.push_back(interval_json(component));
    result["component_count"] = atlas.components.size();
    result["components"] = std::move(comps);

    if (f.target) {
        const XReal t = parse_xreal(*f.target, "--target");
        config["target"] = x_json(t);
        const AtlasMembership hit = atlas_membership(atlas, t);
        result["membership"] =
            json{{"in_x", hit.in_x},
                 {"witness", hit.witness ? json(format_word(*hit.witness)) : json(nullptr)},
                 {"component", hit.component ? interval_json(*hit.component) : json(nullptr)}};
        o.code = hit.in_x ? k_exit_ok : k_exit_negative;
    }
    o.report["config"] = std::move(config);
    o.report["result"] = std::move(result);
    o.report["diagnostics"] = json::object();

    o.csv_rows.push_back("lo,hi");
    for (const auto& component : atlas.components)
        o.csv_rows.push_back(x_json(component.lo()).dump() + "," + x_json(component.hi()).dump());
    return o;
}

Output do_suitability(double base) {
    Output o;
    const Base a = checked_base(base);
    const SuitabilityReport rep = suitability_report(a);
    o.report["config"] = json{{"base", base}};
    json result;
    result["kind"] = std::string(to_string(rep.kind));
    result["pow"] = rep.pow ? certificate_json(*rep.pow) : json(nullptr);
    result["quad"] = rep.quad ? certificate_json(*rep.quad) : json(nullptr);
    o.report["result"] = std::move(result);
    o.report["diagnostics"] = json::object();
    o.code = rep.kind == SuitabilityKind::suitable_certified ? k_exit_ok : k_exit_negative;
    return o;
}

Output do_selftest(std::uint64_t seed) {
    Output o;
    const auto results = run_acceptance(seed);
    o.report["config"] = json{{"seed", seed}};
    json lines = json::array();
    for (const auto& r : results) {
        json j{{"id", r.id}, {"name", r.name}, {"passed", r.passed}};
        if (!r.detail.empty()) j["detail"] = r.detail;
        lines.push_back(std::move(j));
    }
    o.report["result"] = json{{"criteria", std::move(lines)}, {"all_passed", all_passed(results)}};
    o.report["diagnostics"] = json::object();
    o.code = all_passed(results) ? k_exit_ok : k_exit_negative;
    return o;
}

std::size_t env_max_steps() {
    const char* raw = std::getenv("EXPTOWER_MAX_STEPS");
    if (raw == nullptr) return k_default_max_steps;
    char* end = nullptr;
    const unsigned long long v = std::strtoull(raw, &end, 10);
    if (end == raw || *end != '\0' || v == 0)
        throw UsageError("EXPTOWER_MAX_STEPS: expected a positive integer, got \"" + std::string(raw) + "\"");
    return static_cast<std::size_t>(v);
}

void render(const Output& o, const std::string& command, const std::string& format,
            const std::string& out_path, std::ostream& out) {
    json report;
    report["command"] = command;
    for (const auto& [key, value] : o.report.items()) report[key] = value;

    std::string payload;
    if (format == "json") {
        payload = report.dump(2);
        payload += "\n";
    } else if (format == "csv") {
        if (o.csv_rows.empty())
            throw UsageError("--format csv: only available for sequence output (eval, expand, roundtrip, atlas)");
        std::ostringstream os;
        for (const auto& row : o.csv_rows) os << row << "\n";
        payload = os.str();
    } else if (command == "selftest") {
        std::ostringstream os;
        for (const auto& r : report["result"]["criteria"]) {
            os << (r["passed"].get<bool>() ? "PASS" : "FAIL") << "  " << r["id"].get<int>() << "  "
               << r["name"].get<std::string>();
            if (!r["passed"].get<bool>() && r.contains("detail"))
                os << "  [" << r["detail"].get<std::string>() << "]";
            os << "\n";
        }
        payload = os.str();
    } else {
        std::ostringstream os;
        flatten_json(report, "", os);
        payload = os.str();
    }

    if (!out_path.empty()) {
        std::ofstream file(out_path, std::ios::binary);
        if (!file) throw UsageError("--out: cannot open \"" + out_path + "\" for writing");
        file << payload;
        if (!file.good()) throw UsageError("--out: failed to write \"" + out_path + "\"");
    }
    out << payload;
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"signed exponential tower calculator"};
    app.name("exptower");
    app.require_subcommand(1);

    std::string format = "json";
    std::string out_path;
    const auto add_common = [&](CLI::App* cmd) {
        CLI::Option* opt = cmd->add_option("--format", format, "output format (default json)")
                               ->check(CLI::IsMember({"json", "csv", "text"}));
        cmd->add_option("--out", out_path, "also write the report to this file");
        return opt;
    };

    EvalFlags eval_flags;
    auto* eval_cmd = app.add_subcommand("eval", "classify the truncation sequence of a word");
    eval_cmd->add_option("--base", eval_flags.base, "base parameter a > 0")->required();
    eval_cmd->add_option("--word", eval_flags.word, "eventually periodic sign word")->required();
    auto* steps_opt = eval_cmd->add_option("--steps", eval_flags.steps, "iteration cap");
    eval_cmd->add_option("--tol", eval_flags.tol, "convergence tolerance")->default_val(k_default_tol);
    eval_cmd->add_flag("--trace", eval_flags.trace, "include the full trace in the result");
    add_common(eval_cmd);

    ExpandFlags expand_flags;
    auto* expand_cmd = app.add_subcommand("expand", "greedy sign expansion of a target value");
    expand_cmd->add_option("--base", expand_flags.base, "base parameter a > 0")->required();
    expand_cmd->add_option("--target", expand_flags.target, "value to expand (real or +inf/-inf)")
        ->required();
    expand_cmd->add_option("--signs", expand_flags.signs, "number of signs to emit")->default_val(64);
    add_common(expand_cmd);

    RoundtripFlags rt_flags;
    auto* rt_cmd = app.add_subcommand("roundtrip", "expand a target and re-evaluate its word");
    rt_cmd->add_option("--base", rt_flags.base, "base parameter a > 0")->required();
    rt_cmd->add_option("--target", rt_flags.target, "value to expand (real or +inf/-inf)")->required();
    rt_cmd->add_option("--signs", rt_flags.signs, "number of signs to emit")->default_val(200);
    rt_cmd->add_option("--tol", rt_flags.tol, "residual tolerance")->default_val(k_roundtrip_tol);
    add_common(rt_cmd);

    double fp_base = 0;
    auto* fp_cmd = app.add_subcommand("fixed-points", "fixed points of both signed maps");
    fp_cmd->add_option("--base", fp_base, "base parameter a > 0")->required();
    add_common(fp_cmd);

    double cycle_base = 0;
    double cycle_tol = 1e-12;
    auto* cycle_cmd = app.add_subcommand("cycle", "exchanged endpoint pair of the decreasing map");
    cycle_cmd->add_option("--base", cycle_base, "base parameter a > e")->required();
    cycle_cmd->add_option("--tol", cycle_tol, "stabilization tolerance")->default_val(1e-12);
    add_common(cycle_cmd);

    auto* constants_cmd = app.add_subcommand("constants", "reciprocal boundary constants A and B");
    add_common(constants_cmd);

    CertifyFlags certify_flags;
    double certify_lambda = 0;
    auto* certify_cmd = app.add_subcommand("certify", "weight-function contraction certificate");
    certify_cmd->add_option("--base", certify_flags.base, "base parameter a > 0")->required();
    certify_cmd->add_option("--family", certify_flags.family, "weight family")
        ->check(CLI::IsMember({"quad", "pow"}))
        ->required();
    auto* lambda_opt = certify_cmd->add_option("--lambda", certify_lambda,
                                               "fix the quadratic weight instead of parametrizing");
    certify_cmd->add_option("--grid-lo", certify_flags.grid.lo, "grid lower end")->default_val(-40.0);
    certify_cmd->add_option("--grid-hi", certify_flags.grid.hi, "grid upper end")->default_val(40.0);
    certify_cmd->add_option("--grid-points", certify_flags.grid.points, "grid point count")
        ->default_val(100000);
    add_common(certify_cmd);

    MeasureFlags measure_flags;
    double measure_base = 0;
    double measure_nu = 0;
    auto* measure_cmd = app.add_subcommand("measure", "weighted length of an interval");
    measure_cmd->add_option("--family", measure_flags.family, "weight family")
        ->check(CLI::IsMember({"quad", "pow"}))
        ->required();
    auto* mb_opt = measure_cmd->add_option("--base", measure_base, "base parameter a > 0");
    measure_cmd->add_option("--lambda", measure_flags.lambda, "quadratic weight parameter")
        ->default_val(1.0);
    auto* nu_opt = measure_cmd->add_option("--nu", measure_nu, "power weight exponent (> 1)");
    measure_cmd->add_option("--lo", measure_flags.lo, "interval lower end (real or -inf)")->required();
    measure_cmd->add_option("--hi", measure_flags.hi, "interval upper end (real or +inf)")->required();
    measure_cmd->add_flag("--contraction", measure_flags.contraction,
                          "also measure both images and check strict contraction");
    add_common(measure_cmd);

    AtlasFlags atlas_flags;
    std::string atlas_target;
    auto* atlas_cmd = app.add_subcommand("atlas", "non-representable set, depth-bounded");
    atlas_cmd->add_option("--base", atlas_flags.base, "base parameter, needs a <= 1/e")->required();
    atlas_cmd->add_option("--depth", atlas_flags.depth, "maximum word length")->default_val(3);
    auto* at_opt = atlas_cmd->add_option("--target", atlas_target, "also test this value's membership");
    add_common(atlas_cmd);

    double suit_base = 0;
    auto* suit_cmd = app.add_subcommand("suitability", "verdict on the base");
    suit_cmd->add_option("--base", suit_base, "base parameter a > 0")->required();
    add_common(suit_cmd);

    std::uint64_t seed = k_default_acceptance_seed;
    auto* selftest_cmd = app.add_subcommand("selftest", "run the built-in acceptance checks");
    selftest_cmd->add_option("--seed", seed, "seed for the randomized checks")
        ->default_val(k_default_acceptance_seed);
    CLI::Option* selftest_format_opt = add_common(selftest_cmd);

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return k_exit_ok;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << "\n" << k_word_grammar << "\n";
        return k_exit_usage;
    }

    try {
        Output o;
        std::string command;
        if (eval_cmd->parsed()) {
            command = "eval";
            if (steps_opt->count() == 0) eval_flags.steps = env_max_steps();
            o = do_eval(eval_flags);
        } else if (expand_cmd->parsed()) {
            command = "expand";
            o = do_expand(expand_flags);
        } else if (rt_cmd->parsed()) {
            command = "roundtrip";
            o = do_roundtrip(rt_flags);
        } else if (fp_cmd->parsed()) {
            command = "fixed-points";
            o = do_fixed_points(fp_base);
        } else if (cycle_cmd->parsed()) {
            command = "cycle";
            o = do_cycle(cycle_base, cycle_tol);
        } else if (constants_cmd->parsed()) {
            command = "constants";
            o = do_constants();
        } else if (certify_cmd->parsed()) {
            command = "certify";
            if (lambda_opt->count() > 0) certify_flags.lambda = certify_lambda;
            o = do_certify(certify_flags);
        } else if (measure_cmd->parsed()) {
            command = "measure";
            if (mb_opt->count() > 0) measure_flags.base = measure_base;
            if (nu_opt->count() > 0) measure_flags.nu = measure_nu;
            o = do_measure(measure_flags);
        } else if (atlas_cmd->parsed()) {
            command = "atlas";
            if (at_opt->count() > 0) atlas_flags.target = atlas_target;
            o = do_atlas(atlas_flags);
        } else if (suit_cmd->parsed()) {
            command = "suitability";
            o = do_suitability(suit_base);
        } else {
            command = "selftest";
            // selftest defaults to the line-oriented text rendering
            if (selftest_format_opt->count() == 0) format = "text";
            o = do_selftest(seed);
        }
        render(o, command, format, out_path, out);
        return o.code;
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << "\n";
        return k_exit_usage;
    } catch (const ParseError& e) {
        err << "usage error: " << e.what() << "\n" << k_word_grammar << "\n";
        return k_exit_usage;
    } catch (const OutOfRangeError& e) {
        err << "domain error: " << e.what() << "\n";
        return k_exit_domain;
    } catch (const NoCycleError& e) {
        err << "domain error: " << e.what() << "\n";
        return k_exit_domain;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return k_exit_domain;
    }
}

} // namespace exptower::cli
