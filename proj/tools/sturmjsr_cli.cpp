#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "sturmjsr/io.hpp"
#include "sturmjsr/sturmjsr.hpp"

namespace {

using namespace sturmjsr;
using nlohmann::json;

constexpr int exit_ok = 0;
constexpr int exit_usage = 1;
constexpr int exit_precondition = 2;
constexpr int exit_inconclusive = 3;
constexpr int exit_nonconvergence = 4;

int exit_code_for(errc code) {
    switch (code) {
    case errc::non_positive_matrix:
    case errc::not_in_class_c:
    case errc::not_in_class_d:
    case errc::out_of_interior_range:
        return exit_precondition;
    case errc::no_convergence:
    case errc::plateau_not_found:
    case errc::closed_form_mismatch:
    case errc::inconsistent_equivalences:
    case errc::incompatible_radicands:
        return exit_nonconvergence;
    default:
        return exit_usage;
    }
}

Rational positive_rational(const std::string& text, const char* name) {
    const Rational r = parse_rational(text);
    if (r <= 0) throw error(errc::non_positive_scale, std::string(name) + " must be positive");
    return r;
}

json classify_report(const MatrixPair<Rational>& pair) {
    json out;
    out["pair"] = pair_to_json(pair);
    out["A0"] = to_json(classify_matrix(pair.A0));
    out["A1"] = to_json(classify_matrix(pair.A1));
    const PairClassReport<Rational> report = classify_pair(pair);
    out["pair_class"] = to_json(report);
    if (report.in_C) {
        const auto th = thresholds(pair);
        out["thresholds"] = {{"t0", scalar_json(th.t0)}, {"t1", scalar_json(th.t1)}};
    } else {
        out["thresholds"] = nullptr;
    }
    json inv;
    for (int i = 0; i < 2; ++i) {
        const auto ev = real_eigenvalues(pair[i]);
        inv[i == 0 ? "eigenvalues_A0" : "eigenvalues_A1"] =
            ev ? json::array({scalar_json(ev->first), scalar_json(ev->second)}) : json(nullptr);
    }
    inv["trace_A0A1"] = scalar_json((pair.A0 * pair.A1).trace());
    out["invariants"] = inv;
    return out;
}

void print_json(const json& j) { std::cout << j.dump(2) << '\n'; }

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Joint spectral radius of concave-convex 2x2 matrix pairs via Sturmian measures"};
    app.require_subcommand(1);

    std::string pair_path;
    std::string t_text, param_text, target_text;
    std::string t_min_text, t_max_text, out_path;
    std::size_t max_len = 12, samples = 200, grid = 256;
    std::int64_t max_den = 50;
    bool with_upper = false;
    double tail_tol = 1e-12, resolution = 1e-9, tol = 1e-12;

    auto* classify_cmd = app.add_subcommand("classify", "Classify a pair and report thresholds");
    classify_cmd->add_option("pair", pair_path, "Pair JSON file")->required();

    auto* jsr_cmd = app.add_subcommand("jsr", "Brute-force JSR bounds over necklaces");
    jsr_cmd->add_option("pair", pair_path, "Pair JSON file")->required();
    jsr_cmd->add_option("--t", t_text, "Scale of A1 (rational or decimal)")->required();
    jsr_cmd->add_option("--max-len", max_len, "Longest word length");
    jsr_cmd->add_flag("--upper", with_upper, "Also compute the norm upper bound");

    auto* value_cmd = app.add_subcommand("sturmian-value", "Log growth rate of one Sturmian orbit");
    value_cmd->add_option("pair", pair_path, "Pair JSON file")->required();
    value_cmd->add_option("--t", t_text, "Scale of A1")->required();
    value_cmd->add_option("--param", param_text, "Parameter p/q")->required();

    auto* stair_cmd = app.add_subcommand("staircase", "Sample the parameter map on a geometric grid");
    stair_cmd->add_option("pair", pair_path, "Pair JSON file")->required();
    stair_cmd->add_option("--t-min", t_min_text, "Smallest t")->required();
    stair_cmd->add_option("--t-max", t_max_text, "Largest t")->required();
    stair_cmd->add_option("--samples", samples, "Number of samples");
    stair_cmd->add_option("--max-den", max_den, "Denominator bound");
    stair_cmd->add_option("--out", out_path, "CSV output file (stdout if omitted)");

    auto* cert_cmd = app.add_subcommand("certify", "Check the Sturmian optimality certificate at t");
    cert_cmd->add_option("pair", pair_path, "Pair JSON file")->required();
    cert_cmd->add_option("--t", t_text, "Scale of A1")->required();
    cert_cmd->add_option("--grid", grid, "Grid points per branch interval");
    cert_cmd->add_option("--tail-tol", tail_tol, "Series tail tolerance");

    auto* plateau_cmd = app.add_subcommand("plateau", "Locate the t-interval of one parameter");
    plateau_cmd->add_option("pair", pair_path, "Pair JSON file")->required();
    plateau_cmd->add_option("--param", param_text, "Parameter p/q")->required();
    plateau_cmd->add_option("--resolution", resolution, "Bisection resolution in t");
    plateau_cmd->add_option("--max-den", max_den, "Denominator bound");

    auto* cex_cmd = app.add_subcommand("counterexample", "Bracket t for a target parameter");
    cex_cmd->add_option("pair", pair_path, "Pair JSON file")->required();
    cex_cmd->add_option("--target", target_text, "Target parameter: p/q, decimal, or cf:a0,a1,...")->required();
    cex_cmd->add_option("--tol", tol, "Relative width of the final t-bracket");
    cex_cmd->add_option("--max-den", max_den, "Denominator bound");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return exit_usage;
    }

    MatrixPair<Rational> pair;
    try {
        pair = read_pair_file(pair_path);
    } catch (const error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return classify_cmd->parsed() ? exit_precondition : exit_usage;
    }

    try {
        if (classify_cmd->parsed()) {
            print_json(classify_report(pair));
        } else if (jsr_cmd->parsed()) {
            const Rational t = positive_rational(t_text, "--t");
            JsrEstimate est = jsr_lower_bruteforce(pair, t, max_len);
            if (with_upper) est.upper = jsr_upper_norm(pair, t, max_len);
            json j = to_json(est);
            if (!with_upper) j["upper"] = nullptr;
            j["t"] = to_string(t);
            print_json(j);
        } else if (value_cmd->parsed()) {
            const Rational t = positive_rational(t_text, "--t");
            if (!classify_pair(pair).in_C) throw error(errc::not_in_class_c, "pair is not concave-convex");
            std::cout << format_g17(sturmian_value(pair, t, parse_parameter(param_text))) << '\n';
        } else if (stair_cmd->parsed()) {
            const double t_min = to_double(positive_rational(t_min_text, "--t-min"));
            const double t_max = to_double(positive_rational(t_max_text, "--t-max"));
            const auto rows = staircase_scan(pair, t_min, t_max, samples, max_den);
            if (out_path.empty()) {
                write_staircase_csv(std::cout, rows);
            } else {
                std::ofstream out(out_path);
                if (!out) throw error(errc::invalid_argument, "cannot write " + out_path);
                write_staircase_csv(out, rows);
            }
        } else if (cert_cmd->parsed()) {
            const Rational t = positive_rational(t_text, "--t");
            CertificateConfig cfg;
            cfg.grid_size = grid;
            cfg.series.tail_tolerance = tail_tol;
            const CertificateReport rep = certify(pair, t, cfg);
            print_json(to_json(rep));
            return rep.verdict == Verdict::Certified ? exit_ok : exit_inconclusive;
        } else if (plateau_cmd->parsed()) {
            const RationalParameter param = parse_parameter(param_text);
            const PlateauEstimate est = plateau_bounds(pair, param, resolution, max_den);
            json j = to_json(est);
            const auto th = thresholds(pair);
            if (param == RationalParameter(0, 1)) j["t_hi_exact"] = th.t0.str();
            if (param == RationalParameter(1, 1)) j["t_lo_exact"] = th.t1.str();
            print_json(j);
        } else if (cex_cmd->parsed()) {
            const SearchTarget target = parse_target(target_text);
            json j = to_json(counterexample_search(pair, target, tol, max_den));
            j["target"] = {{"text", target.description}, {"value", target.value}};
            print_json(j);
        }
    } catch (const error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_code_for(e.code());
    }
    return exit_ok;
}
