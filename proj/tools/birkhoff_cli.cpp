// Command-line front end: scheme files in, JSON verdicts out.
// Exit codes: 0 regular/pass, 1 not regular/fail, 2 inconclusive, 64 input error.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "birkhoff/birkhoff.hpp"

namespace {

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitInconclusive = 2;
constexpr int kExitInputError = 64;

void emit(const birkhoff::json& j) { std::cout << j.dump(2) << "\n"; }

birkhoff::LatticePoint parse_int_pair(const std::string& text, const std::string& flag) {
    const auto comma = text.find(',');
    if (comma == std::string::npos) throw birkhoff::InputError(flag + ": expected two integers as \"u,v\"");
    try {
        const int u = std::stoi(text.substr(0, comma));
        const int v = std::stoi(text.substr(comma + 1));
        return {u, v};
    } catch (const std::exception&) {
        throw birkhoff::InputError(flag + ": expected two integers as \"u,v\"");
    }
}

int run_check(const std::string& path, std::size_t max_enum, int trials, std::uint64_t seed, int range) {
    const birkhoff::SchemeFile sf = birkhoff::load_scheme(path);
    birkhoff::DecideOptions opt;
    opt.max_enum = max_enum;
    opt.probe_trials = trials;
    opt.probe_seed = seed;
    opt.probe_range = range;
    const birkhoff::DecisionVerdict v =
        birkhoff::decide(sf.scheme.A, sf.scheme.S, sf.scheme.p, sf.scheme.q, sf.scheme.grid, opt);
    for (const auto& step : v.trace) std::cerr << "[" << step.rule << "] " << step.detail << "\n";
    for (const auto& flag : v.conjectural_flags) std::cerr << "[conjectural] " << flag << "\n";
    emit(birkhoff::verdict_to_json(v));
    switch (v.status) {
        case birkhoff::Status::Regular:
        case birkhoff::Status::AlmostRegular: return kExitPass;
        case birkhoff::Status::NotRegular:
        case birkhoff::Status::NotAlmostRegular: return kExitFail;
        case birkhoff::Status::Inconclusive: return kExitInconclusive;
    }
    return kExitInconclusive;
}

int run_polya(const std::string& path, const std::string& variant, std::size_t max_enum) {
    const birkhoff::SchemeFile sf = birkhoff::load_scheme(path);
    const auto& s = sf.scheme;
    birkhoff::ConditionReport rep;
    if (variant == "classical") {
        rep = birkhoff::classical_polya(s.A, s.S, (s.p + 1) * (s.q + 1), max_enum);
    } else if (variant == "rectangular") {
        rep = birkhoff::rectangular_polya(s.A, s.S, s.p, s.q, max_enum);
    } else if (variant == "grid") {
        rep = birkhoff::grid_polya(s.A, s.S, s.p, s.q);
    } else {
        throw birkhoff::InputError("--variant: expected classical, rectangular or grid");
    }
    emit(birkhoff::report_to_json(rep));
    return rep.passed ? kExitPass : kExitFail;
}

int run_blowup(const std::string& path, std::optional<int> p, std::optional<int> q, bool inverse) {
    const birkhoff::SchemeFile sf = birkhoff::load_scheme(path);
    const int pp = p.value_or(sf.scheme.p);
    const int qq = q.value_or(sf.scheme.q);
    const birkhoff::LowerSet out =
        inverse ? birkhoff::collapse(sf.scheme.S, pp, qq) : birkhoff::blow_up(sf.scheme.S, pp, qq);
    emit(birkhoff::json{{"columns", out.y_profile()}, {"p", pp}, {"q", qq}});
    return kExitPass;
}

int run_shift(const std::string& path) {
    const birkhoff::SchemeFile sf = birkhoff::load_scheme(path);
    const auto plan = birkhoff::find_shift_to_grid(sf.scheme.A, sf.scheme.S, sf.scheme.p, sf.scheme.q);
    birkhoff::json j;
    j["exists"] = plan.has_value();
    j["plan"] = plan ? birkhoff::plan_to_json(*plan) : birkhoff::json(nullptr);
    emit(j);
    return plan ? kExitPass : kExitFail;
}

int run_hermite(const std::string& path, const std::string& derivative, const std::string& node) {
    const birkhoff::SchemeFile sf = birkhoff::load_scheme(path);
    const auto& s = sf.scheme;
    if (!s.grid) throw birkhoff::InputError("hermite needs nodes in the scheme file");
    if (!s.A.is_lower()) throw birkhoff::InputError("hermite needs a lower order set A");
    const birkhoff::LowerSet a = s.A.to_lower();
    if (!(birkhoff::blow_up(a, s.p, s.q) == s.S))
        throw birkhoff::InputError("hermite needs S equal to the blow-up of A");
    const birkhoff::LatticePoint uv = parse_int_pair(derivative, "--derivative");
    const birkhoff::LatticePoint st = parse_int_pair(node, "--node");
    const birkhoff::Poly2 h = birkhoff::fundamental(*s.grid, a, uv, st.x, st.y);
    emit(birkhoff::json{{"derivative", {uv.x, uv.y}},
                        {"node", {st.x, st.y}},
                        {"polynomial", birkhoff::polynomial_to_json(h)}});
    return kExitPass;
}

int run_det(const std::string& path) {
    const birkhoff::SchemeFile sf = birkhoff::load_scheme(path);
    if (!sf.scheme.grid) throw birkhoff::InputError("det needs nodes in the scheme file");
    const birkhoff::Rational d =
        birkhoff::determinant(*sf.scheme.grid, sf.scheme.A, sf.scheme.S);
    emit(birkhoff::json{{"determinant", birkhoff::rational_to_string(d)}});
    return d != 0 ? kExitPass : kExitFail;
}

int run_solve(const std::string& path, const std::string& data_path) {
    const birkhoff::SchemeFile sf = birkhoff::load_scheme(path);
    if (!sf.scheme.grid) throw birkhoff::InputError("solve needs nodes in the scheme file");
    birkhoff::InterpolationData data;
    if (!data_path.empty()) {
        std::ifstream in(data_path);
        if (!in) throw birkhoff::InputError("cannot open data file: " + data_path);
        birkhoff::json j;
        try {
            j = birkhoff::json::parse(in);
        } catch (const birkhoff::json::parse_error& e) {
            throw birkhoff::InputError("data file " + data_path + ": " + e.what());
        }
        data = birkhoff::parse_data(j, "data");
    } else if (sf.data) {
        data = *sf.data;
    } else {
        throw birkhoff::InputError("solve needs --data or a data field in the scheme file");
    }
    try {
        const birkhoff::Poly2 sol = birkhoff::solve(*sf.scheme.grid, sf.scheme.A, sf.scheme.S, data);
        emit(birkhoff::json{{"singular", false}, {"polynomial", birkhoff::polynomial_to_json(sol)}});
        return kExitPass;
    } catch (const birkhoff::SingularSystemError&) {
        emit(birkhoff::json{{"singular", true}, {"polynomial", nullptr}});
        return kExitFail;
    }
}

int run_render(const std::string& path, bool emit_json) {
    const birkhoff::SchemeFile sf = birkhoff::load_scheme(path);
    if (emit_json) {
        emit(birkhoff::scheme_to_json(sf.scheme, sf.data));
        return kExitPass;
    }
    std::cout << birkhoff::render_ascii(sf.scheme.S, sf.scheme.A, sf.scheme.p, sf.scheme.q);
    return kExitPass;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact decision engine for bivariate uniform Birkhoff interpolation schemes"};
    app.require_subcommand(1);

    std::string file;
    std::size_t max_enum = birkhoff::kDefaultEnumLimit;
    int trials = birkhoff::kDefaultProbeTrials;
    std::uint64_t seed = 0;
    int range = birkhoff::kDefaultProbeRange;
    std::string variant = "classical";
    std::optional<int> flag_p, flag_q;
    std::string derivative, node, data_path;
    bool emit_json = false;

    auto* check = app.add_subcommand("check", "decide regularity and print a JSON verdict");
    check->add_option("file", file, "scheme file")->required();
    check->add_option("--max-enum", max_enum, "lower-subset enumeration cap");
    check->add_option("--trials", trials, "probe trial count");
    check->add_option("--seed", seed, "probe seed");
    check->add_option("--range", range, "probe coordinate range");

    auto* polya = app.add_subcommand("polya", "run one Polya-type screen");
    polya->add_option("file", file, "scheme file")->required();
    polya->add_option("--variant", variant, "classical | rectangular | grid");
    polya->add_option("--max-enum", max_enum, "lower-subset enumeration cap");

    auto* blowup = app.add_subcommand("blowup", "blow up the shape S");
    blowup->add_option("file", file, "scheme file")->required();
    blowup->add_option("--p", flag_p, "override p");
    blowup->add_option("--q", flag_q, "override q");

    auto* coll = app.add_subcommand("collapse", "collapse the shape S");
    coll->add_option("file", file, "scheme file")->required();
    coll->add_option("--p", flag_p, "override p");
    coll->add_option("--q", flag_q, "override q");

    auto* shift = app.add_subcommand("shift", "find a shift of A onto the sparse grid of S");
    shift->add_option("file", file, "scheme file")->required();

    auto* hermite = app.add_subcommand("hermite", "fundamental polynomial of a lower scheme");
    hermite->add_option("file", file, "scheme file")->required();
    hermite->add_option("--derivative", derivative, "order pair u,v")->required();
    hermite->add_option("--node", node, "node index pair s,t")->required();

    auto* det = app.add_subcommand("det", "exact collocation determinant");
    det->add_option("file", file, "scheme file")->required();

    auto* solve = app.add_subcommand("solve", "solve the collocation system");
    solve->add_option("file", file, "scheme file")->required();
    solve->add_option("--data", data_path, "collocation data file");

    auto* render = app.add_subcommand("render", "ASCII staircase of the scheme");
    render->add_option("file", file, "scheme file")->required();
    render->add_flag("--emit-json", emit_json, "emit the parsed scheme as canonical JSON");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n";
        return kExitInputError;
    }

    try {
        if (check->parsed()) return run_check(file, max_enum, trials, seed, range);
        if (polya->parsed()) return run_polya(file, variant, max_enum);
        if (blowup->parsed()) return run_blowup(file, flag_p, flag_q, false);
        if (coll->parsed()) return run_blowup(file, flag_p, flag_q, true);
        if (shift->parsed()) return run_shift(file);
        if (hermite->parsed()) return run_hermite(file, derivative, node);
        if (det->parsed()) return run_det(file);
        if (solve->parsed()) return run_solve(file, data_path);
        if (render->parsed()) return run_render(file, emit_json);
    } catch (const birkhoff::InputError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kExitInputError;
    } catch (const birkhoff::EnumerationLimitError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kExitInputError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInputError;
    }
    return kExitInputError;
}
