#pragma once

#include <fstream>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "birkhoff/errors.hpp"
#include "birkhoff/lattice.hpp"
#include "birkhoff/polya.hpp"
#include "birkhoff/rational.hpp"
#include "birkhoff/reduction.hpp"
#include "birkhoff/scheme.hpp"

namespace birkhoff {

using nlohmann::json;

// ---------------------------------------------------------------------------
// JSON <-> exact values

inline Rational json_to_rational(const json& j, const std::string& field) {
    if (j.is_number_integer()) return Rational(j.get<long long>());
    if (j.is_string()) return parse_rational(j.get<std::string>());
    throw InputError(field + ": rationals must be integers or \"num/den\" strings");
}

inline json rational_to_json(const Rational& r) {
    if (denominator(r) == 1) {
        const BigInt num = numerator(r);
        if (num >= std::numeric_limits<long long>::min() && num <= std::numeric_limits<long long>::max())
            return json(static_cast<long long>(num));
    }
    return json(rational_to_string(r));
}

namespace detail {
inline LatticePoint json_to_point(const json& j, const std::string& field) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number_integer() || !j[1].is_number_integer())
        throw InputError(field + ": points must be [x, y] integer pairs");
    return {j[0].get<int>(), j[1].get<int>()};
}

inline std::vector<LatticePoint> json_to_points(const json& j, const std::string& field) {
    if (!j.is_array()) throw InputError(field + ": expected an array of points");
    std::vector<LatticePoint> pts;
    pts.reserve(j.size());
    for (const auto& e : j) pts.push_back(json_to_point(e, field));
    return pts;
}

inline std::vector<Rational> json_to_rationals(const json& j, const std::string& field) {
    if (!j.is_array() || j.empty()) throw InputError(field + ": expected a nonempty array of rationals");
    std::vector<Rational> out;
    out.reserve(j.size());
    for (const auto& e : j) out.push_back(json_to_rational(e, field));
    return out;
}
}  // namespace detail

// Accepts S as {"points": [[x,y],...]}, {"columns": [h0,h1,...]} or
// {"corners": [[x,y],...]}.
inline LowerSet parse_lower_set(const json& j, const std::string& field) {
    if (!j.is_object()) throw InputError(field + ": expected an object with points, columns or corners");
    const int keys = static_cast<int>(j.contains("points")) + static_cast<int>(j.contains("columns")) +
                     static_cast<int>(j.contains("corners"));
    if (keys != 1) throw InputError(field + ": give exactly one of points, columns, corners");
    if (j.contains("points")) {
        const auto pts = detail::json_to_points(j["points"], field + ".points");
        if (!is_lower(pts)) throw InputError(field + ".points: not a lower set");
        return LowerSet::from_points(pts);
    }
    if (j.contains("columns")) {
        const json& cols = j["columns"];
        if (!cols.is_array()) throw InputError(field + ".columns: expected an array of column heights");
        std::vector<int> h;
        h.reserve(cols.size());
        for (const auto& e : cols) {
            if (!e.is_number_integer()) throw InputError(field + ".columns: heights must be integers");
            h.push_back(e.get<int>());
        }
        return LowerSet::from_columns(std::move(h));
    }
    return LowerSet::from_corners(detail::json_to_points(j["corners"], field + ".corners"));
}

inline json lower_set_to_json(const LowerSet& s) { return json{{"columns", s.y_profile()}}; }

// ---------------------------------------------------------------------------
// Scheme files

inline InterpolationData parse_data(const json& j, const std::string& field) {
    if (!j.is_array()) throw InputError(field + ": expected an array of collocation entries");
    InterpolationData data;
    for (const auto& e : j) {
        if (!e.is_object() || !e.contains("i") || !e.contains("j") || !e.contains("order") || !e.contains("value"))
            throw InputError(field + ": each entry needs i, j, order, value");
        if (!e["i"].is_number_integer() || !e["j"].is_number_integer())
            throw InputError(field + ".i/.j: node indices must be integers");
        CollocationKey key{e["i"].get<int>(), e["j"].get<int>(), detail::json_to_point(e["order"], field + ".order")};
        if (!data.emplace(key, json_to_rational(e["value"], field + ".value")).second)
            throw InputError(field + ": duplicate collocation entry");
    }
    return data;
}

struct SchemeFile {
    Scheme scheme;
    std::optional<InterpolationData> data;
};

inline SchemeFile parse_scheme_json(const json& j) {
    if (!j.is_object()) throw InputError("scheme file: expected a JSON object");
    for (const auto& field : {"p", "q", "A", "S"})
        if (!j.contains(field)) throw InputError(std::string("scheme file: missing field ") + field);
    if (!j["p"].is_number_integer() || !j["q"].is_number_integer())
        throw InputError("p/q: expected integers");

    const int p = j["p"].get<int>();
    const int q = j["q"].get<int>();
    if (p < 0 || q < 0) throw InputError("p/q: must be >= 0");
    DerivativeSet a(detail::json_to_points(j["A"], "A"));
    LowerSet s = parse_lower_set(j["S"], "S");
    std::optional<NodeGrid> grid;
    if (j.contains("nodes")) {
        const json& n = j["nodes"];
        if (!n.is_object() || !n.contains("xs") || !n.contains("ys"))
            throw InputError("nodes: expected an object with xs and ys");
        grid = NodeGrid(detail::json_to_rationals(n["xs"], "nodes.xs"),
                        detail::json_to_rationals(n["ys"], "nodes.ys"));
        if (grid->p() != p || grid->q() != q)
            throw InputError("nodes: the grid must have p+1 x values and q+1 y values");
    }
    SchemeFile out{Scheme{p, q, std::move(a), std::move(s), std::move(grid)}, std::nullopt};
    if (j.contains("data")) out.data = parse_data(j["data"], "data");
    return out;
}

inline SchemeFile load_scheme(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open scheme file: " + path);
    json j;
    try {
        j = json::parse(in);
    } catch (const json::parse_error& e) {
        throw InputError("scheme file " + path + ": " + e.what());
    }
    return parse_scheme_json(j);
}

inline json scheme_to_json(const Scheme& scheme, const std::optional<InterpolationData>& data = std::nullopt) {
    json j;
    j["p"] = scheme.p;
    j["q"] = scheme.q;
    json a = json::array();
    for (const auto& pt : scheme.A.points()) a.push_back({pt.x, pt.y});
    j["A"] = std::move(a);
    j["S"] = lower_set_to_json(scheme.S);
    if (scheme.grid) {
        json xs = json::array(), ys = json::array();
        for (const auto& x : scheme.grid->xs()) xs.push_back(rational_to_json(x));
        for (const auto& y : scheme.grid->ys()) ys.push_back(rational_to_json(y));
        j["nodes"] = json{{"xs", std::move(xs)}, {"ys", std::move(ys)}};
    }
    if (data) {
        json d = json::array();
        for (const auto& [key, value] : *data) {
            d.push_back(json{{"i", key.i},
                             {"j", key.j},
                             {"order", {key.order.x, key.order.y}},
                             {"value", rational_to_json(value)}});
        }
        j["data"] = std::move(d);
    }
    return j;
}

// ---------------------------------------------------------------------------
// Verdict and report serialization

inline json violation_to_json(const Violation& viol) {
    json j;
    j["rule"] = viol.rule;
    j["witness"] = viol.witness ? lower_set_to_json(*viol.witness) : json(nullptr);
    j["detail"] = viol.detail;
    return j;
}

inline json report_to_json(const ConditionReport& rep) {
    json v = json::array();
    for (const auto& viol : rep.violations) v.push_back(violation_to_json(viol));
    return json{{"passed", rep.passed}, {"conjectural", rep.conjectural}, {"violations", std::move(v)}};
}

inline json grid_to_json(const NodeGrid& grid) {
    json xs = json::array(), ys = json::array();
    for (const auto& x : grid.xs()) xs.push_back(rational_to_json(x));
    for (const auto& y : grid.ys()) ys.push_back(rational_to_json(y));
    return json{{"xs", std::move(xs)}, {"ys", std::move(ys)}};
}

inline json verdict_to_json(const DecisionVerdict& v) {
    json trace = json::array();
    for (const auto& step : v.trace) trace.push_back(json{{"rule", step.rule}, {"detail", step.detail}});
    json j;
    j["status"] = to_string(v.status);
    j["trace"] = std::move(trace);
    j["certificate"] = v.certificate ? report_to_json(*v.certificate) : json(nullptr);
    j["witness"] = v.witness ? grid_to_json(*v.witness) : json(nullptr);
    j["conjectural_flags"] = v.conjectural_flags;
    return j;
}

inline json polynomial_to_json(const Poly2& poly) {
    json terms = json::array();
    for (const auto& [e, c] : poly.terms())
        terms.push_back(json{{"exponent", {e.first, e.second}}, {"coefficient", rational_to_json(c)}});
    return terms;
}

inline json plan_to_json(const ShiftPlan& plan) {
    json moves = json::array();
    for (const auto& m : plan)
        moves.push_back(json{{"from", {m.from.x, m.from.y}},
                             {"to", {m.to.x, m.to.y}},
                             {"direction", m.direction == ShiftDirection::Right ? "right" : "up"}});
    return moves;
}

// ---------------------------------------------------------------------------
// ASCII rendering

// Staircase diagram of S, top row first: points of S print as '.', points of
// A inside S as '*', sparse grid points (S n Z^{p,q}) as '+' (overlaid in
// that order), with spaces outside S.
inline std::string render_ascii(const LowerSet& s, const DerivativeSet& a, int p, int q) {
    if (s.empty()) return "(empty)\n";
    std::vector<std::string> rows;
    const int height = s.y_profile()[0];
    const int width = s.column_count();
    for (int y = height; y >= 0; --y) {
        std::string row;
        for (int x = 0; x < width; ++x) {
            const LatticePoint pt{x, y};
            if (!s.contains(pt)) {
                row += ' ';
                continue;
            }
            char c = '.';
            if (a.contains(pt)) c = '*';
            if (x % (p + 1) == 0 && y % (q + 1) == 0) c = '+';
            row += c;
        }
        while (!row.empty() && row.back() == ' ') row.pop_back();
        rows.push_back(std::move(row));
    }
    std::string out;
    for (const auto& row : rows) {
        out += row;
        out += '\n';
    }
    return out;
}

}  // namespace birkhoff
