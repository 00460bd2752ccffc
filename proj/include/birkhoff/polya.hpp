#pragma once

#include <algorithm>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "birkhoff/errors.hpp"
#include "birkhoff/lattice.hpp"
#include "birkhoff/matching.hpp"
#include "birkhoff/scheme.hpp"

namespace birkhoff {

// One failed necessary condition. `rule` names the engine rule that was
// violated; `witness` carries the offending lower set when the rule has one.
struct Violation {
    std::string rule;
    std::optional<LowerSet> witness;
    std::string detail;
};

// Outcome of a bundle of necessary conditions. `conjectural` marks reports
// whose rule is a conjecture: a violation there must never be presented as a
// theorem-backed certificate.
struct ConditionReport {
    bool passed = true;
    std::vector<Violation> violations;
    bool conjectural = false;
};

namespace detail {
inline void sort_and_finalize(ConditionReport& rep) {
    std::stable_sort(rep.violations.begin(), rep.violations.end(), [](const Violation& a, const Violation& b) {
        if (a.witness.has_value() != b.witness.has_value()) return a.witness.has_value() < b.witness.has_value();
        if (a.witness && b.witness) {
            if (a.witness->size() != b.witness->size()) return a.witness->size() < b.witness->size();
            return a.witness->y_profile() < b.witness->y_profile();
        }
        return a.detail < b.detail;
    });
    rep.passed = rep.violations.empty();
}
}  // namespace detail

// Classical Polya necessary condition with n nodes: every lower L inside S
// must satisfy n |L n A| >= |L|. Witnesses are the violating lower sets,
// smallest first.
inline ConditionReport classical_polya(const DerivativeSet& a, const LowerSet& s, int n,
                                       std::size_t max_enum = kDefaultEnumLimit) {
    if (n < 1) throw InputError("node count must be >= 1");
    ConditionReport rep;
    for_each_lower_subset(s, [&](const LowerSet& l) {
        const std::size_t hits = a.count_in(l);
        if (static_cast<std::size_t>(n) * hits < l.size()) {
            rep.violations.push_back({"Polya inequality (classical)", l,
                                      std::to_string(n) + "*" + std::to_string(hits) + " < |L| = " +
                                          std::to_string(l.size())});
        }
    }, max_enum);
    detail::sort_and_finalize(rep);
    return rep;
}

// Strengthened Polya condition for rectangular grids: with n = (p+1)(q+1),
// every nonempty lower L inside S must satisfy
//   n |A n L| >= |L| + pq |A n bd(L)| + (p+q) |A n bd_e(L)|
//                 + p |A n bd_y(L)| + q |A n bd_x(L)|.
inline ConditionReport rectangular_polya(const DerivativeSet& a, const LowerSet& s, int p, int q,
                                         std::size_t max_enum = kDefaultEnumLimit) {
    if (p < 0 || q < 0) throw InputError("grid shape parameters must be >= 0");
    const long long n = static_cast<long long>(p + 1) * (q + 1);
    ConditionReport rep;
    for_each_lower_subset(s, [&](const LowerSet& l) {
        if (l.empty()) return;
        const BoundaryPartition bp = boundary_partition(l);
        const auto count_in = [&](const std::vector<LatticePoint>& pts) {
            long long c = 0;
            for (const auto& pt : pts)
                if (a.contains(pt)) ++c;
            return c;
        };
        const long long boundary_hits = count_in(bp.exterior) + count_in(bp.interior) + count_in(bp.xdir) + count_in(bp.ydir);
        const long long lhs = n * static_cast<long long>(a.count_in(l));
        const long long rhs = static_cast<long long>(l.size()) + static_cast<long long>(p) * q * boundary_hits +
                              static_cast<long long>(p + q) * count_in(bp.exterior) +
                              static_cast<long long>(p) * count_in(bp.ydir) +
                              static_cast<long long>(q) * count_in(bp.xdir);
        if (lhs < rhs) {
            rep.violations.push_back({"Polya inequality (rectangular)", l,
                                      std::to_string(lhs) + " < " + std::to_string(rhs)});
        }
    }, max_enum);
    detail::sort_and_finalize(rep);
    return rep;
}

namespace detail {
// Lower closure of a point set: union of the boxes R(p).
inline LowerSet lower_closure(const std::vector<LatticePoint>& pts) {
    if (pts.empty()) return LowerSet();
    int max_x = 0;
    for (const auto& p : pts) max_x = std::max(max_x, p.x);
    std::vector<int> h(static_cast<std::size_t>(max_x) + 1, -1);
    for (const auto& p : pts)
        for (int i = 0; i <= p.x; ++i) h[static_cast<std::size_t>(i)] = std::max(h[static_cast<std::size_t>(i)], p.y);
    return LowerSet::from_columns(std::move(h));
}

struct GridMatching {
    std::vector<LatticePoint> grid;   // S on the sparse lattice, lex order
    std::vector<int> grid_match;      // index into A's points, -1 if unmatched
    std::vector<int> elem_match;      // index into grid, -1 if unmatched
    int matched = 0;
};

inline GridMatching match_grid_to_elements(const DerivativeSet& a, const LowerSet& s, int p, int q) {
    GridMatching gm;
    gm.grid = grid_points(s, p, q);
    BipartiteMatcher matcher(static_cast<int>(gm.grid.size()), static_cast<int>(a.size()));
    for (std::size_t gi = 0; gi < gm.grid.size(); ++gi)
        for (std::size_t ai = 0; ai < a.points().size(); ++ai)
            if (dominates(gm.grid[gi], a.points()[ai])) matcher.add_edge(static_cast<int>(gi), static_cast<int>(ai));
    gm.matched = matcher.solve();
    gm.grid_match = matcher.left_match();
    gm.elem_match = matcher.right_match();
    return gm;
}
}  // namespace detail

// Grid Polya condition, decided in polynomial time: |L n A| >= n_{p,q}(L)
// for all lower L inside S iff a matching saturating the sparse grid points
// of S exists (each grid point matched to a dominated element of A). On
// failure the Hall violator yields an explicit witness lower set. The rule
// is conjectural as a sufficient regularity test for general (p,q).
inline ConditionReport grid_polya(const DerivativeSet& a, const LowerSet& s, int p, int q) {
    if (p < 0 || q < 0) throw InputError("grid shape parameters must be >= 0");
    ConditionReport rep;
    rep.conjectural = true;
    const detail::GridMatching gm = detail::match_grid_to_elements(a, s, p, q);
    if (gm.matched == static_cast<int>(gm.grid.size())) return rep;

    // Alternating reachability from every unmatched grid point; the closure
    // of the reached grid points violates the counting inequality.
    std::vector<bool> seen_grid(gm.grid.size(), false), seen_elem(a.size(), false);
    std::vector<std::size_t> stack;
    for (std::size_t gi = 0; gi < gm.grid.size(); ++gi)
        if (gm.grid_match[gi] < 0) {
            seen_grid[gi] = true;
            stack.push_back(gi);
        }
    while (!stack.empty()) {
        const std::size_t gi = stack.back();
        stack.pop_back();
        for (std::size_t ai = 0; ai < a.points().size(); ++ai) {
            if (seen_elem[ai] || !dominates(gm.grid[gi], a.points()[ai])) continue;
            seen_elem[ai] = true;
            const int partner = gm.elem_match[ai];
            if (partner >= 0 && !seen_grid[static_cast<std::size_t>(partner)]) {
                seen_grid[static_cast<std::size_t>(partner)] = true;
                stack.push_back(static_cast<std::size_t>(partner));
            }
        }
    }
    std::vector<LatticePoint> reached;
    for (std::size_t gi = 0; gi < gm.grid.size(); ++gi)
        if (seen_grid[gi]) reached.push_back(gm.grid[gi]);
    const LowerSet witness = detail::lower_closure(reached);
    rep.violations.push_back({"grid Polya (Conjecture 3.12)", witness,
                              "|L n A| = " + std::to_string(a.count_in(witness)) + " < n_{p,q}(L) = " +
                                  std::to_string(grid_count(witness, p, q))});
    detail::sort_and_finalize(rep);
    rep.conjectural = true;
    return rep;
}

// Reference implementation of the same condition by full enumeration of the
// lower subsets of S. Exponential; used to cross-check grid_polya.
inline ConditionReport grid_polya_bruteforce(const DerivativeSet& a, const LowerSet& s, int p, int q,
                                             std::size_t max_enum = kDefaultEnumLimit) {
    if (p < 0 || q < 0) throw InputError("grid shape parameters must be >= 0");
    ConditionReport rep;
    rep.conjectural = true;
    for_each_lower_subset(s, [&](const LowerSet& l) {
        const std::size_t need = grid_count(l, p, q);
        const std::size_t hits = a.count_in(l);
        if (hits < need) {
            rep.violations.push_back({"grid Polya (Conjecture 3.12)", l,
                                      "|L n A| = " + std::to_string(hits) + " < n_{p,q}(L) = " + std::to_string(need)});
        }
    }, max_enum);
    detail::sort_and_finalize(rep);
    rep.conjectural = true;
    return rep;
}

enum class ShiftDirection { Right, Up };

// One unit move of one element.
struct ShiftMove {
    LatticePoint from;
    LatticePoint to;
    ShiftDirection direction = ShiftDirection::Right;
};

using ShiftPlan = std::vector<ShiftMove>;

// Constructs a collision-free sequence of unit up/right moves carrying A onto
// the sparse grid points of S, or returns nullopt when the grid Polya
// condition fails (no such shift exists). Matched pairs are routed towards
// targets in decreasing lex order, each element all-right-then-all-up; when a
// still-unmoved element sits on the path, the two swap targets (the blocker
// dominates the mover, so both reassignments stay dominated) and the blocker,
// whose remaining path is a clear suffix, travels first.
inline std::optional<ShiftPlan> find_shift_to_grid(const DerivativeSet& a, const LowerSet& s, int p, int q) {
    const std::vector<LatticePoint> targets = grid_points(s, p, q);
    if (a.size() != targets.size())
        throw InputError("shift search requires |A| = grid_count(S, p, q) (got " + std::to_string(a.size()) + " vs " +
                         std::to_string(targets.size()) + ")");
    const detail::GridMatching gm = detail::match_grid_to_elements(a, s, p, q);
    if (gm.matched != static_cast<int>(targets.size())) return std::nullopt;

    std::vector<int> elem_of_target = gm.grid_match;
    std::vector<int> target_of_elem = gm.elem_match;
    std::vector<LatticePoint> pos(a.points().begin(), a.points().end());
    std::vector<bool> placed(a.size(), false);

    std::vector<std::size_t> order(targets.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t l, std::size_t r) { return targets[r] < targets[l]; });

    const auto path_of = [](LatticePoint from, LatticePoint to) {
        std::vector<LatticePoint> path;
        for (int x = from.x + 1; x <= to.x; ++x) path.push_back({x, from.y});
        for (int y = from.y + 1; y <= to.y; ++y) path.push_back({to.x, y});
        return path;
    };

    ShiftPlan plan;
    for (const std::size_t ti : order) {
        for (;;) {
            const int ai = elem_of_target[ti];
            const std::vector<LatticePoint> path = path_of(pos[static_cast<std::size_t>(ai)], targets[ti]);
            int blocker = -1;
            for (auto it = path.rbegin(); it != path.rend() && blocker < 0; ++it) {
                for (std::size_t bj = 0; bj < pos.size(); ++bj) {
                    if (static_cast<int>(bj) == ai || placed[bj]) continue;
                    if (pos[bj] == *it) {
                        blocker = static_cast<int>(bj);
                        break;
                    }
                }
            }
            if (blocker < 0) {
                LatticePoint cur = pos[static_cast<std::size_t>(ai)];
                for (const auto& step : path) {
                    plan.push_back({cur, step, step.x > cur.x ? ShiftDirection::Right : ShiftDirection::Up});
                    cur = step;
                }
                pos[static_cast<std::size_t>(ai)] = cur;
                placed[static_cast<std::size_t>(ai)] = true;
                break;
            }
            // Swap the two assignments and let the blocker take this target.
            const int other_target = target_of_elem[static_cast<std::size_t>(blocker)];
            elem_of_target[ti] = blocker;
            target_of_elem[static_cast<std::size_t>(blocker)] = static_cast<int>(ti);
            elem_of_target[static_cast<std::size_t>(other_target)] = ai;
            target_of_elem[static_cast<std::size_t>(ai)] = other_target;
        }
    }
    return plan;
}

// Replays a plan: each move must start from an occupied point, advance one
// unit right or up as labelled, land inside S, and land on a free point.
inline bool verify_shift(const DerivativeSet& a, const LowerSet& s, const ShiftPlan& plan) {
    std::set<std::pair<int, int>> occupied;
    for (const auto& pt : a.points()) occupied.insert({pt.x, pt.y});
    for (const auto& move : plan) {
        const std::pair<int, int> from{move.from.x, move.from.y};
        const std::pair<int, int> to{move.to.x, move.to.y};
        if (occupied.count(from) == 0) return false;
        const int dx = move.to.x - move.from.x;
        const int dy = move.to.y - move.from.y;
        if (move.direction == ShiftDirection::Right && (dx != 1 || dy != 0)) return false;
        if (move.direction == ShiftDirection::Up && (dx != 0 || dy != 1)) return false;
        if (!s.contains(move.to)) return false;
        if (occupied.count(to) != 0) return false;
        occupied.erase(from);
        occupied.insert(to);
    }
    return true;
}

// verify_shift plus the final-configuration check: the moved set must coincide
// with the sparse grid points of S.
inline bool verify_shift_to_grid(const DerivativeSet& a, const LowerSet& s, int p, int q, const ShiftPlan& plan) {
    if (!verify_shift(a, s, plan)) return false;
    std::set<std::pair<int, int>> occupied;
    for (const auto& pt : a.points()) occupied.insert({pt.x, pt.y});
    for (const auto& move : plan) {
        occupied.erase({move.from.x, move.from.y});
        occupied.insert({move.to.x, move.to.y});
    }
    std::set<std::pair<int, int>> wanted;
    for (const auto& g : grid_points(s, p, q)) wanted.insert({g.x, g.y});
    return occupied == wanted;
}

// Breadth-first search over all configurations reachable from A by unit
// down/left moves (never onto an occupied point, never out of the first
// quadrant). Every reachable configuration that is a lower set R is returned
// with its blow-up R^{p,q}, sorted by profile. Candidate generator for
// almost-regular shapes; exponential, hence the bounds.
inline std::vector<std::pair<LowerSet, LowerSet>> inverse_shift_candidates(const DerivativeSet& a, int p, int q,
                                                                           std::size_t max_elements = 8,
                                                                           std::size_t max_states = 100000) {
    if (a.size() > max_elements)
        throw EnumerationLimitError("inverse shift search bound exceeded: |A| = " + std::to_string(a.size()));
    using Config = std::vector<std::pair<int, int>>;
    const auto canonical = [](std::vector<std::pair<int, int>> pts) {
        std::sort(pts.begin(), pts.end());
        return pts;
    };
    Config start;
    for (const auto& pt : a.points()) start.push_back({pt.x, pt.y});
    start = canonical(start);

    std::set<Config> visited{start};
    std::vector<Config> frontier{start};
    std::set<std::vector<int>> found_profiles;
    std::vector<std::pair<LowerSet, LowerSet>> out;

    const auto consider = [&](const Config& cfg) {
        std::vector<LatticePoint> pts;
        for (const auto& [x, y] : cfg) pts.push_back({x, y});
        if (!is_lower(pts)) return;
        const LowerSet r = LowerSet::from_points(pts);
        if (found_profiles.insert(r.y_profile()).second) out.push_back({r, blow_up(r, p, q)});
    };
    consider(start);

    while (!frontier.empty()) {
        const Config cfg = frontier.back();
        frontier.pop_back();
        for (std::size_t i = 0; i < cfg.size(); ++i) {
            for (const auto& [dx, dy] : {std::pair<int, int>{-1, 0}, std::pair<int, int>{0, -1}}) {
                const std::pair<int, int> to{cfg[i].first + dx, cfg[i].second + dy};
                if (to.first < 0 || to.second < 0) continue;
                if (std::find(cfg.begin(), cfg.end(), to) != cfg.end()) continue;
                Config next = cfg;
                next[i] = to;
                next = canonical(next);
                if (!visited.insert(next).second) continue;
                if (visited.size() > max_states)
                    throw EnumerationLimitError("inverse shift search exceeded the state bound");
                consider(next);
                frontier.push_back(next);
            }
        }
    }
    std::sort(out.begin(), out.end(),
              [](const auto& l, const auto& r) { return l.first.y_profile() < r.first.y_profile(); });
    return out;
}

// Structural necessary conditions for regularity of a normal scheme:
//   (a) |A| <= |A_x| |A_y|; equality forces S = R(p', q')
//   (b) sqrt(mix(A)) <= sqrt(|A|) - 1, checked in exact integer arithmetic
//   (c) the first p+1 columns of S have height (q+1)|A_y| and the first q+1
//       rows have width (p+1)|A_x|
//   (d) the blow-up of the largest lower subset of A is contained in S
// where A_x, A_y are the elements of A on the two axes.
inline ConditionReport structural_necessary(const DerivativeSet& a, const LowerSet& s, int p, int q) {
    if (p < 0 || q < 0) throw InputError("grid shape parameters must be >= 0");
    if (!is_normal(a, s, p, q)) throw InputError("structural_necessary expects a normal scheme");
    ConditionReport rep;
    const std::size_t ax = a.axis_x().size();
    const std::size_t ay = a.axis_y().size();
    const long long pp = static_cast<long long>(p + 1) * static_cast<long long>(ax) - 1;
    const long long qq = static_cast<long long>(q + 1) * static_cast<long long>(ay) - 1;

    if (a.size() > ax * ay) {
        rep.violations.push_back({"Proposition 3.1", std::nullopt,
                                  "|A| = " + std::to_string(a.size()) + " > |A_x||A_y| = " + std::to_string(ax * ay)});
    } else if (a.size() == ax * ay) {
        const LowerSet required = LowerSet::rectangle(static_cast<int>(pp), static_cast<int>(qq));
        if (!(s == required))
            rep.violations.push_back({"Proposition 3.1", required,
                                      "|A| = |A_x||A_y| forces S = R(" + std::to_string(pp) + "," + std::to_string(qq) + ")"});
    }

    const long long mix = static_cast<long long>(a.mixed_count());
    const long long total = static_cast<long long>(a.size());
    const long long head = total - mix - 1;
    if (mix > 0 && (head < 0 || head * head < 4 * mix)) {
        rep.violations.push_back({"mixed-derivative bound", std::nullopt,
                                  "sqrt(" + std::to_string(mix) + ") > sqrt(" + std::to_string(total) + ") - 1"});
    }

    bool slices_ok = true;
    for (int j = 0; j <= q && slices_ok; ++j) {
        const auto row = slice(s, Axis::X, j);
        slices_ok = static_cast<long long>(row.size()) == pp + 1;
    }
    for (int i = 0; i <= p && slices_ok; ++i) {
        const auto col = slice(s, Axis::Y, i);
        slices_ok = static_cast<long long>(col.size()) == qq + 1;
    }
    if (!slices_ok) {
        rep.violations.push_back({"Theorem 3.5", std::nullopt,
                                  "rows 0.." + std::to_string(q) + " must have width " + std::to_string(pp + 1) +
                                      " and columns 0.." + std::to_string(p) + " height " + std::to_string(qq + 1)});
    }

    const LowerSet core = a.max_lower_subset();
    if (!core.empty()) {
        const LowerSet required = blow_up(core, p, q);
        if (!required.subset_of(s))
            rep.violations.push_back({"Theorem 3.3", required,
                                      "S must contain the blow-up of the lower part of A"});
    }

    detail::sort_and_finalize(rep);
    return rep;
}

}  // namespace birkhoff
