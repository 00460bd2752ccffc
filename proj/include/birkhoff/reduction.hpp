#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "birkhoff/errors.hpp"
#include "birkhoff/lattice.hpp"
#include "birkhoff/polya.hpp"
#include "birkhoff/scheme.hpp"
#include "birkhoff/univariate.hpp"

namespace birkhoff {

// ---------------------------------------------------------------------------
// Node sets and their shapes

using NodePoint = std::pair<Rational, Rational>;

// Finite set of pairwise distinct nodes in the plane, not necessarily a grid.
class NodeSet {
public:
    explicit NodeSet(std::vector<NodePoint> pts) : pts_(std::move(pts)) {
        if (pts_.empty()) throw InputError("node set must be nonempty");
        std::sort(pts_.begin(), pts_.end());
        for (std::size_t i = 1; i < pts_.size(); ++i)
            if (pts_[i] == pts_[i - 1]) throw InputError("node set contains a duplicate point");
    }

    const std::vector<NodePoint>& points() const { return pts_; }
    std::size_t size() const { return pts_.size(); }

private:
    std::vector<NodePoint> pts_;
};

// Y-shape of a node set: cover Z by vertical lines, record the line sizes as
// lower-set column heights (largest first). Axis::X gives the transposed
// statement (cover by horizontal lines).
inline LowerSet node_shape(const NodeSet& z, Axis axis) {
    std::map<Rational, int> groups;
    for (const auto& [x, y] : z.points()) groups[axis == Axis::Y ? x : y] += 1;
    std::vector<int> counts;
    counts.reserve(groups.size());
    for (const auto& [coord, c] : groups) counts.push_back(c - 1);
    std::sort(counts.rbegin(), counts.rend());
    const LowerSet columns = LowerSet::from_columns(std::move(counts));
    return axis == Axis::Y ? columns : columns.transposed();
}

// A node set is cartesian when it is the full product of its x and y values.
inline std::optional<NodeGrid> as_grid(const NodeSet& z) {
    std::vector<Rational> xs, ys;
    for (const auto& [x, y] : z.points()) {
        xs.push_back(x);
        ys.push_back(y);
    }
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
    std::sort(ys.begin(), ys.end());
    ys.erase(std::unique(ys.begin(), ys.end()), ys.end());
    if (xs.size() * ys.size() != z.size()) return std::nullopt;
    return NodeGrid(std::move(xs), std::move(ys));
}

inline bool is_cartesian(const NodeSet& z) { return as_grid(z).has_value(); }

// ---------------------------------------------------------------------------
// Rectangular reduction

// Decomposition data for an order set whose columns all have the same size
// (its Y-shape is a rectangle with s+1 columns of t+1 orders each).
struct ReducedSchemes {
    int s = 0;
    int t = 0;
    LowerSet required_shape;  // R((s+1)(p+1)-1, (t+1)(q+1)-1)
    bool shape_ok = false;    // the given S equals required_shape
    std::vector<int> x_orders;                               // column positions of A
    std::vector<std::pair<int, std::vector<int>>> y_fibers;  // (column position, column orders)
};

// Grid-free core of the reduction to univariate schemes. Applies exactly when
// every column of A has the same number of elements; then the 2-D scheme is
// regular at a grid iff S has the required rectangle shape, the scheme with
// orders = column positions is regular on the x nodes, and each column's
// scheme is regular on the y nodes.
inline std::optional<ReducedSchemes> rectangular_reduction(const DerivativeSet& a, const LowerSet& s, int p,
                                                           int q) {
    if (p < 0 || q < 0) throw InputError("grid shape parameters must be >= 0");
    const std::vector<int> cols = a.column_positions();
    if (a.size() % cols.size() != 0) return std::nullopt;
    const std::size_t per = a.size() / cols.size();
    ReducedSchemes rr;
    for (const int c : cols) {
        std::vector<int> f = a.fiber(c);
        if (f.size() != per) return std::nullopt;
        rr.y_fibers.push_back({c, std::move(f)});
    }
    rr.s = static_cast<int>(cols.size()) - 1;
    rr.t = static_cast<int>(per) - 1;
    rr.required_shape =
        LowerSet::rectangle((rr.s + 1) * (p + 1) - 1, (rr.t + 1) * (q + 1) - 1);
    rr.shape_ok = s == rr.required_shape;
    rr.x_orders = cols;
    return rr;
}

struct ReduceRectangularResult {
    bool shape_ok = false;
    LowerSet required_shape;
    UnivariateScheme x_scheme;
    std::vector<UnivariateScheme> y_schemes;
};

// Instantiates the reduction on a concrete grid. Throws when the reduction
// does not apply (columns of A of unequal sizes).
inline ReduceRectangularResult reduce_rectangular(const NodeGrid& grid, const DerivativeSet& a,
                                                  const LowerSet& s) {
    const auto rr = rectangular_reduction(a, s, grid.p(), grid.q());
    if (!rr) throw InputError("rectangular reduction does not apply: the columns of A have unequal sizes");
    ReduceRectangularResult res;
    res.shape_ok = rr->shape_ok;
    res.required_shape = rr->required_shape;
    res.x_scheme = {grid.xs(), rr->x_orders, (rr->s + 1) * (grid.p() + 1) - 1};
    for (const auto& [pos, orders] : rr->y_fibers)
        res.y_schemes.push_back({grid.ys(), orders, (rr->t + 1) * (grid.q() + 1) - 1});
    return res;
}

// ---------------------------------------------------------------------------
// Axis moves and strip removal

namespace detail {
inline int first_row_width(const LowerSet& s, Axis axis) {
    return static_cast<int>(slice(s, axis == Axis::X ? Axis::X : Axis::Y, 0).size());
}
}  // namespace detail

// Replaces the axis elements of A along `axis` with the given positions.
// Valid only when the replacement univariate scheme (new positions on the
// corresponding grid axis, degree bound from the first slice of S) is
// regular; regularity of A at the grid is then equivalent to regularity of
// the moved set whenever the original axis scheme is regular too, which the
// caller checks.
inline DerivativeSet move_axis(const DerivativeSet& a, Axis axis, std::vector<int> positions,
                               const NodeGrid& grid, const LowerSet& s) {
    const std::vector<int> old_orders = axis == Axis::X ? a.axis_x() : a.axis_y();
    if (old_orders.empty()) throw InputError("move_axis: A has no elements on that axis");
    if (positions.size() != old_orders.size())
        throw InputError("move_axis: the replacement must have as many orders as the axis part of A");
    std::sort(positions.begin(), positions.end());

    const std::vector<Rational>& nodes = axis == Axis::X ? grid.xs() : grid.ys();
    const int width = detail::first_row_width(s, axis);
    UnivariateScheme replacement{nodes, positions, width - 1};
    if (!is_normal_1d(replacement))
        throw InputError("move_axis: the replacement axis scheme is not normal");
    if (det_1d(replacement) == 0)
        throw InputError("move_axis: the replacement axis scheme is singular at the grid nodes");

    std::vector<LatticePoint> pts;
    for (const auto& pt : a.points()) {
        const bool on_axis = axis == Axis::X ? pt.y == 0 : pt.x == 0;
        if (!on_axis) pts.push_back(pt);
    }
    for (const int v : positions) pts.push_back(axis == Axis::X ? LatticePoint{v, 0} : LatticePoint{0, v});
    DerivativeSet moved{std::move(pts)};
    if (moved.size() != a.size()) throw InputError("move_axis: the replacement collides with existing orders");
    return moved;
}

namespace detail {
// Strip removal along the x axis; the y-axis case transposes around this.
inline std::pair<DerivativeSet, LowerSet> strip_removal_x(const DerivativeSet& a, const LowerSet& s, int p,
                                                          int q) {
    const std::vector<int> ax = a.axis_x();
    if (ax.empty()) throw InputError("strip removal: A has no element on that axis");
    if (a.size() < 2) throw InputError("strip removal: A must keep at least one order");

    const std::vector<int> xprof = s.x_profile();
    if (static_cast<int>(xprof.size()) <= q)
        throw InputError("strip removal: S has fewer rows than the grid requires");

    const int width = xprof[0] + 1;
    if (static_cast<std::size_t>(width) != (static_cast<std::size_t>(p) + 1) * ax.size())
        throw InputError("strip removal: the x-axis scheme is not normal");
    if (!polya_1d(ax, p + 1))
        throw InputError("strip removal: the x-axis scheme fails the Polya condition");
    std::vector<int> ax_rest(ax.begin(), ax.end() - 1);
    if (!polya_1d(ax_rest, p + 1))
        throw InputError("strip removal: the reduced x-axis scheme fails the Polya condition");

    // Drop the outermost p+1 cells of each of the rows 0..q.
    std::vector<LatticePoint> kept;
    for (const auto& pt : s.points()) {
        if (pt.y <= q && pt.x > xprof[static_cast<std::size_t>(pt.y)] - (p + 1)) continue;
        kept.push_back(pt);
    }
    if (!is_lower(kept)) throw InputError("strip removal: the reduced shape is not a lower set");
    LowerSet reduced_shape = LowerSet::from_points(kept);

    std::vector<LatticePoint> pts;
    for (const auto& pt : a.points())
        if (!(pt.y == 0 && pt.x == ax.back())) pts.push_back(pt);
    return {DerivativeSet(std::move(pts)), std::move(reduced_shape)};
}
}  // namespace detail

// Removes the largest axis element of A along `axis` together with the
// outermost p+1 cells of each of the first q+1 rows of S (transposed
// statement for the y axis). Requires the reduced shape to be lower and both
// axis schemes (with and without the removed element) to pass the univariate
// Polya test; the reduced scheme is then almost regular iff the original is,
// and regular at a grid iff the original is whenever both axis schemes are
// regular on that grid's axis nodes.
inline std::pair<DerivativeSet, LowerSet> strip_removal(const DerivativeSet& a, const LowerSet& s, Axis axis,
                                                        int p, int q) {
    if (p < 0 || q < 0) throw InputError("grid shape parameters must be >= 0");
    if (axis == Axis::X) return detail::strip_removal_x(a, s, p, q);
    auto [a2, s2] = detail::strip_removal_x(a.transposed(), s.transposed(), q, p);
    return {a2.transposed(), s2.transposed()};
}

// ---------------------------------------------------------------------------
// Closed-form classifiers for few mixed orders

// mix(A) = 0: the scheme is almost regular iff both axis order sequences pass
// the univariate Polya test and S is the blow-up of the two-arm shape
// T = R(s, 0) u R(0, t). Returns the required S; nullopt when no shape makes
// the scheme almost regular.
inline std::optional<LowerSet> classify_no_mixed(const DerivativeSet& a, int p, int q) {
    if (a.mixed_count() != 0) throw InputError("classify_no_mixed expects an order set without mixed orders");
    if (p < 0 || q < 0) throw InputError("grid shape parameters must be >= 0");
    const std::vector<int> ax = a.axis_x();
    const std::vector<int> ay = a.axis_y();
    if (!polya_1d(ax, p + 1) || !polya_1d(ay, q + 1)) return std::nullopt;
    // Both pass, so both contain 0 and the arms meet at the origin.
    std::vector<int> heights(ax.size(), 0);
    heights[0] = static_cast<int>(ay.size()) - 1;
    return blow_up(LowerSet::from_columns(std::move(heights)), p, q);
}

// mix(A) = 1: with axis parts of sizes s+1, t+1 (s, t >= 1), origin included,
// and the single mixed order (alpha, beta), the scheme is almost regular iff
//   a_i <= i(p+1), b_j <= j(q+1), alpha <= 2p+1, beta <= 2q+1
// and S is the blow-up of T = R(s, 0) u R(0, t) u R(1, 1). Returns the
// required S; nullopt when no shape works.
inline std::optional<LowerSet> classify_one_mixed(const DerivativeSet& a, int p, int q) {
    if (a.mixed_count() != 1) throw InputError("classify_one_mixed expects exactly one mixed order");
    if (p < 0 || q < 0) throw InputError("grid shape parameters must be >= 0");
    const std::vector<int> ax = a.axis_x();
    const std::vector<int> ay = a.axis_y();
    if (ax.size() < 2 || ay.size() < 2) return std::nullopt;
    if (ax[0] != 0 || ay[0] != 0) return std::nullopt;
    for (std::size_t i = 0; i < ax.size(); ++i)
        if (ax[i] > static_cast<int>(i) * (p + 1)) return std::nullopt;
    for (std::size_t j = 0; j < ay.size(); ++j)
        if (ay[j] > static_cast<int>(j) * (q + 1)) return std::nullopt;
    const LatticePoint m = a.mixed().front();
    if (m.x > 2 * p + 1 || m.y > 2 * q + 1) return std::nullopt;
    std::vector<int> heights(ax.size(), 0);
    heights[0] = static_cast<int>(ay.size()) - 1;
    heights[1] = 1;
    return blow_up(LowerSet::from_columns(std::move(heights)), p, q);
}

// ---------------------------------------------------------------------------
// The decision procedure

enum class Status { Regular, NotRegular, AlmostRegular, NotAlmostRegular, Inconclusive };

inline const char* to_string(Status s) {
    switch (s) {
        case Status::Regular: return "Regular";
        case Status::NotRegular: return "NotRegular";
        case Status::AlmostRegular: return "AlmostRegular";
        case Status::NotAlmostRegular: return "NotAlmostRegular";
        case Status::Inconclusive: return "Inconclusive";
    }
    return "Inconclusive";
}

struct TraceStep {
    std::string rule;
    std::string detail;
};

struct DecideOptions {
    std::size_t max_enum = kDefaultEnumLimit;  // |S| cap for lower-subset enumeration
    int probe_trials = kDefaultProbeTrials;
    std::uint64_t probe_seed = 0;
    int probe_range = kDefaultProbeRange;
    int max_depth = 16;  // strip-removal recursion cap
};

struct DecisionVerdict {
    Status status = Status::Inconclusive;
    std::vector<TraceStep> trace;
    // Theorem-backed evidence for a negative status. NotAlmostRegular always
    // carries a non-conjectural certificate.
    std::optional<ConditionReport> certificate;
    // A grid where the scheme is provably regular, when one is known.
    std::optional<NodeGrid> witness;
    // Conjecture-level observations; never the basis of a status.
    std::vector<std::string> conjectural_flags;
};

namespace detail {

inline ConditionReport single_violation(std::string rule, std::optional<LowerSet> witness, std::string text) {
    ConditionReport rep;
    rep.violations.push_back({std::move(rule), std::move(witness), std::move(text)});
    rep.passed = false;
    return rep;
}

// Order sets whose univariate scheme is regular at every node set: the
// initial segments {0..k} (Hermite) and the progressions {0, n, 2n, ...}.
inline bool always_regular_orders(const std::vector<int>& orders, int n) {
    bool initial = true, progression = true;
    for (std::size_t i = 0; i < orders.size(); ++i) {
        initial = initial && orders[i] == static_cast<int>(i);
        progression = progression && orders[i] == static_cast<int>(i) * n;
    }
    return initial || progression;
}

inline DecisionVerdict decide_impl(const DerivativeSet& a, const LowerSet& s, int p, int q,
                                   const std::optional<NodeGrid>& grid, const DecideOptions& opt, int depth);

// Tries the rectangular reduction on the order set as given and with its
// x-axis part moved to {0, p+1, ...}; nullopt when neither applies. All moves
// used here preserve the verdict: the replacement scheme is regular at every
// node set, and the caller has already ruled out a singular original axis
// scheme when a grid is present.
inline std::optional<DecisionVerdict> rectangular_route(const DerivativeSet& a, const LowerSet& s, int p,
                                                        int q, const std::optional<NodeGrid>& grid,
                                                        const std::optional<NodeGrid>& report_grid,
                                                        const std::string& orientation,
                                                        std::vector<TraceStep>& trace) {
    struct Candidate {
        DerivativeSet a;
        std::string note;
    };
    std::vector<Candidate> candidates;
    candidates.push_back({a, orientation + "as given"});
    const std::vector<int> ax = a.axis_x();
    if (!ax.empty()) {
        const std::vector<int> target = a_max(ax, p);
        if (target != ax) {
            std::vector<LatticePoint> pts;
            for (const auto& pt : a.points())
                if (pt.y != 0) pts.push_back(pt);
            for (const int v : target) pts.push_back({v, 0});
            DerivativeSet moved{std::move(pts)};
            if (moved.size() == a.size())
                candidates.push_back({std::move(moved), orientation + "x-axis part moved to {0, p+1, ...}"});
        }
    }

    for (const auto& cand : candidates) {
        const auto rr = rectangular_reduction(cand.a, s, p, q);
        if (!rr) continue;
        DecisionVerdict v;
        v.trace = std::move(trace);
        if (!rr->shape_ok) {
            v.status = Status::NotAlmostRegular;
            v.certificate = single_violation(
                "Theorem 3.2", rr->required_shape,
                "columns of A of equal size force S = R(" + std::to_string((rr->s + 1) * (p + 1) - 1) + "," +
                    std::to_string((rr->t + 1) * (q + 1) - 1) + ")");
            v.trace.push_back({"Theorem 3.2", cand.note + ": S does not have the required rectangle shape"});
            return v;
        }
        if (grid) {
            const UnivariateScheme xs{grid->xs(), rr->x_orders, (rr->s + 1) * (p + 1) - 1};
            bool ok = det_1d(xs) != 0;
            std::string which = ok ? "" : "the x scheme";
            for (const auto& [pos, orders] : rr->y_fibers) {
                if (!ok) break;
                const UnivariateScheme ys{grid->ys(), orders, (rr->t + 1) * (q + 1) - 1};
                if (det_1d(ys) == 0) {
                    ok = false;
                    which = "the column-" + std::to_string(pos) + " scheme";
                }
            }
            if (ok) {
                v.status = Status::Regular;
                v.witness = report_grid;
                v.trace.push_back({"Theorem 3.2", cand.note + ": all reduced univariate schemes are regular"});
            } else {
                v.status = Status::NotRegular;
                v.certificate = single_violation("Theorem 3.2", std::nullopt,
                                                 which + " is singular at the grid nodes");
                v.trace.push_back({"Theorem 3.2", cand.note + ": " + which + " is singular at the grid nodes"});
            }
            return v;
        }
        bool ok = polya_1d(rr->x_orders, p + 1);
        std::string which = ok ? "" : "the x scheme";
        for (const auto& [pos, orders] : rr->y_fibers) {
            if (!ok) break;
            if (!polya_1d(orders, q + 1)) {
                ok = false;
                which = "the column-" + std::to_string(pos) + " scheme";
            }
        }
        if (ok) {
            v.status = Status::AlmostRegular;
            v.trace.push_back(
                {"Theorem 3.2", cand.note + ": all reduced univariate schemes pass the Polya test"});
        } else {
            v.status = Status::NotAlmostRegular;
            v.certificate =
                single_violation("Theorem 3.2", std::nullopt, which + " fails the univariate Polya condition");
            v.trace.push_back({"Theorem 3.2", cand.note + ": " + which + " fails the univariate Polya condition"});
        }
        return v;
    }
    return std::nullopt;
}

inline DecisionVerdict decide_impl(const DerivativeSet& a, const LowerSet& s, int p, int q,
                                   const std::optional<NodeGrid>& grid, const DecideOptions& opt, int depth) {
    DecisionVerdict v;
    auto note = [&](std::string rule, std::string text) { v.trace.push_back({std::move(rule), std::move(text)}); };

    const auto finalize = [&](DecisionVerdict out) {
        // With p = q = 1, regularity at one grid is regularity at every grid,
        // so grid-level answers lift to the almost-regular level.
        if (p == 1 && q == 1) {
            if (out.status == Status::AlmostRegular) {
                out.status = Status::Regular;
                out.trace.push_back({"Theorem 3.14", "for p = q = 1, almost regular means regular at every grid"});
            } else if (out.status == Status::NotRegular) {
                out.status = Status::NotAlmostRegular;
                if (out.certificate)
                    out.certificate->violations.push_back(
                        {"Theorem 3.14", std::nullopt, "singular at one (1,1) grid, hence at every (1,1) grid"});
                out.trace.push_back({"Theorem 3.14", "for p = q = 1, singular at one grid means singular at every grid"});
            }
        }
        return out;
    };

    // Step 0: normality.
    if (p < 0 || q < 0) throw InputError("grid shape parameters must be >= 0");
    if (grid && (grid->p() != p || grid->q() != q))
        throw InputError("the supplied grid has shape (" + std::to_string(grid->p()) + "," +
                         std::to_string(grid->q()) + "), expected (" + std::to_string(p) + "," +
                         std::to_string(q) + ")");
    if (!is_normal(a, s, p, q))
        throw InputError("the scheme is not normal: |S| = " + std::to_string(s.size()) + " but (p+1)(q+1)|A| = " +
                         std::to_string(static_cast<std::size_t>(p + 1) * (q + 1) * a.size()));
    note("input", "normal scheme: |A| = " + std::to_string(a.size()) + ", |S| = " + std::to_string(s.size()) +
                      ", (p,q) = (" + std::to_string(p) + "," + std::to_string(q) + ")" +
                      (grid ? ", grid supplied" : ""));

    // Step 1: necessary conditions.
    {
        ConditionReport structural = structural_necessary(a, s, p, q);
        if (!structural.passed) {
            v.status = Status::NotAlmostRegular;
            note(structural.violations.front().rule, "structural necessary condition fails: " +
                                                         structural.violations.front().detail);
            v.certificate = std::move(structural);
            return finalize(std::move(v));
        }
        note("structural screen", "Proposition 3.1, the mixed-order bound, Theorem 3.5 and Theorem 3.3 hold");

        if (!a.contains({0, 0})) {
            v.status = Status::NotAlmostRegular;
            v.certificate = single_violation("Polya inequality (classical)", LowerSet::rectangle(0, 0),
                                             "A misses the order (0,0), so the constant column is zero");
            note("Polya inequality (classical)", "A misses the order (0,0)");
            return finalize(std::move(v));
        }

        if (s.size() <= opt.max_enum) {
            ConditionReport classical = classical_polya(a, s, (p + 1) * (q + 1), opt.max_enum);
            if (!classical.passed) {
                v.status = Status::NotAlmostRegular;
                note("Polya inequality (classical)",
                     "a lower subset of S meets too few orders: " + classical.violations.front().detail);
                v.certificate = std::move(classical);
                return finalize(std::move(v));
            }
            ConditionReport rectangular = rectangular_polya(a, s, p, q, opt.max_enum);
            if (!rectangular.passed) {
                v.status = Status::NotAlmostRegular;
                note("Polya inequality (rectangular)",
                     "boundary-weighted count fails: " + rectangular.violations.front().detail);
                v.certificate = std::move(rectangular);
                return finalize(std::move(v));
            }
            note("Polya screen", "classical and rectangular Polya inequalities hold for every lower subset of S");
        } else {
            note("Polya screen", "skipped: |S| = " + std::to_string(s.size()) + " exceeds max_enum = " +
                                     std::to_string(opt.max_enum));
        }

        if (!polya_1d(a.axis_x(), p + 1)) {
            v.status = Status::NotAlmostRegular;
            v.certificate = single_violation("Theorem 3.6(i)", std::nullopt,
                                             "the x-axis part of A fails the univariate Polya condition");
            note("Theorem 3.6(i)", "the x-axis scheme is never regular, so neither is the full scheme");
            return finalize(std::move(v));
        }
        if (!polya_1d(a.axis_y(), q + 1)) {
            v.status = Status::NotAlmostRegular;
            v.certificate = single_violation("Theorem 3.6(i)", std::nullopt,
                                             "the y-axis part of A fails the univariate Polya condition");
            note("Theorem 3.6(i)", "the y-axis scheme is never regular, so neither is the full scheme");
            return finalize(std::move(v));
        }

        ConditionReport gp = grid_polya(a, s, p, q);
        if (!gp.passed) {
            if (p == 1 && q == 1) {
                v.status = Status::NotAlmostRegular;
                gp.conjectural = false;
                for (auto& viol : gp.violations) viol.rule = "grid Polya (theorem for p = q = 1)";
                note("grid Polya (theorem for p = q = 1)",
                     "no shift of A onto the sparse grid of S exists: " + gp.violations.front().detail);
                v.certificate = std::move(gp);
                return finalize(std::move(v));
            }
            v.conjectural_flags.push_back("grid Polya condition fails (" + gp.violations.front().detail +
                                          "); conjecturally not almost regular");
            note("grid Polya (Conjecture 3.12)", "fails; recorded as a conjectural flag only");
        } else {
            note("grid Polya", "a shift of A onto the sparse grid points of S exists");
        }
    }

    // Step 1.5: with a grid, singular axis schemes settle regularity there.
    if (grid) {
        const std::vector<int> ax = a.axis_x();
        const std::vector<int> ay = a.axis_y();
        const UnivariateScheme xscheme{grid->xs(), ax, static_cast<int>(ax.size()) * (p + 1) - 1};
        if (det_1d(xscheme) == 0) {
            v.status = Status::NotRegular;
            v.certificate = single_violation("Theorem 3.6(i)", std::nullopt,
                                             "the x-axis scheme is singular at the grid's x nodes");
            note("Theorem 3.6(i)", "the x-axis scheme is singular at the grid's x nodes");
            return finalize(std::move(v));
        }
        const UnivariateScheme yscheme{grid->ys(), ay, static_cast<int>(ay.size()) * (q + 1) - 1};
        if (det_1d(yscheme) == 0) {
            v.status = Status::NotRegular;
            v.certificate = single_violation("Theorem 3.6(i)", std::nullopt,
                                             "the y-axis scheme is singular at the grid's y nodes");
            note("Theorem 3.6(i)", "the y-axis scheme is singular at the grid's y nodes");
            return finalize(std::move(v));
        }
        note("axis screen", "both axis schemes are regular at the grid nodes");
    }

    // Step 2: lower order sets are settled exactly.
    if (a.is_lower()) {
        const LowerSet required = blow_up(a.to_lower(), p, q);
        if (s == required) {
            v.status = Status::Regular;
            v.witness = grid;
            note("Theorem 3.4", "A is lower and S is the blow-up of A: regular at every grid");
            return v;
        }
        v.status = Status::NotAlmostRegular;
        v.certificate = single_violation("Theorem 3.4", required,
                                         "a lower order set is almost regular only with S equal to its blow-up");
        note("Theorem 3.4", "A is lower but S is not the blow-up of A");
        return finalize(std::move(v));
    }
    note("shape", "A is not lower");

    // Step 3: closed-form classifiers for at most one mixed order.
    if (a.mixed_count() <= 1) {
        const std::optional<LowerSet> required =
            a.mixed_count() == 0 ? classify_no_mixed(a, p, q) : classify_one_mixed(a, p, q);
        const std::string rule = a.mixed_count() == 0 ? "Corollary 3.7" : "Corollary 3.8";
        if (!required) {
            v.status = Status::NotAlmostRegular;
            v.certificate =
                single_violation(rule, std::nullopt, "the axis and mixed-order conditions exclude almost regularity");
            note(rule, "no shape makes this order set almost regular");
            return finalize(std::move(v));
        }
        if (!(*required == s)) {
            v.status = Status::NotAlmostRegular;
            v.certificate = single_violation(rule, *required, "almost regularity forces this exact shape for S");
            note(rule, "S is not the required blow-up shape");
            return finalize(std::move(v));
        }
        if (!grid) {
            v.status = Status::AlmostRegular;
            note(rule, "axis conditions hold and S has the required shape: almost regular");
            return finalize(std::move(v));
        }
        note(rule, "axis conditions hold and S has the required shape: almost regular; checking the grid");
    }

    // Step 4: rectangular reduction, in both orientations.
    {
        auto direct = rectangular_route(a, s, p, q, grid, grid, "", v.trace);
        if (direct) return finalize(std::move(*direct));
        std::optional<NodeGrid> tgrid;
        if (grid) tgrid = NodeGrid(grid->ys(), grid->xs());
        auto transposed = rectangular_route(a.transposed(), s.transposed(), q, p, tgrid, grid,
                                            "transposed orientation, ", v.trace);
        if (transposed) {
            // Status and certificate transfer; witnesses were already reported
            // in the original orientation.
            DecisionVerdict out = std::move(*transposed);
            return finalize(std::move(out));
        }
        note("Theorem 3.2", "no orientation makes the columns of A equal-sized; reduction not applicable");
    }

    // Step 5: strip removal, recursing on the smaller scheme.
    if (depth < opt.max_depth) {
        for (const Axis axis : {Axis::X, Axis::Y}) {
            std::pair<DerivativeSet, LowerSet> reduced{a, s};
            try {
                reduced = strip_removal(a, s, axis, p, q);
            } catch (const InputError&) {
                continue;
            }
            const char* axis_name = axis == Axis::X ? "x" : "y";
            if (grid) {
                // The grid-level equivalence needs the reduced axis scheme to
                // be regular at the axis nodes as well.
                const std::vector<int> orders =
                    axis == Axis::X ? reduced.first.axis_x() : reduced.first.axis_y();
                const std::vector<Rational>& nodes = axis == Axis::X ? grid->xs() : grid->ys();
                const int n = axis == Axis::X ? p : q;
                const UnivariateScheme axis_scheme{nodes, orders,
                                                   static_cast<int>(orders.size()) * (n + 1) - 1};
                if (orders.empty() || det_1d(axis_scheme) == 0) {
                    note("Theorem 3.6(iii)",
                         std::string("strip removal on the ") + axis_name +
                             " axis skipped: the reduced axis scheme is singular at the grid nodes");
                    continue;
                }
            }
            note("Theorem 3.6(iii)", std::string("removing the largest ") + axis_name +
                                         "-axis order and the outer strip of S; deciding the reduced scheme");
            DecisionVerdict sub = decide_impl(reduced.first, reduced.second, p, q, grid, opt, depth + 1);
            for (auto& step : sub.trace) v.trace.push_back(std::move(step));
            for (auto& flag : sub.conjectural_flags) v.conjectural_flags.push_back("[reduced scheme] " + std::move(flag));
            if (sub.status == Status::Inconclusive) {
                note("Theorem 3.6(iii)", "the reduced scheme was inconclusive; abandoning this route");
                continue;
            }
            v.status = sub.status;
            v.certificate = std::move(sub.certificate);
            v.witness = sub.witness;
            if (!grid && sub.status == Status::Regular && !(p == 1 && q == 1)) {
                // Regularity at every grid transfers only through axis schemes
                // that are regular at every node set.
                const std::vector<int> full = axis == Axis::X ? a.axis_x() : a.axis_y();
                const std::vector<int> rest(full.begin(), full.end() - 1);
                const int n = (axis == Axis::X ? p : q) + 1;
                if (!always_regular_orders(full, n) || !always_regular_orders(rest, n)) {
                    v.status = Status::AlmostRegular;
                    note("Theorem 3.6(iii)",
                         "the reduced scheme is regular at every grid; the equivalence transfers almost regularity");
                }
            }
            note("Theorem 3.6(iii)", std::string("verdict transfers from the reduced scheme (") +
                                         to_string(v.status) + ")");
            return finalize(std::move(v));
        }
    }

    // Step 6: exact determinant at a grid, otherwise random probing.
    if (grid) {
        if (is_regular_at(*grid, a, s)) {
            v.status = Status::Regular;
            v.witness = grid;
            note("determinant", "the collocation determinant at the supplied grid is nonzero");
        } else {
            v.status = Status::NotRegular;
            v.certificate =
                single_violation("determinant", std::nullopt, "the collocation determinant vanishes at the supplied grid");
            note("determinant", "the collocation determinant at the supplied grid is zero");
        }
        return finalize(std::move(v));
    }
    if (p == 1 && q == 1) {
        const NodeGrid canonical({Rational(-1), Rational(1)}, {Rational(-1), Rational(1)});
        if (is_regular_at(canonical, a, s)) {
            v.status = Status::Regular;
            v.witness = canonical;
            note("Theorem 3.14", "regular at the grid {-1,1}^2, hence at every (1,1) grid");
        } else {
            v.status = Status::NotAlmostRegular;
            v.certificate = single_violation("Theorem 3.14", std::nullopt,
                                             "singular at the grid {-1,1}^2, hence at every (1,1) grid");
            note("Theorem 3.14", "singular at the grid {-1,1}^2, hence at every (1,1) grid");
        }
        return v;
    }
    if (opt.probe_trials <= 0) {
        v.status = Status::Inconclusive;
        v.conjectural_flags.push_back("random probing disabled (trials = 0); conjecturally not almost regular");
        note("probe", "probing disabled; inconclusive");
        return v;
    }
    {
        const ProbeResult probe =
            probe_almost_regular(a, s, p, q, opt.probe_trials, opt.probe_seed, opt.probe_range);
        if (probe.outcome == ProbeResult::Outcome::AlmostRegular) {
            v.status = Status::AlmostRegular;
            v.witness = probe.witness;
            note("probe", "found a grid with nonzero determinant after " + std::to_string(probe.trials_run) +
                              " trial(s), seed " + std::to_string(probe.seed));
            return v;
        }
        v.status = Status::Inconclusive;
        v.conjectural_flags.push_back("random probing found no regular grid (trials = " +
                                      std::to_string(probe.trials_run) + ", seed = " + std::to_string(probe.seed) +
                                      "); conjecturally not almost regular");
        note("probe", "no regular grid found in " + std::to_string(probe.trials_run) + " trial(s); inconclusive");
        return v;
    }
}

}  // namespace detail

// Decides the status of the normal scheme (A, S) for (p+1) x (q+1) grids,
// at the supplied grid when one is given and over all grids otherwise.
// Statuses: Regular / NotRegular answer "regular at the grid" (Regular
// without a grid means regular at every grid); AlmostRegular /
// NotAlmostRegular answer "is the determinant nonzero somewhere";
// Inconclusive is possible only without a grid and with min(p,q) > 1 ...
// never for p = q = 1. NotAlmostRegular always carries a theorem-backed
// certificate; conjecture-level evidence only ever lands in
// conjectural_flags.
inline DecisionVerdict decide(const DerivativeSet& a, const LowerSet& s, int p, int q,
                              const std::optional<NodeGrid>& grid = std::nullopt,
                              const DecideOptions& opt = {}) {
    return detail::decide_impl(a, s, p, q, grid, opt, 0);
}

}  // namespace birkhoff
