#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "birkhoff/errors.hpp"
#include "birkhoff/lattice.hpp"
#include "birkhoff/matrix.hpp"
#include "birkhoff/polynomial.hpp"
#include "birkhoff/prng.hpp"
#include "birkhoff/rational.hpp"

namespace birkhoff {

// Rectangular node set { (x_i, y_j) } with distinct coordinates per axis.
class NodeGrid {
public:
    NodeGrid(std::vector<Rational> xs, std::vector<Rational> ys) : xs_(std::move(xs)), ys_(std::move(ys)) {
        if (xs_.empty() || ys_.empty()) throw InputError("node grid must have at least one node per axis");
        check_distinct(xs_);
        check_distinct(ys_);
    }

    int p() const { return static_cast<int>(xs_.size()) - 1; }
    int q() const { return static_cast<int>(ys_.size()) - 1; }
    const std::vector<Rational>& xs() const { return xs_; }
    const std::vector<Rational>& ys() const { return ys_; }
    std::size_t node_count() const { return xs_.size() * ys_.size(); }

private:
    static void check_distinct(const std::vector<Rational>& v) {
        for (std::size_t i = 0; i < v.size(); ++i)
            for (std::size_t j = i + 1; j < v.size(); ++j)
                if (v[i] == v[j]) throw InputError("grid coordinates must be pairwise distinct per axis");
    }

    std::vector<Rational> xs_, ys_;
};

// Interpolation scheme: uniform derivative set A at every node of a
// (p+1) x (q+1) grid, polynomial space spanned by the monomials of S.
struct Scheme {
    int p = 0;
    int q = 0;
    DerivativeSet A;
    LowerSet S;
    std::optional<NodeGrid> grid;
};

inline bool is_normal(const DerivativeSet& a, const LowerSet& s, int p, int q) {
    return s.size() == static_cast<std::size_t>(p + 1) * static_cast<std::size_t>(q + 1) * a.size();
}

// d^{order} (x^e.x y^e.y) evaluated at (x, y); zero when the order exceeds
// the exponent in either variable.
inline Rational derivative_of_monomial(LatticePoint exp, LatticePoint order, const Rational& x, const Rational& y) {
    if (exp.x < 0 || exp.y < 0 || order.x < 0 || order.y < 0) throw InputError("negative exponent or order");
    if (order.x > exp.x || order.y > exp.y) return 0;
    const Rational c(falling_factorial(exp.x, order.x) * falling_factorial(exp.y, order.y));
    return c * rational_pow(x, static_cast<unsigned long>(exp.x - order.x)) *
           rational_pow(y, static_cast<unsigned long>(exp.y - order.y));
}

// Rows: (node, derivative), nodes in lex (i, j) index order, derivatives in
// the set's lex order. Columns: monomials of S in lex order. Possibly
// rectangular; solvability questions use it directly.
inline RatMatrix collocation_matrix(const NodeGrid& grid, const DerivativeSet& a, const LowerSet& s) {
    const auto cols = s.points();
    RatMatrix m(grid.node_count() * a.size(), cols.size());
    std::size_t row = 0;
    for (const auto& x : grid.xs()) {
        for (const auto& y : grid.ys()) {
            for (const auto& order : a.points()) {
                for (std::size_t j = 0; j < cols.size(); ++j) m(row, j) = derivative_of_monomial(cols[j], order, x, y);
                ++row;
            }
        }
    }
    return m;
}

// The square collocation matrix of a normal scheme.
inline RatMatrix build_matrix(const NodeGrid& grid, const DerivativeSet& a, const LowerSet& s) {
    if (!is_normal(a, s, grid.p(), grid.q()))
        throw InputError("scheme is not normal: |S| != (p+1)(q+1)|A|");
    return collocation_matrix(grid, a, s);
}

inline Rational determinant(const NodeGrid& grid, const DerivativeSet& a, const LowerSet& s) {
    return determinant(build_matrix(grid, a, s));
}

inline bool is_regular_at(const NodeGrid& grid, const DerivativeSet& a, const LowerSet& s) {
    return determinant(grid, a, s) != 0;
}

// Full row rank of the (possibly rectangular) collocation matrix: every data
// assignment admits an interpolant. Normality is not required.
inline bool is_solvable_at(const NodeGrid& grid, const DerivativeSet& a, const LowerSet& s) {
    const RatMatrix m = collocation_matrix(grid, a, s);
    return rank(m) == m.rows();
}

struct ProbeResult {
    enum class Outcome { AlmostRegular, ProbablyNotAlmostRegular };
    Outcome outcome = Outcome::ProbablyNotAlmostRegular;
    std::optional<NodeGrid> witness;  // present exactly when outcome is AlmostRegular
    int trials_run = 0;
    std::uint64_t seed = 0;
};

inline constexpr int kDefaultProbeTrials = 20;
inline constexpr int kDefaultProbeRange = 1000;

// Random search for a grid with nonzero collocation determinant. A found
// witness proves almost regularity; exhausting the trials proves nothing and
// is reported as evidence only. Trial t draws from the substream (seed, t),
// x coordinates first, so runs are reproducible across platforms.
inline ProbeResult probe_almost_regular(const DerivativeSet& a, const LowerSet& s, int p, int q,
                                        int trials = kDefaultProbeTrials, std::uint64_t seed = 0,
                                        int range = kDefaultProbeRange) {
    if (p < 0 || q < 0) throw InputError("grid shape parameters must be >= 0");
    if (trials < 1) throw InputError("probe needs at least one trial");
    if (!is_normal(a, s, p, q)) throw InputError("scheme is not normal: |S| != (p+1)(q+1)|A|");
    if (2 * range + 1 < std::max(p, q) + 1)
        throw InputError("sampling range too small for distinct grid coordinates");
    ProbeResult res;
    res.seed = seed;
    for (int t = 0; t < trials; ++t) {
        Sampler sampler(seed, static_cast<std::uint64_t>(t));
        NodeGrid grid(sampler.distinct_integers(p + 1, range), sampler.distinct_integers(q + 1, range));
        res.trials_run = t + 1;
        if (is_regular_at(grid, a, s)) {
            res.outcome = ProbeResult::Outcome::AlmostRegular;
            res.witness = std::move(grid);
            return res;
        }
    }
    res.outcome = ProbeResult::Outcome::ProbablyNotAlmostRegular;
    return res;
}

// One prescribed derivative value: d^{order} P (x_i, y_j) = value.
struct CollocationKey {
    int i = 0;  // x index into the grid
    int j = 0;  // y index into the grid
    LatticePoint order;
    friend auto operator<=>(const CollocationKey&, const CollocationKey&) = default;
};

using InterpolationData = std::map<CollocationKey, Rational>;

// Exact interpolant of a normal regular scheme; keys absent from data are
// treated as zero. Throws SingularSystemError when the scheme is singular at
// this grid.
inline Poly2 solve(const NodeGrid& grid, const DerivativeSet& a, const LowerSet& s, const InterpolationData& data) {
    const RatMatrix m = build_matrix(grid, a, s);
    for (const auto& [key, value] : data) {
        (void)value;
        if (key.i < 0 || key.i > grid.p() || key.j < 0 || key.j > grid.q())
            throw InputError("data key addresses a node outside the grid");
        if (!a.contains(key.order)) throw InputError("data key uses a derivative order outside A");
    }
    std::vector<Rational> rhs(m.rows(), Rational(0));
    std::size_t row = 0;
    for (int i = 0; i <= grid.p(); ++i) {
        for (int j = 0; j <= grid.q(); ++j) {
            for (const auto& order : a.points()) {
                const auto it = data.find(CollocationKey{i, j, order});
                if (it != data.end()) rhs[row] = it->second;
                ++row;
            }
        }
    }
    const std::vector<Rational> coeff = solve_square(m, rhs);
    Poly2 out;
    const auto monomials = s.points();
    for (std::size_t k = 0; k < monomials.size(); ++k) out.add_term(monomials[k], coeff[k]);
    return out;
}

}  // namespace birkhoff
