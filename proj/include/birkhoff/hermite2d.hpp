#pragma once

#include <map>
#include <string>
#include <vector>

#include "birkhoff/errors.hpp"
#include "birkhoff/lattice.hpp"
#include "birkhoff/polynomial.hpp"
#include "birkhoff/scheme.hpp"
#include "birkhoff/univariate.hpp"

namespace birkhoff {

// Fundamental polynomial of the scheme (grid, A, A^{p,q}) for derivative
// order (u, v) at node (x_s, y_t), assembled from univariate Hermite
// fundamentals by telescoping over the exterior corners of A: with corners
// (a_1, b_k), (a_2, b_{k-1}), ..., (a_k, b_1) listed by decreasing a_i,
//
//   H^{s,t}_{u,v}(x, y) = sum_i (H^{a_i,s}_u(x) - H^{a_{i+1},s}_u(x)) H^{b_{k-i+1},t}_v(y)
//
// where the i = k term keeps H^{a_k,s}_u(x) alone and univariate factors with
// order above their multiplicity bound are zero. The x-differences vanish to
// order a_{i+1} at every node, which is what kills the cross conditions from
// taller, narrower corners.
inline Poly2 fundamental(const NodeGrid& grid, const LowerSet& a, LatticePoint order, int s, int t) {
    if (a.empty()) throw InputError("fundamental: the order set must be nonempty");
    if (!a.contains(order)) throw InputError("fundamental: order " + to_string(order) + " is not in the order set");
    if (s < 0 || s > grid.p() || t < 0 || t > grid.q()) throw InputError("fundamental: node index out of range");

    const std::vector<LatticePoint> corners = exterior_corners(a);  // decreasing x, increasing y
    const std::size_t k = corners.size();

    const auto uni = [](const std::vector<Rational>& nodes, int mult, int ord, int node_index) {
        if (ord > mult) return UniPolynomial();
        return hermite_1d(nodes, mult, ord, node_index);
    };

    Poly2 result;
    for (std::size_t i = 0; i < k; ++i) {
        UniPolynomial hx = uni(grid.xs(), corners[i].x, order.x, s);
        if (i + 1 < k) hx = hx - uni(grid.xs(), corners[i + 1].x, order.x, s);
        if (hx == UniPolynomial()) continue;
        const UniPolynomial hy = uni(grid.ys(), corners[i].y, order.y, t);
        result = result + tensor(hx, hy);
    }
    return result;
}

// Verifies the delta property of the full fundamental system: the (u', v')
// derivative of H^{s,t}_{u,v} at node (s', t') is 1 when (s,t,u,v) equals
// (s',t',u',v') and 0 otherwise. Exact; quadratic in the scheme size.
inline bool check_delta(const NodeGrid& grid, const LowerSet& a) {
    const std::vector<LatticePoint> orders = a.points();
    for (int s = 0; s <= grid.p(); ++s)
        for (int t = 0; t <= grid.q(); ++t)
            for (const auto& uv : orders) {
                const Poly2 h = fundamental(grid, a, uv, s, t);
                for (int s2 = 0; s2 <= grid.p(); ++s2)
                    for (int t2 = 0; t2 <= grid.q(); ++t2)
                        for (const auto& uv2 : orders) {
                            const Rational got = h.derivative_at(uv2, grid.xs()[static_cast<std::size_t>(s2)],
                                                                 grid.ys()[static_cast<std::size_t>(t2)]);
                            const Rational want = (s == s2 && t == t2 && uv == uv2) ? Rational(1) : Rational(0);
                            if (got != want) return false;
                        }
            }
    return true;
}

// Interpolant for the scheme (grid, A, A^{p,q}) with the given collocation
// data, as the data-weighted sum of fundamentals. Missing entries read 0;
// keys outside the scheme are rejected.
inline Poly2 hermite_interpolant(const NodeGrid& grid, const LowerSet& a, const InterpolationData& data) {
    if (a.empty()) throw InputError("hermite_interpolant: the order set must be nonempty");
    for (const auto& [key, value] : data) {
        if (key.i < 0 || key.i > grid.p() || key.j < 0 || key.j > grid.q())
            throw InputError("hermite_interpolant: node index out of range");
        if (!a.contains(key.order))
            throw InputError("hermite_interpolant: order " + to_string(key.order) + " is not in the order set");
    }
    Poly2 result;
    for (const auto& [key, value] : data) {
        if (value == 0) continue;
        result = result + fundamental(grid, a, key.order, key.i, key.j) * value;
    }
    return result;
}

}  // namespace birkhoff
