#pragma once

#include <algorithm>
#include <vector>

#include "birkhoff/errors.hpp"
#include "birkhoff/matrix.hpp"
#include "birkhoff/polynomial.hpp"
#include "birkhoff/rational.hpp"

namespace birkhoff {

// Univariate Birkhoff scheme: the same derivative orders at every node,
// polynomial space of degree <= degree_bound.
struct UnivariateScheme {
    std::vector<Rational> nodes;  // pairwise distinct
    std::vector<int> orders;      // strictly increasing, >= 0
    int degree_bound = 0;
};

// Polya condition for uniform schemes with n nodes: sorted orders satisfy
// a_i <= n * i. Necessary for regularity at any nodes; equivalent to almost
// regularity, and for n = 2 equivalent to regularity at every node pair.
inline bool polya_1d(std::vector<int> orders, int n) {
    if (n < 1) throw InputError("node count must be >= 1");
    std::sort(orders.begin(), orders.end());
    for (std::size_t i = 0; i < orders.size(); ++i) {
        if (orders[i] < 0) throw InputError("derivative orders must be >= 0");
        if (i > 0 && orders[i] == orders[i - 1]) throw InputError("derivative orders must be distinct");
        if (orders[i] > n * static_cast<int>(i)) return false;
    }
    return true;
}

inline bool is_normal_1d(const UnivariateScheme& s) {
    return static_cast<std::size_t>(s.degree_bound) + 1 == s.nodes.size() * s.orders.size();
}

namespace detail {
inline void validate_univariate(const UnivariateScheme& s) {
    if (s.nodes.empty()) throw InputError("univariate scheme needs at least one node");
    if (s.orders.empty()) throw InputError("univariate scheme needs at least one order");
    for (std::size_t i = 0; i < s.nodes.size(); ++i)
        for (std::size_t j = i + 1; j < s.nodes.size(); ++j)
            if (s.nodes[i] == s.nodes[j]) throw InputError("univariate nodes must be distinct");
    for (std::size_t i = 0; i < s.orders.size(); ++i) {
        if (s.orders[i] < 0) throw InputError("derivative orders must be >= 0");
        if (i > 0 && s.orders[i] <= s.orders[i - 1]) throw InputError("orders must be strictly increasing");
    }
    if (s.degree_bound < 0) throw InputError("degree bound must be >= 0");
}
}  // namespace detail

// Exact collocation determinant. Rows: (node, order) in lex index order;
// columns: monomials x^0 .. x^m. Requires normality.
inline Rational det_1d(const UnivariateScheme& s) {
    detail::validate_univariate(s);
    if (!is_normal_1d(s)) throw InputError("univariate scheme is not normal: m+1 != #nodes * #orders");
    const std::size_t n = static_cast<std::size_t>(s.degree_bound) + 1;
    RatMatrix m(n, n);
    std::size_t row = 0;
    for (const auto& x : s.nodes) {
        for (int d : s.orders) {
            for (std::size_t k = 0; k < n; ++k) {
                if (static_cast<int>(k) < d) {
                    m(row, k) = 0;
                } else {
                    m(row, k) = Rational(falling_factorial(static_cast<int>(k), d)) *
                                rational_pow(x, static_cast<unsigned long>(static_cast<int>(k) - d));
                }
            }
            ++row;
        }
    }
    return determinant(m);
}

// Regular means normal with nonzero determinant at these nodes.
inline bool is_regular_1d(const UnivariateScheme& s) {
    detail::validate_univariate(s);
    if (!is_normal_1d(s)) return false;
    return det_1d(s) != 0;
}

// The replacement axis orders {0, p+1, 2(p+1), ...} of the same cardinality;
// the associated univariate scheme is regular at every node set.
inline std::vector<int> a_max(const std::vector<int>& axis_orders, int p) {
    if (p < 0) throw InputError("grid shape parameter must be >= 0");
    std::vector<int> out;
    out.reserve(axis_orders.size());
    for (std::size_t k = 0; k < axis_orders.size(); ++k) out.push_back(static_cast<int>(k) * (p + 1));
    return out;
}

// Univariate Hermite fundamental polynomial for nodes (x_0..x_p), top order a,
// prescribed order u at node index s:
//   H(x) = phi_s(x) * sum_{k=u..a} (x - x_s)^k / (u! (k-u)!) * (1/phi_s)^{(k-u)}(x_s)
// with phi_s(x) = prod_{t != s} (x - x_t)^{a+1}; zero when a < u. Then
// d^w H(x_r) = [w == u and r == s] for all w <= a and all node indices r.
// The inverse-series coefficients below are exactly (1/phi_s)^{(d)}(x_s)/d!.
inline UniPolynomial hermite_1d(const std::vector<Rational>& nodes, int a, int u, int s) {
    if (nodes.empty()) throw InputError("hermite_1d needs at least one node");
    for (std::size_t i = 0; i < nodes.size(); ++i)
        for (std::size_t j = i + 1; j < nodes.size(); ++j)
            if (nodes[i] == nodes[j]) throw InputError("hermite_1d nodes must be distinct");
    if (s < 0 || s >= static_cast<int>(nodes.size())) throw InputError("node index out of range");
    if (u < 0 || a < 0) throw InputError("orders must be >= 0");
    if (a < u) return UniPolynomial();

    const Rational xs = nodes[static_cast<std::size_t>(s)];
    const std::size_t len = static_cast<std::size_t>(a) + 1;

    // Power series of phi_s around x_s (in xi = x - x_s), truncated at xi^a.
    std::vector<Rational> c(len, Rational(0));
    c[0] = 1;
    for (std::size_t t = 0; t < nodes.size(); ++t) {
        if (static_cast<int>(t) == s) continue;
        const Rational d = xs - nodes[t];  // (xi + d)^{a+1}, truncated
        std::vector<Rational> f(len, Rational(0));
        for (std::size_t k = 0; k < len; ++k)
            f[k] = Rational(binomial(a + 1, static_cast<int>(k))) * rational_pow(d, static_cast<unsigned long>(a + 1 - static_cast<int>(k)));
        std::vector<Rational> prod(len, Rational(0));
        for (std::size_t i = 0; i < len; ++i) {
            if (c[i] == 0) continue;
            for (std::size_t j = 0; i + j < len; ++j) prod[i + j] += c[i] * f[j];
        }
        c = std::move(prod);
    }

    // Series inverse g = 1/phi_s mod xi^{a+1}; c[0] = phi_s(x_s) != 0.
    std::vector<Rational> g(len, Rational(0));
    g[0] = Rational(1) / c[0];
    for (std::size_t m = 1; m < len; ++m) {
        Rational acc = 0;
        for (std::size_t r = 1; r <= m; ++r) acc += c[r] * g[m - r];
        g[m] = -acc / c[0];
    }

    // B(x) = sum_{k=u..a} g[k-u] / u! * (x - x_s)^k, then H = phi_s * B.
    UniPolynomial shift;  // x - x_s
    shift.add_term(1, 1);
    shift.add_term(0, -xs);
    UniPolynomial power = UniPolynomial::constant(1);
    for (int k = 0; k < u; ++k) power = power * shift;
    const Rational inv_ufact = Rational(1) / Rational(factorial(u));
    UniPolynomial b;
    for (int k = u; k <= a; ++k) {
        b = b + power * (g[static_cast<std::size_t>(k - u)] * inv_ufact);
        power = power * shift;
    }
    UniPolynomial phi = UniPolynomial::constant(1);
    for (std::size_t t = 0; t < nodes.size(); ++t) {
        if (static_cast<int>(t) == s) continue;
        UniPolynomial lin;
        lin.add_term(1, 1);
        lin.add_term(0, -nodes[t]);
        UniPolynomial lin_pow = UniPolynomial::constant(1);
        for (int k = 0; k <= a; ++k) lin_pow = lin_pow * lin;
        phi = phi * lin_pow;
    }
    return phi * b;
}

}  // namespace birkhoff
