#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "birkhoff/lattice.hpp"
#include "birkhoff/rational.hpp"

namespace birkhoff {

// Sparse univariate polynomial with exact coefficients. No zero coefficient
// is ever stored, so map equality is polynomial equality.
class UniPolynomial {
public:
    UniPolynomial() = default;

    static UniPolynomial constant(Rational c) {
        UniPolynomial p;
        p.add_term(0, std::move(c));
        return p;
    }

    static UniPolynomial monomial(int k, Rational c) {
        UniPolynomial p;
        p.add_term(k, std::move(c));
        return p;
    }

    void add_term(int k, const Rational& c) {
        if (c == 0) return;
        auto it = terms_.find(k);
        if (it == terms_.end()) {
            terms_.emplace(k, c);
        } else {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }

    const std::map<int, Rational>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    int degree() const { return terms_.empty() ? -1 : terms_.rbegin()->first; }

    Rational coefficient(int k) const {
        auto it = terms_.find(k);
        return it == terms_.end() ? Rational(0) : it->second;
    }

    UniPolynomial operator+(const UniPolynomial& o) const {
        UniPolynomial out = *this;
        for (const auto& [k, c] : o.terms_) out.add_term(k, c);
        return out;
    }

    UniPolynomial operator-(const UniPolynomial& o) const {
        UniPolynomial out = *this;
        for (const auto& [k, c] : o.terms_) out.add_term(k, -c);
        return out;
    }

    UniPolynomial operator*(const UniPolynomial& o) const {
        UniPolynomial out;
        for (const auto& [ka, ca] : terms_)
            for (const auto& [kb, cb] : o.terms_) out.add_term(ka + kb, ca * cb);
        return out;
    }

    UniPolynomial operator*(const Rational& c) const {
        UniPolynomial out;
        for (const auto& [k, v] : terms_) out.add_term(k, v * c);
        return out;
    }

    UniPolynomial derivative(int order = 1) const {
        UniPolynomial out;
        for (const auto& [k, c] : terms_) {
            if (k < order) continue;
            out.add_term(k - order, c * Rational(falling_factorial(k, order)));
        }
        return out;
    }

    Rational evaluate(const Rational& x) const {
        Rational acc = 0;
        for (const auto& [k, c] : terms_) acc += c * rational_pow(x, static_cast<unsigned long>(k));
        return acc;
    }

    friend bool operator==(const UniPolynomial&, const UniPolynomial&) = default;

private:
    std::map<int, Rational> terms_;
};

// Sparse bivariate polynomial; term order (and hence every serialization) is
// lexicographic in the exponent pair.
class Poly2 {
public:
    Poly2() = default;

    static Poly2 constant(Rational c) {
        Poly2 p;
        p.add_term({0, 0}, std::move(c));
        return p;
    }

    static Poly2 monomial(LatticePoint e, Rational c) {
        Poly2 p;
        p.add_term(e, std::move(c));
        return p;
    }

    // Embeds a univariate polynomial as a polynomial in x alone.
    static Poly2 from_x(const UniPolynomial& u) {
        Poly2 p;
        for (const auto& [k, c] : u.terms()) p.add_term({k, 0}, c);
        return p;
    }

    // Embeds a univariate polynomial as a polynomial in y alone.
    static Poly2 from_y(const UniPolynomial& u) {
        Poly2 p;
        for (const auto& [k, c] : u.terms()) p.add_term({0, k}, c);
        return p;
    }

    void add_term(LatticePoint e, const Rational& c) {
        if (c == 0) return;
        const std::pair<int, int> key{e.x, e.y};
        auto it = terms_.find(key);
        if (it == terms_.end()) {
            terms_.emplace(key, c);
        } else {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }

    const std::map<std::pair<int, int>, Rational>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    Rational coefficient(LatticePoint e) const {
        auto it = terms_.find({e.x, e.y});
        return it == terms_.end() ? Rational(0) : it->second;
    }

    std::vector<LatticePoint> support() const {
        std::vector<LatticePoint> out;
        out.reserve(terms_.size());
        for (const auto& [e, c] : terms_) out.push_back({e.first, e.second});
        return out;
    }

    Poly2 operator+(const Poly2& o) const {
        Poly2 out = *this;
        for (const auto& [e, c] : o.terms_) out.add_term({e.first, e.second}, c);
        return out;
    }

    Poly2 operator-(const Poly2& o) const {
        Poly2 out = *this;
        for (const auto& [e, c] : o.terms_) out.add_term({e.first, e.second}, -c);
        return out;
    }

    Poly2 operator*(const Poly2& o) const {
        Poly2 out;
        for (const auto& [ea, ca] : terms_)
            for (const auto& [eb, cb] : o.terms_)
                out.add_term({ea.first + eb.first, ea.second + eb.second}, ca * cb);
        return out;
    }

    Poly2 operator*(const Rational& c) const {
        Poly2 out;
        for (const auto& [e, v] : terms_) out.add_term({e.first, e.second}, v * c);
        return out;
    }

    Poly2 derivative(LatticePoint order) const {
        Poly2 out;
        for (const auto& [e, c] : terms_) {
            if (e.first < order.x || e.second < order.y) continue;
            const Rational f = Rational(falling_factorial(e.first, order.x) * falling_factorial(e.second, order.y));
            out.add_term({e.first - order.x, e.second - order.y}, c * f);
        }
        return out;
    }

    Rational evaluate(const Rational& x, const Rational& y) const {
        Rational acc = 0;
        for (const auto& [e, c] : terms_)
            acc += c * rational_pow(x, static_cast<unsigned long>(e.first)) *
                   rational_pow(y, static_cast<unsigned long>(e.second));
        return acc;
    }

    // d^{order} P evaluated at (x, y).
    Rational derivative_at(LatticePoint order, const Rational& x, const Rational& y) const {
        return derivative(order).evaluate(x, y);
    }

    friend bool operator==(const Poly2&, const Poly2&) = default;

private:
    std::map<std::pair<int, int>, Rational> terms_;
};

// u(x) * v(y).
inline Poly2 tensor(const UniPolynomial& u, const UniPolynomial& v) {
    return Poly2::from_x(u) * Poly2::from_y(v);
}

}  // namespace birkhoff
