#include <catch2/catch_amalgamated.hpp>

#include "birkhoff/birkhoff.hpp"
#include "oracles.hpp"

using namespace birkhoff;

namespace {

NodeGrid unit_grid() { return NodeGrid({Rational(0), Rational(1)}, {Rational(0), Rational(1)}); }

}  // namespace

TEST_CASE("fundamental frozen polynomial") {
    // Order set {(0,0),(0,1)} as the single column of height 2, value
    // functional at node (0,0) of the unit grid: (1 - x)(2y^3 - 3y^2 + 1).
    const Poly2 h = fundamental(unit_grid(), LowerSet::from_columns({1}), {0, 0}, 0, 0);
    Poly2 want;
    want.add_term({0, 0}, Rational(1));
    want.add_term({0, 2}, Rational(-3));
    want.add_term({0, 3}, Rational(2));
    want.add_term({1, 0}, Rational(-1));
    want.add_term({1, 2}, Rational(3));
    want.add_term({1, 3}, Rational(-2));
    CHECK(h == want);

    CHECK_THROWS_AS(fundamental(unit_grid(), LowerSet(), {0, 0}, 0, 0), InputError);
    CHECK_THROWS_AS(fundamental(unit_grid(), LowerSet::from_columns({1}), {1, 0}, 0, 0), InputError);
    CHECK_THROWS_AS(fundamental(unit_grid(), LowerSet::from_columns({1}), {0, 0}, 2, 0), InputError);
    CHECK_THROWS_AS(fundamental(unit_grid(), LowerSet::from_columns({1}), {0, 0}, 0, -1), InputError);
}

TEST_CASE("fundamental polynomials satisfy the delta property") {
    // Directly: every fundamental polynomial hits 1 on its own functional and
    // 0 on every other functional of the scheme.
    const std::vector<LowerSet> shapes{LowerSet::triangle(1), LowerSet::rectangle(1, 1),
                                       LowerSet::from_columns({2, 1})};
    for (const LowerSet& a : shapes) {
        for (int gcase = 0; gcase < 3; ++gcase) {
            Sampler smp(601, static_cast<std::uint64_t>(10 * gcase) + a.size());
            const NodeGrid g = oracle::random_grid_rational(smp, 1, 1);
            for (const LatticePoint& order : a.points()) {
                for (int s = 0; s <= g.p(); ++s) {
                    for (int t = 0; t <= g.q(); ++t) {
                        const Poly2 h = fundamental(g, a, order, s, t);
                        for (const LatticePoint& o2 : a.points()) {
                            for (int s2 = 0; s2 <= g.p(); ++s2)
                                for (int t2 = 0; t2 <= g.q(); ++t2) {
                                    const Rational got = h.derivative_at(
                                        o2, g.xs()[static_cast<std::size_t>(s2)], g.ys()[static_cast<std::size_t>(t2)]);
                                    const bool same = o2 == order && s2 == s && t2 == t;
                                    CHECK(got == (same ? Rational(1) : Rational(0)));
                                }
                        }
                        // ... and lives inside the blow-up of the order set.
                        for (const LatticePoint& e : h.support()) CHECK(blow_up(a, g.p(), g.q()).contains(e));
                    }
                }
            }
        }
    }
}

TEST_CASE("check_delta frozen verdicts") {
    CHECK(check_delta(unit_grid(), LowerSet::triangle(1)));
    CHECK(check_delta(unit_grid(), LowerSet::rectangle(1, 1)));
    CHECK(check_delta(unit_grid(), LowerSet::from_columns({2, 1})));

    // A wider grid exercises p != q.
    const NodeGrid wide({Rational(-1), Rational(0), Rational(1)}, {Rational(0), Rational(1)});
    CHECK(check_delta(wide, LowerSet::from_columns({1, 0})));
}

TEST_CASE("hermite_interpolant reproduces an explicit function") {
    // f(x, y) = 1 + 2x - y with order set {(0,0),(1,0),(0,1),(1,1)}.
    const LowerSet a = LowerSet::rectangle(1, 1);
    const NodeGrid g = unit_grid();
    InterpolationData data;
    for (int i = 0; i <= 1; ++i)
        for (int j = 0; j <= 1; ++j) {
            data[{i, j, {0, 0}}] = Rational(1) + Rational(2 * i) - Rational(j);
            data[{i, j, {1, 0}}] = Rational(2);
            data[{i, j, {0, 1}}] = Rational(-1);
            data[{i, j, {1, 1}}] = Rational(0);
        }
    Poly2 want;
    want.add_term({0, 0}, Rational(1));
    want.add_term({1, 0}, Rational(2));
    want.add_term({0, 1}, Rational(-1));
    CHECK(hermite_interpolant(g, a, data) == want);

    // Key validation.
    InterpolationData bad_order = data;
    bad_order[{0, 0, {2, 0}}] = Rational(1);
    CHECK_THROWS_AS(hermite_interpolant(g, a, bad_order), InputError);
    InterpolationData bad_node = data;
    bad_node[{0, 2, {0, 0}}] = Rational(1);
    CHECK_THROWS_AS(hermite_interpolant(g, a, bad_node), InputError);
    CHECK_THROWS_AS(hermite_interpolant(g, LowerSet(), data), InputError);
}

TEST_CASE("hermite_interpolant agrees with the collocation solver") {
    // Dual route: the corner-telescoped basis expansion must equal the
    // polynomial obtained by solving the collocation system directly.
    const std::vector<LowerSet> shapes{LowerSet::from_columns({1}), LowerSet::triangle(1),
                                       LowerSet::from_columns({2, 0})};
    Sampler smp(602, 0);
    for (const LowerSet& a : shapes) {
        for (int trial = 0; trial < 3; ++trial) {
            const NodeGrid g = oracle::random_grid_rational(smp, 1, 1);
            InterpolationData data;
            for (int i = 0; i <= g.p(); ++i)
                for (int j = 0; j <= g.q(); ++j)
                    for (const LatticePoint& o : a.points())
                        data[{i, j, o}] = Rational(smp.uniform_int(-9, 9), smp.uniform_int(1, 4));
            const Poly2 via_basis = hermite_interpolant(g, a, data);
            const Poly2 via_solver =
                solve(g, DerivativeSet::from_lower(a), blow_up(a, g.p(), g.q()), data);
            CHECK(via_basis == via_solver);
        }
    }
}
