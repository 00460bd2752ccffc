#include <string>
#include <utility>
#include <vector>

#include <catch2/catch_amalgamated.hpp>

#include "birkhoff/birkhoff.hpp"
#include "oracles.hpp"

using namespace birkhoff;

namespace {

using TraceSpec = std::vector<std::pair<std::string, std::string>>;

void check_trace(const DecisionVerdict& v, const TraceSpec& want) {
    REQUIRE(v.trace.size() == want.size());
    for (std::size_t i = 0; i < want.size(); ++i) {
        INFO("trace step " << i);
        CHECK(v.trace[i].rule == want[i].first);
        CHECK(v.trace[i].detail == want[i].second);
    }
}

}  // namespace

TEST_CASE("NodeSet, node_shape, as_grid") {
    const NodeSet z({{Rational(0), Rational(0)},
                     {Rational(0), Rational(1)},
                     {Rational(0), Rational(2)},
                     {Rational(5), Rational(0)}});
    CHECK(z.size() == 4);
    CHECK(node_shape(z, Axis::Y).y_profile() == std::vector<int>{2, 0});
    CHECK(node_shape(z, Axis::X).y_profile() == std::vector<int>{2, 0});
    CHECK_FALSE(is_cartesian(z));
    CHECK_FALSE(as_grid(z).has_value());

    const NodeSet grid_pts({{Rational(1, 2), Rational(0)},
                            {Rational(1, 2), Rational(1)},
                            {Rational(3), Rational(0)},
                            {Rational(3), Rational(1)}});
    CHECK(is_cartesian(grid_pts));
    const auto g = as_grid(grid_pts);
    REQUIRE(g.has_value());
    CHECK(g->xs() == std::vector<Rational>{Rational(1, 2), Rational(3)});
    CHECK(g->ys() == std::vector<Rational>{Rational(0), Rational(1)});

    CHECK_THROWS_AS(NodeSet({}), InputError);
    CHECK_THROWS_AS(NodeSet({{Rational(1), Rational(1)}, {Rational(1), Rational(1)}}), InputError);
}

TEST_CASE("rectangular_reduction decomposes equal-column order sets") {
    const DerivativeSet a({{0, 0}, {0, 1}, {1, 0}, {1, 1}, {3, 0}, {3, 1}});
    const auto rr = rectangular_reduction(a, LowerSet::rectangle(5, 3), 1, 1);
    REQUIRE(rr.has_value());
    CHECK(rr->s == 2);
    CHECK(rr->t == 1);
    CHECK(rr->shape_ok);
    CHECK(rr->required_shape == LowerSet::rectangle(5, 3));
    CHECK(rr->x_orders == std::vector<int>{0, 1, 3});
    REQUIRE(rr->y_fibers.size() == 3);
    CHECK(rr->y_fibers[0] == std::pair<int, std::vector<int>>{0, {0, 1}});
    CHECK(rr->y_fibers[2] == std::pair<int, std::vector<int>>{3, {0, 1}});

    const auto wrong_shape = rectangular_reduction(a, LowerSet::rectangle(7, 2), 1, 1);
    REQUIRE(wrong_shape.has_value());
    CHECK_FALSE(wrong_shape->shape_ok);
    CHECK(wrong_shape->required_shape == LowerSet::rectangle(5, 3));

    // Unequal fibers rule the reduction out.
    CHECK_FALSE(rectangular_reduction(DerivativeSet({{0, 0}, {1, 0}, {1, 1}}), LowerSet::rectangle(5, 0), 1, 1)
                    .has_value());
    CHECK_FALSE(rectangular_reduction(DerivativeSet({{0, 0}, {0, 1}, {0, 2}, {1, 0}, {2, 0}, {2, 1}}),
                                      LowerSet::rectangle(5, 3), 1, 1)
                    .has_value());
}

TEST_CASE("reduce_rectangular instantiates the univariate schemes") {
    const DerivativeSet a({{0, 0}, {0, 1}, {1, 0}, {1, 1}, {3, 0}, {3, 1}});
    const NodeGrid g({Rational(0), Rational(1)}, {Rational(0), Rational(4)});
    const auto res = reduce_rectangular(g, a, LowerSet::rectangle(5, 3));
    CHECK(res.shape_ok);
    CHECK(res.x_scheme.nodes == g.xs());
    CHECK(res.x_scheme.orders == std::vector<int>{0, 1, 3});
    CHECK(res.x_scheme.degree_bound == 5);
    REQUIRE(res.y_schemes.size() == 3);
    for (const auto& ys : res.y_schemes) {
        CHECK(ys.nodes == g.ys());
        CHECK(ys.orders == std::vector<int>{0, 1});
        CHECK(ys.degree_bound == 3);
    }

    CHECK_THROWS_AS(reduce_rectangular(g, DerivativeSet({{0, 0}, {1, 0}, {1, 1}}), LowerSet::rectangle(5, 0)),
                    InputError);
}

TEST_CASE("move_axis replaces the axis part of A") {
    const DerivativeSet a({{0, 0}, {2, 0}, {0, 1}});
    const LowerSet s = LowerSet::rectangle(5, 0);
    const NodeGrid good({Rational(0), Rational(1), Rational(3)}, {Rational(0)});

    const DerivativeSet identity = move_axis(a, Axis::X, {0, 2}, good, s);
    CHECK(identity == a);

    const DerivativeSet moved = move_axis(a, Axis::X, {1, 0}, good, s);
    CHECK(moved == DerivativeSet({{0, 0}, {1, 0}, {0, 1}}));

    // {0,2} on the symmetric node set {0,1,2} is singular, so the move is invalid.
    const NodeGrid symmetric({Rational(0), Rational(1), Rational(2)}, {Rational(0)});
    CHECK_THROWS_AS(move_axis(a, Axis::X, {0, 2}, symmetric, s), InputError);
    // Wrong replacement size.
    CHECK_THROWS_AS(move_axis(a, Axis::X, {0}, good, s), InputError);
    // No element on the axis at all.
    CHECK_THROWS_AS(move_axis(DerivativeSet({{0, 1}, {0, 2}}), Axis::X, {0}, good, s), InputError);
}

TEST_CASE("strip_removal frozen reductions") {
    const auto [ax, sx] = strip_removal(DerivativeSet({{0, 0}, {2, 0}}), LowerSet::rectangle(3, 1), Axis::X, 1, 1);
    CHECK(ax == DerivativeSet({{0, 0}}));
    CHECK(sx.y_profile() == std::vector<int>{1, 1});

    const auto [ay, sy] = strip_removal(DerivativeSet({{0, 0}, {0, 2}}), LowerSet::rectangle(1, 3), Axis::Y, 1, 1);
    CHECK(ay == DerivativeSet({{0, 0}}));
    CHECK(sy.y_profile() == std::vector<int>{1, 1});
}

TEST_CASE("strip_removal rejects inapplicable inputs") {
    // Too small: the reduced order set would be empty.
    CHECK_THROWS_AS(strip_removal(DerivativeSet({{0, 0}}), LowerSet::rectangle(1, 1), Axis::X, 1, 1), InputError);
    // No element on the chosen axis.
    CHECK_THROWS_AS(strip_removal(DerivativeSet({{0, 1}, {1, 1}}), LowerSet::rectangle(3, 1), Axis::X, 1, 1),
                    InputError);
    // First row width does not match the axis scheme.
    CHECK_THROWS_AS(strip_removal(DerivativeSet({{0, 0}, {1, 0}}), LowerSet::rectangle(4, 1), Axis::X, 1, 1),
                    InputError);
    // The axis scheme must pass the univariate Polya condition.
    CHECK_THROWS_AS(strip_removal(DerivativeSet({{0, 0}, {3, 0}}), LowerSet::rectangle(3, 1), Axis::X, 1, 1),
                    InputError);
    // Trimming the first row would leave a non-lower shape.
    CHECK_THROWS_AS(strip_removal(DerivativeSet({{0, 0}, {1, 0}}), LowerSet::from_columns({1, 1, 1, 1}), Axis::X,
                                  1, 0),
                    InputError);
    // S has fewer rows than the grid height requires.
    CHECK_THROWS_AS(strip_removal(DerivativeSet({{0, 0}, {1, 0}}), LowerSet::from_columns({0, 0}), Axis::X, 0, 1),
                    InputError);
}

TEST_CASE("strip_removal inverts the forward strip construction") {
    // Build (A', S'), append a new largest axis order, widen the first rows,
    // and check the reduction returns exactly the original pair.
    Sampler smp(701, 0);
    for (int trial = 0; trial < 50; ++trial) {
        const int p = smp.uniform_int(0, 2);
        const int q = smp.uniform_int(0, 2);
        const std::vector<std::vector<LatticePoint>> bases{{{0, 0}}, {{0, 0}, {0, 1}}, {{0, 0}, {1, 0}}};
        const auto& base = bases[static_cast<std::size_t>(smp.uniform_int(0, 2))];
        const DerivativeSet a_small(base);
        const LowerSet s_small = blow_up(a_small.to_lower(), p, q);

        // The appended x order must keep both axis schemes Polya-compliant:
        // positions <= index * (p+1).
        const std::vector<int> ax_small = a_small.axis_x();
        const int x_new = smp.uniform_int(static_cast<int>(ax_small.size()),
                                          static_cast<int>(ax_small.size()) * (p + 1));
        if (x_new <= ax_small.back()) continue;
        std::vector<LatticePoint> pts = a_small.points();
        pts.push_back({x_new, 0});
        const DerivativeSet a_big(pts);

        std::vector<int> cols = s_small.y_profile();
        for (int extra = 0; extra < p + 1; ++extra) cols.push_back(q);
        const LowerSet s_big = LowerSet::from_columns(cols);

        const auto [a_back, s_back] = strip_removal(a_big, s_big, Axis::X, p, q);
        CHECK(a_back == a_small);
        CHECK(s_back == s_small);
    }
}

TEST_CASE("classify_no_mixed frozen shapes") {
    const auto wide = classify_no_mixed(DerivativeSet({{0, 0}, {2, 0}}), 2, 0);
    REQUIRE(wide.has_value());
    CHECK(wide->y_profile() == std::vector<int>{0, 0, 0, 0, 0, 0});

    const auto square = classify_no_mixed(DerivativeSet({{0, 0}, {2, 0}}), 1, 1);
    REQUIRE(square.has_value());
    CHECK(*square == LowerSet::rectangle(3, 1));

    CHECK_FALSE(classify_no_mixed(DerivativeSet({{0, 0}, {3, 0}}), 1, 0).has_value());
    CHECK_THROWS_AS(classify_no_mixed(DerivativeSet({{0, 0}, {1, 1}}), 1, 1), InputError);
}

TEST_CASE("classify_one_mixed frozen shapes") {
    const auto shape = classify_one_mixed(DerivativeSet({{0, 0}, {2, 0}, {0, 1}, {1, 1}}), 1, 1);
    REQUIRE(shape.has_value());
    CHECK(shape->y_profile() == std::vector<int>{3, 3, 3, 3});

    // Axis part too small.
    CHECK_FALSE(classify_one_mixed(DerivativeSet({{1, 0}, {0, 1}, {1, 1}}), 1, 1).has_value());
    // Mixed order out of the admissible box.
    CHECK_FALSE(classify_one_mixed(DerivativeSet({{0, 0}, {1, 0}, {0, 1}, {4, 1}}), 1, 1).has_value());
    CHECK_THROWS_AS(classify_one_mixed(DerivativeSet({{0, 0}, {1, 0}}), 1, 1), InputError);
}

TEST_CASE("decide: lower order set, exact blow-up shape") {
    const DecisionVerdict v = decide(DerivativeSet({{0, 0}, {0, 1}}), LowerSet::rectangle(1, 3), 1, 1);
    CHECK(v.status == Status::Regular);
    CHECK_FALSE(v.certificate.has_value());
    CHECK(v.conjectural_flags.empty());
    check_trace(v, {
        {"input", "normal scheme: |A| = 2, |S| = 8, (p,q) = (1,1)"},
        {"structural screen", "Proposition 3.1, the mixed-order bound, Theorem 3.5 and Theorem 3.3 hold"},
        {"Polya screen", "classical and rectangular Polya inequalities hold for every lower subset of S"},
        {"grid Polya", "a shift of A onto the sparse grid points of S exists"},
        {"Theorem 3.4", "A is lower and S is the blow-up of A: regular at every grid"},
    });
}

TEST_CASE("decide: structural violation yields a certificate") {
    const DecisionVerdict v = decide(DerivativeSet({{0, 0}, {1, 1}}), LowerSet::rectangle(3, 1), 1, 1);
    CHECK(v.status == Status::NotAlmostRegular);
    REQUIRE(v.certificate.has_value());
    CHECK_FALSE(v.certificate->conjectural);
    REQUIRE(v.certificate->violations.size() == 3);
    CHECK(v.certificate->violations[0].rule == "Theorem 3.5");
    CHECK(v.certificate->violations[1].rule == "mixed-derivative bound");
    CHECK(v.certificate->violations[2].rule == "Proposition 3.1");
    check_trace(v, {
        {"input", "normal scheme: |A| = 2, |S| = 8, (p,q) = (1,1)"},
        {"Theorem 3.5",
         "structural necessary condition fails: rows 0..1 must have width 2 and columns 0..1 height 2"},
    });
}

TEST_CASE("decide: one mixed order classifier") {
    const DerivativeSet a({{0, 0}, {2, 0}, {0, 1}, {1, 1}});
    const DecisionVerdict v = decide(a, LowerSet::rectangle(3, 3), 1, 1);
    CHECK(v.status == Status::Regular);
    check_trace(v, {
        {"input", "normal scheme: |A| = 4, |S| = 16, (p,q) = (1,1)"},
        {"structural screen", "Proposition 3.1, the mixed-order bound, Theorem 3.5 and Theorem 3.3 hold"},
        {"Polya screen", "classical and rectangular Polya inequalities hold for every lower subset of S"},
        {"grid Polya", "a shift of A onto the sparse grid points of S exists"},
        {"shape", "A is not lower"},
        {"Corollary 3.8", "axis conditions hold and S has the required shape: almost regular"},
        {"Theorem 3.14", "for p = q = 1, almost regular means regular at every grid"},
    });

    // The same order set with the wrong (normal) shape is rejected outright.
    const DecisionVerdict bad = decide(a, LowerSet::rectangle(7, 1), 1, 1);
    CHECK(bad.status == Status::NotAlmostRegular);
    REQUIRE(bad.certificate.has_value());
    CHECK(bad.certificate->violations[0].rule == "Theorem 3.5");
}

TEST_CASE("decide: no mixed order classifier") {
    const DecisionVerdict v = decide(DerivativeSet({{0, 0}, {2, 0}}), LowerSet::rectangle(3, 1), 1, 1);
    CHECK(v.status == Status::Regular);
    REQUIRE(v.trace.size() == 7);
    CHECK(v.trace[4].rule == "shape");
    CHECK(v.trace[5].rule == "Corollary 3.7");
    CHECK(v.trace[5].detail == "axis conditions hold and S has the required shape: almost regular");
    CHECK(v.trace[6].rule == "Theorem 3.14");
}

TEST_CASE("decide: grid-specific axis singularity") {
    const DerivativeSet a({{0, 0}, {2, 0}});
    const LowerSet s = LowerSet::rectangle(5, 0);
    const NodeGrid g({Rational(-1), Rational(0), Rational(1)}, {Rational(0)});

    const DecisionVerdict with_grid = decide(a, s, 2, 0, g);
    CHECK(with_grid.status == Status::NotRegular);
    REQUIRE(with_grid.certificate.has_value());
    CHECK(with_grid.certificate->violations[0].rule == "Theorem 3.6(i)");
    check_trace(with_grid, {
        {"input", "normal scheme: |A| = 2, |S| = 6, (p,q) = (2,0), grid supplied"},
        {"structural screen", "Proposition 3.1, the mixed-order bound, Theorem 3.5 and Theorem 3.3 hold"},
        {"Polya screen", "classical and rectangular Polya inequalities hold for every lower subset of S"},
        {"grid Polya", "a shift of A onto the sparse grid points of S exists"},
        {"Theorem 3.6(i)", "the x-axis scheme is singular at the grid's x nodes"},
    });

    const DecisionVerdict no_grid = decide(a, s, 2, 0);
    CHECK(no_grid.status == Status::AlmostRegular);
    check_trace(no_grid, {
        {"input", "normal scheme: |A| = 2, |S| = 6, (p,q) = (2,0)"},
        {"structural screen", "Proposition 3.1, the mixed-order bound, Theorem 3.5 and Theorem 3.3 hold"},
        {"Polya screen", "classical and rectangular Polya inequalities hold for every lower subset of S"},
        {"grid Polya", "a shift of A onto the sparse grid points of S exists"},
        {"shape", "A is not lower"},
        {"Corollary 3.7", "axis conditions hold and S has the required shape: almost regular"},
    });

    // At an asymmetric grid the same scheme is regular.
    const NodeGrid asym({Rational(-1), Rational(0), Rational(2)}, {Rational(0)});
    const DecisionVerdict ok = decide(a, s, 2, 0, asym);
    CHECK(ok.status == Status::Regular);
    REQUIRE(ok.witness.has_value());
    CHECK(ok.witness->xs() == asym.xs());
}

TEST_CASE("decide: rectangular reduction route") {
    const DerivativeSet a({{0, 0}, {0, 1}, {1, 0}, {1, 1}, {3, 0}, {3, 1}});
    const DecisionVerdict v = decide(a, LowerSet::rectangle(5, 3), 1, 1);
    CHECK(v.status == Status::Regular);
    check_trace(v, {
        {"input", "normal scheme: |A| = 6, |S| = 24, (p,q) = (1,1)"},
        {"structural screen", "Proposition 3.1, the mixed-order bound, Theorem 3.5 and Theorem 3.3 hold"},
        {"Polya screen", "classical and rectangular Polya inequalities hold for every lower subset of S"},
        {"grid Polya", "a shift of A onto the sparse grid points of S exists"},
        {"shape", "A is not lower"},
        {"Theorem 3.2", "as given: all reduced univariate schemes pass the Polya test"},
        {"Theorem 3.14", "for p = q = 1, almost regular means regular at every grid"},
    });
}

TEST_CASE("decide: inconclusive beyond every exact route") {
    const DerivativeSet a({{0, 0}, {1, 0}, {2, 0}, {0, 1}, {0, 2}, {1, 2}, {1, 3}, {2, 1}});
    const LowerSet s = LowerSet::from_columns({8, 8, 8, 7, 7, 7, 6, 6, 6});
    DecideOptions opt;
    opt.probe_trials = 0;
    const DecisionVerdict v = decide(a, s, 2, 2, std::nullopt, opt);
    CHECK(v.status == Status::Inconclusive);
    CHECK_FALSE(v.certificate.has_value());
    CHECK_FALSE(v.witness.has_value());
    REQUIRE(v.conjectural_flags.size() == 2);
    CHECK(v.conjectural_flags[0] ==
          "grid Polya condition fails (|L n A| = 8 < n_{p,q}(L) = 9); conjecturally not almost regular");
    CHECK(v.conjectural_flags[1] == "random probing disabled (trials = 0); conjecturally not almost regular");
    check_trace(v, {
        {"input", "normal scheme: |A| = 8, |S| = 72, (p,q) = (2,2)"},
        {"structural screen", "Proposition 3.1, the mixed-order bound, Theorem 3.5 and Theorem 3.3 hold"},
        {"Polya screen", "skipped: |S| = 72 exceeds max_enum = 24"},
        {"grid Polya (Conjecture 3.12)", "fails; recorded as a conjectural flag only"},
        {"shape", "A is not lower"},
        {"Theorem 3.2", "no orientation makes the columns of A equal-sized; reduction not applicable"},
        {"probe", "probing disabled; inconclusive"},
    });

    // With a few probe trials the result is still a deterministic inconclusive.
    DecideOptions opt2;
    opt2.probe_trials = 6;
    const DecisionVerdict v2 = decide(a, s, 2, 2, std::nullopt, opt2);
    CHECK(v2.status == Status::Inconclusive);
    REQUIRE(v2.conjectural_flags.size() == 2);
    CHECK(v2.conjectural_flags[1] ==
          "random probing found no regular grid (trials = 6, seed = 0); conjecturally not almost regular");
    CHECK(v2.trace.back().rule == "probe");
    CHECK(v2.trace.back().detail == "no regular grid found in 6 trial(s); inconclusive");

    // Determinism: identical calls give identical verdicts.
    const DecisionVerdict v3 = decide(a, s, 2, 2, std::nullopt, opt);
    CHECK(v3.status == v.status);
    REQUIRE(v3.trace.size() == v.trace.size());
    for (std::size_t i = 0; i < v.trace.size(); ++i) {
        CHECK(v3.trace[i].rule == v.trace[i].rule);
        CHECK(v3.trace[i].detail == v.trace[i].detail);
    }
    CHECK(v3.conjectural_flags == v.conjectural_flags);
}

TEST_CASE("decide input validation") {
    CHECK_THROWS_AS(decide(DerivativeSet({{0, 0}}), LowerSet::rectangle(1, 0), 1, 1), InputError);
    CHECK_THROWS_AS(decide(DerivativeSet({{0, 0}}), LowerSet::rectangle(1, 1), -1, 1), InputError);
    const NodeGrid g({Rational(0), Rational(1)}, {Rational(0), Rational(1)});
    CHECK_THROWS_AS(decide(DerivativeSet({{0, 0}}), LowerSet::rectangle(2, 1), 2, 1, g), InputError);
}

TEST_CASE("decide verdicts agree with raw determinants") {
    // Regular / NotRegular with a supplied grid must match determinant(...) != 0.
    Sampler smp(702, 0);
    int checked = 0;
    for (int trial = 0; trial < 200 && checked < 20; ++trial) {
        const LowerSet shape = oracle::random_lower_set(smp, 3, 3);
        if (shape.empty() || shape.size() > 4) continue;
        const int p = smp.uniform_int(0, 2);
        const int q = smp.uniform_int(0, 2);
        const DerivativeSet a = DerivativeSet::from_lower(shape);
        const LowerSet s = blow_up(shape, p, q);
        const NodeGrid g = oracle::random_grid_int(smp, p, q, 40);
        const DecisionVerdict v = decide(a, s, p, q, g);
        ++checked;
        REQUIRE((v.status == Status::Regular || v.status == Status::NotRegular));
        CHECK((v.status == Status::Regular) == (determinant(g, a, s) != 0));
    }
    REQUIRE(checked == 20);
}
