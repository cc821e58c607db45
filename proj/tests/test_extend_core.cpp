#include <doctest.h>

#include <cmath>
#include <random>

#include "holdex/extend_core.hpp"

using namespace holdex;

namespace {

const NormedSpace line = NormedSpace::linf(1);

PartialMap scalar_map(std::vector<double> xs, std::vector<double> fs, double K,
                      double alpha) {
    std::vector<Point> points;
    for (double x : xs) points.push_back({x});
    std::vector<EcSeq> seqs;
    for (double f : fs) seqs.push_back(EcSeq::constant(f));
    return make_seq_map(line, HolderParams{K, alpha}, std::move(points),
                        std::move(seqs));
}

/// Brute-force endpoints: scan candidate values on a grid and keep the
/// feasible range.
Interval grid_interval(const std::vector<double>& xs, const std::vector<double>& fs,
                       double K, double alpha, double x, double step) {
    double span_lo = fs[0], span_hi = fs[0];
    std::vector<double> radii(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) {
        radii[i] = K * std::pow(std::abs(xs[i] - x), alpha);
        span_lo = std::min(span_lo, fs[i] - radii[i]);
        span_hi = std::max(span_hi, fs[i] + radii[i]);
    }
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    for (double v = span_lo; v <= span_hi; v += step) {
        bool ok = true;
        for (std::size_t i = 0; i < xs.size(); ++i)
            ok = ok && std::abs(v - fs[i]) <= radii[i] + 1e-12;
        if (ok) {
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
    }
    return Interval::of(lo, hi);
}

} // namespace

TEST_CASE("interval arithmetic") {
    const Interval a = Interval::of(0.0, 2.0);
    CHECK(a.mid() == 1.0);
    CHECK(a.width() == 2.0);
    CHECK(a.contains(0.0));
    CHECK_FALSE(a.contains(-0.1));
    CHECK(a.clamp(5.0) == 2.0);
    CHECK(a.clamp(-5.0) == 0.0);
    CHECK(Interval::of(2.0, 1.0).empty);
    const Interval b = a.intersect(Interval::of(1.5, 3.0));
    CHECK(b.lo == 1.5);
    CHECK(b.hi == 2.0);
    CHECK(a.covers(b));
    CHECK_FALSE(b.covers(a));
    CHECK(pick(a, Policy::Lo) == 0.0);
    CHECK(pick(a, Policy::Hi) == 2.0);
    CHECK(pick(a, Policy::Mid) == 1.0);
}

TEST_CASE("partial map construction rejects bad input") {
    CHECK_THROWS_AS(scalar_map({}, {}, 1.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(scalar_map({0.0, 0.0}, {1.0, 2.0}, 1.0, 1.0),
                    std::invalid_argument); // coincident points
    CHECK_THROWS_AS(scalar_map({0.0, 1.0}, {1.0}, 1.0, 1.0), std::invalid_argument);
    const FiniteMetricSpace metric = FiniteMetricSpace::from_points_1d({0.0, 1.0});
    CHECK_THROWS_AS(make_fn_map(line, HolderParams{1.0, 1.0}, {{0.0}}, metric,
                                {{1.0, 2.0, 3.0}}),
                    std::invalid_argument); // function size != metric size
}

TEST_CASE("holder constant") {
    CHECK(holder_constant(scalar_map({0.0, 1.0}, {0.0, 2.0}, 1.0, 1.0), 1.0) == 2.0);
    CHECK(holder_constant(scalar_map({5.0}, {1.0}, 1.0, 1.0), 1.0) == 0.0);
    const PartialMap pm = scalar_map({0.0, 1.0, 3.0}, {0.0, 2.0, 2.5}, 2.0, 1.0);
    CHECK(is_holder(pm));
    CHECK(holder_excess(pm) <= 0.0);
    const PartialMap bad = scalar_map({0.0, 1.0}, {0.0, 5.0}, 1.0, 1.0);
    CHECK_FALSE(is_holder(bad));
}

TEST_CASE("feasibility interval matches hand values and the grid oracle") {
    // two points straddling x = 0 force the single value 1
    const Interval iv = feasibility_interval(line, HolderParams{1.0, 1.0},
                                             {{-1.0}, {2.0}}, {0.0, 3.0}, {0.0});
    CHECK(iv.lo == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(iv.hi == doctest::Approx(1.0).epsilon(1e-12));

    // singleton: the full radius band
    const Interval single = feasibility_interval(line, HolderParams{2.0, 0.5}, {{1.0}},
                                                 {3.0}, {5.0});
    CHECK(single.lo == doctest::Approx(3.0 - 4.0).epsilon(1e-12));
    CHECK(single.hi == doctest::Approx(3.0 + 4.0).epsilon(1e-12));

    // alpha = 0.5 example with hand-computed endpoints
    const Interval half = feasibility_interval(line, HolderParams{1.0, 0.5},
                                               {{0.0}, {1.0}}, {0.0, 1.0}, {4.0});
    CHECK(half.lo == doctest::Approx(1.0 - std::sqrt(3.0)).epsilon(1e-12));
    CHECK(half.hi == doctest::Approx(2.0).epsilon(1e-12));

    std::mt19937_64 rng(77);
    std::uniform_real_distribution<double> coord(-3.0, 3.0);
    for (int trial = 0; trial < 25; ++trial) {
        std::vector<double> xs{coord(rng), coord(rng), coord(rng)};
        if (std::abs(xs[0] - xs[1]) < 1e-3 || std::abs(xs[0] - xs[2]) < 1e-3 ||
            std::abs(xs[1] - xs[2]) < 1e-3)
            continue;
        std::vector<double> fs{coord(rng), coord(rng), coord(rng)};
        const double alpha = trial % 2 == 0 ? 1.0 : 0.5;
        double K = 0.0;
        for (std::size_t i = 0; i < 3; ++i)
            for (std::size_t j = i + 1; j < 3; ++j)
                K = std::max(K, std::abs(fs[i] - fs[j]) /
                                    std::pow(std::abs(xs[i] - xs[j]), alpha));
        K *= 1.0 + 1e-12;
        std::vector<Point> points{{xs[0]}, {xs[1]}, {xs[2]}};
        const double x = coord(rng);
        const Interval exact = feasibility_interval(line, HolderParams{K, alpha},
                                                    points, fs, {x});
        REQUIRE_FALSE(exact.empty);
        const Interval approx = grid_interval(xs, fs, K, alpha, x, 1e-3);
        CHECK(std::abs(exact.lo - approx.lo) <= 2e-3);
        CHECK(std::abs(exact.hi - approx.hi) <= 2e-3);
    }
}

TEST_CASE("inf-convolution and sup extension") {
    // McShane identity on the domain
    CHECK(infconv_extend(line, HolderParams{1.0, 1.0}, {{-1.0}, {2.0}}, {0.0, 3.0},
                         {2.0}) == doctest::Approx(3.0).epsilon(1e-12));
    CHECK(sup_extend(line, HolderParams{1.0, 1.0}, {{-1.0}, {2.0}}, {0.0, 3.0},
                     {-1.0}) == doctest::Approx(0.0).epsilon(1e-12));
    // hand value at x = 0: min(0 + 1, 3 + 2) = 1 = max(0 - 1, 3 - 2)
    CHECK(infconv_extend(line, HolderParams{1.0, 1.0}, {{-1.0}, {2.0}}, {0.0, 3.0},
                         {0.0}) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(sup_extend(line, HolderParams{1.0, 1.0}, {{-1.0}, {2.0}}, {0.0, 3.0},
                     {0.0}) == doctest::Approx(1.0).epsilon(1e-12));
    // singleton formulas
    CHECK(infconv_extend(line, HolderParams{1.0, 0.5}, {{0.0}}, {2.0}, {4.0}) ==
          doctest::Approx(4.0).epsilon(1e-12));
    CHECK(sup_extend(line, HolderParams{1.0, 0.5}, {{0.0}}, {2.0}, {4.0}) ==
          doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("interval shrinks when points are added") {
    std::mt19937_64 rng(123);
    std::uniform_real_distribution<double> coord(-2.0, 2.0);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<double> xs{coord(rng), coord(rng), coord(rng)};
        std::vector<double> fs{coord(rng), coord(rng), coord(rng)};
        const double K = 6.0; // generous enough to keep everything feasible
        std::vector<Point> pts{{xs[0]}, {xs[1]}, {xs[2]}};
        const Point x{coord(rng)};
        const Interval two = feasibility_interval(line, HolderParams{K, 1.0},
                                                  {pts[0], pts[1]}, {fs[0], fs[1]}, x);
        const Interval three = feasibility_interval(line, HolderParams{K, 1.0}, pts,
                                                    fs, x);
        CHECK(two.lo <= three.lo + 1e-12);
        CHECK(two.hi >= three.hi - 1e-12);
    }
}

TEST_CASE("vector extension into linf coordinates") {
    // degenerate intervals force (1, -1) regardless of policy
    const FiniteMetricSpace metric = FiniteMetricSpace::from_points_1d({0.0, 1.0});
    const PartialMap pm =
        make_fn_map(line, HolderParams{1.0, 1.0}, {{-1.0}, {2.0}}, metric,
                    {{0.0, 0.0}, {3.0, -3.0}});
    for (const Policy policy : {Policy::Lo, Policy::Hi, Policy::Mid}) {
        const FiniteFunction g = linf_vector_extend(pm, {0.0}, policy);
        REQUIRE(g.size() == 2);
        CHECK(g[0] == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(g[1] == doctest::Approx(-1.0).epsilon(1e-12));
        CHECK(extension_excess(pm, {0.0}, g) <= 1e-9);
    }

    // singleton: mid policy returns the value itself
    const PartialMap single = make_fn_map(line, HolderParams{1.0, 1.0}, {{0.0}},
                                          metric, {{0.25, 0.75}});
    const FiniteFunction copy = linf_vector_extend(single, {2.0}, Policy::Mid);
    CHECK(copy == FiniteFunction{0.25, 0.75});
}

TEST_CASE("extension excess flags bad extensions") {
    const PartialMap pm = scalar_map({0.0, 1.0}, {0.0, 1.0}, 1.0, 1.0);
    CHECK(extension_excess(pm, {0.5}, EcSeq::constant(0.5)) <= 0.0);
    CHECK(extension_excess(pm, {0.5}, EcSeq::constant(5.0)) > 1.0);
}
