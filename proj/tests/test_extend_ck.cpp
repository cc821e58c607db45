#include <doctest.h>

#include <cmath>
#include <random>

#include "holdex/extend_ck.hpp"

using namespace holdex;

namespace {

const NormedSpace line = NormedSpace::linf(1);
const FiniteMetricSpace three = FiniteMetricSpace::from_points_1d({0.0, 0.5, 1.0});

PartialMap fn_map(std::vector<double> xs, std::vector<FiniteFunction> fns, double K,
                  double alpha, const FiniteMetricSpace& metric = three) {
    std::vector<Point> points;
    for (double x : xs) points.push_back({x});
    return make_fn_map(line, HolderParams{K, alpha}, std::move(points), metric,
                       std::move(fns));
}

} // namespace

TEST_CASE("ck feasibility") {
    const PartialMap single = fn_map({1.0}, {{0.0, 0.4, 1.0}}, 1.0, 1.0);
    for (double delta : {0.1, 0.6, 2.0})
        CHECK(ck_feasible(single, {0.0}, delta).first);

    // Hölder map, delta below the minimal nonzero distance: only t = s pairs
    const PartialMap pm = fn_map({0.0, 1.0}, {{0.0, 0.0, 0.0}, {1.0, 0.5, 0.2}},
                                 1.0, 1.0);
    REQUIRE(is_holder(pm));
    CHECK(ck_feasible(pm, {0.5}, 0.4).first);

    // exhaustive-scan oracle for the worst excess at delta = 0.6
    const Point x{0.25};
    const auto [ok, excess] = ck_feasible(pm, x, 0.6);
    double oracle = -std::numeric_limits<double>::infinity();
    for (std::size_t y = 0; y < 2; ++y)
        for (std::size_t z = 0; z < 2; ++z)
            for (std::size_t t = 0; t < 3; ++t)
                for (std::size_t s = 0; s < 3; ++s) {
                    if (three.rho(t, s) >= 0.6) continue;
                    const double lhs = std::abs(pm.fn_values().fns[y][t] -
                                                pm.fn_values().fns[z][s]);
                    oracle = std::max(oracle, lhs - pm.radius_at(y, x) -
                                                  pm.radius_at(z, x));
                }
    CHECK(excess == doctest::Approx(oracle).epsilon(1e-12));
    CHECK(ok == (oracle <= 1e-9));
}

TEST_CASE("modulus table on the three-point sample") {
    // constant value: xi is flat at -2 K d^alpha, psi and phi vanish
    const PartialMap constant = fn_map({1.0}, {{0.7, 0.7, 0.7}}, 1.0, 1.0);
    const ModulusTable flat = xi_modulus(constant, {0.0});
    for (double v : flat.xi) CHECK(v == doctest::Approx(-2.0).epsilon(1e-12));
    for (double v : flat.psi) CHECK(v == 0.0);
    for (double v : flat.phi_values) CHECK(v == doctest::Approx(0.0).epsilon(1e-12));

    // hand-evaluated xi at 0.5 and 1 for a single point at distance 1
    const PartialMap pm = fn_map({1.0}, {{0.0, 0.4, 1.0}}, 1.0, 1.0);
    const ModulusTable table = xi_modulus(pm, {0.0});
    CHECK(table.diameter == 1.0);
    CHECK(table.xi_at(0.5) == doctest::Approx(0.6 - 2.0).epsilon(1e-12));
    CHECK(table.xi_at(1.0) == doctest::Approx(1.0 - 2.0).epsilon(1e-12));
    // structural properties
    for (std::size_t g = 1; g < table.xi.size(); ++g)
        CHECK(table.xi[g] >= table.xi[g - 1]);
    CHECK(table.psi.front() == 0.0);
    CHECK(table.phi(0.0) == 0.0);
    for (std::size_t g = 0; g < table.lambda_grid.size(); ++g)
        CHECK(table.phi(table.lambda_grid[g]) >= table.psi[g] - 1e-12);
    // constant on [D/2, D]
    CHECK(table.phi(0.5) == doctest::Approx(table.phi(1.0)).epsilon(1e-12));
}

TEST_CASE("modulus rejects degenerate samples") {
    // a one-point sample has no diameter to build the gauge from
    const FiniteMetricSpace one_point(std::vector<std::vector<double>>{{0.0}});
    const PartialMap pm = fn_map({1.0}, {{0.5}}, 1.0, 1.0, one_point);
    CHECK_THROWS_AS(xi_modulus(pm, {0.0}), std::invalid_argument);
}

TEST_CASE("ck extension") {
    // singleton constant: g = c - K d^alpha, bound tight
    const PartialMap constant = fn_map({1.0}, {{0.7, 0.7, 0.7}}, 1.0, 1.0);
    const ModulusTable flat = xi_modulus(constant, {0.0});
    const FiniteFunction g0 = ck_extend(constant, {0.0}, flat);
    for (double v : g0) CHECK(v == doctest::Approx(-0.3).epsilon(1e-12));
    CHECK(sup_dist_fn(g0, constant.fn_values().fns[0]) ==
          doctest::Approx(1.0).epsilon(1e-12));

    // sup formula against a direct scan
    const PartialMap pm = fn_map({1.0}, {{0.0, 0.4, 1.0}}, 1.0, 1.0);
    const ModulusTable table = xi_modulus(pm, {0.0});
    const FiniteFunction g = ck_extend(pm, {0.0}, table);
    for (std::size_t t = 0; t < 3; ++t) {
        double oracle = -std::numeric_limits<double>::infinity();
        for (std::size_t s = 0; s < 3; ++s)
            oracle = std::max(oracle, pm.fn_values().fns[0][s] - 1.0 -
                                          table.phi(three.rho(t, s)));
        CHECK(g[t] == doctest::Approx(oracle).epsilon(1e-12));
    }
    CHECK(extension_excess(pm, {0.0}, g) <= 1e-9);

    // two-point instance: contraction bound against both values
    const PartialMap two = fn_map({0.0, 1.0}, {{0.0, 0.0, 0.0}, {1.0, 0.5, 0.2}},
                                  1.0, 1.0);
    const Point x{0.5};
    const FiniteFunction gx = ck_extend(two, x, xi_modulus(two, x));
    for (std::size_t y = 0; y < 2; ++y)
        CHECK(sup_dist_fn(gx, two.fn_values().fns[y]) <=
              two.radius_at(y, x) * (1.0 + 1e-9));
}

TEST_CASE("inf-convolution into C(K)") {
    const PartialMap pm = fn_map({0.0, 1.0, 2.0},
                                 {{0.0, 0.0, 0.0}, {1.0, 0.5, 0.2}, {1.5, 1.0, 0.9}},
                                 1.0, 1.0);
    // McShane identity on the domain
    CHECK(infconv_ck(pm, {1.0}) == pm.fn_values().fns[1]);
    // matches the coordinatewise scalar inf-convolution
    const Point x{0.7};
    const FiniteFunction g = infconv_ck(pm, x);
    for (std::size_t t = 0; t < 3; ++t) {
        std::vector<double> values;
        for (const auto& fn : pm.fn_values().fns) values.push_back(fn[t]);
        CHECK(g[t] == doctest::Approx(infconv_extend(line, pm.params, pm.points,
                                                     values, x))
                          .epsilon(1e-12));
    }
    // singleton: constant shift
    const PartialMap single = fn_map({1.0}, {{0.0, 0.4, 1.0}}, 1.0, 0.5);
    const FiniteFunction s = infconv_ck(single, {5.0});
    for (std::size_t t = 0; t < 3; ++t)
        CHECK(s[t] == doctest::Approx(single.fn_values().fns[0][t] + 2.0)
                          .epsilon(1e-12));
}

TEST_CASE("almost-isometric extension over a net") {
    const PartialMap single = fn_map({1.0}, {{0.0, 0.4, 1.0}}, 1.0, 1.0);
    const AlmostExtendResult exact = almost_extend_net(single, {0.0}, 0.1);
    CHECK(exact.factor <= 1.1 * (1.0 + 1e-12));

    // x in M short-circuits to the exact value
    const PartialMap pm = fn_map({0.0, 1.0}, {{0.0, 0.0, 0.0}, {1.0, 0.5, 0.2}},
                                 1.0, 1.0);
    const AlmostExtendResult onm = almost_extend_net(pm, {1.0}, 0.25);
    CHECK(onm.factor == 1.0);
    CHECK(std::get<FiniteFunction>(onm.value) == pm.fn_values().fns[1]);

    // a cluster instance where a proper subnet suffices
    std::mt19937_64 rng(55);
    std::uniform_real_distribution<double> jitter(-0.01, 0.01);
    std::vector<double> xs;
    std::vector<FiniteFunction> fns;
    for (int i = 0; i < 20; ++i) {
        xs.push_back((i < 10 ? -1.0 : 1.0) + i * 1e-3);
        const double base = i < 10 ? 0.0 : 0.5;
        fns.push_back({base + jitter(rng), base + jitter(rng), base + jitter(rng)});
    }
    PartialMap cluster = fn_map(std::move(xs), std::move(fns), 1.0, 1.0);
    cluster.params.K = holder_constant(cluster, 1.0) * (1.0 + 1e-12);
    const AlmostExtendResult res = almost_extend_net(cluster, {0.0}, 0.1);
    CHECK(res.factor <= 1.1 * (1.0 + 1e-12));
    CHECK(res.net.size() < cluster.size());
}

TEST_CASE("embedding of subsample functions") {
    // F = K: everything is the identity
    const Embedding id = embed_c_into_ck(three, {0, 1, 2});
    const FiniteFunction f{0.2, -0.5, 0.9};
    CHECK(id.extend(f) == f);
    CHECK(id.project(f) == f);

    // one-point F: constant extension
    const Embedding one = embed_c_into_ck(three, {1});
    const FiniteFunction c = one.extend({0.7});
    CHECK(c == FiniteFunction{0.7, 0.7, 0.7});

    // random subsets: R T = id, norm preservation, idempotence
    std::mt19937_64 rng(56);
    std::uniform_real_distribution<double> val(-2.0, 2.0);
    const FiniteMetricSpace metric =
        FiniteMetricSpace::from_points_1d({0.0, 0.3, 0.5, 0.8, 1.1});
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<std::size_t> subset;
        for (std::size_t i = 0; i < metric.size(); ++i)
            if (val(rng) > 0.0) subset.push_back(i);
        if (subset.empty()) subset.push_back(0);
        const Embedding emb = embed_c_into_ck(metric, subset);
        FiniteFunction on_subset(subset.size());
        for (auto& v : on_subset) v = val(rng);
        const FiniteFunction lifted = emb.extend(on_subset);
        CHECK(emb.restrict(lifted) == on_subset);
        double nf = 0.0, ntf = 0.0;
        for (double v : on_subset) nf = std::max(nf, std::abs(v));
        for (double v : lifted) ntf = std::max(ntf, std::abs(v));
        CHECK(nf == ntf);
        FiniteFunction on_all(metric.size());
        for (auto& v : on_all) v = val(rng);
        const FiniteFunction once = emb.project(on_all);
        CHECK(emb.project(once) == once);
    }
}

TEST_CASE("reduction from C(K) values to sequences") {
    // constant functions become constant sequences
    const PartialMap constants = fn_map({0.0, 1.0}, {{0.3, 0.3, 0.3}, {0.9, 0.9, 0.9}},
                                        1.0, 1.0);
    const PartialMap reduced = reduce_ck_to_c(constants, {{0, 2}});
    REQUIRE(reduced.has_seq_values());
    CHECK(reduced.seq_values().seqs[0] == EcSeq::constant(0.3));
    CHECK(reduced.seq_values().seqs[1] == EcSeq::constant(0.9));

    // witness sampling never increases the constant
    const FiniteMetricSpace six =
        FiniteMetricSpace::from_points_1d({0.0, 0.2, 0.4, 0.6, 0.8, 1.0});
    std::mt19937_64 rng(57);
    std::uniform_real_distribution<double> val(-2.0, 2.0);
    std::vector<FiniteFunction> fns(3, FiniteFunction(6));
    for (auto& fn : fns)
        for (auto& v : fn) v = val(rng);
    PartialMap pm = fn_map({0.0, 1.0, 2.5}, std::move(fns), 1.0, 1.0, six);
    pm.params.K = holder_constant(pm, 1.0) * (1.0 + 1e-12);
    const PartialMap h = reduce_ck_to_c(pm, {{0, 3}, {1, 5}, {2, 4}});
    CHECK(holder_constant(h, 1.0) <= holder_constant(pm, 1.0) * (1.0 + 1e-12));
}
