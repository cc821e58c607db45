#include <doctest.h>

#include <cmath>
#include <random>

#include "holdex/extend_c.hpp"

using namespace holdex;

namespace {

const NormedSpace line = NormedSpace::linf(1);

PartialMap seq_map(std::vector<double> xs, std::vector<EcSeq> seqs, double K,
                   double alpha) {
    std::vector<Point> points;
    for (double x : xs) points.push_back({x});
    return make_seq_map(line, HolderParams{K, alpha}, std::move(points),
                        std::move(seqs));
}

} // namespace

TEST_CASE("cone cover in dimension 1") {
    const ConeCover cover = cone_cover(line, 0.3);
    REQUIRE(cover.directions.size() == 2);
    CHECK(cover.assign({2.5}) != cover.assign({-0.1}));
    CHECK_FALSE(cover.assign({0.0}).has_value());
    // the cone inequality is an identity on a ray
    CHECK(line.dist({3.0}, {1.0}) <= 3.0 - (1.0 - 0.3) * 1.0);
}

TEST_CASE("cone cover net density and cone inequality") {
    const NormedSpace linf2 = NormedSpace::linf(2);
    const ConeCover wide = cone_cover(linf2, 1.0 - 1e-9);
    for (const auto& dir : wide.directions)
        CHECK(linf2.norm(dir) == doctest::Approx(1.0).epsilon(1e-12));

    const NormedSpace plane = NormedSpace::lp(2.0, 2);
    const double delta = 0.5;
    const ConeCover cover = cone_cover(plane, delta);
    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> coord(-2.0, 2.0);
    int same_cone_pairs = 0;
    while (same_cone_pairs < 10000) {
        const Point x{coord(rng), coord(rng)};
        const Point y{coord(rng), coord(rng)};
        const double nx = plane.norm(x);
        const double ny = plane.norm(y);
        if (nx < 1e-9 || ny < 1e-9 || nx < ny) continue;
        const auto cx = cover.assign(x);
        const auto cy = cover.assign(y);
        if (cx != cy) continue;
        // only pairs genuinely inside the cone carry the guarantee
        const Point ux{x[0] / nx, x[1] / nx};
        const Point uy{y[0] / ny, y[1] / ny};
        const Point& dir = cover.directions[*cx];
        if (plane.dist(ux, dir) > delta / 2.0 || plane.dist(uy, dir) > delta / 2.0)
            continue;
        ++same_cone_pairs;
        CHECK(plane.dist(x, y) <= nx - (1.0 - delta) * ny + 1e-9);
    }
}

TEST_CASE("cone cover rejects bad parameters") {
    CHECK_THROWS_AS(cone_cover(line, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(cone_cover(line, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(cone_cover(line, 0.5, 0), std::invalid_argument);
}

TEST_CASE("c0 extension on hand-checked instances") {
    // singleton: the zero sequence is within distance K d^alpha of f(1)
    const PartialMap single = seq_map({1.0}, {EcSeq({}, 0.0)}, 1.0, 1.0);
    const auto [u0, trace0] = c0_extend(single, {0.0});
    CHECK(u0 == EcSeq({}, 0.0));

    // two points on a ray
    const PartialMap pm =
        seq_map({1.0, 2.0}, {EcSeq({1.0}, 0.0), EcSeq({2.0}, 0.0)}, 1.0, 1.0);
    const auto [u, trace] = c0_extend(pm, {0.0});
    CHECK(u.tail() == 0.0);
    REQUIRE(u.prefix_size() == 1);
    CHECK(u.at(1) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(sup_dist(u, EcSeq({1.0}, 0.0)) <= 1.0 + 1e-9);
    CHECK(sup_dist(u, EcSeq({2.0}, 0.0)) <= 2.0 + 1e-9);
    CHECK(trace.cutoff == 1);

    CHECK_THROWS_AS(c0_extend(pm, {1.0}), std::invalid_argument); // x0 in M
    const PartialMap not_c0 = seq_map({1.0}, {EcSeq({}, 0.5)}, 1.0, 1.0);
    CHECK_THROWS_AS(c0_extend(not_c0, {0.0}), std::invalid_argument);
}

TEST_CASE("c0 extension on random planar instances") {
    const NormedSpace linf2 = NormedSpace::linf(2);
    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> coord(-3.0, 3.0);
    for (int trial = 0; trial < 10; ++trial) {
        const double alpha = trial % 2 == 0 ? 1.0 : 0.5;
        const int m = 2 + trial % 5;
        std::vector<Point> points;
        while (static_cast<int>(points.size()) < m) {
            Point p{coord(rng), coord(rng)};
            bool fresh = linf2.norm(p) > 0.5;
            for (const auto& q : points) fresh = fresh && linf2.dist(p, q) > 1e-3;
            if (fresh) points.push_back(std::move(p));
        }
        std::vector<EcSeq> seqs;
        for (int i = 0; i < m; ++i) {
            std::vector<double> prefix(static_cast<std::size_t>(1 + trial % 3));
            for (auto& v : prefix) v = coord(rng);
            seqs.emplace_back(std::move(prefix), 0.0);
        }
        PartialMap pm = make_seq_map(linf2, HolderParams{1.0, alpha}, points, seqs);
        pm.params.K = holder_constant(pm, alpha) * (1.0 + 1e-12) + 1e-9;
        const Point x0{0.0, 0.0};
        const auto [u, trace] = c0_extend(pm, x0);
        CHECK(u.tail() == 0.0);
        CHECK(extension_excess(pm, x0, u) <= 1e-9);
    }
}

TEST_CASE("c feasibility criterion") {
    const PartialMap single = seq_map({1.0}, {EcSeq({}, 0.7)}, 2.0, 0.5);
    const CFeasibility sf = c_feasible(single, {5.0});
    CHECK(sf.feasible);
    CHECK(sf.margin == doctest::Approx(2.0 * 2.0 * 2.0).epsilon(1e-12));

    const PartialMap pm =
        seq_map({-1.0, 1.0}, {EcSeq({}, 0.0), EcSeq({}, 1.0)}, 1.0, 1.0);
    const CFeasibility f = c_feasible(pm, {0.0});
    CHECK(f.feasible);
    CHECK(f.margin == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(f.witness_y != f.witness_z);
}

TEST_CASE("forced intervals") {
    // both values the zero sequence: every interval is the radius band
    const PartialMap pm =
        seq_map({-1.0, 1.0}, {EcSeq({}, 0.0), EcSeq({}, 0.0)}, 1.0, 1.0);
    const FeasibilityCertificate cert = forced_intervals(pm, {0.0});
    CHECK(cert.tail_interval.lo == doctest::Approx(-1.0).epsilon(1e-12));
    CHECK(cert.tail_interval.hi == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(cert.per_coordinate.empty());

    // singleton: every interval centered at the value
    const PartialMap single = seq_map({1.0}, {EcSeq({2.0}, 0.5)}, 1.0, 1.0);
    const FeasibilityCertificate sc = forced_intervals(single, {0.0});
    REQUIRE(sc.per_coordinate.size() == 1);
    CHECK(sc.per_coordinate[0].lo == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(sc.per_coordinate[0].hi == doctest::Approx(3.0).epsilon(1e-12));
    CHECK(sc.tail_interval.lo == doctest::Approx(-0.5).epsilon(1e-12));
    CHECK(sc.tail_interval.hi == doctest::Approx(1.5).epsilon(1e-12));
}

TEST_CASE("c extension") {
    // singleton, mid policy: the value itself comes back
    const PartialMap single = seq_map({1.0}, {EcSeq({2.0}, 0.5)}, 1.0, 1.0);
    const auto [gs, ts] = c_extend(single, {0.0});
    CHECK(gs.at(1) == doctest::Approx(2.0).epsilon(1e-12));

    // tails 0 and 1 at distance 1 each: s(inf) = 0, clamped tail 0
    const PartialMap pm =
        seq_map({-1.0, 1.0}, {EcSeq({}, 0.0), EcSeq({}, 1.0)}, 1.0, 1.0);
    const auto [g, trace] = c_extend(pm, {0.0});
    CHECK(trace.s_inf == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(g.tail() == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(g.prefix_size() == 0);
    CHECK(extension_excess(pm, {0.0}, g) <= 1e-9);

    for (const Policy policy : {Policy::Lo, Policy::Hi, Policy::Mid}) {
        const auto [gp, tp] = c_extend(pm, {0.0}, policy);
        CHECK(extension_excess(pm, {0.0}, gp) <= 1e-9);
    }
}

TEST_CASE("linf covering lemma on hand-checked instances") {
    // one-dimensional ray
    const PartitionTrace t1 = linf_partition({{1.0}, {3.0}}, 0.1);
    std::size_t covered = 0;
    for (const auto& cell : t1.cells) covered += cell.members.size();
    CHECK(covered >= 2);
    for (const auto& cell : t1.cells) {
        if (cell.members.size() == 2) {
            CHECK(cell.representative == 0); // minimal norm
            CHECK(std::abs(3.0 - 1.0) <= 3.0 - 1.0 + 0.1);
        }
    }

    // all three points in the cone x1 = ||x||
    const std::vector<Point> M{{2.0, 1.0}, {3.0, 1.0}, {5.0, 2.0}};
    const PartitionTrace t2 = linf_partition(M, 0.5);
    const NormedSpace linf2 = NormedSpace::linf(2);
    std::vector<bool> seen(M.size(), false);
    for (const auto& cell : t2.cells) {
        const Point& rep = M[cell.representative];
        for (std::size_t idx : cell.members) {
            seen[idx] = true;
            CHECK(linf2.norm(M[idx]) >= linf2.norm(rep) - 0.5 - 1e-12);
            CHECK(linf2.dist(M[idx], rep) <=
                  linf2.norm(M[idx]) - linf2.norm(rep) + 0.5 + 1e-12);
        }
    }
    for (bool b : seen) CHECK(b);
}

TEST_CASE("linf covering lemma on random sets") {
    std::mt19937_64 rng(404);
    std::uniform_real_distribution<double> coord(-2.0, 2.0);
    const double eps = 0.1;
    const NormedSpace linf3 = NormedSpace::linf(3);
    std::vector<Point> M;
    while (M.size() < 30) {
        Point p{coord(rng), coord(rng), coord(rng)};
        if (linf3.norm(p) > 0.0) M.push_back(std::move(p));
    }
    const PartitionTrace trace = linf_partition(M, eps);
    std::vector<bool> seen(M.size(), false);
    for (const auto& cell : trace.cells) {
        const Point& rep = M[cell.representative];
        bool rep_member = false;
        for (std::size_t idx : cell.members) {
            seen[idx] = true;
            rep_member = rep_member || idx == cell.representative;
            CHECK(linf3.norm(M[idx]) >= linf3.norm(rep) - eps - 1e-9);
            CHECK(linf3.dist(M[idx], rep) <=
                  linf3.norm(M[idx]) - linf3.norm(rep) + eps + 1e-9);
        }
        CHECK(rep_member);
    }
    for (bool b : seen) CHECK(b);

    CHECK_THROWS_AS(linf_partition({}, 0.1), std::invalid_argument);
    CHECK_THROWS_AS(linf_partition({{0.0}}, 0.1), std::invalid_argument);
    CHECK_THROWS_AS(linf_partition({{1.0}}, 0.0), std::invalid_argument);
}
