#include <doctest.h>

#include <cmath>

#include "holdex/counterexample.hpp"

using namespace holdex;

namespace {

// exact for integer powers below 2^53
double pw(double b, int e) {
    double v = 1.0;
    for (int i = 0; i < e; ++i) v *= b;
    return v;
}

} // namespace

TEST_CASE("constant selection inequality") {
    CHECK(selection_value(10.0) == doctest::Approx(0.3719).epsilon(1e-3));
    CHECK_FALSE(selection_ok(10.0));
    CHECK(selection_value(11.0) == doctest::Approx(0.38195).epsilon(1e-4));
    CHECK(selection_ok(11.0));
    CHECK(select_K(2, 100) == 11);
    CHECK_FALSE(select_K(2, 10).has_value());
}

TEST_CASE("instance generation and its re-verified inequalities") {
    const CounterexampleInstance inst = gen_counterexample(11.0, 1, 4);
    CHECK(inst.pm.size() == 8);
    CHECK(inst.n0 == 1);
    CHECK(holder_constant(inst.pm, 1.0) <= 1.0 + 1e-9);

    // cross value distances are exact
    const auto& seqs = inst.pm.seq_values().seqs;
    for (int n = 1; n <= 4; ++n)
        for (int m = 1; m <= 4; ++m) {
            double expect = 7.0 / 8.0;
            expect += pw(11.0, 2 * n) + pw(11.0, 2 * m);
            CHECK(sup_dist(seqs[static_cast<std::size_t>(n - 1)],
                           seqs[static_cast<std::size_t>(4 + m - 1)]) == expect);
        }

    // same-block value distances obey the bound the domain provides
    const NormedSpace& space = inst.pm.space;
    for (int n = 2; n <= 4; ++n)
        for (int m = 1; m < n; ++m) {
            const double bound =
                pw(11.0, 2 * n) - pw(11.0, 2 * m) + 3.0 / 8.0;
            CHECK(sup_dist(seqs[static_cast<std::size_t>(n - 1)],
                           seqs[static_cast<std::size_t>(m - 1)]) <= bound);
            CHECK(space.dist(inst.pm.points[static_cast<std::size_t>(n - 1)],
                             inst.pm.points[static_cast<std::size_t>(m - 1)]) >=
                  bound - 1e-9 * bound);
        }

    // norm bound ||x_n|| <= K^2n + 1/2
    for (int n = 1; n <= 4; ++n)
        CHECK(space.norm(inst.pm.points[static_cast<std::size_t>(n - 1)]) <=
              pw(11.0, 2 * n) + 0.5);
}

TEST_CASE("minimal instance") {
    const CounterexampleInstance inst = gen_counterexample(11.0, 1, 1);
    CHECK(inst.pm.size() == 2);
    const double expect = 2.0 * 121.0 + 7.0 / 8.0;
    CHECK(sup_dist(inst.pm.seq_values().seqs[0], inst.pm.seq_values().seqs[1]) ==
          expect);
    CHECK(inst.pm.space.dist(inst.pm.points[0], inst.pm.points[1]) >= expect);

    const ObstructionCertificate cert = verify_counterexample(inst);
    CHECK(cert.odd_lo_min >= 1.0 / 8.0 - 1e-9);
    CHECK(cert.minimal_prefix_length >= 1);
}

TEST_CASE("generation rejects bad parameters") {
    CHECK_THROWS_AS(gen_counterexample(10.0, 1, 4), std::invalid_argument);
    CHECK_THROWS_AS(gen_counterexample(11.0, 0, 4), std::invalid_argument);
    CHECK_THROWS_AS(gen_counterexample(11.0, 3, 2), std::invalid_argument);
    const int safe = max_safe_truncation(11.0);
    CHECK(safe == 5);
    CHECK_THROWS_AS(gen_counterexample(11.0, 1, safe + 1), std::invalid_argument);
}

TEST_CASE("obstruction certificate") {
    const CounterexampleInstance inst = gen_counterexample(11.0, 1, 4);
    const ObstructionCertificate cert = verify_counterexample(inst);
    CHECK(cert.oscillation_ok);
    CHECK(cert.odd_lo_min >= 1.0 / 8.0 - 1e-9);   // odd k in {1, 3}
    CHECK(cert.even_hi_max <= -1.0 / 8.0 + 1e-9); // even k in {2, 4}
    CHECK(cert.minimal_prefix_length >= 4);

    // adding truncation levels shrinks the shared forced intervals
    const ObstructionCertificate c2 = verify_counterexample(gen_counterexample(11.0, 1, 2));
    for (std::size_t k = 0; k < c2.intervals.per_coordinate.size(); ++k)
        CHECK(c2.intervals.per_coordinate[k].covers(cert.intervals.per_coordinate[k],
                                                    1e-9));
    CHECK(c2.intervals.tail_interval.covers(cert.intervals.tail_interval, 1e-9));

    int prev = 0;
    for (int N = 1; N <= 5; ++N) {
        const int p = verify_counterexample(gen_counterexample(11.0, 1, N))
                          .minimal_prefix_length;
        CHECK(p >= prev);
        CHECK(p >= N);
        prev = p;
    }
}
