#include "holdex/counterexample.hpp"

#include <cmath>
#include <string>

namespace holdex {

double selection_value(double Kparam) {
    const double k2 = Kparam * Kparam;
    const double ratio = Kparam / (Kparam + 1.0);
    return 0.5 * ((k2 - 1.0) / k2) * ratio * ratio * ratio;
}

bool selection_ok(double Kparam) {
    return Kparam > 1.0 && selection_value(Kparam) > 3.0 / 8.0;
}

std::optional<int> select_K(int lo, int hi) {
    for (int k = lo; k <= hi; ++k)
        if (selection_ok(k)) return k;
    return std::nullopt;
}

namespace {

double pow_int(double base, int e) {
    double v = 1.0;
    for (int i = 0; i < e; ++i) v *= base;
    return v;
}

} // namespace

int max_safe_truncation(double Kparam) {
    // need 3/8 resolvable at relative 1e-12 against K^2N
    int n = 0;
    while (pow_int(Kparam, 2 * (n + 1)) <= (3.0 / 8.0) * 1e12) ++n;
    return n;
}

CounterexampleInstance gen_counterexample(double Kparam, int n1, int N) {
    if (!selection_ok(Kparam))
        throw std::invalid_argument(
            "gen_counterexample: K fails the selection inequality, value " +
            std::to_string(selection_value(Kparam)) + " <= 3/8");
    if (n1 < 1 || N < n1)
        throw std::invalid_argument("gen_counterexample: need 1 <= n1 <= N");
    const int safe = max_safe_truncation(Kparam);
    if (N > safe)
        throw std::invalid_argument(
            "gen_counterexample: N exceeds the double-precision bound; max safe N is " +
            std::to_string(safe));

    CounterexampleInstance inst;
    inst.Kparam = Kparam;
    inst.n1 = n1;
    inst.N = N;

    const NormedSpace plane = NormedSpace::lp(2.0, 2);
    const NormedSpace space = NormedSpace::l1_sum({plane, plane});

    std::vector<Point> points;
    std::vector<EcSeq> values;
    for (int block = 0; block < 2; ++block) {
        for (int n = n1; n <= N; ++n) {
            const double k2n = pow_int(Kparam, 2 * n);
            const double kn = pow_int(Kparam, n);
            if (block == 0)
                points.push_back({k2n, kn, 0.0, 0.0});
            else
                points.push_back({0.0, 0.0, k2n, kn});
            std::vector<double> prefix(static_cast<std::size_t>(n));
            for (int k = 1; k <= n; ++k) {
                const bool plateau = block == 0 ? (k % 2 == 1) : (k % 2 == 0);
                const double magnitude = k2n + (plateau ? 5.0 / 8.0 : 1.0 / 4.0);
                prefix[static_cast<std::size_t>(k - 1)] =
                    block == 0 ? magnitude : -magnitude;
            }
            const double tail = block == 0 ? k2n + 1.0 / 4.0 : -(k2n + 1.0 / 4.0);
            values.emplace_back(std::move(prefix), tail);
            inst.indices.push_back(n);
        }
    }
    inst.pm = make_seq_map(space, HolderParams{1.0, 1.0}, std::move(points),
                           std::move(values));

    // re-verify every inequality the proof relies on
    const int rows = N - n1 + 1;
    auto x_of = [&](int n) -> const Point& {
        return inst.pm.points[static_cast<std::size_t>(n - n1)];
    };
    auto y_of = [&](int n) -> const Point& {
        return inst.pm.points[static_cast<std::size_t>(rows + n - n1)];
    };
    const auto& seqs = inst.pm.seq_values().seqs;
    auto u_of = [&](int n) -> const EcSeq& {
        return seqs[static_cast<std::size_t>(n - n1)];
    };
    auto v_of = [&](int n) -> const EcSeq& {
        return seqs[static_cast<std::size_t>(rows + n - n1)];
    };

    for (int n = n1; n <= N; ++n) {
        const double k2n = pow_int(Kparam, 2 * n);
        const double tol = 1e-12 * k2n;
        if (space.norm(x_of(n)) > k2n + 0.5 + tol ||
            space.norm(y_of(n)) > k2n + 0.5 + tol)
            throw std::runtime_error("gen_counterexample: norm bound K^2n + 1/2 fails");
    }
    for (int n = n1; n <= N; ++n)
        for (int m = n1; m < n; ++m) {
            const double k2n = pow_int(Kparam, 2 * n);
            const double k2m = pow_int(Kparam, 2 * m);
            const double tol = 1e-12 * k2n;
            if (space.dist(x_of(n), x_of(m)) < k2n - k2m + 3.0 / 8.0 - tol ||
                space.dist(y_of(n), y_of(m)) < k2n - k2m + 3.0 / 8.0 - tol)
                throw std::runtime_error(
                    "gen_counterexample: same-block distance bound fails at n=" +
                    std::to_string(n) + ", m=" + std::to_string(m));
            if (sup_dist(u_of(n), u_of(m)) > k2n - k2m + 3.0 / 8.0 + tol ||
                sup_dist(v_of(n), v_of(m)) > k2n - k2m + 3.0 / 8.0 + tol)
                throw std::runtime_error(
                    "gen_counterexample: value distance bound fails");
        }

    // least index from which the cross inequality holds throughout
    inst.n0 = 0;
    for (int cand = n1; cand <= N && inst.n0 == 0; ++cand) {
        bool all_ok = true;
        for (int n = cand; n <= N; ++n)
            for (int m = cand; m <= N; ++m) {
                const double k2n = pow_int(Kparam, 2 * n);
                const double k2m = pow_int(Kparam, 2 * m);
                if (space.dist(x_of(n), y_of(m)) < k2n + k2m + 7.0 / 8.0 - 1e-12 * k2n)
                    all_ok = false;
            }
        if (all_ok) inst.n0 = cand;
    }
    if (inst.n0 != n1)
        throw std::runtime_error(
            "gen_counterexample: cross inequality does not hold from n1; "
            "least valid index is " + std::to_string(inst.n0));
    for (int n = n1; n <= N; ++n)
        for (int m = n1; m <= N; ++m) {
            const double expect =
                pow_int(Kparam, 2 * n) + pow_int(Kparam, 2 * m) + 7.0 / 8.0;
            if (std::abs(sup_dist(u_of(n), v_of(m)) - expect) > 1e-12 * expect)
                throw std::runtime_error(
                    "gen_counterexample: cross value distance identity fails");
        }

    if (holder_constant(inst.pm, 1.0) > 1.0 + 1e-9)
        throw std::runtime_error("gen_counterexample: instance is not 1-Lipschitz");
    return inst;
}

ObstructionCertificate verify_counterexample(const CounterexampleInstance& inst) {
    const Point origin(4, 0.0);
    ObstructionCertificate cert;
    cert.intervals = forced_intervals(inst.pm, origin);
    if (cert.intervals.margin < 0.0 || cert.intervals.tail_interval.empty)
        throw std::runtime_error(
            "verify_counterexample: empty forced interval; finite truncations "
            "must be extendable");

    const int N = inst.N;
    const auto& coords = cert.intervals.per_coordinate;
    if (static_cast<int>(coords.size()) < N)
        throw std::runtime_error("verify_counterexample: missing forced coordinates");

    cert.odd_lo_min = std::numeric_limits<double>::infinity();
    cert.even_hi_max = -std::numeric_limits<double>::infinity();
    for (int k = 1; k <= N; ++k) {
        if (k % 2 == 1)
            cert.odd_lo_min = std::min(cert.odd_lo_min, coords[static_cast<std::size_t>(k - 1)].lo);
        else
            cert.even_hi_max = std::max(cert.even_hi_max, coords[static_cast<std::size_t>(k - 1)].hi);
    }
    const bool odd_ok = cert.odd_lo_min >= 1.0 / 8.0 - 1e-9;
    const bool even_ok = N < 2 || cert.even_hi_max <= -1.0 / 8.0 + 1e-9;
    cert.oscillation_ok = odd_ok && even_ok;

    // smallest p such that the sequence can be constant from index p on:
    // one value inside the tail interval and every forced interval k >= p
    cert.minimal_prefix_length = N + 1;
    for (int p = 1; p <= N + 1; ++p) {
        Interval iv = cert.intervals.tail_interval;
        for (int k = p; k <= N; ++k)
            iv = iv.intersect(coords[static_cast<std::size_t>(k - 1)]);
        if (!iv.empty) {
            cert.minimal_prefix_length = p;
            break;
        }
    }
    return cert;
}

} // namespace holdex
