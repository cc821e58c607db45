#include "holdex/selftest.hpp"

#include <chrono>
#include <cmath>
#include <ostream>
#include <random>

#include "holdex/counterexample.hpp"
#include "holdex/extend_c.hpp"
#include "holdex/extend_ck.hpp"
#include "holdex/extend_core.hpp"

namespace holdex {

namespace {

using Rng = std::mt19937_64;

double unif(Rng& rng, double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng);
}

int unif_int(Rng& rng, int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(rng);
}

NormedSpace random_space(Rng& rng, int max_dim) {
    const double ps[] = {1.0, 1.5, 2.0, 3.0};
    switch (unif_int(rng, 0, 3)) {
        case 0:
            return NormedSpace::lp(ps[unif_int(rng, 0, 3)], unif_int(rng, 1, max_dim));
        case 1:
            return NormedSpace::linf(unif_int(rng, 1, max_dim));
        case 2: {
            const int d1 = unif_int(rng, 1, max_dim - 1);
            const int d2 = unif_int(rng, 1, max_dim - d1);
            return NormedSpace::l1_sum({NormedSpace::lp(ps[unif_int(rng, 0, 3)], d1),
                                        NormedSpace::lp(ps[unif_int(rng, 0, 3)], d2)});
        }
        default: {
            const int d = unif_int(rng, 1, std::min(3, max_dim));
            std::vector<std::vector<double>> fns;
            for (int i = 0; i < d; ++i) { // identity rows keep the norm definite
                std::vector<double> row(static_cast<std::size_t>(d), 0.0);
                row[static_cast<std::size_t>(i)] = 1.0;
                fns.push_back(std::move(row));
            }
            const int extra = unif_int(rng, 0, 2);
            for (int i = 0; i < extra; ++i) {
                std::vector<double> row(static_cast<std::size_t>(d));
                for (auto& v : row) v = unif(rng, -1.0, 1.0);
                fns.push_back(std::move(row));
            }
            return NormedSpace::polytope(std::move(fns));
        }
    }
}

std::vector<Point> random_points(Rng& rng, const NormedSpace& space, int count) {
    std::vector<Point> out;
    while (static_cast<int>(out.size()) < count) {
        Point p(static_cast<std::size_t>(space.dim()));
        for (auto& v : p) v = unif(rng, -3.0, 3.0);
        bool fresh = true;
        for (const auto& q : out)
            if (space.dist(p, q) < 1e-6) fresh = false;
        if (fresh) out.push_back(std::move(p));
    }
    return out;
}

EcSeq random_seq(Rng& rng, bool null_tail) {
    const int p = unif_int(rng, 0, 3);
    std::vector<double> prefix(static_cast<std::size_t>(p));
    for (auto& v : prefix) v = unif(rng, -2.0, 2.0);
    return EcSeq(std::move(prefix), null_tail ? 0.0 : unif(rng, -1.0, 1.0));
}

/// Random exactly-(K,alpha)-Hölder map into c: K is computed from the data.
PartialMap random_seq_map(Rng& rng, double alpha, int max_points, bool null_tail) {
    const NormedSpace space = random_space(rng, 4);
    const int m = unif_int(rng, 1, max_points);
    std::vector<Point> points = random_points(rng, space, m);
    std::vector<EcSeq> seqs;
    for (int i = 0; i < m; ++i) seqs.push_back(random_seq(rng, null_tail));
    PartialMap pm = make_seq_map(space, HolderParams{1.0, alpha}, std::move(points),
                                 std::move(seqs));
    pm.params.K = (m >= 2 ? holder_constant(pm, alpha) : 1.0) * (1.0 + 1e-12);
    return pm;
}

FiniteMetricSpace random_metric(Rng& rng, int max_size) {
    const int m = unif_int(rng, 2, max_size);
    // planar points with the Euclidean metric
    std::vector<std::array<double, 2>> pts(static_cast<std::size_t>(m));
    for (auto& p : pts) p = {unif(rng, 0.0, 2.0), unif(rng, 0.0, 2.0)};
    std::vector<std::vector<double>> rho(static_cast<std::size_t>(m),
                                         std::vector<double>(static_cast<std::size_t>(m)));
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
            rho[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
                std::hypot(pts[static_cast<std::size_t>(i)][0] - pts[static_cast<std::size_t>(j)][0],
                           pts[static_cast<std::size_t>(i)][1] - pts[static_cast<std::size_t>(j)][1]);
    return FiniteMetricSpace(std::move(rho));
}

PartialMap random_fn_map(Rng& rng, double alpha, int max_points, int max_metric) {
    const NormedSpace space = random_space(rng, 4);
    const int m = unif_int(rng, 1, max_points);
    std::vector<Point> points = random_points(rng, space, m);
    FiniteMetricSpace metric = random_metric(rng, max_metric);
    std::vector<FiniteFunction> fns(static_cast<std::size_t>(m),
                                    FiniteFunction(metric.size()));
    for (auto& fn : fns)
        for (auto& v : fn) v = unif(rng, -2.0, 2.0);
    PartialMap pm = make_fn_map(space, HolderParams{1.0, alpha}, std::move(points),
                                std::move(metric), std::move(fns));
    pm.params.K = (m >= 2 ? holder_constant(pm, alpha) : 1.0) * (1.0 + 1e-12);
    return pm;
}

Point random_off_point(Rng& rng, const PartialMap& pm) {
    while (true) {
        Point x(static_cast<std::size_t>(pm.space.dim()));
        for (auto& v : x) v = unif(rng, -3.0, 3.0);
        bool fresh = true;
        for (const auto& q : pm.points)
            if (pm.space.dist(x, q) < 1e-6) fresh = false;
        if (fresh) return x;
    }
}

struct Check {
    bool ok = true;
    std::string detail;

    void require(bool cond, const std::string& what) {
        if (!cond && ok) {
            ok = false;
            detail = what;
        }
    }
};

const double alphas[] = {0.3, 0.5, 1.0};

// Criterion 1: counterexample reproduction with K = 11, n1 = 1, N = 5.
CriterionResult criterion_counterexample() {
    CriterionResult res{"counterexample reproduction (K=11, n1=1, N=5)", false, "", 0.0};
    const auto start = std::chrono::steady_clock::now();
    Check c;

    c.require(!selection_ok(10.0) && std::abs(selection_value(10.0) - 0.3719) < 1e-3,
              "K=10 must fail the selection inequality");
    c.require(selection_ok(11.0) && std::abs(selection_value(11.0) - 0.38195) < 1e-4,
              "K=11 selection value");
    c.require(select_K(2, 100) == 11, "smallest admissible integer K must be 11");

    const CounterexampleInstance inst = gen_counterexample(11.0, 1, 5);
    c.require(holder_constant(inst.pm, 1.0) <= 1.0 + 1e-9, "map must be 1-Lipschitz");

    const auto& seqs = inst.pm.seq_values().seqs;
    for (int n = 1; n <= 5 && c.ok; ++n)
        for (int m = 1; m <= 5; ++m) {
            const double expect = std::pow(11.0, 2 * n) + std::pow(11.0, 2 * m) + 7.0 / 8.0;
            const double got = sup_dist(seqs[static_cast<std::size_t>(n - 1)],
                                        seqs[static_cast<std::size_t>(5 + m - 1)]);
            c.require(got == expect, "cross value distance must equal K^2n+K^2m+7/8 exactly");
        }

    const ObstructionCertificate cert = verify_counterexample(inst);
    c.require(cert.odd_lo_min >= 1.0 / 8.0 - 1e-9, "odd forced lows must be >= 1/8");
    c.require(cert.even_hi_max <= -1.0 / 8.0 + 1e-9, "even forced highs must be <= -1/8");
    c.require(cert.minimal_prefix_length >= 5, "minimal prefix length must reach N");

    res.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
                      .count();
    c.require(res.seconds < 1.0, "runtime must stay under 1 s");
    res.pass = c.ok;
    res.detail = c.ok ? "oscillation bounds +-1/8, prefix length " +
                            std::to_string(cert.minimal_prefix_length)
                      : c.detail;
    return res;
}

// Criterion 2: 500 random instances, every emitted extension re-verified.
CriterionResult criterion_extension_suite() {
    CriterionResult res{"extension-correctness property suite (500 instances)", false, "",
                        0.0};
    const auto start = std::chrono::steady_clock::now();
    Rng rng(20260823);
    Check c;

    for (int trial = 0; trial < 500 && c.ok; ++trial) {
        const double alpha = alphas[trial % 3];
        if (trial % 3 == 2) {
            // function-valued: vector extension and inf-convolution into C(K)
            const PartialMap pm = random_fn_map(rng, alpha, 6, 6);
            const Point x = random_off_point(rng, pm);
            const FiniteFunction mid = linf_vector_extend(pm, x, Policy::Mid);
            c.require(extension_excess(pm, x, mid) <= 1e-9,
                      "vector mid extension must stay Hölder");
            const FiniteFunction inf = infconv_ck(pm, x);
            c.require(extension_excess(pm, x, inf) <= 1e-9,
                      "C(K) inf-convolution must stay Hölder");
            continue;
        }
        const bool null_tail = trial % 2 == 0;
        const PartialMap pm = random_seq_map(rng, alpha, 8, null_tail);
        const Point x = random_off_point(rng, pm);

        // scalar route on the tails
        std::vector<double> tails;
        for (const auto& s : pm.seq_values().seqs) tails.push_back(s.tail());
        const Interval iv =
            feasibility_interval(pm.space, pm.params, pm.points, tails, x);
        c.require(!iv.empty, "feasibility interval must be nonempty");
        const double inf_v = infconv_extend(pm.space, pm.params, pm.points, tails, x);
        const double sup_v = sup_extend(pm.space, pm.params, pm.points, tails, x);
        c.require(sup_v <= inf_v + 1e-12, "sup extension must not exceed inf-convolution");
        for (std::size_t i = 0; i < pm.size() && c.ok; ++i) {
            const double r = pm.radius_at(i, x);
            c.require(std::abs(inf_v - tails[i]) <= r + 1e-9 * std::max(1.0, r),
                      "scalar inf-convolution must stay Hölder");
        }

        c.require(c_feasible(pm, x).feasible, "c_feasible must hold for finite M");
        const auto [gc, ctrace] = c_extend(pm, x, Policy::Mid);
        c.require(extension_excess(pm, x, gc) <= 1e-9, "c extension must stay Hölder");

        if (null_tail) {
            const auto [g0, trace0] = c0_extend(pm, x);
            c.require(g0.tail() == 0.0, "c0 extension must have tail 0");
            c.require(extension_excess(pm, x, g0) <= 1e-9,
                      "c0 extension must stay Hölder");
        }
    }
    res.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
                      .count();
    c.require(res.seconds < 10.0, "runtime must stay under 10 s");
    res.pass = c.ok;
    res.detail = c.detail;
    return res;
}

// Criterion 3: interval endpoints against a grid brute-force oracle.
CriterionResult criterion_grid_oracle() {
    CriterionResult res{"oracle equivalence (50 scalar instances, grid step 1e-3)", false,
                        "", 0.0};
    const auto start = std::chrono::steady_clock::now();
    Rng rng(7041776);
    Check c;
    const double step = 1e-3;

    for (int trial = 0; trial < 50 && c.ok; ++trial) {
        const PartialMap pm = random_seq_map(rng, alphas[trial % 3], 6, false);
        const Point x = random_off_point(rng, pm);
        std::vector<double> values;
        std::vector<double> radii;
        for (std::size_t i = 0; i < pm.size(); ++i) {
            values.push_back(pm.seq_values().seqs[i].tail());
            radii.push_back(pm.radius_at(i, x));
        }
        const Interval iv =
            feasibility_interval(pm.space, pm.params, pm.points, values, x);

        double span_lo = values[0], span_hi = values[0];
        for (std::size_t i = 0; i < values.size(); ++i) {
            span_lo = std::min(span_lo, values[i] - radii[i]);
            span_hi = std::max(span_hi, values[i] + radii[i]);
        }
        double grid_lo = std::numeric_limits<double>::infinity();
        double grid_hi = -std::numeric_limits<double>::infinity();
        for (double v = span_lo - step; v <= span_hi + step; v += step) {
            bool feasible = true;
            for (std::size_t i = 0; i < values.size(); ++i)
                if (std::abs(v - values[i]) > radii[i] + 1e-12) feasible = false;
            if (feasible) {
                grid_lo = std::min(grid_lo, v);
                grid_hi = std::max(grid_hi, v);
            }
        }
        c.require(std::isfinite(grid_lo), "grid oracle must find a feasible value");
        c.require(std::abs(grid_lo - iv.lo) <= 2e-3 && std::abs(grid_hi - iv.hi) <= 2e-3,
                  "interval endpoints must match the grid oracle within 2e-3");
    }
    res.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
                      .count();
    res.pass = c.ok;
    res.detail = c.detail;
    return res;
}

// Criterion 4: the c0 algorithm on 100 random instances.
CriterionResult criterion_c0() {
    CriterionResult res{"c0 one-point extension (100 instances)", false, "", 0.0};
    const auto start = std::chrono::steady_clock::now();
    Rng rng(1644);
    Check c;
    for (int trial = 0; trial < 100 && c.ok; ++trial) {
        const PartialMap pm = random_seq_map(rng, alphas[trial % 3], 6, true);
        const Point x0 = random_off_point(rng, pm);
        const auto [u, trace] = c0_extend(pm, x0);
        c.require(u.tail() == 0.0, "tail must be exactly 0");
        std::size_t span = u.prefix_size() + 1;
        for (const auto& s : pm.seq_values().seqs)
            span = std::max(span, s.prefix_size() + 1);
        for (std::size_t i = 0; i < pm.size() && c.ok; ++i) {
            const double bound = pm.radius_at(i, x0);
            for (std::size_t n = 1; n <= span; ++n)
                c.require(std::abs(pm.seq_values().seqs[i].at(n) - u.at(n)) <=
                              bound + 1e-9 * std::max(1.0, bound),
                          "coordinatewise bound |f(x)(n)-u(n)| <= K||x||^a");
        }
    }
    res.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
                      .count();
    res.pass = c.ok;
    res.detail = c.detail;
    return res;
}

// Criterion 5: covering lemma postconditions, verified exhaustively.
CriterionResult criterion_partition() {
    CriterionResult res{"linf covering lemma (random M, eps=0.1)", false, "", 0.0};
    const auto start = std::chrono::steady_clock::now();
    Rng rng(90125);
    Check c;
    const double eps = 0.1;
    for (int trial = 0; trial < 30 && c.ok; ++trial) {
        const int n = unif_int(rng, 1, 3);
        const int m = unif_int(rng, 1, 30);
        std::vector<Point> M;
        while (static_cast<int>(M.size()) < m) {
            Point p(static_cast<std::size_t>(n));
            double norm = 0.0;
            for (auto& v : p) {
                v = unif(rng, -2.0, 2.0);
                norm = std::max(norm, std::abs(v));
            }
            if (norm > 0.0) M.push_back(std::move(p));
        }
        const PartitionTrace trace = linf_partition(M, eps);
        const NormedSpace linf = NormedSpace::linf(n);
        std::vector<bool> covered(M.size(), false);
        for (const auto& cell : trace.cells) {
            const Point& rep = M[cell.representative];
            bool rep_is_member = false;
            for (std::size_t idx : cell.members) {
                covered[idx] = true;
                if (idx == cell.representative) rep_is_member = true;
                const Point& p = M[idx];
                c.require(linf.norm(p) >= linf.norm(rep) - eps - 1e-9,
                          "cell norms must satisfy ||x|| >= ||x^i|| - eps");
                c.require(linf.dist(p, rep) <=
                              linf.norm(p) - linf.norm(rep) + eps + 1e-9,
                          "cells must satisfy ||x - x^i|| <= ||x|| - ||x^i|| + eps");
            }
            c.require(rep_is_member, "representative must belong to its cell");
        }
        for (bool b : covered) c.require(b, "every point of M must be covered");
    }
    res.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
                      .count();
    res.pass = c.ok;
    res.detail = c.detail;
    return res;
}

// Criterion 6: the xi/psi/phi gauge machinery and the sup-formula extension.
CriterionResult criterion_modulus() {
    CriterionResult res{"C(K) gauge machinery (100 instances)", false, "", 0.0};
    const auto start = std::chrono::steady_clock::now();
    Rng rng(46912);
    Check c;
    for (int trial = 0; trial < 100 && c.ok; ++trial) {
        const PartialMap pm = random_fn_map(rng, alphas[trial % 3], 6, 20);
        const Point x = random_off_point(rng, pm);
        const ModulusTable table = xi_modulus(pm, x);
        for (std::size_t g = 1; g < table.xi.size(); ++g)
            c.require(table.xi[g] >= table.xi[g - 1], "xi must be nondecreasing");
        c.require(table.psi.front() == 0.0, "psi(0) must be 0");
        for (double v : table.psi) c.require(v >= 0.0, "psi must be nonnegative");
        c.require(table.phi_values.front() == 0.0, "phi(0) must be 0");
        for (std::size_t k = 1; k < table.phi_values.size(); ++k)
            c.require(table.phi_values[k] >= table.phi_values[k - 1] - 1e-12,
                      "phi must be nondecreasing");
        for (std::size_t g = 0; g < table.lambda_grid.size(); ++g)
            c.require(table.phi(table.lambda_grid[g]) >= table.psi[g] - 1e-12,
                      "phi must dominate psi on the grid");

        const FiniteFunction g = ck_extend(pm, x, table);
        c.require(extension_excess(pm, x, g) <= 1e-9,
                  "sup-formula extension must stay Hölder");
    }
    res.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
                      .count();
    res.pass = c.ok;
    res.detail = c.detail;
    return res;
}

// Criterion 7: the c <-> C(K) bridges.
CriterionResult criterion_bridges() {
    CriterionResult res{"c/C(K) bridges (100 instances)", false, "", 0.0};
    const auto start = std::chrono::steady_clock::now();
    Rng rng(31415);
    Check c;
    for (int trial = 0; trial < 100 && c.ok; ++trial) {
        const FiniteMetricSpace metric = random_metric(rng, 10);
        std::vector<std::size_t> subset;
        for (std::size_t i = 0; i < metric.size(); ++i)
            if (unif(rng, 0.0, 1.0) < 0.5) subset.push_back(i);
        if (subset.empty()) subset.push_back(0);
        const Embedding emb = embed_c_into_ck(metric, subset);

        FiniteFunction on_subset(subset.size());
        for (auto& v : on_subset) v = unif(rng, -2.0, 2.0);
        const FiniteFunction lifted = emb.extend(on_subset);
        c.require(emb.restrict(lifted) == on_subset, "R(T f) must equal f exactly");
        double norm_f = 0.0, norm_tf = 0.0;
        for (double v : on_subset) norm_f = std::max(norm_f, std::abs(v));
        for (double v : lifted) norm_tf = std::max(norm_tf, std::abs(v));
        c.require(norm_f == norm_tf, "||Tf|| must equal ||f|| exactly");

        FiniteFunction on_all(metric.size());
        for (auto& v : on_all) v = unif(rng, -2.0, 2.0);
        const FiniteFunction once = emb.project(on_all);
        c.require(emb.project(once) == once, "P must be idempotent");

        const PartialMap pm = random_fn_map(rng, alphas[trial % 3], 5, 6);
        if (pm.size() >= 2) {
            std::vector<std::pair<std::size_t, std::size_t>> witnesses;
            const int w = unif_int(rng, 1, 3);
            for (int i = 0; i < w; ++i)
                witnesses.emplace_back(
                    static_cast<std::size_t>(
                        unif_int(rng, 0, static_cast<int>(pm.fn_values().metric.size()) - 1)),
                    static_cast<std::size_t>(
                        unif_int(rng, 0, static_cast<int>(pm.fn_values().metric.size()) - 1)));
            const PartialMap reduced = reduce_ck_to_c(pm, witnesses);
            c.require(holder_constant(reduced, pm.params.alpha) <=
                          holder_constant(pm, pm.params.alpha) * (1.0 + 1e-12),
                      "reduction must not increase the Hölder constant");
        }
    }
    res.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
                      .count();
    res.pass = c.ok;
    res.detail = c.detail;
    return res;
}

// Criterion 8: monotonicity of forced intervals and of the obstruction.
CriterionResult criterion_monotonicity() {
    CriterionResult res{"certificate monotonicity", false, "", 0.0};
    const auto start = std::chrono::steady_clock::now();
    Rng rng(2718281);
    Check c;
    for (int trial = 0; trial < 100 && c.ok; ++trial) {
        PartialMap big = random_seq_map(rng, alphas[trial % 3], 8, false);
        if (big.size() < 2) continue;
        PartialMap small = big;
        small.points.pop_back();
        std::get<SeqValues>(small.values).seqs.pop_back();
        const Point x = random_off_point(rng, big);

        const FeasibilityCertificate cs = forced_intervals(small, x);
        const FeasibilityCertificate cb = forced_intervals(big, x);
        c.require(cs.tail_interval.covers(cb.tail_interval, 1e-12),
                  "tail interval must shrink when points are added");
        for (std::size_t k = 0; k < cs.per_coordinate.size(); ++k)
            c.require(cs.per_coordinate[k].covers(cb.per_coordinate[k], 1e-12),
                      "forced intervals must shrink when points are added");
    }
    int prev = 0;
    for (int N = 1; N <= 5 && c.ok; ++N) {
        const ObstructionCertificate cert =
            verify_counterexample(gen_counterexample(11.0, 1, N));
        c.require(cert.minimal_prefix_length >= prev,
                  "minimal prefix length must be nondecreasing in N");
        c.require(cert.minimal_prefix_length >= N,
                  "minimal prefix length must reach N");
        prev = cert.minimal_prefix_length;
    }
    res.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
                      .count();
    res.pass = c.ok;
    res.detail = c.detail;
    return res;
}

} // namespace

std::vector<CriterionResult> run_selftest() {
    return {criterion_counterexample(), criterion_extension_suite(),
            criterion_grid_oracle(),    criterion_c0(),
            criterion_partition(),      criterion_modulus(),
            criterion_bridges(),        criterion_monotonicity()};
}

bool run_selftest(std::ostream& out) {
    bool all = true;
    int index = 1;
    for (const auto& r : run_selftest()) {
        out << (r.pass ? "[PASS] " : "[FAIL] ") << index++ << ". " << r.name;
        if (!r.detail.empty()) out << ": " << r.detail;
        out << " (" << r.seconds << " s)\n";
        all = all && r.pass;
    }
    return all;
}

} // namespace holdex
