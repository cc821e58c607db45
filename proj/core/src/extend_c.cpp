#include "holdex/extend_c.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <mutex>
#include <set>
#include <tuple>

namespace holdex {

namespace {

Point normalize(const NormedSpace& space, const Point& x) {
    const double n = space.norm(x);
    Point u(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) u[i] = x[i] / n;
    return u;
}

/// Visits every grid point on the boundary of the cube [-1,1]^d:
/// fn(face, sign, idx, x) with idx the grid multi-index of the d-1 free
/// coordinates and x the cube-surface point.
template <typename Fn>
void for_each_cube_point(int d, int resolution, Fn&& fn) {
    for (int face = 0; face < d; ++face) {
        for (int sign = -1; sign <= 1; sign += 2) {
            std::vector<int> idx(static_cast<std::size_t>(d - 1), 0);
            while (true) {
                Point x(static_cast<std::size_t>(d), 0.0);
                x[static_cast<std::size_t>(face)] = static_cast<double>(sign);
                int pos = 0;
                for (int c = 0; c < d; ++c) {
                    if (c == face) continue;
                    x[static_cast<std::size_t>(c)] =
                        -1.0 + 2.0 * idx[static_cast<std::size_t>(pos)] / resolution;
                    ++pos;
                }
                fn(face, sign, idx, x);
                int c = 0;
                for (; c < d - 1; ++c) {
                    if (++idx[static_cast<std::size_t>(c)] <= resolution) break;
                    idx[static_cast<std::size_t>(c)] = 0;
                }
                if (c == d - 1) break;
            }
        }
    }
}

/// Direction indices whose generating grid position surrounds the cube
/// point (face, sign, free coordinates in [-1,1]^{d-1}).
void grid_candidates(const std::map<ConeCover::GridKey, std::size_t>& index,
                     int resolution, int face, int sign,
                     const std::vector<double>& free_coords,
                     std::vector<std::size_t>& out) {
    const std::size_t m = free_coords.size();
    std::vector<std::array<int, 2>> bounds(m);
    for (std::size_t c = 0; c < m; ++c) {
        const double t = (free_coords[c] + 1.0) * resolution / 2.0;
        int lo = static_cast<int>(std::floor(t));
        lo = std::max(0, std::min(lo, resolution));
        int hi = std::min(lo + 1, resolution);
        bounds[c] = {lo, hi};
    }
    std::vector<int> idx(m);
    const std::size_t combos = std::size_t{1} << m;
    for (std::size_t mask = 0; mask < combos; ++mask) {
        for (std::size_t c = 0; c < m; ++c)
            idx[c] = bounds[c][(mask >> c) & 1u];
        const auto it = index.find(ConeCover::GridKey{face, sign, idx});
        if (it != index.end()) out.push_back(it->second);
    }
}

struct DirectionGrid {
    std::vector<Point> directions;
    std::map<ConeCover::GridKey, std::size_t> index;
};

DirectionGrid build_direction_grid(const NormedSpace& space, int resolution) {
    DirectionGrid grid;
    std::map<Point, std::size_t> seen; // corner points repeat across faces
    for_each_cube_point(space.dim(), resolution,
                        [&](int face, int sign, const std::vector<int>& idx,
                            const Point& x) {
                            Point u = normalize(space, x);
                            auto [it, fresh] =
                                seen.emplace(u, grid.directions.size());
                            if (fresh) grid.directions.push_back(std::move(u));
                            grid.index.emplace(
                                ConeCover::GridKey{face, sign, idx}, it->second);
                        });
    return grid;
}

/// Upper bound on the worst probe distance to the net, via the grid
/// neighbors surrounding each probe. An overestimate only forces one more
/// refinement round, never a bad net.
double covering_gap(const NormedSpace& space, const DirectionGrid& grid,
                    int resolution, int probe_resolution) {
    const int d = space.dim();
    double worst = 0.0;
    std::vector<std::size_t> candidates;
    std::vector<double> free_coords;
    for_each_cube_point(d, probe_resolution,
                        [&](int face, int sign, const std::vector<int>&,
                            const Point& x) {
                            const Point u = normalize(space, x);
                            free_coords.clear();
                            for (int c = 0; c < d; ++c)
                                if (c != face)
                                    free_coords.push_back(
                                        x[static_cast<std::size_t>(c)]);
                            candidates.clear();
                            grid_candidates(grid.index, resolution, face, sign,
                                            free_coords, candidates);
                            double best =
                                std::numeric_limits<double>::infinity();
                            for (std::size_t ci : candidates)
                                best = std::min(
                                    best, space.dist(u, grid.directions[ci]));
                            worst = std::max(worst, best);
                        });
    return worst;
}

} // namespace

std::optional<std::size_t> ConeCover::assign(const Point& x) const {
    if (space.norm(x) == 0.0) return std::nullopt;
    const Point u = normalize(space, x);
    const double radius = delta / 2.0 + 1e-12;

    if (grid_resolution > 0) {
        // candidate directions from the generating grid around u
        double sup = 0.0;
        std::size_t face = 0;
        for (std::size_t c = 0; c < u.size(); ++c)
            if (std::abs(u[c]) > sup) {
                sup = std::abs(u[c]);
                face = c;
            }
        const int sign = u[face] >= 0.0 ? 1 : -1;
        std::vector<double> free_coords;
        for (std::size_t c = 0; c < u.size(); ++c)
            if (c != face) free_coords.push_back(u[c] / sup);
        std::vector<std::size_t> candidates;
        grid_candidates(grid_index, grid_resolution, static_cast<int>(face), sign,
                        free_coords, candidates);
        std::size_t best = 0;
        double best_d = std::numeric_limits<double>::infinity();
        for (std::size_t ci : candidates) {
            const double dd = space.dist(u, directions[ci]);
            if (dd < best_d || (dd == best_d && ci < best)) {
                best_d = dd;
                best = ci;
            }
        }
        if (best_d <= radius) return best;
    }

    std::size_t nearest = 0;
    double nearest_d = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < directions.size(); ++i) {
        const double d = space.dist(u, directions[i]);
        if (d <= radius) return i;
        if (d < nearest_d) {
            nearest_d = d;
            nearest = i;
        }
    }
    return nearest;
}

ConeCover cone_cover(const NormedSpace& space, double delta, int resolution) {
    if (!(delta > 0.0 && delta < 1.0))
        throw std::invalid_argument("cone_cover: delta must be in (0,1)");
    if (resolution < 1)
        throw std::invalid_argument("cone_cover: resolution must be >= 1");

    if (space.dim() == 1) {
        const Point plus = normalize(space, {1.0});
        const Point minus = normalize(space, {-1.0});
        return ConeCover{space, delta, {plus, minus}};
    }

    int r = std::max(2, resolution);
    double gap = std::numeric_limits<double>::infinity();
    for (int attempt = 0; attempt < 6; ++attempt) {
        DirectionGrid grid = build_direction_grid(space, r);
        // probe at an offset resolution so probes fall between grid points
        gap = covering_gap(space, grid, r, r + 5);
        if (gap <= delta / 2.0) {
            ConeCover cover{space, delta, std::move(grid.directions)};
            cover.grid_resolution = r;
            cover.grid_index = std::move(grid.index);
            return cover;
        }
        r *= 2;
    }
    throw NetConstructionError("cone_cover: could not reach net density delta/2 = " +
                               std::to_string(delta / 2.0) + ", worst probe gap " +
                               std::to_string(gap) + " at grid resolution " +
                               std::to_string(r));
}

std::pair<EcSeq, C0Trace> c0_extend(const PartialMap& pm, const Point& x0) {
    if (!pm.has_seq_values())
        throw std::invalid_argument("c0_extend: targets must be sequences");
    const auto& seqs = pm.seq_values().seqs;
    for (const auto& s : seqs)
        if (!s.in_c0())
            throw std::invalid_argument("c0_extend: targets must lie in c0 (tail 0)");
    if (!is_holder(pm))
        throw std::invalid_argument("c0_extend: map is not (K,alpha)-Hölder");

    const std::size_t m = pm.size();
    // translate x0 to the origin
    std::vector<Point> shifted(m);
    std::vector<double> radii(m); // K ||x||^alpha after translation
    double dist0 = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < m; ++i) {
        shifted[i] = sub(pm.points[i], x0);
        dist0 = std::min(dist0, pm.space.norm(shifted[i]));
        radii[i] = pm.radius_at(i, x0);
    }
    if (dist0 == 0.0)
        throw std::invalid_argument("c0_extend: x0 belongs to M");

    // covers depend only on the space; cache them across calls
    static std::mutex cache_mutex;
    static std::vector<std::shared_ptr<const ConeCover>> cache;
    std::shared_ptr<const ConeCover> cached;
    {
        std::lock_guard<std::mutex> lock(cache_mutex);
        for (const auto& entry : cache)
            if (entry->space == pm.space && entry->delta == 0.5) cached = entry;
    }
    if (!cached) {
        cached = std::make_shared<const ConeCover>(cone_cover(pm.space, 0.5));
        std::lock_guard<std::mutex> lock(cache_mutex);
        cache.push_back(cached);
    }
    const ConeCover& cover = *cached;
    std::map<std::size_t, std::size_t> cone_rep; // cone index -> member index
    for (std::size_t i = 0; i < m; ++i) {
        const auto cone = cover.assign(shifted[i]);
        auto it = cone_rep.find(*cone);
        if (it == cone_rep.end()) {
            cone_rep.emplace(*cone, i);
        } else if (pm.space.norm(shifted[i]) < pm.space.norm(shifted[it->second])) {
            it->second = i;
        }
    }
    std::vector<std::size_t> reps;
    reps.reserve(cone_rep.size());
    for (const auto& [cone, idx] : cone_rep) reps.push_back(idx);

    const double eps =
        0.49 * pm.params.K * std::pow(dist0, pm.params.alpha);

    std::size_t prefix_len = 0;
    for (const auto& s : seqs) prefix_len = std::max(prefix_len, s.prefix_size());

    C0Trace trace;
    trace.epsilon = eps;
    trace.representatives = reps;

    std::vector<double> u(prefix_len, 0.0);
    trace.eta.resize(prefix_len);
    trace.signs.resize(prefix_len);

    // cutoff N: last coordinate where some representative value is still >= eps
    std::size_t cutoff = 0;
    for (std::size_t n = prefix_len; n >= 1; --n) {
        bool big = false;
        for (std::size_t ri : reps)
            if (std::abs(seqs[ri].at(n)) >= eps) big = true;
        if (big) {
            cutoff = n;
            break;
        }
    }
    trace.cutoff = cutoff;

    for (std::size_t n = 1; n <= prefix_len; ++n) {
        double lo = -std::numeric_limits<double>::infinity();
        double hi = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < m; ++i) {
            lo = std::max(lo, seqs[i].at(n) - radii[i]);
            hi = std::min(hi, seqs[i].at(n) + radii[i]);
        }
        const double eta = 0.5 * (lo + hi);
        const int sign = eta >= 0.0 ? 1 : -1;
        trace.eta[n - 1] = eta;
        trace.signs[n - 1] = sign;
        if (n <= cutoff) {
            u[n - 1] = eta;
        } else {
            double rep_max = 0.0;
            for (std::size_t ri : reps) rep_max = std::max(rep_max, std::abs(seqs[ri].at(n)));
            u[n - 1] = sign * std::min(std::abs(eta), rep_max);
        }
    }
    return {EcSeq(std::move(u), 0.0), std::move(trace)};
}

CFeasibility c_feasible(const PartialMap& pm, const Point& x) {
    if (!pm.has_seq_values())
        throw std::invalid_argument("c_feasible: targets must be sequences");
    const auto& seqs = pm.seq_values().seqs;
    const std::size_t m = pm.size();
    std::vector<double> radii(m);
    for (std::size_t i = 0; i < m; ++i) {
        if (pm.points[i] == x)
            throw std::invalid_argument("c_feasible: x belongs to M");
        radii[i] = pm.radius_at(i, x);
    }
    CFeasibility res;
    res.margin = std::numeric_limits<double>::infinity();
    double scale = 1.0;
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = i; j < m; ++j) {
            const double slack =
                radii[i] + radii[j] - std::abs(seqs[i].tail() - seqs[j].tail());
            scale = std::max(scale, radii[i] + radii[j]);
            if (slack < res.margin) {
                res.margin = slack;
                res.witness_y = i;
                res.witness_z = j;
            }
        }
    }
    res.feasible = res.margin >= -1e-9 * scale;
    return res;
}

FeasibilityCertificate forced_intervals(const PartialMap& pm, const Point& x) {
    if (!pm.has_seq_values())
        throw std::invalid_argument("forced_intervals: targets must be sequences");
    const auto& seqs = pm.seq_values().seqs;
    const std::size_t m = pm.size();
    std::vector<double> radii(m);
    for (std::size_t i = 0; i < m; ++i) {
        if (pm.points[i] == x)
            throw std::invalid_argument("forced_intervals: x belongs to M");
        radii[i] = pm.radius_at(i, x);
    }
    std::size_t prefix_len = 0;
    for (const auto& s : seqs) prefix_len = std::max(prefix_len, s.prefix_size());

    FeasibilityCertificate cert;
    cert.margin = std::numeric_limits<double>::infinity();

    // coordinate 0 stands for the tail
    for (std::size_t k = 0; k <= prefix_len; ++k) {
        double lo = -std::numeric_limits<double>::infinity();
        double hi = std::numeric_limits<double>::infinity();
        std::size_t arg_lo = 0, arg_hi = 0;
        for (std::size_t i = 0; i < m; ++i) {
            const double v = k == 0 ? seqs[i].tail() : seqs[i].at(k);
            if (v - radii[i] > lo) {
                lo = v - radii[i];
                arg_lo = i;
            }
            if (v + radii[i] < hi) {
                hi = v + radii[i];
                arg_hi = i;
            }
        }
        const Interval iv = Interval::of(lo, hi);
        if (hi - lo < cert.margin) {
            cert.margin = hi - lo;
            cert.witness_y = arg_hi;
            cert.witness_z = arg_lo;
            cert.witness_coordinate = k;
        }
        if (k == 0)
            cert.tail_interval = iv;
        else
            cert.per_coordinate.push_back(iv);
    }
    return cert;
}

std::pair<EcSeq, CTrace> c_extend(const PartialMap& pm, const Point& x, Policy policy) {
    const FeasibilityCertificate cert = forced_intervals(pm, x);
    if (cert.margin < 0.0)
        throw std::runtime_error(
            "c_extend: empty forced interval at coordinate " +
            std::to_string(cert.witness_coordinate) + " (witness pair " +
            std::to_string(cert.witness_y) + "," + std::to_string(cert.witness_z) + ")");

    const auto& seqs = pm.seq_values().seqs;
    const std::size_t m = pm.size();
    const std::size_t prefix_len = cert.per_coordinate.size();
    std::vector<double> radii(m);
    for (std::size_t i = 0; i < m; ++i) radii[i] = pm.radius_at(i, x);

    CTrace trace;
    trace.prefix_cutoff = prefix_len;
    trace.s_values.assign(prefix_len + 1, 0.0);

    double s_inf = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < m; ++i)
        s_inf = std::max(s_inf, seqs[i].tail() - radii[i]);
    trace.s_inf = s_inf;
    trace.s_values[prefix_len] = s_inf;
    for (std::size_t j = prefix_len; j >= 1; --j) {
        double level = trace.s_values[j]; // s(j+1)
        for (std::size_t i = 0; i < m; ++i)
            level = std::max(level, seqs[i].at(j) - radii[i]);
        trace.s_values[j - 1] = level;
    }

    std::vector<double> g(prefix_len);
    for (std::size_t k = 1; k <= prefix_len; ++k)
        g[k - 1] = pick(cert.per_coordinate[k - 1], policy);
    const double tail = cert.tail_interval.clamp(s_inf);
    return {EcSeq(std::move(g), tail), std::move(trace)};
}

// --- covering of linf(n) ---------------------------------------------------

namespace {

struct LocalPt {
    std::vector<double> v;
    std::size_t orig;
};

double linf_norm(const std::vector<double>& x) {
    double m = 0.0;
    for (double c : x) m = std::max(m, std::abs(c));
    return m;
}

/// Representative choice: minimal sup-norm, ties broken lexicographically
/// by coordinates, then by original index.
std::size_t pick_representative(const std::vector<LocalPt>& pts) {
    std::size_t best = 0;
    double best_norm = linf_norm(pts[0].v);
    for (std::size_t i = 1; i < pts.size(); ++i) {
        const double n = linf_norm(pts[i].v);
        if (n < best_norm ||
            (n == best_norm && std::tie(pts[i].v, pts[i].orig) <
                                   std::tie(pts[best].v, pts[best].orig))) {
            best = i;
            best_norm = n;
        }
    }
    return best;
}

/// Covers pts (all inside the cone {delta * x_j = ||x||} of dimension n)
/// by cells satisfying the lemma's postconditions with slack eps.
void cover_cone(const std::vector<LocalPt>& pts, int j, int delta, double eps,
                const std::vector<PartitionStep>& path,
                std::vector<PartitionCell>& cells) {
    const int n = static_cast<int>(pts.front().v.size());
    const std::size_t rep_pos = pick_representative(pts);
    const std::vector<double>& rep = pts[rep_pos].v;

    PartitionCell base;
    base.representative = pts[rep_pos].orig;
    base.path = path;
    base.path.push_back(PartitionStep{j, delta, -1, 0, 0, 0.0, 0});

    // band widths d_{j,delta,k,eta}
    std::vector<LocalPt> leftovers;
    for (const auto& p : pts) {
        const double lead = delta * (p.v[static_cast<std::size_t>(j)] -
                                     rep[static_cast<std::size_t>(j)]);
        bool in_translated_cone = lead >= 0.0;
        for (int k = 0; k < n && in_translated_cone; ++k) {
            if (k == j) continue;
            if (lead < std::abs(p.v[static_cast<std::size_t>(k)] -
                                rep[static_cast<std::size_t>(k)]))
                in_translated_cone = false;
        }
        if (in_translated_cone)
            base.members.push_back(p.orig);
        else
            leftovers.push_back(p);
    }
    cells.push_back(std::move(base));
    if (leftovers.empty()) return;

    // group the leftovers into bands; each point goes to the first
    // (k, eta) pair whose band gap it falls into
    std::map<std::tuple<int, int, int>, std::vector<LocalPt>> groups;
    for (auto& p : leftovers) {
        bool placed = false;
        for (int k = 0; k < n && !placed; ++k) {
            if (k == j) continue;
            for (int eta = -1; eta <= 1 && !placed; eta += 2) {
                const double d = std::abs(rep[static_cast<std::size_t>(j)]) -
                                 eta * rep[static_cast<std::size_t>(k)];
                const double value = std::abs(p.v[static_cast<std::size_t>(j)]) -
                                     eta * p.v[static_cast<std::size_t>(k)];
                if (value < d) {
                    const int count = static_cast<int>(std::floor(3.0 * d / eps)) + 1;
                    int band = static_cast<int>(std::floor(value * count / d)) + 1;
                    band = std::min(band, count);
                    groups[{k, eta, band}].push_back(std::move(p));
                    placed = true;
                }
            }
        }
        if (!placed) {
            // rounding corner case: the exact claim puts p in the
            // translated cone, so attach it to the base cell
            cells.back().members.push_back(p.orig);
        }
    }

    for (auto& [key, group] : groups) {
        const auto [k, eta, band] = key;
        const double d = std::abs(rep[static_cast<std::size_t>(j)]) -
                         eta * rep[static_cast<std::size_t>(k)];
        const int count = static_cast<int>(std::floor(3.0 * d / eps)) + 1;

        std::vector<LocalPt> projected;
        projected.reserve(group.size());
        for (const auto& p : group) {
            std::vector<double> w = p.v;
            w[static_cast<std::size_t>(k)] =
                eta * std::abs(p.v[static_cast<std::size_t>(j)]);
            w.erase(w.begin() + k);
            projected.push_back(LocalPt{std::move(w), p.orig});
        }
        std::vector<PartitionStep> child_path = path;
        child_path.push_back(PartitionStep{j, delta, k, eta, band, d / count, count});
        const int child_j = k < j ? j - 1 : j;
        cover_cone(projected, child_j, delta, eps / 3.0, child_path, cells);
    }
}

} // namespace

PartitionTrace linf_partition(const std::vector<Point>& M, double epsilon) {
    if (M.empty())
        throw std::invalid_argument("linf_partition: M must be nonempty");
    if (!(epsilon > 0.0))
        throw std::invalid_argument("linf_partition: epsilon must be positive");
    const std::size_t n = M.front().size();
    for (const auto& x : M) {
        if (x.size() != n)
            throw std::invalid_argument("linf_partition: inconsistent dimensions");
        if (linf_norm(x) == 0.0)
            throw std::invalid_argument("linf_partition: 0 must not belong to M");
    }

    PartitionTrace trace;
    trace.epsilon = epsilon;
    for (int j = 0; j < static_cast<int>(n); ++j) {
        for (int delta = -1; delta <= 1; delta += 2) {
            std::vector<LocalPt> pts;
            for (std::size_t i = 0; i < M.size(); ++i)
                if (delta * M[i][static_cast<std::size_t>(j)] == linf_norm(M[i]))
                    pts.push_back(LocalPt{M[i], i});
            if (!pts.empty())
                cover_cone(pts, j, delta, epsilon, {}, trace.cells);
        }
    }
    return trace;
}

} // namespace holdex
