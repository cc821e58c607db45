#include "holdex/extend_ck.hpp"

#include <algorithm>
#include <cmath>

#include "holdex/extend_c.hpp"

namespace holdex {

double ModulusTable::xi_at(double lambda) const {
    // largest grid point <= lambda
    auto it = std::upper_bound(lambda_grid.begin(), lambda_grid.end(), lambda);
    if (it == lambda_grid.begin()) return xi.front();
    return xi[static_cast<std::size_t>(std::distance(lambda_grid.begin(), it)) - 1];
}

double ModulusTable::phi(double lambda) const {
    if (lambda <= 0.0) return phi_values.front();
    if (lambda >= phi_knots.back()) return phi_values.back();
    auto it = std::upper_bound(phi_knots.begin(), phi_knots.end(), lambda);
    const std::size_t hi = static_cast<std::size_t>(std::distance(phi_knots.begin(), it));
    const std::size_t lo = hi - 1;
    const double span = phi_knots[hi] - phi_knots[lo];
    if (span <= 0.0) return phi_values[hi];
    const double w = (lambda - phi_knots[lo]) / span;
    return phi_values[lo] + w * (phi_values[hi] - phi_values[lo]);
}

CkConditionError::CkConditionError(std::size_t y_, std::size_t z_, std::size_t t_,
                                   std::size_t s_, double excess_)
    : std::runtime_error("ck_extend: gauge condition fails for y=" + std::to_string(y_) +
                         " z=" + std::to_string(z_) + " t=" + std::to_string(t_) +
                         " s=" + std::to_string(s_) + " excess=" + std::to_string(excess_)),
      y(y_), z(z_), t(t_), s(s_), excess(excess_) {}

namespace {

struct FnContext {
    const FnValues* fv;
    std::vector<double> radii;
};

FnContext fn_context(const PartialMap& pm, const Point& x, const char* who,
                     bool forbid_x_in_M) {
    if (pm.has_seq_values())
        throw std::invalid_argument(std::string(who) + ": targets must be functions on K");
    FnContext ctx;
    ctx.fv = &pm.fn_values();
    ctx.radii.resize(pm.size());
    for (std::size_t i = 0; i < pm.size(); ++i) {
        if (forbid_x_in_M && pm.points[i] == x)
            throw std::invalid_argument(std::string(who) + ": x belongs to M");
        ctx.radii[i] = pm.radius_at(i, x);
    }
    return ctx;
}

} // namespace

std::pair<bool, double> ck_feasible(const PartialMap& pm, const Point& x, double delta) {
    if (!(delta > 0.0))
        throw std::invalid_argument("ck_feasible: delta must be positive");
    const FnContext ctx = fn_context(pm, x, "ck_feasible", true);
    const auto& metric = ctx.fv->metric;
    const auto& fns = ctx.fv->fns;
    double worst = -std::numeric_limits<double>::infinity();
    double scale = 1.0;
    for (std::size_t t = 0; t < metric.size(); ++t)
        for (std::size_t s = 0; s < metric.size(); ++s) {
            if (metric.rho(t, s) >= delta) continue;
            for (std::size_t y = 0; y < pm.size(); ++y)
                for (std::size_t z = 0; z < pm.size(); ++z) {
                    const double bound = ctx.radii[y] + ctx.radii[z];
                    worst = std::max(worst, std::abs(fns[y][t] - fns[z][s]) - bound);
                    scale = std::max(scale, bound);
                }
        }
    return {worst <= 1e-9 * scale, worst};
}

ModulusTable xi_modulus(const PartialMap& pm, const Point& x) {
    const FnContext ctx = fn_context(pm, x, "xi_modulus", true);
    const auto& metric = ctx.fv->metric;
    const auto& fns = ctx.fv->fns;
    if (metric.size() < 2)
        throw std::invalid_argument("xi_modulus: K must have at least 2 points");

    ModulusTable table;
    table.diameter = metric.diameter();

    std::vector<double> grid;
    grid.push_back(0.0);
    grid.push_back(table.diameter);
    for (std::size_t t = 0; t < metric.size(); ++t)
        for (std::size_t s = t + 1; s < metric.size(); ++s)
            grid.push_back(metric.rho(t, s));
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
    table.lambda_grid = grid;

    // excess per (rho(t,s), y, z), folded into a running max per grid point
    table.xi.assign(grid.size(), -std::numeric_limits<double>::infinity());
    for (std::size_t t = 0; t < metric.size(); ++t)
        for (std::size_t s = 0; s < metric.size(); ++s) {
            const double rho = metric.rho(t, s);
            const std::size_t g = static_cast<std::size_t>(
                std::distance(grid.begin(),
                              std::lower_bound(grid.begin(), grid.end(), rho)));
            for (std::size_t y = 0; y < pm.size(); ++y)
                for (std::size_t z = 0; z < pm.size(); ++z) {
                    const double excess = std::abs(fns[y][t] - fns[z][s]) -
                                          ctx.radii[y] - ctx.radii[z];
                    table.xi[g] = std::max(table.xi[g], excess);
                }
        }
    for (std::size_t g = 1; g < table.xi.size(); ++g)
        table.xi[g] = std::max(table.xi[g], table.xi[g - 1]);
    table.xi0 = table.xi.front();
    table.psi.resize(table.xi.size());
    for (std::size_t g = 0; g < table.xi.size(); ++g)
        table.psi[g] = table.xi[g] - table.xi0;

    // harmonic knot schedule D/(n+1) down to the smallest nonzero distance
    const double D = table.diameter;
    double dmin = D;
    for (double v : grid)
        if (v > 0.0) {
            dmin = v;
            break;
        }
    std::vector<double> knots{0.0};
    std::vector<double> values{0.0};
    int n_max = 1;
    while (D / (n_max + 1) > dmin) ++n_max;
    for (int n = n_max; n >= 1; --n) {
        knots.push_back(D / (n + 1));
        values.push_back(table.psi_at(D / n));
    }
    knots.push_back(D);
    values.push_back(table.psi_at(D)); // constant on [D/2, D]
    table.phi_knots = std::move(knots);
    table.phi_values = std::move(values);
    return table;
}

FiniteFunction ck_extend(const PartialMap& pm, const Point& x,
                         const ModulusTable& modulus) {
    const FnContext ctx = fn_context(pm, x, "ck_extend", false);
    const auto& metric = ctx.fv->metric;
    const auto& fns = ctx.fv->fns;

    // gauge condition (3)
    double scale = 1.0;
    for (std::size_t i = 0; i < pm.size(); ++i)
        scale = std::max(scale, ctx.radii[i]);
    for (std::size_t t = 0; t < metric.size(); ++t)
        for (std::size_t s = 0; s < metric.size(); ++s) {
            const double gauge = modulus.phi(metric.rho(t, s));
            for (std::size_t y = 0; y < pm.size(); ++y)
                for (std::size_t z = 0; z < pm.size(); ++z) {
                    const double excess = std::abs(fns[y][t] - fns[z][s]) -
                                          ctx.radii[y] - ctx.radii[z] - gauge;
                    if (excess > 1e-9 * scale)
                        throw CkConditionError(y, z, t, s, excess);
                }
        }

    FiniteFunction out(metric.size(), 0.0);
    for (std::size_t t = 0; t < metric.size(); ++t) {
        double best = -std::numeric_limits<double>::infinity();
        for (std::size_t s = 0; s < metric.size(); ++s) {
            const double gauge = modulus.phi(metric.rho(t, s));
            for (std::size_t z = 0; z < pm.size(); ++z)
                best = std::max(best, fns[z][s] - ctx.radii[z] - gauge);
        }
        out[t] = best;
    }
    return out;
}

FiniteFunction infconv_ck(const PartialMap& pm, const Point& x) {
    const FnContext ctx = fn_context(pm, x, "infconv_ck", false);
    const auto& fns = ctx.fv->fns;
    FiniteFunction out(ctx.fv->metric.size(), 0.0);
    for (std::size_t t = 0; t < out.size(); ++t) {
        double best = std::numeric_limits<double>::infinity();
        for (std::size_t y = 0; y < pm.size(); ++y)
            best = std::min(best, fns[y][t] + ctx.radii[y]);
        out[t] = best;
    }
    return out;
}

namespace {

PartialMap restrict_map(const PartialMap& pm, const std::vector<std::size_t>& keep) {
    std::vector<Point> points;
    points.reserve(keep.size());
    for (std::size_t i : keep) points.push_back(pm.points[i]);
    if (pm.has_seq_values()) {
        std::vector<EcSeq> seqs;
        for (std::size_t i : keep) seqs.push_back(pm.seq_values().seqs[i]);
        return make_seq_map(pm.space, pm.params, std::move(points), std::move(seqs));
    }
    std::vector<FiniteFunction> fns;
    for (std::size_t i : keep) fns.push_back(pm.fn_values().fns[i]);
    return make_fn_map(pm.space, pm.params, std::move(points), pm.fn_values().metric,
                       std::move(fns));
}

std::variant<EcSeq, FiniteFunction> mid_extension(const PartialMap& pm, const Point& x) {
    if (pm.has_seq_values()) {
        const FeasibilityCertificate cert = forced_intervals(pm, x);
        std::vector<double> prefix(cert.per_coordinate.size());
        for (std::size_t k = 0; k < prefix.size(); ++k)
            prefix[k] = cert.per_coordinate[k].mid();
        return EcSeq(std::move(prefix), cert.tail_interval.mid());
    }
    return linf_vector_extend(pm, x, Policy::Mid);
}

double extension_factor(const PartialMap& pm, const Point& x,
                        const std::variant<EcSeq, FiniteFunction>& value) {
    double factor = 1.0;
    for (std::size_t i = 0; i < pm.size(); ++i) {
        const double r = pm.radius_at(i, x);
        const double dv =
            pm.has_seq_values()
                ? sup_dist(pm.seq_values().seqs[i], std::get<EcSeq>(value))
                : sup_dist_fn(pm.fn_values().fns[i], std::get<FiniteFunction>(value));
        if (r > 0.0) factor = std::max(factor, dv / r);
    }
    return factor;
}

} // namespace

AlmostExtendResult almost_extend_net(const PartialMap& pm, const Point& x, double eps) {
    if (!(eps > 0.0))
        throw std::invalid_argument("almost_extend_net: eps must be positive");
    if (!is_holder(pm))
        throw std::invalid_argument("almost_extend_net: map is not (K,alpha)-Hölder");

    for (std::size_t i = 0; i < pm.size(); ++i) {
        if (pm.points[i] != x) continue;
        AlmostExtendResult res;
        if (pm.has_seq_values())
            res.value = pm.seq_values().seqs[i];
        else
            res.value = pm.fn_values().fns[i];
        res.net = {i};
        res.factor = extension_factor(pm, x, res.value);
        return res;
    }

    double diam = 0.0;
    double dmin = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < pm.size(); ++i)
        for (std::size_t j = i + 1; j < pm.size(); ++j) {
            const double d = pm.space.dist(pm.points[i], pm.points[j]);
            diam = std::max(diam, d);
            dmin = std::min(dmin, d);
        }

    double delta = diam;
    while (true) {
        std::vector<std::size_t> net;
        if (pm.size() == 1 || delta < dmin) {
            for (std::size_t i = 0; i < pm.size(); ++i) net.push_back(i);
        } else {
            for (std::size_t i = 0; i < pm.size(); ++i) {
                bool covered = false;
                for (std::size_t j : net)
                    if (pm.space.dist(pm.points[i], pm.points[j]) <= delta) covered = true;
                if (!covered) net.push_back(i);
            }
        }
        const PartialMap sub = restrict_map(pm, net);
        auto value = mid_extension(sub, x);
        const double factor = extension_factor(pm, x, value);
        if (factor <= (1.0 + eps) * (1.0 + 1e-12) || net.size() == pm.size())
            return AlmostExtendResult{std::move(value), std::move(net), factor};
        delta /= 2.0;
    }
}

FiniteFunction Embedding::extend(const FiniteFunction& on_subset) const {
    if (on_subset.size() != subset.size())
        throw std::invalid_argument("Embedding::extend: size mismatch with F");
    FiniteFunction out(metric.size(), 0.0);
    for (std::size_t t = 0; t < out.size(); ++t) out[t] = on_subset[nearest[t]];
    return out;
}

FiniteFunction Embedding::restrict(const FiniteFunction& on_all) const {
    if (on_all.size() != metric.size())
        throw std::invalid_argument("Embedding::restrict: size mismatch with K");
    FiniteFunction out(subset.size(), 0.0);
    for (std::size_t i = 0; i < subset.size(); ++i) out[i] = on_all[subset[i]];
    return out;
}

FiniteFunction Embedding::project(const FiniteFunction& on_all) const {
    return extend(restrict(on_all));
}

Embedding embed_c_into_ck(const FiniteMetricSpace& metric,
                          std::vector<std::size_t> subset) {
    if (subset.empty())
        throw std::invalid_argument("embed_c_into_ck: F must be nonempty");
    for (std::size_t s : subset)
        if (s >= metric.size())
            throw std::invalid_argument("embed_c_into_ck: F index out of range");

    Embedding emb{metric, std::move(subset), {}};
    emb.nearest.resize(metric.size(), 0);
    for (std::size_t t = 0; t < metric.size(); ++t) {
        std::size_t best = 0;
        double best_d = std::numeric_limits<double>::infinity();
        bool self = false;
        for (std::size_t i = 0; i < emb.subset.size() && !self; ++i) {
            if (emb.subset[i] == t) {
                best = i;
                self = true; // a point of F extends to itself
                break;
            }
            const double d = metric.rho(t, emb.subset[i]);
            if (d < best_d) {
                best_d = d;
                best = i;
            }
        }
        emb.nearest[t] = best;
    }
    return emb;
}

PartialMap reduce_ck_to_c(const PartialMap& pm,
                          const std::vector<std::pair<std::size_t, std::size_t>>& witnesses) {
    if (pm.has_seq_values())
        throw std::invalid_argument("reduce_ck_to_c: targets must be functions on K");
    if (witnesses.empty())
        throw std::invalid_argument("reduce_ck_to_c: witness list must be nonempty");
    const auto& fv = pm.fn_values();
    for (const auto& [t, s] : witnesses)
        if (t >= fv.metric.size() || s >= fv.metric.size())
            throw std::invalid_argument("reduce_ck_to_c: witness point outside K");

    std::vector<EcSeq> seqs;
    seqs.reserve(pm.size());
    for (const auto& fn : fv.fns) {
        std::vector<double> prefix;
        prefix.reserve(2 * witnesses.size());
        for (const auto& [t, s] : witnesses) {
            prefix.push_back(fn[t]);
            prefix.push_back(fn[s]);
        }
        const double tail = prefix.back();
        seqs.emplace_back(std::move(prefix), tail);
    }
    return make_seq_map(pm.space, pm.params, pm.points, std::move(seqs));
}

} // namespace holdex
