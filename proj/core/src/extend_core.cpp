#include "holdex/extend_core.hpp"

#include <algorithm>
#include <cmath>

namespace holdex {

Interval Interval::intersect(const Interval& other) const {
    if (empty || other.empty) return Interval{0.0, 0.0, true};
    return Interval::of(std::max(lo, other.lo), std::min(hi, other.hi));
}

bool Interval::covers(const Interval& other, double tol) const {
    if (other.empty) return true;
    if (empty) return false;
    return lo <= other.lo + tol && hi >= other.hi - tol;
}

double pick(const Interval& iv, Policy policy) {
    if (iv.empty)
        throw std::invalid_argument("pick: empty interval");
    switch (policy) {
        case Policy::Lo: return iv.lo;
        case Policy::Hi: return iv.hi;
        case Policy::Mid: return iv.mid();
    }
    throw std::logic_error("unreachable");
}

double PartialMap::value_dist(std::size_t i, std::size_t j) const {
    if (has_seq_values()) {
        const auto& s = seq_values().seqs;
        return sup_dist(s[i], s[j]);
    }
    const auto& f = fn_values().fns;
    return sup_dist_fn(f[i], f[j]);
}

double PartialMap::radius_at(std::size_t i, const Point& x) const {
    return dist_alpha(space, points[i], x, params);
}

namespace {

void validate_map(const PartialMap& pm) {
    validate_params(pm.params);
    const std::size_t m = pm.size();
    if (m == 0)
        throw std::invalid_argument("PartialMap: M must be nonempty");
    std::size_t nvalues = pm.has_seq_values() ? pm.seq_values().seqs.size()
                                              : pm.fn_values().fns.size();
    if (nvalues != m)
        throw std::invalid_argument("PartialMap: |points| != |values|");
    for (const auto& p : pm.points)
        if (static_cast<int>(p.size()) != pm.space.dim())
            throw std::invalid_argument("PartialMap: point dimension mismatch");
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i + 1; j < m; ++j)
            if (pm.points[i] == pm.points[j])
                throw std::invalid_argument("PartialMap: coincident points in M");
    if (!pm.has_seq_values()) {
        const auto& fv = pm.fn_values();
        for (const auto& fn : fv.fns)
            if (fn.size() != fv.metric.size())
                throw std::invalid_argument("PartialMap: function size != |K|");
    }
}

} // namespace

PartialMap make_seq_map(NormedSpace space, HolderParams params,
                        std::vector<Point> points, std::vector<EcSeq> seqs) {
    PartialMap pm{std::move(space), params, std::move(points), SeqValues{std::move(seqs)}};
    validate_map(pm);
    return pm;
}

PartialMap make_fn_map(NormedSpace space, HolderParams params,
                       std::vector<Point> points, FiniteMetricSpace metric,
                       std::vector<FiniteFunction> fns) {
    PartialMap pm{std::move(space), params, std::move(points),
                  FnValues{std::move(metric), std::move(fns)}};
    validate_map(pm);
    return pm;
}

double holder_constant(const PartialMap& pm, double alpha) {
    HolderParams probe{1.0, alpha};
    validate_params(probe);
    double best = 0.0;
    for (std::size_t i = 0; i < pm.size(); ++i) {
        for (std::size_t j = i + 1; j < pm.size(); ++j) {
            const double d = std::pow(pm.space.dist(pm.points[i], pm.points[j]), alpha);
            if (d == 0.0)
                throw std::invalid_argument("holder_constant: coincident points");
            best = std::max(best, pm.value_dist(i, j) / d);
        }
    }
    return best;
}

double holder_excess(const PartialMap& pm) {
    double worst = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < pm.size(); ++i)
        for (std::size_t j = i + 1; j < pm.size(); ++j) {
            const double r = pm.radius_at(i, pm.points[j]);
            const double dv = pm.value_dist(i, j);
            worst = std::max(worst, (dv - r) / std::max(1.0, std::abs(r)));
        }
    return worst;
}

bool is_holder(const PartialMap& pm, double rel_tol) {
    return pm.size() < 2 || holder_excess(pm) <= rel_tol;
}

namespace {

template <typename ValueDist>
double extension_excess_impl(const PartialMap& pm, const Point& x, ValueDist vd) {
    double worst = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < pm.size(); ++i) {
        const double r = pm.radius_at(i, x);
        const double dv = vd(i);
        worst = std::max(worst, (dv - r) / std::max(1.0, std::abs(r)));
    }
    return worst;
}

} // namespace

double extension_excess(const PartialMap& pm, const Point& x, const EcSeq& value) {
    const auto& seqs = pm.seq_values().seqs;
    return extension_excess_impl(pm, x,
                                 [&](std::size_t i) { return sup_dist(seqs[i], value); });
}

double extension_excess(const PartialMap& pm, const Point& x, const FiniteFunction& value) {
    const auto& fns = pm.fn_values().fns;
    return extension_excess_impl(pm, x,
                                 [&](std::size_t i) { return sup_dist_fn(fns[i], value); });
}

Interval feasibility_interval(const NormedSpace& space, const HolderParams& params,
                              const std::vector<Point>& points,
                              const std::vector<double>& values, const Point& x) {
    if (points.empty() || points.size() != values.size())
        throw std::invalid_argument("feasibility_interval: bad M");
    double lo = -std::numeric_limits<double>::infinity();
    double hi = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < points.size(); ++i) {
        if (points[i] == x)
            throw std::invalid_argument("feasibility_interval: x belongs to M");
        const double r = dist_alpha(space, points[i], x, params);
        lo = std::max(lo, values[i] - r);
        hi = std::min(hi, values[i] + r);
    }
    return Interval::of(lo, hi);
}

double infconv_extend(const NormedSpace& space, const HolderParams& params,
                      const std::vector<Point>& points,
                      const std::vector<double>& values, const Point& x) {
    if (points.empty() || points.size() != values.size())
        throw std::invalid_argument("infconv_extend: bad M");
    double hi = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < points.size(); ++i)
        hi = std::min(hi, values[i] + dist_alpha(space, points[i], x, params));
    return hi;
}

double sup_extend(const NormedSpace& space, const HolderParams& params,
                  const std::vector<Point>& points,
                  const std::vector<double>& values, const Point& x) {
    if (points.empty() || points.size() != values.size())
        throw std::invalid_argument("sup_extend: bad M");
    double lo = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < points.size(); ++i)
        lo = std::max(lo, values[i] - dist_alpha(space, points[i], x, params));
    return lo;
}

FiniteFunction linf_vector_extend(const PartialMap& pm, const Point& x, Policy policy) {
    const auto& fv = pm.fn_values();
    const std::size_t m = fv.metric.size();
    FiniteFunction out(m, 0.0);
    std::vector<double> column(pm.size());
    for (std::size_t t = 0; t < m; ++t) {
        for (std::size_t i = 0; i < pm.size(); ++i) column[i] = fv.fns[i][t];
        const Interval iv = feasibility_interval(pm.space, pm.params, pm.points, column, x);
        if (iv.empty)
            throw std::invalid_argument("linf_vector_extend: empty coordinate interval "
                                        "(map is not Hölder)");
        out[t] = pick(iv, policy);
    }
    return out;
}

} // namespace holdex
