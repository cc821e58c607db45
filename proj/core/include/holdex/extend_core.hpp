#ifndef HOLDEX_EXTEND_CORE_HPP
#define HOLDEX_EXTEND_CORE_HPP

#include <cstddef>
#include <limits>
#include <variant>
#include <vector>

#include "holdex/spaces.hpp"
#include "holdex/targets.hpp"

namespace holdex {

struct Interval {
    double lo = 0.0;
    double hi = 0.0;
    bool empty = false;

    static Interval of(double lo, double hi) {
        return lo <= hi ? Interval{lo, hi, false} : Interval{lo, hi, true};
    }
    static Interval whole() {
        return Interval{-std::numeric_limits<double>::infinity(),
                        std::numeric_limits<double>::infinity(), false};
    }

    double mid() const { return 0.5 * (lo + hi); }
    double width() const { return hi - lo; }
    bool contains(double v, double tol = 0.0) const {
        return !empty && v >= lo - tol && v <= hi + tol;
    }
    double clamp(double v) const { return v < lo ? lo : (v > hi ? hi : v); }
    Interval intersect(const Interval& other) const;
    /// Set inclusion: this contains other.
    bool covers(const Interval& other, double tol = 0.0) const;
};

enum class Policy { Lo, Hi, Mid };

double pick(const Interval& iv, Policy policy);

/// Values of a PartialMap into c: one eventually-constant sequence per point.
struct SeqValues {
    std::vector<EcSeq> seqs;
};

/// Values of a PartialMap into C(K) on a finite metric sample.
struct FnValues {
    FiniteMetricSpace metric;
    std::vector<FiniteFunction> fns;
};

/// A finitely supported Hölder map: points of the source space paired with
/// target values, either sequences (targets in c) or sampled functions.
struct PartialMap {
    NormedSpace space;
    HolderParams params;
    std::vector<Point> points;
    std::variant<SeqValues, FnValues> values;

    std::size_t size() const { return points.size(); }
    bool has_seq_values() const { return std::holds_alternative<SeqValues>(values); }
    const SeqValues& seq_values() const { return std::get<SeqValues>(values); }
    const FnValues& fn_values() const { return std::get<FnValues>(values); }

    /// Sup distance between target values i and j.
    double value_dist(std::size_t i, std::size_t j) const;
    /// K * d(points[i], x)^alpha.
    double radius_at(std::size_t i, const Point& x) const;
};

PartialMap make_seq_map(NormedSpace space, HolderParams params,
                        std::vector<Point> points, std::vector<EcSeq> seqs);
PartialMap make_fn_map(NormedSpace space, HolderParams params,
                       std::vector<Point> points, FiniteMetricSpace metric,
                       std::vector<FiniteFunction> fns);

/// Largest pairwise quotient target-distance / d^alpha; 0 for a singleton.
double holder_constant(const PartialMap& pm, double alpha);

/// Maximal Hölder excess of pm over its own (K, alpha): <= 0 means pm is
/// (K, alpha)-Hölder. Used as the verification primitive everywhere.
double holder_excess(const PartialMap& pm);
bool is_holder(const PartialMap& pm, double rel_tol = 1e-9);

/// Hölder excess of pm extended by (x -> value); checks only the new pairs.
double extension_excess(const PartialMap& pm, const Point& x, const EcSeq& value);
double extension_excess(const PartialMap& pm, const Point& x, const FiniteFunction& value);

// Scalar one-point extension: the set M carries plain real values.

/// [max_y (f(y) - K d^a), min_y (f(y) + K d^a)], the admissible values at x.
Interval feasibility_interval(const NormedSpace& space, const HolderParams& params,
                              const std::vector<Point>& points,
                              const std::vector<double>& values, const Point& x);

/// inf_u (f(u) + K d(u,x)^a), the hi endpoint; equals f(x) for x in M.
double infconv_extend(const NormedSpace& space, const HolderParams& params,
                      const std::vector<Point>& points,
                      const std::vector<double>& values, const Point& x);

/// sup_u (f(u) - K d(u,x)^a), the lo endpoint.
double sup_extend(const NormedSpace& space, const HolderParams& params,
                  const std::vector<Point>& points,
                  const std::vector<double>& values, const Point& x);

/// Coordinatewise one-point extension for function-valued maps.
FiniteFunction linf_vector_extend(const PartialMap& pm, const Point& x,
                                  Policy policy = Policy::Mid);

struct FeasibilityCertificate {
    std::vector<Interval> per_coordinate;
    Interval tail_interval;
    double margin = 0.0;
    /// Pair of domain indices and the coordinate (1-based; 0 = tail)
    /// achieving the minimal slack.
    std::size_t witness_y = 0;
    std::size_t witness_z = 0;
    std::size_t witness_coordinate = 0;
};

} // namespace holdex

#endif
