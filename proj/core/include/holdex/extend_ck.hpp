#ifndef HOLDEX_EXTEND_CK_HPP
#define HOLDEX_EXTEND_CK_HPP

#include <utility>
#include <variant>
#include <vector>

#include "holdex/extend_core.hpp"

namespace holdex {

/// The oscillation gauges of the C(K) extendability criterion, sampled on
/// the finite distance grid of K. xi is the raw supremal excess, psi its
/// shift to psi(0) = 0, phi the continuous piecewise-linear majorant on the
/// harmonic knot schedule D/(n+1).
struct ModulusTable {
    std::vector<double> lambda_grid; // sorted distances of K, incl. 0 and D
    std::vector<double> xi;          // xi at the grid points
    double xi0 = 0.0;
    std::vector<double> psi;         // xi - xi0
    std::vector<double> phi_knots;   // ascending, first 0, last D
    std::vector<double> phi_values;
    double diameter = 0.0;

    /// Step function: xi at the largest grid distance <= lambda.
    double xi_at(double lambda) const;
    double psi_at(double lambda) const { return xi_at(lambda) - xi0; }
    /// Piecewise-linear phi; constant psi(D) on [D/2, D].
    double phi(double lambda) const;
};

/// Raised by ck_extend when the gauge condition fails; carries the
/// violating tuple.
struct CkConditionError : std::runtime_error {
    std::size_t y, z, t, s;
    double excess;
    CkConditionError(std::size_t y_, std::size_t z_, std::size_t t_, std::size_t s_,
                     double excess_);
};

/// Extendability check: all (t,s) closer than delta, all (y,z) in M must
/// satisfy |f(y)(t) - f(z)(s)| <= K d(y,x)^a + K d(z,x)^a. Returns the flag
/// and the worst excess over those tuples.
std::pair<bool, double> ck_feasible(const PartialMap& pm, const Point& x, double delta);

ModulusTable xi_modulus(const PartialMap& pm, const Point& x);

/// Sup-formula extension g(x)(t) = sup_{s,z} (f(z)(s) - K d(z,x)^a - phi(rho(t,s))).
/// Checks the gauge condition first and throws CkConditionError on failure.
FiniteFunction ck_extend(const PartialMap& pm, const Point& x,
                         const ModulusTable& modulus);

/// Inf-convolution into C(K): g(x)(t) = min_y (f(y)(t) + K d(x,y)^a).
FiniteFunction infconv_ck(const PartialMap& pm, const Point& x);

/// Result of the net-based almost-isometric extension.
struct AlmostExtendResult {
    std::variant<EcSeq, FiniteFunction> value;
    std::vector<std::size_t> net; // indices into M actually used
    double factor = 1.0;          // verified Hölder-constant inflation <= 1 + eps
};

/// Extends at x using interval midpoints over a shrinking net of M; returns
/// the first value verified (1+eps)K-Hölder against all of M. Terminates for
/// finite M (the net eventually is all of M, giving an exact extension).
AlmostExtendResult almost_extend_net(const PartialMap& pm, const Point& x, double eps);

/// Norm-one embedding machinery between functions on a subsample F and
/// functions on all of K: T extends by the nearest-point rule, R restricts,
/// P = T∘R is a norm-one projection.
struct Embedding {
    FiniteMetricSpace metric;
    std::vector<std::size_t> subset;  // indices into K (the set F)
    std::vector<std::size_t> nearest; // per point of K: position in subset

    FiniteFunction extend(const FiniteFunction& on_subset) const;   // T
    FiniteFunction restrict(const FiniteFunction& on_all) const;    // R
    FiniteFunction project(const FiniteFunction& on_all) const;     // P = T R
};

Embedding embed_c_into_ck(const FiniteMetricSpace& metric,
                          std::vector<std::size_t> subset);

/// Reduction of a C(K)-valued map to a c-valued one by sampling the
/// witness pairs: h(y) = (f(y)(t_1), f(y)(s_1), f(y)(t_2), ...) with the
/// last sample as tail. Never increases the Hölder constant.
PartialMap reduce_ck_to_c(const PartialMap& pm,
                          const std::vector<std::pair<std::size_t, std::size_t>>& witnesses);

} // namespace holdex

#endif
