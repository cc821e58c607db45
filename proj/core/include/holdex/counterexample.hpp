#ifndef HOLDEX_COUNTEREXAMPLE_HPP
#define HOLDEX_COUNTEREXAMPLE_HPP

#include <optional>
#include <vector>

#include "holdex/extend_c.hpp"

namespace holdex {

/// Left-hand side of the constant-selection inequality
/// (1/2) (K^2-1)/K^2 (K/(K+1))^3, to be compared against 3/8.
double selection_value(double Kparam);
bool selection_ok(double Kparam);

/// Smallest integer K in [lo, hi] passing the selection inequality.
std::optional<int> select_K(int lo, int hi);

/// The 1-Lipschitz map from l2^2 (+)_1 l2^2 into c that admits no
/// contraction extension at 0: points x_n = (K^2n, K^n, 0, 0),
/// y_n = (0, 0, K^2n, K^n) with alternating-plateau sequence values.
struct CounterexampleInstance {
    double Kparam = 11.0;
    int n0 = 1; // least index from which the cross inequality holds
    int n1 = 1;
    int N = 5;
    PartialMap pm; // alpha = 1, K = 1; x_n first, then y_n
    std::vector<int> indices; // the n of each row (x block then y block)
};

/// Largest truncation depth keeping the 3/8 gap above 1e-12 relative
/// resolution at magnitude K^2N.
int max_safe_truncation(double Kparam);

/// Builds the instance and re-verifies all of its inequalities numerically.
CounterexampleInstance gen_counterexample(double Kparam, int n1, int N);

struct ObstructionCertificate {
    FeasibilityCertificate intervals; // forced intervals at x = 0
    double odd_lo_min = 0.0;          // min over odd k <= N of lo(k)
    double even_hi_max = 0.0;         // max over even k <= N of hi(k)
    bool oscillation_ok = false;      // odd_lo_min >= 1/8 and even_hi_max <= -1/8
    int minimal_prefix_length = 0;
};

/// Forced-oscillation certificate at 0: any contraction extension value must
/// oscillate by at least 1/4 across consecutive coordinates up to N, so its
/// canonical prefix cannot end before index N.
ObstructionCertificate verify_counterexample(const CounterexampleInstance& inst);

} // namespace holdex

#endif
