#ifndef HOLDEX_EXTEND_C_HPP
#define HOLDEX_EXTEND_C_HPP

#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "holdex/extend_core.hpp"

namespace holdex {

/// Raised when the sphere net cannot be refined to the requested density;
/// retry with a larger resolution.
struct NetConstructionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Covering of X \ {0} by cones over a delta/2-net of the unit sphere.
/// Same-cone pairs with ||x|| >= ||y|| satisfy
/// ||x - y|| <= ||x|| - (1 - delta) ||y||.
struct ConeCover {
    /// Position of a direction on the generating cube-surface grid:
    /// (face, sign, grid index per remaining coordinate).
    using GridKey = std::tuple<int, int, std::vector<int>>;

    NormedSpace space;
    double delta = 0.5;
    std::vector<Point> directions;
    int grid_resolution = 0; // 0 when the grid index is not populated
    std::map<GridKey, std::size_t> grid_index;

    /// Index of a direction within delta/2 of x/||x|| (deterministic grid
    /// neighbor lookup, exhaustive scan as fallback); nearest direction if
    /// none is that close. nullopt for x = 0.
    std::optional<std::size_t> assign(const Point& x) const;
};

ConeCover cone_cover(const NormedSpace& space, double delta, int resolution = 8);

/// Record of the c0 one-point extension at x0.
struct C0Trace {
    double epsilon = 0.0;
    std::size_t cutoff = 0;                 // N: coordinates n <= N copy eta_n
    std::vector<std::size_t> representatives; // indices into M, one per occupied cone
    std::vector<double> eta;                // scalar extension values, coords 1..P
    std::vector<int> signs;                 // sign(eta_n)
};

/// One-point extension into c0 at x0 (tail of the output is exactly 0).
std::pair<EcSeq, C0Trace> c0_extend(const PartialMap& pm, const Point& x0);

struct CFeasibility {
    bool feasible = true;
    double margin = 0.0;
    std::size_t witness_y = 0;
    std::size_t witness_z = 0;
};

/// Extendability criterion for maps into c at x. For finite M and a Hölder
/// map this always holds; the margin and its witness pair are the payload.
CFeasibility c_feasible(const PartialMap& pm, const Point& x);

/// Per-coordinate admissible intervals for any contraction extension at x.
FeasibilityCertificate forced_intervals(const PartialMap& pm, const Point& x);

/// Record of the c one-point extension at x.
struct CTrace {
    std::vector<double> s_values; // s(j) on the prefix grid, j = 1..P+1
    double s_inf = 0.0;           // limit value sup_z (tail(z) - K d(z,x)^a)
    std::size_t prefix_cutoff = 0;
};

/// One-point extension into c at x. Prefix coordinates are chosen by policy
/// inside their forced intervals; the tail is s(inf) clamped into the tail
/// interval (the limit value of the sup-formula construction).
std::pair<EcSeq, CTrace> c_extend(const PartialMap& pm, const Point& x,
                                  Policy policy = Policy::Mid);

/// One recursion step of the covering construction, for the trace.
struct PartitionStep {
    int j = 0;       // face coordinate, 0-based
    int delta = 1;   // face sign
    int k = -1;      // secondary face coordinate; -1 for the translated-cone cell
    int eta = 0;
    int band = 0;    // 1-based band index nu
    double band_width = 0.0; // d_{j,delta,k,eta} / N_{k,eta}
    int band_count = 0;      // N_{k,eta}
};

struct PartitionCell {
    std::vector<std::size_t> members;    // indices into M
    std::size_t representative = 0;      // index into M, member of the cell
    std::vector<PartitionStep> path;
};

struct PartitionTrace {
    double epsilon = 0.0;
    std::vector<PartitionCell> cells;
};

/// Finite covering of M in linf(n) with per-cell representatives x^i such
/// that every assigned x satisfies ||x|| >= ||x^i|| - eps and
/// ||x - x^i|| <= ||x|| - ||x^i|| + eps.
PartitionTrace linf_partition(const std::vector<Point>& M, double epsilon);

} // namespace holdex

#endif
