#ifndef HOLDEX_SPACES_HPP
#define HOLDEX_SPACES_HPP

#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace holdex {

using Point = std::vector<double>;

/// Hölder parameters: a constant K >= 0 and an exponent alpha in (0,1].
struct HolderParams {
    double K = 1.0;
    double alpha = 1.0;
};

void validate_params(const HolderParams& params);

/// Finite-dimensional normed space descriptor. Four kinds:
/// lp(p, dim), linf(dim), the 1-direct-sum of parts, and a polytope norm
/// given by a list of supporting functionals (norm(x) = max_i |f_i(x)|).
class NormedSpace {
public:
    enum class Kind { Lp, LInf, L1Sum, Polytope };

    NormedSpace() = default; // linf(1)

    static NormedSpace lp(double p, int dim);
    static NormedSpace linf(int dim);
    static NormedSpace l1_sum(std::vector<NormedSpace> parts);
    static NormedSpace polytope(std::vector<std::vector<double>> functionals);

    Kind kind() const { return kind_; }
    int dim() const { return dim_; }
    double p() const { return p_; }
    const std::vector<NormedSpace>& parts() const { return parts_; }
    const std::vector<std::vector<double>>& functionals() const { return functionals_; }

    double norm(const Point& x) const;
    double dist(const Point& x, const Point& y) const;

    bool operator==(const NormedSpace& other) const;

private:
    Kind kind_ = Kind::LInf;
    int dim_ = 1;
    double p_ = 2.0;                                 // Lp only
    std::vector<NormedSpace> parts_;                 // L1Sum only
    std::vector<std::vector<double>> functionals_;   // Polytope only
};

/// K * d(x,y)^alpha, the right-hand side of the Hölder condition.
double dist_alpha(const NormedSpace& space, const Point& x, const Point& y,
                  const HolderParams& params);

/// Linear map into linf(n), represented row-wise.
struct LinearMap {
    std::vector<std::vector<double>> rows;

    Point apply(const Point& x) const;
    int out_dim() const { return static_cast<int>(rows.size()); }
};

/// Isometric embedding of a polytope-normed space into linf(n):
/// Tx = (f_1(x), ..., f_n(x)).
LinearMap polytope_embed(const NormedSpace& space);

Point sub(const Point& a, const Point& b);
Point add(const Point& a, const Point& b);

} // namespace holdex

#endif
