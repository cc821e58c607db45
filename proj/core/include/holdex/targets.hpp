#ifndef HOLDEX_TARGETS_HPP
#define HOLDEX_TARGETS_HPP

#include <cstddef>
#include <stdexcept>
#include <vector>

namespace holdex {

/// Eventually-constant real sequence: (prefix_1, ..., prefix_p, tail, tail, ...).
/// Canonical form: the prefix never ends with an entry equal to the tail.
/// Elements of c_0 are exactly those with tail == 0.
class EcSeq {
public:
    EcSeq() : tail_(0.0) {}
    EcSeq(std::vector<double> prefix, double tail);

    static EcSeq constant(double value) { return EcSeq({}, value); }

    /// Value at 1-based index n.
    double at(std::size_t n) const {
        if (n == 0) throw std::invalid_argument("EcSeq::at: indices start at 1");
        return n <= prefix_.size() ? prefix_[n - 1] : tail_;
    }

    const std::vector<double>& prefix() const { return prefix_; }
    double tail() const { return tail_; }
    std::size_t prefix_size() const { return prefix_.size(); }
    bool in_c0() const { return tail_ == 0.0; }
    double sup_norm() const;

    bool operator==(const EcSeq& other) const {
        return tail_ == other.tail_ && prefix_ == other.prefix_;
    }

private:
    std::vector<double> prefix_;
    double tail_;
};

/// sup_n |a(n) - b(n)|: aligned prefix coordinates (shorter prefix padded
/// with its own tail) plus the tail gap.
double sup_dist(const EcSeq& a, const EcSeq& b);

/// Real function on a finite metric space, stored as a value per point.
using FiniteFunction = std::vector<double>;

/// Finite sample of a compact metric space: a symmetric distance matrix
/// with zero diagonal satisfying the triangle inequality.
class FiniteMetricSpace {
public:
    explicit FiniteMetricSpace(std::vector<std::vector<double>> rho);

    /// Points on the real line, rho = absolute difference.
    static FiniteMetricSpace from_points_1d(const std::vector<double>& points);

    std::size_t size() const { return size_; }
    double rho(std::size_t t, std::size_t s) const { return rho_[t][s]; }
    const std::vector<std::vector<double>>& matrix() const { return rho_; }
    double diameter() const { return diameter_; }

    bool operator==(const FiniteMetricSpace& other) const { return rho_ == other.rho_; }

private:
    std::size_t size_;
    std::vector<std::vector<double>> rho_;
    double diameter_;
};

double sup_dist_fn(const FiniteFunction& a, const FiniteFunction& b);

} // namespace holdex

#endif
