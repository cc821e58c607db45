#include "holdex/targets.hpp"

#include <algorithm>
#include <cmath>

namespace holdex {

EcSeq::EcSeq(std::vector<double> prefix, double tail)
    : prefix_(std::move(prefix)), tail_(tail) {
    while (!prefix_.empty() && prefix_.back() == tail_) prefix_.pop_back();
}

double EcSeq::sup_norm() const {
    double m = std::abs(tail_);
    for (double v : prefix_) m = std::max(m, std::abs(v));
    return m;
}

double sup_dist(const EcSeq& a, const EcSeq& b) {
    const std::size_t p = std::max(a.prefix_size(), b.prefix_size());
    double m = std::abs(a.tail() - b.tail());
    for (std::size_t n = 1; n <= p; ++n)
        m = std::max(m, std::abs(a.at(n) - b.at(n)));
    return m;
}

FiniteMetricSpace::FiniteMetricSpace(std::vector<std::vector<double>> rho)
    : size_(rho.size()), rho_(std::move(rho)), diameter_(0.0) {
    if (size_ == 0)
        throw std::invalid_argument("FiniteMetricSpace: empty distance matrix");
    for (const auto& row : rho_)
        if (row.size() != size_)
            throw std::invalid_argument("FiniteMetricSpace: matrix is not square");
    for (std::size_t i = 0; i < size_; ++i) {
        if (rho_[i][i] != 0.0)
            throw std::invalid_argument("FiniteMetricSpace: nonzero diagonal");
        for (std::size_t j = 0; j < size_; ++j) {
            if (rho_[i][j] < 0.0)
                throw std::invalid_argument("FiniteMetricSpace: negative distance");
            if (rho_[i][j] != rho_[j][i])
                throw std::invalid_argument("FiniteMetricSpace: asymmetric matrix");
            diameter_ = std::max(diameter_, rho_[i][j]);
        }
    }
    const double tol = 1e-12 * std::max(diameter_, 1.0);
    for (std::size_t i = 0; i < size_; ++i)
        for (std::size_t j = 0; j < size_; ++j)
            for (std::size_t k = 0; k < size_; ++k)
                if (rho_[i][j] > rho_[i][k] + rho_[k][j] + tol)
                    throw std::invalid_argument("FiniteMetricSpace: triangle inequality fails");
    if (size_ >= 2 && diameter_ <= 0.0)
        throw std::invalid_argument("FiniteMetricSpace: diameter must be positive for m >= 2");
}

FiniteMetricSpace FiniteMetricSpace::from_points_1d(const std::vector<double>& points) {
    const std::size_t m = points.size();
    std::vector<std::vector<double>> rho(m, std::vector<double>(m, 0.0));
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j)
            rho[i][j] = std::abs(points[i] - points[j]);
    return FiniteMetricSpace(std::move(rho));
}

double sup_dist_fn(const FiniteFunction& a, const FiniteFunction& b) {
    if (a.size() != b.size())
        throw std::invalid_argument("sup_dist_fn: size mismatch");
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
        m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

} // namespace holdex
