#include "holdex/spaces.hpp"

#include <algorithm>
#include <cmath>

namespace holdex {

void validate_params(const HolderParams& params) {
    if (!(params.K >= 0.0))
        throw std::invalid_argument("HolderParams: K must be >= 0");
    if (!(params.alpha > 0.0 && params.alpha <= 1.0))
        throw std::invalid_argument("HolderParams: alpha must be in (0,1]");
}

NormedSpace NormedSpace::lp(double p, int dim) {
    if (!(p >= 1.0))
        throw std::invalid_argument("NormedSpace::lp: p must be >= 1");
    if (dim < 1)
        throw std::invalid_argument("NormedSpace::lp: dim must be >= 1");
    NormedSpace s;
    s.kind_ = Kind::Lp;
    s.p_ = p;
    s.dim_ = dim;
    return s;
}

NormedSpace NormedSpace::linf(int dim) {
    if (dim < 1)
        throw std::invalid_argument("NormedSpace::linf: dim must be >= 1");
    NormedSpace s;
    s.kind_ = Kind::LInf;
    s.dim_ = dim;
    return s;
}

NormedSpace NormedSpace::l1_sum(std::vector<NormedSpace> parts) {
    if (parts.empty())
        throw std::invalid_argument("NormedSpace::l1_sum: needs at least one part");
    NormedSpace s;
    s.kind_ = Kind::L1Sum;
    s.dim_ = 0;
    for (const auto& part : parts) s.dim_ += part.dim();
    s.parts_ = std::move(parts);
    return s;
}

NormedSpace NormedSpace::polytope(std::vector<std::vector<double>> functionals) {
    if (functionals.empty())
        throw std::invalid_argument("NormedSpace::polytope: needs at least one functional");
    const std::size_t d = functionals.front().size();
    if (d == 0)
        throw std::invalid_argument("NormedSpace::polytope: zero-dimensional functional");
    for (const auto& f : functionals)
        if (f.size() != d)
            throw std::invalid_argument("NormedSpace::polytope: functionals of unequal length");
    NormedSpace s;
    s.kind_ = Kind::Polytope;
    s.dim_ = static_cast<int>(d);
    s.functionals_ = std::move(functionals);
    // positive definiteness, checked on basis vectors
    for (std::size_t i = 0; i < d; ++i) {
        Point e(d, 0.0);
        e[i] = 1.0;
        if (s.norm(e) == 0.0)
            throw std::invalid_argument(
                "NormedSpace::polytope: functionals vanish on basis vector " +
                std::to_string(i));
    }
    return s;
}

namespace {

void check_dim(const NormedSpace& space, const Point& x) {
    if (static_cast<int>(x.size()) != space.dim())
        throw std::invalid_argument("point dimension " + std::to_string(x.size()) +
                                    " does not match space dimension " +
                                    std::to_string(space.dim()));
}

} // namespace

double NormedSpace::norm(const Point& x) const {
    check_dim(*this, x);
    switch (kind_) {
        case Kind::Lp: {
            if (p_ == 1.0) {
                double s = 0.0;
                for (double v : x) s += std::abs(v);
                return s;
            }
            if (p_ == 2.0) {
                double s = 0.0;
                for (double v : x) s += v * v;
                return std::sqrt(s);
            }
            double s = 0.0;
            for (double v : x) s += std::pow(std::abs(v), p_);
            return std::pow(s, 1.0 / p_);
        }
        case Kind::LInf: {
            double m = 0.0;
            for (double v : x) m = std::max(m, std::abs(v));
            return m;
        }
        case Kind::L1Sum: {
            double total = 0.0;
            std::size_t offset = 0;
            for (const auto& part : parts_) {
                Point slice(x.begin() + static_cast<std::ptrdiff_t>(offset),
                            x.begin() + static_cast<std::ptrdiff_t>(offset + part.dim()));
                total += part.norm(slice);
                offset += static_cast<std::size_t>(part.dim());
            }
            return total;
        }
        case Kind::Polytope: {
            double m = 0.0;
            for (const auto& f : functionals_) {
                double v = 0.0;
                for (std::size_t i = 0; i < f.size(); ++i) v += f[i] * x[i];
                m = std::max(m, std::abs(v));
            }
            return m;
        }
    }
    throw std::logic_error("unreachable");
}

double NormedSpace::dist(const Point& x, const Point& y) const {
    return norm(sub(x, y));
}

bool NormedSpace::operator==(const NormedSpace& other) const {
    if (kind_ != other.kind_ || dim_ != other.dim_) return false;
    switch (kind_) {
        case Kind::Lp: return p_ == other.p_;
        case Kind::LInf: return true;
        case Kind::L1Sum: return parts_ == other.parts_;
        case Kind::Polytope: return functionals_ == other.functionals_;
    }
    return false;
}

double dist_alpha(const NormedSpace& space, const Point& x, const Point& y,
                  const HolderParams& params) {
    const double d = space.dist(x, y);
    if (params.alpha == 1.0) return params.K * d;
    return params.K * std::pow(d, params.alpha);
}

Point LinearMap::apply(const Point& x) const {
    Point out;
    out.reserve(rows.size());
    for (const auto& row : rows) {
        if (row.size() != x.size())
            throw std::invalid_argument("LinearMap::apply: dimension mismatch");
        double v = 0.0;
        for (std::size_t i = 0; i < row.size(); ++i) v += row[i] * x[i];
        out.push_back(v);
    }
    return out;
}

LinearMap polytope_embed(const NormedSpace& space) {
    if (space.kind() != NormedSpace::Kind::Polytope)
        throw std::invalid_argument("polytope_embed: space is not a polytope norm");
    return LinearMap{space.functionals()};
}

Point sub(const Point& a, const Point& b) {
    if (a.size() != b.size())
        throw std::invalid_argument("point dimension mismatch");
    Point out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
    return out;
}

Point add(const Point& a, const Point& b) {
    if (a.size() != b.size())
        throw std::invalid_argument("point dimension mismatch");
    Point out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
    return out;
}

} // namespace holdex
