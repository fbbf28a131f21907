#include "conetail/regvar.hpp"

#include <algorithm>
#include <cmath>

namespace conetail {

PowerFn::PowerFn(double c, double e) : coeff(c), exponent(e) {
    if (!(c > 0.0) || !std::isfinite(c))
        raise(ErrorCode::BadParam, "PowerFn coeff must be positive and finite");
    if (!std::isfinite(e))
        raise(ErrorCode::BadParam, "PowerFn exponent must be finite");
}

double PowerFn::operator()(double t) const {
    if (!(t > 0.0))
        raise(ErrorCode::DomainError, "PowerFn evaluated at t <= 0");
    return coeff * std::pow(t, exponent);
}

PowerFn invert(const PowerFn& f) {
    if (f.exponent == 0.0)
        raise(ErrorCode::ZeroExponent, "constant power function has no inverse");
    // g(f(t)) = t  =>  g(u) = (u/coeff)^(1/exponent)
    return PowerFn(std::pow(f.coeff, -1.0 / f.exponent), 1.0 / f.exponent);
}

PowerFn multiply(const PowerFn& f, const PowerFn& g) {
    return PowerFn(f.coeff * g.coeff, f.exponent + g.exponent);
}

PowerFn pow(const PowerFn& f, double s) {
    return PowerFn(std::pow(f.coeff, s), s * f.exponent);
}

LimitClass ratio_limit(const PowerFn& f, const PowerFn& g) {
    // Ties are broken by the coefficient ratio, never by evaluation at
    // finite t.
    if (f.exponent < g.exponent) return LimitClass::zero();
    if (f.exponent > g.exponent) return LimitClass::infinite();
    return LimitClass::finite(f.coeff / g.coeff);
}

RectSet::RectSet(int d, std::map<int, double> x) : dim(d), thresholds(std::move(x)) {
    if (dim <= 0) raise(ErrorCode::BadParam, "RectSet dimension must be positive");
    if (thresholds.empty()) raise(ErrorCode::BadParam, "RectSet index set must be nonempty");
    for (const auto& [j, xj] : thresholds) {
        if (j < 0 || j >= dim)
            raise(ErrorCode::BadParam, "RectSet index out of range");
        if (!(xj > 0.0) || !std::isfinite(xj))
            raise(ErrorCode::BadParam, "RectSet thresholds must be strictly positive");
    }
}

std::vector<int> RectSet::indices() const {
    std::vector<int> s;
    s.reserve(thresholds.size());
    for (const auto& [j, _] : thresholds) s.push_back(j);
    return s;
}

RectSet RectSet::scaled(double t) const {
    if (!(t > 0.0)) raise(ErrorCode::DomainError, "scale factor must be positive");
    RectSet r = *this;
    for (auto& [_, xj] : r.thresholds) xj *= t;
    return r;
}

RectSet intersect(const RectSet& a, const RectSet& b) {
    if (a.dim != b.dim)
        raise(ErrorCode::DimensionMismatch, "intersect requires equal dimensions");
    RectSet r;
    r.dim = a.dim;
    r.thresholds = a.thresholds;
    for (const auto& [j, yj] : b.thresholds) {
        auto it = r.thresholds.find(j);
        if (it == r.thresholds.end())
            r.thresholds[j] = yj;
        else
            it->second = std::max(it->second, yj);  // max{x_j, y_j} on the overlap
    }
    return r;
}

int cone_level(const RectSet& a) { return static_cast<int>(a.thresholds.size()); }

bool contains(const RectSet& a, const std::vector<double>& z) {
    if (static_cast<int>(z.size()) != a.dim)
        raise(ErrorCode::DimensionMismatch, "point dimension does not match set");
    for (const auto& [j, xj] : a.thresholds)
        if (!(z[j] > xj)) return false;  // open rectangle, strict inequality
    return true;
}

std::vector<double> order_statistics(const std::vector<double>& z) {
    std::vector<double> s = z;
    std::sort(s.begin(), s.end(), std::greater<double>());
    return s;
}

std::vector<double> descending_thresholds(const RectSet& a) {
    std::vector<double> x;
    x.reserve(a.thresholds.size());
    for (const auto& [_, xj] : a.thresholds) x.push_back(xj);
    std::sort(x.begin(), x.end(), std::greater<double>());
    return x;
}

}  // namespace conetail
