#pragma once

#include <map>
#include <vector>

#include "conetail/errors.hpp"

namespace conetail {

// A pure power law t -> coeff * t^exponent, t > 0.  Stands in for the
// scaling functions b(t), their inverses b^{<-}(t) and products thereof;
// the slowly varying part is restricted to a constant so that all ratio
// limits are computable exactly.
struct PowerFn {
    double coeff = 1.0;
    double exponent = 0.0;

    PowerFn() = default;
    PowerFn(double c, double e);

    double operator()(double t) const;
};

PowerFn invert(const PowerFn& f);
PowerFn multiply(const PowerFn& f, const PowerFn& g);
PowerFn pow(const PowerFn& f, double s);

// Classification of lim_{t->inf} f(t)/g(t) for power laws.
struct LimitClass {
    enum Tag { Zero, Finite, Infinite } tag = Zero;
    double value = 0.0;  // meaningful only when tag == Finite

    static LimitClass zero() { return {Zero, 0.0}; }
    static LimitClass finite(double v) { return {Finite, v}; }
    static LimitClass infinite() { return {Infinite, 0.0}; }

    bool is_zero() const { return tag == Zero; }
    bool is_finite() const { return tag == Finite; }
    bool is_infinite() const { return tag == Infinite; }
};

LimitClass ratio_limit(const PowerFn& f, const PowerFn& g);

// Rectangular tail set {z in R_+^d : z_j > x_j for all j in S}.
// Indices are 0-based internally; the JSON form is 1-based.
struct RectSet {
    int dim = 0;
    std::map<int, double> thresholds;  // j in S -> x_j > 0

    RectSet() = default;
    RectSet(int d, std::map<int, double> x);

    std::vector<int> indices() const;
    double threshold(int j) const { return thresholds.at(j); }

    // Scale the set: tA = {z : z_j > t*x_j}.
    RectSet scaled(double t) const;
};

RectSet intersect(const RectSet& a, const RectSet& b);
int cone_level(const RectSet& a);
bool contains(const RectSet& a, const std::vector<double>& z);
std::vector<double> order_statistics(const std::vector<double>& z);

// Descending thresholds x_(1) >= ... >= x_(|S|) of a rectangular set.
std::vector<double> descending_thresholds(const RectSet& a);

}  // namespace conetail
