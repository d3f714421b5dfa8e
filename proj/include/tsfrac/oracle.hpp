#pragma once

#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "tsfrac/errors.hpp"

namespace tsfrac::oracle {

// Reference implementations used to judge the main operators. Written
// straight from the definitions with naive loops and the standard library's
// gamma, sharing no code with the rest of the library, so agreement between
// the two is evidence rather than tautology.

/// Fractional sum on a purely discrete scale given as an explicit point
/// list: sum over s in [a, t) of (next(s) - s) * (t - s)^(alpha-1) * h(s),
/// divided by Gamma(alpha).
inline double brute_force_frac_integral(const std::vector<double>& points,
                                        const std::vector<double>& values, double a,
                                        double alpha, double t) {
    if (points.size() < 1 || points.size() != values.size())
        throw BadRange("points and values must be equal-length and nonempty");
    for (std::size_t i = 0; i + 1 < points.size(); ++i)
        if (!(points[i] < points[i + 1]))
            throw BadRange("points must be strictly increasing");

    std::size_t ia = points.size();
    std::size_t it = points.size();
    for (std::size_t i = 0; i < points.size(); ++i) {
        if (points[i] == a) ia = i;
        if (points[i] == t) it = i;
    }
    if (ia == points.size()) throw NotInScale("a = " + std::to_string(a));
    if (it == points.size()) throw NotInScale("t = " + std::to_string(t));
    if (it < ia) throw BadRange("t lies before a");

    double sum = 0.0;
    for (std::size_t i = ia; i < it; ++i) {
        const double mu = points[i + 1] - points[i];
        sum += mu * std::pow(t - points[i], alpha - 1.0) * values[i] / std::tgamma(alpha);
    }
    return sum;
}

/// Closed-form fractional integral of (s - a)^p on the real line:
/// Gamma(p+1) / Gamma(p+alpha+1) * (t - a)^(p+alpha).
inline double classical_rl_power(double alpha, double p, double t, double a) {
    if (p <= -1.0) throw DomainError("power p must exceed -1");
    return std::tgamma(p + 1.0) / std::tgamma(p + alpha + 1.0) *
           std::pow(t - a, p + alpha);
}

}  // namespace tsfrac::oracle
