#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include "tsfrac/errors.hpp"
#include "tsfrac/grid.hpp"

namespace tsfrac {

/// Hilger (delta) derivative of a sampled function, returned on the
/// kappa-restricted node set of the same grid.
///
/// At a right-scattered node the derivative is the jump quotient
/// (f(sigma(t)) - f(t)) / mu(t), which is exact. On dense parts we use
/// difference quotients: centered where both neighbours lie in the same
/// interval, one-sided at interval edges. The scale's maximum is dropped
/// when left-scattered (it lies outside T^kappa).
inline GridFunction delta_derivative(const GridFunction& f) {
    const Grid& g = *f.grid;
    const std::size_t n = g.size();
    if (n < 2)
        throw OutsideKappa("delta derivative needs at least two nodes");
    const std::size_t m = g.kappa_size();

    std::vector<double> out(m);
    for (std::size_t i = 0; i < m; ++i) {
        const double t = g.node(i);
        if (i + 1 < n && g.cell_is_jump(i)) {
            out[i] = (f.values[i + 1] - f.values[i]) / (g.node(i + 1) - t);
            continue;
        }
        const bool left_dense = i > 0 && !g.cell_is_jump(i - 1);
        const bool right_dense = i + 1 < n && !g.cell_is_jump(i);
        if (left_dense && right_dense) {
            out[i] = (f.values[i + 1] - f.values[i - 1]) / (g.node(i + 1) - g.node(i - 1));
        } else if (right_dense) {
            out[i] = (f.values[i + 1] - f.values[i]) / (g.node(i + 1) - t);
        } else if (left_dense) {
            out[i] = (f.values[i] - f.values[i - 1]) / (t - g.node(i - 1));
        } else {
            // Isolated point that is not right-scattered: only possible for
            // the scale's maximum, which kappa_size() already removed.
            throw OutsideKappa("node has no delta derivative");
        }
    }

    std::vector<double> knodes(g.nodes().begin(), g.nodes().begin() + m);
    auto kgrid = std::make_shared<Grid>(g.scale().kappa(), std::move(knodes), g.step());
    return GridFunction(std::move(kgrid), std::move(out));
}

/// Delta integral of f over [lo, hi], both grid nodes.
///
/// Jump cells contribute mu(t) * f(t) exactly; dense cells are integrated
/// with the trapezoid rule.
inline double delta_integral(const GridFunction& f, double lo, double hi) {
    const Grid& g = *f.grid;
    if (lo > hi) throw BadRange("integration bounds out of order");
    const std::size_t i0 = g.index_of(lo);
    const std::size_t i1 = g.index_of(hi);
    double acc = 0.0;
    for (std::size_t i = i0; i < i1; ++i) {
        const double w = g.node(i + 1) - g.node(i);
        if (g.cell_is_jump(i))
            acc += w * f.values[i];
        else
            acc += 0.5 * w * (f.values[i] + f.values[i + 1]);
    }
    return acc;
}

/// Delta integral over the full grid extent.
inline double delta_integral(const GridFunction& f) {
    const Grid& g = *f.grid;
    return delta_integral(f, g.node(0), g.node(g.size() - 1));
}

struct DeltaRiemannComparison {
    double delta_value;
    double extension_value;
    bool holds;  // delta_value <= extension_value (within tolerance)
};

/// Compare the delta integral of an increasing sampled function over [a, b]
/// with the Riemann integral over the real interval [a, b] of its step
/// extension F (constant at the left sample across each gap of the scale).
/// For increasing f the delta integral never exceeds the extension's
/// integral; `holds` reports whether that ordering came out on this grid.
///
/// Throws NotIncreasing when the samples decrease anywhere in [a, b]; ties
/// are allowed.
inline DeltaRiemannComparison compare_delta_riemann(const GridFunction& f, double a, double b) {
    const Grid& g = *f.grid;
    if (a > b) throw BadRange("comparison bounds out of order");
    const std::size_t i0 = g.index_of(a);
    const std::size_t i1 = g.index_of(b);
    for (std::size_t i = i0; i < i1; ++i) {
        if (f.values[i + 1] < f.values[i])
            throw NotIncreasing("samples decrease between t = " +
                                std::to_string(g.node(i)) + " and t = " +
                                std::to_string(g.node(i + 1)));
    }

    const double dv = delta_integral(f, a, b);

    // Independent walk for the extension: constant value across gaps,
    // trapezoid where the extension coincides with the sampled function.
    double ev = 0.0;
    for (std::size_t i = i0; i < i1; ++i) {
        const double w = g.node(i + 1) - g.node(i);
        if (g.cell_is_jump(i))
            ev += w * f.values[i];
        else
            ev += 0.5 * w * (f.values[i] + f.values[i + 1]);
    }

    const double tol = 1e-9 + 1e-9 * std::fabs(ev);
    return {dv, ev, dv <= ev + tol};
}

}  // namespace tsfrac
