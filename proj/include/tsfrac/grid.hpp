#pragma once

#include <cmath>
#include <concepts>
#include <cstddef>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "tsfrac/errors.hpp"
#include "tsfrac/expr.hpp"
#include "tsfrac/timescale.hpp"

namespace tsfrac {

/// Computational grid aligned with a time scale.
///
/// Every isolated point and every interval endpoint of the scale is a node;
/// interval interiors are subdivided uniformly so consecutive nodes are at
/// most `step` apart. Cells between consecutive nodes are either "dense"
/// (both ends inside the same interval) or "jump" (the left end is
/// right-scattered, so the cell spans a gap of the scale with graininess
/// equal to the node spacing).
class Grid {
public:
    Grid(TimeScale scale, double step) : scale_(std::move(scale)), step_(step) {
        if (!(step > 0.0)) throw BadRange("grid step must be positive");
        for (const Segment& seg : scale_.segments()) {
            if (seg.is_point()) {
                nodes_.push_back(seg.lo());
                continue;
            }
            const double len = seg.hi() - seg.lo();
            const auto cells = static_cast<std::size_t>(
                std::max(1.0, std::ceil(len / step - 1e-9)));
            for (std::size_t k = 0; k <= cells; ++k) {
                double t = (k == cells) ? seg.hi() : seg.lo() + len * double(k) / double(cells);
                nodes_.push_back(t);
            }
        }
        build_cells();
    }

    /// Grid over `scale` with an explicit node set (used for coarsened and
    /// kappa-restricted grids). Nodes must be strictly increasing, lie in
    /// the scale, and include every isolated point and interval endpoint.
    Grid(TimeScale scale, std::vector<double> nodes, double step)
        : scale_(std::move(scale)), nodes_(std::move(nodes)), step_(step) {
        if (nodes_.empty()) throw EmptyScale("grid needs at least one node");
        for (std::size_t i = 0; i < nodes_.size(); ++i) {
            if (!scale_.contains(nodes_[i]))
                throw NotInScale("grid node " + std::to_string(nodes_[i]));
            if (i > 0 && nodes_[i] <= nodes_[i - 1])
                throw BadRange("grid nodes must be strictly increasing");
        }
        for (const Segment& seg : scale_.segments()) {
            if (!has_node(seg.lo()) || !has_node(seg.hi()))
                throw NotInScale("segment endpoints must be grid nodes");
        }
        build_cells();
    }

    const TimeScale& scale() const noexcept { return scale_; }
    const std::vector<double>& nodes() const noexcept { return nodes_; }
    double step() const noexcept { return step_; }
    std::size_t size() const noexcept { return nodes_.size(); }
    double node(std::size_t i) const { return nodes_[i]; }

    /// True when the cell [node i, node i+1] crosses a gap of the scale.
    bool cell_is_jump(std::size_t i) const { return cell_jump_[i]; }

    bool has_node(double t) const { return try_index_of(t).first; }

    std::pair<bool, std::size_t> try_index_of(double t) const {
        auto it = std::lower_bound(nodes_.begin(), nodes_.end(), t);
        if (it == nodes_.end() || *it != t) return {false, 0};
        return {true, static_cast<std::size_t>(it - nodes_.begin())};
    }

    std::size_t index_of(double t) const {
        auto [ok, idx] = try_index_of(t);
        if (!ok)
            throw NotInScale("t = " + std::to_string(t) + " is not a grid node");
        return idx;
    }

    /// Nodes restricted to T^kappa (drops the last node when the scale's
    /// maximum is left-scattered).
    std::size_t kappa_size() const {
        return scale_.max_left_scattered() ? nodes_.size() - 1 : nodes_.size();
    }

private:
    void build_cells() {
        cell_jump_.resize(nodes_.empty() ? 0 : nodes_.size() - 1);
        for (std::size_t i = 0; i + 1 < nodes_.size(); ++i)
            cell_jump_[i] = scale_.sigma(nodes_[i]) > nodes_[i];
    }

    TimeScale scale_;
    std::vector<double> nodes_;
    double step_;
    std::vector<bool> cell_jump_;
};

using GridPtr = std::shared_ptr<const Grid>;

/// A function sampled on a grid; the unit of data every operator consumes
/// and produces. Immutable by convention once built.
struct GridFunction {
    GridPtr grid;
    std::vector<double> values;

    GridFunction() = default;
    GridFunction(GridPtr g, std::vector<double> v) : grid(std::move(g)), values(std::move(v)) {
        if (!grid || values.size() != grid->size())
            throw BadRange("grid/value length mismatch");
    }

    double value_at(double t) const { return values[grid->index_of(t)]; }
    std::size_t size() const noexcept { return values.size(); }
};

/// Sample a callable f(t) on a fresh grid over the scale.
template <typename F>
    requires std::invocable<F&, double>
GridFunction sample(const TimeScale& scale, F&& f, double step) {
    auto grid = std::make_shared<Grid>(scale, step);
    std::vector<double> values;
    values.reserve(grid->size());
    for (double t : grid->nodes()) values.push_back(f(t));
    return GridFunction(std::move(grid), std::move(values));
}

/// Sample a callable on an existing grid.
template <typename F>
GridFunction sample_on(GridPtr grid, F&& f) {
    std::vector<double> values;
    values.reserve(grid->size());
    for (double t : grid->nodes()) values.push_back(f(t));
    return GridFunction(std::move(grid), std::move(values));
}

/// Sample an expression of t (y is bound to 0).
inline GridFunction sample(const TimeScale& scale, const Expr& e, double step) {
    return sample(scale, [&](double t) { return e.eval(t, 0.0); }, step);
}

/// Sub-function on the nodes in [lo, hi]; lo and hi must be grid nodes.
/// Returns the input unchanged when the range covers the whole grid.
inline GridFunction restrict_range(const GridFunction& f, double lo, double hi) {
    const Grid& g = *f.grid;
    if (lo > hi) throw BadRange("restriction bounds out of order");
    const std::size_t i0 = g.index_of(lo);
    const std::size_t i1 = g.index_of(hi);
    if (i0 == 0 && i1 + 1 == g.size()) return f;
    std::vector<double> nodes(g.nodes().begin() + i0, g.nodes().begin() + i1 + 1);
    std::vector<double> values(f.values.begin() + i0, f.values.begin() + i1 + 1);
    auto sub = std::make_shared<Grid>(g.scale().restrict(lo, hi), std::move(nodes), g.step());
    return GridFunction(std::move(sub), std::move(values));
}

/// Half-resolution copy: within each dense run of nodes every second node is
/// kept (endpoints always survive), isolated points are kept as-is. Used for
/// refinement studies that only have sampled data to work with.
inline GridFunction coarsen(const GridFunction& f) {
    const Grid& g = *f.grid;
    const std::size_t n = g.size();
    std::vector<double> nodes;
    std::vector<double> values;
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        while (j + 1 < n && !g.cell_is_jump(j)) ++j;
        for (std::size_t k = i; k < j; k += 2) {
            nodes.push_back(g.node(k));
            values.push_back(f.values[k]);
        }
        nodes.push_back(g.node(j));
        values.push_back(f.values[j]);
        i = j + 1;
    }
    auto cg = std::make_shared<Grid>(g.scale(), std::move(nodes), 2.0 * g.step());
    return GridFunction(std::move(cg), std::move(values));
}

}  // namespace tsfrac
