#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "tsfrac/errors.hpp"

namespace tsfrac {

/// One building block of a time scale: a closed interval [lo, hi] with
/// lo < hi, or a single point (stored as lo == hi). Degenerate intervals
/// normalize to points at construction.
class Segment {
public:
    static Segment interval(double lo, double hi) {
        if (!std::isfinite(lo) || !std::isfinite(hi))
            throw InvalidSegment("interval endpoints must be finite");
        if (lo > hi)
            throw InvalidSegment("interval requires lo <= hi, got [" +
                                 std::to_string(lo) + ", " + std::to_string(hi) + "]");
        return Segment(lo, hi);
    }

    static Segment point(double t) {
        if (!std::isfinite(t)) throw InvalidSegment("point must be finite");
        return Segment(t, t);
    }

    double lo() const noexcept { return lo_; }
    double hi() const noexcept { return hi_; }
    bool is_point() const noexcept { return lo_ == hi_; }
    bool contains(double t) const noexcept { return lo_ <= t && t <= hi_; }

    friend bool operator==(const Segment&, const Segment&) = default;

private:
    Segment(double lo, double hi) : lo_(lo), hi_(hi) {}
    double lo_;
    double hi_;
};

/// Classification of a scale point by its jump operators.
/// right scattered <=> sigma(t) > t, left scattered <=> rho(t) < t;
/// the complementary label on each side is "dense".
struct PointClass {
    bool right_scattered = false;
    bool left_scattered = false;

    bool right_dense() const noexcept { return !right_scattered; }
    bool left_dense() const noexcept { return !left_scattered; }
    bool isolated() const noexcept { return right_scattered && left_scattered; }
    bool dense() const noexcept { return !right_scattered && !left_scattered; }
};

/// A bounded time scale: a finite union of closed intervals and isolated
/// points, kept in canonical form (sorted, disjoint, touching pieces merged).
///
/// The closed-form representation makes sigma, rho and graininess exact:
/// membership and point classification are plain endpoint comparisons with
/// no floating tolerance anywhere.
class TimeScale {
public:
    explicit TimeScale(std::vector<Segment> raw) : segments_(canonicalize(std::move(raw))) {}

    static TimeScale interval(double lo, double hi) {
        return TimeScale({Segment::interval(lo, hi)});
    }

    static TimeScale points(std::vector<double> ts) {
        std::vector<Segment> raw;
        raw.reserve(ts.size());
        for (double t : ts) raw.push_back(Segment::point(t));
        return TimeScale(std::move(raw));
    }

    /// Sort, merge and de-duplicate a raw segment soup. Set-equal to the
    /// union of the inputs; idempotent.
    static std::vector<Segment> canonicalize(std::vector<Segment> raw) {
        if (raw.empty()) throw EmptyScale("a time scale needs at least one segment");
        std::sort(raw.begin(), raw.end(), [](const Segment& a, const Segment& b) {
            return a.lo() < b.lo() || (a.lo() == b.lo() && a.hi() < b.hi());
        });
        std::vector<Segment> out;
        double lo = raw.front().lo();
        double hi = raw.front().hi();
        for (std::size_t i = 1; i < raw.size(); ++i) {
            if (raw[i].lo() <= hi) {
                hi = std::max(hi, raw[i].hi());
            } else {
                out.push_back(lo == hi ? Segment::point(lo) : Segment::interval(lo, hi));
                lo = raw[i].lo();
                hi = raw[i].hi();
            }
        }
        out.push_back(lo == hi ? Segment::point(lo) : Segment::interval(lo, hi));
        return out;
    }

    const std::vector<Segment>& segments() const noexcept { return segments_; }
    double min() const noexcept { return segments_.front().lo(); }
    double max() const noexcept { return segments_.back().hi(); }

    bool contains(double t) const noexcept {
        auto idx = segment_index(t);
        return idx != npos;
    }

    /// Index of the segment containing t, or npos.
    static constexpr std::size_t npos = static_cast<std::size_t>(-1);
    std::size_t segment_index(double t) const noexcept {
        // first segment with lo > t, then step back
        auto it = std::upper_bound(segments_.begin(), segments_.end(), t,
                                   [](double v, const Segment& s) { return v < s.lo(); });
        if (it == segments_.begin()) return npos;
        --it;
        return it->contains(t) ? static_cast<std::size_t>(it - segments_.begin()) : npos;
    }

    /// Forward jump operator: inf{s in T : s > t}, with sigma(max) = max.
    double sigma(double t) const {
        std::size_t i = require_member(t, "sigma");
        if (t < segments_[i].hi()) return t;  // right-dense inside an interval
        if (i + 1 < segments_.size()) return segments_[i + 1].lo();
        return t;  // t is the maximum
    }

    /// Backward jump operator: sup{s in T : s < t}, with rho(min) = min.
    double rho(double t) const {
        std::size_t i = require_member(t, "rho");
        if (t > segments_[i].lo()) return t;  // left-dense inside an interval
        if (i > 0) return segments_[i - 1].hi();
        return t;  // t is the minimum
    }

    /// Graininess mu(t) = sigma(t) - t; zero exactly at right-dense points.
    double graininess(double t) const { return sigma(t) - t; }

    PointClass classify(double t) const {
        std::size_t i = require_member(t, "classify");
        PointClass pc;
        pc.right_scattered = (t == segments_[i].hi()) && (i + 1 < segments_.size());
        pc.left_scattered = (t == segments_[i].lo()) && (i > 0);
        return pc;
    }

    /// T^kappa: drop the maximum when it is left-scattered, otherwise T.
    TimeScale kappa() const {
        if (!max_left_scattered()) return *this;
        std::vector<Segment> segs(segments_.begin(), segments_.end() - 1);
        return TimeScale(std::move(segs));
    }

    bool max_left_scattered() const noexcept {
        return segments_.size() > 1 && segments_.back().is_point();
    }

    bool in_kappa(double t) const {
        require_member(t, "in_kappa");
        return !(t == max() && max_left_scattered());
    }

    /// True when [a, b] lies inside one continuous interval piece of T.
    bool continuous_on(double a, double b) const {
        std::size_t i = segment_index(a);
        return i != npos && !segments_[i].is_point() && segments_[i].contains(b) && a <= b;
    }

    /// Intersection with [lo, hi]; throws EmptyScale when nothing remains.
    TimeScale restrict(double lo, double hi) const {
        if (lo > hi) throw BadRange("restrict: lo > hi");
        std::vector<Segment> out;
        for (const Segment& s : segments_) {
            double a = std::max(lo, s.lo());
            double b = std::min(hi, s.hi());
            if (a > b) continue;
            out.push_back(a == b ? Segment::point(a) : Segment::interval(a, b));
        }
        if (out.empty())
            throw EmptyScale("restrict: [" + std::to_string(lo) + ", " + std::to_string(hi) +
                             "] does not meet the scale");
        return TimeScale(std::move(out));
    }

    friend bool operator==(const TimeScale&, const TimeScale&) = default;

private:
    std::size_t require_member(double t, const char* op) const {
        std::size_t i = segment_index(t);
        if (i == npos)
            throw NotInScale(std::string(op) + ": t = " + std::to_string(t) +
                             " is not in the scale");
        return i;
    }

    std::vector<Segment> segments_;
};

}  // namespace tsfrac
