#pragma once

#include <limits>
#include <vector>

namespace fracperim {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

struct Interval {
    double lo;
    double hi;  // may be +inf
};

// Sorted, disjoint, non-degenerate sub-intervals of [floor, +inf).
class IntervalSet {
public:
    IntervalSet() = default;
    explicit IntervalSet(double floor) : floor_(floor) {}
    IntervalSet(double floor, std::vector<Interval> parts);

    static IntervalSet all(double floor);
    static IntervalSet none(double floor) { return IntervalSet(floor); }

    double floor() const { return floor_; }
    const std::vector<Interval>& parts() const { return parts_; }
    bool empty() const { return parts_.empty(); }
    bool contains(double t) const;

    IntervalSet complement() const;
    static IntervalSet unite(const IntervalSet& a, const IntervalSet& b);
    static IntervalSet intersect(const IntervalSet& a, const IntervalSet& b);
    IntervalSet scaled(double factor) const;

    // Build from ordered breakpoints and a per-segment membership flag.
    // Segment k is [breaks[k], breaks[k+1]) with breaks.back() followed by +inf.
    static IntervalSet from_segments(const std::vector<double>& breaks, const std::vector<bool>& inside);

private:
    void normalize();
    double floor_ = 0.0;
    std::vector<Interval> parts_;
};

// Integral of t^{-1-s} over [a, b), for 0 < a <= b <= inf.
double radial_weight(double a, double b, double s);

// Integral over [rho, inf) of t^{-1-s} restricted to the set.
double radial_mass(const IntervalSet& set, double rho, double s);

}  // namespace fracperim
