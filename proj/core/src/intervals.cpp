#include "fracperim/intervals.hpp"

#include <algorithm>
#include <cmath>

namespace fracperim {

IntervalSet::IntervalSet(double floor, std::vector<Interval> parts) : floor_(floor), parts_(std::move(parts)) {
    normalize();
}

IntervalSet IntervalSet::all(double floor) { return IntervalSet(floor, {{floor, kInf}}); }

void IntervalSet::normalize() {
    std::vector<Interval> clipped;
    clipped.reserve(parts_.size());
    for (Interval p : parts_) {
        p.lo = std::max(p.lo, floor_);
        if (p.hi > p.lo) clipped.push_back(p);
    }
    std::sort(clipped.begin(), clipped.end(), [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
    parts_.clear();
    for (const Interval& p : clipped) {
        if (!parts_.empty() && p.lo <= parts_.back().hi)
            parts_.back().hi = std::max(parts_.back().hi, p.hi);
        else
            parts_.push_back(p);
    }
}

bool IntervalSet::contains(double t) const {
    for (const Interval& p : parts_)
        if (t >= p.lo && t < p.hi) return true;
    return false;
}

IntervalSet IntervalSet::complement() const {
    IntervalSet r(floor_);
    double cursor = floor_;
    for (const Interval& p : parts_) {
        if (p.lo > cursor) r.parts_.push_back({cursor, p.lo});
        cursor = p.hi;
    }
    if (cursor < kInf) r.parts_.push_back({cursor, kInf});
    return r;
}

IntervalSet IntervalSet::unite(const IntervalSet& a, const IntervalSet& b) {
    std::vector<Interval> all = a.parts_;
    all.insert(all.end(), b.parts_.begin(), b.parts_.end());
    return IntervalSet(std::min(a.floor_, b.floor_), std::move(all));
}

IntervalSet IntervalSet::intersect(const IntervalSet& a, const IntervalSet& b) {
    IntervalSet r(std::max(a.floor_, b.floor_));
    std::size_t i = 0, j = 0;
    while (i < a.parts_.size() && j < b.parts_.size()) {
        const double lo = std::max(a.parts_[i].lo, b.parts_[j].lo);
        const double hi = std::min(a.parts_[i].hi, b.parts_[j].hi);
        if (hi > lo) r.parts_.push_back({lo, hi});
        if (a.parts_[i].hi < b.parts_[j].hi)
            ++i;
        else
            ++j;
    }
    return r;
}

IntervalSet IntervalSet::scaled(double factor) const {
    IntervalSet r(floor_ * factor);
    for (const Interval& p : parts_) r.parts_.push_back({p.lo * factor, p.hi * factor});
    return r;
}

IntervalSet IntervalSet::from_segments(const std::vector<double>& breaks, const std::vector<bool>& inside) {
    IntervalSet r(breaks.empty() ? 0.0 : breaks.front());
    for (std::size_t k = 0; k < breaks.size(); ++k) {
        if (!inside[k]) continue;
        const double hi = (k + 1 < breaks.size()) ? breaks[k + 1] : kInf;
        if (!r.parts_.empty() && r.parts_.back().hi == breaks[k])
            r.parts_.back().hi = hi;
        else if (hi > breaks[k])
            r.parts_.push_back({breaks[k], hi});
    }
    return r;
}

double radial_weight(double a, double b, double s) {
    if (!(b > a)) return 0.0;
    if (b == kInf) return std::pow(a, -s) / s;
    // b^{-s} (exp(s log(b/a)) - 1) / s keeps precision for small s.
    return std::pow(b, -s) * std::expm1(s * std::log(b / a)) / s;
}

double radial_mass(const IntervalSet& set, double rho, double s) {
    double acc = 0.0;
    for (const Interval& p : set.parts()) {
        if (p.hi <= rho) continue;
        acc += radial_weight(std::max(p.lo, rho), p.hi, s);
    }
    return acc;
}

}  // namespace fracperim
