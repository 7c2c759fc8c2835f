#pragma once

// Observation model for doubly-censored event times.
//
// A subject with latent event time T is monitored on the window [L, U]. The
// observed time is X = max(L, min(T, U)) together with a status code telling
// whether T fell inside the window, beyond U, or before L. Surrogate event
// times are censored by the same window.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "seeds/error.hpp"

namespace seeds {

enum class CensorCode : int {
    Exact = 1,
    RightCensored = 2,
    LeftCensored = 3,
};

inline CensorCode censor_code_from_int(int value)
{
    switch (value) {
    case 1: return CensorCode::Exact;
    case 2: return CensorCode::RightCensored;
    case 3: return CensorCode::LeftCensored;
    default:
        throw Error(ErrorCode::InvalidArgument,
                    "censoring status must be 1, 2 or 3, got " + std::to_string(value));
    }
}

constexpr int to_int(CensorCode code) noexcept { return static_cast<int>(code); }

// Status of an event time relative to the window [left, right].
constexpr CensorCode classify(double event_time, double left, double right) noexcept
{
    if (event_time < left) return CensorCode::LeftCensored;
    if (event_time > right) return CensorCode::RightCensored;
    return CensorCode::Exact;
}

constexpr double censor_time(double event_time, double left, double right) noexcept
{
    return std::max(left, std::min(event_time, right));
}

struct SubjectRecord {
    std::string id;
    double left = 0.0;   // L
    double right = 0.0;  // U
    std::optional<double> observed_time;  // X, labeled records only
    std::optional<CensorCode> status;     // delta, labeled records only
    std::vector<double> surrogate_times;
    std::vector<CensorCode> surrogate_statuses;
    std::vector<double> baseline;
    std::vector<double> process_events;  // sorted, inside (L, U]

    bool labeled() const noexcept { return observed_time.has_value() && status.has_value(); }
    std::size_t q() const noexcept { return surrogate_times.size(); }
    std::size_t p1() const noexcept { return baseline.size(); }

    bool operator==(const SubjectRecord&) const = default;
};

// Number of process events in (L, min(max(t, L), U)].
inline double cumulative_covariate(const SubjectRecord& record, double t)
{
    const double upper = std::min(std::max(t, record.left), record.right);
    if (upper <= record.left) return 0.0;
    const auto& ev = record.process_events;
    const auto lo = std::upper_bound(ev.begin(), ev.end(), record.left);
    const auto hi = std::upper_bound(ev.begin(), ev.end(), upper);
    return static_cast<double>(hi > lo ? hi - lo : 0);
}

struct CurrentStatusLabel {
    double monitor_time;
    int indicator;

    bool operator==(const CurrentStatusLabel&) const = default;
};

// Labels derived from a labeled record: the exact-time label and the two
// current status labels (L, I(T >= L)) and (U, I(T > U)).
struct DerivedLabels {
    double left;
    double right;
    double observed;
    CurrentStatusLabel left_label;
    CurrentStatusLabel right_label;

    // I(X >= t > L)
    int exact_indicator(double t) const noexcept { return (observed >= t && t > left) ? 1 : 0; }
    // I(U >= t > L)
    int at_risk(double t) const noexcept { return (right >= t && t > left) ? 1 : 0; }

    bool operator==(const DerivedLabels&) const = default;
};

inline DerivedLabels derive_labels(const SubjectRecord& record)
{
    if (!record.labeled()) {
        throw Error(ErrorCode::MissingLabel, "record '" + record.id + "' has no (X, delta)");
    }
    const CensorCode status = *record.status;
    return DerivedLabels{
        record.left,
        record.right,
        *record.observed_time,
        CurrentStatusLabel{record.left, status != CensorCode::LeftCensored ? 1 : 0},
        CurrentStatusLabel{record.right, status == CensorCode::RightCensored ? 1 : 0},
    };
}

enum class SurrogateCheck {
    Bounds,     // L <= X*_k <= U only
    Coherent,   // plus X*_k consistent with delta*_k
};

namespace detail {

inline bool coherent(double x, CensorCode code, double left, double right)
{
    switch (code) {
    case CensorCode::Exact: return left <= x && x <= right;
    case CensorCode::RightCensored: return x == right;
    case CensorCode::LeftCensored: return x == left;
    }
    return false;
}

inline void fail_rule(const SubjectRecord& r, const std::string& rule)
{
    throw InvariantFailure(rule, "record '" + r.id + "': " + rule);
}

} // namespace detail

// Throws InvariantViolation naming the first broken rule.
inline void validate(const SubjectRecord& r, SurrogateCheck surrogates = SurrogateCheck::Coherent)
{
    if (!std::isfinite(r.left) || !std::isfinite(r.right)) detail::fail_rule(r, "finite L,U");
    if (!(r.left < r.right)) detail::fail_rule(r, "L<U");
    if (r.observed_time.has_value() != r.status.has_value()) detail::fail_rule(r, "X and delta together");
    if (r.labeled() && !detail::coherent(*r.observed_time, *r.status, r.left, r.right)) {
        detail::fail_rule(r, "X coherent with delta");
    }
    if (r.surrogate_times.size() != r.surrogate_statuses.size()) detail::fail_rule(r, "surrogate dims");
    for (std::size_t k = 0; k < r.q(); ++k) {
        const double x = r.surrogate_times[k];
        if (!(r.left <= x && x <= r.right)) detail::fail_rule(r, "L<=Xstar<=U");
        if (surrogates == SurrogateCheck::Coherent &&
            !detail::coherent(x, r.surrogate_statuses[k], r.left, r.right)) {
            detail::fail_rule(r, "Xstar coherent with deltastar");
        }
    }
    for (double z : r.baseline) {
        if (!std::isfinite(z)) detail::fail_rule(r, "finite Z");
    }
    const auto& ev = r.process_events;
    for (std::size_t i = 0; i < ev.size(); ++i) {
        if (!(ev[i] > r.left && ev[i] <= r.right)) detail::fail_rule(r, "events in (L,U]");
        if (i > 0 && !(ev[i] > ev[i - 1])) detail::fail_rule(r, "events sorted");
    }
}

struct Dataset {
    std::vector<SubjectRecord> labeled;
    std::vector<SubjectRecord> unlabeled;

    std::size_t n() const noexcept { return labeled.size(); }
    std::size_t N() const noexcept { return unlabeled.size(); }
    std::size_t q() const noexcept { return labeled.empty() ? 0 : labeled.front().q(); }
    std::size_t p1() const noexcept { return labeled.empty() ? 0 : labeled.front().p1(); }
    bool has_process() const noexcept
    {
        auto any = [](const std::vector<SubjectRecord>& rs) {
            return std::any_of(rs.begin(), rs.end(), [](const auto& r) { return !r.process_events.empty(); });
        };
        return any(labeled) || any(unlabeled);
    }

    bool operator==(const Dataset&) const = default;
};

inline void validate(const Dataset& data, SurrogateCheck surrogates = SurrogateCheck::Coherent)
{
    if (data.labeled.empty()) throw Error(ErrorCode::EmptyData, "dataset has no labeled records");
    const std::size_t q = data.q();
    const std::size_t p1 = data.p1();
    for (const auto& r : data.labeled) {
        if (!r.labeled()) detail::fail_rule(r, "labeled record carries X, delta");
        if (r.q() != q || r.p1() != p1) throw Error(ErrorCode::DimensionMismatch, "record '" + r.id + "'");
        validate(r, surrogates);
    }
    for (const auto& r : data.unlabeled) {
        if (r.observed_time || r.status) detail::fail_rule(r, "unlabeled record carries no X, delta");
        if (r.q() != q || r.p1() != p1) throw Error(ErrorCode::DimensionMismatch, "record '" + r.id + "'");
        validate(r, surrogates);
    }
}

// Linear-interpolation quantile on sorted data, position k = 1 + (m - 1) p.
inline double quantile_sorted(std::span<const double> sorted, double p)
{
    if (sorted.empty()) throw Error(ErrorCode::EmptyData, "quantile of empty sample");
    const double pos = p * static_cast<double>(sorted.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(pos));
    const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
    const double frac = pos - static_cast<double>(lo);
    return sorted[lo] + frac * (sorted[hi] - sorted[lo]);
}

inline double quantile(std::vector<double> values, double p)
{
    std::sort(values.begin(), values.end());
    return quantile_sorted(values, p);
}

class TimeGrid {
public:
    TimeGrid() = default;

    explicit TimeGrid(std::vector<double> points) : points_(std::move(points))
    {
        for (std::size_t i = 1; i < points_.size(); ++i) {
            if (!(points_[i] > points_[i - 1])) {
                throw Error(ErrorCode::InvalidArgument, "time grid must be strictly increasing");
            }
        }
    }

    const std::vector<double>& points() const noexcept { return points_; }
    std::size_t size() const noexcept { return points_.size(); }
    double operator[](std::size_t i) const { return points_[i]; }

private:
    std::vector<double> points_;
};

// All X on labeled records plus L and U on every record.
inline std::vector<double> pooled_observed_times(const Dataset& data)
{
    std::vector<double> times;
    times.reserve(3 * data.n() + 2 * data.N());
    for (const auto& r : data.labeled) {
        if (r.observed_time) times.push_back(*r.observed_time);
        times.push_back(r.left);
        times.push_back(r.right);
    }
    for (const auto& r : data.unlabeled) {
        times.push_back(r.left);
        times.push_back(r.right);
    }
    return times;
}

inline TimeGrid build_time_grid(const Dataset& data, int n_points, double lo_quantile, double hi_quantile)
{
    if (n_points < 2) throw Error(ErrorCode::InvalidArgument, "grid needs at least 2 points");
    if (!(0.0 <= lo_quantile && lo_quantile < hi_quantile && hi_quantile <= 1.0)) {
        throw Error(ErrorCode::InvalidArgument, "grid quantiles must satisfy 0 <= lo < hi <= 1");
    }
    auto times = pooled_observed_times(data);
    if (times.empty()) throw Error(ErrorCode::EmptyData, "no observed times to build a grid");
    std::sort(times.begin(), times.end());
    const double lo = quantile_sorted(times, lo_quantile);
    const double hi = quantile_sorted(times, hi_quantile);
    if (!(hi > lo)) throw Error(ErrorCode::DegenerateSample, "grid quantiles coincide");
    std::vector<double> points(static_cast<std::size_t>(n_points));
    const double step = (hi - lo) / static_cast<double>(n_points - 1);
    for (int i = 0; i < n_points; ++i) points[static_cast<std::size_t>(i)] = lo + step * i;
    points.back() = hi;
    return TimeGrid(std::move(points));
}

} // namespace seeds
