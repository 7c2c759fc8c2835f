#pragma once

#include <cmath>
#include <numbers>
#include <span>
#include <vector>

#include "seeds/core_types.hpp"
#include "seeds/error.hpp"

namespace seeds {

inline constexpr double inv_sqrt_2pi = 0.39894228040143267794;

// Integral of K^2 for the Gaussian kernel, 1 / (2 sqrt(pi)).
inline constexpr double gaussian_nu2 = 0.28209479177387814347;

inline constexpr double default_undersmoothing_exponent = 0.3;

inline double gaussian_kernel(double u) noexcept { return inv_sqrt_2pi * std::exp(-0.5 * u * u); }

// K_h(x) = K(x / h) / h
inline double scaled_kernel(double x, double h) noexcept { return gaussian_kernel(x / h) / h; }

inline std::vector<double> kernel_weights(std::span<const double> anchors, double t, double h)
{
    if (!(h > 0.0) || !std::isfinite(h)) {
        throw Error(ErrorCode::NonpositiveBandwidth, "bandwidth must be positive and finite");
    }
    std::vector<double> w(anchors.size());
    for (std::size_t i = 0; i < anchors.size(); ++i) w[i] = scaled_kernel(anchors[i] - t, h);
    return w;
}

struct Bandwidths {
    double labeled_left = 0.0;     // h_l
    double labeled_right = 0.0;    // h_u
    double unlabeled_left = 0.0;   // h_L
    double unlabeled_right = 0.0;  // h_U

    bool valid() const noexcept
    {
        auto ok = [](double h) { return h > 0.0 && std::isfinite(h); };
        return ok(labeled_left) && ok(labeled_right) && ok(unlabeled_left) && ok(unlabeled_right);
    }
};

// h = 1.06 min(sd, IQR / 1.34) m^(-kappa), with kappa strictly inside (1/5, 1/2)
// so that the kernel estimators are undersmoothed.
inline double rule_of_thumb_bandwidth(std::span<const double> anchors, long m,
                                      double kappa = default_undersmoothing_exponent)
{
    if (m < 2) throw Error(ErrorCode::InvalidArgument, "bandwidth sample size must be >= 2");
    if (!(kappa > 0.2 && kappa < 0.5)) {
        throw Error(ErrorCode::InvalidArgument, "undersmoothing exponent must lie in (0.2, 0.5)");
    }
    if (anchors.size() < 2) throw Error(ErrorCode::DegenerateSample, "need at least two anchors");
    double mean = 0.0;
    for (double a : anchors) mean += a;
    mean /= static_cast<double>(anchors.size());
    double ss = 0.0;
    for (double a : anchors) ss += (a - mean) * (a - mean);
    const double sd = std::sqrt(ss / static_cast<double>(anchors.size() - 1));
    if (!(sd > 0.0)) throw Error(ErrorCode::DegenerateSample, "anchors are constant");

    std::vector<double> sorted(anchors.begin(), anchors.end());
    std::sort(sorted.begin(), sorted.end());
    const double iqr = quantile_sorted(sorted, 0.75) - quantile_sorted(sorted, 0.25);
    const double spread = iqr > 0.0 ? std::min(sd, iqr / 1.34) : sd;
    return 1.06 * spread * std::pow(static_cast<double>(m), -kappa);
}

// Rule-of-thumb bandwidths: L anchors for the left label, U anchors for the
// right label; labeled sets scale with n, unlabeled with N.
inline Bandwidths default_bandwidths(const Dataset& data, double kappa = default_undersmoothing_exponent)
{
    auto anchors = [](const std::vector<SubjectRecord>& rs, bool left) {
        std::vector<double> a;
        a.reserve(rs.size());
        for (const auto& r : rs) a.push_back(left ? r.left : r.right);
        return a;
    };
    Bandwidths bw;
    const auto n = static_cast<long>(data.n());
    bw.labeled_left = rule_of_thumb_bandwidth(anchors(data.labeled, true), n, kappa);
    bw.labeled_right = rule_of_thumb_bandwidth(anchors(data.labeled, false), n, kappa);
    if (data.N() >= 2) {
        const auto N = static_cast<long>(data.N());
        bw.unlabeled_left = rule_of_thumb_bandwidth(anchors(data.unlabeled, true), N, kappa);
        bw.unlabeled_right = rule_of_thumb_bandwidth(anchors(data.unlabeled, false), N, kappa);
    }
    return bw;
}

} // namespace seeds
