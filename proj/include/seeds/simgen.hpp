#pragma once

// Data-generating mechanisms for the simulation settings, plus Monte Carlo
// oracles for the marginal survival function.

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "seeds/core_types.hpp"
#include "seeds/error.hpp"
#include "seeds/rng.hpp"

namespace seeds {

enum class SettingId { S1, S2, A1_1, A1_2, A2_1, A2_2, A3_1, A3_2 };

enum class SurvivalFamily { CoxWeibull, Logistic };

// Conditional law of T given the surrogate s and covariate z, with linear
// predictor eta = surrogate_coef * s + covariate_coef * z.
//   CoxWeibull: P(T >= t) = exp(-t^shape * exp(-eta) / divisor)
//   Logistic:   P(T >= t) = 1 / (1 + exp((t - intercept - eta) / spread))
struct SurvivalLaw {
    SurvivalFamily family = SurvivalFamily::CoxWeibull;
    double shape = 1.0;
    double divisor = 1.0;
    double intercept = 0.0;
    double spread = 1.0;
    double surrogate_coef = 0.0;
    double covariate_coef = 0.0;

    double predictor(double s, double z) const noexcept { return surrogate_coef * s + covariate_coef * z; }

    double survival(double t, double s, double z) const noexcept
    {
        const double eta = predictor(s, z);
        if (family == SurvivalFamily::CoxWeibull) {
            if (t <= 0.0) return 1.0;
            return std::exp(-std::pow(t, shape) * std::exp(-eta) / divisor);
        }
        return 1.0 / (1.0 + std::exp((t - intercept - eta) / spread));
    }

    // Inverse transform of the survival function at v in (0, 1).
    double sample(double v, double s, double z) const noexcept
    {
        const double eta = predictor(s, z);
        if (family == SurvivalFamily::CoxWeibull) {
            return std::pow(-divisor * std::log(v) * std::exp(eta), 1.0 / shape);
        }
        return intercept + eta + spread * std::log((1.0 - v) / v);
    }
};

struct SettingSpec {
    SettingId id = SettingId::S1;
    std::string name;
    double surrogate_lo = 0.0, surrogate_hi = 1.0;   // T* ~ U(lo, hi)
    std::optional<std::array<double, 2>> covariate;  // Z ~ N(mean, sd)
    SurvivalLaw survival;
    std::optional<double> process_rate;              // lambda(T) = rate * T
    double left_shape = 1.0, left_scale = 1.0;       // L ~ Weibull(shape, scale)
    double window_width = 1.0;                       // U = L + U(0, width)

    SettingSpec() = default;

    SettingSpec(SettingId id_, std::string name_, double s_lo, double s_hi,
                std::optional<std::array<double, 2>> cov, SurvivalLaw law, std::optional<double> rate,
                double l_shape, double l_scale, double width)
        : id(id_), name(std::move(name_)), surrogate_lo(s_lo), surrogate_hi(s_hi), covariate(cov), survival(law),
          process_rate(rate), left_shape(l_shape), left_scale(l_scale), window_width(width)
    {
        auto positive = [](double x) { return x > 0.0 && std::isfinite(x); };
        if (!(s_hi > s_lo)) throw Error(ErrorCode::ConfigError, name + ": surrogate range is empty");
        if (cov && !positive((*cov)[1])) throw Error(ErrorCode::ConfigError, name + ": covariate sd must be > 0");
        if (!positive(law.shape) || !positive(law.divisor) || !positive(law.spread)) {
            throw Error(ErrorCode::ConfigError, name + ": survival law parameters must be > 0");
        }
        if (!positive(l_shape) || !positive(l_scale)) {
            throw Error(ErrorCode::ConfigError, name + ": left censoring law parameters must be > 0");
        }
        if (!positive(width)) throw Error(ErrorCode::ConfigError, name + ": censoring window width must be > 0");
    }

    bool has_covariate() const noexcept { return covariate.has_value(); }
    bool has_process() const noexcept { return process_rate.has_value(); }
};

namespace detail {

inline SurvivalLaw cox(double shape, double divisor, double b_s, double b_z)
{
    SurvivalLaw law;
    law.family = SurvivalFamily::CoxWeibull;
    law.shape = shape;
    law.divisor = divisor;
    law.surrogate_coef = b_s;
    law.covariate_coef = b_z;
    return law;
}

inline SurvivalLaw logistic_law(double intercept, double b_s, double b_z, double spread)
{
    SurvivalLaw law;
    law.family = SurvivalFamily::Logistic;
    law.intercept = intercept;
    law.surrogate_coef = b_s;
    law.covariate_coef = b_z;
    law.spread = spread;
    return law;
}

} // namespace detail

inline SettingSpec setting(SettingId id)
{
    using detail::cox;
    using detail::logistic_law;
    const std::array<double, 2> z{5.0, 1.0};
    switch (id) {
    case SettingId::S1:
        return {id, "s1", 0.0, 0.5, z, cox(3.0, 0.6, 7.6, 0.15), 2.0, 1.38, 1.3, 3.3};
    case SettingId::S2:
        return {id, "s2", -1.0, 1.0, z, logistic_law(2.0, 0.95, 0.1, 0.33), 1.0, 2.1, 1.95, 3.0};
    case SettingId::A1_1:
        return {id, "a1.1", 0.0, 2.0 / 3.0, std::nullopt, cox(2.4, 0.3, 5.85, 0.0), std::nullopt, 1.05, 0.72, 1.6};
    case SettingId::A1_2:
        return {id, "a1.2", -1.0, 1.0, std::nullopt, logistic_law(2.0, 0.95, 0.0, 0.35), std::nullopt, 2.5, 2.45, 2.25};
    case SettingId::A2_1:
        return {id, "a2.1", 0.0, 2.0 / 3.0, z, cox(2.4, 0.15, 6.5, 0.4), std::nullopt, 0.98, 1.4, 3.0};
    case SettingId::A2_2:
        return {id, "a2.2", -1.0, 1.0, z, logistic_law(2.0, 0.95, 0.1, 0.33), std::nullopt, 2.1, 1.95, 3.0};
    case SettingId::A3_1:
        return {id, "a3.1", 0.0, 2.0 / 3.0, std::nullopt, cox(2.4, 0.3, 6.1, 0.0), 2.0, 1.04, 0.75, 1.4};
    case SettingId::A3_2:
        return {id, "a3.2", -1.0, 1.0, std::nullopt, logistic_law(3.0, 1.0, 0.0, 0.35), 1.0, 2.5, 2.45, 2.25};
    }
    throw Error(ErrorCode::ConfigError, "unknown setting");
}

inline constexpr std::array<SettingId, 8> all_settings{SettingId::S1,   SettingId::S2,   SettingId::A1_1,
                                                       SettingId::A1_2, SettingId::A2_1, SettingId::A2_2,
                                                       SettingId::A3_1, SettingId::A3_2};

inline SettingSpec setting(std::string_view name)
{
    std::string key(name);
    std::transform(key.begin(), key.end(), key.begin(), [](unsigned char c) { return char(std::tolower(c)); });
    std::replace(key.begin(), key.end(), '_', '.');
    for (SettingId id : all_settings) {
        SettingSpec s = setting(id);
        if (s.name == key) return s;
    }
    throw Error(ErrorCode::ConfigError, "unknown setting '" + std::string(name) + "'");
}

struct GeneratedData {
    Dataset data;
    std::vector<double> event_times;  // latent T, labeled records first
};

// Poisson process on (left, right] with constant rate, by exponential gaps.
inline std::vector<double> poisson_events(Rng& rng, double rate, double left, double right)
{
    std::vector<double> events;
    if (!(rate > 0.0)) return events;
    double s = left + rng.exponential(rate);
    while (s <= right) {
        events.push_back(s);
        s += rng.exponential(rate);
    }
    return events;
}

inline GeneratedData generate(const SettingSpec& spec, std::size_t n, std::size_t N, std::uint64_t seed)
{
    GeneratedData out;
    out.data.labeled.reserve(n);
    out.data.unlabeled.reserve(N);
    out.event_times.reserve(n + N);
    Rng rng(seed);
    for (std::size_t i = 0; i < n + N; ++i) {
        SubjectRecord r;
        r.id = std::to_string(i + 1);
        const double s = rng.uniform(spec.surrogate_lo, spec.surrogate_hi);
        double z = 0.0;
        if (spec.covariate) {
            z = rng.normal((*spec.covariate)[0], (*spec.covariate)[1]);
            r.baseline.push_back(z);
        }
        const double t = spec.survival.sample(rng.uniform(), s, z);
        r.left = rng.weibull(spec.left_shape, spec.left_scale);
        r.right = r.left + rng.uniform(0.0, spec.window_width);
        if (spec.process_rate) r.process_events = poisson_events(rng, *spec.process_rate * t, r.left, r.right);
        r.surrogate_times.push_back(censor_time(s, r.left, r.right));
        r.surrogate_statuses.push_back(classify(s, r.left, r.right));
        if (i < n) {
            r.observed_time = censor_time(t, r.left, r.right);
            r.status = classify(t, r.left, r.right);
            out.data.labeled.push_back(std::move(r));
        } else {
            out.data.unlabeled.push_back(std::move(r));
        }
        out.event_times.push_back(t);
    }
    return out;
}

struct MonteCarloValue {
    double value = 0.0;
    double standard_error = 0.0;
};

// Marginal P(T >= t) by averaging the conditional survival over draws of the
// surrogate and covariate.
inline MonteCarloValue true_survival(const SettingSpec& spec, double t, std::size_t mc_draws, std::uint64_t seed)
{
    if (mc_draws < 10000) throw Error(ErrorCode::InvalidArgument, "true_survival needs at least 1e4 draws");
    Rng rng(seed);
    double mean = 0.0, m2 = 0.0;
    for (std::size_t k = 0; k < mc_draws; ++k) {
        const double s = rng.uniform(spec.surrogate_lo, spec.surrogate_hi);
        const double z = spec.covariate ? rng.normal((*spec.covariate)[0], (*spec.covariate)[1]) : 0.0;
        const double v = spec.survival.survival(t, s, z);
        const double d = v - mean;
        mean += d / static_cast<double>(k + 1);
        m2 += d * (v - mean);
    }
    const double m = static_cast<double>(mc_draws);
    return {mean, std::sqrt(m2 / (m - 1.0) / m)};
}

struct CensoringSummary {
    double exact = 0.0;
    double right = 0.0;
    double left = 0.0;
};

inline CensoringSummary censoring_summary(const Dataset& data)
{
    if (data.labeled.empty()) throw Error(ErrorCode::EmptyData, "censoring summary needs labeled records");
    std::array<std::size_t, 3> counts{};
    for (const auto& r : data.labeled) {
        if (!r.status) throw Error(ErrorCode::MissingLabel, "record '" + r.id + "' has no status");
        ++counts[static_cast<std::size_t>(to_int(*r.status) - 1)];
    }
    const double n = static_cast<double>(data.labeled.size());
    return {counts[0] / n, counts[1] / n, counts[2] / n};
}

} // namespace seeds
