#pragma once

// Deterministic random streams. Distributions are implemented here by inverse
// transform so that a seed reproduces the same draws on every platform.

#include <boost/math/special_functions/erf.hpp>

#include <cmath>
#include <cstdint>
#include <numbers>
#include <numeric>
#include <random>
#include <vector>

namespace seeds {

inline constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept
{
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

// Child seed for stream `index` of `master`; independent of evaluation order.
inline constexpr std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) noexcept
{
    return splitmix64(splitmix64(master) ^ splitmix64(index + 0x632BE59BD9B4E019ull));
}

class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(splitmix64(seed)) {}

    // Uniform on the open interval (0, 1).
    double uniform() noexcept { return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53; }

    double uniform(double lo, double hi) noexcept { return lo + (hi - lo) * uniform(); }

    double normal(double mean, double sd)
    {
        return mean + sd * (-std::numbers::sqrt2 * boost::math::erfc_inv(2.0 * uniform()));
    }

    // Exponential with the given rate.
    double exponential(double rate) noexcept { return -std::log(uniform()) / rate; }

    // Shape/scale Weibull: survival exp(-(t / scale)^shape).
    double weibull(double shape, double scale) noexcept
    {
        return scale * std::pow(-std::log(uniform()), 1.0 / shape);
    }

    // Uniform integer in [0, bound).
    std::uint64_t below(std::uint64_t bound) noexcept
    {
        const std::uint64_t limit = bound ? (~std::uint64_t{0} - (~std::uint64_t{0} % bound)) : 0;
        std::uint64_t x = engine_();
        while (x >= limit) x = engine_();
        return x % bound;
    }

    template <typename T>
    void shuffle(std::vector<T>& v) noexcept
    {
        for (std::size_t i = v.size(); i > 1; --i) {
            std::swap(v[i - 1], v[static_cast<std::size_t>(below(i))]);
        }
    }

private:
    std::mt19937_64 engine_;
};

} // namespace seeds
