#pragma once

// Optimal sum-to-one combination of the three label-specific estimators.
//
// Weights are m = (V + delta I)^{-1} 1 / 1'(V + delta I)^{-1} 1 computed on
// the submatrix of components that are present at t. The combined variance is
// the sandwich sum_i row_weight_i (sum_j m_j psi_ij)^2 over the influence
// residuals that produced V. For SEEDS the influence residuals come from
// K-fold cross-fitting: coefficients are refitted without fold k and the
// residuals of fold k are evaluated at those held-out fits.

#include <Eigen/Dense>

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "seeds/core_types.hpp"
#include "seeds/error.hpp"
#include "seeds/estimators.hpp"
#include "seeds/imputation.hpp"
#include "seeds/rng.hpp"

namespace seeds {

namespace detail {

inline bool try_weights(const Matrix& cov, double delta, Vector& weights)
{
    Matrix a = cov;
    a.diagonal().array() += delta;
    Eigen::LLT<Matrix> llt(a);
    if (llt.info() != Eigen::Success) return false;
    const Vector x = llt.solve(Vector::Ones(a.rows()));
    const double s = x.sum();
    if (!x.allFinite() || !(s > 0.0)) return false;
    // Reject numerically singular systems: the reciprocal condition of the
    // Cholesky factor's diagonal.
    const auto diag = llt.matrixLLT().diagonal();
    const double ratio = diag.minCoeff() / diag.maxCoeff();
    if (!(ratio * ratio > 1e-14)) return false;
    weights = x / s;
    return true;
}

} // namespace detail

inline Vector optimal_weights(const Matrix& cov, double delta)
{
    if (cov.rows() != cov.cols() || cov.rows() == 0) throw Error(ErrorCode::DimensionMismatch, "covariance must be square");
    Vector w;
    double d = delta;
    if (detail::try_weights(cov, d, w)) return w;
    const double base = std::max(cov.diagonal().cwiseAbs().mean(), 1e-300);
    if (!(d > 0.0)) d = 1e-10 * base;
    for (int k = 0; k < 3; ++k) {
        d *= 10.0;
        if (detail::try_weights(cov, d, w)) return w;
    }
    throw Error(ErrorCode::SingularAfterRidge, "covariance stays singular after ridge escalation");
}

struct RidgePolicy {
    enum class Kind { ScaledByDiagonal, Fixed };
    Kind kind = Kind::ScaledByDiagonal;
    double value = 1.0;  // multiplier for ScaledByDiagonal, delta for Fixed

    // delta_n = value * n^(-1/2) * mean(diag V) or the fixed value.
    double delta(const Matrix& cov, std::size_t n) const
    {
        if (kind == Kind::Fixed) return value;
        if (cov.rows() == 0 || n == 0) return 0.0;
        return value * cov.diagonal().mean() / std::sqrt(static_cast<double>(n));
    }
};

struct CombinedEstimate {
    double t = 0.0;
    double value = 0.0;
    double variance = 0.0;                 // sandwich, Var scale
    Eigen::Vector3d weights = Eigen::Vector3d::Zero();
    double quadratic_form = 0.0;           // m'(V + delta I)m over used components
    std::array<bool, 3> components_used{false, false, false};
    double ridge = 0.0;
    bool cv_calibrated = false;
    std::uint32_t flags = 0;

    double standard_error() const noexcept { return std::sqrt(std::max(variance, 0.0)); }
};

inline CombinedEstimate combine(double t, const std::array<double, 3>& values, const std::array<bool, 3>& present,
                                const Matrix& cov, const Influence& influence, const RidgePolicy& policy = {},
                                bool cv_calibrated = false)
{
    std::vector<Eigen::Index> used;
    for (Eigen::Index j = 0; j < 3; ++j) {
        if (present[static_cast<std::size_t>(j)]) used.push_back(j);
    }
    if (used.empty()) throw Error(ErrorCode::AllComponentsAbsent, "no component present at t=" + std::to_string(t));
    const auto k = static_cast<Eigen::Index>(used.size());
    Matrix sub(k, k);
    for (Eigen::Index a = 0; a < k; ++a) {
        for (Eigen::Index b = 0; b < k; ++b) sub(a, b) = cov(used[a], used[b]);
    }
    CombinedEstimate out;
    out.t = t;
    out.cv_calibrated = cv_calibrated;
    out.ridge = policy.delta(sub, static_cast<std::size_t>(influence.psi.rows()));
    const Vector m = optimal_weights(sub, out.ridge);
    Matrix reg = sub;
    reg.diagonal().array() += out.ridge;
    out.quadratic_form = m.dot(reg * m);
    for (Eigen::Index a = 0; a < k; ++a) {
        out.weights[used[a]] = m[a];
        out.components_used[static_cast<std::size_t>(used[a])] = true;
        out.value += m[a] * values[static_cast<std::size_t>(used[a])];
    }
    // Per-subject sandwich.
    double var = 0.0;
    for (Eigen::Index i = 0; i < influence.psi.rows(); ++i) {
        double s = 0.0;
        for (Eigen::Index a = 0; a < k; ++a) s += m[a] * influence.psi(i, used[a]);
        var += influence.row_weight[i] * s * s;
    }
    out.variance = var;
    return out;
}

inline CombinedEstimate combine(const EstimateTriple& triple, double t, const RidgePolicy& policy = {},
                                bool cv_calibrated = false)
{
    std::array<double, 3> values{};
    for (std::size_t j = 0; j < 3; ++j) values[j] = triple.component[j].value;
    return combine(t, values, triple.present, triple.covariance, triple.influence, policy, cv_calibrated);
}

// Random permutation of 0..n-1 cut into k nearly equal consecutive blocks.
inline std::vector<std::vector<std::size_t>> make_folds(std::size_t n, int k, std::uint64_t seed)
{
    if (k < 2 || static_cast<std::size_t>(k) > n) {
        throw Error(ErrorCode::InvalidArgument, "fold count must satisfy 2 <= K <= n");
    }
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    Rng rng(seed);
    rng.shuffle(perm);
    std::vector<std::vector<std::size_t>> folds(static_cast<std::size_t>(k));
    const std::size_t base = n / static_cast<std::size_t>(k);
    const std::size_t extra = n % static_cast<std::size_t>(k);
    std::size_t pos = 0;
    for (std::size_t f = 0; f < folds.size(); ++f) {
        const std::size_t len = base + (f < extra ? 1 : 0);
        folds[f].assign(perm.begin() + static_cast<std::ptrdiff_t>(pos), perm.begin() + static_cast<std::ptrdiff_t>(pos + len));
        std::sort(folds[f].begin(), folds[f].end());
        pos += len;
    }
    return folds;
}

struct CrossFit {
    Influence influence;           // n x 3, row weights 1 / (K |I_k| n)
    Matrix covariance = Matrix::Zero(3, 3);
    std::array<int, 3> failed_folds{0, 0, 0};
    std::vector<std::array<std::optional<FitResult>, 3>> fold_fits;
};

// Cross-fitted covariance of the intrinsic semi-supervised estimators. For
// fold k the coefficients are refitted on the other folds and the residuals
// of fold k use those coefficients; unlabeled denominators are unchanged.
// A fold whose refit fails keeps the full-data coefficients for its subjects
// and is counted in failed_folds.
inline CrossFit crossfit_covariance(const PointContext& ctx, const AllEstimates& full,
                                    const std::vector<std::vector<std::size_t>>& folds,
                                    const SolverOptions& opt = {})
{
    const Eigen::Index n = ctx.designs[0].rows();
    const double K = static_cast<double>(folds.size());
    CrossFit cv;
    cv.influence.psi = Matrix::Zero(n, 3);
    cv.influence.row_weight = Vector::Zero(n);
    cv.fold_fits.resize(folds.size());

    std::vector<char> in_fold(static_cast<std::size_t>(n));
    for (std::size_t k = 0; k < folds.size(); ++k) {
        const auto& held = folds[k];
        std::fill(in_fold.begin(), in_fold.end(), 0);
        for (std::size_t i : held) in_fold[i] = 1;
        std::vector<std::size_t> train;
        train.reserve(static_cast<std::size_t>(n) - held.size());
        for (std::size_t i = 0; i < static_cast<std::size_t>(n); ++i) {
            if (!in_fold[i]) train.push_back(i);
        }
        for (std::size_t i : held) {
            cv.influence.row_weight[static_cast<Eigen::Index>(i)] =
                1.0 / (K * static_cast<double>(held.size()) * static_cast<double>(n));
        }
        for (std::size_t j = 0; j < 3; ++j) {
            if (!full.semisupervised.present[j] || !full.fits[j]) continue;
            const Design& d = ctx.designs[j];
            const FitResult* beta_fit = &full.fits[j]->used;
            std::optional<FitResult> fold_fit;
            try {
                ComponentFit cf = fit_component(ctx, j, d.subset(train), full.fits[j]->plain.beta, opt);
                fold_fit = cf.used;
                beta_fit = &*fold_fit;
            } catch (const Error&) {
                ++cv.failed_folds[j];
            }
            const double denom = ctx.unlabeled_mean[j];
            for (std::size_t i : held) {
                const auto r = static_cast<Eigen::Index>(i);
                const double g = logistic(d.phi.row(r).dot(beta_fit->beta));
                cv.influence.psi(r, static_cast<Eigen::Index>(j)) = d.weight[r] * (d.outcome[r] - g) / denom;
            }
            cv.fold_fits[k][j] = std::move(fold_fit);
        }
    }
    cv.covariance = cv.influence.covariance();
    return cv;
}

struct GridPointResult {
    double t = 0.0;
    std::optional<CombinedEstimate> seeds;
    std::optional<CombinedEstimate> csl;
    std::string seeds_absent_reason;
    std::string csl_absent_reason;
    std::array<double, 3> semisup_values{};
    std::array<bool, 3> semisup_present{};
    std::array<double, 3> sup_values{};
    std::array<bool, 3> sup_present{};
    std::array<int, 3> failed_folds{};
};

struct SeedsOptions {
    int folds = 10;            // < 2 disables cross-fitting
    std::uint64_t fold_seed = 1;
    RidgePolicy ridge;
    SolverOptions solver;
};

inline GridPointResult seeds_point(const PointContext& ctx, const std::vector<std::vector<std::size_t>>& folds,
                                   const SeedsOptions& opt)
{
    GridPointResult out;
    out.t = ctx.t;
    const AllEstimates all = estimate_all(ctx, opt.solver);
    for (std::size_t j = 0; j < 3; ++j) {
        out.semisup_values[j] = all.semisupervised.component[j].value;
        out.semisup_present[j] = all.semisupervised.present[j];
        out.sup_values[j] = all.supervised.component[j].value;
        out.sup_present[j] = all.supervised.present[j];
    }
    try {
        out.csl = combine(all.supervised, ctx.t, opt.ridge, false);
    } catch (const Error& e) {
        out.csl_absent_reason = e.what();
    }
    if (!ctx.has_unlabeled()) {
        out.seeds_absent_reason = "no unlabeled data";
        return out;
    }
    try {
        if (all.semisupervised.present_count() == 0) {
            throw Error(ErrorCode::AllComponentsAbsent, "no semi-supervised component at t=" + std::to_string(ctx.t));
        }
        if (!folds.empty()) {
            const CrossFit cv = crossfit_covariance(ctx, all, folds, opt.solver);
            out.failed_folds = cv.failed_folds;
            std::array<double, 3> values{};
            for (std::size_t j = 0; j < 3; ++j) values[j] = all.semisupervised.component[j].value;
            out.seeds = combine(ctx.t, values, all.semisupervised.present, cv.covariance, cv.influence, opt.ridge, true);
            for (int f : cv.failed_folds) {
                if (f > 0) out.seeds->flags |= flags::fold_substituted;
            }
        } else {
            out.seeds = combine(all.semisupervised, ctx.t, opt.ridge, false);
        }
    } catch (const Error& e) {
        out.seeds.reset();
        out.seeds_absent_reason = e.what();
    }
    return out;
}

// Full pipeline over a grid. Failures at one point never abort the grid.
inline std::vector<GridPointResult> seeds_estimate(std::span<const SubjectRecord> labeled,
                                                   std::span<const SubjectRecord> unlabeled, const TimeGrid& grid,
                                                   const Bandwidths& bw, const BasisSpec& spec,
                                                   const SeedsOptions& opt = {})
{
    std::vector<std::vector<std::size_t>> folds;
    if (opt.folds >= 2 && static_cast<std::size_t>(opt.folds) <= labeled.size()) {
        folds = make_folds(labeled.size(), opt.folds, opt.fold_seed);
    }
    std::vector<GridPointResult> out;
    out.reserve(grid.size());
    for (double t : grid.points()) {
        out.push_back(seeds_point(make_context(labeled, unlabeled, t, bw, spec), folds, opt));
    }
    return out;
}

// Extra labels the combined supervised estimator needs to match SEEDS,
// assuming its variance scales as 1/n.
inline long required_additional_labels(double var_csl, double var_seeds, long n)
{
    if (!(var_seeds > 0.0)) throw Error(ErrorCode::InvalidArgument, "SEEDS variance must be positive");
    const double extra = static_cast<double>(n) * (var_csl / var_seeds - 1.0);
    return std::max(0L, static_cast<long>(std::ceil(extra - 1e-9)));
}

} // namespace seeds
