#pragma once

// Pointwise survival estimators built from the three label types.
//
// Every estimator is paired with a per-subject influence residual psi_i over
// the labeled set so that its variance is (1/n^2) sum psi_i^2 and the
// covariance between two estimators is (1/n^2) sum psi_i psi'_i:
//
//   exact label   psi_i = I(U_i >= t > L_i) {I(X_i >= t > L_i) - m_i} / I_bar(t)
//   left label    psi_i = K_hl(L_i - t) {I(T_i >= L_i) - m_i} / K_bar_L(t)
//   right label   psi_i = K_hu(U_i - t) {I(T_i > U_i) - m_i} / K_bar_U(t)
//
// where m_i is the supervised estimate (supervised family) or the imputed risk
// g(beta' Phi_i) (semi-supervised family). Supervised estimators normalise by
// labeled-set denominators, semi-supervised ones by unlabeled-set denominators.

#include <Eigen/Dense>

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>

#include "seeds/core_types.hpp"
#include "seeds/error.hpp"
#include "seeds/imputation.hpp"
#include "seeds/kernels.hpp"

namespace seeds {

enum class Method { SD, SL, SU, D, L, U, SSD, SSL, SSU };

constexpr std::string_view to_string(Method m) noexcept
{
    switch (m) {
    case Method::SD: return "SD";
    case Method::SL: return "SL";
    case Method::SU: return "SU";
    case Method::D: return "D";
    case Method::L: return "L";
    case Method::U: return "U";
    case Method::SSD: return "SSD";
    case Method::SSL: return "SSL";
    case Method::SSU: return "SSU";
    }
    return "?";
}

namespace flags {
inline constexpr std::uint32_t separation = 1u << 0;
inline constexpr std::uint32_t ridge = 1u << 1;
inline constexpr std::uint32_t intrinsic_fallback = 1u << 2;
inline constexpr std::uint32_t not_converged = 1u << 3;
inline constexpr std::uint32_t fold_substituted = 1u << 4;
} // namespace flags

inline std::uint32_t fit_flags(const FitResult& fit) noexcept
{
    std::uint32_t f = 0;
    if (fit.separation) f |= flags::separation;
    if (fit.ridge_used > 0.0) f |= flags::ridge;
    if (!fit.converged) f |= flags::not_converged;
    return f;
}

struct PointEstimate {
    double t = 0.0;
    double value = 0.0;
    double variance = 0.0;  // Var(S_hat(t)) scale
    Method method = Method::SD;
    double effective_n = 0.0;
    std::uint32_t flags = 0;
};

// Per-subject influence residuals of up to three estimators. The covariance
// is sum_i row_weight_i psi_ij psi_ik.
struct Influence {
    Matrix psi;          // n x components
    Vector row_weight;   // n

    Matrix covariance() const { return psi.transpose() * row_weight.asDiagonal() * psi; }

    static Influence plain(Matrix psi)
    {
        const double n = static_cast<double>(psi.rows());
        Vector w = Vector::Constant(psi.rows(), n > 0 ? 1.0 / (n * n) : 0.0);
        return Influence{std::move(psi), std::move(w)};
    }
};

namespace detail {

inline Method supervised_method(LabelKind k) noexcept
{
    return k == LabelKind::Exact ? Method::SD : k == LabelKind::Left ? Method::SL : Method::SU;
}

inline Method semisup_method(LabelKind k, bool intrinsic) noexcept
{
    if (intrinsic) return k == LabelKind::Exact ? Method::SSD : k == LabelKind::Left ? Method::SSL : Method::SSU;
    return k == LabelKind::Exact ? Method::D : k == LabelKind::Left ? Method::L : Method::U;
}

inline double variance_from(const Vector& psi) noexcept
{
    const double n = static_cast<double>(psi.size());
    return psi.squaredNorm() / (n * n);
}

} // namespace detail

// Nadaraya-Watson / ratio estimator on the labeled design and its influence
// residuals. `h` is 0 for the exact label.
inline PointEstimate supervised_from_design(const Design& d, LabelKind kind, double t, double h, Vector* psi_out = nullptr)
{
    const double wsum = d.weight.sum();
    PointEstimate est;
    est.t = t;
    est.method = detail::supervised_method(kind);
    est.effective_n = d.effective_size(kind == LabelKind::Exact ? 0.0 : h);
    const double value = d.weight.dot(d.outcome) / wsum;
    est.value = std::clamp(value, 0.0, 1.0);
    const double wbar = wsum / d.norm_count;
    Vector psi = d.weight.cwiseProduct((d.outcome.array() - est.value).matrix()) / wbar;
    est.variance = detail::variance_from(psi);
    if (psi_out) *psi_out = std::move(psi);
    return est;
}

inline PointEstimate supervised_exact(std::span<const SubjectRecord> labeled, double t)
{
    const Design d = label_design(labeled, LabelKind::Exact, t, 0.0, BasisSpec::intercept_only());
    if (!(d.weight.sum() >= 1.0)) throw Error(ErrorCode::NoAtRisk, "no labeled record at risk at t=" + std::to_string(t));
    return supervised_from_design(d, LabelKind::Exact, t, 0.0);
}

// `min_mass` is the guard on sum_i h K_h(anchor_i - t); estimate_all passes the
// same d + 5 threshold used by the imputation fits.
inline PointEstimate supervised_kernel(std::span<const SubjectRecord> labeled, double t, double h, Side side,
                                       double min_mass = 6.0)
{
    const Design d = label_design(labeled, to_kind(side), t, h, BasisSpec::intercept_only());
    if (!(d.effective_size(h) >= min_mass)) {
        throw Error(ErrorCode::InsufficientKernelMass, "kernel mass below guard at t=" + std::to_string(t));
    }
    return supervised_from_design(d, to_kind(side), t, h);
}

// Marginalised imputed risk over unlabeled records plus labeled-set influence
// residuals normalised by the unlabeled mean weight.
inline PointEstimate semisup_from_design(const Design& labeled_design, const Matrix& unlabeled_phi,
                                         const Vector& unlabeled_weight, const FitResult& fit, LabelKind kind,
                                         bool intrinsic, double t, double h_lab, Vector* psi_out = nullptr)
{
    const double usum = unlabeled_weight.sum();
    if (!(usum > 0.0)) {
        if (kind == LabelKind::Exact) throw Error(ErrorCode::NoUnlabeledAtRisk, "no unlabeled record at risk");
        throw Error(ErrorCode::InsufficientKernelMass, "no unlabeled kernel mass");
    }
    const Vector unl_prob = (unlabeled_phi * fit.beta).unaryExpr([](double x) { return logistic(x); });
    PointEstimate est;
    est.t = t;
    est.method = detail::semisup_method(kind, intrinsic);
    est.value = unlabeled_weight.dot(unl_prob) / usum;
    est.effective_n = labeled_design.effective_size(kind == LabelKind::Exact ? 0.0 : h_lab);
    est.flags = fit_flags(fit);

    const double wbar_unl = usum / static_cast<double>(unlabeled_weight.size());
    const Vector lab_prob = (labeled_design.phi * fit.beta).unaryExpr([](double x) { return logistic(x); });
    Vector psi = labeled_design.weight.cwiseProduct(labeled_design.outcome - lab_prob) / wbar_unl;
    est.variance = detail::variance_from(psi);
    if (psi_out) *psi_out = std::move(psi);
    return est;
}

inline PointEstimate semisup_exact(std::span<const SubjectRecord> labeled, std::span<const SubjectRecord> unlabeled,
                                   const FitResult& fit, double t, const BasisSpec& spec, bool intrinsic)
{
    const Design d = label_design(labeled, LabelKind::Exact, t, 0.0, spec);
    const Vector uw = label_weights(unlabeled, LabelKind::Exact, t, 0.0);
    return semisup_from_design(d, basis_matrix(unlabeled, t, spec), uw, fit, LabelKind::Exact, intrinsic, t, 0.0);
}

inline PointEstimate semisup_kernel(std::span<const SubjectRecord> labeled, std::span<const SubjectRecord> unlabeled,
                                    const FitResult& fit, double t, double h_unlab, double h_lab, Side side,
                                    const BasisSpec& spec, bool intrinsic)
{
    const Design d = label_design(labeled, to_kind(side), t, h_lab, spec);
    const Vector uw = label_weights(unlabeled, to_kind(side), t, h_unlab);
    return semisup_from_design(d, basis_matrix(unlabeled, t, spec), uw, fit, to_kind(side), intrinsic, t, h_lab);
}

// Everything needed to estimate at one time point, built once and shared by
// the full-data estimates and the cross-fitted covariance.
struct PointContext {
    double t = 0.0;
    BasisSpec spec;
    Bandwidths bandwidths;
    std::array<LabelKind, 3> kinds{LabelKind::Exact, LabelKind::Left, LabelKind::Right};
    std::array<Design, 3> designs;           // labeled
    std::array<double, 3> h_lab{};            // 0 for exact
    std::array<Vector, 3> unlabeled_weight;  // empty when N = 0
    std::array<double, 3> unlabeled_mean{};
    Matrix unlabeled_phi;

    bool has_unlabeled() const noexcept { return unlabeled_phi.rows() > 0; }
};

inline PointContext make_context(std::span<const SubjectRecord> labeled, std::span<const SubjectRecord> unlabeled,
                                 double t, const Bandwidths& bw, const BasisSpec& spec)
{
    PointContext ctx;
    ctx.t = t;
    ctx.spec = spec;
    ctx.bandwidths = bw;
    ctx.h_lab = {0.0, bw.labeled_left, bw.labeled_right};
    const std::array<double, 3> h_unl{0.0, bw.unlabeled_left, bw.unlabeled_right};
    for (std::size_t j = 0; j < 3; ++j) {
        ctx.designs[j] = label_design(labeled, ctx.kinds[j], t, ctx.h_lab[j], spec);
    }
    if (!unlabeled.empty()) {
        ctx.unlabeled_phi = basis_matrix(unlabeled, t, spec);
        for (std::size_t j = 0; j < 3; ++j) {
            ctx.unlabeled_weight[j] = label_weights(unlabeled, ctx.kinds[j], t, h_unl[j]);
            ctx.unlabeled_mean[j] = ctx.unlabeled_weight[j].mean();
        }
    }
    return ctx;
}

// Throws the guard error for component j when the labeled design is too thin.
inline void check_guard(const PointContext& ctx, std::size_t j, const Design& design)
{
    if (ctx.kinds[j] == LabelKind::Exact) {
        require_at_risk(design, ctx.spec, ctx.t);
    } else {
        require_kernel_mass(design, ctx.h_lab[j], ctx.spec, ctx.t);
    }
}

inline double intrinsic_scale(const PointContext& ctx, std::size_t j)
{
    const double m = ctx.unlabeled_mean[j];
    return ctx.kinds[j] == LabelKind::Exact ? 1.0 / (m * m) : ctx.h_lab[j] / (m * m);
}

// Plain fit followed by the intrinsic fit on a design; the returned fit is the
// intrinsic one when it converged, otherwise the plain one with a flag.
struct ComponentFit {
    FitResult plain;
    FitResult intrinsic;
    FitResult used;
    std::uint32_t flags = 0;
};

inline ComponentFit fit_component(const PointContext& ctx, std::size_t j, const Design& design,
                                  const std::optional<Vector>& warm_start = std::nullopt,
                                  const SolverOptions& opt = {})
{
    check_guard(ctx, j, design);
    ComponentFit cf;
    cf.plain = solve_logistic_ee(design, warm_start, opt);
    const double m = ctx.unlabeled_mean[j];
    if (!(m > 0.0)) throw Error(ErrorCode::NoUnlabeledAtRisk, "unlabeled denominator is zero");
    cf.intrinsic = solve_intrinsic(IntrinsicProblem(design, intrinsic_scale(ctx, j)), cf.plain, opt);
    if (cf.intrinsic.converged) {
        cf.used = cf.intrinsic;
    } else {
        cf.used = cf.plain;
        cf.flags |= flags::intrinsic_fallback;
    }
    cf.flags |= fit_flags(cf.used);
    return cf;
}

struct EstimateTriple {
    std::array<PointEstimate, 3> component;
    std::array<bool, 3> present{false, false, false};
    std::array<std::string, 3> absence_reason;
    Influence influence;  // n x 3, zero columns for absent components
    Matrix covariance = Matrix::Zero(3, 3);

    int present_count() const noexcept { return int(present[0]) + int(present[1]) + int(present[2]); }
};

struct AllEstimates {
    double t = 0.0;
    EstimateTriple supervised;
    EstimateTriple semisupervised;            // intrinsic fits (SSD, SSL, SSU)
    std::array<std::optional<ComponentFit>, 3> fits;
};

inline AllEstimates estimate_all(const PointContext& ctx, const SolverOptions& opt = {})
{
    AllEstimates out;
    out.t = ctx.t;
    const auto n = ctx.designs[0].rows();
    Matrix psi_s = Matrix::Zero(n, 3);
    Matrix psi_ss = Matrix::Zero(n, 3);
    const double min_mass = guard_threshold(ctx.spec);

    for (std::size_t j = 0; j < 3; ++j) {
        const Design& d = ctx.designs[j];
        const auto col = static_cast<Eigen::Index>(j);
        // supervised
        try {
            const double size = d.effective_size(ctx.h_lab[j]);
            if (ctx.kinds[j] == LabelKind::Exact && !(size >= 1.0)) {
                throw Error(ErrorCode::NoAtRisk, "no labeled record at risk");
            }
            if (ctx.kinds[j] != LabelKind::Exact && !(size >= min_mass)) {
                throw Error(ErrorCode::InsufficientKernelMass, "kernel mass below guard");
            }
            Vector psi;
            out.supervised.component[j] = supervised_from_design(d, ctx.kinds[j], ctx.t, ctx.h_lab[j], &psi);
            psi_s.col(col) = psi;
            out.supervised.present[j] = true;
        } catch (const Error& e) {
            out.supervised.absence_reason[j] = e.what();
        }
        // semi-supervised
        if (!ctx.has_unlabeled()) {
            out.semisupervised.absence_reason[j] = "no unlabeled data";
            continue;
        }
        try {
            ComponentFit cf = fit_component(ctx, j, d, std::nullopt, opt);
            Vector psi;
            PointEstimate est = semisup_from_design(d, ctx.unlabeled_phi, ctx.unlabeled_weight[j], cf.used,
                                                    ctx.kinds[j], true, ctx.t, ctx.h_lab[j], &psi);
            est.flags |= cf.flags;
            out.semisupervised.component[j] = est;
            psi_ss.col(col) = psi;
            out.semisupervised.present[j] = true;
            out.fits[j] = std::move(cf);
        } catch (const Error& e) {
            out.semisupervised.absence_reason[j] = e.what();
        }
    }
    out.supervised.influence = Influence::plain(std::move(psi_s));
    out.semisupervised.influence = Influence::plain(std::move(psi_ss));
    out.supervised.covariance = out.supervised.influence.covariance();
    out.semisupervised.covariance = out.semisupervised.influence.covariance();
    return out;
}

inline AllEstimates estimate_all(std::span<const SubjectRecord> labeled, std::span<const SubjectRecord> unlabeled,
                                 double t, const Bandwidths& bw, const BasisSpec& spec, const SolverOptions& opt = {})
{
    return estimate_all(make_context(labeled, unlabeled, t, bw, spec), opt);
}

} // namespace seeds
