#pragma once

// Time-specific logistic imputation models.
//
// For every label type the working model is g(beta' Phi(t)) with g the logistic
// link. Two fits are provided per label type:
//   * the plain weighted estimating equation (1/n) sum w_i Phi_i (y_i - g_i) = 0
//   * the intrinsic fit, which minimises (c/n) sum w_i^2 (y_i - g_i)^2 subject
//     to the calibration constraint (1/n) sum w_i (y_i - g_i) = 0.
// The constraint is the intercept row of the estimating equation, so the plain
// solution is always a feasible starting point for the intrinsic fit.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "seeds/core_types.hpp"
#include "seeds/error.hpp"
#include "seeds/kernels.hpp"

namespace seeds {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

enum class LabelKind { Exact, Left, Right };
enum class Side { Left, Right };

constexpr LabelKind to_kind(Side side) noexcept { return side == Side::Left ? LabelKind::Left : LabelKind::Right; }

inline double logistic(double x) noexcept
{
    if (x >= 0.0) return 1.0 / (1.0 + std::exp(-x));
    const double e = std::exp(x);
    return e / (1.0 + e);
}

struct BasisSpec {
    bool include_surrogate_times = true;
    bool include_surrogate_status_dummies = true;
    bool include_baseline = true;
    bool include_cumulative_process = true;
    std::size_t q = 0;
    std::size_t p1 = 0;
    std::size_t p2 = 0;  // 1 when a counting process is recorded

    std::size_t dimension() const noexcept
    {
        return 1 + (include_surrogate_times ? q : 0) + (include_surrogate_status_dummies ? 2 * q : 0) +
               (include_baseline ? p1 : 0) + (include_cumulative_process ? p2 : 0);
    }

    static BasisSpec intercept_only() noexcept
    {
        return BasisSpec{false, false, false, false, 0, 0, 0};
    }

    // Every available component of the dataset.
    static BasisSpec for_dataset(const Dataset& data)
    {
        return BasisSpec{true, true, true, true, data.q(), data.p1(), data.has_process() ? 1u : 0u};
    }
};

// Writes (1, X*, I(d*=2), I(d*=3) per surrogate, Z, Z_L^t) restricted by spec.
inline void fill_basis(const SubjectRecord& r, double t, const BasisSpec& spec, double* out)
{
    if ((spec.include_surrogate_times || spec.include_surrogate_status_dummies) && r.q() != spec.q) {
        throw Error(ErrorCode::DimensionMismatch, "record '" + r.id + "' surrogate count");
    }
    if (spec.include_baseline && r.p1() != spec.p1) {
        throw Error(ErrorCode::DimensionMismatch, "record '" + r.id + "' baseline covariate count");
    }
    std::size_t j = 0;
    out[j++] = 1.0;
    if (spec.include_surrogate_times) {
        for (double x : r.surrogate_times) out[j++] = x;
    }
    if (spec.include_surrogate_status_dummies) {
        for (CensorCode c : r.surrogate_statuses) {
            out[j++] = c == CensorCode::RightCensored ? 1.0 : 0.0;
            out[j++] = c == CensorCode::LeftCensored ? 1.0 : 0.0;
        }
    }
    if (spec.include_baseline) {
        for (double z : r.baseline) out[j++] = z;
    }
    if (spec.include_cumulative_process && spec.p2 > 0) out[j++] = cumulative_covariate(r, t);
}

inline Vector build_basis(const SubjectRecord& r, double t, const BasisSpec& spec)
{
    Vector phi(static_cast<Eigen::Index>(spec.dimension()));
    fill_basis(r, t, spec, phi.data());
    return phi;
}

inline Matrix basis_matrix(std::span<const SubjectRecord> records, double t, const BasisSpec& spec)
{
    const auto d = static_cast<Eigen::Index>(spec.dimension());
    Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> rows(
        static_cast<Eigen::Index>(records.size()), d);
    for (std::size_t i = 0; i < records.size(); ++i) {
        fill_basis(records[i], t, spec, rows.row(static_cast<Eigen::Index>(i)).data());
    }
    return rows;
}

// Anchor time of a label: L for the left label, U for the right label.
inline double anchor(const SubjectRecord& r, Side side) noexcept { return side == Side::Left ? r.left : r.right; }

// Outcome for a label at time t: I(X >= t > L), I(T >= L) or I(T > U).
inline double label_outcome(const DerivedLabels& labels, LabelKind kind, double t) noexcept
{
    switch (kind) {
    case LabelKind::Exact: return labels.exact_indicator(t);
    case LabelKind::Left: return labels.left_label.indicator;
    case LabelKind::Right: return labels.right_label.indicator;
    }
    return 0.0;
}

// Weight of a record for a label at time t: I(U >= t > L) or K_h(anchor - t).
inline double label_weight(const SubjectRecord& r, LabelKind kind, double t, double h) noexcept
{
    switch (kind) {
    case LabelKind::Exact: return (r.right >= t && t > r.left) ? 1.0 : 0.0;
    case LabelKind::Left: return scaled_kernel(r.left - t, h);
    case LabelKind::Right: return scaled_kernel(r.right - t, h);
    }
    return 0.0;
}

inline Vector label_weights(std::span<const SubjectRecord> records, LabelKind kind, double t, double h)
{
    Vector w(static_cast<Eigen::Index>(records.size()));
    for (std::size_t i = 0; i < records.size(); ++i) w[static_cast<Eigen::Index>(i)] = label_weight(records[i], kind, t, h);
    return w;
}

// Regression data for one label type at one time point. Rows follow the input
// record order; `norm_count` is the n in the 1/n normalisations.
struct Design {
    Matrix phi;
    Vector weight;
    Vector outcome;
    double norm_count = 0.0;

    Eigen::Index rows() const noexcept { return phi.rows(); }
    Eigen::Index dim() const noexcept { return phi.cols(); }

    Design subset(std::span<const std::size_t> idx) const
    {
        Design out;
        const auto m = static_cast<Eigen::Index>(idx.size());
        out.phi.resize(m, phi.cols());
        out.weight.resize(m);
        out.outcome.resize(m);
        for (Eigen::Index k = 0; k < m; ++k) {
            const auto i = static_cast<Eigen::Index>(idx[static_cast<std::size_t>(k)]);
            out.phi.row(k) = phi.row(i);
            out.weight[k] = weight[i];
            out.outcome[k] = outcome[i];
        }
        out.norm_count = static_cast<double>(idx.size());
        return out;
    }

    // Sum of h K_h(anchor - t) (kernel labels) or the at-risk count (exact label).
    double effective_size(double h) const noexcept
    {
        return h > 0.0 ? h * weight.sum() : weight.sum();
    }
};

inline Design label_design(std::span<const SubjectRecord> labeled, LabelKind kind, double t, double h,
                           const BasisSpec& spec)
{
    if (kind != LabelKind::Exact && !(h > 0.0 && std::isfinite(h))) {
        throw Error(ErrorCode::NonpositiveBandwidth, "kernel label needs a positive bandwidth");
    }
    Design d;
    d.phi = basis_matrix(labeled, t, spec);
    d.weight = label_weights(labeled, kind, t, h);
    d.outcome.resize(static_cast<Eigen::Index>(labeled.size()));
    for (std::size_t i = 0; i < labeled.size(); ++i) {
        d.outcome[static_cast<Eigen::Index>(i)] = label_outcome(derive_labels(labeled[i]), kind, t);
    }
    d.norm_count = static_cast<double>(labeled.size());
    return d;
}

struct SolverOptions {
    double tolerance = 1e-10;
    int max_iterations = 100;
    int max_halvings = 30;
    double ridge = 1e-6;
    double condition_limit = 1e10;
    double separation_eta = 30.0;     // |beta' Phi| beyond this on a weighted row signals separation
    double saturation_ratio = 1e-6;   // information at the fit over information at beta = 0
    double constraint_tolerance = 1e-8;
};

struct FitResult {
    Vector beta;
    bool converged = false;
    int iterations = 0;
    double final_residual_norm = 0.0;
    std::optional<double> constraint_residual;
    std::optional<double> multiplier;
    double ridge_used = 0.0;
    bool separation = false;
    bool intrinsic = false;
    bool reverted_to_init = false;  // intrinsic search could not improve on the feasible start
};

namespace detail {

// Weighted logistic estimating equation (1/n) sum w Phi (y - g) - ridge beta.
struct LogisticEE {
    const Design& design;
    double ridge = 0.0;

    Vector residual(const Vector& beta, Vector& prob) const
    {
        const Vector eta = design.phi * beta;
        prob = eta.unaryExpr([](double x) { return logistic(x); });
        const Vector r = design.weight.cwiseProduct(design.outcome - prob);
        return design.phi.transpose() * r / design.norm_count - ridge * beta;
    }

    // Negative Jacobian: (1/n) sum w g(1-g) Phi Phi' + ridge I.
    Matrix information(const Vector& prob) const
    {
        const Vector v = design.weight.cwiseProduct(prob.cwiseProduct((1.0 - prob.array()).matrix()));
        Matrix info = design.phi.transpose() * v.asDiagonal() * design.phi / design.norm_count;
        info.diagonal().array() += ridge;
        return info;
    }

    // Smallest generalised eigenvalue of the information at `prob` against the
    // information at g = 1/2. Near zero when fitted risks are pinned at 0 or 1
    // in some direction, which happens under separation even when the
    // residual has already dropped below tolerance.
    double saturation(const Vector& prob) const
    {
        const Matrix i0 = information(Vector::Constant(prob.size(), 0.5));
        if (Eigen::LLT<Matrix>(i0).info() != Eigen::Success) return 1.0;
        Eigen::GeneralizedSelfAdjointEigenSolver<Matrix> es(information(prob), i0, Eigen::EigenvaluesOnly);
        if (es.info() != Eigen::Success) return 1.0;
        return es.eigenvalues().minCoeff();
    }

    double max_weighted_eta(const Vector& beta) const
    {
        const double wmax = design.weight.size() ? design.weight.maxCoeff() : 0.0;
        const Vector eta = design.phi * beta;
        double m = 0.0;
        for (Eigen::Index i = 0; i < eta.size(); ++i) {
            if (design.weight[i] > 1e-8 * wmax) m = std::max(m, std::abs(eta[i]));
        }
        return m;
    }
};

// Solves (A + extra I) x = b, adding `ridge` to the diagonal when A is
// ill-conditioned. Returns the ridge actually added.
inline double regularized_solve(Matrix a, const Vector& b, Vector& x, const SolverOptions& opt)
{
    Eigen::LDLT<Matrix> ldlt(a);
    double added = 0.0;
    if (ldlt.info() != Eigen::Success || !(ldlt.rcond() * opt.condition_limit >= 1.0)) {
        a.diagonal().array() += opt.ridge;
        added = opt.ridge;
        ldlt.compute(a);
    }
    x = ldlt.solve(b);
    return added;
}

inline FitResult newton_logistic(const Design& design, Vector beta, double ridge, const SolverOptions& opt,
                                 bool watch_separation, bool& separated)
{
    LogisticEE ee{design, ridge};
    FitResult fit;
    fit.ridge_used = ridge;
    Vector prob;
    Vector u = ee.residual(beta, prob);
    double norm = u.norm();
    int it = 0;
    for (; it < opt.max_iterations && norm > opt.tolerance; ++it) {
        Vector step;
        fit.ridge_used = std::max(fit.ridge_used, ridge + regularized_solve(ee.information(prob), u, step, opt));
        double alpha = 1.0;
        bool accepted = false;
        Vector trial_prob;
        for (int h = 0; h <= opt.max_halvings; ++h, alpha *= 0.5) {
            const Vector trial = beta + alpha * step;
            const Vector tu = ee.residual(trial, trial_prob);
            const double tn = tu.norm();
            if (std::isfinite(tn) && tn < norm) {
                beta = trial;
                u = tu;
                norm = tn;
                prob = trial_prob;
                accepted = true;
                break;
            }
        }
        if (!accepted) break;
        if (watch_separation && ee.max_weighted_eta(beta) > opt.separation_eta) {
            separated = true;
            break;
        }
    }
    if (watch_separation && !separated &&
        (norm > opt.tolerance || ee.max_weighted_eta(beta) > opt.separation_eta ||
         ee.saturation(prob) < opt.saturation_ratio)) {
        separated = true;
    }
    fit.beta = std::move(beta);
    fit.iterations = it;
    fit.final_residual_norm = norm;
    fit.converged = norm <= opt.tolerance;
    return fit;
}

} // namespace detail

// Newton solution of the weighted logistic estimating equation. On separation
// (diverging iterates or fitted risks pinned at 0/1) the equation is refitted
// with a ridge penalty and the result is flagged.
inline FitResult solve_logistic_ee(const Design& design, std::optional<Vector> start = std::nullopt,
                                   const SolverOptions& opt = {})
{
    const Vector init = start.value_or(Vector::Zero(design.dim()));
    bool separated = false;
    FitResult fit = detail::newton_logistic(design, init, 0.0, opt, true, separated);
    if (separated) {
        bool unused = false;
        fit = detail::newton_logistic(design, Vector::Zero(design.dim()), opt.ridge, opt, false, unused);
        fit.separation = true;
        fit.ridge_used = std::max(fit.ridge_used, opt.ridge);
    }
    return fit;
}

// Intrinsic-efficiency problem on a design:
//   minimise Q(beta) = (scale/n) sum w^2 (y - g)^2
//   subject to C(beta) = (1/n) sum w (y - g) = 0.
class IntrinsicProblem {
public:
    // Everything first-order at one beta, from a single pass over the rows.
    struct Evaluation {
        Vector p;
        double objective = 0.0;
        double constraint = 0.0;
        Vector objective_gradient;
        Vector constraint_gradient;
    };

    IntrinsicProblem(const Design& design, double scale) : d_(design), scale_(scale) {}

    Evaluation evaluate(const Vector& beta) const
    {
        Evaluation e;
        e.p = probabilities(beta);
        const Eigen::Index n = e.p.size();
        Vector cq(n), cc(n);
        double q = 0.0, c = 0.0;
        for (Eigen::Index i = 0; i < n; ++i) {
            const double w = d_.weight[i];
            const double r = d_.outcome[i] - e.p[i];
            const double g1 = e.p[i] * (1.0 - e.p[i]);
            q += w * w * r * r;
            c += w * r;
            cq[i] = -2.0 * scale_ * w * w * r * g1;
            cc[i] = -w * g1;
        }
        e.objective = scale_ * q / d_.norm_count;
        e.constraint = c / d_.norm_count;
        e.objective_gradient = d_.phi.transpose() * cq / d_.norm_count;
        e.constraint_gradient = d_.phi.transpose() * cc / d_.norm_count;
        return e;
    }

    // Q and C only.
    std::pair<double, double> values(const Vector& beta) const
    {
        const Vector p = probabilities(beta);
        double q = 0.0, c = 0.0;
        for (Eigen::Index i = 0; i < p.size(); ++i) {
            const double w = d_.weight[i];
            const double r = d_.outcome[i] - p[i];
            q += w * w * r * r;
            c += w * r;
        }
        return {scale_ * q / d_.norm_count, c / d_.norm_count};
    }

    double objective(const Vector& beta) const { return values(beta).first; }

    double max_weighted_eta(const Vector& beta) const { return detail::LogisticEE{d_, 0.0}.max_weighted_eta(beta); }
    double constraint(const Vector& beta) const { return values(beta).second; }
    Vector objective_gradient(const Vector& beta) const { return evaluate(beta).objective_gradient; }
    Vector constraint_gradient(const Vector& beta) const { return evaluate(beta).constraint_gradient; }

    // Gradient of Q + lambda C with respect to beta.
    Vector lagrangian_gradient(const Vector& beta, double lambda) const
    {
        const Evaluation e = evaluate(beta);
        return e.objective_gradient + lambda * e.constraint_gradient;
    }

    Matrix lagrangian_hessian(const Vector& beta, double lambda, bool gauss_newton) const
    {
        return lagrangian_hessian_at(probabilities(beta), lambda, gauss_newton);
    }

    // Hessian of Q + lambda C at fitted probabilities p; with gauss_newton the
    // second-derivative terms of the link are dropped, leaving a PSD matrix.
    Matrix lagrangian_hessian_at(const Vector& p, double lambda, bool gauss_newton) const
    {
        Vector c(p.size());
        for (Eigen::Index i = 0; i < p.size(); ++i) {
            const double w = d_.weight[i];
            const double g1 = p[i] * (1.0 - p[i]);
            const double g2 = g1 * (1.0 - 2.0 * p[i]);
            const double res = d_.outcome[i] - p[i];
            c[i] = 2.0 * scale_ * w * w * g1 * g1;
            if (!gauss_newton) c[i] += -2.0 * scale_ * w * w * res * g2 - lambda * w * g2;
        }
        return d_.phi.transpose() * c.asDiagonal() * d_.phi / d_.norm_count;
    }

    Vector probabilities(const Vector& beta) const
    {
        return (d_.phi * beta).unaryExpr([](double x) { return logistic(x); });
    }

    const Design& design() const noexcept { return d_; }
    double scale() const noexcept { return scale_; }

private:
    const Design& d_;
    double scale_;
};

namespace detail {

inline double kkt_norm(const IntrinsicProblem::Evaluation& e, double lambda)
{
    const Vector g = e.objective_gradient + lambda * e.constraint_gradient;
    return std::sqrt(g.squaredNorm() + e.constraint * e.constraint);
}

inline double kkt_norm(const IntrinsicProblem& p, const Vector& beta, double lambda)
{
    return kkt_norm(p.evaluate(beta), lambda);
}

} // namespace detail

// Sequential quadratic programming on the KKT system of IntrinsicProblem,
// started from a feasible plain fit with multiplier 0. Steps are Newton steps
// on the (d+1)-dimensional KKT system; step length is halved until the exact
// penalty merit Q + mu |C| decreases.
inline FitResult solve_intrinsic(const IntrinsicProblem& prob, const FitResult& init, const SolverOptions& opt = {})
{
    const auto d = static_cast<Eigen::Index>(init.beta.size());
    Vector beta = init.beta;
    double lambda = 0.0;
    double mu = 1.0;
    IntrinsicProblem::Evaluation cur = prob.evaluate(beta);
    const double q_init = cur.objective;
    double kkt = detail::kkt_norm(cur, lambda);
    double ridge_used = 0.0;
    int it = 0;

    for (; it < opt.max_iterations && kkt > opt.tolerance; ++it) {
        const Vector& a = cur.constraint_gradient;
        const Vector& grad_q = cur.objective_gradient;
        const double c = cur.constraint;
        const Matrix h_exact = prob.lagrangian_hessian_at(cur.p, lambda, false);

        auto solve_step = [&](bool gauss_newton, Vector& step, double& lambda_next) {
            Matrix kkt_mat = Matrix::Zero(d + 1, d + 1);
            kkt_mat.topLeftCorner(d, d) = gauss_newton ? prob.lagrangian_hessian_at(cur.p, lambda, true) : h_exact;
            kkt_mat.topRightCorner(d, 1) = a;
            kkt_mat.bottomLeftCorner(1, d) = a.transpose();
            Vector rhs(d + 1);
            rhs.head(d) = -grad_q;
            rhs[d] = -c;
            Eigen::FullPivLU<Matrix> lu(kkt_mat);
            if (lu.rcond() * opt.condition_limit < 1.0) {
                kkt_mat.topLeftCorner(d, d).diagonal().array() += opt.ridge;
                ridge_used = std::max(ridge_used, opt.ridge);
                lu.compute(kkt_mat);
            }
            const Vector sol = lu.solve(rhs);
            step = sol.head(d);
            lambda_next = sol[d];
            return step.allFinite() && std::isfinite(lambda_next);
        };

        Vector step;
        double lambda_next = 0.0;
        bool ok = solve_step(false, step, lambda_next);
        if (!ok || step.dot(h_exact * step) <= 0.0) {
            ok = solve_step(true, step, lambda_next);
        }
        if (!ok) break;

        mu = std::max(mu, 2.0 * std::abs(lambda_next) + 1e-8);
        const double phi0 = cur.objective + mu * std::abs(c);
        const double slope = grad_q.dot(step) - mu * std::abs(c);
        double alpha = 1.0;
        bool accepted = false;
        for (int h = 0; h <= opt.max_halvings; ++h, alpha *= 0.5) {
            const Vector trial = beta + alpha * step;
            // The objective can keep falling as fitted risks saturate on a few
            // heavily weighted rows; such iterates are not accepted, so an
            // unbounded problem ends unconverged and the caller falls back.
            if (prob.max_weighted_eta(trial) > opt.separation_eta) continue;
            const double lam = lambda + alpha * (lambda_next - lambda);
            IntrinsicProblem::Evaluation next = prob.evaluate(trial);
            const double phi = next.objective + mu * std::abs(next.constraint);
            if (!std::isfinite(phi)) continue;
            const bool armijo = slope < 0.0 && phi <= phi0 + 1e-4 * alpha * slope;
            const double trial_kkt = detail::kkt_norm(next, lam);
            // Near the solution the merit change drowns in rounding; fall back
            // on the KKT residual itself.
            const bool residual_drop = (slope >= 0.0 || std::abs(phi - phi0) <= 1e-13 * (1.0 + std::abs(phi0))) &&
                                       trial_kkt < kkt;
            if (armijo || residual_drop) {
                beta = trial;
                lambda = lam;
                kkt = trial_kkt;
                cur = std::move(next);
                accepted = true;
                break;
            }
        }
        if (!accepted) break;
    }

    FitResult fit;
    fit.intrinsic = true;
    fit.iterations = it;
    fit.ridge_used = std::max(init.ridge_used, ridge_used);
    fit.separation = init.separation;
    const double cres = cur.constraint;
    const bool feasible = std::abs(cres) <= opt.constraint_tolerance;
    const bool stationary = kkt <= std::max(opt.tolerance, opt.constraint_tolerance);
    if (feasible && cur.objective <= q_init + 1e-12) {
        fit.beta = std::move(beta);
        fit.multiplier = lambda;
        fit.constraint_residual = cres;
        fit.final_residual_norm = kkt;
        fit.converged = stationary;
    } else {
        // Keep the feasible start; it satisfies the constraint and the
        // objective bound by construction.
        fit.beta = init.beta;
        fit.multiplier = 0.0;
        fit.constraint_residual = prob.constraint(init.beta);
        fit.final_residual_norm = detail::kkt_norm(prob, init.beta, 0.0);
        fit.converged = false;
        fit.reverted_to_init = true;
    }
    return fit;
}

// Guards --------------------------------------------------------------------

inline double guard_threshold(const BasisSpec& spec) noexcept { return static_cast<double>(spec.dimension()) + 5.0; }

inline void require_at_risk(const Design& design, const BasisSpec& spec, double t)
{
    const double at_risk = design.weight.sum();
    if (at_risk < guard_threshold(spec)) {
        throw Error(ErrorCode::InsufficientAtRisk,
                    "at t=" + std::to_string(t) + " only " + std::to_string(at_risk) + " labeled at risk");
    }
}

inline void require_kernel_mass(const Design& design, double h, const BasisSpec& spec, double t)
{
    const double mass = design.effective_size(h);
    if (!(mass >= guard_threshold(spec))) {
        throw Error(ErrorCode::InsufficientKernelMass,
                    "at t=" + std::to_string(t) + " kernel mass " + std::to_string(mass));
    }
}

// I_N(t) = (1/N) sum I(U >= t > L) over the unlabeled set.
inline double unlabeled_at_risk_mean(std::span<const SubjectRecord> unlabeled, double t)
{
    if (unlabeled.empty()) return 0.0;
    return label_weights(unlabeled, LabelKind::Exact, t, 0.0).mean();
}

// K_N(t) = (1/N) sum K_h(anchor - t) over the unlabeled set.
inline double unlabeled_kernel_mean(std::span<const SubjectRecord> unlabeled, double t, double h, Side side)
{
    if (unlabeled.empty()) return 0.0;
    return label_weights(unlabeled, to_kind(side), t, h).mean();
}

// Spec-level fitting entry points -----------------------------------------

inline FitResult fit_exact_label(std::span<const SubjectRecord> labeled, double t, const BasisSpec& spec,
                                 const SolverOptions& opt = {})
{
    const Design design = label_design(labeled, LabelKind::Exact, t, 0.0, spec);
    require_at_risk(design, spec, t);
    return solve_logistic_ee(design, std::nullopt, opt);
}

inline FitResult fit_kernel_label(std::span<const SubjectRecord> labeled, double t, double h, Side side,
                                  const BasisSpec& spec, const SolverOptions& opt = {})
{
    const Design design = label_design(labeled, to_kind(side), t, h, spec);
    require_kernel_mass(design, h, spec, t);
    return solve_logistic_ee(design, std::nullopt, opt);
}

inline FitResult fit_intrinsic_exact(std::span<const SubjectRecord> labeled, std::span<const SubjectRecord> unlabeled,
                                     double t, const BasisSpec& spec, const FitResult& init,
                                     const SolverOptions& opt = {})
{
    const double i_n = unlabeled_at_risk_mean(unlabeled, t);
    if (!(i_n > 0.0)) throw Error(ErrorCode::NoUnlabeledAtRisk, "no unlabeled record at risk at t=" + std::to_string(t));
    const Design design = label_design(labeled, LabelKind::Exact, t, 0.0, spec);
    return solve_intrinsic(IntrinsicProblem(design, 1.0 / (i_n * i_n)), init, opt);
}

inline FitResult fit_intrinsic_kernel(std::span<const SubjectRecord> labeled, std::span<const SubjectRecord> unlabeled,
                                      double t, double h_lab, double h_unlab, Side side, const BasisSpec& spec,
                                      const FitResult& init, const SolverOptions& opt = {})
{
    const double k_n = unlabeled_kernel_mean(unlabeled, t, h_unlab, side);
    if (!(k_n > 0.0)) throw Error(ErrorCode::NoUnlabeledAtRisk, "no unlabeled kernel mass at t=" + std::to_string(t));
    const Design design = label_design(labeled, to_kind(side), t, h_lab, spec);
    return solve_intrinsic(IntrinsicProblem(design, h_lab / (k_n * k_n)), init, opt);
}

} // namespace seeds
