#include "support.hpp"

#include <cmath>

#include "seeds/estimators.hpp"
#include "seeds/simgen.hpp"

using namespace seeds;
using seeds::test::labeled_record;
using seeds::test::strip;
using seeds::test::unlabeled_record;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

Dataset small_fixture(std::uint64_t seed, int n, int N)
{
    Rng rng(seed);
    Dataset d;
    auto draw = [&](int i) {
        const double l = rng.uniform(0.0, 1.0), u = l + rng.uniform(0.5, 2.0);
        const double s = rng.uniform(0.0, 3.0);
        const double t = std::max(0.01, s + rng.uniform(-0.7, 0.7));
        return test::from_latent(std::to_string(i), t, l, u, s);
    };
    for (int i = 0; i < n; ++i) d.labeled.push_back(draw(i));
    for (int i = 0; i < N; ++i) d.unlabeled.push_back(strip(draw(n + i)));
    return d;
}

} // namespace

TEST_CASE("supervised exact-label estimator")
{
    std::vector<SubjectRecord> two{labeled_record("a", 0, 2, 1.5, CensorCode::Exact),
                                   labeled_record("b", 0, 2, 0.5, CensorCode::Exact)};
    const PointEstimate e = supervised_exact(two, 1.0);
    CHECK(e.value == 0.5);
    CHECK(e.method == Method::SD);
    // Var = (1/n^2) sum (w (y - S) / I_bar)^2 with I_bar = 1: (0.25 + 0.25) / 4.
    CHECK_THAT(e.variance, WithinAbs(0.125, 1e-15));

    std::vector<SubjectRecord> alive{labeled_record("a", 0, 2, 1.5, CensorCode::Exact),
                                     labeled_record("b", 0, 2, 2.0, CensorCode::RightCensored),
                                     labeled_record("c", 3, 4, 3.0, CensorCode::LeftCensored)};
    const PointEstimate all = supervised_exact(alive, 1.0);
    CHECK(all.value == 1.0);
    CHECK(all.variance == 0.0);

    try {
        supervised_exact(alive, 10.0);
        FAIL("expected NoAtRisk");
    } catch (const Error& err) {
        CHECK(err.code() == ErrorCode::NoAtRisk);
    }
}

TEST_CASE("supervised exact-label variance follows the per-subject formula")
{
    const Dataset d = small_fixture(1, 80, 0);
    const double t = 1.2;
    const PointEstimate e = supervised_exact(d.labeled, t);
    const double n = d.n();
    double at_risk = 0.0, alive = 0.0;
    for (const auto& r : d.labeled) {
        const auto lab = derive_labels(r);
        at_risk += lab.at_risk(t);
        alive += lab.exact_indicator(t);
    }
    const double s = alive / at_risk, ibar = at_risk / n;
    double sum = 0.0;
    for (const auto& r : d.labeled) {
        const auto lab = derive_labels(r);
        const double w = lab.at_risk(t);
        sum += w * w * std::pow(lab.exact_indicator(t) - s, 2) / (ibar * ibar);
    }
    CHECK_THAT(e.value, WithinAbs(s, 1e-15));
    CHECK_THAT(e.variance, WithinRel(sum / n / n, 1e-12));
}

TEST_CASE("supervised kernel estimator")
{
    const double t = 1.0, h = 0.5;
    std::vector<SubjectRecord> ones;
    for (int i = 0; i < 30; ++i) {
        const double l = t + 0.01 * (i - 15);
        ones.push_back(labeled_record(std::to_string(i), l, l + 1, l + 0.5, CensorCode::Exact));
    }
    CHECK(supervised_kernel(ones, t, h, Side::Left).value == 1.0);

    std::vector<SubjectRecord> pair;
    for (int i = 0; i < 20; ++i) {
        const double off = 0.01 * (i + 1);
        pair.push_back(labeled_record("a" + std::to_string(i), t - off, t + 1, t - off, CensorCode::LeftCensored));
        pair.push_back(labeled_record("b" + std::to_string(i), t + off, t + 1, t + off, CensorCode::Exact));
    }
    CHECK_THAT(supervised_kernel(pair, t, h, Side::Left).value, WithinAbs(0.5, 1e-12));

    // Right side: outcome I(T > U) around U = t, no complement.
    std::vector<SubjectRecord> right;
    for (int i = 0; i < 20; ++i) {
        const double off = 0.01 * (i + 1);
        right.push_back(labeled_record("r" + std::to_string(i), 0.0, t - off, t - off, CensorCode::RightCensored));
        right.push_back(labeled_record("s" + std::to_string(i), 0.0, t + off, t + off, CensorCode::RightCensored));
        right.push_back(labeled_record("e" + std::to_string(i), 0.0, t + off, 0.1, CensorCode::Exact));
    }
    const PointEstimate su = supervised_kernel(right, t, h, Side::Right);
    CHECK(su.method == Method::SU);
    CHECK(su.value > 0.6);

    try {
        supervised_kernel(pair, 10.0, 0.1, Side::Left);
        FAIL("expected InsufficientKernelMass");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::InsufficientKernelMass);
    }
}

TEST_CASE("semi-supervised estimator with a zero coefficient is one half")
{
    const Dataset d = small_fixture(2, 40, 100);
    FitResult zero;
    zero.beta = Vector::Zero(1);
    const auto spec = BasisSpec::intercept_only();
    CHECK_THAT(semisup_exact(d.labeled, d.unlabeled, zero, 1.0, spec, true).value, WithinAbs(0.5, 1e-15));
    CHECK_THAT(semisup_kernel(d.labeled, d.unlabeled, zero, 1.0, 0.3, 0.4, Side::Left, spec, true).value,
               WithinAbs(0.5, 1e-15));
    CHECK_THAT(semisup_kernel(d.labeled, d.unlabeled, zero, 1.0, 0.3, 0.4, Side::Right, spec, false).value,
               WithinAbs(0.5, 1e-15));
}

TEST_CASE("intercept-only semi-supervised estimates collapse to the supervised ones")
{
    const Dataset d = small_fixture(3, 60, 0);
    std::vector<SubjectRecord> same;
    for (const auto& r : d.labeled) same.push_back(strip(r));
    const auto spec = BasisSpec::intercept_only();
    const double t = 1.0;
    const FitResult plain = fit_exact_label(d.labeled, t, spec);
    const FitResult intr = fit_intrinsic_exact(d.labeled, same, t, spec, plain);
    const PointEstimate ss = semisup_exact(d.labeled, same, intr, t, spec, true);
    const PointEstimate sd = supervised_exact(d.labeled, t);
    CHECK_THAT(ss.value, WithinAbs(sd.value, 1e-8));
    CHECK(ss.method == Method::SSD);
    CHECK_THAT(ss.variance, WithinRel(sd.variance, 1e-6));

    // Kernel version: unlabeled anchors all at t, so the unlabeled weights are
    // constant and the estimate is g(intercept).
    std::vector<SubjectRecord> at_t;
    for (int i = 0; i < 20; ++i) at_t.push_back(unlabeled_record("u" + std::to_string(i), t, t + 1.0));
    const double h = 0.4;
    const FitResult kp = fit_kernel_label(d.labeled, t, h, Side::Left, spec);
    const FitResult ki = fit_intrinsic_kernel(d.labeled, at_t, t, h, 0.2, Side::Left, spec, kp);
    const PointEstimate ssl = semisup_kernel(d.labeled, at_t, ki, t, 0.2, h, Side::Left, spec, true);
    CHECK_THAT(ssl.value, WithinAbs(supervised_kernel(d.labeled, t, h, Side::Left).value, 1e-8));
}

TEST_CASE("covariance entries are products of influence residuals")
{
    SECTION("one labeled record")
    {
        std::vector<SubjectRecord> one{labeled_record("a", 0.8, 2.0, 1.5, CensorCode::Exact)};
        const double t = 1.0, h = 0.5;
        const auto spec = BasisSpec::intercept_only();
        Vector psi_d, psi_l, psi_u;
        const Design dd = label_design(one, LabelKind::Exact, t, 0.0, spec);
        const Design dl = label_design(one, LabelKind::Left, t, h, spec);
        const Design du = label_design(one, LabelKind::Right, t, h, spec);
        FitResult fit;
        fit.beta = Vector::Constant(1, 0.3);
        const Matrix unl_phi = Matrix::Ones(3, 1);
        const Vector uw = (Vector(3) << 0.5, 1.0, 1.5).finished();
        semisup_from_design(dd, unl_phi, uw, fit, LabelKind::Exact, true, t, 0.0, &psi_d);
        semisup_from_design(dl, unl_phi, uw, fit, LabelKind::Left, true, t, h, &psi_l);
        semisup_from_design(du, unl_phi, uw, fit, LabelKind::Right, true, t, h, &psi_u);
        Matrix psi(1, 3);
        psi << psi_d[0], psi_l[0], psi_u[0];
        const Matrix cov = Influence::plain(psi).covariance();
        // Residual of each label for the single record, over the unlabeled mean weight 1.
        const double g = 1.0 / (1.0 + std::exp(-0.3));
        const double rd = 1.0 * (1.0 - g);
        const double rl = scaled_kernel(0.8 - t, h) * (1.0 - g);
        const double ru = scaled_kernel(2.0 - t, h) * (0.0 - g);
        CHECK_THAT(cov(0, 1), WithinRel(rd * rl, 1e-12));
        CHECK_THAT(cov(0, 2), WithinRel(rd * ru, 1e-12));
        CHECK_THAT(cov(1, 2), WithinRel(rl * ru, 1e-12));
        CHECK_THAT(cov(1, 1), WithinRel(rl * rl, 1e-12));
    }
    SECTION("a component with zero residuals has a zero row and column")
    {
        Matrix psi = Matrix::Random(25, 3);
        psi.col(1).setZero();
        const Matrix cov = Influence::plain(psi).covariance();
        CHECK(cov.row(1).cwiseAbs().maxCoeff() == 0.0);
        CHECK(cov.col(1).cwiseAbs().maxCoeff() == 0.0);
        double direct = 0.0;
        for (Eigen::Index i = 0; i < 25; ++i) direct += psi(i, 0) * psi(i, 2);
        CHECK_THAT(cov(0, 2), WithinRel(direct / 625.0, 1e-12));
    }
}

TEST_CASE("estimate_all on simulated data respects ranges and symmetry")
{
    const auto gen = generate(setting(SettingId::S1), 250, 2000, 5);
    const Bandwidths bw = default_bandwidths(gen.data);
    const BasisSpec spec = BasisSpec::for_dataset(gen.data);
    const TimeGrid grid = build_time_grid(gen.data, 7, 0.2, 0.8);
    int present = 0;
    for (double t : grid.points()) {
        const AllEstimates all = estimate_all(gen.data.labeled, gen.data.unlabeled, t, bw, spec);
        const PointContext ctx = make_context(gen.data.labeled, gen.data.unlabeled, t, bw, spec);
        // The exact label is always estimable here; kernel labels may fail the
        // kernel-mass guard near the ends of the anchor distribution.
        CHECK(all.supervised.present[0]);
        for (const auto* tri : {&all.supervised, &all.semisupervised}) {
            CHECK((tri->covariance - tri->covariance.transpose()).cwiseAbs().maxCoeff() <= 1e-18);
            for (std::size_t j = 0; j < 3; ++j) {
                CHECK(tri->present[j] == all.supervised.present[j]);
                if (!tri->present[j]) {
                    CHECK(tri->absence_reason[j].find("InsufficientKernelMass") != std::string::npos);
                    continue;
                }
                const auto& c = tri->component[j];
                CHECK(c.value >= 0.0);
                CHECK(c.value <= 1.0);
                CHECK(c.variance >= 0.0);
                CHECK_THAT(tri->covariance(Eigen::Index(j), Eigen::Index(j)), WithinRel(c.variance, 1e-12));
            }
        }
        for (std::size_t j = 0; j < 3; ++j) {
            if (!all.semisupervised.present[j]) continue;
            ++present;
            CHECK(all.semisupervised.component[j].value > 0.0);
            CHECK(all.semisupervised.component[j].value < 1.0);
            REQUIRE(all.fits[j].has_value());
            // The used fit satisfies its calibration constraint.
            const auto& used = all.fits[j]->used;
            if (!used.separation) CHECK(std::abs(IntrinsicProblem(ctx.designs[j], 1.0).constraint(used.beta)) <= 1e-8);
        }
        CHECK(all.semisupervised.component[0].method == Method::SSD);
        if (all.semisupervised.present[1]) CHECK(all.semisupervised.component[1].method == Method::SSL);
        if (all.semisupervised.present[2]) CHECK(all.semisupervised.component[2].method == Method::SSU);
    }
    // Kernel components are present at most interior points.
    CHECK(present >= 12);
}

TEST_CASE("components failing their guards are reported absent")
{
    const auto gen = generate(setting(SettingId::S1), 40, 0, 8);
    const Bandwidths bw{0.05, 0.05, 0.05, 0.05};
    const AllEstimates all =
        estimate_all(gen.data.labeled, gen.data.unlabeled, 1.5, bw, BasisSpec::for_dataset(gen.data));
    CHECK_FALSE(all.supervised.present[1]);
    CHECK_FALSE(all.supervised.absence_reason[1].empty());
    CHECK(all.semisupervised.present_count() == 0);
    CHECK(all.semisupervised.absence_reason[0] == "no unlabeled data");
}
