#include "support.hpp"

#include <algorithm>
#include <numeric>

#include "seeds/core_types.hpp"
#include "seeds/simgen.hpp"

using namespace seeds;
using seeds::test::labeled_record;
using seeds::test::unlabeled_record;
using Catch::Matchers::WithinAbs;

TEST_CASE("cumulative covariate counts events inside the clamped window")
{
    const auto r = unlabeled_record("a", 1.0, 2.0, {}, {}, {}, {1.2, 1.8});
    CHECK(cumulative_covariate(r, 1.5) == 1.0);
    CHECK(cumulative_covariate(r, 0.5) == 0.0);
    CHECK(cumulative_covariate(r, 1.0) == 0.0);
    CHECK(cumulative_covariate(r, 1.8) == 2.0);

    // Brute force: events e with L < e <= min(t, U).
    for (double t : {0.0, 1.1, 1.2, 1.79, 2.0, 5.0}) {
        const double upper = std::min(t, r.right);
        const auto expected = std::count_if(r.process_events.begin(), r.process_events.end(),
                                            [&](double e) { return e > r.left && e <= upper; });
        CHECK(cumulative_covariate(r, t) == static_cast<double>(expected));
    }
}

TEST_CASE("cumulative covariate is nondecreasing and flat beyond U")
{
    Rng rng(11);
    for (int rep = 0; rep < 50; ++rep) {
        const double left = rng.uniform(0.0, 2.0);
        const double right = left + rng.uniform(0.1, 3.0);
        std::vector<double> ev;
        for (double s = left + rng.exponential(3.0); s <= right; s += rng.exponential(3.0)) ev.push_back(s);
        const auto r = unlabeled_record("p", left, right, {}, {}, {}, ev);
        double prev = -1.0;
        for (double t = left - 1.0; t < right + 1.0; t += 0.01) {
            const double c = cumulative_covariate(r, t);
            CHECK(c >= prev);
            prev = c;
            if (t >= right) CHECK(c == static_cast<double>(ev.size()));
        }
    }
}

TEST_CASE("derived labels of the three status codes")
{
    const auto exact = derive_labels(labeled_record("e", 1, 3, 2, CensorCode::Exact));
    CHECK(exact.exact_indicator(1.5) == 1);
    CHECK(exact.at_risk(1.5) == 1);
    CHECK(exact.left_label == CurrentStatusLabel{1.0, 1});
    CHECK(exact.right_label == CurrentStatusLabel{3.0, 0});

    const auto left = derive_labels(labeled_record("l", 1, 3, 1, CensorCode::LeftCensored));
    CHECK(left.exact_indicator(1.5) == 0);
    CHECK(left.left_label == CurrentStatusLabel{1.0, 0});
    CHECK(left.right_label == CurrentStatusLabel{3.0, 0});

    const auto right = derive_labels(labeled_record("r", 1, 3, 3, CensorCode::RightCensored));
    CHECK(right.at_risk(3.5) == 0);
    CHECK(right.right_label == CurrentStatusLabel{3.0, 1});

    CHECK_THROWS_AS(derive_labels(unlabeled_record("u", 1, 3)), Error);
    try {
        derive_labels(unlabeled_record("u", 1, 3));
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::MissingLabel);
    }
}

TEST_CASE("exact indicator never exceeds the at-risk indicator")
{
    const auto gen = generate(setting(SettingId::S1), 500, 0, 3);
    for (const auto& r : gen.data.labeled) {
        const DerivedLabels d = derive_labels(r);
        CHECK(derive_labels(r) == d);
        CHECK(d.left_label.indicator == (*r.status == CensorCode::LeftCensored ? 0 : 1));
        CHECK(d.right_label.indicator == (*r.status == CensorCode::RightCensored ? 1 : 0));
        for (double t = 0.0; t < 6.0; t += 0.05) CHECK(d.exact_indicator(t) <= d.at_risk(t));
    }
}

TEST_CASE("record validation names the broken rule")
{
    auto rule_of = [](const SubjectRecord& r) -> std::string {
        try {
            validate(r);
        } catch (const InvariantFailure& e) {
            return e.rule();
        }
        return "";
    };
    CHECK(rule_of(labeled_record("ok", 1, 3, 2, CensorCode::Exact, {1.5}, {CensorCode::Exact})).empty());
    CHECK(rule_of(labeled_record("a", 3, 3, 3, CensorCode::Exact)) == "L<U");
    CHECK(rule_of(labeled_record("b", 1, 3, 2, CensorCode::RightCensored)) == "X coherent with delta");
    CHECK(rule_of(labeled_record("c", 1, 3, 1, CensorCode::LeftCensored, {4.0}, {CensorCode::RightCensored})) ==
          "L<=Xstar<=U");
    CHECK(rule_of(labeled_record("d", 1, 3, 2, CensorCode::Exact, {2.0}, {CensorCode::LeftCensored})) ==
          "Xstar coherent with deltastar");
    CHECK(rule_of(unlabeled_record("e", 1, 3, {}, {}, {}, {2.5, 2.0})) == "events sorted");
    CHECK(rule_of(unlabeled_record("f", 1, 3, {}, {}, {}, {1.0})) == "events in (L,U]");

    // The bounds-only check accepts a censored surrogate strictly inside the window.
    const auto loose = labeled_record("g", 1, 3, 2, CensorCode::Exact, {1.5}, {CensorCode::RightCensored});
    CHECK_NOTHROW(validate(loose, SurrogateCheck::Bounds));
    CHECK_THROWS_AS(validate(loose), InvariantFailure);
}

TEST_CASE("dataset validation checks shared dimensions")
{
    Dataset d;
    CHECK_THROWS_AS(validate(d), Error);
    d.labeled.push_back(labeled_record("1", 0, 1, 0.5, CensorCode::Exact, {0.5}, {CensorCode::Exact}));
    d.unlabeled.push_back(unlabeled_record("2", 0, 1));
    try {
        validate(d);
        FAIL("expected DimensionMismatch");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::DimensionMismatch);
    }
}

TEST_CASE("linear interpolation quantile")
{
    std::vector<double> v(100);
    std::iota(v.begin(), v.end(), 1.0);
    // k = 1 + (m - 1) p on 1..100 gives the value k itself.
    CHECK_THAT(quantile(v, 0.1), WithinAbs(10.9, 1e-12));
    CHECK_THAT(quantile(v, 0.9), WithinAbs(90.1, 1e-12));
    CHECK(quantile({3.0, 1.0, 2.0}, 0.5) == 2.0);
    CHECK_THROWS_AS(quantile({}, 0.5), Error);
}

TEST_CASE("time grid from pooled observed times")
{
    // 50 unlabeled windows (2k-1, 2k] pool the times 1..100.
    Dataset d;
    for (int k = 1; k <= 50; ++k) d.unlabeled.push_back(unlabeled_record(std::to_string(k), 2 * k - 1, 2 * k));
    const TimeGrid g = build_time_grid(d, 2, 0.1, 0.9);
    REQUIRE(g.size() == 2);
    CHECK_THAT(g[0], WithinAbs(10.9, 1e-12));
    CHECK_THAT(g[1], WithinAbs(90.1, 1e-12));

    const TimeGrid full = build_time_grid(d, 2, 0.0, 1.0);
    CHECK(full[0] == 1.0);
    CHECK(full[1] == 100.0);

    CHECK_THROWS_AS(build_time_grid(Dataset{}, 5, 0.1, 0.9), Error);
    CHECK_THROWS_AS(build_time_grid(d, 1, 0.1, 0.9), Error);
    CHECK_THROWS_AS(build_time_grid(d, 5, 0.9, 0.1), Error);
}

TEST_CASE("fifty point grid on simulated data is strictly increasing and inside the data span")
{
    const auto gen = generate(setting(SettingId::S1), 250, 5000, 7);
    const TimeGrid g = build_time_grid(gen.data, 50, 0.1, 0.9);
    REQUIRE(g.size() == 50);
    const auto times = pooled_observed_times(gen.data);
    const auto [lo, hi] = std::minmax_element(times.begin(), times.end());
    for (std::size_t i = 0; i < g.size(); ++i) {
        if (i > 0) CHECK(g[i] > g[i - 1]);
        CHECK(g[i] >= *lo);
        CHECK(g[i] <= *hi);
    }
    CHECK_THROWS_AS(TimeGrid({1.0, 1.0}), Error);
}

TEST_CASE("censor code conversions")
{
    CHECK(censor_code_from_int(1) == CensorCode::Exact);
    CHECK(censor_code_from_int(2) == CensorCode::RightCensored);
    CHECK(censor_code_from_int(3) == CensorCode::LeftCensored);
    CHECK_THROWS_AS(censor_code_from_int(0), Error);
    CHECK(classify(0.5, 1, 2) == CensorCode::LeftCensored);
    CHECK(classify(2.5, 1, 2) == CensorCode::RightCensored);
    CHECK(classify(2.0, 1, 2) == CensorCode::Exact);
    CHECK(censor_time(0.5, 1, 2) == 1.0);
    CHECK(censor_time(2.5, 1, 2) == 2.0);
}
