// Simulates one dataset from setting s1 and prints SEEDS and CSL estimates of
// P(T >= t) next to the true values on a coarse grid.

#include <cstdio>

#include "seeds/harness.hpp"
#include "seeds/simgen.hpp"

int main()
{
    const seeds::SettingSpec spec = seeds::setting(seeds::SettingId::S1);
    const auto generated = seeds::generate(spec, 250, 5000, 2024);

    const auto censoring = seeds::censoring_summary(generated.data);
    std::printf("labeled %zu, unlabeled %zu; exact %.2f, right %.2f, left %.2f\n", generated.data.n(),
                generated.data.N(), censoring.exact, censoring.right, censoring.left);

    seeds::AnalysisOptions opt;
    opt.grid = seeds::GridSpec::parse("9:0.1:0.9");
    const seeds::EstimateReport report = seeds::run_estimate(generated.data, opt);

    std::printf("%6s %7s %14s %14s %6s\n", "t", "truth", "seeds (se)", "csl (se)", "re");
    for (const auto& row : report.rows) {
        const double truth = seeds::true_survival(spec, row.t, 100000, 1).value;
        std::printf("%6.3f %7.3f", row.t, truth);
        for (const auto* e : {&row.seeds, &row.csl}) {
            if (*e) std::printf("  %5.3f (%5.3f)", (*e)->value, (*e)->standard_error());
            else std::printf("  %14s", "NA");
        }
        if (row.re) std::printf(" %6.2f", *row.re);
        std::printf("\n");
    }
}
