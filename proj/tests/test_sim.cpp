#include <catch2/catch_amalgamated.hpp>

#include "sumrank/sim.hpp"

using namespace sumrank;

TEST_CASE("incomplete special functions match an independent reference") {
    // frozen reference values (scipy.special / scipy.stats)
    CHECK(stats::beta_inc(2.5, 3.5, 0.3) == Catch::Approx(0.296752989296).epsilon(1e-9));
    CHECK(stats::beta_inc(7, 11, 0.62) == Catch::Approx(0.976638206364).epsilon(1e-9));
    CHECK(stats::gamma_p(3.5, 2.2) == Catch::Approx(0.267276916436).epsilon(1e-9));
    CHECK(stats::chi2_sf(12.5, 7) == Catch::Approx(0.0852692751583).epsilon(1e-9));
    CHECK(stats::chi2_sf(30.1, 40) == Catch::Approx(0.87241286497).epsilon(1e-9));
}

TEST_CASE("Clopper-Pearson intervals match the reference") {
    auto close = [](std::pair<double, double> got, double lo, double hi) {
        CHECK(got.first == Catch::Approx(lo).margin(1e-9));
        CHECK(got.second == Catch::Approx(hi).margin(1e-9));
    };
    close(stats::clopper_pearson(0, 10), 0.0, 0.308497107819);
    close(stats::clopper_pearson(1, 10), 0.00252857854446, 0.445016117028);
    close(stats::clopper_pearson(5, 10), 0.187086028447, 0.812913971553);
    close(stats::clopper_pearson(10, 10), 0.691502892181, 1.0);
    close(stats::clopper_pearson(100, 7700), 0.0105789030414, 0.0157734556579);
    close(stats::clopper_pearson(7, 50000), 5.62890542413e-05, 0.000288432096644);
    close(stats::clopper_pearson(13, 50000), 0.000138446080536, 0.000444566879342);
    // the interval contains the point estimate
    for (std::uint64_t f : {0ull, 3ull, 9ull}) {
        auto [lo, hi] = stats::clopper_pearson(f, 20);
        double p = static_cast<double>(f) / 20.0;
        CHECK(lo <= p);
        CHECK(hi >= p);
    }
}

TEST_CASE("bound values reproduce the reference table") {
    // q=3, m=4, l=2, n=8, k=3
    auto near3 = [](double got, double want) {  // three significant figures
        CHECK(got == Catch::Approx(want).epsilon(5e-3));
    };
    near3(bounds::standard(3, 4, 2, 4, 8, 3, 3.0), 2.015e-11);
    near3(bounds::standard(3, 4, 2, 4, 8, 3, 4.0), 7.026e-02);
    near3(bounds::standard(3, 4, 2, 5, 8, 3, 3.0), 3.071e-15);
    near3(bounds::standard(3, 4, 2, 5, 8, 3, 4.0), 8.674e-04);
    near3(bounds::improved(3, 4, 2, 4, 8, 3, 3.0), 1.143e-11);
    near3(bounds::improved(3, 4, 2, 4, 8, 3, 4.0), 3.985e-02);
    near3(bounds::improved(3, 4, 2, 5, 8, 3, 3.0), 1.742e-15);
    near3(bounds::improved(3, 4, 2, 5, 8, 3, 4.0), 4.920e-04);
    // improved/standard ratio is kappa_{q^m}/kappa_q
    double ratio = bounds::improved(3, 4, 2, 4, 8, 3, 4.0) / bounds::standard(3, 4, 2, 4, 8, 3, 4.0);
    CHECK(ratio == Catch::Approx(0.567).epsilon(2e-3));
    CHECK_THROWS_AS(bounds::standard(3, 4, 2, 4, 8, 3, 4.5), Error);
}

TEST_CASE("config validation") {
    sim::ExperimentConfig cfg;
    cfg.tau = 1;
    cfg.trials = 0;
    cfg.failures_target = 0;
    CHECK_THROWS_AS(sim::run_experiment(cfg), Error);  // no stop rule
    cfg.trials = 10;
    cfg.failures_target = 10;
    CHECK_THROWS_AS(sim::run_experiment(cfg), Error);  // both stop rules
    cfg.failures_target = 0;
    cfg.tau = 5;  // beyond radius for s=4: tau_max = 4
    CHECK_THROWS_AS(sim::run_experiment(cfg), Error);
}

TEST_CASE("zero-weight experiments never fail") {
    sim::ExperimentConfig cfg;
    cfg.tau = 0;
    cfg.trials = 100;
    cfg.s = 2;
    cfg.seed = 3;
    auto rep = sim::run_experiment(cfg);
    CHECK(rep.trials == 100);
    CHECK(rep.failures == 0);
    CHECK(rep.rate == 0.0);
}

TEST_CASE("guaranteed radius gives zero failures in both modes") {
    for (auto mode : {sim::Mode::vilrs, sim::Mode::hilrs}) {
        sim::ExperimentConfig cfg;
        cfg.mode = mode;
        cfg.s = 3;
        cfg.tau = 2;  // <= (n-k)/2
        cfg.trials = 400;
        cfg.seed = 11;
        auto rep = sim::run_experiment(cfg);
        CHECK(rep.failures == 0);
    }
}

TEST_CASE("reports are identical for any worker count") {
    for (auto mode : {sim::Mode::vilrs, sim::Mode::hilrs}) {
        sim::ExperimentConfig base;
        base.mode = mode;
        base.s = 4;
        base.tau = 4;
        base.trials = 600;
        base.seed = 20240809;
        base.workers = 1;
        auto r1 = sim::run_experiment(base);
        base.workers = 2;
        auto r2 = sim::run_experiment(base);
        base.workers = 7;
        auto r3 = sim::run_experiment(base);
        CHECK(r1.failures == r2.failures);
        CHECK(r2.failures == r3.failures);
        CHECK(r1.trials == r2.trials);
        CHECK(r1.miscorrections == r2.miscorrections);
        // csv rows agree except for the runtime column
        auto strip_runtime = [](std::string row) { return row.substr(0, row.rfind(',')); };
        CHECK(strip_runtime(sim::csv_row(r1)) == strip_runtime(sim::csv_row(r2)));
        CHECK(strip_runtime(sim::csv_row(r2)) == strip_runtime(sim::csv_row(r3)));
    }
}

TEST_CASE("collect-failures stop rule stops deterministically") {
    sim::ExperimentConfig cfg;
    cfg.mode = sim::Mode::vilrs;
    cfg.s = 4;
    cfg.tau = 4;
    cfg.failures_target = 5;
    cfg.trial_cap = 100000;
    cfg.seed = 77;
    cfg.workers = 1;
    auto r1 = sim::run_experiment(cfg);
    cfg.workers = 3;
    auto r2 = sim::run_experiment(cfg);
    CHECK(r1.failures >= 5);
    CHECK(r1.trials == r2.trials);
    CHECK(r1.failures == r2.failures);
    // the empirical rate is consistent with the theoretical bound
    CHECK(r1.ci_lo <= bounds::standard(3, 4, 2, 4, 8, 3, 4.0));
}

TEST_CASE("erasure experiments in the probabilistic regime respect the bound") {
    sim::ExperimentConfig cfg;
    cfg.mode = sim::Mode::hilrs;
    cfg.s = 4;
    cfg.tF = 2;
    cfg.tR = 1;
    cfg.tC = 1;
    cfg.trials = 400;
    cfg.seed = 5;
    auto rep = sim::run_experiment(cfg);
    CHECK(rep.trials == 400);
    CHECK(rep.mean_erasure_attempts >= 1.0);
    // effective weight 2 + 4/5*2 = 3.6 <= 4: within the radius so bounds exist
    CHECK(rep.bound_std > 0.0);
    CHECK(rep.ci_lo <= rep.bound_std);
}

TEST_CASE("csv row shape matches the declared header") {
    sim::ExperimentConfig cfg;
    cfg.tau = 1;
    cfg.trials = 10;
    cfg.s = 2;
    auto rep = sim::run_experiment(cfg);
    auto count_cols = [](const std::string& s) {
        int c = 1;
        for (char ch : s) c += ch == ',';
        return c;
    };
    CHECK(count_cols(sim::csv_header()) == count_cols(sim::csv_row(rep)));
    CHECK(sim::json_sidecar(rep).find("\"trials\": 10") != std::string::npos);
}
