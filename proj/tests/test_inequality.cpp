/// @file test_inequality.cpp
/// The randomized inequality lab: constant fitting, the Poisson-bracket
/// integral oracle, each lemma check at reduced sample counts, stratification
/// tallies, determinism, and the report CSV layout.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "blab/inequality.hpp"

#include <cmath>

using namespace blab;

namespace {

SampleSpec small_spec(std::size_t n = 1500) {
    SampleSpec spec;
    spec.n_train = n;
    spec.n_holdout = n;
    spec.seed = 2026;
    PhysicalParams p;
    p.nu = p.mu = 1e-3;
    p.gamma = 1.0;
    p.eps = 0.5;
    p.s = 2.0;
    p.delta = 0.25;
    spec.mp = MultiplierParams::from_physical(p);
    return spec;
}

void check_report(const RatioReport& r) {
    INFO("lemma ", r.lemma, " C_fit=", r.C_fit, " holdout=", r.max_holdout_ratio,
         " worst=", r.worst_point);
    CHECK(r.pass);
    CHECK(r.n_train >= 100);
    CHECK(r.n_holdout >= 100);
    CHECK(r.max_train_ratio > 0.0);
    CHECK(r.C_fit == doctest::Approx(1.05 * r.max_train_ratio).epsilon(1e-12));
    CHECK(r.max_holdout_ratio <= r.C_fit);
    CHECK(std::isfinite(r.max_holdout_ratio));
    CHECK(r.pass == (r.max_holdout_ratio <= r.C_fit));
}

} // namespace

// ---- fit_constant ----

TEST_CASE("fit_constant is 1.05x the training max and rejects empties") {
    std::vector<double> ratios = {0.5, 2.0, 1.25};
    CHECK(fit_constant(ratios) == doctest::Approx(2.1).epsilon(1e-15));
    std::vector<double> constant(100, 3.0);
    CHECK(fit_constant(constant) == doctest::Approx(3.15).epsilon(1e-15));
    CHECK_THROWS(fit_constant({}));
    // held-out exceedance is a fail by definition
    double C = fit_constant(ratios);
    double adversarial_holdout = 2.5;
    CHECK_FALSE(adversarial_holdout <= C);
}

// ---- poisson_integral ----

TEST_CASE("poisson_integral closed form at lambda = 1") {
    // int dEta / (|a,eta| |b,z-eta|)^2 = pi (a+b) / (a b ((a+b)^2 + z^2))
    auto closed = [](double a, double b, double z) {
        return M_PI * (a + b) / (a * b * ((a + b) * (a + b) + z * z));
    };
    CHECK(poisson_integral(1.0, 1.0, 0.0, 1.0) ==
          doctest::Approx(M_PI / 2.0).epsilon(1e-9));
    for (double a : {0.3, 1.0, 4.0})
        for (double b : {0.5, 2.0})
            for (double z : {0.0, 1.5, -20.0})
                CHECK(poisson_integral(a, b, z, 1.0) ==
                      doctest::Approx(closed(a, b, z)).epsilon(1e-8));
}

TEST_CASE("poisson bound ratio stays bounded as z grows") {
    // ratio = LHS * |ab|^lam |a+b, z|^{1+lam} / |a+b|^lam with a=b=lam=1
    double prev_ok = 0.0;
    for (double z : {0.0, 10.0, 100.0, 1000.0}) {
        double lhs = poisson_integral(1.0, 1.0, z, 1.0);
        double ratio = lhs * std::pow(std::hypot(2.0, z), 2.0) / 2.0;
        CHECK(ratio < 2.0 * M_PI);
        CHECK(ratio > 1.0);
        prev_ok = ratio;
    }
    (void)prev_ok;
}

// ---- individual checks ----

TEST_CASE("lemma 2.1 Poisson bound batch passes and pins the pi point") {
    SampleSpec spec = small_spec();
    RatioReport r = check_poisson_bound(spec);
    check_report(r);
    CHECK(r.lemma == "lemma2.1-poisson");
    // the pinned training point (a=b=1, z=0, lambda=1) has ratio pi, so the
    // fitted constant can never fall below it
    CHECK(r.max_train_ratio >= M_PI - 1e-9);
    CHECK(r.C_fit >= M_PI);
    double lhs = poisson_integral(1.0, 1.0, 0.0, 1.0, 1e-12);
    double ratio = lhs * 1.0 * std::pow(std::hypot(2.0, 0.0), 2.0) / 2.0;
    CHECK(ratio == doctest::Approx(M_PI).epsilon(1e-6));
}

TEST_CASE("lemma 2.2 damping bound batch") {
    SampleSpec spec = small_spec(600);
    RatioReport r = check_damping_bound(spec);
    check_report(r);
    CHECK(r.lemma == "lemma2.2-damping");
}

TEST_CASE("lemma 3.1 M0 gradient batch") {
    SampleSpec spec = small_spec();
    RatioReport r = check_m0_gradient(spec);
    check_report(r);
    CHECK(r.lemma == "lemma3.1-m0-gradient");
}

TEST_CASE("lemma 3.2 M0 difference batch with case stratification") {
    SampleSpec spec = small_spec();
    RatioReport r = check_m0_difference(spec);
    check_report(r);
    CHECK(r.lemma == "lemma3.2-m0-difference");
    std::size_t total = r.n_case1 + r.n_case2;
    REQUIRE(total > 0);
    CHECK(r.n_case1 >= std::size_t(0.3 * total));
    CHECK(r.n_case2 >= std::size_t(0.3 * total));
}

TEST_CASE("lemma 3.3 A_k commutator batches, both displays") {
    SampleSpec spec = small_spec();
    std::vector<RatioReport> rs = check_ak_commutators(spec);
    REQUIRE(rs.size() == 2);
    CHECK(rs[0].lemma == "lemma3.3-ak1");
    CHECK(rs[1].lemma == "lemma3.3-ak2");
    for (const auto& r : rs) check_report(r);
}

TEST_CASE("lemma 5.1 Lipschitz batches, four components") {
    SampleSpec spec = small_spec();
    std::vector<RatioReport> rs = check_m_lipschitz(spec);
    REQUIRE(rs.size() == 4);
    CHECK(rs[0].lemma == "lemma5.1-m1");
    CHECK(rs[1].lemma == "lemma5.1-m2");
    CHECK(rs[2].lemma == "lemma5.1-m3");
    CHECK(rs[3].lemma == "lemma5.1-m0");
    for (const auto& r : rs) check_report(r);
}

TEST_CASE("lemma 5.2 M commutator batches, three displays") {
    SampleSpec spec = small_spec(800);
    std::vector<RatioReport> rs = check_m_commutators(spec);
    REQUIRE(rs.size() == 3);
    CHECK(rs[0].lemma == "lemma5.2-d1");
    CHECK(rs[1].lemma == "lemma5.2-d2");
    CHECK(rs[2].lemma == "lemma5.2-d3");
    for (const auto& r : rs) {
        check_report(r);
        // the case-2 region is a thin set under this sampler, so only
        // require that both proof cases are exercised at all
        CHECK(r.n_case1 >= 1);
        CHECK(r.n_case2 >= 1);
    }
}

TEST_CASE("trilinear batches") {
    SampleSpec spec = small_spec(400);
    std::vector<RatioReport> rs = check_trilinear_bounds(spec);
    REQUIRE(rs.size() == 3);
    CHECK(rs[0].lemma == "lemma3.4-trilinear");
    CHECK(rs[1].lemma == "lemma5.4-trilinear");
    CHECK(rs[2].lemma == "lemma5.5-trilinear");
    for (const auto& r : rs) {
        INFO("lemma ", r.lemma, " C_fit=", r.C_fit, " holdout=", r.max_holdout_ratio);
        CHECK(r.pass);
        CHECK(r.C_fit == doctest::Approx(1.05 * r.max_train_ratio).epsilon(1e-12));
    }
}

// ---- determinism ----

TEST_CASE("checks are bit-for-bit deterministic") {
    SampleSpec spec = small_spec(500);
    RatioReport a = check_m0_difference(spec);
    RatioReport b = check_m0_difference(spec);
    CHECK(a.max_train_ratio == b.max_train_ratio);
    CHECK(a.max_holdout_ratio == b.max_holdout_ratio);
    CHECK(a.C_fit == b.C_fit);
    CHECK(a.worst_point == b.worst_point);
    CHECK(a.n_case1 == b.n_case1);

    spec.seed = 2027;
    RatioReport c = check_m0_difference(spec);
    CHECK(c.max_holdout_ratio != a.max_holdout_ratio);
}

// ---- suite driver ----

TEST_CASE("run_lemma_suite filters and validates ids") {
    SampleSpec spec = small_spec(300);
    std::vector<RatioReport> one = run_lemma_suite(spec, "lemma2.1");
    REQUIRE(one.size() == 1);
    CHECK(one[0].lemma == "lemma2.1-poisson");

    std::vector<RatioReport> four = run_lemma_suite(spec, "lemma5.1");
    CHECK(four.size() == 4);

    CHECK_THROWS(run_lemma_suite(spec, "lemma9.9"));

    std::vector<std::string> ids = known_lemma_ids();
    CHECK(ids.size() >= 8);
    bool has_all = false;
    for (const auto& id : ids) has_all = has_all || id == "all";
    CHECK(has_all);
}

TEST_CASE("spec validation rejects nonsense") {
    SampleSpec spec = small_spec();
    spec.n_train = 0;
    CHECK_THROWS(spec.validate());
    spec = small_spec();
    spec.t_max = -1.0;
    CHECK_THROWS(spec.validate());
    spec = small_spec();
    spec.k_max = 0;
    CHECK_THROWS(spec.validate());
}

// ---- report CSV ----

TEST_CASE("ratio report CSV layout") {
    std::string header = ratio_report_csv_header();
    CHECK(header.find("lemma") == 0);
    CHECK(header.find("C_fit") != std::string::npos);
    CHECK(header.find("pass") != std::string::npos);

    RatioReport r;
    r.lemma = "lemma0.0";
    r.n_train = 10;
    r.n_holdout = 10;
    r.max_train_ratio = 2.0;
    r.C_fit = 2.1;
    r.max_holdout_ratio = 1.9;
    r.pass = true;
    std::string line = ratio_report_csv_line(r);
    CHECK(line.find("lemma0.0") == 0);
    CHECK(line.find("2.1") != std::string::npos);
    std::string summary = ratio_report_summary(r);
    CHECK(summary.find("lemma0.0") != std::string::npos);
    CHECK(summary.find("PASS") != std::string::npos);
}
