#include <doctest.h>

#include <cmath>

#include "metricdim/errors.hpp"
#include "metricdim/nets.hpp"
#include "metricdim/packing.hpp"
#include "metricdim/transfer.hpp"
#include "metricdim/verify.hpp"

using namespace metricdim;

namespace {

PseudoMetricSpace line_space(std::vector<double> xs) {
    std::vector<std::string> ids;
    std::vector<std::vector<double>> coords;
    for (size_t i = 0; i < xs.size(); ++i) {
        ids.push_back("x" + std::to_string(i));
        coords.push_back({xs[i]});
    }
    return make_space_from_coords(std::move(ids), std::move(coords),
                                  MetricRule::Euclidean);
}

DiscreteMeasure uniform_measure(int n) {
    DiscreteMeasure m;
    m.mass.assign(n, 1.0 / n);
    m.total = 1.0;
    return m;
}

}  // namespace

TEST_CASE("ball mass basics") {
    auto s = line_space({0.0, 1.0});
    auto m = uniform_measure(2);
    CHECK(ball_mass(m, s, 0, 2.0) == doctest::Approx(1.0));
    CHECK(ball_mass(m, s, 0, 0.5) == doctest::Approx(0.5));
    CHECK(ball_mass(m, s, 0, 1.0) == doctest::Approx(0.5));  // open ball
}

TEST_CASE("two-point ratio profile peaks at 2") {
    auto s = line_space({0.0, 1.0});
    auto profile = ratio_profile(uniform_measure(2), s, 1.0);
    double max_ratio = 0.0;
    for (const auto& o : profile) {
        CHECK(o.mass_small > 0.0);
        CHECK(o.ratio >= 1.0);
        max_ratio = std::max(max_ratio, o.ratio);
    }
    CHECK(max_ratio == doctest::Approx(2.0));
}

TEST_CASE("singleton profile is trivial") {
    auto s = line_space({0.0});
    auto profile = ratio_profile(uniform_measure(1), s, 1.0);
    for (const auto& o : profile) CHECK(o.ratio == doctest::Approx(1.0));
}

TEST_CASE("zero-mass point is rejected") {
    auto s = line_space({0.0, 1.0});
    DiscreteMeasure m;
    m.mass = {1.0, 0.0};
    m.total = 1.0;
    CHECK_THROWS_AS(ratio_profile(m, s, 1.0), UnsupportedMeasure);
}

TEST_CASE("gamma 0 fits: upper is the max ratio, lower at least 1") {
    auto s = line_space({0.0, 0.3, 1.0});
    DiscreteMeasure m;
    m.mass = {0.5, 0.3, 0.2};
    m.total = 1.0;
    auto profile = ratio_profile(m, s, 1.0);
    double max_ratio = 0.0;
    for (const auto& o : profile) max_ratio = std::max(max_ratio, o.ratio);
    auto up = fit_measure_upper(profile, 0.0);
    auto lo = fit_measure_lower(profile, 0.0);
    CHECK(up.c == doctest::Approx(max_ratio));
    CHECK(lo.c >= 1.0);
    CHECK(lo.c == doctest::Approx(1.0));
}

TEST_CASE("scanner fits agree with materialized fits") {
    auto s = generate_cantor(1.0 / 3.0, 3, 0.0, 1.0);
    auto m = uniform_measure(s.size());
    RatioScanner scanner(s, m, 1.0);
    auto profile = ratio_profile(m, s, 1.0);
    for (double gamma : {0.0, 0.5, 1.0}) {
        CHECK(fit_measure_upper(scanner, gamma).c ==
              doctest::Approx(fit_measure_upper(profile, gamma).c));
        CHECK(fit_measure_lower(scanner, gamma).c ==
              doctest::Approx(fit_measure_lower(profile, gamma).c));
    }
}

TEST_CASE("doubling constant of the uniform pair is 2") {
    auto s = line_space({0.0, 1.0});
    CHECK(doubling_constant(uniform_measure(2), s, 3.0) == doctest::Approx(2.0));
}

TEST_CASE("doubling constant of a singleton is 1") {
    auto s = line_space({0.0});
    CHECK(doubling_constant(uniform_measure(1), s, 1.0) == doctest::Approx(1.0));
}

TEST_CASE("transport bound on a small constructed measure") {
    auto s = generate_cantor(1.0 / 3.0, 3, 0.0, 1.0);
    auto h = build_hierarchy(s, 102.0, true);
    auto k = TransferConstants::make(102.0, 1.0, 1.0, 0.0);
    auto build = build_measure(s, h, k);
    auto report = transport_bound_check(build.snapshots, build.measure, k, s, h);
    CHECK(report.ok());
    CHECK_FALSE(report.sampled);
    CHECK(report.checked > 0);
    CHECK(report.min_slack >= -1e-12);
}

TEST_CASE("trivial inequality holds for a constructed cantor measure") {
    auto s = generate_cantor(1.0 / 3.0, 4, 0.0, 1.0);
    auto h = build_hierarchy(s, 102.0, true);
    auto k = TransferConstants::make(102.0, 1.0, 1.0, 0.0);
    auto build = build_measure(s, h, k);

    const double cap = s.diameter / 0.99;
    auto packing = packing_profile(s, RadiiPolicy::Dyadic, CountMode::Exact, cap);
    RatioScanner scanner(s, build.measure, cap);
    auto report = trivial_inequality_report(packing, scanner, 1.0, 0.0, s.c_d);
    CHECK(report.upper_ok);
    CHECK(report.lower_ok);
}

TEST_CASE("trivial inequality checker flags fabricated data") {
    PackingObservation fake;
    fake.k = 2.0;
    fake.count = 1000;
    DimensionFit pack_up = fit_upper_dimension({fake}, 1.0);
    DimensionFit pack_lo = fit_lower_dimension({fake}, 0.0);

    MeasureFit meas_up;
    meas_up.gamma = 1.0;
    meas_up.c = 1.0;
    MeasureFit meas_lo;
    meas_lo.gamma = 0.0;
    meas_lo.c = 1.0;

    auto report = trivial_inequality_check(pack_up, pack_lo, meas_up, meas_lo, 1.0);
    CHECK_FALSE(report.upper_ok);
}

TEST_CASE("U' and L' follow from the fits by the k = 1/R substitution") {
    auto s = generate_cantor(1.0 / 3.0, 3, 0.0, 1.0);
    auto h = build_hierarchy(s, 102.0, true);
    auto k = TransferConstants::make(102.0, 1.0, 1.0, 0.0);
    auto build = build_measure(s, h, k);

    const double cap = s.diameter / 0.99;
    RatioScanner scanner(s, build.measure, cap);
    const double gamma = 1.0;
    auto up = fit_measure_upper(scanner, gamma);
    auto lo = fit_measure_lower(scanner, 0.0);
    (void)lo;

    // (U'): mu(B(x,R)) >= mu(B(x,top)) * (R/top)^gamma / C, instantiating
    // (U_gamma) at the pair (R, top).
    for (int c = 0; c < s.size(); ++c) {
        const double top = scanner.radii(c).back();
        const double total = scanner.mass_at(c, top);
        for (double r : scanner.radii(c)) {
            CHECK(scanner.mass_at(c, r) >=
                  total * std::pow(r / top, gamma) / up.c * (1 - 1e-12));
        }
    }
}

TEST_CASE("scan_measure_dimension produces a monotone upper curve") {
    auto s = line_space({0.0, 0.25, 1.0});
    DiscreteMeasure m;
    m.mass = {0.25, 0.25, 0.5};
    m.total = 1.0;
    RatioScanner scanner(s, m, 1.0);
    auto curve = scan_measure_dimension(scanner, FitSide::Upper, 0.25, 1.0);
    for (size_t i = 1; i < curve.size(); ++i)
        CHECK(curve[i].second <= curve[i - 1].second + 1e-12);
    CHECK_THROWS_AS(scan_measure_dimension(scanner, FitSide::Upper, 0.0, 1.0),
                    InvalidResolution);
}
