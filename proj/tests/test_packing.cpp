#include <doctest.h>

#include <cmath>
#include <random>

#include "metricdim/errors.hpp"
#include "metricdim/packing.hpp"

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

// Independent oracle: exhaustive subset enumeration.
int brute_force_packing(const PseudoMetricSpace& s, const std::vector<int>& members,
                        double separation) {
    int best = 0;
    const int n = static_cast<int>(members.size());
    for (int mask = 0; mask < (1 << n); ++mask) {
        bool ok = true;
        int count = 0;
        for (int i = 0; i < n && ok; ++i) {
            if (!(mask >> i & 1)) continue;
            ++count;
            for (int j = i + 1; j < n && ok; ++j)
                if ((mask >> j & 1) && s.dist(members[i], members[j]) < separation)
                    ok = false;
        }
        if (ok) best = std::max(best, count);
    }
    return best;
}

std::vector<int> all_points(const PseudoMetricSpace& s) {
    std::vector<int> v(s.size());
    for (int i = 0; i < s.size(); ++i) v[i] = i;
    return v;
}

}  // namespace

TEST_CASE("greedy on a three-point line") {
    auto s = line_space({0.0, 0.4, 1.0});
    auto out = greedy_separated(s, all_points(s), 0.5);
    CHECK(out == std::vector<int>{0, 2});
    // Maximality: the rejected point is within the separation of a member.
    CHECK(s.dist(1, 0) < 0.5);
}

TEST_CASE("greedy keeps everything when already separated") {
    auto s = line_space({0.0, 0.5, 1.0});
    CHECK(greedy_separated(s, all_points(s), 0.5).size() == 3);
    auto single = line_space({0.0});
    CHECK(greedy_separated(single, {0}, 0.5) == std::vector<int>{0});
}

TEST_CASE("exact packing number on four points") {
    auto s = line_space({0.0, 0.3, 0.6, 1.0});
    CHECK(exact_packing_number(s, all_points(s), 0.35) == 3);
    CHECK(exact_packing_number(s, all_points(s), 0.35) ==
          brute_force_packing(s, all_points(s), 0.35));
    CHECK(exact_packing_number(s, all_points(s), 2.0) == 1);
}

TEST_CASE("exact packing on a pair") {
    auto s = line_space({0.0, 1.0});
    CHECK(exact_packing_number(s, {0, 1}, 0.5) == 2);
}

TEST_CASE("oracle cap enforced") {
    std::vector<double> xs;
    for (int i = 0; i < 30; ++i) xs.push_back(i);
    auto s = line_space(xs);
    CHECK_THROWS_AS(exact_packing_number(s, all_points(s), 0.5, 24),
                    OracleTooLarge);
}

TEST_CASE("profile of a two-point space") {
    auto s = line_space({0.0, 1.0});
    auto profile = packing_profile(s, RadiiPolicy::Spectrum, CountMode::Exact);
    bool saw_single = false, saw_pair = false;
    for (const auto& o : profile) {
        CHECK(o.count >= 1);
        CHECK(o.k >= 1.0);
        if (o.count == 1) saw_single = true;
        if (o.count == 2 && o.r_big > 1.0 && o.r_small < 1.0) saw_pair = true;
    }
    CHECK(saw_single);
    CHECK(saw_pair);
}

TEST_CASE("count is 1 at k = 1 below the minimum distance") {
    auto s = line_space({0.0, 0.3, 0.9});
    for (int c = 0; c < s.size(); ++c) {
        auto ball = make_ball(s, c, 0.1);
        CHECK(exact_packing_number(s, ball.members, 0.1) == 1);
    }
}

TEST_CASE("level-4 cantor ball holds 16 separated left endpoints") {
    auto s = generate_cantor(1.0 / 3.0, 4, 0.0, 1.0);
    const double r = 1.5 * std::pow(3.0, -4.0);
    auto ball = make_ball(s, 0, 1.01);
    REQUIRE(ball.members.size() == 32);
    const int exact = exact_packing_number(s, ball.members, r, 32);

    // Oracle: group the ball members into too-close clusters (transitive
    // closure of dist < r). Distinct clusters sit farther than r apart, so
    // the global maximum is the sum of per-cluster brute-force maxima.
    std::vector<int> cluster(ball.members.size());
    int clusters = 0;
    for (size_t i = 0; i < ball.members.size(); ++i) {
        cluster[i] = -1;
        for (size_t j = 0; j < i; ++j)
            if (s.dist(ball.members[i], ball.members[j]) < r) cluster[i] = cluster[j];
        if (cluster[i] < 0) cluster[i] = clusters++;
    }
    for (size_t i = 0; i < ball.members.size(); ++i)
        for (size_t j = 0; j < i; ++j)
            if (cluster[i] != cluster[j])
                CHECK(s.dist(ball.members[i], ball.members[j]) >= r);
    int bound = 0;
    for (int c = 0; c < clusters; ++c) {
        std::vector<int> members;
        for (size_t i = 0; i < ball.members.size(); ++i)
            if (cluster[i] == c) members.push_back(ball.members[i]);
        bound += brute_force_packing(s, members, r);
    }
    CHECK(bound == 16);
    CHECK(exact == 16);
}

TEST_CASE("fit examples on single observations") {
    PackingObservation obs;
    obs.k = 2.0;
    obs.count = 4;
    auto fit = fit_upper_dimension({obs}, 2.0);
    CHECK(fit.c == doctest::Approx(1.0));
    fit = fit_upper_dimension({obs}, 1.0);
    CHECK(fit.c == doctest::Approx(2.0));
    CHECK(fit.witness.count == 4);

    obs.k = 4.0;
    obs.count = 2;
    auto lo = fit_lower_dimension({obs}, 0.5);
    CHECK(lo.c == doctest::Approx(1.0));
}

TEST_CASE("lower fit at gamma 0 is the minimum count") {
    auto s = line_space({0.0, 0.3, 0.9});
    auto profile = packing_profile(s, RadiiPolicy::Spectrum, CountMode::Exact);
    auto lo = fit_lower_dimension(profile, 0.0);
    int min_count = profile.front().count;
    for (const auto& o : profile) min_count = std::min(min_count, o.count);
    CHECK(lo.c == doctest::Approx(min_count));
    CHECK(lo.c >= 1.0);
}

TEST_CASE("scan rejects non-positive resolution") {
    auto s = line_space({0.0, 1.0});
    auto profile = packing_profile(s, RadiiPolicy::Spectrum, CountMode::Exact);
    CHECK_THROWS_AS(scan_dimension(profile, FitSide::Upper, 0.0),
                    InvalidResolution);
}

TEST_CASE("upper constant curve is nonincreasing in gamma") {
    auto s = generate_cantor(1.0 / 3.0, 3, 0.0, 1.0);
    auto profile = packing_profile(s, RadiiPolicy::Dyadic, CountMode::Exact);
    auto curve = scan_dimension(profile, FitSide::Upper, 0.1, 1.5);
    for (size_t i = 1; i < curve.size(); ++i)
        CHECK(curve[i].second <= curve[i - 1].second + 1e-12);
}

TEST_CASE("random spaces: greedy separation, maximality and oracle bounds") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<double> xs;
        const int n = 4 + static_cast<int>(rng() % 7);
        for (int i = 0; i < n; ++i) xs.push_back(u(rng));
        std::sort(xs.begin(), xs.end());
        xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
        auto s = line_space(xs);
        const double sep = 0.05 + 0.3 * u(rng);

        auto chosen = greedy_separated(s, all_points(s), sep);
        for (size_t i = 0; i < chosen.size(); ++i)
            for (size_t j = i + 1; j < chosen.size(); ++j)
                CHECK(s.dist(chosen[i], chosen[j]) >= sep);
        for (int p = 0; p < s.size(); ++p) {
            double nearest = 1e300;
            for (int c : chosen) nearest = std::min(nearest, s.dist(p, c));
            CHECK(nearest < sep);
        }

        const int exact = exact_packing_number(s, all_points(s), sep, 12);
        CHECK(static_cast<int>(chosen.size()) <= exact);
        CHECK(exact == brute_force_packing(s, all_points(s), sep));
    }
}

TEST_CASE("N is nondecreasing in k and fits are self-consistent") {
    auto s = generate_cantor(1.0 / 3.0, 3, 0.0, 1.0);
    auto profile = packing_profile(s, RadiiPolicy::Spectrum, CountMode::Exact);

    for (const auto& a : profile)
        for (const auto& b : profile) {
            if (a.center != b.center) continue;
            if (a.r_small == b.r_small && a.r_big <= b.r_big)
                CHECK(a.count <= b.count);
            if (a.r_big == b.r_big && a.r_small <= b.r_small)
                CHECK(a.count >= b.count);
        }

    for (double gamma : {0.0, 0.3, 0.6309, 1.0}) {
        auto up = fit_upper_dimension(profile, gamma);
        auto lo = fit_lower_dimension(profile, gamma);
        for (const auto& o : profile) {
            CHECK(o.count <= up.c * std::pow(o.k, gamma) * (1 + 1e-12));
            CHECK(o.count >= lo.c * std::pow(o.k, gamma) * (1 - 1e-12));
        }
    }
}
