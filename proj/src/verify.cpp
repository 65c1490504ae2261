#include "metricdim/verify.hpp"

#include <cmath>
#include <limits>
#include <random>

#include "metricdim/errors.hpp"

namespace metricdim {

static constexpr double kMassTol = 1e-12;

double ball_mass(const DiscreteMeasure& measure, const PseudoMetricSpace& space,
                 int center, double radius) {
    double m = 0.0;
    for (int i = 0; i < space.size(); ++i)
        if (space.dist(center, i) < radius) m += measure(i);
    return m;
}

std::vector<double> center_radii(const PseudoMetricSpace& space, int center,
                                 double scale_cap) {
    std::vector<double> v;
    for (int i = 0; i < space.size(); ++i)
        if (i != center) v.push_back(space.dist(center, i));
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    if (v.empty()) return {scale_cap > 0.0 ? scale_cap : 1.0};

    std::vector<double> radii{v.front() / 2.0};
    for (size_t i = 0; i + 1 < v.size(); ++i) radii.push_back((v[i] + v[i + 1]) / 2.0);
    const double last_gap = v.size() > 1 ? v.back() - v[v.size() - 2] : v.back();
    const double top = v.back() + last_gap / 2.0;

    std::vector<double> out;
    for (double r : radii)
        if (r <= scale_cap) out.push_back(r);
    out.push_back(top);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

RatioScanner::RatioScanner(const PseudoMetricSpace& space,
                           const DiscreteMeasure& measure, double scale_cap)
    : n_(space.size()), scale_cap_(scale_cap) {
    for (int i = 0; i < n_; ++i)
        if (!(measure(i) > 0.0))
            throw UnsupportedMeasure("measure vanishes at point " + space.ids[i]);
    dist_.resize(n_);
    prefix_.resize(n_);
    radii_.resize(n_);
    for (int c = 0; c < n_; ++c) {
        std::vector<std::pair<double, double>> entries;
        entries.reserve(n_);
        for (int i = 0; i < n_; ++i) entries.emplace_back(space.dist(c, i), measure(i));
        std::sort(entries.begin(), entries.end());
        dist_[c].reserve(n_);
        prefix_[c].reserve(n_ + 1);
        prefix_[c].push_back(0.0);
        for (const auto& [d, m] : entries) {
            dist_[c].push_back(d);
            prefix_[c].push_back(prefix_[c].back() + m);
        }
        radii_[c] = center_radii(space, c, scale_cap);
    }
}

double RatioScanner::mass_at(int center, double radius) const {
    const auto& d = dist_[center];
    const size_t idx = std::lower_bound(d.begin(), d.end(), radius) - d.begin();
    return prefix_[center][idx];
}

std::vector<BallRatioObservation> ratio_profile(const DiscreteMeasure& measure,
                                                const PseudoMetricSpace& space,
                                                double scale_cap) {
    RatioScanner scanner(space, measure, scale_cap);
    std::vector<BallRatioObservation> profile;
    scanner.for_each([&](const BallRatioObservation& obs) { profile.push_back(obs); });
    return profile;
}

namespace {

template <class Source>
MeasureFit fit_measure(const Source& source, double gamma, FitSide side) {
    MeasureFit fit;
    fit.gamma = gamma;
    fit.side = side;
    fit.c = side == FitSide::Upper ? 0.0 : std::numeric_limits<double>::infinity();
    source([&](const BallRatioObservation& obs) {
        const double v = obs.ratio / std::pow(obs.k, gamma);
        const bool better = side == FitSide::Upper ? v > fit.c : v < fit.c;
        if (better) {
            fit.c = v;
            fit.witness = obs;
        }
    });
    return fit;
}

}  // namespace

MeasureFit fit_measure_upper(const std::vector<BallRatioObservation>& profile,
                             double gamma) {
    return fit_measure([&](auto&& f) { for (const auto& o : profile) f(o); },
                       gamma, FitSide::Upper);
}

MeasureFit fit_measure_lower(const std::vector<BallRatioObservation>& profile,
                             double gamma) {
    return fit_measure([&](auto&& f) { for (const auto& o : profile) f(o); },
                       gamma, FitSide::Lower);
}

MeasureFit fit_measure_upper(const RatioScanner& scanner, double gamma) {
    return fit_measure([&](auto&& f) { scanner.for_each(f); }, gamma, FitSide::Upper);
}

MeasureFit fit_measure_lower(const RatioScanner& scanner, double gamma) {
    return fit_measure([&](auto&& f) { scanner.for_each(f); }, gamma, FitSide::Lower);
}

std::vector<std::pair<double, double>> scan_measure_dimension(
    const RatioScanner& scanner, FitSide side, double resolution,
    double gamma_cap) {
    if (!(resolution > 0.0)) throw InvalidResolution("resolution must be positive");
    std::vector<std::pair<double, double>> curve;
    for (double gamma = 0.0; gamma <= gamma_cap + resolution / 2.0; gamma += resolution) {
        const MeasureFit fit = side == FitSide::Upper
                                   ? fit_measure_upper(scanner, gamma)
                                   : fit_measure_lower(scanner, gamma);
        curve.emplace_back(gamma, fit.c);
    }
    return curve;
}

double doubling_constant(const DiscreteMeasure& measure,
                         const PseudoMetricSpace& space, double scale_cap) {
    RatioScanner scanner(space, measure, scale_cap);
    double best = 1.0;
    for (int c = 0; c < space.size(); ++c) {
        // The ratio jumps when either R or 2R crosses a distance value, so
        // halved spectrum radii must be scanned as well.
        for (double base : scanner.radii(c)) {
            for (double r : {base, base / 2.0}) {
                if (2.0 * r > scale_cap) continue;
                best = std::max(best,
                                scanner.mass_at(c, 2.0 * r) / scanner.mass_at(c, r));
            }
        }
    }
    return best;
}

TransportCheckReport transport_bound_check(
    const std::vector<DiscreteMeasure>& snapshots, const DiscreteMeasure& final,
    const TransferConstants& constants, const PseudoMetricSpace& space,
    const NetHierarchy& h, int full_grid_limit, long long sample_size,
    uint64_t seed) {
    TransportCheckReport report;
    report.min_slack = std::numeric_limits<double>::infinity();
    RatioScanner final_scan(space, final,
                            space.diameter > 0.0 ? space.diameter : 1.0);

    auto check_one = [&](int j, int center, double r) {
        // The C4 A^{-j} reach lives at the hierarchy scale; convert back to
        // raw distance units.
        const double reach = constants.c4 * h.separation_at(j) / h.norm_factor;
        const DiscreteMeasure& mu_j = snapshots[j];
        const double lhs_fwd = ball_mass(mu_j, space, center, r);
        const double rhs_fwd = final_scan.mass_at(center, r + reach);
        const double lhs_bwd = final_scan.mass_at(center, r);
        const double rhs_bwd = ball_mass(mu_j, space, center, r + reach);
        report.checked += 2;
        report.min_slack = std::min({report.min_slack, rhs_fwd - lhs_fwd, rhs_bwd - lhs_bwd});
        if (lhs_fwd > rhs_fwd + kMassTol)
            report.violations.push_back({j, center, r, true});
        if (lhs_bwd > rhs_bwd + kMassTol)
            report.violations.push_back({j, center, r, false});
    };

    const int levels = static_cast<int>(snapshots.size());
    if (space.size() <= full_grid_limit) {
        for (int j = 0; j < levels; ++j)
            for (int c = 0; c < space.size(); ++c)
                for (double r : final_scan.radii(c)) check_one(j, c, r);
    } else {
        report.sampled = true;
        std::mt19937_64 rng(seed);
        std::uniform_int_distribution<int> pick_level(0, levels - 1);
        std::uniform_int_distribution<int> pick_center(0, space.size() - 1);
        for (long long i = 0; i < sample_size; ++i) {
            const int c = pick_center(rng);
            const auto& rs = final_scan.radii(c);
            std::uniform_int_distribution<size_t> pick_r(0, rs.size() - 1);
            check_one(pick_level(rng), c, rs[pick_r(rng)]);
        }
    }
    return report;
}

ConsistencyReport trivial_inequality_check(const DimensionFit& packing_upper,
                                           const DimensionFit& packing_lower,
                                           const MeasureFit& measure_upper,
                                           const MeasureFit& measure_lower,
                                           double c_d) {
    ConsistencyReport report;
    report.packing_upper = packing_upper;
    report.packing_lower = packing_lower;
    report.measure_upper = measure_upper;
    report.measure_lower = measure_lower;

    const double gu = measure_upper.gamma;
    report.packing_upper_c = packing_upper.c;
    report.packing_upper_bound =
        measure_upper.c * std::pow(8.0, gu) * std::pow(c_d, 3.0 * gu);
    report.upper_ok =
        report.packing_upper_c <= report.packing_upper_bound * (1.0 + 1e-9);

    report.packing_lower_c = packing_lower.c;
    report.packing_lower_bound =
        measure_lower.c / (measure_upper.c * std::pow(2.0 * c_d, gu));
    report.lower_ok =
        report.packing_lower_c >= report.packing_lower_bound * (1.0 - 1e-9);
    return report;
}

ConsistencyReport trivial_inequality_report(
    const std::vector<PackingObservation>& packing, const RatioScanner& scanner,
    double gamma_upper, double gamma_lower, double c_d) {
    return trivial_inequality_check(fit_upper_dimension(packing, gamma_upper),
                                    fit_lower_dimension(packing, gamma_lower),
                                    fit_measure_upper(scanner, gamma_upper),
                                    fit_measure_lower(scanner, gamma_lower), c_d);
}

}  // namespace metricdim
