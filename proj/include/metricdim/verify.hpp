#pragma once

#include <algorithm>
#include <cstdint>
#include <vector>

#include "metricdim/packing.hpp"
#include "metricdim/space.hpp"
#include "metricdim/transfer.hpp"

namespace metricdim {

struct BallRatioObservation {
    int center = 0;
    double r_small = 0.0;
    double r_big = 0.0;
    double k = 1.0;
    double mass_small = 0.0;
    double mass_big = 0.0;
    double ratio = 1.0;
};

struct MeasureFit {
    double gamma = 0.0;
    double c = 1.0;
    FitSide side = FitSide::Upper;
    BallRatioObservation witness;
};

/// Sum of masses over the open ball B(center, radius).
double ball_mass(const DiscreteMeasure& measure, const PseudoMetricSpace& space,
                 int center, double radius);

/// Spectrum radii seen from one center: a value below its smallest positive
/// distance, midpoints between consecutive distinct distances, and one value
/// above the largest; values beyond scale_cap are dropped except that top one.
std::vector<double> center_radii(const PseudoMetricSpace& space, int center,
                                 double scale_cap);

/// Streaming enumeration of all (center, r_small <= r_big) ball-mass ratio
/// observations. Per-center sorted distances and prefix masses keep each
/// observation O(1), so exhaustive verification stays cheap without
/// materializing the profile.
class RatioScanner {
public:
    RatioScanner(const PseudoMetricSpace& space, const DiscreteMeasure& measure,
                 double scale_cap);

    double mass_at(int center, double radius) const;
    const std::vector<double>& radii(int center) const { return radii_[center]; }
    double scale_cap() const { return scale_cap_; }

    template <class F>
    void for_each(F&& f) const {
        BallRatioObservation obs;
        for (int c = 0; c < n_; ++c) {
            const auto& rs = radii_[c];
            for (size_t i = 0; i < rs.size(); ++i) {
                obs.r_small = rs[i];
                obs.mass_small = mass_at(c, rs[i]);
                for (size_t j = i; j < rs.size(); ++j) {
                    obs.center = c;
                    obs.r_big = rs[j];
                    obs.k = rs[j] / rs[i];
                    obs.mass_big = mass_at(c, rs[j]);
                    obs.ratio = obs.mass_big / obs.mass_small;
                    f(obs);
                }
            }
        }
    }

private:
    int n_ = 0;
    double scale_cap_ = 1.0;
    std::vector<std::vector<double>> dist_;    // sorted, includes the center's 0
    std::vector<std::vector<double>> prefix_;  // prefix[i] = mass of first i
    std::vector<std::vector<double>> radii_;
};

/// Materialized profile (small spaces and tests).
std::vector<BallRatioObservation> ratio_profile(const DiscreteMeasure& measure,
                                                const PseudoMetricSpace& space,
                                                double scale_cap);

MeasureFit fit_measure_upper(const std::vector<BallRatioObservation>& profile,
                             double gamma);
MeasureFit fit_measure_lower(const std::vector<BallRatioObservation>& profile,
                             double gamma);
MeasureFit fit_measure_upper(const RatioScanner& scanner, double gamma);
MeasureFit fit_measure_lower(const RatioScanner& scanner, double gamma);

/// Constant-vs-gamma curve for the measure-side conditions.
std::vector<std::pair<double, double>> scan_measure_dimension(
    const RatioScanner& scanner, FitSide side, double resolution,
    double gamma_cap = 2.0);

/// Max over centers and radii R with 2R <= scale_cap of
/// mass(B(x,2R)) / mass(B(x,R)); R ranges over the spectrum radii and
/// their halves (the ratio also jumps when 2R crosses a distance value).
double doubling_constant(const DiscreteMeasure& measure,
                         const PseudoMetricSpace& space, double scale_cap);

struct TransportViolation {
    int level = 0;
    int center = 0;
    double radius = 0.0;
    bool forward = true;  // mu_j(B) <= mu(B + C4 A^{-j}) direction
};

struct TransportCheckReport {
    long long checked = 0;
    std::vector<TransportViolation> violations;
    double min_slack = 0.0;
    bool sampled = false;
    bool ok() const { return violations.empty(); }
};

/// Both inequalities of the transport bound for every snapshot level.
/// Full grid up to `full_grid_limit` points, else a seeded sample of
/// `sample_size` (center, radius, level) triples.
TransportCheckReport transport_bound_check(
    const std::vector<DiscreteMeasure>& snapshots, const DiscreteMeasure& final,
    const TransferConstants& constants, const PseudoMetricSpace& space,
    const NetHierarchy& h, int full_grid_limit = 512,
    long long sample_size = 10000, uint64_t seed = 1);

struct ConsistencyReport {
    bool upper_ok = true;  // measure-in-U implies packing upper bound
    bool lower_ok = true;  // doubling measure-in-L implies packing lower bound
    double packing_upper_c = 0.0;
    double packing_upper_bound = 0.0;
    double packing_lower_c = 0.0;
    double packing_lower_bound = 0.0;
    DimensionFit packing_upper;
    DimensionFit packing_lower;
    MeasureFit measure_upper;
    MeasureFit measure_lower;
    bool ok() const { return upper_ok && lower_ok; }
};

/// The implication checks at the level of fitted constants: a measure
/// certifying (U_gamma) with constant C forces packing counts within
/// C * 8^gamma * C_d^{3 gamma}, and a doubling measure certifying
/// (L_gamma) forces packing counts of at least C_L / (C_U * (2 C_d)^gamma).
ConsistencyReport trivial_inequality_check(const DimensionFit& packing_upper,
                                           const DimensionFit& packing_lower,
                                           const MeasureFit& measure_upper,
                                           const MeasureFit& measure_lower,
                                           double c_d);

ConsistencyReport trivial_inequality_report(
    const std::vector<PackingObservation>& packing, const RatioScanner& scanner,
    double gamma_upper, double gamma_lower, double c_d);

}  // namespace metricdim
