#pragma once

#include <vector>

#include "metricdim/space.hpp"

namespace metricdim {

/// One packing count: the number of r_small-separated points found inside
/// the open ball B(center, r_big). `exact` records whether the count came
/// from the branch-and-bound oracle (a true maximum) or from the greedy
/// scan (a valid lower bound on N).
struct PackingObservation {
    int center = 0;
    double r_small = 0.0;
    double r_big = 0.0;
    double k = 1.0;  // r_big / r_small
    int count = 1;
    bool exact = false;
};

enum class FitSide { Upper, Lower };
enum class RadiiPolicy { Spectrum, Dyadic };
enum class CountMode { Exact, Greedy };

/// Exponent gamma with the minimal admissible multiplicative constant over a
/// profile, and the observation attaining it.
struct DimensionFit {
    double gamma = 0.0;
    double c = 1.0;
    FitSide side = FitSide::Upper;
    PackingObservation witness;
};

/// Maximal subset of `candidates` with pairwise distance >= separation,
/// built by scanning candidates in ascending index order. Points in `seed`
/// are scanned first (used by the net hierarchy to nest levels). A point is
/// rejected when its distance to an accepted point is below
/// separation * (1 - rel_tol).
std::vector<int> greedy_separated(const PseudoMetricSpace& space,
                                  const std::vector<int>& candidates,
                                  double separation,
                                  const std::vector<int>& seed = {},
                                  double rel_tol = 0.0);

/// Exact maximum cardinality of a separation-separated subset of `members`,
/// via branch-and-bound maximum independent set on the too-close graph.
/// Throws OracleTooLarge when |members| exceeds the cap.
int exact_packing_number(const PseudoMetricSpace& space,
                         const std::vector<int>& members, double separation,
                         int cap = 24);

/// Radii strictly between consecutive distinct distance values, plus one
/// value below the minimum distance and one above the largest distance
/// (so the full ball is observable); values above scale_cap are dropped,
/// except for that single topmost radius.
std::vector<double> spectrum_radii(const PseudoMetricSpace& space, double scale_cap);

/// diameter * 2^{-i} down to half the minimum pairwise distance, plus the
/// same above-maximum radius as the spectrum policy.
std::vector<double> dyadic_radii(const PseudoMetricSpace& space, double scale_cap);

/// One observation per center and per radius pair r_small <= r_big drawn
/// from the chosen policy; the spectrum policy uses each center's own
/// distance values. scale_cap <= 0 means the space diameter.
std::vector<PackingObservation> packing_profile(const PseudoMetricSpace& space,
                                                RadiiPolicy policy, CountMode mode,
                                                double scale_cap = 0.0,
                                                int oracle_cap = 24);

DimensionFit fit_upper_dimension(const std::vector<PackingObservation>& profile,
                                 double gamma);
DimensionFit fit_lower_dimension(const std::vector<PackingObservation>& profile,
                                 double gamma);

/// Constant-vs-gamma curve: fits at gamma = 0, resolution, 2*resolution, ...
/// up to gamma_cap.
std::vector<std::pair<double, double>> scan_dimension(
    const std::vector<PackingObservation>& profile, FitSide side,
    double resolution, double gamma_cap = 2.0);

/// Knee of a constant curve. For the upper side: smallest grid gamma where
/// the magnitude of the log-slope drops below the threshold. The lower
/// curve is flat before its dimension and collapses after it, so its knee
/// is the first grid gamma at which the constant has measurably dropped
/// (the magnitude reached the threshold on the preceding segment).
double knee_gamma(const std::vector<std::pair<double, double>>& curve,
                  FitSide side, double slope_threshold = 0.5);

}  // namespace metricdim
