#include "metricdim/packing.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>
#include <set>

#include "metricdim/errors.hpp"

namespace metricdim {

std::vector<int> greedy_separated(const PseudoMetricSpace& space,
                                  const std::vector<int>& candidates,
                                  double separation,
                                  const std::vector<int>& seed, double rel_tol) {
    const double threshold = separation * (1.0 - rel_tol);
    std::vector<int> chosen;
    auto admit = [&](int p) {
        for (int q : chosen)
            if (p != q && space.dist(p, q) < threshold) return;
        if (std::find(chosen.begin(), chosen.end(), p) == chosen.end())
            chosen.push_back(p);
    };
    for (int p : seed) admit(p);
    for (int p : candidates) admit(p);
    std::sort(chosen.begin(), chosen.end());
    return chosen;
}

namespace {

struct MisSolver {
    std::vector<uint64_t> adjacency;
    int best = 0;

    void search(uint64_t avail, int current) {
        if (current + std::popcount(avail) <= best) return;
        if (avail == 0) {
            best = std::max(best, current);
            return;
        }
        // Pivot on the highest-degree available vertex.
        int pivot = -1, pivot_deg = -1;
        uint64_t rest = avail;
        while (rest) {
            const int v = std::countr_zero(rest);
            rest &= rest - 1;
            const int deg = std::popcount(adjacency[v] & avail);
            if (deg > pivot_deg) {
                pivot_deg = deg;
                pivot = v;
            }
        }
        if (pivot_deg == 0) {
            best = std::max(best, current + std::popcount(avail));
            return;
        }
        const uint64_t bit = uint64_t{1} << pivot;
        search(avail & ~bit & ~adjacency[pivot], current + 1);
        search(avail & ~bit, current);
    }
};

}  // namespace

int exact_packing_number(const PseudoMetricSpace& space,
                         const std::vector<int>& members, double separation,
                         int cap) {
    const int n = static_cast<int>(members.size());
    if (n == 0) return 0;
    if (n > cap || n > 64)
        throw OracleTooLarge("exact packing oracle capped at " +
                             std::to_string(std::min(cap, 64)) + " points, got " +
                             std::to_string(n));
    MisSolver solver;
    solver.adjacency.assign(n, 0);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (space.dist(members[i], members[j]) < separation) {
                solver.adjacency[i] |= uint64_t{1} << j;
                solver.adjacency[j] |= uint64_t{1} << i;
            }
    solver.search(n == 64 ? ~uint64_t{0} : (uint64_t{1} << n) - 1, 0);
    return solver.best;
}

namespace {

std::vector<double> finish_radii(std::vector<double> radii, double top,
                                 double scale_cap) {
    std::vector<double> out;
    for (double r : radii)
        if (r <= scale_cap) out.push_back(r);
    out.push_back(top);  // the single above-maximum radius is always kept
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::vector<double> center_spectrum_radii(const PseudoMetricSpace& space,
                                          int center, double scale_cap) {
    std::set<double> values;
    for (int i = 0; i < space.size(); ++i)
        if (i != center) values.insert(space.dist(center, i));
    if (values.empty()) return {scale_cap > 0.0 ? scale_cap : 1.0};
    std::vector<double> v(values.begin(), values.end());
    std::vector<double> radii{v.front() / 2.0};
    for (size_t i = 0; i + 1 < v.size(); ++i) radii.push_back((v[i] + v[i + 1]) / 2.0);
    const double last_gap = v.size() > 1 ? v.back() - v[v.size() - 2] : v.back();
    return finish_radii(std::move(radii), v.back() + last_gap / 2.0, scale_cap);
}

}  // namespace

std::vector<double> spectrum_radii(const PseudoMetricSpace& space, double scale_cap) {
    const int n = space.size();
    std::set<double> values;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) values.insert(space.dist(i, j));
    if (values.empty()) return {1.0};
    std::vector<double> v(values.begin(), values.end());
    std::vector<double> radii{v.front() / 2.0};
    for (size_t i = 0; i + 1 < v.size(); ++i) radii.push_back((v[i] + v[i + 1]) / 2.0);
    const double last_gap = v.size() > 1 ? v.back() - v[v.size() - 2] : v.back();
    return finish_radii(std::move(radii), v.back() + last_gap / 2.0, scale_cap);
}

std::vector<double> dyadic_radii(const PseudoMetricSpace& space, double scale_cap) {
    if (space.size() < 2) return {1.0};
    const double dmin = space.min_positive_distance();
    std::vector<double> radii;
    for (double r = space.diameter; r >= dmin / 2.0; r /= 2.0) radii.push_back(r);
    return finish_radii(std::move(radii), space.diameter * 1.5, scale_cap);
}

std::vector<PackingObservation> packing_profile(const PseudoMetricSpace& space,
                                                RadiiPolicy policy, CountMode mode,
                                                double scale_cap, int oracle_cap) {
    if (scale_cap <= 0.0) scale_cap = space.diameter > 0.0 ? space.diameter : 1.0;
    const std::vector<double> shared_radii =
        policy == RadiiPolicy::Dyadic ? dyadic_radii(space, scale_cap)
                                      : std::vector<double>{};
    std::vector<PackingObservation> profile;
    for (int center = 0; center < space.size(); ++center) {
        // The spectrum policy sees each center's own distance values, so the
        // inner separation never drops far below the center's local
        // resolution (mixed-scale spaces would otherwise flood the profile
        // with count-1 observations at huge k).
        const std::vector<double> radii =
            policy == RadiiPolicy::Spectrum
                ? center_spectrum_radii(space, center, scale_cap)
                : shared_radii;
        for (double r_big : radii) {
            std::vector<int> members;
            for (int i = 0; i < space.size(); ++i)
                if (space.dist(center, i) < r_big) members.push_back(i);
            for (double r_small : radii) {
                if (r_small > r_big) continue;
                PackingObservation obs;
                obs.center = center;
                obs.r_small = r_small;
                obs.r_big = r_big;
                obs.k = r_big / r_small;
                if (mode == CountMode::Exact &&
                    static_cast<int>(members.size()) <= oracle_cap) {
                    obs.count = exact_packing_number(space, members, r_small, oracle_cap);
                    obs.exact = true;
                } else {
                    obs.count = static_cast<int>(
                        greedy_separated(space, members, r_small).size());
                    obs.exact = false;
                }
                profile.push_back(obs);
            }
        }
    }
    return profile;
}

DimensionFit fit_upper_dimension(const std::vector<PackingObservation>& profile,
                                 double gamma) {
    DimensionFit fit;
    fit.gamma = gamma;
    fit.side = FitSide::Upper;
    fit.c = 0.0;
    for (const auto& obs : profile) {
        const double v = obs.count / std::pow(obs.k, gamma);
        if (v > fit.c) {
            fit.c = v;
            fit.witness = obs;
        }
    }
    return fit;
}

DimensionFit fit_lower_dimension(const std::vector<PackingObservation>& profile,
                                 double gamma) {
    DimensionFit fit;
    fit.gamma = gamma;
    fit.side = FitSide::Lower;
    fit.c = std::numeric_limits<double>::infinity();
    for (const auto& obs : profile) {
        const double v = obs.count / std::pow(obs.k, gamma);
        if (v < fit.c) {
            fit.c = v;
            fit.witness = obs;
        }
    }
    return fit;
}

std::vector<std::pair<double, double>> scan_dimension(
    const std::vector<PackingObservation>& profile, FitSide side,
    double resolution, double gamma_cap) {
    if (!(resolution > 0.0)) throw InvalidResolution("resolution must be positive");
    std::vector<std::pair<double, double>> curve;
    for (double gamma = 0.0; gamma <= gamma_cap + resolution / 2.0; gamma += resolution) {
        const DimensionFit fit = side == FitSide::Upper
                                     ? fit_upper_dimension(profile, gamma)
                                     : fit_lower_dimension(profile, gamma);
        curve.emplace_back(gamma, fit.c);
    }
    return curve;
}

double knee_gamma(const std::vector<std::pair<double, double>>& curve,
                  FitSide side, double slope_threshold) {
    if (curve.size() < 2) return curve.empty() ? 0.0 : curve.front().first;
    for (size_t i = 0; i + 1 < curve.size(); ++i) {
        const double dg = curve[i + 1].first - curve[i].first;
        const double slope =
            std::abs(std::log(curve[i + 1].second) - std::log(curve[i].second)) / dg;
        // Upper: the curve is already flat at the start of the first flat
        // segment. Lower: the curve is still flat at the start of the first
        // falling segment, so the collapse is only established at its end.
        if (side == FitSide::Upper) {
            if (slope < slope_threshold) return curve[i].first;
        } else {
            if (slope >= slope_threshold) return curve[i + 1].first;
        }
    }
    return curve.back().first;
}

}  // namespace metricdim
