#include "metricdim/nets.hpp"

#include <algorithm>
#include <cmath>

#include "metricdim/errors.hpp"
#include "metricdim/packing.hpp"

namespace metricdim {

// Distances exactly on a net scale (the A = 9 Cantor examples put them
// there) must not drop out of a level through rounding.
static constexpr double kSeparationTol = 1e-9;

double NetHierarchy::separation_at(int level) const {
    return std::pow(scale_base, -static_cast<double>(level));
}

ScaleBaseChoice choose_scale_base(double c_d, double s, double t, double s_prime,
                                  double t_prime, double c_s, double c_t,
                                  double override_a) {
    const bool t_zero = t == 0.0 && t_prime == 0.0;
    if (!t_zero && t_prime >= t)
        throw InvalidExponents("t' must be below t (or t = t' = 0)");
    if (s_prime <= s) throw InvalidExponents("s' must exceed s");
    if (!(c_s > 0.0) || (!t_zero && !(c_t > 0.0)))
        throw InvalidExponents("constants must be positive");

    const double floor_a = 16.0 * std::pow(c_d, 4.0);
    auto upper_ok = [&](double a) { return std::pow(a, s_prime - s) > c_s; };
    auto lower_ok = [&](double a) {
        if (t_zero) return true;
        return std::pow(a, t - t_prime) > std::pow(4.0, t) * std::pow(c_d, 2.0 * t) / c_t;
    };

    ScaleBaseChoice choice;
    if (override_a > 0.0) {
        choice.a = override_a;
        choice.overridden = true;
        if (override_a < floor_a)
            choice.warnings.push_back("A >= 16*C_d^4 violated");
        if (!upper_ok(override_a))
            choice.warnings.push_back("A^{s'-s} > C_s violated");
        if (!lower_ok(override_a))
            choice.warnings.push_back("A^{t-t'} > 4^t*C_d^{2t}/C_t violated");
        return choice;
    }

    long long a = std::max<long long>(2, static_cast<long long>(std::ceil(floor_a)));
    while (!(upper_ok(static_cast<double>(a)) && lower_ok(static_cast<double>(a)))) {
        ++a;
        if (a > 1'000'000'000)
            throw InvalidExponents("no admissible scale base below 1e9");
    }
    choice.a = static_cast<double>(a);
    return choice;
}

NetHierarchy build_hierarchy(const PseudoMetricSpace& space, double a,
                             bool normalized) {
    if (!(a > space.c_d))
        throw ScaleTooSmall("scale base must exceed the quasi-triangle constant");
    const int n = space.size();
    NetHierarchy h;
    h.scale_base = a;
    h.normalized = normalized;
    h.norm_factor =
        (normalized && space.diameter > 0.0) ? 0.99 / space.diameter : 1.0;

    std::vector<int> all(n);
    for (int i = 0; i < n; ++i) all[i] = i;

    std::vector<int> previous;
    for (int j = 0;; ++j) {
        const double separation_raw = h.separation_at(j) / h.norm_factor;
        std::vector<int> level =
            greedy_separated(space, all, separation_raw, previous, kSeparationTol);
        h.levels.push_back(level);
        h.parents.emplace_back();
        h.children.emplace_back();
        if (j > 0) {
            auto& parent_map = h.parents[j];
            auto& child_map = h.children[j - 1];
            for (int e : h.levels[j - 1]) child_map[e];  // every parent present
            for (int g : level) {
                int best = -1;
                double best_d = 0.0;
                for (int e : h.levels[j - 1]) {
                    const double d = space.dist(g, e);
                    if (best < 0 || d < best_d) {
                        best = e;
                        best_d = d;
                    }
                }
                parent_map[g] = best;
                child_map[best].push_back(g);
            }
        }
        h.depth = j;
        if (static_cast<int>(level.size()) == n) break;
        previous = std::move(level);
    }
    return h;
}

ChildBoundsReport check_child_bounds(const NetHierarchy& h, double s_prime,
                                     double t_prime) {
    ChildBoundsReport report;
    report.lower = std::pow(h.scale_base, t_prime);
    report.upper = std::pow(h.scale_base, s_prime);
    for (int m = 0; m < h.depth; ++m) {
        for (int e : h.levels[m]) {
            auto it = h.children[m].find(e);
            ChildCountEntry entry;
            entry.level = m;
            entry.point = e;
            entry.count = it == h.children[m].end()
                              ? 0
                              : static_cast<int>(it->second.size());
            entry.ok = entry.count >= report.lower * (1.0 - 1e-9) &&
                       entry.count <= report.upper * (1.0 + 1e-9);
            report.entries.push_back(entry);
            if (!entry.ok) report.violations.push_back(entry);
        }
    }
    return report;
}

}  // namespace metricdim
