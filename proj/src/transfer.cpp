#include "metricdim/transfer.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_set>

#include "metricdim/errors.hpp"

namespace metricdim {

// Property checks compare values that are equal in exact arithmetic
// (child counts hitting A^{s'} exactly, rebalanced pairs sitting on the
// band edge), so they carry a relative slack far below any mass scale.
static constexpr double kRelTol = 1e-9;
static constexpr double kConservationTol = 1e-12;

TransferConstants TransferConstants::make(double a, double c_d, double s_prime,
                                          double t_prime) {
    if (!(a > c_d)) throw ScaleTooSmall("C4 requires A > C_d");
    TransferConstants k;
    k.a = a;
    k.c_d = c_d;
    k.s_prime = s_prime;
    k.t_prime = t_prime;
    k.c1 = std::pow(a, s_prime - t_prime);
    k.c2 = 8.0 * c_d * c_d * c_d;
    k.c4 = 2.0 * c_d * c_d / (1.0 - c_d / a);
    return k;
}

namespace {

std::vector<int> level_points(const NetHierarchy& h, const PseudoMetricSpace& space,
                              int j) {
    if (j <= h.depth) return h.levels[j];
    std::vector<int> all(space.size());
    for (int i = 0; i < space.size(); ++i) all[i] = i;
    return all;
}

int parent_of(const NetHierarchy& h, int j, int g) {
    if (j > h.depth) return g;  // identity level
    return h.parents[j].at(g);
}

double total_mass(const std::vector<double>& mass) {
    double t = 0.0;
    for (double m : mass) t += m;
    return t;
}

}  // namespace

std::pair<DiscreteMeasure, std::vector<TransferRecord>> homogeneous_split(
    const DiscreteMeasure& f0, const NetHierarchy& h,
    const PseudoMetricSpace& space) {
    const int m = f0.level;
    DiscreteMeasure f1;
    f1.level = m + 1;
    f1.mass.assign(space.size(), 0.0);
    std::vector<TransferRecord> records;

    if (m + 1 > h.depth) {
        // Identity level: every point is its own single child.
        f1.mass = f0.mass;
        f1.total = f0.total;
        return {std::move(f1), std::move(records)};
    }

    int step = 0;
    for (int e : h.levels[m]) {
        auto it = h.children[m].find(e);
        if (it == h.children[m].end() || it->second.empty())
            throw PartitionBroken("parent " + space.ids[e] + " at level " +
                                  std::to_string(m) + " has no children");
        const double share = f0(e) / static_cast<double>(it->second.size());
        for (int g : it->second) {
            f1.mass[g] += share;
            if (g != e) {
                TransferRecord rec;
                rec.step = step++;
                rec.source = e;
                rec.dest = g;
                rec.amount = share;
                rec.distance = h.dist(space, e, g);
                rec.level = m;
                records.push_back(rec);
            }
        }
    }
    f1.total = total_mass(f1.mass);
    return {std::move(f1), std::move(records)};
}

std::vector<std::pair<int, int>> close_pairs(const NetHierarchy& h,
                                             const PseudoMetricSpace& space,
                                             int m, double c2) {
    const double threshold = c2 * h.separation_at(m + 1);
    const std::vector<int> pts = level_points(h, space, m + 1);
    std::vector<std::pair<int, int>> pairs;
    for (size_t i = 0; i < pts.size(); ++i)
        for (size_t j = i + 1; j < pts.size(); ++j)
            if (h.dist(space, pts[i], pts[j]) <= threshold)
                pairs.emplace_back(pts[i], pts[j]);
    std::sort(pairs.begin(), pairs.end());
    return pairs;
}

std::pair<DiscreteMeasure, std::vector<TransferRecord>> rebalance_pair(
    DiscreteMeasure f, std::pair<int, int> pair, double c1,
    const NetHierarchy& h, const PseudoMetricSpace& space) {
    std::vector<TransferRecord> records;
    int heavy = pair.first;
    int light = pair.second;
    if (f(heavy) < f(light)) std::swap(heavy, light);
    if (f(heavy) <= c1 * f(light)) return {std::move(f), std::move(records)};

    const double sum = f(heavy) + f(light);
    const double light_new = sum / (c1 + 1.0);
    const double heavy_new = c1 * light_new;  // band edge holds exactly
    TransferRecord rec;
    rec.source = heavy;
    rec.dest = light;
    rec.amount = f(heavy) - heavy_new;
    rec.distance = h.dist(space, heavy, light);
    rec.level = f.level - 1;
    rec.rebalance = true;
    f.mass[heavy] = heavy_new;
    f.mass[light] = light_new;
    f.total = total_mass(f.mass);
    records.push_back(rec);
    return {std::move(f), std::move(records)};
}

RefineResult refine_measure(const DiscreteMeasure& f0, const NetHierarchy& h,
                            const PseudoMetricSpace& space,
                            const TransferConstants& k) {
    const int m = f0.level;

    // Hypothesis: comparability within C1 across S_m at scale C2*A^{-m}.
    {
        const std::vector<int> pts = level_points(h, space, m);
        const double threshold = k.c2 * h.separation_at(m);
        for (size_t i = 0; i < pts.size(); ++i) {
            for (size_t j = i + 1; j < pts.size(); ++j) {
                if (h.dist(space, pts[i], pts[j]) > threshold) continue;
                const double lo = std::min(f0(pts[i]), f0(pts[j]));
                const double hi = std::max(f0(pts[i]), f0(pts[j]));
                if (hi > k.c1 * lo * (1.0 + kRelTol))
                    throw HypothesisViolation(
                        "comparability hypothesis fails at level " +
                            std::to_string(m) + " for pair (" + space.ids[pts[i]] +
                            "," + space.ids[pts[j]] + ")",
                        m, pts[i], pts[j]);
            }
        }
    }

    RefineResult result;
    auto [f1, records] = homogeneous_split(f0, h, space);

    for (const auto& pair : close_pairs(h, space, m, k.c2)) {
        auto [next, recs] = rebalance_pair(std::move(f1), pair, k.c1, h, space);
        f1 = std::move(next);
        records.insert(records.end(), recs.begin(), recs.end());
    }
    for (size_t i = 0; i < records.size(); ++i)
        records[i].step = static_cast<int>(i);

    StepReport& report = result.report;
    report.level = m;

    // (a) full pairwise rescan, independent of the incremental pass.
    for (const auto& [g1, g2] : close_pairs(h, space, m, k.c2)) {
        const double lo = std::min(f1(g1), f1(g2));
        const double hi = std::max(f1(g1), f1(g2));
        if (hi > k.c1 * lo * (1.0 + kRelTol)) {
            report.a_ok = false;
            report.a_witness = {g1, g2};
            break;
        }
    }

    // (b) band against the parent mass.
    const double band_lo = std::pow(k.a, -k.s_prime);
    const double band_hi = std::pow(k.a, -k.t_prime);
    for (int g : level_points(h, space, m + 1)) {
        const double parent_mass = f0(parent_of(h, m + 1, g));
        if (f1(g) < band_lo * parent_mass * (1.0 - kRelTol) ||
            f1(g) > band_hi * parent_mass * (1.0 + kRelTol)) {
            report.b_ok = false;
            report.b_witness = g;
            break;
        }
    }

    // (c) conservation.
    f1.total = total_mass(f1.mass);
    report.drift = std::abs(f1.total - f0.total);
    report.c_ok = report.drift <= kConservationTol;

    // (d) transfer distance bound.
    const double max_allowed = 2.0 * k.c_d * h.separation_at(m);
    for (const auto& rec : records) {
        report.max_move_distance = std::max(report.max_move_distance, rec.distance);
        if (rec.distance > max_allowed * (1.0 + kRelTol)) report.d_ok = false;
    }

    // No relay: a rebalance receiver never sends later in the same pass.
    {
        std::unordered_set<int> received;
        for (const auto& rec : records) {
            if (!rec.rebalance) continue;
            if (received.count(rec.source)) {
                report.no_relay_ok = false;
                report.relay_witness = rec.source;
                break;
            }
            received.insert(rec.dest);
        }
    }

    result.measure = std::move(f1);
    result.records = std::move(records);
    return result;
}

MeasureBuild build_measure(const PseudoMetricSpace& space, const NetHierarchy& h,
                           const TransferConstants& k) {
    MeasureBuild build;

    DiscreteMeasure mu;
    mu.level = 0;
    mu.mass.assign(space.size(), 0.0);
    const auto& roots = h.levels[0];
    for (int e : roots) mu.mass[e] = 1.0 / static_cast<double>(roots.size());
    mu.total = total_mass(mu.mass);

    // Raw mode can start from several roots; a rebalance pass at the root
    // scale establishes the refinement hypothesis before the first split.
    if (roots.size() > 1) {
        for (const auto& pair : close_pairs(h, space, -1, k.c2)) {
            auto [next, recs] = rebalance_pair(std::move(mu), pair, k.c1, h, space);
            mu = std::move(next);
            build.log.insert(build.log.end(), recs.begin(), recs.end());
        }
    }

    build.snapshots.push_back(mu);
    int j = 0;
    while (!(j >= h.depth && close_pairs(h, space, j, k.c2).empty())) {
        RefineResult step = refine_measure(mu, h, space, k);
        mu = std::move(step.measure);
        build.conservation_drift =
            std::max(build.conservation_drift, step.report.drift);
        if (std::abs(mu.total - 1.0) > kConservationTol) {
            for (double& m : mu.mass) m /= mu.total;
            mu.total = total_mass(mu.mass);
        }
        build.snapshots.push_back(mu);
        build.reports.push_back(step.report);
        build.log.insert(build.log.end(), step.records.begin(), step.records.end());
        ++j;
        if (j > h.depth + 64)
            throw PartitionBroken("refinement failed to stabilize");
    }
    build.stable_level = j;
    build.measure = std::move(mu);
    return build;
}

}  // namespace metricdim
