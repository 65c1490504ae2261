#include "metricdim/space.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>

#include "metricdim/errors.hpp"

namespace metricdim {

namespace {

double rule_distance(const std::vector<double>& p, const std::vector<double>& q,
                     MetricRule rule, double snowflake_p) {
    double d = 0.0;
    switch (rule) {
        case MetricRule::Euclidean:
        case MetricRule::Snowflake: {
            double s = 0.0;
            for (size_t i = 0; i < p.size(); ++i) {
                const double t = p[i] - q[i];
                s += t * t;
            }
            d = std::sqrt(s);
            if (rule == MetricRule::Snowflake) d = std::pow(d, snowflake_p);
            break;
        }
        case MetricRule::MaxCoordinate: {
            for (size_t i = 0; i < p.size(); ++i)
                d = std::max(d, std::abs(p[i] - q[i]));
            break;
        }
        case MetricRule::Matrix:
            throw InvalidDistance("matrix rule has no coordinate distance");
    }
    return d;
}

void finalize(PseudoMetricSpace& s) {
    const int n = s.size();
    s.diameter = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) s.diameter = std::max(s.diameter, s.dist(i, j));
    s.c_d = quasi_triangle_constant(s);
}

}  // namespace

std::string metric_rule_name(MetricRule rule) {
    switch (rule) {
        case MetricRule::Matrix: return "matrix";
        case MetricRule::Euclidean: return "euclidean";
        case MetricRule::MaxCoordinate: return "max";
        case MetricRule::Snowflake: return "snowflake";
    }
    return "matrix";
}

MetricRule metric_rule_from_name(const std::string& name) {
    if (name == "matrix") return MetricRule::Matrix;
    if (name == "euclidean") return MetricRule::Euclidean;
    if (name == "max") return MetricRule::MaxCoordinate;
    if (name == "snowflake") return MetricRule::Snowflake;
    throw InvalidDistance("unknown metric rule: " + name);
}

double PseudoMetricSpace::min_positive_distance() const {
    const int n = size();
    double m = std::numeric_limits<double>::infinity();
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) m = std::min(m, dist(i, j));
    return m;
}

PseudoMetricSpace make_space_from_table(std::vector<std::string> ids,
                                        std::vector<double> table) {
    const size_t n = ids.size();
    if (table.size() != n * n) throw InvalidDistance("distance table has wrong size");
    for (size_t i = 0; i < n; ++i) {
        if (table[i * n + i] != 0.0)
            throw InvalidDistance("nonzero diagonal entry at " + ids[i]);
        for (size_t j = 0; j < n; ++j) {
            const double d = table[i * n + j];
            if (d < 0.0 || !std::isfinite(d))
                throw InvalidDistance("invalid entry at (" + ids[i] + "," + ids[j] + ")");
            if (d != table[j * n + i])
                throw SymmetryViolation("asymmetric entries at (" + ids[i] + "," + ids[j] + ")");
            if (i != j && d == 0.0)
                throw DegeneratePair("zero distance between " + ids[i] + " and " + ids[j]);
        }
    }
    PseudoMetricSpace s;
    s.ids = std::move(ids);
    s.rule = MetricRule::Matrix;
    s.table = std::move(table);
    finalize(s);
    return s;
}

PseudoMetricSpace make_space_from_coords(std::vector<std::string> ids,
                                         std::vector<std::vector<double>> coords,
                                         MetricRule rule, double p) {
    if (rule == MetricRule::Matrix)
        throw InvalidDistance("coordinate construction needs a coordinate rule");
    if (rule == MetricRule::Snowflake && !(p > 0.0 && p <= 1.0))
        throw InvalidDistance("snowflake power must lie in (0,1]");
    const size_t n = ids.size();
    if (coords.size() != n) throw InvalidDistance("coordinate list has wrong size");
    PseudoMetricSpace s;
    s.ids = std::move(ids);
    s.coords = std::move(coords);
    s.rule = rule;
    s.snowflake_p = (rule == MetricRule::Snowflake) ? p : 1.0;
    s.table.assign(n * n, 0.0);
    for (size_t i = 0; i < n; ++i) {
        for (size_t j = i + 1; j < n; ++j) {
            const double d = rule_distance(s.coords[i], s.coords[j], rule, s.snowflake_p);
            if (d == 0.0)
                throw DegeneratePair("coincident points " + s.ids[i] + " and " + s.ids[j]);
            s.table[i * n + j] = d;
            s.table[j * n + i] = d;
        }
    }
    finalize(s);
    return s;
}

double quasi_triangle_constant(const PseudoMetricSpace& space) {
    const int n = space.size();
    // Coordinate-backed rules are true metrics (a concave power of a metric
    // is a metric), so the scan would only report rounding noise above 1;
    // it also keeps large spaces clear of the O(n^3) cost.
    if (space.rule != MetricRule::Matrix) return 1.0;
    double c = 1.0;
    for (int x = 0; x < n; ++x) {
        for (int z = x + 1; z < n; ++z) {
            const double dxz = space.dist(x, z);
            for (int y = 0; y < n; ++y) {
                if (y == x || y == z) continue;
                const double denom = space.dist(x, y) + space.dist(y, z);
                if (denom > 0.0) c = std::max(c, dxz / denom);
            }
        }
    }
    return c;
}

PseudoMetricSpace generate_cantor(double contraction_ratio, int level,
                                  double a, double b) {
    if (!(contraction_ratio > 0.0 && contraction_ratio <= 0.5))
        throw InvalidRatio("contraction ratio must lie in (0, 1/2]");
    if (level < 0) throw InvalidRatio("level must be nonnegative");
    if (!(b > a)) throw InvalidRatio("interval must satisfy b > a");

    std::vector<double> pts;

    // When the ratio is 1/q for integer q, endpoints are exact rationals
    // num/q^level and are generated in integer arithmetic so that equal
    // spacings produce identical floating-point distances.
    const double inv = 1.0 / contraction_ratio;
    const long long q = std::llround(inv);
    const bool exact = std::abs(inv - static_cast<double>(q)) < 1e-9 &&
                       level * std::log2(static_cast<double>(q)) < 52.0;
    if (exact) {
        long long den = 1;
        for (int i = 0; i < level; ++i) den *= q;
        std::vector<std::pair<long long, long long>> intervals{{0, den}};
        for (int d = 0; d < level; ++d) {
            std::vector<std::pair<long long, long long>> next;
            next.reserve(intervals.size() * 2);
            for (auto [u, v] : intervals) {
                const long long len = (v - u) / q;
                next.emplace_back(u, u + len);
                next.emplace_back(v - len, v);
            }
            intervals = std::move(next);
        }
        for (auto [u, v] : intervals) {
            pts.push_back(a + (b - a) * (static_cast<double>(u) / static_cast<double>(den)));
            pts.push_back(a + (b - a) * (static_cast<double>(v) / static_cast<double>(den)));
        }
    } else {
        std::vector<std::pair<double, double>> intervals{{a, b}};
        for (int d = 0; d < level; ++d) {
            std::vector<std::pair<double, double>> next;
            next.reserve(intervals.size() * 2);
            for (auto [u, v] : intervals) {
                const double len = contraction_ratio * (v - u);
                next.emplace_back(u, u + len);
                next.emplace_back(v - len, v);
            }
            intervals = std::move(next);
        }
        for (auto [u, v] : intervals) {
            pts.push_back(u);
            pts.push_back(v);
        }
    }

    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());

    std::vector<std::string> ids;
    std::vector<std::vector<double>> coords;
    ids.reserve(pts.size());
    coords.reserve(pts.size());
    for (size_t i = 0; i < pts.size(); ++i) {
        ids.push_back("p" + std::to_string(i));
        coords.push_back({pts[i]});
    }
    return make_space_from_coords(std::move(ids), std::move(coords), MetricRule::Euclidean);
}

PseudoMetricSpace union_spaces(const PseudoMetricSpace& a, const PseudoMetricSpace& b) {
    if (!a.has_coords() || !b.has_coords())
        throw MetricMismatch("union requires coordinate-backed spaces");
    if (a.rule != b.rule || (a.rule == MetricRule::Snowflake && a.snowflake_p != b.snowflake_p))
        throw MetricMismatch("union requires identical metric rules");

    std::vector<std::vector<double>> merged = a.coords;
    merged.insert(merged.end(), b.coords.begin(), b.coords.end());
    std::sort(merged.begin(), merged.end());
    merged.erase(std::unique(merged.begin(), merged.end()), merged.end());

    std::vector<std::string> ids;
    ids.reserve(merged.size());
    for (size_t i = 0; i < merged.size(); ++i) ids.push_back("p" + std::to_string(i));
    return make_space_from_coords(std::move(ids), std::move(merged), a.rule, a.snowflake_p);
}

Ball make_ball(const PseudoMetricSpace& space, int center, double radius) {
    Ball ball;
    ball.center = center;
    ball.radius = radius;
    for (int i = 0; i < space.size(); ++i)
        if (space.dist(center, i) < radius) ball.members.push_back(i);
    return ball;
}

}  // namespace metricdim
