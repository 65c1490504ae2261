#pragma once

#include <string>
#include <vector>

namespace metricdim {

enum class MetricRule { Matrix, Euclidean, MaxCoordinate, Snowflake };

std::string metric_rule_name(MetricRule rule);
MetricRule metric_rule_from_name(const std::string& name);

/// A finite pseudo-metric space: point ids, an optional coordinate list,
/// a materialized symmetric distance table, the least admissible
/// quasi-triangle constant and the diameter. Immutable after construction.
struct PseudoMetricSpace {
    std::vector<std::string> ids;
    std::vector<std::vector<double>> coords;  // empty when rule == Matrix
    MetricRule rule = MetricRule::Matrix;
    double snowflake_p = 1.0;
    double c_d = 1.0;
    double diameter = 0.0;

    std::vector<double> table;  // row-major, size n*n

    int size() const { return static_cast<int>(ids.size()); }
    double dist(int i, int j) const {
        return table[static_cast<size_t>(i) * ids.size() + static_cast<size_t>(j)];
    }
    bool has_coords() const { return !coords.empty(); }
    double min_positive_distance() const;
};

struct Ball {
    int center;
    double radius;
    std::vector<int> members;  // open ball: dist(center, y) < radius
};

/// Validates the table (symmetry, zero diagonal, positivity off-diagonal)
/// and computes c_d and diameter.
PseudoMetricSpace make_space_from_table(std::vector<std::string> ids,
                                        std::vector<double> table);

/// Distances derived from coordinates under the given rule; snowflake is
/// the euclidean distance raised to the power p in (0,1].
PseudoMetricSpace make_space_from_coords(std::vector<std::string> ids,
                                         std::vector<std::vector<double>> coords,
                                         MetricRule rule, double p = 1.0);

/// Least admissible C_d: max(1, max over triples of d(x,z)/(d(x,y)+d(y,z))).
/// Coordinate-backed rules are true metrics (a concave power of a metric is
/// a metric), so the triple scan runs only for explicit tables and 1 is
/// returned directly otherwise.
double quasi_triangle_constant(const PseudoMetricSpace& space);

/// Endpoints of the 2^level surviving intervals of the iterated middle
/// deletion with the given contraction ratio, as a euclidean space on the
/// line. Ratio must lie in (0, 1/2].
PseudoMetricSpace generate_cantor(double contraction_ratio, int level,
                                  double a, double b);

/// Deduplicated union of two coordinate-backed spaces under the same metric
/// rule; distances recomputed from coordinates.
PseudoMetricSpace union_spaces(const PseudoMetricSpace& a,
                               const PseudoMetricSpace& b);

Ball make_ball(const PseudoMetricSpace& space, int center, double radius);

}  // namespace metricdim
