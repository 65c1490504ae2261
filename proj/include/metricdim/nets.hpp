#pragma once

#include <string>
#include <unordered_map>
#include <vector>

#include "metricdim/space.hpp"

namespace metricdim {

/// Hierarchy of nested maximal A^{-j}-separated sets with nearest-parent
/// projections and the induced children partitions. In normalized mode the
/// distances are scaled so the diameter becomes 0.99; `norm_factor` is the
/// applied scale (1 in raw mode).
struct NetHierarchy {
    double scale_base = 2.0;  // A
    bool normalized = false;
    double norm_factor = 1.0;
    int depth = 0;  // J, deepest built level; S_J = X

    std::vector<std::vector<int>> levels;  // levels[j] = S_j, ascending indices
    // parents[j] maps g in S_j to its parent in S_{j-1}; parents[0] is empty.
    std::vector<std::unordered_map<int, int>> parents;
    // children[j] maps e in S_j to its child set in S_{j+1} (ascending).
    std::vector<std::unordered_map<int, std::vector<int>>> children;

    double dist(const PseudoMetricSpace& space, int i, int j) const {
        return norm_factor * space.dist(i, j);
    }
    double separation_at(int level) const;  // A^{-level}
};

/// Result of choose_scale_base: the selected A plus warnings for any
/// constraint the override violates.
struct ScaleBaseChoice {
    double a = 0.0;
    bool overridden = false;
    std::vector<std::string> warnings;
};

/// Smallest integer A with A >= 16*C_d^4, A^{s'-s} > C_s and (when t > 0)
/// A^{t-t'} > 4^t * C_d^{2t} / C_t. An override is returned as-is with the
/// violated constraints recorded as warnings.
ScaleBaseChoice choose_scale_base(double c_d, double s, double t, double s_prime,
                                  double t_prime, double c_s, double c_t,
                                  double override_a = 0.0);

NetHierarchy build_hierarchy(const PseudoMetricSpace& space, double a,
                             bool normalized);

struct ChildCountEntry {
    int level = 0;  // m, the parent level
    int point = 0;  // e in S_m
    int count = 0;  // #S_{e,m+1}
    bool ok = true;
};

struct ChildBoundsReport {
    double lower = 1.0;  // A^{t'}
    double upper = 1.0;  // A^{s'}
    std::vector<ChildCountEntry> entries;
    std::vector<ChildCountEntry> violations;
};

/// Checks A^{t'} <= #S_{e,m+1} <= A^{s'} for every parent at every level
/// m < J. Violations are reported, not fatal.
ChildBoundsReport check_child_bounds(const NetHierarchy& h, double s_prime,
                                     double t_prime);

}  // namespace metricdim
