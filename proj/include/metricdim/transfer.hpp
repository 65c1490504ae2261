#pragma once

#include <utility>
#include <vector>

#include "metricdim/nets.hpp"
#include "metricdim/space.hpp"

namespace metricdim {

/// Probability measure supported on one net level; `mass` is indexed by
/// point index over the whole space, zero off the support.
struct DiscreteMeasure {
    int level = 0;
    std::vector<double> mass;
    double total = 0.0;

    double operator()(int point) const { return mass[point]; }
};

/// One audited mass move. Split moves carry parent-to-child distances
/// (bounded by the net scale); rebalance moves stay within the close-pair
/// threshold of the finer level.
struct TransferRecord {
    int step = 0;
    int source = 0;
    int dest = 0;
    double amount = 0.0;
    double distance = 0.0;
    int level = 0;  // m of the refinement S_m -> S_{m+1}
    bool rebalance = false;
};

struct TransferConstants {
    double a = 0.0;        // scale base A
    double c1 = 0.0;       // A^{s'-t'}
    double c2 = 0.0;       // 8*C_d^3
    double c4 = 0.0;       // 2*C_d^2 / (1 - C_d/A)
    double s_prime = 0.0;
    double t_prime = 0.0;
    double c_d = 1.0;

    static TransferConstants make(double a, double c_d, double s_prime,
                                  double t_prime);
};

/// Per-refinement verification of the mass-transfer guarantees:
/// (a) local comparability within C1 on close pairs of the finer net,
/// (b) the A^{-s'}..A^{-t'} band against the parent mass,
/// (c) conservation of total mass,
/// (d) no move longer than 2*C_d*A^{-m},
/// plus the no-relay property of the rebalance pass.
struct StepReport {
    int level = 0;
    bool a_ok = true;
    bool b_ok = true;
    bool c_ok = true;
    bool d_ok = true;
    bool no_relay_ok = true;
    std::pair<int, int> a_witness{-1, -1};
    int b_witness = -1;
    int relay_witness = -1;
    double max_move_distance = 0.0;
    double drift = 0.0;  // |total(f1) - total(f0)|

    bool all_ok() const { return a_ok && b_ok && c_ok && d_ok && no_relay_ok; }
};

/// Splits each parent's mass evenly over its children. Levels at or beyond
/// the hierarchy depth are identity levels (every point its own parent).
std::pair<DiscreteMeasure, std::vector<TransferRecord>> homogeneous_split(
    const DiscreteMeasure& f0, const NetHierarchy& h,
    const PseudoMetricSpace& space);

/// All unordered pairs of S_{m+1} within distance c2 * A^{-m-1}, in
/// lexicographic index order.
std::vector<std::pair<int, int>> close_pairs(const NetHierarchy& h,
                                             const PseudoMetricSpace& space,
                                             int m, double c2);

/// Clamps one pair into the [1/c1, c1] comparability band; when a move is
/// needed the post-state satisfies heavy = c1 * light exactly.
std::pair<DiscreteMeasure, std::vector<TransferRecord>> rebalance_pair(
    DiscreteMeasure f, std::pair<int, int> pair, double c1,
    const NetHierarchy& h, const PseudoMetricSpace& space);

struct RefineResult {
    DiscreteMeasure measure;
    std::vector<TransferRecord> records;
    StepReport report;
};

/// One full refinement S_m -> S_{m+1}: hypothesis check, homogeneous split,
/// one ordered pass over the close pairs. Throws HypothesisViolation when
/// the level-m comparability hypothesis fails.
RefineResult refine_measure(const DiscreteMeasure& f0, const NetHierarchy& h,
                            const PseudoMetricSpace& space,
                            const TransferConstants& k);

struct MeasureBuild {
    DiscreteMeasure measure;  // the stable final measure
    std::vector<DiscreteMeasure> snapshots;  // mu_j for j = 0..stable_level
    std::vector<TransferRecord> log;
    std::vector<StepReport> reports;
    int stable_level = 0;
    double conservation_drift = 0.0;
};

/// Runs the refinement chain from the uniform measure on S_0 down through
/// the hierarchy, continuing past the deepest level until no close pairs
/// remain at the working scale.
MeasureBuild build_measure(const PseudoMetricSpace& space, const NetHierarchy& h,
                           const TransferConstants& k);

}  // namespace metricdim
