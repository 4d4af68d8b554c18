#ifndef SINRSCHED_SCHEDULING_HPP
#define SINRSCHED_SCHEDULING_HPP

#include <cstddef>
#include <span>
#include <vector>

#include "sinrsched/bridging.hpp"
#include "sinrsched/model.hpp"
#include "sinrsched/power.hpp"

namespace sinrsched {

/// One slot's activation decision: which links transmit and at what power.
struct Schedule {
    std::vector<int> link_ids;  // ascending
    PowerAssignment powers;
    double total_weight = 0.0;

    std::size_t size() const { return link_ids.size(); }
};

/// Indices of the links in the heaviest geometric length class
/// [r_min * g^j, r_min * g^(j+1)), with the top boundary closed.  Ties go
/// to the smallest class index.
std::vector<std::size_t> heaviest_length_group(std::span<const LinkGeom> links,
                                               std::span<const double> weights, double g,
                                               double r_min);

struct AdjustableOptions {
    DiskSolver solver = DiskSolver::Greedy;
    double m = 2.0;            // recurrence multiplier
    double reference_r = 0.0;  // <= 0: longest link surviving the bridge step
    bool length_grouping = false;
    double group_base = 2.0;   // geometric base g for the optional grouping
    double r_min = 1.0;        // shortest length used by the grouping
};

/// Adjustable-power scheduler: (optional length grouping) -> bridge to
/// disks -> first-fit separation partition at the feasibility target ->
/// heaviest group -> iterative power recurrence in decreasing-weight
/// order.  The result always passes check_feasible.
Schedule adjustable_power_schedule(std::span<const LinkGeom> links, std::span<const double> weights,
                                   const PhysicalParams& params, const AdjustableOptions& opts = {});

struct RefineResult {
    std::vector<std::vector<std::size_t>> bins;  // indices into the input set
    std::vector<std::size_t> rejected;           // links infeasible even alone
};

/// First-fit refinement under fixed powers: sweep links in decreasing
/// weight, place each into the first bin that stays SINR-feasible as a
/// whole, open a new bin otherwise.  Links that cannot decode even alone
/// are rejected.
RefineResult first_fit_isl_refine(std::span<const LinkGeom> links, std::span<const double> weights,
                                  std::span<const double> powers, const PhysicalParams& params);

struct FixedOptions {
    DiskSolver solver = DiskSolver::Greedy;
    double rho_threshold = 2.0;  // power spread above which dyadic banding kicks in
    bool length_grouping = false;
    double group_base = 2.0;
    double r_min = 1.0;
};

/// Fixed-power scheduler: bridge to disks -> (dyadic power banding when
/// the surviving power spread exceeds rho_threshold, keeping the heaviest
/// band) -> first-fit SINR refinement -> heaviest bin.
Schedule fixed_power_schedule(std::span<const LinkGeom> links, std::span<const double> weights,
                              const PowerAssignment& pa, const PhysicalParams& params,
                              const FixedOptions& opts = {});

/// Baseline: sweep links in decreasing weight, keep each whose addition
/// leaves the set feasible.  The result is maximal: no rejected link can
/// be added afterwards.
Schedule greedy_schedule(std::span<const LinkGeom> links, std::span<const double> weights,
                         const PowerAssignment& pa, const PhysicalParams& params);

/// Baseline: drop links lighter than max_weight / (2 * |input|), split the
/// survivors into dyadic weight bands, run a shortest-first cardinality
/// greedy per band, and keep the heaviest band result.
Schedule weight_band_schedule(std::span<const LinkGeom> links, std::span<const double> weights,
                              const PowerAssignment& pa, const PhysicalParams& params);

/// Exact maximum-weight feasible subset under the given fixed powers, by
/// branch and bound over subsets.  Ties resolve to the lexicographically
/// smallest id set.  Throws std::invalid_argument above the size cap.
Schedule exact_mwisl(std::span<const LinkGeom> links, std::span<const double> weights,
                     const PowerAssignment& pa, const PhysicalParams& params,
                     std::size_t cap = 15);

}  // namespace sinrsched

#endif
