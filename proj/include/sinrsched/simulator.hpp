#ifndef SINRSCHED_SIMULATOR_HPP
#define SINRSCHED_SIMULATOR_HPP

#include <Eigen/Dense>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "sinrsched/model.hpp"
#include "sinrsched/power.hpp"
#include "sinrsched/scheduling.hpp"

namespace sinrsched {

/// Random instance: senders uniform in an area_side x area_side square,
/// each receiver uniform in the annulus [r_min, r_max] around its sender.
/// Nodes beyond the first 2 * (n_nodes / 2) pair slots are unpaired filler.
/// Node ids: senders 0..k-1, receivers k..2k-1; link i joins i -> k+i.
Topology gen_random_topology(int n_nodes, int n_links, double area_side, double r_min,
                             double r_max, std::uint64_t seed);

/// n independent Poisson(lambda) draws truncated at y_max.
Eigen::ArrayXi poisson_arrivals(std::mt19937_64& rng, double lambda, int n, int y_max);

/// One slot of queue dynamics: max{0, q - served} + arrivals, elementwise.
Eigen::ArrayXi queue_step(const Eigen::ArrayXi& q, const Eigen::ArrayXi& served,
                          const Eigen::ArrayXi& arrivals);

enum class Policy { Adjustable, Fixed, Greedy, Weight };
enum class Verdict { Stable, Unstable, Inconclusive };

std::string to_string(Policy p);
std::string to_string(Verdict v);

struct SimConfig {
    long horizon = 100000;
    double lambda = 0.1;
    std::uint64_t seed = 1;
    Policy policy = Policy::Adjustable;

    // Fixed-power policies only.
    FixedPowerKind power_kind = FixedPowerKind::Uniform;
    double power_scale = 0.0;  // <= 0: twice the decodability floor of the longest link

    int init_queue_lo = 100;
    int init_queue_hi = 300;
    int y_max = 50;

    double window_frac = 0.5;  // tail fraction of the trace used for the verdict
    double slope_tol = 0.01;   // packets per slot

    AdjustableOptions adjustable;
    FixedOptions fixed;
};

struct BacklogTrace {
    std::vector<long long> total_backlog;   // after each slot
    std::vector<int> scheduled_count;
    std::vector<double> max_power;
    Verdict verdict = Verdict::Inconclusive;
    double slope = 0.0;  // packets per slot over the verdict window
};

/// Least-squares backlog slope over the trailing window, mapped to a
/// verdict: Stable when the slope is within slope_tol and the final
/// backlog is at most 10x the window minimum, Unstable when the slope is
/// at least 10x slope_tol, Inconclusive otherwise.  The window must span
/// at least 1000 slots.
Verdict stability_verdict(const std::vector<long long>& totals, double window_frac,
                          double slope_tol, double* slope_out = nullptr);

/// Time-slotted run: each slot schedules under current queue weights,
/// verifies the emitted set is feasible (throwing std::runtime_error with
/// the slot index otherwise), serves one packet per scheduled link, and
/// applies Poisson arrivals.
BacklogTrace run(const SimConfig& cfg, const Topology& topo, const PhysicalParams& params);

/// The scale used when SimConfig.power_scale <= 0: twice the minimum that
/// keeps every link decodable.
double default_power_scale(const Topology& topo, FixedPowerKind kind,
                           const PhysicalParams& params);

struct SweepPoint {
    double lambda = 0.0;
    Verdict verdict = Verdict::Inconclusive;
    double slope = 0.0;
    long long final_backlog = 0;
};

struct SweepResult {
    std::vector<SweepPoint> points;  // grid order
    /// Largest lambda with a Stable verdict, or a negative value when none.
    double max_stable_lambda() const;
    /// (unstable, stable) lambda pairs with the unstable point below the
    /// stable one; non-empty output flags a non-monotone boundary.
    std::vector<std::pair<double, double>> inversions() const;
};

/// Runs `cfg` at every lambda in `grid` (seed offset by the grid index so
/// points stay independent), optionally across threads; results are merged
/// in grid order regardless of thread count.
SweepResult sweep(const SimConfig& cfg, const Topology& topo, const PhysicalParams& params,
                  const std::vector<double>& grid, int threads = 1);

}  // namespace sinrsched

#endif
