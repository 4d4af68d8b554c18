#ifndef SINRSCHED_BRIDGING_HPP
#define SINRSCHED_BRIDGING_HPP

#include <cstddef>
#include <span>
#include <vector>

#include "sinrsched/model.hpp"

namespace sinrsched {

/// A weighted closed disk standing in for one link (or one direction of a
/// link in bidirectional mode).
struct WeightedDisk {
    Point center{0.0, 0.0};
    double radius = 0.0;
    double weight = 0.0;
    int link_ref = -1;      // id of the originating link, -1 for synthetic disks
    bool reversed = false;  // true for the receiver-anchored disk in bidirectional mode
};

/// One disk per link, centered at the sender with radius alpha * length.
/// With `bidirectional`, two disks per link (sender- and receiver-anchored)
/// splitting the direction weights, laid out [fwd_0, rev_0, fwd_1, ...].
std::vector<WeightedDisk> links_to_disks(std::span<const LinkGeom> links,
                                         std::span<const double> weights, double alpha);
std::vector<WeightedDisk> links_to_disks_bidirectional(std::span<const LinkGeom> links,
                                                       std::span<const double> forward_weights,
                                                       std::span<const double> reverse_weights,
                                                       double alpha);

/// True when the two closed disks intersect (tangency counts as disjoint).
bool disks_overlap(const WeightedDisk& a, const WeightedDisk& b);

/// Weight-descending greedy independent set of disks; returns indices into
/// `disks` in ascending order.  Ties break by link_ref, then index.
std::vector<std::size_t> greedy_mwisd(std::span<const WeightedDisk> disks);

/// Exact maximum-weight independent set of disks by branch and bound.
/// Ties of equal weight resolve to the lexicographically smallest index
/// set.  Throws std::invalid_argument when disks.size() > cap.
std::vector<std::size_t> exact_mwisd(std::span<const WeightedDisk> disks, std::size_t cap = 20);

enum class DiskSolver { Greedy, Exact };

/// Bridge step: lift links to sender-anchored disks, solve the disk
/// problem, and map the chosen disks back to link indices (ascending).
/// Output links are pairwise sender-separated by alpha * (len_i + len_j),
/// which in particular makes them node-disjoint.
std::vector<std::size_t> bridge(std::span<const LinkGeom> links, std::span<const double> weights,
                                double alpha, DiskSolver solver = DiskSolver::Greedy);

/// Worst-case factor between the disk optimum and what a feasibility-bound
/// argument retains: ceil(2*3^kappa/sigma)^2 * ceil(sqrt(3)*pi/6 *
/// (4*alpha/delta + 1)^2), for length-diversity window delta in (0, 1].
long long disk_partition_bound(double sigma, double kappa, double alpha, double delta);

}  // namespace sinrsched

#endif
