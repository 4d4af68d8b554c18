#ifndef SINRSCHED_SEPARATION_HPP
#define SINRSCHED_SEPARATION_HPP

#include <Eigen/Dense>
#include <cstddef>
#include <span>
#include <vector>

#include "sinrsched/model.hpp"

namespace sinrsched {

struct SeparationOptions {
    /// When set, the term between a node and its own link partner counts
    /// toward that node's sum.  Off by default: a link never interferes
    /// with itself, so own-partner terms are excluded.
    bool include_own_partner = false;
};

struct SeparationReport {
    double phi = 0.0;      // worst per-node sum of reference_r^kappa / d^kappa
    int worst_node = -1;   // node id of the maximizing endpoint (-1 when empty)
    double reference_r = 0.0;
};

/// For each point, the sum over all other points of reference_r^kappa /
/// d^kappa.  Coincident distinct points contribute +infinity.
Eigen::VectorXd node_interference_sums(std::span<const Point> points, double reference_r,
                                       double kappa);

/// Worst-node interference sum over the endpoints of `links`.  Pass
/// reference_r <= 0 to use the maximum link length of the set; an explicit
/// reference_r must cover every link length.  Empty input yields phi = 0.
SeparationReport separation_value(std::span<const LinkGeom> links, double reference_r,
                                  double kappa, const SeparationOptions& opts = {});

/// Closed-form ceiling on any node's interference sum when all points are
/// pairwise at least theta * reference_r apart:
/// 2^(2*kappa+1) * sqrt(3) * pi * kappa / (6 * (kappa - 2) * theta^kappa).
/// Requires kappa > 2 and theta > 0.
double separation_bound_for_spacing(double theta, double kappa);

/// Largest per-node sum under which the iterative power recurrence is
/// guaranteed a valid scale: 1 / (4 * beta^kappa * sigma * (sigma + 1))
/// with beta = (2*alpha - 1) / (alpha - 1).
double feasible_separation_target(double sigma, double alpha, double kappa);

/// Splits `links` into groups whose separation value stays within phi2,
/// assuming the whole set's value is within phi1 >= phi2.  Two first-fit
/// passes, each admitting a link into a group only while both of its
/// endpoints' incoming sums stay within phi2 / 2.  Returns groups of
/// indices into `links`; every link lands in exactly one group, and the
/// group count never exceeds ceil(2*phi1/phi2)^2.
std::vector<std::vector<std::size_t>> first_fit_partition(std::span<const LinkGeom> links,
                                                          double phi2, double reference_r,
                                                          double kappa);

/// The partition's worst-case group count, ceil(2*phi1/phi2)^2.
long long partition_group_bound(double phi1, double phi2);

}  // namespace sinrsched

#endif
