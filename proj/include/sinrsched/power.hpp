#ifndef SINRSCHED_POWER_HPP
#define SINRSCHED_POWER_HPP

#include <optional>
#include <span>
#include <vector>

#include "sinrsched/model.hpp"

namespace sinrsched {

/// Families of oblivious power laws: Uniform p = scale, Linear p = scale *
/// d^kappa, Mean p = scale * d^(kappa/2).
enum class FixedPowerKind { Uniform, Linear, Mean };

/// Smallest power that decodes a link of the given length with zero
/// interference: sigma * xi * length^kappa / eta.
double decodability_floor(double length, const PhysicalParams& params);

/// Applies the chosen power law to every link.  Throws std::domain_error
/// when any link would fall below its decodability floor.
PowerAssignment assign_fixed(std::span<const LinkGeom> links, FixedPowerKind kind, double scale,
                             const PhysicalParams& params);

/// True when the assignment is non-decreasing in link length and the
/// normalized power p / d^kappa is non-increasing in link length.
bool check_monotone_sublinear(std::span<const LinkGeom> links, const PowerAssignment& pa,
                              double kappa);

struct ScaleWindow {
    double lo = 0.0;
    double hi = 0.0;
};

/// Interval of multipliers m for which the iterative power recurrence is
/// guaranteed feasible on any link set with separation value phi:
/// m in [(1 -+ sqrt(1 - D)) / (2*beta^kappa*phi*sigma*(sigma+1))] where
/// D = 4*beta^kappa*phi*sigma*(sigma+1).  Empty (nullopt) when D > 1; at
/// the feasibility target phi* the window collapses to exactly {2}.
std::optional<ScaleWindow> power_scale_window(double phi, double sigma, double alpha,
                                              double kappa);

/// Sequential power recurrence over `ordered` links:
///   p_1 = m * sigma * xi * d_1^kappa / eta
///   p_i = m * sigma * d_i^kappa * (sum_{j<i} p_j / d(s_j, t_i)^kappa + xi / eta)
/// Powers are index-aligned with the input order.
std::vector<double> iterative_power_assign(std::span<const LinkGeom> ordered, double m,
                                           const PhysicalParams& params);

/// Upper bound on any power the recurrence can emit on a set with
/// separation value phi and lengths at most reference_r:
/// m*sigma*xi*reference_r^kappa / ((1 - m*sigma*phi) * eta).  Throws
/// std::domain_error when m*sigma*phi >= 1.
double power_ceiling(double m, double reference_r, double phi, const PhysicalParams& params);

}  // namespace sinrsched

#endif
