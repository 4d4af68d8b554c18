#include "sinrsched/power.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace sinrsched {

double decodability_floor(double length, const PhysicalParams& params) {
    if (!(length > 0.0)) throw std::invalid_argument("decodability floor: length must be positive");
    return params.sigma * params.xi * std::pow(length, params.kappa) / params.eta;
}

PowerAssignment assign_fixed(std::span<const LinkGeom> links, FixedPowerKind kind, double scale,
                             const PhysicalParams& params) {
    if (!(scale > 0.0)) throw std::invalid_argument("assign_fixed: scale must be positive");
    PowerAssignment pa;
    for (std::size_t i = 0; i < links.size(); ++i) {
        const double d = links[i].length();
        double p = scale;
        switch (kind) {
            case FixedPowerKind::Uniform: break;
            case FixedPowerKind::Linear: p = scale * std::pow(d, params.kappa); break;
            case FixedPowerKind::Mean: p = scale * std::pow(d, params.kappa / 2.0); break;
        }
        if (p < decodability_floor(d, params) * (1.0 - 1e-12))
            throw std::domain_error("assign_fixed: power below the decodability floor for link " +
                                    std::to_string(links[i].id));
        const int key = links[i].id >= 0 ? links[i].id : static_cast<int>(i);
        pa.watts[key] = p;
    }
    return pa;
}

bool check_monotone_sublinear(std::span<const LinkGeom> links, const PowerAssignment& pa,
                              double kappa) {
    const double tol = 1e-9;
    for (std::size_t i = 0; i < links.size(); ++i) {
        for (std::size_t j = 0; j < links.size(); ++j) {
            const double di = links[i].length();
            const double dj = links[j].length();
            if (di < dj) continue;
            const double pi = pa.at(links[i].id >= 0 ? links[i].id : static_cast<int>(i));
            const double pj = pa.at(links[j].id >= 0 ? links[j].id : static_cast<int>(j));
            if (pi < pj * (1.0 - tol)) return false;
            if (pi / std::pow(di, kappa) > pj / std::pow(dj, kappa) * (1.0 + tol)) return false;
        }
    }
    return true;
}

std::optional<ScaleWindow> power_scale_window(double phi, double sigma, double alpha,
                                              double kappa) {
    if (!(phi > 0.0)) throw std::invalid_argument("scale window: phi must be positive");
    if (!(sigma > 0.0)) throw std::invalid_argument("scale window: sigma must be positive");
    if (!(alpha > 1.0)) throw std::invalid_argument("scale window: alpha must exceed 1");
    const double beta = (2.0 * alpha - 1.0) / (alpha - 1.0);
    const double a = std::pow(beta, kappa) * phi * sigma * (sigma + 1.0);
    double under = 1.0 - 4.0 * a;
    // At the exact boundary phi = phi* the discriminant is 0 up to roundoff,
    // and the cancellation in 1 - 4a cannot resolve values below ~1e-12;
    // sqrt would inflate that noise to ~1e-6-wide windows (or NaN on the
    // negative side), so snap the unresolvable tail to an exact collapse.
    if (std::abs(under) <= 1e-12) under = 0.0;
    if (under < 0.0) return std::nullopt;
    const double root = std::sqrt(under);
    return ScaleWindow{(1.0 - root) / (2.0 * a), (1.0 + root) / (2.0 * a)};
}

std::vector<double> iterative_power_assign(std::span<const LinkGeom> ordered, double m,
                                           const PhysicalParams& params) {
    if (!(m > 0.0)) throw std::invalid_argument("iterative power: m must be positive");
    std::vector<double> powers;
    powers.reserve(ordered.size());
    for (std::size_t i = 0; i < ordered.size(); ++i) {
        const double d = ordered[i].length();
        double load = params.xi / params.eta;
        for (std::size_t j = 0; j < i; ++j) {
            const double cross = (ordered[j].sender - ordered[i].receiver).norm();
            load += powers[j] / std::pow(cross, params.kappa);
        }
        powers.push_back(m * params.sigma * std::pow(d, params.kappa) * load);
    }
    return powers;
}

double power_ceiling(double m, double reference_r, double phi, const PhysicalParams& params) {
    if (!(m > 0.0)) throw std::invalid_argument("power ceiling: m must be positive");
    if (!(reference_r > 0.0))
        throw std::invalid_argument("power ceiling: reference_r must be positive");
    if (!(phi > 0.0)) throw std::invalid_argument("power ceiling: phi must be positive");
    const double drain = m * params.sigma * phi;
    if (drain >= 1.0)
        throw std::domain_error("power ceiling: m*sigma*phi >= 1, recurrence may diverge");
    return m * params.sigma * params.xi * std::pow(reference_r, params.kappa) /
           ((1.0 - drain) * params.eta);
}

}  // namespace sinrsched
