#include "sinrsched/separation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace sinrsched {

namespace {

// One endpoint of a link, remembering which link owns it.
struct Endpoint {
    Point pos;
    int node_id;
    std::size_t owner;
};

double separation_term(const Point& a, const Point& b, double reference_r, double kappa) {
    const double d = (a - b).norm();
    if (d <= 0.0) return std::numeric_limits<double>::infinity();
    return std::pow(reference_r / d, kappa);
}

std::vector<Endpoint> collect_endpoints(std::span<const LinkGeom> links) {
    std::vector<Endpoint> pts;
    pts.reserve(2 * links.size());
    for (std::size_t i = 0; i < links.size(); ++i) {
        pts.push_back({links[i].sender, links[i].sender_node, i});
        pts.push_back({links[i].receiver, links[i].receiver_node, i});
    }
    return pts;
}

}  // namespace

Eigen::VectorXd node_interference_sums(std::span<const Point> points, double reference_r,
                                       double kappa) {
    if (!(reference_r > 0.0)) throw std::invalid_argument("node sums: reference_r must be positive");
    Eigen::VectorXd sums = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(points.size()));
    for (std::size_t v = 0; v < points.size(); ++v) {
        double s = 0.0;
        for (std::size_t w = 0; w < points.size(); ++w) {
            if (w == v) continue;
            s += separation_term(points[w], points[v], reference_r, kappa);
        }
        sums[static_cast<Eigen::Index>(v)] = s;
    }
    return sums;
}

SeparationReport separation_value(std::span<const LinkGeom> links, double reference_r,
                                  double kappa, const SeparationOptions& opts) {
    SeparationReport report;
    if (links.empty()) return report;
    double max_len = 0.0;
    for (const LinkGeom& g : links) max_len = std::max(max_len, g.length());
    if (reference_r <= 0.0) reference_r = max_len;
    if (reference_r < max_len * (1.0 - 1e-9))
        throw std::invalid_argument("separation_value: reference_r below the longest link");
    report.reference_r = reference_r;

    const auto pts = collect_endpoints(links);
    for (std::size_t v = 0; v < pts.size(); ++v) {
        double s = 0.0;
        for (std::size_t w = 0; w < pts.size(); ++w) {
            if (w == v) continue;
            if (!opts.include_own_partner && pts[w].owner == pts[v].owner) continue;
            s += separation_term(pts[w].pos, pts[v].pos, reference_r, kappa);
        }
        if (s > report.phi) {
            report.phi = s;
            report.worst_node = pts[v].node_id;
        }
    }
    return report;
}

double separation_bound_for_spacing(double theta, double kappa) {
    if (!(theta > 0.0)) throw std::invalid_argument("spacing bound: theta must be positive");
    if (!(kappa > 2.0)) throw std::invalid_argument("spacing bound: kappa must exceed 2");
    return std::pow(2.0, 2.0 * kappa + 1.0) * std::numbers::sqrt3 * std::numbers::pi * kappa /
           (6.0 * (kappa - 2.0) * std::pow(theta, kappa));
}

double feasible_separation_target(double sigma, double alpha, double kappa) {
    if (!(sigma > 0.0)) throw std::invalid_argument("separation target: sigma must be positive");
    if (!(alpha > 1.0)) throw std::invalid_argument("separation target: alpha must exceed 1");
    const double beta = (2.0 * alpha - 1.0) / (alpha - 1.0);
    return 1.0 / (4.0 * std::pow(beta, kappa) * sigma * (sigma + 1.0));
}

namespace {

// Incoming sum at `pos` from every endpoint of the group's links.
double incoming_sum(const std::vector<Endpoint>& pts, const std::vector<std::size_t>& group,
                    const Point& pos, double reference_r, double kappa) {
    double s = 0.0;
    for (std::size_t idx : group) {
        s += separation_term(pts[2 * idx].pos, pos, reference_r, kappa);
        s += separation_term(pts[2 * idx + 1].pos, pos, reference_r, kappa);
    }
    return s;
}

// Single first-fit sweep: admit each link (in order) into the first group
// where both of its endpoints' incoming sums stay within half_budget.
std::vector<std::vector<std::size_t>> first_fit_pass(const std::vector<Endpoint>& pts,
                                                     std::span<const std::size_t> order,
                                                     double half_budget, double reference_r,
                                                     double kappa) {
    std::vector<std::vector<std::size_t>> groups;
    for (std::size_t idx : order) {
        bool placed = false;
        for (auto& g : groups) {
            const double at_s = incoming_sum(pts, g, pts[2 * idx].pos, reference_r, kappa);
            const double at_t = incoming_sum(pts, g, pts[2 * idx + 1].pos, reference_r, kappa);
            if (at_s <= half_budget && at_t <= half_budget) {
                g.push_back(idx);
                placed = true;
                break;
            }
        }
        if (!placed) groups.push_back({idx});
    }
    return groups;
}

}  // namespace

std::vector<std::vector<std::size_t>> first_fit_partition(std::span<const LinkGeom> links,
                                                          double phi2, double reference_r,
                                                          double kappa) {
    if (!(phi2 > 0.0)) throw std::invalid_argument("partition: phi2 must be positive");
    if (!(reference_r > 0.0))
        throw std::invalid_argument("partition: reference_r must be positive");
    if (links.empty()) return {};

    const auto pts = collect_endpoints(links);
    std::vector<std::size_t> order(links.size());
    for (std::size_t i = 0; i < links.size(); ++i) order[i] = i;

    // Pass one over the input order; pass two re-sweeps each group in
    // reverse insertion order, bounding the outgoing half of every
    // endpoint's load as well.
    const double half = phi2 / 2.0;
    auto coarse = first_fit_pass(pts, order, half, reference_r, kappa);

    std::vector<std::vector<std::size_t>> result;
    for (const auto& g : coarse) {
        std::vector<std::size_t> reversed(g.rbegin(), g.rend());
        auto refined = first_fit_pass(pts, reversed, half, reference_r, kappa);
        for (auto& r : refined) result.push_back(std::move(r));
    }
    return result;
}

long long partition_group_bound(double phi1, double phi2) {
    if (!(phi1 > 0.0) || !(phi2 > 0.0))
        throw std::invalid_argument("partition bound: phi values must be positive");
    const double k = std::ceil(2.0 * phi1 / phi2);
    return static_cast<long long>(k) * static_cast<long long>(k);
}

}  // namespace sinrsched
