#include "sinrsched/model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <stdexcept>

namespace sinrsched {

double PhysicalParams::beta() const { return (2.0 * alpha - 1.0) / (alpha - 1.0); }

void PhysicalParams::validate() const {
    if (!(eta > 0.0)) throw std::invalid_argument("params: eta must be positive");
    if (!(kappa > 2.0)) throw std::invalid_argument("params: kappa must exceed 2");
    if (!(xi > 0.0)) throw std::invalid_argument("params: xi must be positive");
    if (!(sigma > 0.0)) throw std::invalid_argument("params: sigma must be positive");
    if (!(alpha > 1.0)) throw std::invalid_argument("params: alpha must exceed 1");
}

double PowerAssignment::at(int link_id) const {
    auto it = watts.find(link_id);
    if (it == watts.end())
        throw std::out_of_range("power assignment: no entry for link " + std::to_string(link_id));
    return it->second;
}

double PowerAssignment::min_power() const {
    if (watts.empty()) throw std::out_of_range("power assignment: empty");
    double m = std::numeric_limits<double>::infinity();
    for (const auto& [id, p] : watts) m = std::min(m, p);
    return m;
}

double PowerAssignment::max_power() const {
    if (watts.empty()) throw std::out_of_range("power assignment: empty");
    double m = 0.0;
    for (const auto& [id, p] : watts) m = std::max(m, p);
    return m;
}

double PowerAssignment::ratio() const {
    if (watts.size() < 2) return 1.0;
    return max_power() / min_power();
}

Topology::Topology(std::vector<Node> nodes, std::vector<Link> links, double r_min, double r_max)
    : nodes_(std::move(nodes)), links_(std::move(links)), r_min_(r_min), r_max_(r_max) {
    if (!(r_min_ > 0.0)) throw std::invalid_argument("topology: r_min must be positive");
    if (r_max_ < r_min_) throw std::invalid_argument("topology: r_max must be >= r_min");
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
        if (!node_index_.emplace(nodes_[i].id, i).second)
            throw std::invalid_argument("topology: duplicate node id " + std::to_string(nodes_[i].id));
    }
    std::set<int> link_ids;
    geoms_.reserve(links_.size());
    const double tol = 1e-9 * r_max_;
    for (const Link& l : links_) {
        if (!link_ids.insert(l.id).second)
            throw std::invalid_argument("topology: duplicate link id " + std::to_string(l.id));
        if (l.sender == l.receiver)
            throw std::invalid_argument("topology: link " + std::to_string(l.id) +
                                        " has identical endpoints");
        if (node_index_.find(l.sender) == node_index_.end() ||
            node_index_.find(l.receiver) == node_index_.end())
            throw std::invalid_argument("topology: link " + std::to_string(l.id) +
                                        " references an unknown node");
        const Node& s = node(l.sender);
        const Node& t = node(l.receiver);
        LinkGeom g{l.id, l.sender, l.receiver, s.pos, t.pos};
        const double len = g.length();
        if (len < r_min_ - tol || len > r_max_ + tol)
            throw std::invalid_argument("topology: link " + std::to_string(l.id) + " length " +
                                        std::to_string(len) + " outside [r_min, r_max]");
        geoms_.push_back(g);
    }
}

const Node& Topology::node(int id) const {
    auto it = node_index_.find(id);
    if (it == node_index_.end())
        throw std::invalid_argument("topology: unknown node id " + std::to_string(id));
    return nodes_[it->second];
}

double Topology::max_length() const {
    double m = 0.0;
    for (const LinkGeom& g : geoms_) m = std::max(m, g.length());
    return m;
}

double Topology::length_diversity() const { return std::log2(r_max_ / r_min_); }

namespace {

// Gain used inside interference sums: coincident points saturate to the
// clamp value instead of throwing, so sums stay total.
double rx_gain(const Point& from, const Point& to, const PhysicalParams& params) {
    const double d = (from - to).norm();
    if (d <= 0.0) return 1.0;
    return std::min(params.eta * std::pow(d, -params.kappa), 1.0);
}

}  // namespace

double path_gain(const Point& from, const Point& to, const PhysicalParams& params) {
    const double d = (from - to).norm();
    if (d <= 0.0) throw std::invalid_argument("path_gain: coincident endpoints");
    return std::min(params.eta * std::pow(d, -params.kappa), 1.0);
}

bool same_link(const LinkGeom& a, const LinkGeom& b) {
    if (a.id >= 0 && b.id >= 0) return a.id == b.id;
    return a.sender == b.sender && a.receiver == b.receiver;
}

namespace {

bool same_endpoint(int id_a, const Point& pos_a, int id_b, const Point& pos_b) {
    if (id_a >= 0 && id_b >= 0) return id_a == id_b;
    return pos_a == pos_b;
}

}  // namespace

bool shares_node(const LinkGeom& a, const LinkGeom& b) {
    return same_endpoint(a.sender_node, a.sender, b.sender_node, b.sender) ||
           same_endpoint(a.sender_node, a.sender, b.receiver_node, b.receiver) ||
           same_endpoint(a.receiver_node, a.receiver, b.sender_node, b.sender) ||
           same_endpoint(a.receiver_node, a.receiver, b.receiver_node, b.receiver);
}

double sinr(const LinkGeom& link, double power, std::span<const LinkGeom> active,
            std::span<const double> active_powers, const PhysicalParams& params) {
    if (active.size() != active_powers.size())
        throw std::invalid_argument("sinr: links and powers must be index-aligned");
    const double wanted = power * path_gain(link.sender, link.receiver, params);
    double interference = 0.0;
    for (std::size_t j = 0; j < active.size(); ++j) {
        if (same_link(active[j], link)) continue;
        interference += active_powers[j] * rx_gain(active[j].sender, link.receiver, params);
    }
    return wanted / (interference + params.xi);
}

bool check_feasible(std::span<const LinkGeom> links, std::span<const double> powers,
                    const PhysicalParams& params, const FeasibilityOptions& opts) {
    if (links.size() != powers.size())
        throw std::invalid_argument("check_feasible: links and powers must be index-aligned");
    if (opts.require_node_disjoint) {
        for (std::size_t i = 0; i < links.size(); ++i)
            for (std::size_t j = i + 1; j < links.size(); ++j)
                if (shares_node(links[i], links[j])) return false;
    }
    for (std::size_t i = 0; i < links.size(); ++i) {
        const double wanted = powers[i] * path_gain(links[i].sender, links[i].receiver, params);
        double interference = 0.0;
        for (std::size_t j = 0; j < links.size(); ++j) {
            if (j == i) continue;
            interference += powers[j] * rx_gain(links[j].sender, links[i].receiver, params);
        }
        if (wanted / (interference + params.xi) < params.sigma) return false;
    }
    return true;
}

double noise_factor(const LinkGeom& link, double power, const PhysicalParams& params) {
    const double wanted = power * path_gain(link.sender, link.receiver, params);
    if (wanted <= params.sigma * params.xi)
        throw std::domain_error("noise_factor: link cannot decode even in isolation");
    return params.sigma / (1.0 - params.sigma * params.xi / wanted);
}

double max_noise_factor(std::span<const LinkGeom> links, std::span<const double> powers,
                        const PhysicalParams& params) {
    if (links.size() != powers.size())
        throw std::invalid_argument("max_noise_factor: links and powers must be index-aligned");
    double m = 0.0;
    for (std::size_t i = 0; i < links.size(); ++i)
        m = std::max(m, noise_factor(links[i], powers[i], params));
    return m;
}

double affectance(const LinkGeom& link, double power, std::span<const LinkGeom> others,
                  std::span<const double> other_powers, const PhysicalParams& params) {
    if (others.size() != other_powers.size())
        throw std::invalid_argument("affectance: links and powers must be index-aligned");
    const double wanted = power * path_gain(link.sender, link.receiver, params);
    const double c = noise_factor(link, power, params);
    double sum = 0.0;
    for (std::size_t j = 0; j < others.size(); ++j) {
        if (same_link(others[j], link)) continue;
        sum += other_powers[j] * rx_gain(others[j].sender, link.receiver, params) / wanted;
    }
    return c * sum;
}

}  // namespace sinrsched
