#ifndef SINRSCHED_MODEL_HPP
#define SINRSCHED_MODEL_HPP

#include <Eigen/Dense>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace sinrsched {

using Point = Eigen::Vector2d;

struct Node {
    int id = -1;
    Point pos{0.0, 0.0};
};

struct Link {
    int id = -1;
    int sender = -1;    // node id
    int receiver = -1;  // node id
};

/// A link with its endpoint coordinates resolved, the unit most operations
/// work on.  `id` may be -1 for synthetic sets built directly in tests.
struct LinkGeom {
    int id = -1;
    int sender_node = -1;
    int receiver_node = -1;
    Point sender{0.0, 0.0};
    Point receiver{0.0, 0.0};

    double length() const { return (sender - receiver).norm(); }
};

/// Physical-layer constants shared by every computation.
struct PhysicalParams {
    double eta = 1.0;     // gain scale
    double kappa = 3.0;   // path-loss exponent
    double xi = 0.01;     // ambient noise power
    double sigma = 10.0;  // SINR decoding threshold
    double alpha = 2.0;   // disk-dilation factor used by the bridging step

    /// beta = (2*alpha - 1) / (alpha - 1); grows as alpha approaches 1.
    double beta() const;

    /// Throws std::invalid_argument when any constant is out of range.
    void validate() const;
};

/// Per-link transmit powers keyed by link id.
struct PowerAssignment {
    std::map<int, double> watts;

    double at(int link_id) const;
    double min_power() const;
    double max_power() const;
    /// max/min power ratio; 1 for empty or single-link assignments.
    double ratio() const;
};

/// Validated node/link container.  Construction checks referential
/// integrity and that every link length lies within [r_min, r_max].
class Topology {
public:
    Topology(std::vector<Node> nodes, std::vector<Link> links, double r_min, double r_max);

    const std::vector<Node>& nodes() const { return nodes_; }
    const std::vector<Link>& links() const { return links_; }
    /// Link geometries, index-aligned with links().
    const std::vector<LinkGeom>& geoms() const { return geoms_; }
    double r_min() const { return r_min_; }
    double r_max() const { return r_max_; }

    const Node& node(int id) const;
    double max_length() const;
    /// log2(r_max / r_min), the length diversity of the instance.
    double length_diversity() const;

private:
    std::vector<Node> nodes_;
    std::vector<Link> links_;
    std::vector<LinkGeom> geoms_;
    std::map<int, std::size_t> node_index_;
    double r_min_ = 0.0;
    double r_max_ = 0.0;
};

/// Received-power fraction min{eta * d^-kappa, 1} between two points.
/// Throws std::invalid_argument when the points coincide.
double path_gain(const Point& from, const Point& to, const PhysicalParams& params);

/// True when the two descriptors denote the same link: matching non-negative
/// ids, or exactly equal endpoint coordinates when ids are absent.
bool same_link(const LinkGeom& a, const LinkGeom& b);

/// True when the two links share an endpoint node (by id when available,
/// otherwise by exact coordinates).
bool shares_node(const LinkGeom& a, const LinkGeom& b);

/// SINR of `link` transmitting at `power` while every link in `active`
/// transmits concurrently.  An entry of `active` equal to `link` itself is
/// skipped, so the set may or may not contain the link under test.
double sinr(const LinkGeom& link, double power, std::span<const LinkGeom> active,
            std::span<const double> active_powers, const PhysicalParams& params);

struct FeasibilityOptions {
    bool require_node_disjoint = true;
};

/// True when the set is mutually decodable: every link's SINR clears
/// params.sigma, and (by default) no two links share a node.
bool check_feasible(std::span<const LinkGeom> links, std::span<const double> powers,
                    const PhysicalParams& params, const FeasibilityOptions& opts = {});

/// Noise-inflation constant c = sigma / (1 - sigma*xi / (p*g)).  Throws
/// std::domain_error when the link cannot decode even without interference
/// (p*g <= sigma*xi).
double noise_factor(const LinkGeom& link, double power, const PhysicalParams& params);

/// Largest noise factor over an index-aligned link/power set.
double max_noise_factor(std::span<const LinkGeom> links, std::span<const double> powers,
                        const PhysicalParams& params);

/// Normalized interference pressure on `link` from `others`: the noise
/// factor times the sum of received-power ratios.  At most 1 exactly when
/// the link's SINR against `others` clears sigma.
double affectance(const LinkGeom& link, double power, std::span<const LinkGeom> others,
                  std::span<const double> other_powers, const PhysicalParams& params);

}  // namespace sinrsched

#endif
