#include "sinrsched/simulator.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <thread>

#include "sinrsched/rng.hpp"

namespace sinrsched {

Topology gen_random_topology(int n_nodes, int n_links, double area_side, double r_min,
                             double r_max, std::uint64_t seed) {
    if (n_nodes < 2) throw std::invalid_argument("topology gen: need at least two nodes");
    if (!(area_side > 0.0)) throw std::invalid_argument("topology gen: area must be positive");
    if (!(r_min > 0.0) || r_max < r_min)
        throw std::invalid_argument("topology gen: need 0 < r_min <= r_max");
    const int pairs = n_nodes / 2;
    if (n_links < 1 || n_links > pairs)
        throw std::invalid_argument("topology gen: need 1 <= n_links <= n_nodes / 2");

    std::mt19937_64 rng(seed);
    std::vector<Node> nodes(n_nodes);
    for (int i = 0; i < pairs; ++i) {
        const Point s{uniform_range(rng, 0.0, area_side), uniform_range(rng, 0.0, area_side)};
        // Area-uniform draw in the annulus [r_min, r_max] around the sender.
        const double angle = uniform_range(rng, 0.0, 2.0 * std::numbers::pi);
        const double radius =
            std::sqrt(r_min * r_min + uniform_unit(rng) * (r_max * r_max - r_min * r_min));
        nodes[i] = Node{i, s};
        nodes[pairs + i] = Node{pairs + i, s + radius * Point{std::cos(angle), std::sin(angle)}};
    }
    for (int i = 2 * pairs; i < n_nodes; ++i)
        nodes[i] = Node{i, {uniform_range(rng, 0.0, area_side), uniform_range(rng, 0.0, area_side)}};

    std::vector<Link> links(n_links);
    for (int i = 0; i < n_links; ++i) links[i] = Link{i, i, pairs + i};
    return Topology(std::move(nodes), std::move(links), r_min, r_max);
}

Eigen::ArrayXi poisson_arrivals(std::mt19937_64& rng, double lambda, int n, int y_max) {
    if (lambda < 0.0) throw std::invalid_argument("arrivals: lambda must be non-negative");
    Eigen::ArrayXi y(n);
    for (int i = 0; i < n; ++i) y[i] = poisson_draw(rng, lambda, y_max);
    return y;
}

Eigen::ArrayXi queue_step(const Eigen::ArrayXi& q, const Eigen::ArrayXi& served,
                          const Eigen::ArrayXi& arrivals) {
    return (q - served).max(0) + arrivals;
}

std::string to_string(Policy p) {
    switch (p) {
        case Policy::Adjustable: return "adjustable";
        case Policy::Fixed: return "fixed";
        case Policy::Greedy: return "greedy";
        case Policy::Weight: return "weight";
    }
    return "?";
}

std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::Stable: return "stable";
        case Verdict::Unstable: return "unstable";
        case Verdict::Inconclusive: return "inconclusive";
    }
    return "?";
}

Verdict stability_verdict(const std::vector<long long>& totals, double window_frac,
                          double slope_tol, double* slope_out) {
    if (!(window_frac > 0.0 && window_frac <= 1.0))
        throw std::invalid_argument("verdict: window_frac must lie in (0, 1]");
    if (!(slope_tol > 0.0)) throw std::invalid_argument("verdict: slope_tol must be positive");
    const std::size_t n = totals.size();
    const std::size_t w = static_cast<std::size_t>(std::floor(window_frac * n));
    if (w < 1000) throw std::invalid_argument("verdict: window spans fewer than 1000 slots");

    const std::size_t start = n - w;
    // Least squares with the time axis centered for conditioning.
    const double t_mean = (w - 1) / 2.0;
    double y_mean = 0.0;
    for (std::size_t i = start; i < n; ++i) y_mean += static_cast<double>(totals[i]);
    y_mean /= w;
    double num = 0.0, den = 0.0;
    long long w_min = totals[start];
    for (std::size_t i = start; i < n; ++i) {
        const double dt = static_cast<double>(i - start) - t_mean;
        num += dt * (static_cast<double>(totals[i]) - y_mean);
        den += dt * dt;
        w_min = std::min(w_min, totals[i]);
    }
    const double slope = num / den;
    if (slope_out) *slope_out = slope;

    if (slope <= slope_tol &&
        static_cast<double>(totals.back()) <= 10.0 * static_cast<double>(w_min))
        return Verdict::Stable;
    if (slope >= 10.0 * slope_tol) return Verdict::Unstable;
    return Verdict::Inconclusive;
}

double default_power_scale(const Topology& topo, FixedPowerKind kind,
                           const PhysicalParams& params) {
    const double d = topo.max_length();
    switch (kind) {
        case FixedPowerKind::Uniform: return 2.0 * decodability_floor(d, params);
        case FixedPowerKind::Linear: return 2.0 * params.sigma * params.xi / params.eta;
        case FixedPowerKind::Mean:
            return 2.0 * params.sigma * params.xi * std::pow(d, params.kappa / 2.0) / params.eta;
    }
    return 0.0;
}

BacklogTrace run(const SimConfig& cfg_in, const Topology& topo, const PhysicalParams& params) {
    SimConfig cfg = cfg_in;
    cfg.adjustable.r_min = topo.r_min();
    cfg.fixed.r_min = topo.r_min();
    if (cfg.horizon < 1) throw std::invalid_argument("run: horizon must be positive");
    if (cfg.lambda < 0.0) throw std::invalid_argument("run: lambda must be non-negative");
    if (cfg.init_queue_lo < 0 || cfg.init_queue_hi < cfg.init_queue_lo)
        throw std::invalid_argument("run: bad initial queue range");
    params.validate();

    const auto& geoms = topo.geoms();
    const int n = static_cast<int>(geoms.size());
    if (n == 0) throw std::invalid_argument("run: topology has no links");

    PowerAssignment fixed_pa;
    if (cfg.policy != Policy::Adjustable) {
        const double scale = cfg.power_scale > 0.0
                                 ? cfg.power_scale
                                 : default_power_scale(topo, cfg.power_kind, params);
        fixed_pa = assign_fixed(geoms, cfg.power_kind, scale, params);
    }

    std::mt19937_64 rng(cfg.seed);
    Eigen::ArrayXi q(n);
    for (int i = 0; i < n; ++i) q[i] = uniform_int(rng, cfg.init_queue_lo, cfg.init_queue_hi);

    std::map<int, int> index_of_id;
    for (int i = 0; i < n; ++i) index_of_id[geoms[static_cast<std::size_t>(i)].id] = i;

    BacklogTrace trace;
    trace.total_backlog.reserve(cfg.horizon);
    trace.scheduled_count.reserve(cfg.horizon);
    trace.max_power.reserve(cfg.horizon);

    std::vector<double> weights(static_cast<std::size_t>(n));
    for (long t = 0; t < cfg.horizon; ++t) {
        for (int i = 0; i < n; ++i) weights[static_cast<std::size_t>(i)] = q[i];

        Schedule s;
        switch (cfg.policy) {
            case Policy::Adjustable:
                s = adjustable_power_schedule(geoms, weights, params, cfg.adjustable);
                break;
            case Policy::Fixed:
                s = fixed_power_schedule(geoms, weights, fixed_pa, params, cfg.fixed);
                break;
            case Policy::Greedy:
                s = greedy_schedule(geoms, weights, fixed_pa, params);
                break;
            case Policy::Weight:
                s = weight_band_schedule(geoms, weights, fixed_pa, params);
                break;
        }

        // Re-verify before serving: a policy emitting an undecodable set
        // is a bug worth halting on.
        std::vector<LinkGeom> active;
        std::vector<double> active_p;
        std::vector<int> active_idx;
        for (int id : s.link_ids) {
            active_idx.push_back(index_of_id.at(id));
            active.push_back(geoms[static_cast<std::size_t>(active_idx.back())]);
            active_p.push_back(s.powers.at(id));
        }
        if (!check_feasible(active, active_p, params))
            throw std::runtime_error("run: infeasible schedule at slot " + std::to_string(t));

        Eigen::ArrayXi served = Eigen::ArrayXi::Zero(n);
        double p_max = 0.0;
        for (std::size_t k = 0; k < active.size(); ++k) {
            served[active_idx[k]] = 1;
            p_max = std::max(p_max, active_p[k]);
        }
        const Eigen::ArrayXi arrivals = poisson_arrivals(rng, cfg.lambda, n, cfg.y_max);
        q = queue_step(q, served, arrivals);

        trace.total_backlog.push_back(q.cast<long long>().sum());
        trace.scheduled_count.push_back(static_cast<int>(active.size()));
        trace.max_power.push_back(p_max);
    }

    const std::size_t w =
        static_cast<std::size_t>(std::floor(cfg.window_frac * trace.total_backlog.size()));
    if (w >= 1000)
        trace.verdict =
            stability_verdict(trace.total_backlog, cfg.window_frac, cfg.slope_tol, &trace.slope);
    return trace;
}

double SweepResult::max_stable_lambda() const {
    double best = -1.0;
    for (const SweepPoint& p : points)
        if (p.verdict == Verdict::Stable) best = std::max(best, p.lambda);
    return best;
}

std::vector<std::pair<double, double>> SweepResult::inversions() const {
    std::vector<std::pair<double, double>> out;
    for (const SweepPoint& u : points) {
        if (u.verdict != Verdict::Unstable) continue;
        for (const SweepPoint& s : points)
            if (s.verdict == Verdict::Stable && s.lambda > u.lambda)
                out.emplace_back(u.lambda, s.lambda);
    }
    return out;
}

SweepResult sweep(const SimConfig& cfg, const Topology& topo, const PhysicalParams& params,
                  const std::vector<double>& grid, int threads) {
    SweepResult result;
    result.points.resize(grid.size());
    if (grid.empty()) return result;
    if (threads <= 0) threads = static_cast<int>(std::thread::hardware_concurrency());
    threads = std::max(1, std::min<int>(threads, static_cast<int>(grid.size())));

    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
        for (std::size_t i = next.fetch_add(1); i < grid.size(); i = next.fetch_add(1)) {
            SimConfig point_cfg = cfg;
            point_cfg.lambda = grid[i];
            point_cfg.seed = cfg.seed + i;
            const BacklogTrace trace = run(point_cfg, topo, params);
            result.points[i] = SweepPoint{grid[i], trace.verdict, trace.slope,
                                          trace.total_backlog.back()};
        }
    };
    if (threads == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    return result;
}

}  // namespace sinrsched
