// Command-line front end: generate topologies, print the derived bounds,
// emit one-shot schedules, and run or sweep the queue simulator.

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "sinrsched/io.hpp"
#include "sinrsched/power.hpp"
#include "sinrsched/scheduling.hpp"
#include "sinrsched/separation.hpp"
#include "sinrsched/simulator.hpp"

namespace {

using namespace sinrsched;

const std::map<std::string, Policy> kPolicyNames{{"adjustable", Policy::Adjustable},
                                                 {"fixed", Policy::Fixed},
                                                 {"greedy", Policy::Greedy},
                                                 {"weight", Policy::Weight}};
const std::map<std::string, FixedPowerKind> kPowerNames{{"uniform", FixedPowerKind::Uniform},
                                                        {"linear", FixedPowerKind::Linear},
                                                        {"mean", FixedPowerKind::Mean}};
const std::map<std::string, DiskSolver> kSolverNames{{"greedy", DiskSolver::Greedy},
                                                     {"exact", DiskSolver::Exact}};

void add_phys_flags(CLI::App* cmd, PhysicalParams& ph) {
    cmd->add_option("--eta", ph.eta, "path-gain scale");
    cmd->add_option("--xi", ph.xi, "ambient noise power");
    cmd->add_option("--sigma", ph.sigma, "SINR decoding threshold");
    cmd->add_option("--kappa", ph.kappa, "path-loss exponent");
    cmd->add_option("--alpha", ph.alpha, "disk dilation factor");
}

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

// Weights for every link of the topology, in geoms() order.
std::vector<double> aligned_weights(const Topology& topo, const std::map<int, double>& by_id) {
    std::vector<double> w;
    w.reserve(topo.geoms().size());
    for (const LinkGeom& g : topo.geoms()) {
        auto it = by_id.find(g.id);
        if (it == by_id.end())
            throw std::runtime_error("weights file has no entry for link " + std::to_string(g.id));
        w.push_back(it->second);
    }
    return w;
}

int cmd_gen(int nodes, int links, double area, double r_min, double r_max, std::uint64_t seed,
            const std::string& out) {
    const Topology topo = gen_random_topology(nodes, links, area, r_min, r_max, seed);
    save_topology(out, topo);
    std::cout << "wrote " << out << " (" << topo.nodes().size() << " nodes, "
              << topo.links().size() << " links)\n";
    return 0;
}

int cmd_bounds(const PhysicalParams& ph, double theta, double delta, double m, double ref_r,
               double phi_override) {
    ph.validate();
    const double phi_star = feasible_separation_target(ph.sigma, ph.alpha, ph.kappa);
    const double phi = phi_override > 0.0 ? phi_override : phi_star;
    std::cout << "phi_star = " << fmt(phi_star) << "\n";
    std::cout << "spacing_bound(theta=" << fmt(theta) << ") = "
              << fmt(separation_bound_for_spacing(theta, ph.kappa)) << "\n";
    if (const auto win = power_scale_window(phi, ph.sigma, ph.alpha, ph.kappa))
        std::cout << "m_window(phi=" << fmt(phi) << ") = [" << fmt(win->lo) << ", "
                  << fmt(win->hi) << "]\n";
    else
        std::cout << "m_window(phi=" << fmt(phi) << ") = empty\n";
    std::cout << "disk_partition_bound(delta=" << fmt(delta) << ") = "
              << disk_partition_bound(ph.sigma, ph.kappa, ph.alpha, delta) << "\n";
    std::cout << "power_ceiling(m=" << fmt(m) << ", R=" << fmt(ref_r) << ", phi=" << fmt(phi)
              << ") = " << fmt(power_ceiling(m, ref_r, phi, ph)) << "\n";
    return 0;
}

Schedule make_schedule(const Topology& topo, const std::vector<double>& weights, Policy policy,
                       const PhysicalParams& ph, SimConfig knobs) {
    knobs.adjustable.r_min = topo.r_min();
    knobs.fixed.r_min = topo.r_min();
    const auto& geoms = topo.geoms();
    if (policy == Policy::Adjustable)
        return adjustable_power_schedule(geoms, weights, ph, knobs.adjustable);
    const double scale = knobs.power_scale > 0.0 ? knobs.power_scale
                                                 : default_power_scale(topo, knobs.power_kind, ph);
    const PowerAssignment pa = assign_fixed(geoms, knobs.power_kind, scale, ph);
    switch (policy) {
        case Policy::Fixed: return fixed_power_schedule(geoms, weights, pa, ph, knobs.fixed);
        case Policy::Greedy: return greedy_schedule(geoms, weights, pa, ph);
        case Policy::Weight: return weight_band_schedule(geoms, weights, pa, ph);
        default: throw std::logic_error("unreachable");
    }
}

int cmd_schedule(const std::string& topo_path, const std::string& weights_path, Policy policy,
                 const PhysicalParams& ph, const SimConfig& knobs, const std::string& out) {
    const Topology topo = load_topology(topo_path);
    const auto weights = aligned_weights(topo, load_weights(weights_path));
    const Schedule s = make_schedule(topo, weights, policy, ph, knobs);
    if (out.empty()) {
        write_schedule(std::cout, s);
    } else {
        save_schedule(out, s);
        std::cout << "scheduled " << s.size() << " links, total weight " << fmt(s.total_weight)
                  << ", wrote " << out << "\n";
    }
    return 0;
}

int cmd_run(const std::string& topo_path, const SimConfig& cfg, const PhysicalParams& ph,
            const std::string& out) {
    const Topology topo = load_topology(topo_path);
    const BacklogTrace trace = run(cfg, topo, ph);
    if (!out.empty()) save_trace_csv(out, trace);
    double p_max = 0.0;
    for (double p : trace.max_power) p_max = std::max(p_max, p);
    std::cout << "verdict = " << to_string(trace.verdict) << "\n";
    std::cout << "slope = " << fmt(trace.slope) << "\n";
    std::cout << "final_backlog = " << trace.total_backlog.back() << "\n";
    std::cout << "max_power = " << fmt(p_max) << "\n";
    return 0;
}

int cmd_sweep(const std::string& topo_path, const SimConfig& cfg, const PhysicalParams& ph,
              double lo, double hi, double step, int threads, const std::string& out) {
    if (!(step > 0.0)) throw std::runtime_error("sweep: --lambda-step must be positive");
    if (hi < lo) throw std::runtime_error("sweep: --lambda-max below --lambda-min");
    const Topology topo = load_topology(topo_path);
    std::vector<double> grid;
    for (double x = lo; x <= hi + step * 1e-9; x += step) grid.push_back(x);
    const SweepResult res = sweep(cfg, topo, ph, grid, threads);

    std::ostringstream csv;
    csv << "lambda,verdict,slope,final_backlog\n";
    for (const SweepPoint& p : res.points) {
        std::cout << "lambda=" << fmt(p.lambda) << " verdict=" << to_string(p.verdict)
                  << " slope=" << fmt(p.slope) << " final=" << p.final_backlog << "\n";
        csv << fmt(p.lambda) << "," << to_string(p.verdict) << "," << fmt(p.slope) << ","
            << p.final_backlog << "\n";
    }
    for (const auto& [u, s] : res.inversions())
        std::cout << "warning: stable at lambda=" << fmt(s)
                  << " above unstable at lambda=" << fmt(u) << "\n";
    const double best = res.max_stable_lambda();
    std::cout << "max_stable_lambda = " << (best < 0.0 ? std::string("none") : fmt(best)) << "\n";
    if (!out.empty()) {
        std::ofstream f(out);
        if (!f) throw std::runtime_error("cannot open " + out + " for writing");
        f << csv.str();
    }
    return 0;
}

int cmd_check(const std::string& topo_path, const std::string& sched_path,
              const PhysicalParams& ph, FixedPowerKind kind, double scale) {
    const Topology topo = load_topology(topo_path);
    const Schedule s = load_schedule(sched_path);

    std::vector<LinkGeom> active;
    for (int id : s.link_ids) {
        const auto& geoms = topo.geoms();
        auto it = std::find_if(geoms.begin(), geoms.end(),
                               [&](const LinkGeom& g) { return g.id == id; });
        if (it == geoms.end())
            throw std::runtime_error("schedule names link " + std::to_string(id) +
                                     " absent from the topology");
        active.push_back(*it);
    }

    std::vector<double> powers;
    if (!s.powers.watts.empty()) {
        for (int id : s.link_ids) powers.push_back(s.powers.at(id));
    } else {
        const double sc = scale > 0.0 ? scale : default_power_scale(topo, kind, ph);
        const PowerAssignment pa = assign_fixed(active, kind, sc, ph);
        for (const LinkGeom& g : active) powers.push_back(pa.at(g.id));
    }

    bool ok = true;
    for (std::size_t i = 0; i < active.size(); ++i)
        for (std::size_t j = i + 1; j < active.size(); ++j)
            if (shares_node(active[i], active[j])) {
                std::cout << "links " << active[i].id << " and " << active[j].id
                          << " share a node\n";
                ok = false;
            }
    for (std::size_t i = 0; i < active.size(); ++i) {
        const double v = sinr(active[i], powers[i], active, powers, ph);
        const bool pass = v >= ph.sigma;
        std::cout << "link " << active[i].id << ": sinr = " << fmt(v) << " "
                  << (pass ? ">=" : "<") << " sigma = " << fmt(ph.sigma) << "\n";
        ok = ok && pass;
    }
    std::cout << (ok ? "feasible" : "infeasible") << "\n";
    return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"SINR link scheduling toolkit"};
    app.require_subcommand(1);

    PhysicalParams ph;
    SimConfig cfg;
    Policy policy = Policy::Adjustable;
    std::string topo_path, weights_path, sched_path, out_path;

    // gen
    int g_nodes = 100, g_links = 20;
    double g_area = 100.0, g_rmin = 1.0, g_rmax = 5.0;
    std::uint64_t g_seed = 1;
    auto* gen = app.add_subcommand("gen", "generate a random topology");
    gen->add_option("--nodes", g_nodes, "node count (half become senders)");
    gen->add_option("--links", g_links, "link count");
    gen->add_option("--area", g_area, "square side length");
    gen->add_option("--rmin", g_rmin, "minimum link length");
    gen->add_option("--rmax", g_rmax, "maximum link length");
    gen->add_option("--seed", g_seed, "RNG seed");
    gen->add_option("--out", out_path, "output path")->required();

    // bounds
    double b_theta = 1.0, b_delta = 0.5, b_m = 2.0, b_ref = 5.0, b_phi = 0.0;
    auto* bounds = app.add_subcommand("bounds", "print the derived constants");
    add_phys_flags(bounds, ph);
    bounds->add_option("--theta", b_theta, "node spacing in units of R");
    bounds->add_option("--delta", b_delta, "length-diversity window in (0,1]");
    bounds->add_option("--m", b_m, "power recurrence multiplier");
    bounds->add_option("--R", b_ref, "reference length");
    bounds->add_option("--phi", b_phi, "separation value (default: the feasibility target)");

    auto add_policy_flags = [&](CLI::App* cmd) {
        cmd->add_option("--policy", policy, "scheduling policy")
            ->transform(CLI::CheckedTransformer(kPolicyNames, CLI::ignore_case));
        cmd->add_option("--power", cfg.power_kind, "fixed power law")
            ->transform(CLI::CheckedTransformer(kPowerNames, CLI::ignore_case));
        cmd->add_option("--power-scale", cfg.power_scale,
                        "fixed power scale (default: twice the decodability floor)");
        cmd->add_option("--m", cfg.adjustable.m, "power recurrence multiplier");
        cmd->add_option("--solver", cfg.adjustable.solver, "disk solver")
            ->transform(CLI::CheckedTransformer(kSolverNames, CLI::ignore_case));
        cmd->add_option("--rho-threshold", cfg.fixed.rho_threshold,
                        "power spread triggering dyadic banding");
        cmd->add_flag("--length-grouping", cfg.adjustable.length_grouping,
                      "restrict each slot to the heaviest length class");
        cmd->add_option("--group-base", cfg.adjustable.group_base, "length class base");
        add_phys_flags(cmd, ph);
    };

    // schedule
    auto* sched = app.add_subcommand("schedule", "compute one slot's schedule");
    sched->add_option("--topology", topo_path, "topology file")->required();
    sched->add_option("--weights", weights_path, "per-link weights file")->required();
    sched->add_option("--out", out_path, "schedule output path (default: stdout)");
    add_policy_flags(sched);

    // run
    auto* runc = app.add_subcommand("run", "simulate the queue process");
    runc->add_option("--topology", topo_path, "topology file")->required();
    runc->add_option("--lambda", cfg.lambda, "per-link arrival rate")->required();
    runc->add_option("--horizon", cfg.horizon, "slots to simulate");
    runc->add_option("--seed", cfg.seed, "RNG seed");
    runc->add_option("--init-lo", cfg.init_queue_lo, "initial queue lower bound");
    runc->add_option("--init-hi", cfg.init_queue_hi, "initial queue upper bound");
    runc->add_option("--ymax", cfg.y_max, "arrival truncation");
    runc->add_option("--window-frac", cfg.window_frac, "verdict window fraction");
    runc->add_option("--slope-tol", cfg.slope_tol, "verdict slope tolerance");
    runc->add_option("--out", out_path, "trace CSV path");
    add_policy_flags(runc);

    // sweep
    double s_lo = 0.0, s_hi = 0.0, s_step = 0.01;
    int s_threads = 1;
    auto* sw = app.add_subcommand("sweep", "map the stability boundary over lambda");
    sw->add_option("--topology", topo_path, "topology file")->required();
    sw->add_option("--lambda-min", s_lo, "grid start")->required();
    sw->add_option("--lambda-max", s_hi, "grid end")->required();
    sw->add_option("--lambda-step", s_step, "grid step");
    sw->add_option("--horizon", cfg.horizon, "slots per point");
    sw->add_option("--seed", cfg.seed, "base RNG seed (offset per point)");
    sw->add_option("--threads", s_threads, "worker threads (0: all cores)");
    sw->add_option("--window-frac", cfg.window_frac, "verdict window fraction");
    sw->add_option("--slope-tol", cfg.slope_tol, "verdict slope tolerance");
    sw->add_option("--out", out_path, "sweep CSV path");
    add_policy_flags(sw);

    // check
    auto* chk = app.add_subcommand("check", "verify a schedule against a topology");
    chk->add_option("--topology", topo_path, "topology file")->required();
    chk->add_option("--schedule", sched_path, "schedule file")->required();
    chk->add_option("--power", cfg.power_kind, "fixed power law when the file has no P lines")
        ->transform(CLI::CheckedTransformer(kPowerNames, CLI::ignore_case));
    chk->add_option("--power-scale", cfg.power_scale, "fixed power scale");
    add_phys_flags(chk, ph);

    CLI11_PARSE(app, argc, argv);

    try {
        cfg.policy = policy;
        cfg.fixed.solver = cfg.adjustable.solver;
        cfg.fixed.length_grouping = cfg.adjustable.length_grouping;
        cfg.fixed.group_base = cfg.adjustable.group_base;
        if (gen->parsed())
            return cmd_gen(g_nodes, g_links, g_area, g_rmin, g_rmax, g_seed, out_path);
        if (bounds->parsed()) return cmd_bounds(ph, b_theta, b_delta, b_m, b_ref, b_phi);
        if (sched->parsed())
            return cmd_schedule(topo_path, weights_path, policy, ph, cfg, out_path);
        if (runc->parsed()) return cmd_run(topo_path, cfg, ph, out_path);
        if (sw->parsed())
            return cmd_sweep(topo_path, cfg, ph, s_lo, s_hi, s_step, s_threads, out_path);
        if (chk->parsed()) return cmd_check(topo_path, sched_path, ph, cfg.power_kind, cfg.power_scale);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
