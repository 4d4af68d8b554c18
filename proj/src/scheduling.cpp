#include "sinrsched/scheduling.hpp"

#include "sinrsched/separation.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <stdexcept>

namespace sinrsched {

namespace {

int power_key(std::span<const LinkGeom> links, std::size_t i) {
    return links[i].id >= 0 ? links[i].id : static_cast<int>(i);
}

// Indices 0..n-1 sorted by decreasing weight, ties by link id then index.
std::vector<std::size_t> weight_order(std::span<const LinkGeom> links,
                                      std::span<const double> weights) {
    std::vector<std::size_t> order(links.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (weights[a] != weights[b]) return weights[a] > weights[b];
        if (links[a].id != links[b].id) return links[a].id < links[b].id;
        return a < b;
    });
    return order;
}

Schedule build_schedule(std::span<const LinkGeom> links, std::span<const double> weights,
                        const std::vector<std::size_t>& chosen,
                        const std::vector<double>& chosen_powers) {
    Schedule s;
    std::vector<std::pair<int, double>> entries;
    for (std::size_t k = 0; k < chosen.size(); ++k) {
        const std::size_t i = chosen[k];
        entries.emplace_back(power_key(links, i), chosen_powers[k]);
        s.total_weight += weights[i];
    }
    std::sort(entries.begin(), entries.end());
    for (const auto& [id, p] : entries) {
        s.link_ids.push_back(id);
        s.powers.watts[id] = p;
    }
    return s;
}

// Dyadic class of `value` relative to `lo`, clamped into [0, n_bands).
// The +eps inside floor keeps exact class boundaries in the lower class.
int dyadic_band(double value, double lo, int n_bands) {
    const int j = static_cast<int>(std::floor(std::log2(value / lo) + 1e-9));
    return std::clamp(j, 0, n_bands - 1);
}

int dyadic_band_count(double ratio) {
    if (ratio <= 1.0) return 1;
    return std::max(1, static_cast<int>(std::ceil(std::log2(ratio) - 1e-9)));
}

}  // namespace

std::vector<std::size_t> heaviest_length_group(std::span<const LinkGeom> links,
                                               std::span<const double> weights, double g,
                                               double r_min) {
    if (links.size() != weights.size())
        throw std::invalid_argument("length groups: links and weights must be index-aligned");
    if (!(g > 1.0)) throw std::invalid_argument("length groups: base must exceed 1");
    if (!(r_min > 0.0)) throw std::invalid_argument("length groups: r_min must be positive");
    if (links.empty()) return {};

    double max_len = 0.0;
    for (const LinkGeom& l : links) max_len = std::max(max_len, l.length());
    const double span = std::log(max_len / r_min) / std::log(g);
    const int n_groups = span <= 0.0 ? 1 : std::max(1, static_cast<int>(std::ceil(span - 1e-9)));

    std::vector<double> group_weight(n_groups, 0.0);
    std::vector<int> group_of(links.size());
    for (std::size_t i = 0; i < links.size(); ++i) {
        const double x = std::log(links[i].length() / r_min) / std::log(g);
        const int j = std::clamp(static_cast<int>(std::floor(x + 1e-9)), 0, n_groups - 1);
        group_of[i] = j;
        group_weight[j] += weights[i];
    }
    int best = 0;
    for (int j = 1; j < n_groups; ++j)
        if (group_weight[j] > group_weight[best]) best = j;

    std::vector<std::size_t> chosen;
    for (std::size_t i = 0; i < links.size(); ++i)
        if (group_of[i] == best) chosen.push_back(i);
    return chosen;
}

Schedule adjustable_power_schedule(std::span<const LinkGeom> links, std::span<const double> weights,
                                   const PhysicalParams& params, const AdjustableOptions& opts) {
    if (links.size() != weights.size())
        throw std::invalid_argument("schedule: links and weights must be index-aligned");
    if (links.empty()) throw std::invalid_argument("schedule: empty link set");
    params.validate();

    std::vector<std::size_t> pool(links.size());
    std::iota(pool.begin(), pool.end(), std::size_t{0});
    if (opts.length_grouping)
        pool = heaviest_length_group(links, weights, opts.group_base, opts.r_min);

    std::vector<LinkGeom> work;
    std::vector<double> wts;
    for (std::size_t i : pool) {
        work.push_back(links[i]);
        wts.push_back(weights[i]);
    }

    auto kept = bridge(work, wts, params.alpha, opts.solver);
    // All-zero weights can make the exact solver prefer the empty set;
    // keep the heaviest link so the slot never goes idle.
    if (kept.empty()) kept.push_back(weight_order(work, wts).front());

    // Sweep the surviving links heaviest-first through the separation
    // partition, then keep the heaviest group.
    std::vector<LinkGeom> surv;
    std::vector<double> surv_w;
    std::vector<std::size_t> surv_orig;
    for (std::size_t k : kept) {
        surv.push_back(work[k]);
        surv_w.push_back(wts[k]);
        surv_orig.push_back(pool[k]);
    }
    const auto order = weight_order(surv, surv_w);
    std::vector<LinkGeom> swept;
    std::vector<std::size_t> swept_orig;
    for (std::size_t k : order) {
        swept.push_back(surv[k]);
        swept_orig.push_back(surv_orig[k]);
    }

    double ref_r = opts.reference_r;
    if (ref_r <= 0.0)
        for (const LinkGeom& l : swept) ref_r = std::max(ref_r, l.length());
    const double phi_star = feasible_separation_target(params.sigma, params.alpha, params.kappa);
    const auto bins = first_fit_partition(swept, phi_star, ref_r, params.kappa);

    std::size_t best = 0;
    double best_w = -1.0;
    for (std::size_t b = 0; b < bins.size(); ++b) {
        double w = 0.0;
        for (std::size_t k : bins[b]) w += weights[swept_orig[k]];
        if (w > best_w) {
            best_w = w;
            best = b;
        }
    }

    // Power the chosen group heaviest-first.
    std::vector<std::size_t> chosen(bins[best].begin(), bins[best].end());
    std::sort(chosen.begin(), chosen.end());  // sweep order is weight-descending
    std::vector<LinkGeom> final_links;
    std::vector<std::size_t> final_orig;
    for (std::size_t k : chosen) {
        final_links.push_back(swept[k]);
        final_orig.push_back(swept_orig[k]);
    }
    const auto powers = iterative_power_assign(final_links, opts.m, params);
    return build_schedule(links, weights, final_orig, powers);
}

RefineResult first_fit_isl_refine(std::span<const LinkGeom> links, std::span<const double> weights,
                                  std::span<const double> powers, const PhysicalParams& params) {
    if (links.size() != weights.size() || links.size() != powers.size())
        throw std::invalid_argument("refine: links, weights and powers must be index-aligned");
    RefineResult res;
    std::vector<std::vector<std::size_t>>& bins = res.bins;
    for (std::size_t i : weight_order(links, weights)) {
        const LinkGeom one_link[] = {links[i]};
        const double one_power[] = {powers[i]};
        if (!check_feasible(one_link, one_power, params)) {
            res.rejected.push_back(i);
            continue;
        }
        bool placed = false;
        for (auto& bin : bins) {
            std::vector<LinkGeom> trial;
            std::vector<double> trial_p;
            for (std::size_t k : bin) {
                trial.push_back(links[k]);
                trial_p.push_back(powers[k]);
            }
            trial.push_back(links[i]);
            trial_p.push_back(powers[i]);
            if (check_feasible(trial, trial_p, params)) {
                bin.push_back(i);
                placed = true;
                break;
            }
        }
        if (!placed) bins.push_back({i});
    }
    return res;
}

namespace {

std::vector<double> lookup_powers(std::span<const LinkGeom> links, const PowerAssignment& pa,
                                  const std::vector<std::size_t>& idx) {
    std::vector<double> p;
    p.reserve(idx.size());
    for (std::size_t i : idx) p.push_back(pa.at(power_key(links, i)));
    return p;
}

}  // namespace

Schedule fixed_power_schedule(std::span<const LinkGeom> links, std::span<const double> weights,
                              const PowerAssignment& pa, const PhysicalParams& params,
                              const FixedOptions& opts) {
    if (links.size() != weights.size())
        throw std::invalid_argument("schedule: links and weights must be index-aligned");
    params.validate();
    if (links.empty()) return {};

    std::vector<std::size_t> pool(links.size());
    std::iota(pool.begin(), pool.end(), std::size_t{0});
    if (opts.length_grouping)
        pool = heaviest_length_group(links, weights, opts.group_base, opts.r_min);

    std::vector<LinkGeom> work;
    std::vector<double> wts;
    for (std::size_t i : pool) {
        work.push_back(links[i]);
        wts.push_back(weights[i]);
    }
    auto kept = bridge(work, wts, params.alpha, opts.solver);
    if (kept.empty()) kept.push_back(weight_order(work, wts).front());

    std::vector<std::size_t> band(kept.begin(), kept.end());  // indices into work

    // With a wide power spread the mutual-interference argument degrades,
    // so split into dyadic power bands and keep the heaviest one.
    double p_lo = 0.0, p_hi = 0.0;
    for (std::size_t k : band) {
        const double p = pa.at(power_key(links, pool[k]));
        p_lo = p_lo == 0.0 ? p : std::min(p_lo, p);
        p_hi = std::max(p_hi, p);
    }
    if (!band.empty() && p_lo > 0.0 && p_hi / p_lo > opts.rho_threshold) {
        const int n_bands = dyadic_band_count(p_hi / p_lo);
        std::vector<double> band_weight(n_bands, 0.0);
        std::vector<int> band_of(band.size());
        for (std::size_t t = 0; t < band.size(); ++t) {
            const double p = pa.at(power_key(links, pool[band[t]]));
            band_of[t] = dyadic_band(p, p_lo, n_bands);
            band_weight[band_of[t]] += wts[band[t]];
        }
        int best = 0;
        for (int j = 1; j < n_bands; ++j)
            if (band_weight[j] > band_weight[best]) best = j;
        std::vector<std::size_t> filtered;
        for (std::size_t t = 0; t < band.size(); ++t)
            if (band_of[t] == best) filtered.push_back(band[t]);
        band = std::move(filtered);
    }

    std::vector<LinkGeom> cand;
    std::vector<double> cand_w;
    std::vector<std::size_t> cand_orig;
    for (std::size_t k : band) {
        cand.push_back(work[k]);
        cand_w.push_back(wts[k]);
        cand_orig.push_back(pool[k]);
    }
    std::vector<double> cand_p;
    for (std::size_t i : cand_orig) cand_p.push_back(pa.at(power_key(links, i)));

    const auto refined = first_fit_isl_refine(cand, cand_w, cand_p, params);
    if (refined.bins.empty()) return {};
    std::size_t best_bin = 0;
    double best_w = -1.0;
    for (std::size_t b = 0; b < refined.bins.size(); ++b) {
        double w = 0.0;
        for (std::size_t k : refined.bins[b]) w += cand_w[k];
        if (w > best_w) {
            best_w = w;
            best_bin = b;
        }
    }

    std::vector<std::size_t> chosen_orig;
    std::vector<double> chosen_p;
    for (std::size_t k : refined.bins[best_bin]) {
        chosen_orig.push_back(cand_orig[k]);
        chosen_p.push_back(cand_p[k]);
    }
    return build_schedule(links, weights, chosen_orig, chosen_p);
}

Schedule greedy_schedule(std::span<const LinkGeom> links, std::span<const double> weights,
                         const PowerAssignment& pa, const PhysicalParams& params) {
    if (links.size() != weights.size())
        throw std::invalid_argument("schedule: links and weights must be index-aligned");
    params.validate();
    std::vector<std::size_t> accepted;
    std::vector<LinkGeom> acc_links;
    std::vector<double> acc_powers;
    for (std::size_t i : weight_order(links, weights)) {
        acc_links.push_back(links[i]);
        acc_powers.push_back(pa.at(power_key(links, i)));
        if (check_feasible(acc_links, acc_powers, params)) {
            accepted.push_back(i);
        } else {
            acc_links.pop_back();
            acc_powers.pop_back();
        }
    }
    std::vector<double> chosen_p = lookup_powers(links, pa, accepted);
    return build_schedule(links, weights, accepted, chosen_p);
}

Schedule weight_band_schedule(std::span<const LinkGeom> links, std::span<const double> weights,
                              const PowerAssignment& pa, const PhysicalParams& params) {
    if (links.size() != weights.size())
        throw std::invalid_argument("schedule: links and weights must be index-aligned");
    params.validate();
    if (links.empty()) return {};

    double w_max = 0.0;
    for (double w : weights) w_max = std::max(w_max, w);
    const double cutoff = w_max / (2.0 * static_cast<double>(links.size()));
    std::vector<std::size_t> survivors;
    for (std::size_t i = 0; i < links.size(); ++i)
        if (weights[i] >= cutoff) survivors.push_back(i);

    double w_lo = 0.0;
    for (std::size_t i : survivors) w_lo = w_lo == 0.0 ? weights[i] : std::min(w_lo, weights[i]);
    const int n_bands = w_lo > 0.0 ? dyadic_band_count(w_max / w_lo) : 1;

    std::vector<std::vector<std::size_t>> bands(n_bands);
    for (std::size_t i : survivors) {
        const int j = w_lo > 0.0 ? dyadic_band(weights[i], w_lo, n_bands) : 0;
        bands[j].push_back(i);
    }

    // Per band: shortest-first cardinality greedy, then keep the band
    // whose result carries the most weight.
    Schedule best;
    double best_w = -1.0;
    for (auto& members : bands) {
        std::sort(members.begin(), members.end(), [&](std::size_t a, std::size_t b) {
            const double la = links[a].length();
            const double lb = links[b].length();
            if (la != lb) return la < lb;
            if (links[a].id != links[b].id) return links[a].id < links[b].id;
            return a < b;
        });
        std::vector<std::size_t> accepted;
        std::vector<LinkGeom> acc_links;
        std::vector<double> acc_powers;
        for (std::size_t i : members) {
            acc_links.push_back(links[i]);
            acc_powers.push_back(pa.at(power_key(links, i)));
            if (check_feasible(acc_links, acc_powers, params)) {
                accepted.push_back(i);
            } else {
                acc_links.pop_back();
                acc_powers.pop_back();
            }
        }
        double w = 0.0;
        for (std::size_t i : accepted) w += weights[i];
        if (w > best_w) {
            best_w = w;
            best = build_schedule(links, weights, accepted, lookup_powers(links, pa, accepted));
        }
    }
    return best;
}

namespace {

// Lexicographic order on the sorted index sets encoded by two bit masks.
bool mask_lex_less(std::uint64_t a, std::uint64_t b) {
    while (a != 0 || b != 0) {
        if (a == 0) return true;
        if (b == 0) return false;
        const int ia = std::countr_zero(a);
        const int ib = std::countr_zero(b);
        if (ia != ib) return ia < ib;
        a &= a - 1;
        b &= b - 1;
    }
    return false;
}

struct ExactIslSearch {
    std::span<const LinkGeom> links;  // in id order
    std::span<const double> weights;
    std::span<const double> powers;
    const PhysicalParams* params;
    std::vector<double> suffix;
    double best_weight = -1.0;
    std::uint64_t best_mask = 0;
    std::vector<LinkGeom> stack_links;
    std::vector<double> stack_powers;

    void dfs(std::size_t i, std::uint64_t mask, double weight) {
        if (i == links.size()) {
            if (weight > best_weight || (weight == best_weight && mask_lex_less(mask, best_mask))) {
                best_weight = weight;
                best_mask = mask;
            }
            return;
        }
        if (weight + suffix[i] < best_weight) return;
        stack_links.push_back(links[i]);
        stack_powers.push_back(powers[i]);
        // Supersets of an infeasible set stay infeasible, so the include
        // branch prunes exactly.
        if (check_feasible(stack_links, stack_powers, *params))
            dfs(i + 1, mask | (std::uint64_t{1} << i), weight + weights[i]);
        stack_links.pop_back();
        stack_powers.pop_back();
        dfs(i + 1, mask, weight);
    }
};

}  // namespace

Schedule exact_mwisl(std::span<const LinkGeom> links, std::span<const double> weights,
                     const PowerAssignment& pa, const PhysicalParams& params, std::size_t cap) {
    if (links.size() != weights.size())
        throw std::invalid_argument("exact_mwisl: links and weights must be index-aligned");
    if (links.size() > cap) throw std::invalid_argument("exact_mwisl: instance exceeds the size cap");
    params.validate();

    std::vector<std::size_t> order(links.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (links[a].id != links[b].id) return links[a].id < links[b].id;
        return a < b;
    });
    std::vector<LinkGeom> sorted_links;
    std::vector<double> sorted_w, sorted_p;
    for (std::size_t i : order) {
        sorted_links.push_back(links[i]);
        sorted_w.push_back(weights[i]);
        sorted_p.push_back(pa.at(power_key(links, i)));
    }

    ExactIslSearch search{sorted_links, sorted_w, sorted_p, &params, {}, -1.0, 0, {}, {}};
    search.suffix.assign(links.size() + 1, 0.0);
    for (std::size_t i = links.size(); i-- > 0;)
        search.suffix[i] = search.suffix[i + 1] + std::max(0.0, sorted_w[i]);
    search.dfs(0, 0, 0.0);

    std::vector<std::size_t> chosen;  // indices into the caller's order
    for (std::size_t k = 0; k < order.size(); ++k)
        if (search.best_mask & (std::uint64_t{1} << k)) chosen.push_back(order[k]);
    return build_schedule(links, weights, chosen, lookup_powers(links, pa, chosen));
}

}  // namespace sinrsched
