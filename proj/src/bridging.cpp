#include "sinrsched/bridging.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <numeric>
#include <stdexcept>

namespace sinrsched {

std::vector<WeightedDisk> links_to_disks(std::span<const LinkGeom> links,
                                         std::span<const double> weights, double alpha) {
    if (links.size() != weights.size())
        throw std::invalid_argument("links_to_disks: links and weights must be index-aligned");
    if (!(alpha > 1.0)) throw std::invalid_argument("links_to_disks: alpha must exceed 1");
    std::vector<WeightedDisk> disks;
    disks.reserve(links.size());
    for (std::size_t i = 0; i < links.size(); ++i)
        disks.push_back({links[i].sender, alpha * links[i].length(), weights[i], links[i].id, false});
    return disks;
}

std::vector<WeightedDisk> links_to_disks_bidirectional(std::span<const LinkGeom> links,
                                                       std::span<const double> forward_weights,
                                                       std::span<const double> reverse_weights,
                                                       double alpha) {
    if (links.size() != forward_weights.size() || links.size() != reverse_weights.size())
        throw std::invalid_argument("links_to_disks: links and weights must be index-aligned");
    if (!(alpha > 1.0)) throw std::invalid_argument("links_to_disks: alpha must exceed 1");
    std::vector<WeightedDisk> disks;
    disks.reserve(2 * links.size());
    for (std::size_t i = 0; i < links.size(); ++i) {
        const double r = alpha * links[i].length();
        disks.push_back({links[i].sender, r, forward_weights[i], links[i].id, false});
        disks.push_back({links[i].receiver, r, reverse_weights[i], links[i].id, true});
    }
    return disks;
}

bool disks_overlap(const WeightedDisk& a, const WeightedDisk& b) {
    return (a.center - b.center).norm() < a.radius + b.radius;
}

std::vector<std::size_t> greedy_mwisd(std::span<const WeightedDisk> disks) {
    std::vector<std::size_t> order(disks.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (disks[a].weight != disks[b].weight) return disks[a].weight > disks[b].weight;
        if (disks[a].link_ref != disks[b].link_ref) return disks[a].link_ref < disks[b].link_ref;
        return a < b;
    });
    std::vector<std::size_t> chosen;
    for (std::size_t i : order) {
        bool free = true;
        for (std::size_t j : chosen) {
            if (disks_overlap(disks[i], disks[j])) {
                free = false;
                break;
            }
        }
        if (free) chosen.push_back(i);
    }
    std::sort(chosen.begin(), chosen.end());
    return chosen;
}

namespace {

struct ExactSearch {
    std::span<const WeightedDisk> disks;
    std::vector<std::uint64_t> conflict;  // conflict[i] bit j: disks i and j overlap
    std::vector<double> suffix_weight;
    double best_weight = -1.0;
    std::uint64_t best_mask = 0;

    // Lexicographic order on the sorted index sets of two masks; the mask
    // with the smaller first differing index wins.
    static bool mask_less(std::uint64_t a, std::uint64_t b) {
        while (a != 0 || b != 0) {
            if (a == 0) return true;   // a is a strict prefix
            if (b == 0) return false;
            const int ia = std::countr_zero(a);
            const int ib = std::countr_zero(b);
            if (ia != ib) return ia < ib;
            a &= a - 1;
            b &= b - 1;
        }
        return false;
    }

    void dfs(std::size_t i, std::uint64_t mask, std::uint64_t blocked, double weight) {
        if (i == disks.size()) {
            if (weight > best_weight ||
                (weight == best_weight && mask_less(mask, best_mask))) {
                best_weight = weight;
                best_mask = mask;
            }
            return;
        }
        if (weight + suffix_weight[i] < best_weight) return;
        if ((blocked & (std::uint64_t{1} << i)) == 0)
            dfs(i + 1, mask | (std::uint64_t{1} << i), blocked | conflict[i], weight + disks[i].weight);
        dfs(i + 1, mask, blocked, weight);
    }
};

}  // namespace

std::vector<std::size_t> exact_mwisd(std::span<const WeightedDisk> disks, std::size_t cap) {
    if (disks.size() > cap)
        throw std::invalid_argument("exact_mwisd: instance exceeds the size cap");
    if (disks.size() > 64) throw std::invalid_argument("exact_mwisd: more than 64 disks");
    ExactSearch search{disks, {}, {}, -1.0, 0};
    const std::size_t n = disks.size();
    search.conflict.assign(n, 0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (i != j && disks_overlap(disks[i], disks[j]))
                search.conflict[i] |= std::uint64_t{1} << j;
    search.suffix_weight.assign(n + 1, 0.0);
    for (std::size_t i = n; i-- > 0;)
        search.suffix_weight[i] = search.suffix_weight[i + 1] + std::max(0.0, disks[i].weight);
    search.dfs(0, 0, 0, 0.0);
    std::vector<std::size_t> chosen;
    for (std::size_t i = 0; i < n; ++i)
        if (search.best_mask & (std::uint64_t{1} << i)) chosen.push_back(i);
    return chosen;
}

std::vector<std::size_t> bridge(std::span<const LinkGeom> links, std::span<const double> weights,
                                double alpha, DiskSolver solver) {
    const auto disks = links_to_disks(links, weights, alpha);
    return solver == DiskSolver::Greedy ? greedy_mwisd(disks) : exact_mwisd(disks);
}

long long disk_partition_bound(double sigma, double kappa, double alpha, double delta) {
    if (!(sigma > 0.0)) throw std::invalid_argument("disk bound: sigma must be positive");
    if (!(alpha > 1.0)) throw std::invalid_argument("disk bound: alpha must exceed 1");
    if (!(delta > 0.0 && delta <= 1.0))
        throw std::invalid_argument("disk bound: delta must lie in (0, 1]");
    const double hex_density = std::numbers::sqrt3 * std::numbers::pi / 6.0;
    const double spacing_classes = std::ceil(2.0 * std::pow(3.0, kappa) / sigma);
    const double packing = std::ceil(hex_density * std::pow(4.0 * alpha / delta + 1.0, 2.0));
    return static_cast<long long>(spacing_classes) * static_cast<long long>(spacing_classes) *
           static_cast<long long>(packing);
}

}  // namespace sinrsched
