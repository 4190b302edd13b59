#include "lrens/tree.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>

#include "lrens/rng.hpp"

namespace lrens {

namespace {

// Split search bookkeeping for one node, all integer so comparisons are
// exact. For tie-free rankings the Kendall loss to a consensus c is
// 2/n0 * (discordant pairs), so minimizing summed discordances over the
// children minimizes the summed Kendall loss.
struct NodeStats {
    int n = 0;
    std::vector<int64_t> borda;       // borda[l] = sum over members of n - rank[l]
    std::vector<int64_t> pair_wins;   // pair_wins[a*n+b] = members ranking a above b

    explicit NodeStats(int n_labels)
        : n(n_labels),
          borda(static_cast<size_t>(n_labels), 0),
          pair_wins(static_cast<size_t>(n_labels) * static_cast<size_t>(n_labels), 0) {}

    void add(const Ranking& target, int64_t sign) {
        const std::vector<int>& r = target.ranks;
        for (int a = 0; a < n; ++a) {
            borda[static_cast<size_t>(a)] +=
                sign * static_cast<int64_t>(n - r[static_cast<size_t>(a)]);
            for (int b = a + 1; b < n; ++b) {
                if (r[static_cast<size_t>(a)] < r[static_cast<size_t>(b)]) {
                    pair_wins[static_cast<size_t>(a * n + b)] += sign;
                } else {
                    pair_wins[static_cast<size_t>(b * n + a)] += sign;
                }
            }
        }
    }

    Ranking consensus() const {
        std::vector<double> scores(borda.begin(), borda.end());
        return ranking_from_scores(scores);
    }

    // Summed discordant pairs of the members against a consensus ranking.
    int64_t discordance(const Ranking& consensus) const {
        const std::vector<int>& c = consensus.ranks;
        int64_t total = 0;
        for (int a = 0; a < n; ++a) {
            for (int b = a + 1; b < n; ++b) {
                if (c[static_cast<size_t>(a)] < c[static_cast<size_t>(b)]) {
                    total += pair_wins[static_cast<size_t>(b * n + a)];
                } else {
                    total += pair_wins[static_cast<size_t>(a * n + b)];
                }
            }
        }
        return total;
    }
};

struct BestSplit {
    int64_t discordance = std::numeric_limits<int64_t>::max();
    int feature = -1;
    double threshold = 0.0;
};

class TreeBuilder {
public:
    TreeBuilder(const Dataset& data, const TreeConfig& config)
        : data_(data), config_(config), rng_(config.seed) {}

    RankingTree build() {
        RankingTree tree{data_.label_set, data_.dim(), {}};
        std::vector<int> indices(static_cast<size_t>(data_.m()));
        std::iota(indices.begin(), indices.end(), 0);
        grow(tree, std::move(indices), 0);
        return tree;
    }

private:
    const Ranking& target(int i) const {
        return data_.instances[static_cast<size_t>(i)].target;
    }
    double feature(int i, int f) const {
        return data_.instances[static_cast<size_t>(i)]
            .features[static_cast<size_t>(f)];
    }

    std::vector<int> candidate_features() {
        const int d = data_.dim();
        if (config_.feature_subset == FeatureSubset::All) {
            std::vector<int> all(static_cast<size_t>(d));
            std::iota(all.begin(), all.end(), 0);
            return all;
        }
        const int k = static_cast<int>(
            std::ceil(std::sqrt(static_cast<double>(d))));
        std::vector<int> pool(static_cast<size_t>(d));
        std::iota(pool.begin(), pool.end(), 0);
        for (int i = 0; i < k; ++i) {
            const size_t j = static_cast<size_t>(i) +
                             rng_.uniform_index(static_cast<size_t>(d - i));
            std::swap(pool[static_cast<size_t>(i)], pool[j]);
        }
        pool.resize(static_cast<size_t>(k));
        std::sort(pool.begin(), pool.end());
        return pool;
    }

    // Sweep one feature left to right, moving members across the boundary one
    // at a time; returns the best valid threshold for that feature.
    void sweep_feature(const std::vector<int>& indices, int f,
                       const NodeStats& node_stats, BestSplit& best) const {
        std::vector<int> order = indices;
        std::sort(order.begin(), order.end(), [&](int a, int b) {
            const double va = feature(a, f), vb = feature(b, f);
            if (va != vb) return va < vb;
            return a < b;
        });

        const int m = static_cast<int>(order.size());
        NodeStats left(node_stats.n);
        NodeStats right = node_stats;
        for (int k = 0; k + 1 < m; ++k) {
            const int i = order[static_cast<size_t>(k)];
            left.add(target(i), +1);
            right.add(target(i), -1);

            const double v = feature(i, f);
            const double next = feature(order[static_cast<size_t>(k) + 1], f);
            if (v == next) continue;
            const int n_left = k + 1;
            const int n_right = m - n_left;
            if (n_left < config_.min_leaf || n_right < config_.min_leaf) continue;

            double threshold = v + (next - v) / 2.0;
            if (!(threshold < next)) threshold = v;  // midpoint rounded up

            const int64_t d = left.discordance(left.consensus()) +
                              right.discordance(right.consensus());
            if (d < best.discordance) {
                best = BestSplit{d, f, threshold};
            }
        }
    }

    int grow(RankingTree& tree, std::vector<int> indices, int depth) {
        NodeStats stats(data_.n_labels());
        for (int i : indices) stats.add(target(i), +1);
        const Ranking consensus = stats.consensus();
        const int64_t node_discordance = stats.discordance(consensus);

        const int id = static_cast<int>(tree.nodes.size());
        tree.nodes.push_back(TreeNode{});

        const int m = static_cast<int>(indices.size());
        const bool can_split = depth < config_.max_depth &&
                               m >= 2 * config_.min_leaf &&
                               node_discordance > 0;
        BestSplit best;
        if (can_split) {
            for (int f : candidate_features()) {
                sweep_feature(indices, f, stats, best);
            }
        }
        if (best.feature < 0 || best.discordance >= node_discordance) {
            tree.nodes[static_cast<size_t>(id)].consensus = consensus;
            return id;
        }

        std::vector<int> left_indices, right_indices;
        for (int i : indices) {
            (feature(i, best.feature) <= best.threshold ? left_indices
                                                        : right_indices)
                .push_back(i);
        }
        indices.clear();
        indices.shrink_to_fit();

        tree.nodes[static_cast<size_t>(id)].feature = best.feature;
        tree.nodes[static_cast<size_t>(id)].threshold = best.threshold;
        const int left = grow(tree, std::move(left_indices), depth + 1);
        tree.nodes[static_cast<size_t>(id)].left = left;
        const int right = grow(tree, std::move(right_indices), depth + 1);
        tree.nodes[static_cast<size_t>(id)].right = right;
        return id;
    }

    const Dataset& data_;
    const TreeConfig& config_;
    Rng rng_;
};

}  // namespace

RankingTree train_tree(const Dataset& data, const TreeConfig& config) {
    if (data.m() == 0) throw EmptyDataset("cannot train a tree on no instances");
    if (config.max_depth < 1 || config.min_leaf < 1) {
        throw Error("tree config requires max_depth >= 1 and min_leaf >= 1");
    }
    return TreeBuilder(data, config).build();
}

Ranking predict_tree(const RankingTree& tree, const std::vector<double>& features) {
    if (static_cast<int>(features.size()) != tree.n_features) {
        throw DimensionMismatch("tree expects " +
                                std::to_string(tree.n_features) +
                                " features, got " +
                                std::to_string(features.size()));
    }
    const TreeNode* node = &tree.nodes.front();
    while (!node->is_leaf()) {
        const double v = features[static_cast<size_t>(node->feature)];
        node = &tree.nodes[static_cast<size_t>(v <= node->threshold ? node->left
                                                                    : node->right)];
    }
    return node->consensus;
}

}  // namespace lrens
