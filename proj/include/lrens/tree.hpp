#pragma once

#include <cstdint>
#include <vector>

#include "lrens/ranking.hpp"

namespace lrens {

enum class FeatureSubset {
    All,         // every feature is a split candidate
    RandomSqrt,  // ceil(sqrt(d)) features drawn per split (random forest)
};

struct TreeConfig {
    int max_depth = 16;
    int min_leaf = 3;
    FeatureSubset feature_subset = FeatureSubset::All;
    uint64_t seed = 0;
};

struct TreeNode {
    int feature = -1;  // -1 marks a leaf
    double threshold = 0.0;
    int left = -1;
    int right = -1;
    Ranking consensus;  // leaf payload: the Borda consensus of its targets

    bool is_leaf() const { return feature < 0; }
};

// Distance-based label ranking tree. Splits minimize the summed Kendall loss
// of child members to the child's Borda consensus; leaves predict their
// consensus ranking.
struct RankingTree {
    LabelSet label_set;
    int n_features = 0;
    std::vector<TreeNode> nodes;  // nodes[0] is the root
};

// Grows a tree on data. Thresholds sit at midpoints between consecutive
// distinct feature values; recursion stops at max_depth, when a child would
// fall below min_leaf, when all node targets are identical, or when no split
// reduces impurity. Equal-impurity splits resolve to the lowest feature
// index, then the lowest threshold.
RankingTree train_tree(const Dataset& data, const TreeConfig& config);

Ranking predict_tree(const RankingTree& tree, const std::vector<double>& features);

}  // namespace lrens
