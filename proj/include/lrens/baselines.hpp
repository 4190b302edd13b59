#pragma once

#include <cstdint>
#include <vector>

#include "lrens/tree.hpp"

namespace lrens {

enum class Aggregator { Modal, Borda };

struct BaggedEnsemble {
    std::vector<RankingTree> trees;
    Aggregator aggregator = Aggregator::Borda;
    LabelSet label_set;
};

// n_models trees, each grown on an independent uniform bootstrap sample of
// size m with every feature a split candidate. Per-tree seeds are derived
// sub-streams, so members are reproducible independently of training order.
// identity_sample is the test hook that replaces each bootstrap with the
// training set verbatim.
BaggedEnsemble train_bagging(const Dataset& data, int n_models,
                             Aggregator aggregator, const TreeConfig& tree_config,
                             uint64_t seed, bool identity_sample = false);

// Bagging with Borda aggregation and ceil(sqrt(d)) random split candidates
// per node.
BaggedEnsemble train_random_forest(const Dataset& data, int n_models,
                                   const TreeConfig& tree_config, uint64_t seed,
                                   bool identity_sample = false);

// Aggregates the member trees' predictions with the ensemble's aggregator.
Ranking predict_bagged(const BaggedEnsemble& ensemble,
                       const std::vector<double>& features);

// The first `count` members only; the size sweep uses this to read smaller
// ensembles out of one trained run.
Ranking predict_bagged_prefix(const BaggedEnsemble& ensemble,
                              const std::vector<double>& features, int count);

}  // namespace lrens
