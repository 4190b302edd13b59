#include "lrens/baselines.hpp"

#include <algorithm>

#include "lrens/aggregation.hpp"
#include "lrens/rng.hpp"

namespace lrens {

namespace {

Dataset bootstrap_sample(const Dataset& data, Rng& rng) {
    std::vector<Instance> sampled;
    sampled.reserve(static_cast<size_t>(data.m()));
    for (int k = 0; k < data.m(); ++k) {
        sampled.push_back(
            data.instances[rng.uniform_index(static_cast<size_t>(data.m()))]);
    }
    return Dataset{data.label_set, data.feature_names, std::move(sampled)};
}

BaggedEnsemble train_ensemble(const Dataset& data, int n_models,
                              Aggregator aggregator, TreeConfig tree_config,
                              uint64_t seed, bool identity_sample) {
    if (data.m() == 0) throw EmptyDataset("cannot train on no instances");
    if (n_models < 1) throw OutOfRange("n_models must be >= 1");

    BaggedEnsemble ensemble{{}, aggregator, data.label_set};
    ensemble.trees.reserve(static_cast<size_t>(n_models));
    for (int i = 0; i < n_models; ++i) {
        Rng sample_rng(derive_seed(seed, static_cast<uint64_t>(2 * i)));
        tree_config.seed = derive_seed(seed, static_cast<uint64_t>(2 * i + 1));
        const Dataset sample =
            identity_sample ? data : bootstrap_sample(data, sample_rng);
        ensemble.trees.push_back(train_tree(sample, tree_config));
    }
    return ensemble;
}

}  // namespace

BaggedEnsemble train_bagging(const Dataset& data, int n_models,
                             Aggregator aggregator, const TreeConfig& tree_config,
                             uint64_t seed, bool identity_sample) {
    TreeConfig config = tree_config;
    config.feature_subset = FeatureSubset::All;
    return train_ensemble(data, n_models, aggregator, config, seed,
                          identity_sample);
}

BaggedEnsemble train_random_forest(const Dataset& data, int n_models,
                                   const TreeConfig& tree_config, uint64_t seed,
                                   bool identity_sample) {
    TreeConfig config = tree_config;
    config.feature_subset = FeatureSubset::RandomSqrt;
    return train_ensemble(data, n_models, Aggregator::Borda, config, seed,
                          identity_sample);
}

Ranking predict_bagged_prefix(const BaggedEnsemble& ensemble,
                              const std::vector<double>& features, int count) {
    count = std::min(count, static_cast<int>(ensemble.trees.size()));
    if (count < 1) throw Error("empty ensemble");
    std::vector<Ranking> votes;
    votes.reserve(static_cast<size_t>(count));
    for (int i = 0; i < count; ++i) {
        votes.push_back(
            predict_tree(ensemble.trees[static_cast<size_t>(i)], features));
    }
    return ensemble.aggregator == Aggregator::Modal ? modal_ranking(votes)
                                                    : borda(votes);
}

Ranking predict_bagged(const BaggedEnsemble& ensemble,
                       const std::vector<double>& features) {
    return predict_bagged_prefix(ensemble, features,
                                 static_cast<int>(ensemble.trees.size()));
}

}  // namespace lrens
