#include "lrens/methods.hpp"

#include <algorithm>
#include <limits>

#include "lrens/aggregation.hpp"

namespace lrens {

std::string method_name(Method method) {
    switch (method) {
        case Method::Single: return "single";
        case Method::Boost: return "boost";
        case Method::BaggingModal: return "bagging-modal";
        case Method::BaggingBorda: return "bagging-borda";
        case Method::RandomForest: return "rf";
    }
    throw Error("unknown method");
}

std::optional<Method> method_from_name(const std::string& name) {
    for (Method m : {Method::Single, Method::Boost, Method::BaggingModal,
                     Method::BaggingBorda, Method::RandomForest}) {
        if (method_name(m) == name) return m;
    }
    return std::nullopt;
}

const LabelSet& Model::label_set() const {
    return std::visit([](const auto& m) -> const LabelSet& { return m.label_set; },
                      impl);
}

Ranking Model::predict(const std::vector<double>& features) const {
    return predict_prefix(features, std::numeric_limits<int>::max());
}

Ranking Model::predict_prefix(const std::vector<double>& features,
                              int size) const {
    if (const auto* tree = std::get_if<RankingTree>(&impl)) {
        return predict_tree(*tree, features);
    }
    if (const auto* boosted = std::get_if<BoostedEnsemble>(&impl)) {
        const int count = std::min<int>(
            size, static_cast<int>(boosted->records.size()));
        if (count < 1) throw Error("empty ensemble");
        WeightedProfile profile;
        for (int i = 0; i < count; ++i) {
            const IterationRecord& record =
                boosted->records[static_cast<size_t>(i)];
            profile.rankings.push_back(predict_tree(record.model, features));
            profile.weights.push_back(record.alpha);
        }
        return weighted_borda(profile);
    }
    return predict_bagged_prefix(std::get<BaggedEnsemble>(impl), features, size);
}

Model train_model(const Dataset& data, const MethodConfig& config,
                  uint64_t seed) {
    Model model{config, seed, data.feature_names, RankingTree{data.label_set, 0, {}}};
    switch (config.method) {
        case Method::Single: {
            TreeConfig tree_config = config.tree;
            tree_config.feature_subset = FeatureSubset::All;
            tree_config.seed = seed;
            model.impl = train_tree(data, tree_config);
            break;
        }
        case Method::Boost: {
            BoostConfig boost;
            boost.T = config.n_models;
            boost.S = config.sample_ratio;
            boost.tree = config.tree;
            boost.tree.feature_subset = FeatureSubset::All;
            boost.seed = seed;
            boost.identity_sample = config.identity_sample;
            model.impl = train_adaboost_lr(data, boost);
            break;
        }
        case Method::BaggingModal:
            model.impl = train_bagging(data, config.n_models, Aggregator::Modal,
                                       config.tree, seed, config.identity_sample);
            break;
        case Method::BaggingBorda:
            model.impl = train_bagging(data, config.n_models, Aggregator::Borda,
                                       config.tree, seed, config.identity_sample);
            break;
        case Method::RandomForest:
            model.impl = train_random_forest(data, config.n_models, config.tree,
                                             seed, config.identity_sample);
            break;
    }
    return model;
}

}  // namespace lrens
