#pragma once

#include <optional>
#include <string>
#include <variant>

#include "lrens/baselines.hpp"
#include "lrens/boosting.hpp"

namespace lrens {

enum class Method {
    Single,
    Boost,
    BaggingModal,
    BaggingBorda,
    RandomForest,
};

std::string method_name(Method method);
std::optional<Method> method_from_name(const std::string& name);

// Everything needed to train any of the five methods.
struct MethodConfig {
    Method method = Method::Boost;
    int n_models = 50;
    double sample_ratio = 1.0;  // boosting only
    TreeConfig tree;
    bool identity_sample = false;  // test hook
};

// A trained model of any method, with enough metadata to serialize itself.
struct Model {
    MethodConfig config;
    uint64_t seed = 0;
    std::vector<std::string> feature_names;
    std::variant<RankingTree, BoostedEnsemble, BaggedEnsemble> impl;

    const LabelSet& label_set() const;
    Ranking predict(const std::vector<double>& features) const;

    // Prediction restricted to the first `size` ensemble members (all of
    // them when size exceeds the member count; single models ignore it).
    Ranking predict_prefix(const std::vector<double>& features, int size) const;
};

Model train_model(const Dataset& data, const MethodConfig& config, uint64_t seed);

}  // namespace lrens
