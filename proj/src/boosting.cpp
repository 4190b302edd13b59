#include "lrens/boosting.hpp"

#include <algorithm>
#include <cmath>

#include "lrens/aggregation.hpp"
#include "lrens/metrics.hpp"

namespace lrens {

WeightVector WeightVector::uniform(int m) {
    if (m < 1) throw Error("weight vector needs at least one instance");
    return WeightVector{std::vector<double>(
        static_cast<size_t>(m), 1.0 / static_cast<double>(m))};
}

Dataset weighted_sample(const Dataset& data, const WeightVector& weights,
                        double S, Rng& rng) {
    if (weights.size() != data.m()) {
        throw DimensionMismatch("weight vector does not match dataset size");
    }
    if (!(S > 0.0 && S <= 1.0)) throw OutOfRange("sample ratio must be in (0,1]");

    std::vector<double> cumulative(weights.w.size());
    double total = 0.0;
    for (size_t i = 0; i < weights.w.size(); ++i) {
        total += weights.w[i];
        cumulative[i] = total;
    }

    const size_t count = static_cast<size_t>(
        std::ceil(S * static_cast<double>(data.m())));
    std::vector<Instance> sampled;
    sampled.reserve(count);
    for (size_t k = 0; k < count; ++k) {
        const double u = rng.uniform() * total;
        const size_t i = static_cast<size_t>(
            std::lower_bound(cumulative.begin(), cumulative.end(), u) -
            cumulative.begin());
        sampled.push_back(
            data.instances[std::min(i, cumulative.size() - 1)]);
    }
    return Dataset{data.label_set, data.feature_names, std::move(sampled)};
}

std::vector<double> adjusted_losses(const std::vector<double>& losses) {
    if (losses.empty()) throw Error("no losses to adjust");
    double max_loss = 0.0;
    for (double l : losses) {
        if (l < 0.0) throw OutOfRange("losses must be non-negative");
        max_loss = std::max(max_loss, l);
    }
    if (max_loss == 0.0) {
        throw AllZeroLoss("every instance loss is zero");
    }
    std::vector<double> adjusted(losses.size());
    for (size_t i = 0; i < losses.size(); ++i) adjusted[i] = losses[i] / max_loss;
    return adjusted;
}

double average_loss(const std::vector<double>& adjusted,
                    const WeightVector& weights) {
    if (adjusted.size() != weights.w.size()) {
        throw DimensionMismatch("adjusted losses do not match weight vector");
    }
    double avg = 0.0;
    for (size_t i = 0; i < adjusted.size(); ++i) {
        avg += adjusted[i] * weights.w[i];
    }
    return avg;
}

std::pair<double, double> model_confidence_and_weight(double avg_loss) {
    if (!(avg_loss > 0.0 && avg_loss < 0.5)) {
        throw OutOfRange("average loss must be in (0, 0.5), got " +
                         std::to_string(avg_loss));
    }
    const double beta = avg_loss / (1.0 - avg_loss);
    return {beta, std::log(1.0 / beta)};
}

WeightVector update_weights(const WeightVector& weights,
                            const std::vector<double>& adjusted, double beta) {
    if (adjusted.size() != weights.w.size()) {
        throw DimensionMismatch("adjusted losses do not match weight vector");
    }
    if (!(beta > 0.0 && beta < 1.0)) throw OutOfRange("beta must be in (0,1)");

    WeightVector updated{std::vector<double>(weights.w.size())};
    double z = 0.0;
    for (size_t i = 0; i < weights.w.size(); ++i) {
        updated.w[i] = weights.w[i] * std::pow(beta, 1.0 - adjusted[i]);
        z += updated.w[i];
    }
    for (double& w : updated.w) w /= z;
    return updated;
}

BoostedEnsemble train_adaboost_lr(const Dataset& data, const BoostConfig& config,
                                  const BoostObserver& observer) {
    if (data.m() < 2) throw TooFewInstances("boosting needs at least 2 instances");
    if (config.T < 1) throw OutOfRange("T must be >= 1");
    if (!(config.S > 0.0 && config.S <= 1.0)) {
        throw OutOfRange("sample ratio must be in (0,1]");
    }

    BoostedEnsemble ensemble{{}, data.label_set};
    WeightVector weights = WeightVector::uniform(data.m());
    Rng sample_rng(derive_seed(config.seed, 0));

    for (int t = 1; t <= config.T; ++t) {
        TreeConfig tree_config = config.tree;
        tree_config.seed = derive_seed(config.seed, static_cast<uint64_t>(t));
        const Dataset sample =
            config.identity_sample
                ? data
                : weighted_sample(data, weights, config.S, sample_rng);
        RankingTree model = train_tree(sample, tree_config);

        std::vector<double> losses(static_cast<size_t>(data.m()));
        for (int i = 0; i < data.m(); ++i) {
            const Instance& inst = data.instances[static_cast<size_t>(i)];
            losses[static_cast<size_t>(i)] =
                instance_loss(predict_tree(model, inst.features), inst.target);
        }

        BoostIterationTrace trace;
        trace.iteration = t;
        trace.weights_before = weights.w;

        std::vector<double> adjusted;
        try {
            adjusted = adjusted_losses(losses);
        } catch (const AllZeroLoss&) {
            // Perfect weak model: keep it with a capped weight and stop.
            trace.kept = true;
            trace.all_zero_loss = true;
            trace.beta = kMinBeta;
            trace.alpha = std::log(1.0 / kMinBeta);
            ensemble.records.push_back(
                IterationRecord{std::move(model), 0.0, kMinBeta, trace.alpha});
            if (observer) observer(trace);
            return ensemble;
        }

        const double avg = average_loss(adjusted, weights);
        trace.adjusted = adjusted;
        trace.avg_loss = avg;

        if (avg >= 0.5) {
            // Weak model no better than chance on the weighted sample;
            // discard it and stop.
            if (observer) observer(trace);
            if (ensemble.records.empty()) {
                throw NoUsableModel(
                    "first boosting iteration has average loss >= 0.5");
            }
            return ensemble;
        }

        const auto [beta, alpha] = model_confidence_and_weight(avg);
        trace.beta = beta;
        trace.alpha = alpha;
        trace.kept = true;
        ensemble.records.push_back(
            IterationRecord{std::move(model), avg, beta, alpha});

        weights = update_weights(weights, adjusted, beta);
        trace.weights_after = weights.w;
        if (observer) observer(trace);
    }
    return ensemble;
}

Ranking predict_ensemble(const BoostedEnsemble& ensemble,
                         const std::vector<double>& features) {
    if (ensemble.records.empty()) throw Error("empty ensemble");
    WeightedProfile profile;
    profile.rankings.reserve(ensemble.records.size());
    profile.weights.reserve(ensemble.records.size());
    for (const IterationRecord& record : ensemble.records) {
        profile.rankings.push_back(predict_tree(record.model, features));
        profile.weights.push_back(record.alpha);
    }
    return weighted_borda(profile);
}

}  // namespace lrens
