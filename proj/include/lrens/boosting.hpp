#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "lrens/rng.hpp"
#include "lrens/tree.hpp"

namespace lrens {

// Per-instance training weights: a probability distribution over the m
// training instances.
struct WeightVector {
    std::vector<double> w;

    static WeightVector uniform(int m);
    int size() const { return static_cast<int>(w.size()); }
};

struct BoostConfig {
    int T = 50;              // maximum number of boosting iterations
    double S = 1.0;          // sample ratio, in (0, 1]
    TreeConfig tree;
    uint64_t seed = 0;
    bool identity_sample = false;  // test hook: use the training set verbatim
};

// One kept boosting iteration: the weak model, its weighted average adjusted
// loss, confidence beta = L/(1-L) and weight alpha = ln(1/beta).
struct IterationRecord {
    RankingTree model;
    double avg_loss = 0.0;
    double beta = 0.0;
    double alpha = 0.0;
};

struct BoostedEnsemble {
    std::vector<IterationRecord> records;
    LabelSet label_set;
};

// Confidence floor for iterations whose weak model has zero loss everywhere;
// caps alpha at ln(1/kMinBeta) instead of letting it blow up.
inline constexpr double kMinBeta = 1e-10;

// ceil(S*m) instances drawn independently with replacement, instance i with
// probability weights.w[i].
Dataset weighted_sample(const Dataset& data, const WeightVector& weights,
                        double S, Rng& rng);

// Losses divided by their maximum, mapping into [0, 1]. Throws AllZeroLoss
// when every loss is zero (a perfect iteration).
std::vector<double> adjusted_losses(const std::vector<double>& losses);

// Weighted average of adjusted losses.
double average_loss(const std::vector<double>& adjusted,
                    const WeightVector& weights);

// (beta, alpha) for an average loss in (0, 0.5); throws OutOfRange otherwise.
std::pair<double, double> model_confidence_and_weight(double avg_loss);

// w'(i) proportional to w(i) * beta^(1-L(i)), renormalized to sum 1.
WeightVector update_weights(const WeightVector& weights,
                            const std::vector<double>& adjusted, double beta);

// Observability hook for the training loop; used by invariant tests.
struct BoostIterationTrace {
    int iteration = 0;  // 1-based
    std::vector<double> weights_before;
    std::vector<double> adjusted;  // empty when all losses were zero
    double avg_loss = 0.0;
    double beta = 0.0;
    double alpha = 0.0;
    bool kept = false;
    bool all_zero_loss = false;
    std::vector<double> weights_after;  // empty when the loop stopped here
};
using BoostObserver = std::function<void(const BoostIterationTrace&)>;

// AdaBoost.LR. Repeats up to T times: draw a weighted sample, train a tree on
// it, score Kendall losses on all m training instances, normalize and average
// them, then either stop (avg >= 0.5 discards the model; all-zero losses keep
// it with alpha capped via kMinBeta) or record the model and reweight.
// Throws NoUsableModel when the very first iteration is discarded.
BoostedEnsemble train_adaboost_lr(const Dataset& data, const BoostConfig& config,
                                  const BoostObserver& observer = {});

// Weighted Borda over the member trees' predicted rankings.
Ranking predict_ensemble(const BoostedEnsemble& ensemble,
                         const std::vector<double>& features);

}  // namespace lrens
