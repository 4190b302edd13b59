#pragma once

#include <optional>
#include <string>
#include <vector>

#include "lrens/methods.hpp"

namespace lrens {

// One cross-validation run: per-fold mean test Kendall-tau-b and its mean.
struct CVResult {
    std::string method;
    std::string dataset;
    std::vector<double> fold_scores;
    double mean_kt = 0.0;
};

// One point of the ensemble-size sweep.
struct SizeCurveCell {
    std::string method;
    int size = 0;
    std::vector<double> fold_scores;
    double mean_kt = 0.0;
};

// Shuffled partition of 0..m-1 into `folds` disjoint folds whose sizes differ
// by at most one.
std::vector<std::vector<size_t>> make_folds(size_t m, int folds, uint64_t seed);

// Seeded k-fold cross-validation of one method: train on k-1 folds, score the
// mean Kendall-tau-b on the held-out fold. Boosting folds that raise
// NoUsableModel fall back to a single tree for that fold.
CVResult cross_validate(const Dataset& data, const MethodConfig& config,
                        int folds, uint64_t seed);

// Cross-validated mean kt per (method, ensemble size). Each method trains
// once per fold at the largest size; smaller sizes are read off the same run
// by truncating the ensemble to its first members, which for boosting mirrors
// the sequential construction of the records.
std::vector<SizeCurveCell> ensemble_size_sweep(const Dataset& data,
                                               const std::vector<MethodConfig>& methods,
                                               const std::vector<int>& sizes,
                                               int folds, uint64_t seed);

// 100 * (method_kt - single_kt) / |single_kt|. Throws BaselineNearZero when
// |single_kt| < 0.01; callers report the absolute delta instead.
double improvement_pct(double method_kt, double single_kt);

// Rank 1 = highest score; exact ties share the average of their positions.
std::vector<double> rank_methods(const std::vector<double>& scores);

struct FriedmanResult {
    double statistic = 0.0;
    int df = 0;
};

// Friedman Aligned Ranks statistic over an n-datasets x k-methods score
// table. Scores are aligned by subtracting each dataset's mean, all k*n
// aligned values are ranked jointly (1 = smallest, average ranks on ties),
// and with R_j / R_i the method / dataset rank sums:
//
//             (k-1) * [ sum_j R_j^2 - (k n^2 / 4)(k n + 1)^2 ]
//   T = -----------------------------------------------------------
//        k n (k n + 1)(2 k n + 1) / 6  -  (1/k) * sum_i R_i^2
//
// compared against chi-square with k-1 degrees of freedom. Throws
// DegenerateTable when all aligned values are tied (e.g. all scores
// identical) or the denominator is not positive.
FriedmanResult friedman_aligned_ranks(const std::vector<std::vector<double>>& scores);

// Upper 5% chi-square critical value, tabulated for df 1..10.
std::optional<double> chi_square_critical_95(int df);

struct ImprovementCell {
    std::string method;
    std::string dataset;
    double value = 0.0;
};

struct RankCell {
    std::string dataset;
    std::string method;
    double rank = 0.0;
};

struct CurvePoint {
    std::string method;
    int size = 0;
    double mean_kt = 0.0;  // averaged over datasets
};

struct EvalReport {
    std::vector<CVResult> results;                 // per (method, dataset)
    std::vector<ImprovementCell> improvements;     // ensemble methods only
    std::vector<ImprovementCell> skipped_improvements;  // guard failed; value
                                                        // is the absolute delta
    std::vector<RankCell> rank_table;
    std::optional<FriedmanResult> friedman;
    std::vector<CurvePoint> ensemble_size_curve;
};

struct NamedDataset {
    std::string name;
    Dataset data;
};

// The full benchmark: per dataset, sweep every ensemble method (plus a
// single-model run), then derive improvements, ranks, the size curve and the
// Friedman statistic across datasets.
EvalReport build_report(const std::vector<NamedDataset>& datasets,
                        const std::vector<MethodConfig>& methods,
                        const std::vector<int>& sizes, int folds, uint64_t seed);

}  // namespace lrens
