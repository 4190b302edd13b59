#include "lrens/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <numeric>
#include <set>

#include "lrens/metrics.hpp"
#include "lrens/rng.hpp"

namespace lrens {

std::vector<std::vector<size_t>> make_folds(size_t m, int folds, uint64_t seed) {
    if (folds < 2 || m < static_cast<size_t>(folds)) {
        throw TooFewInstances("need m >= folds >= 2, got m=" +
                              std::to_string(m) + ", folds=" +
                              std::to_string(folds));
    }
    std::vector<size_t> indices(m);
    std::iota(indices.begin(), indices.end(), size_t{0});
    Rng rng(derive_seed(seed, 0));
    rng.shuffle(indices);

    std::vector<std::vector<size_t>> result(static_cast<size_t>(folds));
    const size_t base = m / static_cast<size_t>(folds);
    const size_t extra = m % static_cast<size_t>(folds);
    size_t next = 0;
    for (size_t f = 0; f < static_cast<size_t>(folds); ++f) {
        const size_t size = base + (f < extra ? 1 : 0);
        result[f].assign(indices.begin() + static_cast<ptrdiff_t>(next),
                         indices.begin() + static_cast<ptrdiff_t>(next + size));
        next += size;
    }
    return result;
}

namespace {

Dataset subset(const Dataset& data, const std::vector<size_t>& indices) {
    std::vector<Instance> instances;
    instances.reserve(indices.size());
    for (size_t i : indices) instances.push_back(data.instances[i]);
    return Dataset{data.label_set, data.feature_names, std::move(instances)};
}

uint64_t fold_train_seed(uint64_t seed, Method method, int fold) {
    return derive_seed(derive_seed(seed, 1 + static_cast<uint64_t>(method)),
                       static_cast<uint64_t>(fold));
}

// Shared core of cross_validate and the size sweep: one training run per
// fold at the largest requested size, scored at every size via prefix
// truncation.
std::vector<SizeCurveCell> run_method_cv(const Dataset& data,
                                         const MethodConfig& config,
                                         const std::vector<int>& sizes,
                                         int folds, uint64_t seed) {
    const auto fold_sets =
        make_folds(static_cast<size_t>(data.m()), folds, seed);

    std::vector<SizeCurveCell> cells;
    cells.reserve(sizes.size());
    for (int size : sizes) {
        cells.push_back(SizeCurveCell{method_name(config.method), size, {}, 0.0});
    }

    for (int f = 0; f < folds; ++f) {
        const std::vector<size_t>& test_indices = fold_sets[static_cast<size_t>(f)];
        std::vector<size_t> train_indices;
        train_indices.reserve(static_cast<size_t>(data.m()) - test_indices.size());
        for (int g = 0; g < folds; ++g) {
            if (g == f) continue;
            const auto& fold = fold_sets[static_cast<size_t>(g)];
            train_indices.insert(train_indices.end(), fold.begin(), fold.end());
        }
        std::sort(train_indices.begin(), train_indices.end());

        const Dataset train = subset(data, train_indices);
        MethodConfig train_config = config;
        train_config.n_models = sizes.back();
        const uint64_t train_seed = fold_train_seed(seed, config.method, f);

        Model model = [&] {
            try {
                return train_model(train, train_config, train_seed);
            } catch (const NoUsableModel&) {
                std::cerr << "note: boosting produced no usable model on fold "
                          << (f + 1) << "; falling back to a single tree\n";
                MethodConfig fallback = train_config;
                fallback.method = Method::Single;
                return train_model(train, fallback, train_seed);
            }
        }();

        for (size_t s = 0; s < sizes.size(); ++s) {
            double total = 0.0;
            for (size_t i : test_indices) {
                const Instance& inst = data.instances[i];
                const Ranking predicted =
                    model.predict_prefix(inst.features, sizes[s]);
                total += kendall_tau_b(predicted, inst.target).value;
            }
            cells[s].fold_scores.push_back(
                total / static_cast<double>(test_indices.size()));
        }
    }

    for (SizeCurveCell& cell : cells) {
        cell.mean_kt =
            std::accumulate(cell.fold_scores.begin(), cell.fold_scores.end(), 0.0) /
            static_cast<double>(cell.fold_scores.size());
    }
    return cells;
}

}  // namespace

CVResult cross_validate(const Dataset& data, const MethodConfig& config,
                        int folds, uint64_t seed) {
    const auto cells =
        run_method_cv(data, config, {config.n_models}, folds, seed);
    return CVResult{cells.front().method, "", cells.front().fold_scores,
                    cells.front().mean_kt};
}

std::vector<SizeCurveCell> ensemble_size_sweep(const Dataset& data,
                                               const std::vector<MethodConfig>& methods,
                                               const std::vector<int>& sizes,
                                               int folds, uint64_t seed) {
    if (sizes.empty()) throw Error("size sweep needs at least one size");
    for (size_t i = 0; i < sizes.size(); ++i) {
        if (sizes[i] < 1 || (i > 0 && sizes[i] <= sizes[i - 1])) {
            throw Error("sweep sizes must be ascending and >= 1");
        }
    }
    std::vector<SizeCurveCell> cells;
    for (const MethodConfig& config : methods) {
        const auto method_cells = run_method_cv(data, config, sizes, folds, seed);
        cells.insert(cells.end(), method_cells.begin(), method_cells.end());
    }
    return cells;
}

double improvement_pct(double method_kt, double single_kt) {
    if (std::abs(single_kt) < 0.01) {
        throw BaselineNearZero("single-model kt " + std::to_string(single_kt) +
                               " is too close to zero for a percentage");
    }
    return 100.0 * (method_kt - single_kt) / std::abs(single_kt);
}

std::vector<double> rank_methods(const std::vector<double>& scores) {
    const size_t k = scores.size();
    if (k < 2) throw Error("ranking methods needs at least 2 scores");
    std::vector<size_t> order(k);
    std::iota(order.begin(), order.end(), size_t{0});
    std::sort(order.begin(), order.end(), [&](size_t a, size_t b) {
        if (scores[a] != scores[b]) return scores[a] > scores[b];
        return a < b;
    });

    std::vector<double> ranks(k, 0.0);
    size_t pos = 0;
    while (pos < k) {
        size_t end = pos;
        while (end + 1 < k && scores[order[end + 1]] == scores[order[pos]]) ++end;
        const double average =
            (static_cast<double>(pos + 1) + static_cast<double>(end + 1)) / 2.0;
        for (size_t i = pos; i <= end; ++i) ranks[order[i]] = average;
        pos = end + 1;
    }
    return ranks;
}

FriedmanResult friedman_aligned_ranks(const std::vector<std::vector<double>>& scores) {
    const size_t n = scores.size();
    if (n < 2) throw DegenerateTable("need at least 2 datasets");
    const size_t k = scores.front().size();
    if (k < 2) throw DegenerateTable("need at least 2 methods");
    for (const auto& row : scores) {
        if (row.size() != k) throw DegenerateTable("ragged score table");
        for (double v : row) {
            if (!std::isfinite(v)) throw DegenerateTable("non-finite score");
        }
    }

    // Align within each dataset block, then rank all k*n values jointly.
    std::vector<double> aligned(n * k);
    for (size_t i = 0; i < n; ++i) {
        const double mean =
            std::accumulate(scores[i].begin(), scores[i].end(), 0.0) /
            static_cast<double>(k);
        for (size_t j = 0; j < k; ++j) aligned[i * k + j] = scores[i][j] - mean;
    }
    const auto [lo, hi] = std::minmax_element(aligned.begin(), aligned.end());
    if (*lo == *hi) {
        throw DegenerateTable("all aligned observations are tied");
    }

    std::vector<size_t> order(aligned.size());
    std::iota(order.begin(), order.end(), size_t{0});
    std::sort(order.begin(), order.end(), [&](size_t a, size_t b) {
        if (aligned[a] != aligned[b]) return aligned[a] < aligned[b];
        return a < b;
    });
    std::vector<double> rank(aligned.size(), 0.0);
    size_t pos = 0;
    while (pos < order.size()) {
        size_t end = pos;
        while (end + 1 < order.size() &&
               aligned[order[end + 1]] == aligned[order[pos]]) {
            ++end;
        }
        const double average =
            (static_cast<double>(pos + 1) + static_cast<double>(end + 1)) / 2.0;
        for (size_t i = pos; i <= end; ++i) rank[order[i]] = average;
        pos = end + 1;
    }

    std::vector<double> method_sums(k, 0.0), block_sums(n, 0.0);
    for (size_t i = 0; i < n; ++i) {
        for (size_t j = 0; j < k; ++j) {
            method_sums[j] += rank[i * k + j];
            block_sums[i] += rank[i * k + j];
        }
    }

    const double kn = static_cast<double>(k * n);
    double sum_method_sq = 0.0;
    for (double r : method_sums) sum_method_sq += r * r;
    double sum_block_sq = 0.0;
    for (double r : block_sums) sum_block_sq += r * r;

    const double numerator =
        (static_cast<double>(k) - 1.0) *
        (sum_method_sq - (static_cast<double>(k) * static_cast<double>(n) *
                          static_cast<double>(n) / 4.0) *
                             (kn + 1.0) * (kn + 1.0));
    const double denominator = kn * (kn + 1.0) * (2.0 * kn + 1.0) / 6.0 -
                               sum_block_sq / static_cast<double>(k);
    if (!(denominator > 0.0)) {
        throw DegenerateTable("non-positive denominator in the aligned ranks statistic");
    }
    return FriedmanResult{numerator / denominator, static_cast<int>(k) - 1};
}

std::optional<double> chi_square_critical_95(int df) {
    static constexpr double kCritical[] = {3.84146, 5.99146, 7.81473, 9.48773,
                                           11.0705, 12.5916, 14.0671, 15.5073,
                                           16.9190, 18.3070};
    if (df < 1 || df > 10) return std::nullopt;
    return kCritical[df - 1];
}

EvalReport build_report(const std::vector<NamedDataset>& datasets,
                        const std::vector<MethodConfig>& methods,
                        const std::vector<int>& sizes, int folds, uint64_t seed) {
    if (datasets.empty()) throw Error("benchmark needs at least one dataset");
    if (methods.empty()) throw Error("benchmark needs at least one method");

    // The single model anchors improvements and ranks; synthesize it when the
    // caller leaves it out.
    std::vector<MethodConfig> all_methods = methods;
    if (std::none_of(methods.begin(), methods.end(), [](const MethodConfig& m) {
            return m.method == Method::Single;
        })) {
        MethodConfig single = methods.front();
        single.method = Method::Single;
        all_methods.push_back(single);
    }

    EvalReport report;
    // mean_table[dataset][method] feeds ranks and the Friedman statistic.
    std::vector<std::vector<double>> mean_table(
        datasets.size(), std::vector<double>(all_methods.size(), 0.0));
    // curve_totals[(method, size)] accumulates across datasets.
    std::vector<CurvePoint> curve;
    for (const MethodConfig& config : all_methods) {
        if (config.method == Method::Single) continue;
        for (int size : sizes) {
            curve.push_back(CurvePoint{method_name(config.method), size, 0.0});
        }
    }

    for (size_t di = 0; di < datasets.size(); ++di) {
        const NamedDataset& entry = datasets[di];
        const uint64_t dataset_seed = derive_seed(seed, di);

        double single_mean = 0.0;
        size_t curve_offset = 0;
        for (size_t mi = 0; mi < all_methods.size(); ++mi) {
            const MethodConfig& config = all_methods[mi];
            if (config.method == Method::Single) {
                CVResult cv = cross_validate(entry.data, config, folds, dataset_seed);
                cv.dataset = entry.name;
                single_mean = cv.mean_kt;
                mean_table[di][mi] = cv.mean_kt;
                report.results.push_back(std::move(cv));
                continue;
            }

            std::vector<int> sweep_sizes = sizes;
            if (std::find(sweep_sizes.begin(), sweep_sizes.end(),
                          config.n_models) == sweep_sizes.end()) {
                sweep_sizes.push_back(config.n_models);
                std::sort(sweep_sizes.begin(), sweep_sizes.end());
            }
            const auto cells = ensemble_size_sweep(entry.data, {config},
                                                   sweep_sizes, folds, dataset_seed);
            for (const SizeCurveCell& cell : cells) {
                if (cell.size == config.n_models) {
                    mean_table[di][mi] = cell.mean_kt;
                    report.results.push_back(CVResult{cell.method, entry.name,
                                                      cell.fold_scores,
                                                      cell.mean_kt});
                }
                const auto it = std::find(sizes.begin(), sizes.end(), cell.size);
                if (it != sizes.end()) {
                    const size_t si = static_cast<size_t>(it - sizes.begin());
                    curve[curve_offset + si].mean_kt += cell.mean_kt;
                }
            }
            curve_offset += sizes.size();
        }

        // Improvements of every ensemble method over the single model.
        for (size_t mi = 0; mi < all_methods.size(); ++mi) {
            const MethodConfig& config = all_methods[mi];
            if (config.method == Method::Single) continue;
            const std::string name = method_name(config.method);
            try {
                report.improvements.push_back(ImprovementCell{
                    name, entry.name,
                    improvement_pct(mean_table[di][mi], single_mean)});
            } catch (const BaselineNearZero&) {
                report.skipped_improvements.push_back(ImprovementCell{
                    name, entry.name, mean_table[di][mi] - single_mean});
            }
        }

        const std::vector<double> ranks = rank_methods(mean_table[di]);
        for (size_t mi = 0; mi < all_methods.size(); ++mi) {
            report.rank_table.push_back(RankCell{
                entry.name, method_name(all_methods[mi].method), ranks[mi]});
        }
    }

    for (CurvePoint& point : curve) {
        point.mean_kt /= static_cast<double>(datasets.size());
    }
    report.ensemble_size_curve = std::move(curve);

    if (datasets.size() >= 2) {
        try {
            report.friedman = friedman_aligned_ranks(mean_table);
        } catch (const DegenerateTable&) {
            report.friedman = std::nullopt;
        }
    }
    return report;
}

}  // namespace lrens
