#include "lrens/ranking.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <unordered_set>

namespace lrens {

LabelSet::LabelSet(std::vector<std::string> names) : names_(std::move(names)) {
    if (names_.size() < 2) {
        throw Error("label set needs at least 2 labels, got " +
                    std::to_string(names_.size()));
    }
    std::unordered_set<std::string> seen;
    for (const auto& name : names_) {
        if (name.empty()) throw Error("label names must be non-empty");
        if (!seen.insert(name).second) {
            throw Error("duplicate label name: " + name);
        }
    }
}

bool Ranking::is_complete() const {
    const int n = size();
    if (n == 0) return false;
    std::vector<char> seen(static_cast<size_t>(n), 0);
    for (int r : ranks) {
        if (r < 1 || r > n || seen[static_cast<size_t>(r - 1)]) return false;
        seen[static_cast<size_t>(r - 1)] = 1;
    }
    return true;
}

bool Ranking::has_ties() const {
    std::vector<int> sorted = ranks;
    std::sort(sorted.begin(), sorted.end());
    return std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end();
}

Dataset validate_dataset(const LabelSet& label_set,
                         std::vector<std::string> feature_names,
                         const std::vector<RawRow>& rows, int row_offset) {
    if (rows.empty()) throw EmptyDataset("dataset has no instances");

    const int n = label_set.size();
    const size_t dim = feature_names.size();
    std::vector<Instance> instances;
    instances.reserve(rows.size());
    for (size_t i = 0; i < rows.size(); ++i) {
        const auto row_label = [&] {
            return "row " + std::to_string(row_offset + static_cast<int>(i) + 1);
        };
        const RawRow& row = rows[i];
        if (row.features.size() != dim) {
            throw DimensionMismatch(row_label() + ": expected " +
                                    std::to_string(dim) + " features, got " +
                                    std::to_string(row.features.size()));
        }
        if (static_cast<int>(row.ranks.size()) != n) {
            throw DimensionMismatch(row_label() + ": expected " +
                                    std::to_string(n) + " ranks, got " +
                                    std::to_string(row.ranks.size()));
        }
        for (double f : row.features) {
            if (!std::isfinite(f)) {
                throw NonFiniteFeature(row_label() +
                                       ": features must be finite");
            }
        }
        Ranking target{row.ranks};
        if (!target.is_complete()) {
            throw NonPermutationTarget(
                row_label() + ": target ranks are not a permutation of 1.." +
                std::to_string(n));
        }
        instances.push_back(Instance{row.features, std::move(target)});
    }
    return Dataset{label_set, std::move(feature_names), std::move(instances)};
}

Ranking ranking_from_scores(const std::vector<double>& scores) {
    const int n = static_cast<int>(scores.size());
    for (double s : scores) {
        if (!std::isfinite(s)) throw Error("scores must be finite");
    }
    std::vector<int> order(static_cast<size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        if (scores[static_cast<size_t>(a)] != scores[static_cast<size_t>(b)]) {
            return scores[static_cast<size_t>(a)] > scores[static_cast<size_t>(b)];
        }
        return a < b;
    });
    Ranking out;
    out.ranks.resize(static_cast<size_t>(n));
    for (int pos = 0; pos < n; ++pos) {
        out.ranks[static_cast<size_t>(order[static_cast<size_t>(pos)])] = pos + 1;
    }
    return out;
}

}  // namespace lrens
