#pragma once

#include <compare>
#include <string>
#include <vector>

#include "lrens/errors.hpp"

namespace lrens {

// Ordered set of distinct label names. Label index i refers to names()[i]
// everywhere in the system.
class LabelSet {
public:
    explicit LabelSet(std::vector<std::string> names);

    int size() const { return static_cast<int>(names_.size()); }
    const std::string& name(int i) const { return names_[static_cast<size_t>(i)]; }
    const std::vector<std::string>& names() const { return names_; }

    bool operator==(const LabelSet&) const = default;

private:
    std::vector<std::string> names_;
};

// Rank assignment over a label set: ranks[i] is the rank position of label i,
// 1 = most preferred. A complete ranking is a permutation of 1..n. Tied ranks
// (repeated values) are admissible only as inputs to the metric functions,
// never as training targets.
struct Ranking {
    std::vector<int> ranks;

    int size() const { return static_cast<int>(ranks.size()); }
    bool is_complete() const;
    bool has_ties() const;

    auto operator<=>(const Ranking&) const = default;
};

struct Instance {
    std::vector<double> features;
    Ranking target;
};

struct Dataset {
    LabelSet label_set;
    std::vector<std::string> feature_names;
    std::vector<Instance> instances;

    int m() const { return static_cast<int>(instances.size()); }
    int dim() const { return static_cast<int>(feature_names.size()); }
    int n_labels() const { return label_set.size(); }
};

struct RawRow {
    std::vector<double> features;
    std::vector<int> ranks;
};

// Checks every dataset invariant (complete permutation targets, finite
// features, consistent dimensions) and assembles the Dataset. row_offset
// shifts the row numbers in error messages; file parsers pass their header
// line count so messages point at physical lines.
Dataset validate_dataset(const LabelSet& label_set,
                         std::vector<std::string> feature_names,
                         const std::vector<RawRow>& rows, int row_offset = 0);

// Complete ranking from scores: the label with the greatest score gets rank 1,
// equal scores are broken by ascending label index.
Ranking ranking_from_scores(const std::vector<double>& scores);

}  // namespace lrens
