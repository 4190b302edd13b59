#pragma once

#include <vector>

#include "lrens/ranking.hpp"

namespace lrens {

// A voting profile: T complete rankings over one label set, each carrying a
// positive weight (the model weights alpha_t in boosting).
struct WeightedProfile {
    std::vector<Ranking> rankings;
    std::vector<double> weights;
};

// Weighted Borda scores: score(c_i) = sum_t alpha_t * |{j : c_i above c_j in
// ranking t}|. For a complete tie-free ranking that count is n - rank, which
// this uses instead of walking all pairs.
std::vector<double> weighted_borda_scores(const WeightedProfile& profile);

// Labels sorted by decreasing weighted Borda score, ascending label index on
// equal scores.
Ranking weighted_borda(const WeightedProfile& profile);

// Plain Borda: weighted Borda with all weights 1.
Ranking borda(const std::vector<Ranking>& rankings);

// Most frequent ranking in the multiset. Frequency ties fall back to plain
// Borda over the tied modal rankings (index tie-break on equal scores).
Ranking modal_ranking(const std::vector<Ranking>& rankings);

}  // namespace lrens
