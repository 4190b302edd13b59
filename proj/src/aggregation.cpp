#include "lrens/aggregation.hpp"

#include <map>

namespace lrens {

namespace {

void check_rankings(const std::vector<Ranking>& rankings) {
    if (rankings.empty()) throw Error("aggregation needs at least one ranking");
    const int n = rankings.front().size();
    for (const Ranking& r : rankings) {
        if (r.size() != n) {
            throw DimensionMismatch("rankings in a profile differ in length");
        }
        if (!r.is_complete()) {
            throw Error("aggregation requires complete tie-free rankings");
        }
    }
}

}  // namespace

std::vector<double> weighted_borda_scores(const WeightedProfile& profile) {
    check_rankings(profile.rankings);
    if (profile.weights.size() != profile.rankings.size()) {
        throw DimensionMismatch("profile has " +
                                std::to_string(profile.rankings.size()) +
                                " rankings but " +
                                std::to_string(profile.weights.size()) +
                                " weights");
    }
    for (double w : profile.weights) {
        if (!(w > 0.0)) throw Error("profile weights must be positive");
    }

    const int n = profile.rankings.front().size();
    std::vector<double> scores(static_cast<size_t>(n), 0.0);
    for (size_t t = 0; t < profile.rankings.size(); ++t) {
        const double alpha = profile.weights[t];
        const std::vector<int>& ranks = profile.rankings[t].ranks;
        for (int i = 0; i < n; ++i) {
            scores[static_cast<size_t>(i)] +=
                alpha * static_cast<double>(n - ranks[static_cast<size_t>(i)]);
        }
    }
    return scores;
}

Ranking weighted_borda(const WeightedProfile& profile) {
    return ranking_from_scores(weighted_borda_scores(profile));
}

Ranking borda(const std::vector<Ranking>& rankings) {
    return weighted_borda(WeightedProfile{
        rankings, std::vector<double>(rankings.size(), 1.0)});
}

Ranking modal_ranking(const std::vector<Ranking>& rankings) {
    check_rankings(rankings);
    std::map<Ranking, int> counts;
    for (const Ranking& r : rankings) ++counts[r];

    int best = 0;
    for (const auto& [r, c] : counts) best = std::max(best, c);

    std::vector<Ranking> modes;
    for (const auto& [r, c] : counts) {
        if (c == best) modes.push_back(r);
    }
    if (modes.size() == 1) return modes.front();
    return borda(modes);
}

}  // namespace lrens
