#pragma once

#include "lrens/ranking.hpp"

namespace lrens {

// Rank correlation on the [-1, 1] scale.
struct Correlation {
    double value = 0.0;
};

// Kendall-tau-b between two rankings over the same label set:
//
//   tau_b = (C - D) / sqrt((n0 - n1) (n0 - n2))
//
// with n0 = n(n-1)/2, C/D the concordant/discordant label pairs and n1/n2 the
// pairs tied within a / within b. Ties are permitted in either input. Uses a
// merge-sort discordance count (O(n log n)); exact pair bookkeeping is all
// integer so the result matches the quadratic pairwise definition.
//
// Throws DegenerateRanking when either input has all ranks tied (the
// denominator vanishes), DimensionMismatch when lengths differ.
Correlation kendall_tau_b(const Ranking& a, const Ranking& b);

// Per-instance boosting loss: 1 - kendall_tau_b(predicted, target), in [0, 2].
double instance_loss(const Ranking& predicted, const Ranking& target);

}  // namespace lrens
