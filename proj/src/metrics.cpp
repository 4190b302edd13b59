#include "lrens/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>

namespace lrens {

namespace {

// Pairs i<j with values[i] > values[j], counted while merge-sorting.
int64_t count_inversions(std::vector<int>& values) {
    const size_t n = values.size();
    std::vector<int> buffer(n);
    int64_t inversions = 0;
    for (size_t width = 1; width < n; width *= 2) {
        for (size_t lo = 0; lo + width < n; lo += 2 * width) {
            const size_t mid = lo + width;
            const size_t hi = std::min(lo + 2 * width, n);
            size_t i = lo, j = mid, k = lo;
            while (i < mid && j < hi) {
                if (values[i] <= values[j]) {
                    buffer[k++] = values[i++];
                } else {
                    inversions += static_cast<int64_t>(mid - i);
                    buffer[k++] = values[j++];
                }
            }
            while (i < mid) buffer[k++] = values[i++];
            while (j < hi) buffer[k++] = values[j++];
            std::copy(buffer.begin() + static_cast<ptrdiff_t>(lo),
                      buffer.begin() + static_cast<ptrdiff_t>(hi),
                      values.begin() + static_cast<ptrdiff_t>(lo));
        }
    }
    return inversions;
}

// Tied pairs over equal-key runs; positions 0..n-1 must already be sorted so
// that equal keys are adjacent.
template <typename KeyEq>
int64_t tied_pairs(int n, KeyEq same_key) {
    int64_t total = 0;
    int64_t run = 1;
    for (int i = 1; i <= n; ++i) {
        if (i < n && same_key(i, i - 1)) {
            ++run;
            continue;
        }
        total += run * (run - 1) / 2;
        run = 1;
    }
    return total;
}

}  // namespace

Correlation kendall_tau_b(const Ranking& a, const Ranking& b) {
    const int n = a.size();
    if (b.size() != n) {
        throw DimensionMismatch("rankings differ in length: " +
                                std::to_string(n) + " vs " +
                                std::to_string(b.size()));
    }

    // Sort label indices by (a, b); equal-a runs are then b-sorted, so the
    // inversion count over the b sequence is exactly the discordant pairs.
    std::vector<int> order(static_cast<size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int x, int y) {
        const size_t sx = static_cast<size_t>(x), sy = static_cast<size_t>(y);
        if (a.ranks[sx] != a.ranks[sy]) return a.ranks[sx] < a.ranks[sy];
        return b.ranks[sx] < b.ranks[sy];
    });
    const auto rank_a = [&](int i) {
        return a.ranks[static_cast<size_t>(order[static_cast<size_t>(i)])];
    };
    const auto rank_b = [&](int i) {
        return b.ranks[static_cast<size_t>(order[static_cast<size_t>(i)])];
    };

    const int64_t n1 = tied_pairs(n, [&](int i, int j) { return rank_a(i) == rank_a(j); });
    const int64_t n3 = tied_pairs(n, [&](int i, int j) {
        return rank_a(i) == rank_a(j) && rank_b(i) == rank_b(j);
    });

    std::vector<int> b_sorted = b.ranks;
    std::sort(b_sorted.begin(), b_sorted.end());
    const int64_t n2 = tied_pairs(n, [&](int i, int j) {
        return b_sorted[static_cast<size_t>(i)] == b_sorted[static_cast<size_t>(j)];
    });

    const int64_t n0 = static_cast<int64_t>(n) * (n - 1) / 2;
    if (n0 == n1 || n0 == n2) {
        throw DegenerateRanking(
            "all ranks tied in one input; tau-b is undefined");
    }

    std::vector<int> b_sequence(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) b_sequence[static_cast<size_t>(i)] = rank_b(i);
    const int64_t discordant = count_inversions(b_sequence);
    const int64_t numerator = n0 - n1 - n2 + n3 - 2 * discordant;  // C - D

    const double denom = std::sqrt(static_cast<double>(n0 - n1)) *
                         std::sqrt(static_cast<double>(n0 - n2));
    return Correlation{static_cast<double>(numerator) / denom};
}

double instance_loss(const Ranking& predicted, const Ranking& target) {
    return 1.0 - kendall_tau_b(predicted, target).value;
}

}  // namespace lrens
