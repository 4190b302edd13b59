#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace lrens {

// Deterministic random stream. All draws are derived from raw mt19937_64
// outputs (which the standard pins bit-for-bit), so sequences are identical
// across platforms and standard library implementations; the std::*
// distribution adaptors are implementation-defined and are not used here.
class Rng {
public:
    explicit Rng(uint64_t seed) : gen_(seed) {}

    uint64_t next_u64() { return gen_(); }

    // Uniform double in [0, 1) with 53 random bits.
    double uniform() {
        return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
    }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    // Uniform index in [0, n). Rejection sampling, no modulo bias.
    size_t uniform_index(size_t n);

    // Normal(0, sigma) via Box-Muller.
    double normal(double sigma);

    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (size_t i = v.size(); i > 1; --i) {
            std::swap(v[i - 1], v[uniform_index(i)]);
        }
    }

private:
    std::mt19937_64 gen_;
};

// Decorrelated sub-stream seed for parallel-safe, order-independent work
// units (per tree, per fold, per cell).
uint64_t derive_seed(uint64_t base, uint64_t stream);

}  // namespace lrens
