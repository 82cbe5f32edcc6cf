#pragma once

#include <cstdint>
#include <random>
#include <utility>
#include <vector>

namespace idnet {

// Seeded generator with platform-independent draws. The standard
// distributions are implementation-defined, so bounded integers and unit
// reals are derived from the raw mt19937_64 stream directly.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }

    // Uniform integer in [0, bound). bound must be positive.
    std::uint64_t below(std::uint64_t bound) {
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
        std::uint64_t r;
        do {
            r = engine_();
        } while (r >= limit);
        return r % bound;
    }

    // Uniform real in [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    template <class T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) {
            std::swap(v[i - 1], v[below(i)]);
        }
    }

private:
    std::mt19937_64 engine_;
};

} // namespace idnet
