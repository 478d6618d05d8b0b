#pragma once

#include <cstdint>

namespace plie {

// Splitmix64. Used instead of <random> engines so that sampled values are
// bit-identical across platforms and standard library versions; every audit
// and certificate records the seed it ran with.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Unbiased uniform draw from [0, n), n >= 1.
    std::uint64_t below(std::uint64_t n) {
        const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % n);
        std::uint64_t v = next();
        while (v >= limit) v = next();
        return v % n;
    }

    // Deterministic per-sample substream, so audits can parallelize over
    // samples and still report replayable witnesses.
    static Rng for_sample(std::uint64_t seed, std::uint64_t index) {
        Rng mix(seed ^ (0xa0761d6478bd642fULL * (index + 1)));
        mix.next();
        return mix;
    }

private:
    std::uint64_t state_;
};

}  // namespace plie
