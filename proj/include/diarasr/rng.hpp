#pragma once

#include <cstdint>
#include <random>
#include <utility>
#include <vector>

namespace diarasr {

// Deterministic RNG used by every stochastic operation. std::mt19937_64
// output is pinned by the standard, but the standard *distributions* are
// not, so the mappings from raw draws to uniforms, indices and shuffles
// live here and are part of the contract for seeded corpora: the same
// (inputs, seed) must reproduce byte-identical results on any platform.
class Rng {
  public:
    explicit Rng(std::uint64_t seed);

    std::uint64_t next_u64();

    // Uniform in [0, 1), 53-bit resolution.
    double uniform();

    // Uniform in [a, b); a == b yields a.
    double uniform(double a, double b);

    // Unbiased uniform integer in [0, n); n must be > 0.
    std::size_t uniform_index(std::size_t n);

    // True with probability p. p <= 0 is never, p >= 1 is always.
    bool bernoulli(double p);

    // Fisher-Yates, back to front.
    template <typename T> void shuffle(std::vector<T> &xs) {
        for (std::size_t i = xs.size(); i > 1; --i) {
            std::swap(xs[i - 1], xs[uniform_index(i)]);
        }
    }

    // Independent child stream. Splitting is a pure function of the parent
    // seed and the stream tag, so sibling streams never interact no matter
    // how many draws each consumes.
    Rng split(std::uint64_t stream) const;

    // splitmix64 finalizer over (seed, stream).
    static std::uint64_t mix(std::uint64_t seed, std::uint64_t stream);

  private:
    std::uint64_t seed_;
    std::mt19937_64 engine_;
};

} // namespace diarasr
