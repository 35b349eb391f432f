#pragma once

#include <cstdint>

namespace pprgm {

// SplitMix64 stream. All randomness in the repo flows through this generator:
// it is splittable (independent substreams by hashing a stream id into the
// seed) and its output is identical on every platform, which keeps generated
// graphs and seed sets reproducible for a given rng_seed.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Uniform in [0,1), 53-bit resolution.
    double next_double() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    // Uniform in [0,n) without modulo bias.
    std::uint64_t next_below(std::uint64_t n) {
        std::uint64_t threshold = (0 - n) % n;
        for (;;) {
            std::uint64_t r = next();
            if (r >= threshold)
                return r % n;
        }
    }

    bool bernoulli(double p) { return next_double() < p; }

    // Independent substream derived from a parent seed and a stream id.
    static Rng substream(std::uint64_t seed, std::uint64_t stream) {
        Rng mix(seed ^ (0x6a09e667f3bcc909ULL + stream * 0x9e3779b97f4a7c15ULL));
        std::uint64_t s = mix.next();
        return Rng(s ^ mix.next());
    }

  private:
    std::uint64_t state_;
};

} // namespace pprgm
