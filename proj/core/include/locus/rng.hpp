#pragma once

#include <cstdint>
#include <random>

namespace locus {

/// Deterministic RNG wrapper. mt19937_64 has a fully specified sequence, and
/// bounded draws below avoid the implementation-defined std:: distributions,
/// so identical seeds give identical runs on every platform.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    std::uint64_t next_u64() { return eng_(); }

    /// Uniform in [0, n). n > 0.
    std::uint32_t below(std::uint32_t n) {
        return static_cast<std::uint32_t>(below64(n));
    }

    std::uint64_t below64(std::uint64_t n) {
        // rejection sampling; bias-free
        const std::uint64_t limit = UINT64_MAX - (UINT64_MAX % n);
        std::uint64_t v = eng_();
        while (v >= limit) v = eng_();
        return v % n;
    }

    bool coin() { return (eng_() >> 63) != 0; }

  private:
    std::mt19937_64 eng_;
};

/// Per-trial seed derivation (splitmix64 finalizer), so trial i is the same
/// stream no matter how trials are spread across workers.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
    std::uint64_t z = master + 0x9e3779b97f4a7c15ULL * (index + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

}  // namespace locus
