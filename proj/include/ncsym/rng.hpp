#pragma once

#include <complex>
#include <cstdint>
#include <string_view>

namespace ncsym {

/// Counter-based generator: draw i is SplitMix64(key + i * gamma).
///
/// Streams are split by hashing a tag into the key, so any sub-computation
/// can be reproduced from the root seed and the chain of tags alone.
class CounterRng {
public:
    explicit CounterRng(std::uint64_t seed) noexcept;

    std::uint64_t next_u64() noexcept;
    /// Uniform on the open interval (0, 1), 53-bit resolution.
    double uniform() noexcept;
    double normal() noexcept;
    /// Circularly-symmetric standard complex Gaussian, E|z|^2 = 1.
    std::complex<double> complex_normal() noexcept;

    CounterRng split(std::uint64_t tag) const noexcept;
    CounterRng split(std::string_view tag) const noexcept;

    std::uint64_t key() const noexcept { return key_; }
    std::uint64_t counter() const noexcept { return counter_; }

private:
    CounterRng(std::uint64_t key, int) noexcept : key_(key) {}

    std::uint64_t key_;
    std::uint64_t counter_ = 0;
};

std::uint64_t splitmix64(std::uint64_t x) noexcept;

}  // namespace ncsym
