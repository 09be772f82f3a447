#include "ncsym/rng.hpp"

#include <cmath>
#include <numbers>

namespace ncsym {

namespace {
constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ULL;

std::uint64_t fnv1a(std::string_view s) noexcept {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}
}  // namespace

std::uint64_t splitmix64(std::uint64_t z) noexcept {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

CounterRng::CounterRng(std::uint64_t seed) noexcept : key_(splitmix64(seed ^ 0x6E6373796D5F726EULL)) {}

std::uint64_t CounterRng::next_u64() noexcept {
    ++counter_;
    return splitmix64(key_ + counter_ * kGamma);
}

double CounterRng::uniform() noexcept {
    // (bits + 0.5) / 2^53 lies strictly inside (0, 1)
    const std::uint64_t bits = next_u64() >> 11;
    return (static_cast<double>(bits) + 0.5) * 0x1.0p-53;
}

double CounterRng::normal() noexcept {
    const double u1 = uniform();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

std::complex<double> CounterRng::complex_normal() noexcept {
    const double u1 = uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-std::log(u1));
    const double t = 2.0 * std::numbers::pi * u2;
    return {r * std::cos(t), r * std::sin(t)};
}

CounterRng CounterRng::split(std::uint64_t tag) const noexcept {
    return CounterRng(splitmix64(key_ ^ splitmix64(tag + kGamma)), 0);
}

CounterRng CounterRng::split(std::string_view tag) const noexcept { return split(fnv1a(tag)); }

}  // namespace ncsym
