#pragma once

#include <cstdint>
#include <initializer_list>

#include "torusrot/vec2.hpp"

namespace torusrot {

// Seed used everywhere unless the caller overrides it.
inline constexpr std::uint64_t kDefaultSeed = 0x524F5441ull;

// Counter-based generator. Every consumer derives its own stream key from
// (seed, tag...) and draws by hashing successive counters, so the values a
// given task sees depend only on its tags, never on scheduling or on how
// many worker threads share the job.
namespace detail {
constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ull;

constexpr std::uint64_t mix64(std::uint64_t x) {
    x ^= x >> 30;
    x *= 0xBF58476D1CE4E5B9ull;
    x ^= x >> 27;
    x *= 0x94D049BB133111EBull;
    x ^= x >> 31;
    return x;
}
}  // namespace detail

class CounterRng {
public:
    explicit CounterRng(std::uint64_t seed) : key_(detail::mix64(seed + detail::kGolden)) {}

    CounterRng(std::uint64_t seed, std::initializer_list<std::uint64_t> tags) : CounterRng(seed) {
        for (std::uint64_t t : tags) key_ = detail::mix64(key_ ^ detail::mix64(t + detail::kGolden));
    }

    // Child stream; drawing from the child never disturbs the parent.
    CounterRng split(std::uint64_t tag) const {
        CounterRng child = *this;
        child.key_ = detail::mix64(key_ ^ detail::mix64(tag + detail::kGolden));
        child.counter_ = 0;
        return child;
    }

    std::uint64_t next_u64() { return detail::mix64(key_ + detail::kGolden * ++counter_); }

    // Uniform in [0, 1) with 53 random bits.
    double next_double() { return double(next_u64() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * next_double(); }

    Vec2 in_square(const Vec2& lo, const Vec2& hi) {
        return {uniform(lo.x, hi.x), uniform(lo.y, hi.y)};
    }

private:
    std::uint64_t key_;
    std::uint64_t counter_ = 0;
};

}  // namespace torusrot
