#ifndef IVO_RNG_HPP
#define IVO_RNG_HPP

#include <cmath>
#include <cstdint>
#include <string>
#include <string_view>

namespace ivo {

// Counter-based deterministic generator. Each draw is a pure function of
// (key, counter), where the key mixes the run seed with module/check labels
// and a sample index. Substreams derived for different labels or sample
// indices never interact, so fan-out across workers cannot change results.
class CounterRng {
  public:
    CounterRng() : key_(0), ctr_(0) {}
    explicit CounterRng(std::uint64_t key) : key_(key), ctr_(0) {}

    static std::uint64_t fnv1a(std::string_view s, std::uint64_t h = 0xcbf29ce484222325ull) {
        for (unsigned char c : s) {
            h ^= c;
            h *= 0x100000001b3ull;
        }
        return h;
    }

    static std::uint64_t mix(std::uint64_t x) {
        // SplitMix64 finalizer.
        x += 0x9e3779b97f4a7c15ull;
        x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
        x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
        return x ^ (x >> 31);
    }

    // Substream keyed by (seed, module, check, sample index).
    static CounterRng keyed(std::uint64_t seed, std::string_view module,
                            std::string_view check, std::uint64_t sample) {
        std::uint64_t h = fnv1a(check, fnv1a(module));
        h = mix(h ^ mix(seed));
        h = mix(h ^ mix(sample + 0x51ed270b1a4f21ddull));
        return CounterRng(h);
    }

    std::uint64_t next_u64() { return mix(key_ ^ mix(ctr_++)); }

    // Uniform on [0, 1): 53 random mantissa bits.
    double uniform01() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    // Standard normal via Box-Muller (portable, unlike std::normal_distribution).
    double normal() {
        double u1 = uniform01();
        while (u1 <= 0.0) u1 = uniform01();
        const double u2 = uniform01();
        constexpr double two_pi = 6.283185307179586476925286766559;
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(two_pi * u2);
    }

    // Uniform integer in [0, n).
    std::uint64_t uniform_index(std::uint64_t n) {
        if (n == 0) return 0;
        // Rejection to avoid modulo bias.
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
        std::uint64_t x = next_u64();
        while (x >= limit) x = next_u64();
        return x % n;
    }

  private:
    std::uint64_t key_;
    std::uint64_t ctr_;
};

// Address of a substream family: (seed, module, check). `at(i)` yields the
// generator for sample i; samples may then be processed in any order or in
// parallel without affecting each other's draws.
struct StreamKey {
    std::uint64_t seed = 0;
    std::string module;
    std::string check;

    CounterRng at(std::uint64_t sample) const {
        return CounterRng::keyed(seed, module, check, sample);
    }
    StreamKey sub(const std::string& leaf) const {
        return {seed, module, check.empty() ? leaf : check + "/" + leaf};
    }
};

}  // namespace ivo

#endif
