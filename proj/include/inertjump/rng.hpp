#pragma once

#include <cmath>
#include <cstdint>
#include <string>
#include <string_view>

namespace inertjump {

// All randomness in the toolkit flows from one master seed through named
// sub-streams, so adding a consumer never perturbs another stream's draws.
// The generator is xoshiro256++ seeded via SplitMix64 from
// (master_seed, fnv1a64(stream name)); every draw is derived from raw
// 64-bit words so results are identical across platforms.

inline std::uint64_t splitmix64_next(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

inline std::uint64_t fnv1a64(std::string_view bytes) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

// Seed provenance recorded in every artifact produced from a stream.
struct SeedInfo {
    std::uint64_t master = 0;
    std::string stream;
};

class Rng {
public:
    Rng(std::uint64_t master_seed, std::string_view stream_name)
        : info_{master_seed, std::string(stream_name)} {
        std::uint64_t sm = master_seed ^ fnv1a64(stream_name);
        for (auto& word : s_) word = splitmix64_next(sm);
        // xoshiro256++ must not start from the all-zero state
        if ((s_[0] | s_[1] | s_[2] | s_[3]) == 0) s_[3] = 0x9e3779b97f4a7c15ULL;
    }

    std::uint64_t next_u64() {
        const std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
        const std::uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = rotl(s_[3], 45);
        return result;
    }

    // uniform on [0,1), 53-bit resolution
    double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    double uniform(double a, double b) { return a + (b - a) * uniform01(); }

    // rate-1 exponential; argument of log lies in (0,1]
    double exponential() { return -std::log(1.0 - uniform01()); }

    // standard normal via Marsaglia polar, spare cached
    double normal() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        double u, v, q;
        do {
            u = 2.0 * uniform01() - 1.0;
            v = 2.0 * uniform01() - 1.0;
            q = u * u + v * v;
        } while (q >= 1.0 || q == 0.0);
        const double f = std::sqrt(-2.0 * std::log(q) / q);
        spare_ = v * f;
        has_spare_ = true;
        return u * f;
    }

    // Poisson count by inversion from the product of uniforms (small means)
    long poisson(double mean) {
        const double limit = std::exp(-mean);
        long k = 0;
        double prod = uniform01();
        while (prod > limit) {
            ++k;
            prod *= uniform01();
        }
        return k;
    }

    const SeedInfo& seed_info() const { return info_; }

private:
    static std::uint64_t rotl(std::uint64_t x, int k) {
        return (x << k) | (x >> (64 - k));
    }

    SeedInfo info_;
    std::uint64_t s_[4] = {};
    bool has_spare_ = false;
    double spare_ = 0.0;
};

}  // namespace inertjump
