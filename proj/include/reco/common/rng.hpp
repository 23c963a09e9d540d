#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <initializer_list>
#include <string_view>
#include <vector>

namespace reco {

inline std::uint64_t splitmix64(std::uint64_t& state) {
    state += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// FNV-1a. Stable across runs and platforms, unlike std::hash.
inline std::uint64_t stable_hash(std::string_view bytes, std::uint64_t h = 0xcbf29ce484222325ULL) {
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

inline std::uint64_t mix_keys(std::uint64_t seed, std::initializer_list<std::uint64_t> keys) {
    std::uint64_t s = seed;
    std::uint64_t out = splitmix64(s);
    for (std::uint64_t k : keys) {
        s ^= k + 0x9e3779b97f4a7c15ULL + (s << 6) + (s >> 2);
        out ^= splitmix64(s);
    }
    return out;
}

// xoshiro256**. Self-contained so that event logs are reproducible bit-for-bit;
// std distributions are not pinned by the standard.
class Rng {
public:
    explicit Rng(std::uint64_t seed) {
        std::uint64_t s = seed;
        for (auto& w : state_) w = splitmix64(s);
    }

    // Independent substream for (seed, keys...). Used to give every
    // (day, user), (day, purpose) etc. its own stream.
    static Rng stream(std::uint64_t seed, std::initializer_list<std::uint64_t> keys) {
        return Rng(mix_keys(seed, keys));
    }

    std::uint64_t next_u64() {
        const std::uint64_t result = rotl(state_[1] * 5, 7) * 9;
        const std::uint64_t t = state_[1] << 17;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = rotl(state_[3], 45);
        return result;
    }

    // [0, 1)
    double uniform() { return double(next_u64() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    // [0, n), unbiased
    std::uint64_t uniform_int(std::uint64_t n) {
        if (n == 0) return 0;
        const std::uint64_t limit = ~std::uint64_t(0) - (~std::uint64_t(0) % n);
        std::uint64_t x;
        do {
            x = next_u64();
        } while (x >= limit);
        return x % n;
    }

    bool bernoulli(double p) { return uniform() < p; }

    // Box-Muller; the second variate is discarded to keep streams stateless.
    double normal() {
        double u1 = uniform();
        while (u1 <= 0.0) u1 = uniform();
        const double u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925286766559 * u2);
    }

    double normal(double mean, double stddev) { return mean + stddev * normal(); }

    // Knuth's method; means in this project are small (publish counts etc.).
    int poisson(double mean) {
        if (mean <= 0.0) return 0;
        const double limit = std::exp(-mean);
        double p = 1.0;
        int k = 0;
        do {
            ++k;
            p *= uniform();
        } while (p > limit);
        return k - 1;
    }

    double gamma(double shape) {
        // Marsaglia-Tsang for shape >= 1; boost trick below 1.
        if (shape < 1.0) {
            const double u = uniform();
            return gamma(shape + 1.0) * std::pow(u > 0 ? u : 1e-300, 1.0 / shape);
        }
        const double d = shape - 1.0 / 3.0;
        const double c = 1.0 / std::sqrt(9.0 * d);
        for (;;) {
            double x = normal();
            double v = 1.0 + c * x;
            if (v <= 0.0) continue;
            v = v * v * v;
            const double u = uniform();
            if (u < 1.0 - 0.0331 * x * x * x * x) return d * v;
            if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v;
        }
    }

    double beta(double a, double b) {
        const double x = gamma(a);
        const double y = gamma(b);
        return x / (x + y);
    }

    template <class T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) {
            const std::size_t j = std::size_t(uniform_int(i));
            std::swap(v[i - 1], v[j]);
        }
    }

    // k distinct indices from [0, n), in random order.
    std::vector<std::uint32_t> sample_indices(std::uint32_t n, std::uint32_t k) {
        if (k >= n) {
            std::vector<std::uint32_t> all(n);
            for (std::uint32_t i = 0; i < n; ++i) all[i] = i;
            shuffle(all);
            return all;
        }
        // Partial Fisher-Yates on a lazy identity permutation.
        std::vector<std::uint32_t> pool(n);
        for (std::uint32_t i = 0; i < n; ++i) pool[i] = i;
        std::vector<std::uint32_t> out;
        out.reserve(k);
        for (std::uint32_t i = 0; i < k; ++i) {
            const std::uint32_t j = i + std::uint32_t(uniform_int(n - i));
            std::swap(pool[i], pool[j]);
            out.push_back(pool[i]);
        }
        return out;
    }

private:
    static std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

    std::array<std::uint64_t, 4> state_{};
};

// Stream tags; keeps derived streams from colliding across purposes.
namespace rng_tag {
constexpr std::uint64_t user_day = 0x01;
constexpr std::uint64_t retention = 0x02;
constexpr std::uint64_t publish = 0x03;
constexpr std::uint64_t world_init = 0x04;
constexpr std::uint64_t arrivals = 0x05;
constexpr std::uint64_t serve = 0x06;
constexpr std::uint64_t train = 0x07;
constexpr std::uint64_t bootstrap = 0x08;
constexpr std::uint64_t model_init = 0x09;
constexpr std::uint64_t external = 0x0a;
constexpr std::uint64_t noise = 0x0b;
constexpr std::uint64_t explore = 0x0c;
constexpr std::uint64_t kmeans = 0x0d;
constexpr std::uint64_t fixture = 0x0e;
} // namespace rng_tag

} // namespace reco
