#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <string_view>
#include <vector>

namespace aggmet {

// All randomness in the pipeline flows through this wrapper. The engine is
// std::mt19937_64 (its output sequence is fully specified by the standard);
// the samplers are implemented here because the standard library leaves
// distribution algorithms unspecified and results must be reproducible
// across toolchains.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    // Uniform in [0, 1).
    double next_double() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    // Uniform in [0, n). Rejection sampling keeps the draw unbiased.
    std::size_t uniform_index(std::size_t n) {
        if (n <= 1) return 0;
        const std::uint64_t bound = ~std::uint64_t{0} - (~std::uint64_t{0} % n);
        std::uint64_t v = next_u64();
        while (v >= bound) v = next_u64();
        return static_cast<std::size_t>(v % n);
    }

    double normal(double mu, double sigma) {
        if (have_spare_) {
            have_spare_ = false;
            return mu + sigma * spare_;
        }
        double u1 = next_double();
        double u2 = next_double();
        while (u1 <= 0.0) u1 = next_double();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double theta = 2.0 * M_PI * u2;
        spare_ = r * std::sin(theta);
        have_spare_ = true;
        return mu + sigma * r * std::cos(theta);
    }

    double lognormal(double mu, double sigma) { return std::exp(normal(mu, sigma)); }

    // Number of failures before the first success; support {0, 1, 2, ...}.
    int geometric(double p) {
        double u = next_double();
        while (u <= 0.0) u = next_double();
        return static_cast<int>(std::floor(std::log(u) / std::log1p(-p)));
    }

    int poisson(double lambda) {
        if (lambda <= 0.0) return 0;
        int k = 0;
        // Knuth for small rates, split for larger ones to avoid underflow.
        while (lambda > 30.0) {
            // lambda = a + rest; draw Poisson(a) via gamma-free thinning:
            // simply accumulate in chunks of 30.
            k += poisson_knuth(30.0);
            lambda -= 30.0;
        }
        return k + poisson_knuth(lambda);
    }

    template <class T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) {
            std::size_t j = uniform_index(i);
            std::swap(v[i - 1], v[j]);
        }
    }

private:
    int poisson_knuth(double lambda) {
        const double limit = std::exp(-lambda);
        double prod = next_double();
        int k = 0;
        while (prod > limit) {
            ++k;
            prod *= next_double();
        }
        return k;
    }

    std::mt19937_64 engine_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

// FNV-1a, used to derive per-configuration seeds from (master seed, key) so
// concurrent configurations are schedule-independent.
inline std::uint64_t hash_string(std::string_view s) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

inline std::uint64_t derive_seed(std::uint64_t master, std::string_view key) {
    std::uint64_t h = master ^ hash_string(key);
    // splitmix64 finalizer to decorrelate nearby seeds
    h += 0x9e3779b97f4a7c15ULL;
    h = (h ^ (h >> 30)) * 0xbf58476d1ce4e5b9ULL;
    h = (h ^ (h >> 27)) * 0x94d049bb133111ebULL;
    return h ^ (h >> 31);
}

}  // namespace aggmet
