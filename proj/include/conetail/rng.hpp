#pragma once

#include <cmath>
#include <cstdint>
#include <random>

#include "conetail/errors.hpp"

namespace conetail {

// Seed-deterministic stream of random variates.  The (seed, stream) pair
// fully determines the output sequence; disjoint stream indices give the
// parallel substreams used by the Monte Carlo sharding contract.  Built on
// mt19937_64 (whose output is pinned by the standard) with hand-rolled
// transforms so sequences are reproducible bit for bit across platforms.
class RngStream {
public:
    RngStream(std::uint64_t seed, std::uint64_t stream)
        : engine_(mix(seed, stream)) {}

    // uniform on the open interval (0,1)
    double uniform() {
        const std::uint64_t bits = engine_() >> 11;  // 53 bits
        return (static_cast<double>(bits) + 0.5) * 0x1p-53;
    }

    double exponential(double rate = 1.0) {
        if (!(rate > 0.0)) raise(ErrorCode::BadParam, "rate must be positive");
        return -std::log(uniform()) / rate;
    }

    std::uint64_t raw() { return engine_(); }

private:
    static std::uint64_t mix(std::uint64_t seed, std::uint64_t stream) {
        // splitmix64 over a seed/stream combination
        std::uint64_t z = seed + 0x9E3779B97F4A7C15ull * (stream + 1);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    std::mt19937_64 engine_;
};

// Survival quantile of the unit Pareto: u in (0,1) -> u^(-1/alpha) >= 1,
// so that P(Z > pareto_quantile(u, alpha)) = u exactly.
inline double pareto_quantile(double u, double alpha) {
    if (!(u > 0.0 && u < 1.0)) raise(ErrorCode::DomainError, "u must lie in (0,1)");
    if (!(alpha > 0.0)) raise(ErrorCode::BadParam, "alpha must be positive");
    return std::pow(u, -1.0 / alpha);
}

// Poisson count by inversion (chunked uniform products, exact for the
// moderate means used here).
long long poisson_draw(RngStream& rng, double mean);

// Gamma(shape) via Marsaglia-Tsang, shape >= 1 (all uses here have
// shape > 1); normal variates from the polar method.
double gamma_draw(RngStream& rng, double shape);
double normal_draw(RngStream& rng);

}  // namespace conetail
