#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "conetail/levy.hpp"
#include "conetail/model_spectrum.hpp"

namespace conetail {

// What is being pushed into the tail set: one vector, a fixed sum, or a
// compound Poisson value L(s).
struct SampleKind {
    enum Type { Vector, Sum, CompoundPoisson } type = Vector;
    long long n = 1;      // Sum
    double lambda = 1.0;  // CompoundPoisson
    double s = 1.0;       // CompoundPoisson

    static SampleKind vector() { return {Vector, 1, 1.0, 1.0}; }
    static SampleKind sum(long long n) { return {Sum, n, 1.0, 1.0}; }
    static SampleKind compound_poisson(double lambda, double s) {
        return {CompoundPoisson, 1, lambda, s};
    }
};

struct Estimate {
    double p_hat = 0.0;
    double stderr_ = 0.0;
    long long n_samples = 0;
    double ci_lo = 0.0;  // Wilson 95%
    double ci_hi = 0.0;
    long long hits = 0;
};

Estimate estimate_from_hits(long long hits, long long n_samples);

// Zero-hit runs whose Wilson interval excludes the theory value carry no
// information about it.
bool insufficient_samples(const Estimate& e, double theory);

// Crude Monte Carlo for P(draw in tA).  Samples are split into fixed-size
// shards; shard g consumes RngStream(seed, stream_base + g) and shards are
// merged by summing hits, so the total is independent of thread count and
// identical to the serial reference.
Estimate estimate_tail_prob(const SampleKind& kind, const JumpModel& m, const RectSet& a,
                            double t, long long n_samples, std::uint64_t seed,
                            std::uint64_t stream_base = 0);

// Serial reference implementation (canonical shard order, no OpenMP).
Estimate estimate_tail_prob_serial(const SampleKind& kind, const JumpModel& m, const RectSet& a,
                                   double t, long long n_samples, std::uint64_t seed,
                                   std::uint64_t stream_base = 0);

// Number of samples per shard (fixed; part of the sharding contract).
constexpr long long kShardSize = 1 << 16;
// Stream indices reserved per study row.
constexpr std::uint64_t kStreamsPerRow = 1ull << 24;

struct StudyRow {
    double t = 0.0;
    double p_hat = 0.0;
    double stderr_ = 0.0;
    double ci_lo = 0.0;
    double ci_hi = 0.0;
    double approx = 0.0;
    double ratio = 0.0;  // p_hat / approx, 0 when approx == 0
    long long n_samples = 0;
    std::uint64_t seed = 0;
    bool insufficient = false;
};

// Theory side of a study: either a vector/sum spectrum or a Levy spec
// with a regime.
struct TheoryModel {
    bool is_levy = false;
    MRVSpectrum spectrum;  // already aggregated (self-convolved) for Sum
    LevySpec levy;
    LevyRegime regime = LevyRegime::Linear;

    double approx(const RectSet& a, double t, double s) const;
};

// Build the theory automatically from the model and kind.
TheoryModel auto_theory(const JumpModel& m, const SampleKind& kind);

struct StudyResult {
    std::vector<StudyRow> rows;
    bool ratio_tightening = true;  // |ratio-1| decreased along the grid
};

StudyResult convergence_study(const SampleKind& kind, const JumpModel& m,
                              const TheoryModel& theory, const RectSet& a,
                              const std::vector<double>& t_grid, long long n_samples,
                              std::uint64_t seed);

std::string study_csv(const StudyResult& r);

// Exact P(sum of n draws in tA) for the discrete-mixture and two-shock
// models without noise: enumerate shock allocations (multinomial weights)
// and use the exact m-fold Pareto-sum tail per coordinate.
double oracle_discrete_mixture(const JumpModel& m, long long n, const RectSet& a, double t);

// Exact P(Z in tA) for families with a closed-form joint survival.
double oracle_single_vector(const JumpModel& m, const RectSet& a, double t);

// P(X_1 + ... + X_m > y) for i.i.d. unit Pareto(alpha), by recursive
// adaptive quadrature (exact for m = 1).
double pareto_sum_tail(int m, double alpha, double y);

}  // namespace conetail
