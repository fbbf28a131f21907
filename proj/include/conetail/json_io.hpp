#pragma once

#include <json.hpp>

#include "conetail/montecarlo.hpp"
#include "conetail/random_sum.hpp"

namespace conetail {

using json = nlohmann::json;

// PowerFn: {"coeff": 1.0, "exp": 0.5}
json to_json(const PowerFn& f);
PowerFn powerfn_from_json(const json& j);

// RectSet: {"d": 3, "S": [1,3], "x": {"1": 2.0, "3": 1.5}}  (1-based)
json to_json(const RectSet& a);
RectSet rectset_from_json(const json& j);

// TailMeasure: {"family": "mo_equal", "d": 2, "alpha": 1.0, "level": 2}
json to_json(const TailMeasure& mu);
TailMeasure measure_from_json(const json& j);

// Spectrum: {"d": 2, "delta": 2, "entries": [{"rv": {...}}, {"nc": {"gamma": 0.25}}]}
json to_json(const MRVSpectrum& spec);
MRVSpectrum spectrum_from_json(const json& j);

// Count: {"kind": "poisson", "lambda": 1.0}
json to_json(const CountDistribution& c);
CountDistribution count_from_json(const json& j);

// Model: {"family": "marshall_olkin", "d": 2, "alpha": 1.0, "rates": {"[1,2]": 1.0, ...}}
json to_json(const JumpModel& m);
JumpModel model_from_json(const json& j);

// LevySpec: {"lambda": 1.0, "spectrum": {...}}
json to_json(const LevySpec& spec);
LevySpec levyspec_from_json(const json& j);

// Kind: {"type": "sum", "n": 2} | {"type": "vector"}
//       | {"type": "compound_poisson", "lambda": 1.0, "s": 1.0}
json to_json(const SampleKind& k);
SampleKind kind_from_json(const json& j);

struct StudyConfig {
    JumpModel model;
    SampleKind kind;
    RectSet set;
    std::vector<double> t_grid;
    long long n_samples = 1000;
    std::uint64_t seed = 0;
    json theory;  // "auto" or {"spectrum": ...} or {"levy": {..., "regime": ...}}
    std::string output;
};

StudyConfig study_config_from_json(const json& j);

TheoryModel resolve_theory(const StudyConfig& cfg);

}  // namespace conetail
