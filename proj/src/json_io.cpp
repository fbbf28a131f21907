#include "conetail/json_io.hpp"

#include <algorithm>

namespace conetail {

namespace {

double require_number(const json& j, const char* key) {
    if (!j.contains(key) || !j[key].is_number())
        raise(ErrorCode::BadParam, std::string("missing numeric field '") + key + "'");
    return j[key].get<double>();
}

int require_int(const json& j, const char* key) {
    if (!j.contains(key) || !j[key].is_number_integer())
        raise(ErrorCode::BadParam, std::string("missing integer field '") + key + "'");
    return j[key].get<int>();
}

std::string require_string(const json& j, const char* key) {
    if (!j.contains(key) || !j[key].is_string())
        raise(ErrorCode::BadParam, std::string("missing string field '") + key + "'");
    return j[key].get<std::string>();
}

// subset key "[1,3]" (1-based coordinates) <-> bitmask
std::string mask_key(std::uint32_t mask) {
    std::string s = "[";
    bool first = true;
    for (int j = 0; j < 32; ++j) {
        if (!(mask & (1u << j))) continue;
        if (!first) s += ',';
        s += std::to_string(j + 1);
        first = false;
    }
    return s + "]";
}

std::uint32_t mask_from_key(const std::string& key, int d) {
    std::uint32_t mask = 0;
    std::string digits;
    for (char c : key) {
        if (c >= '0' && c <= '9') {
            digits += c;
        } else {
            if (!digits.empty()) {
                const int j = std::stoi(digits);
                if (j < 1 || j > d) raise(ErrorCode::BadParam, "subset index out of range");
                mask |= 1u << (j - 1);
                digits.clear();
            }
        }
    }
    if (!digits.empty()) {
        const int j = std::stoi(digits);
        if (j < 1 || j > d) raise(ErrorCode::BadParam, "subset index out of range");
        mask |= 1u << (j - 1);
    }
    if (mask == 0) raise(ErrorCode::BadParam, "empty subset key");
    return mask;
}

}  // namespace

json to_json(const PowerFn& f) { return json{{"coeff", f.coeff}, {"exp", f.exponent}}; }

PowerFn powerfn_from_json(const json& j) {
    return PowerFn(require_number(j, "coeff"), require_number(j, "exp"));
}

json to_json(const RectSet& a) {
    json S = json::array();
    json x = json::object();
    for (const auto& [jdx, xj] : a.thresholds) {
        S.push_back(jdx + 1);
        x[std::to_string(jdx + 1)] = xj;
    }
    return json{{"d", a.dim}, {"S", S}, {"x", x}};
}

RectSet rectset_from_json(const json& j) {
    const int d = require_int(j, "d");
    if (!j.contains("S") || !j["S"].is_array()) raise(ErrorCode::BadParam, "missing index list S");
    if (!j.contains("x") || !j["x"].is_object()) raise(ErrorCode::BadParam, "missing thresholds x");
    std::map<int, double> x;
    for (const auto& idx : j["S"]) {
        const int one_based = idx.get<int>();
        const auto key = std::to_string(one_based);
        if (!j["x"].contains(key))
            raise(ErrorCode::BadParam, "threshold missing for index " + key);
        x[one_based - 1] = j["x"][key].get<double>();
    }
    return RectSet(d, std::move(x));
}

json to_json(const TailMeasure& mu) {
    json j;
    j["d"] = mu.d;
    switch (mu.family) {
        case MeasureFamily::Independence:
            j["family"] = "independence";
            j["alpha"] = mu.theta;
            j["level"] = mu.level;
            j["kappa"] = mu.kappa;
            break;
        case MeasureFamily::MOEqual:
            j["family"] = "mo_equal";
            j["alpha"] = mu.theta;
            j["level"] = mu.level;
            break;
        case MeasureFamily::MOProportional:
            j["family"] = "mo_proportional";
            j["alpha"] = mu.theta;
            j["level"] = mu.level;
            break;
        case MeasureFamily::ACIG: {
            j["family"] = "acig";
            j["alpha"] = mu.theta;
            j["level"] = mu.level;
            j["beta"] = mu.beta;
            if (!mu.acig_c.empty()) {
                json c = json::object();
                for (const auto& [k, v] : mu.acig_c) c[std::to_string(k)] = v;
                j["c"] = c;
            }
            break;
        }
        case MeasureFamily::MardiaDependent:
            j["family"] = "mardia";
            j["alpha"] = mu.theta;
            break;
        case MeasureFamily::CompleteDependence:
            j["family"] = "complete_dependence";
            j["alpha"] = mu.theta;
            break;
        case MeasureFamily::ClaytonLevy:
            j["family"] = "clayton_levy";
            j["alpha"] = mu.theta;
            j["theta"] = mu.beta;
            break;
        case MeasureFamily::DiscreteMixtureLevel1:
            j["family"] = "discrete_mixture_level1";
            j["alpha"] = mu.theta;
            j["p"] = mu.p;
            break;
        case MeasureFamily::Scaled:
            j["family"] = "scaled";
            j["c"] = mu.scale;
            j["child"] = to_json(mu.children[0]);
            break;
        case MeasureFamily::Sum: {
            j["family"] = "sum";
            json kids = json::array();
            for (const auto& c : mu.children) kids.push_back(to_json(c));
            j["children"] = kids;
            break;
        }
        case MeasureFamily::Product:
            j["family"] = "product";
            j["m"] = mu.prod_m;
            j["level"] = mu.level;
            j["child1"] = to_json(mu.children[0]);
            j["child2"] = to_json(mu.children[1]);
            break;
    }
    return j;
}

TailMeasure measure_from_json(const json& j) {
    const std::string family = require_string(j, "family");
    if (family == "scaled")
        return scale_measure(measure_from_json(j.at("child")), require_number(j, "c"));
    if (family == "sum") {
        std::vector<TailMeasure> kids;
        for (const auto& c : j.at("children")) kids.push_back(measure_from_json(c));
        return add_measures(kids);
    }
    if (family == "product")
        return product_measure(measure_from_json(j.at("child1")),
                               measure_from_json(j.at("child2")), require_int(j, "m"),
                               require_int(j, "level"));

    const int d = require_int(j, "d");
    const double alpha = require_number(j, "alpha");
    if (family == "independence") {
        std::vector<double> kappa(d, 1.0);
        if (j.contains("kappa")) kappa = j["kappa"].get<std::vector<double>>();
        return make_independence(d, require_int(j, "level"), alpha, std::move(kappa));
    }
    if (family == "mo_equal") return make_mo_equal(d, require_int(j, "level"), alpha);
    if (family == "mo_proportional")
        return make_mo_proportional(d, require_int(j, "level"), alpha);
    if (family == "acig") {
        std::map<int, double> calib;
        if (j.contains("c"))
            for (const auto& [k, v] : j["c"].items()) calib[std::stoi(k)] = v.get<double>();
        return make_acig(d, require_int(j, "level"), alpha, require_number(j, "beta"),
                         std::move(calib));
    }
    if (family == "mardia") return make_mardia(d, alpha);
    if (family == "complete_dependence") return make_complete_dependence(d, alpha);
    if (family == "clayton_levy")
        return make_clayton_levy(d, alpha, require_number(j, "theta"));
    if (family == "discrete_mixture_level1")
        return make_discrete_mixture_level1(d, alpha, j.at("p").get<std::vector<double>>());
    raise(ErrorCode::BadParam, "unknown measure family '" + family + "'");
}

json to_json(const MRVSpectrum& spec) {
    json entries = json::array();
    for (const auto& e : spec.entries) {
        if (e.rv)
            entries.push_back(
                json{{"rv", json{{"alpha", e.alpha}, {"b", to_json(e.b)}, {"mu", to_json(e.mu)}}}});
        else
            entries.push_back(json{{"nc", json{{"gamma", e.gamma}}}});
    }
    return json{{"d", spec.d}, {"delta", spec.delta}, {"entries", entries}};
}

MRVSpectrum spectrum_from_json(const json& j) {
    const int d = require_int(j, "d");
    if (!j.contains("entries") || !j["entries"].is_array())
        raise(ErrorCode::BadParam, "spectrum needs an entries array");
    std::vector<SpectrumEntry> entries;
    for (const auto& e : j["entries"]) {
        if (e.contains("rv")) {
            const auto& r = e["rv"];
            entries.push_back(SpectrumEntry::make_rv(require_number(r, "alpha"),
                                                     powerfn_from_json(r.at("b")),
                                                     measure_from_json(r.at("mu"))));
        } else if (e.contains("nc")) {
            entries.push_back(SpectrumEntry::make_null(require_number(e["nc"], "gamma")));
        } else {
            raise(ErrorCode::BadParam, "spectrum entry must be 'rv' or 'nc'");
        }
    }
    return make_spectrum(d, std::move(entries));
}

json to_json(const CountDistribution& c) {
    switch (c.kind) {
        case CountDistribution::Fixed:
            return json{{"kind", "fixed"}, {"n", c.n}};
        case CountDistribution::Poisson:
            return json{{"kind", "poisson"}, {"lambda", c.lambda}};
        case CountDistribution::Binomial:
            return json{{"kind", "binomial"}, {"n", c.n}, {"p", c.p}};
    }
    return {};
}

CountDistribution count_from_json(const json& j) {
    const std::string kind = require_string(j, "kind");
    if (kind == "fixed") return CountDistribution::fixed(require_int(j, "n"));
    if (kind == "poisson") return CountDistribution::poisson(require_number(j, "lambda"));
    if (kind == "binomial")
        return CountDistribution::binomial(require_int(j, "n"), require_number(j, "p"));
    if (kind == "geometric" || kind == "negative_binomial")
        raise(ErrorCode::UnsupportedCount,
              "count law '" + kind + "' lacks an everywhere-finite mgf");
    raise(ErrorCode::BadParam, "unknown count kind '" + kind + "'");
}

json to_json(const JumpModel& m) {
    json j;
    j["d"] = m.d;
    j["alpha"] = m.alpha;
    switch (m.family) {
        case ModelFamily::IndependencePareto:
            j["family"] = "independence_pareto";
            break;
        case ModelFamily::MarshallOlkin: {
            j["family"] = "marshall_olkin";
            json rates = json::object();
            for (const auto& [mask, lam] : m.rates) rates[mask_key(mask)] = lam;
            j["rates"] = rates;
            break;
        }
        case ModelFamily::Mardia:
            j["family"] = "mardia";
            break;
        case ModelFamily::ACIG:
            j["family"] = "acig";
            j["beta"] = m.beta;
            break;
        case ModelFamily::CompleteDependence:
            j["family"] = "complete_dependence";
            break;
        case ModelFamily::DiscreteMixture:
            j["family"] = "discrete_mixture";
            j["p"] = m.p;
            j["noise"] = m.noise;
            break;
        case ModelFamily::TwoShock:
            j["family"] = "two_shock";
            j["p"] = m.p;
            break;
    }
    return j;
}

JumpModel model_from_json(const json& j) {
    const std::string family = require_string(j, "family");
    const int d = require_int(j, "d");
    const double alpha = require_number(j, "alpha");
    if (family == "independence_pareto") return make_independence_model(d, alpha);
    if (family == "marshall_olkin") {
        if (!j.contains("rates") || !j["rates"].is_object())
            raise(ErrorCode::BadParam, "marshall_olkin needs a rates object");
        std::map<std::uint32_t, double> rates;
        for (const auto& [key, lam] : j["rates"].items())
            rates[mask_from_key(key, d)] = lam.get<double>();
        return make_marshall_olkin(d, alpha, std::move(rates));
    }
    if (family == "mardia") return make_mardia_model(d, alpha);
    if (family == "acig") return make_acig_model(d, alpha, require_number(j, "beta"));
    if (family == "complete_dependence") return make_complete_dependence_model(d, alpha);
    if (family == "discrete_mixture")
        return make_discrete_mixture_model(d, alpha, j.at("p").get<std::vector<double>>(),
                                           j.value("noise", false));
    if (family == "two_shock")
        return make_two_shock_model(d, alpha, j.at("p").get<std::vector<double>>());
    raise(ErrorCode::BadModel, "unknown model family '" + family + "'");
}

json to_json(const LevySpec& spec) {
    return json{{"lambda", spec.intensity}, {"spectrum", to_json(spec.jump_spectrum)}};
}

LevySpec levyspec_from_json(const json& j) {
    return LevySpec(spectrum_from_json(j.at("spectrum")), require_number(j, "lambda"));
}

json to_json(const SampleKind& k) {
    switch (k.type) {
        case SampleKind::Vector:
            return json{{"type", "vector"}};
        case SampleKind::Sum:
            return json{{"type", "sum"}, {"n", k.n}};
        case SampleKind::CompoundPoisson:
            return json{{"type", "compound_poisson"}, {"lambda", k.lambda}, {"s", k.s}};
    }
    return {};
}

SampleKind kind_from_json(const json& j) {
    const std::string type = require_string(j, "type");
    if (type == "vector") return SampleKind::vector();
    if (type == "sum") return SampleKind::sum(require_int(j, "n"));
    if (type == "compound_poisson")
        return SampleKind::compound_poisson(require_number(j, "lambda"), require_number(j, "s"));
    raise(ErrorCode::BadParam, "unknown kind '" + type + "'");
}

StudyConfig study_config_from_json(const json& j) {
    StudyConfig cfg;
    cfg.model = model_from_json(j.at("model"));
    cfg.kind = kind_from_json(j.at("kind"));
    cfg.set = rectset_from_json(j.at("set"));
    if (!j.contains("t_grid") || !j["t_grid"].is_array())
        raise(ErrorCode::BadParam, "missing t_grid");
    cfg.t_grid = j["t_grid"].get<std::vector<double>>();
    for (std::size_t k = 1; k < cfg.t_grid.size(); ++k)
        if (!(cfg.t_grid[k] > cfg.t_grid[k - 1]))
            raise(ErrorCode::BadParam, "t_grid must be strictly increasing");
    cfg.n_samples = static_cast<long long>(require_number(j, "n_samples"));
    if (cfg.n_samples < 1000)
        raise(ErrorCode::BadParam, "n_samples must be at least 1000");
    cfg.seed = j.value("seed", 0ull);
    cfg.theory = j.value("theory", json("auto"));
    cfg.output = j.value("output", std::string());
    return cfg;
}

TheoryModel resolve_theory(const StudyConfig& cfg) {
    if (cfg.theory.is_string() && cfg.theory.get<std::string>() == "auto")
        return auto_theory(cfg.model, cfg.kind);
    TheoryModel th;
    if (cfg.theory.contains("spectrum")) {
        th.spectrum = spectrum_from_json(cfg.theory["spectrum"]);
        return th;
    }
    if (cfg.theory.contains("levy")) {
        th.is_levy = true;
        th.levy = levyspec_from_json(cfg.theory["levy"]);
        const std::string regime = cfg.theory["levy"].value("regime", std::string("auto"));
        if (regime == "linear")
            th.regime = LevyRegime::Linear;
        else if (regime == "power_s")
            th.regime = LevyRegime::PowerS;
        else if (regime == "poisson_moment")
            th.regime = LevyRegime::PoissonMoment;
        else
            th.regime = choose_regime(th.levy);
        return th;
    }
    raise(ErrorCode::BadParam, "theory must be \"auto\", {\"spectrum\":...} or {\"levy\":...}");
}

}  // namespace conetail
