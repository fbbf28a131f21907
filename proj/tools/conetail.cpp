// conetail: batch tool for subcone tail calculus, sampling, and
// Monte Carlo convergence studies.

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "conetail/json_io.hpp"

namespace {

using namespace conetail;

json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) raise(ErrorCode::BadParam, "cannot open " + path);
    json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        raise(ErrorCode::BadParam, std::string("json parse error in ") + path + ": " + e.what());
    }
    return j;
}

void apply_threads(int threads) {
#ifdef _OPENMP
    if (threads <= 0) {
        const char* env = std::getenv("CONETAIL_THREADS");
        if (env) threads = std::atoi(env);
    }
    if (threads > 0) omp_set_num_threads(threads);
#else
    (void)threads;
#endif
}

int cmd_eval_measure(const std::string& measure_path, const std::string& set_path) {
    const TailMeasure mu = measure_from_json(load_json(measure_path));
    const RectSet a = rectset_from_json(load_json(set_path));
    std::cout.precision(17);
    std::cout << eval_measure(mu, a) << "\n";
    return 0;
}

int cmd_convolve(const std::string& spec1_path, const std::string& spec2_path,
                 const std::string& out_path) {
    const MRVSpectrum s1 = spectrum_from_json(load_json(spec1_path));
    const MRVSpectrum s2 = spectrum_from_json(load_json(spec2_path));
    const MRVSpectrum sum = convolve(s1, s2);
    std::ofstream out(out_path);
    if (!out) raise(ErrorCode::BadParam, "cannot write " + out_path);
    out << to_json(sum).dump(2) << "\n";
    return 0;
}

int cmd_approx(const std::string& config_path) {
    const StudyConfig cfg = study_config_from_json(load_json(config_path));
    const TheoryModel theory = resolve_theory(cfg);
    std::cout.precision(17);
    std::cout << "t,approx\n";
    for (double t : cfg.t_grid)
        std::cout << t << ',' << theory.approx(cfg.set, t, cfg.kind.s) << "\n";
    return 0;
}

int cmd_simulate(const std::string& model_path, const std::string& kind_str, long long n,
                 std::uint64_t seed, long long count) {
    const JumpModel m = model_from_json(load_json(model_path));
    SampleKind kind = SampleKind::vector();
    if (kind_str == "vector") {
        kind = SampleKind::vector();
    } else if (kind_str.rfind("sum:", 0) == 0) {
        kind = SampleKind::sum(std::stoll(kind_str.substr(4)));
    } else if (kind_str.rfind("cp:", 0) == 0) {
        const auto rest = kind_str.substr(3);
        const auto comma = rest.find(',');
        if (comma == std::string::npos)
            raise(ErrorCode::BadParam, "cp kind needs cp:<lambda>,<s>");
        kind = SampleKind::compound_poisson(std::stod(rest.substr(0, comma)),
                                            std::stod(rest.substr(comma + 1)));
    } else {
        raise(ErrorCode::BadParam, "kind must be vector, sum:<n>, or cp:<lambda>,<s>");
    }
    (void)n;
    RngStream rng(seed, 0);
    std::cout.precision(17);
    for (long long k = 0; k < count; ++k) {
        std::vector<double> z;
        switch (kind.type) {
            case SampleKind::Vector:
                z = sample_vector(m, rng);
                break;
            case SampleKind::Sum:
                z = sample_sum(m, kind.n, rng);
                break;
            case SampleKind::CompoundPoisson:
                z = sample_compound_poisson(m, kind.lambda, kind.s, rng);
                break;
        }
        for (std::size_t j = 0; j < z.size(); ++j)
            std::cout << z[j] << (j + 1 < z.size() ? ',' : '\n');
    }
    return 0;
}

int cmd_study(const std::string& config_path, const std::string& out_path, int threads) {
    apply_threads(threads);
    const StudyConfig cfg = study_config_from_json(load_json(config_path));
    const TheoryModel theory = resolve_theory(cfg);
    const StudyResult result =
        convergence_study(cfg.kind, cfg.model, theory, cfg.set, cfg.t_grid, cfg.n_samples,
                          cfg.seed);
    const std::string csv = study_csv(result);
    const std::string target = out_path.empty() ? cfg.output : out_path;
    if (target.empty()) {
        std::cout << csv;
    } else {
        std::ofstream out(target);
        if (!out) raise(ErrorCode::BadParam, "cannot write " + target);
        out << csv;
    }
    if (!result.ratio_tightening)
        std::cerr << "warning: |ratio-1| did not decrease along the grid\n";
    for (const auto& row : result.rows)
        if (row.insufficient)
            std::cerr << "warning: no hits at t=" << row.t
                      << " and the interval excludes the theory value\n";
    return 0;
}

int cmd_oracle(const std::string& config_path) {
    const StudyConfig cfg = study_config_from_json(load_json(config_path));
    std::cout.precision(17);
    std::cout << "t,exact\n";
    for (double t : cfg.t_grid) {
        double v = 0.0;
        if (cfg.kind.type == SampleKind::Vector)
            v = oracle_single_vector(cfg.model, cfg.set, t);
        else if (cfg.kind.type == SampleKind::Sum)
            v = oracle_discrete_mixture(cfg.model, cfg.kind.n, cfg.set, t);
        else
            raise(ErrorCode::UnsupportedModel, "no oracle for compound Poisson kinds");
        std::cout << t << ',' << v << "\n";
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"subcone tail calculus for heavy-tailed sums"};
    app.require_subcommand(1);

    std::string measure_path, set_path, spec1_path, spec2_path, out_path, config_path;
    std::string model_path, kind_str = "vector";
    long long count = 10;
    std::uint64_t seed = 0;
    int threads = 0;

    auto* eval = app.add_subcommand("eval-measure", "evaluate a tail measure on a rectangle");
    eval->add_option("--measure", measure_path)->required();
    eval->add_option("--set", set_path)->required();

    auto* conv = app.add_subcommand("convolve", "convolve two adapted-MRV spectra");
    conv->add_option("--spec1", spec1_path)->required();
    conv->add_option("--spec2", spec2_path)->required();
    conv->add_option("--out", out_path)->required();

    auto* approx = app.add_subcommand("approx", "print theory approximations per t");
    approx->add_option("--config", config_path)->required();

    auto* sim = app.add_subcommand("simulate", "stream draws as CSV");
    sim->add_option("--model", model_path)->required();
    sim->add_option("--kind", kind_str, "vector | sum:<n> | cp:<lambda>,<s>");
    sim->add_option("--n", count, "number of draws");
    sim->add_option("--seed", seed);

    auto* study = app.add_subcommand("study", "run a Monte Carlo convergence study");
    study->add_option("--config", config_path)->required();
    study->add_option("--out", out_path);
    study->add_option("--threads", threads);

    auto* oracle = app.add_subcommand("oracle", "print exact oracle values where supported");
    oracle->add_option("--config", config_path)->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (eval->parsed()) return cmd_eval_measure(measure_path, set_path);
        if (conv->parsed()) return cmd_convolve(spec1_path, spec2_path, out_path);
        if (approx->parsed()) return cmd_approx(config_path);
        if (sim->parsed()) return cmd_simulate(model_path, kind_str, 0, seed, count);
        if (study->parsed()) return cmd_study(config_path, out_path, threads);
        if (oracle->parsed()) return cmd_oracle(config_path);
    } catch (const conetail::Error& e) {
        std::cerr << e.what() << "\n";
        return e.is_validation() ? 2 : 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
