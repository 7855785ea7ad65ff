// Command-line harness: generate synthetic problems, solve single instances,
// and run seed-averaged benchmark sweeps with per-iteration trace artifacts.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include <glasso/glasso.hpp>

namespace {

constexpr int kExitUsage = 2;     // bad flags or flag combinations
constexpr int kExitInput = 3;     // unreadable/malformed input data
constexpr int kExitNumerical = 4; // generator or solver numerical failure

int classify(const std::exception& e) {
    if (dynamic_cast<const glasso::ParseError*>(&e) != nullptr ||
        dynamic_cast<const glasso::AsymmetricInput*>(&e) != nullptr ||
        dynamic_cast<const glasso::DimensionError*>(&e) != nullptr ||
        dynamic_cast<const glasso::RaggedRows*>(&e) != nullptr ||
        dynamic_cast<const glasso::EmptyFile*>(&e) != nullptr ||
        dynamic_cast<const glasso::ZeroVariance*>(&e) != nullptr ||
        dynamic_cast<const glasso::SerializationError*>(&e) != nullptr ||
        dynamic_cast<const glasso::IoError*>(&e) != nullptr)
        return kExitInput;
    return kExitNumerical;
}

glasso::GraphKind parse_kind(const std::string& s) {
    if (s == "chain") return glasso::GraphKind::Chain;
    if (s == "random") return glasso::GraphKind::Random;
    return glasso::GraphKind::Planar;
}

int default_samples(double ratio, int n) {
    return static_cast<int>(std::max<long>(std::lround(ratio * n), 10));
}

glasso::GroundTruth make_truth(glasso::GraphKind kind, int n, std::uint64_t seed, double density) {
    glasso::SymMatrix base = [&] {
        switch (kind) {
            case glasso::GraphKind::Chain: return glasso::gen_chain(n);
            case glasso::GraphKind::Random: return glasso::gen_random(n, density, seed);
            default: return glasso::gen_planar(n, seed);
        }
    }();
    auto [precision, shift] = glasso::spd_shift(base);
    glasso::GroundTruth truth;
    truth.precision = std::move(precision);
    truth.kind = kind;
    truth.shift = shift;
    truth.seed = seed;
    return truth;
}

void ensure_parent_dir(const std::string& out_prefix) {
    const auto parent = std::filesystem::path(out_prefix).parent_path();
    if (!parent.empty()) std::filesystem::create_directories(parent);
}

struct FinalStats {
    double f = 0.0;
    double sub_l1 = 0.0;
    double sub_fro = 0.0;
    long long nnz = 0;
};

// The driver records a trace row for the final iterate before every exit, so
// the last row describes `estimate`; recompute only if tracing was off.
FinalStats final_stats(const glasso::SolveResult& res, const glasso::Problem& prob) {
    if (!res.traces.empty()) {
        const auto& t = res.traces.back();
        return {t.f_total, t.min_subgrad_l1, t.min_subgrad_fro, t.nnz};
    }
    const auto chol = glasso::cholesky(res.estimate);
    if (!chol) throw glasso::NoConvergence("final estimate is not positive definite");
    const glasso::SymMatrix w = glasso::spd_inverse(*chol);
    const glasso::SymMatrix g = glasso::gradient(w, prob);
    const glasso::Norms sub = glasso::norms(glasso::min_subgradient(res.estimate, g, prob.alpha));
    return {glasso::f_total(res.estimate, prob, glasso::log_det(*chol)), sub.l1, sub.fro,
            glasso::norms(res.estimate).nnz};
}

struct SolveOutput {
    glasso::SolveResult result;
    FinalStats stats;
    double wall_seconds = 0.0;
};

SolveOutput timed_solve(const glasso::Problem& prob, const glasso::SolverConfig& cfg,
                        const std::string& solver, bool sequential) {
    const auto t0 = std::chrono::steady_clock::now();
    glasso::SolveResult res =
        solver == "gista" ? glasso::solve_gista(prob, cfg) : glasso::solve_pista(prob, cfg);
    double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (sequential) { // zero every recorded wall-clock field for byte-stable artifacts
        wall = 0.0;
        for (auto& t : res.traces) t.wall_ms = 0.0;
    }
    SolveOutput out{std::move(res), {}, wall};
    out.stats = final_stats(out.result, prob);
    return out;
}

glasso::RunRecord make_record(const std::string& kind, int n, int m, double alpha,
                              std::uint64_t seed, double shift, const std::string& solver,
                              const glasso::SolverConfig& cfg, const SolveOutput& out) {
    glasso::RunRecord rec;
    rec.kind = kind;
    rec.n = n;
    rec.m = m;
    rec.alpha = alpha;
    rec.seed = seed;
    rec.shift = shift;
    rec.solver = solver;
    rec.config = cfg;
    rec.converged = out.result.converged;
    rec.iterations = out.result.iterations;
    rec.termination = glasso::to_string(out.result.termination);
    rec.f_final = out.stats.f;
    rec.subgrad_l1 = out.stats.sub_l1;
    rec.subgrad_fro = out.stats.sub_fro;
    rec.nnz = out.stats.nnz;
    rec.wall_seconds = out.wall_seconds;
    return rec;
}

void write_artifacts(const std::string& prefix, const glasso::RunRecord& rec,
                     const glasso::SolveResult& res) {
    glasso::write_matrix_market(res.estimate, prefix + ".estimate.mtx");
    glasso::write_trace(res.traces, prefix + ".trace.csv");
    glasso::write_result(rec, prefix + ".result.json");
}

void print_summary(const std::string& solver, const SolveOutput& out) {
    std::cout << solver << " iter=" << out.result.iterations << " time="
              << glasso::format_double(out.wall_seconds) << " f=" << glasso::format_double(out.stats.f)
              << " nnz=" << out.stats.nnz << " subgrad_l1=" << glasso::format_double(out.stats.sub_l1)
              << "\n";
}

// ---------------------------------------------------------------- generate

struct GenerateArgs {
    std::string kind;
    int n = 0;
    std::uint64_t seed = 0;
    double density = 0.005;
    int samples = 0;        // 0 = derive from sample_ratio
    double sample_ratio = 0.03;
    std::string out;
};

int run_generate(const GenerateArgs& args) {
    const glasso::GraphKind kind = parse_kind(args.kind);
    const int min_n = kind == glasso::GraphKind::Chain ? 2 : kind == glasso::GraphKind::Planar ? 3 : 1;
    if (args.n < min_n) {
        std::cerr << "glasso: error: --kind " << args.kind << " requires --n >= " << min_n << "\n";
        return kExitUsage;
    }
    const glasso::GroundTruth truth = make_truth(kind, args.n, args.seed, args.density);
    const int m = args.samples > 0 ? args.samples : default_samples(args.sample_ratio, args.n);
    const glasso::SampleSet samples = glasso::sample_mvn(truth, m, args.seed);
    const glasso::SymMatrix cov = glasso::empirical_cov(samples);

    ensure_parent_dir(args.out);
    glasso::write_matrix_market(truth.precision, args.out + ".precision.mtx");
    glasso::write_samples(samples, args.out + ".samples.csv");
    glasso::write_matrix_market(cov, args.out + ".cov.mtx");
    std::cout << "wrote " << args.out << ".precision.mtx\n"
              << "wrote " << args.out << ".samples.csv\n"
              << "wrote " << args.out << ".cov.mtx\n"
              << "shift=" << glasso::format_double(truth.shift) << "\n";
    return 0;
}

// ------------------------------------------------------------------- solve

struct SolveArgs {
    std::string cov;
    std::string samples;
    std::string format = "auto";
    double alpha = 0.0;
    std::string solver = "pista";
    int max_iter = 200;
    double stop_rel = 1e-2;
    bool standardize = false;
    bool sequential = false;
    std::string out;
};

glasso::MatrixFormat pick_format(const std::string& flag, const std::string& path) {
    if (flag == "csv") return glasso::MatrixFormat::DenseCSV;
    if (flag == "mm") return glasso::MatrixFormat::MatrixMarket;
    const auto ext = std::filesystem::path(path).extension().string();
    return (ext == ".mtx" || ext == ".mm") ? glasso::MatrixFormat::MatrixMarket
                                           : glasso::MatrixFormat::DenseCSV;
}

int run_solve(const SolveArgs& args) {
    if (args.cov.empty() == args.samples.empty()) {
        std::cerr << "glasso: error: exactly one of --cov or --samples is required\n";
        return kExitUsage;
    }
    int m = 0;
    glasso::SymMatrix s(1);
    if (!args.cov.empty()) {
        s = glasso::read_matrix(args.cov, pick_format(args.format, args.cov));
    } else {
        const glasso::SampleSet samples = glasso::read_samples(args.samples);
        m = samples.m;
        s = glasso::empirical_cov(samples);
    }
    if (args.standardize) s = glasso::standardize(s);

    const glasso::Problem prob(std::move(s), args.alpha);
    glasso::SolverConfig cfg;
    cfg.max_iter = args.max_iter;
    cfg.stop_rel = args.stop_rel;
    const SolveOutput out = timed_solve(prob, cfg, args.solver, args.sequential);

    ensure_parent_dir(args.out);
    const glasso::RunRecord rec =
        make_record("file", prob.s.n(), m, args.alpha, 0, 0.0, args.solver, cfg, out);
    write_artifacts(args.out, rec, out.result);
    print_summary(args.solver, out);
    return 0;
}

// ------------------------------------------------------------------- bench

struct BenchArgs {
    std::vector<std::string> kinds;
    int n = 0;
    std::vector<double> alphas;
    std::vector<std::uint64_t> seeds = {0, 1, 2, 3, 4};
    std::vector<std::string> solvers = {"pista", "gista"};
    int samples = 0;
    double sample_ratio = 0.03;
    double density = 0.005;
    int max_iter = 200;
    double stop_rel = 1e-2;
    bool standardize = true;
    bool sequential = false;
    std::string out;
};

struct Cell {
    int runs = 0;
    int failures = 0;
    double sum_time = 0.0;
    double sum_iters = 0.0;
    double sum_nnz = 0.0;
    double sum_sub_fro = 0.0;
};

int run_bench(const BenchArgs& args) {
    if (args.kinds.empty() || args.alphas.empty() || args.seeds.empty() || args.solvers.empty()) {
        std::cerr << "glasso: error: --kinds, --alphas, --seeds and --solvers must be non-empty\n";
        return kExitUsage;
    }
    std::filesystem::create_directories(args.out);
    const int m = args.samples > 0 ? args.samples : default_samples(args.sample_ratio, args.n);

    // keyed (kind, alpha, solver): map order is the aggregate row order
    std::map<std::tuple<std::string, double, std::string>, Cell> cells;

    for (const std::string& kind_name : args.kinds) {
        const glasso::GraphKind kind = parse_kind(kind_name);
        for (const std::uint64_t seed : args.seeds) {
            std::optional<glasso::GroundTruth> truth;
            std::optional<glasso::SymMatrix> s;
            try {
                truth = make_truth(kind, args.n, seed, args.density);
                glasso::SymMatrix cov = glasso::empirical_cov(glasso::sample_mvn(*truth, m, seed));
                s = args.standardize ? glasso::standardize(cov) : std::move(cov);
            } catch (const std::exception& e) {
                std::cerr << "generation failed (kind=" << kind_name << " seed=" << seed
                          << "): " << e.what() << "\n";
            }
            for (const double alpha : args.alphas) {
                for (const std::string& solver : args.solvers) {
                    Cell& cell = cells[{kind_name, alpha, solver}];
                    ++cell.runs;
                    if (!s) { // generation failed: every dependent run is a failure
                        ++cell.failures;
                        continue;
                    }
                    try {
                        const glasso::Problem prob(*s, alpha, truth->precision);
                        glasso::SolverConfig cfg;
                        cfg.max_iter = args.max_iter;
                        cfg.stop_rel = args.stop_rel;
                        const SolveOutput out = timed_solve(prob, cfg, solver, args.sequential);
                        const glasso::RunRecord rec = make_record(kind_name, args.n, m, alpha, seed,
                                                                  truth->shift, solver, cfg, out);
                        const std::string prefix =
                            (std::filesystem::path(args.out) /
                             (kind_name + "_n" + std::to_string(args.n) + "_a" +
                              glasso::format_double(alpha) + "_s" + std::to_string(seed) + "_" + solver))
                                .string();
                        write_artifacts(prefix, rec, out.result);
                        cell.sum_time += out.wall_seconds;
                        cell.sum_iters += out.result.iterations;
                        cell.sum_nnz += static_cast<double>(out.stats.nnz);
                        cell.sum_sub_fro += out.stats.sub_fro;
                    } catch (const std::exception& e) {
                        ++cell.failures;
                        std::cerr << "run failed (kind=" << kind_name << " alpha=" << alpha
                                  << " seed=" << seed << " solver=" << solver << "): " << e.what()
                                  << "\n";
                    }
                }
            }
        }
    }

    const std::string agg_path = (std::filesystem::path(args.out) / "aggregate.csv").string();
    std::string body =
        "kind,n,alpha,solver,runs,failures,mean_time_s,mean_iterations,mean_nnz,mean_subgrad_fro\n";
    for (const auto& [key, cell] : cells) {
        const auto& [kind_name, alpha, solver] = key;
        const int ok = cell.runs - cell.failures;
        const auto mean = [&](double sum) { return ok > 0 ? sum / ok : 0.0; };
        body += kind_name + "," + std::to_string(args.n) + "," + glasso::format_double(alpha) + "," +
                solver + "," + std::to_string(cell.runs) + "," + std::to_string(cell.failures) + "," +
                glasso::format_double(mean(cell.sum_time)) + "," +
                glasso::format_double(mean(cell.sum_iters)) + "," +
                glasso::format_double(mean(cell.sum_nnz)) + "," +
                glasso::format_double(mean(cell.sum_sub_fro)) + "\n";
    }
    std::ofstream agg(agg_path);
    if (!agg) throw glasso::IoError("cannot open " + agg_path + " for writing");
    agg << body;
    if (!agg) throw glasso::IoError("write failed: " + agg_path);
    std::cout << "wrote " << agg_path << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Graphical LASSO solver and benchmark harness"};
    app.require_subcommand(1);
    app.set_version_flag("--version", "glasso 1.0.0");

    const auto kind_check = CLI::IsMember({"chain", "random", "planar"});
    const auto solver_check = CLI::IsMember({"pista", "gista"});

    GenerateArgs gen;
    CLI::App* cmd_gen = app.add_subcommand("generate", "Generate a ground-truth problem instance");
    cmd_gen->add_option("--kind", gen.kind, "Graph family: chain, random, planar")
        ->required()
        ->check(kind_check);
    cmd_gen->add_option("--n", gen.n, "Dimension")->required()->check(CLI::PositiveNumber);
    cmd_gen->add_option("--seed", gen.seed, "RNG seed")->capture_default_str();
    cmd_gen->add_option("--density", gen.density, "Target off-diagonal density (random kind)")->capture_default_str()
        ->check(CLI::Range(1e-12, 0.999999));
    cmd_gen->add_option("--samples", gen.samples, "Sample count (0 = sample-ratio * n)")->capture_default_str()
        ->check(CLI::NonNegativeNumber);
    cmd_gen->add_option("--sample-ratio", gen.sample_ratio, "Samples as a fraction of n")->capture_default_str()
        ->check(CLI::PositiveNumber);
    cmd_gen->add_option("--out", gen.out, "Output file prefix")->required();

    SolveArgs solve;
    CLI::App* cmd_solve = app.add_subcommand("solve", "Solve one instance from a file");
    CLI::Option* cov_opt = cmd_solve->add_option("--cov", solve.cov, "Covariance matrix file");
    cmd_solve->add_option("--samples", solve.samples, "Sample CSV (one row per sample)")
        ->excludes(cov_opt);
    cmd_solve->add_option("--format", solve.format, "Covariance format: auto, csv, mm")->capture_default_str()
        ->check(CLI::IsMember({"auto", "csv", "mm"}));
    cmd_solve->add_option("--alpha", solve.alpha, "L1 penalty weight")
        ->required()
        ->check(CLI::PositiveNumber);
    cmd_solve->add_option("--solver", solve.solver, "pista or gista")->capture_default_str()->check(solver_check);
    cmd_solve->add_option("--max-iter", solve.max_iter, "Iteration cap")->capture_default_str()
        ->check(CLI::NonNegativeNumber);
    cmd_solve->add_option("--stop-rel", solve.stop_rel, "Relative stopping tolerance")->capture_default_str()
        ->check(CLI::PositiveNumber);
    cmd_solve->add_flag("--standardize", solve.standardize, "Rescale S to a correlation matrix");
    cmd_solve->add_flag("--sequential", solve.sequential,
                        "Deterministic artifacts: zero recorded wall-clock fields");
    cmd_solve->add_option("--out", solve.out, "Output file prefix")->required();

    BenchArgs bench;
    CLI::App* cmd_bench = app.add_subcommand("bench", "Seed-averaged solver comparison sweep");
    cmd_bench->add_option("--kinds", bench.kinds, "Graph families to run")
        ->required()
        ->delimiter(',')
        ->check(kind_check);
    cmd_bench->add_option("--n", bench.n, "Dimension")->required()->check(CLI::PositiveNumber);
    cmd_bench->add_option("--alphas", bench.alphas, "L1 penalty weights")
        ->required()
        ->delimiter(',')
        ->check(CLI::PositiveNumber);
    cmd_bench->add_option("--seeds", bench.seeds, "Seeds to average over")->capture_default_str()->delimiter(',');
    cmd_bench->add_option("--solvers", bench.solvers, "Solvers to compare")->capture_default_str()
        ->delimiter(',')
        ->check(solver_check);
    cmd_bench->add_option("--samples", bench.samples, "Sample count (0 = sample-ratio * n)")->capture_default_str()
        ->check(CLI::NonNegativeNumber);
    cmd_bench->add_option("--sample-ratio", bench.sample_ratio, "Samples as a fraction of n")->capture_default_str()
        ->check(CLI::PositiveNumber);
    cmd_bench->add_option("--density", bench.density, "Target density (random kind)")->capture_default_str()
        ->check(CLI::Range(1e-12, 0.999999));
    cmd_bench->add_option("--max-iter", bench.max_iter, "Iteration cap")->capture_default_str()
        ->check(CLI::NonNegativeNumber);
    cmd_bench->add_option("--stop-rel", bench.stop_rel, "Relative stopping tolerance")->capture_default_str()
        ->check(CLI::PositiveNumber);
    cmd_bench->add_flag("--standardize,!--no-standardize", bench.standardize,
                        "Rescale S to a correlation matrix (default on)");
    cmd_bench->add_flag("--sequential", bench.sequential,
                        "Deterministic artifacts: zero recorded wall-clock fields");
    cmd_bench->add_option("--out", bench.out, "Output directory")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }

    try {
        if (cmd_gen->parsed()) return run_generate(gen);
        if (cmd_solve->parsed()) return run_solve(solve);
        return run_bench(bench);
    } catch (const std::exception& e) {
        std::cerr << "glasso: error: " << e.what() << "\n";
        return classify(e);
    }
}
