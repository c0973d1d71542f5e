// Command-line driver: stream generation, engine runs, paired evaluation and
// standalone RBO.
//
// Exit codes: 0 success, 1 usage or configuration error, 2 data error.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "hotrank/hotrank.hpp"

namespace fs = std::filesystem;
using namespace hotrank;

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitData = 2;
constexpr const char* kOutDirEnv = "HOTRANK_OUT_DIR";

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Everything a run depends on; written next to its outputs.
struct RunManifest {
    std::string dataset;
    std::string stream;
    HotSetParams params;
    std::string policy = "approximate";
    std::size_t refresh_period = 0;
    ComputeConfig compute;
    RboConfig rbo;
    std::string out_dir;
    std::string baseline;
    std::uint64_t seed = 42;

    StrategyPolicy strategy_policy() const {
        StrategyPolicy p;
        if (policy == "exact") {
            p.mode = StrategyPolicy::Mode::AlwaysExact;
        } else if (policy == "approximate") {
            p.mode = StrategyPolicy::Mode::AlwaysApproximate;
        } else {
            p.mode = StrategyPolicy::Mode::Auto;
            if (refresh_period > 0) {
                p.exact_refresh_period = refresh_period;
            }
        }
        return p;
    }

    nlohmann::json to_json() const {
        return {
            {"dataset", dataset},
            {"stream", stream},
            {"r", params.r},
            {"n", params.n},
            {"delta", params.delta},
            {"delta_seeds_include_kr", params.delta_seeds_include_kr},
            {"policy", policy},
            {"refresh_period", refresh_period},
            {"beta", compute.beta},
            {"iterations", compute.iterations},
            {"rbo_p", rbo.p},
            {"depth_fraction", rbo.depth_fraction},
            {"full_depth_period", rbo.full_depth_period},
            {"baseline", baseline},
            {"seed", seed},
        };
    }
};

std::string resolve_out_dir(const std::string& flag) {
    if (!flag.empty()) {
        return flag;
    }
    if (const char* env = std::getenv(kOutDirEnv); env != nullptr && *env != '\0') {
        return env;
    }
    throw UsageError(std::string("no output directory: pass --out or set ") + kOutDirEnv);
}

std::ifstream open_in(const fs::path& p) {
    std::ifstream in(p);
    if (!in) {
        throw Error("cannot open " + p.string());
    }
    return in;
}

std::ofstream open_out(const fs::path& p) {
    std::ofstream out(p);
    if (!out) {
        throw Error("cannot write " + p.string());
    }
    return out;
}

DynamicGraph load_graph(const fs::path& p) {
    auto in = open_in(p);
    try {
        return parse_edge_list(in);
    } catch (const ParseError& e) {
        throw Error(p.string() + ": " + e.what());
    }
}

std::vector<StreamEvent> load_stream(const fs::path& p) {
    auto in = open_in(p);
    try {
        return read_stream(in);
    } catch (const ParseError& e) {
        throw Error(p.string() + ": " + e.what());
    }
}

fs::path rank_path(const fs::path& run_dir, std::size_t query_index) {
    char name[32];
    std::snprintf(name, sizeof name, "query_%04zu.txt", query_index);
    return run_dir / "ranks" / name;
}

RankVector load_ranks(const fs::path& p) {
    if (!fs::exists(p)) {
        throw Error("missing rank file " + p.string());
    }
    auto in = open_in(p);
    return read_rank_file(in);
}

std::vector<ReportRow> load_query_csv(const fs::path& run_dir) {
    auto in = open_in(run_dir / "queries.csv");
    return read_query_csv(in);
}

/// Pairs two run directories query by query, reading rankings from disk.
std::vector<EvaluationRow> evaluate_dirs(const fs::path& exact_dir,
                                         const std::vector<ReportRow>& exact_rows,
                                         const fs::path& approx_dir,
                                         const std::vector<ReportRow>& approx_rows,
                                         const RboConfig& cfg) {
    cfg.validate();
    if (exact_rows.size() != approx_rows.size()) {
        throw Error("query count mismatch: " + std::to_string(exact_rows.size()) + " exact vs " +
                    std::to_string(approx_rows.size()) + " approximate");
    }
    std::vector<EvaluationRow> rows;
    for (std::size_t i = 0; i < exact_rows.size(); ++i) {
        const auto& e = exact_rows[i].record;
        const auto& a = approx_rows[i].record;
        const auto exact_rank = rank_descending(load_ranks(rank_path(exact_dir, e.query_index)));
        const auto approx_rank = rank_descending(load_ranks(rank_path(approx_dir, a.query_index)));
        rows.push_back(evaluate_query(a, approx_rank, e, exact_rank, cfg));
    }
    return rows;
}

void add_rbo_options(CLI::App* cmd, RboConfig& rbo) {
    cmd->add_option("--rbo-p", rbo.p, "RBO persistence in (0,1)")->capture_default_str();
    cmd->add_option("--depth-fraction", rbo.depth_fraction,
                    "Fraction of vertices compared per query")
        ->capture_default_str();
    cmd->add_option("--full-depth-period", rbo.full_depth_period,
                    "Compare all vertices every N-th query")
        ->capture_default_str();
}

int cmd_generate_stream(const std::string& dataset, const StreamSpec& spec,
                        const std::string& out_flag) {
    const fs::path out_dir = resolve_out_dir(out_flag);
    const auto full = load_graph(dataset);
    const auto gen = generate_stream(full, spec);
    fs::create_directories(out_dir);
    {
        auto out = open_out(out_dir / "initial.txt");
        write_edge_list(out, gen.initial);
    }
    {
        auto out = open_out(out_dir / "stream.txt");
        write_stream(out, gen.events);
    }
    std::cout << "withheld edges: " << spec.withheld() << '\n'
              << "initial graph: " << gen.initial.vertex_count() << " vertices, "
              << gen.initial.edge_count() << " edges\n"
              << "stream: " << (out_dir / "stream.txt").string() << '\n';
    return 0;
}

int cmd_run(RunManifest m) {
    m.out_dir = resolve_out_dir(m.out_dir);
    const fs::path out_dir = m.out_dir;
    m.params.validate();
    m.compute.validate();
    if (!m.baseline.empty()) {
        m.rbo.validate();
    }

    auto initial = load_graph(m.dataset);
    const auto events = load_stream(m.stream);
    fs::create_directories(out_dir / "ranks");

    std::vector<ReportRow> rows;
    const auto result = run_stream(
        std::move(initial), events, m.params, m.strategy_policy(), m.compute,
        [&](const QueryRecord& rec, const RankVector& ranks) {
            auto out = open_out(rank_path(out_dir, rec.query_index));
            write_rank_file(out, ranks);
            rows.push_back({rec, std::nullopt, std::nullopt, edge_fraction_of(rec)});
        });
    {
        auto out = open_out(out_dir / "final_ranks.txt");
        write_rank_file(out, result.final_ranks);
    }

    if (!m.baseline.empty()) {
        const auto base_rows = load_query_csv(m.baseline);
        const auto eval = evaluate_dirs(m.baseline, base_rows, out_dir, rows, m.rbo);
        for (std::size_t i = 0; i < rows.size(); ++i) {
            rows[i].rbo = eval[i].rbo;
            rows[i].speedup = eval[i].speedup;
        }
    }
    {
        auto out = open_out(out_dir / "queries.csv");
        write_query_csv(out, rows);
    }
    {
        auto out = open_out(out_dir / "manifest.json");
        out << m.to_json().dump(2) << '\n';
    }
    std::cout << "queries answered: " << rows.size() << '\n'
              << "report: " << (out_dir / "queries.csv").string() << '\n';
    return 0;
}

int cmd_compare(const std::string& exact_dir, const std::string& approx_dir, const RboConfig& cfg,
                const std::string& out_file) {
    const auto exact_rows = load_query_csv(exact_dir);
    const auto approx_rows = load_query_csv(approx_dir);
    const auto rows = evaluate_dirs(exact_dir, exact_rows, approx_dir, approx_rows, cfg);
    const fs::path out_path =
        out_file.empty() ? fs::path(approx_dir) / "evaluation.csv" : fs::path(out_file);
    {
        auto out = open_out(out_path);
        write_evaluation_csv(out, rows);
    }
    double rbo_sum = 0.0;
    double speedup_sum = 0.0;
    for (const auto& r : rows) {
        rbo_sum += r.rbo;
        speedup_sum += r.speedup;
    }
    const double n = rows.empty() ? 1.0 : static_cast<double>(rows.size());
    std::printf("queries: %zu\nmean rbo: %.6f\nmean speedup: %.6f\nevaluation: %s\n", rows.size(),
                rbo_sum / n, speedup_sum / n, out_path.string().c_str());
    return 0;
}

int cmd_rbo(const std::string& file_a, const std::string& file_b, double p,
            std::optional<std::size_t> depth) {
    const auto a = rank_descending(load_ranks(file_a));
    const auto b = rank_descending(load_ranks(file_b));
    const std::size_t k = depth.value_or(std::min(a.size(), b.size()));
    std::printf("%.6f\n", rbo_ext(a, b, p, k));
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Approximate PageRank over edge streams with hot-vertex summarization"};
    app.require_subcommand(1);

    // generate-stream
    std::string gen_dataset;
    std::string gen_out;
    StreamSpec spec;
    auto* gen = app.add_subcommand("generate-stream", "Withhold edges from a dataset and write "
                                                      "an initial graph plus an update stream");
    gen->add_option("--dataset", gen_dataset, "Edge list file")->required()->check(CLI::ExistingFile);
    gen->add_option("--chunk-size", spec.chunk_size, "Edges added before each query")
        ->capture_default_str();
    gen->add_option("--removal-fraction", spec.removal_fraction,
                    "Removals per chunk as a fraction of chunk size")
        ->capture_default_str();
    gen->add_option("--queries", spec.query_count, "Number of queries")->capture_default_str();
    gen->add_flag("--shuffle", spec.shuffle, "Permute the additions once before chunking");
    gen->add_option("--seed", spec.rng_seed, "mt19937_64 seed")->capture_default_str();
    gen->add_option("--out", gen_out, std::string("Output directory (default: $") + kOutDirEnv + ")");

    // run
    RunManifest manifest;
    auto* run = app.add_subcommand("run", "Replay a stream and answer every query");
    run->add_option("--dataset", manifest.dataset, "Initial graph edge list")
        ->required()
        ->check(CLI::ExistingFile);
    run->add_option("--stream", manifest.stream, "Stream file")->required()->check(CLI::ExistingFile);
    run->add_option("--policy", manifest.policy, "exact | approximate | auto")
        ->check(CLI::IsMember({"exact", "approximate", "auto"}))
        ->capture_default_str();
    run->add_option("--refresh-period", manifest.refresh_period,
                    "auto policy: exact on every N-th query (0 = never)")
        ->capture_default_str();
    run->add_option("--r", manifest.params.r, "Update ratio threshold")->capture_default_str();
    run->add_option("--n", manifest.params.n, "Neighbourhood hops")->capture_default_str();
    run->add_option("--delta", manifest.params.delta, "Score-dilution bound")->capture_default_str();
    run->add_flag("--delta-seeds-kr", manifest.params.delta_seeds_include_kr,
                  "Seed the delta expansion from K_r as well as K_n");
    run->add_option("--beta", manifest.compute.beta, "Damping factor")->capture_default_str();
    run->add_option("--iterations", manifest.compute.iterations, "Iterations per query")
        ->capture_default_str();
    run->add_option("--baseline", manifest.baseline,
                    "Exact run directory; fills the rbo and speedup columns")
        ->check(CLI::ExistingDirectory);
    add_rbo_options(run, manifest.rbo);
    run->add_option("--seed", manifest.seed, "Recorded in the manifest")->capture_default_str();
    run->add_option("--out", manifest.out_dir,
                    std::string("Output directory (default: $") + kOutDirEnv + ")");

    // compare
    std::string cmp_exact;
    std::string cmp_approx;
    std::string cmp_out;
    RboConfig cmp_rbo;
    auto* cmp = app.add_subcommand("compare", "Evaluate an approximate run against an exact run");
    cmp->add_option("--exact", cmp_exact, "Exact run directory")
        ->required()
        ->check(CLI::ExistingDirectory);
    cmp->add_option("--approx", cmp_approx, "Approximate run directory")
        ->required()
        ->check(CLI::ExistingDirectory);
    add_rbo_options(cmp, cmp_rbo);
    cmp->add_option("--out", cmp_out, "Evaluation CSV (default: <approx>/evaluation.csv)");

    // rbo
    std::string rbo_a;
    std::string rbo_b;
    double rbo_p = 0.98;
    std::optional<std::size_t> rbo_depth_opt;
    auto* rbo = app.add_subcommand("rbo", "RBO between two rank files");
    rbo->add_option("ranks_a", rbo_a, "Rank file")->required()->check(CLI::ExistingFile);
    rbo->add_option("ranks_b", rbo_b, "Rank file")->required()->check(CLI::ExistingFile);
    rbo->add_option("--p", rbo_p, "Persistence in (0,1)")->capture_default_str();
    rbo->add_option("--depth", rbo_depth_opt, "Evaluation depth (default: shorter length)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : kExitUsage;
    }

    try {
        if (*gen) {
            return cmd_generate_stream(gen_dataset, spec, gen_out);
        }
        if (*run) {
            return cmd_run(manifest);
        }
        if (*cmp) {
            return cmd_compare(cmp_exact, cmp_approx, cmp_rbo, cmp_out);
        }
        if (*rbo) {
            return cmd_rbo(rbo_a, rbo_b, rbo_p, rbo_depth_opt);
        }
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitData;
    } catch (const fs::filesystem_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitData;
    }
    return kExitUsage;
}
