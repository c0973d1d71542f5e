// Acceptance suite. Prints one PASS / FAIL / SKIP line per criterion and exits
// nonzero if any criterion fails.
//
// AC8 needs the dblp-2010 edge list on disk; point HOTRANK_DBLP_PATH at it.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "hotrank/hotrank.hpp"
#include "instances.hpp"
#include "oracles.hpp"

using namespace hotrank;

namespace {

enum class Verdict { Pass, Fail, Skip };

struct Outcome {
    Verdict verdict = Verdict::Pass;
    std::string detail;
};

// Collects the first few mismatches of a criterion.
class Check {
public:
    void expect(bool ok, const std::string& what) {
        if (ok) {
            return;
        }
        ++failures_;
        if (failures_ <= 3) {
            notes_ += (notes_.empty() ? "" : "; ") + what;
        }
    }

    Outcome finish(const std::string& summary) const {
        if (failures_ == 0) {
            return {Verdict::Pass, summary};
        }
        return {Verdict::Fail, std::to_string(failures_) + " mismatches: " + notes_};
    }

private:
    std::size_t failures_ = 0;
    std::string notes_;
};

DynamicGraph graph_of(const oracle::EdgeList& edges) {
    DynamicGraph g;
    for (const auto& e : edges) {
        g.add_edge(e.source, e.target);
    }
    return g;
}

std::string fmt(const char* f, double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, f, x);
    return buf;
}

Outcome ac1_all_hot_equivalence() {
    const auto t0 = std::chrono::steady_clock::now();
    std::mt19937_64 rng(1001);
    Check check;
    const int graphs = 25;
    for (int i = 0; i < graphs; ++i) {
        const std::size_t n = 2 + rng() % 499;
        const std::size_t m = rng() % (6 * n);
        const auto g = graph_of(oracle::random_edges(rng, n, m));
        auto warm = RankVector::uniform(g, 1.0);
        std::uniform_real_distribution<double> start(0.1, 3.0);
        for (double& s : warm.scores) {
            s = start(rng);
        }
        const ComputeConfig cfg{};
        const auto s = build_summary(g, g.sorted_vertices(), warm);
        const auto a = pagerank_summarized(s, warm, cfg);
        const auto b = pagerank_exact(g, cfg, warm);
        check.expect(a.ids == b.ids && a.scores == b.scores, "graph " + std::to_string(i));
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    check.expect(secs < 10.0, "took " + fmt("%.1f s", secs));
    return check.finish(std::to_string(graphs) + " graphs bitwise equal in " + fmt("%.2f s", secs));
}

Outcome ac2_hot_set_tiers() {
    std::mt19937_64 rng(2002);
    Check check;
    const int instances = 60;
    std::size_t hot_total = 0;
    for (int i = 0; i < instances; ++i) {
        const auto inst = testing::random_instance(rng, 200);
        const auto edges = inst.edges();
        const auto degrees = inst.degrees();
        const auto hs = select_hot_set(inst.graph, inst.prev, inst.ranks, inst.params, inst.d_bar);
        const auto kr = oracle::k_r(inst.prev_degrees, degrees, inst.params.r);
        const auto kn = oracle::k_n(edges, kr, inst.params.n);
        const auto kd = oracle::k_delta(edges, kr, kn, inst.ranks.as_map(), degrees, inst.d_bar,
                                        inst.params.delta, inst.params.delta_seeds_include_kr);
        using Ids = std::vector<VertexId>;
        const std::string tag = "instance " + std::to_string(i);
        check.expect(hs.k_r == Ids(kr.begin(), kr.end()), tag + " K_r");
        check.expect(hs.k_n == Ids(kn.begin(), kn.end()), tag + " K_n");
        check.expect(hs.k_delta == Ids(kd.begin(), kd.end()), tag + " K_delta");
        hot_total += hs.all.size();
    }
    return check.finish(std::to_string(instances) + " instances, " + std::to_string(hot_total) +
                        " hot vertices in total");
}

Outcome ac3_summary_builder() {
    std::mt19937_64 rng(2002); // same instances as AC2
    Check check;
    const int instances = 60;
    for (int i = 0; i < instances; ++i) {
        const auto inst = testing::random_instance(rng, 200);
        const auto hs = select_hot_set(inst.graph, inst.prev, inst.ranks, inst.params, inst.d_bar);
        const auto s = build_summary(inst.graph, hs.all, inst.ranks);
        const auto o = oracle::classify_edges(inst.edges(), inst.vertices(),
                                              oracle::IdSet(hs.all.begin(), hs.all.end()),
                                              inst.ranks.as_map());
        const std::string tag = "instance " + std::to_string(i);
        const auto inflow = s.boundary_inflow_map();
        bool inflow_ok = inflow.size() == o.boundary_inflow.size();
        double sum = 0.0;
        for (const auto& [z, c] : inflow) {
            sum += c;
            const auto it = o.boundary_inflow.find(z);
            inflow_ok = inflow_ok && it != o.boundary_inflow.end() && std::abs(it->second - c) <= 1e-12;
        }
        check.expect(inflow_ok, tag + " boundary inflow");
        check.expect(std::abs(s.b_s - o.b_s) <= 1e-12, tag + " b_s");
        check.expect(std::abs(s.b_s - sum) <= 1e-12, tag + " b_s vs inflow sum");
        check.expect(summary_edge_count(s) == o.intra.size() + o.boundary_pairs,
                     tag + " edge count");
    }
    return check.finish(std::to_string(instances) + " instances within 1e-12");
}

Outcome ac4_pagerank() {
    Check check;
    std::mt19937_64 rng(4004);
    double worst = 0.0;
    for (int i = 0; i < 10; ++i) {
        const auto edges = oracle::random_edges(rng, 100, 150 + 50 * i);
        const auto g = graph_of(edges);
        const auto got = pagerank_exact(g, {.beta = 0.85, .iterations = 30});
        const auto want = oracle::dense_pagerank(edges, oracle::vertices_of(edges), 0.85, 30);
        for (std::size_t k = 0; k < got.size(); ++k) {
            worst = std::max(worst, std::abs(got.scores[k] - want.at(got.ids[k])));
        }
    }
    check.expect(worst <= 1e-10, "dense oracle deviation " + fmt("%.3g", worst));

    DynamicGraph cycle;
    cycle.add_edge(1, 2);
    cycle.add_edge(2, 1);
    const auto c = pagerank_exact(cycle, {});
    check.expect(c.scores == std::vector<double>{1.0, 1.0}, "2-cycle");

    for (int i = 0; i < 5; ++i) {
        auto edges = oracle::random_edges(rng, 120, 400);
        std::set<Edge> all(edges.begin(), edges.end());
        for (VertexId v = 0; v < 120; ++v) {
            all.insert({v, (v + 1) % 120});
        }
        const auto g = graph_of({all.begin(), all.end()});
        const double n = static_cast<double>(g.vertex_count());
        auto rv = RankVector::uniform(g, 1.0);
        for (int it = 0; it < 30; ++it) {
            rv = pagerank_exact(g, {.beta = 0.85, .iterations = 1}, rv);
            const double total = std::accumulate(rv.scores.begin(), rv.scores.end(), 0.0);
            check.expect(std::abs(total - n) <= 1e-9 * n, "mass drift at iteration " +
                                                               std::to_string(it));
        }
    }
    return check.finish("max deviation from dense oracle " + fmt("%.2g", worst) +
                        "; 2-cycle (1,1); mass conserved");
}

Outcome ac5_rbo() {
    Check check;
    std::vector<VertexId> a(100);
    std::iota(a.begin(), a.end(), 0);
    std::vector<VertexId> disjoint(100);
    std::iota(disjoint.begin(), disjoint.end(), 1000);
    for (double p : {0.9, 0.98}) {
        check.expect(rbo_ext(a, a, p, 100) == 1.0, "identity");
        check.expect(rbo_ext(a, disjoint, p, 100) == 0.0, "disjoint");
    }

    std::mt19937_64 rng(5005);
    double worst = 0.0;
    for (int i = 0; i < 1000; ++i) {
        const std::size_t n = 1 + rng() % 200;
        std::vector<VertexId> x(n);
        std::iota(x.begin(), x.end(), 0);
        auto y = x;
        std::shuffle(x.begin(), x.end(), rng);
        if (i % 2 == 0) {
            std::shuffle(y.begin(), y.end(), rng);
        } else {
            y = x;
            for (std::size_t s = 0; s < n / 8 + 1; ++s) {
                std::swap(y[rng() % n], y[rng() % n]);
            }
        }
        const double p = i % 2 == 0 ? 0.9 : 0.98;
        const double got = rbo_ext(x, y, p, n);
        worst = std::max(worst, std::abs(got - oracle::rbo_terms(x, y, p, n)));
        check.expect(got == rbo_ext(y, x, p, n), "asymmetric pair " + std::to_string(i));
    }
    check.expect(worst <= 1e-12, "term oracle deviation " + fmt("%.3g", worst));
    return check.finish("1000 pairs, max deviation " + fmt("%.2g", worst) + ", symmetric");
}

// Synthetic dataset large enough for 50 chunks of 800 edges.
DynamicGraph benchmark_dataset() {
    std::mt19937_64 rng(6006);
    return graph_of(oracle::random_edges(rng, 4000, 64000));
}

const StreamSpec kBenchmarkStream{.chunk_size = 800, .removal_fraction = 0.2, .query_count = 50,
                              .shuffle = true, .rng_seed = 42};

Outcome ac6_engine_protocol(const GeneratedStream& gen) {
    Check check;
    const ComputeConfig cfg{};
    const auto res = run_stream(gen.initial, gen.events, {}, {StrategyPolicy::Mode::AlwaysExact}, cfg);
    check.expect(res.records.size() == 50, "query count");

    std::set<Edge> edges;
    for (const auto& e : gen.initial.sorted_edges()) {
        edges.insert(e);
    }
    std::set<VertexId> vertices;
    for (VertexId v : gen.initial.sorted_vertices()) {
        vertices.insert(v);
    }
    std::vector<Edge> adds;
    std::vector<Edge> removes;
    std::size_t q = 0;
    for (const auto& ev : gen.events) {
        if (ev.kind == EventKind::Add) {
            adds.push_back(ev.edge);
        } else if (ev.kind == EventKind::Remove) {
            removes.push_back(ev.edge);
        } else {
            for (const auto& e : adds) {
                edges.insert(e);
                vertices.insert(e.source);
                vertices.insert(e.target);
            }
            for (const auto& e : removes) {
                edges.erase(e);
            }
            adds.clear();
            removes.clear();
            DynamicGraph fresh;
            for (VertexId v : vertices) {
                fresh.ensure_vertex(v);
            }
            for (const auto& e : edges) {
                fresh.add_edge(e.source, e.target);
            }
            check.expect(q < res.per_query.size() &&
                             res.per_query[q].as_map() == pagerank_exact(fresh, cfg).as_map(),
                         "query " + std::to_string(q + 1) + " differs from recomputation");
            ++q;
        }
    }

    // Repeat-last-answer fires exactly on queries with an empty buffer.
    std::vector<StreamEvent> gapped;
    std::vector<bool> expect_repeat;
    bool pending = false;
    std::size_t qi = 0;
    for (const auto& ev : gen.events) {
        gapped.push_back(ev);
        if (ev.kind != EventKind::Query) {
            pending = true;
            continue;
        }
        expect_repeat.push_back(!pending);
        pending = false;
        if (++qi % 7 == 0) {
            gapped.push_back(StreamEvent::query());
            expect_repeat.push_back(true);
        }
    }
    for (auto mode : {StrategyPolicy::Mode::AlwaysExact, StrategyPolicy::Mode::AlwaysApproximate}) {
        const auto r = run_stream(gen.initial, gapped, {}, {mode}, cfg);
        for (std::size_t i = 0; i < r.records.size(); ++i) {
            const bool repeated = r.records[i].strategy == Strategy::RepeatLastAnswer;
            check.expect(repeated == expect_repeat[i], "strategy at query " + std::to_string(i + 1));
            if (repeated && i > 0) {
                check.expect(r.per_query[i] == r.per_query[i - 1], "repeat changed the answer");
            }
        }
    }
    return check.finish("50 exact queries bitwise equal to recomputation; repeats on empty buffers only");
}

Outcome ac7_edge_savings(const GeneratedStream& gen) {
    Check check;
    const HotSetParams params{.r = 0.2, .n = 0, .delta = 0.5};
    Engine engine(gen.initial, params, {StrategyPolicy::Mode::AlwaysApproximate}, {});
    engine.start();
    std::vector<ReportRow> rows;
    std::vector<std::size_t> expected_edges;
    std::size_t partial = 0;
    for (const auto& ev : gen.events) {
        if (ev.kind != EventKind::Query) {
            engine.register_event(ev);
            continue;
        }
        // Reproduce the hot set on a copy, then count summary edges by classification.
        DynamicGraph g = engine.graph();
        UpdateBuffer buf = engine.buffer();
        apply_updates(g, buf);
        RankVector ranks = engine.last_result();
        ranks.extend_to(g, 1.0);
        const auto hs = select_hot_set(g, engine.snapshot(), ranks, params, g.average_degree());
        const auto o = oracle::classify_edges(g.sorted_edges(), oracle::vertices_of(g.sorted_edges()),
                                              oracle::IdSet(hs.all.begin(), hs.all.end()),
                                              ranks.as_map());
        expected_edges.push_back(o.intra.size() + o.boundary_pairs);

        const auto rec = engine.answer_query();
        rows.push_back({rec, std::nullopt, std::nullopt, edge_fraction_of(rec)});
        if (rec.hot_count < rec.total_vertices) {
            ++partial;
            check.expect(rec.summary_edges < rec.total_edges,
                         "query " + std::to_string(rec.query_index) + " summary not smaller");
        }
    }

    std::stringstream csv;
    write_query_csv(csv, rows);
    const auto back = read_query_csv(csv);
    double mean_fraction = 0.0;
    for (std::size_t i = 0; i < back.size(); ++i) {
        const auto& r = back[i];
        const double want = static_cast<double>(expected_edges[i]) /
                            static_cast<double>(r.record.total_edges);
        check.expect(r.record.summary_edges == expected_edges[i], "summary edge count");
        check.expect(r.edge_fraction == want, "edge_fraction column at query " +
                                                  std::to_string(r.record.query_index));
        mean_fraction += r.edge_fraction;
    }
    mean_fraction /= static_cast<double>(std::max<std::size_t>(back.size(), 1));
    check.expect(partial > 0, "no query with K != V");
    return check.finish(std::to_string(partial) + " partial queries, mean edge fraction " +
                        fmt("%.3f", mean_fraction));
}

Outcome ac8_dblp() {
    const char* path = std::getenv("HOTRANK_DBLP_PATH");
    if (path == nullptr || *path == '\0') {
        return {Verdict::Skip, "set HOTRANK_DBLP_PATH to a local dblp-2010 edge list"};
    }
    std::ifstream in(path);
    if (!in) {
        return {Verdict::Fail, std::string("cannot open ") + path};
    }
    const auto full = parse_edge_list(in);
    const auto gen = generate_stream(full, kBenchmarkStream);
    const HotSetParams params{.r = 0.2, .n = 1, .delta = 0.5};
    const ComputeConfig cfg{};
    const auto exact = run_stream(gen.initial, gen.events, params,
                                  {StrategyPolicy::Mode::AlwaysExact}, cfg);
    const auto approx = run_stream(gen.initial, gen.events, params,
                                   {StrategyPolicy::Mode::AlwaysApproximate}, cfg);
    const auto rows = evaluate_run(approx.records, approx.per_query, exact.records,
                                   exact.per_query, RboConfig{});
    double rbo = 0.0;
    double speedup = 0.0;
    for (const auto& r : rows) {
        rbo += r.rbo;
        speedup += r.speedup;
    }
    rbo /= static_cast<double>(rows.size());
    speedup /= static_cast<double>(rows.size());
    const std::string detail = std::to_string(full.vertex_count()) + " vertices / " +
                               std::to_string(full.edge_count()) + " edges, mean rbo " +
                               fmt("%.4f", rbo) + ", mean speedup " + fmt("%.3f", speedup);
    const bool ok = rows.size() == 50 && rbo >= 0.85 && speedup >= 1.2;
    return {ok ? Verdict::Pass : Verdict::Fail, detail};
}

} // namespace

int main() {
    const char* names[] = {"all-hot equivalence",     "hot-set tiers vs oracles",
                           "summary builder vs oracle", "pagerank correctness",
                           "rbo correctness",         "engine protocol",
                           "edge savings",            "dblp-2010 reproduction"};
    int failed = 0;
    int id = 0;
    auto report = [&](const std::function<Outcome()>& fn) {
        ++id;
        Outcome o;
        try {
            o = fn();
        } catch (const std::exception& e) {
            o = {Verdict::Fail, std::string("exception: ") + e.what()};
        }
        const char* tag = o.verdict == Verdict::Pass ? "PASS" : o.verdict == Verdict::Fail ? "FAIL" : "SKIP";
        failed += o.verdict == Verdict::Fail;
        std::printf("AC%d %s  %s: %s\n", id, tag, names[id - 1], o.detail.c_str());
        std::fflush(stdout);
    };

    report(ac1_all_hot_equivalence);
    report(ac2_hot_set_tiers);
    report(ac3_summary_builder);
    report(ac4_pagerank);
    report(ac5_rbo);
    const auto gen = generate_stream(benchmark_dataset(), kBenchmarkStream);
    report([&] { return ac6_engine_protocol(gen); });
    report([&] { return ac7_edge_savings(gen); });
    report(ac8_dblp);
    return failed == 0 ? 0 : 1;
}
