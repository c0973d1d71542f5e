#pragma once

#include <chrono>
#include <cstddef>
#include <functional>
#include <optional>
#include <set>
#include <string_view>
#include <utility>
#include <vector>

#include "hotrank/graph.hpp"
#include "hotrank/hotset.hpp"
#include "hotrank/pagerank.hpp"
#include "hotrank/rank.hpp"
#include "hotrank/stream.hpp"
#include "hotrank/summary.hpp"
#include "hotrank/types.hpp"

namespace hotrank {

/// Edge changes registered since the last query. The graph is untouched until
/// apply_updates runs.
struct UpdateBuffer {
    std::vector<Edge> pending_adds;
    std::vector<Edge> pending_removes;
    std::size_t add_count = 0;
    std::size_t remove_count = 0;
    std::set<VertexId> touched_vertices;

    bool empty() const noexcept { return add_count == 0 && remove_count == 0; }

    void clear() {
        pending_adds.clear();
        pending_removes.clear();
        add_count = 0;
        remove_count = 0;
        touched_vertices.clear();
    }
};

inline void register_add(UpdateBuffer& buf, VertexId u, VertexId v) {
    buf.pending_adds.push_back({u, v});
    ++buf.add_count;
    buf.touched_vertices.insert(u);
    buf.touched_vertices.insert(v);
}

inline void register_remove(UpdateBuffer& buf, VertexId u, VertexId v) {
    buf.pending_removes.push_back({u, v});
    ++buf.remove_count;
    buf.touched_vertices.insert(u);
    buf.touched_vertices.insert(v);
}

struct AppliedUpdates {
    std::size_t adds_applied = 0;
    std::size_t adds_ignored = 0;    // edge already present
    std::size_t removes_applied = 0;
    std::size_t removes_ignored = 0; // edge absent

    friend bool operator==(const AppliedUpdates&, const AppliedUpdates&) = default;
};

/// Applies all additions in order, then all removals in order, and clears the buffer.
inline AppliedUpdates apply_updates(DynamicGraph& g, UpdateBuffer& buf) {
    AppliedUpdates a;
    for (const Edge& e : buf.pending_adds) {
        ++(g.add_edge(e.source, e.target) ? a.adds_applied : a.adds_ignored);
    }
    for (const Edge& e : buf.pending_removes) {
        ++(g.remove_edge(e.source, e.target) ? a.removes_applied : a.removes_ignored);
    }
    buf.clear();
    return a;
}

enum class Strategy { RepeatLastAnswer, ComputeApproximate, ComputeExact };

inline std::string_view to_string(Strategy s) {
    switch (s) {
    case Strategy::RepeatLastAnswer:
        return "repeat";
    case Strategy::ComputeApproximate:
        return "approximate";
    case Strategy::ComputeExact:
        return "exact";
    }
    return "?";
}

inline std::optional<Strategy> strategy_from_string(std::string_view s) {
    if (s == "repeat") return Strategy::RepeatLastAnswer;
    if (s == "approximate") return Strategy::ComputeApproximate;
    if (s == "exact") return Strategy::ComputeExact;
    return std::nullopt;
}

struct StrategyPolicy {
    enum class Mode { AlwaysExact, AlwaysApproximate, Auto };

    Mode mode = Mode::AlwaysApproximate;
    // Auto only: exact on every query index divisible by this. Without it, Auto
    // is approximate after the initial exact run.
    std::optional<std::size_t> exact_refresh_period;
};

/// Query 0 is the initial complete run; stream queries are numbered from 1.
inline Strategy decide_strategy(const StrategyPolicy& policy, bool has_pending_updates,
                                std::size_t query_index) {
    if (!has_pending_updates) {
        return Strategy::RepeatLastAnswer;
    }
    switch (policy.mode) {
    case StrategyPolicy::Mode::AlwaysExact:
        return Strategy::ComputeExact;
    case StrategyPolicy::Mode::AlwaysApproximate:
        return Strategy::ComputeApproximate;
    case StrategyPolicy::Mode::Auto:
        if (query_index == 0) {
            return Strategy::ComputeExact;
        }
        if (policy.exact_refresh_period && *policy.exact_refresh_period > 0 &&
            query_index % *policy.exact_refresh_period == 0) {
            return Strategy::ComputeExact;
        }
        return Strategy::ComputeApproximate;
    }
    return Strategy::ComputeExact;
}

using Duration = std::chrono::nanoseconds;

/// Per-query statistics. The apply, summary and compute phases are
/// single-process analogues of ingestion, setup/distribution and computation.
struct QueryRecord {
    std::size_t query_index = 0;
    Strategy strategy = Strategy::RepeatLastAnswer;
    Duration elapsed_total{0};
    Duration elapsed_apply{0};
    Duration elapsed_summary{0};
    Duration elapsed_compute{0};
    std::size_t hot_count = 0;
    std::size_t summary_edges = 0;
    std::size_t total_edges = 0;
    std::size_t total_vertices = 0;
    AppliedUpdates applied;
};

class Engine {
public:
    Engine(DynamicGraph initial, HotSetParams params, StrategyPolicy policy, ComputeConfig cfg)
        : graph_(std::move(initial)), params_(params), policy_(policy), cfg_(cfg) {
        params_.validate();
        cfg_.validate();
    }

    /// Complete PageRank over the initial graph; opens measurement point 0.
    void start() {
        last_ = pagerank_exact(graph_, cfg_);
        last_.measured_at = 0;
        snapshot_ = snapshot_degrees(graph_, 0);
        query_index_ = 0;
        started_ = true;
    }

    void register_event(const StreamEvent& ev) {
        switch (ev.kind) {
        case EventKind::Add:
            register_add(buffer_, ev.edge.source, ev.edge.target);
            break;
        case EventKind::Remove:
            register_remove(buffer_, ev.edge.source, ev.edge.target);
            break;
        case EventKind::Query:
            break;
        }
    }

    QueryRecord answer_query() {
        using Clock = std::chrono::steady_clock;
        if (!started_) {
            start();
        }
        const auto t0 = Clock::now();
        QueryRecord rec;
        rec.query_index = ++query_index_;
        rec.strategy = decide_strategy(policy_, !buffer_.empty(), rec.query_index);

        if (rec.strategy != Strategy::RepeatLastAnswer) {
            const auto ta = Clock::now();
            rec.applied = apply_updates(graph_, buffer_);
            rec.elapsed_apply = Clock::now() - ta;

            if (rec.strategy == Strategy::ComputeExact) {
                const auto tc = Clock::now();
                last_ = pagerank_exact(graph_, cfg_);
                rec.elapsed_compute = Clock::now() - tc;
                rec.hot_count = graph_.vertex_count();
                rec.summary_edges = graph_.edge_count();
            } else {
                const auto ts = Clock::now();
                RankVector ranks = std::move(last_);
                // Vertices seen for the first time have no score yet; they start
                // where the initial run starts every vertex.
                ranks.extend_to(graph_, 1.0);
                const HotSet hot =
                    select_hot_set(graph_, snapshot_, ranks, params_, graph_.average_degree());
                const SummaryGraph summary = build_summary(graph_, hot.all, ranks);
                rec.elapsed_summary = Clock::now() - ts;

                const auto tc = Clock::now();
                last_ = pagerank_summarized(summary, ranks, cfg_);
                rec.elapsed_compute = Clock::now() - tc;
                rec.hot_count = hot.all.size();
                rec.summary_edges = summary_edge_count(summary);
            }
            last_.measured_at = rec.query_index;
            snapshot_ = snapshot_degrees(graph_, rec.query_index);
        }

        rec.total_edges = graph_.edge_count();
        rec.total_vertices = graph_.vertex_count();
        rec.elapsed_total = Clock::now() - t0;
        return rec;
    }

    const DynamicGraph& graph() const noexcept { return graph_; }
    const RankVector& last_result() const noexcept { return last_; }
    const UpdateBuffer& buffer() const noexcept { return buffer_; }
    const DegreeSnapshot& snapshot() const noexcept { return snapshot_; }

private:
    DynamicGraph graph_;
    HotSetParams params_;
    StrategyPolicy policy_;
    ComputeConfig cfg_;
    UpdateBuffer buffer_;
    RankVector last_;
    DegreeSnapshot snapshot_;
    std::size_t query_index_ = 0;
    bool started_ = false;
};

struct RunResult {
    RankVector initial;
    RankVector final_ranks;
    std::vector<QueryRecord> records;
    std::vector<RankVector> per_query; // empty when an observer consumed the results
};

using QueryObserver = std::function<void(const QueryRecord&, const RankVector&)>;

/// Replays `events` on top of `initial`. Per-query results go to `observer`
/// instead of being collected when one is given.
inline RunResult run_stream(DynamicGraph initial, const std::vector<StreamEvent>& events,
                            const HotSetParams& params, const StrategyPolicy& policy,
                            const ComputeConfig& cfg, const QueryObserver& observer = {}) {
    Engine engine(std::move(initial), params, policy, cfg);
    engine.start();
    RunResult out;
    out.initial = engine.last_result();
    for (const auto& ev : events) {
        if (ev.kind != EventKind::Query) {
            engine.register_event(ev);
            continue;
        }
        out.records.push_back(engine.answer_query());
        if (observer) {
            observer(out.records.back(), engine.last_result());
        } else {
            out.per_query.push_back(engine.last_result());
        }
    }
    out.final_ranks = engine.last_result();
    return out;
}

} // namespace hotrank
