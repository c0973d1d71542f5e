#pragma once

#include <algorithm>
#include <concepts>
#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "hotrank/graph.hpp"
#include "hotrank/rank.hpp"
#include "hotrank/summary.hpp"
#include "hotrank/types.hpp"

namespace hotrank {

struct ComputeConfig {
    double beta = 0.85;
    std::size_t iterations = 30;

    void validate() const {
        if (!(beta >= 0.0 && beta <= 1.0)) {
            throw ConfigError("beta must lie in [0, 1]");
        }
        if (iterations == 0) {
            throw ConfigError("iterations must be positive");
        }
    }
};

/**
 * Folds the messages arriving at a vertex into its new value.
 *
 * Kernels call identity(), then combine() once per incoming message in
 * ascending source-id order, then finish(). A random-walk algorithm other than
 * PageRank plugs in here.
 */
template <class F>
concept Aggregation = requires(const F f, double acc, double msg) {
    { f.identity() } -> std::convertible_to<double>;
    { f.combine(acc, msg) } -> std::convertible_to<double>;
    { f.finish(acc) } -> std::convertible_to<double>;
};

/// score = (1 - beta) + beta * sum(messages)
struct PageRankAggregation {
    double beta = 0.85;

    double identity() const noexcept { return 0.0; }
    double combine(double acc, double msg) const noexcept { return acc + msg; }
    double finish(double acc) const noexcept { return beta * acc + (1.0 - beta); }

    double operator()(std::span<const double> messages) const noexcept {
        double acc = identity();
        for (double m : messages) {
            acc = combine(acc, m);
        }
        return finish(acc);
    }
};

/**
 * Synchronous vertex-centric propagation over the whole graph.
 *
 * Each round every vertex u sends value(u) / d_out(u) along each out-edge and
 * every vertex folds its inbox with `agg`. Vertices without a starting value in
 * `init` start at 1.0.
 */
template <Aggregation Agg>
RankVector propagate_exact(const DynamicGraph& g, const Agg& agg, std::size_t iterations,
                           std::span<const double> init = {}) {
    const std::size_t n = g.vertex_count();
    std::vector<double> inv_out(n, 0.0);
    for (Slot s = 0; s < n; ++s) {
        if (const auto d = g.out_degree(s); d > 0) {
            inv_out[s] = 1.0 / static_cast<double>(d);
        }
    }

    std::vector<double> cur(n, 1.0);
    std::copy_n(init.begin(), std::min(init.size(), n), cur.begin());
    std::vector<double> next(n);
    for (std::size_t it = 0; it < iterations; ++it) {
        for (Slot v = 0; v < n; ++v) {
            double acc = agg.identity();
            for (Slot u : g.in_neighbors(v)) {
                acc = agg.combine(acc, cur[u] * inv_out[u]);
            }
            next[v] = agg.finish(acc);
        }
        cur.swap(next);
    }

    RankVector rv;
    rv.ids.assign(g.ids().begin(), g.ids().end());
    rv.scores = std::move(cur);
    return rv;
}

/**
 * Propagation restricted to the hot vertices of a summary.
 *
 * Each hot vertex additionally receives its constant boundary inflow as the
 * first message of every round. Non-hot entries of the result are copied from
 * the summary's frozen scores.
 */
template <Aggregation Agg>
RankVector propagate_summarized(const SummaryGraph& s, const RankVector& warm, const Agg& agg,
                                std::size_t iterations) {
    const std::size_t k = s.hot.size();
    std::vector<double> cur(k);
    for (std::size_t i = 0; i < k; ++i) {
        const Slot slot = s.hot_slots[i];
        if (slot >= warm.size()) {
            throw IntegrityError("no warm-start score for hot vertex " + std::to_string(s.hot[i]));
        }
        cur[i] = warm.scores[slot];
    }

    std::vector<double> next(k);
    for (std::size_t it = 0; it < iterations && k > 0; ++it) {
        for (std::size_t i = 0; i < k; ++i) {
            double acc = agg.combine(agg.identity(), s.boundary_inflow[i]);
            for (std::size_t e = s.intra_offsets[i]; e < s.intra_offsets[i + 1]; ++e) {
                acc = agg.combine(acc, cur[s.intra_source_index[e]] * s.intra_edges[e].val);
            }
            next[i] = agg.finish(acc);
        }
        cur.swap(next);
    }

    RankVector merged = s.base;
    for (std::size_t i = 0; i < k; ++i) {
        merged.scores[s.hot_slots[i]] = cur[i];
    }
    return merged;
}

inline RankVector pagerank_exact(const DynamicGraph& g, const ComputeConfig& cfg) {
    cfg.validate();
    return propagate_exact(g, PageRankAggregation{cfg.beta}, cfg.iterations);
}

/// Exact PageRank warm-started from `warm` (slot-aligned; missing tail starts at 1.0).
inline RankVector pagerank_exact(const DynamicGraph& g, const ComputeConfig& cfg,
                                 const RankVector& warm) {
    cfg.validate();
    return propagate_exact(g, PageRankAggregation{cfg.beta}, cfg.iterations, warm.scores);
}

inline RankVector pagerank_summarized(const SummaryGraph& s, const RankVector& warm,
                                      const ComputeConfig& cfg) {
    cfg.validate();
    return propagate_summarized(s, warm, PageRankAggregation{cfg.beta}, cfg.iterations);
}

} // namespace hotrank
