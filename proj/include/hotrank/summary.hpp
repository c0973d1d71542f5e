#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "hotrank/graph.hpp"
#include "hotrank/rank.hpp"
#include "hotrank/types.hpp"

namespace hotrank {

struct IntraEdge {
    VertexId source;
    VertexId target;
    double val; // 1 / out-degree of source in the full graph

    friend bool operator==(const IntraEdge&, const IntraEdge&) = default;
};

/**
 * Hot vertices plus one aggregate vertex standing in for everything else.
 *
 * Edges between hot vertices are kept with weight 1/d_out(source), where the
 * degree still counts edges that leave the hot set. Edges from the aggregate
 * into the hot set are collapsed per target into a constant inflow computed
 * from the frozen scores of their sources. Edges from the hot set into the
 * aggregate are dropped.
 *
 * Per-hot-vertex arrays are indexed by position in `hot` (ascending id).
 * `intra_edges` is grouped by target in the same order, with sources ascending
 * inside each group; intra_offsets[i]..intra_offsets[i+1] delimits group i.
 */
struct SummaryGraph {
    std::vector<VertexId> hot;
    std::vector<Slot> hot_slots;

    std::vector<IntraEdge> intra_edges;
    std::vector<std::size_t> intra_offsets;
    std::vector<std::uint32_t> intra_source_index;

    std::vector<double> boundary_inflow;
    std::vector<std::size_t> boundary_sources;
    double b_s = 0.0;
    std::size_t boundary_pair_count = 0;

    // Scores at build time. Entries outside `hot` are the frozen scores.
    RankVector base;

    /// Targets with at least one boundary edge, mapped to their collapsed inflow.
    std::map<VertexId, double> boundary_inflow_map() const {
        std::map<VertexId, double> m;
        for (std::size_t i = 0; i < hot.size(); ++i) {
            if (boundary_sources[i] > 0) {
                m.emplace(hot[i], boundary_inflow[i]);
            }
        }
        return m;
    }

    std::map<VertexId, double> frozen_scores() const {
        std::vector<char> is_hot(base.size(), 0);
        for (Slot s : hot_slots) {
            is_hot[s] = 1;
        }
        std::map<VertexId, double> m;
        for (std::size_t i = 0; i < base.size(); ++i) {
            if (!is_hot[i]) {
                m.emplace(base.ids[i], base.scores[i]);
            }
        }
        return m;
    }
};

inline SummaryGraph build_summary(const DynamicGraph& g, std::span<const VertexId> hot,
                                  const RankVector& ranks) {
    if (!ranks.aligned_with(g)) {
        throw IntegrityError("rank vector does not cover the graph's vertices");
    }

    SummaryGraph s;
    s.hot.assign(hot.begin(), hot.end());
    std::sort(s.hot.begin(), s.hot.end());
    if (std::adjacent_find(s.hot.begin(), s.hot.end()) != s.hot.end()) {
        throw IntegrityError("hot set contains a duplicate vertex");
    }

    constexpr std::uint32_t kCold = UINT32_MAX;
    std::vector<std::uint32_t> local(g.vertex_count(), kCold);
    s.hot_slots.reserve(s.hot.size());
    for (std::size_t i = 0; i < s.hot.size(); ++i) {
        const auto slot = g.slot_of(s.hot[i]);
        if (!slot) {
            throw IntegrityError("hot vertex " + std::to_string(s.hot[i]) + " is not in the graph");
        }
        s.hot_slots.push_back(*slot);
        local[*slot] = static_cast<std::uint32_t>(i);
    }

    s.intra_offsets.reserve(s.hot.size() + 1);
    s.intra_offsets.push_back(0);
    s.boundary_inflow.assign(s.hot.size(), 0.0);
    s.boundary_sources.assign(s.hot.size(), 0);

    for (std::size_t i = 0; i < s.hot.size(); ++i) {
        const Slot z = s.hot_slots[i];
        for (Slot w : g.in_neighbors(z)) {
            const double d_out = static_cast<double>(g.out_degree(w));
            if (local[w] != kCold) {
                s.intra_edges.push_back({g.id_of(w), s.hot[i], 1.0 / d_out});
                s.intra_source_index.push_back(local[w]);
            } else {
                s.boundary_inflow[i] += ranks.scores[w] / d_out;
                ++s.boundary_sources[i];
            }
        }
        s.intra_offsets.push_back(s.intra_edges.size());
        s.boundary_pair_count += s.boundary_sources[i];
    }

    for (double c : s.boundary_inflow) {
        s.b_s += c;
    }
    s.base = ranks;
    return s;
}

/// |E_K| plus the number of distinct (boundary source, hot target) edges.
inline std::size_t summary_edge_count(const SummaryGraph& s) {
    return s.intra_edges.size() + s.boundary_pair_count;
}

} // namespace hotrank
