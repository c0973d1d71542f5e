#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <numeric>
#include <vector>

#include "hotrank/graph.hpp"
#include "hotrank/types.hpp"

namespace hotrank {

/**
 * Per-vertex scores.
 *
 * When produced by a kernel, entry i belongs to slot i of the graph the kernel
 * ran on (ids[i] == g.id_of(i)). Vectors loaded from rank files carry arbitrary
 * id order.
 */
struct RankVector {
    std::vector<VertexId> ids;
    std::vector<double> scores;
    std::size_t measured_at = 0;

    std::size_t size() const noexcept { return scores.size(); }

    /// Uniform scores aligned with the slots of g.
    static RankVector uniform(const DynamicGraph& g, double value, std::size_t t = 0) {
        RankVector rv;
        rv.ids.assign(g.ids().begin(), g.ids().end());
        rv.scores.assign(g.vertex_count(), value);
        rv.measured_at = t;
        return rv;
    }

    /// Appends `value` for every slot of g not yet covered.
    void extend_to(const DynamicGraph& g, double value) {
        for (Slot s = static_cast<Slot>(scores.size()); s < g.vertex_count(); ++s) {
            ids.push_back(g.id_of(s));
            scores.push_back(value);
        }
    }

    bool aligned_with(const DynamicGraph& g) const {
        if (ids.size() != g.vertex_count() || scores.size() != ids.size()) {
            return false;
        }
        return std::equal(ids.begin(), ids.end(), g.ids().begin());
    }

    std::map<VertexId, double> as_map() const {
        std::map<VertexId, double> m;
        for (std::size_t i = 0; i < ids.size(); ++i) {
            m.emplace(ids[i], scores[i]);
        }
        return m;
    }

    friend bool operator==(const RankVector&, const RankVector&) = default;
};

/// Vertex ids by descending score; ties go to the smaller id.
inline std::vector<VertexId> rank_descending(const RankVector& rv) {
    std::vector<std::size_t> order(rv.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (rv.scores[a] != rv.scores[b]) {
            return rv.scores[a] > rv.scores[b];
        }
        return rv.ids[a] < rv.ids[b];
    });
    std::vector<VertexId> ranked;
    ranked.reserve(order.size());
    for (std::size_t i : order) {
        ranked.push_back(rv.ids[i]);
    }
    return ranked;
}

} // namespace hotrank
