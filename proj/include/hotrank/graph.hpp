#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <unordered_map>
#include <utility>
#include <vector>

#include "hotrank/types.hpp"

namespace hotrank {

/**
 * Directed graph with set semantics for edges, mutated one edge at a time.
 *
 * Vertices are created implicitly by the first edge that mentions them and are
 * never removed, even when their degree drops to zero. Both adjacency
 * directions are stored as slot lists kept in ascending VertexId order, so any
 * iteration over neighbours (and any floating-point sum over them) has a fixed
 * order.
 */
class DynamicGraph {
public:
    DynamicGraph() = default;

    /// Returns true iff (u, v) was not already present.
    bool add_edge(VertexId u, VertexId v) {
        const Slot su = ensure_vertex(u);
        const Slot sv = ensure_vertex(v);
        auto& out = out_[su];
        auto pos = lower_bound_by_id(out, v);
        if (pos != out.end() && *pos == sv) {
            return false;
        }
        out.insert(pos, sv);
        auto& in = in_[sv];
        in.insert(lower_bound_by_id(in, u), su);
        ++edge_count_;
        return true;
    }

    /// Returns true iff (u, v) existed. Endpoints stay in the vertex set.
    bool remove_edge(VertexId u, VertexId v) {
        const auto su = slot_of(u);
        const auto sv = slot_of(v);
        if (!su || !sv) {
            return false;
        }
        auto& out = out_[*su];
        auto pos = lower_bound_by_id(out, v);
        if (pos == out.end() || *pos != *sv) {
            return false;
        }
        out.erase(pos);
        auto& in = in_[*sv];
        in.erase(lower_bound_by_id(in, u));
        --edge_count_;
        return true;
    }

    /// Adds an isolated vertex if absent and returns its slot.
    Slot ensure_vertex(VertexId id) {
        auto [it, inserted] = index_.try_emplace(id, static_cast<Slot>(ids_.size()));
        if (inserted) {
            ids_.push_back(id);
            out_.emplace_back();
            in_.emplace_back();
        }
        return it->second;
    }

    bool has_edge(VertexId u, VertexId v) const {
        const auto su = slot_of(u);
        const auto sv = slot_of(v);
        if (!su || !sv) {
            return false;
        }
        const auto& out = out_[*su];
        auto pos = lower_bound_by_id(out, v);
        return pos != out.end() && *pos == *sv;
    }

    bool contains(VertexId id) const { return index_.contains(id); }

    std::optional<Slot> slot_of(VertexId id) const {
        auto it = index_.find(id);
        if (it == index_.end()) {
            return std::nullopt;
        }
        return it->second;
    }

    VertexId id_of(Slot s) const { return ids_[s]; }
    std::span<const VertexId> ids() const { return ids_; }

    std::size_t vertex_count() const noexcept { return ids_.size(); }
    std::size_t edge_count() const noexcept { return edge_count_; }

    /// Average out-degree |E| / |V|; zero for an empty graph.
    double average_degree() const noexcept {
        return ids_.empty() ? 0.0
                            : static_cast<double>(edge_count_) / static_cast<double>(ids_.size());
    }

    std::size_t out_degree(Slot s) const { return out_[s].size(); }
    std::size_t in_degree(Slot s) const { return in_[s].size(); }

    /// Out-degree of a vertex by id; zero when the vertex is unknown.
    std::size_t out_degree_of(VertexId id) const {
        const auto s = slot_of(id);
        return s ? out_[*s].size() : 0;
    }

    /// Out-neighbour slots of s, ascending by VertexId.
    std::span<const Slot> out_neighbors(Slot s) const { return out_[s]; }
    /// In-neighbour slots of s, ascending by VertexId.
    std::span<const Slot> in_neighbors(Slot s) const { return in_[s]; }

    /// All vertex ids in ascending order.
    std::vector<VertexId> sorted_vertices() const {
        std::vector<VertexId> v(ids_.begin(), ids_.end());
        std::sort(v.begin(), v.end());
        return v;
    }

    /// All edges in ascending (source, target) order.
    std::vector<Edge> sorted_edges() const {
        std::vector<Edge> edges;
        edges.reserve(edge_count_);
        for (Slot s = 0; s < ids_.size(); ++s) {
            for (Slot t : out_[s]) {
                edges.push_back({ids_[s], ids_[t]});
            }
        }
        std::sort(edges.begin(), edges.end());
        return edges;
    }

private:
    using SlotList = std::vector<Slot>;

    SlotList::iterator lower_bound_by_id(SlotList& list, VertexId id) const {
        return std::lower_bound(list.begin(), list.end(), id,
                                [this](Slot a, VertexId b) { return ids_[a] < b; });
    }
    SlotList::const_iterator lower_bound_by_id(const SlotList& list, VertexId id) const {
        return std::lower_bound(list.begin(), list.end(), id,
                                [this](Slot a, VertexId b) { return ids_[a] < b; });
    }

    std::unordered_map<VertexId, Slot> index_;
    std::vector<VertexId> ids_;
    std::vector<SlotList> out_;
    std::vector<SlotList> in_;
    std::size_t edge_count_ = 0;
};

/**
 * Out-degrees of every vertex at a measurement point.
 *
 * Indexed by slot of the graph it was taken from. Since slots are append-only,
 * a slot at or beyond size() is a vertex that appeared after the snapshot.
 */
class DegreeSnapshot {
public:
    DegreeSnapshot() = default;
    DegreeSnapshot(std::vector<std::size_t> degrees, std::size_t taken_at)
        : degrees_(std::move(degrees)), taken_at_(taken_at) {}

    bool contains(Slot s) const noexcept { return s < degrees_.size(); }
    std::size_t degree(Slot s) const { return degrees_[s]; }
    std::size_t size() const noexcept { return degrees_.size(); }
    std::size_t taken_at() const noexcept { return taken_at_; }

    std::map<VertexId, std::size_t> as_map(const DynamicGraph& g) const {
        std::map<VertexId, std::size_t> m;
        for (Slot s = 0; s < degrees_.size(); ++s) {
            m.emplace(g.id_of(s), degrees_[s]);
        }
        return m;
    }

private:
    std::vector<std::size_t> degrees_;
    std::size_t taken_at_ = 0;
};

inline DegreeSnapshot snapshot_degrees(const DynamicGraph& g, std::size_t t) {
    std::vector<std::size_t> degrees(g.vertex_count());
    for (Slot s = 0; s < degrees.size(); ++s) {
        degrees[s] = g.out_degree(s);
    }
    return DegreeSnapshot(std::move(degrees), t);
}

/// Out-edge BFS over slots. Returns (slot, hops) in discovery order, sources at 0.
inline std::vector<std::pair<Slot, std::size_t>>
bfs_out_slots(const DynamicGraph& g, std::span<const Slot> sources, std::size_t max_hops) {
    std::vector<std::pair<Slot, std::size_t>> reached;
    std::vector<char> seen(g.vertex_count(), 0);
    std::vector<Slot> frontier;
    for (Slot s : sources) {
        if (!seen[s]) {
            seen[s] = 1;
            reached.emplace_back(s, 0);
            frontier.push_back(s);
        }
    }
    std::vector<Slot> next;
    for (std::size_t hop = 1; hop <= max_hops && !frontier.empty(); ++hop) {
        next.clear();
        for (Slot u : frontier) {
            for (Slot v : g.out_neighbors(u)) {
                if (!seen[v]) {
                    seen[v] = 1;
                    reached.emplace_back(v, hop);
                    next.push_back(v);
                }
            }
        }
        frontier.swap(next);
    }
    return reached;
}

/// Minimum out-edge hop distance from any source, for vertices within max_hops.
/// Sources not in the graph are ignored.
inline std::map<VertexId, std::size_t>
bfs_out(const DynamicGraph& g, std::span<const VertexId> sources, std::size_t max_hops) {
    std::vector<Slot> slots;
    slots.reserve(sources.size());
    for (VertexId id : sources) {
        if (auto s = g.slot_of(id)) {
            slots.push_back(*s);
        }
    }
    std::map<VertexId, std::size_t> dist;
    for (auto [s, hops] : bfs_out_slots(g, slots, max_hops)) {
        dist.emplace(g.id_of(s), hops);
    }
    return dist;
}

} // namespace hotrank
