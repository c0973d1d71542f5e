#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <unordered_set>
#include <vector>

#include "hotrank/engine.hpp"
#include "hotrank/rank.hpp"
#include "hotrank/types.hpp"

namespace hotrank {

struct RboConfig {
    double p = 0.98;
    double depth_fraction = 0.10;
    std::size_t full_depth_period = 10; // every n-th query compares all vertices

    void validate() const {
        if (!(p > 0.0 && p < 1.0)) {
            throw ConfigError("RBO persistence p must lie in (0, 1)");
        }
        if (!(depth_fraction > 0.0 && depth_fraction <= 1.0)) {
            throw ConfigError("depth fraction must lie in (0, 1]");
        }
        if (full_depth_period == 0) {
            throw ConfigError("full-depth period must be positive");
        }
    }
};

/**
 * Extrapolated rank-biased overlap of two rankings evaluated at depth k.
 *
 *   (X_k / k) p^k + ((1 - p) / p) * sum_{d=1..k} (X_d / d) p^d
 *
 * where X_d is the size of the intersection of the two depth-d prefixes. Both
 * lists are truncated to k first, so k may not exceed either length.
 */
inline double rbo_ext(std::span<const VertexId> a, std::span<const VertexId> b, double p,
                      std::size_t k) {
    if (k == 0) {
        throw ConfigError("RBO depth must be positive");
    }
    if (!(p > 0.0 && p < 1.0)) {
        throw ConfigError("RBO persistence p must lie in (0, 1)");
    }
    if (k > a.size() || k > b.size()) {
        throw ConfigError("RBO depth " + std::to_string(k) + " exceeds a ranking's length");
    }

    std::unordered_set<VertexId> seen_a;
    std::unordered_set<VertexId> seen_b;
    seen_a.reserve(k);
    seen_b.reserve(k);
    std::size_t overlap = 0;
    bool identical = true;
    double weighted = 0.0;
    double p_d = 1.0;
    for (std::size_t i = 0; i < k; ++i) {
        const VertexId x = a[i];
        const VertexId y = b[i];
        if (!seen_a.insert(x).second || !seen_b.insert(y).second) {
            throw IntegrityError("ranking contains a duplicate vertex");
        }
        if (x == y) {
            ++overlap;
        } else {
            overlap += static_cast<std::size_t>(seen_b.contains(x));
            overlap += static_cast<std::size_t>(seen_a.contains(y));
        }
        const std::size_t depth = i + 1;
        identical = identical && overlap == depth;
        p_d *= p;
        weighted += static_cast<double>(overlap) / static_cast<double>(depth) * p_d;
    }
    if (identical) {
        // The series sums to exactly one; skip the rounding noise.
        return 1.0;
    }
    const double tail = static_cast<double>(overlap) / static_cast<double>(k) * p_d;
    const double value = tail + (1.0 - p) / p * weighted;
    return std::clamp(value, 0.0, 1.0);
}

/// Comparison depth for a query: all vertices on every full_depth_period-th
/// query, otherwise ceil(depth_fraction * vertex_count), at least 1.
inline std::size_t rbo_depth(const RboConfig& cfg, std::size_t query_index,
                             std::size_t vertex_count) {
    if (vertex_count == 0) {
        return 0;
    }
    if (query_index % cfg.full_depth_period == 0) {
        return vertex_count;
    }
    const double raw = cfg.depth_fraction * static_cast<double>(vertex_count);
    const auto depth = static_cast<std::size_t>(std::ceil(raw - 1e-9));
    return std::clamp<std::size_t>(depth, 1, vertex_count);
}

struct EvaluationRow {
    std::size_t query_index = 0;
    double rbo = 0.0;
    double speedup = 0.0;
    double edge_fraction = 0.0;
    std::size_t depth = 0;
};

inline double speedup_of(const QueryRecord& exact, const QueryRecord& approx) {
    const auto num = std::max<Duration::rep>(exact.elapsed_total.count(), 1);
    const auto den = std::max<Duration::rep>(approx.elapsed_total.count(), 1);
    return static_cast<double>(num) / static_cast<double>(den);
}

inline double edge_fraction_of(const QueryRecord& rec) {
    if (rec.total_edges == 0) {
        return 1.0;
    }
    return static_cast<double>(rec.summary_edges) / static_cast<double>(rec.total_edges);
}

/// Rankings are passed already ordered (see rank_descending).
inline EvaluationRow evaluate_query(const QueryRecord& approx, std::span<const VertexId> approx_rank,
                                    const QueryRecord& exact, std::span<const VertexId> exact_rank,
                                    const RboConfig& cfg) {
    if (approx.query_index != exact.query_index) {
        throw ConfigError("query index mismatch: " + std::to_string(approx.query_index) + " vs " +
                          std::to_string(exact.query_index));
    }
    EvaluationRow row;
    row.query_index = approx.query_index;
    const std::size_t n = std::min(approx_rank.size(), exact_rank.size());
    row.depth = rbo_depth(cfg, row.query_index, n);
    row.rbo = row.depth == 0 ? 1.0 : rbo_ext(approx_rank, exact_rank, cfg.p, row.depth);
    row.speedup = speedup_of(exact, approx);
    row.edge_fraction = edge_fraction_of(approx);
    return row;
}

inline std::vector<EvaluationRow> evaluate_run(std::span<const QueryRecord> approx_records,
                                               std::span<const RankVector> approx_ranks,
                                               std::span<const QueryRecord> exact_records,
                                               std::span<const RankVector> exact_ranks,
                                               const RboConfig& cfg) {
    cfg.validate();
    if (approx_records.size() != exact_records.size() ||
        approx_ranks.size() != approx_records.size() ||
        exact_ranks.size() != exact_records.size()) {
        throw ConfigError("runs answered different numbers of queries");
    }
    std::vector<EvaluationRow> rows;
    rows.reserve(approx_records.size());
    for (std::size_t i = 0; i < approx_records.size(); ++i) {
        const auto a = rank_descending(approx_ranks[i]);
        const auto e = rank_descending(exact_ranks[i]);
        rows.push_back(evaluate_query(approx_records[i], a, exact_records[i], e, cfg));
    }
    return rows;
}

} // namespace hotrank
