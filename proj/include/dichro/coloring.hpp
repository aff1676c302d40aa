// Exact dicoloring: k-dicolorability, dichromatic number, criticality,
// low-vertex extraction, brute-force list-dicoloring and clique number.
//
// A coloring is valid iff every color class induces an acyclic subdigraph.
// The solver backtracks over vertices in ascending order with colors tried
// ascending, so the first coloring found is deterministic across runs and
// platforms. Internals use 64-bit class masks; order is capped at 64.

#ifndef DICHRO_COLORING_HPP
#define DICHRO_COLORING_HPP

#include <map>
#include <optional>

#include "dichro/digraph.hpp"

namespace dichro {

struct PartialColoring : Error {
    explicit PartialColoring(const std::string& msg) : Error(msg) {}
};

using Coloring = std::vector<int>;                 // vertex -> color index
using ListAssignment = std::vector<std::vector<int>>;  // vertex -> allowed colors

inline constexpr int kSolverOrderLimit = 64;

namespace detail {

inline void require_solver_order(const Digraph& d) {
    if (d.order() > kSolverOrderLimit)
        throw SizeLimitExceeded("solver capped at order " + std::to_string(kSolverOrderLimit));
}

// A vertex subset induces an acyclic subdigraph iff repeated sink removal
// empties it.
inline bool subset_acyclic(const Digraph& d, std::uint64_t mask) {
    bool changed = true;
    while (mask && changed) {
        changed = false;
        std::uint64_t m = mask;
        while (m) {
            int v = __builtin_ctzll(m);
            m &= m - 1;
            if ((d.out_mask64(v) & mask) == 0) {
                mask &= ~(std::uint64_t(1) << v);
                changed = true;
            }
        }
    }
    return mask == 0;
}

}  // namespace detail

inline bool is_valid_dicoloring(const Digraph& d, const Coloring& phi) {
    if (static_cast<int>(phi.size()) != d.order())
        throw PartialColoring("coloring must be total on V(D)");
    detail::require_solver_order(d);
    std::map<int, std::uint64_t> classes;
    for (int v = 0; v < d.order(); ++v) {
        if (phi[v] < 0) throw PartialColoring("negative color");
        classes[phi[v]] |= std::uint64_t(1) << v;
    }
    for (const auto& [c, mask] : classes)
        if (!detail::subset_acyclic(d, mask)) return false;
    return true;
}

// Exact backtracking solver. Colors are interchangeable, so a vertex never
// opens more than one fresh class; this keeps the first solution equal to the
// lexicographically smallest valid assignment.
inline std::optional<Coloring> find_k_dicoloring(const Digraph& d, int k) {
    if (k < 0) throw BadParameter("negative color count");
    detail::require_solver_order(d);
    int n = d.order();
    if (n == 0) return Coloring{};
    if (k == 0) return std::nullopt;

    std::vector<std::uint64_t> class_mask(k, 0);
    Coloring colors(n, -1);
    int v = 0, used = 0;
    std::vector<int> used_at(n + 1, 0);
    while (true) {
        int start = colors[v] < 0 ? 0 : colors[v] + 1;
        if (colors[v] >= 0) {
            class_mask[colors[v]] &= ~(std::uint64_t(1) << v);
            colors[v] = -1;
        }
        int limit = std::min(k - 1, used);
        int chosen = -1;
        for (int c = start; c <= limit; ++c) {
            std::uint64_t m = class_mask[c] | (std::uint64_t(1) << v);
            if (detail::subset_acyclic(d, m)) {
                chosen = c;
                break;
            }
        }
        if (chosen >= 0) {
            colors[v] = chosen;
            class_mask[chosen] |= std::uint64_t(1) << v;
            used = std::max(used, chosen + 1);
            ++v;
            if (v == n) return colors;
            used_at[v] = used;
        } else {
            --v;
            if (v < 0) return std::nullopt;
            used = used_at[v];
        }
    }
}

inline int dichromatic_number(const Digraph& d) {
    for (int k = 0;; ++k)
        if (find_k_dicoloring(d, k)) return k;
}

// For k >= 2: no isolated vertex, chi(D) = k, and every arc deletion drops to
// k-1 colors. Arc criticality plus the isolated-vertex guard implies vertex
// criticality (D - v is a subdigraph of some D - a). For m >= 1 the upper
// bound chi(D) <= k follows from any arc deletion being (k-1)-colorable.
inline bool is_k_critical(const Digraph& d, int k) {
    if (k < 0) throw BadParameter("negative k");
    if (k == 0) return d.order() == 0;
    if (k == 1) return d.order() == 1 && d.arc_count() == 0;
    if (d.order() == 0 || d.arc_count() == 0) return false;
    for (int v = 0; v < d.order(); ++v)
        if (d.out_degree(v) == 0 && d.in_degree(v) == 0) return false;
    if (find_k_dicoloring(d, k - 1)) return false;
    for (const auto& [u, v] : d.arcs())
        if (!find_k_dicoloring(delete_arc(d, u, v), k - 1)) return false;
    return true;
}

struct LowVertexSubdigraph {
    std::vector<int> low_set;  // ascending original indices; new i = low_set[i]
    Digraph induced;
};

inline LowVertexSubdigraph low_vertex_subdigraph(const Digraph& d, int k) {
    LowVertexSubdigraph r;
    for (int v = 0; v < d.order(); ++v)
        if (d.out_degree(v) == k - 1 && d.in_degree(v) == k - 1) r.low_set.push_back(v);
    r.induced = induced_subdigraph(d, r.low_set);
    return r;
}

// Exact backtracking over list-respecting assignments.
inline std::optional<Coloring> list_dicolorable(const Digraph& d, const ListAssignment& lists) {
    detail::require_solver_order(d);
    int n = d.order();
    if (static_cast<int>(lists.size()) != n) throw PartialColoring("list assignment must be total on V(D)");
    for (const auto& l : lists)
        if (l.empty()) throw PartialColoring("empty color list");
    std::vector<std::vector<int>> sorted_lists(lists);
    int max_color = 0;
    for (auto& l : sorted_lists) {
        std::sort(l.begin(), l.end());
        l.erase(std::unique(l.begin(), l.end()), l.end());
        for (int c : l) {
            if (c < 0) throw BadParameter("negative color in list");
            max_color = std::max(max_color, c);
        }
    }
    if (n == 0) return Coloring{};

    std::vector<std::uint64_t> class_mask(max_color + 1, 0);
    Coloring colors(n, -1);
    std::vector<int> pos(n, -1);
    int v = 0;
    while (true) {
        if (pos[v] >= 0) {
            class_mask[colors[v]] &= ~(std::uint64_t(1) << v);
            colors[v] = -1;
        }
        int chosen = -1;
        for (int i = pos[v] + 1; i < static_cast<int>(sorted_lists[v].size()); ++i) {
            int c = sorted_lists[v][i];
            std::uint64_t m = class_mask[c] | (std::uint64_t(1) << v);
            if (detail::subset_acyclic(d, m)) {
                chosen = i;
                break;
            }
        }
        if (chosen >= 0) {
            pos[v] = chosen;
            colors[v] = sorted_lists[v][chosen];
            class_mask[colors[v]] |= std::uint64_t(1) << v;
            ++v;
            if (v == n) return colors;
            pos[v] = -1;
        } else {
            pos[v] = -1;
            --v;
            if (v < 0) return std::nullopt;
        }
    }
}

// omega(D) = size of the largest bidirected complete subdigraph = max clique
// of the symmetric part.
inline constexpr int kCliqueOrderLimit = 12;

inline int clique_number(const Digraph& d) {
    if (d.order() > kCliqueOrderLimit) throw SizeLimitExceeded("clique_number capped at order 12");
    UndirectedGraph s = symmetric_part(d);
    int n = s.order();
    std::vector<std::uint64_t> adj(n, 0);
    for (const auto& [u, v] : s.edges()) {
        adj[u] |= std::uint64_t(1) << v;
        adj[v] |= std::uint64_t(1) << u;
    }
    int best = 0;
    auto expand = [&](auto&& self, std::uint64_t cand, int size) -> void {
        if (size + __builtin_popcountll(cand) <= best) return;
        if (!cand) {
            best = std::max(best, size);
            return;
        }
        while (cand) {
            if (size + __builtin_popcountll(cand) <= best) return;
            int v = __builtin_ctzll(cand);
            cand &= cand - 1;
            self(self, cand & adj[v], size + 1);
        }
    };
    expand(expand, n >= 64 ? ~std::uint64_t(0) : (std::uint64_t(1) << n) - 1, 0);
    return best;
}

}  // namespace dichro

#endif
