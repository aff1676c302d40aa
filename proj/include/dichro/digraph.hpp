// Core digraph value type and exact combinatorial queries.
//
// Digraphs are immutable after construction: loop-free, no parallel arcs,
// opposite arcs allowed (digons). Vertices are dense 0-based integers.
// All queries are pure and safe for concurrent use.

#ifndef DICHRO_DIGRAPH_HPP
#define DICHRO_DIGRAPH_HPP

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace dichro {

struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

struct LoopArc : Error {
    explicit LoopArc(const std::string& msg) : Error(msg) {}
};
struct VertexOutOfRange : Error {
    explicit VertexOutOfRange(const std::string& msg) : Error(msg) {}
};
struct SizeLimitExceeded : Error {
    explicit SizeLimitExceeded(const std::string& msg) : Error(msg) {}
};
struct BadParameter : Error {
    explicit BadParameter(const std::string& msg) : Error(msg) {}
};

using Arc = std::pair<int, int>;

// Loop-free arc-set digraph on vertices 0..n-1. Arc storage is a sorted,
// deduplicated vector plus per-vertex adjacency bitsets, so arc membership
// is O(1) and iteration is always in ascending (u,v) order. Ascending order
// is the tie-break everywhere an arbitrary choice would otherwise appear.
class Digraph {
public:
    Digraph() = default;

    Digraph(int n, std::vector<Arc> arcs) : n_(n) {
        if (n < 0) throw BadParameter("negative order");
        for (const auto& [u, v] : arcs) {
            if (u == v) throw LoopArc("loop arc (" + std::to_string(u) + "," + std::to_string(v) + ")");
            if (u < 0 || u >= n || v < 0 || v >= n)
                throw VertexOutOfRange("arc (" + std::to_string(u) + "," + std::to_string(v) +
                                       ") out of range for order " + std::to_string(n));
        }
        std::sort(arcs.begin(), arcs.end());
        arcs.erase(std::unique(arcs.begin(), arcs.end()), arcs.end());
        arcs_ = std::move(arcs);
        build_index();
    }

    int order() const { return n_; }
    int arc_count() const { return static_cast<int>(arcs_.size()); }
    const std::vector<Arc>& arcs() const { return arcs_; }

    bool has_arc(int u, int v) const {
        check_vertex(u);
        check_vertex(v);
        return out_[static_cast<size_t>(u) * words_ + static_cast<size_t>(v >> 6)] >> (v & 63) & 1;
    }

    bool has_digon(int u, int v) const { return has_arc(u, v) && has_arc(v, u); }
    bool adjacent(int u, int v) const { return has_arc(u, v) || has_arc(v, u); }

    int out_degree(int v) const {
        check_vertex(v);
        return out_deg_[v];
    }
    int in_degree(int v) const {
        check_vertex(v);
        return in_deg_[v];
    }

    std::vector<int> out_neighbors(int v) const { return row_members(out_, v); }
    std::vector<int> in_neighbors(int v) const { return row_members(in_, v); }

    // Out-adjacency of v as a single 64-bit word; valid only for order <= 64.
    std::uint64_t out_mask64(int v) const { return out_[static_cast<size_t>(v) * words_]; }
    std::uint64_t in_mask64(int v) const { return in_[static_cast<size_t>(v) * words_]; }

    bool operator==(const Digraph& other) const { return n_ == other.n_ && arcs_ == other.arcs_; }
    bool operator!=(const Digraph& other) const { return !(*this == other); }
    bool operator<(const Digraph& other) const {
        if (n_ != other.n_) return n_ < other.n_;
        return arcs_ < other.arcs_;
    }

    // --- standard families -------------------------------------------------

    static Digraph bidirected_complete(int k) {
        if (k < 1) throw BadParameter("bidirected_complete requires k >= 1");
        std::vector<Arc> a;
        for (int u = 0; u < k; ++u)
            for (int v = 0; v < k; ++v)
                if (u != v) a.emplace_back(u, v);
        return Digraph(k, std::move(a));
    }

    static Digraph directed_cycle(int n) {
        if (n < 2) throw BadParameter("directed_cycle requires n >= 2");
        std::vector<Arc> a;
        for (int v = 0; v < n; ++v) a.emplace_back(v, (v + 1) % n);
        return Digraph(n, std::move(a));
    }

    static Digraph bidirected_cycle(int n) {
        if (n < 3) throw BadParameter("bidirected_cycle requires n >= 3");
        std::vector<Arc> a;
        for (int v = 0; v < n; ++v) {
            a.emplace_back(v, (v + 1) % n);
            a.emplace_back((v + 1) % n, v);
        }
        return Digraph(n, std::move(a));
    }

    static Digraph directed_path(int n) {
        if (n < 1) throw BadParameter("directed_path requires n >= 1");
        std::vector<Arc> a;
        for (int v = 0; v + 1 < n; ++v) a.emplace_back(v, v + 1);
        return Digraph(n, std::move(a));
    }

private:
    void check_vertex(int v) const {
        if (v < 0 || v >= n_) throw VertexOutOfRange("vertex " + std::to_string(v) + " out of range");
    }

    void build_index() {
        words_ = static_cast<size_t>((n_ + 63) / 64);
        if (words_ == 0) words_ = 1;
        out_.assign(static_cast<size_t>(n_) * words_, 0);
        in_.assign(static_cast<size_t>(n_) * words_, 0);
        out_deg_.assign(n_, 0);
        in_deg_.assign(n_, 0);
        for (const auto& [u, v] : arcs_) {
            out_[static_cast<size_t>(u) * words_ + static_cast<size_t>(v >> 6)] |= std::uint64_t(1) << (v & 63);
            in_[static_cast<size_t>(v) * words_ + static_cast<size_t>(u >> 6)] |= std::uint64_t(1) << (u & 63);
            ++out_deg_[u];
            ++in_deg_[v];
        }
    }

    std::vector<int> row_members(const std::vector<std::uint64_t>& rows, int v) const {
        check_vertex(v);
        std::vector<int> r;
        for (size_t w = 0; w < words_; ++w) {
            std::uint64_t bits = rows[static_cast<size_t>(v) * words_ + w];
            while (bits) {
                int b = __builtin_ctzll(bits);
                r.push_back(static_cast<int>(w * 64) + b);
                bits &= bits - 1;
            }
        }
        return r;
    }

    int n_ = 0;
    std::vector<Arc> arcs_;
    size_t words_ = 1;
    std::vector<std::uint64_t> out_, in_;
    std::vector<int> out_deg_, in_deg_;
};

// Simple undirected graph; backs the underlying/symmetric derivations,
// block decomposition and the clique/chromatic cross-checks.
class UndirectedGraph {
public:
    UndirectedGraph() = default;

    UndirectedGraph(int n, std::vector<Arc> edges) : n_(n) {
        if (n < 0) throw BadParameter("negative order");
        for (auto& [u, v] : edges) {
            if (u == v) throw LoopArc("loop edge");
            if (u < 0 || u >= n || v < 0 || v >= n) throw VertexOutOfRange("edge endpoint out of range");
            if (u > v) std::swap(u, v);
        }
        std::sort(edges.begin(), edges.end());
        edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
        edges_ = std::move(edges);
        adj_.assign(n_, {});
        for (const auto& [u, v] : edges_) {
            adj_[u].push_back(v);
            adj_[v].push_back(u);
        }
        for (auto& a : adj_) std::sort(a.begin(), a.end());
    }

    int order() const { return n_; }
    int edge_count() const { return static_cast<int>(edges_.size()); }
    const std::vector<Arc>& edges() const { return edges_; }
    const std::vector<int>& neighbors(int v) const { return adj_[v]; }
    int degree(int v) const { return static_cast<int>(adj_[v].size()); }

    bool has_edge(int u, int v) const {
        if (u > v) std::swap(u, v);
        return std::binary_search(edges_.begin(), edges_.end(), Arc{u, v});
    }

    bool operator==(const UndirectedGraph& o) const { return n_ == o.n_ && edges_ == o.edges_; }

    bool connected() const {
        if (n_ <= 1) return true;
        std::vector<char> seen(n_, 0);
        std::vector<int> stack{0};
        seen[0] = 1;
        int count = 1;
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            for (int w : adj_[v])
                if (!seen[w]) {
                    seen[w] = 1;
                    ++count;
                    stack.push_back(w);
                }
        }
        return count == n_;
    }

private:
    int n_ = 0;
    std::vector<Arc> edges_;
    std::vector<std::vector<int>> adj_;
};

// --- derivations between digraphs and graphs -------------------------------

inline UndirectedGraph underlying_graph(const Digraph& d) {
    std::vector<Arc> e;
    for (const auto& [u, v] : d.arcs())
        if (u < v || !d.has_arc(v, u)) e.emplace_back(std::min(u, v), std::max(u, v));
    return UndirectedGraph(d.order(), std::move(e));
}

inline UndirectedGraph symmetric_part(const Digraph& d) {
    std::vector<Arc> e;
    for (const auto& [u, v] : d.arcs())
        if (u < v && d.has_arc(v, u)) e.emplace_back(u, v);
    return UndirectedGraph(d.order(), std::move(e));
}

inline Digraph complement(const Digraph& d) {
    std::vector<Arc> a;
    for (int u = 0; u < d.order(); ++u)
        for (int v = 0; v < d.order(); ++v)
            if (u != v && !d.has_arc(u, v)) a.emplace_back(u, v);
    return Digraph(d.order(), std::move(a));
}

inline Digraph bidirect_of(const UndirectedGraph& g) {
    std::vector<Arc> a;
    for (const auto& [u, v] : g.edges()) {
        a.emplace_back(u, v);
        a.emplace_back(v, u);
    }
    return Digraph(g.order(), std::move(a));
}

inline Digraph reverse(const Digraph& d) {
    std::vector<Arc> a;
    a.reserve(d.arcs().size());
    for (const auto& [u, v] : d.arcs()) a.emplace_back(v, u);
    return Digraph(d.order(), std::move(a));
}

// Induced subdigraph D[keep] with ascending compaction. keep must be sorted
// and duplicate-free; new vertex i corresponds to keep[i].
inline Digraph induced_subdigraph(const Digraph& d, const std::vector<int>& keep) {
    std::vector<int> pos(d.order(), -1);
    for (size_t i = 0; i < keep.size(); ++i) {
        if (keep[i] < 0 || keep[i] >= d.order()) throw VertexOutOfRange("induced vertex out of range");
        pos[keep[i]] = static_cast<int>(i);
    }
    std::vector<Arc> a;
    for (const auto& [u, v] : d.arcs())
        if (pos[u] >= 0 && pos[v] >= 0) a.emplace_back(pos[u], pos[v]);
    return Digraph(static_cast<int>(keep.size()), std::move(a));
}

inline Digraph delete_arc(const Digraph& d, int u, int v) {
    std::vector<Arc> a;
    a.reserve(d.arcs().size());
    for (const auto& arc : d.arcs())
        if (arc != Arc{u, v}) a.push_back(arc);
    return Digraph(d.order(), std::move(a));
}

inline Digraph delete_vertex(const Digraph& d, int v) {
    std::vector<int> keep;
    for (int i = 0; i < d.order(); ++i)
        if (i != v) keep.push_back(i);
    return induced_subdigraph(d, keep);
}

inline Digraph add_arc(const Digraph& d, int u, int v) {
    std::vector<Arc> a = d.arcs();
    a.emplace_back(u, v);
    return Digraph(d.order(), std::move(a));
}

// --- acyclicity and connectivity --------------------------------------------

// True iff no directed cycle of length >= 2 exists (digons count as cycles).
// Topological elimination: repeatedly strip vertices of in-degree 0.
inline bool is_acyclic(const Digraph& d) {
    int n = d.order();
    std::vector<int> indeg(n);
    for (int v = 0; v < n; ++v) indeg[v] = d.in_degree(v);
    std::vector<int> queue;
    for (int v = 0; v < n; ++v)
        if (indeg[v] == 0) queue.push_back(v);
    int removed = 0;
    while (!queue.empty()) {
        int v = queue.back();
        queue.pop_back();
        ++removed;
        for (int w : d.out_neighbors(v))
            if (--indeg[w] == 0) queue.push_back(w);
    }
    return removed == n;
}

inline bool is_weakly_connected(const Digraph& d) { return underlying_graph(d).connected(); }

inline bool is_strongly_connected(const Digraph& d) {
    int n = d.order();
    if (n <= 1) return true;
    auto reach = [n](const Digraph& g) {
        std::vector<char> seen(n, 0);
        std::vector<int> stack{0};
        seen[0] = 1;
        int count = 1;
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            for (int w : g.out_neighbors(v))
                if (!seen[w]) {
                    seen[w] = 1;
                    ++count;
                    stack.push_back(w);
                }
        }
        return count;
    };
    return reach(d) == n && reach(reverse(d)) == n;
}

// --- block decomposition -----------------------------------------------------

struct BlockDecomposition {
    std::vector<std::vector<int>> blocks;  // each sorted ascending; list sorted lex
    std::vector<int> cut_vertices;         // ascending
};

// Blocks of D are the blocks of G(D): separating vertices are defined through
// weak connectivity. Isolated vertices form singleton blocks.
inline BlockDecomposition block_decomposition(const Digraph& d) {
    UndirectedGraph g = underlying_graph(d);
    int n = g.order();
    BlockDecomposition result;
    std::vector<int> disc(n, -1), low(n, 0), parent(n, -1);
    std::vector<char> is_cut(n, 0);
    std::vector<Arc> edge_stack;
    int timer = 0;

    // Iterative Hopcroft-Tarjan; child_idx tracks progress through adjacency.
    std::vector<size_t> child_idx(n, 0);
    for (int root = 0; root < n; ++root) {
        if (disc[root] != -1) continue;
        if (g.degree(root) == 0) {
            result.blocks.push_back({root});
            disc[root] = timer++;
            continue;
        }
        std::vector<int> stack{root};
        disc[root] = low[root] = timer++;
        int root_children = 0;
        while (!stack.empty()) {
            int v = stack.back();
            if (child_idx[v] < g.neighbors(v).size()) {
                int w = g.neighbors(v)[child_idx[v]++];
                if (disc[w] == -1) {
                    edge_stack.emplace_back(v, w);
                    parent[w] = v;
                    disc[w] = low[w] = timer++;
                    if (v == root) ++root_children;
                    stack.push_back(w);
                } else if (w != parent[v] && disc[w] < disc[v]) {
                    edge_stack.emplace_back(v, w);
                    low[v] = std::min(low[v], disc[w]);
                }
            } else {
                stack.pop_back();
                if (!stack.empty()) {
                    int p = stack.back();
                    low[p] = std::min(low[p], low[v]);
                    if (low[v] >= disc[p]) {
                        if (p != root || root_children > 1) is_cut[p] = 1;
                        // edges above and including (p,v) form one block
                        std::vector<int> members;
                        Arc e;
                        do {
                            e = edge_stack.back();
                            edge_stack.pop_back();
                            members.push_back(e.first);
                            members.push_back(e.second);
                        } while (e != Arc{p, v});
                        std::sort(members.begin(), members.end());
                        members.erase(std::unique(members.begin(), members.end()), members.end());
                        result.blocks.push_back(std::move(members));
                    }
                }
            }
        }
    }
    std::sort(result.blocks.begin(), result.blocks.end());
    for (int v = 0; v < n; ++v)
        if (is_cut[v]) result.cut_vertices.push_back(v);
    return result;
}

}  // namespace dichro

#endif
