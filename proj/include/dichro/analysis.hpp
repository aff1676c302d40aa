// Structure checkers: Eulerian test, block classification of the low-vertex
// subdigraph, perfect-digraph tests (forbidden structures against the
// brute-force definition) and the critical arc bound.

#ifndef DICHRO_ANALYSIS_HPP
#define DICHRO_ANALYSIS_HPP

#include <optional>
#include <variant>

#include "dichro/coloring.hpp"
#include "dichro/digraph.hpp"
#include "dichro/iso.hpp"
#include "dichro/rational.hpp"

namespace dichro {

struct NotABlock : Error {
    explicit NotABlock(const std::string& msg) : Error(msg) {}
};
struct NotCritical : Error {
    explicit NotCritical(const std::string& msg) : Error(msg) {}
};

inline bool is_eulerian_vertex(const Digraph& d, int v) { return d.out_degree(v) == d.in_degree(v); }

inline bool is_eulerian(const Digraph& d) {
    for (int v = 0; v < d.order(); ++v)
        if (!is_eulerian_vertex(d, v)) return false;
    return true;
}

// --- Gallai block classification --------------------------------------------

enum class BlockClassKind {
    SingleVertex,
    SingleArc,
    DirectedCycle,
    BidirectedOddCycle,
    BidirectedComplete,
    Other,
};

struct BlockClass {
    BlockClassKind kind = BlockClassKind::Other;
    int size = 0;  // cycle length or clique order, 0 otherwise

    bool operator==(const BlockClass& o) const { return kind == o.kind && size == o.size; }
};

inline std::string block_class_name(const BlockClass& c) {
    switch (c.kind) {
        case BlockClassKind::SingleVertex: return "SingleVertex";
        case BlockClassKind::SingleArc: return "SingleArc";
        case BlockClassKind::DirectedCycle: return "DirectedCycle(" + std::to_string(c.size) + ")";
        case BlockClassKind::BidirectedOddCycle:
            return "BidirectedOddCycle(" + std::to_string(c.size) + ")";
        case BlockClassKind::BidirectedComplete:
            return "BidirectedComplete(" + std::to_string(c.size) + ")";
        case BlockClassKind::Other: return "Other";
    }
    return "Other";
}

namespace detail {

inline bool is_directed_cycle_digraph(const Digraph& h) {
    int n = h.order();
    if (n < 2 || h.arc_count() != n) return false;
    for (int v = 0; v < n; ++v)
        if (h.out_degree(v) != 1 || h.in_degree(v) != 1) return false;
    return is_strongly_connected(h);
}

inline bool is_bidirected_complete_digraph(const Digraph& h) {
    int n = h.order();
    return h.arc_count() == n * (n - 1) && n >= 1;
}

inline bool is_bidirected_cycle_digraph(const Digraph& h) {
    int n = h.order();
    if (n < 3 || h.arc_count() != 2 * n) return false;
    UndirectedGraph s = symmetric_part(h);
    if (s.edge_count() != n) return false;
    for (int v = 0; v < n; ++v)
        if (s.degree(v) != 2) return false;
    return s.connected();
}

// Exact pattern match on an induced subdigraph. A digon satisfies both
// "directed cycle of length 2" and "bidirected complete of order 2"; it is
// reported as BidirectedComplete(2) to keep the classes exclusive. Likewise a
// bidirected triangle reports as BidirectedComplete(3).
inline BlockClass classify_induced(const Digraph& h) {
    int n = h.order();
    if (n == 1) return {BlockClassKind::SingleVertex, 1};
    if (n == 2 && h.arc_count() == 1) return {BlockClassKind::SingleArc, 2};
    if (is_bidirected_complete_digraph(h)) return {BlockClassKind::BidirectedComplete, n};
    if (is_directed_cycle_digraph(h)) return {BlockClassKind::DirectedCycle, n};
    if (n % 2 == 1 && is_bidirected_cycle_digraph(h)) return {BlockClassKind::BidirectedOddCycle, n};
    return {BlockClassKind::Other, n};
}

}  // namespace detail

inline BlockClass classify_block(const Digraph& d, const std::vector<int>& block) {
    BlockDecomposition dec = block_decomposition(d);
    std::vector<int> sorted_block = block;
    std::sort(sorted_block.begin(), sorted_block.end());
    bool found = false;
    for (const auto& b : dec.blocks)
        if (b == sorted_block) {
            found = true;
            break;
        }
    if (!found) throw NotABlock("vertex set is not a block of the digraph");
    return detail::classify_induced(induced_subdigraph(d, sorted_block));
}

struct GallaiBlockReport {
    std::vector<int> block;  // original vertex labels of D
    BlockClass cls;
};

// Classify every block of the low-vertex subdigraph of a k-critical digraph.
inline std::vector<GallaiBlockReport> gallai_check(const Digraph& d, int k) {
    if (!is_k_critical(d, k)) throw NotCritical("digraph is not " + std::to_string(k) + "-critical");
    LowVertexSubdigraph low = low_vertex_subdigraph(d, k);
    BlockDecomposition dec = block_decomposition(low.induced);
    std::vector<GallaiBlockReport> out;
    for (const auto& b : dec.blocks) {
        GallaiBlockReport r;
        r.cls = detail::classify_induced(induced_subdigraph(low.induced, b));
        for (int v : b) r.block.push_back(low.low_set[v]);
        out.push_back(std::move(r));
    }
    return out;
}

// --- perfect digraphs --------------------------------------------------------

enum class WitnessKind { FilledOddHole, FilledOddAntihole, InducedDirectedCycle };

struct PerfectnessVerdict {
    bool perfect = true;
    std::optional<WitnessKind> witness_kind;
    std::vector<int> witness;  // vertex subset, ascending
};

inline std::string witness_kind_name(WitnessKind k) {
    switch (k) {
        case WitnessKind::FilledOddHole: return "FilledOddHole";
        case WitnessKind::FilledOddAntihole: return "FilledOddAntihole";
        case WitnessKind::InducedDirectedCycle: return "InducedDirectedCycle";
    }
    return "?";
}

namespace detail {

inline bool graph_is_cycle(const UndirectedGraph& g) {
    int n = g.order();
    if (n < 3 || g.edge_count() != n) return false;
    for (int v = 0; v < n; ++v)
        if (g.degree(v) != 2) return false;
    return g.connected();
}

inline UndirectedGraph graph_complement(const UndirectedGraph& g) {
    std::vector<Arc> e;
    for (int u = 0; u < g.order(); ++u)
        for (int v = u + 1; v < g.order(); ++v)
            if (!g.has_edge(u, v)) e.emplace_back(u, v);
    return UndirectedGraph(g.order(), std::move(e));
}

// S(H) must be an odd cycle of length >= 5 on all of H; asymmetric arcs
// inside H are unrestricted.
inline bool is_filled_odd_hole(const Digraph& h) {
    if (h.order() < 5 || h.order() % 2 == 0) return false;
    return graph_is_cycle(symmetric_part(h));
}

inline bool is_filled_odd_antihole(const Digraph& h) {
    if (h.order() < 5 || h.order() % 2 == 0) return false;
    return graph_is_cycle(graph_complement(symmetric_part(h)));
}

inline bool is_induced_directed_cycle(const Digraph& h) {
    return h.order() >= 3 && is_directed_cycle_digraph(h);
}

template <typename F>
bool scan_subsets_lex(int n, int min_size, F&& visit) {
    // Depth-first extension enumerates subsets in lexicographic order of
    // their sorted vertex lists, giving a deterministic first witness.
    std::vector<int> current;
    auto rec = [&](auto&& self, int next) -> bool {
        if (static_cast<int>(current.size()) >= min_size && visit(current)) return true;
        for (int v = next; v < n; ++v) {
            current.push_back(v);
            if (self(self, v + 1)) return true;
            current.pop_back();
        }
        return false;
    };
    return rec(rec, 0);
}

}  // namespace detail

inline constexpr int kScanOrderLimit = 10;

// Searches all induced subdigraphs for a filled odd hole, a filled odd
// antihole, or an induced directed cycle of length >= 3. Digons are directed
// cycles of length 2 but are explicitly allowed; the scan starts at length 3.
inline PerfectnessVerdict forbidden_structure_scan(const Digraph& d) {
    if (d.order() > kScanOrderLimit)
        throw SizeLimitExceeded("forbidden_structure_scan capped at order " +
                                std::to_string(kScanOrderLimit));
    PerfectnessVerdict verdict;
    detail::scan_subsets_lex(d.order(), 3, [&](const std::vector<int>& subset) {
        Digraph h = induced_subdigraph(d, subset);
        std::optional<WitnessKind> kind;
        if (detail::is_filled_odd_hole(h))
            kind = WitnessKind::FilledOddHole;
        else if (detail::is_filled_odd_antihole(h))
            kind = WitnessKind::FilledOddAntihole;
        else if (detail::is_induced_directed_cycle(h))
            kind = WitnessKind::InducedDirectedCycle;
        if (kind) {
            verdict.perfect = false;
            verdict.witness_kind = kind;
            verdict.witness = subset;
            return true;
        }
        return false;
    });
    return verdict;
}

// Re-validate a witness against its kind's definition.
inline bool validate_witness(const Digraph& d, WitnessKind kind, const std::vector<int>& subset) {
    Digraph h = induced_subdigraph(d, subset);
    switch (kind) {
        case WitnessKind::FilledOddHole: return detail::is_filled_odd_hole(h);
        case WitnessKind::FilledOddAntihole: return detail::is_filled_odd_antihole(h);
        case WitnessKind::InducedDirectedCycle: return detail::is_induced_directed_cycle(h);
    }
    return false;
}

inline constexpr int kPerfectBruteforceLimit = 8;

// Definition check: chi(H) = omega(H) for every induced subdigraph H.
inline bool is_perfect_bruteforce(const Digraph& d) {
    if (d.order() > kPerfectBruteforceLimit)
        throw SizeLimitExceeded("is_perfect_bruteforce capped at order " +
                                std::to_string(kPerfectBruteforceLimit));
    bool perfect = true;
    detail::scan_subsets_lex(d.order(), 1, [&](const std::vector<int>& subset) {
        Digraph h = induced_subdigraph(d, subset);
        if (dichromatic_number(h) != clique_number(h)) {
            perfect = false;
            return true;
        }
        return false;
    });
    return perfect;
}

// --- critical arc bound -------------------------------------------------------

// R(k) = 2k + (2k-2)/((2k+1)^2 - 3) as an exact rational.
inline Rational gallai_bound_coefficient(int k) {
    if (k < 1) throw BadParameter("bound coefficient requires k >= 1");
    std::int64_t kk = k;
    return Rational(2 * kk) + Rational(2 * kk - 2, (2 * kk + 1) * (2 * kk + 1) - 3);
}

inline Rational gallai_arc_bound(int k, int n) {
    if (n < 0) throw BadParameter("negative order");
    return gallai_bound_coefficient(k) * Rational(n);
}

enum class ArcBoundStatus { Holds, Fails, NotApplicable };

// Verifies 2|A(D)| >= R(k) * |D| for a (k+1)-critical digon-free D other than
// the complete digraph on k+1 vertices. Hypothesis violations report
// NotApplicable; criticality is verified when the solver bound allows.
inline ArcBoundStatus check_arc_bound(const Digraph& d, int k) {
    if (k < 3) throw BadParameter("arc bound regime requires k >= 3");
    // A digon in D (and in particular D = complete digraph) leaves the regime.
    if (symmetric_part(d).edge_count() > 0) return ArcBoundStatus::NotApplicable;
    if (d.order() <= 10 && !is_k_critical(d, k + 1)) return ArcBoundStatus::NotApplicable;
    Rational lhs(2 * static_cast<std::int64_t>(d.arc_count()));
    return lhs >= gallai_arc_bound(k, d.order()) ? ArcBoundStatus::Holds : ArcBoundStatus::Fails;
}

}  // namespace dichro

#endif
