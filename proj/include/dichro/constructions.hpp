// The construction calculus: Dirac join, directed and bidirected Hajos joins,
// identification of independent sets, directed and bidirected Ore joins, and
// the pendant gadget families.
//
// Every operation publishes a deterministic relabeling map. Conventions:
//   - hajos-style joins: operand 1's vertices except v1 occupy 0..n1-2 in
//     ascending original order, the merged vertex sits at n1-1, operand 2's
//     vertices except v2 follow ascending at n1..n1+n2-2;
//   - identification: the merged vertex takes the compacted position of
//     min(I), remaining vertices keep ascending order;
//   - ore joins identify pairs one at a time in ascending order of the
//     operand-1 vertex.

#ifndef DICHRO_CONSTRUCTIONS_HPP
#define DICHRO_CONSTRUCTIONS_HPP

#include "dichro/digraph.hpp"

namespace dichro {

struct MissingArc : Error {
    explicit MissingArc(const std::string& msg) : Error(msg) {}
};
struct MissingDigon : Error {
    explicit MissingDigon(const std::string& msg) : Error(msg) {}
};
struct SameVertex : Error {
    explicit SameVertex(const std::string& msg) : Error(msg) {}
};
struct NotIndependent : Error {
    explicit NotIndependent(const std::string& msg) : Error(msg) {}
};
struct EmptySet : Error {
    explicit EmptySet(const std::string& msg) : Error(msg) {}
};
struct BadBijection : Error {
    explicit BadBijection(const std::string& msg) : Error(msg) {}
};

struct JoinResult {
    Digraph result;
    std::vector<int> map1;  // operand-1 vertex -> result vertex
    std::vector<int> map2;  // operand-2 vertex -> result vertex
};

// Result of identifying a vertex set: relabel[v] is v's image.
struct IdentifyResult {
    Digraph result;
    std::vector<int> relabel;
};

// Disjoint union plus all cross arcs in both directions.
inline JoinResult dirac_join(const Digraph& d1, const Digraph& d2) {
    int n1 = d1.order(), n2 = d2.order();
    std::vector<Arc> arcs = d1.arcs();
    for (const auto& [u, v] : d2.arcs()) arcs.emplace_back(u + n1, v + n1);
    for (int u = 0; u < n1; ++u)
        for (int v = 0; v < n2; ++v) {
            arcs.emplace_back(u, v + n1);
            arcs.emplace_back(v + n1, u);
        }
    JoinResult r{Digraph(n1 + n2, std::move(arcs)), {}, {}};
    for (int v = 0; v < n1; ++v) r.map1.push_back(v);
    for (int v = 0; v < n2; ++v) r.map2.push_back(v + n1);
    return r;
}

namespace detail {

// Shared labeling for both Hajos joins: merge v1 with v2, keep everything
// else in ascending order.
inline JoinResult merge_join(const Digraph& d1, int v1, const Digraph& d2, int v2,
                             const std::vector<Arc>& drop1, const std::vector<Arc>& drop2,
                             const std::vector<Arc>& add_cross) {
    int n1 = d1.order(), n2 = d2.order();
    JoinResult r;
    r.map1.assign(n1, -1);
    r.map2.assign(n2, -1);
    int next = 0;
    for (int v = 0; v < n1; ++v)
        if (v != v1) r.map1[v] = next++;
    r.map1[v1] = next;
    r.map2[v2] = next;
    ++next;
    for (int v = 0; v < n2; ++v)
        if (v != v2) r.map2[v] = next++;

    auto dropped = [](const std::vector<Arc>& drops, const Arc& a) {
        for (const auto& x : drops)
            if (x == a) return true;
        return false;
    };
    std::vector<Arc> arcs;
    for (const auto& a : d1.arcs())
        if (!dropped(drop1, a)) arcs.emplace_back(r.map1[a.first], r.map1[a.second]);
    for (const auto& a : d2.arcs())
        if (!dropped(drop2, a)) arcs.emplace_back(r.map2[a.first], r.map2[a.second]);
    for (const auto& a : add_cross) arcs.push_back(a);
    r.result = Digraph(n1 + n2 - 1, std::move(arcs));
    return r;
}

}  // namespace detail

// Directed Hajos join (D1,v1,u1) del (D2,v2,u2): delete the arcs u1v1 and
// v2u2, identify v1 with v2, add the arc u1u2.
inline JoinResult hajos_join(const Digraph& d1, int v1, int u1, const Digraph& d2, int v2, int u2) {
    if (v1 == u1 || v2 == u2) throw SameVertex("hajos join endpoints must differ");
    if (!d1.has_arc(u1, v1))
        throw MissingArc("operand 1 lacks arc (" + std::to_string(u1) + "," + std::to_string(v1) + ")");
    if (!d2.has_arc(v2, u2))
        throw MissingArc("operand 2 lacks arc (" + std::to_string(v2) + "," + std::to_string(u2) + ")");
    JoinResult r = detail::merge_join(d1, v1, d2, v2, {{u1, v1}}, {{v2, u2}}, {});
    r.result = add_arc(r.result, r.map1[u1], r.map2[u2]);
    return r;
}

// Bidirected Hajos join: both operand pairs must induce digons; all four arcs
// are deleted and the digon u1u2/u2u1 is added.
inline JoinResult bidirected_hajos_join(const Digraph& d1, int v1, int u1, const Digraph& d2, int v2,
                                        int u2) {
    if (v1 == u1 || v2 == u2) throw SameVertex("bidirected hajos join endpoints must differ");
    if (!d1.has_digon(u1, v1)) throw MissingDigon("operand 1 lacks digon {u1,v1}");
    if (!d2.has_digon(u2, v2)) throw MissingDigon("operand 2 lacks digon {u2,v2}");
    JoinResult r =
        detail::merge_join(d1, v1, d2, v2, {{u1, v1}, {v1, u1}}, {{u2, v2}, {v2, u2}}, {});
    r.result = add_arc(r.result, r.map1[u1], r.map2[u2]);
    r.result = add_arc(r.result, r.map2[u2], r.map1[u1]);
    return r;
}

// Identify a non-empty independent set I with one vertex placed at the
// compacted position of min(I).
inline IdentifyResult identify(const Digraph& d, std::vector<int> I) {
    if (I.empty()) throw EmptySet("identification set is empty");
    std::sort(I.begin(), I.end());
    I.erase(std::unique(I.begin(), I.end()), I.end());
    for (int v : I)
        if (v < 0 || v >= d.order()) throw VertexOutOfRange("identification vertex out of range");
    for (size_t i = 0; i < I.size(); ++i)
        for (size_t j = i + 1; j < I.size(); ++j)
            if (d.adjacent(I[i], I[j]))
                throw NotIndependent("vertices " + std::to_string(I[i]) + " and " + std::to_string(I[j]) +
                                     " are adjacent");
    std::vector<char> in_set(d.order(), 0);
    for (int v : I) in_set[v] = 1;
    IdentifyResult r;
    r.relabel.assign(d.order(), -1);
    int next = 0, merged = -1;
    for (int v = 0; v < d.order(); ++v) {
        if (in_set[v]) {
            if (v == I[0]) merged = next++;
        } else {
            r.relabel[v] = next++;
        }
    }
    for (int v : I) r.relabel[v] = merged;
    std::vector<Arc> arcs;
    for (const auto& [u, v] : d.arcs()) arcs.emplace_back(r.relabel[u], r.relabel[v]);
    r.result = Digraph(d.order() - static_cast<int>(I.size()) + 1, std::move(arcs));
    return r;
}

enum class JoinKind { Directed, Bidirected };

// Ore join: the kind's Hajos join followed by identifying w with iota(w) for
// each w in ascending order. iota maps vertices of D1 - v1 injectively into
// V(D2) - v2 with iota(u1) != u2. Each pair is non-adjacent at its
// identification step; this is guaranteed structurally but still checked.
inline JoinResult ore_join(JoinKind kind, const Digraph& d1, int v1, int u1, const Digraph& d2, int v2,
                           int u2, const std::vector<std::pair<int, int>>& iota) {
    std::vector<char> dom_seen(d1.order(), 0), cod_seen(d2.order(), 0);
    for (const auto& [w, x] : iota) {
        if (w < 0 || w >= d1.order() || x < 0 || x >= d2.order())
            throw BadBijection("iota endpoint out of range");
        if (w == v1) throw BadBijection("iota domain may not contain v1");
        if (x == v2) throw BadBijection("iota codomain may not contain v2");
        if (dom_seen[w] || cod_seen[x]) throw BadBijection("iota is not injective");
        dom_seen[w] = cod_seen[x] = 1;
        if (w == u1 && x == u2) throw BadBijection("iota(u1) = u2 is forbidden");
    }
    JoinResult r = kind == JoinKind::Directed ? hajos_join(d1, v1, u1, d2, v2, u2)
                                              : bidirected_hajos_join(d1, v1, u1, d2, v2, u2);
    auto pairs = iota;
    std::sort(pairs.begin(), pairs.end());
    for (const auto& [w, x] : pairs) {
        IdentifyResult step = identify(r.result, {r.map1[w], r.map2[x]});
        r.result = step.result;
        for (auto& m : r.map1) m = step.relabel[m];
        for (auto& m : r.map2) m = step.relabel[m];
    }
    return r;
}

enum class GadgetKind { KkPlusArc, KkPlusOutVertex, KkPlusInVertex, KkPlusIsolated };

// Pendant structures used by the Ore-derivation machinery; the pendant always
// hangs on clique vertex 0.
inline Digraph gadget(GadgetKind kind, int k) {
    if (k < 3) throw BadParameter("gadget requires k >= 3");
    Digraph kk = Digraph::bidirected_complete(k);
    std::vector<Arc> a = kk.arcs();
    switch (kind) {
        case GadgetKind::KkPlusArc:
            a.emplace_back(k, k + 1);
            return Digraph(k + 2, std::move(a));
        case GadgetKind::KkPlusOutVertex:
            a.emplace_back(0, k);
            return Digraph(k + 1, std::move(a));
        case GadgetKind::KkPlusInVertex:
            a.emplace_back(k, 0);
            return Digraph(k + 1, std::move(a));
        case GadgetKind::KkPlusIsolated:
            return Digraph(k + 1, std::move(a));
    }
    throw BadParameter("unknown gadget kind");
}

}  // namespace dichro

#endif
