// Brute-force digraph isomorphism and canonical forms at desk scale.
//
// canonical_form(D) is the lexicographically minimal sorted arc sequence over
// all vertex relabelings. Two digraphs of equal order are isomorphic iff their
// canonical forms coincide. Both routines are capped at order 12; the objects
// of interest here are tiny and a full canonical-labeling engine is not worth
// its weight.

#ifndef DICHRO_ISO_HPP
#define DICHRO_ISO_HPP

#include <array>
#include <optional>

#include "dichro/digraph.hpp"

namespace dichro {

inline constexpr int kIsoOrderLimit = 12;

namespace detail {

// Transpositions (v w) that are automorphisms let us skip symmetric branches.
inline bool swap_is_automorphism(const Digraph& d, int v, int w) {
    for (int x = 0; x < d.order(); ++x) {
        if (x == v || x == w) continue;
        if (d.has_arc(v, x) != d.has_arc(w, x)) return false;
        if (d.has_arc(x, v) != d.has_arc(x, w)) return false;
    }
    return d.has_arc(v, w) == d.has_arc(w, v);
}

struct CanonSearch {
    const Digraph* d;
    int n;
    std::vector<int> place;     // place[i] = original vertex assigned new label i
    std::vector<char> used;
    std::vector<Arc> best;
    bool have_best = false;

    // Sorted arc sequence of the relabeled digraph restricted to its fully
    // determined prefix: row u is complete once all out-arcs of place[u] go to
    // placed vertices. Rows after the first incomplete row are undetermined.
    // Returns false if the partial sequence already proves the branch cannot
    // beat best.
    bool viable(int t, std::vector<int>& newlabel) const {
        if (!have_best) return true;
        size_t pos = 0;
        for (int u = 0; u < t; ++u) {
            std::vector<int> targets;
            int known = 0;
            for (int x : d->out_neighbors(place[u])) {
                if (newlabel[x] >= 0) {
                    targets.push_back(newlabel[x]);
                    ++known;
                }
            }
            std::sort(targets.begin(), targets.end());
            for (int tv : targets) {
                if (pos >= best.size()) return false;  // longer prefix than best: impossible, m equal
                Arc cand{u, tv};
                if (cand < best[pos]) return true;   // strictly better so far
                if (best[pos] < cand) return false;  // strictly worse
                ++pos;
            }
            if (known < d->out_degree(place[u])) {
                // Row u incomplete: next arc of any completion is >= (u, t).
                if (pos >= best.size()) return false;
                Arc bound{u, t};
                return !(best[pos] < bound);
            }
        }
        return true;
    }

    void finish() {
        std::vector<Arc> seq;
        seq.reserve(d->arcs().size());
        std::vector<int> newlabel(n, -1);
        for (int i = 0; i < n; ++i) newlabel[place[i]] = i;
        for (const auto& [u, v] : d->arcs()) seq.emplace_back(newlabel[u], newlabel[v]);
        std::sort(seq.begin(), seq.end());
        if (!have_best || seq < best) {
            best = std::move(seq);
            have_best = true;
        }
    }

    void run(int t, std::vector<int>& newlabel) {
        if (t == n) {
            finish();
            return;
        }
        std::vector<int> tried;
        for (int v = 0; v < n; ++v) {
            if (used[v]) continue;
            bool redundant = false;
            for (int w : tried)
                if (swap_is_automorphism(*d, w, v)) {
                    redundant = true;
                    break;
                }
            if (redundant) continue;
            tried.push_back(v);
            place[t] = v;
            used[v] = 1;
            newlabel[v] = t;
            if (viable(t + 1, newlabel)) run(t + 1, newlabel);
            newlabel[v] = -1;
            used[v] = 0;
        }
    }
};

}  // namespace detail

inline std::vector<Arc> canonical_form(const Digraph& d) {
    if (d.order() > kIsoOrderLimit)
        throw SizeLimitExceeded("canonical_form capped at order " + std::to_string(kIsoOrderLimit));
    detail::CanonSearch s;
    s.d = &d;
    s.n = d.order();
    s.place.assign(s.n, -1);
    s.used.assign(s.n, 0);
    std::vector<int> newlabel(s.n, -1);
    s.run(0, newlabel);
    return s.best;
}

inline Digraph canonical_copy(const Digraph& d) { return Digraph(d.order(), canonical_form(d)); }

// Vertex bijection mapping A onto B, if one exists. map[a-vertex] = b-vertex.
inline std::optional<std::vector<int>> find_isomorphism(const Digraph& a, const Digraph& b) {
    if (a.order() != b.order()) return std::nullopt;  // OrderMismatch: fast false
    int n = a.order();
    if (n > kIsoOrderLimit)
        throw SizeLimitExceeded("is_isomorphic capped at order " + std::to_string(kIsoOrderLimit));
    if (a.arc_count() != b.arc_count()) return std::nullopt;

    auto degree_profile = [](const Digraph& d) {
        std::vector<Arc> p(d.order());
        for (int v = 0; v < d.order(); ++v) p[v] = {d.out_degree(v), d.in_degree(v)};
        auto sorted = p;
        std::sort(sorted.begin(), sorted.end());
        return std::pair{p, sorted};
    };
    auto [pa, sa] = degree_profile(a);
    auto [pb, sb] = degree_profile(b);
    if (sa != sb) return std::nullopt;

    std::vector<int> map(n, -1), rmap(n, -1);
    // DFS over a-vertices in ascending order; adjacency consistency with all
    // previously mapped vertices prunes early.
    auto consistent = [&](int av, int bv) {
        if (pa[av] != pb[bv]) return false;
        for (int x = 0; x < n; ++x) {
            if (map[x] < 0 || x == av) continue;
            if (a.has_arc(av, x) != b.has_arc(bv, map[x])) return false;
            if (a.has_arc(x, av) != b.has_arc(map[x], bv)) return false;
        }
        return true;
    };
    std::vector<int> choice(n, -1);
    int v = 0;
    while (v >= 0 && v < n) {
        int start = choice[v] + 1;
        int found = -1;
        for (int bv = start; bv < n; ++bv) {
            if (rmap[bv] >= 0) continue;
            if (consistent(v, bv)) {
                found = bv;
                break;
            }
        }
        if (found >= 0) {
            choice[v] = found;
            map[v] = found;
            rmap[found] = v;
            ++v;
            if (v < n) choice[v] = -1;
        } else {
            choice[v] = -1;
            --v;
            if (v >= 0) {
                rmap[map[v]] = -1;
                map[v] = -1;
            }
        }
    }
    if (v < 0) return std::nullopt;
    return map;
}

inline bool is_isomorphic(const Digraph& a, const Digraph& b) { return find_isomorphism(a, b).has_value(); }

}  // namespace dichro

#endif
