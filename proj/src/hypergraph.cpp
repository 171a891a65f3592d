#include "hyperlag/hypergraph.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <limits>
#include <numeric>

namespace hyperlag {

bool colex_less(const Edge& a, const Edge& b) {
    // Compare from the largest element down.
    auto ia = a.rbegin(), ib = b.rbegin();
    for (; ia != a.rend() && ib != b.rend(); ++ia, ++ib) {
        if (*ia != *ib) return *ia < *ib;
    }
    return a.size() < b.size();
}

std::uint64_t edge_mask(const Edge& e) {
    std::uint64_t m = 0;
    for (int v : e) {
        if (v < 1 || v > 64) throw std::invalid_argument("edge_mask: vertex out of [1,64]");
        m |= std::uint64_t{1} << (v - 1);
    }
    return m;
}

Edge edge_from_mask(std::uint64_t mask) {
    Edge e;
    while (mask) {
        int b = std::countr_zero(mask);
        e.push_back(b + 1);
        mask &= mask - 1;
    }
    return e;
}

namespace {

void validate_edge(const Edge& e, int n, int r, const char* who) {
    if (static_cast<int>(e.size()) != r)
        throw std::invalid_argument(std::string(who) + ": edge arity mismatch");
    for (std::size_t i = 0; i < e.size(); ++i) {
        if (e[i] < 1 || e[i] > n)
            throw std::invalid_argument(std::string(who) + ": vertex out of range");
        if (i > 0 && e[i] <= e[i - 1])
            throw std::invalid_argument(std::string(who) + ": edge not strictly increasing");
    }
}

}  // namespace

Hypergraph::Hypergraph(int n, int r, std::vector<Edge> edges)
    : n_(n), r_(r), edges_(std::move(edges)) {
    if (n < 0) throw std::invalid_argument("Hypergraph: negative vertex count");
    if (r < 1) throw std::invalid_argument("Hypergraph: arity must be >= 1");
    for (auto& e : edges_) validate_edge(e, n_, r_, "Hypergraph");
    std::sort(edges_.begin(), edges_.end(), colex_less);
    auto dup = std::adjacent_find(edges_.begin(), edges_.end());
    if (dup != edges_.end()) throw std::invalid_argument("Hypergraph: duplicate edge");
}

bool Hypergraph::has_edge(const Edge& e) const {
    return std::binary_search(edges_.begin(), edges_.end(), e, colex_less);
}

std::vector<std::uint64_t> Hypergraph::edge_masks() const {
    if (n_ > 64) throw std::invalid_argument("edge_masks: n > 64");
    std::vector<std::uint64_t> out;
    out.reserve(edges_.size());
    for (auto& e : edges_) out.push_back(edge_mask(e));
    return out;
}

int Hypergraph::degree(int v) const {
    if (v < 1 || v > n_) throw std::out_of_range("degree: vertex out of range");
    int d = 0;
    for (auto& e : edges_)
        if (std::binary_search(e.begin(), e.end(), v)) ++d;
    return d;
}

std::vector<int> Hypergraph::degree_sequence() const {
    std::vector<int> d(n_, 0);
    for (auto& e : edges_)
        for (int v : e) ++d[v - 1];
    return d;
}

namespace {

// Relabel {1..n} minus {v} onto {1..n-1}, preserving order.
RelabelMap drop_vertex_map(int n, int v) {
    RelabelMap map;
    map.old_label.reserve(n - 1);
    for (int w = 1; w <= n; ++w)
        if (w != v) map.old_label.push_back(w);
    return map;
}

Edge relabel_drop(const Edge& e, int v) {
    Edge out;
    out.reserve(e.size());
    for (int w : e) out.push_back(w < v ? w : w - 1);
    return out;
}

}  // namespace

std::pair<Hypergraph, RelabelMap> Hypergraph::link(int v) const {
    if (v < 1 || v > n_) throw std::out_of_range("link: vertex out of range");
    if (r_ < 2) throw std::invalid_argument("link: arity must be >= 2");
    std::vector<Edge> out;
    for (auto& e : edges_) {
        if (!std::binary_search(e.begin(), e.end(), v)) continue;
        Edge f;
        f.reserve(r_ - 1);
        for (int w : e)
            if (w != v) f.push_back(w);
        out.push_back(relabel_drop(f, v));
    }
    return {Hypergraph(n_ - 1, r_ - 1, std::move(out)), drop_vertex_map(n_, v)};
}

std::pair<Hypergraph, RelabelMap> Hypergraph::delete_vertex(int v) const {
    if (v < 1 || v > n_) throw std::out_of_range("delete_vertex: vertex out of range");
    std::vector<Edge> out;
    for (auto& e : edges_) {
        if (std::binary_search(e.begin(), e.end(), v)) continue;
        out.push_back(relabel_drop(e, v));
    }
    return {Hypergraph(n_ - 1, r_, std::move(out)), drop_vertex_map(n_, v)};
}

SetFamily::SetFamily(int arity, std::vector<Edge> sets) : k(arity), members(std::move(sets)) {
    if (k < 0) throw std::invalid_argument("SetFamily: negative arity");
    for (auto& e : members) {
        if (static_cast<int>(e.size()) != k)
            throw std::invalid_argument("SetFamily: arity mismatch");
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (e[i] < 1) throw std::invalid_argument("SetFamily: nonpositive element");
            if (i > 0 && e[i] <= e[i - 1])
                throw std::invalid_argument("SetFamily: set not strictly increasing");
        }
    }
    std::sort(members.begin(), members.end(), colex_less);
    members.erase(std::unique(members.begin(), members.end()), members.end());
}

SetFamily shadow(const SetFamily& family) {
    if (family.k < 1) throw std::invalid_argument("shadow: arity must be >= 1");
    std::vector<Edge> out;
    for (auto& e : family.members) {
        for (std::size_t drop = 0; drop < e.size(); ++drop) {
            Edge f;
            f.reserve(e.size() - 1);
            for (std::size_t i = 0; i < e.size(); ++i)
                if (i != drop) f.push_back(e[i]);
            out.push_back(std::move(f));
        }
    }
    return SetFamily(family.k - 1, std::move(out));
}

namespace {

// All r-subsets of {1..s}, generated in colex order.
std::vector<Edge> all_r_sets(int s, int r) {
    std::vector<Edge> out;
    if (r > s || r < 1) return out;
    Edge cur(r);
    std::iota(cur.begin(), cur.end(), 1);
    while (true) {
        out.push_back(cur);
        // next colex r-set over an unbounded ground set; stop at max < s+1
        int i = 0;
        while (i + 1 < r && cur[i] + 1 == cur[i + 1]) ++i;
        if (cur[i] + 1 > s && i == r - 1) break;
        ++cur[i];
        for (int j = 0; j < i; ++j) cur[j] = j + 1;
        if (cur[r - 1] > s) break;
    }
    return out;
}

}  // namespace

Hypergraph complete(int s, int r) {
    if (s < r) throw std::invalid_argument("complete: need s >= r");
    return Hypergraph(s, r, all_r_sets(s, r));
}

Hypergraph colex_prefix(int m, int r) {
    if (m < 0) throw std::invalid_argument("colex_prefix: negative m");
    if (r < 1) throw std::invalid_argument("colex_prefix: arity must be >= 1");
    if (m == 0) return Hypergraph(0, r, {});
    std::vector<Edge> edges;
    edges.reserve(m);
    Edge cur(r);
    std::iota(cur.begin(), cur.end(), 1);
    int n = r;
    for (int taken = 0; taken < m; ++taken) {
        edges.push_back(cur);
        n = std::max(n, cur[r - 1]);
        int i = 0;
        while (i + 1 < r && cur[i] + 1 == cur[i + 1]) ++i;
        ++cur[i];
        for (int j = 0; j < i; ++j) cur[j] = j + 1;
    }
    return Hypergraph(n, r, std::move(edges));
}

namespace {

// Link sets of v and the edge set of H - v, both in ORIGINAL labels.
struct Split {
    std::vector<Edge> link_sets;   // (r-1)-sets, colex-sorted
    std::vector<Edge> rest_edges;  // r-sets avoiding v, colex-sorted
};

Split split_at(const Hypergraph& h, int v) {
    Split s;
    for (auto& e : h.edges()) {
        if (std::binary_search(e.begin(), e.end(), v)) {
            Edge f;
            for (int w : e)
                if (w != v) f.push_back(w);
            s.link_sets.push_back(std::move(f));
        } else {
            s.rest_edges.push_back(e);
        }
    }
    return s;
}

}  // namespace

bool shadow_contained(const Hypergraph& h, int v) {
    if (v < 1 || v > h.vertex_count()) throw std::out_of_range("shadow_contained: vertex out of range");
    Split s = split_at(h, v);
    if (s.rest_edges.empty()) return true;
    SetFamily rest(h.arity(), std::move(s.rest_edges));
    SetFamily sh = shadow(rest);
    for (auto& f : sh.members) {
        if (!std::binary_search(s.link_sets.begin(), s.link_sets.end(), f, colex_less))
            return false;
    }
    return true;
}

ShiftResult shift_edge(const Hypergraph& h, int v) {
    if (v < 1 || v > h.vertex_count()) throw std::out_of_range("shift_edge: vertex out of range");
    Split s = split_at(h, v);
    if (s.rest_edges.empty()) return {false, h, {}, {}};
    SetFamily rest(h.arity(), s.rest_edges);
    SetFamily sh = shadow(rest);
    // Colex-least (r-1)-set in the shadow of E(H-v) missing from the link.
    const Edge* f = nullptr;
    for (auto& cand : sh.members) {
        if (!std::binary_search(s.link_sets.begin(), s.link_sets.end(), cand, colex_less)) {
            f = &cand;
            break;
        }
    }
    if (!f) return {false, h, {}, {}};
    // Least witness u with f u {u} an edge of H - v.
    for (int u = 1; u <= h.vertex_count(); ++u) {
        if (u == v || std::binary_search(f->begin(), f->end(), u)) continue;
        Edge withu = *f;
        withu.insert(std::upper_bound(withu.begin(), withu.end(), u), u);
        if (!std::binary_search(s.rest_edges.begin(), s.rest_edges.end(), withu, colex_less))
            continue;
        Edge withv = *f;
        withv.insert(std::upper_bound(withv.begin(), withv.end(), v), v);
        std::vector<Edge> edges;
        edges.reserve(h.edge_count());
        for (auto& e : h.edges())
            if (e != withu) edges.push_back(e);
        edges.push_back(withv);
        return {true, Hypergraph(h.vertex_count(), h.arity(), std::move(edges)),
                std::move(withu), std::move(withv)};
    }
    // Shadow membership guarantees a witness exists.
    throw std::logic_error("shift_edge: witness not found");
}

// ---- canonical form ---------------------------------------------------

namespace {

// Branch-and-bound search for the minimal colex-sorted relabeled edge
// list. New labels are assigned one by one; an edge becomes "complete"
// once all its vertices are labeled, and complete edges always precede
// incomplete ones in the final sorted mask list, so prefix comparison
// against the incumbent is sound.
struct CanonSearch {
    int n = 0;
    std::vector<std::uint64_t> edges;  // original masks
    std::vector<std::uint64_t> best;   // incumbent sorted list
    bool improved = false;             // some permutation beat the incumbent
    bool stop_on_improve = false;      // is_canonical mode

    std::array<int, 64> new_of{};      // orig vertex (0-based) -> new bit, or -1
    std::uint64_t assigned = 0;        // orig vertices already labeled

    bool dfs(int depth, std::size_t idx, bool strictly_less) {
        if (depth == n) {
            if (strictly_less) {
                improved = true;
                if (stop_on_improve) return true;
                // Rebuild the full relabeled list as the new incumbent.
                std::vector<std::uint64_t> cur;
                cur.reserve(edges.size());
                for (auto e : edges) cur.push_back(remap(e));
                std::sort(cur.begin(), cur.end());
                best = std::move(cur);
            }
            return false;
        }
        for (int v = 0; v < n; ++v) {
            if (assigned & (std::uint64_t{1} << v)) continue;
            new_of[v] = depth;
            assigned |= std::uint64_t{1} << v;
            // Edges completed by this assignment: contain v, subset of assigned.
            std::array<std::uint64_t, 64> done;
            int cnt = 0;
            for (auto e : edges) {
                if ((e >> v) & 1 && (e & ~assigned) == 0) done[cnt++] = remap(e);
            }
            std::sort(done.begin(), done.begin() + cnt);
            bool less = strictly_less;
            bool prune = false;
            std::size_t j = idx;
            for (int i = 0; i < cnt; ++i, ++j) {
                if (less) continue;
                if (done[i] < best[j]) less = true;
                else if (done[i] > best[j]) { prune = true; break; }
            }
            if (!prune) {
                if (dfs(depth + 1, idx + cnt, less)) {
                    // unwind for early-exit mode
                    assigned &= ~(std::uint64_t{1} << v);
                    new_of[v] = -1;
                    return true;
                }
            }
            assigned &= ~(std::uint64_t{1} << v);
            new_of[v] = -1;
        }
        return false;
    }

    std::uint64_t remap(std::uint64_t e) const {
        std::uint64_t out = 0;
        while (e) {
            int b = std::countr_zero(e);
            out |= std::uint64_t{1} << new_of[b];
            e &= e - 1;
        }
        return out;
    }
};

CanonSearch make_search(const Hypergraph& h) {
    if (h.vertex_count() > 16)
        throw std::invalid_argument("canonical_form: n > 16 unsupported");
    if (h.edge_count() > 64)
        throw std::invalid_argument("canonical_form: more than 64 edges unsupported");
    CanonSearch s;
    s.n = h.vertex_count();
    s.edges = h.edge_masks();
    s.best = s.edges;  // identity labeling (already colex-sorted)
    s.new_of.fill(-1);
    return s;
}

}  // namespace

Hypergraph canonical_form(const Hypergraph& h) {
    if (h.edge_count() == 0 || h.vertex_count() <= 1) return h;
    CanonSearch s = make_search(h);
    s.dfs(0, 0, false);
    std::vector<Edge> edges;
    edges.reserve(s.best.size());
    for (auto m : s.best) edges.push_back(edge_from_mask(m));
    return Hypergraph(h.vertex_count(), h.arity(), std::move(edges));
}

bool is_canonical(const Hypergraph& h) {
    if (h.edge_count() == 0 || h.vertex_count() <= 1) return true;
    CanonSearch s = make_search(h);
    s.stop_on_improve = true;
    s.dfs(0, 0, false);
    return !s.improved;
}

bool isomorphic(const Hypergraph& a, const Hypergraph& b) {
    if (a.vertex_count() != b.vertex_count() || a.arity() != b.arity() ||
        a.edge_count() != b.edge_count())
        return false;
    auto da = a.degree_sequence();
    auto db = b.degree_sequence();
    std::sort(da.begin(), da.end());
    std::sort(db.begin(), db.end());
    if (da != db) return false;
    return canonical_form(a) == canonical_form(b);
}

// ---- enumeration ------------------------------------------------------

namespace {

long long binom_ll(long long n, long long k, long long cap) {
    if (k < 0 || k > n) return 0;
    k = std::min(k, n - k);
    __int128 r = 1;
    for (long long i = 1; i <= k; ++i) {
        r = r * (n - k + i) / i;
        if (r >= cap) return cap;
    }
    return static_cast<long long>(r);
}

}  // namespace

long long enumerate_candidate_count(int r, int m, int n_max) {
    if (m == 0) return 1;
    const long long cap = std::numeric_limits<long long>::max() / 4;
    long long total = 0;
    for (int k = r; k <= n_max; ++k) {
        long long slots = binom_ll(k, r, cap);
        total += binom_ll(slots, m, cap);
        if (total >= cap) return cap;
    }
    return total;
}

namespace {

struct Enumerator {
    int r, m, k;
    std::vector<std::uint64_t> slots;         // all r-subset masks of {1..k}, ascending
    std::vector<std::uint64_t> suffix_union;  // union of slots[i..]
    std::vector<std::uint64_t> chosen;
    std::uint64_t full = 0;
    const std::function<void(const Hypergraph&)>* visit = nullptr;

    void run() {
        full = (k >= 64) ? ~std::uint64_t{0} : ((std::uint64_t{1} << k) - 1);
        suffix_union.assign(slots.size() + 1, 0);
        for (int i = static_cast<int>(slots.size()) - 1; i >= 0; --i)
            suffix_union[i] = suffix_union[i + 1] | slots[i];
        chosen.clear();
        pick(0, 0);
    }

    void pick(std::size_t from, std::uint64_t covered) {
        int need = m - static_cast<int>(chosen.size());
        if (need == 0) {
            if (covered != full) return;
            emit();
            return;
        }
        if (slots.size() - from < static_cast<std::size_t>(need)) return;
        if ((covered | suffix_union[from]) != full) return;
        for (std::size_t i = from; i + need <= slots.size(); ++i) {
            chosen.push_back(slots[i]);
            pick(i + 1, covered | slots[i]);
            chosen.pop_back();
        }
    }

    void emit() {
        std::vector<Edge> edges;
        edges.reserve(chosen.size());
        for (auto c : chosen) edges.push_back(edge_from_mask(c));
        Hypergraph h(k, r, std::move(edges));
        if (is_canonical(h)) (*visit)(h);
    }
};

}  // namespace

void enumerate(int r, int m, int n_max,
               const std::function<void(const Hypergraph&)>& visit,
               const EnumOptions& opts) {
    if (r < 1) throw std::invalid_argument("enumerate: arity must be >= 1");
    if (m < 0) throw std::invalid_argument("enumerate: negative m");
    if (n_max < r && m > 0) throw std::invalid_argument("enumerate: n_max < r");
    if (enumerate_candidate_count(r, m, n_max) > opts.budget)
        throw BudgetExceeded("enumerate: labeled candidate count exceeds budget");
    if (m == 0) {
        visit(Hypergraph(0, r, {}));
        return;
    }
    for (int k = r; k <= n_max; ++k) {
        // coverage needs every one of the k vertices in some edge
        if (static_cast<long long>(m) * r < k) continue;
        Enumerator e;
        e.r = r;
        e.m = m;
        e.k = k;
        e.slots = complete(k, r).edge_masks();
        if (static_cast<int>(e.slots.size()) < m) continue;
        e.visit = &visit;
        e.run();
    }
}

std::vector<Hypergraph> enumerate_all(int r, int m, int n_max, const EnumOptions& opts) {
    std::vector<Hypergraph> out;
    enumerate(r, m, n_max, [&](const Hypergraph& h) { out.push_back(h); }, opts);
    return out;
}

}  // namespace hyperlag
