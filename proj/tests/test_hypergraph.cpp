#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

#include "hyperlag/hypergraph.hpp"
#include "hyperlag/io.hpp"

using namespace hyperlag;

namespace {

Hypergraph make(int n, int r, std::vector<Edge> edges) {
    return Hypergraph(n, r, std::move(edges));
}

// Test-only oracle: isomorphism by trying every vertex permutation.
bool iso_bruteforce(const Hypergraph& a, const Hypergraph& b) {
    if (a.vertex_count() != b.vertex_count() || a.arity() != b.arity() ||
        a.edge_count() != b.edge_count())
        return false;
    int n = a.vertex_count();
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 1);
    std::set<std::vector<Edge>> bset{b.edges()};
    do {
        std::vector<Edge> mapped;
        for (auto& e : a.edges()) {
            Edge f;
            for (int v : e) f.push_back(perm[v - 1]);
            std::sort(f.begin(), f.end());
            mapped.push_back(std::move(f));
        }
        std::sort(mapped.begin(), mapped.end(), colex_less);
        if (bset.count(mapped)) return true;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return false;
}

// Test-only oracle: enumerate classes by unfiltered generation plus
// pairwise brute-force isomorphism.
int count_classes_bruteforce(int r, int m, int n_max) {
    std::vector<Hypergraph> reps;
    for (int k = r; k <= n_max; ++k) {
        auto slots = complete(k, r).edges();
        int total = static_cast<int>(slots.size());
        std::vector<int> idx(m);
        // choose m of the slots
        auto rec = [&](auto&& self, int pos, int from) -> void {
            if (pos == m) {
                std::vector<Edge> edges;
                std::vector<bool> used(k + 1, false);
                for (int i : idx) {
                    edges.push_back(slots[i]);
                    for (int v : slots[i]) used[v] = true;
                }
                for (int v = 1; v <= k; ++v)
                    if (!used[v]) return;  // isolated vertex: counted at smaller k
                Hypergraph h(k, r, edges);
                for (auto& rep : reps)
                    if (iso_bruteforce(rep, h)) return;
                reps.push_back(h);
                return;
            }
            for (int i = from; i <= total - (m - pos); ++i) {
                idx[pos] = i;
                self(self, pos + 1, i + 1);
            }
        };
        if (total >= m) rec(rec, 0, 0);
    }
    return static_cast<int>(reps.size());
}

}  // namespace

TEST_CASE("degree") {
    CHECK(make(3, 3, {{1, 2, 3}}).degree(2) == 1);
    CHECK(complete(4, 2).degree(1) == 3);
    CHECK(make(5, 3, {{1, 2, 3}, {1, 2, 4}, {3, 4, 5}}).degree(4) == 2);
    CHECK_THROWS_AS(make(3, 3, {{1, 2, 3}}).degree(4), std::out_of_range);
}

TEST_CASE("link") {
    auto [l1, m1] = make(3, 3, {{1, 2, 3}}).link(1);
    CHECK(l1.edges() == std::vector<Edge>{{1, 2}});
    CHECK(m1.old_label == std::vector<int>{2, 3});

    auto [l2, m2] = complete(4, 3).link(4);
    CHECK(l2 == complete(3, 2));

    auto [l3, m3] = make(5, 3, {{1, 2, 3}, {1, 4, 5}, {2, 3, 4}}).link(1);
    // {2,3} and {4,5} in original labels
    CHECK(l3.edges() == std::vector<Edge>{{1, 2}, {3, 4}});
    CHECK(m3.old_label == std::vector<int>{2, 3, 4, 5});

    CHECK_THROWS_AS(make(2, 2, {{1, 2}}).link(3), std::out_of_range);
    CHECK_THROWS_AS(make(2, 1, {{1}}).link(1), std::invalid_argument);
}

TEST_CASE("delete_vertex") {
    CHECK(complete(3, 2).delete_vertex(2).first == complete(2, 2));
    auto [d1, _] = make(3, 3, {{1, 2, 3}}).delete_vertex(3);
    CHECK(d1.edge_count() == 0);
    CHECK(d1.vertex_count() == 2);
    auto [d2, m2] = make(4, 3, {{1, 2, 3}, {2, 3, 4}}).delete_vertex(1);
    CHECK(d2.edges() == std::vector<Edge>{{1, 2, 3}});
}

TEST_CASE("shadow") {
    SetFamily single(3, {{1, 2, 3}});
    CHECK(shadow(single).members == std::vector<Edge>{{1, 2}, {1, 3}, {2, 3}});
    CHECK(shadow(SetFamily(3, {})).size() == 0);
    SetFamily two(3, {{1, 2, 3}, {1, 2, 4}});
    CHECK(shadow(two).size() == 5);
}

TEST_CASE("complete and colex_prefix") {
    CHECK(complete(3, 2).edge_count() == 3);
    CHECK(complete(4, 3).edge_count() == 4);
    CHECK(complete(5, 3).edge_count() == 10);
    CHECK_THROWS_AS(complete(2, 3), std::invalid_argument);

    CHECK(colex_prefix(3, 2) == complete(3, 2));
    CHECK(colex_prefix(4, 2).edges() ==
          std::vector<Edge>{{1, 2}, {1, 3}, {2, 3}, {1, 4}});
    CHECK(colex_prefix(0, 3).edge_count() == 0);
    CHECK(colex_prefix(0, 3).vertex_count() == 0);

    // colex_prefix(C(s,r), r) is the complete hypergraph
    for (int r = 2; r <= 4; ++r)
        for (int s = r; s <= 7; ++s) {
            int m = complete(s, r).edge_count();
            CHECK(colex_prefix(m, r) == complete(s, r));
        }
}

TEST_CASE("link/delete edge count identity") {
    for (auto& h : enumerate_all(3, 3, 6)) {
        for (int v = 1; v <= h.vertex_count(); ++v) {
            CHECK(h.link(v).first.edge_count() + h.delete_vertex(v).first.edge_count() ==
                  h.edge_count());
            CHECK(h.link(v).first.edge_count() == h.degree(v));
        }
    }
}

TEST_CASE("shift_edge") {
    Hypergraph h(4, 2, {{1, 2}, {3, 4}});
    auto res = shift_edge(h, 1);
    CHECK(res.changed);
    CHECK(res.removed == Edge{3, 4});
    CHECK(res.added == Edge{1, 3});
    CHECK(res.graph.edges() == std::vector<Edge>{{1, 2}, {1, 3}});

    CHECK_FALSE(shift_edge(complete(4, 2), 1).changed);
    CHECK_FALSE(shift_edge(Hypergraph(3, 3, {{1, 2, 3}}), 2).changed);
}

TEST_CASE("shift_edge iteration raises the degree and terminates") {
    for (auto& h : enumerate_all(2, 4, 6)) {
        int v = 1;
        Hypergraph cur = h;
        int guard = 0;
        while (true) {
            auto res = shift_edge(cur, v);
            if (!res.changed) break;
            CHECK(res.graph.edge_count() == cur.edge_count());
            CHECK(res.graph.degree(v) == cur.degree(v) + 1);
            cur = res.graph;
            REQUIRE(++guard < 100);
        }
        CHECK(shadow_contained(cur, v));
    }
}

TEST_CASE("enumerate counts") {
    CHECK(enumerate_all(2, 1, 6).size() == 1);
    CHECK(enumerate_all(2, 3, 6).size() == 5);
    CHECK(enumerate_all(3, 2, 6).size() == 3);
    CHECK(enumerate_all(3, 0, 6).size() == 1);  // the empty hypergraph
}

TEST_CASE("enumerate agrees with the brute-force class count") {
    for (int m = 1; m <= 4; ++m) {
        CAPTURE(m);
        CHECK(static_cast<int>(enumerate_all(2, m, 2 * m).size()) ==
              count_classes_bruteforce(2, m, 2 * m));
    }
    CHECK(static_cast<int>(enumerate_all(3, 2, 6).size()) ==
          count_classes_bruteforce(3, 2, 6));
}

TEST_CASE("enumerate emits canonical, pairwise non-isomorphic graphs") {
    auto all = enumerate_all(2, 3, 6);
    for (auto& h : all) CHECK(h == canonical_form(h));
    for (std::size_t i = 0; i < all.size(); ++i)
        for (std::size_t j = i + 1; j < all.size(); ++j)
            CHECK_FALSE(isomorphic(all[i], all[j]));
}

TEST_CASE("enumerate budget guard") {
    EnumOptions opts;
    opts.budget = 10;
    CHECK_THROWS_AS(enumerate(2, 5, 8, [](const Hypergraph&) {}, opts), BudgetExceeded);
    CHECK(enumerate_candidate_count(2, 5, 8) > 10);
}

TEST_CASE("canonical form is an isomorphism invariant") {
    Hypergraph a(4, 2, {{1, 2}, {2, 3}, {3, 4}});   // path
    Hypergraph b(4, 2, {{1, 3}, {2, 3}, {1, 4}});   // relabeled path
    CHECK(canonical_form(a) == canonical_form(b));
    CHECK(isomorphic(a, b));
    Hypergraph star(4, 2, {{1, 2}, {1, 3}, {1, 4}});
    CHECK_FALSE(isomorphic(a, star));
    CHECK(iso_bruteforce(a, b));
    CHECK_FALSE(iso_bruteforce(a, star));
}

TEST_CASE("text and json round trip") {
    auto h = make(5, 3, {{1, 2, 3}, {1, 2, 4}, {3, 4, 5}});
    std::ostringstream out;
    write_hypergraph_text(out, h);
    std::istringstream in(out.str());
    CHECK(read_hypergraph_text(in) == h);
    CHECK(hypergraph_from_json_string(hypergraph_to_json_string(h)) == h);
}

TEST_CASE("malformed inputs") {
    std::istringstream bad1("1 2 x");
    CHECK_THROWS_AS(read_hypergraph_text(bad1), ParseError);
    std::istringstream bad2("1 2\n1 2 3\n");
    CHECK_THROWS_AS(read_hypergraph_text(bad2), ParseError);
    std::istringstream bad3("1 1 2\n");
    CHECK_THROWS_AS(read_hypergraph_text(bad3), ParseError);
    CHECK_THROWS_AS(hypergraph_from_json_string("{\"n\":2}"), ParseError);
    CHECK_THROWS_AS(make(3, 2, {{1, 2}, {1, 2}}), std::invalid_argument);
    CHECK_THROWS_AS(make(3, 2, {{1, 4}}), std::invalid_argument);
}
