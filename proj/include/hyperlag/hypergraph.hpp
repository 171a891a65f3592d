#ifndef HYPERLAG_HYPERGRAPH_HPP
#define HYPERLAG_HYPERGRAPH_HPP

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace hyperlag {

/// An edge: strictly increasing 1-based vertex indices.
using Edge = std::vector<int>;

/// Relabeling produced by link/delete: new label i (1-based) came from
/// old_label[i-1] in the original hypergraph.
struct RelabelMap {
    std::vector<int> old_label;
};

/// Colex order on same-arity sets: A < B iff max(A xor B) lies in B.
bool colex_less(const Edge& a, const Edge& b);

/// Pack an edge into a vertex bitmask (bit v-1 for vertex v). Requires
/// all vertices <= 64. Numeric order of masks equals colex order.
std::uint64_t edge_mask(const Edge& e);
Edge edge_from_mask(std::uint64_t mask);

/// An r-uniform hypergraph on vertices {1..n}. Edges are stored in colex
/// order, so equality of hypergraphs is structural equality. Immutable
/// after construction.
class Hypergraph {
public:
    Hypergraph(int n, int r, std::vector<Edge> edges);
    static Hypergraph empty(int n, int r) { return Hypergraph(n, r, {}); }

    int vertex_count() const { return n_; }
    int arity() const { return r_; }
    int edge_count() const { return static_cast<int>(edges_.size()); }
    const std::vector<Edge>& edges() const { return edges_; }
    bool has_edge(const Edge& e) const;

    /// Edge bitmasks in colex (= ascending numeric) order; requires n <= 64.
    std::vector<std::uint64_t> edge_masks() const;

    int degree(int v) const;
    std::vector<int> degree_sequence() const;  // per vertex 1..n

    /// Link hypergraph at v: the (r-1)-sets f with f u {v} an edge.
    /// Vertices are relabeled onto {1..n-1}; the map gives old labels.
    std::pair<Hypergraph, RelabelMap> link(int v) const;

    /// Induced subhypergraph H - v, relabeled onto {1..n-1}.
    std::pair<Hypergraph, RelabelMap> delete_vertex(int v) const;

    bool operator==(const Hypergraph& o) const = default;

private:
    int n_ = 0;
    int r_ = 1;
    std::vector<Edge> edges_;
};

/// A family of k-sets over positive integers (no vertex bound).
struct SetFamily {
    int k = 1;
    std::vector<Edge> members;  // colex-sorted, deduplicated

    SetFamily(int arity, std::vector<Edge> sets);
    int size() const { return static_cast<int>(members.size()); }
    bool operator==(const SetFamily& o) const = default;
};

/// Shadow: all (k-1)-sets obtained by removing one element from a member.
SetFamily shadow(const SetFamily& family);

/// The complete r-uniform hypergraph on s vertices, C(s,r) edges.
Hypergraph complete(int s, int r);

/// The first m r-sets of the positive integers in colex order; n is the
/// largest vertex used (0 when m = 0).
Hypergraph colex_prefix(int m, int r);

/// One step of the edge-shift procedure at vertex v. If the shadow of
/// E(H-v) is already contained in the link of v, the hypergraph is
/// returned unchanged with changed = false. Otherwise the colex-least
/// missing (r-1)-set f and the least witness u with f u {u} in E(H-v)
/// are taken, and the edge f u {u} is replaced by f u {v}.
struct ShiftResult {
    bool changed = false;
    Hypergraph graph;
    Edge removed;  // empty when unchanged
    Edge added;
};
ShiftResult shift_edge(const Hypergraph& h, int v);

/// Shadow containment test used by shift_edge, in the original labels:
/// every (r-1)-subset of an edge avoiding v is itself a link set of v.
bool shadow_contained(const Hypergraph& h, int v);

// ---- isomorphism and enumeration ------------------------------------

/// Canonical form: the lexicographically least colex-sorted edge list
/// over all vertex permutations (branch-and-bound search). n <= 16.
Hypergraph canonical_form(const Hypergraph& h);

/// True iff h already equals its canonical form (cheaper: early exit).
bool is_canonical(const Hypergraph& h);

bool isomorphic(const Hypergraph& a, const Hypergraph& b);

struct EnumOptions {
    long long budget = 10'000'000;  // labeled candidates
};

struct BudgetExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Number of labeled candidates enumerate() would visit (for the budget
/// guard); saturates at a large sentinel instead of overflowing.
long long enumerate_candidate_count(int r, int m, int n_max);

/// Visit every r-uniform hypergraph with exactly m edges and at most
/// n_max non-isolated vertices, one representative per isomorphism
/// class (the canonical form), in deterministic order: by vertex count,
/// then by colex order of the edge list.
void enumerate(int r, int m, int n_max,
               const std::function<void(const Hypergraph&)>& visit,
               const EnumOptions& opts = {});

/// Convenience: collect the stream.
std::vector<Hypergraph> enumerate_all(int r, int m, int n_max,
                                      const EnumOptions& opts = {});

}  // namespace hyperlag

#endif
