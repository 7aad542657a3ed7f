#ifndef FPP_CMGRAPH_HPP
#define FPP_CMGRAPH_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "fpp/degrees.hpp"
#include "fpp/rng.hpp"

namespace fpp {

struct MultiEdge {
    Vertex u;  // u < v
    Vertex v;
    std::uint64_t multiplicity;

    friend bool operator==(const MultiEdge&, const MultiEdge&) = default;
};

/// Configuration multigraph in collapsed form: one record per distinct pair.
class MultiGraph {
public:
    MultiGraph(DegreeSequence seq, std::vector<MultiEdge> edges, std::vector<std::uint64_t> self_loops);

    std::size_t n() const { return seq_.n(); }
    const DegreeSequence& degrees() const { return seq_; }
    /// Sorted by (u, v).
    std::span<const MultiEdge> edges() const { return edges_; }
    std::uint64_t self_loops(Vertex v) const { return self_loops_[v]; }
    std::span<const std::uint64_t> self_loops() const { return self_loops_; }

    /// N(i,j); 0 if the pair is not joined.
    std::uint64_t multiplicity(Vertex i, Vertex j) const;

    /// Distinct neighbours of v (no v itself), increasing id.
    std::span<const Vertex> neighbors(Vertex v) const {
        return {nbr_.data() + offsets_[v], nbr_.data() + offsets_[v + 1]};
    }
    std::span<const std::uint64_t> neighbor_multiplicities(Vertex v) const {
        return {nbr_mult_.data() + offsets_[v], nbr_mult_.data() + offsets_[v + 1]};
    }

private:
    DegreeSequence seq_;
    std::vector<MultiEdge> edges_;
    std::vector<std::uint64_t> self_loops_;
    std::vector<std::size_t> offsets_;
    std::vector<Vertex> nbr_;
    std::vector<std::uint64_t> nbr_mult_;
};

/// Erased configuration model: loops removed, parallel edges merged.
class SimpleGraph {
public:
    /// Builds from an undirected edge list; duplicates and loops are dropped.
    SimpleGraph(std::size_t n, std::span<const std::pair<Vertex, Vertex>> edges);

    std::size_t n() const { return offsets_.size() - 1; }
    std::span<const Vertex> adjacency(Vertex v) const {
        return {adj_.data() + offsets_[v], adj_.data() + offsets_[v + 1]};
    }
    std::size_t erased_degree(Vertex v) const { return offsets_[v + 1] - offsets_[v]; }
    std::size_t edge_count() const { return adj_.size() / 2; }
    /// Position of adjacency(v)[0] in the flat neighbour array.
    std::size_t offset(Vertex v) const { return offsets_[v]; }

private:
    std::vector<std::size_t> offsets_;
    std::vector<Vertex> adj_;
};

/// Uniform perfect matching of stubs, collapsed to multiplicities.
///
/// The stubs are put in uniformly random order and consecutive positions are
/// paired. The stub multiset at odd positions is multivariate hypergeometric,
/// and given it the odd/even matching is a uniform bijection, so the label
/// table is filled row by row with multivariate hypergeometric draws. Small
/// rows (and the residue of large rows) draw single stubs through a Fenwick
/// tree; large rows walk columns in decreasing-degree order. The stub array is
/// never materialised, so L_n may be far beyond memory.
MultiGraph pair_stubs(const DegreeSequence& seq, Rng& rng);

/// Reference pairing: one stub at a time, partner drawn proportionally to the
/// residual free-stub count. O(L_n log n); meant for tests and small L_n.
MultiGraph pair_stubs_sequential(const DegreeSequence& seq, Rng& rng);

SimpleGraph erase(const MultiGraph& mg);
/// Re-erasing a simple graph returns an identical copy.
SimpleGraph erase(const SimpleGraph& sg);

/// Vertices with D_i > eps_n * n^(1/(tau-1)), by decreasing degree.
std::vector<Vertex> super_vertices(const DegreeSequence& seq, double eps_n);

/// Default eps_n = n^(-1/8).
double default_eps_n(std::size_t n);

/// N(i,j) / (L_n P_i P_j) with P_i = D_i / L_n.
double multiplicity_ratio(const MultiGraph& mg, Vertex i, Vertex j);

/// |adjacency(i) ∩ adjacency(j)|.
std::size_t common_neighbors(const SimpleGraph& sg, Vertex i, Vertex j);

struct GoodEventReport {
    bool g1 = false;  // L_n n^(-1/(tau-1)) in [a, 1/a]
    bool g2 = false;  // order statistics inside [C^-1 (n/i)^(1/(tau-1)), C (n/i)^(1/(tau-1))]
    bool g3 = false;  // D^er of the i-th largest <= C_er n / i
    double scaled_total = 0.0;
    std::optional<std::size_t> g2_first_violation;  // rank i
    std::optional<std::size_t> g3_first_violation;  // rank i

    bool all() const { return g1 && g2 && g3; }
};

GoodEventReport check_good_event(const DegreeSequence& seq, const SimpleGraph& sg, double a, double C, double C_er);

/// Hop distance between two vertices with unit weights; nullopt if disconnected.
std::optional<std::size_t> bfs_distance(const SimpleGraph& sg, Vertex from, Vertex to);

}  // namespace fpp

#endif
