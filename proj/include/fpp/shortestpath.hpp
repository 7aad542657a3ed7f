#ifndef FPP_SHORTESTPATH_HPP
#define FPP_SHORTESTPATH_HPP

#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "fpp/cmgraph.hpp"
#include "fpp/rng.hpp"

namespace fpp {

/// Edge weight law with positive density zeta at zero.
class EdgeWeightLaw {
public:
    enum class Kind { exponential_rate1, uniform_0_b };

    static EdgeWeightLaw exponential() { return EdgeWeightLaw(Kind::exponential_rate1, 1.0); }
    static EdgeWeightLaw uniform(double b);
    /// "exp" or "uniform:<b>".
    static EdgeWeightLaw parse(const std::string& text);

    Kind kind() const { return kind_; }
    double b() const { return b_; }
    double zeta() const { return kind_ == Kind::exponential_rate1 ? 1.0 : 1.0 / b_; }
    std::string name() const;

    double draw(Rng& rng) const;
    /// Minimum of m i.i.d. draws, sampled by inversion of the minimum's law.
    double draw_min(Rng& rng, std::uint64_t m) const;

private:
    EdgeWeightLaw(Kind kind, double b) : kind_(kind), b_(b) {}
    Kind kind_;
    double b_;
};

enum class GraphMode { original, erased };

/// CSR graph with one weight per distinct edge, stored on both arcs.
class WeightedGraph {
public:
    WeightedGraph(GraphMode mode, std::vector<std::size_t> offsets, std::vector<Vertex> targets,
                  std::vector<double> weights);

    GraphMode mode() const { return mode_; }
    std::size_t n() const { return offsets_.size() - 1; }
    std::span<const Vertex> neighbors(Vertex v) const {
        return {targets_.data() + offsets_[v], targets_.data() + offsets_[v + 1]};
    }
    std::span<const double> weights(Vertex v) const {
        return {weights_.data() + offsets_[v], weights_.data() + offsets_[v + 1]};
    }
    /// Weight of {i,j}; nullopt when absent.
    std::optional<double> weight(Vertex i, Vertex j) const;
    /// Smallest incident weight at v (V_i in the decomposition); +inf if isolated.
    double min_incident(Vertex v) const;

private:
    GraphMode mode_;
    std::vector<std::size_t> offsets_;
    std::vector<Vertex> targets_;
    std::vector<double> weights_;
};

/// Original mode: one draw per distinct pair distributed as the minimum of
/// N(i,j) draws. Loops carry no weight (they never lie on a shortest path).
WeightedGraph assign_weights(const MultiGraph& g, const EdgeWeightLaw& law, Rng& rng);
/// Erased mode: one i.i.d. draw per edge.
WeightedGraph assign_weights(const SimpleGraph& g, const EdgeWeightLaw& law, Rng& rng);

/// Dispatch on mode; throws std::invalid_argument when the graph the mode needs is missing.
WeightedGraph assign_weights(const MultiGraph* mg, const SimpleGraph* sg, const EdgeWeightLaw& law, GraphMode mode,
                             Rng& rng);

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();
inline constexpr Vertex kNoVertex = std::numeric_limits<Vertex>::max();

struct ShortestPathTree {
    Vertex source = kNoVertex;
    std::vector<double> distance;     // +inf when unreachable
    std::vector<std::uint32_t> hops;  // edges on the chosen minimal path
    std::vector<Vertex> predecessor;  // kNoVertex for source / unreachable

    bool reached(Vertex v) const { return distance[v] < kInfinity; }
};

struct PathResult {
    double weight = 0.0;
    std::uint32_t hopcount = 0;
    std::vector<Vertex> path;  // source ... target
};

/// Binary-heap Dijkstra with hop tracking. Equal tentative distances keep the
/// smaller predecessor id. With `target`, stops once the target is settled.
ShortestPathTree dijkstra(const WeightedGraph& wg, Vertex src, std::optional<Vertex> target = std::nullopt);

/// Path from the tree's source to v; nullopt if unreachable.
std::optional<PathResult> extract_path(const ShortestPathTree& tree, Vertex v);

struct PairSample {
    Vertex a1 = kNoVertex;
    Vertex a2 = kNoVertex;
    std::optional<PathResult> path;  // nullopt: disconnected outcome

    bool connected() const { return path.has_value(); }
};

/// Uniform A1 != A2 (resampled on collision) and their minimal-weight path.
PairSample sample_pair_fpp(const WeightedGraph& wg, Rng& rng);

struct TwoEdgeMin {
    double weight = kInfinity;  // min over common neighbours s of w(i,s) + w(s,j)
    double scaled = kInfinity;  // sqrt(n) * weight
    std::size_t paths = 0;      // number of two-edge paths inspected
    Vertex via = kNoVertex;
};

/// Minimal two-edge path between i and j; requires an erased-mode graph.
TwoEdgeMin two_edge_min(const WeightedGraph& wg, Vertex i, Vertex j);

/// sqrt(n) * min over floor(beta n) sums of two rate-1 exponentials, replicated;
/// returns the empirical survival at each grid point.
std::vector<double> min_gamma_trial(double beta, std::size_t n, std::span<const double> x_grid, Rng& rng,
                                    std::size_t replicas);

struct MinGammaJoint {
    std::vector<double> eta, kappa, rho;
};

/// (sqrt(m) min(X+Y), sqrt(m) min(X+Z), sqrt(m) min(Y+Z)) over shared exponentials.
MinGammaJoint min_gamma_joint(std::size_t m, std::size_t replicas, Rng& rng);

}  // namespace fpp

#endif
