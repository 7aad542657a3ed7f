#ifndef FPP_LIMITNET_HPP
#define FPP_LIMITNET_HPP

#include <cstdint>
#include <span>
#include <vector>

#include "fpp/pdlaw.hpp"
#include "fpp/shortestpath.hpp"

namespace fpp {

enum class LimitKind { original, erased };

/// Complete weighted graph on the K explicit cells of a PD sample plus any
/// synthetic tail cells appended after them (indices K, K+1, ...).
///
/// original: w(i,j) ~ Exp(rate xi_i xi_j / eta) = Exp(rate P_i P_j eta).
/// erased:   w(i,j) = sqrt(2E / (zeta^2 f(P_i,P_j))), E ~ Exp(1), so that
///           P(w > x) = exp(-f zeta^2 x^2 / 2).
class LimitNetwork {
public:
    LimitNetwork(LimitKind kind, std::vector<double> masses, double eta, double zeta, std::vector<double> weights);

    LimitKind kind() const { return kind_; }
    std::size_t size() const { return masses_.size(); }
    double mass(std::size_t i) const { return masses_[i]; }
    double eta() const { return eta_; }
    double zeta() const { return zeta_; }
    double weight(std::size_t i, std::size_t j) const { return weights_[i * size() + j]; }
    std::span<const double> row(std::size_t i) const { return {weights_.data() + i * size(), size()}; }

private:
    LimitKind kind_;
    std::vector<double> masses_;
    double eta_;
    double zeta_;
    std::vector<double> weights_;  // dense, symmetric, +inf on the diagonal
};

/// Draws all pairwise weights conditionally independently given pd. `extra`
/// lists the masses P of synthetic tail cells to append. `law` is only read
/// for the erased kind (through f).
LimitNetwork build_limit(const PDRealization& pd, LimitKind kind, double zeta, const DegreeLaw& law, Rng& rng,
                         std::span<const double> extra = {});

/// Dense Dijkstra between two vertices of the network; i == j gives W = 0, H = 0.
PathResult fpp_limit(const LimitNetwork& net, std::size_t i, std::size_t j);

/// original: I, J i.i.d. proportional to P. erased: two conditionally
/// independent copies of I^er.
std::pair<Cell, Cell> sample_IJ(const PDRealization& pd, LimitKind kind, const DegreeLaw& law, Rng& rng);

struct LimitSample {
    Cell I, J;
    double weight = 0.0;
    std::uint32_t hopcount = 0;  // H_IJ in the limit network
    /// Limiting finite-graph hopcount: 2 + H (original) or 2 + 2H (erased).
    std::uint32_t graph_hopcount() const;
    LimitKind kind = LimitKind::original;
};

/// One draw of (I, J, W_IJ, H_IJ): samples I and J, materialises synthetic
/// cells as extra vertices, builds the network and solves it.
LimitSample sample_limit_fpp(const PDRealization& pd, LimitKind kind, double zeta, const DegreeLaw& law, Rng& rng);

struct ChainResult {
    std::uint32_t hopcount = 2;  // 2 + height of J2 in the tree grown from J1
    std::uint64_t steps = 0;
    bool capped = false;
};

inline constexpr std::uint64_t kChainStepCap = 1'000'000;

/// Shortest-weight-tree jump chain on the original limit object. Starting from
/// {J1}, each step adds a vertex b outside the tree with probability
/// proportional to P_b and attaches it to a tree vertex a with probability
/// proportional to P_a; it stops when J2 is added.
ChainResult swt_chain_or(const PDRealization& pd, Rng& rng);

struct PiEntry {
    std::uint32_t k = 0;
    double pi = 0.0;  // pooled over both estimators
    double stderr_ = 0.0;
    double pi_chain = 0.0;
    double pi_fpp = 0.0;
    double gap = 0.0;  // pi_chain - pi_fpp
};

struct PiTable {
    double tau = 0.0;
    std::size_t K = 0;
    std::size_t replicas = 0;
    std::vector<PiEntry> entries;  // k = 2 .. k_max, all pooled estimates > 0
    std::vector<std::uint32_t> chain_hops;  // per replica
    std::vector<std::uint32_t> fpp_hops;    // per replica, 2 + H_IJ
    std::uint64_t capped_chains = 0;

    const PiEntry* find(std::uint32_t k) const;
};

/// Runs swt_chain_or and (2 + fpp_limit) once per replica on a shared PD draw.
PiTable estimate_pi(double tau, std::size_t K, std::size_t replicas, std::uint64_t seed);

}  // namespace fpp

#endif
