#ifndef FPP_PDLAW_HPP
#define FPP_PDLAW_HPP

#include <cstdint>
#include <vector>

#include "fpp/degrees.hpp"
#include "fpp/polylog.hpp"
#include "fpp/rng.hpp"

namespace fpp {

/// Truncated Poisson-Dirichlet sample. xi_i = Gamma_i^(-1/(tau-1)) for i <= K,
/// eta completes the sum over i > K by the integral approximation
/// Gamma_K^(-(2-tau)/(tau-1)) (tau-1)/(2-tau), and P_i = xi_i / eta.
struct PDRealization {
    double tau = 1.5;
    std::size_t K = 0;
    std::vector<double> xi;
    double gamma_K = 0.0;
    double eta = 0.0;
    std::vector<double> P;
    double tail_mass = 0.0;  // 1 - sum P, the mass of the cells beyond K
    std::vector<double> cumulative;  // prefix sums of P

    double alpha() const { return tau - 1.0; }
};

PDRealization sample_pd(double tau, std::size_t K, Rng& rng);

/// xi of a cell beyond K picked proportionally to its size: the points below
/// xi_K form a Poisson process with intensity alpha x^(-alpha-1), so the
/// size-biased pick has density proportional to x^(-alpha) on (0, xi_K).
double sample_tail_xi(const PDRealization& pd, Rng& rng);

/// E[sum_i P_i^r] = Gamma(r - alpha) / (Gamma(r) Gamma(1 - alpha)), alpha = tau - 1.
double pd_moment_exact(double tau, int r);

/// 1 - E[x^D] and E[x^D] for the lattice degree law, plus the pair-selection
/// probability f(s,t) = 1 - E[(1-s)^D] - E[(1-t)^D] + E[(1-s-t)^D].
///
/// Uses 1 - E[x^D] = (1 - x) sum_{k>=0} P(D > k) x^k. The survival series is
/// summed directly while its geometric envelope falls below tol within a few
/// thousand terms; closer to x = 1 it is expressed through Li_{tau-1}(x).
class DegreePgf {
public:
    explicit DegreePgf(const DegreeLaw& law, double tol = 1e-10);

    const DegreeLaw& law() const { return law_; }

    /// H(s) = 1 - E[(1-s)^D], s in [0,1].
    double complement(double s) const;
    /// E[x^D], x in [0,1].
    double pgf(double x) const { return 1.0 - complement(1.0 - x); }
    /// f(s,t); throws std::domain_error if s + t > 1.
    double f_joint(double s, double t) const;

    /// Survival series route, usable for any s with enough terms. Cross-check only.
    double complement_series(double s) const;
    /// Polylogarithm route, s < 1. Cross-check only.
    double complement_polylog(double s) const;

private:
    DegreeLaw law_;
    double tol_;
    Polylog li_;
    double k0_;  // largest k with c k^-alpha >= 1 (0 when c < 1)
};

/// Convenience wrapper; builds a DegreePgf per call.
double f_joint(double s, double t, const DegreeLaw& law, double tol = 1e-10);

/// E[x^D] by summing the pmf, truncated once P(D > k) x^k < tol. Oracle route.
double pgf_pmf_series(const DegreeLaw& law, double x, double tol = 1e-12);

/// A cell of the limit object: either one of the K explicit cells or a fresh
/// cell from the tail (index >= K, never shared between draws).
struct Cell {
    std::uint32_t index = 0;
    bool synthetic = false;
    double P = 0.0;
};

struct DerSample {
    Degree D = 0;
    std::uint64_t D_er = 0;                  // distinct cells hit
    std::vector<std::uint32_t> head_cells;   // distinct explicit cells, increasing
    std::uint64_t tail_cells = 0;            // tail draws, each its own cell
    Cell I;                                   // uniform among the distinct cells
};

/// D ~ F, D multinomial trials over the cells of pd; D_er counts distinct cells
/// and I is uniform among them. Tail draws are each mapped to a distinct cell.
DerSample sample_Der_I(const PDRealization& pd, const DegreeLaw& law, Rng& rng);

/// Cell drawn proportionally to P (tail mass gives a fresh synthetic cell).
Cell sample_cell(const PDRealization& pd, Rng& rng);

struct TailBoundReport {
    double max_ratio = 0.0;             // max f(P_i,P_j) / (c_cal eta^(1-tau) / (i v j)), i v j >= 20
    std::size_t pairs_checked = 0;
    bool holds = false;                 // max_ratio <= 1
    double max_complement_ratio = 0.0;  // max_i (1 - E[(1-P_i)^D]) / P_i^(tau-1)
};

TailBoundReport f_tail_bound_check(const PDRealization& pd, const DegreeLaw& law, double c_cal);

}  // namespace fpp

#endif
