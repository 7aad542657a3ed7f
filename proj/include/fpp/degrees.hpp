#ifndef FPP_DEGREES_HPP
#define FPP_DEGREES_HPP

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "fpp/rng.hpp"

namespace fpp {

using Degree = std::uint64_t;
using Vertex = std::uint32_t;

/// Lattice power law P(D > k) = min(1, c k^-(tau-1)) for integers k >= 1.
/// With c > 1 the survival is clamped at 1 for k < c^(1/(tau-1)), which
/// leaves no mass below that point (the atom sits at the first k where
/// c k^-(tau-1) < 1).
class DegreeLaw {
public:
    explicit DegreeLaw(double tau, double scale_c = 1.0);

    double tau() const { return tau_; }
    double scale_c() const { return scale_c_; }
    /// alpha = tau - 1, the tail index.
    double alpha() const { return tau_ - 1.0; }

    /// P(D > x) for real x >= 0.
    double survival(double x) const;
    /// P(D = k).
    double pmf(Degree k) const;

    std::string describe() const;

private:
    double tau_;
    double scale_c_;
};

/// Degrees are capped here so that L_n fits comfortably in 64 bits; the
/// capped mass is c * kMaxDegree^-(tau-1), below 2e-8 at tau = 1.5.
inline constexpr Degree kMaxDegree = Degree{1} << 50;

/// Inversion draw: ceil((u/c)^(-1/(tau-1))), at least 1. Requires 0 < u < 1.
Degree sample_degree(const DegreeLaw& law, double u);

/// i.i.d. degrees with the parity fix and order statistics.
class DegreeSequence {
public:
    /// Wraps a prescribed sequence (test oracles, CSV round trips); no parity fix.
    DegreeSequence(DegreeLaw law, std::vector<Degree> degrees);

    const DegreeLaw& law() const { return law_; }
    std::size_t n() const { return degrees_.size(); }
    std::span<const Degree> degrees() const { return degrees_; }
    Degree degree(Vertex v) const { return degrees_[v]; }
    Degree total() const { return total_; }
    /// Vertex ids by decreasing degree, ties by increasing id.
    std::span<const Vertex> sorted_desc() const { return sorted_desc_; }
    /// Vertex with the i-th largest degree, i >= 1.
    Vertex ranked(std::size_t i) const { return sorted_desc_.at(i - 1); }
    /// Rank (1-based) of vertex v in sorted_desc.
    std::size_t rank_of(Vertex v) const { return rank_[v]; }

private:
    DegreeLaw law_;
    std::vector<Degree> degrees_;
    Degree total_ = 0;
    std::vector<Vertex> sorted_desc_;
    std::vector<std::uint32_t> rank_;
};

/// Draws n i.i.d. degrees from one seeded stream; if the sum is odd the last
/// degree is incremented.
DegreeSequence sample_degree_sequence(const DegreeLaw& law, std::size_t n, std::uint64_t seed);
DegreeSequence sample_degree_sequence(const DegreeLaw& law, std::size_t n, Rng& rng);

/// (c n)^(1/(tau-1)): the continuous solution of 1 - F(u) = 1/n.
double u_n(const DegreeLaw& law, std::size_t n);

/// E[D^a 1{D <= x}] by exact summation of the pmf.
double restricted_moment(const DegreeLaw& law, double a, double x, double tol = 0.0);

}  // namespace fpp

#endif
