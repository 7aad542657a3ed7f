#include "fpp/pdlaw.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

namespace fpp {

namespace {
// Below this s the survival series needs more than ~500 terms at tol 1e-10.
constexpr double kSeriesFrom = 0.05;
constexpr long kSeriesMaxTerms = 50'000'000;
}  // namespace

PDRealization sample_pd(double tau, std::size_t K, Rng& rng) {
    if (!(tau > 1.0 && tau < 2.0)) throw std::invalid_argument("sample_pd: tau must lie strictly inside (1,2)");
    if (K < 1) throw std::invalid_argument("sample_pd: K must be >= 1");
    PDRealization pd;
    pd.tau = tau;
    pd.K = K;
    const double alpha = tau - 1.0;
    pd.xi.resize(K);
    double gamma = 0.0;
    double head = 0.0;
    for (std::size_t i = 0; i < K; ++i) {
        gamma += exponential(rng);
        pd.xi[i] = std::pow(gamma, -1.0 / alpha);
        head += pd.xi[i];
    }
    pd.gamma_K = gamma;
    const double tail = std::pow(gamma, -(1.0 - alpha) / alpha) * alpha / (1.0 - alpha);
    pd.eta = head + tail;
    pd.P.resize(K);
    pd.cumulative.resize(K);
    double cum = 0.0;
    for (std::size_t i = 0; i < K; ++i) {
        pd.P[i] = pd.xi[i] / pd.eta;
        cum += pd.P[i];
        pd.cumulative[i] = cum;
    }
    pd.tail_mass = tail / pd.eta;
    return pd;
}

double sample_tail_xi(const PDRealization& pd, Rng& rng) {
    const double alpha = pd.alpha();
    return pd.xi.back() * std::pow(uniform01(rng), 1.0 / (1.0 - alpha));
}

double pd_moment_exact(double tau, int r) {
    if (r < 2) throw std::invalid_argument("pd_moment_exact: r must be >= 2");
    if (!(tau > 1.0 && tau < 2.0)) throw std::invalid_argument("pd_moment_exact: tau must lie strictly inside (1,2)");
    const double alpha = tau - 1.0;
    return std::exp(std::lgamma(r - alpha) - std::lgamma(static_cast<double>(r)) - std::lgamma(1.0 - alpha));
}

DegreePgf::DegreePgf(const DegreeLaw& law, double tol) : law_(law), tol_(tol), li_(law.alpha()) {
    if (!(tol > 0.0)) throw std::invalid_argument("DegreePgf: tol must be positive");
    k0_ = law.scale_c() >= 1.0 ? std::floor(std::pow(law.scale_c(), 1.0 / law.alpha())) : 0.0;
}

double DegreePgf::complement_series(double s) const {
    if (s <= 0.0) return 0.0;
    if (s >= 1.0) return 1.0;
    const double x = 1.0 - s;
    double sum = 1.0;
    double power = 1.0;
    for (long k = 1; k < kSeriesMaxTerms; ++k) {
        power *= x;
        const double term = law_.survival(static_cast<double>(k)) * power;
        sum += term;
        if (term * x / s < tol_) return s * sum;
    }
    throw std::runtime_error("DegreePgf::complement_series: no convergence (s too small for the series route)");
}

double DegreePgf::complement_polylog(double s) const {
    if (s <= 0.0) return 0.0;
    if (s >= 1.0) return 1.0;
    const double mu = std::log1p(-s);
    const double c = law_.scale_c();
    const double alpha = law_.alpha();
    double head = 0.0;
    for (double k = 1.0; k <= k0_; k += 1.0) head += std::exp(k * mu) * (1.0 - c * std::pow(k, -alpha));
    return s * (1.0 + head + c * li_.at_log(mu));
}

double DegreePgf::complement(double s) const {
    if (s <= 0.0) return 0.0;
    if (s >= 1.0) return 1.0;
    return s >= kSeriesFrom ? complement_series(s) : complement_polylog(s);
}

double DegreePgf::f_joint(double s, double t) const {
    if (s < 0.0 || t < 0.0) throw std::domain_error("f_joint: arguments must be non-negative");
    if (s + t > 1.0 + 1e-12) throw std::domain_error("f_joint: s + t must not exceed 1");
    const double value = complement(s) + complement(t) - complement(std::min(1.0, s + t));
    return std::max(0.0, value);
}

double f_joint(double s, double t, const DegreeLaw& law, double tol) { return DegreePgf(law, tol).f_joint(s, t); }

double pgf_pmf_series(const DegreeLaw& law, double x, double tol) {
    if (x < 0.0 || x > 1.0) throw std::domain_error("pgf_pmf_series: x must lie in [0,1]");
    if (x == 1.0) return 1.0;
    double sum = 0.0;
    double power = 1.0;
    for (Degree k = 1;; ++k) {
        power *= x;
        sum += law.pmf(k) * power;
        if (law.survival(static_cast<double>(k)) * power < tol) break;
        if (k > static_cast<Degree>(kSeriesMaxTerms))
            throw std::runtime_error("pgf_pmf_series: no convergence (x too close to 1)");
    }
    return sum;
}

Cell sample_cell(const PDRealization& pd, Rng& rng) {
    const double u = uniform01(rng);
    Cell cell;
    if (u >= pd.cumulative.back()) {
        cell.synthetic = true;
        cell.index = static_cast<std::uint32_t>(pd.K);
        cell.P = sample_tail_xi(pd, rng) / pd.eta;
        return cell;
    }
    const auto it = std::upper_bound(pd.cumulative.begin(), pd.cumulative.end(), u);
    cell.index = static_cast<std::uint32_t>(it - pd.cumulative.begin());
    cell.P = pd.P[cell.index];
    return cell;
}

DerSample sample_Der_I(const PDRealization& pd, const DegreeLaw& law, Rng& rng) {
    DerSample out;
    out.D = sample_degree(law, uniform01(rng));
    const std::size_t K = pd.K;
    if (out.D <= 4 * K) {
        const double head_mass = pd.cumulative.back();
        for (Degree trial = 0; trial < out.D; ++trial) {
            const double u = uniform01(rng);
            if (u >= head_mass) {
                ++out.tail_cells;
                continue;
            }
            const auto it = std::upper_bound(pd.cumulative.begin(), pd.cumulative.end(), u);
            out.head_cells.push_back(static_cast<std::uint32_t>(it - pd.cumulative.begin()));
        }
        std::sort(out.head_cells.begin(), out.head_cells.end());
        out.head_cells.erase(std::unique(out.head_cells.begin(), out.head_cells.end()), out.head_cells.end());
    } else {
        // Multinomial counts by sequential conditional binomials.
        std::uint64_t remaining = out.D;
        double mass_left = 1.0;
        for (std::size_t i = 0; i < K && remaining > 0; ++i) {
            const double p = std::clamp(pd.P[i] / mass_left, 0.0, 1.0);
            const std::uint64_t hits = std::binomial_distribution<std::uint64_t>(remaining, p)(rng);
            if (hits > 0) out.head_cells.push_back(static_cast<std::uint32_t>(i));
            remaining -= hits;
            mass_left -= pd.P[i];
            if (mass_left <= 0.0) break;
        }
        out.tail_cells = remaining;
    }
    out.D_er = out.head_cells.size() + out.tail_cells;
    const std::uint64_t pick = uniform_below(rng, out.D_er);
    if (pick < out.head_cells.size()) {
        out.I.index = out.head_cells[pick];
        out.I.P = pd.P[out.I.index];
    } else {
        out.I.synthetic = true;
        out.I.index = static_cast<std::uint32_t>(K);
        out.I.P = sample_tail_xi(pd, rng) / pd.eta;
    }
    return out;
}

TailBoundReport f_tail_bound_check(const PDRealization& pd, const DegreeLaw& law, double c_cal) {
    if (pd.K < 100) throw std::invalid_argument("f_tail_bound_check: needs K >= 100");
    DegreePgf pgf(law);
    TailBoundReport rep;
    const double scale = c_cal * std::pow(pd.eta, 1.0 - pd.tau);
    std::vector<double> h(pd.K);
    for (std::size_t i = 0; i < pd.K; ++i) {
        h[i] = pgf.complement(pd.P[i]);
        rep.max_complement_ratio = std::max(rep.max_complement_ratio, h[i] / std::pow(pd.P[i], pd.alpha()));
    }
    for (std::size_t j = 20; j <= pd.K; ++j) {  // j = i v j, 1-based
        const double bound = scale / static_cast<double>(j);
        for (std::size_t i = 1; i < j; ++i) {
            const double s = pd.P[i - 1];
            const double t = pd.P[j - 1];
            const double f = std::max(0.0, h[i - 1] + h[j - 1] - pgf.complement(std::min(1.0, s + t)));
            rep.max_ratio = std::max(rep.max_ratio, f / bound);
            ++rep.pairs_checked;
        }
    }
    rep.holds = rep.max_ratio <= 1.0;
    return rep;
}

}  // namespace fpp
