#ifndef FPP_POLYLOG_HPP
#define FPP_POLYLOG_HPP

#include <vector>

namespace fpp {

/// Li_s(x) = sum_{k>=1} x^k / k^s for a fixed order s in (0,1) and x in [0,1).
///
/// Small x uses the defining series. Near 1 it uses the expansion in
/// mu = log x,  Li_s(e^mu) = Gamma(1-s) (-mu)^(s-1) + sum_k zeta(s-k) mu^k / k!,
/// valid for |mu| < 2 pi; the zeta coefficients are computed once per order.
class Polylog {
public:
    explicit Polylog(double order);

    double order() const { return s_; }
    double operator()(double x) const;
    /// Li_s(e^mu) for mu < 0; avoids forming x when it is within rounding of 1.
    double at_log(double mu) const;

    /// Defining series only; slow near 1. Exposed for cross-checks.
    static double direct_series(double s, double x, double rel_tol = 1e-16);

private:
    double s_;
    double gamma_1ms_;
    std::vector<double> coeff_;  // zeta(s-k)/k!
};

}  // namespace fpp

#endif
