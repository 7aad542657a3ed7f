#include "fpp/polylog.hpp"

#include <boost/math/special_functions/gamma.hpp>
#include <boost/math/special_functions/zeta.hpp>
#include <cmath>
#include <stdexcept>

namespace fpp {

namespace {
constexpr double kSeriesSwitch = 0.5;
constexpr int kTerms = 48;
}  // namespace

Polylog::Polylog(double order) : s_(order) {
    if (!(order > 0.0 && order < 1.0)) throw std::invalid_argument("Polylog: order must lie in (0,1)");
    gamma_1ms_ = boost::math::tgamma(1.0 - s_);
    coeff_.resize(kTerms);
    double factorial = 1.0;
    for (int k = 0; k < kTerms; ++k) {
        if (k > 0) factorial *= k;
        coeff_[k] = boost::math::zeta(s_ - k) / factorial;
    }
}

double Polylog::direct_series(double s, double x, double rel_tol) {
    if (x == 0.0) return 0.0;
    double sum = 0.0;
    double power = 1.0;
    for (long k = 1;; ++k) {
        power *= x;
        const double term = power * std::pow(static_cast<double>(k), -s);
        sum += term;
        // Remaining terms are bounded by a geometric tail of the current one.
        if (term * x / (1.0 - x) < rel_tol * sum) break;
    }
    return sum;
}

double Polylog::operator()(double x) const {
    if (!(x >= 0.0 && x < 1.0)) throw std::domain_error("Polylog: argument must lie in [0,1)");
    if (x <= kSeriesSwitch) return direct_series(s_, x);
    return at_log(std::log(x));
}

double Polylog::at_log(double mu) const {
    if (!(mu < 0.0)) throw std::domain_error("Polylog: log-argument must be negative");
    if (mu < -2.0) return direct_series(s_, std::exp(mu));
    double sum = gamma_1ms_ * std::pow(-mu, s_ - 1.0);
    double power = 1.0;
    for (int k = 0; k < kTerms; ++k) {
        const double term = coeff_[k] * power;
        sum += term;
        power *= mu;
    }
    return sum;
}

}  // namespace fpp
