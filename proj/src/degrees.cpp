#include "fpp/degrees.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace fpp {

DegreeLaw::DegreeLaw(double tau, double scale_c) : tau_(tau), scale_c_(scale_c) {
    if (!(tau > 1.0 && tau < 2.0)) throw std::invalid_argument("DegreeLaw: tau must lie strictly inside (1,2)");
    if (!(scale_c > 0.0) || !std::isfinite(scale_c)) throw std::invalid_argument("DegreeLaw: scale_c must be positive");
}

double DegreeLaw::survival(double x) const {
    if (x < 1.0) return 1.0;
    const double k = std::floor(x);
    return std::min(1.0, scale_c_ * std::pow(k, -alpha()));
}

double DegreeLaw::pmf(Degree k) const {
    if (k == 0) return 0.0;
    return survival(static_cast<double>(k - 1)) - survival(static_cast<double>(k));
}

std::string DegreeLaw::describe() const {
    std::ostringstream os;
    os << "P(D>k)=min(1," << scale_c_ << "*k^-" << alpha() << ")";
    return os.str();
}

Degree sample_degree(const DegreeLaw& law, double u) {
    const double x = std::ceil(std::pow(u / law.scale_c(), -1.0 / law.alpha()));
    if (!(x >= 1.0)) return 1;
    if (x >= static_cast<double>(kMaxDegree)) return kMaxDegree;
    return static_cast<Degree>(x);
}

DegreeSequence::DegreeSequence(DegreeLaw law, std::vector<Degree> degrees) : law_(law), degrees_(std::move(degrees)) {
    if (degrees_.empty()) throw std::invalid_argument("DegreeSequence: empty");
    for (Degree d : degrees_) {
        if (d == 0) throw std::invalid_argument("DegreeSequence: every degree must be >= 1");
        total_ += d;
    }
    sorted_desc_.resize(degrees_.size());
    std::iota(sorted_desc_.begin(), sorted_desc_.end(), Vertex{0});
    std::stable_sort(sorted_desc_.begin(), sorted_desc_.end(),
                     [this](Vertex a, Vertex b) { return degrees_[a] > degrees_[b]; });
    rank_.resize(degrees_.size());
    for (std::size_t i = 0; i < sorted_desc_.size(); ++i) rank_[sorted_desc_[i]] = static_cast<std::uint32_t>(i + 1);
}

DegreeSequence sample_degree_sequence(const DegreeLaw& law, std::size_t n, Rng& rng) {
    if (n < 2) throw std::invalid_argument("sample_degree_sequence: n must be >= 2");
    std::vector<Degree> degrees(n);
    Degree total = 0;
    for (auto& d : degrees) {
        d = sample_degree(law, uniform01(rng));
        total += d;
    }
    if (total % 2 != 0) ++degrees.back();
    return DegreeSequence(law, std::move(degrees));
}

DegreeSequence sample_degree_sequence(const DegreeLaw& law, std::size_t n, std::uint64_t seed) {
    Rng rng(seed);
    return sample_degree_sequence(law, n, rng);
}

double u_n(const DegreeLaw& law, std::size_t n) {
    if (n < 1) throw std::invalid_argument("u_n: n must be >= 1");
    return std::pow(law.scale_c() * static_cast<double>(n), 1.0 / law.alpha());
}

double restricted_moment(const DegreeLaw& law, double a, double x, double /*tol*/) {
    if (!(a > 0.0) || !(x >= 1.0)) throw std::invalid_argument("restricted_moment: need a > 0 and x >= 1");
    const auto top = static_cast<Degree>(std::floor(x));
    double sum = 0.0;
    for (Degree k = 1; k <= top; ++k) sum += law.pmf(k) * std::pow(static_cast<double>(k), a);
    return sum;
}

}  // namespace fpp
