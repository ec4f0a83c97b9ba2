#include <cmath>
#include <sstream>
#include <stdexcept>

#include "retcc/errors.hpp"
#include "retcc/pes.hpp"

namespace retcc {

ExpRepulsionDispersion::ExpRepulsionDispersion(double a, double alpha, double c6)
    : a_(a), alpha_(alpha), c6_(c6) {
    if (alpha <= 0.0) throw ValidationError("radial: alpha must be > 0");
}

ExpRepulsionDispersion ExpRepulsionDispersion::from_well(double depth, double r_e,
                                                         double alpha) {
    // v(r) = a e^(-alpha r) - c6/r^6 with v(r_e) = -depth, v'(r_e) = 0
    if (depth <= 0.0 || r_e <= 0.0) throw ValidationError("radial: bad well parameters");
    if (alpha * r_e <= 6.0)
        throw ValidationError("radial: alpha*r_e must exceed 6 for a bound well");
    const double c6 = depth * std::pow(r_e, 6) / (1.0 - 6.0 / (alpha * r_e));
    const double x = 6.0 * c6 / (alpha * std::pow(r_e, 7));  // a e^(-alpha r_e)
    const double a = x * std::exp(alpha * r_e);
    return ExpRepulsionDispersion(a, alpha, c6);
}

double ExpRepulsionDispersion::value(double r) const {
    if (r <= 0.0) throw std::domain_error("radial function needs r > 0");
    return a_ * std::exp(-alpha_ * r) - c6_ / std::pow(r, 6);
}

std::string ExpRepulsionDispersion::describe() const {
    std::ostringstream os;
    os << "exp-repulsion-plus-dispersion(a=" << a_ << ", alpha=" << alpha_
       << ", c6=" << c6_ << ")";
    return os.str();
}

TabulatedRadial::TabulatedRadial(std::vector<double> r, std::vector<double> v,
                                 int tail_power)
    : r_(std::move(r)), v_(std::move(v)), tail_power_(tail_power) {
    if (r_.size() != v_.size() || r_.size() < 4)
        throw ValidationError("tabulated radial: need >= 4 knots");
    for (std::size_t i = 1; i < r_.size(); ++i)
        if (r_[i] <= r_[i - 1]) throw ValidationError("tabulated radial: knots not increasing");
    if (tail_power_ < 4) throw ValidationError("tabulated radial: tail power < 4 decays too slowly");

    // Fritsch-Carlson monotone cubic slopes
    const std::size_t n = r_.size();
    std::vector<double> d(n - 1);
    for (std::size_t i = 0; i + 1 < n; ++i)
        d[i] = (v_[i + 1] - v_[i]) / (r_[i + 1] - r_[i]);
    slope_.assign(n, 0.0);
    slope_[0] = d[0];
    slope_[n - 1] = d[n - 2];
    for (std::size_t i = 1; i + 1 < n; ++i) {
        if (d[i - 1] * d[i] <= 0.0) {
            slope_[i] = 0.0;
        } else {
            double w1 = 2.0 * (r_[i + 1] - r_[i]) + (r_[i] - r_[i - 1]);
            double w2 = (r_[i + 1] - r_[i]) + 2.0 * (r_[i] - r_[i - 1]);
            slope_[i] = (w1 + w2) / (w1 / d[i - 1] + w2 / d[i]);
        }
    }
    tail_coeff_ = v_.back() * std::pow(r_.back(), tail_power_);
}

double TabulatedRadial::value(double r) const {
    if (r < r_.front())
        throw ValidationError("tabulated radial: r below tabulated range");
    if (r >= r_.back())
        return tail_coeff_ / std::pow(r, tail_power_);
    auto it = std::upper_bound(r_.begin(), r_.end(), r);
    std::size_t i = static_cast<std::size_t>(it - r_.begin()) - 1;
    const double h = r_[i + 1] - r_[i];
    const double t = (r - r_[i]) / h;
    const double t2 = t * t, t3 = t2 * t;
    const double h00 = 2 * t3 - 3 * t2 + 1;
    const double h10 = t3 - 2 * t2 + t;
    const double h01 = -2 * t3 + 3 * t2;
    const double h11 = t3 - t2;
    return h00 * v_[i] + h10 * h * slope_[i] + h01 * v_[i + 1] + h11 * h * slope_[i + 1];
}

std::string TabulatedRadial::describe() const {
    std::ostringstream os;
    os << "tabulated(" << r_.size() << " knots, [" << r_.front() << ", " << r_.back()
       << "] bohr, r^-" << tail_power_ << " tail)";
    return os.str();
}

std::string ScaledRadial::describe() const {
    std::ostringstream os;
    os << scale_ << " * " << base_->describe();
    return os.str();
}

}  // namespace retcc
