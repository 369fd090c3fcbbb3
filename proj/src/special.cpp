#include "spinstat/special.hpp"

#include <cmath>
#include <stdexcept>

namespace spinstat {

namespace {

constexpr double kPi2Over6 = 1.6449340668482264365;

// sum z^k / k^2, |z| <= 1/2
double dilog_series(double z) {
    double sum = 0.0;
    double zk = z;
    for (int k = 1; k < 60; ++k) {
        const double term = zk / (static_cast<double>(k) * k);
        sum += term;
        if (std::abs(term) < 1e-18 * std::max(std::abs(sum), 1.0)) break;
        zk *= z;
    }
    return sum;
}

} // namespace

double dilog(double z) {
    if (z > 1.0) throw std::domain_error("dilog: argument must satisfy z <= 1");
    if (z == 1.0) return kPi2Over6;
    if (z == 0.0) return 0.0;
    if (z < -1.0) {
        const double l = std::log(-z);
        return -dilog(1.0 / z) - kPi2Over6 - 0.5 * l * l;
    }
    if (z > 0.5) {
        return kPi2Over6 - std::log(z) * std::log1p(-z) - dilog(1.0 - z);
    }
    if (z < -0.5) {
        const double l = std::log1p(-z);
        return -dilog(z / (z - 1.0)) - 0.5 * l * l;
    }
    return dilog_series(z);
}

} // namespace spinstat
