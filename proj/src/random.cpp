#include "procyc/random.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace procyc {

double Rng::uniform() {
    // 53 random bits mapped to (0, 1]; never 0, so log(u) is safe.
    return (static_cast<double>(eng_() >> 11) + 1.0) * 0x1.0p-53;
}

double Rng::normal() {
    const double u1 = uniform();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

double Rng::gamma(double shape) {
    if (!(shape >= 1.0)) throw std::invalid_argument("Rng::gamma: shape must be >= 1");
    const double d = shape - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
        double x, v;
        do {
            x = normal();
            v = 1.0 + c * x;
        } while (v <= 0.0);
        v = v * v * v;
        const double u = uniform();
        if (u < 1.0 - 0.0331 * x * x * x * x) return d * v;
        if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v;
    }
}

double Rng::student(double nu) {
    if (!(nu > 0.0)) throw std::invalid_argument("Rng::student: nu must be positive");
    const double z = normal();
    const double chi2 = 2.0 * gamma(0.5 * nu);
    return z / std::sqrt(chi2 / nu);
}

double Rng::standardized_student(double nu) {
    if (!(nu > 2.0)) throw std::invalid_argument("standardized student requires nu > 2");
    return student(nu) * std::sqrt((nu - 2.0) / nu);
}

std::uint64_t Rng::derive(std::uint64_t master, std::uint64_t index) {
    // splitmix64 over the pair; decorrelates consecutive indices.
    std::uint64_t z = master + 0x9E3779B97F4A7C15ull * (index + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

StandardizedStudentSampler::StandardizedStudentSampler(double nu, std::uint64_t seed)
    : nu_(nu), rng_(seed) {
    if (!(nu > 2.0)) {
        throw std::invalid_argument("StandardizedStudentSampler: nu must exceed 2");
    }
}

}  // namespace procyc
