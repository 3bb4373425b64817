#pragma once

#include <cstdint>
#include <random>

namespace procyc {

/// Seeded random source with explicit distribution transforms. The mt19937_64
/// engine and the transforms below are fully specified, so a given seed
/// produces the same stream on every platform (std::normal_distribution and
/// friends do not make that guarantee).
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    /// Uniform draw on (0, 1].
    double uniform();

    /// Standard normal via Box-Muller; consumes exactly two uniforms.
    double normal();

    /// Gamma(shape, 1) for shape >= 1 (Marsaglia-Tsang squeeze).
    double gamma(double shape);

    /// Student-t with nu > 0 degrees of freedom (unit scale).
    double student(double nu);

    /// Student-t(nu) scaled to unit variance, nu > 2.
    double standardized_student(double nu);

    std::uint64_t raw() { return eng_(); }

    /// Stream seed for a numbered subtask (replication, index set, ...);
    /// results become independent of scheduling order.
    static std::uint64_t derive(std::uint64_t master, std::uint64_t index);

  private:
    std::mt19937_64 eng_;
};

/// Stream of variance-1 Student draws, the innovation source of the
/// heavy-tailed generators.
class StandardizedStudentSampler {
  public:
    StandardizedStudentSampler(double nu, std::uint64_t seed);

    double next() { return rng_.standardized_student(nu_); }

  private:
    double nu_;
    Rng rng_;
};

}  // namespace procyc
