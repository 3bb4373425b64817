#pragma once

#include <cstddef>

namespace procyc {

/// Standard normal quantile function (Acklam's rational approximation
/// polished with one Halley step; accurate to full double precision).
double inverse_normal_cdf(double p);

/// Regularized incomplete beta I_x(a, b) via the Lentz continued fraction.
double regularized_incomplete_beta(double a, double b, double x);

/// CDF of the Student-t distribution with nu degrees of freedom.
double student_t_cdf(double t, double nu);

/// Log-density of the Student-t(nu) scaled to unit variance (nu > 2).
double standardized_student_logpdf(double x, double nu);

/// Log-density of a centered normal with standard deviation sigma.
double normal_logpdf(double x, double sigma);

}  // namespace procyc
