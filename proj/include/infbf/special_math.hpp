#pragma once

// Overflow-safe scalar kernels shared by the Bayes factor engine.
// All functions are pure and thread-safe.

namespace infbf {

/// ln Gamma(x) for x > 0. Stirling series above 15, upward recurrence below.
/// Throws std::domain_error for non-positive or non-finite x.
double log_gamma(double x);

/// ln 1F1(a; b; x) for a > 0, b > 0, x >= 0.
///
/// Every series term is positive on this domain, so the sum is accumulated
/// in rescaled form with no cancellation. Terms are dropped once they fall
/// below e^-45 of the running sum. Large x switches to the asymptotic
/// expansion where it is valid.
double log_1f1(double a, double b, double x);

// Asymptotic branch only; exposed for seam tests.
double log_1f1_asymptotic(double a, double b, double x);
// Series branch only; exposed for seam tests.
double log_1f1_series(double a, double b, double x);

/// Log density of the location-scale Student-t distribution.
double student_t_logpdf(double x, double location, double scale, double df);

/// CDF of the location-scale Student-t via the regularized incomplete beta.
double student_t_cdf(double x, double location, double scale, double df);

/// Upper tail 1 - CDF, computed without subtracting from one.
double student_t_sf(double x, double location, double scale, double df);

/// Inverse CDF. quantile(0.5) returns the location exactly.
double student_t_quantile(double p, double location, double scale, double df);

/// Log density of IG(shape, scale): scale^shape / Gamma(shape) g^(-shape-1) e^(-scale/g).
double inv_gamma_logpdf(double g, double shape, double scale);

double normal_logpdf(double x, double mean, double variance);
double normal_cdf(double x, double mean, double variance);
double normal_sf(double x, double mean, double variance);

}  // namespace infbf
