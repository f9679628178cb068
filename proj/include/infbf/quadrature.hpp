#pragma once

#include <functional>
#include <stdexcept>
#include <string>

namespace infbf {

struct QuadratureConfig {
  double rel_tol = 1e-8;
  // Integrand values this far (in log units) below the located peak count as zero.
  double abs_log_floor = -745.0;
  int max_subdivisions = 2000;

  void validate() const;
};

struct QuadratureResult {
  double log_value = 0.0;
  // Estimated relative error of exp(log_value).
  double error_estimate = 0.0;
  int evaluations = 0;
};

class IntegrationError : public std::runtime_error {
 public:
  IntegrationError(const std::string& what, double lower, double upper, double error_estimate)
      : std::runtime_error(what), lower_(lower), upper_(upper), error_estimate_(error_estimate) {}

  // Bracket of the panel with the largest outstanding error when the budget ran out.
  double lower() const noexcept { return lower_; }
  double upper() const noexcept { return upper_; }
  double error_estimate() const noexcept { return error_estimate_; }

 private:
  double lower_;
  double upper_;
  double error_estimate_;
};

// Maps an abscissa to the natural log of a non-negative integrand (-inf for zero).
using LogIntegrand = std::function<double(double)>;

/// log of the integral of exp(f) over [a, b], adaptive 7/15-point Gauss-Kronrod.
QuadratureResult integrate_interval_log(const LogIntegrand& f, double a, double b,
                                        const QuadratureConfig& config = {});

/// log of the integral of exp(f(g)) over g in (0, inf).
///
/// Integrates in z = ln g over the real line: the mode in z is located first,
/// a core window sized from the local curvature is integrated adaptively, and
/// doubling tail panels are appended on each side until their contribution
/// drops below the tolerance. `scale_hint` is a typical magnitude of g used
/// to seed the mode search.
QuadratureResult integrate_halfline_log(const LogIntegrand& f, const QuadratureConfig& config = {},
                                        double scale_hint = 1.0);

/// log of the integral of exp(h(z)) over the whole real line. h must have
/// log-concave tails. `center_hint` seeds the mode search.
QuadratureResult integrate_real_line_log(const LogIntegrand& h,
                                         const QuadratureConfig& config = {},
                                         double center_hint = 0.0);

/// log of the integral of exp(f) over (a, inf) and over (-inf, a).
QuadratureResult integrate_upper_tail_log(const LogIntegrand& f, double a,
                                          const QuadratureConfig& config = {},
                                          double scale_hint = 1.0);
QuadratureResult integrate_lower_tail_log(const LogIntegrand& f, double a,
                                          const QuadratureConfig& config = {},
                                          double scale_hint = 1.0);

}  // namespace infbf
