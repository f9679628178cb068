#include "infbf/special_math.hpp"

#include <algorithm>
#include <cmath>
#include <iterator>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

#include <boost/math/special_functions/beta.hpp>

namespace infbf {
namespace {

constexpr double kStirlingThreshold = 15.0;
// e^-45: a term this small relative to the running sum no longer matters.
const double kTermCutoff = std::exp(-45.0);
constexpr double kAsymptoticCrossover = 1e4;
constexpr double kPeakStartThreshold = 256.0;
constexpr long kMaxSeriesTerms = 50'000'000;

void require(bool ok, const char* what) {
  if (!ok) throw std::domain_error(what);
}

double stirling_log_gamma(double x) {
  // B_{2k} / (2k (2k-1)) for k = 1..8.
  static constexpr double kCoef[] = {
      1.0 / 12.0,        -1.0 / 360.0,       1.0 / 1260.0,   -1.0 / 1680.0,
      1.0 / 1188.0,      -691.0 / 360360.0,  1.0 / 156.0,    -3617.0 / 122400.0,
  };
  const double inv = 1.0 / x;
  const double inv2 = inv * inv;
  double series = 0.0;
  for (int k = 7; k >= 0; --k) series = series * inv2 + kCoef[k];
  series *= inv;
  constexpr double half_log_two_pi = 0.91893853320467274178;
  return (x - 0.5) * std::log(x) - x + half_log_two_pi + series;
}

// zeta(k) - 1 for k = 2..27; beyond that 2^-k + 3^-k is exact to double precision.
constexpr double kZetaMinusOne[] = {
    0.64493406684822643647, 0.2020569031595942854,    0.082323233711138191516, 0.036927755143369926331,
    0.017343061984449139715, 0.0083492773819228268398, 0.0040773561979443393787, 0.0020083928260822144179,
    0.00099457512781808533715, 0.0004941886041194645587, 0.00024608655330804829864, 0.00012271334757848914675,
    6.1248135058704829259e-5, 3.0588236307020493552e-5, 1.5282259408651871733e-5, 7.6371976378997622736e-6,
    3.8172932649998398565e-6, 1.9082127165539389257e-6, 9.5396203387279611315e-7, 4.7693298678780646312e-7,
    2.3845050272773299e-7,   1.1921992596531107307e-7, 5.9608189051259479612e-8, 2.9803503514652280186e-8,
    1.4901554828365041235e-8, 7.450711789835429492e-9};
constexpr double kEulerGamma = 0.57721566490153286061;

// ln Gamma(1 + z) for |z| <= 0.5:
// -log1p(z) + z (1 - gamma) + sum_k (-1)^k (zeta(k) - 1) z^k / k.
double log_gamma_near_one(double z) {
  if (z == 0.0) return 0.0;
  double sum = 0.0;
  double power = -z;
  for (int k = 2; k < 60; ++k) {
    power *= -z;
    const double zeta_m1 =
        k - 2 < static_cast<int>(std::size(kZetaMinusOne)) ? kZetaMinusOne[k - 2] : std::pow(2.0, -k) + std::pow(3.0, -k);
    const double term = zeta_m1 * power / k;
    sum += term;
    if (std::fabs(term) < 1e-18 * std::fabs(sum)) break;
  }
  return -std::log1p(z) + z * (1.0 - kEulerGamma) + sum;
}

double standard_t_cdf(double z, double df) {
  if (z == 0.0) return 0.5;
  const double z2 = z * z;
  // Two-sided tail probability P(|T| > |z|).
  const double tail2 = z2 < df ? boost::math::ibetac(0.5, 0.5 * df, z2 / (df + z2))
                               : boost::math::ibeta(0.5 * df, 0.5, df / (df + z2));
  return z > 0.0 ? 1.0 - 0.5 * tail2 : 0.5 * tail2;
}

double standard_t_logpdf(double z, double df) {
  return log_gamma(0.5 * (df + 1.0)) - log_gamma(0.5 * df) -
         0.5 * std::log(std::numbers::pi * df) - 0.5 * (df + 1.0) * std::log1p(z * z / df);
}

// Lower-tail quantile of the standard t for p < 0.5.
double standard_t_lower_quantile(double p, double df) {
  double hi = 0.0;
  double lo = -1.0;
  while (standard_t_cdf(lo, df) > p) {
    hi = lo;
    lo *= 2.0;
    if (!std::isfinite(lo)) throw std::domain_error("student_t_quantile: p too extreme");
  }
  while (hi - lo > 1e-6 * std::max(1.0, std::fabs(lo))) {
    const double mid = 0.5 * (lo + hi);
    (standard_t_cdf(mid, df) > p ? hi : lo) = mid;
  }
  double x = 0.5 * (lo + hi);
  for (int i = 0; i < 20; ++i) {
    const double f = standard_t_cdf(x, df) - p;
    if (f == 0.0) break;
    (f > 0.0 ? hi : lo) = x;
    const double step = f / std::exp(standard_t_logpdf(x, df));
    double next = x - step;
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    const bool done = std::fabs(next - x) <= 4.0 * std::numeric_limits<double>::epsilon() *
                                                   std::max(1.0, std::fabs(x));
    x = next;
    if (done) break;
  }
  return x;
}

}  // namespace

double log_gamma(double x) {
  require(std::isfinite(x) && x > 0.0, "log_gamma: argument must be positive and finite");
  if (x >= kStirlingThreshold) return stirling_log_gamma(x);
  if (x < 0.5) return log_gamma_near_one(x) - std::log(x);
  if (x < 1.5) return log_gamma_near_one(x - 1.0);
  // Step down into [1.5, 2.5), where ln Gamma(x) = ln(x - 1) + ln Gamma(x - 1).
  double product = 1.0;
  while (x >= 2.5) {
    x -= 1.0;
    product *= x;
  }
  return std::log(product) + std::log1p(x - 2.0) + log_gamma_near_one(x - 2.0);
}

double log_1f1_asymptotic(double a, double b, double x) {
  require(a > 0.0 && b > 0.0 && x > 0.0, "log_1f1_asymptotic: a, b, x must be positive");
  double term = 1.0;
  double sum = 1.0;
  for (int k = 0; k < 500; ++k) {
    const double next = term * (b - a + k) * (1.0 - a + k) / ((k + 1.0) * x);
    if (std::fabs(next) > std::fabs(term)) break;  // the expansion starts to diverge
    term = next;
    sum += term;
    if (std::fabs(term) < 1e-17 * std::fabs(sum)) break;
  }
  return log_gamma(b) - log_gamma(a) + x + (a - b) * std::log(x) + std::log(sum);
}

double log_1f1_series(double a, double b, double x) {
  require(a > 0.0 && b > 0.0 && std::isfinite(x) && x >= 0.0,
          "log_1f1: requires a > 0, b > 0, finite x >= 0");
  if (x == 0.0) return 0.0;

  // Index of the largest term: ratio t_{k+1}/t_k = (a+k) x / ((b+k)(k+1)) crosses one.
  const double lin = b + 1.0 - x;
  const double disc = lin * lin - 4.0 * (b - a * x);
  const double k_peak = disc > 0.0 ? 0.5 * (-lin + std::sqrt(disc)) : 0.0;

  if (k_peak < kPeakStartThreshold) {
    double term = 1.0;
    double sum = 1.0;
    double log_scale = 0.0;
    for (long k = 0; k < kMaxSeriesTerms; ++k) {
      const double ratio = (a + k) * x / ((b + k) * (k + 1.0));
      term *= ratio;
      sum += term;
      if (sum > 1e280) {
        term /= sum;
        log_scale += std::log(sum);
        sum = 1.0;
      }
      if (ratio < 1.0 && term < sum * kTermCutoff) break;
    }
    return log_scale + std::log(sum);
  }

  // Start at the peak and sum outward; every term relative to the peak is <= ~1.
  const double k0 = std::floor(k_peak);
  const double log_peak = log_gamma(a + k0) - log_gamma(a) + log_gamma(b) - log_gamma(b + k0) +
                          k0 * std::log(x) - log_gamma(k0 + 1.0);
  double sum = 1.0;
  double term = 1.0;
  for (double k = k0; k < k0 + kMaxSeriesTerms; k += 1.0) {
    const double ratio = (a + k) * x / ((b + k) * (k + 1.0));
    term *= ratio;
    sum += term;
    if (ratio < 1.0 && term < sum * kTermCutoff) break;
  }
  term = 1.0;
  for (double k = k0; k >= 1.0; k -= 1.0) {
    term *= (b + k - 1.0) * k / ((a + k - 1.0) * x);
    sum += term;
    if (term < sum * kTermCutoff) break;
  }
  return log_peak + std::log(sum);
}

double log_1f1(double a, double b, double x) {
  require(a > 0.0 && b > 0.0, "log_1f1: a and b must be positive");
  require(std::isfinite(x) && x >= 0.0, "log_1f1: x must be finite and non-negative");
  if (x == 0.0) return 0.0;
  const double m = std::max(a, b);
  if (x >= kAsymptoticCrossover && x >= 10.0 * m * m) return log_1f1_asymptotic(a, b, x);
  return log_1f1_series(a, b, x);
}

double student_t_logpdf(double x, double location, double scale, double df) {
  require(scale > 0.0 && df > 0.0, "student_t_logpdf: scale and df must be positive");
  return standard_t_logpdf((x - location) / scale, df) - std::log(scale);
}

double student_t_cdf(double x, double location, double scale, double df) {
  require(scale > 0.0 && df > 0.0, "student_t_cdf: scale and df must be positive");
  return standard_t_cdf((x - location) / scale, df);
}

double student_t_sf(double x, double location, double scale, double df) {
  require(scale > 0.0 && df > 0.0, "student_t_sf: scale and df must be positive");
  return standard_t_cdf((location - x) / scale, df);
}

double student_t_quantile(double p, double location, double scale, double df) {
  require(scale > 0.0 && df > 0.0, "student_t_quantile: scale and df must be positive");
  require(p > 0.0 && p < 1.0, "student_t_quantile: p must lie in (0, 1)");
  if (p == 0.5) return location;
  if (p < 0.5) return location + scale * standard_t_lower_quantile(p, df);
  return location - scale * standard_t_lower_quantile(1.0 - p, df);
}

double inv_gamma_logpdf(double g, double shape, double scale) {
  require(g > 0.0 && shape > 0.0 && scale > 0.0,
          "inv_gamma_logpdf: all arguments must be positive");
  return shape * std::log(scale) - log_gamma(shape) - (shape + 1.0) * std::log(g) - scale / g;
}

double normal_logpdf(double x, double mean, double variance) {
  require(variance > 0.0, "normal_logpdf: variance must be positive");
  const double d = x - mean;
  return -0.5 * std::log(2.0 * std::numbers::pi * variance) - 0.5 * d * d / variance;
}

double normal_cdf(double x, double mean, double variance) {
  require(variance > 0.0, "normal_cdf: variance must be positive");
  return 0.5 * std::erfc(-(x - mean) / std::sqrt(2.0 * variance));
}

double normal_sf(double x, double mean, double variance) {
  require(variance > 0.0, "normal_sf: variance must be positive");
  return 0.5 * std::erfc((x - mean) / std::sqrt(2.0 * variance));
}

}  // namespace infbf
