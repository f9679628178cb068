#include "infbf/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <vector>

#include "infbf/signed_log.hpp"

namespace infbf {
namespace {

// 15-point Kronrod abscissae on [-1, 1] (positive half, centre last) and weights;
// the embedded 7-point Gauss rule uses the odd-indexed abscissae.
constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

constexpr double kEps = std::numeric_limits<double>::epsilon();

struct Panel {
  double a;
  double b;
  double log_value;
  double log_error;
};

struct Piece {
  double log_value;
  double log_error;
};

class Evaluator {
 public:
  Evaluator(const LogIntegrand& f, const QuadratureConfig& config)
      : f_(f), config_(config), remaining_(config.max_subdivisions) {}

  double operator()(double x) {
    ++evaluations_;
    const double v = f_(x);
    if (std::isnan(v)) throw IntegrationError("integrand returned NaN", x, x, 1.0);
    return v;
  }

  Panel panel(double a, double b) {
    const double c = 0.5 * (a + b);
    const double hw = 0.5 * (b - a);
    std::array<double, 15> fv{};
    fv[0] = (*this)(c);
    for (int j = 0; j < 7; ++j) {
      fv[1 + 2 * j] = (*this)(c - hw * kXgk[j]);
      fv[2 + 2 * j] = (*this)(c + hw * kXgk[j]);
    }
    const double m = *std::max_element(fv.begin(), fv.end());
    if (m == kNegInf) return {a, b, kNegInf, kNegInf};
    if (!std::isfinite(m)) throw IntegrationError("integrand is not finite", a, b, 1.0);

    std::array<double, 15> e{};
    for (int i = 0; i < 15; ++i) e[i] = std::exp(fv[i] - m);
    double kronrod = kWgk[7] * e[0];
    double gauss = kWg[3] * e[0];
    for (int j = 0; j < 7; ++j) {
      const double pair = e[1 + 2 * j] + e[2 + 2 * j];
      kronrod += kWgk[j] * pair;
      if (j % 2 == 1) gauss += kWg[j / 2] * pair;
    }
    // QUADPACK-style error scaling against the mean absolute deviation.
    const double mean = 0.5 * kronrod;
    double asc = kWgk[7] * std::fabs(e[0] - mean);
    for (int j = 0; j < 7; ++j) {
      asc += kWgk[j] * (std::fabs(e[1 + 2 * j] - mean) + std::fabs(e[2 + 2 * j] - mean));
    }
    double err = std::fabs(kronrod - gauss);
    if (asc > 0.0 && err > 0.0) err = asc * std::min(1.0, std::pow(200.0 * err / asc, 1.5));
    err = std::max(err, 50.0 * kEps * kronrod);

    const double log_hw = std::log(hw);
    return {a, b, m + log_hw + std::log(kronrod), m + log_hw + std::log(err)};
  }

  // Adaptive bisection of [a, b] until the summed error is below
  // max(rel_tol * value, exp(log_abs_target)).
  Piece adaptive(double a, double b, double log_abs_target, int initial_panels = 1) {
    std::vector<Panel> panels;
    const double width = (b - a) / initial_panels;
    for (int i = 0; i < initial_panels; ++i) {
      const double lo = a + i * width;
      const double hi = i + 1 == initial_panels ? b : a + (i + 1) * width;
      panels.push_back(panel(lo, hi));
    }
    const double log_rel = std::log(config_.rel_tol);
    std::vector<double> scratch;
    for (;;) {
      scratch.clear();
      for (const auto& p : panels) scratch.push_back(p.log_value);
      const double total = log_sum_exp(scratch);
      scratch.clear();
      for (const auto& p : panels) scratch.push_back(p.log_error);
      const double error = log_sum_exp(scratch);
      const double target = std::max(log_rel + total, log_abs_target);
      if (error <= target || total == kNegInf) return {total, error};

      auto worst = std::max_element(panels.begin(), panels.end(),
                                    [](const Panel& l, const Panel& r) {
                                      return l.log_error < r.log_error;
                                    });
      if (remaining_ <= 0) {
        throw IntegrationError("maximum number of subdivisions reached", worst->a, worst->b,
                               std::exp(error - total));
      }
      const double mid = 0.5 * (worst->a + worst->b);
      if (!(mid > worst->a && mid < worst->b)) {
        throw IntegrationError("panel width at floating-point resolution", worst->a, worst->b,
                               std::exp(error - total));
      }
      --remaining_;
      const Panel left = panel(worst->a, mid);
      const Panel right = panel(mid, worst->b);
      *worst = left;
      panels.push_back(right);
    }
  }

  int evaluations() const noexcept { return evaluations_; }
  const QuadratureConfig& config() const noexcept { return config_; }

 private:
  const LogIntegrand& f_;
  QuadratureConfig config_;
  int remaining_;
  int evaluations_ = 0;
};

// Bracket and refine a maximum of h starting from `hint`.
double locate_mode(Evaluator& h, double hint) {
  double z0 = hint;
  double h0 = h(z0);
  if (h0 == kNegInf) {
    double best = kNegInf;
    for (int k = 1; k <= 64 && best == kNegInf; ++k) {
      for (double z : {hint - k, hint + k}) {
        const double v = h(z);
        if (v > best) {
          best = v;
          z0 = z;
        }
      }
    }
    if (best == kNegInf) return std::numeric_limits<double>::quiet_NaN();
    h0 = best;
  }

  double step = 1.0;
  double hr = h(z0 + step);
  double hl = h(z0 - step);
  double lo = z0 - step;
  double hi = z0 + step;
  if (hr > h0 || hl > h0) {
    const double dir = hr > hl ? 1.0 : -1.0;
    double prev = z0 - dir * step;
    double cur = z0;
    double hcur = h0;
    for (int i = 0; i < 200; ++i) {
      const double next = cur + dir * step;
      const double hn = h(next);
      if (hn <= hcur) {
        lo = std::min(prev, next);
        hi = std::max(prev, next);
        break;
      }
      prev = cur;
      cur = next;
      hcur = hn;
      step *= 2.0;
      lo = std::min(prev, cur);
      hi = std::max(prev, cur);
    }
  }

  constexpr double kInvPhi = 0.6180339887498949;
  double x1 = hi - kInvPhi * (hi - lo);
  double x2 = lo + kInvPhi * (hi - lo);
  double f1 = h(x1);
  double f2 = h(x2);
  for (int i = 0; i < 60 && hi - lo > 1e-7 * std::max(1.0, std::fabs(lo)); ++i) {
    if (f1 < f2) {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + kInvPhi * (hi - lo);
      f2 = h(x2);
    } else {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - kInvPhi * (hi - lo);
      f1 = h(x1);
    }
  }
  return f1 > f2 ? x1 : x2;
}

// Distance from the mode at which h has dropped by at least 10 log units.
double drop_distance(Evaluator& h, double mode, double peak, double dir) {
  double s = 1e-4;
  while (s < 1e3 && h(mode + dir * s) > peak - 10.0) s *= 2.0;
  return s;
}

}  // namespace

void QuadratureConfig::validate() const {
  if (!(rel_tol > 0.0 && rel_tol <= 1e-2)) {
    throw std::domain_error("QuadratureConfig: rel_tol must lie in (0, 1e-2]");
  }
  if (max_subdivisions < 1) throw std::domain_error("QuadratureConfig: max_subdivisions >= 1");
  if (!(abs_log_floor < 0.0)) throw std::domain_error("QuadratureConfig: abs_log_floor < 0");
}

QuadratureResult integrate_interval_log(const LogIntegrand& f, double a, double b,
                                        const QuadratureConfig& config) {
  config.validate();
  if (!(std::isfinite(a) && std::isfinite(b) && a < b)) {
    throw std::domain_error("integrate_interval_log: requires finite a < b");
  }
  Evaluator eval(f, config);
  const Piece piece = eval.adaptive(a, b, kNegInf, 4);
  const double rel = piece.log_value == kNegInf ? 0.0 : std::exp(piece.log_error - piece.log_value);
  return {piece.log_value, rel, eval.evaluations()};
}

QuadratureResult integrate_real_line_log(const LogIntegrand& h, const QuadratureConfig& config,
                                         double center_hint) {
  config.validate();
  Evaluator eval(h, config);
  const double mode = locate_mode(eval, center_hint);
  if (std::isnan(mode)) return {kNegInf, 0.0, eval.evaluations()};
  const double peak = eval(mode);

  const double w_left = drop_distance(eval, mode, peak, -1.0);
  const double w_right = drop_distance(eval, mode, peak, +1.0);

  const Piece core = eval.adaptive(mode - w_left, mode + w_right, kNegInf, 2);
  double total = core.log_value;
  double error = core.log_error;
  const double log_rel = std::log(config.rel_tol);

  for (const double dir : {+1.0, -1.0}) {
    double edge = dir > 0 ? mode + w_right : mode - w_left;
    double width = dir > 0 ? w_right : w_left;
    double h_edge = eval(edge);
    for (int iter = 0;; ++iter) {
      if (h_edge < peak + config.abs_log_floor || h_edge == kNegInf) break;
      if (iter > 100 || std::fabs(edge) > 1e4) {
        throw IntegrationError("integrand tail does not decay", edge, edge + dir * width,
                               std::exp(error - total));
      }
      const double outer = edge + dir * width;
      const Piece tail = dir > 0 ? eval.adaptive(edge, outer, log_rel + total - std::log(4.0))
                                 : eval.adaptive(outer, edge, log_rel + total - std::log(4.0));
      total = log_sum_exp(total, tail.log_value);
      error = log_sum_exp(error, tail.log_error);
      const double h_outer = eval(outer);
      const bool decaying = h_outer < h_edge;
      edge = outer;
      h_edge = h_outer;
      width *= 2.0;
      if (decaying && tail.log_value < log_rel + total - std::log(100.0)) break;
    }
  }
  const double rel = total == kNegInf ? 0.0 : std::exp(error - total);
  return {total, rel, eval.evaluations()};
}

QuadratureResult integrate_halfline_log(const LogIntegrand& f, const QuadratureConfig& config,
                                        double scale_hint) {
  if (!(scale_hint > 0.0 && std::isfinite(scale_hint))) {
    throw std::domain_error("integrate_halfline_log: scale_hint must be positive");
  }
  const LogIntegrand in_log_space = [&f](double z) {
    const double g = std::exp(z);
    if (!(g > 0.0) || !std::isfinite(g)) return kNegInf;
    return f(g) + z;
  };
  return integrate_real_line_log(in_log_space, config, std::log(scale_hint));
}

QuadratureResult integrate_upper_tail_log(const LogIntegrand& f, double a,
                                          const QuadratureConfig& config, double scale_hint) {
  return integrate_halfline_log([&f, a](double u) { return f(a + u); }, config, scale_hint);
}

QuadratureResult integrate_lower_tail_log(const LogIntegrand& f, double a,
                                          const QuadratureConfig& config, double scale_hint) {
  return integrate_halfline_log([&f, a](double u) { return f(a - u); }, config, scale_hint);
}

}  // namespace infbf
