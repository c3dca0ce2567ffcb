#include "percolab/theory.hpp"

#include <cmath>
#include <string>

#include "percolab/error.hpp"

namespace percolab {

namespace {

constexpr double kCriticalBand = 1e-9;

void require_off_critical(double alpha) {
  if (!(alpha > 0)) fail(ErrorCode::InvalidArgument, "alpha must be positive");
  if (std::abs(alpha - 1.0) < kCriticalBand)
    fail(ErrorCode::AlphaCritical, "alpha = " + std::to_string(alpha));
}

double dual_map(double x) { return x * std::exp(-x); }

}  // namespace

double solve_alpha_bar(double alpha) {
  if (!(alpha > 1.0)) fail(ErrorCode::AlphaNotSupercritical, "alpha = " + std::to_string(alpha));
  const double target = dual_map(alpha);
  // x e^{-x} is increasing on (0,1), so bisection brackets the root.
  double lo = 1e-15, hi = 1.0;
  for (int iter = 0; iter < 80 && hi - lo > 1e-13; ++iter) {
    const double mid = 0.5 * (lo + hi);
    (dual_map(mid) < target ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

double gamma_of(double alpha) {
  require_off_critical(alpha);
  return (alpha - 1.0 - std::log(alpha)) / (2.0 * alpha);
}

double zeta_of(double alpha) {
  require_off_critical(alpha);
  return 1.0 / (alpha - 1.0 - std::log(alpha));
}

double f_closed(double alpha) {
  require_off_critical(alpha);
  return alpha < 1.0 ? 1.0 : solve_alpha_bar(alpha) / alpha;
}

double f_series(double alpha, double eps) {
  require_off_critical(alpha);
  if (!(eps > 0)) fail(ErrorCode::InvalidArgument, "eps must be positive");
  const double log_alpha = std::log(alpha);
  double sum = 0.0;
  for (std::uint64_t k = 1; k <= 100000; ++k) {
    const double kd = static_cast<double>(k);
    const double log_term =
        (kd - 1.0) * std::log(kd) - std::lgamma(kd + 1.0) + (kd - 1.0) * log_alpha - alpha * kd;
    const double term = std::exp(log_term);
    sum += term;
    if (k > 1 && term < eps * sum) break;
  }
  return sum;
}

double log_expected_ck_upper(std::uint64_t n, std::uint32_t d, double lambda, double alpha,
                             std::uint64_t k) {
  if (n == 0 || d == 0 || k == 0) fail(ErrorCode::InvalidArgument, "n, d, k must be positive");
  if (!(alpha > 0) || !(lambda >= 0))
    fail(ErrorCode::InvalidArgument, "alpha > 0 and lambda >= 0 required");
  const double kd = static_cast<double>(k);
  const double xi = std::min(kd / d, kd / n + lambda / d);
  return std::log(static_cast<double>(n)) + (kd - 1.0) * std::log(kd) -
         std::lgamma(kd + 1.0) + (kd - 1.0) * std::log(alpha) - alpha * kd * (1.0 - xi);
}

double expected_ck_upper(std::uint64_t n, std::uint32_t d, double lambda, double alpha,
                         std::uint64_t k) {
  return std::exp(log_expected_ck_upper(n, d, lambda, alpha, k));
}

double log_expected_tk_lower(std::uint64_t n, std::uint32_t d, double alpha,
                             std::uint64_t k) {
  if (n == 0 || d == 0 || k == 0) fail(ErrorCode::InvalidArgument, "n, d, k must be positive");
  if (!(alpha > 0)) fail(ErrorCode::InvalidArgument, "alpha must be positive");
  if (10 * k > d)
    fail(ErrorCode::KTooLargeForBound,
         "bound needs k much smaller than d (guard k <= d/10), got k=" + std::to_string(k) +
             ", d=" + std::to_string(d));
  const double kd = static_cast<double>(k);
  const double eta = 2.0 * kd / d + 2.0 * kd / (alpha * d) + alpha / d;
  return std::log(static_cast<double>(n)) + (kd - 1.0) * std::log(kd) -
         std::lgamma(kd + 1.0) + (kd - 1.0) * std::log(alpha) - alpha * kd * (1.0 + eta);
}

double expected_tk_lower(std::uint64_t n, std::uint32_t d, double alpha, std::uint64_t k) {
  return std::exp(log_expected_tk_lower(n, d, alpha, k));
}

TreeWindow largest_tree_window(std::uint64_t n, double alpha, double omega) {
  if (n < 16) fail(ErrorCode::NTooSmall, "need n >= 16, got " + std::to_string(n));
  const double zeta = zeta_of(alpha);
  const double ln_n = std::log(static_cast<double>(n));
  TreeWindow w;
  w.center = zeta * (ln_n - 2.5 * std::log(ln_n));
  w.lo = w.center - omega;
  w.hi = w.center + omega;
  return w;
}

SizeInterval forbidden_interval(std::uint64_t n, double alpha) {
  const double gamma = gamma_of(alpha);
  SizeInterval iv;
  iv.lo = std::log(static_cast<double>(n)) / (alpha * gamma);
  iv.hi = gamma * static_cast<double>(n);
  if (!(iv.lo < iv.hi))
    fail(ErrorCode::WindowEmpty, "interval degenerate at n = " + std::to_string(n));
  return iv;
}

double default_omega(std::uint64_t n) {
  if (n < 16) fail(ErrorCode::NTooSmall, "need n >= 16, got " + std::to_string(n));
  return 2.0 * std::log(std::log(static_cast<double>(n)));
}

TheoryProfile theory_profile(double alpha) {
  require_off_critical(alpha);
  TheoryProfile p;
  p.alpha = alpha;
  p.gamma = gamma_of(alpha);
  p.zeta = zeta_of(alpha);
  if (alpha > 1.0) {
    const double ab = solve_alpha_bar(alpha);
    p.alpha_bar = ab;
    p.f_alpha = ab / alpha;
    p.giant_fraction = 1.0 - ab / alpha;
    p.giant_edge_ratio = (alpha + ab) / 2.0;
  } else {
    p.f_alpha = 1.0;
    p.giant_fraction = 0.0;
  }
  return p;
}

TheoryResiduals theory_residuals(const TheoryProfile& p) {
  TheoryResiduals r;
  if (p.alpha_bar)
    r.dual = std::abs(dual_map(*p.alpha_bar) - dual_map(p.alpha));
  r.gamma = std::abs(p.alpha * std::exp(1.0 - p.alpha + 2.0 * p.alpha * p.gamma) - 1.0);
  return r;
}

}  // namespace percolab
