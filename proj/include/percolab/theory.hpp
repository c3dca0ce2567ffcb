#pragma once

#include <cstdint>
#include <optional>

namespace percolab {

// Analytic quantities for edge retention rate alpha = p*d. Everything is
// closed-form or a solved root; no sampling.
//
// alpha = 1 is the critical point and is rejected everywhere (AlphaCritical
// when |alpha - 1| < 1e-9). Logarithms are natural throughout.
struct TheoryProfile {
  double alpha = 0.0;
  std::optional<double> alpha_bar;        // dual parameter, alpha > 1 only
  double gamma = 0.0;                     // root of alpha*e^{1-alpha+2*alpha*gamma} = 1
  double zeta = 0.0;                      // 1 / (alpha - 1 - ln alpha)
  double f_alpha = 0.0;                   // limit fraction of vertices on isolated trees
  double giant_fraction = 0.0;            // 1 - alpha_bar/alpha for alpha > 1, else 0
  std::optional<double> giant_edge_ratio; // (alpha + alpha_bar)/2, alpha > 1 only
};

TheoryProfile theory_profile(double alpha);

// The root in (0,1) of x*e^{-x} = alpha*e^{-alpha} for alpha > 1, by bisection
// on the increasing branch, to 1e-12 absolute. Errors: AlphaNotSupercritical.
double solve_alpha_bar(double alpha);

// Partial sum of sum_k k^{k-1}/k! alpha^{k-1} e^{-alpha k}, terms computed in
// the log domain, truncated when term < eps * partial_sum (hard cap 1e5
// terms). Matches the closed form (1 below the transition, alpha_bar/alpha
// above) to 1e-9 at eps = 1e-15. Errors: AlphaCritical.
double f_series(double alpha, double eps = 1e-15);

// Closed form of the series above.
double f_closed(double alpha);

double gamma_of(double alpha);  // (alpha - 1 - ln alpha) / (2 alpha)
double zeta_of(double alpha);   // 1 / (alpha - 1 - ln alpha)

// Upper bound on the expected number of vertices in size-k components,
//   n k^{k-1}/k! alpha^{k-1} e^{-alpha k (1 - xi_k)},
// xi_k = min(k/d, k/n + lambda/d). The log form never overflows.
double log_expected_ck_upper(std::uint64_t n, std::uint32_t d, double lambda,
                             double alpha, std::uint64_t k);
double expected_ck_upper(std::uint64_t n, std::uint32_t d, double lambda, double alpha,
                         std::uint64_t k);

// Lower bound on the expected number of vertices on size-k isolated trees,
//   n k^{k-1}/k! alpha^{k-1} e^{-alpha k (1 + eta_k)},
// eta_k = 2k/d + 2k/(alpha d) + alpha/d. Stated for k much smaller than d;
// guarded at k <= d/10 (KTooLargeForBound).
double log_expected_tk_lower(std::uint64_t n, std::uint32_t d, double alpha,
                             std::uint64_t k);
double expected_tk_lower(std::uint64_t n, std::uint32_t d, double alpha,
                         std::uint64_t k);

// Size window for the largest isolated tree:
//   zeta * (ln n - 2.5 ln ln n) +/- omega.
// Errors: NTooSmall (n < 16), AlphaCritical.
struct TreeWindow {
  double lo = 0.0;
  double hi = 0.0;
  double center = 0.0;
};
TreeWindow largest_tree_window(std::uint64_t n, double alpha, double omega);

// Component sizes in [ln n/(alpha gamma), gamma n] vanish asymptotically;
// the giant (when it exists) lies above, everything else below.
// Errors: WindowEmpty when lo >= hi, AlphaCritical.
struct SizeInterval {
  double lo = 0.0;
  double hi = 0.0;
};
SizeInterval forbidden_interval(std::uint64_t n, double alpha);

// Default slack for the largest-tree window: 2 ln ln n.
double default_omega(std::uint64_t n);

// Residuals of the defining equations, for reporting.
struct TheoryResiduals {
  double dual = 0.0;   // |alpha_bar e^{-alpha_bar} - alpha e^{-alpha}| (alpha > 1)
  double gamma = 0.0;  // |alpha e^{1-alpha+2 alpha gamma} - 1|
};
TheoryResiduals theory_residuals(const TheoryProfile& p);

}  // namespace percolab
