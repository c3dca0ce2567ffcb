#include "percolab/spectral.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <vector>

#include "percolab/rng.hpp"

namespace percolab {

namespace {

void require_connected(const Graph& g) {
  if (!is_connected(g))
    fail(ErrorCode::Disconnected, "lambda is defined here for connected graphs only");
}

// y = A x - mean(A x): adjacency apply followed by projection against the
// all-ones eigenvector. Valid deflation for regular graphs only.
void apply_deflated(const Graph& g, const std::vector<double>& x, std::vector<double>& y) {
  const Vertex n = g.num_vertices();
  double sum = 0.0;
  for (Vertex u = 0; u < n; ++u) {
    double acc = 0.0;
    for (Vertex v : g.neighbors(u)) acc += x[v];
    y[u] = acc;
    sum += acc;
  }
  const double mean = sum / n;
  for (Vertex u = 0; u < n; ++u) y[u] -= mean;
}

double norm2(const std::vector<double>& x) {
  double s = 0.0;
  for (double v : x) s += v * v;
  return std::sqrt(s);
}

}  // namespace

SpectralEstimate dense_lambda(const Graph& g) {
  const Vertex n = g.num_vertices();
  if (n > 4096) fail(ErrorCode::InvalidArgument, "dense solver capped at n = 4096");
  require_connected(g);

  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v : g.neighbors(u)) a(u, v) = 1.0;

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(a, Eigen::EigenvaluesOnly);
  const auto& ev = solver.eigenvalues();  // ascending
  SpectralEstimate est;
  est.method = SpectralMethod::dense_exact;
  est.lambda = n >= 2 ? std::max(std::abs(ev(0)), std::abs(ev(n - 2))) : 0.0;
  est.lambda = std::min(est.lambda, static_cast<double>(g.degree()));
  est.residual = 0.0;
  est.converged = true;
  return est;
}

SpectralEstimate estimate_lambda(const Graph& g, double tol, std::uint64_t max_iter) {
  if (!(tol > 0)) fail(ErrorCode::InvalidArgument, "tol must be positive");
  const Vertex n = g.num_vertices();
  if (n <= 512) return dense_lambda(g);
  require_connected(g);

  // Fixed pseudo-random start vector, centered so it is orthogonal to 1.
  std::vector<double> x(n), y(n), z(n);
  double mean = 0.0;
  for (Vertex u = 0; u < n; ++u) {
    x[u] = static_cast<double>(splitmix64(0x5eedULL + u) >> 11) * 0x1.0p-53 - 0.5;
    mean += x[u];
  }
  mean /= n;
  for (double& v : x) v -= mean;
  double nrm = norm2(x);
  for (double& v : x) v /= nrm;

  SpectralEstimate est;
  est.method = SpectralMethod::power_deflated;
  est.converged = false;
  for (std::uint64_t iter = 1; iter <= max_iter; ++iter) {
    apply_deflated(g, x, y);
    apply_deflated(g, y, z);  // z = B^2 x, positive semidefinite operator
    double mu = 0.0;
    for (Vertex u = 0; u < n; ++u) mu += x[u] * z[u];
    double rr = 0.0;
    for (Vertex u = 0; u < n; ++u) {
      const double r = z[u] - mu * x[u];
      rr += r * r;
    }
    const double residual = std::sqrt(rr) / std::max(1.0, mu);
    est.lambda = std::sqrt(std::max(mu, 0.0));
    est.iterations = iter;
    est.residual = residual;
    if (residual <= tol) {
      est.converged = true;
      break;
    }
    nrm = norm2(z);
    if (nrm == 0.0) {  // annihilated: spectrum of B is exactly {0}
      est.lambda = 0.0;
      est.residual = 0.0;
      est.converged = true;
      break;
    }
    for (Vertex u = 0; u < n; ++u) x[u] = z[u] / nrm;
  }
  est.lambda = std::min(est.lambda, static_cast<double>(g.degree()));
  return est;
}

MixingReport mixing_check(const Graph& g, std::span<const Vertex> b_set,
                          std::span<const Vertex> c_set, double lambda) {
  if (!(lambda >= 0)) fail(ErrorCode::InvalidArgument, "lambda must be nonnegative");
  const Vertex n = g.num_vertices();
  std::vector<std::uint8_t> in_b(n, 0), in_c(n, 0);
  MixingReport rep;
  for (Vertex u : b_set) {
    if (u >= n) fail(ErrorCode::VertexOutOfRange, "B contains " + std::to_string(u));
    if (!in_b[u]) {
      in_b[u] = 1;
      ++rep.b_size;
    }
  }
  for (Vertex u : c_set) {
    if (u >= n) fail(ErrorCode::VertexOutOfRange, "C contains " + std::to_string(u));
    if (!in_c[u]) {
      in_c[u] = 1;
      ++rep.c_size;
    }
  }

  for (Vertex u = 0; u < n; ++u) {
    if (!in_b[u]) continue;
    std::uint64_t row = 0;
    for (Vertex v : g.neighbors(u)) row += in_c[v];
    rep.e_bc += row;
  }

  const double b = static_cast<double>(rep.b_size) / n;
  const double c = static_cast<double>(rep.c_size) / n;
  rep.expected = b * c * g.degree() * n;
  rep.bound = lambda * n * std::sqrt(b * c);
  rep.discrepancy = std::abs(static_cast<double>(rep.e_bc) - rep.expected);
  rep.satisfied = rep.discrepancy <= rep.bound;
  return rep;
}

MixingAudit mixing_audit(const Graph& g, std::uint64_t samples, std::uint64_t seed,
                         double lambda) {
  const Vertex n = g.num_vertices();
  MixingAudit audit;
  audit.samples = samples;
  std::vector<Vertex> b_set, c_set;
  for (std::uint64_t s = 0; s < samples; ++s) {
    Rng rng(derive_seed(seed, s));
    const double b_density = 0.05 + 0.9 * rng.uniform01();
    const double c_density = 0.05 + 0.9 * rng.uniform01();
    b_set.clear();
    c_set.clear();
    for (Vertex u = 0; u < n; ++u) {
      if (rng.uniform01() < b_density) b_set.push_back(u);
      if (rng.uniform01() < c_density) c_set.push_back(u);
    }
    const MixingReport rep = mixing_check(g, b_set, c_set, lambda);
    if (!rep.satisfied) ++audit.violations;
    const double ratio = rep.bound > 0 ? rep.discrepancy / rep.bound : 0.0;
    if (ratio >= audit.worst_ratio) {
      audit.worst_ratio = ratio;
      audit.worst = rep;
    }
  }
  return audit;
}

}  // namespace percolab
