#include "percolab/percolation.hpp"

#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>
#include <vector>

#include "percolab/rng.hpp"

namespace percolab {

std::string_view model_name(Model m) { return m == Model::G_p ? "G_p" : "G_m"; }

Model model_from_string(std::string_view s) {
  if (s == "G_p" || s == "p") return Model::G_p;
  if (s == "G_m" || s == "m") return Model::G_m;
  fail(ErrorCode::ParseError, "unknown model " + std::string(s));
}

PercolationSample percolate_p(const Graph& g, double p, std::uint64_t seed) {
  if (!(p >= 0.0 && p <= 1.0)) fail(ErrorCode::ProbabilityOutOfRange, std::to_string(p));
  PercolationSample s;
  s.model = Model::G_p;
  s.p = p;
  s.seed = seed;
  s.graph_fingerprint = g.fingerprint();
  const std::uint64_t total = g.num_edges();
  s.mask = DynamicBitset(total);
  Rng rng(seed);
  std::uint64_t kept = 0;
  for (std::uint64_t e = 0; e < total; ++e) {
    if (rng.uniform01() < p) {
      s.mask.set(e);
      ++kept;
    }
  }
  s.retained = kept;
  return s;
}

namespace {

// Shuffles the first `m2` positions of the identity permutation of edge ids;
// prefixes of the shuffled order are uniform subsets, nested in m.
void partial_shuffle(std::vector<std::uint64_t>& perm, std::uint64_t m2, Rng& rng) {
  const std::uint64_t total = perm.size();
  std::iota(perm.begin(), perm.end(), 0);
  for (std::uint64_t i = 0; i < m2 && i < total; ++i)
    std::swap(perm[i], perm[i + rng.below(total - i)]);
}

PercolationSample sample_from_prefix(const Graph& g, const std::vector<std::uint64_t>& perm,
                                     std::uint64_t m, std::uint64_t seed) {
  PercolationSample s;
  s.model = Model::G_m;
  s.m = m;
  s.seed = seed;
  s.graph_fingerprint = g.fingerprint();
  s.mask = DynamicBitset(g.num_edges());
  for (std::uint64_t i = 0; i < m; ++i) s.mask.set(perm[i]);
  s.retained = m;
  return s;
}

}  // namespace

PercolationSample percolate_m(const Graph& g, std::uint64_t m, std::uint64_t seed) {
  const std::uint64_t total = g.num_edges();
  if (m > total)
    fail(ErrorCode::TooManyEdges, std::to_string(m) + " > " + std::to_string(total));
  std::vector<std::uint64_t> perm(total);
  Rng rng(seed);
  partial_shuffle(perm, m, rng);
  return sample_from_prefix(g, perm, m, seed);
}

std::pair<PercolationSample, PercolationSample> percolate_m_prefix(const Graph& g,
                                                                   std::uint64_t m1,
                                                                   std::uint64_t m2,
                                                                   std::uint64_t seed) {
  const std::uint64_t total = g.num_edges();
  if (m1 > m2) fail(ErrorCode::InvalidArgument, "m1 > m2");
  if (m2 > total)
    fail(ErrorCode::TooManyEdges, std::to_string(m2) + " > " + std::to_string(total));
  std::vector<std::uint64_t> perm(total);
  Rng rng(seed);
  partial_shuffle(perm, m2, rng);
  return {sample_from_prefix(g, perm, m1, seed), sample_from_prefix(g, perm, m2, seed)};
}

double alpha_to_p(double alpha, std::uint32_t d) {
  if (!(alpha > 0)) fail(ErrorCode::InvalidArgument, "alpha must be positive");
  if (alpha > d) fail(ErrorCode::AlphaTooLarge, "alpha > d gives p > 1");
  return alpha / d;
}

std::uint64_t alpha_to_m(double alpha, Vertex n) {
  if (!(alpha > 0)) fail(ErrorCode::InvalidArgument, "alpha must be positive");
  return static_cast<std::uint64_t>(std::llround(alpha * n / 2.0));
}

PercolationSample percolate_alpha(const Graph& g, Model model, double alpha,
                                  std::uint64_t seed) {
  PercolationSample s = model == Model::G_p
                            ? percolate_p(g, alpha_to_p(alpha, g.degree()), seed)
                            : percolate_m(g, alpha_to_m(alpha, g.num_vertices()), seed);
  s.alpha = alpha;
  return s;
}

void save_mask(const PercolationSample& sample, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) fail(ErrorCode::IoError, "cannot open " + path.string() + " for writing");
  out << "# percolab mask v1 rng=" << Rng::name() << " split=" << Rng::split_rule() << '\n';
  out << model_name(sample.model) << ' ';
  if (sample.model == Model::G_p) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", sample.p);
    out << buf;
  } else {
    out << sample.m;
  }
  out << ' ' << sample.seed << ' ' << sample.retained << ' ' << sample.mask.size() << '\n';
  static const char* hex = "0123456789abcdef";
  std::string line;
  line.reserve((sample.mask.size() + 3) / 4);
  for (std::uint64_t nib = 0; nib * 4 < sample.mask.size(); ++nib) {
    unsigned value = 0;
    for (unsigned b = 0; b < 4; ++b) {
      const std::uint64_t bit = nib * 4 + b;
      if (bit < sample.mask.size() && sample.mask.test(bit)) value |= 1u << b;
    }
    line.push_back(hex[value]);
  }
  out << line << '\n';
  if (!out) fail(ErrorCode::IoError, "short write to " + path.string());
}

PercolationSample load_mask(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::IoError, "cannot open " + path.string());
  std::string line;
  if (!std::getline(in, line) || line.rfind("# percolab mask v1", 0) != 0)
    fail(ErrorCode::ParseError, "bad mask header");
  if (!std::getline(in, line)) fail(ErrorCode::ParseError, "missing mask fields");

  PercolationSample s;
  std::istringstream fields(line);
  std::string model;
  std::uint64_t nbits = 0;
  std::string param;
  if (!(fields >> model >> param >> s.seed >> s.retained >> nbits))
    fail(ErrorCode::ParseError, "bad mask fields");
  s.model = model_from_string(model);
  if (s.model == Model::G_p)
    s.p = std::stod(param);
  else
    s.m = std::stoull(param);

  std::string hexline;
  if (!std::getline(in, hexline)) fail(ErrorCode::ParseError, "missing mask payload");
  if (hexline.size() != (nbits + 3) / 4) fail(ErrorCode::ParseError, "mask payload length");
  s.mask = DynamicBitset(nbits);
  for (std::uint64_t nib = 0; nib < hexline.size(); ++nib) {
    const char c = hexline[nib];
    unsigned value = 0;
    if (c >= '0' && c <= '9') value = c - '0';
    else if (c >= 'a' && c <= 'f') value = 10 + (c - 'a');
    else fail(ErrorCode::ParseError, "bad hex digit in mask");
    for (unsigned b = 0; b < 4; ++b)
      if (value & (1u << b)) s.mask.set(nib * 4 + b);
  }
  if (s.mask.count() != s.retained) fail(ErrorCode::ParseError, "retained count mismatch");
  return s;
}

}  // namespace percolab
