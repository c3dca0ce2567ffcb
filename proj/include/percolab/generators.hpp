#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include "percolab/graph.hpp"

namespace percolab {

enum class Family { random_regular, paley, complete, cycle, petersen };

Family family_from_string(std::string_view s);
std::string_view family_name(Family f);

struct GeneratorSpec {
  Family family = Family::random_regular;
  Vertex n = 0;           // random_regular, complete, cycle
  std::uint32_t d = 0;    // random_regular
  std::uint64_t q = 0;    // paley: prime, q = 1 (mod 4)
  std::uint64_t seed = 0; // random_regular
};

// Random simple d-regular graph by uniform stub matching: repeatedly shuffle
// the unmatched degree stubs and pair adjacent ones, recycling stubs whose
// pair would create a self-loop or duplicate edge; a round that makes no
// progress restarts the whole attempt. Deterministic given (n, d, seed);
// restart budget 1000 attempts, then RetryLimitExceeded.
Graph gen_random_regular(Vertex n, std::uint32_t d, std::uint64_t seed);

// Paley graph on Z_q: u ~ v iff u - v is a nonzero quadratic residue mod q.
// Requires q prime (trial division) and q = 1 (mod 4); d = (q-1)/2.
Graph gen_paley(std::uint64_t q);

// Complete graph K_n, n >= 2; d = n-1, lambda = 1.
Graph gen_complete(Vertex n);

// Fixed-spectrum test fixtures: cycle C_n (n >= 3) and the Petersen graph.
// Any other family is UnknownFamily.
Graph gen_fixture(Family family, Vertex n);

Graph gen_cycle(Vertex n);
Graph gen_petersen();

// Dispatch on a GeneratorSpec (CLI and experiment configs).
Graph generate(const GeneratorSpec& spec);

// Vertex count the spec will produce, without generating.
Vertex spec_vertex_count(const GeneratorSpec& spec);

}  // namespace percolab
