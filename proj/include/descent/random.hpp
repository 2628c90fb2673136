#pragma once

#include "descent/complex.hpp"

#include <cstdint>
#include <random>

namespace descent {

using Rng = std::mt19937_64;

// independent stream per trial
Rng trial_rng(std::uint64_t seed, std::uint64_t trial);

int uniform(Rng& rng, int lo, int hi);
Matrix random_matrix(Rng& rng, const Ring& r, std::size_t rows, std::size_t cols, int lo = -3, int hi = 3);

// random complex with support [lo, hi] and ranks in [0, max_rank]
BoundedComplex random_complex(Rng& rng, const Ring& r, Direction dir, int lo, int hi, std::size_t max_rank);
// random element of the module of chain maps X -> Y
ChainMap random_chain_map(Rng& rng, const BoundedComplex& x, const BoundedComplex& y);
// random combination of a basis of chain maps with d h + h d added: a map homotopic to the sampled one
ChainMap random_homotopic(Rng& rng, const ChainMap& f, Homotopy* witness = nullptr);

// A_{i,j} = C_i ⊗ D_j summed over a few pairs
DoubleComplex random_double_complex(Rng& rng, const Ring& r, int lo1, int hi1, int lo2, int hi2, std::size_t max_rank);
TripleComplex random_triple_complex(Rng& rng, const Ring& r, std::size_t max_rank);
DoubleComplex tensor_double(const BoundedComplex& c, const BoundedComplex& d);
DoubleComplex double_sum(const DoubleComplex& a, const DoubleComplex& b);

}  // namespace descent
