#pragma once

#include "descent/random.hpp"
#include "descent/total.hpp"

namespace descent {

// random g with integer inverse, built from elementary operations
struct Unimodular {
    Matrix fwd, inv;
};
Unimodular random_unimodular(Rng& rng, const Ring& r, std::size_t n, int steps = 6);

// levelwise isomorphism X -> X' together with its inverse
template <class C>
struct LevelIso {
    MultiMap<C> fwd, inv;
};

// X' with X'(θ) = g_tgt X(θ) g_src^{-1}; the basis change hides the permutation structure of linearized sets
struct Conjugated {
    SMod obj;
    LevelIso<ModCat> iso;  // X -> X'
};
Conjugated random_conjugate(Rng& rng, const SMod& X);

// g∘f∘h^{-1} for f: X -> Y, g: Y ≅ Y', h: X ≅ X'
MultiMap<ModCat> transport(const ModCat& cat, const MultiMap<ModCat>& f, const LevelIso<ModCat>& src,
                           const LevelIso<ModCat>& tgt);

// small simplicial sets truncated at N: points and intervals, plus horns and boundaries unless `tiny`
SSet random_small_sset(Rng& rng, int N, bool tiny = true);

// S with S_{-1} a point
SSet augment_to_point(const SSet& S);

// the projection S×T -> S (or onto T)
MultiMap<SetCat> projection(const SSet& S, const SSet& T, int factor);

MultiMap<ModCat> linearize_map(const Ring& r, const MultiMap<SetCat>& f);

// f: X = Z[S×T] -> Y = Z[S], ε = v·(1 ... 1) into a base of rank 1 or 2, both conjugated.
// `target_aug` receives the matching augmentation of Y (so that target_aug∘f = ε).
Omega<ModCat> random_omega(Rng& rng, const Ring& r, int N, MultiMap<ModCat>* target_aug = nullptr);

// Z[S]^+ ⊠ Z[T]^+ conjugated at every index, corner included
SMod random_biaugmented(Rng& rng, const Ring& r, int N);

// a commuting cube over X = Z[S×T], Y = Z[S], U = Z[T], V = Z[pt] with bases of rank 1 or 2
Cube<ModCat> random_cube(Rng& rng, const Ring& r, int N);

}  // namespace descent
