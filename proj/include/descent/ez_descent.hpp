#pragma once

#include "descent/formats.hpp"
#include "descent/random.hpp"
#include "descent/total.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace descent {

// ---- truncation and homology in a range ----------------------------------------------

// degrees above Q dropped (a quotient complex)
BoundedComplex truncate_above(const BoundedComplex& c, int Q);
ChainMap truncate_above(const ChainMap& f, int Q);

std::vector<HomologyGroup> homology_below(const BoundedComplex& c, int Q);  // degrees 0..Q-1
bool acyclic_below(const BoundedComplex& c, int Q);
// the cone has no homology in degrees < Q
bool quasi_iso_below(const ChainMap& f, int Q);
// f: C -> C with (f - id)(cycles) inside the boundaries in degrees < Q
bool identity_on_homology_below(const ChainMap& f, int Q);
bool zero_on_homology_below(const ChainMap& f, int Q);
// induced map H_q(src) -> H_q(tgt) in the bases of homology_basis; fields only
Matrix homology_matrix(const ChainMap& f, int q);

// ---- K and the normalized K_N ---------------------------------------------------------

// Σ (-1)^i d_i on levels 0..N
BoundedComplex K(const SMod& X);

// quotient of a complex by a subcomplex given degreewise by spanning columns
struct Normalized {
    BoundedComplex c;
    ChainMap proj;                // big -> quotient
    std::map<int, Matrix> lift;   // complement basis per degree, proj∘lift = id
};
Normalized quotient_complex(const BoundedComplex& big, const std::map<int, Matrix>& sub);

// K modulo the degenerate part Σ_j im s_j
Normalized K_N(const SMod& X);

// ---- the simple functor ----------------------------------------------------------------

// levelwise complexes; modules sit in degree 0
SComplex as_complexes(const SMod& X);
// A ⊗ V levelwise: complex A tensored with the free modules of V, structure maps id ⊗ V(θ)
SComplex tensor_object(const BoundedComplex& A, const SMod& V);

struct Summand {
    Index idx;
    int p = 0;
    std::size_t offset = 0, rank = 0;
};

// total complex of an arity-r object of chain complexes in degrees [0,Q]:
//   degree q = ⊕ Z_{idx,p} over idx_1 + ... + idx_r + p = q, idx lexicographic,
//   d = internal d + Σ_a (-1)^{idx_{a+1} + ... + idx_r + p} Σ_i (-1)^i d_i^(a)
// For r = 1 this is (-1)^p ∂ + d_X; for r = 2 it equals s(Δ° s Z) with the inner simple in direction 2.
struct Simple {
    BoundedComplex c;
    std::vector<std::vector<Summand>> layout;  // per degree
    const Summand* find(int q, const Index& idx) const;
};
Simple simple_total(const SComplex& Z, int Q);
BoundedComplex simple_s(const SComplex& X, int Q);
// s on a levelwise map, block diagonal in the summands
ChainMap simple_map(const SComplex& X, const SComplex& Y, const MultiMap<ComplexCat>& f, int Q);
// s of the levelwise quotient by degeneracies in the simplicial direction
Normalized simple_sN(const SComplex& X, int Q);

// λ_A: s(A×Δ) -> A, the projection onto the level-0 summand, and the inclusion ρ with λ∘ρ = id
struct LambdaData {
    BoundedComplex sA;
    ChainMap lambda, rho;
};
LambdaData lambda(const BoundedComplex& A, int Q);

// ---- Alexander-Whitney and shuffles ------------------------------------------------------

// back face [i] -> [n] (x ↦ x + n - i) and front face [j] -> [n] (x ↦ x)
MonotoneMap back_face(int i, int n);
MonotoneMap front_face(int j, int n);

// s(DZ) -> s(Δ° s Z): Z_{n,n} -> Z_{i,j} (i + j = n) by Z(back face, front face)
ChainMap mu_AW(const SComplex& Z, int Q);
// the module case K(DV) -> Tot K Δ°K(V)
ChainMap mu_EZ(const SMod& V, int Q);
// Tot K Δ°K(V) -> K(DV): V_{i,j} -> V_{n,n} by the signed sum over shuffles of degeneracies
ChainMap shuffle_eta(const SMod& V, int Q);

// the surjection [n] -> [m] applying s_{rep_1}, s_{rep_2}, ... (increasing) to an m-simplex
MonotoneMap degeneracy_word(int n, const std::vector<int>& rep);

// the two iterated Alexander-Whitney composites T_{n,n,n} -> ⊕_{r+s+t=n} T_{r,s,t} (lex order)
struct AssocComposites {
    Matrix via_first, via_last;  // (12|3) then (1|2), and (1|23) then (2|3)
    std::vector<Index> targets;
};
AssocComposites mu_assoc_composites(const SMod& T, int n);
bool mu_associativity_check(const SMod& T, int Q);

// ---- cones, shifts and triangles in the descent category ---------------------------------

// c(f) = s C(f×Δ) with the comparison to the classical cone:
// proj∘incl = id and d h + h d = id - incl∘proj in degrees < Q
struct ConeInD {
    BoundedComplex c, classical;
    ChainMap proj, incl;
    std::map<int, Matrix> h;  // degree q -> q+1
    int Q = 0;
};
ConeInD cone_in_D(const ChainMap& f, int Q);
// the first degree where the homotopy identity fails
std::optional<int> cone_homotopy_failure(const ConeInD& k);

// T(X) = c(X -> 0) and its comparison with X[1]
struct ShiftT {
    BoundedComplex T;
    ChainMap to_shift;  // T(X) -> X[1], truncated at Q
};
ShiftT shift_T(const BoundedComplex& X, int Q);

// X -f-> Y -ι-> c(f) -p-> X[1], everything truncated at Q
struct Triangle {
    ChainMap f, iota, p;
    BoundedComplex c;
    int Q = 0;
};
Triangle triangle_of(const ChainMap& f, int Q);
// consecutive composites vanish on homology and the long exact sequence is exact in degrees < Q-1;
// fields only
bool triangle_exact(const Triangle& t);

// ---- zig-zags ---------------------------------------------------------------------------------

// X -f-> T <-w- Y with w a quasi-isomorphism
struct ZigZag {
    BoundedComplex X, Y, T;
    ChainMap f, w;
};
ZigZag identity_zigzag(const BoundedComplex& X);
ZigZag zigzag_of(const ChainMap& f);  // w = id
// homotopy pushout of T <-w- Y -g-> S: P = T ⊕ S ⊕ Y[1], d(t,s,y) = (dt + wy, ds - gy, -dy)
ZigZag zigzag_compose(const ZigZag& F, const ZigZag& G);
// H(w)^{-1} H(f) in degree q; fields only
Matrix zigzag_homology(const ZigZag& z, int q);

// ---- homology of simplicial sets ----------------------------------------------------------

// homology of K (or K_N) of the linearization, degrees 0..N-1
std::vector<HomologyGroup> homology_of_sset(const SSet& S, const Ring& r, bool normalized);

// a simplicial set from nondegenerate cells; faces[i] of a cell of dimension m is
// (cell id, surjection [m-1] ->> [dim of that cell])
struct Cell {
    int dim = 0;
    std::vector<std::pair<int, MonotoneMap>> faces;
};
SSet sset_from_cells(const std::vector<Cell>& cells, int N);
SSet point_model(int N);
SSet circle_model(int N);       // one vertex, one loop
SSet sphere2_model(int N);      // boundary of the 3-simplex
SSet projective_plane_model(int N);  // one cell in each dimension 0, 1, 2 with ∂σ = 2a

// ---- the descent-axiom verifier ---------------------------------------------------------------

struct SdcConfig {
    std::string axiom = "all";  // 3, 4, 5, 6, 6', 7, 8, compat or all
    std::uint64_t seed = 1;
    int trials = 10;
    Ring ring = Ring::prime_field(2);
    int levels = 3;  // simplicial truncation N
    int Q = 3;       // truncation of the simple
    std::size_t max_rank = 3;
    bool inject_fault = false;
};

struct SdcTrial {
    int k = 0;
    std::string axiom;
    bool pass = true;
    std::string reason;   // why it failed
    std::string witness;  // the failing instance, in the text formats
};

struct SdcReport {
    std::vector<SdcTrial> trials;
    bool all_pass() const;
    // `TRIAL <k> PASS|FAIL <axiom>` plus a witness name for failures when `witness_names` is given
    std::string text(const std::vector<std::string>* witness_names = nullptr) const;
};

const std::vector<std::string>& sdc_axioms();
SdcReport sdc_verify(const SdcConfig& cfg);

// random instances shared by the verifier, tests and the acceptance suite
BoundedComplex random_acyclic(Rng& rng, const Ring& r, int lo, int hi, std::size_t max_rank);
// f: A -> B a quasi-isomorphism: A plus an acyclic summand, then a random change of basis
ChainMap random_quasi_iso(Rng& rng, const BoundedComplex& A, std::size_t max_rank);
SComplex random_scomplex(Rng& rng, const Ring& r, int N, int P, std::size_t max_rank);
SMod random_bisimplicial_module(Rng& rng, const Ring& r, int N);
SComplex random_bisimplicial_complex(Rng& rng, const Ring& r, int N, int P, std::size_t max_rank);
SMod random_trisimplicial_module(Rng& rng, const Ring& r, int N);

}  // namespace descent
