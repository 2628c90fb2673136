#pragma once

#include "descent/formats.hpp"
#include "descent/random.hpp"

#include <climits>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace descent {

enum class Sense { Decreasing, Increasing };

// A cochain complex over a prime field with a biregular filtration.
// Stored decreasing: filt(k, q) spans F^k A^q. An increasing W is kept as F^k = W_{-k};
// `sense` only changes how files are read and written.
// Outside the window F^k is everything (k < klo) or zero (k > khi).
struct FilteredComplex {
    BoundedComplex A;
    Sense sense = Sense::Decreasing;
    int klo = 0, khi = -1;
    std::map<std::pair<int, int>, Matrix> F;  // (k, q) -> spanning columns, k in [klo, khi]

    Matrix filt(int k, int q) const;
    std::size_t dim(int k, int q) const;
    void set(int k, int q, const Matrix& span);
    // nested, d-compatible, spanning matrices of the right height; throws with a description
    void validate() const;
};

// trivial filtration: F^w = A, F^{w+1} = 0
FilteredComplex trivial_filtration(const BoundedComplex& A, int w = 0);

struct FilteredMap {
    FilteredComplex src, tgt;
    ChainMap f;
    bool compatible() const;  // f(F^k) ⊆ F^k
};

// basis of the vectors of span(s) that d maps into span(w)
Matrix preimage_in(const Matrix& d, const Matrix& s, const Matrix& w);

// Gr_k A = F^k / F^{k+1}, with the complement basis of quotient_map
BoundedComplex gr(const FilteredComplex& F, int k);
ChainMap gr_map(const FilteredMap& f, int k);

struct PageEntry {
    Matrix Z;      // basis of Z_r^{p,q} in A^{p+q}
    Quotient quo;  // Z coordinates -> E_r coordinates, killing B_r ∩ Z_r
    std::size_t dim() const { return quo.dim(); }
};

// Z_r^{p,q} = F^p A^n ∩ d^{-1} F^{p+r} A^{n+1},  B_r^{p,q} = F^{p+1} A^n + d F^{p-r+1} A^{n-1},
// E_r = Z_r / (B_r ∩ Z_r), n = p + q; d_r: E_r^{p,q} -> E_r^{p+r,q-r+1}
struct SpectralPage {
    int r = 0;
    int plo = 0, phi = -1, nlo = 0, nhi = -1;  // p window and total degrees
    std::map<std::pair<int, int>, PageEntry> E;
    std::map<std::pair<int, int>, Matrix> d;
    std::size_t dim(int p, int q) const;
    Matrix diff(int p, int q) const;  // zero matrix when either end is outside
    // `E_r:` then rows q (top = largest) and columns p of dimensions
    std::string table() const;
};
SpectralPage spectral_page(const FilteredComplex& F, int r);

// dim E_{r+1}^{p,q} = dim ker d_r - rank of the incoming d_r, at every (p, q)
bool page_recursion_holds(const FilteredComplex& F, int r);
// d_r ∘ d_r = 0 everywhere on the page
bool page_squares_to_zero(const SpectralPage& P);

// E_r(f) per (p, q); `below` restricts to total degrees n < below
std::map<std::pair<int, int>, Matrix> page_map(const FilteredMap& f, int r, int below = INT_MAX);
bool is_Er_iso(const FilteredMap& f, int r, int below = INT_MAX);
bool is_filtered_quasi_iso(const FilteredMap& f, int below = INT_MAX);  // E_1 iso
bool is_E2_iso(const FilteredMap& f, int below = INT_MAX);

// Dec(F)^p A^n = Z_1^{p+n,-p}
FilteredComplex decalage(const FilteredComplex& F);
FilteredMap decalage(const FilteredMap& f);
// dim E_r^{p,q}(Dec F) = dim E_{r+1}^{p+n,-p}(F), n = p + q, over the whole window; r >= 1
bool decalage_shift_check(const FilteredComplex& F, int r);

// column filtration F^p Tot^n = ⊕_{i >= p} A^{i, n-i} of a cochain double complex
FilteredComplex column_filtration(const DoubleComplex& a);
// the cochain double complex dual to a chain one, same indices
DoubleComplex dual_double(const DoubleComplex& a);

// ---- cosimplicial filtered complexes ---------------------------------------------------

// X cosimplicial cochain complexes on levels 0..N, levels[i].A == X.ob(i), cofaces filtered
struct CosFiltered {
    Multi<ComplexCat> X;
    std::vector<FilteredComplex> levels;
    void validate() const;
};

struct CosSimple {
    BoundedComplex c;
    std::vector<std::vector<std::pair<int, std::size_t>>> layout;  // degree n: (level i, offset) of A^{i, n-i}
    std::size_t offset(int n, int i) const;
};
// s(A)^n = ⊕_{i+j=n} A^{i,j}, d = d_{A^i} + Σ_k (-1)^{k+j} ∂^k on A^{i,j}, degrees 0..Q
CosSimple cosimplicial_simple(const Multi<ComplexCat>& X, int Q);

// (s F)^k = ⊕ F^k A^{i,j}
FilteredComplex filtered_simple_ss(const CosFiltered& X, int Q);
// (δ F)^k = ⊕ F^{k-i} A^{i,j}
FilteredComplex filtered_simple_sdelta(const CosFiltered& X, int Q);
FilteredMap filtered_simple_map(const CosFiltered& X, const CosFiltered& Y, const MultiMap<ComplexCat>& f, int Q,
                                bool diagonal);
CosFiltered levelwise_decalage(const CosFiltered& X);
// Gr_k X levelwise, with the induced cofaces
Multi<ComplexCat> levelwise_gr(const CosFiltered& X, int k);

// Dec(δF) = s(Dec F) as subspaces in every degree n < Q and every filtration index
bool decalage_commutes(const CosFiltered& X, int Q);
// Gr_k (s,s)(X) equals s(Gr_k X) as complexes in degrees < Q
bool gr_commutes(const CosFiltered& X, int Q, int k);

// ---- random instances ----------------------------------------------------------------------

// direct sum of pieces e -> e' (weights w(e) <= w(e')) and single cycles, in degrees [0, P], weights in
// [0, W], then a random filtered change of basis
FilteredComplex random_filtered(Rng& rng, const Ring& r, int P, int W, std::size_t max_pieces);
// A = C ⊕ E_A -> B = C ⊕ E_B, identity on C, conjugated by filtered isomorphisms. Pieces of E have
// weight gap drawn from `gaps`; a gap g piece dies on page g+1.
FilteredMap random_filtered_map(Rng& rng, const Ring& r, int P, int W, const std::vector<int>& gaps);
// dual of a random simplicial set tensored with random filtered complexes, levels 0..N
CosFiltered random_cos_filtered(Rng& rng, const Ring& r, int N, int P, int W);
// a levelwise map built from one filtered map tensored with a cosimplicial module
struct CosFilteredMap {
    CosFiltered X, Y;
    MultiMap<ComplexCat> f;
};
CosFilteredMap random_cos_filtered_map(Rng& rng, const Ring& r, int N, int P, int W, const std::vector<int>& gaps);

// ---- .fcplx -------------------------------------------------------------------------------------

std::string print_fcplx(const FilteredComplex& F);
FilteredComplex parse_fcplx(const std::string& text);

}  // namespace descent
