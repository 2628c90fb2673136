#pragma once

#include "descent/multi.hpp"

#include <algorithm>
#include <set>

namespace descent {

// ---- décalage, augmentations and extra degeneracies --------------------------

enum class Side { Lower, Upper };

// An augmented object (levels -1..N) with an extra degeneracy:
// extra[k+1]: X_k -> X_{k+1} for k = -1..N-1 (s_{-1} on the lower side, s_{k+1} on the upper side).
template <class C>
struct Decalage {
    Multi<C> aug;
    std::vector<typename C::Mor> extra;
};

// Augmentation validity on an augmented arity-1 object: d0 d0 = d0 d1 into X_{-1}.
template <class C>
bool is_augmentation(const Multi<C>& A) {
    if (A.arity() != 1 || !A.augmented() || A.top() < 0) return false;
    if (A.top() < 1) return true;
    return A.cat.equal(A.cat.compose(A.d(0, 0), A.d(1, 0)), A.cat.compose(A.d(0, 0), A.d(1, 1)));
}

// Forgets d_0, s_0 (lower, shifting the rest down) or the last face and degeneracy (upper).
// Output levels -1..N-1; requires N >= 1.
template <class C>
Decalage<C> decalage(const Multi<C>& X, Side side) {
    if (X.arity() != 1 || X.augmented() || X.var != Variance::Simplicial)
        throw std::invalid_argument("decalage: plain simplicial object expected");
    const int N = X.top();
    if (N < 1) throw std::invalid_argument("decalage: truncation level must be at least 1");
    const int sh = side == Side::Lower ? 1 : 0;
    Decalage<C> r{Multi<C>(X.cat, Shape::augmented(N - 1)), {}};
    for (int k = -1; k <= N - 1; ++k) r.aug.set_ob(k, X.ob(k + 1));
    for (int k = 0; k <= N - 1; ++k)
        for (int i = 0; i <= k; ++i) r.aug.set_d(k, i, X.d(k + 1, i + sh));
    for (int k = 0; k <= N - 2; ++k)
        for (int j = 0; j <= k; ++j) r.aug.set_s(k, j, X.s(k + 1, j + sh));
    for (int k = -1; k <= N - 2; ++k) r.extra.push_back(side == Side::Lower ? X.s(k + 1, 0) : X.s(k + 1, k + 1));
    return r;
}

template <class C>
Decalage<C> dec_lower(const Multi<C>& X) {
    return decalage(X, Side::Lower);
}
template <class C>
Decalage<C> dec_upper(const Multi<C>& X) {
    return decalage(X, Side::Upper);
}

// The identity families of an extra degeneracy, exactly, on the available levels.
// lower: d0 s-1 = id, d_{i+1} s-1 = s-1 d_i, s_0 s-1 = s-1 s-1, s_{j+1} s-1 = s-1 s_j
// upper: d_{n+1} s_{n+1} = id, d_i s_{n+1} = s_n d_i, s_j s_{n+1} = s_{n+2} s_j, s_{n+1} s_{n+1} = s_{n+2} s_{n+1}
template <class C>
bool has_extra_degeneracy(const Multi<C>& A, Side side, const std::vector<typename C::Mor>& e) {
    const auto& cat = A.cat;
    const int N = A.top();
    if (A.arity() != 1 || !A.augmented()) return false;
    if (static_cast<int>(e.size()) < N + 1) return false;
    auto ext = [&](int k) -> const typename C::Mor& { return e[k + 1]; };  // X_k -> X_{k+1}
    for (int k = -1; k <= N - 1; ++k) {
        if (!cat.same(cat.src(ext(k)), A.ob(k)) || !cat.same(cat.tgt(ext(k)), A.ob(k + 1))) return false;
        int top = side == Side::Lower ? 0 : k + 1;
        if (!cat.equal(cat.compose(A.d(k + 1, top), ext(k)), cat.id(A.ob(k)))) return false;
        for (int i = 0; i <= k; ++i) {
            // remaining faces out of level k+1
            int face = side == Side::Lower ? i + 1 : i;
            if (!cat.equal(cat.compose(A.d(k + 1, face), ext(k)), cat.compose(ext(k - 1), A.d(k, i)))) return false;
        }
        if (k + 2 > N) continue;
        for (int j = 0; j <= k + 1; ++j) {
            typename C::Mor lhs = cat.compose(A.s(k + 1, j), ext(k));
            typename C::Mor rhs;
            if (side == Side::Lower)
                rhs = j == 0 ? cat.compose(ext(k + 1), ext(k)) : cat.compose(ext(k + 1), A.s(k, j - 1));
            else
                rhs = j == k + 1 ? cat.compose(ext(k + 1), ext(k)) : cat.compose(ext(k + 1), A.s(k, j));
            if (!cat.equal(lhs, rhs)) return false;
        }
    }
    return true;
}

// ---- simplicial homotopies ----------------------------------------------------

// h(n, i): X_n -> Y_{n+1}, 0 <= i <= n, for n + 1 <= N
template <class C>
struct SimplicialHomotopy {
    std::map<std::pair<int, int>, typename C::Mor> h;
    const typename C::Mor& at(int n, int i) const {
        auto it = h.find({n, i});
        if (it == h.end()) throw std::out_of_range("homotopy component missing");
        return it->second;
    }
};

// f ~ g through h: d0 h0 = f, d_{n+1} h_n = g, and the face/degeneracy compatibilities
template <class C>
bool verify_simplicial_homotopy(const Multi<C>& X, const Multi<C>& Y, const MultiMap<C>& f, const MultiMap<C>& g,
                                const SimplicialHomotopy<C>& H) {
    const auto& cat = X.cat;
    const int N = std::min(X.top(), Y.top());
    auto eq = [&](const typename C::Mor& a, const typename C::Mor& b) { return cat.equal(a, b); };
    for (int n = 0; n + 1 <= N; ++n)
        for (int j = 0; j <= n; ++j) {
            auto it = H.h.find({n, j});
            if (it == H.h.end()) return false;
            if (!cat.same(cat.src(it->second), X.ob(n)) || !cat.same(cat.tgt(it->second), Y.ob(n + 1))) return false;
        }
    for (int n = 0; n + 1 <= N; ++n) {
        if (!eq(cat.compose(Y.d(n + 1, 0), H.at(n, 0)), f.at(n))) return false;
        if (!eq(cat.compose(Y.d(n + 1, n + 1), H.at(n, n)), g.at(n))) return false;
        for (int j = 0; j <= n; ++j)
            for (int i = 0; i <= n + 1; ++i) {
                auto l = cat.compose(Y.d(n + 1, i), H.at(n, j));
                if (i < j) {
                    if (!eq(l, cat.compose(H.at(n - 1, j - 1), X.d(n, i)))) return false;
                } else if (i == j && j >= 1) {
                    if (!eq(l, cat.compose(Y.d(n + 1, i), H.at(n, j - 1)))) return false;
                } else if (i > j + 1) {
                    if (!eq(l, cat.compose(H.at(n - 1, j), X.d(n, i - 1)))) return false;
                }
            }
        if (n + 2 > N) continue;
        for (int j = 0; j <= n; ++j)
            for (int i = 0; i <= n + 1; ++i) {
                auto l = cat.compose(Y.s(n + 1, i), H.at(n, j));
                auto r = i <= j ? cat.compose(H.at(n + 1, j + 1), X.s(n, i)) : cat.compose(H.at(n + 1, j), X.s(n, i - 1));
                if (!eq(l, r)) return false;
            }
    }
    return true;
}

// Contraction data of an augmentation with an extra degeneracy:
// eps: X -> X_{-1}×Δ, zeta: X_{-1}×Δ -> X with eps∘zeta = id, and a homotopy
// id ~ zeta∘eps (lower side) or zeta∘eps ~ id (upper side).
template <class C>
struct ExtraContraction {
    Multi<C> X, base;  // unaugmented X, and the constant object on X_{-1}
    MultiMap<C> eps, zeta;
    SimplicialHomotopy<C> h;
};

template <class C>
ExtraContraction<C> contraction_from_extra(const Multi<C>& A, Side side, const std::vector<typename C::Mor>& e) {
    const auto& cat = A.cat;
    const int N = A.top();
    ExtraContraction<C> r;
    r.X = forget_augmentation(A);
    r.base = constant(cat, A.ob(-1), N);
    auto ext = [&](int k) -> const typename C::Mor& { return e[k + 1]; };
    // the face toward the augmentation that the extra degeneracy splits
    auto down = [&](int k) -> const typename C::Mor& { return A.d(k, side == Side::Lower ? 0 : k); };
    typename C::Mor z = cat.id(A.ob(-1)), ep = cat.id(A.ob(-1));
    for (int n = 0; n <= N; ++n) {
        z = cat.compose(ext(n - 1), z);
        ep = cat.compose(ep, down(n));
        r.zeta.comp[{n}] = z;
        r.eps.comp[{n}] = ep;
    }
    // lower: h_j = s_{-1}^{j+1} d_0^j on X_n
    // upper: the mirror image, h_j = s_{top}^{n-j+1} d_{top}^{n-j}
    for (int n = 0; n + 1 <= N; ++n)
        for (int j = 0; j <= n; ++j) {
            int steps = side == Side::Lower ? j : n - j;
            typename C::Mor m = cat.id(A.ob(n));
            int lvl = n;
            for (int t = 0; t < steps; ++t) m = cat.compose(down(lvl--), m);
            for (int t = 0; t <= steps; ++t) {
                m = cat.compose(ext(lvl), m);
                ++lvl;
            }
            r.h.h[{n, j}] = m;
        }
    return r;
}

// ---- Dold-Puppe ----------------------------------------------------------------

// surjections [n] ->> [m], m from n down to 0 (the component order of (πA)_n)
std::vector<MonotoneMap> dold_puppe_components(int n);

// image factorization θ = mono ∘ epi
std::pair<MonotoneMap, MonotoneMap> epi_mono(const MonotoneMap& theta);

// (πA)_n = ⊔_{θ:[n]->>[m]} A_m for a face-only object A
template <class C>
Multi<C> dold_puppe_pi(const Multi<C>& A, int N) {
    if (A.arity() != 1 || A.augmented() || A.var != Variance::Simplicial)
        throw std::invalid_argument("dold_puppe_pi: face-only simplicial object expected");
    if (N > A.top()) throw std::invalid_argument("dold_puppe_pi: truncation exceeds the input");
    const auto& cat = A.cat;
    Multi<C> P(cat, Shape::simplicial(N));
    std::vector<std::vector<MonotoneMap>> comps(N + 1);
    std::vector<std::vector<typename C::Obj>> parts(N + 1);
    for (int n = 0; n <= N; ++n) {
        comps[n] = dold_puppe_components(n);
        for (const auto& th : comps[n]) parts[n].push_back(A.ob(th.m));
        P.set_ob(n, cat.coproduct(parts[n]));
    }
    auto position = [&](int n, const MonotoneMap& e) {
        auto it = std::find(comps[n].begin(), comps[n].end(), e);
        return static_cast<int>(it - comps[n].begin());
    };
    for (int n = 0; n <= N; ++n)
        for (const auto& g : detail::gens_at(Variance::Simplicial, n, false)) {
            MonotoneMap t = detail::gen_map(Variance::Simplicial, n, g);
            if (t.n < 0 || t.n > N) continue;
            BlockSpec<typename C::Mor> spec;
            for (const auto& th : comps[n]) {
                auto [epi, mono] = epi_mono(compose(th, t));
                spec.target.push_back(position(t.n, epi));
                spec.maps.push_back(A.act({th.m}, 0, mono));
            }
            auto m = cat.block(parts[n], parts[t.n], spec);
            if (g.face)
                P.set_d(n, g.k, m);
            else
                P.set_s(n, g.k, m);
        }
    return P;
}

// ---- finite simplicial sets -------------------------------------------------------

using SSet = Multi<SetCat>;
using SMod = Multi<ModCat>;

// levelwise free module; set maps become 0/1 matrices
SMod free_linearize(const SSet& S, const Ring& r);

// Δ[k] truncated at N: level n lists the monotone maps [n] -> [k]
SSet standard_simplex(int k, int N);
// the simplicial subset of Δ[k] generated by vertex sets (each a nonempty subset of [k])
SSet simplicial_subset(int k, const std::vector<std::vector<int>>& generators, int N);
// levelwise product, pairs ordered lexicographically
SSet product(const SSet& a, const SSet& b);
// Δ[k]/∂Δ[k] truncated at N: the basepoint plus the simplices hitting every vertex
SSet sphere_model(int k, int N);

FinMap product_map(const FinMap& f, const FinMap& g);

// Z_{p,q} = A_p ⊠ B_q with structure maps acting on one factor; augmented factors give a biaugmented
// object whose corner A_{-1} ⊠ B_{-1} is kept
template <class C, class FO, class FM>
Multi<C> external(const Multi<C>& A, const Multi<C>& B, FO obj, FM mor) {
    const auto& cat = A.cat;
    const int la = A.shape.low[0], lb = B.shape.low[0];
    Multi<C> Z(cat, Shape({A.top(), B.top()}, {la, lb}, true));
    for (int p = la; p <= A.top(); ++p)
        for (int q = lb; q <= B.top(); ++q) Z.set_ob({p, q}, obj(A.ob(p), B.ob(q)));
    for (int p = la; p <= A.top(); ++p)
        for (int q = lb; q <= B.top(); ++q) {
            for (int i = 0; p > la && i <= p; ++i) Z.set_d({p, q}, 0, i, mor(A.d(p, i), cat.id(B.ob(q))));
            for (int i = 0; q > lb && i <= q; ++i) Z.set_d({p, q}, 1, i, mor(cat.id(A.ob(p)), B.d(q, i)));
            for (int j = 0; p < A.top() && j <= p; ++j) Z.set_s({p, q}, 0, j, mor(A.s(p, j), cat.id(B.ob(q))));
            for (int j = 0; q < B.top() && j <= q; ++j) Z.set_s({p, q}, 1, j, mor(cat.id(A.ob(p)), B.s(q, j)));
        }
    return Z;
}

Multi<SetCat> external_product(const SSet& a, const SSet& b);
Multi<ModCat> external_tensor(const SMod& a, const SMod& b);

// generic random instances for property tests
template <class Gen>
SSet random_sset(Gen& rng, int N) {
    std::uniform_int_distribution<int> kd(1, 3);
    int k = kd(rng);
    std::vector<std::vector<int>> gens;
    std::uniform_int_distribution<int> bit(0, 1);
    int count = 1 + bit(rng) + bit(rng);
    for (int c = 0; c < count; ++c) {
        std::vector<int> g;
        for (int v = 0; v <= k; ++v)
            if (bit(rng)) g.push_back(v);
        if (g.empty()) g.push_back(0);
        gens.push_back(g);
    }
    return simplicial_subset(k, gens, N);
}

}  // namespace descent
