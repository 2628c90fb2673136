#pragma once

#include "descent/simplicial.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <stdexcept>

namespace descent {

// ---- coproduct plumbing ---------------------------------------------------------

template <class C>
typename C::Mor injection(const C& cat, const std::vector<typename C::Obj>& parts, std::size_t k) {
    BlockSpec<typename C::Mor> spec{{static_cast<int>(k)}, {cat.id(parts[k])}};
    return cat.block({parts[k]}, parts, spec);
}

// part k of `src` lands in position target[k]; the target list is src permuted accordingly
template <class C>
typename C::Mor permutation(const C& cat, const std::vector<typename C::Obj>& src, const std::vector<int>& target) {
    std::vector<typename C::Obj> tgt(src.size());
    BlockSpec<typename C::Mor> spec;
    for (std::size_t k = 0; k < src.size(); ++k) {
        tgt[target[k]] = src[k];
        spec.target.push_back(target[k]);
        spec.maps.push_back(cat.id(src[k]));
    }
    return cat.block(src, tgt, spec);
}

template <class C>
typename C::Mor block_diagonal(const C& cat, const std::vector<typename C::Mor>& maps) {
    std::vector<typename C::Obj> s, t;
    BlockSpec<typename C::Mor> spec;
    for (std::size_t k = 0; k < maps.size(); ++k) {
        s.push_back(cat.src(maps[k]));
        t.push_back(cat.tgt(maps[k]));
        spec.target.push_back(static_cast<int>(k));
        spec.maps.push_back(maps[k]);
    }
    return cat.block(s, t, spec);
}

// the map out of a coproduct given by one map per part into a common target
template <class C>
typename C::Mor copair(const C& cat, const std::vector<typename C::Mor>& maps) {
    std::vector<typename C::Obj> s;
    BlockSpec<typename C::Mor> spec;
    for (const auto& m : maps) {
        s.push_back(cat.src(m));
        spec.target.push_back(0);
        spec.maps.push_back(m);
    }
    return cat.block(s, {cat.tgt(maps.at(0))}, spec);
}

// position of each label of `from` inside `to`
template <class L>
std::vector<int> match_labels(const std::vector<L>& from, const std::vector<L>& to) {
    if (from.size() != to.size()) throw std::logic_error("match_labels: different component counts");
    std::vector<int> pos;
    for (const L& l : from) {
        auto it = std::find(to.begin(), to.end(), l);
        if (it == to.end()) throw std::logic_error("match_labels: component missing");
        pos.push_back(static_cast<int>(it - to.begin()));
    }
    return pos;
}

// levelwise coproduct of two objects of the same shape
template <class C>
Multi<C> multi_sum(const Multi<C>& A, const Multi<C>& B) {
    if (!(A.shape == B.shape)) throw std::invalid_argument("multi_sum: shapes differ");
    Multi<C> R(A.cat, A.shape, A.var);
    R.semi = A.semi;
    for (auto& [k, o] : A.objs) R.objs[k] = A.cat.coproduct({o, B.ob(k)});
    for (auto& [k, m] : A.faces) R.faces[k] = block_diagonal(A.cat, {m, B.faces.at(k)});
    for (auto& [k, m] : A.degens) R.degens[k] = block_diagonal(A.cat, {m, B.degens.at(k)});
    return R;
}

// ---- total object ------------------------------------------------------------------

namespace detail {

template <class C>
void require_all_augmented(const Multi<C>& Z, const char* what) {
    if (Z.var != Variance::Simplicial) throw std::invalid_argument(std::string(what) + ": simplicial input expected");
    for (int l : Z.shape.low)
        if (l != -1) throw std::invalid_argument(std::string(what) + ": every direction must be augmented");
}

inline int min_top(const Shape& sh) { return *std::min_element(sh.top.begin(), sh.top.end()); }

}  // namespace detail

// Tot(Z)_n = ⊔ Z_σ over σ: [n] -> [r-1], components ordered as tot_indices(n, r).
// With `with_corner` the output is augmented by the all-(-1) object (requires it in Z).
template <class C>
Multi<C> tot_impl(const Multi<C>& Z, bool with_corner) {
    detail::require_all_augmented(Z, "tot");
    if (with_corner && !Z.shape.corner) throw std::invalid_argument("tot_plus: input has no corner object");
    const auto& cat = Z.cat;
    const int r = Z.arity(), N = detail::min_top(Z.shape), lo = with_corner ? -1 : 0;
    Multi<C> T(cat, with_corner ? Shape::augmented(N) : Shape::simplicial(N));
    T.semi = Z.semi;
    std::map<int, std::vector<TotIndex>> comps;
    std::map<int, std::vector<typename C::Obj>> parts;
    for (int n = lo; n <= N; ++n) {
        comps[n] = tot_indices(n, r);
        for (const auto& s : comps[n]) parts[n].push_back(Z.ob(s.blocks));
        T.set_ob(n, cat.coproduct(parts[n]));
    }
    for (int n = lo; n <= N; ++n)
        for (const auto& g : detail::gens_at(Variance::Simplicial, n, Z.semi)) {
            MonotoneMap t = detail::gen_map(Variance::Simplicial, n, g);
            if (t.n < lo || t.n > N) continue;
            BlockSpec<typename C::Mor> spec;
            for (const auto& s : comps[n]) {
                Restriction res = tot_restrictions(t, s);
                auto& to = comps[t.n];
                spec.target.push_back(static_cast<int>(std::find(to.begin(), to.end(), res.index) - to.begin()));
                spec.maps.push_back(Z.act_all(s.blocks, res.parts));
            }
            auto m = cat.block(parts[n], parts[t.n], spec);
            if (g.face)
                T.set_d(n, g.k, m);
            else
                T.set_s(n, g.k, m);
        }
    return T;
}

template <class C>
Multi<C> tot(const Multi<C>& Z) {
    return tot_impl(Z, false);
}

// the augmented total object: level -1 is the corner, d0 = d0^(2) ⊔ d0^(1)
template <class C>
Multi<C> tot_plus(const Multi<C>& Z) {
    return tot_impl(Z, true);
}

// Tot on a levelwise map F: Z -> Z' (block diagonal); level -1 included when both have the corner
template <class C>
MultiMap<C> tot_map(const Multi<C>& Z, const Multi<C>& Z2, const MultiMap<C>& F) {
    const int N = std::min(detail::min_top(Z.shape), detail::min_top(Z2.shape));
    const int lo = Z.shape.corner && Z2.shape.corner && F.comp.count(Index(Z.arity(), -1)) ? -1 : 0;
    MultiMap<C> R;
    for (int n = lo; n <= N; ++n) {
        std::vector<typename C::Mor> ms;
        for (const auto& s : tot_indices(n, Z.arity())) ms.push_back(F.at(s.blocks));
        R.comp[{n}] = block_diagonal(Z.cat, ms);
    }
    return R;
}

// ---- total décalage and the (Tot, Dec) transposition ---------------------------------

// Dec(X)_{i,j} = X_{i+j+1}, Dec(X)(θ1, θ2) = X(θ1 + θ2).  Needs X at level 2N+1.
// An augmented X contributes the corner Dec(X)_{-1,-1} = X_{-1}.
template <class C>
Multi<C> total_decalage(const Multi<C>& X, int N) {
    if (X.arity() != 1 || X.var != Variance::Simplicial)
        throw std::invalid_argument("total_decalage: simplicial object expected");
    if (N < 0 || X.top() < 2 * N + 1)
        throw std::invalid_argument("total_decalage: level " + std::to_string(N) + " needs the input at level " +
                                    std::to_string(2 * N + 1));
    Multi<C> D(X.cat, Shape({N, N}, {-1, -1}, X.augmented()));
    for (const Index& idx : D.shape.indices()) D.set_ob(idx, X.ob(idx[0] + idx[1] + 1));
    for (const Index& idx : D.shape.indices())
        for (int a = 0; a < 2; ++a)
            for (const auto& g : detail::gens_at(Variance::Simplicial, idx[a], false)) {
                MonotoneMap t = detail::gen_map(Variance::Simplicial, idx[a], g);
                Index to = shifted(idx, a, t.n - idx[a]);
                if (!D.shape.contains(to)) continue;
                MonotoneMap other = MonotoneMap::identity(idx[1 - a]);
                MonotoneMap sum = a == 0 ? ordered_sum(t, other) : ordered_sum(other, t);
                auto m = X.act({idx[0] + idx[1] + 1}, 0, sum);
                if (g.face)
                    D.set_d(idx, a, g.k, m);
                else
                    D.set_s(idx, a, g.k, m);
            }
    return D;
}

// F: Tot(Z) -> Y on levels 0..L gives G(i,j) = F_{i+j+1} restricted to Z_{i,j} for i+j+1 <= L.
template <class C>
std::map<Index, typename C::Mor> adjunction_transpose(const Multi<C>& Z, const MultiMap<C>& F, int L) {
    if (Z.arity() != 2) throw std::invalid_argument("adjunction_transpose: biaugmented input expected");
    if (L > detail::min_top(Z.shape)) throw std::invalid_argument("adjunction_transpose: total object too short");
    std::map<Index, typename C::Mor> G;
    for (int n = 0; n <= L; ++n) {
        auto comps = tot_indices(n, 2);
        std::vector<typename C::Obj> parts;
        for (const auto& s : comps) parts.push_back(Z.ob(s.blocks));
        const auto& Fn = F.at(n);
        for (std::size_t k = 0; k < comps.size(); ++k)
            G[comps[k].blocks] = Z.cat.compose(Fn, injection(Z.cat, parts, k));
    }
    return G;
}

template <class C>
MultiMap<C> adjunction_untranspose(const Multi<C>& Z, const std::map<Index, typename C::Mor>& G, int L) {
    MultiMap<C> F;
    for (int n = 0; n <= L; ++n) {
        std::vector<typename C::Mor> ms;
        for (const auto& s : tot_indices(n, 2)) {
            auto it = G.find(s.blocks);
            if (it == G.end()) throw std::invalid_argument("adjunction_untranspose: component missing");
            ms.push_back(it->second);
        }
        F.comp[{n}] = copair(Z.cat, ms);
    }
    return F;
}

// G(target) Z(θ) = Y(θ1 + θ2) G(source) for every generator between indices with i+j+1 <= L
template <class C>
std::vector<IdentityViolation> check_transpose_natural(const Multi<C>& Z, const Multi<C>& Y,
                                                       const std::map<Index, typename C::Mor>& G, int L) {
    std::vector<IdentityViolation> out;
    const auto& cat = Z.cat;
    for (auto& [idx, g] : G) {
        if (idx[0] + idx[1] + 1 > L) continue;
        for (int a = 0; a < 2; ++a)
            for (const auto& gen : detail::gens_at(Variance::Simplicial, idx[a], false)) {
                MonotoneMap t = detail::gen_map(Variance::Simplicial, idx[a], gen);
                auto to = Z.reach(idx, a, t);
                if (!to || !G.count(*to)) continue;
                MonotoneMap other = MonotoneMap::identity(idx[1 - a]);
                MonotoneMap sum = a == 0 ? ordered_sum(t, other) : ordered_sum(other, t);
                auto l = cat.compose(G.at(*to), Z.act(idx, a, t));
                auto r = cat.compose(Y.act({idx[0] + idx[1] + 1}, 0, sum), g);
                if (!cat.equal(l, r)) out.push_back({std::string("transpose-") + (gen.face ? "d" : "s"), idx, a, gen.k, 0});
            }
    }
    return out;
}

// ---- cylinders ------------------------------------------------------------------------

// X_{-1}×Δ <-ε- X -f-> Y
template <class C>
struct Omega {
    Multi<C> X, Y;
    MultiMap<C> f;
    typename C::Obj base;
    MultiMap<C> eps;

    int top() const { return std::min(X.top(), Y.top()); }
};

template <class C>
std::vector<std::string> omega_problems(const Omega<C>& D) {
    std::vector<std::string> out;
    if (!is_map(truncate(D.X, D.top()), truncate(D.Y, D.top()), D.f)) out.push_back("f is not a simplicial map");
    if (!is_map(truncate(D.X, D.top()), constant(D.X.cat, D.base, D.top()), D.eps))
        out.push_back("ε is not an augmentation");
    return out;
}

// the biaugmented object: Z_{-1,j} = Y_j, Z_{i,j} = X_j (i >= 0, X_{-1} the base);
// direction 0 is the identity except the augmentation f, direction 1 carries X (and Y) with ε0.
template <class C>
Multi<C> psi(const Omega<C>& D) {
    const auto& cat = D.X.cat;
    const int N = D.top();
    Multi<C> Z(cat, Shape::multi_augmented(2, N));
    auto xob = [&](int j) { return j < 0 ? D.base : D.X.ob(j); };
    for (const Index& idx : Z.shape.indices()) Z.set_ob(idx, idx[0] < 0 ? D.Y.ob(idx[1]) : xob(idx[1]));
    for (const Index& idx : Z.shape.indices()) {
        const int i = idx[0], j = idx[1];
        for (int k = 0; k <= i; ++k) {
            if (Z.has_face(idx, 0, k)) Z.set_d(idx, 0, k, i == 0 ? D.f.at(j) : cat.id(xob(j)));
            if (Z.has_degen(idx, 0, k)) Z.set_s(idx, 0, k, cat.id(xob(j)));
        }
        const Multi<C>& row = i < 0 ? D.Y : D.X;
        for (int k = 0; k <= j; ++k) {
            if (Z.has_face(idx, 1, k)) Z.set_d(idx, 1, k, j == 0 ? D.eps.at(0) : row.d(j, k));
            if (Z.has_degen(idx, 1, k)) Z.set_s(idx, 1, k, row.s(j, k));
        }
    }
    return Z;
}

template <class C>
struct Cylinder {
    Multi<C> obj;
    Multi<C> base;            // X_{-1}×Δ
    MultiMap<C> from_base;    // X_{-1}×Δ -> Cyl, the last component
    MultiMap<C> from_target;  // Y -> Cyl, the first component
};

namespace detail {

template <class C>
std::vector<typename C::Obj> cyl_parts(const Omega<C>& D, int n) {
    std::vector<typename C::Obj> p{D.Y.ob(n)};
    for (int k = n - 1; k >= 0; --k) p.push_back(D.X.ob(k));
    p.push_back(D.base);
    return p;
}

template <class C>
void add_cyl_inclusions(Cylinder<C>& c, const Omega<C>& D) {
    const auto& cat = D.X.cat;
    c.base = constant(cat, D.base, c.obj.top());
    for (int n = 0; n <= c.obj.top(); ++n) {
        auto p = cyl_parts(D, n);
        c.from_target.comp[{n}] = injection(cat, p, 0);
        c.from_base.comp[{n}] = injection(cat, p, p.size() - 1);
    }
}

}  // namespace detail

// Cyl(f,ε)_n = Y_n ⊔ X_{n-1} ⊔ ... ⊔ X_0 ⊔ X_{-1} = Tot Ψ(f,ε)
template <class C>
Cylinder<C> simp_cyl(const Omega<C>& D) {
    Cylinder<C> c;
    c.obj = tot(psi(D));
    detail::add_cyl_inclusions(c, D);
    return c;
}

template <class C>
Omega<C> upsilon_omega(const Omega<C>& D) {
    return Omega<C>{upsilon(D.X), upsilon(D.Y), D.f, D.base, D.eps};
}

// Cyl' = Υ∘Cyl∘Υ, same components and inclusions as Cyl
template <class C>
Cylinder<C> simp_cyl_prime(const Omega<C>& D) {
    Cylinder<C> c = simp_cyl(upsilon_omega(D));
    c.obj = upsilon(c.obj);
    return c;
}

template <class C>
Omega<C> cone_diagram(const Multi<C>& X, const Multi<C>& Y, const MultiMap<C>& f) {
    const auto& cat = X.cat;
    MultiMap<C> e;
    for (int n = 0; n <= X.top(); ++n) e.comp[{n}] = cat.to_terminal(X.ob(n));
    return Omega<C>{X, Y, f, cat.terminal(), e};
}

// C(f)_n = Y_n ⊔ X_{n-1} ⊔ ... ⊔ X_0 ⊔ 1
template <class C>
Multi<C> simp_cone(const Multi<C>& X, const Multi<C>& Y, const MultiMap<C>& f) {
    return simp_cyl(cone_diagram(X, Y, f)).obj;
}

template <class C>
Multi<C> simp_cone_prime(const Multi<C>& X, const Multi<C>& Y, const MultiMap<C>& f) {
    return upsilon(simp_cone(upsilon(X), upsilon(Y), f));
}

// Cyl on a map of diagrams (a: X -> X', b: Y -> Y', c: X_{-1} -> X'_{-1}); also valid for Cyl'
template <class C>
MultiMap<C> cyl_map(const Omega<C>& D, const MultiMap<C>& a, const MultiMap<C>& b, const typename C::Mor& c) {
    MultiMap<C> R;
    for (int n = 0; n <= D.top(); ++n) {
        std::vector<typename C::Mor> ms{b.at(n)};
        for (int k = n - 1; k >= 0; --k) ms.push_back(a.at(k));
        ms.push_back(c);
        R.comp[{n}] = block_diagonal(D.X.cat, ms);
    }
    return R;
}

// ---- cubical cylinder ------------------------------------------------------------------

template <class C>
struct CubicalCylinder {
    Multi<C> obj;
    MultiMap<C> from_target;  // j_Y, component σ = u1 (first)
    MultiMap<C> from_other;   // j_Z, component σ = u0 (last)
};

// ~Cyl(f,g)_n = ⊔_{σ:[n]->[1]} with Y_n at u1, Z_n at u0 and X_n elsewhere; components ordered as tot_indices(n, 2)
template <class C>
CubicalCylinder<C> cubical_cyl(const Multi<C>& X, const Multi<C>& Y, const Multi<C>& Z, const MultiMap<C>& f,
                               const MultiMap<C>& g) {
    const auto& cat = X.cat;
    const int N = std::min({X.top(), Y.top(), Z.top()});
    auto is_u1 = [](const TotIndex& s) { return s.blocks[0] == -1; };
    auto is_u0 = [](const TotIndex& s) { return s.blocks[1] == -1; };
    auto part = [&](int n, const TotIndex& s) { return is_u1(s) ? Y.ob(n) : is_u0(s) ? Z.ob(n) : X.ob(n); };
    CubicalCylinder<C> c;
    c.obj = Multi<C>(cat, Shape::simplicial(N));
    std::vector<std::vector<TotIndex>> comps(N + 1);
    std::vector<std::vector<typename C::Obj>> parts(N + 1);
    for (int n = 0; n <= N; ++n) {
        comps[n] = tot_indices(n, 2);
        for (const auto& s : comps[n]) parts[n].push_back(part(n, s));
        c.obj.set_ob(n, cat.coproduct(parts[n]));
        c.from_target.comp[{n}] = injection(cat, parts[n], 0);
        c.from_other.comp[{n}] = injection(cat, parts[n], parts[n].size() - 1);
    }
    for (int n = 0; n <= N; ++n)
        for (const auto& g0 : detail::gens_at(Variance::Simplicial, n, false)) {
            MonotoneMap t = detail::gen_map(Variance::Simplicial, n, g0);
            if (t.n < 0 || t.n > N) continue;
            BlockSpec<typename C::Mor> spec;
            for (const auto& s : comps[n]) {
                TotIndex st = tot_restrictions(t, s).index;
                auto& to = comps[t.n];
                spec.target.push_back(static_cast<int>(std::find(to.begin(), to.end(), st) - to.begin()));
                typename C::Mor m;
                if (is_u1(s))
                    m = Y.act({n}, 0, t);
                else if (is_u0(s))
                    m = Z.act({n}, 0, t);
                else if (is_u1(st))
                    m = cat.compose(f.at(t.n), X.act({n}, 0, t));
                else if (is_u0(st))
                    m = cat.compose(g.at(t.n), X.act({n}, 0, t));
                else
                    m = X.act({n}, 0, t);
                spec.maps.push_back(m);
            }
            auto m = cat.block(parts[n], parts[t.n], spec);
            if (g0.face)
                c.obj.set_d(n, g0.k, m);
            else
                c.obj.set_s(n, g0.k, m);
        }
    return c;
}

template <class C>
CubicalCylinder<C> cubical_cyl_of(const Multi<C>& X) {
    auto id = identity_map(X);
    return cubical_cyl(X, X, X, id, id);
}

// ~Cyl on a map of diagrams: b on the u1 component, a on the middle ones, c on u0
template <class C>
MultiMap<C> cubical_map(int N, const C& cat, const MultiMap<C>& a, const MultiMap<C>& b, const MultiMap<C>& c) {
    MultiMap<C> R;
    for (int n = 0; n <= N; ++n) {
        std::vector<typename C::Mor> ms{b.at(n)};
        for (int k = 0; k < n; ++k) ms.push_back(a.at(n));
        ms.push_back(c.at(n));
        R.comp[{n}] = block_diagonal(cat, ms);
    }
    return R;
}

// Tot of Φ(f,g): Dec(X) in the interior, Y in row -1 with f_{j} d_0, Z in column -1 with g_{i} d_{i+1}.
// Needs X at level 2N+1.
template <class C>
Multi<C> cubical_biaugmented(const Multi<C>& X, const Multi<C>& Y, const Multi<C>& Z, const MultiMap<C>& f,
                             const MultiMap<C>& g, int N) {
    Multi<C> D = total_decalage(forget_augmentation(X), N);
    const auto& cat = X.cat;
    Multi<C> T(cat, Shape::multi_augmented(2, N));
    for (const Index& idx : T.shape.indices())
        T.set_ob(idx, idx[0] < 0 ? Y.ob(idx[1]) : idx[1] < 0 ? Z.ob(idx[0]) : D.ob(idx));
    for (const Index& idx : T.shape.indices())
        for (int a = 0; a < 2; ++a)
            for (int k = 0; k <= idx[a]; ++k) {
                if (T.has_face(idx, a, k)) {
                    typename C::Mor m;
                    if (idx[1 - a] < 0)
                        m = a == 0 ? Z.d(idx[0], k) : Y.d(idx[1], k);
                    else if (idx[a] == 0)
                        m = a == 0 ? cat.compose(f.at(idx[1]), D.d(idx, 0, 0)) : cat.compose(g.at(idx[0]), D.d(idx, 1, 0));
                    else
                        m = D.d(idx, a, k);
                    T.set_d(idx, a, k, m);
                }
                if (T.has_degen(idx, a, k))
                    T.set_s(idx, a, k, idx[1 - a] < 0 ? (a == 0 ? Z.s(idx[0], k) : Y.s(idx[1], k)) : D.s(idx, a, k));
            }
    return T;
}

// ---- homotopies and the cubical cylinder of X ---------------------------------------------

// H: ~Cyl(X) -> Y on levels 0..N-1 from h, with H|σ = d_i h_i where σ^{-1}(1) = {i..n} (d_{n+1} h_n at u0)
template <class C>
MultiMap<C> cubical_from_homotopy(const Multi<C>& X, const Multi<C>& Y, const SimplicialHomotopy<C>& h) {
    const auto& cat = X.cat;
    const int N = std::min(X.top(), Y.top());
    MultiMap<C> H;
    for (int n = 0; n + 1 <= N; ++n) {
        std::vector<typename C::Mor> ms;
        for (int i = 0; i <= n + 1; ++i) ms.push_back(cat.compose(Y.d(n + 1, i), h.at(n, std::min(i, n))));
        H.comp[{n}] = copair(cat, ms);
    }
    return H;
}

// h_j = H_{n+1}|σ ∘ s_j with σ^{-1}(1) = {j+1..n+1}
template <class C>
SimplicialHomotopy<C> homotopy_from_cubical(const Multi<C>& X, const MultiMap<C>& H, int N) {
    const auto& cat = X.cat;
    SimplicialHomotopy<C> h;
    for (int n = 0; n + 1 <= N; ++n) {
        std::vector<typename C::Obj> parts(n + 3, X.ob(n + 1));
        for (int j = 0; j <= n; ++j)
            h.h[{n, j}] = cat.compose(H.at(n + 1), cat.compose(injection(cat, parts, j + 1), X.s(n, j)));
    }
    return h;
}

// j_Y∘f ~ j_Z∘g through R = ~Cyl of (id, id, id) -> (g, id, f)
template <class C>
SimplicialHomotopy<C> cubical_square_homotopy(const Multi<C>& X, const CubicalCylinder<C>& target, const MultiMap<C>& f,
                                              const MultiMap<C>& g) {
    const int N = target.obj.top();
    auto R = cubical_map(N, X.cat, identity_map(X), f, g);
    return homotopy_from_cubical(X, R, N);
}

// ---- retraction of Cyl onto ~Cyl -----------------------------------------------------------

template <class C>
struct Retraction {
    CubicalCylinder<C> cubical;
    MultiMap<C> alpha, beta;  // Cyl -> ~Cyl -> Cyl
};

namespace detail {

// θ: [n] -> [n-k] for the X_{n-k} summand at cubical position q >= k and raise set S ⊆ {0..q-k-1}:
// p >= q goes to p - k; p < q goes to (0^k, 1, ..., q-k)(p) raised through S in increasing order
inline MonotoneMap retraction_map(int n, int k, int q, unsigned S) {
    std::vector<int> v;
    for (int p = 0; p <= n; ++p) {
        if (p >= q) {
            v.push_back(p - k);
            continue;
        }
        int x = std::max(0, p - k + 1);
        for (int s = 0; s < q - k; ++s)
            if ((S >> s & 1u) && x == s) x = s + 1;
        v.push_back(x);
    }
    return MonotoneMap(n, n - k, v);
}

}  // namespace detail

// β is (d_0)^k on the k-th middle copy. α sends X_{n-k} to the positions q >= k by
// Σ_S (-1)^{q-k+|S|} X(θ_{q,S}); at q = k this is (s_0)^k, the other terms cancel under β.
// (s_0)^k alone is not simplicial: it fails at the face d_k, so α needs an additive category.
// Both are the identity on Y and X_{-1}.
template <class C>
Retraction<C> cyl_retraction(const Omega<C>& D) {
    static_assert(C::additive, "cyl_retraction: the section α is an alternating sum");
    const auto& cat = D.X.cat;
    const int N = D.top();
    Multi<C> B = constant(cat, D.base, N);
    Retraction<C> r{cubical_cyl(D.X, D.Y, B, D.f, D.eps), {}, {}};
    for (int n = 0; n <= N; ++n) {
        auto src = detail::cyl_parts(D, n);
        std::vector<typename C::Obj> tgt{D.Y.ob(n)};
        for (int k = 0; k < n; ++k) tgt.push_back(D.X.ob(n));
        tgt.push_back(D.base);
        std::vector<typename C::Mor> b{cat.id(D.Y.ob(n))};
        for (int k = 1; k <= n; ++k) {
            std::vector<int> dv;
            for (int i = 0; i <= n - k; ++i) dv.push_back(i + k);
            b.push_back(D.X.act({n}, 0, MonotoneMap(n - k, n, dv)));
        }
        b.push_back(cat.id(D.base));
        r.beta.comp[{n}] = block_diagonal(cat, b);
        // α as a sum of single-block maps
        auto single = [&](int part, int pos, const typename C::Mor& m) {
            BlockSpec<typename C::Mor> spec;
            for (std::size_t c = 0; c < src.size(); ++c) {
                spec.target.push_back(static_cast<int>(c) == part ? pos : 0);
                spec.maps.push_back(static_cast<int>(c) == part ? m : cat.zero(src[c], tgt[0]));
            }
            return cat.block(src, tgt, spec);
        };
        typename C::Mor a = cat.add(single(0, 0, cat.id(D.Y.ob(n))), single(n + 1, n + 1, cat.id(D.base)));
        for (int k = 1; k <= n; ++k)
            for (int q = k; q <= n; ++q) {
                typename C::Mor m = cat.zero(D.X.ob(n - k), D.X.ob(n));
                for (unsigned S = 0; S < (1u << (q - k)); ++S) {
                    auto term = D.X.act({n - k}, 0, detail::retraction_map(n, k, q, S));
                    bool neg = (q - k + std::popcount(S)) % 2;
                    m = cat.add(m, neg ? cat.neg(term) : term);
                }
                a = cat.add(a, single(k, q, m));
            }
        r.alpha.comp[{n}] = a;
    }
    return r;
}

// i_Y∘f ~ i_{X_{-1}}∘ε through β∘R; the witness is validated before it is returned
template <class C>
SimplicialHomotopy<C> cyl_square_homotopy(const Omega<C>& D) {
    const auto& cat = D.X.cat;
    const int N = D.top();
    Cylinder<C> cyl = simp_cyl(D);
    Retraction<C> ret = cyl_retraction(D);
    auto R = cubical_map(N, cat, identity_map(truncate(D.X, N)), D.f, D.eps);
    auto H = compose_maps(cat, ret.beta, R);
    auto h = homotopy_from_cubical(truncate(D.X, N), H, N);
    Shape sh = Shape::simplicial(N);
    auto lhs = compose_maps(cat, cyl.from_target, truncate_map(D.f, sh));
    auto rhs = compose_maps(cat, cyl.from_base, truncate_map(D.eps, sh));
    if (!verify_simplicial_homotopy(truncate(D.X, N), cyl.obj, lhs, rhs, h))
        throw std::logic_error("cyl_square_homotopy: constructed witness fails the homotopy identities");
    return h;
}

// ---- universal property of Cyl --------------------------------------------------------------

// For ρ: X_{-1} -> T and ρ': Y -> T×Δ with ρ'∘f = ρ∘ε, the unique H: Cyl -> T×Δ, H_n = H_0∘(d_0)^n
template <class C>
MultiMap<C> cyl_universal(const Omega<C>& D, const typename C::Obj& T, const typename C::Mor& rho,
                          const MultiMap<C>& rho_prime) {
    const auto& cat = D.X.cat;
    const int N = D.top();
    if (!is_map(truncate(D.Y, N), constant(cat, T, N), rho_prime))
        throw std::invalid_argument("cyl_universal: ρ' is not a map into the constant object");
    for (int n = 0; n <= N; ++n)
        if (!cat.equal(cat.compose(rho_prime.at(n), D.f.at(n)), cat.compose(rho, D.eps.at(n))))
            throw std::invalid_argument("cyl_universal: the square does not commute at level " + std::to_string(n));
    Multi<C> cyl = simp_cyl(D).obj;
    auto H0 = copair(cat, {rho_prime.at(0), rho});
    MultiMap<C> H;
    for (int n = 0; n <= N; ++n) H.comp[{n}] = cat.compose(H0, cyl.act({n}, 0, MonotoneMap(0, n, {n})));
    return H;
}

// the same for Cyl' (H_n = H_0∘(d_n)^n)
template <class C>
MultiMap<C> cyl_prime_universal(const Omega<C>& D, const typename C::Obj& T, const typename C::Mor& rho,
                                const MultiMap<C>& rho_prime) {
    return cyl_universal(upsilon_omega(D), T, rho, rho_prime);
}

// ---- iterated totals ---------------------------------------------------------------------

// the arity-(r-1) object obtained by fixing `value` in direction `dir`
template <class C>
Multi<C> slice(const Multi<C>& T, int dir, int value) {
    Shape sh;
    for (int a = 0; a < T.arity(); ++a)
        if (a != dir) {
            sh.top.push_back(T.shape.top[a]);
            sh.low.push_back(T.shape.low[a]);
        }
    Index full(T.arity(), -1);
    full[dir] = value;
    sh.corner = T.shape.contains(full);
    Multi<C> S(T.cat, sh, T.var);
    S.semi = T.semi;
    auto lift = [&](const Index& i) {
        Index r;
        for (int a = 0, b = 0; a < T.arity(); ++a) r.push_back(a == dir ? value : i[b++]);
        return r;
    };
    for (const Index& i : sh.indices()) {
        S.set_ob(i, T.ob(lift(i)));
        for (int a = 0, b = 0; a < T.arity(); ++a) {
            if (a == dir) continue;
            for (int k = 0; k <= i[b]; ++k) {
                if (S.has_face(i, b, k)) S.set_d(i, b, k, T.d(lift(i), a, k));
                if (S.has_degen(i, b, k)) S.set_s(i, b, k, T.s(lift(i), a, k));
            }
            ++b;
        }
    }
    return S;
}

// T(θ) in direction `dir` as a levelwise map between slices
template <class C>
MultiMap<C> slice_map(const Multi<C>& T, int dir, int value, const MonotoneMap& theta) {
    Multi<C> S = slice(T, dir, value);
    const int to = theta.n;
    Multi<C> S2 = slice(T, dir, to);
    MultiMap<C> F;
    for (const Index& i : S.shape.indices()) {
        if (!S2.shape.contains(i)) continue;
        Index full;
        for (int a = 0, b = 0; a < T.arity(); ++a) full.push_back(a == dir ? value : i[b++]);
        F.comp[i] = T.act(full, dir, theta);
    }
    return F;
}

// Tot_(0) (dir = 0, result indexed (fixed, tot)) or Tot_(2) (dir = 2, result indexed (tot, fixed)) of
// a 3-augmented 3-simplicial object: slices with the corner go through Tot^+, the others through Tot.
template <class C>
Multi<C> tot_partial(const Multi<C>& T, int dir) {
    if (T.arity() != 3 || (dir != 0 && dir != 2)) throw std::invalid_argument("tot_partial: arity 3, direction 0 or 2");
    detail::require_all_augmented(T, "tot_partial");
    const auto& cat = T.cat;
    const int Nf = T.shape.top[dir];
    int M = T.shape.top[0] + T.shape.top[1] + T.shape.top[2];
    for (int a = 0; a < 3; ++a)
        if (a != dir) M = std::min(M, T.shape.top[a]);
    auto at = [&](int fixed, int m) { return dir == 0 ? Index{fixed, m} : Index{m, fixed}; };
    const int fdir = dir == 0 ? 0 : 1, tdir = 1 - fdir;
    Multi<C> W(cat, dir == 0 ? Shape({Nf, M}, {-1, -1}, false) : Shape({M, Nf}, {-1, -1}, false));
    W.semi = T.semi;
    std::map<int, Multi<C>> slices, totals;
    for (int v = -1; v <= Nf; ++v) {
        slices[v] = slice(T, dir, v);
        totals[v] = slices[v].shape.corner ? tot_plus(slices[v]) : tot(slices[v]);
    }
    for (int v = -1; v <= Nf; ++v) {
        const Multi<C>& Tv = totals[v];
        for (int m = -1; m <= M; ++m) {
            Index idx = at(v, m);
            if (!W.shape.contains(idx)) continue;
            W.set_ob(idx, Tv.ob(m));
            for (int k = 0; k <= m; ++k) {
                if (W.has_face(idx, tdir, k)) W.set_d(idx, tdir, k, Tv.d(m, k));
                if (W.has_degen(idx, tdir, k)) W.set_s(idx, tdir, k, Tv.s(m, k));
            }
        }
        for (const auto& g : detail::gens_at(Variance::Simplicial, v, T.semi)) {
            MonotoneMap t = detail::gen_map(Variance::Simplicial, v, g);
            if (t.n < -1 || t.n > Nf) continue;
            auto F = tot_map(slices[v], slices[t.n], slice_map(T, dir, v, t));
            for (auto& [mi, mor] : F.comp) {
                Index idx = at(v, mi[0]);
                if (g.face && W.has_face(idx, fdir, g.k)) W.set_d(idx, fdir, g.k, mor);
                if (!g.face && W.has_degen(idx, fdir, g.k)) W.set_s(idx, fdir, g.k, mor);
            }
        }
    }
    return W;
}

template <class C>
struct TripleCoherence {
    Multi<C> total;              // Tot_3(T)
    Multi<C> via_first, via_last;  // Tot∘Tot_(0)(T), Tot∘Tot_(2)(T)
    MultiMap<C> to_first, to_last;  // coproduct reorderings out of Tot_3(T)
};

namespace detail {

// component labels (T-indices) of Tot∘Tot_(dir)(T) at level n
inline std::vector<Index> iterated_labels(int n, int dir) {
    std::vector<Index> out;
    for (const auto& outer : tot_indices(n, 2)) {
        int inner_level = dir == 0 ? outer.blocks[1] : outer.blocks[0];
        int fixed = dir == 0 ? outer.blocks[0] : outer.blocks[1];
        for (const auto& inner : tot_indices(inner_level, 2)) {
            if (dir == 0)
                out.push_back({fixed, inner.blocks[0], inner.blocks[1]});
            else
                out.push_back({inner.blocks[0], inner.blocks[1], fixed});
        }
    }
    return out;
}

template <class C>
MultiMap<C> relabel_iso(const Multi<C>& T, int N, const std::function<std::vector<Index>(int)>& from,
                        const std::function<std::vector<Index>(int)>& to) {
    MultiMap<C> R;
    for (int n = 0; n <= N; ++n) {
        auto lf = from(n);
        std::vector<typename C::Obj> parts;
        for (const auto& l : lf) parts.push_back(T.ob(l));
        R.comp[{n}] = permutation(T.cat, parts, match_labels(lf, to(n)));
    }
    return R;
}

}  // namespace detail

template <class C>
TripleCoherence<C> tot3(const Multi<C>& T) {
    TripleCoherence<C> r;
    r.total = tot(T);
    r.via_first = tot(tot_partial(T, 0));
    r.via_last = tot(tot_partial(T, 2));
    const int N = r.total.top();
    auto flat = [](int n) {
        std::vector<Index> out;
        for (const auto& s : tot_indices(n, 3)) out.push_back(s.blocks);
        return out;
    };
    r.to_first = detail::relabel_iso(T, N, flat, [](int n) { return detail::iterated_labels(n, 0); });
    r.to_last = detail::relabel_iso(T, N, flat, [](int n) { return detail::iterated_labels(n, 2); });
    return r;
}

// ---- cube lemma ----------------------------------------------------------------------------

// A commuting cube: p∘g = f∘q, γ∘g = h∘β, α∘q = r∘β
//   X_{-1} -h-> U_{-1},  X_{-1} -r-> Y_{-1},  X -g-> U,  X -q-> Y,  Y -f-> V,  U -p-> V
//   β: X -> X_{-1}×Δ,  α: Y -> Y_{-1}×Δ,  γ: U -> U_{-1}×Δ
template <class C>
struct Cube {
    Multi<C> X, Y, U, V;
    typename C::Obj bx, by, bu;
    MultiMap<C> g, q, f, p, beta, alpha, gamma;
    typename C::Mor h, r;

    int top() const { return std::min({X.top(), Y.top(), U.top(), V.top()}); }
};

template <class C>
std::vector<std::string> cube_problems(const Cube<C>& K) {
    std::vector<std::string> out;
    const auto& cat = K.X.cat;
    for (int n = 0; n <= K.top(); ++n) {
        if (!cat.equal(cat.compose(K.p.at(n), K.g.at(n)), cat.compose(K.f.at(n), K.q.at(n))))
            out.push_back("p g != f q at level " + std::to_string(n));
        if (!cat.equal(cat.compose(K.gamma.at(n), K.g.at(n)), cat.compose(K.h, K.beta.at(n))))
            out.push_back("γ g != h β at level " + std::to_string(n));
        if (!cat.equal(cat.compose(K.alpha.at(n), K.q.at(n)), cat.compose(K.r, K.beta.at(n))))
            out.push_back("α q != r β at level " + std::to_string(n));
    }
    return out;
}

// the 3-augmented object of the cube: direction 0 selects Y-side (-1) or X-side, direction 1 is the
// simplicial level (-1 the bases), direction 2 selects U-side (-1) or X-side
template <class C>
Multi<C> cube_object(const Cube<C>& K) {
    const auto& cat = K.X.cat;
    const int N = K.top();
    Multi<C> T(cat, Shape::multi_augmented(3, N));
    // the simplicial object of each (side0, side2) corner, with its base and augmentation
    auto obj = [&](int a, int c) -> const Multi<C>& { return a < 0 ? (c < 0 ? K.V : K.Y) : (c < 0 ? K.U : K.X); };
    auto base = [&](int a, int c) -> typename C::Obj { return a < 0 ? K.by : (c < 0 ? K.bu : K.bx); };
    auto aug = [&](int a, int c) -> const MultiMap<C>& { return a < 0 ? K.alpha : (c < 0 ? K.gamma : K.beta); };
    auto ob = [&](const Index& i) {
        return i[1] < 0 ? base(i[0], i[2]) : obj(i[0], i[2]).ob(i[1]);
    };
    for (const Index& i : T.shape.indices()) T.set_ob(i, ob(i));
    for (const Index& i : T.shape.indices()) {
        const int a = std::min(i[0], 0), c = std::min(i[2], 0);
        for (int k = 0; k <= i[1]; ++k) {
            if (T.has_face(i, 1, k)) T.set_d(i, 1, k, i[1] == 0 ? aug(a, c).at(0) : obj(a, c).d(i[1], k));
            if (T.has_degen(i, 1, k)) T.set_s(i, 1, k, obj(a, c).s(i[1], k));
        }
        for (int k = 0; k <= i[0]; ++k) {
            if (T.has_degen(i, 0, k)) T.set_s(i, 0, k, cat.id(ob(i)));
            if (!T.has_face(i, 0, k)) continue;
            typename C::Mor m;
            if (i[0] > 0)
                m = cat.id(ob(i));
            else if (i[1] < 0)
                m = K.r;  // X_{-1} -> Y_{-1}; U_{-1} -> V_{-1} does not occur
            else
                m = c < 0 ? K.p.at(i[1]) : K.q.at(i[1]);
            T.set_d(i, 0, k, m);
        }
        for (int k = 0; k <= i[2]; ++k) {
            if (T.has_degen(i, 2, k)) T.set_s(i, 2, k, cat.id(ob(i)));
            if (!T.has_face(i, 2, k)) continue;
            typename C::Mor m;
            if (i[2] > 0)
                m = cat.id(ob(i));
            else if (i[1] < 0)
                m = K.h;
            else
                m = a < 0 ? K.f.at(i[1]) : K.g.at(i[1]);
            T.set_d(i, 2, k, m);
        }
    }
    return T;
}

template <class C>
struct CubeLemma {
    Multi<C> cyl_of_primes;  // Cyl(t, δ), t: Cyl'(g,β) -> Cyl'(f,α), δ: Cyl'(g,β) -> U_{-1}×Δ
    Multi<C> prime_of_cyls;  // Cyl'(u, ζ), u: Cyl(q,β) -> Cyl(p,γ), ζ: Cyl(q,β) -> Y_{-1}×Δ
    MultiMap<C> iso;         // Cyl(t,δ) -> Cyl'(u,ζ), a coproduct reordering
};

template <class C>
CubeLemma<C> cube_lemma(const Cube<C>& K) {
    auto bad = cube_problems(K);
    if (!bad.empty()) throw std::invalid_argument("cube_lemma: " + bad.front());
    const int N = K.top();
    auto tr = [&](const Multi<C>& A) { return truncate(A, N); };
    Omega<C> Dg{tr(K.X), tr(K.U), K.g, K.bx, K.beta}, Df{tr(K.Y), tr(K.V), K.f, K.by, K.alpha};
    Omega<C> Dq{tr(K.X), tr(K.Y), K.q, K.bx, K.beta}, Dp{tr(K.U), tr(K.V), K.p, K.bu, K.gamma};
    Multi<C> Pg = simp_cyl_prime(Dg).obj, Pf = simp_cyl_prime(Df).obj;
    Multi<C> Cq = simp_cyl(Dq).obj, Cp = simp_cyl(Dp).obj;
    auto t = cyl_map(Dg, K.q, K.p, K.r);
    auto u = cyl_map(Dq, K.g, K.f, K.h);
    auto delta = cyl_prime_universal(Dg, K.bu, K.h, K.gamma);
    auto zeta = cyl_universal(Dq, K.by, K.r, K.alpha);
    CubeLemma<C> res;
    res.cyl_of_primes = simp_cyl(Omega<C>{Pg, Pf, t, K.bu, delta}).obj;
    res.prime_of_cyls = simp_cyl_prime(Omega<C>{Cq, Cp, u, K.by, zeta}).obj;
    Multi<C> T = cube_object(K);
    // T-indices of the components, outer cylinder position first
    auto nested = [](int n, bool outer_is_side0) {
        std::vector<Index> out;
        for (int k = 0; k <= n + 1; ++k) {
            int m = n - k, outer = k - 1;
            if (m < 0) {
                out.push_back(outer_is_side0 ? Index{n, -1, -1} : Index{-1, -1, n});
                continue;
            }
            for (int l = 0; l <= m + 1; ++l) {
                int inner = l - 1, lvl = m - l;
                out.push_back(outer_is_side0 ? Index{outer, lvl, inner} : Index{inner, lvl, outer});
            }
        }
        return out;
    };
    res.iso = detail::relabel_iso(T, N, [&](int n) { return nested(n, true); }, [&](int n) { return nested(n, false); });
    return res;
}

// ---- cylinders of bisimplicial objects and the interchange map ---------------------------------

// Cyl^(1)(Δ×f, Δ×e) for f: A -> B, e: A -> E simplicial: W_{n,m} = Cyl(f_m×Δ, e_m×Δ)_n,
// the cylinder running in the first index
template <class C>
Multi<C> cyl_first(const Multi<C>& A, const Multi<C>& B, const Multi<C>& E, const MultiMap<C>& f, const MultiMap<C>& e) {
    const auto& cat = A.cat;
    const int N = std::min({A.top(), B.top(), E.top()});
    auto diagram = [&](int m) {
        return Omega<C>{constant(cat, A.ob(m), N), constant(cat, B.ob(m), N), MultiMap<C>{}, E.ob(m), MultiMap<C>{}};
    };
    auto const_map = [&](const typename C::Mor& x) {
        MultiMap<C> r;
        for (int n = 0; n <= N; ++n) r.comp[{n}] = x;
        return r;
    };
    std::vector<Multi<C>> cols;
    for (int m = 0; m <= N; ++m) {
        Omega<C> D = diagram(m);
        D.f = const_map(f.at(m));
        D.eps = const_map(e.at(m));
        cols.push_back(simp_cyl(D).obj);
    }
    Multi<C> W(cat, Shape({N, N}, {0, 0}, true));
    for (int n = 0; n <= N; ++n)
        for (int m = 0; m <= N; ++m) {
            Index idx{n, m};
            W.set_ob(idx, cols[m].ob(n));
            for (int k = 0; k <= n; ++k) {
                if (W.has_face(idx, 0, k)) W.set_d(idx, 0, k, cols[m].d(n, k));
                if (W.has_degen(idx, 0, k)) W.set_s(idx, 0, k, cols[m].s(n, k));
            }
            for (int k = 0; k <= m; ++k) {
                for (bool face : {true, false}) {
                    if (face ? !W.has_face(idx, 1, k) : !W.has_degen(idx, 1, k)) continue;
                    auto a = const_map(face ? A.d(m, k) : A.s(m, k));
                    auto b = const_map(face ? B.d(m, k) : B.s(m, k));
                    auto c = face ? E.d(m, k) : E.s(m, k);
                    auto mor = cyl_map(diagram(m), a, b, c).at(n);
                    if (face)
                        W.set_d(idx, 1, k, mor);
                    else
                        W.set_s(idx, 1, k, mor);
                }
            }
        }
    return W;
}

// Cyl^(2)(f×Δ, e×Δ): the cylinder running in the second index
template <class C>
Multi<C> cyl_second(const Multi<C>& A, const Multi<C>& B, const Multi<C>& E, const MultiMap<C>& f, const MultiMap<C>& e) {
    return gamma_swap(cyl_first(A, B, E, f, e));
}

// A commuting 3×3 diagram of objects:
//   Z' <-g'- X' -f'-> Y'
//   ^α       ^β       ^γ
//   Z  <-g-  X  -f->  Y
//   vα'      vβ'      vγ'
//   Z''<-g''-X''-f''->Y''
template <class C>
struct Nine {
    typename C::Obj X1, Y1, Z1, X, Y, Z, X2, Y2, Z2;  // 1 = prime, 2 = double prime
    typename C::Mor g1, f1, g, f, g2, f2;
    typename C::Mor alpha, beta, gamma, alpha2, beta2, gamma2;
};

template <class C>
std::vector<std::string> nine_problems(const C& cat, const Nine<C>& D) {
    std::vector<std::string> out;
    auto eq = [&](const typename C::Mor& a, const typename C::Mor& b) { return cat.equal(a, b); };
    if (!eq(cat.compose(D.f1, D.beta), cat.compose(D.gamma, D.f))) out.push_back("f' β != γ f");
    if (!eq(cat.compose(D.g1, D.beta), cat.compose(D.alpha, D.g))) out.push_back("g' β != α g");
    if (!eq(cat.compose(D.f2, D.beta2), cat.compose(D.gamma2, D.f))) out.push_back("f'' β' != γ' f");
    if (!eq(cat.compose(D.g2, D.beta2), cat.compose(D.alpha2, D.g))) out.push_back("g'' β' != α' g");
    return out;
}

template <class C>
struct Interchange {
    Multi<C> first;   // Cyl^(1)(Δ×F, Δ×G)
    Multi<C> second;  // Cyl^(2)(ρ'×Δ, ρ×Δ)
    MultiMap<C> theta;
    // Cyl(f'',g'')×Δ into both, and Δ×Cyl(γ',γ) into both
    Multi<C> rows_src, cols_src;
    MultiMap<C> phi, rows_incl, varphi, cols_incl;
};

template <class C>
Interchange<C> cyl_interchange(const C& cat, const Nine<C>& D, int N) {
    auto bad = nine_problems(cat, D);
    if (!bad.empty()) throw std::invalid_argument("cyl_interchange: " + bad.front());
    auto cst = [&](const typename C::Obj& x) { return constant(cat, x, N); };
    auto cmap = [&](const typename C::Mor& x) {
        MultiMap<C> r;
        for (int n = 0; n <= N; ++n) r.comp[{n}] = x;
        return r;
    };
    auto cyl_of = [&](const typename C::Obj& src, const typename C::Obj& tgt, const typename C::Obj& b,
                      const typename C::Mor& to_tgt, const typename C::Mor& to_b) {
        Omega<C> O{cst(src), cst(tgt), cmap(to_tgt), b, cmap(to_b)};
        return std::make_pair(O, simp_cyl(O).obj);
    };
    // columns (cylinders of the vertical spans) and rows (of the horizontal spans)
    auto [Oy, CylY] = cyl_of(D.Y, D.Y2, D.Y1, D.gamma2, D.gamma);
    auto [Ox, CylX] = cyl_of(D.X, D.X2, D.X1, D.beta2, D.beta);
    auto [Oz, CylZ] = cyl_of(D.Z, D.Z2, D.Z1, D.alpha2, D.alpha);
    auto [Om, CylM] = cyl_of(D.X, D.Y, D.Z, D.f, D.g);
    auto [O2, Cyl2] = cyl_of(D.X2, D.Y2, D.Z2, D.f2, D.g2);
    auto [O1, Cyl1] = cyl_of(D.X1, D.Y1, D.Z1, D.f1, D.g1);
    auto F = cyl_map(Ox, cmap(D.f), cmap(D.f2), D.f1);
    auto G = cyl_map(Ox, cmap(D.g), cmap(D.g2), D.g1);
    auto rho2 = cyl_map(Om, cmap(D.beta2), cmap(D.gamma2), D.alpha2);
    auto rho1 = cyl_map(Om, cmap(D.beta), cmap(D.gamma), D.alpha);
    Interchange<C> r;
    r.first = cyl_first(CylX, CylY, CylZ, F, G);
    r.second = cyl_second(CylM, Cyl2, Cyl1, rho2, rho1);
    // component (p, q): p the position in the first-index cylinder, q in the second
    auto ob = [&](int n, int m, int p, int q) {
        int col = p == 0 ? 0 : p == n + 1 ? 2 : 1;  // Y, X, Z
        int row = q == 0 ? 2 : q == m + 1 ? 1 : 0;  // '', ', plain
        const typename C::Obj* grid[3][3] = {{&D.Y, &D.X, &D.Z}, {&D.Y1, &D.X1, &D.Z1}, {&D.Y2, &D.X2, &D.Z2}};
        return *grid[row][col];
    };
    r.rows_src = Multi<C>(cat, Shape({N, N}, {0, 0}, true));
    r.cols_src = Multi<C>(cat, Shape({N, N}, {0, 0}, true));
    for (const Index& idx : r.rows_src.shape.indices()) {
        const int n = idx[0], m = idx[1];
        std::vector<typename C::Obj> tparts;
        std::vector<int> target;
        for (int p = 0; p <= n + 1; ++p)
            for (int q = 0; q <= m + 1; ++q) {
                tparts.push_back(ob(n, m, p, q));
                target.push_back(q * (n + 2) + p);
            }
        r.theta.comp[idx] = permutation(cat, tparts, target);
        // rows: Cyl(f'',g'')_n constant in m, lands at q = 0
        std::vector<typename C::Obj> rparts, cparts, rtgt(tparts.size());
        for (int p = 0; p <= n + 1; ++p) rparts.push_back(ob(n, m, p, 0));
        for (int q = 0; q <= m + 1; ++q) cparts.push_back(ob(n, m, 0, q));
        std::vector<typename C::Obj> sparts(tparts.size());
        for (std::size_t k = 0; k < tparts.size(); ++k) sparts[target[k]] = tparts[k];
        auto into = [&](const std::vector<typename C::Obj>& from, const std::vector<typename C::Obj>& to,
                        std::function<int(int)> pos) {
            BlockSpec<typename C::Mor> spec;
            for (std::size_t k = 0; k < from.size(); ++k) {
                spec.target.push_back(pos(static_cast<int>(k)));
                spec.maps.push_back(cat.id(from[k]));
            }
            return cat.block(from, to, spec);
        };
        r.phi.comp[idx] = into(rparts, tparts, [&](int p) { return p * (m + 2); });
        r.rows_incl.comp[idx] = into(rparts, sparts, [&](int p) { return p; });
        r.cols_incl.comp[idx] = into(cparts, tparts, [&](int q) { return q; });
        r.varphi.comp[idx] = into(cparts, sparts, [&](int q) { return q * (n + 2); });
    }
    // Cyl(f'',g'')×Δ and Δ×Cyl(γ',γ) as bisimplicial objects
    auto spread = [&](const Multi<C>& S, int dir) {
        Multi<C> B(cat, Shape({N, N}, {0, 0}, true));
        for (const Index& idx : B.shape.indices()) {
            B.set_ob(idx, S.ob(idx[dir]));
            for (int a = 0; a < 2; ++a)
                for (int k = 0; k <= idx[a]; ++k) {
                    if (B.has_face(idx, a, k)) B.set_d(idx, a, k, a == dir ? S.d(idx[a], k) : cat.id(S.ob(idx[dir])));
                    if (B.has_degen(idx, a, k)) B.set_s(idx, a, k, a == dir ? S.s(idx[a], k) : cat.id(S.ob(idx[dir])));
                }
        }
        return B;
    };
    r.rows_src = spread(Cyl2, 0);
    r.cols_src = spread(CylY, 1);
    return r;
}

}  // namespace descent
