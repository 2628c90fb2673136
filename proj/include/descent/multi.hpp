#pragma once

#include "descent/category.hpp"
#include "descent/simplex.hpp"

#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

namespace descent {

using Index = std::vector<int>;

enum class Variance { Simplicial, Cosimplicial };

std::string index_string(const Index& idx);

// Allowed indices: low[a] <= idx[a] <= top[a] (low is 0, or -1 for an augmented direction).
// The all-(-1) index is allowed only when `corner` is set.
struct Shape {
    std::vector<int> top, low;
    bool corner = true;

    Shape() = default;
    Shape(std::vector<int> top_, std::vector<int> low_, bool corner_);
    static Shape simplicial(int N) { return Shape({N}, {0}, true); }
    static Shape augmented(int N) { return Shape({N}, {-1}, true); }
    // biaugmented / n-augmented: every direction starts at -1, no corner
    static Shape multi_augmented(int arity, int N, bool corner = false);

    int arity() const { return static_cast<int>(top.size()); }
    bool contains(const Index& idx) const;
    std::vector<Index> indices() const;
    bool operator==(const Shape& o) const { return top == o.top && low == o.low && corner == o.corner; }
};

struct GenKey {
    Index idx;
    int dir = 0, i = 0;
    bool operator<(const GenKey& o) const { return std::tie(idx, dir, i) < std::tie(o.idx, o.dir, o.i); }
    bool operator==(const GenKey& o) const { return idx == o.idx && dir == o.dir && i == o.i; }
};

struct IdentityViolation {
    std::string family;  // "dd", "ds", "sd", "ss", "cross", "natural", ...
    Index idx;
    int dir = 0, i = 0, j = 0;
    std::string to_string() const;
};

inline Index shifted(Index idx, int dir, int by) {
    idx[dir] += by;
    return idx;
}

// A truncated (multi)simplicial or cosimplicial object with values in a category C.
// Faces are keyed by the index of the higher level and degeneracies by the lower one:
//   simplicial   d(idx,a,i): X(idx) -> X(idx - e_a),  s(idx,a,j): X(idx) -> X(idx + e_a)
//   cosimplicial d(idx,a,i): X(idx - e_a) -> X(idx),  s(idx,a,j): X(idx + e_a) -> X(idx)
// `semi` marks face-only data (no degeneracies).
template <class C>
class Multi {
public:
    using Obj = typename C::Obj;
    using Mor = typename C::Mor;

    C cat;
    Shape shape;
    Variance var = Variance::Simplicial;
    bool semi = false;
    std::map<Index, Obj> objs;
    std::map<GenKey, Mor> faces, degens;

    Multi() = default;
    Multi(C c, Shape sh, Variance v = Variance::Simplicial) : cat(std::move(c)), shape(std::move(sh)), var(v) {}

    int arity() const { return shape.arity(); }
    int top(int dir = 0) const { return shape.top[dir]; }
    bool augmented(int dir = 0) const { return shape.low[dir] < 0; }

    const Obj& ob(const Index& idx) const {
        auto it = objs.find(idx);
        if (it == objs.end()) throw std::out_of_range("no object at " + index_string(idx));
        return it->second;
    }
    const Obj& ob(int n) const { return ob(Index{n}); }
    void set_ob(const Index& idx, Obj o) {
        if (!shape.contains(idx)) throw std::out_of_range("index outside shape: " + index_string(idx));
        objs[idx] = std::move(o);
    }
    void set_ob(int n, Obj o) { set_ob(Index{n}, std::move(o)); }

    bool has_face(const Index& idx, int dir, int i) const {
        return shape.contains(idx) && shape.contains(shifted(idx, dir, -1)) && i >= 0 && i <= idx[dir];
    }
    bool has_degen(const Index& idx, int dir, int j) const {
        return !semi && shape.contains(idx) && shape.contains(shifted(idx, dir, 1)) && j >= 0 && j <= idx[dir];
    }

    const Mor& d(const Index& idx, int dir, int i) const {
        auto it = faces.find(GenKey{idx, dir, i});
        if (it == faces.end())
            throw std::out_of_range("no face " + std::to_string(i) + " dir " + std::to_string(dir) + " at " + index_string(idx));
        return it->second;
    }
    const Mor& s(const Index& idx, int dir, int j) const {
        auto it = degens.find(GenKey{idx, dir, j});
        if (it == degens.end())
            throw std::out_of_range("no degeneracy " + std::to_string(j) + " dir " + std::to_string(dir) + " at " +
                                    index_string(idx));
        return it->second;
    }
    const Mor& d(int n, int i) const { return d(Index{n}, 0, i); }
    const Mor& s(int n, int j) const { return s(Index{n}, 0, j); }
    void set_d(const Index& idx, int dir, int i, Mor m) {
        if (!has_face(idx, dir, i)) throw std::out_of_range("face outside shape at " + index_string(idx));
        faces[GenKey{idx, dir, i}] = std::move(m);
    }
    void set_s(const Index& idx, int dir, int j, Mor m) {
        if (!has_degen(idx, dir, j)) throw std::out_of_range("degeneracy outside shape at " + index_string(idx));
        degens[GenKey{idx, dir, j}] = std::move(m);
    }
    void set_d(int n, int i, Mor m) { set_d(Index{n}, 0, i, std::move(m)); }
    void set_s(int n, int j, Mor m) { set_s(Index{n}, 0, j, std::move(m)); }

    // Level reached by θ in direction dir from idx, or nullopt when the factorization leaves the shape.
    // Simplicial: θ: [m] -> [idx[dir]].  Cosimplicial: θ: [idx[dir]] -> [m].
    std::optional<Index> reach(const Index& idx, int dir, const MonotoneMap& theta) const {
        if (!shape.contains(idx)) return std::nullopt;
        FaceDegWord w = epi_mono_factorize(theta);
        if (semi && !w.degens.empty()) return std::nullopt;
        int from = var == Variance::Simplicial ? theta.m : theta.n;
        if (idx[dir] != from) throw std::invalid_argument("act: map does not start at the index level");
        // the factorization passes through every level between the image size and the larger end
        Index cur = idx;
        for (int k = w.middle(); k <= std::max(theta.n, theta.m); ++k) {
            cur[dir] = k;
            if (!shape.contains(cur)) return std::nullopt;
        }
        return act_target(idx, dir, theta);
    }

    Mor act(const Index& idx, int dir, const MonotoneMap& theta) const {
        FaceDegWord w = epi_mono_factorize(theta);
        Index cur = idx;
        Mor m = cat.id(ob(idx));
        if (var == Variance::Simplicial) {
            if (cur[dir] != theta.m) throw std::invalid_argument("act: target level mismatch");
            for (int f : w.faces) {
                m = cat.compose(d(cur, dir, f), m);
                cur[dir] -= 1;
            }
            for (int j : w.degens) {
                m = cat.compose(s(cur, dir, j), m);
                cur[dir] += 1;
            }
        } else {
            if (cur[dir] != theta.n) throw std::invalid_argument("act: source level mismatch");
            for (auto it = w.degens.rbegin(); it != w.degens.rend(); ++it) {
                cur[dir] -= 1;
                m = cat.compose(s(cur, dir, *it), m);
            }
            for (auto it = w.faces.rbegin(); it != w.faces.rend(); ++it) {
                cur[dir] += 1;
                m = cat.compose(d(cur, dir, *it), m);
            }
        }
        return m;
    }

    // one map per direction, applied direction by direction
    Mor act_all(const Index& idx, const std::vector<MonotoneMap>& thetas) const {
        Index cur = idx;
        Mor m = cat.id(ob(idx));
        for (int a = 0; a < arity(); ++a) {
            m = cat.compose(act(cur, a, thetas[a]), m);
            cur[a] = var == Variance::Simplicial ? thetas[a].n : thetas[a].m;
        }
        return m;
    }

    // the object the map act(idx, dir, θ) lands in
    Index act_target(const Index& idx, int dir, const MonotoneMap& theta) const {
        Index r = idx;
        r[dir] = var == Variance::Simplicial ? theta.n : theta.m;
        return r;
    }

    bool operator==(const Multi& o) const {
        if (!(shape == o.shape) || var != o.var || semi != o.semi) return false;
        if (objs.size() != o.objs.size() || faces.size() != o.faces.size() || degens.size() != o.degens.size())
            return false;
        for (auto& [k, v] : objs) {
            auto it = o.objs.find(k);
            if (it == o.objs.end() || !cat.same(v, it->second)) return false;
        }
        for (auto& [k, v] : faces) {
            auto it = o.faces.find(k);
            if (it == o.faces.end() || !cat.equal(v, it->second)) return false;
        }
        for (auto& [k, v] : degens) {
            auto it = o.degens.find(k);
            if (it == o.degens.end() || !cat.equal(v, it->second)) return false;
        }
        return true;
    }

    // every generator slot of the shape is filled
    std::vector<std::string> missing() const {
        std::vector<std::string> out;
        for (const Index& idx : shape.indices()) {
            if (!objs.count(idx)) out.push_back("object " + index_string(idx));
            for (int a = 0; a < arity(); ++a) {
                for (int i = 0; i <= idx[a]; ++i)
                    if (has_face(idx, a, i) && !faces.count(GenKey{idx, a, i}))
                        out.push_back("face " + std::to_string(i) + " dir " + std::to_string(a) + " at " + index_string(idx));
                for (int j = 0; j <= idx[a]; ++j)
                    if (has_degen(idx, a, j) && !degens.count(GenKey{idx, a, j}))
                        out.push_back("degeneracy " + std::to_string(j) + " dir " + std::to_string(a) + " at " +
                                      index_string(idx));
            }
        }
        return out;
    }
};

namespace detail {

// elementary map applied to an object at level L: face (to L-1 simplicial, L+1 cosimplicial) or degeneracy
struct Gen {
    bool face;
    int k;
};

inline MonotoneMap gen_map(Variance v, int L, const Gen& g) {
    if (v == Variance::Simplicial) return g.face ? MonotoneMap::face(L, g.k) : MonotoneMap::degeneracy(L, g.k);
    return g.face ? MonotoneMap::face(L + 1, g.k) : MonotoneMap::degeneracy(L - 1, g.k);
}

inline std::vector<Gen> gens_at(Variance v, int L, bool semi) {
    std::vector<Gen> out;
    if (v == Variance::Simplicial) {
        for (int i = 0; i <= L; ++i) out.push_back({true, i});
        if (!semi)
            for (int j = 0; j <= L; ++j) out.push_back({false, j});
    } else {
        for (int i = 0; i <= L + 1; ++i) out.push_back({true, i});
        if (!semi)
            for (int j = 0; j <= L - 1; ++j) out.push_back({false, j});
    }
    return out;
}

inline bool same_word(const FaceDegWord& w, const Gen& outer, const Gen& inner) {
    if (outer.face && inner.face) return w.faces == std::vector<int>{outer.k, inner.k} && w.degens.empty();
    if (!outer.face && !inner.face) return w.degens == std::vector<int>{outer.k, inner.k} && w.faces.empty();
    if (outer.face && !inner.face) return w.faces == std::vector<int>{outer.k} && w.degens == std::vector<int>{inner.k};
    return false;
}

}  // namespace detail

// All simplicial (or cosimplicial) identities between pairs of generators, in each direction, plus
// commutation of generators in different directions. Empty iff the data is a valid object on the truncation.
template <class C>
std::vector<IdentityViolation> check_identities(const Multi<C>& X) {
    using detail::Gen;
    std::vector<IdentityViolation> out;
    const auto& cat = X.cat;
    const bool simp = X.var == Variance::Simplicial;
    for (const Index& idx : X.shape.indices()) {
        for (int a = 0; a < X.arity(); ++a) {
            int L = idx[a];
            for (const Gen& g1 : detail::gens_at(X.var, L, X.semi)) {
                MonotoneMap t1 = detail::gen_map(X.var, L, g1);
                auto mid = X.reach(idx, a, t1);
                if (!mid) continue;
                int L2 = (*mid)[a];
                for (const Gen& g2 : detail::gens_at(X.var, L2, X.semi)) {
                    MonotoneMap t2 = detail::gen_map(X.var, L2, g2);
                    if (!X.reach(*mid, a, t2)) continue;
                    // composite in the simplex category, outer map first
                    MonotoneMap theta = simp ? compose(t1, t2) : compose(t2, t1);
                    const Gen& outer = simp ? g1 : g2;
                    const Gen& inner = simp ? g2 : g1;
                    FaceDegWord w = epi_mono_factorize(theta);
                    if (detail::same_word(w, outer, inner)) continue;
                    if (!X.reach(idx, a, theta)) continue;
                    auto lhs = cat.compose(X.act(*mid, a, t2), X.act(idx, a, t1));
                    auto rhs = X.act(idx, a, theta);
                    if (!cat.equal(lhs, rhs)) {
                        std::string fam = std::string(g2.face ? "d" : "s") + (g1.face ? "d" : "s");
                        out.push_back({fam, idx, a, g2.k, g1.k});
                    }
                }
            }
        }
        for (int a = 0; a < X.arity(); ++a)
            for (int b = a + 1; b < X.arity(); ++b)
                for (const Gen& ga : detail::gens_at(X.var, idx[a], X.semi))
                    for (const Gen& gb : detail::gens_at(X.var, idx[b], X.semi)) {
                        MonotoneMap ta = detail::gen_map(X.var, idx[a], ga);
                        MonotoneMap tb = detail::gen_map(X.var, idx[b], gb);
                        auto ia = X.reach(idx, a, ta);
                        auto ib = X.reach(idx, b, tb);
                        if (!ia || !ib) continue;
                        auto iab = X.reach(*ia, b, tb);
                        if (!iab) continue;
                        auto p1 = cat.compose(X.act(*ia, b, tb), X.act(idx, a, ta));
                        auto p2 = cat.compose(X.act(*ib, a, ta), X.act(idx, b, tb));
                        if (!cat.equal(p1, p2))
                            out.push_back({std::string("cross-") + (ga.face ? "d" : "s") + (gb.face ? "d" : "s"), idx, a,
                                           ga.k, gb.k});
                    }
    }
    return out;
}

// A levelwise map between objects of the same shape.
template <class C>
struct MultiMap {
    std::map<Index, typename C::Mor> comp;
    const typename C::Mor& at(const Index& idx) const {
        auto it = comp.find(idx);
        if (it == comp.end()) throw std::out_of_range("no component at " + index_string(idx));
        return it->second;
    }
    const typename C::Mor& at(int n) const { return at(Index{n}); }
};

// f∘X(g) = Y(g)∘f for every generator g (faces and degeneracies in every direction)
template <class C>
std::vector<IdentityViolation> check_natural(const Multi<C>& X, const Multi<C>& Y, const MultiMap<C>& f) {
    std::vector<IdentityViolation> out;
    const auto& cat = X.cat;
    for (const Index& idx : X.shape.indices()) {
        if (!f.comp.count(idx) || !Y.shape.contains(idx)) {
            out.push_back({"missing", idx, 0, 0, 0});
            continue;
        }
        for (int a = 0; a < X.arity(); ++a)
            for (const auto& g : detail::gens_at(X.var, idx[a], X.semi)) {
                MonotoneMap t = detail::gen_map(X.var, idx[a], g);
                auto tgt = X.reach(idx, a, t);
                if (!tgt || !Y.reach(idx, a, t) || !f.comp.count(*tgt)) continue;
                auto l = cat.compose(f.at(*tgt), X.act(idx, a, t));
                auto r = cat.compose(Y.act(idx, a, t), f.at(idx));
                if (!cat.equal(l, r)) out.push_back({std::string("natural-") + (g.face ? "d" : "s"), idx, a, g.k, 0});
            }
    }
    return out;
}

template <class C>
bool is_map(const Multi<C>& X, const Multi<C>& Y, const MultiMap<C>& f) {
    for (const Index& idx : X.shape.indices()) {
        auto it = f.comp.find(idx);
        if (it == f.comp.end()) return false;
        if (!X.cat.same(X.cat.src(it->second), X.ob(idx)) || !X.cat.same(X.cat.tgt(it->second), Y.ob(idx))) return false;
    }
    return check_natural(X, Y, f).empty();
}

template <class C>
MultiMap<C> identity_map(const Multi<C>& X) {
    MultiMap<C> m;
    for (auto& [idx, o] : X.objs) m.comp[idx] = X.cat.id(o);
    return m;
}

template <class C>
MultiMap<C> compose_maps(const C& cat, const MultiMap<C>& g, const MultiMap<C>& f) {
    MultiMap<C> m;
    for (auto& [idx, fm] : f.comp) m.comp[idx] = cat.compose(g.at(idx), fm);
    return m;
}

template <class C>
bool maps_equal(const C& cat, const MultiMap<C>& a, const MultiMap<C>& b) {
    if (a.comp.size() != b.comp.size()) return false;
    for (auto& [idx, m] : a.comp) {
        auto it = b.comp.find(idx);
        if (it == b.comp.end() || !cat.equal(m, it->second)) return false;
    }
    return true;
}

// ---- constructors -----------------------------------------------------------

// X×Δ truncated at N: every object X, every map the identity
template <class C>
Multi<C> constant(const C& cat, const typename C::Obj& x, int N, Variance v = Variance::Simplicial) {
    Multi<C> R(cat, Shape::simplicial(N), v);
    for (int n = 0; n <= N; ++n) R.set_ob(n, x);
    auto id = cat.id(x);
    for (int n = 0; n <= N; ++n) {
        for (int i = 0; i <= n; ++i)
            if (R.has_face(Index{n}, 0, i)) R.set_d(n, i, id);
        for (int j = 0; j <= n; ++j)
            if (R.has_degen(Index{n}, 0, j)) R.set_s(n, j, id);
    }
    return R;
}

// (DZ)_n = Z_{n,n}, with every structure map applied in all directions at once
template <class C>
Multi<C> diagonal(const Multi<C>& Z) {
    int N = Z.shape.top[0];
    for (int a = 0; a < Z.arity(); ++a) N = std::min(N, Z.shape.top[a]);
    Multi<C> D(Z.cat, Shape::simplicial(N), Z.var);
    auto diag = [&](int n) { return Index(Z.arity(), n); };
    for (int n = 0; n <= N; ++n) D.set_ob(n, Z.ob(diag(n)));
    for (int n = 0; n <= N; ++n) {
        for (const auto& g : detail::gens_at(Z.var, n, Z.semi)) {
            MonotoneMap t = detail::gen_map(Z.var, n, g);
            int tl = Z.var == Variance::Simplicial ? t.n : t.m;
            if (tl < 0 || tl > N) continue;
            auto m = Z.act_all(diag(n), std::vector<MonotoneMap>(Z.arity(), t));
            int key = g.face ? std::max(n, tl) : std::min(n, tl);
            if (g.face)
                D.set_d(key, g.k, m);
            else
                D.set_s(key, g.k, m);
        }
    }
    D.semi = Z.semi;
    return D;
}

// reorder directions: new direction a is old direction perm[a] (Γ for arity 2 with perm = {1,0})
template <class C>
Multi<C> permute_dirs(const Multi<C>& Z, const std::vector<int>& perm) {
    Shape sh;
    for (int a = 0; a < Z.arity(); ++a) {
        sh.top.push_back(Z.shape.top[perm[a]]);
        sh.low.push_back(Z.shape.low[perm[a]]);
    }
    sh.corner = Z.shape.corner;
    Multi<C> R(Z.cat, sh, Z.var);
    R.semi = Z.semi;
    auto move = [&](const Index& old) {
        Index n(old.size());
        for (int a = 0; a < Z.arity(); ++a) n[a] = old[perm[a]];
        return n;
    };
    std::vector<int> inv(perm.size());
    for (int a = 0; a < Z.arity(); ++a) inv[perm[a]] = a;
    for (auto& [k, o] : Z.objs) R.objs[move(k)] = o;
    for (auto& [k, m] : Z.faces) R.faces[GenKey{move(k.idx), inv[k.dir], k.i}] = m;
    for (auto& [k, m] : Z.degens) R.degens[GenKey{move(k.idx), inv[k.dir], k.i}] = m;
    return R;
}

template <class C>
Multi<C> gamma_swap(const Multi<C>& Z) {
    if (Z.arity() != 2) throw std::invalid_argument("gamma_swap: bisimplicial input expected");
    return permute_dirs(Z, {1, 0});
}

// order reversal in one direction: d_i ↦ d_{n-i}, s_j ↦ s_{n-j} (n the level of the source)
template <class C>
Multi<C> upsilon(const Multi<C>& X, int dir = 0) {
    Multi<C> R = X;
    R.faces.clear();
    R.degens.clear();
    const bool simp = X.var == Variance::Simplicial;
    for (auto& [k, m] : X.faces) {
        int n = simp ? k.idx[dir] : k.idx[dir] - 1;  // source level
        if (k.dir == dir) {
            int top = simp ? n : n + 1;
            R.faces[GenKey{k.idx, dir, top - k.i}] = m;
        } else
            R.faces[k] = m;
    }
    for (auto& [k, m] : X.degens) {
        if (k.dir == dir) {
            int n = simp ? k.idx[dir] : k.idx[dir] + 1;
            int top = simp ? n : n - 1;
            R.degens[GenKey{k.idx, dir, top - k.i}] = m;
        } else
            R.degens[k] = m;
    }
    return R;
}

// restriction to a smaller truncation
template <class C>
Multi<C> truncate(const Multi<C>& X, const Shape& sh) {
    Multi<C> R(X.cat, sh, X.var);
    R.semi = X.semi;
    for (auto& [k, o] : X.objs)
        if (sh.contains(k)) R.objs[k] = o;
    for (auto& [k, m] : X.faces)
        if (R.has_face(k.idx, k.dir, k.i)) R.faces[k] = m;
    for (auto& [k, m] : X.degens)
        if (R.has_degen(k.idx, k.dir, k.i)) R.degens[k] = m;
    return R;
}

template <class C>
Multi<C> truncate(const Multi<C>& X, int N) {
    Shape sh = X.shape;
    for (auto& t : sh.top) t = std::min(t, N);
    return truncate(X, sh);
}

// drop the level -1 objects of every augmented direction
template <class C>
Multi<C> forget_augmentation(const Multi<C>& X) {
    Shape sh = X.shape;
    for (auto& l : sh.low) l = 0;
    sh.corner = true;
    return truncate(X, sh);
}

template <class C>
MultiMap<C> truncate_map(const MultiMap<C>& f, const Shape& sh) {
    MultiMap<C> r;
    for (auto& [k, m] : f.comp)
        if (sh.contains(k)) r.comp[k] = m;
    return r;
}

// apply a functor levelwise: objects by fo, morphisms by fm
template <class C2, class C, class FO, class FM>
Multi<C2> map_values(const Multi<C>& X, const C2& cat2, FO fo, FM fm) {
    Multi<C2> R(cat2, X.shape, X.var);
    R.semi = X.semi;
    for (auto& [k, o] : X.objs) R.objs[k] = fo(o);
    for (auto& [k, m] : X.faces) R.faces[k] = fm(m);
    for (auto& [k, m] : X.degens) R.degens[k] = fm(m);
    return R;
}

template <class C>
std::string describe(const Multi<C>& X) {
    std::ostringstream os;
    for (auto& [k, o] : X.objs) os << index_string(k) << ":" << X.cat.show(o) << " ";
    return os.str();
}

}  // namespace descent
