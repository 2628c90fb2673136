#include "descent/ez_descent.hpp"

#include "descent/generators.hpp"

#include <functional>
#include <sstream>

namespace descent {

namespace {

int parity_sign(long long e) { return (e % 2 == 0) ? 1 : -1; }

Matrix hstack_all(const Ring& r, std::size_t rows, const std::vector<Matrix>& parts) {
    Matrix m(r, rows, 0);
    for (const auto& p : parts) m = Matrix::hstack(m, p);
    return m;
}

void require_chain_nonneg(const BoundedComplex& c, const char* what) {
    if (c.dir != Direction::Chain) throw std::invalid_argument(std::string(what) + ": chain complexes expected");
    if (!c.empty_support() && c.lo < 0)
        throw std::invalid_argument(std::string(what) + ": complexes must live in degrees >= 0");
}

}  // namespace

// ---- truncation and homology in a range ----------------------------------------------

BoundedComplex truncate_above(const BoundedComplex& c, int Q) {
    if (c.empty_support() || c.lo > Q) return BoundedComplex::zero(c.ring, c.dir);
    int h = std::min(c.hi, Q);
    std::vector<std::size_t> rk;
    for (int q = c.lo; q <= h; ++q) rk.push_back(c.rank(q));
    BoundedComplex t(c.ring, c.dir, c.lo, h, rk);
    for (int q = c.lo; q <= h; ++q)
        if (c.next(q) <= Q) t.set_diff(q, c.diff(q));
    return t;
}

ChainMap truncate_above(const ChainMap& f, int Q) {
    ChainMap t(truncate_above(f.src, Q), truncate_above(f.tgt, Q));
    for (auto& [q, m] : f.f)
        if (q <= Q && t.src.rank(q) && t.tgt.rank(q)) t.f[q] = m;
    return t;
}

std::vector<HomologyGroup> homology_below(const BoundedComplex& c, int Q) {
    std::vector<HomologyGroup> out;
    for (int q = 0; q < Q; ++q) out.push_back(homology(c, q));
    return out;
}

bool acyclic_below(const BoundedComplex& c, int Q) {
    int lo = c.empty_support() ? 0 : std::min(c.lo, 0);
    for (int q = lo; q < Q; ++q)
        if (!homology(c, q).is_zero()) return false;
    return true;
}

bool quasi_iso_below(const ChainMap& f, int Q) { return acyclic_below(cone(f).c, Q); }

namespace {

Matrix cycles_of(const BoundedComplex& c, int q) {
    Matrix d = c.diff(q);
    if (d.rows() == 0) return Matrix::identity(c.ring, c.rank(q));
    return kernel_basis(d);
}

// every column of v lies in the boundaries of c at degree q
bool in_boundaries(const BoundedComplex& c, int q, const Matrix& v) {
    Matrix b = c.diff(c.prev(q));
    for (std::size_t j = 0; j < v.cols(); ++j) {
        Matrix col = v.column(j);
        if (col.is_zero()) continue;
        if (b.cols() == 0 || !in_span(b, col)) return false;
    }
    return true;
}

int support_lo(const BoundedComplex& a, const BoundedComplex& b) {
    int lo = 0;
    if (!a.empty_support()) lo = std::min(lo, a.lo);
    if (!b.empty_support()) lo = std::min(lo, b.lo);
    return lo;
}

}  // namespace

bool identity_on_homology_below(const ChainMap& f, int Q) {
    if (f.src != f.tgt) throw std::invalid_argument("identity_on_homology_below: endomorphism expected");
    for (int q = support_lo(f.src, f.tgt); q < Q; ++q) {
        Matrix z = cycles_of(f.src, q);
        Matrix diff = f.at(q) * z - z;
        if (!in_boundaries(f.tgt, q, diff)) return false;
    }
    return true;
}

bool zero_on_homology_below(const ChainMap& f, int Q) {
    for (int q = support_lo(f.src, f.tgt); q < Q; ++q)
        if (!in_boundaries(f.tgt, q, f.at(q) * cycles_of(f.src, q))) return false;
    return true;
}

Matrix homology_matrix(const ChainMap& f, int q) {
    if (!f.src.ring.is_field()) throw std::invalid_argument("homology_matrix: field required");
    auto hb = [&](const BoundedComplex& c) { return homology_basis(c.diff(c.prev(q)), c.diff(q)); };
    HomologyBasis s = hb(f.src), t = hb(f.tgt);
    if (s.dim() == 0 || t.dim() == 0) return Matrix(f.src.ring, t.dim(), s.dim());
    return t.coords(f.at(q) * s.reps());
}

// ---- K and K_N ----------------------------------------------------------------------------

BoundedComplex K(const SMod& X) {
    if (X.arity() != 1 || X.augmented()) throw std::invalid_argument("K: plain simplicial module expected");
    const Ring& r = X.cat.ring;
    const int N = X.top();
    std::vector<std::size_t> rk;
    for (int n = 0; n <= N; ++n) rk.push_back(X.ob(n));
    BoundedComplex c(r, Direction::Chain, 0, N, rk);
    for (int n = 1; n <= N; ++n) {
        Matrix d(r, X.ob(n - 1), X.ob(n));
        for (int i = 0; i <= n; ++i) d = d + X.d(n, i).scaled(parity_sign(i));
        c.set_diff(n, d);
    }
    return c;
}

Normalized quotient_complex(const BoundedComplex& big, const std::map<int, Matrix>& sub) {
    Normalized out;
    if (big.empty_support()) {
        out.c = big;
        out.proj = ChainMap::identity(big);
        return out;
    }
    const Ring& r = big.ring;
    std::map<int, Quotient> qs;
    std::vector<std::size_t> rk;
    for (int q = big.lo; q <= big.hi; ++q) {
        auto it = sub.find(q);
        Matrix span = it != sub.end() ? it->second : Matrix(r, big.rank(q), 0);
        if (span.rows() != big.rank(q)) throw std::invalid_argument("quotient_complex: span has the wrong size");
        qs[q] = quotient_map(span, big.rank(q));
        rk.push_back(qs[q].dim());
    }
    out.c = BoundedComplex(r, big.dir, big.lo, big.hi, rk);
    for (int q = big.lo; q <= big.hi; ++q) {
        int t = big.next(q);
        if (t >= big.lo && t <= big.hi) out.c.set_diff(q, qs[t].Q * big.diff(q) * qs[q].L);
    }
    out.proj = ChainMap(big, out.c);
    for (int q = big.lo; q <= big.hi; ++q) {
        out.proj.f[q] = qs[q].Q;
        out.lift[q] = qs[q].L;
    }
    return out;
}

Normalized K_N(const SMod& X) {
    if (X.semi) throw std::invalid_argument("K_N: degeneracies required");
    BoundedComplex c = K(X);
    std::map<int, Matrix> sub;
    for (int n = 1; n <= X.top(); ++n) {
        std::vector<Matrix> parts;
        for (int j = 0; j < n; ++j) parts.push_back(X.s(n - 1, j));
        sub[n] = hstack_all(X.cat.ring, X.ob(n), parts);
    }
    return quotient_complex(c, sub);
}

// ---- the simple functor -------------------------------------------------------------------

SComplex as_complexes(const SMod& X) {
    const Ring r = X.cat.ring;
    auto ob = [r](std::size_t n) { return BoundedComplex::concentrated(r, Direction::Chain, 0, n); };
    return map_values(X, ComplexCat{r, Direction::Chain}, ob, [r, ob](const Matrix& m) {
        ChainMap f(ob(m.cols()), ob(m.rows()));
        f.f[0] = m;
        return f;
    });
}

namespace {

BoundedComplex tensor_complex(const BoundedComplex& A, std::size_t n) {
    if (A.empty_support()) return A;
    std::vector<std::size_t> rk;
    for (int q = A.lo; q <= A.hi; ++q) rk.push_back(A.rank(q) * n);
    BoundedComplex c(A.ring, A.dir, A.lo, A.hi, rk);
    for (int q = A.lo; q <= A.hi; ++q) c.set_diff(q, kron(A.diff(q), Matrix::identity(A.ring, n)));
    return c;
}

// g ⊗ V levelwise for a chain map g
MultiMap<ComplexCat> tensor_map(const ChainMap& g, const SMod& V) {
    MultiMap<ComplexCat> m;
    for (auto& [idx, n] : V.objs) {
        ChainMap c(tensor_complex(g.src, n), tensor_complex(g.tgt, n));
        int lo = std::min(g.src.lo, g.tgt.lo), hi = std::max(g.src.hi, g.tgt.hi);
        for (int p = lo; p <= hi; ++p)
            if (c.src.rank(p) && c.tgt.rank(p)) c.f[p] = kron(g.at(p), Matrix::identity(g.src.ring, n));
        m.comp[idx] = c;
    }
    return m;
}

}  // namespace

SComplex tensor_object(const BoundedComplex& A, const SMod& V) {
    const Ring& r = A.ring;
    return map_values(
        V, ComplexCat{r, A.dir}, [&](std::size_t n) { return tensor_complex(A, n); },
        [&](const Matrix& m) {
            ChainMap f(tensor_complex(A, m.cols()), tensor_complex(A, m.rows()));
            for (int p = A.lo; p <= A.hi; ++p)
                if (A.rank(p)) f.f[p] = kron(Matrix::identity(r, A.rank(p)), m);
            return f;
        });
}

const Summand* Simple::find(int q, const Index& idx) const {
    if (q < 0 || q >= static_cast<int>(layout.size())) return nullptr;
    for (const auto& s : layout[q])
        if (s.idx == idx) return &s;
    return nullptr;
}

namespace {

struct SimpleFlags {
    bool alternate = true;  // (-1)^i on the faces
    int max_face = -1;      // only faces i <= max_face when >= 0
};

// lexicographic indices of length r with entries >= 0 and sum <= q
std::vector<Index> indices_up_to(int r, int q) {
    std::vector<Index> out;
    Index cur(r, 0);
    std::function<void(int, int)> rec = [&](int a, int left) {
        if (a == r) {
            out.push_back(cur);
            return;
        }
        for (int v = 0; v <= left; ++v) {
            cur[a] = v;
            rec(a + 1, left - v);
        }
    };
    rec(0, q);
    return out;
}

void check_simple_input(const SComplex& Z, int Q) {
    if (Z.var != Variance::Simplicial) throw std::invalid_argument("simple: simplicial object expected");
    for (int a = 0; a < Z.arity(); ++a) {
        if (Z.augmented(a)) throw std::invalid_argument("simple: augmented directions are not allowed");
        if (Z.top(a) < Q)
            throw std::invalid_argument("simple: insufficient truncation (level " + std::to_string(Z.top(a)) +
                                        " < Q = " + std::to_string(Q) + ")");
    }
    if (Q < 0) throw std::invalid_argument("simple: Q must be nonnegative");
    for (auto& [idx, c] : Z.objs) require_chain_nonneg(c, "simple");
}

Simple simple_impl(const SComplex& Z, int Q, const SimpleFlags& fl) {
    check_simple_input(Z, Q);
    const Ring& r = Z.cat.ring;
    const int R = Z.arity();
    Simple S;
    std::vector<std::size_t> rk;
    for (int q = 0; q <= Q; ++q) {
        std::vector<Summand> lay;
        std::size_t off = 0;
        for (const Index& idx : indices_up_to(R, q)) {
            int sum = 0;
            for (int v : idx) sum += v;
            Summand s{idx, q - sum, off, Z.ob(idx).rank(q - sum)};
            off += s.rank;
            lay.push_back(s);
        }
        S.layout.push_back(lay);
        rk.push_back(off);
    }
    S.c = BoundedComplex(r, Direction::Chain, 0, Q, rk);
    for (int q = 1; q <= Q; ++q) {
        Matrix D(r, rk[q - 1], rk[q]);
        for (const Summand& s : S.layout[q]) {
            if (s.rank == 0) continue;
            const BoundedComplex& obj = Z.ob(s.idx);
            if (s.p >= 1) {
                const Summand* t = S.find(q - 1, s.idx);
                D.add_block(t->offset, s.offset, obj.diff(s.p));
            }
            for (int a = 0; a < R; ++a) {
                if (s.idx[a] == 0) continue;
                Index tidx = shifted(s.idx, a, -1);
                const Summand* t = S.find(q - 1, tidx);
                if (t->rank == 0) continue;
                int later = s.p;
                for (int b = a + 1; b < R; ++b) later += s.idx[b];
                Matrix del(r, t->rank, s.rank);
                for (int i = 0; i <= s.idx[a]; ++i) {
                    if (fl.max_face >= 0 && i > fl.max_face) continue;
                    Matrix m = Z.d(s.idx, a, i).at(s.p);
                    del = del + (fl.alternate ? m.scaled(parity_sign(i)) : m);
                }
                D.add_block(t->offset, s.offset, del.scaled(parity_sign(later)));
            }
        }
        S.c.set_diff(q, D);
    }
    return S;
}

}  // namespace

Simple simple_total(const SComplex& Z, int Q) { return simple_impl(Z, Q, SimpleFlags{}); }

BoundedComplex simple_s(const SComplex& X, int Q) {
    if (X.arity() != 1) throw std::invalid_argument("simple_s: simplicial object expected");
    return simple_total(X, Q).c;
}

namespace {

ChainMap simple_map_layouts(const Simple& SX, const Simple& SY, const MultiMap<ComplexCat>& f, int Q) {
    ChainMap m(SX.c, SY.c);
    for (int q = 0; q <= Q; ++q) {
        Matrix M(SX.c.ring, SY.c.rank(q), SX.c.rank(q));
        for (const Summand& s : SX.layout[q]) {
            const Summand* t = SY.find(q, s.idx);
            if (s.rank == 0 || t->rank == 0) continue;
            M.set_block(t->offset, s.offset, f.at(s.idx).at(s.p));
        }
        m.f[q] = M;
    }
    return m;
}

}  // namespace

ChainMap simple_map(const SComplex& X, const SComplex& Y, const MultiMap<ComplexCat>& f, int Q) {
    return simple_map_layouts(simple_total(X, Q), simple_total(Y, Q), f, Q);
}

Normalized simple_sN(const SComplex& X, int Q) {
    if (X.arity() != 1) throw std::invalid_argument("simple_sN: simplicial object expected");
    if (X.semi) throw std::invalid_argument("simple_sN: degeneracies required");
    Simple S = simple_total(X, Q);
    const Ring& r = X.cat.ring;
    std::map<int, Matrix> sub;
    for (int q = 0; q <= Q; ++q) {
        std::vector<Matrix> parts;
        for (const Summand& s : S.layout[q]) {
            const int n = s.idx[0];
            if (n == 0 || s.rank == 0) continue;
            for (int j = 0; j < n; ++j) {
                Matrix m = X.s(n - 1, j).at(s.p);
                Matrix placed(r, S.c.rank(q), m.cols());
                placed.set_block(s.offset, 0, m);
                parts.push_back(placed);
            }
        }
        sub[q] = hstack_all(r, S.c.rank(q), parts);
    }
    return quotient_complex(S.c, sub);
}

LambdaData lambda(const BoundedComplex& A, int Q) {
    require_chain_nonneg(A, "lambda");
    const Ring& r = A.ring;
    BoundedComplex At = truncate_above(A, Q);
    Simple S = simple_total(constant(ComplexCat{r, Direction::Chain}, At, Q), Q);
    LambdaData L{S.c, ChainMap(S.c, At), ChainMap(At, S.c)};
    for (int q = 0; q <= Q; ++q) {
        const Summand* s = S.find(q, Index{0});
        if (s->rank == 0) continue;
        Matrix P(r, s->rank, S.c.rank(q));
        P.set_block(0, s->offset, Matrix::identity(r, s->rank));
        L.lambda.f[q] = P;
        L.rho.f[q] = P.transpose();
    }
    return L;
}

// ---- Alexander-Whitney and shuffles --------------------------------------------------------

MonotoneMap back_face(int i, int n) {
    std::vector<int> v;
    for (int x = 0; x <= i; ++x) v.push_back(x + n - i);
    return MonotoneMap(i, n, v);
}

MonotoneMap front_face(int j, int n) {
    std::vector<int> v;
    for (int x = 0; x <= j; ++x) v.push_back(x);
    return MonotoneMap(j, n, v);
}

MonotoneMap degeneracy_word(int n, const std::vector<int>& rep) {
    const int m = n - static_cast<int>(rep.size());
    std::vector<int> v{0};
    for (int x = 0; x < n; ++x) {
        bool repeat = std::find(rep.begin(), rep.end(), x) != rep.end();
        v.push_back(v.back() + (repeat ? 0 : 1));
    }
    return MonotoneMap(n, m, v);
}

namespace {

// which components of μ get a wrong sign (fault injection)
enum class MuFault { None, OddFirst, FirstZeroOdd };

ChainMap mu_impl(const SComplex& Z, int Q, MuFault fault) {
    if (Z.arity() != 2) throw std::invalid_argument("mu_AW: bisimplicial object expected");
    Simple src = simple_total(diagonal(Z), Q);
    Simple tgt = simple_total(Z, Q);
    const Ring& r = Z.cat.ring;
    ChainMap mu(src.c, tgt.c);
    for (int q = 0; q <= Q; ++q) {
        Matrix M(r, tgt.c.rank(q), src.c.rank(q));
        for (const Summand& s : src.layout[q]) {
            if (s.rank == 0) continue;
            const int n = s.idx[0];
            for (int i = 0; i <= n; ++i) {
                const int j = n - i;
                const Summand* t = tgt.find(q, Index{i, j});
                if (t->rank == 0) continue;
                Matrix c = Z.act_all(Index{n, n}, {back_face(i, n), front_face(j, n)}).at(s.p);
                if ((fault == MuFault::OddFirst && i % 2 == 1) || (fault == MuFault::FirstZeroOdd && i == 0 && n % 2 == 1))
                    c = -c;
                M.set_block(t->offset, s.offset, c);
            }
        }
        mu.f[q] = M;
    }
    return mu;
}

}  // namespace

ChainMap mu_AW(const SComplex& Z, int Q) { return mu_impl(Z, Q, MuFault::None); }

ChainMap mu_EZ(const SMod& V, int Q) { return mu_AW(as_complexes(V), Q); }

ChainMap shuffle_eta(const SMod& V, int Q) {
    if (V.arity() != 2) throw std::invalid_argument("shuffle_eta: bisimplicial module expected");
    const Ring& r = V.cat.ring;
    Simple src = simple_total(as_complexes(V), Q);
    Simple tgt = simple_total(as_complexes(diagonal(V)), Q);
    ChainMap eta(src.c, tgt.c);
    for (int n = 0; n <= Q; ++n) {
        Matrix M(r, tgt.c.rank(n), src.c.rank(n));
        const Summand* t = tgt.find(n, Index{n});
        for (const Summand& s : src.layout[n]) {
            if (s.rank == 0 || t->rank == 0) continue;
            const int i = s.idx[0], j = s.idx[1];
            Matrix acc(r, t->rank, s.rank);
            // mu: repeats in direction 2 (|mu| = i), nu: repeats in direction 1 (|nu| = j);
            // sign of the shuffle times (-1)^{ij} for the sign convention of the simple
            for (unsigned mask = 0; mask < (1u << n); ++mask) {
                if (std::popcount(mask) != i) continue;
                std::vector<int> mu, nu;
                for (int x = 0; x < n; ++x) (mask >> x & 1u ? mu : nu).push_back(x);
                long long inv = 0;
                for (int a : mu)
                    for (int b : nu)
                        if (a > b) ++inv;
                Matrix c = V.act_all(Index{i, j}, {degeneracy_word(n, nu), degeneracy_word(n, mu)});
                acc = acc + c.scaled(parity_sign(inv + static_cast<long long>(i) * j));
            }
            M.set_block(t->offset, s.offset, acc);
        }
        eta.f[n] = M;
    }
    return eta;
}

AssocComposites mu_assoc_composites(const SMod& T, int n) {
    if (T.arity() != 3) throw std::invalid_argument("mu_assoc_composites: trisimplicial module expected");
    for (int a = 0; a < 3; ++a)
        if (T.top(a) < n) throw std::invalid_argument("mu_assoc_composites: insufficient truncation");
    const Ring& r = T.cat.ring;
    AssocComposites out;
    Matrix first(r, 0, T.ob(Index{n, n, n})), last = first;
    for (int a = 0; a <= n; ++a)
        for (int b = 0; a + b <= n; ++b) {
            const int x = a, y = b, z = n - a - b;
            out.targets.push_back(Index{x, y, z});
            const int xy = x + y, yz = y + z;
            Matrix s1 = T.act_all(Index{n, n, n}, {back_face(xy, n), back_face(xy, n), front_face(z, n)});
            Matrix s2 = T.act_all(Index{xy, xy, z}, {back_face(x, xy), front_face(y, xy), MonotoneMap::identity(z)});
            first = Matrix::vstack(first, s2 * s1);
            Matrix t1 = T.act_all(Index{n, n, n}, {back_face(x, n), front_face(yz, n), front_face(yz, n)});
            Matrix t2 = T.act_all(Index{x, yz, yz}, {MonotoneMap::identity(x), back_face(y, yz), front_face(z, yz)});
            last = Matrix::vstack(last, t2 * t1);
        }
    out.via_first = first;
    out.via_last = last;
    return out;
}

bool mu_associativity_check(const SMod& T, int Q) {
    for (int n = 0; n <= Q; ++n) {
        AssocComposites c = mu_assoc_composites(T, n);
        if (c.via_first != c.via_last) return false;
    }
    return true;
}

// ---- cones, shifts, triangles ------------------------------------------------------------------

namespace {

ConeInD cone_in_D_impl(const ChainMap& f, int Q, bool zero_map) {
    require_chain_nonneg(f.src, "cone_in_D");
    require_chain_nonneg(f.tgt, "cone_in_D");
    const Ring& r = f.src.ring;
    const BoundedComplex& A = f.src;
    const BoundedComplex& B = f.tgt;
    ComplexCat cat{r, Direction::Chain};
    auto X = constant(cat, A, Q);
    auto Y = constant(cat, B, Q);
    MultiMap<ComplexCat> fd;
    for (int n = 0; n <= Q; ++n) fd.comp[{n}] = zero_map ? ChainMap::zero(A, B) : f;
    Simple S = simple_total(simp_cone(X, Y, fd), Q);
    ConeInD k;
    k.Q = Q;
    k.c = S.c;
    k.classical = truncate_above(cone(zero_map ? ChainMap::zero(A, B) : f).c, Q);
    k.proj = ChainMap(k.c, k.classical);
    k.incl = ChainMap(k.classical, k.c);
    // level n, degree p: B_p then n copies of A_p (positions 1..n)
    for (int q = 0; q <= Q; ++q) {
        Matrix P(r, k.classical.rank(q), k.c.rank(q));
        const Summand* s0 = S.find(q, Index{0});
        if (s0->rank) P.set_block(0, s0->offset, Matrix::identity(r, s0->rank));
        if (q >= 1) {
            const Summand* s1 = S.find(q, Index{1});
            const std::size_t a = A.rank(q - 1), b = B.rank(q - 1);
            if (a) P.set_block(B.rank(q), s1->offset + b, Matrix::identity(r, a).scaled(parity_sign(q - 1)));
        }
        k.proj.f[q] = P;
        k.incl.f[q] = P.transpose();
    }
    // h on level n (simplicial degree), with the sign (-1)^p of the simple:
    //   n odd: B -> B;  n even >= 2: position 1 -> position 1 with -1;  even k in [2, n]: position k -> k+1
    for (int q = 0; q < Q; ++q) {
        Matrix H(r, k.c.rank(q + 1), k.c.rank(q));
        for (const Summand& s : S.layout[q]) {
            const int n = s.idx[0], p = s.p;
            const Summand* t = S.find(q + 1, Index{n + 1});
            const std::size_t a = A.rank(p), b = B.rank(p);
            const int sg = parity_sign(p);
            auto pos = [&](const Summand* x, int kpos) { return x->offset + b + (kpos - 1) * a; };
            if (n % 2 == 1 && b) H.set_block(t->offset, s.offset, Matrix::identity(r, b).scaled(sg));
            if (a == 0) continue;
            if (n % 2 == 0 && n >= 2) H.set_block(pos(t, 1), pos(&s, 1), Matrix::identity(r, a).scaled(-sg));
            for (int kk = 2; kk <= n; kk += 2) H.set_block(pos(t, kk + 1), pos(&s, kk), Matrix::identity(r, a).scaled(sg));
        }
        k.h[q] = H;
    }
    return k;
}

}  // namespace

ConeInD cone_in_D(const ChainMap& f, int Q) { return cone_in_D_impl(f, Q, false); }

std::optional<int> cone_homotopy_failure(const ConeInD& k) {
    const Ring& r = k.c.ring;
    for (int q = 0; q <= k.Q; ++q)
        if (k.proj.at(q) * k.incl.at(q) != Matrix::identity(r, k.classical.rank(q))) return q;
    for (int q = 0; q < k.Q; ++q) {
        Matrix lhs = k.c.diff(q + 1) * k.h.at(q);
        if (q >= 1) lhs = lhs + k.h.at(q - 1) * k.c.diff(q);
        Matrix rhs = Matrix::identity(r, k.c.rank(q)) - k.incl.at(q) * k.proj.at(q);
        if (lhs != rhs) return q;
    }
    return std::nullopt;
}

ShiftT shift_T(const BoundedComplex& X, int Q) {
    ConeInD k = cone_in_D(ChainMap::zero(X, BoundedComplex::zero(X.ring)), Q);
    ShiftT s{k.c, ChainMap(k.c, truncate_above(shift(X, 1), Q))};
    for (int q = 0; q <= Q; ++q)
        if (k.c.rank(q) && s.to_shift.tgt.rank(q)) s.to_shift.f[q] = k.proj.at(q);
    return s;
}

Triangle triangle_of(const ChainMap& f, int Q) {
    ConeInD k = cone_in_D(f, Q);
    Cone cl = cone(f);
    Triangle t;
    t.Q = Q;
    t.c = k.c;
    t.f = truncate_above(f, Q);
    ChainMap ci = truncate_above(cl.incl, Q);
    ci.tgt = k.classical;
    t.iota = compose(k.incl, ci);
    t.iota.src = t.f.tgt;
    ChainMap cp = truncate_above(cl.proj, Q);
    cp.src = k.classical;
    t.p = compose(cp, k.proj);
    return t;
}

bool triangle_exact(const Triangle& t) {
    if (!t.c.ring.is_field()) throw std::invalid_argument("triangle_exact: field required");
    const int top = t.Q - 1;  // degrees < Q-1
    ChainMap f1 = truncate_above(shift_map(t.f, 1), t.Q);
    if (!zero_on_homology_below(compose(t.iota, t.f), top)) return false;
    if (!zero_on_homology_below(compose(t.p, t.iota), top)) return false;
    f1.src = t.p.tgt;
    if (!zero_on_homology_below(compose(f1, t.p), top)) return false;
    auto dimH = [](const BoundedComplex& c, int q) { return homology(c, q).free_rank; };
    auto rk = [](const ChainMap& m, int q) { return rank(homology_matrix(m, q)); };
    for (int q = 0; q < top; ++q) {
        if (rk(t.f, q) + rk(t.iota, q) != dimH(t.f.tgt, q)) return false;
        if (rk(t.iota, q) + rk(t.p, q) != dimH(t.c, q)) return false;
        std::size_t prev = q >= 1 ? rk(t.f, q - 1) : 0;
        if (rk(t.p, q) + prev != (q >= 1 ? dimH(t.f.src, q - 1) : 0)) return false;
    }
    return true;
}

// ---- zig-zags ------------------------------------------------------------------------------------

ZigZag identity_zigzag(const BoundedComplex& X) { return ZigZag{X, X, X, ChainMap::identity(X), ChainMap::identity(X)}; }

ZigZag zigzag_of(const ChainMap& f) { return ZigZag{f.src, f.tgt, f.tgt, f, ChainMap::identity(f.tgt)}; }

ZigZag zigzag_compose(const ZigZag& F, const ZigZag& G) {
    if (F.Y != G.X) throw std::invalid_argument("zigzag_compose: the zig-zags do not meet");
    if (!is_quasi_iso(F.w) || !is_quasi_iso(G.w)) throw std::invalid_argument("zigzag_compose: backward leg is not a quasi-isomorphism");
    const BoundedComplex& T = F.T;
    const BoundedComplex& S = G.T;
    const BoundedComplex& Y = F.Y;
    const Ring& r = T.ring;
    int lo = 1 << 20, hi = -(1 << 20);
    auto widen = [&](const BoundedComplex& c, int sh) {
        if (c.empty_support()) return;
        lo = std::min(lo, c.lo + sh);
        hi = std::max(hi, c.hi + sh);
    };
    widen(T, 0);
    widen(S, 0);
    widen(Y, 1);
    ZigZag out;
    out.X = F.X;
    out.Y = G.Y;
    if (lo > hi) {
        out.T = BoundedComplex::zero(r);
    } else {
        std::vector<std::size_t> rk;
        for (int q = lo; q <= hi; ++q) rk.push_back(T.rank(q) + S.rank(q) + Y.rank(q - 1));
        out.T = BoundedComplex(r, Direction::Chain, lo, hi, rk);
        for (int q = lo; q <= hi; ++q) {
            Matrix D(r, out.T.rank(q - 1), out.T.rank(q));
            const std::size_t t1 = T.rank(q - 1), s1 = S.rank(q - 1);
            const std::size_t t0 = T.rank(q), s0 = S.rank(q);
            D.set_block(0, 0, T.diff(q));
            D.set_block(t1, t0, S.diff(q));
            D.set_block(0, t0 + s0, F.w.at(q - 1));
            D.set_block(t1, t0 + s0, -G.f.at(q - 1));
            D.set_block(t1 + s1, t0 + s0, -Y.diff(q - 1));
            out.T.set_diff(q, D);
        }
    }
    auto inject = [&](const BoundedComplex& from, bool second) {
        ChainMap m(from, out.T);
        for (int q = out.T.lo; q <= out.T.hi; ++q) {
            if (!from.rank(q)) continue;
            Matrix I(r, out.T.rank(q), from.rank(q));
            I.set_block(second ? T.rank(q) : 0, 0, Matrix::identity(r, from.rank(q)));
            m.f[q] = I;
        }
        return m;
    };
    out.f = compose(inject(T, false), F.f);
    out.w = compose(inject(S, true), G.w);
    return out;
}

Matrix zigzag_homology(const ZigZag& z, int q) {
    auto inv = inverse(homology_matrix(z.w, q));
    if (!inv) throw std::invalid_argument("zigzag_homology: backward leg is not invertible on homology");
    return *inv * homology_matrix(z.f, q);
}

// ---- homology of simplicial sets ----------------------------------------------------------------

std::vector<HomologyGroup> homology_of_sset(const SSet& S, const Ring& r, bool normalized) {
    SMod L = free_linearize(S, r);
    BoundedComplex c = normalized ? K_N(L).c : K(L);
    return homology_below(c, S.top());
}

SSet sset_from_cells(const std::vector<Cell>& cells, int N) {
    using Elem = std::pair<int, MonotoneMap>;  // (cell, surjection onto its dimension)
    for (std::size_t c = 0; c < cells.size(); ++c) {
        if (static_cast<int>(cells[c].faces.size()) != (cells[c].dim == 0 ? 0 : cells[c].dim + 1))
            throw std::invalid_argument("sset_from_cells: wrong number of faces");
        for (auto& [id, s] : cells[c].faces) {
            if (id < 0 || id >= static_cast<int>(cells.size()) || s.n != cells[c].dim - 1 || s.m != cells[id].dim ||
                !s.is_surjective())
                throw std::invalid_argument("sset_from_cells: bad face data");
        }
    }
    std::function<Elem(const Elem&, const MonotoneMap&)> pull = [&](const Elem& e, const MonotoneMap& th) -> Elem {
        MonotoneMap tau = compose(e.second, th);
        auto [epi, mono] = epi_mono(tau);
        if (mono.n == mono.m) return {e.first, epi};
        int miss = 0;
        while (std::find(mono.v.begin(), mono.v.end(), miss) != mono.v.end()) ++miss;
        std::vector<int> rest;
        for (int v : mono.v) rest.push_back(v < miss ? v : v - 1);
        MonotoneMap mono2(mono.n, mono.m - 1, rest);
        const auto& face = cells[e.first].faces[miss];
        return pull(Elem{face.first, face.second}, compose(mono2, epi));
    };
    std::vector<std::vector<Elem>> elems(N + 1);
    for (int n = 0; n <= N; ++n)
        for (std::size_t c = 0; c < cells.size(); ++c)
            if (cells[c].dim <= n)
                for (auto& s : surjections(n, cells[c].dim)) elems[n].push_back({static_cast<int>(c), s});
    SSet S(SetCat{}, Shape::simplicial(N));
    for (int n = 0; n <= N; ++n) S.set_ob(n, elems[n].size());
    auto lookup = [&](int n, const Elem& x) {
        auto it = std::find(elems[n].begin(), elems[n].end(), x);
        if (it == elems[n].end()) throw std::logic_error("sset_from_cells: element not found");
        return static_cast<std::size_t>(it - elems[n].begin());
    };
    for (int n = 0; n <= N; ++n) {
        for (int i = 0; n > 0 && i <= n; ++i) {
            FinMap f{elems[n].size(), elems[n - 1].size(), {}};
            for (auto& x : elems[n]) f.v.push_back(lookup(n - 1, pull(x, MonotoneMap::face(n, i))));
            S.set_d(n, i, f);
        }
        for (int j = 0; n < N && j <= n; ++j) {
            FinMap f{elems[n].size(), elems[n + 1].size(), {}};
            for (auto& x : elems[n]) f.v.push_back(lookup(n + 1, pull(x, MonotoneMap::degeneracy(n, j))));
            S.set_s(n, j, f);
        }
    }
    auto bad = check_identities(S);
    if (!bad.empty()) throw std::invalid_argument("sset_from_cells: face data violates " + bad.front().to_string());
    return S;
}

SSet point_model(int N) { return sset_from_cells({Cell{0, {}}}, N); }

SSet circle_model(int N) {
    MonotoneMap id0 = MonotoneMap::identity(0);
    return sset_from_cells({Cell{0, {}}, Cell{1, {{0, id0}, {0, id0}}}}, N);
}

SSet sphere2_model(int N) { return simplicial_subset(3, {{0, 1, 2}, {0, 1, 3}, {0, 2, 3}, {1, 2, 3}}, N); }

SSet projective_plane_model(int N) {
    MonotoneMap id0 = MonotoneMap::identity(0), id1 = MonotoneMap::identity(1);
    MonotoneMap collapse(1, 0, {0, 0});
    return sset_from_cells({Cell{0, {}}, Cell{1, {{0, id0}, {0, id0}}}, Cell{2, {{1, id1}, {0, collapse}, {1, id1}}}}, N);
}

// ---- random instances ------------------------------------------------------------------------------

namespace {

// random change of basis in every degree
ChainMap random_automorphism(Rng& rng, const BoundedComplex& B, BoundedComplex& out) {
    out = B;
    ChainMap g(B, B);
    std::map<int, Unimodular> u;
    for (int q = B.lo; q <= B.hi; ++q) u[q] = random_unimodular(rng, B.ring, B.rank(q));
    for (int q = B.lo; q <= B.hi; ++q) {
        int t = B.next(q);
        if (t >= B.lo && t <= B.hi) out.set_diff(q, u[t].fwd * B.diff(q) * u[q].inv);
        g.f[q] = u[q].fwd;
    }
    g.tgt = out;
    return g;
}

}  // namespace

BoundedComplex random_acyclic(Rng& rng, const Ring& r, int lo, int hi, std::size_t max_rank) {
    if (hi <= lo) return BoundedComplex::zero(r);
    BoundedComplex C = random_complex(rng, r, Direction::Chain, lo, hi - 1, max_rank);
    BoundedComplex E = cone(ChainMap::identity(C)).c;
    BoundedComplex out;
    random_automorphism(rng, E, out);
    return out;
}

ChainMap random_quasi_iso(Rng& rng, const BoundedComplex& A, std::size_t max_rank) {
    int lo = A.empty_support() ? 0 : A.lo, hi = A.empty_support() ? 1 : A.hi;
    BoundedComplex E = random_acyclic(rng, A.ring, lo, std::max(hi, lo + 1), max_rank);
    BoundedComplex B0 = direct_sum(A, E);
    ChainMap inc(A, B0);
    for (int q = A.lo; q <= A.hi; ++q) {
        if (!A.rank(q)) continue;
        Matrix I(A.ring, B0.rank(q), A.rank(q));
        I.set_block(0, 0, Matrix::identity(A.ring, A.rank(q)));
        inc.f[q] = I;
    }
    BoundedComplex B;
    ChainMap g = random_automorphism(rng, B0, B);
    return random_homotopic(rng, compose(g, inc));
}

namespace {

SMod random_linear_sset(Rng& rng, const Ring& r, int N) {
    return random_conjugate(rng, free_linearize(random_small_sset(rng, N), r)).obj;
}

SMod external3(const SMod& a, const SMod& b, const SMod& c) {
    const ModCat& cat = a.cat;
    SMod Z(cat, Shape({a.top(), b.top(), c.top()}, {0, 0, 0}, true));
    const SMod* f[3] = {&a, &b, &c};
    for (const Index& idx : Z.shape.indices()) Z.set_ob(idx, a.ob(idx[0]) * b.ob(idx[1]) * c.ob(idx[2]));
    auto piece = [&](const Index& idx, int dir, const Matrix& m) {
        Matrix out = Matrix::identity(cat.ring, 1);
        for (int k = 0; k < 3; ++k) out = kron(out, k == dir ? m : Matrix::identity(cat.ring, f[k]->ob(idx[k])));
        return out;
    };
    for (const Index& idx : Z.shape.indices())
        for (int dir = 0; dir < 3; ++dir)
            for (int i = 0; i <= idx[dir]; ++i) {
                if (Z.has_face(idx, dir, i)) Z.set_d(idx, dir, i, piece(idx, dir, f[dir]->d(idx[dir], i)));
                if (Z.has_degen(idx, dir, i)) Z.set_s(idx, dir, i, piece(idx, dir, f[dir]->s(idx[dir], i)));
            }
    return Z;
}

}  // namespace

SComplex random_scomplex(Rng& rng, const Ring& r, int N, int P, std::size_t max_rank) {
    SComplex X = tensor_object(random_complex(rng, r, Direction::Chain, 0, P, max_rank), random_linear_sset(rng, r, N));
    if (uniform(rng, 0, 1))
        X = multi_sum(X, tensor_object(random_complex(rng, r, Direction::Chain, 0, P, max_rank), random_linear_sset(rng, r, N)));
    return X;
}

SMod random_bisimplicial_module(Rng& rng, const Ring& r, int N) {
    auto one = [&] {
        return random_conjugate(rng, external_tensor(random_linear_sset(rng, r, N), random_linear_sset(rng, r, N))).obj;
    };
    SMod V = one();
    if (uniform(rng, 0, 1)) V = multi_sum(V, one());
    return V;
}

SComplex random_bisimplicial_complex(Rng& rng, const Ring& r, int N, int P, std::size_t max_rank) {
    SComplex Z = tensor_object(random_complex(rng, r, Direction::Chain, 0, P, max_rank), random_bisimplicial_module(rng, r, N));
    if (uniform(rng, 0, 1))
        Z = multi_sum(Z, tensor_object(random_complex(rng, r, Direction::Chain, 0, P, max_rank),
                                       random_bisimplicial_module(rng, r, N)));
    return Z;
}

SMod random_trisimplicial_module(Rng& rng, const Ring& r, int N) {
    SMod T = external3(random_linear_sset(rng, r, N), random_linear_sset(rng, r, N), random_linear_sset(rng, r, N));
    return random_conjugate(rng, T).obj;
}

// ---- the descent-axiom verifier ---------------------------------------------------------------------

namespace {

struct Outcome {
    bool pass = true;
    std::string reason, witness;
};

Outcome fail(std::string reason, std::string witness) { return Outcome{false, std::move(reason), std::move(witness)}; }

std::string witness_rows(const SComplex& Z) {
    std::ostringstream os;
    for (int i = 0; i <= Z.top(0); ++i) os << "# row " << i << "\n" << print_scplx(slice(Z, 0, i));
    return os.str();
}

// a levelwise quasi-isomorphism X -> Y built from quasi-isomorphisms of complexes tensored with simplicial modules
struct LevelQuis {
    SComplex X, Y;
    MultiMap<ComplexCat> f;
};

LevelQuis random_level_quis(Rng& rng, const SdcConfig& cfg, int P) {
    ComplexCat cat{cfg.ring, Direction::Chain};
    LevelQuis L;
    int terms = uniform(rng, 1, 2);
    for (int t = 0; t < terms; ++t) {
        BoundedComplex A = random_complex(rng, cfg.ring, Direction::Chain, 0, P, cfg.max_rank);
        ChainMap g = random_quasi_iso(rng, A, cfg.max_rank);
        SMod V = random_linear_sset(rng, cfg.ring, cfg.levels);
        SComplex X = tensor_object(g.src, V), Y = tensor_object(g.tgt, V);
        MultiMap<ComplexCat> f = tensor_map(g, V);
        if (t == 0) {
            L = {X, Y, f};
        } else {
            MultiMap<ComplexCat> s;
            for (auto& [idx, m] : f.comp) s.comp[idx] = block_diagonal(cat, std::vector<ChainMap>{L.f.at(idx), m});
            L = {multi_sum(L.X, X), multi_sum(L.Y, Y), s};
        }
    }
    return L;
}

// Z_{i,j} = X_j (dir = 0) or X_i (dir = 1): X made constant in direction `dir`
SComplex constant_in(const SComplex& X, int dir) {
    const int N = X.top();
    SComplex Z(X.cat, Shape({N, N}, {0, 0}, true));
    for (const Index& idx : Z.shape.indices()) Z.set_ob(idx, X.ob(idx[1 - dir]));
    for (const Index& idx : Z.shape.indices())
        for (int a = 0; a < 2; ++a)
            for (int i = 0; i <= idx[a]; ++i) {
                const int lvl = idx[1 - dir];
                if (Z.has_face(idx, a, i)) Z.set_d(idx, a, i, a == dir ? X.cat.id(X.ob(lvl)) : X.d(lvl, i));
                if (Z.has_degen(idx, a, i)) Z.set_s(idx, a, i, a == dir ? X.cat.id(X.ob(lvl)) : X.s(lvl, i));
            }
    return Z;
}

Outcome check_additivity(Rng& rng, const SdcConfig& cfg) {
    SComplex X = random_scomplex(rng, cfg.ring, cfg.levels, cfg.Q, cfg.max_rank);
    SComplex Y = random_scomplex(rng, cfg.ring, cfg.levels, cfg.Q, cfg.max_rank);
    Simple SX = simple_total(X, cfg.Q), SY = simple_total(Y, cfg.Q), SS = simple_total(multi_sum(X, Y), cfg.Q);
    BoundedComplex T = direct_sum(SX.c, SY.c);
    const Ring& r = cfg.ring;
    for (int q = 0; q <= cfg.Q; ++q) {
        if (SS.c.rank(q) != T.rank(q)) return fail("rank mismatch in degree " + std::to_string(q), print_scplx(X) + print_scplx(Y));
    }
    for (int q = 1; q <= cfg.Q; ++q) {
        auto sigma = [&](int k) {
            Matrix P(r, T.rank(k), SS.c.rank(k));
            if (cfg.inject_fault) return Matrix::identity(r, T.rank(k));
            for (const Summand& s : SS.layout[k]) {
                const Summand* x = SX.find(k, s.idx);
                const Summand* y = SY.find(k, s.idx);
                if (x->rank) P.set_block(x->offset, s.offset, Matrix::identity(r, x->rank));
                if (y->rank) P.set_block(SX.c.rank(k) + y->offset, s.offset + x->rank, Matrix::identity(r, y->rank));
            }
            return P;
        };
        if (sigma(q - 1) * SS.c.diff(q) != T.diff(q) * sigma(q))
            return fail("block reordering is not a chain map in degree " + std::to_string(q), print_scplx(X) + print_scplx(Y));
    }
    return {};
}

Outcome check_factorization(Rng& rng, const SdcConfig& cfg) {
    SComplex Z = random_bisimplicial_complex(rng, cfg.ring, cfg.levels, cfg.Q, cfg.max_rank);
    ChainMap mu = mu_impl(Z, cfg.Q, cfg.inject_fault ? MuFault::OddFirst : MuFault::None);
    if (!mu.is_chain_map()) return fail("mu is not a chain map", witness_rows(Z));
    if (!quasi_iso_below(mu, cfg.Q)) return fail("mu is not a quasi-isomorphism below Q", witness_rows(Z));
    ChainMap mu2 = mu_impl(gamma_swap(Z), cfg.Q, cfg.inject_fault ? MuFault::OddFirst : MuFault::None);
    if (!mu2.is_chain_map() || !quasi_iso_below(mu2, cfg.Q)) return fail("mu of the swapped object fails", witness_rows(Z));
    return {};
}

Outcome check_normalization(Rng& rng, const SdcConfig& cfg) {
    BoundedComplex A = random_complex(rng, cfg.ring, Direction::Chain, 0, cfg.Q, cfg.max_rank);
    LambdaData L = lambda(A, cfg.Q);
    ChainMap lam = L.lambda;
    if (cfg.inject_fault)
        for (auto& [q, m] : lam.f)
            if (q % 2 == 1) m = Matrix(m.ring(), m.rows(), m.cols());
    std::string w = print_cplx(A);
    if (!lam.is_chain_map()) return fail("lambda is not a chain map", w);
    if (compose(lam, L.rho) != ChainMap::identity(L.rho.src)) return fail("lambda after rho is not the identity", w);
    if (!quasi_iso_below(lam, cfg.Q)) return fail("lambda is not a quasi-isomorphism below Q", w);
    return {};
}

Outcome check_exactness(Rng& rng, const SdcConfig& cfg) {
    LevelQuis L = random_level_quis(rng, cfg, cfg.Q);
    std::string w = print_scplx(L.X) + print_scplx(L.Y);
    if (!is_map(L.X, L.Y, L.f)) return fail("generated map is not simplicial", w);
    MultiMap<ComplexCat> f = L.f;
    if (cfg.inject_fault)
        for (auto& [idx, m] : f.comp)
            if (idx[0] > 0) m = ChainMap::zero(m.src, m.tgt);
    ChainMap sf = simple_map(L.X, L.Y, f, cfg.Q);
    if (!sf.is_chain_map()) return fail("s(f) is not a chain map", w);
    if (!quasi_iso_below(sf, cfg.Q)) return fail("s(f) is not a quasi-isomorphism below Q", w);
    return {};
}

Outcome check_exactness_prime(Rng& rng, const SdcConfig& cfg) {
    SComplex X = tensor_object(random_acyclic(rng, cfg.ring, 0, cfg.Q, cfg.max_rank), random_linear_sset(rng, cfg.ring, cfg.levels));
    if (uniform(rng, 0, 1))
        X = multi_sum(X, tensor_object(random_acyclic(rng, cfg.ring, 0, cfg.Q, cfg.max_rank),
                                       random_linear_sset(rng, cfg.ring, cfg.levels)));
    SimpleFlags fl;
    if (cfg.inject_fault) fl.max_face = 1;
    Simple S = simple_impl(X, cfg.Q, fl);
    try {
        S.c.validate();
    } catch (const std::exception& e) {
        return fail(std::string("s(X) is not a complex: ") + e.what(), print_scplx(X));
    }
    if (!acyclic_below(S.c, cfg.Q)) return fail("s(X) has homology below Q", print_scplx(X));
    return {};
}

Outcome check_cone(Rng& rng, const SdcConfig& cfg) {
    const int top = std::max(0, cfg.Q - 2);
    BoundedComplex A = random_complex(rng, cfg.ring, Direction::Chain, 0, top, cfg.max_rank);
    ChainMap f;
    if (uniform(rng, 0, 1)) {
        f = random_quasi_iso(rng, A, cfg.max_rank);
        f = truncate_above(f, top);
    } else {
        BoundedComplex B = random_complex(rng, cfg.ring, Direction::Chain, 0, top, cfg.max_rank);
        f = random_chain_map(rng, A, B);
    }
    // keep the classical cone inside the computed range
    bool expected = is_quasi_iso(f);
    ConeInD k = cone_in_D_impl(f, cfg.Q, cfg.inject_fault);
    bool got = acyclic_below(k.c, cfg.Q);
    if (expected != got)
        return fail(std::string("quasi-iso is ") + (expected ? "true" : "false") + " but the cone is " +
                        (got ? "acyclic" : "not acyclic"),
                    print_cmap(f));
    if (auto bad = cone_homotopy_failure(k)) return fail("cone homotopy fails in degree " + std::to_string(*bad), print_cmap(f));
    return {};
}

// the sign (-1)^{n(n+1)/2} on level n identifies s(X) with s(ΥX)
ChainMap upsilon_sign_iso(const Simple& S, const Simple& U, bool literal_sign) {
    ChainMap m(S.c, U.c);
    const Ring& r = S.c.ring;
    for (int q = 0; q < static_cast<int>(S.layout.size()); ++q) {
        Matrix M(r, U.c.rank(q), S.c.rank(q));
        for (const Summand& s : S.layout[q]) {
            if (!s.rank) continue;
            const long long n = s.idx[0];
            int sg = literal_sign ? parity_sign(n) : parity_sign(n * (n + 1) / 2);
            M.set_block(U.find(q, s.idx)->offset, s.offset, Matrix::identity(r, s.rank).scaled(sg));
        }
        m.f[q] = M;
    }
    return m;
}

Outcome check_symmetry(Rng& rng, const SdcConfig& cfg) {
    SComplex X = random_scomplex(rng, cfg.ring, cfg.levels, cfg.Q, cfg.max_rank);
    Simple S = simple_total(X, cfg.Q), U = simple_total(upsilon(X), cfg.Q);
    if (!upsilon_sign_iso(S, U, cfg.inject_fault).is_chain_map()) return fail("sign isomorphism s(X) -> s(ΥX) fails", print_scplx(X));
    LevelQuis L = random_level_quis(rng, cfg, cfg.Q);
    ChainMap sf = simple_map(upsilon(L.X), upsilon(L.Y), L.f, cfg.Q);
    if (!sf.is_chain_map() || !quasi_iso_below(sf, cfg.Q))
        return fail("s(Υf) is not a quasi-isomorphism below Q", print_scplx(L.X) + print_scplx(L.Y));
    return {};
}

Outcome check_compat(Rng& rng, const SdcConfig& cfg) {
    const int Q = cfg.Q;
    SComplex X = random_scomplex(rng, cfg.ring, cfg.levels, Q, cfg.max_rank);
    Simple SX = simple_total(X, Q);
    const Ring& r = cfg.ring;
    const MuFault fault = cfg.inject_fault ? MuFault::FirstZeroOdd : MuFault::None;
    // Δ×X: λ_{sX} keeps the summands with first index 0
    for (int dir = 0; dir < 2; ++dir) {
        SComplex Z = constant_in(X, dir);
        Simple T = simple_total(Z, Q);
        ChainMap mu = mu_impl(Z, Q, fault);
        for (int q = 0; q <= Q; ++q) {
            Matrix P(r, SX.c.rank(q), T.c.rank(q));
            for (const Summand& t : T.layout[q]) {
                if (!t.rank || t.idx[dir] != 0) continue;
                P.set_block(SX.find(q, Index{t.idx[1 - dir]})->offset, t.offset, Matrix::identity(r, t.rank));
            }
            if (P * mu.at(q) != Matrix::identity(r, SX.c.rank(q)))
                return fail(std::string(dir == 0 ? "lambda_{sX} after mu" : "s(lambda_X) after mu") +
                                " is not the identity in degree " + std::to_string(q),
                            print_scplx(X));
        }
    }
    return {};
}

}  // namespace

bool SdcReport::all_pass() const {
    for (auto& t : trials)
        if (!t.pass) return false;
    return true;
}

std::string SdcReport::text(const std::vector<std::string>* witness_names) const {
    std::ostringstream os;
    for (std::size_t i = 0; i < trials.size(); ++i) {
        const auto& t = trials[i];
        os << "TRIAL " << t.k << " " << (t.pass ? "PASS" : "FAIL") << " " << t.axiom;
        if (!t.pass && witness_names && i < witness_names->size() && !(*witness_names)[i].empty())
            os << " " << (*witness_names)[i];
        os << "\n";
    }
    return os.str();
}

const std::vector<std::string>& sdc_axioms() {
    static const std::vector<std::string> a{"3", "4", "5", "6", "6'", "7", "8", "compat"};
    return a;
}

SdcReport sdc_verify(const SdcConfig& cfg) {
    if (cfg.levels < cfg.Q) throw std::invalid_argument("sdc_verify: levels must be at least the truncation Q");
    if (cfg.Q < 2) throw std::invalid_argument("sdc_verify: truncation Q must be at least 2");
    std::vector<std::string> which;
    if (cfg.axiom == "all")
        which = sdc_axioms();
    else if (std::find(sdc_axioms().begin(), sdc_axioms().end(), cfg.axiom) != sdc_axioms().end())
        which = {cfg.axiom};
    else
        throw std::invalid_argument("sdc_verify: unknown axiom '" + cfg.axiom + "'");
    SdcReport rep;
    for (const auto& ax : which) {
        auto pos = std::find(sdc_axioms().begin(), sdc_axioms().end(), ax) - sdc_axioms().begin();
        for (int k = 0; k < cfg.trials; ++k) {
            Rng rng = trial_rng(cfg.seed * 16 + static_cast<std::uint64_t>(pos), static_cast<std::uint64_t>(k));
            Outcome o;
            if (ax == "3")
                o = check_additivity(rng, cfg);
            else if (ax == "4")
                o = check_factorization(rng, cfg);
            else if (ax == "5")
                o = check_normalization(rng, cfg);
            else if (ax == "6")
                o = check_exactness(rng, cfg);
            else if (ax == "6'")
                o = check_exactness_prime(rng, cfg);
            else if (ax == "7")
                o = check_cone(rng, cfg);
            else if (ax == "8")
                o = check_symmetry(rng, cfg);
            else
                o = check_compat(rng, cfg);
            rep.trials.push_back(SdcTrial{k, ax, o.pass, o.reason, o.witness});
        }
    }
    return rep;
}

}  // namespace descent
