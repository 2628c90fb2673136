#include "descent/filtered.hpp"

#include "descent/generators.hpp"

#include <iomanip>
#include <sstream>

namespace descent {

namespace {

Matrix basis_of(const Matrix& m) {
    if (m.cols() == 0) return m;
    return image_basis(m);
}

bool contained(const Matrix& sub, const Matrix& span) {
    if (sub.cols() == 0 || sub.is_zero()) return true;
    return in_span(span, sub);
}

// coordinates of v in a basis (full column rank); v must lie in the span
Matrix coords(const Matrix& basis, const Matrix& v) {
    const Ring& r = v.ring();
    if (v.cols() == 0) return Matrix(r, basis.cols(), 0);
    if (basis.cols() == 0) {
        if (!v.is_zero()) throw std::logic_error("coords: vector outside the span");
        return Matrix(r, 0, v.cols());
    }
    auto x = solve(basis, v);
    if (!x) throw std::logic_error("coords: vector outside the span");
    return *x;
}

Quotient quotient_of(const Matrix& sub_coords, std::size_t n) {
    if (n == 0) return Quotient{Matrix(sub_coords.ring(), 0, 0), Matrix(sub_coords.ring(), 0, 0)};
    return quotient_map(sub_coords, n);
}

void require_field(const Ring& r, const char* what) {
    if (!r.is_field()) throw std::invalid_argument(std::string(what) + ": prime field required");
}

int support_lo(const BoundedComplex& c) { return c.empty_support() ? 0 : c.lo; }
int support_hi(const BoundedComplex& c) { return c.empty_support() ? -1 : c.hi; }

}  // namespace

// ---- filtered complexes ---------------------------------------------------------------------

Matrix FilteredComplex::filt(int k, int q) const {
    const std::size_t n = A.rank(q);
    if (k < klo) return Matrix::identity(A.ring, n);
    if (k > khi) return Matrix(A.ring, n, 0);
    auto it = F.find({k, q});
    if (it != F.end()) return it->second;
    return filt(k + 1, q);
}

std::size_t FilteredComplex::dim(int k, int q) const {
    Matrix m = filt(k, q);
    return m.cols() ? rank(m) : 0;
}

void FilteredComplex::set(int k, int q, const Matrix& span) {
    if (span.rows() != A.rank(q))
        throw std::invalid_argument("filtration: spanning matrix for degree " + std::to_string(q) + " has the wrong height");
    F[{k, q}] = span;
    if (khi < klo) {
        klo = khi = k;
    } else {
        klo = std::min(klo, k);
        khi = std::max(khi, k);
    }
}

void FilteredComplex::validate() const {
    A.validate();
    require_field(A.ring, "filtration");
    if (A.dir != Direction::Cochain) throw std::invalid_argument("filtration: cochain complex expected");
    for (auto& [key, m] : F)
        if (m.rows() != A.rank(key.second))
            throw std::invalid_argument("filtration: F^" + std::to_string(key.first) + " in degree " +
                                        std::to_string(key.second) + " has the wrong height");
    for (int q = support_lo(A); q <= support_hi(A); ++q)
        for (int k = klo; k <= khi + 1; ++k) {
            if (!contained(filt(k, q), filt(k - 1, q)))
                throw std::invalid_argument("filtration: F^" + std::to_string(k) + " not inside F^" + std::to_string(k - 1) +
                                            " in degree " + std::to_string(q));
            if (A.rank(q + 1) && !contained(A.diff(q) * filt(k, q), filt(k, q + 1)))
                throw std::invalid_argument("filtration: d does not preserve F^" + std::to_string(k) + " in degree " +
                                            std::to_string(q));
        }
}

FilteredComplex trivial_filtration(const BoundedComplex& A, int w) {
    FilteredComplex F;
    F.A = A;
    F.klo = F.khi = w;
    for (int q = support_lo(A); q <= support_hi(A); ++q) F.F[{w, q}] = Matrix::identity(A.ring, A.rank(q));
    return F;
}

bool FilteredMap::compatible() const {
    const int lo = std::min(src.klo, tgt.klo), hi = std::max(src.khi, tgt.khi);
    for (int q = std::min(support_lo(src.A), support_lo(tgt.A)); q <= std::max(support_hi(src.A), support_hi(tgt.A)); ++q)
        for (int k = lo; k <= hi; ++k)
            if (!contained(f.at(q) * src.filt(k, q), tgt.filt(k, q))) return false;
    return true;
}

Matrix preimage_in(const Matrix& d, const Matrix& s, const Matrix& w) {
    const Ring& r = s.ring();
    if (s.cols() == 0) return s;
    if (d.rows() == 0) return basis_of(s);
    Matrix ds = d * s;
    Matrix K = w.cols() ? kernel_basis(Matrix::hstack(ds, -w)) : kernel_basis(ds);
    if (K.cols() == 0) return Matrix(r, s.rows(), 0);
    return basis_of(s * K.block(0, 0, s.cols(), K.cols()));
}

// ---- graded pieces ----------------------------------------------------------------------------

namespace {

struct GrData {
    BoundedComplex c;
    std::map<int, Matrix> basis;  // F^k basis per degree
    std::map<int, Quotient> quo;
};

GrData gr_data(const FilteredComplex& F, int k) {
    const Ring& r = F.A.ring;
    GrData g;
    const int lo = support_lo(F.A), hi = support_hi(F.A);
    if (lo > hi) {
        g.c = BoundedComplex::zero(r, Direction::Cochain);
        return g;
    }
    std::vector<std::size_t> rk;
    for (int q = lo; q <= hi; ++q) {
        g.basis[q] = basis_of(F.filt(k, q));
        g.quo[q] = quotient_of(coords(g.basis[q], F.filt(k + 1, q)), g.basis[q].cols());
        rk.push_back(g.quo[q].dim());
    }
    g.c = BoundedComplex(r, Direction::Cochain, lo, hi, rk);
    for (int q = lo; q < hi; ++q)
        g.c.set_diff(q, g.quo[q + 1].Q * coords(g.basis[q + 1], F.A.diff(q) * g.basis[q] * g.quo[q].L));
    return g;
}

}  // namespace

BoundedComplex gr(const FilteredComplex& F, int k) {
    BoundedComplex c = gr_data(F, k).c;
    c.validate();
    return c;
}

ChainMap gr_map(const FilteredMap& f, int k) {
    GrData s = gr_data(f.src, k), t = gr_data(f.tgt, k);
    ChainMap m(s.c, t.c);
    for (auto& [q, bs] : s.basis) {
        auto it = t.basis.find(q);
        if (it == t.basis.end() || !s.c.rank(q) || !t.c.rank(q)) continue;
        m.f[q] = t.quo[q].Q * coords(it->second, f.f.at(q) * bs * s.quo[q].L);
    }
    return m;
}

// ---- spectral sequences ------------------------------------------------------------------------------

std::size_t SpectralPage::dim(int p, int q) const {
    auto it = E.find({p, q});
    return it == E.end() ? 0 : it->second.dim();
}

Matrix SpectralPage::diff(int p, int q) const {
    auto it = d.find({p, q});
    if (it != d.end()) return it->second;
    Ring r = E.empty() ? Ring::prime_field(2) : E.begin()->second.Z.ring();
    return Matrix(r, dim(p + this->r, q - this->r + 1), dim(p, q));
}

std::string SpectralPage::table() const {
    std::ostringstream os;
    os << "E_" << r << ":\n";
    if (plo > phi || nlo > nhi) return os.str();
    const int qlo = nlo - phi, qhi = nhi - plo;
    os << std::setw(5) << "q\\p";
    for (int p = plo; p <= phi; ++p) os << std::setw(5) << p;
    os << "\n";
    for (int q = qhi; q >= qlo; --q) {
        os << std::setw(5) << q;
        for (int p = plo; p <= phi; ++p) os << std::setw(5) << dim(p, q);
        os << "\n";
    }
    return os.str();
}

namespace {

PageEntry page_entry(const FilteredComplex& F, int r, int p, int n) {
    const BoundedComplex& A = F.A;
    Matrix Z = preimage_in(A.diff(n), F.filt(p, n), F.filt(p + r, n + 1));
    Matrix B = span_sum(F.filt(p + 1, n), A.diff(n - 1) * F.filt(p - r + 1, n - 1));
    Matrix BZ = span_intersection(Z, B);
    return PageEntry{Z, quotient_of(coords(Z, BZ), Z.cols())};
}

}  // namespace

SpectralPage spectral_page(const FilteredComplex& F, int r) {
    require_field(F.A.ring, "spectral_page");
    if (r < 0) throw std::invalid_argument("spectral_page: r must be nonnegative");
    SpectralPage P;
    P.r = r;
    P.plo = F.klo;
    P.phi = F.khi;
    P.nlo = support_lo(F.A);
    P.nhi = support_hi(F.A);
    for (int p = P.plo; p <= P.phi; ++p)
        for (int n = P.nlo; n <= P.nhi; ++n) P.E[{p, n - p}] = page_entry(F, r, p, n);
    for (auto& [key, e] : P.E) {
        auto [p, q] = key;
        auto t = P.E.find({p + r, q - r + 1});
        if (t == P.E.end() || e.dim() == 0 || t->second.dim() == 0) continue;
        Matrix img = F.A.diff(p + q) * e.Z * e.quo.L;
        P.d[key] = t->second.quo.Q * coords(t->second.Z, img);
    }
    return P;
}

bool page_squares_to_zero(const SpectralPage& P) {
    for (auto& [key, m] : P.d) {
        auto [p, q] = key;
        Matrix next = P.diff(p + P.r, q - P.r + 1);
        if (next.cols() != m.rows()) return false;
        if (!(next * m).is_zero()) return false;
    }
    return true;
}

bool page_recursion_holds(const FilteredComplex& F, int r) {
    SpectralPage P = spectral_page(F, r), N = spectral_page(F, r + 1);
    if (!page_squares_to_zero(P)) return false;
    for (auto& [key, e] : P.E) {
        auto [p, q] = key;
        Matrix out = P.diff(p, q), in = P.diff(p - r, q + r - 1);
        std::size_t ker = e.dim() - (out.rows() && out.cols() ? rank(out) : 0);
        std::size_t im = in.rows() && in.cols() ? rank(in) : 0;
        if (N.dim(p, q) != ker - im) return false;
    }
    return true;
}

std::map<std::pair<int, int>, Matrix> page_map(const FilteredMap& f, int r, int below) {
    if (!f.compatible()) throw std::invalid_argument("page_map: map does not preserve the filtrations");
    SpectralPage S = spectral_page(f.src, r), T = spectral_page(f.tgt, r);
    std::map<std::pair<int, int>, Matrix> out;
    const Ring& ring = f.src.A.ring;
    const int plo = std::min(S.plo, T.plo), phi = std::max(S.phi, T.phi);
    const int nlo = std::min(S.nlo, T.nlo), nhi = std::max(S.nhi, T.nhi);
    for (int p = plo; p <= phi; ++p)
        for (int n = nlo; n <= std::min(nhi, below - 1); ++n) {
            const int q = n - p;
            auto s = S.E.find({p, q});
            auto t = T.E.find({p, q});
            const std::size_t ds = s == S.E.end() ? 0 : s->second.dim();
            const std::size_t dt = t == T.E.end() ? 0 : t->second.dim();
            if (ds == 0 || dt == 0) {
                out[{p, q}] = Matrix(ring, dt, ds);
                continue;
            }
            out[{p, q}] = t->second.quo.Q * coords(t->second.Z, f.f.at(n) * s->second.Z * s->second.quo.L);
        }
    return out;
}

bool is_Er_iso(const FilteredMap& f, int r, int below) {
    for (auto& [key, m] : page_map(f, r, below)) {
        if (m.rows() != m.cols()) return false;
        if (m.rows() && !inverse(m)) return false;
    }
    return true;
}

bool is_filtered_quasi_iso(const FilteredMap& f, int below) { return is_Er_iso(f, 1, below); }
bool is_E2_iso(const FilteredMap& f, int below) { return is_Er_iso(f, 2, below); }

// ---- décalage -------------------------------------------------------------------------------------

FilteredComplex decalage(const FilteredComplex& F) {
    require_field(F.A.ring, "decalage");
    FilteredComplex D;
    D.A = F.A;
    D.sense = F.sense;
    const int lo = support_lo(F.A), hi = support_hi(F.A);
    if (lo > hi || F.klo > F.khi) return trivial_filtration(F.A, 0);
    D.klo = F.klo - hi - 1;
    D.khi = F.khi - lo;
    for (int n = lo; n <= hi; ++n)
        for (int p = D.klo; p <= D.khi; ++p)
            D.F[{p, n}] = preimage_in(F.A.diff(n), F.filt(p + n, n), F.filt(p + n + 1, n + 1));
    return D;
}

FilteredMap decalage(const FilteredMap& f) { return FilteredMap{decalage(f.src), decalage(f.tgt), f.f}; }

bool decalage_shift_check(const FilteredComplex& F, int r) {
    if (r < 1) throw std::invalid_argument("decalage_shift_check: r >= 1 required");
    FilteredComplex D = decalage(F);
    SpectralPage P = spectral_page(D, r), N = spectral_page(F, r + 1);
    for (int p = D.klo - 1; p <= D.khi + 1; ++p)
        for (int n = support_lo(F.A); n <= support_hi(F.A); ++n)
            if (P.dim(p, n - p) != N.dim(p + n, -p)) return false;
    return true;
}

// ---- double complexes -----------------------------------------------------------------------------

FilteredComplex column_filtration(const DoubleComplex& a) {
    if (a.dir != Direction::Cochain) throw std::invalid_argument("column_filtration: cochain double complex expected");
    FilteredComplex F;
    F.A = tot_double(a);
    F.klo = a.lo[0];
    F.khi = a.hi[0];
    for (int n = support_lo(F.A); n <= support_hi(F.A); ++n) {
        auto lay = tot_layout(a, n);
        for (int p = F.klo; p <= F.khi; ++p) {
            Matrix S(a.ring, F.A.rank(n), 0);
            for (auto& [i, off] : lay) {
                const std::size_t rk = a.rank(i, n - i);
                if (i < p || rk == 0) continue;
                Matrix blk(a.ring, F.A.rank(n), rk);
                blk.set_block(off, 0, Matrix::identity(a.ring, rk));
                S = Matrix::hstack(S, blk);
            }
            F.F[{p, n}] = S;
        }
    }
    return F;
}

DoubleComplex dual_double(const DoubleComplex& a) {
    if (a.dir != Direction::Chain) throw std::invalid_argument("dual_double: chain double complex expected");
    DoubleComplex g;
    g.ring = a.ring;
    g.dir = Direction::Cochain;
    g.lo = a.lo;
    g.hi = a.hi;
    g.ranks = a.ranks;
    for (auto& [k, m] : a.d1) g.d1[{k[0] - 1, k[1]}] = m.transpose();
    for (auto& [k, m] : a.d2) g.d2[{k[0], k[1] - 1}] = m.transpose();
    g.validate();
    return g;
}

// ---- cosimplicial filtered complexes ---------------------------------------------------------------

void CosFiltered::validate() const {
    if (X.var != Variance::Cosimplicial || X.arity() != 1) throw std::invalid_argument("cosimplicial object expected");
    if (static_cast<int>(levels.size()) != X.top() + 1) throw std::invalid_argument("one filtration per level expected");
    for (int i = 0; i <= X.top(); ++i) {
        if (levels[i].A != X.ob(i)) throw std::invalid_argument("filtration level " + std::to_string(i) + " does not match");
        levels[i].validate();
    }
    for (int i = 1; i <= X.top(); ++i)
        for (int k = 0; k <= i; ++k)
            if (!FilteredMap{levels[i - 1], levels[i], X.d(i, k)}.compatible())
                throw std::invalid_argument("coface " + std::to_string(k) + " into level " + std::to_string(i) +
                                            " does not preserve the filtration");
    auto v = check_identities(X);
    if (!v.empty()) throw std::invalid_argument("cosimplicial identities fail: " + v.front().to_string());
}

std::size_t CosSimple::offset(int n, int i) const {
    for (auto& [lvl, off] : layout.at(n))
        if (lvl == i) return off;
    throw std::out_of_range("CosSimple: no summand");
}

CosSimple cosimplicial_simple(const Multi<ComplexCat>& X, int Q) {
    if (X.var != Variance::Cosimplicial || X.arity() != 1) throw std::invalid_argument("simple: cosimplicial object expected");
    if (X.top() < Q) throw std::invalid_argument("simple: insufficient truncation (level " + std::to_string(X.top()) + " < " +
                                                 std::to_string(Q) + ")");
    for (auto& [idx, c] : X.objs) {
        if (c.dir != Direction::Cochain) throw std::invalid_argument("simple: cochain complexes expected");
        if (!c.empty_support() && c.lo < 0) throw std::invalid_argument("simple: complexes must live in degrees >= 0");
    }
    const Ring& r = X.cat.ring;
    CosSimple S;
    std::vector<std::size_t> rk;
    for (int n = 0; n <= Q; ++n) {
        std::vector<std::pair<int, std::size_t>> lay;
        std::size_t off = 0;
        for (int i = 0; i <= n; ++i) {
            lay.push_back({i, off});
            off += X.ob(i).rank(n - i);
        }
        S.layout.push_back(lay);
        rk.push_back(off);
    }
    S.c = BoundedComplex(r, Direction::Cochain, 0, Q, rk);
    for (int n = 0; n < Q; ++n) {
        Matrix D(r, rk[n + 1], rk[n]);
        for (int i = 0; i <= n; ++i) {
            const int j = n - i;
            const std::size_t src = X.ob(i).rank(j);
            if (!src) continue;
            const std::size_t off = S.offset(n, i);
            if (X.ob(i).rank(j + 1)) D.add_block(S.offset(n + 1, i), off, X.ob(i).diff(j));
            if (!X.ob(i + 1).rank(j)) continue;
            Matrix cof(r, X.ob(i + 1).rank(j), src);
            for (int k = 0; k <= i + 1; ++k) {
                Matrix m = X.d(i + 1, k).at(j);
                cof = cof + ((k + j) % 2 ? -m : m);
            }
            D.add_block(S.offset(n + 1, i + 1), off, cof);
        }
        S.c.set_diff(n, D);
    }
    return S;
}

namespace {

FilteredComplex simple_filtration(const CosFiltered& X, int Q, bool diagonal) {
    CosSimple S = cosimplicial_simple(X.X, Q);
    const Ring& r = X.X.cat.ring;
    FilteredComplex F;
    F.A = S.c;
    F.sense = X.levels.empty() ? Sense::Decreasing : X.levels[0].sense;
    bool any = false;
    for (int i = 0; i <= Q; ++i) {
        const auto& L = X.levels[i];
        if (L.klo > L.khi) continue;
        const int lo = L.klo + (diagonal ? i : 0), hi = L.khi + (diagonal ? i : 0);
        F.klo = any ? std::min(F.klo, lo) : lo;
        F.khi = any ? std::max(F.khi, hi) : hi;
        any = true;
    }
    if (!any) return trivial_filtration(S.c, 0);
    for (int n = 0; n <= Q; ++n)
        for (int k = F.klo; k <= F.khi; ++k) {
            Matrix span(r, S.c.rank(n), 0);
            for (int i = 0; i <= n; ++i) {
                Matrix m = X.levels[i].filt(diagonal ? k - i : k, n - i);
                if (!m.cols()) continue;
                Matrix placed(r, S.c.rank(n), m.cols());
                placed.set_block(S.offset(n, i), 0, m);
                span = Matrix::hstack(span, placed);
            }
            F.F[{k, n}] = span;
        }
    return F;
}

}  // namespace

FilteredComplex filtered_simple_ss(const CosFiltered& X, int Q) { return simple_filtration(X, Q, false); }
FilteredComplex filtered_simple_sdelta(const CosFiltered& X, int Q) { return simple_filtration(X, Q, true); }

FilteredMap filtered_simple_map(const CosFiltered& X, const CosFiltered& Y, const MultiMap<ComplexCat>& f, int Q,
                                bool diagonal) {
    FilteredMap m{simple_filtration(X, Q, diagonal), simple_filtration(Y, Q, diagonal), ChainMap()};
    CosSimple SX = cosimplicial_simple(X.X, Q), SY = cosimplicial_simple(Y.X, Q);
    m.f = ChainMap(SX.c, SY.c);
    const Ring& r = X.X.cat.ring;
    for (int n = 0; n <= Q; ++n) {
        Matrix M(r, SY.c.rank(n), SX.c.rank(n));
        for (int i = 0; i <= n; ++i) {
            const ChainMap& c = f.at(Index{i});
            if (c.src.rank(n - i) && c.tgt.rank(n - i)) M.set_block(SY.offset(n, i), SX.offset(n, i), c.at(n - i));
        }
        m.f.f[n] = M;
    }
    return m;
}

CosFiltered levelwise_decalage(const CosFiltered& X) {
    CosFiltered D = X;
    for (auto& L : D.levels) L = decalage(L);
    return D;
}

Multi<ComplexCat> levelwise_gr(const CosFiltered& X, int k) {
    const Ring& r = X.X.cat.ring;
    Multi<ComplexCat> G(ComplexCat{r, Direction::Cochain}, X.X.shape, Variance::Cosimplicial);
    G.semi = X.X.semi;
    const int N = X.X.top();
    for (int i = 0; i <= N; ++i) G.set_ob(i, gr(X.levels[i], k));
    for (int i = 1; i <= N; ++i)
        for (int c = 0; c <= i; ++c) G.set_d(i, c, gr_map(FilteredMap{X.levels[i - 1], X.levels[i], X.X.d(i, c)}, k));
    if (!X.X.semi)
        for (int i = 0; i < N; ++i)
            for (int j = 0; j <= i; ++j) G.set_s(i, j, gr_map(FilteredMap{X.levels[i + 1], X.levels[i], X.X.s(i, j)}, k));
    return G;
}

bool decalage_commutes(const CosFiltered& X, int Q) {
    FilteredComplex a = decalage(filtered_simple_sdelta(X, Q));
    FilteredComplex b = filtered_simple_ss(levelwise_decalage(X), Q);
    const int lo = std::min(a.klo, b.klo) - 1, hi = std::max(a.khi, b.khi) + 1;
    for (int n = 0; n < Q; ++n)
        for (int k = lo; k <= hi; ++k)
            if (!same_span(a.filt(k, n), b.filt(k, n))) return false;
    return true;
}

bool gr_commutes(const CosFiltered& X, int Q, int k) {
    BoundedComplex a = gr(filtered_simple_ss(X, Q), k);
    BoundedComplex b = cosimplicial_simple(levelwise_gr(X, k), Q).c;
    for (int n = 0; n <= Q; ++n)
        if (a.rank(n) != b.rank(n)) return false;
    for (int n = 0; n < Q; ++n)
        if (a.diff(n) != b.diff(n)) return false;
    return true;
}

// ---- random instances -------------------------------------------------------------------------------

namespace {

// basis vectors with weights; pieces e -> e'
struct Elementary {
    int P = 0;
    std::vector<std::vector<int>> weight;                     // per degree
    std::vector<std::pair<std::pair<int, int>, int>> arrows;  // ((degree, index), index in degree+1)

    int add(int q, int w) {
        weight[q].push_back(w);
        return static_cast<int>(weight[q].size()) - 1;
    }
    void piece(int q, int w, int gap) {
        int a = add(q, w);
        if (gap < 0) return;
        int b = add(q + 1, w + gap);
        arrows.push_back({{q, a}, b});
    }
};

Elementary elementary(int P) {
    Elementary e;
    e.P = P;
    e.weight.resize(P + 2);
    return e;
}

void random_pieces(Rng& rng, Elementary& e, int W, std::size_t count, const std::vector<int>& gaps) {
    for (std::size_t t = 0; t < count; ++t) {
        int gap = gaps[uniform(rng, 0, static_cast<int>(gaps.size()) - 1)];
        int q = uniform(rng, 0, gap < 0 ? e.P : std::max(0, e.P - 1));
        int w = uniform(rng, 0, std::max(0, W - std::max(gap, 0)));
        e.piece(q, w, gap);
    }
}

// the complex in the weight basis; `extra` appends another elementary set after it (for maps)
FilteredComplex realize(const Ring& r, const Elementary& e, int W) {
    const int top = e.P + 1;
    std::vector<std::size_t> rk;
    for (int q = 0; q <= top; ++q) rk.push_back(e.weight[q].size());
    FilteredComplex F;
    F.A = BoundedComplex(r, Direction::Cochain, 0, top, rk);
    std::map<int, Matrix> d;
    for (int q = 0; q < top; ++q) d[q] = Matrix(r, rk[q + 1], rk[q]);
    for (auto& [src, b] : e.arrows) d[src.first].set(b, src.second, 1);
    for (int q = 0; q < top; ++q) F.A.set_diff(q, d[q]);
    F.klo = 0;
    F.khi = W;
    for (int q = 0; q <= top; ++q)
        for (int k = 0; k <= W; ++k) {
            std::vector<std::size_t> cols;
            for (std::size_t j = 0; j < e.weight[q].size(); ++j)
                if (e.weight[q][j] >= k) cols.push_back(j);
            F.F[{k, q}] = Matrix::identity(r, rk[q]).columns(cols);
        }
    return F;
}

// transport along a random basis change per degree; returns the isomorphism (old -> new)
ChainMap conjugate(Rng& rng, FilteredComplex& F) {
    BoundedComplex old = F.A;
    std::map<int, Unimodular> u;
    for (int q = old.lo; q <= old.hi; ++q) u[q] = random_unimodular(rng, old.ring, old.rank(q));
    for (int q = old.lo; q < old.hi; ++q) F.A.set_diff(q, u[q + 1].fwd * old.diff(q) * u[q].inv);
    for (auto& [key, m] : F.F) m = u[key.second].fwd * m;
    ChainMap g(old, F.A);
    for (int q = old.lo; q <= old.hi; ++q) g.f[q] = u[q].fwd;
    return g;
}

Elementary concat(const Elementary& a, const Elementary& b) {
    Elementary c = a;
    std::vector<std::size_t> shift(a.weight.size());
    for (std::size_t q = 0; q < a.weight.size(); ++q) {
        shift[q] = a.weight[q].size();
        c.weight[q].insert(c.weight[q].end(), b.weight[q].begin(), b.weight[q].end());
    }
    for (auto& [src, t] : b.arrows)
        c.arrows.push_back({{src.first, src.second + static_cast<int>(shift[src.first])}, t + static_cast<int>(shift[src.first + 1])});
    return c;
}

// cosimplicial module dual to a simplicial one
SMod dual_cosimplicial(const SMod& V) {
    SMod D(V.cat, V.shape, Variance::Cosimplicial);
    D.semi = V.semi;
    D.objs = V.objs;
    for (auto& [key, m] : V.faces) D.faces[key] = m.transpose();
    for (auto& [key, m] : V.degens) D.degens[key] = m.transpose();
    return D;
}

BoundedComplex tensor_cochain(const BoundedComplex& A, std::size_t n) {
    std::vector<std::size_t> rk;
    for (int q = A.lo; q <= A.hi; ++q) rk.push_back(A.rank(q) * n);
    BoundedComplex c(A.ring, A.dir, A.lo, A.hi, rk);
    for (int q = A.lo; q < A.hi; ++q) c.set_diff(q, kron(A.diff(q), Matrix::identity(A.ring, n)));
    return c;
}

CosFiltered tensor_filtered(const FilteredComplex& F, const SMod& V) {
    const Ring& r = F.A.ring;
    const BoundedComplex& A = F.A;
    CosFiltered X;
    X.X = Multi<ComplexCat>(ComplexCat{r, Direction::Cochain}, V.shape, Variance::Cosimplicial);
    X.X.semi = V.semi;
    auto mor = [&](const Matrix& m) {
        ChainMap c(tensor_cochain(A, m.cols()), tensor_cochain(A, m.rows()));
        for (int q = A.lo; q <= A.hi; ++q)
            if (A.rank(q)) c.f[q] = kron(Matrix::identity(r, A.rank(q)), m);
        return c;
    };
    for (auto& [idx, n] : V.objs) X.X.objs[idx] = tensor_cochain(A, n);
    for (auto& [key, m] : V.faces) X.X.faces[key] = mor(m);
    for (auto& [key, m] : V.degens) X.X.degens[key] = mor(m);
    for (int i = 0; i <= V.top(); ++i) {
        FilteredComplex L;
        L.A = X.X.ob(i);
        L.sense = F.sense;
        L.klo = F.klo;
        L.khi = F.khi;
        for (auto& [key, m] : F.F) L.F[key] = kron(m, Matrix::identity(r, V.ob(i)));
        X.levels.push_back(L);
    }
    return X;
}

MultiMap<ComplexCat> tensor_filtered_map(const ChainMap& g, const CosFiltered& X, const CosFiltered& Y, const SMod& V) {
    MultiMap<ComplexCat> m;
    for (auto& [idx, n] : V.objs) {
        ChainMap c(X.X.ob(idx), Y.X.ob(idx));
        for (int q = c.src.lo; q <= c.src.hi; ++q)
            if (c.src.rank(q) && c.tgt.rank(q)) c.f[q] = kron(g.at(q), Matrix::identity(g.src.ring, n));
        m.comp[idx] = c;
    }
    return m;
}

CosFiltered cos_sum(const CosFiltered& a, const CosFiltered& b) {
    CosFiltered s;
    s.X = multi_sum(a.X, b.X);
    for (std::size_t i = 0; i < a.levels.size(); ++i) {
        const auto& x = a.levels[i];
        const auto& y = b.levels[i];
        FilteredComplex L;
        L.A = s.X.ob(static_cast<int>(i));
        L.sense = x.sense;
        L.klo = std::min(x.klo, y.klo);
        L.khi = std::max(x.khi, y.khi);
        for (int q = support_lo(L.A); q <= support_hi(L.A); ++q)
            for (int k = L.klo; k <= L.khi; ++k) L.F[{k, q}] = Matrix::direct_sum(x.filt(k, q), y.filt(k, q));
        s.levels.push_back(L);
    }
    return s;
}

}  // namespace

FilteredComplex random_filtered(Rng& rng, const Ring& r, int P, int W, std::size_t max_pieces) {
    require_field(r, "random_filtered");
    Elementary e = elementary(P);
    std::vector<int> gaps;
    for (int g = -1; g <= W; ++g) gaps.push_back(g);
    random_pieces(rng, e, W, static_cast<std::size_t>(uniform(rng, 1, static_cast<int>(max_pieces))), gaps);
    FilteredComplex F = realize(r, e, W);
    conjugate(rng, F);
    return F;
}

FilteredMap random_filtered_map(Rng& rng, const Ring& r, int P, int W, const std::vector<int>& gaps) {
    require_field(r, "random_filtered_map");
    std::vector<int> all;
    for (int g = -1; g <= W; ++g) all.push_back(g);
    Elementary c = elementary(P), ea = elementary(P), eb = elementary(P);
    random_pieces(rng, c, W, static_cast<std::size_t>(uniform(rng, 1, 3)), all);
    if (!gaps.empty()) {
        random_pieces(rng, ea, W, static_cast<std::size_t>(uniform(rng, 0, 2)), gaps);
        random_pieces(rng, eb, W, static_cast<std::size_t>(uniform(rng, 0, 2)), gaps);
    }
    FilteredComplex A = realize(r, concat(c, ea), W), B = realize(r, concat(c, eb), W);
    ChainMap f0(A.A, B.A);
    for (int q = 0; q <= P + 1; ++q) {
        const std::size_t n = c.weight[q].size();
        Matrix m(r, B.A.rank(q), A.A.rank(q));
        m.set_block(0, 0, Matrix::identity(r, n));
        f0.f[q] = m;
    }
    ChainMap ga = conjugate(rng, A), gb = conjugate(rng, B);
    ChainMap ga_inv(A.A, ga.src);
    for (auto& [q, m] : ga.f) ga_inv.f[q] = *inverse(m);
    f0.src = ga.src;
    f0.tgt = gb.src;
    return FilteredMap{A, B, compose(gb, compose(f0, ga_inv))};
}

CosFiltered random_cos_filtered(Rng& rng, const Ring& r, int N, int P, int W) {
    auto one = [&] {
        SMod V = dual_cosimplicial(random_conjugate(rng, free_linearize(random_small_sset(rng, N), r)).obj);
        return tensor_filtered(random_filtered(rng, r, P, W, 3), V);
    };
    CosFiltered X = one();
    if (uniform(rng, 0, 1)) X = cos_sum(X, one());
    return X;
}

CosFilteredMap random_cos_filtered_map(Rng& rng, const Ring& r, int N, int P, int W, const std::vector<int>& gaps) {
    SMod V = dual_cosimplicial(random_conjugate(rng, free_linearize(random_small_sset(rng, N), r)).obj);
    FilteredMap g = random_filtered_map(rng, r, P, W, gaps);
    CosFilteredMap m;
    m.X = tensor_filtered(g.src, V);
    m.Y = tensor_filtered(g.tgt, V);
    m.f = tensor_filtered_map(g.f, m.X, m.Y, V);
    return m;
}

// ---- .fcplx ----------------------------------------------------------------------------------------

std::string print_fcplx(const FilteredComplex& F) {
    std::ostringstream os;
    write_cplx_block(os, F.A);
    const bool inc = F.sense == Sense::Increasing;
    os << "sense " << (inc ? "increasing" : "decreasing") << "\n";
    for (int t = 0; t <= F.khi - F.klo; ++t) {
        const int k = inc ? F.khi - t : F.klo + t;
        for (int q = support_lo(F.A); q <= support_hi(F.A); ++q) {
            if (!F.A.rank(q)) continue;
            Matrix m = F.filt(k, q);
            os << "filt " << (inc ? -k : k) << " " << q << " cols " << m.cols() << "\n";
            if (m.cols()) write_matrix(os, m);
        }
    }
    return os.str();
}

FilteredComplex parse_fcplx(const std::string& text) {
    Tokens t(text);
    FilteredComplex F;
    F.A = parse_cplx_block(t);
    if (!F.A.ring.is_field()) throw FormatError("fcplx: filtered complexes need a prime field");
    if (F.A.dir != Direction::Cochain) throw FormatError("fcplx: cochain complex expected");
    bool have_sense = false;
    std::map<std::pair<int, int>, Matrix> raw;
    while (!t.done()) {
        if (t.accept("sense")) {
            std::string s = t.next();
            if (s == "decreasing")
                F.sense = Sense::Decreasing;
            else if (s == "increasing")
                F.sense = Sense::Increasing;
            else
                throw FormatError("fcplx: unknown sense '" + s + "'");
            have_sense = true;
        } else if (t.accept("filt")) {
            const int k = static_cast<int>(t.next_int());
            const int q = static_cast<int>(t.next_int());
            t.expect("cols");
            const std::size_t c = t.next_size();
            if (q < support_lo(F.A) || q > support_hi(F.A)) throw FormatError("fcplx: filt degree outside the complex");
            raw[{k, q}] = parse_matrix(t, F.A.ring, F.A.rank(q), c);
        } else {
            throw FormatError("fcplx: unexpected token '" + t.peek() + "'");
        }
    }
    if (!have_sense) throw FormatError("fcplx: missing sense line");
    const bool inc = F.sense == Sense::Increasing;
    for (auto& [key, m] : raw) F.set(inc ? -key.first : key.first, key.second, m);
    if (raw.empty()) F = trivial_filtration(F.A, 0);
    try {
        F.validate();
    } catch (const std::invalid_argument& e) {
        throw FormatError(std::string("fcplx: ") + e.what());
    }
    return F;
}

}  // namespace descent
