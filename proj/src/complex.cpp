#include "descent/complex.hpp"

#include <algorithm>

namespace descent {

namespace {

int sgn(long long k) { return (k & 1) ? -1 : 1; }

}  // namespace

BoundedComplex::BoundedComplex(Ring r, Direction dr, int l, int h, std::vector<std::size_t> rk)
    : ring(r), dir(dr), lo(l), hi(h), ranks(std::move(rk)) {
    if (h < l) {
        lo = 0;
        hi = -1;
        ranks.clear();
    }
    if (ranks.size() != static_cast<std::size_t>(std::max(0, hi - lo + 1)))
        throw std::invalid_argument("BoundedComplex: rank vector does not match support");
    for (int q = lo; q <= hi; ++q) d.push_back(Matrix(ring, rank(next(q)), rank(q)));
}

BoundedComplex BoundedComplex::concentrated(Ring r, Direction dr, int q, std::size_t rk) {
    return BoundedComplex(r, dr, q, q, {rk});
}

Matrix BoundedComplex::diff(int q) const {
    if (q < lo || q > hi) return Matrix(ring, rank(next(q)), rank(q));
    return d[q - lo];
}

void BoundedComplex::set_diff(int q, const Matrix& m) {
    if (q < lo || q > hi) {
        if (m.rows() == 0 && m.cols() == rank(q)) return;
        if (m.is_zero() && m.cols() == rank(q) && m.rows() == rank(next(q))) return;
        throw std::invalid_argument("set_diff: degree outside support");
    }
    if (m.rows() != rank(next(q)) || m.cols() != rank(q))
        throw std::invalid_argument("set_diff: shape mismatch at degree " + std::to_string(q));
    if (m.ring() != ring) throw std::invalid_argument("set_diff: ring mismatch");
    d[q - lo] = m;
}

std::size_t BoundedComplex::total_rank() const {
    std::size_t s = 0;
    for (auto r : ranks) s += r;
    return s;
}

void BoundedComplex::validate() const {
    if (ranks.size() != d.size()) throw std::invalid_argument("complex: inconsistent storage");
    for (int q = lo; q <= hi; ++q) {
        const Matrix& m = d[q - lo];
        if (m.rows() != rank(next(q)) || m.cols() != rank(q))
            throw std::invalid_argument("complex: bad differential shape at degree " + std::to_string(q));
        if (m.ring() != ring) throw std::invalid_argument("complex: ring mismatch at degree " + std::to_string(q));
        if (!(diff(next(q)) * m).is_zero())
            throw std::invalid_argument("complex: d∘d != 0 at degree " + std::to_string(q));
    }
}

bool BoundedComplex::operator==(const BoundedComplex& o) const {
    if (ring != o.ring || dir != o.dir) return false;
    int l = std::min(lo, o.lo), h = std::max(hi, o.hi);
    for (int q = l; q <= h; ++q) {
        if (rank(q) != o.rank(q)) return false;
        if (diff(q) != o.diff(q)) return false;
    }
    return true;
}

BoundedComplex BoundedComplex::widened(int l, int h) const {
    if (empty_support()) {
        BoundedComplex c(ring, dir, l, h, std::vector<std::size_t>(std::max(0, h - l + 1), 0));
        return c;
    }
    l = std::min(l, lo);
    h = std::max(h, hi);
    std::vector<std::size_t> rk;
    for (int q = l; q <= h; ++q) rk.push_back(rank(q));
    BoundedComplex c(ring, dir, l, h, rk);
    for (int q = lo; q <= hi; ++q) c.set_diff(q, diff(q));
    return c;
}

BoundedComplex BoundedComplex::trimmed() const {
    int l = lo, h = hi;
    while (l <= h && rank(l) == 0) ++l;
    while (h >= l && rank(h) == 0) --h;
    std::vector<std::size_t> rk;
    for (int q = l; q <= h; ++q) rk.push_back(rank(q));
    BoundedComplex c(ring, dir, l, h, rk);
    for (int q = l; q <= h; ++q) c.set_diff(q, diff(q));
    return c;
}

HomologyGroup homology(const BoundedComplex& c, int q) { return homology_at(c.diff(c.prev(q)), c.diff(q)); }

bool is_acyclic(const BoundedComplex& c) {
    for (int q = c.lo; q <= c.hi; ++q)
        if (!homology(c, q).is_zero()) return false;
    return true;
}

BoundedComplex direct_sum(const BoundedComplex& a, const BoundedComplex& b) {
    if (a.ring != b.ring || a.dir != b.dir) throw std::invalid_argument("direct_sum: incompatible complexes");
    if (a.empty_support()) return b;
    if (b.empty_support()) return a;
    int l = std::min(a.lo, b.lo), h = std::max(a.hi, b.hi);
    std::vector<std::size_t> rk;
    for (int q = l; q <= h; ++q) rk.push_back(a.rank(q) + b.rank(q));
    BoundedComplex c(a.ring, a.dir, l, h, rk);
    for (int q = l; q <= h; ++q) c.set_diff(q, Matrix::direct_sum(a.diff(q), b.diff(q)));
    return c;
}

BoundedComplex direct_sum(const std::vector<BoundedComplex>& parts) {
    if (parts.empty()) throw std::invalid_argument("direct_sum: empty list");
    BoundedComplex c = parts[0];
    for (std::size_t k = 1; k < parts.size(); ++k) c = direct_sum(c, parts[k]);
    return c;
}

// ---- chain maps ----

ChainMap ChainMap::identity(const BoundedComplex& c) {
    ChainMap m(c, c);
    for (int q = c.lo; q <= c.hi; ++q) m.f[q] = Matrix::identity(c.ring, c.rank(q));
    return m;
}

ChainMap ChainMap::zero(const BoundedComplex& s, const BoundedComplex& t) { return ChainMap(s, t); }

Matrix ChainMap::at(int q) const {
    auto it = f.find(q);
    if (it != f.end()) return it->second;
    return Matrix(src.ring, tgt.rank(q), src.rank(q));
}

void ChainMap::set(int q, const Matrix& m) {
    if (m.rows() != tgt.rank(q) || m.cols() != src.rank(q))
        throw std::invalid_argument("ChainMap::set: shape mismatch at degree " + std::to_string(q));
    f[q] = m;
}

std::optional<int> ChainMap::first_noncommuting_degree() const {
    int l = std::min(src.lo, tgt.lo) - 1, h = std::max(src.hi, tgt.hi) + 1;
    for (int q = l; q <= h; ++q)
        if (tgt.diff(q) * at(q) != at(src.next(q)) * src.diff(q)) return q;
    return std::nullopt;
}

bool ChainMap::is_chain_map() const { return !first_noncommuting_degree().has_value(); }

bool ChainMap::operator==(const ChainMap& o) const {
    if (src != o.src || tgt != o.tgt) return false;
    int l = std::min(src.lo, tgt.lo), h = std::max(src.hi, tgt.hi);
    for (int q = l; q <= h; ++q)
        if (at(q) != o.at(q)) return false;
    return true;
}

ChainMap compose(const ChainMap& g, const ChainMap& f) {
    ChainMap m(f.src, g.tgt);
    for (int q = f.src.lo; q <= f.src.hi; ++q) m.f[q] = g.at(q) * f.at(q);
    return m;
}

ChainMap operator+(const ChainMap& a, const ChainMap& b) {
    ChainMap m(a.src, a.tgt);
    for (int q = a.src.lo; q <= a.src.hi; ++q) m.f[q] = a.at(q) + b.at(q);
    return m;
}

ChainMap operator-(const ChainMap& a, const ChainMap& b) {
    ChainMap m(a.src, a.tgt);
    for (int q = a.src.lo; q <= a.src.hi; ++q) m.f[q] = a.at(q) - b.at(q);
    return m;
}

ChainMap negate(const ChainMap& a) {
    ChainMap m(a.src, a.tgt);
    for (int q = a.src.lo; q <= a.src.hi; ++q) m.f[q] = -a.at(q);
    return m;
}

Matrix Homotopy::at(int q) const {
    auto it = h.find(q);
    if (it != h.end()) return it->second;
    return Matrix(f.src.ring, f.tgt.rank(f.src.prev(q)), f.src.rank(q));
}

HomotopyCheck verify_homotopy(const Homotopy& H) {
    const auto& X = H.f.src;
    const auto& Y = H.f.tgt;
    int l = std::min(X.lo, Y.lo) - 1, hi = std::max(X.hi, Y.hi) + 1;
    for (int q = l; q <= hi; ++q) {
        Matrix lhs = Y.diff(X.prev(q)) * H.at(q) + H.at(X.next(q)) * X.diff(q);
        if (lhs != H.f.at(q) - H.g.at(q)) return {false, q};
    }
    return {};
}

// ---- double complexes ----

std::size_t DoubleComplex::rank(int i, int j) const {
    auto it = ranks.find({i, j});
    return it == ranks.end() ? 0 : it->second;
}

Matrix DoubleComplex::diff(int which, int i, int j) const {
    int s = dir == Direction::Chain ? -1 : 1;
    const auto& m = which == 1 ? d1 : d2;
    auto it = m.find({i, j});
    if (it != m.end()) return it->second;
    std::size_t tr = which == 1 ? rank(i + s, j) : rank(i, j + s);
    return Matrix(ring, tr, rank(i, j));
}

void DoubleComplex::validate() const {
    int s = dir == Direction::Chain ? -1 : 1;
    for (int i = lo[0]; i <= hi[0]; ++i)
        for (int j = lo[1]; j <= hi[1]; ++j) {
            Matrix a = diff(1, i, j), b = diff(2, i, j);
            if (a.cols() != rank(i, j) || a.rows() != rank(i + s, j) || b.cols() != rank(i, j) ||
                b.rows() != rank(i, j + s))
                throw std::invalid_argument("double complex: bad shape at (" + std::to_string(i) + "," +
                                            std::to_string(j) + ")");
            if (!(diff(1, i + s, j) * a).is_zero()) throw std::invalid_argument("double complex: d1 d1 != 0");
            if (!(diff(2, i, j + s) * b).is_zero()) throw std::invalid_argument("double complex: d2 d2 != 0");
            if (diff(2, i + s, j) * a != diff(1, i, j + s) * b)
                throw std::invalid_argument("double complex: d1 and d2 do not commute");
        }
}

std::vector<std::pair<int, std::size_t>> tot_layout(const DoubleComplex& a, int n) {
    std::vector<std::pair<int, std::size_t>> v;
    std::size_t off = 0;
    for (int i = a.lo[0]; i <= a.hi[0]; ++i) {
        int j = n - i;
        if (j < a.lo[1] || j > a.hi[1]) continue;
        v.push_back({i, off});
        off += a.rank(i, j);
    }
    return v;
}

namespace {

std::size_t layout_size(const DoubleComplex& a, int n) {
    std::size_t s = 0;
    for (auto& [i, off] : tot_layout(a, n)) s += a.rank(i, n - i);
    return s;
}

std::size_t layout_offset(const DoubleComplex& a, int n, int i) {
    for (auto& [k, off] : tot_layout(a, n))
        if (k == i) return off;
    throw std::logic_error("tot layout: missing summand");
}

bool in_window(const DoubleComplex& a, int i, int j) {
    return i >= a.lo[0] && i <= a.hi[0] && j >= a.lo[1] && j <= a.hi[1];
}

}  // namespace

BoundedComplex tot_double(const DoubleComplex& a) {
    int s = a.dir == Direction::Chain ? -1 : 1;
    int l = a.lo[0] + a.lo[1], h = a.hi[0] + a.hi[1];
    std::vector<std::size_t> rk;
    for (int n = l; n <= h; ++n) rk.push_back(layout_size(a, n));
    BoundedComplex t(a.ring, a.dir, l, h, rk);
    for (int n = l; n <= h; ++n) {
        Matrix D(a.ring, t.rank(n + s), t.rank(n));
        for (auto& [i, off] : tot_layout(a, n)) {
            int j = n - i;
            if (a.rank(i, j) == 0) continue;
            if (in_window(a, i + s, j) && a.rank(i + s, j))
                D.add_block(layout_offset(a, n + s, i + s), off, a.diff(1, i, j).scaled(sgn(j)));
            if (in_window(a, i, j + s) && a.rank(i, j + s))
                D.add_block(layout_offset(a, n + s, i), off, a.diff(2, i, j));
        }
        t.set_diff(n, D);
    }
    return t;
}

DoubleComplex gamma_swap(const DoubleComplex& a) {
    DoubleComplex g;
    g.ring = a.ring;
    g.dir = a.dir;
    g.lo = {a.lo[1], a.lo[0]};
    g.hi = {a.hi[1], a.hi[0]};
    for (auto& [k, r] : a.ranks) g.ranks[{k[1], k[0]}] = r;
    for (auto& [k, m] : a.d1) g.d2[{k[1], k[0]}] = m;
    for (auto& [k, m] : a.d2) g.d1[{k[1], k[0]}] = m;
    return g;
}

ChainMap tot_swap_iso(const DoubleComplex& a) {
    DoubleComplex g = gamma_swap(a);
    BoundedComplex s = tot_double(a), t = tot_double(g);
    ChainMap m(s, t);
    for (int n = s.lo; n <= s.hi; ++n) {
        Matrix M(a.ring, t.rank(n), s.rank(n));
        for (auto& [i, off] : tot_layout(a, n)) {
            int j = n - i;
            std::size_t r = a.rank(i, j);
            if (!r) continue;
            M.set_block(layout_offset(g, n, j), off, Matrix::identity(a.ring, r).scaled(sgn((long long)i * j)));
        }
        m.set(n, M);
    }
    return m;
}

// ---- triple complexes ----

std::size_t TripleComplex::rank(const std::array<int, 3>& i) const {
    auto it = ranks.find(i);
    return it == ranks.end() ? 0 : it->second;
}

Matrix TripleComplex::diff(int a, const std::array<int, 3>& i) const {
    int s = dir == Direction::Chain ? -1 : 1;
    auto it = d[a - 1].find(i);
    if (it != d[a - 1].end()) return it->second;
    auto t = i;
    t[a - 1] += s;
    return Matrix(ring, rank(t), rank(i));
}

void TripleComplex::validate() const {
    int s = dir == Direction::Chain ? -1 : 1;
    for (int x = lo[0]; x <= hi[0]; ++x)
        for (int y = lo[1]; y <= hi[1]; ++y)
            for (int z = lo[2]; z <= hi[2]; ++z) {
                std::array<int, 3> i{x, y, z};
                for (int a = 1; a <= 3; ++a) {
                    auto t = i;
                    t[a - 1] += s;
                    Matrix m = diff(a, i);
                    if (m.cols() != rank(i) || m.rows() != rank(t))
                        throw std::invalid_argument("triple complex: bad shape");
                    if (!(diff(a, t) * m).is_zero()) throw std::invalid_argument("triple complex: d d != 0");
                    for (int b = a + 1; b <= 3; ++b) {
                        auto u = i;
                        u[b - 1] += s;
                        auto tu = t;
                        tu[b - 1] += s;
                        if (diff(b, t) * m != diff(a, u) * diff(b, i))
                            throw std::invalid_argument("triple complex: differentials do not commute");
                    }
                }
            }
}

namespace {

// total over the pair (a, b) of indices; the remaining index c becomes q.
// sign on d^a is (-1)^{i_b}.  Summands ordered by i_a ascending.
DoubleComplex partial_tot(const TripleComplex& A, int a, int b, int c) {
    DoubleComplex D;
    D.ring = A.ring;
    D.dir = A.dir;
    int s = A.dir == Direction::Chain ? -1 : 1;
    D.lo = {A.lo[a] + A.lo[b], A.lo[c]};
    D.hi = {A.hi[a] + A.hi[b], A.hi[c]};
    auto idx = [&](int ia, int ib, int ic) {
        std::array<int, 3> i{};
        i[a] = ia;
        i[b] = ib;
        i[c] = ic;
        return i;
    };
    auto offset = [&](int p, int q, int ia) {
        std::size_t off = 0;
        for (int x = A.lo[a]; x < ia; ++x) {
            int y = p - x;
            if (y < A.lo[b] || y > A.hi[b]) continue;
            off += A.rank(idx(x, y, q));
        }
        return off;
    };
    auto size = [&](int p, int q) {
        std::size_t off = 0;
        for (int x = A.lo[a]; x <= A.hi[a]; ++x) {
            int y = p - x;
            if (y < A.lo[b] || y > A.hi[b]) continue;
            off += A.rank(idx(x, y, q));
        }
        return off;
    };
    for (int p = D.lo[0]; p <= D.hi[0]; ++p)
        for (int q = D.lo[1]; q <= D.hi[1]; ++q) D.ranks[{p, q}] = size(p, q);
    for (int p = D.lo[0]; p <= D.hi[0]; ++p)
        for (int q = D.lo[1]; q <= D.hi[1]; ++q) {
            Matrix dp(A.ring, D.rank(p + s, q), D.rank(p, q));
            Matrix dq(A.ring, D.rank(p, q + s), D.rank(p, q));
            for (int x = A.lo[a]; x <= A.hi[a]; ++x) {
                int y = p - x;
                if (y < A.lo[b] || y > A.hi[b]) continue;
                auto i = idx(x, y, q);
                if (!A.rank(i)) continue;
                std::size_t off = offset(p, q, x);
                if (x + s >= A.lo[a] && x + s <= A.hi[a] && A.rank(idx(x + s, y, q)))
                    dp.add_block(offset(p + s, q, x + s), off, A.diff(a + 1, i).scaled(sgn(y)));
                if (y + s >= A.lo[b] && y + s <= A.hi[b] && A.rank(idx(x, y + s, q)))
                    dp.add_block(offset(p + s, q, x), off, A.diff(b + 1, i));
                if (q + s >= A.lo[c] && q + s <= A.hi[c] && A.rank(idx(x, y, q + s)))
                    dq.add_block(offset(p, q + s, x), off, A.diff(c + 1, i));
            }
            D.d1[{p, q}] = dp;
            D.d2[{p, q}] = dq;
        }
    return D;
}

// offset of A_i inside tot(partial_tot(A, a, b, c))_n
std::size_t nested_offset(const TripleComplex& A, int a, int b, int c, const std::array<int, 3>& i) {
    int n = i[0] + i[1] + i[2];
    std::size_t off = 0;
    int pi = i[a] + i[b];
    for (int p = A.lo[a] + A.lo[b]; p <= A.hi[a] + A.hi[b]; ++p) {
        int q = n - p;
        if (q < A.lo[c] || q > A.hi[c]) continue;
        for (int x = A.lo[a]; x <= A.hi[a]; ++x) {
            int y = p - x;
            if (y < A.lo[b] || y > A.hi[b]) continue;
            if (p == pi && x == i[a]) return off;
            std::array<int, 3> j{};
            j[a] = x;
            j[b] = y;
            j[c] = q;
            off += A.rank(j);
        }
    }
    throw std::logic_error("nested_offset: summand not found");
}

}  // namespace

DoubleComplex tot_triple_12(const TripleComplex& a) { return partial_tot(a, 0, 1, 2); }
DoubleComplex tot_triple_23(const TripleComplex& a) { return partial_tot(a, 1, 2, 0); }
DoubleComplex tot_triple_13(const TripleComplex& a) { return partial_tot(a, 0, 2, 1); }

ChainMap triple_coherence(const TripleComplex& A, int which) {
    if (which != 23 && which != 13) throw std::invalid_argument("triple_coherence: which must be 23 or 13");
    BoundedComplex s = tot_double(tot_triple_12(A));
    BoundedComplex t = tot_double(which == 23 ? tot_triple_23(A) : tot_triple_13(A));
    int ta = which == 23 ? 1 : 0, tb = 2, tc = which == 23 ? 0 : 1;
    ChainMap m(s, t);
    for (int n = s.lo; n <= s.hi; ++n) m.f[n] = Matrix(A.ring, t.rank(n), s.rank(n));
    for (int x = A.lo[0]; x <= A.hi[0]; ++x)
        for (int y = A.lo[1]; y <= A.hi[1]; ++y)
            for (int z = A.lo[2]; z <= A.hi[2]; ++z) {
                std::array<int, 3> i{x, y, z};
                std::size_t r = A.rank(i);
                if (!r) continue;
                long long e = which == 23 ? (long long)x * y + (long long)x * z : (long long)y * z;
                int n = x + y + z;
                m.f[n].set_block(nested_offset(A, ta, tb, tc, i), nested_offset(A, 0, 1, 2, i),
                                 Matrix::identity(A.ring, r).scaled(sgn(e)));
            }
    return m;
}

// ---- maps of double complexes ----

Matrix DoubleMap::at(int i, int j) const {
    auto it = f.find({i, j});
    if (it != f.end()) return it->second;
    return Matrix(src.ring, tgt.rank(i, j), src.rank(i, j));
}

ChainMap tot_map(const DoubleMap& m) {
    BoundedComplex s = tot_double(m.src), t = tot_double(m.tgt);
    ChainMap c(s, t);
    for (int n = s.lo; n <= s.hi; ++n) {
        Matrix M(s.ring, t.rank(n), s.rank(n));
        for (auto& [i, off] : tot_layout(m.src, n)) {
            int j = n - i;
            if (!m.src.rank(i, j) || !in_window(m.tgt, i, j) || !m.tgt.rank(i, j)) continue;
            M.set_block(layout_offset(m.tgt, n, i), off, m.at(i, j));
        }
        c.set(n, M);
    }
    return c;
}

DoubleComplex cone_double(const DoubleMap& m) {
    const DoubleComplex& X = m.src;
    const DoubleComplex& Y = m.tgt;
    int s = X.dir == Direction::Chain ? -1 : 1;
    DoubleComplex C;
    C.ring = X.ring;
    C.dir = X.dir;
    C.lo = {std::min(Y.lo[0], X.lo[0] - s), std::min(X.lo[1], Y.lo[1])};
    C.hi = {std::max(Y.hi[0], X.hi[0] - s), std::max(X.hi[1], Y.hi[1])};
    // c_{i,j} = Y_{i,j} + X_{i+s,j}
    for (int i = C.lo[0]; i <= C.hi[0]; ++i)
        for (int j = C.lo[1]; j <= C.hi[1]; ++j) C.ranks[{i, j}] = Y.rank(i, j) + X.rank(i + s, j);
    for (int i = C.lo[0]; i <= C.hi[0]; ++i)
        for (int j = C.lo[1]; j <= C.hi[1]; ++j) {
            std::size_t y = Y.rank(i, j), x = X.rank(i + s, j);
            Matrix a(C.ring, C.rank(i + s, j), y + x);
            std::size_t y1 = Y.rank(i + s, j);
            a.set_block(0, 0, Y.diff(1, i, j));
            a.set_block(0, y, m.at(i + s, j));
            a.set_block(y1, y, -X.diff(1, i + s, j));
            Matrix b(C.ring, C.rank(i, j + s), y + x);
            std::size_t y2 = Y.rank(i, j + s);
            b.set_block(0, 0, Y.diff(2, i, j));
            b.set_block(y2, y, X.diff(2, i + s, j));
            C.d1[{i, j}] = a;
            C.d2[{i, j}] = b;
        }
    return C;
}

Homotopy tot_homotopy(const DoubleHomotopy& H) {
    const DoubleComplex& X = H.f.src;
    const DoubleComplex& Y = H.f.tgt;
    int s = X.dir == Direction::Chain ? -1 : 1;
    Homotopy h;
    h.f = tot_map(H.f);
    h.g = tot_map(H.g);
    const BoundedComplex& tx = h.f.src;
    const BoundedComplex& ty = h.f.tgt;
    for (int n = tx.lo; n <= tx.hi; ++n) {
        Matrix M(X.ring, ty.rank(n - s), tx.rank(n));
        for (auto& [i, off] : tot_layout(X, n)) {
            int j = n - i;
            auto it = H.h.find({i, j});
            if (it == H.h.end() || !X.rank(i, j) || !in_window(Y, i - s, j) || !Y.rank(i - s, j)) continue;
            M.set_block(layout_offset(Y, n - s, i - s), off, it->second.scaled(sgn(j)));
        }
        h.h[n] = M;
    }
    return h;
}

// ---- cones, paths, shifts ----

Cone cone(const ChainMap& f) {
    const BoundedComplex& X = f.src;
    const BoundedComplex& Y = f.tgt;
    if (X.dir != Direction::Chain || Y.dir != Direction::Chain)
        throw std::invalid_argument("cone: chain complexes required (regrade cochain input)");
    int l = std::min(Y.empty_support() ? X.lo + 1 : Y.lo, X.empty_support() ? Y.lo : X.lo + 1);
    int h = std::max(Y.empty_support() ? X.hi + 1 : Y.hi, X.empty_support() ? Y.hi : X.hi + 1);
    if (X.empty_support() && Y.empty_support()) {
        l = 0;
        h = -1;
    }
    std::vector<std::size_t> rk;
    for (int n = l; n <= h; ++n) rk.push_back(Y.rank(n) + X.rank(n - 1));
    Cone c;
    c.c = BoundedComplex(X.ring, Direction::Chain, l, h, rk);
    for (int n = l; n <= h; ++n) {
        Matrix D(X.ring, c.c.rank(n - 1), c.c.rank(n));
        std::size_t y = Y.rank(n), y1 = Y.rank(n - 1);
        D.set_block(0, 0, Y.diff(n));
        D.set_block(0, y, f.at(n - 1));
        D.set_block(y1, y, -X.diff(n - 1));
        c.c.set_diff(n, D);
    }
    BoundedComplex X1 = shift(X, 1);
    c.incl = ChainMap(Y, c.c);
    c.proj = ChainMap(c.c, X1);
    for (int n = std::min(l, Y.lo); n <= std::max(h, Y.hi); ++n) {
        if (Y.rank(n)) {
            Matrix I(X.ring, c.c.rank(n), Y.rank(n));
            I.set_block(0, 0, Matrix::identity(X.ring, Y.rank(n)));
            c.incl.set(n, I);
        }
        if (X.rank(n - 1)) {
            Matrix P(X.ring, X.rank(n - 1), c.c.rank(n));
            P.set_block(0, Y.rank(n), Matrix::identity(X.ring, X.rank(n - 1)));
            c.proj.set(n, P);
        }
    }
    return c;
}

Path path_r(const ChainMap& f, const ChainMap& g) {
    const BoundedComplex& A = f.src;
    const BoundedComplex& B = f.tgt;
    const BoundedComplex& C = g.src;
    if (A.dir != Direction::Cochain || B.dir != Direction::Cochain || C.dir != Direction::Cochain)
        throw std::invalid_argument("path_r: cochain complexes required");
    if (g.tgt != B) throw std::invalid_argument("path_r: maps must share their target");
    std::vector<int> ends;
    auto add = [&](const BoundedComplex& x, int shift_by) {
        if (!x.empty_support()) {
            ends.push_back(x.lo + shift_by);
            ends.push_back(x.hi + shift_by);
        }
    };
    add(A, 0);
    add(C, 0);
    add(B, 1);  // B^{n-1} sits in degree n
    Path P;
    if (ends.empty()) {
        P.p = BoundedComplex::zero(A.ring, Direction::Cochain);
        P.proj_a = ChainMap(P.p, A);
        P.proj_c = ChainMap(P.p, C);
        return P;
    }
    int l = *std::min_element(ends.begin(), ends.end()), h = *std::max_element(ends.begin(), ends.end());
    std::vector<std::size_t> rk;
    for (int n = l; n <= h; ++n) rk.push_back(A.rank(n) + B.rank(n - 1) + C.rank(n));
    P.p = BoundedComplex(A.ring, Direction::Cochain, l, h, rk);
    for (int n = l; n <= h; ++n) {
        std::size_t a = A.rank(n), b = B.rank(n - 1);
        std::size_t a1 = A.rank(n + 1), b1 = B.rank(n);
        Matrix D(A.ring, P.p.rank(n + 1), P.p.rank(n));
        D.set_block(0, 0, A.diff(n));
        D.set_block(a1, 0, f.at(n));
        D.set_block(a1, a, -B.diff(n - 1));
        D.set_block(a1, a + b, -g.at(n));
        D.set_block(a1 + b1, a + b, C.diff(n));
        P.p.set_diff(n, D);
    }
    P.proj_a = ChainMap(P.p, A);
    P.proj_c = ChainMap(P.p, C);
    for (int n = l; n <= h; ++n) {
        std::size_t a = A.rank(n), b = B.rank(n - 1), c = C.rank(n);
        if (a) {
            Matrix M(A.ring, a, P.p.rank(n));
            M.set_block(0, 0, Matrix::identity(A.ring, a));
            P.proj_a.set(n, M);
        }
        if (c) {
            Matrix M(A.ring, c, P.p.rank(n));
            M.set_block(0, a + b, Matrix::identity(A.ring, c));
            P.proj_c.set(n, M);
        }
    }
    return P;
}

BoundedComplex shift(const BoundedComplex& x, int k) {
    if (x.empty_support()) return x;
    // chain: X[k]_n = X_{n-k};  cochain: X[k]^n = X^{n+k}
    int t = x.dir == Direction::Chain ? k : -k;
    BoundedComplex s(x.ring, x.dir, x.lo + t, x.hi + t, x.ranks);
    for (int q = x.lo; q <= x.hi; ++q) s.set_diff(q + t, x.diff(q).scaled(sgn(k)));
    return s;
}

ChainMap shift_map(const ChainMap& f, int k) {
    ChainMap m(shift(f.src, k), shift(f.tgt, k));
    int t = f.src.dir == Direction::Chain ? k : -k;
    for (auto& [q, M] : f.f) m.f[q + t] = M;
    return m;
}

BoundedComplex regrade(const BoundedComplex& x) {
    Direction nd = x.dir == Direction::Chain ? Direction::Cochain : Direction::Chain;
    if (x.empty_support()) return BoundedComplex::zero(x.ring, nd);
    std::vector<std::size_t> rk;
    for (int q = -x.hi; q <= -x.lo; ++q) rk.push_back(x.rank(-q));
    BoundedComplex r(x.ring, nd, -x.hi, -x.lo, rk);
    for (int q = -x.hi; q <= -x.lo; ++q) r.set_diff(q, x.diff(-q));
    return r;
}

bool is_quasi_iso(const ChainMap& f) {
    if (f.src.dir == Direction::Chain) return is_acyclic(cone(f).c);
    ChainMap g(regrade(f.src), regrade(f.tgt));
    for (auto& [q, M] : f.f) g.f[-q] = M;
    return is_acyclic(cone(g).c);
}

}  // namespace descent
