#include "descent/random.hpp"

namespace descent {

Rng trial_rng(std::uint64_t seed, std::uint64_t trial) {
    std::seed_seq seq{std::uint32_t(seed), std::uint32_t(seed >> 32), std::uint32_t(trial), std::uint32_t(trial >> 32),
                      0x5eedu};
    return Rng(seq);
}

int uniform(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

Matrix random_matrix(Rng& rng, const Ring& r, std::size_t rows, std::size_t cols, int lo, int hi) {
    Matrix m(r, rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) m.set(i, j, uniform(rng, lo, hi));
    return m;
}

namespace {

Matrix random_low_rank(Rng& rng, const Ring& r, std::size_t rows, std::size_t cols) {
    if (rows == 0 || cols == 0) return Matrix(r, rows, cols);
    int mode = uniform(rng, 0, 2);
    if (mode == 0) {
        std::size_t k = uniform(rng, 0, static_cast<int>(std::min(rows, cols)));
        return random_matrix(rng, r, rows, k, -2, 2) * random_matrix(rng, r, k, cols, -2, 2);
    }
    return random_matrix(rng, r, rows, cols, -2, 2);
}

}  // namespace

BoundedComplex random_complex(Rng& rng, const Ring& r, Direction dir, int lo, int hi, std::size_t max_rank) {
    if (dir == Direction::Cochain) return regrade(random_complex(rng, r, Direction::Chain, -hi, -lo, max_rank));
    std::vector<std::size_t> rk;
    for (int q = lo; q <= hi; ++q) rk.push_back(uniform(rng, 0, static_cast<int>(max_rank)));
    BoundedComplex c(r, Direction::Chain, lo, hi, rk);
    for (int q = lo + 1; q <= hi; ++q) {
        Matrix prev = c.diff(q - 1);
        Matrix K = prev.rows() == 0 ? Matrix::identity(r, c.rank(q - 1)) : kernel_basis(prev);
        c.set_diff(q, K * random_low_rank(rng, r, K.cols(), c.rank(q)));
    }
    return c;
}

ChainMap random_chain_map(Rng& rng, const BoundedComplex& x, const BoundedComplex& y) {
    const Ring R = x.ring;
    ChainMap f(x, y);
    std::vector<int> degs;
    std::map<int, std::size_t> off;
    std::size_t unknowns = 0;
    for (int q = x.lo; q <= x.hi; ++q)
        if (x.rank(q) && y.rank(q)) {
            degs.push_back(q);
            off[q] = unknowns;
            unknowns += x.rank(q) * y.rank(q);
        }
    if (unknowns == 0) return f;
    // rows: one per entry of d_Y f_q - f_{q'} d_X
    std::vector<std::vector<std::pair<std::size_t, Int>>> rows;
    for (int q = x.lo - 1; q <= x.hi + 1; ++q) {
        int t = x.next(q);
        std::size_t ry = y.rank(t), cx = x.rank(q);
        if (!ry || !cx) continue;
        Matrix dY = y.diff(q), dX = x.diff(q);
        for (std::size_t i = 0; i < ry; ++i)
            for (std::size_t j = 0; j < cx; ++j) {
                std::vector<std::pair<std::size_t, Int>> row;
                if (off.count(q))
                    for (std::size_t k = 0; k < y.rank(q); ++k)
                        if (dY(i, k) != 0) row.push_back({off[q] + k * cx + j, dY(i, k)});
                if (off.count(t))
                    for (std::size_t k = 0; k < x.rank(t); ++k)
                        if (dX(k, j) != 0) row.push_back({off[t] + i * x.rank(t) + k, -dX(k, j)});
                rows.push_back(row);
            }
    }
    Matrix L(R, rows.size(), unknowns);
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (auto& [c, v] : rows[i]) L.add_to(i, c, v);
    Matrix K = rows.empty() ? Matrix::identity(R, unknowns) : kernel_basis(L);
    Matrix coeff = random_matrix(rng, R, K.cols(), 1, -2, 2);
    Matrix sol = K * coeff;
    for (int q : degs) {
        Matrix m(R, y.rank(q), x.rank(q));
        for (std::size_t i = 0; i < y.rank(q); ++i)
            for (std::size_t j = 0; j < x.rank(q); ++j) m.set(i, j, sol(off[q] + i * x.rank(q) + j, 0));
        f.set(q, m);
    }
    return f;
}

ChainMap random_homotopic(Rng& rng, const ChainMap& f, Homotopy* witness) {
    const auto& X = f.src;
    const auto& Y = f.tgt;
    Homotopy h;
    for (int q = X.lo; q <= X.hi; ++q) {
        std::size_t t = Y.rank(X.prev(q));
        if (t && X.rank(q)) h.h[q] = random_matrix(rng, X.ring, t, X.rank(q), -2, 2);
    }
    h.f = f;
    h.g = f;
    // g = f - (d h + h d)
    for (int q = X.lo; q <= X.hi; ++q) {
        Matrix dh = Y.diff(X.prev(q)) * h.at(q) + h.at(X.next(q)) * X.diff(q);
        h.g.set(q, f.at(q) - dh);
    }
    if (witness) *witness = h;
    return h.g;
}

DoubleComplex tensor_double(const BoundedComplex& c, const BoundedComplex& d) {
    DoubleComplex a;
    a.ring = c.ring;
    a.dir = c.dir;
    a.lo = {c.lo, d.lo};
    a.hi = {c.hi, d.hi};
    for (int i = c.lo; i <= c.hi; ++i)
        for (int j = d.lo; j <= d.hi; ++j) a.ranks[{i, j}] = c.rank(i) * d.rank(j);
    for (int i = c.lo; i <= c.hi; ++i)
        for (int j = d.lo; j <= d.hi; ++j) {
            a.d1[{i, j}] = kron(c.diff(i), Matrix::identity(c.ring, d.rank(j)));
            a.d2[{i, j}] = kron(Matrix::identity(c.ring, c.rank(i)), d.diff(j));
        }
    return a;
}

DoubleComplex double_sum(const DoubleComplex& a, const DoubleComplex& b) {
    DoubleComplex s;
    s.ring = a.ring;
    s.dir = a.dir;
    s.lo = {std::min(a.lo[0], b.lo[0]), std::min(a.lo[1], b.lo[1])};
    s.hi = {std::max(a.hi[0], b.hi[0]), std::max(a.hi[1], b.hi[1])};
    for (int i = s.lo[0]; i <= s.hi[0]; ++i)
        for (int j = s.lo[1]; j <= s.hi[1]; ++j) s.ranks[{i, j}] = a.rank(i, j) + b.rank(i, j);
    for (int i = s.lo[0]; i <= s.hi[0]; ++i)
        for (int j = s.lo[1]; j <= s.hi[1]; ++j) {
            s.d1[{i, j}] = Matrix::direct_sum(a.diff(1, i, j), b.diff(1, i, j));
            s.d2[{i, j}] = Matrix::direct_sum(a.diff(2, i, j), b.diff(2, i, j));
        }
    return s;
}

DoubleComplex random_double_complex(Rng& rng, const Ring& r, int lo1, int hi1, int lo2, int hi2,
                                    std::size_t max_rank) {
    std::size_t half = std::max<std::size_t>(1, max_rank / 2);
    DoubleComplex a = tensor_double(random_complex(rng, r, Direction::Chain, lo1, hi1, half),
                                    random_complex(rng, r, Direction::Chain, lo2, hi2, 1 + max_rank % 2));
    DoubleComplex b = tensor_double(random_complex(rng, r, Direction::Chain, lo1, hi1, 1),
                                    random_complex(rng, r, Direction::Chain, lo2, hi2, half));
    return double_sum(a, b);
}

TripleComplex random_triple_complex(Rng& rng, const Ring& r, std::size_t max_rank) {
    TripleComplex t;
    t.ring = r;
    t.lo = {0, 0, 0};
    t.hi = {2, 2, 2};
    std::vector<std::array<BoundedComplex, 3>> pieces;
    for (int k = 0; k < 2; ++k)
        pieces.push_back({random_complex(rng, r, Direction::Chain, 0, 2, std::max<std::size_t>(1, max_rank / 2)),
                          random_complex(rng, r, Direction::Chain, 0, 2, 1),
                          random_complex(rng, r, Direction::Chain, 0, 2, std::max<std::size_t>(1, max_rank / 2))});
    for (int x = 0; x <= 2; ++x)
        for (int y = 0; y <= 2; ++y)
            for (int z = 0; z <= 2; ++z) {
                std::array<int, 3> i{x, y, z};
                std::size_t rk = 0;
                std::array<Matrix, 3> d{Matrix(r, 0, 0), Matrix(r, 0, 0), Matrix(r, 0, 0)};
                bool first = true;
                for (auto& p : pieces) {
                    auto& [A, B, C] = p;
                    std::size_t a = A.rank(x), b = B.rank(y), c = C.rank(z);
                    rk += a * b * c;
                    Matrix Ia = Matrix::identity(r, a), Ib = Matrix::identity(r, b), Ic = Matrix::identity(r, c);
                    std::array<Matrix, 3> e{kron(kron(A.diff(x), Ib), Ic), kron(kron(Ia, B.diff(y)), Ic),
                                            kron(kron(Ia, Ib), C.diff(z))};
                    for (int k = 0; k < 3; ++k) d[k] = first ? e[k] : Matrix::direct_sum(d[k], e[k]);
                    first = false;
                }
                t.ranks[i] = rk;
                for (int k = 0; k < 3; ++k) t.d[k][i] = d[k];
            }
    return t;
}

}  // namespace descent
