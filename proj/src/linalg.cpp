#include "descent/linalg.hpp"

#include <sstream>

namespace descent {

namespace {

Int abs_int(const Int& x) { return x < 0 ? Int(-x) : x; }

void require_integers(const Matrix& m, const char* what) {
    if (m.ring().is_field()) throw std::invalid_argument(std::string(what) + ": integer matrix required");
}

// row reduction over F_p on 64-bit entries
struct FpElim {
    std::size_t rows, cols;
    std::int64_t p;
    std::vector<std::int64_t> a;
    std::vector<std::size_t> pivots;

    FpElim(const Matrix& m) : rows(m.rows()), cols(m.cols()), p(m.ring().p), a(m.to_i64()) {}

    std::int64_t& at(std::size_t i, std::size_t j) { return a[i * cols + j]; }

    void run(bool reduced) {
        std::size_t r = 0;
        for (std::size_t c = 0; c < cols && r < rows; ++c) {
            std::size_t piv = rows;
            for (std::size_t i = r; i < rows; ++i)
                if (at(i, c)) {
                    piv = i;
                    break;
                }
            if (piv == rows) continue;
            if (piv != r)
                for (std::size_t k = 0; k < cols; ++k) std::swap(at(piv, k), at(r, k));
            std::int64_t inv = inv_mod(at(r, c), p);
            for (std::size_t k = c; k < cols; ++k) at(r, k) = at(r, k) * inv % p;
            for (std::size_t i = reduced ? 0 : r + 1; i < rows; ++i) {
                if (i == r) continue;
                std::int64_t f = at(i, c);
                if (!f) continue;
                for (std::size_t k = c; k < cols; ++k) {
                    at(i, k) = (at(i, k) - f * at(r, k)) % p;
                    if (at(i, k) < 0) at(i, k) += p;
                }
            }
            pivots.push_back(c);
            ++r;
        }
    }
};

// fraction-free elimination; returns rank
std::size_t bareiss_rank(const Matrix& m) {
    std::size_t rows = m.rows(), cols = m.cols();
    std::vector<Int> a(rows * cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) a[i * cols + j] = m(i, j);
    Int prev = 1;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t piv = rows;
        for (std::size_t i = r; i < rows; ++i)
            if (a[i * cols + c] != 0) {
                piv = i;
                break;
            }
        if (piv == rows) continue;
        if (piv != r)
            for (std::size_t k = 0; k < cols; ++k) std::swap(a[piv * cols + k], a[r * cols + k]);
        for (std::size_t i = r + 1; i < rows; ++i) {
            for (std::size_t k = c + 1; k < cols; ++k)
                a[i * cols + k] = (a[r * cols + c] * a[i * cols + k] - a[i * cols + c] * a[r * cols + k]) / prev;
            a[i * cols + c] = 0;
        }
        prev = a[r * cols + c];
        ++r;
    }
    return r;
}

}  // namespace

std::vector<Int> SmithForm::invariants() const {
    std::vector<Int> v;
    for (std::size_t i = 0; i < rank; ++i) v.push_back(D(i, i));
    return v;
}

SmithForm smith_normal_form(const Matrix& m) {
    require_integers(m, "smith_normal_form");
    const Ring z = m.ring();
    const std::size_t rows = m.rows(), cols = m.cols();
    Matrix A = m, U = Matrix::identity(z, rows), Ui = Matrix::identity(z, rows), V = Matrix::identity(z, cols);

    auto row_swap = [&](std::size_t i, std::size_t j) {
        A.swap_rows(i, j);
        U.swap_rows(i, j);
        Ui.swap_cols(i, j);
    };
    auto row_add = [&](std::size_t i, std::size_t j, const Int& c) {  // row_i += c row_j
        A.add_row_multiple(i, j, c);
        U.add_row_multiple(i, j, c);
        Ui.add_col_multiple(j, i, -c);
    };
    auto col_swap = [&](std::size_t i, std::size_t j) {
        A.swap_cols(i, j);
        V.swap_cols(i, j);
    };
    auto col_add = [&](std::size_t i, std::size_t j, const Int& c) {
        A.add_col_multiple(i, j, c);
        V.add_col_multiple(i, j, c);
    };

    std::size_t t = 0;
    const std::size_t lim = std::min(rows, cols);
    while (t < lim) {
        // smallest nonzero entry of the trailing block
        std::size_t bi = rows, bj = cols;
        Int best;
        for (std::size_t i = t; i < rows; ++i)
            for (std::size_t j = t; j < cols; ++j)
                if (A(i, j) != 0 && (bi == rows || abs_int(A(i, j)) < best)) {
                    best = abs_int(A(i, j));
                    bi = i;
                    bj = j;
                }
        if (bi == rows) break;
        row_swap(t, bi);
        col_swap(t, bj);

        bool clean = true;
        for (std::size_t i = t + 1; i < rows; ++i)
            if (A(i, t) != 0) {
                Int q = A(i, t) / A(t, t);
                row_add(i, t, -q);
                if (A(i, t) != 0) clean = false;
            }
        for (std::size_t j = t + 1; j < cols; ++j)
            if (A(t, j) != 0) {
                Int q = A(t, j) / A(t, t);
                col_add(j, t, -q);
                if (A(t, j) != 0) clean = false;
            }
        if (!clean) continue;

        bool divides = true;
        for (std::size_t i = t + 1; i < rows && divides; ++i)
            for (std::size_t j = t + 1; j < cols; ++j)
                if (A(i, j) % A(t, t) != 0) {
                    row_add(t, i, 1);
                    divides = false;
                    break;
                }
        if (!divides) continue;

        if (A(t, t) < 0) {
            A.scale_row(t, -1);
            U.scale_row(t, -1);
            Ui.scale_col(t, -1);
        }
        ++t;
    }
    SmithForm s{U, A, V, Ui, t};
    return s;
}

Rref rref(const Matrix& m) {
    if (!m.ring().is_field()) throw std::invalid_argument("rref: field required");
    FpElim e(m);
    e.run(true);
    return {Matrix::from_i64(m.ring(), m.rows(), m.cols(), e.a), e.pivots};
}

std::size_t rank(const Matrix& m) {
    if (m.rows() == 0 || m.cols() == 0) return 0;
    if (m.ring().is_field()) {
        FpElim e(m);
        e.run(false);
        return e.pivots.size();
    }
    return bareiss_rank(m);
}

Matrix kernel_basis(const Matrix& m) {
    const Ring R = m.ring();
    const std::size_t n = m.cols();
    if (R.is_field()) {
        Rref r = rref(m);
        std::vector<bool> is_piv(n, false);
        for (auto c : r.pivots) is_piv[c] = true;
        std::vector<std::size_t> free;
        for (std::size_t c = 0; c < n; ++c)
            if (!is_piv[c]) free.push_back(c);
        Matrix K(R, n, free.size());
        for (std::size_t k = 0; k < free.size(); ++k) {
            K.set(free[k], k, 1);
            for (std::size_t i = 0; i < r.pivots.size(); ++i) K.set(r.pivots[i], k, -r.R(i, free[k]));
        }
        return K;
    }
    if (m.rows() == 0) return Matrix::identity(R, n);
    SmithForm s = smith_normal_form(m);
    return s.V.block(0, s.rank, n, n - s.rank);
}

Matrix image_basis(const Matrix& m) {
    const Ring R = m.ring();
    if (R.is_field()) {
        FpElim e(m);
        e.run(false);
        return m.columns(e.pivots);
    }
    if (m.cols() == 0 || m.rows() == 0) return Matrix(R, m.rows(), 0);
    SmithForm s = smith_normal_form(m);
    Matrix B(R, m.rows(), s.rank);
    for (std::size_t j = 0; j < s.rank; ++j)
        for (std::size_t i = 0; i < m.rows(); ++i) B.set(i, j, s.U_inv(i, j) * s.D(j, j));
    return B;
}

std::optional<Matrix> solve(const Matrix& m, const Matrix& b) {
    require_same_ring(m, b, "solve");
    if (b.rows() != m.rows()) throw std::invalid_argument("solve: shape mismatch");
    const Ring R = m.ring();
    const std::size_t n = m.cols(), k = b.cols();
    if (R.is_field()) {
        Matrix aug = Matrix::hstack(m, b);
        Rref r = rref(aug);
        Matrix x(R, n, k);
        for (std::size_t i = 0; i < r.pivots.size(); ++i) {
            if (r.pivots[i] >= n) return std::nullopt;
        }
        for (std::size_t i = 0; i < r.pivots.size(); ++i)
            for (std::size_t j = 0; j < k; ++j) x.set(r.pivots[i], j, r.R(i, n + j));
        return x;
    }
    if (m.rows() == 0) return Matrix(R, n, k);
    SmithForm s = smith_normal_form(m);
    Matrix c = s.U * b;
    Matrix y(R, n, k);
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < k; ++j) {
            if (i < s.rank) {
                if (c(i, j) % s.D(i, i) != 0) return std::nullopt;
                y.set(i, j, c(i, j) / s.D(i, i));
            } else if (c(i, j) != 0) {
                return std::nullopt;
            }
        }
    return s.V * y;
}

Int determinant(const Matrix& m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("determinant: square matrix required");
    const std::size_t n = m.rows();
    if (n == 0) return 1;
    if (m.ring().is_field()) {
        const std::int64_t p = m.ring().p;
        auto a = m.to_i64();
        std::int64_t det = 1;
        for (std::size_t c = 0; c < n; ++c) {
            std::size_t piv = n;
            for (std::size_t i = c; i < n; ++i)
                if (a[i * n + c]) {
                    piv = i;
                    break;
                }
            if (piv == n) return 0;
            if (piv != c) {
                for (std::size_t k = 0; k < n; ++k) std::swap(a[piv * n + k], a[c * n + k]);
                det = (p - det) % p;
            }
            det = det * a[c * n + c] % p;
            std::int64_t inv = inv_mod(a[c * n + c], p);
            for (std::size_t i = c + 1; i < n; ++i) {
                std::int64_t f = a[i * n + c] * inv % p;
                if (!f) continue;
                for (std::size_t k = c; k < n; ++k) a[i * n + k] = ((a[i * n + k] - f * a[c * n + k]) % p + p) % p;
            }
        }
        return det;
    }
    std::vector<Int> a(n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) a[i * n + j] = m(i, j);
    Int prev = 1;
    int sign = 1;
    for (std::size_t c = 0; c + 1 < n; ++c) {
        std::size_t piv = n;
        for (std::size_t i = c; i < n; ++i)
            if (a[i * n + c] != 0) {
                piv = i;
                break;
            }
        if (piv == n) return 0;
        if (piv != c) {
            for (std::size_t k = 0; k < n; ++k) std::swap(a[piv * n + k], a[c * n + k]);
            sign = -sign;
        }
        for (std::size_t i = c + 1; i < n; ++i) {
            for (std::size_t k = c + 1; k < n; ++k)
                a[i * n + k] = (a[c * n + c] * a[i * n + k] - a[i * n + c] * a[c * n + k]) / prev;
            a[i * n + c] = 0;
        }
        prev = a[c * n + c];
    }
    return sign * a[n * n - 1];
}

std::optional<Matrix> inverse(const Matrix& m) {
    if (m.rows() != m.cols()) return std::nullopt;
    const std::size_t n = m.rows();
    if (m.ring().is_field()) {
        Rref r = rref(Matrix::hstack(m, Matrix::identity(m.ring(), n)));
        if (r.pivots.size() < n || (n > 0 && r.pivots[n - 1] >= n)) return std::nullopt;
        return r.R.block(0, n, n, n);
    }
    Int d = determinant(m);
    if (d != 1 && d != -1) return std::nullopt;
    auto x = solve(m, Matrix::identity(m.ring(), n));
    return x;
}

std::string HomologyGroup::to_string(const Ring& r) const {
    std::ostringstream os;
    bool first = true;
    if (free_rank > 0) {
        os << r.name();
        if (free_rank > 1) os << "^" << free_rank;
        first = false;
    }
    for (const auto& t : torsion) {
        os << (first ? "" : " + ") << "Z/" << t;
        first = false;
    }
    if (first) os << "0";
    return os.str();
}

HomologyGroup homology_at(const Matrix& d_in, const Matrix& d_out) {
    require_same_ring(d_in, d_out, "homology_at");
    if (d_in.rows() != d_out.cols())
        throw std::invalid_argument("homology_at: shape mismatch (" + std::to_string(d_in.rows()) + " vs " +
                                    std::to_string(d_out.cols()) + ")");
    if (!(d_out * d_in).is_zero()) throw std::invalid_argument("homology_at: composite of differentials is not zero");
    HomologyGroup h;
    if (d_in.ring().is_field()) {
        h.free_rank = d_out.cols() - rank(d_out) - rank(d_in);
        return h;
    }
    const std::size_t n = d_out.cols();
    Matrix K = d_out.rows() == 0 ? Matrix::identity(d_out.ring(), n) : kernel_basis(d_out);
    if (K.cols() == 0) return h;
    if (d_in.cols() == 0) {
        h.free_rank = K.cols();
        return h;
    }
    auto c = solve(K, d_in);
    if (!c) throw std::logic_error("homology_at: boundaries outside cycle lattice");
    SmithForm s = smith_normal_form(*c);
    h.free_rank = K.cols() - s.rank;
    for (auto& d : s.invariants())
        if (d > 1) h.torsion.push_back(d);
    return h;
}

bool in_span(const Matrix& span, const Matrix& v) {
    if (span.cols() == 0) return v.is_zero();
    return solve(span, v).has_value();
}

Matrix span_sum(const Matrix& a, const Matrix& b) { return image_basis(Matrix::hstack(a, b)); }

Matrix span_intersection(const Matrix& a, const Matrix& b) {
    if (!a.ring().is_field()) throw std::invalid_argument("span_intersection: field required");
    if (a.cols() == 0 || b.cols() == 0) return Matrix(a.ring(), a.rows(), 0);
    Matrix K = kernel_basis(Matrix::hstack(a, -b));
    return image_basis(a * K.block(0, 0, a.cols(), K.cols()));
}

bool same_span(const Matrix& a, const Matrix& b) {
    if (a.rows() != b.rows()) return false;
    for (std::size_t j = 0; j < b.cols(); ++j)
        if (!in_span(a, b.column(j))) return false;
    for (std::size_t j = 0; j < a.cols(); ++j)
        if (!in_span(b, a.column(j))) return false;
    return true;
}

Quotient quotient_map(const Matrix& spanning, std::size_t n) {
    const Ring R = spanning.ring();
    if (spanning.rows() != n) throw std::invalid_argument("quotient_map: shape mismatch");
    if (R.is_field()) {
        Matrix B = image_basis(spanning);
        const std::size_t r = B.cols();
        Rref e = rref(Matrix::hstack(B, Matrix::identity(R, n)));
        std::vector<std::size_t> comp;
        for (auto c : e.pivots)
            if (c >= r) comp.push_back(c - r);
        Matrix E = Matrix::identity(R, n).columns(comp);
        auto inv = inverse(Matrix::hstack(B, E));
        if (!inv) throw std::logic_error("quotient_map: complement not invertible");
        return {inv->block(r, 0, n - r, n), E};
    }
    if (spanning.cols() == 0) return {Matrix::identity(R, n), Matrix::identity(R, n)};
    SmithForm s = smith_normal_form(spanning);
    for (std::size_t i = 0; i < s.rank; ++i)
        if (s.D(i, i) != 1) throw std::invalid_argument("quotient_map: span is not a direct summand");
    return {s.U.block(s.rank, 0, n - s.rank, n), s.U_inv.block(0, s.rank, n, n - s.rank)};
}

Matrix HomologyBasis::coords(const Matrix& z) const {
    auto c = solve(cycles, z);
    if (!c) throw std::invalid_argument("homology coords: vector is not a cycle");
    return classes.Q * *c;
}

HomologyBasis homology_basis(const Matrix& d_in, const Matrix& d_out) {
    if (!d_in.ring().is_field()) throw std::invalid_argument("homology_basis: field required");
    if (d_in.rows() != d_out.cols()) throw std::invalid_argument("homology_basis: shape mismatch");
    const std::size_t n = d_out.cols();
    Matrix Z = d_out.rows() == 0 ? Matrix::identity(d_in.ring(), n) : kernel_basis(d_out);
    Matrix C(d_in.ring(), Z.cols(), 0);
    if (d_in.cols() > 0 && Z.cols() > 0) {
        auto c = solve(Z, d_in);
        if (!c) throw std::invalid_argument("homology_basis: composite of differentials is not zero");
        C = *c;
    }
    return {Z, quotient_map(C, Z.cols())};
}

}  // namespace descent
