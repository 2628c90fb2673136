#include "descent/matrix.hpp"

#include <sstream>

namespace descent {

Ring Ring::prime_field(std::int64_t p) {
    if (p < 2) throw std::invalid_argument("prime field needs p >= 2");
    for (std::int64_t d = 2; d * d <= p; ++d)
        if (p % d == 0) throw std::invalid_argument("field characteristic must be prime");
    if (p > (std::int64_t(1) << 31)) throw std::invalid_argument("prime too large");
    Ring r;
    r.kind = Kind::PrimeField;
    r.p = p;
    return r;
}

Int Ring::reduce(const Int& x) const {
    if (kind == Kind::Integers) return x;
    Int m = x % p;
    if (m < 0) m += p;
    return m;
}

std::int64_t Ring::reduce64(std::int64_t x) const {
    if (kind == Kind::Integers) return x;
    x %= p;
    return x < 0 ? x + p : x;
}

std::string Ring::name() const { return is_field() ? "F" + std::to_string(p) : "Z"; }

std::int64_t inv_mod(std::int64_t a, std::int64_t p) {
    std::int64_t t = 0, nt = 1, r = p, nr = ((a % p) + p) % p;
    if (nr == 0) throw std::domain_error("inverse of zero");
    while (nr != 0) {
        std::int64_t q = r / nr;
        std::int64_t tmp = t - q * nt;
        t = nt;
        nt = tmp;
        tmp = r - q * nr;
        r = nr;
        nr = tmp;
    }
    return t < 0 ? t + p : t;
}

void require_same_ring(const Matrix& a, const Matrix& b, const char* what) {
    if (a.ring() != b.ring()) throw std::invalid_argument(std::string(what) + ": ring mismatch");
}

Matrix kron(const Matrix& a, const Matrix& b) {
    require_same_ring(a, b, "kron");
    Matrix c(a.ring(), a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            if (a(i, j) != 0) c.set_block(i * b.rows(), j * b.cols(), b.scaled(a(i, j)));
    return c;
}

Matrix::Matrix(Ring r, std::size_t rows, std::size_t cols) : ring_(r), rows_(rows), cols_(cols), a_(rows * cols) {}

Matrix::Matrix(Ring r, std::size_t rows, std::size_t cols, std::initializer_list<long long> entries)
    : Matrix(r, rows, cols) {
    if (entries.size() != rows * cols) throw std::invalid_argument("matrix literal size mismatch");
    std::size_t k = 0;
    for (long long v : entries) a_[k++] = ring_.reduce(Int(v));
}

Matrix Matrix::identity(Ring r, std::size_t n) {
    Matrix m(r, n, n);
    for (std::size_t i = 0; i < n; ++i) m.a_[i * n + i] = 1;
    return m;
}

Matrix Matrix::from_rows(Ring r, const std::vector<std::vector<long long>>& rows, std::size_t cols) {
    if (!rows.empty()) cols = rows[0].size();
    Matrix m(r, rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != cols) throw std::invalid_argument("ragged matrix rows");
        for (std::size_t j = 0; j < cols; ++j) m.set(i, j, Int(rows[i][j]));
    }
    return m;
}

bool Matrix::is_zero() const {
    for (const auto& x : a_)
        if (x != 0) return false;
    return true;
}

bool Matrix::operator==(const Matrix& o) const {
    return ring_ == o.ring_ && rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
}

namespace {

bool fits(const std::vector<Int>& v, unsigned bits) {
    Int lim = Int(1) << bits;
    for (const auto& x : v)
        if (x >= lim || x <= -lim) return false;
    return true;
}

}  // namespace

Matrix Matrix::operator*(const Matrix& o) const {
    require_same_ring(*this, o, "multiply");
    if (cols_ != o.rows_)
        throw std::invalid_argument("multiply: shape mismatch " + std::to_string(rows_) + "x" +
                                    std::to_string(cols_) + " * " + std::to_string(o.rows_) + "x" +
                                    std::to_string(o.cols_));
    Matrix c(ring_, rows_, o.cols_);
    if (rows_ == 0 || o.cols_ == 0 || cols_ == 0) return c;
    if (ring_.is_field()) {
        auto A = to_i64(), B = o.to_i64();
        std::vector<std::int64_t> C(rows_ * o.cols_, 0);
        const std::int64_t p = ring_.p;
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t k = 0; k < cols_; ++k) {
                std::int64_t x = A[i * cols_ + k];
                if (!x) continue;
                for (std::size_t j = 0; j < o.cols_; ++j) C[i * o.cols_ + j] = (C[i * o.cols_ + j] + x * B[k * o.cols_ + j]) % p;
            }
        for (std::size_t k = 0; k < C.size(); ++k) c.a_[k] = C[k];
        return c;
    }
    if (fits(a_, 40) && fits(o.a_, 40) && cols_ < (std::size_t(1) << 40)) {
        auto A = to_i64(), B = o.to_i64();
        std::vector<__int128> C(rows_ * o.cols_, 0);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t k = 0; k < cols_; ++k) {
                __int128 x = A[i * cols_ + k];
                if (!x) continue;
                for (std::size_t j = 0; j < o.cols_; ++j) C[i * o.cols_ + j] += x * B[k * o.cols_ + j];
            }
        for (std::size_t k = 0; k < C.size(); ++k) {
            __int128 v = C[k];
            bool neg = v < 0;
            unsigned __int128 u = neg ? (unsigned __int128)(-v) : (unsigned __int128)v;
            Int r = Int(std::uint64_t(u >> 64));
            r <<= 64;
            r += Int(std::uint64_t(u));
            c.a_[k] = neg ? Int(-r) : r;
        }
        return c;
    }
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t k = 0; k < cols_; ++k) {
            const Int& x = a_[i * cols_ + k];
            if (x == 0) continue;
            for (std::size_t j = 0; j < o.cols_; ++j) c.a_[i * o.cols_ + j] += x * o.a_[k * o.cols_ + j];
        }
    return c;
}

Matrix Matrix::operator+(const Matrix& o) const {
    require_same_ring(*this, o, "add");
    if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("add: shape mismatch");
    Matrix c(*this);
    for (std::size_t k = 0; k < a_.size(); ++k) c.a_[k] = ring_.reduce(a_[k] + o.a_[k]);
    return c;
}

Matrix Matrix::operator-(const Matrix& o) const {
    require_same_ring(*this, o, "subtract");
    if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("subtract: shape mismatch");
    Matrix c(*this);
    for (std::size_t k = 0; k < a_.size(); ++k) c.a_[k] = ring_.reduce(a_[k] - o.a_[k]);
    return c;
}

Matrix Matrix::operator-() const {
    Matrix c(*this);
    for (auto& x : c.a_) x = ring_.reduce(-x);
    return c;
}

Matrix Matrix::scaled(const Int& s) const {
    Matrix c(*this);
    for (auto& x : c.a_) x = ring_.reduce(x * s);
    return c;
}

Matrix Matrix::transpose() const {
    Matrix t(ring_, cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) t.a_[j * rows_ + i] = a_[i * cols_ + j];
    return t;
}

Matrix Matrix::block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
    if (r0 + nr > rows_ || c0 + nc > cols_) throw std::out_of_range("block out of range");
    Matrix b(ring_, nr, nc);
    for (std::size_t i = 0; i < nr; ++i)
        for (std::size_t j = 0; j < nc; ++j) b.a_[i * nc + j] = a_[(r0 + i) * cols_ + c0 + j];
    return b;
}

void Matrix::set_block(std::size_t r0, std::size_t c0, const Matrix& m) {
    if (r0 + m.rows_ > rows_ || c0 + m.cols_ > cols_) throw std::out_of_range("set_block out of range");
    for (std::size_t i = 0; i < m.rows_; ++i)
        for (std::size_t j = 0; j < m.cols_; ++j) a_[(r0 + i) * cols_ + c0 + j] = ring_.reduce(m.a_[i * m.cols_ + j]);
}

void Matrix::add_block(std::size_t r0, std::size_t c0, const Matrix& m) {
    if (r0 + m.rows_ > rows_ || c0 + m.cols_ > cols_) throw std::out_of_range("add_block out of range");
    for (std::size_t i = 0; i < m.rows_; ++i)
        for (std::size_t j = 0; j < m.cols_; ++j) {
            auto& x = a_[(r0 + i) * cols_ + c0 + j];
            x = ring_.reduce(x + m.a_[i * m.cols_ + j]);
        }
}

Matrix Matrix::columns(const std::vector<std::size_t>& idx) const {
    Matrix b(ring_, rows_, idx.size());
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < idx.size(); ++j) b.a_[i * idx.size() + j] = a_[i * cols_ + idx[j]];
    return b;
}

Matrix Matrix::rows_subset(const std::vector<std::size_t>& idx) const {
    Matrix b(ring_, idx.size(), cols_);
    for (std::size_t i = 0; i < idx.size(); ++i)
        for (std::size_t j = 0; j < cols_; ++j) b.a_[i * cols_ + j] = a_[idx[i] * cols_ + j];
    return b;
}

Matrix Matrix::hstack(const Matrix& a, const Matrix& b) {
    require_same_ring(a, b, "hstack");
    if (a.rows_ != b.rows_) throw std::invalid_argument("hstack: row mismatch");
    Matrix c(a.ring_, a.rows_, a.cols_ + b.cols_);
    c.set_block(0, 0, a);
    c.set_block(0, a.cols_, b);
    return c;
}

Matrix Matrix::vstack(const Matrix& a, const Matrix& b) {
    require_same_ring(a, b, "vstack");
    if (a.cols_ != b.cols_) throw std::invalid_argument("vstack: column mismatch");
    Matrix c(a.ring_, a.rows_ + b.rows_, a.cols_);
    c.set_block(0, 0, a);
    c.set_block(a.rows_, 0, b);
    return c;
}

Matrix Matrix::direct_sum(const Matrix& a, const Matrix& b) {
    require_same_ring(a, b, "direct_sum");
    Matrix c(a.ring_, a.rows_ + b.rows_, a.cols_ + b.cols_);
    c.set_block(0, 0, a);
    c.set_block(a.rows_, a.cols_, b);
    return c;
}

void Matrix::swap_rows(std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t k = 0; k < cols_; ++k) std::swap(a_[i * cols_ + k], a_[j * cols_ + k]);
}

void Matrix::swap_cols(std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t k = 0; k < rows_; ++k) std::swap(a_[k * cols_ + i], a_[k * cols_ + j]);
}

void Matrix::add_row_multiple(std::size_t i, std::size_t j, const Int& c) {
    if (c == 0) return;
    for (std::size_t k = 0; k < cols_; ++k) {
        const Int& y = a_[j * cols_ + k];
        if (y != 0) a_[i * cols_ + k] = ring_.reduce(a_[i * cols_ + k] + c * y);
    }
}

void Matrix::add_col_multiple(std::size_t i, std::size_t j, const Int& c) {
    if (c == 0) return;
    for (std::size_t k = 0; k < rows_; ++k) {
        const Int& y = a_[k * cols_ + j];
        if (y != 0) a_[k * cols_ + i] = ring_.reduce(a_[k * cols_ + i] + c * y);
    }
}

void Matrix::scale_row(std::size_t i, const Int& c) {
    for (std::size_t k = 0; k < cols_; ++k) a_[i * cols_ + k] = ring_.reduce(a_[i * cols_ + k] * c);
}

void Matrix::scale_col(std::size_t j, const Int& c) {
    for (std::size_t k = 0; k < rows_; ++k) a_[k * cols_ + j] = ring_.reduce(a_[k * cols_ + j] * c);
}

Matrix Matrix::over(const Ring& r) const {
    Matrix m(r, rows_, cols_);
    for (std::size_t k = 0; k < a_.size(); ++k) m.a_[k] = r.reduce(a_[k]);
    return m;
}

std::vector<std::int64_t> Matrix::to_i64() const {
    std::vector<std::int64_t> v(a_.size());
    for (std::size_t k = 0; k < a_.size(); ++k) v[k] = a_[k].convert_to<std::int64_t>();
    return v;
}

Matrix Matrix::from_i64(Ring r, std::size_t rows, std::size_t cols, const std::vector<std::int64_t>& v) {
    Matrix m(r, rows, cols);
    for (std::size_t k = 0; k < v.size(); ++k) m.a_[k] = r.reduce64(v[k]);
    return m;
}

std::string Matrix::to_string() const {
    std::ostringstream os;
    for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t j = 0; j < cols_; ++j) os << (j ? " " : "") << a_[i * cols_ + j];
        os << "\n";
    }
    return os.str();
}

}  // namespace descent
