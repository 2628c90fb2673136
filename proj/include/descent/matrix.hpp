#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <vector>

namespace descent {

using Int = boost::multiprecision::cpp_int;

struct Ring {
    enum class Kind { Integers, PrimeField };
    Kind kind = Kind::Integers;
    std::int64_t p = 0;

    static Ring integers() { return Ring{}; }
    static Ring prime_field(std::int64_t p);

    bool is_field() const { return kind == Kind::PrimeField; }
    Int reduce(const Int& x) const;
    std::int64_t reduce64(std::int64_t x) const;
    std::string name() const;  // "Z" or "F5"
    bool operator==(const Ring& o) const { return kind == o.kind && p == o.p; }
    bool operator!=(const Ring& o) const { return !(*this == o); }
};

// modular inverse in F_p; p prime
std::int64_t inv_mod(std::int64_t a, std::int64_t p);

class Matrix {
public:
    Matrix() = default;
    Matrix(Ring r, std::size_t rows, std::size_t cols);
    Matrix(Ring r, std::size_t rows, std::size_t cols, std::initializer_list<long long> entries);

    static Matrix identity(Ring r, std::size_t n);
    static Matrix zero(Ring r, std::size_t rows, std::size_t cols) { return Matrix(r, rows, cols); }
    static Matrix from_rows(Ring r, const std::vector<std::vector<long long>>& rows, std::size_t cols = 0);

    const Ring& ring() const { return ring_; }
    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    const Int& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }
    void set(std::size_t i, std::size_t j, const Int& v) { a_[i * cols_ + j] = ring_.reduce(v); }
    void add_to(std::size_t i, std::size_t j, const Int& v) { set(i, j, a_[i * cols_ + j] + v); }
    // raw access; caller keeps entries reduced
    Int& raw(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }

    bool is_zero() const;
    bool operator==(const Matrix& o) const;
    bool operator!=(const Matrix& o) const { return !(*this == o); }

    Matrix operator*(const Matrix& o) const;
    Matrix operator+(const Matrix& o) const;
    Matrix operator-(const Matrix& o) const;
    Matrix operator-() const;
    Matrix scaled(const Int& c) const;
    Matrix transpose() const;

    Matrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const;
    void set_block(std::size_t r0, std::size_t c0, const Matrix& m);
    void add_block(std::size_t r0, std::size_t c0, const Matrix& m);
    Matrix column(std::size_t j) const { return block(0, j, rows_, 1); }
    Matrix columns(const std::vector<std::size_t>& idx) const;
    Matrix rows_subset(const std::vector<std::size_t>& idx) const;

    static Matrix hstack(const Matrix& a, const Matrix& b);
    static Matrix vstack(const Matrix& a, const Matrix& b);
    static Matrix direct_sum(const Matrix& a, const Matrix& b);

    void swap_rows(std::size_t i, std::size_t j);
    void swap_cols(std::size_t i, std::size_t j);
    // row_i += c * row_j
    void add_row_multiple(std::size_t i, std::size_t j, const Int& c);
    void add_col_multiple(std::size_t i, std::size_t j, const Int& c);
    void scale_row(std::size_t i, const Int& c);
    void scale_col(std::size_t j, const Int& c);

    // reinterpret over another ring (entries reduced)
    Matrix over(const Ring& r) const;

    std::vector<std::int64_t> to_i64() const;  // requires small entries
    static Matrix from_i64(Ring r, std::size_t rows, std::size_t cols, const std::vector<std::int64_t>& v);

    std::string to_string() const;

private:
    Ring ring_{};
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<Int> a_;
};

void require_same_ring(const Matrix& a, const Matrix& b, const char* what);
Matrix kron(const Matrix& a, const Matrix& b);

}  // namespace descent
