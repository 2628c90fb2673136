#pragma once

#include "descent/matrix.hpp"

#include <optional>
#include <string>
#include <vector>

namespace descent {

// U * M * V = D, D diagonal with a nonnegative divisibility chain, U and V unimodular.
struct SmithForm {
    Matrix U, D, V;
    Matrix U_inv;
    std::size_t rank = 0;
    std::vector<Int> invariants() const;  // nonzero diagonal entries
};

SmithForm smith_normal_form(const Matrix& m);  // integers only

std::size_t rank(const Matrix& m);
Matrix kernel_basis(const Matrix& m);  // columns; saturated over Z
Matrix image_basis(const Matrix& m);   // columns
std::optional<Matrix> solve(const Matrix& m, const Matrix& b);
Int determinant(const Matrix& m);
std::optional<Matrix> inverse(const Matrix& m);

struct Rref {
    Matrix R;
    std::vector<std::size_t> pivots;
};
Rref rref(const Matrix& m);  // fields only

struct HomologyGroup {
    std::size_t free_rank = 0;
    std::vector<Int> torsion;  // invariant factors > 1
    bool operator==(const HomologyGroup& o) const { return free_rank == o.free_rank && torsion == o.torsion; }
    bool is_zero() const { return free_rank == 0 && torsion.empty(); }
    std::string to_string(const Ring& r) const;  // "Z^2 + Z/2", "0", "F2^3"
};

// homology of  . --d_in--> B --d_out--> .
HomologyGroup homology_at(const Matrix& d_in, const Matrix& d_out);

// subspaces given by spanning columns
bool in_span(const Matrix& span, const Matrix& v);
Matrix span_sum(const Matrix& a, const Matrix& b);
Matrix span_intersection(const Matrix& a, const Matrix& b);  // fields only
bool same_span(const Matrix& a, const Matrix& b);

// Q: R^n -> R^m with ker Q = span(S) and Q * L = I.  Over Z the span must be a direct summand.
struct Quotient {
    Matrix Q, L;
    std::size_t dim() const { return Q.rows(); }
};
Quotient quotient_map(const Matrix& spanning, std::size_t n);

// chosen homology basis over a field; coords() reads off the class of a cycle
struct HomologyBasis {
    Matrix cycles;     // n x k basis of ker d_out
    Quotient classes;  // on cycle coordinates, kills the boundaries
    Matrix reps() const { return cycles * classes.L; }
    std::size_t dim() const { return classes.dim(); }
    Matrix coords(const Matrix& z) const;
};
HomologyBasis homology_basis(const Matrix& d_in, const Matrix& d_out);

}  // namespace descent
