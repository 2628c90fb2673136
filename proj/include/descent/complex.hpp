#pragma once

#include "descent/linalg.hpp"

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace descent {

enum class Direction { Chain, Cochain };

// Finite support [lo, hi]; d(q) leaves degree q (to q-1 for chain, q+1 for cochain).
struct BoundedComplex {
    Ring ring{};
    Direction dir = Direction::Chain;
    int lo = 0, hi = -1;
    std::vector<std::size_t> ranks;
    std::vector<Matrix> d;  // d[q - lo]

    BoundedComplex() = default;
    BoundedComplex(Ring r, Direction dr, int lo, int hi, std::vector<std::size_t> ranks);
    static BoundedComplex zero(Ring r, Direction dr = Direction::Chain) { return BoundedComplex(r, dr, 0, -1, {}); }
    // single module placed in one degree
    static BoundedComplex concentrated(Ring r, Direction dr, int q, std::size_t rank);

    bool empty_support() const { return hi < lo; }
    std::size_t rank(int q) const { return (q < lo || q > hi) ? 0 : ranks[q - lo]; }
    int step() const { return dir == Direction::Chain ? -1 : 1; }
    int next(int q) const { return q + step(); }
    int prev(int q) const { return q - step(); }
    Matrix diff(int q) const;  // out of degree q
    void set_diff(int q, const Matrix& m);
    std::size_t total_rank() const;

    // throws with a description on bad shapes or d∘d != 0
    void validate() const;
    bool operator==(const BoundedComplex& o) const;
    bool operator!=(const BoundedComplex& o) const { return !(*this == o); }

    // widen support to [l, h] (zero ranks)
    BoundedComplex widened(int l, int h) const;
    BoundedComplex trimmed() const;
};

HomologyGroup homology(const BoundedComplex& c, int q);
bool is_acyclic(const BoundedComplex& c);
BoundedComplex direct_sum(const BoundedComplex& a, const BoundedComplex& b);
BoundedComplex direct_sum(const std::vector<BoundedComplex>& parts);

struct ChainMap {
    BoundedComplex src, tgt;
    std::map<int, Matrix> f;  // missing degrees are zero

    ChainMap() = default;
    ChainMap(BoundedComplex s, BoundedComplex t) : src(std::move(s)), tgt(std::move(t)) {}
    static ChainMap identity(const BoundedComplex& c);
    static ChainMap zero(const BoundedComplex& s, const BoundedComplex& t);

    Matrix at(int q) const;
    void set(int q, const Matrix& m);
    bool is_chain_map() const;
    std::optional<int> first_noncommuting_degree() const;
    bool operator==(const ChainMap& o) const;
};

ChainMap compose(const ChainMap& g, const ChainMap& f);  // g after f
ChainMap operator+(const ChainMap& a, const ChainMap& b);
ChainMap operator-(const ChainMap& a, const ChainMap& b);
ChainMap negate(const ChainMap& a);

// d h + h d = f - g; h(q) goes from degree q of the source to degree prev(q) of the target
struct Homotopy {
    ChainMap f, g;
    std::map<int, Matrix> h;
    Matrix at(int q) const;
};

struct HomotopyCheck {
    bool ok = true;
    std::optional<int> bad_degree;
};
HomotopyCheck verify_homotopy(const Homotopy& h);

// ---- double and triple complexes, commuting convention ----

struct DoubleComplex {
    Ring ring{};
    Direction dir = Direction::Chain;
    std::array<int, 2> lo{0, 0}, hi{-1, -1};
    std::map<std::array<int, 2>, std::size_t> ranks;
    std::map<std::array<int, 2>, Matrix> d1, d2;  // keyed by source index

    std::size_t rank(int i, int j) const;
    Matrix diff(int which, int i, int j) const;  // which = 1 or 2
    void validate() const;
};

struct TripleComplex {
    Ring ring{};
    Direction dir = Direction::Chain;
    std::array<int, 3> lo{0, 0, 0}, hi{-1, -1, -1};
    std::map<std::array<int, 3>, std::size_t> ranks;
    std::array<std::map<std::array<int, 3>, Matrix>, 3> d;  // d[a] for index a

    std::size_t rank(const std::array<int, 3>& i) const;
    Matrix diff(int a, const std::array<int, 3>& i) const;
    void validate() const;
};

// offsets of the summands A_{i, n-i} inside (Tot A)_n, i ascending
std::vector<std::pair<int, std::size_t>> tot_layout(const DoubleComplex& a, int n);

BoundedComplex tot_double(const DoubleComplex& a);
DoubleComplex gamma_swap(const DoubleComplex& a);
// tot(A) -> tot(Γ A), sign (-1)^{i1 i2}
ChainMap tot_swap_iso(const DoubleComplex& a);

DoubleComplex tot_triple_12(const TripleComplex& a);
DoubleComplex tot_triple_23(const TripleComplex& a);
DoubleComplex tot_triple_13(const TripleComplex& a);
// tot∘tot_triple_12 -> tot∘tot_triple_{23|13}; which = 23 or 13
ChainMap triple_coherence(const TripleComplex& a, int which);

// row-wise chain map of double complexes, and its total
struct DoubleMap {
    DoubleComplex src, tgt;
    std::map<std::array<int, 2>, Matrix> f;
    Matrix at(int i, int j) const;
};
ChainMap tot_map(const DoubleMap& m);
// cone taken in the first index: c(f)_{i1,i2} = Y_{i1,i2} + X_{i1-1,i2}
DoubleComplex cone_double(const DoubleMap& m);
// homotopy of double maps h: X_{i,j} -> Y_{i+1,j}, commuting with d2, assembled with sign (-1)^{j}
struct DoubleHomotopy {
    DoubleMap f, g;
    std::map<std::array<int, 2>, Matrix> h;
};
Homotopy tot_homotopy(const DoubleHomotopy& h);

// ---- cones, paths, shifts ----

struct Cone {
    BoundedComplex c;
    ChainMap incl;  // Y -> c(f)
    ChainMap proj;  // c(f) -> X[1]
};
Cone cone(const ChainMap& f);  // chain direction

struct Path {
    BoundedComplex p;
    ChainMap proj_a, proj_c;  // path -> A, path -> C
};
// cochain maps f: A -> B, g: C -> B
Path path_r(const ChainMap& f, const ChainMap& g);

BoundedComplex shift(const BoundedComplex& x, int k);
ChainMap shift_map(const ChainMap& f, int k);
BoundedComplex regrade(const BoundedComplex& x);  // chain <-> cochain, C^q = C_{-q}

bool is_quasi_iso(const ChainMap& f);

}  // namespace descent
