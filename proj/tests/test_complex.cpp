#include "doctest.h"

#include "descent/complex.hpp"
#include "descent/random.hpp"

using namespace descent;

namespace {

const Ring Z = Ring::integers();
const Ring F5 = Ring::prime_field(5);

BoundedComplex two_step(Ring r, long long k) {
    // Z --k--> Z in degrees 1 -> 0
    BoundedComplex c(r, Direction::Chain, 0, 1, {1, 1});
    c.set_diff(1, Matrix(r, 1, 1, {k}));
    return c;
}

ChainMap scalar_map(const BoundedComplex& x, const BoundedComplex& y, long long k) {
    ChainMap f(x, y);
    for (int q = x.lo; q <= x.hi; ++q)
        if (x.rank(q) == y.rank(q)) f.set(q, Matrix::identity(x.ring, x.rank(q)).scaled(k));
    return f;
}

}  // namespace

TEST_CASE("tot of double complexes") {
    // a single row is returned unchanged
    BoundedComplex row = two_step(Z, 3);
    DoubleComplex a;
    a.ring = Z;
    a.lo = {0, 0};
    a.hi = {1, 0};
    a.ranks[{0, 0}] = 1;
    a.ranks[{1, 0}] = 1;
    a.d1[{1, 0}] = Matrix(Z, 1, 1, {3});
    a.validate();
    CHECK(tot_double(a) == row);

    // rows Z -> Z in rows 0 and 1 joined by identity verticals: acyclic
    DoubleComplex b;
    b.ring = Z;
    b.lo = {0, 0};
    b.hi = {1, 1};
    for (int i = 0; i <= 1; ++i)
        for (int j = 0; j <= 1; ++j) b.ranks[{i, j}] = 1;
    for (int j = 0; j <= 1; ++j) b.d1[{1, j}] = Matrix(Z, 1, 1, {1});
    for (int i = 0; i <= 1; ++i) b.d2[{i, 1}] = Matrix(Z, 1, 1, {1});
    b.validate();
    BoundedComplex t = tot_double(b);
    t.validate();
    CHECK(is_acyclic(t));

    Rng rng(1);
    for (int k = 0; k < 20; ++k) {
        DoubleComplex c = random_double_complex(rng, F5, 0, 2, 0, 2, 3);
        c.validate();
        CHECK_NOTHROW(tot_double(c).validate());
    }
}

TEST_CASE("swap of indices is a signed isomorphism of totals") {
    Rng rng(2);
    for (int k = 0; k < 20; ++k) {
        DoubleComplex c = random_double_complex(rng, k % 2 ? Z : F5, 0, 2, -1, 1, 3);
        ChainMap s = tot_swap_iso(c);
        CHECK(s.is_chain_map());
        for (int n = s.src.lo; n <= s.src.hi; ++n) CHECK(inverse(s.at(n)).has_value());
    }
}

TEST_CASE("triple totals agree up to the Koszul permutation") {
    Rng rng(3);
    for (int k = 0; k < 12; ++k) {
        TripleComplex t = random_triple_complex(rng, k % 2 ? Z : F5, 3);
        t.validate();
        for (auto* f : {&tot_triple_12, &tot_triple_23, &tot_triple_13}) CHECK_NOTHROW((*f)(t).validate());
        for (int which : {23, 13}) {
            ChainMap m = triple_coherence(t, which);
            CHECK(m.is_chain_map());
            for (int n = m.src.lo; n <= m.src.hi; ++n) CHECK(inverse(m.at(n)).has_value());
        }
    }
    // concentrated in one triple
    TripleComplex one;
    one.ring = Z;
    one.lo = {1, 0, 2};
    one.hi = {1, 0, 2};
    one.ranks[{1, 0, 2}] = 2;
    for (auto* f : {&tot_triple_12, &tot_triple_23, &tot_triple_13}) {
        DoubleComplex d = (*f)(one);
        std::size_t total = 0;
        for (auto& [i, r] : d.ranks) total += r;
        CHECK(total == 2);
    }
}

TEST_CASE("cone") {
    BoundedComplex x = two_step(Z, 2);
    Cone c = cone(ChainMap::identity(x));
    c.c.validate();
    CHECK(is_acyclic(c.c));
    CHECK(c.incl.is_chain_map());
    CHECK(c.proj.is_chain_map());

    // f = 0: block structure Y + X[1]
    Rng r4(4);
    BoundedComplex y = random_complex(r4, Z, Direction::Chain, 0, 2, 2);
    Cone c0 = cone(ChainMap::zero(x, y));
    CHECK(c0.c == direct_sum(y, shift(x, 1)));

    // ·2 on Z in degree 0
    BoundedComplex z0 = BoundedComplex::concentrated(Z, Direction::Chain, 0, 1);
    Cone c2 = cone(scalar_map(z0, z0, 2));
    CHECK(homology(c2.c, 0).to_string(Z) == "Z/2");
    CHECK(homology(c2.c, 1).is_zero());

    // contraction of cone(id)
    Rng r5(5);
    BoundedComplex r = random_complex(r5, Z, Direction::Chain, 0, 3, 2);
    Cone ci = cone(ChainMap::identity(r));
    Homotopy h;
    h.f = ChainMap::identity(ci.c);
    h.g = ChainMap::zero(ci.c, ci.c);
    for (int n = ci.c.lo; n <= ci.c.hi; ++n) {
        // (y, x) in degree n goes to (0, y) in degree n+1
        Matrix m(Z, ci.c.rank(n + 1), ci.c.rank(n));
        if (r.rank(n)) m.set_block(r.rank(n + 1), 0, Matrix::identity(Z, r.rank(n)));
        h.h[n] = m;
    }
    CHECK(verify_homotopy(h).ok);
    for (auto& [n, m] : h.h)
        if (!m.is_zero()) {
            m = m.scaled(2);
            break;
        }
    auto bad = verify_homotopy(h);
    CHECK_FALSE(bad.ok);
    CHECK(bad.bad_degree.has_value());
}

TEST_CASE("shift") {
    Rng rng(6);
    BoundedComplex x = random_complex(rng, Z, Direction::Chain, -1, 2, 3);
    CHECK(shift(x, 0) == x);
    CHECK(shift(shift(x, 1), -1) == x);
    CHECK(shift(shift(x, 1), 1) == shift(x, 2));
    BoundedComplex z0 = BoundedComplex::concentrated(Z, Direction::Chain, 0, 1);
    Cone c2 = cone(scalar_map(z0, z0, 2));
    BoundedComplex s = shift(c2.c, 1);
    for (int n = -1; n <= 3; ++n) CHECK(homology(s, n) == homology(c2.c, n - 1));
}

TEST_CASE("quasi-isomorphisms") {
    Rng rng(7);
    BoundedComplex x = random_complex(rng, Z, Direction::Chain, 0, 3, 3);
    CHECK(is_quasi_iso(ChainMap::identity(x)));
    BoundedComplex z0 = BoundedComplex::concentrated(Z, Direction::Chain, 0, 1);
    CHECK_FALSE(is_quasi_iso(ChainMap::zero(z0, z0)));
    // inclusion of X into X + cone(id_W): a deformation retract
    BoundedComplex w = random_complex(rng, Z, Direction::Chain, 0, 2, 2);
    BoundedComplex big = direct_sum(x, cone(ChainMap::identity(w)).c);
    ChainMap inc(x, big);
    for (int q = x.lo; q <= x.hi; ++q) {
        Matrix m(Z, big.rank(q), x.rank(q));
        m.set_block(0, 0, Matrix::identity(Z, x.rank(q)));
        inc.set(q, m);
    }
    CHECK(inc.is_chain_map());
    CHECK(is_quasi_iso(inc));
}

TEST_CASE("path object") {
    Ring R = Z;
    Rng rng(8);
    for (int k = 0; k < 10; ++k) {
        BoundedComplex a = random_complex(rng, R, Direction::Cochain, 0, 2, 2);
        BoundedComplex b = random_complex(rng, R, Direction::Cochain, 0, 2, 2);
        BoundedComplex c = random_complex(rng, R, Direction::Cochain, 0, 2, 2);
        ChainMap f = random_chain_map(rng, a, b), g = random_chain_map(rng, c, b);
        Path p = path_r(f, g);
        CHECK_NOTHROW(p.p.validate());
        CHECK(p.proj_a.is_chain_map());
        CHECK(p.proj_c.is_chain_map());
    }
    // A = C = 0 gives B[-1]
    BoundedComplex b = random_complex(rng, R, Direction::Cochain, 0, 2, 2);
    BoundedComplex zero = BoundedComplex::zero(R, Direction::Cochain);
    CHECK(path_r(ChainMap::zero(zero, b), ChainMap::zero(zero, b)).p.trimmed() == shift(b, -1).trimmed());

    // f = g = id: P(a) = (a, 0, a) splits both projections, and the middle projection is a homotopy
    Path pid = path_r(ChainMap::identity(b), ChainMap::identity(b));
    ChainMap P(b, pid.p);
    for (int n = b.lo; n <= b.hi; ++n) {
        Matrix m(R, pid.p.rank(n), b.rank(n));
        m.set_block(0, 0, Matrix::identity(R, b.rank(n)));
        m.set_block(b.rank(n) + b.rank(n - 1), 0, Matrix::identity(R, b.rank(n)));
        P.set(n, m);
    }
    CHECK(P.is_chain_map());
    CHECK(compose(pid.proj_a, P) == ChainMap::identity(b));
    CHECK(compose(pid.proj_c, P) == ChainMap::identity(b));
    Homotopy H;
    H.f = pid.proj_a;
    H.g = pid.proj_c;
    for (int n = pid.p.lo; n <= pid.p.hi; ++n) {
        Matrix m(R, b.rank(n - 1), pid.p.rank(n));
        if (b.rank(n - 1)) m.set_block(0, b.rank(n), Matrix::identity(R, b.rank(n - 1)));
        H.h[n] = m;
    }
    CHECK(verify_homotopy(H).ok);

    // f = ·2, g = 0 over Z: path homology is the regraded cone homology shifted by one
    BoundedComplex z0 = BoundedComplex::concentrated(R, Direction::Cochain, 0, 1);
    ChainMap two(z0, z0);
    two.set(0, Matrix(R, 1, 1, {2}));
    Path p2 = path_r(two, ChainMap::zero(BoundedComplex::zero(R, Direction::Cochain), z0));
    ChainMap two_chain(regrade(z0), regrade(z0));
    two_chain.set(0, Matrix(R, 1, 1, {2}));
    BoundedComplex cc = cone(two_chain).c;
    for (int n = -2; n <= 2; ++n) CHECK(homology(p2.p, n) == homology(cc, -n + 1));
}

TEST_CASE("cone commutes with tot") {
    Rng rng(9);
    for (int k = 0; k < 10; ++k) {
        Ring R = k % 2 ? Z : F5;
        BoundedComplex c1 = random_complex(rng, R, Direction::Chain, 0, 2, 2);
        BoundedComplex d1 = random_complex(rng, R, Direction::Chain, 0, 1, 2);
        BoundedComplex c2 = random_complex(rng, R, Direction::Chain, 0, 2, 2);
        ChainMap g = random_chain_map(rng, c1, c2);
        DoubleMap m;
        m.src = tensor_double(c1, d1);
        m.tgt = tensor_double(c2, d1);
        for (int i = 0; i <= 2; ++i)
            for (int j = 0; j <= 1; ++j) m.f[{i, j}] = kron(g.at(i), Matrix::identity(R, d1.rank(j)));
        DoubleComplex cd = cone_double(m);
        cd.validate();
        BoundedComplex lhs = tot_double(cd);
        BoundedComplex rhs = cone(tot_map(m)).c;
        // summand reorder, sign (-1)^{i2} on the shifted source
        ChainMap iso(lhs, rhs);
        for (int n = lhs.lo; n <= lhs.hi; ++n) {
            Matrix M(R, rhs.rank(n), lhs.rank(n));
            std::size_t off = 0;
            auto ty = tot_layout(m.tgt, n), tx = tot_layout(m.src, n - 1);
            std::size_t ysize = tot_double(m.tgt).rank(n);
            for (auto& [i, o] : tot_layout(cd, n)) {
                int j = n - i;
                std::size_t ry = m.tgt.rank(i, j), rx = m.src.rank(i - 1, j);
                for (auto& [yi, yo] : ty)
                    if (yi == i && ry) M.set_block(yo, o, Matrix::identity(R, ry));
                for (auto& [xi, xo] : tx)
                    if (xi == i - 1 && rx) M.set_block(ysize + xo, o + ry, Matrix::identity(R, rx).scaled(j % 2 ? -1 : 1));
                off += ry + rx;
            }
            iso.set(n, M);
        }
        CHECK(iso.is_chain_map());
    }
}

TEST_CASE("tot preserves homotopies") {
    Rng rng(10);
    for (int k = 0; k < 10; ++k) {
        BoundedComplex c1 = random_complex(rng, Z, Direction::Chain, 0, 2, 2);
        BoundedComplex c2 = random_complex(rng, Z, Direction::Chain, 0, 2, 2);
        BoundedComplex d = random_complex(rng, Z, Direction::Chain, 0, 2, 2);
        ChainMap f = random_chain_map(rng, c1, c2);
        Homotopy w;
        ChainMap g = random_homotopic(rng, f, &w);
        DoubleHomotopy H;
        H.f.src = H.g.src = tensor_double(c1, d);
        H.f.tgt = H.g.tgt = tensor_double(c2, d);
        for (int i = 0; i <= 2; ++i)
            for (int j = 0; j <= 2; ++j) {
                Matrix I = Matrix::identity(Z, d.rank(j));
                H.f.f[{i, j}] = kron(f.at(i), I);
                H.g.f[{i, j}] = kron(g.at(i), I);
                H.h[{i, j}] = kron(w.at(i), I);
            }
        CHECK(verify_homotopy(tot_homotopy(H)).ok);
    }
}

TEST_CASE("half-plane double complex with exact columns has acyclic total") {
    Rng rng(11);
    for (int k = 0; k < 10; ++k) {
        // each column is cone(id) of a random complex, placed in the second index
        BoundedComplex e = cone(ChainMap::identity(random_complex(rng, F5, Direction::Chain, 0, 2, 2))).c;
        BoundedComplex row = random_complex(rng, F5, Direction::Chain, 0, 3, 2);
        DoubleComplex a = tensor_double(row, e);
        CHECK(is_acyclic(tot_double(a)));
    }
}
