#include "doctest.h"

#include "descent/ez_descent.hpp"
#include "descent/generators.hpp"
#include "oracles.hpp"

using namespace descent;

namespace {

const Ring Z = Ring::integers();
const Ring F2 = Ring::prime_field(2);
const Ring F3 = Ring::prime_field(3);
const Ring F5 = Ring::prime_field(5);

// dim H_q over a field: rank ker - rank im by plain elimination
std::size_t field_betti(const BoundedComplex& c, int q) {
    std::size_t n = c.rank(q);
    Matrix out = c.diff(q), in = c.diff(c.prev(q));
    std::size_t ker = n - (out.rows() ? oracle::rank_rational(out) : 0);
    std::size_t im = in.cols() ? oracle::rank_rational(in) : 0;
    return ker - im;
}

// H_q over Z from rational ranks and invariant factors by minors
HomologyGroup integer_homology(const BoundedComplex& c, int q) {
    std::size_t n = c.rank(q);
    Matrix out = c.diff(q), in = c.diff(c.prev(q));
    std::size_t ker = n - (out.rows() && out.cols() ? oracle::rank_rational(out) : 0);
    HomologyGroup h;
    std::size_t im = 0;
    if (in.rows() && in.cols()) {
        for (auto& f : oracle::invariant_factors(in)) {
            ++im;
            Int a = f < 0 ? Int(-f) : f;
            if (a != 1) h.torsion.push_back(a);
        }
    }
    h.free_rank = ker - im;
    return h;
}

HomologyGroup free_group(std::size_t r) { return HomologyGroup{r, {}}; }

}  // namespace

TEST_CASE("K of the standard 1-simplex") {
    SMod L = free_linearize(standard_simplex(1, 2), Z);
    BoundedComplex k = K(L);
    CHECK(k.rank(0) == 2);
    CHECK(k.rank(1) == 3);
    CHECK(k.rank(2) == 4);
    CHECK(integer_homology(k, 0) == free_group(1));
    CHECK(integer_homology(k, 1) == free_group(0));
    CHECK(homology(k, 0) == integer_homology(k, 0));
}

TEST_CASE("normalized K drops the degenerate simplices") {
    SMod L = free_linearize(standard_simplex(1, 2), Z);
    Normalized n = K_N(L);
    CHECK(n.c.rank(0) == 2);
    CHECK(n.c.rank(1) == 1);
    CHECK(n.c.rank(2) == 0);
    CHECK(n.proj.is_chain_map());
    for (auto& [q, m] : n.lift) CHECK(n.proj.at(q) * m == Matrix::identity(Z, n.c.rank(q)));
}

TEST_CASE("K and the normalized complex have the same homology") {
    for (int t = 0; t < 6; ++t) {
        Rng rng = trial_rng(11, t);
        SSet S = random_small_sset(rng, 3);
        SMod L = free_linearize(S, Z);
        BoundedComplex k = K(L);
        Normalized n = K_N(L);
        for (int q = 0; q < 3; ++q) CHECK(homology(k, q) == integer_homology(n.c, q));
    }
}

TEST_CASE("the simple of modules placed in degree 0 is K") {
    Rng rng = trial_rng(12, 0);
    SMod L = random_conjugate(rng, free_linearize(random_small_sset(rng, 3), Z)).obj;
    BoundedComplex s = simple_s(as_complexes(L), 3);
    BoundedComplex k = K(L);
    for (int q = 1; q <= 3; ++q) CHECK(s.diff(q) == k.diff(q));
}

TEST_CASE("simple refuses insufficient truncation") {
    SMod L = free_linearize(standard_simplex(0, 2), Z);
    CHECK_THROWS_AS(simple_s(as_complexes(L), 3), std::invalid_argument);
}

TEST_CASE("simple is a complex and s of a levelwise map is a chain map") {
    for (const Ring& r : {Z, F3}) {
        for (int t = 0; t < 4; ++t) {
            Rng rng = trial_rng(13, t);
            SComplex X = random_scomplex(rng, r, 3, 3, 2);
            Simple S = simple_total(X, 3);
            CHECK_NOTHROW(S.c.validate());
            SComplex U = upsilon(X);
            CHECK_NOTHROW(simple_total(U, 3).c.validate());
        }
    }
}

TEST_CASE("normalized simple has the homology of the simple") {
    for (int t = 0; t < 4; ++t) {
        Rng rng = trial_rng(14, t);
        SComplex X = random_scomplex(rng, F3, 3, 3, 2);
        Simple S = simple_total(X, 3);
        Normalized n = simple_sN(X, 3);
        CHECK(n.proj.is_chain_map());
        for (int q = 0; q < 3; ++q) CHECK(field_betti(S.c, q) == field_betti(n.c, q));
    }
}

TEST_CASE("lambda splits rho and is a quasi-isomorphism") {
    for (int t = 0; t < 6; ++t) {
        Rng rng = trial_rng(15, t);
        const Ring& r = t % 2 ? Z : F3;
        BoundedComplex A = random_complex(rng, r, Direction::Chain, 0, 3, 3);
        LambdaData L = lambda(A, 3);
        CHECK(L.lambda.is_chain_map());
        CHECK(L.rho.is_chain_map());
        CHECK(compose(L.lambda, L.rho) == ChainMap::identity(L.rho.src));
        CHECK(quasi_iso_below(L.lambda, 3));
        // the homology agrees with that of A
        for (int q = 0; q < 3; ++q) CHECK(homology(L.sA, q) == homology(A, q));
    }
}

TEST_CASE("face maps") {
    CHECK(back_face(1, 3).v == std::vector<int>{2, 3});
    CHECK(front_face(2, 3).v == std::vector<int>{0, 1, 2});
    // s_0 then s_2 on a 1-simplex: [3] -> [1]
    CHECK(degeneracy_word(3, {0, 2}).v == std::vector<int>{0, 0, 1, 1});
}

TEST_CASE("Alexander-Whitney map is a quasi-isomorphism") {
    for (const Ring& r : {Z, F3}) {
        for (int t = 0; t < 4; ++t) {
            Rng rng = trial_rng(16, t);
            SComplex Zc = random_bisimplicial_complex(rng, r, 3, 2, 2);
            ChainMap mu = mu_AW(Zc, 3);
            CHECK(mu.is_chain_map());
            CHECK(quasi_iso_below(mu, 3));
        }
    }
}

TEST_CASE("shuffle and Alexander-Whitney are inverse on homology") {
    for (const Ring& r : {Z, F3}) {
        for (int t = 0; t < 4; ++t) {
            Rng rng = trial_rng(17, t);
            SMod V = random_bisimplicial_module(rng, r, 3);
            ChainMap mu = mu_EZ(V, 3), eta = shuffle_eta(V, 3);
            REQUIRE(eta.is_chain_map());
            REQUIRE(mu.is_chain_map());
            CHECK(identity_on_homology_below(compose(mu, eta), 3));
            CHECK(identity_on_homology_below(compose(eta, mu), 3));
        }
    }
}

TEST_CASE("Alexander-Whitney after shuffle is the identity on products of simplices") {
    SMod V = external_tensor(free_linearize(standard_simplex(1, 3), Z), free_linearize(standard_simplex(1, 3), Z));
    ChainMap mu = mu_EZ(V, 3), eta = shuffle_eta(V, 3);
    CHECK(identity_on_homology_below(compose(mu, eta), 3));
}

TEST_CASE("iterated Alexander-Whitney is associative") {
    for (int t = 0; t < 3; ++t) {
        Rng rng = trial_rng(18, t);
        SMod T = random_trisimplicial_module(rng, t % 2 ? Z : F3, 2);
        CHECK(mu_associativity_check(T, 2));
    }
}

TEST_CASE("both associativity composites agree with the direct formula") {
    Rng rng = trial_rng(19, 0);
    SMod T = random_trisimplicial_module(rng, Z, 2);
    const int n = 2;
    AssocComposites c = mu_assoc_composites(T, n);
    Matrix direct(Z, 0, T.ob(Index{n, n, n}));
    for (const Index& t : c.targets) {
        auto map = [&](int len, int shift) {
            std::vector<int> v;
            for (int x = 0; x <= len; ++x) v.push_back(x + shift);
            return MonotoneMap(len, n, v);
        };
        direct = Matrix::vstack(direct, T.act_all(Index{n, n, n}, {map(t[0], t[1] + t[2]), map(t[1], t[2]), map(t[2], 0)}));
    }
    CHECK(c.via_first == direct);
    CHECK(c.via_last == direct);
}

TEST_CASE("cone in D is homotopy equivalent to the classical cone") {
    for (int t = 0; t < 6; ++t) {
        Rng rng = trial_rng(20, t);
        const Ring& r = t % 2 ? Z : F3;
        BoundedComplex A = random_complex(rng, r, Direction::Chain, 0, 2, 2);
        BoundedComplex B = random_complex(rng, r, Direction::Chain, 0, 2, 2);
        ChainMap f = random_chain_map(rng, A, B);
        ConeInD k = cone_in_D(f, 3);
        CHECK_NOTHROW(k.c.validate());
        CHECK(k.proj.is_chain_map());
        CHECK(k.incl.is_chain_map());
        CHECK_FALSE(cone_homotopy_failure(k).has_value());
        for (int q = 0; q < 3; ++q) CHECK(homology(k.c, q) == homology(k.classical, q));
    }
}

TEST_CASE("a broken homotopy is reported") {
    Rng rng = trial_rng(21, 0);
    BoundedComplex A = random_complex(rng, Z, Direction::Chain, 0, 1, 2);
    ConeInD k = cone_in_D(ChainMap::identity(A), 3);
    REQUIRE_FALSE(cone_homotopy_failure(k).has_value());
    k.h[1] = k.h[1].scaled(2);
    if (!k.h[1].is_zero()) CHECK(cone_homotopy_failure(k).has_value());
}

TEST_CASE("shift functor compares to the classical shift") {
    Rng rng = trial_rng(22, 0);
    BoundedComplex X = random_complex(rng, Z, Direction::Chain, 0, 2, 3);
    ShiftT s = shift_T(X, 4);
    CHECK(s.to_shift.is_chain_map());
    CHECK(quasi_iso_below(s.to_shift, 4));
    CHECK(homology(s.T, 1) == homology(X, 0));
}

TEST_CASE("multiplication by 2 has cone Z/2") {
    BoundedComplex A = BoundedComplex::concentrated(Z, Direction::Chain, 0, 1);
    ChainMap f(A, A);
    f.f[0] = Matrix::identity(Z, 1).scaled(2);
    ConeInD k = cone_in_D(f, 3);
    CHECK(homology(k.c, 0) == HomologyGroup{0, {Int(2)}});
    CHECK(homology(k.c, 1).is_zero());
    CHECK(homology(k.c, 2).is_zero());
}

TEST_CASE("distinguished triangles give long exact sequences") {
    for (int t = 0; t < 6; ++t) {
        Rng rng = trial_rng(23, t);
        BoundedComplex A = random_complex(rng, F3, Direction::Chain, 0, 2, 3);
        BoundedComplex B = random_complex(rng, F3, Direction::Chain, 0, 2, 3);
        Triangle tr = triangle_of(random_chain_map(rng, A, B), 4);
        CHECK(tr.iota.is_chain_map());
        CHECK(tr.p.is_chain_map());
        CHECK(triangle_exact(tr));
    }
}

TEST_CASE("a triangle with a wrong connecting map is not exact") {
    Rng rng = trial_rng(24, 0);
    BoundedComplex A = BoundedComplex::concentrated(F3, Direction::Chain, 0, 1);
    ChainMap f = ChainMap::zero(A, A);
    Triangle tr = triangle_of(f, 4);
    REQUIRE(triangle_exact(tr));
    tr.p = ChainMap::zero(tr.p.src, tr.p.tgt);
    CHECK_FALSE(triangle_exact(tr));
}

TEST_CASE("zig-zags compose like their homology maps") {
    for (int t = 0; t < 6; ++t) {
        Rng rng = trial_rng(25, t);
        BoundedComplex X = random_complex(rng, F5, Direction::Chain, 0, 2, 2);
        BoundedComplex Y = random_complex(rng, F5, Direction::Chain, 0, 2, 2);
        BoundedComplex W = random_complex(rng, F5, Direction::Chain, 0, 2, 2);
        ChainMap w1 = random_quasi_iso(rng, Y, 2);
        ChainMap w2 = random_quasi_iso(rng, W, 2);
        ZigZag F{X, Y, w1.tgt, random_chain_map(rng, X, w1.tgt), w1};
        ZigZag G{Y, W, w2.tgt, random_chain_map(rng, Y, w2.tgt), w2};
        ZigZag H = zigzag_compose(F, G);
        CHECK_NOTHROW(H.T.validate());
        CHECK(H.f.is_chain_map());
        CHECK(H.w.is_chain_map());
        CHECK(is_quasi_iso(H.w));
        for (int q = 0; q <= 2; ++q) CHECK(zigzag_homology(H, q) == zigzag_homology(G, q) * zigzag_homology(F, q));
    }
}

TEST_CASE("identity zig-zag is neutral") {
    Rng rng = trial_rng(26, 0);
    BoundedComplex X = random_complex(rng, F5, Direction::Chain, 0, 2, 2);
    BoundedComplex Y = random_complex(rng, F5, Direction::Chain, 0, 2, 2);
    ZigZag f = zigzag_of(random_chain_map(rng, X, Y));
    ZigZag h = zigzag_compose(identity_zigzag(X), f);
    for (int q = 0; q <= 2; ++q) CHECK(zigzag_homology(h, q) == zigzag_homology(f, q));
}

TEST_CASE("homology of the standard models") {
    for (bool norm : {false, true}) {
        auto pt = homology_of_sset(point_model(3), Z, norm);
        CHECK(pt[0] == free_group(1));
        CHECK(pt[1].is_zero());
        CHECK(pt[2].is_zero());
        auto s1 = homology_of_sset(circle_model(3), Z, norm);
        CHECK(s1[0] == free_group(1));
        CHECK(s1[1] == free_group(1));
        CHECK(s1[2].is_zero());
        auto s2 = homology_of_sset(sphere2_model(3), Z, norm);
        CHECK(s2[0] == free_group(1));
        CHECK(s2[1].is_zero());
        CHECK(s2[2] == free_group(1));
        auto rp2 = homology_of_sset(projective_plane_model(3), Z, norm);
        CHECK(rp2[0] == free_group(1));
        CHECK(rp2[1] == HomologyGroup{0, {Int(2)}});
        CHECK(rp2[2].is_zero());
        auto rp2f = homology_of_sset(projective_plane_model(3), F2, norm);
        CHECK(rp2f[1] == free_group(1));
        CHECK(rp2f[2] == free_group(1));
    }
}

TEST_CASE("cell models have the expected sizes") {
    SSet c = circle_model(3);
    // one vertex; level n has the degeneracies of the vertex and n degeneracies of the loop
    for (int n = 0; n <= 3; ++n) CHECK(c.ob(n) == static_cast<std::size_t>(n + 1));
    CHECK(check_identities(projective_plane_model(3)).empty());
}

TEST_CASE("inconsistent cells are rejected") {
    MonotoneMap id0 = MonotoneMap::identity(0);
    CHECK_THROWS_AS(sset_from_cells({Cell{0, {}}, Cell{1, {{0, id0}}}}, 2), std::invalid_argument);
}

TEST_CASE("truncation and homology in a range") {
    Rng rng = trial_rng(27, 0);
    BoundedComplex A = random_complex(rng, Z, Direction::Chain, 0, 4, 3);
    BoundedComplex t = truncate_above(A, 2);
    CHECK(t.hi == 2);
    CHECK_NOTHROW(t.validate());
    for (int q = 0; q < 2; ++q) CHECK(homology(t, q) == homology(A, q));
    CHECK(homology_below(A, 3).size() == 3);
}

TEST_CASE("descent axioms hold on random instances") {
    for (const Ring& r : {F2, F3, Z}) {
        SdcConfig cfg;
        cfg.ring = r;
        cfg.trials = 3;
        cfg.max_rank = 2;
        SdcReport rep = sdc_verify(cfg);
        for (auto& t : rep.trials) {
            INFO(t.axiom << " trial " << t.k << ": " << t.reason);
            CHECK(t.pass);
        }
    }
}

TEST_CASE("each axiom check catches its injected fault") {
    for (const auto& ax : sdc_axioms()) {
        SdcConfig cfg;
        cfg.axiom = ax;
        cfg.ring = F3;
        cfg.trials = 10;
        cfg.max_rank = 2;
        cfg.inject_fault = true;
        INFO("axiom " << ax);
        CHECK_FALSE(sdc_verify(cfg).all_pass());
    }
}

TEST_CASE("sdc reports are deterministic and name witnesses") {
    SdcConfig cfg;
    cfg.axiom = "7";
    cfg.trials = 3;
    CHECK(sdc_verify(cfg).text() == sdc_verify(cfg).text());
    CHECK(sdc_verify(cfg).text().rfind("TRIAL 0 PASS 7", 0) == 0);
    cfg.axiom = "bogus";
    CHECK_THROWS_AS(sdc_verify(cfg), std::invalid_argument);
}
