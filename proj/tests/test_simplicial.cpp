#include "doctest.h"

#include "descent/random.hpp"
#include "descent/simplicial.hpp"

#include <set>

using namespace descent;

namespace {

const Ring Z = Ring::integers();
const Ring F2 = Ring::prime_field(2);
const Ring F3 = Ring::prime_field(3);

long binom(int n, int k) {
    long r = 1;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

// linearized product of two random simplicial sets
SMod random_smod(Rng& rng, const Ring& r, int N) {
    SSet a = random_sset(rng, N), b = random_sset(rng, N);
    return free_linearize(product(a, b), r);
}

bool involves(const IdentityViolation& v, int n, int i0) {
    // composite X(g2)∘X(g1) with g1 at level v.idx, and its normal form
    int L = v.idx[0];
    bool g1_face = v.family[1] == 'd', g2_face = v.family[0] == 'd';
    if (g1_face && L == n && v.j == i0) return true;
    int mid = g1_face ? L - 1 : L + 1;
    if (g2_face && mid == n && v.i == i0) return true;
    MonotoneMap t1 = g1_face ? MonotoneMap::face(L, v.j) : MonotoneMap::degeneracy(L, v.j);
    MonotoneMap t2 = g2_face ? MonotoneMap::face(mid, v.i) : MonotoneMap::degeneracy(mid, v.i);
    auto w = epi_mono_factorize(compose(t1, t2));
    int lvl = L;
    for (int f : w.faces) {
        if (lvl == n && f == i0) return true;
        --lvl;
    }
    return false;
}

}  // namespace

TEST_CASE("shape enumeration") {
    Shape s = Shape::multi_augmented(2, 2);
    auto idx = s.indices();
    CHECK(idx.size() == 15);  // 4x4 minus the corner
    CHECK(!s.contains({-1, -1}));
    CHECK(s.contains({-1, 0}));
    CHECK(Shape::augmented(3).indices().size() == 5);
}

TEST_CASE("identity checker on known objects") {
    SUBCASE("constant objects") {
        CHECK(check_identities(constant(ModCat{Z}, 3, 4)).empty());
        CHECK(check_identities(constant(SetCat{}, 2, 3)).empty());
        BoundedComplex c(Z, Direction::Chain, 0, 1, {2, 1});
        c.set_diff(1, Matrix(Z, 2, 1, {1, -1}));
        CHECK(check_identities(constant(ComplexCat{Z, Direction::Chain}, c, 3)).empty());
    }
    SUBCASE("standard simplex") {
        SSet d1 = standard_simplex(1, 3);
        CHECK(d1.missing().empty());
        CHECK(check_identities(d1).empty());
        // level n lists the n+2 monotone maps [n] -> [1]
        for (int n = 0; n <= 3; ++n) CHECK(d1.ob(n) == static_cast<std::size_t>(n + 2));
        CHECK(check_identities(standard_simplex(3, 4)).empty());
    }
    SUBCASE("spheres and products") {
        CHECK(check_identities(sphere_model(2, 4)).empty());
        CHECK(check_identities(product(standard_simplex(1, 3), sphere_model(1, 3))).empty());
    }
    SUBCASE("random simplicial sets") {
        for (int t = 0; t < 30; ++t) {
            Rng rng = trial_rng(11, t);
            SSet s = random_sset(rng, 4);
            CHECK(check_identities(s).empty());
        }
    }
    SUBCASE("cosimplicial constant") {
        CHECK(check_identities(constant(ModCat{F3}, 2, 3, Variance::Cosimplicial)).empty());
    }
}

TEST_CASE("a corrupted face is reported only through identities that use it") {
    for (int t = 0; t < 10; ++t) {
        Rng rng = trial_rng(12, t);
        SMod X = random_smod(rng, F2, 3);
        int n = uniform(rng, 1, 3), i0 = uniform(rng, 0, n);
        Matrix bad = X.d(n, i0);
        if (bad.rows() == 0 || bad.cols() == 0) continue;
        bad.set(0, 0, bad(0, 0) + 1);
        SMod Y = X;
        Y.faces[GenKey{{n}, 0, i0}] = bad;
        auto v = check_identities(Y);
        CHECK(!v.empty());
        for (auto& e : v) CHECK_MESSAGE(involves(e, n, i0), e.to_string());
    }
}

TEST_CASE("diagonal, swap and reversal") {
    for (int t = 0; t < 15; ++t) {
        Rng rng = trial_rng(13, t);
        SSet a = random_sset(rng, 3), b = random_sset(rng, 3);
        auto Zb = external_product(a, b);
        CHECK(check_identities(Zb).empty());
        // the diagonal of an external product is the levelwise product
        CHECK(diagonal(Zb) == product(a, b));
        CHECK(diagonal(gamma_swap(Zb)) == diagonal(Zb));
        CHECK(gamma_swap(gamma_swap(Zb)) == Zb);
        CHECK(upsilon(upsilon(a)) == a);
        CHECK(check_identities(upsilon(a)).empty());
        CHECK(check_identities(gamma_swap(Zb)).empty());
    }
    // Z = X×Δ in the first direction: D Z = X
    SSet x = sphere_model(1, 3);
    auto Zc = external_product(constant(SetCat{}, 1, 3), x);
    CHECK(diagonal(Zc) == x);
    CHECK(upsilon(constant(ModCat{Z}, 2, 3)) == constant(ModCat{Z}, 2, 3));
}

TEST_CASE("décalage") {
    for (int t = 0; t < 20; ++t) {
        Rng rng = trial_rng(14, t);
        SMod X = random_smod(rng, Z, 4);
        auto lo = dec_lower(X), up = dec_upper(X);
        CHECK(check_identities(lo.aug).empty());
        CHECK(check_identities(up.aug).empty());
        CHECK(is_augmentation(lo.aug));
        CHECK(is_augmentation(up.aug));
        // explicit formula: faces shift by one, augmentation is d_1 on X_1
        for (int k = 0; k <= 3; ++k)
            for (int i = 0; i <= k; ++i) CHECK(lo.aug.d(k, i) == X.d(k + 1, i + 1));
        CHECK(lo.aug.d(0, 0) == X.d(1, 1));
        CHECK(up.aug.d(0, 0) == X.d(1, 0));
        CHECK(has_extra_degeneracy(lo.aug, Side::Lower, lo.extra));
        CHECK(has_extra_degeneracy(up.aug, Side::Upper, up.extra));
        // mirror symmetry, including the augmentation and the extra degeneracy
        auto mirrored = dec_upper(upsilon(X));
        CHECK(upsilon(forget_augmentation(lo.aug)) == forget_augmentation(mirrored.aug));
        CHECK(upsilon(lo.aug) == mirrored.aug);
        for (std::size_t k = 0; k < lo.extra.size(); ++k) CHECK(lo.extra[k] == mirrored.extra[k]);
    }
    CHECK_THROWS_AS(dec_lower(constant(ModCat{Z}, 1, 0)), std::invalid_argument);
}

TEST_CASE("extra degeneracy predicate") {
    // trivial augmentation of a constant object with s = id
    Multi<ModCat> A(ModCat{Z}, Shape::augmented(3));
    for (int k = -1; k <= 3; ++k) A.set_ob(k, 2);
    for (int k = 0; k <= 3; ++k)
        for (int i = 0; i <= k; ++i) A.set_d(k, i, Matrix::identity(Z, 2));
    for (int k = 0; k < 3; ++k)
        for (int j = 0; j <= k; ++j) A.set_s(k, j, Matrix::identity(Z, 2));
    CHECK(check_identities(A).empty());
    std::vector<Matrix> ids(4, Matrix::identity(Z, 2)), zeros(4, Matrix(Z, 2, 2));
    CHECK(has_extra_degeneracy(A, Side::Lower, ids));
    CHECK(has_extra_degeneracy(A, Side::Upper, ids));
    CHECK(!has_extra_degeneracy(A, Side::Lower, zeros));
}

TEST_CASE("extra degeneracy gives a deformation retraction") {
    for (int t = 0; t < 15; ++t) {
        Rng rng = trial_rng(15, t);
        SMod X = random_smod(rng, F3, 4);
        for (Side side : {Side::Lower, Side::Upper}) {
            auto dec = decalage(X, side);
            auto c = contraction_from_extra(dec.aug, side, dec.extra);
            REQUIRE(is_map(c.X, c.base, c.eps));
            REQUIRE(is_map(c.base, c.X, c.zeta));
            CHECK(maps_equal(c.X.cat, compose_maps(c.X.cat, c.eps, c.zeta), identity_map(c.base)));
            auto ze = compose_maps(c.X.cat, c.zeta, c.eps);
            if (side == Side::Lower)
                CHECK(verify_simplicial_homotopy(c.X, c.X, identity_map(c.X), ze, c.h));
            else
                CHECK(verify_simplicial_homotopy(c.X, c.X, ze, identity_map(c.X), c.h));
        }
    }
}

TEST_CASE("simplicial homotopy checker") {
    // f = g = id on a constant object, h_i = s_i = id
    auto X = constant(ModCat{Z}, 2, 3);
    SimplicialHomotopy<ModCat> h;
    for (int n = 0; n < 3; ++n)
        for (int i = 0; i <= n; ++i) h.h[{n, i}] = Matrix::identity(Z, 2);
    CHECK(verify_simplicial_homotopy(X, X, identity_map(X), identity_map(X), h));
    auto bad = h;
    bad.h[{1, 1}].set(0, 1, 5);
    CHECK(!verify_simplicial_homotopy(X, X, identity_map(X), identity_map(X), bad));
    auto missing = h;
    missing.h.erase({2, 0});
    CHECK(!verify_simplicial_homotopy(X, X, identity_map(X), identity_map(X), missing));
}

TEST_CASE("Dold-Puppe construction") {
    // component count of (πA)_n is the number of surjections out of [n]
    for (int n = 0; n <= 5; ++n) {
        long count = 0;
        for (int m = 0; m <= n; ++m) count += binom(n, m);
        CHECK(static_cast<long>(dold_puppe_components(n).size()) == count);
    }
    CHECK(dold_puppe_components(2).size() == 4);
    for (int t = 0; t < 15; ++t) {
        Rng rng = trial_rng(16, t);
        SMod X = random_smod(rng, F2, 3);
        SMod A = X;
        A.degens.clear();
        A.semi = true;
        CHECK(check_identities(A).empty());
        SMod P = dold_puppe_pi(A, 3);
        CHECK(P.missing().empty());
        CHECK(check_identities(P).empty());
        for (int n = 0; n <= 3; ++n) {
            std::size_t r = 0;
            for (int m = 0; m <= n; ++m) r += binom(n, m) * A.ob(m);
            CHECK(P.ob(n) == r);
        }
    }
    // A concentrated in level 0 gives the constant object
    SMod A(ModCat{Z}, Shape::simplicial(3));
    A.semi = true;
    A.set_ob(0, 3);
    for (int n = 1; n <= 3; ++n) A.set_ob(n, 0);
    for (int n = 1; n <= 3; ++n)
        for (int i = 0; i <= n; ++i) A.set_d(n, i, Matrix(Z, A.ob(n - 1), 0));
    CHECK(dold_puppe_pi(A, 3) == constant(ModCat{Z}, 3, 3));
}

TEST_CASE("free linearization") {
    SMod l = free_linearize(standard_simplex(1, 4), Z);
    for (int n = 0; n <= 4; ++n) CHECK(l.ob(n) == static_cast<std::size_t>(n + 2));
    CHECK(check_identities(l).empty());
    CHECK(free_linearize(constant(SetCat{}, 1, 3), F2) == constant(ModCat{F2}, 1, 3));
    for (int t = 0; t < 10; ++t) {
        Rng rng = trial_rng(17, t);
        SSet s = random_sset(rng, 3);
        SMod m = free_linearize(s, F3);
        for (int n = 0; n <= 3; ++n) CHECK(m.ob(n) == s.ob(n));
        CHECK(check_identities(m).empty());
    }
}

TEST_CASE("naturality checker") {
    SSet a = standard_simplex(1, 3);
    // the constant map to the vertex 0 is simplicial; a non-simplicial levelwise map is caught
    auto pt = constant(SetCat{}, 1, 3);
    MultiMap<SetCat> to_pt;
    for (int n = 0; n <= 3; ++n) to_pt.comp[{n}] = SetCat{}.to_terminal(a.ob(n));
    CHECK(is_map(a, pt, to_pt));
    MultiMap<SetCat> from_pt;
    for (int n = 0; n <= 3; ++n) from_pt.comp[{n}] = FinMap{1, a.ob(n), {0}};
    CHECK(is_map(pt, a, from_pt));
    from_pt.comp[{2}] = FinMap{1, a.ob(2), {1}};
    CHECK(!is_map(pt, a, from_pt));
}
