#include "doctest.h"

#include "descent/generators.hpp"
#include "descent/total.hpp"

using namespace descent;

namespace {

const Ring Z = Ring::integers();
const Ring F2 = Ring::prime_field(2);
const Ring F3 = Ring::prime_field(3);

template <class C>
bool valid(const Multi<C>& X) {
    auto v = check_identities(X);
    if (!v.empty()) MESSAGE("first violation: " << v.front().to_string());
    return v.empty() && X.missing().empty();
}

template <class C>
bool natural(const Multi<C>& X, const Multi<C>& Y, const MultiMap<C>& f) {
    auto v = check_natural(X, Y, f);
    if (!v.empty()) MESSAGE("first naturality failure: " << v.front().to_string());
    return v.empty() && is_map(X, Y, f);
}

// every component invertible
bool invertible(const MultiMap<ModCat>& f) {
    for (auto& [idx, m] : f.comp)
        if (m.rows() != m.cols() || !inverse(m)) return false;
    return true;
}

MultiMap<ModCat> const_map(const Matrix& m, int N) {
    MultiMap<ModCat> r;
    for (int n = 0; n <= N; ++n) r.comp[{n}] = m;
    return r;
}

SMod random_smod(Rng& rng, const Ring& r, int N) {
    return random_conjugate(rng, free_linearize(random_small_sset(rng, N), r)).obj;
}

// Explicit face/degeneracy formulas for Cyl and Cyl' written per component.
// Components at level n: Y_n (position 0), X_k at position n-k (k = n-1 .. 0), X_{-1} last.
Multi<ModCat> cyl_by_formula(const Omega<ModCat>& D, bool prime) {
    const ModCat& cat = D.X.cat;
    const int N = D.top();
    auto xob = [&](int k) { return k < 0 ? D.base : D.X.ob(k); };
    auto parts = [&](int n) {
        std::vector<std::size_t> p{D.Y.ob(n)};
        for (int k = n - 1; k >= -1; --k) p.push_back(xob(k));
        return p;
    };
    auto xface = [&](int k, int i) { return k == 0 ? D.eps.at(0) : D.X.d(k, i); };
    Multi<ModCat> R(cat, Shape::simplicial(N));
    for (int n = 0; n <= N; ++n) R.set_ob(n, cat.coproduct(parts(n)));
    for (int n = 1; n <= N; ++n)
        for (int i = 0; i <= n; ++i) {
            BlockSpec<Matrix> spec{{0}, {D.Y.d(n, i)}};
            for (int k = n - 1; k >= -1; --k) {
                // the face index as seen by the component X_k, in the Cyl' orientation
                int ip = prime ? i : n - i;
                if (ip <= k) {
                    spec.target.push_back(n - k);  // X_{k-1} sits at position (n-1)-(k-1)
                    spec.maps.push_back(xface(k, prime ? ip : k - (n - i)));
                } else if (k == n - 1) {
                    spec.target.push_back(0);
                    spec.maps.push_back(D.f.at(n - 1));
                } else {
                    spec.target.push_back(n - 1 - k);
                    spec.maps.push_back(cat.id(xob(k)));
                }
            }
            R.set_d(n, i, cat.block(parts(n), parts(n - 1), spec));
        }
    for (int n = 0; n < N; ++n)
        for (int j = 0; j <= n; ++j) {
            BlockSpec<Matrix> spec{{0}, {D.Y.s(n, j)}};
            for (int k = n - 1; k >= -1; --k) {
                int jp = prime ? j : n - j;
                if (jp <= k) {
                    spec.target.push_back(n - k);  // X_{k+1} at position (n+1)-(k+1)
                    spec.maps.push_back(D.X.s(k, prime ? jp : k - (n - j)));
                } else {
                    spec.target.push_back(n + 1 - k);
                    spec.maps.push_back(cat.id(xob(k)));
                }
            }
            R.set_s(n, j, cat.block(parts(n), parts(n + 1), spec));
        }
    return R;
}

// reversal of the component order of a coproduct with the given parts
Matrix reversal(const ModCat& cat, const std::vector<std::size_t>& parts) {
    std::vector<int> t;
    for (std::size_t k = 0; k < parts.size(); ++k) t.push_back(static_cast<int>(parts.size() - 1 - k));
    return permutation(cat, parts, t);
}

Nine<ModCat> random_nine(Rng& rng, const Ring& r) {
    auto rk = [&] { return static_cast<std::size_t>(uniform(rng, 0, 3)); };
    Nine<ModCat> D;
    D.X = rk();
    D.Y = rk();
    D.Z = rk();
    D.Y1 = rk();
    D.Z1 = rk();
    D.Y2 = rk();
    D.Z2 = rk();
    D.X1 = D.X2 = D.X;
    Unimodular b = random_unimodular(rng, r, D.X), b2 = random_unimodular(rng, r, D.X);
    D.beta = b.fwd;
    D.beta2 = b2.fwd;
    D.f = random_matrix(rng, r, D.Y, D.X);
    D.g = random_matrix(rng, r, D.Z, D.X);
    D.gamma = random_matrix(rng, r, D.Y1, D.Y);
    D.alpha = random_matrix(rng, r, D.Z1, D.Z);
    D.gamma2 = random_matrix(rng, r, D.Y2, D.Y);
    D.alpha2 = random_matrix(rng, r, D.Z2, D.Z);
    D.f1 = D.gamma * D.f * b.inv;
    D.g1 = D.alpha * D.g * b.inv;
    D.f2 = D.gamma2 * D.f * b2.inv;
    D.g2 = D.alpha2 * D.g * b2.inv;
    return D;
}

}  // namespace

TEST_CASE("tot: a single nonzero row gives back that row") {
    Rng rng = trial_rng(11, 0);
    SMod X = random_smod(rng, Z, 3);
    ModCat cat{Z};
    Multi<ModCat> W(cat, Shape::multi_augmented(2, 3));
    for (const Index& idx : W.shape.indices()) W.set_ob(idx, idx[0] == -1 ? X.ob(idx[1]) : 0);
    auto zero = [&](const Index& from, const Index& to) { return Matrix(Z, W.ob(to), W.ob(from)); };
    for (const Index& idx : W.shape.indices())
        for (int a = 0; a < 2; ++a)
            for (int k = 0; k <= idx[a]; ++k) {
                bool row = idx[0] == -1 && a == 1;
                if (W.has_face(idx, a, k))
                    W.set_d(idx, a, k, row ? X.d(idx[1], k) : zero(idx, shifted(idx, a, -1)));
                if (W.has_degen(idx, a, k))
                    W.set_s(idx, a, k, row ? X.s(idx[1], k) : zero(idx, shifted(idx, a, 1)));
            }
    REQUIRE(valid(W));
    CHECK(tot(W) == X);
}

TEST_CASE("tot of Ψ(f, trivial ε) is the simplicial cone") {
    for (int t = 0; t < 4; ++t) {
        Rng rng = trial_rng(12, t);
        Omega<ModCat> D = random_omega(rng, F3, 3);
        Multi<ModCat> C = simp_cone(D.X, D.Y, D.f);
        CHECK(valid(C));
        for (int n = 0; n <= 3; ++n) {
            std::size_t expect = D.Y.ob(n);
            for (int k = 0; k < n; ++k) expect += D.X.ob(k);
            CHECK(C.ob(n) == expect);  // the terminal object has rank 0
        }
        CHECK(C == tot(psi(cone_diagram(D.X, D.Y, D.f))));
        // cone over the terminal simplicial set: one extra point per level
        SSet S = random_small_sset(rng, 3), P = standard_simplex(0, 3);
        MultiMap<SetCat> c;
        for (int n = 0; n <= 3; ++n) c.comp[{n}] = FinMap{S.ob(n), 1, std::vector<std::size_t>(S.ob(n), 0)};
        SSet CS = simp_cone(S, P, c);
        CHECK(valid(CS));
        for (int n = 0; n <= 3; ++n) {
            std::size_t expect = 1 + 1;
            for (int k = 0; k < n; ++k) expect += S.ob(k);
            CHECK(CS.ob(n) == expect);
        }
    }
}

TEST_CASE("tot and tot_plus satisfy the identities on random biaugmented objects") {
    for (int t = 0; t < 6; ++t) {
        Rng rng = trial_rng(13, t);
        SMod W = random_biaugmented(rng, F3, t < 3 ? 3 : 2);
        REQUIRE(valid(W));
        Multi<ModCat> T = tot(truncate(W, Shape::multi_augmented(2, W.top())));
        CHECK(valid(T));
        Multi<ModCat> Tp = tot_plus(W);
        CHECK(valid(Tp));
        CHECK(Tp.ob(-1) == W.ob({-1, -1}));
        CHECK(forget_augmentation(Tp) == T);
        // d0 on level 0 is the sum of the two corner augmentations
        Matrix d0 = Tp.d(0, 0);
        CHECK(d0 == Matrix::hstack(W.d({-1, 0}, 1, 0), W.d({0, -1}, 0, 0)));
        for (int n = 0; n <= T.top(); ++n) {
            std::size_t expect = 0;
            for (int i = -1; i <= n; ++i) expect += W.ob({i, n - 1 - i});
            CHECK(T.ob(n) == expect);
        }
    }
    SUBCASE("a zero corner gives the trivial augmentation") {
        Rng rng = trial_rng(14, 0);
        Omega<ModCat> D = random_omega(rng, F2, 2);
        Multi<ModCat> P = psi(cone_diagram(D.X, D.Y, D.f));
        Multi<ModCat> Pc(P.cat, Shape::multi_augmented(2, 2, true));
        Pc.objs = P.objs;
        Pc.faces = P.faces;
        Pc.degens = P.degens;
        Pc.set_ob({-1, -1}, 0);
        Pc.set_d({0, -1}, 0, 0, Matrix(F2, 0, 0));
        Pc.set_d({-1, 0}, 1, 0, Matrix(F2, 0, D.Y.ob(0)));
        REQUIRE(valid(Pc));
        Multi<ModCat> A = tot_plus(Pc);
        CHECK(valid(A));
        CHECK(A.ob(-1) == 0);
        CHECK(A.d(0, 0).is_zero());
    }
}

TEST_CASE("tot commutes with levelwise coproducts") {
    for (int t = 0; t < 3; ++t) {
        Rng rng = trial_rng(15, t);
        Shape sh = Shape::multi_augmented(2, 2);
        SMod A = truncate(random_biaugmented(rng, F3, 2), sh), B = truncate(random_biaugmented(rng, F3, 2), sh);
        Multi<ModCat> lhs = tot(multi_sum(A, B)), rhs = multi_sum(tot(A), tot(B));
        MultiMap<ModCat> iso;
        for (int n = 0; n <= 2; ++n) {
            auto comps = tot_indices(n, 2);
            const int K = static_cast<int>(comps.size());
            std::vector<std::size_t> parts;
            std::vector<int> target;
            for (int k = 0; k < K; ++k) {
                parts.push_back(A.ob(comps[k].blocks));
                parts.push_back(B.ob(comps[k].blocks));
                target.push_back(k);
                target.push_back(K + k);
            }
            iso.comp[{n}] = permutation(lhs.cat, parts, target);
        }
        CHECK(natural(lhs, rhs, iso));
        CHECK(invertible(iso));
    }
}

TEST_CASE("total décalage") {
    SUBCASE("identities and the constant case") {
        for (int t = 0; t < 3; ++t) {
            Rng rng = trial_rng(16, t);
            SMod X = random_smod(rng, F3, 5);
            Multi<ModCat> D = total_decalage(X, 2);
            CHECK(valid(D));
            for (const Index& idx : D.shape.indices()) CHECK(D.ob(idx) == X.ob(idx[0] + idx[1] + 1));
            // faces of the rows are faces of X shifted past the column block
            CHECK(D.d({1, 2}, 1, 0) == X.d(4, 2));
            CHECK(D.d({2, 1}, 0, 2) == X.d(4, 2));
            CHECK(D.d({0, 2}, 0, 0) == X.d(3, 0));
            CHECK(D.d({2, 0}, 1, 0) == X.d(3, 3));
        }
        Multi<ModCat> C = total_decalage(constant(ModCat{Z}, 2, 5), 2);
        for (auto& [k, m] : C.faces) CHECK(m == Matrix::identity(Z, 2));
        for (auto& [k, m] : C.degens) CHECK(m == Matrix::identity(Z, 2));
    }
    SUBCASE("augmented input keeps the corner") {
        Rng rng = trial_rng(16, 9);
        SMod X = free_linearize(augment_to_point(random_small_sset(rng, 3)), F2);
        Multi<ModCat> D = total_decalage(X, 1);
        CHECK(D.shape.corner);
        CHECK(valid(D));
        CHECK(D.d({0, -1}, 0, 0) == X.d(0, 0));
    }
    SUBCASE("insufficient truncation is rejected") {
        CHECK_THROWS_AS(total_decalage(constant(ModCat{Z}, 1, 4), 2), std::invalid_argument);
    }
    SUBCASE("tot of Dec(X) is the cubical cylinder of X") {
        for (int t = 0; t < 3; ++t) {
            Rng rng = trial_rng(17, t);
            SMod X = random_smod(rng, F3, 5);
            Multi<ModCat> lhs = tot(total_decalage(X, 2));
            CHECK(lhs == cubical_cyl_of(truncate(X, 2)).obj);
        }
    }
}

TEST_CASE("(Tot, Dec) transposition") {
    for (int t = 0; t < 4; ++t) {
        Rng rng = trial_rng(18, t);
        Omega<ModCat> D = random_omega(rng, F3, 2);
        Multi<ModCat> Psi = psi(D);
        Multi<ModCat> T = tot(Psi);
        // F = a change of basis of Tot, then the retraction onto the cubical cylinder
        Conjugated c = random_conjugate(rng, T);
        Retraction<ModCat> ret = cyl_retraction(D);
        struct Case {
            Multi<ModCat> target;
            MultiMap<ModCat> F;
        };
        for (const Case& cs : {Case{c.obj, c.iso.fwd}, Case{ret.cubical.obj, ret.alpha}}) {
            REQUIRE(natural(T, cs.target, cs.F));
            auto G = adjunction_transpose(Psi, cs.F, 2);
            CHECK(G.size() == 2 + 3 + 4);
            CHECK(check_transpose_natural(Psi, cs.target, G, 2).empty());
            CHECK(maps_equal(T.cat, adjunction_untranspose(Psi, G, 2), cs.F));
            auto G2 = adjunction_transpose(Psi, adjunction_untranspose(Psi, G, 2), 2);
            bool same = G2.size() == G.size();
            for (auto& [k, m] : G) same = same && G2.count(k) && G2.at(k) == m;
            CHECK(same);
        }
        // a non-natural family is caught
        auto G = adjunction_transpose(Psi, c.iso.fwd, 2);
        Index probe{0, 1};
        if (Psi.ob(probe) > 0 && c.obj.ob(2) > 0) {
            Matrix bad = G.at(probe);
            bad.add_to(0, 0, 1);
            G[probe] = bad;
            CHECK_FALSE(check_transpose_natural(Psi, c.obj, G, 2).empty());
        }
        // zero F gives zero G
        MultiMap<ModCat> zero;
        for (int n = 0; n <= 2; ++n) zero.comp[{n}] = Matrix(F3, 0, T.ob(n));
        for (auto& [k, m] : adjunction_transpose(Psi, zero, 2)) CHECK(m.is_zero());
    }
    Rng rng = trial_rng(18, 9);
    CHECK_THROWS_AS(adjunction_transpose(psi(random_omega(rng, Z, 1)), MultiMap<ModCat>{}, 2), std::invalid_argument);
}

TEST_CASE("Cyl: explicit formulas, degenerate diagrams and inclusions") {
    for (int t = 0; t < 4; ++t) {
        Rng rng = trial_rng(19, t);
        Omega<ModCat> D = random_omega(rng, t % 2 ? F2 : Z, 3);
        REQUIRE(omega_problems(D).empty());
        Cylinder<ModCat> C = simp_cyl(D);
        CHECK(valid(C.obj));
        CHECK(C.obj == cyl_by_formula(D, false));
        CHECK(natural(D.Y, C.obj, C.from_target));
        CHECK(natural(C.base, C.obj, C.from_base));
        Cylinder<ModCat> P = simp_cyl_prime(D);
        CHECK(valid(P.obj));
        CHECK(P.obj == cyl_by_formula(D, true));
        CHECK(natural(D.Y, P.obj, P.from_target));
        CHECK(upsilon(simp_cone_prime(D.X, D.Y, D.f)) == simp_cone(upsilon(D.X), upsilon(D.Y), D.f));
        CHECK(upsilon(upsilon(C.obj)) == C.obj);
    }
    ModCat cat{F3};
    Multi<ModCat> zero = constant(cat, 0, 3);
    MultiMap<ModCat> zmap = const_map(Matrix(F3, 0, 0), 3);
    SUBCASE("base only") {
        Cylinder<ModCat> C = simp_cyl(Omega<ModCat>{zero, zero, zmap, 2, const_map(Matrix(F3, 2, 0), 3)});
        CHECK(C.obj == constant(cat, 2, 3));
        CHECK(maps_equal(cat, C.from_base, identity_map(constant(cat, 2, 3))));
    }
    SUBCASE("target only") {
        Rng rng = trial_rng(19, 7);
        SMod Y = random_smod(rng, F3, 3);
        MultiMap<ModCat> f;
        for (int n = 0; n <= 3; ++n) f.comp[{n}] = Matrix(F3, Y.ob(n), 0);
        Cylinder<ModCat> C = simp_cyl(Omega<ModCat>{zero, Y, f, 0, zmap});
        CHECK(C.obj == Y);
        CHECK(simp_cyl_prime(Omega<ModCat>{zero, Y, f, 0, zmap}).obj == Y);
    }
}

TEST_CASE("Cyl of constant diagrams against Cyl' with the roles swapped") {
    for (int t = 0; t < 4; ++t) {
        Rng rng = trial_rng(20, t);
        ModCat cat{F3};
        std::size_t x = uniform(rng, 0, 3), y = uniform(rng, 0, 3), z = uniform(rng, 0, 3);
        Matrix f = random_matrix(rng, F3, y, x), g = random_matrix(rng, F3, z, x);
        const int N = 3;
        Omega<ModCat> A{constant(cat, x, N), constant(cat, y, N), const_map(f, N), z, const_map(g, N)};
        Omega<ModCat> B{constant(cat, x, N), constant(cat, z, N), const_map(g, N), y, const_map(f, N)};
        Cylinder<ModCat> C = simp_cyl(A), P = simp_cyl_prime(B);
        MultiMap<ModCat> rev;
        for (int n = 0; n <= N; ++n) {
            std::vector<std::size_t> parts{y};
            for (int k = 0; k < n; ++k) parts.push_back(x);
            parts.push_back(z);
            rev.comp[{n}] = reversal(cat, parts);
        }
        CHECK(natural(C.obj, P.obj, rev));
        CHECK(invertible(rev));
        CHECK(maps_equal(cat, compose_maps(cat, rev, C.from_target), P.from_base));
        CHECK(maps_equal(cat, compose_maps(cat, rev, C.from_base), P.from_target));
    }
}

TEST_CASE("cubical cylinder") {
    for (int t = 0; t < 4; ++t) {
        Rng rng = trial_rng(21, t);
        const Ring& r = t % 2 ? F3 : Z;
        SMod X = random_smod(rng, r, 5), Y = random_smod(rng, r, 5);
        // ~Cyl(X): n + 2 copies of X_n
        CubicalCylinder<ModCat> cx = cubical_cyl_of(X);
        CHECK(valid(cx.obj));
        for (int n = 0; n <= 5; ++n) CHECK(cx.obj.ob(n) == (n + 2) * X.ob(n));
        // f, g out of a product
        SSet S = random_small_sset(rng, 5), T = random_small_sset(rng, 5);
        SMod P = free_linearize(product(S, T), r), A = free_linearize(S, r), B = free_linearize(T, r);
        auto f = linearize_map(r, projection(S, T, 0)), g = linearize_map(r, projection(S, T, 1));
        CubicalCylinder<ModCat> c = cubical_cyl(P, A, B, f, g);
        CHECK(valid(c.obj));
        CHECK(natural(A, c.obj, c.from_target));
        CHECK(natural(B, c.obj, c.from_other));
        // against Tot of the biaugmented object built from Dec
        CHECK(tot(cubical_biaugmented(P, A, B, f, g, 2)) == truncate(c.obj, 2));
        // j_Y f ~ j_Z g through ~Cyl of (id, id, id) -> (f, id, g)
        SimplicialHomotopy<ModCat> h = cubical_square_homotopy(P, c, f, g);
        CHECK(verify_simplicial_homotopy(P, c.obj, compose_maps(P.cat, c.from_target, f),
                                         compose_maps(P.cat, c.from_other, g), h));
        (void)Y;
    }
    SUBCASE("constant diagrams: ~Cyl = Cyl") {
        Rng rng = trial_rng(21, 9);
        ModCat cat{F3};
        std::size_t x = 2, y = 3, z = 1;
        Matrix f = random_matrix(rng, F3, y, x), g = random_matrix(rng, F3, z, x);
        const int N = 3;
        auto cf = const_map(f, N), cg = const_map(g, N);
        CubicalCylinder<ModCat> c = cubical_cyl(constant(cat, x, N), constant(cat, y, N), constant(cat, z, N), cf, cg);
        Cylinder<ModCat> C = simp_cyl(Omega<ModCat>{constant(cat, x, N), constant(cat, y, N), cf, z, cg});
        CHECK(c.obj == C.obj);
        CHECK(maps_equal(cat, c.from_target, C.from_target));
        CHECK(maps_equal(cat, c.from_other, C.from_base));
    }
}

TEST_CASE("homotopies correspond to maps out of the cubical cylinder") {
    for (int t = 0; t < 3; ++t) {
        Rng rng = trial_rng(22, t);
        SMod X = random_smod(rng, F3, 4);
        // a homotopy from the extra degeneracy of the décalage
        Decalage<ModCat> dl = dec_lower(X);
        ExtraContraction<ModCat> ec = contraction_from_extra(dl.aug, Side::Lower, dl.extra);
        const Multi<ModCat>& DX = ec.X;
        CubicalCylinder<ModCat> c = cubical_cyl_of(DX);
        MultiMap<ModCat> H = cubical_from_homotopy(DX, DX, ec.h);
        CHECK(natural(truncate(c.obj, DX.top() - 1), DX, H));
        auto back = homotopy_from_cubical(DX, H, DX.top() - 1);
        CHECK(!back.h.empty());
        for (auto& [k, m] : back.h) CHECK(ec.h.at(k.first, k.second) == m);
    }
}

TEST_CASE("retraction of Cyl onto ~Cyl") {
    for (int t = 0; t < 4; ++t) {
        Rng rng = trial_rng(23, t);
        const int N = t < 2 ? 3 : 4;
        Omega<ModCat> D = random_omega(rng, t % 2 ? F2 : Z, N);
        Cylinder<ModCat> C = simp_cyl(D);
        Retraction<ModCat> r = cyl_retraction(D);
        CHECK(valid(r.cubical.obj));
        CHECK(natural(C.obj, r.cubical.obj, r.alpha));
        CHECK(natural(r.cubical.obj, C.obj, r.beta));
        CHECK(maps_equal(C.obj.cat, compose_maps(C.obj.cat, r.beta, r.alpha), identity_map(C.obj)));
        CHECK(maps_equal(C.obj.cat, compose_maps(C.obj.cat, r.alpha, C.from_target), r.cubical.from_target));
        CHECK(maps_equal(C.obj.cat, compose_maps(C.obj.cat, r.beta, r.cubical.from_target), C.from_target));
        CHECK(maps_equal(C.obj.cat, compose_maps(C.obj.cat, r.alpha, C.from_base), r.cubical.from_other));
        // the square i_Y f ~ i_{X_{-1}} ε
        SimplicialHomotopy<ModCat> h;
        CHECK_NOTHROW(h = cyl_square_homotopy(D));
        Shape sh = Shape::simplicial(N);
        CHECK(verify_simplicial_homotopy(D.X, C.obj, compose_maps(C.obj.cat, C.from_target, truncate_map(D.f, sh)),
                                         compose_maps(C.obj.cat, C.from_base, truncate_map(D.eps, sh)), h));
    }
}

TEST_CASE("universal map out of Cyl") {
    for (int t = 0; t < 4; ++t) {
        Rng rng = trial_rng(24, t);
        MultiMap<ModCat> epsY;
        Omega<ModCat> D = random_omega(rng, F3, 3, &epsY);
        ModCat cat{F3};
        Cylinder<ModCat> C = simp_cyl(D);
        Multi<ModCat> B = constant(cat, D.base, 3);
        MultiMap<ModCat> H = cyl_universal(D, D.base, cat.id(D.base), epsY);
        CHECK(natural(C.obj, B, H));
        CHECK(maps_equal(cat, compose_maps(cat, H, C.from_base), identity_map(B)));
        CHECK(maps_equal(cat, compose_maps(cat, H, C.from_target), epsY));
        // the augmented cylinder: H_0 agrees with the base component
        for (int n = 0; n <= 3; ++n)
            CHECK(H.at(n) == H.at(0) * C.obj.act({n}, 0, MonotoneMap(0, n, {n})));
        // postcomposition
        std::size_t t2 = uniform(rng, 0, 3);
        Matrix phi = random_matrix(rng, F3, t2, D.base);
        MultiMap<ModCat> rho2;
        for (int n = 0; n <= 3; ++n) rho2.comp[{n}] = phi * epsY.at(n);
        CHECK(maps_equal(cat, cyl_universal(D, t2, phi, rho2), compose_maps(cat, const_map(phi, 3), H)));
        // T = 0
        MultiMap<ModCat> z;
        for (int n = 0; n <= 3; ++n) z.comp[{n}] = Matrix(F3, 0, D.Y.ob(n));
        for (auto& [k, m] : cyl_universal(D, 0, Matrix(F3, 0, D.base), z).comp) CHECK(m.rows() == 0);
        // a square that does not commute
        Matrix bad = cat.id(D.base);
        bad.add_to(0, 0, 1);
        if (bad * D.eps.at(0) != D.eps.at(0)) {
            CHECK_THROWS_AS(cyl_universal(D, D.base, bad, epsY), std::invalid_argument);
        }
    }
}

TEST_CASE("iterated totals") {
    SUBCASE("concentrated in one index") {
        ModCat cat{F2};
        // face-only, so a single nonzero object is consistent
        Multi<ModCat> T(cat, Shape::multi_augmented(3, 2));
        T.semi = true;
        for (const Index& idx : T.shape.indices()) T.set_ob(idx, idx == Index{0, 1, -1} ? 2 : 0);
        for (const Index& idx : T.shape.indices())
            for (int a = 0; a < 3; ++a)
                for (int k = 0; k <= idx[a]; ++k) {
                    if (T.has_face(idx, a, k)) T.set_d(idx, a, k, Matrix(F2, T.ob(shifted(idx, a, -1)), T.ob(idx)));
                    if (T.has_degen(idx, a, k)) T.set_s(idx, a, k, Matrix(F2, T.ob(shifted(idx, a, 1)), T.ob(idx)));
                }
        REQUIRE(valid(T));
        TripleCoherence<ModCat> c = tot3(T);
        CHECK(c.total == c.via_first);
        CHECK(c.total == c.via_last);
        CHECK(maps_equal(cat, c.to_first, identity_map(c.total)));
    }
    SUBCASE("random cubes") {
        for (int t = 0; t < 3; ++t) {
            Rng rng = trial_rng(25, t);
            Cube<ModCat> K = random_cube(rng, F2, 2);
            REQUIRE(cube_problems(K).empty());
            Multi<ModCat> T = cube_object(K);
            REQUIRE(valid(T));
            TripleCoherence<ModCat> c = tot3(T);
            CHECK(valid(c.total));
            CHECK(valid(tot_partial(T, 0)));
            CHECK(valid(tot_partial(T, 2)));
            CHECK(natural(c.total, c.via_first, c.to_first));
            CHECK(natural(c.total, c.via_last, c.to_last));
            CHECK(invertible(c.to_first));
            CHECK(invertible(c.to_last));
        }
    }
}

TEST_CASE("cube lemma") {
    for (int t = 0; t < 3; ++t) {
        Rng rng = trial_rng(26, t);
        Cube<ModCat> K = random_cube(rng, t == 0 ? Z : F3, 2);
        CubeLemma<ModCat> L = cube_lemma(K);
        CHECK(valid(L.cyl_of_primes));
        CHECK(valid(L.prime_of_cyls));
        CHECK(natural(L.cyl_of_primes, L.prime_of_cyls, L.iso));
        CHECK(invertible(L.iso));
        // same components as the iterated totals of the cube object
        TripleCoherence<ModCat> c = tot3(cube_object(K));
        for (int n = 0; n <= 2; ++n) {
            CHECK(L.cyl_of_primes.ob(n) == c.via_first.ob(n));
            CHECK(L.prime_of_cyls.ob(n) == c.via_last.ob(n));
        }
    }
    bool rejected = false;
    for (int t = 10; t < 20 && !rejected; ++t) {
        Rng rng = trial_rng(26, t);
        Cube<ModCat> K = random_cube(rng, Z, 1);
        K.r = K.r + Matrix::identity(Z, std::max(K.r.rows(), K.r.cols())).block(0, 0, K.r.rows(), K.r.cols());
        if (cube_problems(K).empty()) continue;
        CHECK_THROWS_AS(cube_lemma(K), std::invalid_argument);
        rejected = true;
    }
    CHECK(rejected);
}

TEST_CASE("bisimplicial cylinders") {
    SUBCASE("the diagonal of Cyl^(1) is the cubical cylinder") {
        for (int t = 0; t < 3; ++t) {
            Rng rng = trial_rng(27, t);
            const Ring& r = t % 2 ? F3 : Z;
            SSet S = random_small_sset(rng, 3), T = random_small_sset(rng, 3);
            SMod P = free_linearize(product(S, T), r), A = free_linearize(S, r), B = free_linearize(T, r);
            auto f = linearize_map(r, projection(S, T, 0)), g = linearize_map(r, projection(S, T, 1));
            Multi<ModCat> W = cyl_first(P, A, B, f, g);
            CHECK(valid(W));
            CHECK(diagonal(W) == cubical_cyl(P, A, B, f, g).obj);
            CHECK(valid(cyl_second(P, A, B, f, g)));
        }
    }
    SUBCASE("interchange") {
        for (int t = 0; t < 4; ++t) {
            Rng rng = trial_rng(28, t);
            ModCat cat{F3};
            Nine<ModCat> D = random_nine(rng, F3);
            REQUIRE(nine_problems(cat, D).empty());
            Interchange<ModCat> I = cyl_interchange(cat, D, 2);
            CHECK(valid(I.first));
            CHECK(valid(I.second));
            CHECK(natural(I.first, I.second, I.theta));
            CHECK(invertible(I.theta));
            CHECK(natural(I.rows_src, I.first, I.phi));
            CHECK(natural(I.rows_src, I.second, I.rows_incl));
            CHECK(natural(I.cols_src, I.first, I.cols_incl));
            CHECK(natural(I.cols_src, I.second, I.varphi));
            CHECK(maps_equal(cat, compose_maps(cat, I.theta, I.phi), I.rows_incl));
            CHECK(maps_equal(cat, compose_maps(cat, I.theta, I.cols_incl), I.varphi));
        }
        ModCat cat{F3};
        Nine<ModCat> zero{};
        for (auto* m : {&zero.g1, &zero.f1, &zero.g, &zero.f, &zero.g2, &zero.f2, &zero.alpha, &zero.beta, &zero.gamma,
                        &zero.alpha2, &zero.beta2, &zero.gamma2})
            *m = Matrix(F3, 0, 0);
        Interchange<ModCat> I = cyl_interchange(cat, zero, 2);
        for (auto& [k, m] : I.theta.comp) CHECK(m.rows() == 0);
        Rng rng = trial_rng(28, 9);
        Nine<ModCat> bad = random_nine(rng, F3);
        bad.X = bad.X1 = bad.X2 = 2;
        bad.beta = bad.beta2 = Matrix::identity(F3, 2);
        bad.f = Matrix(F3, bad.Y, 2);
        bad.g = Matrix(F3, bad.Z, 2);
        bad.f1 = Matrix(F3, bad.Y1, 2);
        bad.g1 = Matrix(F3, bad.Z1, 2);
        bad.f2 = Matrix(F3, bad.Y2, 2);
        bad.g2 = Matrix(F3, bad.Z2, 2);
        bad.Y1 = bad.Y1 == 0 ? 1 : bad.Y1;
        bad.f1 = Matrix::identity(F3, bad.Y1 * 2).block(0, 0, bad.Y1, 2);
        CHECK_FALSE(nine_problems(cat, bad).empty());
        CHECK_THROWS_AS(cyl_interchange(cat, bad, 2), std::invalid_argument);
    }
}

TEST_CASE("the plain (s_0)^k section is not simplicial") {
    ModCat cat{Z};
    SMod X = free_linearize(standard_simplex(1, 2), Z);
    MultiMap<ModCat> eps;
    for (int n = 0; n <= 2; ++n) eps.comp[{n}] = Matrix(Z, 0, X.ob(n));
    Omega<ModCat> D{X, X, identity_map(X), 0, eps};
    Retraction<ModCat> r = cyl_retraction(D);
    MultiMap<ModCat> plain;
    for (int n = 0; n <= 2; ++n) {
        std::vector<Matrix> ms{cat.id(X.ob(n))};
        for (int k = 1; k <= n; ++k) {
            std::vector<int> v;
            for (int i = 0; i <= n; ++i) v.push_back(std::max(0, i - k));
            ms.push_back(X.act({n - k}, 0, MonotoneMap(n, n - k, v)));
        }
        ms.push_back(cat.id(0));
        plain.comp[{n}] = block_diagonal(cat, ms);
    }
    Multi<ModCat> C = simp_cyl(D).obj;
    CHECK(maps_equal(cat, compose_maps(cat, r.beta, plain), identity_map(C)));
    auto bad = check_natural(C, r.cubical.obj, plain);
    REQUIRE(!bad.empty());
    CHECK(bad.front().idx == Index{2});
    CHECK(check_natural(C, r.cubical.obj, r.alpha).empty());
}
