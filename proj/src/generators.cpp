#include "descent/generators.hpp"

namespace descent {

Unimodular random_unimodular(Rng& rng, const Ring& r, std::size_t n, int steps) {
    Unimodular u{Matrix::identity(r, n), Matrix::identity(r, n)};
    if (n < 2) {
        if (n == 1 && uniform(rng, 0, 1)) u = {u.fwd.scaled(-1), u.inv.scaled(-1)};
        return u;
    }
    for (int s = 0; s < steps; ++s) {
        std::size_t i = uniform(rng, 0, static_cast<int>(n) - 1), j = uniform(rng, 0, static_cast<int>(n) - 2);
        if (j >= i) ++j;
        int c = uniform(rng, -2, 2);
        if (c == 0) continue;
        // fwd <- E fwd, inv <- inv E^{-1}, E = I + c e_ij
        u.fwd.add_row_multiple(i, j, c);
        u.inv.add_col_multiple(j, i, -c);
    }
    return u;
}

Conjugated random_conjugate(Rng& rng, const SMod& X) {
    const ModCat& cat = X.cat;
    Conjugated c{X, {}};
    for (auto& [idx, o] : X.objs) {
        Unimodular u = random_unimodular(rng, cat.ring, o);
        c.iso.fwd.comp[idx] = u.fwd;
        c.iso.inv.comp[idx] = u.inv;
    }
    auto conj = [&](std::map<GenKey, Matrix>& maps, bool face) {
        for (auto& [k, m] : maps) {
            Index to = shifted(k.idx, k.dir, face ? -1 : 1);
            m = c.iso.fwd.at(to) * m * c.iso.inv.at(k.idx);
        }
    };
    conj(c.obj.faces, true);
    conj(c.obj.degens, false);
    return c;
}

MultiMap<ModCat> transport(const ModCat& cat, const MultiMap<ModCat>& f, const LevelIso<ModCat>& src,
                           const LevelIso<ModCat>& tgt) {
    MultiMap<ModCat> r;
    for (auto& [idx, m] : f.comp)
        if (src.inv.comp.count(idx) && tgt.fwd.comp.count(idx))
            r.comp[idx] = cat.compose(tgt.fwd.at(idx), cat.compose(m, src.inv.at(idx)));
    return r;
}

SSet random_small_sset(Rng& rng, int N, bool tiny) {
    switch (uniform(rng, 0, tiny ? 2 : 4)) {
        case 0:
            return standard_simplex(0, N);
        case 1:
            return simplicial_subset(1, {{0}, {1}}, N);  // two points
        case 2:
            return standard_simplex(1, N);
        case 3:
            return simplicial_subset(2, {{0, 1}, {1, 2}}, N);  // horn
        default:
            return simplicial_subset(2, {{0, 1}, {1, 2}, {0, 2}}, N);  // boundary of the 2-simplex
    }
}

SSet augment_to_point(const SSet& S) {
    SSet A(SetCat{}, Shape::augmented(S.top()));
    A.semi = S.semi;
    A.objs = S.objs;
    A.faces = S.faces;
    A.degens = S.degens;
    A.set_ob(-1, 1);
    A.set_d(0, 0, FinMap{S.ob(0), 1, std::vector<std::size_t>(S.ob(0), 0)});
    return A;
}

MultiMap<SetCat> projection(const SSet& S, const SSet& T, int factor) {
    MultiMap<SetCat> p;
    const int N = std::min(S.top(), T.top());
    for (int n = 0; n <= N; ++n) {
        std::size_t a = S.ob(n), b = T.ob(n);
        FinMap f{a * b, factor == 0 ? a : b, {}};
        for (std::size_t x = 0; x < a; ++x)
            for (std::size_t y = 0; y < b; ++y) f.v.push_back(factor == 0 ? x : y);
        p.comp[{n}] = f;
    }
    return p;
}

MultiMap<ModCat> linearize_map(const Ring& r, const MultiMap<SetCat>& f) {
    MultiMap<ModCat> m;
    for (auto& [idx, g] : f.comp) m.comp[idx] = linearize(r, g);
    return m;
}

namespace {

// v·(1 ... 1): Z[S]_n -> base, a map into the constant object
MultiMap<ModCat> ones_map(const Ring& r, const SMod& X, const Matrix& v) {
    MultiMap<ModCat> e;
    for (int n = 0; n <= X.top(); ++n) {
        Matrix ones(r, 1, X.ob(n));
        for (std::size_t j = 0; j < X.ob(n); ++j) ones.set(0, j, 1);
        e.comp[{n}] = v * ones;
    }
    return e;
}

MultiMap<ModCat> map_after(const ModCat& cat, const MultiMap<ModCat>& f, const LevelIso<ModCat>& src) {
    LevelIso<ModCat> id;
    for (auto& [idx, m] : f.comp) id.fwd.comp[idx] = cat.id(cat.tgt(m));
    return transport(cat, f, src, id);
}

}  // namespace

Omega<ModCat> random_omega(Rng& rng, const Ring& r, int N, MultiMap<ModCat>* target_aug) {
    ModCat cat{r};
    SSet S = random_small_sset(rng, N), T = random_small_sset(rng, N);
    SMod X = free_linearize(product(S, T), r), Y = free_linearize(S, r);
    auto f = linearize_map(r, projection(S, T, 0));
    std::size_t b = uniform(rng, 1, 2);
    Matrix v = random_matrix(rng, r, b, 1);
    auto eps = ones_map(r, X, v);
    Conjugated cx = random_conjugate(rng, X), cy = random_conjugate(rng, Y);
    if (target_aug) *target_aug = map_after(cat, ones_map(r, Y, v), cy.iso);
    return Omega<ModCat>{cx.obj, cy.obj, transport(cat, f, cx.iso, cy.iso), b, map_after(cat, eps, cx.iso)};
}

SMod random_biaugmented(Rng& rng, const Ring& r, int N) {
    SMod A = free_linearize(augment_to_point(random_small_sset(rng, N)), r);
    SMod B = free_linearize(augment_to_point(random_small_sset(rng, N)), r);
    return random_conjugate(rng, external_tensor(A, B)).obj;
}

Cube<ModCat> random_cube(Rng& rng, const Ring& r, int N) {
    ModCat cat{r};
    SSet S = random_small_sset(rng, N), T = random_small_sset(rng, N), P = standard_simplex(0, N);
    SMod X = free_linearize(product(S, T), r), Y = free_linearize(S, r), U = free_linearize(T, r),
         V = free_linearize(P, r);
    auto q = linearize_map(r, projection(S, T, 0)), g = linearize_map(r, projection(S, T, 1));
    MultiMap<ModCat> f, p;
    for (int n = 0; n <= N; ++n) {
        f.comp[{n}] = linearize(r, FinMap{S.ob(n), 1, std::vector<std::size_t>(S.ob(n), 0)});
        p.comp[{n}] = linearize(r, FinMap{T.ob(n), 1, std::vector<std::size_t>(T.ob(n), 0)});
    }
    std::size_t bx = uniform(rng, 1, 2), by = uniform(rng, 1, 2), bu = uniform(rng, 1, 2);
    Matrix vb = random_matrix(rng, r, bx, 1), h = random_matrix(rng, r, bu, bx), rr = random_matrix(rng, r, by, bx);
    auto beta = ones_map(r, X, vb), alpha = ones_map(r, Y, rr * vb), gamma = ones_map(r, U, h * vb);
    Conjugated cx = random_conjugate(rng, X), cy = random_conjugate(rng, Y), cu = random_conjugate(rng, U),
               cv = random_conjugate(rng, V);
    Cube<ModCat> K;
    K.X = cx.obj;
    K.Y = cy.obj;
    K.U = cu.obj;
    K.V = cv.obj;
    K.bx = bx;
    K.by = by;
    K.bu = bu;
    K.g = transport(cat, g, cx.iso, cu.iso);
    K.q = transport(cat, q, cx.iso, cy.iso);
    K.f = transport(cat, f, cy.iso, cv.iso);
    K.p = transport(cat, p, cu.iso, cv.iso);
    K.beta = map_after(cat, beta, cx.iso);
    K.alpha = map_after(cat, alpha, cy.iso);
    K.gamma = map_after(cat, gamma, cu.iso);
    K.h = h;
    K.r = rr;
    return K;
}

}  // namespace descent
