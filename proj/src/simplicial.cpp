#include "descent/simplicial.hpp"

#include <functional>

namespace descent {

std::vector<MonotoneMap> dold_puppe_components(int n) {
    std::vector<MonotoneMap> out;
    for (int m = n; m >= 0; --m)
        for (auto& s : surjections(n, m)) out.push_back(s);
    return out;
}

std::pair<MonotoneMap, MonotoneMap> epi_mono(const MonotoneMap& theta) {
    std::vector<int> image;
    for (int x : theta.v)
        if (image.empty() || image.back() != x) image.push_back(x);
    int k = static_cast<int>(image.size()) - 1;
    std::vector<int> e;
    int pos = 0;
    for (int i = 0; i <= theta.n; ++i) {
        while (image[pos] != theta.v[i]) ++pos;
        e.push_back(pos);
    }
    return {MonotoneMap(theta.n, k, e), MonotoneMap(k, theta.m, image)};
}

SMod free_linearize(const SSet& S, const Ring& r) {
    return map_values(
        S, ModCat{r}, [](std::size_t n) { return n; }, [&r](const FinMap& f) { return linearize(r, f); });
}

namespace {

// simplicial set whose level-n elements are elems[n]; `pull(x, θ)` gives x∘θ as an element of the smaller level
template <class E>
SSet build_sset(const std::vector<std::vector<E>>& elems, const std::function<E(const E&, const MonotoneMap&)>& pull) {
    const int N = static_cast<int>(elems.size()) - 1;
    SSet S(SetCat{}, Shape::simplicial(N));
    for (int n = 0; n <= N; ++n) S.set_ob(n, elems[n].size());
    auto lookup = [&](int n, const E& x) {
        auto it = std::find(elems[n].begin(), elems[n].end(), x);
        if (it == elems[n].end()) throw std::logic_error("simplicial set not closed under structure maps");
        return static_cast<std::size_t>(it - elems[n].begin());
    };
    for (int n = 0; n <= N; ++n) {
        for (int i = 0; n > 0 && i <= n; ++i) {
            FinMap f{elems[n].size(), elems[n - 1].size(), {}};
            for (const E& x : elems[n]) f.v.push_back(lookup(n - 1, pull(x, MonotoneMap::face(n, i))));
            S.set_d(n, i, f);
        }
        for (int j = 0; n < N && j <= n; ++j) {
            FinMap f{elems[n].size(), elems[n + 1].size(), {}};
            for (const E& x : elems[n]) f.v.push_back(lookup(n + 1, pull(x, MonotoneMap::degeneracy(n, j))));
            S.set_s(n, j, f);
        }
    }
    return S;
}

std::function<MonotoneMap(const MonotoneMap&, const MonotoneMap&)> precompose() {
    return [](const MonotoneMap& x, const MonotoneMap& t) { return compose(x, t); };
}

}  // namespace

SSet standard_simplex(int k, int N) {
    std::vector<int> all(k + 1);
    for (int v = 0; v <= k; ++v) all[v] = v;
    return simplicial_subset(k, {all}, N);
}

SSet simplicial_subset(int k, const std::vector<std::vector<int>>& generators, int N) {
    std::vector<std::vector<MonotoneMap>> elems(N + 1);
    for (int n = 0; n <= N; ++n)
        for (auto& x : all_monotone(n, k)) {
            for (auto& g : generators) {
                bool inside = std::all_of(x.v.begin(), x.v.end(),
                                          [&](int v) { return std::find(g.begin(), g.end(), v) != g.end(); });
                if (inside) {
                    elems[n].push_back(x);
                    break;
                }
            }
        }
    return build_sset<MonotoneMap>(elems, precompose());
}

SSet sphere_model(int k, int N) {
    // the basepoint is encoded as the empty map
    std::vector<std::vector<MonotoneMap>> elems(N + 1);
    MonotoneMap base(-1, -1, {});
    for (int n = 0; n <= N; ++n) {
        elems[n].push_back(base);
        for (auto& s : surjections(n, k)) elems[n].push_back(s);
    }
    std::function<MonotoneMap(const MonotoneMap&, const MonotoneMap&)> pull = [base](const MonotoneMap& x,
                                                                                     const MonotoneMap& t) {
        if (x.m < 0) return base;
        MonotoneMap y = compose(x, t);
        return y.is_surjective() ? y : base;
    };
    return build_sset<MonotoneMap>(elems, pull);
}

FinMap product_map(const FinMap& f, const FinMap& g) {
    FinMap m{f.src * g.src, f.tgt * g.tgt, {}};
    for (std::size_t x = 0; x < f.src; ++x)
        for (std::size_t y = 0; y < g.src; ++y) m.v.push_back(f.v[x] * g.tgt + g.v[y]);
    return m;
}

Multi<SetCat> external_product(const SSet& a, const SSet& b) {
    return external(
        a, b, [](std::size_t x, std::size_t y) { return x * y; }, product_map);
}

Multi<ModCat> external_tensor(const SMod& a, const SMod& b) {
    return external(
        a, b, [](std::size_t x, std::size_t y) { return x * y; }, [](const Matrix& f, const Matrix& g) { return kron(f, g); });
}

SSet product(const SSet& a, const SSet& b) {
    const int N = std::min(a.top(), b.top());
    SSet S(SetCat{}, Shape::simplicial(N));
    for (int n = 0; n <= N; ++n) S.set_ob(n, a.ob(n) * b.ob(n));
    auto pair_map = product_map;
    for (int n = 0; n <= N; ++n) {
        for (int i = 0; n > 0 && i <= n; ++i) S.set_d(n, i, pair_map(a.d(n, i), b.d(n, i)));
        for (int j = 0; n < N && j <= n; ++j) S.set_s(n, j, pair_map(a.s(n, j), b.s(n, j)));
    }
    return S;
}

}  // namespace descent
