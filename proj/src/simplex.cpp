#include "descent/simplex.hpp"

#include <stdexcept>

namespace descent {

MonotoneMap::MonotoneMap(int n_, int m_, std::vector<int> values) : n(n_), m(m_), v(std::move(values)) {
    if (n < -1 || m < -1) throw std::invalid_argument("monotone map: ordinals start at -1");
    if (static_cast<int>(v.size()) != n + 1) throw std::invalid_argument("monotone map: wrong number of values");
    for (int i = 0; i <= n; ++i) {
        if (v[i] < 0 || v[i] > m) throw std::invalid_argument("monotone map: value out of range");
        if (i > 0 && v[i] < v[i - 1]) throw std::invalid_argument("monotone map: not monotone");
    }
}

MonotoneMap MonotoneMap::identity(int n) {
    std::vector<int> v(n + 1);
    for (int i = 0; i <= n; ++i) v[i] = i;
    return MonotoneMap(n, n, v);
}

MonotoneMap MonotoneMap::face(int n, int i) {
    if (i < 0 || i > n) throw std::invalid_argument("face index out of range");
    std::vector<int> v;
    for (int k = 0; k <= n; ++k)
        if (k != i) v.push_back(k);
    return MonotoneMap(n - 1, n, v);
}

MonotoneMap MonotoneMap::degeneracy(int n, int j) {
    if (j < 0 || j > n) throw std::invalid_argument("degeneracy index out of range");
    std::vector<int> v;
    for (int k = 0; k <= n + 1; ++k) v.push_back(k <= j ? k : k - 1);
    return MonotoneMap(n + 1, n, v);
}

MonotoneMap MonotoneMap::empty_into(int m) { return MonotoneMap(-1, m, {}); }

bool MonotoneMap::is_injective() const {
    for (int i = 1; i <= n; ++i)
        if (v[i] == v[i - 1]) return false;
    return true;
}

bool MonotoneMap::is_surjective() const {
    if (m == -1) return true;
    if (n == -1) return false;
    if (v[0] != 0 || v[n] != m) return false;
    for (int i = 1; i <= n; ++i)
        if (v[i] - v[i - 1] > 1) return false;
    return true;
}

bool MonotoneMap::operator<(const MonotoneMap& o) const {
    if (n != o.n) return n < o.n;
    if (m != o.m) return m < o.m;
    return v < o.v;
}

std::string MonotoneMap::to_string() const {
    std::string s = "[" + std::to_string(n) + "]->[" + std::to_string(m) + "]:(";
    for (int i = 0; i <= n; ++i) s += (i ? "," : "") + std::to_string(v[i]);
    return s + ")";
}

MonotoneMap compose(const MonotoneMap& g, const MonotoneMap& f) {
    if (f.m != g.n) throw std::invalid_argument("compose: ordinals do not match");
    std::vector<int> v(f.n + 1);
    for (int i = 0; i <= f.n; ++i) v[i] = g.v[f.v[i]];
    return MonotoneMap(f.n, g.m, v);
}

FaceDegWord epi_mono_factorize(const MonotoneMap& f) {
    FaceDegWord w;
    w.source = f.n;
    w.target = f.m;
    std::vector<bool> hit(f.m + 1, false);
    for (int i = 0; i <= f.n; ++i) hit[f.v[i]] = true;
    for (int k = f.m; k >= 0; --k)
        if (!hit[k]) w.faces.push_back(k);
    for (int j = 0; j < f.n; ++j)
        if (f.v[j] == f.v[j + 1]) w.degens.push_back(j);
    return w;
}

MonotoneMap from_word(const FaceDegWord& w) {
    MonotoneMap r = MonotoneMap::identity(w.source);
    int level = w.source;
    for (auto it = w.degens.rbegin(); it != w.degens.rend(); ++it) {
        r = compose(MonotoneMap::degeneracy(level - 1, *it), r);
        --level;
    }
    for (auto it = w.faces.rbegin(); it != w.faces.rend(); ++it) {
        r = compose(MonotoneMap::face(level + 1, *it), r);
        ++level;
    }
    if (level != w.target) throw std::invalid_argument("from_word: word does not reach the target");
    return r;
}

MonotoneMap op_map(const MonotoneMap& f) {
    std::vector<int> v(f.n + 1);
    for (int i = 0; i <= f.n; ++i) v[i] = f.m - f.v[f.n - i];
    return MonotoneMap(f.n, f.m, v);
}

MonotoneMap ordered_sum(const MonotoneMap& a, const MonotoneMap& b) {
    std::vector<int> v = a.v;
    for (int x : b.v) v.push_back(x + a.m + 1);
    return MonotoneMap(a.n + b.n + 1, a.m + b.m + 1, v);
}

int TotIndex::level() const {
    int s = 0;
    for (int b : blocks) s += b + 1;
    return s - 1;
}

namespace {

void tot_rec(int remaining, int r, std::vector<int>& cur, std::vector<TotIndex>& out) {
    if (r == 1) {
        cur.push_back(remaining - 1);
        out.push_back(TotIndex{cur});
        cur.pop_back();
        return;
    }
    // first block grows: Y first, X_{-1} last in the binary case
    for (int size = 0; size <= remaining; ++size) {
        cur.push_back(size - 1);
        tot_rec(remaining - size, r - 1, cur, out);
        cur.pop_back();
    }
}

}  // namespace

std::vector<TotIndex> tot_indices(int n, int r) {
    std::vector<TotIndex> out;
    std::vector<int> cur;
    tot_rec(n + 1, r, cur, out);
    return out;
}

MonotoneMap tot_index_map(const TotIndex& s) {
    std::vector<int> v;
    for (std::size_t k = 0; k < s.blocks.size(); ++k)
        for (int i = 0; i <= s.blocks[k]; ++i) v.push_back(static_cast<int>(k));
    return MonotoneMap(s.level(), static_cast<int>(s.blocks.size()) - 1, v);
}

Restriction tot_restrictions(const MonotoneMap& theta, const TotIndex& sigma) {
    if (theta.m != sigma.level()) throw std::invalid_argument("tot_restrictions: level mismatch");
    const std::size_t r = sigma.blocks.size();
    std::vector<int> start(r);
    int acc = 0;
    for (std::size_t k = 0; k < r; ++k) {
        start[k] = acc;
        acc += sigma.blocks[k] + 1;
    }
    auto block_of = [&](int x) {
        for (std::size_t k = r; k-- > 0;)
            if (x >= start[k] && sigma.blocks[k] >= 0) return k;
        throw std::logic_error("tot_restrictions: value outside blocks");
    };
    std::vector<std::vector<int>> vals(r);
    for (int i = 0; i <= theta.n; ++i) {
        std::size_t k = block_of(theta.v[i]);
        vals[k].push_back(theta.v[i] - start[k]);
    }
    Restriction res;
    for (std::size_t k = 0; k < r; ++k) {
        int len = static_cast<int>(vals[k].size()) - 1;
        res.index.blocks.push_back(len);
        res.parts.emplace_back(len, sigma.blocks[k], vals[k]);
    }
    return res;
}

namespace {

void mono_rec(int i, int n, int lo, int m, std::vector<int>& cur, std::vector<MonotoneMap>& out) {
    if (i > n) {
        out.emplace_back(n, m, cur);
        return;
    }
    for (int x = lo; x <= m; ++x) {
        cur.push_back(x);
        mono_rec(i + 1, n, x, m, cur, out);
        cur.pop_back();
    }
}

}  // namespace

std::vector<MonotoneMap> all_monotone(int n, int m) {
    std::vector<MonotoneMap> out;
    if (m < 0) {
        if (n < 0) out.push_back(MonotoneMap::identity(-1));
        return out;
    }
    std::vector<int> cur;
    mono_rec(0, n, 0, m, cur, out);
    return out;
}

std::vector<MonotoneMap> surjections(int n, int m) {
    std::vector<MonotoneMap> out;
    for (auto& f : all_monotone(n, m))
        if (f.is_surjective()) out.push_back(f);
    return out;
}

}  // namespace descent
