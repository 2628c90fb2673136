#pragma once

#include <string>
#include <utility>
#include <vector>

namespace descent {

// nondecreasing map [n] -> [m]; n = -1 is the empty ordinal
struct MonotoneMap {
    int n = -1, m = -1;
    std::vector<int> v;

    MonotoneMap() = default;
    MonotoneMap(int n, int m, std::vector<int> values);

    static MonotoneMap identity(int n);
    static MonotoneMap face(int n, int i);        // [n-1] -> [n], misses i
    static MonotoneMap degeneracy(int n, int j);  // [n+1] -> [n], hits j twice
    static MonotoneMap empty_into(int m);         // [-1] -> [m]

    int operator()(int i) const { return v[i]; }
    bool is_injective() const;
    bool is_surjective() const;
    bool operator==(const MonotoneMap& o) const { return n == o.n && m == o.m && v == o.v; }
    bool operator<(const MonotoneMap& o) const;
    std::string to_string() const;
};

MonotoneMap compose(const MonotoneMap& g, const MonotoneMap& f);  // g after f

// θ = ∂_{faces[0]} ∘ ... ∘ ∂_{faces.back()} ∘ σ_{degens[0]} ∘ ... ∘ σ_{degens.back()}
// faces strictly decreasing, degeneracies strictly increasing
struct FaceDegWord {
    int source = -1, target = -1;
    std::vector<int> faces;
    std::vector<int> degens;
    int middle() const { return source - static_cast<int>(degens.size()); }
};

FaceDegWord epi_mono_factorize(const MonotoneMap& f);
MonotoneMap from_word(const FaceDegWord& w);

// op(θ)(i) = m - θ(n - i)
MonotoneMap op_map(const MonotoneMap& f);
// [n] + [m] = [n + m + 1]
MonotoneMap ordered_sum(const MonotoneMap& a, const MonotoneMap& b);

// σ: [n] -> [r-1] recorded by block sizes m_k = |σ^{-1}(k)| - 1 (each >= -1)
struct TotIndex {
    std::vector<int> blocks;
    int level() const;  // n = sum(m_k + 1) - 1
    bool operator==(const TotIndex& o) const { return blocks == o.blocks; }
    bool operator<(const TotIndex& o) const { return blocks < o.blocks; }
};

// binary case: i_σ with σ^{-1}(1) = {i_σ..n}
inline TotIndex binary_index(int n, int i_sigma) { return TotIndex{{i_sigma - 1, n - i_sigma}}; }

// all σ: [n] -> [r-1], block sizes lexicographically ascending (the component order of total objects)
std::vector<TotIndex> tot_indices(int n, int r);
MonotoneMap tot_index_map(const TotIndex& s);

// for θ: [m] -> [n] and σ on [n], the index of σθ and the restrictions θ_k between blocks
struct Restriction {
    TotIndex index;
    std::vector<MonotoneMap> parts;
};
Restriction tot_restrictions(const MonotoneMap& theta, const TotIndex& sigma);

std::vector<MonotoneMap> all_monotone(int n, int m);
std::vector<MonotoneMap> surjections(int n, int m);

}  // namespace descent
