#pragma once

#include "descent/complex.hpp"

#include <string>
#include <vector>

namespace descent {

struct FinMap {
    std::size_t src = 0, tgt = 0;
    std::vector<std::size_t> v;
    bool operator==(const FinMap& o) const { return src == o.src && tgt == o.tgt && v == o.v; }
    bool operator!=(const FinMap& o) const { return !(*this == o); }
};

// A map out of a coproduct of `src` parts into a coproduct of `tgt` parts, sending
// part k into part target[k] by maps[k].
template <class Mor>
struct BlockSpec {
    std::vector<int> target;
    std::vector<Mor> maps;
};

struct SetCat {
    using Obj = std::size_t;
    using Mor = FinMap;
    static constexpr bool additive = false;

    Obj initial() const { return 0; }
    Obj terminal() const { return 1; }
    Mor id(Obj a) const;
    Mor compose(const Mor& g, const Mor& f) const;
    bool equal(const Mor& a, const Mor& b) const { return a == b; }
    bool same(Obj a, Obj b) const { return a == b; }
    Obj src(const Mor& m) const { return m.src; }
    Obj tgt(const Mor& m) const { return m.tgt; }
    Obj coproduct(const std::vector<Obj>& parts) const;
    Mor block(const std::vector<Obj>& src, const std::vector<Obj>& tgt, const BlockSpec<Mor>& spec) const;
    Mor to_terminal(Obj a) const { return FinMap{a, 1, std::vector<std::size_t>(a, 0)}; }
    Mor from_initial(Obj b) const { return FinMap{0, b, {}}; }
    std::string show(Obj a) const { return std::to_string(a); }
};

struct ModCat {
    using Obj = std::size_t;
    using Mor = Matrix;
    static constexpr bool additive = true;
    Ring ring{};

    Obj initial() const { return 0; }
    Obj terminal() const { return 0; }
    Mor id(Obj a) const { return Matrix::identity(ring, a); }
    Mor compose(const Mor& g, const Mor& f) const { return g * f; }
    bool equal(const Mor& a, const Mor& b) const { return a == b; }
    bool same(Obj a, Obj b) const { return a == b; }
    Obj src(const Mor& m) const { return m.cols(); }
    Obj tgt(const Mor& m) const { return m.rows(); }
    Obj coproduct(const std::vector<Obj>& parts) const;
    Mor block(const std::vector<Obj>& src, const std::vector<Obj>& tgt, const BlockSpec<Mor>& spec) const;
    Mor zero(Obj a, Obj b) const { return Matrix(ring, b, a); }
    Mor add(const Mor& a, const Mor& b) const { return a + b; }
    Mor neg(const Mor& a) const { return -a; }
    Mor to_terminal(Obj a) const { return Matrix(ring, 0, a); }
    Mor from_initial(Obj b) const { return Matrix(ring, b, 0); }
    std::string show(Obj a) const { return std::to_string(a); }
};

struct ComplexCat {
    using Obj = BoundedComplex;
    using Mor = ChainMap;
    static constexpr bool additive = true;
    Ring ring{};
    Direction dir = Direction::Chain;

    Obj initial() const { return BoundedComplex::zero(ring, dir); }
    Obj terminal() const { return initial(); }
    Mor id(const Obj& a) const { return ChainMap::identity(a); }
    Mor compose(const Mor& g, const Mor& f) const { return descent::compose(g, f); }
    bool equal(const Mor& a, const Mor& b) const { return a == b; }
    bool same(const Obj& a, const Obj& b) const { return a == b; }
    Obj src(const Mor& m) const { return m.src; }
    Obj tgt(const Mor& m) const { return m.tgt; }
    Obj coproduct(const std::vector<Obj>& parts) const;
    Mor block(const std::vector<Obj>& src, const std::vector<Obj>& tgt, const BlockSpec<Mor>& spec) const;
    Mor zero(const Obj& a, const Obj& b) const { return ChainMap::zero(a, b); }
    Mor add(const Mor& a, const Mor& b) const { return a + b; }
    Mor neg(const Mor& a) const { return negate(a); }
    Mor to_terminal(const Obj& a) const { return ChainMap::zero(a, initial()); }
    Mor from_initial(const Obj& b) const { return ChainMap::zero(initial(), b); }
    std::string show(const Obj& a) const;
};

// free module on a finite set / on a set map
Matrix linearize(const Ring& r, const FinMap& f);

}  // namespace descent
