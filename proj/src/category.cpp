#include "descent/category.hpp"

#include <numeric>
#include <sstream>

namespace descent {

namespace {

template <class Obj, class Size>
std::vector<std::size_t> offsets(const std::vector<Obj>& parts, Size size) {
    std::vector<std::size_t> off(parts.size() + 1, 0);
    for (std::size_t k = 0; k < parts.size(); ++k) off[k + 1] = off[k] + size(parts[k]);
    return off;
}

void check_spec_size(std::size_t nsrc, std::size_t ntgt, const std::vector<int>& target, std::size_t nmaps) {
    if (target.size() != nsrc || nmaps != nsrc) throw std::invalid_argument("block: one target per source part");
    for (int t : target)
        if (t < 0 || static_cast<std::size_t>(t) >= ntgt) throw std::invalid_argument("block: target part out of range");
}

}  // namespace

FinMap SetCat::id(Obj a) const {
    FinMap m{a, a, std::vector<std::size_t>(a)};
    std::iota(m.v.begin(), m.v.end(), 0);
    return m;
}

FinMap SetCat::compose(const Mor& g, const Mor& f) const {
    if (f.tgt != g.src) throw std::invalid_argument("set map compose: mismatch");
    FinMap m{f.src, g.tgt, std::vector<std::size_t>(f.src)};
    for (std::size_t i = 0; i < f.src; ++i) m.v[i] = g.v[f.v[i]];
    return m;
}

std::size_t SetCat::coproduct(const std::vector<Obj>& parts) const {
    return std::accumulate(parts.begin(), parts.end(), std::size_t(0));
}

FinMap SetCat::block(const std::vector<Obj>& src, const std::vector<Obj>& tgt, const BlockSpec<Mor>& spec) const {
    check_spec_size(src.size(), tgt.size(), spec.target, spec.maps.size());
    auto so = offsets(src, [](Obj a) { return a; });
    auto to = offsets(tgt, [](Obj a) { return a; });
    FinMap m{so.back(), to.back(), std::vector<std::size_t>(so.back())};
    for (std::size_t k = 0; k < src.size(); ++k) {
        const FinMap& f = spec.maps[k];
        if (f.src != src[k] || f.tgt != tgt[spec.target[k]]) throw std::invalid_argument("set block: part mismatch");
        for (std::size_t i = 0; i < f.src; ++i) m.v[so[k] + i] = to[spec.target[k]] + f.v[i];
    }
    return m;
}

std::size_t ModCat::coproduct(const std::vector<Obj>& parts) const {
    return std::accumulate(parts.begin(), parts.end(), std::size_t(0));
}

Matrix ModCat::block(const std::vector<Obj>& src, const std::vector<Obj>& tgt, const BlockSpec<Mor>& spec) const {
    check_spec_size(src.size(), tgt.size(), spec.target, spec.maps.size());
    auto so = offsets(src, [](Obj a) { return a; });
    auto to = offsets(tgt, [](Obj a) { return a; });
    Matrix m(ring, to.back(), so.back());
    for (std::size_t k = 0; k < src.size(); ++k) {
        const Matrix& f = spec.maps[k];
        if (f.cols() != src[k] || f.rows() != tgt[spec.target[k]]) throw std::invalid_argument("module block: part mismatch");
        m.add_block(to[spec.target[k]], so[k], f);
    }
    return m;
}

BoundedComplex ComplexCat::coproduct(const std::vector<Obj>& parts) const {
    BoundedComplex c = initial();
    for (const auto& p : parts) c = direct_sum(c, p);
    return c;
}

ChainMap ComplexCat::block(const std::vector<Obj>& src, const std::vector<Obj>& tgt, const BlockSpec<Mor>& spec) const {
    check_spec_size(src.size(), tgt.size(), spec.target, spec.maps.size());
    BoundedComplex S = coproduct(src), T = coproduct(tgt);
    ChainMap m(S, T);
    for (int q = S.lo; q <= S.hi; ++q) {
        auto so = offsets(src, [q](const Obj& a) { return a.rank(q); });
        auto to = offsets(tgt, [q](const Obj& a) { return a.rank(q); });
        Matrix M(ring, T.rank(q), S.rank(q));
        for (std::size_t k = 0; k < src.size(); ++k) {
            Matrix f = spec.maps[k].at(q);
            if (f.cols() != src[k].rank(q) || f.rows() != tgt[spec.target[k]].rank(q))
                throw std::invalid_argument("complex block: part mismatch");
            M.add_block(to[spec.target[k]], so[k], f);
        }
        m.set(q, M);
    }
    return m;
}

std::string ComplexCat::show(const Obj& a) const {
    std::ostringstream os;
    os << "[";
    for (int q = a.lo; q <= a.hi; ++q) os << (q > a.lo ? " " : "") << a.rank(q);
    os << "]@" << a.lo;
    return os.str();
}

Matrix linearize(const Ring& r, const FinMap& f) {
    Matrix m(r, f.tgt, f.src);
    for (std::size_t i = 0; i < f.src; ++i) m.set(f.v[i], i, 1);
    return m;
}

}  // namespace descent
