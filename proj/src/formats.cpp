#include "descent/formats.hpp"

#include <fstream>
#include <set>
#include <sstream>

namespace descent {

namespace {

bool is_number(const std::string& s) {
    std::size_t i = (s.size() > 1 && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
    if (i >= s.size()) return false;
    for (; i < s.size(); ++i)
        if (s[i] < '0' || s[i] > '9') return false;
    return true;
}

const std::set<std::string> kCplxWords{"ring", "direction", "deg", "d"};

}  // namespace

Tokens::Tokens(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        auto h = line.find('#');
        if (h != std::string::npos) line.resize(h);
        std::istringstream ls(line);
        std::string w;
        while (ls >> w) t_.push_back(w);
    }
}

const std::string& Tokens::peek() const {
    if (done()) throw FormatError("unexpected end of input");
    return t_[pos_];
}

std::string Tokens::next() {
    const std::string& s = peek();
    ++pos_;
    return s;
}

long long Tokens::next_int() {
    std::string s = next();
    if (!is_number(s)) throw FormatError("expected an integer, got '" + s + "'");
    try {
        return std::stoll(s);
    } catch (const std::exception&) {
        throw FormatError("integer out of range: " + s);
    }
}

std::size_t Tokens::next_size() {
    long long v = next_int();
    if (v < 0) throw FormatError("expected a nonnegative integer, got " + std::to_string(v));
    return static_cast<std::size_t>(v);
}

void Tokens::expect(const std::string& word) {
    std::string s = next();
    if (s != word) throw FormatError("expected '" + word + "', got '" + s + "'");
}

bool Tokens::accept(const std::string& word) {
    if (!done() && t_[pos_] == word) {
        ++pos_;
        return true;
    }
    return false;
}

bool Tokens::next_is_number() const { return !done() && is_number(t_[pos_]); }

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw FormatError("cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_ring(std::ostream& os, const Ring& r) {
    if (r.is_field())
        os << "ring Fp " << r.p << "\n";
    else
        os << "ring Z\n";
}

Ring parse_ring(Tokens& t) {
    std::string k = t.next();
    if (k == "Z") return Ring::integers();
    if (k == "Fp") {
        long long p = t.next_int();
        try {
            return Ring::prime_field(p);
        } catch (const std::exception& e) {
            throw FormatError(std::string("bad field: ") + e.what());
        }
    }
    throw FormatError("unknown ring '" + k + "'");
}

Matrix parse_matrix(Tokens& t, const Ring& r, std::size_t rows, std::size_t cols) {
    Matrix m(r, rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) {
            std::string s = t.next();
            if (!is_number(s)) throw FormatError("expected a matrix entry, got '" + s + "'");
            m.set(i, j, Int(s));
        }
    return m;
}

void write_matrix(std::ostream& os, const Matrix& m) { os << m.to_string(); }

// ---- .cplx ----------------------------------------------------------------------

void write_cplx_block(std::ostream& os, const BoundedComplex& c) {
    write_ring(os, c.ring);
    os << "direction " << (c.dir == Direction::Chain ? "chain" : "cochain") << "\n";
    for (int q = c.lo; q <= c.hi; ++q) os << "deg " << q << " rank " << c.rank(q) << "\n";
    for (int q = c.lo; q <= c.hi; ++q) {
        Matrix d = c.diff(q);
        if (d.rows() == 0 || d.cols() == 0) continue;
        os << "d " << q << "\n";
        write_matrix(os, d);
    }
}

BoundedComplex parse_cplx_block(Tokens& t, const Ring* default_ring) {
    Ring r = default_ring ? *default_ring : Ring::integers();
    Direction dir = Direction::Chain;
    std::map<int, std::size_t> ranks;
    std::map<int, Matrix> diffs;
    bool started_d = false;
    while (!t.done() && kCplxWords.count(t.peek())) {
        std::string w = t.next();
        if (w == "ring") {
            if (!ranks.empty()) throw FormatError("ring must precede the degrees");
            r = parse_ring(t);
        } else if (w == "direction") {
            std::string v = t.next();
            if (v == "chain")
                dir = Direction::Chain;
            else if (v == "cochain")
                dir = Direction::Cochain;
            else
                throw FormatError("unknown direction '" + v + "'");
        } else if (w == "deg") {
            if (started_d) throw FormatError("deg lines must precede the differentials");
            int q = static_cast<int>(t.next_int());
            t.expect("rank");
            if (ranks.count(q)) throw FormatError("degree listed twice: " + std::to_string(q));
            ranks[q] = t.next_size();
        } else {
            started_d = true;
            int q = static_cast<int>(t.next_int());
            if (diffs.count(q)) throw FormatError("differential listed twice: " + std::to_string(q));
            int nq = dir == Direction::Chain ? q - 1 : q + 1;
            auto rk = [&](int k) { return ranks.count(k) ? ranks[k] : std::size_t{0}; };
            diffs[q] = parse_matrix(t, r, rk(nq), rk(q));
        }
    }
    if (ranks.empty()) return BoundedComplex::zero(r, dir);
    int lo = ranks.begin()->first, hi = ranks.rbegin()->first;
    std::vector<std::size_t> rk;
    for (int q = lo; q <= hi; ++q) rk.push_back(ranks.count(q) ? ranks[q] : 0);
    BoundedComplex c(r, dir, lo, hi, rk);
    for (auto& [q, m] : diffs) {
        if (q < lo || q > hi) throw FormatError("differential outside the support: " + std::to_string(q));
        c.set_diff(q, m);
    }
    try {
        c.validate();
    } catch (const std::exception& e) {
        throw FormatError(std::string("not a complex: ") + e.what());
    }
    return c;
}

std::string print_cplx(const BoundedComplex& c) {
    std::ostringstream os;
    write_cplx_block(os, c);
    return os.str();
}

BoundedComplex parse_cplx(const std::string& text) {
    Tokens t(text);
    BoundedComplex c = parse_cplx_block(t);
    if (!t.done()) throw FormatError("unexpected token '" + t.peek() + "'");
    return c;
}

// ---- .cmap ------------------------------------------------------------------------

std::string print_cmap(const ChainMap& f) {
    std::ostringstream os;
    os << "source\n";
    write_cplx_block(os, f.src);
    os << "target\n";
    write_cplx_block(os, f.tgt);
    for (auto& [q, m] : f.f) {
        if (m.rows() == 0 || m.cols() == 0 || m.is_zero()) continue;
        os << "f " << q << "\n";
        write_matrix(os, m);
    }
    return os.str();
}

ChainMap parse_cmap(const std::string& text) {
    Tokens t(text);
    t.expect("source");
    BoundedComplex s = parse_cplx_block(t);
    t.expect("target");
    BoundedComplex g = parse_cplx_block(t);
    if (s.ring != g.ring || s.dir != g.dir) throw FormatError("source and target must share ring and direction");
    ChainMap f(s, g);
    while (!t.done()) {
        t.expect("f");
        int q = static_cast<int>(t.next_int());
        if (f.f.count(q)) throw FormatError("map degree listed twice: " + std::to_string(q));
        f.f[q] = parse_matrix(t, s.ring, g.rank(q), s.rank(q));
    }
    if (!f.is_chain_map()) throw FormatError("not a chain map");
    return f;
}

// ---- .scplx ------------------------------------------------------------------------

namespace {

void write_levelwise(std::ostream& os, const ChainMap& m) {
    for (auto& [p, M] : m.f) {
        if (M.rows() == 0 || M.cols() == 0) continue;
        os << "deg " << p << "\n";
        write_matrix(os, M);
    }
}

ChainMap parse_levelwise(Tokens& t, const BoundedComplex& s, const BoundedComplex& g) {
    ChainMap m(s, g);
    while (t.accept("deg")) {
        int p = static_cast<int>(t.next_int());
        m.f[p] = parse_matrix(t, s.ring, g.rank(p), s.rank(p));
    }
    return m;
}

// one entry per degree where both sides are nonzero
ChainMap normalized_map(const ChainMap& m) {
    ChainMap r(m.src, m.tgt);
    int lo = std::min(m.src.lo, m.tgt.lo), hi = std::max(m.src.hi, m.tgt.hi);
    for (int p = lo; p <= hi; ++p) {
        Matrix M = m.at(p);
        if (M.rows() && M.cols()) r.f[p] = M;
    }
    return r;
}

}  // namespace

std::string print_scplx(const SComplex& X) {
    if (X.arity() != 1 || X.augmented()) throw std::invalid_argument("print_scplx: plain simplicial object expected");
    std::ostringstream os;
    write_ring(os, X.cat.ring);
    os << "levels " << X.top() << "\n";
    if (X.semi) os << "semi\n";
    for (int n = 0; n <= X.top(); ++n) {
        os << "level " << n << "\n";
        write_cplx_block(os, X.ob(n));
    }
    for (auto& [k, m] : X.faces) {
        os << "face " << k.idx[0] << " " << k.i << "\n";
        write_levelwise(os, normalized_map(m));
    }
    for (auto& [k, m] : X.degens) {
        os << "degen " << k.idx[0] << " " << k.i << "\n";
        write_levelwise(os, normalized_map(m));
    }
    return os.str();
}

SComplex parse_scplx(const std::string& text) {
    Tokens t(text);
    t.expect("ring");
    Ring r = parse_ring(t);
    t.expect("levels");
    int N = static_cast<int>(t.next_int());
    if (N < 0) throw FormatError("levels must be nonnegative");
    SComplex X(ComplexCat{r, Direction::Chain}, Shape::simplicial(N));
    X.semi = t.accept("semi");
    for (int n = 0; n <= N; ++n) {
        t.expect("level");
        if (t.next_int() != n) throw FormatError("levels must be listed in order");
        BoundedComplex c = parse_cplx_block(t, &r);
        if (c.ring != r || c.dir != Direction::Chain) throw FormatError("level complexes must be chain complexes over the file ring");
        X.set_ob(n, c);
    }
    while (!t.done()) {
        std::string w = t.next();
        int n = static_cast<int>(t.next_int()), i = static_cast<int>(t.next_int());
        if (w == "face") {
            if (!X.has_face(Index{n}, 0, i)) throw FormatError("face outside the truncation");
            X.set_d(n, i, parse_levelwise(t, X.ob(n), X.ob(n - 1)));
        } else if (w == "degen") {
            if (!X.has_degen(Index{n}, 0, i)) throw FormatError("degeneracy outside the truncation");
            X.set_s(n, i, parse_levelwise(t, X.ob(n), X.ob(n + 1)));
        } else {
            throw FormatError("unknown keyword '" + w + "'");
        }
    }
    auto miss = X.missing();
    if (!miss.empty()) throw FormatError("missing " + miss.front());
    for (auto& [k, m] : X.faces)
        if (!m.is_chain_map()) throw FormatError("face is not a chain map");
    for (auto& [k, m] : X.degens)
        if (!m.is_chain_map()) throw FormatError("degeneracy is not a chain map");
    auto bad = check_identities(X);
    if (!bad.empty()) throw FormatError("simplicial identity fails: " + bad.front().to_string());
    return X;
}

// ---- .sset -------------------------------------------------------------------------

std::string print_sset(const SSet& S) {
    if (S.arity() != 1 || S.augmented()) throw std::invalid_argument("print_sset: plain simplicial set expected");
    std::ostringstream os;
    os << "levels " << S.top() << "\n";
    for (int n = 0; n <= S.top(); ++n) os << "card " << n << " " << S.ob(n) << "\n";
    auto vals = [&](const FinMap& f) {
        for (std::size_t k = 0; k < f.v.size(); ++k) os << (k ? " " : "") << f.v[k];
        os << "\n";
    };
    for (auto& [k, f] : S.faces) {
        os << "face " << k.idx[0] << " " << k.i << "\n";
        vals(f);
    }
    for (auto& [k, f] : S.degens) {
        os << "degen " << k.idx[0] << " " << k.i << "\n";
        vals(f);
    }
    return os.str();
}

SSet parse_sset(const std::string& text) {
    Tokens t(text);
    t.expect("levels");
    int N = static_cast<int>(t.next_int());
    if (N < 0) throw FormatError("levels must be nonnegative");
    SSet S(SetCat{}, Shape::simplicial(N));
    for (int n = 0; n <= N; ++n) {
        t.expect("card");
        if (t.next_int() != n) throw FormatError("cardinalities must be listed in order");
        S.set_ob(n, t.next_size());
    }
    auto read_map = [&](std::size_t src, std::size_t tgt) {
        FinMap f{src, tgt, {}};
        for (std::size_t k = 0; k < src; ++k) {
            std::size_t v = t.next_size();
            if (v >= tgt) throw FormatError("map value out of range");
            f.v.push_back(v);
        }
        return f;
    };
    while (!t.done()) {
        std::string w = t.next();
        int n = static_cast<int>(t.next_int()), i = static_cast<int>(t.next_int());
        if (w == "face") {
            if (!S.has_face(Index{n}, 0, i)) throw FormatError("face outside the truncation");
            S.set_d(n, i, read_map(S.ob(n), S.ob(n - 1)));
        } else if (w == "degen") {
            if (!S.has_degen(Index{n}, 0, i)) throw FormatError("degeneracy outside the truncation");
            S.set_s(n, i, read_map(S.ob(n), S.ob(n + 1)));
        } else {
            throw FormatError("unknown keyword '" + w + "'");
        }
    }
    auto miss = S.missing();
    if (!miss.empty()) throw FormatError("missing " + miss.front());
    auto bad = check_identities(S);
    if (!bad.empty()) throw FormatError("simplicial identity fails: " + bad.front().to_string());
    return S;
}

// ---- .bisimp -----------------------------------------------------------------------

std::string print_bisimp(const SMod& Z) {
    if (Z.arity() != 2) throw std::invalid_argument("print_bisimp: bisimplicial object expected");
    std::ostringstream os;
    write_ring(os, Z.cat.ring);
    os << "levels " << Z.top(0) << " " << Z.top(1) << "\n";
    os << "low " << Z.shape.low[0] << " " << Z.shape.low[1] << "\n";
    os << "corner " << (Z.shape.corner ? 1 : 0) << "\n";
    if (Z.semi) os << "semi\n";
    for (auto& [idx, r] : Z.objs) os << "obj " << idx[0] << " " << idx[1] << " rank " << r << "\n";
    for (auto& [k, m] : Z.faces) {
        os << "d" << k.dir + 1 << " " << k.idx[0] << " " << k.idx[1] << " " << k.i << "\n";
        write_matrix(os, m);
    }
    for (auto& [k, m] : Z.degens) {
        os << "s" << k.dir + 1 << " " << k.idx[0] << " " << k.idx[1] << " " << k.i << "\n";
        write_matrix(os, m);
    }
    return os.str();
}

SMod parse_bisimp(const std::string& text) {
    Tokens t(text);
    t.expect("ring");
    Ring r = parse_ring(t);
    t.expect("levels");
    int N1 = static_cast<int>(t.next_int()), N2 = static_cast<int>(t.next_int());
    int l1 = 0, l2 = 0;
    if (t.accept("low")) {
        l1 = static_cast<int>(t.next_int());
        l2 = static_cast<int>(t.next_int());
    }
    if ((l1 != 0 && l1 != -1) || (l2 != 0 && l2 != -1)) throw FormatError("low must be 0 or -1");
    bool corner = true;
    if (t.accept("corner")) corner = t.next_int() != 0;
    if (N1 < 0 || N2 < 0) throw FormatError("levels must be nonnegative");
    SMod Z(ModCat{r}, Shape({N1, N2}, {l1, l2}, corner));
    Z.semi = t.accept("semi");
    while (t.accept("obj")) {
        Index idx{static_cast<int>(t.next_int()), static_cast<int>(t.next_int())};
        t.expect("rank");
        if (!Z.shape.contains(idx)) throw FormatError("object outside the shape: " + index_string(idx));
        Z.set_ob(idx, t.next_size());
    }
    while (!t.done()) {
        std::string w = t.next();
        if (w.size() != 2 || (w[0] != 'd' && w[0] != 's') || (w[1] != '1' && w[1] != '2'))
            throw FormatError("unknown keyword '" + w + "'");
        int dir = w[1] - '1';
        Index idx{static_cast<int>(t.next_int()), static_cast<int>(t.next_int())};
        int k = static_cast<int>(t.next_int());
        if (w[0] == 'd') {
            if (!Z.has_face(idx, dir, k)) throw FormatError("face outside the shape");
            Z.set_d(idx, dir, k, parse_matrix(t, r, Z.ob(shifted(idx, dir, -1)), Z.ob(idx)));
        } else {
            if (!Z.has_degen(idx, dir, k)) throw FormatError("degeneracy outside the shape");
            Z.set_s(idx, dir, k, parse_matrix(t, r, Z.ob(shifted(idx, dir, 1)), Z.ob(idx)));
        }
    }
    auto miss = Z.missing();
    if (!miss.empty()) throw FormatError("missing " + miss.front());
    auto bad = check_identities(Z);
    if (!bad.empty()) throw FormatError("simplicial identity fails: " + bad.front().to_string());
    return Z;
}

}  // namespace descent
