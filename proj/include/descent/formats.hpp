#pragma once

#include "descent/simplicial.hpp"

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

namespace descent {

// bad input text; the CLI maps it to exit code 2
struct FormatError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

using SComplex = Multi<ComplexCat>;

// whitespace tokens with `#` comments removed
class Tokens {
public:
    explicit Tokens(const std::string& text);
    bool done() const { return pos_ >= t_.size(); }
    const std::string& peek() const;
    std::string next();
    long long next_int();
    std::size_t next_size();
    void expect(const std::string& word);
    // true (and consumed) when the next token is `word`
    bool accept(const std::string& word);
    bool next_is_number() const;

private:
    std::vector<std::string> t_;
    std::size_t pos_ = 0;
};

std::string read_file(const std::string& path);

void write_ring(std::ostream& os, const Ring& r);
Ring parse_ring(Tokens& t);  // after the `ring` keyword
Matrix parse_matrix(Tokens& t, const Ring& r, std::size_t rows, std::size_t cols);
void write_matrix(std::ostream& os, const Matrix& m);

// .cplx
std::string print_cplx(const BoundedComplex& c);
BoundedComplex parse_cplx(const std::string& text);
// a block inside a larger file: stops at the first token that is not part of a complex
BoundedComplex parse_cplx_block(Tokens& t, const Ring* default_ring = nullptr);
void write_cplx_block(std::ostream& os, const BoundedComplex& c);

// .cmap: `source` and `target` complex blocks followed by `f <q>` matrices
std::string print_cmap(const ChainMap& f);
ChainMap parse_cmap(const std::string& text);

// .scplx
std::string print_scplx(const SComplex& X);
SComplex parse_scplx(const std::string& text);

// .sset
std::string print_sset(const SSet& S);
SSet parse_sset(const std::string& text);

// .bisimp: bisimplicial modules, augmented directions allowed
std::string print_bisimp(const SMod& Z);
SMod parse_bisimp(const std::string& text);

}  // namespace descent
