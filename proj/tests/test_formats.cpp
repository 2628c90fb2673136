#include "doctest.h"

#include "descent/ez_descent.hpp"
#include "descent/formats.hpp"
#include "descent/generators.hpp"

using namespace descent;

namespace {

const Ring Z = Ring::integers();
const Ring F3 = Ring::prime_field(3);

}  // namespace

TEST_CASE("cplx round trip") {
    for (int t = 0; t < 10; ++t) {
        Rng rng = trial_rng(40, t);
        const Ring& r = t % 2 ? Z : F3;
        BoundedComplex c = random_complex(rng, r, t % 3 ? Direction::Chain : Direction::Cochain, -1, 2, 3);
        std::string s = print_cplx(c);
        BoundedComplex back = parse_cplx(s);
        CHECK(back == c);
        CHECK(print_cplx(back) == s);
    }
}

TEST_CASE("cplx text by hand") {
    BoundedComplex c = parse_cplx(
        "# circle\nring Z\ndirection chain\ndeg 0 rank 1\ndeg 1 rank 1\nd 1\n0\n");
    CHECK(c.rank(0) == 1);
    CHECK(c.rank(1) == 1);
    CHECK(homology(c, 1) == HomologyGroup{1, {}});
    BoundedComplex f = parse_cplx("ring Fp 5\ndirection cochain\ndeg 0 rank 2\ndeg 1 rank 1\nd 0\n1 4\n");
    CHECK(f.ring == Ring::prime_field(5));
    CHECK(f.diff(0) == Matrix::from_rows(Ring::prime_field(5), {{1, -1}}));
}

TEST_CASE("malformed cplx is rejected") {
    CHECK_THROWS_AS(parse_cplx("ring Q\n"), FormatError);
    CHECK_THROWS_AS(parse_cplx("ring Z\ndirection chain\ndeg 0 rank 1\ndeg 1 rank 1\nd 1\n"), FormatError);
    // d∘d != 0
    CHECK_THROWS(parse_cplx("ring Z\ndirection chain\ndeg 0 rank 1\ndeg 1 rank 1\ndeg 2 rank 1\nd 1\n1\nd 2\n1\n"));
    CHECK_THROWS_AS(parse_cplx("ring Z\ndirection sideways\n"), FormatError);
}

TEST_CASE("cmap round trip") {
    for (int t = 0; t < 6; ++t) {
        Rng rng = trial_rng(41, t);
        BoundedComplex a = random_complex(rng, Z, Direction::Chain, 0, 2, 2);
        BoundedComplex b = random_complex(rng, Z, Direction::Chain, 0, 2, 2);
        ChainMap f = random_chain_map(rng, a, b);
        std::string s = print_cmap(f);
        ChainMap back = parse_cmap(s);
        CHECK(back == f);
        CHECK(print_cmap(back) == s);
    }
}

TEST_CASE("scplx round trip") {
    for (int t = 0; t < 4; ++t) {
        Rng rng = trial_rng(42, t);
        SComplex X = random_scomplex(rng, t % 2 ? Z : F3, 2, 2, 2);
        std::string s = print_scplx(X);
        CHECK(print_scplx(parse_scplx(s)) == s);
        CHECK(simple_s(parse_scplx(s), 2) == simple_s(X, 2));
    }
}

TEST_CASE("sset round trip") {
    for (int t = 0; t < 6; ++t) {
        Rng rng = trial_rng(43, t);
        SSet S = random_small_sset(rng, 3);
        std::string s = print_sset(S);
        CHECK(print_sset(parse_sset(s)) == s);
    }
    std::string rp2 = print_sset(projective_plane_model(3));
    CHECK(print_sset(parse_sset(rp2)) == rp2);
}

TEST_CASE("malformed sset is rejected") {
    // face value out of range
    CHECK_THROWS_AS(parse_sset("levels 1\ncard 0 1\ncard 1 1\nface 1 0 3\nface 1 1 0\ndegen 0 0 0\n"), FormatError);
    CHECK_THROWS_AS(parse_sset("levels x\n"), FormatError);
}

TEST_CASE("bisimp round trip") {
    for (int t = 0; t < 4; ++t) {
        Rng rng = trial_rng(44, t);
        SMod V = random_bisimplicial_module(rng, t % 2 ? Z : F3, 2);
        std::string s = print_bisimp(V);
        CHECK(print_bisimp(parse_bisimp(s)) == s);
    }
    Rng rng = trial_rng(45, 0);
    SMod A = random_biaugmented(rng, Z, 2);
    std::string s = print_bisimp(A);
    CHECK(print_bisimp(parse_bisimp(s)) == s);
}
