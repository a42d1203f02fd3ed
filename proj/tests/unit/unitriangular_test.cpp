/* unitriangular_test.cpp -- U(n) and H(n): matrices, normal forms, structures. */

#include <random>
#include <set>

#include "doctest.h"
#include "helpers.hpp"
#include "ppd/unitriangular.hpp"

using namespace ppd;
using namespace ppd::testhelp;

namespace {

HnNormalForm random_nf(int n, std::mt19937& rng) {
    std::uniform_int_distribution<int> d(-4, 4);
    HnNormalForm nf;
    nf.n = n;
    nf.p.resize(n - 2);
    nf.q.resize(n - 2);
    for (auto& v : nf.p) v = d(rng);
    for (auto& v : nf.q) v = d(rng);
    nf.r = d(rng);
    return nf;
}

}  // namespace

TEST_CASE("elementary matrices multiply and invert exactly") {
    auto e = UniTriMatrix::elementary(4, 1, 3, 2);
    CHECK(e.at(1, 3) == 2);
    CHECK(e * e.inverse() == UniTriMatrix::identity(4));
    CHECK(e.inverse() == UniTriMatrix::elementary(4, 1, 3, -2));
    // e_12 e_23 != e_23 e_12 (the commutator is e_13).
    auto a = UniTriMatrix::elementary(3, 1, 2, 1);
    auto b = UniTriMatrix::elementary(3, 2, 3, 1);
    CHECK(a * b != b * a);
    CHECK(a * b * a.inverse() * b.inverse() ==
          UniTriMatrix::elementary(3, 1, 3, 1));
    CHECK_THROWS(UniTriMatrix::wrap(
        IntegerMatrix::from_rows({{1, 0}, {1, 1}})));  // lower entry
}

TEST_CASE("matrix_for pins the documented entries") {
    HnNormalForm nf;
    nf.n = 4;
    nf.p = {2, -1};
    nf.q = {3, 5};
    nf.r = 7;
    UniTriMatrix m = matrix_for(nf);
    CHECK(m.at(1, 2) == 2);
    CHECK(m.at(1, 3) == -1);
    CHECK(m.at(2, 4) == 3);
    CHECK(m.at(3, 4) == 5);
    CHECK(m.at(1, 4) == 7 + 2 * 3 + (-1) * 5);  // r + sum p_i q_i
    CHECK(m.at(2, 3) == 0);
    CHECK(hn_normal_form(m) == nf);
}

TEST_CASE("matrix_for round-trips on random forms") {
    std::mt19937 rng(31);
    for (int n : {3, 4, 5})
        for (int i = 0; i < 100; ++i) {
            HnNormalForm nf = random_nf(n, rng);
            CHECK(hn_normal_form(matrix_for(nf)) == nf);
        }
}

TEST_CASE("factor_u_n splits off the H(n) part") {
    std::mt19937 rng(37);
    std::uniform_int_distribution<int> d(-2, 2);
    for (int n : {4, 5})
        for (int trial = 0; trial < 100; ++trial) {
            UniTriMatrix m = UniTriMatrix::identity(n);
            for (int i = 1; i <= n; ++i)
                for (int j = i + 1; j <= n; ++j)
                    m = m * UniTriMatrix::elementary(n, i, j, d(rng));
            auto [u, h] = factor_u_n(m);
            CHECK(u * h == m);
            // u has trivial first row and last column,
            for (int j = 2; j <= n; ++j) CHECK(u.at(1, j) == 0);
            for (int i = 1; i < n; ++i) CHECK(u.at(i, n) == 0);
            // h is supported on first row and last column,
            CHECK(hn_normal_form(h).n == n);
            // and forgetful(m) sees only the u part.
            CHECK(forgetful(m) == forgetful(u));
        }
}

TEST_CASE("forgetful is a homomorphism with kernel H(n)") {
    std::mt19937 rng(41);
    std::uniform_int_distribution<int> d(-2, 2);
    for (int trial = 0; trial < 50; ++trial) {
        UniTriMatrix a = UniTriMatrix::identity(4), b = a;
        for (int i = 1; i <= 4; ++i)
            for (int j = i + 1; j <= 4; ++j) {
                a = a * UniTriMatrix::elementary(4, i, j, d(rng));
                b = b * UniTriMatrix::elementary(4, i, j, d(rng));
            }
        CHECK(forgetful(a * b) == forgetful(a) * forgetful(b));
        CHECK((forgetful(a) == UniTriMatrix::identity(2)) ==
              (hn_normal_form(factor_u_n(a).second).n == 4 &&
               factor_u_n(a).first == UniTriMatrix::identity(4)));
    }
}

TEST_CASE("heisenberg relations all evaluate to the identity") {
    // [DERIVED] relator counts for the Lemma 6.2(3) presentation.
    for (auto [n, count] : std::initializer_list<std::pair<int, size_t>>{
             {3, 3}, {4, 10}, {5, 21}}) {
        std::vector<Word> rels = heisenberg_relations(n);
        CHECK(rels.size() == count);
        PStructure s = heisenberg_structure(n);
        for (const Word& rel : rels)
            CHECK(s.oracle->is_identity_word(rel));
    }
}

TEST_CASE("heisenberg structure h3 verifies and decides the word problem") {
    PStructure s = heisenberg_structure(3);
    s.nf_factor = 2;
    s.nf_offset = 1;
    CheckReport r = check_structure(s, 3);
    CHECK(r.ok());
    CHECK(r.ball_size == 83);  // [DERIVED] matrix-oracle ball
    for_all_words(s.alphabet, 3, [&](const Word& w) {
        CHECK(word_problem(s, w) == s.oracle->is_identity_word(w));
    });
    // The defining relation [x2, y2] = z.
    CHECK(word_problem(s, word("x2 y2 X2 Y2 Z")));
    CHECK(!word_problem(s, word("x2 y2 X2 Y2")));
}

TEST_CASE("unitriangular structures for tiny n") {
    PStructure u1 = unitriangular_structure(1);
    CHECK(word_problem(u1, Word()));
    PStructure u2 = unitriangular_structure(2);
    CHECK(check_structure(u2, 4).ok());
    CHECK(check_structure(u2, 4).ball_size == 9);  // U(2) = Z
    PStructure u3 = unitriangular_structure(3);
    CHECK(check_structure(u3, 3).ok());
    // [e12, e23] = e13 in U(3).
    CHECK(word_problem(u3, word("e12 e23 E12 E23 E13")));
}

TEST_CASE("u4 structure passes at radius 2") {
    PStructure s = unitriangular_structure(4);
    s.nf_factor = 2;
    s.nf_offset = 1;
    CheckReport r = check_structure(s, 2);
    CHECK(r.ok());
    CHECK(r.ball_size == 101);  // [DERIVED]
}
