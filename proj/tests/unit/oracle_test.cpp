/* oracle_test.cpp -- oracle arithmetic, balls, and group-law checks. */

#include "doctest.h"
#include "helpers.hpp"
#include "ppd/matrix.hpp"
#include "ppd/oracle.hpp"

using namespace ppd;
using namespace ppd::testhelp;

namespace {

Alphabet xX() { return Alphabet({sym("x"), sym("X")}); }

OraclePtr z_oracle() {
    return tuple_oracle("Z", xX(), {{sym("x"), {1}}, {sym("X"), {-1}}});
}

}  // namespace

TEST_CASE("tuple oracle arithmetic and evaluation") {
    OraclePtr o = z_oracle();
    CHECK(o->is_identity_word(word("x X")));
    CHECK(!o->is_identity_word(word("x x X")));
    auto e = o->evaluate(word("x x x X"));
    CHECK(tuple_value(e) == std::vector<std::int64_t>{2});
    CHECK(o->equal(o->invert(e), o->evaluate(word("X X"))));
}

TEST_CASE("matrix oracle matches integer matrix arithmetic") {
    Symbol t = sym("t"), T = sym("T");
    IntegerMatrix g = IntegerMatrix::from_rows({{1, 1}, {0, 1}});
    OraclePtr o = matrix_oracle("U2", Alphabet({t, T}),
                                {{t, g}, {T, g.inverse()}});
    CHECK(matrix_value(o->evaluate(word("t t t"))) == g.pow(3));
    CHECK(o->is_identity_word(word("t T t T")));
    CHECK(check_group_laws(*o, 200, 7).empty());
}

TEST_CASE("semidirect oracle implements the twisted product") {
    // sol: Z^2 x| Z with conjugation by [[2,1],[1,1]].
    Symbol t = sym("t"), T = sym("T"), x = sym("x"), X = sym("X");
    IntegerMatrix A = IntegerMatrix::from_rows({{2, 1}, {1, 1}});
    OraclePtr o = semidirect_z_oracle(
        "sol", A, Alphabet({t, T, x, X}),
        {{t, {{0, 0}, 1}}, {T, {{0, 0}, -1}},
         {x, {{1, 0}, 0}}, {X, {{-1, 0}, 0}}});
    // t x t^-1 has vector part A * (1,0) = (2,1).
    auto e = o->evaluate(word("t x T"));
    SemidirectElemData d = semidirect_value(e);
    CHECK(d.k == 0);
    CHECK(d.v == std::vector<std::int64_t>{2, 1});
    CHECK(check_group_laws(*o, 200, 11).empty());
}

TEST_CASE("klein oracle relation z = s^2, s x s^-1 = x^-1 z^0") {
    Symbol z = sym("z"), x1 = sym("x1"), X1 = sym("X1"), s = sym("s"),
           S = sym("S");
    OraclePtr o = klein_oracle(Alphabet({z, sym("Z"), x1, X1, s, S}),
                               {{z, {0, 2}}, {sym("Z"), {0, -2}},
                                {x1, {1, 0}}, {X1, {-1, 0}},
                                {s, {0, 1}}, {S, {0, -1}}});
    CHECK(o->is_identity_word(word("s s Z")));
    CHECK(o->is_identity_word(word("s x1 S x1")));  // s x s^-1 = x^-1
    CHECK(check_group_laws(*o, 200, 13).empty());
}

TEST_CASE("product and wreath oracles satisfy the group laws") {
    OraclePtr zx = z_oracle();
    OraclePtr zy = tuple_oracle("Zy", Alphabet({sym("y"), sym("Y")}),
                                {{sym("y"), {1}}, {sym("Y"), {-1}}});
    CHECK(check_group_laws(*direct_product_oracle(zx, zy), 150, 3).empty());
    CHECK(check_group_laws(*free_product_oracle(zx, zy), 150, 5).empty());
    CHECK(check_group_laws(*wreath_oracle(zx, zy), 100, 9).empty());
}

TEST_CASE("free product oracle reduces alternating factors") {
    OraclePtr zx = z_oracle();
    OraclePtr zy = tuple_oracle("Zy", Alphabet({sym("y"), sym("Y")}),
                                {{sym("y"), {1}}, {sym("Y"), {-1}}});
    OraclePtr fp = free_product_oracle(zx, zy);
    CHECK(fp->is_identity_word(word("x y Y X")));
    CHECK(!fp->is_identity_word(word("x y X Y")));  // no commuting
    auto v = free_product_value(fp->evaluate(word("x x y X")));
    REQUIRE(v.size() == 3);
    CHECK(v[0].first == 0);
    CHECK(v[1].first == 1);
    CHECK(v[2].first == 0);
}

TEST_CASE("frozen ball sizes") {
    // [DERIVED] breadth-first counts over the ground-truth oracles.
    OraclePtr z = z_oracle();
    CHECK(ball(*z, 1).elements.size() == 3);
    CHECK(ball(*z, 4).elements.size() == 9);
    OraclePtr z2 = tuple_oracle(
        "Z2", Alphabet({sym("x"), sym("X"), sym("y"), sym("Y")}),
        {{sym("x"), {1, 0}}, {sym("X"), {-1, 0}},
         {sym("y"), {0, 1}}, {sym("Y"), {0, -1}}});
    CHECK(ball(*z2, 1).elements.size() == 5);
    CHECK(ball(*z2, 2).elements.size() == 13);
    CHECK(ball(*z2, 4).elements.size() == 41);
}

TEST_CASE("ball witnesses are geodesic evaluations") {
    OraclePtr z = z_oracle();
    Ball B = ball(*z, 3);
    REQUIRE(B.elements.size() == 7);
    for (size_t i = 0; i < B.elements.size(); ++i) {
        CHECK(z->equal(z->evaluate(B.witness[i]), B.elements[i]));
        CHECK(B.witness[i].length() <= 3);
        CHECK(B.index.at(z->key(B.elements[i])) == i);
    }
}
