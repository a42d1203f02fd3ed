/* two_tape_test.cpp -- pair machines, relations, shuffle audits, emulation. */

#include "doctest.h"
#include "helpers.hpp"
#include "ppd/emulation.hpp"
#include "ppd/machine_builder.hpp"
#include "ppd/two_tape.hpp"

using namespace ppd;
using namespace ppd::testhelp;

namespace {

long letter_sum(const Word& w, const std::map<Symbol, int>& deltas) {
    long out = 0;
    for (Symbol s : w) out += deltas.at(s);
    return out;
}

}  // namespace

TEST_CASE("two_tape_alphabet layout") {
    Alphabet l({sym("a")}), r({sym("b"), sym("c")});
    Alphabet t = two_tape_alphabet(l, r);
    REQUIRE(t.size() == 5);
    CHECK(t.at(0).name() == "a#");
    CHECK(t.at(1).name() == "$#");
    CHECK(t.at(2).name() == "b@");
    CHECK(t.at(3).name() == "c@");
    CHECK(t.at(4).name() == "$@");
}

TEST_CASE("block_counter accepts iff offset plus deltas vanish") {
    Symbol a = sym("a"), A = sym("A");
    Alphabet al({a, A});
    std::map<Symbol, int> dl{{a, 1}, {A, -1}}, dr{{a, -1}, {A, 1}};
    TwoTapePda m = block_counter("bc", al, al,
                                 {{Side::Left, dl}, {Side::Right, dr}}, 1);
    for_all_words(al, 3, [&](const Word& u) {
        for_all_words(al, 3, [&](const Word& v) {
            bool want = 1 + letter_sum(u, dl) + letter_sum(v, dr) == 0;
            CHECK(accept_pair(m, u, v) == want);
        });
    });
}

TEST_CASE("diagonal and all-pairs machines") {
    Alphabet al({sym("a"), sym("b")});
    TwoTapePda diag = diagonal_machine(al);
    TwoTapePda all = all_pairs_machine(al, al);
    for_all_words(al, 3, [&](const Word& u) {
        for_all_words(al, 3, [&](const Word& v) {
            CHECK(accept_pair(diag, u, v) == (u == v));
            CHECK(accept_pair(all, u, v));
        });
    });
}

TEST_CASE("finite_pair_machine and its complement") {
    Alphabet al({sym("a"), sym("b")});
    std::vector<std::pair<Word, Word>> pairs{{word("a"), word("b b")},
                                             {Word(), word("a")}};
    TwoTapePda yes = finite_pair_machine(al, al, pairs, false);
    TwoTapePda no = finite_pair_machine(al, al, pairs, true);
    auto listed = [&](const Word& u, const Word& v) {
        for (const auto& [x, y] : pairs)
            if (x == u && y == v) return true;
        return false;
    };
    for_all_words(al, 3, [&](const Word& u) {
        for_all_words(al, 3, [&](const Word& v) {
            CHECK(accept_pair(yes, u, v) == listed(u, v));
            CHECK(accept_pair(no, u, v) == !listed(u, v));
        });
    });
}

TEST_CASE("union_with_pairs adjoins exactly the listed pairs") {
    Alphabet al({sym("a"), sym("A")});
    TwoTapePda diag = diagonal_machine(al);
    std::vector<std::pair<Word, Word>> extra{{word("a"), word("A")}};
    TwoTapePda u = union_with_pairs(diag, extra);
    for_all_words(al, 3, [&](const Word& x) {
        for_all_words(al, 3, [&](const Word& y) {
            bool want = (x == y) || (x == word("a") && y == word("A"));
            CHECK(accept_pair(u, x, y) == want);
        });
    });
}

TEST_CASE("swap_tapes transposes the relation") {
    Symbol a = sym("a"), A = sym("A");
    Alphabet al({a, A});
    std::map<Symbol, int> dl{{a, 1}, {A, -1}}, dr{{a, -1}, {A, 1}};
    TwoTapePda m = block_counter("bc", al, al,
                                 {{Side::Left, dl}, {Side::Right, dr}}, 1);
    TwoTapePda t = swap_tapes(m);
    for_all_words(al, 3, [&](const Word& u) {
        for_all_words(al, 3, [&](const Word& v) {
            CHECK(accept_pair(t, u, v) == accept_pair(m, v, u));
        });
    });
}

TEST_CASE("make_relation intersects components") {
    Symbol a = sym("a"), A = sym("A");
    Alphabet al({a, A});
    std::map<Symbol, int> dl{{a, 1}, {A, -1}}, dr{{a, -1}, {A, 1}};
    TwoTapePda sum0 = block_counter("s0", al, al,
                                    {{Side::Left, dl}, {Side::Right, dr}}, 0);
    TwoTapePda diag = diagonal_machine(al);
    AtpplRelation rel = make_relation("r", {sum0, diag});
    for_all_words(al, 3, [&](const Word& u) {
        for_all_words(al, 3, [&](const Word& v) {
            CHECK(relation_member(rel, u, v) ==
                  (accept_pair(sum0, u, v) && accept_pair(diag, u, v)));
        });
    });
}

TEST_CASE("run_pair reports stuck on exhausted-tape demands") {
    Alphabet al({sym("a")});
    TwoTapePda diag = diagonal_machine(al);
    PairRunReport r = run_pair(diag, word("a a"), word("a"));
    CHECK(!r.accepted);
}

TEST_CASE("verify_unique_shuffle on counter and diagonal machines") {
    Symbol a = sym("a"), A = sym("A");
    Alphabet al({a, A});
    std::map<Symbol, int> dl{{a, 1}, {A, -1}}, dr{{a, -1}, {A, 1}};
    TwoTapePda m = block_counter("bc", al, al,
                                 {{Side::Left, dl}, {Side::Right, dr}}, 0);
    TwoTapePda diag = diagonal_machine(al);
    for_all_words(al, 3, [&](const Word& u) {
        for_all_words(al, 3, [&](const Word& v) {
            for (const TwoTapePda* mm : {&m, &diag}) {
                ShuffleAudit audit = verify_unique_shuffle(*mm, u, v);
                CHECK(audit.consistent);
                CHECK(audit.accepted_count <= 1);
                CHECK(audit.pair_accepted == accept_pair(*mm, u, v));
            }
        });
    });
}

TEST_CASE("seq2_machine splits at the alphabet boundary") {
    Symbol a = sym("a"), A = sym("A"), b = sym("b"), B = sym("B");
    Alphabet la({a, A}), lb({b, B});
    std::map<Symbol, int> d1l{{a, 1}, {A, -1}}, d1r{{a, -1}, {A, 1}};
    std::map<Symbol, int> d2l{{b, 1}, {B, -1}}, d2r{{b, -1}, {B, 1}};
    TwoTapePda m1 = block_counter("c1", la, la,
                                  {{Side::Left, d1l}, {Side::Right, d1r}}, 0);
    TwoTapePda m2 = block_counter("c2", lb, lb,
                                  {{Side::Left, d2l}, {Side::Right, d2r}}, 0);
    TwoTapePda s = seq2_machine("seq", m1, m2);
    Alphabet joint({a, A, b, B});
    auto split = [&](const Word& w) {
        size_t i = 0;
        while (i < w.length() && la.contains(w.at(i))) ++i;
        return std::pair<Word, Word>{w.subword(0, i), w.subword(i, w.length())};
    };
    auto wellformed = [&](const Word& w) {  // a-part then b-part
        auto [u1, u2] = split(w);
        for (Symbol x : u2)
            if (la.contains(x)) return false;
        return true;
    };
    for_all_words(joint, 3, [&](const Word& u) {
        if (!wellformed(u)) return;
        for_all_words(joint, 3, [&](const Word& v) {
            if (!wellformed(v)) return;
            auto [u1, u2] = split(u);
            auto [v1, v2] = split(v);
            bool want = accept_pair(m1, u1, v1) && accept_pair(m2, u2, v2);
            CHECK(accept_pair(s, u, v) == want);
        });
    });
}

TEST_CASE("prefix_comparator accepts common-prefix-then-run pairs") {
    Symbol t = sym("t"), T = sym("T"), o = sym("o");
    Alphabet run({t, T}), other({o});
    TwoTapePda m = prefix_comparator("pc", run, other);
    Alphabet joint({t, T, o});
    auto good = [&](const Word& u, const Word& v) {
        size_t i = 0;
        while (i < u.length() && i < v.length() && u.at(i) == v.at(i)) ++i;
        for (size_t j = i; j < u.length(); ++j)
            if (!run.contains(u.at(j))) return false;
        for (size_t j = i; j < v.length(); ++j)
            if (!run.contains(v.at(j))) return false;
        return true;
    };
    for_all_words(joint, 3, [&](const Word& u) {
        for_all_words(joint, 3, [&](const Word& v) {
            CHECK(accept_pair(m, u, v) == good(u, v));
        });
    });
}
