/* fsa_test.cpp -- DFA combinators against brute-force set semantics. */

#include <set>

#include "doctest.h"
#include "helpers.hpp"
#include "ppd/fsa.hpp"

using namespace ppd;
using namespace ppd::testhelp;

namespace {

std::set<Word> accepted_set(const Fsa& m, size_t max_len) {
    std::set<Word> out;
    for_all_words(m.alphabet, max_len, [&](const Word& w) {
        if (run_fsa(m, w)) out.insert(w);
    });
    return out;
}

}  // namespace

TEST_CASE("convenience constructors") {
    Alphabet a({sym("a"), sym("b")});
    CHECK(accepted_set(fsa_empty(a), 3).empty());
    CHECK(accepted_set(fsa_all_words(a), 2).size() == 7);  // 1 + 2 + 4
    Fsa single = fsa_single_word(a, word("a b"));
    CHECK(accepted_set(single, 3) == std::set<Word>{word("a b")});
    Fsa star = fsa_letter_star(a, sym("a"));
    CHECK(accepted_set(star, 2) ==
          std::set<Word>{Word(), word("a"), word("a a")});
}

TEST_CASE("combine_fsa matches set operations") {
    Alphabet a({sym("a"), sym("b")});
    Fsa m1 = fsa_letter_star(a, sym("a"));           // a*
    Fsa m2 = fsa_single_word(a, word("a"));          // {a}
    std::set<Word> s1 = accepted_set(m1, 5), s2 = accepted_set(m2, 5);

    std::set<Word> un = s1;
    un.insert(s2.begin(), s2.end());
    CHECK(accepted_set(combine_fsa(FsaCombine::Union, m1, &m2), 5) == un);

    std::set<Word> in;
    for (const Word& w : s1)
        if (s2.count(w)) in.insert(w);
    CHECK(accepted_set(combine_fsa(FsaCombine::Intersection, m1, &m2), 5) == in);

    Fsa comp = combine_fsa(FsaCombine::Complement, m1);
    for_all_words(a, 5, [&](const Word& w) {
        CHECK(run_fsa(comp, w) == !run_fsa(m1, w));
    });
}

TEST_CASE("concat and star against brute force") {
    Alphabet a({sym("a"), sym("b")});
    Fsa ma = fsa_single_word(a, word("a"));
    Fsa mb = fsa_single_word(a, word("b b"));
    // {a}{bb} = {abb}
    CHECK(accepted_set(combine_fsa(FsaCombine::Concat, ma, &mb), 4) ==
          std::set<Word>{word("a b b")});
    // {abb}* on words <= 6: eps, abb, abbabb
    Fsa cc = combine_fsa(FsaCombine::Concat, ma, &mb);
    CHECK(accepted_set(combine_fsa(FsaCombine::Star, cc), 6) ==
          std::set<Word>{Word(), word("a b b"), word("a b b a b b")});
}

TEST_CASE("enumerate_fsa is shortlex and complete") {
    Alphabet a({sym("a"), sym("b")});
    Fsa star = fsa_letter_star(a, sym("b"));
    auto words = enumerate_fsa(star, 3);
    REQUIRE(words.size() == 4);
    CHECK(words[0] == Word());
    CHECK(words[3] == word("b b b"));
    ShortlexOrder ord(a);
    for (size_t i = 1; i < words.size(); ++i)
        CHECK(ord.less(words[i - 1], words[i]));
    // Agreement with the brute-force set on a compound machine.
    Fsa m = combine_fsa(FsaCombine::Union, star, &star);
    auto enumd = enumerate_fsa(m, 4);
    CHECK(std::set<Word>(enumd.begin(), enumd.end()) == accepted_set(m, 4));
}
