/* ppl_test.cpp -- P languages: membership, combinators, enumeration. */

#include <set>

#include "doctest.h"
#include "helpers.hpp"
#include "ppd/ppl.hpp"

using namespace ppd;
using namespace ppd::testhelp;

namespace {

bool is_aibici(const Word& w) {
    size_t n = w.length();
    if (n == 0 || n % 3 != 0) return false;
    size_t i = n / 3;
    for (size_t k = 0; k < n; ++k) {
        const std::string& want = k < i ? "a" : (k < 2 * i ? "b" : "c");
        if (w.at(k).name() != want) return false;
    }
    return true;
}

std::set<Word> member_set(const PplLanguage& L, size_t max_len) {
    std::set<Word> out;
    for_all_words(L.alphabet, max_len, [&](const Word& w) {
        if (member(L, w)) out.insert(w);
    });
    return out;
}

// {x^n y^n | n >= 1} over fresh letters, a genuinely non-regular P language.
PplLanguage xnyn_language(const std::string& x, const std::string& y) {
    Symbol a = sym(x), b = sym(y);
    Alphabet al({a, b});
    Fsa as = fsa_letter_star(al, a), bs = fsa_letter_star(al, b);
    Fsa shape = combine_fsa(FsaCombine::Concat, as, &bs);
    Fsa eps = fsa_single_word(al, Word());
    Fsa noeps = combine_fsa(FsaCombine::Complement, eps);
    Fsa both = combine_fsa(FsaCombine::Intersection, shape, &noeps);
    Dpda m = product_with_fsa(make_counter(1, {{a, 1}, {b, -1}}), both, false);
    m.name = x + "n" + y + "n";
    return make_language(m.name, {m});
}

// Sign-pure runs x* + X* (the Z normal forms); contains eps.
PplLanguage run_language(const std::string& x, const std::string& X) {
    Symbol a = sym(x), b = sym(X);
    Alphabet al({a, b});
    Fsa as = fsa_letter_star(al, a), bs = fsa_letter_star(al, b);
    Fsa runs = combine_fsa(FsaCombine::Union, as, &bs);
    return make_language(x + "-runs", {fsa_to_dpda(runs, "runs")});
}

}  // namespace

TEST_CASE("aibici witness on words up to length 9") {
    PplLanguage L = aibici_language();
    REQUIRE(L.machines.size() == 2);
    for_all_words(L.alphabet, 9, [&](const Word& w) {
        CHECK(member(L, w) == is_aibici(w));
    });
}

TEST_CASE("member_report sums component steps") {
    PplLanguage L = aibici_language();
    MemberReport r = member_report(L, word("a a b b c c"));
    CHECK(r.accepted);
    CHECK(r.steps >= 12);  // at least one step per letter per machine
}

TEST_CASE("intersect is set intersection") {
    PplLanguage L = xnyn_language("a", "b");
    Alphabet al = L.alphabet;
    Fsa shortish = fsa_letter_star(al, sym("a"));
    PplLanguage M = union_regular(L, shortish);
    PplLanguage I = intersect(L, M);
    for_all_words(al, 6, [&](const Word& w) {
        CHECK(member(I, w) == (member(L, w) && member(M, w)));
    });
}

TEST_CASE("union_regular and minus_regular against brute force") {
    PplLanguage L = xnyn_language("a", "b");
    Alphabet al = L.alphabet;
    Fsa r = fsa_letter_star(al, sym("a"));
    PplLanguage U = union_regular(L, r);
    PplLanguage D = minus_regular(L, r);
    for_all_words(al, 6, [&](const Word& w) {
        CHECK(member(U, w) == (member(L, w) || run_fsa(r, w)));
        CHECK(member(D, w) == (member(L, w) && !run_fsa(r, w)));
    });
}

TEST_CASE("concat_disjoint with and without star") {
    PplLanguage L = xnyn_language("a", "b");
    PplLanguage M = xnyn_language("c", "d");
    Alphabet joint = L.alphabet.unioned(M.alphabet);
    auto in_L = member_set(L, 4);
    auto in_M = member_set(M, 4);

    PplLanguage C = concat_disjoint(L, M, false);
    std::set<Word> expect;
    for (const Word& u : in_L)
        for (const Word& v : in_M)
            if (u.length() + v.length() <= 6) expect.insert(u.concat(v));
    for_all_words(joint, 6, [&](const Word& w) {
        CHECK(member(C, w) == (expect.count(w) > 0));
    });

    PplLanguage S = concat_disjoint(L, M, true);
    std::set<Word> star_expect{Word()};
    star_expect.insert(expect.begin(), expect.end());
    for (const Word& u : expect)
        for (const Word& v : expect)
            if (u.length() + v.length() <= 6) star_expect.insert(u.concat(v));
    for_all_words(joint, 6, [&](const Word& w) {
        CHECK(member(S, w) == (star_expect.count(w) > 0));
    });
}

TEST_CASE("alternating_concat accepts exactly good alternating words") {
    PplLanguage M = run_language("a", "A");
    PplLanguage L = run_language("b", "B");
    PplLanguage W = alternating_concat(M, L);
    Alphabet joint = M.alphabet.unioned(L.alphabet);
    auto good = [&](const Word& w) {
        // Split into maximal same-alphabet runs and check each membership.
        size_t i = 0;
        while (i < w.length()) {
            bool in_m = M.alphabet.contains(w.at(i));
            size_t j = i;
            const Alphabet& al = in_m ? M.alphabet : L.alphabet;
            while (j < w.length() && al.contains(w.at(j))) ++j;
            Word run = w.subword(i, j);
            if (!(in_m ? member(M, run) : member(L, run))) return false;
            i = j;
        }
        return true;
    };
    for_all_words(joint, 6, [&](const Word& w) {
        CHECK(member(W, w) == good(w));
    });
}

TEST_CASE("enumerate_language is shortlex, complete, and pruned") {
    PplLanguage L = aibici_language();
    auto words = enumerate_language(L, 9);
    std::set<Word> got(words.begin(), words.end());
    CHECK(got == member_set(L, 9));
    CHECK(words.size() == 3);  // abc, aabbcc, aaabbbccc
    ShortlexOrder ord(L.alphabet);
    for (size_t i = 1; i < words.size(); ++i)
        CHECK(ord.less(words[i - 1], words[i]));
}

TEST_CASE("language cursor mirrors member verdicts") {
    PplLanguage L = aibici_language();
    LanguageCursor c(L);
    CHECK(!c.accepts_here());
    for (Symbol s : word("a a b b c c")) c.consume(s);
    CHECK(c.accepts_here());
    c.consume(sym("a"));
    CHECK(!c.accepts_here());
    // Once off the language, the cursor never accepts again (dead() may stay
    // conservatively false on explicit non-sink trap states).
    PplLanguage R = run_language("a", "A");
    LanguageCursor d(R);
    d.consume(sym("a"));
    CHECK(d.accepts_here());
    d.consume(sym("A"));
    CHECK(!d.accepts_here());
    d.consume(sym("a"));
    CHECK(!d.accepts_here());
}
