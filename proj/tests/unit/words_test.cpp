/* words_test.cpp -- words, tagging, shuffles, shortlex. */

#include "doctest.h"
#include "helpers.hpp"
#include "ppd/words.hpp"

using namespace ppd;
using namespace ppd::testhelp;

TEST_CASE("word parsing and display round-trip") {
    Word w = Word::parse("x2 Y2 z");
    CHECK(w.length() == 3);
    CHECK(w.at(0) == sym("x2"));
    CHECK(w.at(1) == sym("Y2"));
    CHECK(w.str() == "x2 Y2 z");
    CHECK(Word::parse("") == Word());
    CHECK(Word::parse("  a   b ") == Word(std::vector<Symbol>{sym("a"), sym("b")}));
}

TEST_CASE("concat and subword") {
    Word u = word("a b"), v = word("c");
    CHECK(u.concat(v) == word("a b c"));
    CHECK(word("a b c d").subword(1, 3) == word("b c"));
    CHECK(word("a b").subword(1, 1) == Word());
}

TEST_CASE("tag_word applies and strips tags") {
    Word w = word("a b");
    Word t = tag_word(w, Tag::Sharp);
    CHECK(t.at(0).name() == "a#");
    CHECK(t.at(1).name() == "b#");
    CHECK(tag_word(t, Tag::None) == w);
    CHECK_THROWS(tag_word(t, Tag::Flat));  // already tagged
}

TEST_CASE("formal_inverse is an involution") {
    Word w = word("a b a");
    Word fi = formal_inverse(w);
    CHECK(fi.length() == 3);
    CHECK(fi.at(0).name() == "a!");
    CHECK(fi.at(1).name() == "b!");
    CHECK(formal_inverse(fi) == w);
    CHECK(formal_inverse(Word()) == Word());
}

TEST_CASE("shuffle enumeration counts") {
    // [DERIVED] brute-force interleaving counts C(|u|+|v|, |u|).
    auto count = [](const std::string& u, const std::string& v) {
        return enumerate_shuffles(word(u), word(v)).size();
    };
    CHECK(count("a b", "c d") == 6);
    CHECK(count("", "") == 1);
    CHECK(count("a", "") == 1);
    CHECK(count("a", "b") == 2);
    CHECK(count("a b c", "d e") == 10);
}

TEST_CASE("shuffle blocks reassemble their sources") {
    Word u = word("a b"), v = word("c d");
    for (const Shuffle& s : enumerate_shuffles(u, v)) {
        CHECK(s.left_source() == u);
        CHECK(s.right_source() == v);
        CHECK(s.tagged.length() == 4);
    }
}

TEST_CASE("shuffle cap throws") {
    Alphabet a({sym("a")});
    Word long_word;
    for (int i = 0; i < 10; ++i) long_word.push_back(sym("a"));
    CHECK_THROWS(enumerate_shuffles(long_word, long_word, 16));
}

TEST_CASE("shortlex order: length first, then letter order") {
    ShortlexOrder ord(Alphabet({sym("a"), sym("b")}));
    CHECK(ord.compare(Word(), word("a")) == Order::Less);
    CHECK(ord.compare(word("b"), word("a a")) == Order::Less);
    CHECK(ord.compare(word("a b"), word("b a")) == Order::Less);
    CHECK(ord.compare(word("a b"), word("a b")) == Order::Equal);
    CHECK(ord.compare(word("b a"), word("a b")) == Order::Greater);
    CHECK(shortlex_compare(word("a"), word("b"), ord) == Order::Less);
}
