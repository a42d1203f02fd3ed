/* pstructure_test.cpp -- structure checking, rebasing, word problem. */

#include <random>

#include "doctest.h"
#include "helpers.hpp"
#include "ppd/machine_builder.hpp"
#include "ppd/pstructure.hpp"
#include "ppd/registry.hpp"

using namespace ppd;
using namespace ppd::testhelp;

TEST_CASE("check_structure passes on the Z and Z^2 structures") {
    for (const char* id : {"z", "z2"}) {
        PStructure s = shipped_structure(id);
        CheckReport r = check_structure(s, 3);
        CHECK(r.ok());
        CHECK(r.ball_size == (id == std::string("z") ? 7 : 25));
        CHECK(r.multiplier_checks > 0);
    }
}

TEST_CASE("check_structure names the failing pair on an injected fault") {
    PStructure s = shipped_structure("z");
    std::swap(s.multipliers[sym("x")], s.multipliers[sym("X")]);
    CheckReport r = check_structure(s, 2);
    REQUIRE(!r.ok());
    CHECK(r.issues[0].find("multiplier") != std::string::npos);
    CHECK(r.issues[0].find("disagrees") != std::string::npos);
    CHECK(r.issues[0].find("oracle") != std::string::npos);
}

TEST_CASE("check_structure reports missing multipliers") {
    PStructure s = shipped_structure("z");
    s.multipliers.erase(sym("X"));
    CheckReport r = check_structure(s, 2);
    REQUIRE(!r.ok());
    CHECK(r.issues[0].find("no multiplier for generator X") !=
          std::string::npos);
}

TEST_CASE("check_structure flags a non-injective language") {
    PStructure s = shipped_structure("z");
    // Adjoin xXx, a second representative of the element x.
    s.language = union_regular(
        s.language, fsa_single_word(s.alphabet, word("x X x")));
    CheckReport r = check_structure(s, 2);
    REQUIRE(!r.ok());
    CHECK(r.issues[0].find("multiple normal forms") != std::string::npos);
}

TEST_CASE("identity_representative finds eps on shipped structures") {
    PStructure s = shipped_structure("z2");
    CHECK(identity_representative(s, 4) == Word());
    CHECK_THROWS_AS(identity_representative(
                        PStructure{"empty", s.alphabet,
                                   minus_regular(s.language,
                                                 fsa_all_words(s.alphabet)),
                                   {}, s.oracle, nullptr, 1, 0},
                    4),
                    BoundExhausted);
}

TEST_CASE("rebase_identity is the identity on already-based structures") {
    PStructure s = shipped_structure("z");
    PStructure r = rebase_identity(s);
    // w0 is already eps, so the structure is returned unchanged.
    CHECK(r.name == s.name);
    CHECK(r.language.machines.size() == s.language.machines.size());
}

TEST_CASE("rebase_identity moves a shifted identity back to eps") {
    // Fixture: the Z structure with the identity deliberately represented by
    // "x X" instead of eps (language and multipliers patched by hand).
    PStructure s = shipped_structure("z");
    Symbol x = sym("x"), X = sym("X");
    Word w0 = word("x X");
    PStructure shifted = s;
    shifted.name = "z-shifted";
    shifted.language = union_regular(
        minus_regular(s.language, fsa_single_word(s.alphabet, Word())),
        fsa_single_word(s.alphabet, w0));
    shifted.normal_form_of = [s, w0](const GroupOracle::Elem& e) {
        Word w = s.normal_form_of(e);
        return w.empty() ? w0 : w;
    };
    for (Symbol a : s.alphabet.symbols()) {
        const AtpplRelation& rel = s.multipliers.at(a);
        Word ua = s.normal_form_of(s.oracle->generator(a));
        Word va = s.normal_form_of(s.oracle->invert(s.oracle->generator(a)));
        std::vector<std::pair<Word, Word>> removed{{Word(), ua}, {va, Word()}};
        std::vector<std::pair<Word, Word>> added{{w0, ua}, {va, w0}};
        std::vector<TwoTapePda> machines;
        for (const auto& m : rel.machines)
            machines.push_back(union_with_pairs(m, added));
        machines.push_back(union_with_pairs(
            finite_pair_machine(rel.left_alphabet, rel.right_alphabet, removed,
                                true),
            added));
        shifted.multipliers[a] = make_relation(rel.name + "-shifted",
                                               std::move(machines));
    }
    CHECK(identity_representative(shifted, 4) == w0);
    CHECK(check_structure(shifted, 3).ok());

    PStructure back = rebase_identity(shifted);
    CHECK(identity_representative(back, 4) == Word());
    CHECK(check_structure(back, 3).ok());
    // Membership agrees with the original structure up to length 8.
    for_all_words(s.alphabet, 8, [&](const Word& w) {
        CHECK(member(back.language, w) == member(s.language, w));
    });
}

TEST_CASE("word_problem agrees with the oracle on z2") {
    PStructure s = shipped_structure("z2");
    for_all_words(s.alphabet, 4, [&](const Word& w) {
        CHECK(word_problem(s, w) == s.oracle->is_identity_word(w));
    });
}

TEST_CASE("word_problem enumeration path agrees with the fast path") {
    PStructure s = shipped_structure("z");
    WordProblemOptions enumerate;
    enumerate.use_enumeration = true;
    std::mt19937 rng(23);
    for (int i = 0; i < 50; ++i) {
        Word w = random_word(s.alphabet, 6, rng);
        CHECK(word_problem(s, w) == word_problem(s, w, enumerate));
    }
}

TEST_CASE("word_problem honors the successor ceiling") {
    PStructure s = shipped_structure("z");
    WordProblemOptions tight;
    tight.ceiling_factor = 0;
    tight.ceiling_offset = 2;
    CHECK_THROWS_AS(word_problem(s, word("x x x x"), tight), BoundExhausted);
    CHECK(word_problem(s, word("x x X X"), tight));
}
