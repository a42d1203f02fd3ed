/* registry_test.cpp -- the shipped structure catalogue. */

#include <set>

#include "doctest.h"
#include "helpers.hpp"
#include "ppd/registry.hpp"

using namespace ppd;
using namespace ppd::testhelp;

TEST_CASE("the catalogue lists every documented id exactly once") {
    auto ids = shipped_structure_ids();
    std::set<std::string> want{"z",  "z2", "z-x-z", "f2",  "h3",
                               "h4", "u3", "u4",    "u5",  "sol",
                               "nil", "lamplighter", "klein"};
    CHECK(std::set<std::string>(ids.begin(), ids.end()) == want);
    CHECK(ids.size() == want.size());
}

TEST_CASE("unknown ids are rejected") {
    CHECK_THROWS_AS(shipped_structure("zz"), std::invalid_argument);
    CHECK_THROWS_AS(shipped_structure_radius("zz"), std::invalid_argument);
}

TEST_CASE("shipped radii") {
    CHECK(shipped_structure_radius("z") == 4);
    CHECK(shipped_structure_radius("u4") == 3);
    CHECK(shipped_structure_radius("u5") == 2);
    CHECK(shipped_structure_radius("lamplighter") == 3);
}

TEST_CASE("every structure is fully wired") {
    for (const std::string& id : shipped_structure_ids()) {
        PStructure s = shipped_structure(id);
        CHECK_MESSAGE(!s.language.machines.empty(), id);
        CHECK_MESSAGE(s.oracle != nullptr, id);
        CHECK_MESSAGE(bool(s.normal_form_of), id);
        CHECK_MESSAGE(s.alphabet.size() % 2 == 0, id);
        for (size_t i = 0; i < s.alphabet.size(); ++i)
            CHECK_MESSAGE(s.multipliers.count(s.alphabet.at(i)) == 1, id);
        // Inverse closure: the oracle inverts every generator inside the
        // alphabet's image.
        for (size_t i = 0; i < s.alphabet.size(); ++i) {
            auto inv = s.oracle->invert(s.oracle->generator(s.alphabet.at(i)));
            bool found = false;
            for (size_t j = 0; j < s.alphabet.size(); ++j)
                if (s.oracle->equal(inv,
                                    s.oracle->generator(s.alphabet.at(j))))
                    found = true;
            CHECK_MESSAGE(found, id);
        }
        // normal_form_of(1) is the empty word on every shipped structure.
        CHECK_MESSAGE(s.normal_form_of(s.oracle->identity()) == Word(), id);
    }
}

TEST_CASE("shipped oracles satisfy the group laws") {
    for (const std::string& id : shipped_structure_ids()) {
        PStructure s = shipped_structure(id);
        CHECK_MESSAGE(check_group_laws(*s.oracle, 100, 17).empty(), id);
    }
}

TEST_CASE("frozen ball sizes at the shipped radii") {
    // [DERIVED] breadth-first over the oracles; regression-pinned.
    struct Row {
        const char* id;
        size_t size;
    };
    for (const Row& row : std::initializer_list<Row>{
             {"z", 9}, {"z2", 41}, {"z-x-z", 41}, {"f2", 161}, {"h3", 189},
             {"h4", 1025},
             {"u3", 189}, {"u4", 577}, {"u5", 261}, {"sol", 273},
             {"nil", 189}, {"lamplighter", 53}, {"klein", 73}}) {
        PStructure s = shipped_structure(row.id);
        CHECK_MESSAGE(
            ball(*s.oracle, shipped_structure_radius(row.id)).elements.size() ==
                row.size,
            row.id);
    }
}
