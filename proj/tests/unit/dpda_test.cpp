/* dpda_test.cpp -- machine validation, runs, counters, products. */

#include "doctest.h"
#include "helpers.hpp"
#include "ppd/dpda.hpp"

using namespace ppd;
using namespace ppd::testhelp;

TEST_CASE("make_counter accepts exactly zero-sum words") {
    Symbol a = sym("a"), b = sym("b");
    Dpda m = make_counter(1, {{a, 1}, {b, -1}});
    Alphabet al({a, b});
    for_all_words(al, 6, [&](const Word& w) {
        long sum = 0;
        for (Symbol s : w) sum += (s == a) ? 1 : -1;
        CHECK(run(m, w).accepted == (sum == 0));
    });
}

TEST_CASE("counter_value tracks the running sum") {
    Symbol a = sym("a"), b = sym("b");
    Dpda m = make_counter(2, {{a, 2}, {b, -1}});
    DpdaCursor c(m);
    CHECK(counter_value(c) == 0);
    c.consume(a);
    CHECK(counter_value(c) == 2);
    c.consume(b);
    c.consume(b);
    CHECK(counter_value(c) == 0);
    CHECK(c.accepts_here());
    c.consume(b);
    CHECK(counter_value(c) == -1);
    CHECK(!c.accepts_here());
}

TEST_CASE("fsa_to_dpda preserves the language") {
    Alphabet a({sym("a"), sym("b")});
    Fsa f = fsa_letter_star(a, sym("a"));
    Dpda m = fsa_to_dpda(f, "astar");
    for_all_words(a, 5, [&](const Word& w) {
        CHECK(run(m, w).accepted == run_fsa(f, w));
    });
}

TEST_CASE("to_final_state preserves an empty-stack language") {
    // A raw empty-stack machine for {a^n b^n | n >= 0} built by hand.
    Symbol a = sym("a"), b = sym("b");
    Dpda m;
    m.name = "anbn";
    m.state_names = {"push", "pop"};
    m.input = Alphabet({a, b});
    m.stack_syms = {sym("Z"), sym("C")};
    m.accepting = {false, false};
    m.mode = AcceptMode::EmptyStack;
    m.cells.resize(4);
    m.cell(0, 0).eps = DpdaRule{0, {}};                 // eps-pop the bottom
    m.cell(0, 1).letter = {std::nullopt, std::nullopt};
    m.cell(0, 1).letter[0] = DpdaRule{0, {1, 1}};       // a: push C
    m.cell(0, 1).letter[1] = DpdaRule{1, {}};           // b: pop
    m.cell(1, 1).letter = {std::nullopt, std::nullopt};
    m.cell(1, 1).letter[1] = DpdaRule{1, {}};           // b: pop
    m.cell(1, 0).eps = DpdaRule{1, {}};
    // Seed: a pushes C over bottom.
    m.cell(0, 0).eps.reset();
    m.cell(0, 0).letter = {std::nullopt, std::nullopt};
    m.cell(0, 0).letter[0] = DpdaRule{0, {0, 1}};
    REQUIRE(validate(m).ok());

    auto in_lang = [](const Word& w) {
        size_t i = 0;
        while (i < w.length() && w.at(i).name() == "a") ++i;
        if (i * 2 != w.length() || i == 0) return false;
        for (size_t j = i; j < w.length(); ++j)
            if (w.at(j).name() != "b") return false;
        return true;
    };
    Dpda fs = to_final_state(m);
    CHECK(fs.mode == AcceptMode::FinalState);
    for_all_words(m.input, 6, [&](const Word& w) {
        CHECK(run(m, w).accepted == in_lang(w));
        CHECK(run(fs, w).accepted == in_lang(w));
    });
}

TEST_CASE("validate completes sparse cells and flags nondeterminism") {
    Symbol a = sym("a");
    Dpda m;
    m.state_names = {"s"};
    m.input = Alphabet({a});
    m.stack_syms = {sym("Z")};
    m.accepting = {true};
    m.mode = AcceptMode::FinalState;
    m.cells.resize(1);
    ValidationReport r = validate(m);
    CHECK(r.ok());
    CHECK(r.completed_rules >= 1);  // the missing a-rule got routed to the sink
    CHECK(m.sink >= 0);

    // An eps rule alongside a letter rule in one cell is nondeterministic.
    Dpda bad = m;
    bad.sink = -1;
    bad.cells.assign(1, {});
    bad.cells[0].eps = DpdaRule{0, {0}};
    bad.cells[0].letter = {DpdaRule{0, {0}}};
    CHECK(!validate(bad).ok());
}

TEST_CASE("epsilon divergence is detected, not looped") {
    Symbol a = sym("a");
    Dpda m;
    m.name = "spin";
    m.state_names = {"s"};
    m.input = Alphabet({a});
    m.stack_syms = {sym("Z")};
    m.accepting = {false};
    m.mode = AcceptMode::FinalState;
    m.cells.resize(1);
    m.cells[0].eps = DpdaRule{0, {0}};  // rewrite Z -> Z forever
    REQUIRE(validate(m).ok());
    CHECK_THROWS_AS(run(m, word("a")), DivergenceError);
}

TEST_CASE("product_with_fsa computes AND / OR verdicts") {
    Symbol a = sym("a"), b = sym("b");
    Alphabet al({a, b});
    Dpda counter = make_counter(1, {{a, 1}, {b, -1}});
    Fsa astart = fsa_letter_star(al, a);  // a*
    Dpda both = product_with_fsa(counter, astart, false);
    Dpda either = product_with_fsa(counter, astart, true);
    for_all_words(al, 5, [&](const Word& w) {
        bool c = run(counter, w).accepted, f = run_fsa(astart, w);
        CHECK(run(both, w).accepted == (c && f));
        CHECK(run(either, w).accepted == (c || f));
    });
}

TEST_CASE("live_states never prunes a word the machine accepts") {
    Symbol a = sym("a"), b = sym("b");
    Dpda m = make_counter(1, {{a, 1}, {b, -1}});
    auto live = live_states(m);
    REQUIRE(static_cast<int>(live.size()) == m.num_states());
    for_all_words(m.input, 5, [&](const Word& w) {
        if (w.empty()) return;
        RunReport r = run(m, w);
        if (r.accepted) CHECK(live[r.final_state]);
    });
}

TEST_CASE("cursor steps equal run steps") {
    Symbol a = sym("a"), b = sym("b");
    Dpda m = make_counter(1, {{a, 1}, {b, -1}});
    Word w = word("a a b b a b");
    RunReport r = run(m, w);
    DpdaCursor c(m);
    for (Symbol s : w) c.consume(s);
    CHECK(c.steps() == r.steps);
    CHECK(c.accepts_here() == r.accepted);
}
