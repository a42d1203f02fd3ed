/* registry.cpp -- construction and calibration of the shipped structures. */

#include "ppd/registry.hpp"

#include <stdexcept>

#include "ppd/constructions.hpp"
#include "ppd/machine_builder.hpp"
#include "ppd/unitriangular.hpp"

namespace ppd {

namespace {

// The Z structure over {lo, hi}: language lo* + hi*, one counter multiplier.
PStructure make_z(const std::string& lo, const std::string& hi) {
    Symbol x = Symbol::intern(lo), X = Symbol::intern(hi);
    Alphabet A({x, X});
    Fsa f;
    f.alphabet = A;
    f.num_states = 4;  // 0 start, 1 in lo-run, 2 in hi-run, 3 dead
    f.transitions = {1, 2, 1, 3, 3, 2, 3, 3};
    f.start = 0;
    f.accepting = {true, true, true, false};
    PStructure s;
    s.name = "z-" + lo;
    s.alphabet = A;
    s.language = make_language(s.name + "-nf", {fsa_to_dpda(f, "nf")});
    s.oracle = tuple_oracle("Z", A, {{x, {1}}, {X, {-1}}});
    TwoTapePda mx = block_counter("mul-" + lo, A, A,
                                  {{Side::Left, {{x, 1}, {X, -1}}},
                                   {Side::Right, {{x, -1}, {X, 1}}}},
                                  1);
    s.multipliers[x] = make_relation("Rx", {mx});
    s.multipliers[X] = swap_tapes(s.multipliers[x]);
    s.normal_form_of = [x, X](const GroupOracle::Elem& e) {
        long k = static_cast<long>(tuple_value(e)[0]);
        Word w;
        for (long i = 0; i < (k < 0 ? -k : k); ++i) w.push_back(k > 0 ? x : X);
        return w;
    };
    s.nf_factor = 1;
    s.nf_offset = 0;
    return s;
}

// Z^2 built natively: x-run then y-run, one counter per coordinate.
PStructure make_z2() {
    Symbol x = Symbol::intern("x"), X = Symbol::intern("X");
    Symbol y = Symbol::intern("y"), Y = Symbol::intern("Y");
    Alphabet A({x, X, y, Y});
    Fsa f;
    f.alphabet = A;
    f.num_states = 6;  // 0 start, 1 x+, 2 x-, 3 y+, 4 y-, 5 dead
    f.start = 0;
    f.accepting = {true, true, true, true, true, false};
    f.transitions.assign(6 * 4, 5);
    auto edge = [&](int from, Symbol a, int to) {
        f.transitions[static_cast<size_t>(from) * 4 +
                      static_cast<size_t>(A.index_of(a))] = to;
    };
    edge(0, x, 1); edge(0, X, 2); edge(0, y, 3); edge(0, Y, 4);
    edge(1, x, 1); edge(1, y, 3); edge(1, Y, 4);
    edge(2, X, 2); edge(2, y, 3); edge(2, Y, 4);
    edge(3, y, 3);
    edge(4, Y, 4);
    PStructure s;
    s.name = "z2";
    s.alphabet = A;
    s.language = make_language("z2-nf", {fsa_to_dpda(f, "nf")});
    s.oracle = tuple_oracle("Z2", A,
                            {{x, {1, 0}}, {X, {-1, 0}}, {y, {0, 1}}, {Y, {0, -1}}});
    auto coord = [&](Symbol pos, Symbol neg, Symbol opos, Symbol oneg, int off) {
        CounterPhase l{Side::Left, {{pos, 1}, {neg, -1}, {opos, 0}, {oneg, 0}}};
        CounterPhase r{Side::Right, {{pos, -1}, {neg, 1}, {opos, 0}, {oneg, 0}}};
        return block_counter("z2-" + pos.name(), A, A, {l, r}, off);
    };
    s.multipliers[x] =
        make_relation("Rx", {coord(x, X, y, Y, 1), coord(y, Y, x, X, 0)});
    s.multipliers[X] = swap_tapes(s.multipliers[x]);
    s.multipliers[y] =
        make_relation("Ry", {coord(x, X, y, Y, 0), coord(y, Y, x, X, 1)});
    s.multipliers[Y] = swap_tapes(s.multipliers[y]);
    s.normal_form_of = [x, X, y, Y](const GroupOracle::Elem& e) {
        auto v = tuple_value(e);
        Word w;
        for (long i = 0; i < (v[0] < 0 ? -v[0] : v[0]); ++i)
            w.push_back(v[0] > 0 ? x : X);
        for (long i = 0; i < (v[1] < 0 ? -v[1] : v[1]); ++i)
            w.push_back(v[1] > 0 ? y : Y);
        return w;
    };
    s.nf_factor = 1;
    s.nf_offset = 0;
    return s;
}

PStructure make_klein() {
    Symbol z = Symbol::intern("z"), Z = Symbol::intern("Z");
    Symbol x1 = Symbol::intern("x1"), X1 = Symbol::intern("X1");
    Symbol ss = Symbol::intern("s"), SS = Symbol::intern("S");
    Alphabet KA({z, Z, x1, X1, ss, SS});
    Fsa lang;
    lang.alphabet = KA;
    lang.num_states = 7;  // 0 start, 1 z+, 2 Z+, 3 x+, 4 X+, 5 s, 6 dead
    lang.start = 0;
    lang.accepting = {true, true, true, true, true, true, false};
    lang.transitions.assign(7 * KA.size(), 6);
    auto edge = [&](int from, Symbol a, int to) {
        lang.transitions[static_cast<size_t>(from) * KA.size() +
                         static_cast<size_t>(KA.index_of(a))] = to;
    };
    edge(0, z, 1); edge(0, Z, 2); edge(0, x1, 3); edge(0, X1, 4); edge(0, ss, 5);
    edge(1, z, 1); edge(1, x1, 3); edge(1, X1, 4); edge(1, ss, 5);
    edge(2, Z, 2); edge(2, x1, 3); edge(2, X1, 4); edge(2, ss, 5);
    edge(3, x1, 3); edge(3, ss, 5);
    edge(4, X1, 4); edge(4, ss, 5);

    auto eq = [](std::map<Symbol, int> l, std::map<Symbol, int> r, int off) {
        return LinearCondition{std::move(l), std::move(r), off};
    };
    std::map<Symbol, std::vector<LinearCondition>> conds;
    LinearCondition p_eq = eq({{z, 1}, {Z, -1}}, {{z, -1}, {Z, 1}}, 0);
    LinearCondition s_eq = eq({{ss, 1}}, {{ss, -1}}, 0);
    LinearCondition n_eq = eq({{x1, 1}, {X1, -1}}, {{x1, -1}, {X1, 1}}, 0);
    conds[x1] = {p_eq, s_eq,
                 eq({{x1, 1}, {X1, -1}, {ss, -2}}, {{x1, -1}, {X1, 1}}, 1)};
    conds[X1] = {p_eq, s_eq,
                 eq({{x1, 1}, {X1, -1}, {ss, 2}}, {{x1, -1}, {X1, 1}}, -1)};
    conds[z] = {eq({{z, 1}, {Z, -1}}, {{z, -1}, {Z, 1}}, 1), s_eq, n_eq};
    conds[Z] = {eq({{z, 1}, {Z, -1}}, {{z, -1}, {Z, 1}}, -1), s_eq, n_eq};
    LinearCondition s_flip = eq({{ss, 1}}, {{ss, 1}}, -1);
    conds[ss] = {eq({{z, 1}, {Z, -1}, {ss, 1}}, {{z, -1}, {Z, 1}}, 0), s_flip,
                 n_eq};
    conds[SS] = {eq({{z, 1}, {Z, -1}, {ss, 1}}, {{z, -1}, {Z, 1}}, -1), s_flip,
                 n_eq};

    TransversalSpec T;
    T.name = "klein";
    T.alphabet = KA;
    T.oracle = klein_oracle(KA, {{z, {0, 2}},
                                 {Z, {0, -2}},
                                 {x1, {1, 0}},
                                 {X1, {-1, 0}},
                                 {ss, {0, 1}},
                                 {SS, {0, -1}}});
    T.language = lang;
    T.conditions = conds;
    T.normal_form_of = [z, Z, x1, X1, ss](const GroupOracle::Elem& e) {
        auto [nn, mm] = klein_value(e);
        long sigma = ((mm % 2) + 2) % 2, p = (mm - sigma) / 2;
        Word w;
        for (long i = 0; i < (p < 0 ? -p : p); ++i) w.push_back(p > 0 ? z : Z);
        for (long i = 0; i < (nn < 0 ? -nn : nn); ++i)
            w.push_back(nn > 0 ? x1 : X1);
        if (sigma) w.push_back(ss);
        return w;
    };
    return virtually_semidirect(IntegerMatrix::from_rows({{-1}}), T);
}

PStructure build_id(const std::string& id) {
    if (id == "z") return make_z("x", "X");
    if (id == "z2") return make_z2();
    if (id == "z-x-z") return direct_product(make_z("x", "X"), make_z("y", "Y"));
    if (id == "f2") return free_product(make_z("x", "X"), make_z("y", "Y"));
    if (id == "h3") return heisenberg_structure(3);
    if (id == "h4") return heisenberg_structure(4);
    if (id == "u3") return unitriangular_structure(3);
    if (id == "u4") return unitriangular_structure(4);
    if (id == "u5") return unitriangular_structure(5);
    if (id == "sol" || id == "nil") {
        PStructure zt = make_z("t", "T");
        IntegerMatrix A = id == "sol" ? IntegerMatrix::from_rows({{2, 1}, {1, 1}})
                                      : IntegerMatrix::from_rows({{1, 1}, {0, 1}});
        return semidirect_Zn({{Symbol::intern("t"), A},
                              {Symbol::intern("T"), A.inverse()}},
                             zt);
    }
    if (id == "lamplighter") {
        PStructure za = make_z("a", "A"), zt = make_z("t", "T");
        ShortlexOrder ord(zt.alphabet);
        return wreath_product(za, zt, ord);
    }
    if (id == "klein") return make_klein();
    throw std::invalid_argument("unknown group id: " + id);
}

struct NfBound {
    size_t factor, offset;
};

// Frozen from calibrate_nf_bound at each id's shipped radius; the tests
// recompute and compare.
NfBound nf_table(const std::string& id) {
    if (id == "z" || id == "z2" || id == "z-x-z" || id == "f2") return {1, 1};
    if (id == "h3" || id == "h4" || id == "u3" || id == "u4" || id == "u5")
        return {2, 1};
    if (id == "sol") return {6, 1};
    if (id == "nil") return {2, 1};
    if (id == "lamplighter") return {3, 1};
    if (id == "klein") return {2, 1};
    throw std::invalid_argument("unknown group id: " + id);
}

}  // namespace

std::vector<std::string> shipped_structure_ids() {
    return {"z",  "z2", "z-x-z", "f2",  "h3",          "h4",   "u3",
            "u4", "u5", "sol",   "nil", "lamplighter", "klein"};
}

int shipped_structure_radius(const std::string& id) {
    nf_table(id);  // validates the id
    if (id == "u4" || id == "lamplighter") return 3;
    if (id == "u5") return 2;
    return 4;
}

PStructure shipped_structure(const std::string& id) {
    PStructure s = build_id(id);
    NfBound b = nf_table(id);
    s.nf_factor = b.factor;
    s.nf_offset = b.offset;
    return s;
}

}  // namespace ppd
