#include "ppd/ppl.hpp"

#include <algorithm>
#include <stdexcept>

#include "ppd/machine_builder.hpp"

namespace ppd {

PplLanguage make_language(std::string name, std::vector<Dpda> machines) {
    if (machines.empty())
        throw std::invalid_argument("make_language: no component machines");
    PplLanguage L;
    L.name = std::move(name);
    L.alphabet = machines.front().input;
    for (const auto& m : machines)
        if (!(m.input == L.alphabet))
            throw std::invalid_argument("make_language: alphabet mismatch in " +
                                        m.name);
    L.machines = std::move(machines);
    return L;
}

LanguageCursor::LanguageCursor(const PplLanguage& L, RunLimits limits) {
    cursors_.reserve(L.machines.size());
    for (const auto& m : L.machines) cursors_.emplace_back(m, limits);
}

void LanguageCursor::consume(Symbol s) {
    for (auto& c : cursors_) c.consume(s);
}

bool LanguageCursor::dead() const {
    // a halted component blocks every extension (it may still accept here)
    for (const auto& c : cursors_)
        if (c.dead()) return true;
    return false;
}

bool LanguageCursor::accepts_here() const {
    for (const auto& c : cursors_)
        if (!c.accepts_here()) return false;
    return true;
}

long LanguageCursor::steps() const {
    long total = 0;
    for (const auto& c : cursors_) total += c.steps();
    return total;
}

MemberReport member_report(const PplLanguage& L, const Word& w,
                           RunLimits limits) {
    MemberReport report;
    LanguageCursor cur(L, limits);
    for (Symbol s : w) {
        cur.consume(s);
    }
    report.accepted = cur.accepts_here();
    report.steps = cur.steps();
    return report;
}

bool member(const PplLanguage& L, const Word& w, RunLimits limits) {
    return member_report(L, w, limits).accepted;
}

PplLanguage intersect(const PplLanguage& L, const PplLanguage& M) {
    if (!(L.alphabet == M.alphabet))
        throw std::invalid_argument("intersect: alphabet mismatch");
    std::vector<Dpda> machines = L.machines;
    machines.insert(machines.end(), M.machines.begin(), M.machines.end());
    PplLanguage out = make_language(L.name + "&" + M.name, std::move(machines));
    return out;
}

namespace {

Dpda normalized(const Dpda& m) {
    return m.mode == AcceptMode::EmptyStack ? to_final_state(m) : m;
}

}  // namespace

PplLanguage union_regular(const PplLanguage& L, const Fsa& R) {
    if (!(R.alphabet == L.alphabet))
        throw std::invalid_argument("union_regular: alphabet mismatch");
    std::vector<Dpda> machines;
    for (const auto& m : L.machines)
        machines.push_back(product_with_fsa(normalized(m), R, true));
    return make_language(L.name + "|R", std::move(machines));
}

PplLanguage minus_regular(const PplLanguage& L, const Fsa& R) {
    if (!(R.alphabet == L.alphabet))
        throw std::invalid_argument("minus_regular: alphabet mismatch");
    std::vector<Dpda> machines = L.machines;
    machines.push_back(
        fsa_to_dpda(combine_fsa(FsaCombine::Complement, R), L.name + "-R"));
    return make_language(L.name + "-R", std::move(machines));
}

namespace {

const Symbol kFloor = Symbol::intern("_floor_");

std::string est(const std::string& pre, int s) {
    return pre + "." + std::to_string(s);
}

// Copies a final-state component's transition table into the builder under
// prefixed state names.  Rules into the component's sink are dropped (the
// host's validation re-completes them toward the host sink).
void embed_cells(MachineBuilder& b, const Dpda& c, const std::string& pre) {
    for (int s = 0; s < c.num_states(); ++s) {
        if (s == c.sink) continue;
        for (size_t t = 0; t < c.stack_syms.size(); ++t) {
            const auto& cell = c.cell(s, static_cast<int>(t));
            auto tgt = [&](int n) {
                return n == c.sink ? pre + ".dead" : est(pre, n);
            };
            auto push_syms = [&](const std::vector<int>& p) {
                std::vector<Symbol> out;
                for (int i : p) out.push_back(c.stack_syms[i]);
                return out;
            };
            if (cell.eps) {
                b.eps(est(pre, s), c.stack_syms[t], tgt(cell.eps->next_state),
                      push_syms(cell.eps->push));
            } else {
                for (size_t li = 0; li < cell.letter.size(); ++li) {
                    const auto& r = cell.letter[li];
                    if (!r || r->next_state == c.sink) continue;
                    b.rule(est(pre, s), c.stack_syms[t], c.input.at(li),
                           tgt(r->next_state), push_syms(r->push));
                }
            }
        }
    }
}

std::string pend_name(const std::string& pre, Symbol a, int q) {
    return pre + ".pend." + a.name() + "." + std::to_string(q);
}

// Epsilon machinery that re-plays an already-consumed letter `a` into the
// component, starting anywhere in its state set (the entry point is the
// component's start state at its start configuration).
void install_replay(MachineBuilder& b, const Dpda& c, const std::string& pre,
                    Symbol a) {
    int li = c.input.index_of(a);
    if (li < 0) throw std::logic_error("install_replay: foreign letter");
    for (int s = 0; s < c.num_states(); ++s) {
        if (s == c.sink) continue;
        for (size_t t = 0; t < c.stack_syms.size(); ++t) {
            const auto& cell = c.cell(s, static_cast<int>(t));
            auto push_syms = [&](const std::vector<int>& p) {
                std::vector<Symbol> out;
                for (int i : p) out.push_back(c.stack_syms[i]);
                return out;
            };
            if (cell.eps) {
                int n = cell.eps->next_state;
                b.eps(pend_name(pre, a, s), c.stack_syms[t],
                      n == c.sink ? pre + ".dead" : pend_name(pre, a, n),
                      push_syms(cell.eps->push));
            } else if (li < static_cast<int>(cell.letter.size()) &&
                       cell.letter[li] &&
                       cell.letter[li]->next_state != c.sink) {
                const auto& r = *cell.letter[li];
                b.eps(pend_name(pre, a, s), c.stack_syms[t], est(pre, r.next_state),
                      push_syms(r.push));
            }
            // otherwise: the letter is rejected here; the cell stays empty and
            // validation routes everything to the host sink
        }
    }
}

// clr-state that pops any of the given symbols, then acts at the floor.
void install_clear(MachineBuilder& b, const std::string& clr,
                   const std::vector<Symbol>& syms, const std::string& target,
                   const std::vector<Symbol>& target_push) {
    for (Symbol s : syms) b.eps(clr, s, clr, {});
    b.eps(clr, kFloor, target, target_push);
}

// Letter cells of accepting states are the legal switch-out points; a cell
// already owning an eps rule cannot take the extra letter rule, and our
// component normal form (to_final_state output) never needs it to.
bool switchable(const Dpda& c, int s, int t) {
    return c.accepting[s] && !c.cell(s, t).eps;
}

}  // namespace

PplLanguage concat_disjoint(const PplLanguage& L, const PplLanguage& M,
                            bool star) {
    if (!L.alphabet.disjoint(M.alphabet))
        throw std::invalid_argument("concat_disjoint: alphabets overlap");
    if (member(L, Word()) || member(M, Word()))
        throw std::invalid_argument(
            "concat_disjoint: the empty word must lie in neither language");
    Alphabet all = L.alphabet.unioned(M.alphabet);
    std::vector<Dpda> machines;
    for (const auto& lm : L.machines) {
        Dpda P = normalized(lm);
        for (const auto& mm : M.machines) {
            Dpda Q = normalized(mm);
            MachineBuilder b(L.name + "." + M.name + "/" + P.name + "*" + Q.name,
                             AcceptMode::FinalState, all);
            embed_cells(b, P, "P");
            embed_cells(b, Q, "Q");
            b.eps("boot", kFloor, est("P", P.start_state),
                  {kFloor, P.stack_syms[P.start_symbol]});
            if (star) b.accept("boot");

            // L-part complete + first M-letter: clear the P-region, start Q,
            // replay the letter
            for (size_t li = 0; li < M.alphabet.size(); ++li) {
                Symbol a = M.alphabet.at(li);
                install_replay(b, Q, "Q", a);
                install_clear(b, "clrQ." + a.name(), P.stack_syms,
                              pend_name("Q", a, Q.start_state),
                              {kFloor, Q.stack_syms[Q.start_symbol]});
                for (int s = 0; s < P.num_states(); ++s)
                    for (size_t t = 0; t < P.stack_syms.size(); ++t)
                        if (s != P.sink && switchable(P, s, static_cast<int>(t)))
                            b.rule(est("P", s), P.stack_syms[t], a,
                                   "clrQ." + a.name(), {});
            }
            if (star) {
                // M-part complete + an L-letter: begin the next LM block
                for (size_t li = 0; li < L.alphabet.size(); ++li) {
                    Symbol a = L.alphabet.at(li);
                    install_replay(b, P, "P", a);
                    install_clear(b, "clrP." + a.name(), Q.stack_syms,
                                  pend_name("P", a, P.start_state),
                                  {kFloor, P.stack_syms[P.start_symbol]});
                    for (int s = 0; s < Q.num_states(); ++s)
                        for (size_t t = 0; t < Q.stack_syms.size(); ++t)
                            if (s != Q.sink && switchable(Q, s, static_cast<int>(t)))
                                b.rule(est("Q", s), Q.stack_syms[t], a,
                                       "clrP." + a.name(), {});
                }
            }
            for (int s = 0; s < Q.num_states(); ++s)
                if (s != Q.sink && Q.accepting[s]) b.accept(est("Q", s));
            b.start("boot", kFloor);
            machines.push_back(b.build());
        }
    }
    std::string name = L.name + (star ? ".star." : ".") + M.name;
    return make_language(name, std::move(machines));
}

PplLanguage alternating_concat(const PplLanguage& M, const PplLanguage& L) {
    if (!L.alphabet.disjoint(M.alphabet))
        throw std::invalid_argument("alternating_concat: alphabets overlap");
    if (!member(L, Word()) || !member(M, Word()))
        throw std::invalid_argument(
            "alternating_concat: the empty word must lie in both languages");
    Alphabet all = L.alphabet.unioned(M.alphabet);
    std::vector<Dpda> machines;
    auto run_checker = [&](const Dpda& comp, const Alphabet& run_alpha,
                           const Alphabet& other_alpha, const std::string& nm) {
        Dpda C = normalized(comp);
        MachineBuilder b(nm, AcceptMode::FinalState, all);
        embed_cells(b, C, "C");
        b.accept("idle");
        // idle: between runs; skip the other alphabet, enter C on a run letter
        for (size_t li = 0; li < other_alpha.size(); ++li)
            b.rule("idle", kFloor, other_alpha.at(li), "idle", {kFloor});
        for (size_t li = 0; li < run_alpha.size(); ++li) {
            Symbol a = run_alpha.at(li);
            install_replay(b, C, "C", a);
            b.rule("idle", kFloor, a, pend_name("C", a, C.start_state),
                   {kFloor, C.stack_syms[C.start_symbol]});
        }
        // run complete + other-alphabet letter: clear and go idle (the letter
        // itself needs no replay; idle skips it anyway)
        install_clear(b, "clr", C.stack_syms, "idle", {kFloor});
        for (int s = 0; s < C.num_states(); ++s)
            for (size_t t = 0; t < C.stack_syms.size(); ++t)
                if (s != C.sink && switchable(C, s, static_cast<int>(t)))
                    for (size_t li = 0; li < other_alpha.size(); ++li)
                        b.rule(est("C", s), C.stack_syms[t], other_alpha.at(li),
                               "clr", {});
        for (int s = 0; s < C.num_states(); ++s)
            if (s != C.sink && C.accepting[s]) b.accept(est("C", s));
        b.start("idle", kFloor);
        machines.push_back(b.build());
    };
    for (const auto& c : M.machines)
        run_checker(c, M.alphabet, L.alphabet, "alt/" + c.name);
    for (const auto& c : L.machines)
        run_checker(c, L.alphabet, M.alphabet, "alt/" + c.name);
    return make_language(M.name + ".alt." + L.name, std::move(machines));
}

namespace {

bool hopeless(const LanguageCursor& cur, const std::vector<std::vector<bool>>& live) {
    for (size_t i = 0; i < live.size(); ++i)
        if (!live[i][cur.components()[i].state()]) return true;
    return false;
}

void enumerate_dfs(const PplLanguage& L, const LanguageCursor& cur, Word& prefix,
                   size_t max_len, const std::vector<std::vector<bool>>& live,
                   std::vector<Word>& out) {
    if (cur.accepts_here()) out.push_back(prefix);
    if (cur.dead() || prefix.length() == max_len) return;
    for (size_t li = 0; li < L.alphabet.size(); ++li) {
        LanguageCursor next = cur;
        next.consume(L.alphabet.at(li));
        if ((next.dead() || hopeless(next, live)) && !next.accepts_here())
            continue;
        prefix.push_back(L.alphabet.at(li));
        enumerate_dfs(L, next, prefix, max_len, live, out);
        prefix.pop_back();
    }
}

}  // namespace

std::vector<Word> enumerate_language(const PplLanguage& L, size_t max_len,
                                     RunLimits limits) {
    std::vector<Word> out;
    Word prefix;
    std::vector<std::vector<bool>> live;
    for (const auto& m : L.machines) live.push_back(live_states(m));
    enumerate_dfs(L, LanguageCursor(L, limits), prefix, max_len, live, out);
    ShortlexOrder ord(L.alphabet);
    std::sort(out.begin(), out.end(), [&](const Word& a, const Word& b) {
        return ord.compare(a, b) == Order::Less;
    });
    return out;
}

PplLanguage aibici_language() {
    Symbol a = Symbol::intern("a"), b = Symbol::intern("b"),
           c = Symbol::intern("c");
    Dpda cnt1 = make_counter(1, {{a, 1}, {b, -1}, {c, 0}});
    Dpda cnt2 = make_counter(1, {{a, 0}, {b, 1}, {c, -1}});
    Alphabet A = cnt1.input;  // keep the counters' letter order
    auto phase_fsa = [&](std::vector<std::tuple<int, Symbol, int>> edges) {
        Fsa f;
        f.alphabet = A;
        f.num_states = 4;  // 3 = sink
        f.transitions.assign(static_cast<size_t>(4) * A.size(), 3);
        for (auto [s, x, t] : edges)
            f.transitions[s * A.size() + A.index_of(x)] = t;
        f.start = 0;
        f.accepting = {false, false, true, false};
        return f;
    };
    // a+b+c*
    Fsa f1 = phase_fsa({{0, a, 1}, {1, a, 1}, {1, b, 2}, {2, b, 2}, {2, c, 2}});
    // a*b+c+
    Fsa f2 = phase_fsa({{0, a, 0}, {0, b, 1}, {1, b, 1}, {1, c, 2}, {2, c, 2}});
    Dpda m1 = product_with_fsa(cnt1, f1, false);
    m1.name = "abc.ab";
    Dpda m2 = product_with_fsa(cnt2, f2, false);
    m2.name = "abc.bc";
    return make_language("aibici", {m1, m2});
}

}  // namespace ppd
