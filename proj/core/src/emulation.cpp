#include "ppd/emulation.hpp"

#include <stdexcept>

namespace ppd {

namespace {

const Symbol kFloor = Symbol::intern("_floor_");

std::string est(const std::string& ctx, int s) {
    return ctx + "." + std::to_string(s);
}

// Fresh host copies of a component's stack symbols.
std::vector<Symbol> prefixed_syms(const Dpda& m, const std::string& pre) {
    std::vector<Symbol> out;
    for (Symbol s : m.stack_syms) out.push_back(Symbol::intern(pre + s.name()));
    return out;
}

TwoTapePda normalized_tt(const TwoTapePda& m) {
    if (m.machine.mode == AcceptMode::FinalState) return m;
    TwoTapePda out = m;
    out.machine = to_final_state(out.machine);
    out.side.resize(out.machine.num_states(), Side::Left);
    return out;
}

bool live_rule(const Dpda& m, const std::optional<DpdaRule>& r) {
    return r && r->next_state != m.sink;
}

const DpdaRule* letter_rule(const Dpda& m, const Dpda::Cell& c, Symbol tagged) {
    int li = m.input.index_of(tagged);
    if (li < 0 || li >= static_cast<int>(c.letter.size())) return nullptr;
    if (!live_rule(m, c.letter[li])) return nullptr;
    return &*c.letter[li];
}

std::vector<Symbol> mapped_push(const std::vector<Symbol>& syms,
                                const std::vector<int>& push) {
    std::vector<Symbol> out;
    for (int i : push) out.push_back(syms[i]);
    return out;
}

}  // namespace

TwoTapePda seq2_machine(const std::string& name, const TwoTapePda& m1in,
                        const TwoTapePda& m2in) {
    TwoTapePda m1 = normalized_tt(m1in), m2 = normalized_tt(m2in);
    const Dpda& c1 = m1.machine;
    const Dpda& c2 = m2.machine;
    const Alphabet &A1 = m1.left_alphabet, &B1 = m1.right_alphabet;
    const Alphabet &A2 = m2.left_alphabet, &B2 = m2.right_alphabet;
    if (!A1.disjoint(A2) || !B1.disjoint(B2))
        throw std::invalid_argument("seq2_machine: tape alphabets overlap");
    Alphabet L = A1.unioned(A2), R = B1.unioned(B2);
    MachineBuilder b(name, AcceptMode::FinalState, two_tape_alphabet(L, R));
    auto sym1 = prefixed_syms(c1, "1:");
    auto sym2 = prefixed_syms(c2, "2:");
    Symbol lend = Symbol::end_marker().with_tag(Tag::Sharp);
    Symbol rend = Symbol::end_marker().with_tag(Tag::Flat);

    // letters that close m1's half of a tape and become m2 input
    std::vector<Symbol> ltrig, rtrig;
    for (size_t i = 0; i < A2.size(); ++i)
        ltrig.push_back(A2.at(i).with_tag(Tag::Sharp));
    ltrig.push_back(lend);
    for (size_t i = 0; i < B2.size(); ++i)
        rtrig.push_back(B2.at(i).with_tag(Tag::Flat));
    rtrig.push_back(rend);

    auto pctx = [](const std::string& hl, const std::string& hr) {
        return "P|" + hl + "|" + hr;
    };
    auto fctx = [](const std::string& hl, const std::string& hr, bool acc) {
        return "F|" + hl + "|" + hr + (acc ? "|a" : "|n");
    };
    auto qctx = [](const std::string& hl, const std::string& hr) {
        return "Q|" + hl + "|" + hr;
    };

    // ---- phase 1: m1 with up to one held letter per tape -------------------
    std::vector<std::pair<std::string, std::string>> pholds{{"-", "-"}};
    for (Symbol x : ltrig) pholds.push_back({x.name(), "-"});
    for (Symbol y : rtrig) pholds.push_back({"-", y.name()});

    for (const auto& [hl, hr] : pholds) {
        std::string ctx = pctx(hl, hr);
        for (int s = 0; s < c1.num_states(); ++s) {
            if (s == c1.sink) continue;
            b.side(est(ctx, s), m1.side[s]);
            for (size_t t = 0; t < c1.stack_syms.size(); ++t) {
                const auto& cell = c1.cell(s, static_cast<int>(t));
                if (cell.eps) {
                    if (live_rule(c1, cell.eps))
                        b.eps(est(ctx, s), sym1[t],
                              est(ctx, cell.eps->next_state),
                              mapped_push(sym1, cell.eps->push));
                    continue;
                }
                bool left = m1.side[s] == Side::Left;
                if ((left ? hl : hr) != "-") continue;  // half already closed
                const Alphabet& own = left ? A1 : B1;
                Tag tag = left ? Tag::Sharp : Tag::Flat;
                for (size_t li = 0; li < own.size(); ++li) {
                    Symbol a = own.at(li).with_tag(tag);
                    if (const DpdaRule* r = letter_rule(c1, cell, a))
                        b.rule(est(ctx, s), sym1[t], a, est(ctx, r->next_state),
                               mapped_push(sym1, r->push));
                }
                // a switch letter: feed the virtual end marker, hold it
                Symbol marker = left ? lend : rend;
                const DpdaRule* r = letter_rule(c1, cell, marker);
                if (!r) continue;  // m1 rejects the end here
                for (Symbol x : left ? ltrig : rtrig) {
                    std::string nhl = left ? x.name() : hl;
                    std::string nhr = left ? hr : x.name();
                    bool closes_both = (left ? hr : hl) != "-";
                    std::string tctx =
                        closes_both
                            ? fctx(nhl, nhr, c1.accepting[r->next_state])
                            : pctx(nhl, nhr);
                    b.rule(est(ctx, s), sym1[t], x, est(tctx, r->next_state),
                           mapped_push(sym1, r->push));
                }
            }
        }
    }

    // ---- m1's trailing eps chain with accept tracking, then m2 boot --------
    for (Symbol x : ltrig)
        for (Symbol y : rtrig)
            for (bool acc : {false, true}) {
                std::string ctx = fctx(x.name(), y.name(), acc);
                std::string boot = est(qctx(x.name(), y.name()), c2.start_state);
                for (int s = 0; s < c1.num_states(); ++s) {
                    if (s == c1.sink) continue;
                    for (size_t t = 0; t < c1.stack_syms.size(); ++t) {
                        const auto& cell = c1.cell(s, static_cast<int>(t));
                        if (cell.eps && live_rule(c1, cell.eps)) {
                            int n = cell.eps->next_state;
                            b.eps(est(ctx, s), sym1[t],
                                  est(fctx(x.name(), y.name(),
                                           acc || c1.accepting[n]),
                                      n),
                                  mapped_push(sym1, cell.eps->push));
                        } else if (acc) {
                            // chain stops (letter cell or dead eps): hand over
                            b.eps(est(ctx, s), sym1[t], boot,
                                  {sym1[t], sym2[c2.start_symbol]});
                        }
                    }
                }
            }

    // ---- phase 2: m2, delivering the held letters on demand ----------------
    std::vector<std::string> qleft{"."}, qright{"."};
    for (Symbol x : ltrig) qleft.push_back(x.name());
    for (Symbol y : rtrig) qright.push_back(y.name());
    auto find_tagged = [&](const Alphabet& base, Tag tag, const std::string& nm,
                           Symbol marker) {
        if (nm == marker.name()) return marker;
        for (size_t i = 0; i < base.size(); ++i)
            if (base.at(i).with_tag(tag).name() == nm)
                return base.at(i).with_tag(tag);
        throw std::logic_error("seq2_machine: unknown held letter " + nm);
    };

    for (const auto& hl : qleft)
        for (const auto& hr : qright) {
            std::string ctx = qctx(hl, hr);
            for (int s = 0; s < c2.num_states(); ++s) {
                if (s == c2.sink) continue;
                b.side(est(ctx, s), m2.side[s]);
                if (hl == "." && hr == "." && c2.accepting[s])
                    b.accept(est(ctx, s));
                for (size_t t = 0; t < c2.stack_syms.size(); ++t) {
                    const auto& cell = c2.cell(s, static_cast<int>(t));
                    if (cell.eps) {
                        if (live_rule(c2, cell.eps))
                            b.eps(est(ctx, s), sym2[t],
                                  est(ctx, cell.eps->next_state),
                                  mapped_push(sym2, cell.eps->push));
                        continue;
                    }
                    bool left = m2.side[s] == Side::Left;
                    const std::string& held = left ? hl : hr;
                    if (held != ".") {
                        Symbol x = find_tagged(left ? A2 : B2,
                                               left ? Tag::Sharp : Tag::Flat,
                                               held, left ? lend : rend);
                        if (const DpdaRule* r = letter_rule(c2, cell, x))
                            b.eps(est(ctx, s), sym2[t],
                                  est(qctx(left ? "." : hl, left ? hr : "."),
                                      r->next_state),
                                  mapped_push(sym2, r->push));
                        continue;
                    }
                    const Alphabet& own = left ? A2 : B2;
                    Tag tag = left ? Tag::Sharp : Tag::Flat;
                    for (size_t li = 0; li < own.size(); ++li) {
                        Symbol a = own.at(li).with_tag(tag);
                        if (const DpdaRule* r = letter_rule(c2, cell, a))
                            b.rule(est(ctx, s), sym2[t], a,
                                   est(ctx, r->next_state),
                                   mapped_push(sym2, r->push));
                    }
                    Symbol marker = left ? lend : rend;
                    if (const DpdaRule* r = letter_rule(c2, cell, marker))
                        b.rule(est(ctx, s), sym2[t], marker,
                               est(ctx, r->next_state),
                               mapped_push(sym2, r->push));
                }
            }
        }

    b.start(est(pctx("-", "-"), c1.start_state), sym1[c1.start_symbol]);
    return b.build_two_tape(L, R);
}

TwoTapePda last_block_machine(const std::string& name, const TwoTapePda& compin,
                              const Alphabet& other) {
    TwoTapePda comp = normalized_tt(compin);
    const Dpda& c = comp.machine;
    const Alphabet &runL = comp.left_alphabet, &runR = comp.right_alphabet;
    if (!runL.disjoint(other) || !runR.disjoint(other))
        throw std::invalid_argument("last_block_machine: alphabets overlap");
    Alphabet L = runL.unioned(other), R = runR.unioned(other);
    MachineBuilder b(name, AcceptMode::FinalState, two_tape_alphabet(L, R));
    auto syms = prefixed_syms(c, "c:");
    Symbol lend = Symbol::end_marker().with_tag(Tag::Sharp);
    Symbol rend = Symbol::end_marker().with_tag(Tag::Flat);

    auto ectx = [](const std::string& hl, const std::string& hr) {
        return "E|" + hl + "|" + hr;
    };
    auto boot_push = [&] {
        return std::vector<Symbol>{kFloor, syms[c.start_symbol]};
    };

    // compare phase: floor-only stack, strict left/right alternation
    b.side("cmp", Side::Left);
    b.rule("cmp", kFloor, lend, est(ectx(lend.name(), "."), c.start_state),
           boot_push());
    for (size_t i = 0; i < L.size(); ++i) {
        Symbol a = L.at(i);
        std::string la = "cmp." + a.name();
        b.side(la, Side::Right);
        b.rule("cmp", kFloor, a.with_tag(Tag::Sharp), la, {kFloor});
        for (size_t j = 0; j < R.size(); ++j) {
            Symbol d = R.at(j);
            if (d == a)
                b.rule(la, kFloor, d.with_tag(Tag::Flat), "cmp", {kFloor});
            else if (runL.contains(a) && runR.contains(d))
                b.rule(la, kFloor, d.with_tag(Tag::Flat),
                       est(ectx(a.with_tag(Tag::Sharp).name(),
                                d.with_tag(Tag::Flat).name()),
                           c.start_state),
                       boot_push());
        }
        if (runL.contains(a))
            b.rule(la, kFloor, rend,
                   est(ectx(a.with_tag(Tag::Sharp).name(), rend.name()),
                       c.start_state),
                   boot_push());
    }

    // comp emulation, delivering the held letters on demand
    std::vector<std::string> hls{"."}, hrs{"."};
    for (size_t i = 0; i < runL.size(); ++i)
        hls.push_back(runL.at(i).with_tag(Tag::Sharp).name());
    hls.push_back(lend.name());
    for (size_t i = 0; i < runR.size(); ++i)
        hrs.push_back(runR.at(i).with_tag(Tag::Flat).name());
    hrs.push_back(rend.name());
    auto find_tagged = [&](const Alphabet& base, Tag tag, const std::string& nm,
                           Symbol marker) {
        if (nm == marker.name()) return marker;
        for (size_t i = 0; i < base.size(); ++i)
            if (base.at(i).with_tag(tag).name() == nm)
                return base.at(i).with_tag(tag);
        throw std::logic_error("last_block_machine: unknown held letter " + nm);
    };

    for (const auto& hl : hls)
        for (const auto& hr : hrs) {
            std::string ctx = ectx(hl, hr);
            for (int s = 0; s < c.num_states(); ++s) {
                if (s == c.sink) continue;
                b.side(est(ctx, s), comp.side[s]);
                if (c.accepting[s]) b.accept(est(ctx, s));
                for (size_t t = 0; t < c.stack_syms.size(); ++t) {
                    const auto& cell = c.cell(s, static_cast<int>(t));
                    if (cell.eps) {
                        if (live_rule(c, cell.eps))
                            b.eps(est(ctx, s), syms[t],
                                  est(ctx, cell.eps->next_state),
                                  mapped_push(syms, cell.eps->push));
                        continue;
                    }
                    bool left = comp.side[s] == Side::Left;
                    const std::string& held = left ? hl : hr;
                    if (held != ".") {
                        Symbol x = find_tagged(left ? runL : runR,
                                               left ? Tag::Sharp : Tag::Flat,
                                               held, left ? lend : rend);
                        if (const DpdaRule* r = letter_rule(c, cell, x))
                            b.eps(est(ctx, s), syms[t],
                                  est(ectx(left ? "." : hl, left ? hr : "."),
                                      r->next_state),
                                  mapped_push(syms, r->push));
                        continue;
                    }
                    const Alphabet& own = left ? runL : runR;
                    Tag tag = left ? Tag::Sharp : Tag::Flat;
                    for (size_t li = 0; li < own.size(); ++li) {
                        Symbol a = own.at(li).with_tag(tag);
                        if (const DpdaRule* r = letter_rule(c, cell, a))
                            b.rule(est(ctx, s), syms[t], a,
                                   est(ctx, r->next_state),
                                   mapped_push(syms, r->push));
                    }
                    Symbol marker = left ? lend : rend;
                    if (const DpdaRule* r = letter_rule(c, cell, marker))
                        b.rule(est(ctx, s), syms[t], marker,
                               est(ctx, r->next_state),
                               mapped_push(syms, r->push));
                }
            }
        }

    b.start("cmp", kFloor);
    return b.build_two_tape(L, R);
}

TwoTapePda prefix_comparator(const std::string& name, const Alphabet& run,
                             const Alphabet& other) {
    if (!run.disjoint(other))
        throw std::invalid_argument("prefix_comparator: alphabets overlap");
    Alphabet all = run.unioned(other);
    MachineBuilder b(name, AcceptMode::FinalState, two_tape_alphabet(all, all));
    Symbol z = Symbol::intern("Z");
    Symbol lend = Symbol::end_marker().with_tag(Tag::Sharp);
    Symbol rend = Symbol::end_marker().with_tag(Tag::Flat);
    auto in_run = [&](Symbol s) { return run.contains(s); };

    b.side("cmp", Side::Left);
    b.side("dl", Side::Left);   // divergence: drain left, then right
    b.side("dlx", Side::Left);  // divergence with the right tape finished
    b.side("dr", Side::Right);
    for (size_t i = 0; i < all.size(); ++i) {
        Symbol a = all.at(i);
        std::string la = "cmp." + a.name();
        b.side(la, Side::Right);
        b.rule("cmp", z, a.with_tag(Tag::Sharp), la, {z});
        for (size_t j = 0; j < all.size(); ++j) {
            Symbol c = all.at(j);
            if (c == a)
                b.rule(la, z, c.with_tag(Tag::Flat), "cmp", {z});
            else if (in_run(a) && in_run(c))
                b.rule(la, z, c.with_tag(Tag::Flat), "dl", {z});
        }
        if (in_run(a)) {
            b.rule(la, z, rend, "dlx", {z});
            b.rule("dl", z, a.with_tag(Tag::Sharp), "dl", {z});
            b.rule("dlx", z, a.with_tag(Tag::Sharp), "dlx", {z});
            b.rule("dr", z, a.with_tag(Tag::Flat), "dr", {z});
        }
    }
    b.rule("cmp", z, lend, "dr", {z});
    b.rule("dl", z, lend, "dr", {z});
    b.rule("dlx", z, lend, "acc", {z});
    b.rule("dr", z, rend, "acc", {z});
    b.accept("acc");
    b.start("cmp", z);
    return b.build_two_tape(all, all);
}

}  // namespace ppd
