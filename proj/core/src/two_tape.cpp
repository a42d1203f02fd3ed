#include "ppd/two_tape.hpp"

#include <stdexcept>

namespace ppd {

Alphabet two_tape_alphabet(const Alphabet& left, const Alphabet& right) {
    std::vector<Symbol> syms;
    for (size_t i = 0; i < left.size(); ++i)
        syms.push_back(left.at(i).with_tag(Tag::Sharp));
    syms.push_back(Symbol::end_marker().with_tag(Tag::Sharp));
    for (size_t i = 0; i < right.size(); ++i)
        syms.push_back(right.at(i).with_tag(Tag::Flat));
    syms.push_back(Symbol::end_marker().with_tag(Tag::Flat));
    return Alphabet(syms);
}

ValidationReport validate_two_tape(TwoTapePda& m) {
    ValidationReport report = validate(m.machine);
    m.side.resize(m.machine.num_states(), Side::Left);
    for (int s = 0; s < m.machine.num_states(); ++s) {
        if (s == m.machine.sink) continue;
        Tag own = m.side[s] == Side::Left ? Tag::Sharp : Tag::Flat;
        for (size_t b = 0; b < m.machine.stack_syms.size(); ++b) {
            const auto& c = m.machine.cell(s, static_cast<int>(b));
            for (size_t li = 0; li < c.letter.size(); ++li) {
                if (!c.letter[li] || c.letter[li]->next_state == m.machine.sink)
                    continue;
                if (m.machine.input.at(li).tag() != own)
                    report.violations.push_back(
                        {s, static_cast<int>(b),
                         "live rule reads the other tape: " +
                             m.machine.input.at(li).name()});
            }
        }
    }
    return report;
}

PairRunReport run_pair(const TwoTapePda& m, const Word& u, const Word& v,
                       RunLimits limits, DpdaCursor::TraceFn trace) {
    PairRunReport report;
    DpdaCursor cur(m.machine, limits);
    if (trace) cur.set_trace(trace);
    size_t pu = 0, pv = 0;
    bool end_left = false, end_right = false;
    Symbol marker = Symbol::end_marker();
    while (!(end_left && end_right)) {
        if (cur.dead()) break;
        Symbol next;
        if (m.side[cur.state()] == Side::Left) {
            if (pu < u.length())
                next = u.at(pu++).with_tag(Tag::Sharp);
            else if (!end_left) {
                next = marker.with_tag(Tag::Sharp);
                end_left = true;
            } else {
                report.stuck = true;
                break;
            }
        } else {
            if (pv < v.length())
                next = v.at(pv++).with_tag(Tag::Flat);
            else if (!end_right) {
                next = marker.with_tag(Tag::Flat);
                end_right = true;
            } else {
                report.stuck = true;
                break;
            }
        }
        report.shuffle.push_back(next);
        cur.consume(next);
    }
    report.accepted = end_left && end_right && cur.accepts_here();
    report.steps = cur.steps();
    report.eps_steps = cur.eps_steps();
    return report;
}

bool accept_pair(const TwoTapePda& m, const Word& u, const Word& v,
                 RunLimits limits) {
    return run_pair(m, u, v, limits).accepted;
}

AtpplRelation make_relation(std::string name, std::vector<TwoTapePda> machines) {
    if (machines.empty())
        throw std::invalid_argument("make_relation: no machines");
    AtpplRelation r;
    r.name = std::move(name);
    r.left_alphabet = machines.front().left_alphabet;
    r.right_alphabet = machines.front().right_alphabet;
    for (const auto& m : machines)
        if (!(m.left_alphabet == r.left_alphabet) ||
            !(m.right_alphabet == r.right_alphabet))
            throw std::invalid_argument("make_relation: tape alphabet mismatch in " +
                                        m.machine.name);
    r.machines = std::move(machines);
    return r;
}

bool relation_member(const AtpplRelation& r, const Word& u, const Word& v,
                     RunLimits limits) {
    for (const auto& m : r.machines)
        if (!accept_pair(m, u, v, limits)) return false;
    return true;
}

TwoTapePda swap_tapes(const TwoTapePda& m) {
    TwoTapePda out = m;
    out.machine.name = m.machine.name + "/swap";
    std::vector<Symbol> syms;
    for (size_t i = 0; i < m.machine.input.size(); ++i) {
        Symbol s = m.machine.input.at(i);
        Tag t = s.tag() == Tag::Sharp ? Tag::Flat : Tag::Sharp;
        syms.push_back(s.base().with_tag(t));
    }
    out.machine.input = Alphabet(syms);  // same order: letter indices unchanged
    for (auto& s : out.side) s = s == Side::Left ? Side::Right : Side::Left;
    out.left_alphabet = m.right_alphabet;
    out.right_alphabet = m.left_alphabet;
    return out;
}

AtpplRelation swap_tapes(const AtpplRelation& r) {
    AtpplRelation out;
    out.name = r.name + "/swap";
    out.left_alphabet = r.right_alphabet;
    out.right_alphabet = r.left_alphabet;
    for (const auto& m : r.machines) out.machines.push_back(swap_tapes(m));
    return out;
}

ShuffleAudit verify_unique_shuffle(const TwoTapePda& m, const Word& u,
                                   const Word& v, size_t cap) {
    ShuffleAudit audit;
    Word marker(std::vector<Symbol>{Symbol::end_marker()});
    auto shuffles = enumerate_shuffles(u.concat(marker), v.concat(marker), cap);
    Word accepted_shuffle;
    for (const auto& s : shuffles) {
        if (run(m.machine, s.tagged).accepted) {
            ++audit.accepted_count;
            accepted_shuffle = s.tagged;
        }
    }
    PairRunReport pair = run_pair(m, u, v);
    audit.pair_accepted = pair.accepted;
    audit.consistent = audit.accepted_count <= 1 &&
                       audit.pair_accepted == (audit.accepted_count == 1) &&
                       (!audit.pair_accepted || accepted_shuffle == pair.shuffle);
    return audit;
}

}  // namespace ppd
