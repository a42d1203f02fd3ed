#include "ppd/machine_builder.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace ppd {

MachineBuilder::MachineBuilder(std::string name, AcceptMode mode,
                               Alphabet input) {
    m_.name = std::move(name);
    m_.mode = mode;
    m_.input = std::move(input);
}

int MachineBuilder::state(const std::string& name) {
    auto it = state_ids_.find(name);
    if (it != state_ids_.end()) return it->second;
    int id = m_.num_states();
    state_ids_[name] = id;
    m_.state_names.push_back(name);
    m_.accepting.push_back(false);
    return id;
}

bool MachineBuilder::has_state(const std::string& name) const {
    return state_ids_.count(name) > 0;
}

int MachineBuilder::stack_sym(Symbol s) {
    auto it = stack_ids_.find(s);
    if (it != stack_ids_.end()) return it->second;
    int id = static_cast<int>(m_.stack_syms.size());
    stack_ids_[s] = id;
    m_.stack_syms.push_back(s);
    return id;
}

void MachineBuilder::accept(const std::string& st) {
    m_.accepting[state(st)] = true;
}

void MachineBuilder::side(const std::string& st, Side s) { sides_[state(st)] = s; }

void MachineBuilder::start(const std::string& st, Symbol bottom) {
    m_.start_state = state(st);
    m_.start_symbol = stack_sym(bottom);
    start_set_ = true;
}

void MachineBuilder::rule(const std::string& from, Symbol top, Symbol letter,
                          const std::string& to,
                          const std::vector<Symbol>& push) {
    int s = state(from);
    int b = stack_sym(top);
    int t = state(to);
    int li = m_.input.index_of(letter);
    if (li < 0)
        throw std::invalid_argument("rule: letter not in input alphabet: " +
                                    letter.name());
    DpdaRule r;
    r.next_state = t;
    for (Symbol p : push) r.push.push_back(stack_sym(p));
    // cells are laid out in build(); store in a side table keyed densely
    pending_.push_back({s, b, li, std::move(r)});
}

void MachineBuilder::eps(const std::string& from, Symbol top,
                         const std::string& to,
                         const std::vector<Symbol>& push) {
    int s = state(from);
    int b = stack_sym(top);
    int t = state(to);
    DpdaRule r;
    r.next_state = t;
    for (Symbol p : push) r.push.push_back(stack_sym(p));
    pending_.push_back({s, b, -1, std::move(r)});
}

Dpda MachineBuilder::build() {
    if (!start_set_) throw std::logic_error("MachineBuilder: no start state");
    m_.cells.assign(static_cast<size_t>(m_.num_states()) * m_.stack_syms.size(),
                    {});
    for (const auto& p : pending_) {
        auto& c = m_.cell(p.state, p.top);
        if (p.letter < 0) {
            if (c.eps) throw std::logic_error("MachineBuilder: duplicate eps rule");
            c.eps = p.rule;
        } else {
            if (c.letter.size() < m_.input.size())
                c.letter.resize(m_.input.size());
            if (c.letter[p.letter])
                throw std::logic_error("MachineBuilder: duplicate letter rule in " +
                                       m_.name + " at " + m_.state_names[p.state]);
            c.letter[p.letter] = p.rule;
        }
    }
    Dpda out = m_;
    auto report = validate(out);
    if (!report.ok())
        throw std::logic_error("MachineBuilder: invalid machine " + m_.name +
                               ": " + report.violations.front().what);
    return out;
}

TwoTapePda MachineBuilder::build_two_tape(const Alphabet& left,
                                          const Alphabet& right) {
    TwoTapePda out;
    out.machine = build();
    out.left_alphabet = left;
    out.right_alphabet = right;
    out.side.assign(out.machine.num_states(), Side::Left);
    for (const auto& [st, sd] : sides_) out.side[st] = sd;
    auto report = validate_two_tape(out);
    if (!report.ok())
        throw std::logic_error("MachineBuilder: tape discipline violated in " +
                               out.machine.name + ": " +
                               report.violations.front().what);
    return out;
}

namespace {

const Symbol kZ = Symbol::intern("Z");
const Symbol kP = Symbol::intern("+1");
const Symbol kN = Symbol::intern("-1");

std::vector<Symbol> unary(Symbol base, Symbol sym, int count) {
    std::vector<Symbol> out{base};
    for (int i = 0; i < count; ++i) out.push_back(sym);
    return out;
}

// Installs the three sign states of one counter phase plus its adjust chain.
// Letter rules apply deltas; exit_letter leaves sign states toward the given
// targets (next.z / next.p / next.n), empty target meaning reject.
struct PhaseNames {
    std::string z, p, n, settle;
    std::string adj(int r) const { return z + "~" + std::to_string(r); }
};

void install_adjust(MachineBuilder& b, const PhaseNames& ph, int max_delta) {
    b.eps(ph.settle, kZ, ph.z, {kZ});
    b.eps(ph.settle, kP, ph.p, {kP});
    b.eps(ph.settle, kN, ph.n, {kN});
    for (int r = -max_delta; r <= max_delta; ++r) {
        if (r == 0) continue;
        std::string st = ph.adj(r);
        b.eps(st, kZ, r > 0 ? ph.p : ph.n, unary(kZ, r > 0 ? kP : kN, std::abs(r)));
        if (r < 0)
            b.eps(st, kP, r + 1 == 0 ? ph.settle : ph.adj(r + 1), {});
        else
            b.eps(st, kP, ph.p, unary(kP, kP, r));
        if (r > 0)
            b.eps(st, kN, r - 1 == 0 ? ph.settle : ph.adj(r - 1), {});
        else
            b.eps(st, kN, ph.n, unary(kN, kN, -r));
    }
}

void install_delta(MachineBuilder& b, const PhaseNames& ph, Symbol letter, int k) {
    if (k == 0) {
        b.rule(ph.z, kZ, letter, ph.z, {kZ});
        b.rule(ph.p, kP, letter, ph.p, {kP});
        b.rule(ph.n, kN, letter, ph.n, {kN});
        return;
    }
    b.rule(ph.z, kZ, letter, k > 0 ? ph.p : ph.n,
           unary(kZ, k > 0 ? kP : kN, std::abs(k)));
    if (k > 0)
        b.rule(ph.p, kP, letter, ph.p, unary(kP, kP, k));
    else
        b.rule(ph.p, kP, letter, k + 1 == 0 ? ph.settle : ph.adj(k + 1), {});
    if (k < 0)
        b.rule(ph.n, kN, letter, ph.n, unary(kN, kN, -k));
    else
        b.rule(ph.n, kN, letter, k - 1 == 0 ? ph.settle : ph.adj(k - 1), {});
}

}  // namespace

TwoTapePda block_counter(const std::string& name, const Alphabet& left,
                         const Alphabet& right,
                         const std::vector<CounterPhase>& phases, int offset) {
    if (phases.size() != 2 || phases[0].side == phases[1].side)
        throw std::invalid_argument("block_counter: need one phase per tape");
    MachineBuilder b(name, AcceptMode::FinalState, two_tape_alphabet(left, right));

    int max_delta = std::abs(offset);
    for (const auto& ph : phases)
        for (const auto& [sym, k] : ph.deltas)
            max_delta = std::max(max_delta, std::abs(k));
    max_delta = std::max(max_delta, 1);

    std::vector<PhaseNames> names;
    for (size_t i = 0; i < phases.size(); ++i) {
        std::string p = "c" + std::to_string(i);
        names.push_back({p + ".z", p + ".p", p + ".n", p + ".s"});
    }
    for (size_t i = 0; i < phases.size(); ++i) {
        const auto& ph = phases[i];
        const auto& nm = names[i];
        Tag tag = ph.side == Side::Left ? Tag::Sharp : Tag::Flat;
        install_adjust(b, nm, max_delta);
        for (const auto& [sym, k] : ph.deltas)
            install_delta(b, nm, sym.with_tag(tag), k);
        Symbol marker = Symbol::end_marker().with_tag(tag);
        if (i + 1 < phases.size()) {
            b.rule(nm.z, kZ, marker, names[i + 1].z, {kZ});
            b.rule(nm.p, kP, marker, names[i + 1].p, {kP});
            b.rule(nm.n, kN, marker, names[i + 1].n, {kN});
        } else {
            b.rule(nm.z, kZ, marker, "done", {kZ});
            // nonzero counter at the end: no rule, rejects
        }
        for (const std::string& st :
             {nm.z, nm.p, nm.n, nm.settle})
            b.side(st, ph.side);
        for (int r = -max_delta; r <= max_delta; ++r)
            if (r != 0) b.side(nm.adj(r), ph.side);
    }
    b.accept("done");
    if (offset == 0) {
        b.start(names[0].z, kZ);
    } else {
        b.eps("boot", kZ, offset > 0 ? names[0].p : names[0].n,
              unary(kZ, offset > 0 ? kP : kN, std::abs(offset)));
        b.start("boot", kZ);
    }
    return b.build_two_tape(left, right);
}

TwoTapePda diagonal_machine(const Alphabet& a) {
    MachineBuilder b("diag", AcceptMode::FinalState, two_tape_alphabet(a, a));
    Symbol z = kZ;
    b.side("L", Side::Left);
    for (size_t i = 0; i < a.size(); ++i) {
        Symbol s = a.at(i);
        std::string mid = "R." + s.name();
        b.rule("L", z, s.with_tag(Tag::Sharp), mid, {z});
        b.rule(mid, z, s.with_tag(Tag::Flat), "L", {z});
        b.side(mid, Side::Right);
    }
    b.rule("L", z, Symbol::end_marker().with_tag(Tag::Sharp), "endL", {z});
    b.side("endL", Side::Right);
    b.rule("endL", z, Symbol::end_marker().with_tag(Tag::Flat), "acc", {z});
    b.accept("acc");
    b.start("L", z);
    return b.build_two_tape(a, a);
}

TwoTapePda all_pairs_machine(const Alphabet& left, const Alphabet& right) {
    MachineBuilder b("all-pairs", AcceptMode::FinalState,
                     two_tape_alphabet(left, right));
    Symbol z = kZ;
    b.side("L", Side::Left);
    b.side("R", Side::Right);
    for (size_t i = 0; i < left.size(); ++i)
        b.rule("L", z, left.at(i).with_tag(Tag::Sharp), "L", {z});
    b.rule("L", z, Symbol::end_marker().with_tag(Tag::Sharp), "R", {z});
    for (size_t i = 0; i < right.size(); ++i)
        b.rule("R", z, right.at(i).with_tag(Tag::Flat), "R", {z});
    b.rule("R", z, Symbol::end_marker().with_tag(Tag::Flat), "acc", {z});
    b.accept("acc");
    b.start("L", z);
    return b.build_two_tape(left, right);
}

TwoTapePda finite_pair_machine(const Alphabet& left, const Alphabet& right,
                               const std::vector<std::pair<Word, Word>>& pairs,
                               bool complement) {
    MachineBuilder b("pairs", AcceptMode::FinalState,
                     two_tape_alphabet(left, right));
    Symbol z = kZ;
    Symbol lend = Symbol::end_marker().with_tag(Tag::Sharp);
    Symbol rend = Symbol::end_marker().with_tag(Tag::Flat);
    auto uname = [](const Word& p) { return "u:" + p.str(); };
    auto vname = [](const Word& u, const Word& p) {
        return "v:" + u.str() + ":" + p.str();
    };

    // left dead path: consume the rest of both tapes, no match
    b.side("u!", Side::Left);
    b.side("v!", Side::Right);
    for (size_t i = 0; i < left.size(); ++i)
        b.rule("u!", z, left.at(i).with_tag(Tag::Sharp), "u!", {z});
    b.rule("u!", z, lend, "v!", {z});
    for (size_t i = 0; i < right.size(); ++i)
        b.rule("v!", z, right.at(i).with_tag(Tag::Flat), "v!", {z});
    b.rule("v!", z, rend, "nomatch", {z});

    // u-trie
    std::set<Word> uprefixes, uwords;
    for (const auto& [u, v] : pairs) {
        uwords.insert(u);
        for (size_t i = 0; i <= u.length(); ++i) uprefixes.insert(u.subword(0, i));
    }
    for (const Word& p : uprefixes) {
        std::string st = uname(p);
        b.side(st, Side::Left);
        for (size_t i = 0; i < left.size(); ++i) {
            Word ext = p;
            ext.push_back(left.at(i));
            b.rule(st, z, left.at(i).with_tag(Tag::Sharp),
                   uprefixes.count(ext) ? uname(ext) : "u!", {z});
        }
        b.rule(st, z, lend, uwords.count(p) ? vname(p, Word()) : "v!", {z});
    }
    // v-tries, one per listed u
    for (const Word& u : uwords) {
        std::set<Word> vprefixes, vwords;
        for (const auto& [pu, pv] : pairs)
            if (pu == u) {
                vwords.insert(pv);
                for (size_t i = 0; i <= pv.length(); ++i)
                    vprefixes.insert(pv.subword(0, i));
            }
        for (const Word& p : vprefixes) {
            std::string st = vname(u, p);
            b.side(st, Side::Right);
            for (size_t i = 0; i < right.size(); ++i) {
                Word ext = p;
                ext.push_back(right.at(i));
                b.rule(st, z, right.at(i).with_tag(Tag::Flat),
                       vprefixes.count(ext) ? vname(u, ext) : "v!", {z});
            }
            b.rule(st, z, rend, vwords.count(p) ? "match" : "nomatch", {z});
        }
    }
    b.accept(complement ? "nomatch" : "match");
    if (pairs.empty())
        b.start("u!", z);
    else
        b.start(uname(Word()), z);
    return b.build_two_tape(left, right);
}

namespace {

// Passive recognizer for a finite pair set: advances on letters of either
// tape in any order and remembers which tapes are closed.
struct PairTracker {
    const std::vector<std::pair<Word, Word>>* pairs;

    struct State {
        std::vector<int> pu, pv;  // -1 = this candidate is dead
        bool end_left = false, end_right = false;
        auto tie() const { return std::tie(pu, pv, end_left, end_right); }
        bool operator<(const State& o) const { return tie() < o.tie(); }
    };

    State initial() const {
        State s;
        s.pu.assign(pairs->size(), 0);
        s.pv.assign(pairs->size(), 0);
        return s;
    }

    State step(State s, Symbol tagged) const {
        Symbol base = tagged.base();
        bool is_marker = base == Symbol::end_marker();
        bool left = tagged.tag() == Tag::Sharp;
        for (size_t i = 0; i < pairs->size(); ++i) {
            const Word& w = left ? (*pairs)[i].first : (*pairs)[i].second;
            int& p = left ? s.pu[i] : s.pv[i];
            if (p < 0) continue;
            if (is_marker) {
                if (p != static_cast<int>(w.length())) p = -1;
            } else if (p < static_cast<int>(w.length()) && w.at(p) == base) {
                ++p;
            } else {
                p = -1;
            }
        }
        if (is_marker) (left ? s.end_left : s.end_right) = true;
        return s;
    }

    bool accepts(const State& s) const {
        if (!s.end_left || !s.end_right) return false;
        for (size_t i = 0; i < pairs->size(); ++i)
            if (s.pu[i] == static_cast<int>((*pairs)[i].first.length()) &&
                s.pv[i] == static_cast<int>((*pairs)[i].second.length()))
                return true;
        return false;
    }
};

bool host_has_live_exit(const Dpda& m, int s) {
    for (size_t b = 0; b < m.stack_syms.size(); ++b) {
        const auto& c = m.cell(s, static_cast<int>(b));
        if (c.eps) return true;
        for (const auto& r : c.letter)
            if (r && r->next_state != s && r->next_state != m.sink) return true;
    }
    return false;
}

}  // namespace

TwoTapePda union_with_pairs(const TwoTapePda& m,
                            const std::vector<std::pair<Word, Word>>& pairs) {
    TwoTapePda host = m;
    if (host.machine.mode == AcceptMode::EmptyStack) {
        int old_states = host.machine.num_states();
        host.machine = to_final_state(host.machine);
        host.side.resize(host.machine.num_states(), Side::Left);
        (void)old_states;
    }
    PairTracker tracker{&pairs};

    Dpda out;
    out.name = host.machine.name + "+pairs";
    out.mode = AcceptMode::FinalState;
    out.input = host.machine.input;
    out.stack_syms = host.machine.stack_syms;
    out.start_symbol = host.machine.start_symbol;

    std::map<PairTracker::State, int> tids;
    std::vector<PairTracker::State> tstates;
    auto tid = [&](const PairTracker::State& t) {
        auto it = tids.find(t);
        if (it != tids.end()) return it->second;
        int id = static_cast<int>(tstates.size());
        tids[t] = id;
        tstates.push_back(t);
        return id;
    };
    tid(tracker.initial());
    // discover tracker states over the tagged alphabet (pair sets are small)
    for (size_t qi = 0; qi < tstates.size(); ++qi) {
        PairTracker::State q = tstates[qi];
        for (size_t li = 0; li < out.input.size(); ++li)
            tid(tracker.step(q, out.input.at(li)));
    }
    int nt = static_cast<int>(tstates.size());
    int nh = host.machine.num_states();
    auto id = [&](int s, int t) { return s * nt + t; };

    out.state_names.resize(static_cast<size_t>(nh) * nt);
    out.accepting.resize(out.state_names.size());
    std::vector<Side> side(out.state_names.size(), Side::Left);
    std::vector<bool> live(nh);
    for (int s = 0; s < nh; ++s) live[s] = host_has_live_exit(host.machine, s);
    for (int s = 0; s < nh; ++s)
        for (int t = 0; t < nt; ++t) {
            out.state_names[id(s, t)] =
                host.machine.state_names[s] + "+t" + std::to_string(t);
            out.accepting[id(s, t)] =
                host.machine.accepting[s] || tracker.accepts(tstates[t]);
            // once the host can no longer change its verdict, the tracker
            // decides which tape still needs to be drained
            side[id(s, t)] = live[s] ? host.side[s]
                                     : (tstates[t].end_left ? Side::Right
                                                            : Side::Left);
        }
    size_t nb = out.stack_syms.size();
    out.cells.resize(out.state_names.size() * nb);
    for (int s = 0; s < nh; ++s)
        for (size_t b = 0; b < nb; ++b) {
            const auto& c = host.machine.cell(s, static_cast<int>(b));
            for (int t = 0; t < nt; ++t) {
                auto& oc = out.cell(id(s, t), static_cast<int>(b));
                if (c.eps) {
                    oc.eps = DpdaRule{id(c.eps->next_state, t), c.eps->push};
                } else {
                    oc.letter.resize(out.input.size());
                    for (size_t li = 0; li < c.letter.size(); ++li)
                        if (c.letter[li]) {
                            int t2 = tid(tracker.step(tstates[t], out.input.at(li)));
                            oc.letter[li] =
                                DpdaRule{id(c.letter[li]->next_state, t2),
                                         c.letter[li]->push};
                        }
                }
            }
        }
    out.start_state = id(host.machine.start_state, 0);
    out.sink = -1;
    auto rep = validate(out);
    if (!rep.ok())
        throw std::logic_error("union_with_pairs produced an invalid machine");

    TwoTapePda result;
    result.machine = std::move(out);
    result.side = std::move(side);
    result.side.resize(result.machine.num_states(), Side::Left);
    result.left_alphabet = host.left_alphabet;
    result.right_alphabet = host.right_alphabet;
    return result;
}

}  // namespace ppd
