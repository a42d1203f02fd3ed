#include "ppd/dpda.hpp"

#include <cassert>
#include <sstream>

namespace ppd {

int Dpda::stack_index(Symbol s) const {
    for (size_t i = 0; i < stack_syms.size(); ++i)
        if (stack_syms[i] == s) return static_cast<int>(i);
    return -1;
}

ValidationReport validate(Dpda& m) {
    ValidationReport report;
    size_t nb = m.stack_syms.size();
    size_t na = m.input.size();
    if (m.cells.size() != m.state_names.size() * nb)
        m.cells.resize(m.state_names.size() * nb);

    bool needs_sink = m.sink < 0;
    if (needs_sink) {
        for (auto& c : m.cells) {
            if (c.eps) continue;
            if (c.letter.size() < na) {
                needs_sink = true;
                break;
            }
            for (const auto& r : c.letter)
                if (!r) {
                    needs_sink = true;
                    break;
                }
        }
    }
    if (m.sink < 0) {
        m.sink = m.num_states();
        m.state_names.push_back("sink");
        m.accepting.push_back(false);
        m.cells.resize(m.cells.size() + nb);
    }
    for (size_t b = 0; b < nb; ++b) {
        auto& c = m.cell(m.sink, static_cast<int>(b));
        c.eps.reset();
        c.letter.assign(na, DpdaRule{m.sink, {static_cast<int>(b)}});
    }

    for (int s = 0; s < m.num_states(); ++s) {
        if (s == m.sink) continue;
        for (size_t b = 0; b < nb; ++b) {
            auto& c = m.cell(s, static_cast<int>(b));
            bool has_letter = false;
            for (const auto& r : c.letter)
                if (r) has_letter = true;
            if (c.eps && has_letter) {
                report.violations.push_back(
                    {s, static_cast<int>(b),
                     "both eps rule and letter rules present"});
                continue;
            }
            if (!c.eps) {
                if (c.letter.size() < na) c.letter.resize(na);
                for (size_t a = 0; a < na; ++a)
                    if (!c.letter[a]) {
                        c.letter[a] = DpdaRule{m.sink, {static_cast<int>(b)}};
                        ++report.completed_rules;
                    }
            }
            auto check_rule = [&](const DpdaRule& r) {
                if (r.next_state < 0 || r.next_state >= m.num_states())
                    report.violations.push_back(
                        {s, static_cast<int>(b), "rule targets unknown state"});
                for (int p : r.push)
                    if (p < 0 || p >= static_cast<int>(nb))
                        report.violations.push_back(
                            {s, static_cast<int>(b), "rule pushes unknown symbol"});
            };
            if (c.eps) check_rule(*c.eps);
            for (const auto& r : c.letter)
                if (r) check_rule(*r);
        }
    }
    return report;
}

std::string InstantaneousDescription::str(const Dpda& m) const {
    std::ostringstream out;
    out << "(";
    out << (unread.empty() ? std::string("eps") : unread.str());
    out << " | ";
    if (stack.empty()) {
        out << "eps";
    } else {
        for (size_t i = 0; i < stack.size(); ++i) {
            if (i) out << ' ';
            out << m.stack_syms[stack[i]].name();
        }
    }
    out << " | " << m.state_names[state] << ")";
    return out.str();
}

InstantaneousDescription step(const Dpda& m,
                              const InstantaneousDescription& id) {
    if (id.stack.empty())
        throw std::logic_error("step: machine halted on empty stack");
    const auto& c = m.cell(id.state, id.stack.back());
    InstantaneousDescription out = id;
    const DpdaRule* rule = nullptr;
    if (c.eps) {
        rule = &*c.eps;
    } else {
        if (id.unread.empty())
            throw std::logic_error("step: letter transition with no input left");
        int li = m.input.index_of(id.unread.at(0));
        if (li < 0)
            throw std::invalid_argument("step: foreign symbol " +
                                        id.unread.at(0).name());
        if (li >= static_cast<int>(c.letter.size()) || !c.letter[li])
            throw std::logic_error("step: missing rule (machine not validated)");
        rule = &*c.letter[li];
        out.unread = out.unread.subword(1, out.unread.length());
    }
    out.stack.pop_back();
    out.stack.insert(out.stack.end(), rule->push.begin(), rule->push.end());
    out.state = rule->next_state;
    return out;
}

DpdaCursor::DpdaCursor(const Dpda& m, RunLimits limits)
    : m_(&m), limits_(limits), state_(m.start_state) {
    if (m.sink < 0)
        throw std::logic_error("DpdaCursor: machine not validated: " + m.name);
    stack_.push_back(m.start_symbol);
    eps_close();
}

bool DpdaCursor::apply(const DpdaRule& rule) {
    stack_.pop_back();
    stack_.insert(stack_.end(), rule.push.begin(), rule.push.end());
    state_ = rule.next_state;
    ++steps_;
    if (trace_) {
        InstantaneousDescription id;
        id.stack = stack_;
        id.state = state_;
        trace_(id);
    }
    return true;
}

void DpdaCursor::eps_close() {
    accepts_here_ = false;
    long chain = 0;
    long cap = static_cast<long>(m_->num_states()) *
                   (static_cast<long>(m_->stack_syms.size()) + 1) *
                   limits_.eps_factor *
                   (static_cast<long>(stack_.size()) + 1) +
               16;
    for (;;) {
        if (stack_.empty()) {
            if (m_->mode == AcceptMode::EmptyStack) accepts_here_ = true;
            dead_ = true;
            return;
        }
        if (m_->mode == AcceptMode::FinalState && m_->accepting[state_])
            accepts_here_ = true;
        if (state_ == m_->sink) {
            dead_ = true;
            return;
        }
        const auto& c = m_->cell(state_, stack_.back());
        if (!c.eps) return;  // letter cell: chain over
        if (++chain > cap)
            throw DivergenceError("eps divergence in machine " + m_->name +
                                  " at state " + m_->state_names[state_]);
        apply(*c.eps);
        ++eps_steps_;
    }
}

void DpdaCursor::consume(Symbol s) {
    int li = m_->input.index_of(s);
    if (li < 0)
        throw std::invalid_argument("consume: foreign symbol " + s.name() +
                                    " for machine " + m_->name);
    consume_index(li);
}

void DpdaCursor::consume_index(int li) {
    if (dead_) {
        accepts_here_ = false;
        ++steps_;
        return;
    }
    const auto& c = m_->cell(state_, stack_.back());
    assert(!c.eps);
    assert(li >= 0 && li < static_cast<int>(c.letter.size()) && c.letter[li]);
    apply(*c.letter[li]);
    eps_close();
}

RunReport run(const Dpda& m, const Word& w, RunLimits limits,
              DpdaCursor::TraceFn trace) {
    DpdaCursor cur(m, limits);
    size_t pos = 0;
    if (trace) {
        cur.set_trace([&](const InstantaneousDescription& id) {
            InstantaneousDescription full = id;
            full.unread = w.subword(pos, w.length());
            trace(full);
        });
    }
    for (; pos < w.length(); ) {
        Symbol s = w.at(pos);
        ++pos;  // bump before consume so traced IDs show the right remainder
        cur.consume(s);
    }
    RunReport report;
    report.accepted = cur.accepts_here();
    report.steps = cur.steps();
    report.eps_steps = cur.eps_steps();
    report.final_state = cur.state();
    return report;
}

Dpda to_final_state(const Dpda& m) {
    if (m.mode != AcceptMode::EmptyStack)
        throw std::invalid_argument("to_final_state: machine not in empty-stack mode");
    if (m.sink < 0)
        throw std::invalid_argument("to_final_state: validate the machine first");
    Dpda out;
    out.name = m.name + "/final";
    out.mode = AcceptMode::FinalState;
    out.input = m.input;
    out.stack_syms = m.stack_syms;
    Symbol bottom = Symbol::intern("_bot_");
    if (out.stack_syms.size() > 200)
        throw std::logic_error("unexpected stack alphabet size");
    out.stack_syms.push_back(bottom);
    int bot = static_cast<int>(out.stack_syms.size()) - 1;

    out.state_names = m.state_names;
    out.accepting.assign(m.num_states(), false);
    int init = out.num_states();
    out.state_names.push_back("init");
    out.accepting.push_back(false);
    int fin = out.num_states();
    out.state_names.push_back("final");
    out.accepting.push_back(true);

    size_t nb = out.stack_syms.size();
    out.cells.resize(out.state_names.size() * nb);
    // copy original cells (stack indices unchanged)
    for (int s = 0; s < m.num_states(); ++s)
        for (size_t b = 0; b < m.stack_syms.size(); ++b)
            out.cell(s, static_cast<int>(b)) = m.cell(s, static_cast<int>(b));
    // exposing the bottom marker means the original emptied its stack
    for (int s = 0; s < m.num_states(); ++s)
        out.cell(s, bot).eps = DpdaRule{fin, {bot}};
    out.cell(init, bot).eps = DpdaRule{m.start_state, {bot, m.start_symbol}};
    // final keeps the marker; any further input is rejected via the sink
    out.start_state = init;
    out.start_symbol = bot;
    out.sink = -1;
    auto rep = validate(out);
    if (!rep.ok()) throw std::logic_error("to_final_state produced invalid machine");
    return out;
}

namespace {

int find_stack_sym(const Dpda& m, const char* name) {
    for (size_t i = 0; i < m.stack_syms.size(); ++i)
        if (m.stack_syms[i].name() == name) return static_cast<int>(i);
    return -1;
}

}  // namespace

Dpda make_counter(int bound, const std::map<Symbol, int>& actions) {
    if (bound < 1) throw std::invalid_argument("make_counter: bound must be >= 1");
    std::vector<Symbol> alpha;
    for (const auto& [sym, k] : actions) {
        if (k < -bound || k > bound)
            throw std::invalid_argument("make_counter: action out of range");
        alpha.push_back(sym);
    }
    Dpda m;
    m.name = "counter";
    m.mode = AcceptMode::FinalState;
    m.input = Alphabet(alpha);
    Symbol z0 = Symbol::intern("Z");
    Symbol pos = Symbol::intern("+1");
    Symbol neg = Symbol::intern("-1");
    m.stack_syms = {z0, pos, neg};
    const int Z = 0, P = 1, N = 2;

    // states: zero/pos/neg letter states, settle, adj(r) for r != 0
    auto add_state = [&](const std::string& n, bool acc) {
        m.state_names.push_back(n);
        m.accepting.push_back(acc);
        return m.num_states() - 1;
    };
    int s_zero = add_state("zero", true);
    int s_pos = add_state("pos", false);
    int s_neg = add_state("neg", false);
    int settle = add_state("settle", false);
    std::map<int, int> adj;  // remaining delta -> state
    for (int r = -bound; r <= bound; ++r)
        if (r != 0) adj[r] = add_state("adj" + std::to_string(r), false);

    m.cells.resize(m.state_names.size() * m.stack_syms.size());
    auto pushes = [&](int base, int sign_sym, int count) {
        std::vector<int> w{base};
        for (int i = 0; i < count; ++i) w.push_back(sign_sym);
        return w;
    };

    // letter rules
    for (size_t li = 0; li < m.input.size(); ++li) {
        int k = actions.at(m.input.at(li));
        // from zero: top is Z
        m.cell(s_zero, Z).letter.resize(m.input.size());
        m.cell(s_zero, Z).letter[li] =
            k == 0 ? DpdaRule{s_zero, {Z}}
                   : DpdaRule{k > 0 ? s_pos : s_neg,
                              pushes(Z, k > 0 ? P : N, std::abs(k))};
        // from pos: top is P
        m.cell(s_pos, P).letter.resize(m.input.size());
        if (k >= 0) {
            m.cell(s_pos, P).letter[li] = DpdaRule{s_pos, pushes(P, P, k)};
        } else {
            // pop one, then continue popping in eps states
            m.cell(s_pos, P).letter[li] =
                DpdaRule{k + 1 == 0 ? settle : adj[k + 1], {}};
        }
        // from neg: top is N
        m.cell(s_neg, N).letter.resize(m.input.size());
        if (k <= 0) {
            m.cell(s_neg, N).letter[li] = DpdaRule{s_neg, pushes(N, N, -k)};
        } else {
            m.cell(s_neg, N).letter[li] =
                DpdaRule{k - 1 == 0 ? settle : adj[k - 1], {}};
        }
    }
    // settle: route by exposed top without changing the stack
    m.cell(settle, Z).eps = DpdaRule{s_zero, {Z}};
    m.cell(settle, P).eps = DpdaRule{s_pos, {P}};
    m.cell(settle, N).eps = DpdaRule{s_neg, {N}};
    // adj(r): apply the remaining delta r
    for (auto [r, st] : adj) {
        m.cell(st, Z).eps = DpdaRule{r > 0 ? s_pos : s_neg,
                                     pushes(Z, r > 0 ? P : N, std::abs(r))};
        if (r < 0)
            m.cell(st, P).eps = DpdaRule{r + 1 == 0 ? settle : adj[r + 1], {}};
        else
            m.cell(st, P).eps = DpdaRule{s_pos, pushes(P, P, r)};
        if (r > 0)
            m.cell(st, N).eps = DpdaRule{r - 1 == 0 ? settle : adj[r - 1], {}};
        else
            m.cell(st, N).eps = DpdaRule{s_neg, pushes(N, N, -r)};
    }
    m.start_state = s_zero;
    m.start_symbol = Z;
    auto rep = validate(m);
    if (!rep.ok()) throw std::logic_error("make_counter produced invalid machine");
    return m;
}

long counter_value(const DpdaCursor& c) {
    const Dpda& m = c.machine();
    int p = find_stack_sym(m, "+1");
    int n = find_stack_sym(m, "-1");
    long v = 0;
    for (int s : c.stack()) {
        if (s == p) ++v;
        if (s == n) --v;
    }
    return v;
}

Dpda fsa_to_dpda(const Fsa& f, const std::string& name) {
    Dpda m;
    m.name = name;
    m.mode = AcceptMode::FinalState;
    m.input = f.alphabet;
    m.stack_syms = {Symbol::intern("Z")};
    m.state_names.resize(f.num_states);
    for (int s = 0; s < f.num_states; ++s)
        m.state_names[s] =
            f.state_names.empty() ? "q" + std::to_string(s) : f.state_names[s];
    m.accepting = f.accepting;
    m.cells.resize(static_cast<size_t>(f.num_states));
    for (int s = 0; s < f.num_states; ++s) {
        auto& c = m.cell(s, 0);
        c.letter.resize(m.input.size());
        for (size_t li = 0; li < m.input.size(); ++li)
            c.letter[li] = DpdaRule{f.next(s, static_cast<int>(li)), {0}};
    }
    m.start_state = f.start;
    m.start_symbol = 0;
    validate(m);
    return m;
}

Dpda product_with_fsa(const Dpda& m, const Fsa& f, bool accept_or) {
    if (m.mode != AcceptMode::FinalState)
        throw std::invalid_argument("product_with_fsa: DPDA must accept by final state");
    if (!(m.input == f.alphabet))
        throw std::invalid_argument("product_with_fsa: alphabet mismatch");
    if (m.sink < 0)
        throw std::invalid_argument("product_with_fsa: validate the machine first");
    Dpda out;
    out.name = m.name + (accept_or ? "|fsa" : "&fsa");
    out.mode = AcceptMode::FinalState;
    out.input = m.input;
    out.stack_syms = m.stack_syms;
    out.start_symbol = m.start_symbol;
    int nq = f.num_states;
    auto id = [&](int s, int q) { return s * nq + q; };
    out.state_names.resize(static_cast<size_t>(m.num_states()) * nq);
    out.accepting.resize(out.state_names.size());
    for (int s = 0; s < m.num_states(); ++s)
        for (int q = 0; q < nq; ++q) {
            out.state_names[id(s, q)] =
                m.state_names[s] + "*q" + std::to_string(q);
            out.accepting[id(s, q)] = accept_or
                                          ? (m.accepting[s] || f.accepting[q])
                                          : (m.accepting[s] && f.accepting[q]);
        }
    size_t nb = out.stack_syms.size();
    out.cells.resize(out.state_names.size() * nb);
    for (int s = 0; s < m.num_states(); ++s)
        for (size_t b = 0; b < nb; ++b) {
            const auto& c = m.cell(s, static_cast<int>(b));
            for (int q = 0; q < nq; ++q) {
                auto& oc = out.cell(id(s, q), static_cast<int>(b));
                if (c.eps) {
                    oc.eps = DpdaRule{id(c.eps->next_state, q), c.eps->push};
                } else {
                    oc.letter.resize(out.input.size());
                    for (size_t li = 0; li < c.letter.size(); ++li)
                        if (c.letter[li])
                            oc.letter[li] = DpdaRule{
                                id(c.letter[li]->next_state,
                                   f.next(q, static_cast<int>(li))),
                                c.letter[li]->push};
                }
            }
        }
    out.start_state = id(m.start_state, f.start);
    out.sink = -1;  // note: (sink, q) pairs remain live for the FSA verdict
    auto rep = validate(out);
    if (!rep.ok()) throw std::logic_error("product_with_fsa produced invalid machine");
    return out;
}

std::vector<bool> live_states(const Dpda& m) {
    int n = m.num_states();
    std::vector<bool> live(n, false);
    // Base: states that can possibly realize acceptance on their own.
    for (int s = 0; s < n; ++s) {
        if (m.mode == AcceptMode::FinalState && m.accepting[s]) live[s] = true;
        if (m.mode == AcceptMode::EmptyStack)
            for (size_t b = 0; b < m.stack_syms.size(); ++b) {
                const auto& c = m.cell(s, static_cast<int>(b));
                if (c.eps && c.eps->push.empty()) live[s] = true;
                for (const auto& r : c.letter)
                    if (r && r->push.empty()) live[s] = true;
            }
    }
    // Backward closure over the rule graph, ignoring stack feasibility.
    bool changed = true;
    while (changed) {
        changed = false;
        for (int s = 0; s < n; ++s) {
            if (live[s]) continue;
            for (size_t b = 0; b < m.stack_syms.size() && !live[s]; ++b) {
                const auto& c = m.cell(s, static_cast<int>(b));
                if (c.eps && live[c.eps->next_state]) live[s] = true;
                for (const auto& r : c.letter)
                    if (r && live[r->next_state]) {
                        live[s] = true;
                        break;
                    }
            }
            changed = changed || live[s];
        }
    }
    return live;
}

}  // namespace ppd
