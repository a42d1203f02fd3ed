/* dpda.hpp -- deterministic pushdown automata: validation, stepping, runs. */

#ifndef PPD_DPDA_HPP_
#define PPD_DPDA_HPP_

#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "ppd/fsa.hpp"
#include "ppd/words.hpp"

namespace ppd {

enum class AcceptMode { EmptyStack, FinalState };

// Epsilon divergence: the machine ran too many stack moves without consuming
// input.  Distinct from rejection; signals a bad machine.
struct DivergenceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DpdaRule {
    int next_state = 0;
    std::vector<int> push;  // replaces popped top; bottom-first, back() is new top
};

// The 7-tuple (S, A, B, tau, s0, Z0, Y).  Transition cells are addressed by
// (state, stack top); each cell is either a single eps rule or letter rules
// totalized over A (missing ones are completed to the sink by validate()).
struct Dpda {
    std::string name;
    std::vector<std::string> state_names;
    Alphabet input;
    std::vector<Symbol> stack_syms;
    int start_state = 0;
    int start_symbol = 0;
    std::vector<bool> accepting;
    AcceptMode mode = AcceptMode::EmptyStack;
    int sink = -1;  // totalization target; -1 until validate() runs

    struct Cell {
        std::optional<DpdaRule> eps;
        std::vector<std::optional<DpdaRule>> letter;  // indexed by input letter
    };
    std::vector<Cell> cells;  // state * |B| + top

    int num_states() const { return static_cast<int>(state_names.size()); }
    Cell& cell(int state, int top) {
        return cells[static_cast<size_t>(state) * stack_syms.size() + top];
    }
    const Cell& cell(int state, int top) const {
        return cells[static_cast<size_t>(state) * stack_syms.size() + top];
    }
    int stack_index(Symbol s) const;
};

struct ValidationIssue {
    int state;
    int stack_sym;
    std::string what;
};

struct ValidationReport {
    std::vector<ValidationIssue> violations;
    int completed_rules = 0;  // letter rules routed to the sink
    bool ok() const { return violations.empty(); }
};

// Checks the determinism condition cell by cell and completes sparse letter
// rules with an explicit sink state.  Machines failing validation are unusable.
ValidationReport validate(Dpda& m);

struct InstantaneousDescription {
    Word unread;
    std::vector<int> stack;  // indices into stack_syms, back() is the top
    int state = 0;

    std::string str(const Dpda& m) const;
};

// Applies the single applicable transition.  Throws on empty stack or when the
// cell demands a letter and the input is exhausted.
InstantaneousDescription step(const Dpda& m, const InstantaneousDescription& id);

struct RunLimits {
    int eps_factor = 4;  // F in the |S|*(|B|+1)*F*(h+1) per-chain cap
};

struct RunReport {
    bool accepted = false;
    long steps = 0;      // total transitions
    long eps_steps = 0;  // transitions that consumed no input
    int final_state = 0;
};

// Incremental configuration: feed letters one at a time.  Epsilon chains are
// closed after every consumption; acceptance is evaluated as if the input
// ended at the current point.
class DpdaCursor {
public:
    DpdaCursor(const Dpda& m, RunLimits limits = {});

    void consume(Symbol s);        // by symbol (must be in m.input)
    void consume_index(int li);    // by letter index
    bool dead() const { return dead_; }        // no extension can accept
    bool accepts_here() const { return accepts_here_; }
    int state() const { return state_; }
    const std::vector<int>& stack() const { return stack_; }
    long steps() const { return steps_; }
    long eps_steps() const { return eps_steps_; }
    const Dpda& machine() const { return *m_; }

    using TraceFn = std::function<void(const InstantaneousDescription&)>;
    void set_trace(TraceFn fn) { trace_ = std::move(fn); }

private:
    void eps_close();
    bool apply(const DpdaRule& rule);

    const Dpda* m_;
    RunLimits limits_;
    int state_;
    std::vector<int> stack_;
    bool dead_ = false;
    bool halted_empty_ = false;   // stack emptied (terminal)
    bool accepts_here_ = false;
    bool passed_accept_ = false;  // final-state mode: Y seen in current chain
    long steps_ = 0, eps_steps_ = 0;
    TraceFn trace_;
};

RunReport run(const Dpda& m, const Word& w, RunLimits limits = {},
              DpdaCursor::TraceFn trace = nullptr);

// Empty-stack machine -> final-state machine with a fresh bottom marker and a
// fresh accept state; same language.
Dpda to_final_state(const Dpda& m);

// Counter machine over the given letter actions, each in [-bound, bound].
// Tracks the running sum on the stack in signed unary; accepts (final state,
// equivalent to an empty counter) iff the sum is zero.
Dpda make_counter(int bound, const std::map<Symbol, int>& actions);

// Signed-unary counter value of a cursor over a make_counter machine.
long counter_value(const DpdaCursor& c);

// Stack-trivial embedding of a DFA (final-state mode).
Dpda fsa_to_dpda(const Fsa& f, const std::string& name = "fsa");

// Stack-abstracted coaccessibility: false means no suffix can ever lead to
// acceptance from that state, whatever the stack holds.  Over-approximate on
// the true side, so it is safe for pruning enumeration.
std::vector<bool> live_states(const Dpda& m);

// Product of a final-state DPDA with a DFA; acceptance is OR or AND of the
// two verdicts.  The DFA advances only when input is consumed.
Dpda product_with_fsa(const Dpda& m, const Fsa& f, bool accept_or);

}  // namespace ppd

#endif
