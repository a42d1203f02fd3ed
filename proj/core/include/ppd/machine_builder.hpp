/* machine_builder.hpp -- convenience layer for assembling machines by name. */

#ifndef PPD_MACHINE_BUILDER_HPP_
#define PPD_MACHINE_BUILDER_HPP_

#include <map>
#include <string>
#include <vector>

#include "ppd/two_tape.hpp"

namespace ppd {

// Accumulates states, stack symbols and rules under string keys, then emits a
// validated machine.  States and stack symbols are created on first mention.
class MachineBuilder {
public:
    MachineBuilder(std::string name, AcceptMode mode, Alphabet input);

    int state(const std::string& name);  // get-or-create
    bool has_state(const std::string& name) const;
    void accept(const std::string& state);
    void side(const std::string& state, Side s);
    void start(const std::string& state, Symbol bottom);

    void rule(const std::string& from, Symbol top, Symbol letter,
              const std::string& to, const std::vector<Symbol>& push);
    void eps(const std::string& from, Symbol top, const std::string& to,
             const std::vector<Symbol>& push);

    Dpda build();
    TwoTapePda build_two_tape(const Alphabet& left, const Alphabet& right);

private:
    struct PendingRule {
        int state;
        int top;
        int letter;  // -1 for eps
        DpdaRule rule;
    };

    int stack_sym(Symbol s);
    Dpda m_;
    std::vector<PendingRule> pending_;
    std::map<std::string, int> state_ids_;
    std::map<Symbol, int> stack_ids_;
    std::map<int, Side> sides_;
    bool start_set_ = false;
};

// One phase of a sequential counter machine: read one tape, add the delta of
// each letter to the shared counter, leave on the end marker.
struct CounterPhase {
    Side side = Side::Left;
    std::map<Symbol, int> deltas;  // untagged letters; anything else rejects
};

// Two-tape machine that reads its phases in order ($ closes each one) and
// accepts iff offset plus the sum of all consumed deltas is zero.
TwoTapePda block_counter(const std::string& name, const Alphabet& left,
                         const Alphabet& right,
                         const std::vector<CounterPhase>& phases, int offset = 0);

// Accepts exactly the pairs (w, w), read synchronously letter by letter.
TwoTapePda diagonal_machine(const Alphabet& a);

// Accepts every pair; useful as a neutral component.
TwoTapePda all_pairs_machine(const Alphabet& left, const Alphabet& right);

// Accepts exactly the listed pairs (complement = false) or exactly the other
// pairs (complement = true); reads all of u$, then all of v$.
TwoTapePda finite_pair_machine(const Alphabet& left, const Alphabet& right,
                               const std::vector<std::pair<Word, Word>>& pairs,
                               bool complement);

// Product of m with a passive tracker for the listed pairs; acceptance is
// m-accepts OR pair-listed.  Used to adjoin finitely many pairs to a relation
// component.  m may accept by empty stack; it is converted internally.
TwoTapePda union_with_pairs(const TwoTapePda& m,
                            const std::vector<std::pair<Word, Word>>& pairs);

}  // namespace ppd

#endif
