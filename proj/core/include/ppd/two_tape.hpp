/* two_tape.hpp -- asynchronous two-tape pushdown automata and pair relations. */

#ifndef PPD_TWO_TAPE_HPP_
#define PPD_TWO_TAPE_HPP_

#include "ppd/dpda.hpp"

namespace ppd {

enum class Side { Left, Right };  // left = sharp tape, right = flat tape

// A DPDA over the tagged alphabet A# + {$#} + A@ + {$@} whose non-sink states
// are partitioned by the tape they read next.  Words on each tape are closed
// with the end marker; the machine decides a relation on pairs.
struct TwoTapePda {
    Dpda machine;
    std::vector<Side> side;  // indexed by state; the sink entry is unused
    Alphabet left_alphabet;  // untagged
    Alphabet right_alphabet;

    int num_states() const { return machine.num_states(); }
};

// Tagged input alphabet for a two-tape machine over the given tape alphabets.
Alphabet two_tape_alphabet(const Alphabet& left, const Alphabet& right);

// Determinism plus partition discipline: live letter rules of a non-sink state
// must read its own tape (wrong-side letters are completed to the sink).
ValidationReport validate_two_tape(TwoTapePda& m);

struct PairRunReport {
    bool accepted = false;
    bool stuck = false;  // demanded a letter from an exhausted tape
    long steps = 0;
    long eps_steps = 0;
    Word shuffle;  // tagged letters consumed, end markers included
};

// Drives the unique state-directed interleaving of (u$, v$) through m.
PairRunReport run_pair(const TwoTapePda& m, const Word& u, const Word& v,
                       RunLimits limits = {}, DpdaCursor::TraceFn trace = nullptr);

bool accept_pair(const TwoTapePda& m, const Word& u, const Word& v,
                 RunLimits limits = {});

// Finite intersection of two-tape pair languages.
struct AtpplRelation {
    std::string name;
    std::vector<TwoTapePda> machines;
    Alphabet left_alphabet;
    Alphabet right_alphabet;
};

AtpplRelation make_relation(std::string name, std::vector<TwoTapePda> machines);

bool relation_member(const AtpplRelation& r, const Word& u, const Word& v,
                     RunLimits limits = {});

// The same relation with the roles of the tapes exchanged.
TwoTapePda swap_tapes(const TwoTapePda& m);
AtpplRelation swap_tapes(const AtpplRelation& r);

struct ShuffleAudit {
    size_t accepted_count = 0;  // shuffles of (u$, v$) the machine accepts
    bool pair_accepted = false;
    bool consistent = false;  // at most one accept, and it matches run_pair
};

// Checks that m accepts at most one shuffle of (u$, v$) and that the accepted
// one, if any, is exactly the interleaving run_pair consumes.
ShuffleAudit verify_unique_shuffle(const TwoTapePda& m, const Word& u,
                                   const Word& v, size_t cap = kShuffleCap);

}  // namespace ppd

#endif
