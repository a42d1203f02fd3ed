/* emulation.hpp -- two-tape hosts that run component machines on word parts. */

#ifndef PPD_EMULATION_HPP_
#define PPD_EMULATION_HPP_

#include "ppd/machine_builder.hpp"
#include "ppd/two_tape.hpp"

namespace ppd {

// Sequential composition: accepts (u1 u2, v1 v2) iff m1 accepts (u1, v1) and
// m2 accepts (u2, v2), where the split points are the first letters outside
// m1's tape alphabets.  m1 is fed virtual end markers at the switch; the
// triggering letters are held and replayed into m2.  Both components must be
// final-state machines whose tape alphabets are disjoint from each other's.
TwoTapePda seq2_machine(const std::string& name, const TwoTapePda& m1,
                        const TwoTapePda& m2);

// Finite-state comparator for words alternating between blocks over `run` and
// `other`: accepts iff the tapes agree letter for letter up to some point
// after which both remainders lie in run*.  The machinery of the free-product
// multipliers: normal-form pairs differing only in their final run-blocks.
TwoTapePda prefix_comparator(const std::string& name, const Alphabet& run,
                             const Alphabet& other);

// Compares the tapes letter for letter and, from the first difference (or a
// tape end), hands the remainders to an emulated copy of `comp` started on a
// cleared stack.  Accepts iff both remainders lie in comp's alphabets and
// comp accepts them.  On pairs of alternating normal forms this decides "the
// words differ only in their final run-factors, and those factors satisfy
// comp" -- left cancellation makes comp's verdict on the suffixes agree with
// its verdict on the whole final factors.  comp must be a final-state machine
// over (run, run); `other` lists the remaining letters seen while comparing.
TwoTapePda last_block_machine(const std::string& name, const TwoTapePda& comp,
                              const Alphabet& other);

}  // namespace ppd

#endif
