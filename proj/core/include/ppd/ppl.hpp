/* ppl.hpp -- parallel poly-pushdown languages and their closure combinators. */

#ifndef PPD_PPL_HPP_
#define PPD_PPL_HPP_

#include "ppd/dpda.hpp"

namespace ppd {

// Finite intersection of DPDA languages, run in lockstep.
struct PplLanguage {
    std::string name;
    Alphabet alphabet;
    std::vector<Dpda> machines;  // nonempty, all over `alphabet`
};

PplLanguage make_language(std::string name, std::vector<Dpda> machines);

struct MemberReport {
    bool accepted = false;
    long steps = 0;  // summed over components
};

MemberReport member_report(const PplLanguage& L, const Word& w,
                           RunLimits limits = {});
bool member(const PplLanguage& L, const Word& w, RunLimits limits = {});

// Prop 3.1 combinators.  All produced machines are final-state mode and keep
// a bottom marker, so they embed safely into further combinators.
PplLanguage intersect(const PplLanguage& L, const PplLanguage& M);
PplLanguage union_regular(const PplLanguage& L, const Fsa& R);
PplLanguage minus_regular(const PplLanguage& L, const Fsa& R);

// LM (or (LM)* with star) over disjoint alphabets; requires eps in neither
// language for the plain concatenation.
PplLanguage concat_disjoint(const PplLanguage& L, const PplLanguage& M,
                            bool star);

// M(L-{eps} M-{eps})* L over disjoint alphabets with eps in both: every
// maximal same-alphabet run must lie in its language.  This is the free
// product normal-form factory.
PplLanguage alternating_concat(const PplLanguage& M, const PplLanguage& L);

// All members of length <= max_len, in shortlex order of L's alphabet;
// depth-first over prefixes with dead-cursor pruning.
std::vector<Word> enumerate_language(const PplLanguage& L, size_t max_len,
                                     RunLimits limits = {});

// Incremental lockstep cursor over all components (used by the enumerator and
// the structure checker).
class LanguageCursor {
public:
    LanguageCursor(const PplLanguage& L, RunLimits limits = {});
    void consume(Symbol s);
    bool dead() const;
    bool accepts_here() const;
    long steps() const;
    const std::vector<DpdaCursor>& components() const { return cursors_; }

private:
    std::vector<DpdaCursor> cursors_;
};

// The 2-machine witness for {a^i b^i c^i | i > 0} from the non-closure
// discussion.
PplLanguage aibici_language();

}  // namespace ppd

#endif
