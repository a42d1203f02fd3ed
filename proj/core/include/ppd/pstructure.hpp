/* pstructure.hpp -- P-structures on groups: verification, rebasing, word problem. */

#ifndef PPD_PSTRUCTURE_HPP_
#define PPD_PSTRUCTURE_HPP_

#include <functional>
#include <map>

#include "ppd/oracle.hpp"
#include "ppd/ppl.hpp"
#include "ppd/two_tape.hpp"

namespace ppd {

// A normal-form language bijecting to a group, with one pair relation per
// generator recognizing right multiplication, plus the ground-truth oracle
// the machines are verified against (the oracle is never consulted for
// membership decisions themselves).
struct PStructure {
    std::string name;
    Alphabet alphabet;  // closed under inverses
    PplLanguage language;
    std::map<Symbol, AtpplRelation> multipliers;
    OraclePtr oracle;

    // Construction-specific canonical form of an oracle element (the fast
    // word-problem path); may be empty, forcing enumeration.
    std::function<Word(const GroupOracle::Elem&)> normal_form_of;

    // Candidate normal forms for the radius-r ball are searched up to length
    // nf_factor*r + nf_offset.
    size_t nf_factor = 1;
    size_t nf_offset = 0;

    size_t nf_bound(int radius) const {
        return nf_factor * static_cast<size_t>(radius) + nf_offset;
    }
};

struct CheckReport {
    size_t ball_size = 0;
    size_t language_words = 0;   // enumerated normal forms within bound
    long multiplier_checks = 0;  // (pair, generator) relation queries
    std::vector<std::string> issues;

    bool ok() const { return issues.empty(); }
};

// Conditions 1-3 on the radius-r ball: every ball element is represented by
// exactly one normal form within the length bound, and each generator's
// relation agrees with the oracle on all pairs of ball normal forms.
CheckReport check_structure(const PStructure& s, int radius,
                            RunLimits limits = {}, size_t max_issues = 25);

// Representative of the identity within the given search bound; throws if
// none is found.
Word identity_representative(const PStructure& s, size_t search_bound);

// Language surgery making the empty word the identity representative, with
// the multipliers patched pairwise.
PStructure rebase_identity(const PStructure& s);

struct WordProblemOptions {
    bool use_enumeration = false;  // the pure enumerate-and-test procedure
    size_t ceiling_factor = 4;     // successor length ceiling 4*l(w)+16
    size_t ceiling_offset = 16;
    bool verify_steps = true;  // fast path: check each successor via machines
};

struct BoundExhausted : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// True iff w evaluates to the group identity, decided by walking successor
// normal forms through the multiplier relations.
bool word_problem(const PStructure& s, const Word& w,
                  WordProblemOptions opts = {}, RunLimits limits = {});

}  // namespace ppd

#endif
