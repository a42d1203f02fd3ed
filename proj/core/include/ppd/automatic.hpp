/* automatic.hpp -- input automatic structures: comparator FSAs over two tapes. */

#ifndef PPD_AUTOMATIC_HPP_
#define PPD_AUTOMATIC_HPP_

#include "ppd/fsa.hpp"
#include "ppd/oracle.hpp"
#include "ppd/two_tape.hpp"

namespace ppd {

// Stack-free two-tape machine: an Fsa over the tagged alphabet with end
// markers plus the per-state tape partition of the two-tape PDA.
struct TwoTapeFsa {
    Fsa fsa;                 // alphabet = two_tape_alphabet(left, right)
    std::vector<Side> sides;  // indexed by state
    Alphabet left;            // untagged tape alphabets
    Alphabet right;
};

// Drives the unique state-directed interleaving of (u$, v$); demanding a
// letter from an exhausted tape rejects.
bool run_two_tape_fsa(const TwoTapeFsa& m, const Word& u, const Word& v);

// Word acceptor, one comparator per generator (accepting (u,u') iff u'bar =
// ubar*a on normal forms), and the fellow-traveler constant, all re-verified
// against the oracle rather than trusted.
struct AutomaticStructure {
    std::string name;
    Alphabet alphabet;  // group generators, closed under inverses
    Fsa acceptor;
    std::map<Symbol, TwoTapeFsa> multipliers;
    int fellow_traveler = 0;  // constant C
    OraclePtr oracle;
};

// Checks, on the radius-r ball: the acceptor bijects normal forms of length
// <= r to ball elements; each multiplier agrees with the oracle on all pairs
// of those normal forms; accepted pairs C-fellow-travel.  Returns issues.
std::vector<std::string> verify_automatic(const AutomaticStructure& s,
                                          int radius, size_t max_issues = 25);

// Smallest C witnessed on the radius-r ball: max word-norm of the prefix
// differences p(u(j))^-1 p(u'(j)) over oracle-related normal-form pairs.
int fellow_traveler_constant(const AutomaticStructure& s, int radius);

// Z^m, 1 <= m <= 3, with shortlex block normal forms over x/X, y/Y, z/Z and
// the frozen fellow-traveler constant (re-derivable by the function above).
AutomaticStructure shortlex_zm_structure(int m);

}  // namespace ppd

#endif
