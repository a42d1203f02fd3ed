/* constructions.hpp -- closure factories: products, extensions, semidirect, wreath. */

#ifndef PPD_CONSTRUCTIONS_HPP_
#define PPD_CONSTRUCTIONS_HPP_

#include "ppd/automatic.hpp"
#include "ppd/emulation.hpp"
#include "ppd/pstructure.hpp"

namespace ppd {

// Recomputes nf_factor/nf_offset so that nf_bound(r) covers every normal form
// met on the radius-max_radius ball (needs normal_form_of and the oracle).
void calibrate_nf_bound(PStructure& s, int max_radius);

// G x G'.  Both structures must be rebased (eps represents 1) and have
// disjoint alphabets.  Normal forms are (G word)(G' word).
PStructure direct_product(const PStructure& s, const PStructure& sp);

// G * G'.  Same preconditions; normal forms are the alternating words of
// alternating_concat, multipliers are prefix comparator + last-block teams.
// Component multiplier machines must decide their relation on arbitrary words
// over their own alphabet, not just on normal forms (true of the counter
// machines used by the shipped factors).
PStructure free_product(const PStructure& s, const PStructure& sp);

// x1,X1,...,xn,Xn -- the block-word alphabet shared by the Z^n factories.
Alphabet zn_alphabet(int n);

// Lemma 5.7: pairs (x1^m1...xn^mn, x1^m'1...xn^m'n) with m' = A m, decided by
// one counter machine per coordinate.  A must be invertible over Z.
AtpplRelation linear_map_relation(const IntegerMatrix& A);

// Z^n x| H for a Z-structure sH (alphabet {t, T}); phi maps each H letter to
// its automorphism matrix (phi[T] = phi[t]^-1).  Normal forms are
// (H word)(x-blocks); H-letter multipliers pair sH's head machines with the
// linear-map counters of the oracle-resolved matrix.
PStructure semidirect_Zn(const std::map<Symbol, IntegerMatrix>& phi,
                         const PStructure& sH);

// Central extension of the automatic group aut by K = Z^n x F.
struct CocycleSpec {
    std::string name;
    int n = 0;                   // rank of the free-abelian part of K
    FiniteGroupTable F;          // finite part (abelian)
    Cocycle rho;                 // normalized 2-cocycle on aut's group
    std::vector<Symbol> z_letters;  // x1,X1,...,xn,Xn order: letter, inverse
    std::vector<std::pair<Symbol, int>> f_letters;  // letter -> F index, incl.
                                                    // one per nontrivial elem
};
PStructure central_extension(const CocycleSpec& spec,
                             const AutomaticStructure& aut);

// G wr H for Z-structures (alphabet {a, A} resp. {t, T}); normal forms per
// Thm 5.4 with the cursor-walk encoding fixed by the wreath oracle.
PStructure wreath_product(const PStructure& sG, const PStructure& sH,
                          const ShortlexOrder& ord);

// Virtually-(Z^n x| Z) groups, Lemma 5.9.  The finite-index data is given as
// a normal-form language plus, per generator, the finite list of counter
// conditions (linear functionals of the letter counts) that its multiplier
// must enforce; the factory only assembles and verifies them.
struct LinearCondition {
    std::map<Symbol, int> left;   // per-letter deltas on the left word
    std::map<Symbol, int> right;  // per-letter deltas on the right word
    int offset = 0;               // accept iff offset + sums == 0
};
struct TransversalSpec {
    std::string name;
    Alphabet alphabet;  // z/x letters plus the transversal letters
    OraclePtr oracle;
    Fsa language;  // normal-form words z^p x-blocks transversal-tail
    std::map<Symbol, std::vector<LinearCondition>> conditions;
    std::function<Word(const GroupOracle::Elem&)> normal_form_of;
};
PStructure virtually_semidirect(const IntegerMatrix& A,
                                const TransversalSpec& T);

}  // namespace ppd

#endif
