/* fsa.hpp -- deterministic finite state automata and regular operations. */

#ifndef PPD_FSA_HPP_
#define PPD_FSA_HPP_

#include <string>
#include <vector>

#include "ppd/words.hpp"

namespace ppd {

// Total-transition DFA (S, A, tau, s0, Y).  Sparse inputs are completed with an
// explicit non-accepting sink before use.
struct Fsa {
    Alphabet alphabet;
    int num_states = 0;
    std::vector<int> transitions;  // state * |A| + letter -> state
    int start = 0;
    std::vector<bool> accepting;
    std::vector<std::string> state_names;  // optional, may be empty

    int next(int state, int letter_index) const {
        return transitions[static_cast<size_t>(state) * alphabet.size() +
                           letter_index];
    }
};

bool run_fsa(const Fsa& m, const Word& w);

enum class FsaCombine { Union, Intersection, Complement, Concat, Star };

// Set/Kleene combination; m2 ignored for the unary kinds.
Fsa combine_fsa(FsaCombine kind, const Fsa& m1, const Fsa* m2 = nullptr);

// Convenience constructors used by the language combinators and tests.
Fsa fsa_empty(const Alphabet& a);                       // empty language
Fsa fsa_all_words(const Alphabet& a);                   // A*
Fsa fsa_single_word(const Alphabet& a, const Word& w);  // {w}
Fsa fsa_letter_star(const Alphabet& a, Symbol letter);  // letter*

// All accepted words of length <= max_len in shortlex order, pruning states
// that cannot reach an accepting one.
std::vector<Word> enumerate_fsa(const Fsa& m, size_t max_len);

}  // namespace ppd

#endif
