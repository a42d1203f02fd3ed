/* words.hpp -- words over symbol alphabets, tagged copies, shuffles, shortlex. */

#ifndef PPD_WORDS_HPP_
#define PPD_WORDS_HPP_

#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "ppd/symbols.hpp"

namespace ppd {

class Word {
public:
    Word() = default;
    explicit Word(std::vector<Symbol> symbols) : symbols_(std::move(symbols)) {}

    static Word parse(const std::string& whitespace_separated);  // "x2 Y2 z"

    size_t length() const { return symbols_.size(); }
    bool empty() const { return symbols_.empty(); }
    Symbol at(size_t i) const { return symbols_[i]; }
    const std::vector<Symbol>& symbols() const { return symbols_; }
    void push_back(Symbol s) { symbols_.push_back(s); }
    void pop_back() { symbols_.pop_back(); }
    Word concat(const Word& other) const;
    Word subword(size_t begin, size_t end) const;
    std::string str() const;  // space separated display names

    bool operator==(const Word& o) const { return symbols_ == o.symbols_; }
    bool operator!=(const Word& o) const { return symbols_ != o.symbols_; }
    bool operator<(const Word& o) const { return symbols_ < o.symbols_; }

    auto begin() const { return symbols_.begin(); }
    auto end() const { return symbols_.end(); }

private:
    std::vector<Symbol> symbols_;
};

// Letterwise retagging.  `t == Tag::None` strips tags; otherwise the input must
// be untagged.
Word tag_word(const Word& w, Tag t);

// Reversal with each letter replaced by its formal-inverse copy; involutive.
Word formal_inverse(const Word& w);

// A shuffle of a pair (u,v): an interleaving word over the sharp/flat copies,
// stored with its canonical maximal-run block decomposition.
struct Shuffle {
    Word tagged;                            // the interleaving over A# + A@
    std::vector<std::pair<Word, Word>> blocks;  // (u_i, v_i) untagged blocks

    Word left_source() const;   // concatenation of the u_i
    Word right_source() const;  // concatenation of the v_i
    bool operator<(const Shuffle& o) const { return tagged < o.tagged; }
    bool operator==(const Shuffle& o) const { return tagged == o.tagged; }
};

inline constexpr size_t kShuffleCap = 16;

// Exhaustive enumeration over block decompositions satisfying
// u_i != eps for i > 1 and v_j != eps for j < k; deduplicated by the resulting
// interleaving word.  Throws if l(u)+l(v) exceeds `cap`.
std::set<Shuffle> enumerate_shuffles(const Word& u, const Word& v,
                                     size_t cap = kShuffleCap);

enum class Order { Less, Equal, Greater };

class ShortlexOrder {
public:
    explicit ShortlexOrder(Alphabet alphabet) : alphabet_(std::move(alphabet)) {}
    const Alphabet& alphabet() const { return alphabet_; }

    Order compare(const Word& u, const Word& v) const;
    bool less(const Word& u, const Word& v) const {
        return compare(u, v) == Order::Less;
    }

private:
    Alphabet alphabet_;
};

Order shortlex_compare(const Word& u, const Word& v, const ShortlexOrder& ord);

}  // namespace ppd

#endif
