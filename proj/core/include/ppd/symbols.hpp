/* symbols.hpp -- interned alphabet symbols with tagged copies (#, @, !, %, $). */

#ifndef PPD_SYMBOLS_HPP_
#define PPD_SYMBOLS_HPP_

#include <cstdint>
#include <string>
#include <vector>

namespace ppd {

enum class Tag : uint8_t {
    None = 0,
    Sharp,          // left-tape copy, printed "a#"
    Flat,           // right-tape copy, printed "a@"
    FormalInverse,  // bold -1 copy, printed "a!"
    Circle,         // degree copy, printed "a%"
    EndMarker,      // "$" (and its tagged copies "$#", "$@")
};

// A symbol is an index into a process-wide intern table.  Equal ids mean equal
// symbols; tagged symbols keep a reference to their untagged base.
class Symbol {
public:
    Symbol() : id_(0) {}

    static Symbol intern(const std::string& name);        // untagged
    static Symbol end_marker();                           // "$"
    Symbol with_tag(Tag t) const;                         // tagged copy of an untagged symbol
    Symbol base() const;                                  // untagged original (self if untagged)
    Tag tag() const;
    const std::string& name() const;                      // display name, tag suffix included

    uint32_t id() const { return id_; }
    bool operator==(const Symbol& o) const { return id_ == o.id_; }
    bool operator!=(const Symbol& o) const { return id_ != o.id_; }
    bool operator<(const Symbol& o) const { return id_ < o.id_; }

private:
    explicit Symbol(uint32_t id) : id_(id) {}
    uint32_t id_;
    friend struct SymbolTable;
};

// Immutable finite symbol set with positional lookup.
class Alphabet {
public:
    Alphabet() = default;
    explicit Alphabet(std::vector<Symbol> symbols);

    size_t size() const { return symbols_.size(); }
    Symbol at(size_t i) const { return symbols_[i]; }
    const std::vector<Symbol>& symbols() const { return symbols_; }
    bool contains(Symbol s) const { return index_of(s) >= 0; }
    int index_of(Symbol s) const;
    bool disjoint(const Alphabet& other) const;
    Alphabet unioned(const Alphabet& other) const;
    bool operator==(const Alphabet& o) const { return symbols_ == o.symbols_; }

private:
    std::vector<Symbol> symbols_;
    std::vector<std::pair<uint32_t, int>> index_;  // sorted by symbol id
};

}  // namespace ppd

#endif
