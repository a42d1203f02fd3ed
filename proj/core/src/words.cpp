#include "ppd/words.hpp"

#include <sstream>
#include <stdexcept>

namespace ppd {

Word Word::parse(const std::string& text) {
    std::istringstream in(text);
    std::vector<Symbol> syms;
    std::string tok;
    while (in >> tok) syms.push_back(Symbol::intern(tok));
    return Word(std::move(syms));
}

Word Word::concat(const Word& other) const {
    std::vector<Symbol> syms = symbols_;
    syms.insert(syms.end(), other.symbols_.begin(), other.symbols_.end());
    return Word(std::move(syms));
}

Word Word::subword(size_t begin, size_t end) const {
    return Word(std::vector<Symbol>(symbols_.begin() + begin,
                                    symbols_.begin() + end));
}

std::string Word::str() const {
    std::string out;
    for (size_t i = 0; i < symbols_.size(); ++i) {
        if (i) out += ' ';
        out += symbols_[i].name();
    }
    return out;
}

Word tag_word(const Word& w, Tag t) {
    std::vector<Symbol> syms;
    syms.reserve(w.length());
    for (Symbol s : w) {
        if (t == Tag::None) {
            syms.push_back(s.base());
        } else {
            if (s.tag() != Tag::None)
                throw std::invalid_argument("tag_word: symbol already tagged: " +
                                            s.name());
            syms.push_back(s.with_tag(t));
        }
    }
    return Word(std::move(syms));
}

Word formal_inverse(const Word& w) {
    std::vector<Symbol> syms;
    syms.reserve(w.length());
    for (size_t i = w.length(); i-- > 0;) {
        Symbol s = w.at(i);
        if (s.tag() == Tag::FormalInverse)
            syms.push_back(s.base());
        else if (s.tag() == Tag::None)
            syms.push_back(s.with_tag(Tag::FormalInverse));
        else
            throw std::invalid_argument("formal_inverse: unsupported tag on " +
                                        s.name());
    }
    return Word(std::move(syms));
}

Word Shuffle::left_source() const {
    Word out;
    for (const auto& [u, v] : blocks) out = out.concat(u);
    return out;
}

Word Shuffle::right_source() const {
    Word out;
    for (const auto& [u, v] : blocks) out = out.concat(v);
    return out;
}

namespace {

// Recursively split u into k blocks and v into k blocks obeying the
// non-emptiness constraints, collecting every distinct interleaving.
void enumerate_blocks(const Word& u, const Word& v, size_t ui, size_t vi,
                      std::vector<std::pair<Word, Word>>& acc,
                      std::set<Shuffle>& out) {
    bool first = acc.empty();
    // Close off with the final block pair (u_k, v_k): u_k takes all remaining
    // u (nonempty unless k = 1), v_k takes all remaining v and may be empty.
    if (first || ui < u.length()) {
        acc.emplace_back(u.subword(ui, u.length()), v.subword(vi, v.length()));
        Shuffle s;
        s.blocks = acc;
        for (const auto& [bu, bv] : acc) {
            for (Symbol x : bu) s.tagged.push_back(x.with_tag(Tag::Sharp));
            for (Symbol x : bv) s.tagged.push_back(x.with_tag(Tag::Flat));
        }
        out.insert(std::move(s));
        acc.pop_back();
    }
    // Interior block pair: v_i nonempty; u_i nonempty unless it is the first.
    for (size_t ue = ui + (first ? 0 : 1); ue <= u.length(); ++ue) {
        for (size_t ve = vi + 1; ve <= v.length(); ++ve) {
            acc.emplace_back(u.subword(ui, ue), v.subword(vi, ve));
            enumerate_blocks(u, v, ue, ve, acc, out);
            acc.pop_back();
        }
    }
}

}  // namespace

std::set<Shuffle> enumerate_shuffles(const Word& u, const Word& v, size_t cap) {
    if (u.length() + v.length() > cap)
        throw std::length_error("enumerate_shuffles: length cap exceeded");
    std::set<Shuffle> out;
    std::vector<std::pair<Word, Word>> acc;
    enumerate_blocks(u, v, 0, 0, acc, out);
    return out;
}

Order ShortlexOrder::compare(const Word& u, const Word& v) const {
    if (u.length() != v.length())
        return u.length() < v.length() ? Order::Less : Order::Greater;
    for (size_t i = 0; i < u.length(); ++i) {
        int a = alphabet_.index_of(u.at(i));
        int b = alphabet_.index_of(v.at(i));
        if (a < 0 || b < 0)
            throw std::invalid_argument("shortlex: symbol not in order alphabet");
        if (a != b) return a < b ? Order::Less : Order::Greater;
    }
    return Order::Equal;
}

Order shortlex_compare(const Word& u, const Word& v, const ShortlexOrder& ord) {
    return ord.compare(u, v);
}

}  // namespace ppd
