#include "ppd/symbols.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <stdexcept>

namespace ppd {

namespace {

const char* tag_suffix(Tag t) {
    switch (t) {
        case Tag::None: return "";
        case Tag::Sharp: return "#";
        case Tag::Flat: return "@";
        case Tag::FormalInverse: return "!";
        case Tag::Circle: return "%";
        case Tag::EndMarker: return "$";
    }
    return "";
}

}  // namespace

struct SymbolTable {
    struct Entry {
        std::string name;
        Tag tag;
        uint32_t base;  // id of untagged original
    };

    std::vector<Entry> entries;
    std::map<std::pair<uint32_t, Tag>, uint32_t> tagged;  // (base, tag) -> id
    std::map<std::string, uint32_t> by_name;
    std::mutex mu;

    static SymbolTable& instance() {
        static SymbolTable t;
        return t;
    }

    SymbolTable() {
        // id 0 is the untagged end marker "$".
        entries.push_back({"$", Tag::EndMarker, 0});
        by_name["$"] = 0;
    }

    uint32_t intern_base(const std::string& name) {
        std::lock_guard<std::mutex> lock(mu);
        auto it = by_name.find(name);
        if (it != by_name.end()) return it->second;
        uint32_t id = static_cast<uint32_t>(entries.size());
        entries.push_back({name, Tag::None, id});
        by_name[name] = id;
        return id;
    }

    uint32_t tag_of(uint32_t base, Tag t) {
        std::lock_guard<std::mutex> lock(mu);
        auto key = std::make_pair(base, t);
        auto it = tagged.find(key);
        if (it != tagged.end()) return it->second;
        uint32_t id = static_cast<uint32_t>(entries.size());
        entries.push_back({entries[base].name + tag_suffix(t), t, base});
        tagged[key] = id;
        return id;
    }
};

Symbol Symbol::intern(const std::string& name) {
    if (name == "$") return end_marker();
    if (name.empty()) throw std::invalid_argument("empty symbol name");
    return Symbol(SymbolTable::instance().intern_base(name));
}

Symbol Symbol::end_marker() { return Symbol(0); }

Symbol Symbol::with_tag(Tag t) const {
    if (t == Tag::None) return base();
    auto& tab = SymbolTable::instance();
    if (id_ == 0) {
        // tagged end markers: "$#", "$@"
        if (t != Tag::Sharp && t != Tag::Flat)
            throw std::invalid_argument("end marker only has sharp/flat copies");
        return Symbol(tab.tag_of(0, t));
    }
    if (tag() != Tag::None)
        throw std::invalid_argument("cannot retag already tagged symbol " + name());
    return Symbol(tab.tag_of(id_, t));
}

Symbol Symbol::base() const {
    return Symbol(SymbolTable::instance().entries[id_].base);
}

Tag Symbol::tag() const {
    if (id_ == 0) return Tag::EndMarker;
    Tag t = SymbolTable::instance().entries[id_].tag;
    return t;
}

const std::string& Symbol::name() const {
    return SymbolTable::instance().entries[id_].name;
}

Alphabet::Alphabet(std::vector<Symbol> symbols) : symbols_(std::move(symbols)) {
    index_.reserve(symbols_.size());
    for (size_t i = 0; i < symbols_.size(); ++i)
        index_.emplace_back(symbols_[i].id(), static_cast<int>(i));
    std::sort(index_.begin(), index_.end());
    for (size_t i = 1; i < index_.size(); ++i)
        if (index_[i].first == index_[i - 1].first)
            throw std::invalid_argument("duplicate symbol in alphabet");
}

int Alphabet::index_of(Symbol s) const {
    auto it = std::lower_bound(index_.begin(), index_.end(),
                               std::make_pair(s.id(), -1));
    if (it != index_.end() && it->first == s.id()) return it->second;
    return -1;
}

bool Alphabet::disjoint(const Alphabet& other) const {
    for (Symbol s : symbols_)
        if (other.contains(s)) return false;
    return true;
}

Alphabet Alphabet::unioned(const Alphabet& other) const {
    std::vector<Symbol> all = symbols_;
    for (Symbol s : other.symbols())
        if (!contains(s)) all.push_back(s);
    return Alphabet(std::move(all));
}

}  // namespace ppd
