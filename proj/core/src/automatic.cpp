#include "ppd/automatic.hpp"

#include <array>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>

namespace ppd {

bool run_two_tape_fsa(const TwoTapeFsa& m, const Word& u, const Word& v) {
    size_t iu = 0, iv = 0;
    bool end_u = false, end_v = false;
    int state = m.fsa.start;
    while (!(end_u && end_v)) {
        Symbol s;
        if (m.sides[state] == Side::Left) {
            if (end_u) return false;  // demands a letter from an exhausted tape
            if (iu < u.length()) {
                s = u.at(iu++).with_tag(Tag::Sharp);
            } else {
                s = Symbol::end_marker().with_tag(Tag::Sharp);
                end_u = true;
            }
        } else {
            if (end_v) return false;
            if (iv < v.length()) {
                s = v.at(iv++).with_tag(Tag::Flat);
            } else {
                s = Symbol::end_marker().with_tag(Tag::Flat);
                end_v = true;
            }
        }
        int li = m.fsa.alphabet.index_of(s);
        if (li < 0)
            throw std::invalid_argument("run_two_tape_fsa: foreign symbol " +
                                        s.name());
        state = m.fsa.next(state, li);
    }
    return m.fsa.accepting[state];
}

std::vector<std::string> verify_automatic(const AutomaticStructure& s,
                                          int radius, size_t max_issues) {
    std::vector<std::string> issues;
    Ball B = ball(*s.oracle, radius);
    auto words = enumerate_fsa(s.acceptor, static_cast<size_t>(radius));
    std::map<std::string, std::vector<Word>> by_key;
    for (const auto& w : words)
        by_key[s.oracle->key(s.oracle->evaluate(w))].push_back(w);

    std::vector<Word> nf;
    for (size_t i = 0; i < B.elements.size(); ++i) {
        std::string k = s.oracle->key(B.elements[i]);
        auto it = by_key.find(k);
        if (it == by_key.end()) {
            issues.push_back("acceptor has no word for " + k + " (witness '" +
                             B.witness[i].str() + "')");
        } else if (it->second.size() > 1) {
            issues.push_back("acceptor has several words for " + k + ": '" +
                             it->second[0].str() + "', '" +
                             it->second[1].str() + "'");
        } else {
            nf.push_back(it->second[0]);
        }
        if (issues.size() >= max_issues) return issues;
    }

    Ball fellow = ball(*s.oracle, s.fellow_traveler);
    for (size_t li = 0; li < s.alphabet.size(); ++li) {
        Symbol a = s.alphabet.at(li);
        auto mit = s.multipliers.find(a);
        if (mit == s.multipliers.end()) {
            issues.push_back("no multiplier for " + a.name());
            continue;
        }
        GroupOracle::Elem ga = s.oracle->generator(a);
        for (const auto& u : nf)
            for (const auto& v : nf) {
                bool oracle_says = s.oracle->equal(
                    s.oracle->multiply(s.oracle->evaluate(u), ga),
                    s.oracle->evaluate(v));
                bool machine_says = run_two_tape_fsa(mit->second, u, v);
                if (machine_says != oracle_says) {
                    issues.push_back("multiplier " + a.name() +
                                     " disagrees on ('" + u.str() + "', '" +
                                     v.str() + "'): oracle " +
                                     (oracle_says ? "yes" : "no"));
                    if (issues.size() >= max_issues) return issues;
                }
                if (!machine_says) continue;
                size_t span = std::max(u.length(), v.length());
                for (size_t j = 0; j <= span; ++j) {
                    auto pu = s.oracle->evaluate(u.subword(0, std::min(j, u.length())));
                    auto pv = s.oracle->evaluate(v.subword(0, std::min(j, v.length())));
                    auto diff = s.oracle->multiply(s.oracle->invert(pu), pv);
                    if (!fellow.index.count(s.oracle->key(diff))) {
                        issues.push_back(
                            "pair ('" + u.str() + "', '" + v.str() +
                            "') leaves the C-ball at prefix " +
                            std::to_string(j));
                        if (issues.size() >= max_issues) return issues;
                        break;
                    }
                }
            }
    }
    return issues;
}

int fellow_traveler_constant(const AutomaticStructure& s, int radius) {
    auto words = enumerate_fsa(s.acceptor, static_cast<size_t>(radius));
    // word norm by breadth-first search out to the worst conceivable distance
    Ball big = ball(*s.oracle, 2 * radius + 2);
    auto norm = [&](const GroupOracle::Elem& e) {
        auto it = big.index.find(s.oracle->key(e));
        if (it == big.index.end())
            throw std::logic_error("fellow_traveler_constant: norm out of range");
        return static_cast<int>(big.witness[it->second].length());
    };
    int best = 0;
    for (size_t li = 0; li < s.alphabet.size(); ++li) {
        GroupOracle::Elem ga = s.oracle->generator(s.alphabet.at(li));
        for (const auto& u : words)
            for (const auto& v : words) {
                if (!s.oracle->equal(
                        s.oracle->multiply(s.oracle->evaluate(u), ga),
                        s.oracle->evaluate(v)))
                    continue;
                size_t span = std::max(u.length(), v.length());
                for (size_t j = 0; j <= span; ++j) {
                    auto pu = s.oracle->evaluate(u.subword(0, std::min(j, u.length())));
                    auto pv = s.oracle->evaluate(v.subword(0, std::min(j, v.length())));
                    best = std::max(
                        best, norm(s.oracle->multiply(s.oracle->invert(pu), pv)));
                }
            }
    }
    return best;
}

namespace {

// Comparator state for the Z^m shortlex multipliers: the running coordinate
// difference of the two prefixes, which tape reads next, and which end
// markers have been seen.  Differences beyond 2 can never come back.
struct DiffState {
    std::array<int, 3> d{0, 0, 0};
    bool end_u = false, end_v = false;
    Side side = Side::Left;

    std::string key() const {
        std::ostringstream out;
        out << d[0] << "," << d[1] << "," << d[2] << "," << end_u << end_v
            << (side == Side::Left ? 'L' : 'R');
        return out.str();
    }
};

TwoTapeFsa zm_multiplier(int m, const Alphabet& gens, int coord, int delta) {
    Alphabet tagged = two_tape_alphabet(gens, gens);
    auto coord_of = [&](Symbol base) {
        int gi = gens.index_of(base);
        return std::pair<int, int>{gi / 2, gi % 2 ? -1 : 1};
    };
    auto step = [&](const DiffState& st, Symbol s) -> std::optional<DiffState> {
        DiffState next = st;
        bool left = s.tag() == Tag::Sharp;
        if (left ? st.end_u || st.side != Side::Left
                 : st.end_v || st.side != Side::Right)
            return std::nullopt;
        if (s.base() == Symbol::end_marker()) {
            (left ? next.end_u : next.end_v) = true;
        } else {
            auto [k, sign] = coord_of(s.base());
            next.d[k] += left ? -sign : sign;
            if (next.d[k] < -2 || next.d[k] > 2) return std::nullopt;
        }
        if (!next.end_u && !next.end_v)
            next.side = left ? Side::Right : Side::Left;
        else
            next.side = next.end_u ? Side::Right : Side::Left;
        return next;
    };
    auto accepts = [&](const DiffState& st) {
        if (!st.end_u || !st.end_v) return false;
        for (int k = 0; k < m; ++k)
            if (st.d[k] != (k == coord ? delta : 0)) return false;
        return true;
    };

    // breadth-first state discovery; state 0 is the start, the final slot is
    // the dead sink
    std::vector<DiffState> states{DiffState{}};
    std::map<std::string, int> index{{states[0].key(), 0}};
    std::vector<int> trans;
    for (size_t at = 0; at < states.size(); ++at) {
        DiffState cur = states[at];  // copy: states may reallocate
        for (size_t li = 0; li < tagged.size(); ++li) {
            auto next = step(cur, tagged.at(li));
            if (!next) {
                trans.push_back(-1);
                continue;
            }
            auto [it, fresh] = index.emplace(next->key(),
                                             static_cast<int>(states.size()));
            if (fresh) states.push_back(*next);
            trans.push_back(it->second);
        }
    }
    TwoTapeFsa out;
    out.left = gens;
    out.right = gens;
    out.fsa.alphabet = tagged;
    out.fsa.num_states = static_cast<int>(states.size()) + 1;
    int dead = static_cast<int>(states.size());
    for (int t : trans) out.fsa.transitions.push_back(t < 0 ? dead : t);
    out.fsa.transitions.insert(out.fsa.transitions.end(), tagged.size(), dead);
    out.fsa.start = 0;
    for (const auto& st : states) out.fsa.accepting.push_back(accepts(st));
    out.fsa.accepting.push_back(false);
    for (const auto& st : states) out.sides.push_back(st.side);
    out.sides.push_back(Side::Left);  // dead sink, side immaterial
    return out;
}

}  // namespace

AutomaticStructure shortlex_zm_structure(int m) {
    if (m < 1 || m > 3)
        throw std::invalid_argument("shortlex_zm_structure: m must be 1..3");
    static const char* names[] = {"x", "X", "y", "Y", "z", "Z"};
    std::vector<Symbol> syms;
    for (int i = 0; i < 2 * m; ++i) syms.push_back(Symbol::intern(names[i]));
    Alphabet gens(syms);

    // block acceptor: sign runs in coordinate order
    Fsa acc;
    acc.alphabet = gens;
    acc.num_states = 2 * m + 2;  // 0 start, 1+2i pos-run i, 2+2i neg-run i, dead
    int dead = 2 * m + 1;
    acc.transitions.assign(static_cast<size_t>(acc.num_states) * gens.size(),
                           dead);
    auto edge = [&](int s, int li, int t) {
        acc.transitions[static_cast<size_t>(s) * gens.size() + li] = t;
    };
    for (int j = 0; j < m; ++j) {
        edge(0, 2 * j, 1 + 2 * j);
        edge(0, 2 * j + 1, 2 + 2 * j);
    }
    for (int i = 0; i < m; ++i) {
        edge(1 + 2 * i, 2 * i, 1 + 2 * i);
        edge(2 + 2 * i, 2 * i + 1, 2 + 2 * i);
        for (int j = i + 1; j < m; ++j) {
            edge(1 + 2 * i, 2 * j, 1 + 2 * j);
            edge(1 + 2 * i, 2 * j + 1, 2 + 2 * j);
            edge(2 + 2 * i, 2 * j, 1 + 2 * j);
            edge(2 + 2 * i, 2 * j + 1, 2 + 2 * j);
        }
    }
    acc.accepting.assign(acc.num_states, true);
    acc.accepting[dead] = false;

    AutomaticStructure s;
    s.name = "z" + std::to_string(m) + "-shortlex";
    s.alphabet = gens;
    s.acceptor = acc;
    std::map<Symbol, std::vector<std::int64_t>> gmap;
    for (int i = 0; i < m; ++i) {
        std::vector<std::int64_t> e(m, 0);
        e[i] = 1;
        gmap[gens.at(2 * i)] = e;
        e[i] = -1;
        gmap[gens.at(2 * i + 1)] = e;
    }
    s.oracle = tuple_oracle("Z^" + std::to_string(m), gens, gmap);
    for (int i = 0; i < m; ++i) {
        s.multipliers[gens.at(2 * i)] = zm_multiplier(m, gens, i, 1);
        s.multipliers[gens.at(2 * i + 1)] = zm_multiplier(m, gens, i, -1);
    }
    s.fellow_traveler = m == 1 ? 1 : 2;  // frozen breadth-first values
    return s;
}

}  // namespace ppd
