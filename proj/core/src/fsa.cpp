#include "ppd/fsa.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

namespace ppd {

bool run_fsa(const Fsa& m, const Word& w) {
    int state = m.start;
    for (Symbol s : w) {
        int li = m.alphabet.index_of(s);
        if (li < 0)
            throw std::invalid_argument("run_fsa: foreign symbol " + s.name());
        state = m.next(state, li);
    }
    return m.accepting[state];
}

namespace {

Fsa product(const Fsa& a, const Fsa& b, bool accept_or) {
    if (!(a.alphabet == b.alphabet))
        throw std::invalid_argument("combine_fsa: alphabet mismatch");
    Fsa out;
    out.alphabet = a.alphabet;
    out.num_states = a.num_states * b.num_states;
    out.transitions.resize(static_cast<size_t>(out.num_states) *
                           out.alphabet.size());
    out.accepting.resize(out.num_states);
    auto id = [&](int sa, int sb) { return sa * b.num_states + sb; };
    for (int sa = 0; sa < a.num_states; ++sa)
        for (int sb = 0; sb < b.num_states; ++sb) {
            int s = id(sa, sb);
            out.accepting[s] = accept_or ? (a.accepting[sa] || b.accepting[sb])
                                         : (a.accepting[sa] && b.accepting[sb]);
            for (size_t li = 0; li < out.alphabet.size(); ++li)
                out.transitions[s * out.alphabet.size() + li] =
                    id(a.next(sa, static_cast<int>(li)),
                       b.next(sb, static_cast<int>(li)));
        }
    out.start = id(a.start, b.start);
    return out;
}

// Subset construction over the implicit epsilon-NFA formed by gluing accept
// states to starts (used only inside concat/star; DFAs in, DFA out).
struct Nfa {
    Alphabet alphabet;
    int num_states = 0;
    std::map<std::pair<int, int>, std::set<int>> trans;  // (state, letter)
    std::set<int> starts;
    std::set<int> accepting;
};

Fsa determinize(const Nfa& n) {
    std::map<std::set<int>, int> ids;
    std::vector<std::set<int>> order;
    auto get = [&](const std::set<int>& q) {
        auto it = ids.find(q);
        if (it != ids.end()) return it->second;
        int id = static_cast<int>(order.size());
        ids[q] = id;
        order.push_back(q);
        return id;
    };
    Fsa out;
    out.alphabet = n.alphabet;
    get(n.starts);
    std::vector<int> trans;
    for (size_t qi = 0; qi < order.size(); ++qi) {
        std::set<int> q = order[qi];
        for (size_t li = 0; li < n.alphabet.size(); ++li) {
            std::set<int> next;
            for (int s : q) {
                auto it = n.trans.find({s, static_cast<int>(li)});
                if (it != n.trans.end())
                    next.insert(it->second.begin(), it->second.end());
            }
            trans.push_back(get(next));
        }
    }
    out.num_states = static_cast<int>(order.size());
    out.transitions = std::move(trans);
    out.start = 0;
    out.accepting.resize(out.num_states, false);
    for (int s = 0; s < out.num_states; ++s)
        for (int a : n.accepting)
            if (order[s].count(a)) out.accepting[s] = true;
    return out;
}

Nfa to_nfa(const Fsa& m, int offset) {
    Nfa n;
    n.alphabet = m.alphabet;
    n.num_states = m.num_states;
    for (int s = 0; s < m.num_states; ++s) {
        if (m.accepting[s]) n.accepting.insert(s + offset);
        for (size_t li = 0; li < m.alphabet.size(); ++li)
            n.trans[{s + offset, static_cast<int>(li)}].insert(
                m.next(s, static_cast<int>(li)) + offset);
    }
    n.starts.insert(m.start + offset);
    return n;
}

Fsa concat(const Fsa& a, const Fsa& b) {
    if (!(a.alphabet == b.alphabet))
        throw std::invalid_argument("combine_fsa: alphabet mismatch");
    Nfa n = to_nfa(a, 0);
    Nfa nb = to_nfa(b, a.num_states);
    n.num_states += nb.num_states;
    for (auto& [k, v] : nb.trans) n.trans[k].insert(v.begin(), v.end());
    // epsilon from accepts of a to start of b, eliminated by edge copying
    int bstart = b.start + a.num_states;
    for (int s = 0; s < a.num_states; ++s)
        for (size_t li = 0; li < a.alphabet.size(); ++li) {
            int t = a.next(s, static_cast<int>(li));
            if (a.accepting[t]) n.trans[{s, static_cast<int>(li)}].insert(bstart);
        }
    if (a.accepting[a.start]) n.starts.insert(bstart);
    n.accepting.clear();
    for (int s = 0; s < b.num_states; ++s)
        if (b.accepting[s]) n.accepting.insert(s + a.num_states);
    return determinize(n);
}

Fsa star(const Fsa& a) {
    Nfa n = to_nfa(a, 0);
    // loop edges: entering an accept state also re-enters the start
    for (int s = 0; s < a.num_states; ++s)
        for (size_t li = 0; li < a.alphabet.size(); ++li) {
            int t = a.next(s, static_cast<int>(li));
            if (a.accepting[t]) n.trans[{s, static_cast<int>(li)}].insert(a.start);
        }
    n.accepting.insert(a.start);  // epsilon always in L*
    return determinize(n);
}

}  // namespace

Fsa combine_fsa(FsaCombine kind, const Fsa& m1, const Fsa* m2) {
    switch (kind) {
        case FsaCombine::Complement: {
            Fsa out = m1;
            for (size_t i = 0; i < out.accepting.size(); ++i)
                out.accepting[i] = !out.accepting[i];
            return out;
        }
        case FsaCombine::Union:
            if (!m2) throw std::invalid_argument("union needs two machines");
            return product(m1, *m2, true);
        case FsaCombine::Intersection:
            if (!m2) throw std::invalid_argument("intersection needs two machines");
            return product(m1, *m2, false);
        case FsaCombine::Concat:
            if (!m2) throw std::invalid_argument("concat needs two machines");
            return concat(m1, *m2);
        case FsaCombine::Star:
            return star(m1);
    }
    throw std::logic_error("unreachable");
}

Fsa fsa_empty(const Alphabet& a) {
    Fsa m;
    m.alphabet = a;
    m.num_states = 1;
    m.transitions.assign(a.size(), 0);
    m.accepting = {false};
    return m;
}

Fsa fsa_all_words(const Alphabet& a) {
    Fsa m = fsa_empty(a);
    m.accepting = {true};
    return m;
}

Fsa fsa_single_word(const Alphabet& a, const Word& w) {
    Fsa m;
    m.alphabet = a;
    m.num_states = static_cast<int>(w.length()) + 2;  // chain + sink
    int sink = m.num_states - 1;
    m.transitions.assign(static_cast<size_t>(m.num_states) * a.size(), sink);
    m.accepting.assign(m.num_states, false);
    m.accepting[w.length()] = true;
    for (size_t i = 0; i < w.length(); ++i) {
        int li = a.index_of(w.at(i));
        if (li < 0)
            throw std::invalid_argument("fsa_single_word: foreign symbol");
        m.transitions[i * a.size() + li] = static_cast<int>(i) + 1;
    }
    return m;
}

Fsa fsa_letter_star(const Alphabet& a, Symbol letter) {
    Fsa m;
    m.alphabet = a;
    m.num_states = 2;  // 0 = live, 1 = sink
    m.transitions.assign(2 * a.size(), 1);
    int li = a.index_of(letter);
    if (li < 0) throw std::invalid_argument("fsa_letter_star: foreign symbol");
    m.transitions[li] = 0;
    m.accepting = {true, false};
    return m;
}

namespace {

void enumerate_fsa_dfs(const Fsa& m, const std::vector<bool>& coacc, int state,
                       Word& prefix, size_t max_len, std::vector<Word>& out) {
    if (m.accepting[state]) out.push_back(prefix);
    if (prefix.length() == max_len) return;
    for (size_t li = 0; li < m.alphabet.size(); ++li) {
        int next = m.next(state, static_cast<int>(li));
        if (!coacc[next]) continue;
        prefix.push_back(m.alphabet.at(li));
        enumerate_fsa_dfs(m, coacc, next, prefix, max_len, out);
        prefix.pop_back();
    }
}

}  // namespace

std::vector<Word> enumerate_fsa(const Fsa& m, size_t max_len) {
    std::vector<bool> coacc(m.accepting.begin(), m.accepting.end());
    bool changed = true;
    while (changed) {
        changed = false;
        for (int s = 0; s < m.num_states; ++s) {
            if (coacc[s]) continue;
            for (size_t li = 0; li < m.alphabet.size(); ++li)
                if (coacc[m.next(s, static_cast<int>(li))]) {
                    coacc[s] = changed = true;
                    break;
                }
        }
    }
    std::vector<Word> out;
    Word prefix;
    if (coacc[m.start]) enumerate_fsa_dfs(m, coacc, m.start, prefix, max_len, out);
    ShortlexOrder ord(m.alphabet);
    std::sort(out.begin(), out.end(), [&](const Word& a, const Word& b) {
        return ord.compare(a, b) == Order::Less;
    });
    return out;
}

}  // namespace ppd
