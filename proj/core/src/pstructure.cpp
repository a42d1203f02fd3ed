#include "ppd/pstructure.hpp"

#include <stdexcept>

#include "ppd/machine_builder.hpp"

namespace ppd {

CheckReport check_structure(const PStructure& s, int radius, RunLimits limits,
                            size_t max_issues) {
    CheckReport report;
    Ball B = ball(*s.oracle, radius);
    report.ball_size = B.elements.size();

    auto words = enumerate_language(s.language, s.nf_bound(radius), limits);
    report.language_words = words.size();
    std::map<std::string, std::vector<Word>> by_key;
    for (const auto& w : words)
        by_key[s.oracle->key(s.oracle->evaluate(w))].push_back(w);

    std::vector<Word> nf(B.elements.size());
    std::vector<bool> have(B.elements.size(), false);
    for (size_t i = 0; i < B.elements.size(); ++i) {
        std::string k = s.oracle->key(B.elements[i]);
        auto it = by_key.find(k);
        if (it == by_key.end()) {
            report.issues.push_back("no normal form within bound " +
                                    std::to_string(s.nf_bound(radius)) +
                                    " for element " + k + " (witness '" +
                                    B.witness[i].str() + "')");
        } else if (it->second.size() > 1) {
            report.issues.push_back("multiple normal forms for element " + k +
                                    ": '" + it->second[0].str() + "' and '" +
                                    it->second[1].str() + "'");
        } else {
            nf[i] = it->second[0];
            have[i] = true;
        }
        if (report.issues.size() >= max_issues) return report;
    }

    for (size_t li = 0; li < s.alphabet.size(); ++li) {
        Symbol a = s.alphabet.at(li);
        auto mit = s.multipliers.find(a);
        if (mit == s.multipliers.end()) {
            report.issues.push_back("no multiplier for generator " + a.name());
            continue;
        }
        const AtpplRelation& rel = mit->second;
        GroupOracle::Elem ga = s.oracle->generator(a);
        for (size_t i = 0; i < B.elements.size(); ++i) {
            if (!have[i]) continue;
            std::string target = s.oracle->key(s.oracle->multiply(B.elements[i], ga));
            for (size_t j = 0; j < B.elements.size(); ++j) {
                if (!have[j]) continue;
                bool oracle_says = s.oracle->key(B.elements[j]) == target;
                bool machine_says = relation_member(rel, nf[i], nf[j], limits);
                ++report.multiplier_checks;
                if (oracle_says != machine_says) {
                    report.issues.push_back(
                        "multiplier " + a.name() + " disagrees on ('" +
                        nf[i].str() + "', '" + nf[j].str() + "'): oracle " +
                        (oracle_says ? "yes" : "no") + ", machines " +
                        (machine_says ? "yes" : "no"));
                    if (report.issues.size() >= max_issues) return report;
                }
            }
        }
    }
    return report;
}

Word identity_representative(const PStructure& s, size_t search_bound) {
    for (const auto& w : enumerate_language(s.language, search_bound))
        if (s.oracle->is_identity(s.oracle->evaluate(w))) return w;
    throw BoundExhausted("identity representative not found within bound " +
                         std::to_string(search_bound) + " in " + s.name);
}

namespace {

Word representative_of(const PStructure& s, const GroupOracle::Elem& e,
                       size_t search_bound) {
    if (s.normal_form_of) return s.normal_form_of(e);
    std::string k = s.oracle->key(e);
    for (const auto& w : enumerate_language(s.language, search_bound))
        if (s.oracle->key(s.oracle->evaluate(w)) == k) return w;
    throw BoundExhausted("no representative for " + k + " within bound " +
                         std::to_string(search_bound));
}

}  // namespace

PStructure rebase_identity(const PStructure& s) {
    size_t bound = std::max<size_t>(s.nf_bound(1), 4);
    Word w0 = identity_representative(s, bound);
    if (w0.empty()) return s;  // fixed point

    PStructure out;
    out.name = s.name + "/rebased";
    out.alphabet = s.alphabet;
    out.oracle = s.oracle;
    out.nf_factor = s.nf_factor;
    out.nf_offset = s.nf_offset;
    out.language = union_regular(
        minus_regular(s.language, fsa_single_word(s.alphabet, w0)),
        fsa_single_word(s.alphabet, Word()));
    out.language.name = s.language.name + "/rebased";

    for (const auto& [a, rel] : s.multipliers) {
        GroupOracle::Elem ga = s.oracle->generator(a);
        if (s.oracle->is_identity(ga))
            throw std::invalid_argument(
                "rebase_identity: generator evaluating to 1 is unsupported");
        Word ua = representative_of(s, ga, bound);
        Word va = representative_of(s, s.oracle->invert(ga), bound);
        std::vector<std::pair<Word, Word>> removed{{w0, ua}, {va, w0}};
        std::vector<std::pair<Word, Word>> added{{Word(), ua}, {va, Word()}};
        std::vector<TwoTapePda> machines;
        for (const auto& m : rel.machines)
            machines.push_back(union_with_pairs(m, added));
        machines.push_back(union_with_pairs(
            finite_pair_machine(rel.left_alphabet, rel.right_alphabet, removed,
                                true),
            added));
        out.multipliers[a] = make_relation(rel.name + "/rebased",
                                           std::move(machines));
    }
    if (s.normal_form_of) {
        auto inner = s.normal_form_of;
        auto oracle = s.oracle;
        out.normal_form_of = [inner, oracle](const GroupOracle::Elem& e) {
            return oracle->is_identity(e) ? Word() : inner(e);
        };
    }
    return out;
}

bool word_problem(const PStructure& s, const Word& w, WordProblemOptions opts,
                  RunLimits limits) {
    size_t ceiling = opts.ceiling_factor * w.length() + opts.ceiling_offset;
    bool enumerate = opts.use_enumeration || !s.normal_form_of;
    Word cur = s.normal_form_of ? s.normal_form_of(s.oracle->identity())
                                : identity_representative(
                                      s, std::max<size_t>(s.nf_bound(1), 4));
    const Word rep0 = cur;
    std::vector<Word> candidates;
    if (enumerate) candidates = enumerate_language(s.language, ceiling, limits);
    GroupOracle::Elem cur_elem = s.oracle->identity();

    for (Symbol a : w) {
        auto mit = s.multipliers.find(a);
        if (mit == s.multipliers.end())
            throw std::invalid_argument("word_problem: no multiplier for " +
                                        a.name());
        const AtpplRelation& rel = mit->second;
        if (enumerate) {
            bool found = false;
            for (const auto& cand : candidates)
                if (relation_member(rel, cur, cand, limits)) {
                    cur = cand;
                    found = true;
                    break;
                }
            if (!found)
                throw BoundExhausted(
                    "word_problem: no successor within ceiling " +
                    std::to_string(ceiling) + " for letter " + a.name());
        } else {
            cur_elem = s.oracle->multiply(cur_elem, s.oracle->generator(a));
            Word next = s.normal_form_of(cur_elem);
            if (next.length() > ceiling)
                throw BoundExhausted("word_problem: successor exceeds ceiling " +
                                     std::to_string(ceiling));
            if (opts.verify_steps && !relation_member(rel, cur, next, limits))
                throw std::logic_error(
                    "word_problem: multiplier " + a.name() +
                    " rejects the successor ('" + cur.str() + "' -> '" +
                    next.str() + "') in " + s.name);
            cur = next;
        }
    }
    return cur == rep0;
}

}  // namespace ppd
