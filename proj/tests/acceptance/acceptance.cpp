/* acceptance.cpp -- the ten acceptance criteria, one pass/fail line each. */

#include <chrono>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <vector>

#include "ppd/constructions.hpp"
#include "ppd/machine_builder.hpp"
#include "ppd/registry.hpp"
#include "ppd/unitriangular.hpp"

using namespace ppd;

namespace {

Symbol sym(const std::string& s) { return Symbol::intern(s); }
Word parse(const std::string& s) { return Word::parse(s); }

void for_all_words(const Alphabet& a, size_t max_len,
                   const std::function<void(const Word&)>& fn) {
    Word w;
    std::function<void()> rec = [&]() {
        fn(w);
        if (w.length() == max_len) return;
        for (size_t j = 0; j < a.size(); ++j) {
            w.push_back(a.at(j));
            rec();
            w.pop_back();
        }
    };
    rec();
}

Word random_word(const Alphabet& a, size_t max_len, std::mt19937& rng) {
    std::uniform_int_distribution<size_t> len(1, max_len);
    std::uniform_int_distribution<size_t> pick(0, a.size() - 1);
    Word w;
    size_t n = len(rng);
    for (size_t i = 0; i < n; ++i) w.push_back(a.at(pick(rng)));
    return w;
}

// The structures named by criterion 4 (and reused by 5 and 7).
std::vector<std::string> criterion4_ids() {
    return {"z",   "z2",  "f2",          "z-x-z", "h3",
            "u4",  "sol", "nil",         "lamplighter", "klein"};
}

int failures = 0;

void report(int index, const std::string& what, bool ok,
            const std::string& detail) {
    std::cout << "criterion " << index << " (" << what << "): "
              << (ok ? "PASS" : "FAIL");
    if (!detail.empty()) std::cout << " -- " << detail;
    std::cout << "\n" << std::flush;
    if (!ok) ++failures;
}

// ---------------------------------------------------------------- criterion 1

bool is_aibici(const Word& w) {
    size_t n = w.length();
    if (n == 0 || n % 3 != 0) return false;
    size_t i = n / 3;
    for (size_t k = 0; k < n; ++k) {
        const std::string& want = k < i ? "a" : (k < 2 * i ? "b" : "c");
        if (w.at(k).name() != want) return false;
    }
    return true;
}

void criterion1() {
    auto t0 = std::chrono::steady_clock::now();
    PplLanguage L = aibici_language();
    long mismatches = 0, words = 0;
    for_all_words(L.alphabet, 12, [&](const Word& w) {
        ++words;
        if (member(L, w) != is_aibici(w)) ++mismatches;
    });
    double secs = std::chrono::duration<double>(
                      std::chrono::steady_clock::now() - t0)
                      .count();
    std::ostringstream d;
    d << words << " words, " << mismatches << " mismatches, " << secs << " s";
    report(1, "a^i b^i c^i witness vs string predicate, all 3^0..3^12 words",
           mismatches == 0 && secs < 5.0, d.str());
}

// ---------------------------------------------------------------- criterion 2

// Frozen per-machine linear-time constants K (steps <= K*(l(w)+1)), measured
// once over the corpus below and pinned; re-measure with PPD_MEASURE=1.
const std::map<std::string, long>& frozen_k() {
    static const std::map<std::string, long> table{
        {"abc/0", 2},          {"abc/1", 2},
        {"z/0", 1},            {"z2/0", 1},
        {"z-x-z/0", 2},        {"z-x-z/1", 2},       {"z-x-z/2", 1},
        {"f2/0", 2},           {"f2/1", 2},
        {"h3/0", 1},           {"h4/0", 1},
        {"u3/0", 1},           {"u4/0", 1},          {"u5/0", 1},
        {"sol/0", 2},          {"sol/1", 2},         {"sol/2", 1},
        {"nil/0", 2},          {"nil/1", 2},         {"nil/2", 1},
        {"lamplighter/0", 1},  {"lamplighter/1", 1}, {"lamplighter/2", 1},
        {"klein/0", 1},
    };
    return table;
}

void criterion2() {
    bool measure = std::getenv("PPD_MEASURE") != nullptr;
    bool ok = true;
    std::ostringstream bad;
    long machines = 0;
    std::mt19937 rng(4242);
    auto check_machine = [&](const std::string& key, const Dpda& m,
                             const std::vector<Word>& corpus) {
        ++machines;
        long max_ratio = 0;
        for (const Word& w : corpus) {
            long steps = run(m, w).steps;
            long bound = static_cast<long>(w.length()) + 1;
            long ratio = (steps + bound - 1) / bound;  // ceil(steps / (l+1))
            if (ratio > max_ratio) max_ratio = ratio;
        }
        if (measure)
            std::cout << "measure " << key << " " << max_ratio << "\n";
        auto it = frozen_k().find(key);
        if (it == frozen_k().end() || max_ratio > it->second) {
            ok = false;
            bad << " " << key << "=" << max_ratio;
        }
    };
    auto corpus_for = [&](const PplLanguage& L) {
        std::vector<Word> corpus;
        for_all_words(L.alphabet, 3,
                      [&](const Word& w) { corpus.push_back(w); });
        for (const Word& w : enumerate_language(L, 8)) corpus.push_back(w);
        for (int i = 0; i < 200; ++i)
            corpus.push_back(random_word(L.alphabet, 12, rng));
        return corpus;
    };
    {
        PplLanguage L = aibici_language();
        auto corpus = corpus_for(L);
        for (size_t i = 0; i < L.machines.size(); ++i)
            check_machine("abc/" + std::to_string(i), L.machines[i], corpus);
    }
    for (const std::string& id : shipped_structure_ids()) {
        PStructure s = shipped_structure(id);
        auto corpus = corpus_for(s.language);
        for (size_t i = 0; i < s.language.machines.size(); ++i)
            check_machine(id + "/" + std::to_string(i), s.language.machines[i],
                          corpus);
    }
    std::ostringstream d;
    d << machines << " machines";
    if (!ok) d << ", over budget:" << bad.str();
    report(2, "linear-time bound steps <= K*(l+1) with frozen per-machine K",
           ok, d.str());
}

// ---------------------------------------------------------------- criterion 3

void criterion3() {
    long machines = 0, pairs = 0, bad = 0;
    std::string first_bad;
    for (const std::string& id : shipped_structure_ids()) {
        PStructure s = shipped_structure(id);
        std::set<std::string> seen;  // audit each distinct machine name once
        for (const auto& [letter, rel] : s.multipliers) {
            for (const TwoTapePda& m : rel.machines) {
                if (!seen.insert(letter.name() + "/" + m.machine.name).second)
                    continue;
                ++machines;
                auto two_of = [](const Alphabet& a) {
                    std::vector<Symbol> v{a.at(0)};
                    if (a.size() > 1) v.push_back(a.at(1));
                    return Alphabet(v);
                };
                Alphabet l2 = two_of(m.left_alphabet);
                Alphabet r2 = two_of(m.right_alphabet);
                for (size_t lu = 0; lu <= 8; ++lu)
                    for_all_words(l2, lu, [&](const Word& u) {
                        if (u.length() != lu) return;
                        for_all_words(r2, 8 - lu, [&](const Word& v) {
                            ++pairs;
                            ShuffleAudit a = verify_unique_shuffle(m, u, v);
                            if (!a.consistent || a.accepted_count > 1) {
                                ++bad;
                                if (first_bad.empty())
                                    first_bad = id + "/" + m.machine.name +
                                                " ('" + u.str() + "','" +
                                                v.str() + "')";
                            }
                        });
                    });
            }
        }
    }
    std::ostringstream d;
    d << machines << " machines, " << pairs << " pairs, " << bad
      << " inconsistent";
    if (!first_bad.empty()) d << ", first: " << first_bad;
    report(3, "unique accepted shuffle matching the deterministic driver",
           bad == 0, d.str());
}

// ---------------------------------------------------------------- criterion 4

bool structure_passes(const std::string& id, std::ostringstream& detail) {
    PStructure s = shipped_structure(id);
    CheckReport r = check_structure(s, shipped_structure_radius(id));
    detail << " " << id << ":" << (r.ok() ? "ok" : "FAIL") << "(ball "
           << r.ball_size << ", " << r.multiplier_checks << " checks)";
    if (!r.ok()) detail << " first issue: " << r.issues[0];
    return r.ok();
}

void criterion4() {
    bool ok = true;
    std::ostringstream d;
    for (const std::string& id : criterion4_ids())
        ok = structure_passes(id, d) && ok;
    report(4, "check_structure zero counterexamples at the shipped radii", ok,
           d.str());
}

// ---------------------------------------------------------------- criterion 5

bool word_problem_sweep(const PStructure& s, std::ostringstream& detail,
                        const std::string& label) {
    // Successor normal forms can grow exponentially in the word length (sol's
    // conjugation matrix has spectral radius > 1), so the sweep lifts the
    // default safety ceiling instead of capping the walk.
    WordProblemOptions opts;
    opts.ceiling_factor = 0;
    opts.ceiling_offset = 1u << 20;
    long words = 0, mismatches = 0;
    for_all_words(s.alphabet, 6, [&](const Word& w) {
        ++words;
        if (word_problem(s, w, opts) != s.oracle->is_identity_word(w))
            ++mismatches;
    });
    std::mt19937 rng(97);
    for (int i = 0; i < 500; ++i) {
        Word w = random_word(s.alphabet, 12, rng);
        ++words;
        if (word_problem(s, w, opts) != s.oracle->is_identity_word(w))
            ++mismatches;
    }
    detail << " " << label << ":" << words << "w/" << mismatches << "x";
    return mismatches == 0;
}

void criterion5() {
    bool ok = true;
    std::ostringstream d;
    for (const std::string& id : criterion4_ids()) {
        PStructure s = shipped_structure(id);
        ok = word_problem_sweep(s, d, id) && ok;
    }
    report(5, "word_problem vs oracle, exhaustive <=6 plus 500 random <=12",
           ok, d.str());
}

// ---------------------------------------------------------------- criterion 6

PplLanguage xnyn_language(const std::string& x, const std::string& y) {
    Symbol a = sym(x), b = sym(y);
    Alphabet al({a, b});
    Fsa as = fsa_letter_star(al, a), bs = fsa_letter_star(al, b);
    Fsa shape = combine_fsa(FsaCombine::Concat, as, &bs);
    Fsa eps = fsa_single_word(al, Word());
    Fsa noeps = combine_fsa(FsaCombine::Complement, eps);
    Fsa both = combine_fsa(FsaCombine::Intersection, shape, &noeps);
    Dpda m = product_with_fsa(make_counter(1, {{a, 1}, {b, -1}}), both, false);
    m.name = x + "n" + y + "n";
    return make_language(m.name, {m});
}

PplLanguage run_language(const std::string& x, const std::string& X) {
    Symbol a = sym(x), b = sym(X);
    Alphabet al({a, b});
    Fsa as = fsa_letter_star(al, a), bs = fsa_letter_star(al, b);
    Fsa runs = combine_fsa(FsaCombine::Union, as, &bs);
    return make_language(x + "-runs", {fsa_to_dpda(runs, "runs")});
}

void criterion6() {
    long mismatches = 0, words = 0;
    PplLanguage L = xnyn_language("a", "b");
    Fsa r = fsa_letter_star(L.alphabet, sym("a"));
    PplLanguage U = union_regular(L, r), D = minus_regular(L, r);
    for_all_words(L.alphabet, 8, [&](const Word& w) {
        ++words;
        if (member(U, w) != (member(L, w) || run_fsa(r, w))) ++mismatches;
        if (member(D, w) != (member(L, w) && !run_fsa(r, w))) ++mismatches;
    });

    PplLanguage M = xnyn_language("c", "d");
    Alphabet joint = L.alphabet.unioned(M.alphabet);
    std::set<Word> in_L, in_M;
    for_all_words(L.alphabet, 8, [&](const Word& w) {
        if (member(L, w)) in_L.insert(w);
    });
    for_all_words(M.alphabet, 8, [&](const Word& w) {
        if (member(M, w)) in_M.insert(w);
    });
    std::set<Word> cat;
    for (const Word& u : in_L)
        for (const Word& v : in_M)
            if (u.length() + v.length() <= 8) cat.insert(u.concat(v));
    std::set<Word> star{Word()};
    star.insert(cat.begin(), cat.end());
    for (const Word& u : cat)
        for (const Word& v : cat)
            if (u.length() + v.length() <= 8) star.insert(u.concat(v));
    PplLanguage C = concat_disjoint(L, M, false);
    PplLanguage S = concat_disjoint(L, M, true);
    for_all_words(joint, 8, [&](const Word& w) {
        ++words;
        if (member(C, w) != (cat.count(w) > 0)) ++mismatches;
        if (member(S, w) != (star.count(w) > 0)) ++mismatches;
    });

    PplLanguage Mr = run_language("a", "A"), Lr = run_language("b", "B");
    PplLanguage W = alternating_concat(Mr, Lr);
    Alphabet jr = Mr.alphabet.unioned(Lr.alphabet);
    auto good = [&](const Word& w) {
        size_t i = 0;
        while (i < w.length()) {
            bool in_m = Mr.alphabet.contains(w.at(i));
            const Alphabet& al = in_m ? Mr.alphabet : Lr.alphabet;
            size_t j = i;
            while (j < w.length() && al.contains(w.at(j))) ++j;
            Word block = w.subword(i, j);
            if (!(in_m ? member(Mr, block) : member(Lr, block))) return false;
            i = j;
        }
        return true;
    };
    for_all_words(jr, 8, [&](const Word& w) {
        ++words;
        if (member(W, w) != good(w)) ++mismatches;
    });

    std::ostringstream d;
    d << words << " words, " << mismatches << " mismatches";
    report(6, "Prop 3.1 combinators vs brute-force set semantics, words <=8",
           mismatches == 0, d.str());
}

// ---------------------------------------------------------------- criterion 7

// The Z structure with the identity deliberately represented by "x X"; the
// inverse surgery of rebase_identity, applied by hand.
PStructure shifted_z_fixture() {
    PStructure s = shipped_structure("z");
    Word w0 = parse("x X");
    PStructure shifted = s;
    shifted.name = "z-shifted";
    shifted.language = union_regular(
        minus_regular(s.language, fsa_single_word(s.alphabet, Word())),
        fsa_single_word(s.alphabet, w0));
    auto inner = s.normal_form_of;
    shifted.normal_form_of = [inner, w0](const GroupOracle::Elem& e) {
        Word w = inner(e);
        return w.empty() ? w0 : w;
    };
    for (Symbol a : s.alphabet.symbols()) {
        const AtpplRelation& rel = s.multipliers.at(a);
        Word ua = s.normal_form_of(s.oracle->generator(a));
        Word va = s.normal_form_of(s.oracle->invert(s.oracle->generator(a)));
        std::vector<std::pair<Word, Word>> removed{{Word(), ua}, {va, Word()}};
        std::vector<std::pair<Word, Word>> added{{w0, ua}, {va, w0}};
        std::vector<TwoTapePda> machines;
        for (const auto& m : rel.machines)
            machines.push_back(union_with_pairs(m, added));
        machines.push_back(union_with_pairs(
            finite_pair_machine(rel.left_alphabet, rel.right_alphabet, removed,
                                true),
            added));
        shifted.multipliers[a] =
            make_relation(rel.name + "-shifted", std::move(machines));
    }
    return shifted;
}

void criterion7() {
    PStructure shifted = shifted_z_fixture();
    bool fixture_ok = identity_representative(shifted, 4) == parse("x X") &&
                      check_structure(shifted, 4).ok();
    PStructure r = rebase_identity(shifted);
    bool eps_ok = identity_representative(r, 4) == Word();
    bool check_ok = check_structure(r, 4).ok();
    PStructure rr = rebase_identity(r);
    long mismatches = 0;
    for_all_words(r.alphabet, 8, [&](const Word& w) {
        if (member(r.language, w) != member(rr.language, w)) ++mismatches;
    });
    std::ostringstream d;
    d << "fixture " << (fixture_ok ? "ok" : "FAIL") << ", eps "
      << (eps_ok ? "ok" : "FAIL") << ", check " << (check_ok ? "ok" : "FAIL")
      << ", idempotence mismatches " << mismatches;
    report(7, "rebase_identity: eps identity, passes checks, idempotent",
           fixture_ok && eps_ok && check_ok && mismatches == 0, d.str());
}

// ---------------------------------------------------------------- criterion 8

void criterion8() {
    std::vector<IntegerMatrix> mats{
        IntegerMatrix::identity(2),
        IntegerMatrix::from_rows({{1, 1}, {0, 1}}),
        IntegerMatrix::from_rows({{2, 1}, {1, 1}}),
        IntegerMatrix::from_rows({{0, 1}, {1, 0}})};
    Alphabet zn = zn_alphabet(2);
    auto block_word = [&](std::int64_t m0, std::int64_t m1) {
        Word w;
        std::int64_t m[2] = {m0, m1};
        for (int i = 0; i < 2; ++i) {
            Symbol pos = zn.at(2 * i), neg = zn.at(2 * i + 1);
            for (std::int64_t k = 0; k < (m[i] < 0 ? -m[i] : m[i]); ++k)
                w.push_back(m[i] > 0 ? pos : neg);
        }
        return w;
    };
    long mismatches = 0, pairs = 0;
    for (const IntegerMatrix& A : mats) {
        AtpplRelation rel = linear_map_relation(A);
        for (std::int64_t a = -5; a <= 5; ++a)
            for (std::int64_t b = -5; b <= 5; ++b) {
                std::vector<std::int64_t> img = A.apply({a, b});
                for (std::int64_t c = -5; c <= 5; ++c)
                    for (std::int64_t d = -5; d <= 5; ++d) {
                        ++pairs;
                        bool want = img[0] == c && img[1] == d;
                        if (relation_member(rel, block_word(a, b),
                                            block_word(c, d)) != want)
                            ++mismatches;
                    }
            }
    }
    std::ostringstream d;
    d << pairs << " pairs over 4 matrices, " << mismatches << " mismatches";
    report(8, "linear_map_relation vs exact matrix arithmetic, |m_i| <= 5",
           mismatches == 0, d.str());
}

// ---------------------------------------------------------------- criterion 9

bool matrix_for_bijective() {
    for (int n : {3, 4}) {
        std::set<std::string> seen;
        std::function<bool(std::vector<std::int64_t>&)> fill =
            [&](std::vector<std::int64_t>& box) {
                size_t dims = 2 * (n - 2) + 1;
                if (box.size() == dims) {
                    HnNormalForm nf;
                    nf.n = n;
                    nf.p.assign(box.begin(), box.begin() + (n - 2));
                    nf.q.assign(box.begin() + (n - 2),
                                box.begin() + 2 * (n - 2));
                    nf.r = box.back();
                    UniTriMatrix m = matrix_for(nf);
                    if (!seen.insert(m.str()).second) return false;
                    if (!(hn_normal_form(m) == nf)) return false;
                    return true;
                }
                for (std::int64_t v = -4; v <= 4; ++v) {
                    box.push_back(v);
                    bool ok = fill(box);
                    box.pop_back();
                    if (!ok) return false;
                }
                return true;
            };
        std::vector<std::int64_t> box;
        if (!fill(box)) return false;
    }
    // Surjectivity onto ball-generated H(n) elements: every matrix in the
    // oracle ball round-trips through hn_normal_form.
    for (int n : {3, 4}) {
        PStructure s = heisenberg_structure(n);
        Ball B = ball(*s.oracle, 3);
        for (const auto& e : B.elements) {
            UniTriMatrix m = UniTriMatrix::wrap(matrix_value(e));
            if (matrix_for(hn_normal_form(m)) != m) return false;
        }
    }
    return true;
}

bool relations_identity() {
    for (int n : {3, 4, 5}) {
        PStructure s = heisenberg_structure(n);
        for (const Word& rel : heisenberg_relations(n))
            if (!s.oracle->is_identity_word(rel)) return false;
    }
    return true;
}

bool u3_matches_h3() {
    PStructure u3 = unitriangular_structure(3);
    u3.nf_factor = 2;
    u3.nf_offset = 1;
    PStructure h3 = shipped_structure("h3");
    std::map<Symbol, Symbol> rename{
        {sym("x2"), sym("e12")}, {sym("X2"), sym("E12")},
        {sym("y2"), sym("e23")}, {sym("Y2"), sym("E23")},
        {sym("z"), sym("e13")},  {sym("Z"), sym("E13")}};
    bool ok = true;
    for_all_words(h3.alphabet, 5, [&](const Word& w) {
        Word wu;
        for (Symbol a : w) wu.push_back(rename.at(a));
        if (word_problem(h3, w) != word_problem(u3, wu)) ok = false;
    });
    return ok;
}

bool action_matches_conjugation() {
    std::mt19937 rng(73);
    std::uniform_int_distribution<int> d(-4, 4);
    for (int n : {4, 5}) {
        for (int trial = 0; trial < 50; ++trial) {
            HnNormalForm nf;
            nf.n = n;
            nf.p.resize(n - 2);
            nf.q.resize(n - 2);
            for (auto& v : nf.p) v = d(rng);
            for (auto& v : nf.q) v = d(rng);
            nf.r = d(rng);
            UniTriMatrix h = matrix_for(nf);
            // Inner-window generators s = 1 + eps*e_ij, 2 <= i < j <= n-1,
            // act by the typo-corrected Lemma 6.2(4) formula:
            //   p'_j = p_j + eps*p_i, q'_i = q_i - eps*q_j, r unchanged.
            for (int i = 2; i <= n - 2; ++i)
                for (int j = i + 1; j <= n - 1; ++j)
                    for (int eps : {1, -1}) {
                        UniTriMatrix s = UniTriMatrix::elementary(n, i, j, eps);
                        HnNormalForm out = nf;
                        out.p[j - 2] += eps * nf.p[i - 2];
                        out.q[i - 2] -= eps * nf.q[j - 2];
                        if (s.inverse() * h * s != matrix_for(out))
                            return false;
                    }
        }
    }
    return true;
}

void criterion9() {
    bool bij = matrix_for_bijective();
    bool rels = relations_identity();
    bool agree = u3_matches_h3();
    bool act = action_matches_conjugation();
    std::ostringstream d;
    d << "bijectivity " << (bij ? "ok" : "FAIL") << ", relations "
      << (rels ? "ok" : "FAIL") << ", u3=h3 " << (agree ? "ok" : "FAIL")
      << ", action " << (act ? "ok" : "FAIL");
    report(9, "section 6: matrix_for, relations, u3=h3, conjugation action",
           bij && rels && agree && act, d.str());
}

// --------------------------------------------------------------- criterion 10

// The Z structure over two letters, as the registry builds it.
PStructure plain_z(const std::string& lo, const std::string& hi) {
    Symbol x = sym(lo), X = sym(hi);
    Alphabet A({x, X});
    Fsa f;
    f.alphabet = A;
    f.num_states = 4;
    f.transitions = {1, 2, 1, 3, 3, 2, 3, 3};
    f.start = 0;
    f.accepting = {true, true, true, false};
    PStructure s;
    s.name = "z-" + lo;
    s.alphabet = A;
    s.language = make_language(s.name + "-nf", {fsa_to_dpda(f, "nf")});
    s.oracle = tuple_oracle("Z", A, {{x, {1}}, {X, {-1}}});
    TwoTapePda mx = block_counter("mul-" + lo, A, A,
                                  {{Side::Left, {{x, 1}, {X, -1}}},
                                   {Side::Right, {{x, -1}, {X, 1}}}},
                                  1);
    s.multipliers[x] = make_relation("Rx", {mx});
    s.multipliers[X] = swap_tapes(s.multipliers[x]);
    s.normal_form_of = [x, X](const GroupOracle::Elem& e) {
        long k = static_cast<long>(tuple_value(e)[0]);
        Word w;
        for (long i = 0; i < (k < 0 ? -k : k); ++i) w.push_back(k > 0 ? x : X);
        return w;
    };
    s.nf_factor = 1;
    s.nf_offset = 0;
    return s;
}

void criterion10() {
    PStructure za = plain_z("a", "A"), zt = plain_z("t", "T");
    ShortlexOrder ord(zt.alphabet);
    PStructure lamp = wreath_product(za, zt, ord);
    lamp.nf_factor = 3;
    lamp.nf_offset = 1;
    CheckReport r = check_structure(lamp, 3);
    std::ostringstream d;
    d << "wreath_product check:" << (r.ok() ? "ok" : "FAIL") << "(ball "
      << r.ball_size << ")";
    bool wp_ok = word_problem_sweep(lamp, d, "wordproblem");
    report(10, "lamplighter = wreath_product(Z, Z) passes criteria 4-5",
           r.ok() && wp_ok, d.str());
}

}  // namespace

int main() {
    criterion1();
    criterion2();
    criterion3();
    criterion4();
    criterion5();
    criterion6();
    criterion7();
    criterion8();
    criterion9();
    criterion10();
    std::cout << (failures == 0 ? "ALL CRITERIA PASS"
                                : "FAILURES: " + std::to_string(failures))
              << "\n";
    return failures == 0 ? 0 : 1;
}
