#include "ppd/constructions.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <stdexcept>

namespace ppd {

namespace {

std::string require_disjoint(const PStructure& s, const PStructure& sp,
                             const char* who) {
    if (!s.alphabet.disjoint(sp.alphabet))
        throw std::invalid_argument(std::string(who) + ": alphabets overlap");
    return s.name + "." + sp.name;
}

Word nf_via(const PStructure& s, const GroupOracle::Elem& e) {
    if (!s.normal_form_of)
        throw std::logic_error("construction needs normal_form_of on " + s.name);
    return s.normal_form_of(e);
}

}  // namespace

void calibrate_nf_bound(PStructure& s, int max_radius) {
    Ball B = ball(*s.oracle, max_radius);
    size_t factor = 1, offset = 0;
    for (size_t i = 0; i < B.elements.size(); ++i) {
        size_t len = nf_via(s, B.elements[i]).length();
        size_t r = B.witness[i].length();
        if (r == 0)
            offset = std::max(offset, len);
        else
            factor = std::max(factor, (len + r - 1) / r);
    }
    s.nf_factor = factor;
    s.nf_offset = offset + 1;
}

PStructure direct_product(const PStructure& s, const PStructure& sp) {
    std::string nm = require_disjoint(s, sp, "direct_product");
    const Alphabet &A = s.alphabet, &Ap = sp.alphabet;

    PStructure out;
    out.name = nm;
    out.alphabet = A.unioned(Ap);

    PplLanguage alt = alternating_concat(s.language, sp.language);

    // words of shape (A word)(A' word): the alternating language cut down to
    // a single block of each kind
    Fsa shape;
    shape.alphabet = alt.alphabet;
    shape.num_states = 3;  // 0: A part, 1: A' part, 2: dead
    shape.start = 0;
    shape.accepting = {true, true, false};
    shape.transitions.assign(3 * shape.alphabet.size(), 2);
    for (size_t li = 0; li < shape.alphabet.size(); ++li) {
        bool first = A.contains(shape.alphabet.at(li));
        if (first)
            shape.transitions[li] = 0;
        else {
            shape.transitions[li] = 1;
            shape.transitions[shape.alphabet.size() + li] = 1;
        }
    }
    Fsa not_shape = combine_fsa(FsaCombine::Complement, shape);
    out.language = minus_regular(alt, not_shape);
    out.language.name = nm + "-nf";

    for (size_t li = 0; li < A.size(); ++li) {
        Symbol a = A.at(li);
        std::vector<TwoTapePda> team;
        for (const auto& comp : s.multipliers.at(a).machines)
            team.push_back(seq2_machine(comp.machine.name + ".head", comp,
                                        all_pairs_machine(Ap, Ap)));
        team.push_back(seq2_machine("diag-tail", all_pairs_machine(A, A),
                                    diagonal_machine(Ap)));
        out.multipliers[a] = make_relation("R." + a.name(), std::move(team));
    }
    for (size_t li = 0; li < Ap.size(); ++li) {
        Symbol a = Ap.at(li);
        std::vector<TwoTapePda> team;
        for (const auto& comp : sp.multipliers.at(a).machines)
            team.push_back(seq2_machine(comp.machine.name + ".tail",
                                        diagonal_machine(A), comp));
        out.multipliers[a] = make_relation("R." + a.name(), std::move(team));
    }

    out.oracle = direct_product_oracle(s.oracle, sp.oracle);
    if (s.normal_form_of && sp.normal_form_of) {
        PStructure sa = s, sb = sp;  // copies keep the closures self-contained
        out.normal_form_of = [sa, sb](const GroupOracle::Elem& e) {
            auto [ea, eb] = direct_product_value(e);
            Word w = sa.normal_form_of(ea);
            Word tail = sb.normal_form_of(eb);
            for (size_t i = 0; i < tail.length(); ++i) w.push_back(tail.at(i));
            return w;
        };
    }
    out.nf_factor = s.nf_factor + sp.nf_factor;
    out.nf_offset = s.nf_offset + sp.nf_offset;
    return out;
}

PStructure free_product(const PStructure& s, const PStructure& sp) {
    std::string nm = require_disjoint(s, sp, "free_product");
    const Alphabet &A = s.alphabet, &Ap = sp.alphabet;

    PStructure out;
    out.name = nm;
    out.alphabet = A.unioned(Ap);
    out.language = alternating_concat(s.language, sp.language);
    out.language.name = nm + "-nf";

    auto team_for = [&](const PStructure& side, const Alphabet& other,
                        Symbol a) {
        std::vector<TwoTapePda> team;
        team.push_back(prefix_comparator("M0." + a.name(), side.alphabet, other));
        for (const auto& comp : side.multipliers.at(a).machines)
            team.push_back(
                last_block_machine(comp.machine.name + ".last", comp, other));
        return make_relation("R." + a.name(), std::move(team));
    };
    for (size_t li = 0; li < A.size(); ++li)
        out.multipliers[A.at(li)] = team_for(s, Ap, A.at(li));
    for (size_t li = 0; li < Ap.size(); ++li)
        out.multipliers[Ap.at(li)] = team_for(sp, A, Ap.at(li));

    out.oracle = free_product_oracle(s.oracle, sp.oracle);
    if (s.normal_form_of && sp.normal_form_of) {
        PStructure sa = s, sb = sp;
        out.normal_form_of = [sa, sb](const GroupOracle::Elem& e) {
            Word w;
            for (const auto& [idx, part] : free_product_value(e)) {
                Word blk = idx == 0 ? sa.normal_form_of(part)
                                    : sb.normal_form_of(part);
                for (size_t i = 0; i < blk.length(); ++i) w.push_back(blk.at(i));
            }
            return w;
        };
    }
    out.nf_factor =
        s.nf_factor + s.nf_offset + sp.nf_factor + sp.nf_offset;
    out.nf_offset = std::max(s.nf_offset, sp.nf_offset);
    return out;
}

Alphabet zn_alphabet(int n) {
    std::vector<Symbol> syms;
    for (int i = 1; i <= n; ++i) {
        syms.push_back(Symbol::intern("x" + std::to_string(i)));
        syms.push_back(Symbol::intern("X" + std::to_string(i)));
    }
    return Alphabet(syms);
}

AtpplRelation linear_map_relation(const IntegerMatrix& A) {
    std::int64_t d = A.det();
    if (d != 1 && d != -1)
        throw std::invalid_argument("linear_map_relation: determinant not +-1");
    int n = A.n;
    Alphabet alph = zn_alphabet(n);
    std::vector<TwoTapePda> machines;
    for (int i = 0; i < n; ++i) {
        CounterPhase read_m{Side::Left, {}}, read_mp{Side::Right, {}};
        for (int j = 0; j < n; ++j) {
            Symbol xj = alph.at(2 * j), Xj = alph.at(2 * j + 1);
            read_m.deltas[xj] = static_cast<int>(A.at(i, j));
            read_m.deltas[Xj] = static_cast<int>(-A.at(i, j));
            read_mp.deltas[xj] = j == i ? -1 : 0;
            read_mp.deltas[Xj] = j == i ? 1 : 0;
        }
        machines.push_back(block_counter("linmap." + std::to_string(i), alph,
                                         alph, {read_m, read_mp}, 0));
    }
    return make_relation("linmap", std::move(machines));
}

PStructure semidirect_Zn(const std::map<Symbol, IntegerMatrix>& phi,
                         const PStructure& sH) {
    if (sH.alphabet.size() != 2)
        throw std::invalid_argument("semidirect_Zn: sH must be a Z structure");
    Symbol t = sH.alphabet.at(0), T = sH.alphabet.at(1);
    const IntegerMatrix &At = phi.at(t), &AT = phi.at(T);
    if (At * AT != IntegerMatrix::identity(At.n))
        throw std::invalid_argument("semidirect_Zn: phi[T] must invert phi[t]");
    int n = At.n;
    Alphabet Ax = zn_alphabet(n);
    if (!sH.alphabet.disjoint(Ax))
        throw std::invalid_argument("semidirect_Zn: alphabets overlap");

    PStructure out;
    out.name = "z" + std::to_string(n) + "-by-" + sH.name;
    out.alphabet = sH.alphabet.unioned(Ax);

    // full language = (sH head)(any x word), cut to the block shape; the
    // alternating combinator handles eps-in-both concatenation
    PplLanguage ax_all = make_language(
        "ax-all", {fsa_to_dpda(fsa_all_words(Ax), "ax-all")});
    PplLanguage alt = alternating_concat(sH.language, ax_all);

    // normal forms: (H word)(x1-block ... xn-block), blocks sign-pure
    Fsa blocks;
    blocks.alphabet = alt.alphabet;
    blocks.num_states = 2 * n + 2;  // 0: H part, 1+2i / 2+2i: runs, dead last
    int dead = 2 * n + 1;
    blocks.start = 0;
    blocks.accepting.assign(blocks.num_states, true);
    blocks.accepting[dead] = false;
    blocks.transitions.assign(
        static_cast<size_t>(blocks.num_states) * blocks.alphabet.size(), dead);
    auto edge = [&](int from, Symbol s, int to) {
        blocks.transitions[static_cast<size_t>(from) * blocks.alphabet.size() +
                           blocks.alphabet.index_of(s)] = to;
    };
    edge(0, t, 0);
    edge(0, T, 0);
    for (int i = 0; i < n; ++i) {
        Symbol xi = Ax.at(2 * i), Xi = Ax.at(2 * i + 1);
        edge(1 + 2 * i, xi, 1 + 2 * i);
        edge(2 + 2 * i, Xi, 2 + 2 * i);
        edge(0, xi, 1 + 2 * i);
        edge(0, Xi, 2 + 2 * i);
        for (int j = 0; j < i; ++j)
            for (int from : {1 + 2 * j, 2 + 2 * j}) {
                edge(from, xi, 1 + 2 * i);
                edge(from, Xi, 2 + 2 * i);
            }
    }
    PplLanguage shape_only = make_language(
        out.name + "-shape", {fsa_to_dpda(blocks, out.name + "-shape")});
    out.language = intersect(alt, shape_only);
    out.language.name = out.name + "-nf";

    // oracle: (v, k)(v', k') = (v + phi(t)^k v', k + k')
    std::map<Symbol, SemidirectElemData> gens;
    gens[t] = {std::vector<std::int64_t>(n, 0), 1};
    gens[T] = {std::vector<std::int64_t>(n, 0), -1};
    for (int i = 0; i < n; ++i) {
        std::vector<std::int64_t> e(n, 0);
        e[i] = 1;
        gens[Ax.at(2 * i)] = {e, 0};
        e[i] = -1;
        gens[Ax.at(2 * i + 1)] = {e, 0};
    }
    out.oracle = semidirect_z_oracle(out.name, At, out.alphabet, gens);

    // multipliers
    auto coordinate_counter = [&](int i, int delta) {
        CounterPhase l{Side::Left, {}}, r{Side::Right, {}};
        for (int j = 0; j < n; ++j) {
            Symbol xj = Ax.at(2 * j), Xj = Ax.at(2 * j + 1);
            l.deltas[xj] = j == i ? 1 : 0;
            l.deltas[Xj] = j == i ? -1 : 0;
            r.deltas[xj] = j == i ? -1 : 0;
            r.deltas[Xj] = j == i ? 1 : 0;
        }
        return block_counter("coord." + std::to_string(i), Ax, Ax, {l, r},
                             delta);
    };
    for (int i = 0; i < n; ++i)
        for (int sign : {1, -1}) {
            Symbol a = Ax.at(sign == 1 ? 2 * i : 2 * i + 1);
            std::vector<TwoTapePda> team;
            for (int j = 0; j < n; ++j)
                team.push_back(seq2_machine(
                    "head-diag." + std::to_string(j),
                    diagonal_machine(sH.alphabet),
                    coordinate_counter(j, j == i ? sign : 0)));
            out.multipliers[a] = make_relation("R." + a.name(), std::move(team));
        }
    for (Symbol h : {t, T}) {
        // right multiplication by h sends the x-exponent vector m to
        // phi(h)^-1 m (conventions fixed by the oracle)
        IntegerMatrix B = (h == t ? AT : At);
        AtpplRelation lin = linear_map_relation(B);
        std::vector<TwoTapePda> team;
        for (const auto& comp : sH.multipliers.at(h).machines)
            team.push_back(seq2_machine(comp.machine.name + ".head", comp,
                                        all_pairs_machine(Ax, Ax)));
        for (auto& cm : lin.machines)
            team.push_back(seq2_machine(cm.machine.name + ".tail",
                                        all_pairs_machine(sH.alphabet,
                                                          sH.alphabet),
                                        cm));
        out.multipliers[h] = make_relation("R." + h.name(), std::move(team));
    }

    PStructure head = sH;
    Alphabet ax_copy = Ax;
    OraclePtr horacle = sH.oracle;
    Symbol tpos = t;
    out.normal_form_of = [head, ax_copy, At, n, horacle,
                          tpos](const GroupOracle::Elem& e) {
        SemidirectElemData d = semidirect_value(e);
        // head word for t^k
        Word hw;
        GroupOracle::Elem hk = horacle->identity();
        GroupOracle::Elem step = horacle->generator(tpos);
        if (d.k < 0) step = horacle->invert(step);
        for (long i = 0; i < (d.k < 0 ? -d.k : d.k); ++i)
            hk = horacle->multiply(hk, step);
        hw = head.normal_form_of(hk);
        std::vector<std::int64_t> m = At.pow(-d.k).apply(d.v);
        for (int i = 0; i < n; ++i) {
            Symbol letter = ax_copy.at(m[i] >= 0 ? 2 * i : 2 * i + 1);
            for (std::int64_t c = 0; c < (m[i] < 0 ? -m[i] : m[i]); ++c)
                hw.push_back(letter);
        }
        return hw;
    };
    out.nf_factor = 4;  // recalibrated by the registry
    out.nf_offset = 2;
    return out;
}

namespace {

// Alphabet extension: same language, new letters go to a fresh dead state.
Fsa extend_fsa_alphabet(const Fsa& f, const Alphabet& big) {
    Fsa out;
    out.alphabet = big;
    out.num_states = f.num_states + 1;
    int dead = f.num_states;
    out.start = f.start;
    out.accepting.assign(out.num_states, false);
    for (int s = 0; s < f.num_states; ++s) out.accepting[s] = f.accepting[s];
    out.transitions.assign(static_cast<size_t>(out.num_states) * big.size(),
                           dead);
    for (int s = 0; s < f.num_states; ++s)
        for (size_t li = 0; li < big.size(); ++li) {
            int orig = f.alphabet.index_of(big.at(li));
            if (orig >= 0)
                out.transitions[static_cast<size_t>(s) * big.size() + li] =
                    f.next(s, orig);
        }
    return out;
}

// A comparator FSA is a stack-free two-tape machine; wrong-side transitions
// are unreachable in its run semantics, so only own-side rules are copied.
TwoTapePda from_two_tape_fsa(const std::string& name, const TwoTapeFsa& f) {
    MachineBuilder b(name, AcceptMode::FinalState, f.fsa.alphabet);
    Symbol bottom = Symbol::intern("Z");
    auto qn = [](int s) { return "q" + std::to_string(s); };
    for (int s = 0; s < f.fsa.num_states; ++s) {
        b.side(qn(s), f.sides[s]);
        if (f.fsa.accepting[s]) b.accept(qn(s));
        for (size_t li = 0; li < f.fsa.alphabet.size(); ++li) {
            Symbol l = f.fsa.alphabet.at(li);
            Side need = l.tag() == Tag::Sharp ? Side::Left : Side::Right;
            if (need != f.sides[s]) continue;
            b.rule(qn(s), bottom, l, qn(f.fsa.next(s, static_cast<int>(li))),
                   {bottom});
        }
    }
    b.start(qn(f.fsa.start), bottom);
    return b.build_two_tape(f.left, f.right);
}

// Twisted arithmetic on explicit (Z^n x F, H) pairs, used to evaluate lifted
// words and the per-step counter increments without going through an oracle.
struct CextCalc {
    int n = 0;
    FiniteGroupTable F;
    Cocycle rho;
    OraclePtr H;

    struct E {
        std::vector<std::int64_t> v;
        int f = 0;
        GroupOracle::Elem h;
    };

    int fmul(int a, int b) const {
        return F.mul[static_cast<size_t>(a) * F.order + b];
    }
    int finv(int a) const { return F.inv[a]; }

    E tau(const GroupOracle::Elem& h) const {
        E e;
        e.v.assign(n, 0);
        e.h = h;
        return e;
    }
    E mul(const E& x, const E& y) const {
        KElem tw = rho(x.h, y.h);
        tw.v.resize(n, 0);
        E o;
        o.v.resize(n);
        for (int i = 0; i < n; ++i) o.v[i] = x.v[i] + y.v[i] + tw.v[i];
        o.f = fmul(fmul(x.f, y.f), tw.f);
        o.h = H->multiply(x.h, y.h);
        return o;
    }
    E inv(const E& x) const {
        GroupOracle::Elem hinv = H->invert(x.h);
        KElem tw = rho(x.h, hinv);
        tw.v.resize(n, 0);
        E o;
        o.v.resize(n);
        for (int i = 0; i < n; ++i) o.v[i] = -x.v[i] - tw.v[i];
        o.f = finv(fmul(x.f, tw.f));
        o.h = hinv;
        return o;
    }
};

}  // namespace

PStructure central_extension(const CocycleSpec& spec,
                             const AutomaticStructure& aut) {
    const int n = spec.n;
    if (static_cast<int>(spec.z_letters.size()) != 2 * n)
        throw std::invalid_argument("central_extension: need 2n z letters");
    FiniteGroupTable F = spec.F;
    if (F.mul.empty()) F.mul = {0};
    if (F.inv.empty()) F.inv = {0};
    const int order = F.order;
    OraclePtr H = aut.oracle;
    CextCalc cc{n, F, spec.rho, H};

    const Alphabet& AH = aut.alphabet;
    std::vector<Symbol> ksyms = spec.z_letters;
    for (const auto& [s, idx] : spec.f_letters) {
        if (idx <= 0 || idx >= order)
            throw std::invalid_argument("central_extension: bad f letter index");
        ksyms.push_back(s);
    }
    Alphabet AK(ksyms);
    if (!AH.disjoint(AK))
        throw std::invalid_argument("central_extension: alphabets overlap");
    Alphabet All = AH.unioned(AK);

    PStructure out;
    out.name = spec.name;
    out.alphabet = All;

    // language: an acceptor word, then sign-pure x blocks, then at most one
    // f letter; the factor alphabets are disjoint so Concat stays thin
    Fsa kshape;
    kshape.alphabet = AK;
    kshape.num_states = 2 * n + 3;  // 0 start, runs, f seen, dead
    int fstate = 2 * n + 1, kdead = 2 * n + 2;
    kshape.start = 0;
    kshape.accepting.assign(kshape.num_states, true);
    kshape.accepting[kdead] = false;
    kshape.transitions.assign(
        static_cast<size_t>(kshape.num_states) * AK.size(), kdead);
    auto kedge = [&](int from, Symbol s, int to) {
        kshape.transitions[static_cast<size_t>(from) * AK.size() +
                           AK.index_of(s)] = to;
    };
    for (int i = 0; i < n; ++i) {
        Symbol xi = spec.z_letters[2 * i], Xi = spec.z_letters[2 * i + 1];
        kedge(1 + 2 * i, xi, 1 + 2 * i);
        kedge(2 + 2 * i, Xi, 2 + 2 * i);
        kedge(0, xi, 1 + 2 * i);
        kedge(0, Xi, 2 + 2 * i);
        for (int j = 0; j < i; ++j)
            for (int from : {1 + 2 * j, 2 + 2 * j}) {
                kedge(from, xi, 1 + 2 * i);
                kedge(from, Xi, 2 + 2 * i);
            }
    }
    for (const auto& [s, idx] : spec.f_letters)
        for (int from = 0; from <= 2 * n; ++from) kedge(from, s, fstate);
    Fsa lh = extend_fsa_alphabet(aut.acceptor, All);
    Fsa lk = extend_fsa_alphabet(kshape, All);
    Fsa lang = combine_fsa(FsaCombine::Concat, lh, &lk);
    out.language =
        make_language(spec.name + "-nf", {fsa_to_dpda(lang, spec.name + "-nf")});

    // oracle
    std::map<Symbol, std::pair<KElem, Symbol>> gens;
    Symbol hid = Symbol::intern("1");
    for (size_t li = 0; li < AH.size(); ++li)
        gens[AH.at(li)] = {KElem{{}, 0}, AH.at(li)};
    for (int i = 0; i < n; ++i) {
        std::vector<std::int64_t> e(n, 0);
        e[i] = 1;
        gens[spec.z_letters[2 * i]] = {KElem{e, 0}, hid};
        e[i] = -1;
        gens[spec.z_letters[2 * i + 1]] = {KElem{e, 0}, hid};
    }
    for (const auto& [s, idx] : spec.f_letters)
        gens[s] = {KElem{{}, idx}, hid};
    out.oracle = central_extension_oracle(spec.name, n, F, spec.rho, H, All,
                                          gens);

    // head-difference table over the fellow-traveler ball: for aligned steps
    // (t, a, a') the new difference and the central increment
    // tau(a)^-1 tau(t) tau(a') tau(t_new)^-1
    Ball tb = ball(*H, std::max(aut.fellow_traveler, 1));
    size_t na = AH.size() + 1;  // last index = no letter (exhausted head)
    struct DeltaEntry {
        bool ok = false;
        std::vector<std::int64_t> v;
        int f = 0;
        size_t tnew = 0;
    };
    std::vector<DeltaEntry> table(tb.elements.size() * na * na);
    auto dix = [&](size_t ti, size_t ai, size_t aj) {
        return (ti * na + ai) * na + aj;
    };
    auto gen_or_id = [&](size_t ai) {
        return ai + 1 == na ? H->identity() : H->generator(AH.at(ai));
    };
    for (size_t ti = 0; ti < tb.elements.size(); ++ti)
        for (size_t ai = 0; ai < na; ++ai)
            for (size_t aj = 0; aj < na; ++aj) {
                if (ai + 1 == na && aj + 1 == na) continue;
                GroupOracle::Elem ha = gen_or_id(ai), hb = gen_or_id(aj);
                GroupOracle::Elem tnew = H->multiply(
                    H->multiply(H->invert(ha), tb.elements[ti]), hb);
                auto it = tb.index.find(H->key(tnew));
                if (it == tb.index.end()) continue;
                CextCalc::E e = cc.mul(
                    cc.mul(cc.mul(cc.inv(cc.tau(ha)), cc.tau(tb.elements[ti])),
                           cc.tau(hb)),
                    cc.inv(cc.tau(tnew)));
                DeltaEntry& d = table[dix(ti, ai, aj)];
                d.ok = true;
                d.v = e.v;
                d.f = e.f;
                d.tnew = it->second;
            }
    size_t t0 = tb.index.at(H->key(H->identity()));

    Symbol lend = Symbol::end_marker().with_tag(Tag::Sharp);
    Symbol rend = Symbol::end_marker().with_tag(Tag::Flat);
    std::vector<Symbol> ltrigs, rtrigs;  // tail-opening letters per tape
    for (size_t li = 0; li < AK.size(); ++li) {
        ltrigs.push_back(AK.at(li).with_tag(Tag::Sharp));
        rtrigs.push_back(AK.at(li).with_tag(Tag::Flat));
    }
    ltrigs.push_back(lend);
    rtrigs.push_back(rend);
    auto fval = [&](Symbol tagged) {
        Symbol base = tagged.base();
        for (const auto& [s, idx] : spec.f_letters)
            if (s == base) return idx;
        return 0;
    };

    // M_i: stack counter accumulating -(increment_i) over the heads, then
    // +-1 per x_i on the left tail and -+1 on the right tail; zero accepts.
    auto build_mi = [&](int i) {
        MachineBuilder b("cext.M" + std::to_string(i), AcceptMode::FinalState,
                         two_tape_alphabet(All, All));
        Symbol B = Symbol::intern("B"), P = Symbol::intern("P"),
               N = Symbol::intern("N");
        std::vector<Symbol> tops{B, P, N};
        std::set<std::string> installed;
        std::function<std::string(int, const std::string&)> adj_to =
            [&](int r, const std::string& target) -> std::string {
            if (r == 0) return target;
            std::string st = "~" + std::to_string(r) + "|" + target;
            if (installed.insert(st).second) {
                std::string nx = adj_to(r > 0 ? r - 1 : r + 1, target);
                if (r > 0) {
                    b.eps(st, B, nx, {B, P});
                    b.eps(st, P, nx, {P, P});
                    b.eps(st, N, nx, {});
                } else {
                    b.eps(st, B, nx, {B, N});
                    b.eps(st, N, nx, {N, N});
                    b.eps(st, P, nx, {});
                }
            }
            return st;
        };
        auto dtail = [&](Symbol tagged) -> int {
            Symbol base = tagged.base();
            if (base == spec.z_letters[2 * i]) return 1;
            if (base == spec.z_letters[2 * i + 1]) return -1;
            return 0;
        };
        b.eps("fin", B, "acc", {B});
        b.accept("acc");
        b.side("TR", Side::Right);
        for (Symbol c : rtrigs)
            for (Symbol top : tops)
                b.rule("TR", top, c,
                       c == rend ? "fin" : adj_to(-dtail(c), "TR"), {top});
        auto tl_name = [](Symbol trigR) { return "TL|" + trigR.name(); };
        for (Symbol trigR : rtrigs) {
            std::string st = tl_name(trigR);
            b.side(st, Side::Left);
            for (Symbol c : ltrigs)
                for (Symbol top : tops) {
                    std::string to;
                    if (c == lend)
                        to = trigR == rend ? "fin" : adj_to(-dtail(trigR), "TR");
                    else
                        to = adj_to(dtail(c), st);
                    b.rule(st, top, c, to, {top});
                }
        }
        // entering the tails once both held triggers are known
        auto tail_entry = [&](Symbol trigL, Symbol trigR) -> std::string {
            if (trigL == lend && trigR == rend) return "fin";
            if (trigL == lend) return adj_to(-dtail(trigR), "TR");
            return adj_to(dtail(trigL), tl_name(trigR));
        };
        auto rname = [](size_t ti) { return "R|" + std::to_string(ti); };
        auto uname = [&](size_t ti, Symbol trigL) {
            return "U|" + std::to_string(ti) + "|" + trigL.name();
        };
        auto vname = [&](size_t ti, Symbol trigR) {
            return "V|" + std::to_string(ti) + "|" + trigR.name();
        };
        for (size_t ti = 0; ti < tb.elements.size(); ++ti) {
            b.side(rname(ti), Side::Left);
            for (size_t ai = 0; ai < AH.size(); ++ai) {
                std::string rm =
                    "Rm|" + std::to_string(ti) + "|" + AH.at(ai).name();
                b.side(rm, Side::Right);
                for (Symbol top : tops)
                    b.rule(rname(ti), top, AH.at(ai).with_tag(Tag::Sharp), rm,
                           {top});
                for (size_t aj = 0; aj < AH.size(); ++aj) {
                    const DeltaEntry& d = table[dix(ti, ai, aj)];
                    if (!d.ok) continue;
                    std::string to = adj_to(static_cast<int>(-d.v[i]),
                                            rname(d.tnew));
                    for (Symbol top : tops)
                        b.rule(rm, top, AH.at(aj).with_tag(Tag::Flat), to,
                               {top});
                }
                const DeltaEntry& d2 = table[dix(ti, ai, na - 1)];
                if (d2.ok)
                    for (Symbol trigR : rtrigs) {
                        std::string to = adj_to(static_cast<int>(-d2.v[i]),
                                                vname(d2.tnew, trigR));
                        for (Symbol top : tops) b.rule(rm, top, trigR, to, {top});
                    }
            }
            for (Symbol trigL : ltrigs)
                for (Symbol top : tops)
                    b.rule(rname(ti), top, trigL, uname(ti, trigL), {top});
            for (Symbol trigL : ltrigs) {
                std::string u = uname(ti, trigL);
                b.side(u, Side::Right);
                for (size_t aj = 0; aj < AH.size(); ++aj) {
                    const DeltaEntry& d = table[dix(ti, na - 1, aj)];
                    if (!d.ok) continue;
                    std::string to = adj_to(static_cast<int>(-d.v[i]),
                                            uname(d.tnew, trigL));
                    for (Symbol top : tops)
                        b.rule(u, top, AH.at(aj).with_tag(Tag::Flat), to, {top});
                }
                for (Symbol trigR : rtrigs)
                    for (Symbol top : tops)
                        b.rule(u, top, trigR, tail_entry(trigL, trigR), {top});
            }
            for (Symbol trigR : rtrigs) {
                std::string v = vname(ti, trigR);
                b.side(v, Side::Left);
                for (size_t ai = 0; ai < AH.size(); ++ai) {
                    const DeltaEntry& d = table[dix(ti, ai, na - 1)];
                    if (!d.ok) continue;
                    std::string to = adj_to(static_cast<int>(-d.v[i]),
                                            vname(d.tnew, trigR));
                    for (Symbol top : tops)
                        b.rule(v, top, AH.at(ai).with_tag(Tag::Sharp), to, {top});
                }
                for (Symbol trigL : ltrigs)
                    for (Symbol top : tops)
                        b.rule(v, top, trigL, tail_entry(trigL, trigR), {top});
            }
        }
        b.start(rname(t0), B);
        return b.build_two_tape(All, All);
    };

    // M_f: same walk with the F part of the increment tracked in the state;
    // accepts iff (accumulated) * (right-tail product) == left-tail product
    auto build_mf = [&]() {
        MachineBuilder b("cext.Mf", AcceptMode::FinalState,
                         two_tape_alphabet(All, All));
        Symbol z = Symbol::intern("Z");
        b.accept("acc");
        auto trn = [](size_t ti, int phi) {
            return "R|" + std::to_string(ti) + "|" + std::to_string(phi);
        };
        auto tl_name = [](int phi, int fl, Symbol trigR) {
            return "TL|" + std::to_string(phi) + "|" + std::to_string(fl) +
                   "|" + trigR.name();
        };
        auto tr_name = [](int phi, int fl, int fr) {
            return "TR|" + std::to_string(phi) + "|" + std::to_string(fl) +
                   "|" + std::to_string(fr);
        };
        // tail readers
        for (int phi = 0; phi < order; ++phi)
            for (int fl = 0; fl < order; ++fl) {
                for (int fr = 0; fr < order; ++fr) {
                    std::string st = tr_name(phi, fl, fr);
                    b.side(st, Side::Right);
                    for (Symbol c : rtrigs) {
                        if (c == rend) {
                            if (cc.fmul(phi, fr) == fl)
                                b.rule(st, z, c, "acc", {z});
                        } else {
                            b.rule(st, z, c,
                                   tr_name(phi, fl, cc.fmul(fr, fval(c))), {z});
                        }
                    }
                }
                for (Symbol trigR : rtrigs) {
                    std::string st = tl_name(phi, fl, trigR);
                    b.side(st, Side::Left);
                    for (Symbol c : ltrigs) {
                        if (c == lend) {
                            if (trigR == rend) {
                                if (phi == fl) b.rule(st, z, c, "acc", {z});
                            } else {
                                b.rule(st, z, c, tr_name(phi, fl, fval(trigR)),
                                       {z});
                            }
                        } else {
                            b.rule(st, z, c, tl_name(phi, cc.fmul(fl, fval(c)),
                                                     trigR),
                                   {z});
                        }
                    }
                }
            }
        auto tail_entry = [&](int phi, Symbol trigL,
                              Symbol trigR) -> std::string {
            if (trigL == lend && trigR == rend)
                return phi == 0 ? std::string("acc") : std::string();
            if (trigL == lend) return tr_name(phi, 0, fval(trigR));
            return tl_name(phi, fval(trigL), trigR);
        };
        auto uname = [](size_t ti, int phi, Symbol trigL) {
            return "U|" + std::to_string(ti) + "|" + std::to_string(phi) + "|" +
                   trigL.name();
        };
        auto vname = [](size_t ti, int phi, Symbol trigR) {
            return "V|" + std::to_string(ti) + "|" + std::to_string(phi) + "|" +
                   trigR.name();
        };
        for (size_t ti = 0; ti < tb.elements.size(); ++ti)
            for (int phi = 0; phi < order; ++phi) {
                std::string r = trn(ti, phi);
                b.side(r, Side::Left);
                for (size_t ai = 0; ai < AH.size(); ++ai) {
                    std::string rm = r + "|" + AH.at(ai).name();
                    b.side(rm, Side::Right);
                    b.rule(r, z, AH.at(ai).with_tag(Tag::Sharp), rm, {z});
                    for (size_t aj = 0; aj < AH.size(); ++aj) {
                        const DeltaEntry& d = table[dix(ti, ai, aj)];
                        if (!d.ok) continue;
                        b.rule(rm, z, AH.at(aj).with_tag(Tag::Flat),
                               trn(d.tnew, cc.fmul(phi, d.f)), {z});
                    }
                    const DeltaEntry& d2 = table[dix(ti, ai, AH.size())];
                    if (d2.ok)
                        for (Symbol trigR : rtrigs)
                            b.rule(rm, z, trigR,
                                   vname(d2.tnew, cc.fmul(phi, d2.f), trigR),
                                   {z});
                }
                for (Symbol trigL : ltrigs)
                    b.rule(r, z, trigL, uname(ti, phi, trigL), {z});
                for (Symbol trigL : ltrigs) {
                    std::string u = uname(ti, phi, trigL);
                    b.side(u, Side::Right);
                    for (size_t aj = 0; aj < AH.size(); ++aj) {
                        const DeltaEntry& d = table[dix(ti, AH.size(), aj)];
                        if (!d.ok) continue;
                        b.rule(u, z, AH.at(aj).with_tag(Tag::Flat),
                               uname(d.tnew, cc.fmul(phi, d.f), trigL), {z});
                    }
                    for (Symbol trigR : rtrigs) {
                        std::string to = tail_entry(phi, trigL, trigR);
                        if (!to.empty()) b.rule(u, z, trigR, to, {z});
                    }
                }
                for (Symbol trigR : rtrigs) {
                    std::string v = vname(ti, phi, trigR);
                    b.side(v, Side::Left);
                    for (size_t ai = 0; ai < AH.size(); ++ai) {
                        const DeltaEntry& d = table[dix(ti, ai, AH.size())];
                        if (!d.ok) continue;
                        b.rule(v, z, AH.at(ai).with_tag(Tag::Sharp),
                               vname(d.tnew, cc.fmul(phi, d.f), trigR), {z});
                    }
                    for (Symbol trigL : ltrigs) {
                        std::string to = tail_entry(phi, trigL, trigR);
                        if (!to.empty()) b.rule(v, z, trigL, to, {z});
                    }
                }
            }
        b.start(trn(t0, 0), z);
        return b.build_two_tape(All, All);
    };

    // F-part comparator for the central letters: left tail product times the
    // letter's F value must equal the right tail product
    auto build_ftail = [&](const std::string& nm, int kf) {
        MachineBuilder b(nm, AcceptMode::FinalState, two_tape_alphabet(AK, AK));
        Symbol z = Symbol::intern("Z");
        b.accept("acc");
        Symbol le = Symbol::end_marker().with_tag(Tag::Sharp);
        Symbol re = Symbol::end_marker().with_tag(Tag::Flat);
        for (int fl = 0; fl < order; ++fl) {
            std::string l = "FL|" + std::to_string(fl);
            b.side(l, Side::Left);
            for (size_t li = 0; li < AK.size(); ++li) {
                Symbol c = AK.at(li);
                b.rule(l, z, c.with_tag(Tag::Sharp),
                       "FL|" + std::to_string(cc.fmul(fl, fval(c))), {z});
            }
            b.rule(l, z, le, "FR|" + std::to_string(fl) + "|0", {z});
            for (int fr = 0; fr < order; ++fr) {
                std::string r =
                    "FR|" + std::to_string(fl) + "|" + std::to_string(fr);
                b.side(r, Side::Right);
                for (size_t li = 0; li < AK.size(); ++li) {
                    Symbol c = AK.at(li);
                    b.rule(r, z, c.with_tag(Tag::Flat),
                           "FR|" + std::to_string(fl) + "|" +
                               std::to_string(cc.fmul(fr, fval(c))),
                           {z});
                }
                if (cc.fmul(fl, kf) == fr) b.rule(r, z, re, "acc", {z});
            }
        }
        b.start("FL|0", z);
        return b.build_two_tape(AK, AK);
    };

    // central letters: heads equal, coordinates shift by the letter's vector,
    // F parts by its F value
    auto k_team = [&](Symbol a, const std::vector<std::int64_t>& kv, int kf) {
        std::vector<TwoTapePda> team;
        for (int j = 0; j < n; ++j) {
            CounterPhase l{Side::Left, {}}, r{Side::Right, {}};
            for (size_t li = 0; li < AK.size(); ++li) {
                Symbol c = AK.at(li);
                int d = c == spec.z_letters[2 * j]
                            ? 1
                            : (c == spec.z_letters[2 * j + 1] ? -1 : 0);
                l.deltas[c] = d;
                r.deltas[c] = -d;
            }
            team.push_back(seq2_machine(
                "kc." + a.name() + "." + std::to_string(j),
                diagonal_machine(AH),
                block_counter("cnt." + std::to_string(j), AK, AK, {l, r},
                              static_cast<int>(kv[j]))));
        }
        if (order > 1)
            team.push_back(seq2_machine("kf." + a.name(), diagonal_machine(AH),
                                        build_ftail("ft." + a.name(), kf)));
        return team;
    };
    std::vector<std::int64_t> zero(n, 0);
    for (int i = 0; i < n; ++i) {
        std::vector<std::int64_t> e(n, 0);
        e[i] = 1;
        out.multipliers[spec.z_letters[2 * i]] = make_relation(
            "R." + spec.z_letters[2 * i].name(),
            k_team(spec.z_letters[2 * i], e, 0));
        e[i] = -1;
        out.multipliers[spec.z_letters[2 * i + 1]] = make_relation(
            "R." + spec.z_letters[2 * i + 1].name(),
            k_team(spec.z_letters[2 * i + 1], e, 0));
    }
    for (const auto& [s, idx] : spec.f_letters)
        out.multipliers[s] = make_relation("R." + s.name(), k_team(s, zero, idx));

    std::vector<TwoTapePda> shared;
    for (int i = 0; i < n; ++i) shared.push_back(build_mi(i));
    if (order > 1) shared.push_back(build_mf());
    for (size_t li = 0; li < AH.size(); ++li) {
        Symbol a = AH.at(li);
        std::vector<TwoTapePda> team;
        team.push_back(seq2_machine(
            "aut." + a.name(),
            from_two_tape_fsa("autm." + a.name(), aut.multipliers.at(a)),
            all_pairs_machine(AK, AK)));
        for (const auto& m : shared) team.push_back(m);
        out.multipliers[a] = make_relation("R." + a.name(), std::move(team));
    }

    // normal forms: acceptor word for the H part, then the K residual left
    // over after lifting that word
    Fsa acceptor = aut.acceptor;
    std::vector<Symbol> zl = spec.z_letters;
    std::vector<std::pair<Symbol, int>> fl = spec.f_letters;
    out.normal_form_of = [cc, acceptor, zl, fl, n](const GroupOracle::Elem& e) {
        auto [k, h] = central_extension_value(e);
        std::string hkey = cc.H->key(h);
        Word u;
        bool found = false;
        for (size_t cap = 4; cap <= 64 && !found; cap *= 2)
            for (const Word& w : enumerate_fsa(acceptor, cap)) {
                GroupOracle::Elem cur = cc.H->identity();
                for (size_t i = 0; i < w.length(); ++i)
                    cur = cc.H->multiply(cur, cc.H->generator(w.at(i)));
                if (cc.H->key(cur) == hkey) {
                    u = w;
                    found = true;
                    break;
                }
            }
        if (!found)
            throw std::logic_error("central_extension: no acceptor word found");
        CextCalc::E lift = cc.tau(cc.H->identity());
        for (size_t i = 0; i < u.length(); ++i)
            lift = cc.mul(lift, cc.tau(cc.H->generator(u.at(i))));
        k.v.resize(n, 0);
        for (int i = 0; i < n; ++i) {
            std::int64_t r = k.v[i] - lift.v[i];
            Symbol letter = zl[r >= 0 ? 2 * i : 2 * i + 1];
            for (std::int64_t c = 0; c < (r < 0 ? -r : r); ++c)
                u.push_back(letter);
        }
        int rf = cc.fmul(cc.finv(lift.f), k.f);
        if (rf != 0) {
            for (const auto& [s, idx] : fl)
                if (idx == rf) {
                    u.push_back(s);
                    rf = 0;
                    break;
                }
            if (rf != 0)
                throw std::logic_error("central_extension: no letter for F part");
        }
        return u;
    };
    out.nf_factor = 4;  // recalibrated by the registry
    out.nf_offset = 2;
    return out;
}

namespace {

// Rebuilds a two-tape machine over renamed tape letters; rules address input
// letters by position, so swapping the alphabet retags every rule at once.
TwoTapePda retag_tapes(TwoTapePda m, const std::map<Symbol, Symbol>& to) {
    auto mapped = [&](const Alphabet& a) {
        std::vector<Symbol> syms;
        for (Symbol s : a.symbols()) syms.push_back(to.at(s));
        return Alphabet(syms);
    };
    std::vector<Symbol> in;
    for (Symbol s : m.machine.input.symbols())
        in.push_back(s.base() == Symbol::end_marker()
                         ? s
                         : to.at(s.base()).with_tag(s.tag()));
    m.machine.input = Alphabet(in);
    m.left_alphabet = mapped(m.left_alphabet);
    m.right_alphabet = mapped(m.right_alphabet);
    return m;
}

// Delegates arithmetic to an inner oracle while exposing extra generator
// letters (the formal-inverse and degree copies of the wreath alphabet).
class ExtendedGenOracle : public GroupOracle {
public:
    ExtendedGenOracle(OraclePtr inner, Alphabet alphabet,
                      std::map<Symbol, Elem> gens)
        : GroupOracle(inner->name(), std::move(alphabet)),
          inner_(std::move(inner)) {
        for (auto& [a, e] : gens) set_generator(a, std::move(e));
    }
    Elem identity() const override { return inner_->identity(); }
    Elem multiply(const Elem& a, const Elem& b) const override {
        return inner_->multiply(a, b);
    }
    Elem invert(const Elem& a) const override { return inner_->invert(a); }
    std::string key(const Elem& a) const override { return inner_->key(a); }

private:
    OraclePtr inner_;
};

}  // namespace

PStructure wreath_product(const PStructure& sG, const PStructure& sH,
                          const ShortlexOrder& ord) {
    std::string nm = require_disjoint(sG, sH, "wreath_product");
    if (sG.alphabet.size() != 2 || sH.alphabet.size() != 2)
        throw std::invalid_argument(
            "wreath_product: both factors must be Z structures");
    if (ord.alphabet().size() != 2 ||
        !ord.alphabet().contains(sH.alphabet.at(0)) ||
        !ord.alphabet().contains(sH.alphabet.at(1)))
        throw std::invalid_argument(
            "wreath_product: ord must order sH's alphabet");

    Symbol ga = sG.alphabet.at(0), gA = sG.alphabet.at(1);
    Symbol t0 = sH.alphabet.at(0), t1 = sH.alphabet.at(1);
    // the formal-inverse (!) and degree (%) copies are fresh untagged symbols,
    // so they can serve as plain tape letters of the multiplier machines
    Symbol i0 = Symbol::intern(t0.name() + "!");
    Symbol i1 = Symbol::intern(t1.name() + "!");
    Symbol c0 = Symbol::intern(t0.name() + "%");
    Symbol c1 = Symbol::intern(t1.name() + "%");
    Alphabet All({ga, gA, t0, t1, i0, i1, c0, c1});
    std::vector<Symbol> allv = All.symbols();
    std::vector<Symbol> Hs{t0, t1}, Gs{ga, gA}, Is{i0, i1}, Os{c0, c1};
    auto is_in = [](const std::vector<Symbol>& v, Symbol s) {
        return std::find(v.begin(), v.end(), s) != v.end();
    };
    auto inv_of = [&](Symbol h) { return h == t0 ? i0 : i1; };
    auto circ_of = [&](Symbol h) { return h == t0 ? c0 : c1; };
    auto ord_less = [&](Symbol x, Symbol y) {
        return ord.alphabet().index_of(x) < ord.alphabet().index_of(y);
    };
    Symbol Z = Symbol::intern("Z"), C = Symbol::intern("*");
    Symbol EM = Symbol::end_marker();
    Symbol es = EM.with_tag(Tag::Sharp), ef = EM.with_tag(Tag::Flat);
    auto shp = [](Symbol s) { return s.with_tag(Tag::Sharp); };
    auto flt = [](Symbol s) { return s.with_tag(Tag::Flat); };
    std::vector<Symbol> held = allv;
    held.push_back(EM);
    auto sharp_of = [&](Symbol x) { return x == EM ? es : shp(x); };
    auto flat_of = [&](Symbol y) { return y == EM ? ef : flt(y); };
    auto name_of = [&](Symbol x) {
        return x == EM ? std::string("$") : x.name();
    };

    PStructure out;
    out.name = nm;
    out.alphabet = All;

    // --- normal-form language: blocks u_i v_i u_i^-1 with nonempty pure-run
    // v_i, matching formal-inverse runs, strictly increasing u_i, final u_0
    // written in degree letters.  Three intersected machines.

    // (1) shape: the class regex [G-run]? (H-run G-run I-run)* O-run with the
    // I-run base tied to the preceding H letter.
    Dpda shape = [&] {
        MachineBuilder b(nm + ".shape", AcceptMode::FinalState, All);
        b.start("s0", Z);
        b.accept("s0");
        std::vector<Symbol> keep{Z};
        for (Symbol g : Gs) {
            b.accept("gl|" + g.name());
            b.rule("s0", Z, g, "gl|" + g.name(), keep);
            b.rule("gl|" + g.name(), Z, g, "gl|" + g.name(), keep);
        }
        for (Symbol h : Hs) {
            std::string u = "u|" + h.name(), i = "i|" + h.name();
            b.rule("s0", Z, h, u, keep);
            for (Symbol g : Gs) b.rule("gl|" + g.name(), Z, h, u, keep);
            b.rule(u, Z, h, u, keep);
            for (Symbol g : Gs) {
                std::string v = "v|" + h.name() + "|" + g.name();
                b.rule(u, Z, g, v, keep);
                b.rule(v, Z, g, v, keep);
                b.rule(v, Z, inv_of(h), i, keep);
            }
            b.accept(i);
            b.rule(i, Z, inv_of(h), i, keep);
            for (Symbol h2 : Hs) b.rule(i, Z, h2, "u|" + h2.name(), keep);
        }
        for (Symbol c : Os) {
            std::string o = "o|" + c.name();
            b.accept(o);
            b.rule("s0", Z, c, o, keep);
            for (Symbol g : Gs) b.rule("gl|" + g.name(), Z, c, o, keep);
            for (Symbol h : Hs) b.rule("i|" + h.name(), Z, c, o, keep);
            b.rule(o, Z, c, o, keep);
        }
        return b.build();
    }();

    // (2) matcher: each formal-inverse run is exactly as long as its u-run.
    Symbol st0 = Symbol::intern(t0.name() + "'");
    Symbol st1 = Symbol::intern(t1.name() + "'");
    auto star_of = [&](Symbol h) { return h == t0 ? st0 : st1; };
    Dpda matcher = [&] {
        MachineBuilder b(nm + ".match", AcceptMode::FinalState, All);
        auto base_stk = [&](Symbol s) {
            return (s == t0 || s == st0) ? t0 : t1;
        };
        std::vector<Symbol> run_tops{t0, t1, st0, st1};
        b.start("m0", Z);
        for (const char* a : {"m0", "miz", "mv0", "mo"}) b.accept(a);
        for (const char* from : {"m0", "miz", "mv0"})
            for (Symbol h : Hs) b.rule(from, Z, h, "mu", {Z, star_of(h)});
        for (Symbol g : Gs) {
            b.rule("m0", Z, g, "mv0", {Z});
            b.rule("mv0", Z, g, "mv0", {Z});
        }
        for (const char* from : {"m0", "miz", "mv0", "mo"})
            for (Symbol c : Os) b.rule(from, Z, c, "mo", {Z});
        for (Symbol s : run_tops) {
            bool starred = s == st0 || s == st1;
            for (Symbol h : Hs) b.rule("mu", s, h, "mu", {s, h});
            for (Symbol g : Gs) {
                b.rule("mu", s, g, "mv", {s});
                b.rule("mv", s, g, "mv", {s});
            }
            Symbol i = inv_of(base_stk(s));
            b.rule("mv", s, i, starred ? "miz" : "mi", {});
            b.rule("mi", s, i, starred ? "miz" : "mi", {});
        }
        return b.build();
    }();

    // (3) order: u_i < u_{i+1} in ord-shortlex; the I-run pushes its base
    // letters (a marker at the bottom), the next u-run pops and compares.
    Dpda order = [&] {
        MachineBuilder b(nm + ".order", AcceptMode::FinalState, All);
        std::vector<Symbol> run_tops{t0, t1, st0, st1};
        auto base_stk = [&](Symbol s) {
            return (s == t0 || s == st0) ? t0 : t1;
        };
        auto cmp = [&](Symbol a, Symbol h) -> std::string {
            if (a == h) return "eq";
            return ord_less(a, h) ? "lt" : "gt";
        };
        b.start("o0", Z);
        for (const char* a : {"o0", "ov", "opush", "odone"}) b.accept(a);
        for (Symbol h : Hs) {
            b.rule("o0", Z, h, "opass", {Z});
            b.rule("opass", Z, h, "opass", {Z});
            b.rule("ov", Z, h, "opass", {Z});  // empty previous u (first block)
        }
        for (Symbol g : Gs) {
            b.rule("o0", Z, g, "ov", {Z});
            b.rule("opass", Z, g, "ov", {Z});
            b.rule("ov", Z, g, "ov", {Z});
        }
        for (Symbol c : Os) {
            b.rule("o0", Z, c, "odone", {Z});
            b.rule("ov", Z, c, "odone", {Z});
        }
        for (Symbol i : Is) b.rule("ov", Z, i, "opush", {Z, star_of(i == i0 ? t0 : t1)});
        for (Symbol s : run_tops) {
            bool starred = s == st0 || s == st1;
            for (Symbol i : Is)
                b.rule("opush", s, i, "opush", {s, i == i0 ? t0 : t1});
            for (Symbol c : Os) b.rule("opush", s, c, "odone", {s});
            for (Symbol h : Hs)
                b.rule("opush", s, h,
                       (starred ? "ostar|" : "ocmp|") + cmp(base_stk(s), h), {});
        }
        for (const std::string& st : {"eq", "lt", "gt"}) {
            for (Symbol s : run_tops) {
                bool starred = s == st0 || s == st1;
                for (Symbol h : Hs) {
                    std::string nx = st == "eq" ? cmp(base_stk(s), h) : st;
                    b.rule("ocmp|" + st, s, h,
                           (starred ? "ostar|" : "ocmp|") + nx, {});
                }
            }
            for (Symbol h : Hs) b.rule("ostar|" + st, Z, h, "opass", {Z});
        }
        for (Symbol g : Gs) b.rule("ostar|lt", Z, g, "ov", {Z});
        for (Symbol s : {Z, t0, t1, st0, st1})
            for (Symbol c : Os) b.rule("odone", s, c, "odone", {s});
        return b.build();
    }();

    out.language = make_language(nm + "-nf", {shape, matcher, order});

    // --- G-letter multipliers.  Both machines assume the pair lies in L x L.
    // m0a checks the structural edit (one gam inserted into / gbar deleted
    // from a lamp block, everything else equal up to the block realignment);
    // m0b checks that the affected block's u-run equals the final degree run.
    auto build_m0a = [&](Symbol gam, Symbol gbar) {
        MachineBuilder b(nm + ".m0a." + gam.name(), AcceptMode::FinalState,
                         two_tape_alphabet(All, All));
        b.start("s|st", Z);
        b.accept("acc");
        std::vector<std::string> pcs = {"st",
                                        "P:" + t0.name(),
                                        "P:" + t1.name(),
                                        "G:" + ga.name(),
                                        "G:" + gA.name(),
                                        "I",
                                        "O"};
        auto pc_of = [&](Symbol x) -> std::string {
            if (is_in(Hs, x)) return "P:" + x.name();
            if (is_in(Gs, x)) return "G:" + x.name();
            return is_in(Is, x) ? "I" : "O";
        };
        // scan: hold a w letter, read the paired w' letter
        for (const auto& pc : pcs) {
            b.side("s|" + pc, Side::Left);
            for (Symbol x : held) {
                std::string h = "s|" + pc + "|" + name_of(x);
                b.rule("s|" + pc, Z, sharp_of(x), h, {Z});
                b.side(h, Side::Right);
            }
        }
        // lockstep tail after a branch has re-aligned the tapes
        b.side("e", Side::Left);
        for (Symbol x : held) {
            std::string h = "e|" + name_of(x);
            b.rule("e", Z, sharp_of(x), h, {Z});
            b.side(h, Side::Right);
            b.rule(h, Z, x == EM ? ef : flt(x), x == EM ? "acc" : "e", {Z});
        }
        // one-letter modification of a lamp run (grow on w', shrink on w)
        for (Symbol x : held) {
            std::string mg = "mg|" + name_of(x);
            b.side(mg, Side::Right);
            b.rule(mg, Z, x == EM ? ef : flt(x), x == EM ? "acc" : "e", {Z});
            std::string ms = "ms|" + name_of(x);
            b.side(ms, Side::Left);
            b.rule(ms, Z, x == EM ? es : shp(x), x == EM ? "acc" : "e", {Z});
        }
        // deletion realignment: count w''s longer run, match w's inverse run,
        // pop through w's next run, then pair up and lock step
        for (Symbol l : Hs) {
            std::string da = "da|" + l.name();
            b.side(da, Side::Right);
            b.rule(da, C, flt(l), da, {C, C});
            for (Symbol y : held)
                if (y != l)
                    b.rule(da, C, flat_of(y),
                           "da2|" + l.name() + "|" + l.name() + "|" + name_of(y),
                           {C});
        }
        for (Symbol li : Hs)
            for (Symbol lr : Hs)
                for (Symbol hy : held) {
                    std::string da2 = "da2|" + li.name() + "|" + lr.name() +
                                      "|" + name_of(hy);
                    b.side(da2, Side::Left);
                    for (Symbol top : {Z, C})
                        b.rule(da2, top, shp(inv_of(li)), da2, {top, C});
                    b.rule(da2, C, shp(lr),
                           "da3|" + lr.name() + "|" + name_of(hy), {});
                }
        for (Symbol lr : Hs)
            for (Symbol hy : held) {
                std::string da3 = "da3|" + lr.name() + "|" + name_of(hy);
                b.side(da3, Side::Left);
                b.rule(da3, C, shp(lr), da3, {});
                b.rule(da3, Z, hy == EM ? es : shp(hy), hy == EM ? "acc" : "e",
                       {Z});
            }
        // insertion realignment (mirror)
        for (Symbol l : Hs) {
            std::string ia = "ia|" + l.name();
            b.side(ia, Side::Left);
            b.rule(ia, C, shp(l), ia, {C, C});
            for (Symbol x : held)
                if (x != l)
                    b.rule(ia, C, sharp_of(x),
                           "ia2|" + l.name() + "|" + l.name() + "|" + name_of(x),
                           {C});
        }
        for (Symbol li : Hs)
            for (Symbol lr : Hs)
                for (Symbol hx : held) {
                    std::string ia2 = "ia2|" + li.name() + "|" + lr.name() +
                                      "|" + name_of(hx);
                    b.side(ia2, Side::Right);
                    for (Symbol top : {Z, C})
                        b.rule(ia2, top, flt(inv_of(li)), ia2, {top, C});
                    b.rule(ia2, C, flt(lr),
                           "ia3|" + lr.name() + "|" + name_of(hx), {});
                }
        for (Symbol lr : Hs)
            for (Symbol hx : held) {
                std::string ia3 = "ia3|" + lr.name() + "|" + name_of(hx);
                b.side(ia3, Side::Right);
                b.rule(ia3, C, flt(lr), ia3, {});
                b.rule(ia3, Z, hx == EM ? ef : flt(hx), hx == EM ? "acc" : "e",
                       {Z});
            }
        // divergence of two fresh runs: interleave with a signed net counter,
        // drain the longer side, then resolve to deletion or insertion by the
        // shortlex comparison of the runs
        for (Symbol l : Hs) {
            Symbol l2 = l == t0 ? t1 : t0;
            std::string P = "|" + l.name() + "|" + l2.name();
            bool del_z = ord_less(l, l2);  // equal lengths: lex decides
            auto deletes = [&](const std::string& s) {
                return s == "m" || (s == "z" && del_z);
            };
            for (const std::string& s : {"z", "p", "m"}) {
                std::string L = "ppL" + P + "|" + s, R = "ppR" + P + "|" + s;
                b.side(L, Side::Left);
                b.side(R, Side::Right);
                if (s == "z") b.rule(L, Z, shp(l), "ppR" + P + "|p", {Z, C});
                if (s == "p") b.rule(L, C, shp(l), "ppR" + P + "|p", {C, C});
                if (s == "m") b.rule(L, C, shp(l), "ppRr" + P, {});
                if (s == "z") b.rule(R, Z, flt(l2), "ppL" + P + "|m", {Z, C});
                if (s == "m") b.rule(R, C, flt(l2), "ppL" + P + "|m", {C, C});
                if (s == "p") b.rule(R, C, flt(l2), "ppLr" + P, {});
                for (Symbol x : held) {
                    if (x != l)
                        for (Symbol top : {Z, C})
                            b.rule(L, top, sharp_of(x),
                                   "dq" + P + "|" + name_of(x) + "|" + s, {top});
                    if (x != l2)
                        for (Symbol top : {Z, C})
                            b.rule(R, top, flat_of(x),
                                   "dw" + P + "|" + name_of(x) + "|" + s, {top});
                }
            }
            b.eps("ppRr" + P, C, "ppR" + P + "|m", {C});
            b.eps("ppRr" + P, Z, "ppR" + P + "|z", {Z});
            b.eps("ppLr" + P, C, "ppL" + P + "|p", {C});
            b.eps("ppLr" + P, Z, "ppL" + P + "|z", {Z});
            // drain w (w' exited first holding hy)
            for (Symbol hy : held) {
                if (hy == l2) continue;
                std::string H = P + "|" + name_of(hy);
                for (const std::string& s : {"z", "p", "m"}) {
                    std::string D = "dw" + H + "|" + s;
                    b.side(D, Side::Left);
                    if (s == "z") b.rule(D, Z, shp(l), "dw" + H + "|p", {Z, C});
                    if (s == "p") b.rule(D, C, shp(l), "dw" + H + "|p", {C, C});
                    if (s == "m") b.rule(D, C, shp(l), "dwr" + H, {});
                    if (deletes(s)) {
                        for (Symbol top : {Z, C})
                            b.rule(D, top, shp(gbar),
                                   "da2" + P + "|" + name_of(hy), {top});
                    } else if (hy == gam) {
                        for (Symbol hx : held)
                            if (hx != l)
                                for (Symbol top : {Z, C})
                                    b.rule(D, top, sharp_of(hx),
                                           "ia2|" + l2.name() + "|" + l.name() +
                                               "|" + name_of(hx),
                                           {top});
                    }
                }
                b.eps("dwr" + H, C, "dw" + H + "|m", {C});
                b.eps("dwr" + H, Z, "dw" + H + "|z", {Z});
            }
            // drain w' (w exited first holding hx)
            for (Symbol hx : held) {
                if (hx == l) continue;
                std::string H = P + "|" + name_of(hx);
                for (const std::string& s : {"z", "p", "m"}) {
                    std::string D = "dq" + H + "|" + s;
                    b.side(D, Side::Right);
                    if (s == "z") b.rule(D, Z, flt(l2), "dq" + H + "|m", {Z, C});
                    if (s == "m") b.rule(D, C, flt(l2), "dq" + H + "|m", {C, C});
                    if (s == "p") b.rule(D, C, flt(l2), "dqr" + H, {});
                    if (deletes(s)) {
                        if (hx == gbar)
                            for (Symbol hy : held)
                                if (hy != l2)
                                    for (Symbol top : {Z, C})
                                        b.rule(D, top, flat_of(hy),
                                               "da2" + P + "|" + name_of(hy),
                                               {top});
                    } else {
                        for (Symbol top : {Z, C})
                            b.rule(D, top, flt(gam),
                                   "ia2|" + l2.name() + "|" + l.name() + "|" +
                                       name_of(hx),
                                   {top});
                    }
                }
                b.eps("dqr" + H, C, "dq" + H + "|p", {C});
                b.eps("dqr" + H, Z, "dq" + H + "|z", {Z});
            }
        }
        // deletion / insertion of the last block before the degree run
        for (Symbol l : Hs)
            for (Symbol y : held) {
                if (!(y == EM || is_in(Os, y))) continue;
                std::string dc = "dc|" + l.name() + "|" + name_of(y);
                std::string dc2 = "dc2|" + l.name() + "|" + name_of(y);
                b.side(dc, Side::Left);
                b.side(dc2, Side::Left);
                b.rule(dc, Z, shp(l), dc, {Z});
                b.rule(dc, Z, shp(gbar), dc2, {Z});
                b.rule(dc2, Z, shp(inv_of(l)), dc2, {Z});
                b.rule(dc2, Z, y == EM ? es : shp(y), y == EM ? "acc" : "e",
                       {Z});
            }
        for (Symbol l : Hs)
            for (Symbol x : held) {
                if (!(x == EM || is_in(Os, x))) continue;
                std::string ic = "ic|" + l.name() + "|" + name_of(x);
                std::string ic2 = "ic2|" + l.name() + "|" + name_of(x);
                b.side(ic, Side::Right);
                b.side(ic2, Side::Right);
                b.rule(ic, Z, flt(l), ic, {Z});
                b.rule(ic, Z, flt(gam), ic2, {Z});
                b.rule(ic2, Z, flt(inv_of(l)), ic2, {Z});
                b.rule(ic2, Z, x == EM ? ef : flt(x), x == EM ? "acc" : "e",
                       {Z});
            }
        // the scan dispatch
        for (const auto& pc : pcs)
            for (Symbol x : held) {
                std::string h = "s|" + pc + "|" + name_of(x);
                bool xH = x != EM && is_in(Hs, x);
                bool xO = x != EM && is_in(Os, x);
                bool xEnd = x == EM;
                if (!xEnd) b.rule(h, Z, flt(x), "s|" + pc_of(x), {Z});
                for (Symbol y : held) {
                    if (!xEnd && y == x) continue;
                    bool yH = y != EM && is_in(Hs, y);
                    std::string target;
                    std::vector<Symbol> push{Z};
                    if (pc == "G:" + gam.name() && y == gam) {
                        target = "mg|" + name_of(x);
                    } else if (x == gbar &&
                               (pc == "G:" + gbar.name() || pc == "st")) {
                        target = "ms|" + name_of(y);
                    } else if (pc == "st" && y == gam) {
                        target = "mg|" + name_of(x);
                    } else if (yH && pc == "P:" + y.name() && x == gbar) {
                        target = "da|" + y.name();
                        push = {Z, C};
                    } else if (xH && pc == "P:" + x.name() && y == gam) {
                        target = "ia|" + x.name();
                        push = {Z, C};
                    } else if (xH && yH) {
                        target = "ppL|" + x.name() + "|" + y.name() + "|z";
                    } else if (xH && (y == EM || is_in(Os, y))) {
                        target = "dc|" + x.name() + "|" + name_of(y);
                    } else if ((xO || xEnd) && yH) {
                        target = "ic|" + y.name() + "|" + name_of(x);
                    }
                    if (!target.empty())
                        b.rule(h, Z, flat_of(y), target, push);
                }
            }
        return b.build_two_tape(All, All);
    };

    auto build_m0b = [&] {
        MachineBuilder b(nm + ".m0b", AcceptMode::FinalState,
                         two_tape_alphabet(All, All));
        b.start("b|0", Z);
        b.accept("acc");
        std::vector<Symbol> scan_tops{Z, t0, t1};
        // scan keeps the most recent shared u-run on the stack (cleared and
        // refilled whenever a new shared run starts)
        for (const std::string& n : {"0", "1"}) {
            std::string S = "b|" + n;
            b.side(S, Side::Left);
            for (Symbol x : held)
                for (Symbol top : scan_tops)
                    b.rule(S, top, sharp_of(x), "bh|" + n + "|" + name_of(x),
                           {top});
        }
        for (Symbol x : Hs) {
            std::string cs = "bclr|" + x.name();
            for (Symbol top : Hs) b.eps(cs, top, cs, {});
            b.eps(cs, Z, "b|1", {Z, x});
        }
        for (const std::string& n : {"0", "1"})
            for (Symbol x : held) {
                std::string h = "bh|" + n + "|" + name_of(x);
                b.side(h, Side::Right);
                bool xH = x != EM && is_in(Hs, x);
                bool xO = x != EM && is_in(Os, x);
                bool xEnd = x == EM;
                for (Symbol y : held) {
                    bool yH = y != EM && is_in(Hs, y);
                    bool yO = y != EM && is_in(Os, y);
                    if (!xEnd && y == x) {  // lockstep continue
                        for (Symbol top : scan_tops) {
                            if (xH && n == "1")
                                b.rule(h, top, flt(x), "b|1", {top, x});
                            else if (xH)
                                b.rule(h, top, flt(x), "bclr|" + x.name(),
                                       {top});
                            else
                                b.rule(h, top, flt(x), "b|0", {top});
                        }
                        continue;
                    }
                    std::string fl = y == EM ? "D" : "W";
                    if (xH && yH) {
                        for (Symbol top : scan_tops)
                            b.rule(h, top, flt(y),
                                   "bmclr|" + x.name() + "|" + y.name(), {top});
                    } else if (xH && (yO || y == EM)) {
                        for (Symbol top : scan_tops)
                            b.rule(h, top, flat_of(y),
                                   "bdclr|" + x.name() + "|" + fl, {top});
                    } else if (xO && yH) {
                        for (Symbol top : scan_tops)
                            b.rule(h, top, flt(y),
                                   "biclr|" + y.name() + "|" + x.name(), {top});
                    } else if (xEnd) {
                        // only the trailing one-letter-block edit can be valid
                        if (y != EM && !yH) b.rule(h, Z, flat_of(y), "drw", {Z});
                    } else if (xO) {
                        for (Symbol top : scan_tops)
                            b.rule(h, top, flat_of(y),
                                   "bpo|" + x.name() + "|" + fl, {top});
                    } else {  // x in G or I: the frozen stack is the answer
                        for (Symbol top : scan_tops)
                            b.rule(h, top, flat_of(y), "drv|" + fl, {top});
                    }
                }
            }
        // both fresh runs diverge: stack ends as the shorter (shortlex-lesser)
        // of the two, one counter symbol per completed interleave round
        for (Symbol l : Hs) {
            Symbol l2 = l == t0 ? t1 : t0;
            std::string P = "|" + l.name() + "|" + l2.name();
            std::string mc = "bmclr" + P;
            for (Symbol top : {t0, t1}) b.eps(mc, top, mc, {});
            b.eps(mc, Z, "bmL" + P, {Z, C});
            std::string L = "bmL" + P, R = "bmR" + P, W0 = "bmW0" + P;
            std::string DQ = "bmdq" + P, DW = "bmdw" + P;
            b.side(L, Side::Left);
            b.side(R, Side::Right);
            b.side(W0, Side::Right);
            b.side(DQ, Side::Right);
            b.side(DW, Side::Left);
            b.rule(L, C, shp(l), R, {C});
            b.rule(R, C, flt(l2), L, {C, C});
            for (Symbol x : held)
                if (x != l && x != EM) b.rule(L, C, sharp_of(x), W0, {C});
            b.rule(W0, C, flt(l2), DQ, {C});
            Symbol tie = ord_less(l, l2) ? l : l2;
            for (Symbol y : held)
                if (y != l2 && y != EM)
                    b.rule(W0, C, flat_of(y), "drm|" + tie.name(), {C});
            b.rule(DQ, C, flt(l2), DQ, {C});
            for (Symbol y : held)
                if (y != l2 && y != EM)
                    b.rule(DQ, C, flat_of(y), "drm|" + l.name(), {C});
            for (Symbol y : held)
                if (y != l2 && y != EM) b.rule(R, C, flat_of(y), DW, {C});
            b.rule(DW, C, shp(l), DW, {C});
            for (Symbol x : held)
                if (x != l && x != EM)
                    b.rule(DW, C, sharp_of(x), "drm|" + l2.name(), {C});
        }
        // deletion / insertion of the last block: collect the fresh run
        for (Symbol x : Hs)
            for (const std::string& fl : {"W", "D"}) {
                std::string cs = "bdclr|" + x.name() + "|" + fl;
                for (Symbol top : Hs) b.eps(cs, top, cs, {});
                std::string dc = "bdc|" + x.name() + "|" + fl;
                b.eps(cs, Z, dc, {Z, x});
                b.side(dc, Side::Left);
                b.rule(dc, x, shp(x), dc, {x, x});
                for (Symbol g : Gs) b.rule(dc, x, shp(g), "drv|" + fl, {x});
            }
        for (Symbol y : Hs)
            for (Symbol x : Os) {
                std::string cs = "biclr|" + y.name() + "|" + x.name();
                for (Symbol top : Hs) b.eps(cs, top, cs, {});
                std::string ic = "bic|" + y.name() + "|" + x.name();
                b.eps(cs, Z, ic, {Z, y});
                b.side(ic, Side::Right);
                b.rule(ic, y, flt(y), ic, {y, y});
                for (Symbol g : Gs)
                    b.rule(ic, y, flt(g), "bpo|" + x.name() + "|W", {y});
            }
        // pending first degree letter of w, then the drive phase: skip w to
        // its degree run, pop-compare it against the stack, drain w'
        for (Symbol x : Os)
            for (const std::string& fl : {"W", "D"}) {
                std::string po = "bpo|" + x.name() + "|" + fl;
                b.eps(po, x == c0 ? t0 : t1, "drvO|" + fl, {});
            }
        for (const std::string& fl : {"W", "D"}) {
            std::string dv = "drv|" + fl, dvo = "drvO|" + fl;
            std::string done = fl == "W" ? "drw" : "acc";
            b.side(dv, Side::Left);
            b.side(dvo, Side::Left);
            for (Symbol top : scan_tops)
                for (Symbol x : allv)
                    if (!is_in(Os, x)) b.rule(dv, top, shp(x), dv, {top});
            for (Symbol top : Hs) b.rule(dv, top, shp(circ_of(top)), dvo, {});
            b.rule(dv, Z, es, done, {Z});
            for (Symbol top : Hs) b.rule(dvo, top, shp(circ_of(top)), dvo, {});
            b.rule(dvo, Z, es, done, {Z});
        }
        for (Symbol lm : Hs) {
            std::string dm = "drm|" + lm.name(), dmo = "drmO|" + lm.name();
            b.side(dm, Side::Left);
            b.side(dmo, Side::Left);
            for (Symbol x : allv)
                if (!is_in(Os, x)) b.rule(dm, C, shp(x), dm, {C});
            b.rule(dm, C, shp(circ_of(lm)), dmo, {});
            b.rule(dmo, C, shp(circ_of(lm)), dmo, {});
            b.rule(dmo, Z, es, "drw", {Z});
        }
        b.side("drw", Side::Right);
        for (Symbol top : {Z, t0, t1, C}) {
            for (Symbol y : allv) b.rule("drw", top, flt(y), "drw", {top});
            b.rule("drw", top, ef, "acc", {top});
        }
        return b.build_two_tape(All, All);
    };

    TwoTapePda m0b = build_m0b();
    out.multipliers[ga] =
        make_relation("R." + ga.name(), {build_m0a(ga, gA), m0b});
    out.multipliers[gA] =
        make_relation("R." + gA.name(), {build_m0a(gA, ga), m0b});

    // --- H-letter multipliers: the pair differs only inside the degree runs,
    // and the head counters of sH (retagged to degree letters) decide there.
    Alphabet runO({c0, c1});
    Alphabet other6({ga, gA, t0, t1, i0, i1});
    std::map<Symbol, Symbol> to_circ{{t0, c0}, {t1, c1}};
    for (Symbol h : Hs) {
        std::vector<TwoTapePda> team;
        team.push_back(prefix_comparator("M0." + h.name(), runO, other6));
        for (const auto& comp : sH.multipliers.at(h).machines)
            team.push_back(last_block_machine(comp.machine.name + ".last",
                                              retag_tapes(comp, to_circ),
                                              other6));
        out.multipliers[h] = make_relation("R." + h.name(), std::move(team));
    }
    // the copies evaluate to the same elements as (the inverses of) the
    // originals, so their relations coincide
    auto alias = [&](Symbol copy, Symbol orig) {
        AtpplRelation r = out.multipliers.at(orig);
        r.name = "R." + copy.name();
        out.multipliers[copy] = std::move(r);
    };
    alias(i0, t1);
    alias(i1, t0);
    alias(c0, t0);
    alias(c1, t1);

    OraclePtr inner = wreath_oracle(sG.oracle, sH.oracle);
    std::map<Symbol, GroupOracle::Elem> gens;
    for (Symbol s : {ga, gA, t0, t1}) gens[s] = inner->generator(s);
    gens[i0] = inner->invert(inner->generator(t0));
    gens[i1] = inner->invert(inner->generator(t1));
    gens[c0] = inner->generator(t0);
    gens[c1] = inner->generator(t1);
    out.oracle =
        std::make_shared<ExtendedGenOracle>(inner, All, std::move(gens));

    if (sG.normal_form_of && sH.normal_form_of) {
        PStructure sg = sG, sh = sH;
        ShortlexOrder o2 = ord;
        Symbol I0 = i0, I1 = i1, C0 = c0, C1 = c1, T0 = t0;
        out.normal_form_of = [sg, sh, o2, I0, I1, C0, C1,
                              T0](const GroupOracle::Elem& e) {
            auto [lamps, head] = wreath_value(e);
            std::vector<std::pair<Word, Word>> blocks;
            for (const auto& [key, pr] : lamps)
                blocks.push_back({sh.normal_form_of(pr.first),
                                  sg.normal_form_of(pr.second)});
            std::sort(blocks.begin(), blocks.end(),
                      [&o2](const auto& x, const auto& y) {
                          return o2.less(x.first, y.first);
                      });
            Word w;
            for (const auto& [u, v] : blocks) {
                for (size_t i = 0; i < u.length(); ++i) w.push_back(u.at(i));
                for (size_t i = 0; i < v.length(); ++i) w.push_back(v.at(i));
                for (size_t i = u.length(); i-- > 0;)
                    w.push_back(u.at(i) == T0 ? I0 : I1);
            }
            Word uh = sh.normal_form_of(head);
            for (size_t i = 0; i < uh.length(); ++i)
                w.push_back(uh.at(i) == T0 ? C0 : C1);
            return w;
        };
    }
    out.nf_factor = 4;  // recalibrated by the registry
    out.nf_offset = 2;
    return out;
}

PStructure virtually_semidirect(const IntegerMatrix& A,
                                const TransversalSpec& T) {
    std::int64_t d = A.det();
    if (d != 1 && d != -1)
        throw std::invalid_argument("virtually_semidirect: determinant not +-1");
    PStructure out;
    out.name = T.name;
    out.alphabet = T.alphabet;
    out.language = make_language(
        T.name + "-nf", {fsa_to_dpda(T.language, T.name + "-nf")});
    out.oracle = T.oracle;
    for (size_t li = 0; li < T.alphabet.size(); ++li) {
        Symbol a = T.alphabet.at(li);
        auto it = T.conditions.find(a);
        if (it == T.conditions.end())
            throw std::invalid_argument(
                "virtually_semidirect: no conditions for " + a.name());
        std::vector<TwoTapePda> team;
        int k = 0;
        for (const LinearCondition& c : it->second) {
            CounterPhase l{Side::Left, {}}, r{Side::Right, {}};
            for (size_t j = 0; j < T.alphabet.size(); ++j) {
                Symbol s = T.alphabet.at(j);
                auto lv = c.left.find(s);
                auto rv = c.right.find(s);
                l.deltas[s] = lv == c.left.end() ? 0 : lv->second;
                r.deltas[s] = rv == c.right.end() ? 0 : rv->second;
            }
            team.push_back(block_counter(
                "cond." + a.name() + "." + std::to_string(k++), T.alphabet,
                T.alphabet, {l, r}, c.offset));
        }
        out.multipliers[a] = make_relation("R." + a.name(), std::move(team));
    }
    out.normal_form_of = T.normal_form_of;
    out.nf_factor = 4;  // recalibrated by the registry
    out.nf_offset = 2;
    return out;
}

}  // namespace ppd
