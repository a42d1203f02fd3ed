/* unitriangular.cpp -- U(n) / H(n) arithmetic, normal forms, and structures. */

#include "ppd/unitriangular.hpp"

#include <stdexcept>

#include "ppd/machine_builder.hpp"

namespace ppd {

namespace {

using Coord = std::pair<int, int>;  // (i, j), 1-based, i < j

// Exponent coordinates of a block normal form, in block (= word) order, with
// one letter pair per coordinate.
struct CoordSystem {
    int n = 0;  // ambient matrix degree
    std::vector<Coord> order;
    std::map<Coord, size_t> index;
    std::vector<std::pair<Symbol, Symbol>> letters;  // (letter, inverse)
    Alphabet alphabet;
    std::vector<std::pair<int, int>> windows;  // (lo, hi), outermost first
};

// Window (lo, hi) hosts the H-part coordinates x: (lo, j), y: (i, hi),
// z: (lo, hi); nested windows cover each pair i < j exactly once.
void push_window_coords(int lo, int hi, std::vector<Coord>& out) {
    for (int j = lo + 1; j < hi; ++j) out.emplace_back(lo, j);
    for (int i = lo + 1; i < hi; ++i) out.emplace_back(i, hi);
    out.emplace_back(lo, hi);
}

CoordSystem make_coords(int n, const std::vector<Coord>& order,
                        const std::function<std::pair<std::string, std::string>(
                            Coord)>& names) {
    CoordSystem cs;
    cs.n = n;
    cs.order = order;
    std::vector<Symbol> syms;
    for (size_t c = 0; c < order.size(); ++c) {
        cs.index[order[c]] = c;
        auto nm = names(order[c]);
        Symbol pos = Symbol::intern(nm.first), inv = Symbol::intern(nm.second);
        cs.letters.emplace_back(pos, inv);
        syms.push_back(pos);
        syms.push_back(inv);
    }
    cs.alphabet = Alphabet(syms);
    return cs;
}

// Right multiplication by 1 + eps*e_ij acts on the exponent vector as an
// affine map c' = A c + b: pushing the generator left through each outer
// window's H-block conjugates that block (p'_j = p_j + eps p_i,
// q'_i = q_i - eps q_j), and merging into its own window adds eps to its own
// exponent, with r' = r - eps q_j for the x-type letters.
struct AffineAction {
    std::vector<std::vector<int>> A;
    std::vector<int> b;
};

AffineAction action_of(const CoordSystem& cs, int i, int j, int eps) {
    size_t k = cs.order.size();
    AffineAction act;
    act.A.assign(k, std::vector<int>(k, 0));
    for (size_t c = 0; c < k; ++c) act.A[c][c] = 1;
    act.b.assign(k, 0);
    auto add = [&](Coord target, Coord source, int coeff) {
        act.A[cs.index.at(target)][cs.index.at(source)] += coeff;
    };
    int win = std::min(i, cs.n + 1 - j);
    for (int w = 1; w < win; ++w) {
        int lo = w, hi = cs.n + 1 - w;
        add({lo, j}, {lo, i}, eps);
        add({i, hi}, {j, hi}, -eps);
    }
    act.b[cs.index.at({i, j})] += eps;
    int lo = win, hi = cs.n + 1 - win;
    if (i == lo && j < hi) add({lo, hi}, {j, hi}, -eps);
    return act;
}

// The block language: a sign-pure run per coordinate, in coordinate order,
// every run optional.  State 0 reads nothing yet; 1+2c+s is inside block c
// with sign s.
Fsa block_language_fsa(const CoordSystem& cs) {
    size_t k = cs.order.size();
    int dead = static_cast<int>(2 * k) + 1;
    Fsa f;
    f.alphabet = cs.alphabet;
    f.num_states = dead + 1;
    f.transitions.assign(static_cast<size_t>(f.num_states) * 2 * k, dead);
    f.start = 0;
    f.accepting.assign(static_cast<size_t>(f.num_states), true);
    f.accepting[static_cast<size_t>(dead)] = false;
    auto st = [](size_t c, int s) { return 1 + 2 * static_cast<int>(c) + s; };
    auto set = [&](int from, size_t letter, int to) {
        f.transitions[static_cast<size_t>(from) * 2 * k + letter] = to;
    };
    for (size_t c = 0; c < k; ++c)
        for (int s = 0; s < 2; ++s) {
            set(0, 2 * c + static_cast<size_t>(s), st(c, s));
            set(st(c, s), 2 * c + static_cast<size_t>(s), st(c, s));
            for (size_t d = 0; d < c; ++d)
                for (int s2 = 0; s2 < 2; ++s2)
                    set(st(d, s2), 2 * c + static_cast<size_t>(s), st(c, s));
        }
    return f;
}

struct WindowNf {
    std::vector<std::int64_t> p, q;  // indices lo+1 .. hi-1
    std::int64_t r = 0;
};

// H(lo,hi)-part of M under M = u * h: p from the first window row, q by back
// substitution down the window column, r from the corner.
WindowNf window_factor(const IntegerMatrix& M, int lo, int hi) {
    auto at = [&](int i, int j) { return M.at(i - 1, j - 1); };
    WindowNf nf;
    for (int m = lo + 1; m < hi; ++m) nf.p.push_back(at(lo, m));
    nf.q.assign(static_cast<size_t>(hi - lo - 1), 0);
    for (int i = hi - 1; i > lo; --i) {
        std::int64_t v = at(i, hi);
        for (int m = i + 1; m < hi; ++m)
            v -= at(i, m) * nf.q[static_cast<size_t>(m - lo - 1)];
        nf.q[static_cast<size_t>(i - lo - 1)] = v;
    }
    nf.r = at(lo, hi);
    for (size_t t = 0; t < nf.p.size(); ++t) nf.r -= nf.p[t] * nf.q[t];
    return nf;
}

IntegerMatrix window_matrix(int n, int lo, int hi, const WindowNf& nf) {
    IntegerMatrix h = IntegerMatrix::identity(n);
    std::int64_t corner = nf.r;
    for (size_t t = 0; t < nf.p.size(); ++t) {
        h.at(lo - 1, lo + static_cast<int>(t)) = nf.p[t];
        h.at(lo + static_cast<int>(t), hi - 1) = nf.q[t];
        corner += nf.p[t] * nf.q[t];
    }
    h.at(lo - 1, hi - 1) = corner;
    return h;
}

// Exponent vector of M in the coordinate system, peeling H-blocks from the
// outermost window inward; throws if a residue escapes the next window.
std::vector<std::int64_t> exponents_of(const CoordSystem& cs, IntegerMatrix M) {
    std::vector<std::int64_t> out(cs.order.size(), 0);
    for (auto [lo, hi] : cs.windows) {
        WindowNf nf = window_factor(M, lo, hi);
        for (int m = lo + 1; m < hi; ++m)
            out[cs.index.at({lo, m})] = nf.p[static_cast<size_t>(m - lo - 1)];
        for (int i = lo + 1; i < hi; ++i)
            out[cs.index.at({i, hi})] = nf.q[static_cast<size_t>(i - lo - 1)];
        out[cs.index.at({lo, hi})] = nf.r;
        M = M * window_matrix(cs.n, lo, hi, nf).inverse();
    }
    if (M != IntegerMatrix::identity(cs.n))
        throw std::runtime_error("exponents_of: residue outside the windows");
    return out;
}

// Oracle for the degree-1 (generator-free) group; matrix_oracle infers its
// degree from a generator, so the empty case is carried separately.
class TrivialOracle : public GroupOracle {
public:
    explicit TrivialOracle(std::string name)
        : GroupOracle(std::move(name), Alphabet(std::vector<Symbol>{})) {}
    struct E : ElemBase {};
    Elem identity() const override { return std::make_shared<E>(); }
    Elem multiply(const Elem& a, const Elem&) const override { return a; }
    Elem invert(const Elem& a) const override { return a; }
    std::string key(const Elem&) const override { return "1"; }
};

PStructure build_structure(const std::string& name, const CoordSystem& cs) {
    PStructure s;
    s.name = name;
    s.alphabet = cs.alphabet;
    s.language =
        make_language(name + "-nf", {fsa_to_dpda(block_language_fsa(cs), "nf")});

    if (cs.order.empty()) {
        s.oracle = std::make_shared<TrivialOracle>(name);
        s.normal_form_of = [](const GroupOracle::Elem&) { return Word(); };
        return s;
    }
    std::map<Symbol, IntegerMatrix> gens;
    for (size_t c = 0; c < cs.order.size(); ++c) {
        auto [i, j] = cs.order[c];
        gens[cs.letters[c].first] = UniTriMatrix::elementary(cs.n, i, j, 1).m;
        gens[cs.letters[c].second] = UniTriMatrix::elementary(cs.n, i, j, -1).m;
    }
    s.oracle = matrix_oracle(name, cs.alphabet, gens);

    size_t k = cs.order.size();
    for (size_t c = 0; c < k; ++c) {
        auto [i, j] = cs.order[c];
        for (int eps : {1, -1}) {
            Symbol letter = eps > 0 ? cs.letters[c].first : cs.letters[c].second;
            AffineAction act = action_of(cs, i, j, eps);
            std::vector<TwoTapePda> machines;
            for (size_t t = 0; t < k; ++t) {
                CounterPhase read_w{Side::Left, {}}, read_wp{Side::Right, {}};
                for (size_t d = 0; d < k; ++d) {
                    read_w.deltas[cs.letters[d].first] = act.A[t][d];
                    read_w.deltas[cs.letters[d].second] = -act.A[t][d];
                    read_wp.deltas[cs.letters[d].first] = d == t ? -1 : 0;
                    read_wp.deltas[cs.letters[d].second] = d == t ? 1 : 0;
                }
                machines.push_back(block_counter(
                    "R" + letter.name() + "." + cs.letters[t].first.name(),
                    cs.alphabet, cs.alphabet, {read_w, read_wp}, act.b[t]));
            }
            s.multipliers[letter] =
                make_relation("R" + letter.name(), std::move(machines));
        }
    }

    s.normal_form_of = [cs](const GroupOracle::Elem& e) {
        std::vector<std::int64_t> v = exponents_of(cs, matrix_value(e));
        Word w;
        for (size_t c = 0; c < cs.order.size(); ++c) {
            Symbol letter = v[c] > 0 ? cs.letters[c].first : cs.letters[c].second;
            for (std::int64_t t = 0; t < (v[c] < 0 ? -v[c] : v[c]); ++t)
                w.push_back(letter);
        }
        return w;
    };
    s.nf_factor = 3;  // safe placeholder; callers recalibrate from the ball
    s.nf_offset = 1;
    return s;
}

void require_degree(int n, int least, const char* who) {
    if (n < least)
        throw std::invalid_argument(std::string(who) + ": degree too small");
}

Word commutator(Symbol a, Symbol b, Symbol ai, Symbol bi) {
    Word w;
    w.push_back(a);
    w.push_back(b);
    w.push_back(ai);
    w.push_back(bi);
    return w;
}

}  // namespace

UniTriMatrix UniTriMatrix::identity(int n) {
    return {n, IntegerMatrix::identity(n)};
}

UniTriMatrix UniTriMatrix::elementary(int n, int i, int j, std::int64_t k) {
    if (i < 1 || i >= j || j > n)
        throw std::invalid_argument("UniTriMatrix::elementary: need 1<=i<j<=n");
    UniTriMatrix e = identity(n);
    e.m.at(i - 1, j - 1) = k;
    return e;
}

UniTriMatrix UniTriMatrix::wrap(IntegerMatrix m) {
    for (int i = 0; i < m.n; ++i) {
        if (m.at(i, i) != 1)
            throw std::invalid_argument("UniTriMatrix: diagonal entry not 1");
        for (int j = 0; j < i; ++j)
            if (m.at(i, j) != 0)
                throw std::invalid_argument("UniTriMatrix: nonzero below diagonal");
    }
    return {m.n, std::move(m)};
}

UniTriMatrix UniTriMatrix::operator*(const UniTriMatrix& o) const {
    return {n, m * o.m};
}

UniTriMatrix UniTriMatrix::inverse() const { return {n, m.inverse()}; }

UniTriMatrix matrix_for(const HnNormalForm& nf) {
    require_degree(nf.n, 3, "matrix_for");
    if (nf.p.size() != static_cast<size_t>(nf.n - 2) || nf.q.size() != nf.p.size())
        throw std::invalid_argument("matrix_for: exponent sizes must be n-2");
    WindowNf w{nf.p, nf.q, nf.r};
    return UniTriMatrix::wrap(window_matrix(nf.n, 1, nf.n, w));
}

HnNormalForm hn_normal_form(const UniTriMatrix& m) {
    require_degree(m.n, 3, "hn_normal_form");
    for (int i = 2; i < m.n; ++i)
        for (int j = i + 1; j < m.n; ++j)
            if (m.at(i, j) != 0)
                throw std::invalid_argument(
                    "hn_normal_form: support outside first row / last column");
    HnNormalForm nf;
    nf.n = m.n;
    for (int i = 2; i < m.n; ++i) {
        nf.p.push_back(m.at(1, i));
        nf.q.push_back(m.at(i, m.n));
    }
    nf.r = m.at(1, m.n);
    for (size_t t = 0; t < nf.p.size(); ++t) nf.r -= nf.p[t] * nf.q[t];
    return nf;
}

std::pair<UniTriMatrix, UniTriMatrix> factor_u_n(const UniTriMatrix& m) {
    require_degree(m.n, 3, "factor_u_n");
    WindowNf w = window_factor(m.m, 1, m.n);
    UniTriMatrix h = UniTriMatrix::wrap(window_matrix(m.n, 1, m.n, w));
    UniTriMatrix u = m * h.inverse();
    for (int t = 2; t <= m.n; ++t)
        if (u.at(1, t) != 0 || u.at(t - 1, m.n) != 0)
            throw std::runtime_error("factor_u_n: head factor not in 1+U(n-2)+1");
    return {u, h};
}

UniTriMatrix forgetful(const UniTriMatrix& m) {
    require_degree(m.n, 3, "forgetful");
    IntegerMatrix out = IntegerMatrix::identity(m.n - 2);
    for (int i = 2; i < m.n; ++i)
        for (int j = 2; j < m.n; ++j) out.at(i - 2, j - 2) = m.at(i, j);
    return UniTriMatrix::wrap(out);
}

std::vector<Word> heisenberg_relations(int n) {
    require_degree(n, 3, "heisenberg_relations");
    auto x = [](int i) { return Symbol::intern("x" + std::to_string(i)); };
    auto X = [](int i) { return Symbol::intern("X" + std::to_string(i)); };
    auto y = [](int i) { return Symbol::intern("y" + std::to_string(i)); };
    auto Y = [](int i) { return Symbol::intern("Y" + std::to_string(i)); };
    Symbol z = Symbol::intern("z"), Z = Symbol::intern("Z");
    std::vector<Word> rels;
    for (int i = 2; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            rels.push_back(commutator(x(i), x(j), X(i), X(j)));
            rels.push_back(commutator(y(i), y(j), Y(i), Y(j)));
        }
    for (int i = 2; i < n; ++i)
        for (int j = 2; j < n; ++j)
            if (i != j) rels.push_back(commutator(x(i), y(j), X(i), Y(j)));
    for (int i = 2; i < n; ++i) {
        Word w = commutator(x(i), y(i), X(i), Y(i));
        w.push_back(Z);
        rels.push_back(w);
        rels.push_back(commutator(z, x(i), Z, X(i)));
        rels.push_back(commutator(z, y(i), Z, Y(i)));
    }
    return rels;
}

PStructure heisenberg_structure(int n) {
    require_degree(n, 3, "heisenberg_structure");
    std::vector<Coord> order;
    push_window_coords(1, n, order);
    CoordSystem cs = make_coords(n, order, [n](Coord c) {
        auto [i, j] = c;
        if (i == 1 && j == n) return std::pair<std::string, std::string>("z", "Z");
        if (i == 1)
            return std::pair<std::string, std::string>("x" + std::to_string(j),
                                                       "X" + std::to_string(j));
        return std::pair<std::string, std::string>("y" + std::to_string(i),
                                                   "Y" + std::to_string(i));
    });
    cs.windows = {{1, n}};
    return build_structure("h" + std::to_string(n), cs);
}

PStructure unitriangular_structure(int n) {
    require_degree(n, 1, "unitriangular_structure");
    std::vector<Coord> order;
    std::vector<std::pair<int, int>> windows;  // outermost first
    for (int lo = 1; lo < n + 1 - lo; ++lo) windows.emplace_back(lo, n + 1 - lo);
    for (auto it = windows.rbegin(); it != windows.rend(); ++it)
        push_window_coords(it->first, it->second, order);
    CoordSystem cs = make_coords(n, order, [](Coord c) {
        auto [i, j] = c;
        std::string suffix = std::to_string(i) + std::to_string(j);
        return std::pair<std::string, std::string>("e" + suffix, "E" + suffix);
    });
    cs.windows = windows;
    return build_structure("u" + std::to_string(n), cs);
}

}  // namespace ppd
