#include "ppd/oracle.hpp"

#include <deque>
#include <random>
#include <sstream>
#include <stdexcept>

namespace ppd {

GroupOracle::Elem GroupOracle::generator(Symbol a) const {
    auto it = gens_.find(a);
    if (it == gens_.end())
        throw std::invalid_argument("oracle " + name_ + ": no generator for " +
                                    a.name());
    return it->second;
}

GroupOracle::Elem GroupOracle::evaluate(const Word& w) const {
    Elem e = identity();
    for (Symbol s : w) e = multiply(e, generator(s));
    return e;
}

namespace {

std::string join64(const std::vector<std::int64_t>& v) {
    std::ostringstream out;
    for (size_t i = 0; i < v.size(); ++i) out << (i ? "," : "") << v[i];
    return out.str();
}

// ---- matrix groups ----

struct MatElem : GroupOracle::ElemBase {
    IntegerMatrix m;
};

class MatrixOracle : public GroupOracle {
public:
    MatrixOracle(std::string name, Alphabet alphabet,
                 std::map<Symbol, IntegerMatrix> gens)
        : GroupOracle(std::move(name), std::move(alphabet)) {
        if (gens.empty()) throw std::invalid_argument("matrix_oracle: no generators");
        n_ = gens.begin()->second.n;
        for (auto& [sym, m] : gens) {
            if (m.n != n_)
                throw std::invalid_argument("matrix_oracle: degree mismatch");
            set_generator(sym, wrap(m));
        }
    }
    Elem identity() const override { return wrap(IntegerMatrix::identity(n_)); }
    Elem multiply(const Elem& a, const Elem& b) const override {
        return wrap(get(a).m * get(b).m);
    }
    Elem invert(const Elem& a) const override { return wrap(get(a).m.inverse()); }
    std::string key(const Elem& a) const override { return get(a).m.str(); }

    static const MatElem& get(const Elem& e) {
        auto* p = dynamic_cast<const MatElem*>(e.get());
        if (!p) throw std::invalid_argument("element is not a matrix element");
        return *p;
    }

private:
    static Elem wrap(IntegerMatrix m) {
        auto e = std::make_shared<MatElem>();
        e->m = std::move(m);
        return e;
    }
    int n_;
};

// ---- free abelian tuples ----

struct TupleElem : GroupOracle::ElemBase {
    std::vector<std::int64_t> v;
};

class TupleOracle : public GroupOracle {
public:
    TupleOracle(std::string name, Alphabet alphabet,
                std::map<Symbol, std::vector<std::int64_t>> gens)
        : GroupOracle(std::move(name), std::move(alphabet)) {
        if (gens.empty()) throw std::invalid_argument("tuple_oracle: no generators");
        n_ = gens.begin()->second.size();
        for (auto& [sym, v] : gens) {
            if (v.size() != n_)
                throw std::invalid_argument("tuple_oracle: arity mismatch");
            set_generator(sym, wrap(v));
        }
    }
    Elem identity() const override {
        return wrap(std::vector<std::int64_t>(n_, 0));
    }
    Elem multiply(const Elem& a, const Elem& b) const override {
        std::vector<std::int64_t> v = get(a).v;
        const auto& w = get(b).v;
        for (size_t i = 0; i < v.size(); ++i) v[i] += w[i];
        return wrap(std::move(v));
    }
    Elem invert(const Elem& a) const override {
        std::vector<std::int64_t> v = get(a).v;
        for (auto& x : v) x = -x;
        return wrap(std::move(v));
    }
    std::string key(const Elem& a) const override { return join64(get(a).v); }

    static const TupleElem& get(const Elem& e) {
        auto* p = dynamic_cast<const TupleElem*>(e.get());
        if (!p) throw std::invalid_argument("element is not a tuple element");
        return *p;
    }

private:
    static Elem wrap(std::vector<std::int64_t> v) {
        auto e = std::make_shared<TupleElem>();
        e->v = std::move(v);
        return e;
    }
    size_t n_;
};

// ---- Z^n x| Z ----

struct SdElem : GroupOracle::ElemBase {
    SemidirectElemData d;
};

class SemidirectZOracle : public GroupOracle {
public:
    SemidirectZOracle(std::string name, IntegerMatrix A, Alphabet alphabet,
                      std::map<Symbol, SemidirectElemData> gens)
        : GroupOracle(std::move(name), std::move(alphabet)), A_(std::move(A)) {
        std::int64_t d = A_.det();
        if (d != 1 && d != -1)
            throw std::invalid_argument("semidirect_z_oracle: det must be +-1");
        for (auto& [sym, e] : gens) {
            if (static_cast<int>(e.v.size()) != A_.n)
                throw std::invalid_argument("semidirect_z_oracle: arity mismatch");
            set_generator(sym, wrap(e));
        }
    }
    Elem identity() const override {
        return wrap({std::vector<std::int64_t>(A_.n, 0), 0});
    }
    Elem multiply(const Elem& a, const Elem& b) const override {
        const auto& x = get(a).d;
        const auto& y = get(b).d;
        auto moved = A_.pow(x.k).apply(y.v);
        SemidirectElemData out;
        out.v = x.v;
        for (size_t i = 0; i < out.v.size(); ++i) out.v[i] += moved[i];
        out.k = x.k + y.k;
        return wrap(std::move(out));
    }
    Elem invert(const Elem& a) const override {
        const auto& x = get(a).d;
        SemidirectElemData out;
        out.k = -x.k;
        out.v = A_.pow(-x.k).apply(x.v);
        for (auto& c : out.v) c = -c;
        return wrap(std::move(out));
    }
    std::string key(const Elem& a) const override {
        const auto& x = get(a).d;
        return join64(x.v) + "|" + std::to_string(x.k);
    }

    static const SdElem& get(const Elem& e) {
        auto* p = dynamic_cast<const SdElem*>(e.get());
        if (!p) throw std::invalid_argument("element is not a semidirect element");
        return *p;
    }

private:
    static Elem wrap(SemidirectElemData d) {
        auto e = std::make_shared<SdElem>();
        e->d = std::move(d);
        return e;
    }
    IntegerMatrix A_;
};

// ---- Klein bottle pairs ----

struct KleinElem : GroupOracle::ElemBase {
    long n = 0, m = 0;
};

class KleinOracle : public GroupOracle {
public:
    KleinOracle(Alphabet alphabet, std::map<Symbol, std::pair<long, long>> gens)
        : GroupOracle("klein", std::move(alphabet)) {
        for (auto& [sym, p] : gens) set_generator(sym, wrap(p.first, p.second));
    }
    Elem identity() const override { return wrap(0, 0); }
    Elem multiply(const Elem& a, const Elem& b) const override {
        const auto& x = get(a);
        const auto& y = get(b);
        long sign = (x.m % 2 == 0) ? 1 : -1;
        return wrap(x.n + sign * y.n, x.m + y.m);
    }
    Elem invert(const Elem& a) const override {
        const auto& x = get(a);
        long sign = (x.m % 2 == 0) ? 1 : -1;
        return wrap(-sign * x.n, -x.m);
    }
    std::string key(const Elem& a) const override {
        const auto& x = get(a);
        return std::to_string(x.n) + "|" + std::to_string(x.m);
    }

    static const KleinElem& get(const Elem& e) {
        auto* p = dynamic_cast<const KleinElem*>(e.get());
        if (!p) throw std::invalid_argument("element is not a Klein element");
        return *p;
    }

private:
    static Elem wrap(long n, long m) {
        auto e = std::make_shared<KleinElem>();
        e->n = n;
        e->m = m;
        return e;
    }
};

// ---- direct products ----

struct PairElem : GroupOracle::ElemBase {
    GroupOracle::Elem x, y;
};

class DirectProductOracle : public GroupOracle {
public:
    DirectProductOracle(OraclePtr a, OraclePtr b)
        : GroupOracle(a->name() + "x" + b->name(),
                      a->alphabet().unioned(b->alphabet())),
          a_(std::move(a)),
          b_(std::move(b)) {
        if (!a_->alphabet().disjoint(b_->alphabet()))
            throw std::invalid_argument("direct_product_oracle: alphabets overlap");
        for (size_t i = 0; i < a_->alphabet().size(); ++i) {
            Symbol s = a_->alphabet().at(i);
            set_generator(s, wrap(a_->generator(s), b_->identity()));
        }
        for (size_t i = 0; i < b_->alphabet().size(); ++i) {
            Symbol s = b_->alphabet().at(i);
            set_generator(s, wrap(a_->identity(), b_->generator(s)));
        }
    }
    Elem identity() const override {
        return wrap(a_->identity(), b_->identity());
    }
    Elem multiply(const Elem& p, const Elem& q) const override {
        return wrap(a_->multiply(get(p).x, get(q).x),
                    b_->multiply(get(p).y, get(q).y));
    }
    Elem invert(const Elem& p) const override {
        return wrap(a_->invert(get(p).x), b_->invert(get(p).y));
    }
    std::string key(const Elem& p) const override {
        return "(" + a_->key(get(p).x) + ";" + b_->key(get(p).y) + ")";
    }

    static const PairElem& get(const Elem& e) {
        auto* p = dynamic_cast<const PairElem*>(e.get());
        if (!p) throw std::invalid_argument("element is not a pair element");
        return *p;
    }

private:
    static Elem wrap(Elem x, Elem y) {
        auto e = std::make_shared<PairElem>();
        e->x = std::move(x);
        e->y = std::move(y);
        return e;
    }
    OraclePtr a_, b_;
};

// ---- free products ----

struct SeqElem : GroupOracle::ElemBase {
    std::vector<std::pair<int, GroupOracle::Elem>> seq;  // alternating factors
};

class FreeProductOracle : public GroupOracle {
public:
    FreeProductOracle(OraclePtr a, OraclePtr b)
        : GroupOracle(a->name() + "*" + b->name(),
                      a->alphabet().unioned(b->alphabet())),
          f_{std::move(a), std::move(b)} {
        if (!f_[0]->alphabet().disjoint(f_[1]->alphabet()))
            throw std::invalid_argument("free_product_oracle: alphabets overlap");
        for (int which = 0; which < 2; ++which)
            for (size_t i = 0; i < f_[which]->alphabet().size(); ++i) {
                Symbol s = f_[which]->alphabet().at(i);
                Elem g = f_[which]->generator(s);
                auto e = std::make_shared<SeqElem>();
                if (!f_[which]->is_identity(g)) e->seq.push_back({which, g});
                set_generator(s, e);
            }
    }
    Elem identity() const override { return std::make_shared<SeqElem>(); }
    Elem multiply(const Elem& p, const Elem& q) const override {
        auto out = std::make_shared<SeqElem>();
        out->seq = get(p).seq;
        const auto& right = get(q).seq;
        size_t ri = 0;
        while (ri < right.size()) {
            if (!out->seq.empty() && out->seq.back().first == right[ri].first) {
                int which = right[ri].first;
                Elem merged = f_[which]->multiply(out->seq.back().second,
                                                  right[ri].second);
                out->seq.pop_back();
                ++ri;
                if (!f_[which]->is_identity(merged)) {
                    out->seq.push_back({which, merged});
                    break;  // boundary settled, no further cancellation
                }
                // merged to identity: the new seam may cancel further
            } else {
                break;
            }
        }
        for (; ri < right.size(); ++ri) out->seq.push_back(right[ri]);
        return out;
    }
    Elem invert(const Elem& p) const override {
        auto out = std::make_shared<SeqElem>();
        const auto& s = get(p).seq;
        for (size_t i = s.size(); i-- > 0;)
            out->seq.push_back({s[i].first, f_[s[i].first]->invert(s[i].second)});
        return out;
    }
    std::string key(const Elem& p) const override {
        std::ostringstream out;
        for (const auto& [which, g] : get(p).seq)
            out << which << ":" << f_[which]->key(g) << "/";
        return out.str();
    }

    static const SeqElem& get(const Elem& e) {
        auto* p = dynamic_cast<const SeqElem*>(e.get());
        if (!p) throw std::invalid_argument("element is not a sequence element");
        return *p;
    }

private:
    OraclePtr f_[2];
};

// ---- wreath products G wr H ----

struct WreathElem : GroupOracle::ElemBase {
    // lamp configuration: H-key -> (H element, non-identity G element)
    std::map<std::string, std::pair<GroupOracle::Elem, GroupOracle::Elem>> lamps;
    GroupOracle::Elem head;
};

class WreathOracle : public GroupOracle {
public:
    WreathOracle(OraclePtr g, OraclePtr h)
        : GroupOracle(g->name() + "wr" + h->name(),
                      g->alphabet().unioned(h->alphabet())),
          g_(std::move(g)),
          h_(std::move(h)) {
        if (!g_->alphabet().disjoint(h_->alphabet()))
            throw std::invalid_argument("wreath_oracle: alphabets overlap");
        for (size_t i = 0; i < g_->alphabet().size(); ++i) {
            Symbol s = g_->alphabet().at(i);
            auto e = std::make_shared<WreathElem>();
            e->head = h_->identity();
            Elem val = g_->generator(s);
            if (!g_->is_identity(val))
                e->lamps[h_->key(h_->identity())] = {h_->identity(), val};
            set_generator(s, e);
        }
        for (size_t i = 0; i < h_->alphabet().size(); ++i) {
            Symbol s = h_->alphabet().at(i);
            auto e = std::make_shared<WreathElem>();
            e->head = h_->generator(s);
            set_generator(s, e);
        }
    }
    Elem identity() const override {
        auto e = std::make_shared<WreathElem>();
        e->head = h_->identity();
        return e;
    }
    Elem multiply(const Elem& p, const Elem& q) const override {
        const auto& x = get(p);
        const auto& y = get(q);
        auto out = std::make_shared<WreathElem>();
        out->lamps = x.lamps;
        for (const auto& [ykey, lamp] : y.lamps) {
            Elem pos = h_->multiply(x.head, lamp.first);  // translate by head
            std::string k = h_->key(pos);
            auto it = out->lamps.find(k);
            if (it == out->lamps.end()) {
                out->lamps[k] = {pos, lamp.second};
            } else {
                Elem merged = g_->multiply(it->second.second, lamp.second);
                if (g_->is_identity(merged))
                    out->lamps.erase(it);
                else
                    it->second.second = merged;
            }
        }
        out->head = h_->multiply(x.head, y.head);
        return out;
    }
    Elem invert(const Elem& p) const override {
        const auto& x = get(p);
        auto out = std::make_shared<WreathElem>();
        out->head = h_->invert(x.head);
        for (const auto& [k, lamp] : x.lamps) {
            Elem pos = h_->multiply(out->head, lamp.first);
            out->lamps[h_->key(pos)] = {pos, g_->invert(lamp.second)};
        }
        return out;
    }
    std::string key(const Elem& p) const override {
        const auto& x = get(p);
        std::ostringstream out;
        out << "{";
        for (const auto& [k, lamp] : x.lamps)
            out << k << "=" << g_->key(lamp.second) << ",";
        out << "}|" << h_->key(x.head);
        return out.str();
    }

    static const WreathElem& get(const Elem& e) {
        auto* p = dynamic_cast<const WreathElem*>(e.get());
        if (!p) throw std::invalid_argument("element is not a wreath element");
        return *p;
    }

private:
    OraclePtr g_, h_;
};

// ---- central extensions ----

struct CextElem : GroupOracle::ElemBase {
    KElem k;
    GroupOracle::Elem h;
};

class CentralExtensionOracle : public GroupOracle {
public:
    CentralExtensionOracle(std::string name, int n, FiniteGroupTable F,
                           Cocycle rho, OraclePtr h, Alphabet alphabet,
                           std::map<Symbol, std::pair<KElem, Symbol>> gens)
        : GroupOracle(std::move(name), std::move(alphabet)),
          n_(n),
          F_(std::move(F)),
          rho_(std::move(rho)),
          h_(std::move(h)) {
        for (auto& [sym, spec] : gens) {
            auto e = std::make_shared<CextElem>();
            e->k = spec.first;
            e->k.v.resize(n_, 0);
            // empty symbol name means the identity of H
            e->h = spec.second.name().empty() || spec.second == Symbol::intern("1")
                       ? h_->identity()
                       : h_->generator(spec.second);
            set_generator(sym, e);
        }
    }
    Elem identity() const override {
        auto e = std::make_shared<CextElem>();
        e->k.v.assign(n_, 0);
        e->h = h_->identity();
        return e;
    }
    Elem multiply(const Elem& p, const Elem& q) const override {
        const auto& x = get(p);
        const auto& y = get(q);
        KElem twist = rho_(x.h, y.h);
        twist.v.resize(n_, 0);
        auto out = std::make_shared<CextElem>();
        out->k.v.resize(n_);
        for (int i = 0; i < n_; ++i)
            out->k.v[i] = x.k.v[i] + y.k.v[i] + twist.v[i];
        out->k.f = F_.mul[static_cast<size_t>(F_.mul[static_cast<size_t>(x.k.f) *
                                                         F_.order +
                                                     y.k.f]) *
                              F_.order +
                          twist.f];
        out->h = h_->multiply(x.h, y.h);
        return out;
    }
    Elem invert(const Elem& p) const override {
        const auto& x = get(p);
        Elem hinv = h_->invert(x.h);
        KElem twist = rho_(x.h, hinv);
        twist.v.resize(n_, 0);
        auto out = std::make_shared<CextElem>();
        out->k.v.resize(n_);
        for (int i = 0; i < n_; ++i) out->k.v[i] = -x.k.v[i] - twist.v[i];
        out->k.f = F_.inv[F_.mul[static_cast<size_t>(x.k.f) * F_.order + twist.f]];
        out->h = hinv;
        return out;
    }
    std::string key(const Elem& p) const override {
        const auto& x = get(p);
        return join64(x.k.v) + "|" + std::to_string(x.k.f) + "|" + h_->key(x.h);
    }

    static const CextElem& get(const Elem& e) {
        auto* p = dynamic_cast<const CextElem*>(e.get());
        if (!p) throw std::invalid_argument("element is not an extension element");
        return *p;
    }

private:
    int n_;
    FiniteGroupTable F_;
    Cocycle rho_;
    OraclePtr h_;
};

}  // namespace

OraclePtr matrix_oracle(std::string name, Alphabet alphabet,
                        std::map<Symbol, IntegerMatrix> gens) {
    return std::make_shared<MatrixOracle>(std::move(name), std::move(alphabet),
                                          std::move(gens));
}

OraclePtr tuple_oracle(std::string name, Alphabet alphabet,
                       std::map<Symbol, std::vector<std::int64_t>> gens) {
    return std::make_shared<TupleOracle>(std::move(name), std::move(alphabet),
                                         std::move(gens));
}

OraclePtr semidirect_z_oracle(std::string name, IntegerMatrix A,
                              Alphabet alphabet,
                              std::map<Symbol, SemidirectElemData> gens) {
    return std::make_shared<SemidirectZOracle>(std::move(name), std::move(A),
                                               std::move(alphabet),
                                               std::move(gens));
}

OraclePtr klein_oracle(Alphabet alphabet,
                       std::map<Symbol, std::pair<long, long>> gens) {
    return std::make_shared<KleinOracle>(std::move(alphabet), std::move(gens));
}

OraclePtr direct_product_oracle(const OraclePtr& a, const OraclePtr& b) {
    return std::make_shared<DirectProductOracle>(a, b);
}

OraclePtr free_product_oracle(const OraclePtr& a, const OraclePtr& b) {
    return std::make_shared<FreeProductOracle>(a, b);
}

OraclePtr wreath_oracle(const OraclePtr& g, const OraclePtr& h) {
    return std::make_shared<WreathOracle>(g, h);
}

OraclePtr central_extension_oracle(std::string name, int n, FiniteGroupTable F,
                                   Cocycle rho, const OraclePtr& h,
                                   Alphabet alphabet,
                                   std::map<Symbol, std::pair<KElem, Symbol>> gens) {
    return std::make_shared<CentralExtensionOracle>(
        std::move(name), n, std::move(F), std::move(rho), h,
        std::move(alphabet), std::move(gens));
}

std::vector<std::int64_t> tuple_value(const GroupOracle::Elem& e) {
    return TupleOracle::get(e).v;
}

SemidirectElemData semidirect_value(const GroupOracle::Elem& e) {
    return SemidirectZOracle::get(e).d;
}

IntegerMatrix matrix_value(const GroupOracle::Elem& e) {
    return MatrixOracle::get(e).m;
}

std::pair<long, long> klein_value(const GroupOracle::Elem& e) {
    const auto& k = KleinOracle::get(e);
    return {k.n, k.m};
}

std::vector<std::pair<int, GroupOracle::Elem>> free_product_value(
    const GroupOracle::Elem& e) {
    return FreeProductOracle::get(e).seq;
}

std::pair<std::map<std::string, std::pair<GroupOracle::Elem, GroupOracle::Elem>>,
          GroupOracle::Elem>
wreath_value(const GroupOracle::Elem& e) {
    const auto& w = WreathOracle::get(e);
    return {w.lamps, w.head};
}

std::pair<GroupOracle::Elem, GroupOracle::Elem> direct_product_value(
    const GroupOracle::Elem& e) {
    const auto& p = DirectProductOracle::get(e);
    return {p.x, p.y};
}

std::pair<KElem, GroupOracle::Elem> central_extension_value(
    const GroupOracle::Elem& e) {
    const auto& c = CentralExtensionOracle::get(e);
    return {c.k, c.h};
}

Ball ball(const GroupOracle& oracle, int radius, size_t max_elements) {
    Ball b;
    b.radius = radius;
    std::deque<size_t> frontier;
    auto add = [&](const GroupOracle::Elem& e, const Word& w) {
        std::string k = oracle.key(e);
        if (b.index.count(k)) return false;
        if (b.elements.size() >= max_elements)
            throw std::length_error("ball: element cap exceeded");
        b.index[k] = b.elements.size();
        b.elements.push_back(e);
        b.witness.push_back(w);
        return true;
    };
    add(oracle.identity(), Word());
    frontier.push_back(0);
    for (int depth = 0; depth < radius; ++depth) {
        std::deque<size_t> next;
        for (size_t i : frontier) {
            GroupOracle::Elem e = b.elements[i];
            Word w = b.witness[i];
            for (size_t li = 0; li < oracle.alphabet().size(); ++li) {
                Symbol a = oracle.alphabet().at(li);
                Word wa = w;
                wa.push_back(a);
                if (add(oracle.multiply(e, oracle.generator(a)), wa))
                    next.push_back(b.elements.size() - 1);
            }
        }
        frontier = std::move(next);
    }
    return b;
}

std::string check_group_laws(const GroupOracle& oracle, int trials,
                             unsigned seed) {
    std::mt19937 rng(seed);
    auto random_elem = [&]() {
        std::uniform_int_distribution<int> len(0, 5);
        std::uniform_int_distribution<size_t> pick(0,
                                                   oracle.alphabet().size() - 1);
        GroupOracle::Elem e = oracle.identity();
        int n = len(rng);
        for (int i = 0; i < n; ++i)
            e = oracle.multiply(e, oracle.generator(oracle.alphabet().at(pick(rng))));
        return e;
    };
    for (int t = 0; t < trials; ++t) {
        auto a = random_elem(), b = random_elem(), c = random_elem();
        if (!oracle.equal(oracle.multiply(oracle.multiply(a, b), c),
                          oracle.multiply(a, oracle.multiply(b, c))))
            return "associativity violated at trial " + std::to_string(t);
        if (!oracle.is_identity(oracle.multiply(a, oracle.invert(a))))
            return "right inverse law violated at trial " + std::to_string(t);
        if (!oracle.is_identity(oracle.multiply(oracle.invert(a), a)))
            return "left inverse law violated at trial " + std::to_string(t);
        if (!oracle.equal(oracle.multiply(oracle.identity(), a), a) ||
            !oracle.equal(oracle.multiply(a, oracle.identity()), a))
            return "identity law violated at trial " + std::to_string(t);
    }
    return "";
}

}  // namespace ppd
