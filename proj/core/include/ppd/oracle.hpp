/* oracle.hpp -- ground-truth group arithmetic used to verify the machines. */

#ifndef PPD_ORACLE_HPP_
#define PPD_ORACLE_HPP_

#include <functional>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "ppd/matrix.hpp"
#include "ppd/words.hpp"

namespace ppd {

// Abstract group with a generator map from an inverse-closed alphabet.
// Elements are opaque handles owned by their oracle; equality goes through
// canonical keys (exact, no hashing tricks).
class GroupOracle {
public:
    struct ElemBase {
        virtual ~ElemBase() = default;
    };
    using Elem = std::shared_ptr<const ElemBase>;

    virtual ~GroupOracle() = default;

    const std::string& name() const { return name_; }
    const Alphabet& alphabet() const { return alphabet_; }

    virtual Elem identity() const = 0;
    virtual Elem multiply(const Elem& a, const Elem& b) const = 0;
    virtual Elem invert(const Elem& a) const = 0;
    virtual std::string key(const Elem& a) const = 0;  // canonical form

    Elem generator(Symbol a) const;
    bool equal(const Elem& a, const Elem& b) const { return key(a) == key(b); }
    bool is_identity(const Elem& a) const { return equal(a, identity()); }
    Elem evaluate(const Word& w) const;  // the induced monoid homomorphism
    bool is_identity_word(const Word& w) const {
        return is_identity(evaluate(w));
    }

protected:
    GroupOracle(std::string name, Alphabet alphabet)
        : name_(std::move(name)), alphabet_(std::move(alphabet)) {}
    void set_generator(Symbol a, Elem e) { gens_[a] = std::move(e); }

private:
    std::string name_;
    Alphabet alphabet_;
    std::map<Symbol, Elem> gens_;
};

using OraclePtr = std::shared_ptr<const GroupOracle>;

// Concrete oracle factories.  Generator maps must cover the whole alphabet
// (inverse letters are supplied explicitly by the caller).

OraclePtr matrix_oracle(std::string name, Alphabet alphabet,
                        std::map<Symbol, IntegerMatrix> gens);

OraclePtr tuple_oracle(std::string name, Alphabet alphabet,
                       std::map<Symbol, std::vector<std::int64_t>> gens);

// Z^n x| Z with t-conjugation by A: (v,k)(v',k') = (v + A^k v', k+k').
struct SemidirectElemData {
    std::vector<std::int64_t> v;
    long k = 0;
};
OraclePtr semidirect_z_oracle(std::string name, IntegerMatrix A,
                              Alphabet alphabet,
                              std::map<Symbol, SemidirectElemData> gens);

// Klein bottle group: pairs (n,m), (n,m)(n',m') = (n + (-1)^m n', m+m').
OraclePtr klein_oracle(Alphabet alphabet, std::map<Symbol, std::pair<long, long>> gens);

// Alphabets of the factors must be disjoint; elements are pairs / reduced
// alternating sequences / finitely supported maps respectively.
OraclePtr direct_product_oracle(const OraclePtr& a, const OraclePtr& b);
OraclePtr free_product_oracle(const OraclePtr& a, const OraclePtr& b);
OraclePtr wreath_oracle(const OraclePtr& g, const OraclePtr& h);  // G wr H

// Central extension of H by Z^n x F: elements (v, f, h); multiplication twists
// by the normalized 2-cocycle rho: H x H -> Z^n x F.
struct FiniteGroupTable {
    int order = 1;                    // identity is index 0
    std::vector<int> mul;             // order*order table
    std::vector<int> inv;             // inverses
};
struct KElem {
    std::vector<std::int64_t> v;
    int f = 0;
};
using Cocycle = std::function<KElem(const GroupOracle::Elem&,
                                    const GroupOracle::Elem&)>;
OraclePtr central_extension_oracle(std::string name, int n,
                                   FiniteGroupTable F, Cocycle rho,
                                   const OraclePtr& h, Alphabet alphabet,
                                   std::map<Symbol, std::pair<KElem, Symbol>> gens);

// Inspection helpers used by constructions to read concrete representations
// back out of opaque elements; they throw if the element belongs to a
// different oracle family.
std::vector<std::int64_t> tuple_value(const GroupOracle::Elem& e);
SemidirectElemData semidirect_value(const GroupOracle::Elem& e);
IntegerMatrix matrix_value(const GroupOracle::Elem& e);
std::pair<long, long> klein_value(const GroupOracle::Elem& e);
// reduced alternating sequence: (factor index 0/1, factor element)
std::vector<std::pair<int, GroupOracle::Elem>> free_product_value(
    const GroupOracle::Elem& e);
// wreath pair: support map keyed by H-element key -> (H-elem, G-elem), head
std::pair<std::map<std::string, std::pair<GroupOracle::Elem, GroupOracle::Elem>>,
          GroupOracle::Elem>
wreath_value(const GroupOracle::Elem& e);
std::pair<GroupOracle::Elem, GroupOracle::Elem> direct_product_value(
    const GroupOracle::Elem& e);
std::pair<KElem, GroupOracle::Elem> central_extension_value(
    const GroupOracle::Elem& e);

// Breadth-first ball of the Cayley graph with geodesic witness words.
struct Ball {
    int radius = 0;
    std::vector<GroupOracle::Elem> elements;
    std::map<std::string, size_t> index;  // key -> position in elements
    std::vector<Word> witness;            // geodesic word per element
};

Ball ball(const GroupOracle& oracle, int radius, size_t max_elements = 2000000);

// Group-law property check on pseudorandom words (associativity, inverse and
// identity laws); returns the first violated law's description or empty.
std::string check_group_laws(const GroupOracle& oracle, int trials,
                             unsigned seed);

}  // namespace ppd

#endif
