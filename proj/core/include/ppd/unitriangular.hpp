/* unitriangular.hpp -- unit upper-triangular integer matrix groups U(n), H(n). */

#ifndef PPD_UNITRIANGULAR_HPP_
#define PPD_UNITRIANGULAR_HPP_

#include "ppd/pstructure.hpp"

namespace ppd {

// Degree-n integer matrix with unit diagonal and zeros below it.  Closed
// under multiplication and (integral) inversion; (1 + e_ij)^-1 = 1 - e_ij.
struct UniTriMatrix {
    int n = 0;
    IntegerMatrix m;

    static UniTriMatrix identity(int n);
    // 1 + k*e_ij, 1-based indices, i < j.
    static UniTriMatrix elementary(int n, int i, int j, std::int64_t k);
    static UniTriMatrix wrap(IntegerMatrix m);  // validates the shape

    std::int64_t at(int i, int j) const { return m.at(i - 1, j - 1); }  // 1-based

    UniTriMatrix operator*(const UniTriMatrix& o) const;
    UniTriMatrix inverse() const;
    bool operator==(const UniTriMatrix& o) const { return m == o.m; }
    bool operator!=(const UniTriMatrix& o) const { return !(*this == o); }
    std::string str() const { return m.str(); }
};

// Exponents of the normal form x_2^{p_2}..x_{n-1}^{p_{n-1}}
// y_2^{q_2}..y_{n-1}^{q_{n-1}} z^r of an element of H(n), the subgroup of
// U(n) supported on the first row and last column (x_j = 1+e_1j,
// y_i = 1+e_in, z = 1+e_1n).
struct HnNormalForm {
    int n = 0;
    std::vector<std::int64_t> p, q;  // size n-2, entries for indices 2..n-1
    std::int64_t r = 0;

    bool operator==(const HnNormalForm& o) const {
        return n == o.n && p == o.p && q == o.q && r == o.r;
    }
};

// The matrix with first row (1, p_2..p_{n-1}, r + sum p_i q_i) and last
// column (.., q_i, .., 1); injective.  Requires n >= 3.
UniTriMatrix matrix_for(const HnNormalForm& nf);

// Inverse of matrix_for; requires m supported on first row and last column.
HnNormalForm hn_normal_form(const UniTriMatrix& m);

// Unique factorization m = u * h with u in 1 (+) U(n-2) (+) 1 (first row and
// last column trivial) and h in H(n).  Requires n >= 3.
std::pair<UniTriMatrix, UniTriMatrix> factor_u_n(const UniTriMatrix& m);

// The forgetful quotient U(n) -> U(n-2): strip the first and last rows and
// columns.  A homomorphism with kernel H(n); requires n >= 3.
UniTriMatrix forgetful(const UniTriMatrix& m);

// Defining relators of H(n) as words over heisenberg_structure(n)'s alphabet:
// [x_i,x_j], [y_i,y_j], [x_i,y_j] (i != j), x_i y_i x_i^-1 y_i^-1 z^-1, and
// centrality of z.  Each evaluates to the identity matrix.
std::vector<Word> heisenberg_relations(int n);

// P-structure on H(n) with letters x2..x{n-1}, y2..y{n-1}, z (uppercase =
// inverse): one stack-trivial block-form language machine; per-generator
// relations are intersections of one counter per exponent.  Requires n >= 3.
PStructure heisenberg_structure(int n);

// P-structure on U(n) with letters e{i}{j} / E{i}{j} for 1 <= i < j <= n.
// The language is the concatenation, innermost window first, of the H-block
// languages of the nested windows (1,n), (2,n-1), ...; multipliers encode the
// conjugation action of each generator on every outer window's H-block as
// per-exponent counters.  U(1) is trivial, U(2) = Z.
PStructure unitriangular_structure(int n);

}  // namespace ppd

#endif
