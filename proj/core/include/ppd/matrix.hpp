/* matrix.hpp -- exact integer matrices used by oracles and constructions. */

#ifndef PPD_MATRIX_HPP_
#define PPD_MATRIX_HPP_

#include <cstdint>
#include <string>
#include <vector>

namespace ppd {

// Dense n-by-n integer matrix with exact arithmetic; the automorphism uses
// (Lemma 5.7 and friends) require determinant +-1 so inverses stay integral.
struct IntegerMatrix {
    int n = 0;
    std::vector<std::int64_t> a;  // row major, size n*n

    static IntegerMatrix identity(int n);
    static IntegerMatrix from_rows(
        const std::vector<std::vector<std::int64_t>>& rows);

    std::int64_t& at(int i, int j) { return a[static_cast<size_t>(i) * n + j]; }
    std::int64_t at(int i, int j) const {
        return a[static_cast<size_t>(i) * n + j];
    }

    IntegerMatrix operator*(const IntegerMatrix& o) const;
    bool operator==(const IntegerMatrix& o) const { return n == o.n && a == o.a; }
    bool operator!=(const IntegerMatrix& o) const { return !(*this == o); }

    std::vector<std::int64_t> apply(const std::vector<std::int64_t>& v) const;
    std::int64_t det() const;        // exact, via fraction-free elimination
    IntegerMatrix inverse() const;   // requires det == +-1
    IntegerMatrix pow(long k) const; // negative exponents via inverse
    std::string str() const;
};

}  // namespace ppd

#endif
