#include "ppd/matrix.hpp"

#include <sstream>
#include <stdexcept>

namespace ppd {

IntegerMatrix IntegerMatrix::identity(int n) {
    IntegerMatrix m;
    m.n = n;
    m.a.assign(static_cast<size_t>(n) * n, 0);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

IntegerMatrix IntegerMatrix::from_rows(
    const std::vector<std::vector<std::int64_t>>& rows) {
    IntegerMatrix m;
    m.n = static_cast<int>(rows.size());
    for (const auto& r : rows) {
        if (r.size() != rows.size())
            throw std::invalid_argument("from_rows: matrix must be square");
        m.a.insert(m.a.end(), r.begin(), r.end());
    }
    return m;
}

IntegerMatrix IntegerMatrix::operator*(const IntegerMatrix& o) const {
    if (n != o.n) throw std::invalid_argument("matrix multiply: size mismatch");
    IntegerMatrix out;
    out.n = n;
    out.a.assign(a.size(), 0);
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k) {
            std::int64_t x = at(i, k);
            if (!x) continue;
            for (int j = 0; j < n; ++j) out.at(i, j) += x * o.at(k, j);
        }
    return out;
}

std::vector<std::int64_t> IntegerMatrix::apply(
    const std::vector<std::int64_t>& v) const {
    if (static_cast<int>(v.size()) != n)
        throw std::invalid_argument("matrix apply: size mismatch");
    std::vector<std::int64_t> out(v.size(), 0);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) out[i] += at(i, j) * v[j];
    return out;
}

std::int64_t IntegerMatrix::det() const {
    // Bareiss fraction-free elimination; exact for the small degrees used here
    IntegerMatrix m = *this;
    std::int64_t prev = 1;
    int sign = 1;
    for (int k = 0; k < n - 1; ++k) {
        if (m.at(k, k) == 0) {
            int swap = -1;
            for (int i = k + 1; i < n; ++i)
                if (m.at(i, k) != 0) {
                    swap = i;
                    break;
                }
            if (swap < 0) return 0;
            for (int j = 0; j < n; ++j) std::swap(m.at(k, j), m.at(swap, j));
            sign = -sign;
        }
        for (int i = k + 1; i < n; ++i)
            for (int j = k + 1; j < n; ++j)
                m.at(i, j) =
                    (m.at(i, j) * m.at(k, k) - m.at(i, k) * m.at(k, j)) / prev;
        prev = m.at(k, k);
    }
    return sign * m.at(n - 1, n - 1);
}

IntegerMatrix IntegerMatrix::inverse() const {
    std::int64_t d = det();
    if (d != 1 && d != -1)
        throw std::invalid_argument("inverse: determinant must be +-1, got " +
                                    std::to_string(d));
    // adjugate via cofactors (degrees here are tiny)
    IntegerMatrix out;
    out.n = n;
    out.a.assign(a.size(), 0);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            IntegerMatrix minor;
            minor.n = n - 1;
            for (int r = 0; r < n; ++r) {
                if (r == j) continue;
                for (int c = 0; c < n; ++c) {
                    if (c == i) continue;
                    minor.a.push_back(at(r, c));
                }
            }
            std::int64_t cof = minor.n == 0 ? 1 : minor.det();
            if ((i + j) % 2) cof = -cof;
            out.at(i, j) = d * cof;
        }
    return out;
}

IntegerMatrix IntegerMatrix::pow(long k) const {
    IntegerMatrix base = k < 0 ? inverse() : *this;
    unsigned long e = k < 0 ? static_cast<unsigned long>(-k)
                            : static_cast<unsigned long>(k);
    IntegerMatrix out = identity(n);
    while (e) {
        if (e & 1) out = out * base;
        base = base * base;
        e >>= 1;
    }
    return out;
}

std::string IntegerMatrix::str() const {
    std::ostringstream out;
    out << "[";
    for (int i = 0; i < n; ++i) {
        out << (i ? ";" : "") << "[";
        for (int j = 0; j < n; ++j) out << (j ? "," : "") << at(i, j);
        out << "]";
    }
    out << "]";
    return out.str();
}

}  // namespace ppd
