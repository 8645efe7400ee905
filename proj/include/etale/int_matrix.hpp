// Dense exact-integer matrices and the handful of structural operations the
// rest of the library is built on: Kronecker products, exact powers,
// exterior powers (compound matrices), and the `r r / r r` text format used
// by scenario files and the --matrix flag.

#pragma once

#include "etale/numeric.hpp"

#include <boost/multiprecision/eigen.hpp>

#include <Eigen/Core>

#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace etale {

using IntMatrix = Eigen::Matrix<Int, Eigen::Dynamic, Eigen::Dynamic>;
using IntVector = Eigen::Matrix<Int, Eigen::Dynamic, 1>;
using RatMatrix = Eigen::Matrix<Rat, Eigen::Dynamic, Eigen::Dynamic>;

// Caps shared by the exact-matrix operations.  Exceeding a cap raises
// CapExceeded: results are never truncated silently.
struct MatrixCaps {
    Eigen::Index max_dimension = 512;
    std::size_t max_entry_bits = 1u << 20;
};

struct CapExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline bool is_square(const IntMatrix& a) { return a.rows() == a.cols(); }

// Entrywise equality including shape (Eigen's operator== is coefficient-wise
// and asserts on shape mismatch, so it is never used directly here).
inline bool same_matrix(const IntMatrix& a, const IntMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            if (a(i, j) != b(i, j)) return false;
    return true;
}

inline bool is_nonnegative(const IntMatrix& a) {
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            if (a(i, j) < 0) return false;
    return true;
}

inline bool is_zero_one(const IntMatrix& a) {
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            if (a(i, j) != 0 && a(i, j) != 1) return false;
    return true;
}

inline void require_square_nonnegative(const IntMatrix& a, const char* who) {
    if (!is_square(a)) throw std::invalid_argument(std::string(who) + ": matrix not square");
    if (!is_nonnegative(a)) throw std::invalid_argument(std::string(who) + ": negative entry");
}

inline IntMatrix abs_entries(const IntMatrix& a) {
    IntMatrix r = a;
    for (Eigen::Index i = 0; i < r.rows(); ++i)
        for (Eigen::Index j = 0; j < r.cols(); ++j)
            if (r(i, j) < 0) r(i, j) = -r(i, j);
    return r;
}

inline Int max_abs_entry(const IntMatrix& a) {
    Int m = 0;
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            Int v = a(i, j) < 0 ? Int(-a(i, j)) : a(i, j);
            if (v > m) m = v;
        }
    return m;
}

// 0/1 support of a matrix (used by correspondences).
inline IntMatrix support(const IntMatrix& a) {
    IntMatrix s(a.rows(), a.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            s(i, j) = a(i, j) != 0 ? 1 : 0;
    return s;
}

// Kronecker (tensor) product.  rho(A (x) B) = rho(A) * rho(B); the identity
// is exercised by tests, not assumed here.
inline IntMatrix kronecker(const IntMatrix& a, const IntMatrix& b,
                           const MatrixCaps& caps = {}) {
    if (a.rows() * b.rows() > caps.max_dimension)
        throw CapExceeded("kronecker: dimension " + std::to_string(a.rows() * b.rows()) +
                          " exceeds cap " + std::to_string(caps.max_dimension));
    IntMatrix r(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            for (Eigen::Index k = 0; k < b.rows(); ++k)
                for (Eigen::Index l = 0; l < b.cols(); ++l)
                    r(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
    return r;
}

// Exact n-th power by repeated squaring, n >= 1.
inline IntMatrix matrix_power(const IntMatrix& a, unsigned long n, const MatrixCaps& caps = {}) {
    if (!is_square(a)) throw std::invalid_argument("matrix_power: matrix not square");
    if (n < 1) throw std::invalid_argument("matrix_power: exponent must be >= 1");
    if (a.rows() > caps.max_dimension)
        throw CapExceeded("matrix_power: dimension exceeds cap");
    auto check_entries = [&](const IntMatrix& m) {
        Int big = max_abs_entry(m);
        if (big != 0 && msb(big) + 1 > caps.max_entry_bits)
            throw CapExceeded("matrix_power: entry size exceeds cap of " +
                              std::to_string(caps.max_entry_bits) + " bits");
    };
    IntMatrix base = a;
    IntMatrix result;
    bool have = false;
    while (n > 0) {
        if (n & 1) {
            result = have ? IntMatrix(result * base) : base;
            have = true;
            check_entries(result);
        }
        n >>= 1;
        if (n > 0) {
            base = base * base;
            check_entries(base);
        }
    }
    return result;
}

namespace detail {
// Sorted p-subsets of {0..k-1} in lexicographic order.
inline std::vector<std::vector<int>> subsets_lex(int k, int p) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur(p);
    for (int i = 0; i < p; ++i) cur[i] = i;
    if (p == 0) { out.push_back({}); return out; }
    if (p > k) return out;
    while (true) {
        out.push_back(cur);
        int i = p - 1;
        while (i >= 0 && cur[i] == k - p + i) --i;
        if (i < 0) break;
        ++cur[i];
        for (int j = i + 1; j < p; ++j) cur[j] = cur[j - 1] + 1;
    }
    return out;
}

// Exact determinant by fraction-free (Bareiss) elimination.
inline Int det_bareiss(IntMatrix m) {
    const Eigen::Index n = m.rows();
    if (n == 0) return 1;
    Int denom = 1;
    int sign = 1;
    for (Eigen::Index c = 0; c < n - 1; ++c) {
        Eigen::Index pivot = -1;
        for (Eigen::Index r = c; r < n; ++r)
            if (m(r, c) != 0) { pivot = r; break; }
        if (pivot < 0) return 0;
        if (pivot != c) { m.row(pivot).swap(m.row(c)); sign = -sign; }
        for (Eigen::Index r = c + 1; r < n; ++r) {
            for (Eigen::Index j = c + 1; j < n; ++j) {
                Int v = m(r, j) * m(c, c) - m(r, c) * m(c, j);
                m(r, j) = v / denom;  // Bareiss: division is exact
            }
            m(r, c) = 0;
        }
        denom = m(c, c);
    }
    return sign > 0 ? m(n - 1, n - 1) : Int(-m(n - 1, n - 1));
}
}  // namespace detail

inline Int determinant(const IntMatrix& a) {
    if (!is_square(a)) throw std::invalid_argument("determinant: matrix not square");
    return detail::det_bareiss(a);
}

// p-th exterior power (compound matrix): entries are the p x p minors
// indexed by sorted row/column subsets in lexicographic order.
// ext(0, M) = [1]; ext(k, M) = [det M]; ext(1, M) = M.
inline IntMatrix exterior_power(const IntMatrix& m, int p) {
    if (!is_square(m)) throw std::invalid_argument("exterior_power: matrix not square");
    const int k = static_cast<int>(m.rows());
    if (p < 0 || p > k) throw std::invalid_argument("exterior_power: p out of range 0..k");
    auto subs = detail::subsets_lex(k, p);
    const Eigen::Index d = static_cast<Eigen::Index>(subs.size());
    IntMatrix r(d, d);
    for (Eigen::Index i = 0; i < d; ++i)
        for (Eigen::Index j = 0; j < d; ++j) {
            IntMatrix minor(p, p);
            for (int a = 0; a < p; ++a)
                for (int b = 0; b < p; ++b)
                    minor(a, b) = m(subs[i][a], subs[j][b]);
            r(i, j) = detail::det_bareiss(std::move(minor));
        }
    return r;
}

// --- matrix text format -----------------------------------------------
// Rows separated by '/', entries by whitespace: "1 1 / 1 0".

inline IntMatrix parse_matrix(const std::string& text) {
    std::vector<std::vector<Int>> rows;
    std::string row_text;
    std::stringstream all(text);
    while (std::getline(all, row_text, '/')) {
        std::vector<Int> row;
        std::stringstream rs(row_text);
        std::string tok;
        while (rs >> tok) {
            try {
                row.emplace_back(Int(tok));
            } catch (const std::exception&) {
                throw std::invalid_argument("parse_matrix: bad entry '" + tok + "'");
            }
        }
        if (!row.empty()) rows.push_back(std::move(row));
    }
    if (rows.empty()) throw std::invalid_argument("parse_matrix: empty matrix text");
    const std::size_t cols = rows.front().size();
    for (const auto& r : rows)
        if (r.size() != cols)
            throw std::invalid_argument("parse_matrix: ragged rows");
    IntMatrix m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(cols));
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < m.cols(); ++j)
            m(i, j) = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
    return m;
}

inline std::string format_matrix(const IntMatrix& m) {
    std::ostringstream out;
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        if (i) out << " / ";
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            if (j) out << ' ';
            out << m(i, j);
        }
    }
    return out.str();
}

}  // namespace etale
