#pragma once

// Dense exact linear algebra over Q.
//
// Elimination is fraction-free (Bareiss) on integer-scaled rows, followed by a
// single normalization pass into reduced row echelon form. Pivot choice is the
// first nonzero entry in column order, so every result is reproducible.

#include <bigraded/errors.hpp>
#include <bigraded/rational.hpp>

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace bigraded {

class QMatrix {
public:
    QMatrix() = default;
    QMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), entries_(rows * cols) {}

    static QMatrix from_rows(std::initializer_list<std::initializer_list<long>> rows) {
        std::size_t cols = rows.size() ? rows.begin()->size() : 0;
        QMatrix m(0, cols);
        for (const auto& r : rows) {
            if (r.size() != cols) throw DimensionMismatch("ragged matrix literal");
            std::vector<Rational> v;
            for (long x : r) v.emplace_back(x);
            m.append_row(v);
        }
        return m;
    }

    static QMatrix from_rows(const std::vector<std::vector<Rational>>& rows, std::size_t cols) {
        QMatrix m(0, cols);
        for (const auto& r : rows) m.append_row(r);
        return m;
    }

    static QMatrix identity(std::size_t n) {
        QMatrix m(n, n);
        for (std::size_t k = 0; k < n; ++k) m(k, k) = 1;
        return m;
    }

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool empty() const noexcept { return rows_ == 0; }

    Rational& operator()(std::size_t r, std::size_t c) { return entries_[r * cols_ + c]; }
    const Rational& operator()(std::size_t r, std::size_t c) const { return entries_[r * cols_ + c]; }

    std::span<Rational> row(std::size_t r) { return {entries_.data() + r * cols_, cols_}; }
    std::span<const Rational> row(std::size_t r) const { return {entries_.data() + r * cols_, cols_}; }
    std::vector<Rational> row_vector(std::size_t r) const {
        auto s = row(r);
        return {s.begin(), s.end()};
    }

    void append_row(std::span<const Rational> v) {
        if (v.size() != cols_) throw DimensionMismatch("row length does not match column count");
        entries_.insert(entries_.end(), v.begin(), v.end());
        ++rows_;
    }

    QMatrix transpose() const {
        QMatrix t(cols_, rows_);
        for (std::size_t r = 0; r < rows_; ++r)
            for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
        return t;
    }

    QMatrix first_rows(std::size_t k) const {
        QMatrix m(0, cols_);
        for (std::size_t r = 0; r < std::min(k, rows_); ++r) m.append_row(row(r));
        return m;
    }

    friend bool operator==(const QMatrix&, const QMatrix&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Rational> entries_;
};

inline QMatrix vstack(const QMatrix& a, const QMatrix& b) {
    if (a.cols() != b.cols()) throw DimensionMismatch("vstack: column counts differ");
    QMatrix m = a;
    for (std::size_t r = 0; r < b.rows(); ++r) m.append_row(b.row(r));
    return m;
}

struct RrefResult {
    std::size_t rank = 0;
    QMatrix reduced;                  // same shape as the input, zero rows last
    std::vector<std::size_t> pivots;  // pivot column of each nonzero row
};

namespace detail {

struct IntegerRows {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<Integer> a;
    Integer& at(std::size_t r, std::size_t c) { return a[r * cols + c]; }
};

// Scales every row by the lcm of its denominators; row spaces are unchanged.
inline IntegerRows to_integer_rows(const QMatrix& m) {
    IntegerRows out{m.rows(), m.cols(), std::vector<Integer>(m.rows() * m.cols())};
    for (std::size_t r = 0; r < m.rows(); ++r) {
        Integer l = 1;
        for (const auto& q : m.row(r)) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), q.get_den_mpz_t());
        for (std::size_t c = 0; c < m.cols(); ++c) {
            const Rational& q = m(r, c);
            if (q == 0) continue;
            Integer v = l / q.get_den();
            out.at(r, c) = v * q.get_num();
        }
    }
    return out;
}

// Fraction-free forward elimination. Leaves the first `rank` rows in echelon form.
inline std::vector<std::size_t> bareiss_forward(IntegerRows& m) {
    std::vector<std::size_t> pivots;
    Integer prev = 1;
    Integer tmp;
    std::size_t r = 0;
    for (std::size_t c = 0; c < m.cols && r < m.rows; ++c) {
        std::size_t p = r;
        while (p < m.rows && m.at(p, c) == 0) ++p;
        if (p == m.rows) continue;
        if (p != r)
            for (std::size_t k = 0; k < m.cols; ++k) std::swap(m.at(p, k), m.at(r, k));
        const Integer& piv = m.at(r, c);
        for (std::size_t i = r + 1; i < m.rows; ++i) {
            const Integer f = m.at(i, c);
            for (std::size_t j = c + 1; j < m.cols; ++j) {
                Integer& e = m.at(i, j);
                if (f == 0 && e == 0) continue;
                tmp = piv * e;
                if (f != 0) tmp -= f * m.at(r, j);
                mpz_divexact(e.get_mpz_t(), tmp.get_mpz_t(), prev.get_mpz_t());
            }
            m.at(i, c) = 0;
        }
        prev = piv;
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

}  // namespace detail

inline std::size_t rank(const QMatrix& m) {
    auto ints = detail::to_integer_rows(m);
    return detail::bareiss_forward(ints).size();
}

inline RrefResult rref(const QMatrix& m) {
    auto ints = detail::to_integer_rows(m);
    RrefResult out;
    out.pivots = detail::bareiss_forward(ints);
    out.rank = out.pivots.size();
    out.reduced = QMatrix(m.rows(), m.cols());
    QMatrix& R = out.reduced;
    for (std::size_t r = 0; r < out.rank; ++r) {
        const Integer& piv = ints.at(r, out.pivots[r]);
        for (std::size_t c = out.pivots[r]; c < m.cols(); ++c) {
            if (ints.at(r, c) == 0) continue;
            R(r, c) = Rational(ints.at(r, c), piv);
            R(r, c).canonicalize();
        }
    }
    // back substitution, bottom pivot first
    for (std::size_t k = out.rank; k-- > 0;) {
        const std::size_t pc = out.pivots[k];
        for (std::size_t r = 0; r < k; ++r) {
            Rational f = R(r, pc);
            if (f == 0) continue;
            for (std::size_t c = pc; c < m.cols(); ++c)
                if (R(k, c) != 0) R(r, c) -= f * R(k, c);
        }
    }
    return out;
}

/// Nonzero rows of the reduced row echelon form.
inline QMatrix row_basis(const QMatrix& m) {
    auto res = rref(m);
    return res.reduced.first_rows(res.rank);
}

/// Basis of {v : M v = 0}, one vector per free column in increasing column order.
inline std::vector<std::vector<Rational>> kernel_basis(const QMatrix& m) {
    auto res = rref(m);
    std::vector<bool> is_pivot(m.cols(), false);
    for (auto p : res.pivots) is_pivot[p] = true;
    std::vector<std::vector<Rational>> basis;
    for (std::size_t f = 0; f < m.cols(); ++f) {
        if (is_pivot[f]) continue;
        std::vector<Rational> v(m.cols());
        v[f] = 1;
        for (std::size_t k = 0; k < res.rank; ++k) v[res.pivots[k]] = -res.reduced(k, f);
        basis.push_back(std::move(v));
    }
    return basis;
}

inline QMatrix kernel_matrix(const QMatrix& m) { return QMatrix::from_rows(kernel_basis(m), m.cols()); }

inline void require_same_ambient(const QMatrix& a, const QMatrix& b, const char* op) {
    if (a.cols() != b.cols())
        throw DimensionMismatch(std::string(op) + ": subspaces live in spaces of different dimension (" +
                                std::to_string(a.cols()) + " vs " + std::to_string(b.cols()) + ")");
}

/// Row basis of rowspace(A) + rowspace(B).
inline QMatrix subspace_sum(const QMatrix& a, const QMatrix& b) {
    require_same_ambient(a, b, "subspace_sum");
    return row_basis(vstack(a, b));
}

/// Row basis of rowspace(A) ∩ rowspace(B), computed as the joint kernel of both annihilators.
inline QMatrix subspace_intersect(const QMatrix& a, const QMatrix& b) {
    require_same_ambient(a, b, "subspace_intersect");
    QMatrix ann = vstack(kernel_matrix(a), kernel_matrix(b));
    return row_basis(kernel_matrix(ann));
}

/// True iff rowspace(B) ⊆ rowspace(A).
inline bool subspace_contains(const QMatrix& a, const QMatrix& b) {
    require_same_ambient(a, b, "subspace_contains");
    return rank(vstack(a, b)) == rank(a);
}

/// Growing echelon basis of a subspace of Q^dim that can also express members
/// as combinations of the vectors it accepted.
class IncrementalSpan {
public:
    explicit IncrementalSpan(std::size_t dim) : dim_(dim) {}

    std::size_t dim() const noexcept { return dim_; }
    std::size_t rank() const noexcept { return rows_.size(); }
    bool full() const noexcept { return rows_.size() == dim_; }

    /// Adds v if it is independent of the span; returns whether it was added.
    bool insert(std::span<const Rational> v) {
        check(v);
        if (full()) return false;
        std::vector<Rational> r(v.begin(), v.end());
        std::vector<Rational> combo(accepted_.size() + 1);
        combo.back() = 1;
        for (std::size_t k = 0; k < rows_.size(); ++k) {
            const Rational c = r[pivots_[k]];
            if (c == 0) continue;
            axpy(r, rows_[k], c);
            axpy(combo, combos_[k], c);
        }
        auto it = std::find_if(r.begin(), r.end(), [](const Rational& x) { return x != 0; });
        if (it == r.end()) return false;
        const std::size_t p = static_cast<std::size_t>(it - r.begin());
        const Rational inv = 1 / r[p];
        for (auto& x : r) x *= inv;
        for (auto& x : combo) x *= inv;
        for (auto& c : combos_) c.resize(accepted_.size() + 1);
        for (std::size_t k = 0; k < rows_.size(); ++k) {
            const Rational c = rows_[k][p];
            if (c == 0) continue;
            axpy(rows_[k], r, c);
            axpy(combos_[k], combo, c);
        }
        rows_.push_back(std::move(r));
        combos_.push_back(std::move(combo));
        pivots_.push_back(p);
        accepted_.emplace_back(v.begin(), v.end());
        return true;
    }

    bool contains(std::span<const Rational> v) const { return coordinates(v).has_value(); }

    /// Coefficients of v over the accepted vectors (in acceptance order), if v is in the span.
    std::optional<std::vector<Rational>> coordinates(std::span<const Rational> v) const {
        check(v);
        std::vector<Rational> r(v.begin(), v.end());
        std::vector<Rational> coeff(accepted_.size());
        for (std::size_t k = 0; k < rows_.size(); ++k) {
            const Rational c = r[pivots_[k]];
            if (c == 0) continue;
            axpy(r, rows_[k], c);
            for (std::size_t t = 0; t < combos_[k].size(); ++t)
                if (combos_[k][t] != 0) coeff[t] += c * combos_[k][t];
        }
        for (const auto& x : r)
            if (x != 0) return std::nullopt;
        return coeff;
    }

    const std::vector<std::vector<Rational>>& accepted() const noexcept { return accepted_; }

    QMatrix basis() const { return QMatrix::from_rows(accepted_, dim_); }

private:
    void check(std::span<const Rational> v) const {
        if (v.size() != dim_) throw DimensionMismatch("vector length does not match span dimension");
    }
    // x -= c * y
    static void axpy(std::vector<Rational>& x, const std::vector<Rational>& y, const Rational& c) {
        for (std::size_t i = 0; i < y.size(); ++i)
            if (y[i] != 0) x[i] -= c * y[i];
    }

    std::size_t dim_;
    std::vector<std::vector<Rational>> rows_;    // fully reduced, pivot entry 1
    std::vector<std::vector<Rational>> combos_;  // rows_[k] = sum combos_[k][t] * accepted_[t]
    std::vector<std::size_t> pivots_;
    std::vector<std::vector<Rational>> accepted_;
};

}  // namespace bigraded
