#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <vector>

#include "curvefrob/rational.hpp"

namespace curvefrob {

// Dense matrix over the rationals; every operation is exact.
class QMatrix {
  public:
    QMatrix() = default;
    QMatrix(int rows, int cols)
        : rows_(rows), cols_(cols),
          data_(static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols), Rational(0)) {
        if (rows < 0 || cols < 0) throw std::invalid_argument("negative matrix dimension");
    }

    static QMatrix identity(int n) {
        QMatrix m(n, n);
        for (int i = 0; i < n; ++i) m.at(i, i) = 1;
        return m;
    }

    static QMatrix from_columns(const std::vector<std::vector<Rational>>& cols) {
        if (cols.empty()) return QMatrix(0, 0);
        QMatrix m(static_cast<int>(cols.front().size()), static_cast<int>(cols.size()));
        for (int j = 0; j < m.cols(); ++j) {
            if (static_cast<int>(cols[j].size()) != m.rows())
                throw std::invalid_argument("ragged column set");
            for (int i = 0; i < m.rows(); ++i) m.at(i, j) = cols[j][i];
        }
        return m;
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    Rational& at(int i, int j) { return data_[index(i, j)]; }
    const Rational& at(int i, int j) const { return data_[index(i, j)]; }

    bool is_zero() const {
        for (const auto& v : data_)
            if (v != 0) return false;
        return true;
    }

    QMatrix operator*(const QMatrix& o) const {
        if (cols_ != o.rows_) throw std::invalid_argument("matrix shape mismatch");
        QMatrix r(rows_, o.cols_);
        for (int i = 0; i < rows_; ++i)
            for (int k = 0; k < cols_; ++k) {
                const Rational& a = at(i, k);
                if (a == 0) continue;
                for (int j = 0; j < o.cols_; ++j) {
                    const Rational& b = o.at(k, j);
                    if (b != 0) r.at(i, j) += a * b;
                }
            }
        return r;
    }

    std::vector<Rational> operator*(const std::vector<Rational>& v) const {
        if (static_cast<int>(v.size()) != cols_) throw std::invalid_argument("vector size mismatch");
        std::vector<Rational> r(rows_, Rational(0));
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j)
                if (at(i, j) != 0 && v[j] != 0) r[i] += at(i, j) * v[j];
        return r;
    }

    QMatrix operator-(const QMatrix& o) const {
        if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("matrix shape mismatch");
        QMatrix r(rows_, cols_);
        for (std::size_t i = 0; i < data_.size(); ++i) r.data_[i] = data_[i] - o.data_[i];
        return r;
    }

    QMatrix transpose() const {
        QMatrix r(cols_, rows_);
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j) r.at(j, i) = at(i, j);
        return r;
    }

    QMatrix power(int k) const {
        if (rows_ != cols_) throw std::invalid_argument("power of a non-square matrix");
        if (k < 0) throw std::invalid_argument("negative matrix power");
        QMatrix r = identity(rows_);
        for (int i = 0; i < k; ++i) r = r * *this;
        return r;
    }

    friend bool operator==(const QMatrix&, const QMatrix&) = default;

  private:
    std::size_t index(int i, int j) const {
        if (i < 0 || i >= rows_ || j < 0 || j >= cols_) throw std::out_of_range("matrix index");
        return static_cast<std::size_t>(i) * static_cast<std::size_t>(cols_) +
               static_cast<std::size_t>(j);
    }

    int rows_ = 0;
    int cols_ = 0;
    std::vector<Rational> data_;
};

// Gauss-Jordan elimination in place; returns the pivot column of each pivot
// row. Pivot selection is the first row with a nonzero entry, scanning
// columns left to right, which makes the result deterministic.
inline std::vector<int> rref_in_place(QMatrix& m) {
    std::vector<int> pivots;
    int row = 0;
    for (int col = 0; col < m.cols() && row < m.rows(); ++col) {
        int pr = -1;
        for (int i = row; i < m.rows(); ++i)
            if (m.at(i, col) != 0) {
                pr = i;
                break;
            }
        if (pr < 0) continue;
        if (pr != row)
            for (int j = 0; j < m.cols(); ++j) std::swap(m.at(pr, j), m.at(row, j));
        Rational inv = Rational(1) / m.at(row, col);
        for (int j = 0; j < m.cols(); ++j) m.at(row, j) = Rational(m.at(row, j) * inv);
        for (int i = 0; i < m.rows(); ++i) {
            if (i == row || m.at(i, col) == 0) continue;
            Rational factor = m.at(i, col);
            for (int j = 0; j < m.cols(); ++j) m.at(i, j) -= factor * m.at(row, j);
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

inline int rank(QMatrix m) { return static_cast<int>(rref_in_place(m).size()); }

// Basis of the right null space, one vector per free column, in ascending
// free-column order.
inline std::vector<std::vector<Rational>> kernel_basis(QMatrix m) {
    const int n = m.cols();
    std::vector<int> pivots = rref_in_place(m);
    std::vector<bool> is_pivot(n, false);
    for (int c : pivots) is_pivot[c] = true;
    std::vector<std::vector<Rational>> out;
    for (int f = 0; f < n; ++f) {
        if (is_pivot[f]) continue;
        std::vector<Rational> v(n, Rational(0));
        v[f] = 1;
        for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = Rational(-m.at(static_cast<int>(r), f));
        out.push_back(std::move(v));
    }
    return out;
}

// Solves a*x = b; nullopt when inconsistent. Free variables are set to zero.
inline std::optional<std::vector<Rational>> solve(const QMatrix& a, const std::vector<Rational>& b) {
    if (static_cast<int>(b.size()) != a.rows()) throw std::invalid_argument("rhs size mismatch");
    QMatrix aug(a.rows(), a.cols() + 1);
    for (int i = 0; i < a.rows(); ++i) {
        for (int j = 0; j < a.cols(); ++j) aug.at(i, j) = a.at(i, j);
        aug.at(i, a.cols()) = b[i];
    }
    std::vector<int> pivots = rref_in_place(aug);
    if (!pivots.empty() && pivots.back() == a.cols()) return std::nullopt;
    std::vector<Rational> x(a.cols(), Rational(0));
    for (std::size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = aug.at(static_cast<int>(r), a.cols());
    return x;
}

inline std::optional<QMatrix> inverse(const QMatrix& a) {
    if (a.rows() != a.cols()) throw std::invalid_argument("inverse of a non-square matrix");
    const int n = a.rows();
    QMatrix aug(n, 2 * n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) aug.at(i, j) = a.at(i, j);
        aug.at(i, n + i) = 1;
    }
    std::vector<int> pivots = rref_in_place(aug);
    if (static_cast<int>(pivots.size()) != n) return std::nullopt;
    QMatrix inv(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) inv.at(i, j) = aug.at(i, n + j);
    return inv;
}

}  // namespace curvefrob
