#pragma once

#include <affdyn/rational.hpp>
#include <affdyn/unipoly.hpp>

#include <cstddef>
#include <initializer_list>
#include <stdexcept>
#include <utility>
#include <vector>

namespace affdyn {

namespace detail {
template <class T>
T ring_one() {
    if constexpr (std::is_same_v<T, UniPoly>)
        return UniPoly(Rat(1));
    else
        return T(1);
}
}  // namespace detail

/// Dense matrix over an exact ring (Int, Rat, UniPoly). Entries are
/// value types; there is no aliasing and no hidden mutation.
template <class T>
class Matrix {
public:
    Matrix() : rows_(0), cols_(0) {}
    Matrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols, T{}) {}

    Matrix(std::initializer_list<std::initializer_list<T>> init) {
        rows_ = init.size();
        cols_ = rows_ ? init.begin()->size() : 0;
        data_.reserve(rows_ * cols_);
        for (const auto& row : init) {
            if (row.size() != cols_) throw std::invalid_argument("ragged matrix literal");
            for (const auto& x : row) data_.push_back(x);
        }
    }

    static Matrix identity(std::size_t n) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = detail::ring_one<T>();
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool square() const { return rows_ == cols_; }

    T& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const T& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    template <class U, class F>
    Matrix<U> map(F&& f) const {
        Matrix<U> out(rows_, cols_);
        for (std::size_t r = 0; r < rows_; ++r)
            for (std::size_t c = 0; c < cols_; ++c) out(r, c) = f((*this)(r, c));
        return out;
    }

    friend Matrix operator+(const Matrix& a, const Matrix& b) {
        a.require_same_shape(b);
        Matrix m(a.rows_, a.cols_);
        for (std::size_t i = 0; i < a.data_.size(); ++i) m.data_[i] = a.data_[i] + b.data_[i];
        return m;
    }

    friend Matrix operator-(const Matrix& a, const Matrix& b) {
        a.require_same_shape(b);
        Matrix m(a.rows_, a.cols_);
        for (std::size_t i = 0; i < a.data_.size(); ++i) m.data_[i] = a.data_[i] - b.data_[i];
        return m;
    }

    friend Matrix operator*(const Matrix& a, const Matrix& b) {
        if (a.cols_ != b.rows_) throw std::invalid_argument("matrix shape mismatch in product");
        Matrix m(a.rows_, b.cols_);
        for (std::size_t r = 0; r < a.rows_; ++r)
            for (std::size_t k = 0; k < a.cols_; ++k) {
                const T& x = a(r, k);
                for (std::size_t c = 0; c < b.cols_; ++c) m(r, c) = m(r, c) + x * b(k, c);
            }
        return m;
    }

    friend Matrix operator*(const T& s, const Matrix& a) {
        Matrix m(a.rows_, a.cols_);
        for (std::size_t i = 0; i < a.data_.size(); ++i) m.data_[i] = s * a.data_[i];
        return m;
    }

    std::vector<T> apply(const std::vector<T>& v) const {
        if (v.size() != cols_) throw std::invalid_argument("matrix/vector size mismatch");
        std::vector<T> out(rows_, T{});
        for (std::size_t r = 0; r < rows_; ++r)
            for (std::size_t c = 0; c < cols_; ++c) out[r] = out[r] + (*this)(r, c) * v[c];
        return out;
    }

    Matrix pow(std::uint64_t e) const {
        if (!square()) throw std::invalid_argument("pow of non-square matrix");
        Matrix result = identity(rows_);
        Matrix base = *this;
        while (e) {
            if (e & 1) result = result * base;
            base = base * base;
            e >>= 1;
        }
        return result;
    }

    bool is_zero() const {
        for (const auto& x : data_)
            if (!(x == T{})) return false;
        return true;
    }

    friend bool operator==(const Matrix& a, const Matrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }
    friend bool operator!=(const Matrix& a, const Matrix& b) { return !(a == b); }

private:
    void require_same_shape(const Matrix& o) const {
        if (rows_ != o.rows_ || cols_ != o.cols_)
            throw std::invalid_argument("matrix shape mismatch");
    }

    std::size_t rows_, cols_;
    std::vector<T> data_;
};

using IntMatrix = Matrix<Int>;
using RatMatrix = Matrix<Rat>;
using PolyMatrix = Matrix<UniPoly>;

inline RatMatrix to_rational(const IntMatrix& m) {
    return m.template map<Rat>([](const Int& x) { return Rat(x); });
}

/// Determinant over Q by exact Gaussian elimination with partial pivot.
inline Rat det(const RatMatrix& m) {
    if (!m.square()) throw std::invalid_argument("det of non-square matrix");
    RatMatrix a = m;
    std::size_t n = a.rows();
    Rat d(1);
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        while (piv < n && a(piv, col) == 0) ++piv;
        if (piv == n) return Rat(0);
        if (piv != col) {
            for (std::size_t c = col; c < n; ++c) std::swap(a(piv, c), a(col, c));
            d = -d;
        }
        d *= a(col, col);
        for (std::size_t r = col + 1; r < n; ++r) {
            if (a(r, col) == 0) continue;
            Rat f = a(r, col) / a(col, col);
            for (std::size_t c = col; c < n; ++c) a(r, c) -= f * a(col, c);
        }
    }
    return d;
}

inline Int det(const IntMatrix& m) {
    Rat d = det(to_rational(m));
    return rat_num(d);  // integer matrix has integer determinant
}

/// Characteristic polynomial det(xI - m) by the Berkowitz algorithm:
/// division-free, exact over the integers, monic.
inline UniPoly char_poly(const IntMatrix& m) {
    if (!m.square()) throw std::invalid_argument("char_poly of non-square matrix");
    std::size_t n = m.rows();
    // Coefficient vector of det(xI - A_k) for the leading principal
    // k x k block, constant term first, length k+1.
    std::vector<Int> c{Int(1)};
    for (std::size_t k = 1; k <= n; ++k) {
        // Toeplitz column t for the k-th Berkowitz step.
        std::vector<Int> t(k + 1);
        t[0] = 1;
        t[1] = -m(k - 1, k - 1);
        if (k >= 2) {
            std::vector<Int> w(k - 1);  // = A_{k-1}^p * S, p = 0, 1, ...
            for (std::size_t i = 0; i < k - 1; ++i) w[i] = m(i, k - 1);
            for (std::size_t p = 2; p <= k; ++p) {
                Int dot = 0;
                for (std::size_t i = 0; i < k - 1; ++i) dot += m(k - 1, i) * w[i];
                t[p] = -dot;
                if (p < k) {
                    std::vector<Int> w2(k - 1, Int(0));
                    for (std::size_t r = 0; r < k - 1; ++r)
                        for (std::size_t s = 0; s < k - 1; ++s) w2[r] += m(r, s) * w[s];
                    w = std::move(w2);
                }
            }
        }
        std::vector<Int> next(k + 1, Int(0));
        for (std::size_t i = 0; i < c.size(); ++i)
            for (std::size_t j = 0; i + j <= k && j < t.size(); ++j) next[i + j] += t[j] * c[i];
        c = std::move(next);
    }
    // Berkowitz produces coefficients highest power first; flip to the
    // constant-first convention and load into a UniPoly.
    std::vector<Rat> coeffs(n + 1);
    for (std::size_t i = 0; i <= n; ++i) coeffs[i] = Rat(c[n - i]);
    return UniPoly(std::move(coeffs));
}

}  // namespace affdyn
