#include "aqg/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace aqg {

Mat Mat::identity(std::size_t n) {
    Mat m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = Scalar(1);
    return m;
}

Mat Mat::operator*(const Mat& o) const {
    if (cols_ != o.rows_) throw std::invalid_argument("Mat::operator*: shape mismatch");
    Mat r(rows_, o.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t k = 0; k < cols_; ++k) {
            const Scalar& x = at(i, k);
            if (x.is_zero()) continue;
            for (std::size_t j = 0; j < o.cols_; ++j) {
                const Scalar& y = o.at(k, j);
                if (!y.is_zero()) r.at(i, j) += x * y;
            }
        }
    return r;
}

Mat Mat::operator+(const Mat& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("Mat::+ shape");
    Mat r(rows_, cols_);
    for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] = a_[i] + o.a_[i];
    return r;
}

Mat Mat::operator-(const Mat& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("Mat::- shape");
    Mat r(rows_, cols_);
    for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] = a_[i] - o.a_[i];
    return r;
}

Mat Mat::scaled(const Scalar& s) const {
    Mat r(rows_, cols_);
    for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] = a_[i] * s;
    return r;
}

Mat Mat::transpose() const {
    Mat r(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) r.at(j, i) = at(i, j);
    return r;
}

Mat Mat::conj_transpose() const {
    Mat r(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) r.at(j, i) = at(i, j).conj();
    return r;
}

bool Mat::all_exact() const {
    return std::all_of(a_.begin(), a_.end(), [](const Scalar& s) { return s.is_exact(); });
}

bool Mat::is_zero() const {
    return std::all_of(a_.begin(), a_.end(), [](const Scalar& s) { return s.is_zero(); });
}

double Mat::max_abs() const {
    double m = 0;
    for (const Scalar& s : a_) m = std::max(m, s.abs());
    return m;
}

bool operator==(const Mat& a, const Mat& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.a_ == b.a_;
}

Vec mat_apply(const Mat& m, const Vec& v) {
    if (m.cols() != v.size()) throw std::invalid_argument("mat_apply: shape mismatch");
    Vec r(m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            if (!m.at(i, j).is_zero() && !v[j].is_zero()) r[i] += m.at(i, j) * v[j];
    return r;
}

namespace {

void require_exact(const Mat& a, const char* who) {
    if (!a.all_exact()) throw std::domain_error(std::string(who) + ": float-tier entry in exact elimination");
}

}  // namespace

Factorization::Factorization(Mat a) : n_(a.rows()), lu_(std::move(a)) {
    if (lu_.rows() != lu_.cols()) throw std::invalid_argument("Factorization: square matrix required");
    require_exact(lu_, "Factorization");
    perm_.resize(n_);
    for (std::size_t i = 0; i < n_; ++i) perm_[i] = i;
    for (std::size_t k = 0; k < n_; ++k) {
        std::size_t piv = k;
        while (piv < n_ && lu_.at(perm_[piv], k).is_zero()) ++piv;
        if (piv == n_) throw std::domain_error("Factorization: singular matrix");
        std::swap(perm_[k], perm_[piv]);
        const Scalar d = lu_.at(perm_[k], k);
        for (std::size_t i = k + 1; i < n_; ++i) {
            Scalar f = lu_.at(perm_[i], k) / d;
            lu_.at(perm_[i], k) = f;
            if (f.is_zero()) continue;
            for (std::size_t j = k + 1; j < n_; ++j)
                lu_.at(perm_[i], j) -= f * lu_.at(perm_[k], j);
        }
    }
}

Vec Factorization::solve(const Vec& rhs) const {
    if (rhs.size() != n_) throw std::invalid_argument("Factorization::solve: size mismatch");
    Vec y(n_);
    for (std::size_t i = 0; i < n_; ++i) {
        Scalar s = rhs[perm_[i]];
        for (std::size_t j = 0; j < i; ++j) s -= lu_.at(perm_[i], j) * y[j];
        y[i] = s;
    }
    Vec x(n_);
    for (std::size_t ii = n_; ii-- > 0;) {
        Scalar s = y[ii];
        for (std::size_t j = ii + 1; j < n_; ++j) s -= lu_.at(perm_[ii], j) * x[j];
        x[ii] = s / lu_.at(perm_[ii], ii);
    }
    return x;
}

Mat Factorization::solve(const Mat& rhs) const {
    Mat out(n_, rhs.cols());
    Vec col(n_);
    for (std::size_t c = 0; c < rhs.cols(); ++c) {
        for (std::size_t r = 0; r < n_; ++r) col[r] = rhs.at(r, c);
        Vec x = solve(col);
        for (std::size_t r = 0; r < n_; ++r) out.at(r, c) = x[r];
    }
    return out;
}

namespace {

// In-place row echelon; returns pivot column per pivot row.
std::vector<std::size_t> echelon(Mat& a) {
    require_exact(a, "echelon");
    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    for (std::size_t col = 0; col < a.cols() && row < a.rows(); ++col) {
        std::size_t piv = row;
        while (piv < a.rows() && a.at(piv, col).is_zero()) ++piv;
        if (piv == a.rows()) continue;
        if (piv != row)
            for (std::size_t j = 0; j < a.cols(); ++j) std::swap(a.at(piv, j), a.at(row, j));
        const Scalar d = a.at(row, col);
        for (std::size_t i = 0; i < a.rows(); ++i) {
            if (i == row || a.at(i, col).is_zero()) continue;
            Scalar f = a.at(i, col) / d;
            for (std::size_t j = col; j < a.cols(); ++j) a.at(i, j) -= f * a.at(row, j);
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

}  // namespace

std::size_t rank(Mat a) { return echelon(a).size(); }

std::vector<Vec> nullspace(Mat a) {
    const std::size_t n = a.cols();
    std::vector<std::size_t> pivots = echelon(a);
    std::vector<bool> is_pivot(n, false);
    for (std::size_t c : pivots) is_pivot[c] = true;
    std::vector<Vec> basis;
    for (std::size_t freec = 0; freec < n; ++freec) {
        if (is_pivot[freec]) continue;
        Vec v(n);
        v[freec] = Scalar(1);
        for (std::size_t r = 0; r < pivots.size(); ++r) {
            std::size_t pc = pivots[r];
            if (!a.at(r, freec).is_zero()) v[pc] = -(a.at(r, freec) / a.at(r, pc));
        }
        basis.push_back(std::move(v));
    }
    return basis;
}

Mat inverse(const Mat& a) {
    Factorization f(a);
    return f.solve(Mat::identity(a.rows()));
}

Vec solve(const Mat& a, const Vec& b) { return Factorization(a).solve(b); }

bool hermitian_positive_definite(const Mat& a) {
    if (a.rows() != a.cols() || !a.all_exact()) return false;
    const std::size_t n = a.rows();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j <= i; ++j)
            if (a.at(i, j) != a.at(j, i).conj()) return false;
    Mat w = a;
    // LDL^* sweep on the lower triangle: pivots must stay strictly positive
    for (std::size_t k = 0; k < n; ++k) {
        const Scalar piv = w.at(k, k);
        if (!piv.is_real() || sgn(piv.re()) <= 0) return false;
        for (std::size_t i = k + 1; i < n; ++i) {
            Scalar f = w.at(i, k) / piv;
            if (f.is_zero()) continue;
            for (std::size_t j = k + 1; j <= i; ++j)
                w.at(i, j) -= f * w.at(j, k).conj();
        }
    }
    return true;
}

Vec solve_float(Mat a, Vec b, double pivot_tol) {
    const std::size_t n = a.rows();
    if (a.cols() != n || b.size() != n) throw std::invalid_argument("solve_float: shape");
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t piv = k;
        double best = a.at(k, k).abs();
        for (std::size_t i = k + 1; i < n; ++i)
            if (a.at(i, k).abs() > best) best = a.at(i, k).abs(), piv = i;
        if (best <= pivot_tol) throw std::domain_error("solve_float: numerically singular");
        if (piv != k) {
            for (std::size_t j = 0; j < n; ++j) std::swap(a.at(piv, j), a.at(k, j));
            std::swap(b[piv], b[k]);
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            Scalar f = a.at(i, k) / a.at(k, k);
            for (std::size_t j = k; j < n; ++j) a.at(i, j) -= f * a.at(k, j);
            b[i] -= f * b[k];
        }
    }
    Vec x(n);
    for (std::size_t ii = n; ii-- > 0;) {
        Scalar s = b[ii];
        for (std::size_t j = ii + 1; j < n; ++j) s -= a.at(ii, j) * x[j];
        x[ii] = s / a.at(ii, ii);
    }
    return x;
}

std::vector<Vec> nullspace_float(Mat a, double tol) {
    const std::size_t rows = a.rows(), cols = a.cols();
    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    for (std::size_t col = 0; col < cols && row < rows; ++col) {
        std::size_t piv = row;
        double best = a.at(row, col).abs();
        for (std::size_t i = row + 1; i < rows; ++i)
            if (a.at(i, col).abs() > best) best = a.at(i, col).abs(), piv = i;
        if (best <= tol) continue;
        if (piv != row)
            for (std::size_t j = 0; j < cols; ++j) std::swap(a.at(piv, j), a.at(row, j));
        const Scalar d = a.at(row, col);
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == row) continue;
            Scalar f = a.at(i, col) / d;
            if (f.abs() == 0.0) continue;
            for (std::size_t j = col; j < cols; ++j) a.at(i, j) -= f * a.at(row, j);
        }
        pivots.push_back(col);
        ++row;
    }
    std::vector<bool> is_pivot(cols, false);
    for (std::size_t c : pivots) is_pivot[c] = true;
    std::vector<Vec> basis;
    for (std::size_t freec = 0; freec < cols; ++freec) {
        if (is_pivot[freec]) continue;
        Vec v(cols, Scalar::floating({0.0, 0.0}));
        v[freec] = Scalar::floating({1.0, 0.0});
        for (std::size_t r = 0; r < pivots.size(); ++r) {
            std::size_t pc = pivots[r];
            v[pc] = -(a.at(r, freec) / a.at(r, pc));
        }
        basis.push_back(std::move(v));
    }
    return basis;
}

std::vector<std::size_t> independent_subset(const std::vector<Vec>& vecs) {
    std::vector<std::size_t> keep;
    std::vector<Vec> reduced;           // echelonized rows accepted so far
    std::vector<std::size_t> pivcol;
    for (std::size_t i = 0; i < vecs.size(); ++i) {
        Vec v = vecs[i];
        for (std::size_t r = 0; r < reduced.size(); ++r) {
            const Scalar& lead = v[pivcol[r]];
            if (lead.is_zero()) continue;
            Scalar f = lead / reduced[r][pivcol[r]];
            for (std::size_t j = 0; j < v.size(); ++j)
                if (!reduced[r][j].is_zero()) v[j] -= f * reduced[r][j];
        }
        std::size_t p = 0;
        while (p < v.size() && v[p].is_zero()) ++p;
        if (p == v.size()) continue;    // dependent
        keep.push_back(i);
        pivcol.push_back(p);
        reduced.push_back(std::move(v));
    }
    return keep;
}

std::optional<Vec> coordinates_in_span(const std::vector<Vec>& basis, const Vec& v) {
    if (basis.empty()) {
        bool zero = std::all_of(v.begin(), v.end(), [](const Scalar& s) { return s.is_zero(); });
        return zero ? std::optional<Vec>(Vec{}) : std::nullopt;
    }
    const std::size_t dim = v.size();
    const std::size_t k = basis.size();
    // augmented system [basis^T | v]
    Mat m(dim, k + 1);
    for (std::size_t j = 0; j < k; ++j)
        for (std::size_t i = 0; i < dim; ++i) m.at(i, j) = basis[j][i];
    for (std::size_t i = 0; i < dim; ++i) m.at(i, k) = v[i];
    std::vector<std::size_t> pivots = echelon(m);
    Vec coords(k);
    for (std::size_t r = 0; r < pivots.size(); ++r) {
        if (pivots[r] == k) return std::nullopt;  // inconsistent: v outside span
        coords[pivots[r]] = m.at(r, k) / m.at(r, pivots[r]);
    }
    return coords;
}

}  // namespace aqg
