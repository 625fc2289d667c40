#pragma once

#include <cstddef>
#include <vector>

#include "aqg/scalar.hpp"

namespace aqg {

/// Dense matrix over Scalar. The elimination routines require exact-tier
/// entries throughout; there is a separate float path for the spectral
/// fallback (solve_float).
class Mat {
public:
    Mat() : rows_(0), cols_(0) {}
    Mat(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), a_(rows * cols) {}

    static Mat identity(std::size_t n);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Scalar& at(std::size_t r, std::size_t c) { return a_[r * cols_ + c]; }
    const Scalar& at(std::size_t r, std::size_t c) const { return a_[r * cols_ + c]; }

    Mat operator*(const Mat& o) const;
    Mat operator+(const Mat& o) const;
    Mat operator-(const Mat& o) const;
    Mat scaled(const Scalar& s) const;
    Mat transpose() const;
    Mat conj_transpose() const;

    bool all_exact() const;
    bool is_zero() const;
    double max_abs() const;

    friend bool operator==(const Mat& a, const Mat& b);

private:
    std::size_t rows_, cols_;
    std::vector<Scalar> a_;
};

using Vec = std::vector<Scalar>;

Vec mat_apply(const Mat& m, const Vec& v);

/// Row-reduced LU-style factorization of an exact square matrix, reusable
/// across many right-hand sides (the pairing matrices of the dual layer are
/// factored once per truncation).
class Factorization {
public:
    explicit Factorization(Mat a);          // throws std::domain_error if singular

    std::size_t dim() const { return n_; }
    Vec solve(const Vec& rhs) const;
    Mat solve(const Mat& rhs) const;        // column-wise

private:
    std::size_t n_;
    Mat lu_;                                 // combined L\U storage
    std::vector<std::size_t> perm_;          // row permutation
};

/// Exact rank via Gaussian elimination.
std::size_t rank(Mat a);

/// Basis of the exact nullspace (columns as Vec).
std::vector<Vec> nullspace(Mat a);

/// Exact inverse; throws std::domain_error on singular input.
Mat inverse(const Mat& a);

/// Exact solve A x = b for square A; throws std::domain_error on singular A.
Vec solve(const Mat& a, const Vec& b);

/// Hermitian positive-definiteness via an exact LDL^* sweep: requires
/// a == a^H and all pivots strictly positive rationals.
bool hermitian_positive_definite(const Mat& a);

/// Float-tier solve with partial pivoting (spectral fallback only).
Vec solve_float(Mat a, Vec b, double pivot_tol = 1e-12);

/// Float-tier nullspace with tolerance-based rank decisions (spectral
/// fallback for irrational eigenvalues).
std::vector<Vec> nullspace_float(Mat a, double tol);

/// Reduce a family of vectors to a linearly independent subset, exactly.
/// Returns indices of a maximal independent subfamily, preserving order.
std::vector<std::size_t> independent_subset(const std::vector<Vec>& vecs);

/// Exact coordinates of v in the span of basis (least-degree Gaussian
/// elimination); returns nullopt when v is outside the span.
std::optional<Vec> coordinates_in_span(const std::vector<Vec>& basis, const Vec& v);

}  // namespace aqg
