#pragma once

#include <complex>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace aqg {

/// Two-tier coefficient arithmetic.
///
/// The exact tier is the field Q(i) of Gaussian rationals with GMP-backed
/// numerators and denominators; it is closed under +, -, *, / and
/// conjugation with no rounding, and comparison to zero is decidable.
/// The float tier is std::complex<double>, used for spectral calculus
/// (real powers of eigenvalues). Exact values promote to float on demand;
/// a float value never becomes exact again.
class Scalar {
public:
    Scalar() : exact_(true), re_(0), im_(0), f_(0.0, 0.0) {}
    Scalar(long n) : exact_(true), re_(n), im_(0), f_(0.0, 0.0) {}
    Scalar(const mpq_class& re) : exact_(true), re_(re), im_(0), f_(0.0, 0.0) {}
    Scalar(const mpq_class& re, const mpq_class& im)
        : exact_(true), re_(re), im_(im), f_(0.0, 0.0) {}

    static Scalar rational(long num, long den);
    static Scalar i();                                  // exact imaginary unit
    static Scalar floating(std::complex<double> z) {
        Scalar s;
        s.exact_ = false;
        s.f_ = z;
        return s;
    }

    bool is_exact() const { return exact_; }

    /// Decidable for exact values; for float values tests against the bit
    /// pattern 0 only (use is_zero_within for tolerance comparisons).
    bool is_zero() const;
    bool is_zero_within(double tol) const;
    bool is_one() const;

    /// Exact-tier accessors; throw on float values.
    const mpq_class& re() const;
    const mpq_class& im() const;
    bool is_real() const;                               // exact: im==0; float: |im|==0

    std::complex<double> to_complex() const;
    double abs() const { return std::abs(to_complex()); }

    Scalar conj() const;

    Scalar operator-() const;
    Scalar& operator+=(const Scalar& o);
    Scalar& operator-=(const Scalar& o);
    Scalar& operator*=(const Scalar& o);
    Scalar& operator/=(const Scalar& o);                // throws on division by exact zero

    friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
    friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
    friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
    friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }

    /// Exact equality on the exact tier; float values compare by bits.
    /// Mixed tiers compare by promoting to complex<double>.
    friend bool operator==(const Scalar& a, const Scalar& b);
    friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }

    /// Canonical textual form: "p/q", "p/q+r/s*i" (exact, round-trips
    /// bit-exactly), or decimal "(re,im)" literals for the float tier.
    std::string str() const;
    static std::optional<Scalar> parse(std::string_view text);

private:
    bool exact_;
    mpq_class re_, im_;            // valid when exact_
    std::complex<double> f_;       // valid when !exact_
};

inline Scalar conj(const Scalar& s) { return s.conj(); }

/// |a - b| <= tol, promoting to complex doubles as needed.
bool approx_equal(const Scalar& a, const Scalar& b, double tol);

/// Exact square root when the radicand is a perfect square of a rational
/// (both numerator and denominator perfect integer squares); otherwise a
/// float square root. Input must be a nonnegative real scalar.
Scalar sqrt_prefer_exact(const Scalar& s);

/// True when the exact rational s is the square of a rational.
bool is_perfect_square(const mpq_class& s);

/// A certified strictly positive (real) scalar, the eigenvalue currency of
/// the spectral layer. Exact values must have zero imaginary part and a
/// positive real part; float values must clear the tolerance.
class PositiveEigenvalue {
public:
    /// Certify positivity; returns nullopt when the value fails the check.
    static std::optional<PositiveEigenvalue> certify(const Scalar& v, double tol = 1e-9);

    const Scalar& value() const { return value_; }
    double log() const;                       // natural log of the (real) value

    friend bool operator==(const PositiveEigenvalue& a, const PositiveEigenvalue& b) {
        return a.value_ == b.value_;
    }

private:
    explicit PositiveEigenvalue(Scalar v) : value_(std::move(v)) {}
    Scalar value_;
};

/// lambda^{it} = exp(i t log lambda). Returns exact 1 at t = 0, a float
/// unit-modulus scalar otherwise.
Scalar scalar_pow_it(const PositiveEigenvalue& lambda, double t);

/// Analytic extension lambda^{iz} = exp(i z log lambda). Purely imaginary
/// z = -i m (integer m) gives the exact power lambda^m; z = -i m/2 gives
/// lambda^{m/2}, exact when the square root of lambda is rational.
Scalar scalar_pow_z(const PositiveEigenvalue& lambda, std::complex<double> z);

}  // namespace aqg
