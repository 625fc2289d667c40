#include "aqg/scalar.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>

namespace aqg {

Scalar Scalar::rational(long num, long den) {
    if (den == 0) throw std::invalid_argument("Scalar::rational: zero denominator");
    mpq_class q(num, den);
    q.canonicalize();
    return Scalar(q);
}

Scalar Scalar::i() { return Scalar(mpq_class(0), mpq_class(1)); }

bool Scalar::is_zero() const {
    if (exact_) return sgn(re_) == 0 && sgn(im_) == 0;
    return f_ == std::complex<double>(0.0, 0.0);
}

bool Scalar::is_zero_within(double tol) const {
    if (exact_) return is_zero();
    return std::abs(f_) <= tol;
}

bool Scalar::is_one() const {
    if (exact_) return re_ == 1 && sgn(im_) == 0;
    return f_ == std::complex<double>(1.0, 0.0);
}

const mpq_class& Scalar::re() const {
    if (!exact_) throw std::logic_error("Scalar::re on float-tier value");
    return re_;
}

const mpq_class& Scalar::im() const {
    if (!exact_) throw std::logic_error("Scalar::im on float-tier value");
    return im_;
}

bool Scalar::is_real() const {
    return exact_ ? sgn(im_) == 0 : f_.imag() == 0.0;
}

std::complex<double> Scalar::to_complex() const {
    if (!exact_) return f_;
    return {re_.get_d(), im_.get_d()};
}

Scalar Scalar::conj() const {
    if (exact_) return Scalar(re_, mpq_class(-im_));
    return floating(std::conj(f_));
}

Scalar Scalar::operator-() const {
    if (exact_) return Scalar(mpq_class(-re_), mpq_class(-im_));
    return floating(-f_);
}

Scalar& Scalar::operator+=(const Scalar& o) {
    if (exact_ && o.exact_) {
        re_ += o.re_;
        im_ += o.im_;
    } else {
        f_ = to_complex() + o.to_complex();
        exact_ = false;
    }
    return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) {
    if (exact_ && o.exact_) {
        re_ -= o.re_;
        im_ -= o.im_;
    } else {
        f_ = to_complex() - o.to_complex();
        exact_ = false;
    }
    return *this;
}

Scalar& Scalar::operator*=(const Scalar& o) {
    if (exact_ && o.exact_) {
        mpq_class r = re_ * o.re_ - im_ * o.im_;
        mpq_class i = re_ * o.im_ + im_ * o.re_;
        re_ = r;
        im_ = i;
    } else {
        f_ = to_complex() * o.to_complex();
        exact_ = false;
    }
    return *this;
}

Scalar& Scalar::operator/=(const Scalar& o) {
    if (exact_ && o.exact_) {
        mpq_class n = o.re_ * o.re_ + o.im_ * o.im_;
        if (sgn(n) == 0) throw std::domain_error("Scalar: division by zero");
        mpq_class r = (re_ * o.re_ + im_ * o.im_) / n;
        mpq_class i = (im_ * o.re_ - re_ * o.im_) / n;
        re_ = r;
        im_ = i;
    } else {
        f_ = to_complex() / o.to_complex();
        exact_ = false;
    }
    return *this;
}

bool operator==(const Scalar& a, const Scalar& b) {
    if (a.exact_ && b.exact_) return a.re_ == b.re_ && a.im_ == b.im_;
    return a.to_complex() == b.to_complex();
}

namespace {

std::string rational_str(const mpq_class& q) { return q.get_str(); }

// Writes "(re,im)" with enough digits to round-trip a double.
std::string float_str(std::complex<double> z) {
    char buf[80];
    std::snprintf(buf, sizeof buf, "(%.17g,%.17g)", z.real(), z.imag());
    return buf;
}

}  // namespace

std::string Scalar::str() const {
    if (!exact_) return float_str(f_);
    if (sgn(im_) == 0) return rational_str(re_);
    std::string s;
    if (sgn(re_) != 0) {
        s = rational_str(re_);
        if (sgn(im_) > 0) s += "+";
    }
    s += rational_str(im_) + "*i";
    return s;
}

namespace {

// Parses a signed rational "p" or "p/q"; advances pos past it.
bool parse_rational(std::string_view t, size_t& pos, mpq_class& out) {
    size_t start = pos;
    if (pos < t.size() && (t[pos] == '+' || t[pos] == '-')) ++pos;
    size_t digits = pos;
    while (pos < t.size() && std::isdigit(static_cast<unsigned char>(t[pos]))) ++pos;
    if (pos == digits) {
        pos = start;
        return false;
    }
    if (pos < t.size() && t[pos] == '/') {
        ++pos;
        size_t den = pos;
        while (pos < t.size() && std::isdigit(static_cast<unsigned char>(t[pos]))) ++pos;
        if (pos == den) {
            pos = start;
            return false;
        }
    }
    std::size_t text_start = t[start] == '+' ? start + 1 : start;  // gmp rejects leading '+'
    std::string text(t.substr(text_start, pos - text_start));
    if (mpq_class q; q.set_str(text, 10) == 0) {
        if (sgn(q.get_den()) == 0) return false;
        q.canonicalize();
        out = q;
        return true;
    }
    pos = start;
    return false;
}

}  // namespace

std::optional<Scalar> Scalar::parse(std::string_view text) {
    // strip spaces
    std::string compact;
    compact.reserve(text.size());
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) compact.push_back(c);
    if (compact.empty()) return std::nullopt;

    if (compact.front() == '(') {
        // float literal "(re,im)"
        double re = 0, im = 0;
        if (std::sscanf(compact.c_str(), "(%lf,%lf)", &re, &im) == 2)
            return floating({re, im});
        return std::nullopt;
    }

    size_t pos = 0;
    mpq_class first;
    // pure imaginary "r/s*i" or "i"
    auto try_imaginary_tail = [&](size_t p, const mpq_class& coeff) -> std::optional<Scalar> {
        if (p + 1 == compact.size() && compact[p] == '*')
            return std::nullopt;  // dangling '*'
        if (p + 2 == compact.size() && compact[p] == '*' && compact[p + 1] == 'i')
            return Scalar(mpq_class(0), coeff);
        return std::nullopt;
    };

    if (compact == "i") return Scalar::i();
    if (compact == "-i") return Scalar(mpq_class(0), mpq_class(-1));

    if (!parse_rational(compact, pos, first)) return std::nullopt;
    if (pos == compact.size()) return Scalar(first);
    if (auto s = try_imaginary_tail(pos, first)) return s;

    // "p/q + r/s*i"
    mpq_class second;
    size_t pos2 = pos;
    if (!parse_rational(compact, pos2, second)) return std::nullopt;
    if (pos2 + 2 == compact.size() && compact[pos2] == '*' && compact[pos2 + 1] == 'i')
        return Scalar(first, second);
    return std::nullopt;
}

bool approx_equal(const Scalar& a, const Scalar& b, double tol) {
    if (a.is_exact() && b.is_exact()) return a == b;
    return std::abs(a.to_complex() - b.to_complex()) <= tol;
}

bool is_perfect_square(const mpq_class& s) {
    if (sgn(s) < 0) return false;
    return mpz_perfect_square_p(s.get_num().get_mpz_t()) &&
           mpz_perfect_square_p(s.get_den().get_mpz_t());
}

Scalar sqrt_prefer_exact(const Scalar& s) {
    if (s.is_exact()) {
        if (!s.is_real() || sgn(s.re()) < 0)
            throw std::domain_error("sqrt_prefer_exact: negative or non-real radicand");
        if (is_perfect_square(s.re())) {
            mpz_class num, den;
            mpz_sqrt(num.get_mpz_t(), s.re().get_num().get_mpz_t());
            mpz_sqrt(den.get_mpz_t(), s.re().get_den().get_mpz_t());
            mpq_class r(num, den);
            r.canonicalize();
            return Scalar(r);
        }
        return Scalar::floating({std::sqrt(s.re().get_d()), 0.0});
    }
    std::complex<double> z = s.to_complex();
    if (z.imag() != 0.0 || z.real() < 0.0)
        throw std::domain_error("sqrt_prefer_exact: negative or non-real radicand");
    return Scalar::floating({std::sqrt(z.real()), 0.0});
}

std::optional<PositiveEigenvalue> PositiveEigenvalue::certify(const Scalar& v, double tol) {
    if (v.is_exact()) {
        if (sgn(v.im()) != 0 || sgn(v.re()) <= 0) return std::nullopt;
        return PositiveEigenvalue(v);
    }
    std::complex<double> z = v.to_complex();
    if (z.real() <= tol || std::abs(z.imag()) > tol) return std::nullopt;
    return PositiveEigenvalue(v);
}

double PositiveEigenvalue::log() const {
    if (value_.is_exact()) {
        // log(p/q) = log p - log q, stable for large exact values
        const mpq_class& q = value_.re();
        signed long exp_num, exp_den;
        double dn = mpz_get_d_2exp(&exp_num, q.get_num().get_mpz_t());
        double dd = mpz_get_d_2exp(&exp_den, q.get_den().get_mpz_t());
        return std::log(dn) - std::log(dd) + (exp_num - exp_den) * std::log(2.0);
    }
    return std::log(value_.to_complex().real());
}

Scalar scalar_pow_it(const PositiveEigenvalue& lambda, double t) {
    if (t == 0.0) return Scalar(1);
    if (lambda.value().is_exact() && lambda.value().re() == 1) return Scalar(1);
    double theta = t * lambda.log();
    return Scalar::floating({std::cos(theta), std::sin(theta)});
}

Scalar scalar_pow_z(const PositiveEigenvalue& lambda, std::complex<double> z) {
    // lambda^{iz}; purely imaginary z = i*y gives the real power lambda^{-y}
    if (z.imag() == 0.0) return scalar_pow_it(lambda, z.real());
    if (z.real() == 0.0) {
        double m = -2.0 * z.imag();  // lambda^{-y} = (sqrt(lambda))^{-2y}
        if (m == std::round(m) && std::abs(m) < 1e6) {
            long mi = static_cast<long>(std::llround(m));
            Scalar root = sqrt_prefer_exact(lambda.value());
            Scalar acc(1);
            Scalar base = mi >= 0 ? root : Scalar(1) / root;
            for (long k = 0; k < std::labs(mi); ++k) acc *= base;
            return acc;
        }
    }
    std::complex<double> w = std::complex<double>(0, 1) * z * lambda.log();
    return Scalar::floating(std::exp(w));
}

}  // namespace aqg
