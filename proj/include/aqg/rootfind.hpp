#pragma once

#include <vector>

#include "aqg/linalg.hpp"
#include "aqg/scalar.hpp"

namespace aqg {

/// Rational polynomial, coefficients low degree to high.
using Poly = std::vector<mpq_class>;

mpq_class poly_eval(const Poly& p, const mpq_class& x);
Poly poly_derivative(const Poly& p);
Poly poly_monic(Poly p);
Poly poly_rem(Poly num, const Poly& den);
Poly poly_gcd(Poly a, Poly b);
Poly squarefree_part(const Poly& p);

struct PolyRoot {
    bool exact;
    mpq_class value;   // valid when exact
    double approx;     // always set
};

/// Distinct real roots of p, ascending. Rational roots are recovered
/// exactly (Sturm isolation, then simplest-rational reconstruction verified
/// by exact evaluation); irrational roots fall back to float bisection.
std::vector<PolyRoot> real_roots(const Poly& p);

/// Monic minimal polynomial of v under M (exact Krylov chase). Throws
/// std::domain_error when a coefficient leaves the real rationals, which
/// signals a non-real spectrum upstream.
Poly min_poly_of_vector(const Mat& m, const Vec& v);

}  // namespace aqg
