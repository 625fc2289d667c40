#include <doctest.h>

#include "aqg/linalg.hpp"
#include "aqg/rootfind.hpp"

using namespace aqg;

namespace {

Mat from_longs(std::initializer_list<std::initializer_list<long>> rows) {
    Mat m(rows.size(), rows.begin()->size());
    std::size_t i = 0;
    for (auto& r : rows) {
        std::size_t j = 0;
        for (long v : r) m.at(i, j++) = Scalar(v);
        ++i;
    }
    return m;
}

}  // namespace

TEST_CASE("exact solve and inverse") {
    Mat a = from_longs({{2, 1}, {1, 3}});
    Vec b = {Scalar(5), Scalar(10)};
    Vec x = solve(a, b);
    CHECK(x[0] == Scalar(1));
    CHECK(x[1] == Scalar(3));
    Mat inv = inverse(a);
    CHECK(inv * a == Mat::identity(2));

    Mat sing = from_longs({{1, 2}, {2, 4}});
    CHECK_THROWS_AS(Factorization{sing}, std::domain_error);
}

TEST_CASE("nullspace and rank") {
    Mat a = from_longs({{1, 2, 3}, {2, 4, 6}, {1, 1, 1}});
    CHECK(rank(a) == 2);
    auto ns = nullspace(a);
    REQUIRE(ns.size() == 1);
    Vec img = mat_apply(a, ns[0]);
    for (const Scalar& s : img) CHECK(s.is_zero());
}

TEST_CASE("hermitian positive definiteness, exact pivots") {
    CHECK(hermitian_positive_definite(from_longs({{2, 1}, {1, 2}})));
    CHECK(!hermitian_positive_definite(from_longs({{1, 2}, {2, 1}})));
    // complex Hermitian: [[2, i], [-i, 2]] has spectrum {1, 3}
    Mat h(2, 2);
    h.at(0, 0) = Scalar(2);
    h.at(0, 1) = Scalar::i();
    h.at(1, 0) = -Scalar::i();
    h.at(1, 1) = Scalar(2);
    CHECK(hermitian_positive_definite(h));
    h.at(1, 1) = Scalar::rational(1, 2);  // now indefinite
    CHECK(!hermitian_positive_definite(h));
    // non-Hermitian input is rejected outright
    CHECK(!hermitian_positive_definite(from_longs({{2, 1}, {0, 2}})));
}

TEST_CASE("coordinates in span detects membership exactly") {
    std::vector<Vec> basis = {{Scalar(1), Scalar(0), Scalar(1)}, {Scalar(0), Scalar(1), Scalar(1)}};
    Vec inside = {Scalar(2), Scalar(3), Scalar(5)};
    auto c = coordinates_in_span(basis, inside);
    REQUIRE(c.has_value());
    CHECK((*c)[0] == Scalar(2));
    CHECK((*c)[1] == Scalar(3));
    Vec outside = {Scalar(1), Scalar(0), Scalar(0)};
    CHECK(!coordinates_in_span(basis, outside).has_value());
}

TEST_CASE("polynomial roots: rational recovery and float fallback") {
    // (x - 3)(x - 7) = x^2 - 10x + 21
    Poly p = {mpq_class(21), mpq_class(-10), mpq_class(1)};
    auto roots = real_roots(p);
    REQUIRE(roots.size() == 2);
    CHECK(roots[0].exact);
    CHECK(roots[0].value == 3);
    CHECK(roots[1].value == 7);

    // (x - 1/4)(x - 16)(x + 2/3), expanded from the elementary symmetric sums
    mpq_class r1(1, 4), r2(16), r3(-2, 3);
    Poly q2 = {-(r1 * r2 * r3), r1 * r2 + r1 * r3 + r2 * r3, -(r1 + r2 + r3), mpq_class(1)};
    auto roots2 = real_roots(q2);
    REQUIRE(roots2.size() == 3);
    CHECK(roots2[0].value == r3);
    CHECK(roots2[1].value == r1);
    CHECK(roots2[2].value == r2);

    // x^2 - 2: irrational, float fallback
    Poly irr = {mpq_class(-2), mpq_class(0), mpq_class(1)};
    auto roots3 = real_roots(irr);
    REQUIRE(roots3.size() == 2);
    CHECK(!roots3[1].exact);
    CHECK(std::abs(roots3[1].approx - std::sqrt(2.0)) < 1e-12);

    // repeated roots are deflated: (x-2)^3
    Poly rep = {mpq_class(-8), mpq_class(12), mpq_class(-6), mpq_class(1)};
    auto roots4 = real_roots(rep);
    REQUIRE(roots4.size() == 1);
    CHECK(roots4[0].value == 2);
}

TEST_CASE("minimal polynomial via Krylov") {
    Mat a = from_longs({{5, 2}, {2, 5}});  // eigenvalues 3, 7
    Vec v = {Scalar(1), Scalar(0)};
    Poly mp = min_poly_of_vector(a, v);
    REQUIRE(mp.size() == 3);
    CHECK(mp[0] == 21);   // x^2 - 10x + 21
    CHECK(mp[1] == -10);
    CHECK(mp[2] == 1);

    // eigenvector has degree-1 minimal polynomial
    Vec ev = {Scalar(1), Scalar(1)};
    Poly mp2 = min_poly_of_vector(a, ev);
    REQUIRE(mp2.size() == 2);
    CHECK(mp2[0] == -7);
}

TEST_CASE("float nullspace for the spectral fallback") {
    Mat a(2, 2);
    a.at(0, 0) = Scalar::floating({1.0, 0});
    a.at(0, 1) = Scalar::floating({1.0, 0});
    a.at(1, 0) = Scalar::floating({1.0, 0});
    a.at(1, 1) = Scalar::floating({1.0 + 1e-15, 0});
    auto ns = nullspace_float(a, 1e-9);
    REQUIRE(ns.size() == 1);
    // (1, -1) direction
    CHECK(std::abs(ns[0][0].to_complex().real() + ns[0][1].to_complex().real()) < 1e-9);
}
