#include <doctest.h>

#include <random>

#include "aqg/scalar.hpp"

using namespace aqg;

namespace {

Scalar random_exact(std::mt19937_64& rng) {
    std::uniform_int_distribution<long> num(-20, 20);
    std::uniform_int_distribution<long> den(1, 12);
    mpq_class re(num(rng), den(rng)), im(num(rng), den(rng));
    re.canonicalize();
    im.canonicalize();
    return Scalar(re, im);
}

}  // namespace

TEST_CASE("exact field axioms under randomized identities") {
    std::mt19937_64 rng(7);
    for (int rep = 0; rep < 200; ++rep) {
        Scalar x = random_exact(rng), y = random_exact(rng), z = random_exact(rng);
        CHECK((x + y) * z == x * z + y * z);
        CHECK(x * (y * z) == (x * y) * z);
        CHECK(x + y == y + x);
        CHECK((x * y).conj() == x.conj() * y.conj());
        CHECK((x + y).conj() == x.conj() + y.conj());
        if (!y.is_zero()) CHECK((x / y) * y == x);
    }
}

TEST_CASE("promotion is one way and zero tests are tier-aware") {
    Scalar e = Scalar::rational(2, 3);
    CHECK(e.is_exact());
    Scalar f = e + Scalar::floating({0.5, 0});
    CHECK(!f.is_exact());
    CHECK(e.is_zero() == false);
    CHECK(Scalar().is_zero());
    CHECK(Scalar::floating({1e-12, 0}).is_zero_within(1e-9));
    CHECK(!Scalar::floating({1e-6, 0}).is_zero_within(1e-9));
}

TEST_CASE("scalar text round-trips bit-exactly on the exact tier") {
    std::mt19937_64 rng(11);
    for (int rep = 0; rep < 200; ++rep) {
        Scalar x = random_exact(rng);
        auto back = Scalar::parse(x.str());
        REQUIRE(back.has_value());
        CHECK(*back == x);
    }
    CHECK(Scalar::parse("3/4").value() == Scalar::rational(3, 4));
    CHECK(Scalar::parse("-5").value() == Scalar(-5));
    CHECK(Scalar::parse("1/2+1/3*i").value() == Scalar(mpq_class(1, 2), mpq_class(1, 3)));
    CHECK(Scalar::parse("-2/7*i").value() == Scalar(mpq_class(0), mpq_class(-2, 7)));
    CHECK(!Scalar::parse("1/0").has_value());
    CHECK(!Scalar::parse("x").has_value());
}

TEST_CASE("pow_it: examples and group law") {
    auto lam1 = PositiveEigenvalue::certify(Scalar(1)).value();
    CHECK(scalar_pow_it(lam1, 3.7) == Scalar(1));  // ln 1 = 0, exact

    auto lam = PositiveEigenvalue::certify(Scalar::rational(1, 4)).value();
    Scalar v = scalar_pow_it(lam, 1.0);
    CHECK(std::abs(v.abs() - 1.0) < 1e-12);
    CHECK(std::abs(v.to_complex().real() - std::cos(-std::log(4.0))) < 1e-12);

    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> ud(-10, 10);
    auto lam4 = PositiveEigenvalue::certify(Scalar(4)).value();
    for (int rep = 0; rep < 50; ++rep) {
        double s = ud(rng), t = ud(rng);
        Scalar l = scalar_pow_it(lam4, s) * scalar_pow_it(lam4, t);
        Scalar r = scalar_pow_it(lam4, s + t);
        CHECK(std::abs((l - r).to_complex()) < 1e-10);
    }
}

TEST_CASE("pow_z: analytic substitution recovers exact powers") {
    auto lam9 = PositiveEigenvalue::certify(Scalar(9)).value();
    CHECK(scalar_pow_z(lam9, {0, -1}) == Scalar(9));
    CHECK(scalar_pow_z(lam9, {0, -0.5}) == Scalar(3));  // perfect square stays exact
    CHECK(scalar_pow_z(lam9, {0, -0.5}).is_exact());

    auto lam2 = PositiveEigenvalue::certify(Scalar(2)).value();
    Scalar r = scalar_pow_z(lam2, {0, -0.5});
    CHECK(!r.is_exact());
    CHECK(std::abs(r.to_complex().real() - std::sqrt(2.0)) < 1e-12);

    // purely real z agrees with pow_it
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> ud(-10, 10);
    for (int rep = 0; rep < 20; ++rep) {
        double t = ud(rng);
        Scalar a = scalar_pow_z(lam2, {t, 0});
        Scalar b = scalar_pow_it(lam2, t);
        CHECK(std::abs((a - b).to_complex()) < 1e-12);
    }
}

TEST_CASE("positivity certification rejects bad spectra") {
    CHECK(!PositiveEigenvalue::certify(Scalar(0)).has_value());
    CHECK(!PositiveEigenvalue::certify(Scalar(-3)).has_value());
    CHECK(!PositiveEigenvalue::certify(Scalar(mpq_class(1), mpq_class(1))).has_value());
    CHECK(!PositiveEigenvalue::certify(Scalar::floating({1e-12, 0}), 1e-9).has_value());
    CHECK(PositiveEigenvalue::certify(Scalar::floating({0.5, 1e-12}), 1e-9).has_value());
}

TEST_CASE("exact square root detection") {
    CHECK(sqrt_prefer_exact(Scalar::rational(9, 16)) == Scalar::rational(3, 4));
    CHECK(sqrt_prefer_exact(Scalar::rational(9, 16)).is_exact());
    CHECK(!sqrt_prefer_exact(Scalar(2)).is_exact());
    CHECK(is_perfect_square(mpq_class(1, 4)));
    CHECK(!is_perfect_square(mpq_class(3, 7)));
}
