#include <doctest.h>

#include "aqg/axioms.hpp"
#include "aqg/examples.hpp"

using namespace aqg;

namespace {

struct Gens {
    std::shared_ptr<Presentation> p;
    Element one, a, as, c, cs;
};

Gens suq2_gens(const mpq_class& q, int degree) {
    Gens g;
    g.p = make_suq2(q, degree);
    g.one = g.p->basis_element(0);
    for (BasisIndex i = 1; i < g.p->dim_up_to(1); ++i) {
        std::string n = g.p->index_name(i);
        if (n == "a") g.a = g.p->basis_element(i);
        if (n == "a*") g.as = g.p->basis_element(i);
        if (n == "c") g.c = g.p->basis_element(i);
        if (n == "c*") g.cs = g.p->basis_element(i);
    }
    return g;
}

// independent Haar oracle: h((c c*)^k) = (1 - q^2) / (1 - q^{2(k+1)})
Scalar haar_ccs_power(const mpq_class& q, int k) {
    mpq_class q2 = q * q;
    mpq_class pw = 1;
    for (int i = 0; i <= k; ++i) pw *= q2;
    return Scalar((1 - q2) / (1 - pw));
}

}  // namespace

TEST_CASE("PBW rewriting matches the defining relations") {
    Gens g = suq2_gens(mpq_class(1, 4), 3);
    Scalar q = Scalar::rational(1, 4);

    // ac = q ca, so the normal form of ca carries the inverse power
    Element ac = mul(g.a, g.c);
    CHECK(mul(g.c, g.a) == (Scalar(1) / q) * ac);
    CHECK(ac == q * mul(g.c, g.a));
    // ac is itself a PBW basis monomial
    CHECK(ac.coeffs().size() == 1);
    CHECK(ac.coeffs().begin()->second == Scalar(1));

    CHECK(mul(g.a, g.cs) == q * mul(g.cs, g.a));
    CHECK(mul(g.c, g.cs) == mul(g.cs, g.c));
    CHECK(mul(g.as, g.a) + mul(g.cs, g.c) == g.one);
    CHECK(mul(g.a, g.as) + (q * q) * mul(g.c, g.cs) == g.one);
}

TEST_CASE("antipode, star and counit on the generators") {
    Gens g = suq2_gens(mpq_class(1, 4), 3);
    Scalar q = Scalar::rational(1, 4);
    CHECK(antipode(g.a) == g.as);
    CHECK(antipode(g.as) == g.a);
    CHECK(antipode(g.c) == -(q * g.c));
    CHECK(antipode(g.cs) == -((Scalar(1) / q) * g.cs));
    CHECK(antipode(antipode(g.c)) == (q * q) * g.c);  // S^2(c) = q^2 c
    CHECK(star(g.a) == g.as);
    CHECK(star(star(g.c)) == g.c);
    CHECK(counit(g.a) == Scalar(1));
    CHECK(counit(g.c).is_zero());
    CHECK(comul(g.c) == tensor(g.c, g.a) + tensor(g.as, g.c));
}

TEST_CASE("solved Haar integral matches the closed-form oracle") {
    mpq_class q(1, 4);
    Gens g = suq2_gens(q, 3);
    CHECK(right_integral(g.one) == Scalar(1));
    CHECK(right_integral(g.c).is_zero());
    CHECK(right_integral(g.a).is_zero());

    Element ccs = mul(g.c, g.cs);
    CHECK(right_integral(mul(star(g.c), g.c)) == Scalar::rational(16, 17));  // 1/(1+q^2)
    CHECK(right_integral(ccs) == haar_ccs_power(q, 1));
    CHECK(right_integral(mul(ccs, ccs)) == haar_ccs_power(q, 2));
    CHECK(right_integral(mul(ccs, mul(ccs, ccs))) == haar_ccs_power(q, 3));

    // left integral equals the right integral in compact type
    for (BasisIndex i = 0; i < g.p->dim_up_to(2); ++i) {
        Element e = g.p->basis_element(i);
        CHECK(left_integral(e) == right_integral(e));
    }
}

TEST_CASE("Haar oracle at a second parameter value") {
    mpq_class q(2, 5);
    Gens g = suq2_gens(q, 2);
    Element ccs = mul(g.c, g.cs);
    CHECK(right_integral(ccs) == haar_ccs_power(q, 1));       // (1-q^2)/(1-q^4) = 25/29
    CHECK(right_integral(ccs) == Scalar::rational(25, 29));
    CHECK(right_integral(mul(ccs, ccs)) == haar_ccs_power(q, 2));
}

TEST_CASE("axiom suite certifies suq2 exactly at degree 3") {
    auto p = make_suq2(mpq_class(1, 4), 3);
    Recorder rec("axioms", 1e-9);
    run_axiom_checks(*p, 3, rec);
    for (const CheckRecord& c : rec.finalize()) {
        INFO(c.id, " ", c.witness);
        CHECK(c.status != CheckStatus::Fail);
        if (c.status == CheckStatus::Pass) CHECK(c.residual == "0");
    }
}

TEST_CASE("q outside (0,1) is rejected") {
    CHECK_THROWS_AS(make_suq2(mpq_class(3, 2), 2), std::invalid_argument);
    CHECK_THROWS_AS(make_suq2(mpq_class(0), 2), std::invalid_argument);
    CHECK_THROWS_AS(make_suq2(mpq_class(-1, 4), 2), std::invalid_argument);
}
