#include <doctest.h>

#include <random>

#include "aqg/axioms.hpp"
#include "aqg/examples.hpp"

using namespace aqg;

namespace {

BasisIndex by_name(const Presentation& p, const std::string& name) {
    for (BasisIndex i = 0; i < p.dim_up_to(0); ++i)
        if (p.index_name(i) == name) return i;
    throw std::logic_error("no basis element " + name);
}

// flips one structure constant of the wrapped presentation's product
class Corrupted final : public Presentation {
public:
    explicit Corrupted(std::shared_ptr<Presentation> base) : base_(std::move(base)) {}
    std::string name() const override { return base_->name() + " (corrupted)"; }
    std::size_t dim_up_to(int d) const override { return base_->dim_up_to(d); }
    std::size_t total_dim() const override { return base_->total_dim(); }
    int degree(BasisIndex i) const override { return base_->degree(i); }
    std::string index_name(BasisIndex i) const override { return base_->index_name(i); }
    Element relabel(Element e) const {
        Element out(this);
        for (const auto& [i, v] : e.coeffs()) out.add(i, v);
        return out;
    }
    Element unit() const override { return relabel(base_->unit()); }
    Element mult(BasisIndex x, BasisIndex y) const override {
        if (x == 1 && y == 1) {
            // wrong product for one basis pair
            Element e(this);
            e.add(0, Scalar(1));
            return e;
        }
        return relabel(base_->mult(x, y));
    }
    TensorElement comult(BasisIndex x) const override {
        TensorElement t(this);
        TensorElement d = base_->comult(x);
        for (const auto& [k, v] : d.coeffs()) t.add(k.first, k.second, v);
        return t;
    }
    Element star(BasisIndex x) const override { return relabel(base_->star(x)); }
    Element antipode(BasisIndex x) const override { return relabel(base_->antipode(x)); }
    Element antipode_inv(BasisIndex x) const override { return relabel(base_->antipode_inv(x)); }
    Scalar counit(BasisIndex x) const override { return base_->counit(x); }
    Scalar right_integral(BasisIndex x) const override { return base_->right_integral(x); }
    int degree_growth_bound(int a, int b) const override {
        return base_->degree_growth_bound(a, b);
    }

private:
    std::shared_ptr<Presentation> base_;
};

}  // namespace

TEST_CASE("group algebra: group law, star, antipode, integral") {
    auto z2 = make_group_algebra(FiniteGroup::cyclic(2));
    Element ug = z2->basis_element(1);
    CHECK(mul(ug, ug) == z2->basis_element(0));            // u_g u_g = u_e
    CHECK(star(ug) == ug);                                  // g^{-1} = g in Z2
    CHECK(comul(ug) == tensor(ug, ug));                     // group-like
    CHECK(counit(ug) == Scalar(1));
    CHECK(right_integral(ug).is_zero());
    CHECK(right_integral(z2->basis_element(0)) == Scalar(1));
    CHECK(left_integral(ug).is_zero());
    CHECK(left_integral(z2->basis_element(0)) == Scalar(1));

    auto s3 = make_group_algebra(FiniteGroup::symmetric3());
    // psi(u_h* u_g) = delta_{g,h}: the Gram matrix is the identity
    for (BasisIndex g = 0; g < 6; ++g)
        for (BasisIndex h = 0; h < 6; ++h) {
            Scalar v = gns_inner(s3->basis_element(g), s3->basis_element(h));
            CHECK(v == (g == h ? Scalar(1) : Scalar()));
        }
}

TEST_CASE("function algebra: idempotents, convolution coproduct, integral") {
    auto f2 = make_function_algebra(FiniteGroup::cyclic(2));
    Element ee = f2->basis_element(0), eg = f2->basis_element(1);
    CHECK(mul(eg, eg) == eg);
    CHECK(mul(ee, eg).is_zero());
    CHECK(comul(eg) == tensor(ee, eg) + tensor(eg, ee));
    CHECK(comul(ee) == tensor(ee, ee) + tensor(eg, eg));
    CHECK(antipode(eg) == eg);
    CHECK(right_integral(eg) == Scalar(1));
    CHECK(left_integral(eg) == Scalar(1));

    // the right integral is the unique invariant functional up to scale:
    // solve (psi (x) id) Delta(f) = psi(f) 1 by brute force and compare
    auto f3 = make_function_algebra(FiniteGroup::symmetric3());
    const std::size_t n = 6;
    // unknowns psi(e_g); equations from every basis element and leg
    std::vector<Vec> cols(n, Vec(n * n + 1));
    for (std::size_t x = 0; x < n; ++x) {
        TensorElement d = f3->comult(static_cast<BasisIndex>(x));
        for (const auto& [k, v] : d.coeffs()) {
            // row (x, leg k.second): sum over first legs
            cols[k.first][x * n + k.second] += v;
        }
        // psi(x) term on the unit coefficient rows: F(G) unit = sum of all e_h
        for (std::size_t leg = 0; leg < n; ++leg) cols[x][x * n + leg] -= Scalar(1);
    }
    // normalization psi(e_0) = 1
    cols[0][n * n] = Scalar(1);
    Vec rhs(n * n + 1);
    rhs[n * n] = Scalar(1);
    auto coords = coordinates_in_span(cols, rhs);
    REQUIRE(coords.has_value());
    for (std::size_t g = 0; g < n; ++g)
        CHECK((*coords)[g] == Scalar(1));  // the summation functional
}

TEST_CASE("axiom checker certifies the built-in finite examples") {
    for (const char* grp : {"Z2", "Z4", "S3"}) {
        CHECK(presentation_passes_axioms(*make_group_algebra(FiniteGroup::by_name(grp)), 0));
        CHECK(presentation_passes_axioms(*make_function_algebra(FiniteGroup::by_name(grp)), 0));
    }
}

TEST_CASE("axiom checker reports a corrupted structure constant with witness") {
    auto bad = std::make_shared<Corrupted>(make_group_algebra(FiniteGroup::cyclic(4)));
    Recorder rec("axioms", 1e-9);
    run_axiom_checks(*bad, 0, rec);
    CHECK(!rec.all_passed());
    bool assoc_failed = false;
    for (const CheckRecord& c : rec.finalize())
        if (c.id == "ax.assoc" && c.status == CheckStatus::Fail) {
            assoc_failed = true;
            CHECK(!c.witness.empty());
        }
    CHECK(assoc_failed);
}

TEST_CASE("randomized bialgebra identities on D4") {
    auto p = make_group_algebra(FiniteGroup::dihedral4());
    std::mt19937_64 rng(17);
    std::uniform_int_distribution<long> num(-5, 5);
    std::uniform_int_distribution<std::size_t> idx(0, 7);
    auto rnd = [&] {
        Element e(p.get());
        for (int s = 0; s < 3; ++s)
            e.add(static_cast<BasisIndex>(idx(rng)), Scalar(mpq_class(num(rng))));
        return e;
    };
    for (int rep = 0; rep < 25; ++rep) {
        Element x = rnd(), y = rnd(), z = rnd();
        CHECK(mul(mul(x, y), z) == mul(x, mul(y, z)));
        CHECK(comul(mul(x, y)) == tensor_mul(comul(x), comul(y)));
        CHECK(counit(mul(x, y)) == counit(x) * counit(y));
        CHECK(star(mul(x, y)) == mul(star(y), star(x)));
        Scalar nrm = right_integral(mul(star(x), x));
        CHECK(nrm.is_exact());
        CHECK(nrm.is_real());
        CHECK(sgn(nrm.re()) >= 0);
    }
}

TEST_CASE("mixed-presentation arithmetic is rejected") {
    auto a = make_group_algebra(FiniteGroup::cyclic(2));
    auto b = make_function_algebra(FiniteGroup::cyclic(2));
    CHECK_THROWS_AS(mul(a->basis_element(0), b->basis_element(0)), std::invalid_argument);
}
