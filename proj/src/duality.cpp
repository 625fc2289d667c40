#include "aqg/duality.hpp"

#include <stdexcept>

namespace aqg {

DualContext::DualContext(const ModularMaps& mm, int degree, int product_ambient)
    : mm_(&mm), degree_(degree),
      product_ambient_(product_ambient < 0 ? 2 * degree : product_ambient) {}

const Factorization& DualContext::pairing_factorization(int degree) const {
    auto it = fact_.find(degree);
    if (it != fact_.end()) return *it->second;
    const Presentation* p = presentation();
    const std::size_t n = p->dim_up_to(degree);
    Mat pm(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        Element si = antipode(p->basis_element(static_cast<BasisIndex>(i)));
        for (std::size_t j = 0; j < n; ++j)
            pm.at(i, j) = right_integral(mul(si, p->basis_element(static_cast<BasisIndex>(j))));
    }
    std::unique_ptr<Factorization> f;
    try {
        f = std::make_unique<Factorization>(std::move(pm));
    } catch (const std::domain_error&) {
        throw std::domain_error("DualContext: pairing matrix singular at degree " +
                                std::to_string(degree) + "; escalate degree");
    }
    auto [pos, inserted] = fact_.emplace(degree, std::move(f));
    return *pos->second;
}

Scalar DualContext::pair(const Element& x, const DualElement& b) const {
    if (x.is_zero() || b.is_zero()) return Scalar();
    return right_integral(mul(antipode(x), b.preimage()));
}

Scalar DualContext::dual_left_integral(const DualElement& b) const { return counit(b.preimage()); }

Scalar DualContext::dual_right_integral(const DualElement& b) const {
    return dual_left_integral(dual_antipode(b));
}

DualElement DualContext::from_functional(const std::function<Scalar(const Element&)>& f,
                                         int solve_degree, int verify_margin) const {
    const Presentation* p = presentation();
    const Factorization& fact = pairing_factorization(solve_degree);
    const std::size_t n = p->dim_up_to(solve_degree);
    Vec vals(n);
    for (std::size_t i = 0; i < n; ++i) vals[i] = f(p->basis_element(static_cast<BasisIndex>(i)));
    Vec pre = fact.solve(vals);
    Element a(p);
    for (std::size_t i = 0; i < n; ++i) a.set(static_cast<BasisIndex>(i), pre[i]);
    if (verify_margin > 0) {
        const std::size_t m = p->dim_up_to(solve_degree + verify_margin);
        for (std::size_t i = n; i < m; ++i) {
            Element ei = p->basis_element(static_cast<BasisIndex>(i));
            Scalar lhs = right_integral(mul(antipode(ei), a));
            Scalar rhs = f(ei);
            Scalar diff = lhs - rhs;
            bool bad = diff.is_exact() ? !diff.is_zero() : diff.abs() > 1e-9;
            if (bad)
                throw std::domain_error(
                    "DualContext::from_functional: preimage escaped the solve truncation "
                    "(mismatch at " + p->index_name(static_cast<BasisIndex>(i)) + ")");
        }
    }
    return DualElement(a);
}

DualElement DualContext::dual_mul(const DualElement& b1, const DualElement& b2) const {
    if (b1.is_zero() || b2.is_zero()) return DualElement(Element(presentation()));
    auto f = [this, &b1, &b2](const Element& x) {
        TensorElement d = comul(x);
        Scalar acc;
        const Presentation* p = presentation();
        for (const auto& [k, v] : d.coeffs()) {
            Scalar l = pair(p->basis_element(k.first), b1);
            if (l.is_zero()) continue;
            Scalar r = pair(p->basis_element(k.second), b2);
            acc += v * l * r;
        }
        return acc;
    };
    int solve_deg = std::min(product_ambient_,
                             presentation()->degree_growth_bound(b1.preimage().degree(),
                                                                 b2.preimage().degree()));
    solve_deg = std::max(solve_deg, std::max(b1.preimage().degree(), b2.preimage().degree()));
    return from_functional(f, solve_deg, 0);
}

DualElement DualContext::dual_star(const DualElement& b) const {
    return DualElement(mul(antipode(star(b.preimage())), mm_->delta_inv()));
}

DualElement DualContext::dual_unit() const {
    auto f = [](const Element& x) { return counit(x); };
    return from_functional(f, degree_, 1);
}

DualElement DualContext::dual_antipode(const DualElement& b) const {
    // <S(x), b> = psi(S^2(x) a) = psi(S(x) delta^{-1} sigma'(S^{-1}(a))),
    // so the preimage transforms by a -> delta^{-1} sigma'(S^{-1}(a)).
    return DualElement(mul(mm_->delta_inv(), mm_->sigma_prime(antipode_inv(b.preimage()))));
}

DualElement DualContext::s_hat_squared(const DualElement& b) const {
    return dual_antipode(dual_antipode(b));
}

Scalar DualContext::delta_hat_char(const Element& x) const {
    return counit(mm_->sigma_inv(x));
}

Scalar DualContext::delta_hat_inv_char(const Element& x) const {
    return counit(mm_->sigma(x));
}

DualElement DualContext::delta_hat_act(const DualElement& b, DeltaHatSide side) const {
    if (b.is_zero()) return b;
    auto character = [this, side](const Element& y) {
        return (side == DeltaHatSide::Left || side == DeltaHatSide::Right)
                   ? delta_hat_char(y)
                   : delta_hat_inv_char(y);
    };
    bool char_on_first = (side == DeltaHatSide::Left || side == DeltaHatSide::InvLeft);
    auto f = [this, &b, &character, char_on_first](const Element& x) {
        TensorElement d = comul(x);
        Scalar acc;
        const Presentation* p = presentation();
        for (const auto& [k, v] : d.coeffs()) {
            Element first = p->basis_element(k.first);
            Element second = p->basis_element(k.second);
            Scalar c = char_on_first ? character(first) : character(second);
            if (c.is_zero()) continue;
            Scalar bb = char_on_first ? pair(second, b) : pair(first, b);
            acc += v * c * bb;
        }
        return acc;
    };
    return from_functional(f, std::max(degree_, b.preimage().degree()), 0);
}

DualElement DualContext::slice_left(const Element& w, const DualElement& b) const {
    return DualElement(mul(antipode(w), b.preimage()));
}

DualElement DualContext::slice_right(const DualElement& b, const Element& w) const {
    return DualElement(mul(b.preimage(), mm_->sigma_prime(antipode(w))));
}

Element DualContext::gamma_act(const DualElement& b, const Element& x) const {
    return gamma_act_fn([this, &b](const Element& y) { return pair(y, b); }, x);
}

Element DualContext::gamma_act_fn(const std::function<Scalar(const Element&)>& f,
                                  const Element& x) const {
    return tensor_contract_right(comul(x), f);
}

DualElement DualContext::apply_dual(const Mat& preimage_matrix, const DualElement& b) const {
    const Presentation* p = presentation();
    Vec v(preimage_matrix.cols());
    for (const auto& [i, s] : b.preimage().coeffs()) {
        if (i >= v.size())
            throw std::domain_error("DualContext::apply_dual: preimage outside truncation");
        v[i] = s;
    }
    Vec img = mat_apply(preimage_matrix, v);
    Element e(p);
    for (std::size_t i = 0; i < img.size(); ++i) e.set(static_cast<BasisIndex>(i), img[i]);
    return DualElement(e);
}

const DualModularData& DualContext::modular() const {
    if (dual_modular_) return *dual_modular_;
    const Presentation* p = presentation();
    const std::size_t n = p->dim_up_to(degree_);
    auto dm = std::make_unique<DualModularData>();
    dm->degree = degree_;

    // Gram-type matrices of the dual integrals on basis functionals
    // f_i = fourier(e_i):
    //   E[i][j] = phi-hat(f_i f_j),  Psi[i][j] = psi-hat(f_i f_j).
    // Both are linear in the evaluation vector of the product functional,
    //   (f_i f_j)(e_x) = sum_{(e_x)} <x_(1), f_i> <x_(2), f_j>,
    // so one pass over the coproducts of the ambient basis suffices: the
    // preimage solve collapses to two fixed covectors w1 = P^{-T} eps and
    // w2 = P^{-T} (S-hat-preimage-map)^T eps.
    const int amb = p->degree_growth_bound(degree_, degree_);
    const std::size_t big = p->dim_up_to(amb);
    Mat pairing(big, big);
    for (std::size_t i = 0; i < big; ++i) {
        Element si = antipode(p->basis_element(static_cast<BasisIndex>(i)));
        for (std::size_t j = 0; j < big; ++j)
            pairing.at(i, j) =
                right_integral(mul(si, p->basis_element(static_cast<BasisIndex>(j))));
    }
    Factorization fact_t(pairing.transpose());
    Vec eps(big), eps_shat(big);
    for (std::size_t x = 0; x < big; ++x) {
        Element ex = p->basis_element(static_cast<BasisIndex>(x));
        eps[x] = counit(ex);
        // eps of the S-hat preimage map a -> delta^{-1} sigma'(S^{-1}(a))
        eps_shat[x] = counit(mul(mm_->delta_inv(), mm_->sigma_prime(antipode_inv(ex))));
    }
    Vec w1 = fact_t.solve(eps);
    Vec w2 = fact_t.solve(eps_shat);

    Mat ephi(n, n), epsi(n, n);
    for (std::size_t x = 0; x < big; ++x) {
        if (w1[x].is_zero() && w2[x].is_zero()) continue;
        TensorElement d = p->comult(static_cast<BasisIndex>(x));
        for (const auto& [k, c] : d.coeffs()) {
            // vals(i, j) += c * pairing[u][i] * pairing[v][j]
            for (std::size_t i = 0; i < n; ++i) {
                const Scalar& pu = pairing.at(k.first, i);
                if (pu.is_zero()) continue;
                Scalar cf = c * pu;
                for (std::size_t j = 0; j < n; ++j) {
                    const Scalar& pv = pairing.at(k.second, j);
                    if (pv.is_zero()) continue;
                    Scalar term = cf * pv;
                    if (!w1[x].is_zero()) ephi.at(i, j) += w1[x] * term;
                    if (!w2[x].is_zero()) epsi.at(i, j) += w2[x] * term;
                }
            }
        }
    }
    auto solve_modular = [&](const Mat& e, const char* who) {
        try {
            Factorization f(e);
            return f.solve(e.transpose());
        } catch (const std::domain_error&) {
            throw std::domain_error(std::string("dual modular derive: ") + who +
                                    " system singular; integral not faithful or truncation too "
                                    "small");
        }
    };
    dm->sigma_hat = solve_modular(ephi, "sigma-hat");
    dm->sigma_hat_prime = solve_modular(epsi, "sigma-hat'");

    auto column_map = [&](const std::function<DualElement(const DualElement&)>& op) {
        Mat m(n, n);
        for (std::size_t j = 0; j < n; ++j) {
            DualElement img = op(DualElement(p->basis_element(static_cast<BasisIndex>(j))));
            for (const auto& [i, s] : img.preimage().coeffs()) {
                if (i >= n)
                    throw std::domain_error("dual modular derive: image escapes truncation");
                m.at(i, j) = s;
            }
        }
        return m;
    };
    dm->s_hat_sq = column_map([this](const DualElement& b) { return s_hat_squared(b); });
    dm->delta_left =
        column_map([this](const DualElement& b) { return delta_hat_act(b, DeltaHatSide::Left); });
    dm->delta_right =
        column_map([this](const DualElement& b) { return delta_hat_act(b, DeltaHatSide::Right); });
    dm->delta_inv_left = column_map(
        [this](const DualElement& b) { return delta_hat_act(b, DeltaHatSide::InvLeft); });
    dm->delta_inv_right = column_map(
        [this](const DualElement& b) { return delta_hat_act(b, DeltaHatSide::InvRight); });

    dual_modular_ = std::move(dm);
    return *dual_modular_;
}

std::vector<LinearOp> DualContext::eigen_ops() const {
    const DualModularData& dm = modular();
    auto wrap = [this](std::string tag, const Mat& m) {
        return LinearOp{std::move(tag), [this, &m](const Element& pre) {
                            return apply_dual(m, DualElement(pre)).preimage();
                        }};
    };
    return {wrap("S-hat^2", dm.s_hat_sq), wrap("sigma-hat", dm.sigma_hat),
            wrap("sigma-hat'", dm.sigma_hat_prime), wrap("delta-hat*.", dm.delta_left),
            wrap(".*delta-hat", dm.delta_right)};
}

EigenDecomposition eigen_dual(const DualContext& ctx) {
    const Presentation* p = ctx.presentation();
    std::vector<Element> basis;
    const std::size_t n = p->dim_up_to(ctx.degree());
    for (std::size_t i = 0; i < n; ++i) basis.push_back(p->basis_element(static_cast<BasisIndex>(i)));
    return joint_eigenbasis(basis, ctx.eigen_ops());
}

}  // namespace aqg
