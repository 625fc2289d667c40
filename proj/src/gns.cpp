#include "aqg/gns.hpp"

#include <memory>

namespace aqg {

GnsSpace::GnsSpace(const Presentation* p, int degree) : pres_(p), degree_(degree) {
    const std::size_t n = p->dim_up_to(degree);
    gram_ = Mat(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        Element sj = star(p->basis_element(static_cast<BasisIndex>(j)));
        for (std::size_t i = 0; i < n; ++i)
            gram_.at(i, j) = right_integral(mul(sj, p->basis_element(static_cast<BasisIndex>(i))));
    }
}

namespace {

// Shared data for an eigen-expanded conjugate-linear polar part.
struct PolarData {
    std::vector<Element> eigvecs;
    std::vector<Vec> eig_coords;       // ambient coordinates, for expansion
    std::vector<Scalar> inv_sqrt;      // lambda^{-1/2}
    std::vector<Element> t_images;     // T(eigvec) precomputed
    std::size_t dim;
};

Element polar_apply(const std::shared_ptr<PolarData>& pd, const Element& x) {
    if (x.is_zero()) return x;
    Vec xc(pd->dim);
    for (const auto& [i, s] : x.coeffs()) {
        if (i >= pd->dim) throw std::domain_error("polar part: element escapes truncation");
        xc[i] = s;
    }
    auto coords = coordinates_in_span(pd->eig_coords, xc);
    if (!coords) throw std::logic_error("polar part: eigenbasis does not span truncation");
    Element out(x.presentation());
    for (std::size_t k = 0; k < pd->eigvecs.size(); ++k) {
        const Scalar& a = (*coords)[k];
        if (a.is_zero()) continue;
        out += (a.conj() * pd->inv_sqrt[k]) * pd->t_images[k];
    }
    return out;
}

std::shared_ptr<PolarData> make_polar(const EigenDecomposition& eig,
                                      const SpanOperator& involution, std::size_t dim,
                                      bool* exact_flag) {
    auto pd = std::make_shared<PolarData>();
    pd->dim = dim;
    for (const JointEigenvector& jev : eig.vectors) {
        pd->eigvecs.push_back(jev.vector);
        Vec v(dim);
        for (const auto& [i, s] : jev.vector.coeffs()) v[i] = s;
        pd->eig_coords.push_back(std::move(v));
        Scalar root = sqrt_prefer_exact(jev.eigenvalues[0].value());
        if (!root.is_exact()) *exact_flag = false;
        pd->inv_sqrt.push_back(Scalar(1) / root);
        pd->t_images.push_back(involution(jev.vector));
    }
    return pd;
}

std::string wname(const Presentation* p, BasisIndex i) { return p->index_name(i); }

}  // namespace

GnsOperators build_gns_operators(const ModularMaps& mm, int degree) {
    GnsOperators ops;
    ops.mm = &mm;
    ops.degree = degree;
    const ModularMaps* m = &mm;
    Element delta = mm.delta();
    Element delta_inv = mm.delta_inv();

    ops.T = {"T", true, [](const Element& a) { return star(a); }};
    ops.T_star = {"T*", true, [m](const Element& a) { return m->sigma_prime(star(a)); }};
    ops.T_hat = {"T-hat", true,
                 [delta_inv](const Element& a) { return mul(antipode(star(a)), delta_inv); }};
    ops.T_hat_star = {"T-hat*", true, [](const Element& a) { return star(antipode(a)); }};
    ops.nabla = {"nabla", false, [m](const Element& a) { return m->sigma_prime(a); }};
    ops.nabla_inv = {"nabla^-1", false, [m](const Element& a) { return m->sigma_prime_inv(a); }};
    ops.nabla_hat = {"nabla-hat", false, [delta](const Element& a) {
                         return mul(antipode_inv(antipode_inv(a)), delta);
                     }};
    ops.nabla_hat_inv = {"nabla-hat^-1", false, [delta_inv](const Element& a) {
                             return antipode(antipode(mul(a, delta_inv)));
                         }};

    const Presentation* p = mm.presentation();
    std::vector<Element> basis;
    for (BasisIndex i = 0; i < p->dim_up_to(degree); ++i) basis.push_back(p->basis_element(i));
    ops.nabla_eigen = joint_eigenbasis(basis, {mm.op_sigma_prime()});
    ops.nabla_hat_eigen = joint_eigenbasis(basis, {mm.op_nabla_hat_action()});

    const std::size_t dim = p->dim_up_to(degree);
    auto jd = make_polar(ops.nabla_eigen, ops.T, dim, &ops.polar_exact);
    auto jhd = make_polar(ops.nabla_hat_eigen, ops.T_hat, dim, &ops.polar_exact);
    ops.J = {"J", true, [jd](const Element& x) { return polar_apply(jd, x); }};
    ops.J_hat = {"J-hat", true, [jhd](const Element& x) { return polar_apply(jhd, x); }};
    return ops;
}

void run_gns_checks(GnsOperators& ops, DualContext& dual, Recorder& rec,
                    const std::vector<double>& t_samples) {
    const ModularMaps& mm = *ops.mm;
    const Presentation* p = mm.presentation();
    const int deg = ops.degree;
    const std::size_t n = p->dim_up_to(deg);
    std::vector<Element> basis;
    for (BasisIndex i = 0; i < n; ++i) basis.push_back(p->basis_element(i));

    {
        GnsSpace space(p, deg);
        auto& c = rec.check("gns.gram-positive-definite",
                            "G[i][j] = psi(e_j* e_i) is Hermitian positive definite");
        c.require_true(space.positive_definite(), "Gram matrix on degree <= " +
                                                      std::to_string(deg));
    }

    {
        // <T L(x), L(y)> = <T* L(y), L(x)> and the T-hat analogue, exactly
        auto& c = rec.check("gns.T-adjoint", "<T L(x), L(y)> = <T* L(y), L(x)>");
        auto& ch = rec.check("gns.That-adjoint", "<T-hat L(x), L(y)> = <T-hat* L(y), L(x)>");
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                std::string w = "x=" + wname(p, i) + ", y=" + wname(p, j);
                Scalar lhs = GnsSpace::inner(ops.T(basis[i]), basis[j]);
                Scalar rhs = GnsSpace::inner(ops.T_star(basis[j]), basis[i]);
                c.require_exact_zero(lhs - rhs, w);
                Scalar lh = GnsSpace::inner(ops.T_hat(basis[i]), basis[j]);
                Scalar rh = GnsSpace::inner(ops.T_hat_star(basis[j]), basis[i]);
                ch.require_exact_zero(lh - rh, w);
            }
    }

    {
        // conjugate linearity of the involutions
        auto& c = rec.check("gns.conjugate-linearity", "T(s v) = conj(s) T(v), all four maps");
        Scalar s(mpq_class(2, 3), mpq_class(5, 7));
        for (const SpanOperator* op : {&ops.T, &ops.T_star, &ops.T_hat, &ops.T_hat_star}) {
            for (std::size_t i = 0; i < std::min<std::size_t>(n, 6); ++i) {
                Element lhs = (*op)(s * basis[i]);
                Element rhs = s.conj() * (*op)(basis[i]);
                c.require_exact_zero(lhs - rhs, op->name + " at " + wname(p, i));
            }
        }
    }

    {
        // T-hat realizes the dual star: <x, b*> = conj(<S(x)*, b>)
        auto& c = rec.check("gns.dual-star-pairing", "<x, b*> = conj(<S(x)*, b>)");
        for (std::size_t i = 0; i < n; ++i) {
            DualElement b = dual.fourier(basis[i]);
            DualElement bs = dual.dual_star(b);
            for (std::size_t j = 0; j < n; ++j) {
                Scalar lhs = dual.pair(basis[j], bs);
                Scalar rhs = dual.pair(star(antipode(basis[j])), b).conj();
                c.require_exact_zero(lhs - rhs,
                                     "x=" + wname(p, j) + ", b=fourier(" + wname(p, i) + ")");
            }
        }
    }

    {
        // T / T* on the Fourier image: T Lh(b) = Lh(S(b)* dh), T* Lh(b) = Lh(S(b*))
        auto& c = rec.check("gns.T-on-lambdahat",
                            "T Lh(b) = Lh(S(b)* delta-hat) and T* Lh(b) = Lh(S(b*))");
        for (std::size_t i = 0; i < n; ++i) {
            DualElement b = dual.fourier(basis[i]);
            Element lhs1 = ops.T(basis[i]);
            DualElement rhs1 =
                dual.delta_hat_act(dual.dual_star(dual.dual_antipode(b)), DeltaHatSide::Right);
            c.require_exact_zero(lhs1 - rhs1.preimage(), "T at b=fourier(" + wname(p, i) + ")");
            Element lhs2 = ops.T_star(basis[i]);
            DualElement rhs2 = dual.dual_antipode(dual.dual_star(b));
            c.require_exact_zero(lhs2 - rhs2.preimage(), "T* at b=fourier(" + wname(p, i) + ")");
        }
    }

    {
        // factorizations nabla = T*T and nabla-hat = T-hat* T-hat
        auto& c = rec.check("gns.nabla-factorization", "nabla = T*T, nabla-hat = T-hat* T-hat");
        for (std::size_t i = 0; i < n; ++i) {
            c.require_exact_zero(ops.T_star(ops.T(basis[i])) - ops.nabla(basis[i]),
                                 wname(p, i));
            c.require_exact_zero(ops.T_hat_star(ops.T_hat(basis[i])) - ops.nabla_hat(basis[i]),
                                 wname(p, i));
        }
    }

    {
        // nabla / nabla-hat on the Fourier image
        auto& c = rec.check("gns.nabla-on-lambdahat",
                            "nabla Lh(b) = Lh(S^2(b) delta-hat^{-1}), "
                            "nabla-hat Lh(b) = Lh(sigma-hat(b))");
        const DualModularData& dm = dual.modular();
        for (std::size_t i = 0; i < n; ++i) {
            DualElement b = dual.fourier(basis[i]);
            Element lhs1 = ops.nabla(basis[i]);
            DualElement rhs1 =
                dual.delta_hat_act(dual.s_hat_squared(b), DeltaHatSide::InvRight);
            c.require_exact_zero(lhs1 - rhs1.preimage(), "nabla at fourier(" + wname(p, i) + ")");
            Element lhs2 = ops.nabla_hat(basis[i]);
            DualElement rhs2 = dual.apply_dual(dm.sigma_hat, b);
            c.require_exact_zero(lhs2 - rhs2.preimage(),
                                 "nabla-hat at fourier(" + wname(p, i) + ")");
        }
    }

    {
        // positivity of nabla against the Gram form
        auto& c = rec.check("gns.nabla-positive", "<nabla xi, xi> > 0 for xi != 0");
        for (std::size_t i = 0; i < n; ++i) {
            Scalar v = GnsSpace::inner(ops.nabla(basis[i]), basis[i]);
            bool ok = v.is_exact() && v.is_real() && sgn(v.re()) > 0;
            c.require_true(ok, "xi = Lambda(" + wname(p, i) + "), value " + v.str());
        }
    }

    {
        // polar parts: J anti-unitary and involutive; T = J nabla^{1/2}
        auto& c = rec.check("gns.polar", "T = J nabla^{1/2} with J anti-unitary, J^2 = 1");
        auto& chat = rec.check("gns.polar-hat",
                               "T-hat = J-hat nabla-hat^{1/2} with J-hat anti-unitary, J-hat^2 = 1");
        auto run = [&](Check& chk, const SpanOperator& J, const SpanOperator& T,
                       const EigenDecomposition& eig) {
            for (const JointEigenvector& jev : eig.vectors) {
                Scalar root = sqrt_prefer_exact(jev.eigenvalues[0].value());
                Element recomposed = J(root * jev.vector);
                chk.require_exact_zero(recomposed - T(jev.vector),
                                       "recompose at eigenvector " + jev.vector.str());
            }
            std::vector<Element> jimg;
            for (std::size_t i = 0; i < n; ++i) jimg.push_back(J(basis[i]));
            for (std::size_t i = 0; i < n; ++i) {
                chk.require_exact_zero(J(jimg[i]) - basis[i], "J^2 at " + wname(p, i));
                for (std::size_t j = 0; j < n; ++j) {
                    Scalar lhs = GnsSpace::inner(jimg[i], jimg[j]);
                    Scalar rhs = GnsSpace::inner(basis[j], basis[i]);
                    chk.require_exact_zero(lhs - rhs,
                                           "<J e_i, J e_j> at i=" + wname(p, i) + ", j=" +
                                               wname(p, j));
                }
            }
        };
        run(c, ops.J, ops.T, ops.nabla_eigen);
        run(chat, ops.J_hat, ops.T_hat, ops.nabla_hat_eigen);
    }

    {
        // conjugation implementations on pi(A) and gamma(B)
        auto& c1 = rec.check("gns.conj-nabla-pi", "nabla pi(a) nabla^{-1} = pi(sigma'(a))");
        auto& c2 = rec.check("gns.conj-nabla-gamma", "nabla gamma(b) nabla^{-1} = gamma(S^2(b))");
        auto& c3 = rec.check("gns.conj-nablahat-gamma",
                             "nabla-hat gamma(b) nabla-hat^{-1} = gamma(sigma-hat(b))");
        auto& c4 = rec.check("gns.conj-nablahat-pi",
                             "nabla-hat pi(a) nabla-hat^{-1} = pi(S^{-2}(a))");
        const DualModularData& dm = dual.modular();
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                std::string w = "a=" + wname(p, i) + ", v=" + wname(p, j);
                Element lhs1 = ops.nabla(mul(basis[i], ops.nabla_inv(basis[j])));
                c1.require_exact_zero(lhs1 - mul(mm.sigma_prime(basis[i]), basis[j]), w);
                Element lhs4 = ops.nabla_hat(mul(basis[i], ops.nabla_hat_inv(basis[j])));
                c4.require_exact_zero(lhs4 - mul(mm.s_minus2(basis[i]), basis[j]), w);
            }
            DualElement b = dual.fourier(basis[i]);
            for (std::size_t j = 0; j < n; ++j) {
                std::string w = "b=fourier(" + wname(p, i) + "), v=" + wname(p, j);
                Element lhs2 = ops.nabla(dual.gamma_act(b, ops.nabla_inv(basis[j])));
                Element rhs2 = dual.gamma_act(dual.s_hat_squared(b), basis[j]);
                c2.require_exact_zero(lhs2 - rhs2, w);
                Element lhs3 = ops.nabla_hat(dual.gamma_act(b, ops.nabla_hat_inv(basis[j])));
                Element rhs3 = dual.gamma_act(dual.apply_dual(dm.sigma_hat, b), basis[j]);
                c3.require_exact_zero(lhs3 - rhs3, w);
            }
        }
    }

    {
        // multiplier actions: gamma(delta-hat) L(a) = L(S^2 sigma^{-1}(a)),
        // pi(delta) Lh(b) = Lh(S^2 sigma-hat'(b))
        auto& c1 = rec.check("gns.delta-hat-on-lambda",
                             "gamma(delta-hat) L(a) = L(S^2 sigma^{-1}(a))");
        auto& c2 = rec.check("gns.delta-on-lambdahat",
                             "pi(delta) Lh(b) = Lh(S^2 sigma-hat'(b))");
        const DualModularData& dm = dual.modular();
        for (std::size_t i = 0; i < n; ++i) {
            Element lhs = dual.gamma_act_fn(
                [&dual](const Element& y) { return dual.delta_hat_char(y); }, basis[i]);
            Element rhs = mm.s_squared(mm.sigma_inv(basis[i]));
            c1.require_exact_zero(lhs - rhs, "a=" + wname(p, i));

            DualElement b = dual.fourier(basis[i]);
            Element lhs2 = mul(mm.delta(), basis[i]);
            DualElement rhs2 = dual.s_hat_squared(dual.apply_dual(dm.sigma_hat_prime, b));
            c2.require_exact_zero(lhs2 - rhs2.preimage(), "b=fourier(" + wname(p, i) + ")");
        }
    }

    {
        // one-parameter stability: conjugating an eigen pi(a) by nabla^{it}
        // multiplies it by lambda^{it}; unit modulus at the float tier
        auto& c = rec.check("gns.nabla-it-conjugation",
                            "nabla^{it} pi(a) nabla^{-it} = lambda^{it} pi(a) on eigenvectors");
        for (double t : t_samples) {
            for (const JointEigenvector& a : ops.nabla_eigen.vectors) {
                for (const JointEigenvector& v : ops.nabla_eigen.vectors) {
                    Element prod = mul(a.vector, v.vector);
                    if (prod.is_zero()) continue;
                    // sigma'(a v) = (lambda_a lambda_v)(a v) exactly
                    Scalar lam = a.eigenvalues[0].value() * v.eigenvalues[0].value();
                    c.require_exact_zero(mm.sigma_prime(prod) - lam * prod,
                                         "product eigenvector at t=" + std::to_string(t));
                }
                Scalar phase = scalar_pow_it(a.eigenvalues[0], t);
                c.require_float(std::abs(phase.abs() - 1.0),
                                "modulus of lambda^{it}, t=" + std::to_string(t));
            }
        }
    }
}

}  // namespace aqg
