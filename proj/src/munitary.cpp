#include "aqg/munitary.hpp"

#include <map>
#include <sstream>

namespace aqg {

TensorElement V_apply(const TensorElement& t) {
    const Presentation* p = t.presentation();
    TensorElement out(p);
    for (const auto& [k, c] : t.coeffs()) {
        TensorElement d = p->comult(k.first);
        Element y = p->basis_element(k.second);
        for (const auto& [kd, cd] : d.coeffs()) {
            Element leg2 = mul(p->basis_element(kd.second), y);
            for (const auto& [i2, c2] : leg2.coeffs()) out.add(kd.first, i2, c * cd * c2);
        }
    }
    return out;
}

TensorElement V_star_apply(const TensorElement& t) {
    const Presentation* p = t.presentation();
    TensorElement out(p);
    for (const auto& [k, c] : t.coeffs()) {
        TensorElement d = p->comult(k.first);
        Element a = p->basis_element(k.second);
        for (const auto& [kd, cd] : d.coeffs()) {
            Element leg2 = mul(antipode(p->basis_element(kd.second)), a);
            for (const auto& [i2, c2] : leg2.coeffs()) out.add(kd.first, i2, c * cd * c2);
        }
    }
    return out;
}

const Scalar& TensorGram::gram(BasisIndex i, BasisIndex j) {
    auto key = std::make_pair(i, j);
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
    Scalar v = right_integral(mul(star(p_->basis_element(j)), p_->basis_element(i)));
    return cache_.emplace(key, std::move(v)).first->second;
}

Scalar TensorGram::inner(const TensorElement& x, const TensorElement& y) {
    Scalar acc;
    for (const auto& [kx, cx] : x.coeffs())
        for (const auto& [ky, cy] : y.coeffs()) {
            const Scalar& g1 = gram(kx.first, ky.first);
            if (g1.is_zero()) continue;
            const Scalar& g2 = gram(kx.second, ky.second);
            if (g2.is_zero()) continue;
            acc += cx * cy.conj() * g1 * g2;
        }
    return acc;
}

TensorElement tensor_op(const TensorElement& t, const SpanOperator& left,
                        const SpanOperator& right) {
    const Presentation* p = t.presentation();
    if (left.conjugate_linear != right.conjugate_linear)
        throw std::invalid_argument("tensor_op: mixed linearity legs");
    TensorElement out(p);
    for (const auto& [k, c] : t.coeffs()) {
        Element l = left(p->basis_element(k.first));
        Element r = right(p->basis_element(k.second));
        Scalar f = left.conjugate_linear ? c.conj() : c;
        for (const auto& [i, ci] : l.coeffs())
            for (const auto& [j, cj] : r.coeffs()) out.add(i, j, f * ci * cj);
    }
    return out;
}

bool ConventionAudit::exactly_one_per_t() const {
    for (std::size_t i = 0; i < t_samples.size(); ++i)
        if (tau_plus_holds[i] == tau_minus_holds[i]) return false;
    return true;
}

bool ConventionAudit::same_variant_at_all_t() const {
    if (t_samples.empty()) return true;
    for (std::size_t i = 1; i < t_samples.size(); ++i)
        if (tau_plus_holds[i] != tau_plus_holds[0] || tau_minus_holds[i] != tau_minus_holds[0])
            return false;
    return true;
}

std::string ConventionAudit::description() const {
    std::ostringstream os;
    for (std::size_t i = 0; i < t_samples.size(); ++i) {
        os << (i ? "; " : "") << "t=" << t_samples[i] << ": tau_t "
           << (tau_plus_holds[i] ? "holds" : "fails") << ", tau_{-t} "
           << (tau_minus_holds[i] ? "holds" : "fails");
    }
    return os.str();
}

namespace {

using Key3 = std::tuple<BasisIndex, BasisIndex, BasisIndex>;

struct Tensor3 {
    const Presentation* p = nullptr;
    std::map<Key3, Scalar> c;

    void add(BasisIndex i, BasisIndex j, BasisIndex k, const Scalar& v) {
        if (v.is_zero()) return;
        auto key = Key3{i, j, k};
        auto [it, ins] = c.emplace(key, v);
        if (!ins) {
            it->second += v;
            if (it->second.is_zero()) c.erase(it);
        }
    }

    friend Tensor3 operator-(const Tensor3& a, const Tensor3& b) {
        Tensor3 r = a;
        for (const auto& [k, v] : b.c) r.add(std::get<0>(k), std::get<1>(k), std::get<2>(k), -v);
        return r;
    }
    bool is_zero() const { return c.empty(); }
    bool all_exact() const {
        for (const auto& [k, v] : c)
            if (!v.is_exact()) return false;
        return true;
    }
};

// triple Sweedler expansion (Delta (x) id) Delta(x) of a basis element
Tensor3 comul3(const Presentation* p, BasisIndex x) {
    Tensor3 out;
    out.p = p;
    TensorElement d = p->comult(x);
    for (const auto& [k, c] : d.coeffs()) {
        TensorElement dd = p->comult(k.first);
        for (const auto& [kk, cc] : dd.coeffs())
            out.add(kk.first, kk.second, k.second, c * cc);
    }
    return out;
}

// coefficient-matrix form of a tensor element on the degree-<=N square
Mat tensor_coeff_matrix(const TensorElement& t, std::size_t dim) {
    Mat m(dim, dim);
    for (const auto& [k, c] : t.coeffs()) {
        if (k.first >= dim || k.second >= dim)
            throw std::domain_error("tensor escapes the grid truncation");
        m.at(k.first, k.second) = c;
    }
    return m;
}

// eigen-coordinate transform data for one decomposition
struct EigenFrame {
    Mat basis_to_eigen;       // coords of e-basis in the eigenbasis (E^{-1})
    Mat eigen_to_basis;       // columns are eigenvector coordinates (E)
    std::vector<PositiveEigenvalue> eigenvalues;
};

EigenFrame make_frame(const EigenDecomposition& dec, std::size_t dim) {
    EigenFrame f;
    f.eigen_to_basis = Mat(dim, dim);
    for (std::size_t k = 0; k < dec.vectors.size(); ++k) {
        for (const auto& [i, s] : dec.vectors[k].vector.coeffs())
            f.eigen_to_basis.at(i, k) = s;
        f.eigenvalues.push_back(dec.vectors[k].eigenvalues[0]);
    }
    f.basis_to_eigen = inverse(f.eigen_to_basis);
    return f;
}

// (g^{it} (x) h^{it}) applied to a tensor, via eigen-coordinates
Mat tensor_eigen_scale(const Mat& coeff, const EigenFrame& left, const EigenFrame& right,
                       double t) {
    Mat in_eigen = left.basis_to_eigen * coeff * right.basis_to_eigen.transpose();
    for (std::size_t k = 0; k < in_eigen.rows(); ++k)
        for (std::size_t l = 0; l < in_eigen.cols(); ++l) {
            if (in_eigen.at(k, l).is_zero()) continue;
            in_eigen.at(k, l) *= scalar_pow_it(left.eigenvalues[k], t);
            in_eigen.at(k, l) *= scalar_pow_it(right.eigenvalues[l], t);
        }
    return left.eigen_to_basis * in_eigen * right.eigen_to_basis.transpose();
}

double mat_diff_abs(const Mat& a, const Mat& b) { return (a - b).max_abs(); }

}  // namespace

std::function<Element(const Element&)> solve_unitary_antipode(GnsOperators& ops,
                                                              DualContext& dual) {
    const ModularMaps& mm = *ops.mm;
    const Presentation* p = mm.presentation();
    const int deg = ops.degree;
    const std::size_t n = p->dim_up_to(deg);
    const std::size_t big = p->dim_up_to(p->degree_growth_bound(deg, deg));

    // columns: stacked coordinates of e_j * v over all basis v
    std::vector<Vec> cols(n, Vec(n * big));
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t v = 0; v < n; ++v) {
            Element prod =
                mul(p->basis_element(static_cast<BasisIndex>(j)), p->basis_element(static_cast<BasisIndex>(v)));
            for (const auto& [i, s] : prod.coeffs()) cols[j][v * big + i] = s;
        }

    // r(e_k) solves r(e_k) v = J-hat( e_k* J-hat(v) ) for all v
    auto images = std::make_shared<std::vector<Element>>();
    for (std::size_t k = 0; k < n; ++k) {
        Element astar = star(p->basis_element(static_cast<BasisIndex>(k)));
        Vec rhs(n * big);
        for (std::size_t v = 0; v < n; ++v) {
            Element img = ops.J_hat(mul(astar, ops.J_hat(p->basis_element(static_cast<BasisIndex>(v)))));
            for (const auto& [i, s] : img.coeffs()) {
                if (i >= big) throw std::domain_error("solve_unitary_antipode: image escapes grid");
                rhs[v * big + i] = s;
            }
        }
        auto coords = coordinates_in_span(cols, rhs);
        if (!coords)
            throw std::domain_error(
                "solve_unitary_antipode: J-hat conjugation leaves pi(A) on this truncation");
        Element r(p);
        for (std::size_t j = 0; j < n; ++j)
            r += (*coords)[j] * p->basis_element(static_cast<BasisIndex>(j));
        images->push_back(std::move(r));
    }
    return [images, p, n](const Element& x) {
        Element out(p);
        for (const auto& [i, s] : x.coeffs()) {
            if (i >= n) throw std::domain_error("unitary antipode: element outside truncation");
            out += s * (*images)[i];
        }
        return out;
    };
}

ConventionAudit run_munitary_checks(GnsOperators& ops, DualContext& dual, Recorder& rec,
                                    const MunitaryOptions& opt) {
    const ModularMaps& mm = *ops.mm;
    const Presentation* p = mm.presentation();
    const int deg = opt.grid_degree;
    const std::size_t n = p->dim_up_to(deg);
    std::vector<Element> basis;
    for (BasisIndex i = 0; i < n; ++i) basis.push_back(p->basis_element(i));

    auto basis_tensor = [&](std::size_t i, std::size_t j) {
        TensorElement t(p);
        t.add(static_cast<BasisIndex>(i), static_cast<BasisIndex>(j), Scalar(1));
        return t;
    };
    auto wit = [&](std::size_t i, std::size_t j) {
        return "L(" + p->index_name(static_cast<BasisIndex>(i)) + ") (x) L(" +
               p->index_name(static_cast<BasisIndex>(j)) + ")";
    };

    TensorGram tg(p);
    {
        auto& c = rec.check("mu.V-isometry", "<V v, V w> = <v, w> on the tensor grid");
        auto& ci = rec.check("mu.V-star-inverse", "V* V = 1 = V V* on the tensor grid");
        auto& ca = rec.check("mu.V-star-adjoint", "<V* v, w> = <v, V w> on the tensor grid");
        std::vector<TensorElement> v_img(n * n), vs_img(n * n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                v_img[i * n + j] = V_apply(basis_tensor(i, j));
                vs_img[i * n + j] = V_star_apply(basis_tensor(i, j));
                ci.require_exact_zero(V_star_apply(v_img[i * n + j]) - basis_tensor(i, j),
                                      "V*V at " + wit(i, j));
                ci.require_exact_zero(V_apply(vs_img[i * n + j]) - basis_tensor(i, j),
                                      "VV* at " + wit(i, j));
            }
        for (std::size_t a = 0; a < n * n; ++a)
            for (std::size_t b = 0; b < n * n; ++b) {
                TensorElement ta = basis_tensor(a / n, a % n), tb = basis_tensor(b / n, b % n);
                c.require_exact_zero(tg.inner(v_img[a], v_img[b]) - tg.inner(ta, tb),
                                     wit(a / n, a % n) + " vs " + wit(b / n, b % n));
                ca.require_exact_zero(tg.inner(vs_img[a], tb) - tg.inner(ta, v_img[b]),
                                      wit(a / n, a % n) + " vs " + wit(b / n, b % n));
            }
    }

    {
        auto& c = rec.check("mu.V-T-exchange", "V* (T (x) T-hat) = (T (x) T-hat) V");
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                TensorElement t = basis_tensor(i, j);
                TensorElement lhs = V_star_apply(tensor_op(t, ops.T, ops.T_hat));
                TensorElement rhs = tensor_op(V_apply(t), ops.T, ops.T_hat);
                c.require_exact_zero(lhs - rhs, wit(i, j));
            }
    }

    {
        auto& c = rec.check("mu.polar-exchange-J", "(J (x) J-hat) V = V* (J (x) J-hat)");
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                TensorElement t = basis_tensor(i, j);
                TensorElement lhs = tensor_op(V_apply(t), ops.J, ops.J_hat);
                TensorElement rhs = V_star_apply(tensor_op(t, ops.J, ops.J_hat));
                c.require_exact_zero(lhs - rhs, wit(i, j));
            }
    }

    {
        // exact ungraded statement plus float samples of the it-version
        auto& c = rec.check("mu.polar-exchange-nabla",
                            "(nabla^{it} (x) nabla-hat^{it}) V = V (nabla^{it} (x) nabla-hat^{it})");
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                TensorElement t = basis_tensor(i, j);
                TensorElement lhs = tensor_op(V_apply(t), ops.nabla, ops.nabla_hat);
                TensorElement rhs = V_apply(tensor_op(t, ops.nabla, ops.nabla_hat));
                c.require_exact_zero(lhs - rhs, "ungraded at " + wit(i, j));
            }
        LinearOp grid_sp = mm.op_sigma_prime();
        LinearOp grid_nh = mm.op_nabla_hat_action();
        EigenFrame f1 = make_frame(joint_eigenbasis(basis, {grid_sp}), n);
        EigenFrame f2 = make_frame(joint_eigenbasis(basis, {grid_nh}), n);
        for (double t : opt.t_samples) {
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j) {
                    TensorElement te = basis_tensor(i, j);
                    Mat lhs = tensor_eigen_scale(tensor_coeff_matrix(V_apply(te), n), f1, f2, t);
                    Mat rhs_in = tensor_eigen_scale(tensor_coeff_matrix(te, n), f1, f2, t);
                    TensorElement rhs_t(p);
                    for (std::size_t r = 0; r < n; ++r)
                        for (std::size_t s = 0; s < n; ++s)
                            rhs_t.add(static_cast<BasisIndex>(r), static_cast<BasisIndex>(s),
                                      rhs_in.at(r, s));
                    Mat rhs = tensor_coeff_matrix(V_apply(rhs_t), n);
                    c.require_float(mat_diff_abs(lhs, rhs),
                                    wit(i, j) + " at t=" + std::to_string(t));
                }
        }
    }

    {
        // three-leg identities on a reduced grid
        const int tdeg = opt.triple_degree;
        const std::size_t m = p->dim_up_to(tdeg);
        auto& c1 = rec.check("mu.leg-left", "(id (x) Delta) V = V_12 V_13");
        auto& c2 = rec.check("mu.leg-right", "(Delta-hat (x) id) V* = V*_13 V*_23");
        for (std::size_t a = 0; a < m; ++a) {
            Tensor3 sw = comul3(p, static_cast<BasisIndex>(a));
            for (std::size_t x = 0; x < m; ++x)
                for (std::size_t y = 0; y < m; ++y) {
                    // lhs: sum L(a1) (x) a2 L(ex) (x) a3 L(ey)
                    Tensor3 lhs;
                    lhs.p = p;
                    for (const auto& [k, c] : sw.c) {
                        Element l2 = mul(p->basis_element(std::get<1>(k)),
                                         p->basis_element(static_cast<BasisIndex>(x)));
                        Element l3 = mul(p->basis_element(std::get<2>(k)),
                                         p->basis_element(static_cast<BasisIndex>(y)));
                        for (const auto& [i2, c2v] : l2.coeffs())
                            for (const auto& [i3, c3v] : l3.coeffs())
                                lhs.add(std::get<0>(k), i2, i3, c * c2v * c3v);
                    }
                    // rhs: V_12 V_13 (L(ea) (x) L(ex) (x) L(ey))
                    Tensor3 rhs;
                    rhs.p = p;
                    TensorElement v13 = V_apply(basis_tensor(a, y));
                    for (const auto& [k, c] : v13.coeffs()) {
                        TensorElement v12 = V_apply([&] {
                            TensorElement t(p);
                            t.add(k.first, static_cast<BasisIndex>(x), Scalar(1));
                            return t;
                        }());
                        for (const auto& [kk, cc] : v12.coeffs())
                            rhs.add(kk.first, kk.second, k.second, c * cc);
                    }
                    c1.require_true((lhs - rhs).is_zero(),
                                    "a=" + p->index_name(static_cast<BasisIndex>(a)) + ", " +
                                        wit(x, y));
                }
        }
        // dual side: (Delta-hat (x) id) V* via first-two-leg slicing of the
        // dual coproduct against u_(2), u'_(2); rhs via iterated V*
        for (std::size_t x = 0; x < m; ++x)
            for (std::size_t y = 0; y < m; ++y)
                for (std::size_t b = 0; b < m; ++b) {
                    DualElement db = dual.fourier(p->basis_element(static_cast<BasisIndex>(b)));
                    Tensor3 lhs;
                    lhs.p = p;
                    TensorElement du = p->comult(static_cast<BasisIndex>(x));
                    TensorElement dv = p->comult(static_cast<BasisIndex>(y));
                    for (const auto& [ku, cu] : du.coeffs())
                        for (const auto& [kv, cv] : dv.coeffs()) {
                            Element w = mul(p->basis_element(ku.second),
                                            p->basis_element(kv.second));
                            DualElement sliced = dual.slice_left(w, db);
                            for (const auto& [i3, c3v] : sliced.preimage().coeffs())
                                lhs.add(ku.first, kv.first, i3, cu * cv * c3v);
                        }
                    Tensor3 rhs;
                    rhs.p = p;
                    TensorElement v23 = V_star_apply(basis_tensor(y, b));
                    for (const auto& [k, c] : v23.coeffs()) {
                        TensorElement v13 = V_star_apply([&] {
                            TensorElement t(p);
                            t.add(static_cast<BasisIndex>(x), k.second, Scalar(1));
                            return t;
                        }());
                        for (const auto& [kk, cc] : v13.coeffs())
                            rhs.add(kk.first, k.first, kk.second, c * cc);
                    }
                    c2.require_true((lhs - rhs).is_zero(),
                                    wit(x, y) + ", b=fourier(" +
                                        p->index_name(static_cast<BasisIndex>(b)) + ")");
                }
        if (opt.pentagon) {
            auto& c3 = rec.check("mu.pentagon", "V_12 V_13 V_23 = V_23 V_12 (optional)");
            auto apply_leg = [&](const Tensor3& t, int l1, int l2) {
                Tensor3 out;
                out.p = p;
                for (const auto& [k, c] : t.c) {
                    BasisIndex idx[3] = {std::get<0>(k), std::get<1>(k), std::get<2>(k)};
                    TensorElement in(p);
                    in.add(idx[l1], idx[l2], Scalar(1));
                    TensorElement img = V_apply(in);
                    for (const auto& [kk, cc] : img.coeffs()) {
                        BasisIndex nidx[3] = {idx[0], idx[1], idx[2]};
                        nidx[l1] = kk.first;
                        nidx[l2] = kk.second;
                        out.add(nidx[0], nidx[1], nidx[2], c * cc);
                    }
                }
                return out;
            };
            for (std::size_t a = 0; a < m; ++a)
                for (std::size_t x = 0; x < m; ++x)
                    for (std::size_t y = 0; y < m; ++y) {
                        Tensor3 seed;
                        seed.p = p;
                        seed.add(static_cast<BasisIndex>(a), static_cast<BasisIndex>(x),
                                 static_cast<BasisIndex>(y), Scalar(1));
                        Tensor3 lhs = apply_leg(apply_leg(apply_leg(seed, 1, 2), 0, 2), 0, 1);
                        Tensor3 rhs = apply_leg(apply_leg(seed, 0, 1), 1, 2);
                        c3.require_true((lhs - rhs).is_zero(), "triple grid");
                    }
        }
    }

    std::function<Element(const Element&)> r_map;
    {
        auto& c = rec.check("mu.R-antipode",
                            "R = J-hat (.)* J-hat preserves pi(A); R^2 = id; R antimultiplicative");
        try {
            r_map = solve_unitary_antipode(ops, dual);
        } catch (const std::domain_error& e) {
            c.fail(e.what());
        }
        if (r_map) {
            for (std::size_t i = 0; i < n; ++i) {
                c.require_exact_zero(r_map(r_map(basis[i])) - basis[i],
                                     "R^2 at " + p->index_name(static_cast<BasisIndex>(i)));
                for (std::size_t j = 0; j < n; ++j) {
                    Element lhs = r_map(mul(basis[i], basis[j]));
                    Element rhs = mul(r_map(basis[j]), r_map(basis[i]));
                    c.require_exact_zero(lhs - rhs, wit(i, j));
                }
            }
        }
    }

    if (r_map) {
        auto& c = rec.check("mu.R-flips-coproduct", "Delta(R(x)) = flip (R (x) R) Delta(x)");
        for (std::size_t i = 0; i < n; ++i) {
            TensorElement lhs = comul(r_map(basis[i]));
            TensorElement rhs = tensor_flip(tensor_map(comul(basis[i]), r_map, r_map));
            c.require_exact_zero(lhs - rhs, p->index_name(static_cast<BasisIndex>(i)));
        }
    }

    {
        // dual-side unitary antipode: R-hat(gamma(b)) = J gamma(b*) J stays in
        // gamma(B), solved by its preimage; then R-hat^2 = id
        auto& c = rec.check("mu.R-hat-antipode",
                            "R-hat = J (.)* J preserves gamma(B); R-hat^2 = id");
        std::vector<Vec> cols(n, Vec(n * n));
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t v = 0; v < n; ++v) {
                Element img = dual.gamma_act(dual.fourier(basis[j]), basis[v]);
                for (const auto& [i, s] : img.coeffs()) {
                    if (i >= n) throw std::domain_error("mu.R-hat: gamma image escapes grid");
                    cols[j][v * n + i] = s;
                }
            }
        auto rhat = [&](const DualElement& b) -> std::optional<DualElement> {
            DualElement bs = dual.dual_star(b);
            Vec rhs(n * n);
            for (std::size_t v = 0; v < n; ++v) {
                Element img = ops.J(dual.gamma_act(bs, ops.J(basis[v])));
                for (const auto& [i, s] : img.coeffs()) {
                    if (i >= n) return std::nullopt;
                    rhs[v * n + i] = s;
                }
            }
            auto coords = coordinates_in_span(cols, rhs);
            if (!coords) return std::nullopt;
            Element pre(p);
            for (std::size_t j = 0; j < n; ++j)
                pre += (*coords)[j] * basis[j];
            return dual.fourier(pre);
        };
        for (std::size_t i = 0; i < n; ++i) {
            DualElement b = dual.fourier(basis[i]);
            auto rb = rhat(b);
            if (!rb) {
                c.fail("no preimage for R-hat at fourier(" + p->index_name(static_cast<BasisIndex>(i)) + ")");
                continue;
            }
            auto rrb = rhat(*rb);
            if (!rrb) {
                c.fail("no preimage for R-hat^2 at fourier(" +
                       p->index_name(static_cast<BasisIndex>(i)) + ")");
                continue;
            }
            c.require_exact_zero(rrb->preimage() - basis[i],
                                 "R-hat^2 at fourier(" + p->index_name(static_cast<BasisIndex>(i)) + ")");
        }
    }

    {
        // tau_t by nabla-hat^{it} conjugation vs eigen-scaling of S^{-2}
        auto& c = rec.check("mu.tau-consistency",
                            "nabla-hat^{it} pi(a) nabla-hat^{-it} = tau_t(a) as eigen-scaling");
        EigenDecomposition s2_eigen = [&] {
            LinearOp sm2{"S^-2", [](const Element& x) { return antipode_inv(antipode_inv(x)); }};
            return joint_eigenbasis(basis, {sm2});
        }();
        for (double t : opt.t_samples) {
            for (const JointEigenvector& a : s2_eigen.vectors) {
                for (const JointEigenvector& v : ops.nabla_hat_eigen.vectors) {
                    Element prod = mul(a.vector, v.vector);
                    if (prod.is_zero()) continue;
                    Scalar lam = a.eigenvalues[0].value() * v.eigenvalues[0].value();
                    // vector-side eigen-relation for the product:
                    // S^{-2}(a v) delta = lambda_a mu_v (a v)
                    Element nh = mul(mm.s_minus2(prod), mm.delta());
                    c.require_exact_zero(nh - lam * prod, "nabla-hat eigen product");
                    // scalar consistency (lam mu)^{it} mu^{-it} = lam^{it}
                    auto pl = PositiveEigenvalue::certify(lam);
                    if (!pl) {
                        c.fail("product eigenvalue not positive");
                        continue;
                    }
                    Scalar conj_scalar = scalar_pow_it(*pl, t) *
                                         scalar_pow_it(v.eigenvalues[0], -t);
                    Scalar eig_scalar = scalar_pow_it(a.eigenvalues[0], t);
                    c.require_float((conj_scalar - eig_scalar).abs(),
                                    "t=" + std::to_string(t));
                }
            }
        }
    }

    // coproduct relations of the one-parameter groups; both sign variants
    // of the sigma'_t relation are evaluated and the verdict recorded
    ConventionAudit audit;
    audit.t_samples = opt.t_samples;
    {
        auto& c = rec.check("mu.sigma-prime-t-coproduct",
                            "Delta(sigma'_t(x)) vs (sigma'_t (x) tau_{+/-t}) Delta(x)");
        auto& ct = rec.check("mu.tau-t-coproduct", "Delta(tau_t(x)) = (tau_t (x) tau_t) Delta(x)");
        EigenDecomposition sp_grid = joint_eigenbasis(basis, {mm.op_sigma_prime()});
        EigenFrame sp_frame = make_frame(sp_grid, n);
        LinearOp sm2{"S^-2", [](const Element& x) { return antipode_inv(antipode_inv(x)); }};
        EigenDecomposition s2dec = joint_eigenbasis(basis, {sm2});
        EigenFrame tau_frame = make_frame(s2dec, n);
        const double tol = rec.tolerance();
        for (double t : opt.t_samples) {
            double worst_plus = 0, worst_minus = 0, worst_tau = 0;
            for (const JointEigenvector& xv : sp_grid.vectors) {
                // Delta(sigma'_t(x)) = lambda^{it} Delta(x) for the eigenvector
                Scalar lam_it = scalar_pow_it(xv.eigenvalues[0], t);
                TensorElement dx = comul(xv.vector);
                Mat dmat = tensor_coeff_matrix(dx, n);
                Mat lhs = dmat.scaled(lam_it);
                Mat rhs_plus = [&] {
                    Mat in_e = sp_frame.basis_to_eigen * dmat * tau_frame.basis_to_eigen.transpose();
                    for (std::size_t k = 0; k < n; ++k)
                        for (std::size_t l = 0; l < n; ++l) {
                            if (in_e.at(k, l).is_zero()) continue;
                            in_e.at(k, l) *= scalar_pow_it(sp_frame.eigenvalues[k], t);
                            in_e.at(k, l) *= scalar_pow_it(tau_frame.eigenvalues[l], t);
                        }
                    return sp_frame.eigen_to_basis * in_e * tau_frame.eigen_to_basis.transpose();
                }();
                Mat rhs_minus = [&] {
                    Mat in_e = sp_frame.basis_to_eigen * dmat * tau_frame.basis_to_eigen.transpose();
                    for (std::size_t k = 0; k < n; ++k)
                        for (std::size_t l = 0; l < n; ++l) {
                            if (in_e.at(k, l).is_zero()) continue;
                            in_e.at(k, l) *= scalar_pow_it(sp_frame.eigenvalues[k], t);
                            in_e.at(k, l) *= scalar_pow_it(tau_frame.eigenvalues[l], -t);
                        }
                    return sp_frame.eigen_to_basis * in_e * tau_frame.eigen_to_basis.transpose();
                }();
                worst_plus = std::max(worst_plus, mat_diff_abs(lhs, rhs_plus));
                worst_minus = std::max(worst_minus, mat_diff_abs(lhs, rhs_minus));
            }
            // Delta(tau_t(x)) = (tau_t (x) tau_t) Delta(x) on S^{-2} eigenvectors
            for (const JointEigenvector& xv : s2dec.vectors) {
                Scalar mu_it = scalar_pow_it(xv.eigenvalues[0], t);
                Mat dmat = tensor_coeff_matrix(comul(xv.vector), n);
                Mat lhs = dmat.scaled(mu_it);
                Mat rhs = tensor_eigen_scale(dmat, tau_frame, tau_frame, t);
                worst_tau = std::max(worst_tau, mat_diff_abs(lhs, rhs));
            }
            ct.require_float(worst_tau, "t=" + std::to_string(t));
            audit.tau_plus_holds.push_back(worst_plus <= tol);
            audit.tau_minus_holds.push_back(worst_minus <= tol);
            if (worst_plus > tol && worst_minus > tol)
                c.fail("neither sign variant holds at t=" + std::to_string(t));
        }
        c.note(audit.description());
        c.mark_info();
    }
    return audit;
}

}  // namespace aqg
