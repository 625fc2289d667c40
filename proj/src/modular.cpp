#include "aqg/modular.hpp"

#include <algorithm>
#include <array>
#include <stdexcept>

namespace aqg {

namespace {

Vec element_coords(const Element& x, std::size_t dim, const char* who) {
    Vec v(dim);
    for (const auto& [i, s] : x.coeffs()) {
        if (i >= dim)
            throw std::domain_error(std::string(who) + ": element escapes the truncation (" +
                                    x.presentation()->index_name(i) + ")");
        v[i] = s;
    }
    return v;
}

Element coords_element(const Presentation* p, const Vec& v) {
    Element e(p);
    for (std::size_t i = 0; i < v.size(); ++i) e.set(static_cast<BasisIndex>(i), v[i]);
    return e;
}

}  // namespace

Element ModularMaps::apply_mat(const Mat& m, const Element& x) const {
    if (x.is_zero()) return x;
    if (x.presentation() != pres_)
        throw std::invalid_argument("ModularMaps: element from another presentation");
    Vec v = element_coords(x, m.cols(), "ModularMaps");
    return coords_element(pres_, mat_apply(m, v));
}

LinearOp ModularMaps::op_sigma() const {
    return {"sigma", [this](const Element& x) { return sigma(x); }};
}

LinearOp ModularMaps::op_sigma_prime() const {
    return {"sigma'", [this](const Element& x) { return sigma_prime(x); }};
}

LinearOp ModularMaps::op_s_squared() const {
    return {"S^2", [](const Element& x) { return antipode(antipode(x)); }};
}

LinearOp ModularMaps::op_delta_left() const {
    Element d = delta_;
    return {"delta*.", [d](const Element& x) { return mul(d, x); }};
}

LinearOp ModularMaps::op_delta_right() const {
    Element d = delta_;
    return {".*delta", [d](const Element& x) { return mul(x, d); }};
}

LinearOp ModularMaps::op_nabla_hat_action() const {
    Element d = delta_;
    return {"S^-2(.)delta", [d](const Element& x) { return mul(antipode_inv(antipode_inv(x)), d); }};
}

ModularMaps derive_modular_maps(const Presentation& p, int max_degree) {
    ModularMaps mm;
    mm.pres_ = &p;
    mm.degree_ = max_degree;
    const std::size_t n = p.dim_up_to(max_degree);

    // product forms P[k][j] = psi(e_k e_j) and Pphi[k][j] = phi(e_k e_j)
    Mat prod_psi(n, n), prod_phi(n, n);
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t j = 0; j < n; ++j) {
            Element e = p.mult(static_cast<BasisIndex>(k), static_cast<BasisIndex>(j));
            prod_psi.at(k, j) = right_integral(e);
            prod_phi.at(k, j) = left_integral(e);
        }

    // sigma' from psi(e_i e_k) = sum_j M[j][i] psi(e_k e_j)
    Factorization fpsi = [&]() -> Factorization {
        try {
            return Factorization(prod_psi);
        } catch (const std::domain_error&) {
            throw std::domain_error("derive_modular_maps: integral not faithful on truncation "
                                    "(or truncation too small)");
        }
    }();
    Mat u(n, n);
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t i = 0; i < n; ++i) u.at(k, i) = prod_psi.at(i, k);
    mm.sigma_prime_ = fpsi.solve(u);

    Factorization fphi = [&]() -> Factorization {
        try {
            return Factorization(prod_phi);
        } catch (const std::domain_error&) {
            throw std::domain_error("derive_modular_maps: left integral degenerate on truncation");
        }
    }();
    Mat uphi(n, n);
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t i = 0; i < n; ++i) uphi.at(k, i) = prod_phi.at(i, k);
    mm.sigma_ = fphi.solve(uphi);

    mm.sigma_inv_ = inverse(mm.sigma_);
    mm.sigma_prime_inv_ = inverse(mm.sigma_prime_);

    // delta^{-1} from psi(S(e_i)) = sum_j d_j psi(e_i e_j)
    Vec s(n);
    for (std::size_t i = 0; i < n; ++i)
        s[i] = left_integral(p.basis_element(static_cast<BasisIndex>(i)));
    Vec dinv = fpsi.solve(s);
    mm.delta_inv_ = coords_element(&p, dinv);

    // delta: algebra inverse of delta_inv, solved in the ambient span of
    // the products e_j * delta_inv
    {
        int prod_deg = p.degree_growth_bound(max_degree, mm.delta_inv_.degree());
        std::size_t bign = p.dim_up_to(prod_deg);
        std::vector<Vec> cols;
        for (std::size_t j = 0; j < n; ++j) {
            Element ej_dinv = mul(p.basis_element(static_cast<BasisIndex>(j)), mm.delta_inv_);
            cols.push_back(element_coords(ej_dinv, bign, "derive delta"));
        }
        Vec unit = element_coords(p.unit(), bign, "derive delta");
        auto coords = coordinates_in_span(cols, unit);
        if (!coords)
            throw std::domain_error("derive_modular_maps: delta not invertible in truncation; "
                                    "escalate degree");
        Element delta(&p);
        for (std::size_t j = 0; j < n; ++j)
            delta += (*coords)[j] * p.basis_element(static_cast<BasisIndex>(j));
        mm.delta_ = delta;
    }

    // group-likeness and fixed-point certificates for delta
    {
        const Element& d = mm.delta_;
        const Element& di = mm.delta_inv_;
        if (!(mul(d, di) == p.unit()) || !(mul(di, d) == p.unit()))
            throw std::domain_error("derive_modular_maps: delta inverse check failed");
        TensorElement grouplike = comul(d) - tensor(d, d);
        if (!grouplike.is_zero())
            throw std::domain_error("derive_modular_maps: delta is not group-like");
        if (!(antipode(d) == di))
            throw std::domain_error("derive_modular_maps: S(delta) != delta^{-1}");
        if (!(mm.sigma_prime(d) == d) || !(mm.sigma(d) == d))
            throw std::domain_error("derive_modular_maps: delta not fixed by modular maps");
    }
    return mm;
}

std::vector<Element> orbit_subspace(const Element& x, const std::vector<LinearOp>& maps,
                                    int ambient_degree) {
    const Presentation* p = x.presentation();
    const std::size_t dim = p->dim_up_to(ambient_degree);

    std::vector<Element> basis;
    std::vector<Vec> reduced;
    std::vector<std::size_t> pivcol;

    auto try_insert = [&](const Element& e, const std::string& provenance) {
        if (e.is_zero()) return false;
        if (e.degree() > ambient_degree)
            throw std::domain_error("orbit_subspace: escape from ambient truncation via " +
                                    provenance + " at " + e.str());
        Vec v = element_coords(e, dim, "orbit_subspace");
        for (std::size_t r = 0; r < reduced.size(); ++r) {
            const Scalar& lead = v[pivcol[r]];
            if (lead.is_zero()) continue;
            Scalar f = lead / reduced[r][pivcol[r]];
            for (std::size_t j = 0; j < dim; ++j)
                if (!reduced[r][j].is_zero()) v[j] -= f * reduced[r][j];
        }
        std::size_t piv = 0;
        while (piv < dim && v[piv].is_zero()) ++piv;
        if (piv == dim) return false;
        basis.push_back(e);
        reduced.push_back(std::move(v));
        pivcol.push_back(piv);
        return true;
    };

    try_insert(x, "seed");
    std::size_t frontier = 0;
    while (frontier < basis.size()) {
        Element cur = basis[frontier++];
        for (const LinearOp& op : maps) try_insert(op.apply(cur), op.tag);
        if (basis.size() > dim)
            throw std::logic_error("orbit_subspace: dimension exceeded ambient truncation");
    }
    return basis;
}

namespace {

struct Block {
    std::vector<Vec> coords;                 // coordinates over the subspace basis
    std::vector<Scalar> eigenvalues;         // one per processed operator
};

}  // namespace

EigenDecomposition joint_eigenbasis(const std::vector<Element>& subspace,
                                    const std::vector<LinearOp>& ops, double tol) {
    EigenDecomposition out;
    out.subspace_basis = subspace;
    for (const LinearOp& op : ops) out.operator_tags.push_back(op.tag);
    if (subspace.empty()) return out;

    const Presentation* p = subspace.front().presentation();
    const std::size_t k = subspace.size();
    int ambient = 0;
    for (const Element& e : subspace) ambient = std::max(ambient, e.degree());
    const std::size_t dim = p->dim_up_to(ambient);

    std::vector<Vec> basis_coords;
    for (const Element& e : subspace)
        basis_coords.push_back([&] {
            Vec v(dim);
            for (const auto& [i, s] : e.coeffs()) v[i] = s;
            return v;
        }());

    auto to_element = [&](const Vec& coords_in_basis) {
        Element e(p);
        for (std::size_t j = 0; j < k; ++j) {
            if (coords_in_basis[j].is_zero()) continue;
            e += coords_in_basis[j] * subspace[j];
        }
        return e;
    };

    // restricted matrix of each operator on the subspace
    std::vector<Mat> restricted;
    for (const LinearOp& op : ops) {
        Mat m(k, k);
        for (std::size_t j = 0; j < k; ++j) {
            Element img = op.apply(subspace[j]);
            Vec v(dim);
            for (const auto& [i, s] : img.coeffs()) {
                if (i >= dim)
                    throw std::domain_error("joint_eigenbasis: " + op.tag +
                                            " leaves the ambient truncation");
                v[i] = s;
            }
            auto c = coordinates_in_span(basis_coords, v);
            if (!c)
                throw std::domain_error("joint_eigenbasis: subspace not stable under " + op.tag);
            for (std::size_t i = 0; i < k; ++i) m.at(i, j) = (*c)[i];
        }
        restricted.push_back(std::move(m));
    }

    std::vector<Block> blocks;
    {
        Block whole;
        for (std::size_t j = 0; j < k; ++j) {
            Vec v(k);
            v[j] = Scalar(1);
            whole.coords.push_back(std::move(v));
        }
        blocks.push_back(std::move(whole));
    }

    for (std::size_t oi = 0; oi < ops.size(); ++oi) {
        const Mat& big = restricted[oi];
        std::vector<Block> next;
        for (Block& blk : blocks) {
            const std::size_t bs = blk.coords.size();
            // operator restricted to the block
            Mat small(bs, bs);
            for (std::size_t j = 0; j < bs; ++j) {
                Vec img = mat_apply(big, blk.coords[j]);
                auto c = coordinates_in_span(blk.coords, img);
                if (!c)
                    throw std::domain_error(
                        "joint_eigenbasis: block not stable under " + ops[oi].tag +
                        " (operators do not commute)");
                for (std::size_t i = 0; i < bs; ++i) small.at(i, j) = (*c)[i];
            }
            // spectrum: union of minimal-polynomial roots over block vectors
            std::vector<PolyRoot> spectrum;
            for (std::size_t j = 0; j < bs; ++j) {
                Vec unit(bs);
                unit[j] = Scalar(1);
                Poly mp = min_poly_of_vector(small, unit);
                for (const PolyRoot& r : real_roots(mp)) {
                    bool seen = false;
                    for (const PolyRoot& s : spectrum) {
                        if (r.exact && s.exact && r.value == s.value) seen = true;
                        if (!r.exact && !s.exact && std::abs(r.approx - s.approx) <= tol)
                            seen = true;
                    }
                    if (!seen) spectrum.push_back(r);
                }
            }
            std::size_t total = 0;
            for (const PolyRoot& r : spectrum) {
                Block sub;
                sub.eigenvalues = blk.eigenvalues;
                if (r.exact) {
                    Mat shifted = small - Mat::identity(bs).scaled(Scalar(r.value));
                    std::vector<Vec> null = nullspace(shifted);
                    for (const Vec& nv : null) {
                        // lift block coords to subspace coords
                        Vec lifted(k);
                        for (std::size_t j = 0; j < bs; ++j)
                            for (std::size_t t = 0; t < k; ++t)
                                lifted[t] += nv[j] * blk.coords[j][t];
                        sub.coords.push_back(std::move(lifted));
                    }
                    sub.eigenvalues.push_back(Scalar(r.value));
                } else {
                    out.used_float_fallback = true;
                    Scalar lam = Scalar::floating({r.approx, 0.0});
                    Mat shifted(bs, bs);
                    for (std::size_t i = 0; i < bs; ++i)
                        for (std::size_t j = 0; j < bs; ++j) {
                            Scalar v = Scalar::floating(small.at(i, j).to_complex());
                            if (i == j) v -= lam;
                            shifted.at(i, j) = v;
                        }
                    for (Vec& nv : nullspace_float(shifted, tol)) {
                        Vec lifted(k);
                        for (std::size_t j = 0; j < bs; ++j)
                            for (std::size_t t = 0; t < k; ++t)
                                lifted[t] += nv[j] * blk.coords[j][t];
                        sub.coords.push_back(std::move(lifted));
                    }
                    sub.eigenvalues.push_back(lam);
                }
                if (sub.coords.empty())
                    throw std::domain_error("joint_eigenbasis: empty eigenspace for " +
                                            ops[oi].tag);
                total += sub.coords.size();
                next.push_back(std::move(sub));
            }
            if (total != bs)
                throw std::domain_error("joint_eigenbasis: restriction of " + ops[oi].tag +
                                        " is not diagonalizable");
        }
        blocks = std::move(next);
    }

    for (const Block& blk : blocks) {
        for (const Vec& coords : blk.coords) {
            JointEigenvector jev;
            jev.vector = to_element(coords);
            for (const Scalar& lam : blk.eigenvalues) {
                auto pe = PositiveEigenvalue::certify(lam, tol);
                if (!pe)
                    throw std::domain_error("joint_eigenbasis: spectrum violation, eigenvalue " +
                                            lam.str() + " not strictly positive");
                jev.eigenvalues.push_back(*pe);
            }
            out.vectors.push_back(std::move(jev));
        }
    }

    // exact eigen-equation validation
    for (const JointEigenvector& jev : out.vectors) {
        for (std::size_t oi = 0; oi < ops.size(); ++oi) {
            Element resid = ops[oi].apply(jev.vector) - jev.eigenvalues[oi].value() * jev.vector;
            if (resid.all_exact() && !resid.is_zero())
                throw std::logic_error("joint_eigenbasis: exact eigen-equation residual for " +
                                       ops[oi].tag);
        }
    }
    return out;
}

Element one_parameter_apply(const LinearOp& generator, std::complex<double> it_time,
                            const Element& x, int ambient_degree, double tol) {
    if (x.is_zero()) return x;
    const Presentation* p = x.presentation();
    const std::size_t dim = p->dim_up_to(ambient_degree);

    if (x.all_exact()) {
        std::vector<Element> orbit = orbit_subspace(x, {generator}, ambient_degree);
        EigenDecomposition dec = joint_eigenbasis(orbit, {generator}, tol);
        std::vector<Vec> eigvecs;
        for (const JointEigenvector& jev : dec.vectors) {
            Vec v(dim);
            for (const auto& [i, s] : jev.vector.coeffs()) v[i] = s;
            eigvecs.push_back(std::move(v));
        }
        Vec xc(dim);
        for (const auto& [i, s] : x.coeffs()) xc[i] = s;
        auto coords = coordinates_in_span(eigvecs, xc);
        if (!coords) throw std::logic_error("one_parameter_apply: eigenbasis does not span orbit");
        Element out(p);
        for (std::size_t j = 0; j < dec.vectors.size(); ++j) {
            if ((*coords)[j].is_zero()) continue;
            Scalar factor = scalar_pow_z(dec.vectors[j].eigenvalues[0], it_time);
            out += ((*coords)[j] * factor) * dec.vectors[j].vector;
        }
        return out;
    }

    // float-tier input: expand against the eigenbasis of the full
    // truncation through the exact factorization (float right-hand side)
    std::vector<Element> basis;
    for (BasisIndex i = 0; i < dim; ++i) basis.push_back(p->basis_element(i));
    EigenDecomposition dec = joint_eigenbasis(basis, {generator}, tol);
    if (dec.vectors.size() != dim)
        throw std::domain_error("one_parameter_apply: eigenbasis does not span the truncation");
    Mat emat(dim, dim);
    for (std::size_t k = 0; k < dim; ++k)
        for (const auto& [i, s] : dec.vectors[k].vector.coeffs()) emat.at(i, k) = s;
    Factorization ef(emat);
    Vec xc(dim);
    for (const auto& [i, s] : x.coeffs()) {
        if (i >= dim) throw std::domain_error("one_parameter_apply: element escapes truncation");
        xc[i] = s;
    }
    Vec coords = ef.solve(xc);
    Element out(p);
    for (std::size_t k = 0; k < dim; ++k) {
        if (coords[k].is_zero()) continue;
        Scalar factor = scalar_pow_z(dec.vectors[k].eigenvalues[0], it_time);
        out += (coords[k] * factor) * dec.vectors[k].vector;
    }
    return out;
}

std::array<Scalar, 3> positivity_probe(const ModularMaps& mm, const Element& x) {
    Element xs = star(x);
    return {right_integral(mul(xs, mm.s_squared(x))), right_integral(mul(xs, mm.sigma(x))),
            right_integral(mul(xs, mm.sigma_prime(x)))};
}

}  // namespace aqg
