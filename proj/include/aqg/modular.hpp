#pragma once

#include <functional>
#include <string>
#include <vector>

#include "aqg/linalg.hpp"
#include "aqg/presentation.hpp"
#include "aqg/rootfind.hpp"

namespace aqg {

/// A linear map given at the algebra level, used by the orbit and eigen
/// machinery. The action must be defined on every element handed to it.
struct LinearOp {
    std::string tag;
    std::function<Element(const Element&)> apply;
};

/// The modular automorphisms and the modular element of a presentation,
/// realized exactly on a degree truncation.
///
/// sigma' is pinned by psi(x y) = psi(y sigma'(x)), sigma by the same
/// relation for phi = psi o S, and delta by psi(S(x)) = psi(x delta^{-1});
/// each is recovered by a linear solve against the nondegenerate product
/// form of the truncation, so the presentation never declares them.
class ModularMaps {
public:
    ModularMaps() = default;

    const Presentation* presentation() const { return pres_; }
    int truncation_degree() const { return degree_; }

    Element sigma(const Element& x) const { return apply_mat(sigma_, x); }
    Element sigma_inv(const Element& x) const { return apply_mat(sigma_inv_, x); }
    Element sigma_prime(const Element& x) const { return apply_mat(sigma_prime_, x); }
    Element sigma_prime_inv(const Element& x) const { return apply_mat(sigma_prime_inv_, x); }
    Element s_squared(const Element& x) const { return antipode(antipode(x)); }
    Element s_minus2(const Element& x) const { return antipode_inv(antipode_inv(x)); }
    Element kappa(const Element& x) const { return s_minus2(sigma(x)); }
    Element kappa_inv(const Element& x) const { return sigma_inv(s_squared(x)); }
    Element rho(const Element& x) const { return s_squared(sigma_prime(x)); }
    Element rho_inv(const Element& x) const { return sigma_prime_inv(s_minus2(x)); }

    const Element& delta() const { return delta_; }
    const Element& delta_inv() const { return delta_inv_; }

    LinearOp op_sigma() const;
    LinearOp op_sigma_prime() const;
    LinearOp op_s_squared() const;
    LinearOp op_delta_left() const;     // x -> delta x
    LinearOp op_delta_right() const;    // x -> x delta
    LinearOp op_nabla_hat_action() const;  // x -> S^{-2}(x) delta (tau generator)

    friend ModularMaps derive_modular_maps(const Presentation& p, int max_degree);

private:
    Element apply_mat(const Mat& m, const Element& x) const;

    const Presentation* pres_ = nullptr;
    int degree_ = 0;
    Mat sigma_, sigma_inv_, sigma_prime_, sigma_prime_inv_;
    Element delta_, delta_inv_;
};

/// Solves the defining relations on the degree-<=max_degree truncation.
/// Throws std::domain_error when the product form is singular there
/// ("integral not faithful / truncation too small") and when the solved
/// delta fails group-likeness.
ModularMaps derive_modular_maps(const Presentation& p, int max_degree);

/// Smallest subspace containing x, stable under the listed maps. The maps
/// must restrict to bijections of the result; termination within the
/// ambient truncation is enforced and escape is reported with the witness.
std::vector<Element> orbit_subspace(const Element& x, const std::vector<LinearOp>& maps,
                                    int ambient_degree);

struct JointEigenvector {
    Element vector;
    std::vector<PositiveEigenvalue> eigenvalues;  // aligned with operator tags
};

struct EigenDecomposition {
    std::vector<std::string> operator_tags;
    std::vector<Element> subspace_basis;
    std::vector<JointEigenvector> vectors;
    bool used_float_fallback = false;
};

/// Simultaneous eigen-decomposition of commuting maps on a stable finite
/// span. Eigenvalues are searched exactly over the rationals (minimal
/// polynomials + Sturm isolation); irrational eigenvalues fall back to the
/// float tier and are flagged. A non-diagonalizable restriction throws —
/// with positive self-adjoint inputs it cannot happen unless the operator
/// data is corrupted.
EigenDecomposition joint_eigenbasis(const std::vector<Element>& subspace,
                                    const std::vector<LinearOp>& ops, double tol = 1e-9);

/// Expands x in the eigenbasis of a single map and scales each component
/// by lambda^{it}; complex time runs through the analytic extension
/// (z = -i recovers the generator exactly on exact eigendata).
Element one_parameter_apply(const LinearOp& generator, std::complex<double> it_time,
                            const Element& x, int ambient_degree, double tol = 1e-9);

/// psi(x* S^2(x)), psi(x* sigma(x)), psi(x* sigma'(x)).
std::array<Scalar, 3> positivity_probe(const ModularMaps& mm, const Element& x);

}  // namespace aqg
