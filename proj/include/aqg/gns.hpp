#pragma once

#include "aqg/duality.hpp"
#include "aqg/modular.hpp"
#include "aqg/report.hpp"

namespace aqg {

/// Degree truncation of the GNS space of the right integral, with its
/// exact Gram matrix G[i][j] = <Lambda(e_i), Lambda(e_j)> = psi(e_j* e_i).
class GnsSpace {
public:
    GnsSpace(const Presentation* p, int degree);

    const Presentation* presentation() const { return pres_; }
    int degree() const { return degree_; }
    std::size_t dim() const { return gram_.rows(); }
    const Mat& gram() const { return gram_; }
    bool positive_definite() const { return hermitian_positive_definite(gram_); }

    /// <Lambda(x), Lambda(y)> = psi(y* x); exact for exact inputs of any
    /// degree (the integral is total).
    static Scalar inner(const Element& x, const Element& y) { return gns_inner(x, y); }

private:
    const Presentation* pres_;
    int degree_;
    Mat gram_;
};

/// Operator on the truncated GNS space stored by its algebra-level action;
/// Lambda intertwines it with the map below.
struct SpanOperator {
    std::string name;
    bool conjugate_linear = false;
    std::function<Element(const Element&)> action;

    Element operator()(const Element& x) const { return action(x); }
};

/// The modular involutions and positive operators of one truncation:
///   T Lambda(a) = Lambda(a*)              T* Lambda(a) = Lambda(sigma'(a*))
///   T-hat Lambda(a) = Lambda(S(a*) d^-1)  T-hat* Lambda(a) = Lambda(S(a)*)
///   nabla = T*T (action sigma'),  nabla-hat = T-hat* T-hat (action S^-2(.) d)
/// with the polar conjugations J, J-hat defined eigenvector-wise through
/// the half powers of the eigenvalues.
struct GnsOperators {
    const ModularMaps* mm = nullptr;
    int degree = 0;
    SpanOperator T, T_star, T_hat, T_hat_star;
    SpanOperator nabla, nabla_inv, nabla_hat, nabla_hat_inv;
    SpanOperator J, J_hat;
    EigenDecomposition nabla_eigen, nabla_hat_eigen;
    bool polar_exact = true;   // every eigenvalue half power stayed exact
};

GnsOperators build_gns_operators(const ModularMaps& mm, int degree);

/// Full check battery for the truncation: adjoint relations, the
/// realization formulas on Lambda(A) and on the Fourier image, the
/// factorizations nabla = T*T / nabla-hat = T-hat*T-hat, positivity,
/// anti-unitarity and involutivity of the polar parts, the conjugation
/// implementations, and the one-parameter stability statements.
void run_gns_checks(GnsOperators& ops, DualContext& dual, Recorder& rec,
                    const std::vector<double>& t_samples);

}  // namespace aqg
