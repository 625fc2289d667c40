#pragma once

#include "aqg/gns.hpp"

namespace aqg {

/// Right regular representation V and its inverse on the truncated tensor
/// square, applied symbolically through the coproduct:
///   V (L(x) (x) L(y))  = sum L(x_(1)) (x) L(x_(2) y)
///   V* (L(u) (x) Lh(b)) = sum L(u_(1)) (x) L(S(u_(2)) a_b)
TensorElement V_apply(const TensorElement& t);
TensorElement V_star_apply(const TensorElement& t);

/// Gram form of the tensor square: <x1 (x) x2, y1 (x) y2> =
/// psi(y1* x1) psi(y2* x2), extended sesquilinearly. Entries of the
/// one-leg Gram form are memoized per instance.
class TensorGram {
public:
    explicit TensorGram(const Presentation* p) : p_(p) {}
    Scalar inner(const TensorElement& x, const TensorElement& y);

private:
    const Scalar& gram(BasisIndex i, BasisIndex j);
    const Presentation* p_;
    std::map<std::pair<BasisIndex, BasisIndex>, Scalar> cache_;
};

/// Legwise application of (conjugate-)linear span operators.
TensorElement tensor_op(const TensorElement& t, const SpanOperator& left,
                        const SpanOperator& right);

struct ConventionAudit {
    std::vector<double> t_samples;
    std::vector<bool> tau_plus_holds;    // Delta sigma'_t = (sigma'_t (x) tau_t) Delta
    std::vector<bool> tau_minus_holds;   // Delta sigma'_t = (sigma'_t (x) tau_{-t}) Delta
    bool exactly_one_per_t() const;
    bool same_variant_at_all_t() const;
    std::string description() const;
};

struct MunitaryOptions {
    int grid_degree = 0;        // tensor grid truncation
    int triple_degree = 0;      // grid for the three-leg identities
    std::vector<double> t_samples;
    bool pentagon = false;      // optional extra, off by default
};

/// The unitary antipode R solved at the algebra level: R(pi(a)) =
/// J-hat pi(a)* J-hat = pi(r(a)). Throws when no algebra-level r exists in
/// the truncation.
std::function<Element(const Element&)> solve_unitary_antipode(GnsOperators& ops,
                                                              DualContext& dual);

ConventionAudit run_munitary_checks(GnsOperators& ops, DualContext& dual, Recorder& rec,
                                    const MunitaryOptions& opt);

}  // namespace aqg
