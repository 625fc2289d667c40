#pragma once

#include <map>
#include <memory>

#include "aqg/modular.hpp"

namespace aqg {

/// Element of the dual algebra B, represented by its Fourier preimage:
/// b = psi(S(.) a). B is never materialized with its own structure
/// constants; every dual operation is evaluation plus preimage solve.
class DualElement {
public:
    DualElement() = default;
    explicit DualElement(Element preimage) : pre_(std::move(preimage)) {}

    const Element& preimage() const { return pre_; }
    bool is_zero() const { return pre_.is_zero(); }

    DualElement operator-() const { return DualElement(-pre_); }
    friend DualElement operator+(const DualElement& a, const DualElement& b) {
        return DualElement(a.pre_ + b.pre_);
    }
    friend DualElement operator-(const DualElement& a, const DualElement& b) {
        return DualElement(a.pre_ - b.pre_);
    }
    friend DualElement operator*(const Scalar& s, const DualElement& b) {
        return DualElement(s * b.pre_);
    }
    friend bool operator==(const DualElement& a, const DualElement& b) {
        return a.pre_ == b.pre_;
    }

private:
    Element pre_;
};

enum class DeltaHatSide { Left, Right, InvLeft, InvRight };

struct DualModularData {
    int degree = 0;
    Mat sigma_hat, sigma_hat_prime, s_hat_sq;         // on preimage coordinates
    Mat delta_left, delta_right, delta_inv_left, delta_inv_right;
};

/// Working context for the dual side of one presentation: a base
/// truncation of degree N whose Fourier image is the dual basis, and
/// per-degree factorizations of the pairing matrix psi(S(e_i) e_j), shared
/// by all preimage solves.
class DualContext {
public:
    DualContext(const ModularMaps& mm, int degree, int product_ambient = -1);

    const Presentation* presentation() const { return mm_->presentation(); }
    const ModularMaps& modular_maps() const { return *mm_; }
    int degree() const { return degree_; }
    int product_ambient() const { return product_ambient_; }

    DualElement fourier(const Element& a) const { return DualElement(a); }

    /// <x, b> = psi(S(x) a_b).
    Scalar pair(const Element& x, const DualElement& b) const;

    Scalar dual_left_integral(const DualElement& b) const;   // counit of the preimage
    Scalar dual_right_integral(const DualElement& b) const;  // via the dual antipode

    /// Unique preimage on the solve truncation reproducing the functional;
    /// extra rows of verification catch preimages that escape it.
    DualElement from_functional(const std::function<Scalar(const Element&)>& f, int solve_degree,
                                int verify_margin) const;

    DualElement dual_mul(const DualElement& b1, const DualElement& b2) const;
    DualElement dual_star(const DualElement& b) const;        // pre = S(a*) delta^{-1}
    DualElement dual_unit() const;                            // finite type only
    DualElement dual_antipode(const DualElement& b) const;    // x -> <S(x), b>
    DualElement s_hat_squared(const DualElement& b) const;    // x -> <S^2(x), b>
    DualElement delta_hat_act(const DualElement& b, DeltaHatSide side) const;

    Scalar delta_hat_char(const Element& x) const;       // <x, delta-hat>
    Scalar delta_hat_inv_char(const Element& x) const;

    /// First/second-leg slices of the dual coproduct, in closed form:
    ///   slice_left(w, b):  x -> <w x, b>, preimage S(w) a_b
    ///   slice_right(b, w): x -> <x w, b>, preimage a_b sigma'(S(w))
    DualElement slice_left(const Element& w, const DualElement& b) const;
    DualElement slice_right(const DualElement& b, const Element& w) const;

    /// gamma(b) Lambda(x) = sum <x_(2), b> Lambda(x_(1)), for preimage-backed
    /// functionals and for arbitrary evaluation functionals.
    Element gamma_act(const DualElement& b, const Element& x) const;
    Element gamma_act_fn(const std::function<Scalar(const Element&)>& f, const Element& x) const;

    /// sigma-hat / sigma-hat' / S-hat^2 and the delta-hat multiplier
    /// actions, realized on the preimage coordinates of the base
    /// truncation. Derived lazily from the defining relations.
    const DualModularData& modular() const;

    DualElement apply_dual(const Mat& preimage_matrix, const DualElement& b) const;
    std::vector<LinearOp> eigen_ops() const;  // preimage-level joint family

private:
    const Factorization& pairing_factorization(int degree) const;

    const ModularMaps* mm_;
    int degree_;
    int product_ambient_;
    mutable std::map<int, std::unique_ptr<Factorization>> fact_;
    mutable std::unique_ptr<DualModularData> dual_modular_;
};

/// Joint eigen-decomposition of the dual joint family on the Fourier image
/// of the context truncation (preimage coordinates).
EigenDecomposition eigen_dual(const DualContext& ctx);

}  // namespace aqg
