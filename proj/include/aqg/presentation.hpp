#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "aqg/scalar.hpp"

namespace aqg {

/// Opaque handle into a presentation's graded basis.
using BasisIndex = std::uint32_t;

class Presentation;

/// Finitely supported coefficient vector over a presentation's basis.
/// Zero coefficients are never stored; the coefficient map is ordered so
/// every traversal is deterministic.
class Element {
public:
    Element() : pres_(nullptr) {}
    explicit Element(const Presentation* p) : pres_(p) {}

    const Presentation* presentation() const { return pres_; }
    const std::map<BasisIndex, Scalar>& coeffs() const { return c_; }
    bool is_zero() const { return c_.empty(); }
    int degree() const;                       // max degree over support; 0 if zero

    Scalar coeff(BasisIndex i) const;
    void set(BasisIndex i, const Scalar& v);  // drops exact zeros
    void add(BasisIndex i, const Scalar& v);

    Element operator-() const;
    Element& operator+=(const Element& o);
    Element& operator-=(const Element& o);
    friend Element operator+(Element a, const Element& b) { return a += b; }
    friend Element operator-(Element a, const Element& b) { return a -= b; }
    friend Element operator*(const Scalar& s, const Element& e);

    friend bool operator==(const Element& a, const Element& b) {
        return a.pres_ == b.pres_ && a.c_ == b.c_;
    }

    bool all_exact() const;
    std::string str() const;                  // human-readable sparse form

private:
    const Presentation* pres_;
    std::map<BasisIndex, Scalar> c_;
};

/// Finitely supported vector over pairs of basis indices; houses coproducts
/// and other A (x) A data.
class TensorElement {
public:
    TensorElement() : pres_(nullptr) {}
    explicit TensorElement(const Presentation* p) : pres_(p) {}

    const Presentation* presentation() const { return pres_; }
    const std::map<std::pair<BasisIndex, BasisIndex>, Scalar>& coeffs() const { return c_; }
    bool is_zero() const { return c_.empty(); }

    void add(BasisIndex i, BasisIndex j, const Scalar& v);

    TensorElement& operator+=(const TensorElement& o);
    TensorElement& operator-=(const TensorElement& o);
    friend TensorElement operator+(TensorElement a, const TensorElement& b) { return a += b; }
    friend TensorElement operator-(TensorElement a, const TensorElement& b) { return a -= b; }
    friend TensorElement operator*(const Scalar& s, const TensorElement& e);

    friend bool operator==(const TensorElement& a, const TensorElement& b) {
        return a.pres_ == b.pres_ && a.c_ == b.c_;
    }

    bool all_exact() const;
    std::string str() const;

private:
    const Presentation* pres_;
    std::map<std::pair<BasisIndex, BasisIndex>, Scalar> c_;
};

/// A *-algebraic quantum group of compact/finite type, presented by a
/// graded basis with computable structure maps and a positive right
/// integral. Implementations are immutable once constructed; all maps are
/// total on the basis and extend (conjugate-)linearly.
class Presentation {
public:
    virtual ~Presentation() = default;

    virtual std::string name() const = 0;

    /// Basis enumeration. Indices of degree <= N are exactly
    /// 0 .. dim_up_to(N)-1, in degree-lexicographic order.
    virtual std::size_t dim_up_to(int degree) const = 0;
    virtual int degree(BasisIndex i) const = 0;
    virtual std::string index_name(BasisIndex i) const = 0;
    /// Presentations of genuinely finite dimension report it; graded
    /// infinite-dimensional ones return 0.
    virtual std::size_t total_dim() const { return 0; }

    virtual Element unit() const = 0;
    virtual Element mult(BasisIndex x, BasisIndex y) const = 0;
    virtual TensorElement comult(BasisIndex x) const = 0;
    virtual Element star(BasisIndex x) const = 0;
    virtual Element antipode(BasisIndex x) const = 0;
    virtual Element antipode_inv(BasisIndex x) const = 0;
    virtual Scalar counit(BasisIndex x) const = 0;
    virtual Scalar right_integral(BasisIndex x) const = 0;

    /// Degree bound for products of degree-bounded factors.
    virtual int degree_growth_bound(int n1, int n2) const = 0;

    Element basis_element(BasisIndex i) const;
    std::vector<BasisIndex> basis_up_to(int degree) const;
};

// ---- linear / conjugate-linear extensions of the structure maps ----

Element mul(const Element& x, const Element& y);
Element mul(const Element& x, const Element& y, const Element& z);
TensorElement comul(const Element& x);
Element star(const Element& x);
Element antipode(const Element& x);
Element antipode_inv(const Element& x);
Scalar counit(const Element& x);
Scalar right_integral(const Element& x);
Scalar left_integral(const Element& x);        // psi(S(x))

// tensor-level helpers
TensorElement tensor(const Element& x, const Element& y);
TensorElement tensor_mul(const TensorElement& a, const TensorElement& b);
TensorElement tensor_map(const TensorElement& t,
                         const std::function<Element(const Element&)>& left,
                         const std::function<Element(const Element&)>& right);
Element tensor_contract_right(const TensorElement& t,
                              const std::function<Scalar(const Element&)>& f);
Element tensor_contract_left(const TensorElement& t,
                             const std::function<Scalar(const Element&)>& f);
TensorElement tensor_flip(const TensorElement& t);

/// GNS inner product of the right integral: <x, y> = psi(y* x).
Scalar gns_inner(const Element& x, const Element& y);

}  // namespace aqg
