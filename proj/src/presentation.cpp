#include "aqg/presentation.hpp"

#include <sstream>
#include <stdexcept>

namespace aqg {

namespace {

void require_same(const Presentation* a, const Presentation* b, const char* who) {
    if (a != b)
        throw std::invalid_argument(std::string(who) + ": operands from different presentations");
}

}  // namespace

int Element::degree() const {
    int d = 0;
    for (const auto& [i, s] : c_) d = std::max(d, pres_->degree(i));
    return d;
}

Scalar Element::coeff(BasisIndex i) const {
    auto it = c_.find(i);
    return it == c_.end() ? Scalar() : it->second;
}

void Element::set(BasisIndex i, const Scalar& v) {
    if (v.is_zero())
        c_.erase(i);
    else
        c_[i] = v;
}

void Element::add(BasisIndex i, const Scalar& v) {
    if (v.is_zero()) return;
    auto [it, inserted] = c_.emplace(i, v);
    if (!inserted) {
        it->second += v;
        if (it->second.is_zero()) c_.erase(it);
    }
}

Element Element::operator-() const {
    Element r(pres_);
    for (const auto& [i, s] : c_) r.c_.emplace(i, -s);
    return r;
}

Element& Element::operator+=(const Element& o) {
    if (pres_ == nullptr) pres_ = o.pres_;
    if (!o.c_.empty()) require_same(pres_, o.pres_, "Element::+=");
    for (const auto& [i, s] : o.c_) add(i, s);
    return *this;
}

Element& Element::operator-=(const Element& o) {
    if (pres_ == nullptr) pres_ = o.pres_;
    if (!o.c_.empty()) require_same(pres_, o.pres_, "Element::-=");
    for (const auto& [i, s] : o.c_) add(i, -s);
    return *this;
}

Element operator*(const Scalar& s, const Element& e) {
    Element r(e.pres_);
    if (s.is_zero()) return r;
    for (const auto& [i, v] : e.c_) r.add(i, s * v);
    return r;
}

bool Element::all_exact() const {
    for (const auto& [i, s] : c_)
        if (!s.is_exact()) return false;
    return true;
}

std::string Element::str() const {
    if (c_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [i, s] : c_) {
        if (!first) os << " + ";
        os << "(" << s.str() << ")*" << (pres_ ? pres_->index_name(i) : std::to_string(i));
        first = false;
    }
    return os.str();
}

void TensorElement::add(BasisIndex i, BasisIndex j, const Scalar& v) {
    if (v.is_zero()) return;
    auto key = std::make_pair(i, j);
    auto [it, inserted] = c_.emplace(key, v);
    if (!inserted) {
        it->second += v;
        if (it->second.is_zero()) c_.erase(it);
    }
}

TensorElement& TensorElement::operator+=(const TensorElement& o) {
    if (pres_ == nullptr) pres_ = o.pres_;
    if (!o.c_.empty()) require_same(pres_, o.pres_, "TensorElement::+=");
    for (const auto& [k, s] : o.c_) add(k.first, k.second, s);
    return *this;
}

TensorElement& TensorElement::operator-=(const TensorElement& o) {
    if (pres_ == nullptr) pres_ = o.pres_;
    if (!o.c_.empty()) require_same(pres_, o.pres_, "TensorElement::-=");
    for (const auto& [k, s] : o.c_) add(k.first, k.second, -s);
    return *this;
}

TensorElement operator*(const Scalar& s, const TensorElement& e) {
    TensorElement r(e.pres_);
    if (s.is_zero()) return r;
    for (const auto& [k, v] : e.c_) r.add(k.first, k.second, s * v);
    return r;
}

bool TensorElement::all_exact() const {
    for (const auto& [k, s] : c_)
        if (!s.is_exact()) return false;
    return true;
}

std::string TensorElement::str() const {
    if (c_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [k, s] : c_) {
        if (!first) os << " + ";
        os << "(" << s.str() << ")*" << pres_->index_name(k.first) << "(x)"
           << pres_->index_name(k.second);
        first = false;
    }
    return os.str();
}

Element Presentation::basis_element(BasisIndex i) const {
    Element e(this);
    e.set(i, Scalar(1));
    return e;
}

std::vector<BasisIndex> Presentation::basis_up_to(int degree) const {
    std::vector<BasisIndex> out;
    std::size_t n = dim_up_to(degree);
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) out.push_back(static_cast<BasisIndex>(i));
    return out;
}

Element mul(const Element& x, const Element& y) {
    if (x.is_zero()) return x;
    if (y.is_zero()) return y;
    require_same(x.presentation(), y.presentation(), "mul");
    Element r(x.presentation());
    for (const auto& [i, a] : x.coeffs())
        for (const auto& [j, b] : y.coeffs()) {
            Element prod = x.presentation()->mult(i, j);
            Scalar f = a * b;
            for (const auto& [k, c] : prod.coeffs()) r.add(k, f * c);
        }
    return r;
}

Element mul(const Element& x, const Element& y, const Element& z) { return mul(mul(x, y), z); }

TensorElement comul(const Element& x) {
    TensorElement r(x.presentation());
    for (const auto& [i, a] : x.coeffs()) {
        TensorElement d = x.presentation()->comult(i);
        r += a * d;
    }
    return r;
}

namespace {

Element linear_extend(const Element& x, Element (Presentation::*f)(BasisIndex) const) {
    Element r(x.presentation());
    for (const auto& [i, a] : x.coeffs()) {
        Element img = (x.presentation()->*f)(i);
        r += a * img;
    }
    return r;
}

}  // namespace

Element star(const Element& x) {
    // conjugate-linear extension
    Element r(x.presentation());
    for (const auto& [i, a] : x.coeffs()) {
        Element img = x.presentation()->star(i);
        r += a.conj() * img;
    }
    return r;
}

Element antipode(const Element& x) { return linear_extend(x, &Presentation::antipode); }
Element antipode_inv(const Element& x) { return linear_extend(x, &Presentation::antipode_inv); }

Scalar counit(const Element& x) {
    Scalar s;
    for (const auto& [i, a] : x.coeffs()) s += a * x.presentation()->counit(i);
    return s;
}

Scalar right_integral(const Element& x) {
    Scalar s;
    for (const auto& [i, a] : x.coeffs()) s += a * x.presentation()->right_integral(i);
    return s;
}

Scalar left_integral(const Element& x) { return right_integral(antipode(x)); }

TensorElement tensor(const Element& x, const Element& y) {
    TensorElement r(x.presentation() ? x.presentation() : y.presentation());
    for (const auto& [i, a] : x.coeffs())
        for (const auto& [j, b] : y.coeffs()) r.add(i, j, a * b);
    return r;
}

TensorElement tensor_mul(const TensorElement& a, const TensorElement& b) {
    const Presentation* p = a.presentation() ? a.presentation() : b.presentation();
    TensorElement r(p);
    for (const auto& [ka, va] : a.coeffs())
        for (const auto& [kb, vb] : b.coeffs()) {
            Element left = p->mult(ka.first, kb.first);
            Element right = p->mult(ka.second, kb.second);
            Scalar f = va * vb;
            for (const auto& [i, ci] : left.coeffs())
                for (const auto& [j, cj] : right.coeffs()) r.add(i, j, f * ci * cj);
        }
    return r;
}

TensorElement tensor_map(const TensorElement& t,
                         const std::function<Element(const Element&)>& left,
                         const std::function<Element(const Element&)>& right) {
    const Presentation* p = t.presentation();
    TensorElement r(p);
    for (const auto& [k, v] : t.coeffs()) {
        Element l = left(p->basis_element(k.first));
        Element rr = right(p->basis_element(k.second));
        for (const auto& [i, ci] : l.coeffs())
            for (const auto& [j, cj] : rr.coeffs()) r.add(i, j, v * ci * cj);
    }
    return r;
}

Element tensor_contract_right(const TensorElement& t,
                              const std::function<Scalar(const Element&)>& f) {
    const Presentation* p = t.presentation();
    Element r(p);
    for (const auto& [k, v] : t.coeffs()) r.add(k.first, v * f(p->basis_element(k.second)));
    return r;
}

Element tensor_contract_left(const TensorElement& t,
                             const std::function<Scalar(const Element&)>& f) {
    const Presentation* p = t.presentation();
    Element r(p);
    for (const auto& [k, v] : t.coeffs()) r.add(k.second, v * f(p->basis_element(k.first)));
    return r;
}

TensorElement tensor_flip(const TensorElement& t) {
    TensorElement r(t.presentation());
    for (const auto& [k, v] : t.coeffs()) r.add(k.second, k.first, v);
    return r;
}

Scalar gns_inner(const Element& x, const Element& y) { return right_integral(mul(star(y), x)); }

}  // namespace aqg
