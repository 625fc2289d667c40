#include "aqg/examples.hpp"

#include <algorithm>
#include <array>
#include <stdexcept>

namespace aqg {

FiniteGroup FiniteGroup::cyclic(unsigned n) {
    FiniteGroup g;
    g.name = "Z" + std::to_string(n);
    g.table.assign(n, std::vector<std::uint32_t>(n));
    g.inv.resize(n);
    for (unsigned a = 0; a < n; ++a) {
        for (unsigned b = 0; b < n; ++b) g.table[a][b] = (a + b) % n;
        g.inv[a] = (n - a) % n;
        g.labels.push_back("g" + std::to_string(a));
    }
    return g;
}

FiniteGroup FiniteGroup::symmetric3() {
    // permutations of {0,1,2} in lexicographic order
    std::vector<std::array<int, 3>> perms = {
        {0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
    auto compose = [&](int a, int b) {  // (a after b)(x) = a(b(x))
        std::array<int, 3> c{};
        for (int x = 0; x < 3; ++x) c[x] = perms[a][perms[b][x]];
        for (std::size_t i = 0; i < perms.size(); ++i)
            if (perms[i] == c) return static_cast<std::uint32_t>(i);
        throw std::logic_error("symmetric3: composition escaped the table");
    };
    FiniteGroup g;
    g.name = "S3";
    g.table.assign(6, std::vector<std::uint32_t>(6));
    g.inv.resize(6);
    for (int a = 0; a < 6; ++a) {
        for (int b = 0; b < 6; ++b) g.table[a][b] = compose(a, b);
        for (int b = 0; b < 6; ++b)
            if (g.table[a][b] == 0) g.inv[a] = b;
        g.labels.push_back("p" + std::to_string(a));
    }
    return g;
}

FiniteGroup FiniteGroup::dihedral4() {
    // elements r^k s^e, id = e*4 + k; s r = r^{-1} s
    auto id = [](unsigned k, unsigned e) { return e * 4 + k; };
    FiniteGroup g;
    g.name = "D4";
    g.table.assign(8, std::vector<std::uint32_t>(8));
    g.inv.resize(8);
    for (unsigned k1 = 0; k1 < 4; ++k1)
        for (unsigned e1 = 0; e1 < 2; ++e1)
            for (unsigned k2 = 0; k2 < 4; ++k2)
                for (unsigned e2 = 0; e2 < 2; ++e2) {
                    unsigned k = e1 ? (k1 + 4 - k2) % 4 : (k1 + k2) % 4;
                    g.table[id(k1, e1)][id(k2, e2)] = id(k, (e1 + e2) % 2);
                }
    for (unsigned a = 0; a < 8; ++a)
        for (unsigned b = 0; b < 8; ++b)
            if (g.table[a][b] == 0) g.inv[a] = b;
    for (unsigned a = 0; a < 8; ++a)
        g.labels.push_back((a < 4 ? "r" + std::to_string(a) : "r" + std::to_string(a - 4) + "s"));
    return g;
}

FiniteGroup FiniteGroup::by_name(const std::string& token) {
    if (token == "Z2") return cyclic(2);
    if (token == "Z4") return cyclic(4);
    if (token == "Z8") return cyclic(8);
    if (token == "S3") return symmetric3();
    if (token == "D4") return dihedral4();
    throw std::invalid_argument("unknown group token: " + token);
}

bool FiniteGroup::valid() const {
    const std::size_t n = order();
    if (inv.size() != n) return false;
    for (std::size_t a = 0; a < n; ++a) {
        if (table[a].size() != n) return false;
        if (table[0][a] != a || table[a][0] != a) return false;
        if (table[a][inv[a]] != 0 || table[inv[a]][a] != 0) return false;
    }
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
            for (std::size_t c = 0; c < n; ++c)
                if (table[table[a][b]][c] != table[a][table[b][c]]) return false;
    return true;
}

namespace {

class GroupAlgebra final : public Presentation {
public:
    GroupAlgebra(FiniteGroup g) : g_(std::move(g)) {
        if (!g_.valid()) throw std::invalid_argument("group table invalid");
    }

    std::string name() const override { return "C[" + g_.name + "]"; }
    std::size_t dim_up_to(int) const override { return g_.order(); }
    std::size_t total_dim() const override { return g_.order(); }
    int degree(BasisIndex) const override { return 0; }
    std::string index_name(BasisIndex i) const override { return "u_" + g_.labels[i]; }

    Element unit() const override { return basis_element(0); }
    Element mult(BasisIndex x, BasisIndex y) const override {
        return basis_element(g_.table[x][y]);
    }
    TensorElement comult(BasisIndex x) const override {
        TensorElement t(this);
        t.add(x, x, Scalar(1));
        return t;
    }
    Element star(BasisIndex x) const override { return basis_element(g_.inv[x]); }
    Element antipode(BasisIndex x) const override { return basis_element(g_.inv[x]); }
    Element antipode_inv(BasisIndex x) const override { return basis_element(g_.inv[x]); }
    Scalar counit(BasisIndex) const override { return Scalar(1); }
    Scalar right_integral(BasisIndex x) const override {
        return x == 0 ? Scalar(1) : Scalar(0);
    }
    int degree_growth_bound(int, int) const override { return 0; }

private:
    FiniteGroup g_;
};

class FunctionAlgebra final : public Presentation {
public:
    FunctionAlgebra(FiniteGroup g) : g_(std::move(g)) {
        if (!g_.valid()) throw std::invalid_argument("group table invalid");
    }

    std::string name() const override { return "F[" + g_.name + "]"; }
    std::size_t dim_up_to(int) const override { return g_.order(); }
    std::size_t total_dim() const override { return g_.order(); }
    int degree(BasisIndex) const override { return 0; }
    std::string index_name(BasisIndex i) const override { return "e_" + g_.labels[i]; }

    Element unit() const override {
        Element e(this);
        for (std::uint32_t x = 0; x < g_.order(); ++x) e.set(x, Scalar(1));
        return e;
    }
    Element mult(BasisIndex x, BasisIndex y) const override {
        if (x != y) return Element(this);
        return basis_element(x);
    }
    TensorElement comult(BasisIndex x) const override {
        // delta(e_g) = sum_h e_h (x) e_{h^{-1} g}
        TensorElement t(this);
        for (std::uint32_t h = 0; h < g_.order(); ++h)
            t.add(h, g_.table[g_.inv[h]][x], Scalar(1));
        return t;
    }
    Element star(BasisIndex x) const override { return basis_element(x); }
    Element antipode(BasisIndex x) const override { return basis_element(g_.inv[x]); }
    Element antipode_inv(BasisIndex x) const override { return basis_element(g_.inv[x]); }
    Scalar counit(BasisIndex x) const override { return x == 0 ? Scalar(1) : Scalar(0); }
    Scalar right_integral(BasisIndex) const override { return Scalar(1); }
    int degree_growth_bound(int, int) const override { return 0; }

private:
    FiniteGroup g_;
};

}  // namespace

std::shared_ptr<Presentation> make_group_algebra(const FiniteGroup& g) {
    return std::make_shared<GroupAlgebra>(g);
}

std::shared_ptr<Presentation> make_function_algebra(const FiniteGroup& g) {
    return std::make_shared<FunctionAlgebra>(g);
}

std::shared_ptr<Presentation> make_example(const std::string& token, const mpq_class& q,
                                           int degree) {
    if (token == "suq2") return make_suq2(q, degree);
    const std::string prefix = "group:";
    if (token.rfind(prefix, 0) == 0) {
        std::string rest = token.substr(prefix.size());
        if (rest.size() > 3 && rest[1] == '[' && rest.back() == ']') {
            std::string grp = rest.substr(2, rest.size() - 3);
            if (rest[0] == 'C') return make_group_algebra(FiniteGroup::by_name(grp));
            if (rest[0] == 'F') return make_function_algebra(FiniteGroup::by_name(grp));
        }
    }
    throw std::invalid_argument("unknown example token: " + token);
}

std::vector<std::string> builtin_example_tokens() {
    std::vector<std::string> out;
    for (const char* g : {"Z2", "Z4", "Z8", "S3", "D4"}) {
        out.push_back(std::string("group:C[") + g + "]");
        out.push_back(std::string("group:F[") + g + "]");
    }
    out.push_back("suq2");
    return out;
}

}  // namespace aqg
