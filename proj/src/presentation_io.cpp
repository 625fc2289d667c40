#include "aqg/presentation_io.hpp"

#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

#include "aqg/linalg.hpp"

namespace aqg {

namespace {

struct ParsedData {
    std::string name = "loaded";
    int check_degree = -1;
    std::vector<std::string> basis_names;
    std::vector<int> degrees;
    std::map<std::string, BasisIndex> index_of;
    // sparse tables keyed by source indices
    std::map<BasisIndex, Scalar> unit, counit, integral;
    std::map<std::pair<BasisIndex, BasisIndex>, std::map<BasisIndex, Scalar>> mult;
    std::map<BasisIndex, std::map<std::pair<BasisIndex, BasisIndex>, Scalar>> comult;
    std::map<BasisIndex, std::map<BasisIndex, Scalar>> star, antipode;
};

class LoadedPresentation final : public Presentation {
public:
    explicit LoadedPresentation(ParsedData d) : d_(std::move(d)) {
        const std::size_t n = d_.basis_names.size();
        int maxdeg = 0;
        for (int dg : d_.degrees) maxdeg = std::max(maxdeg, dg);
        dims_.assign(maxdeg + 1, 0);
        for (std::size_t i = 0; i < n; ++i)
            for (int dg = d_.degrees[i]; dg <= maxdeg; ++dg) dims_[dg]++;
        // antipode inverse by exact matrix inversion
        Mat s(n, n);
        for (std::size_t j = 0; j < n; ++j) {
            auto it = d_.antipode.find(static_cast<BasisIndex>(j));
            if (it == d_.antipode.end()) continue;
            for (const auto& [i, v] : it->second) s.at(i, j) = v;
        }
        try {
            antipode_inv_ = inverse(s);
        } catch (const std::domain_error&) {
            throw std::invalid_argument("presentation file: antipode matrix is singular");
        }
    }

    std::string name() const override { return d_.name; }
    std::size_t dim_up_to(int degree) const override {
        if (degree < 0) return 0;
        if (degree >= static_cast<int>(dims_.size())) return d_.basis_names.size();
        return dims_[degree];
    }
    std::size_t total_dim() const override { return d_.basis_names.size(); }
    int degree(BasisIndex i) const override { return d_.degrees[i]; }
    std::string index_name(BasisIndex i) const override { return d_.basis_names[i]; }
    int declared_degree() const { return d_.check_degree; }

    Element unit() const override { return sparse_to_element(d_.unit); }
    Element mult(BasisIndex x, BasisIndex y) const override {
        auto it = d_.mult.find({x, y});
        return it == d_.mult.end() ? Element(this) : sparse_to_element(it->second);
    }
    TensorElement comult(BasisIndex x) const override {
        TensorElement t(this);
        auto it = d_.comult.find(x);
        if (it != d_.comult.end())
            for (const auto& [k, v] : it->second) t.add(k.first, k.second, v);
        return t;
    }
    Element star(BasisIndex x) const override {
        auto it = d_.star.find(x);
        return it == d_.star.end() ? Element(this) : sparse_to_element(it->second);
    }
    Element antipode(BasisIndex x) const override {
        auto it = d_.antipode.find(x);
        return it == d_.antipode.end() ? Element(this) : sparse_to_element(it->second);
    }
    Element antipode_inv(BasisIndex x) const override {
        Element e(this);
        for (std::size_t i = 0; i < d_.basis_names.size(); ++i)
            e.add(static_cast<BasisIndex>(i), antipode_inv_.at(i, x));
        return e;
    }
    Scalar counit(BasisIndex x) const override {
        auto it = d_.counit.find(x);
        return it == d_.counit.end() ? Scalar() : it->second;
    }
    Scalar right_integral(BasisIndex x) const override {
        auto it = d_.integral.find(x);
        return it == d_.integral.end() ? Scalar() : it->second;
    }
    int degree_growth_bound(int n1, int n2) const override {
        return static_cast<int>(dims_.size()) - 1;  // finite: everything lives below max degree
    }

private:
    Element sparse_to_element(const std::map<BasisIndex, Scalar>& m) const {
        Element e(this);
        for (const auto& [i, v] : m) e.add(i, v);
        return e;
    }

    ParsedData d_;
    std::vector<std::size_t> dims_;
    Mat antipode_inv_;
};

std::vector<std::string> tokenize(const std::string& line) {
    std::vector<std::string> out;
    std::istringstream is(line);
    std::string tok;
    while (is >> tok) {
        if (tok[0] == '#') break;
        out.push_back(tok);
    }
    return out;
}

Scalar parse_scalar_or_throw(const std::string& text, int lineno) {
    auto s = Scalar::parse(text);
    if (!s)
        throw std::invalid_argument("presentation file line " + std::to_string(lineno) +
                                    ": bad scalar '" + text + "'");
    return *s;
}

}  // namespace

std::shared_ptr<Presentation> load_presentation_text(const std::string& text) {
    std::istringstream is(text);
    std::string line;
    int lineno = 0;

    if (!std::getline(is, line) || tokenize(line) != std::vector<std::string>{"aqg-presentation", "v1"})
        throw std::invalid_argument("presentation file: missing 'aqg-presentation v1' header");
    ++lineno;

    ParsedData d;
    std::string section;
    auto idx = [&d, &lineno](const std::string& name) -> BasisIndex {
        auto it = d.index_of.find(name);
        if (it == d.index_of.end())
            throw std::invalid_argument("presentation file line " + std::to_string(lineno) +
                                        ": unknown basis name '" + name + "'");
        return it->second;
    };

    while (std::getline(is, line)) {
        ++lineno;
        std::vector<std::string> toks = tokenize(line);
        if (toks.empty()) continue;
        if (toks[0].front() == '[') {
            section = toks[0];
            continue;
        }
        if (toks[0] == "name" && toks.size() >= 2) {
            d.name = toks[1];
            continue;
        }
        if (toks[0] == "check-degree" && toks.size() == 2) {
            d.check_degree = std::stoi(toks[1]);
            continue;
        }
        if (section == "[basis]") {
            if (toks.size() != 2)
                throw std::invalid_argument("presentation file line " + std::to_string(lineno) +
                                            ": expected 'name degree'");
            if (d.index_of.count(toks[0]))
                throw std::invalid_argument("presentation file line " + std::to_string(lineno) +
                                            ": duplicate basis name");
            d.index_of[toks[0]] = static_cast<BasisIndex>(d.basis_names.size());
            d.basis_names.push_back(toks[0]);
            d.degrees.push_back(std::stoi(toks[1]));
        } else if (section == "[unit]" || section == "[counit]" || section == "[integral]") {
            if (toks.size() != 2)
                throw std::invalid_argument("presentation file line " + std::to_string(lineno) +
                                            ": expected 'name scalar'");
            Scalar v = parse_scalar_or_throw(toks[1], lineno);
            auto& target = section == "[unit]" ? d.unit
                         : section == "[counit]" ? d.counit : d.integral;
            target[idx(toks[0])] = v;
        } else if (section == "[mult]") {
            if (toks.size() != 4)
                throw std::invalid_argument("presentation file line " + std::to_string(lineno) +
                                            ": expected 'x y target scalar'");
            d.mult[{idx(toks[0]), idx(toks[1])}][idx(toks[2])] =
                parse_scalar_or_throw(toks[3], lineno);
        } else if (section == "[comult]") {
            if (toks.size() != 4)
                throw std::invalid_argument("presentation file line " + std::to_string(lineno) +
                                            ": expected 'x leg1 leg2 scalar'");
            d.comult[idx(toks[0])][{idx(toks[1]), idx(toks[2])}] =
                parse_scalar_or_throw(toks[3], lineno);
        } else if (section == "[star]" || section == "[antipode]") {
            if (toks.size() != 3)
                throw std::invalid_argument("presentation file line " + std::to_string(lineno) +
                                            ": expected 'x target scalar'");
            auto& target = section == "[star]" ? d.star : d.antipode;
            target[idx(toks[0])][idx(toks[1])] = parse_scalar_or_throw(toks[2], lineno);
        } else {
            throw std::invalid_argument("presentation file line " + std::to_string(lineno) +
                                        ": content outside a known section");
        }
    }
    if (d.basis_names.empty())
        throw std::invalid_argument("presentation file: empty [basis] section");
    // basis must be sorted by degree for the truncation contract
    for (std::size_t i = 1; i < d.degrees.size(); ++i)
        if (d.degrees[i] < d.degrees[i - 1])
            throw std::invalid_argument("presentation file: basis entries must be sorted by degree");
    return std::make_shared<LoadedPresentation>(std::move(d));
}

std::shared_ptr<Presentation> load_presentation_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::invalid_argument("cannot open presentation file: " + path);
    std::ostringstream buf;
    buf << f.rdbuf();
    return load_presentation_text(buf.str());
}

int declared_check_degree(const Presentation& p) {
    if (auto* lp = dynamic_cast<const LoadedPresentation*>(&p)) {
        int d = lp->declared_degree();
        if (d >= 0) return d;
        int maxdeg = 0;
        for (std::size_t i = 0; i < lp->total_dim(); ++i)
            maxdeg = std::max(maxdeg, lp->degree(static_cast<BasisIndex>(i)));
        return maxdeg;
    }
    return 0;
}

std::string write_presentation_text(const Presentation& p, int degree) {
    std::ostringstream os;
    const std::size_t n = p.dim_up_to(degree);
    os << "aqg-presentation v1\n";
    os << "name " << p.name() << "\n";
    os << "check-degree " << degree << "\n\n";
    os << "[basis]\n";
    for (std::size_t i = 0; i < n; ++i)
        os << p.index_name(static_cast<BasisIndex>(i)) << " "
           << p.degree(static_cast<BasisIndex>(i)) << "\n";
    auto emit_element = [&](const Element& e, const std::string& prefix) {
        for (const auto& [i, v] : e.coeffs()) {
            if (i >= n) throw std::domain_error("write_presentation_text: image escapes degree");
            os << prefix << p.index_name(i) << " " << v.str() << "\n";
        }
    };
    os << "\n[unit]\n";
    emit_element(p.unit(), "");
    os << "\n[mult]\n";
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y) {
            Element e = p.mult(static_cast<BasisIndex>(x), static_cast<BasisIndex>(y));
            emit_element(e, p.index_name(static_cast<BasisIndex>(x)) + " " +
                                p.index_name(static_cast<BasisIndex>(y)) + " ");
        }
    os << "\n[comult]\n";
    for (std::size_t x = 0; x < n; ++x) {
        TensorElement t = p.comult(static_cast<BasisIndex>(x));
        for (const auto& [k, v] : t.coeffs()) {
            if (k.first >= n || k.second >= n)
                throw std::domain_error("write_presentation_text: coproduct escapes degree");
            os << p.index_name(static_cast<BasisIndex>(x)) << " " << p.index_name(k.first) << " "
               << p.index_name(k.second) << " " << v.str() << "\n";
        }
    }
    os << "\n[star]\n";
    for (std::size_t x = 0; x < n; ++x)
        emit_element(p.star(static_cast<BasisIndex>(x)),
                     p.index_name(static_cast<BasisIndex>(x)) + " ");
    os << "\n[antipode]\n";
    for (std::size_t x = 0; x < n; ++x)
        emit_element(p.antipode(static_cast<BasisIndex>(x)),
                     p.index_name(static_cast<BasisIndex>(x)) + " ");
    os << "\n[counit]\n";
    for (std::size_t x = 0; x < n; ++x) {
        Scalar v = p.counit(static_cast<BasisIndex>(x));
        if (!v.is_zero())
            os << p.index_name(static_cast<BasisIndex>(x)) << " " << v.str() << "\n";
    }
    os << "\n[integral]\n";
    for (std::size_t x = 0; x < n; ++x) {
        Scalar v = p.right_integral(static_cast<BasisIndex>(x));
        if (!v.is_zero())
            os << p.index_name(static_cast<BasisIndex>(x)) << " " << v.str() << "\n";
    }
    return os.str();
}

}  // namespace aqg
