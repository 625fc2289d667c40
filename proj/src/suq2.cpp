#include <map>
#include <mutex>
#include <stdexcept>
#include <tuple>

#include "aqg/examples.hpp"
#include "aqg/linalg.hpp"

namespace aqg {

namespace {

enum Gen : std::uint8_t { GA = 0, GAs = 1, GC = 2, GCs = 3 };
using Word = std::vector<std::uint8_t>;

struct Mono {
    bool star;  // true: a*^k c^l c*^m with k >= 1; false: a^k c^l c*^m
    int k, l, m;

    int deg() const { return k + l + m; }
    auto key() const { return std::make_tuple(star, k, l, m); }
};

/// Pol(SU_q(2)) on the PBW basis, graded by total monomial degree.
///
/// The defining relations are oriented into a rewriting system that moves
/// a-letters to the front and c before c*; the two inhomogeneous rules
/// eliminate mixed a/a* powers. Confluence is certified at construction by
/// reducing every critical pair both ways. The Haar integral is not
/// transcribed: each degree block is solved exactly from two-sided
/// invariance plus psi(1) = 1.
class Suq2 final : public Presentation {
public:
    Suq2(mpq_class q, int declared_degree) : q_(std::move(q)), declared_(declared_degree) {
        if (sgn(q_) <= 0 || q_ >= 1)
            throw std::invalid_argument("suq2: q must satisfy 0 < q < 1");
        q_.canonicalize();
        qs_ = Scalar(q_);
        ensure_degree_locked(std::max(declared_, 1));
        certify_confluence();
    }

    const mpq_class& q() const { return q_; }

    std::string name() const override {
        return "Pol(SU_q(2)) q=" + q_.get_str();
    }

    std::size_t dim_up_to(int degree) const override {
        std::scoped_lock lk(mu_);
        ensure_degree_locked(degree);
        return dims_[degree];
    }

    int degree(BasisIndex i) const override {
        std::scoped_lock lk(mu_);
        return monos_[i].deg();
    }

    std::string index_name(BasisIndex i) const override {
        std::scoped_lock lk(mu_);
        const Mono& mo = monos_[i];
        if (mo.deg() == 0) return "1";
        std::string s;
        auto app = [&s](const char* g, int p) {
            if (p == 0) return;
            s += g;
            if (p > 1) s += "^" + std::to_string(p);
        };
        app(mo.star ? "a*" : "a", mo.k);
        app("c", mo.l);
        app("c*", mo.m);
        return s;
    }

    Element unit() const override { return basis_element(0); }

    Element mult(BasisIndex x, BasisIndex y) const override {
        {
            std::scoped_lock lk(mu_);
            if (auto it = mult_cache_.find({x, y}); it != mult_cache_.end()) return it->second;
        }
        Word w = word_of(x);
        Word wy = word_of(y);
        w.insert(w.end(), wy.begin(), wy.end());
        Element r = normalize(w, Scalar(1));
        std::scoped_lock lk(mu_);
        mult_cache_.emplace(std::make_pair(x, y), r);
        return r;
    }

    TensorElement comult(BasisIndex x) const override {
        {
            std::scoped_lock lk(mu_);
            if (auto it = comult_cache_.find(x); it != comult_cache_.end()) return it->second;
        }
        Word w = word_of(x);
        TensorElement t(this);
        t.add(0, 0, Scalar(1));
        for (std::uint8_t g : w) t = tensor_mul(t, gen_comult(g));
        std::scoped_lock lk(mu_);
        comult_cache_.emplace(x, t);
        return t;
    }

    Element star(BasisIndex x) const override {
        {
            std::scoped_lock lk(mu_);
            if (auto it = star_cache_.find(x); it != star_cache_.end()) return it->second;
        }
        Word w = word_of(x);
        Word r;
        for (auto it = w.rbegin(); it != w.rend(); ++it) r.push_back(star_letter(*it));
        Element out = normalize(r, Scalar(1));
        std::scoped_lock lk(mu_);
        star_cache_.emplace(x, out);
        return out;
    }

    Element antipode(BasisIndex x) const override {
        {
            std::scoped_lock lk(mu_);
            if (auto it = antipode_cache_.find(x); it != antipode_cache_.end()) return it->second;
        }
        Element out = antipode_impl(x, false);
        std::scoped_lock lk(mu_);
        antipode_cache_.emplace(x, out);
        return out;
    }

    Element antipode_inv(BasisIndex x) const override {
        {
            std::scoped_lock lk(mu_);
            if (auto it = antipode_inv_cache_.find(x); it != antipode_inv_cache_.end())
                return it->second;
        }
        Element out = antipode_impl(x, true);
        std::scoped_lock lk(mu_);
        antipode_inv_cache_.emplace(x, out);
        return out;
    }

    Scalar counit(BasisIndex x) const override {
        std::scoped_lock lk(mu_);
        const Mono& mo = monos_[x];
        return (mo.l == 0 && mo.m == 0) ? Scalar(1) : Scalar(0);
    }

    Scalar right_integral(BasisIndex x) const override {
        std::scoped_lock lk(mu_);
        int d = monos_[x].deg();
        ensure_haar_locked(d);
        return haar_[x];
    }

    int degree_growth_bound(int n1, int n2) const override { return n1 + n2; }

private:
    // ---- basis registry ----

    void ensure_degree_locked(int degree) const {
        while (static_cast<int>(dims_.size()) <= degree) {
            int d = static_cast<int>(dims_.size());
            if (d == 0) {
                monos_.push_back({false, 0, 0, 0});
                ids_[monos_.back().key()] = 0;
                dims_.push_back(1);
                continue;
            }
            for (int k = d; k >= 0; --k)
                for (int l = d - k; l >= 0; --l) {
                    Mono mo{false, k, l, d - k - l};
                    ids_[mo.key()] = static_cast<BasisIndex>(monos_.size());
                    monos_.push_back(mo);
                }
            for (int k = d; k >= 1; --k)
                for (int l = d - k; l >= 0; --l) {
                    Mono mo{true, k, l, d - k - l};
                    ids_[mo.key()] = static_cast<BasisIndex>(monos_.size());
                    monos_.push_back(mo);
                }
            dims_.push_back(monos_.size());
        }
    }

    BasisIndex id_of(const Mono& mo) const {
        std::scoped_lock lk(mu_);
        ensure_degree_locked(mo.deg());
        return ids_.at(mo.key());
    }

    Word word_of(BasisIndex i) const {
        Mono mo;
        {
            std::scoped_lock lk(mu_);
            mo = monos_[i];
        }
        Word w;
        for (int t = 0; t < mo.k; ++t) w.push_back(mo.star ? GAs : GA);
        for (int t = 0; t < mo.l; ++t) w.push_back(GC);
        for (int t = 0; t < mo.m; ++t) w.push_back(GCs);
        return w;
    }

    // ---- rewriting ----

    static std::uint8_t star_letter(std::uint8_t g) {
        switch (g) {
            case GA: return GAs;
            case GAs: return GA;
            case GC: return GCs;
            default: return GC;
        }
    }

    // Reduces coeff*w to the PBW normal form, accumulating into an Element.
    Element normalize(const Word& w0, const Scalar& c0) const {
        Element out(this);
        std::vector<std::pair<Scalar, Word>> work{{c0, w0}};
        while (!work.empty()) {
            auto [c, w] = std::move(work.back());
            work.pop_back();
            bool reduced = false;
            for (std::size_t i = 0; i + 1 < w.size(); ++i) {
                std::uint8_t x = w[i], y = w[i + 1];
                if (x == GC && y == GA) {
                    std::swap(w[i], w[i + 1]);
                    work.push_back({c / qs_, std::move(w)});
                } else if (x == GCs && y == GA) {
                    std::swap(w[i], w[i + 1]);
                    work.push_back({c / qs_, std::move(w)});
                } else if (x == GC && y == GAs) {
                    std::swap(w[i], w[i + 1]);
                    work.push_back({c * qs_, std::move(w)});
                } else if (x == GCs && y == GAs) {
                    std::swap(w[i], w[i + 1]);
                    work.push_back({c * qs_, std::move(w)});
                } else if (x == GCs && y == GC) {
                    std::swap(w[i], w[i + 1]);
                    work.push_back({c, std::move(w)});
                } else if (x == GAs && y == GA) {
                    // a* a = 1 - c c*
                    Word shorter(w.begin(), w.begin() + i);
                    shorter.insert(shorter.end(), w.begin() + i + 2, w.end());
                    Word split = shorter;
                    split.insert(split.begin() + i, {GC, GCs});
                    work.push_back({c, std::move(shorter)});
                    work.push_back({-c, std::move(split)});
                } else if (x == GA && y == GAs) {
                    // a a* = 1 - q^2 c c*
                    Word shorter(w.begin(), w.begin() + i);
                    shorter.insert(shorter.end(), w.begin() + i + 2, w.end());
                    Word split = shorter;
                    split.insert(split.begin() + i, {GC, GCs});
                    work.push_back({c, std::move(shorter)});
                    work.push_back({-(qs_ * qs_) * c, std::move(split)});
                } else {
                    continue;
                }
                reduced = true;
                break;
            }
            if (!reduced) out.add(id_of(mono_of_normal_word(w)), c);
        }
        return out;
    }

    static Mono mono_of_normal_word(const Word& w) {
        Mono mo{false, 0, 0, 0};
        for (std::uint8_t g : w) {
            switch (g) {
                case GA: mo.k++; break;
                case GAs: mo.star = true, mo.k++; break;
                case GC: mo.l++; break;
                default: mo.m++; break;
            }
        }
        return mo;
    }

    static bool rule_applies(std::uint8_t x, std::uint8_t y) {
        return (x == GC && y == GA) || (x == GCs && y == GA) || (x == GC && y == GAs) ||
               (x == GCs && y == GAs) || (x == GCs && y == GC) || (x == GAs && y == GA) ||
               (x == GA && y == GAs);
    }

    // All length-3 overlaps of rule left-hand sides must reduce to equal
    // normal forms whichever rule fires first; a residual means the rule
    // set is inconsistent with the relations.
    void certify_confluence() const {
        std::vector<std::uint8_t> letters{GA, GAs, GC, GCs};
        for (std::uint8_t x : letters)
            for (std::uint8_t y : letters)
                for (std::uint8_t z : letters) {
                    if (!rule_applies(x, y) || !rule_applies(y, z)) continue;
                    Element l = step_then_normalize({x, y, z}, 0);
                    Element r = step_then_normalize({x, y, z}, 1);
                    if (!(l == r))
                        throw std::logic_error("suq2: critical pair failure on overlap");
                }
    }

    // Applies the rule at position pos first, then fully normalizes.
    Element step_then_normalize(const Word& w, std::size_t pos) const {
        std::uint8_t x = w[pos], y = w[pos + 1];
        std::vector<std::pair<Scalar, Word>> seeds;
        auto swapped = [&](const Scalar& f) {
            Word v = w;
            std::swap(v[pos], v[pos + 1]);
            seeds.push_back({f, std::move(v)});
        };
        if (x == GC && y == GA) swapped(Scalar(1) / qs_);
        else if (x == GCs && y == GA) swapped(Scalar(1) / qs_);
        else if (x == GC && y == GAs) swapped(qs_);
        else if (x == GCs && y == GAs) swapped(qs_);
        else if (x == GCs && y == GC) swapped(Scalar(1));
        else if ((x == GAs && y == GA) || (x == GA && y == GAs)) {
            Word shorter(w.begin(), w.begin() + pos);
            shorter.insert(shorter.end(), w.begin() + pos + 2, w.end());
            Word split = shorter;
            split.insert(split.begin() + pos, {GC, GCs});
            seeds.push_back({Scalar(1), std::move(shorter)});
            seeds.push_back({x == GAs ? -Scalar(1) : -(qs_ * qs_), std::move(split)});
        } else {
            seeds.push_back({Scalar(1), w});
        }
        Element out(this);
        for (auto& [c, v] : seeds) out += normalize(v, c);
        return out;
    }

    // ---- structure maps ----

    TensorElement gen_comult(std::uint8_t g) const {
        TensorElement t(this);
        BasisIndex a = id_of({false, 1, 0, 0}), as = id_of({true, 1, 0, 0});
        BasisIndex c = id_of({false, 0, 1, 0}), cs = id_of({false, 0, 0, 1});
        switch (g) {
            case GA:  // a(x)a - q c*(x)c
                t.add(a, a, Scalar(1));
                t.add(cs, c, -qs_);
                break;
            case GAs:  // a*(x)a* - q c(x)c*
                t.add(as, as, Scalar(1));
                t.add(c, cs, -qs_);
                break;
            case GC:  // c(x)a + a*(x)c
                t.add(c, a, Scalar(1));
                t.add(as, c, Scalar(1));
                break;
            default:  // c*(x)a* + a(x)c*
                t.add(cs, as, Scalar(1));
                t.add(a, cs, Scalar(1));
                break;
        }
        return t;
    }

    Element antipode_impl(BasisIndex x, bool inverse) const {
        // S(a)=a*, S(a*)=a, S(c)=-qc, S(c*)=-c*/q; the inverse swaps the
        // c-scalings. Anti-homomorphism: reverse the word.
        Word w = word_of(x);
        Word r;
        Scalar f(1);
        for (auto it = w.rbegin(); it != w.rend(); ++it) {
            switch (*it) {
                case GA: r.push_back(GAs); break;
                case GAs: r.push_back(GA); break;
                case GC:
                    r.push_back(GC);
                    f *= inverse ? -(Scalar(1) / qs_) : -qs_;
                    break;
                default:
                    r.push_back(GCs);
                    f *= inverse ? -qs_ : -(Scalar(1) / qs_);
                    break;
            }
        }
        return normalize(r, f);
    }

    // ---- Haar integral ----

    void ensure_haar_locked(int degree) const {
        ensure_degree_locked(degree + 1);
        while (haar_degree_ < degree) {
            int d = haar_degree_ + 1;
            if (d == 0) {
                haar_.assign(1, Scalar(1));
                haar_degree_ = 0;
                continue;
            }
            std::size_t lo = dims_[d - 1], hi = dims_[d];
            haar_.resize(hi);
            solve_haar_block(static_cast<BasisIndex>(lo), static_cast<BasisIndex>(hi));
            haar_degree_ = d;
        }
    }

    // Imposes (psi (x) id) delta(x) = psi(x) 1 and (id (x) psi) delta(x) =
    // psi(x) 1 for every basis x in [lo, hi); lower-degree values are known.
    void solve_haar_block(BasisIndex lo, BasisIndex hi) const {
        const std::size_t nunk = hi - lo;
        std::vector<Vec> cols(nunk);  // columns of the equation matrix
        std::vector<Scalar> rhs;
        std::vector<std::map<BasisIndex, Scalar>> rows;  // sparse rows, unknown idx -> coeff

        auto add_equations = [&](BasisIndex x, bool right_side) {
            TensorElement d = comult_nolock(x);
            // group by the surviving leg
            std::map<BasisIndex, std::map<BasisIndex, Scalar>> by_leg;  // leg -> {psi-arg -> coeff}
            for (const auto& [k, v] : d.coeffs()) {
                BasisIndex integrated = right_side ? k.first : k.second;
                BasisIndex surviving = right_side ? k.second : k.first;
                auto& row = by_leg[surviving];
                auto [it, ins] = row.emplace(integrated, v);
                if (!ins) it->second += v;
            }
            for (auto& [leg, terms] : by_leg) {
                std::map<BasisIndex, Scalar> row;  // unknown index -> coeff
                Scalar known;
                for (auto& [arg, coeff] : terms) {
                    if (arg >= lo && arg < hi) {
                        auto [it, ins] = row.emplace(arg - lo, coeff);
                        if (!ins) it->second += coeff;
                    } else {
                        known += coeff * haar_[arg];
                    }
                }
                // psi(x) itself: x has degree d, so it is unknown x - lo
                if (leg == 0) {
                    auto [it, ins] = row.emplace(x - lo, Scalar(-1));
                    if (!ins) it->second += Scalar(-1);
                }
                bool allzero = true;
                for (auto& [u, cf] : row)
                    if (!cf.is_zero()) allzero = false;
                if (allzero && known.is_zero()) continue;
                rows.push_back(std::move(row));
                rhs.push_back(-known);
            }
        };

        for (BasisIndex x = lo; x < hi; ++x) {
            add_equations(x, true);
            add_equations(x, false);
        }

        // assemble dense columns and solve the overdetermined exact system
        std::vector<Vec> colv(nunk, Vec(rows.size()));
        Vec b(rows.size());
        for (std::size_t r = 0; r < rows.size(); ++r) {
            for (const auto& [u, cf] : rows[r]) colv[u][r] = cf;
            b[r] = rhs[r];
        }
        std::vector<Vec> basis;
        for (auto& cv : colv) basis.push_back(std::move(cv));
        {
            // uniqueness: the columns must be independent
            std::vector<std::size_t> ind = independent_subset(basis);
            if (ind.size() != nunk)
                throw std::domain_error("suq2: Haar block underdetermined; escalate degree");
        }
        auto coords = coordinates_in_span(basis, b);
        if (!coords)
            throw std::domain_error("suq2: Haar invariance system inconsistent");
        for (std::size_t u = 0; u < nunk; ++u) haar_[lo + u] = (*coords)[u];
    }

    TensorElement comult_nolock(BasisIndex x) const {
        if (auto it = comult_cache_.find(x); it != comult_cache_.end()) return it->second;
        // build without re-locking: replicate comult() body inline
        Mono mo = monos_[x];
        Word w;
        for (int t = 0; t < mo.k; ++t) w.push_back(mo.star ? GAs : GA);
        for (int t = 0; t < mo.l; ++t) w.push_back(GC);
        for (int t = 0; t < mo.m; ++t) w.push_back(GCs);
        TensorElement t(this);
        t.add(0, 0, Scalar(1));
        for (std::uint8_t g : w) t = tensor_mul(t, gen_comult(g));
        comult_cache_.emplace(x, t);
        return t;
    }

    mpq_class q_;
    Scalar qs_;
    int declared_;

    mutable std::recursive_mutex mu_;
    mutable std::vector<Mono> monos_;
    mutable std::map<std::tuple<bool, int, int, int>, BasisIndex> ids_;
    mutable std::vector<std::size_t> dims_;  // dims_[d] = dim of degree <= d
    mutable std::vector<Scalar> haar_;
    mutable int haar_degree_ = -1;
    mutable std::map<std::pair<BasisIndex, BasisIndex>, Element> mult_cache_;
    mutable std::map<BasisIndex, TensorElement> comult_cache_;
    mutable std::map<BasisIndex, Element> star_cache_, antipode_cache_, antipode_inv_cache_;
};

}  // namespace

std::shared_ptr<Presentation> make_suq2(const mpq_class& q, int max_degree) {
    return std::make_shared<Suq2>(q, max_degree);
}

std::optional<mpq_class> suq2_parameter(const Presentation& p) {
    if (auto* s = dynamic_cast<const Suq2*>(&p)) return s->q();
    return std::nullopt;
}

}  // namespace aqg
