#include "aqg/rootfind.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace aqg {

namespace {

void trim(Poly& p) {
    while (!p.empty() && sgn(p.back()) == 0) p.pop_back();
}

}  // namespace

mpq_class poly_eval(const Poly& p, const mpq_class& x) {
    mpq_class acc = 0;
    for (std::size_t i = p.size(); i-- > 0;) acc = acc * x + p[i];
    return acc;
}

Poly poly_derivative(const Poly& p) {
    Poly d;
    for (std::size_t i = 1; i < p.size(); ++i) d.push_back(mpq_class(static_cast<long>(i)) * p[i]);
    trim(d);
    return d;
}

Poly poly_monic(Poly p) {
    trim(p);
    if (p.empty()) return p;
    mpq_class lead = p.back();
    for (auto& c : p) c /= lead;
    return p;
}

Poly poly_rem(Poly num, const Poly& den) {
    trim(num);
    if (den.empty()) throw std::domain_error("poly_rem: zero divisor");
    while (num.size() >= den.size()) {
        mpq_class f = num.back() / den.back();
        std::size_t off = num.size() - den.size();
        for (std::size_t i = 0; i < den.size(); ++i) num[off + i] -= f * den[i];
        trim(num);
        if (num.empty()) break;
        if (num.size() >= den.size() && sgn(num.back()) == 0) trim(num);
    }
    return num;
}

Poly poly_gcd(Poly a, Poly b) {
    trim(a);
    trim(b);
    while (!b.empty()) {
        Poly r = poly_rem(a, b);
        a = std::move(b);
        b = std::move(r);
    }
    return poly_monic(std::move(a));
}

Poly squarefree_part(const Poly& p) {
    Poly q = poly_monic(p);
    if (q.size() <= 1) return q;
    Poly g = poly_gcd(q, poly_derivative(q));
    if (g.size() <= 1) return q;
    // exact division q / g
    Poly quot(q.size() - g.size() + 1, mpq_class(0));
    Poly rem = q;
    while (rem.size() >= g.size()) {
        mpq_class f = rem.back() / g.back();
        std::size_t off = rem.size() - g.size();
        quot[off] = f;
        for (std::size_t i = 0; i < g.size(); ++i) rem[off + i] -= f * g[i];
        trim(rem);
        if (rem.empty()) break;
    }
    return poly_monic(std::move(quot));
}

namespace {

// Simplest rational (minimal denominator) in the closed interval [lo, hi].
mpq_class simplest_rational(mpq_class lo, mpq_class hi) {
    if (lo > hi) std::swap(lo, hi);
    mpz_class lo_ceil, hi_floor;
    mpz_cdiv_q(lo_ceil.get_mpz_t(), lo.get_num().get_mpz_t(), lo.get_den().get_mpz_t());
    mpz_fdiv_q(hi_floor.get_mpz_t(), hi.get_num().get_mpz_t(), hi.get_den().get_mpz_t());
    if (lo_ceil <= hi_floor) {
        if (sgn(lo) <= 0 && sgn(hi) >= 0) return mpq_class(0);
        if (sgn(lo) > 0) return mpq_class(lo_ceil);
        return mpq_class(hi_floor);
    }
    // lo, hi share the same integer part n; recurse on the fractional inverse
    mpz_class n;
    mpz_fdiv_q(n.get_mpz_t(), lo.get_num().get_mpz_t(), lo.get_den().get_mpz_t());
    mpq_class fl = lo - mpq_class(n);
    mpq_class fh = hi - mpq_class(n);
    mpq_class inner = simplest_rational(1 / fh, 1 / fl);
    return mpq_class(n) + 1 / inner;
}

struct SturmChain {
    std::vector<Poly> chain;

    explicit SturmChain(const Poly& squarefree) {
        chain.push_back(squarefree);
        Poly d = poly_derivative(squarefree);
        if (!d.empty()) chain.push_back(d);
        while (chain.back().size() > 1) {
            Poly r = poly_rem(chain[chain.size() - 2], chain.back());
            if (r.empty()) break;
            for (auto& c : r) c = -c;
            chain.push_back(std::move(r));
        }
    }

    int variations(const mpq_class& x) const {
        int v = 0, prev = 0;
        for (const Poly& p : chain) {
            int s = sgn(poly_eval(p, x));
            if (s == 0) continue;
            if (prev != 0 && s != prev) ++v;
            prev = s;
        }
        return v;
    }
};

// Single root of squarefree q known to lie in (lo, hi) with a sign change.
PolyRoot refine_single_root(const Poly& q, mpq_class lo, mpq_class hi) {
    const int kMaxBisect = 130;
    int slo = sgn(poly_eval(q, lo));
    for (int iter = 0; iter < kMaxBisect; ++iter) {
        mpq_class cand = simplest_rational(lo, hi);
        if (cand > lo && cand < hi && sgn(poly_eval(q, cand)) == 0)
            return {true, cand, cand.get_d()};
        mpq_class mid = (lo + hi) / 2;
        int sm = sgn(poly_eval(q, mid));
        if (sm == 0) return {true, mid, mid.get_d()};
        if (sm == slo)
            lo = mid;
        else
            hi = mid;
    }
    // irrational (or denominator beyond reconstruction range): float fallback
    mpq_class mid = (lo + hi) / 2;
    return {false, mpq_class(0), mid.get_d()};
}

}  // namespace

std::vector<PolyRoot> real_roots(const Poly& p) {
    std::vector<PolyRoot> roots;
    Poly q = squarefree_part(p);
    if (q.size() <= 1) return roots;
    if (q.size() == 2) {
        mpq_class r = -q[0] / q[1];
        roots.push_back({true, r, r.get_d()});
        return roots;
    }

    // Cauchy bound
    mpq_class bound = 1;
    for (std::size_t i = 0; i + 1 < q.size(); ++i) {
        mpq_class m = abs(q[i] / q.back());
        if (m > bound) bound = m;
    }
    bound += 1;

    SturmChain sturm(q);
    struct Span {
        mpq_class lo, hi;
        int count;
    };
    std::vector<Span> work;
    {
        mpq_class lo = -bound, hi = bound;
        work.push_back({lo, hi, sturm.variations(lo) - sturm.variations(hi)});
    }
    while (!work.empty()) {
        Span s = work.back();
        work.pop_back();
        if (s.count <= 0) continue;
        if (s.count == 1) {
            roots.push_back(refine_single_root(q, s.lo, s.hi));
            continue;
        }
        // split at a non-root point
        mpq_class mid = (s.lo + s.hi) / 2;
        mpq_class step = (s.hi - s.lo) / 4;
        while (sgn(poly_eval(q, mid)) == 0) {
            mid += step;
            step /= 3;
        }
        int vm = sturm.variations(mid);
        int vl = sturm.variations(s.lo);
        int vh = sturm.variations(s.hi);
        work.push_back({s.lo, mid, vl - vm});
        work.push_back({mid, s.hi, vm - vh});
    }
    std::sort(roots.begin(), roots.end(),
              [](const PolyRoot& a, const PolyRoot& b) { return a.approx < b.approx; });
    return roots;
}

Poly min_poly_of_vector(const Mat& m, const Vec& v) {
    const std::size_t n = v.size();
    std::vector<Vec> reduced;          // echelonized Krylov vectors
    std::vector<std::size_t> pivcol;
    std::vector<Vec> combos;           // expression of reduced[r] in terms of krylov
    Vec cur = v;
    for (std::size_t k = 0;; ++k) {
        Vec red = cur;
        Vec combo(k + 1);
        combo[k] = Scalar(1);
        for (std::size_t r = 0; r < reduced.size(); ++r) {
            const Scalar& lead = red[pivcol[r]];
            if (lead.is_zero()) continue;
            Scalar f = lead / reduced[r][pivcol[r]];
            for (std::size_t j = 0; j < n; ++j)
                if (!reduced[r][j].is_zero()) red[j] -= f * reduced[r][j];
            for (std::size_t j = 0; j < combos[r].size(); ++j)
                combo[j] -= f * combos[r][j];
        }
        std::size_t p = 0;
        while (p < n && red[p].is_zero()) ++p;
        if (p == n) {
            // dependence found: combo encodes sum c_j M^j v = 0 with c_k = 1
            Poly poly(k + 1);
            for (std::size_t j = 0; j <= k; ++j) {
                const Scalar& c = combo[j];
                if (!c.is_exact() || sgn(c.im()) != 0)
                    throw std::domain_error("min_poly_of_vector: non-real coefficient");
                poly[j] = c.re();
            }
            return poly_monic(std::move(poly));
        }
        reduced.push_back(std::move(red));
        combos.push_back(std::move(combo));
        pivcol.push_back(p);
        if (k > n) throw std::logic_error("min_poly_of_vector: no dependence found");
        cur = mat_apply(m, cur);
    }
}

}  // namespace aqg
