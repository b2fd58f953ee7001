#pragma once

// Characteristic-class calculus for bundles presented by rank plus a
// truncated total Chern class. Duals, line twists, tensor products,
// symmetric powers and Segre classes are computed by the splitting
// principle: identities in the Chern roots of the small-rank factor are
// expanded once, rewritten in elementary symmetric polynomials, and
// evaluated in the ambient ring. Universal identities are memoized per
// (rank, operation, degree) signature under a compute-once lock.

#include "folideg/chow.hpp"
#include "folideg/multipoly.hpp"

#include <map>
#include <mutex>
#include <stdexcept>
#include <tuple>
#include <vector>

namespace folideg {

struct BundleClass {
    long rank = 0;
    ChowClass chern;  // total Chern class, unit constant term

    BundleClass() = default;
    BundleClass(long rk, ChowClass total) : rank(rk), chern(std::move(total)) {
        if (!chern.ambient()) throw std::invalid_argument("BundleClass: missing ambient");
        if (chern.coeff({}) != Rational(1))
            throw std::invalid_argument("BundleClass: total Chern class must start at 1");
    }

    const AmbientPtr& ambient() const { return chern.ambient(); }

    ChowClass chern_component(long i) const { return chern.component(i); }

    std::vector<ChowClass> chern_components(long up_to) const {
        std::vector<ChowClass> out;
        out.reserve(static_cast<std::size_t>(up_to) + 1);
        for (long i = 0; i <= up_to; ++i) out.push_back(chern.component(i));
        return out;
    }
};

inline BundleClass trivial_bundle(const AmbientPtr& a, long rank) {
    return BundleClass(rank, chow_one(a));
}

inline BundleClass line_bundle(const ChowClass& c1) {
    ChowClass total = chow_one(c1.ambient());
    total += c1;
    return BundleClass(1, total);
}

// Tautological subbundle R of G(k,n): c(R) = sum (-1)^i sigma_{1^i}.
inline BundleClass tautological_sub(const AmbientPtr& a) {
    if (a->kind != Ambient::Kind::grassmannian)
        throw std::invalid_argument("tautological_sub: ambient is not a Grassmannian");
    ChowClass total(a);
    for (int i = 0; i <= a->k; ++i) {
        ChowKey key;
        key.lam = Partition(std::vector<int>(static_cast<std::size_t>(i), 1));
        total.add_term(key, Rational(i % 2 == 0 ? 1 : -1));
    }
    return BundleClass(a->k, total);
}

// Tautological quotient Q: c(Q) = 1 + sigma_1 + ... + sigma_{n-k}.
inline BundleClass tautological_quotient(const AmbientPtr& a) {
    if (a->kind != Ambient::Kind::grassmannian)
        throw std::invalid_argument("tautological_quotient: ambient is not a Grassmannian");
    ChowClass total(a);
    for (int m = 0; m <= a->n - a->k; ++m) {
        ChowKey key;
        key.lam = Partition::single_row(m);
        total.add_term(key, Rational(1));
    }
    return BundleClass(a->n - a->k, total);
}

// Multiplicative inverse of a total class with unit constant term.
inline ChowClass inverse_total_class(const ChowClass& c) {
    if (c.coeff({}) != Rational(1))
        throw std::invalid_argument("inverse_total_class: constant term must be 1");
    const AmbientPtr& a = c.ambient();
    long dim = a->dim();
    std::vector<ChowClass> comp;
    for (long d = 0; d <= dim; ++d) comp.push_back(c.component(d));
    std::vector<ChowClass> inv;
    inv.push_back(chow_one(a));
    ChowClass total = chow_one(a);
    for (long d = 1; d <= dim; ++d) {
        ChowClass acc(a);
        for (long i = 1; i <= d; ++i) {
            if (comp[static_cast<std::size_t>(i)].is_zero()) continue;
            acc += comp[static_cast<std::size_t>(i)] * inv[static_cast<std::size_t>(d - i)];
        }
        inv.push_back(-acc);
        total += inv.back();
    }
    return total;
}

// Total Segre class s(E) = c(E)^{-1}, truncated at the ambient dimension.
inline ChowClass segre(const BundleClass& e) { return inverse_total_class(e.chern); }

inline BundleClass chern_dual(const BundleClass& e) {
    ChowClass total(e.ambient());
    long dim = e.ambient()->dim();
    for (long d = 0; d <= dim; ++d) {
        ChowClass comp = e.chern.component(d);
        total += (d % 2 == 0) ? comp : -comp;
    }
    return BundleClass(e.rank, total);
}

// c_k(E tensor L) = sum_j C(rank - j, k - j) c_j(E) c_1(L)^{k-j}.
inline BundleClass chern_tensor_line(const BundleClass& e, const BundleClass& line) {
    if (line.rank != 1) throw std::invalid_argument("chern_tensor_line: second factor must be a line bundle");
    if (!e.ambient()->same(*line.ambient()))
        throw std::invalid_argument("chern_tensor_line: ambient mismatch");
    const AmbientPtr& a = e.ambient();
    long dim = a->dim();
    ChowClass t = line.chern.component(1);
    std::vector<ChowClass> tpow;
    tpow.push_back(chow_one(a));
    for (long i = 1; i <= dim; ++i) tpow.push_back(tpow.back() * t);
    ChowClass total(a);
    for (long k = 0; k <= dim; ++k) {
        ChowClass ck(a);
        for (long j = 0; j <= k && j <= e.rank; ++j) {
            ChowClass cj = e.chern.component(j);
            if (cj.is_zero()) continue;
            if (e.rank - j < k - j) continue;
            Int b = binomial(static_cast<unsigned long>(e.rank - j), static_cast<unsigned long>(k - j));
            ck += (cj * tpow[static_cast<std::size_t>(k - j)]).scaled(Rational(b));
        }
        total += ck;
    }
    return BundleClass(e.rank, total);
}

// ---------------------------------------------------------------------------
// Root polynomials: polynomials in formal Chern roots a_1..a_s with
// coefficients in C, truncated by total degree.

namespace roots {

template <typename C>
using Poly = std::map<std::vector<int>, C>;

template <typename C>
void add_term(Poly<C>& p, const std::vector<int>& e, const C& c) {
    auto it = p.find(e);
    if (it == p.end()) p.emplace(e, c);
    else {
        it->second += c;
        if (it->second.is_zero()) p.erase(it);
    }
}

inline long exp_degree(const std::vector<int>& e) {
    long d = 0;
    for (int x : e) d += x;
    return d;
}

// coeff_degree: grading of the coefficient ring (0 for plain rationals).
template <typename C, typename DegFn>
Poly<C> mul(const Poly<C>& a, const Poly<C>& b, long max_deg, DegFn coeff_degree) {
    Poly<C> r;
    for (const auto& [ea, ca] : a) {
        long da = exp_degree(ea) + coeff_degree(ca);
        for (const auto& [eb, cb] : b) {
            if (da + exp_degree(eb) + coeff_degree(cb) > max_deg) continue;
            std::vector<int> e(ea.size());
            for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
            C prod = ca * cb;
            add_term(r, e, prod);
        }
    }
    return r;
}

// Expansion of prod e_i^{m_i} as a polynomial in the roots, coefficients
// in Rational. Memoized per (s, m).
inline const Poly<Rational>& elementary_monomial(int s, const std::vector<int>& m) {
    static std::mutex mu;
    static std::map<std::pair<int, std::vector<int>>, Poly<Rational>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto key = std::make_pair(s, m);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;

    // e_i as a root polynomial.
    auto elem = [&](int i) {
        Poly<Rational> p;
        std::vector<int> idx(static_cast<std::size_t>(i));
        auto rec = [&](auto&& self, int pos, int start) -> void {
            if (pos == i) {
                std::vector<int> e(static_cast<std::size_t>(s), 0);
                for (int v : idx) e[static_cast<std::size_t>(v)] = 1;
                add_term(p, e, Rational(1));
                return;
            }
            for (int v = start; v < s; ++v) {
                idx[static_cast<std::size_t>(pos)] = v;
                self(self, pos + 1, v + 1);
            }
        };
        rec(rec, 0, 0);
        return p;
    };

    Poly<Rational> out;
    add_term(out, std::vector<int>(static_cast<std::size_t>(s), 0), Rational(1));
    auto deg0 = [](const Rational&) { return 0L; };
    for (int i = 1; i <= s; ++i) {
        if (static_cast<std::size_t>(i - 1) >= m.size()) break;
        Poly<Rational> ei = elem(i);
        for (int rep = 0; rep < m[static_cast<std::size_t>(i - 1)]; ++rep)
            out = mul(out, ei, 1L << 30, deg0);
    }
    return cache.emplace(std::move(key), std::move(out)).first->second;
}

// Rewrites a symmetric root polynomial in the elementary symmetric basis:
// result maps (m_1..m_s) for e_1^{m_1}..e_s^{m_s} to coefficients.
template <typename C>
std::map<std::vector<int>, C> symmetric_to_elementary(Poly<C> p, int s) {
    std::map<std::vector<int>, C> out;
    while (!p.empty()) {
        // Lex-greatest exponent; symmetry makes it weakly decreasing.
        auto it = std::prev(p.end());
        std::vector<int> lead = it->first;
        C coeff = it->second;
        for (std::size_t i = 0; i + 1 < lead.size(); ++i)
            if (lead[i] < lead[i + 1])
                throw std::logic_error("symmetric_to_elementary: input not symmetric");
        std::vector<int> m(static_cast<std::size_t>(s), 0);
        for (int i = 0; i < s; ++i) {
            int cur = lead[static_cast<std::size_t>(i)];
            int next = i + 1 < s ? lead[static_cast<std::size_t>(i + 1)] : 0;
            m[static_cast<std::size_t>(i)] = cur - next;
        }
        const Poly<Rational>& expansion = elementary_monomial(s, m);
        for (const auto& [e, r] : expansion) {
            C t = coeff;
            t *= r;
            std::vector<int> key = e;
            auto jt = p.find(key);
            C neg = std::move(t);
            neg = -neg;
            if (jt == p.end()) {
                if (!neg.is_zero()) p.emplace(std::move(key), std::move(neg));
            } else {
                jt->second += neg;
                if (jt->second.is_zero()) p.erase(jt);
            }
        }
        auto ot = out.find(m);
        if (ot == out.end()) out.emplace(std::move(m), std::move(coeff));
        else ot->second += coeff;
    }
    return out;
}

}  // namespace roots

namespace detail {

// A ChowClass-valued coefficient wrapper giving the interface the root
// machinery needs.
struct ClassCoeff {
    ChowClass v;
    bool is_zero() const { return v.is_zero(); }
    ClassCoeff& operator+=(const ClassCoeff& o) { v += o.v; return *this; }
    ClassCoeff& operator*=(const Rational& r) { v = v.scaled(r); return *this; }
    ClassCoeff operator-() const { ClassCoeff c; c.v = -v; return c; }
    friend ClassCoeff operator*(const ClassCoeff& a, const ClassCoeff& b) {
        ClassCoeff c;
        c.v = a.v * b.v;
        return c;
    }
};

// Universal total Chern class of Sym^d of a rank-s bundle, as a
// polynomial in e_1..e_s, truncated beyond total degree max_deg.
inline const std::map<std::vector<int>, Rational>& sym_universal(int s, int d, long max_deg) {
    static std::mutex mu;
    static std::map<std::tuple<int, int, long>, std::map<std::vector<int>, Rational>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto key = std::make_tuple(s, d, max_deg);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;

    auto deg0 = [](const Rational&) { return 0L; };
    roots::Poly<Rational> prod;
    roots::add_term(prod, std::vector<int>(static_cast<std::size_t>(s), 0), Rational(1));
    for (const auto& mults : exponents_of_degree(s, d)) {
        // Root of Sym^d: sum_i m_i alpha_i, so the factor is 1 + sum m_i alpha_i.
        roots::Poly<Rational> factor;
        roots::add_term(factor, std::vector<int>(static_cast<std::size_t>(s), 0), Rational(1));
        for (int i = 0; i < s; ++i) {
            if (mults[static_cast<std::size_t>(i)] == 0) continue;
            std::vector<int> e(static_cast<std::size_t>(s), 0);
            e[static_cast<std::size_t>(i)] = 1;
            roots::add_term(factor, e, Rational(mults[static_cast<std::size_t>(i)]));
        }
        prod = roots::mul(prod, factor, max_deg, deg0);
    }
    auto elem = roots::symmetric_to_elementary(std::move(prod), s);
    return cache.emplace(std::move(key), std::move(elem)).first->second;
}

// Evaluates a universal polynomial in e_1..e_s at the Chern classes of E.
inline ChowClass evaluate_elementary(const std::map<std::vector<int>, Rational>& poly,
                                     const BundleClass& e) {
    const AmbientPtr& a = e.ambient();
    long dim = a->dim();
    ChowClass out(a);
    for (const auto& [m, c] : poly) {
        long deg = 0;
        for (std::size_t i = 0; i < m.size(); ++i) deg += static_cast<long>(i + 1) * m[i];
        if (deg > dim) continue;
        ChowClass term = chow_one(a).scaled(c);
        for (std::size_t i = 0; i < m.size(); ++i)
            for (int rep = 0; rep < m[i]; ++rep) term = term * e.chern.component(static_cast<long>(i + 1));
        out += term;
    }
    return out;
}

}  // namespace detail

// Total Chern class of Sym^d E for rank E <= 4.
inline BundleClass chern_sym(const BundleClass& e, int d) {
    if (d < 0) throw std::invalid_argument("chern_sym: negative power");
    if (e.rank > 4) throw std::invalid_argument("chern_sym: rank above 4 unsupported");
    const AmbientPtr& a = e.ambient();
    if (d == 0) return trivial_bundle(a, 1);
    if (e.rank == 1) {
        // Sym^d of a line bundle is its d-th tensor power.
        ChowClass c1 = e.chern.component(1).scaled(Rational(d));
        return line_bundle(c1);
    }
    long rank_out = binomial(static_cast<unsigned long>(e.rank + d - 1),
                             static_cast<unsigned long>(d)).get_si();
    const auto& uni = detail::sym_universal(static_cast<int>(e.rank), d, a->dim());
    ChowClass total = detail::evaluate_elementary(uni, e);
    return BundleClass(rank_out, total);
}

// Total Chern class of E tensor F. The smaller factor must have rank <= 4;
// its Chern roots are taken formal and each contributes a line twist of
// the other factor.
inline BundleClass chern_tensor(const BundleClass& e, const BundleClass& f) {
    if (!e.ambient()->same(*f.ambient()))
        throw std::invalid_argument("chern_tensor: ambient mismatch");
    const BundleClass& small = e.rank <= f.rank ? e : f;
    const BundleClass& big = e.rank <= f.rank ? f : e;
    if (small.rank > 4) throw std::invalid_argument("chern_tensor: both ranks above 4 unsupported");
    if (small.rank == 1) return chern_tensor_line(big, small);
    const AmbientPtr& a = e.ambient();
    const long dim = a->dim();
    const int s = static_cast<int>(small.rank);

    // Factor for root alpha_i: sum_k c_k(big tensor L_{alpha_i}) as a
    // polynomial in alpha_i with class coefficients.
    auto one_factor = [&](int i) {
        roots::Poly<detail::ClassCoeff> p;
        for (long k = 0; k <= dim; ++k) {
            for (long j = 0; j <= k && j <= big.rank; ++j) {
                ChowClass cj = big.chern.component(j);
                if (cj.is_zero()) continue;
                if (big.rank - j < k - j) continue;
                Int binom = binomial(static_cast<unsigned long>(big.rank - j),
                                     static_cast<unsigned long>(k - j));
                std::vector<int> exp(static_cast<std::size_t>(s), 0);
                exp[static_cast<std::size_t>(i)] = static_cast<int>(k - j);
                detail::ClassCoeff c;
                c.v = cj.scaled(Rational(binom));
                roots::add_term(p, exp, c);
            }
        }
        return p;
    };

    auto cls_deg = [](const detail::ClassCoeff& c) -> long {
        // Classes are inhomogeneous; use the minimum degree for truncation
        // safety (never drops a needed term).
        if (c.v.is_zero()) return 0;
        long d = c.v.terms().begin()->first.degree();
        for (const auto& [k, v] : c.v.terms()) d = std::min(d, k.degree());
        return d;
    };

    roots::Poly<detail::ClassCoeff> prod;
    {
        detail::ClassCoeff one;
        one.v = chow_one(a);
        roots::add_term(prod, std::vector<int>(static_cast<std::size_t>(s), 0), one);
    }
    for (int i = 0; i < s; ++i) prod = roots::mul(prod, one_factor(i), dim, cls_deg);

    auto elem = roots::symmetric_to_elementary(std::move(prod), s);
    // Substitute e_i = c_i(small).
    ChowClass total(a);
    for (const auto& [m, coeff] : elem) {
        ChowClass term = coeff.v;
        for (std::size_t i = 0; i < m.size(); ++i)
            for (int rep = 0; rep < m[i]; ++rep)
                term = term * small.chern.component(static_cast<long>(i + 1));
        total += term;
    }
    return BundleClass(e.rank * f.rank, total);
}

inline BundleClass chern_hom(const BundleClass& e, const BundleClass& f) {
    return chern_tensor(chern_dual(e), f);
}

// Pushforward rule for powers of the exceptional divisor of a blowup along
// a center of codimension delta with normal bundle N:
//   pi_*(E^j) = (-1)^{j-1} s_{j-delta}(N), as a class on the center.
inline ChowClass blowup_excep_push(long j, const BundleClass& n, long delta) {
    if (j < 1) throw std::invalid_argument("blowup_excep_push: j must be >= 1");
    const AmbientPtr& a = n.ambient();
    long idx = j - delta;
    if (idx < 0) return chow_zero(a);
    ChowClass s = segre(n).component(idx);
    return (j % 2 == 1) ? s : -s;
}

}  // namespace folideg
