#pragma once

// Chow rings with exact rational coefficients, in three ambient flavors:
//   - Grassmannian G(k,n): basis of Schubert classes sigma_lambda,
//     lambda inside the k x (n-k) box, multiplied through the Pieri rule
//     with Jacobi-Trudi expansion for general products;
//   - projective space P^r: basis h^a, a <= r;
//   - projective bundle P(E) over one of the above: basis (base) * zeta^b
//     with zeta reduced by the Grothendieck relation of E.
//
// Conventions: sigma_1 = c_1(Q) on a Grassmannian, zeta = c_1(O_{P(E)}(1))
// with O(-1) the tautological subbundle of the pullback of E, and
// pi_*(zeta^{rank E - 1 + j}) = s_j(E).

#include "folideg/partition.hpp"
#include "folideg/rational.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <sstream>
#include <stdexcept>
#include <utility>
#include <vector>

namespace folideg {

struct Ambient;
using AmbientPtr = std::shared_ptr<const Ambient>;

struct ChowKey {
    Partition lam;  // Grassmannian part
    int h = 0;      // projective-space exponent
    int zeta = 0;   // bundle fiber exponent

    friend bool operator<(const ChowKey& a, const ChowKey& b) {
        if (a.zeta != b.zeta) return a.zeta < b.zeta;
        if (a.h != b.h) return a.h < b.h;
        return a.lam < b.lam;
    }
    friend bool operator==(const ChowKey& a, const ChowKey& b) {
        return a.zeta == b.zeta && a.h == b.h && a.lam == b.lam;
    }
    long degree() const { return lam.weight() + h + zeta; }
};

class ChowClass {
public:
    ChowClass() = default;
    explicit ChowClass(AmbientPtr ambient) : ambient_(std::move(ambient)) {}

    const AmbientPtr& ambient() const { return ambient_; }
    const std::map<ChowKey, Rational>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    void add_term(const ChowKey& k, const Rational& c);  // defined after Ambient

    Rational coeff(const ChowKey& k) const {
        auto it = terms_.find(k);
        return it == terms_.end() ? Rational(0) : it->second;
    }

    ChowClass& operator+=(const ChowClass& o);
    ChowClass& operator-=(const ChowClass& o);
    friend ChowClass operator+(ChowClass a, const ChowClass& b) { a += b; return a; }
    friend ChowClass operator-(ChowClass a, const ChowClass& b) { a -= b; return a; }
    ChowClass operator-() const {
        ChowClass r(ambient_);
        for (const auto& [k, c] : terms_) r.terms_.emplace(k, -c);
        return r;
    }
    ChowClass scaled(const Rational& c) const {
        ChowClass r(ambient_);
        if (c.is_zero()) return r;
        for (const auto& [k, v] : terms_) r.terms_.emplace(k, v * c);
        return r;
    }

    friend ChowClass operator*(const ChowClass& a, const ChowClass& b);
    ChowClass& operator*=(const ChowClass& o) { *this = *this * o; return *this; }

    ChowClass pow(unsigned long e) const;

    // Graded piece of the given codimension.
    ChowClass component(long d) const {
        ChowClass r(ambient_);
        for (const auto& [k, c] : terms_)
            if (k.degree() == d) r.terms_.emplace(k, c);
        return r;
    }

    long max_degree() const {
        long d = 0;
        for (const auto& [k, c] : terms_) d = std::max(d, k.degree());
        return d;
    }

    Rational integrate() const;  // coefficient of the top class

    friend bool operator==(const ChowClass& a, const ChowClass& b) { return a.terms_ == b.terms_; }
    friend bool operator!=(const ChowClass& a, const ChowClass& b) { return !(a == b); }

    std::string str() const;

private:
    AmbientPtr ambient_;
    std::map<ChowKey, Rational> terms_;
};

struct Ambient {
    enum class Kind { grassmannian, proj_space, proj_bundle };
    Kind kind = Kind::proj_space;

    int k = 0, n = 0;  // G(k, n)
    int r = 0;         // P^r

    // proj_bundle data: P(E) -> base with E of rank fiber_rank and total
    // Chern class sum(fiber_chern), classes over the base ambient.
    AmbientPtr base;
    int fiber_rank = 0;
    std::vector<ChowClass> fiber_chern;  // graded components c_0, c_1, ...

    long dim() const {
        switch (kind) {
            case Kind::grassmannian: return static_cast<long>(k) * (n - k);
            case Kind::proj_space: return r;
            case Kind::proj_bundle: return base->dim() + fiber_rank - 1;
        }
        return 0;
    }

    bool same(const Ambient& o) const {
        if (kind != o.kind) return false;
        switch (kind) {
            case Kind::grassmannian: return k == o.k && n == o.n;
            case Kind::proj_space: return r == o.r;
            case Kind::proj_bundle:
                return fiber_rank == o.fiber_rank && base->same(*o.base) &&
                       fiber_chern == o.fiber_chern;
        }
        return false;
    }

    static AmbientPtr grassmannian(int k, int n) {
        if (k < 0 || k > n) throw std::invalid_argument("Ambient: G(k,n) requires 0 <= k <= n");
        auto a = std::make_shared<Ambient>();
        a->kind = Kind::grassmannian;
        a->k = k;
        a->n = n;
        return a;
    }

    static AmbientPtr proj_space(int r) {
        if (r < 0) throw std::invalid_argument("Ambient: negative projective dimension");
        auto a = std::make_shared<Ambient>();
        a->kind = Kind::proj_space;
        a->r = r;
        return a;
    }

    static AmbientPtr proj_bundle(AmbientPtr base_ambient, int rank,
                                  std::vector<ChowClass> chern_components) {
        if (!base_ambient || base_ambient->kind == Kind::proj_bundle)
            throw std::invalid_argument("Ambient: bundle base must be a Grassmannian or P^r");
        if (rank < 1) throw std::invalid_argument("Ambient: bundle rank must be positive");
        auto a = std::make_shared<Ambient>();
        a->kind = Kind::proj_bundle;
        a->base = std::move(base_ambient);
        a->fiber_rank = rank;
        a->fiber_chern = std::move(chern_components);
        return a;
    }
};

// --- basic constructors ----------------------------------------------------

inline ChowClass chow_zero(const AmbientPtr& a) { return ChowClass(a); }

inline ChowClass chow_one(const AmbientPtr& a) {
    ChowClass c(a);
    c.add_term({}, Rational(1));
    return c;
}

inline ChowClass schubert_class(const AmbientPtr& a, const Partition& lam) {
    if (a->kind != Ambient::Kind::grassmannian)
        throw std::invalid_argument("schubert_class: ambient is not a Grassmannian");
    ChowClass c(a);
    ChowKey key;
    key.lam = lam;
    c.add_term(key, Rational(1));
    return c;
}

inline ChowClass hyperplane_power(const AmbientPtr& a, int e) {
    if (a->kind != Ambient::Kind::proj_space)
        throw std::invalid_argument("hyperplane_power: ambient is not a projective space");
    ChowClass c(a);
    ChowKey key;
    key.h = e;
    c.add_term(key, Rational(1));
    return c;
}

// zeta^e on a projective bundle.
inline ChowClass zeta_power(const AmbientPtr& a, int e);

// Pullback of a base class to a projective bundle over it.
inline ChowClass bundle_pullback(const AmbientPtr& bundle, const ChowClass& base_class) {
    if (bundle->kind != Ambient::Kind::proj_bundle)
        throw std::invalid_argument("bundle_pullback: ambient is not a bundle");
    if (!base_class.ambient() || !base_class.ambient()->same(*bundle->base))
        throw std::invalid_argument("bundle_pullback: class not over the bundle base");
    ChowClass out(bundle);
    for (const auto& [k, c] : base_class.terms()) out.add_term(k, c);
    return out;
}

// --- member definitions that need Ambient ----------------------------------

inline void ChowClass::add_term(const ChowKey& key, const Rational& c) {
    if (!ambient_) throw std::logic_error("ChowClass: no ambient");
    if (c.is_zero()) return;
    // Ambient truncation.
    switch (ambient_->kind) {
        case Ambient::Kind::grassmannian:
            if (key.h != 0 || key.zeta != 0)
                throw std::invalid_argument("ChowClass: key has non-Grassmannian parts");
            if (!key.lam.fits_box(ambient_->k, ambient_->n - ambient_->k)) return;
            break;
        case Ambient::Kind::proj_space:
            if (!key.lam.empty() || key.zeta != 0)
                throw std::invalid_argument("ChowClass: key has non-projective parts");
            if (key.h > ambient_->r) return;
            break;
        case Ambient::Kind::proj_bundle: {
            const Ambient& b = *ambient_->base;
            if (b.kind == Ambient::Kind::grassmannian) {
                if (key.h != 0) throw std::invalid_argument("ChowClass: unexpected h part");
                if (!key.lam.fits_box(b.k, b.n - b.k)) return;
            } else {
                if (!key.lam.empty()) throw std::invalid_argument("ChowClass: unexpected lambda part");
                if (key.h > b.r) return;
            }
            if (key.degree() > ambient_->dim()) return;
            break;
        }
    }
    auto it = terms_.find(key);
    if (it == terms_.end()) terms_.emplace(key, c);
    else {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

inline ChowClass& ChowClass::operator+=(const ChowClass& o) {
    if (!ambient_) { *this = o; return *this; }
    if (!o.ambient_) return *this;
    if (!ambient_->same(*o.ambient_)) throw std::invalid_argument("ChowClass: ambient mismatch");
    for (const auto& [k, c] : o.terms_) add_term(k, c);
    return *this;
}

inline ChowClass& ChowClass::operator-=(const ChowClass& o) {
    if (!ambient_) { *this = -o; return *this; }
    if (!o.ambient_) return *this;
    if (!ambient_->same(*o.ambient_)) throw std::invalid_argument("ChowClass: ambient mismatch");
    for (const auto& [k, c] : o.terms_) add_term(k, -c);
    return *this;
}

// --- Pieri rule and Schubert multiplication --------------------------------

// sigma_lambda . sigma_m inside the k x w box.
inline std::vector<Partition> pieri_partitions(const Partition& lam, int m, int k, int w) {
    std::vector<Partition> out;
    if (m == 0) {
        out.push_back(lam);
        return out;
    }
    std::vector<int> mu(static_cast<std::size_t>(k), 0);
    auto rec = [&](auto&& self, int row, int remaining) -> void {
        if (row == k) {
            if (remaining == 0) out.push_back(Partition(std::vector<int>(mu)));
            return;
        }
        int lo = lam.part(row);
        int hi = row == 0 ? w : std::min(lam.part(row - 1), mu[static_cast<std::size_t>(row - 1)]);
        // horizontal strip: lam_row <= mu_row <= lam_{row-1}
        if (row > 0) hi = std::min(hi, lam.part(row - 1));
        for (int v = std::min(hi, lo + remaining); v >= lo; --v) {
            mu[static_cast<std::size_t>(row)] = v;
            self(self, row + 1, remaining - (v - lo));
        }
        mu[static_cast<std::size_t>(row)] = 0;
    };
    rec(rec, 0, m);
    return out;
}

inline ChowClass pieri(const AmbientPtr& a, const Partition& lam, int m) {
    if (a->kind != Ambient::Kind::grassmannian)
        throw std::invalid_argument("pieri: ambient is not a Grassmannian");
    if (m < 0) throw std::invalid_argument("pieri: negative strip");
    ChowClass out(a);
    for (const auto& mu : pieri_partitions(lam, m, a->k, a->n - a->k)) {
        ChowKey key;
        key.lam = mu;
        out.add_term(key, Rational(1));
    }
    return out;
}

namespace detail {

// sigma_lam . sigma_mu by Jacobi-Trudi expansion of sigma_mu into
// one-row classes and iterated Pieri products.
inline ChowClass schubert_pair_product(const AmbientPtr& a, const Partition& lam,
                                       const Partition& mu) {
    int ell = mu.length();
    if (ell == 0) return schubert_class(a, lam);
    // Permutations of {0..ell-1} with signs; ell <= k <= small.
    std::vector<int> perm(static_cast<std::size_t>(ell));
    for (int i = 0; i < ell; ++i) perm[static_cast<std::size_t>(i)] = i;
    ChowClass total(a);
    do {
        int sign = 1;
        for (int i = 0; i < ell; ++i)
            for (int j = i + 1; j < ell; ++j)
                if (perm[static_cast<std::size_t>(i)] > perm[static_cast<std::size_t>(j)]) sign = -sign;
        std::vector<int> rows;
        bool zero = false;
        for (int i = 0; i < ell; ++i) {
            int idx = mu.part(i) + perm[static_cast<std::size_t>(i)] - i;
            if (idx < 0) { zero = true; break; }
            rows.push_back(idx);
        }
        if (zero) continue;
        ChowClass term = schubert_class(a, lam);
        for (int mrow : rows) {
            if (mrow == 0) continue;
            ChowClass next(a);
            for (const auto& [key, c] : term.terms())
                next += pieri(a, key.lam, mrow).scaled(c);
            term = std::move(next);
            if (term.is_zero()) break;
        }
        total += sign > 0 ? term : -term;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return total;
}

}  // namespace detail

inline ChowClass schubert_mul(const ChowClass& a, const ChowClass& b) {
    if (!a.ambient() || !b.ambient() || !a.ambient()->same(*b.ambient()))
        throw std::invalid_argument("schubert_mul: ambient mismatch");
    const AmbientPtr& amb = a.ambient();
    ChowClass out(amb);
    for (const auto& [ka, ca] : a.terms())
        for (const auto& [kb, cb] : b.terms()) {
            // Expand the factor with fewer rows through Jacobi-Trudi.
            const Partition& lam = ka.lam.length() >= kb.lam.length() ? ka.lam : kb.lam;
            const Partition& mu = ka.lam.length() >= kb.lam.length() ? kb.lam : ka.lam;
            out += detail::schubert_pair_product(amb, lam, mu).scaled(ca * cb);
        }
    return out;
}

// --- multiplication dispatch ------------------------------------------------

namespace detail {
// Product of two base keys (no zeta part) in the base ambient of a bundle,
// returned as a class over the base.
inline ChowClass base_key_product(const AmbientPtr& base, const ChowKey& x, const ChowKey& y) {
    if (base->kind == Ambient::Kind::grassmannian) {
        return schubert_pair_product(base, x.lam, y.lam);
    }
    ChowClass out(base);
    ChowKey key;
    key.h = x.h + y.h;
    out.add_term(key, Rational(1));
    return out;
}
}  // namespace detail

inline ChowClass operator*(const ChowClass& a, const ChowClass& b) {
    if (!a.ambient() || !b.ambient() || !a.ambient()->same(*b.ambient()))
        throw std::invalid_argument("ChowClass: ambient mismatch in product");
    const AmbientPtr& amb = a.ambient();
    switch (amb->kind) {
        case Ambient::Kind::grassmannian:
            return schubert_mul(a, b);
        case Ambient::Kind::proj_space: {
            ChowClass out(amb);
            for (const auto& [ka, ca] : a.terms())
                for (const auto& [kb, cb] : b.terms()) {
                    ChowKey key;
                    key.h = ka.h + kb.h;
                    out.add_term(key, ca * cb);
                }
            return out;
        }
        case Ambient::Kind::proj_bundle: {
            // Multiply base parts, add zeta exponents, then reduce zeta by
            // the Grothendieck relation zeta^e = -sum_{i>=1} c_i(E) zeta^{e-i}.
            std::map<int, ChowClass> by_zeta;  // classes over the base, keyed by zeta exponent
            for (const auto& [ka, ca] : a.terms())
                for (const auto& [kb, cb] : b.terms()) {
                    int z = ka.zeta + kb.zeta;
                    ChowClass prod = detail::base_key_product(amb->base, ka, kb).scaled(ca * cb);
                    auto it = by_zeta.find(z);
                    if (it == by_zeta.end()) by_zeta.emplace(z, std::move(prod));
                    else it->second += prod;
                }
            const int e = amb->fiber_rank;
            ChowClass out(amb);
            while (!by_zeta.empty()) {
                auto it = std::prev(by_zeta.end());
                int z = it->first;
                ChowClass cls = std::move(it->second);
                by_zeta.erase(it);
                if (cls.is_zero()) continue;
                if (z < e) {
                    for (const auto& [k, c] : cls.terms()) {
                        ChowKey key = k;
                        key.zeta = z;
                        out.add_term(key, c);
                    }
                    continue;
                }
                for (int i = 1; i <= e && i < static_cast<int>(amb->fiber_chern.size()); ++i) {
                    const ChowClass& ci = amb->fiber_chern[static_cast<std::size_t>(i)];
                    if (ci.is_zero()) continue;
                    ChowClass red = (cls * ci).scaled(Rational(-1));
                    auto jt = by_zeta.find(z - i);
                    if (jt == by_zeta.end()) by_zeta.emplace(z - i, std::move(red));
                    else jt->second += red;
                }
            }
            return out;
        }
    }
    throw std::logic_error("ChowClass: unknown ambient");
}

inline ChowClass ChowClass::pow(unsigned long e) const {
    ChowClass r = chow_one(ambient_);
    ChowClass base = *this;
    while (e > 0) {
        if (e & 1) r = r * base;
        e >>= 1;
        if (e) base = base * base;
    }
    return r;
}

inline ChowClass zeta_power(const AmbientPtr& a, int e) {
    if (a->kind != Ambient::Kind::proj_bundle)
        throw std::invalid_argument("zeta_power: ambient is not a bundle");
    if (e < 0) throw std::invalid_argument("zeta_power: negative exponent");
    ChowClass z(a);
    ChowKey key;
    key.zeta = 1;
    z.add_term(key, Rational(1));
    if (e == 0) return chow_one(a);
    return z.pow(static_cast<unsigned long>(e));
}

// --- Segre classes of the fiber bundle and pushforward ----------------------

// Segre classes s_0..s_max of a bundle on its base ring, from the total
// Chern class components: s(E) = c(E)^{-1}.
inline std::vector<ChowClass> segre_components(const AmbientPtr& base,
                                               const std::vector<ChowClass>& chern, long max_deg) {
    std::vector<ChowClass> s;
    s.reserve(static_cast<std::size_t>(max_deg) + 1);
    s.push_back(chow_one(base));
    for (long d = 1; d <= max_deg; ++d) {
        ChowClass acc(base);
        for (long i = 1; i <= d && i < static_cast<long>(chern.size()); ++i) {
            if (chern[static_cast<std::size_t>(i)].is_zero()) continue;
            acc += chern[static_cast<std::size_t>(i)] * s[static_cast<std::size_t>(d - i)];
        }
        s.push_back(-acc);
    }
    return s;
}

// pi_* from P(E) to the base: pi_*(zeta^j . base) = s_{j - rank + 1}(E) . base.
inline ChowClass proj_bundle_push(const ChowClass& a) {
    const AmbientPtr& amb = a.ambient();
    if (!amb || amb->kind != Ambient::Kind::proj_bundle)
        throw std::invalid_argument("proj_bundle_push: ambient is not a bundle");
    const AmbientPtr& base = amb->base;
    long max_s = base->dim();
    auto segre = segre_components(base, amb->fiber_chern, max_s);
    ChowClass out(base);
    for (const auto& [k, c] : a.terms()) {
        long j = k.zeta - amb->fiber_rank + 1;
        if (j < 0 || j > max_s) continue;
        ChowKey base_key = k;
        base_key.zeta = 0;
        ChowClass lifted(base);
        lifted.add_term(base_key, c);
        out += lifted * segre[static_cast<std::size_t>(j)];
    }
    return out;
}

inline Rational ChowClass::integrate() const {
    if (!ambient_) return Rational(0);
    switch (ambient_->kind) {
        case Ambient::Kind::grassmannian: {
            ChowKey top;
            top.lam = Partition::box(ambient_->k, ambient_->n - ambient_->k);
            return coeff(top);
        }
        case Ambient::Kind::proj_space: {
            ChowKey top;
            top.h = ambient_->r;
            return coeff(top);
        }
        case Ambient::Kind::proj_bundle:
            return proj_bundle_push(*this).integrate();
    }
    return Rational(0);
}

inline std::string ChowClass::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [k, c] : terms_) {
        if (!first) os << " + ";
        first = false;
        os << c.str();
        if (!k.lam.empty()) os << "*s" << k.lam.str();
        if (k.h) os << "*h^" << k.h;
        if (k.zeta) os << "*z^" << k.zeta;
    }
    return os.str();
}

// Degree of G(k,n) under the Pluecker embedding:
//   N! * prod_{i=0}^{k-1} i! / (n-k+i)!   with N = k(n-k).
inline Int grassmannian_plucker_degree(int k, int n) {
    if (k < 0 || k > n) throw std::invalid_argument("grassmannian_plucker_degree: bad (k,n)");
    unsigned long N = static_cast<unsigned long>(k) * static_cast<unsigned long>(n - k);
    Int deg = factorial(N);
    for (int i = 0; i < k; ++i) {
        deg *= factorial(static_cast<unsigned long>(i));
        deg = divexact(deg, factorial(static_cast<unsigned long>(n - k + i)));
    }
    return deg;
}

}  // namespace folideg
