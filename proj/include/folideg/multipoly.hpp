#pragma once

// Multivariate polynomials over exact rationals. Terms are stored in a
// map keyed by dense exponent tuples under graded-lex order, so iteration
// is deterministic and output is reproducible. No zero coefficient is
// ever stored; the zero polynomial is the empty term map.

#include "folideg/rational.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace folideg {

using Exponents = std::vector<int>;

struct GradedLexLess {
    bool operator()(const Exponents& a, const Exponents& b) const {
        long da = std::accumulate(a.begin(), a.end(), 0L);
        long db = std::accumulate(b.begin(), b.end(), 0L);
        if (da != db) return da < db;
        return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
    }
};

struct Homogeneity {
    enum class Kind { zero, homogeneous, mixed };
    Kind kind = Kind::zero;
    int degree = 0;  // meaningful only when kind == homogeneous

    bool is_zero() const { return kind == Kind::zero; }
    bool is_mixed() const { return kind == Kind::mixed; }
    // The zero polynomial is homogeneous of every degree.
    bool of_degree(int d) const {
        return kind == Kind::zero || (kind == Kind::homogeneous && degree == d);
    }
};

class MultiPoly {
public:
    using TermMap = std::map<Exponents, Rational, GradedLexLess>;

    explicit MultiPoly(int nvars) : nvars_(nvars) {
        if (nvars < 0) throw std::invalid_argument("MultiPoly: negative variable count");
    }

    static MultiPoly zero(int nvars) { return MultiPoly(nvars); }

    static MultiPoly constant(int nvars, const Rational& c) {
        MultiPoly p(nvars);
        p.add_term(Exponents(nvars, 0), c);
        return p;
    }

    static MultiPoly variable(int nvars, int i) {
        if (i < 0 || i >= nvars) throw std::out_of_range("MultiPoly::variable: index");
        MultiPoly p(nvars);
        Exponents e(nvars, 0);
        e[i] = 1;
        p.add_term(e, Rational(1));
        return p;
    }

    static MultiPoly monomial(int nvars, const Exponents& e, const Rational& c) {
        MultiPoly p(nvars);
        p.add_term(e, c);
        return p;
    }

    int nvars() const { return nvars_; }
    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t term_count() const { return terms_.size(); }

    void add_term(const Exponents& e, const Rational& c) {
        if (static_cast<int>(e.size()) != nvars_)
            throw std::invalid_argument("MultiPoly: exponent tuple length mismatch");
        if (c.is_zero()) return;
        auto it = terms_.find(e);
        if (it == terms_.end()) {
            terms_.emplace(e, c);
        } else {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    Rational coeff(const Exponents& e) const {
        auto it = terms_.find(e);
        return it == terms_.end() ? Rational(0) : it->second;
    }

    MultiPoly& operator+=(const MultiPoly& o) {
        check_vars(o);
        for (const auto& [e, c] : o.terms_) add_term(e, c);
        return *this;
    }
    MultiPoly& operator-=(const MultiPoly& o) {
        check_vars(o);
        for (const auto& [e, c] : o.terms_) add_term(e, -c);
        return *this;
    }
    friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { a += b; return a; }
    friend MultiPoly operator-(MultiPoly a, const MultiPoly& b) { a -= b; return a; }

    MultiPoly operator-() const {
        MultiPoly r(nvars_);
        for (const auto& [e, c] : terms_) r.terms_.emplace(e, -c);
        return r;
    }

    friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
        a.check_vars(b);
        MultiPoly r(a.nvars_);
        Exponents e(a.nvars_);
        for (const auto& [ea, ca] : a.terms_) {
            for (const auto& [eb, cb] : b.terms_) {
                for (int i = 0; i < a.nvars_; ++i) e[i] = ea[i] + eb[i];
                r.add_term(e, ca * cb);
            }
        }
        return r;
    }
    MultiPoly& operator*=(const MultiPoly& o) { *this = *this * o; return *this; }

    MultiPoly scaled(const Rational& c) const {
        MultiPoly r(nvars_);
        if (c.is_zero()) return r;
        for (const auto& [e, t] : terms_) r.terms_.emplace(e, t * c);
        return r;
    }

    MultiPoly pow(unsigned long k) const {
        MultiPoly r = constant(nvars_, Rational(1));
        MultiPoly base = *this;
        while (k > 0) {
            if (k & 1) r = r * base;
            k >>= 1;
            if (k) base = base * base;
        }
        return r;
    }

    MultiPoly derivative(int var) const {
        if (var < 0 || var >= nvars_) throw std::out_of_range("MultiPoly::derivative: index");
        MultiPoly r(nvars_);
        for (const auto& [e, c] : terms_) {
            if (e[var] == 0) continue;
            Exponents f = e;
            f[var] -= 1;
            r.add_term(f, c * Rational(e[var]));
        }
        return r;
    }

    Homogeneity homogeneity() const {
        if (terms_.empty()) return {Homogeneity::Kind::zero, 0};
        long d0 = total_degree_of(terms_.begin()->first);
        for (const auto& [e, c] : terms_) {
            if (total_degree_of(e) != d0) return {Homogeneity::Kind::mixed, 0};
        }
        return {Homogeneity::Kind::homogeneous, static_cast<int>(d0)};
    }

    // Largest total degree among terms; nullopt for the zero polynomial.
    std::optional<int> total_degree() const {
        if (terms_.empty()) return std::nullopt;
        return static_cast<int>(total_degree_of(terms_.rbegin()->first));
    }

    // Substitutes images[i] for variable i. All images must share a common
    // variable count, which becomes the variable count of the result.
    MultiPoly substitute(const std::vector<MultiPoly>& images) const {
        if (static_cast<int>(images.size()) != nvars_)
            throw std::invalid_argument("MultiPoly::substitute: wrong image count");
        int out_vars = images.empty() ? 0 : images[0].nvars();
        for (const auto& g : images)
            if (g.nvars() != out_vars)
                throw std::invalid_argument("MultiPoly::substitute: image variable counts differ");
        MultiPoly r(out_vars);
        // Power cache per variable.
        std::vector<std::vector<MultiPoly>> pows(nvars_);
        auto power = [&](int i, int k) -> const MultiPoly& {
            auto& cache = pows[i];
            if (cache.empty()) cache.push_back(MultiPoly::constant(out_vars, Rational(1)));
            while (static_cast<int>(cache.size()) <= k) cache.push_back(cache.back() * images[i]);
            return cache[k];
        };
        for (const auto& [e, c] : terms_) {
            MultiPoly t = MultiPoly::constant(out_vars, c);
            for (int i = 0; i < nvars_; ++i)
                if (e[i] > 0) t = t * power(i, e[i]);
            r += t;
        }
        return r;
    }

    friend bool operator==(const MultiPoly& a, const MultiPoly& b) {
        return a.nvars_ == b.nvars_ && a.terms_ == b.terms_;
    }
    friend bool operator!=(const MultiPoly& a, const MultiPoly& b) { return !(a == b); }

    std::string str(const std::string& varname = "x") const {
        if (terms_.empty()) return "0";
        std::ostringstream os;
        bool first = true;
        for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
            const Rational& c = it->second;
            if (!first) os << (c.sign() < 0 ? " - " : " + ");
            else if (c.sign() < 0) os << "-";
            first = false;
            Rational ac = c.sign() < 0 ? -c : c;
            bool has_vars = std::any_of(it->first.begin(), it->first.end(), [](int k) { return k > 0; });
            if (ac != Rational(1) || !has_vars) os << ac.str();
            bool first_var = !((ac != Rational(1)) || !has_vars);
            for (int i = 0; i < nvars_; ++i) {
                int k = it->first[i];
                if (k == 0) continue;
                if (!first_var) os << "*";
                first_var = false;
                os << varname << i;
                if (k > 1) os << "^" << k;
            }
        }
        return os.str();
    }

private:
    static long total_degree_of(const Exponents& e) {
        return std::accumulate(e.begin(), e.end(), 0L);
    }
    void check_vars(const MultiPoly& o) const {
        if (nvars_ != o.nvars_)
            throw std::invalid_argument("MultiPoly: variable count mismatch");
    }

    int nvars_;
    TermMap terms_;
};

inline Homogeneity poly_is_homogeneous(const MultiPoly& f) { return f.homogeneity(); }

namespace detail {
inline void exponents_rec(int nvars, int pos, int remaining, Exponents& cur,
                          std::vector<Exponents>& out) {
    if (pos == nvars - 1) {
        cur[pos] = remaining;
        out.push_back(cur);
        return;
    }
    for (int k = remaining; k >= 0; --k) {
        cur[pos] = k;
        exponents_rec(nvars, pos + 1, remaining - k, cur, out);
    }
}
}  // namespace detail

// All exponent tuples of total degree d in nvars variables, lex-descending.
inline std::vector<Exponents> exponents_of_degree(int nvars, int d) {
    std::vector<Exponents> out;
    if (nvars == 0) {
        if (d == 0) out.push_back({});
        return out;
    }
    Exponents cur(nvars, 0);
    detail::exponents_rec(nvars, 0, d, cur, out);
    return out;
}

// All exponent tuples with weights . alpha == e, lex-descending in alpha.
inline std::vector<Exponents> weighted_exponents(const std::vector<int>& weights, int e) {
    std::vector<Exponents> out;
    int n = static_cast<int>(weights.size());
    Exponents cur(n, 0);
    auto rec = [&](auto&& self, int pos, int remaining) -> void {
        if (pos == n) {
            if (remaining == 0) out.push_back(cur);
            return;
        }
        int w = weights[pos];
        if (w <= 0) throw std::invalid_argument("weighted_exponents: nonpositive weight");
        for (int k = remaining / w; k >= 0; --k) {
            cur[pos] = k;
            self(self, pos + 1, remaining - k * w);
        }
        cur[pos] = 0;
    };
    rec(rec, 0, e);
    return out;
}

}  // namespace folideg
