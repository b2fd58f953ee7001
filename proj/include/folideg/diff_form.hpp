#pragma once

// Polynomial-coefficient exterior forms on affine (r+1)-space, plus
// constant multivectors. Components are keyed by strictly increasing
// index tuples; a zero coefficient is never stored.
//
// Sign conventions: a basis contraction acts through the first slots,
//   (i_{e_J} dx_S)(e_K) = dx_S(e_J ^ e_K),
// so i_{e_j}(dx_j ^ dx_k) = dx_k and i_{e_j ^ e_k}(dx_j ^ dx_k) = 1.

#include "folideg/multipoly.hpp"

#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace folideg {

using IndexTuple = std::vector<int>;  // strictly increasing indices

namespace detail {

// Sign of the shuffle sorting (a, b) into one increasing tuple; 0 when the
// tuples intersect. On success `merged` receives the sorted union.
inline int merge_sign(const IndexTuple& a, const IndexTuple& b, IndexTuple& merged) {
    merged.clear();
    merged.reserve(a.size() + b.size());
    std::size_t i = 0, j = 0;
    long inversions = 0;
    while (i < a.size() && j < b.size()) {
        if (a[i] == b[j]) return 0;
        if (a[i] < b[j]) {
            merged.push_back(a[i++]);
        } else {
            // b[j] jumps over the remaining entries of a
            inversions += static_cast<long>(a.size() - i);
            merged.push_back(b[j++]);
        }
    }
    while (i < a.size()) merged.push_back(a[i++]);
    while (j < b.size()) merged.push_back(b[j++]);
    return (inversions % 2 == 0) ? 1 : -1;
}

inline bool is_subset(const IndexTuple& sub, const IndexTuple& sup) {
    std::size_t i = 0;
    for (int s : sup) {
        if (i < sub.size() && sub[i] == s) ++i;
    }
    return i == sub.size();
}

inline IndexTuple tuple_minus(const IndexTuple& sup, const IndexTuple& sub) {
    IndexTuple out;
    out.reserve(sup.size() - sub.size());
    std::size_t i = 0;
    for (int s : sup) {
        if (i < sub.size() && sub[i] == s) ++i;
        else out.push_back(s);
    }
    return out;
}

// Increasing q-subsets of {0,...,n-1} in lexicographic order.
inline std::vector<IndexTuple> index_tuples(int n, int q) {
    std::vector<IndexTuple> out;
    if (q < 0 || q > n) return out;
    IndexTuple cur(q);
    auto rec = [&](auto&& self, int pos, int start) -> void {
        if (pos == q) {
            out.push_back(cur);
            return;
        }
        for (int v = start; v < n; ++v) {
            cur[static_cast<std::size_t>(pos)] = v;
            self(self, pos + 1, v + 1);
        }
    };
    rec(rec, 0, 0);
    return out;
}

}  // namespace detail

class DiffForm {
public:
    using CompMap = std::map<IndexTuple, MultiPoly>;

    DiffForm(int nvars, int degree) : nvars_(nvars), degree_(degree) {
        if (degree < 0 || degree > nvars)
            throw std::invalid_argument("DiffForm: form degree out of range");
    }

    static DiffForm zero(int nvars, int degree) { return DiffForm(nvars, degree); }

    // dx_i
    static DiffForm dx(int nvars, int i) {
        DiffForm f(nvars, 1);
        f.add_component({i}, MultiPoly::constant(nvars, Rational(1)));
        return f;
    }

    // 0-form from a polynomial
    static DiffForm scalar(const MultiPoly& p) {
        DiffForm f(p.nvars(), 0);
        f.add_component({}, p);
        return f;
    }

    // dF of a polynomial
    static DiffForm differential(const MultiPoly& p) {
        DiffForm f(p.nvars(), 1);
        for (int i = 0; i < p.nvars(); ++i) f.add_component({i}, p.derivative(i));
        return f;
    }

    int nvars() const { return nvars_; }
    int degree() const { return degree_; }
    const CompMap& components() const { return comps_; }
    bool is_zero() const { return comps_.empty(); }

    void add_component(const IndexTuple& idx, const MultiPoly& p) {
        if (static_cast<int>(idx.size()) != degree_)
            throw std::invalid_argument("DiffForm: index tuple length mismatch");
        for (std::size_t i = 0; i + 1 < idx.size(); ++i)
            if (idx[i] >= idx[i + 1]) throw std::invalid_argument("DiffForm: indices not increasing");
        if (!idx.empty() && (idx.front() < 0 || idx.back() >= nvars_))
            throw std::invalid_argument("DiffForm: index out of range");
        if (p.nvars() != nvars_) throw std::invalid_argument("DiffForm: coefficient variable count");
        if (p.is_zero()) return;
        auto it = comps_.find(idx);
        if (it == comps_.end()) {
            comps_.emplace(idx, p);
        } else {
            it->second += p;
            if (it->second.is_zero()) comps_.erase(it);
        }
    }

    MultiPoly component(const IndexTuple& idx) const {
        auto it = comps_.find(idx);
        return it == comps_.end() ? MultiPoly::zero(nvars_) : it->second;
    }

    DiffForm& operator+=(const DiffForm& o) {
        check_compat(o);
        for (const auto& [idx, p] : o.comps_) add_component(idx, p);
        return *this;
    }
    DiffForm& operator-=(const DiffForm& o) {
        check_compat(o);
        for (const auto& [idx, p] : o.comps_) add_component(idx, -p);
        return *this;
    }
    friend DiffForm operator+(DiffForm a, const DiffForm& b) { a += b; return a; }
    friend DiffForm operator-(DiffForm a, const DiffForm& b) { a -= b; return a; }

    DiffForm operator-() const {
        DiffForm r(nvars_, degree_);
        for (const auto& [idx, p] : comps_) r.comps_.emplace(idx, -p);
        return r;
    }

    DiffForm scaled(const Rational& c) const {
        DiffForm r(nvars_, degree_);
        if (c.is_zero()) return r;
        for (const auto& [idx, p] : comps_) r.comps_.emplace(idx, p.scaled(c));
        return r;
    }

    DiffForm scaled(const MultiPoly& p) const {
        DiffForm r(nvars_, degree_);
        for (const auto& [idx, q] : comps_) r.add_component(idx, q * p);
        return r;
    }

    friend bool operator==(const DiffForm& a, const DiffForm& b) {
        return a.nvars_ == b.nvars_ && a.degree_ == b.degree_ && a.comps_ == b.comps_;
    }
    friend bool operator!=(const DiffForm& a, const DiffForm& b) { return !(a == b); }

    // Common total degree of all coefficient polynomials.
    Homogeneity coefficient_homogeneity() const {
        if (comps_.empty()) return {Homogeneity::Kind::zero, 0};
        std::optional<int> deg;
        for (const auto& [idx, p] : comps_) {
            Homogeneity h = p.homogeneity();
            if (h.is_mixed()) return {Homogeneity::Kind::mixed, 0};
            if (!deg) deg = h.degree;
            else if (*deg != h.degree) return {Homogeneity::Kind::mixed, 0};
        }
        return {Homogeneity::Kind::homogeneous, *deg};
    }

    std::string str() const {
        if (comps_.empty()) return "0";
        std::ostringstream os;
        bool first = true;
        for (const auto& [idx, p] : comps_) {
            if (!first) os << " + ";
            first = false;
            os << "(" << p.str() << ")";
            for (int i : idx) os << " dx" << i;
        }
        return os.str();
    }

private:
    void check_compat(const DiffForm& o) const {
        if (nvars_ != o.nvars_ || degree_ != o.degree_)
            throw std::invalid_argument("DiffForm: degree/variable mismatch");
    }

    int nvars_;
    int degree_;
    CompMap comps_;
};

class Multivector {
public:
    using CompMap = std::map<IndexTuple, Rational>;

    Multivector(int nvars, int degree) : nvars_(nvars), degree_(degree) {
        if (degree < 0 || degree > nvars)
            throw std::invalid_argument("Multivector: degree out of range");
    }

    // e_{j1} ^ ... ^ e_{jm}
    static Multivector basis(int nvars, const IndexTuple& idx) {
        Multivector v(nvars, static_cast<int>(idx.size()));
        v.add_component(idx, Rational(1));
        return v;
    }

    int nvars() const { return nvars_; }
    int degree() const { return degree_; }
    const CompMap& components() const { return comps_; }
    bool is_zero() const { return comps_.empty(); }

    void add_component(const IndexTuple& idx, const Rational& c) {
        if (static_cast<int>(idx.size()) != degree_)
            throw std::invalid_argument("Multivector: index tuple length mismatch");
        for (std::size_t i = 0; i + 1 < idx.size(); ++i)
            if (idx[i] >= idx[i + 1]) throw std::invalid_argument("Multivector: indices not increasing");
        if (c.is_zero()) return;
        auto it = comps_.find(idx);
        if (it == comps_.end()) {
            comps_.emplace(idx, c);
        } else {
            it->second += c;
            if (it->second.is_zero()) comps_.erase(it);
        }
    }

private:
    int nvars_;
    int degree_;
    CompMap comps_;
};

// a ^ b; a wedge pushing past the top degree gives the zero form.
inline DiffForm wedge(const DiffForm& a, const DiffForm& b) {
    if (a.nvars() != b.nvars()) throw std::invalid_argument("wedge: variable count mismatch");
    int deg = a.degree() + b.degree();
    if (deg > a.nvars()) return DiffForm::zero(a.nvars(), a.nvars());
    DiffForm r(a.nvars(), deg);
    IndexTuple merged;
    for (const auto& [sa, pa] : a.components()) {
        for (const auto& [sb, pb] : b.components()) {
            int sign = detail::merge_sign(sa, sb, merged);
            if (sign == 0) continue;
            MultiPoly prod = pa * pb;
            if (sign < 0) prod = -prod;
            r.add_component(merged, prod);
        }
    }
    return r;
}

inline DiffForm exterior_d(const DiffForm& a) {
    if (a.degree() >= a.nvars()) return DiffForm::zero(a.nvars(), a.nvars());
    DiffForm r(a.nvars(), a.degree() + 1);
    IndexTuple merged;
    for (const auto& [s, p] : a.components()) {
        for (int i = 0; i < a.nvars(); ++i) {
            MultiPoly dp = p.derivative(i);
            if (dp.is_zero()) continue;
            int sign = detail::merge_sign({i}, s, merged);
            if (sign == 0) continue;
            r.add_component(merged, sign > 0 ? dp : -dp);
        }
    }
    return r;
}

// Interior product with the Euler (radial) vector field R = sum x_i d/dx_i.
inline DiffForm contract_euler(const DiffForm& a) {
    if (a.degree() == 0) return DiffForm::zero(a.nvars(), 0);
    DiffForm r(a.nvars(), a.degree() - 1);
    for (const auto& [s, p] : a.components()) {
        for (std::size_t pos = 0; pos < s.size(); ++pos) {
            IndexTuple rest;
            rest.reserve(s.size() - 1);
            for (std::size_t t = 0; t < s.size(); ++t)
                if (t != pos) rest.push_back(s[t]);
            MultiPoly term = p * MultiPoly::variable(a.nvars(), s[pos]);
            if (pos % 2 == 1) term = -term;
            r.add_component(rest, term);
        }
    }
    return r;
}

// Iterated interior product with a constant multivector.
inline DiffForm contract_multivector(const Multivector& v, const DiffForm& a) {
    if (v.nvars() != a.nvars()) throw std::invalid_argument("contract: variable count mismatch");
    if (v.degree() > a.degree()) throw std::invalid_argument("contract: multivector degree exceeds form degree");
    DiffForm r(a.nvars(), a.degree() - v.degree());
    for (const auto& [vj, cv] : v.components()) {
        for (const auto& [s, p] : a.components()) {
            if (!detail::is_subset(vj, s)) continue;
            IndexTuple rest = detail::tuple_minus(s, vj);
            IndexTuple merged;
            int sign = detail::merge_sign(vj, rest, merged);  // merged == s
            MultiPoly term = p.scaled(cv);
            if (sign < 0) term = -term;
            r.add_component(rest, term);
        }
    }
    return r;
}

}  // namespace folideg
