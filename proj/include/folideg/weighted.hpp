#pragma once

// Weighted-homogeneous polynomial spaces in variables y_0..y_q graded by
// a nondecreasing degree vector, the group GL(q, dbar) of weighted
// self-maps with invertible linear part, fiber/component dimensions of
// the parameterizing map, and base-locus membership.

#include "folideg/foliation.hpp"
#include "folideg/matrix.hpp"
#include "folideg/multipoly.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <stdexcept>
#include <vector>

namespace folideg {

class DegreeVector {
public:
    explicit DegreeVector(std::vector<int> d) : d_(std::move(d)) {
        if (d_.empty()) throw std::invalid_argument("DegreeVector: empty");
        for (std::size_t i = 0; i < d_.size(); ++i) {
            if (d_[i] < 1) throw std::invalid_argument("DegreeVector: degrees must be positive");
            if (i > 0 && d_[i] < d_[i - 1])
                throw std::invalid_argument("DegreeVector: must be nondecreasing");
        }
    }

    static DegreeVector sorted(std::vector<int> d) {
        std::sort(d.begin(), d.end());
        return DegreeVector(std::move(d));
    }

    const std::vector<int>& values() const { return d_; }
    int q() const { return static_cast<int>(d_.size()) - 1; }
    int operator[](std::size_t i) const { return d_[i]; }
    std::size_t size() const { return d_.size(); }

    // Distinct values e_1 < ... < e_k with multiplicities n_1..n_k.
    struct Blocks {
        std::vector<int> e;
        std::vector<int> n;
        std::vector<std::vector<int>> members;  // variable indices per block
    };
    Blocks blocks() const {
        Blocks b;
        for (std::size_t i = 0; i < d_.size(); ++i) {
            if (b.e.empty() || b.e.back() != d_[i]) {
                b.e.push_back(d_[i]);
                b.n.push_back(0);
                b.members.emplace_back();
            }
            b.n.back()++;
            b.members.back().push_back(static_cast<int>(i));
        }
        return b;
    }

    friend bool operator==(const DegreeVector& a, const DegreeVector& b) { return a.d_ == b.d_; }

private:
    std::vector<int> d_;
};

// N(q, dbar, e): number of monomials y^alpha with dbar . alpha = e,
// by direct bounded enumeration.
inline Int weighted_dim(int q, const DegreeVector& dbar, int e) {
    if (dbar.q() != q) throw std::invalid_argument("weighted_dim: q mismatch");
    if (e < 0) throw std::invalid_argument("weighted_dim: negative degree");
    return Int(static_cast<long>(weighted_exponents(dbar.values(), e).size()));
}

// Coefficients 0..e_max of prod_{i=0}^{q} 1/(1 - t^{d_i}).
inline std::vector<Int> hilbert_coeffs(const DegreeVector& dbar, int e_max) {
    if (e_max < 0) throw std::invalid_argument("hilbert_coeffs: negative bound");
    std::vector<Int> h(static_cast<std::size_t>(e_max) + 1, Int(0));
    h[0] = 1;
    for (int d : dbar.values())
        for (int e = d; e <= e_max; ++e) h[static_cast<std::size_t>(e)] += h[static_cast<std::size_t>(e - d)];
    return h;
}

// dim of the generic fiber of rho: sum_j (N(q, dbar, d_j) - 1).
inline long fiber_dim(int q, const DegreeVector& dbar) {
    long s = 0;
    for (int dj : dbar.values()) s += weighted_dim(q, dbar, dj).get_si() - 1;
    return s;
}

// dim R(r, dbar) = sum_j (C(r+d_j, r) - 1) - fiber_dim.
inline long component_dim(int r, const DegreeVector& dbar) {
    long s = 0;
    for (int dj : dbar.values())
        s += binomial(static_cast<unsigned long>(r + dj), static_cast<unsigned long>(r)).get_si() - 1;
    return s - fiber_dim(dbar.q(), dbar);
}

// True iff dF_0 ^ ... ^ dF_q vanishes identically, i.e. every maximal
// minor of the Jacobian matrix is the zero polynomial.
inline bool base_locus_member(const std::vector<MultiPoly>& F, int r) {
    if (F.empty()) throw std::invalid_argument("base_locus_member: empty tuple");
    if (F[0].nvars() != r + 1) throw std::invalid_argument("base_locus_member: variable count mismatch");
    return jacobian_form(F).is_zero();
}

// A polynomial self-map of C^{q+1} whose i-th component is weighted
// homogeneous of type dbar and degree d_i.
class WeightedMap {
public:
    WeightedMap(DegreeVector dbar, std::vector<MultiPoly> comps)
        : dbar_(std::move(dbar)), comps_(std::move(comps)) {
        int n = dbar_.q() + 1;
        if (static_cast<int>(comps_.size()) != n)
            throw std::invalid_argument("WeightedMap: component count mismatch");
        for (int i = 0; i < n; ++i) {
            if (comps_[static_cast<std::size_t>(i)].nvars() != n)
                throw std::invalid_argument("WeightedMap: variable count mismatch");
            for (const auto& [e, c] : comps_[static_cast<std::size_t>(i)].terms()) {
                long w = 0;
                for (int j = 0; j < n; ++j) w += static_cast<long>(e[static_cast<std::size_t>(j)]) * dbar_[static_cast<std::size_t>(j)];
                if (w != dbar_[static_cast<std::size_t>(i)])
                    throw std::invalid_argument("WeightedMap: component not weighted homogeneous of its degree");
            }
        }
    }

    static WeightedMap identity(const DegreeVector& dbar) {
        int n = dbar.q() + 1;
        std::vector<MultiPoly> comps;
        comps.reserve(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) comps.push_back(MultiPoly::variable(n, i));
        return WeightedMap(dbar, std::move(comps));
    }

    const DegreeVector& dbar() const { return dbar_; }
    const std::vector<MultiPoly>& components() const { return comps_; }

    // Linear part at 0 as a dense matrix (rows: components, cols: variables).
    ExactMatrix linear_part() const {
        int n = dbar_.q() + 1;
        ExactMatrix m(n, n);
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) {
                Exponents e(static_cast<std::size_t>(n), 0);
                e[static_cast<std::size_t>(j)] = 1;
                m.at(i, j) = comps_[static_cast<std::size_t>(i)].coeff(e);
            }
        }
        return m;
    }

    friend bool operator==(const WeightedMap& a, const WeightedMap& b) {
        return a.dbar_ == b.dbar_ && a.comps_ == b.comps_;
    }

private:
    DegreeVector dbar_;
    std::vector<MultiPoly> comps_;
};

// f after g.
inline WeightedMap glqd_compose(const WeightedMap& f, const WeightedMap& g) {
    if (!(f.dbar() == g.dbar())) throw std::invalid_argument("glqd_compose: type mismatch");
    std::vector<MultiPoly> comps;
    comps.reserve(f.components().size());
    for (const auto& fi : f.components()) comps.push_back(fi.substitute(g.components()));
    return WeightedMap(f.dbar(), std::move(comps));
}

// Two-sided inverse in GL(q, dbar), by solving the weight blocks in
// increasing order: within one block f is linear plus terms in strictly
// lower-weight variables only.
inline WeightedMap glqd_invert(const WeightedMap& f) {
    const DegreeVector& dbar = f.dbar();
    int n = dbar.q() + 1;
    auto blocks = dbar.blocks();
    std::vector<MultiPoly> inv(static_cast<std::size_t>(n), MultiPoly::zero(n));

    for (std::size_t bl = 0; bl < blocks.e.size(); ++bl) {
        const auto& members = blocks.members[bl];
        int nb = static_cast<int>(members.size());

        // Split each block component into its in-block linear part and the
        // lower-weight remainder.
        ExactMatrix M(nb, nb);
        std::vector<MultiPoly> rest(static_cast<std::size_t>(nb), MultiPoly::zero(n));
        for (int bi = 0; bi < nb; ++bi) {
            const MultiPoly& fi = f.components()[static_cast<std::size_t>(members[static_cast<std::size_t>(bi)])];
            for (const auto& [e, c] : fi.terms()) {
                int block_var = -1;
                bool in_block_linear = false;
                for (int bj = 0; bj < nb; ++bj) {
                    const std::size_t vj = static_cast<std::size_t>(members[static_cast<std::size_t>(bj)]);
                    if (e[vj] == 1) {
                        long total = 0;
                        for (int t = 0; t < n; ++t) total += e[static_cast<std::size_t>(t)];
                        if (total == 1) {
                            block_var = bj;
                            in_block_linear = true;
                        }
                        break;
                    }
                }
                if (in_block_linear) M.at(bi, block_var) += c;
                else rest[static_cast<std::size_t>(bi)].add_term(e, c);
            }
        }

        // Invert the block matrix.
        std::vector<std::vector<Rational>> Minv(static_cast<std::size_t>(nb),
                                                std::vector<Rational>(static_cast<std::size_t>(nb)));
        for (int col = 0; col < nb; ++col) {
            std::vector<Rational> rhs(static_cast<std::size_t>(nb), Rational(0));
            rhs[static_cast<std::size_t>(col)] = Rational(1);
            auto sol = solve_linear(M, rhs);
            if (!sol) throw std::domain_error("glqd_invert: singular linear part");
            for (int row = 0; row < nb; ++row) Minv[static_cast<std::size_t>(row)][static_cast<std::size_t>(col)] = (*sol)[static_cast<std::size_t>(row)];
        }

        // t_i = z_i - rest_i(previous blocks' inverses); then apply Minv.
        std::vector<MultiPoly> images;
        images.reserve(static_cast<std::size_t>(n));
        for (int j = 0; j < n; ++j) {
            // Lower-weight variables map to the already computed inverse
            // components; in-block and higher variables are unused in rest.
            if (!inv[static_cast<std::size_t>(j)].is_zero()) images.push_back(inv[static_cast<std::size_t>(j)]);
            else images.push_back(MultiPoly::variable(n, j));
        }
        std::vector<MultiPoly> t(static_cast<std::size_t>(nb), MultiPoly::zero(n));
        for (int bi = 0; bi < nb; ++bi) {
            MultiPoly zi = MultiPoly::variable(n, members[static_cast<std::size_t>(bi)]);
            t[static_cast<std::size_t>(bi)] = zi - rest[static_cast<std::size_t>(bi)].substitute(images);
        }
        for (int bi = 0; bi < nb; ++bi) {
            MultiPoly acc = MultiPoly::zero(n);
            for (int bj = 0; bj < nb; ++bj)
                acc += t[static_cast<std::size_t>(bj)].scaled(Minv[static_cast<std::size_t>(bi)][static_cast<std::size_t>(bj)]);
            inv[static_cast<std::size_t>(members[static_cast<std::size_t>(bi)])] = acc;
        }
    }
    return WeightedMap(dbar, std::move(inv));
}

// The unique f in GL(q, dbar) with G_j = f_j(F_0, ..., F_q), when one
// exists. Each component is an exact linear solve over the weighted
// monomials in the F's.
inline std::optional<WeightedMap> fiber_witness(const std::vector<MultiPoly>& F,
                                                const std::vector<MultiPoly>& G) {
    if (F.size() != G.size() || F.empty())
        throw std::invalid_argument("fiber_witness: tuple size mismatch");
    int nv = F[0].nvars();
    std::vector<int> degs;
    for (std::size_t i = 0; i < F.size(); ++i) {
        Homogeneity hf = F[i].homogeneity();
        Homogeneity hg = G[i].homogeneity();
        if (hf.is_mixed() || hf.is_zero()) throw std::invalid_argument("fiber_witness: F not homogeneous");
        if (hg.is_mixed() || hg.is_zero()) return std::nullopt;
        if (hf.degree != hg.degree) return std::nullopt;
        degs.push_back(hf.degree);
    }
    DegreeVector dbar{degs};
    if (jacobian_form(F).is_zero()) throw std::domain_error("fiber_witness: F lies in the base locus");

    int n = dbar.q() + 1;
    // Cache of F^alpha per encountered alpha.
    std::map<Exponents, MultiPoly> fpow;
    auto f_power = [&](const Exponents& alpha) -> const MultiPoly& {
        auto it = fpow.find(alpha);
        if (it != fpow.end()) return it->second;
        MultiPoly p = MultiPoly::constant(nv, Rational(1));
        for (int i = 0; i < n; ++i)
            if (alpha[static_cast<std::size_t>(i)] > 0)
                p = p * F[static_cast<std::size_t>(i)].pow(static_cast<unsigned long>(alpha[static_cast<std::size_t>(i)]));
        return fpow.emplace(alpha, std::move(p)).first->second;
    };

    std::vector<MultiPoly> comps;
    comps.reserve(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) {
        auto alphas = weighted_exponents(dbar.values(), dbar[static_cast<std::size_t>(j)]);
        // Rows: monomials of S_{d_j} in the x's; columns: alphas.
        std::map<Exponents, std::map<std::size_t, Rational>> rows;
        for (std::size_t a = 0; a < alphas.size(); ++a)
            for (const auto& [mono, c] : f_power(alphas[a]).terms()) rows[mono][a] += c;
        for (const auto& [mono, c] : G[static_cast<std::size_t>(j)].terms()) rows[mono];
        ExactMatrix A(static_cast<long>(rows.size()), static_cast<long>(alphas.size()));
        std::vector<Rational> b(rows.size(), Rational(0));
        long ri = 0;
        for (const auto& [mono, entries] : rows) {
            for (const auto& [a, c] : entries) A.at(ri, static_cast<long>(a)) = c;
            b[static_cast<std::size_t>(ri)] = G[static_cast<std::size_t>(j)].coeff(mono);
            ++ri;
        }
        auto sol = solve_linear(A, b);
        if (!sol) return std::nullopt;
        MultiPoly fj(n);
        for (std::size_t a = 0; a < alphas.size(); ++a) fj.add_term(alphas[a], (*sol)[a]);
        comps.push_back(std::move(fj));
    }
    return WeightedMap(dbar, std::move(comps));
}

}  // namespace folideg
