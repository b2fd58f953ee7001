#pragma once

// Rational q-forms omega = i_R(dF_0 ^ ... ^ dF_q), the decomposability and
// integrability checks that make them define foliations, division of
// 1-forms by a Jacobian, and the Zariski tangent-space dimension of the
// foliation scheme at omega.

#include "folideg/diff_form.hpp"
#include "folideg/matrix.hpp"

#include <map>
#include <optional>
#include <stdexcept>
#include <tuple>
#include <vector>

namespace folideg {

// dF_0 ^ ... ^ dF_q
inline DiffForm jacobian_form(const std::vector<MultiPoly>& F) {
    if (F.empty()) throw std::invalid_argument("jacobian_form: empty tuple");
    int nv = F[0].nvars();
    DiffForm theta = DiffForm::differential(F[0]);
    for (std::size_t i = 1; i < F.size(); ++i) {
        if (F[i].nvars() != nv) throw std::invalid_argument("jacobian_form: variable count mismatch");
        theta = wedge(theta, DiffForm::differential(F[i]));
    }
    return theta;
}

// omega = i_R(dF_0 ^ ... ^ dF_q) for homogeneous F_i. The coefficients come
// out homogeneous of degree sum(d_i) - q.
inline DiffForm omega_from_polys(const std::vector<MultiPoly>& F) {
    if (F.empty()) throw std::invalid_argument("omega_from_polys: empty tuple");
    int nv = F[0].nvars();
    if (static_cast<int>(F.size()) > nv)
        throw std::invalid_argument("omega_from_polys: more polynomials than variables");
    for (const auto& f : F) {
        if (f.nvars() != nv) throw std::invalid_argument("omega_from_polys: variable count mismatch");
        Homogeneity h = f.homogeneity();
        if (h.is_mixed() || h.is_zero())
            throw std::invalid_argument("omega_from_polys: inputs must be nonzero homogeneous");
    }
    return contract_euler(jacobian_form(F));
}

// i_R d(eta) + d(i_R eta) == (q + d) eta, for eta homogeneous with
// coefficient degree d. Holds identically; exposed as a self-test hook.
inline bool euler_identity_check(const DiffForm& eta) {
    Homogeneity h = eta.coefficient_homogeneity();
    if (h.is_mixed()) throw std::invalid_argument("euler_identity_check: coefficients not homogeneous");
    if (h.is_zero()) return true;
    int q = eta.degree();
    int d = h.degree;
    DiffForm lhs = contract_euler(exterior_d(eta)) + exterior_d(contract_euler(eta));
    return lhs == eta.scaled(Rational(q + d));
}

struct FoliationConditions {
    bool plucker = false;
    bool integrable = false;
};

// Pluecker decomposability (i_v omega ^ omega = 0) and integrability
// (i_v omega ^ d omega = 0) over the standard basis of Lambda^{q-1}; by
// linearity this settles the conditions for every multivector. For q = 1
// the empty contraction is the identity, so the checks reduce to
// omega ^ omega = 0 (vacuous) and omega ^ d omega = 0.
inline FoliationConditions check_foliation_conditions(const DiffForm& omega, int q, int r) {
    if (omega.is_zero()) throw std::invalid_argument("check_foliation_conditions: zero form");
    if (omega.degree() != q || omega.nvars() != r + 1)
        throw std::invalid_argument("check_foliation_conditions: degree/variable mismatch");
    if (!contract_euler(omega).is_zero())
        throw std::domain_error("check_foliation_conditions: form not annihilated by the Euler field");
    FoliationConditions out{true, true};
    DiffForm domega = exterior_d(omega);
    for (const auto& J : detail::index_tuples(r + 1, q - 1)) {
        DiffForm c = contract_multivector(Multivector::basis(r + 1, J), omega);
        if (!wedge(c, omega).is_zero()) out.plucker = false;
        if (!wedge(c, domega).is_zero()) out.integrable = false;
        if (!out.plucker && !out.integrable) break;
    }
    return out;
}

// Writes eta = sum a_i dF_i with homogeneous a_i when possible. The solve
// runs over the monomial basis of each candidate degree; inconsistent
// systems yield nullopt. Degrees that would force a_i into negative degree
// simply drop that a_i.
inline std::optional<std::vector<MultiPoly>> divide_by_jacobian(const DiffForm& eta,
                                                                const std::vector<MultiPoly>& F) {
    if (eta.degree() != 1) throw std::invalid_argument("divide_by_jacobian: eta must be a 1-form");
    int nv = eta.nvars();
    Homogeneity he = eta.coefficient_homogeneity();
    if (he.is_mixed()) throw std::invalid_argument("divide_by_jacobian: eta not homogeneous");
    std::vector<int> degs;
    for (const auto& f : F) {
        if (f.nvars() != nv) throw std::invalid_argument("divide_by_jacobian: variable count mismatch");
        Homogeneity h = f.homogeneity();
        if (h.is_mixed() || h.is_zero())
            throw std::invalid_argument("divide_by_jacobian: F must be nonzero homogeneous");
        degs.push_back(h.degree);
    }
    if (he.is_zero()) return std::vector<MultiPoly>(F.size(), MultiPoly::zero(nv));
    int e = he.degree;

    // Unknowns: coefficients of a_i, degree e - d_i + 1 each.
    struct Var {
        std::size_t i;
        Exponents mono;
    };
    std::vector<Var> vars;
    for (std::size_t i = 0; i < F.size(); ++i) {
        int da = e - degs[i] + 1;
        if (da < 0) continue;
        for (const auto& m : exponents_of_degree(nv, da)) vars.push_back({i, m});
    }

    // Equations: match each component of eta = sum a_i dF_i.
    std::map<std::pair<int, Exponents>, std::map<std::size_t, Rational>> rows;
    for (std::size_t v = 0; v < vars.size(); ++v) {
        const MultiPoly dFi_times_m =
            MultiPoly::monomial(nv, vars[v].mono, Rational(1));
        for (int comp = 0; comp < nv; ++comp) {
            MultiPoly contrib = dFi_times_m * F[vars[v].i].derivative(comp);
            for (const auto& [mono, c] : contrib.terms()) rows[{comp, mono}][v] += c;
        }
    }
    for (int comp = 0; comp < nv; ++comp) {
        MultiPoly target = eta.component({comp});
        for (const auto& [mono, c] : target.terms()) rows[{comp, mono}];  // ensure row exists
    }

    ExactMatrix A(static_cast<long>(rows.size()), static_cast<long>(vars.size()));
    std::vector<Rational> b(rows.size(), Rational(0));
    long ri = 0;
    for (const auto& [key, entries] : rows) {
        for (const auto& [v, c] : entries) A.at(ri, static_cast<long>(v)) = c;
        b[static_cast<std::size_t>(ri)] = eta.component({key.first}).coeff(key.second);
        ++ri;
    }
    auto sol = solve_linear(A, b);
    if (!sol) return std::nullopt;
    std::vector<MultiPoly> a(F.size(), MultiPoly::zero(nv));
    for (std::size_t v = 0; v < vars.size(); ++v)
        a[vars[v].i].add_term(vars[v].mono, (*sol)[v]);
    DiffForm recon(nv, 1);
    for (std::size_t i = 0; i < F.size(); ++i)
        recon += DiffForm::differential(F[i]).scaled(a[i]);
    if (recon != eta) return std::nullopt;
    return a;
}

// ---------------------------------------------------------------------------
// Zariski tangent space of the foliation scheme at omega.

struct TangentSystem {
    long nvars = 0;                 // unknown count: coefficients of omega'
    std::vector<SparseRow> rows;    // stacked i_R rows + linearized conditions
};

// Assembles the exact linear system on the coefficient space of twisted
// q-forms omega' of coefficient degree d+1:
//   i_R omega' = 0   (imposed as rows),
//   i(v_J) omega' ^ omega + i(v_J) omega ^ omega' = 0,
//   i(v_J) omega' ^ d omega + i(v_J) omega ^ d omega' = 0
// for every basis multivector v_J of degree q-1. For q = 1 the first
// family is identically zero and the second is replaced by the equivalent
// condition d omega ^ d omega' = 0.
inline TangentSystem build_tangent_system(const DiffForm& omega, int q, int r, int d) {
    if (omega.degree() != q || omega.nvars() != r + 1)
        throw std::invalid_argument("tangent system: degree/variable mismatch");
    if (omega.is_zero()) throw std::invalid_argument("tangent system: zero form");
    if (!contract_euler(omega).is_zero())
        throw std::domain_error("tangent system: omega not annihilated by the Euler field");
    if (!omega.coefficient_homogeneity().of_degree(d + 1))
        throw std::invalid_argument("tangent system: omega coefficients must have degree d+1");

    int nv = r + 1;
    const auto tuples = detail::index_tuples(nv, q);
    const auto monos = exponents_of_degree(nv, d + 1);

    DiffForm domega = exterior_d(omega);
    std::vector<Multivector> contractions;
    if (q >= 2)
        for (const auto& J : detail::index_tuples(nv, q - 1))
            contractions.push_back(Multivector::basis(nv, J));

    // Row key: (family, component tuple, monomial).
    using RowKey = std::tuple<int, IndexTuple, Exponents>;
    std::map<RowKey, std::map<long, Rational>> rows;

    auto scatter = [&rows](int family, const DiffForm& f, long var) {
        for (const auto& [idx, p] : f.components())
            for (const auto& [mono, c] : p.terms()) rows[{family, idx, mono}][var] += c;
    };

    long var = 0;
    for (const auto& S : tuples) {
        for (const auto& m : monos) {
            DiffForm basis(nv, q);
            basis.add_component(S, MultiPoly::monomial(nv, m, Rational(1)));
            scatter(0, contract_euler(basis), var);
            if (q == 1) {
                scatter(1, wedge(domega, exterior_d(basis)), var);
            } else {
                DiffForm dbasis = exterior_d(basis);
                for (std::size_t jj = 0; jj < contractions.size(); ++jj) {
                    DiffForm cb = contract_multivector(contractions[jj], basis);
                    DiffForm co = contract_multivector(contractions[jj], omega);
                    scatter(static_cast<int>(1 + 2 * jj), wedge(cb, omega) + wedge(co, basis), var);
                    scatter(static_cast<int>(2 + 2 * jj), wedge(cb, domega) + wedge(co, dbasis), var);
                }
            }
            ++var;
        }
    }

    TangentSystem sys;
    sys.nvars = var;
    sys.rows.reserve(rows.size());
    for (const auto& [key, entries] : rows) {
        SparseRow row;
        Int l = 1;
        for (const auto& [col, c] : entries)
            mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.denominator().get_mpz_t());
        for (const auto& [col, c] : entries) {
            Int v = c.numerator() * divexact(l, c.denominator());
            if (v != 0) row.entries.emplace_back(col, std::move(v));
        }
        if (!row.entries.empty()) sys.rows.push_back(std::move(row));
    }
    return sys;
}

// Dense view of the tangent system, for desk-scale inspection and tests.
inline ExactMatrix tangent_system_matrix(const DiffForm& omega, int q, int r, int d) {
    TangentSystem sys = build_tangent_system(omega, q, r, d);
    ExactMatrix m(static_cast<long>(sys.rows.size()), sys.nvars);
    for (std::size_t i = 0; i < sys.rows.size(); ++i)
        for (const auto& [c, v] : sys.rows[i].entries)
            m.at(static_cast<long>(i), c) = Rational(v);
    return m;
}

// Dimension of the projective Zariski tangent space at omega: the kernel
// dimension of the tangent system minus one (projectivization through
// omega itself).
inline long zariski_tangent_dim(const DiffForm& omega, int q, int r, int d) {
    TangentSystem sys = build_tangent_system(omega, q, r, d);
    long kernel = sparse_kernel_dim_certified(sys.rows, sys.nvars);
    return kernel - 1;
}

}  // namespace folideg
