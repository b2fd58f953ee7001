#pragma once

// Projective degrees of the components R(r, d_0..d_q), one calculator per
// family the compactification argument covers:
//   - all degrees 1: Pluecker degree of G(q+1, r+1);
//   - q = 1, equal degrees: Pluecker degree of G(2, S_d);
//   - q = 1, d_0 | d_1: closed binomial formula from the bundle P(Sbar);
//   - (1,...,1,d): Schubert sum over G(q, r+1) against Sym_d of the
//     tautological subbundle;
//   - (2,2,2): blowup of G(3, S_2) along the Veronese image of G(2, S_1);
//   - (2, 2m+1): double blowup of P(S_2) x P(S_{2m+1}) along the
//     bi-Veronese and the residual center inside the first exceptional
//     divisor.
// Every calculator also reports the component dimension and checks that
// each intersection number comes out an integer.

#include "folideg/bundle.hpp"
#include "folideg/chow.hpp"
#include "folideg/weighted.hpp"

#include <chrono>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace folideg {

enum class DegreeFamily {
    grass_family,      // (1,...,1)
    equal_pencil,      // (d,d), d >= 2
    divisible_pencil,  // (d0,d1), d0 < d1, d0 | d1
    linear_plus_one,   // (1,...,1,d), q >= 2, d >= 2
    two_two_two,       // (2,2,2)
    two_odd,           // (2, 2m+1)
    unsupported
};

inline const char* family_name(DegreeFamily f) {
    switch (f) {
        case DegreeFamily::grass_family: return "grassmannian";
        case DegreeFamily::equal_pencil: return "equal-pencil";
        case DegreeFamily::divisible_pencil: return "divisible-pencil";
        case DegreeFamily::linear_plus_one: return "linear-plus-one";
        case DegreeFamily::two_two_two: return "two-two-two";
        case DegreeFamily::two_odd: return "two-odd";
        case DegreeFamily::unsupported: return "unsupported";
    }
    return "unsupported";
}

enum class DegreeStatus { exact, unvalidated_conjectural, unsupported };

inline const char* status_name(DegreeStatus s) {
    switch (s) {
        case DegreeStatus::exact: return "exact";
        case DegreeStatus::unvalidated_conjectural: return "unvalidated-conjectural";
        case DegreeStatus::unsupported: return "unsupported";
    }
    return "unsupported";
}

struct DegreeSpecRequest {
    int r;
    DegreeVector dbar;
};

inline DegreeFamily infer_family(int r, const DegreeVector& dbar) {
    const auto& d = dbar.values();
    int q = dbar.q();
    bool all_ones = true;
    for (int x : d) all_ones = all_ones && x == 1;
    if (all_ones) return q >= 1 && q <= r - 2 ? DegreeFamily::grass_family : DegreeFamily::unsupported;
    if (q == 1) {
        int d0 = d[0], d1 = d[1];
        if (d0 == d1) return DegreeFamily::equal_pencil;
        if (d1 % d0 == 0) return DegreeFamily::divisible_pencil;
        if (d0 == 2 && d1 % 2 == 1) return DegreeFamily::two_odd;
        return DegreeFamily::unsupported;
    }
    bool linear_head = true;
    for (int i = 0; i < q; ++i) linear_head = linear_head && d[static_cast<std::size_t>(i)] == 1;
    if (linear_head && d[static_cast<std::size_t>(q)] >= 2) return DegreeFamily::linear_plus_one;
    if (q == 2 && d[0] == 2 && d[1] == 2 && d[2] == 2) return r >= 3 ? DegreeFamily::two_two_two : DegreeFamily::unsupported;
    return DegreeFamily::unsupported;
}

struct DegreeSpec {
    int r;
    DegreeVector dbar;
    DegreeFamily family;

    DegreeSpec(int r_, DegreeVector dbar_)
        : r(r_), dbar(std::move(dbar_)), family(infer_family(r_, dbar)) {
        if (r < 1) throw std::invalid_argument("DegreeSpec: r must be >= 1");
    }
};

struct DegreeResult {
    Int degree;
    long dimension = 0;
    DegreeFamily method = DegreeFamily::unsupported;
    DegreeStatus status = DegreeStatus::unsupported;
    double millis = 0.0;
};

namespace detail {

// (1 + a h)^e over P^r, through binomials.
inline ChowClass one_plus_ah_power(const AmbientPtr& proj, long a, unsigned long e) {
    ChowClass out(proj);
    for (int i = 0; i <= proj->r; ++i) {
        if (static_cast<unsigned long>(i) > e) break;
        ChowKey key;
        key.h = i;
        out.add_term(key, Rational(binomial(e, static_cast<unsigned long>(i)) * pow_int(Int(a), static_cast<unsigned long>(i))));
    }
    return out;
}

inline Rational integer_check(const Rational& v, const char* where) {
    if (!v.is_integer())
        throw std::logic_error(std::string(where) + ": intersection number is not an integer: " + v.str());
    return v;
}

class Stopwatch {
public:
    Stopwatch() : start_(std::chrono::steady_clock::now()) {}
    double millis() const {
        auto d = std::chrono::steady_clock::now() - start_;
        return std::chrono::duration<double, std::milli>(d).count();
    }

private:
    std::chrono::steady_clock::time_point start_;
};

}  // namespace detail

// deg R(q, 1,...,1) = deg G(q+1, S_1).
inline DegreeResult degree_grass_family(const DegreeSpec& spec) {
    detail::Stopwatch sw;
    int q = spec.dbar.q();
    for (int x : spec.dbar.values())
        if (x != 1) throw std::invalid_argument("degree_grass_family: degrees must all be 1");
    if (q < 1 || q > spec.r - 2) throw std::invalid_argument("degree_grass_family: requires 1 <= q <= r-2");
    DegreeResult out;
    out.degree = grassmannian_plucker_degree(q + 1, spec.r + 1);
    out.dimension = component_dim(spec.r, spec.dbar);
    out.method = DegreeFamily::grass_family;
    out.status = DegreeStatus::exact;
    out.millis = sw.millis();
    return out;
}

// deg R(1, d, d) = deg G(2, S_d) = C(2N_d - 2, N_d) / (N_d - 1).
inline DegreeResult degree_equal_pencil(const DegreeSpec& spec) {
    detail::Stopwatch sw;
    if (spec.dbar.q() != 1 || spec.dbar[0] != spec.dbar[1])
        throw std::invalid_argument("degree_equal_pencil: requires d0 == d1");
    int d = spec.dbar[0];
    if (d == 1) return degree_grass_family(spec);
    long nd = binomial(static_cast<unsigned long>(spec.r + d), static_cast<unsigned long>(spec.r)).get_si() - 1;
    DegreeResult out;
    out.degree = divexact(binomial(static_cast<unsigned long>(2 * nd - 2), static_cast<unsigned long>(nd)),
                          Int(nd - 1));
    out.dimension = component_dim(spec.r, spec.dbar);
    out.method = DegreeFamily::equal_pencil;
    out.status = DegreeStatus::exact;
    out.millis = sw.millis();
    return out;
}

// deg R(r, d0, d1) for d0 | d1, d0 < d1:
//   C(N1+N0-1, N0) - (d1/d0) C(N1+N0-1, N0-1).
inline DegreeResult degree_divisible_pencil(const DegreeSpec& spec) {
    detail::Stopwatch sw;
    if (spec.dbar.q() != 1) throw std::invalid_argument("degree_divisible_pencil: q must be 1");
    long d0 = spec.dbar[0], d1 = spec.dbar[1];
    if (d0 >= d1 || d1 % d0 != 0)
        throw std::invalid_argument("degree_divisible_pencil: requires d0 < d1 with d0 | d1");
    unsigned long n0 = binomial(static_cast<unsigned long>(spec.r + d0), static_cast<unsigned long>(spec.r)).get_ui() - 1;
    unsigned long n1 = binomial(static_cast<unsigned long>(spec.r + d1), static_cast<unsigned long>(spec.r)).get_ui() - 1;
    Int kappa(d1 / d0);
    DegreeResult out;
    out.degree = binomial(n1 + n0 - 1, n0) - kappa * binomial(n1 + n0 - 1, n0 - 1);
    out.dimension = component_dim(spec.r, spec.dbar);
    out.method = DegreeFamily::divisible_pencil;
    out.status = DegreeStatus::exact;
    out.millis = sw.millis();
    return out;
}

// dbar = (1,...,1,d): Schubert sum on G(q, r+1),
//   deg = sum_{i=0}^{g} C(delta, i) int_G c_{g-i}(Sym_d R) sigma_1^i,
// with g = q(r+1-q), N = C(r+d,r) - C(q-1+d,q-1) - 1, delta = N + g.
inline DegreeResult degree_linear_plus_one(const DegreeSpec& spec) {
    detail::Stopwatch sw;
    int q = spec.dbar.q();
    if (q < 2) throw std::invalid_argument("degree_linear_plus_one: q must be >= 2");
    for (int i = 0; i < q; ++i)
        if (spec.dbar[static_cast<std::size_t>(i)] != 1)
            throw std::invalid_argument("degree_linear_plus_one: first q degrees must be 1");
    int d = spec.dbar[static_cast<std::size_t>(q)];
    if (d < 2) throw std::invalid_argument("degree_linear_plus_one: last degree must be >= 2");
    if (q > 4) throw std::invalid_argument("degree_linear_plus_one: q above 4 unsupported");

    auto G = Ambient::grassmannian(q, spec.r + 1);
    long g = static_cast<long>(q) * (spec.r + 1 - q);
    Int N = binomial(static_cast<unsigned long>(spec.r + d), static_cast<unsigned long>(spec.r)) -
            binomial(static_cast<unsigned long>(q - 1 + d), static_cast<unsigned long>(q - 1)) - 1;
    Int delta = N + g;

    BundleClass R = tautological_sub(G);
    BundleClass SdR = chern_sym(R, d);
    ChowClass sigma1 = schubert_class(G, Partition::single_row(1));

    Rational total(0);
    ChowClass s1pow = chow_one(G);
    for (long i = 0; i <= g; ++i) {
        ChowClass term = SdR.chern.component(g - i) * s1pow;
        total += Rational(binomial(delta, static_cast<unsigned long>(i))) * term.integrate();
        if (i < g) s1pow = s1pow * sigma1;
    }

    DegreeResult out;
    out.degree = detail::integer_check(total, "degree_linear_plus_one").to_int();
    out.dimension = component_dim(spec.r, spec.dbar);
    if (out.dimension != delta.get_si())
        throw std::logic_error("degree_linear_plus_one: dimension bookkeeping mismatch");
    out.method = DegreeFamily::linear_plus_one;
    out.status = DegreeStatus::exact;
    out.millis = sw.millis();
    return out;
}

// (2,2,2): the blowup of X = G(3, S_2) along the Veronese image of
// Y = G(2, S_1) resolves the map, and
//   deg = int (pi^* q1 - E)^N
//       = deg G(3, S_2) - sum_{j} C(N,j) 3^{N-j} int_Y sigma_1^{N-j} s_{j-delta}(N_v),
// with N = dim X and s(N_v) = c(Hom(R_Y,Q_Y)) / c(Hom(Sym^2 R_Y, S_2/Sym^2 R_Y)).
inline DegreeResult degree_222(int r) {
    detail::Stopwatch sw;
    if (r < 3) throw std::invalid_argument("degree_222: requires r >= 3");
    long n2 = binomial(static_cast<unsigned long>(r + 2), 2UL).get_si() - 1;  // dim P(S_2)
    long N = 3 * (n2 - 2);                                                    // dim G(3, S_2)
    long dimY = 2L * (r - 1);
    long delta = N - dimY;

    auto Y = Ambient::grassmannian(2, r + 1);
    BundleClass RY = tautological_sub(Y);
    BundleClass QY = tautological_quotient(Y);
    BundleClass TY = chern_hom(RY, QY);
    BundleClass S2R = chern_sym(RY, 2);
    // S_2 / Sym^2 R_Y: quotient of a trivial bundle.
    BundleClass Qbig(n2 + 1 - 3, inverse_total_class(S2R.chern));
    BundleClass TXv = chern_hom(S2R, Qbig);

    ChowClass cN = TXv.chern * inverse_total_class(TY.chern);
    ChowClass sN = inverse_total_class(cN);

    ChowClass sigma1 = schubert_class(Y, Partition::single_row(1));
    Rational correction(0);
    ChowClass s1pow = chow_one(Y);
    std::vector<ChowClass> s1powers;
    for (long i = 0; i <= dimY; ++i) {
        s1powers.push_back(s1pow);
        if (i < dimY) s1pow = s1pow * sigma1;
    }
    for (long j = delta; j <= N; ++j) {
        long i = N - j;  // sigma_1 exponent
        if (i > dimY) continue;
        ChowClass term = s1powers[static_cast<std::size_t>(i)] * sN.component(j - delta);
        Rational val = term.integrate();
        if (val.is_zero()) continue;
        correction += Rational(binomial(static_cast<unsigned long>(N), static_cast<unsigned long>(j)) *
                               pow_int(Int(3), static_cast<unsigned long>(i))) *
                      val;
    }

    Rational total = Rational(grassmannian_plucker_degree(3, static_cast<int>(n2) + 1)) - correction;
    DegreeResult out;
    out.degree = detail::integer_check(total, "degree_222").to_int();
    out.dimension = component_dim(r, DegreeVector({2, 2, 2}));
    if (out.dimension != N) throw std::logic_error("degree_222: dimension bookkeeping mismatch");
    out.method = DegreeFamily::two_two_two;
    out.status = DegreeStatus::exact;
    out.millis = sw.millis();
    return out;
}

// (2, 2m+1): two blowups of X = P(S_2) x P(S_{2m+1}). The first is along
// the bi-Veronese V = {(L^2, L^{2m+1})} = P^r; the second along the residual
// indeterminacy B' = P(N_{V/B}) inside the first exceptional divisor, taken
// with multiplicity m (local equations e^m, f_1..f_u). The pulled-back
// hyperplane class is h1 + h2 - e' - e'' and
//   deg = int (h1 + h2 - e' - e'')^{N_2 + N_{2m+1}}.
// Chern data on V = P^r, frozen against the published tables:
//   c(N_{V/X})   = (1+2h)^{N_2+1} (1+(2m+1)h)^{N_3+1} / (1+h)^{r+1}
//   c(N_{V/B})   = (1+2h)^{N_2+1} / (1+h)^{r+1}          (rank N_2 - r)
//   c(N_{B/X}|V) = (1+(2m+1)h)^{N_3+1}
//   c(N_{B''/X'}) = c(N_{B/X}|V tensor O_{P(N_{V/B})}(1)) . (1 - m zeta).
inline DegreeResult degree_2odd(int r, int m) {
    detail::Stopwatch sw;
    if (r < 2) throw std::invalid_argument("degree_2odd: requires r >= 2");
    if (m < 1) throw std::invalid_argument("degree_2odd: requires m >= 1");
    const long d1 = 2L * m + 1;
    const long n2 = binomial(static_cast<unsigned long>(r + 2), 2UL).get_si() - 1;
    const long n3 = binomial(static_cast<unsigned long>(r + d1), static_cast<unsigned long>(r)).get_si() - 1;
    const unsigned long M = static_cast<unsigned long>(n2 + n3);

    auto V = Ambient::proj_space(r);
    ChowClass inv_tv = inverse_total_class(detail::one_plus_ah_power(V, 1, static_cast<unsigned long>(r + 1)));
    ChowClass cNVX = detail::one_plus_ah_power(V, 2, static_cast<unsigned long>(n2 + 1)) *
                     detail::one_plus_ah_power(V, d1, static_cast<unsigned long>(n3 + 1)) * inv_tv;
    ChowClass cNVB = detail::one_plus_ah_power(V, 2, static_cast<unsigned long>(n2 + 1)) * inv_tv;
    ChowClass cNBXV = detail::one_plus_ah_power(V, d1, static_cast<unsigned long>(n3 + 1));

    const long rankNVB = n2 - r;
    ChowClass sNVX = inverse_total_class(cNVX);

    // Ring of B' = P(N_{V/B}) over P^r; its dimension is n2 - 1.
    std::vector<ChowClass> nvb_chern;
    for (long i = 0; i <= r; ++i) nvb_chern.push_back(cNVB.component(i));
    auto Bp = Ambient::proj_bundle(V, static_cast<int>(rankNVB), nvb_chern);

    // N_{B''/X'} on B'.
    BundleClass NBXV_up(n3, bundle_pullback(Bp, cNBXV));
    ChowClass zeta = zeta_power(Bp, 1);
    BundleClass twisted = chern_tensor_line(NBXV_up, line_bundle(zeta));
    ChowClass cNpp = twisted.chern * (chow_one(Bp) - zeta.scaled(Rational(m)));
    std::vector<ChowClass> sNpp;
    {
        ChowClass s = inverse_total_class(cNpp);
        for (long k = 0; k <= n2 - 1; ++k) sNpp.push_back(s.component(k));
    }

    Rational total = Rational(binomial(M, static_cast<unsigned long>(n2)));

    // e'-only terms, pushed to V through s(N_{V/X}).
    for (long a = 0; a <= r; ++a) {
        for (long b = 0; a + b <= r; ++b) {
            unsigned long c = M - static_cast<unsigned long>(a + b);
            ChowKey key;
            key.h = static_cast<int>(r - a - b);
            Rational sc = sNVX.coeff(key);
            if (sc.is_zero()) continue;
            Int mult = multinomial(M, {static_cast<unsigned long>(a), static_cast<unsigned long>(b), c});
            total -= Rational(mult * pow_int(Int(2), static_cast<unsigned long>(a)) *
                              pow_int(Int(d1), static_cast<unsigned long>(b))) *
                     sc;
        }
    }

    // Terms with e''-powers, pushed to B' and then to V.
    std::vector<ChowClass> zpow;
    zpow.push_back(chow_one(Bp));
    for (long c = 1; c <= n2 - 1; ++c) zpow.push_back(zpow.back() * zeta);
    std::vector<ChowClass> hpow;
    hpow.push_back(chow_one(Bp));
    {
        ChowClass h1 = bundle_pullback(Bp, hyperplane_power(V, 1));
        for (long t = 1; t <= r; ++t) hpow.push_back(hpow.back() * h1);
    }
    for (long a = 0; a <= r; ++a) {
        for (long b = 0; a + b <= r; ++b) {
            for (unsigned long f = static_cast<unsigned long>(n3 + 1);
                 f <= M - static_cast<unsigned long>(a + b); ++f) {
                unsigned long c = M - static_cast<unsigned long>(a + b) - f;
                if (c > static_cast<unsigned long>(n2 - 1)) continue;  // zeta^c s_k integrates to 0 above top
                const ChowClass& sk = sNpp[static_cast<std::size_t>(f - static_cast<unsigned long>(n3) - 1)];
                if (sk.is_zero()) continue;
                ChowClass cls = hpow[static_cast<std::size_t>(a + b)] * zpow[static_cast<std::size_t>(c)] * sk;
                Rational val = cls.integrate();
                if (val.is_zero()) continue;
                Int mult = multinomial(M, {static_cast<unsigned long>(a), static_cast<unsigned long>(b), c, f});
                total -= Rational(mult * Int(m) * pow_int(Int(2), static_cast<unsigned long>(a)) *
                                  pow_int(Int(d1), static_cast<unsigned long>(b))) *
                         val;
            }
        }
    }

    DegreeResult out;
    out.degree = detail::integer_check(total, "degree_2odd").to_int();
    out.dimension = component_dim(r, DegreeVector({2, static_cast<int>(d1)}));
    if (out.dimension != n2 + n3) throw std::logic_error("degree_2odd: dimension bookkeeping mismatch");
    out.method = DegreeFamily::two_odd;
    out.status = r <= 5 ? DegreeStatus::exact : DegreeStatus::unvalidated_conjectural;
    out.millis = sw.millis();
    return out;
}

inline DegreeResult degree_dispatch(const DegreeSpec& spec) {
    switch (spec.family) {
        case DegreeFamily::grass_family: return degree_grass_family(spec);
        case DegreeFamily::equal_pencil: return degree_equal_pencil(spec);
        case DegreeFamily::divisible_pencil: return degree_divisible_pencil(spec);
        case DegreeFamily::linear_plus_one: return degree_linear_plus_one(spec);
        case DegreeFamily::two_two_two: return degree_222(spec.r);
        case DegreeFamily::two_odd:
            return degree_2odd(spec.r, (spec.dbar[1] - 1) / 2);
        case DegreeFamily::unsupported: break;
    }
    DegreeResult out;
    out.dimension = component_dim(spec.r, spec.dbar);
    out.method = DegreeFamily::unsupported;
    out.status = DegreeStatus::unsupported;
    return out;
}

// Hint for rejected requests: the nearest supported family shape.
inline std::string family_hint(int r, const DegreeVector& dbar) {
    int q = dbar.q();
    std::ostringstream os;
    if (q == 1) {
        os << "nearest supported pencils: equal degrees (d,d), divisible (d0,d1) with d0 | d1, or (2,odd)";
    } else if (q >= 2) {
        os << "nearest supported families for q=" << q << ": all degrees 1";
        if (q == 2) os << ", (2,2,2)";
        os << ", or (1,...,1,d)";
    }
    if (infer_family(r, dbar) == DegreeFamily::grass_family)
        os << "; (1,...,1) needs 1 <= q <= r-2";
    return os.str();
}

// ---------------------------------------------------------------------------
// Interpolation check for the (2, 2m+1) family on P^3.

struct InterpRow {
    int m = 0;
    long t = 0;
    Int polynomial_value;
    Int computed_degree;
    bool match = false;
};

struct InterpReport {
    std::vector<InterpRow> rows;
    bool all_match = true;
};

// The degree-27 interpolating polynomial for deg R(3, 2, t), t = 2m+1;
// coefficients of the degree-26 cofactor of (t - 1), constant term last.
inline Int interp_poly_23_value(long t) {
    static const char* kCoeffs[] = {
        "1", "55", "1450", "24616", "305020", "2961172", "23561656",
        "158392960", "918866662", "4670514826", "21033417148", "84615935632",
        "305921226844", "998318576836", "2949392111320", "7903552056256",
        "19229223618721", "41774679574903", "72390849730794", "15945324910344",
        "-541088235621216", "-2539188961011216", "-315410776482528",
        "14933666207688192", "85822791395378688", "-247712474710388736",
        "162893498195312640"};
    Int acc = 0;
    Int tt(t);
    for (const char* c : kCoeffs) acc = acc * tt + Int(c);
    acc *= Int(t) - 1;
    return divexact(acc, Int("3656994324480"));
}

inline InterpReport interpolation_check_23(int m_max) {
    if (m_max < 1) throw std::invalid_argument("interpolation_check_23: m_max must be >= 1");
    InterpReport rep;
    for (int m = 1; m <= m_max; ++m) {
        InterpRow row;
        row.m = m;
        row.t = 2L * m + 1;
        row.polynomial_value = interp_poly_23_value(row.t);
        row.computed_degree = degree_2odd(3, m).degree;
        row.match = row.polynomial_value == row.computed_degree;
        rep.all_match = rep.all_match && row.match;
        rep.rows.push_back(std::move(row));
    }
    return rep;
}

}  // namespace folideg
