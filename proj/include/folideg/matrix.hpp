#pragma once

// Exact dense linear algebra over the rationals. Rank and kernel are
// computed by fraction-free (Bareiss) elimination on an integer-scaled
// copy of the matrix, so no intermediate rationals appear during the
// elimination itself.
//
// For the large sparse systems produced by the tangent-space solver there
// is a certified fast path: a modular elimination picks a candidate row
// basis, the kernel of that subsystem is computed exactly, and every
// remaining row is verified exactly against the kernel. The modular step
// is only a heuristic row filter; the result never depends on it.

#include "folideg/rational.hpp"

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

namespace folideg {

class ExactMatrix {
public:
    ExactMatrix(long rows, long cols)
        : rows_(rows), cols_(cols), a_(static_cast<std::size_t>(rows * cols)) {
        if (rows < 0 || cols < 0) throw std::invalid_argument("ExactMatrix: negative size");
    }

    long rows() const { return rows_; }
    long cols() const { return cols_; }

    Rational& at(long i, long j) { return a_[static_cast<std::size_t>(i * cols_ + j)]; }
    const Rational& at(long i, long j) const { return a_[static_cast<std::size_t>(i * cols_ + j)]; }

    ExactMatrix transpose() const {
        ExactMatrix t(cols_, rows_);
        for (long i = 0; i < rows_; ++i)
            for (long j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
        return t;
    }

private:
    long rows_, cols_;
    std::vector<Rational> a_;
};

struct RankKernel {
    long rank = 0;
    std::vector<std::vector<Rational>> kernel;  // basis of the right null space
};

namespace detail {

struct IntEchelon {
    std::vector<std::vector<Int>> rows;  // echelon rows, leading entry at pivot col
    std::vector<long> pivot_cols;
};

// Fraction-free elimination with column pivoting. Entries of the working
// matrix stay integral; at step k they are k x k minors of the input.
inline IntEchelon bareiss_echelon(std::vector<std::vector<Int>> m, long cols) {
    IntEchelon ech;
    if (m.empty()) return ech;
    Int prev = 1;
    std::size_t pr = 0;
    for (long c = 0; c < cols && pr < m.size(); ++c) {
        // Pivot: smallest nonzero absolute value for growth control.
        std::size_t best = m.size();
        for (std::size_t i = pr; i < m.size(); ++i) {
            if (m[i][c] == 0) continue;
            if (best == m.size() || mpz_cmpabs(m[i][c].get_mpz_t(), m[best][c].get_mpz_t()) < 0) best = i;
        }
        if (best == m.size()) continue;
        std::swap(m[pr], m[best]);
        const Int piv = m[pr][c];
        for (std::size_t i = pr + 1; i < m.size(); ++i) {
            const Int f = m[i][c];
            for (long j = c + 1; j < cols; ++j) {
                Int t = piv * m[i][j] - f * m[pr][j];
                mpz_divexact(t.get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
                m[i][j] = std::move(t);
            }
            m[i][c] = 0;
        }
        prev = piv;
        ech.pivot_cols.push_back(c);
        ++pr;
    }
    m.resize(pr);
    ech.rows = std::move(m);
    return ech;
}

inline std::vector<std::vector<Rational>> kernel_from_echelon(const IntEchelon& ech, long cols) {
    std::vector<std::vector<Rational>> kernel;
    std::vector<bool> is_pivot(static_cast<std::size_t>(cols), false);
    for (long c : ech.pivot_cols) is_pivot[static_cast<std::size_t>(c)] = true;
    for (long f = 0; f < cols; ++f) {
        if (is_pivot[static_cast<std::size_t>(f)]) continue;
        std::vector<Rational> x(static_cast<std::size_t>(cols), Rational(0));
        x[static_cast<std::size_t>(f)] = Rational(1);
        for (long i = static_cast<long>(ech.pivot_cols.size()) - 1; i >= 0; --i) {
            long p = ech.pivot_cols[static_cast<std::size_t>(i)];
            const auto& row = ech.rows[static_cast<std::size_t>(i)];
            Rational s(0);
            for (long j = p + 1; j < cols; ++j) {
                if (x[static_cast<std::size_t>(j)].is_zero() || row[static_cast<std::size_t>(j)] == 0)
                    continue;
                s += x[static_cast<std::size_t>(j)] * Rational(row[static_cast<std::size_t>(j)]);
            }
            x[static_cast<std::size_t>(p)] = -s / Rational(row[static_cast<std::size_t>(p)]);
        }
        kernel.push_back(std::move(x));
    }
    return kernel;
}

// Scale a rational row to integers by the lcm of denominators.
inline std::vector<Int> scale_row(const ExactMatrix& m, long i) {
    Int l = 1;
    for (long j = 0; j < m.cols(); ++j) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), m.at(i, j).denominator().get_mpz_t());
    std::vector<Int> row(static_cast<std::size_t>(m.cols()));
    for (long j = 0; j < m.cols(); ++j)
        row[static_cast<std::size_t>(j)] = m.at(i, j).numerator() * divexact(l, m.at(i, j).denominator());
    return row;
}

}  // namespace detail

// Rank plus a kernel basis, by fraction-free elimination.
inline RankKernel matrix_rank_kernel(const ExactMatrix& m) {
    std::vector<std::vector<Int>> work;
    work.reserve(static_cast<std::size_t>(m.rows()));
    for (long i = 0; i < m.rows(); ++i) work.push_back(detail::scale_row(m, i));
    auto ech = detail::bareiss_echelon(std::move(work), m.cols());
    RankKernel rk;
    rk.rank = static_cast<long>(ech.pivot_cols.size());
    rk.kernel = detail::kernel_from_echelon(ech, m.cols());
    return rk;
}

// One particular solution of A x = b (free variables set to zero), or
// nullopt when the system is inconsistent.
inline std::optional<std::vector<Rational>> solve_linear(const ExactMatrix& A,
                                                         const std::vector<Rational>& b) {
    if (static_cast<long>(b.size()) != A.rows())
        throw std::invalid_argument("solve_linear: rhs length mismatch");
    long n = A.cols();
    ExactMatrix aug(A.rows(), n + 1);
    for (long i = 0; i < A.rows(); ++i) {
        for (long j = 0; j < n; ++j) aug.at(i, j) = A.at(i, j);
        aug.at(i, n) = b[static_cast<std::size_t>(i)];
    }
    std::vector<std::vector<Int>> work;
    work.reserve(static_cast<std::size_t>(aug.rows()));
    for (long i = 0; i < aug.rows(); ++i) work.push_back(detail::scale_row(aug, i));

    // Eliminate over the first n columns only.
    detail::IntEchelon ech;
    {
        Int prev = 1;
        std::size_t pr = 0;
        for (long c = 0; c < n && pr < work.size(); ++c) {
            std::size_t best = work.size();
            for (std::size_t i = pr; i < work.size(); ++i) {
                if (work[i][static_cast<std::size_t>(c)] == 0) continue;
                if (best == work.size() ||
                    mpz_cmpabs(work[i][static_cast<std::size_t>(c)].get_mpz_t(),
                           work[best][static_cast<std::size_t>(c)].get_mpz_t()) < 0)
                    best = i;
            }
            if (best == work.size()) continue;
            std::swap(work[pr], work[best]);
            const Int piv = work[pr][static_cast<std::size_t>(c)];
            for (std::size_t i = pr + 1; i < work.size(); ++i) {
                const Int f = work[i][static_cast<std::size_t>(c)];
                for (long j = c + 1; j <= n; ++j) {
                    Int t = piv * work[i][static_cast<std::size_t>(j)] - f * work[pr][static_cast<std::size_t>(j)];
                    mpz_divexact(t.get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
                    work[i][static_cast<std::size_t>(j)] = std::move(t);
                }
                work[i][static_cast<std::size_t>(c)] = 0;
            }
            prev = piv;
            ech.pivot_cols.push_back(c);
            ++pr;
        }
        // Consistency: rows below the pivots must have zero rhs.
        for (std::size_t i = pr; i < work.size(); ++i)
            if (work[i][static_cast<std::size_t>(n)] != 0) return std::nullopt;
        work.resize(pr);
        ech.rows = std::move(work);
    }

    std::vector<Rational> x(static_cast<std::size_t>(n), Rational(0));
    for (long i = static_cast<long>(ech.pivot_cols.size()) - 1; i >= 0; --i) {
        long p = ech.pivot_cols[static_cast<std::size_t>(i)];
        const auto& row = ech.rows[static_cast<std::size_t>(i)];
        Rational s = Rational(row[static_cast<std::size_t>(n)]);
        for (long j = p + 1; j < n; ++j)
            if (!x[static_cast<std::size_t>(j)].is_zero() && row[static_cast<std::size_t>(j)] != 0)
                s -= x[static_cast<std::size_t>(j)] * Rational(row[static_cast<std::size_t>(j)]);
        x[static_cast<std::size_t>(p)] = s / Rational(row[static_cast<std::size_t>(p)]);
    }
    return x;
}

// ---------------------------------------------------------------------------
// Certified sparse kernel dimension.

struct SparseRow {
    std::vector<std::pair<long, Int>> entries;  // (column, value), column-sorted
};

namespace detail {

constexpr std::uint64_t kM31 = 2147483647ULL;  // 2^31 - 1, prime

inline std::uint32_t m31_reduce(std::uint64_t v) {
    v = (v & kM31) + (v >> 31);
    v = (v & kM31) + (v >> 31);
    if (v >= kM31) v -= kM31;
    return static_cast<std::uint32_t>(v);
}

inline std::uint32_t m31_mul(std::uint32_t a, std::uint32_t b) {
    return m31_reduce(static_cast<std::uint64_t>(a) * b);
}

inline std::uint32_t m31_pow(std::uint32_t a, std::uint64_t e) {
    std::uint32_t r = 1;
    while (e) {
        if (e & 1) r = m31_mul(r, a);
        a = m31_mul(a, a);
        e >>= 1;
    }
    return r;
}

inline std::uint32_t m31_inv(std::uint32_t a) { return m31_pow(a, kM31 - 2); }

inline std::uint32_t m31_of(const Int& v) {
    Int m = v % static_cast<long>(kM31);
    long x = m.get_si();
    if (x < 0) x += static_cast<long>(kM31);
    return static_cast<std::uint32_t>(x);
}

}  // namespace detail

// Exact dimension of the right kernel of a sparse integer row system.
// Deterministic; the modular phase only selects candidate rows and the
// final answer is certified by exact arithmetic.
inline long sparse_kernel_dim_certified(const std::vector<SparseRow>& rows, long ncols) {
    using namespace detail;
    if (ncols == 0) return 0;

    // Modular row selection.
    std::vector<std::size_t> selected;
    {
        std::vector<std::vector<std::uint32_t>> ech;  // dense echelon rows mod M31
        std::vector<long> piv;
        std::vector<std::uint32_t> dense(static_cast<std::size_t>(ncols));
        for (std::size_t ri = 0; ri < rows.size(); ++ri) {
            std::fill(dense.begin(), dense.end(), 0u);
            bool any = false;
            for (const auto& [c, v] : rows[ri].entries) {
                std::uint32_t m = m31_of(v);
                dense[static_cast<std::size_t>(c)] = m;
                any = any || m != 0;
            }
            if (!any) continue;
            for (std::size_t k = 0; k < ech.size(); ++k) {
                std::uint32_t f = dense[static_cast<std::size_t>(piv[k])];
                if (f == 0) continue;
                std::uint32_t neg = static_cast<std::uint32_t>(kM31) - f;
                const auto& er = ech[k];
                for (long j = piv[k]; j < ncols; ++j) {
                    if (er[static_cast<std::size_t>(j)] == 0) continue;
                    std::uint64_t t = dense[static_cast<std::size_t>(j)] +
                                      static_cast<std::uint64_t>(neg) * er[static_cast<std::size_t>(j)];
                    dense[static_cast<std::size_t>(j)] = m31_reduce(t);
                }
            }
            long lead = -1;
            for (long j = 0; j < ncols; ++j)
                if (dense[static_cast<std::size_t>(j)] != 0) { lead = j; break; }
            if (lead < 0) continue;
            std::uint32_t inv = m31_inv(dense[static_cast<std::size_t>(lead)]);
            for (long j = lead; j < ncols; ++j)
                dense[static_cast<std::size_t>(j)] = m31_mul(dense[static_cast<std::size_t>(j)], inv);
            // Keep echelon sorted by pivot column.
            std::size_t pos = 0;
            while (pos < piv.size() && piv[pos] < lead) ++pos;
            ech.insert(ech.begin() + static_cast<long>(pos), dense);
            piv.insert(piv.begin() + static_cast<long>(pos), lead);
            selected.push_back(ri);
            if (static_cast<long>(ech.size()) == ncols) break;
        }
    }

    std::vector<bool> in_sel(rows.size(), false);
    for (std::size_t i : selected) in_sel[i] = true;

    for (;;) {
        std::vector<std::vector<Int>> sub;
        sub.reserve(selected.size());
        for (std::size_t i : selected) {
            std::vector<Int> r(static_cast<std::size_t>(ncols));
            for (const auto& [c, v] : rows[i].entries) r[static_cast<std::size_t>(c)] = v;
            sub.push_back(std::move(r));
        }
        auto ech = bareiss_echelon(std::move(sub), ncols);
        auto kernel = kernel_from_echelon(ech, ncols);

        // Integer-clear the kernel vectors for cheap exact verification.
        std::vector<std::vector<Int>> kint;
        kint.reserve(kernel.size());
        for (const auto& v : kernel) {
            Int l = 1;
            for (const auto& x : v) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.denominator().get_mpz_t());
            std::vector<Int> iv(v.size());
            for (std::size_t j = 0; j < v.size(); ++j)
                iv[j] = v[j].numerator() * divexact(l, v[j].denominator());
            kint.push_back(std::move(iv));
        }

        bool violated = false;
        for (std::size_t ri = 0; ri < rows.size() && !violated; ++ri) {
            if (in_sel[ri]) continue;
            for (const auto& kv : kint) {
                Int s = 0;
                for (const auto& [c, v] : rows[ri].entries) s += v * kv[static_cast<std::size_t>(c)];
                if (s != 0) {
                    selected.push_back(ri);
                    in_sel[ri] = true;
                    violated = true;
                    break;
                }
            }
        }
        if (!violated) return static_cast<long>(kernel.size());
    }
}

}  // namespace folideg
