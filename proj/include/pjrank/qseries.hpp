#pragma once

// q-series primitives, exact where finite and rigorously enclosed where
// infinite.
//
//   (a;q)_k   = 1                          k = 0
//             = (1-a)(1-aq)...(1-aq^{k-1})  k > 0
//             = 1/((1-aq^{-1})...(1-aq^{k})) k < 0
//   [n k]_q   = (q;q)_n / ((q;q)_k (q;q)_{n-k}),  a polynomial in q
//   (a;q)_inf = lim_k (a;q)_k, enclosed via the tail bracket
//                prod_{k>=N}(1-aq^k)  in  [1 - aq^N/(1-q), 1]
//               once every remaining factor lies in (0,1); the finitely
//               many leading factors outside (0,1) are multiplied exactly.
//
// The alternating series (Andrews' Q with second index 1)
//
//   Q_{q,l,1}(x) = sum_n (-1)^n x^{ln} q^{n(n+1)(2l+1)/2 - n} (1-xq^{2n+1})
//                  / ((q;q)_n (xq^{n+1};q)_inf)
//
// is evaluated with (1-xq^{2n+1})/(xq^{n+1};q)_inf rewritten as the
// reciprocal of the *punctured* product prod_{j>=0, j!=n}(1-xq^{n+1+j}).
// The two writings agree wherever both are defined, and the punctured one
// stays finite when xq^{2n+1} = 1 (which happens at x = 1/q, a point the
// marginal rank laws do hit).  Truncation uses the term-ratio bound
//
//   |t_{n+1}/t_n| <= x^l q^{(2l+1)(n+1)-1} / ((1-q^{n+1})(1-xq^{2n+1}))
//
// valid and decreasing once xq^{n+1} < 1, followed by a geometric tail.
//
// The same value is computed by the nested positive-term sum
//
//   sum_{m_1>=...>=m_{l-1}>=0} q^{m_1^2+...+m_{l-1}^2} (qx)^{m_1+...+m_{l-1}}
//                              / prod_{j=1}^{l-1} (q;q)_{m_j - m_{j+1}}
//
// (m_l = 0), which is the primary evaluator for the rank laws: all terms
// are positive and the tail bound is elementary.  The specialisation
// x = q^{s-1} gives rank_multisum(q, l, s).

#include "pjrank/enclosure.hpp"
#include "pjrank/rational.hpp"

#include <stdexcept>
#include <vector>

namespace pjrank {

inline Rat qpoch_finite(const Rat& a, const Rat& q, long k) {
    Rat prod(1);
    if (k >= 0) {
        Rat aq = a;
        for (long j = 0; j < k; ++j) {
            prod *= (1 - aq);
            aq *= q;
        }
    } else {
        if (q == 0) throw std::domain_error("qpoch_finite: q = 0 with k < 0");
        Rat aq = a / q;
        for (long j = 0; j < -k; ++j) {
            Rat f = 1 - aq;
            if (f == 0) throw std::domain_error("qpoch_finite: vanishing factor in k < 0 branch");
            prod /= f;
            aq /= q;
        }
    }
    return prod;
}

// --- integer polynomials (ascending coefficients) ---------------------------

using IntPoly = std::vector<Int>;

inline IntPoly poly_zero() { return {Int(0)}; }

inline void poly_trim(IntPoly& p) {
    while (p.size() > 1 && p.back() == 0) p.pop_back();
}

inline IntPoly poly_add(const IntPoly& a, const IntPoly& b) {
    IntPoly out(std::max(a.size(), b.size()), Int(0));
    for (size_t i = 0; i < a.size(); ++i) out[i] += a[i];
    for (size_t i = 0; i < b.size(); ++i) out[i] += b[i];
    poly_trim(out);
    return out;
}

inline IntPoly poly_mul(const IntPoly& a, const IntPoly& b) {
    IntPoly out(a.size() + b.size() - 1, Int(0));
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
    poly_trim(out);
    return out;
}

// multiply by q^s
inline IntPoly poly_shift(const IntPoly& a, long s) {
    if (a.size() == 1 && a[0] == 0) return a;
    IntPoly out(a.size() + s, Int(0));
    for (size_t i = 0; i < a.size(); ++i) out[i + s] = a[i];
    return out;
}

inline Rat poly_eval(const IntPoly& a, const Rat& q) {
    Rat acc(0);
    for (size_t i = a.size(); i-- > 0;) acc = acc * q + a[i];
    return acc;
}

inline long poly_degree(const IntPoly& a) {
    for (size_t i = a.size(); i-- > 0;)
        if (a[i] != 0) return static_cast<long>(i);
    return -1;  // zero polynomial
}

// Gaussian binomial [n k]_q as a polynomial, via the Pascal recurrence
// [n k] = [n-1 k] + q^{n-k} [n-1 k-1].  Out-of-range (k < 0 or k > n)
// returns the zero polynomial, matching the combinatorial convention.
inline IntPoly qbinom_poly(long n, long k) {
    if (n < 0 || k < 0 || k > n) return poly_zero();
    std::vector<IntPoly> row(static_cast<size_t>(k) + 1, poly_zero());
    row[0] = IntPoly{Int(1)};
    for (long m = 1; m <= n; ++m) {
        for (long j = std::min(m, k); j >= 1; --j) {
            // row[j] currently holds [m-1 j], row[j-1] holds [m-1 j-1]
            row[j] = poly_add(row[j], poly_shift(row[j - 1], m - j));
        }
    }
    return row[k];
}

// [n k]_q evaluated exactly at rational q (product form; handles q = 1).
inline Rat qbinom(long n, long k, const Rat& q) {
    if (n < 0 || k < 0 || k > n) return Rat(0);
    if (q == 1) {
        Int b;
        mpz_bin_uiui(b.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
        return Rat(b);
    }
    Rat num(1), den(1);
    Rat qi(1);
    Rat qtop = rat_pow(q, n - k);
    for (long i = 1; i <= k; ++i) {
        qi *= q;        // q^i
        qtop *= q;      // q^{n-k+i}
        num *= (1 - qtop);
        den *= (1 - qi);
    }
    return num / den;
}

// --- infinite products -------------------------------------------------------

namespace detail {

// prod_{k>=0, k!=skip} (1 - a q^k) for 0 < q < 1, enclosed to width <= tol.
inline Enclosure poch_prod(const Rat& a, const Rat& q, const Rat& tol, long skip = -1) {
    if (!(q > 0 && q < 1)) throw std::domain_error("qpoch_inf: need 0 < q < 1");
    if (!(tol > 0)) throw std::invalid_argument("qpoch_inf: tol must be > 0");
    if (a == 0) return Enclosure(Rat(1));

    Rat prefix(1);
    Rat aq = a;  // a q^k at cursor k
    long k = 0;
    auto advance_to = [&](long target) {
        for (; k < target; ++k) {
            if (k != skip) prefix *= (1 - aq);
            aq *= q;
        }
    };

    // past the skipped index and into the regime |a q^k| < 1
    long n0 = skip + 1;
    advance_to(n0);
    while (rat_abs(aq) >= 1) advance_to(k + 1);
    if (prefix == 0) return Enclosure(Rat(0));  // an exact vanishing factor kills the product

    const Rat one_minus_q = 1 - q;
    for (int rounds = 0; rounds < 64; ++rounds) {
        Rat s = rat_abs(aq) / one_minus_q;  // >= sum_{j>=k} |a| q^j
        if (s < 1) {
            Enclosure bracket = (a > 0) ? Enclosure(1 - s, Rat(1)) : Enclosure(Rat(1), 1 / (1 - s));
            Enclosure result = Enclosure(prefix) * bracket;
            if (result.width() <= tol) return result;
        }
        advance_to(k + std::max<long>(8, k));
    }
    throw std::runtime_error("qpoch_inf: failed to reach requested tolerance");
}

}  // namespace detail

inline Enclosure qpoch_inf(const Rat& a, const Rat& q, const Rat& tol) {
    return detail::poch_prod(a, q, tol);
}

// Nested positive-term sum; see the header comment.  x >= 0 rational (x may
// exceed 1: the quadratic q-power wins).  Result is [S, S + tail] with S the
// exact truncated sum, so enlarging the cutoff never moves the value down.
inline Enclosure nested_rank_sum(const Rat& q, int ell, const Rat& x, const Rat& tol) {
    if (!(q > 0 && q < 1)) throw std::domain_error("nested_rank_sum: need 0 < q < 1");
    if (!(tol > 0)) throw std::invalid_argument("nested_rank_sum: tol must be > 0");
    if (ell < 1) throw std::invalid_argument("nested_rank_sum: ell must be >= 1");
    if (x < 0) throw std::domain_error("nested_rank_sum: x must be >= 0");
    const int levels = ell - 1;
    if (levels == 0 || x == 0) return Enclosure(Rat(1));

    const Rat qx = q * x;
    // note the pinned return type: gmpxx expression templates must not
    // escape the lambda
    auto w = [&](long m) -> Rat { return rat_pow(q, m * m) * rat_pow(qx, m); };

    // w is unimodal (w(m+1)/w(m) = q^{2m+1} qx decreases), so its max is easy
    Rat wmax(1);
    {
        Rat cur(1), ratio = q * qx;
        for (long m = 0; m < 4096 && ratio > 1; ++m) {
            cur *= ratio;
            if (cur > wmax) wmax = cur;
            ratio *= q * q;
        }
    }
    // positive lower bound for (q;q)_inf, hence for every (q;q)_k
    const Rat qq_inf_lo = detail::poch_prod(q, q, Rat(1, 16)).lo;
    if (!(qq_inf_lo > 0)) throw std::runtime_error("nested_rank_sum: degenerate (q;q)_inf bound");
    Rat tail_factor = rat_pow(wmax, levels - 1) / rat_pow(qq_inf_lo, levels);

    for (long cutoff = 8; cutoff <= (1L << 14); cutoff *= 2) {
        // tail over vectors with m_1 > cutoff: each contributes at most
        // w(m_1) * (m_1+1)^{levels-1} * wmax^{levels-1} / (q;q)_inf^{levels}
        Rat tail(0);
        {
            long m = cutoff + 1;
            Rat wm = w(m);
            for (int step = 0; step < 4096; ++step) {
                Rat count = Rat(int_pow(Int(m + 1), static_cast<unsigned long>(levels - 1)));
                Rat term = tail_factor * wm * count;
                // ratio of successive bounds, decreasing in m
                Rat rho = rat_pow(q, 2 * m + 1) * qx *
                          rat_pow(Rat(m + 2) / Rat(m + 1), levels - 1);
                if (rho < Rat(1, 2)) {
                    tail += term / (1 - rho);
                    break;
                }
                tail += term;
                wm *= rat_pow(q, 2 * m + 1) * qx;
                ++m;
            }
        }
        if (tail > tol) continue;

        // exact DP over m_1 <= cutoff
        const size_t M = static_cast<size_t>(cutoff);
        std::vector<Rat> poch(M + 1);
        poch[0] = Rat(1);
        {
            Rat qk = q;
            for (size_t m = 1; m <= M; ++m) {
                poch[m] = poch[m - 1] * (1 - qk);
                qk *= q;
            }
        }
        std::vector<Rat> weights(M + 1);
        for (size_t m = 0; m <= M; ++m) weights[m] = w(static_cast<long>(m));

        std::vector<Rat> inv_poch(M + 1);
        for (size_t m = 0; m <= M; ++m) inv_poch[m] = 1 / poch[m];

        std::vector<Rat> f(M + 1);
        for (size_t m = 0; m <= M; ++m) f[m] = weights[m] * inv_poch[m];
        for (int level = levels - 1; level >= 1; --level) {
            std::vector<Rat> g(M + 1);
            for (size_t m = 0; m <= M; ++m) {
                Rat s(0);
                for (size_t inner = 0; inner <= m; ++inner) s += f[inner] * inv_poch[m - inner];
                g[m] = weights[m] * s;
            }
            f = std::move(g);
        }
        Rat total(0);
        for (size_t m = 0; m <= M; ++m) total += f[m];
        return Enclosure(total, total + tail);
    }
    throw std::runtime_error("nested_rank_sum: cutoff limit exceeded");
}

// rank_multisum(q, l, s) = nested_rank_sum at x = q^{s-1}; the weight on a
// vector m is q^{(m|m) + s|m|}.
inline Enclosure rank_multisum(const Rat& q, int ell, long s, const Rat& tol) {
    if (s < 0) throw std::invalid_argument("rank_multisum: s must be >= 0");
    return nested_rank_sum(q, ell, rat_pow(q, s - 1), tol);
}

// Alternating evaluation of Q_{q,l,1}(x); cross-check for nested_rank_sum.
inline Enclosure andrews_q(const Rat& q, int ell, const Rat& x, const Rat& tol) {
    if (!(q > 0 && q < 1)) throw std::domain_error("andrews_q: need 0 < q < 1");
    if (!(tol > 0)) throw std::invalid_argument("andrews_q: tol must be > 0");
    if (ell < 1) throw std::invalid_argument("andrews_q: ell must be >= 1");
    if (x < 0) throw std::domain_error("andrews_q: x must be >= 0");

    Enclosure sum(Rat(0));
    Rat qq_n(1);        // (q;q)_n
    Rat qpow_n(1);      // q^n
    Rat budget = tol / 4;
    Enclosure last_term(Rat(0));
    const Rat xl = rat_pow(x, ell);

    for (long n = 0; n < 256; ++n) {
        if (n > 0) {
            qpow_n *= q;
            qq_n *= (1 - qpow_n);
        }
        // coeff = x^{l n} q^{e(n)} / (q;q)_n  with e(n) = n(n+1)(2l+1)/2 - n
        long e = n * (n + 1) * (2L * ell + 1) / 2 - n;
        Rat coeff = rat_pow(x, static_cast<long>(ell) * n) * rat_pow(q, e) / qq_n;
        if (n % 2 == 1) coeff = -coeff;

        Enclosure term(Rat(0));
        if (coeff != 0) {
            Rat a = x * rat_pow(q, n + 1);
            Rat ptol = budget / 4;
            for (int tries = 0; tries < 40; ++tries) {
                Enclosure punctured = detail::poch_prod(a, q, ptol, n);
                if (punctured.contains(Rat(0)))
                    throw std::domain_error("andrews_q: q-product vanishes (pole in a term)");
                term = Enclosure(coeff) / punctured;
                if (term.width() <= budget) break;
                ptol /= 16;
            }
            if (term.width() > budget) throw std::runtime_error("andrews_q: term refinement failed");
        }
        sum += term;
        last_term = term;

        // geometric tail once x q^{n+1} < 1 and the ratio bound drops below 1/2
        Rat xq_next = x * rat_pow(q, n + 1);
        if (n >= 1 && xq_next < 1) {
            Rat rho = xl * rat_pow(q, (2L * ell + 1) * (n + 1) - 1) /
                      ((1 - rat_pow(q, n + 1)) * (1 - x * rat_pow(q, 2 * n + 1)));
            if (rho < Rat(1, 2)) {
                Rat tail_mag = last_term.mag() * rho / (1 - rho);
                if (tail_mag <= tol / 4) {
                    sum += Enclosure(-tail_mag, tail_mag);
                    return sum;
                }
            }
        }
        budget /= 2;
    }
    throw std::domain_error("andrews_q: series did not reach the geometric regime");
}

}  // namespace pjrank
