#pragma once

// Joint and marginal p^j-rank probability laws, as rigorous enclosures.
//
// Rank vectors mu = (mu_1 >= ... >= mu_l >= 0) carry their length l
// explicitly (trailing zeros are significant) and use the convention
// mu_{l+1} = 0.  With q = 1/p:
//
//   class(u):  P(rk_{p^j} = mu_j, j<=l)
//     = (q^{u+mu_l+1};q)_inf / (p^{(mu|mu)+u|mu|} prod_j (q;q)_{mu_j-mu_{j+1}})
//
// and with q = 1/p^2:
//
//   sha(u):    P(rk_{p^j} = 2 mu_j)
//     = (q^{u+mu_l} / p;q)_inf / (p^{2(mu|mu)+(2u-1)|mu|} prod_j (q;q)_{mu_j-mu_{j+1}})
//
//   selmer(delta, alpha):  P(rk_{p^j} = 2 mu_j + delta)
//     = (delta(1-alpha)+alpha(1-delta)) * [sha law with u replaced by delta]
//
// Marginal law of the single p^l-rank (class: rank k; sha: rank 2k;
// selmer: rank 2k+delta):
//
//   prefactor * Q_{q,l,1}(x)
//
// where the prefactor collects the (a;q)_inf, (q;q)_k and p-power factors
// of the joint law at the shifted origin and x is q^{s-1}-shaped.  The
// Q-value is evaluated through the positive-term nested sum, which stays
// valid when x > 1 (at k = delta = 0 the argument is p^3); the alternating
// form is kept as an independent cross-check.
//
// For class groups p = 2 is accepted but the published law there describes
// the square of the group (see README); p >= 3 is the intended range.

#include "pjrank/enclosure.hpp"
#include "pjrank/moments.hpp"
#include "pjrank/partition.hpp"
#include "pjrank/qseries.hpp"
#include "pjrank/rational.hpp"

#include <functional>
#include <stdexcept>

namespace pjrank {

namespace detail {

// scale * (enclosure of f(tol)) * (enclosure of g(tol)), refined until the
// final width drops below tol.  Both factor evaluators must tighten as
// their tolerance argument shrinks.
inline Enclosure scaled_product(const Rat& scale,
                                const std::function<Enclosure(const Rat&)>& f,
                                const std::function<Enclosure(const Rat&)>& g, const Rat& tol) {
    if (scale == 0) return Enclosure(Rat(0));
    Rat t = tol / (4 * std::max(rat_abs(scale), Rat(1)));
    for (int rounds = 0; rounds < 64; ++rounds) {
        Enclosure prod = scale * (f(t) * g(t));
        if (prod.width() <= tol) return prod;
        t /= 16;
    }
    throw std::runtime_error("scaled_product: refinement failed");
}

// shared core of the sha and selmer joint laws (parameter t is u or delta)
inline Enclosure sha_type_joint(const RankVector& mu, int p, int t, const Rat& tol) {
    require_prime(p);
    if (t < 0) throw std::invalid_argument("joint law: parameter must be >= 0");
    if (!(tol > 0)) throw std::invalid_argument("joint law: tol must be > 0");
    const Rat q = Rat(1, p) * Rat(1, p);
    const int ell = mu.length();
    Rat denom = rat_pow(Rat(p), 2 * mu.self_pairing() + (2L * t - 1) * mu.sum());
    for (int j = 0; j < ell; ++j) denom *= qpoch_finite(q, q, mu.entry(j) - mu.entry(j + 1));
    const Rat scale = 1 / denom;
    const Rat a = rat_pow(Rat(1, p), 2L * t + 2L * mu.entries.back() + 1);
    return scale * qpoch_inf(a, q, tol / scale);
}

}  // namespace detail

inline Enclosure joint_class(const RankVector& mu, int p, int u, const Rat& tol) {
    require_prime(p);
    if (u < 0) throw std::invalid_argument("joint_class: u must be >= 0");
    if (!(tol > 0)) throw std::invalid_argument("joint_class: tol must be > 0");
    const Rat q = Rat(1, p);
    const int ell = mu.length();
    Rat denom = rat_pow(Rat(p), mu.self_pairing() + static_cast<long>(u) * mu.sum());
    for (int j = 0; j < ell; ++j) denom *= qpoch_finite(q, q, mu.entry(j) - mu.entry(j + 1));
    const Rat scale = 1 / denom;
    const Rat a = rat_pow(q, u + mu.entries.back() + 1);
    return scale * qpoch_inf(a, q, tol / scale);
}

inline Enclosure joint_sha(const RankVector& mu, int p, int u, const Rat& tol) {
    return detail::sha_type_joint(mu, p, u, tol);
}

inline Enclosure joint_selmer(const RankVector& mu, int p, int delta, const Rat& alpha,
                              const Rat& tol) {
    if (delta != 0 && delta != 1) throw std::invalid_argument("joint_selmer: delta must be 0 or 1");
    if (alpha < 0 || alpha > 1) throw std::invalid_argument("joint_selmer: alpha must lie in [0,1]");
    const Rat weight = delta == 1 ? Rat(1) - alpha : alpha;
    if (weight == 0) return Enclosure(Rat(0));
    return weight * detail::sha_type_joint(mu, p, delta, tol / weight);
}

inline Enclosure marginal_class(int p, int ell, int k, int u, const Rat& tol) {
    require_prime(p);
    if (ell < 1 || k < 0 || u < 0) throw std::invalid_argument("marginal_class: bad parameters");
    const Rat q = Rat(1, p);
    const Rat scale = 1 / (qpoch_finite(q, q, k) * rat_pow(Rat(p), static_cast<long>(ell) * k * (u + k)));
    const Rat a = rat_pow(q, u + k + 1);
    const Rat x = rat_pow(q, 2L * k + u - 1);
    return detail::scaled_product(
        scale, [&](const Rat& t) { return qpoch_inf(a, q, t); },
        [&](const Rat& t) { return nested_rank_sum(q, ell, x, t); }, tol);
}

inline Enclosure marginal_sha(int p, int ell, int k, int u, const Rat& tol) {
    require_prime(p);
    if (ell < 1 || k < 0 || u < 0) throw std::invalid_argument("marginal_sha: bad parameters");
    const Rat q = Rat(1, p) * Rat(1, p);
    const Rat scale =
        1 / (qpoch_finite(q, q, k) * rat_pow(Rat(p), static_cast<long>(ell) * k * (2L * u + 2 * k - 1)));
    const Rat a = rat_pow(Rat(1, p), 2L * u + 2 * k + 1);
    const Rat x = rat_pow(Rat(1, p), 4L * k + 2 * u - 3);
    return detail::scaled_product(
        scale, [&](const Rat& t) { return qpoch_inf(a, q, t); },
        [&](const Rat& t) { return nested_rank_sum(q, ell, x, t); }, tol);
}

inline Enclosure marginal_selmer(int p, int ell, int k, int delta, const Rat& alpha,
                                 const Rat& tol) {
    require_prime(p);
    if (ell < 1 || k < 0) throw std::invalid_argument("marginal_selmer: bad parameters");
    if (delta != 0 && delta != 1) throw std::invalid_argument("marginal_selmer: delta must be 0 or 1");
    if (alpha < 0 || alpha > 1) throw std::invalid_argument("marginal_selmer: alpha must lie in [0,1]");
    const Rat weight = delta == 1 ? Rat(1) - alpha : alpha;
    if (weight == 0) return Enclosure(Rat(0));
    const Rat q = Rat(1, p) * Rat(1, p);
    const Rat scale =
        weight /
        (qpoch_finite(q, q, k) * rat_pow(Rat(p), static_cast<long>(ell) * k * (2L * k + 2 * delta - 1)));
    const Rat a = rat_pow(Rat(1, p), 2L * k + 2 * delta + 1);
    const Rat x = rat_pow(Rat(1, p), 4L * k + 2 * delta - 3);
    return detail::scaled_product(
        scale, [&](const Rat& t) { return qpoch_inf(a, q, t); },
        [&](const Rat& t) { return nested_rank_sum(q, ell, x, t); }, tol);
}

// f(p, l, 2k+delta): the p^l-rank law of Selmer groups at the even/odd
// mixture alpha = 1/2; the quantity tabulated in the published tables.
inline Enclosure selmer_rank_probability(int p, int ell, int rank, const Rat& tol) {
    if (rank < 0) throw std::invalid_argument("selmer_rank_probability: rank must be >= 0");
    return marginal_selmer(p, ell, rank / 2, rank % 2, Rat(1, 2), tol);
}

}  // namespace pjrank
