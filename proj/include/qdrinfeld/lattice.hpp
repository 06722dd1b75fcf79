#pragma once

#include <optional>
#include <vector>

#include "quadratic.hpp"
#include "reduction.hpp"

namespace qdrinfeld {

// eps = q^{-dN-l}; every positive real below 1 that the absolute value can
// attain has this shape for a unique N >= 1, 0 <= l <= d-1.
struct EpsilonIndex {
    int N = 1;
    int l = 0;

    long long eps_val(int d) const { return static_cast<long long>(d) * N + l; }
};

enum class LatticeKind { raw, hat, breve };

// The approximation space Lambda_eps(f) = {a in A : ||af|| < eps} in its
// closed form: the head block {Q_N T^j : j <= d-1-l} followed by the full
// blocks {Q_{N+k} T^j : j <= d-1}, k >= 1, within a degree window.
struct LatticeBasis {
    struct GenTag {
        int i, j;  // Q_i * T^j, degree i*d + j
        long long degree;
    };

    EpsilonIndex eps;
    LatticeKind kind = LatticeKind::raw;
    std::vector<GenTag> vectors;  // ascending degree
    Series scale;                 // 1, sqrtD*f^{-N}, or xi_eps
    long long degree_window = 0;
};

inline LatticeBasis lambda_basis(const QuadraticContext& ctx, EpsilonIndex eps, LatticeKind kind,
                                 long long window,
                                 const Series* breve_scale = nullptr) {
    int d = ctx.d();
    if (eps.N < 1 || eps.l < 0 || eps.l >= d) throw ValidationError("lattice: bad epsilon index");
    if (window < static_cast<long long>(d) * eps.N)
        throw ValidationError("lattice: window below the head block");
    LatticeBasis basis;
    basis.eps = eps;
    basis.kind = kind;
    basis.degree_window = window;
    for (int j = 0; j <= d - 1 - eps.l; ++j) {
        long long deg = static_cast<long long>(d) * eps.N + j;
        if (deg <= window) basis.vectors.push_back({eps.N, j, deg});
    }
    for (int i = eps.N + 1;; ++i) {
        long long base = static_cast<long long>(d) * i;
        if (base > window) break;
        for (int j = 0; j < d && base + j <= window; ++j) basis.vectors.push_back({i, j, base + j});
    }
    std::sort(basis.vectors.begin(), basis.vectors.end(),
              [](auto& x, auto& y) { return x.degree < y.degree; });
    switch (kind) {
        case LatticeKind::raw:
            basis.scale = Series::constant(ctx.spec(), FFElem::one(ctx.spec()));
            break;
        case LatticeKind::hat:
            basis.scale = ctx.sqrtD() * ctx.f().pow_int(eps.N).inverse();
            break;
        case LatticeKind::breve:
            if (!breve_scale)
                throw ValidationError("lattice: breve basis needs the period as scale");
            basis.scale = *breve_scale;
            break;
    }
    return basis;
}

inline Poly lattice_vector_poly(const QuadraticContext& ctx, const LatticeBasis::GenTag& t) {
    return ctx.binet_q(t.i).shift(t.j);
}

// Exhaustive oracle: all a in A with deg a <= degree_bound and ||af|| < eps,
// i.e. the fractional part of a*f has valuation >= dN+l+1.  Sorted by
// degree, then lexicographically.
inline std::vector<Poly> lambda_bruteforce(const QuadraticContext& ctx, EpsilonIndex eps,
                                           int degree_bound, long long budget = 1 << 24) {
    const FieldSpec& S = ctx.spec();
    int q = S.q();
    long long need = eps.eps_val(ctx.d()) + 1;

    // frac(T^i * f) windows, shared across the enumeration.
    long long frac_hi = need + 1;
    std::vector<std::vector<uint16_t>> fr(degree_bound + 1);
    for (int i = 0; i <= degree_bound; ++i) {
        Series tif = ctx.f().shifted(-i);
        if (tif.prec_scaled() < frac_hi)
            throw PrecisionExhausted("lattice oracle: context precision too small");
        fr[i].assign(frac_hi, 0);
        for (long long e = 1; e < frac_hi; ++e) fr[i][e] = tif.coeff_scaled(e);
    }

    double combos = 1;
    for (int i = 0; i <= degree_bound; ++i) combos *= q;
    if (combos > static_cast<double>(budget))
        throw ValidationError("lattice oracle: exhaustion limit exceeded");

    std::vector<Poly> out;
    std::vector<uint16_t> digits(degree_bound + 1, 0);
    std::vector<uint16_t> acc(frac_hi, 0);  // frac window of a*f, updated in place
    long long total = static_cast<long long>(combos);
    for (long long step = 1; step < total; ++step) {
        // odometer increment, updating acc by the changed digits
        for (int i = 0;; ++i) {
            uint16_t old = digits[i];
            uint16_t nw = static_cast<uint16_t>((old + 1) % q);
            digits[i] = nw;
            uint16_t delta = S.sub(nw, old);
            for (long long e = 1; e < frac_hi; ++e)
                if (fr[i][e] != 0) acc[e] = S.add(acc[e], S.mul(delta, fr[i][e]));
            if (nw != 0) break;
        }
        bool ok = true;
        for (long long e = 1; e < need; ++e)
            if (acc[e] != 0) {
                ok = false;
                break;
            }
        if (ok) out.push_back(Poly(&S, std::vector<uint16_t>(digits.begin(), digits.end())));
    }
    std::sort(out.begin(), out.end());
    return out;
}

// Norm zeta function of Lambda_eps in closed form:
//   Z(u) = (q-1) ( u^{dN} + q u^{dN+1} + ... + q^{d-1-l} u^{dN+d-1-l}
//                  + q^{d-l} u^{d(N+1)} / (1-qu) ).
// Everything is evaluated symbolically in exact arithmetic; t = (q-1) Z'(1).
struct ZetaRecord {
    EpsilonIndex eps;
    long long z_at_1 = 0;    // always -1
    Rat zprime_at_1;
    long long t = 0;
    bool ideal_target = false;  // N == 1 describes the ideal a_{d-1-l}
};

inline ZetaRecord zeta_eps(const QuadraticContext& ctx, EpsilonIndex eps) {
    long long q = ctx.q(), d = ctx.d(), N = eps.N, l = eps.l;
    __int128 qpow = 1;
    __int128 head = 0, headd = 0;
    for (long long j = 0; j <= d - 1 - l; ++j) {
        head += qpow;
        headd += qpow * (d * N + j);
        qpow *= q;
    }
    // qpow = q^{d-l} now.
    // tail: q^{d-l} u^{d(N+1)} / (1-qu): at u=1 value q^{d-l}/(1-q);
    // derivative at 1: q^{d-l} (d(N+1)(1-q) + q) / (1-q)^2.
    __int128 one_minus_q = 1 - q;
    __int128 z1_num = (head * one_minus_q + qpow) * (q - 1);  // (q-1) * [head + qpow/(1-q)]
    if (z1_num % one_minus_q != 0) throw std::logic_error("zeta: non-integral value at 1");
    long long z1 = static_cast<long long>(z1_num / one_minus_q);

    __int128 tail_d_num = qpow * (d * (N + 1) * one_minus_q + q);
    // Z'(1) = (q-1) [ headd + tail_d_num/(1-q)^2 ]
    __int128 num = (q - 1) * (headd * one_minus_q * one_minus_q + tail_d_num);
    __int128 den = one_minus_q * one_minus_q;
    // t = (q-1) Z'(1)
    __int128 tnum = (q - 1) * num;
    if (tnum % den != 0) throw std::logic_error("zeta: non-integral exponent t");
    ZetaRecord r;
    r.eps = eps;
    r.z_at_1 = z1;
    r.zprime_at_1 = Rat(static_cast<long long>(num), static_cast<long long>(den));
    r.t = static_cast<long long>(tnum / den);
    r.ideal_target = (N == 1);
    return r;
}

inline long long t_eps(const QuadraticContext& ctx, EpsilonIndex eps) {
    return zeta_eps(ctx, eps).t;
}
inline long long t_ideal(const QuadraticContext& ctx, int ideal_index) {
    // a_{d-1-l} has the zeta function of eps_{1,l}.
    return t_eps(ctx, {1, ctx.d() - 1 - ideal_index});
}

// Exact valuation of the period, from the symbolic zeta exponent.
inline Rat xi_val_eps(const QuadraticContext& ctx, EpsilonIndex eps) {
    return Rat(-t_eps(ctx, eps), ctx.q() - 1);
}
inline Rat xi_val_ideal(const QuadraticContext& ctx, int ideal_index) {
    return Rat(-t_ideal(ctx, ideal_index), ctx.q() - 1);
}

// Check that alpha * (scaled lattice) is contained in the scaled lattice up
// to |alpha| delta, with delta = q^{-dN} eps |xi_{d-1-l}|.  Distances are
// measured by graded reduction against the raw basis; the period enters only
// through its exact valuation.
struct InclusionReport {
    Rat delta_val;          // v(delta)
    Rat alpha_delta_val;    // v(alpha) + v(delta)
    ValBound worst;         // worst distance valuation over checked vectors
    int checked = 0;
    long long window = 0;
    bool ok = false;
};

inline InclusionReport approx_inclusion_check(const QuadraticContext& ctx, EpsilonIndex eps,
                                              const OKElement& alpha, long long window) {
    if (!ctx.in_A_inf1(alpha)) throw ValidationError("inclusion: alpha not regular at infinity_2");
    Series as = alpha.to_series(ctx);
    if (as.is_zero_at_prec()) throw ValidationError("inclusion: alpha is zero");
    Rat v_alpha = as.val();

    int d = ctx.d();
    Rat v_xi_ideal = xi_val_ideal(ctx, d - 1 - eps.l);
    Rat v_delta = Rat(2LL * d * eps.N + eps.l) + v_xi_ideal;
    // precondition: delta < |alpha|^{-1}
    if (!(v_delta + v_alpha > Rat(0)))
        throw ValidationError("inclusion: delta precondition violated (alpha too large)");

    LatticeBasis basis = lambda_basis(ctx, eps, LatticeKind::raw, window);
    std::vector<Series> rows;
    rows.reserve(basis.vectors.size());
    for (auto& t : basis.vectors) rows.push_back(Series::from_poly(lattice_vector_poly(ctx, t)));
    GradedReducer red(rows);

    Rat v_xi_eps = xi_val_eps(ctx, eps);
    InclusionReport rep;
    rep.delta_val = v_delta;
    rep.alpha_delta_val = v_alpha + v_delta;
    rep.window = window;
    rep.worst = {Rat::infinity(), false};
    for (auto& t : basis.vectors) {
        if (t.degree - v_alpha.num() > window) continue;  // image would leave the window
        Series img = as * Series::from_poly(lattice_vector_poly(ctx, t));
        auto res = red.reduce(img);
        ValBound dist = res.remainder.val_bound();
        ValBound scaled{dist.v + v_xi_eps, dist.lower_bound};
        ++rep.checked;
        if (scaled.v < rep.worst.v) rep.worst = scaled;
    }
    if (rep.checked == 0)
        throw ValidationError("inclusion: window too small to witness the inclusion");
    rep.ok = rep.worst.v > rep.alpha_delta_val;
    return rep;
}

}  // namespace qdrinfeld
