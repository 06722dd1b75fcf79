#pragma once

#include <vector>

#include "lattice.hpp"

namespace qdrinfeld {

// A period is attached either to an approximation space Lambda_eps(f) or to
// one of the ideals a_i = (f, fT, ..., fT^i).
struct PeriodTarget {
    enum class Kind { eps, ideal };
    Kind kind = Kind::eps;
    EpsilonIndex eps;
    int ideal_index = 0;

    static PeriodTarget make_eps(EpsilonIndex e) { return {Kind::eps, e, 0}; }
    static PeriodTarget make_ideal(int i) { return {Kind::ideal, {1, 0}, i}; }
    bool is_ideal() const { return kind == Kind::ideal; }

    std::string str() const {
        if (is_ideal()) return "a_" + std::to_string(ideal_index);
        return "eps(N=" + std::to_string(eps.N) + ",l=" + std::to_string(eps.l) + ")";
    }
};

struct PeriodGen {
    Series gen;        // monic, exact leading structure
    long long degree;  // = -v(gen)
};

inline std::vector<PeriodGen> period_generators(const QuadraticContext& ctx,
                                                const PeriodTarget& target, long long max_degree) {
    std::vector<PeriodGen> out;
    if (target.is_ideal()) {
        for (auto& g : ctx.ideal_degrees(target.ideal_index, max_degree))
            out.push_back({ctx.ideal_gen_series(g), g.degree});
    } else {
        LatticeBasis basis = lambda_basis(ctx, target.eps, LatticeKind::raw, max_degree);
        for (auto& t : basis.vectors)
            out.push_back({Series::from_poly(lattice_vector_poly(ctx, t)), t.degree});
    }
    return out;
}

inline long long t_exponent(const QuadraticContext& ctx, const PeriodTarget& target) {
    if (target.is_ideal()) return t_ideal(ctx, target.ideal_index);
    return t_eps(ctx, target.eps);
}
inline Rat xi_val(const QuadraticContext& ctx, const PeriodTarget& target) {
    return Rat(-t_exponent(ctx, target), ctx.q() - 1);
}

// ---------------------------------------------------------------------------
// eta: per-degree-slice product of signs.  In each nonempty slice the signs
// hit every c in F_q^x equally often (q^m times), so the slice product is
// (prod of F_q^x)^{q^m}; the slices are asserted constant.

struct EtaRecord {
    FFElem value;
    std::vector<std::pair<long long, FFElem>> slices;  // (degree, slice product)
};

inline EtaRecord eta(const QuadraticContext& ctx, const PeriodTarget& target, long long M) {
    auto gens = period_generators(ctx, target, M);
    if (gens.empty()) throw ValidationError("eta: M below the first degree block");
    const FieldSpec& S = ctx.spec();
    FFElem prod = ff_prod_nonzero(S);
    long long ord = prod.mult_order();
    EtaRecord rec{prod, {}};
    for (size_t m = 0; m < gens.size(); ++m) {
        long long e = 1;  // q^m mod ord
        for (size_t i = 0; i < m; ++i) e = (e * ctx.q()) % ord;
        FFElem slice = prod.pow(e == 0 ? ord : e);
        rec.slices.emplace_back(gens[m].degree, slice);
        if (slice != rec.value) throw std::logic_error("eta: slice product not constant");
    }
    rec.value = rec.slices.front().second;
    return rec;
}

// ---------------------------------------------------------------------------
// u: the 1-unit part product over all nonzero elements of degree <= M.
// Computed slice by slice; every element of the slice at a new generator g
// is c(g + mu) with mu in the span of the lower generators, so the slice is
// [prod_mu (g+mu) pi^{deg g}]^{q-1}.  The reported precision is capped by the
// movement of the last included slice.

struct UPartial {
    Series u;
    long long M = 0;
    std::vector<std::pair<long long, ValBound>> slice_devs;  // (degree, v(slice - 1))
};

namespace detail {

inline Series slice_product(const QuadraticContext& ctx, const std::vector<PeriodGen>& gens,
                            size_t m) {
    const FieldSpec& S = ctx.spec();
    const Series& g = gens[m].gen;
    Series piD = ctx.pi_pow(gens[m].degree);
    int q = ctx.q();
    double count = 1;
    for (size_t i = 0; i < m; ++i) count *= q;
    if (count > (1 << 21)) throw ValidationError("period: slice enumeration budget exceeded");

    Series one = Series::constant(S, FFElem::one(S));
    Series acc = one;
    std::vector<uint16_t> digits(m, 0);
    Series cur = g;
    acc = acc * (cur * piD);
    long long total = static_cast<long long>(count);
    for (long long step = 1; step < total; ++step) {
        for (size_t i = 0;; ++i) {
            uint16_t old = digits[i];
            uint16_t nw = static_cast<uint16_t>((old + 1) % q);
            digits[i] = nw;
            FFElem delta(&S, S.sub(nw, old), Level::base);
            cur = cur + gens[i].gen.scaled(delta);
            if (nw != 0) break;
        }
        acc = acc * (cur * piD);
    }
    return acc.pow_int(q - 1);
}

}  // namespace detail

inline UPartial u_partial(const QuadraticContext& ctx, const PeriodTarget& target, long long M) {
    auto gens = period_generators(ctx, target, M);
    if (gens.empty()) throw ValidationError("u: M below the first degree block");
    const FieldSpec& S = ctx.spec();
    Series one = Series::constant(S, FFElem::one(S));
    UPartial rec;
    rec.M = M;
    rec.u = one;
    for (size_t m = 0; m < gens.size(); ++m) {
        Series slice = detail::slice_product(ctx, gens, m);
        rec.slice_devs.emplace_back(gens[m].degree, (slice - one).val_bound());
        rec.u = rec.u * slice;
    }
    // The omitted tail still moves the product at the scale of the last
    // slice; claim no more precision than that.
    const ValBound& lastdev = rec.slice_devs.back().second;
    if (!lastdev.v.is_infinite() && lastdev.v.den() == 1)
        rec.u = rec.u.truncated(lastdev.v.num() * rec.u.ram());
    return rec;
}

// Smallest M whose last slice moves the product above `target_relval`.
inline UPartial u_stable(const QuadraticContext& ctx, const PeriodTarget& target,
                         long long target_relval) {
    long long first = target.is_ideal() ? ctx.d() : static_cast<long long>(ctx.d()) * target.eps.N;
    auto gens = period_generators(ctx, target, first + 3LL * ctx.d() + 64);
    const FieldSpec& S = ctx.spec();
    Series one = Series::constant(S, FFElem::one(S));
    UPartial rec;
    rec.u = one;
    for (size_t m = 0; m < gens.size(); ++m) {
        Series slice = detail::slice_product(ctx, gens, m);
        ValBound dev = (slice - one).val_bound();
        rec.slice_devs.emplace_back(gens[m].degree, dev);
        rec.u = rec.u * slice;
        rec.M = gens[m].degree;
        if (dev.v >= Rat(target_relval)) break;
        if (m + 1 == gens.size())
            throw PrecisionExhausted("u: generator window exhausted before stabilization");
    }
    const ValBound& lastdev = rec.slice_devs.back().second;
    if (!lastdev.v.is_infinite() && lastdev.v.den() == 1)
        rec.u = rec.u.truncated(lastdev.v.num() * rec.u.ram());
    return rec;
}

// ---------------------------------------------------------------------------
// xi^{q-1} = eta^{-1} pi^{-t} u^{q-1}; xi is the deterministic (q-1)-th root
// times a chosen root of unity.

struct PeriodRecord {
    PeriodTarget target;
    FFElem eta;
    long long t = 0;
    Series u;
    Series xi;
    long long M = 0;
    int branch = 0;
    Rat v_xi;
};

inline PeriodRecord xi(const QuadraticContext& ctx, const PeriodTarget& target, long long M = 0,
                       int branch = 0) {
    int q = ctx.q();
    if (branch < 0 || branch > q - 2) throw ValidationError("xi: branch out of range");
    UPartial up = M > 0 ? u_partial(ctx, target, M) : u_stable(ctx, target, ctx.prec());
    EtaRecord et = eta(ctx, target, up.M);
    long long t = t_exponent(ctx, target);

    Series rhs = ctx.pi_pow(-t).scaled(et.value.inverse()) * up.u.pow_int(q - 1);
    Series root = ser_nth_root(rhs, q - 1);
    PeriodRecord rec;
    rec.target = target;
    rec.eta = et.value;
    rec.t = t;
    rec.u = up.u;
    rec.M = up.M;
    rec.branch = branch;
    rec.xi = branch == 0 ? root : root.scaled(ff_root_of_unity(ctx.spec(), q - 1).pow(branch));
    rec.v_xi = rec.xi.val();
    return rec;
}

// Branch-aligned distance: max over branches of v(zeta^k x - y), with the
// branch achieving it.
struct Alignment {
    int branch = 0;
    ValBound dist;
};

inline Alignment align_branch(const QuadraticContext& ctx, const Series& x, const Series& y) {
    int q = ctx.q();
    FFElem zeta = ff_root_of_unity(ctx.spec(), q - 1);
    Alignment best{0, (x - y).val_bound()};
    for (int k = 1; k <= q - 2; ++k) {
        ValBound d = (x.scaled(zeta.pow(k)) - y).val_bound();
        if (d.v > best.dist.v) best = {k, d};
    }
    return best;
}

// v((f^N / sqrtD) xi_{eps_{N,l}} - xi_{d-1-l}) for N = 1..N_max, branches
// aligned per N.
struct XiConvergenceReport {
    int l = 0;
    std::vector<int> N;
    std::vector<ValBound> dist;
    std::vector<int> branch;
    bool strictly_increasing = false;
};

inline XiConvergenceReport xi_convergence(const QuadraticContext& ctx, int l, int N_max,
                                          long long M = 0) {
    XiConvergenceReport rep;
    rep.l = l;
    PeriodRecord ideal = xi(ctx, PeriodTarget::make_ideal(ctx.d() - 1 - l), M);
    rep.strictly_increasing = true;
    for (int N = 1; N <= N_max; ++N) {
        PeriodRecord r = xi(ctx, PeriodTarget::make_eps({N, l}), M);
        Series rescaled = ctx.f().pow_int(N) / ctx.sqrtD() * r.xi;
        Alignment al = align_branch(ctx, rescaled, ideal.xi);
        rep.N.push_back(N);
        rep.dist.push_back(al.dist);
        rep.branch.push_back(al.branch);
        if (rep.dist.size() > 1 && !(rep.dist.back().v > rep.dist[rep.dist.size() - 2].v))
            rep.strictly_increasing = false;
    }
    return rep;
}

}  // namespace qdrinfeld
