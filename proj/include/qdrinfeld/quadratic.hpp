#pragma once

#include <mutex>
#include <optional>
#include <vector>

#include "field.hpp"
#include "poly.hpp"
#include "rational.hpp"
#include "series.hpp"

namespace qdrinfeld {

class QuadraticContext;

// g + h*f in the order A[f], f the chosen root of X^2 - aX - b.
class OKElement {
public:
    OKElement() = default;
    OKElement(Poly g, Poly h) : g_(std::move(g)), h_(std::move(h)) {}

    const Poly& g() const { return g_; }
    const Poly& h() const { return h_; }
    bool is_zero() const { return g_.is_zero() && h_.is_zero(); }

    OKElement add(const OKElement& o) const { return {g_ + o.g_, h_ + o.h_}; }
    OKElement sub(const OKElement& o) const { return {g_ - o.g_, h_ - o.h_}; }
    OKElement mul(const OKElement& o, const Poly& a, const FFElem& b) const {
        // (g1 + h1 f)(g2 + h2 f) with f^2 = a f + b
        Poly hh = h_ * o.h_;
        Poly g = g_ * o.g_ + hh.scale(b.idx());
        Poly h = g_ * o.h_ + h_ * o.g_ + hh * a;
        return {std::move(g), std::move(h)};
    }
    // f -> a - f, the ring involution.
    OKElement conjugate(const Poly& a) const { return {g_ + h_ * a, h_.scale(a.spec().minus_one())}; }

    bool operator==(const OKElement& o) const { return g_ == o.g_ && h_ == o.h_; }

    Series to_series(const QuadraticContext& ctx) const;
    Series conj_series(const QuadraticContext& ctx) const;

    std::string str() const { return "(" + g_.str() + ") + (" + h_.str() + ")*f"; }

private:
    Poly g_, h_;
};

// The fixed data of a real quadratic unit f with minimal polynomial
// X^2 - aX - b: the root with |f| = q^d, its conjugate, sqrt of the
// discriminant a^2+4b, a uniformizer, and the denominator sequence Q_n of
// the best approximations of f.
class QuadraticContext {
public:
    QuadraticContext(const FieldSpec& spec, Poly a, FFElem b, long long relprec = 0)
        : spec_(&spec), a_(std::move(a)), b_(b) {
        if (a_.is_zero() || a_.degree() < 1) throw ValidationError("context: a must have degree >= 1");
        if (!a_.monic()) throw ValidationError("context: a must be monic");
        if (b_.is_zero()) throw ValidationError("context: b must be nonzero");
        if (!b_.in_base()) throw ValidationError("context: b must lie in F_q");
        d_ = a_.degree();
        prec_ = relprec > 0 ? relprec : 20 * d_;
        d_coprime_p_ = (d_ % spec.p()) != 0;

        // f from the contraction f <- a + b/f seeded at a; the update error
        // shrinks by q^{-2d} per step.
        Series aser = Series::from_poly(a_).truncated(-d_ + prec_);
        Series bser = Series::constant(spec, b_);
        f_ = aser;
        int iters = static_cast<int>(prec_ / (2 * d_)) + 3;
        for (int i = 0; i < iters; ++i) f_ = (aser + bser / f_).truncated(-d_ + prec_);
        fstar_ = (aser - f_).truncated(d_ + prec_);

        if (spec.p() == 2) {
            sqrtD_ = aser;  // D = a^2 in characteristic 2
        } else {
            Series D = (Series::from_poly(a_ * a_) +
                        Series::constant(spec, b_ * FFElem::from_int(spec, 4)))
                           .truncated(-2 * d_ + 2 * prec_);
            sqrtD_ = ser_nth_root(D, 2).truncated(-d_ + prec_);
        }

        if (d_coprime_p_) {
            pi_ = ser_nth_root(f_, d_).inverse().truncated(1 + prec_);
        } else {
            Series fT = f_.shifted(-1);  // f*T
            pi_ = ser_nth_root(fT, d_ + 1).inverse().truncated(1 + prec_);
        }
    }

    QuadraticContext(const QuadraticContext&) = delete;
    QuadraticContext& operator=(const QuadraticContext&) = delete;

    const FieldSpec& spec() const { return *spec_; }
    const Poly& a() const { return a_; }
    const FFElem& b() const { return b_; }
    int d() const { return d_; }
    int q() const { return spec_->q(); }
    long long prec() const { return prec_; }
    bool d_coprime_p() const { return d_coprime_p_; }
    const Series& f() const { return f_; }
    const Series& fstar() const { return fstar_; }
    const Series& sqrtD() const { return sqrtD_; }
    const Series& pi() const { return pi_; }

    Series pi_pow(long long k) const { return pi_.pow_int(k); }

    // Q_0 = 1, Q_1 = a, Q_{n+1} = a Q_n + b Q_{n-1}; exact polynomials,
    // memoized (write-once, safe under concurrent readers).
    Poly binet_q(int n) const {
        if (n < 0) throw ValidationError("binet: n must be >= 0");
        std::lock_guard<std::mutex> lock(qmu_);
        if (qcache_.empty()) {
            qcache_.push_back(Poly::one(*spec_));
            qcache_.push_back(a_);
        }
        while (static_cast<int>(qcache_.size()) <= n) {
            size_t k = qcache_.size();
            qcache_.push_back(a_ * qcache_[k - 1] + qcache_[k - 2].scale(b_.idx()));
        }
        return qcache_[n];
    }

    // (f^{n+1} - fstar^{n+1}) / sqrtD, the closed form of Q_n.
    Series binet_closed_form(int n) const {
        return (f_.pow_int(n + 1) - fstar_.pow_int(n + 1)) / sqrtD_;
    }

    // Valuation of the distance to the nearest polynomial: strip every term
    // of non-positive T^{-1}-exponent and take the valuation of what is left.
    ValBound nearest_dist(const Series& x) const {
        if (x.ram() != 1) throw ValidationError("nearest_dist: ramified input");
        if (!x.coeffs_in_base()) throw ValidationError("nearest_dist: coefficients outside F_q");
        if (x.is_exact_zero()) return {Rat::infinity(), false};
        for (long long e = std::max(x.lead_scaled(), 1LL); e < x.lead_scaled() +
             static_cast<long long>(x.window().size()); ++e)
            if (x.coeff_scaled(e) != 0) return {Rat(e), false};
        if (x.exact()) return {Rat::infinity(), false};
        return {Rat(x.prec_scaled()), true};
    }

    // log_q |Norm(x)| = deg(x) + deg(x conj); both embedddings must be nonzero.
    long long ok_norm_degree(const OKElement& x) const {
        Series e1 = x.to_series(*this), e2 = x.conj_series(*this);
        if (e1.is_zero_at_prec() || e2.is_zero_at_prec())
            throw ValidationError("norm_degree: zero element");
        Rat v = e1.val() + e2.val();
        if (v.den() != 1) throw std::logic_error("norm_degree: fractional norm valuation");
        return -v.num();
    }

    bool in_A_inf1(const OKElement& x) const {
        if (x.is_zero()) return true;
        return !(x.conj_series(*this).val() < Rat(0));
    }
    bool is_monic(const OKElement& x) const {
        Series e = x.to_series(*this);
        return !e.is_zero_at_prec() && e.sgn() == FFElem::one(*spec_);
    }

    // f^k = fk_g + fk_h * f as exact polynomials.
    std::pair<Poly, Poly> f_power_coords(int k) const {
        std::pair<Poly, Poly> r{Poly::one(*spec_), Poly::zero(*spec_)};
        for (int i = 0; i < k; ++i) {
            // (g + h f) * f = h b + (g + h a) f
            Poly ng = r.second.scale(b_.idx());
            Poly nh = r.first + r.second * a_;
            r = {std::move(ng), std::move(nh)};
        }
        return r;
    }
    OKElement monomial_fk_Tj(int k, int j) const {
        auto [g, h] = f_power_coords(k);
        return {g.shift(j), h.shift(j)};
    }

    // Ideal (f, fT, ..., fT^i): graded generator list, one per degree,
    // degrees {d..d+i} then everything >= 2d.
    struct IdealGen {
        int k, j;  // f^k T^j, degree k*d + j
        long long degree;
    };
    std::vector<IdealGen> ideal_degrees(int i, long long max_degree) const {
        if (i < 0 || i >= d_) throw ValidationError("ideal: index out of range");
        std::vector<IdealGen> out;
        for (int j = 0; j <= i && d_ + j <= max_degree; ++j)
            out.push_back({1, j, static_cast<long long>(d_) + j});
        for (int k = 2;; ++k) {
            long long base = static_cast<long long>(k) * d_;
            if (base > max_degree) break;
            for (int j = 0; j < d_ && base + j <= max_degree; ++j)
                out.push_back({k, j, base + j});
        }
        std::sort(out.begin(), out.end(),
                  [](const IdealGen& x, const IdealGen& y) { return x.degree < y.degree; });
        return out;
    }
    Series ideal_gen_series(const IdealGen& g) const {
        auto [pg, ph] = f_power_coords(g.k);
        Series s = Series::from_poly(pg.shift(g.j)) + Series::from_poly(ph.shift(g.j)) * f_;
        return s;
    }

private:
    const FieldSpec* spec_;
    Poly a_;
    FFElem b_;
    int d_ = 0;
    long long prec_ = 0;
    bool d_coprime_p_ = false;
    Series f_, fstar_, sqrtD_, pi_;
    mutable std::mutex qmu_;
    mutable std::vector<Poly> qcache_;
};

inline Series OKElement::to_series(const QuadraticContext& ctx) const {
    return Series::from_poly(g_) + Series::from_poly(h_) * ctx.f();
}
inline Series OKElement::conj_series(const QuadraticContext& ctx) const {
    return Series::from_poly(g_) + Series::from_poly(h_) * ctx.fstar();
}

}  // namespace qdrinfeld
