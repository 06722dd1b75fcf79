#pragma once

#include <cstdint>
#include <memory>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace qdrinfeld {

class ValidationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class PrecisionExhausted : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class Level : uint8_t { base, ext2 };

// F_q with q = p^n together with its quadratic extension F_{q^2}.
//
// Elements of F_{q^2} are indexed 0 .. q^2-1: index = lo + q*hi where lo, hi
// are F_q indices, and an F_q index is sum c_i p^i over the F_p coefficients.
// The subfield F_q is exactly the index range [0, q).  Multiplication runs on
// discrete-log tables over the canonical generator: the least full-order
// element in index (coefficient-lexicographic) order.
class FieldSpec {
public:
    FieldSpec(int p, int n, std::vector<int> modulus = {}, std::vector<int> ext2 = {},
              int q_bound = 64)
        : p_(p), n_(n) {
        if (p < 2 || !is_prime(p)) throw ValidationError("field: p must be prime");
        if (n < 1) throw ValidationError("field: extension degree must be >= 1");
        long long qq = 1;
        for (int i = 0; i < n; ++i) {
            qq *= p;
            if (qq > q_bound) throw ValidationError("field: q exceeds configured bound");
        }
        q_ = static_cast<int>(qq);
        q2_ = q_ * q_;

        modulus_ = modulus.empty() ? default_modulus() : canon_coeffs(modulus, p_, n_);
        if (!poly_irreducible_fp(modulus_))
            throw ValidationError("field: modulus is reducible over F_p");

        build_base_tables();

        ext2_ = ext2.empty() ? default_ext2() : canon_coeffs(ext2, q_, 2);
        if (has_root_in_fq(ext2_))
            throw ValidationError("field: ext2 modulus is reducible over F_q");

        build_ext_tables();
    }

    int p() const { return p_; }
    int n() const { return n_; }
    int q() const { return q_; }
    int q2() const { return q2_; }
    const std::vector<int>& modulus() const { return modulus_; }
    const std::vector<int>& ext2_modulus() const { return ext2_; }
    uint16_t generator() const { return gen_; }

    bool in_base(uint16_t a) const { return a < static_cast<uint16_t>(q_); }

    uint16_t add(uint16_t a, uint16_t b) const { return add_[a * q2_ + b]; }
    uint16_t neg(uint16_t a) const { return neg_[a]; }
    uint16_t sub(uint16_t a, uint16_t b) const { return add_[a * q2_ + neg_[b]]; }
    uint16_t mul(uint16_t a, uint16_t b) const {
        if (a == 0 || b == 0) return 0;
        return exp_[(log_[a] + log_[b]) % (q2_ - 1)];
    }
    uint16_t inv(uint16_t a) const {
        if (a == 0) throw std::domain_error("field: inverse of zero");
        return exp_[(q2_ - 1 - log_[a]) % (q2_ - 1)];
    }
    uint16_t div(uint16_t a, uint16_t b) const { return mul(a, inv(b)); }
    uint16_t pow(uint16_t a, long long e) const {
        if (a == 0) {
            if (e <= 0) throw std::domain_error("field: 0^e with e <= 0");
            return 0;
        }
        long long m = q2_ - 1;
        long long r = (static_cast<long long>(log_[a]) * (e % m)) % m;
        if (r < 0) r += m;
        return exp_[r];
    }
    // x -> x^p, the absolute Frobenius.
    uint16_t frob_p(uint16_t a) const { return pow(a, p_); }
    // x -> x^q; fixes F_q pointwise.
    uint16_t frob_q(uint16_t a) const { return pow(a, q_); }

    uint16_t one() const { return 1; }
    uint16_t minus_one() const { return neg_[1]; }

    // Embedding of an integer as a constant, reduced mod p.
    uint16_t from_int(long long v) const {
        long long r = v % p_;
        if (r < 0) r += p_;
        return static_cast<uint16_t>(r);
    }
    // F_p coefficient vector (length n for base, 2n for ext2) -> index.
    uint16_t from_coeffs(const std::vector<int>& cs) const {
        if (cs.size() != static_cast<size_t>(n_) && cs.size() != static_cast<size_t>(2 * n_))
            throw ValidationError("field: coefficient count must be n or 2n");
        long long idx = 0, scale = 1;
        for (int i = 0; i < static_cast<int>(cs.size()); ++i) {
            long long c = cs[i] % p_;
            if (c < 0) c += p_;
            idx += c * scale;
            scale *= p_;
        }
        return static_cast<uint16_t>(idx);
    }
    std::vector<int> coeffs(uint16_t a, Level level) const {
        int len = level == Level::base ? n_ : 2 * n_;
        std::vector<int> out(len);
        int v = a;
        for (int i = 0; i < len; ++i) {
            out[i] = v % p_;
            v /= p_;
        }
        if (level == Level::base && v != 0)
            throw std::domain_error("field: element does not lie in the base field");
        return out;
    }

    long long order(uint16_t a) const {
        if (a == 0) throw std::domain_error("field: order of zero");
        long long m = q2_ - 1;
        return m / std::gcd(m, static_cast<long long>(log_[a]));
    }

    // Deterministic element of exact multiplicative order `ord`: the smallest
    // power of the canonical generator with that order.
    uint16_t root_of_unity(long long ord) const {
        if (ord < 1 || (q2_ - 1) % ord != 0)
            throw ValidationError("field: order does not divide q^2-1");
        return exp_[(q2_ - 1) / ord % (q2_ - 1)];
    }

    // Smallest m-th root: g^k with minimal k >= 0 such that (g^k)^m = a.
    // Throws if a is not an m-th power in F_{q^2}.
    uint16_t nth_root(uint16_t a, long long m) const {
        if (a == 0) return 0;
        long long mod = q2_ - 1;
        long long g = std::gcd(m % mod, mod);
        long long la = log_[a];
        if (la % g != 0) throw ValidationError("field: element is not an m-th power");
        // Solve m*k = la (mod mod).
        long long mm = (m % mod + mod) % mod;
        long long step = mod / g;
        long long k0 = solve_linear(mm, la, mod);
        long long k = k0 % step;
        if (k < 0) k += step;
        return exp_[k];
    }

    // Product of all nonzero elements of F_q; equals -1.
    uint16_t prod_nonzero() const {
        uint16_t r = 1;
        for (int a = 1; a < q_; ++a) r = mul(r, static_cast<uint16_t>(a));
        return r;
    }

private:
    static bool is_prime(int v) {
        for (int i = 2; i * i <= v; ++i)
            if (v % i == 0) return false;
        return true;
    }

    static std::vector<int> canon_coeffs(std::vector<int> cs, int mod, int deg) {
        if (static_cast<int>(cs.size()) != deg + 1)
            throw ValidationError("field: modulus degree mismatch");
        for (auto& c : cs) {
            c %= mod;
            if (c < 0) c += mod;
        }
        if (cs.back() != 1) throw ValidationError("field: modulus must be monic");
        return cs;
    }

    // --- F_p[x] helpers for the base modulus ---------------------------------

    std::vector<int> fp_poly_mod(std::vector<int> a, const std::vector<int>& m) const {
        int dm = static_cast<int>(m.size()) - 1;
        while (static_cast<int>(a.size()) > dm) {
            int lead = a.back();
            int shift = static_cast<int>(a.size()) - 1 - dm;
            if (lead != 0)
                for (int i = 0; i <= dm; ++i) {
                    int& t = a[shift + i];
                    t = (t - lead * m[i]) % p_;
                    if (t < 0) t += p_;
                }
            a.pop_back();
        }
        return a;
    }

    bool poly_divides_fp(const std::vector<int>& div, const std::vector<int>& m) const {
        auto r = fp_poly_mod(m, div);
        for (int c : r)
            if (c != 0) return false;
        return true;
    }

    bool poly_irreducible_fp(const std::vector<int>& m) const {
        int deg = static_cast<int>(m.size()) - 1;
        if (deg == 1) return true;
        // Trial division by all monic polynomials of degree 1..deg/2.
        for (int dd = 1; 2 * dd <= deg; ++dd) {
            long long count = 1;
            for (int i = 0; i < dd; ++i) count *= p_;
            for (long long t = 0; t < count; ++t) {
                std::vector<int> div(dd + 1, 0);
                long long v = t;
                for (int i = 0; i < dd; ++i) {
                    div[i] = static_cast<int>(v % p_);
                    v /= p_;
                }
                div[dd] = 1;
                if (poly_divides_fp(div, m)) return false;
            }
        }
        return true;
    }

    std::vector<int> default_modulus() const {
        if (n_ == 1) return {0, 1};  // x
        long long count = 1;
        for (int i = 0; i < n_; ++i) count *= p_;
        for (long long t = 0; t < count; ++t) {
            std::vector<int> m(n_ + 1, 0);
            long long v = t;
            for (int i = 0; i < n_; ++i) {
                m[i] = static_cast<int>(v % p_);
                v /= p_;
            }
            m[n_] = 1;
            if (poly_irreducible_fp(m)) return m;
        }
        throw std::logic_error("field: no irreducible modulus found");
    }

    // --- base field (F_q) structural arithmetic, used to bootstrap tables ---

    uint16_t base_add(uint16_t a, uint16_t b) const {
        int r = 0, scale = 1;
        for (int i = 0; i < n_; ++i) {
            int s = (a % p_ + b % p_) % p_;
            r += s * scale;
            scale *= p_;
            a /= p_;
            b /= p_;
        }
        return static_cast<uint16_t>(r);
    }

    uint16_t base_mul(uint16_t a, uint16_t b) const {
        std::vector<int> da(n_), db(n_), prod(2 * n_ - 1, 0);
        for (int i = 0; i < n_; ++i) {
            da[i] = a % p_;
            a /= p_;
            db[i] = b % p_;
            b /= p_;
        }
        for (int i = 0; i < n_; ++i)
            for (int j = 0; j < n_; ++j) prod[i + j] = (prod[i + j] + da[i] * db[j]) % p_;
        prod = fp_poly_mod(prod, modulus_);
        int r = 0, scale = 1;
        for (int i = 0; i < static_cast<int>(prod.size()); ++i) {
            r += prod[i] * scale;
            scale *= p_;
        }
        return static_cast<uint16_t>(r);
    }

    void build_base_tables() {
        base_mul_.assign(q_ * q_, 0);
        for (int a = 0; a < q_; ++a)
            for (int b = 0; b < q_; ++b)
                base_mul_[a * q_ + b] = base_mul(static_cast<uint16_t>(a), static_cast<uint16_t>(b));
    }

    // --- F_q^2 as F_q[y]/(ext2) ----------------------------------------------

    bool has_root_in_fq(const std::vector<int>& e2) const {
        for (int x = 0; x < q_; ++x) {
            uint16_t xx = static_cast<uint16_t>(x);
            uint16_t v = base_add(base_mul_[xx * q_ + xx],
                                  base_add(base_mul_[e2[1] * q_ + xx], static_cast<uint16_t>(e2[0])));
            if (v == 0) return true;
        }
        return false;
    }

    std::vector<int> default_ext2() const {
        for (int idx = 0; idx < q2_; ++idx) {
            std::vector<int> e2 = {idx % q_, idx / q_, 1};
            if (!has_root_in_fq(e2)) return e2;
        }
        throw std::logic_error("field: no irreducible quadratic found");
    }

    uint16_t ext_add(uint16_t a, uint16_t b) const {
        uint16_t lo = base_add(a % q_, b % q_);
        uint16_t hi = base_add(a / q_, b / q_);
        return static_cast<uint16_t>(lo + q_ * hi);
    }

    uint16_t ext_mul_slow(uint16_t a, uint16_t b) const {
        // (a0 + a1 y)(b0 + b1 y) mod (y^2 + e1 y + e0)
        uint16_t a0 = a % q_, a1 = a / q_, b0 = b % q_, b1 = b / q_;
        uint16_t c0 = base_mul_[a0 * q_ + b0];
        uint16_t c1 = base_add(base_mul_[a0 * q_ + b1], base_mul_[a1 * q_ + b0]);
        uint16_t c2 = base_mul_[a1 * q_ + b1];
        // y^2 = -e1 y - e0
        uint16_t ne0 = base_neg(static_cast<uint16_t>(ext2_[0]));
        uint16_t ne1 = base_neg(static_cast<uint16_t>(ext2_[1]));
        c0 = base_add(c0, base_mul_[c2 * q_ + ne0]);
        c1 = base_add(c1, base_mul_[c2 * q_ + ne1]);
        return static_cast<uint16_t>(c0 + q_ * c1);
    }

    uint16_t base_neg(uint16_t a) const {
        int r = 0, scale = 1;
        for (int i = 0; i < n_; ++i) {
            int c = a % p_;
            r += (c == 0 ? 0 : p_ - c) * scale;
            scale *= p_;
            a /= p_;
        }
        return static_cast<uint16_t>(r);
    }

    void build_ext_tables() {
        neg_.assign(q2_, 0);
        for (int a = 0; a < q2_; ++a) {
            uint16_t lo = base_neg(a % q_), hi = base_neg(a / q_);
            neg_[a] = static_cast<uint16_t>(lo + q_ * hi);
        }
        add_.assign(static_cast<size_t>(q2_) * q2_, 0);
        for (int a = 0; a < q2_; ++a)
            for (int b = 0; b < q2_; ++b)
                add_[static_cast<size_t>(a) * q2_ + b] =
                    ext_add(static_cast<uint16_t>(a), static_cast<uint16_t>(b));

        // Canonical generator: least index of full multiplicative order.
        gen_ = 0;
        for (int a = 1; a < q2_; ++a) {
            uint16_t x = static_cast<uint16_t>(a);
            uint16_t acc = x;
            int ord = 1;
            while (acc != 1) {
                acc = ext_mul_slow(acc, x);
                ++ord;
            }
            if (ord == q2_ - 1) {
                gen_ = x;
                break;
            }
        }
        if (gen_ == 0) throw std::logic_error("field: no generator found");

        exp_.assign(q2_ - 1, 0);
        log_.assign(q2_, 0);
        uint16_t acc = 1;
        for (int k = 0; k < q2_ - 1; ++k) {
            exp_[k] = acc;
            log_[acc] = k;
            acc = ext_mul_slow(acc, gen_);
        }
    }

    static long long solve_linear(long long a, long long b, long long m) {
        // One solution of a*x = b (mod m), assuming gcd(a,m) | b.
        long long g = std::gcd(a, m);
        long long a1 = a / g, b1 = (b / g) % (m / g), m1 = m / g;
        // Inverse of a1 mod m1 by extended Euclid.
        long long t = 0, newt = 1, r = m1, newr = a1 % m1;
        while (newr != 0) {
            long long qd = r / newr;
            std::swap(t -= qd * newt, newt);
            std::swap(r -= qd * newr, newr);
        }
        if (t < 0) t += m1;
        return (t * b1) % m1;
    }

    int p_, n_, q_, q2_;
    std::vector<int> modulus_, ext2_;
    std::vector<uint16_t> base_mul_;
    std::vector<uint16_t> add_, neg_, exp_;
    std::vector<int> log_;
    uint16_t gen_ = 0;
};

// A field element: index into F_{q^2} plus the level it is meant to live in.
// Equality is index equality (F_q sits inside F_{q^2} index-preservingly).
class FFElem {
public:
    FFElem() = default;
    FFElem(const FieldSpec* spec, uint16_t idx, Level level) : spec_(spec), idx_(idx), level_(level) {
        if (level == Level::base && !spec->in_base(idx))
            throw std::domain_error("field: index outside base level");
    }

    static FFElem zero(const FieldSpec& s) { return FFElem(&s, 0, Level::base); }
    static FFElem one(const FieldSpec& s) { return FFElem(&s, 1, Level::base); }
    static FFElem from_int(const FieldSpec& s, long long v) {
        return FFElem(&s, s.from_int(v), Level::base);
    }
    static FFElem from_coeffs(const FieldSpec& s, const std::vector<int>& cs) {
        Level lv = cs.size() == static_cast<size_t>(s.n()) ? Level::base : Level::ext2;
        return FFElem(&s, s.from_coeffs(cs), lv);
    }

    const FieldSpec& spec() const { return *spec_; }
    uint16_t idx() const { return idx_; }
    Level level() const { return level_; }
    bool is_zero() const { return idx_ == 0; }
    bool in_base() const { return spec_->in_base(idx_); }
    std::vector<int> coeffs() const { return spec_->coeffs(idx_, level_); }

    FFElem operator+(const FFElem& o) const { return wrap(spec_->add(idx_, o.idx_), o); }
    FFElem operator-(const FFElem& o) const { return wrap(spec_->sub(idx_, o.idx_), o); }
    FFElem operator*(const FFElem& o) const { return wrap(spec_->mul(idx_, o.idx_), o); }
    FFElem operator/(const FFElem& o) const { return wrap(spec_->div(idx_, o.idx_), o); }
    FFElem operator-() const { return FFElem(spec_, spec_->neg(idx_), level_); }
    FFElem inverse() const { return FFElem(spec_, spec_->inv(idx_), level_); }
    FFElem pow(long long e) const { return FFElem(spec_, spec_->pow(idx_, e), level_); }
    FFElem frob_q() const { return FFElem(spec_, spec_->frob_q(idx_), level_); }

    bool operator==(const FFElem& o) const { return spec_ == o.spec_ && idx_ == o.idx_; }
    bool operator!=(const FFElem& o) const { return !(*this == o); }

    long long mult_order() const { return spec_->order(idx_); }

    std::string str() const {
        if (spec_->n() == 1 && level_ == Level::base) return std::to_string(idx_);
        auto cs = coeffs();
        std::string s = "[";
        for (size_t i = 0; i < cs.size(); ++i) s += (i ? "," : "") + std::to_string(cs[i]);
        return s + "]";
    }

private:
    FFElem wrap(uint16_t r, const FFElem& o) const {
        if (spec_ != o.spec_) throw std::logic_error("field: mixed field specs");
        Level lv = (level_ == Level::ext2 || o.level_ == Level::ext2) ? Level::ext2 : Level::base;
        return FFElem(spec_, r, lv);
    }

    const FieldSpec* spec_ = nullptr;
    uint16_t idx_ = 0;
    Level level_ = Level::base;
};

inline FFElem ff_make(const FieldSpec& s, long long v) { return FFElem::from_int(s, v); }
inline FFElem ff_make(const FieldSpec& s, const std::vector<int>& cs) {
    return FFElem::from_coeffs(s, cs);
}
inline FFElem ff_root_of_unity(const FieldSpec& s, long long order) {
    uint16_t r = s.root_of_unity(order);
    return FFElem(&s, r, s.in_base(r) ? Level::base : Level::ext2);
}
inline FFElem ff_prod_nonzero(const FieldSpec& s) {
    return FFElem(&s, s.prod_nonzero(), Level::base);
}

}  // namespace qdrinfeld
