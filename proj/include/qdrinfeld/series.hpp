#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <numeric>
#include <string>
#include <vector>

#include "field.hpp"
#include "poly.hpp"
#include "rational.hpp"

namespace qdrinfeld {

// Truncated Puiseux series in T^{-1} over F_q or F_{q^2}.
//
//   value = sum_i  c[i] * T^{-(lead+i)/ram},   coefficients known for all
//   scaled exponents < prec.
//
// The valuation is lead/ram (+infinity for the exact zero).  A series whose
// window cancelled completely ("zero at precision") keeps c empty with
// lead == prec: its valuation is only known to be >= prec/ram.
class Series {
public:
    static constexpr long long PREC_EXACT = (1LL << 58);
    static constexpr long long MAX_WINDOW = (1LL << 21);

    Series() = default;

    static Series zero(const FieldSpec& s) {
        Series r;
        r.spec_ = &s;
        r.zero_ = true;
        r.prec_ = PREC_EXACT;
        r.lead_ = PREC_EXACT;
        return r;
    }
    static Series constant(const FieldSpec& s, FFElem v, long long prec = PREC_EXACT) {
        if (v.is_zero()) return zero(s);
        Series r;
        r.spec_ = &s;
        r.level_ = v.level();
        r.ram_ = 1;
        r.lead_ = 0;
        r.prec_ = prec;
        r.c_ = {v.idx()};
        return r;
    }
    // c * T^{-lead/ram}
    static Series monomial(const FieldSpec& s, FFElem coeff, long long lead, int ram = 1,
                           long long prec = PREC_EXACT) {
        if (coeff.is_zero()) return zero(s);
        Series r;
        r.spec_ = &s;
        r.level_ = coeff.level();
        r.ram_ = ram;
        r.lead_ = lead;
        r.prec_ = prec;
        r.c_ = {coeff.idx()};
        return r;
    }
    static Series from_poly(const Poly& p, long long prec = PREC_EXACT) {
        if (p.is_zero()) return zero(p.spec());
        Series r;
        r.spec_ = &p.spec();
        r.level_ = Level::base;
        r.ram_ = 1;
        r.lead_ = -p.degree();
        r.prec_ = prec;
        r.c_.resize(p.degree() + 1);
        for (int i = 0; i <= p.degree(); ++i) r.c_[i] = p.coeff(p.degree() - i);
        r.normalize();
        return r;
    }
    // Unknown element of valuation >= prec/ram.
    static Series o_term(const FieldSpec& s, long long prec, int ram = 1,
                         Level level = Level::base) {
        Series r;
        r.spec_ = &s;
        r.level_ = level;
        r.ram_ = ram;
        r.lead_ = prec;
        r.prec_ = prec;
        return r;
    }

    const FieldSpec& spec() const { return *spec_; }
    Level level() const { return level_; }
    int ram() const { return ram_; }
    long long lead_scaled() const { return lead_; }
    long long prec_scaled() const { return prec_; }
    bool exact() const { return prec_ >= PREC_EXACT; }
    bool is_exact_zero() const { return zero_; }
    bool is_zero_at_prec() const { return zero_ || c_.empty(); }
    const std::vector<uint16_t>& window() const { return c_; }

    Rat val() const {
        if (zero_) return Rat::infinity();
        return Rat(lead_, ram_);
    }
    // Valuation with lower-bound semantics for cancelled windows.
    ValBound val_bound() const {
        if (zero_) return {Rat::infinity(), false};
        if (c_.empty()) return {Rat(prec_, ram_), true};
        return {Rat(lead_, ram_), false};
    }
    Rat prec_rat() const {
        if (exact()) return Rat::infinity();
        return Rat(prec_, ram_);
    }

    uint16_t coeff_scaled(long long e) const {
        if (zero_ || e < lead_ || e >= lead_ + static_cast<long long>(c_.size())) return 0;
        return c_[e - lead_];
    }

    FFElem sgn() const {
        if (is_zero_at_prec()) throw ValidationError("series: sign of zero");
        return FFElem(spec_, c_.front(), spec_->in_base(c_.front()) ? Level::base : level_);
    }

    Series promoted(Level lv) const {
        Series r = *this;
        if (lv == Level::ext2) r.level_ = Level::ext2;
        return r;
    }
    bool coeffs_in_base() const {
        for (uint16_t x : c_)
            if (!spec_->in_base(x)) return false;
        return true;
    }
    Series demoted_to_base() const {
        if (!coeffs_in_base()) throw ValidationError("series: coefficients not in F_q");
        Series r = *this;
        r.level_ = Level::base;
        return r;
    }

    Series rescaled(int new_ram) const {
        if (new_ram == ram_) return *this;
        if (new_ram % ram_ != 0) throw std::logic_error("series: incompatible ramification");
        Series r;
        r.spec_ = spec_;
        r.level_ = level_;
        r.zero_ = zero_;
        if (zero_) {
            r.prec_ = PREC_EXACT;
            r.lead_ = PREC_EXACT;
            r.ram_ = new_ram;
            return r;
        }
        long long f = new_ram / ram_;
        r.ram_ = new_ram;
        r.lead_ = lead_ * f;
        r.prec_ = sat(prec_ == PREC_EXACT ? PREC_EXACT : prec_ * f);
        if (!c_.empty()) {
            r.c_.assign((c_.size() - 1) * f + 1, 0);
            for (size_t i = 0; i < c_.size(); ++i) r.c_[i * f] = c_[i];
        }
        return r;
    }

    // Divide out the largest common factor of the exponent lattice.
    Series ram_canonical() const {
        if (zero_ || ram_ == 1) return *this;
        long long g = std::gcd(lead_ < 0 ? -lead_ : lead_, static_cast<long long>(ram_));
        if (!exact()) g = std::gcd(g, prec_ < 0 ? -prec_ : prec_);
        for (size_t i = 0; i < c_.size(); ++i)
            if (c_[i] != 0) g = std::gcd(g, static_cast<long long>(i));
        if (g <= 1) return *this;
        Series r;
        r.spec_ = spec_;
        r.level_ = level_;
        r.ram_ = static_cast<int>(ram_ / g);
        r.lead_ = lead_ / g;
        r.prec_ = exact() ? PREC_EXACT : prec_ / g;
        if (!c_.empty()) {
            r.c_.assign((c_.size() - 1) / g + 1, 0);
            for (size_t i = 0; i < c_.size(); i += g) r.c_[i / g] = c_[i];
        }
        return r;
    }

    Series truncated(long long new_prec_scaled) const {
        if (zero_) return *this;
        if (new_prec_scaled >= prec_) return *this;
        Series r = *this;
        r.prec_ = new_prec_scaled;
        if (r.lead_ >= r.prec_) {
            r.c_.clear();
            r.lead_ = r.prec_;
        } else if (static_cast<long long>(r.c_.size()) > r.prec_ - r.lead_) {
            r.c_.resize(r.prec_ - r.lead_);
        }
        r.normalize();
        return r;
    }

    // Formal multiplication by T^{-k/ram}.
    Series shifted(long long k) const {
        if (zero_) return *this;
        Series r = *this;
        r.lead_ += k;
        r.prec_ = sat(r.prec_ == PREC_EXACT ? PREC_EXACT : r.prec_ + k);
        return r;
    }

    Series scaled(const FFElem& k) const {
        if (k.is_zero()) return zero(*spec_);
        if (zero_) return *this;
        Series r = *this;
        if (k.level() == Level::ext2) r.level_ = Level::ext2;
        for (auto& x : r.c_) x = spec_->mul(x, k.idx());
        return r;
    }

    Series operator-() const { return scaled(-FFElem::one(*spec_)); }

    Series operator+(const Series& o) const { return add_sub(o, false); }
    Series operator-(const Series& o) const { return add_sub(o, true); }

    Series operator*(const Series& o) const {
        check_spec(o);
        if (zero_ || o.zero_) return zero(*spec_);
        auto [x, y] = aligned(o);
        // v(xy) >= v(x)+v(y); known to precision min(v(x)+prec(y), v(y)+prec(x)).
        long long pr = std::min(sat(x.lead_ + y.prec_), sat(y.lead_ + x.prec_));
        long long lead = x.lead_ + y.lead_;
        if (x.c_.empty() || y.c_.empty()) {
            Series r = o_term(*spec_, std::min(pr, sat(lead)), x.ram_, joint_level(o));
            return r;
        }
        long long win = std::min<long long>(pr == PREC_EXACT
                                                ? static_cast<long long>(x.c_.size() + y.c_.size()) - 1
                                                : pr - lead,
                                            static_cast<long long>(x.c_.size() + y.c_.size()) - 1);
        if (win > MAX_WINDOW) throw std::logic_error("series: window overflow in mul");
        std::vector<uint16_t> rc(win, 0);
        const FieldSpec& S = *spec_;
        for (size_t i = 0; i < x.c_.size(); ++i) {
            if (x.c_[i] == 0) continue;
            size_t jmax = std::min(y.c_.size(), static_cast<size_t>(win) - i);
            for (size_t j = 0; j < jmax; ++j)
                if (y.c_[j] != 0) rc[i + j] = S.add(rc[i + j], S.mul(x.c_[i], y.c_[j]));
        }
        Series r;
        r.spec_ = spec_;
        r.level_ = joint_level(o);
        r.ram_ = x.ram_;
        r.lead_ = lead;
        r.prec_ = pr;
        r.c_ = std::move(rc);
        r.normalize();
        return r;
    }

    Series inverse() const {
        if (is_zero_at_prec())
            throw PrecisionExhausted("series: division by a series indistinguishable from zero");
        if (c_.size() == 1 && exact()) {
            FFElem l(spec_, c_.front(), level_);
            return monomial(*spec_, l.inverse(), -lead_, ram_);
        }
        long long rel = relprec();
        long long win = rel == PREC_EXACT ? static_cast<long long>(c_.size()) + default_inv_window_
                                          : rel;
        if (win > MAX_WINDOW) throw std::logic_error("series: window overflow in inverse");
        std::vector<uint16_t> w(win, 0);
        const FieldSpec& S = *spec_;
        uint16_t l0 = S.inv(c_.front());
        w[0] = l0;
        for (long long k = 1; k < win; ++k) {
            uint16_t acc = 0;
            long long jmax = std::min<long long>(k, static_cast<long long>(c_.size()) - 1);
            for (long long j = 1; j <= jmax; ++j)
                if (c_[j] != 0 && w[k - j] != 0) acc = S.add(acc, S.mul(c_[j], w[k - j]));
            w[k] = S.mul(S.neg(acc), l0);
        }
        Series r;
        r.spec_ = spec_;
        r.level_ = level_;
        r.ram_ = ram_;
        r.lead_ = -lead_;
        r.prec_ = rel == PREC_EXACT ? sat(-lead_ + win) : sat(-lead_ + rel);
        r.c_ = std::move(w);
        r.normalize();
        return r;
    }

    Series operator/(const Series& o) const { return *this * o.inverse(); }

    Series pow_int(long long e) const {
        if (e < 0) return inverse().pow_int(-e);
        Series r = constant(*spec_, FFElem::one(*spec_));
        Series b = *this;
        while (e > 0) {
            if (e & 1) r = r * b;
            e >>= 1;
            b = (e > 0) ? b * b : b;
        }
        return r;
    }

    // x -> x^{q^k}: coefficientwise Frobenius with exponents scaled by q^k.
    // Exact on the level of precision (char p).  The window is clipped to
    // `rel_keep` scaled units past the lead.
    Series pow_q_power(int k, long long rel_keep) const {
        if (zero_) return *this;
        long long qk = 1;
        for (int i = 0; i < k; ++i) {
            if (qk > PREC_EXACT / spec_->q()) throw std::logic_error("series: q-power overflow");
            qk *= spec_->q();
        }
        Series r;
        r.spec_ = spec_;
        r.level_ = level_;
        r.ram_ = ram_;
        if (lead_ != 0 && std::abs(lead_) > PREC_EXACT / qk)
            throw std::logic_error("series: q-power exponent overflow");
        r.lead_ = lead_ * qk;
        r.prec_ = prec_ == PREC_EXACT ? PREC_EXACT : sat_mul(prec_, qk);
        r.prec_ = std::min(r.prec_, sat(r.lead_ + rel_keep));
        if (c_.empty()) {
            r.lead_ = r.prec_;
            return r;
        }
        long long win = r.exact() ? sat_mul(static_cast<long long>(c_.size() - 1), qk) + 1
                                  : r.prec_ - r.lead_;
        win = std::min(win, sat_mul(static_cast<long long>(c_.size() - 1), qk) + 1);
        if (win > MAX_WINDOW) throw std::logic_error("series: window overflow in q-power");
        r.c_.assign(win, 0);
        for (size_t i = 0; i < c_.size(); ++i) {
            long long pos = static_cast<long long>(i) * qk;
            if (pos >= win) break;
            if (c_[i] != 0) r.c_[pos] = spec_->pow(c_[i], qk);
        }
        r.normalize();
        return r;
    }

    bool indistinguishable(const Series& o) const { return (*this - o).is_zero_at_prec(); }

    std::string str() const;
    static Series parse(const FieldSpec& s, const std::string& text);

private:
    long long relprec() const {
        if (prec_ == PREC_EXACT) return PREC_EXACT;
        return prec_ - lead_;
    }
    static long long sat(long long v) { return std::min(v, PREC_EXACT); }
    static long long sat_mul(long long a, long long b) {
        if (a >= PREC_EXACT / b) return PREC_EXACT;
        return a * b;
    }
    void check_spec(const Series& o) const {
        if (spec_ != o.spec_) throw std::logic_error("series: mixed field specs");
    }
    Level joint_level(const Series& o) const {
        return (level_ == Level::ext2 || o.level_ == Level::ext2) ? Level::ext2 : Level::base;
    }
    std::pair<Series, Series> aligned(const Series& o) const {
        int r = std::lcm(ram_, o.ram_);
        return {rescaled(r), o.rescaled(r)};
    }

    Series add_sub(const Series& o, bool sub) const {
        check_spec(o);
        if (o.zero_) return *this;
        if (zero_) return sub ? -o : o;
        auto [x, y] = aligned(o);
        long long pr = std::min(x.prec_, y.prec_);
        long long lead = std::min(x.lead_, y.lead_);
        long long end = std::min(pr, std::max(x.lead_ + static_cast<long long>(x.c_.size()),
                                              y.lead_ + static_cast<long long>(y.c_.size())));
        if (end < lead) end = lead;
        if (end - lead > MAX_WINDOW) throw std::logic_error("series: window overflow in add");
        Series r;
        r.spec_ = spec_;
        r.level_ = joint_level(o);
        r.ram_ = x.ram_;
        r.lead_ = lead;
        r.prec_ = pr;
        r.c_.assign(end - lead, 0);
        const FieldSpec& S = *spec_;
        for (long long e = lead; e < end; ++e) {
            uint16_t a = x.coeff_scaled(e), b = y.coeff_scaled(e);
            r.c_[e - lead] = sub ? S.sub(a, b) : S.add(a, b);
        }
        r.normalize();
        // Exact cancellation of exact operands is an exact zero.
        if (r.c_.empty() && r.prec_ == PREC_EXACT) return zero(*spec_);
        return r;
    }

    void normalize() {
        size_t i = 0;
        while (i < c_.size() && c_[i] == 0) ++i;
        if (i > 0) {
            c_.erase(c_.begin(), c_.begin() + i);
            lead_ += static_cast<long long>(i);
        }
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
        if (prec_ != PREC_EXACT && lead_ + static_cast<long long>(c_.size()) > prec_)
            c_.resize(prec_ - lead_ > 0 ? prec_ - lead_ : 0);
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
        if (c_.empty()) {
            if (prec_ == PREC_EXACT) {
                zero_ = true;
                lead_ = PREC_EXACT;
            } else {
                lead_ = prec_;
            }
        }
    }

    const FieldSpec* spec_ = nullptr;
    Level level_ = Level::base;
    int ram_ = 1;
    long long lead_ = 0;
    long long prec_ = PREC_EXACT;
    std::vector<uint16_t> c_;
    bool zero_ = false;
    static constexpr long long default_inv_window_ = 64;
};

// ---------------------------------------------------------------------------
// text form: `c*T^(e)` terms joined by " + ", exponents as reduced rationals,
// trailing `O(T^(e))` records the precision edge.

inline std::string Series::str() const {
    if (zero_) return "0";
    Series cn = ram_canonical();
    auto expstr = [&](long long scaled) {
        long long num = -scaled;
        long long den = cn.ram_;
        long long g = std::gcd(num < 0 ? -num : num, den);
        if (g > 1) {
            num /= g;
            den /= g;
        }
        std::string s = std::to_string(num);
        if (den != 1) s += "/" + std::to_string(den);
        return s;
    };
    std::string out;
    for (size_t i = 0; i < cn.c_.size(); ++i) {
        if (cn.c_[i] == 0) continue;
        if (!out.empty()) out += " + ";
        FFElem e(cn.spec_, cn.c_[i], cn.level_);
        out += e.str() + "*T^(" + expstr(cn.lead_ + static_cast<long long>(i)) + ")";
    }
    if (!cn.exact()) {
        if (!out.empty()) out += " + ";
        out += "O(T^(" + expstr(cn.prec_) + "))";
    }
    if (out.empty()) out = "0";
    return out;
}

inline Series Series::parse(const FieldSpec& s, const std::string& text) {
    auto fail = [&](const std::string& why) {
        throw ValidationError("series parse: " + why + " in \"" + text + "\"");
    };
    std::string t;
    for (char ch : text)
        if (!isspace(static_cast<unsigned char>(ch))) t += ch;
    if (t == "0") return zero(s);

    struct Term {
        std::vector<int> coeff;
        long long en, ed;
        bool o_term;
    };
    std::vector<Term> terms;
    size_t pos = 0;
    while (pos < t.size()) {
        Term term{{}, 0, 1, false};
        if (t.compare(pos, 5, "O(T^(") == 0) {
            term.o_term = true;
            pos += 5;
        } else {
            if (t[pos] == '[') {
                size_t close = t.find(']', pos);
                if (close == std::string::npos) fail("unterminated coefficient");
                size_t p2 = pos + 1;
                while (p2 < close) {
                    size_t comma = std::min(t.find(',', p2), close);
                    term.coeff.push_back(std::stoi(t.substr(p2, comma - p2)));
                    p2 = comma + 1;
                }
                pos = close + 1;
            } else {
                size_t p2 = pos;
                while (p2 < t.size() && (isdigit(static_cast<unsigned char>(t[p2])))) ++p2;
                if (p2 == pos) fail("expected coefficient");
                term.coeff.push_back(std::stoi(t.substr(pos, p2 - pos)));
                pos = p2;
            }
            if (t.compare(pos, 4, "*T^(") != 0) fail("expected *T^(");
            pos += 4;
        }
        size_t close = t.find(')', pos);
        if (close == std::string::npos) fail("unterminated exponent");
        std::string es = t.substr(pos, close - pos);
        size_t slash = es.find('/');
        term.en = std::stoll(es.substr(0, slash));
        term.ed = slash == std::string::npos ? 1 : std::stoll(es.substr(slash + 1));
        pos = close + 1;
        if (term.o_term) {
            if (pos >= t.size() || t[pos] != ')') fail("unterminated O()");
            ++pos;
        }
        terms.push_back(term);
        if (pos < t.size()) {
            if (t[pos] != '+') fail("expected +");
            ++pos;
        }
    }
    long long ram = 1;
    for (auto& term : terms) ram = std::lcm(ram, term.ed);
    Series r;
    r.spec_ = &s;
    r.ram_ = static_cast<int>(ram);
    r.level_ = Level::base;
    long long lo = std::numeric_limits<long long>::max(), hi = std::numeric_limits<long long>::min();
    long long prec = PREC_EXACT;
    for (auto& term : terms) {
        long long scaled = -term.en * (ram / term.ed);
        if (term.o_term) {
            prec = scaled;
            continue;
        }
        lo = std::min(lo, scaled);
        hi = std::max(hi, scaled);
        if (term.coeff.size() == static_cast<size_t>(2 * s.n())) r.level_ = Level::ext2;
    }
    if (lo > hi) {  // only an O-term
        return o_term(s, prec, static_cast<int>(ram));
    }
    r.lead_ = lo;
    r.prec_ = prec;
    r.c_.assign(hi - lo + 1, 0);
    for (auto& term : terms) {
        if (term.o_term) continue;
        long long scaled = -term.en * (ram / term.ed);
        uint16_t v = term.coeff.size() == 1 && s.n() > 1
                         ? s.from_int(term.coeff[0])
                         : s.from_coeffs(term.coeff.size() == 1
                                             ? std::vector<int>{term.coeff[0]}
                                             : term.coeff);
        if (term.coeff.size() == 1 && s.n() == 1) v = s.from_int(term.coeff[0]);
        r.c_[scaled - lo] = v;
    }
    r.normalize();
    return r.ram_canonical();
}

// ---------------------------------------------------------------------------

// y with y^m = x to the precision of x.  Requires gcd(m, p) = 1; the leading
// coefficient takes the deterministic m-th root in F_{q^2}.  Newton iteration
// on y^m - x; the linear coefficient m of the update is a unit since p∤m.
inline Series ser_nth_root(const Series& x, long long m,
                           long long target_relprec = 0) {
    const FieldSpec& S = x.spec();
    if (m < 1) throw ValidationError("nth_root: m must be positive");
    if (m % S.p() == 0) throw ValidationError("nth_root: p divides m");
    if (x.is_zero_at_prec()) throw ValidationError("nth_root: root of zero");

    long long lead = x.lead_scaled();
    long long g = lead == 0 ? m : std::gcd(lead < 0 ? -lead : lead, m);
    long long mprime = m / g;                       // root ramification factor
    int ram_y = static_cast<int>(x.ram() * mprime);
    long long lead_y = lead / g;                    // = lead * ram_y / (ram * m)

    uint16_t cr = S.nth_root(x.sgn().idx(), m);
    FFElem c(&S, cr, S.in_base(cr) ? Level::base : Level::ext2);

    Series xr = x.rescaled(ram_y);
    long long prec_y;
    if (xr.exact()) {
        if (target_relprec <= 0)
            throw ValidationError("nth_root: exact input needs explicit target precision");
        prec_y = lead_y + target_relprec;
        xr = xr.truncated((prec_y - lead_y) * m + lead);
    } else {
        prec_y = xr.prec_scaled() - (m - 1) * lead_y;
    }

    Series y = Series::monomial(S, c, lead_y, ram_y, prec_y);
    FFElem minv = FFElem::from_int(S, m).inverse();
    for (int iter = 0; iter < 200; ++iter) {
        Series resid = y.pow_int(m) - xr;
        if (resid.is_zero_at_prec()) {
            return y.truncated(prec_y);
        }
        Series upd = (resid / y.pow_int(m - 1)).scaled(minv);
        y = (y - upd).truncated(prec_y);
    }
    throw PrecisionExhausted("nth_root: iteration failed to converge");
}

// 1-unit part <x> = x * pi^{deg} / sgn(x) for deg = -v(x); requires v(pi)=1.
inline Series ser_one_unit_part(const Series& x, const Series& pi, long long deg) {
    if (pi.val() != Rat(1)) throw ValidationError("one_unit_part: v(pi) != 1");
    if (x.is_zero_at_prec()) throw ValidationError("one_unit_part: zero input");
    Series r = x.scaled(x.sgn().inverse());
    if (deg == 0) return r;
    return r * pi.pow_int(deg);
}

}  // namespace qdrinfeld
