#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

namespace qdrinfeld {

// Exact rational with an explicit +infinity, used for valuations and
// precision bounds. Denominator > 0, always reduced.
class Rat {
public:
    Rat() = default;
    Rat(long long n) : num_(n), den_(1) {}
    Rat(long long n, long long d) : num_(n), den_(d) { normalize(); }

    static Rat infinity() {
        Rat r;
        r.inf_ = true;
        return r;
    }

    bool is_infinite() const { return inf_; }
    long long num() const { return num_; }
    long long den() const { return den_; }

    Rat operator+(const Rat& o) const {
        if (inf_ || o.inf_) return infinity();
        return Rat(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
    }
    Rat operator-(const Rat& o) const {
        if (inf_) return infinity();
        if (o.inf_) throw std::domain_error("Rat: infinity subtracted");
        return Rat(num_ * o.den_ - o.num_ * den_, den_ * o.den_);
    }
    Rat operator-() const {
        if (inf_) throw std::domain_error("Rat: negated infinity");
        return Rat(-num_, den_);
    }
    Rat operator*(long long k) const {
        if (inf_) return infinity();
        return Rat(num_ * k, den_);
    }

    bool operator==(const Rat& o) const {
        if (inf_ || o.inf_) return inf_ == o.inf_;
        return num_ == o.num_ && den_ == o.den_;
    }
    bool operator!=(const Rat& o) const { return !(*this == o); }
    bool operator<(const Rat& o) const {
        if (inf_) return false;
        if (o.inf_) return true;
        return static_cast<__int128>(num_) * o.den_ < static_cast<__int128>(o.num_) * den_;
    }
    bool operator<=(const Rat& o) const { return *this < o || *this == o; }
    bool operator>(const Rat& o) const { return o < *this; }
    bool operator>=(const Rat& o) const { return o <= *this; }

    std::string str() const {
        if (inf_) return "inf";
        if (den_ == 1) return std::to_string(num_);
        return std::to_string(num_) + "/" + std::to_string(den_);
    }

private:
    void normalize() {
        if (den_ == 0) throw std::domain_error("Rat: zero denominator");
        if (den_ < 0) {
            num_ = -num_;
            den_ = -den_;
        }
        long long g = std::gcd(num_ < 0 ? -num_ : num_, den_);
        if (g > 1) {
            num_ /= g;
            den_ /= g;
        }
    }

    long long num_ = 0;
    long long den_ = 1;
    bool inf_ = false;
};

// Valuation of a quantity that may only be known up to working precision.
// When `lower_bound` is set, the true valuation is >= `v`.
struct ValBound {
    Rat v;
    bool lower_bound = false;

    bool at_least(const Rat& bound) const { return v >= bound; }
    bool exact() const { return !lower_bound; }
    std::string str() const { return lower_bound ? (">=" + v.str()) : v.str(); }
};

}  // namespace qdrinfeld
