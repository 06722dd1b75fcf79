#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "field.hpp"

namespace qdrinfeld {

// Dense polynomial in T over F_q (base level).  c[i] is the coefficient of
// T^i; the zero polynomial has an empty coefficient vector.
class Poly {
public:
    Poly() = default;
    explicit Poly(const FieldSpec* spec) : spec_(spec) {}
    Poly(const FieldSpec* spec, std::vector<uint16_t> c) : spec_(spec), c_(std::move(c)) {
        for (uint16_t x : c_)
            if (!spec_->in_base(x)) throw std::domain_error("poly: coefficient outside F_q");
        trim();
    }
    static Poly from_ints(const FieldSpec& s, const std::vector<long long>& cs) {
        std::vector<uint16_t> c;
        c.reserve(cs.size());
        for (long long v : cs) c.push_back(s.from_int(v));
        return Poly(&s, std::move(c));
    }
    static Poly zero(const FieldSpec& s) { return Poly(&s); }
    static Poly one(const FieldSpec& s) { return Poly(&s, {1}); }
    static Poly monomial(const FieldSpec& s, int deg, uint16_t coeff = 1) {
        std::vector<uint16_t> c(deg + 1, 0);
        c[deg] = coeff;
        return Poly(&s, std::move(c));
    }

    const FieldSpec& spec() const { return *spec_; }
    bool is_zero() const { return c_.empty(); }
    int degree() const { return static_cast<int>(c_.size()) - 1; }  // -1 for zero
    uint16_t coeff(int i) const {
        return (i >= 0 && i < static_cast<int>(c_.size())) ? c_[i] : 0;
    }
    const std::vector<uint16_t>& coeffs() const { return c_; }
    uint16_t leading() const { return c_.empty() ? 0 : c_.back(); }
    bool monic() const { return leading() == 1; }

    Poly operator+(const Poly& o) const {
        std::vector<uint16_t> r(std::max(c_.size(), o.c_.size()), 0);
        for (size_t i = 0; i < r.size(); ++i) r[i] = spec_->add(coeff(i), o.coeff(i));
        return Poly(spec_, std::move(r));
    }
    Poly operator-(const Poly& o) const {
        std::vector<uint16_t> r(std::max(c_.size(), o.c_.size()), 0);
        for (size_t i = 0; i < r.size(); ++i) r[i] = spec_->sub(coeff(i), o.coeff(i));
        return Poly(spec_, std::move(r));
    }
    Poly operator*(const Poly& o) const {
        if (is_zero() || o.is_zero()) return Poly(spec_);
        std::vector<uint16_t> r(c_.size() + o.c_.size() - 1, 0);
        for (size_t i = 0; i < c_.size(); ++i) {
            if (c_[i] == 0) continue;
            for (size_t j = 0; j < o.c_.size(); ++j)
                if (o.c_[j] != 0) r[i + j] = spec_->add(r[i + j], spec_->mul(c_[i], o.c_[j]));
        }
        return Poly(spec_, std::move(r));
    }
    Poly scale(uint16_t k) const {
        std::vector<uint16_t> r(c_.size());
        for (size_t i = 0; i < c_.size(); ++i) r[i] = spec_->mul(c_[i], k);
        return Poly(spec_, std::move(r));
    }
    Poly shift(int k) const {  // multiply by T^k
        if (is_zero()) return *this;
        std::vector<uint16_t> r(c_.size() + k, 0);
        for (size_t i = 0; i < c_.size(); ++i) r[i + k] = c_[i];
        return Poly(spec_, std::move(r));
    }

    bool operator==(const Poly& o) const { return spec_ == o.spec_ && c_ == o.c_; }
    bool operator!=(const Poly& o) const { return !(*this == o); }
    bool operator<(const Poly& o) const {  // degree-then-lex order, for sorting
        if (c_.size() != o.c_.size()) return c_.size() < o.c_.size();
        for (size_t i = c_.size(); i-- > 0;)
            if (c_[i] != o.c_[i]) return c_[i] < o.c_[i];
        return false;
    }

    std::string str() const {
        if (is_zero()) return "0";
        std::string s;
        for (int i = degree(); i >= 0; --i) {
            if (c_[i] == 0) continue;
            if (!s.empty()) s += " + ";
            FFElem e(spec_, c_[i], Level::base);
            if (i == 0)
                s += e.str();
            else if (c_[i] == 1)
                s += (i == 1 ? "T" : "T^" + std::to_string(i));
            else
                s += e.str() + "*" + (i == 1 ? std::string("T") : "T^" + std::to_string(i));
        }
        return s;
    }

private:
    void trim() {
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
    }

    const FieldSpec* spec_ = nullptr;
    std::vector<uint16_t> c_;
};

}  // namespace qdrinfeld
