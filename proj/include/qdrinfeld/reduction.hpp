#pragma once

#include <map>
#include <numeric>
#include <vector>

#include "series.hpp"

namespace qdrinfeld {

// Greedy degree-graded F_q-linear reduction.  Vectors are first brought to
// pairwise-distinct leading exponents; a target is then reduced from its
// leading exponent downwards.  Deterministic.  All rows are kept on a common
// exponent lattice; keys are scaled exponents on that lattice.
class GradedReducer {
public:
    GradedReducer() = default;
    explicit GradedReducer(std::vector<Series> vectors) {
        for (auto& v : vectors) insert(std::move(v));
    }

    void insert(Series v) {
        v = align(std::move(v));
        while (!v.is_zero_at_prec()) {
            auto it = rows_.find(v.lead_scaled());
            if (it == rows_.end()) {
                rows_.emplace(v.lead_scaled(), std::move(v));
                return;
            }
            FFElem c = v.sgn() / it->second.sgn();
            v = v - it->second.scaled(c);
        }
    }

    size_t rank() const { return rows_.size(); }
    int ram() const { return ram_; }

    struct Result {
        Series remainder;
        // (leading scaled exponent of the row used, coefficient) pairs
        std::vector<std::pair<long long, FFElem>> combination;
    };

    // Subtract row multiples while the leading exponent of the running
    // remainder matches a row; stops when it does not (or nothing is left).
    Result reduce(Series target) const {
        if (target.ram() != ram_ && ram_ % target.ram() == 0)
            target = target.rescaled(ram_);
        else if (target.ram() != ram_)
            throw std::logic_error("reduce: incompatible target ramification");
        Result res{Series::zero(target.spec()), {}};
        while (!target.is_zero_at_prec()) {
            auto it = rows_.find(target.lead_scaled());
            if (it == rows_.end()) break;
            FFElem c = target.sgn() / it->second.sgn();
            res.combination.emplace_back(target.lead_scaled(), c);
            target = target - it->second.scaled(c);
        }
        res.remainder = std::move(target);
        return res;
    }

    std::vector<long long> keys() const {
        std::vector<long long> out;
        out.reserve(rows_.size());
        for (auto& [k, v] : rows_) out.push_back(k);
        return out;
    }
    const Series* row(long long key) const {
        auto it = rows_.find(key);
        return it == rows_.end() ? nullptr : &it->second;
    }

private:
    Series align(Series v) {
        int r = std::lcm(ram_, v.ram());
        if (r != ram_) {
            std::map<long long, Series> rebuilt;
            long long f = r / ram_;
            for (auto& [k, row] : rows_) rebuilt.emplace(k * f, row.rescaled(r));
            rows_ = std::move(rebuilt);
            ram_ = r;
        }
        return v.rescaled(ram_);
    }

    int ram_ = 1;
    std::map<long long, Series> rows_;
};

}  // namespace qdrinfeld
