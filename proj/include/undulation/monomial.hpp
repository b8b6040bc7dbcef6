#ifndef UNDULATION_MONOMIAL_HPP
#define UNDULATION_MONOMIAL_HPP

#include <algorithm>
#include <cstdint>
#include <utility>
#include <vector>

#include "undulation/errors.hpp"
#include "undulation/varid.hpp"

namespace undulation {

/// A power product of variables: sorted (variable, exponent) pairs with no
/// zero exponents. Exponents are small (degrees in this library never
/// exceed single digits); overflow throws.
class Monomial {
public:
    using Factor = std::pair<VarId, std::uint8_t>;

    Monomial() = default;

    static Monomial one() { return Monomial(); }

    static Monomial var(VarId v, unsigned exp = 1) {
        Monomial m;
        if (exp > 0) {
            if (exp > 255) throw MathError("Monomial: exponent too large");
            m.factors_.emplace_back(v, static_cast<std::uint8_t>(exp));
        }
        return m;
    }

    static Monomial from_factors(std::vector<Factor> factors) {
        std::sort(factors.begin(), factors.end(),
                  [](const Factor& a, const Factor& b) { return a.first < b.first; });
        Monomial m;
        for (const auto& [v, e] : factors) {
            if (e == 0) continue;
            if (!m.factors_.empty() && m.factors_.back().first == v) {
                unsigned s = m.factors_.back().second + e;
                if (s > 255) throw MathError("Monomial: exponent overflow");
                m.factors_.back().second = static_cast<std::uint8_t>(s);
            } else {
                m.factors_.emplace_back(v, e);
            }
        }
        return m;
    }

    const std::vector<Factor>& factors() const { return factors_; }
    bool is_one() const { return factors_.empty(); }

    int total_degree() const {
        int d = 0;
        for (const auto& [v, e] : factors_) d += e;
        return d;
    }

    int degree_of(VarId v) const {
        for (const auto& [w, e] : factors_)
            if (w == v) return e;
        return 0;
    }

    Monomial mul(const Monomial& o) const {
        Monomial out;
        out.factors_.reserve(factors_.size() + o.factors_.size());
        std::size_t i = 0, j = 0;
        while (i < factors_.size() || j < o.factors_.size()) {
            if (j == o.factors_.size() ||
                (i < factors_.size() && factors_[i].first < o.factors_[j].first)) {
                out.factors_.push_back(factors_[i++]);
            } else if (i == factors_.size() || o.factors_[j].first < factors_[i].first) {
                out.factors_.push_back(o.factors_[j++]);
            } else {
                unsigned s = factors_[i].second + o.factors_[j].second;
                if (s > 255) throw MathError("Monomial: exponent overflow");
                out.factors_.emplace_back(factors_[i].first, static_cast<std::uint8_t>(s));
                ++i;
                ++j;
            }
        }
        return out;
    }

    // Graded lexicographic order: higher total degree first, ties broken
    // lexicographically with higher-precedence (smaller id) variables first.
    // Returns <0, 0, >0 like strcmp, with >0 meaning *this is grlex-greater.
    int compare(const Monomial& o) const {
        int da = total_degree(), db = o.total_degree();
        if (da != db) return da < db ? -1 : 1;
        std::size_t i = 0, j = 0;
        while (i < factors_.size() && j < o.factors_.size()) {
            if (factors_[i].first < o.factors_[j].first) return 1;  // we have the bigger var
            if (o.factors_[j].first < factors_[i].first) return -1;
            if (factors_[i].second != o.factors_[j].second)
                return factors_[i].second > o.factors_[j].second ? 1 : -1;
            ++i;
            ++j;
        }
        if (i < factors_.size()) return 1;
        if (j < o.factors_.size()) return -1;
        return 0;
    }

    bool operator==(const Monomial& o) const { return factors_ == o.factors_; }
    bool operator!=(const Monomial& o) const { return !(*this == o); }

private:
    std::vector<Factor> factors_;
};

// Map comparator: grlex-descending, so iteration starts at the leading term.
struct MonomialGrlexDesc {
    bool operator()(const Monomial& a, const Monomial& b) const { return a.compare(b) > 0; }
};

/// All exponent vectors of total degree d in nvars variables, graded-lex
/// ordered with variable 0 most significant. Length C(d+nvars-1, nvars-1).
inline std::vector<std::vector<std::uint8_t>> enumerate_monomials(int degree, int nvars) {
    if (degree < 0 || nvars < 1) throw MathError("enumerate_monomials: bad arguments");
    std::vector<std::vector<std::uint8_t>> out;
    std::vector<std::uint8_t> cur(static_cast<std::size_t>(nvars), 0);
    auto rec = [&](auto&& self, int pos, int remaining) -> void {
        if (pos == nvars - 1) {
            cur[static_cast<std::size_t>(pos)] = static_cast<std::uint8_t>(remaining);
            out.push_back(cur);
            return;
        }
        for (int e = remaining; e >= 0; --e) {
            cur[static_cast<std::size_t>(pos)] = static_cast<std::uint8_t>(e);
            self(self, pos + 1, remaining - e);
        }
    };
    rec(rec, 0, degree);
    return out;
}

} // namespace undulation

#endif
