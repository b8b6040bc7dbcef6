#ifndef UNDULATION_TRIVARIATE_HPP
#define UNDULATION_TRIVARIATE_HPP

#include <array>
#include <vector>

#include "undulation/errors.hpp"
#include "undulation/monomial.hpp"

namespace undulation {

using Exponents3 = std::array<int, 3>;

/// Exponent triples (i,j,k) with i+j+k=d, lexicographically descending:
/// (d,0,0), (d-1,1,0), (d-1,0,1), ... For d=4 this is the slot order that
/// the letters a..o name.
inline std::vector<Exponents3> x_monomials(int d) {
    std::vector<Exponents3> out;
    for (int i = d; i >= 0; --i)
        for (int j = d - i; j >= 0; --j) out.push_back({i, j, d - i - j});
    return out;
}

inline int x_monomial_count(int d) { return (d + 1) * (d + 2) / 2; }

inline int x_monomial_index(int d, int i, int j) {
    return (d - i) * (d - i + 1) / 2 + (d - i - j);
}

/// Dense homogeneous trivariate form of fixed degree; coefficient vector
/// indexed by x_monomials(degree).
template <class R>
class TrivForm {
public:
    using Elem = typename R::Elem;

    TrivForm(R ring, int degree)
        : ring_(std::move(ring)),
          degree_(degree),
          coeffs_(static_cast<std::size_t>(x_monomial_count(degree)), ring_.zero()) {
        if (degree < 0) throw MathError("TrivForm: negative degree");
    }

    const R& ring() const { return ring_; }
    int degree() const { return degree_; }
    const std::vector<Elem>& coeffs() const { return coeffs_; }
    std::vector<Elem>& coeffs() { return coeffs_; }

    const Elem& at(int i, int j, int k) const {
        check_exps(i, j, k);
        return coeffs_[static_cast<std::size_t>(x_monomial_index(degree_, i, j))];
    }
    Elem& at(int i, int j, int k) {
        check_exps(i, j, k);
        return coeffs_[static_cast<std::size_t>(x_monomial_index(degree_, i, j))];
    }

    bool is_zero() const {
        for (const auto& c : coeffs_)
            if (!ring_.is_zero(c)) return false;
        return true;
    }

    static TrivForm linear(R ring, const std::array<Elem, 3>& w) {
        TrivForm f(ring, 1);
        f.at(1, 0, 0) = w[0];
        f.at(0, 1, 0) = w[1];
        f.at(0, 0, 1) = w[2];
        return f;
    }

    TrivForm operator+(const TrivForm& o) const {
        require_same(o);
        TrivForm out(ring_, degree_);
        for (std::size_t t = 0; t < coeffs_.size(); ++t)
            out.coeffs_[t] = ring_.add(coeffs_[t], o.coeffs_[t]);
        return out;
    }

    TrivForm operator*(const TrivForm& o) const {
        if (ring_ != o.ring_) throw MathError("TrivForm: ring mismatch");
        TrivForm out(ring_, degree_ + o.degree_);
        auto mons_a = x_monomials(degree_);
        auto mons_b = x_monomials(o.degree_);
        for (std::size_t a = 0; a < mons_a.size(); ++a) {
            if (ring_.is_zero(coeffs_[a])) continue;
            for (std::size_t b = 0; b < mons_b.size(); ++b) {
                if (ring_.is_zero(o.coeffs_[b])) continue;
                int i = mons_a[a][0] + mons_b[b][0];
                int j = mons_a[a][1] + mons_b[b][1];
                std::size_t idx = static_cast<std::size_t>(x_monomial_index(out.degree_, i, j));
                out.coeffs_[idx] = ring_.add(out.coeffs_[idx], ring_.mul(coeffs_[a], o.coeffs_[b]));
            }
        }
        return out;
    }

    TrivForm pow(unsigned e) const {
        TrivForm acc(ring_, 0);
        acc.coeffs_[0] = ring_.one();
        for (unsigned t = 0; t < e; ++t) acc = acc * *this;
        return acc;
    }

    TrivForm scaled(const Elem& c) const {
        TrivForm out(ring_, degree_);
        for (std::size_t t = 0; t < coeffs_.size(); ++t) out.coeffs_[t] = ring_.mul(coeffs_[t], c);
        return out;
    }

    Elem evaluate(const std::array<Elem, 3>& x) const {
        Elem acc = ring_.zero();
        auto mons = x_monomials(degree_);
        for (std::size_t t = 0; t < mons.size(); ++t) {
            if (ring_.is_zero(coeffs_[t])) continue;
            Elem v = coeffs_[t];
            for (int ax = 0; ax < 3; ++ax)
                v = ring_.mul(v, ring_.pow(x[static_cast<std::size_t>(ax)],
                                           static_cast<u64>(mons[t][static_cast<std::size_t>(ax)])));
            acc = ring_.add(acc, v);
        }
        return acc;
    }

    // d/dx_axis, degree drops by one.
    TrivForm derivative(int axis) const {
        if (degree_ == 0) return TrivForm(ring_, 0);
        TrivForm out(ring_, degree_ - 1);
        auto mons = x_monomials(degree_);
        for (std::size_t t = 0; t < mons.size(); ++t) {
            int e = mons[t][static_cast<std::size_t>(axis)];
            if (e == 0 || ring_.is_zero(coeffs_[t])) continue;
            Exponents3 m = mons[t];
            m[static_cast<std::size_t>(axis)] -= 1;
            std::size_t idx = static_cast<std::size_t>(x_monomial_index(out.degree_, m[0], m[1]));
            out.coeffs_[idx] = ring_.add(out.coeffs_[idx], ring_.mul(coeffs_[t], ring_.from_int(e)));
        }
        return out;
    }

    bool operator==(const TrivForm& o) const {
        return ring_ == o.ring_ && degree_ == o.degree_ && coeffs_ == o.coeffs_;
    }

private:
    void check_exps(int i, int j, int k) const {
        if (i < 0 || j < 0 || k < 0 || i + j + k != degree_)
            throw MathError("TrivForm: exponent triple does not match degree");
    }
    void require_same(const TrivForm& o) const {
        if (ring_ != o.ring_ || degree_ != o.degree_)
            throw MathError("TrivForm: degree or ring mismatch");
    }

    R ring_;
    int degree_;
    std::vector<Elem> coeffs_;
};

} // namespace undulation

#endif
