#ifndef UNDULATION_CURVE_HPP
#define UNDULATION_CURVE_HPP

#include <array>
#include <optional>
#include <string>

#include "undulation/multipoly.hpp"
#include "undulation/rng.hpp"
#include "undulation/trivariate.hpp"

namespace undulation {

/// Coefficient vector of a homogeneous plane curve P = sum C[i,j,k] x1^i x2^j x3^k,
/// with no binomial prefactors. All (r+1)(r+2)/2 slots are always present.
template <class R>
class PlaneCurve {
public:
    using Elem = typename R::Elem;

    PlaneCurve(R ring, int r) : form_(std::move(ring), r) {
        if (r < 1) throw MathError("PlaneCurve: degree must be positive");
    }

    explicit PlaneCurve(TrivForm<R> form) : form_(std::move(form)) {}

    int degree() const { return form_.degree(); }
    const R& ring() const { return form_.ring(); }
    const TrivForm<R>& form() const { return form_; }
    TrivForm<R>& form() { return form_; }

    const Elem& coefficient(int i, int j, int k) const { return form_.at(i, j, k); }
    Elem& coefficient(int i, int j, int k) { return form_.at(i, j, k); }

    bool operator==(const PlaneCurve& o) const { return form_ == o.form_; }

private:
    TrivForm<R> form_;
};

template <class R>
using LinearForm = std::array<typename R::Elem, 3>;

template <class R>
struct DecompositionWitness {
    LinearForm<R> u;
    TrivForm<R> h; // degree r-4
    LinearForm<R> v;
    TrivForm<R> w; // degree r-1
};

template <class R>
LinearForm<R> cross_product(const R& ring, const LinearForm<R>& a, const LinearForm<R>& b) {
    return {ring.sub(ring.mul(a[1], b[2]), ring.mul(a[2], b[1])),
            ring.sub(ring.mul(a[2], b[0]), ring.mul(a[0], b[2])),
            ring.sub(ring.mul(a[0], b[1]), ring.mul(a[1], b[0]))};
}

template <class R>
bool is_zero_vector(const R& ring, const LinearForm<R>& a) {
    return ring.is_zero(a[0]) && ring.is_zero(a[1]) && ring.is_zero(a[2]);
}

/// The curve u^4 h + v w. Its coefficient vector is the map s_ijk(u,h,v,w);
/// by construction v is an undulation line of the result.
template <class R>
PlaneCurve<R> compose_curve(const DecompositionWitness<R>& wit) {
    const R& ring = wit.h.ring();
    if (wit.w.degree() != wit.h.degree() + 3)
        throw MathError("compose_curve: deg w must equal deg h + 3");
    TrivForm<R> u = TrivForm<R>::linear(ring, wit.u);
    TrivForm<R> v = TrivForm<R>::linear(ring, wit.v);
    TrivForm<R> p = u.pow(4) * wit.h + v * wit.w;
    return PlaneCurve<R>(std::move(p));
}

template <class R>
struct TangencyReport {
    bool pass = false;
    LinearForm<R> point{};          // X = u x v
    typename R::Elem value_at_point; // P(X), must be zero
    bool gradient_zero = false;      // singular point on the curve; still a pass
};

/// Checks the decomposition identities at the intersection point X = u x v:
/// P(X) = 0 and grad P(X) parallel to v (gradient equals w(X) * v).
template <class R>
TangencyReport<R> tangency_oracle(const DecompositionWitness<R>& wit) {
    const R& ring = wit.h.ring();
    TangencyReport<R> rep;
    rep.point = cross_product(ring, wit.u, wit.v);
    if (is_zero_vector(ring, rep.point))
        throw MathError("tangency_oracle: u and v are proportional");
    PlaneCurve<R> curve = compose_curve(wit);
    rep.value_at_point = curve.form().evaluate(rep.point);
    LinearForm<R> grad = {curve.form().derivative(0).evaluate(rep.point),
                          curve.form().derivative(1).evaluate(rep.point),
                          curve.form().derivative(2).evaluate(rep.point)};
    rep.gradient_zero = is_zero_vector(ring, grad);
    LinearForm<R> c = cross_product(ring, grad, wit.v);
    rep.pass = ring.is_zero(rep.value_at_point) && is_zero_vector(ring, c);
    return rep;
}

template <class R>
using Matrix3 = std::array<std::array<typename R::Elem, 3>, 3>;

template <class R>
typename R::Elem det3(const R& ring, const Matrix3<R>& g) {
    auto term = [&](int a, int b, int c) {
        return ring.mul(g[0][static_cast<std::size_t>(a)],
                        ring.mul(g[1][static_cast<std::size_t>(b)], g[2][static_cast<std::size_t>(c)]));
    };
    auto acc = term(0, 1, 2);
    acc = ring.add(acc, term(1, 2, 0));
    acc = ring.add(acc, term(2, 0, 1));
    acc = ring.sub(acc, term(2, 1, 0));
    acc = ring.sub(acc, term(0, 2, 1));
    acc = ring.sub(acc, term(1, 0, 2));
    return acc;
}

/// Coordinate change: (g . P)(x) = P(g x). Under this convention
/// act_linear(g, act_linear(h, P)) equals act_linear(h g, P).
template <class R>
PlaneCurve<R> act_linear(const Matrix3<R>& g, const PlaneCurve<R>& curve) {
    const R& ring = curve.ring();
    if (ring.is_zero(det3(ring, g))) throw MathError("act_linear: singular matrix");
    int r = curve.degree();
    std::array<TrivForm<R>, 3> rows = {
        TrivForm<R>::linear(ring, {g[0][0], g[0][1], g[0][2]}),
        TrivForm<R>::linear(ring, {g[1][0], g[1][1], g[1][2]}),
        TrivForm<R>::linear(ring, {g[2][0], g[2][1], g[2][2]})};
    TrivForm<R> out(ring, r);
    auto mons = x_monomials(r);
    for (std::size_t t = 0; t < mons.size(); ++t) {
        const auto& c = curve.form().coeffs()[t];
        if (ring.is_zero(c)) continue;
        TrivForm<R> prod(ring, 0);
        prod.coeffs()[0] = c;
        for (int ax = 0; ax < 3; ++ax)
            for (int e = 0; e < mons[t][static_cast<std::size_t>(ax)]; ++e)
                prod = prod * rows[static_cast<std::size_t>(ax)];
        out = out + prod;
    }
    return PlaneCurve<R>(std::move(out));
}

// ---------------------------------------------------------------------------
// Seeded random generation
// ---------------------------------------------------------------------------

inline u64 random_fp_elem(const PrimeField& f, SplitMix64& rng) { return rng.below(f.modulus()); }

inline Rational random_q_elem(const RationalRing&, SplitMix64& rng, long long bound) {
    return Rational(static_cast<long>(rng.range(-bound, bound)));
}

template <class R, class Draw>
PlaneCurve<R> random_curve_impl(R ring, int r, SplitMix64& rng, Draw draw) {
    PlaneCurve<R> c(ring, r);
    for (auto& v : c.form().coeffs()) v = draw(rng);
    return c;
}

template <class R, class Draw>
DecompositionWitness<R> random_witness_impl(R ring, int r, SplitMix64& rng, Draw draw) {
    if (r < 4) throw MathError("random witness: degree must be at least 4");
    DecompositionWitness<R> wit{{}, TrivForm<R>(ring, r - 4), {}, TrivForm<R>(ring, r - 1)};
    for (auto& v : wit.u) v = draw(rng);
    for (auto& v : wit.v) v = draw(rng);
    for (auto& v : wit.h.coeffs()) v = draw(rng);
    for (auto& v : wit.w.coeffs()) v = draw(rng);
    return wit;
}

inline PlaneCurve<PrimeField> random_curve(const PrimeField& f, int r, u64 seed) {
    SplitMix64 rng(mix_seed({seed, f.modulus(), 0xCu}));
    return random_curve_impl(f, r, rng, [&](SplitMix64& g) { return random_fp_elem(f, g); });
}

inline PlaneCurve<RationalRing> random_curve(const RationalRing& ring, int r, u64 seed,
                                             long long bound = 50) {
    SplitMix64 rng(mix_seed({seed, 0xCu}));
    return random_curve_impl(ring, r, rng,
                             [&](SplitMix64& g) { return random_q_elem(ring, g, bound); });
}

inline DecompositionWitness<PrimeField> random_witness(const PrimeField& f, int r, u64 seed) {
    SplitMix64 rng(mix_seed({seed, f.modulus(), 0x57u}));
    return random_witness_impl(f, r, rng, [&](SplitMix64& g) { return random_fp_elem(f, g); });
}

inline DecompositionWitness<RationalRing> random_witness(const RationalRing& ring, int r, u64 seed,
                                                         long long bound = 50) {
    SplitMix64 rng(mix_seed({seed, 0x57u}));
    return random_witness_impl(ring, r, rng,
                               [&](SplitMix64& g) { return random_q_elem(ring, g, bound); });
}

/// Curve plus the witness that certifies its undulation line v.
inline std::pair<PlaneCurve<RationalRing>, DecompositionWitness<RationalRing>>
random_undulation_curve(const RationalRing& ring, int r, u64 seed, long long bound = 50) {
    auto wit = random_witness(ring, r, seed, bound);
    return {compose_curve(wit), wit};
}

inline std::pair<PlaneCurve<PrimeField>, DecompositionWitness<PrimeField>>
random_undulation_curve(const PrimeField& f, int r, u64 seed) {
    auto wit = random_witness(f, r, seed);
    return {compose_curve(wit), wit};
}

/// Reduce a rational curve mod p; fails when a denominator vanishes mod p.
inline std::optional<PlaneCurve<PrimeField>> reduce_curve(const PlaneCurve<RationalRing>& c,
                                                          const PrimeField& f) {
    PlaneCurve<PrimeField> out(f, c.degree());
    for (std::size_t t = 0; t < c.form().coeffs().size(); ++t) {
        auto r = rational_mod(c.form().coeffs()[t], f);
        if (!r) return std::nullopt;
        out.form().coeffs()[t] = *r;
    }
    return out;
}

} // namespace undulation

#endif
