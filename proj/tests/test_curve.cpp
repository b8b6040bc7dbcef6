#include <doctest.h>

#include <sstream>

#include "undulation/curve_io.hpp"

using namespace undulation;

namespace {

RationalRing QQ;

DecompositionWitness<RationalRing> make_witness(std::array<long, 3> u, long h0,
                                                std::array<long, 3> v,
                                                const std::map<std::array<int, 3>, long>& w) {
    DecompositionWitness<RationalRing> wit{{Rational(u[0]), Rational(u[1]), Rational(u[2])},
                                           TrivForm<RationalRing>(QQ, 0),
                                           {Rational(v[0]), Rational(v[1]), Rational(v[2])},
                                           TrivForm<RationalRing>(QQ, 3)};
    wit.h.coeffs()[0] = h0;
    for (const auto& [e, c] : w) wit.w.at(e[0], e[1], e[2]) = Rational(c);
    return wit;
}

} // namespace

TEST_CASE("compose_curve: documented examples") {
    // u = x1, h = 1, v = x2, w = 0  ->  x1^4
    auto wit = make_witness({1, 0, 0}, 1, {0, 1, 0}, {});
    auto c = compose_curve(wit);
    CHECK(c.coefficient(4, 0, 0) == 1);
    int nonzero = 0;
    for (const auto& x : c.form().coeffs())
        if (sgn(x) != 0) ++nonzero;
    CHECK(nonzero == 1);

    // w = x1^3 adds x2 x1^3
    auto wit2 = make_witness({1, 0, 0}, 1, {0, 1, 0}, {{{3, 0, 0}, 1}});
    auto c2 = compose_curve(wit2);
    CHECK(c2.coefficient(4, 0, 0) == 1);
    CHECK(c2.coefficient(3, 1, 0) == 1);

    // u = x1 + x2, h = 1, v = x3, w = 0: binomial coefficients
    auto wit3 = make_witness({1, 1, 0}, 1, {0, 0, 1}, {});
    auto c3 = compose_curve(wit3);
    CHECK(c3.coefficient(4, 0, 0) == 1);
    CHECK(c3.coefficient(3, 1, 0) == 4);
    CHECK(c3.coefficient(2, 2, 0) == 6);
    CHECK(c3.coefficient(1, 3, 0) == 4);
    CHECK(c3.coefficient(0, 4, 0) == 1);
    CHECK(c3.coefficient(0, 0, 4) == 0);

    // degree mismatch is an error
    DecompositionWitness<RationalRing> bad{{Rational(1), Rational(0), Rational(0)},
                                           TrivForm<RationalRing>(QQ, 0),
                                           {Rational(0), Rational(1), Rational(0)},
                                           TrivForm<RationalRing>(QQ, 2)};
    CHECK_THROWS_AS(compose_curve(bad), MathError);
}

TEST_CASE("tangency oracle: documented examples") {
    // P = x1^4 + x2 x1^3, X = (0,0,1), gradient vanishes (singular point): pass
    auto wit = make_witness({1, 0, 0}, 1, {0, 1, 0}, {{{3, 0, 0}, 1}});
    auto rep = tangency_oracle(wit);
    CHECK(rep.pass);
    CHECK(rep.gradient_zero);
    CHECK(rep.point == LinearForm<RationalRing>{Rational(0), Rational(0), Rational(1)});

    // P = x1^4 + x2 x3^3, gradient at X equals v exactly
    auto wit2 = make_witness({1, 0, 0}, 1, {0, 1, 0}, {{{0, 0, 3}, 1}});
    auto rep2 = tangency_oracle(wit2);
    CHECK(rep2.pass);
    CHECK_FALSE(rep2.gradient_zero);

    // u proportional to v is a precondition violation
    auto bad = make_witness({1, 0, 0}, 1, {2, 0, 0}, {});
    CHECK_THROWS_AS(tangency_oracle(bad), MathError);
}

TEST_CASE("tangency oracle: random witnesses pass over Q and GF(p)") {
    for (u64 seed = 0; seed < 400; ++seed) {
        auto wit = random_witness(QQ, 4, seed, 20);
        if (is_zero_vector(QQ, cross_product(QQ, wit.u, wit.v))) continue;
        CHECK(tangency_oracle(wit).pass);
    }
    PrimeField f(6361);
    for (u64 seed = 0; seed < 600; ++seed) {
        auto wit = random_witness(f, 5, seed); // also exercise quintics
        if (is_zero_vector(f, cross_product(f, wit.u, wit.v))) continue;
        CHECK(tangency_oracle(wit).pass);
    }
}

TEST_CASE("act_linear: documented examples") {
    auto curve = random_curve(QQ, 4, 3, 9);
    Matrix3<RationalRing> id{{{Rational(1), Rational(0), Rational(0)},
                              {Rational(0), Rational(1), Rational(0)},
                              {Rational(0), Rational(0), Rational(1)}}};
    CHECK(act_linear(id, curve) == curve);

    // diag(l, l, l) scales every coefficient by l^4
    Rational l(3);
    Matrix3<RationalRing> diag{{{l, Rational(0), Rational(0)},
                                {Rational(0), l, Rational(0)},
                                {Rational(0), Rational(0), l}}};
    auto scaled = act_linear(diag, curve);
    for (std::size_t t = 0; t < curve.form().coeffs().size(); ++t)
        CHECK(scaled.form().coeffs()[t] == curve.form().coeffs()[t] * Rational(81));

    // swapping x1 and x2 permutes C[i,j,k] -> C[j,i,k]
    Matrix3<RationalRing> swap{{{Rational(0), Rational(1), Rational(0)},
                                {Rational(1), Rational(0), Rational(0)},
                                {Rational(0), Rational(0), Rational(1)}}};
    auto swapped = act_linear(swap, curve);
    auto mons = x_monomials(4);
    for (const auto& e : mons)
        CHECK(swapped.coefficient(e[0], e[1], e[2]) == curve.coefficient(e[1], e[0], e[2]));

    Matrix3<RationalRing> singular{{{Rational(1), Rational(1), Rational(0)},
                                    {Rational(2), Rational(2), Rational(0)},
                                    {Rational(0), Rational(0), Rational(1)}}};
    CHECK_THROWS_AS(act_linear(singular, curve), MathError);
}

TEST_CASE("act_linear composes with the inverse to the identity") {
    PrimeField f(1000003);
    SplitMix64 rng(17);
    for (int t = 0; t < 50; ++t) {
        // random invertible g and its inverse via adjugate / det
        Matrix3<PrimeField> g;
        u64 d;
        do {
            for (auto& row : g)
                for (auto& x : row) x = f.random(rng);
            d = det3(f, g);
        } while (d == 0);
        u64 dinv = f.inv(d);
        auto minor = [&](int r0, int c0, int r1, int c1) {
            return f.sub(f.mul(g[static_cast<std::size_t>(r0)][static_cast<std::size_t>(c0)],
                               g[static_cast<std::size_t>(r1)][static_cast<std::size_t>(c1)]),
                         f.mul(g[static_cast<std::size_t>(r0)][static_cast<std::size_t>(c1)],
                               g[static_cast<std::size_t>(r1)][static_cast<std::size_t>(c0)]));
        };
        Matrix3<PrimeField> ginv;
        ginv[0][0] = f.mul(minor(1, 1, 2, 2), dinv);
        ginv[0][1] = f.mul(f.neg(minor(0, 1, 2, 2)), dinv);
        ginv[0][2] = f.mul(minor(0, 1, 1, 2), dinv);
        ginv[1][0] = f.mul(f.neg(minor(1, 0, 2, 2)), dinv);
        ginv[1][1] = f.mul(minor(0, 0, 2, 2), dinv);
        ginv[1][2] = f.mul(f.neg(minor(0, 0, 1, 2)), dinv);
        ginv[2][0] = f.mul(minor(1, 0, 2, 1), dinv);
        ginv[2][1] = f.mul(f.neg(minor(0, 0, 2, 1)), dinv);
        ginv[2][2] = f.mul(minor(0, 0, 1, 1), dinv);

        auto curve = random_curve(f, 4, static_cast<u64>(t) + 1000);
        CHECK(act_linear(ginv, act_linear(g, curve)) == curve);
    }
}

TEST_CASE("random generation is deterministic and recomposes") {
    auto c1 = random_curve(QQ, 4, 7, 50);
    auto c2 = random_curve(QQ, 4, 7, 50);
    CHECK(c1 == c2);
    CHECK_FALSE(c1 == random_curve(QQ, 4, 8, 50));

    auto [curve, wit] = random_undulation_curve(QQ, 4, 21, 50);
    CHECK(compose_curve(wit) == curve);
}

TEST_CASE("curve JSON round-trip and validation") {
    auto curve = random_curve(QQ, 4, 5, 50);
    curve.coefficient(4, 0, 0) = Rational(-7, 3);
    auto j = curve_to_json(curve);
    CHECK(j["format"] == 1);
    CHECK(curve_from_json(j) == curve);

    // omitted coefficients are zero
    auto sparse = curve_from_json(nlohmann::json{{"r", 4}, {"coeffs", {{"4,0,0", "2"}}}});
    CHECK(sparse.coefficient(4, 0, 0) == 2);
    CHECK(sparse.coefficient(0, 4, 0) == 0);

    CHECK_THROWS_AS(curve_from_json(nlohmann::json{{"r", 4}, {"coeffs", {{"3,0,0", "2"}}}}),
                    ParseError);
    CHECK_THROWS_AS(curve_from_json(nlohmann::json::array()), ParseError);
    CHECK_THROWS_AS(curve_from_json(nlohmann::json{{"format", 2}, {"r", 4}}), ParseError);

    auto wit = random_witness(QQ, 4, 9, 20);
    auto wj = witness_to_json(wit);
    auto wit2 = witness_from_json(wj);
    CHECK(wit2.u == wit.u);
    CHECK(wit2.v == wit.v);
    CHECK(wit2.h == wit.h);
    CHECK(wit2.w == wit.w);
}

TEST_CASE("curve reduction mod p") {
    PrimeField f(97);
    auto curve = random_curve(QQ, 4, 11, 50);
    curve.coefficient(4, 0, 0) = Rational(1, 97); // denominator divisible by p
    CHECK_FALSE(reduce_curve(curve, f).has_value());
    curve.coefficient(4, 0, 0) = Rational(1, 3);
    auto red = reduce_curve(curve, f);
    REQUIRE(red.has_value());
    CHECK(red->coefficient(4, 0, 0) == f.mul(1, f.inv(3)));
}
