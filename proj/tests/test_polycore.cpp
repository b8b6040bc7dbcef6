#include <doctest.h>

#include "undulation/multipoly.hpp"

using namespace undulation;

namespace {

RationalRing QQ;

Poly<RationalRing> qvar(VarId v, unsigned e = 1) {
    return Poly<RationalRing>::variable(QQ, v, e);
}

} // namespace

TEST_CASE("variable precedence matches the letter order") {
    // a = C[4,0,0] precedes b = C[3,1,0] precedes o = C[0,0,4] precedes v1
    CHECK(VarId::coeffC(4, 0, 0) < VarId::coeffC(3, 1, 0));
    CHECK(VarId::coeffC(3, 1, 0) < VarId::coeffC(3, 0, 1));
    CHECK(VarId::coeffC(0, 0, 4) < VarId::lineV(0));
    CHECK(VarId::lineV(0) < VarId::lineV(1));
    CHECK(VarId::lineV(2) < VarId::lineU(0));
    CHECK(VarId::quartic_slot_index(4, 0, 0) == 0);
    CHECK(VarId::quartic_slot_index(2, 1, 1) == 4);  // letter e
    CHECK(VarId::quartic_slot_index(0, 0, 4) == 14); // letter o
    CHECK(VarId::coeffC(4, 0, 0).name(true) == "a");
    CHECK(VarId::coeffC(0, 2, 2).name(true) == "m");
    CHECK(VarId::coeffC(0, 2, 2).name(false) == "C[0,2,2]");
}

TEST_CASE("monomial order is graded lex with v1 > v2 > v3") {
    Monomial v1 = Monomial::var(VarId::lineV(0));
    Monomial v2 = Monomial::var(VarId::lineV(1));
    CHECK(v1.compare(v2) > 0);
    CHECK(v1.mul(v1).compare(v2) > 0);             // degree wins
    CHECK(v2.compare(v1.mul(v1)) < 0);
    Monomial v1v2 = v1.mul(v2);
    Monomial v2v2 = v2.mul(v2);
    CHECK(v1v2.compare(v2v2) > 0);
    CHECK(v1v2.compare(v1v2) == 0);
}

TEST_CASE("poly arithmetic: documented examples") {
    auto v1 = qvar(VarId::lineV(0)), v2 = qvar(VarId::lineV(1));
    // (v1+v2)(v1-v2) = v1^2 - v2^2
    auto prod = (v1 + v2) * (v1 - v2);
    auto expect = qvar(VarId::lineV(0), 2) - qvar(VarId::lineV(1), 2);
    CHECK(prod == expect);
    // pow(u1, 0) = 1
    auto u1 = qvar(VarId::lineU(0));
    CHECK(u1.pow(0) == Poly<RationalRing>::constant(QQ, Rational(1)));
    // binomial: coefficient 6 on v1^2 v2^2 in (v1+v2)^4
    auto p4 = (v1 + v2).pow(4);
    Monomial m22 = Monomial::from_factors({{VarId::lineV(0), 2}, {VarId::lineV(1), 2}});
    CHECK(p4.coefficient(m22) == Rational(6));
    CHECK(p4.term_count() == 5);

    PrimeField f(6361);
    Poly<PrimeField> fp_poly(f);
    CHECK_THROWS_AS((void)(Poly<PrimeField>(PrimeField(7)) + fp_poly), MathError);
}

TEST_CASE("grading: documented examples") {
    // C040 * C004 * v1^5 -> deg_C 2, deg_v 5, weight (5,4,4)
    auto f = qvar(VarId::coeffC(0, 4, 0)) * qvar(VarId::coeffC(0, 0, 4)) * qvar(VarId::lineV(0), 5);
    auto rep = grade_of(f);
    REQUIRE(rep.status == Homogeneity::Homogeneous);
    CHECK(rep.grading.deg_c == 2);
    CHECK(rep.grading.deg_v == 5);
    CHECK(rep.grading.weight == std::array<int, 3>{5, 4, 4});

    auto g = qvar(VarId::coeffC(4, 0, 0));
    auto grep = grade_of(g);
    CHECK(grep.grading.deg_c == 1);
    CHECK(grep.grading.deg_v == 0);
    CHECK(grep.grading.weight == std::array<int, 3>{4, 0, 0});

    auto inhom = qvar(VarId::lineV(0)) + qvar(VarId::coeffC(4, 0, 0));
    auto irep = grade_of(inhom);
    CHECK(irep.status == Homogeneity::Inhomogeneous);
    CHECK(irep.witness_a != irep.witness_b);

    CHECK(grade_of(Poly<RationalRing>(QQ)).status == Homogeneity::Zero);
}

TEST_CASE("grading is additive under multiplication (randomized)") {
    SplitMix64 rng(21);
    auto slots = std::vector<VarId>{VarId::coeffC(4, 0, 0), VarId::coeffC(2, 1, 1),
                                    VarId::coeffC(0, 2, 2), VarId::lineV(0), VarId::lineV(1),
                                    VarId::lineV(2)};
    for (int t = 0; t < 1000; ++t) {
        Monomial a = Monomial::var(slots[rng.below(slots.size())], 1 + static_cast<unsigned>(rng.below(3)));
        Monomial b = Monomial::var(slots[rng.below(slots.size())], 1 + static_cast<unsigned>(rng.below(3)));
        Grading ga = monomial_grading(a), gb = monomial_grading(b), gp = monomial_grading(a.mul(b));
        CHECK(gp.deg_c == ga.deg_c + gb.deg_c);
        CHECK(gp.deg_v == ga.deg_v + gb.deg_v);
        for (int ax = 0; ax < 3; ++ax)
            CHECK(gp.weight[static_cast<std::size_t>(ax)] ==
                  ga.weight[static_cast<std::size_t>(ax)] + gb.weight[static_cast<std::size_t>(ax)]);
    }
}

TEST_CASE("evaluate: documented examples") {
    auto v1 = qvar(VarId::lineV(0)), v2 = qvar(VarId::lineV(1));
    auto f = v1 * v1 + v2;
    std::map<VarId, Rational> assig{{VarId::lineV(0), Rational(2)}, {VarId::lineV(1), Rational(3)}};
    CHECK(f.evaluate(assig) == Rational(7));

    // all-zero assignment picks out the constant term
    auto g = f + Poly<RationalRing>::constant(QQ, Rational(5));
    std::map<VarId, Rational> zeros{{VarId::lineV(0), Rational(0)}, {VarId::lineV(1), Rational(0)}};
    CHECK(g.evaluate(zeros) == Rational(5));

    // missing variable is an error naming it
    std::map<VarId, Rational> partial{{VarId::lineV(0), Rational(1)}};
    CHECK_THROWS_WITH_AS(f.evaluate(partial), doctest::Contains("v2"), MathError);

    // the leading v1^4 coefficient of the tabulated phi: k*o - 4*l*n + 3*m^2
    auto frag = poly_from_string(QQ, "k*o - 4*l*n + 3*m^2");
    std::map<VarId, Rational> letters;
    auto slots = std::vector<std::array<int, 3>>{{0, 4, 0}, {0, 3, 1}, {0, 2, 2}, {0, 1, 3}, {0, 0, 4}};
    letters[VarId::coeffC(0, 4, 0)] = 1; // k
    letters[VarId::coeffC(0, 3, 1)] = 0; // l
    letters[VarId::coeffC(0, 2, 2)] = 1; // m
    letters[VarId::coeffC(0, 1, 3)] = 0; // n
    letters[VarId::coeffC(0, 0, 4)] = 1; // o
    CHECK(frag.evaluate(letters) == Rational(4));
}

TEST_CASE("evaluate is multiplicative (randomized, GF(p))") {
    PrimeField f(6361);
    SplitMix64 rng(31);
    std::vector<VarId> vars{VarId::coeffC(4, 0, 0), VarId::coeffC(1, 2, 1), VarId::lineV(0),
                            VarId::lineV(2)};
    for (int t = 0; t < 300; ++t) {
        Poly<PrimeField> a(f), b(f);
        for (int s = 0; s < 3; ++s) {
            a.add_term(Monomial::var(vars[rng.below(vars.size())], 1 + static_cast<unsigned>(rng.below(3))),
                       f.random(rng));
            b.add_term(Monomial::var(vars[rng.below(vars.size())], 1 + static_cast<unsigned>(rng.below(3))),
                       f.random(rng));
        }
        std::map<VarId, u64> assig;
        for (VarId v : vars) assig[v] = f.random(rng);
        CHECK((a * b).evaluate(assig) == f.mul(a.evaluate(assig), b.evaluate(assig)));
        CHECK((a + b).evaluate(assig) == f.add(a.evaluate(assig), b.evaluate(assig)));
    }
}

TEST_CASE("enumerate_monomials: counts, order, no duplicates") {
    auto m53 = enumerate_monomials(5, 3);
    CHECK(m53.size() == 21);
    CHECK(enumerate_monomials(7, 3).size() == 36);
    auto m03 = enumerate_monomials(0, 3);
    REQUIRE(m03.size() == 1);
    CHECK(m03[0] == std::vector<std::uint8_t>{0, 0, 0});
    // first and last in graded-lex descending order
    CHECK(m53.front() == std::vector<std::uint8_t>{5, 0, 0});
    CHECK(m53.back() == std::vector<std::uint8_t>{0, 0, 5});
    for (std::size_t t = 0; t + 1 < m53.size(); ++t) CHECK(m53[t] > m53[t + 1]);
    // stability
    CHECK(enumerate_monomials(5, 3) == m53);
    CHECK_THROWS_AS(enumerate_monomials(-1, 3), MathError);
}

TEST_CASE("text serialization round-trips") {
    SplitMix64 rng(77);
    std::vector<VarId> vars{VarId::coeffC(4, 0, 0), VarId::coeffC(0, 2, 2), VarId::lineV(0),
                            VarId::lineV(1), VarId::lineU(2), VarId::param(3)};
    for (int t = 0; t < 200; ++t) {
        Poly<RationalRing> p(QQ);
        int terms = 1 + static_cast<int>(rng.below(6));
        for (int s = 0; s < terms; ++s) {
            std::vector<Monomial::Factor> fs;
            int nf = static_cast<int>(rng.below(3));
            for (int q = 0; q < nf; ++q)
                fs.emplace_back(vars[rng.below(vars.size())],
                                static_cast<std::uint8_t>(1 + rng.below(4)));
            Rational c = make_rational(Integer(static_cast<long>(rng.range(-20, 20))),
                                       Integer(static_cast<long>(rng.range(1, 9))));
            p.add_term(Monomial::from_factors(fs), c);
        }
        std::string text = poly_to_string(p);
        CHECK(poly_from_string(QQ, text) == p);
    }
    // letters shorthand round-trips through both spellings
    auto p = poly_from_string(QQ, "3*a*o^2 - 1/2*m*v1^4");
    CHECK(poly_to_string(p, {true}) == "-1/2*m*v1^4 + 3*a*o^2");
    CHECK(poly_from_string(QQ, poly_to_string(p, {false})) == p);
    CHECK(poly_to_string(Poly<RationalRing>(QQ)) == "0");
    CHECK(poly_from_string(QQ, "0").is_zero());
    CHECK_THROWS_AS(poly_from_string(QQ, "2*"), ParseError);
    CHECK_THROWS_AS(poly_from_string(QQ, "w1"), ParseError);

    // GF(p) coefficients print as residues
    PrimeField f(7);
    auto fp = Poly<PrimeField>::constant(f, 3) * Poly<PrimeField>::variable(f, VarId::lineV(0));
    CHECK(poly_to_string(fp) == "3*v1");
    CHECK(poly_from_string(f, "-4*v1") == fp);
}
