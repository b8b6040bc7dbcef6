#include <doctest.h>

#include "undulation/crt.hpp"
#include "undulation/prime_field.hpp"
#include "undulation/rational.hpp"

using namespace undulation;

TEST_CASE("primality: word-size deterministic test") {
    CHECK(is_prime_u64(2));
    CHECK(is_prime_u64(3));
    CHECK(is_prime_u64(6361));
    CHECK(is_prime_u64(2305843009213693951ull)); // 2^61 - 1
    CHECK_FALSE(is_prime_u64(1));
    CHECK_FALSE(is_prime_u64(6360));
    CHECK_FALSE(is_prime_u64(3825123056546413051ull)); // strong pseudoprime to small bases
    // cross-check against a sieve
    std::vector<bool> composite(2000, false);
    for (u64 i = 2; i < 2000; ++i)
        for (u64 j = 2 * i; j < 2000; j += i) composite[j] = true;
    for (u64 i = 2; i < 2000; ++i) CHECK(is_prime_u64(i) == !composite[i]);
}

TEST_CASE("field ops: documented examples") {
    PrimeField f(6361);
    CHECK(f.inv(2) == 3181);
    CHECK(f.mul(2, 3181) == 1);
    CHECK(f.add(6360, 1) == 0);
    PrimeField f7(7);
    CHECK(f7.inv(3) == 5);
    CHECK_THROWS_AS(f.inv(0), MathError);
    CHECK(f.try_inv(0) == std::nullopt);
    CHECK_THROWS_AS(PrimeField(6360), MathError);
}

TEST_CASE("field ops: random algebra identities") {
    for (u64 p : {u64(6361), PrimeField::default_primes(1)[0]}) {
        PrimeField f(p);
        SplitMix64 rng(42);
        for (int t = 0; t < 10000; ++t) {
            u64 a = f.random(rng), b = f.random(rng);
            CHECK(f.sub(f.add(a, b), b) == a);
            if (a != 0) CHECK(f.mul(a, f.inv(a)) == 1);
        }
    }
}

TEST_CASE("montgomery multiplication agrees with plain") {
    for (u64 p : {u64(6361), u64(1000003), PrimeField::default_primes(1)[0]}) {
        Montgomery64 mont(p);
        SplitMix64 rng(7);
        for (int t = 0; t < 2000; ++t) {
            u64 a = rng.below(p), b = rng.below(p);
            u64 ma = mont.to_mont(a), mb = mont.to_mont(b);
            CHECK(mont.from_mont(mont.mul(ma, mb)) == mulmod_u64(a, b, p));
            CHECK(mont.from_mont(ma) == a);
        }
    }
}

TEST_CASE("crt: examples and properties") {
    CHECK(crt_combine({{1, 3}, {2, 5}}) == 7);
    CHECK(crt_combine({{0, 6361}}) == 0);
    // x = -1 mod 6361, x = 0 mod 2 -> 6360 in both ranges
    CHECK(crt_combine({{6360, 6361}, {0, 2}}) == 6360);
    CHECK(crt_combine_symmetric({{6360, 6361}, {0, 2}}) == 6360);
    CHECK(crt_combine_symmetric({{2, 3}, {4, 5}}) == -1);
    CHECK_THROWS_AS(crt_combine({{1, 5}, {2, 5}}), MathError);

    SplitMix64 rng(99);
    std::vector<u64> primes = {6361, 1000003, 2305843009213693951ull};
    for (int t = 0; t < 200; ++t) {
        std::vector<Residue> rs;
        for (u64 p : primes) rs.push_back({rng.below(p), p});
        Integer x = crt_combine(rs);
        for (const auto& r : rs) CHECK(mod_u64(x, r.prime) == r.value);
        Integer xs = crt_combine_symmetric(rs);
        for (const auto& r : rs) {
            Integer red = ((xs % static_cast<unsigned long>(r.prime)) +
                           static_cast<unsigned long>(r.prime)) %
                          static_cast<unsigned long>(r.prime);
            CHECK(red.get_ui() == r.value);
        }
    }
}

TEST_CASE("rational arithmetic is canonical and reduces mod p") {
    Rational q = make_rational(Integer(6), Integer(-4));
    CHECK(q.get_num() == -3);
    CHECK(q.get_den() == 2);
    CHECK(rational_to_string(q) == "-3/2");
    CHECK(parse_rational("-3/2") == q);
    CHECK(parse_rational("10") == Rational(10));
    CHECK_THROWS_AS(parse_rational("x/y"), ParseError);
    CHECK_THROWS_AS(make_rational(Integer(1), Integer(0)), MathError);

    // ring homomorphism Q -> GF(p) on random inputs where defined
    PrimeField f(1000003);
    SplitMix64 rng(5);
    for (int t = 0; t < 2000; ++t) {
        Rational a = make_rational(Integer(static_cast<long>(rng.range(-50, 50))),
                                   Integer(static_cast<long>(rng.range(1, 40))));
        Rational b = make_rational(Integer(static_cast<long>(rng.range(-50, 50))),
                                   Integer(static_cast<long>(rng.range(1, 40))));
        auto ra = rational_mod(a, f), rb = rational_mod(b, f), rsum = rational_mod(a + b, f),
             rprod = rational_mod(a * b, f);
        REQUIRE(ra);
        REQUIRE(rb);
        CHECK(*rsum == f.add(*ra, *rb));
        CHECK(*rprod == f.mul(*ra, *rb));
    }
}

TEST_CASE("rational reconstruction inverts reduction") {
    Integer m = 1;
    for (u64 p : {u64(1000003), u64(1000033), u64(1000037)}) m *= static_cast<unsigned long>(p);
    SplitMix64 rng(11);
    for (int t = 0; t < 200; ++t) {
        Integer num(static_cast<long>(rng.range(-10000, 10000)));
        Integer den(static_cast<long>(rng.range(1, 10000)));
        Rational q = make_rational(num, den);
        // residue of q mod m
        Integer dinv, g, s;
        mpz_gcdext(g.get_mpz_t(), dinv.get_mpz_t(), s.get_mpz_t(), Integer(q.get_den()).get_mpz_t(),
                   m.get_mpz_t());
        if (g != 1) continue;
        Integer residue = (Integer(q.get_num()) * dinv) % m;
        auto rec = rational_reconstruct(residue, m);
        REQUIRE(rec.has_value());
        CHECK(*rec == q);
    }
    CHECK_THROWS_AS(rational_reconstruct(Integer(1), Integer(0)), MathError);
}
