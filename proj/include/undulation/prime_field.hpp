#ifndef UNDULATION_PRIME_FIELD_HPP
#define UNDULATION_PRIME_FIELD_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "undulation/errors.hpp"
#include "undulation/rng.hpp"

namespace undulation {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

inline u64 mulmod_u64(u64 a, u64 b, u64 p) {
    return static_cast<u64>(static_cast<u128>(a) * b % p);
}

inline u64 powmod_u64(u64 base, u64 exp, u64 p) {
    u64 acc = 1 % p;
    base %= p;
    while (exp) {
        if (exp & 1) acc = mulmod_u64(acc, base, p);
        base = mulmod_u64(base, base, p);
        exp >>= 1;
    }
    return acc;
}

// Deterministic Miller-Rabin, valid for all 64-bit inputs with this witness set.
inline bool is_prime_u64(u64 n) {
    if (n < 2) return false;
    for (u64 q : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n % q == 0) return n == q;
    }
    u64 d = n - 1;
    int s = 0;
    while ((d & 1) == 0) { d >>= 1; ++s; }
    for (u64 a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        u64 x = powmod_u64(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int i = 1; i < s; ++i) {
            x = mulmod_u64(x, x, n);
            if (x == n - 1) { composite = false; break; }
        }
        if (composite) return false;
    }
    return true;
}

inline u64 next_prime_u64(u64 n) {
    if (n <= 2) return 2;
    if ((n & 1) == 0) ++n;
    while (!is_prime_u64(n)) n += 2;
    return n;
}

/// Arithmetic in GF(p) for a word-size odd prime p. Elements are plain
/// residues in [0, p). All operations are pure; the object is immutable.
class PrimeField {
public:
    using Elem = u64;

    explicit PrimeField(u64 p) : p_(p) {
        if (p < 3 || !is_prime_u64(p))
            throw MathError("PrimeField: modulus " + std::to_string(p) + " is not an odd prime");
    }

    u64 modulus() const { return p_; }

    Elem zero() const { return 0; }
    Elem one() const { return 1; }
    bool is_zero(Elem a) const { return a == 0; }

    Elem reduce(u64 a) const { return a % p_; }

    Elem from_int(long long v) const {
        long long r = v % static_cast<long long>(p_);
        if (r < 0) r += static_cast<long long>(p_);
        return static_cast<u64>(r);
    }

    Elem normalize(Elem a) const { return a % p_; }

    Elem add(Elem a, Elem b) const {
        u64 s = a + b;
        return s >= p_ ? s - p_ : s;
    }
    Elem sub(Elem a, Elem b) const { return a >= b ? a - b : a + p_ - b; }
    Elem neg(Elem a) const { return a == 0 ? 0 : p_ - a; }
    Elem mul(Elem a, Elem b) const { return mulmod_u64(a, b, p_); }
    Elem pow(Elem a, u64 e) const { return powmod_u64(a, e, p_); }

    std::optional<Elem> try_inv(Elem a) const {
        if (a == 0) return std::nullopt;
        // extended Euclid on (a, p)
        std::int64_t t = 0, newt = 1;
        u64 r = p_, newr = a;
        while (newr != 0) {
            u64 q = r / newr;
            std::int64_t tt = t - static_cast<std::int64_t>(q) * newt;
            t = newt; newt = tt;
            u64 rr = r - q * newr;
            r = newr; newr = rr;
        }
        // r == gcd == 1 since p prime and a != 0
        return t < 0 ? static_cast<u64>(t + static_cast<std::int64_t>(p_)) : static_cast<u64>(t);
    }

    Elem inv(Elem a) const {
        auto r = try_inv(a);
        if (!r) throw MathError("PrimeField: inverse of zero");
        return *r;
    }

    Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }

    Elem random(SplitMix64& rng) const { return rng.below(p_); }

    bool operator==(const PrimeField& o) const { return p_ == o.p_; }
    bool operator!=(const PrimeField& o) const { return p_ != o.p_; }

    // The prime used by the original modular computation of the quintic table.
    static constexpr u64 kLegacyPrime = 6361;

    // Default word-size working primes, descending from 2^61 - 1 so that
    // accidental rank drops in sampled systems are astronomically unlikely.
    static std::vector<u64> default_primes(std::size_t count) {
        static const u64 seeds[] = {
            2305843009213693951ull, // 2^61 - 1
        };
        std::vector<u64> out;
        u64 candidate = seeds[0];
        while (out.size() < count) {
            if (is_prime_u64(candidate)) out.push_back(candidate);
            candidate -= 2;
        }
        return out;
    }

private:
    u64 p_;
};

// Montgomery representation for a fixed odd modulus; used by the hot
// elimination loops. Values outside linalg stay plain residues.
class Montgomery64 {
public:
    explicit Montgomery64(u64 p) : p_(p) {
        // p^{-1} mod 2^64 by Newton iteration, then negated
        u64 inv = p;
        for (int i = 0; i < 5; ++i) inv *= 2 - p * inv;
        ninv_ = ~inv + 1;
        r2_ = static_cast<u64>((static_cast<u128>(1) << 64) % p);
        r2_ = mulmod_u64(r2_, r2_, p); // now (2^64)^2 mod p ... via (2^64 mod p)^2
        one_ = to_mont(1);
    }

    u64 modulus() const { return p_; }
    u64 mont_one() const { return one_; }

    u64 to_mont(u64 a) const { return redc(static_cast<u128>(a) * r2_); }
    u64 from_mont(u64 a) const { return redc(static_cast<u128>(a)); }

    u64 mul(u64 a, u64 b) const { return redc(static_cast<u128>(a) * b); }

    u64 add(u64 a, u64 b) const {
        u64 s = a + b;
        return s >= p_ ? s - p_ : s;
    }
    u64 sub(u64 a, u64 b) const { return a >= b ? a - b : a + p_ - b; }

private:
    u64 redc(u128 t) const {
        u64 m = static_cast<u64>(t) * ninv_;
        u64 r = static_cast<u64>((t + static_cast<u128>(m) * p_) >> 64);
        return r >= p_ ? r - p_ : r;
    }

    u64 p_;
    u64 ninv_;
    u64 r2_;
    u64 one_;
};

} // namespace undulation

#endif
