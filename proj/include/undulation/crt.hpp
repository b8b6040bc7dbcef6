#ifndef UNDULATION_CRT_HPP
#define UNDULATION_CRT_HPP

#include <utility>
#include <vector>

#include "undulation/rational.hpp"

namespace undulation {

struct Residue {
    u64 value;
    u64 prime;
};

namespace detail {

// Inverse of a modulo m for coprime a, m (any m >= 2, so p = 2 works here).
inline u64 invmod_u64(u64 a, u64 m) {
    std::int64_t t = 0, newt = 1;
    u64 r = m, newr = a % m;
    while (newr != 0) {
        u64 q = r / newr;
        std::int64_t tt = t - static_cast<std::int64_t>(q) * newt;
        t = newt; newt = tt;
        u64 rr = r - q * newr;
        r = newr; newr = rr;
    }
    if (r != 1) throw MathError("invmod: arguments not coprime");
    return t < 0 ? static_cast<u64>(t + static_cast<std::int64_t>(m)) : static_cast<u64>(t);
}

} // namespace detail

// Chinese remainder combination. Returns the unique x in [0, prod p_i)
// congruent to every residue. Primes must be pairwise distinct.
inline Integer crt_combine(const std::vector<Residue>& residues) {
    if (residues.empty()) throw MathError("crt_combine: no residues");
    Integer x = 0, mod = 1;
    for (std::size_t i = 0; i < residues.size(); ++i) {
        for (std::size_t j = 0; j < i; ++j)
            if (residues[j].prime == residues[i].prime)
                throw MathError("crt_combine: duplicate prime " + std::to_string(residues[i].prime));
        const u64 p = residues[i].prime;
        const u64 r = residues[i].value % p;
        // x' = x + mod * t with t chosen so x' == r (mod p)
        u64 xm = mod_u64(x, p);
        u64 mm = mod_u64(mod, p);
        u64 diff = r >= xm ? r - xm : r + p - xm;
        u64 t = mulmod_u64(diff, detail::invmod_u64(mm, p), p);
        x += mod * Integer(static_cast<unsigned long>(t));
        mod *= static_cast<unsigned long>(p);
    }
    return x;
}

// Symmetric-range variant: result in (-prod/2, prod/2].
inline Integer crt_combine_symmetric(const std::vector<Residue>& residues) {
    Integer x = crt_combine(residues);
    Integer mod = 1;
    for (const auto& r : residues) mod *= static_cast<unsigned long>(r.prime);
    if (2 * x > mod) x -= mod;
    return x;
}

} // namespace undulation

#endif
