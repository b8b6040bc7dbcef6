#ifndef UNDULATION_MULTIPOLY_HPP
#define UNDULATION_MULTIPOLY_HPP

#include <array>
#include <cctype>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "undulation/monomial.hpp"
#include "undulation/prime_field.hpp"
#include "undulation/rational.hpp"

namespace undulation {

// Coefficient ring over the rationals; stateless counterpart of PrimeField.
struct RationalRing {
    using Elem = Rational;

    Elem zero() const { return Rational(0); }
    Elem one() const { return Rational(1); }
    bool is_zero(const Elem& a) const { return sgn(a) == 0; }
    Elem add(const Elem& a, const Elem& b) const { return a + b; }
    Elem sub(const Elem& a, const Elem& b) const { return a - b; }
    Elem mul(const Elem& a, const Elem& b) const { return a * b; }
    Elem neg(const Elem& a) const { return -a; }
    Elem inv(const Elem& a) const {
        if (sgn(a) == 0) throw MathError("RationalRing: inverse of zero");
        return 1 / a;
    }
    Elem div(const Elem& a, const Elem& b) const { return mul(a, inv(b)); }
    Elem from_int(long long v) const { return Rational(static_cast<long>(v)); }
    // mpq_class arithmetic canonicalizes, raw construction does not
    Elem normalize(Elem a) const {
        a.canonicalize();
        return a;
    }
    Elem pow(Elem base, u64 e) const {
        Elem acc = one();
        while (e) {
            if (e & 1) acc = acc * base;
            base = base * base;
            e >>= 1;
        }
        return acc;
    }

    bool operator==(const RationalRing&) const { return true; }
    bool operator!=(const RationalRing&) const { return false; }
};

template <class R>
struct RingIO;

template <>
struct RingIO<RationalRing> {
    static std::string to_string(const RationalRing&, const Rational& a) { return a.get_str(); }
    static bool display_negative(const RationalRing&, const Rational& a) { return sgn(a) < 0; }
    static Rational display_abs(const RationalRing&, const Rational& a) { return abs(a); }
    static bool is_one(const RationalRing&, const Rational& a) { return a == 1; }
};

template <>
struct RingIO<PrimeField> {
    static std::string to_string(const PrimeField&, u64 a) { return std::to_string(a); }
    static bool display_negative(const PrimeField&, u64) { return false; }
    static u64 display_abs(const PrimeField&, u64 a) { return a; }
    static bool is_one(const PrimeField&, u64 a) { return a == 1; }
};

struct Grading {
    int deg_c = 0;
    int deg_v = 0;
    std::array<int, 3> weight{0, 0, 0};
    bool operator==(const Grading&) const = default;
};

inline Grading monomial_grading(const Monomial& m) {
    Grading g;
    for (const auto& [v, e] : m.factors()) {
        if (v.kind() == VarKind::CoeffC) g.deg_c += e;
        if (v.kind() == VarKind::LineV) g.deg_v += e;
        auto w = v.weight();
        for (int ax = 0; ax < 3; ++ax) g.weight[static_cast<std::size_t>(ax)] += e * w[static_cast<std::size_t>(ax)];
    }
    return g;
}

enum class Homogeneity { Zero, Homogeneous, Inhomogeneous };

struct GradeReport {
    Homogeneity status = Homogeneity::Zero;
    Grading grading;                 // meaningful when Homogeneous
    Monomial witness_a, witness_b;   // meaningful when Inhomogeneous
};

/// Sparse multivariate polynomial over an exact coefficient ring R
/// (RationalRing or PrimeField). Terms are kept canonical: no zero
/// coefficients, monomials in graded-lex descending order.
template <class R>
class Poly {
public:
    using Elem = typename R::Elem;
    using TermMap = std::map<Monomial, Elem, MonomialGrlexDesc>;

    explicit Poly(R ring = R()) : ring_(std::move(ring)) {}

    static Poly zero(R ring) { return Poly(std::move(ring)); }

    static Poly constant(R ring, Elem c) {
        Poly p(std::move(ring));
        p.add_term(Monomial::one(), std::move(c));
        return p;
    }

    static Poly variable(R ring, VarId v, unsigned exp = 1) {
        Poly p(ring);
        p.add_term(Monomial::var(v, exp), p.ring_.one());
        return p;
    }

    const R& ring() const { return ring_; }
    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t term_count() const { return terms_.size(); }

    void add_term(const Monomial& m, Elem c) {
        c = ring_.normalize(std::move(c));
        if (ring_.is_zero(c)) return;
        auto [it, inserted] = terms_.emplace(m, c);
        if (!inserted) {
            it->second = ring_.add(it->second, c);
            if (ring_.is_zero(it->second)) terms_.erase(it);
        }
    }

    Elem coefficient(const Monomial& m) const {
        auto it = terms_.find(m);
        return it == terms_.end() ? ring_.zero() : it->second;
    }

    int total_degree() const {
        return terms_.empty() ? 0 : terms_.begin()->first.total_degree();
    }

    Poly operator+(const Poly& o) const {
        check_ring(o);
        Poly out = *this;
        for (const auto& [m, c] : o.terms_) out.add_term(m, c);
        return out;
    }

    Poly operator-(const Poly& o) const {
        check_ring(o);
        Poly out = *this;
        for (const auto& [m, c] : o.terms_) out.add_term(m, ring_.neg(c));
        return out;
    }

    Poly operator*(const Poly& o) const {
        check_ring(o);
        Poly out(ring_);
        for (const auto& [ma, ca] : terms_)
            for (const auto& [mb, cb] : o.terms_)
                out.add_term(ma.mul(mb), ring_.mul(ca, cb));
        return out;
    }

    Poly pow(unsigned e) const {
        Poly acc = constant(ring_, ring_.one());
        for (unsigned i = 0; i < e; ++i) acc = acc * *this;
        return acc;
    }

    Poly scaled(const Elem& c) const {
        Poly out(ring_);
        for (const auto& [m, v] : terms_) out.add_term(m, ring_.mul(v, c));
        return out;
    }

    Poly negated() const {
        Poly out(ring_);
        for (const auto& [m, v] : terms_) out.add_term(m, ring_.neg(v));
        return out;
    }

    bool operator==(const Poly& o) const { return ring_ == o.ring_ && terms_ == o.terms_; }
    bool operator!=(const Poly& o) const { return !(*this == o); }

    /// Exact evaluation at a full assignment; missing variables are an error.
    Elem evaluate(const std::map<VarId, Elem>& assignment) const {
        Elem acc = ring_.zero();
        for (const auto& [m, c] : terms_) {
            Elem val = c;
            for (const auto& [v, e] : m.factors()) {
                auto it = assignment.find(v);
                if (it == assignment.end())
                    throw MathError("evaluate: no value for variable '" + v.name() + "'");
                val = ring_.mul(val, ring_.pow(it->second, e));
            }
            acc = ring_.add(acc, val);
        }
        return acc;
    }

private:
    void check_ring(const Poly& o) const {
        if (ring_ != o.ring_) throw MathError("polynomial ring mismatch");
    }

    R ring_;
    TermMap terms_;
};

template <class R>
GradeReport grade_of(const Poly<R>& p) {
    GradeReport rep;
    if (p.is_zero()) {
        rep.status = Homogeneity::Zero;
        return rep;
    }
    auto it = p.terms().begin();
    const Monomial& first = it->first;
    rep.grading = monomial_grading(first);
    rep.status = Homogeneity::Homogeneous;
    for (++it; it != p.terms().end(); ++it) {
        if (!(monomial_grading(it->first) == rep.grading)) {
            rep.status = Homogeneity::Inhomogeneous;
            rep.witness_a = first;
            rep.witness_b = it->first;
            return rep;
        }
    }
    return rep;
}

/// Image of a rational polynomial in GF(p); fails when a coefficient
/// denominator vanishes mod p.
inline std::optional<Poly<PrimeField>> reduce_poly_mod(const Poly<RationalRing>& p,
                                                       const PrimeField& field) {
    Poly<PrimeField> out(field);
    for (const auto& [m, c] : p.terms()) {
        auto r = rational_mod(c, field);
        if (!r) return std::nullopt;
        out.add_term(m, *r);
    }
    return out;
}

/// Split every term's monomial into the sub-monomial over variables of
/// `kind` and the rest; returns the polynomial grouped by the sub-monomial.
template <class R>
std::map<Monomial, Poly<R>, MonomialGrlexDesc> group_by_kind(const Poly<R>& p, VarKind kind) {
    std::map<Monomial, Poly<R>, MonomialGrlexDesc> out;
    for (const auto& [m, c] : p.terms()) {
        std::vector<Monomial::Factor> sel, rest;
        for (const auto& f : m.factors())
            (f.first.kind() == kind ? sel : rest).push_back(f);
        Monomial key = Monomial::from_factors(sel);
        auto it = out.find(key);
        if (it == out.end()) it = out.emplace(key, Poly<R>(p.ring())).first;
        it->second.add_term(Monomial::from_factors(rest), c);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Text form: sum of coeff*var^e*... terms, e.g. "k*o*v1^4 - 4*l*n*v1^4".
// Round-trippable; letters a..o are shorthand for the quartic C[i,j,k].
// ---------------------------------------------------------------------------

struct PolyFormat {
    bool quartic_letters = false;
};

template <class R>
std::string poly_to_string(const Poly<R>& p, PolyFormat fmt = {}) {
    if (p.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, c] : p.terms()) {
        bool negative = RingIO<R>::display_negative(p.ring(), c);
        auto mag = RingIO<R>::display_abs(p.ring(), c);
        if (first) {
            if (negative) os << "-";
            first = false;
        } else {
            os << (negative ? " - " : " + ");
        }
        bool coeff_is_one = RingIO<R>::is_one(p.ring(), mag);
        if (!coeff_is_one || m.is_one()) os << RingIO<R>::to_string(p.ring(), mag);
        bool need_star = !coeff_is_one;
        for (const auto& [v, e] : m.factors()) {
            if (need_star) os << "*";
            os << v.name(fmt.quartic_letters);
            if (e > 1) os << "^" << static_cast<int>(e);
            need_star = true;
        }
    }
    return os.str();
}

namespace detail {

class PolyLexer {
public:
    explicit PolyLexer(const std::string& s) : s_(s) {}

    void skip_ws() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    bool eof() {
        skip_ws();
        return pos_ >= s_.size();
    }
    char peek() {
        skip_ws();
        return pos_ < s_.size() ? s_[pos_] : '\0';
    }
    char get() {
        skip_ws();
        if (pos_ >= s_.size()) throw ParseError("polynomial text: unexpected end");
        return s_[pos_++];
    }
    void expect(char c) {
        char g = get();
        if (g != c)
            throw ParseError(std::string("polynomial text: expected '") + c + "' got '" + g +
                             "' at position " + std::to_string(pos_));
    }
    long long integer() {
        skip_ws();
        bool neg = false;
        if (pos_ < s_.size() && (s_[pos_] == '-' || s_[pos_] == '+')) neg = s_[pos_++] == '-';
        if (pos_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_])))
            throw ParseError("polynomial text: expected integer at position " + std::to_string(pos_));
        long long v = 0;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_])))
            v = v * 10 + (s_[pos_++] - '0');
        return neg ? -v : v;
    }

private:
    const std::string& s_;
    std::size_t pos_ = 0;
};

inline VarId parse_var(PolyLexer& lex) {
    char c = lex.get();
    if (c == 'C') {
        lex.expect('[');
        int i = static_cast<int>(lex.integer());
        lex.expect(',');
        int j = static_cast<int>(lex.integer());
        lex.expect(',');
        int k = static_cast<int>(lex.integer());
        lex.expect(']');
        return VarId::coeffC(i, j, k);
    }
    if (c == 'v' || c == 'u') {
        int axis = static_cast<int>(lex.integer()) - 1;
        return c == 'v' ? VarId::lineV(axis) : VarId::lineU(axis);
    }
    if (c == 't') return VarId::param(static_cast<int>(lex.integer()));
    if (c >= 'a' && c <= 'o') {
        // quartic letter: the idx-th degree-4 slot in precedence order
        int idx = c - 'a';
        int pos = 0;
        for (int i = 4; i >= 0; --i)
            for (int j = 4 - i; j >= 0; --j, ++pos)
                if (pos == idx) return VarId::coeffC(i, j, 4 - i - j);
    }
    throw ParseError(std::string("polynomial text: unknown variable '") + c + "'");
}

} // namespace detail

template <class R>
Poly<R> poly_from_string(const R& ring, const std::string& text) {
    detail::PolyLexer lex(text);
    Poly<R> out(ring);
    if (lex.eof()) return out;
    bool negative = false;
    if (lex.peek() == '+' || lex.peek() == '-') negative = lex.get() == '-';
    while (true) {
        // one term: numbers and variable powers joined by '*'
        typename R::Elem coeff = ring.one();
        std::vector<Monomial::Factor> factors;
        bool any = false;
        while (true) {
            char c = lex.peek();
            if (std::isdigit(static_cast<unsigned char>(c))) {
                long long num = lex.integer();
                coeff = ring.mul(coeff, ring.from_int(num));
                if (lex.peek() == '/') {
                    lex.get();
                    long long den = lex.integer();
                    coeff = ring.div(coeff, ring.from_int(den));
                }
                any = true;
            } else if (c == 'C' || c == 'v' || c == 'u' || c == 't' || (c >= 'a' && c <= 'o')) {
                VarId v = detail::parse_var(lex);
                unsigned e = 1;
                if (lex.peek() == '^') {
                    lex.get();
                    long long ee = lex.integer();
                    if (ee < 0 || ee > 255) throw ParseError("polynomial text: exponent out of range");
                    e = static_cast<unsigned>(ee);
                }
                factors.emplace_back(v, static_cast<std::uint8_t>(e));
                any = true;
            } else {
                throw ParseError(std::string("polynomial text: unexpected character '") + c + "'");
            }
            if (lex.peek() == '*') {
                lex.get();
                continue;
            }
            break;
        }
        if (!any) throw ParseError("polynomial text: empty term");
        if (negative) coeff = ring.neg(coeff);
        out.add_term(Monomial::from_factors(std::move(factors)), coeff);
        if (lex.eof()) break;
        char sep = lex.get();
        if (sep == '+') negative = false;
        else if (sep == '-') negative = true;
        else throw ParseError(std::string("polynomial text: expected '+' or '-', got '") + sep + "'");
    }
    return out;
}

} // namespace undulation

#endif
