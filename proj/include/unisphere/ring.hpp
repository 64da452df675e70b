#pragma once

// Exact coefficient arithmetic: Q, Q(sqrt(d)), F_p and Z/2^k.
// All values are immutable after construction and safe to share
// across threads.

#include <gmpxx.h>

#include <cstdint>
#include <memory>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace unisphere {

enum class RingKind {
    Rationals,
    Quadratic,      // Q(sqrt(d)), d square-free, d != 0, 1
    PrimeField,     // F_p
    ModPrimePower,  // Z/p^k (only p = 2 reachable from the spec grammar)
};

class RingDescriptor;
using RingPtr = std::shared_ptr<const RingDescriptor>;

namespace detail {

inline bool is_prime(const mpz_class& n) {
    return mpz_probab_prime_p(n.get_mpz_t(), 40) > 0;
}

// Square-free test by trial division up to 10^5, then a perfect-square
// check on the cofactor. Covers every discriminant of practical size.
inline bool is_square_free(long d) {
    mpz_class n = d < 0 ? mpz_class(-mpz_class(d)) : mpz_class(d);
    if (n == 0) return false;
    for (long p = 2; p <= 100000L && mpz_class(p) * p <= n; ++p) {
        if (n % p == 0) {
            n /= p;
            if (n % p == 0) return false;
        }
    }
    return n == 1 || mpz_perfect_square_p(n.get_mpz_t()) == 0;
}

}  // namespace detail

/// Immutable description of a coefficient structure.
class RingDescriptor {
public:
    RingKind kind;
    long discriminant = 0;  // Quadratic only
    mpz_class prime;        // PrimeField / ModPrimePower
    unsigned exponent = 1;  // ModPrimePower
    mpz_class modulus;      // prime^exponent, cached

    static RingPtr rationals() {
        auto r = std::make_shared<RingDescriptor>();
        r->kind = RingKind::Rationals;
        return r;
    }

    static RingPtr quadratic(long d) {
        if (d == 0 || d == 1)
            throw std::invalid_argument("quadratic discriminant must not be 0 or 1");
        if (!detail::is_square_free(d))
            throw std::invalid_argument("quadratic discriminant must be square-free");
        auto r = std::make_shared<RingDescriptor>();
        r->kind = RingKind::Quadratic;
        r->discriminant = d;
        return r;
    }

    static RingPtr prime_field(const mpz_class& p) {
        if (p < 2 || !detail::is_prime(p))
            throw std::invalid_argument("not a prime: " + p.get_str());
        auto r = std::make_shared<RingDescriptor>();
        r->kind = RingKind::PrimeField;
        r->prime = p;
        r->modulus = p;
        return r;
    }

    static RingPtr mod_prime_power(const mpz_class& p, unsigned k) {
        if (p < 2 || !detail::is_prime(p))
            throw std::invalid_argument("not a prime: " + p.get_str());
        if (k < 1) throw std::invalid_argument("exponent must be >= 1");
        auto r = std::make_shared<RingDescriptor>();
        r->kind = RingKind::ModPrimePower;
        r->prime = p;
        r->exponent = k;
        mpz_pow_ui(r->modulus.get_mpz_t(), p.get_mpz_t(), k);
        return r;
    }

    bool is_field() const {
        return kind != RingKind::ModPrimePower;
    }

    bool operator==(const RingDescriptor& o) const {
        if (kind != o.kind) return false;
        switch (kind) {
            case RingKind::Rationals: return true;
            case RingKind::Quadratic: return discriminant == o.discriminant;
            case RingKind::PrimeField: return prime == o.prime;
            case RingKind::ModPrimePower: return prime == o.prime && exponent == o.exponent;
        }
        return false;
    }
    bool operator!=(const RingDescriptor& o) const { return !(*this == o); }

    std::string spec() const {
        switch (kind) {
            case RingKind::Rationals: return "Q";
            case RingKind::Quadratic: return "Q(sqrt:" + std::to_string(discriminant) + ")";
            case RingKind::PrimeField: return "Fp:" + prime.get_str();
            case RingKind::ModPrimePower: return "Z" + prime.get_str() + ":" + std::to_string(exponent);
        }
        return {};
    }
};

inline bool same_ring(const RingPtr& a, const RingPtr& b) {
    return a == b || (a && b && *a == *b);
}

/// Builds a canonical mpq from numerator and denominator. GMP requires
/// mpq values to be canonicalized in place before they are copied or
/// used in arithmetic; always construct fractions through this helper.
inline mpq_class make_rational(const mpz_class& num, const mpz_class& den = 1) {
    if (den == 0) throw std::domain_error("zero denominator");
    mpq_class q(num, den);
    q.canonicalize();
    return q;
}

/// Parses "Q" | "Q(sqrt:<int>)" | "Fp:<prime>" | "Z2:<k>".
inline RingPtr make_ring(std::string_view spec) {
    auto parse_int = [](std::string_view s) -> long {
        if (s.empty()) throw std::invalid_argument("empty integer in ring spec");
        size_t pos = 0;
        long v;
        try {
            v = std::stol(std::string(s), &pos);
        } catch (const std::exception&) {
            throw std::invalid_argument("bad integer in ring spec: " + std::string(s));
        }
        if (pos != s.size())
            throw std::invalid_argument("bad integer in ring spec: " + std::string(s));
        return v;
    };
    // trim outer whitespace only; the grammar itself has none
    size_t b = spec.find_first_not_of(" \t");
    size_t e = spec.find_last_not_of(" \t");
    if (b == std::string_view::npos) throw std::invalid_argument("empty ring spec");
    spec = spec.substr(b, e - b + 1);

    if (spec == "Q") return RingDescriptor::rationals();
    if (spec.rfind("Q(sqrt:", 0) == 0 && spec.back() == ')')
        return RingDescriptor::quadratic(parse_int(spec.substr(7, spec.size() - 8)));
    if (spec.rfind("Fp:", 0) == 0)
        return RingDescriptor::prime_field(mpz_class(std::string(spec.substr(3))));
    if (spec.rfind("Z2:", 0) == 0) {
        long k = parse_int(spec.substr(3));
        if (k < 1) throw std::invalid_argument("Z2 exponent must be >= 1");
        return RingDescriptor::mod_prime_power(2, static_cast<unsigned>(k));
    }
    throw std::invalid_argument("unrecognized ring spec: " + std::string(spec));
}

/// One exact element of a RingDescriptor. Canonical form is maintained
/// by every operation: rationals in lowest terms with positive
/// denominator (mpq invariant), quadratic parts likewise, residues in
/// [0, p^k).
class RingElem {
public:
    RingElem() : ring_(RingDescriptor::rationals()) {}

    static RingElem zero(const RingPtr& r) { return from_int(r, 0); }
    static RingElem one(const RingPtr& r) { return from_int(r, 1); }

    static RingElem from_int(const RingPtr& r, const mpz_class& n) {
        switch (r->kind) {
            case RingKind::Rationals:
            case RingKind::Quadratic: return rational(r, mpq_class(n));
            default: return residue(r, n);
        }
    }

    /// `q` must already be canonical (every mpq built by make_rational
    /// or by gmpxx arithmetic is).
    static RingElem rational(const RingPtr& r, const mpq_class& q) {
        if (r->kind == RingKind::PrimeField || r->kind == RingKind::ModPrimePower) {
            // embed n/d as n * d^-1
            RingElem num = residue(r, q.get_num());
            RingElem den = residue(r, q.get_den());
            return num / den;
        }
        RingElem x(r);
        x.a_ = q;
        return x;
    }

    static RingElem quadratic(const RingPtr& r, const mpq_class& a, const mpq_class& b) {
        if (r->kind != RingKind::Quadratic) {
            if (b != 0) throw std::domain_error("generator w only exists in quadratic extensions");
            return rational(r, a);
        }
        RingElem x(r);
        x.a_ = a;
        x.b_ = b;
        return x;
    }

    static RingElem generator(const RingPtr& r) {
        if (r->kind != RingKind::Quadratic)
            throw std::domain_error("generator w only exists in quadratic extensions");
        return quadratic(r, 0, 1);
    }

    static RingElem residue(const RingPtr& r, const mpz_class& n) {
        if (r->kind != RingKind::PrimeField && r->kind != RingKind::ModPrimePower)
            throw std::domain_error("residue element requires a modular ring");
        RingElem x(r);
        mpz_fdiv_r(x.r_.get_mpz_t(), n.get_mpz_t(), r->modulus.get_mpz_t());
        return x;
    }

    const RingPtr& ring() const { return ring_; }

    bool is_zero() const {
        switch (ring_->kind) {
            case RingKind::Rationals: return a_ == 0;
            case RingKind::Quadratic: return a_ == 0 && b_ == 0;
            default: return r_ == 0;
        }
    }

    bool is_one() const {
        switch (ring_->kind) {
            case RingKind::Rationals: return a_ == 1;
            case RingKind::Quadratic: return a_ == 1 && b_ == 0;
            default: return r_ == 1 || (ring_->modulus == 1 && r_ == 0);
        }
    }

    bool is_unit() const {
        if (is_zero()) return false;
        if (ring_->kind != RingKind::ModPrimePower) return true;
        mpz_class g;
        mpz_gcd(g.get_mpz_t(), r_.get_mpz_t(), ring_->prime.get_mpz_t());
        return g == 1;
    }

    /// True when every coordinate is an integer (used for Z[w] membership).
    bool is_integral() const {
        switch (ring_->kind) {
            case RingKind::Rationals: return a_.get_den() == 1;
            case RingKind::Quadratic: return a_.get_den() == 1 && b_.get_den() == 1;
            default: return true;
        }
    }

    const mpq_class& rat_part() const { return a_; }
    const mpq_class& quad_part() const { return b_; }
    const mpz_class& residue_value() const { return r_; }

    friend RingElem operator+(const RingElem& x, const RingElem& y) {
        check(x, y);
        RingElem z(x.ring_);
        switch (x.ring_->kind) {
            case RingKind::Rationals: z.a_ = x.a_ + y.a_; break;
            case RingKind::Quadratic:
                z.a_ = x.a_ + y.a_;
                z.b_ = x.b_ + y.b_;
                break;
            default:
                z.r_ = x.r_ + y.r_;
                if (z.r_ >= x.ring_->modulus) z.r_ -= x.ring_->modulus;
        }
        return z;
    }

    friend RingElem operator-(const RingElem& x, const RingElem& y) { return x + (-y); }

    RingElem operator-() const {
        RingElem z(ring_);
        switch (ring_->kind) {
            case RingKind::Rationals: z.a_ = -a_; break;
            case RingKind::Quadratic:
                z.a_ = -a_;
                z.b_ = -b_;
                break;
            default: z.r_ = r_ == 0 ? mpz_class(0) : mpz_class(ring_->modulus - r_);
        }
        return z;
    }

    friend RingElem operator*(const RingElem& x, const RingElem& y) {
        check(x, y);
        RingElem z(x.ring_);
        switch (x.ring_->kind) {
            case RingKind::Rationals: z.a_ = x.a_ * y.a_; break;
            case RingKind::Quadratic:
                // (a1 + b1 w)(a2 + b2 w) = a1 a2 + d b1 b2 + (a1 b2 + a2 b1) w
                z.a_ = x.a_ * y.a_ + mpq_class(x.ring_->discriminant) * x.b_ * y.b_;
                z.b_ = x.a_ * y.b_ + x.b_ * y.a_;
                break;
            default: {
                mpz_class t = x.r_ * y.r_;
                mpz_fdiv_r(z.r_.get_mpz_t(), t.get_mpz_t(), x.ring_->modulus.get_mpz_t());
            }
        }
        return z;
    }

    RingElem inv() const {
        if (!is_unit()) throw std::domain_error("division by non-unit in " + ring_->spec());
        RingElem z(ring_);
        switch (ring_->kind) {
            case RingKind::Rationals: z.a_ = 1 / a_; break;
            case RingKind::Quadratic: {
                // 1/(a+bw) = (a-bw)/(a^2 - d b^2); the norm is nonzero for
                // square-free d != 0,1 unless a = b = 0.
                mpq_class norm = a_ * a_ - mpq_class(ring_->discriminant) * b_ * b_;
                z.a_ = a_ / norm;
                z.b_ = -b_ / norm;
                break;
            }
            default:
                if (mpz_invert(z.r_.get_mpz_t(), r_.get_mpz_t(), ring_->modulus.get_mpz_t()) == 0)
                    throw std::domain_error("division by non-unit in " + ring_->spec());
        }
        return z;
    }

    friend RingElem operator/(const RingElem& x, const RingElem& y) {
        check(x, y);
        return x * y.inv();
    }

    RingElem pow(unsigned long e) const {
        RingElem acc = one(ring_), base = *this;
        while (e) {
            if (e & 1) acc = acc * base;
            base = base * base;
            e >>= 1;
        }
        return acc;
    }

    bool operator==(const RingElem& o) const {
        if (!same_ring(ring_, o.ring_)) return false;
        switch (ring_->kind) {
            case RingKind::Rationals: return a_ == o.a_;
            case RingKind::Quadratic: return a_ == o.a_ && b_ == o.b_;
            default: return r_ == o.r_;
        }
    }
    bool operator!=(const RingElem& o) const { return !(*this == o); }

    /// Serialized form: "n" or "n/d"; quadratic "a+b*w"; residues decimal.
    std::string str() const {
        std::ostringstream os;
        switch (ring_->kind) {
            case RingKind::Rationals: os << a_; break;
            case RingKind::Quadratic: {
                if (b_ == 0) {
                    os << a_;
                    break;
                }
                bool head = false;
                if (a_ != 0) {
                    os << a_;
                    head = true;
                }
                if (b_ < 0)
                    os << "-";
                else if (head)
                    os << "+";
                mpq_class ab = abs(b_);
                if (ab != 1) os << ab << "*";
                os << "w";
                break;
            }
            default: os << r_;
        }
        return os.str();
    }

private:
    explicit RingElem(const RingPtr& r) : ring_(r) {}

    static void check(const RingElem& x, const RingElem& y) {
        if (!same_ring(x.ring_, y.ring_))
            throw std::domain_error("ring mismatch: " + x.ring_->spec() + " vs " + y.ring_->spec());
    }

    RingPtr ring_;
    mpq_class a_, b_;  // rational value, or a + b*w
    mpz_class r_;      // residue
};

struct StufeResult {
    int stufe;
    std::vector<RingElem> witness;  // squares sum to -1, length == stufe
};

/// Brute-force Stufe of F_p: 1 when -1 is a square, else 2 (odd p),
/// and 1 for p = 2. Witness entries are the smallest ones found by
/// ascending scan.
inline StufeResult finite_field_stufe(long p) {
    if (p < 2 || p > 1000000L) throw std::invalid_argument("p out of range (2..10^6)");
    mpz_class pz(p);
    if (!detail::is_prime(pz)) throw std::invalid_argument("p must be prime");
    RingPtr fp = RingDescriptor::prime_field(pz);
    if (p == 2) return {1, {RingElem::from_int(fp, 1)}};

    std::vector<long> root(static_cast<size_t>(p), -1);  // smallest square root
    for (long x = 0; x <= p / 2; ++x) {
        long s = static_cast<long>((static_cast<unsigned long long>(x) * x) % p);
        if (root[static_cast<size_t>(s)] < 0) root[static_cast<size_t>(s)] = x;
    }
    if (root[static_cast<size_t>(p - 1)] > 0)
        return {1, {RingElem::from_int(fp, root[static_cast<size_t>(p - 1)])}};
    for (long x = 1; x < p; ++x) {
        long s = static_cast<long>((static_cast<unsigned long long>(x) * x) % p);
        long t = ((p - 1 - s) % p + p) % p;
        if (root[static_cast<size_t>(t)] >= 0)
            return {2, {RingElem::from_int(fp, x), RingElem::from_int(fp, root[static_cast<size_t>(t)])}};
    }
    throw std::logic_error("stufe search failed");  // unreachable for prime p
}

}  // namespace unisphere
