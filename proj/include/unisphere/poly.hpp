#pragma once

// Sparse multivariate polynomials over a RingDescriptor, normal form
// modulo the sphere relation, monic division, 3x3 determinants,
// substitution and evaluation. Everything is pure and immutable.

#include "unisphere/ring.hpp"

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

namespace unisphere {

/// Ordered list of distinct variable names. The order is fixed at
/// creation and defines the monomial comparison.
class VarSet {
public:
    static std::shared_ptr<const VarSet> make(std::vector<std::string> names) {
        for (size_t i = 0; i < names.size(); ++i)
            for (size_t j = i + 1; j < names.size(); ++j)
                if (names[i] == names[j])
                    throw std::invalid_argument("duplicate variable name: " + names[i]);
        auto v = std::make_shared<VarSet>();
        v->names_ = std::move(names);
        return v;
    }

    size_t size() const { return names_.size(); }
    const std::string& name(size_t i) const { return names_[i]; }
    const std::vector<std::string>& names() const { return names_; }

    std::optional<size_t> index_of(std::string_view n) const {
        for (size_t i = 0; i < names_.size(); ++i)
            if (names_[i] == n) return i;
        return std::nullopt;
    }

    bool operator==(const VarSet& o) const { return names_ == o.names_; }

private:
    std::vector<std::string> names_;
};

using VarSetPtr = std::shared_ptr<const VarSet>;

inline bool same_vars(const VarSetPtr& a, const VarSetPtr& b) {
    return a == b || (a && b && *a == *b);
}

using Mono = std::vector<uint32_t>;

inline uint32_t mono_degree(const Mono& m) {
    return std::accumulate(m.begin(), m.end(), uint32_t{0});
}

/// Graded lexicographic, iterating leading term first.
struct GrlexDesc {
    bool operator()(const Mono& a, const Mono& b) const {
        uint32_t da = mono_degree(a), db = mono_degree(b);
        if (da != db) return da > db;
        return std::lexicographical_compare(b.begin(), b.end(), a.begin(), a.end());
    }
};

class Poly {
public:
    using TermMap = std::map<Mono, RingElem, GrlexDesc>;

    Poly() = default;
    Poly(VarSetPtr vars, RingPtr ring) : vars_(std::move(vars)), ring_(std::move(ring)) {}

    static Poly constant(const VarSetPtr& vars, const RingElem& c) {
        Poly p(vars, c.ring());
        p.add_term(Mono(vars->size(), 0), c);
        return p;
    }

    static Poly from_int(const VarSetPtr& vars, const RingPtr& ring, long n) {
        return constant(vars, RingElem::from_int(ring, n));
    }

    static Poly variable(const VarSetPtr& vars, const RingPtr& ring, size_t idx) {
        if (idx >= vars->size()) throw std::invalid_argument("variable index out of range");
        Poly p(vars, ring);
        Mono m(vars->size(), 0);
        m[idx] = 1;
        p.add_term(m, RingElem::one(ring));
        return p;
    }

    static Poly variable(const VarSetPtr& vars, const RingPtr& ring, std::string_view name) {
        auto i = vars->index_of(name);
        if (!i) throw std::invalid_argument("unknown variable: " + std::string(name));
        return variable(vars, ring, *i);
    }

    static Poly monomial(const VarSetPtr& vars, const RingElem& c, const Mono& m) {
        if (m.size() != vars->size()) throw std::invalid_argument("exponent vector length mismatch");
        Poly p(vars, c.ring());
        p.add_term(m, c);
        return p;
    }

    const VarSetPtr& vars() const { return vars_; }
    const RingPtr& ring() const { return ring_; }
    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    size_t term_count() const { return terms_.size(); }

    bool is_constant() const {
        return terms_.empty() || (terms_.size() == 1 && mono_degree(terms_.begin()->first) == 0);
    }

    RingElem constant_value() const {
        if (terms_.empty()) return RingElem::zero(ring_);
        if (!is_constant()) throw std::domain_error("polynomial is not constant");
        return terms_.begin()->second;
    }

    uint32_t total_degree() const {
        uint32_t d = 0;
        for (auto& [m, c] : terms_) d = std::max(d, mono_degree(m));
        return d;
    }

    uint32_t degree_in(size_t var) const {
        uint32_t d = 0;
        for (auto& [m, c] : terms_) d = std::max(d, m[var]);
        return d;
    }

    RingElem coeff(const Mono& m) const {
        auto it = terms_.find(m);
        return it == terms_.end() ? RingElem::zero(ring_) : it->second;
    }

    /// Terms whose exponent in `var` equals e, with that exponent cleared.
    Poly coeff_in_var(size_t var, uint32_t e) const {
        Poly r(vars_, ring_);
        for (auto& [m, c] : terms_)
            if (m[var] == e) {
                Mono n = m;
                n[var] = 0;
                r.add_term(n, c);
            }
        return r;
    }

    void add_term(const Mono& m, const RingElem& c) {
        if (c.is_zero()) return;
        auto [it, fresh] = terms_.emplace(m, c);
        if (!fresh) {
            it->second = it->second + c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    friend Poly operator+(const Poly& p, const Poly& q) {
        check(p, q);
        Poly r = p;
        for (auto& [m, c] : q.terms_) r.add_term(m, c);
        return r;
    }

    friend Poly operator-(const Poly& p, const Poly& q) { return p + (-q); }

    Poly operator-() const {
        Poly r(vars_, ring_);
        for (auto& [m, c] : terms_) r.terms_.emplace(m, -c);
        return r;
    }

    friend Poly operator*(const Poly& p, const Poly& q) {
        check(p, q);
        Poly r(p.vars_, p.ring_);
        Mono m(p.vars_ ? p.vars_->size() : 0);
        for (auto& [ma, ca] : p.terms_)
            for (auto& [mb, cb] : q.terms_) {
                for (size_t i = 0; i < m.size(); ++i) m[i] = ma[i] + mb[i];
                r.add_term(m, ca * cb);
            }
        return r;
    }

    friend Poly operator*(const Poly& p, const RingElem& c) {
        Poly r(p.vars_, p.ring_);
        if (c.is_zero()) return r;
        for (auto& [m, k] : p.terms_) {
            RingElem v = k * c;
            if (!v.is_zero()) r.terms_.emplace(m, v);
        }
        return r;
    }
    friend Poly operator*(const RingElem& c, const Poly& p) { return p * c; }

    Poly pow(uint32_t e) const {
        Poly acc = from_int(vars_, ring_, 1);
        Poly base = *this;
        while (e) {
            if (e & 1) acc = acc * base;
            e >>= 1;
            if (e) base = base * base;
        }
        return acc;
    }

    bool operator==(const Poly& o) const {
        if (!same_vars(vars_, o.vars_) || !same_ring(ring_, o.ring_)) return false;
        return terms_ == o.terms_;
    }
    bool operator!=(const Poly& o) const { return !(*this == o); }

    std::string str() const;

private:
    static void check(const Poly& p, const Poly& q) {
        if (!same_vars(p.vars_, q.vars_)) throw std::domain_error("variable set mismatch");
        if (!same_ring(p.ring_, q.ring_)) throw std::domain_error("coefficient ring mismatch");
    }

    VarSetPtr vars_;
    RingPtr ring_;
    TermMap terms_;
};

// ---------------------------------------------------------------------------
// Printing. The output is re-parseable by parse_poly and canonical:
// graded-lex descending terms, '*' between factors, '^' for exponents.

inline std::string Poly::str() const {
    if (terms_.empty()) return "0";
    std::string out;
    bool first = true;
    for (auto& [m, c] : terms_) {
        std::string mono;
        for (size_t i = 0; i < m.size(); ++i) {
            if (m[i] == 0) continue;
            if (!mono.empty()) mono += "*";
            mono += vars_->name(i);
            if (m[i] > 1) mono += "^" + std::to_string(m[i]);
        }
        // split the coefficient into sign and magnitude where meaningful
        bool neg = false;
        std::string cs;
        switch (ring_->kind) {
            case RingKind::Rationals: {
                mpq_class q = c.rat_part();
                neg = q < 0;
                mpq_class a = abs(q);
                if (a != 1 || mono.empty()) {
                    std::ostringstream os;
                    os << a;
                    cs = os.str();
                }
                break;
            }
            case RingKind::Quadratic: {
                if (c.quad_part() == 0) {
                    mpq_class q = c.rat_part();
                    neg = q < 0;
                    mpq_class a = abs(q);
                    if (a != 1 || mono.empty()) {
                        std::ostringstream os;
                        os << a;
                        cs = os.str();
                    }
                } else {
                    cs = "(" + c.str() + ")";
                }
                break;
            }
            default: cs = c.str();
        }
        if (first) {
            if (neg) out += "-";
            first = false;
        } else {
            out += neg ? " - " : " + ";
        }
        if (!cs.empty() && !mono.empty())
            out += cs + "*" + mono;
        else if (!cs.empty())
            out += cs;
        else
            out += mono;
    }
    return out;
}

// ---------------------------------------------------------------------------
// Monic division and the sphere normal form.

/// Divides p by a divisor that is monic as a univariate polynomial in
/// `var` over the remaining variables. Returns (quotient, remainder)
/// with deg_var(remainder) < deg_var(divisor); the decomposition
/// p = divisor*quotient + remainder is exact and unique.
inline std::pair<Poly, Poly> divide_monic(const Poly& p, const Poly& divisor, std::string_view var) {
    if (!same_vars(p.vars(), divisor.vars())) throw std::domain_error("variable set mismatch");
    auto vi = p.vars()->index_of(var);
    if (!vi) throw std::invalid_argument("unknown variable: " + std::string(var));
    size_t v = *vi;
    uint32_t dd = divisor.degree_in(v);
    Poly lead = divisor.coeff_in_var(v, dd);
    if (!(lead.is_constant() && lead.constant_value().is_one()))
        throw std::domain_error("divisor is not monic in " + std::string(var));

    Poly quotient(p.vars(), p.ring());
    Poly rem = p;
    uint32_t dr = rem.degree_in(v);
    while (!rem.is_zero() && dr >= dd) {
        Poly top = rem.coeff_in_var(v, dr);  // whole coefficient at the top degree
        Mono shift(p.vars()->size(), 0);
        shift[v] = dr - dd;
        Poly t = top * Poly::monomial(p.vars(), RingElem::one(p.ring()), shift);
        quotient = quotient + t;
        rem = rem - t * divisor;
        dr = rem.degree_in(v);
    }
    return {quotient, rem};
}

/// The defining relation X^2+Y^2+Z^2-1 over p's variable set.
inline Poly sphere_relation(const VarSetPtr& vars, const RingPtr& ring) {
    auto ix = vars->index_of("X"), iy = vars->index_of("Y"), iz = vars->index_of("Z");
    if (!ix || !iy || !iz)
        throw std::invalid_argument("variable set must contain X, Y and Z");
    Poly q(vars, ring);
    for (size_t v : {*ix, *iy, *iz}) {
        Mono m(vars->size(), 0);
        m[v] = 2;
        q.add_term(m, RingElem::one(ring));
    }
    q.add_term(Mono(vars->size(), 0), -RingElem::one(ring));
    return q;
}

/// Unique representative of p modulo X^2+Y^2+Z^2-1 with Z-degree <= 1,
/// obtained by Z^2 -> 1-X^2-Y^2 rewriting (monic division in Z).
inline Poly sphere_normal_form(const Poly& p) {
    Poly q1 = sphere_relation(p.vars(), p.ring());
    return divide_monic(p, q1, "Z").second;
}

// ---------------------------------------------------------------------------
// 3x3 matrices of polynomials.

struct Mat3 {
    std::array<std::array<Poly, 3>, 3> e;

    Mat3(const std::array<std::array<Poly, 3>, 3>& entries) : e(entries) {
        for (auto& row : e)
            for (auto& x : row)
                if (!same_vars(x.vars(), e[0][0].vars()) || !same_ring(x.ring(), e[0][0].ring()))
                    throw std::domain_error("matrix entries must share variables and ring");
    }

    const VarSetPtr& vars() const { return e[0][0].vars(); }
    const RingPtr& ring() const { return e[0][0].ring(); }
};

/// Cofactor-expansion determinant along the first row.
inline Poly det3(const Mat3& m) {
    auto minor = [&](int r1, int r2, int c1, int c2) {
        return m.e[r1][c1] * m.e[r2][c2] - m.e[r1][c2] * m.e[r2][c1];
    };
    return m.e[0][0] * minor(1, 2, 1, 2) - m.e[0][1] * minor(1, 2, 0, 2) + m.e[0][2] * minor(1, 2, 0, 1);
}

// ---------------------------------------------------------------------------
// Substitution and evaluation.

/// Simultaneous substitution of polynomials for variables. All assigned
/// polynomials must live over one target variable set; variables of p
/// without an assignment must exist there by name.
inline Poly substitute(const Poly& p, const std::map<std::string, Poly>& assignment) {
    if (assignment.empty()) return p;
    const VarSetPtr target = assignment.begin()->second.vars();
    const RingPtr ring = assignment.begin()->second.ring();
    for (auto& [n, q] : assignment)
        if (!same_vars(q.vars(), target) || !same_ring(q.ring(), ring))
            throw std::domain_error("assignment polynomials must share variables and ring");
    if (!same_ring(ring, p.ring())) throw std::domain_error("coefficient ring mismatch");

    size_t nv = p.vars()->size();
    std::vector<const Poly*> assigned(nv, nullptr);
    std::vector<size_t> passthrough(nv, SIZE_MAX);
    std::vector<std::vector<Poly>> powers(nv);  // powers[v][e] = assigned[v]^e
    for (size_t v = 0; v < nv; ++v) {
        auto it = assignment.find(p.vars()->name(v));
        if (it != assignment.end()) {
            assigned[v] = &it->second;
        } else {
            auto tix = target->index_of(p.vars()->name(v));
            if (!tix)
                throw std::invalid_argument("unassigned variable " + p.vars()->name(v) +
                                            " is missing from the target variable set");
            passthrough[v] = *tix;
        }
    }

    Poly result(target, ring);
    for (auto& [m, c] : p.terms()) {
        Mono carried(target->size(), 0);
        Poly acc = Poly::constant(target, c);
        for (size_t v = 0; v < nv; ++v) {
            if (m[v] == 0) continue;
            if (assigned[v]) {
                auto& pw = powers[v];
                if (pw.empty()) pw.push_back(Poly::from_int(target, ring, 1));
                while (pw.size() <= m[v]) pw.push_back(pw.back() * (*assigned[v]));
                acc = acc * pw[m[v]];
            } else {
                carried[passthrough[v]] += m[v];
            }
        }
        if (mono_degree(carried) > 0)
            acc = acc * Poly::monomial(target, RingElem::one(ring), carried);
        result = result + acc;
    }
    return result;
}

/// Total evaluation: every variable must be assigned a scalar.
inline RingElem evaluate(const Poly& p, const std::map<std::string, RingElem>& point) {
    size_t nv = p.vars()->size();
    std::vector<const RingElem*> vals(nv, nullptr);
    for (size_t v = 0; v < nv; ++v) {
        auto it = point.find(p.vars()->name(v));
        if (it == point.end())
            throw std::invalid_argument("missing assignment for variable " + p.vars()->name(v));
        if (!same_ring(it->second.ring(), p.ring())) throw std::domain_error("ring mismatch in evaluation");
        vals[v] = &it->second;
    }
    std::vector<std::vector<RingElem>> powers(nv);
    RingElem sum = RingElem::zero(p.ring());
    for (auto& [m, c] : p.terms()) {
        RingElem t = c;
        for (size_t v = 0; v < nv; ++v) {
            if (m[v] == 0) continue;
            auto& pw = powers[v];
            if (pw.empty()) pw.push_back(RingElem::one(p.ring()));
            while (pw.size() <= m[v]) pw.push_back(pw.back() * (*vals[v]));
            t = t * pw[m[v]];
        }
        sum = sum + t;
    }
    return sum;
}

// ---------------------------------------------------------------------------
// Numerator/denominator pairs. Only what the closed-form substitutions
// need: no reduction, equality by cross-multiplication.

struct PolyFrac {
    Poly num, den;

    PolyFrac() = default;
    PolyFrac(Poly n, Poly d) : num(std::move(n)), den(std::move(d)) {
        if (den.is_zero()) throw std::domain_error("zero denominator");
    }

    static PolyFrac whole(const Poly& p) {
        return PolyFrac(p, Poly::from_int(p.vars(), p.ring(), 1));
    }

    friend PolyFrac operator*(const PolyFrac& a, const PolyFrac& b) {
        return PolyFrac(a.num * b.num, a.den * b.den);
    }
    friend PolyFrac operator+(const PolyFrac& a, const PolyFrac& b) {
        return PolyFrac(a.num * b.den + b.num * a.den, a.den * b.den);
    }
    friend PolyFrac operator-(const PolyFrac& a, const PolyFrac& b) {
        return PolyFrac(a.num * b.den - b.num * a.den, a.den * b.den);
    }

    bool same_value(const PolyFrac& o) const { return num * o.den == o.num * den; }
    bool is_zero() const { return num.is_zero(); }
};

/// Evaluates p at fraction-valued arguments (one per variable of p)
/// over a single common denominator, avoiding the blow-up of pairwise
/// fraction addition. Returns numerator and denominator polynomials
/// over the argument variable set.
inline PolyFrac eval_at_fracs(const Poly& p, const std::map<std::string, PolyFrac>& args) {
    size_t nv = p.vars()->size();
    if (nv == 0) throw std::invalid_argument("eval_at_fracs requires at least one variable");
    std::vector<const PolyFrac*> arg(nv, nullptr);
    std::vector<uint32_t> maxe(nv, 0);
    for (size_t v = 0; v < nv; ++v) {
        auto it = args.find(p.vars()->name(v));
        if (it == args.end())
            throw std::invalid_argument("missing argument for variable " + p.vars()->name(v));
        arg[v] = &it->second;
    }
    for (auto& [m, c] : p.terms())
        for (size_t v = 0; v < nv; ++v) maxe[v] = std::max(maxe[v], m[v]);

    const VarSetPtr target = arg[0]->num.vars();
    const RingPtr ring = arg[0]->num.ring();

    // power tables for numerators and denominators
    std::vector<std::vector<Poly>> npow(nv), dpow(nv);
    for (size_t v = 0; v < nv; ++v) {
        npow[v].push_back(Poly::from_int(target, ring, 1));
        dpow[v].push_back(Poly::from_int(target, ring, 1));
        for (uint32_t e = 1; e <= maxe[v]; ++e) {
            npow[v].push_back(npow[v].back() * arg[v]->num);
            dpow[v].push_back(dpow[v].back() * arg[v]->den);
        }
    }
    Poly common = Poly::from_int(target, ring, 1);
    for (size_t v = 0; v < nv; ++v) common = common * dpow[v][maxe[v]];

    Poly num(target, ring);
    for (auto& [m, c] : p.terms()) {
        Poly t = Poly::constant(target, c);
        for (size_t v = 0; v < nv; ++v) {
            if (m[v]) t = t * npow[v][m[v]];
            if (maxe[v] - m[v]) t = t * dpow[v][maxe[v] - m[v]];
        }
        num = num + t;
    }
    return PolyFrac(num, common);
}

}  // namespace unisphere
