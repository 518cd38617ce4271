#ifndef STEPLTL_PRESBURGER_HPP
#define STEPLTL_PRESBURGER_HPP

#include <cstdint>
#include <map>
#include <memory>
#include <numeric>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace stepltl {

// ── Linear integer arithmetic with divisibility ─────────────────────────────
//
// Variables range over the integers; producers that mean naturals insert
// explicit >= 0 guards.  Sentences are decided by Cooper-style quantifier
// elimination: rescale the eliminated variable's coefficients to +-1 via an
// lcm substitution, then replace the existential by the finite disjunction
// over the "minus infinity" residues and the least solutions above each
// lower bound.  No attempt is made to be clever about formula growth beyond
// constant folding, flattening and duplicate removal; inputs are desk-scale.

// ── PATerm ──────────────────────────────────────────────────────────────────

struct PATerm {
    long long constant = 0;
    std::map<std::string, long long> coeffs;  // no zero entries

    PATerm() = default;

    static PATerm constant_term(long long n) {
        PATerm t;
        t.constant = n;
        return t;
    }

    static PATerm variable(const std::string& name) {
        PATerm t;
        t.coeffs[name] = 1;
        return t;
    }

    bool is_constant() const { return coeffs.empty(); }

    long long coeff(const std::string& name) const {
        auto it = coeffs.find(name);
        return it == coeffs.end() ? 0 : it->second;
    }

    PATerm& add(const std::string& name, long long c) {
        if (c == 0) return *this;
        long long next = coeffs[name] + c;
        if (next == 0)
            coeffs.erase(name);
        else
            coeffs[name] = next;
        return *this;
    }

    friend PATerm operator+(const PATerm& a, const PATerm& b) {
        PATerm r = a;
        r.constant += b.constant;
        for (const auto& [name, c] : b.coeffs) r.add(name, c);
        return r;
    }

    friend PATerm operator-(const PATerm& a, const PATerm& b) {
        PATerm r = a;
        r.constant -= b.constant;
        for (const auto& [name, c] : b.coeffs) r.add(name, -c);
        return r;
    }

    friend PATerm operator+(const PATerm& a, long long n) {
        PATerm r = a;
        r.constant += n;
        return r;
    }

    PATerm scaled(long long n) const {
        PATerm r;
        if (n == 0) return r;
        r.constant = constant * n;
        for (const auto& [name, c] : coeffs) r.coeffs[name] = c * n;
        return r;
    }

    PATerm without(const std::string& name) const {
        PATerm r = *this;
        r.coeffs.erase(name);
        return r;
    }

    // Substitute `name` (expected coefficient +-1 by the elimination kernel,
    // arbitrary in general) by `by`.
    PATerm substituted(const std::string& name, const PATerm& by) const {
        long long c = coeff(name);
        if (c == 0) return *this;
        return without(name) + by.scaled(c);
    }

    long long evaluate(const std::map<std::string, long long>& assignment) const {
        long long v = constant;
        for (const auto& [name, c] : coeffs) {
            auto it = assignment.find(name);
            if (it == assignment.end())
                throw std::invalid_argument("unassigned variable '" + name + "'");
            v += c * it->second;
        }
        return v;
    }

    bool operator==(const PATerm& o) const {
        return constant == o.constant && coeffs == o.coeffs;
    }

    std::string to_string() const {
        std::string out;
        for (const auto& [name, c] : coeffs) {
            if (out.empty()) {
                if (c == -1)
                    out += "-";
                else if (c != 1)
                    out += std::to_string(c) + "*";
            } else {
                out += c < 0 ? " - " : " + ";
                long long a = c < 0 ? -c : c;
                if (a != 1) out += std::to_string(a) + "*";
            }
            out += name;
        }
        if (constant != 0 || out.empty()) {
            if (out.empty())
                out += std::to_string(constant);
            else if (constant < 0)
                out += " - " + std::to_string(-constant);
            else
                out += " + " + std::to_string(constant);
        }
        return out;
    }
};

// ── PAFormula ───────────────────────────────────────────────────────────────

enum class PAKind : std::uint8_t {
    True,
    False,
    Leq,      // t1 <= t2
    Eq,       // t1 = t2
    Divides,  // d | t, d >= 1
    Not,
    And,
    Or,
    Exists,
    Forall,
};

class PAFormula;

namespace detail {
struct PANode {
    PAKind kind;
    PATerm t1, t2;
    long long modulus = 0;
    std::string var;
    std::shared_ptr<const PANode> lhs, rhs;
};
}  // namespace detail

class PAFormula {
public:
    PAFormula() = default;

    bool valid() const { return node_ != nullptr; }
    PAKind kind() const { return node()->kind; }
    const PATerm& t1() const { return node()->t1; }
    const PATerm& t2() const { return node()->t2; }
    long long modulus() const { return node()->modulus; }
    const std::string& var() const { return node()->var; }
    PAFormula lhs() const { return PAFormula(node()->lhs); }
    PAFormula rhs() const { return PAFormula(node()->rhs); }

    bool operator==(const PAFormula& o) const {
        if (node_ == o.node_) return true;
        if (!node_ || !o.node_) return false;
        const auto& a = *node_;
        const auto& b = *o.node_;
        if (a.kind != b.kind || a.modulus != b.modulus || a.var != b.var) return false;
        if (!(a.t1 == b.t1) || !(a.t2 == b.t2)) return false;
        return PAFormula(a.lhs) == PAFormula(b.lhs) && PAFormula(a.rhs) == PAFormula(b.rhs);
    }
    bool operator!=(const PAFormula& o) const { return !(*this == o); }

    static PAFormula make(PAKind kind, PATerm t1, PATerm t2, long long modulus,
                          std::string var, PAFormula lhs, PAFormula rhs) {
        auto n = std::make_shared<detail::PANode>();
        n->kind = kind;
        n->t1 = std::move(t1);
        n->t2 = std::move(t2);
        n->modulus = modulus;
        n->var = std::move(var);
        n->lhs = lhs.node_;
        n->rhs = rhs.node_;
        return PAFormula(std::move(n));
    }

private:
    explicit PAFormula(std::shared_ptr<const detail::PANode> n) : node_(std::move(n)) {}
    const detail::PANode* node() const {
        if (!node_) throw std::logic_error("access to empty PA formula");
        return node_.get();
    }
    std::shared_ptr<const detail::PANode> node_;
};

// ── Constructors (with cheap folding) ───────────────────────────────────────

inline PAFormula pa_true() { return PAFormula::make(PAKind::True, {}, {}, 0, {}, {}, {}); }
inline PAFormula pa_false() { return PAFormula::make(PAKind::False, {}, {}, 0, {}, {}, {}); }

inline PAFormula pa_leq(PATerm t1, PATerm t2) {
    if (t1.coeffs == t2.coeffs)
        return t1.constant <= t2.constant ? pa_true() : pa_false();
    return PAFormula::make(PAKind::Leq, std::move(t1), std::move(t2), 0, {}, {}, {});
}

inline PAFormula pa_eq(PATerm t1, PATerm t2) {
    if (t1.coeffs == t2.coeffs)
        return t1.constant == t2.constant ? pa_true() : pa_false();
    return PAFormula::make(PAKind::Eq, std::move(t1), std::move(t2), 0, {}, {}, {});
}

inline PAFormula pa_divides(long long d, PATerm t) {
    if (d < 1) throw std::invalid_argument("divisibility modulus must be >= 1");
    if (d == 1) return pa_true();
    if (t.is_constant()) {
        long long r = t.constant % d;
        return r == 0 ? pa_true() : pa_false();
    }
    return PAFormula::make(PAKind::Divides, std::move(t), {}, d, {}, {}, {});
}

inline PAFormula pa_not(PAFormula f) {
    if (f.kind() == PAKind::True) return pa_false();
    if (f.kind() == PAKind::False) return pa_true();
    if (f.kind() == PAKind::Not) return f.lhs();
    return PAFormula::make(PAKind::Not, {}, {}, 0, {}, std::move(f), {});
}

inline PAFormula pa_and(PAFormula a, PAFormula b) {
    if (a.kind() == PAKind::False || b.kind() == PAKind::False) return pa_false();
    if (a.kind() == PAKind::True) return b;
    if (b.kind() == PAKind::True) return a;
    return PAFormula::make(PAKind::And, {}, {}, 0, {}, std::move(a), std::move(b));
}

inline PAFormula pa_or(PAFormula a, PAFormula b) {
    if (a.kind() == PAKind::True || b.kind() == PAKind::True) return pa_true();
    if (a.kind() == PAKind::False) return b;
    if (b.kind() == PAKind::False) return a;
    return PAFormula::make(PAKind::Or, {}, {}, 0, {}, std::move(a), std::move(b));
}

inline PAFormula pa_implies(PAFormula a, PAFormula b) {
    return pa_or(pa_not(std::move(a)), std::move(b));
}

inline PAFormula pa_exists(std::string var, PAFormula body) {
    if (body.kind() == PAKind::True || body.kind() == PAKind::False) return body;
    return PAFormula::make(PAKind::Exists, {}, {}, 0, std::move(var), std::move(body), {});
}

inline PAFormula pa_forall(std::string var, PAFormula body) {
    if (body.kind() == PAKind::True || body.kind() == PAKind::False) return body;
    return PAFormula::make(PAKind::Forall, {}, {}, 0, std::move(var), std::move(body), {});
}

// ── Queries ─────────────────────────────────────────────────────────────────

namespace detail {
inline void pa_free_vars_into(const PAFormula& f, std::set<std::string>& bound,
                              std::set<std::string>& out) {
    switch (f.kind()) {
        case PAKind::True:
        case PAKind::False:
            return;
        case PAKind::Leq:
        case PAKind::Eq:
        case PAKind::Divides:
            for (const auto& t : {f.t1(), f.t2()})
                for (const auto& [name, c] : t.coeffs) {
                    (void)c;
                    if (!bound.count(name)) out.insert(name);
                }
            return;
        case PAKind::Not:
            pa_free_vars_into(f.lhs(), bound, out);
            return;
        case PAKind::And:
        case PAKind::Or:
            pa_free_vars_into(f.lhs(), bound, out);
            pa_free_vars_into(f.rhs(), bound, out);
            return;
        case PAKind::Exists:
        case PAKind::Forall: {
            bool was = bound.count(f.var()) != 0;
            bound.insert(f.var());
            pa_free_vars_into(f.lhs(), bound, out);
            if (!was) bound.erase(f.var());
            return;
        }
    }
}
}  // namespace detail

inline std::set<std::string> pa_free_vars(const PAFormula& f) {
    std::set<std::string> bound, out;
    detail::pa_free_vars_into(f, bound, out);
    return out;
}

inline bool pa_quantifier_free(const PAFormula& f) {
    switch (f.kind()) {
        case PAKind::Exists:
        case PAKind::Forall:
            return false;
        case PAKind::Not:
            return pa_quantifier_free(f.lhs());
        case PAKind::And:
        case PAKind::Or:
            return pa_quantifier_free(f.lhs()) && pa_quantifier_free(f.rhs());
        default:
            return true;
    }
}

// ── Evaluation ──────────────────────────────────────────────────────────────

// Ground semantics; quantifiers are an error in this overload.
inline bool evaluate_pa(const PAFormula& f,
                        const std::map<std::string, long long>& assignment) {
    switch (f.kind()) {
        case PAKind::True:
            return true;
        case PAKind::False:
            return false;
        case PAKind::Leq:
            return f.t1().evaluate(assignment) <= f.t2().evaluate(assignment);
        case PAKind::Eq:
            return f.t1().evaluate(assignment) == f.t2().evaluate(assignment);
        case PAKind::Divides: {
            long long v = f.t1().evaluate(assignment);
            long long d = f.modulus();
            return ((v % d) + d) % d == 0;
        }
        case PAKind::Not:
            return !evaluate_pa(f.lhs(), assignment);
        case PAKind::And:
            return evaluate_pa(f.lhs(), assignment) && evaluate_pa(f.rhs(), assignment);
        case PAKind::Or:
            return evaluate_pa(f.lhs(), assignment) || evaluate_pa(f.rhs(), assignment);
        case PAKind::Exists:
        case PAKind::Forall:
            throw std::invalid_argument(
                "evaluate_pa: quantifier without a brute-force range");
    }
    throw std::logic_error("evaluate_pa: bad kind");
}

// Oracle mode: quantifiers range over [lo, hi].  Useful only as a
// cross-check on sentences whose truth is stable for the supplied window.
inline bool evaluate_pa(const PAFormula& f, std::map<std::string, long long> assignment,
                        long long lo, long long hi) {
    switch (f.kind()) {
        case PAKind::Not:
            return !evaluate_pa(f.lhs(), std::move(assignment), lo, hi);
        case PAKind::And:
            return evaluate_pa(f.lhs(), assignment, lo, hi) &&
                   evaluate_pa(f.rhs(), std::move(assignment), lo, hi);
        case PAKind::Or:
            return evaluate_pa(f.lhs(), assignment, lo, hi) ||
                   evaluate_pa(f.rhs(), std::move(assignment), lo, hi);
        case PAKind::Exists: {
            for (long long v = lo; v <= hi; ++v) {
                assignment[f.var()] = v;
                if (evaluate_pa(f.lhs(), assignment, lo, hi)) return true;
            }
            return false;
        }
        case PAKind::Forall: {
            for (long long v = lo; v <= hi; ++v) {
                assignment[f.var()] = v;
                if (!evaluate_pa(f.lhs(), assignment, lo, hi)) return false;
            }
            return true;
        }
        default:
            return evaluate_pa(f, assignment);
    }
}

// ── Simplification ──────────────────────────────────────────────────────────
// Constant folding, And/Or flattening with tautology/contradiction pruning
// and duplicate-literal removal.

namespace detail {

inline void collect_chain(const PAFormula& f, PAKind kind, std::vector<PAFormula>& out) {
    if (f.kind() == kind) {
        collect_chain(f.lhs(), kind, out);
        collect_chain(f.rhs(), kind, out);
    } else {
        out.push_back(f);
    }
}

}  // namespace detail

inline PAFormula pa_simplify(const PAFormula& f) {
    switch (f.kind()) {
        case PAKind::True:
        case PAKind::False:
            return f;
        case PAKind::Leq: {
            PATerm d = f.t1() - f.t2();
            if (d.is_constant()) return d.constant <= 0 ? pa_true() : pa_false();
            return f;
        }
        case PAKind::Eq: {
            PATerm d = f.t1() - f.t2();
            if (d.is_constant()) return d.constant == 0 ? pa_true() : pa_false();
            return f;
        }
        case PAKind::Divides: {
            const PATerm& t = f.t1();
            long long d = f.modulus();
            bool all_multiple = true;
            for (const auto& [name, c] : t.coeffs) {
                (void)name;
                if (c % d != 0) {
                    all_multiple = false;
                    break;
                }
            }
            if (all_multiple) return (((t.constant % d) + d) % d) == 0 ? pa_true() : pa_false();
            return f;
        }
        case PAKind::Not:
            return pa_not(pa_simplify(f.lhs()));
        case PAKind::And:
        case PAKind::Or: {
            std::vector<PAFormula> chain;
            detail::collect_chain(f, f.kind(), chain);
            std::vector<PAFormula> kept;
            for (const auto& part : chain) {
                PAFormula s = pa_simplify(part);
                if (f.kind() == PAKind::And) {
                    if (s.kind() == PAKind::False) return pa_false();
                    if (s.kind() == PAKind::True) continue;
                } else {
                    if (s.kind() == PAKind::True) return pa_true();
                    if (s.kind() == PAKind::False) continue;
                }
                bool duplicate = false;
                for (const auto& seen : kept)
                    if (seen == s) {
                        duplicate = true;
                        break;
                    }
                if (!duplicate) kept.push_back(s);
            }
            if (kept.empty()) return f.kind() == PAKind::And ? pa_true() : pa_false();
            PAFormula acc = kept.back();
            for (std::size_t i = kept.size() - 1; i-- > 0;)
                acc = f.kind() == PAKind::And ? pa_and(kept[i], acc) : pa_or(kept[i], acc);
            return acc;
        }
        case PAKind::Exists:
        case PAKind::Forall: {
            PAFormula body = pa_simplify(f.lhs());
            if (!pa_free_vars(body).count(f.var())) return body;
            return f.kind() == PAKind::Exists ? pa_exists(f.var(), body)
                                              : pa_forall(f.var(), body);
        }
    }
    throw std::logic_error("pa_simplify: bad kind");
}

// ── Quantifier elimination (Cooper) ─────────────────────────────────────────

namespace detail {

// Negation normal form with Eq expanded into inequalities.  Negation
// survives only directly on divisibility atoms.
inline PAFormula pa_nnf(const PAFormula& f, bool positive) {
    switch (f.kind()) {
        case PAKind::True:
            return positive ? pa_true() : pa_false();
        case PAKind::False:
            return positive ? pa_false() : pa_true();
        case PAKind::Leq:
            // !(t1 <= t2)  ==  t2 + 1 <= t1
            return positive ? pa_leq(f.t1(), f.t2()) : pa_leq(f.t2() + 1, f.t1());
        case PAKind::Eq:
            return positive
                       ? pa_and(pa_leq(f.t1(), f.t2()), pa_leq(f.t2(), f.t1()))
                       : pa_or(pa_leq(f.t1() + 1, f.t2()), pa_leq(f.t2() + 1, f.t1()));
        case PAKind::Divides:
            return positive ? f : pa_not(f);
        case PAKind::Not:
            return pa_nnf(f.lhs(), !positive);
        case PAKind::And:
            return positive ? pa_and(pa_nnf(f.lhs(), true), pa_nnf(f.rhs(), true))
                            : pa_or(pa_nnf(f.lhs(), false), pa_nnf(f.rhs(), false));
        case PAKind::Or:
            return positive ? pa_or(pa_nnf(f.lhs(), true), pa_nnf(f.rhs(), true))
                            : pa_and(pa_nnf(f.lhs(), false), pa_nnf(f.rhs(), false));
        case PAKind::Exists:
        case PAKind::Forall:
            throw std::invalid_argument("eliminate_var: input must be quantifier-free");
    }
    throw std::logic_error("pa_nnf: bad kind");
}

inline long long lcm_ll(long long a, long long b) { return std::lcm(a, b); }

// lcm of |coefficient of x| over all atoms.
inline void coeff_lcm(const PAFormula& f, const std::string& x, long long& l) {
    switch (f.kind()) {
        case PAKind::Leq: {
            long long c = (f.t1() - f.t2()).coeff(x);
            if (c != 0) l = lcm_ll(l, c < 0 ? -c : c);
            return;
        }
        case PAKind::Divides: {
            long long c = f.t1().coeff(x);
            if (c != 0) l = lcm_ll(l, c < 0 ? -c : c);
            return;
        }
        case PAKind::Not:
            coeff_lcm(f.lhs(), x, l);
            return;
        case PAKind::And:
        case PAKind::Or:
            coeff_lcm(f.lhs(), x, l);
            coeff_lcm(f.rhs(), x, l);
            return;
        default:
            return;
    }
}

// Rewrites every atom so x occurs with coefficient +-1 under the convention
// x' = lambda * x.  Leq atoms come back as (x <= u) or (lo <= x); divisibility
// atoms as d | (x + r).
inline PAFormula unitize(const PAFormula& f, const std::string& x, long long lambda) {
    switch (f.kind()) {
        case PAKind::Leq: {
            PATerm t = f.t1() - f.t2();  // t <= 0
            long long a = t.coeff(x);
            if (a == 0) return f;
            long long scale = lambda / (a < 0 ? -a : a);
            t = t.scaled(scale);  // coefficient of x is now +-lambda
            PATerm rest = t.without(x);
            if (t.coeff(x) > 0) {
                // lambda*x + rest <= 0  ->  x' <= -rest
                return pa_leq(PATerm::variable(x), PATerm() - rest);
            }
            // -lambda*x + rest <= 0  ->  rest <= x'
            return pa_leq(rest, PATerm::variable(x));
        }
        case PAKind::Divides: {
            long long a = f.t1().coeff(x);
            if (a == 0) return f;
            long long scale = lambda / a;  // signed; keeps x' coefficient positive
            PATerm t = f.t1().scaled(scale);
            long long d = f.modulus() * (scale < 0 ? -scale : scale);
            PATerm r = t.without(x);
            return pa_divides(d, PATerm::variable(x) + r);
        }
        case PAKind::Not:
            return pa_not(unitize(f.lhs(), x, lambda));
        case PAKind::And:
            return pa_and(unitize(f.lhs(), x, lambda), unitize(f.rhs(), x, lambda));
        case PAKind::Or:
            return pa_or(unitize(f.lhs(), x, lambda), unitize(f.rhs(), x, lambda));
        default:
            return f;
    }
}

// lcm of moduli of divisibility atoms mentioning x.
inline void modulus_lcm(const PAFormula& f, const std::string& x, long long& l) {
    switch (f.kind()) {
        case PAKind::Divides:
            if (f.t1().coeff(x) != 0) l = lcm_ll(l, f.modulus());
            return;
        case PAKind::Not:
            modulus_lcm(f.lhs(), x, l);
            return;
        case PAKind::And:
        case PAKind::Or:
            modulus_lcm(f.lhs(), x, l);
            modulus_lcm(f.rhs(), x, l);
            return;
        default:
            return;
    }
}

// Lower-bound terms: atoms (lo <= x).
inline void lower_bounds(const PAFormula& f, const std::string& x,
                         std::vector<PATerm>& out) {
    switch (f.kind()) {
        case PAKind::Leq: {
            if (f.t2().coeff(x) == 1 && f.t1().coeff(x) == 0) out.push_back(f.t1());
            return;
        }
        case PAKind::Not:
            lower_bounds(f.lhs(), x, out);
            return;
        case PAKind::And:
        case PAKind::Or:
            lower_bounds(f.lhs(), x, out);
            lower_bounds(f.rhs(), x, out);
            return;
        default:
            return;
    }
}

// F with x substituted by a term.
inline PAFormula subst_var(const PAFormula& f, const std::string& x, const PATerm& by) {
    switch (f.kind()) {
        case PAKind::Leq:
            return pa_leq(f.t1().substituted(x, by), f.t2().substituted(x, by));
        case PAKind::Eq:
            return pa_eq(f.t1().substituted(x, by), f.t2().substituted(x, by));
        case PAKind::Divides:
            return pa_divides(f.modulus(), f.t1().substituted(x, by));
        case PAKind::Not:
            return pa_not(subst_var(f.lhs(), x, by));
        case PAKind::And:
            return pa_and(subst_var(f.lhs(), x, by), subst_var(f.rhs(), x, by));
        case PAKind::Or:
            return pa_or(subst_var(f.lhs(), x, by), subst_var(f.rhs(), x, by));
        default:
            return f;
    }
}

// F with upper bounds (x <= u) replaced by true and lower bounds by false;
// models x drifting to minus infinity.
inline PAFormula minus_infinity(const PAFormula& f, const std::string& x) {
    switch (f.kind()) {
        case PAKind::Leq: {
            if (f.t1().coeff(x) == 1 && f.t2().coeff(x) == 0) return pa_true();
            if (f.t2().coeff(x) == 1 && f.t1().coeff(x) == 0) return pa_false();
            return f;
        }
        case PAKind::Not:
            return pa_not(minus_infinity(f.lhs(), x));
        case PAKind::And:
            return pa_and(minus_infinity(f.lhs(), x), minus_infinity(f.rhs(), x));
        case PAKind::Or:
            return pa_or(minus_infinity(f.lhs(), x), minus_infinity(f.rhs(), x));
        default:
            return f;
    }
}

}  // namespace detail

// Quantifier-free formula equivalent to (exists x over Z)(f), for f
// quantifier-free.  Total; normalises f itself.
inline PAFormula eliminate_var(const PAFormula& f, const std::string& x) {
    PAFormula g = detail::pa_nnf(f, true);
    if (!pa_free_vars(g).count(x)) return pa_simplify(g);

    long long lambda = 1;
    detail::coeff_lcm(g, x, lambda);
    g = detail::unitize(g, x, lambda);
    if (lambda > 1) g = pa_and(g, pa_divides(lambda, PATerm::variable(x)));

    long long delta = 1;
    detail::modulus_lcm(g, x, delta);

    std::vector<PATerm> lows;
    detail::lower_bounds(g, x, lows);
    std::vector<PATerm> unique_lows;
    for (const auto& t : lows) {
        bool seen = false;
        for (const auto& u : unique_lows)
            if (u == t) {
                seen = true;
                break;
            }
        if (!seen) unique_lows.push_back(t);
    }

    PAFormula minf = detail::minus_infinity(g, x);
    PAFormula result = pa_false();
    for (long long j = 0; j < delta; ++j) {
        result = pa_or(result,
                       pa_simplify(detail::subst_var(minf, x, PATerm::constant_term(j))));
        if (result.kind() == PAKind::True) return pa_true();
    }
    for (const auto& low : unique_lows) {
        for (long long j = 0; j < delta; ++j) {
            result = pa_or(result, pa_simplify(detail::subst_var(g, x, low + j)));
            if (result.kind() == PAKind::True) return pa_true();
        }
    }
    return pa_simplify(result);
}

// ── Sentence decision ───────────────────────────────────────────────────────

namespace detail {
inline PAFormula qe(const PAFormula& f) {
    switch (f.kind()) {
        case PAKind::Exists:
            return eliminate_var(qe(f.lhs()), f.var());
        case PAKind::Forall:
            return pa_not(eliminate_var(pa_not(qe(f.lhs())), f.var()));
        case PAKind::Not:
            return pa_not(qe(f.lhs()));
        case PAKind::And:
            return pa_and(qe(f.lhs()), qe(f.rhs()));
        case PAKind::Or:
            return pa_or(qe(f.lhs()), qe(f.rhs()));
        default:
            return f;
    }
}
}  // namespace detail

inline bool decide_sentence(const PAFormula& f) {
    if (!pa_free_vars(f).empty())
        throw std::invalid_argument("decide_sentence: formula is not closed");
    PAFormula qf = detail::qe(f);
    return evaluate_pa(qf, {});
}

// ── Debug printer ───────────────────────────────────────────────────────────
// SMT-LIB flavoured output for manual cross-checks; not a stable interface.

namespace detail {
inline std::string smt_term(const PATerm& t) {
    std::vector<std::string> parts;
    if (t.constant != 0 || t.coeffs.empty()) {
        parts.push_back(t.constant < 0
                            ? "(- " + std::to_string(-t.constant) + ")"
                            : std::to_string(t.constant));
    }
    for (const auto& [name, c] : t.coeffs) {
        if (c == 1)
            parts.push_back(name);
        else if (c == -1)
            parts.push_back("(- " + name + ")");
        else if (c < 0)
            parts.push_back("(* (- " + std::to_string(-c) + ") " + name + ")");
        else
            parts.push_back("(* " + std::to_string(c) + " " + name + ")");
    }
    if (parts.size() == 1) return parts[0];
    std::string out = "(+";
    for (const auto& p : parts) out += " " + p;
    return out + ")";
}
}  // namespace detail

inline std::string to_smtlib(const PAFormula& f) {
    switch (f.kind()) {
        case PAKind::True:
            return "true";
        case PAKind::False:
            return "false";
        case PAKind::Leq:
            return "(<= " + detail::smt_term(f.t1()) + " " + detail::smt_term(f.t2()) + ")";
        case PAKind::Eq:
            return "(= " + detail::smt_term(f.t1()) + " " + detail::smt_term(f.t2()) + ")";
        case PAKind::Divides:
            return "((_ divisible " + std::to_string(f.modulus()) + ") " +
                   detail::smt_term(f.t1()) + ")";
        case PAKind::Not:
            return "(not " + to_smtlib(f.lhs()) + ")";
        case PAKind::And:
            return "(and " + to_smtlib(f.lhs()) + " " + to_smtlib(f.rhs()) + ")";
        case PAKind::Or:
            return "(or " + to_smtlib(f.lhs()) + " " + to_smtlib(f.rhs()) + ")";
        case PAKind::Exists:
            return "(exists ((" + f.var() + " Int)) " + to_smtlib(f.lhs()) + ")";
        case PAKind::Forall:
            return "(forall ((" + f.var() + " Int)) " + to_smtlib(f.lhs()) + ")";
    }
    return "?";
}

}  // namespace stepltl

#endif  // STEPLTL_PRESBURGER_HPP
