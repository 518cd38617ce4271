#ifndef STEPLTL_FORMULA_HPP
#define STEPLTL_FORMULA_HPP

#include <cstdint>
#include <memory>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "stepltl/step_term.hpp"

namespace stepltl {

// ── Formula AST ─────────────────────────────────────────────────────────────
//
// One immutable node type covers both layers of the language:
//
//   * the positive-normal-form core (True .. Forall), which every evaluator
//     and the Presburger compiler consume, and
//   * the sugared connectives (Not / Implies / Iff) that the parser and the
//     arithmetic-encoding templates produce; to_pnf removes them.
//
// Formulas are values: cheap to copy, safe to share across threads.

enum class Kind : std::uint8_t {
    True,
    False,
    Atom,
    NegAtom,
    And,
    Or,
    Next,      // X f
    StepNext,  // X[t] f
    Until,
    Release,
    Exists,
    Forall,

    // pre-PNF only
    Not,
    Implies,
    Iff,
};

class Formula;

namespace detail {
struct FormulaNode {
    Kind kind;
    std::string name;  // Atom/NegAtom: proposition; Exists/Forall: bound variable
    StepTerm term;     // StepNext offset
    std::shared_ptr<const FormulaNode> lhs, rhs;
};
}  // namespace detail

class Formula {
public:
    Formula() = default;

    bool valid() const { return node_ != nullptr; }
    Kind kind() const { return node()->kind; }

    const std::string& prop() const { return node()->name; }
    const StepVar& var() const { return node()->name; }
    const StepTerm& term() const { return node()->term; }

    Formula lhs() const { return Formula(node()->lhs); }
    Formula rhs() const { return Formula(node()->rhs); }

    // Identity of the underlying node; used as a memoisation key.
    const void* id() const { return node_.get(); }

    bool operator==(const Formula& o) const {
        if (node_ == o.node_) return true;
        if (!node_ || !o.node_) return false;
        const auto& a = *node_;
        const auto& b = *o.node_;
        if (a.kind != b.kind || a.name != b.name || !(a.term == b.term)) return false;
        return Formula(a.lhs) == Formula(b.lhs) && Formula(a.rhs) == Formula(b.rhs);
    }
    bool operator!=(const Formula& o) const { return !(*this == o); }

    static Formula make(Kind kind, std::string name, StepTerm term, Formula lhs,
                        Formula rhs) {
        auto n = std::make_shared<detail::FormulaNode>();
        n->kind = kind;
        n->name = std::move(name);
        n->term = std::move(term);
        n->lhs = lhs.node_;
        n->rhs = rhs.node_;
        return Formula(std::move(n));
    }

private:
    explicit Formula(std::shared_ptr<const detail::FormulaNode> n) : node_(std::move(n)) {}

    const detail::FormulaNode* node() const {
        if (!node_) throw std::logic_error("access to empty formula");
        return node_.get();
    }

    std::shared_ptr<const detail::FormulaNode> node_;
};

// ── Constructors ────────────────────────────────────────────────────────────

inline Formula make_true() { return Formula::make(Kind::True, {}, {}, {}, {}); }
inline Formula make_false() { return Formula::make(Kind::False, {}, {}, {}, {}); }
inline Formula make_atom(std::string prop) {
    return Formula::make(Kind::Atom, std::move(prop), {}, {}, {});
}
inline Formula make_neg_atom(std::string prop) {
    return Formula::make(Kind::NegAtom, std::move(prop), {}, {}, {});
}
inline Formula make_and(Formula a, Formula b) {
    return Formula::make(Kind::And, {}, {}, std::move(a), std::move(b));
}
inline Formula make_or(Formula a, Formula b) {
    return Formula::make(Kind::Or, {}, {}, std::move(a), std::move(b));
}
inline Formula make_next(Formula f) {
    return Formula::make(Kind::Next, {}, {}, std::move(f), {});
}
inline Formula make_step_next(StepTerm t, Formula f) {
    return Formula::make(Kind::StepNext, {}, std::move(t), std::move(f), {});
}
inline Formula make_until(Formula a, Formula b) {
    return Formula::make(Kind::Until, {}, {}, std::move(a), std::move(b));
}
inline Formula make_release(Formula a, Formula b) {
    return Formula::make(Kind::Release, {}, {}, std::move(a), std::move(b));
}
inline Formula make_exists(StepVar k, Formula f) {
    return Formula::make(Kind::Exists, std::move(k), {}, std::move(f), {});
}
inline Formula make_forall(StepVar k, Formula f) {
    return Formula::make(Kind::Forall, std::move(k), {}, std::move(f), {});
}

// Negation folds on atoms, so `!p` has a single representation and render
// followed by parse is the identity on every constructible tree.
inline Formula make_not(Formula f) {
    if (f.kind() == Kind::Atom) return make_neg_atom(f.prop());
    if (f.kind() == Kind::NegAtom) return make_atom(f.prop());
    return Formula::make(Kind::Not, {}, {}, std::move(f), {});
}
inline Formula make_implies(Formula a, Formula b) {
    return Formula::make(Kind::Implies, {}, {}, std::move(a), std::move(b));
}
inline Formula make_iff(Formula a, Formula b) {
    return Formula::make(Kind::Iff, {}, {}, std::move(a), std::move(b));
}

// Right-nested conjunction of a nonempty list.
inline Formula and_all(const std::vector<Formula>& fs) {
    if (fs.empty()) throw std::invalid_argument("and_all: empty conjunction");
    Formula acc = fs.back();
    for (std::size_t i = fs.size() - 1; i-- > 0;) acc = make_and(fs[i], acc);
    return acc;
}

// ── Queries ─────────────────────────────────────────────────────────────────

inline bool is_pnf(const Formula& f) {
    switch (f.kind()) {
        case Kind::Not:
        case Kind::Implies:
        case Kind::Iff:
            return false;
        case Kind::True:
        case Kind::False:
        case Kind::Atom:
        case Kind::NegAtom:
            return true;
        case Kind::Next:
        case Kind::StepNext:
        case Kind::Exists:
        case Kind::Forall:
            return is_pnf(f.lhs());
        case Kind::And:
        case Kind::Or:
        case Kind::Until:
        case Kind::Release:
            return is_pnf(f.lhs()) && is_pnf(f.rhs());
    }
    return false;
}

namespace detail {
inline void free_vars_into(const Formula& f, std::set<StepVar>& bound,
                           std::set<StepVar>& out) {
    switch (f.kind()) {
        case Kind::True:
        case Kind::False:
        case Kind::Atom:
        case Kind::NegAtom:
            return;
        case Kind::StepNext:
            for (const auto& [k, c] : f.term().coeffs) {
                (void)c;
                if (!bound.count(k)) out.insert(k);
            }
            free_vars_into(f.lhs(), bound, out);
            return;
        case Kind::Exists:
        case Kind::Forall: {
            bool was_bound = bound.count(f.var()) != 0;
            bound.insert(f.var());
            free_vars_into(f.lhs(), bound, out);
            if (!was_bound) bound.erase(f.var());
            return;
        }
        case Kind::Next:
        case Kind::Not:
            free_vars_into(f.lhs(), bound, out);
            return;
        case Kind::And:
        case Kind::Or:
        case Kind::Until:
        case Kind::Release:
        case Kind::Implies:
        case Kind::Iff:
            free_vars_into(f.lhs(), bound, out);
            free_vars_into(f.rhs(), bound, out);
            return;
    }
}

inline void all_var_names_into(const Formula& f, std::set<StepVar>& out) {
    switch (f.kind()) {
        case Kind::True:
        case Kind::False:
        case Kind::Atom:
        case Kind::NegAtom:
            return;
        case Kind::StepNext:
            for (const auto& [k, c] : f.term().coeffs) {
                (void)c;
                out.insert(k);
            }
            all_var_names_into(f.lhs(), out);
            return;
        case Kind::Exists:
        case Kind::Forall:
            out.insert(f.var());
            all_var_names_into(f.lhs(), out);
            return;
        case Kind::Next:
        case Kind::Not:
            all_var_names_into(f.lhs(), out);
            return;
        default:
            all_var_names_into(f.lhs(), out);
            all_var_names_into(f.rhs(), out);
            return;
    }
}
}  // namespace detail

inline std::set<StepVar> free_step_vars(const Formula& f) {
    std::set<StepVar> bound, out;
    detail::free_vars_into(f, bound, out);
    return out;
}

// ── Substitution ────────────────────────────────────────────────────────────
// Replaces every free occurrence of k inside step terms by `by`, renaming
// bound variables that collide with variables of `by`.  Renames are chosen
// deterministically: base name with the first numeric suffix that avoids the
// formula and the substituted term.

namespace detail {
inline StepVar pick_fresh(const StepVar& base, const std::set<StepVar>& avoid) {
    for (std::uint64_t i = 0;; ++i) {
        StepVar candidate = base + "_" + std::to_string(i);
        if (!avoid.count(candidate)) return candidate;
    }
}
}  // namespace detail

inline Formula substitute_term(const Formula& f, const StepVar& k, const StepTerm& by) {
    switch (f.kind()) {
        case Kind::True:
        case Kind::False:
        case Kind::Atom:
        case Kind::NegAtom:
            return f;
        case Kind::StepNext:
            return make_step_next(f.term().substituted(k, by),
                                  substitute_term(f.lhs(), k, by));
        case Kind::Exists:
        case Kind::Forall: {
            const StepVar& x = f.var();
            if (x == k) return f;  // k is shadowed below
            if (!free_step_vars(f.lhs()).count(k)) return f;
            if (!by.mentions(x)) {
                Formula body = substitute_term(f.lhs(), k, by);
                return f.kind() == Kind::Exists ? make_exists(x, body)
                                                : make_forall(x, body);
            }
            std::set<StepVar> avoid;
            detail::all_var_names_into(f.lhs(), avoid);
            for (const auto& [v, c] : by.coeffs) {
                (void)c;
                avoid.insert(v);
            }
            avoid.insert(k);
            StepVar fresh = detail::pick_fresh(x, avoid);
            Formula renamed = substitute_term(f.lhs(), x, StepTerm::of_var(fresh));
            Formula body = substitute_term(renamed, k, by);
            return f.kind() == Kind::Exists ? make_exists(fresh, body)
                                            : make_forall(fresh, body);
        }
        case Kind::Next:
            return make_next(substitute_term(f.lhs(), k, by));
        case Kind::Not:
            return make_not(substitute_term(f.lhs(), k, by));
        case Kind::And:
            return make_and(substitute_term(f.lhs(), k, by),
                            substitute_term(f.rhs(), k, by));
        case Kind::Or:
            return make_or(substitute_term(f.lhs(), k, by),
                           substitute_term(f.rhs(), k, by));
        case Kind::Until:
            return make_until(substitute_term(f.lhs(), k, by),
                              substitute_term(f.rhs(), k, by));
        case Kind::Release:
            return make_release(substitute_term(f.lhs(), k, by),
                                substitute_term(f.rhs(), k, by));
        case Kind::Implies:
            return make_implies(substitute_term(f.lhs(), k, by),
                                substitute_term(f.rhs(), k, by));
        case Kind::Iff:
            return make_iff(substitute_term(f.lhs(), k, by),
                            substitute_term(f.rhs(), k, by));
    }
    throw std::logic_error("substitute_term: bad kind");
}

// ── Positive normal form ────────────────────────────────────────────────────
// Expands Implies/Iff and pushes negation to the atoms through the duals:
// And/Or, Until/Release, Exists/Forall; Next and X[t] are self-dual.

namespace detail {
inline Formula pnf(const Formula& f, bool positive) {
    switch (f.kind()) {
        case Kind::True:
            return positive ? make_true() : make_false();
        case Kind::False:
            return positive ? make_false() : make_true();
        case Kind::Atom:
            return positive ? f : make_neg_atom(f.prop());
        case Kind::NegAtom:
            return positive ? f : make_atom(f.prop());
        case Kind::Not:
            return pnf(f.lhs(), !positive);
        case Kind::And:
            return positive ? make_and(pnf(f.lhs(), true), pnf(f.rhs(), true))
                            : make_or(pnf(f.lhs(), false), pnf(f.rhs(), false));
        case Kind::Or:
            return positive ? make_or(pnf(f.lhs(), true), pnf(f.rhs(), true))
                            : make_and(pnf(f.lhs(), false), pnf(f.rhs(), false));
        case Kind::Next:
            return make_next(pnf(f.lhs(), positive));
        case Kind::StepNext:
            return make_step_next(f.term(), pnf(f.lhs(), positive));
        case Kind::Until:
            return positive
                       ? make_until(pnf(f.lhs(), true), pnf(f.rhs(), true))
                       : make_release(pnf(f.lhs(), false), pnf(f.rhs(), false));
        case Kind::Release:
            return positive
                       ? make_release(pnf(f.lhs(), true), pnf(f.rhs(), true))
                       : make_until(pnf(f.lhs(), false), pnf(f.rhs(), false));
        case Kind::Exists:
            return positive ? make_exists(f.var(), pnf(f.lhs(), true))
                            : make_forall(f.var(), pnf(f.lhs(), false));
        case Kind::Forall:
            return positive ? make_forall(f.var(), pnf(f.lhs(), true))
                            : make_exists(f.var(), pnf(f.lhs(), false));
        case Kind::Implies:
            // a -> b == !a | b
            return positive ? make_or(pnf(f.lhs(), false), pnf(f.rhs(), true))
                            : make_and(pnf(f.lhs(), true), pnf(f.rhs(), false));
        case Kind::Iff: {
            // a <-> b == (a & b) | (!a & !b)
            Formula ap = pnf(f.lhs(), true), an = pnf(f.lhs(), false);
            Formula bp = pnf(f.rhs(), true), bn = pnf(f.rhs(), false);
            return positive ? make_or(make_and(ap, bp), make_and(an, bn))
                            : make_and(make_or(an, bn), make_or(ap, bp));
        }
    }
    throw std::logic_error("to_pnf: bad kind");
}
}  // namespace detail

inline Formula to_pnf(const Formula& f) { return detail::pnf(f, true); }

// ── Alpha-equivalence ───────────────────────────────────────────────────────
// Structural equality modulo consistent renaming of bound variables.

namespace detail {
inline bool alpha_eq(const Formula& a, const Formula& b,
                     std::vector<std::pair<StepVar, StepVar>>& scope) {
    if (a.kind() != b.kind()) return false;
    auto resolve = [&scope](const StepVar& v, bool left) -> std::string {
        for (std::size_t i = scope.size(); i-- > 0;) {
            const auto& [l, r] = scope[i];
            if (left && l == v) return "#" + std::to_string(i);
            if (!left && r == v) return "#" + std::to_string(i);
        }
        return v;  // free variables must match by name
    };
    switch (a.kind()) {
        case Kind::True:
        case Kind::False:
            return true;
        case Kind::Atom:
        case Kind::NegAtom:
            return a.prop() == b.prop();
        case Kind::StepNext: {
            const StepTerm& ta = a.term();
            const StepTerm& tb = b.term();
            if (ta.constant != tb.constant || ta.coeffs.size() != tb.coeffs.size())
                return false;
            std::map<std::string, std::uint64_t> ra, rb;
            for (const auto& [k, c] : ta.coeffs) ra[resolve(k, true)] += c;
            for (const auto& [k, c] : tb.coeffs) rb[resolve(k, false)] += c;
            if (ra != rb) return false;
            return alpha_eq(a.lhs(), b.lhs(), scope);
        }
        case Kind::Exists:
        case Kind::Forall: {
            scope.emplace_back(a.var(), b.var());
            bool ok = alpha_eq(a.lhs(), b.lhs(), scope);
            scope.pop_back();
            return ok;
        }
        case Kind::Next:
        case Kind::Not:
            return alpha_eq(a.lhs(), b.lhs(), scope);
        default:
            return alpha_eq(a.lhs(), b.lhs(), scope) &&
                   alpha_eq(a.rhs(), b.rhs(), scope);
    }
}
}  // namespace detail

inline bool alpha_equal(const Formula& a, const Formula& b) {
    std::vector<std::pair<StepVar, StepVar>> scope;
    return detail::alpha_eq(a, b, scope);
}

}  // namespace stepltl

#endif  // STEPLTL_FORMULA_HPP
