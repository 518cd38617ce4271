#ifndef STEPLTL_PEANO_HPP
#define STEPLTL_PEANO_HPP

#include <cstdint>
#include <memory>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "stepltl/errors.hpp"
#include "stepltl/formula.hpp"
#include "stepltl/formula_text.hpp"
#include "stepltl/step_term.hpp"

namespace stepltl {

// ── First-order arithmetic, and its reduction to step-LTL ───────────────────
//
// The translation maps every arithmetic formula to a formula of the core
// fragment (no Until/Release) with the same satisfiability, through the
// predicate templates L_p, L_=, L_<, L_+, L_q, L_sq and L_x:
//
//   * over a word whose p is "non-shifting" (no two suffixes agree on p
//     everywhere), positions are identified by the p-pattern of their
//     suffix, so step variables with equal values are interchangeable;
//   * a second proposition q marking exactly the perfect squares turns
//     squaring, and through it multiplication, into addition.
//
// Nested arithmetic terms are first flattened to three-address relational
// atoms over fresh variables, then each relation instantiates a template.

// ── Peano AST ───────────────────────────────────────────────────────────────

enum class PeanoTermKind : std::uint8_t { Var, Const, Plus, Times };

class PeanoTerm;

namespace detail {
struct PeanoTermNode {
    PeanoTermKind kind;
    std::string name;
    std::uint64_t value = 0;
    std::shared_ptr<const PeanoTermNode> lhs, rhs;
};
}  // namespace detail

class PeanoTerm {
public:
    PeanoTerm() = default;
    bool valid() const { return node_ != nullptr; }
    PeanoTermKind kind() const { return node()->kind; }
    const std::string& name() const { return node()->name; }
    std::uint64_t value() const { return node()->value; }
    PeanoTerm lhs() const { return PeanoTerm(node()->lhs); }
    PeanoTerm rhs() const { return PeanoTerm(node()->rhs); }

    static PeanoTerm make(PeanoTermKind kind, std::string name, std::uint64_t value,
                          PeanoTerm lhs, PeanoTerm rhs) {
        auto n = std::make_shared<detail::PeanoTermNode>();
        n->kind = kind;
        n->name = std::move(name);
        n->value = value;
        n->lhs = lhs.node_;
        n->rhs = rhs.node_;
        return PeanoTerm(std::move(n));
    }

private:
    explicit PeanoTerm(std::shared_ptr<const detail::PeanoTermNode> n)
        : node_(std::move(n)) {}
    const detail::PeanoTermNode* node() const {
        if (!node_) throw std::logic_error("access to empty Peano term");
        return node_.get();
    }
    std::shared_ptr<const detail::PeanoTermNode> node_;
};

inline PeanoTerm peano_var(std::string name) {
    return PeanoTerm::make(PeanoTermKind::Var, std::move(name), 0, {}, {});
}
inline PeanoTerm peano_const(std::uint64_t n) {
    return PeanoTerm::make(PeanoTermKind::Const, {}, n, {}, {});
}
inline PeanoTerm peano_plus(PeanoTerm a, PeanoTerm b) {
    return PeanoTerm::make(PeanoTermKind::Plus, {}, 0, std::move(a), std::move(b));
}
inline PeanoTerm peano_times(PeanoTerm a, PeanoTerm b) {
    return PeanoTerm::make(PeanoTermKind::Times, {}, 0, std::move(a), std::move(b));
}

// Three-address relational atom; the flattened form consists of these only.
struct PrimitiveAtom {
    enum class Op : std::uint8_t { EqV, LtV, PlusV, TimesV, ConstV };
    Op op;
    std::string a, b, c;  // PlusV/TimesV use all three: a (op) b = c
    std::uint64_t n = 0;  // ConstV: a = n

    bool operator==(const PrimitiveAtom& o) const {
        return op == o.op && a == o.a && b == o.b && c == o.c && n == o.n;
    }
};

enum class PeanoKind : std::uint8_t {
    Eq,    // t1 = t2
    Lt,    // t1 < t2
    Prim,  // flattened relational atom
    Not,
    And,
    Or,
    Implies,
    Iff,
    Exists,
    Forall,
};

class PeanoFormula;

namespace detail {
struct PeanoNode {
    PeanoKind kind;
    PeanoTerm t1, t2;
    PrimitiveAtom prim{};
    std::string var;
    std::shared_ptr<const PeanoNode> lhs, rhs;
};
}  // namespace detail

class PeanoFormula {
public:
    PeanoFormula() = default;
    bool valid() const { return node_ != nullptr; }
    PeanoKind kind() const { return node()->kind; }
    const PeanoTerm& t1() const { return node()->t1; }
    const PeanoTerm& t2() const { return node()->t2; }
    const PrimitiveAtom& prim() const { return node()->prim; }
    const std::string& var() const { return node()->var; }
    PeanoFormula lhs() const { return PeanoFormula(node()->lhs); }
    PeanoFormula rhs() const { return PeanoFormula(node()->rhs); }

    static PeanoFormula make(PeanoKind kind, PeanoTerm t1, PeanoTerm t2,
                             PrimitiveAtom prim, std::string var, PeanoFormula lhs,
                             PeanoFormula rhs) {
        auto n = std::make_shared<detail::PeanoNode>();
        n->kind = kind;
        n->t1 = std::move(t1);
        n->t2 = std::move(t2);
        n->prim = std::move(prim);
        n->var = std::move(var);
        n->lhs = lhs.node_;
        n->rhs = rhs.node_;
        return PeanoFormula(std::move(n));
    }

private:
    explicit PeanoFormula(std::shared_ptr<const detail::PeanoNode> n)
        : node_(std::move(n)) {}
    const detail::PeanoNode* node() const {
        if (!node_) throw std::logic_error("access to empty Peano formula");
        return node_.get();
    }
    std::shared_ptr<const detail::PeanoNode> node_;
};

inline PeanoFormula peano_eq(PeanoTerm a, PeanoTerm b) {
    return PeanoFormula::make(PeanoKind::Eq, std::move(a), std::move(b), {}, {}, {}, {});
}
inline PeanoFormula peano_lt(PeanoTerm a, PeanoTerm b) {
    return PeanoFormula::make(PeanoKind::Lt, std::move(a), std::move(b), {}, {}, {}, {});
}
inline PeanoFormula peano_prim(PrimitiveAtom atom) {
    return PeanoFormula::make(PeanoKind::Prim, {}, {}, std::move(atom), {}, {}, {});
}
inline PeanoFormula peano_not(PeanoFormula f) {
    return PeanoFormula::make(PeanoKind::Not, {}, {}, {}, {}, std::move(f), {});
}
inline PeanoFormula peano_and(PeanoFormula a, PeanoFormula b) {
    return PeanoFormula::make(PeanoKind::And, {}, {}, {}, {}, std::move(a), std::move(b));
}
inline PeanoFormula peano_or(PeanoFormula a, PeanoFormula b) {
    return PeanoFormula::make(PeanoKind::Or, {}, {}, {}, {}, std::move(a), std::move(b));
}
inline PeanoFormula peano_implies(PeanoFormula a, PeanoFormula b) {
    return PeanoFormula::make(PeanoKind::Implies, {}, {}, {}, {}, std::move(a),
                              std::move(b));
}
inline PeanoFormula peano_iff(PeanoFormula a, PeanoFormula b) {
    return PeanoFormula::make(PeanoKind::Iff, {}, {}, {}, {}, std::move(a), std::move(b));
}
inline PeanoFormula peano_exists(std::string var, PeanoFormula f) {
    return PeanoFormula::make(PeanoKind::Exists, {}, {}, {}, std::move(var),
                              std::move(f), {});
}
inline PeanoFormula peano_forall(std::string var, PeanoFormula f) {
    return PeanoFormula::make(PeanoKind::Forall, {}, {}, {}, std::move(var),
                              std::move(f), {});
}

// ── Parser ──────────────────────────────────────────────────────────────────
//   term := NAT | IDENT | term "+" term | term "*" term   ("*" binds tighter)
//   atom := term "=" term | term "<" term
//   connectives ! & | -> <-> as in the temporal grammar; parentheses allowed;
//   quantifiers "exists IDENT." / "forall IDENT." extend maximally right.

namespace detail {

class PeanoParser {
public:
    explicit PeanoParser(std::string_view text) : lx_(text) {}

    PeanoFormula parse() {
        PeanoFormula f = parse_iff();
        if (!lx_.at_end()) lx_.fail("trailing input");
        return f;
    }

private:
    FormulaLexer lx_;

    static bool reserved(const std::string& w) {
        return w == "exists" || w == "forall";
    }

    PeanoFormula parse_iff() {
        PeanoFormula lhs = parse_implies();
        if (lx_.try_symbol("<->")) return peano_iff(lhs, parse_iff());
        return lhs;
    }

    PeanoFormula parse_implies() {
        PeanoFormula lhs = parse_or();
        if (lx_.try_symbol("->")) return peano_implies(lhs, parse_implies());
        return lhs;
    }

    PeanoFormula parse_or() {
        PeanoFormula lhs = parse_and();
        if (lx_.peek() == '|') {
            lx_.expect_symbol("|");
            return peano_or(lhs, parse_or());
        }
        return lhs;
    }

    PeanoFormula parse_and() {
        PeanoFormula lhs = parse_unary();
        if (lx_.peek() == '&') {
            lx_.expect_symbol("&");
            return peano_and(lhs, parse_and());
        }
        return lhs;
    }

    PeanoFormula parse_unary() {
        if (lx_.peek() == '!') {
            lx_.expect_symbol("!");
            return peano_not(parse_unary());
        }
        std::string w = lx_.peek_word();
        if (w == "exists" || w == "forall") {
            lx_.take_word();
            std::string var = lx_.take_word();
            if (reserved(var)) lx_.fail("reserved word used as variable");
            lx_.expect_symbol(".");
            PeanoFormula body = parse_iff();
            return w == "exists" ? peano_exists(var, body) : peano_forall(var, body);
        }
        return parse_atom_or_parens();
    }

    PeanoFormula parse_atom_or_parens() {
        if (lx_.peek() == '(') {
            // '(' opens either a parenthesised formula or a parenthesised
            // term inside a comparison.  Terms contain no comparison or
            // connective characters, so one scan of the group decides.
            if (group_is_term()) return parse_atom();
            lx_.expect_symbol("(");
            PeanoFormula f = parse_iff();
            lx_.expect_symbol(")");
            return f;
        }
        return parse_atom();
    }

    bool group_is_term() {
        std::string_view rest = lx_.remaining();  // cursor sits on '('
        int depth = 0;
        for (char c : rest) {
            if (c == '(') {
                ++depth;
            } else if (c == ')') {
                if (--depth == 0) break;
            } else if (depth >= 1) {
                switch (c) {
                    case '=':
                    case '<':
                    case '>':
                    case '&':
                    case '|':
                    case '!':
                    case '-':
                    case '.':
                        return false;
                    default:
                        break;
                }
            }
        }
        return true;
    }

    PeanoFormula parse_atom() {
        PeanoTerm t1 = parse_term();
        if (lx_.try_symbol("=")) return peano_eq(t1, parse_term());
        if (lx_.try_symbol("<")) return peano_lt(t1, parse_term());
        lx_.fail("expected '=' or '<'");
    }

    PeanoTerm parse_term() {
        PeanoTerm t = parse_factor();
        while (lx_.peek() == '+') {
            lx_.expect_symbol("+");
            t = peano_plus(t, parse_factor());
        }
        return t;
    }

    PeanoTerm parse_factor() {
        PeanoTerm t = parse_term_primary();
        while (true) {
            // '*' must not swallow "->"... '*' is unambiguous.
            if (lx_.peek() == '*') {
                lx_.expect_symbol("*");
                t = peano_times(t, parse_term_primary());
            } else {
                return t;
            }
        }
    }

    PeanoTerm parse_term_primary() {
        if (lx_.peek() == '(') {
            lx_.expect_symbol("(");
            PeanoTerm t = parse_term();
            lx_.expect_symbol(")");
            return t;
        }
        if (lx_.peek_nat()) return peano_const(lx_.take_nat());
        std::string w = lx_.peek_word();
        if (w.empty() || reserved(w)) lx_.fail("expected term");
        lx_.take_word();
        return peano_var(w);
    }
};

}  // namespace detail

inline PeanoFormula parse_peano(std::string_view text) {
    return detail::PeanoParser(text).parse();
}

// ── Fresh names ─────────────────────────────────────────────────────────────
// Deterministic _g0, _g1, ... from a caller-owned counter; names already
// used by the source formula are skipped so captures cannot occur.

struct FreshSource {
    std::uint64_t counter = 0;
    std::set<std::string> avoid;

    StepVar fresh() {
        while (true) {
            StepVar name = "_g" + std::to_string(counter++);
            if (!avoid.count(name)) return name;
        }
    }
};

namespace detail {
inline void peano_term_vars(const PeanoTerm& t, std::set<std::string>& out) {
    switch (t.kind()) {
        case PeanoTermKind::Var:
            out.insert(t.name());
            return;
        case PeanoTermKind::Const:
            return;
        default:
            peano_term_vars(t.lhs(), out);
            peano_term_vars(t.rhs(), out);
            return;
    }
}

inline void peano_var_names(const PeanoFormula& f, std::set<std::string>& out) {
    switch (f.kind()) {
        case PeanoKind::Eq:
        case PeanoKind::Lt:
            peano_term_vars(f.t1(), out);
            peano_term_vars(f.t2(), out);
            return;
        case PeanoKind::Prim: {
            const auto& p = f.prim();
            if (!p.a.empty()) out.insert(p.a);
            if (!p.b.empty()) out.insert(p.b);
            if (!p.c.empty()) out.insert(p.c);
            return;
        }
        case PeanoKind::Not:
            peano_var_names(f.lhs(), out);
            return;
        case PeanoKind::Exists:
        case PeanoKind::Forall:
            out.insert(f.var());
            peano_var_names(f.lhs(), out);
            return;
        default:
            peano_var_names(f.lhs(), out);
            peano_var_names(f.rhs(), out);
            return;
    }
}
}  // namespace detail

// ── Flattening ──────────────────────────────────────────────────────────────
// Rewrites Eq/Lt over nested terms into boolean structure over
// PrimitiveAtoms.  Composite terms become fresh variables constrained by
// PlusV/TimesV/ConstV chains; under positive polarity the chain is
// existentially quantified next to the atom, under negative polarity the
// dual "forall chain ->" form keeps the introductions positive once the
// surrounding negation is pushed in.

namespace detail {

inline std::string flatten_term(const PeanoTerm& t, std::vector<PrimitiveAtom>& chain,
                                FreshSource& fresh) {
    switch (t.kind()) {
        case PeanoTermKind::Var:
            return t.name();
        case PeanoTermKind::Const: {
            std::string g = fresh.fresh();
            chain.push_back({PrimitiveAtom::Op::ConstV, g, {}, {}, t.value()});
            return g;
        }
        case PeanoTermKind::Plus: {
            std::string a = flatten_term(t.lhs(), chain, fresh);
            std::string b = flatten_term(t.rhs(), chain, fresh);
            std::string g = fresh.fresh();
            chain.push_back({PrimitiveAtom::Op::PlusV, a, b, g, 0});
            return g;
        }
        case PeanoTermKind::Times: {
            std::string a = flatten_term(t.lhs(), chain, fresh);
            std::string b = flatten_term(t.rhs(), chain, fresh);
            std::string g = fresh.fresh();
            chain.push_back({PrimitiveAtom::Op::TimesV, a, b, g, 0});
            return g;
        }
    }
    throw std::logic_error("flatten_term: bad kind");
}

inline PeanoFormula flatten_atom(PeanoKind kind, const PeanoTerm& t1,
                                 const PeanoTerm& t2, bool positive,
                                 FreshSource& fresh) {
    std::vector<PrimitiveAtom> chain;
    std::string a = flatten_term(t1, chain, fresh);
    std::string b = flatten_term(t2, chain, fresh);
    PrimitiveAtom rel{kind == PeanoKind::Eq ? PrimitiveAtom::Op::EqV
                                            : PrimitiveAtom::Op::LtV,
                      a, b, {}, 0};
    PeanoFormula atom = peano_prim(rel);
    if (chain.empty()) return atom;

    std::vector<std::string> introduced;
    for (const auto& link : chain) {
        const std::string& g =
            link.op == PrimitiveAtom::Op::PlusV || link.op == PrimitiveAtom::Op::TimesV
                ? link.c
                : link.a;
        introduced.push_back(g);
    }

    PeanoFormula chain_formula = peano_prim(chain.back());
    for (std::size_t i = chain.size() - 1; i-- > 0;)
        chain_formula = peano_and(peano_prim(chain[i]), chain_formula);

    if (positive) {
        PeanoFormula body = peano_and(chain_formula, atom);
        for (std::size_t i = introduced.size(); i-- > 0;)
            body = peano_exists(introduced[i], body);
        return body;
    }
    PeanoFormula body = peano_implies(chain_formula, atom);
    for (std::size_t i = introduced.size(); i-- > 0;)
        body = peano_forall(introduced[i], body);
    return body;
}

inline PeanoFormula flatten_rec(const PeanoFormula& f, bool positive,
                                FreshSource& fresh) {
    switch (f.kind()) {
        case PeanoKind::Eq:
        case PeanoKind::Lt:
            return flatten_atom(f.kind(), f.t1(), f.t2(), positive, fresh);
        case PeanoKind::Prim:
            return f;
        case PeanoKind::Not:
            return peano_not(flatten_rec(f.lhs(), !positive, fresh));
        case PeanoKind::And:
            return peano_and(flatten_rec(f.lhs(), positive, fresh),
                             flatten_rec(f.rhs(), positive, fresh));
        case PeanoKind::Or:
            return peano_or(flatten_rec(f.lhs(), positive, fresh),
                            flatten_rec(f.rhs(), positive, fresh));
        case PeanoKind::Implies:
            return peano_implies(flatten_rec(f.lhs(), !positive, fresh),
                                 flatten_rec(f.rhs(), positive, fresh));
        case PeanoKind::Iff:
            // both sides occur in both polarities; expand first
            return flatten_rec(peano_and(peano_implies(f.lhs(), f.rhs()),
                                         peano_implies(f.rhs(), f.lhs())),
                               positive, fresh);
        case PeanoKind::Exists:
            return peano_exists(f.var(), flatten_rec(f.lhs(), positive, fresh));
        case PeanoKind::Forall:
            return peano_forall(f.var(), flatten_rec(f.lhs(), positive, fresh));
    }
    throw std::logic_error("flatten: bad kind");
}

}  // namespace detail

inline PeanoFormula flatten(const PeanoFormula& f, FreshSource& fresh) {
    std::set<std::string> used;
    detail::peano_var_names(f, used);
    fresh.avoid.insert(used.begin(), used.end());
    return detail::flatten_rec(f, true, fresh);
}

// ── Predicate templates ─────────────────────────────────────────────────────

enum class PredicateKind { Lp, Leq, Llt, Lplus, Lq, Lsq, Ltimes };

namespace detail {

inline Formula x_at(const StepTerm& t, Formula f) {
    return make_step_next(t, std::move(f));
}

// L_p: no two distinct suffixes agree on p everywhere.
inline Formula build_lp(FreshSource& fresh) {
    StepVar k1 = fresh.fresh(), k2 = fresh.fresh(), k3 = fresh.fresh();
    StepTerm left = StepTerm::of_var(k1) + StepTerm::of_var(k3);
    StepTerm right = StepTerm::of_var(k1) + StepTerm::of_var(k2) + StepTerm::of_var(k3) + 1;
    Formula body = make_iff(x_at(left, make_atom("p")), x_at(right, make_atom("p")));
    return make_forall(k1, make_forall(k2, make_not(make_forall(k3, body))));
}

// L_=(a, b): positions a and b have identical p-suffixes (hence equal values
// on a non-shifting word).
inline Formula build_leq(const StepTerm& a, const StepTerm& b, FreshSource& fresh,
                         bool embed_lp) {
    Formula lp = embed_lp ? build_lp(fresh) : Formula();
    StepVar k = fresh.fresh();
    Formula same = make_forall(
        k, make_iff(x_at(a + StepTerm::of_var(k), make_atom("p")),
                    x_at(b + StepTerm::of_var(k), make_atom("p"))));
    return embed_lp ? make_and(lp, same) : same;
}

// L_<(a, b) = exists k. L_=(a + k + 1, b)
inline Formula build_llt(const StepTerm& a, const StepTerm& b, FreshSource& fresh,
                         bool embed_lp) {
    StepVar k = fresh.fresh();
    return make_exists(k, build_leq(a + StepTerm::of_var(k) + 1, b, fresh, embed_lp));
}

// L_+(a, b, c) = L_=(a + b, c)
inline Formula build_lplus(const StepTerm& a, const StepTerm& b, const StepTerm& c,
                           FreshSource& fresh, bool embed_lp) {
    return build_leq(a + b, c, fresh, embed_lp);
}

// L_q: q holds at 0 and 1, infinitely often, and the gaps between adjacent
// q-positions grow by exactly 2 -- so q marks the perfect squares.
inline Formula build_lq(FreshSource& fresh, bool embed_lp) {
    Formula q = make_atom("q");
    StepVar i1 = fresh.fresh(), i2 = fresh.fresh();
    Formula infinitely_often = make_forall(
        i1, make_exists(i2, x_at(StepTerm::of_var(i1) + StepTerm::of_var(i2), q)));

    StepVar k1 = fresh.fresh(), k2 = fresh.fresh(), k3 = fresh.fresh();
    StepTerm t1 = StepTerm::of_var(k1), t2 = StepTerm::of_var(k2), t3 = StepTerm::of_var(k3);

    std::vector<Formula> antecedent;
    antecedent.push_back(x_at(t1, q));
    antecedent.push_back(x_at(t2, q));
    antecedent.push_back(x_at(t3, q));
    antecedent.push_back(build_llt(t1, t2, fresh, embed_lp));
    antecedent.push_back(build_llt(t2, t3, fresh, embed_lp));
    StepVar k4 = fresh.fresh();
    StepTerm t4 = StepTerm::of_var(k4);
    // sequenced explicitly: fresh-name order must not depend on argument
    // evaluation order
    Formula lt_14 = build_llt(t1, t4, fresh, embed_lp);
    Formula lt_42 = build_llt(t4, t2, fresh, embed_lp);
    Formula lt_24 = build_llt(t2, t4, fresh, embed_lp);
    Formula lt_43 = build_llt(t4, t3, fresh, embed_lp);
    Formula between = make_or(make_and(lt_14, lt_42), make_and(lt_24, lt_43));
    antecedent.push_back(
        make_forall(k4, make_implies(between, make_not(x_at(t4, q)))));

    StepVar k5 = fresh.fresh(), k6 = fresh.fresh();
    StepTerm t5 = StepTerm::of_var(k5), t6 = StepTerm::of_var(k6);
    Formula consequent = make_exists(
        k5, make_exists(k6, and_all({build_lplus(t5, t1, t2, fresh, embed_lp),
                                     build_lplus(t6, t2, t3, fresh, embed_lp),
                                     build_lplus(StepTerm::of_constant(2), t5, t6,
                                                 fresh, embed_lp)})));

    Formula growth = make_forall(
        k1, make_forall(k2, make_forall(k3, make_implies(and_all(antecedent),
                                                         consequent))));
    return and_all({q, make_next(q), infinitely_often, growth});
}

// L_sq(a, b): b and b + 2a + 1 are adjacent q-positions, so b = a^2.
inline Formula build_lsq(const StepTerm& a, const StepTerm& b, FreshSource& fresh,
                         bool embed_lp, bool embed_lq) {
    std::vector<Formula> parts;
    if (embed_lq) parts.push_back(build_lq(fresh, embed_lp));
    StepTerm succ = b + a.scaled(2) + 1;
    parts.push_back(x_at(b, make_atom("q")));
    parts.push_back(x_at(succ, make_atom("q")));
    StepVar k3 = fresh.fresh();
    StepTerm t3 = StepTerm::of_var(k3);
    Formula gap = make_exists(
        k3, and_all({build_llt(b, t3, fresh, embed_lp),
                     build_llt(t3, a.scaled(2) + b + 1, fresh, embed_lp),
                     x_at(t3, make_atom("q"))}));
    parts.push_back(make_not(gap));
    return and_all(parts);
}

// L_x(a, b, c): via squares, c = a*b  <=>  a^2 + b^2 + 2c = (a+b)^2.
inline Formula build_ltimes(const StepTerm& a, const StepTerm& b, const StepTerm& c,
                            FreshSource& fresh, bool embed_lp, bool embed_lq) {
    StepVar k4 = fresh.fresh(), k5 = fresh.fresh(), k6 = fresh.fresh();
    StepTerm t4 = StepTerm::of_var(k4), t5 = StepTerm::of_var(k5), t6 = StepTerm::of_var(k6);
    Formula body = and_all(
        {build_lsq(a, t4, fresh, embed_lp, embed_lq),
         build_lsq(b, t5, fresh, embed_lp, embed_lq),
         build_lsq(a + b, t6, fresh, embed_lp, embed_lq),
         build_leq(t4 + t5 + c.scaled(2), t6, fresh, embed_lp)});
    return make_exists(k4, make_exists(k5, make_exists(k6, body)));
}

}  // namespace detail

inline Formula build_predicate(PredicateKind which, const std::vector<StepTerm>& args,
                               FreshSource& fresh) {
    auto expect_arity = [&](std::size_t n) {
        if (args.size() != n)
            throw std::invalid_argument("build_predicate: arity mismatch");
    };
    switch (which) {
        case PredicateKind::Lp:
            expect_arity(0);
            return detail::build_lp(fresh);
        case PredicateKind::Leq:
            expect_arity(2);
            return detail::build_leq(args[0], args[1], fresh, true);
        case PredicateKind::Llt:
            expect_arity(2);
            return detail::build_llt(args[0], args[1], fresh, true);
        case PredicateKind::Lplus:
            expect_arity(3);
            return detail::build_lplus(args[0], args[1], args[2], fresh, true);
        case PredicateKind::Lq:
            expect_arity(0);
            return detail::build_lq(fresh, true);
        case PredicateKind::Lsq:
            expect_arity(2);
            return detail::build_lsq(args[0], args[1], fresh, true, true);
        case PredicateKind::Ltimes:
            expect_arity(3);
            return detail::build_ltimes(args[0], args[1], args[2], fresh, true, true);
    }
    throw std::logic_error("build_predicate: bad kind");
}

// ── Translation ─────────────────────────────────────────────────────────────
// Peano variables become step variables, quantifiers become step
// quantifiers, relational atoms instantiate the templates, and the result
// is normalised.  With hoist=true the per-atom copies of L_p/L_q are
// replaced by a single top-level conjunct each (the default keeps the
// verbatim per-atom embedding).

namespace detail {

struct TranslateState {
    FreshSource* fresh;
    bool hoist;
    bool used_lp = false;
    bool used_lq = false;
};

inline Formula translate_rec(const PeanoFormula& f, TranslateState& st) {
    switch (f.kind()) {
        case PeanoKind::Prim: {
            const PrimitiveAtom& p = f.prim();
            bool embed = !st.hoist;
            switch (p.op) {
                case PrimitiveAtom::Op::EqV:
                    st.used_lp = true;
                    return build_leq(StepTerm::of_var(p.a), StepTerm::of_var(p.b),
                                     *st.fresh, embed);
                case PrimitiveAtom::Op::LtV:
                    st.used_lp = true;
                    return build_llt(StepTerm::of_var(p.a), StepTerm::of_var(p.b),
                                     *st.fresh, embed);
                case PrimitiveAtom::Op::PlusV:
                    st.used_lp = true;
                    return build_lplus(StepTerm::of_var(p.a), StepTerm::of_var(p.b),
                                       StepTerm::of_var(p.c), *st.fresh, embed);
                case PrimitiveAtom::Op::TimesV:
                    st.used_lp = true;
                    st.used_lq = true;
                    return build_ltimes(StepTerm::of_var(p.a), StepTerm::of_var(p.b),
                                        StepTerm::of_var(p.c), *st.fresh, embed, embed);
                case PrimitiveAtom::Op::ConstV:
                    st.used_lp = true;
                    return build_leq(StepTerm::of_var(p.a), StepTerm::of_constant(p.n),
                                     *st.fresh, embed);
            }
            throw std::logic_error("translate: bad primitive");
        }
        case PeanoKind::Not:
            return make_not(translate_rec(f.lhs(), st));
        case PeanoKind::And:
            return make_and(translate_rec(f.lhs(), st), translate_rec(f.rhs(), st));
        case PeanoKind::Or:
            return make_or(translate_rec(f.lhs(), st), translate_rec(f.rhs(), st));
        case PeanoKind::Implies:
            return make_implies(translate_rec(f.lhs(), st), translate_rec(f.rhs(), st));
        case PeanoKind::Iff:
            return make_iff(translate_rec(f.lhs(), st), translate_rec(f.rhs(), st));
        case PeanoKind::Exists:
            return make_exists(f.var(), translate_rec(f.lhs(), st));
        case PeanoKind::Forall:
            return make_forall(f.var(), translate_rec(f.lhs(), st));
        case PeanoKind::Eq:
        case PeanoKind::Lt:
            throw std::invalid_argument("translate: formula must be flattened first");
    }
    throw std::logic_error("translate: bad kind");
}

}  // namespace detail

inline Formula translate(const PeanoFormula& f, bool hoist = false) {
    FreshSource fresh;
    PeanoFormula flat = flatten(f, fresh);
    detail::TranslateState st{&fresh, hoist, false, false};
    Formula body = detail::translate_rec(flat, st);
    if (hoist) {
        std::vector<Formula> parts;
        if (st.used_lp) parts.push_back(detail::build_lp(fresh));
        if (st.used_lq) parts.push_back(detail::build_lq(fresh, false));
        parts.push_back(body);
        body = and_all(parts);
    }
    return to_pnf(body);
}

}  // namespace stepltl

#endif  // STEPLTL_PEANO_HPP
