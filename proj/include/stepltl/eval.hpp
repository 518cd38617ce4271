#ifndef STEPLTL_EVAL_HPP
#define STEPLTL_EVAL_HPP

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "stepltl/formula.hpp"
#include "stepltl/presburger.hpp"
#include "stepltl/step_term.hpp"
#include "stepltl/words.hpp"

namespace stepltl {

using Valuation = std::map<StepVar, std::uint64_t>;

// ── Exact decision on lasso words via Presburger compilation ────────────────
//
// compile() turns "w, 0, v |= f" into a closed sentence over Z.  Positions
// are integer terms; quantified step variables stay symbolic with >= 0
// guards, valuation-bound ones become constants.  Until/Release introduce
// one position quantifier each, also guarded.

// Predicate in the free variables of t: true under sigma iff the proposition
// holds at position value(t).  Prefix positions are enumerated; the loop
// contributes t >= s together with one divisibility per loop offset that
// carries the proposition.
inline PAFormula at_pos_predicate(const LassoWord& w, const std::string& prop,
                                  const PATerm& t) {
    if (!std::binary_search(w.props.begin(), w.props.end(), prop))
        throw std::invalid_argument("at_pos_predicate: unknown proposition '" + prop + "'");
    long long s = static_cast<long long>(w.prefix_len());
    long long l = static_cast<long long>(w.loop_len());
    PAFormula result = pa_false();
    for (long long i = 0; i < s; ++i)
        if (w.prefix[static_cast<std::size_t>(i)].contains(prop))
            result = pa_or(result, pa_eq(t, PATerm::constant_term(i)));
    PAFormula in_loop = pa_false();
    for (long long j = 0; j < l; ++j)
        if (w.loop[static_cast<std::size_t>(j)].contains(prop))
            in_loop = pa_or(in_loop, pa_divides(l, t - PATerm::constant_term(s + j)));
    if (in_loop.kind() != PAKind::False)
        result = pa_or(result, pa_and(pa_leq(PATerm::constant_term(s), t), in_loop));
    return result;
}

namespace detail {

struct CompileContext {
    const LassoWord* word;
    const Valuation* valuation;
    std::map<StepVar, std::string> scope;  // step var -> PA variable name
    std::set<std::string> used_names;
    std::uint64_t position_counter = 0;

    std::string fresh_position_var() {
        // '%' cannot appear in a step variable, so these never collide.
        return "%" + std::to_string(position_counter++);
    }

    std::string bind(const StepVar& k) {
        std::string name = k;
        for (std::uint64_t i = 2; used_names.count(name); ++i)
            name = k + "#" + std::to_string(i);
        used_names.insert(name);
        scope[k] = name;
        return name;
    }
};

inline PATerm term_to_pa(const StepTerm& t, const CompileContext& ctx) {
    PATerm out = PATerm::constant_term(static_cast<long long>(t.constant));
    for (const auto& [k, c] : t.coeffs) {
        auto scoped = ctx.scope.find(k);
        if (scoped != ctx.scope.end()) {
            out.add(scoped->second, static_cast<long long>(c));
            continue;
        }
        auto bound = ctx.valuation->find(k);
        if (bound == ctx.valuation->end())
            throw std::invalid_argument("compile: unbound step variable '" + k + "'");
        out.constant += static_cast<long long>(c) * static_cast<long long>(bound->second);
    }
    return out;
}

inline PAFormula compile_at(const Formula& f, const PATerm& pos, CompileContext& ctx) {
    switch (f.kind()) {
        case Kind::True:
            return pa_true();
        case Kind::False:
            return pa_false();
        case Kind::Atom:
            return at_pos_predicate(*ctx.word, f.prop(), pos);
        case Kind::NegAtom:
            return pa_not(at_pos_predicate(*ctx.word, f.prop(), pos));
        case Kind::And:
            return pa_and(compile_at(f.lhs(), pos, ctx), compile_at(f.rhs(), pos, ctx));
        case Kind::Or:
            return pa_or(compile_at(f.lhs(), pos, ctx), compile_at(f.rhs(), pos, ctx));
        case Kind::Next:
            return compile_at(f.lhs(), pos + 1, ctx);
        case Kind::StepNext:
            return compile_at(f.lhs(), pos + term_to_pa(f.term(), ctx), ctx);
        case Kind::Until: {
            // exists u >= pos. g@u and forall m in [pos, u). f@m
            std::string u = ctx.fresh_position_var();
            std::string m = ctx.fresh_position_var();
            PATerm ut = PATerm::variable(u), mt = PATerm::variable(m);
            PAFormula hold_g = compile_at(f.rhs(), ut, ctx);
            PAFormula hold_f = compile_at(f.lhs(), mt, ctx);
            PAFormula range_m = pa_and(
                pa_leq(PATerm::constant_term(0), mt),
                pa_and(pa_leq(pos, mt), pa_leq(mt + 1, ut)));
            PAFormula body = pa_and(
                pa_leq(PATerm::constant_term(0), ut),
                pa_and(pa_leq(pos, ut),
                       pa_and(hold_g, pa_forall(m, pa_implies(range_m, hold_f)))));
            return pa_exists(u, body);
        }
        case Kind::Release: {
            // forall u >= pos. g@u or exists m in [pos, u). f@m
            std::string u = ctx.fresh_position_var();
            std::string m = ctx.fresh_position_var();
            PATerm ut = PATerm::variable(u), mt = PATerm::variable(m);
            PAFormula hold_g = compile_at(f.rhs(), ut, ctx);
            PAFormula hold_f = compile_at(f.lhs(), mt, ctx);
            PAFormula range_u =
                pa_and(pa_leq(PATerm::constant_term(0), ut), pa_leq(pos, ut));
            PAFormula released = pa_exists(
                m, pa_and(pa_leq(PATerm::constant_term(0), mt),
                          pa_and(pa_leq(pos, mt),
                                 pa_and(pa_leq(mt + 1, ut), hold_f))));
            return pa_forall(u, pa_implies(range_u, pa_or(hold_g, released)));
        }
        case Kind::Exists:
        case Kind::Forall: {
            auto saved_scope = ctx.scope;
            std::string name = ctx.bind(f.var());
            PAFormula body = compile_at(f.lhs(), pos, ctx);
            ctx.scope = saved_scope;
            PAFormula guard = pa_leq(PATerm::constant_term(0), PATerm::variable(name));
            return f.kind() == Kind::Exists
                       ? pa_exists(name, pa_and(guard, body))
                       : pa_forall(name, pa_implies(guard, body));
        }
        case Kind::Not:
        case Kind::Implies:
        case Kind::Iff:
            throw std::invalid_argument("compile: formula must be in positive normal form");
    }
    throw std::logic_error("compile: bad kind");
}

}  // namespace detail

// Closed sentence equivalent to "w, 0, v |= f".
inline PAFormula compile(const Formula& f, const LassoWord& w, const Valuation& v) {
    detail::CompileContext ctx;
    ctx.word = &w;
    ctx.valuation = &v;
    return detail::compile_at(f, PATerm::constant_term(0), ctx);
}

inline bool holds_exact(const Formula& f, const LassoWord& w, const Valuation& v = {}) {
    return decide_sentence(compile(f, w, v));
}

// ── Bounded three-valued evaluation ─────────────────────────────────────────
//
// An exactly specified bounded semantics, not an approximation: step
// quantifiers range over [0, B].  Until/Release resolve exactly on lasso
// words (suffixes repeat after the prefix, so scanning one loop period past
// max(i, s) decides them); on rule-defined words they scan H positions and
// report Unknown when unresolved.  Sugared connectives are evaluated
// directly, which lets tests compare a formula against its normal form.

enum class Verdict3 : std::uint8_t { False, Unknown, True };

inline Verdict3 verdict_of(bool b) { return b ? Verdict3::True : Verdict3::False; }

inline Verdict3 not3(Verdict3 v) {
    if (v == Verdict3::True) return Verdict3::False;
    if (v == Verdict3::False) return Verdict3::True;
    return Verdict3::Unknown;
}

inline Verdict3 and3(Verdict3 a, Verdict3 b) {
    if (a == Verdict3::False || b == Verdict3::False) return Verdict3::False;
    if (a == Verdict3::True && b == Verdict3::True) return Verdict3::True;
    return Verdict3::Unknown;
}

inline Verdict3 or3(Verdict3 a, Verdict3 b) {
    if (a == Verdict3::True || b == Verdict3::True) return Verdict3::True;
    if (a == Verdict3::False && b == Verdict3::False) return Verdict3::False;
    return Verdict3::Unknown;
}

struct Bounds {
    std::uint64_t quantifier_bound = 0;  // B: quantifiers range over [0, B]
    std::uint64_t horizon = 1;           // H: positions scanned per Until/Release
};

namespace detail {

struct EvalWordView {
    const std::vector<std::string>* props;
    std::function<Letter(std::uint64_t)> at;
    std::optional<std::pair<std::uint64_t, std::uint64_t>> lasso;  // (s, l)
};

struct EvalMemoKey {
    const void* node;
    std::uint64_t position;
    std::vector<std::uint64_t> env_values;

    bool operator==(const EvalMemoKey& o) const {
        return node == o.node && position == o.position && env_values == o.env_values;
    }
};

struct EvalMemoKeyHash {
    std::size_t operator()(const EvalMemoKey& k) const {
        std::size_t h = std::hash<const void*>()(k.node);
        h ^= std::hash<std::uint64_t>()(k.position) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
        for (std::uint64_t v : k.env_values)
            h ^= std::hash<std::uint64_t>()(v) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
        return h;
    }
};

struct BoundedEval {
    EvalWordView word;
    Bounds bounds;
    Valuation env;
    std::unordered_map<const void*, std::vector<StepVar>> free_vars_cache;
    std::unordered_map<EvalMemoKey, Verdict3, EvalMemoKeyHash> memo;

    const std::vector<StepVar>& free_vars_of(const Formula& f) {
        auto it = free_vars_cache.find(f.id());
        if (it != free_vars_cache.end()) return it->second;
        std::set<StepVar> fv = free_step_vars(f);
        return free_vars_cache.emplace(f.id(), std::vector<StepVar>(fv.begin(), fv.end()))
            .first->second;
    }

    std::uint64_t term_value(const StepTerm& t) const {
        std::uint64_t v = t.constant;
        for (const auto& [k, c] : t.coeffs) {
            auto it = env.find(k);
            if (it == env.end())
                throw std::invalid_argument("eval: unbound step variable '" + k + "'");
            v += c * it->second;
        }
        return v;
    }

    bool holds_atom(const std::string& prop, std::uint64_t i) const {
        return word.at(i).contains(prop);
    }

    Verdict3 eval(const Formula& f, std::uint64_t i) {
        const auto& fv = free_vars_of(f);
        EvalMemoKey key{f.id(), i, {}};
        key.env_values.reserve(fv.size());
        for (const auto& k : fv) {
            auto it = env.find(k);
            if (it == env.end())
                throw std::invalid_argument("eval: unbound step variable '" + k + "'");
            key.env_values.push_back(it->second);
        }
        auto hit = memo.find(key);
        if (hit != memo.end()) return hit->second;
        Verdict3 v = eval_uncached(f, i);
        memo.emplace(std::move(key), v);
        return v;
    }

    Verdict3 eval_uncached(const Formula& f, std::uint64_t i) {
        switch (f.kind()) {
            case Kind::True:
                return Verdict3::True;
            case Kind::False:
                return Verdict3::False;
            case Kind::Atom:
                return verdict_of(holds_atom(f.prop(), i));
            case Kind::NegAtom:
                return verdict_of(!holds_atom(f.prop(), i));
            case Kind::Not:
                return not3(eval(f.lhs(), i));
            case Kind::And: {
                Verdict3 a = eval(f.lhs(), i);
                if (a == Verdict3::False) return Verdict3::False;
                return and3(a, eval(f.rhs(), i));
            }
            case Kind::Or: {
                Verdict3 a = eval(f.lhs(), i);
                if (a == Verdict3::True) return Verdict3::True;
                return or3(a, eval(f.rhs(), i));
            }
            case Kind::Implies: {
                Verdict3 a = eval(f.lhs(), i);
                if (a == Verdict3::False) return Verdict3::True;
                return or3(not3(a), eval(f.rhs(), i));
            }
            case Kind::Iff: {
                Verdict3 a = eval(f.lhs(), i);
                Verdict3 b = eval(f.rhs(), i);
                if (a == Verdict3::Unknown || b == Verdict3::Unknown)
                    return Verdict3::Unknown;
                return verdict_of(a == b);
            }
            case Kind::Next:
                return eval(f.lhs(), i + 1);
            case Kind::StepNext:
                return eval(f.lhs(), i + term_value(f.term()));
            case Kind::Until:
            case Kind::Release: {
                std::uint64_t end;
                Verdict3 tail;
                if (word.lasso) {
                    auto [s, l] = *word.lasso;
                    end = std::max(i, s) + l;
                    tail = f.kind() == Kind::Until ? Verdict3::False : Verdict3::True;
                } else {
                    end = i + bounds.horizon;
                    tail = Verdict3::Unknown;
                }
                Verdict3 acc = tail;
                for (std::uint64_t u = end; u-- > i;) {
                    if (f.kind() == Kind::Until)
                        acc = or3(eval(f.rhs(), u), and3(eval(f.lhs(), u), acc));
                    else
                        acc = and3(eval(f.rhs(), u), or3(eval(f.lhs(), u), acc));
                }
                return acc;
            }
            case Kind::Exists:
            case Kind::Forall: {
                const StepVar& k = f.var();
                std::optional<std::uint64_t> saved;
                auto it = env.find(k);
                if (it != env.end()) saved = it->second;
                Verdict3 acc =
                    f.kind() == Kind::Exists ? Verdict3::False : Verdict3::True;
                for (std::uint64_t n = 0; n <= bounds.quantifier_bound; ++n) {
                    env[k] = n;
                    Verdict3 v = eval(f.lhs(), i);
                    if (f.kind() == Kind::Exists) {
                        acc = or3(acc, v);
                        if (acc == Verdict3::True) break;
                    } else {
                        acc = and3(acc, v);
                        if (acc == Verdict3::False) break;
                    }
                }
                if (saved)
                    env[k] = *saved;
                else
                    env.erase(k);
                return acc;
            }
        }
        throw std::logic_error("eval: bad kind");
    }
};

}  // namespace detail

inline Verdict3 eval_bounded(const Formula& f, const LassoWord& w, std::uint64_t i,
                             const Valuation& v, const Bounds& bounds) {
    detail::BoundedEval ev;
    ev.word.props = &w.props;
    ev.word.at = [&w](std::uint64_t pos) { return w.letter_at(pos); };
    ev.word.lasso = std::make_pair(w.prefix_len(), w.loop_len());
    ev.bounds = bounds;
    ev.env = v;
    return ev.eval(f, i);
}

inline Verdict3 eval_bounded(const Formula& f, const ComputableWord& w, std::uint64_t i,
                             const Valuation& v, const Bounds& bounds) {
    detail::BoundedEval ev;
    ev.word.props = &w.props;
    ev.word.at = w.rule;
    ev.bounds = bounds;
    ev.env = v;
    return ev.eval(f, i);
}

}  // namespace stepltl

#endif  // STEPLTL_EVAL_HPP
