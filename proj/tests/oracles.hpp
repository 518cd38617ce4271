// Test-only reference implementations, written independently of the library
// code paths they cross-check.
#ifndef STEPLTL_TESTS_ORACLES_HPP
#define STEPLTL_TESTS_ORACLES_HPP

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <vector>

#include "stepltl/buechi.hpp"
#include "stepltl/eval.hpp"
#include "stepltl/formula.hpp"
#include "stepltl/words.hpp"

namespace oracles {

// ── Classical LTL on lasso words, by fixpoint iteration ─────────────────────
// Works on the quantifier-free, X[t]-free fragment in PNF.  Every position
// of the word is one of s + l classes; Until is the least and Release the
// greatest fixpoint of the usual unfoldings over the class graph.

class LassoLtl {
public:
    explicit LassoLtl(const stepltl::LassoWord& w) : w_(w), s_(w.prefix_len()), l_(w.loop_len()) {}

    bool holds_at_start(const stepltl::Formula& f) { return table(f)[0]; }

private:
    const stepltl::LassoWord& w_;
    std::uint64_t s_, l_;

    std::uint64_t classes() const { return s_ + l_; }
    std::uint64_t succ(std::uint64_t c) const { return c + 1 < classes() ? c + 1 : s_; }

    std::vector<char> table(const stepltl::Formula& f) {
        using stepltl::Kind;
        std::uint64_t n = classes();
        std::vector<char> out(n, 0);
        switch (f.kind()) {
            case Kind::True:
                std::fill(out.begin(), out.end(), 1);
                return out;
            case Kind::False:
                return out;
            case Kind::Atom:
            case Kind::NegAtom: {
                for (std::uint64_t c = 0; c < n; ++c) {
                    bool has = (c < s_ ? w_.prefix[c] : w_.loop[c - s_]).contains(f.prop());
                    out[c] = (f.kind() == Kind::Atom) == has;
                }
                return out;
            }
            case Kind::And: {
                auto a = table(f.lhs()), b = table(f.rhs());
                for (std::uint64_t c = 0; c < n; ++c) out[c] = a[c] && b[c];
                return out;
            }
            case Kind::Or: {
                auto a = table(f.lhs()), b = table(f.rhs());
                for (std::uint64_t c = 0; c < n; ++c) out[c] = a[c] || b[c];
                return out;
            }
            case Kind::Next: {
                auto a = table(f.lhs());
                for (std::uint64_t c = 0; c < n; ++c) out[c] = a[succ(c)];
                return out;
            }
            case Kind::Until: {
                auto a = table(f.lhs()), b = table(f.rhs());
                out = b;  // least fixpoint of  v = b | (a & v . succ)
                for (bool changed = true; changed;) {
                    changed = false;
                    for (std::uint64_t c = n; c-- > 0;) {
                        char v = b[c] || (a[c] && out[succ(c)]);
                        if (v != out[c]) {
                            out[c] = v;
                            changed = true;
                        }
                    }
                }
                return out;
            }
            case Kind::Release: {
                auto a = table(f.lhs()), b = table(f.rhs());
                std::fill(out.begin(), out.end(), 1);  // greatest fixpoint
                for (bool changed = true; changed;) {
                    changed = false;
                    for (std::uint64_t c = n; c-- > 0;) {
                        char v = b[c] && (a[c] || out[succ(c)]);
                        if (v != out[c]) {
                            out[c] = v;
                            changed = true;
                        }
                    }
                }
                return out;
            }
            default:
                throw std::invalid_argument("LassoLtl: outside the classical fragment");
        }
    }
};

inline bool direct_lasso_ltl(const stepltl::Formula& f, const stepltl::LassoWord& w) {
    return LassoLtl(w).holds_at_start(f);
}

// ── Independent bounded evaluator ───────────────────────────────────────────
// Same bounded semantics contract as the library's (quantifiers over [0,B],
// Until/Release over an H-window with an Unknown tail), implemented as a
// separate forward-scanning recursion over any formula, sugar included.
// Memoisation on (node, position, valuation of free variables) keeps the
// arithmetic templates tractable; there is no lasso special case here.

class BoundedOracle {
public:
    BoundedOracle(std::function<stepltl::Letter(std::uint64_t)> at, std::uint64_t B,
                  std::uint64_t H)
        : at_(std::move(at)), B_(B), H_(H) {}

    stepltl::Verdict3 eval(const stepltl::Formula& f, std::uint64_t pos,
                           std::map<std::string, std::uint64_t>& env) {
        using stepltl::Verdict3;
        auto fv = free_vars(f);
        Key key{f.id(), pos, {}};
        for (const auto& v : fv) key.vals.push_back(env.at(v));
        auto hit = memo_.find(key);
        if (hit != memo_.end()) return hit->second;
        Verdict3 result = compute(f, pos, env);
        memo_.emplace(std::move(key), result);
        return result;
    }

private:
    struct Key {
        const void* node;
        std::uint64_t pos;
        std::vector<std::uint64_t> vals;
        bool operator<(const Key& o) const {
            if (node != o.node) return node < o.node;
            if (pos != o.pos) return pos < o.pos;
            return vals < o.vals;
        }
    };

    std::function<stepltl::Letter(std::uint64_t)> at_;
    std::uint64_t B_, H_;
    std::map<Key, stepltl::Verdict3> memo_;
    std::map<const void*, std::vector<std::string>> fv_;

    const std::vector<std::string>& free_vars(const stepltl::Formula& f) {
        auto it = fv_.find(f.id());
        if (it != fv_.end()) return it->second;
        auto s = stepltl::free_step_vars(f);
        return fv_.emplace(f.id(), std::vector<std::string>(s.begin(), s.end()))
            .first->second;
    }

    std::uint64_t value(const stepltl::StepTerm& t,
                        const std::map<std::string, std::uint64_t>& env) const {
        std::uint64_t v = t.constant;
        for (const auto& [k, c] : t.coeffs) v += c * env.at(k);
        return v;
    }

    stepltl::Verdict3 compute(const stepltl::Formula& f, std::uint64_t pos,
                              std::map<std::string, std::uint64_t>& env) {
        using stepltl::Kind;
        using stepltl::Verdict3;
        using stepltl::and3;
        using stepltl::not3;
        using stepltl::or3;
        switch (f.kind()) {
            case Kind::True:
                return Verdict3::True;
            case Kind::False:
                return Verdict3::False;
            case Kind::Atom:
                return at_(pos).contains(f.prop()) ? Verdict3::True : Verdict3::False;
            case Kind::NegAtom:
                return at_(pos).contains(f.prop()) ? Verdict3::False : Verdict3::True;
            case Kind::Not:
                return not3(eval(f.lhs(), pos, env));
            case Kind::And:
                return and3(eval(f.lhs(), pos, env), eval(f.rhs(), pos, env));
            case Kind::Or:
                return or3(eval(f.lhs(), pos, env), eval(f.rhs(), pos, env));
            case Kind::Implies:
                return or3(not3(eval(f.lhs(), pos, env)), eval(f.rhs(), pos, env));
            case Kind::Iff: {
                Verdict3 a = eval(f.lhs(), pos, env);
                Verdict3 b = eval(f.rhs(), pos, env);
                if (a == Verdict3::Unknown || b == Verdict3::Unknown)
                    return Verdict3::Unknown;
                return a == b ? Verdict3::True : Verdict3::False;
            }
            case Kind::Next:
                return eval(f.lhs(), pos + 1, env);
            case Kind::StepNext:
                return eval(f.lhs(), pos + value(f.term(), env), env);
            case Kind::Until: {
                // or over u of (g@u and f@[pos,u)), Unknown beyond the window
                Verdict3 prefix_ok = Verdict3::True;
                Verdict3 acc = Verdict3::False;
                for (std::uint64_t u = pos; u < pos + H_; ++u) {
                    acc = or3(acc, and3(prefix_ok, eval(f.rhs(), u, env)));
                    if (acc == Verdict3::True) return acc;
                    prefix_ok = and3(prefix_ok, eval(f.lhs(), u, env));
                    if (prefix_ok == Verdict3::False) return acc;
                }
                return or3(acc, and3(prefix_ok, Verdict3::Unknown));
            }
            case Kind::Release: {
                Verdict3 release_seen = Verdict3::False;
                Verdict3 acc = Verdict3::True;
                for (std::uint64_t u = pos; u < pos + H_; ++u) {
                    acc = and3(acc, or3(release_seen, eval(f.rhs(), u, env)));
                    if (acc == Verdict3::False) return acc;
                    release_seen = or3(release_seen, eval(f.lhs(), u, env));
                    if (release_seen == Verdict3::True) return acc;
                }
                return and3(acc, or3(release_seen, Verdict3::Unknown));
            }
            case Kind::Exists:
            case Kind::Forall: {
                std::optional<std::uint64_t> saved;
                auto it = env.find(f.var());
                if (it != env.end()) saved = it->second;
                std::vector<Verdict3> verdicts;
                for (std::uint64_t v = 0; v <= B_; ++v) {
                    env[f.var()] = v;
                    verdicts.push_back(eval(f.lhs(), pos, env));
                    if (f.kind() == Kind::Exists && verdicts.back() == Verdict3::True)
                        break;
                    if (f.kind() == Kind::Forall && verdicts.back() == Verdict3::False)
                        break;
                }
                if (saved)
                    env[f.var()] = *saved;
                else
                    env.erase(f.var());
                Verdict3 acc =
                    f.kind() == Kind::Exists ? Verdict3::False : Verdict3::True;
                for (Verdict3 v : verdicts)
                    acc = f.kind() == Kind::Exists ? or3(acc, v) : and3(acc, v);
                return acc;
            }
        }
        throw std::logic_error("BoundedOracle: bad kind");
    }
};

inline stepltl::Verdict3 bounded_oracle(const stepltl::Formula& f,
                                        const stepltl::ComputableWord& w,
                                        std::uint64_t pos,
                                        std::map<std::string, std::uint64_t> env,
                                        std::uint64_t B, std::uint64_t H) {
    BoundedOracle o(w.rule, B, H);
    return o.eval(f, pos, env);
}

// ── Union-of-P(k) membership, brute force ───────────────────────────────────
// Try every k up to s + 3l, checking p on the multiples of k up to
// s + k*l + k.  The window passes the prefix and a whole cycle of loop
// offsets, so each per-k check is exact; any member has a witness k <= s+l.

inline std::optional<std::uint64_t> brute_union_pk(const stepltl::LassoWord& w) {
    std::uint64_t s = w.prefix_len(), l = w.loop_len();
    for (std::uint64_t k = 1; k <= s + 3 * l; ++k) {
        bool ok = true;
        for (std::uint64_t pos = 0; pos <= s + k * l + k; pos += k)
            if (!w.letter_at(pos).contains("p")) {
                ok = false;
                break;
            }
        if (ok) return k;
    }
    return std::nullopt;
}

// ── NBA membership by bounded run enumeration ───────────────────────────────
// Layered state sets: R[x] holds every state some run prefix of length x can
// reach.  The word is accepted iff some accepting state q occurs at a
// position x past the prefix and a run segment from (q, x) returns to q with
// the same loop offset.  Stem positions up to n*(s+l) and return windows of
// n*l + l steps cover every product lasso.

inline bool naive_nba_member(const stepltl::NBA& a, const stepltl::LassoWord& w) {
    std::uint64_t s = w.prefix_len(), l = w.loop_len();
    std::uint64_t n = a.num_states;
    std::uint64_t stem_max = n * (s + l) + 1;

    std::vector<std::set<stepltl::State>> layers(stem_max + 1);
    layers[0].insert(a.initial);
    for (std::uint64_t x = 0; x < stem_max; ++x)
        for (stepltl::State q : layers[x])
            for (stepltl::State q2 : a.successors(q, w.letter_at(x)))
                layers[x + 1].insert(q2);

    for (std::uint64_t x = s; x <= stem_max; ++x) {
        for (stepltl::State q : layers[x]) {
            if (!a.accepting.count(q)) continue;
            std::set<stepltl::State> frontier{q};
            for (std::uint64_t y = x; y < x + n * l + l; ++y) {
                std::set<stepltl::State> next;
                for (stepltl::State r : frontier)
                    for (stepltl::State r2 : a.successors(r, w.letter_at(y)))
                        next.insert(r2);
                frontier = std::move(next);
                std::uint64_t span = y + 1 - x;
                if (span % l == 0 && frontier.count(q)) return true;
            }
        }
    }
    return false;
}

}  // namespace oracles

#endif  // STEPLTL_TESTS_ORACLES_HPP
