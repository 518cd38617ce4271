// Test-only random generators shared by the unit and acceptance suites.
#ifndef STEPLTL_TESTS_GENERATORS_HPP
#define STEPLTL_TESTS_GENERATORS_HPP

#include <random>
#include <string>
#include <vector>

#include "stepltl/formula.hpp"
#include "stepltl/presburger.hpp"
#include "stepltl/words.hpp"

namespace testgen {

using Rng = std::mt19937_64;

inline std::uint64_t below(Rng& rng, std::uint64_t n) { return rng() % n; }

// Random lasso word over the given propositions.
inline stepltl::LassoWord random_lasso(Rng& rng, std::vector<std::string> props,
                                       std::uint64_t max_prefix,
                                       std::uint64_t max_loop) {
    std::sort(props.begin(), props.end());
    stepltl::LassoWord w;
    w.props = props;
    std::uint64_t s = below(rng, max_prefix + 1);
    std::uint64_t l = 1 + below(rng, max_loop);
    auto random_letter = [&]() {
        std::vector<std::string> held;
        for (const auto& p : props)
            if (below(rng, 2)) held.push_back(p);
        return stepltl::Letter(held);
    };
    for (std::uint64_t i = 0; i < s; ++i) w.prefix.push_back(random_letter());
    for (std::uint64_t i = 0; i < l; ++i) w.loop.push_back(random_letter());
    return w;
}

// All lasso words over `props` with the exact prefix/loop lengths given.
inline std::vector<stepltl::LassoWord> enumerate_lassos(
    const std::vector<std::string>& props, std::uint64_t s, std::uint64_t l) {
    std::vector<stepltl::Letter> alphabet;
    std::uint64_t letters = 1ull << props.size();
    for (std::uint64_t bits = 0; bits < letters; ++bits) {
        std::vector<std::string> held;
        for (std::size_t i = 0; i < props.size(); ++i)
            if (bits & (1ull << i)) held.push_back(props[i]);
        alphabet.push_back(stepltl::Letter(held));
    }
    std::vector<stepltl::LassoWord> out;
    std::uint64_t total = 1;
    for (std::uint64_t i = 0; i < s + l; ++i) total *= letters;
    for (std::uint64_t code = 0; code < total; ++code) {
        stepltl::LassoWord w;
        w.props = props;
        std::uint64_t c = code;
        for (std::uint64_t i = 0; i < s; ++i) {
            w.prefix.push_back(alphabet[c % letters]);
            c /= letters;
        }
        for (std::uint64_t i = 0; i < l; ++i) {
            w.loop.push_back(alphabet[c % letters]);
            c /= letters;
        }
        out.push_back(std::move(w));
    }
    return out;
}

// Random quantifier-free, X[t]-free formula in positive normal form over the
// given propositions, with exactly `size` nodes.
inline stepltl::Formula random_classical_formula(Rng& rng,
                                                 const std::vector<std::string>& props,
                                                 std::uint64_t size) {
    using namespace stepltl;
    if (size <= 1) {
        switch (below(rng, 4)) {
            case 0: return make_true();
            case 1: return make_false();
            case 2: return make_atom(props[below(rng, props.size())]);
            default: return make_neg_atom(props[below(rng, props.size())]);
        }
    }
    if (size == 2 || below(rng, 3) == 0) {
        return make_next(random_classical_formula(rng, props, size - 1));
    }
    std::uint64_t left = 1 + below(rng, size - 2);
    Formula a = random_classical_formula(rng, props, left);
    Formula b = random_classical_formula(rng, props, size - 1 - left);
    switch (below(rng, 4)) {
        case 0: return make_and(a, b);
        case 1: return make_or(a, b);
        case 2: return make_until(a, b);
        default: return make_release(a, b);
    }
}

// Random quantifier-free Presburger formula over the given variables.
inline stepltl::PATerm random_pa_term(Rng& rng, const std::vector<std::string>& vars,
                                      long long max_coeff) {
    stepltl::PATerm t;
    t.constant = static_cast<long long>(below(rng, 17)) - 8;
    for (const auto& v : vars) {
        long long c = static_cast<long long>(below(rng, 2 * max_coeff + 1)) - max_coeff;
        t.add(v, c);
    }
    return t;
}

inline stepltl::PAFormula random_pa_formula(Rng& rng,
                                            const std::vector<std::string>& vars,
                                            std::uint64_t depth) {
    using namespace stepltl;
    if (depth == 0 || below(rng, 3) == 0) {
        switch (below(rng, 3)) {
            case 0:
                return pa_leq(random_pa_term(rng, vars, 4), random_pa_term(rng, vars, 4));
            case 1:
                return pa_eq(random_pa_term(rng, vars, 4), random_pa_term(rng, vars, 4));
            default: {
                long long d = 2 + static_cast<long long>(below(rng, 5));  // 2..6
                return pa_divides(d, random_pa_term(rng, vars, 4));
            }
        }
    }
    switch (below(rng, 3)) {
        case 0: return pa_not(random_pa_formula(rng, vars, depth - 1));
        case 1:
            return pa_and(random_pa_formula(rng, vars, depth - 1),
                          random_pa_formula(rng, vars, depth - 1));
        default:
            return pa_or(random_pa_formula(rng, vars, depth - 1),
                         random_pa_formula(rng, vars, depth - 1));
    }
}

}  // namespace testgen

#endif  // STEPLTL_TESTS_GENERATORS_HPP
