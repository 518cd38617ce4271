#ifndef STEPLTL_STEP_TERM_HPP
#define STEPLTL_STEP_TERM_HPP

#include <cstdint>
#include <map>
#include <string>

namespace stepltl {

// A step variable is identified by its name.  Binders (quantifiers, template
// builders) are responsible for keeping names unique within a scope.
using StepVar = std::string;

// ── StepTerm ────────────────────────────────────────────────────────────────
// Linear expression (sum_j n_j * k_j) + n over step variables, everything a
// natural number.  Canonical form: no zero coefficients; the map keeps
// variables sorted by name.  All operations preserve canonicity.

struct StepTerm {
    std::uint64_t constant = 0;
    std::map<StepVar, std::uint64_t> coeffs;

    StepTerm() = default;

    static StepTerm of_constant(std::uint64_t n) {
        StepTerm t;
        t.constant = n;
        return t;
    }

    static StepTerm of_var(const StepVar& k) {
        StepTerm t;
        t.coeffs[k] = 1;
        return t;
    }

    bool is_constant() const { return coeffs.empty(); }

    std::uint64_t coeff(const StepVar& k) const {
        auto it = coeffs.find(k);
        return it == coeffs.end() ? 0 : it->second;
    }

    bool mentions(const StepVar& k) const { return coeffs.count(k) != 0; }

    StepTerm& add_var(const StepVar& k, std::uint64_t c) {
        if (c == 0) return *this;
        auto [it, fresh] = coeffs.try_emplace(k, 0);
        (void)fresh;
        it->second += c;
        return *this;
    }

    friend StepTerm operator+(const StepTerm& a, const StepTerm& b) {
        StepTerm r = a;
        r.constant += b.constant;
        for (const auto& [k, c] : b.coeffs) r.add_var(k, c);
        return r;
    }

    friend StepTerm operator+(const StepTerm& a, std::uint64_t n) {
        StepTerm r = a;
        r.constant += n;
        return r;
    }

    // n * t, distributing over every addend.
    StepTerm scaled(std::uint64_t n) const {
        StepTerm r;
        if (n == 0) return r;
        r.constant = constant * n;
        for (const auto& [k, c] : coeffs) r.coeffs[k] = c * n;
        return r;
    }

    // Replace k by `by`; the coefficient of k multiplies through.
    StepTerm substituted(const StepVar& k, const StepTerm& by) const {
        auto it = coeffs.find(k);
        if (it == coeffs.end()) return *this;
        StepTerm r = *this;
        std::uint64_t c = it->second;
        r.coeffs.erase(k);
        StepTerm scaled_by = by.scaled(c);
        r.constant += scaled_by.constant;
        for (const auto& [v, cv] : scaled_by.coeffs) r.add_var(v, cv);
        return r;
    }

    bool operator==(const StepTerm& o) const {
        return constant == o.constant && coeffs == o.coeffs;
    }

    // Canonical text: coefficient-1 addends render bare, the constant last
    // and only when nonzero (or when the term is a plain constant).
    std::string to_string() const {
        std::string out;
        for (const auto& [k, c] : coeffs) {
            if (!out.empty()) out += " + ";
            if (c != 1) {
                out += std::to_string(c);
                out += "*";
            }
            out += k;
        }
        if (constant != 0 || out.empty()) {
            if (!out.empty()) out += " + ";
            out += std::to_string(constant);
        }
        return out;
    }
};

// Re-establishes the canonical form.  Terms built through the operations
// above are already canonical; this exists for values assembled by hand.
inline StepTerm normalize_term(const StepTerm& t) {
    StepTerm r;
    r.constant = t.constant;
    for (const auto& [k, c] : t.coeffs)
        if (c != 0) r.coeffs[k] = c;
    return r;
}

}  // namespace stepltl

#endif  // STEPLTL_STEP_TERM_HPP
