#ifndef STEPLTL_WORDS_HPP
#define STEPLTL_WORDS_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "stepltl/errors.hpp"

namespace stepltl {

// ── Letter ──────────────────────────────────────────────────────────────────
// A finite set of proposition names; kept sorted and duplicate-free so that
// letters have a total order and a canonical text form.

class Letter {
public:
    Letter() = default;
    explicit Letter(std::vector<std::string> props) : props_(std::move(props)) {
        std::sort(props_.begin(), props_.end());
        props_.erase(std::unique(props_.begin(), props_.end()), props_.end());
    }

    bool contains(const std::string& prop) const {
        return std::binary_search(props_.begin(), props_.end(), prop);
    }

    const std::vector<std::string>& props() const { return props_; }

    bool operator==(const Letter& o) const { return props_ == o.props_; }
    bool operator<(const Letter& o) const { return props_ < o.props_; }

    std::string to_string() const {
        std::string out = "{";
        for (std::size_t i = 0; i < props_.size(); ++i) {
            if (i) out += ",";
            out += props_[i];
        }
        out += "}";
        return out;
    }

private:
    std::vector<std::string> props_;
};

// ── Words ───────────────────────────────────────────────────────────────────

// Ultimately periodic word: prefix followed by a repeated nonempty loop.
struct LassoWord {
    std::vector<std::string> props;  // proposition universe, sorted
    std::vector<Letter> prefix;
    std::vector<Letter> loop;  // never empty

    std::uint64_t prefix_len() const { return prefix.size(); }
    std::uint64_t loop_len() const { return loop.size(); }

    const Letter& letter_at(std::uint64_t i) const {
        if (i < prefix.size()) return prefix[i];
        return loop[(i - prefix.size()) % loop.size()];
    }
};

// Word given by a total position -> letter rule.  Rules must be pure; they
// may be invoked from several threads at once.
struct ComputableWord {
    std::vector<std::string> props;
    std::function<Letter(std::uint64_t)> rule;

    Letter letter_at(std::uint64_t i) const { return rule(i); }
};

inline const Letter& letter_at(const LassoWord& w, std::uint64_t i) {
    return w.letter_at(i);
}
inline Letter letter_at(const ComputableWord& w, std::uint64_t i) {
    return w.letter_at(i);
}

// ── Text format ─────────────────────────────────────────────────────────────
// One line:  props <id> [<id>...] | <prefix> | <loop>
// where prefix and loop are ';'-separated letters, each "{}" or "{p,q}".
// The prefix may be empty, the loop may not.

namespace detail {

inline std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return {};
    std::size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

inline std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> parts;
    std::size_t start = 0;
    while (true) {
        std::size_t p = s.find(sep, start);
        if (p == std::string::npos) {
            parts.push_back(s.substr(start));
            return parts;
        }
        parts.push_back(s.substr(start, p - start));
        start = p + 1;
    }
}

inline Letter parse_letter(const std::string& raw,
                           const std::vector<std::string>& universe) {
    std::string s = trim(raw);
    if (s.size() < 2 || s.front() != '{' || s.back() != '}')
        throw ParseError(1, 1, "letter must look like {} or {p,q}: '" + raw + "'");
    std::string inner = trim(s.substr(1, s.size() - 2));
    std::vector<std::string> props;
    if (!inner.empty()) {
        for (const std::string& part : split(inner, ',')) {
            std::string name = trim(part);
            if (name.empty()) throw ParseError(1, 1, "empty proposition in letter");
            if (!std::binary_search(universe.begin(), universe.end(), name))
                throw ParseError(1, 1, "unknown proposition '" + name + "'");
            props.push_back(name);
        }
    }
    return Letter(std::move(props));
}

inline std::vector<Letter> parse_letter_list(const std::string& raw,
                                             const std::vector<std::string>& universe) {
    std::string s = trim(raw);
    std::vector<Letter> letters;
    if (s.empty()) return letters;
    for (const std::string& part : split(s, ';'))
        letters.push_back(parse_letter(part, universe));
    return letters;
}

}  // namespace detail

inline LassoWord parse_lasso(const std::string& text) {
    std::vector<std::string> sections = detail::split(text, '|');
    if (sections.size() != 3)
        throw ParseError(1, 1, "word must have three '|'-separated sections");

    std::string header = detail::trim(sections[0]);
    if (header.substr(0, 5) != "props")
        throw ParseError(1, 1, "word must start with 'props'");
    std::vector<std::string> props;
    for (const std::string& part : detail::split(header.substr(5), ' ')) {
        std::string name = detail::trim(part);
        if (!name.empty()) props.push_back(name);
    }
    if (props.empty()) throw ParseError(1, 1, "empty proposition universe");
    std::sort(props.begin(), props.end());
    props.erase(std::unique(props.begin(), props.end()), props.end());

    LassoWord w;
    w.props = props;
    w.prefix = detail::parse_letter_list(sections[1], props);
    w.loop = detail::parse_letter_list(sections[2], props);
    if (w.loop.empty()) throw ParseError(1, 1, "empty loop");
    return w;
}

inline std::string render_lasso(const LassoWord& w) {
    std::string out = "props";
    for (const auto& p : w.props) {
        out += " ";
        out += p;
    }
    out += " |";
    for (std::size_t i = 0; i < w.prefix.size(); ++i) {
        out += i ? ";" : " ";
        out += w.prefix[i].to_string();
    }
    out += " |";
    for (std::size_t i = 0; i < w.loop.size(); ++i) {
        out += i ? ";" : " ";
        out += w.loop[i].to_string();
    }
    return out;
}

// ── Squares word ────────────────────────────────────────────────────────────
// Each requested proposition holds exactly at the perfect-square positions
// 0, 1, 4, 9, ...  No ultimately periodic word has this shape, which is what
// the arithmetic encodings rely on.

inline bool is_perfect_square(std::uint64_t n) {
    std::uint64_t r = static_cast<std::uint64_t>(std::llround(std::sqrt(static_cast<double>(n))));
    while (r * r > n) --r;
    while ((r + 1) * (r + 1) <= n) ++r;
    return r * r == n;
}

inline ComputableWord squares_word(std::vector<std::string> props) {
    std::sort(props.begin(), props.end());
    props.erase(std::unique(props.begin(), props.end()), props.end());
    for (const auto& p : props)
        if (p != "p" && p != "q")
            throw std::invalid_argument("squares_word: props must be within {p, q}");
    ComputableWord w;
    w.props = props;
    w.rule = [props](std::uint64_t i) {
        return is_perfect_square(i) ? Letter(props) : Letter();
    };
    return w;
}

// ── Membership in U_k L(P(k)) ───────────────────────────────────────────────
// L(P(k)) = { w : p holds at every multiple of k }, k >= 1.  On a lasso word
// with prefix length s and loop length l, membership in the union reduces to
// two letter checks: all sufficiently large multiples of any k that is a
// multiple of l land on the single loop offset r0 = (l - s mod l) mod l, and
// position 0 is a multiple of every k.  When those two positions carry p,
// k = l * ceil((s+1)/l) works; the k returned here is re-verified against
// its own multiples before being reported.

struct PkWitness {
    // Engaged: the word is in L(P(*member_k)).  Empty: not in the union;
    // p_at_zero and loop_residue record the evidence that was checked.
    std::optional<std::uint64_t> member_k;
    bool p_at_zero = false;
    std::uint64_t loop_residue = 0;

    bool is_member() const { return member_k.has_value(); }
};

// Checks w in L(P(k)) directly on the multiples of k up to s + k*l + k.
// Positions beyond s repeat with period l, and the window covers a full
// cycle of loop offsets, so the check is exact.
inline bool lasso_in_pk(const LassoWord& w, std::uint64_t k) {
    if (k == 0) throw std::invalid_argument("P(k) requires k >= 1");
    std::uint64_t s = w.prefix_len(), l = w.loop_len();
    std::uint64_t limit = s + k * l + k;
    for (std::uint64_t pos = 0; pos <= limit; pos += k)
        if (!w.letter_at(pos).contains("p")) return false;
    return true;
}

inline PkWitness is_in_union_pk(const LassoWord& w) {
    if (!std::binary_search(w.props.begin(), w.props.end(), std::string("p")))
        throw std::invalid_argument("is_in_union_pk: word lacks proposition p");
    std::uint64_t s = w.prefix_len(), l = w.loop_len();
    PkWitness witness;
    witness.p_at_zero = w.letter_at(0).contains("p");
    witness.loop_residue = (l - (s % l)) % l;
    if (witness.p_at_zero && w.loop[witness.loop_residue].contains("p")) {
        std::uint64_t k = l * ((s + 1 + l - 1) / l);
        if (!lasso_in_pk(w, k))
            throw std::logic_error("is_in_union_pk: closed form disagreed with direct check");
        witness.member_k = k;
    }
    return witness;
}

}  // namespace stepltl

#endif  // STEPLTL_WORDS_HPP
