#ifndef STEPLTL_FORMULA_TEXT_HPP
#define STEPLTL_FORMULA_TEXT_HPP

#include <cctype>
#include <cstdint>
#include <string>
#include <string_view>

#include "stepltl/errors.hpp"
#include "stepltl/formula.hpp"
#include "stepltl/step_term.hpp"

namespace stepltl {

// ── Concrete syntax ─────────────────────────────────────────────────────────
//
//   formula := "true" | "false" | IDENT | "!" formula | "(" formula ")"
//            | formula "&" formula | formula "|" formula
//            | formula "->" formula | formula "<->" formula
//            | "X" formula | "X" "[" term "]" formula
//            | formula "U" formula | formula "R" formula
//            | "E" IDENT "." formula | "A" IDENT "." formula
//   term    := addend ("+" addend)* ;  addend := NAT | NAT "*" IDENT | IDENT
//
// Precedence, tightest first: ! and X/X[.]; U/R (right-assoc); &; |; ->; <->.
// Quantifier bodies extend maximally to the right.  X, U, R, E, A, true and
// false are reserved words; every other identifier is a proposition or a
// step variable depending on where it occurs.

namespace detail {

class FormulaLexer {
public:
    explicit FormulaLexer(std::string_view text) : text_(text) {}

    void skip_ws() {
        while (pos_ < text_.size()) {
            char c = text_[pos_];
            if (c == '\n') {
                ++line_;
                col_ = 1;
                ++pos_;
            } else if (std::isspace(static_cast<unsigned char>(c))) {
                ++col_;
                ++pos_;
            } else {
                break;
            }
        }
    }

    bool at_end() {
        skip_ws();
        return pos_ >= text_.size();
    }

    char peek() {
        skip_ws();
        return pos_ < text_.size() ? text_[pos_] : '\0';
    }

    bool try_symbol(std::string_view sym) {
        skip_ws();
        if (text_.substr(pos_).substr(0, sym.size()) != sym) return false;
        advance(sym.size());
        return true;
    }

    void expect_symbol(std::string_view sym) {
        if (!try_symbol(sym)) fail("expected '" + std::string(sym) + "'");
    }

    static bool ident_start(char c) {
        return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
    }
    static bool ident_char(char c) {
        return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
    }

    // Peeks the identifier (or keyword) at the cursor without consuming it.
    std::string peek_word() {
        skip_ws();
        std::size_t i = pos_;
        if (i >= text_.size() || !ident_start(text_[i])) return {};
        std::size_t j = i;
        while (j < text_.size() && ident_char(text_[j])) ++j;
        return std::string(text_.substr(i, j - i));
    }

    std::string take_word() {
        std::string w = peek_word();
        if (w.empty()) fail("expected identifier");
        advance(w.size());
        return w;
    }

    bool peek_nat() {
        skip_ws();
        return pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]));
    }

    std::uint64_t take_nat() {
        skip_ws();
        if (!peek_nat()) fail("expected natural number");
        std::uint64_t v = 0;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
            v = v * 10 + static_cast<std::uint64_t>(text_[pos_] - '0');
            advance(1);
        }
        return v;
    }

    [[noreturn]] void fail(const std::string& msg) {
        skip_ws();
        throw ParseError(line_, col_, msg);
    }

    std::string_view remaining() {
        skip_ws();
        return text_.substr(pos_);
    }

    std::size_t line() const { return line_; }
    std::size_t col() const { return col_; }

private:
    void advance(std::size_t n) {
        pos_ += n;
        col_ += n;
    }

    std::string_view text_;
    std::size_t pos_ = 0;
    std::size_t line_ = 1;
    std::size_t col_ = 1;
};

inline bool is_reserved_word(const std::string& w) {
    return w == "true" || w == "false" || w == "X" || w == "U" || w == "R" ||
           w == "E" || w == "A";
}

class FormulaParser {
public:
    explicit FormulaParser(std::string_view text) : lx_(text) {}

    Formula parse() {
        Formula f = parse_iff();
        if (!lx_.at_end()) lx_.fail("trailing input");
        return f;
    }

private:
    FormulaLexer lx_;

    Formula parse_iff() {
        Formula lhs = parse_implies();
        if (lx_.try_symbol("<->")) return make_iff(lhs, parse_iff());
        return lhs;
    }

    Formula parse_implies() {
        Formula lhs = parse_or();
        if (lx_.try_symbol("->")) return make_implies(lhs, parse_implies());
        return lhs;
    }

    // All binary connectives associate to the right; the renderer assumes it.
    Formula parse_or() {
        Formula lhs = parse_and();
        if (lx_.peek() == '|') {
            lx_.expect_symbol("|");
            return make_or(lhs, parse_or());
        }
        return lhs;
    }

    Formula parse_and() {
        Formula lhs = parse_until();
        if (lx_.peek() == '&') {
            lx_.expect_symbol("&");
            return make_and(lhs, parse_and());
        }
        return lhs;
    }

    Formula parse_until() {
        Formula lhs = parse_unary();
        std::string w = lx_.peek_word();
        if (w == "U") {
            lx_.take_word();
            return make_until(lhs, parse_until());
        }
        if (w == "R") {
            lx_.take_word();
            return make_release(lhs, parse_until());
        }
        return lhs;
    }

    Formula parse_unary() {
        if (lx_.peek() == '!') {
            lx_.expect_symbol("!");
            return make_not(parse_unary());
        }
        std::string w = lx_.peek_word();
        if (w == "X") {
            lx_.take_word();
            if (lx_.peek() == '[') {
                lx_.expect_symbol("[");
                StepTerm t = parse_term();
                lx_.expect_symbol("]");
                return make_step_next(t, parse_unary());
            }
            return make_next(parse_unary());
        }
        if (w == "E" || w == "A") {
            lx_.take_word();
            std::string var = lx_.take_word();
            if (is_reserved_word(var)) lx_.fail("reserved word '" + var + "' used as variable");
            lx_.expect_symbol(".");
            Formula body = parse_iff();  // quantifier body extends maximally right
            return w == "E" ? make_exists(var, body) : make_forall(var, body);
        }
        return parse_primary();
    }

    Formula parse_primary() {
        if (lx_.peek() == '(') {
            lx_.expect_symbol("(");
            Formula f = parse_iff();
            lx_.expect_symbol(")");
            return f;
        }
        if (lx_.peek_nat()) lx_.fail("unexpected number");
        std::string w = lx_.peek_word();
        if (w.empty()) lx_.fail("expected formula");
        if (w == "true") {
            lx_.take_word();
            return make_true();
        }
        if (w == "false") {
            lx_.take_word();
            return make_false();
        }
        if (is_reserved_word(w)) lx_.fail("unexpected '" + w + "'");
        lx_.take_word();
        return make_atom(w);
    }

    StepTerm parse_term() {
        StepTerm t = parse_addend();
        while (lx_.peek() == '+') {
            lx_.expect_symbol("+");
            t = t + parse_addend();
        }
        return t;
    }

    StepTerm parse_addend() {
        if (lx_.peek_nat()) {
            std::uint64_t n = lx_.take_nat();
            if (lx_.try_symbol("*")) {
                std::string var = lx_.take_word();
                if (is_reserved_word(var)) lx_.fail("reserved word in term");
                if (n == 0) return StepTerm();  // 0*k contributes nothing
                StepTerm t;
                t.add_var(var, n);
                return t;
            }
            return StepTerm::of_constant(n);
        }
        std::string w = lx_.peek_word();
        if (w.empty() || is_reserved_word(w)) lx_.fail("expected term addend");
        lx_.take_word();
        return StepTerm::of_var(w);
    }
};

}  // namespace detail

inline Formula parse_formula(std::string_view text) {
    return detail::FormulaParser(text).parse();
}

// ── Rendering ───────────────────────────────────────────────────────────────
// parse_formula(render_formula(f)) == f for every constructible tree; render
// emits the fewest parentheses compatible with that, except around
// quantifiers, which are always parenthesised when they are an operand.

namespace detail {

inline int precedence(Kind k) {
    switch (k) {
        case Kind::True:
        case Kind::False:
        case Kind::Atom:
        case Kind::NegAtom:
            return 7;
        case Kind::Not:
        case Kind::Next:
        case Kind::StepNext:
            return 6;
        case Kind::Until:
        case Kind::Release:
            return 5;
        case Kind::And:
            return 4;
        case Kind::Or:
            return 3;
        case Kind::Implies:
            return 2;
        case Kind::Iff:
            return 1;
        case Kind::Exists:
        case Kind::Forall:
            return 0;
    }
    return 0;
}

inline void render_into(const Formula& f, std::string& out);

inline void render_child(const Formula& child, int parent_prec, bool tight_side,
                         std::string& out) {
    int cp = precedence(child.kind());
    bool parens = tight_side ? cp <= parent_prec : cp < parent_prec;
    if (parens) out += "(";
    render_into(child, out);
    if (parens) out += ")";
}

inline void render_into(const Formula& f, std::string& out) {
    switch (f.kind()) {
        case Kind::True:
            out += "true";
            return;
        case Kind::False:
            out += "false";
            return;
        case Kind::Atom:
            out += f.prop();
            return;
        case Kind::NegAtom:
            out += "!";
            out += f.prop();
            return;
        case Kind::Not:
            out += "!";
            render_child(f.lhs(), 6, false, out);
            return;
        case Kind::Next:
            out += "X ";
            render_child(f.lhs(), 6, false, out);
            return;
        case Kind::StepNext:
            out += "X[";
            out += f.term().to_string();
            out += "] ";
            render_child(f.lhs(), 6, false, out);
            return;
        case Kind::Until:
        case Kind::Release: {
            render_child(f.lhs(), 5, true, out);
            out += f.kind() == Kind::Until ? " U " : " R ";
            render_child(f.rhs(), 5, false, out);
            return;
        }
        case Kind::And:
        case Kind::Or:
        case Kind::Implies:
        case Kind::Iff: {
            int p = precedence(f.kind());
            render_child(f.lhs(), p, true, out);
            switch (f.kind()) {
                case Kind::And: out += " & "; break;
                case Kind::Or: out += " | "; break;
                case Kind::Implies: out += " -> "; break;
                default: out += " <-> "; break;
            }
            render_child(f.rhs(), p, false, out);
            return;
        }
        case Kind::Exists:
        case Kind::Forall:
            out += f.kind() == Kind::Exists ? "E " : "A ";
            out += f.var();
            out += ". ";
            render_into(f.lhs(), out);
            return;
    }
}

}  // namespace detail

inline std::string render_formula(const Formula& f) {
    std::string out;
    detail::render_into(f, out);
    return out;
}

}  // namespace stepltl

#endif  // STEPLTL_FORMULA_TEXT_HPP
