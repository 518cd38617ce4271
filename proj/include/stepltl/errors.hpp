#ifndef STEPLTL_ERRORS_HPP
#define STEPLTL_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace stepltl {

// Raised by the text-format parsers (formulas, words, automata, Peano).
// line/column are 1-based.
class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t line, std::size_t column, const std::string& what_arg)
        : std::runtime_error("parse error at " + std::to_string(line) + ":" +
                             std::to_string(column) + ": " + what_arg),
          line_(line),
          column_(column) {}

    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }

private:
    std::size_t line_;
    std::size_t column_;
};

}  // namespace stepltl

#endif  // STEPLTL_ERRORS_HPP
