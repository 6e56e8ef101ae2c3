#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace hjwave::cli {

/// Real-valued expression in the variable x.
///
/// Grammar: numbers, x, pi, + - * / ^ (right associative), unary minus,
/// parentheses, and the functions sin cos exp sqrt. Parsed once into reverse
/// Polish notation with the shunting-yard algorithm.
class Expression {
public:
    /// Throws ConfigError with the offending position on malformed input.
    static Expression parse(std::string_view text);

    double operator()(double x) const;
    const std::string& text() const noexcept { return text_; }

private:
    enum class Op { number, variable, add, sub, mul, div, pow, neg, sin, cos, exp, sqrt };
    struct Token {
        Op op;
        double value = 0.0;
    };

    std::string text_;
    std::vector<Token> rpn_;
};

} // namespace hjwave::cli
