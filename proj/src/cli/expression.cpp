#include "hjwave/cli/expression.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <numbers>

#include "hjwave/error.hpp"

namespace hjwave::cli {

namespace {

[[noreturn]] void fail(std::string_view text, std::size_t pos, const std::string& what)
{
    throw ConfigError("expression \"" + std::string(text) + "\": " + what + " at position " + std::to_string(pos));
}

int precedence(char op)
{
    switch (op) {
    case '+':
    case '-': return 1;
    case '*':
    case '/': return 2;
    case '~': return 3; // unary minus
    case '^': return 4;
    default: return 0;
    }
}

bool right_associative(char op) { return op == '^' || op == '~'; }

} // namespace

Expression Expression::parse(std::string_view text)
{
    Expression e;
    e.text_ = std::string(text);

    // operator stack entries: single chars for operators/parens, 'f' + name for functions
    struct Pending {
        char op;
        Op fn;
        std::size_t pos;
    };
    std::vector<Pending> stack;
    auto emit = [&](const Pending& p) {
        switch (p.op) {
        case '+': e.rpn_.push_back({Op::add}); break;
        case '-': e.rpn_.push_back({Op::sub}); break;
        case '*': e.rpn_.push_back({Op::mul}); break;
        case '/': e.rpn_.push_back({Op::div}); break;
        case '^': e.rpn_.push_back({Op::pow}); break;
        case '~': e.rpn_.push_back({Op::neg}); break;
        case 'f': e.rpn_.push_back({p.fn}); break;
        default: fail(text, p.pos, "unbalanced parenthesis");
        }
    };

    bool expect_operand = true;
    std::size_t i = 0;
    while (i < text.size()) {
        const char ch = text[i];
        if (std::isspace(static_cast<unsigned char>(ch))) {
            ++i;
            continue;
        }
        if (std::isdigit(static_cast<unsigned char>(ch)) || ch == '.') {
            if (!expect_operand) fail(text, i, "unexpected number");
            double v = 0.0;
            const auto [end, ec] = std::from_chars(text.data() + i, text.data() + text.size(), v);
            if (ec != std::errc{}) fail(text, i, "malformed number");
            e.rpn_.push_back({Op::number, v});
            i = static_cast<std::size_t>(end - text.data());
            expect_operand = false;
            continue;
        }
        if (std::isalpha(static_cast<unsigned char>(ch))) {
            std::size_t j = i;
            while (j < text.size() && std::isalpha(static_cast<unsigned char>(text[j]))) ++j;
            const std::string_view name = text.substr(i, j - i);
            if (!expect_operand) fail(text, i, "unexpected identifier '" + std::string(name) + "'");
            if (name == "x") {
                e.rpn_.push_back({Op::variable});
                expect_operand = false;
            } else if (name == "pi") {
                e.rpn_.push_back({Op::number, std::numbers::pi});
                expect_operand = false;
            } else {
                Op fn;
                if (name == "sin") fn = Op::sin;
                else if (name == "cos") fn = Op::cos;
                else if (name == "exp") fn = Op::exp;
                else if (name == "sqrt") fn = Op::sqrt;
                else fail(text, i, "unknown identifier '" + std::string(name) + "'");
                std::size_t k = j;
                while (k < text.size() && std::isspace(static_cast<unsigned char>(text[k]))) ++k;
                if (k >= text.size() || text[k] != '(') fail(text, j, "function needs '('");
                stack.push_back({'f', fn, i});
            }
            i = j;
            continue;
        }
        if (ch == '(') {
            if (!expect_operand) fail(text, i, "unexpected '('");
            stack.push_back({'(', Op::number, i});
            ++i;
            continue;
        }
        if (ch == ')') {
            if (expect_operand) fail(text, i, "unexpected ')'");
            while (!stack.empty() && stack.back().op != '(') {
                emit(stack.back());
                stack.pop_back();
            }
            if (stack.empty()) fail(text, i, "unbalanced ')'");
            stack.pop_back();
            if (!stack.empty() && stack.back().op == 'f') {
                emit(stack.back());
                stack.pop_back();
            }
            ++i;
            continue;
        }
        if (ch == '+' || ch == '-' || ch == '*' || ch == '/' || ch == '^') {
            char op = ch;
            if (expect_operand) {
                if (ch == '-') op = '~';
                else if (ch == '+') {
                    ++i;
                    continue;
                } else fail(text, i, std::string("unexpected '") + ch + "'");
            }
            while (op != '~' && !stack.empty() && stack.back().op != '(' && stack.back().op != 'f') {
                const char top = stack.back().op;
                const bool pops = right_associative(op) ? precedence(top) > precedence(op)
                                                        : precedence(top) >= precedence(op);
                if (!pops) break;
                emit(stack.back());
                stack.pop_back();
            }
            stack.push_back({op, Op::number, i});
            expect_operand = true;
            ++i;
            continue;
        }
        fail(text, i, std::string("unexpected character '") + ch + "'");
    }
    if (expect_operand) fail(text, text.size(), "expression ends early");
    while (!stack.empty()) {
        if (stack.back().op == '(') fail(text, stack.back().pos, "unbalanced '('");
        emit(stack.back());
        stack.pop_back();
    }
    (void)e(0.0); // stack discipline check
    return e;
}

double Expression::operator()(double x) const
{
    std::vector<double> st;
    st.reserve(rpn_.size());
    auto pop = [&] {
        if (st.empty()) throw ConfigError("expression \"" + text_ + "\" is malformed");
        const double v = st.back();
        st.pop_back();
        return v;
    };
    for (const Token& t : rpn_) {
        switch (t.op) {
        case Op::number: st.push_back(t.value); break;
        case Op::variable: st.push_back(x); break;
        case Op::neg: st.push_back(-pop()); break;
        case Op::sin: st.push_back(std::sin(pop())); break;
        case Op::cos: st.push_back(std::cos(pop())); break;
        case Op::exp: st.push_back(std::exp(pop())); break;
        case Op::sqrt: st.push_back(std::sqrt(pop())); break;
        default: {
            const double b = pop(), a = pop();
            switch (t.op) {
            case Op::add: st.push_back(a + b); break;
            case Op::sub: st.push_back(a - b); break;
            case Op::mul: st.push_back(a * b); break;
            case Op::div: st.push_back(a / b); break;
            default: st.push_back(std::pow(a, b)); break;
            }
        }
        }
    }
    if (st.size() != 1) throw ConfigError("expression \"" + text_ + "\" is malformed");
    return st.back();
}

} // namespace hjwave::cli
