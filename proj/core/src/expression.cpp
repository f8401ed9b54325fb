#include "signorini/expression.hpp"

#include <cctype>
#include <cmath>
#include <memory>
#include <numbers>
#include <stdexcept>
#include <string>

namespace signorini {

namespace {

struct Parser {
    std::string_view text;
    size_t pos = 0;

    [[noreturn]] void fail(const std::string& what) const {
        throw std::invalid_argument("load expression: " + what + " at position " +
                                    std::to_string(pos));
    }

    void skip_ws() {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    }

    bool consume(char c) {
        skip_ws();
        if (pos < text.size() && text[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    }

    LoadFunction parse_expr() {
        LoadFunction lhs = parse_term();
        for (;;) {
            if (consume('+')) {
                LoadFunction rhs = parse_term();
                lhs = [lhs, rhs](Point2 p) { return lhs(p) + rhs(p); };
            } else if (consume('-')) {
                LoadFunction rhs = parse_term();
                lhs = [lhs, rhs](Point2 p) { return lhs(p) - rhs(p); };
            } else {
                return lhs;
            }
        }
    }

    LoadFunction parse_term() {
        LoadFunction lhs = parse_unary();
        for (;;) {
            if (consume('*')) {
                LoadFunction rhs = parse_unary();
                lhs = [lhs, rhs](Point2 p) { return lhs(p) * rhs(p); };
            } else if (consume('/')) {
                LoadFunction rhs = parse_unary();
                lhs = [lhs, rhs](Point2 p) { return lhs(p) / rhs(p); };
            } else {
                return lhs;
            }
        }
    }

    // exponentiation binds tighter than unary minus: -x^2 is -(x^2)
    LoadFunction parse_unary() {
        if (consume('-')) {
            LoadFunction inner = parse_unary();
            return [inner](Point2 p) { return -inner(p); };
        }
        return parse_power();
    }

    LoadFunction parse_power() {
        LoadFunction base = parse_primary();
        if (consume('^')) {
            LoadFunction expo = parse_unary();  // right associative
            return [base, expo](Point2 p) { return std::pow(base(p), expo(p)); };
        }
        return base;
    }

    LoadFunction parse_primary() {
        skip_ws();
        if (pos >= text.size()) fail("unexpected end of input");
        const char c = text[pos];
        if (c == '(') {
            ++pos;
            LoadFunction inner = parse_expr();
            if (!consume(')')) fail("expected ')'");
            return inner;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return parse_number();
        if (std::isalpha(static_cast<unsigned char>(c))) return parse_name();
        fail(std::string("unexpected character '") + c + "'");
    }

    LoadFunction parse_number() {
        size_t end = pos;
        while (end < text.size() &&
               (std::isdigit(static_cast<unsigned char>(text[end])) || text[end] == '.' ||
                text[end] == 'e' || text[end] == 'E' ||
                ((text[end] == '+' || text[end] == '-') && end > pos &&
                 (text[end - 1] == 'e' || text[end - 1] == 'E'))))
            ++end;
        const std::string token(text.substr(pos, end - pos));
        try {
            const double v = std::stod(token);
            pos = end;
            return [v](Point2) { return v; };
        } catch (...) {
            fail("bad number '" + token + "'");
        }
    }

    LoadFunction parse_name() {
        size_t end = pos;
        while (end < text.size() && std::isalpha(static_cast<unsigned char>(text[end]))) ++end;
        const std::string_view name = text.substr(pos, end - pos);
        pos = end;
        if (name == "x") return [](Point2 p) { return p.x; };
        if (name == "y") return [](Point2 p) { return p.y; };
        if (name == "pi") return [](Point2) { return std::numbers::pi; };
        if (name == "sin" || name == "cos" || name == "exp") {
            if (!consume('(')) fail("expected '(' after function name");
            LoadFunction arg = parse_expr();
            if (!consume(')')) fail("expected ')'");
            if (name == "sin") return [arg](Point2 p) { return std::sin(arg(p)); };
            if (name == "cos") return [arg](Point2 p) { return std::cos(arg(p)); };
            return [arg](Point2 p) { return std::exp(arg(p)); };
        }
        fail("unknown name '" + std::string(name) + "'");
    }
};

}  // namespace

LoadFunction compile_expression(std::string_view text) {
    Parser parser{text};
    LoadFunction f = parser.parse_expr();
    parser.skip_ws();
    if (parser.pos != text.size()) parser.fail("trailing input");
    return f;
}

}  // namespace signorini
