#pragma once

#include <cctype>
#include <cmath>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>

#include "fdiv/core_function.hpp"

namespace fdv {
namespace expr {

struct Node;
using NodePtr = std::shared_ptr<const Node>;

enum class BinOp { Add, Sub, Mul, Div, Pow };
enum class CallFn { Ln, Log2, Exp, Sqrt, Abs };

struct Number { double value; };
struct Var {};
struct Neg { NodePtr arg; };
struct Binary { BinOp op; NodePtr lhs; NodePtr rhs; };
struct Call { CallFn fn; NodePtr arg; };

struct Node {
    std::variant<Number, Var, Neg, Binary, Call> v;
};

inline NodePtr make(std::variant<Number, Var, Neg, Binary, Call> v) {
    return std::make_shared<const Node>(Node{std::move(v)});
}

struct ParseError : std::runtime_error {
    std::size_t offset;
    std::string expected;
    std::string found;

    ParseError(std::size_t off, std::string exp, std::string got)
        : std::runtime_error("parse error at offset " + std::to_string(off) + ": expected " + exp +
                             ", found " + (got.empty() ? "end of input" : "'" + got + "'")),
          offset(off),
          expected(std::move(exp)),
          found(std::move(got)) {}
};

namespace detail {

class Parser {
public:
    explicit Parser(std::string_view src) : src_(src) {}

    NodePtr run() {
        NodePtr e = expression();
        skip_ws();
        if (pos_ != src_.size()) fail("end of input");
        return e;
    }

private:
    std::string_view src_;
    std::size_t pos_ = 0;

    [[noreturn]] void fail(const std::string& expected) {
        std::string found = pos_ < src_.size() ? std::string(1, src_[pos_]) : std::string();
        throw ParseError(pos_, expected, found);
    }

    void skip_ws() {
        while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    }

    std::optional<char> peek() {
        skip_ws();
        if (pos_ >= src_.size()) return std::nullopt;
        return src_[pos_];
    }

    bool eat(char c) {
        if (peek() == c) { ++pos_; return true; }
        return false;
    }

    NodePtr expression() {
        NodePtr lhs = term();
        while (auto c = peek()) {
            if (*c != '+' && *c != '-') break;
            ++pos_;
            NodePtr rhs = term();
            lhs = make(Binary{*c == '+' ? BinOp::Add : BinOp::Sub, lhs, rhs});
        }
        return lhs;
    }

    NodePtr term() {
        NodePtr lhs = factor();
        while (auto c = peek()) {
            if (*c != '*' && *c != '/') break;
            ++pos_;
            NodePtr rhs = factor();
            lhs = make(Binary{*c == '*' ? BinOp::Mul : BinOp::Div, lhs, rhs});
        }
        return lhs;
    }

    // '^' binds tighter than unary minus and is right-associative:
    // "-t^2" is -(t^2), "2^3^2" is 2^(3^2).
    NodePtr factor() {
        if (eat('-')) return make(Neg{factor()});
        NodePtr base = atom();
        if (eat('^')) return make(Binary{BinOp::Pow, base, factor()});
        return base;
    }

    NodePtr atom() {
        auto c = peek();
        if (!c) fail("a number, 't', a function call or '('");
        if (*c == '(') {
            ++pos_;
            NodePtr e = expression();
            if (!eat(')')) fail("')'");
            return e;
        }
        if (std::isdigit(static_cast<unsigned char>(*c)) || *c == '.') return number();
        if (std::isalpha(static_cast<unsigned char>(*c))) return identifier();
        fail("a number, 't', a function call or '('");
    }

    NodePtr number() {
        std::size_t start = pos_;
        while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
        if (pos_ < src_.size() && src_[pos_] == '.') {
            ++pos_;
            while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
        }
        if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
            std::size_t mark = pos_++;
            if (pos_ < src_.size() && (src_[pos_] == '+' || src_[pos_] == '-')) ++pos_;
            if (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
                while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
            } else {
                pos_ = mark; // 'e' was not an exponent
            }
        }
        if (pos_ == start || (pos_ == start + 1 && src_[start] == '.')) fail("a number");
        return make(Number{std::stod(std::string(src_.substr(start, pos_ - start)))});
    }

    NodePtr identifier() {
        std::size_t start = pos_;
        while (pos_ < src_.size() && std::isalnum(static_cast<unsigned char>(src_[pos_]))) ++pos_;
        std::string name(src_.substr(start, pos_ - start));
        if (name == "t") return make(Var{});
        CallFn fn;
        if (name == "ln") fn = CallFn::Ln;
        else if (name == "log2") fn = CallFn::Log2;
        else if (name == "exp") fn = CallFn::Exp;
        else if (name == "sqrt") fn = CallFn::Sqrt;
        else if (name == "abs") fn = CallFn::Abs;
        else {
            pos_ = start;
            fail("'t' or one of ln/log2/exp/sqrt/abs");
        }
        if (!eat('(')) fail("'('");
        NodePtr arg = expression();
        if (!eat(')')) fail("')'");
        return make(Call{fn, arg});
    }
};

} // namespace detail

inline NodePtr parse(std::string_view src) { return detail::Parser(src).run(); }

inline double eval(const Node& n, double t) {
    return std::visit(
        [t](const auto& node) -> double {
            using T = std::decay_t<decltype(node)>;
            if constexpr (std::is_same_v<T, Number>) return node.value;
            else if constexpr (std::is_same_v<T, Var>) return t;
            else if constexpr (std::is_same_v<T, Neg>) return -eval(*node.arg, t);
            else if constexpr (std::is_same_v<T, Binary>) {
                double a = eval(*node.lhs, t), b = eval(*node.rhs, t);
                switch (node.op) {
                case BinOp::Add: return a + b;
                case BinOp::Sub: return a - b;
                case BinOp::Mul: return a * b;
                case BinOp::Div: return b == 0.0 ? std::numeric_limits<double>::quiet_NaN() : a / b;
                case BinOp::Pow: return std::pow(a, b);
                }
                return std::numeric_limits<double>::quiet_NaN();
            } else { // Call
                double a = eval(*node.arg, t);
                switch (node.fn) {
                case CallFn::Ln: return a > 0.0 ? std::log(a) : std::numeric_limits<double>::quiet_NaN();
                case CallFn::Log2: return a > 0.0 ? std::log2(a) : std::numeric_limits<double>::quiet_NaN();
                case CallFn::Exp: return std::exp(a);
                case CallFn::Sqrt: return a >= 0.0 ? std::sqrt(a) : std::numeric_limits<double>::quiet_NaN();
                case CallFn::Abs: return std::fabs(a);
                }
                return std::numeric_limits<double>::quiet_NaN();
            }
        },
        n.v);
}

// Canonical fully-parenthesized rendering; parse(print(parse(s))) == parse(s).
inline std::string print(const Node& n) {
    return std::visit(
        [](const auto& node) -> std::string {
            using T = std::decay_t<decltype(node)>;
            if constexpr (std::is_same_v<T, Number>) {
                char buf[32];
                std::snprintf(buf, sizeof buf, "%.17g", node.value);
                return buf;
            } else if constexpr (std::is_same_v<T, Var>) return "t";
            else if constexpr (std::is_same_v<T, Neg>) return "(-" + print(*node.arg) + ")";
            else if constexpr (std::is_same_v<T, Binary>) {
                const char* op = node.op == BinOp::Add   ? "+"
                                 : node.op == BinOp::Sub ? "-"
                                 : node.op == BinOp::Mul ? "*"
                                 : node.op == BinOp::Div ? "/"
                                                         : "^";
                return "(" + print(*node.lhs) + op + print(*node.rhs) + ")";
            } else {
                const char* fn = node.fn == CallFn::Ln     ? "ln"
                                 : node.fn == CallFn::Log2 ? "log2"
                                 : node.fn == CallFn::Exp  ? "exp"
                                 : node.fn == CallFn::Sqrt ? "sqrt"
                                                           : "abs";
                return std::string(fn) + "(" + print(*node.arg) + ")";
            }
        },
        n.v);
}

inline bool equal(const Node& a, const Node& b) { return print(a) == print(b); }

// Interprets the AST as a core function. Omitted limits are estimated by
// extrapolation and flagged as such on the result.
inline CoreFunction compile(NodePtr e, Interval domain, std::optional<extended_real> limit_at_zero = {},
                            std::optional<extended_real> slope_at_infinity = {},
                            std::string name = "user") {
    if (!(domain.lo >= 0.0) || !(domain.hi > domain.lo))
        throw std::domain_error("compile: domain must be a nonempty interval in (0, inf)");
    auto fn = [e](double t) { return eval(*e, t); };
    bool estimated = false;
    extended_real lz, si;
    if (limit_at_zero) lz = *limit_at_zero;
    else if (domain.lo == 0.0) { lz = estimate_limit_at_zero(fn, domain.lo); estimated = true; }
    else lz = undeclared();
    if (slope_at_infinity) si = *slope_at_infinity;
    else if (domain.hi == kPlusInf) { si = estimate_slope_at_infinity(fn, domain.hi); estimated = true; }
    else si = undeclared();
    return CoreFunction(std::move(name), domain, fn, lz, si, estimated);
}

} // namespace expr
} // namespace fdv
