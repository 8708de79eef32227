#include "disconj/expr.hpp"

#include <array>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <optional>
#include <utility>

namespace disconj {

namespace {

enum class Kind {
    Number,
    Var,
    Add,
    Sub,
    Mul,
    Div,
    Pow,
    Neg,
    Sin,
    Cos,
    Tan,
    Cot,
    Exp,
    Log,
    Sqrt,
    Abs,
};

const char* kind_name(Kind k) {
    switch (k) {
        case Kind::Number: return "number";
        case Kind::Var: return "t";
        case Kind::Add: return "+";
        case Kind::Sub: return "-";
        case Kind::Mul: return "*";
        case Kind::Div: return "/";
        case Kind::Pow: return "^";
        case Kind::Neg: return "neg";
        case Kind::Sin: return "sin";
        case Kind::Cos: return "cos";
        case Kind::Tan: return "tan";
        case Kind::Cot: return "cot";
        case Kind::Exp: return "exp";
        case Kind::Log: return "log";
        case Kind::Sqrt: return "sqrt";
        case Kind::Abs: return "abs";
    }
    return "?";
}

bool is_binary(Kind k) {
    return k == Kind::Add || k == Kind::Sub || k == Kind::Mul || k == Kind::Div ||
           k == Kind::Pow;
}

}  // namespace

struct Expr::Node {
    Kind kind;
    double value = 0.0;  // Kind::Number only
    std::shared_ptr<const Node> a, b;
};

namespace {

using NodePtr = std::shared_ptr<const Expr::Node>;

NodePtr make_number(double v) {
    auto n = std::make_shared<Expr::Node>();
    n->kind = Kind::Number;
    n->value = v;
    return n;
}

double eval_node(const NodePtr& n, double t);

// Fold when every child is a literal and the evaluation is clean.
NodePtr make_node(Kind kind, NodePtr a = nullptr, NodePtr b = nullptr) {
    auto n = std::make_shared<Expr::Node>();
    n->kind = kind;
    n->a = std::move(a);
    n->b = std::move(b);
    bool constant = (!n->a || n->a->kind == Kind::Number) &&
                    (!n->b || n->b->kind == Kind::Number) && kind != Kind::Number &&
                    kind != Kind::Var;
    if (constant) {
        try {
            double v = eval_node(n, 0.0);
            if (std::isfinite(v)) return make_number(v);
        } catch (const EvalError&) {
            // keep symbolic; error surfaces at evaluation time
        }
    }
    return n;
}

double eval_node(const NodePtr& n, double t) {
    switch (n->kind) {
        case Kind::Number: return n->value;
        case Kind::Var: return t;
        case Kind::Add: return eval_node(n->a, t) + eval_node(n->b, t);
        case Kind::Sub: return eval_node(n->a, t) - eval_node(n->b, t);
        case Kind::Mul: return eval_node(n->a, t) * eval_node(n->b, t);
        case Kind::Div: {
            double num = eval_node(n->a, t);
            double den = eval_node(n->b, t);
            if (den == 0.0) throw EvalError("/", t, "division by zero");
            double v = num / den;
            if (!std::isfinite(v)) throw EvalError("/", t, "non-finite quotient");
            return v;
        }
        case Kind::Pow: {
            double base = eval_node(n->a, t);
            double expo = eval_node(n->b, t);
            double v = std::pow(base, expo);
            if (!std::isfinite(v))
                throw EvalError("^", t, "power outside the real domain");
            return v;
        }
        case Kind::Neg: return -eval_node(n->a, t);
        case Kind::Sin: return std::sin(eval_node(n->a, t));
        case Kind::Cos: return std::cos(eval_node(n->a, t));
        case Kind::Tan: {
            double u = eval_node(n->a, t);
            double c = std::cos(u);
            if (c == 0.0) throw EvalError("tan", t, "tan at an odd multiple of pi/2");
            double v = std::sin(u) / c;
            if (!std::isfinite(v)) throw EvalError("tan", t, "non-finite tangent");
            return v;
        }
        case Kind::Cot: {
            double u = eval_node(n->a, t);
            double s = std::sin(u);
            if (s == 0.0) throw EvalError("cot", t, "cot at a multiple of pi");
            double v = std::cos(u) / s;
            if (!std::isfinite(v)) throw EvalError("cot", t, "non-finite cotangent");
            return v;
        }
        case Kind::Exp: {
            double v = std::exp(eval_node(n->a, t));
            if (!std::isfinite(v)) throw EvalError("exp", t, "exp overflow");
            return v;
        }
        case Kind::Log: {
            double u = eval_node(n->a, t);
            if (u <= 0.0) throw EvalError("log", t, "log of a non-positive value");
            return std::log(u);
        }
        case Kind::Sqrt: {
            double u = eval_node(n->a, t);
            if (u < 0.0) throw EvalError("sqrt", t, "sqrt of a negative value");
            return std::sqrt(u);
        }
        case Kind::Abs: return std::fabs(eval_node(n->a, t));
    }
    throw std::logic_error("corrupt expression node");
}

bool node_has_var(const NodePtr& n) {
    if (!n) return false;
    if (n->kind == Kind::Var) return true;
    return node_has_var(n->a) || node_has_var(n->b);
}

NodePtr diff_node(const NodePtr& n) {
    switch (n->kind) {
        case Kind::Number: return make_number(0.0);
        case Kind::Var: return make_number(1.0);
        case Kind::Add: return make_node(Kind::Add, diff_node(n->a), diff_node(n->b));
        case Kind::Sub: return make_node(Kind::Sub, diff_node(n->a), diff_node(n->b));
        case Kind::Mul:
            return make_node(Kind::Add, make_node(Kind::Mul, diff_node(n->a), n->b),
                             make_node(Kind::Mul, n->a, diff_node(n->b)));
        case Kind::Div:
            // (u'v - uv') / v^2
            return make_node(
                Kind::Div,
                make_node(Kind::Sub, make_node(Kind::Mul, diff_node(n->a), n->b),
                          make_node(Kind::Mul, n->a, diff_node(n->b))),
                make_node(Kind::Pow, n->b, make_number(2.0)));
        case Kind::Pow: {
            if (!node_has_var(n->b)) {
                // u^c -> c * u^(c-1) * u'
                return make_node(
                    Kind::Mul,
                    make_node(Kind::Mul, n->b,
                              make_node(Kind::Pow, n->a,
                                        make_node(Kind::Sub, n->b, make_number(1.0)))),
                    diff_node(n->a));
            }
            if (!node_has_var(n->a)) {
                // c^v -> c^v * log(c) * v'
                return make_node(
                    Kind::Mul,
                    make_node(Kind::Mul, NodePtr(n), make_node(Kind::Log, n->a)),
                    diff_node(n->b));
            }
            // u^v -> u^v * (v' log u + v u'/u)
            return make_node(
                Kind::Mul, NodePtr(n),
                make_node(Kind::Add,
                          make_node(Kind::Mul, diff_node(n->b),
                                    make_node(Kind::Log, n->a)),
                          make_node(Kind::Div, make_node(Kind::Mul, n->b, diff_node(n->a)),
                                    n->a)));
        }
        case Kind::Neg: return make_node(Kind::Neg, diff_node(n->a));
        case Kind::Sin:
            return make_node(Kind::Mul, make_node(Kind::Cos, n->a), diff_node(n->a));
        case Kind::Cos:
            return make_node(Kind::Neg, make_node(Kind::Mul, make_node(Kind::Sin, n->a),
                                                  diff_node(n->a)));
        case Kind::Tan:
            // (1 + tan^2 u) u'
            return make_node(
                Kind::Mul,
                make_node(Kind::Add, make_number(1.0),
                          make_node(Kind::Pow, NodePtr(n), make_number(2.0))),
                diff_node(n->a));
        case Kind::Cot:
            return make_node(
                Kind::Neg,
                make_node(Kind::Mul,
                          make_node(Kind::Add, make_number(1.0),
                                    make_node(Kind::Pow, NodePtr(n), make_number(2.0))),
                          diff_node(n->a)));
        case Kind::Exp: return make_node(Kind::Mul, NodePtr(n), diff_node(n->a));
        case Kind::Log: return make_node(Kind::Div, diff_node(n->a), n->a);
        case Kind::Sqrt:
            return make_node(Kind::Div, diff_node(n->a),
                             make_node(Kind::Mul, make_number(2.0), NodePtr(n)));
        case Kind::Abs: throw NonDifferentiableError("abs");
    }
    throw std::logic_error("corrupt expression node");
}

NodePtr subst_node(const NodePtr& n, const NodePtr& repl) {
    if (!n) return nullptr;
    if (n->kind == Kind::Var) return repl;
    if (!node_has_var(n)) return n;
    return make_node(n->kind, subst_node(n->a, repl), subst_node(n->b, repl));
}

void print_node(const NodePtr& n, std::string& out) {
    if (n->kind == Kind::Number) {
        char buf[40];
        std::snprintf(buf, sizeof buf, "%.17g", n->value);
        if (n->value < 0) {
            out += '(';
            out += buf;
            out += ')';
        } else {
            out += buf;
        }
        return;
    }
    if (n->kind == Kind::Var) {
        out += 't';
        return;
    }
    if (is_binary(n->kind)) {
        out += '(';
        print_node(n->a, out);
        out += kind_name(n->kind);
        print_node(n->b, out);
        out += ')';
        return;
    }
    if (n->kind == Kind::Neg) {
        out += "(-";
        print_node(n->a, out);
        out += ')';
        return;
    }
    out += kind_name(n->kind);
    out += '(';
    print_node(n->a, out);
    out += ')';
}

// --- parser ---------------------------------------------------------------

struct Parser {
    std::string_view src;
    std::size_t pos = 0;

    void skip_ws() {
        while (pos < src.size() && std::isspace(static_cast<unsigned char>(src[pos])))
            ++pos;
    }

    bool at_end() {
        skip_ws();
        return pos >= src.size();
    }

    char peek() {
        skip_ws();
        return pos < src.size() ? src[pos] : '\0';
    }

    bool accept(char c) {
        if (peek() == c) {
            ++pos;
            return true;
        }
        return false;
    }

    [[noreturn]] void fail(const std::string& expected) {
        skip_ws();
        throw ParseError(pos, expected);
    }

    NodePtr parse_expression() {
        NodePtr lhs = parse_term();
        for (;;) {
            if (accept('+'))
                lhs = make_node(Kind::Add, lhs, parse_term());
            else if (accept('-'))
                lhs = make_node(Kind::Sub, lhs, parse_term());
            else
                return lhs;
        }
    }

    NodePtr parse_term() {
        NodePtr lhs = parse_unary();
        for (;;) {
            if (accept('*'))
                lhs = make_node(Kind::Mul, lhs, parse_unary());
            else if (accept('/'))
                lhs = make_node(Kind::Div, lhs, parse_unary());
            else
                return lhs;
        }
    }

    NodePtr parse_unary() {
        if (accept('-')) return make_node(Kind::Neg, parse_unary());
        if (accept('+')) return parse_unary();
        return parse_power();
    }

    NodePtr parse_power() {
        NodePtr base = parse_primary();
        if (accept('^')) {
            // right-associative; the exponent may carry a unary minus
            return make_node(Kind::Pow, base, parse_unary());
        }
        return base;
    }

    NodePtr parse_primary() {
        skip_ws();
        if (pos >= src.size()) fail("a number, 't', a constant, a function call, or '('");
        char c = src[pos];
        if (c == '(') {
            ++pos;
            NodePtr inner = parse_expression();
            if (!accept(')')) fail("')'");
            return inner;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return parse_number();
        if (std::isalpha(static_cast<unsigned char>(c))) return parse_identifier();
        fail("a number, 't', a constant, a function call, or '('");
    }

    NodePtr parse_number() {
        std::size_t start = pos;
        while (pos < src.size() &&
               (std::isdigit(static_cast<unsigned char>(src[pos])) || src[pos] == '.'))
            ++pos;
        if (pos < src.size() && (src[pos] == 'e' || src[pos] == 'E')) {
            std::size_t mark = pos;
            ++pos;
            if (pos < src.size() && (src[pos] == '+' || src[pos] == '-')) ++pos;
            if (pos < src.size() && std::isdigit(static_cast<unsigned char>(src[pos]))) {
                while (pos < src.size() &&
                       std::isdigit(static_cast<unsigned char>(src[pos])))
                    ++pos;
            } else {
                pos = mark;  // trailing 'e' belongs to an identifier or is junk
            }
        }
        std::string text(src.substr(start, pos - start));
        try {
            std::size_t used = 0;
            double v = std::stod(text, &used);
            if (used != text.size()) throw std::invalid_argument(text);
            return make_number(v);
        } catch (const std::exception&) {
            pos = start;
            fail("a numeric literal");
        }
    }

    NodePtr parse_identifier() {
        std::size_t start = pos;
        while (pos < src.size() &&
               (std::isalnum(static_cast<unsigned char>(src[pos])) || src[pos] == '_'))
            ++pos;
        std::string name(src.substr(start, pos - start));
        if (name == "t") {
            auto n = std::make_shared<Expr::Node>();
            n->kind = Kind::Var;
            return n;
        }
        if (name == "pi") return make_number(std::numbers::pi);
        if (name == "e") return make_number(std::numbers::e);

        static constexpr std::array<std::pair<const char*, Kind>, 8> functions = {{
            {"sin", Kind::Sin},
            {"cos", Kind::Cos},
            {"tan", Kind::Tan},
            {"cot", Kind::Cot},
            {"exp", Kind::Exp},
            {"log", Kind::Log},
            {"sqrt", Kind::Sqrt},
            {"abs", Kind::Abs},
        }};
        for (const auto& [fname, kind] : functions) {
            if (name == fname) {
                if (!accept('(')) fail("'(' after function name");
                NodePtr arg = parse_expression();
                if (!accept(')')) fail("')'");
                return make_node(kind, arg);
            }
        }
        pos = start;
        throw ParseError(start, "a known identifier (t, pi, e, sin, cos, tan, cot, "
                                "exp, log, sqrt, abs); got '" + name + "'");
    }
};

}  // namespace

ParseError::ParseError(std::size_t offset, const std::string& expected)
    : std::runtime_error("syntax error at offset " + std::to_string(offset) +
                         ": expected " + expected),
      offset_(offset),
      expected_(expected) {}

EvalError::EvalError(const std::string& node, double t, const std::string& what)
    : std::runtime_error("domain error in '" + node + "' at t=" + std::to_string(t) +
                         ": " + what),
      node_(node),
      t_(t) {}

NonDifferentiableError::NonDifferentiableError(const std::string& node)
    : std::runtime_error("expression is not differentiable: contains '" + node + "'") {}

Expr Expr::number(double value) { return Expr(make_number(value)); }

Expr Expr::variable() {
    auto n = std::make_shared<Node>();
    n->kind = Kind::Var;
    return Expr(std::move(n));
}

double Expr::evaluate(double t) const {
    if (!node_) throw std::logic_error("evaluating an empty expression");
    double v = eval_node(node_, t);
    if (!std::isfinite(v)) throw EvalError(kind_name(node_->kind), t, "non-finite value");
    return v;
}

Expr Expr::derivative() const {
    if (!node_) throw std::logic_error("differentiating an empty expression");
    return Expr(diff_node(node_));
}

std::string Expr::str() const {
    if (!node_) return "";
    std::string out;
    print_node(node_, out);
    return out;
}

Expr Expr::substitute(const Expr& replacement) const {
    if (!node_) throw std::logic_error("substituting into an empty expression");
    if (!replacement.node_) throw std::logic_error("substituting an empty expression");
    return Expr(subst_node(node_, replacement.node_));
}

bool Expr::has_variable() const { return node_has_var(node_); }

Expr parse(std::string_view source) {
    Parser p{source};
    if (p.at_end()) throw ParseError(p.pos, "a non-empty expression");
    NodePtr root = p.parse_expression();
    if (!p.at_end()) p.fail("end of input or an operator");
    return Expr(std::move(root));
}

Expr operator+(const Expr& a, const Expr& b) {
    return Expr(make_node(Kind::Add, a.node(), b.node()));
}
Expr operator-(const Expr& a, const Expr& b) {
    return Expr(make_node(Kind::Sub, a.node(), b.node()));
}
Expr operator*(const Expr& a, const Expr& b) {
    return Expr(make_node(Kind::Mul, a.node(), b.node()));
}
Expr operator/(const Expr& a, const Expr& b) {
    return Expr(make_node(Kind::Div, a.node(), b.node()));
}
Expr operator-(const Expr& a) { return Expr(make_node(Kind::Neg, a.node())); }
Expr pow(const Expr& base, const Expr& exponent) {
    return Expr(make_node(Kind::Pow, base.node(), exponent.node()));
}
Expr abs(const Expr& a) { return Expr(make_node(Kind::Abs, a.node())); }

}  // namespace disconj
