#ifndef DISCONJ_EXPR_HPP
#define DISCONJ_EXPR_HPP

#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>

namespace disconj {

/// Syntax error produced by parse(); offset is a byte position into the source.
class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t offset, const std::string& expected);
    std::size_t offset() const noexcept { return offset_; }
    const std::string& expected() const noexcept { return expected_; }

private:
    std::size_t offset_;
    std::string expected_;
};

/// Domain error during evaluation (log of a non-positive value, division by
/// zero, cot at a multiple of pi, ...). Names the offending node and the t
/// at which evaluation failed.
class EvalError : public std::runtime_error {
public:
    EvalError(const std::string& node, double t, const std::string& what);
    const std::string& node() const noexcept { return node_; }
    double at() const noexcept { return t_; }

private:
    std::string node_;
    double t_;
};

/// Thrown by Expr::derivative() when the tree contains abs().
class NonDifferentiableError : public std::runtime_error {
public:
    explicit NonDifferentiableError(const std::string& node);
};

/// Immutable expression tree in the single variable t.
///
/// Values are cheap to copy (shared structure) and safe to evaluate
/// concurrently from multiple threads. Construction folds constant
/// subtrees; nothing else is simplified.
class Expr {
public:
    Expr() = default;  ///< empty expression; evaluating it throws

    static Expr number(double value);
    static Expr variable();

    double evaluate(double t) const;
    double operator()(double t) const { return evaluate(t); }

    /// Exact symbolic derivative. Rejects trees containing abs().
    Expr derivative() const;

    /// Canonical fully parenthesized form; parse(str()) evaluates identically.
    std::string str() const;

    /// Replace every occurrence of t by `replacement`.
    Expr substitute(const Expr& replacement) const;

    bool empty() const noexcept { return !node_; }
    /// False when the tree contains no variable node (symbolically constant).
    bool has_variable() const;

    struct Node;  // opaque; defined in expr.cpp

    explicit Expr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
    const std::shared_ptr<const Node>& node() const noexcept { return node_; }

private:
    std::shared_ptr<const Node> node_;
};

/// Parse an infix expression over t with functions
/// sin, cos, tan, cot, exp, log, sqrt, abs, constants pi and e,
/// operators + - * / ^ (right-associative ^, unary minus below ^).
Expr parse(std::string_view source);

Expr operator+(const Expr& a, const Expr& b);
Expr operator-(const Expr& a, const Expr& b);
Expr operator*(const Expr& a, const Expr& b);
Expr operator/(const Expr& a, const Expr& b);
Expr operator-(const Expr& a);
Expr pow(const Expr& base, const Expr& exponent);
Expr abs(const Expr& a);

}  // namespace disconj

#endif
