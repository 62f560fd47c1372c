#pragma once

// Small expression language for height functions: parsing, evaluation and
// exact symbolic differentiation.  Grammar:
//
//   expr   := term (('+'|'-') term)*
//   term   := factor (('*'|'/') factor)*
//   factor := base ('^' factor)?          -- right associative
//   base   := number | ident | ident '(' expr ')' | '(' expr ')' | '-' factor
//
// '^' binds tighter than unary minus, so -x^2 == -(x^2).
// Known functions: sin cos tan sinh cosh tanh exp ln sqrt abs sign.

#include <map>
#include <memory>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace surfq::expr {

struct ParseError : std::runtime_error {
    std::size_t offset;
    std::string expected;
    ParseError(std::size_t off, std::string exp);
};

struct UnknownIdentifier : std::runtime_error {
    std::string name;
    std::size_t offset;
    UnknownIdentifier(std::string ident, std::size_t off);
};

struct UnboundVariable : std::runtime_error {
    std::string name;
    explicit UnboundVariable(std::string ident);
};

struct DomainError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Evaluating d/dx |x| at x = 0.
struct NonDifferentiable : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class NodeKind { Number, Variable, Negate, Binary, Call };
enum class BinaryOp { Add, Sub, Mul, Div, Pow };

struct Node;
using NodePtr = std::shared_ptr<const Node>;

struct Node {
    NodeKind kind;
    double number = 0.0;   // Number
    std::string name;      // Variable / Call
    BinaryOp op = BinaryOp::Add;
    NodePtr lhs, rhs;      // Binary: both; Negate/Call: lhs only
};

// Bindings for free variables and named parameters.
struct EvalContext {
    std::map<std::string, double, std::less<>> values;

    EvalContext() = default;
    EvalContext(std::initializer_list<std::pair<const std::string, double>> init)
        : values(init) {}
    EvalContext& bind(const std::string& name, double value) {
        values[name] = value;
        return *this;
    }
};

class Expr {
public:
    Expr() = default;

    // `identifiers` is the set of legal variable/parameter names; anything
    // else that is not a function call raises UnknownIdentifier.
    static Expr parse(std::string_view text, const std::vector<std::string>& identifiers);

    Expr derivative(const std::string& variable) const;
    double eval(const EvalContext& ctx) const;
    std::string str() const;

    bool valid() const { return root_ != nullptr; }
    const NodePtr& root() const { return root_; }
    bool same_structure(const Expr& other) const;

    // Free variables and parameters appearing in the tree.
    std::set<std::string> identifiers() const;

private:
    explicit Expr(NodePtr root) : root_(std::move(root)) {}
    NodePtr root_;
};

bool is_known_function(std::string_view name);

}  // namespace surfq::expr
