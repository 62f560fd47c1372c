#include "surfq/expr.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <sstream>

namespace surfq::expr {

namespace {

constexpr std::array<std::string_view, 11> kFunctions = {
    "sin", "cos", "tan", "sinh", "cosh", "tanh", "exp", "ln", "sqrt", "abs", "sign"};

NodePtr make_number(double v) {
    auto n = std::make_shared<Node>();
    n->kind = NodeKind::Number;
    n->number = v;
    return n;
}

NodePtr make_variable(std::string name) {
    auto n = std::make_shared<Node>();
    n->kind = NodeKind::Variable;
    n->name = std::move(name);
    return n;
}

bool is_number(const NodePtr& n, double v) {
    return n->kind == NodeKind::Number && n->number == v;
}

// Smart constructors with constant folding; arithmetic identities with a
// literal 0/1 collapse so derivative trees stay evaluable in finite time.
NodePtr make_negate(NodePtr a) {
    if (a->kind == NodeKind::Number) return make_number(-a->number);
    if (a->kind == NodeKind::Negate) return a->lhs;
    auto n = std::make_shared<Node>();
    n->kind = NodeKind::Negate;
    n->lhs = std::move(a);
    return n;
}

NodePtr make_binary(BinaryOp op, NodePtr a, NodePtr b) {
    const bool an = a->kind == NodeKind::Number;
    const bool bn = b->kind == NodeKind::Number;
    switch (op) {
        case BinaryOp::Add:
            if (an && bn) return make_number(a->number + b->number);
            if (is_number(a, 0.0)) return b;
            if (is_number(b, 0.0)) return a;
            break;
        case BinaryOp::Sub:
            if (an && bn) return make_number(a->number - b->number);
            if (is_number(b, 0.0)) return a;
            if (is_number(a, 0.0)) return make_negate(b);
            break;
        case BinaryOp::Mul:
            if (an && bn) return make_number(a->number * b->number);
            if (is_number(a, 0.0) || is_number(b, 0.0)) return make_number(0.0);
            if (is_number(a, 1.0)) return b;
            if (is_number(b, 1.0)) return a;
            break;
        case BinaryOp::Div:
            if (an && bn && b->number != 0.0) return make_number(a->number / b->number);
            if (is_number(a, 0.0)) return make_number(0.0);
            if (is_number(b, 1.0)) return a;
            break;
        case BinaryOp::Pow:
            if (an && bn) {
                double v = std::pow(a->number, b->number);
                if (std::isfinite(v)) return make_number(v);
            }
            if (is_number(b, 1.0)) return a;
            if (is_number(b, 0.0)) return make_number(1.0);
            break;
    }
    auto n = std::make_shared<Node>();
    n->kind = NodeKind::Binary;
    n->op = op;
    n->lhs = std::move(a);
    n->rhs = std::move(b);
    return n;
}

NodePtr make_call(std::string name, NodePtr arg) {
    auto n = std::make_shared<Node>();
    n->kind = NodeKind::Call;
    n->name = std::move(name);
    n->lhs = std::move(arg);
    return n;
}

class Parser {
public:
    Parser(std::string_view text, const std::vector<std::string>& identifiers)
        : text_(text), identifiers_(identifiers.begin(), identifiers.end()) {}

    NodePtr run() {
        if (text_.empty()) throw ParseError(0, "non-empty expression");
        NodePtr e = parse_expr();
        skip_ws();
        if (pos_ != text_.size()) throw ParseError(pos_, "end of input or operator");
        return e;
    }

private:
    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    char peek() {
        skip_ws();
        return pos_ < text_.size() ? text_[pos_] : '\0';
    }

    bool consume(char c) {
        if (peek() == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    NodePtr parse_expr() {
        NodePtr lhs = parse_term();
        for (;;) {
            if (consume('+')) lhs = make_binary(BinaryOp::Add, lhs, parse_term());
            else if (consume('-')) lhs = make_binary(BinaryOp::Sub, lhs, parse_term());
            else return lhs;
        }
    }

    NodePtr parse_term() {
        NodePtr lhs = parse_factor();
        for (;;) {
            if (consume('*')) lhs = make_binary(BinaryOp::Mul, lhs, parse_factor());
            else if (consume('/')) lhs = make_binary(BinaryOp::Div, lhs, parse_factor());
            else return lhs;
        }
    }

    NodePtr parse_factor() {
        NodePtr base = parse_base();
        if (consume('^')) return make_binary(BinaryOp::Pow, base, parse_factor());
        return base;
    }

    NodePtr parse_base() {
        char c = peek();
        if (c == '-') {
            ++pos_;
            return make_negate(parse_factor());
        }
        if (c == '(') {
            ++pos_;
            NodePtr e = parse_expr();
            if (!consume(')')) throw ParseError(pos_, "')'");
            return e;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return parse_number();
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return parse_ident();
        throw ParseError(pos_, "number, identifier, '(' or '-'");
    }

    NodePtr parse_number() {
        skip_ws();
        const std::size_t start = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        if (pos_ < text_.size() && text_[pos_] == '.') {
            ++pos_;
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        }
        if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
            std::size_t mark = pos_++;
            if (pos_ < text_.size() && (text_[pos_] == '+' || text_[pos_] == '-')) ++pos_;
            if (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
                while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
            } else {
                pos_ = mark;  // 'e' was not an exponent
            }
        }
        double value = 0.0;
        auto res = std::from_chars(text_.data() + start, text_.data() + pos_, value);
        if (res.ec != std::errc() || res.ptr != text_.data() + pos_)
            throw ParseError(start, "numeric literal");
        return make_number(value);
    }

    NodePtr parse_ident() {
        skip_ws();
        const std::size_t start = pos_;
        while (pos_ < text_.size() &&
               (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
            ++pos_;
        std::string name(text_.substr(start, pos_ - start));
        if (peek() == '(') {
            if (!is_known_function(name)) throw UnknownIdentifier(name, start);
            ++pos_;
            NodePtr arg = parse_expr();
            if (!consume(')')) throw ParseError(pos_, "')'");
            return make_call(std::move(name), std::move(arg));
        }
        if (!identifiers_.count(name)) throw UnknownIdentifier(name, start);
        return make_variable(std::move(name));
    }

    std::string_view text_;
    std::set<std::string, std::less<>> identifiers_;
    std::size_t pos_ = 0;
};

double eval_node(const Node& n, const EvalContext& ctx) {
    switch (n.kind) {
        case NodeKind::Number:
            return n.number;
        case NodeKind::Variable: {
            auto it = ctx.values.find(n.name);
            if (it == ctx.values.end()) throw UnboundVariable(n.name);
            return it->second;
        }
        case NodeKind::Negate:
            return -eval_node(*n.lhs, ctx);
        case NodeKind::Binary: {
            const double a = eval_node(*n.lhs, ctx);
            const double b = eval_node(*n.rhs, ctx);
            switch (n.op) {
                case BinaryOp::Add: return a + b;
                case BinaryOp::Sub: return a - b;
                case BinaryOp::Mul: return a * b;
                case BinaryOp::Div: return a / b;
                case BinaryOp::Pow: return std::pow(a, b);
            }
            return 0.0;
        }
        case NodeKind::Call: {
            const double a = eval_node(*n.lhs, ctx);
            if (n.name == "sin") return std::sin(a);
            if (n.name == "cos") return std::cos(a);
            if (n.name == "tan") return std::tan(a);
            if (n.name == "sinh") return std::sinh(a);
            if (n.name == "cosh") return std::cosh(a);
            if (n.name == "tanh") return std::tanh(a);
            if (n.name == "exp") return std::exp(a);
            if (n.name == "ln") {
                if (a <= 0.0) throw DomainError("ln of non-positive argument");
                return std::log(a);
            }
            if (n.name == "sqrt") {
                if (a < 0.0) throw DomainError("sqrt of negative argument");
                return std::sqrt(a);
            }
            if (n.name == "abs") return std::abs(a);
            if (n.name == "sign") {
                if (a == 0.0) throw NonDifferentiable("derivative of abs at 0");
                return a > 0.0 ? 1.0 : -1.0;
            }
            throw DomainError("unknown function: " + n.name);
        }
    }
    return 0.0;
}

NodePtr diff_node(const NodePtr& n, const std::string& var);

NodePtr diff_call(const NodePtr& n, const std::string& var) {
    const NodePtr& u = n->lhs;
    NodePtr du = diff_node(u, var);
    const std::string& f = n->name;
    NodePtr outer;
    if (f == "sin") outer = make_call("cos", u);
    else if (f == "cos") outer = make_negate(make_call("sin", u));
    else if (f == "tan")
        outer = make_binary(BinaryOp::Div, make_number(1.0),
                            make_binary(BinaryOp::Pow, make_call("cos", u), make_number(2.0)));
    else if (f == "sinh") outer = make_call("cosh", u);
    else if (f == "cosh") outer = make_call("sinh", u);
    else if (f == "tanh")
        outer = make_binary(BinaryOp::Div, make_number(1.0),
                            make_binary(BinaryOp::Pow, make_call("cosh", u), make_number(2.0)));
    else if (f == "exp") outer = make_call("exp", u);
    else if (f == "ln") outer = make_binary(BinaryOp::Div, make_number(1.0), u);
    else if (f == "sqrt")
        outer = make_binary(BinaryOp::Div, make_number(0.5), make_call("sqrt", u));
    else if (f == "abs") outer = make_call("sign", u);
    else if (f == "sign") outer = make_number(0.0);
    else throw DomainError("cannot differentiate function: " + f);
    return make_binary(BinaryOp::Mul, outer, du);
}

NodePtr diff_node(const NodePtr& n, const std::string& var) {
    switch (n->kind) {
        case NodeKind::Number:
            return make_number(0.0);
        case NodeKind::Variable:
            return make_number(n->name == var ? 1.0 : 0.0);
        case NodeKind::Negate:
            return make_negate(diff_node(n->lhs, var));
        case NodeKind::Binary: {
            const NodePtr& f = n->lhs;
            const NodePtr& g = n->rhs;
            switch (n->op) {
                case BinaryOp::Add:
                    return make_binary(BinaryOp::Add, diff_node(f, var), diff_node(g, var));
                case BinaryOp::Sub:
                    return make_binary(BinaryOp::Sub, diff_node(f, var), diff_node(g, var));
                case BinaryOp::Mul:
                    return make_binary(
                        BinaryOp::Add,
                        make_binary(BinaryOp::Mul, diff_node(f, var), g),
                        make_binary(BinaryOp::Mul, f, diff_node(g, var)));
                case BinaryOp::Div:
                    return make_binary(
                        BinaryOp::Div,
                        make_binary(BinaryOp::Sub,
                                    make_binary(BinaryOp::Mul, diff_node(f, var), g),
                                    make_binary(BinaryOp::Mul, f, diff_node(g, var))),
                        make_binary(BinaryOp::Pow, g, make_number(2.0)));
                case BinaryOp::Pow: {
                    if (g->kind == NodeKind::Number) {
                        // d f^c = c f^(c-1) f'
                        NodePtr p = make_binary(BinaryOp::Pow, f, make_number(g->number - 1.0));
                        return make_binary(BinaryOp::Mul,
                                           make_binary(BinaryOp::Mul, make_number(g->number), p),
                                           diff_node(f, var));
                    }
                    // d f^g = f^g (g' ln f + g f'/f)
                    NodePtr t1 = make_binary(BinaryOp::Mul, diff_node(g, var), make_call("ln", f));
                    NodePtr t2 = make_binary(BinaryOp::Div,
                                             make_binary(BinaryOp::Mul, g, diff_node(f, var)), f);
                    return make_binary(BinaryOp::Mul, make_binary(BinaryOp::Pow, f, g),
                                       make_binary(BinaryOp::Add, t1, t2));
                }
            }
            return make_number(0.0);
        }
        case NodeKind::Call:
            return diff_call(n, var);
    }
    return make_number(0.0);
}

int precedence(const Node& n) {
    switch (n.kind) {
        case NodeKind::Binary:
            switch (n.op) {
                case BinaryOp::Add:
                case BinaryOp::Sub: return 1;
                case BinaryOp::Mul:
                case BinaryOp::Div: return 2;
                case BinaryOp::Pow: return 4;
            }
            return 1;
        case NodeKind::Negate: return 3;
        default: return 5;
    }
}

void print_node(std::ostream& os, const Node& n);

void print_child(std::ostream& os, const Node& parent, const Node& child, bool needs_parens) {
    bool parens = needs_parens || precedence(child) < precedence(parent);
    if (parens) os << '(';
    print_node(os, child);
    if (parens) os << ')';
}

void print_node(std::ostream& os, const Node& n) {
    switch (n.kind) {
        case NodeKind::Number: {
            std::ostringstream tmp;
            tmp.precision(17);
            tmp << n.number;
            std::string s = tmp.str();
            if (!s.empty() && s[0] == '-') {
                os << '(' << s << ')';
            } else {
                os << s;
            }
            break;
        }
        case NodeKind::Variable:
            os << n.name;
            break;
        case NodeKind::Negate:
            os << '-';
            print_child(os, n, *n.lhs, precedence(*n.lhs) <= precedence(n) &&
                                           n.lhs->kind == NodeKind::Binary &&
                                           (n.lhs->op == BinaryOp::Add || n.lhs->op == BinaryOp::Sub ||
                                            n.lhs->op == BinaryOp::Mul || n.lhs->op == BinaryOp::Div));
            break;
        case NodeKind::Binary: {
            const char* op = "?";
            switch (n.op) {
                case BinaryOp::Add: op = "+"; break;
                case BinaryOp::Sub: op = "-"; break;
                case BinaryOp::Mul: op = "*"; break;
                case BinaryOp::Div: op = "/"; break;
                case BinaryOp::Pow: op = "^"; break;
            }
            // left child needs parens on equal precedence for '-' '/' right-assoc safety,
            // right child needs them except for right-assoc '^'
            bool l_eq = precedence(*n.lhs) == precedence(n) && n.op == BinaryOp::Pow;
            bool r_eq = precedence(*n.rhs) == precedence(n) && n.op != BinaryOp::Pow;
            print_child(os, n, *n.lhs, l_eq);
            os << op;
            print_child(os, n, *n.rhs, r_eq);
            break;
        }
        case NodeKind::Call:
            os << n.name << '(';
            print_node(os, *n.lhs);
            os << ')';
            break;
    }
}

bool same_node(const Node& a, const Node& b) {
    if (a.kind != b.kind) return false;
    switch (a.kind) {
        case NodeKind::Number:
            return a.number == b.number ||
                   (std::isnan(a.number) && std::isnan(b.number));
        case NodeKind::Variable:
            return a.name == b.name;
        case NodeKind::Negate:
            return same_node(*a.lhs, *b.lhs);
        case NodeKind::Binary:
            return a.op == b.op && same_node(*a.lhs, *b.lhs) && same_node(*a.rhs, *b.rhs);
        case NodeKind::Call:
            return a.name == b.name && same_node(*a.lhs, *b.lhs);
    }
    return false;
}

void collect_identifiers(const Node& n, std::set<std::string>& out) {
    switch (n.kind) {
        case NodeKind::Variable:
            out.insert(n.name);
            break;
        case NodeKind::Negate:
        case NodeKind::Call:
            collect_identifiers(*n.lhs, out);
            break;
        case NodeKind::Binary:
            collect_identifiers(*n.lhs, out);
            collect_identifiers(*n.rhs, out);
            break;
        default:
            break;
    }
}

}  // namespace

ParseError::ParseError(std::size_t off, std::string exp)
    : std::runtime_error("parse error at offset " + std::to_string(off) + ": expected " + exp),
      offset(off),
      expected(std::move(exp)) {}

UnknownIdentifier::UnknownIdentifier(std::string ident, std::size_t off)
    : std::runtime_error("unknown identifier '" + ident + "' at offset " + std::to_string(off)),
      name(std::move(ident)),
      offset(off) {}

UnboundVariable::UnboundVariable(std::string ident)
    : std::runtime_error("unbound variable '" + ident + "'"), name(std::move(ident)) {}

bool is_known_function(std::string_view name) {
    return std::find(kFunctions.begin(), kFunctions.end(), name) != kFunctions.end();
}

Expr Expr::parse(std::string_view text, const std::vector<std::string>& identifiers) {
    Parser p(text, identifiers);
    return Expr(p.run());
}

Expr Expr::derivative(const std::string& variable) const {
    if (!root_) throw std::logic_error("derivative of empty expression");
    return Expr(diff_node(root_, variable));
}

double Expr::eval(const EvalContext& ctx) const {
    if (!root_) throw std::logic_error("eval of empty expression");
    return eval_node(*root_, ctx);
}

std::string Expr::str() const {
    if (!root_) return "";
    std::ostringstream os;
    print_node(os, *root_);
    return os.str();
}

bool Expr::same_structure(const Expr& other) const {
    if (!root_ || !other.root_) return root_ == other.root_;
    return same_node(*root_, *other.root_);
}

std::set<std::string> Expr::identifiers() const {
    std::set<std::string> out;
    if (root_) collect_identifiers(*root_, out);
    return out;
}

}  // namespace surfq::expr
