#include <doctest.h>

#include <cmath>
#include <random>
#include <functional>
#include <string>
#include <vector>

#include "surfq/expr.hpp"

using surfq::expr::EvalContext;
using surfq::expr::Expr;

namespace {

double eval1(const Expr& e, const std::string& var, double v,
             const EvalContext& extra = {}) {
    EvalContext ctx = extra;
    ctx.bind(var, v);
    return e.eval(ctx);
}

}  // namespace

TEST_SUITE("expr") {

TEST_CASE("parse and eval basics") {
    const auto e = Expr::parse("a*cosh(x/a)", {"x", "a"});
    CHECK(eval1(e, "x", 0.0, EvalContext{{"a", 1.0}}) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(eval1(e, "x", 2.0, EvalContext{{"a", 2.0}}) ==
          doctest::Approx(2.0 * std::cosh(1.0)).epsilon(1e-15));

    const auto r = Expr::parse("rho^2/(2*a)", {"rho", "a"});
    CHECK(eval1(r, "rho", 2.0, EvalContext{{"a", 1.0}}) == doctest::Approx(2.0).epsilon(1e-15));

    CHECK(Expr::parse("cosh(x)", {"x"}).eval(EvalContext{{"x", 0.0}}) == 1.0);
}

TEST_CASE("precedence and associativity") {
    const auto e = Expr::parse("2^3^2", {});
    CHECK(e.eval({}) == 512.0);  // right associative

    const auto m = Expr::parse("-x^2", {"x"});
    CHECK(eval1(m, "x", 3.0) == -9.0);  // '^' binds tighter than unary minus

    const auto mixed = Expr::parse("1+2*3^2", {});
    CHECK(mixed.eval({}) == 19.0);

    const auto exponent_sign = Expr::parse("2^-2", {});
    CHECK(exponent_sign.eval({}) == 0.25);

    CHECK(Expr::parse("1.5e2", {}).eval({}) == 150.0);
    CHECK(Expr::parse("2.5e-1", {}).eval({}) == 0.25);
}

TEST_CASE("parse errors carry offsets") {
    CHECK_THROWS_AS(Expr::parse("", {}), surfq::expr::ParseError);

    try {
        Expr::parse("2*+3", {});
        FAIL("expected ParseError");
    } catch (const surfq::expr::ParseError& e) {
        CHECK(e.offset == 2);
    }

    try {
        Expr::parse("x+undeclared", {"x"});
        FAIL("expected UnknownIdentifier");
    } catch (const surfq::expr::UnknownIdentifier& e) {
        CHECK(e.name == "undeclared");
        CHECK(e.offset == 2);
    }

    CHECK_THROWS_AS(Expr::parse("sin(x", {"x"}), surfq::expr::ParseError);
    CHECK_THROWS_AS(Expr::parse("notafunc(x)", {"x"}), surfq::expr::UnknownIdentifier);
}

TEST_CASE("eval errors") {
    CHECK_THROWS_AS(Expr::parse("sqrt(0-1)", {}).eval({}), surfq::expr::DomainError);
    CHECK_THROWS_AS(Expr::parse("ln(0-2)", {}).eval({}), surfq::expr::DomainError);
    CHECK_THROWS_AS(Expr::parse("x", {"x"}).eval({}), surfq::expr::UnboundVariable);

    const auto dabs = Expr::parse("abs(x)", {"x"}).derivative("x");
    CHECK(eval1(dabs, "x", 2.0) == 1.0);
    CHECK(eval1(dabs, "x", -2.0) == -1.0);
    CHECK_THROWS_AS(eval1(dabs, "x", 0.0), surfq::expr::NonDifferentiable);
}

TEST_CASE("symbolic derivatives, hand-checked values") {
    const auto H = Expr::parse("a*cosh(x/a)", {"x", "a"});
    const auto Hx = H.derivative("x");
    // d/dx a cosh(x/a) = sinh(x/a)
    CHECK(eval1(Hx, "x", 1.0, EvalContext{{"a", 1.0}}) ==
          doctest::Approx(std::sinh(1.0)).epsilon(1e-14));

    const auto p = Expr::parse("x^2", {"x", "y"});
    CHECK(eval1(p.derivative("x"), "x", 3.0, EvalContext{{"y", 0.0}}) == 6.0);
    CHECK(p.derivative("y").eval(EvalContext{{"x", 3.0}, {"y", 1.0}}) == 0.0);

    // second derivative through repeated application
    const auto Hxx = Hx.derivative("x");
    CHECK(eval1(Hxx, "x", 0.7, EvalContext{{"a", 1.0}}) ==
          doctest::Approx(std::cosh(0.7)).epsilon(1e-14));
}

TEST_CASE("derivative against central differences at random points") {
    struct Case {
        const char* text;
        const char* var;
        std::vector<std::string> ids;
        EvalContext params;
        double lo, hi;
    };
    const std::vector<Case> cases = {
        {"a*cosh(x/a)", "x", {"x", "a"}, EvalContext{{"a", 1.3}}, -2.0, 2.0},
        {"rho^2/(2*a)", "rho", {"rho", "a"}, EvalContext{{"a", 0.8}}, 0.1, 4.0},
        {"sin(x)*cos(x)+exp(0-x^2)", "x", {"x"}, {}, -1.5, 1.5},
        {"sqrt(1+x^2)*tanh(x)", "x", {"x"}, {}, -2.0, 2.0},
        {"ln(2+x)/(3+sin(x))", "x", {"x"}, {}, -1.0, 3.0},
        {"x^3-2*x+tan(x/4)", "x", {"x"}, {}, -2.0, 2.0},
    };

    std::mt19937 rng(987654u);
    for (const auto& c : cases) {
        CAPTURE(c.text);
        const auto f = Expr::parse(c.text, c.ids);
        const auto df = f.derivative(c.var);
        std::uniform_real_distribution<double> dist(c.lo, c.hi);
        for (int i = 0; i < 20; ++i) {
            const double x = dist(rng);
            const double scale = std::max(1.0, std::abs(x));
            const double h = 1e-6 * scale;
            const double fd =
                (eval1(f, c.var, x + h, c.params) - eval1(f, c.var, x - h, c.params)) / (2.0 * h);
            const double sym = eval1(df, c.var, x, c.params);
            CHECK(std::abs(sym - fd) <= 1e-6 * std::max(1.0, std::abs(fd)));
        }
    }
}

TEST_CASE("round trip and determinism") {
    const std::vector<std::string> texts = {
        "a*cosh(x/a)", "rho^2/(2*a)", "-x^2+3*(y-1)", "sin(x)*cos(y)/(1+x^2)",
        "2^-2*x",      "sqrt(1+x^2)", "x/(y*(x-2))",
    };
    for (const auto& text : texts) {
        CAPTURE(text);
        const auto e = Expr::parse(text, {"x", "y", "a", "rho"});
        const auto round = Expr::parse(e.str(), {"x", "y", "a", "rho"});
        CHECK(e.same_structure(round));

        const auto again = Expr::parse(text, {"x", "y", "a", "rho"});
        CHECK(e.same_structure(again));
    }

    // derivatives print and re-parse too
    const auto d = Expr::parse("sqrt(1+x^2)*tanh(x)", {"x"}).derivative("x");
    const auto round = Expr::parse(d.str(), {"x"});
    CHECK(d.same_structure(round));
}

TEST_CASE("round trip on randomly generated expressions") {
    // grammar-directed generator; depth-bounded so trees stay printable
    std::mt19937 rng(20240915u);
    std::uniform_int_distribution<int> pick(0, 99);
    const std::vector<std::string> vars = {"x", "y", "a"};
    const std::vector<std::string> funcs = {"sin",  "cos",  "tan", "sinh", "cosh",
                                            "tanh", "exp",  "ln",  "sqrt", "abs"};

    std::function<std::string(int)> gen_expr;
    std::function<std::string(int)> gen_base = [&](int depth) -> std::string {
        const int roll = pick(rng);
        if (depth <= 0 || roll < 30) {
            if (roll % 2 == 0) return vars[pick(rng) % vars.size()];
            const int mant = 1 + pick(rng) % 97;
            const int frac = pick(rng) % 100;
            return std::to_string(mant) + "." + std::to_string(frac);
        }
        if (roll < 50) return funcs[pick(rng) % funcs.size()] + "(" + gen_expr(depth - 1) + ")";
        if (roll < 70) return "(" + gen_expr(depth - 1) + ")";
        return "-" + gen_base(depth - 1);
    };
    std::function<std::string(int)> gen_factor = [&](int depth) -> std::string {
        std::string s = gen_base(depth);
        if (depth > 0 && pick(rng) < 20) s += "^" + gen_factor(depth - 1);
        return s;
    };
    std::function<std::string(int)> gen_term = [&](int depth) -> std::string {
        std::string s = gen_factor(depth);
        while (depth > 0 && pick(rng) < 25) {
            s += (pick(rng) % 2 ? "*" : "/") + gen_factor(depth - 1);
        }
        return s;
    };
    gen_expr = [&](int depth) -> std::string {
        std::string s = gen_term(depth);
        while (depth > 0 && pick(rng) < 25) {
            s += (pick(rng) % 2 ? "+" : "-") + gen_term(depth - 1);
        }
        return s;
    };

    for (int trial = 0; trial < 300; ++trial) {
        const std::string text = gen_expr(4);
        CAPTURE(text);
        const auto parsed = Expr::parse(text, vars);
        const auto reparsed = Expr::parse(parsed.str(), vars);
        CHECK(parsed.same_structure(reparsed));
        // derivatives survive the printer too
        const auto d = parsed.derivative("x");
        CHECK(d.same_structure(Expr::parse(d.str(), vars)));
    }
}

TEST_CASE("constant folding keeps derivative trees small") {
    const auto e = Expr::parse("x^2", {"x"});
    const auto d2 = e.derivative("x").derivative("x");
    // d2/dx2 x^2 folds to the constant 2
    CHECK(d2.root()->kind == surfq::expr::NodeKind::Number);
    CHECK(d2.eval({}) == 2.0);

    const auto zero = Expr::parse("y", {"x", "y"}).derivative("x");
    CHECK(zero.root()->kind == surfq::expr::NodeKind::Number);
    CHECK(zero.eval({}) == 0.0);
}

}  // TEST_SUITE
