#include "rectconf/expr.hpp"

#include "rectconf/error.hpp"

#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <numbers>
#include <optional>

namespace rectconf {

namespace {

struct FunctionName {
    std::string_view name;
    Op op;
};

constexpr std::array<FunctionName, 7> kFunctions{{
    {"sin", Op::Sin},
    {"cos", Op::Cos},
    {"tan", Op::Tan},
    {"sec", Op::Sec},
    {"exp", Op::Exp},
    {"log", Op::Log},
    {"sqrt", Op::Sqrt},
}};

std::optional<Op> function_op(std::string_view name)
{
    for (const auto& f : kFunctions) {
        if (f.name == name) {
            return f.op;
        }
    }
    return std::nullopt;
}

std::string_view function_name(Op op)
{
    for (const auto& f : kFunctions) {
        if (f.op == op) {
            return f.name;
        }
    }
    return "?";
}

bool is_unary(Op op)
{
    return op == Op::Neg || function_op(function_name(op)).has_value();
}

NodePtr make_node(Op op, NodePtr lhs = nullptr, NodePtr rhs = nullptr)
{
    auto n = std::make_shared<Node>();
    n->op = op;
    n->lhs = std::move(lhs);
    n->rhs = std::move(rhs);
    return n;
}

NodePtr make_raw_const(double v)
{
    auto n = std::make_shared<Node>();
    n->op = Op::Const;
    n->value = v;
    return n;
}

NodePtr make_var(int index)
{
    auto n = std::make_shared<Node>();
    n->op = Op::Var;
    n->var = index;
    return n;
}

// ---------------------------------------------------------------------------
// Parser
// ---------------------------------------------------------------------------

class Parser {
public:
    Parser(std::string_view src, const std::vector<std::string>& vars) : src_(src), vars_(vars) {}

    NodePtr parse_all()
    {
        skip_ws();
        if (pos_ >= src_.size()) {
            throw ParseError(ErrorKind::Syntax, "empty expression", pos_);
        }
        auto e = parse_sum();
        skip_ws();
        if (pos_ < src_.size()) {
            throw ParseError(ErrorKind::Syntax, std::string("unexpected '") + src_[pos_] + "'", pos_);
        }
        return e;
    }

private:
    void skip_ws()
    {
        while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) {
            ++pos_;
        }
    }

    bool accept(char c)
    {
        skip_ws();
        if (pos_ < src_.size() && src_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    void expect(char c)
    {
        if (!accept(c)) {
            if (pos_ >= src_.size()) {
                throw ParseError(ErrorKind::Syntax, std::string("expected '") + c + "' before end of input", pos_);
            }
            throw ParseError(ErrorKind::Syntax, std::string("expected '") + c + "'", pos_);
        }
    }

    NodePtr parse_sum()
    {
        auto lhs = parse_product();
        for (;;) {
            if (accept('+')) {
                lhs = make_node(Op::Add, lhs, parse_product());
            } else if (accept('-')) {
                lhs = make_node(Op::Sub, lhs, parse_product());
            } else {
                return lhs;
            }
        }
    }

    NodePtr parse_product()
    {
        auto lhs = parse_unary();
        for (;;) {
            if (accept('*')) {
                lhs = make_node(Op::Mul, lhs, parse_unary());
            } else if (accept('/')) {
                lhs = make_node(Op::Div, lhs, parse_unary());
            } else {
                return lhs;
            }
        }
    }

    NodePtr parse_unary()
    {
        if (accept('-')) {
            return make_node(Op::Neg, parse_unary());
        }
        if (accept('+')) {
            return parse_unary();
        }
        return parse_power();
    }

    NodePtr parse_power()
    {
        auto base = parse_primary();
        if (accept('^')) {
            return make_node(Op::Pow, base, parse_exponent());
        }
        return base;
    }

    // The exponent of '^' may carry its own sign: u^-2.
    NodePtr parse_exponent()
    {
        if (accept('-')) {
            return make_node(Op::Neg, parse_exponent());
        }
        if (accept('+')) {
            return parse_exponent();
        }
        return parse_power();
    }

    NodePtr parse_primary()
    {
        skip_ws();
        if (pos_ >= src_.size()) {
            throw ParseError(ErrorKind::Syntax, "unexpected end of input", pos_);
        }
        const char c = src_[pos_];
        if (c == '(') {
            ++pos_;
            auto e = parse_sum();
            expect(')');
            return e;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
            return parse_number();
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            return parse_identifier();
        }
        throw ParseError(ErrorKind::Syntax, std::string("unexpected '") + c + "'", pos_);
    }

    NodePtr parse_number()
    {
        const std::size_t start = pos_;
        while (pos_ < src_.size() && (std::isdigit(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '.')) {
            ++pos_;
        }
        if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
            std::size_t look = pos_ + 1;
            if (look < src_.size() && (src_[look] == '+' || src_[look] == '-')) {
                ++look;
            }
            if (look < src_.size() && std::isdigit(static_cast<unsigned char>(src_[look]))) {
                pos_ = look;
                while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
                    ++pos_;
                }
            }
        }
        double v = 0.0;
        const char* first = src_.data() + start;
        const char* last = src_.data() + pos_;
        auto [ptr, ec] = std::from_chars(first, last, v);
        if (ec != std::errc{} || ptr != last) {
            throw ParseError(ErrorKind::Syntax, "malformed number", start);
        }
        return make_raw_const(v);
    }

    NodePtr parse_identifier()
    {
        const std::size_t start = pos_;
        while (pos_ < src_.size()
               && (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_')) {
            ++pos_;
        }
        const std::string_view name = src_.substr(start, pos_ - start);

        if (auto op = function_op(name)) {
            skip_ws();
            if (pos_ >= src_.size() || src_[pos_] != '(') {
                throw ParseError(ErrorKind::Syntax, "expected '(' after function '" + std::string(name) + "'", pos_);
            }
            ++pos_;
            auto arg = parse_sum();
            std::size_t extra = 0;
            while (accept(',')) {
                parse_sum();
                ++extra;
            }
            expect(')');
            if (extra != 0) {
                throw ParseError(ErrorKind::Arity,
                                 "function '" + std::string(name) + "' takes 1 argument, got " + std::to_string(extra + 1),
                                 start);
            }
            return make_node(*op, arg);
        }

        for (std::size_t i = 0; i < vars_.size(); ++i) {
            if (vars_[i] == name) {
                skip_ws();
                if (pos_ < src_.size() && src_[pos_] == '(') {
                    throw ParseError(ErrorKind::UnknownIdentifier, "'" + std::string(name) + "' is not a function", start);
                }
                return make_var(static_cast<int>(i));
            }
        }
        if (name == "pi") {
            return make_raw_const(std::numbers::pi);
        }
        throw ParseError(ErrorKind::UnknownIdentifier, "unknown identifier '" + std::string(name) + "'", start);
    }

    std::string_view src_;
    const std::vector<std::string>& vars_;
    std::size_t pos_ = 0;
};

void validate_variables(const std::vector<std::string>& vars)
{
    for (std::size_t i = 0; i < vars.size(); ++i) {
        const auto& v = vars[i];
        bool ok = !v.empty() && (std::isalpha(static_cast<unsigned char>(v[0])) || v[0] == '_');
        for (char c : v) {
            ok = ok && (std::isalnum(static_cast<unsigned char>(c)) || c == '_');
        }
        if (!ok || function_op(v) || v == "pi") {
            throw Error(ErrorKind::Schema, "invalid variable name '" + v + "'");
        }
        for (std::size_t j = 0; j < i; ++j) {
            if (vars[j] == v) {
                throw Error(ErrorKind::Schema, "duplicate variable '" + v + "'");
            }
        }
    }
}

// ---------------------------------------------------------------------------
// Printing
// ---------------------------------------------------------------------------

std::string format_number(double v)
{
    std::array<char, 64> buf{};
    auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    (void)ec;
    return std::string(buf.data(), ptr);
}

void print_into(const Node& n, const std::vector<std::string>& vars, std::string& out)
{
    switch (n.op) {
    case Op::Const:
        if (n.value < 0.0 || std::signbit(n.value)) {
            out += "(" + format_number(n.value) + ")";
        } else {
            out += format_number(n.value);
        }
        return;
    case Op::Var:
        out += (n.var >= 0 && static_cast<std::size_t>(n.var) < vars.size()) ? vars[n.var] : "?";
        return;
    case Op::Neg:
        out += "(-";
        print_into(*n.lhs, vars, out);
        out += ")";
        return;
    case Op::Add:
    case Op::Sub:
    case Op::Mul:
    case Op::Div:
    case Op::Pow: {
        const char* sym = n.op == Op::Add ? " + "
                        : n.op == Op::Sub ? " - "
                        : n.op == Op::Mul ? " * "
                        : n.op == Op::Div ? " / "
                                          : " ^ ";
        out += "(";
        print_into(*n.lhs, vars, out);
        out += sym;
        print_into(*n.rhs, vars, out);
        out += ")";
        return;
    }
    default:
        out += function_name(n.op);
        out += "(";
        print_into(*n.lhs, vars, out);
        out += ")";
        return;
    }
}

// ---------------------------------------------------------------------------
// Evaluation
// ---------------------------------------------------------------------------

// Exponent that is a literal constant (possibly negated).
std::optional<double> constant_value(const Node& n)
{
    if (n.op == Op::Const) {
        return n.value;
    }
    if (n.op == Op::Neg) {
        if (auto v = constant_value(*n.lhs)) {
            return -*v;
        }
    }
    return std::nullopt;
}

bool is_finite(const Jet3& j)
{
    return std::isfinite(j.val) && std::isfinite(j.du) && std::isfinite(j.dv) && std::isfinite(j.duu)
        && std::isfinite(j.duv) && std::isfinite(j.dvv) && std::isfinite(j.duuu) && std::isfinite(j.duuv)
        && std::isfinite(j.duvv) && std::isfinite(j.dvvv);
}

constexpr double kPoleTolerance = 1e-15;

class Evaluator {
public:
    Evaluator(std::span<const Jet3> values, const std::vector<std::string>& vars) : values_(values), vars_(vars) {}

    Jet3 eval(const Node& n) const
    {
        Jet3 r = eval_unchecked(n);
        if (!is_finite(r)) {
            fail(n, "non-finite result");
        }
        return r;
    }

private:
    [[noreturn]] void fail(const Node& n, const std::string& what) const
    {
        throw EvalError(what, print_node(n, vars_));
    }

    Jet3 eval_unchecked(const Node& n) const
    {
        switch (n.op) {
        case Op::Const:
            return Jet3{n.value};
        case Op::Var:
            return values_[static_cast<std::size_t>(n.var)];
        case Op::Add:
            return eval(*n.lhs) + eval(*n.rhs);
        case Op::Sub:
            return eval(*n.lhs) - eval(*n.rhs);
        case Op::Mul:
            return eval(*n.lhs) * eval(*n.rhs);
        case Op::Div: {
            const Jet3 den = eval(*n.rhs);
            if (den.val == 0.0) {
                fail(n, "division by zero");
            }
            return eval(*n.lhs) / den;
        }
        case Op::Neg:
            return -eval(*n.lhs);
        case Op::Pow:
            return eval_pow(n);
        case Op::Sin:
            return sin(eval(*n.lhs));
        case Op::Cos:
            return cos(eval(*n.lhs));
        case Op::Tan:
        case Op::Sec: {
            const Jet3 a = eval(*n.lhs);
            if (std::abs(std::cos(a.val)) < kPoleTolerance) {
                fail(n, std::string(function_name(n.op)) + " evaluated at a pole");
            }
            return n.op == Op::Tan ? tan(a) : sec(a);
        }
        case Op::Exp:
            return exp(eval(*n.lhs));
        case Op::Log: {
            const Jet3 a = eval(*n.lhs);
            if (!(a.val > 0.0)) {
                fail(n, "log of non-positive value");
            }
            return log(a);
        }
        case Op::Sqrt: {
            const Jet3 a = eval(*n.lhs);
            if (!(a.val > 0.0)) {
                fail(n, a.val == 0.0 ? "sqrt has no derivative at 0" : "sqrt of negative value");
            }
            return sqrt(a);
        }
        }
        fail(n, "unknown node");
    }

    Jet3 eval_pow(const Node& n) const
    {
        const Jet3 base = eval(*n.lhs);
        if (auto p = constant_value(*n.rhs)) {
            const double rounded = std::round(*p);
            if (rounded == *p && std::abs(rounded) < 1e9) {
                if (rounded < 0.0 && base.val == 0.0) {
                    fail(n, "division by zero");
                }
                return ipow(base, static_cast<long>(rounded));
            }
            if (!(base.val > 0.0)) {
                fail(n, "non-integer power of non-positive base");
            }
            return rpow(base, *p);
        }
        if (!(base.val > 0.0)) {
            fail(n, "variable power of non-positive base");
        }
        return exp(eval(*n.rhs) * log(base));
    }

    std::span<const Jet3> values_;
    const std::vector<std::string>& vars_;
};

// ---------------------------------------------------------------------------
// Symbolic differentiation with constant folding
// ---------------------------------------------------------------------------

bool is_const(const NodePtr& n, double v)
{
    return n->op == Op::Const && n->value == v;
}

NodePtr make_const(double v)
{
    if (v < 0.0) {
        return make_node(Op::Neg, make_raw_const(-v));
    }
    return make_raw_const(v);
}

NodePtr mk_neg(NodePtr a)
{
    if (is_const(a, 0.0)) {
        return a;
    }
    if (a->op == Op::Neg) {
        return a->lhs;
    }
    return make_node(Op::Neg, std::move(a));
}

NodePtr mk_add(NodePtr a, NodePtr b)
{
    if (is_const(a, 0.0)) {
        return b;
    }
    if (is_const(b, 0.0)) {
        return a;
    }
    if (a->op == Op::Const && b->op == Op::Const) {
        return make_const(a->value + b->value);
    }
    return make_node(Op::Add, std::move(a), std::move(b));
}

NodePtr mk_sub(NodePtr a, NodePtr b)
{
    if (is_const(b, 0.0)) {
        return a;
    }
    if (is_const(a, 0.0)) {
        return mk_neg(std::move(b));
    }
    if (a->op == Op::Const && b->op == Op::Const) {
        return make_const(a->value - b->value);
    }
    return make_node(Op::Sub, std::move(a), std::move(b));
}

NodePtr mk_mul(NodePtr a, NodePtr b)
{
    if (is_const(a, 0.0) || is_const(b, 0.0)) {
        return make_raw_const(0.0);
    }
    if (is_const(a, 1.0)) {
        return b;
    }
    if (is_const(b, 1.0)) {
        return a;
    }
    if (a->op == Op::Const && b->op == Op::Const) {
        return make_const(a->value * b->value);
    }
    return make_node(Op::Mul, std::move(a), std::move(b));
}

NodePtr mk_div(NodePtr a, NodePtr b)
{
    if (is_const(a, 0.0)) {
        return a;
    }
    if (is_const(b, 1.0)) {
        return a;
    }
    return make_node(Op::Div, std::move(a), std::move(b));
}

NodePtr mk_pow(NodePtr a, double p)
{
    if (p == 1.0) {
        return a;
    }
    if (p == 0.0) {
        return make_raw_const(1.0);
    }
    return make_node(Op::Pow, std::move(a), make_const(p));
}

NodePtr derive(const NodePtr& n, int var)
{
    switch (n->op) {
    case Op::Const:
        return make_raw_const(0.0);
    case Op::Var:
        return make_raw_const(n->var == var ? 1.0 : 0.0);
    case Op::Add:
        return mk_add(derive(n->lhs, var), derive(n->rhs, var));
    case Op::Sub:
        return mk_sub(derive(n->lhs, var), derive(n->rhs, var));
    case Op::Mul:
        return mk_add(mk_mul(derive(n->lhs, var), n->rhs), mk_mul(n->lhs, derive(n->rhs, var)));
    case Op::Div: {
        auto num = mk_sub(mk_mul(derive(n->lhs, var), n->rhs), mk_mul(n->lhs, derive(n->rhs, var)));
        return mk_div(num, mk_pow(n->rhs, 2.0));
    }
    case Op::Neg:
        return mk_neg(derive(n->lhs, var));
    case Op::Pow: {
        const auto da = derive(n->lhs, var);
        if (auto p = constant_value(*n->rhs)) {
            return mk_mul(mk_mul(make_const(*p), mk_pow(n->lhs, *p - 1.0)), da);
        }
        // d(a^b) = a^b (b' log a + b a'/a)
        const auto db = derive(n->rhs, var);
        auto inner = mk_add(mk_mul(db, make_node(Op::Log, n->lhs)), mk_div(mk_mul(n->rhs, da), n->lhs));
        return mk_mul(n, inner);
    }
    case Op::Sin:
        return mk_mul(make_node(Op::Cos, n->lhs), derive(n->lhs, var));
    case Op::Cos:
        return mk_mul(mk_neg(make_node(Op::Sin, n->lhs)), derive(n->lhs, var));
    case Op::Tan:
        return mk_mul(mk_pow(make_node(Op::Sec, n->lhs), 2.0), derive(n->lhs, var));
    case Op::Sec:
        return mk_mul(mk_mul(n, make_node(Op::Tan, n->lhs)), derive(n->lhs, var));
    case Op::Exp:
        return mk_mul(n, derive(n->lhs, var));
    case Op::Log:
        return mk_div(derive(n->lhs, var), n->lhs);
    case Op::Sqrt:
        return mk_div(derive(n->lhs, var), mk_mul(make_raw_const(2.0), n));
    }
    return make_raw_const(0.0);
}

NodePtr substitute_node(const NodePtr& n, std::span<const Expr> replacements)
{
    switch (n->op) {
    case Op::Const:
        return n;
    case Op::Var:
        return replacements[static_cast<std::size_t>(n->var)].root_ptr();
    default:
        break;
    }
    auto lhs = n->lhs ? substitute_node(n->lhs, replacements) : nullptr;
    auto rhs = n->rhs ? substitute_node(n->rhs, replacements) : nullptr;
    return make_node(n->op, std::move(lhs), std::move(rhs));
}

} // namespace

// ---------------------------------------------------------------------------

Expr::Expr(NodePtr root, std::vector<std::string> variables) : root_(std::move(root)), vars_(std::move(variables)) {}

int Expr::variable_index(std::string_view name) const noexcept
{
    for (std::size_t i = 0; i < vars_.size(); ++i) {
        if (vars_[i] == name) {
            return static_cast<int>(i);
        }
    }
    return -1;
}

bool Expr::is_variable(std::string_view name) const noexcept
{
    const int idx = variable_index(name);
    return idx >= 0 && root_->op == Op::Var && root_->var == idx;
}

std::string Expr::print() const
{
    return print_node(*root_, vars_);
}

Jet3 Expr::evaluate(std::span<const Jet3> values) const
{
    if (values.size() != vars_.size()) {
        throw Error(ErrorKind::Usage, "expected " + std::to_string(vars_.size()) + " variable values, got "
                                          + std::to_string(values.size()));
    }
    return Evaluator(values, vars_).eval(*root_);
}

double Expr::value(std::span<const double> point) const
{
    std::vector<Jet3> values(point.begin(), point.end());
    return evaluate(values).val;
}

Expr Expr::differentiate(std::string_view var) const
{
    const int idx = variable_index(var);
    if (idx < 0) {
        throw Error(ErrorKind::UnknownIdentifier, "variable '" + std::string(var) + "' is not declared");
    }
    return Expr(derive(root_, idx), vars_);
}

Expr Expr::substitute(std::span<const Expr> replacements) const
{
    if (replacements.size() != vars_.size()) {
        throw Error(ErrorKind::Usage, "substitution needs one expression per variable");
    }
    if (replacements.empty()) {
        return *this;
    }
    const auto& target_vars = replacements.front().variables();
    for (const auto& r : replacements) {
        if (r.variables() != target_vars) {
            throw Error(ErrorKind::Usage, "substituted expressions must share one variable list");
        }
    }
    return Expr(substitute_node(root_, replacements), target_vars);
}

bool operator==(const Expr& a, const Expr& b)
{
    return a.vars_ == b.vars_ && structurally_equal(*a.root_, *b.root_);
}

Expr parse(std::string_view source, std::vector<std::string> vars)
{
    validate_variables(vars);
    Parser p(source, vars);
    auto root = p.parse_all();
    return Expr(std::move(root), std::move(vars));
}

Jet3 eval_jet3(const Expr& e, std::span<const double> point)
{
    const auto n = e.variables().size();
    if (point.size() != n) {
        throw Error(ErrorKind::Usage, "point must assign every declared variable");
    }
    if (n > 2) {
        throw Error(ErrorKind::Usage, "eval_jet3 seeds at most two variables");
    }
    std::array<Jet3, 2> seeds{};
    if (n > 0) {
        seeds[0] = Jet3::variable_u(point[0]);
    }
    if (n > 1) {
        seeds[1] = Jet3::variable_v(point[1]);
    }
    return e.evaluate(std::span<const Jet3>(seeds.data(), n));
}

Expr differentiate(const Expr& e, std::string_view var)
{
    return e.differentiate(var);
}

std::string print_node(const Node& node, const std::vector<std::string>& vars)
{
    std::string out;
    print_into(node, vars, out);
    return out;
}

bool structurally_equal(const Node& a, const Node& b) noexcept
{
    if (a.op != b.op) {
        return false;
    }
    switch (a.op) {
    case Op::Const:
        return a.value == b.value;
    case Op::Var:
        return a.var == b.var;
    default:
        break;
    }
    if (is_unary(a.op)) {
        return structurally_equal(*a.lhs, *b.lhs);
    }
    return structurally_equal(*a.lhs, *b.lhs) && structurally_equal(*a.rhs, *b.rhs);
}

} // namespace rectconf
