#include "subpot/expr.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <optional>

#include "subpot/errors.hpp"

namespace subpot {

namespace {

ExprPtr make(Expr e) { return std::make_shared<const Expr>(std::move(e)); }

ExprPtr make_constant(double v) { return make(Expr{Constant{v}}); }
ExprPtr make_variable(int i) { return make(Expr{Variable{i}}); }
ExprPtr make_binary(BinaryOp op, ExprPtr l, ExprPtr r) {
    return make(Expr{Binary{op, std::move(l), std::move(r)}});
}
ExprPtr make_unary(UnaryFn fn, ExprPtr c) { return make(Expr{Unary{fn, std::move(c)}}); }

struct Token {
    enum class Kind { Number, Ident, Plus, Minus, Star, Slash, Caret, LParen, RParen, End };
    Kind kind;
    std::size_t pos;
    double number = 0.0;
    std::string text;
};

class Lexer {
  public:
    explicit Lexer(std::string_view src) : src_(src) {}

    Token next() {
        while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
        const std::size_t start = pos_;
        if (pos_ >= src_.size()) return {Token::Kind::End, start};
        const char c = src_[pos_];
        switch (c) {
            case '+': ++pos_; return {Token::Kind::Plus, start};
            case '-': ++pos_; return {Token::Kind::Minus, start};
            case '*': ++pos_; return {Token::Kind::Star, start};
            case '/': ++pos_; return {Token::Kind::Slash, start};
            case '^': ++pos_; return {Token::Kind::Caret, start};
            case '(': ++pos_; return {Token::Kind::LParen, start};
            case ')': ++pos_; return {Token::Kind::RParen, start};
            default: break;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return lex_number(start);
        if (std::isalpha(static_cast<unsigned char>(c))) return lex_ident(start);
        throw ParseError(std::string("unknown token '") + c + "'", start);
    }

  private:
    Token lex_number(std::size_t start) {
        std::size_t end = pos_;
        bool any_digit = false;
        while (end < src_.size() && std::isdigit(static_cast<unsigned char>(src_[end]))) {
            ++end;
            any_digit = true;
        }
        if (end < src_.size() && src_[end] == '.') {
            ++end;
            while (end < src_.size() && std::isdigit(static_cast<unsigned char>(src_[end]))) {
                ++end;
                any_digit = true;
            }
        }
        if (!any_digit) throw ParseError("malformed numeric literal", start);
        if (end < src_.size() && (src_[end] == 'e' || src_[end] == 'E')) {
            std::size_t e = end + 1;
            if (e < src_.size() && (src_[e] == '+' || src_[e] == '-')) ++e;
            if (e >= src_.size() || !std::isdigit(static_cast<unsigned char>(src_[e])))
                throw ParseError("malformed exponent in numeric literal", start);
            while (e < src_.size() && std::isdigit(static_cast<unsigned char>(src_[e]))) ++e;
            end = e;
        }
        // implicit multiplication like "2u1" is a lexical error
        if (end < src_.size() && std::isalpha(static_cast<unsigned char>(src_[end])))
            throw ParseError("missing operator after numeric literal", end);
        const std::string text(src_.substr(start, end - start));
        pos_ = end;
        Token t{Token::Kind::Number, start};
        t.number = std::strtod(text.c_str(), nullptr);
        t.text = text;
        return t;
    }

    Token lex_ident(std::size_t start) {
        std::size_t end = pos_;
        while (end < src_.size() &&
               (std::isalnum(static_cast<unsigned char>(src_[end])) || src_[end] == '_'))
            ++end;
        Token t{Token::Kind::Ident, start};
        t.text = std::string(src_.substr(start, end - start));
        pos_ = end;
        return t;
    }

    std::string_view src_;
    std::size_t pos_ = 0;
};

// Variables are u1..u99 in the surface language, 0-based internally.
std::optional<int> variable_index(const std::string& name) {
    if (name.size() < 2 || name.size() > 3 || name[0] != 'u') return std::nullopt;
    if (name[1] == '0') return std::nullopt;
    int idx = 0;
    for (std::size_t i = 1; i < name.size(); ++i) {
        if (!std::isdigit(static_cast<unsigned char>(name[i]))) return std::nullopt;
        idx = idx * 10 + (name[i] - '0');
    }
    return idx - 1;
}

std::optional<UnaryFn> function_name(const std::string& name) {
    if (name == "sin") return UnaryFn::Sin;
    if (name == "cos") return UnaryFn::Cos;
    if (name == "exp") return UnaryFn::Exp;
    if (name == "ln") return UnaryFn::Log;
    if (name == "sqrt") return UnaryFn::Sqrt;
    return std::nullopt;
}

class Parser {
  public:
    Parser(std::string_view src, int param_dim) : lexer_(src), param_dim_(param_dim) {
        advance();
    }

    ExprPtr parse_all() {
        ExprPtr e = parse_expr();
        if (cur_.kind != Token::Kind::End) throw ParseError("unexpected trailing input", cur_.pos);
        return e;
    }

  private:
    void advance() { cur_ = lexer_.next(); }

    bool accept(Token::Kind k) {
        if (cur_.kind != k) return false;
        advance();
        return true;
    }

    void expect(Token::Kind k, const char* what) {
        if (cur_.kind != k) throw ParseError(std::string("expected ") + what, cur_.pos);
        advance();
    }

    ExprPtr parse_expr() {
        ExprPtr e = parse_term();
        for (;;) {
            if (accept(Token::Kind::Plus)) e = make_binary(BinaryOp::Add, e, parse_term());
            else if (accept(Token::Kind::Minus)) e = make_binary(BinaryOp::Sub, e, parse_term());
            else return e;
        }
    }

    ExprPtr parse_term() {
        ExprPtr e = parse_unary();
        for (;;) {
            if (accept(Token::Kind::Star)) e = make_binary(BinaryOp::Mul, e, parse_unary());
            else if (accept(Token::Kind::Slash)) e = make_binary(BinaryOp::Div, e, parse_unary());
            else return e;
        }
    }

    ExprPtr parse_unary() {
        if (accept(Token::Kind::Minus)) return make_unary(UnaryFn::Neg, parse_unary());
        return parse_power();
    }

    ExprPtr parse_power() {
        ExprPtr e = parse_atom();
        while (cur_.kind == Token::Kind::Caret) {
            const std::size_t caret_pos = cur_.pos;
            advance();
            ExprPtr raw = parse_exponent();
            const std::optional<double> folded = fold_constant(*raw);
            if (!folded) throw ParseError("exponent must be a constant", caret_pos);
            e = make_binary(BinaryOp::Pow, e, make_constant(*folded));
        }
        return e;
    }

    ExprPtr parse_exponent() {
        if (accept(Token::Kind::Minus)) return make_unary(UnaryFn::Neg, parse_exponent());
        return parse_atom();
    }

    ExprPtr parse_atom() {
        if (cur_.kind == Token::Kind::Number) {
            const double v = cur_.number;
            advance();
            return make_constant(v);
        }
        if (cur_.kind == Token::Kind::Ident) {
            const std::string name = cur_.text;
            const std::size_t pos = cur_.pos;
            advance();
            if (auto fn = function_name(name)) {
                expect(Token::Kind::LParen, "'(' after function name");
                ExprPtr arg = parse_expr();
                expect(Token::Kind::RParen, "')'");
                return make_unary(*fn, arg);
            }
            if (auto idx = variable_index(name)) {
                if (*idx >= param_dim_)
                    throw ParseError("variable " + name + " exceeds parameter dimension " +
                                         std::to_string(param_dim_),
                                     pos);
                return make_variable(*idx);
            }
            throw ParseError("unknown identifier '" + name + "'", pos);
        }
        if (accept(Token::Kind::LParen)) {
            ExprPtr e = parse_expr();
            expect(Token::Kind::RParen, "')'");
            return e;
        }
        throw ParseError("expected number, variable, function or '('", cur_.pos);
    }

    // Folds constant arithmetic so expressions like u1^(3/2) or u1^-2 yield a
    // Constant exponent node. Function calls are deliberately not folded.
    static std::optional<double> fold_constant(const Expr& e) {
        if (const auto* c = std::get_if<Constant>(&e.node)) return c->value;
        if (const auto* u = std::get_if<Unary>(&e.node)) {
            if (u->fn != UnaryFn::Neg) return std::nullopt;
            if (auto v = fold_constant(*u->child)) return -*v;
            return std::nullopt;
        }
        if (const auto* b = std::get_if<Binary>(&e.node)) {
            const auto l = fold_constant(*b->lhs);
            const auto r = fold_constant(*b->rhs);
            if (!l || !r) return std::nullopt;
            switch (b->op) {
                case BinaryOp::Add: return *l + *r;
                case BinaryOp::Sub: return *l - *r;
                case BinaryOp::Mul: return *l * *r;
                case BinaryOp::Div: return *l / *r;
                case BinaryOp::Pow: return std::pow(*l, *r);
            }
        }
        return std::nullopt;
    }

    Lexer lexer_;
    int param_dim_;
    Token cur_{Token::Kind::End, 0};
};

std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

const char* op_symbol(BinaryOp op) {
    switch (op) {
        case BinaryOp::Add: return "+";
        case BinaryOp::Sub: return "-";
        case BinaryOp::Mul: return "*";
        case BinaryOp::Div: return "/";
        case BinaryOp::Pow: return "^";
    }
    return "?";
}

const char* fn_name(UnaryFn fn) {
    switch (fn) {
        case UnaryFn::Neg: return "-";
        case UnaryFn::Sin: return "sin";
        case UnaryFn::Cos: return "cos";
        case UnaryFn::Exp: return "exp";
        case UnaryFn::Log: return "ln";
        case UnaryFn::Sqrt: return "sqrt";
    }
    return "?";
}

} // namespace

ExprPtr parse(std::string_view source, int param_dim) {
    if (source.empty()) throw ParseError("empty expression", 0);
    if (param_dim < 1) throw DimensionError("parameter dimension must be at least 1");
    return Parser(source, param_dim).parse_all();
}

std::string to_string(const Expr& e) {
    if (const auto* c = std::get_if<Constant>(&e.node)) return format_double(c->value);
    if (const auto* v = std::get_if<Variable>(&e.node)) return "u" + std::to_string(v->index + 1);
    if (const auto* b = std::get_if<Binary>(&e.node))
        return "(" + to_string(*b->lhs) + op_symbol(b->op) + to_string(*b->rhs) + ")";
    const auto& u = std::get<Unary>(e.node);
    if (u.fn == UnaryFn::Neg) return "(-" + to_string(*u.child) + ")";
    return std::string(fn_name(u.fn)) + "(" + to_string(*u.child) + ")";
}

bool structurally_equal(const Expr& a, const Expr& b) {
    if (a.node.index() != b.node.index()) return false;
    if (const auto* c = std::get_if<Constant>(&a.node))
        return c->value == std::get<Constant>(b.node).value;
    if (const auto* v = std::get_if<Variable>(&a.node))
        return v->index == std::get<Variable>(b.node).index;
    if (const auto* x = std::get_if<Binary>(&a.node)) {
        const auto& y = std::get<Binary>(b.node);
        return x->op == y.op && structurally_equal(*x->lhs, *y.lhs) &&
               structurally_equal(*x->rhs, *y.rhs);
    }
    const auto& x = std::get<Unary>(a.node);
    const auto& y = std::get<Unary>(b.node);
    return x.fn == y.fn && structurally_equal(*x.child, *y.child);
}

double eval(const Expr& e, const Eigen::VectorXd& u) {
    if (const auto* c = std::get_if<Constant>(&e.node)) return c->value;
    if (const auto* v = std::get_if<Variable>(&e.node)) {
        if (v->index >= u.size()) throw DimensionError("variable index beyond point dimension");
        return u(v->index);
    }
    if (const auto* b = std::get_if<Binary>(&e.node)) {
        const double l = eval(*b->lhs, u);
        const double r = eval(*b->rhs, u);
        switch (b->op) {
            case BinaryOp::Add: return l + r;
            case BinaryOp::Sub: return l - r;
            case BinaryOp::Mul: return l * r;
            case BinaryOp::Div:
                if (r == 0.0) throw DomainError("division by zero");
                return l / r;
            case BinaryOp::Pow: {
                if (l == 0.0 && r < 0.0) throw DomainError("zero base with negative exponent");
                if (l < 0.0 && r != std::floor(r))
                    throw DomainError("fractional power of negative base");
                return std::pow(l, r);
            }
        }
    }
    const auto& un = std::get<Unary>(e.node);
    const double x = eval(*un.child, u);
    switch (un.fn) {
        case UnaryFn::Neg: return -x;
        case UnaryFn::Sin: return std::sin(x);
        case UnaryFn::Cos: return std::cos(x);
        case UnaryFn::Exp: return std::exp(x);
        case UnaryFn::Log:
            if (x <= 0.0) throw DomainError("ln of nonpositive value " + std::to_string(x));
            return std::log(x);
        case UnaryFn::Sqrt:
            if (x <= 0.0) throw DomainError("sqrt of nonpositive value " + std::to_string(x));
            return std::sqrt(x);
    }
    throw Error("unreachable expression node");
}

Jet3 eval_jet(const Expr& e, const Eigen::VectorXd& u) {
    const int n = static_cast<int>(u.size());
    if (const auto* c = std::get_if<Constant>(&e.node)) return Jet3::constant(c->value, n);
    if (const auto* v = std::get_if<Variable>(&e.node)) {
        if (v->index >= n) throw DimensionError("variable index beyond point dimension");
        return Jet3::variable(v->index, u(v->index), n);
    }
    if (const auto* b = std::get_if<Binary>(&e.node)) {
        if (b->op == BinaryOp::Pow) {
            const auto& c = std::get<Constant>(b->rhs->node);
            return pow(eval_jet(*b->lhs, u), c.value);
        }
        const Jet3 l = eval_jet(*b->lhs, u);
        const Jet3 r = eval_jet(*b->rhs, u);
        switch (b->op) {
            case BinaryOp::Add: return l + r;
            case BinaryOp::Sub: return l - r;
            case BinaryOp::Mul: return l * r;
            case BinaryOp::Div: return l / r;
            default: break;
        }
    }
    const auto& un = std::get<Unary>(e.node);
    const Jet3 x = eval_jet(*un.child, u);
    switch (un.fn) {
        case UnaryFn::Neg: return -x;
        case UnaryFn::Sin: return sin(x);
        case UnaryFn::Cos: return cos(x);
        case UnaryFn::Exp: return exp(x);
        case UnaryFn::Log: return log(x);
        case UnaryFn::Sqrt: return sqrt(x);
    }
    throw Error("unreachable expression node");
}

VectorFunction VectorFunction::parse(const std::vector<std::string>& sources, int param_dim) {
    VectorFunction f;
    f.ambient_dim = static_cast<int>(sources.size());
    f.param_dim = param_dim;
    f.components.reserve(sources.size());
    for (std::size_t i = 0; i < sources.size(); ++i) {
        try {
            f.components.push_back(subpot::parse(sources[i], param_dim));
        } catch (const ParseError& e) {
            throw ParseError("component " + std::to_string(i) + ": " + e.message, e.position);
        }
    }
    return f;
}

Eigen::VectorXd VectorFunction::eval(const Eigen::VectorXd& u) const {
    Eigen::VectorXd out(ambient_dim);
    for (int i = 0; i < ambient_dim; ++i) {
        try {
            out(i) = subpot::eval(*components[i], u);
        } catch (const DomainError& e) {
            throw DomainError("component " + std::to_string(i) + ": " + e.what());
        }
    }
    return out;
}

std::vector<Jet3> VectorFunction::eval_jets(const Eigen::VectorXd& u) const {
    std::vector<Jet3> out;
    out.reserve(ambient_dim);
    for (int i = 0; i < ambient_dim; ++i) {
        try {
            out.push_back(subpot::eval_jet(*components[i], u));
        } catch (const DomainError& e) {
            throw DomainError("component " + std::to_string(i) + ": " + e.what());
        }
    }
    return out;
}

} // namespace subpot
