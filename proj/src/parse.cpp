#include "microloc/parse.hpp"

#include <cctype>
#include <functional>
#include <optional>

namespace microloc {

namespace {

struct Token {
    enum class Kind { integer, ident, plus, minus, star, caret, slash, lparen, rparen, end };
    Kind kind;
    std::string text;
    std::size_t pos;
};

std::vector<Token> tokenize(std::string_view s) {
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < s.size()) {
        const char ch = s[i];
        if (std::isspace(static_cast<unsigned char>(ch))) {
            ++i;
            continue;
        }
        const std::size_t start = i;
        if (std::isdigit(static_cast<unsigned char>(ch))) {
            while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
            out.push_back({Token::Kind::integer, std::string(s.substr(start, i - start)), start});
            continue;
        }
        if (std::isalpha(static_cast<unsigned char>(ch))) {
            while (i < s.size() && std::isalpha(static_cast<unsigned char>(s[i]))) ++i;
            out.push_back({Token::Kind::ident, std::string(s.substr(start, i - start)), start});
            continue;
        }
        Token::Kind k;
        switch (ch) {
            case '+': k = Token::Kind::plus; break;
            case '-': k = Token::Kind::minus; break;
            case '*': k = Token::Kind::star; break;
            case '^': k = Token::Kind::caret; break;
            case '/': k = Token::Kind::slash; break;
            case '(': k = Token::Kind::lparen; break;
            case ')': k = Token::Kind::rparen; break;
            default: throw ParseError(std::string("unexpected character '") + ch + "'", start);
        }
        out.push_back({k, std::string(1, ch), start});
        ++i;
    }
    out.push_back({Token::Kind::end, "", s.size()});
    return out;
}

class Parser {
public:
    explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

    std::unique_ptr<OperatorExpr> parse() {
        auto e = expr();
        if (peek().kind != Token::Kind::end) throw ParseError("unexpected '" + peek().text + "'", peek().pos);
        return e;
    }

private:
    using Ptr = std::unique_ptr<OperatorExpr>;

    const Token& peek() const { return toks_[i_]; }
    const Token& next() { return toks_[i_++]; }

    static Ptr node(OperatorExpr::Kind k, std::size_t pos) {
        auto n = std::make_unique<OperatorExpr>();
        n->kind = k;
        n->position = pos;
        return n;
    }
    static Ptr binary(OperatorExpr::Kind k, Ptr a, Ptr b, std::size_t pos) {
        auto n = node(k, pos);
        n->args.push_back(std::move(a));
        n->args.push_back(std::move(b));
        return n;
    }

    Ptr expr() {
        Ptr lhs = term();
        while (peek().kind == Token::Kind::plus || peek().kind == Token::Kind::minus) {
            const Token& op = next();
            Ptr rhs = term();
            lhs = binary(op.kind == Token::Kind::plus ? OperatorExpr::Kind::add : OperatorExpr::Kind::sub, std::move(lhs),
                         std::move(rhs), op.pos);
        }
        return lhs;
    }

    Ptr term() {
        Ptr lhs = unary();
        while (peek().kind == Token::Kind::star) {
            const Token& op = next();
            Ptr rhs = unary();
            lhs = binary(OperatorExpr::Kind::mul, std::move(lhs), std::move(rhs), op.pos);
        }
        return lhs;
    }

    Ptr unary() {
        if (peek().kind == Token::Kind::minus) {
            const Token& op = next();
            auto n = node(OperatorExpr::Kind::neg, op.pos);
            n->args.push_back(unary());
            return n;
        }
        return power();
    }

    Ptr power() {
        Ptr base = atom();
        if (peek().kind == Token::Kind::caret) {
            const Token& op = next();
            if (peek().kind != Token::Kind::integer) throw ParseError("exponent must be a nonnegative integer", peek().pos);
            const Token& e = next();
            if (e.text.size() > 6) throw ParseError("exponent too large", e.pos);
            auto n = node(OperatorExpr::Kind::pow, op.pos);
            n->exponent = std::stoul(e.text);
            n->args.push_back(std::move(base));
            return n;
        }
        return base;
    }

    Ptr atom() {
        const Token& tok = next();
        switch (tok.kind) {
            case Token::Kind::integer: {
                auto n = node(OperatorExpr::Kind::number, tok.pos);
                mpz_class num(tok.text);
                mpz_class den = 1;
                if (peek().kind == Token::Kind::slash) {
                    next();
                    if (peek().kind != Token::Kind::integer) throw ParseError("expected denominator", peek().pos);
                    const Token& d = next();
                    den = mpz_class(d.text);
                    if (den == 0) throw ParseError("zero denominator", d.pos);
                }
                n->value = Rational(num, den);
                return n;
            }
            case Token::Kind::ident: {
                if (tok.text == "pi") return node(OperatorExpr::Kind::pi, tok.pos);
                std::optional<std::pair<OperatorExpr::Kind, Var>> m;
                if (tok.text == "t") m = {OperatorExpr::Kind::x, Var::t};
                else if (tok.text == "dt") m = {OperatorExpr::Kind::d, Var::t};
                else if (tok.text == "eta") m = {OperatorExpr::Kind::x, Var::eta};
                else if (tok.text == "deta") m = {OperatorExpr::Kind::d, Var::eta};
                if (!m) throw ParseError("unknown symbol '" + tok.text + "'", tok.pos);
                auto n = node(m->first, tok.pos);
                n->var = m->second;
                return n;
            }
            case Token::Kind::lparen: {
                Ptr inner = expr();
                if (peek().kind != Token::Kind::rparen) throw ParseError("expected ')'", peek().pos);
                next();
                return inner;
            }
            case Token::Kind::end: throw ParseError("unexpected end of input", tok.pos);
            default: throw ParseError("unexpected '" + tok.text + "'", tok.pos);
        }
    }

    std::vector<Token> toks_;
    std::size_t i_ = 0;
};

void collect_var(const OperatorExpr& e, std::optional<Var>& var) {
    if (e.kind == OperatorExpr::Kind::x || e.kind == OperatorExpr::Kind::d) {
        if (var && *var != e.var) throw ParseError("mixes t/dt with eta/deta", e.position);
        var = e.var;
    }
    for (const auto& a : e.args) collect_var(*a, var);
}

template <Scalar K>
WeylOp<K> evaluate(const OperatorExpr& e, Var var, const std::function<K(std::size_t)>& pi) {
    using Op = WeylOp<K>;
    switch (e.kind) {
        case OperatorExpr::Kind::number: return Op::scalar(var, K(e.value));
        case OperatorExpr::Kind::pi: return Op::scalar(var, pi(e.position));
        case OperatorExpr::Kind::x: return Op::x(var);
        case OperatorExpr::Kind::d: return Op::d(var);
        case OperatorExpr::Kind::add: return evaluate<K>(*e.args[0], var, pi) + evaluate<K>(*e.args[1], var, pi);
        case OperatorExpr::Kind::sub: return evaluate<K>(*e.args[0], var, pi) - evaluate<K>(*e.args[1], var, pi);
        case OperatorExpr::Kind::mul: return evaluate<K>(*e.args[0], var, pi) * evaluate<K>(*e.args[1], var, pi);
        case OperatorExpr::Kind::neg: return -evaluate<K>(*e.args[0], var, pi);
        case OperatorExpr::Kind::pow: return evaluate<K>(*e.args[0], var, pi).pow(e.exponent);
    }
    return Op(var);
}

Var expression_var(const OperatorExpr& e, Var fallback) {
    std::optional<Var> v;
    collect_var(e, v);
    return v.value_or(fallback);
}

}  // namespace

std::unique_ptr<OperatorExpr> parse_expression(std::string_view text) { return Parser(tokenize(text)).parse(); }

WeylOp<Rational> parse_operator(std::string_view text, Var fallback) {
    const auto ast = parse_expression(text);
    return evaluate<Rational>(*ast, expression_var(*ast, fallback), [](std::size_t pos) -> Rational {
        throw ParseError("'pi' is only available for p-adic commands", pos);
    });
}

WeylOp<EisensteinScalar> parse_operator_padic(std::string_view text, unsigned long p, Var fallback) {
    const auto ast = parse_expression(text);
    const EisensteinScalar pi = EisensteinScalar::pi(p);
    return evaluate<EisensteinScalar>(*ast, expression_var(*ast, fallback), [&](std::size_t) { return pi; });
}

}  // namespace microloc
