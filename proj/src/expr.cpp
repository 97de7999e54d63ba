#include "priccati/expr.hpp"

#include <cctype>
#include <functional>

#include "priccati/error.hpp"

namespace priccati {

namespace {

class Parser {
public:
    explicit Parser(std::string_view text) : text_(text) {}

    ExprPtr parse()
    {
        ExprPtr e = sum();
        skip_space();
        if (pos_ != text_.size()) {
            fail("unexpected character '" + std::string(1, text_[pos_]) + "'");
        }
        return e;
    }

private:
    [[noreturn]] void fail(const std::string& what) const
    {
        throw InputError("cannot parse expression \"" + std::string(text_) + "\" at position " +
                         std::to_string(pos_) + ": " + what);
    }

    void skip_space()
    {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])) != 0) {
            ++pos_;
        }
    }

    bool accept(char c)
    {
        skip_space();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    static ExprPtr node(ExprNode::Kind k, std::vector<ExprPtr> children)
    {
        auto n = std::make_shared<ExprNode>();
        n->kind = k;
        n->children = std::move(children);
        return n;
    }

    ExprPtr sum()
    {
        ExprPtr left = product();
        for (;;) {
            if (accept('+')) {
                left = node(ExprNode::Kind::Add, {left, product()});
            } else if (accept('-')) {
                left = node(ExprNode::Kind::Sub, {left, product()});
            } else {
                return left;
            }
        }
    }

    ExprPtr product()
    {
        ExprPtr left = unary();
        for (;;) {
            if (accept('*')) {
                left = node(ExprNode::Kind::Mul, {left, unary()});
            } else if (accept('/')) {
                left = node(ExprNode::Kind::Div, {left, unary()});
            } else {
                return left;
            }
        }
    }

    ExprPtr unary()
    {
        if (accept('-')) {
            return node(ExprNode::Kind::Neg, {unary()});
        }
        if (accept('+')) {
            return unary();
        }
        return power();
    }

    ExprPtr power()
    {
        ExprPtr base = atom();
        if (accept('^')) {
            skip_space();
            const std::size_t start = pos_;
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])) != 0) {
                ++pos_;
            }
            if (start == pos_) {
                fail("exponent must be a nonnegative integer literal");
            }
            const std::string digits(text_.substr(start, pos_ - start));
            if (digits.size() > 18) {
                fail("exponent too large");
            }
            auto n = std::make_shared<ExprNode>();
            n->kind = ExprNode::Kind::Pow;
            n->exponent = std::stoull(digits);
            n->children = {base};
            return n;
        }
        return base;
    }

    ExprPtr atom()
    {
        skip_space();
        if (pos_ >= text_.size()) {
            fail("unexpected end of input");
        }
        const char c = text_[pos_];
        if (c == '(') {
            ++pos_;
            ExprPtr e = sum();
            if (!accept(')')) {
                fail("missing ')'");
            }
            return e;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) != 0) {
            const std::size_t start = pos_;
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])) != 0) {
                ++pos_;
            }
            auto n = std::make_shared<ExprNode>();
            n->kind = ExprNode::Kind::Number;
            n->text = std::string(text_.substr(start, pos_ - start));
            return n;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) != 0) {
            const std::size_t start = pos_;
            while (pos_ < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) != 0 || text_[pos_] == '_')) {
                ++pos_;
            }
            auto n = std::make_shared<ExprNode>();
            n->kind = ExprNode::Kind::Variable;
            n->text = std::string(text_.substr(start, pos_ - start));
            return n;
        }
        fail("unexpected character '" + std::string(1, c) + "'");
    }

    std::string_view text_;
    std::size_t pos_ = 0;
};

std::uint64_t reduce_decimal(const std::string& digits, std::uint64_t p)
{
    std::uint64_t r = 0;
    for (const char c : digits) {
        r = (r * 10 + static_cast<std::uint64_t>(c - '0')) % p;
    }
    return r;
}

template <typename T>
struct Ops {
    std::function<T(std::uint64_t)> number;
    std::function<T(const std::string&)> variable;
    std::function<T(const T&, const T&)> add;
    std::function<T(const T&, const T&)> sub;
    std::function<T(const T&, const T&)> mul;
    std::function<T(const T&, const T&)> div;
    std::function<T(const T&)> neg;
    std::function<T(const T&, std::uint64_t)> pow;
};

template <typename T>
T evaluate(const ExprPtr& e, const Ops<T>& ops, std::uint64_t p)
{
    using K = ExprNode::Kind;
    switch (e->kind) {
    case K::Number:
        return ops.number(reduce_decimal(e->text, p));
    case K::Variable:
        return ops.variable(e->text);
    case K::Add:
        return ops.add(evaluate(e->children[0], ops, p), evaluate(e->children[1], ops, p));
    case K::Sub:
        return ops.sub(evaluate(e->children[0], ops, p), evaluate(e->children[1], ops, p));
    case K::Mul:
        return ops.mul(evaluate(e->children[0], ops, p), evaluate(e->children[1], ops, p));
    case K::Div:
        return ops.div(evaluate(e->children[0], ops, p), evaluate(e->children[1], ops, p));
    case K::Neg:
        return ops.neg(evaluate(e->children[0], ops, p));
    case K::Pow:
        return ops.pow(evaluate(e->children[0], ops, p), e->exponent);
    }
    throw Error("unknown expression node");
}

[[noreturn]] void unknown_variable(const std::string& name, const std::string& allowed)
{
    throw InputError("unknown variable '" + name + "' (allowed: " + allowed + ")");
}

} // namespace

ExprPtr parse_expression(std::string_view text)
{
    return Parser(text).parse();
}

BivPoly to_bivpoly(const ExprPtr& e, const FieldPtr& field)
{
    Ops<BivPoly> ops;
    ops.number = [&](std::uint64_t v) { return BivPoly::from_x(Poly::constant(field, field->element(v))); };
    ops.variable = [&](const std::string& name) {
        if (name == "x") {
            return BivPoly::from_x(Poly::x(field));
        }
        if (name == "Y") {
            return BivPoly::y(field);
        }
        if (name == "z") {
            return BivPoly::from_x(Poly::constant(field, field->generator()));
        }
        unknown_variable(name, "x, Y, z");
    };
    ops.add = [](const BivPoly& a, const BivPoly& b) { return a + b; };
    ops.sub = [](const BivPoly& a, const BivPoly& b) { return a - b; };
    ops.mul = [](const BivPoly& a, const BivPoly& b) { return a * b; };
    ops.neg = [](const BivPoly& a) { return -a; };
    ops.pow = [](const BivPoly& a, std::uint64_t k) { return a.pow(k); };
    ops.div = [&](const BivPoly& a, const BivPoly& b) {
        if (b.degree_y() != 0 || b.coeff(0).degree() != 0) {
            throw InputError("polynomial expressions may only be divided by nonzero constants");
        }
        return a.scaled(Poly::constant(field, field->inv(b.coeff(0).coeff(0))));
    };
    return evaluate(e, ops, field->characteristic());
}

RatFunc to_ratfunc(const ExprPtr& e, const FieldPtr& field)
{
    Ops<RatFunc> ops;
    ops.number = [&](std::uint64_t v) { return RatFunc::constant(field, field->element(v)); };
    ops.variable = [&](const std::string& name) {
        if (name == "x") {
            return RatFunc::x(field);
        }
        if (name == "z") {
            return RatFunc::constant(field, field->generator());
        }
        unknown_variable(name, "x, z");
    };
    ops.add = [](const RatFunc& a, const RatFunc& b) { return a + b; };
    ops.sub = [](const RatFunc& a, const RatFunc& b) { return a - b; };
    ops.mul = [](const RatFunc& a, const RatFunc& b) { return a * b; };
    ops.div = [](const RatFunc& a, const RatFunc& b) { return a / b; };
    ops.neg = [](const RatFunc& a) { return -a; };
    ops.pow = [](const RatFunc& a, std::uint64_t k) { return a.pow(static_cast<std::int64_t>(k)); };
    return evaluate(e, ops, field->characteristic());
}

FFElem to_ffelem(const ExprPtr& e, const CurvePtr& curve)
{
    const FieldPtr& field = curve->base();
    Ops<FFElem> ops;
    ops.number = [&](std::uint64_t v) { return curve->from_ratfunc(RatFunc::constant(field, field->element(v))); };
    ops.variable = [&](const std::string& name) {
        if (name == "x") {
            return curve->x();
        }
        if (name == "a") {
            return curve->a();
        }
        if (name == "z") {
            return curve->from_ratfunc(RatFunc::constant(field, field->generator()));
        }
        unknown_variable(name, "x, a, z");
    };
    ops.add = [](const FFElem& a, const FFElem& b) { return a + b; };
    ops.sub = [](const FFElem& a, const FFElem& b) { return a - b; };
    ops.mul = [](const FFElem& a, const FFElem& b) { return a * b; };
    ops.div = [](const FFElem& a, const FFElem& b) { return a / b; };
    ops.neg = [](const FFElem& a) { return -a; };
    ops.pow = [](const FFElem& a, std::uint64_t k) { return a.pow(k); };
    return evaluate(e, ops, field->characteristic());
}

std::vector<std::uint64_t> to_fp_poly(const ExprPtr& e, std::uint64_t p)
{
    const FieldPtr fp = FiniteField::prime(p);
    Ops<Poly> ops;
    ops.number = [&](std::uint64_t v) { return Poly::constant(fp, fp->element(v)); };
    ops.variable = [&](const std::string& name) {
        if (name == "z") {
            return Poly::x(fp);
        }
        unknown_variable(name, "z");
    };
    ops.add = [](const Poly& a, const Poly& b) { return a + b; };
    ops.sub = [](const Poly& a, const Poly& b) { return a - b; };
    ops.mul = [](const Poly& a, const Poly& b) { return a * b; };
    ops.neg = [](const Poly& a) { return -a; };
    ops.pow = [](const Poly& a, std::uint64_t k) { return a.pow(k); };
    ops.div = [&](const Poly& a, const Poly& b) {
        if (b.degree() != 0) {
            throw InputError("modulus expressions may only be divided by nonzero constants");
        }
        return a.scaled(fp->inv(b.coeff(0)));
    };
    const Poly r = evaluate(e, ops, p);
    std::vector<std::uint64_t> out;
    for (const auto c : r.coeffs()) {
        out.push_back(c.rep);
    }
    return out;
}

BivPoly parse_bivpoly(std::string_view text, const FieldPtr& field)
{
    return to_bivpoly(parse_expression(text), field);
}

FFElem parse_ffelem(std::string_view text, const CurvePtr& curve)
{
    return to_ffelem(parse_expression(text), curve);
}

RatFunc parse_ratfunc(std::string_view text, const FieldPtr& field)
{
    return to_ratfunc(parse_expression(text), field);
}

} // namespace priccati
