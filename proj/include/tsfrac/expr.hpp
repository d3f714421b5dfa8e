#pragma once

#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <memory>
#include <sstream>
#include <string>
#include <string_view>

#include "tsfrac/errors.hpp"

namespace tsfrac {

/// Parsed right-hand-side expression f(t, y).
///
/// Grammar (loosest to tightest binding):
///   expr   := term  (('+' | '-') term)*
///   term   := unary (('*' | '/') unary)*
///   unary  := '-' unary | power
///   power  := atom ['^' unary]                  (right-associative)
///   atom   := number | 't' | 'y' | 'pi' | 'e'
///          | func '(' expr ')' | '(' expr ')'
///   func   := sin | cos | exp | log | sqrt | abs
///
/// Unary minus binds looser than '^', so "-t^2" parses as -(t^2).
/// The identifier vocabulary is closed; anything else is UnknownSymbol.
class Expr {
public:
    enum class Op {
        Lit, VarT, VarY, Neg,
        Add, Sub, Mul, Div, Pow,
        Sin, Cos, Exp, Log, Sqrt, Abs,
    };

    struct Node {
        Op op;
        double value = 0.0;      // Lit only
        std::size_t pos = 0;     // offset into the source text
        std::shared_ptr<const Node> lhs;
        std::shared_ptr<const Node> rhs;
    };
    using NodePtr = std::shared_ptr<const Node>;

    static Expr parse(std::string_view text) {
        Parser p(text);
        NodePtr root = p.parse_expr();
        p.expect_end();
        return Expr(std::move(root));
    }

    double eval(double t, double y) const {
        double v = eval_node(*root_, t, y);
        if (!std::isfinite(v))
            throw DomainError("non-finite result at position " + std::to_string(root_->pos));
        return v;
    }

    /// Canonical printed form; re-parsing it reproduces the same tree.
    std::string to_string() const {
        std::ostringstream os;
        print(os, *root_, 0);
        return os.str();
    }

    const Node& root() const noexcept { return *root_; }

    /// True when both expressions mention y; constant-in-y right-hand sides
    /// have Lipschitz constant zero by inspection.
    bool depends_on_y() const { return mentions(*root_, Op::VarY); }

    static bool structurally_equal(const Expr& a, const Expr& b) {
        return node_equal(*a.root_, *b.root_);
    }

private:
    explicit Expr(NodePtr root) : root_(std::move(root)) {}

    static bool mentions(const Node& n, Op what) {
        if (n.op == what) return true;
        if (n.lhs && mentions(*n.lhs, what)) return true;
        if (n.rhs && mentions(*n.rhs, what)) return true;
        return false;
    }

    static bool node_equal(const Node& a, const Node& b) {
        if (a.op != b.op) return false;
        if (a.op == Op::Lit && a.value != b.value) return false;
        if (static_cast<bool>(a.lhs) != static_cast<bool>(b.lhs)) return false;
        if (static_cast<bool>(a.rhs) != static_cast<bool>(b.rhs)) return false;
        if (a.lhs && !node_equal(*a.lhs, *b.lhs)) return false;
        if (a.rhs && !node_equal(*a.rhs, *b.rhs)) return false;
        return true;
    }

    static double eval_node(const Node& n, double t, double y) {
        switch (n.op) {
            case Op::Lit: return n.value;
            case Op::VarT: return t;
            case Op::VarY: return y;
            case Op::Neg: return -eval_node(*n.lhs, t, y);
            case Op::Add: return eval_node(*n.lhs, t, y) + eval_node(*n.rhs, t, y);
            case Op::Sub: return eval_node(*n.lhs, t, y) - eval_node(*n.rhs, t, y);
            case Op::Mul: return eval_node(*n.lhs, t, y) * eval_node(*n.rhs, t, y);
            case Op::Div: {
                double a = eval_node(*n.lhs, t, y);
                double b = eval_node(*n.rhs, t, y);
                if (b == 0.0)
                    throw DomainError("division by zero at position " + std::to_string(n.pos));
                return a / b;
            }
            case Op::Pow: {
                double a = eval_node(*n.lhs, t, y);
                double b = eval_node(*n.rhs, t, y);
                if (a < 0.0 && b != std::floor(b))
                    throw DomainError("negative base with non-integer exponent at position " +
                                      std::to_string(n.pos));
                if (a == 0.0 && b < 0.0)
                    throw DomainError("zero base with negative exponent at position " +
                                      std::to_string(n.pos));
                return std::pow(a, b);
            }
            case Op::Sin: return std::sin(eval_node(*n.lhs, t, y));
            case Op::Cos: return std::cos(eval_node(*n.lhs, t, y));
            case Op::Exp: return std::exp(eval_node(*n.lhs, t, y));
            case Op::Log: {
                double a = eval_node(*n.lhs, t, y);
                if (a <= 0.0)
                    throw DomainError("log of non-positive value at position " +
                                      std::to_string(n.pos));
                return std::log(a);
            }
            case Op::Sqrt: {
                double a = eval_node(*n.lhs, t, y);
                if (a < 0.0)
                    throw DomainError("sqrt of negative value at position " +
                                      std::to_string(n.pos));
                return std::sqrt(a);
            }
            case Op::Abs: return std::fabs(eval_node(*n.lhs, t, y));
        }
        throw DomainError("corrupt expression node");
    }

    // Precedence levels for printing: 0 add, 1 mul, 2 unary, 3 pow, 4 atom.
    static int level(Op op) {
        switch (op) {
            case Op::Add: case Op::Sub: return 0;
            case Op::Mul: case Op::Div: return 1;
            case Op::Neg: return 2;
            case Op::Pow: return 3;
            default: return 4;
        }
    }

    static void print(std::ostringstream& os, const Node& n, int min_level) {
        const int lv = level(n.op);
        const bool parens = lv < min_level;
        if (parens) os << '(';
        switch (n.op) {
            case Op::Lit: {
                char buf[40];
                std::snprintf(buf, sizeof buf, "%.17g", n.value);
                os << buf;
                break;
            }
            case Op::VarT: os << 't'; break;
            case Op::VarY: os << 'y'; break;
            case Op::Neg:
                os << '-';
                print(os, *n.lhs, 3);  // tighter than mul, looser operand needs parens
                break;
            case Op::Add: case Op::Sub:
                print(os, *n.lhs, 0);
                os << (n.op == Op::Add ? '+' : '-');
                print(os, *n.rhs, 1);  // right side must bind tighter to keep a-b-c shape
                break;
            case Op::Mul: case Op::Div:
                print(os, *n.lhs, 1);
                os << (n.op == Op::Mul ? '*' : '/');
                print(os, *n.rhs, 2);
                break;
            case Op::Pow:
                print(os, *n.lhs, 4);  // left operand of ^ is an atom
                os << '^';
                print(os, *n.rhs, 2);  // right side re-enters at unary level
                break;
            case Op::Sin: os << "sin("; print(os, *n.lhs, 0); os << ')'; break;
            case Op::Cos: os << "cos("; print(os, *n.lhs, 0); os << ')'; break;
            case Op::Exp: os << "exp("; print(os, *n.lhs, 0); os << ')'; break;
            case Op::Log: os << "log("; print(os, *n.lhs, 0); os << ')'; break;
            case Op::Sqrt: os << "sqrt("; print(os, *n.lhs, 0); os << ')'; break;
            case Op::Abs: os << "abs("; print(os, *n.lhs, 0); os << ')'; break;
        }
        if (parens) os << ')';
    }

    class Parser {
    public:
        explicit Parser(std::string_view text) : text_(text) {}

        NodePtr parse_expr() {
            NodePtr lhs = parse_term();
            for (;;) {
                skip_ws();
                std::size_t at = pos_;
                if (consume('+')) lhs = binary(Op::Add, at, lhs, parse_term());
                else if (consume('-')) lhs = binary(Op::Sub, at, lhs, parse_term());
                else return lhs;
            }
        }

        void expect_end() {
            skip_ws();
            if (pos_ != text_.size())
                throw tsfrac::ParseError("unexpected trailing input", pos_);
        }

    private:
        NodePtr parse_term() {
            NodePtr lhs = parse_unary();
            for (;;) {
                skip_ws();
                std::size_t at = pos_;
                if (consume('*')) lhs = binary(Op::Mul, at, lhs, parse_unary());
                else if (consume('/')) lhs = binary(Op::Div, at, lhs, parse_unary());
                else return lhs;
            }
        }

        NodePtr parse_unary() {
            skip_ws();
            std::size_t at = pos_;
            if (consume('-')) return unary(Op::Neg, at, parse_unary());
            return parse_power();
        }

        NodePtr parse_power() {
            NodePtr base = parse_atom();
            skip_ws();
            std::size_t at = pos_;
            if (consume('^')) return binary(Op::Pow, at, base, parse_unary());
            return base;
        }

        NodePtr parse_atom() {
            skip_ws();
            if (pos_ >= text_.size())
                throw tsfrac::ParseError("unexpected end of expression", pos_);
            const char c = text_[pos_];
            if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return parse_number();
            if (std::isalpha(static_cast<unsigned char>(c))) return parse_ident();
            if (consume('(')) {
                NodePtr inner = parse_expr();
                skip_ws();
                if (!consume(')'))
                    throw tsfrac::ParseError("expected ')'", pos_);
                return inner;
            }
            throw tsfrac::ParseError(std::string("unexpected character '") + c + "'", pos_);
        }

        NodePtr parse_number() {
            const char* begin = text_.data() + pos_;
            char* end = nullptr;
            double v = std::strtod(begin, &end);
            if (end == begin)
                throw tsfrac::ParseError("malformed number", pos_);
            std::size_t at = pos_;
            pos_ += static_cast<std::size_t>(end - begin);
            return literal(v, at);
        }

        NodePtr parse_ident() {
            std::size_t at = pos_;
            while (pos_ < text_.size() &&
                   (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
                ++pos_;
            std::string name(text_.substr(at, pos_ - at));
            if (name == "t") return leaf(Op::VarT, at);
            if (name == "y") return leaf(Op::VarY, at);
            if (name == "pi") return literal(M_PI, at);
            if (name == "e") return literal(M_E, at);
            Op fn;
            if (name == "sin") fn = Op::Sin;
            else if (name == "cos") fn = Op::Cos;
            else if (name == "exp") fn = Op::Exp;
            else if (name == "log") fn = Op::Log;
            else if (name == "sqrt") fn = Op::Sqrt;
            else if (name == "abs") fn = Op::Abs;
            else throw tsfrac::UnknownSymbol(name, at);
            skip_ws();
            if (!consume('('))
                throw tsfrac::ParseError("expected '(' after " + name, pos_);
            NodePtr arg = parse_expr();
            skip_ws();
            if (!consume(')'))
                throw tsfrac::ParseError("expected ')'", pos_);
            return unary(fn, at, std::move(arg));
        }

        static NodePtr literal(double v, std::size_t at) {
            auto n = std::make_shared<Node>();
            n->op = Op::Lit;
            n->value = v;
            n->pos = at;
            return n;
        }
        static NodePtr leaf(Op op, std::size_t at) {
            auto n = std::make_shared<Node>();
            n->op = op;
            n->pos = at;
            return n;
        }
        static NodePtr unary(Op op, std::size_t at, NodePtr operand) {
            auto n = std::make_shared<Node>();
            n->op = op;
            n->pos = at;
            n->lhs = std::move(operand);
            return n;
        }
        static NodePtr binary(Op op, std::size_t at, NodePtr lhs, NodePtr rhs) {
            auto n = std::make_shared<Node>();
            n->op = op;
            n->pos = at;
            n->lhs = std::move(lhs);
            n->rhs = std::move(rhs);
            return n;
        }

        void skip_ws() {
            while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])))
                ++pos_;
        }
        bool consume(char c) {
            if (pos_ < text_.size() && text_[pos_] == c) { ++pos_; return true; }
            return false;
        }

        std::string_view text_;
        std::size_t pos_ = 0;
    };

    NodePtr root_;
};

}  // namespace tsfrac
