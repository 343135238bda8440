#include "psido/expression.hpp"

#include <cctype>
#include <cmath>

namespace psido {

namespace {

struct Parser {
    const std::string& s;
    size_t pos = 0;

    explicit Parser(const std::string& text) : s(text) {}

    void skip_ws() {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    }
    bool eof() {
        skip_ws();
        return pos >= s.size();
    }
    char peek() {
        skip_ws();
        return pos < s.size() ? s[pos] : '\0';
    }
    bool accept(char c) {
        if (peek() == c) {
            ++pos;
            return true;
        }
        return false;
    }

    ExprPtr parse() {
        ExprPtr e = expr();
        if (!eof()) throw ParseError("unexpected trailing input", static_cast<int>(pos));
        return e;
    }

    ExprPtr make(ExprNode n) { return std::make_shared<ExprNode>(std::move(n)); }

    ExprPtr expr() {
        ExprPtr lhs = term();
        for (;;) {
            char c = peek();
            if (c != '+' && c != '-') return lhs;
            int p = static_cast<int>(pos);
            ++pos;
            ExprPtr rhs = term();
            ExprNode n;
            n.kind = ExprNode::Kind::Binary;
            n.op = c;
            n.lhs = lhs;
            n.rhs = rhs;
            n.position = p;
            lhs = make(std::move(n));
        }
    }

    ExprPtr term() {
        ExprPtr lhs = unary();
        for (;;) {
            char c = peek();
            if (c != '*' && c != '/') return lhs;
            int p = static_cast<int>(pos);
            ++pos;
            ExprPtr rhs = unary();
            ExprNode n;
            n.kind = ExprNode::Kind::Binary;
            n.op = c;
            n.lhs = lhs;
            n.rhs = rhs;
            n.position = p;
            lhs = make(std::move(n));
        }
    }

    ExprPtr unary() {
        char c = peek();
        if (c == '-' || c == '+') {
            int p = static_cast<int>(pos);
            ++pos;
            ExprPtr inner = unary();
            if (c == '+') return inner;
            ExprNode n;
            n.kind = ExprNode::Kind::Unary;
            n.op = '-';
            n.lhs = inner;
            n.position = p;
            return make(std::move(n));
        }
        return power();
    }

    ExprPtr power() {
        ExprPtr base = atom();
        if (peek() == '^') {
            int p = static_cast<int>(pos);
            ++pos;
            ExprPtr expo = unary();  // right-associative, binds unary minus
            ExprNode n;
            n.kind = ExprNode::Kind::Binary;
            n.op = '^';
            n.lhs = base;
            n.rhs = expo;
            n.position = p;
            return make(std::move(n));
        }
        return base;
    }

    ExprPtr atom() {
        skip_ws();
        int p = static_cast<int>(pos);
        if (pos >= s.size()) throw ParseError("unexpected end of expression", p);
        char c = s[pos];
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return ident();
        if (c == '(') {
            ++pos;
            ExprPtr e = expr();
            if (!accept(')')) throw ParseError("expected ')'", static_cast<int>(pos));
            return e;
        }
        throw ParseError(std::string("unexpected character '") + c + "'", p);
    }

    ExprPtr number() {
        int p = static_cast<int>(pos);
        size_t start = pos;
        while (pos < s.size() && (std::isdigit(static_cast<unsigned char>(s[pos])) || s[pos] == '.')) ++pos;
        if (pos < s.size() && (s[pos] == 'e' || s[pos] == 'E')) {
            size_t save = pos;
            ++pos;
            if (pos < s.size() && (s[pos] == '+' || s[pos] == '-')) ++pos;
            if (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) {
                while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
            } else {
                pos = save;
            }
        }
        std::string tok = s.substr(start, pos - start);
        try {
            ExprNode n;
            n.kind = ExprNode::Kind::Number;
            n.value = cd(std::stod(tok), 0.0);
            n.position = p;
            return make(std::move(n));
        } catch (...) {
            throw ParseError("malformed number '" + tok + "'", p);
        }
    }

    ExprPtr ident() {
        int p = static_cast<int>(pos);
        size_t start = pos;
        while (pos < s.size() &&
               (std::isalnum(static_cast<unsigned char>(s[pos])) || s[pos] == '_'))
            ++pos;
        std::string name = s.substr(start, pos - start);
        static const char* funcs[] = {"sqrt", "exp", "log", "sin", "cos"};
        for (const char* f : funcs) {
            if (name == f) {
                if (!accept('(')) throw ParseError("expected '(' after " + name, static_cast<int>(pos));
                ExprPtr arg = expr();
                if (!accept(')')) throw ParseError("expected ')'", static_cast<int>(pos));
                ExprNode n;
                n.kind = ExprNode::Kind::Call;
                n.name = name;
                n.lhs = arg;
                n.position = p;
                return make(std::move(n));
            }
        }
        if (name == "n" || name == "x" || name == "xi" || name == "i" || name == "pi") {
            ExprNode n;
            n.kind = ExprNode::Kind::Variable;
            n.name = name;
            n.position = p;
            return make(std::move(n));
        }
        throw ParseError("unknown identifier '" + name + "'", p);
    }
};

}  // namespace

ExprPtr parse_expression(const std::string& text) {
    Parser p(text);
    return p.parse();
}

cd eval_numeric(const ExprPtr& e, const NumericEnv& env) {
    switch (e->kind) {
        case ExprNode::Kind::Number:
            return e->value;
        case ExprNode::Kind::Variable: {
            if (e->name == "i") return cd(0, 1);
            if (e->name == "pi") return cd(PI, 0);
            const std::optional<cd>* v = nullptr;
            if (e->name == "n") v = &env.n;
            if (e->name == "x") v = &env.x;
            if (e->name == "xi") v = &env.xi;
            if (!v || !v->has_value())
                throw ParseError("variable '" + e->name + "' not available here", e->position);
            return v->value();
        }
        case ExprNode::Kind::Unary:
            return -eval_numeric(e->lhs, env);
        case ExprNode::Kind::Binary: {
            cd a = eval_numeric(e->lhs, env);
            cd b = eval_numeric(e->rhs, env);
            switch (e->op) {
                case '+': return a + b;
                case '-': return a - b;
                case '*': return a * b;
                case '/': return a / b;
                case '^': return std::pow(a, b);
            }
            break;
        }
        case ExprNode::Kind::Call: {
            cd a = eval_numeric(e->lhs, env);
            if (e->name == "sqrt") return std::sqrt(a);
            if (e->name == "exp") return std::exp(a);
            if (e->name == "log") return std::log(a);
            if (e->name == "sin") return std::sin(a);
            if (e->name == "cos") return std::cos(a);
            break;
        }
    }
    throw ParseError("malformed expression node", e->position);
}

ScalarSeries eval_series(const ExprPtr& e, const SeriesEnv& env) {
    switch (e->kind) {
        case ExprNode::Kind::Number:
            return ScalarSeries::constant(e->value);
        case ExprNode::Kind::Variable: {
            if (e->name == "i") return ScalarSeries::constant(cd(0, 1));
            if (e->name == "pi") return ScalarSeries::constant(cd(PI, 0));
            if (e->name == "n") {
                if (!env.allow_n) throw ParseError("variable 'n' not allowed here", e->position);
                return ScalarSeries::coordinate(env.side);
            }
            if (e->name == "xi") {
                if (!env.allow_xi) throw ParseError("variable 'xi' not allowed here", e->position);
                return ScalarSeries::coordinate(env.side);
            }
            if (e->name == "x") {
                if (!env.x) throw ParseError("variable 'x' not available here", e->position);
                return ScalarSeries::constant(*env.x);
            }
            break;
        }
        case ExprNode::Kind::Unary:
            return -eval_series(e->lhs, env);
        case ExprNode::Kind::Binary: {
            if (e->op == '^') {
                // Exponents must be constants: evaluate numerically with no
                // variables bound.
                cd p;
                try {
                    p = eval_numeric(e->rhs, NumericEnv{});
                } catch (const ParseError&) {
                    throw ParseError("exponent must be a constant expression", e->position);
                }
                return eval_series(e->lhs, env).pow(p);
            }
            ScalarSeries a = eval_series(e->lhs, env);
            ScalarSeries b = eval_series(e->rhs, env);
            switch (e->op) {
                case '+': return a + b;
                case '-': return a - b;
                case '*': return a * b;
                case '/': return a / b;
            }
            break;
        }
        case ExprNode::Kind::Call: {
            ScalarSeries a = eval_series(e->lhs, env);
            if (e->name == "sqrt") return a.pow(cd(0.5));
            if (e->name == "exp") return a.exp_();
            if (e->name == "log") return a.log_();
            if (e->name == "sin") return a.sin_();
            if (e->name == "cos") return a.cos_();
            break;
        }
    }
    throw ParseError("malformed expression node", e->position);
}

bool uses_variable(const ExprPtr& e, const std::string& name) {
    if (!e) return false;
    if (e->kind == ExprNode::Kind::Variable && e->name == name) return true;
    return uses_variable(e->lhs, name) || uses_variable(e->rhs, name);
}

}  // namespace psido
