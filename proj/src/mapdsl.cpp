#include "torusrot/mapdsl.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <numbers>
#include <set>

namespace torusrot {

namespace {

// ---------------------------------------------------------------- lexing

enum class Tok { Number, Name, Plus, Minus, Star, Slash, LParen, RParen, Semi, Pipe, Comma, Equal, End };

struct Token {
    Tok kind;
    double value = 0.0;
    std::string text;
    std::size_t pos = 0;
};

class Lexer {
public:
    explicit Lexer(const std::string& src) : src_(src) {}

    Token next() {
        while (i_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[i_]))) ++i_;
        const std::size_t start = i_;
        if (i_ >= src_.size()) return {Tok::End, 0.0, "", start};

        const char c = src_[i_];
        switch (c) {
            case '+': ++i_; return {Tok::Plus, 0.0, "+", start};
            case '-': ++i_; return {Tok::Minus, 0.0, "-", start};
            case '*': ++i_; return {Tok::Star, 0.0, "*", start};
            case '/': ++i_; return {Tok::Slash, 0.0, "/", start};
            case '(': ++i_; return {Tok::LParen, 0.0, "(", start};
            case ')': ++i_; return {Tok::RParen, 0.0, ")", start};
            case ';': ++i_; return {Tok::Semi, 0.0, ";", start};
            case '|': ++i_; return {Tok::Pipe, 0.0, "|", start};
            case ',': ++i_; return {Tok::Comma, 0.0, ",", start};
            case '=': ++i_; return {Tok::Equal, 0.0, "=", start};
            default: break;
        }

        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
            std::size_t j = i_;
            while (j < src_.size() && (std::isdigit(static_cast<unsigned char>(src_[j])) || src_[j] == '.')) ++j;
            if (j < src_.size() && (src_[j] == 'e' || src_[j] == 'E')) {
                std::size_t k = j + 1;
                if (k < src_.size() && (src_[k] == '+' || src_[k] == '-')) ++k;
                if (k < src_.size() && std::isdigit(static_cast<unsigned char>(src_[k]))) {
                    ++k;
                    while (k < src_.size() && std::isdigit(static_cast<unsigned char>(src_[k]))) ++k;
                    j = k;
                }
            }
            const std::string text = src_.substr(i_, j - i_);
            char* end = nullptr;
            const double v = std::strtod(text.c_str(), &end);
            if (end != text.c_str() + text.size())
                throw ParseError("malformed number '" + text + "'", start);
            i_ = j;
            return {Tok::Number, v, text, start};
        }

        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t j = i_;
            while (j < src_.size() &&
                   (std::isalnum(static_cast<unsigned char>(src_[j])) || src_[j] == '_'))
                ++j;
            const std::string text = src_.substr(i_, j - i_);
            i_ = j;
            return {Tok::Name, 0.0, text, start};
        }

        throw ParseError(std::string("unexpected character '") + c + "'", start);
    }

private:
    const std::string& src_;
    std::size_t i_ = 0;
};

// --------------------------------------------------------------- parsing

ExprPtr leaf(MapExpr::Op op) {
    auto e = std::make_shared<MapExpr>();
    e->op = op;
    return e;
}

ExprPtr number(double v) {
    auto e = std::make_shared<MapExpr>();
    e->op = MapExpr::Op::Num;
    e->value = v;
    return e;
}

ExprPtr param(std::string name) {
    auto e = std::make_shared<MapExpr>();
    e->op = MapExpr::Op::Param;
    e->name = std::move(name);
    return e;
}

ExprPtr unary(MapExpr::Op op, ExprPtr child) {
    auto e = std::make_shared<MapExpr>();
    e->op = op;
    e->lhs = std::move(child);
    return e;
}

ExprPtr binary(MapExpr::Op op, ExprPtr l, ExprPtr r) {
    auto e = std::make_shared<MapExpr>();
    e->op = op;
    e->lhs = std::move(l);
    e->rhs = std::move(r);
    return e;
}

class Parser {
public:
    explicit Parser(const std::string& src) : lex_(src) { advance(); }

    MapDefinition parse() {
        MapDefinition def;
        def.fx = parse_expr();
        expect(Tok::Semi, "';' between the two forward components");
        def.fy = parse_expr();

        if (cur_.kind == Tok::Pipe) {
            advance();
            def.gx = parse_expr();
            expect(Tok::Semi, "';' between the two inverse components");
            def.gy = parse_expr();
        }

        if (cur_.kind == Tok::Name && cur_.text == "where") {
            advance();
            parse_bindings(def);
        }
        if (cur_.kind != Tok::End)
            throw ParseError("trailing input after map definition", cur_.pos);

        check_names(def);
        return def;
    }

private:
    void advance() { cur_ = lex_.next(); }

    void expect(Tok kind, const std::string& what) {
        if (cur_.kind != kind) throw ParseError("expected " + what, cur_.pos);
        advance();
    }

    ExprPtr parse_expr() {
        ExprPtr e = parse_term();
        while (cur_.kind == Tok::Plus || cur_.kind == Tok::Minus) {
            const MapExpr::Op op =
                cur_.kind == Tok::Plus ? MapExpr::Op::Add : MapExpr::Op::Sub;
            advance();
            e = binary(op, std::move(e), parse_term());
        }
        return e;
    }

    ExprPtr parse_term() {
        ExprPtr e = parse_factor();
        while (cur_.kind == Tok::Star || cur_.kind == Tok::Slash) {
            const MapExpr::Op op =
                cur_.kind == Tok::Star ? MapExpr::Op::Mul : MapExpr::Op::Div;
            const std::size_t at = cur_.pos;
            advance();
            ExprPtr rhs = parse_factor();
            if (op == MapExpr::Op::Div && rhs->op == MapExpr::Op::Num && rhs->value == 0.0)
                throw ParseError("division by the literal 0", at);
            e = binary(op, std::move(e), std::move(rhs));
        }
        return e;
    }

    ExprPtr parse_factor() {
        if (cur_.kind == Tok::Minus) {
            advance();
            return unary(MapExpr::Op::Neg, parse_factor());
        }
        return parse_primary();
    }

    ExprPtr parse_primary() {
        if (cur_.kind == Tok::Number) {
            const double v = cur_.value;
            advance();
            return number(v);
        }
        if (cur_.kind == Tok::LParen) {
            advance();
            ExprPtr e = parse_expr();
            expect(Tok::RParen, "')'");
            return e;
        }
        if (cur_.kind == Tok::Name) {
            const std::string name = cur_.text;
            const std::size_t at = cur_.pos;
            advance();
            if (name == "pi") return leaf(MapExpr::Op::Pi);
            if (name == "x") return leaf(MapExpr::Op::X);
            if (name == "y") return leaf(MapExpr::Op::Y);
            if (name == "sin" || name == "cos") {
                expect(Tok::LParen, "'(' after function name");
                ExprPtr arg = parse_expr();
                if (cur_.kind == Tok::Comma)
                    throw ParseError(name + " takes exactly one argument", cur_.pos);
                expect(Tok::RParen, "')' closing function call");
                return unary(name == "sin" ? MapExpr::Op::Sin : MapExpr::Op::Cos,
                             std::move(arg));
            }
            if (name == "where")
                throw ParseError("'where' is reserved", at);
            param_pos_.emplace(name, at);
            return param(name);
        }
        throw ParseError("expected a value, name or '('", cur_.pos);
    }

    void parse_bindings(MapDefinition& def) {
        while (true) {
            if (cur_.kind != Tok::Name)
                throw ParseError("expected parameter name in where-clause", cur_.pos);
            const std::string name = cur_.text;
            const std::size_t at = cur_.pos;
            if (name == "x" || name == "y" || name == "pi" || name == "sin" ||
                name == "cos" || name == "where")
                throw ParseError("'" + name + "' cannot be a parameter name", at);
            if (def.params.count(name))
                throw ParseError("parameter '" + name + "' bound twice", at);
            advance();
            expect(Tok::Equal, "'=' in binding");
            double sign = 1.0;
            if (cur_.kind == Tok::Minus) {
                sign = -1.0;
                advance();
            }
            if (cur_.kind != Tok::Number)
                throw ParseError("expected numeric value in binding", cur_.pos);
            def.params[name] = sign * cur_.value;
            advance();
            if (cur_.kind != Tok::Comma) break;
            advance();
        }
    }

    void collect_params(const ExprPtr& e, std::set<std::string>& out) {
        if (!e) return;
        if (e->op == MapExpr::Op::Param) out.insert(e->name);
        collect_params(e->lhs, out);
        collect_params(e->rhs, out);
    }

    void check_names(const MapDefinition& def) {
        std::set<std::string> used;
        collect_params(def.fx, used);
        collect_params(def.fy, used);
        collect_params(def.gx, used);
        collect_params(def.gy, used);
        for (const std::string& name : used)
            if (!def.params.count(name)) {
                const auto it = param_pos_.find(name);
                throw ParseError("unbound parameter '" + name + "'",
                                 it == param_pos_.end() ? 0 : it->second);
            }
    }

    Lexer lex_;
    Token cur_;
    std::map<std::string, std::size_t> param_pos_;  // first occurrence
};

// -------------------------------------------------------------- printing

int precedence(MapExpr::Op op) {
    switch (op) {
        case MapExpr::Op::Add:
        case MapExpr::Op::Sub: return 1;
        case MapExpr::Op::Mul:
        case MapExpr::Op::Div: return 2;
        case MapExpr::Op::Neg: return 3;
        default: return 4;
    }
}

std::string format_number(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void print_expr(const MapExpr& e, std::string& out) {
    auto child = [&out](const MapExpr& c, bool parens) {
        if (parens) out += '(';
        print_expr(c, out);
        if (parens) out += ')';
    };
    switch (e.op) {
        case MapExpr::Op::Num: out += format_number(e.value); return;
        case MapExpr::Op::Pi: out += "pi"; return;
        case MapExpr::Op::X: out += "x"; return;
        case MapExpr::Op::Y: out += "y"; return;
        case MapExpr::Op::Param: out += e.name; return;
        case MapExpr::Op::Neg:
            out += '-';
            child(*e.lhs, precedence(e.lhs->op) < 3);
            return;
        case MapExpr::Op::Sin:
        case MapExpr::Op::Cos:
            out += e.op == MapExpr::Op::Sin ? "sin(" : "cos(";
            print_expr(*e.lhs, out);
            out += ')';
            return;
        case MapExpr::Op::Add:
        case MapExpr::Op::Sub:
            child(*e.lhs, precedence(e.lhs->op) < 1);
            out += e.op == MapExpr::Op::Add ? " + " : " - ";
            child(*e.rhs, precedence(e.rhs->op) <= 1);
            return;
        case MapExpr::Op::Mul:
        case MapExpr::Op::Div:
            child(*e.lhs, precedence(e.lhs->op) < 2);
            out += e.op == MapExpr::Op::Mul ? "*" : "/";
            child(*e.rhs, precedence(e.rhs->op) <= 2);
            return;
    }
}

// ------------------------------------------------------------- compiling

struct Instr {
    enum class Op { Num, X, Y, Neg, Add, Sub, Mul, Div, Sin, Cos };
    Op op;
    double value = 0.0;
};

struct CompiledExpr {
    std::vector<Instr> code;

    double eval(double x, double y) const {
        double stack[64];
        int top = -1;
        for (const Instr& in : code) {
            switch (in.op) {
                case Instr::Op::Num: stack[++top] = in.value; break;
                case Instr::Op::X: stack[++top] = x; break;
                case Instr::Op::Y: stack[++top] = y; break;
                case Instr::Op::Neg: stack[top] = -stack[top]; break;
                case Instr::Op::Sin: stack[top] = std::sin(stack[top]); break;
                case Instr::Op::Cos: stack[top] = std::cos(stack[top]); break;
                case Instr::Op::Add: --top; stack[top] += stack[top + 1]; break;
                case Instr::Op::Sub: --top; stack[top] -= stack[top + 1]; break;
                case Instr::Op::Mul: --top; stack[top] *= stack[top + 1]; break;
                case Instr::Op::Div: --top; stack[top] /= stack[top + 1]; break;
            }
        }
        return stack[0];
    }
};

void compile_expr(const MapExpr& e, const std::map<std::string, double>& params,
                  std::vector<Instr>& out, int depth, int& max_depth) {
    if (depth > 60) throw ConfigError("expression nests too deeply to compile");
    max_depth = std::max(max_depth, depth + 1);
    switch (e.op) {
        case MapExpr::Op::Num: out.push_back({Instr::Op::Num, e.value}); return;
        case MapExpr::Op::Pi: out.push_back({Instr::Op::Num, std::numbers::pi}); return;
        case MapExpr::Op::X: out.push_back({Instr::Op::X}); return;
        case MapExpr::Op::Y: out.push_back({Instr::Op::Y}); return;
        case MapExpr::Op::Param: out.push_back({Instr::Op::Num, params.at(e.name)}); return;
        case MapExpr::Op::Neg:
            compile_expr(*e.lhs, params, out, depth + 1, max_depth);
            out.push_back({Instr::Op::Neg});
            return;
        case MapExpr::Op::Sin:
        case MapExpr::Op::Cos:
            compile_expr(*e.lhs, params, out, depth + 1, max_depth);
            out.push_back({e.op == MapExpr::Op::Sin ? Instr::Op::Sin : Instr::Op::Cos});
            return;
        default:
            compile_expr(*e.lhs, params, out, depth + 1, max_depth);
            compile_expr(*e.rhs, params, out, depth + 1, max_depth);
            switch (e.op) {
                case MapExpr::Op::Add: out.push_back({Instr::Op::Add}); break;
                case MapExpr::Op::Sub: out.push_back({Instr::Op::Sub}); break;
                case MapExpr::Op::Mul: out.push_back({Instr::Op::Mul}); break;
                case MapExpr::Op::Div: out.push_back({Instr::Op::Div}); break;
                default: throw ConfigError("unexpected expression node");
            }
            return;
    }
}

CompiledExpr compile_one(const ExprPtr& e, const std::map<std::string, double>& params) {
    CompiledExpr c;
    int max_depth = 0;
    compile_expr(*e, params, c.code, 0, max_depth);
    return c;
}

}  // namespace

MapDefinition parse_map(const std::string& source) { return Parser(source).parse(); }

double eval_expr(const MapExpr& e, double x, double y,
                 const std::map<std::string, double>& params) {
    struct Walker {
        double x, y;
        const std::map<std::string, double>& params;
        double run(const MapExpr& e) const {
            switch (e.op) {
                case MapExpr::Op::Num: return e.value;
                case MapExpr::Op::Pi: return std::numbers::pi;
                case MapExpr::Op::X: return x;
                case MapExpr::Op::Y: return y;
                case MapExpr::Op::Param: {
                    auto it = params.find(e.name);
                    if (it == params.end())
                        throw ConfigError("unbound parameter '" + e.name + "'");
                    return it->second;
                }
                case MapExpr::Op::Neg: return -run(*e.lhs);
                case MapExpr::Op::Sin: return std::sin(run(*e.lhs));
                case MapExpr::Op::Cos: return std::cos(run(*e.lhs));
                case MapExpr::Op::Add: return run(*e.lhs) + run(*e.rhs);
                case MapExpr::Op::Sub: return run(*e.lhs) - run(*e.rhs);
                case MapExpr::Op::Mul: return run(*e.lhs) * run(*e.rhs);
                case MapExpr::Op::Div: return run(*e.lhs) / run(*e.rhs);
            }
            throw ConfigError("unexpected expression node");
        }
    };
    const double v = Walker{x, y, params}.run(e);
    if (!std::isfinite(v)) throw NumericError("expression evaluated to a non-finite value");
    return v;
}

std::string pretty_print(const MapExpr& e) {
    std::string out;
    print_expr(e, out);
    return out;
}

std::string pretty_print(const MapDefinition& def) {
    std::string out = pretty_print(*def.fx) + " ; " + pretty_print(*def.fy);
    if (def.has_inverse()) out += " | " + pretty_print(*def.gx) + " ; " + pretty_print(*def.gy);
    if (!def.params.empty()) {
        out += " where ";
        bool first = true;
        for (const auto& [name, value] : def.params) {
            if (!first) out += ", ";
            first = false;
            out += name + "=" + format_number(value);
        }
    }
    return out;
}

LiftMap compile_map(const MapDefinition& def) {
    if (!def.fx || !def.fy) throw ConfigError("map definition misses a forward component");

    auto fx = std::make_shared<const CompiledExpr>(compile_one(def.fx, def.params));
    auto fy = std::make_shared<const CompiledExpr>(compile_one(def.fy, def.params));
    std::function<Vec2(const Vec2&)> fwd = [fx, fy](const Vec2& z) {
        return Vec2{fx->eval(z.x, z.y), fy->eval(z.x, z.y)};
    };

    std::function<Vec2(const Vec2&)> inv;
    if (def.has_inverse()) {
        auto gx = std::make_shared<const CompiledExpr>(compile_one(def.gx, def.params));
        auto gy = std::make_shared<const CompiledExpr>(compile_one(def.gy, def.params));
        inv = [gx, gy](const Vec2& z) { return Vec2{gx->eval(z.x, z.y), gy->eval(z.x, z.y)}; };
    }

    return LiftMap::custom("dsl: " + pretty_print(def), std::move(fwd), std::move(inv));
}

double inverse_consistency_check(const LiftMap& f, int samples, std::uint64_t seed) {
    if (!f.has_inverse()) throw ConfigError("map has no inverse to check");
    CounterRng rng(seed, {0x494E5645ull});
    double worst = 0.0;
    for (int i = 0; i < samples; ++i) {
        CounterRng point_rng = rng.split(std::uint64_t(i));
        const Vec2 z{point_rng.uniform(-1.0, 2.0), point_rng.uniform(-1.0, 2.0)};
        worst = std::max(worst, norm(f.inverse(f(z)) - z));
        worst = std::max(worst, norm(f(f.inverse(z)) - z));
    }
    return worst;
}

}  // namespace torusrot
