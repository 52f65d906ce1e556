#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "torusrot/lift.hpp"

namespace torusrot {

// Expression tree for one lift component. Nodes are immutable and shared,
// so copies of a definition are cheap.
//
// Grammar (lowest precedence first; +,-,*,/ are left associative and unary
// minus binds tighter than * and /):
//
//   map      := expr ';' expr [ '|' expr ';' expr ] [ 'where' binding { ',' binding } ]
//   binding  := name '=' [ '-' ] number
//   expr     := term  { ('+'|'-') term }
//   term     := factor { ('*'|'/') factor }
//   factor   := '-' factor | primary
//   primary  := number | 'pi' | 'x' | 'y' | name
//             | ('sin'|'cos') '(' expr ')' | '(' expr ')'
//
// The optional '|' section supplies a closed-form inverse pair.
struct MapExpr {
    enum class Op { Num, Pi, X, Y, Param, Neg, Add, Sub, Mul, Div, Sin, Cos };

    Op op;
    double value = 0.0;      // Num
    std::string name;        // Param
    std::shared_ptr<const MapExpr> lhs, rhs;
};

using ExprPtr = std::shared_ptr<const MapExpr>;

struct MapDefinition {
    ExprPtr fx, fy;
    ExprPtr gx, gy;  // inverse pair; null when absent
    std::map<std::string, double> params;

    bool has_inverse() const { return gx != nullptr; }
};

// Throws ParseError (with byte offset) on malformed source, unknown or
// unbound names, function arity errors, or division by the literal 0.
MapDefinition parse_map(const std::string& source);

// Reference tree-walking evaluation. Throws NumericError when the result
// is not finite and ParseError-free sources never reach unbound names.
double eval_expr(const MapExpr& e, double x, double y,
                 const std::map<std::string, double>& params);

// Minimal-parentheses round-trip form: parse(pretty_print(parse(s)))
// is structurally identical to parse(s).
std::string pretty_print(const MapExpr& e);
std::string pretty_print(const MapDefinition& def);

// Bakes parameter values in and produces a lift. The caller is expected to
// validate the result (translate_commutation_check) before trusting it;
// compile_map itself only checks structural validity.
LiftMap compile_map(const MapDefinition& def);

// Max round-trip error of the definition's inverse pair over seeded
// samples; throws ConfigError when the map has no inverse.
double inverse_consistency_check(const LiftMap& f, int samples = 1000,
                                 std::uint64_t seed = kDefaultSeed);

}  // namespace torusrot
