#pragma once

// Guard expression algebra: atoms, literals, AND/OR trees, parsing,
// evaluation, DNF expansion and deterministic rendering.
//
// Grammar (whitespace-insensitive, keywords case-insensitive):
//   expr    = term , { OR , term } ;
//   term    = factor , { AND , factor } ;
//   factor  = [ NOT ] , atom | "(" , expr , ")" ;
//   atom    = [ "/" ] , IDENT , [ "(" , IDENT , { "," , IDENT } , ")" ] ;
//   IDENT   = letter , { letter | digit | "_" } ;
//
// A leading "/" on an atom is decoration and is stripped. Negation exists
// only at the literal level; "not (a and b)" is a syntax error.

#include "ucmbt/errors.hpp"

#include <compare>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace ucmbt {

/// True iff s matches [A-Za-z][A-Za-z0-9_]*.
bool is_identifier(std::string_view s);

struct GuardAtom {
    std::string name;
    std::vector<std::string> args;

    auto operator<=>(const GuardAtom&) const = default;

    /// Canonical text, e.g. "Validated_User(U)" or "PR_Request".
    std::string str() const;
};

struct GuardLiteral {
    GuardAtom atom;
    bool negated = false;

    auto operator<=>(const GuardLiteral&) const = default;

    /// Canonical text, e.g. "not Exist(i)".
    std::string str() const;
};

/// Immutable AND/OR tree over guard literals. And/Or nodes always have at
/// least two operands; same-kind children are spliced flat on construction,
/// so the stored shape is the canonical n-ary form the parser produces.
class GuardExpr {
public:
    enum class Kind { Literal, And, Or };

    static GuardExpr literal(GuardLiteral lit);
    static GuardExpr atom(std::string name, std::vector<std::string> args = {},
                          bool negated = false);

    /// Conjunction of `ops`. A single operand is returned unchanged;
    /// an empty list is a logic error (there is no "true" constant).
    static GuardExpr conj(std::vector<GuardExpr> ops);
    /// Disjunction of `ops`, same conventions as conj().
    static GuardExpr disj(std::vector<GuardExpr> ops);

    Kind kind() const noexcept { return kind_; }
    bool is_literal() const noexcept { return kind_ == Kind::Literal; }

    /// Valid only when kind() == Kind::Literal.
    const GuardLiteral& lit() const;
    /// Valid only for And/Or nodes.
    const std::vector<GuardExpr>& operands() const;

    bool operator==(const GuardExpr& other) const;

private:
    GuardExpr() = default;

    static GuardExpr make_node(Kind kind, std::vector<GuardExpr> ops);

    Kind kind_ = Kind::Literal;
    GuardLiteral lit_;
    std::vector<GuardExpr> ops_;
};

/// Disjunctive normal form: a set of clauses, each clause a set of literals.
/// Clauses containing both polarities of an atom are dropped; clauses that
/// are supersets of another clause are absorbed.
using DnfClause = std::set<GuardLiteral>;

struct DnfForm {
    std::set<DnfClause> clauses;

    bool operator==(const DnfForm&) const = default;
};

using GuardEnv = std::map<GuardAtom, bool>;

/// Guard text did not parse. Carries the byte offset of the offending
/// position and the token classes acceptable there.
class ParseError : public Error {
public:
    ParseError(const std::string& message, std::size_t offset,
               std::vector<std::string> expected);

    std::size_t offset() const noexcept { return offset_; }
    const std::vector<std::string>& expected() const noexcept { return expected_; }

private:
    std::size_t offset_ = 0;
    std::vector<std::string> expected_;
};

/// Input was empty or all whitespace.
class EmptyExpressionError : public ParseError {
public:
    EmptyExpressionError();
};

/// eval_guard met an atom with no binding in the environment.
class UnboundAtomError : public Error {
public:
    explicit UnboundAtomError(GuardAtom atom);
    const GuardAtom& atom() const noexcept { return atom_; }

private:
    GuardAtom atom_;
};

/// Parse guard text into an expression tree. Throws ParseError (or
/// EmptyExpressionError for blank input); never anything else, on any bytes.
GuardExpr parse_guard(std::string_view text);

/// Parse text that must denote a single literal (an optionally negated atom).
/// Throws ParseError if the text parses to a compound expression.
GuardLiteral parse_guard_literal(std::string_view text);

/// Standard boolean semantics; a negative literal inverts its binding.
/// Throws UnboundAtomError when an atom has no binding.
bool eval_guard(const GuardExpr& expr, const GuardEnv& env);

/// Expand to DNF, dropping contradictory clauses and absorbed supersets.
DnfForm to_dnf(const GuardExpr& expr);

/// Deterministic text; parse_guard(render_guard(e)) is structurally equal
/// to e. Compound children are parenthesized.
std::string render_guard(const GuardExpr& expr);

/// All atoms occurring in the expression.
std::set<GuardAtom> collect_atoms(const GuardExpr& expr);

/// The literal of a single-literal expression, or nullopt for compounds.
std::optional<GuardLiteral> as_literal(const GuardExpr& expr);

} // namespace ucmbt
