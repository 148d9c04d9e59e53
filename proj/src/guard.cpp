#include "ucmbt/guard.hpp"

#include <algorithm>
#include <cassert>
#include <cctype>
#include <sstream>
#include <utility>

namespace ucmbt {

bool is_identifier(std::string_view s) {
    if (s.empty() || !std::isalpha(static_cast<unsigned char>(s[0]))) return false;
    return std::all_of(s.begin() + 1, s.end(), [](char c) {
        return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
    });
}

std::string GuardAtom::str() const {
    std::string out = name;
    if (!args.empty()) {
        out += '(';
        for (std::size_t i = 0; i < args.size(); ++i) {
            if (i > 0) out += ',';
            out += args[i];
        }
        out += ')';
    }
    return out;
}

std::string GuardLiteral::str() const {
    return negated ? "not " + atom.str() : atom.str();
}

GuardExpr GuardExpr::literal(GuardLiteral lit) {
    GuardExpr e;
    e.kind_ = Kind::Literal;
    e.lit_ = std::move(lit);
    return e;
}

GuardExpr GuardExpr::atom(std::string name, std::vector<std::string> args, bool negated) {
    return literal(GuardLiteral{GuardAtom{std::move(name), std::move(args)}, negated});
}

GuardExpr GuardExpr::make_node(Kind kind, std::vector<GuardExpr> ops) {
    if (ops.empty())
        throw Error("guard expression node requires at least one operand");
    if (ops.size() == 1) return std::move(ops.front());
    GuardExpr e;
    e.kind_ = kind;
    e.ops_.reserve(ops.size());
    for (auto& op : ops) {
        if (op.kind_ == kind) {
            for (auto& sub : op.ops_) e.ops_.push_back(std::move(sub));
        } else {
            e.ops_.push_back(std::move(op));
        }
    }
    return e;
}

GuardExpr GuardExpr::conj(std::vector<GuardExpr> ops) {
    return make_node(Kind::And, std::move(ops));
}

GuardExpr GuardExpr::disj(std::vector<GuardExpr> ops) {
    return make_node(Kind::Or, std::move(ops));
}

const GuardLiteral& GuardExpr::lit() const {
    assert(kind_ == Kind::Literal);
    return lit_;
}

const std::vector<GuardExpr>& GuardExpr::operands() const {
    assert(kind_ != Kind::Literal);
    return ops_;
}

bool GuardExpr::operator==(const GuardExpr& other) const {
    if (kind_ != other.kind_) return false;
    if (kind_ == Kind::Literal) return lit_ == other.lit_;
    return ops_ == other.ops_;
}

// --- parser -----------------------------------------------------------------

namespace {

enum class Tok { Ident, KwAnd, KwOr, KwNot, LParen, RParen, Comma, Slash, End };

const char* tok_name(Tok t) {
    switch (t) {
        case Tok::Ident:  return "identifier";
        case Tok::KwAnd:  return "'and'";
        case Tok::KwOr:   return "'or'";
        case Tok::KwNot:  return "'not'";
        case Tok::LParen: return "'('";
        case Tok::RParen: return "')'";
        case Tok::Comma:  return "','";
        case Tok::Slash:  return "'/'";
        case Tok::End:    return "end of input";
    }
    return "?";
}

struct Token {
    Tok kind;
    std::size_t offset;
    std::string text; // identifier spelling
};

class Lexer {
public:
    explicit Lexer(std::string_view src) : src_(src) { advance(); }

    const Token& peek() const { return cur_; }

    Token take() {
        Token t = cur_;
        advance();
        return t;
    }

private:
    void advance() {
        while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_])))
            ++pos_;
        cur_.offset = pos_;
        cur_.text.clear();
        if (pos_ >= src_.size()) {
            cur_.kind = Tok::End;
            return;
        }
        char c = src_[pos_];
        switch (c) {
            case '(': cur_.kind = Tok::LParen; ++pos_; return;
            case ')': cur_.kind = Tok::RParen; ++pos_; return;
            case ',': cur_.kind = Tok::Comma;  ++pos_; return;
            case '/': cur_.kind = Tok::Slash;  ++pos_; return;
            default: break;
        }
        if (std::isalpha(static_cast<unsigned char>(c))) {
            std::size_t start = pos_;
            while (pos_ < src_.size() &&
                   (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_'))
                ++pos_;
            cur_.text.assign(src_.substr(start, pos_ - start));
            std::string lower = cur_.text;
            std::transform(lower.begin(), lower.end(), lower.begin(),
                           [](unsigned char ch) { return static_cast<char>(std::tolower(ch)); });
            if (lower == "and") cur_.kind = Tok::KwAnd;
            else if (lower == "or") cur_.kind = Tok::KwOr;
            else if (lower == "not") cur_.kind = Tok::KwNot;
            else cur_.kind = Tok::Ident;
            return;
        }
        std::ostringstream msg;
        msg << "unexpected character '" << c << "' at offset " << pos_;
        throw ParseError(msg.str(), pos_, {"identifier", "'('", "'/'"});
    }

    std::string_view src_;
    std::size_t pos_ = 0;
    Token cur_;
};

class Parser {
public:
    explicit Parser(std::string_view src) : lex_(src) {}

    GuardExpr parse() {
        if (lex_.peek().kind == Tok::End) throw EmptyExpressionError();
        GuardExpr e = parse_expr();
        expect(Tok::End);
        return e;
    }

private:
    [[noreturn]] void fail(std::vector<std::string> expected) {
        const Token& t = lex_.peek();
        std::ostringstream msg;
        msg << "expected ";
        for (std::size_t i = 0; i < expected.size(); ++i) {
            if (i > 0) msg << (i + 1 == expected.size() ? " or " : ", ");
            msg << expected[i];
        }
        msg << " but found " << tok_name(t.kind) << " at offset " << t.offset;
        throw ParseError(msg.str(), t.offset, std::move(expected));
    }

    void expect(Tok kind) {
        if (lex_.peek().kind != kind) fail({tok_name(kind)});
        lex_.take();
    }

    GuardExpr parse_expr() {
        std::vector<GuardExpr> terms;
        terms.push_back(parse_term());
        while (lex_.peek().kind == Tok::KwOr) {
            lex_.take();
            terms.push_back(parse_term());
        }
        return GuardExpr::disj(std::move(terms));
    }

    GuardExpr parse_term() {
        std::vector<GuardExpr> factors;
        factors.push_back(parse_factor());
        while (lex_.peek().kind == Tok::KwAnd) {
            lex_.take();
            factors.push_back(parse_factor());
        }
        return GuardExpr::conj(std::move(factors));
    }

    GuardExpr parse_factor() {
        switch (lex_.peek().kind) {
            case Tok::KwNot: {
                lex_.take();
                // Negation binds to the immediately following atom only.
                return GuardExpr::literal(GuardLiteral{parse_atom(), true});
            }
            case Tok::LParen: {
                lex_.take();
                GuardExpr inner = parse_expr();
                expect(Tok::RParen);
                return inner;
            }
            case Tok::Slash:
            case Tok::Ident:
                return GuardExpr::literal(GuardLiteral{parse_atom(), false});
            default:
                fail({"'not'", "'('", "atom"});
        }
    }

    GuardAtom parse_atom() {
        if (lex_.peek().kind == Tok::Slash) lex_.take();
        if (lex_.peek().kind != Tok::Ident) fail({"identifier"});
        GuardAtom atom;
        atom.name = lex_.take().text;
        if (lex_.peek().kind == Tok::LParen) {
            lex_.take();
            for (;;) {
                if (lex_.peek().kind != Tok::Ident) fail({"identifier"});
                atom.args.push_back(lex_.take().text);
                if (lex_.peek().kind == Tok::Comma) {
                    lex_.take();
                    continue;
                }
                break;
            }
            expect(Tok::RParen);
        }
        return atom;
    }

    Lexer lex_;
};

} // namespace

ParseError::ParseError(const std::string& message, std::size_t offset,
                       std::vector<std::string> expected)
    : Error(message), offset_(offset), expected_(std::move(expected)) {}

EmptyExpressionError::EmptyExpressionError()
    : ParseError("empty guard expression", 0, {"expression"}) {}

UnboundAtomError::UnboundAtomError(GuardAtom atom)
    : Error("unbound guard atom '" + atom.str() + "'"), atom_(std::move(atom)) {}

GuardExpr parse_guard(std::string_view text) {
    return Parser(text).parse();
}

GuardLiteral parse_guard_literal(std::string_view text) {
    GuardExpr e = parse_guard(text);
    auto lit = as_literal(e);
    if (!lit)
        throw ParseError("expected a single guard literal, got a compound expression", 0,
                         {"literal"});
    return *lit;
}

bool eval_guard(const GuardExpr& expr, const GuardEnv& env) {
    switch (expr.kind()) {
        case GuardExpr::Kind::Literal: {
            auto it = env.find(expr.lit().atom);
            if (it == env.end()) throw UnboundAtomError(expr.lit().atom);
            return expr.lit().negated ? !it->second : it->second;
        }
        case GuardExpr::Kind::And:
            return std::all_of(expr.operands().begin(), expr.operands().end(),
                               [&](const GuardExpr& op) { return eval_guard(op, env); });
        case GuardExpr::Kind::Or:
            return std::any_of(expr.operands().begin(), expr.operands().end(),
                               [&](const GuardExpr& op) { return eval_guard(op, env); });
    }
    return false;
}

namespace {

bool clause_contradictory(const DnfClause& clause) {
    for (const auto& lit : clause) {
        if (!lit.negated && clause.count(GuardLiteral{lit.atom, true})) return true;
    }
    return false;
}

std::set<DnfClause> dnf_clauses(const GuardExpr& expr) {
    switch (expr.kind()) {
        case GuardExpr::Kind::Literal:
            return {DnfClause{expr.lit()}};
        case GuardExpr::Kind::Or: {
            std::set<DnfClause> out;
            for (const auto& op : expr.operands()) {
                auto sub = dnf_clauses(op);
                out.insert(sub.begin(), sub.end());
            }
            return out;
        }
        case GuardExpr::Kind::And: {
            std::set<DnfClause> acc = {DnfClause{}};
            for (const auto& op : expr.operands()) {
                std::set<DnfClause> next;
                auto sub = dnf_clauses(op);
                for (const auto& left : acc) {
                    for (const auto& right : sub) {
                        DnfClause merged = left;
                        merged.insert(right.begin(), right.end());
                        next.insert(std::move(merged));
                    }
                }
                acc = std::move(next);
            }
            return acc;
        }
    }
    return {};
}

} // namespace

DnfForm to_dnf(const GuardExpr& expr) {
    std::set<DnfClause> raw = dnf_clauses(expr);

    std::set<DnfClause> consistent;
    for (const auto& clause : raw)
        if (!clause_contradictory(clause)) consistent.insert(clause);

    // Absorption: drop any clause that strictly contains another clause.
    DnfForm out;
    for (const auto& clause : consistent) {
        bool absorbed = std::any_of(consistent.begin(), consistent.end(), [&](const DnfClause& c) {
            return c.size() < clause.size() &&
                   std::includes(clause.begin(), clause.end(), c.begin(), c.end());
        });
        if (!absorbed) out.clauses.insert(clause);
    }
    return out;
}

std::string render_guard(const GuardExpr& expr) {
    switch (expr.kind()) {
        case GuardExpr::Kind::Literal:
            return expr.lit().str();
        case GuardExpr::Kind::And:
        case GuardExpr::Kind::Or: {
            const char* sep = expr.kind() == GuardExpr::Kind::And ? " and " : " or ";
            std::string out;
            for (std::size_t i = 0; i < expr.operands().size(); ++i) {
                const GuardExpr& op = expr.operands()[i];
                if (i > 0) out += sep;
                if (op.is_literal()) out += render_guard(op);
                else out += "(" + render_guard(op) + ")";
            }
            return out;
        }
    }
    return {};
}

std::set<GuardAtom> collect_atoms(const GuardExpr& expr) {
    std::set<GuardAtom> out;
    if (expr.is_literal()) {
        out.insert(expr.lit().atom);
        return out;
    }
    for (const auto& op : expr.operands()) {
        auto sub = collect_atoms(op);
        out.insert(sub.begin(), sub.end());
    }
    return out;
}

std::optional<GuardLiteral> as_literal(const GuardExpr& expr) {
    if (expr.is_literal()) return expr.lit();
    return std::nullopt;
}

} // namespace ucmbt
