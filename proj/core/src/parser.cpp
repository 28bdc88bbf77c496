// Recursive-descent parser for the textual SL grammar.
//
//   formula    := or_expr
//   or_expr    := and_expr ( "|" and_expr )*
//   and_expr   := temporal ( "&" temporal )*
//   temporal   := unary ( ("U" | "R") temporal )?          right-associative
//   unary      := "!" unary                                 dualised in place
//               | ("X" | "F" | "G") unary
//               | ("E" | "A") IDENT formula                 extends to the right
//               | "(" IDENT "," IDENT ")" formula           extends to the right
//               | "(" formula ")"
//               | IDENT
//
// The single-letter keywords E A X F G U R cannot be used as identifiers.

#include "tristrat/errors.hpp"
#include "tristrat/formula.hpp"

#include <cctype>
#include <map>
#include <optional>

namespace tristrat {

namespace {

enum class Tok { Ident, LParen, RParen, Comma, Not, And, Or, End };

struct Token {
    Tok kind;
    std::string text;
    std::size_t line;
    std::size_t column;
};

bool is_keyword(const std::string& s)
{
    return s.size() == 1 && std::string_view("EAXFGUR").find(s[0]) != std::string_view::npos;
}

std::vector<Token> lex(std::string_view src)
{
    std::vector<Token> out;
    std::size_t line = 1, col = 1;
    std::size_t i = 0;
    auto advance = [&](std::size_t n) {
        for (std::size_t k = 0; k < n; ++k) {
            if (src[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
            ++i;
        }
    };
    while (i < src.size()) {
        char c = src[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            advance(1);
            continue;
        }
        if (c == '#') {
            while (i < src.size() && src[i] != '\n')
                advance(1);
            continue;
        }
        Token t{Tok::End, std::string(1, c), line, col};
        switch (c) {
        case '(': t.kind = Tok::LParen; break;
        case ')': t.kind = Tok::RParen; break;
        case ',': t.kind = Tok::Comma; break;
        case '!': t.kind = Tok::Not; break;
        case '&': t.kind = Tok::And; break;
        case '|': t.kind = Tok::Or; break;
        default:
            if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
                std::size_t j = i;
                while (j < src.size() && (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_'))
                    ++j;
                t.kind = Tok::Ident;
                t.text = std::string(src.substr(i, j - i));
                out.push_back(t);
                advance(j - i);
                continue;
            }
            throw SyntaxError("unexpected character '" + std::string(1, c) + "'", line, col);
        }
        out.push_back(t);
        advance(1);
    }
    out.push_back(Token{Tok::End, "<end>", line, col});
    return out;
}

class Parser {
public:
    explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

    Formula run()
    {
        Formula f = formula();
        if (peek().kind != Tok::End)
            fail("unexpected '" + peek().text + "'");
        return f;
    }

private:
    const Token& peek(std::size_t ahead = 0) const
    {
        std::size_t k = std::min(pos_ + ahead, toks_.size() - 1);
        return toks_[k];
    }
    const Token& take() { return toks_[std::min(pos_++, toks_.size() - 1)]; }

    [[noreturn]] void fail(const std::string& msg) const
    {
        throw SyntaxError(msg, peek().line, peek().column);
    }

    bool at_keyword(char k) const
    {
        return peek().kind == Tok::Ident && peek().text.size() == 1 && peek().text[0] == k;
    }

    std::string identifier(const char* what)
    {
        if (peek().kind != Tok::Ident || is_keyword(peek().text))
            fail(std::string("expected ") + what + ", got '" + peek().text + "'");
        return take().text;
    }

    void expect(Tok kind, const char* text)
    {
        if (peek().kind != kind)
            fail(std::string("expected '") + text + "', got '" + peek().text + "'");
        take();
    }

    Formula formula() { return or_expr(); }

    Formula or_expr()
    {
        Formula f = and_expr();
        while (peek().kind == Tok::Or) {
            take();
            f = Formula::disj(f, and_expr());
        }
        return f;
    }

    Formula and_expr()
    {
        Formula f = temporal();
        while (peek().kind == Tok::And) {
            take();
            f = Formula::conj(f, temporal());
        }
        return f;
    }

    Formula temporal()
    {
        Formula lhs = unary();
        if (at_keyword('U')) {
            take();
            return Formula::until(lhs, temporal());
        }
        if (at_keyword('R')) {
            take();
            return Formula::release(lhs, temporal());
        }
        return lhs;
    }

    Formula unary()
    {
        const Token& t = peek();
        if (t.kind == Tok::Not) {
            take();
            return dualize(unary());
        }
        if (t.kind == Tok::LParen) {
            // "(IDENT ," starts a binding, anything else is grouping.
            if (peek(1).kind == Tok::Ident && peek(2).kind == Tok::Comma) {
                take();
                std::string agent = identifier("agent name");
                expect(Tok::Comma, ",");
                std::string var = identifier("variable name");
                expect(Tok::RParen, ")");
                note(agent, Role::Agent);
                note(var, Role::Variable);
                return Formula::bind(agent, var, formula());
            }
            take();
            Formula f = formula();
            expect(Tok::RParen, ")");
            return f;
        }
        if (t.kind != Tok::Ident)
            fail("expected a formula, got '" + t.text + "'");
        if (is_keyword(t.text)) {
            char k = t.text[0];
            switch (k) {
            case 'X': take(); return Formula::next(unary());
            case 'F': take(); return Formula::eventually(unary());
            case 'G': take(); return Formula::globally(unary());
            case 'E':
            case 'A': {
                take();
                std::string var = identifier("variable name");
                note(var, Role::Variable);
                Formula body = formula();
                return k == 'E' ? Formula::exists(var, body) : Formula::forall(var, body);
            }
            default: fail("unexpected '" + t.text + "'");
            }
        }
        return Formula::atom(take().text);
    }

    enum class Role { Agent, Variable };

    void note(const std::string& name, Role role)
    {
        auto [it, inserted] = roles_.emplace(name, role);
        if (!inserted && it->second != role)
            throw NamespaceError("identifier '" + name + "' is used both as an agent and as a variable");
    }

    std::vector<Token> toks_;
    std::size_t pos_ = 0;
    std::map<std::string, Role> roles_;
};

} // namespace

Formula parse(std::string_view text)
{
    return Parser(lex(text)).run();
}

} // namespace tristrat
