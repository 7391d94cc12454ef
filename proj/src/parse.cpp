#include "fotpi/parse.hpp"

#include <cctype>
#include <optional>
#include <vector>

#include "fotpi/macro.hpp"

namespace fotpi {

namespace {

enum class Tok { Ident, Number, LParen, RParen, Comma, Dot, Semi, Pipe, Arrow, DArrow,
                 Ge, Gt, EqSym, Plus, Minus, Star, Underscore, End };

struct Token {
    Tok kind;
    std::string text;
    int line, col;
};

struct Lexer {
    std::vector<Token> toks;

    explicit Lexer(const std::string& s) {
        int line = 1, col = 1;
        size_t i = 0;
        while (i < s.size()) {
            char c = s[i];
            if (c == '\n') { ++line; col = 1; ++i; continue; }
            if (std::isspace(static_cast<unsigned char>(c))) { ++col; ++i; continue; }
            if (c == '#') {  // comment to end of line
                while (i < s.size() && s[i] != '\n') ++i;
                continue;
            }
            int startcol = col;
            auto push_at = [&](Tok k, std::string t, size_t len) {
                toks.push_back({k, std::move(t), line, startcol});
                i += len;
                col += static_cast<int>(len);
            };
            if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
                size_t j = i;
                while (j < s.size() && (std::isalnum(static_cast<unsigned char>(s[j])) ||
                                        s[j] == '_' || s[j] == '\''))
                    ++j;
                std::string w = s.substr(i, j - i);
                if (w == "_")
                    push_at(Tok::Underscore, w, j - i);
                else
                    push_at(Tok::Ident, w, j - i);
                continue;
            }
            if (std::isdigit(static_cast<unsigned char>(c))) {
                size_t j = i;
                while (j < s.size() && (std::isdigit(static_cast<unsigned char>(s[j])) ))
                    ++j;
                push_at(Tok::Number, s.substr(i, j - i), j - i);
                continue;
            }
            switch (c) {
                case '(': push_at(Tok::LParen, "(", 1); continue;
                case ')': push_at(Tok::RParen, ")", 1); continue;
                case ',': push_at(Tok::Comma, ",", 1); continue;
                case '.': push_at(Tok::Dot, ".", 1); continue;
                case ';': push_at(Tok::Semi, ";", 1); continue;
                case '|': push_at(Tok::Pipe, "|", 1); continue;
                case '+': push_at(Tok::Plus, "+", 1); continue;
                case '*': push_at(Tok::Star, "*", 1); continue;
                case '/': push_at(Tok::Star, "/", 1); continue;  // only in rationals, handled by parser
                case '-':
                    if (i + 1 < s.size() && s[i + 1] == '>') { push_at(Tok::Arrow, "->", 2); continue; }
                    push_at(Tok::Minus, "-", 1);
                    continue;
                case '<':
                    if (i + 2 < s.size() && s[i + 1] == '-' && s[i + 2] == '>') {
                        push_at(Tok::DArrow, "<->", 3);
                        continue;
                    }
                    throw ParseError("unexpected character '<'", line, startcol);
                case '>':
                    if (i + 1 < s.size() && s[i + 1] == '=') { push_at(Tok::Ge, ">=", 2); continue; }
                    push_at(Tok::Gt, ">", 1);
                    continue;
                case '=': push_at(Tok::EqSym, "=", 1); continue;
                default:
                    throw ParseError(std::string("unexpected character '") + c + "'", line,
                                     startcol);
            }
        }
        toks.push_back({Tok::End, "", line, col});
    }
};

struct Parser {
    std::vector<Token> toks;
    size_t pos = 0;
    const MacroRegistry* registry;

    const Token& peek(size_t k = 0) const { return toks[std::min(pos + k, toks.size() - 1)]; }
    const Token& next() { return toks[pos < toks.size() - 1 ? pos++ : pos]; }
    bool at(Tok k) const { return peek().kind == k; }
    bool at_word(const char* w) const { return at(Tok::Ident) && peek().text == w; }

    [[noreturn]] void fail(const std::string& msg) const {
        throw ParseError(msg, peek().line, peek().col);
    }

    void expect(Tok k, const char* what) {
        if (!at(k)) fail(std::string("expected ") + what);
        next();
    }

    std::vector<std::string> ident_list() {
        std::vector<std::string> out;
        if (!at(Tok::Ident)) fail("expected identifier");
        out.push_back(next().text);
        while (at(Tok::Comma)) {
            next();
            if (!at(Tok::Ident)) fail("expected identifier after ','");
            out.push_back(next().text);
        }
        return out;
    }

    Term term() {
        if (at_word("join")) {
            next();
            expect(Tok::LParen, "'(' after join");
            auto names = ident_list();
            expect(Tok::RParen, "')'");
            if (names.size() < 2) fail("join needs at least two variables");
            return Term::join_names(std::move(names));
        }
        if (!at(Tok::Ident)) fail("expected term");
        return Term::var(next().text);
    }

    Rat rational() {
        // number [ '/' number ]  — '/' was tokenized as Star with text "/"
        if (!at(Tok::Number)) fail("expected number");
        Int num(next().text);
        if (at(Tok::Star) && peek().text == "/") {
            next();
            if (!at(Tok::Number)) fail("expected denominator");
            Int den(next().text);
            if (den == 0) fail("zero denominator");
            return Rat(num, den);
        }
        return Rat(num);
    }

    bool starts_entropy_expr() const {
        if (at(Tok::Minus) || at(Tok::Number)) return true;
        return at(Tok::Ident) && peek().text == "H" && peek(1).kind == Tok::LParen;
    }

    FormulaPtr entropy_expr() {
        LinearEntropyExpr e;
        bool first = true;
        while (true) {
            Rat sign = 1;
            if (at(Tok::Minus)) { next(); sign = -1; }
            else if (at(Tok::Plus)) { next(); }
            else if (!first) fail("expected '+' or '-' in entropy expression");
            Rat coeff = 1;
            if (at(Tok::Number)) {
                coeff = rational();
                if (at(Tok::Star) && peek().text == "*") next();
            }
            if (!(at(Tok::Ident) && peek().text == "H")) fail("expected H(...) term");
            next();
            expect(Tok::LParen, "'(' after H");
            auto vars = ident_list();
            expect(Tok::RParen, "')'");
            e.add(vars, sign * coeff);
            first = false;
            if (at(Tok::Plus) || at(Tok::Minus)) continue;
            break;
        }
        if (at(Tok::Ge)) e.cmp = Cmp::Ge;
        else if (at(Tok::Gt)) e.cmp = Cmp::Gt;
        else if (at(Tok::EqSym)) e.cmp = Cmp::Eq;
        else fail("expected '>=', '>' or '=' in entropy expression");
        next();
        if (!(at(Tok::Number) && peek().text == "0")) fail("entropy comparison must be against 0");
        next();
        return Formula::entropy(std::move(e));
    }

    std::vector<Term> cdrel_side_cond() {
        std::vector<Term> cond;
        if (at(Tok::Underscore)) {  // '_' denotes an empty conditioning list
            next();
            return cond;
        }
        cond.push_back(term());
        while (at(Tok::Comma)) {
            next();
            cond.push_back(term());
        }
        return cond;
    }

    FormulaPtr atom_or_call() {
        if (starts_entropy_expr()) return entropy_expr();
        if (!at(Tok::Ident)) fail("expected formula");
        std::string name = peek().text;
        if (name == "true") { next(); return Formula::top(); }
        if (name == "false") { next(); return Formula::bottom(); }
        int nline = peek().line, ncol = peek().col;
        if (peek(1).kind != Tok::LParen) fail("expected '(' after '" + name + "'");
        next();  // name
        next();  // (
        if (name == "indep") {
            Term a = term();
            expect(Tok::Comma, "','");
            Term b = term();
            expect(Tok::RParen, "')'");
            return Formula::indep(std::move(a), std::move(b));
        }
        if (name == "cdrel") {
            CondDistRel c;
            c.lhs_target = term();
            expect(Tok::Pipe, "'|'");
            c.lhs_cond = cdrel_side_cond();
            expect(Tok::Semi, "';'");
            c.rhs_target = term();
            expect(Tok::Pipe, "'|'");
            c.rhs_cond = cdrel_side_cond();
            expect(Tok::RParen, "')'");
            return Formula::cdrel(std::move(c));
        }
        // macro call
        std::vector<MacroArg> args;
        if (!at(Tok::RParen)) {
            args.push_back(macro_arg());
            while (at(Tok::Comma)) {
                next();
                args.push_back(macro_arg());
            }
        }
        expect(Tok::RParen, "')'");
        if (registry) {
            std::string err = registry->check_call(name, args);
            if (!err.empty()) throw ParseError(err, nline, ncol);
        }
        return Formula::call(std::move(name), std::move(args));
    }

    MacroArg macro_arg() {
        if (at(Tok::Number)) {
            // a bare number is a natural constant; otherwise it starts an
            // entropy-linear expression
            if (peek(1).kind == Tok::Comma || peek(1).kind == Tok::RParen)
                return MacroArg{static_cast<long long>(std::stoll(next().text))};
            return MacroArg{formula()};
        }
        if (at_word("join") && peek(1).kind == Tok::LParen) return MacroArg{term()};
        if (at(Tok::Ident) &&
            (peek(1).kind == Tok::Comma || peek(1).kind == Tok::RParen)) {
            // bare identifier: a term argument (unless it is true/false)
            if (peek().text == "true") { next(); return MacroArg{Formula::top()}; }
            if (peek().text == "false") { next(); return MacroArg{Formula::bottom()}; }
            return MacroArg{term()};
        }
        return MacroArg{formula()};
    }

    FormulaPtr unary() {
        if (at_word("not")) {
            next();
            return Formula::lnot(unary());
        }
        if (at_word("exists") || at_word("forall")) {
            bool ex = peek().text == "exists";
            next();
            auto vars = ident_list();
            expect(Tok::Dot, "'.' after quantified variables");
            auto body = formula();
            return ex ? Formula::exists(std::move(vars), std::move(body))
                      : Formula::forall(std::move(vars), std::move(body));
        }
        if (at(Tok::LParen)) {
            next();
            auto f = formula();
            expect(Tok::RParen, "')'");
            return f;
        }
        return atom_or_call();
    }

    FormulaPtr conj() {
        auto f = unary();
        if (!at_word("and")) return f;
        std::vector<FormulaPtr> kids{f};
        while (at_word("and")) {
            next();
            kids.push_back(unary());
        }
        return Formula::land(std::move(kids));
    }

    FormulaPtr disj() {
        auto f = conj();
        if (!at_word("or")) return f;
        std::vector<FormulaPtr> kids{f};
        while (at_word("or")) {
            next();
            kids.push_back(conj());
        }
        return Formula::lor(std::move(kids));
    }

    FormulaPtr impl() {
        auto f = disj();
        if (at(Tok::Arrow)) {
            next();
            return Formula::implies(f, impl());
        }
        return f;
    }

    FormulaPtr formula() {
        auto f = impl();
        while (at(Tok::DArrow)) {
            next();
            f = Formula::iff(f, impl());
        }
        return f;
    }
};

}  // namespace

FormulaPtr parse_formula(const std::string& text, const MacroRegistry* registry) {
    Parser p{Lexer(text).toks, 0, registry};
    auto f = p.formula();
    if (!p.at(Tok::End)) p.fail("trailing input after formula");
    return f;
}

Term parse_term(const std::string& text) {
    Parser p{Lexer(text).toks, 0, nullptr};
    Term t = p.term();
    if (!p.at(Tok::End)) p.fail("trailing input after term");
    return t;
}

std::string print_formula(const FormulaPtr& f) { return f->str(); }

}  // namespace fotpi
