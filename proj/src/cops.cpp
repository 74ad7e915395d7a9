#include "confl/cops.hpp"

#include <cctype>

namespace confl {

namespace {

enum class Tok { LParen, RParen, Comma, Arrow, Ident, End };

struct Token {
    Tok kind;
    std::string text;
    std::size_t line;
    std::size_t col;
};

class Lexer {
  public:
    explicit Lexer(const std::string& text) : text_(text) {}

    Token next() {
        skip_ws();
        const std::size_t line = line_, col = col_;
        if (pos_ >= text_.size()) return {Tok::End, "", line, col};
        const char c = text_[pos_];
        if (c == '(') return advance(), Token{Tok::LParen, "(", line, col};
        if (c == ')') return advance(), Token{Tok::RParen, ")", line, col};
        if (c == ',') return advance(), Token{Tok::Comma, ",", line, col};
        if (c == '-' && pos_ + 1 < text_.size() && text_[pos_ + 1] == '>') {
            advance();
            advance();
            return {Tok::Arrow, "->", line, col};
        }
        std::string ident;
        while (pos_ < text_.size() && !is_delim(text_[pos_])) {
            if (text_[pos_] == '-' && pos_ + 1 < text_.size() && text_[pos_ + 1] == '>') break;
            ident += text_[pos_];
            advance();
        }
        if (ident.empty()) throw ParseError("unexpected character '" + std::string(1, c) + "'", line, col);
        return {Tok::Ident, ident, line, col};
    }

  private:
    static bool is_delim(char c) {
        return c == '(' || c == ')' || c == ',' || std::isspace(static_cast<unsigned char>(c));
    }

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])))
            advance();
    }

    void advance() {
        if (text_[pos_] == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        ++pos_;
    }

    const std::string& text_;
    std::size_t pos_ = 0;
    std::size_t line_ = 1;
    std::size_t col_ = 1;
};

class Parser {
  public:
    explicit Parser(const std::string& text) : lexer_(text) { shift(); }

    Trs parse_problem() {
        std::vector<std::pair<Term, Term>> raw_rules;
        while (cur_.kind != Tok::End) {
            expect(Tok::LParen, "'('");
            const Token head = cur_;
            expect(Tok::Ident, "block name");
            if (head.text == "VAR") {
                while (cur_.kind == Tok::Ident) {
                    vars_.insert(cur_.text);
                    shift();
                }
                expect(Tok::RParen, "')'");
            } else if (head.text == "RULES") {
                while (cur_.kind != Tok::RParen) {
                    Term lhs = parse_term();
                    expect(Tok::Arrow, "'->'");
                    Term rhs = parse_term();
                    raw_rules.emplace_back(std::move(lhs), std::move(rhs));
                }
                shift();
            } else if (head.text == "COMMENT") {
                skip_balanced();
            } else {
                throw ParseError("unsupported block " + head.text, head.line, head.col);
            }
        }
        std::vector<Rule> rules;
        for (std::size_t i = 0; i < raw_rules.size(); ++i) {
            try {
                rules.emplace_back("r" + std::to_string(i + 1), raw_rules[i].first,
                                   raw_rules[i].second);
            } catch (const Error& e) {
                throw ParseError(e.what(), 0, 0);
            }
        }
        try {
            return Trs(std::move(rules));
        } catch (const Error& e) {
            throw ParseError(e.what(), 0, 0);
        }
    }

    Term parse_term() {
        const Token head = cur_;
        expect(Tok::Ident, "term");
        if (cur_.kind != Tok::LParen) {
            if (vars_.count(head.text)) return Term::variable(head.text);
            record_arity(head, 0);
            return Term::application(head.text);
        }
        if (vars_.count(head.text))
            throw ParseError("variable " + head.text + " used as function symbol", head.line,
                             head.col);
        shift();
        std::vector<Term> args;
        if (cur_.kind != Tok::RParen) {
            args.push_back(parse_term());
            while (cur_.kind == Tok::Comma) {
                shift();
                args.push_back(parse_term());
            }
        }
        expect(Tok::RParen, "')'");
        record_arity(head, args.size());
        return Term::application(head.text, std::move(args));
    }

  private:
    void record_arity(const Token& sym, std::size_t arity) {
        auto [it, inserted] = arities_.emplace(sym.text, arity);
        if (!inserted && it->second != arity)
            throw ParseError("arity-inconsistency for symbol " + sym.text, sym.line, sym.col);
    }

    void skip_balanced() {
        std::size_t depth = 1;
        while (depth > 0) {
            if (cur_.kind == Tok::End)
                throw ParseError("unterminated block", cur_.line, cur_.col);
            if (cur_.kind == Tok::LParen) ++depth;
            if (cur_.kind == Tok::RParen) --depth;
            shift();
        }
    }

    void expect(Tok kind, const std::string& what) {
        if (cur_.kind != kind)
            throw ParseError("expected " + what + ", got '" + cur_.text + "'", cur_.line,
                             cur_.col);
        shift();
    }

    void shift() { cur_ = lexer_.next(); }

    Lexer lexer_;
    Token cur_{Tok::End, "", 0, 0};
    std::set<std::string> vars_;
    std::map<std::string, std::size_t> arities_;
};

}  // namespace

Trs parse_cops(const std::string& text) {
    Parser p(text);
    return p.parse_problem();
}

namespace {

class TermReader {
  public:
    TermReader(const std::string& text, const std::map<std::string, std::size_t>& sig,
               const std::set<std::string>& vars)
        : lexer_(text), sig_(sig), vars_(vars) {
        cur_ = lexer_.next();
    }

    Term read() {
        Term t = parse();
        if (cur_.kind != Tok::End)
            throw ParseError("trailing input after term", cur_.line, cur_.col);
        return t;
    }

  private:
    Term parse() {
        const Token head = cur_;
        if (head.kind != Tok::Ident)
            throw ParseError("expected term, got '" + head.text + "'", head.line, head.col);
        cur_ = lexer_.next();
        std::vector<Term> args;
        bool has_parens = false;
        if (cur_.kind == Tok::LParen) {
            has_parens = true;
            cur_ = lexer_.next();
            if (cur_.kind != Tok::RParen) {
                args.push_back(parse());
                while (cur_.kind == Tok::Comma) {
                    cur_ = lexer_.next();
                    args.push_back(parse());
                }
            }
            if (cur_.kind != Tok::RParen)
                throw ParseError("expected ')'", cur_.line, cur_.col);
            cur_ = lexer_.next();
        }
        auto it = sig_.find(head.text);
        if (it == sig_.end()) {
            if (has_parens && !args.empty())
                throw ParseError("unknown symbol " + head.text, head.line, head.col);
            if (vars_.count(head.text) || !has_parens) return Term::variable(head.text);
            return Term::application(head.text);
        }
        if (vars_.count(head.text))
            throw ParseError("identifier " + head.text + " is both symbol and variable",
                             head.line, head.col);
        if (it->second != args.size())
            throw ParseError("arity-inconsistency for symbol " + head.text, head.line, head.col);
        return Term::application(head.text, std::move(args));
    }

    Lexer lexer_;
    Token cur_{Tok::End, "", 0, 0};
    const std::map<std::string, std::size_t>& sig_;
    const std::set<std::string>& vars_;
};

}  // namespace

Term parse_term(const std::string& text, const std::map<std::string, std::size_t>& signature,
                const std::set<std::string>& vars) {
    TermReader r(text, signature, vars);
    return r.read();
}

}  // namespace confl
