// Distributed under the MIT License.
// See LICENSE for details.

#include <cctype>

#include "ldpa/formula.hpp"

namespace ldpa {

namespace {

// Recursive-descent parser for the LTL grammar.  Precedence, tightest first:
// unary (! X F G), U (right-assoc), &, |, -> (right-assoc).
class Parser {
public:
    Parser(std::string_view text, FormulaArena& arena) : text_(text), arena_(arena) {}

    FormulaId parse() {
        FormulaId f = implication();
        skip_ws();
        if (pos_ != text_.size())
            throw ParseError("unexpected input '" + std::string(text_.substr(pos_)) + "'", pos_);
        return f;
    }

private:
    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])))
            ++pos_;
    }

    bool eat(char c) {
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    bool eat_arrow() {
        skip_ws();
        if (pos_ + 1 < text_.size() && text_[pos_] == '-' && text_[pos_ + 1] == '>') {
            pos_ += 2;
            return true;
        }
        return false;
    }

    // Returns the identifier starting at the current position, or empty.
    std::string_view peek_ident() {
        skip_ws();
        std::size_t start = pos_;
        std::size_t end = start;
        if (end < text_.size() &&
            (std::isalpha(static_cast<unsigned char>(text_[end])) || text_[end] == '_')) {
            ++end;
            while (end < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[end])) ||
                                          text_[end] == '_'))
                ++end;
        }
        return text_.substr(start, end - start);
    }

    bool eat_ident(std::string_view word) {
        if (peek_ident() == word) {
            pos_ += word.size();
            return true;
        }
        return false;
    }

    FormulaId implication() {
        FormulaId l = disjunction();
        if (eat_arrow()) {
            FormulaId r = implication();
            return arena_.disj(arena_.negation(l), r);
        }
        return l;
    }

    FormulaId disjunction() {
        FormulaId f = conjunction();
        while (eat('|'))
            f = arena_.disj(f, conjunction());
        return f;
    }

    FormulaId conjunction() {
        FormulaId f = until_expr();
        while (eat('&'))
            f = arena_.conj(f, until_expr());
        return f;
    }

    FormulaId until_expr() {
        FormulaId l = unary();
        if (eat_ident("U")) {
            FormulaId r = until_expr();
            return arena_.until(l, r);
        }
        return l;
    }

    FormulaId unary() {
        if (eat('!'))
            return arena_.negation(unary());
        if (eat_ident("X"))
            return arena_.next(unary());
        if (eat_ident("F"))
            return arena_.eventually(unary());
        if (eat_ident("G"))
            return arena_.always(unary());
        return primary();
    }

    FormulaId primary() {
        skip_ws();
        if (pos_ == text_.size())
            throw ParseError("missing operand: expected a formula", pos_);
        if (eat('(')) {
            FormulaId f = implication();
            if (!eat(')'))
                throw ParseError("expected ')'", pos_);
            return f;
        }
        std::string_view ident = peek_ident();
        if (ident.empty())
            throw ParseError("unexpected character '" + std::string(1, text_[pos_]) + "'", pos_);
        if (ident == "tt" || ident == "true") {
            pos_ += ident.size();
            return arena_.tt();
        }
        if (ident == "ff" || ident == "false") {
            pos_ += ident.size();
            return arena_.ff();
        }
        if (ident == "U" || ident == "X" || ident == "F" || ident == "G")
            throw ParseError("operator '" + std::string(ident) + "' used where a formula is expected",
                             pos_);
        pos_ += ident.size();
        return arena_.atom(ident);
    }

    std::string_view text_;
    FormulaArena& arena_;
    std::size_t pos_ = 0;
};

} // namespace

FormulaId parse_ltl(std::string_view text, FormulaArena& arena) {
    return Parser(text, arena).parse();
}

} // namespace ldpa
