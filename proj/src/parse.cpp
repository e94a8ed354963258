#include "aterm/parse.hpp"

#include "aterm/errors.hpp"

#include <cctype>

namespace aterm {

ParseError::ParseError(std::size_t position, const std::string& what)
    : Error("parse error at offset " + std::to_string(position) + ": " + what), position_(position) {}

namespace {

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

class Parser {
public:
    explicit Parser(std::string_view text) : text_(text) {}

    Term run() {
        Term t = expr();
        skip_ws();
        if (pos_ != text_.size())
            fail(std::string("unexpected '") + text_[pos_] + "'");
        return t;
    }

private:
    [[noreturn]] void fail(const std::string& what) const { throw ParseError(pos_, what); }

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])))
            ++pos_;
    }

    // Consumes `c` if it is the next non-blank character.
    bool accept(char c) {
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    Term expr() {
        Term t = mul();
        for (;;) {
            if (accept('+'))
                t = std::move(t) + mul();
            else if (accept('-'))
                t = std::move(t) - mul();
            else
                return t;
        }
    }

    Term mul() {
        Term t = power();
        for (;;) {
            if (accept('*'))
                t = std::move(t) * power();
            else if (accept('/'))
                t = std::move(t) / power();
            else if (accept('%'))
                t = std::move(t) % power();
            else
                return t;
        }
    }

    Term power() {
        Term base = atom();
        if (accept('^'))
            return pow(std::move(base), power());
        return base;
    }

    Term atom() {
        skip_ws();
        if (pos_ == text_.size())
            fail("unexpected end of input");
        char c = text_[pos_];
        if (c == '(') {
            ++pos_;
            Term t = expr();
            if (!accept(')'))
                fail("expected ')'");
            return t;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t start = pos_;
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
                ++pos_;
            if (pos_ < text_.size() && ident_start(text_[pos_]))
                fail("identifier cannot start with a digit");
            return Term::literal(Integer(std::string(text_.substr(start, pos_ - start)), 10));
        }
        if (ident_start(c)) {
            std::size_t start = pos_;
            while (pos_ < text_.size() && ident_char(text_[pos_]))
                ++pos_;
            return Term::variable(std::string(text_.substr(start, pos_ - start)));
        }
        if (c == '-')
            fail("negative literals are not allowed; write 0-x");
        fail(std::string("unexpected '") + c + "'");
    }

    std::string_view text_;
    std::size_t pos_ = 0;
};

int precedence(Op op) {
    switch (op) {
    case Op::add:
    case Op::sub: return 1;
    case Op::mul:
    case Op::floor_div:
    case Op::mod: return 2;
    case Op::pow: return 3;
    default: return 4;
    }
}

char symbol(Op op) {
    switch (op) {
    case Op::add: return '+';
    case Op::sub: return '-';
    case Op::mul: return '*';
    case Op::floor_div: return '/';
    case Op::mod: return '%';
    case Op::pow: return '^';
    default: return '?';
    }
}

void render_into(const Term& t, std::string& out) {
    switch (t.op()) {
    case Op::literal:
        out += t.value().get_str();
        return;
    case Op::variable:
        out += t.name();
        return;
    default: break;
    }
    int p = precedence(t.op());
    bool right_assoc = t.op() == Op::pow;
    int lp = precedence(t.lhs().op());
    int rp = precedence(t.rhs().op());
    bool paren_l = right_assoc ? lp <= p : lp < p;
    bool paren_r = right_assoc ? rp < p : rp <= p;

    if (paren_l) out += '(';
    render_into(t.lhs(), out);
    if (paren_l) out += ')';
    out += symbol(t.op());
    if (paren_r) out += '(';
    render_into(t.rhs(), out);
    if (paren_r) out += ')';
}

}  // namespace

Term parse(std::string_view text) {
    return Parser(text).run();
}

std::string render(const Term& t) {
    std::string out;
    render_into(t, out);
    return out;
}

bool is_identifier(std::string_view s) {
    if (s.empty() || !ident_start(s.front()))
        return false;
    for (char c : s)
        if (!ident_char(c))
            return false;
    return true;
}

}  // namespace aterm
