#include "aterm/term.hpp"

#include <algorithm>
#include <stdexcept>

namespace aterm {

std::uint64_t bit_length(const Integer& v) {
    return mpz_sizeinbase(v.get_mpz_t(), 2);
}

std::string_view op_name(Op op) {
    switch (op) {
    case Op::literal: return "literal";
    case Op::variable: return "variable";
    case Op::add: return "add";
    case Op::sub: return "sub";
    case Op::mul: return "mul";
    case Op::floor_div: return "div";
    case Op::pow: return "pow";
    case Op::mod: return "mod";
    }
    return "?";
}

bool is_binary(Op op) {
    return op != Op::literal && op != Op::variable;
}

Term Term::literal(Integer value) {
    if (sgn(value) < 0)
        throw std::invalid_argument("term literals are non-negative");
    auto node = std::make_shared<Node>();
    node->op = Op::literal;
    node->value = std::move(value);
    return Term(std::move(node));
}

Term Term::variable(std::string name) {
    if (name.empty())
        throw std::invalid_argument("empty variable name");
    auto node = std::make_shared<Node>();
    node->op = Op::variable;
    node->name = std::move(name);
    return Term(std::move(node));
}

Term Term::binary(Op op, Term lhs, Term rhs) {
    if (!is_binary(op))
        throw std::invalid_argument("Term::binary needs an operator");
    auto node = std::make_shared<Node>();
    node->op = op;
    node->size = 1 + lhs.size() + rhs.size();
    node->depth = 1 + std::max(lhs.depth(), rhs.depth());
    node->lhs = std::make_unique<const Term>(std::move(lhs));
    node->rhs = std::make_unique<const Term>(std::move(rhs));
    return Term(std::move(node));
}

bool operator==(const Term& a, const Term& b) {
    if (a.node_ == b.node_)
        return true;
    if (a.op() != b.op() || a.size() != b.size())
        return false;
    switch (a.op()) {
    case Op::literal: return a.value() == b.value();
    case Op::variable: return a.name() == b.name();
    default: return a.lhs() == b.lhs() && a.rhs() == b.rhs();
    }
}

Term substitute(const Term& t, const Bindings& env) {
    switch (t.op()) {
    case Op::literal:
        return t;
    case Op::variable: {
        auto it = env.find(t.name());
        if (it == env.end())
            return t;
        if (sgn(it->second) >= 0)
            return Term::literal(it->second);
        return Term::literal(0ul) - Term::literal(Integer(-it->second));
    }
    default:
        return Term::binary(t.op(), substitute(t.lhs(), env), substitute(t.rhs(), env));
    }
}

bool is_closed(const Term& t) {
    switch (t.op()) {
    case Op::literal: return true;
    case Op::variable: return false;
    default: return is_closed(t.lhs()) && is_closed(t.rhs());
    }
}

}  // namespace aterm
