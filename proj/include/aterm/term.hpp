#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <string_view>

namespace aterm {

using Integer = mpz_class;

/// Bit length of |v|; zero counts as one bit.
std::uint64_t bit_length(const Integer& v);

enum class Op { literal, variable, add, sub, mul, floor_div, pow, mod };

std::string_view op_name(Op op);
bool is_binary(Op op);

/// Immutable arithmetic-term AST handle. Copies share structure; nodes are
/// never mutated after construction, so a Term may be read from any thread.
class Term {
public:
    static Term literal(Integer value);
    static Term literal(unsigned long value) { return literal(Integer(value)); }
    static Term variable(std::string name);
    static Term binary(Op op, Term lhs, Term rhs);

    Op op() const { return node_->op; }
    /// Literal value; only meaningful for Op::literal.
    const Integer& value() const { return node_->value; }
    /// Variable name; only meaningful for Op::variable.
    const std::string& name() const { return node_->name; }
    const Term& lhs() const { return *node_->lhs; }
    const Term& rhs() const { return *node_->rhs; }

    /// Number of nodes in this subtree. Preorder index of lhs is +1, of rhs is +1+lhs.size().
    std::size_t size() const { return node_->size; }
    std::size_t depth() const { return node_->depth; }

    friend bool operator==(const Term& a, const Term& b);

private:
    struct Node {
        Op op;
        Integer value;
        std::string name;
        std::unique_ptr<const Term> lhs;
        std::unique_ptr<const Term> rhs;
        std::size_t size = 1;
        std::size_t depth = 1;
    };

    explicit Term(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

    std::shared_ptr<const Node> node_;
};

inline Term operator+(Term a, Term b) { return Term::binary(Op::add, std::move(a), std::move(b)); }
inline Term operator-(Term a, Term b) { return Term::binary(Op::sub, std::move(a), std::move(b)); }
inline Term operator*(Term a, Term b) { return Term::binary(Op::mul, std::move(a), std::move(b)); }
inline Term operator/(Term a, Term b) { return Term::binary(Op::floor_div, std::move(a), std::move(b)); }
inline Term operator%(Term a, Term b) { return Term::binary(Op::mod, std::move(a), std::move(b)); }
inline Term pow(Term base, Term exp) { return Term::binary(Op::pow, std::move(base), std::move(exp)); }

/// Variable name -> value. Values may be negative.
using Bindings = std::map<std::string, Integer, std::less<>>;

/// Replace every bound variable by its value. Negative values become `0-|v|`
/// since literals are non-negative. Unbound variables are left in place.
Term substitute(const Term& t, const Bindings& env);

bool is_closed(const Term& t);

}  // namespace aterm
