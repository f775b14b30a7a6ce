//
// Copyright (c) 2026-present, aspwb contributors
//
// This file is part of aspwb.
//
// Permission is hereby granted, free of charge, to any person obtaining a copy
// of this software and associated documentation files (the "Software"), to
// deal in the Software without restriction, including without limitation the
// rights to use, copy, modify, merge, publish, distribute, sublicense, and/or
// sell copies of the Software, and to permit persons to whom the Software is
// furnished to do so, subject to the following conditions:
//
// The above copyright notice and this permission notice shall be included in
// all copies or substantial portions of the Software.
//
// THE SOFTWARE IS PROVIDED "AS IS", WITHOUT WARRANTY OF ANY KIND, EXPRESS OR
// IMPLIED, INCLUDING BUT NOT LIMITED TO THE WARRANTIES OF MERCHANTABILITY,
// FITNESS FOR A PARTICULAR PURPOSE AND NONINFRINGEMENT. IN NO EVENT SHALL THE
// AUTHORS OR COPYRIGHT HOLDERS BE LIABLE FOR ANY CLAIM, DAMAGES OR OTHER
// LIABILITY, WHETHER IN AN ACTION OF CONTRACT, TORT OR OTHERWISE, ARISING
// FROM, OUT OF OR IN CONNECTION WITH THE SOFTWARE OR THE USE OR OTHER DEALINGS
// IN THE SOFTWARE.
//

#ifndef ASPWB_MODEL_HPP
#define ASPWB_MODEL_HPP

// Program-element model shared by the Gringo and DLV dialects.
//
// All values are plain aggregates. Equality operators compare structure only:
// source spans, comments and attachment bookkeeping are ignored so that a
// reparsed element compares equal to the original.

#include <aspwb/error.hpp>

#include <compare>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace aspwb {

enum class Dialect { gringo, dlv };

std::string_view to_string(Dialect d) noexcept;
std::optional<Dialect> dialect_from_string(std::string_view name) noexcept;

//! Region of a source text. Lines and columns are 1-based, columns count
//! characters, and the end position is exclusive. Offsets are byte offsets
//! into the source the span was recorded for.
struct SourceSpan {
    std::string file;
    int         start_line = 1;
    int         start_col  = 1;
    int         end_line   = 1;
    int         end_col    = 1;
    std::size_t begin      = 0;
    std::size_t end        = 0;

    [[nodiscard]] bool contains(int line, int col) const noexcept;
    [[nodiscard]] bool contains(const SourceSpan& other) const noexcept;
    [[nodiscard]] bool empty() const noexcept { return begin == end; }
};

//! Smallest span covering both arguments.
SourceSpan merge(const SourceSpan& a, const SourceSpan& b);

// ---------------------------------------------------------------------------
// Terms
// ---------------------------------------------------------------------------
enum class TermKind : std::uint8_t { constant, variable, function, arithmetic, interval };
enum class ConstantKind : std::uint8_t { integer, symbol, string };
enum class ArithOp : std::uint8_t { add, sub, mul, div };

char to_char(ArithOp op) noexcept;

//! A term. Function terms keep their arguments in args; arithmetic and
//! interval terms keep exactly two operands in args.
struct Term {
    TermKind     kind          = TermKind::constant;
    ConstantKind constant_kind = ConstantKind::symbol;
    ArithOp      op            = ArithOp::add;
    std::int64_t integer       = 0;
    std::string  name;
    std::vector<Term> args;
    SourceSpan   span;

    static Term make_integer(std::int64_t v);
    static Term make_symbol(std::string s);
    static Term make_string(std::string s);
    static Term make_variable(std::string s);
    static Term make_function(std::string s, std::vector<Term> a);
    static Term make_arithmetic(ArithOp op, Term lhs, Term rhs);
    static Term make_interval(Term low, Term high);

    [[nodiscard]] bool is_constant() const noexcept { return kind == TermKind::constant; }
    [[nodiscard]] bool is_integer() const noexcept {
        return kind == TermKind::constant && constant_kind == ConstantKind::integer;
    }
    [[nodiscard]] bool is_variable() const noexcept { return kind == TermKind::variable; }
    [[nodiscard]] bool is_anonymous() const noexcept { return kind == TermKind::variable && name == "_"; }
    //! No variables anywhere.
    [[nodiscard]] bool is_ground() const noexcept;
    //! Ground and free of arithmetic and intervals.
    [[nodiscard]] bool is_value() const noexcept;

    friend bool operator==(const Term& a, const Term& b) noexcept;
};

//! Total order on values: integers (numerically) < symbols < strings <
//! functions (by arity, name, then arguments). Non-value terms are ordered
//! after values by kind; the order is still total.
std::strong_ordering compare(const Term& a, const Term& b) noexcept;

struct TermLess {
    bool operator()(const Term& a, const Term& b) const noexcept { return compare(a, b) < 0; }
};

//! Calls fn(variable_term) for every variable occurrence, depth-first.
template <typename Fn>
void for_each_variable(const Term& t, Fn&& fn) {
    if (t.kind == TermKind::variable) {
        fn(t);
        return;
    }
    for (const auto& a : t.args) { for_each_variable(a, fn); }
}

// ---------------------------------------------------------------------------
// Literals
// ---------------------------------------------------------------------------
enum class RelOp : std::uint8_t { eq, ne, lt, le, gt, ge };
std::string_view to_string(RelOp op) noexcept;
RelOp            flip(RelOp op) noexcept;

struct StandardLiteral {
    bool                         strong_negation  = false;
    bool                         default_negation = false;
    std::string                  predicate;
    std::vector<Term>            args;
    std::vector<StandardLiteral> conditions; //!< Gringo only
    SourceSpan                   span;
    SourceSpan                   predicate_span;

    [[nodiscard]] std::size_t arity() const noexcept { return args.size(); }
    friend bool operator==(const StandardLiteral& a, const StandardLiteral& b) noexcept;
};

struct BuiltinLiteral {
    RelOp      op = RelOp::eq;
    Term       left;
    Term       right;
    bool       is_assignment = false;
    SourceSpan span;

    friend bool operator==(const BuiltinLiteral& a, const BuiltinLiteral& b) noexcept;
};

enum class AggregateFunction : std::uint8_t { count, sum, min, max };
std::string_view to_string(AggregateFunction f) noexcept;

using ElementCondition = std::variant<StandardLiteral, BuiltinLiteral>;

//! One aggregate element. DLV form: terms ":" conditions. Gringo form: the
//! element literal is conditions.front() (carrying its own conditions), and
//! terms holds the optional weight.
struct AggregateElement {
    std::vector<Term>             terms;
    std::vector<ElementCondition> conditions;

    friend bool operator==(const AggregateElement& a, const AggregateElement& b) noexcept;
};

//! Bound of an aggregate. For a lower guard the relation reads
//! "bound op aggregate", for an upper guard "aggregate op bound". An implicit
//! guard is the Gringo "L #count{...} U" form without an operator.
struct AggregateGuard {
    Term  bound;
    RelOp op       = RelOp::le;
    bool  implicit = false;

    friend bool operator==(const AggregateGuard& a, const AggregateGuard& b) noexcept;
};

struct AggregateLiteral {
    AggregateFunction             function = AggregateFunction::count;
    std::vector<AggregateElement> elements;
    std::optional<AggregateGuard> lower;
    std::optional<AggregateGuard> upper;
    Dialect                       dialect          = Dialect::gringo;
    bool                          default_negation = false;
    bool                          brace_only       = false; //!< Gringo "{...}" without a function keyword
    SourceSpan                    span;

    friend bool operator==(const AggregateLiteral& a, const AggregateLiteral& b) noexcept;
};

using BodyLiteral = std::variant<StandardLiteral, BuiltinLiteral, AggregateLiteral>;

const SourceSpan& span_of(const BodyLiteral& lit) noexcept;
const SourceSpan& span_of(const ElementCondition& lit) noexcept;

// ---------------------------------------------------------------------------
// Rules and programs
// ---------------------------------------------------------------------------
enum class CommentKind : std::uint8_t { line, block };

struct Comment {
    std::string                text; //!< raw token text including delimiters
    CommentKind                kind = CommentKind::line;
    SourceSpan                 span;
    std::optional<std::size_t> attached_to; //!< rule index

    friend bool operator==(const Comment& a, const Comment& b) noexcept {
        return a.text == b.text && a.kind == b.kind;
    }
};

enum class MetaKind : std::uint8_t { name };

struct MetaCommand {
    MetaKind    kind = MetaKind::name;
    std::string payload;
    std::size_t target = 0; //!< rule index
    SourceSpan  span;
};

enum class RuleKind : std::uint8_t { fact, constraint, proper };

struct Rule {
    std::vector<StandardLiteral>    head; //!< disjunction
    std::optional<AggregateLiteral> choice_head;
    std::vector<BodyLiteral>        body;
    std::optional<std::string>      name;
    std::vector<Comment>            comments;
    SourceSpan                      span;

    [[nodiscard]] RuleKind kind() const noexcept;
    //! Compares head, body and name; comments are compared separately.
    friend bool operator==(const Rule& a, const Rule& b) noexcept;
};

struct Program {
    Dialect                  dialect = Dialect::gringo;
    std::vector<Rule>        rules;
    std::vector<Comment>     standalone_comments;
    std::vector<MetaCommand> meta_commands;
    std::string              source;

    //! Rules plus every comment (attached and standalone) in source order.
    friend bool operator==(const Program& a, const Program& b) noexcept;
};

//! All comments of a program, attached and standalone, ordered by position.
std::vector<Comment> all_comments(const Program& p);

//! Builds a literal checking the model-level dialect restrictions.
//! @throws Error(unsupported_construct) for conditions on a DLV literal.
StandardLiteral make_literal(Dialect d, std::string predicate, std::vector<Term> args,
                             std::vector<StandardLiteral> conditions = {}, bool strong_neg = false,
                             bool default_neg = false);

// ---------------------------------------------------------------------------
// Ground literals and interpretations
// ---------------------------------------------------------------------------

//! Predicate identity: name and arity. Strong negation is a literal-level sign.
struct PredicateKey {
    std::string name;
    std::size_t arity = 0;
    auto operator<=>(const PredicateKey&) const = default;
    [[nodiscard]] std::string str() const { return name + "/" + std::to_string(arity); }
};

struct GroundLiteral {
    bool              strong_negation = false;
    std::string       predicate;
    std::vector<Term> args;

    //! @throws Error(non_ground) if an argument is not a value.
    static GroundLiteral make(std::string predicate, std::vector<Term> args, bool strong_neg = false);

    [[nodiscard]] PredicateKey  key() const { return {predicate, args.size()}; }
    [[nodiscard]] GroundLiteral complement() const;

    friend bool operator==(const GroundLiteral& a, const GroundLiteral& b) noexcept;
};

//! Order: predicate name, arity, arguments, then the positive literal before
//! its strong negation.
std::strong_ordering compare(const GroundLiteral& a, const GroundLiteral& b) noexcept;
inline bool          operator<(const GroundLiteral& a, const GroundLiteral& b) noexcept {
    return compare(a, b) < 0;
}

//! Finite consistent set of ground literals.
class Interpretation {
public:
    using container      = std::set<GroundLiteral>;
    using const_iterator = container::const_iterator;

    Interpretation() = default;
    //! @throws Error(consistency) when the input contains a complementary pair.
    explicit Interpretation(const std::vector<GroundLiteral>& lits);

    //! Inserts l unless its complement is present. Returns false (and leaves
    //! the set untouched) on a conflict.
    bool insert(const GroundLiteral& l);
    //! Like insert, but throws Error(consistency) on a conflict.
    void add(const GroundLiteral& l);
    bool erase(const GroundLiteral& l) { return lits_.erase(l) != 0; }

    [[nodiscard]] bool        contains(const GroundLiteral& l) const { return lits_.count(l) != 0; }
    [[nodiscard]] std::size_t size() const noexcept { return lits_.size(); }
    [[nodiscard]] bool        empty() const noexcept { return lits_.empty(); }
    [[nodiscard]] const_iterator begin() const noexcept { return lits_.begin(); }
    [[nodiscard]] const_iterator end() const noexcept { return lits_.end(); }
    [[nodiscard]] const container& literals() const noexcept { return lits_; }

    std::optional<std::string> label;

    friend bool operator==(const Interpretation& a, const Interpretation& b) noexcept {
        return a.lits_ == b.lits_;
    }

private:
    container lits_;
};

// ---------------------------------------------------------------------------
// Printing
// ---------------------------------------------------------------------------

// Printers throw Error(unsupported_construct) when the element uses a
// construct the target dialect lacks.
std::string to_string(const Term& t);
std::string to_string(const GroundLiteral& l);
std::string pretty_print(const StandardLiteral& l, Dialect d);
std::string pretty_print(const BuiltinLiteral& l, Dialect d);
std::string pretty_print(const AggregateLiteral& l, Dialect d);
std::string pretty_print(const BodyLiteral& l, Dialect d);
//! Rule text followed by ".", without comments.
std::string rule_text(const Rule& r, Dialect d);
//! Attached comments (one per line) followed by the rule text. A name without
//! a matching meta-command comment is emitted as "%! name(...)".
std::string pretty_print(const Rule& r, Dialect d);
//! Whole program: attached comments are emitted on the lines directly above
//! their rule, standalone comments are kept in source order.
std::string pretty_print(const Program& p, Dialect d);
//! A fact: "-a." / "q(1,2).".
std::string pretty_print(const GroundLiteral& l, Dialect d);

// ---------------------------------------------------------------------------
// Queries
// ---------------------------------------------------------------------------

//! Every constant symbol, string and integer in the program. Intervals with
//! integer literal bounds contribute every value in the range.
std::set<Term, TermLess> herbrand_constants(const Program& p);

//! Evaluates arithmetic and interval-free terms.
//! @throws Error(evaluation) for symbolic operands or division by zero,
//!         Error(non_ground) when a variable remains.
Term evaluate(const Term& t);

} // namespace aspwb

#endif
