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

#include <aspwb/model.hpp>

#include <algorithm>
#include <limits>
#include <sstream>

namespace aspwb {

std::string_view to_string(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::unsupported_construct: return "unsupported-construct";
        case ErrorCode::unknown_dialect: return "unknown-dialect";
        case ErrorCode::consistency: return "consistency";
        case ErrorCode::non_ground: return "non-ground";
        case ErrorCode::syntax: return "syntax";
        case ErrorCode::safety: return "safety";
        case ErrorCode::evaluation: return "evaluation";
        case ErrorCode::capacity: return "capacity";
        case ErrorCode::cancelled: return "cancelled";
        case ErrorCode::launch: return "launch";
        case ErrorCode::tool_failure: return "tool-failure";
        case ErrorCode::timeout: return "timeout";
        case ErrorCode::format: return "format";
        case ErrorCode::integrity: return "integrity";
        case ErrorCode::conflict: return "conflict";
        case ErrorCode::validation: return "validation";
        case ErrorCode::not_found: return "not-found";
        case ErrorCode::dangling_reference: return "dangling-reference";
        case ErrorCode::vocabulary: return "vocabulary";
        case ErrorCode::visualization_unsat: return "visualization-unsat";
        case ErrorCode::abduction_unsat: return "abduction-unsat";
        case ErrorCode::io: return "io";
    }
    return "unknown";
}

std::string_view to_string(Dialect d) noexcept { return d == Dialect::gringo ? "gringo" : "dlv"; }

std::optional<Dialect> dialect_from_string(std::string_view name) noexcept {
    if (name == "gringo") { return Dialect::gringo; }
    if (name == "dlv") { return Dialect::dlv; }
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// SourceSpan
// ---------------------------------------------------------------------------
namespace {
bool before_or_at(int l1, int c1, int l2, int c2) { return l1 < l2 || (l1 == l2 && c1 <= c2); }
} // namespace

bool SourceSpan::contains(int line, int col) const noexcept {
    // end is exclusive
    return before_or_at(start_line, start_col, line, col) && !before_or_at(end_line, end_col, line, col);
}

bool SourceSpan::contains(const SourceSpan& o) const noexcept {
    return before_or_at(start_line, start_col, o.start_line, o.start_col) &&
           before_or_at(o.end_line, o.end_col, end_line, end_col);
}

SourceSpan merge(const SourceSpan& a, const SourceSpan& b) {
    SourceSpan r = a;
    if (before_or_at(b.start_line, b.start_col, a.start_line, a.start_col)) {
        r.start_line = b.start_line;
        r.start_col  = b.start_col;
    }
    if (before_or_at(a.end_line, a.end_col, b.end_line, b.end_col)) {
        r.end_line = b.end_line;
        r.end_col  = b.end_col;
    }
    r.begin = std::min(a.begin, b.begin);
    r.end   = std::max(a.end, b.end);
    return r;
}

// ---------------------------------------------------------------------------
// Terms
// ---------------------------------------------------------------------------
char to_char(ArithOp op) noexcept {
    switch (op) {
        case ArithOp::add: return '+';
        case ArithOp::sub: return '-';
        case ArithOp::mul: return '*';
        case ArithOp::div: return '/';
    }
    return '?';
}

Term Term::make_integer(std::int64_t v) {
    Term t;
    t.kind          = TermKind::constant;
    t.constant_kind = ConstantKind::integer;
    t.integer       = v;
    return t;
}
Term Term::make_symbol(std::string s) {
    Term t;
    t.constant_kind = ConstantKind::symbol;
    t.name          = std::move(s);
    return t;
}
Term Term::make_string(std::string s) {
    Term t;
    t.constant_kind = ConstantKind::string;
    t.name          = std::move(s);
    return t;
}
Term Term::make_variable(std::string s) {
    Term t;
    t.kind = TermKind::variable;
    t.name = std::move(s);
    return t;
}
Term Term::make_function(std::string s, std::vector<Term> a) {
    if (a.empty()) { return make_symbol(std::move(s)); }
    Term t;
    t.kind = TermKind::function;
    t.name = std::move(s);
    t.args = std::move(a);
    return t;
}
Term Term::make_arithmetic(ArithOp op, Term lhs, Term rhs) {
    Term t;
    t.kind = TermKind::arithmetic;
    t.op   = op;
    t.args.push_back(std::move(lhs));
    t.args.push_back(std::move(rhs));
    return t;
}
Term Term::make_interval(Term low, Term high) {
    Term t;
    t.kind = TermKind::interval;
    t.args.push_back(std::move(low));
    t.args.push_back(std::move(high));
    return t;
}

bool Term::is_ground() const noexcept {
    if (kind == TermKind::variable) { return false; }
    return std::all_of(args.begin(), args.end(), [](const Term& a) { return a.is_ground(); });
}

bool Term::is_value() const noexcept {
    switch (kind) {
        case TermKind::constant: return true;
        case TermKind::function:
            return std::all_of(args.begin(), args.end(), [](const Term& a) { return a.is_value(); });
        default: return false;
    }
}

bool operator==(const Term& a, const Term& b) noexcept {
    if (a.kind != b.kind) { return false; }
    switch (a.kind) {
        case TermKind::constant:
            if (a.constant_kind != b.constant_kind) { return false; }
            return a.constant_kind == ConstantKind::integer ? a.integer == b.integer : a.name == b.name;
        case TermKind::variable: return a.name == b.name;
        case TermKind::function: return a.name == b.name && a.args == b.args;
        case TermKind::arithmetic: return a.op == b.op && a.args == b.args;
        case TermKind::interval: return a.args == b.args;
    }
    return false;
}

namespace {
int order_rank(const Term& t) noexcept {
    switch (t.kind) {
        case TermKind::constant: return static_cast<int>(t.constant_kind);
        case TermKind::function: return 3;
        case TermKind::variable: return 4;
        case TermKind::arithmetic: return 5;
        case TermKind::interval: return 6;
    }
    return 7;
}
} // namespace

std::strong_ordering compare(const Term& a, const Term& b) noexcept {
    int ra = order_rank(a);
    int rb = order_rank(b);
    if (ra != rb) { return ra <=> rb; }
    switch (a.kind) {
        case TermKind::constant:
            if (a.constant_kind == ConstantKind::integer) { return a.integer <=> b.integer; }
            return a.name.compare(b.name) <=> 0;
        case TermKind::variable: return a.name.compare(b.name) <=> 0;
        case TermKind::arithmetic:
            if (a.op != b.op) { return a.op <=> b.op; }
            [[fallthrough]];
        case TermKind::function:
        case TermKind::interval: {
            if (a.args.size() != b.args.size()) { return a.args.size() <=> b.args.size(); }
            if (auto c = a.name.compare(b.name) <=> 0; c != 0) { return c; }
            for (std::size_t i = 0; i < a.args.size(); ++i) {
                if (auto c = compare(a.args[i], b.args[i]); c != 0) { return c; }
            }
            return std::strong_ordering::equal;
        }
    }
    return std::strong_ordering::equal;
}

Term evaluate(const Term& t) {
    switch (t.kind) {
        case TermKind::constant: return t;
        case TermKind::variable:
            throw Error(ErrorCode::non_ground, "cannot evaluate variable " + t.name);
        case TermKind::interval:
            throw Error(ErrorCode::evaluation, "interval " + to_string(t) + " has no single value");
        case TermKind::function: {
            Term r = t;
            for (auto& a : r.args) { a = evaluate(a); }
            return r;
        }
        case TermKind::arithmetic: {
            Term l = evaluate(t.args[0]);
            Term r = evaluate(t.args[1]);
            if (!l.is_integer() || !r.is_integer()) {
                throw Error(ErrorCode::evaluation, "arithmetic on non-integer operand in " + to_string(t));
            }
            std::int64_t x = l.integer;
            std::int64_t y = r.integer;
            std::int64_t v = 0;
            switch (t.op) {
                case ArithOp::add: v = x + y; break;
                case ArithOp::sub: v = x - y; break;
                case ArithOp::mul: v = x * y; break;
                case ArithOp::div:
                    if (y == 0) { throw Error(ErrorCode::evaluation, "division by zero in " + to_string(t)); }
                    v = x / y;
                    break;
            }
            Term res = Term::make_integer(v);
            res.span = t.span;
            return res;
        }
    }
    return t;
}

// ---------------------------------------------------------------------------
// Literals
// ---------------------------------------------------------------------------
std::string_view to_string(RelOp op) noexcept {
    switch (op) {
        case RelOp::eq: return "=";
        case RelOp::ne: return "!=";
        case RelOp::lt: return "<";
        case RelOp::le: return "<=";
        case RelOp::gt: return ">";
        case RelOp::ge: return ">=";
    }
    return "?";
}

RelOp flip(RelOp op) noexcept {
    switch (op) {
        case RelOp::lt: return RelOp::gt;
        case RelOp::le: return RelOp::ge;
        case RelOp::gt: return RelOp::lt;
        case RelOp::ge: return RelOp::le;
        default: return op;
    }
}

std::string_view to_string(AggregateFunction f) noexcept {
    switch (f) {
        case AggregateFunction::count: return "count";
        case AggregateFunction::sum: return "sum";
        case AggregateFunction::min: return "min";
        case AggregateFunction::max: return "max";
    }
    return "?";
}

bool operator==(const StandardLiteral& a, const StandardLiteral& b) noexcept {
    return a.strong_negation == b.strong_negation && a.default_negation == b.default_negation &&
           a.predicate == b.predicate && a.args == b.args && a.conditions == b.conditions;
}

bool operator==(const BuiltinLiteral& a, const BuiltinLiteral& b) noexcept {
    return a.op == b.op && a.left == b.left && a.right == b.right && a.is_assignment == b.is_assignment;
}

bool operator==(const AggregateElement& a, const AggregateElement& b) noexcept {
    return a.terms == b.terms && a.conditions == b.conditions;
}

bool operator==(const AggregateGuard& a, const AggregateGuard& b) noexcept {
    return a.bound == b.bound && a.op == b.op && a.implicit == b.implicit;
}

bool operator==(const AggregateLiteral& a, const AggregateLiteral& b) noexcept {
    return a.function == b.function && a.elements == b.elements && a.lower == b.lower && a.upper == b.upper &&
           a.dialect == b.dialect && a.default_negation == b.default_negation && a.brace_only == b.brace_only;
}

const SourceSpan& span_of(const BodyLiteral& lit) noexcept {
    return std::visit([](const auto& l) -> const SourceSpan& { return l.span; }, lit);
}

const SourceSpan& span_of(const ElementCondition& lit) noexcept {
    return std::visit([](const auto& l) -> const SourceSpan& { return l.span; }, lit);
}

RuleKind Rule::kind() const noexcept {
    if (head.empty() && !choice_head) { return RuleKind::constraint; }
    if (body.empty() && head.size() == 1 && !choice_head) { return RuleKind::fact; }
    return RuleKind::proper;
}

bool operator==(const Rule& a, const Rule& b) noexcept {
    return a.head == b.head && a.choice_head == b.choice_head && a.body == b.body && a.name == b.name;
}

std::vector<Comment> all_comments(const Program& p) {
    std::vector<Comment> out = p.standalone_comments;
    for (const auto& r : p.rules) { out.insert(out.end(), r.comments.begin(), r.comments.end()); }
    std::stable_sort(out.begin(), out.end(), [](const Comment& a, const Comment& b) { return a.span.begin < b.span.begin; });
    return out;
}

bool operator==(const Program& a, const Program& b) noexcept {
    if (a.dialect != b.dialect || a.rules != b.rules) { return false; }
    try {
        return all_comments(a) == all_comments(b);
    }
    catch (...) {
        return false;
    }
}

StandardLiteral make_literal(Dialect d, std::string predicate, std::vector<Term> args,
                             std::vector<StandardLiteral> conditions, bool strong_neg, bool default_neg) {
    if (d == Dialect::dlv && !conditions.empty()) {
        throw Error(ErrorCode::unsupported_construct, "DLV literals cannot carry conditions");
    }
    StandardLiteral l;
    l.predicate        = std::move(predicate);
    l.args             = std::move(args);
    l.conditions       = std::move(conditions);
    l.strong_negation  = strong_neg;
    l.default_negation = default_neg;
    return l;
}

// ---------------------------------------------------------------------------
// Ground literals and interpretations
// ---------------------------------------------------------------------------
GroundLiteral GroundLiteral::make(std::string predicate, std::vector<Term> args, bool strong_neg) {
    for (const auto& a : args) {
        if (!a.is_value()) {
            throw Error(ErrorCode::non_ground, "argument " + to_string(a) + " of " + predicate + " is not ground");
        }
    }
    GroundLiteral l;
    l.predicate       = std::move(predicate);
    l.args            = std::move(args);
    l.strong_negation = strong_neg;
    for (auto& a : l.args) { a.span = {}; }
    return l;
}

GroundLiteral GroundLiteral::complement() const {
    GroundLiteral c  = *this;
    c.strong_negation = !strong_negation;
    return c;
}

bool operator==(const GroundLiteral& a, const GroundLiteral& b) noexcept {
    return a.strong_negation == b.strong_negation && a.predicate == b.predicate && a.args == b.args;
}

std::strong_ordering compare(const GroundLiteral& a, const GroundLiteral& b) noexcept {
    if (auto c = a.predicate.compare(b.predicate) <=> 0; c != 0) { return c; }
    if (auto c = a.args.size() <=> b.args.size(); c != 0) { return c; }
    for (std::size_t i = 0; i < a.args.size(); ++i) {
        if (auto c = compare(a.args[i], b.args[i]); c != 0) { return c; }
    }
    return a.strong_negation <=> b.strong_negation;
}

Interpretation::Interpretation(const std::vector<GroundLiteral>& lits) {
    for (const auto& l : lits) { add(l); }
}

bool Interpretation::insert(const GroundLiteral& l) {
    if (lits_.count(l.complement()) != 0) { return false; }
    lits_.insert(l);
    return true;
}

void Interpretation::add(const GroundLiteral& l) {
    if (!insert(l)) {
        throw Error(ErrorCode::consistency,
                    "inconsistent interpretation: both " + to_string(l) + " and " + to_string(l.complement()));
    }
}

// ---------------------------------------------------------------------------
// Printing
// ---------------------------------------------------------------------------
namespace {

int precedence(ArithOp op) { return (op == ArithOp::add || op == ArithOp::sub) ? 1 : 2; }

void print_term(std::string& out, const Term& t);

void print_operand(std::string& out, const Term& t, int parent_prec, bool right) {
    bool parens = false;
    if (t.kind == TermKind::arithmetic) {
        int p  = precedence(t.op);
        parens = p < parent_prec || (right && p == parent_prec);
    }
    else if (t.kind == TermKind::interval || (t.is_integer() && t.integer < 0 && right)) {
        parens = true;
    }
    if (parens) { out += '('; }
    print_term(out, t);
    if (parens) { out += ')'; }
}

void print_string_literal(std::string& out, const std::string& s) {
    out += '"';
    for (char c : s) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            default: out += c;
        }
    }
    out += '"';
}

void print_args(std::string& out, const std::vector<Term>& args) {
    out += '(';
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (i) { out += ','; }
        print_term(out, args[i]);
    }
    out += ')';
}

void print_term(std::string& out, const Term& t) {
    switch (t.kind) {
        case TermKind::constant:
            switch (t.constant_kind) {
                case ConstantKind::integer: out += std::to_string(t.integer); break;
                case ConstantKind::symbol: out += t.name; break;
                case ConstantKind::string: print_string_literal(out, t.name); break;
            }
            break;
        case TermKind::variable: out += t.name; break;
        case TermKind::function:
            out += t.name;
            print_args(out, t.args);
            break;
        case TermKind::arithmetic: {
            int p = precedence(t.op);
            print_operand(out, t.args[0], p, false);
            out += to_char(t.op);
            print_operand(out, t.args[1], p, true);
            break;
        }
        case TermKind::interval:
            print_operand(out, t.args[0], 3, false);
            out += "..";
            print_operand(out, t.args[1], 3, false);
            break;
    }
}

void print_atom(std::string& out, bool strong_neg, const std::string& pred, const std::vector<Term>& args) {
    if (strong_neg) { out += '-'; }
    out += pred;
    if (!args.empty()) { print_args(out, args); }
}

void print_standard(std::string& out, const StandardLiteral& l, Dialect d) {
    if (d == Dialect::dlv && !l.conditions.empty()) {
        throw Error(ErrorCode::unsupported_construct, "conditional literal " + l.predicate + " in DLV dialect");
    }
    if (l.default_negation) { out += "not "; }
    print_atom(out, l.strong_negation, l.predicate, l.args);
    for (const auto& c : l.conditions) {
        out += ':';
        if (c.strong_negation && !c.default_negation) { out += ' '; } // ":-" would lex as the rule arrow
        print_standard(out, c, d);
    }
}

void print_builtin(std::string& out, const BuiltinLiteral& l) {
    print_term(out, l.left);
    out += ' ';
    out += to_string(l.op);
    out += ' ';
    print_term(out, l.right);
}

void print_condition(std::string& out, const ElementCondition& c, Dialect d) {
    if (const auto* s = std::get_if<StandardLiteral>(&c)) { print_standard(out, *s, d); }
    else { print_builtin(out, std::get<BuiltinLiteral>(c)); }
}

void print_lower(std::string& out, const std::optional<AggregateGuard>& g) {
    if (!g) { return; }
    print_term(out, g->bound);
    if (!g->implicit) {
        out += ' ';
        out += to_string(g->op);
    }
    out += ' ';
}

void print_upper(std::string& out, const std::optional<AggregateGuard>& g) {
    if (!g) { return; }
    out += ' ';
    if (!g->implicit) {
        out += to_string(g->op);
        out += ' ';
    }
    print_term(out, g->bound);
}

void print_aggregate(std::string& out, const AggregateLiteral& a, Dialect d) {
    if (a.dialect != d) {
        throw Error(ErrorCode::unsupported_construct,
                    std::string("aggregate written in ") + std::string(to_string(a.dialect)) + " form cannot be printed as " +
                        std::string(to_string(d)));
    }
    if (a.default_negation) { out += "not "; }
    print_lower(out, a.lower);
    if (d == Dialect::gringo) {
        bool brackets = !a.brace_only && a.function != AggregateFunction::count;
        if (!a.brace_only) {
            out += '#';
            out += to_string(a.function);
        }
        out += brackets ? '[' : '{';
        for (std::size_t i = 0; i < a.elements.size(); ++i) {
            const auto& e = a.elements[i];
            if (e.conditions.size() != 1 || !std::holds_alternative<StandardLiteral>(e.conditions.front()) ||
                e.terms.size() > 1) {
                throw Error(ErrorCode::unsupported_construct, "aggregate element not expressible in Gringo form");
            }
            if (i) { out += ','; }
            print_standard(out, std::get<StandardLiteral>(e.conditions.front()), d);
            if (!e.terms.empty()) {
                out += '=';
                print_term(out, e.terms.front());
            }
        }
        out += brackets ? ']' : '}';
    }
    else {
        if (a.brace_only) { throw Error(ErrorCode::unsupported_construct, "choice construct in DLV dialect"); }
        out += '#';
        out += to_string(a.function);
        out += '{';
        for (std::size_t i = 0; i < a.elements.size(); ++i) {
            const auto& e = a.elements[i];
            if (i) { out += ';'; }
            for (std::size_t j = 0; j < e.terms.size(); ++j) {
                if (j) { out += ','; }
                print_term(out, e.terms[j]);
            }
            out += ':';
            for (std::size_t j = 0; j < e.conditions.size(); ++j) {
                if (j) { out += ','; }
                std::string cond;
                print_condition(cond, e.conditions[j], d);
                if (j == 0 && cond.starts_with('-')) { out += ' '; }
                out += cond;
            }
        }
        out += '}';
    }
    print_upper(out, a.upper);
}

void print_body_literal(std::string& out, const BodyLiteral& l, Dialect d) {
    std::visit(
        [&](const auto& x) {
            using T = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<T, StandardLiteral>) { print_standard(out, x, d); }
            else if constexpr (std::is_same_v<T, BuiltinLiteral>) { print_builtin(out, x); }
            else { print_aggregate(out, x, d); }
        },
        l);
}

void print_rule(std::string& out, const Rule& r, Dialect d) {
    if (r.choice_head) { print_aggregate(out, *r.choice_head, d); }
    const char* sep = d == Dialect::gringo ? " | " : " v ";
    for (std::size_t i = 0; i < r.head.size(); ++i) {
        if (i) { out += sep; }
        print_standard(out, r.head[i], d);
    }
    if (!r.body.empty() || r.kind() == RuleKind::constraint) {
        out += r.head.empty() && !r.choice_head ? ":- " : " :- ";
        for (std::size_t i = 0; i < r.body.size(); ++i) {
            if (i) { out += ", "; }
            print_body_literal(out, r.body[i], d);
        }
    }
    out += '.';
}

bool is_name_meta(const Comment& c) {
    std::string_view t = c.text;
    std::size_t      skip = c.kind == CommentKind::line ? 2 : 3;
    if (t.size() < skip || t.substr(0, skip) != (c.kind == CommentKind::line ? "%!" : "%*!")) { return false; }
    t.remove_prefix(skip);
    while (!t.empty() && (t.front() == ' ' || t.front() == '\t')) { t.remove_prefix(1); }
    return t.substr(0, 5) == "name(";
}

void print_rule_with_comments(std::string& out, const Rule& r, Dialect d) {
    bool has_meta = false;
    for (const auto& c : r.comments) {
        has_meta = has_meta || is_name_meta(c);
        out += c.text;
        out += '\n';
    }
    if (r.name && !has_meta) {
        out += "%! name(" + *r.name + ")\n";
    }
    print_rule(out, r, d);
}

} // namespace

std::string to_string(const Term& t) {
    std::string out;
    print_term(out, t);
    return out;
}

std::string to_string(const GroundLiteral& l) {
    std::string out;
    print_atom(out, l.strong_negation, l.predicate, l.args);
    return out;
}

std::string pretty_print(const StandardLiteral& l, Dialect d) {
    std::string out;
    print_standard(out, l, d);
    return out;
}

std::string pretty_print(const BuiltinLiteral& l, Dialect) {
    std::string out;
    print_builtin(out, l);
    return out;
}

std::string pretty_print(const AggregateLiteral& l, Dialect d) {
    std::string out;
    print_aggregate(out, l, d);
    return out;
}

std::string pretty_print(const BodyLiteral& l, Dialect d) {
    std::string out;
    print_body_literal(out, l, d);
    return out;
}

std::string rule_text(const Rule& r, Dialect d) {
    std::string out;
    print_rule(out, r, d);
    return out;
}

std::string pretty_print(const Rule& r, Dialect d) {
    std::string out;
    print_rule_with_comments(out, r, d);
    return out;
}

std::string pretty_print(const GroundLiteral& l, Dialect) { return to_string(l) + "."; }

std::string pretty_print(const Program& p, Dialect d) {
    // Merge rules and standalone comments by source position.
    struct Item {
        std::size_t    pos;
        const Rule*    rule;
        const Comment* comment;
    };
    std::vector<Item> items;
    for (const auto& r : p.rules) {
        std::size_t pos = r.span.begin;
        for (const auto& c : r.comments) { pos = std::min(pos, c.span.begin); }
        items.push_back({pos, &r, nullptr});
    }
    for (const auto& c : p.standalone_comments) { items.push_back({c.span.begin, nullptr, &c}); }
    std::stable_sort(items.begin(), items.end(), [](const Item& a, const Item& b) { return a.pos < b.pos; });

    std::string out;
    for (const auto& it : items) {
        if (it.comment) {
            out += it.comment->text;
            // two blank lines keep the comment from attaching to what follows
            out += "\n\n\n";
            continue;
        }
        print_rule_with_comments(out, *it.rule, d);
        out += '\n';
    }
    return out;
}

// ---------------------------------------------------------------------------
// Herbrand constants
// ---------------------------------------------------------------------------
namespace {

using ConstSet = std::set<Term, TermLess>;

void collect(ConstSet& out, const Term& t) {
    switch (t.kind) {
        case TermKind::constant: {
            Term c = t;
            c.span = {};
            out.insert(std::move(c));
            break;
        }
        case TermKind::variable: break;
        case TermKind::interval:
            if (t.args[0].is_integer() && t.args[1].is_integer()) {
                for (std::int64_t v = t.args[0].integer; v <= t.args[1].integer; ++v) {
                    out.insert(Term::make_integer(v));
                }
                break;
            }
            [[fallthrough]];
        default:
            for (const auto& a : t.args) { collect(out, a); }
    }
}

void collect(ConstSet& out, const StandardLiteral& l) {
    for (const auto& a : l.args) { collect(out, a); }
    for (const auto& c : l.conditions) { collect(out, c); }
}

void collect(ConstSet& out, const BuiltinLiteral& l) {
    collect(out, l.left);
    collect(out, l.right);
}

void collect(ConstSet& out, const AggregateLiteral& l) {
    if (l.lower) { collect(out, l.lower->bound); }
    if (l.upper) { collect(out, l.upper->bound); }
    for (const auto& e : l.elements) {
        for (const auto& t : e.terms) { collect(out, t); }
        for (const auto& c : e.conditions) {
            std::visit([&](const auto& x) { collect(out, x); }, c);
        }
    }
}

} // namespace

std::set<Term, TermLess> herbrand_constants(const Program& p) {
    ConstSet out;
    for (const auto& r : p.rules) {
        for (const auto& h : r.head) { collect(out, h); }
        if (r.choice_head) { collect(out, *r.choice_head); }
        for (const auto& b : r.body) {
            std::visit([&](const auto& x) { collect(out, x); }, b);
        }
    }
    return out;
}

} // namespace aspwb
