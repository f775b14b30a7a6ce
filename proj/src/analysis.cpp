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

#include <aspwb/analysis.hpp>

#include <algorithm>
#include <functional>
#include <map>
#include <unordered_set>

namespace aspwb {

std::string_view to_string(OutlineKind k) noexcept {
    switch (k) {
        case OutlineKind::program: return "program";
        case OutlineKind::rule: return "rule";
        case OutlineKind::head: return "head";
        case OutlineKind::body: return "body";
        case OutlineKind::literal: return "literal";
        case OutlineKind::predicate: return "predicate";
        case OutlineKind::term: return "term";
    }
    return "?";
}

// ---------------------------------------------------------------------------
// Outline
// ---------------------------------------------------------------------------
namespace {

constexpr std::size_t outline_label_width = 40;

std::string truncate_label(std::string s) {
    if (s.size() > outline_label_width) {
        s.resize(outline_label_width);
        s += "...";
    }
    return s;
}

SourceSpan whole_source(const Program& p) {
    SourceSpan s;
    s.begin = 0;
    s.end   = p.source.size();
    int line = 1;
    int col  = 1;
    for (unsigned char c : p.source) {
        if (c == '\n') {
            ++line;
            col = 1;
        }
        else if ((c & 0xC0) != 0x80) {
            ++col;
        }
    }
    s.end_line = line;
    s.end_col  = col;
    return s;
}

OutlineNode term_node(const Term& t) { return {to_string(t), OutlineKind::term, t.span, {}}; }

OutlineNode literal_node(const StandardLiteral& l, Dialect d) {
    OutlineNode n{pretty_print(l, d), OutlineKind::literal, l.span, {}};
    n.children.push_back({l.predicate + "/" + std::to_string(l.arity()), OutlineKind::predicate, l.predicate_span, {}});
    for (const auto& a : l.args) { n.children.push_back(term_node(a)); }
    for (const auto& c : l.conditions) { n.children.push_back(literal_node(c, d)); }
    return n;
}

OutlineNode literal_node(const BuiltinLiteral& l, Dialect d) {
    OutlineNode n{pretty_print(l, d), OutlineKind::literal, l.span, {}};
    n.children.push_back(term_node(l.left));
    n.children.push_back(term_node(l.right));
    return n;
}

OutlineNode literal_node(const AggregateLiteral& l, Dialect d) {
    std::string label;
    try {
        label = pretty_print(l, d);
    }
    catch (const Error&) {
        label = "#" + std::string(to_string(l.function));
    }
    OutlineNode n{label, OutlineKind::literal, l.span, {}};
    if (l.lower) { n.children.push_back(term_node(l.lower->bound)); }
    for (const auto& e : l.elements) {
        for (const auto& c : e.conditions) {
            n.children.push_back(std::visit([&](const auto& x) { return literal_node(x, d); }, c));
        }
    }
    if (l.upper) { n.children.push_back(term_node(l.upper->bound)); }
    return n;
}

} // namespace

OutlineNode build_outline(const Program& program) {
    OutlineNode root{"program", OutlineKind::program, whole_source(program), {}};
    for (const auto& r : program.rules) {
        std::string text;
        try {
            text = rule_text(r, program.dialect);
        }
        catch (const Error&) {
            text = std::string(program.source.substr(r.span.begin, r.span.end - r.span.begin));
        }
        OutlineNode rn{r.name ? *r.name : truncate_label(text), OutlineKind::rule, r.span, {}};
        if (!r.head.empty() || r.choice_head) {
            OutlineNode head{"head", OutlineKind::head, {}, {}};
            if (r.choice_head) { head.children.push_back(literal_node(*r.choice_head, program.dialect)); }
            for (const auto& h : r.head) { head.children.push_back(literal_node(h, program.dialect)); }
            head.span = head.children.front().span;
            for (const auto& c : head.children) { head.span = merge(head.span, c.span); }
            rn.children.push_back(std::move(head));
        }
        if (!r.body.empty()) {
            OutlineNode body{"body", OutlineKind::body, span_of(r.body.front()), {}};
            for (const auto& b : r.body) {
                body.children.push_back(std::visit([&](const auto& x) { return literal_node(x, program.dialect); }, b));
                body.span = merge(body.span, span_of(b));
            }
            rn.children.push_back(std::move(body));
        }
        root.children.push_back(std::move(rn));
    }
    return root;
}

// ---------------------------------------------------------------------------
// Generic traversal
// ---------------------------------------------------------------------------
namespace {

struct Visitor {
    std::function<void(const StandardLiteral&)> on_literal;
    std::function<void(const Term&)>            on_term; // every term node, outermost first
};

void walk(const Term& t, const Visitor& v) {
    if (v.on_term) { v.on_term(t); }
    for (const auto& a : t.args) { walk(a, v); }
}

void walk(const StandardLiteral& l, const Visitor& v) {
    if (v.on_literal) { v.on_literal(l); }
    for (const auto& a : l.args) { walk(a, v); }
    for (const auto& c : l.conditions) { walk(c, v); }
}

void walk(const BuiltinLiteral& l, const Visitor& v) {
    walk(l.left, v);
    walk(l.right, v);
}

void walk(const AggregateLiteral& l, const Visitor& v) {
    if (l.lower) { walk(l.lower->bound, v); }
    for (const auto& e : l.elements) {
        for (const auto& t : e.terms) { walk(t, v); }
        for (const auto& c : e.conditions) {
            std::visit([&](const auto& x) { walk(x, v); }, c);
        }
    }
    if (l.upper) { walk(l.upper->bound, v); }
}

void walk(const Rule& r, const Visitor& v) {
    if (r.choice_head) { walk(*r.choice_head, v); }
    for (const auto& h : r.head) { walk(h, v); }
    for (const auto& b : r.body) {
        std::visit([&](const auto& x) { walk(x, v); }, b);
    }
}

bool less_span(const SourceSpan& a, const SourceSpan& b) { return a.begin < b.begin; }

} // namespace

OccurrenceSet occurrences_at(const Program& program, int line, int col) {
    OccurrenceSet res;
    std::optional<std::size_t> rule_index;
    const Term*                hit_term = nullptr;
    const StandardLiteral*     hit_lit  = nullptr;

    for (std::size_t i = 0; i < program.rules.size() && !hit_term && !hit_lit; ++i) {
        Visitor v;
        v.on_literal = [&](const StandardLiteral& l) {
            if (!hit_lit && l.predicate_span.contains(line, col)) { hit_lit = &l; }
        };
        v.on_term = [&](const Term& t) {
            // innermost wins: later (nested) visits overwrite
            if (t.span.contains(line, col) && (t.is_constant() || t.is_variable())) { hit_term = &t; }
        };
        walk(program.rules[i], v);
        if (hit_term || hit_lit) { rule_index = i; }
    }

    if (hit_lit) {
        res.kind    = SubjectKind::predicate;
        res.scope   = OccurrenceScope::document;
        PredicateKey key{hit_lit->predicate, hit_lit->arity()};
        res.subject = key.str();
        Visitor v;
        v.on_literal = [&](const StandardLiteral& l) {
            if (l.predicate == key.name && l.arity() == key.arity) { res.spans.push_back(l.predicate_span); }
        };
        for (const auto& r : program.rules) { walk(r, v); }
    }
    else if (hit_term && hit_term->is_variable()) {
        if (hit_term->is_anonymous()) { return res; }
        res.kind    = SubjectKind::variable;
        res.scope   = OccurrenceScope::rule;
        res.subject = hit_term->name;
        Visitor v;
        v.on_term = [&](const Term& t) {
            if (t.is_variable() && t.name == res.subject) { res.spans.push_back(t.span); }
        };
        walk(program.rules[*rule_index], v);
    }
    else if (hit_term) {
        res.kind    = SubjectKind::constant;
        res.scope   = OccurrenceScope::document;
        res.subject = to_string(*hit_term);
        Term    subject = *hit_term;
        Visitor v;
        v.on_term = [&](const Term& t) {
            if (t.is_constant() && t == subject) { res.spans.push_back(t.span); }
        };
        for (const auto& r : program.rules) { walk(r, v); }
    }
    std::sort(res.spans.begin(), res.spans.end(), less_span);
    return res;
}

// ---------------------------------------------------------------------------
// Safety
// ---------------------------------------------------------------------------
namespace {

using VarSet = std::unordered_set<std::string>;

//! Variables in binding position: arguments and nested function arguments,
//! not inside arithmetic or intervals.
void binding_vars(const Term& t, VarSet& out) {
    switch (t.kind) {
        case TermKind::variable:
            if (!t.is_anonymous()) { out.insert(t.name); }
            break;
        case TermKind::function:
            for (const auto& a : t.args) { binding_vars(a, out); }
            break;
        default: break;
    }
}

void binding_vars(const StandardLiteral& l, VarSet& out) {
    for (const auto& a : l.args) { binding_vars(a, out); }
}

struct Occurrence {
    std::string name;
    SourceSpan  span;
};

void all_vars(const Term& t, std::vector<Occurrence>& out) {
    for_each_variable(t, [&](const Term& v) {
        if (!v.is_anonymous()) { out.push_back({v.name, v.span}); }
    });
}

//! Variables of a positive literal that occur only inside arithmetic.
void non_binding_vars(const Term& t, std::vector<Occurrence>& out, bool inside) {
    if (t.kind == TermKind::variable) {
        if (inside && !t.is_anonymous()) { out.push_back({t.name, t.span}); }
        return;
    }
    bool nested = inside || t.kind == TermKind::arithmetic || t.kind == TermKind::interval;
    for (const auto& a : t.args) { non_binding_vars(a, out, nested); }
}

class SafetyChecker {
public:
    explicit SafetyChecker(const Rule& r)
        : rule_(r) {}

    std::vector<Occurrence> unsafe() {
        for (const auto& b : rule_.body) {
            if (const auto* s = std::get_if<StandardLiteral>(&b); s && !s->default_negation && s->conditions.empty()) {
                binding_vars(*s, global_);
            }
        }
        for (const auto& h : rule_.head) {
            if (h.conditions.empty()) { require(h, global_); }
            else { check_conditional(h); }
        }
        if (rule_.choice_head) { check_aggregate(*rule_.choice_head, true); }
        for (const auto& b : rule_.body) {
            std::visit(
                [&](const auto& x) {
                    using T = std::decay_t<decltype(x)>;
                    if constexpr (std::is_same_v<T, StandardLiteral>) {
                        if (!x.conditions.empty()) { check_conditional(x); }
                        else if (x.default_negation) { require(x, global_); }
                        else { require_non_binding(x, global_); }
                    }
                    else if constexpr (std::is_same_v<T, BuiltinLiteral>) {
                        require(x.left, global_);
                        require(x.right, global_);
                    }
                    else {
                        check_aggregate(x, false);
                    }
                },
                b);
        }
        return std::move(unsafe_);
    }

private:
    void report(const Occurrence& o) {
        if (seen_.insert(o.name).second) { unsafe_.push_back(o); }
    }

    void require(const Term& t, const VarSet& bound) {
        std::vector<Occurrence> occ;
        all_vars(t, occ);
        for (const auto& o : occ) {
            if (!bound.count(o.name)) { report(o); }
        }
    }

    void require(const StandardLiteral& l, const VarSet& bound) {
        for (const auto& a : l.args) { require(a, bound); }
    }

    void require_non_binding(const StandardLiteral& l, const VarSet& bound) {
        std::vector<Occurrence> occ;
        for (const auto& a : l.args) { non_binding_vars(a, occ, false); }
        for (const auto& o : occ) {
            if (!bound.count(o.name)) { report(o); }
        }
    }

    //! l:c1:...:cn -- positive conditions bind locally.
    void check_conditional(const StandardLiteral& l) {
        VarSet local = global_;
        for (const auto& c : l.conditions) {
            if (!c.default_negation) { binding_vars(c, local); }
        }
        require(l, local);
        for (const auto& c : l.conditions) {
            if (c.default_negation) { require(c, local); }
            else { require_non_binding(c, local); }
        }
    }

    void check_aggregate(const AggregateLiteral& a, bool in_head) {
        if (a.lower) { require(a.lower->bound, global_); }
        if (a.upper) { require(a.upper->bound, global_); }
        for (const auto& e : a.elements) {
            if (a.dialect == Dialect::gringo) { check_gringo_element(e, in_head); }
            else { check_dlv_element(e); }
        }
    }

    //! Element literal (with its own conditions) plus an optional weight. In a
    //! choice head the element literal is a head atom and binds nothing.
    void check_gringo_element(const AggregateElement& e, bool in_head) {
        const auto* l = e.conditions.empty() ? nullptr : std::get_if<StandardLiteral>(&e.conditions.front());
        if (!l) { return; }
        VarSet local = global_;
        bool   binds = !in_head && !l->default_negation;
        if (binds) { binding_vars(*l, local); }
        for (const auto& c : l->conditions) {
            if (!c.default_negation) { binding_vars(c, local); }
        }
        if (binds) { require_non_binding(*l, local); }
        else { require(*l, local); }
        for (const auto& c : l->conditions) {
            if (c.default_negation) { require(c, local); }
            else { require_non_binding(c, local); }
        }
        for (const auto& t : e.terms) { require(t, local); }
    }

    void check_dlv_element(const AggregateElement& e) {
        VarSet local = global_;
        for (const auto& c : e.conditions) {
            const auto* s = std::get_if<StandardLiteral>(&c);
            if (s && !s->default_negation) { binding_vars(*s, local); }
        }
        for (const auto& t : e.terms) { require(t, local); }
        for (const auto& c : e.conditions) {
            if (const auto* s = std::get_if<StandardLiteral>(&c)) {
                if (s->default_negation) { require(*s, local); }
                else { require_non_binding(*s, local); }
            }
            else {
                const auto& bl = std::get<BuiltinLiteral>(c);
                require(bl.left, local);
                require(bl.right, local);
            }
        }
    }

    const Rule&             rule_;
    VarSet                  global_;
    VarSet                  seen_;
    std::vector<Occurrence> unsafe_;
};

} // namespace

std::vector<Diagnostic> check_safety(const Program& program) {
    std::vector<Diagnostic> out;
    for (const auto& r : program.rules) {
        for (const auto& o : SafetyChecker(r).unsafe()) {
            out.push_back({Severity::error, "unsafe-variable", "variable " + o.name + " is unsafe", o.span});
        }
    }
    return out;
}

std::vector<Diagnostic> check_assignments(const Program& program) {
    std::vector<Diagnostic> out;
    for (const auto& r : program.rules) {
        for (const auto& b : r.body) {
            const auto* bl = std::get_if<BuiltinLiteral>(&b);
            if (bl && bl->is_assignment && bl->left.is_constant()) {
                out.push_back({Severity::warning, "const-assignment-lhs",
                               "constant " + to_string(bl->left) + " on the left-hand side of an assignment", bl->span});
            }
        }
    }
    return out;
}

std::vector<Diagnostic> lint(const ParseResult& parsed) {
    std::vector<Diagnostic> out = parsed.diagnostics;
    auto                    s   = check_safety(parsed.program);
    auto                    a   = check_assignments(parsed.program);
    out.insert(out.end(), s.begin(), s.end());
    out.insert(out.end(), a.begin(), a.end());
    std::stable_sort(out.begin(), out.end(), [](const Diagnostic& x, const Diagnostic& y) { return x.span.begin < y.span.begin; });
    return out;
}

} // namespace aspwb
