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

#include <aspwb/parse.hpp>

#include <algorithm>
#include <map>
#include <cctype>
#include <charconv>
#include <unordered_set>

namespace aspwb {

std::string_view to_string(Severity s) noexcept {
    switch (s) {
        case Severity::error: return "error";
        case Severity::warning: return "warning";
        case Severity::info: return "info";
    }
    return "?";
}

bool has_errors(const std::vector<Diagnostic>& diags) noexcept {
    return std::any_of(diags.begin(), diags.end(), [](const Diagnostic& d) { return d.severity == Severity::error; });
}

Dialect detect_dialect(std::string_view path) {
    auto slash = path.find_last_of("/\\");
    auto base  = slash == std::string_view::npos ? path : path.substr(slash + 1);
    auto dot   = base.rfind('.');
    if (dot == std::string_view::npos || dot == 0) {
        throw Error(ErrorCode::unknown_dialect, "cannot infer dialect of '" + std::string(path) + "': no extension");
    }
    auto ext = base.substr(dot);
    if (ext == ".lp" || ext == ".lparse" || ext == ".gr" || ext == ".gringo") { return Dialect::gringo; }
    if (ext == ".dlv" || ext == ".dl") { return Dialect::dlv; }
    throw Error(ErrorCode::unknown_dialect, "cannot infer dialect of '" + std::string(path) + "' from extension " +
                                                std::string(ext));
}

namespace {

// ---------------------------------------------------------------------------
// Lexer
// ---------------------------------------------------------------------------
enum class Tok {
    ident,
    variable,
    integer,
    string,
    directive,
    lparen,
    rparen,
    lbrace,
    rbrace,
    lbrack,
    rbrack,
    comma,
    semicolon,
    dot,
    dotdot,
    colon,
    if_,
    weak_if,
    bar,
    kw_not,
    plus,
    minus,
    star,
    slash,
    eq,
    ne,
    lt,
    le,
    gt,
    ge,
    bad,
    end,
};

struct Token {
    Tok         kind = Tok::end;
    std::string text; // identifier name, unescaped string, digits, directive name
    SourceSpan  span;
};

class Lexer {
public:
    Lexer(std::string_view src, std::string file)
        : src_(src)
        , file_(std::move(file)) {}

    void run(std::vector<Token>& tokens, std::vector<Comment>& comments, std::vector<Diagnostic>& diags) {
        for (;;) {
            skip_space();
            if (pos_ >= src_.size()) { break; }
            Mark m = mark();
            char c = src_[pos_];
            if (c == '%') {
                comments.push_back(comment(m, diags));
                continue;
            }
            Token t = next(m, diags);
            tokens.push_back(std::move(t));
        }
        Mark  m = mark();
        Token e;
        e.kind = Tok::end;
        e.span = span_from(m);
        tokens.push_back(std::move(e));
    }

private:
    struct Mark {
        std::size_t pos;
        int         line;
        int         col;
    };

    Mark mark() const { return {pos_, line_, col_}; }

    SourceSpan span_from(const Mark& m) const {
        SourceSpan s;
        s.file       = file_;
        s.start_line = m.line;
        s.start_col  = m.col;
        s.end_line   = line_;
        s.end_col    = col_;
        s.begin      = m.pos;
        s.end        = pos_;
        return s;
    }

    void advance() {
        unsigned char c = static_cast<unsigned char>(src_[pos_++]);
        if (c == '\n') {
            ++line_;
            col_ = 1;
        }
        else if ((c & 0xC0) != 0x80) {
            // count UTF-8 lead bytes only
            ++col_;
        }
    }

    bool at(std::string_view s) const { return src_.substr(pos_, s.size()) == s; }

    void skip_space() {
        while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) { advance(); }
    }

    Comment comment(const Mark& m, std::vector<Diagnostic>& diags) {
        Comment c;
        if (at("%*")) {
            c.kind = CommentKind::block;
            advance();
            advance();
            bool closed = false;
            while (pos_ < src_.size()) {
                if (at("*%")) {
                    advance();
                    advance();
                    closed = true;
                    break;
                }
                advance();
            }
            if (!closed) {
                // lenient: the comment runs to the end of the input
                diags.push_back({Severity::warning, "unterminated-comment", "block comment is not closed", span_from(m)});
            }
        }
        else {
            c.kind = CommentKind::line;
            while (pos_ < src_.size() && src_[pos_] != '\n') { advance(); }
            // keep "\r" out of the comment text
        }
        c.span = span_from(m);
        c.text = std::string(src_.substr(m.pos, pos_ - m.pos));
        if (c.kind == CommentKind::line && !c.text.empty() && c.text.back() == '\r') { c.text.pop_back(); }
        return c;
    }

    Token simple(const Mark& m, Tok k, int len) {
        for (int i = 0; i < len; ++i) { advance(); }
        Token t;
        t.kind = k;
        t.span = span_from(m);
        t.text = std::string(src_.substr(m.pos, pos_ - m.pos));
        return t;
    }

    Token next(const Mark& m, std::vector<Diagnostic>& diags) {
        char c = src_[pos_];
        auto is_word = [](char ch) { return std::isalnum(static_cast<unsigned char>(ch)) || ch == '_'; };
        if (std::islower(static_cast<unsigned char>(c))) {
            while (pos_ < src_.size() && (is_word(src_[pos_]) || src_[pos_] == '\'')) { advance(); }
            Token t;
            t.text = std::string(src_.substr(m.pos, pos_ - m.pos));
            t.kind = t.text == "not" ? Tok::kw_not : Tok::ident;
            t.span = span_from(m);
            return t;
        }
        if (std::isupper(static_cast<unsigned char>(c)) || c == '_') {
            while (pos_ < src_.size() && (is_word(src_[pos_]) || src_[pos_] == '\'')) { advance(); }
            Token t;
            t.kind = Tok::variable;
            t.text = std::string(src_.substr(m.pos, pos_ - m.pos));
            t.span = span_from(m);
            return t;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) { advance(); }
            Token t;
            t.kind = Tok::integer;
            t.text = std::string(src_.substr(m.pos, pos_ - m.pos));
            t.span = span_from(m);
            return t;
        }
        if (c == '"') {
            advance();
            std::string value;
            bool        closed = false;
            while (pos_ < src_.size()) {
                char ch = src_[pos_];
                if (ch == '"') {
                    advance();
                    closed = true;
                    break;
                }
                if (ch == '\n') { break; }
                if (ch == '\\' && pos_ + 1 < src_.size()) {
                    advance();
                    char e = src_[pos_];
                    value += e == 'n' ? '\n' : e;
                    advance();
                    continue;
                }
                value += ch;
                advance();
            }
            Token t;
            t.kind = closed ? Tok::string : Tok::bad;
            t.text = std::move(value);
            t.span = span_from(m);
            if (!closed) {
                diags.push_back({Severity::error, "unterminated-string", "string literal is not closed", t.span});
            }
            return t;
        }
        if (c == '#') {
            advance();
            while (pos_ < src_.size() && is_word(src_[pos_])) { advance(); }
            Token t;
            t.kind = Tok::directive;
            t.text = std::string(src_.substr(m.pos + 1, pos_ - m.pos - 1));
            t.span = span_from(m);
            return t;
        }
        if (at(":-")) { return simple(m, Tok::if_, 2); }
        if (at(":~")) { return simple(m, Tok::weak_if, 2); }
        if (at("..")) { return simple(m, Tok::dotdot, 2); }
        if (at("==")) { return simple(m, Tok::eq, 2); }
        if (at("!=")) { return simple(m, Tok::ne, 2); }
        if (at("<>")) { return simple(m, Tok::ne, 2); }
        if (at("<=")) { return simple(m, Tok::le, 2); }
        if (at(">=")) { return simple(m, Tok::ge, 2); }
        switch (c) {
            case '(': return simple(m, Tok::lparen, 1);
            case ')': return simple(m, Tok::rparen, 1);
            case '{': return simple(m, Tok::lbrace, 1);
            case '}': return simple(m, Tok::rbrace, 1);
            case '[': return simple(m, Tok::lbrack, 1);
            case ']': return simple(m, Tok::rbrack, 1);
            case ',': return simple(m, Tok::comma, 1);
            case ';': return simple(m, Tok::semicolon, 1);
            case '.': return simple(m, Tok::dot, 1);
            case ':': return simple(m, Tok::colon, 1);
            case '|': return simple(m, Tok::bar, 1);
            case '+': return simple(m, Tok::plus, 1);
            case '-': return simple(m, Tok::minus, 1);
            case '*': return simple(m, Tok::star, 1);
            case '/': return simple(m, Tok::slash, 1);
            case '=': return simple(m, Tok::eq, 1);
            case '<': return simple(m, Tok::lt, 1);
            case '>': return simple(m, Tok::gt, 1);
            default: break;
        }
        Token t = simple(m, Tok::bad, 1);
        // swallow the rest of a multi-byte character
        while (pos_ < src_.size() && (static_cast<unsigned char>(src_[pos_]) & 0xC0) == 0x80) { advance(); }
        t.span = span_from(m);
        diags.push_back({Severity::error, "unexpected-character", "unexpected character '" +
                                                                       std::string(src_.substr(m.pos, pos_ - m.pos)) + "'",
                         t.span});
        return t;
    }

    std::string_view src_;
    std::string      file_;
    std::size_t      pos_  = 0;
    int              line_ = 1;
    int              col_  = 1;
};

// ---------------------------------------------------------------------------
// Parser
// ---------------------------------------------------------------------------
struct SyntaxFailure {
    std::string message;
    SourceSpan  span;
};

bool is_relop(Tok k) {
    return k == Tok::eq || k == Tok::ne || k == Tok::lt || k == Tok::le || k == Tok::gt || k == Tok::ge;
}

RelOp relop_of(Tok k) {
    switch (k) {
        case Tok::eq: return RelOp::eq;
        case Tok::ne: return RelOp::ne;
        case Tok::lt: return RelOp::lt;
        case Tok::le: return RelOp::le;
        case Tok::gt: return RelOp::gt;
        default: return RelOp::ge;
    }
}

bool is_aggregate_keyword(const Token& t) {
    return t.kind == Tok::directive && (t.text == "count" || t.text == "sum" || t.text == "min" || t.text == "max");
}

std::string describe(const Token& t) {
    if (t.kind == Tok::end) { return "end of statement"; }
    return "'" + t.text + "'";
}

//! Recursive-descent parser over one statement (tokens up to, excluding, the
//! terminating dot).
class StatementParser {
public:
    StatementParser(const std::vector<Token>& toks, std::size_t begin, std::size_t end, Dialect d,
                    std::vector<Diagnostic>& diags)
        : toks_(toks)
        , pos_(begin)
        , end_(end)
        , dialect_(d)
        , diags_(diags) {}

    Rule parse_rule() {
        Rule r;
        if (peek().kind == Tok::if_) {
            ++pos_;
            if (at_end()) { fail("constraint without body", peek()); }
            r.body = parse_body();
        }
        else {
            parse_head(r);
            if (peek().kind == Tok::if_) {
                ++pos_;
                if (!at_end()) { r.body = parse_body(); }
                else { warn("empty-body", "rule has \":-\" but no body", toks_[pos_ - 1].span); }
            }
        }
        if (!at_end()) { fail("unexpected " + describe(peek()), peek()); }
        return r;
    }

    GroundLiteral parse_ground_literal_only() {
        StandardLiteral l = parse_standard_literal(false);
        std::vector<Term> args;
        for (auto& a : l.args) {
            if (!a.is_ground()) {
                throw Error(ErrorCode::non_ground, "literal " + pretty_print(l, Dialect::gringo) + " is not ground");
            }
            args.push_back(evaluate(a));
        }
        return GroundLiteral::make(l.predicate, std::move(args), l.strong_negation);
    }

    Term parse_term_only() { return parse_term(); }

    [[nodiscard]] bool at_end() const { return pos_ >= end_; }
    [[nodiscard]] std::size_t position() const { return pos_; }
    void skip(Tok k) {
        if (!at_end() && toks_[pos_].kind == k) { ++pos_; }
    }

private:
    const Token& peek(std::size_t ahead = 0) const {
        std::size_t p = pos_ + ahead;
        // past the statement: the token that ended it (dot or end of input)
        return p >= end_ ? toks_[end_] : toks_[p];
    }

    [[noreturn]] void fail(const std::string& msg, const Token& at) const { throw SyntaxFailure{msg, at.span}; }

    void warn(std::string code, std::string msg, const SourceSpan& span) {
        diags_.push_back({Severity::warning, std::move(code), std::move(msg), span});
    }

    const Token& expect(Tok k, const char* what) {
        if (at_end() || peek().kind != k) { fail(std::string("expected ") + what + ", found " + describe(peek()), peek()); }
        return toks_[pos_++];
    }

    SourceSpan span_since(std::size_t first) const {
        return merge(toks_[first].span, toks_[pos_ > first ? pos_ - 1 : first].span);
    }

    // -- terms ---------------------------------------------------------------
    Term parse_term() {
        std::size_t first = pos_;
        Term        t     = parse_additive();
        if (!at_end() && peek().kind == Tok::dotdot) {
            ++pos_;
            Term hi = parse_additive();
            t       = Term::make_interval(std::move(t), std::move(hi));
            t.span  = span_since(first);
        }
        return t;
    }

    Term parse_additive() {
        std::size_t first = pos_;
        Term        t     = parse_multiplicative();
        while (!at_end() && (peek().kind == Tok::plus || peek().kind == Tok::minus)) {
            ArithOp op = peek().kind == Tok::plus ? ArithOp::add : ArithOp::sub;
            ++pos_;
            Term rhs = parse_multiplicative();
            t        = Term::make_arithmetic(op, std::move(t), std::move(rhs));
            t.span   = span_since(first);
        }
        return t;
    }

    Term parse_multiplicative() {
        std::size_t first = pos_;
        Term        t     = parse_unary();
        while (!at_end() && (peek().kind == Tok::star || peek().kind == Tok::slash)) {
            ArithOp op = peek().kind == Tok::star ? ArithOp::mul : ArithOp::div;
            ++pos_;
            Term rhs = parse_unary();
            t        = Term::make_arithmetic(op, std::move(t), std::move(rhs));
            t.span   = span_since(first);
        }
        return t;
    }

    Term parse_unary() {
        if (!at_end() && peek().kind == Tok::minus) {
            std::size_t first = pos_;
            ++pos_;
            if (at_end() || peek().kind != Tok::integer) {
                fail("unary minus is only supported on integer constants", peek());
            }
            Term t    = integer_token(toks_[pos_++], true);
            t.span    = span_since(first);
            return t;
        }
        return parse_primary();
    }

    Term integer_token(const Token& tok, bool negative) const {
        std::int64_t v = 0;
        auto [p, ec]   = std::from_chars(tok.text.data(), tok.text.data() + tok.text.size(), v);
        if (ec != std::errc{}) { fail("integer out of range", tok); }
        Term t = Term::make_integer(negative ? -v : v);
        t.span = tok.span;
        return t;
    }

    Term parse_primary() {
        if (at_end()) { fail("expected term, found " + describe(peek()), peek()); }
        const Token& tok = peek();
        switch (tok.kind) {
            case Tok::integer: ++pos_; return integer_token(tok, false);
            case Tok::string: {
                ++pos_;
                Term t = Term::make_string(tok.text);
                t.span = tok.span;
                return t;
            }
            case Tok::variable: {
                ++pos_;
                Term t = Term::make_variable(tok.text);
                t.span = tok.span;
                return t;
            }
            case Tok::ident: {
                std::size_t first = pos_++;
                if (!at_end() && peek().kind == Tok::lparen) {
                    ++pos_;
                    std::vector<Term> args = parse_term_list();
                    expect(Tok::rparen, "')'");
                    Term t = Term::make_function(tok.text, std::move(args));
                    t.span = span_since(first);
                    return t;
                }
                Term t = Term::make_symbol(tok.text);
                t.span = tok.span;
                return t;
            }
            case Tok::lparen: {
                std::size_t first = pos_++;
                Term        t     = parse_term();
                expect(Tok::rparen, "')'");
                t.span = span_since(first);
                return t;
            }
            default: fail("expected term, found " + describe(tok), tok);
        }
    }

    std::vector<Term> parse_term_list() {
        std::vector<Term> args;
        args.push_back(parse_term());
        while (!at_end() && peek().kind == Tok::comma) {
            ++pos_;
            args.push_back(parse_term());
        }
        return args;
    }

    // -- literals ------------------------------------------------------------

    //! Converts an already parsed term into the atom of a standard literal.
    StandardLiteral literal_from_term(Term t, bool strong_neg, std::size_t first, const Token& name_tok) {
        bool atom_like = t.kind == TermKind::function ||
                         (t.kind == TermKind::constant && t.constant_kind == ConstantKind::symbol);
        if (!atom_like) { fail("expected a literal, found term " + to_string(t), name_tok); }
        StandardLiteral l;
        l.strong_negation = strong_neg;
        l.predicate       = t.name;
        l.args            = std::move(t.args);
        l.predicate_span  = name_tok.span;
        l.span            = span_since(first);
        return l;
    }

    StandardLiteral parse_atom(std::size_t first) {
        bool strong = false;
        if (!at_end() && peek().kind == Tok::minus) {
            strong = true;
            ++pos_;
        }
        if (at_end() || peek().kind != Tok::ident) { fail("expected predicate name, found " + describe(peek()), peek()); }
        const Token& name = peek();
        Term         t    = parse_primary();
        return literal_from_term(std::move(t), strong, first, name);
    }

    void parse_conditions(StandardLiteral& l, std::size_t first) {
        while (!at_end() && peek().kind == Tok::colon) {
            const Token& colon = peek();
            ++pos_;
            std::size_t     cfirst = pos_;
            bool            neg    = false;
            if (!at_end() && peek().kind == Tok::kw_not) {
                neg = true;
                ++pos_;
            }
            StandardLiteral c = parse_atom(cfirst);
            c.default_negation = neg;
            c.span             = span_since(cfirst);
            if (dialect_ == Dialect::dlv) { fail("conditional literals are not supported in the DLV dialect", colon); }
            l.conditions.push_back(std::move(c));
        }
        l.span = span_since(first);
    }

    StandardLiteral parse_standard_literal(bool allow_conditions) {
        std::size_t first = pos_;
        bool        neg   = false;
        if (!at_end() && peek().kind == Tok::kw_not) {
            neg = true;
            ++pos_;
        }
        StandardLiteral l  = parse_atom(first);
        l.default_negation = neg;
        if (allow_conditions) { parse_conditions(l, first); }
        return l;
    }

    // -- aggregates ----------------------------------------------------------
    [[nodiscard]] bool aggregate_starts_here() const {
        if (at_end()) { return false; }
        const Token& t = peek();
        return is_aggregate_keyword(t) || t.kind == Tok::lbrace || (dialect_ == Dialect::gringo && t.kind == Tok::lbrack);
    }

    [[nodiscard]] bool term_can_start() const {
        if (at_end()) { return false; }
        switch (peek().kind) {
            case Tok::integer:
            case Tok::string:
            case Tok::variable:
            case Tok::ident:
            case Tok::lparen:
            case Tok::minus: return true;
            default: return false;
        }
    }

    AggregateElement parse_gringo_element(AggregateFunction fn) {
        AggregateElement e;
        StandardLiteral  l = parse_standard_literal(true);
        e.conditions.emplace_back(std::move(l));
        if (!at_end() && peek().kind == Tok::eq) {
            if (fn == AggregateFunction::count) { fail("weights are not allowed in count aggregates", peek()); }
            ++pos_;
            e.terms.push_back(parse_term());
        }
        return e;
    }

    ElementCondition parse_element_condition() {
        std::size_t first = pos_;
        if (!at_end() && (peek().kind == Tok::kw_not || (peek().kind == Tok::minus && peek(1).kind == Tok::ident))) {
            return parse_standard_literal(false);
        }
        const Token& name = peek();
        Term         t    = parse_term();
        if (!at_end() && is_relop(peek().kind)) {
            BuiltinLiteral b;
            b.op   = relop_of(peek().kind);
            ++pos_;
            b.left  = std::move(t);
            b.right = parse_term();
            b.span  = span_since(first);
            return b;
        }
        return literal_from_term(std::move(t), false, first, name);
    }

    AggregateElement parse_dlv_element() {
        AggregateElement e;
        e.terms = parse_term_list();
        expect(Tok::colon, "':' in aggregate element");
        e.conditions.push_back(parse_element_condition());
        while (!at_end() && peek().kind == Tok::comma) {
            ++pos_;
            e.conditions.push_back(parse_element_condition());
        }
        return e;
    }

    //! Parses "[#fn]{...}" or "#fn[...]" and an optional upper guard.
    AggregateLiteral parse_aggregate_rest(std::size_t first, std::optional<AggregateGuard> lower, bool neg) {
        AggregateLiteral a;
        a.dialect          = dialect_;
        a.default_negation = neg;
        a.lower            = std::move(lower);
        if (is_aggregate_keyword(peek())) {
            const std::string& n = peek().text;
            a.function = n == "count" ? AggregateFunction::count
                         : n == "sum" ? AggregateFunction::sum
                         : n == "min" ? AggregateFunction::min
                                      : AggregateFunction::max;
            ++pos_;
        }
        else if (peek().kind == Tok::lbrace) {
            if (dialect_ == Dialect::dlv) { fail("expected aggregate function before '{'", peek()); }
            a.brace_only = true;
        }
        else {
            fail("expected aggregate, found " + describe(peek()), peek());
        }
        if (dialect_ == Dialect::gringo) {
            bool brackets = !a.brace_only && a.function != AggregateFunction::count;
            Tok  open     = brackets ? Tok::lbrack : Tok::lbrace;
            Tok  close    = brackets ? Tok::rbrack : Tok::rbrace;
            expect(open, brackets ? "'['" : "'{'");
            if (!at_end() && peek().kind != close) {
                a.elements.push_back(parse_gringo_element(a.function));
                while (!at_end() && (peek().kind == Tok::comma || peek().kind == Tok::semicolon)) {
                    ++pos_;
                    a.elements.push_back(parse_gringo_element(a.function));
                }
            }
            expect(close, brackets ? "']'" : "'}'");
        }
        else {
            expect(Tok::lbrace, "'{'");
            if (!at_end() && peek().kind != Tok::rbrace) {
                a.elements.push_back(parse_dlv_element());
                while (!at_end() && peek().kind == Tok::semicolon) {
                    ++pos_;
                    a.elements.push_back(parse_dlv_element());
                }
            }
            expect(Tok::rbrace, "'}'");
        }
        if (!at_end() && is_relop(peek().kind)) {
            AggregateGuard g;
            g.op = relop_of(peek().kind);
            ++pos_;
            g.bound = parse_term();
            a.upper = std::move(g);
        }
        else if (dialect_ == Dialect::gringo && term_can_start()) {
            AggregateGuard g;
            g.implicit = true;
            g.bound    = parse_term();
            a.upper    = std::move(g);
        }
        a.span = span_since(first);
        return a;
    }

    // -- body ----------------------------------------------------------------
    BodyLiteral parse_body_literal() {
        std::size_t first = pos_;
        bool        neg   = false;
        if (!at_end() && peek().kind == Tok::kw_not) {
            neg = true;
            ++pos_;
        }
        if (aggregate_starts_here()) { return parse_aggregate_rest(first, std::nullopt, neg); }
        if (!at_end() && peek().kind == Tok::minus && peek(1).kind == Tok::ident) {
            StandardLiteral l  = parse_atom(first);
            l.default_negation = neg;
            parse_conditions(l, first);
            return l;
        }
        const Token& name = peek();
        Term         t    = parse_term();
        if (!at_end() && is_relop(peek().kind)) {
            RelOp op = relop_of(peek().kind);
            ++pos_;
            if (aggregate_starts_here()) {
                return parse_aggregate_rest(first, AggregateGuard{std::move(t), op, false}, neg);
            }
            if (neg) { fail("'not' cannot precede a comparison", toks_[first]); }
            BuiltinLiteral b;
            b.op    = op;
            b.left  = std::move(t);
            b.right = parse_term();
            b.span  = span_since(first);
            return b;
        }
        if (dialect_ == Dialect::gringo && aggregate_starts_here()) {
            return parse_aggregate_rest(first, AggregateGuard{std::move(t), RelOp::le, true}, neg);
        }
        StandardLiteral l  = literal_from_term(std::move(t), false, first, name);
        l.default_negation = neg;
        parse_conditions(l, first);
        return l;
    }

    std::vector<BodyLiteral> parse_body() {
        std::vector<BodyLiteral> body;
        body.push_back(parse_body_literal());
        while (!at_end() && (peek().kind == Tok::comma || peek().kind == Tok::semicolon)) {
            if (peek().kind == Tok::semicolon) {
                warn("dialect-syntax", "';' used as body separator, solvers expect ','", peek().span);
            }
            ++pos_;
            body.push_back(parse_body_literal());
        }
        return body;
    }

    // -- head ----------------------------------------------------------------
    void parse_head(Rule& r) {
        std::size_t first = pos_;
        if (dialect_ == Dialect::gringo) {
            // choice / cardinality head: "{...}", "L {...} U", "#count{...}"
            bool choice = aggregate_starts_here();
            if (!choice && term_can_start() && peek().kind != Tok::ident && peek().kind != Tok::minus) {
                // a number or variable can only start a guarded choice head
                choice = true;
            }
            if (choice) {
                std::optional<AggregateGuard> lower;
                if (!aggregate_starts_here()) {
                    AggregateGuard g;
                    g.bound = parse_term();
                    if (!at_end() && is_relop(peek().kind)) {
                        g.op = relop_of(peek().kind);
                        ++pos_;
                    }
                    else {
                        g.implicit = true;
                    }
                    lower = std::move(g);
                }
                r.choice_head = parse_aggregate_rest(first, std::move(lower), false);
                return;
            }
        }
        if (!at_end() && peek().kind == Tok::kw_not) { fail("default negation is not allowed in rule heads", peek()); }
        r.head.push_back(parse_standard_literal(dialect_ == Dialect::gringo));
        for (;;) {
            if (at_end()) { break; }
            const Token& t = peek();
            if (t.kind == Tok::bar) {
                if (dialect_ == Dialect::dlv) {
                    warn("dialect-syntax", "'|' used for disjunction, DLV expects 'v'", t.span);
                }
                ++pos_;
            }
            else if (t.kind == Tok::ident && t.text == "v") {
                if (dialect_ == Dialect::gringo) {
                    warn("dialect-syntax", "'v' used for disjunction, Gringo expects '|'", t.span);
                }
                ++pos_;
            }
            else if (t.kind == Tok::semicolon && dialect_ == Dialect::gringo) {
                warn("dialect-syntax", "';' used for disjunction, Gringo 3 expects '|'", t.span);
                ++pos_;
            }
            else {
                break;
            }
            if (!at_end() && peek().kind == Tok::kw_not) {
                fail("default negation is not allowed in rule heads", peek());
            }
            r.head.push_back(parse_standard_literal(dialect_ == Dialect::gringo));
        }
    }

    const std::vector<Token>& toks_;
    std::size_t               pos_;
    std::size_t               end_;
    Dialect                   dialect_;
    std::vector<Diagnostic>&  diags_;
};

// ---------------------------------------------------------------------------
// Assignment flag
// ---------------------------------------------------------------------------
void collect_positive_vars(const Rule& r, std::unordered_set<std::string>& out) {
    for (const auto& b : r.body) {
        if (const auto* s = std::get_if<StandardLiteral>(&b); s && !s->default_negation) {
            for (const auto& a : s->args) {
                for_each_variable(a, [&](const Term& v) { out.insert(v.name); });
            }
        }
    }
}

void mark_assignments(Rule& r) {
    std::unordered_set<std::string> bound;
    collect_positive_vars(r, bound);
    for (auto& b : r.body) {
        auto* bl = std::get_if<BuiltinLiteral>(&b);
        if (!bl || bl->op != RelOp::eq) { continue; }
        auto free_var = [&](const Term& t) { return t.is_variable() && !t.is_anonymous() && !bound.count(t.name); };
        bl->is_assignment = free_var(bl->left) != free_var(bl->right);
    }
}

// ---------------------------------------------------------------------------
// Meta commands
// ---------------------------------------------------------------------------
bool valid_identifier(std::string_view s) {
    if (s.empty() || !std::islower(static_cast<unsigned char>(s.front()))) { return false; }
    return std::all_of(s.begin(), s.end(), [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; });
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) { s.remove_prefix(1); }
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) { s.remove_suffix(1); }
    return s;
}

//! Payload of a meta comment, or nullopt if the comment is not one.
std::optional<std::string_view> meta_payload(const Comment& c) {
    std::string_view t = c.text;
    if (c.kind == CommentKind::line) {
        if (t.substr(0, 2) != "%!") { return std::nullopt; }
        return trim(t.substr(2));
    }
    if (t.substr(0, 3) != "%*!") { return std::nullopt; }
    t.remove_prefix(3);
    if (t.size() >= 2 && t.substr(t.size() - 2) == "*%") { t.remove_suffix(2); }
    return trim(t);
}

std::size_t count_blank_lines(std::string_view src, std::size_t from, std::size_t to) {
    // counts whitespace-only lines strictly between the line containing
    // `from` and the line containing `to`
    std::size_t blanks = 0;
    std::size_t p      = src.find('\n', from);
    while (p != std::string_view::npos && p < to) {
        std::size_t next = src.find('\n', p + 1);
        if (next == std::string_view::npos || next > to) { break; }
        auto line = src.substr(p + 1, next - p - 1);
        if (trim(line).empty()) { ++blanks; }
        p = next;
    }
    return blanks;
}

} // namespace

// ---------------------------------------------------------------------------
// Public entry points
// ---------------------------------------------------------------------------
std::vector<std::optional<std::size_t>> attach_comments(const std::vector<Comment>& comments,
                                                        const std::vector<Rule>& rules, std::string_view source) {
    std::vector<std::optional<std::size_t>> out;
    out.reserve(comments.size());
    for (const auto& c : comments) {
        std::optional<std::size_t> target;
        // trailing comment: a rule ends on the line the comment starts on
        for (std::size_t i = 0; i < rules.size(); ++i) {
            const auto& s = rules[i].span;
            if (s.end <= c.span.begin && s.end_line == c.span.start_line) { target = i; }
        }
        if (!target) {
            for (std::size_t i = 0; i < rules.size(); ++i) {
                const auto& s = rules[i].span;
                if (s.begin >= c.span.end) {
                    if (count_blank_lines(source, c.span.end > 0 ? c.span.end - 1 : 0, s.begin) <= 1) { target = i; }
                    break;
                }
            }
        }
        out.push_back(target);
    }
    return out;
}

MetaParseResult parse_meta(const std::vector<Comment>& comments, const std::vector<Rule>& rules) {
    MetaParseResult res;
    for (const auto& c : comments) {
        auto payload = meta_payload(c);
        if (!payload) { continue; }
        std::string_view p = *payload;
        auto             open = p.find('(');
        std::string_view cmd  = trim(p.substr(0, open));
        if (open == std::string_view::npos || p.back() != ')') {
            if (cmd == "name" || open != std::string_view::npos) {
                res.diagnostics.push_back({Severity::warning, "meta-malformed",
                                           "malformed meta command '" + std::string(p) + "'", c.span});
            }
            else {
                res.diagnostics.push_back({Severity::warning, "meta-unknown-command",
                                           "unknown meta command '" + std::string(cmd) + "'", c.span});
            }
            continue;
        }
        if (cmd != "name") {
            res.diagnostics.push_back(
                {Severity::warning, "meta-unknown-command", "unknown meta command '" + std::string(cmd) + "'", c.span});
            continue;
        }
        std::string_view arg = trim(p.substr(open + 1, p.size() - open - 2));
        if (!valid_identifier(arg)) {
            res.diagnostics.push_back(
                {Severity::warning, "meta-malformed", "rule name '" + std::string(arg) + "' is not an identifier", c.span});
            continue;
        }
        std::optional<std::size_t> target;
        for (std::size_t i = 0; i < rules.size(); ++i) {
            if (rules[i].span.begin >= c.span.end) {
                target = i;
                break;
            }
        }
        if (!target) {
            res.diagnostics.push_back({Severity::warning, "meta-no-target", "meta command is not followed by a rule", c.span});
            continue;
        }
        MetaCommand m;
        m.kind    = MetaKind::name;
        m.payload = std::string(arg);
        m.target  = *target;
        m.span    = c.span;
        res.commands.push_back(std::move(m));
    }
    return res;
}

ParseResult parse(std::string_view source, Dialect dialect, std::string file) {
    ParseResult res;
    res.program.dialect = dialect;
    res.program.source  = std::string(source);

    std::vector<Token>   toks;
    std::vector<Comment> comments;
    std::vector<Diagnostic> lex_diags;
    Lexer(source, file).run(toks, comments, lex_diags);
    std::map<std::size_t, Diagnostic> bad_token_diags;
    for (auto& d : lex_diags) {
        if (d.code == "unterminated-string" || d.code == "unexpected-character") {
            bad_token_diags.emplace(d.span.begin, std::move(d));
        }
        else { res.diagnostics.push_back(std::move(d)); }
    }

    std::size_t start = 0;
    auto        last  = toks.size() - 1; // end token
    while (start < last) {
        std::size_t stop = start;
        while (stop < last && toks[stop].kind != Tok::dot) { ++stop; }
        bool        terminated = stop < last;
        const auto& first_tok  = toks[start];
        SourceSpan  stmt_span  = merge(first_tok.span, toks[terminated ? stop : stop - 1].span);

        if (start == stop) {
            res.diagnostics.push_back({Severity::error, "syntax-error", "empty statement", toks[stop].span});
            start = stop + 1;
            continue;
        }

        bool skip_statement = false;
        if (first_tok.kind == Tok::directive && !is_aggregate_keyword(first_tok)) {
            const std::string& d = first_tok.text;
            if (d == "const") {
                res.diagnostics.push_back({Severity::info, "const-directive-skipped", "#const directive is not modelled", stmt_span});
            }
            else if (d == "minimize" || d == "maximize" || d == "minimise" || d == "maximise") {
                res.diagnostics.push_back(
                    {Severity::warning, "optimization-skipped", "optimisation statement is not modelled", stmt_span});
            }
            else {
                res.diagnostics.push_back(
                    {Severity::warning, "directive-skipped", "directive #" + d + " is not modelled", stmt_span});
            }
            skip_statement = true;
        }
        else if (first_tok.kind == Tok::weak_if) {
            // weak constraint: ":~ body. [w:l]" -- the weight suffix follows the dot
            res.diagnostics.push_back({Severity::warning, "optimization-skipped", "weak constraint is not modelled", stmt_span});
            skip_statement = true;
            if (terminated && stop + 1 < last && toks[stop + 1].kind == Tok::lbrack) {
                std::size_t close = stop + 1;
                while (close < last && toks[close].kind != Tok::rbrack) { ++close; }
                if (close < last) { stop = close; }
            }
        }

        const Token* bad_token = nullptr;
        for (std::size_t i = start; i < stop && !bad_token; ++i) {
            if (toks[i].kind == Tok::bad) { bad_token = &toks[i]; }
        }

        if (!skip_statement && bad_token) {
            // one error per statement: the first lexical problem
            res.diagnostics.push_back(bad_token_diags.at(bad_token->span.begin));
        }
        else if (!skip_statement) {
            std::vector<Diagnostic> local;
            try {
                StatementParser p(toks, start, stop, dialect, local);
                Rule            r = p.parse_rule();
                r.span            = stmt_span;
                mark_assignments(r);
                res.program.rules.push_back(std::move(r));
                res.diagnostics.insert(res.diagnostics.end(), local.begin(), local.end());
                if (!terminated) {
                    res.diagnostics.push_back(
                        {Severity::warning, "missing-terminator", "last rule is not terminated by '.'", stmt_span});
                }
            }
            catch (const SyntaxFailure& f) {
                res.diagnostics.push_back({Severity::error, "syntax-error", f.message, f.span});
            }
        }
        start = terminated ? stop + 1 : stop;
    }

    // comments and meta commands
    auto attachment = attach_comments(comments, res.program.rules, source);
    auto meta       = parse_meta(comments, res.program.rules);
    res.diagnostics.insert(res.diagnostics.end(), meta.diagnostics.begin(), meta.diagnostics.end());
    for (const auto& m : meta.commands) {
        res.program.rules[m.target].name = m.payload;
        for (std::size_t i = 0; i < comments.size(); ++i) {
            if (comments[i].span.begin == m.span.begin) { attachment[i] = m.target; }
        }
    }
    for (std::size_t i = 0; i < comments.size(); ++i) {
        Comment c     = comments[i];
        c.attached_to = attachment[i];
        if (attachment[i]) { res.program.rules[*attachment[i]].comments.push_back(std::move(c)); }
        else { res.program.standalone_comments.push_back(std::move(c)); }
    }
    res.program.meta_commands = std::move(meta.commands);
    std::stable_sort(res.diagnostics.begin(), res.diagnostics.end(),
                     [](const Diagnostic& a, const Diagnostic& b) { return a.span.begin < b.span.begin; });
    return res;
}

namespace {
[[noreturn]] void rethrow_syntax(const SyntaxFailure& f) {
    throw Error(ErrorCode::syntax, f.message + " at " + std::to_string(f.span.start_line) + ":" +
                                       std::to_string(f.span.start_col));
}

void lex_or_throw(std::string_view text, std::vector<Token>& toks) {
    std::vector<Comment>    comments;
    std::vector<Diagnostic> diags;
    Lexer(text, {}).run(toks, comments, diags);
    for (const auto& d : diags) {
        if (d.severity == Severity::error) {
            throw Error(ErrorCode::syntax, d.message + " at " + std::to_string(d.span.start_line) + ":" +
                                               std::to_string(d.span.start_col));
        }
    }
}
} // namespace

Interpretation parse_interpretation(std::string_view text, Dialect dialect) {
    std::vector<Token> toks;
    lex_or_throw(text, toks);
    std::size_t b = 0;
    std::size_t e = toks.size() - 1;
    if (b < e && toks[b].kind == Tok::lbrace) {
        if (toks[e - 1].kind != Tok::rbrace) { throw Error(ErrorCode::syntax, "missing closing '}'"); }
        ++b;
        --e;
    }
    Interpretation          res;
    std::vector<Diagnostic> diags;
    try {
        StatementParser p(toks, b, e, dialect, diags);
        while (!p.at_end()) {
            res.add(p.parse_ground_literal_only());
            p.skip(Tok::comma);
            p.skip(Tok::dot);
        }
    }
    catch (const SyntaxFailure& f) {
        rethrow_syntax(f);
    }
    return res;
}

GroundLiteral parse_ground_literal(std::string_view text) {
    std::vector<Token> toks;
    lex_or_throw(text, toks);
    std::vector<Diagnostic> diags;
    try {
        StatementParser p(toks, 0, toks.size() - 1, Dialect::gringo, diags);
        auto            l = p.parse_ground_literal_only();
        p.skip(Tok::dot);
        if (!p.at_end()) { throw Error(ErrorCode::syntax, "trailing input after literal '" + std::string(text) + "'"); }
        return l;
    }
    catch (const SyntaxFailure& f) {
        rethrow_syntax(f);
    }
}

Term parse_term(std::string_view text) {
    std::vector<Token> toks;
    lex_or_throw(text, toks);
    std::vector<Diagnostic> diags;
    try {
        StatementParser p(toks, 0, toks.size() - 1, Dialect::gringo, diags);
        Term            t = p.parse_term_only();
        if (!p.at_end()) { throw Error(ErrorCode::syntax, "trailing input after term '" + std::string(text) + "'"); }
        return t;
    }
    catch (const SyntaxFailure& f) {
        rethrow_syntax(f);
    }
}

} // namespace aspwb
