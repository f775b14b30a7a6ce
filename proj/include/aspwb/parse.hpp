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

#ifndef ASPWB_PARSE_HPP
#define ASPWB_PARSE_HPP

#include <aspwb/model.hpp>

#include <string>
#include <string_view>
#include <vector>

namespace aspwb {

enum class Severity : std::uint8_t { error, warning, info };
std::string_view to_string(Severity s) noexcept;

struct Diagnostic {
    Severity    severity = Severity::error;
    std::string code;
    std::string message;
    SourceSpan  span;
};

[[nodiscard]] bool has_errors(const std::vector<Diagnostic>& diags) noexcept;

struct ParseResult {
    Program                 program;
    std::vector<Diagnostic> diagnostics;

    [[nodiscard]] bool ok() const noexcept { return !has_errors(diagnostics); }
};

//! Dialect from a file name extension.
//! @throws Error(unknown_dialect) for any other extension.
Dialect detect_dialect(std::string_view path);

//! Parses a program. Never throws: unparseable statements are skipped up to
//! the next "." and reported as one error diagnostic each.
ParseResult parse(std::string_view source, Dialect dialect, std::string file = {});

//! Comment attachment: a trailing comment belongs to the rule ending on its
//! line; otherwise a comment belongs to the next rule when at most one blank
//! line separates them; everything else is standalone. Returns one entry per
//! comment, holding the rule index or nullopt.
std::vector<std::optional<std::size_t>> attach_comments(const std::vector<Comment>& comments,
                                                        const std::vector<Rule>& rules, std::string_view source);

struct MetaParseResult {
    std::vector<MetaCommand> commands;
    std::vector<Diagnostic>  diagnostics;
};

//! Extracts "%!" / "%*! ... *%" meta commands. Each command targets the first
//! rule starting after the comment; commands without a target are dropped
//! with a warning.
MetaParseResult parse_meta(const std::vector<Comment>& comments, const std::vector<Rule>& rules);

//! Reads a whitespace- or comma-separated list of ground literals, optionally
//! enclosed in braces.
//! @throws Error(syntax), Error(non_ground), Error(consistency).
Interpretation parse_interpretation(std::string_view text, Dialect dialect);

//! Parses a single ground literal such as "-q(1,f(a))".
GroundLiteral parse_ground_literal(std::string_view text);

//! Parses a single term such as "queen(2)".
Term parse_term(std::string_view text);

} // namespace aspwb

#endif
