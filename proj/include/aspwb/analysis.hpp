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

#ifndef ASPWB_ANALYSIS_HPP
#define ASPWB_ANALYSIS_HPP

#include <aspwb/parse.hpp>

#include <set>
#include <string>
#include <vector>

namespace aspwb {

enum class OutlineKind : std::uint8_t { program, rule, head, body, literal, predicate, term };
std::string_view to_string(OutlineKind k) noexcept;

struct OutlineNode {
    std::string              label;
    OutlineKind              kind = OutlineKind::program;
    SourceSpan               span;
    std::vector<OutlineNode> children;
};

//! Tree view of a program. Depth-1 nodes are the rules in source order,
//! labelled by their name or by the rule text cut at 40 characters.
OutlineNode build_outline(const Program& program);

enum class SubjectKind : std::uint8_t { none, predicate, variable, constant };
enum class OccurrenceScope : std::uint8_t { document, rule };

struct OccurrenceSet {
    SubjectKind             kind = SubjectKind::none;
    std::string             subject; //!< "p/2", "X" or the constant text
    OccurrenceScope         scope = OccurrenceScope::document;
    std::vector<SourceSpan> spans;   //!< ordered by position

    [[nodiscard]] bool empty() const noexcept { return spans.empty(); }
};

//! Occurrences of the predicate, constant or variable under the cursor.
//! Variables are scoped to their rule, everything else to the document.
OccurrenceSet occurrences_at(const Program& program, int line, int col);

//! Variables that occur in the head, under default negation, in a builtin or
//! in an aggregate guard must also occur in a positive standard body literal
//! outside of conditions. Variables local to a conditional literal or an
//! aggregate element must be bound by that construct's positive literals.
//! Occurrences inside arithmetic or intervals never bind. One error
//! diagnostic (code "unsafe-variable") per variable and rule.
std::vector<Diagnostic> check_safety(const Program& program);

//! Warns (code "const-assignment-lhs") for assignments with a constant left
//! operand.
std::vector<Diagnostic> check_assignments(const Program& program);

//! Parse diagnostics followed by all checks.
std::vector<Diagnostic> lint(const ParseResult& parsed);

} // namespace aspwb

#endif
