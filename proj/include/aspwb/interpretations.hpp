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

#ifndef ASPWB_INTERPRETATIONS_HPP
#define ASPWB_INTERPRETATIONS_HPP

// Tree view, fact serialisation and comparison of interpretations.

#include <aspwb/model.hpp>

#include <set>
#include <string>
#include <vector>

namespace aspwb {

//! Node of the three-level view: 'I' root, 'P' predicate, 'L' literal.
struct TreeNode {
    char                  marker = 'I';
    std::string           label;
    std::vector<TreeNode> children;

    friend bool operator==(const TreeNode&, const TreeNode&) = default;
};

//! Root labelled with the interpretation's label (or "I"), one predicate
//! node per name/arity in (name, arity) order, literals in literal order.
//! A literal and its strong negation share the predicate node.
TreeNode to_tree(const Interpretation& interpretation);

//! Indented text rendering of a tree, one node per line.
std::string render_tree(const TreeNode& root);

//! One fact per literal in tree order, each on its own line.
//! @throws Error(unsupported_construct) when the dialect cannot print a literal.
std::string to_facts(const Interpretation& interpretation, Dialect dialect);
std::string to_facts(const GroundLiteral& literal, Dialect dialect);

struct InterpretationDiff {
    std::set<GroundLiteral> only_left;
    std::set<GroundLiteral> only_right;
    std::set<GroundLiteral> common;

    friend bool operator==(const InterpretationDiff&, const InterpretationDiff&) = default;
};

InterpretationDiff diff(const Interpretation& left, const Interpretation& right);

} // namespace aspwb

#endif
