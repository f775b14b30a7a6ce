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

#include <aspwb/interpretations.hpp>

#include <algorithm>
#include <iterator>

namespace aspwb {

TreeNode to_tree(const Interpretation& interpretation) {
    TreeNode root{'I', interpretation.label.value_or("I"), {}};
    std::optional<PredicateKey> current;
    for (const auto& l : interpretation) { // set order groups by (name, arity) already
        if (!current || *current != l.key()) {
            current = l.key();
            root.children.push_back({'P', current->str(), {}});
        }
        root.children.back().children.push_back({'L', to_string(l), {}});
    }
    return root;
}

namespace {
void render(std::string& out, const TreeNode& n, int depth) {
    out += std::string(static_cast<std::size_t>(depth) * 2, ' ') + n.marker + ' ' + n.label + '\n';
    for (const auto& c : n.children) { render(out, c, depth + 1); }
}
} // namespace

std::string render_tree(const TreeNode& root) {
    std::string out;
    render(out, root, 0);
    return out;
}

std::string to_facts(const GroundLiteral& literal, Dialect dialect) { return pretty_print(literal, dialect); }

std::string to_facts(const Interpretation& interpretation, Dialect dialect) {
    std::string out;
    for (const auto& l : interpretation) {
        if (!out.empty()) { out += '\n'; }
        out += to_facts(l, dialect);
    }
    return out;
}

InterpretationDiff diff(const Interpretation& left, const Interpretation& right) {
    InterpretationDiff d;
    const auto&        a = left.literals();
    const auto&        b = right.literals();
    std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::inserter(d.only_left, d.only_left.end()));
    std::set_difference(b.begin(), b.end(), a.begin(), a.end(), std::inserter(d.only_right, d.only_right.end()));
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::inserter(d.common, d.common.end()));
    return d;
}

} // namespace aspwb
