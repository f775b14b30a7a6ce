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

#ifndef ASPWB_JSON_HPP
#define ASPWB_JSON_HPP

// JSON forms of the workbench's structured output. The shapes are fixed by
// the schemas under schemas/ and documented in docs/json.md.

#include <aspwb/analysis.hpp>
#include <aspwb/interpretations.hpp>
#include <aspwb/parse.hpp>
#include <aspwb/visualization.hpp>

#include <json.hpp>

namespace aspwb {

using Json = nlohmann::ordered_json;

Json to_json(const SourceSpan& span);
Json to_json(const Diagnostic& d);
Json to_json(const std::vector<Diagnostic>& diags);
Json to_json(const OutlineNode& node);
//! {"label"?: ..., "literals": ["q(1,2)", ...]}
Json to_json(const Interpretation& interpretation);
Json to_json(const TreeNode& node);
Json to_json(const InterpretationDiff& d);
Json to_json(const SceneElement& e);
Json to_json(const Scene& scene);
Json to_json(const Edit& e);
Json to_json(const Error& e);

//! Accepts {"literals": [...]} or {"facts": "..."}; a plain string is read
//! as facts text.
//! @throws Error(validation) for other shapes, parse errors as thrown.
Interpretation interpretation_from_json(const Json& j, Dialect dialect = Dialect::gringo);
//! @throws Error(validation) naming the offending field.
Edit edit_from_json(const Json& j);
Scene scene_from_json(const Json& j);

//! FNV-1a over the compact serialisation, as 16 hex digits.
//! Serialises with invalid UTF-8 replaced, so echoing user input never throws.
std::string dump_json(const Json& j, int indent = -1);
std::string content_hash(const Json& j);

} // namespace aspwb

#endif
