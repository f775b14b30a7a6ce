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

#include <aspwb/json.hpp>

#include <cstdio>

namespace aspwb {

Json to_json(const SourceSpan& span) {
    Json j;
    if (!span.file.empty()) { j["file"] = span.file; }
    j["start"] = {{"line", span.start_line}, {"col", span.start_col}};
    j["end"]   = {{"line", span.end_line}, {"col", span.end_col}};
    return j;
}

Json to_json(const Diagnostic& d) {
    return {{"severity", to_string(d.severity)}, {"code", d.code}, {"message", d.message}, {"span", to_json(d.span)}};
}

Json to_json(const std::vector<Diagnostic>& diags) {
    Json arr = Json::array();
    for (const auto& d : diags) { arr.push_back(to_json(d)); }
    return arr;
}

Json to_json(const OutlineNode& node) {
    Json children = Json::array();
    for (const auto& c : node.children) { children.push_back(to_json(c)); }
    return {{"label", node.label}, {"kind", to_string(node.kind)}, {"span", to_json(node.span)}, {"children", children}};
}

Json to_json(const Interpretation& interpretation) {
    Json j;
    if (interpretation.label) { j["label"] = *interpretation.label; }
    Json lits = Json::array();
    for (const auto& l : interpretation) { lits.push_back(to_string(l)); }
    j["literals"] = lits;
    return j;
}

Json to_json(const TreeNode& node) {
    Json children = Json::array();
    for (const auto& c : node.children) { children.push_back(to_json(c)); }
    return {{"marker", std::string(1, node.marker)}, {"label", node.label}, {"children", children}};
}

Json to_json(const InterpretationDiff& d) {
    auto list = [](const std::set<GroundLiteral>& s) {
        Json arr = Json::array();
        for (const auto& l : s) { arr.push_back(to_string(l)); }
        return arr;
    };
    return {{"only_left", list(d.only_left)}, {"only_right", list(d.only_right)}, {"common", list(d.common)}};
}

Json to_json(const SceneElement& e) {
    Json j{{"id", e.id}, {"kind", to_string(e.kind)}, {"x", e.x}, {"y", e.y}, {"width", e.width}, {"height", e.height}};
    if (!e.points.empty()) {
        Json pts = Json::array();
        for (const auto& p : e.points) { pts.push_back({p.x, p.y}); }
        j["points"] = pts;
    }
    if (!e.endpoints.empty()) { j["endpoints"] = e.endpoints; }
    if (e.kind == ElementKind::grid) {
        j["rows"] = e.rows;
        j["cols"] = e.cols;
    }
    if (!e.color.empty()) { j["color"] = e.color; }
    j["z"] = e.z;
    if (e.text) { j["text"] = *e.text; }
    if (e.href) { j["href"] = *e.href; }
    if (e.parent) { j["parent"] = *e.parent; }
    if (e.cell) { j["cell"] = {{"row", e.cell->first}, {"col", e.cell->second}}; }
    return j;
}

Json to_json(const Scene& scene) {
    Json els = Json::array();
    for (const auto& e : scene.elements) { els.push_back(to_json(e)); }
    return {{"width", scene.width}, {"height", scene.height}, {"elements", els}};
}

Json to_json(const Edit& e) {
    Json j{{"op", to_string(e.kind)}, {"id", e.id}};
    auto opt = [&j](const char* key, const auto& v) {
        if (v) { j[key] = *v; }
    };
    opt("x", e.x);
    opt("y", e.y);
    opt("row", e.row);
    opt("col", e.col);
    opt("grid", e.grid);
    if (e.element) { j["element"] = to_string(*e.element); }
    if (!e.numbers.empty()) { j["numbers"] = e.numbers; }
    if (!e.refs.empty()) { j["refs"] = e.refs; }
    opt("text", e.text);
    opt("color", e.color);
    opt("z", e.z);
    return j;
}

Json to_json(const Error& e) {
    return {{"error", {{"code", e.code_name()}, {"message", e.what()}, {"detail", e.detail()}}}};
}

Interpretation interpretation_from_json(const Json& j, Dialect dialect) {
    if (j.is_string()) { return parse_interpretation(j.get<std::string>(), dialect); }
    if (j.is_object() && j.contains("facts") && j["facts"].is_string()) {
        return parse_interpretation(j["facts"].get<std::string>(), dialect);
    }
    if (j.is_object() && j.contains("literals") && j["literals"].is_array()) {
        Interpretation I;
        for (const auto& l : j["literals"]) {
            if (!l.is_string()) { throw Error(ErrorCode::validation, "literals must be strings"); }
            I.add(parse_ground_literal(l.get<std::string>()));
        }
        if (j.contains("label") && j["label"].is_string()) { I.label = j["label"].get<std::string>(); }
        return I;
    }
    throw Error(ErrorCode::validation, "an interpretation is a facts string or an object with \"facts\" or \"literals\"");
}

namespace {

template <class T>
std::optional<T> field(const Json& j, const char* key) {
    if (!j.contains(key) || j[key].is_null()) { return std::nullopt; }
    try {
        return j[key].get<T>();
    }
    catch (const nlohmann::json::exception&) {
        throw Error(ErrorCode::validation, std::string("field '") + key + "' has the wrong type");
    }
}

} // namespace

Edit edit_from_json(const Json& j) {
    if (!j.is_object()) { throw Error(ErrorCode::validation, "an edit must be an object"); }
    Edit e;
    auto op = field<std::string>(j, "op");
    if (!op) { throw Error(ErrorCode::validation, "edit without 'op'"); }
    auto kind = edit_kind_from_string(*op);
    if (!kind) { throw Error(ErrorCode::validation, "unknown edit op '" + *op + "'"); }
    e.kind   = *kind;
    auto id  = field<std::string>(j, "id");
    if (!id) { throw Error(ErrorCode::validation, "edit without 'id'"); }
    e.id   = *id;
    e.x    = field<std::int64_t>(j, "x");
    e.y    = field<std::int64_t>(j, "y");
    e.row  = field<std::int64_t>(j, "row");
    e.col  = field<std::int64_t>(j, "col");
    e.grid = field<std::string>(j, "grid");
    if (auto k = field<std::string>(j, "element")) {
        e.element = element_kind_from_string(*k);
        if (!e.element) { throw Error(ErrorCode::validation, "unknown element kind '" + *k + "'"); }
    }
    e.numbers = field<std::vector<std::int64_t>>(j, "numbers").value_or(std::vector<std::int64_t>{});
    e.refs    = field<std::vector<std::string>>(j, "refs").value_or(std::vector<std::string>{});
    e.text    = field<std::string>(j, "text");
    e.color   = field<std::string>(j, "color");
    e.z       = field<std::int64_t>(j, "z");
    return e;
}

Scene scene_from_json(const Json& j) {
    Scene s;
    try {
        s.width  = j.at("width").get<double>();
        s.height = j.at("height").get<double>();
        for (const auto& je : j.at("elements")) {
            SceneElement e;
            e.id        = je.at("id").get<std::string>();
            auto kind   = element_kind_from_string(je.at("kind").get<std::string>());
            if (!kind) { throw Error(ErrorCode::validation, "unknown element kind in scene"); }
            e.kind   = *kind;
            e.x      = je.at("x").get<double>();
            e.y      = je.at("y").get<double>();
            e.width  = je.at("width").get<double>();
            e.height = je.at("height").get<double>();
            if (je.contains("points")) {
                for (const auto& p : je["points"]) { e.points.push_back({p.at(0).get<double>(), p.at(1).get<double>()}); }
            }
            if (je.contains("endpoints")) { e.endpoints = je["endpoints"].get<std::vector<std::string>>(); }
            e.rows  = je.value("rows", 0);
            e.cols  = je.value("cols", 0);
            e.color = je.value("color", std::string{});
            e.z     = je.value("z", std::int64_t{0});
            if (je.contains("text")) { e.text = je["text"].get<std::string>(); }
            if (je.contains("href")) { e.href = je["href"].get<std::string>(); }
            if (je.contains("parent")) { e.parent = je["parent"].get<std::string>(); }
            if (je.contains("cell")) { e.cell = {je["cell"].at("row").get<int>(), je["cell"].at("col").get<int>()}; }
            s.elements.push_back(std::move(e));
        }
    }
    catch (const nlohmann::json::exception& ex) {
        throw Error(ErrorCode::validation, std::string("malformed scene: ") + ex.what());
    }
    std::sort(s.elements.begin(), s.elements.end(), [](const auto& a, const auto& b) { return a.id < b.id; });
    return s;
}

std::string dump_json(const Json& j, int indent) { return j.dump(indent, ' ', false, Json::error_handler_t::replace); }

std::string content_hash(const Json& j) {
    std::uint64_t h = 14695981039346656037ULL;
    for (unsigned char c : dump_json(j)) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

} // namespace aspwb
