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
#include <aspwb/visualization.hpp>

#include <algorithm>
#include <atomic>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <random>
#include <set>

#include <unistd.h>

namespace aspwb {

std::string_view to_string(ElementKind k) noexcept {
    switch (k) {
        case ElementKind::rect: return "rect";
        case ElementKind::ellipse: return "ellipse";
        case ElementKind::line: return "line";
        case ElementKind::polygon: return "polygon";
        case ElementKind::label: return "label";
        case ElementKind::image: return "image";
        case ElementKind::graph: return "graph";
        case ElementKind::graph_node: return "graph-node";
        case ElementKind::graph_edge: return "graph-edge";
        case ElementKind::grid: break;
    }
    return "grid";
}

std::optional<ElementKind> element_kind_from_string(std::string_view s) noexcept {
    for (auto k : {ElementKind::rect, ElementKind::ellipse, ElementKind::line, ElementKind::polygon, ElementKind::label,
                   ElementKind::image, ElementKind::graph, ElementKind::graph_node, ElementKind::graph_edge,
                   ElementKind::grid}) {
        if (to_string(k) == s) { return k; }
    }
    return std::nullopt;
}

std::string_view to_string(Edit::Kind k) noexcept {
    switch (k) {
        case Edit::Kind::move: return "move";
        case Edit::Kind::remove: return "delete";
        case Edit::Kind::create: return "create";
        case Edit::Kind::restyle: return "restyle";
        case Edit::Kind::relabel: break;
    }
    return "relabel";
}

std::optional<Edit::Kind> edit_kind_from_string(std::string_view s) noexcept {
    for (auto k : {Edit::Kind::move, Edit::Kind::remove, Edit::Kind::create, Edit::Kind::restyle, Edit::Kind::relabel}) {
        if (to_string(k) == s) { return k; }
    }
    return std::nullopt;
}

const SceneElement* Scene::find(std::string_view id) const {
    auto it = std::lower_bound(elements.begin(), elements.end(), id,
                               [](const SceneElement& e, std::string_view k) { return e.id < k; });
    return it != elements.end() && it->id == id ? &*it : nullptr;
}

// ---------------------------------------------------------------------------
// Vocabulary
// ---------------------------------------------------------------------------
const std::vector<VocabularyEntry>& vocabulary() {
    using A = ArgKind;
    static const std::vector<VocabularyEntry> v{
        {"visrect", {A::id, A::integer, A::integer}, true},
        {"visellipse", {A::id, A::integer, A::integer}, true},
        {"visline", {A::id, A::integer, A::integer, A::integer, A::integer}, true},
        {"vispolygon", {A::id, A::integer, A::integer, A::integer}, true},
        {"vislabel", {A::id, A::text}, false}, // a label element unless the id has another shape
        {"visimage", {A::id, A::text}, true},
        {"visposition", {A::id, A::integer, A::integer}, false},
        {"viscolor", {A::id, A::color}, false},
        {"viszorder", {A::id, A::integer}, false},
        {"visgrid", {A::id, A::integer, A::integer, A::integer, A::integer}, true},
        {"visfillgrid", {A::id, A::integer, A::integer, A::id}, false},
        {"visgraph", {A::id}, true},
        {"visnode", {A::id, A::id}, true},
        {"visedge", {A::id, A::id, A::id, A::id}, true},
    };
    return v;
}

bool is_vis_atom(const GroundLiteral& l) noexcept { return l.predicate.starts_with("vis"); }

VisAtomSet project_vis(const Interpretation& interpretation) {
    VisAtomSet out;
    for (const auto& l : interpretation) {
        if (is_vis_atom(l)) { out.add(l); }
    }
    return out;
}

namespace {

bool valid_color(const Term& t) {
    if (!t.is_constant()) { return false; }
    const auto& s = t.name;
    if (t.constant_kind == ConstantKind::symbol) {
        return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return c >= 'a' && c <= 'z'; });
    }
    if (t.constant_kind == ConstantKind::string) {
        return s.size() == 7 && s[0] == '#' &&
               std::all_of(s.begin() + 1, s.end(), [](char c) { return std::isxdigit(static_cast<unsigned char>(c)); });
    }
    return false;
}

bool fits(ArgKind k, const Term& t) {
    switch (k) {
        case ArgKind::id: return true;
        case ArgKind::integer: return t.is_integer();
        case ArgKind::text: return t.is_constant();
        case ArgKind::color: return valid_color(t);
    }
    return false;
}

const VocabularyEntry* entry(std::string_view name) {
    for (const auto& e : vocabulary()) {
        if (e.name == name) { return &e; }
    }
    return nullptr;
}

[[noreturn]] void vocabulary_error(const GroundLiteral& l, const std::string& why) {
    throw Error(ErrorCode::vocabulary, "atom " + to_string(l) + " " + why);
}

std::string text_of(const Term& t) { return t.is_integer() ? std::to_string(t.integer) : t.name; }

std::string fmt(double v) {
    if (std::abs(v) < 0.005) { return "0"; }
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    std::string s = buf;
    while (s.back() == '0') { s.pop_back(); }
    if (s.back() == '.') { s.pop_back(); }
    return s;
}

double round2(double v) { return std::round(v * 100.0) / 100.0; }

//! Force-directed placement inside [margin, size - margin]^2: fixed seed,
//! 200 iterations, linear cooling.
std::vector<Point> force_layout(std::size_t n, const std::vector<std::pair<std::size_t, std::size_t>>& edges,
                                double size) {
    const double       margin = 20;
    const double       inner  = std::max(size - 2 * margin, 1.0);
    std::mt19937       rng(1);
    auto               unit = [&rng] { return static_cast<double>(rng()) / 4294967296.0; };
    std::vector<Point> pos(n);
    for (auto& p : pos) {
        p.x = margin + unit() * inner;
        p.y = margin + unit() * inner;
    }
    if (n == 1) { pos[0] = {size / 2, size / 2}; }
    if (n <= 1) { return pos; }
    const double k  = std::sqrt(inner * inner / static_cast<double>(n));
    const double t0 = inner / 10;
    for (int it = 0; it < 200; ++it) {
        std::vector<Point> disp(n);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = i + 1; j < n; ++j) {
                double dx = pos[i].x - pos[j].x;
                double dy = pos[i].y - pos[j].y;
                double d  = std::sqrt(dx * dx + dy * dy);
                if (d < 1e-6) { // coincident: push apart along a fixed direction
                    dx = 0.01 * static_cast<double>(i + 1);
                    dy = 0.01 * static_cast<double>(j + 1);
                    d  = std::sqrt(dx * dx + dy * dy);
                }
                double f = k * k / d;
                disp[i].x += dx / d * f;
                disp[i].y += dy / d * f;
                disp[j].x -= dx / d * f;
                disp[j].y -= dy / d * f;
            }
        }
        for (auto [u, v] : edges) {
            if (u == v) { continue; }
            double dx = pos[u].x - pos[v].x;
            double dy = pos[u].y - pos[v].y;
            double d  = std::sqrt(dx * dx + dy * dy);
            if (d < 1e-6) { continue; }
            double f = d * d / k;
            disp[u].x -= dx / d * f;
            disp[u].y -= dy / d * f;
            disp[v].x += dx / d * f;
            disp[v].y += dy / d * f;
        }
        double t = t0 * (1.0 - static_cast<double>(it) / 200.0);
        for (std::size_t i = 0; i < n; ++i) {
            double len = std::sqrt(disp[i].x * disp[i].x + disp[i].y * disp[i].y);
            if (len > 0) {
                pos[i].x += disp[i].x / len * std::min(len, t);
                pos[i].y += disp[i].y / len * std::min(len, t);
            }
            pos[i].x = std::clamp(pos[i].x, margin, size - margin);
            pos[i].y = std::clamp(pos[i].y, margin, size - margin);
        }
    }
    for (auto& p : pos) { p = {round2(p.x), round2(p.y)}; }
    return pos;
}

double layout_size(std::size_t n) { return 80.0 * std::ceil(std::sqrt(static_cast<double>(std::max<std::size_t>(n, 1)))) + 80.0; }

void fit_points(SceneElement& e) {
    if (e.points.empty()) { return; }
    double x0 = e.points[0].x, y0 = e.points[0].y, x1 = x0, y1 = y0;
    for (const auto& p : e.points) {
        x0 = std::min(x0, p.x);
        y0 = std::min(y0, p.y);
        x1 = std::max(x1, p.x);
        y1 = std::max(y1, p.y);
    }
    e.x      = x0;
    e.y      = y0;
    e.width  = x1 - x0;
    e.height = y1 - y0;
}

void fit_canvas(Scene& s) {
    s.width  = 0;
    s.height = 0;
    for (const auto& e : s.elements) {
        s.width  = std::max(s.width, e.x + e.width);
        s.height = std::max(s.height, e.y + e.height);
    }
}

const std::vector<std::string>& palette() {
    static const std::vector<std::string> p{"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b",
                                            "#e377c2", "#7f7f7f", "#bcbd22", "#17becf", "#393b79", "#637939"};
    return p;
}

} // namespace

void check_vocabulary(const VisAtomSet& atoms) {
    for (const auto& l : atoms) {
        if (!is_vis_atom(l)) { vocabulary_error(l, "is not a visualization atom"); }
        if (l.strong_negation) { vocabulary_error(l, "is strongly negated"); }
        const auto* e = entry(l.predicate);
        if (e == nullptr) { vocabulary_error(l, "uses an unknown visualization predicate " + l.key().str()); }
        if (e->args.size() != l.args.size()) {
            vocabulary_error(l, "has arity " + std::to_string(l.args.size()) + ", expected " + std::string(e->name) +
                                    "/" + std::to_string(e->args.size()));
        }
        for (std::size_t i = 0; i < l.args.size(); ++i) {
            if (!fits(e->args[i], l.args[i])) {
                static const char* kinds[] = {"an identifier", "an integer", "a constant", "a colour name or \"#RRGGBB\""};
                vocabulary_error(l, "needs " + std::string(kinds[static_cast<int>(e->args[i])]) + " as argument " +
                                        std::to_string(i + 1));
            }
        }
        if (l.predicate == "visgrid") {
            for (std::size_t i = 1; i < 5; ++i) {
                if (l.args[i].integer < 1) { vocabulary_error(l, "needs positive rows, columns and cell sizes"); }
            }
        }
        if ((l.predicate == "visrect" || l.predicate == "visellipse") &&
            (l.args[1].integer < 0 || l.args[2].integer < 0)) {
            vocabulary_error(l, "has a negative size");
        }
    }
}

// ---------------------------------------------------------------------------
// Generic scene
// ---------------------------------------------------------------------------
Scene generic_scene(const Interpretation& interpretation) {
    Scene                    scene;
    std::set<Term, TermLess> individuals;
    std::set<PredicateKey>   predicates;
    for (const auto& l : interpretation) {
        individuals.insert(l.args.begin(), l.args.end());
        predicates.insert(l.key());
    }
    std::map<PredicateKey, std::string> colour;
    std::size_t                         next = 0;
    for (const auto& p : predicates) { colour[p] = palette()[next++ % palette().size()]; }

    std::vector<Term>                                 nodes(individuals.begin(), individuals.end());
    std::map<std::string, std::size_t>                node_index;
    std::vector<std::pair<std::size_t, std::size_t>> edges;
    for (std::size_t i = 0; i < nodes.size(); ++i) { node_index[to_string(nodes[i])] = i; }
    std::vector<const GroundLiteral*> lits;
    for (const auto& l : interpretation) { lits.push_back(&l); }
    for (std::size_t k = 0; k < lits.size(); ++k) {
        for (const auto& a : lits[k]->args) { edges.emplace_back(nodes.size() + k, node_index.at(to_string(a))); }
    }
    double size = layout_size(nodes.size() + lits.size());
    auto   pos  = force_layout(nodes.size() + lits.size(), edges, size);

    auto node_id = [](const Term& t) { return to_string(Term::make_function("node", {t})); };
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        SceneElement e;
        e.id     = node_id(nodes[i]);
        e.kind   = ElementKind::graph_node;
        e.width  = 28;
        e.height = 28;
        e.x      = pos[i].x - 14;
        e.y      = pos[i].y - 14;
        e.text   = to_string(nodes[i]);
        e.z      = 2;
        scene.elements.push_back(std::move(e));
    }
    for (std::size_t k = 0; k < lits.size(); ++k) {
        const auto& l   = *lits[k];
        auto        hub = to_string(Term::make_function("hub", {Term::make_integer(static_cast<std::int64_t>(k + 1))}));
        Point       c   = pos[nodes.size() + k];
        SceneElement h;
        h.id     = hub;
        h.kind   = ElementKind::graph_edge;
        h.width  = 14;
        h.height = 14;
        h.x      = c.x - 7;
        h.y      = c.y - 7;
        h.text   = (l.strong_negation ? "-" : "") + l.predicate;
        h.color  = colour[l.key()];
        h.z      = 1;
        for (std::size_t p = 0; p < l.args.size(); ++p) {
            h.endpoints.push_back(node_id(l.args[p]));
            SceneElement conn;
            conn.id   = to_string(Term::make_function("arg", {Term::make_integer(static_cast<std::int64_t>(k + 1)),
                                                               Term::make_integer(static_cast<std::int64_t>(p + 1))}));
            conn.kind   = ElementKind::line;
            conn.points = {c, pos[node_index.at(to_string(l.args[p]))]};
            conn.text   = std::to_string(p + 1);
            conn.color  = h.color;
            conn.parent = hub;
            fit_points(conn);
            scene.elements.push_back(std::move(conn));
        }
        scene.elements.push_back(std::move(h));
    }
    std::sort(scene.elements.begin(), scene.elements.end(),
              [](const SceneElement& a, const SceneElement& b) { return a.id < b.id; });
    scene.width  = lits.empty() ? 0 : size;
    scene.height = scene.width;
    return scene;
}

// ---------------------------------------------------------------------------
// Scenes from vis atoms
// ---------------------------------------------------------------------------
Scene build_scene(const VisAtomSet& atoms) {
    check_vocabulary(atoms);
    std::map<std::string, SceneElement>             els;
    std::map<std::string, std::string>              defined_by;
    std::map<std::string, std::map<std::int64_t, Point>> vertices;
    auto int_at = [](const GroundLiteral& a, std::size_t i) { return static_cast<double>(a.args[i].integer); };

    auto define = [&](const GroundLiteral& a, ElementKind k) -> SceneElement& {
        auto id          = to_string(a.args[0]);
        auto [it, fresh] = els.try_emplace(id);
        if (!fresh) {
            throw Error(ErrorCode::conflict, "element " + id + " is defined by both " + defined_by[id] + " and " +
                                                 to_string(a));
        }
        defined_by[id] = to_string(a);
        it->second.id   = id;
        it->second.kind = k;
        return it->second;
    };

    for (const auto& a : atoms) {
        const auto& p = a.predicate;
        if (p == "visrect" || p == "visellipse") {
            auto& e  = define(a, p == "visrect" ? ElementKind::rect : ElementKind::ellipse);
            e.width  = int_at(a, 1);
            e.height = int_at(a, 2);
        }
        else if (p == "visline") {
            auto& e  = define(a, ElementKind::line);
            e.points = {{int_at(a, 1), int_at(a, 2)}, {int_at(a, 3), int_at(a, 4)}};
        }
        else if (p == "vispolygon") {
            auto id = to_string(a.args[0]);
            if (!vertices.count(id)) { define(a, ElementKind::polygon); }
            if (!vertices[id].emplace(a.args[1].integer, Point{int_at(a, 2), int_at(a, 3)}).second) {
                throw Error(ErrorCode::conflict, "polygon " + id + " has two vertices with index " +
                                                     std::to_string(a.args[1].integer));
            }
        }
        else if (p == "visimage") {
            auto& e  = define(a, ElementKind::image);
            e.href   = text_of(a.args[1]);
            e.width  = 32;
            e.height = 32;
        }
        else if (p == "visgrid") {
            auto& e  = define(a, ElementKind::grid);
            e.rows   = static_cast<int>(a.args[1].integer);
            e.cols   = static_cast<int>(a.args[2].integer);
            e.width  = static_cast<double>(e.cols) * int_at(a, 3);
            e.height = static_cast<double>(e.rows) * int_at(a, 4);
        }
        else if (p == "visgraph") {
            define(a, ElementKind::graph);
        }
        else if (p == "visnode") {
            auto& e  = define(a, ElementKind::graph_node);
            e.parent = to_string(a.args[1]);
            e.width  = 24;
            e.height = 24;
        }
        else if (p == "visedge") {
            auto& e     = define(a, ElementKind::graph_edge);
            e.endpoints = {to_string(a.args[1]), to_string(a.args[2])};
            e.parent    = to_string(a.args[3]);
        }
    }
    for (const auto& a : atoms) {
        if (a.predicate != "vislabel") { continue; }
        auto id   = to_string(a.args[0]);
        auto text = text_of(a.args[1]);
        auto it   = els.find(id);
        if (it == els.end()) {
            auto& e  = define(a, ElementKind::label);
            e.text   = text;
            e.width  = 8.0 * static_cast<double>(text.size());
            e.height = 16;
        }
        else if (it->second.text) {
            throw Error(ErrorCode::conflict, "element " + id + " has two labels");
        }
        else {
            it->second.text = text;
        }
    }

    auto element = [&](const GroundLiteral& a, std::size_t i) -> SceneElement& {
        auto id = to_string(a.args[i]);
        auto it = els.find(id);
        if (it == els.end()) {
            throw Error(ErrorCode::dangling_reference, "atom " + to_string(a) + " refers to unknown element " + id);
        }
        return it->second;
    };
    std::map<std::string, Point> explicit_pos;
    std::set<std::string>        coloured;
    std::set<std::string>        ordered;
    for (const auto& a : atoms) {
        const auto& p = a.predicate;
        if (p == "visposition") {
            auto& e = element(a, 0);
            if (!explicit_pos.emplace(e.id, Point{int_at(a, 1), int_at(a, 2)}).second) {
                throw Error(ErrorCode::conflict, "element " + e.id + " has two positions");
            }
        }
        else if (p == "viscolor") {
            auto& e = element(a, 0);
            if (!coloured.insert(e.id).second) { throw Error(ErrorCode::conflict, "element " + e.id + " has two colours"); }
            e.color = text_of(a.args[1]);
        }
        else if (p == "viszorder") {
            auto& e = element(a, 0);
            if (!ordered.insert(e.id).second) { throw Error(ErrorCode::conflict, "element " + e.id + " has two z-orders"); }
            e.z = a.args[1].integer;
        }
        else if (p == "visfillgrid") {
            auto& g = element(a, 0);
            auto& e = element(a, 3);
            if (g.kind != ElementKind::grid) {
                throw Error(ErrorCode::dangling_reference, "atom " + to_string(a) + " refers to " + g.id + ", which is not a grid");
            }
            auto r = a.args[1].integer;
            auto c = a.args[2].integer;
            if (r < 1 || c < 1 || r > g.rows || c > g.cols) { vocabulary_error(a, "names a cell outside the grid"); }
            if (e.cell) { throw Error(ErrorCode::conflict, "element " + e.id + " is placed in two grid cells"); }
            e.parent = g.id;
            e.cell   = {static_cast<int>(r), static_cast<int>(c)};
        }
    }
    for (auto& [id, e] : els) {
        if (e.kind == ElementKind::polygon) {
            const auto& vs = vertices[id];
            if (vs.size() < 3) {
                throw Error(ErrorCode::vocabulary, "polygon " + id + " has " + std::to_string(vs.size()) +
                                                       " vertices, at least 3 are needed");
            }
            for (const auto& [idx, v] : vs) { e.points.push_back(v); }
        }
        auto need = [&](const std::string& ref, ElementKind k, const char* what) {
            auto it = els.find(ref);
            if (it == els.end() || it->second.kind != k) {
                throw Error(ErrorCode::dangling_reference, "element " + id + " refers to " + ref + ", which is not a " + what);
            }
        };
        if (e.kind == ElementKind::graph_node) { need(*e.parent, ElementKind::graph, "graph"); }
        if (e.kind == ElementKind::graph_edge) {
            need(*e.parent, ElementKind::graph, "graph");
            for (const auto& end : e.endpoints) { need(end, ElementKind::graph_node, "graph node"); }
        }
    }

    // graph layouts, relative to the graph's origin
    std::map<std::string, Point> laid_out;
    for (auto& [gid, g] : els) {
        if (g.kind != ElementKind::graph) { continue; }
        std::vector<std::string>           members;
        std::map<std::string, std::size_t> index;
        for (const auto& [id, e] : els) {
            if (e.kind == ElementKind::graph_node && e.parent == gid) {
                index[id] = members.size();
                members.push_back(id);
            }
        }
        std::vector<std::pair<std::size_t, std::size_t>> edges;
        for (const auto& [id, e] : els) {
            if (e.kind == ElementKind::graph_edge && e.parent == gid) {
                edges.emplace_back(index.at(e.endpoints[0]), index.at(e.endpoints[1]));
            }
        }
        double size = layout_size(members.size());
        auto   pos  = force_layout(members.size(), edges, size);
        for (std::size_t i = 0; i < members.size(); ++i) { laid_out[members[i]] = pos[i]; }
        g.width  = size;
        g.height = size;
    }

    std::set<std::string> resolving;
    std::set<std::string> resolved;
    std::function<void(SceneElement&)> place = [&](SceneElement& e) {
        if (resolved.count(e.id)) { return; }
        if (!resolving.insert(e.id).second) {
            throw Error(ErrorCode::conflict, "element " + e.id + " is placed inside itself");
        }
        if (auto it = explicit_pos.find(e.id); it != explicit_pos.end()) {
            e.x = it->second.x;
            e.y = it->second.y;
        }
        else if (e.cell) {
            auto& g = els.at(*e.parent);
            place(g);
            e.x = g.x + (e.cell->second - 1) * (g.width / g.cols);
            e.y = g.y + (e.cell->first - 1) * (g.height / g.rows);
        }
        else if (e.kind == ElementKind::graph_node) {
            auto& g = els.at(*e.parent);
            place(g);
            auto c = laid_out.at(e.id);
            e.x    = g.x + c.x - e.width / 2;
            e.y    = g.y + c.y - e.height / 2;
        }
        if (e.kind == ElementKind::line || e.kind == ElementKind::polygon) {
            for (auto& pt : e.points) {
                pt.x += e.x;
                pt.y += e.y;
            }
            fit_points(e);
        }
        resolving.erase(e.id);
        resolved.insert(e.id);
    };
    for (auto& [id, e] : els) { place(e); }
    for (auto& [id, e] : els) {
        if (e.kind != ElementKind::graph_edge) { continue; }
        e.points.clear();
        for (const auto& end : e.endpoints) {
            const auto& n = els.at(end);
            e.points.push_back({n.x + n.width / 2, n.y + n.height / 2});
        }
        fit_points(e);
    }

    Scene scene;
    for (auto& [id, e] : els) { scene.elements.push_back(std::move(e)); }
    fit_canvas(scene);
    return scene;
}

// ---------------------------------------------------------------------------
// SVG
// ---------------------------------------------------------------------------
namespace {

std::string xml_escape(std::string_view s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            case '\'': out += "&apos;"; break;
            default: out += c;
        }
    }
    return out;
}

std::string attr(const char* name, double v) { return std::string(" ") + name + "=\"" + fmt(v) + "\""; }
std::string attr(const char* name, std::string_view v) { return std::string(" ") + name + "=\"" + xml_escape(v) + "\""; }

std::string shape_of(const SceneElement& e) {
    auto colour = [&](const char* fallback) { return e.color.empty() ? std::string(fallback) : e.color; };
    auto ellipse = [&](const char* fill) {
        return "<ellipse" + attr("cx", e.x + e.width / 2) + attr("cy", e.y + e.height / 2) + attr("rx", e.width / 2) +
               attr("ry", e.height / 2) + attr("fill", colour(fill)) + attr("stroke", "#333333") + "/>";
    };
    auto box = [&](const std::string& fill, const char* stroke) {
        return attr("x", e.x) + attr("y", e.y) + attr("width", e.width) + attr("height", e.height) + attr("fill", fill) +
               attr("stroke", stroke);
    };
    auto line = [&] {
        return "<line" + attr("x1", e.points[0].x) + attr("y1", e.points[0].y) + attr("x2", e.points[1].x) +
               attr("y2", e.points[1].y) + attr("stroke", colour("#333333")) + attr("stroke-width", 2.0) + "/>";
    };
    switch (e.kind) {
        case ElementKind::rect: return "<rect" + box(colour("#d9d9d9"), "#333333") + "/>";
        case ElementKind::ellipse: return ellipse("#d9d9d9");
        case ElementKind::line: return line();
        case ElementKind::polygon: {
            std::string pts;
            for (const auto& p : e.points) { pts += (pts.empty() ? "" : " ") + fmt(p.x) + "," + fmt(p.y); }
            return "<polygon" + attr("points", pts) + attr("fill", colour("#d9d9d9")) + attr("stroke", "#333333") + "/>";
        }
        case ElementKind::label: return "";
        case ElementKind::image:
            return "<image" + attr("x", e.x) + attr("y", e.y) + attr("width", e.width) + attr("height", e.height) +
                   attr("xlink:href", e.href.value_or("")) + "/>";
        case ElementKind::grid: return "<rect" + box("none", "#999999") + "/>";
        case ElementKind::graph: return "<rect" + box("none", "#cccccc") + attr("stroke-dasharray", "4 2") + "/>";
        case ElementKind::graph_node: return ellipse("#ffffff");
        case ElementKind::graph_edge: return e.points.size() == 2 ? line() : ellipse("#333333");
    }
    return "";
}

std::string with_id(const std::string& shape, const SceneElement& e) {
    auto space = shape.find(' ');
    return shape.substr(0, space) + attr("id", e.id) + attr("class", to_string(e.kind)) + shape.substr(space);
}

std::string element_svg(const SceneElement& e) {
    if (e.kind == ElementKind::label) {
        return "<text" + attr("id", e.id) + attr("class", "label") + attr("x", e.x) + attr("y", e.y + 12) +
               attr("font-size", 14.0) + attr("fill", e.color.empty() ? "#000000" : e.color) + ">" +
               xml_escape(e.text.value_or("")) + "</text>";
    }
    auto shape = shape_of(e);
    if (!e.text) { return with_id(shape, e); }
    // text-bearing shapes: a group with the shape and its caption
    double tx = e.x + e.width / 2;
    double ty = e.y + e.height / 2 + 4;
    if (e.points.size() == 2) { // caption near the far end of a line
        tx = e.points[0].x + 0.7 * (e.points[1].x - e.points[0].x);
        ty = e.points[0].y + 0.7 * (e.points[1].y - e.points[0].y) - 4;
    }
    return "<g" + attr("id", e.id) + attr("class", to_string(e.kind)) + ">" + shape + "<text" + attr("x", tx) +
           attr("y", ty) + attr("text-anchor", "middle") + attr("font-size", 12.0) + ">" + xml_escape(*e.text) +
           "</text></g>";
}

} // namespace

std::string export_svg(const Scene& scene) {
    std::vector<const SceneElement*> order;
    for (const auto& e : scene.elements) { order.push_back(&e); }
    std::stable_sort(order.begin(), order.end(), [](const SceneElement* a, const SceneElement* b) {
        return a->z != b->z ? a->z < b->z : a->id < b->id;
    });
    std::string out = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    out += "<svg xmlns=\"http://www.w3.org/2000/svg\" xmlns:xlink=\"http://www.w3.org/1999/xlink\" version=\"1.1\"" +
           attr("width", scene.width) + attr("height", scene.height) +
           attr("viewBox", "0 0 " + fmt(scene.width) + " " + fmt(scene.height)) + ">\n";
    for (const auto* e : order) { out += "  " + element_svg(*e) + "\n"; }
    out += "</svg>\n";
    return out;
}

// ---------------------------------------------------------------------------
// Evaluating visualization programs
// ---------------------------------------------------------------------------
namespace {

Rule fact(const GroundLiteral& l, Dialect d) {
    Rule r;
    r.head.push_back(make_literal(d, l.predicate, l.args, {}, l.strong_negation));
    return r;
}

Program with_facts(Program p, const Interpretation& facts) {
    for (const auto& l : facts) { p.rules.push_back(fact(l, p.dialect)); }
    return p;
}

//! Writes the program to a temporary file for the duration of a launch.
class ProgramFile {
public:
    explicit ProgramFile(const Program& p) {
        static std::atomic<int> counter{0};
        path_ = std::filesystem::temp_directory_path() /
                ("aspwb-" + std::to_string(::getpid()) + "-" + std::to_string(counter++) +
                 (p.dialect == Dialect::dlv ? ".dl" : ".lp"));
        std::ofstream out(path_, std::ios::binary);
        for (const auto& r : p.rules) { out << rule_text(r, p.dialect) << "\n"; }
        if (!out) { throw Error(ErrorCode::io, "cannot write " + path_.string()); }
    }
    ProgramFile(const ProgramFile&)            = delete;
    ProgramFile& operator=(const ProgramFile&) = delete;
    ~ProgramFile() {
        std::error_code ec;
        std::filesystem::remove(path_, ec);
    }
    [[nodiscard]] std::string path() const { return path_.string(); }

private:
    std::filesystem::path path_;
};

std::vector<Interpretation> run_external(const Program& p, const VisSolver& solver) {
    if (solver.registry == nullptr) { throw Error(ErrorCode::launch, "no tool registry for launch '" + solver.launch + "'"); }
    auto launch = solver.registry->launch(solver.launch);
    if (!launch) { throw Error(ErrorCode::launch, "unknown launch configuration '" + solver.launch + "'"); }
    ProgramFile file(p);
    launch->input_files = {file.path()};
    launch->output_mode = OutputMode::parse_interpretations;
    return run(*solver.registry, *launch, solver.run).interpretations;
}

} // namespace

VisAtomSet eval_vis_program(const Program& vis_program, const Interpretation& interpretation, const VisSolver& solver) {
    auto p = with_facts(vis_program, interpretation);
    auto sets = solver.launch.empty() ? solve(p, 1, solver.engine) : run_external(p, solver);
    if (sets.empty()) {
        throw Error(ErrorCode::visualization_unsat, "the visualization program has no answer set for this interpretation");
    }
    auto vis = project_vis(sets.front());
    check_vocabulary(vis);
    return vis;
}

VisAtomSet eval_vis_program(std::string_view vis_source, Dialect dialect, const Interpretation& interpretation,
                            const VisSolver& solver) {
    auto parsed = parse(vis_source, dialect);
    for (const auto& d : parsed.diagnostics) {
        if (d.severity == Severity::error) {
            throw Error(ErrorCode::syntax, d.message + " at " + std::to_string(d.span.start_line) + ":" +
                                               std::to_string(d.span.start_col));
        }
    }
    return eval_vis_program(parsed.program, interpretation, solver);
}

// ---------------------------------------------------------------------------
// Edits
// ---------------------------------------------------------------------------
namespace {

Term color_term(const std::string& c) {
    Term t = c.starts_with('#') ? Term::make_string(c) : Term::make_symbol(c);
    if (!valid_color(t)) { throw Error(ErrorCode::validation, "invalid colour '" + c + "'"); }
    return t;
}

Term id_term(const std::string& id) {
    try {
        auto t = parse_term(id);
        if (!t.is_value()) { throw Error(ErrorCode::validation, "element id '" + id + "' is not ground"); }
        return t;
    }
    catch (const Error& e) {
        if (e.code() == ErrorCode::validation) { throw; }
        throw Error(ErrorCode::validation, "invalid element id '" + id + "': " + e.what());
    }
}

GroundLiteral vis(const char* name, std::vector<Term> args) { return GroundLiteral::make(name, std::move(args)); }
Term          num(std::int64_t v) { return Term::make_integer(v); }

void erase_if(VisAtomSet& atoms, const std::function<bool(const GroundLiteral&)>& pred) {
    std::vector<GroundLiteral> doomed;
    for (const auto& a : atoms) {
        if (pred(a)) { doomed.push_back(a); }
    }
    for (const auto& a : doomed) { atoms.erase(a); }
}

bool arg_is(const GroundLiteral& a, std::size_t i, const std::string& id) {
    return i < a.args.size() && to_string(a.args[i]) == id;
}

void remove_element(VisAtomSet& atoms, const std::string& id) {
    static const std::set<std::string> own{"visrect",    "visellipse", "visline",  "vispolygon", "vislabel",
                                           "visimage",   "visposition", "viscolor", "viszorder",  "visgrid",
                                           "visgraph",   "visnode",    "visedge"};
    std::vector<std::string> dependents;
    for (const auto& a : atoms) {
        if (a.predicate == "visedge" && (arg_is(a, 1, id) || arg_is(a, 2, id) || arg_is(a, 3, id))) {
            dependents.push_back(to_string(a.args[0]));
        }
        if (a.predicate == "visnode" && arg_is(a, 1, id)) { dependents.push_back(to_string(a.args[0])); }
    }
    erase_if(atoms, [&](const GroundLiteral& a) {
        if (own.count(a.predicate) && arg_is(a, 0, id)) { return true; }
        return a.predicate == "visfillgrid" && (arg_is(a, 0, id) || arg_is(a, 3, id));
    });
    for (const auto& d : dependents) {
        if (d != id) { remove_element(atoms, d); }
    }
}

void set_cell(VisAtomSet& atoms, const Scene& scene, const std::string& id, const std::string& grid, std::int64_t row,
              std::int64_t col) {
    const auto* g = scene.find(grid);
    if (g == nullptr || g->kind != ElementKind::grid) {
        throw Error(ErrorCode::dangling_reference, "no grid " + grid);
    }
    if (row < 1 || col < 1 || row > g->rows || col > g->cols) {
        throw Error(ErrorCode::validation, "cell (" + std::to_string(row) + "," + std::to_string(col) +
                                               ") lies outside grid " + grid);
    }
    erase_if(atoms, [&](const GroundLiteral& a) { return a.predicate == "visfillgrid" && arg_is(a, 3, id); });
    atoms.add(vis("visfillgrid", {id_term(grid), num(row), num(col), id_term(id)}));
}

void replace_attribute(VisAtomSet& atoms, const char* name, const std::string& id, std::vector<Term> values) {
    erase_if(atoms, [&](const GroundLiteral& a) { return a.predicate == name && arg_is(a, 0, id); });
    values.insert(values.begin(), id_term(id));
    atoms.add(vis(name, std::move(values)));
}

void create_element(VisAtomSet& atoms, const Edit& e, const std::string& id) {
    if (!e.element) { throw Error(ErrorCode::validation, "create needs an element kind"); }
    auto need = [&](std::size_t n, const char* what) {
        if (e.numbers.size() != n) {
            throw Error(ErrorCode::validation, std::string("create ") + std::string(to_string(*e.element)) + " needs " + what);
        }
    };
    Term t = id_term(id);
    switch (*e.element) {
        case ElementKind::rect:
        case ElementKind::ellipse:
            need(2, "width and height");
            atoms.add(vis(*e.element == ElementKind::rect ? "visrect" : "visellipse", {t, num(e.numbers[0]), num(e.numbers[1])}));
            break;
        case ElementKind::line:
            need(4, "two end points");
            atoms.add(vis("visline", {t, num(e.numbers[0]), num(e.numbers[1]), num(e.numbers[2]), num(e.numbers[3])}));
            break;
        case ElementKind::polygon:
            if (e.numbers.size() < 6 || e.numbers.size() % 2 != 0) {
                throw Error(ErrorCode::validation, "create polygon needs at least three x y pairs");
            }
            for (std::size_t i = 0; i < e.numbers.size(); i += 2) {
                atoms.add(vis("vispolygon", {t, num(static_cast<std::int64_t>(i / 2 + 1)), num(e.numbers[i]), num(e.numbers[i + 1])}));
            }
            break;
        case ElementKind::label:
            if (!e.text) { throw Error(ErrorCode::validation, "create label needs a text"); }
            atoms.add(vis("vislabel", {t, Term::make_string(*e.text)}));
            break;
        case ElementKind::image:
            if (!e.text) { throw Error(ErrorCode::validation, "create image needs a path as text"); }
            atoms.add(vis("visimage", {t, Term::make_string(*e.text)}));
            break;
        case ElementKind::grid:
            need(4, "rows, columns, cell width and cell height");
            atoms.add(vis("visgrid", {t, num(e.numbers[0]), num(e.numbers[1]), num(e.numbers[2]), num(e.numbers[3])}));
            break;
        case ElementKind::graph: atoms.add(vis("visgraph", {t})); break;
        case ElementKind::graph_node:
            if (e.refs.size() != 1) { throw Error(ErrorCode::validation, "create graph-node needs its graph"); }
            atoms.add(vis("visnode", {t, id_term(e.refs[0])}));
            break;
        case ElementKind::graph_edge:
            if (e.refs.size() != 3) { throw Error(ErrorCode::validation, "create graph-edge needs from, to and graph"); }
            atoms.add(vis("visedge", {t, id_term(e.refs[0]), id_term(e.refs[1]), id_term(e.refs[2])}));
            break;
    }
    if (e.x && e.y) { atoms.add(vis("visposition", {t, num(*e.x), num(*e.y)})); }
    if (e.row && e.col) {
        if (!e.grid) { throw Error(ErrorCode::validation, "a cell needs its grid"); }
        atoms.add(vis("visfillgrid", {id_term(*e.grid), num(*e.row), num(*e.col), t}));
    }
    if (e.color) { atoms.add(vis("viscolor", {t, color_term(*e.color)})); }
    if (e.z) { atoms.add(vis("viszorder", {t, num(*e.z)})); }
    if (e.text && *e.element != ElementKind::label && *e.element != ElementKind::image) {
        atoms.add(vis("vislabel", {t, Term::make_string(*e.text)}));
    }
}

} // namespace

VisAtomSet apply_edit(const VisAtomSet& atoms, const Edit& edit) {
    auto        scene = build_scene(atoms);
    auto        id    = to_string(id_term(edit.id));
    const auto* el    = scene.find(id);
    VisAtomSet  out   = atoms;
    if (edit.kind != Edit::Kind::create && el == nullptr) {
        throw Error(ErrorCode::dangling_reference, "no element " + id);
    }
    switch (edit.kind) {
        case Edit::Kind::move: {
            bool positioned = std::any_of(atoms.begin(), atoms.end(), [&](const GroundLiteral& a) {
                return a.predicate == "visposition" && arg_is(a, 0, id);
            });
            if (edit.row || edit.col) {
                if (!edit.row || !edit.col) { throw Error(ErrorCode::validation, "a cell move needs row and column"); }
                auto grid = edit.grid ? *edit.grid : el->parent.value_or("");
                if (grid.empty()) { throw Error(ErrorCode::validation, "element " + id + " is not in a grid"); }
                set_cell(out, scene, id, to_string(id_term(grid)), *edit.row, *edit.col);
            }
            else if (edit.x && edit.y) {
                if (el->cell && !positioned) { // snap to the cell under the new position
                    const auto* g   = scene.find(*el->parent);
                    double      cw  = g->width / g->cols;
                    double      ch  = g->height / g->rows;
                    auto        col = static_cast<std::int64_t>(std::floor((static_cast<double>(*edit.x) - g->x) / cw)) + 1;
                    auto        row = static_cast<std::int64_t>(std::floor((static_cast<double>(*edit.y) - g->y) / ch)) + 1;
                    set_cell(out, scene, id, g->id, row, col);
                }
                else {
                    replace_attribute(out, "visposition", id, {num(*edit.x), num(*edit.y)});
                }
            }
            else {
                throw Error(ErrorCode::validation, "move needs a position or a cell");
            }
            break;
        }
        case Edit::Kind::remove: remove_element(out, id); break;
        case Edit::Kind::create:
            if (el != nullptr) { throw Error(ErrorCode::conflict, "element " + id + " already exists"); }
            create_element(out, edit, id);
            break;
        case Edit::Kind::restyle:
            if (!edit.color && !edit.z) { throw Error(ErrorCode::validation, "restyle needs a colour or a z-order"); }
            if (edit.color) { replace_attribute(out, "viscolor", id, {color_term(*edit.color)}); }
            if (edit.z) { replace_attribute(out, "viszorder", id, {num(*edit.z)}); }
            break;
        case Edit::Kind::relabel:
            if (!edit.text) { throw Error(ErrorCode::validation, "relabel needs a text"); }
            replace_attribute(out, "vislabel", id, {Term::make_string(*edit.text)});
            break;
    }
    (void)build_scene(out); // the result must still be a valid scene
    return out;
}

// ---------------------------------------------------------------------------
// Abduction
// ---------------------------------------------------------------------------
Interpretation default_domains(const Interpretation& interpretation, const std::vector<PredicateKey>& abducibles) {
    std::set<Term, TermLess> individuals;
    for (const auto& l : interpretation) { individuals.insert(l.args.begin(), l.args.end()); }
    std::vector<Term> pool(individuals.begin(), individuals.end());
    Interpretation    out;
    for (const auto& key : abducibles) {
        double count = std::pow(static_cast<double>(pool.size()), static_cast<double>(key.arity));
        if (count > 100000) {
            throw Error(ErrorCode::capacity, "domain of " + key.str() + " would have " + fmt(count) + " instances");
        }
        if (pool.empty() && key.arity > 0) { continue; }
        std::vector<std::size_t> idx(key.arity, 0);
        for (;;) {
            std::vector<Term> args;
            for (auto i : idx) { args.push_back(pool[i]); }
            out.add(GroundLiteral::make(key.name, std::move(args)));
            std::size_t k = 0;
            while (k < idx.size() && ++idx[k] == pool.size()) { idx[k++] = 0; }
            if (k == idx.size()) { break; }
        }
    }
    return out;
}

Interpretation abduce(const AbductionProblem& problem, const VisSolver& solver) {
    std::set<PredicateKey> abducible(problem.abducibles.begin(), problem.abducibles.end());
    for (const auto& k : abducible) {
        if (k.name.starts_with("vis")) {
            throw Error(ErrorCode::validation, "abducible " + k.str() + " belongs to the visualization vocabulary");
        }
    }
    check_vocabulary(problem.target_vis);
    Dialect d      = problem.vis_program.dialect;
    Program lambda = problem.vis_program;
    auto    dom    = [](const std::string& p) { return "aspwb_dom_" + p; };
    auto    out    = [](const std::string& p) { return "aspwb_out_" + p; };
    for (const auto& l : problem.domains) {
        if (abducible.count(l.key()) && !l.strong_negation) {
            lambda.rules.push_back(fact(GroundLiteral::make(dom(l.predicate), l.args), d));
        }
        else {
            lambda.rules.push_back(fact(l, d));
        }
    }
    // p(X) | p'(X) :- dom_p(X).
    for (const auto& k : abducible) {
        std::vector<Term> vars;
        for (std::size_t i = 0; i < k.arity; ++i) { vars.push_back(Term::make_variable("X" + std::to_string(i + 1))); }
        Rule guess;
        guess.head.push_back(make_literal(d, k.name, vars));
        guess.head.push_back(make_literal(d, out(k.name), vars));
        guess.body.emplace_back(make_literal(d, dom(k.name), vars));
        lambda.rules.push_back(std::move(guess));
    }
    // :- not v.
    for (const auto& v : problem.target_vis) {
        Rule c;
        c.body.emplace_back(make_literal(d, v.predicate, v.args, {}, false, true));
        lambda.rules.push_back(std::move(c));
    }

    auto matches = [&](const Interpretation& I) { return project_vis(I) == problem.target_vis; };
    std::vector<Interpretation> found;
    if (solver.launch.empty()) {
        auto gp = ground(lambda, solver.engine);
        for (const auto& v : problem.target_vis) {
            if (!gp.base.count(v)) {
                throw Error(ErrorCode::abduction_unsat, "no interpretation in the domains derives " + to_string(v));
            }
        }
        // exact match: vis atoms outside the target are forbidden outright
        std::vector<GroundLiteral> extra;
        for (const auto& a : gp.base) {
            if (is_vis_atom(a) && !problem.target_vis.contains(a)) { extra.push_back(a); }
        }
        for (const auto& a : extra) { gp.rules.push_back({{}, {a}, {}}); }
        found = answer_sets(gp, 1, solver.engine);
        if (!found.empty() && !matches(found.front())) { found = answer_sets(gp, std::nullopt, solver.engine); }
    }
    else {
        found = run_external(lambda, solver);
    }
    for (const auto& I : found) {
        if (!matches(I)) { continue; }
        Interpretation result;
        for (const auto& l : I) {
            if (abducible.count(l.key()) && !l.strong_negation) { result.add(l); }
        }
        return result;
    }
    throw Error(ErrorCode::abduction_unsat, "no interpretation in the domains yields the edited visualization");
}

} // namespace aspwb
