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

#include <catch2/catch_amalgamated.hpp>

#include "gen.hpp"

#include <map>

using namespace aspwb;

namespace {

Interpretation interp(std::string_view text) { return parse_interpretation(text, Dialect::gringo); }

std::size_t count_kind(const Scene& s, ElementKind k) {
    return static_cast<std::size_t>(
        std::count_if(s.elements.begin(), s.elements.end(), [k](const SceneElement& e) { return e.kind == k; }));
}

std::size_t count_of(std::string_view haystack, std::string_view needle) {
    std::size_t n = 0;
    for (auto pos = haystack.find(needle); pos != std::string_view::npos; pos = haystack.find(needle, pos + 1)) { ++n; }
    return n;
}

const char* queens_vis = R"(
row(X) :- q(X,Y).
smaller(X) :- row(X), row(Y), X < Y.
size(N) :- row(N), not smaller(N).
visgrid(board,N,N,40,40) :- size(N).
visrect(cell(X,Y),40,40) :- row(X), row(Y).
visfillgrid(board,X,Y,cell(X,Y)) :- row(X), row(Y).
light(X,Y) :- row(X), row(Y), (X+Y)/2*2 = X+Y.
viscolor(cell(X,Y),wheat) :- light(X,Y).
viscolor(cell(X,Y),peru) :- row(X), row(Y), not light(X,Y).
visellipse(queen(X),40,40) :- q(X,Y).
visfillgrid(board,X,Y,queen(X)) :- q(X,Y).
viscolor(queen(X),black) :- q(X,Y).
viszorder(queen(X),1) :- q(X,Y).
)";

Interpretation queens(const std::vector<int>& cols) {
    Interpretation I;
    for (std::size_t r = 0; r < cols.size(); ++r) {
        I.add(GroundLiteral::make("q", {Term::make_integer(static_cast<std::int64_t>(r + 1)), Term::make_integer(cols[r])}));
    }
    return I;
}

//! The queens visualization computed directly from the q/2 pairs, without
//! the engine. Mirrors the rules of queens_vis one by one.
std::set<GroundLiteral> queens_vis_oracle(const std::set<std::pair<int, int>>& q) {
    using T = Term;
    std::set<int> rows;
    for (auto [x, y] : q) { rows.insert(x); }
    std::set<GroundLiteral> out;
    auto atom = [&](const char* p, std::vector<Term> args) { out.insert(GroundLiteral::make(p, std::move(args))); };
    auto cell = [](int x, int y) { return T::make_function("cell", {T::make_integer(x), T::make_integer(y)}); };
    auto queen = [](int x) { return T::make_function("queen", {T::make_integer(x)}); };
    if (!rows.empty()) {
        int n = *rows.rbegin();
        atom("visgrid", {T::make_symbol("board"), T::make_integer(n), T::make_integer(n), T::make_integer(40), T::make_integer(40)});
    }
    for (int x : rows) {
        for (int y : rows) {
            atom("visrect", {cell(x, y), T::make_integer(40), T::make_integer(40)});
            atom("visfillgrid", {T::make_symbol("board"), T::make_integer(x), T::make_integer(y), cell(x, y)});
            atom("viscolor", {cell(x, y), T::make_symbol((x + y) % 2 == 0 ? "wheat" : "peru")});
        }
    }
    for (auto [x, y] : q) {
        atom("visellipse", {queen(x), T::make_integer(40), T::make_integer(40)});
        atom("visfillgrid", {T::make_symbol("board"), T::make_integer(x), T::make_integer(y), queen(x)});
        atom("viscolor", {queen(x), T::make_symbol("black")});
        atom("viszorder", {queen(x), T::make_integer(1)});
    }
    return out;
}

Program vis_program(std::string_view src) {
    auto r = parse(src, Dialect::gringo);
    REQUIRE(r.ok());
    return r.program;
}

} // namespace

TEST_CASE("generic scene", "[visualization]") {
    auto s = generic_scene(interp("e(1,2)"));
    REQUIRE(count_kind(s, ElementKind::graph_node) == 2);
    REQUIRE(count_kind(s, ElementKind::graph_edge) == 1);
    REQUIRE(s.find("node(1)")->text == "1");
    REQUIRE(s.find("node(2)")->text == "2");
    const auto* hub = s.find("hub(1)");
    REQUIRE(hub->text == "e");
    REQUIRE(hub->endpoints == std::vector<std::string>{"node(1)", "node(2)"});
    REQUIRE(s.find("arg(1,1)")->text == "1");
    REQUIRE(s.find("arg(1,2)")->text == "2");

    auto two = generic_scene(interp("e(1,2) f(1,2)"));
    REQUIRE(two.find("hub(1)")->text == "e");
    REQUIRE(two.find("hub(2)")->text == "f");
    REQUIRE(two.find("hub(1)")->color != two.find("hub(2)")->color);
    // same predicate, same colour
    auto same = generic_scene(interp("e(1,2) e(2,3)"));
    REQUIRE(same.find("hub(1)")->color == same.find("hub(2)")->color);

    auto empty = generic_scene(Interpretation{});
    REQUIRE(empty.elements.empty());

    auto prop = generic_scene(interp("rain -wet"));
    REQUIRE(count_kind(prop, ElementKind::graph_node) == 0);
    REQUIRE(prop.find("hub(1)")->text == "rain");
    REQUIRE(prop.find("hub(2)")->text == "-wet");
    REQUIRE(prop.find("hub(1)")->endpoints.empty());
}

TEST_CASE("generic scene cardinality and bounds", "[visualization][property]") {
    gen::Rng rng(31);
    for (int i = 0; i < 150; ++i) {
        auto I = gen::random_interpretation(rng);
        auto s = generic_scene(I);
        std::set<std::string> individuals;
        std::size_t           arity = 0;
        for (const auto& l : I) {
            for (const auto& a : l.args) { individuals.insert(to_string(a)); }
            arity += l.args.size();
        }
        REQUIRE(count_kind(s, ElementKind::graph_node) == individuals.size());
        REQUIRE(count_kind(s, ElementKind::graph_edge) == I.size());
        REQUIRE(count_kind(s, ElementKind::line) == arity);
        REQUIRE(s.elements.size() == individuals.size() + I.size() + arity);
        for (const auto& e : s.elements) {
            REQUIRE(std::isfinite(e.x));
            REQUIRE(std::isfinite(e.y));
            REQUIRE(e.x >= 0);
            REQUIRE(e.y >= 0);
            REQUIRE(e.x + e.width <= s.width + 1e-9);
            REQUIRE(e.y + e.height <= s.height + 1e-9);
        }
    }
}

TEST_CASE("deterministic output", "[visualization][property]") {
    gen::Rng rng(47);
    for (int i = 0; i < 40; ++i) {
        auto I = gen::random_interpretation(rng);
        auto a = export_svg(generic_scene(I));
        auto b = export_svg(generic_scene(I));
        REQUIRE(a == b);
    }
    auto I  = queens({2, 4, 1, 3});
    auto s1 = export_svg(build_scene(eval_vis_program(queens_vis, Dialect::gringo, I)));
    auto s2 = export_svg(build_scene(eval_vis_program(queens_vis, Dialect::gringo, I)));
    REQUIRE(s1 == s2);
    auto graph = interp("visgraph(g) visnode(a,g) visnode(b,g) visnode(c,g) visedge(e1,a,b,g) visedge(e2,b,c,g)");
    REQUIRE(export_svg(build_scene(graph)) == export_svg(build_scene(graph)));
}

TEST_CASE("visualization programs", "[visualization]") {
    auto facts = eval_vis_program("visrect(box,10,10). visposition(box,0,0).", Dialect::gringo, interp("a b(1)"));
    REQUIRE(facts == interp("visrect(box,10,10) visposition(box,0,0)"));

    auto one = eval_vis_program("visrect(c(X,Y),1,1) :- q(X,Y).", Dialect::gringo, interp("q(2,4)"));
    REQUIRE(one == interp("visrect(c(2,4),1,1)"));

    REQUIRE_THROWS_MATCHES(eval_vis_program(":- .", Dialect::gringo, {}), Error,
                           Catch::Matchers::Predicate<Error>([](const Error& e) { return e.code() == ErrorCode::syntax; }));
    REQUIRE_THROWS_MATCHES(eval_vis_program("visrect(b,1). ", Dialect::gringo, {}), Error,
                           Catch::Matchers::Predicate<Error>([](const Error& e) {
                               return e.code() == ErrorCode::vocabulary &&
                                      std::string(e.what()).find("visrect(b,1)") != std::string::npos;
                           }));
    REQUIRE_THROWS_MATCHES(eval_vis_program("visrect(b,1,1) :- q(X). :- q(1).", Dialect::gringo, interp("q(1)")), Error,
                           Catch::Matchers::Predicate<Error>(
                               [](const Error& e) { return e.code() == ErrorCode::visualization_unsat; }));
    // non-vis atoms of the answer set are dropped
    auto mixed = eval_vis_program("helper(X) :- p(X). visrect(X,2,2) :- helper(X).", Dialect::gringo, interp("p(a)"));
    REQUIRE(mixed == interp("visrect(a,2,2)"));
    // DLV dialect programs work the same way
    auto dlv = eval_vis_program("visrect(X,3,3) :- p(X).", Dialect::dlv, interp("p(a)"));
    REQUIRE(dlv == interp("visrect(a,3,3)"));
}

TEST_CASE("vocabulary checks", "[visualization]") {
    auto code_of = [](const char* text) {
        try {
            check_vocabulary(interp(text));
        }
        catch (const Error& e) {
            return std::string(to_string(e.code()));
        }
        return std::string("ok");
    };
    REQUIRE(code_of("visrect(a,1,2) viscolor(a,red) viscolor(b,\"#00FF7f\")") == "ok");
    REQUIRE(code_of("visrect(a,1)") == "vocabulary");
    REQUIRE(code_of("visrect(a,x,2)") == "vocabulary");
    REQUIRE(code_of("viscolor(a,\"red\")") == "vocabulary");
    REQUIRE(code_of("viscolor(a,\"#12345\")") == "vocabulary");
    REQUIRE(code_of("visblob(a)") == "vocabulary");
    REQUIRE(code_of("visgrid(g,0,2,10,10)") == "vocabulary");
    REQUIRE(code_of("-visrect(a,1,1)") == "vocabulary");
    REQUIRE(vocabulary().size() == 14);
}

TEST_CASE("scenes from vis atoms", "[visualization]") {
    auto s = build_scene(interp("visrect(b,10,10) visposition(b,5,5)"));
    REQUIRE(s.elements.size() == 1);
    const auto& b = s.elements[0];
    REQUIRE(b.id == "b");
    REQUIRE(b.kind == ElementKind::rect);
    REQUIRE(b.x == 5);
    REQUIRE(b.y == 5);
    REQUIRE(b.width == 10);
    REQUIRE(b.height == 10);

    auto g = build_scene(interp("visgrid(g,2,2,20,20) visrect(r,18,18) visfillgrid(g,1,2,r)"));
    const auto* r = g.find("r");
    REQUIRE(r->x == 20);
    REQUIRE(r->y == 0);
    REQUIRE(r->parent == "g");
    REQUIRE(r->cell == std::pair{1, 2});
    auto shifted = build_scene(interp("visgrid(g,3,3,20,10) visposition(g,100,50) visrect(r,1,1) visfillgrid(g,3,2,r)"));
    REQUIRE(shifted.find("r")->x == 120);
    REQUIRE(shifted.find("r")->y == 70);

    auto line = build_scene(interp("visline(l,0,0,30,40) visposition(l,10,10)"));
    REQUIRE(line.find("l")->points == std::vector<Point>{{10, 10}, {40, 50}});
    auto poly = build_scene(interp("vispolygon(p,2,10,0) vispolygon(p,1,0,0) vispolygon(p,3,5,8)"));
    REQUIRE(poly.find("p")->points == std::vector<Point>{{0, 0}, {10, 0}, {5, 8}});

    auto label = build_scene(interp("vislabel(t,\"hi\") visrect(r,1,1) vislabel(r,caption)"));
    REQUIRE(label.find("t")->kind == ElementKind::label);
    REQUIRE(label.find("t")->text == "hi");
    REQUIRE(label.find("r")->text == "caption");

    auto graph = build_scene(interp("visgraph(g) visnode(a,g) visnode(b,g) visedge(e,a,b,g) visposition(a,3,4)"));
    REQUIRE(graph.find("a")->x == 3);
    const auto* e  = graph.find("e");
    const auto* nb = graph.find("b");
    REQUIRE(e->points.size() == 2);
    REQUIRE(e->points[0] == Point{15, 16});
    REQUIRE(e->points[1] == Point{nb->x + 12, nb->y + 12});

    auto code_of = [](const char* text) {
        try {
            (void)build_scene(interp(text));
        }
        catch (const Error& e) {
            return std::string(to_string(e.code()));
        }
        return std::string("ok");
    };
    REQUIRE(code_of("viscolor(ghost,red)") == "dangling-reference");
    REQUIRE(code_of("visrect(a,1,1) visellipse(a,1,1)") == "conflict");
    REQUIRE(code_of("visrect(a,1,1) viscolor(a,red) viscolor(a,blue)") == "conflict");
    REQUIRE(code_of("visrect(a,1,1) visfillgrid(a,1,1,a)") == "dangling-reference");
    REQUIRE(code_of("visgrid(g,2,2,5,5) visrect(a,1,1) visfillgrid(g,3,1,a)") == "vocabulary");
    REQUIRE(code_of("vispolygon(p,1,0,0) vispolygon(p,2,1,1)") == "vocabulary");
    REQUIRE(code_of("visgraph(g) visnode(a,g) visedge(e,a,zz,g)") == "dangling-reference");
    REQUIRE(code_of("visnode(a,nograph)") == "dangling-reference");
    REQUIRE(build_scene({}).elements.empty());
}

TEST_CASE("svg export", "[visualization]") {
    auto empty = export_svg(Scene{});
    REQUIRE(empty.find("<svg") != std::string::npos);
    REQUIRE(count_of(empty, "<") == 3); // declaration, <svg>, </svg>

    auto rect = export_svg(build_scene(interp("visrect(b,10,10) visposition(b,5,5)")));
    REQUIRE(rect.find("<rect id=\"b\" class=\"rect\" x=\"5\" y=\"5\" width=\"10\" height=\"10\"") != std::string::npos);

    auto z = export_svg(build_scene(interp("visrect(a,10,10) viszorder(a,2) visrect(b,10,10) viszorder(b,1)")));
    REQUIRE(z.find("id=\"b\"") < z.find("id=\"a\""));

    auto esc = export_svg(build_scene(interp("vislabel(t,\"a<b & c\")")));
    REQUIRE(esc.find("a&lt;b &amp; c") != std::string::npos);

    // one top-level element per scene element
    auto I   = queens({2, 4, 1, 3});
    auto sc  = build_scene(eval_vis_program(queens_vis, Dialect::gringo, I));
    auto svg = export_svg(sc);
    REQUIRE(count_of(svg, "\n  <") == sc.elements.size());
}

TEST_CASE("queens scenes", "[visualization]") {
    for (const auto& cols : {std::vector<int>{2, 4, 1, 3}, std::vector<int>{1, 5, 8, 6, 3, 7, 2, 4}}) {
        auto I     = queens(cols);
        auto atoms = eval_vis_program(queens_vis, Dialect::gringo, I);
        std::set<std::pair<int, int>> q;
        for (std::size_t r = 0; r < cols.size(); ++r) { q.insert({static_cast<int>(r + 1), cols[r]}); }
        REQUIRE(atoms.literals() == queens_vis_oracle(q));
        auto s = build_scene(atoms);
        auto n = cols.size();
        REQUIRE(count_kind(s, ElementKind::rect) == n * n);
        REQUIRE(count_kind(s, ElementKind::ellipse) == n);
        REQUIRE(count_kind(s, ElementKind::grid) == 1);
        for (std::size_t r = 0; r < n; ++r) {
            const auto* queen = s.find("queen(" + std::to_string(r + 1) + ")");
            REQUIRE(queen->x == 40.0 * (cols[r] - 1));
            REQUIRE(queen->y == 40.0 * static_cast<double>(r));
        }
        REQUIRE(s.width == 40.0 * static_cast<double>(n));
    }
}

TEST_CASE("edits", "[visualization]") {
    auto base = interp("visrect(b,10,10) visposition(b,5,5)");
    Edit move{.kind = Edit::Kind::move, .id = "b", .x = 7, .y = 9};
    REQUIRE(apply_edit(base, move) == interp("visrect(b,10,10) visposition(b,7,9)"));

    Edit del{.kind = Edit::Kind::remove, .id = "b"};
    REQUIRE(apply_edit(base, del).empty());

    Edit relabel{.kind = Edit::Kind::relabel, .id = "b", .text = "box"};
    REQUIRE(apply_edit(base, relabel) == interp("visrect(b,10,10) visposition(b,5,5) vislabel(b,\"box\")"));

    Edit restyle{.kind = Edit::Kind::restyle, .id = "b", .color = "#aa00ff", .z = 3};
    REQUIRE(apply_edit(base, restyle) ==
            interp("visrect(b,10,10) visposition(b,5,5) viscolor(b,\"#aa00ff\") viszorder(b,3)"));

    Edit create{.kind = Edit::Kind::create, .id = "c", .x = 1, .y = 2, .element = ElementKind::ellipse, .numbers = {4, 6}, .color = "red"};
    REQUIRE(apply_edit(base, create) ==
            interp("visrect(b,10,10) visposition(b,5,5) visellipse(c,4,6) visposition(c,1,2) viscolor(c,red)"));

    auto code_of = [](const VisAtomSet& atoms, const Edit& e) {
        try {
            (void)apply_edit(atoms, e);
        }
        catch (const Error& err) {
            return std::string(to_string(err.code()));
        }
        return std::string("ok");
    };
    REQUIRE(code_of(base, Edit{.kind = Edit::Kind::move, .id = "nope", .x = 1, .y = 1}) == "dangling-reference");
    REQUIRE(code_of(base, Edit{.kind = Edit::Kind::create, .id = "b", .element = ElementKind::rect, .numbers = {1, 1}}) ==
            "conflict");
    REQUIRE(code_of(base, Edit{.kind = Edit::Kind::restyle, .id = "b", .color = "Not A Colour"}) == "validation");

    // grid members move between cells
    auto grid = interp("visgrid(g,4,4,40,40) visellipse(q,40,40) visfillgrid(g,2,4,q)");
    REQUIRE(apply_edit(grid, Edit{.kind = Edit::Kind::move, .id = "q", .row = 2, .col = 3}) ==
            interp("visgrid(g,4,4,40,40) visellipse(q,40,40) visfillgrid(g,2,3,q)"));
    REQUIRE(apply_edit(grid, Edit{.kind = Edit::Kind::move, .id = "q", .x = 95, .y = 41}) ==
            interp("visgrid(g,4,4,40,40) visellipse(q,40,40) visfillgrid(g,2,3,q)"));
    REQUIRE(code_of(grid, Edit{.kind = Edit::Kind::move, .id = "q", .row = 5, .col = 1}) == "validation");

    // deleting a graph node takes its edges along
    auto graph = interp("visgraph(g) visnode(a,g) visnode(b,g) visedge(e,a,b,g) viscolor(e,red)");
    REQUIRE(apply_edit(graph, Edit{.kind = Edit::Kind::remove, .id = "a"}) == interp("visgraph(g) visnode(b,g)"));
    REQUIRE(apply_edit(graph, Edit{.kind = Edit::Kind::remove, .id = "g"}).empty());

    for (auto k : {Edit::Kind::move, Edit::Kind::remove, Edit::Kind::create, Edit::Kind::restyle, Edit::Kind::relabel}) {
        REQUIRE(edit_kind_from_string(to_string(k)) == k);
    }
    REQUIRE(to_string(Edit::Kind::remove) == "delete");
}

TEST_CASE("abduction", "[visualization]") {
    auto program = vis_program(queens_vis);
    auto I       = queens({2, 4, 1, 3});
    std::vector<PredicateKey> q{{"q", 2}};

    SECTION("unmodified round trip") {
        auto target = eval_vis_program(program, I);
        auto found  = abduce({program, target, q, default_domains(I, q)});
        REQUIRE(eval_vis_program(program, found) == target);
        REQUIRE(found == I);
    }

    SECTION("moving a queen") {
        auto target = eval_vis_program(program, I);
        target      = apply_edit(target, Edit{.kind = Edit::Kind::move, .id = "queen(2)", .row = 2, .col = 3});
        auto found  = abduce({program, target, q, default_domains(I, q)});

        // brute force over all subsets of the 4x4 domain with the direct oracle
        std::vector<std::pair<int, int>> domain;
        for (int x = 1; x <= 4; ++x) {
            for (int y = 1; y <= 4; ++y) { domain.emplace_back(x, y); }
        }
        std::vector<std::set<std::pair<int, int>>> witnesses;
        for (unsigned mask = 0; mask < (1U << domain.size()); ++mask) {
            std::set<std::pair<int, int>> s;
            for (std::size_t i = 0; i < domain.size(); ++i) {
                if (mask & (1U << i)) { s.insert(domain[i]); }
            }
            if (queens_vis_oracle(s) == target.literals()) { witnesses.push_back(s); }
        }
        REQUIRE(witnesses.size() == 1);
        REQUIRE(witnesses[0] == std::set<std::pair<int, int>>{{1, 2}, {2, 3}, {3, 1}, {4, 3}});
        REQUIRE(found == queens({2, 3, 1, 3}));
        REQUIRE(eval_vis_program(program, found) == target);
    }

    SECTION("targets no interpretation can produce") {
        auto target = eval_vis_program(program, I);
        target.add(GroundLiteral::make("visrect", {Term::make_symbol("stray"), Term::make_integer(1), Term::make_integer(1)}));
        REQUIRE_THROWS_MATCHES(abduce({program, target, q, default_domains(I, q)}), Error,
                               Catch::Matchers::Predicate<Error>(
                                   [](const Error& e) { return e.code() == ErrorCode::abduction_unsat; }));
        // derivable atoms in an impossible combination: cells without their board
        auto clash = eval_vis_program(program, I);
        REQUIRE(clash.erase(parse_ground_literal("visgrid(board,4,4,40,40)")));
        REQUIRE_THROWS_MATCHES(abduce({program, clash, q, default_domains(I, q)}), Error,
                               Catch::Matchers::Predicate<Error>(
                                   [](const Error& e) { return e.code() == ErrorCode::abduction_unsat; }));
    }

    SECTION("abducibles outside the vis vocabulary") {
        REQUIRE_THROWS_MATCHES(abduce({program, {}, {{"visrect", 3}}, {}}), Error,
                               Catch::Matchers::Predicate<Error>(
                                   [](const Error& e) { return e.code() == ErrorCode::validation; }));
    }

    SECTION("domain size limit") {
        REQUIRE(default_domains(I, q).size() == 16);
        Interpretation many;
        for (int i = 0; i < 50; ++i) { many.add(GroundLiteral::make("p", {Term::make_integer(i)})); }
        REQUIRE_THROWS_MATCHES(default_domains(many, {{"t", 3}}), Error,
                               Catch::Matchers::Predicate<Error>(
                                   [](const Error& e) { return e.code() == ErrorCode::capacity; }));
    }
}

TEST_CASE("abduction soundness on random graphs", "[visualization][property]") {
    // edges drawn as graph edges; removing one and abducing must give back a
    // graph whose drawing has exactly the remaining edges
    auto program = vis_program(R"(
visgraph(g).
visnode(n(X),g) :- v(X).
visedge(e(X,Y),n(X),n(Y),g) :- edge(X,Y).
)");
    gen::Rng rng(3);
    for (int round = 0; round < 20; ++round) {
        Interpretation I;
        std::uniform_int_distribution<int> coin(0, 2);
        for (int v = 1; v <= 4; ++v) { I.add(GroundLiteral::make("v", {Term::make_integer(v)})); }
        for (int a = 1; a <= 4; ++a) {
            for (int b = 1; b <= 4; ++b) {
                if (a != b && coin(rng) == 0) {
                    I.add(GroundLiteral::make("edge", {Term::make_integer(a), Term::make_integer(b)}));
                }
            }
        }
        auto target = eval_vis_program(program, I);
        std::vector<std::string> edges;
        for (const auto& l : target) {
            if (l.predicate == "visedge") { edges.push_back(to_string(l.args[0])); }
        }
        if (!edges.empty()) {
            target = apply_edit(target, Edit{.kind = Edit::Kind::remove, .id = edges[rng() % edges.size()]});
        }
        Interpretation domains;
        for (const auto& l : I) {
            if (l.predicate == "v") { domains.add(l); }
        }
        for (int a = 1; a <= 4; ++a) {
            for (int b = 1; b <= 4; ++b) {
                domains.add(GroundLiteral::make("edge", {Term::make_integer(a), Term::make_integer(b)}));
            }
        }
        auto found = abduce({program, target, {{"edge", 2}}, domains});
        Interpretation forward = found;
        for (const auto& l : I) {
            if (l.predicate == "v") { forward.add(l); }
        }
        REQUIRE(eval_vis_program(program, forward) == target);
        REQUIRE(found.size() == (edges.empty() ? 0 : edges.size() - 1));
    }
}
