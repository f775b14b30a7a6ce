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

#include <aspwb/engine.hpp>
#include <aspwb/parse.hpp>

#include <catch2/catch_amalgamated.hpp>

#include "oracle.hpp"

#include <set>
#include <thread>

using namespace aspwb;

namespace {
Program program(std::string_view text) {
    auto r = parse(text, Dialect::gringo);
    INFO(text);
    REQUIRE(r.ok());
    return r.program;
}

GroundLiteral lit(std::string_view s) { return parse_ground_literal(s); }

std::set<GroundLiteral> atoms(std::initializer_list<const char*> xs) {
    std::set<GroundLiteral> out;
    for (const auto* x : xs) { out.insert(lit(x)); }
    return out;
}

std::vector<std::string> render(const std::vector<Interpretation>& sets) {
    std::vector<std::string> out;
    for (const auto& I : sets) {
        std::string s = "{";
        for (const auto& l : I) { s += (s.size() > 1 ? "," : "") + to_string(l); }
        out.push_back(s + "}");
    }
    return out;
}

std::vector<std::string> solve_text(std::string_view text, std::optional<std::size_t> limit = std::nullopt) {
    return render(solve(program(text), limit));
}

ErrorCode error_of(const std::function<void()>& fn) {
    try {
        fn();
    }
    catch (const Error& e) {
        return e.code();
    }
    FAIL("no error raised");
    return ErrorCode::io;
}

bool has_rule(const GroundProgram& gp, const GroundRule& r) {
    return std::find(gp.rules.begin(), gp.rules.end(), r) != gp.rules.end();
}
} // namespace

TEST_CASE("grounding", "[engine]") {
    SECTION("intervals expand") {
        auto gp = ground(program("p(1..3)."));
        REQUIRE(gp.rules.size() == 3);
        REQUIRE(gp.base == atoms({"p(1)", "p(2)", "p(3)"}));
    }
    SECTION("conditional literals") {
        auto gp = ground(program("edge(1,2). red(1). red(2).\n"
                                 "colored :- redEdge(X,Y):edge(X,Y):red(X):red(Y).\n"
                                 "redEdge(1,2) :- not blue."));
        REQUIRE(has_rule(gp, {{lit("colored")}, {lit("redEdge(1,2)")}, {}}));
    }
    SECTION("conditions over several instances") {
        auto gp = ground(program("d(1..3). a(1). a(2). a(3) :- not b. b :- not a(3).\nall :- a(X):d(X)."));
        REQUIRE(has_rule(gp, {{lit("all")}, {lit("a(1)"), lit("a(2)"), lit("a(3)")}, {}}));
    }
    SECTION("builtins prune") {
        auto gp = ground(program("c(1). c(2). a(X) :- c(X), X > 1."));
        REQUIRE(has_rule(gp, {{lit("a(2)")}, {lit("c(2)")}, {}}));
        REQUIRE(gp.rules.size() == 3);
    }
    SECTION("arithmetic in heads and bodies") {
        auto gp = ground(program("n(1). n(X+1) :- n(X), X < 3. m(X) :- n(X), n(X*2)."));
        REQUIRE(gp.base.count(lit("n(3)")) == 1);
        REQUIRE(gp.base.count(lit("n(4)")) == 0);
        REQUIRE(gp.base.count(lit("m(1)")) == 1);
    }
    SECTION("impossible negative atoms are dropped") {
        auto gp = ground(program("a :- not b."));
        REQUIRE(gp.rules.size() == 1);
        REQUIRE(gp.rules[0].body_neg.empty());
    }
    SECTION("function terms") {
        auto sets = solve_text("p(f(1,a)). q(X,Y) :- p(f(X,Y)).");
        REQUIRE(sets == std::vector<std::string>{"{p(f(1,a)),q(1,a)}"});
    }
}

TEST_CASE("grounding errors", "[engine]") {
    REQUIRE(error_of([] { ground(program("a(X) :- not c(X).")); }) == ErrorCode::safety);
    REQUIRE(error_of([] { ground(program("ok :- 1 #count{p(X):d(X)} 2.")); }) == ErrorCode::unsupported_construct);
    REQUIRE(error_of([] { ground(program("{a}.")); }) == ErrorCode::unsupported_construct);
    REQUIRE(error_of([] { ground(program("p(a). q(X+1) :- p(X).")); }) == ErrorCode::evaluation);
    REQUIRE(error_of([] { ground(program("p(0). q(1/X) :- p(X).")); }) == ErrorCode::evaluation);
    REQUIRE(error_of([] { ground(program("a | b. c :- x:a.")); }) == ErrorCode::unsupported_construct);
    SECTION("capacity") {
        EngineOptions opts;
        opts.max_atoms = 10;
        try {
            ground(program("p(1..20)."), opts);
            FAIL("expected capacity error");
        }
        catch (const Error& e) {
            REQUIRE(e.code() == ErrorCode::capacity);
            REQUIRE(std::string(e.what()).find("max_atoms=10") != std::string::npos);
        }
        REQUIRE(error_of([] { ground(program("n(0). n(X+1) :- n(X).")); }) == ErrorCode::capacity);
    }
}

TEST_CASE("reduct", "[engine]") {
    GroundProgram gp;
    gp.add({{lit("a")}, {}, {lit("b")}});
    auto kept = reduct(gp, atoms({"a"}));
    REQUIRE(kept.rules.size() == 1);
    REQUIRE(kept.rules[0] == GroundRule{{lit("a")}, {}, {}});
    REQUIRE(reduct(gp, atoms({"b"})).rules.empty());

    GroundProgram pos;
    pos.add({{lit("a")}, {lit("b")}, {}});
    pos.add({{}, {lit("a"), lit("c")}, {}});
    REQUIRE(reduct(pos, atoms({"a", "c"})).rules == pos.rules);
}

TEST_CASE("answer-set check", "[engine]") {
    GroundProgram gp;
    gp.add({{lit("a")}, {}, {lit("b")}});
    REQUIRE(is_answer_set(gp, atoms({"a"})));
    REQUIRE_FALSE(is_answer_set(gp, atoms({"b"})));
    REQUIRE_FALSE(is_answer_set(gp, atoms({})));

    GroundProgram fact;
    fact.add({{lit("a")}, {}, {}});
    REQUIRE_FALSE(is_answer_set(fact, {}));
    REQUIRE(is_answer_set(fact, atoms({"a"})));

    GroundProgram disj;
    disj.add({{lit("a"), lit("b")}, {}, {}});
    REQUIRE(is_answer_set(disj, atoms({"a"})));
    REQUIRE_FALSE(is_answer_set(disj, atoms({"a", "b"})));

    GroundProgram loop;
    loop.add({{lit("a")}, {lit("b")}, {}});
    loop.add({{lit("b")}, {lit("a")}, {}});
    REQUIRE_FALSE(is_answer_set(loop, atoms({"a", "b"})));
    REQUIRE(is_answer_set(loop, {}));
    REQUIRE_FALSE(is_answer_set(loop, atoms({"zzz"})));
}

TEST_CASE("answer sets", "[engine]") {
    REQUIRE(solve_text("a :- not b. b :- not a.") == std::vector<std::string>{"{a}", "{b}"});
    REQUIRE(solve_text("a | b.") == std::vector<std::string>{"{a}", "{b}"});
    REQUIRE(solve_text("a. :- a.").empty());
    REQUIRE(solve_text("").size() == 1);
    REQUIRE(solve_text("a :- not b. b :- not a.", 1) == std::vector<std::string>{"{a}"});
    REQUIRE(solve_text("a :- not a.").empty());
    REQUIRE(solve_text("a | b. a :- b. b :- a.") == std::vector<std::string>{"{a,b}"});
    SECTION("strong negation") {
        REQUIRE(solve_text("a. -a.").empty());
        REQUIRE(solve_text("a | -a.") == std::vector<std::string>{"{a}", "{-a}"});
        REQUIRE(solve_text("-p(1). q :- -p(1).") == std::vector<std::string>{"{-p(1),q}"});
    }
    SECTION("classic three colouring count") {
        auto sets = solve(program("node(1..3). edge(1,2). edge(2,3). edge(1,3).\n"
                                  "col(X,r) | col(X,g) | col(X,b) :- node(X).\n"
                                  ":- edge(X,Y), col(X,C), col(Y,C)."));
        REQUIRE(sets.size() == 6);
    }
}

TEST_CASE("engine agrees with the brute-force oracle", "[engine][oracle]") {
    std::mt19937 rng(2024);
    int          programs = 0;
    for (int i = 0; i < 250; ++i) {
        int  n      = std::uniform_int_distribution<int>(1, 16)(rng);
        auto mp     = oracle::random_program(rng, n);
        auto expect = oracle::answer_sets(mp);
        auto gp     = oracle::to_ground(mp);
        auto got    = answer_sets(gp);
        std::vector<std::uint32_t> masks;
        for (const auto& I : got) { masks.push_back(oracle::to_mask(I)); }
        INFO(oracle::to_text(mp));
        REQUIRE(masks == expect);
        for (const auto& I : got) {
            REQUIRE(is_answer_set(gp, I.literals()));
            for (const auto& J : got) {
                bool proper_subset = J.size() < I.size() &&
                                     std::includes(I.begin(), I.end(), J.begin(), J.end());
                REQUIRE_FALSE(proper_subset);
            }
        }
        ++programs;
    }
    REQUIRE(programs >= 200);
}

TEST_CASE("grounding is conservative", "[engine]") {
    // non-ground program and its grounding written out by hand
    const std::vector<std::pair<std::string, std::string>> fixtures{
        {"p(1..2). q(X) :- p(X), not r(X). r(X) :- p(X), not q(X).",
         "p(1). p(2). q(1) :- p(1), not r(1). q(2) :- p(2), not r(2). r(1) :- p(1), not q(1). r(2) :- p(2), not q(2)."},
        {"e(1,2). e(2,3). t(X,Y) :- e(X,Y). t(X,Z) :- t(X,Y), e(Y,Z).",
         "e(1,2). e(2,3). t(1,2) :- e(1,2). t(2,3) :- e(2,3). t(1,3) :- t(1,2), e(2,3)."},
        {"n(1..3). s(X) | o(X) :- n(X). :- s(X), s(Y), X < Y.",
         "n(1). n(2). n(3). s(1) | o(1) :- n(1). s(2) | o(2) :- n(2). s(3) | o(3) :- n(3).\n"
         ":- s(1), s(2). :- s(1), s(3). :- s(2), s(3)."},
        {"a(1). a(2). b(X) :- a(X), X > 1.", "a(1). a(2). b(2) :- a(2)."},
        {"d(1..2). all :- ok(X):d(X). ok(1). ok(2) :- not no. no :- not ok(2).",
         "d(1). d(2). all :- ok(1), ok(2). ok(1). ok(2) :- not no. no :- not ok(2)."},
        {"p(a). -p(b). q(X) :- p(X). q(X) :- -p(X).", "p(a). -p(b). q(a) :- p(a). q(b) :- -p(b)."},
        {"v(1..2). in(X) :- v(X), not out(X). out(X) :- v(X), not in(X). :- in(1), in(2).",
         "v(1). v(2). in(1) :- v(1), not out(1). in(2) :- v(2), not out(2).\n"
         "out(1) :- v(1), not in(1). out(2) :- v(2), not in(2). :- in(1), in(2)."},
        {"s(0). s(X+1) :- s(X), X < 2. last(X) :- s(X), not s(X+1).",
         "s(0). s(1) :- s(0). s(2) :- s(1). last(0) :- s(0), not s(1). last(1) :- s(1), not s(2). last(2) :- s(2)."},
        {"p(f(1)). p(f(2)). q(Y) :- p(f(Y)), Y != 1.", "p(f(1)). p(f(2)). q(2) :- p(f(2))."},
        {"r(1). r(2). c :- not r(X):r(X).", "r(1). r(2). c :- not r(1), not r(2)."},
        {"x | y. z :- x. z :- y. :- not z.", "x | y. z :- x. z :- y. :- not z."},
        {"k(1..3). pick(X) | skip(X) :- k(X). some :- pick(X). :- not some.",
         "k(1). k(2). k(3). pick(1) | skip(1) :- k(1). pick(2) | skip(2) :- k(2). pick(3) | skip(3) :- k(3).\n"
         "some :- pick(1). some :- pick(2). some :- pick(3). :- not some."},
    };
    REQUIRE(fixtures.size() >= 10);
    for (const auto& [source, hand] : fixtures) {
        INFO(source);
        REQUIRE(solve_text(source) == solve_text(hand));
    }
}

TEST_CASE("recursive grounding reaches the closure", "[engine][oracle]") {
    std::mt19937 rng(99);
    for (int round = 0; round < 60; ++round) {
        int                            n = std::uniform_int_distribution<int>(2, 9)(rng);
        std::vector<std::vector<bool>> reach(n, std::vector<bool>(n, false));
        std::string                    text;
        for (int a = 0; a < n; ++a) {
            for (int b = 0; b < n; ++b) {
                if (std::bernoulli_distribution(0.2)(rng)) {
                    reach[a][b] = true;
                    text += "e(" + std::to_string(a) + "," + std::to_string(b) + "). ";
                }
            }
        }
        for (int k = 0; k < n; ++k) {
            for (int a = 0; a < n; ++a) {
                for (int b = 0; b < n; ++b) { reach[a][b] = reach[a][b] || (reach[a][k] && reach[k][b]); }
            }
        }
        // linear and doubly recursive forms must both reach the closure
        for (const char* rules : {"t(X,Y) :- e(X,Y). t(X,Z) :- t(X,Y), e(Y,Z).",
                                  "t(X,Y) :- e(X,Y). t(X,Z) :- t(X,Y), t(Y,Z)."}) {
            INFO(text << rules);
            auto                  gp = ground(program(text + rules));
            std::set<GroundLiteral> expect;
            for (int a = 0; a < n; ++a) {
                for (int b = 0; b < n; ++b) {
                    if (reach[a][b]) { expect.insert(lit("t(" + std::to_string(a) + "," + std::to_string(b) + ")")); }
                }
            }
            std::set<GroundLiteral> got;
            for (const auto& a : gp.base) {
                if (a.predicate == "t") { got.insert(a); }
            }
            REQUIRE(got == expect);
        }
    }
}

TEST_CASE("queens", "[engine][oracle]") {
    for (int n : {4, 5}) {
        auto                            sets = solve(program(oracle::queens_program(n)));
        std::set<std::set<std::string>> got;
        for (const auto& I : sets) {
            std::set<std::string> qs;
            for (const auto& l : I) {
                if (l.predicate == "q") { qs.insert(to_string(l)); }
            }
            got.insert(qs);
        }
        std::set<std::set<std::string>> expect;
        for (const auto& placement : oracle::queens(n)) {
            std::set<std::string> qs;
            for (auto [r, c] : placement) { qs.insert("q(" + std::to_string(r) + "," + std::to_string(c) + ")"); }
            expect.insert(qs);
        }
        REQUIRE(sets.size() == expect.size());
        REQUIRE(got == expect);
    }
    REQUIRE(oracle::queens(4).size() == 2);
    REQUIRE(oracle::queens(5).size() == 10);
}

TEST_CASE("cancellation", "[engine]") {
    std::atomic<bool> cancel{true};
    EngineOptions     opts;
    opts.cancel = &cancel;
    REQUIRE(error_of([&] { solve(program(oracle::queens_program(4)), std::nullopt, opts); }) == ErrorCode::cancelled);
    GroundProgram gp = ground(program(oracle::queens_program(4)));
    REQUIRE(error_of([&] { answer_sets(gp, std::nullopt, opts); }) == ErrorCode::cancelled);
}
