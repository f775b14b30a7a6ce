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

#include <catch2/catch_amalgamated.hpp>

#include "gen.hpp"

using namespace aspwb;

namespace {
Rule only_rule(std::string_view text, Dialect d = Dialect::gringo) {
    auto r = parse(text, d);
    REQUIRE(r.ok());
    REQUIRE(r.program.rules.size() == 1);
    return r.program.rules.front();
}
} // namespace

TEST_CASE("pretty print of rules", "[model]") {
    Rule r;
    r.head.push_back(make_literal(Dialect::gringo, "a", {Term::make_variable("X")}));
    r.body.emplace_back(make_literal(Dialect::gringo, "c", {Term::make_variable("X")}));
    REQUIRE(pretty_print(r, Dialect::gringo) == "a(X) :- c(X).");
    REQUIRE(pretty_print(r, Dialect::dlv) == "a(X) :- c(X).");
    REQUIRE(pretty_print(Program{}, Dialect::gringo).empty());
    REQUIRE(pretty_print(GroundLiteral::make("a", {}, true), Dialect::gringo) == "-a.");
    REQUIRE(pretty_print(GroundLiteral::make("q", {Term::make_integer(1), Term::make_integer(2)}), Dialect::dlv) ==
            "q(1,2).");
}

TEST_CASE("pretty print forms", "[model]") {
    SECTION("disjunction per dialect") {
        auto r = only_rule("a | b :- c.");
        REQUIRE(rule_text(r, Dialect::gringo) == "a | b :- c.");
        REQUIRE(rule_text(r, Dialect::dlv) == "a v b :- c.");
    }
    SECTION("negations") {
        auto r = only_rule("-a(X) :- b(X), not -c(X), not d.");
        REQUIRE(rule_text(r, Dialect::gringo) == "-a(X) :- b(X), not -c(X), not d.");
    }
    SECTION("arithmetic keeps precedence") {
        auto r = only_rule("p(X*(Y+1)) :- q(X,Y), X-(Y-1) > 2.");
        REQUIRE(rule_text(r, Dialect::gringo) == "p(X*(Y+1)) :- q(X,Y), X-(Y-1) > 2.");
    }
    SECTION("conditions cannot be printed for DLV") {
        auto r = only_rule("c :- r(X,Y) : e(X,Y) : red(X).");
        REQUIRE(rule_text(r, Dialect::gringo) == "c :- r(X,Y):e(X,Y):red(X).");
        REQUIRE_THROWS_MATCHES(rule_text(r, Dialect::dlv), Error,
                               Catch::Matchers::Predicate<Error>(
                                   [](const Error& e) { return e.code() == ErrorCode::unsupported_construct; }));
    }
    SECTION("named rule without its comment") {
        auto r = only_rule("a :- b.");
        r.name = "r7";
        REQUIRE(pretty_print(r, Dialect::gringo) == "%! name(r7)\na :- b.");
    }
}

TEST_CASE("DLV literals reject conditions", "[model]") {
    auto cond = make_literal(Dialect::gringo, "e", {});
    REQUIRE_NOTHROW(make_literal(Dialect::gringo, "r", {}, {cond}));
    REQUIRE_THROWS_AS(make_literal(Dialect::dlv, "r", {}, {cond}), Error);
}

TEST_CASE("herbrand constants", "[model]") {
    auto consts = [](std::string_view src) {
        auto                     r = parse(src, Dialect::gringo);
        std::vector<std::string> out;
        for (const auto& t : herbrand_constants(r.program)) { out.push_back(to_string(t)); }
        return out;
    };
    REQUIRE(consts("p(a). q(b,a).") == std::vector<std::string>{"a", "b"});
    REQUIRE(consts("r(1..3).") == std::vector<std::string>{"1", "2", "3"});
    REQUIRE(consts("").empty());
    REQUIRE(consts("p(f(c,2)) :- q(X), X > 7.") == std::vector<std::string>{"2", "7", "c"});
}

TEST_CASE("term evaluation", "[model]") {
    REQUIRE(evaluate(parse_term("2*3+4")) == Term::make_integer(10));
    REQUIRE(evaluate(parse_term("-7/2")) == Term::make_integer(-3));
    REQUIRE_THROWS_AS(evaluate(parse_term("a+1")), Error);
    REQUIRE_THROWS_AS(evaluate(parse_term("1/0")), Error);
    REQUIRE_THROWS_AS(evaluate(parse_term("X+1")), Error);
}

TEST_CASE("rule classification is total and exclusive", "[model][property]") {
    REQUIRE(only_rule("a.").kind() == RuleKind::fact);
    REQUIRE(only_rule(":- a.").kind() == RuleKind::constraint);
    REQUIRE(only_rule("a :- b.").kind() == RuleKind::proper);
    REQUIRE(only_rule("a | b.").kind() == RuleKind::proper);
    gen::Rng rng(11);
    for (int i = 0; i < 200; ++i) {
        auto r    = only_rule(gen::random_rule(rng));
        auto kind = r.kind();
        bool fact = r.body.empty() && r.head.size() == 1;
        bool cons = r.head.empty() && !r.choice_head && !r.body.empty();
        REQUIRE((kind == RuleKind::fact) == fact);
        REQUIRE((kind == RuleKind::constraint) == cons);
        REQUIRE((kind == RuleKind::proper) == (!fact && !cons));
    }
}

TEST_CASE("interpretations stay consistent", "[model][property]") {
    auto a  = GroundLiteral::make("a", {});
    auto na = a.complement();
    REQUIRE(na.strong_negation);
    Interpretation I;
    REQUIRE(I.insert(a));
    REQUIRE_FALSE(I.insert(na));
    REQUIRE(I.size() == 1);
    REQUIRE(I.contains(a));
    REQUIRE_THROWS_AS(I.add(na), Error);
    REQUIRE_THROWS_AS(Interpretation({a, na}), Error);

    gen::Rng rng(5);
    Interpretation J;
    for (int i = 0; i < 500; ++i) {
        auto l      = gen::random_ground_literal(rng, 3, 3);
        auto before = J.size();
        bool had    = J.contains(l);
        bool ok     = J.insert(l);
        REQUIRE(J.size() >= before);
        REQUIRE(ok == !J.contains(l.complement()));
        if (!ok) { REQUIRE(J.size() == before); }
        if (ok && !had) { REQUIRE(J.size() == before + 1); }
        for (const auto& x : J) { REQUIRE_FALSE(J.contains(x.complement())); }
    }
}

TEST_CASE("ground literal order", "[model]") {
    auto p = [](std::string_view s) { return parse_ground_literal(s); };
    REQUIRE(p("a") < p("-a"));
    REQUIRE(p("a") < p("b"));
    REQUIRE(p("q(5)") < p("q(1,1)"));
    REQUIRE(p("b") < p("q(1)"));
    REQUIRE(p("q(2)") < p("q(10)"));
    REQUIRE(p("q(10)") < p("q(a)"));
    REQUIRE(p("q(a)") < p("q(\"a\")"));
    REQUIRE(p("q(\"a\")") < p("q(f(a))"));
    REQUIRE_THROWS_AS(GroundLiteral::make("q", {Term::make_variable("X")}), Error);
}

TEST_CASE("pretty print round trip", "[model][property]") {
    for (auto d : {Dialect::gringo, Dialect::dlv}) {
        gen::Rng rng(d == Dialect::gringo ? 1 : 2);
        for (int i = 0; i < 300; ++i) {
            std::string src = gen::random_program(rng, d);
            auto        first = parse(src, d);
            REQUIRE(first.ok());
            std::string printed = pretty_print(first.program, d);
            auto        second  = parse(printed, d);
            INFO(src << "\n---\n" << printed);
            REQUIRE(second.ok());
            REQUIRE(second.program == first.program);
            REQUIRE(all_comments(second.program).size() == all_comments(first.program).size());
        }
    }
}
