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
#include <aspwb/parse.hpp>

#include <catch2/catch_amalgamated.hpp>

#include "gen.hpp"

#include <map>

using namespace aspwb;

namespace {
Interpretation interp(std::string_view text) { return parse_interpretation(text, Dialect::gringo); }

std::set<GroundLiteral> lits(std::string_view text) { return interp(text).literals(); }
} // namespace

TEST_CASE("tree view", "[interpretations]") {
    auto t = to_tree(interp("q(1,2) q(2,4) r(1)"));
    REQUIRE(t.marker == 'I');
    REQUIRE(t.children.size() == 2);
    REQUIRE(t.children[0].marker == 'P');
    REQUIRE(t.children[0].label == "q/2");
    REQUIRE(t.children[0].children.size() == 2);
    REQUIRE(t.children[0].children[0].marker == 'L');
    REQUIRE(t.children[0].children[0].label == "q(1,2)");
    REQUIRE(t.children[1].label == "r/1");
    REQUIRE(t.children[1].children.size() == 1);

    auto empty = to_tree(Interpretation{});
    REQUIRE(empty.children.empty());
    REQUIRE(empty.label == "I");

    // strong negation keeps the predicate node, the sign sits on the literal
    auto neg = to_tree(interp("-a a(1)"));
    REQUIRE(neg.children.size() == 2);
    REQUIRE(neg.children[0].label == "a/0");
    REQUIRE(neg.children[0].children[0].label == "-a");
    REQUIRE(neg.children[1].label == "a/1");

    auto labelled  = interp("b a");
    labelled.label = "answer-1";
    REQUIRE(to_tree(labelled).label == "answer-1");
    REQUIRE(render_tree(to_tree(labelled)) == "I answer-1\n  P a/0\n    L a\n  P b/0\n    L b\n");

    // (name, arity) order, then argument order: 2 < 10 numerically, b < c
    auto order = to_tree(interp("p(10) p(2) p(b,c) o p(b,b)"));
    REQUIRE(order.children[0].label == "o/0");
    REQUIRE(order.children[1].label == "p/1");
    REQUIRE(order.children[1].children[0].label == "p(2)");
    REQUIRE(order.children[1].children[1].label == "p(10)");
    REQUIRE(order.children[2].children[0].label == "p(b,b)");
}

TEST_CASE("tree cardinality", "[interpretations][property]") {
    gen::Rng rng(11);
    for (int i = 0; i < 300; ++i) {
        auto I = gen::random_interpretation(rng);
        auto t = to_tree(I);
        std::set<std::pair<std::string, std::size_t>> preds;
        for (const auto& l : I) { preds.insert({l.predicate, l.args.size()}); }
        REQUIRE(t.children.size() == preds.size());
        std::size_t leaves = 0;
        std::vector<std::string> seen;
        for (const auto& p : t.children) {
            REQUIRE(p.marker == 'P');
            REQUIRE_FALSE(p.children.empty());
            for (const auto& l : p.children) {
                REQUIRE(l.marker == 'L');
                REQUIRE(l.children.empty()); // depth 3
                auto lit = parse_ground_literal(l.label);
                REQUIRE(lit.key().str() == p.label);
                seen.push_back(l.label);
                ++leaves;
            }
        }
        REQUIRE(leaves == I.size());
        std::set<std::string> unique(seen.begin(), seen.end());
        REQUIRE(unique.size() == seen.size());
    }
}

TEST_CASE("facts", "[interpretations]") {
    REQUIRE(to_facts(parse_ground_literal("q(1,2)"), Dialect::gringo) == "q(1,2).");
    REQUIRE(to_facts(interp("a -b"), Dialect::gringo) == "a.\n-b.");
    REQUIRE(to_facts(interp("a -b"), Dialect::dlv) == "a.\n-b.");
    REQUIRE(to_facts(Interpretation{}, Dialect::gringo).empty());
}

TEST_CASE("facts round trip", "[interpretations][property]") {
    gen::Rng rng(5);
    int      cases = 0;
    for (int i = 0; i < 150; ++i) {
        auto I = gen::random_interpretation(rng);
        for (auto d : {Dialect::gringo, Dialect::dlv}) {
            auto text = to_facts(I, d);
            INFO(text);
            REQUIRE(parse_interpretation(text, d) == I);
            // every fact also parses as a program fact
            auto parsed = parse(text, d);
            REQUIRE(parsed.ok());
            REQUIRE(parsed.program.rules.size() == I.size());
        }
        ++cases;
    }
    REQUIRE(cases >= 100);
}

TEST_CASE("diff", "[interpretations]") {
    auto d = diff(interp("a b"), interp("b c"));
    REQUIRE(d.only_left == lits("a"));
    REQUIRE(d.only_right == lits("c"));
    REQUIRE(d.common == lits("b"));

    auto same = diff(interp("a -b p(1)"), interp("a -b p(1)"));
    REQUIRE(same.only_left.empty());
    REQUIRE(same.only_right.empty());
    REQUIRE(same.common == lits("a -b p(1)"));

    auto grow = diff(Interpretation{}, interp("a"));
    REQUIRE(grow.only_right == lits("a"));
    REQUIRE(grow.only_left.empty());

    // a and -a are different literals
    auto sign = diff(interp("a"), interp("-a"));
    REQUIRE(sign.only_left.size() == 1);
    REQUIRE(sign.only_right.size() == 1);
}

TEST_CASE("diff partitions and mirrors", "[interpretations][property]") {
    gen::Rng rng(23);
    for (int i = 0; i < 300; ++i) {
        auto I  = gen::random_interpretation(rng);
        auto J  = gen::random_interpretation(rng);
        auto ij = diff(I, J);
        auto ji = diff(J, I);
        REQUIRE(ij.only_left == ji.only_right);
        REQUIRE(ij.only_right == ji.only_left);
        REQUIRE(ij.common == ji.common);

        std::map<GroundLiteral, int> where;
        for (const auto& l : ij.only_left) { where[l] |= 1; }
        for (const auto& l : ij.only_right) { where[l] |= 2; }
        for (const auto& l : ij.common) { where[l] |= 4; }
        for (const auto& [l, mask] : where) {
            REQUIRE((mask == 1 || mask == 2 || mask == 4)); // pairwise disjoint
            REQUIRE(mask == (I.contains(l) && J.contains(l) ? 4 : I.contains(l) ? 1 : 2));
        }
        std::set<GroundLiteral> all(I.begin(), I.end());
        all.insert(J.begin(), J.end());
        REQUIRE(where.size() == all.size());
    }
}
