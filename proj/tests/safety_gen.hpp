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

#ifndef ASPWB_TESTS_SAFETY_GEN_HPP
#define ASPWB_TESTS_SAFETY_GEN_HPP

// Safety oracle: rules are generated from a structural description, and the
// expected unsafe set is computed from that description alone.

#include "gen.hpp"

#include <set>

namespace safety_gen {

struct Arg {
    std::string text;
    std::string var;      // variable in the argument, empty if none
    bool        binding;  // plain variable or inside a function term
};

inline Arg random_arg(gen::Rng& rng) {
    const std::vector<std::string> vars{"X", "Y", "Z", "W"};
    std::string                    v = gen::one_of(rng, vars);
    switch (gen::pick(rng, 0, 5)) {
        case 0: return {std::to_string(gen::pick(rng, 0, 3)), "", false};
        case 1: return {"_", "", false};
        case 2: return {"f(" + v + ")", v, true};
        case 3: return {v + "+1", v, false};
        default: return {v, v, true};
    }
}

struct Lit {
    std::string      text;
    std::vector<Arg> args;
};

inline Lit random_lit(gen::Rng& rng, const std::string& pred) {
    Lit l;
    l.text = pred;
    int n  = gen::pick(rng, 0, 2);
    if (n) {
        l.text += "(";
        for (int i = 0; i < n; ++i) {
            l.args.push_back(random_arg(rng));
            l.text += (i ? "," : "") + l.args.back().text;
        }
        l.text += ")";
    }
    return l;
}

inline std::set<std::string> vars_of(const Lit& l) {
    std::set<std::string> out;
    for (const auto& a : l.args) {
        if (!a.var.empty()) { out.insert(a.var); }
    }
    return out;
}

inline std::set<std::string> binding_vars(const Lit& l) {
    std::set<std::string> out;
    for (const auto& a : l.args) {
        if (a.binding) { out.insert(a.var); }
    }
    return out;
}

struct Case {
    std::string           text;
    std::set<std::string> unsafe;
};

inline Case random_case(gen::Rng& rng) {
    // structural description
    const std::vector<std::string> preds{"p", "q"};
    std::set<std::string>          bound;
    std::set<std::string>          need;
    std::set<std::string>          expected;
    std::vector<std::string>       body;

    for (int k = gen::pick(rng, 0, 3); k > 0; --k) {
        auto l = random_lit(rng, gen::one_of(rng, preds));
        body.push_back(l.text);
        for (const auto& v : binding_vars(l)) { bound.insert(v); }
        for (const auto& v : vars_of(l)) { need.insert(v); }
    }
    for (int k = gen::pick(rng, 0, 2); k > 0; --k) {
        auto l = random_lit(rng, "n");
        body.push_back("not " + l.text);
        for (const auto& v : vars_of(l)) { need.insert(v); }
    }
    if (gen::coin(rng, 0.4)) {
        auto a = random_arg(rng);
        auto b = random_arg(rng);
        if (a.text == "_") { a = {"1", "", false}; }
        if (b.text == "_") { b = {"2", "", false}; }
        body.push_back(a.text + " " + gen::one_of<std::string>(rng, {"=", "<", "!="}) + " " + b.text);
        if (!a.var.empty()) { need.insert(a.var); }
        if (!b.var.empty()) { need.insert(b.var); }
    }
    std::set<std::string> conditional_unsafe_candidates;
    std::set<std::string> conditional_local_bound;
    if (gen::coin(rng, 0.4)) {
        auto             l = random_lit(rng, "c");
        std::vector<Lit> conds;
        for (int k = gen::pick(rng, 1, 2); k > 0; --k) { conds.push_back(random_lit(rng, "d")); }
        std::string text = l.text;
        for (const auto& v : vars_of(l)) { conditional_unsafe_candidates.insert(v); }
        for (const auto& c : conds) {
            text += ":" + c.text;
            for (const auto& v : vars_of(c)) { conditional_unsafe_candidates.insert(v); }
            for (const auto& v : binding_vars(c)) { conditional_local_bound.insert(v); }
        }
        body.push_back(text);
    }
    bool constraint = !body.empty() && gen::coin(rng, 0.2);
    std::string text;
    if (!constraint) {
        auto head = random_lit(rng, "h");
        text      = head.text;
        for (const auto& v : vars_of(head)) { need.insert(v); }
    }
    for (const auto& v : need) {
        if (!bound.count(v)) { expected.insert(v); }
    }
    for (const auto& v : conditional_unsafe_candidates) {
        if (!bound.count(v) && !conditional_local_bound.count(v)) { expected.insert(v); }
    }
    if (!body.empty()) { text += (constraint ? ":- " : " :- ") + gen::join(body, ", "); }
    text += ".";
    return {text, expected};
}

} // namespace safety_gen

#endif
