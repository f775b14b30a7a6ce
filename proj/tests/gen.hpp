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

#ifndef ASPWB_TESTS_GEN_HPP
#define ASPWB_TESTS_GEN_HPP

// Random program and literal generators shared by the property tests.

#include <aspwb/model.hpp>

#include <random>
#include <string>
#include <vector>

namespace gen {

using Rng = std::mt19937;

inline int pick(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }
inline bool coin(Rng& rng, double p = 0.5) { return std::bernoulli_distribution(p)(rng); }

template <typename T>
const T& one_of(Rng& rng, const std::vector<T>& v) {
    return v[static_cast<std::size_t>(pick(rng, 0, static_cast<int>(v.size()) - 1))];
}

inline std::string join(const std::vector<std::string>& parts, const std::string& sep) {
    std::string out;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i) { out += sep; }
        out += parts[i];
    }
    return out;
}

inline std::string random_term(Rng& rng, int depth = 0) {
    switch (pick(rng, 0, depth > 1 ? 3 : 6)) {
        case 0: return one_of<std::string>(rng, {"X", "Y", "Z", "W"});
        case 1: return std::to_string(pick(rng, 0, 9));
        case 2: return one_of<std::string>(rng, {"a", "b", "c", "foo"});
        case 3: return one_of<std::string>(rng, {"X", "Y", "1", "\"s\""});
        case 4: {
            std::vector<std::string> args;
            for (int i = pick(rng, 1, 2); i > 0; --i) { args.push_back(random_term(rng, depth + 1)); }
            return one_of<std::string>(rng, {"f", "g"}) + "(" + join(args, ",") + ")";
        }
        case 5: return one_of<std::string>(rng, {"X", "Y"}) + one_of<std::string>(rng, {"+", "-", "*", "/"}) +
                       std::to_string(pick(rng, 1, 4));
        default: return std::to_string(pick(rng, 0, 2)) + ".." + std::to_string(pick(rng, 3, 5));
    }
}

inline std::string random_atom(Rng& rng, bool allow_strong = true) {
    std::string out = allow_strong && coin(rng, 0.15) ? "-" : "";
    out += one_of<std::string>(rng, {"p", "q", "r", "edge", "s"});
    int n = pick(rng, 0, 3);
    if (n > 0) {
        std::vector<std::string> args;
        for (int i = 0; i < n; ++i) { args.push_back(random_term(rng)); }
        out += "(" + join(args, ",") + ")";
    }
    return out;
}

inline std::string random_body_literal(Rng& rng, aspwb::Dialect d) {
    int k = pick(rng, 0, 9);
    if (k <= 4) { return (coin(rng, 0.3) ? "not " : "") + random_atom(rng); }
    if (k <= 6) {
        return random_term(rng, 2) + " " + one_of<std::string>(rng, {"=", "!=", "<", "<=", ">", ">="}) + " " +
               random_term(rng, 2);
    }
    if (k == 7 && d == aspwb::Dialect::gringo) {
        std::string out = random_atom(rng);
        for (int i = pick(rng, 1, 2); i > 0; --i) { out += " : " + random_atom(rng, false); }
        return out;
    }
    if (d == aspwb::Dialect::gringo) {
        if (coin(rng)) {
            return std::to_string(pick(rng, 0, 1)) + " #count{" + random_atom(rng) + "," + random_atom(rng) + "} " +
                   std::to_string(pick(rng, 2, 3));
        }
        return "#sum[" + random_atom(rng) + "=" + std::to_string(pick(rng, 1, 3)) + "," + random_atom(rng) + "] >= 2";
    }
    return "#count{X : " + random_atom(rng) + ", " + random_atom(rng) + "} > " + std::to_string(pick(rng, 0, 2));
}

//! A rule in the given dialect, without comments.
inline std::string random_rule(Rng& rng, aspwb::Dialect d = aspwb::Dialect::gringo) {
    std::vector<std::string> head;
    std::vector<std::string> body;
    int                      shape = pick(rng, 0, 9);
    int                      nhead = shape == 0 ? 0 : shape <= 2 ? 2 : 1;
    if (nhead == 0 || coin(rng, 0.7)) {
        for (int i = pick(rng, 1, 3); i > 0; --i) { body.push_back(random_body_literal(rng, d)); }
    }
    for (int i = 0; i < nhead; ++i) { head.push_back(random_atom(rng)); }
    std::string out = join(head, d == aspwb::Dialect::gringo ? " | " : " v ");
    if (!body.empty()) { out += (head.empty() ? ":- " : " :- ") + join(body, ", "); }
    return out + ".";
}

//! A program with rules, attached and standalone comments and named rules.
inline std::string random_program(Rng& rng, aspwb::Dialect d) {
    std::string out;
    int         nrules = pick(rng, 0, 6);
    for (int i = 0; i < nrules; ++i) {
        switch (pick(rng, 0, 6)) {
            case 0: out += "% note " + std::to_string(i) + "\n"; break;
            case 1: out += "%* block\n   comment *%\n"; break;
            case 2: out += "%! name(r" + std::to_string(i) + ")\n"; break;
            case 3: out += "% far away\n\n\n"; break;
            default: break;
        }
        out += random_rule(rng, d);
        if (coin(rng, 0.2)) { out += " % trailing"; }
        out += "\n";
    }
    if (coin(rng, 0.3)) { out += "\n\n% end of file\n"; }
    return out;
}

inline aspwb::GroundLiteral random_ground_literal(Rng& rng, int npred, int nconst) {
    std::vector<aspwb::Term> args;
    int                      arity = pick(rng, 0, 2);
    for (int i = 0; i < arity; ++i) {
        if (coin(rng)) { args.push_back(aspwb::Term::make_integer(pick(rng, 0, nconst - 1))); }
        else { args.push_back(aspwb::Term::make_symbol(std::string(1, static_cast<char>('a' + pick(rng, 0, nconst - 1))))); }
    }
    return aspwb::GroundLiteral::make(std::string(1, static_cast<char>('p' + pick(rng, 0, npred - 1))), std::move(args),
                                      coin(rng, 0.3));
}

//! Distinct literals without complementary pairs, with strings, functions and
//! negative integers among the arguments.
inline aspwb::Interpretation random_interpretation(Rng& rng) {
    auto term = [&rng]() {
        switch (pick(rng, 0, 4)) {
            case 0: return aspwb::Term::make_integer(pick(rng, -3, 20));
            case 1: return aspwb::Term::make_string(coin(rng) ? "two words, one comma" : "x");
            case 2: return aspwb::Term::make_function("f", {aspwb::Term::make_symbol("a"), aspwb::Term::make_integer(pick(rng, 0, 3))});
            default: return aspwb::Term::make_symbol(coin(rng) ? "b" : "c");
        }
    };
    aspwb::Interpretation I;
    for (int n = pick(rng, 0, 6); n > 0; --n) {
        if (coin(rng)) {
            I.insert(random_ground_literal(rng, 4, 5));
            continue;
        }
        std::vector<aspwb::Term> args;
        for (int k = pick(rng, 1, 3); k > 0; --k) { args.push_back(term()); }
        I.insert(aspwb::GroundLiteral::make("r", std::move(args), coin(rng, 0.2)));
    }
    return I;
}

} // namespace gen

#endif
