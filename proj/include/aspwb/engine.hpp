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

#ifndef ASPWB_ENGINE_HPP
#define ASPWB_ENGINE_HPP

// Reference grounder and answer-set enumerator for desk-scale programs.

#include <aspwb/model.hpp>

#include <atomic>
#include <cstddef>
#include <optional>
#include <set>
#include <vector>

namespace aspwb {

struct GroundRule {
    std::vector<GroundLiteral> head;     //!< disjunction; empty for constraints
    std::vector<GroundLiteral> body_pos;
    std::vector<GroundLiteral> body_neg; //!< atoms under default negation

    friend bool operator==(const GroundRule&, const GroundRule&) = default;
};

struct GroundProgram {
    std::vector<GroundRule>  rules;
    std::set<GroundLiteral>  base;

    //! Adds a rule and its atoms to the base.
    void add(GroundRule r);
};

struct EngineOptions {
    std::size_t max_atoms = 5000;
    std::size_t max_rules = 200000;
    //! Polled between grounding and search steps; when set, Error(cancelled).
    const std::atomic<bool>* cancel = nullptr;
};

//! Instantiates a safe, aggregate-free program over its derivable atoms.
//! Conditional literals expand over the least model of the program's
//! negation-free normal rules.
//! @throws Error(safety), Error(unsupported_construct), Error(evaluation),
//!         Error(capacity), Error(cancelled).
GroundProgram ground(const Program& program, const EngineOptions& opts = {});

//! Drops rules whose negative body meets candidate and strips the negative
//! body from the rest.
GroundProgram reduct(const GroundProgram& program, const std::set<GroundLiteral>& candidate);

//! True iff candidate is a consistent subset of the base and a minimal model
//! of reduct(program, candidate).
bool is_answer_set(const GroundProgram& program, const std::set<GroundLiteral>& candidate);

//! Answer sets in enumeration order: characteristic vectors over the sorted
//! base compared position by position, an atom being true before false.
//! @param limit maximal number of answer sets; nullopt for all.
//! @throws Error(capacity) if the base exceeds opts.max_atoms,
//!         Error(cancelled).
std::vector<Interpretation> answer_sets(const GroundProgram& program, std::optional<std::size_t> limit = std::nullopt,
                                        const EngineOptions& opts = {});

//! ground() followed by answer_sets().
std::vector<Interpretation> solve(const Program& program, std::optional<std::size_t> limit = std::nullopt,
                                  const EngineOptions& opts = {});

} // namespace aspwb

#endif
