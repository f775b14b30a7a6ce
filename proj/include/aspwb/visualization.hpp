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

#ifndef ASPWB_VISUALIZATION_HPP
#define ASPWB_VISUALIZATION_HPP

// Scenes from interpretations: the generic hypergraph drawing, visualization
// programs over the vis* vocabulary, SVG export, scene edits and abduction of
// an interpretation from an edited scene.

#include <aspwb/engine.hpp>
#include <aspwb/tools.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace aspwb {

enum class ElementKind : std::uint8_t { rect, ellipse, line, polygon, label, image, graph, graph_node, graph_edge, grid };
std::string_view           to_string(ElementKind k) noexcept;
std::optional<ElementKind> element_kind_from_string(std::string_view s) noexcept;

struct Point {
    double x = 0;
    double y = 0;
    friend bool operator==(const Point&, const Point&) = default;
};

struct SceneElement {
    std::string              id; //!< printed term
    ElementKind              kind = ElementKind::rect;
    double                   x      = 0; //!< top-left of the bounding box
    double                   y      = 0;
    double                   width  = 0;
    double                   height = 0;
    std::vector<Point>       points;    //!< line ends, polygon vertices; absolute
    std::vector<std::string> endpoints; //!< graph-edge ends (element ids)
    int                      rows = 0;  //!< grids only
    int                      cols = 0;
    std::string              color; //!< named colour or #RRGGBB; empty means the kind's default
    std::int64_t             z = 0;
    std::optional<std::string>         text;
    std::optional<std::string>         href; //!< images
    std::optional<std::string>         parent; //!< containing grid or graph
    std::optional<std::pair<int, int>> cell;   //!< (row, col) when filled into a grid

    friend bool operator==(const SceneElement&, const SceneElement&) = default;
};

struct Scene {
    std::vector<SceneElement> elements; //!< sorted by id
    double                    width  = 0;
    double                    height = 0;

    [[nodiscard]] const SceneElement* find(std::string_view id) const;
    friend bool operator==(const Scene&, const Scene&) = default;
};

//! An interpretation holding only vis* atoms.
using VisAtomSet = Interpretation;

enum class ArgKind : std::uint8_t { id, integer, text, color };

struct VocabularyEntry {
    std::string_view     name;
    std::vector<ArgKind> args;
    bool                 defines_element = false;
};

//! The reserved predicates; see docs/vocabulary.md.
const std::vector<VocabularyEntry>& vocabulary();

[[nodiscard]] bool is_vis_atom(const GroundLiteral& l) noexcept;
VisAtomSet         project_vis(const Interpretation& interpretation);
//! @throws Error(vocabulary) naming the first atom outside the schemas.
void check_vocabulary(const VisAtomSet& atoms);

//! Hypergraph drawing: a node per individual, a labelled hub per literal
//! with numbered connectors to its arguments, one colour per predicate.
Scene generic_scene(const Interpretation& interpretation);

//! The internal engine, or a registered launch configuration when `launch`
//! is set.
struct VisSolver {
    const Registry* registry = nullptr;
    std::string     launch;
    EngineOptions   engine;
    RunOptions      run;
};

//! Solves the program together with the interpretation as facts and keeps
//! the vis* atoms of the first answer set.
//! @throws Error(visualization_unsat), Error(vocabulary) and engine or
//!         launch errors.
VisAtomSet eval_vis_program(const Program& vis_program, const Interpretation& interpretation,
                            const VisSolver& solver = {});
//! Parses first. @throws Error(syntax) with the first error diagnostic.
VisAtomSet eval_vis_program(std::string_view vis_source, Dialect dialect, const Interpretation& interpretation,
                            const VisSolver& solver = {});

//! @throws Error(vocabulary), Error(dangling_reference), Error(conflict).
Scene build_scene(const VisAtomSet& atoms);

//! SVG 1.1; one top-level element per scene element, ordered by (z, id).
std::string export_svg(const Scene& scene);

struct Edit {
    enum class Kind : std::uint8_t { move, remove, create, restyle, relabel };
    Kind        kind = Kind::move;
    std::string id;
    std::optional<std::int64_t> x; //!< move target or create position
    std::optional<std::int64_t> y;
    std::optional<std::int64_t> row; //!< move into a grid cell
    std::optional<std::int64_t> col;
    std::optional<std::string>  grid; //!< target grid, defaults to the current one
    std::optional<ElementKind>  element; //!< create
    //! create: w h (rect, ellipse, image), x1 y1 x2 y2 (line),
    //! rows cols cellw cellh (grid), x y pairs (polygon)
    std::vector<std::int64_t>   numbers;
    std::vector<std::string>    refs; //!< create: graph for nodes; from, to, graph for edges
    std::optional<std::string>  text; //!< label text, image path
    std::optional<std::string>  color;
    std::optional<std::int64_t> z;

    friend bool operator==(const Edit&, const Edit&) = default;
};

std::string_view          to_string(Edit::Kind k) noexcept;
std::optional<Edit::Kind> edit_kind_from_string(std::string_view s) noexcept;

//! Smallest change of the atom set that realises the edit. Moving a grid
//! member snaps to the cell under the target position.
//! @throws Error(dangling_reference), Error(conflict), Error(validation).
VisAtomSet apply_edit(const VisAtomSet& atoms, const Edit& edit);

struct AbductionProblem {
    Program                   vis_program;
    VisAtomSet                target_vis;
    std::vector<PredicateKey> abducibles;
    //! Candidate instances of the abducibles; other atoms are added as facts.
    Interpretation            domains;
};

//! Every tuple over the individuals of `interpretation` for each abducible.
Interpretation default_domains(const Interpretation& interpretation, const std::vector<PredicateKey>& abducibles);

//! An interpretation over the abducibles whose visualization equals the
//! target exactly.
//! @throws Error(abduction_unsat), Error(validation), Error(capacity), Error(cancelled).
Interpretation abduce(const AbductionProblem& problem, const VisSolver& solver = {});

} // namespace aspwb

#endif
