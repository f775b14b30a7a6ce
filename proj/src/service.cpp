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

#include <aspwb/workbench.hpp>

#include <fstream>

#include <unistd.h>

namespace aspwb {

Dialect parse_dialect(std::string_view s) {
    if (auto d = dialect_from_string(s)) { return *d; }
    throw Error(ErrorCode::unknown_dialect, "unknown dialect '" + std::string(s) + "' (expected gringo or dlv)");
}

PredicateKey predicate_key_from_string(std::string_view s) {
    auto slash = s.rfind('/');
    if (slash == std::string_view::npos || slash == 0 || slash + 1 == s.size()) {
        throw Error(ErrorCode::validation, "expected name/arity, got '" + std::string(s) + "'");
    }
    PredicateKey k;
    k.name = std::string(s.substr(0, slash));
    for (char c : s.substr(slash + 1)) {
        if (c < '0' || c > '9') { throw Error(ErrorCode::validation, "bad arity in '" + std::string(s) + "'"); }
        k.arity = k.arity * 10 + static_cast<std::size_t>(c - '0');
    }
    return k;
}

int exit_code(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::syntax:
        case ErrorCode::safety:
        case ErrorCode::consistency:
        case ErrorCode::non_ground:
        case ErrorCode::vocabulary:
        case ErrorCode::dangling_reference:
        case ErrorCode::visualization_unsat:
        case ErrorCode::abduction_unsat: return 1;
        default: return 2;
    }
}

int http_status(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::not_found: return 404;
        case ErrorCode::conflict: return 409;
        case ErrorCode::visualization_unsat:
        case ErrorCode::abduction_unsat:
        case ErrorCode::capacity:
        case ErrorCode::dangling_reference: return 422;
        case ErrorCode::launch:
        case ErrorCode::tool_failure:
        case ErrorCode::format: return 502;
        case ErrorCode::timeout: return 504;
        case ErrorCode::cancelled: return 503;
        case ErrorCode::io:
        case ErrorCode::integrity:
        case ErrorCode::evaluation: return 500;
        default: return 400;
    }
}

namespace {

Program parse_or_throw(std::string_view source, Dialect dialect, const char* what) {
    auto parsed = parse(source, dialect);
    if (parsed.ok()) { return std::move(parsed.program); }
    std::string detail;
    const Diagnostic* first = nullptr;
    for (const auto& d : parsed.diagnostics) {
        if (d.severity != Severity::error) { continue; }
        if (first == nullptr) { first = &d; }
        detail += std::to_string(d.span.start_line) + ":" + std::to_string(d.span.start_col) + ": " + d.message + "\n";
    }
    throw Error(ErrorCode::syntax, std::string(what) + " does not parse: " + first->message, detail);
}

void label_answers(std::vector<Interpretation>& sets) {
    for (std::size_t i = 0; i < sets.size(); ++i) { sets[i].label = "answer-" + std::to_string(i + 1); }
}

class TempSource {
public:
    TempSource(std::string_view text, Dialect d) {
        static std::atomic<unsigned> counter{0};
        path_ = std::filesystem::temp_directory_path() /
                ("aspwb-src-" + std::to_string(::getpid()) + "-" + std::to_string(counter++) +
                 (d == Dialect::dlv ? ".dl" : ".lp"));
        std::ofstream out(path_, std::ios::binary);
        out << text;
        if (!out.flush()) { throw Error(ErrorCode::io, "cannot write " + path_.string()); }
    }
    TempSource(const TempSource&)            = delete;
    TempSource& operator=(const TempSource&) = delete;
    ~TempSource() {
        std::error_code ec;
        std::filesystem::remove(path_, ec);
    }
    [[nodiscard]] std::string path() const { return path_.string(); }

private:
    std::filesystem::path path_;
};

} // namespace

SolveResult solve_request(const Registry& registry, const SolveRequest& request) {
    SolveResult result;
    if (request.launch.empty()) {
        auto program       = parse_or_throw(request.source, request.dialect, "the program");
        result.answer_sets = solve(program, request.limit);
        result.verdict     = result.answer_sets.empty() ? Verdict::unsatisfiable : Verdict::satisfiable;
        label_answers(result.answer_sets);
        return result;
    }
    auto launch = registry.launch(request.launch);
    if (!launch) { throw Error(ErrorCode::launch, "unknown launch configuration '" + request.launch + "'"); }
    std::optional<TempSource> temp;
    if (!request.input_files.empty()) { launch->input_files = request.input_files; }
    else if (!request.source.empty()) {
        temp.emplace(request.source, request.dialect);
        launch->input_files = {temp->path()};
    }
    launch->output_mode = request.raw ? OutputMode::raw : OutputMode::parse_interpretations;
    auto run            = aspwb::run(registry, *launch);
    result.answer_sets  = run.interpretations;
    if (request.limit && result.answer_sets.size() > *request.limit) { result.answer_sets.resize(*request.limit); }
    label_answers(result.answer_sets);
    result.verdict = run.verdict;
    result.run     = std::move(run);
    return result;
}

Json Visualization::document() const {
    Json atom_list = Json::array();
    for (const auto& a : atoms) { atom_list.push_back(to_string(a)); }
    return {{"generic", generic}, {"scene", to_json(scene)}, {"atoms", atom_list}};
}

Visualization visualize(const Interpretation& interpretation, std::string_view program, Dialect dialect,
                        const VisSolver& solver) {
    Visualization v;
    if (program.empty()) {
        v.generic = true;
        v.scene   = generic_scene(interpretation);
        return v;
    }
    v.atoms = eval_vis_program(parse_or_throw(program, dialect, "the visualization program"), interpretation, solver);
    v.scene = build_scene(v.atoms);
    return v;
}

AbductionResult abduce_request(const AbductionRequest& request, const VisSolver& solver) {
    if (request.abducibles.empty()) { throw Error(ErrorCode::validation, "abduction needs at least one abducible predicate"); }
    auto program = parse_or_throw(request.program, request.dialect, "the visualization program");
    auto target  = eval_vis_program(program, request.interpretation, solver);
    for (const auto& e : request.edits) { target = apply_edit(target, e); }
    auto domains = request.domains ? *request.domains : default_domains(request.interpretation, request.abducibles);
    auto found   = abduce({program, target, request.abducibles, domains}, solver);

    // atoms outside the abducibles carry over unchanged
    std::set<PredicateKey> abducible(request.abducibles.begin(), request.abducibles.end());
    Interpretation         result = found;
    for (const auto& l : request.interpretation) {
        if (!abducible.count(l.key())) { result.insert(l); }
    }
    AbductionResult out{result, diff(request.interpretation, result), target};
    return out;
}

} // namespace aspwb
