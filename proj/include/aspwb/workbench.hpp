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

#ifndef ASPWB_WORKBENCH_HPP
#define ASPWB_WORKBENCH_HPP

// Operations shared by the command line and the HTTP service, the service
// itself, and the command line entry point.

#include <aspwb/json.hpp>
#include <aspwb/workspace.hpp>

#include <iosfwd>
#include <memory>

namespace aspwb {

//! dialect_from_string that throws Error(unknown_dialect).
Dialect parse_dialect(std::string_view s);

//! "name/arity". @throws Error(validation).
PredicateKey predicate_key_from_string(std::string_view s);

//! Exit status of the command line for an error: 1 for findings about the
//! input (syntax, safety, vocabulary, unsat visualizations and abductions),
//! 2 for usage and environment problems.
int exit_code(ErrorCode code) noexcept;
//! HTTP status for an error response.
int http_status(ErrorCode code) noexcept;

struct SolveRequest {
    std::string                source; //!< internal engine
    Dialect                    dialect = Dialect::gringo;
    std::optional<std::size_t> limit;
    std::string                launch;      //!< a launch configuration instead of the engine
    std::vector<std::string>   input_files; //!< overrides the launch's files
    bool                       raw = false; //!< launch: keep the tool's output unparsed
};

struct SolveResult {
    std::vector<Interpretation> answer_sets; //!< labelled answer-1, answer-2, ...
    Verdict                     verdict = Verdict::unknown;
    std::optional<RunResult>    run;         //!< launches only
};

//! @throws Error(syntax) with the diagnostics as detail when the source does
//!         not parse; engine and launch errors as thrown.
SolveResult solve_request(const Registry& registry, const SolveRequest& request);

struct Visualization {
    bool       generic = false;
    VisAtomSet atoms;
    Scene      scene;

    //! {"generic", "scene", "atoms"}; the stored form of a scene.
    [[nodiscard]] Json document() const;
};

//! The generic scene when `program` is empty.
Visualization visualize(const Interpretation& interpretation, std::string_view program, Dialect dialect,
                        const VisSolver& solver = {});

struct AbductionRequest {
    Interpretation            interpretation;
    std::string               program;
    Dialect                   dialect = Dialect::gringo;
    std::vector<PredicateKey> abducibles;
    std::vector<Edit>         edits;
    std::optional<Interpretation> domains; //!< default: all tuples over the individuals
};

struct AbductionResult {
    Interpretation     interpretation;
    InterpretationDiff diff;   //!< original against result
    VisAtomSet         target; //!< edited vis atoms
};

//! "move queen(2) row=2 col=3", "delete b", "restyle b color=red z=2",
//! "relabel b text=\"two words\"", "create c element=rect numbers=10,10 x=1 y=2";
//! create takes ref=ID once per referenced element.
//! @throws Error(validation).
Edit edit_from_text(std::string_view text);

AbductionResult abduce_request(const AbductionRequest& request, const VisSolver& solver = {});

struct ServerOptions {
    std::string           host = "127.0.0.1";
    int                   port = 0; //!< 0 picks a free port
    std::filesystem::path static_dir;
};

//! The local HTTP service. Routes are listed in docs/http.md.
class Server {
public:
    Server(Workspace& workspace, ServerOptions options);
    ~Server();
    Server(const Server&)            = delete;
    Server& operator=(const Server&) = delete;

    //! Binds and returns the port. @throws Error(io) when the port is busy.
    int bind();
    //! Serves until stop(); call bind() first.
    void listen();
    void stop();

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

//! The aspwb command line. Returns the exit status.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace aspwb

#endif
