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

#ifndef ASPWB_TOOLS_HPP
#define ASPWB_TOOLS_HPP

// External grounders and solvers: the tool registry, piped execution and
// parsing of solver output.

#include <aspwb/model.hpp>

#include <atomic>
#include <chrono>
#include <filesystem>
#include <optional>
#include <shared_mutex>
#include <string>
#include <string_view>
#include <vector>

namespace aspwb {

enum class ToolKind : std::uint8_t { gringo, clasp, dlv, generic };
std::string_view        to_string(ToolKind k) noexcept;
std::optional<ToolKind> tool_kind_from_string(std::string_view s) noexcept;

//! How input files reach the first stage. automatic means file paths as
//! arguments for dlv and contents on standard input for every other kind.
enum class InputDelivery : std::uint8_t { automatic, standard_input, arguments };
std::string_view             to_string(InputDelivery d) noexcept;
std::optional<InputDelivery> input_delivery_from_string(std::string_view s) noexcept;

enum class OutputMode : std::uint8_t { raw, parse_interpretations };
std::string_view          to_string(OutputMode m) noexcept;
std::optional<OutputMode> output_mode_from_string(std::string_view s) noexcept;

enum class OutputFormat : std::uint8_t { clasp_like, dlv_like };

struct ToolConfiguration {
    std::string              id;
    std::string              executable_path;
    std::vector<std::string> default_args;
    ToolKind                 kind  = ToolKind::generic;
    InputDelivery            input = InputDelivery::automatic;

    [[nodiscard]] bool files_as_arguments() const noexcept {
        return input == InputDelivery::arguments || (input == InputDelivery::automatic && kind == ToolKind::dlv);
    }
    friend bool operator==(const ToolConfiguration&, const ToolConfiguration&) = default;
};

struct Pipeline {
    std::string              id;
    std::vector<std::string> stages; //!< tool ids

    friend bool operator==(const Pipeline&, const Pipeline&) = default;
};

struct LaunchConfiguration {
    std::string              id;
    std::vector<std::string> input_files;
    std::string              tool; //!< tool or pipeline id
    std::vector<std::string> extra_args; //!< appended to the last stage
    OutputMode               output_mode = OutputMode::raw;

    friend bool operator==(const LaunchConfiguration&, const LaunchConfiguration&) = default;
};

enum class Verdict : std::uint8_t { satisfiable, unsatisfiable, unknown };
std::string_view to_string(Verdict v) noexcept;

struct RunResult {
    std::vector<int>            exit_codes; //!< per stage; 128 + n when killed by signal n
    std::string                 raw_output;
    std::string                 raw_errors;
    std::vector<Interpretation> interpretations;
    Verdict                     verdict = Verdict::unknown;
    std::chrono::milliseconds   duration{0};
};

struct SolverOutput {
    std::vector<Interpretation> interpretations;
    Verdict                     verdict = Verdict::unknown;
};

//! Reads clasp-style ("Answer: k" followed by a literal line, then a verdict
//! token) or DLV-style ("{l1, l2}" per line) output.
//! @throws Error(format) naming the first line that fits neither.
SolverOutput parse_solver_output(std::string_view text, OutputFormat format);

OutputFormat output_format(ToolKind last_stage) noexcept;

//! Tool, pipeline and launch definitions. Reads may run concurrently; writes
//! are serialised and, when a file is attached, persisted by atomic rename.
class Registry {
public:
    Registry() = default;
    //! Loads `file` when it exists and persists every later mutation to it.
    explicit Registry(std::filesystem::path file);

    Registry(const Registry&)            = delete;
    Registry& operator=(const Registry&) = delete;

    void add_tool(ToolConfiguration t);
    void update_tool(ToolConfiguration t);
    void remove_tool(std::string_view id);
    void add_pipeline(Pipeline p);
    void update_pipeline(Pipeline p);
    void remove_pipeline(std::string_view id);
    void add_launch(LaunchConfiguration l);
    void update_launch(LaunchConfiguration l);
    void remove_launch(std::string_view id);

    [[nodiscard]] std::vector<ToolConfiguration>   tools() const;
    [[nodiscard]] std::vector<Pipeline>            pipelines() const;
    [[nodiscard]] std::vector<LaunchConfiguration> launches() const;
    [[nodiscard]] std::optional<LaunchConfiguration> launch(std::string_view id) const;

    //! The stages a tool or pipeline id stands for.
    //! @throws Error(not_found).
    [[nodiscard]] std::vector<ToolConfiguration> stages(std::string_view ref) const;

    //! Registry file text; see docs/registry-format.md.
    [[nodiscard]] std::string to_text() const;
    //! @throws Error(format) with the line number, Error(integrity).
    void load_text(std::string_view text);

private:
    struct Data {
        std::vector<ToolConfiguration>   tools;
        std::vector<Pipeline>            pipelines;
        std::vector<LaunchConfiguration> launches;
    };

    static std::string text_of(const Data& d);
    static void        check(const Data& d);
    template <typename Fn>
    void mutate(Fn&& fn);

    mutable std::shared_mutex            mutex_;
    Data                                 data_;
    std::optional<std::filesystem::path> file_;
};

struct RunOptions {
    std::chrono::milliseconds timeout{60000};
    //! Polled while the pipe runs; when set the pipe is killed, Error(cancelled).
    const std::atomic<bool>* cancel = nullptr;
};

//! Runs the stages as one pipe over the launch's input files.
//! @throws Error(validation), Error(launch) naming the stage,
//!         Error(tool_failure) with standard error as detail, Error(timeout),
//!         Error(cancelled), Error(io), Error(format).
RunResult run(const std::vector<ToolConfiguration>& stages, const LaunchConfiguration& launch,
              const RunOptions& opts = {});

//! Resolves launch.tool in the registry, then runs it.
RunResult run(const Registry& registry, const LaunchConfiguration& launch, const RunOptions& opts = {});

} // namespace aspwb

#endif
