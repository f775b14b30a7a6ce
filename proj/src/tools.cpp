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
#include <aspwb/tools.hpp>

#include <algorithm>
#include <cctype>
#include <cerrno>
#include <csignal>
#include <cstring>
#include <fstream>
#include <mutex>
#include <sstream>
#include <thread>

#include <fcntl.h>
#include <poll.h>
#include <spawn.h>
#include <sys/wait.h>
#include <unistd.h>

extern char** environ;

namespace aspwb {

std::string_view to_string(ToolKind k) noexcept {
    switch (k) {
        case ToolKind::gringo: return "gringo";
        case ToolKind::clasp: return "clasp";
        case ToolKind::dlv: return "dlv";
        case ToolKind::generic: break;
    }
    return "generic";
}

std::optional<ToolKind> tool_kind_from_string(std::string_view s) noexcept {
    for (auto k : {ToolKind::gringo, ToolKind::clasp, ToolKind::dlv, ToolKind::generic}) {
        if (to_string(k) == s) { return k; }
    }
    return std::nullopt;
}

std::string_view to_string(InputDelivery d) noexcept {
    switch (d) {
        case InputDelivery::standard_input: return "stdin";
        case InputDelivery::arguments: return "arguments";
        case InputDelivery::automatic: break;
    }
    return "automatic";
}

std::optional<InputDelivery> input_delivery_from_string(std::string_view s) noexcept {
    for (auto d : {InputDelivery::automatic, InputDelivery::standard_input, InputDelivery::arguments}) {
        if (to_string(d) == s) { return d; }
    }
    return std::nullopt;
}

std::string_view to_string(OutputMode m) noexcept {
    return m == OutputMode::raw ? "raw" : "parse_interpretations";
}

std::optional<OutputMode> output_mode_from_string(std::string_view s) noexcept {
    if (s == "raw") { return OutputMode::raw; }
    if (s == "parse_interpretations") { return OutputMode::parse_interpretations; }
    return std::nullopt;
}

std::string_view to_string(Verdict v) noexcept {
    switch (v) {
        case Verdict::satisfiable: return "satisfiable";
        case Verdict::unsatisfiable: return "unsatisfiable";
        case Verdict::unknown: break;
    }
    return "unknown";
}

OutputFormat output_format(ToolKind last_stage) noexcept {
    return last_stage == ToolKind::dlv ? OutputFormat::dlv_like : OutputFormat::clasp_like;
}

// ---------------------------------------------------------------------------
// Solver output
// ---------------------------------------------------------------------------
namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) { s.remove_prefix(1); }
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) { s.remove_suffix(1); }
    return s;
}

std::vector<std::string_view> lines_of(std::string_view text) {
    std::vector<std::string_view> out;
    while (!text.empty()) {
        auto nl = text.find('\n');
        out.push_back(text.substr(0, nl));
        if (nl == std::string_view::npos) { break; }
        text.remove_prefix(nl + 1);
    }
    return out;
}

[[noreturn]] void format_error(std::size_t line, const std::string& what) {
    throw Error(ErrorCode::format, "line " + std::to_string(line) + ": " + what);
}

Interpretation literals_on(std::string_view text, std::size_t line, Dialect d) {
    try {
        return parse_interpretation(text, d);
    }
    catch (const Error& e) {
        format_error(line, e.what());
    }
}

bool starts_with_any(std::string_view s, std::initializer_list<std::string_view> prefixes) {
    return std::any_of(prefixes.begin(), prefixes.end(), [&](std::string_view p) { return s.starts_with(p); });
}

// "Models       : 1+", "CPU Time     : 0.001s"
bool is_statistic(std::string_view s) {
    auto colon = s.find(':');
    if (colon == std::string_view::npos || colon == 0) { return false; }
    auto key = trim(s.substr(0, colon));
    if (key.empty() || !std::isalpha(static_cast<unsigned char>(key.front()))) { return false; }
    return std::all_of(key.begin(), key.end(), [](char c) {
        return std::isalnum(static_cast<unsigned char>(c)) || c == ' ' || c == '-' || c == '_' || c == '(' || c == ')';
    });
}

SolverOutput parse_clasp_like(std::string_view text) {
    SolverOutput out;
    auto         lines  = lines_of(text);
    bool         expect = false;
    bool         seen   = false;
    for (std::size_t i = 0; i < lines.size(); ++i) {
        auto t = trim(lines[i]);
        if (expect) {
            out.interpretations.push_back(literals_on(t, i + 1, Dialect::gringo));
            expect = false;
            continue;
        }
        if (t.empty()) { continue; }
        if (t.starts_with("Answer:")) {
            auto n = trim(t.substr(7));
            if (n.empty() || !std::all_of(n.begin(), n.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })) {
                format_error(i + 1, "malformed answer header '" + std::string(t) + "'");
            }
            expect = true;
        }
        else if (t == "SATISFIABLE" || t == "OPTIMUM FOUND") {
            out.verdict = Verdict::satisfiable;
            seen        = true;
        }
        else if (t == "UNSATISFIABLE") {
            out.verdict = Verdict::unsatisfiable;
            seen        = true;
        }
        else if (t == "UNKNOWN") {
            seen = true;
        }
        else if (starts_with_any(t, {"clasp version", "clingo version", "gringo version", "Reading from", "Solving...",
                                     "Grounding...", "Optimization", "Progression", "%", "*** "}) ||
                 is_statistic(t)) {
            continue;
        }
        else {
            format_error(i + 1, "unexpected text '" + std::string(t) + "'");
        }
    }
    if (expect) { out.interpretations.emplace_back(); } // header on the last line: empty answer set
    if (!seen && !out.interpretations.empty()) { out.verdict = Verdict::satisfiable; }
    return out;
}

bool mentions_failure(std::string_view t) {
    std::string lower(t);
    std::transform(lower.begin(), lower.end(), lower.begin(), [](unsigned char c) { return std::tolower(c); });
    for (const char* s : {"incoherent", "inconsistent", "unsatisfiable", "no answer set", "no model"}) {
        if (lower.find(s) != std::string::npos) { return true; }
    }
    return false;
}

SolverOutput parse_dlv_like(std::string_view text) {
    SolverOutput out;
    bool         failed = false;
    auto         lines  = lines_of(text);
    for (std::size_t i = 0; i < lines.size(); ++i) {
        auto t = trim(lines[i]);
        if (t.empty() || t.starts_with("DLV ") || t.starts_with("dlv ") || t.starts_with("Cost ")) { continue; }
        if (t.starts_with("Best model:")) { t = trim(t.substr(11)); }
        if (t.starts_with('{')) {
            if (!t.ends_with('}')) { format_error(i + 1, "missing closing '}'"); }
            out.interpretations.push_back(literals_on(t, i + 1, Dialect::dlv));
        }
        else if (mentions_failure(t)) {
            failed = true;
        }
        else {
            format_error(i + 1, "unexpected text '" + std::string(t) + "'");
        }
    }
    if (!out.interpretations.empty()) { out.verdict = Verdict::satisfiable; }
    else if (failed) { out.verdict = Verdict::unsatisfiable; }
    return out;
}

} // namespace

SolverOutput parse_solver_output(std::string_view text, OutputFormat format) {
    return format == OutputFormat::clasp_like ? parse_clasp_like(text) : parse_dlv_like(text);
}

// ---------------------------------------------------------------------------
// Registry
// ---------------------------------------------------------------------------
namespace {

std::string quote_word(const std::string& w) {
    bool plain = !w.empty() && std::none_of(w.begin(), w.end(), [](char c) {
        return std::isspace(static_cast<unsigned char>(c)) || c == '"' || c == '\\' || c == '#' || c == ';';
    });
    if (plain) { return w; }
    std::string out = "\"";
    for (char c : w) {
        if (c == '"' || c == '\\') { out += '\\'; }
        out += c;
    }
    return out + "\"";
}

std::string join_words(const std::vector<std::string>& ws) {
    std::string out;
    for (const auto& w : ws) { out += (out.empty() ? "" : " ") + quote_word(w); }
    return out;
}

std::vector<std::string> split_words(std::string_view s, std::size_t line) {
    std::vector<std::string> out;
    std::size_t              i = 0;
    while (i < s.size()) {
        if (std::isspace(static_cast<unsigned char>(s[i]))) {
            ++i;
            continue;
        }
        std::string w;
        if (s[i] == '"') {
            ++i;
            for (;;) {
                if (i >= s.size()) { format_error(line, "unterminated quoted word"); }
                if (s[i] == '"') { break; }
                if (s[i] == '\\' && i + 1 < s.size()) { ++i; }
                w += s[i++];
            }
            ++i;
        }
        else {
            while (i < s.size() && !std::isspace(static_cast<unsigned char>(s[i]))) { w += s[i++]; }
        }
        out.push_back(std::move(w));
    }
    return out;
}

template <typename T>
auto find_id(std::vector<T>& v, std::string_view id) {
    return std::find_if(v.begin(), v.end(), [&](const T& x) { return x.id == id; });
}

template <typename T>
auto find_id(const std::vector<T>& v, std::string_view id) {
    return std::find_if(v.begin(), v.end(), [&](const T& x) { return x.id == id; });
}

void check_id(const std::string& id, const char* what) {
    bool ok = !id.empty() && std::all_of(id.begin(), id.end(), [](char c) {
        return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-' || c == '.';
    });
    if (!ok) { throw Error(ErrorCode::validation, std::string("invalid ") + what + " id '" + id + "'"); }
}

} // namespace

Registry::Registry(std::filesystem::path file) {
    if (std::filesystem::exists(file)) {
        std::ifstream in(file, std::ios::binary);
        if (!in) { throw Error(ErrorCode::io, "cannot read registry " + file.string()); }
        std::stringstream ss;
        ss << in.rdbuf();
        load_text(ss.str()); // no file attached yet, so nothing is written back
    }
    file_ = std::move(file);
}

void Registry::check(const Data& d) {
    for (const auto& t : d.tools) {
        check_id(t.id, "tool");
        if (t.executable_path.empty()) {
            throw Error(ErrorCode::validation, "tool '" + t.id + "' has an empty executable path");
        }
    }
    for (const auto& p : d.pipelines) {
        check_id(p.id, "pipeline");
        if (p.stages.empty()) { throw Error(ErrorCode::validation, "pipeline '" + p.id + "' has no stages"); }
        for (const auto& s : p.stages) {
            if (find_id(d.tools, s) == d.tools.end()) {
                throw Error(ErrorCode::integrity, "pipeline '" + p.id + "' references unknown tool '" + s + "'");
            }
        }
    }
    for (const auto& l : d.launches) {
        check_id(l.id, "launch");
        if (l.input_files.empty()) {
            throw Error(ErrorCode::validation, "launch '" + l.id + "' needs at least one input file");
        }
        if (find_id(d.tools, l.tool) == d.tools.end() && find_id(d.pipelines, l.tool) == d.pipelines.end()) {
            throw Error(ErrorCode::integrity, "launch '" + l.id + "' references unknown tool '" + l.tool + "'");
        }
    }
    // tools and pipelines share one namespace since launches refer to either
    std::vector<std::string> ids;
    for (const auto& t : d.tools) { ids.push_back(t.id); }
    for (const auto& p : d.pipelines) { ids.push_back(p.id); }
    std::sort(ids.begin(), ids.end());
    if (auto it = std::adjacent_find(ids.begin(), ids.end()); it != ids.end()) {
        throw Error(ErrorCode::conflict, "duplicate tool or pipeline id '" + *it + "'");
    }
    std::vector<std::string> lids;
    for (const auto& l : d.launches) { lids.push_back(l.id); }
    std::sort(lids.begin(), lids.end());
    if (auto it = std::adjacent_find(lids.begin(), lids.end()); it != lids.end()) {
        throw Error(ErrorCode::conflict, "duplicate launch id '" + *it + "'");
    }
}

template <typename Fn>
void Registry::mutate(Fn&& fn) {
    std::unique_lock lock(mutex_);
    Data             next = data_;
    fn(next);
    check(next);
    if (file_) {
        std::error_code ec;
        if (file_->has_parent_path()) { std::filesystem::create_directories(file_->parent_path(), ec); }
        auto tmp = *file_;
        tmp += ".tmp" + std::to_string(::getpid());
        {
            std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
            out << text_of(next);
            if (!out) { throw Error(ErrorCode::io, "cannot write " + tmp.string()); }
        }
        std::filesystem::rename(tmp, *file_, ec);
        if (ec) { throw Error(ErrorCode::io, "cannot replace " + file_->string() + ": " + ec.message()); }
    }
    data_ = std::move(next);
}

void Registry::add_tool(ToolConfiguration t) {
    mutate([&](Data& d) { d.tools.push_back(std::move(t)); });
}

void Registry::update_tool(ToolConfiguration t) {
    mutate([&](Data& d) {
        auto it = find_id(d.tools, t.id);
        if (it == d.tools.end()) { throw Error(ErrorCode::not_found, "no tool '" + t.id + "'"); }
        *it = std::move(t);
    });
}

void Registry::remove_tool(std::string_view id) {
    mutate([&](Data& d) {
        auto it = find_id(d.tools, id);
        if (it == d.tools.end()) { throw Error(ErrorCode::not_found, "no tool '" + std::string(id) + "'"); }
        d.tools.erase(it);
    });
}

void Registry::add_pipeline(Pipeline p) {
    mutate([&](Data& d) { d.pipelines.push_back(std::move(p)); });
}

void Registry::update_pipeline(Pipeline p) {
    mutate([&](Data& d) {
        auto it = find_id(d.pipelines, p.id);
        if (it == d.pipelines.end()) { throw Error(ErrorCode::not_found, "no pipeline '" + p.id + "'"); }
        *it = std::move(p);
    });
}

void Registry::remove_pipeline(std::string_view id) {
    mutate([&](Data& d) {
        auto it = find_id(d.pipelines, id);
        if (it == d.pipelines.end()) { throw Error(ErrorCode::not_found, "no pipeline '" + std::string(id) + "'"); }
        d.pipelines.erase(it);
    });
}

void Registry::add_launch(LaunchConfiguration l) {
    mutate([&](Data& d) { d.launches.push_back(std::move(l)); });
}

void Registry::update_launch(LaunchConfiguration l) {
    mutate([&](Data& d) {
        auto it = find_id(d.launches, l.id);
        if (it == d.launches.end()) { throw Error(ErrorCode::not_found, "no launch '" + l.id + "'"); }
        *it = std::move(l);
    });
}

void Registry::remove_launch(std::string_view id) {
    mutate([&](Data& d) {
        auto it = find_id(d.launches, id);
        if (it == d.launches.end()) { throw Error(ErrorCode::not_found, "no launch '" + std::string(id) + "'"); }
        d.launches.erase(it);
    });
}

std::vector<ToolConfiguration> Registry::tools() const {
    std::shared_lock lock(mutex_);
    return data_.tools;
}

std::vector<Pipeline> Registry::pipelines() const {
    std::shared_lock lock(mutex_);
    return data_.pipelines;
}

std::vector<LaunchConfiguration> Registry::launches() const {
    std::shared_lock lock(mutex_);
    return data_.launches;
}

std::optional<LaunchConfiguration> Registry::launch(std::string_view id) const {
    std::shared_lock lock(mutex_);
    auto             it = find_id(data_.launches, id);
    if (it == data_.launches.end()) { return std::nullopt; }
    return *it;
}

std::vector<ToolConfiguration> Registry::stages(std::string_view ref) const {
    std::shared_lock lock(mutex_);
    if (auto t = find_id(data_.tools, ref); t != data_.tools.end()) { return {*t}; }
    if (auto p = find_id(data_.pipelines, ref); p != data_.pipelines.end()) {
        std::vector<ToolConfiguration> out;
        for (const auto& s : p->stages) { out.push_back(*find_id(data_.tools, s)); }
        return out;
    }
    throw Error(ErrorCode::not_found, "no tool or pipeline '" + std::string(ref) + "'");
}

std::string Registry::text_of(const Data& d) {
    std::string out = "# aspwb tool registry\n";
    for (const auto& t : d.tools) {
        out += "\n[tool " + t.id + "]\n";
        out += "path = " + quote_word(t.executable_path) + "\n";
        out += "kind = " + std::string(to_string(t.kind)) + "\n";
        if (!t.default_args.empty()) { out += "args = " + join_words(t.default_args) + "\n"; }
        if (t.input != InputDelivery::automatic) { out += "input = " + std::string(to_string(t.input)) + "\n"; }
    }
    for (const auto& p : d.pipelines) {
        out += "\n[pipeline " + p.id + "]\n";
        out += "stages = " + join_words(p.stages) + "\n";
    }
    for (const auto& l : d.launches) {
        out += "\n[launch " + l.id + "]\n";
        out += "files = " + join_words(l.input_files) + "\n";
        out += "tool = " + l.tool + "\n";
        if (!l.extra_args.empty()) { out += "args = " + join_words(l.extra_args) + "\n"; }
        out += "output = " + std::string(to_string(l.output_mode)) + "\n";
    }
    return out;
}

std::string Registry::to_text() const {
    std::shared_lock lock(mutex_);
    return text_of(data_);
}

void Registry::load_text(std::string_view text) {
    Data        d;
    enum class Section { none, tool, pipeline, launch } section = Section::none;
    auto        lines = lines_of(text);
    for (std::size_t i = 0; i < lines.size(); ++i) {
        auto t  = trim(lines[i]);
        auto ln = i + 1;
        if (t.empty() || t.front() == '#' || t.front() == ';') { continue; }
        if (t.front() == '[') {
            if (t.back() != ']') { format_error(ln, "malformed section header"); }
            auto words = split_words(t.substr(1, t.size() - 2), ln);
            if (words.size() != 2) { format_error(ln, "section header needs a type and an id"); }
            if (words[0] == "tool") {
                section = Section::tool;
                d.tools.push_back({words[1], {}, {}, ToolKind::generic, InputDelivery::automatic});
            }
            else if (words[0] == "pipeline") {
                section = Section::pipeline;
                d.pipelines.push_back({words[1], {}});
            }
            else if (words[0] == "launch") {
                section = Section::launch;
                d.launches.push_back({words[1], {}, {}, {}, OutputMode::raw});
            }
            else {
                format_error(ln, "unknown section type '" + words[0] + "'");
            }
            continue;
        }
        auto eq = t.find('=');
        if (eq == std::string_view::npos) { format_error(ln, "expected 'key = value'"); }
        auto key   = std::string(trim(t.substr(0, eq)));
        auto value = trim(t.substr(eq + 1));
        auto bad   = [&] { format_error(ln, "unknown key '" + key + "' in this section"); };
        auto single = [&] {
            auto w = split_words(value, ln);
            if (w.size() != 1) { format_error(ln, "'" + key + "' takes exactly one value"); }
            return w.front();
        };
        switch (section) {
            case Section::none: format_error(ln, "key outside of a section");
            case Section::tool: {
                auto& tool = d.tools.back();
                if (key == "path") { tool.executable_path = single(); }
                else if (key == "args") { tool.default_args = split_words(value, ln); }
                else if (key == "kind") {
                    auto k = tool_kind_from_string(single());
                    if (!k) { format_error(ln, "unknown tool kind '" + std::string(value) + "'"); }
                    tool.kind = *k;
                }
                else if (key == "input") {
                    auto k = input_delivery_from_string(single());
                    if (!k) { format_error(ln, "unknown input delivery '" + std::string(value) + "'"); }
                    tool.input = *k;
                }
                else { bad(); }
                break;
            }
            case Section::pipeline:
                if (key == "stages") { d.pipelines.back().stages = split_words(value, ln); }
                else { bad(); }
                break;
            case Section::launch: {
                auto& l = d.launches.back();
                if (key == "files") { l.input_files = split_words(value, ln); }
                else if (key == "tool") { l.tool = single(); }
                else if (key == "args") { l.extra_args = split_words(value, ln); }
                else if (key == "output") {
                    auto m = output_mode_from_string(single());
                    if (!m) { format_error(ln, "unknown output mode '" + std::string(value) + "'"); }
                    l.output_mode = *m;
                }
                else { bad(); }
                break;
            }
        }
    }
    mutate([&](Data& target) { target = std::move(d); });
}

// ---------------------------------------------------------------------------
// Running pipes
// ---------------------------------------------------------------------------
namespace {

class Fd {
public:
    Fd() = default;
    explicit Fd(int fd)
        : fd_(fd) {}
    Fd(Fd&& o) noexcept
        : fd_(std::exchange(o.fd_, -1)) {}
    Fd& operator=(Fd&& o) noexcept {
        if (this != &o) {
            reset();
            fd_ = std::exchange(o.fd_, -1);
        }
        return *this;
    }
    Fd(const Fd&)            = delete;
    Fd& operator=(const Fd&) = delete;
    ~Fd() { reset(); }

    void reset() {
        if (fd_ >= 0) { ::close(fd_); }
        fd_ = -1;
    }
    [[nodiscard]] int  get() const { return fd_; }
    [[nodiscard]] bool open() const { return fd_ >= 0; }

private:
    int fd_ = -1;
};

struct Pipe {
    Fd read;
    Fd write;
};

Pipe make_pipe() {
    int fds[2];
    if (::pipe2(fds, O_CLOEXEC) != 0) { throw Error(ErrorCode::io, std::string("pipe: ") + std::strerror(errno)); }
    return {Fd(fds[0]), Fd(fds[1])};
}

void set_nonblocking(const Fd& fd) { ::fcntl(fd.get(), F_SETFL, ::fcntl(fd.get(), F_GETFL) | O_NONBLOCK); }

std::optional<std::string> resolve_executable(const std::string& path) {
    if (path.find('/') != std::string::npos) {
        if (::access(path.c_str(), X_OK) == 0 && !std::filesystem::is_directory(path)) { return path; }
        return std::nullopt;
    }
    const char* env = std::getenv("PATH");
    std::string dirs = env != nullptr ? env : "/usr/local/bin:/usr/bin:/bin";
    std::size_t start = 0;
    while (start <= dirs.size()) {
        auto        end = dirs.find(':', start);
        std::string dir = dirs.substr(start, end == std::string::npos ? std::string::npos : end - start);
        auto        candidate = (dir.empty() ? std::string(".") : dir) + "/" + path;
        if (::access(candidate.c_str(), X_OK) == 0 && !std::filesystem::is_directory(candidate)) { return candidate; }
        if (end == std::string::npos) { break; }
        start = end + 1;
    }
    return std::nullopt;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) { throw Error(ErrorCode::io, "cannot read input file '" + path + "'"); }
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string stage_name(std::size_t i, const ToolConfiguration& t) {
    return "stage " + std::to_string(i + 1) + " ('" + t.id + "')";
}

int exit_code_of(int status) {
    if (WIFEXITED(status)) { return WEXITSTATUS(status); }
    if (WIFSIGNALED(status)) { return 128 + WTERMSIG(status); }
    return -1;
}

// Children get SIGPIPE back through POSIX_SPAWN_SETSIGDEF.
void ignore_sigpipe() {
    static std::once_flag once;
    std::call_once(once, [] { std::signal(SIGPIPE, SIG_IGN); });
}

class Children {
public:
    ~Children() { kill_all(); }

    void add(pid_t pid) {
        pids_.push_back(pid);
        codes_.push_back(std::nullopt);
    }
    [[nodiscard]] pid_t group() const { return pids_.empty() ? 0 : pids_.front(); }

    //! Reaps what has exited; true when all have.
    bool reap() {
        bool all = true;
        for (std::size_t i = 0; i < pids_.size(); ++i) {
            if (codes_[i]) { continue; }
            int   status = 0;
            pid_t r      = ::waitpid(pids_[i], &status, WNOHANG);
            if (r == pids_[i]) { codes_[i] = exit_code_of(status); }
            else { all = false; }
        }
        return all;
    }

    void kill_all() {
        if (pids_.empty()) { return; }
        ::kill(-group(), SIGKILL);
        for (std::size_t i = 0; i < pids_.size(); ++i) {
            if (codes_[i]) { continue; }
            ::kill(pids_[i], SIGKILL);
            int status = 0;
            while (::waitpid(pids_[i], &status, 0) < 0 && errno == EINTR) {}
            codes_[i] = exit_code_of(status);
        }
    }

    [[nodiscard]] std::vector<int> codes() const {
        std::vector<int> out;
        for (const auto& c : codes_) { out.push_back(c.value_or(-1)); }
        return out;
    }

private:
    std::vector<pid_t>              pids_;
    std::vector<std::optional<int>> codes_;
};

} // namespace

RunResult run(const std::vector<ToolConfiguration>& stages, const LaunchConfiguration& launch, const RunOptions& opts) {
    if (launch.input_files.empty()) {
        throw Error(ErrorCode::validation, "launch '" + launch.id + "' needs at least one input file");
    }
    if (stages.empty()) { throw Error(ErrorCode::validation, "launch '" + launch.id + "' has no stages"); }
    ignore_sigpipe();
    auto start = std::chrono::steady_clock::now();

    std::vector<std::string> exes;
    for (std::size_t i = 0; i < stages.size(); ++i) {
        auto exe = resolve_executable(stages[i].executable_path);
        if (!exe) {
            throw Error(ErrorCode::launch, stage_name(i, stages[i]) + ": executable '" + stages[i].executable_path +
                                               "' not found or not executable");
        }
        exes.push_back(*exe);
    }
    bool        by_args = stages.front().files_as_arguments();
    std::string input;
    for (const auto& f : launch.input_files) {
        if (by_args) {
            if (::access(f.c_str(), R_OK) != 0) { throw Error(ErrorCode::io, "cannot read input file '" + f + "'"); }
        }
        else {
            input += read_file(f);
        }
    }

    // stdin of stage 0, the links between stages, stdout of the last stage
    std::vector<Pipe> links;
    for (std::size_t i = 0; i <= stages.size(); ++i) { links.push_back(make_pipe()); }
    std::vector<Pipe> errs;
    for (std::size_t i = 0; i < stages.size(); ++i) { errs.push_back(make_pipe()); }

    Children children;
    for (std::size_t i = 0; i < stages.size(); ++i) {
        std::vector<std::string> args{exes[i]};
        args.insert(args.end(), stages[i].default_args.begin(), stages[i].default_args.end());
        if (i + 1 == stages.size()) { args.insert(args.end(), launch.extra_args.begin(), launch.extra_args.end()); }
        if (i == 0 && by_args) { args.insert(args.end(), launch.input_files.begin(), launch.input_files.end()); }
        std::vector<char*> argv;
        for (auto& a : args) { argv.push_back(a.data()); }
        argv.push_back(nullptr);

        posix_spawn_file_actions_t fa;
        posix_spawn_file_actions_init(&fa);
        if (i == 0 && by_args) { posix_spawn_file_actions_addopen(&fa, 0, "/dev/null", O_RDONLY, 0); }
        else { posix_spawn_file_actions_adddup2(&fa, links[i].read.get(), 0); }
        posix_spawn_file_actions_adddup2(&fa, links[i + 1].write.get(), 1);
        posix_spawn_file_actions_adddup2(&fa, errs[i].write.get(), 2);

        posix_spawnattr_t attr;
        posix_spawnattr_init(&attr);
        sigset_t def;
        sigemptyset(&def);
        sigaddset(&def, SIGPIPE);
        sigset_t mask;
        sigemptyset(&mask);
        posix_spawnattr_setsigdefault(&attr, &def);
        posix_spawnattr_setsigmask(&attr, &mask);
        posix_spawnattr_setpgroup(&attr, children.group());
        posix_spawnattr_setflags(&attr, POSIX_SPAWN_SETSIGDEF | POSIX_SPAWN_SETSIGMASK | POSIX_SPAWN_SETPGROUP);

        pid_t pid = 0;
        int   rc  = ::posix_spawn(&pid, exes[i].c_str(), &fa, &attr, argv.data(), environ);
        posix_spawn_file_actions_destroy(&fa);
        posix_spawnattr_destroy(&attr);
        if (rc != 0) {
            throw Error(ErrorCode::launch, stage_name(i, stages[i]) + ": cannot start '" + exes[i] +
                                               "': " + std::strerror(rc));
        }
        children.add(pid);
    }

    // keep only the parent's ends
    Fd in = std::move(links.front().write);
    Fd out = std::move(links.back().read);
    links.clear();
    std::vector<Fd> err_fds;
    for (auto& e : errs) { err_fds.push_back(std::move(e.read)); }
    errs.clear();
    if (by_args || input.empty()) { in.reset(); }
    for (const auto* fd : {&in, &out}) {
        if (fd->open()) { set_nonblocking(*fd); }
    }
    for (const auto& e : err_fds) { set_nonblocking(e); }

    RunResult                res;
    std::vector<std::string> err_text(stages.size());
    std::size_t              written = 0;
    auto                     deadline = start + opts.timeout;
    auto                     interrupted = [&]() -> std::optional<Error> {
        if (opts.cancel != nullptr && opts.cancel->load()) {
            return Error(ErrorCode::cancelled, "launch '" + launch.id + "' cancelled");
        }
        if (std::chrono::steady_clock::now() >= deadline) {
            return Error(ErrorCode::timeout, "launch '" + launch.id + "' exceeded the timeout of " +
                                                 std::to_string(opts.timeout.count()) + " ms");
        }
        return std::nullopt;
    };

    std::vector<char> buf(1 << 16);
    auto              drain = [&](Fd& fd, std::string& sink) {
        for (;;) {
            auto n = ::read(fd.get(), buf.data(), buf.size());
            if (n > 0) {
                sink.append(buf.data(), static_cast<std::size_t>(n));
                continue;
            }
            if (n == 0 || (errno != EAGAIN && errno != EINTR)) { fd.reset(); }
            return;
        }
    };

    for (;;) {
        std::vector<pollfd> pfds;
        std::vector<Fd*>    owners;
        if (in.open()) {
            pfds.push_back({in.get(), POLLOUT, 0});
            owners.push_back(&in);
        }
        if (out.open()) {
            pfds.push_back({out.get(), POLLIN, 0});
            owners.push_back(&out);
        }
        for (auto& e : err_fds) {
            if (e.open()) {
                pfds.push_back({e.get(), POLLIN, 0});
                owners.push_back(&e);
            }
        }
        if (pfds.empty()) { break; }
        if (auto e = interrupted()) { throw *e; }
        int r = ::poll(pfds.data(), pfds.size(), 50);
        if (r < 0 && errno != EINTR) { throw Error(ErrorCode::io, std::string("poll: ") + std::strerror(errno)); }
        if (r <= 0) { continue; }
        for (std::size_t k = 0; k < pfds.size(); ++k) {
            if (pfds[k].revents == 0) { continue; }
            Fd* fd = owners[k];
            if (fd == &in) {
                auto n = ::write(in.get(), input.data() + written, std::min<std::size_t>(input.size() - written, 1 << 16));
                if (n > 0) { written += static_cast<std::size_t>(n); }
                else if (n < 0 && errno != EAGAIN && errno != EINTR) { in.reset(); } // reader gone
                if (written == input.size()) { in.reset(); }
            }
            else if (fd == &out) {
                drain(out, res.raw_output);
            }
            else {
                auto idx = static_cast<std::size_t>(fd - err_fds.data());
                drain(*fd, err_text[idx]);
            }
        }
    }
    while (!children.reap()) {
        if (auto e = interrupted()) { throw *e; }
        std::this_thread::sleep_for(std::chrono::milliseconds(5));
    }
    res.exit_codes = children.codes();
    for (const auto& e : err_text) { res.raw_errors += e; }
    res.duration = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start);

    for (std::size_t i = 0; i < stages.size(); ++i) {
        if (res.exit_codes[i] != 0 && res.raw_output.empty()) {
            throw Error(ErrorCode::tool_failure,
                        stage_name(i, stages[i]) + " exited with code " + std::to_string(res.exit_codes[i]),
                        res.raw_errors);
        }
    }
    if (launch.output_mode == OutputMode::parse_interpretations) {
        auto parsed         = parse_solver_output(res.raw_output, output_format(stages.back().kind));
        res.verdict         = parsed.verdict;
        if (res.verdict == Verdict::satisfiable) { res.interpretations = std::move(parsed.interpretations); }
    }
    return res;
}

RunResult run(const Registry& registry, const LaunchConfiguration& launch, const RunOptions& opts) {
    std::vector<ToolConfiguration> stages;
    try {
        stages = registry.stages(launch.tool);
    }
    catch (const Error& e) {
        throw Error(ErrorCode::launch, "launch '" + launch.id + "': " + e.what());
    }
    return run(stages, launch, opts);
}

} // namespace aspwb
