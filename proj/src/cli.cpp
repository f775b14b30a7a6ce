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

#include <CLI11.hpp>

#include <csignal>
#include <fstream>
#include <sstream>
#include <thread>

#include <pthread.h>

namespace aspwb {

namespace fs = std::filesystem;

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) { throw Error(ErrorCode::io, "cannot read '" + path + "'"); }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    out << text;
    if (!out.flush()) { throw Error(ErrorCode::io, "cannot write '" + path + "'"); }
}

void print_outline(std::ostream& out, const OutlineNode& n, int depth) {
    out << std::string(static_cast<std::size_t>(depth) * 2, ' ') << to_string(n.kind);
    if (!n.label.empty() && n.label != to_string(n.kind)) { out << ' ' << n.label; }
    out << '\n';
    for (const auto& c : n.children) { print_outline(out, c, depth + 1); }
}

void print_diagnostics(std::ostream& out, const std::string& file, const std::vector<Diagnostic>& diags) {
    for (const auto& d : diags) {
        out << file << ':' << d.span.start_line << ':' << d.span.start_col << ": " << to_string(d.severity) << ": "
            << d.message << " [" << d.code << "]\n";
    }
}

//! Splits an edit description on blanks, keeping double-quoted runs together.
std::vector<std::string> words(std::string_view s) {
    std::vector<std::string> out;
    std::string              cur;
    bool                     quoted = false;
    bool                     any    = false;
    for (char c : s) {
        if (c == '"') {
            quoted = !quoted;
            any    = true;
        }
        else if (!quoted && std::isspace(static_cast<unsigned char>(c))) {
            if (any) { out.push_back(cur); }
            cur.clear();
            any = false;
        }
        else {
            cur += c;
            any = true;
        }
    }
    if (quoted) { throw Error(ErrorCode::validation, "unterminated quote in '" + std::string(s) + "'"); }
    if (any) { out.push_back(cur); }
    return out;
}

std::int64_t to_int(const std::string& key, const std::string& v) {
    try {
        std::size_t used = 0;
        auto        n    = std::stoll(v, &used);
        if (used == v.size()) { return n; }
    }
    catch (const std::exception&) {
    }
    throw Error(ErrorCode::validation, "'" + key + "' needs an integer, got '" + v + "'");
}

} // namespace

Edit edit_from_text(std::string_view text) {
    auto w = words(text);
    if (w.size() < 2) { throw Error(ErrorCode::validation, "an edit is 'OP ID key=value ...', got '" + std::string(text) + "'"); }
    Edit e;
    auto kind = edit_kind_from_string(w[0]);
    if (!kind) { throw Error(ErrorCode::validation, "unknown edit op '" + w[0] + "'"); }
    e.kind = *kind;
    e.id   = w[1];
    for (std::size_t i = 2; i < w.size(); ++i) {
        auto eq = w[i].find('=');
        if (eq == std::string::npos) { throw Error(ErrorCode::validation, "expected key=value, got '" + w[i] + "'"); }
        auto key = w[i].substr(0, eq);
        auto v   = w[i].substr(eq + 1);
        if (key == "x") { e.x = to_int(key, v); }
        else if (key == "y") { e.y = to_int(key, v); }
        else if (key == "row") { e.row = to_int(key, v); }
        else if (key == "col") { e.col = to_int(key, v); }
        else if (key == "z") { e.z = to_int(key, v); }
        else if (key == "grid") { e.grid = v; }
        else if (key == "text") { e.text = v; }
        else if (key == "color") { e.color = v; }
        else if (key == "ref") { e.refs.push_back(v); }
        else if (key == "element") {
            e.element = element_kind_from_string(v);
            if (!e.element) { throw Error(ErrorCode::validation, "unknown element kind '" + v + "'"); }
        }
        else if (key == "numbers") {
            std::stringstream ss(v);
            std::string       part;
            while (std::getline(ss, part, ',')) { e.numbers.push_back(to_int(key, part)); }
        }
        else {
            throw Error(ErrorCode::validation, "unknown edit field '" + key + "'");
        }
    }
    return e;
}

namespace {

struct Cli {
    Cli(std::ostream& o, std::ostream& e)
        : out(o)
        , err(e) {}

    std::ostream& out;
    std::ostream& err;

    std::string dialect_name;
    bool        json = false;
    std::string workspace_dir = ".";

    std::unique_ptr<Workspace> ws;

    Workspace& workspace() {
        if (!ws) { ws = std::make_unique<Workspace>(workspace_dir); }
        return *ws;
    }

    Dialect dialect_for(const std::string& path) {
        return dialect_name.empty() ? detect_dialect(path) : parse_dialect(dialect_name);
    }
    Dialect dialect_or_default() { return dialect_name.empty() ? Dialect::gringo : parse_dialect(dialect_name); }

    //! A facts file when `ref` names one, a stored interpretation otherwise.
    Interpretation interpretation(const std::string& ref) {
        std::error_code ec;
        if (fs::is_regular_file(ref, ec)) {
            Dialect d = Dialect::gringo;
            if (!dialect_name.empty()) { d = parse_dialect(dialect_name); }
            else {
                try {
                    d = detect_dialect(ref);
                }
                catch (const Error&) {
                }
            }
            auto I  = parse_interpretation(read_file(ref), d);
            I.label = fs::path(ref).stem().string();
            return I;
        }
        bool label_like = true;
        try {
            check_label(ref);
        }
        catch (const Error&) {
            label_like = false;
        }
        if (!label_like) { throw Error(ErrorCode::not_found, "no file or interpretation '" + ref + "'"); }
        return workspace().interpretation(ref);
    }

    int lint_like(const std::string& file, const std::string& what, bool print_program) {
        auto d      = dialect_for(file);
        auto parsed = parse(read_file(file), d, file);
        auto diags  = what == "parse" ? parsed.diagnostics : lint(parsed);
        bool failed = has_errors(diags);
        if (json) {
            Json j{{"file", file}, {"ok", !failed}, {"diagnostics", to_json(diags)}};
            if (what == "outline") { j["outline"] = to_json(build_outline(parsed.program)); }
            out << dump_json(j, 2) << '\n';
        }
        else {
            print_diagnostics(out, file, diags);
            if (what == "outline") { print_outline(out, build_outline(parsed.program), 0); }
            if (print_program && !failed) { out << pretty_print(parsed.program, d); }
        }
        return failed ? 1 : 0;
    }

    int print_answers(const SolveResult& r, const std::string& output) {
        if (json) {
            Json sets = Json::array();
            for (const auto& I : r.answer_sets) { sets.push_back(to_json(I)); }
            Json j{{"verdict", to_string(r.verdict)}, {"answer_sets", sets}};
            if (r.run && output == "raw") { j["raw_output"] = r.run->raw_output; }
            out << dump_json(j, 2) << '\n';
        }
        else if (output == "raw" && r.run) {
            out << r.run->raw_output;
        }
        else if (output == "raw") {
            for (std::size_t i = 0; i < r.answer_sets.size(); ++i) {
                out << "Answer: " << (i + 1) << '\n';
                std::string line;
                for (const auto& l : r.answer_sets[i]) { line += (line.empty() ? "" : " ") + to_string(l); }
                out << line << '\n';
            }
            out << (r.answer_sets.empty() ? "UNSATISFIABLE" : "SATISFIABLE") << '\n';
        }
        else {
            for (const auto& I : r.answer_sets) {
                if (output == "facts") {
                    auto facts = to_facts(I, dialect_or_default());
                    out << "% " << *I.label << '\n' << facts << (facts.empty() ? "" : "\n");
                }
                else {
                    out << render_tree(to_tree(I));
                }
            }
        }
        return r.verdict == Verdict::unsatisfiable ? 1 : 0;
    }

    int report(const Error& e) {
        if (json) { out << dump_json(to_json(e), 2) << '\n'; }
        err << "aspwb: error[" << e.code_name() << "]: " << e.what() << '\n';
        if (!e.detail().empty()) {
            err << e.detail();
            if (e.detail().back() != '\n') { err << '\n'; }
        }
        return exit_code(e.code());
    }
};

Json registry_json(const Registry& r) {
    Json tools = Json::array();
    for (const auto& t : r.tools()) {
        tools.push_back({{"id", t.id},
                         {"path", t.executable_path},
                         {"kind", to_string(t.kind)},
                         {"args", t.default_args},
                         {"input", to_string(t.input)}});
    }
    Json pipelines = Json::array();
    for (const auto& p : r.pipelines()) { pipelines.push_back({{"id", p.id}, {"stages", p.stages}}); }
    Json launches = Json::array();
    for (const auto& l : r.launches()) {
        launches.push_back({{"id", l.id},
                            {"tool", l.tool},
                            {"files", l.input_files},
                            {"args", l.extra_args},
                            {"output", to_string(l.output_mode)}});
    }
    return {{"tools", tools}, {"pipelines", pipelines}, {"launches", launches}};
}

int serve(Workspace& ws, ServerOptions options, std::ostream& out) {
    sigset_t signals;
    sigemptyset(&signals);
    sigaddset(&signals, SIGINT);
    sigaddset(&signals, SIGTERM);
    pthread_sigmask(SIG_BLOCK, &signals, nullptr);

    auto   host = options.host;
    Server server(ws, std::move(options));
    int    port = server.bind();
    out << "listening on http://" << host << ':' << port << std::endl;
    std::thread watcher([&server, signals] {
        int sig = 0;
        sigwait(&signals, &sig);
        server.stop();
    });
    watcher.detach();
    server.listen();
    return 0;
}

} // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    Cli      cli(out, err);
    CLI::App app{"aspwb: a workbench for answer-set programs", "aspwb"};
    app.require_subcommand(1, 1);
    app.fallthrough();
    app.add_option("--dialect", cli.dialect_name, "gringo or dlv; default: from the file extension");
    app.add_flag("--json", cli.json, "structured output");
    app.add_option("--workspace", cli.workspace_dir, "directory holding .aspwb/ (default: .)");

    std::string file;
    bool        print_program = false;
    auto*       parse_cmd     = app.add_subcommand("parse", "parse a program and report syntax errors");
    parse_cmd->add_option("file", file)->required();
    parse_cmd->add_flag("--print", print_program, "print the parsed program");
    auto* lint_cmd = app.add_subcommand("lint", "syntax and safety checks");
    lint_cmd->add_option("file", file)->required();
    auto* outline_cmd = app.add_subcommand("outline", "rule/literal/term tree of a program");
    outline_cmd->add_option("file", file)->required();

    std::vector<std::string> files;
    std::string              engine = "internal";
    std::string              launch;
    std::optional<std::size_t> limit;
    std::string              output = "raw";
    std::string              store;
    auto*                    solve_cmd = app.add_subcommand("solve", "compute answer sets");
    solve_cmd->add_option("files", files, "program files");
    solve_cmd->add_option("--engine", engine, "internal")->check(CLI::IsMember({"internal"}));
    solve_cmd->add_option("--launch", launch, "run a registered launch configuration instead");
    solve_cmd->add_option("--limit", limit, "stop after this many answer sets");
    solve_cmd->add_option("--output", output, "raw, facts or tree")->check(CLI::IsMember({"raw", "facts", "tree"}));
    solve_cmd->add_option("--store", store, "store answer sets as LABEL-1, LABEL-2, ...");

    auto*       interp_cmd = app.add_subcommand("interp", "stored interpretations");
    interp_cmd->require_subcommand(1, 1);
    std::string ref;
    std::string ref2;
    auto*       interp_list = interp_cmd->add_subcommand("list", "list labels");
    auto*       interp_show = interp_cmd->add_subcommand("show", "show as a tree");
    interp_show->add_option("interpretation", ref, "file or label")->required();
    auto* interp_facts = interp_cmd->add_subcommand("facts", "print as facts");
    interp_facts->add_option("interpretation", ref, "file or label")->required();
    auto* interp_diff = interp_cmd->add_subcommand("diff", "compare two interpretations");
    interp_diff->add_option("left", ref, "file or label")->required();
    interp_diff->add_option("right", ref2, "file or label")->required();
    auto* interp_add = interp_cmd->add_subcommand("add", "store a facts file under a label");
    interp_add->add_option("label", ref2)->required();
    interp_add->add_option("file", ref, "file or label")->required();
    auto* interp_rm = interp_cmd->add_subcommand("rm", "delete a stored interpretation");
    interp_rm->add_option("label", ref)->required();
    for (auto* s : interp_cmd->get_subcommands({})) { s->fallthrough(); }
    interp_cmd->fallthrough();

    bool        generic = false;
    std::string program;
    std::string svg_out;
    std::string scene_out;
    auto*       viz_cmd = app.add_subcommand("viz", "draw an interpretation as SVG");
    viz_cmd->add_option("interpretation", ref, "file or label")->required();
    auto* generic_opt = viz_cmd->add_flag("--generic", generic, "hypergraph drawing");
    viz_cmd->add_option("--program", program, "visualization program file")->excludes(generic_opt);
    viz_cmd->add_option("--out", svg_out, "SVG file (default: standard output)");
    viz_cmd->add_option("--scene-out", scene_out, "also write the scene JSON here");
    viz_cmd->add_option("--launch", launch, "evaluate the program with a launch configuration");

    std::vector<std::string> abducibles;
    std::vector<std::string> edit_texts;
    std::string              edits_file;
    std::string              domains_file;
    auto*                    abduce_cmd = app.add_subcommand("abduce", "find the interpretation behind an edited drawing");
    abduce_cmd->add_option("interpretation", ref, "file or label")->required();
    abduce_cmd->add_option("--program", program, "visualization program file")->required();
    abduce_cmd->add_option("--abducible", abducibles, "name/arity, repeatable")->required();
    abduce_cmd->add_option("--edit", edit_texts, "'OP ID key=value ...', repeatable");
    abduce_cmd->add_option("--edits", edits_file, "JSON file with a list of edits");
    abduce_cmd->add_option("--domains", domains_file, "facts bounding the abducibles");
    abduce_cmd->add_option("--store", store, "store the result under this label");
    abduce_cmd->add_option("--launch", launch, "solve with a launch configuration");

    auto* tools_cmd = app.add_subcommand("tools", "tool, pipeline and launch registry");
    tools_cmd->require_subcommand(1, 1);
    tools_cmd->fallthrough();
    std::string              id;
    std::string              path;
    std::string              kind = "generic";
    std::string              input = "automatic";
    std::vector<std::string> args;
    std::vector<std::string> stages;
    std::string              tool;
    bool                     replace = false;
    auto*                    tools_list = tools_cmd->add_subcommand("list", "print the registry");
    auto*                    add_tool   = tools_cmd->add_subcommand("add-tool", "register an executable");
    add_tool->add_option("id", id)->required();
    add_tool->add_option("path", path)->required();
    add_tool->add_option("--kind", kind, "gringo, clasp, dlv or generic")
        ->check(CLI::IsMember({"gringo", "clasp", "dlv", "generic"}));
    add_tool->add_option("--arg", args, "default argument, repeatable (use --arg=-x for dashes)");
    add_tool->add_option("--input", input, "automatic, stdin or arguments")
        ->check(CLI::IsMember({"automatic", "stdin", "arguments"}));
    add_tool->add_flag("--replace", replace, "update an existing entry");
    auto* add_pipeline = tools_cmd->add_subcommand("add-pipeline", "chain tools with pipes");
    add_pipeline->add_option("id", id)->required();
    add_pipeline->add_option("stages", stages, "tool ids in order")->required();
    add_pipeline->add_flag("--replace", replace, "update an existing entry");
    auto* add_launch = tools_cmd->add_subcommand("add-launch", "input files, a tool or pipeline, arguments");
    add_launch->add_option("id", id)->required();
    add_launch->add_option("--tool", tool, "tool or pipeline id")->required();
    add_launch->add_option("--file", files, "input file, repeatable");
    add_launch->add_option("--arg", args, "extra argument for the last stage, repeatable");
    add_launch->add_option("--output", output, "raw or parse")->check(CLI::IsMember({"raw", "parse"}));
    add_launch->add_flag("--replace", replace, "update an existing entry");
    auto* tools_rm = tools_cmd->add_subcommand("remove", "delete a tool, pipeline or launch");
    tools_rm->add_option("id", id)->required();
    auto* tools_run = tools_cmd->add_subcommand("run", "run a launch configuration");
    tools_run->add_option("launch", launch)->required();
    tools_run->add_option("--file", files, "override the input files");
    tools_run->add_option("--output", output, "raw, facts or tree")->check(CLI::IsMember({"raw", "facts", "tree"}));
    for (auto* s : tools_cmd->get_subcommands({})) { s->fallthrough(); }

    ServerOptions server_options;
    server_options.port = 8080;
    std::string static_dir;
    auto*       serve_cmd = app.add_subcommand("serve", "HTTP service for the editor");
    serve_cmd->add_option("--port", server_options.port, "0 picks a free port");
    serve_cmd->add_option("--host", server_options.host);
    serve_cmd->add_option("--static", static_dir, "directory served at /");

    for (auto* s : app.get_subcommands({})) { s->fallthrough(); }

    try {
        app.parse(argc, argv);
    }
    catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    }
    catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err);
    }
    catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return 2;
    }

    try {
        if (*parse_cmd) { return cli.lint_like(file, "parse", print_program); }
        if (*lint_cmd) { return cli.lint_like(file, "lint", false); }
        if (*outline_cmd) { return cli.lint_like(file, "outline", false); }

        if (*solve_cmd) {
            SolveRequest r;
            r.limit  = limit;
            r.launch = launch;
            r.raw    = output == "raw";
            if (launch.empty()) {
                if (files.empty()) { throw Error(ErrorCode::validation, "solve needs program files or --launch"); }
                r.dialect = cli.dialect_for(files[0]);
                for (const auto& f : files) {
                    if (cli.dialect_for(f) != r.dialect) {
                        throw Error(ErrorCode::unknown_dialect, "'" + f + "' is not in the dialect of '" + files[0] + "'");
                    }
                    r.source += read_file(f) + "\n";
                }
            }
            else {
                r.input_files = files;
            }
            const Registry empty;
            auto result = solve_request(launch.empty() ? empty : cli.workspace().registry(), r);
            if (!store.empty()) {
                for (std::size_t i = 0; i < result.answer_sets.size(); ++i) {
                    cli.workspace().store_interpretation(store + "-" + std::to_string(i + 1), result.answer_sets[i]);
                }
            }
            return cli.print_answers(result, output);
        }

        if (*interp_cmd) {
            if (*interp_list) {
                auto labels = cli.workspace().interpretation_labels();
                if (cli.json) { out << dump_json(Json{{"labels", labels}}, 2) << '\n'; }
                else {
                    for (const auto& l : labels) { out << l << '\n'; }
                }
                return 0;
            }
            if (*interp_show) {
                auto I = cli.interpretation(ref);
                if (cli.json) {
                    auto j    = to_json(I);
                    j["tree"] = to_json(to_tree(I));
                    out << dump_json(j, 2) << '\n';
                }
                else {
                    out << render_tree(to_tree(I));
                }
                return 0;
            }
            if (*interp_facts) {
                auto I     = cli.interpretation(ref);
                auto facts = to_facts(I, cli.dialect_or_default());
                if (cli.json) { out << dump_json(Json{{"facts", facts}}, 2) << '\n'; }
                else { out << facts << (facts.empty() ? "" : "\n"); }
                return 0;
            }
            if (*interp_diff) {
                auto d = diff(cli.interpretation(ref), cli.interpretation(ref2));
                if (cli.json) { out << dump_json(to_json(d), 2) << '\n'; }
                else {
                    for (const auto& l : d.only_left) { out << "- " << to_string(l) << '\n'; }
                    for (const auto& l : d.only_right) { out << "+ " << to_string(l) << '\n'; }
                }
                return d.only_left.empty() && d.only_right.empty() ? 0 : 1;
            }
            if (*interp_add) {
                check_label(ref2);
                auto I = cli.interpretation(ref);
                cli.workspace().store_interpretation(ref2, I);
                I.label = ref2;
                if (cli.json) { out << dump_json(to_json(I), 2) << '\n'; }
                return 0;
            }
            if (*interp_rm) {
                cli.workspace().remove_interpretation(ref);
                if (cli.json) { out << dump_json(Json{{"deleted", ref}}, 2) << '\n'; }
                return 0;
            }
        }

        if (*viz_cmd) {
            if (!generic && program.empty()) { throw Error(ErrorCode::validation, "viz needs --generic or --program FILE"); }
            auto      I = cli.interpretation(ref);
            VisSolver solver;
            solver.launch = launch;
            if (!launch.empty()) { solver.registry = &cli.workspace().registry(); }
            std::string source;
            Dialect     d = cli.dialect_or_default();
            if (!program.empty()) {
                source = read_file(program);
                d      = cli.dialect_for(program);
            }
            auto v   = visualize(I, source, d, solver);
            auto doc = v.document();
            auto svg = export_svg(v.scene);
            if (!scene_out.empty()) { write_file(scene_out, dump_json(doc, 2) + "\n"); }
            if (!svg_out.empty()) { write_file(svg_out, svg); }
            if (cli.json) {
                Json j{{"id", content_hash(doc)}};
                j.update(doc);
                out << dump_json(j, 2) << '\n';
            }
            else if (svg_out.empty()) {
                out << svg;
            }
            return 0;
        }

        if (*abduce_cmd) {
            AbductionRequest r;
            r.interpretation = cli.interpretation(ref);
            r.program        = read_file(program);
            r.dialect        = cli.dialect_for(program);
            for (const auto& a : abducibles) { r.abducibles.push_back(predicate_key_from_string(a)); }
            if (!edits_file.empty()) {
                Json j;
                try {
                    j = Json::parse(read_file(edits_file));
                }
                catch (const Json::exception& e) {
                    throw Error(ErrorCode::validation, "'" + edits_file + "' is not JSON: " + e.what());
                }
                if (!j.is_array()) { throw Error(ErrorCode::validation, "'" + edits_file + "' must hold a list of edits"); }
                for (const auto& e : j) { r.edits.push_back(edit_from_json(e)); }
            }
            for (const auto& t : edit_texts) { r.edits.push_back(edit_from_text(t)); }
            if (!domains_file.empty()) { r.domains = cli.interpretation(domains_file); }
            VisSolver solver;
            solver.launch = launch;
            if (!launch.empty()) { solver.registry = &cli.workspace().registry(); }
            auto result = abduce_request(r, solver);
            if (!store.empty()) { cli.workspace().store_interpretation(store, result.interpretation); }
            if (cli.json) {
                Json target = Json::array();
                for (const auto& a : result.target) { target.push_back(to_string(a)); }
                out << dump_json({{"interpretation", to_json(result.interpretation)}, {"diff", to_json(result.diff)}, {"atoms", target}}, 2)
                    << '\n';
            }
            else {
                auto facts = to_facts(result.interpretation, r.dialect);
                out << facts << (facts.empty() ? "" : "\n");
                for (const auto& l : result.diff.only_left) { err << "- " << to_string(l) << '\n'; }
                for (const auto& l : result.diff.only_right) { err << "+ " << to_string(l) << '\n'; }
            }
            return 0;
        }

        if (*tools_cmd) {
            auto& reg = cli.workspace().registry();
            if (*tools_list) {
                if (cli.json) { out << dump_json(registry_json(reg), 2) << '\n'; }
                else { out << reg.to_text(); }
                return 0;
            }
            if (*add_tool) {
                ToolConfiguration t{id, path, args, *tool_kind_from_string(kind), *input_delivery_from_string(input)};
                replace ? reg.update_tool(t) : reg.add_tool(t);
                return 0;
            }
            if (*add_pipeline) {
                Pipeline p{id, stages};
                replace ? reg.update_pipeline(p) : reg.add_pipeline(p);
                return 0;
            }
            if (*add_launch) {
                LaunchConfiguration l{id, files, tool, args, output == "parse" ? OutputMode::parse_interpretations : OutputMode::raw};
                replace ? reg.update_launch(l) : reg.add_launch(l);
                return 0;
            }
            if (*tools_rm) {
                auto has = [&](const auto& list) {
                    return std::any_of(list.begin(), list.end(), [&](const auto& x) { return x.id == id; });
                };
                if (has(reg.launches())) { reg.remove_launch(id); }
                else if (has(reg.pipelines())) { reg.remove_pipeline(id); }
                else if (has(reg.tools())) { reg.remove_tool(id); }
                else { throw Error(ErrorCode::not_found, "no tool, pipeline or launch '" + id + "'"); }
                return 0;
            }
            if (*tools_run) {
                SolveRequest r;
                r.launch      = launch;
                r.input_files = files;
                r.raw         = output == "raw";
                return cli.print_answers(solve_request(reg, r), output);
            }
        }

        if (*serve_cmd) {
            server_options.static_dir = static_dir;
            return serve(cli.workspace(), server_options, out);
        }
    }
    catch (const Error& e) {
        return cli.report(e);
    }
    return 2;
}

} // namespace aspwb
