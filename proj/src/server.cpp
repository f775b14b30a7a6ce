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

#include <httplib.h>

namespace aspwb {

namespace {

const char* builtin_index = R"(<!doctype html>
<html><head><meta charset="utf-8"><title>aspwb</title></head>
<body><h1>aspwb</h1><p>The HTTP API is served under <code>/api/</code>.
Start the server with <code>--static DIR</code> to serve an editor from DIR.</p></body></html>
)";

void reply(httplib::Response& res, const Json& body, int status = 200) {
    res.status = status;
    res.set_content(dump_json(body), "application/json");
}

void reply_error(httplib::Response& res, const Error& e) { reply(res, to_json(e), http_status(e.code())); }

Json body_of(const httplib::Request& req) {
    if (req.body.empty()) { return Json::object(); }
    Json j = Json::parse(req.body);
    if (!j.is_object()) { throw Error(ErrorCode::validation, "the request body must be a JSON object"); }
    return j;
}

std::string string_field(const Json& j, const char* key, const std::string& fallback = {}) {
    if (!j.contains(key) || j[key].is_null()) { return fallback; }
    if (!j[key].is_string()) { throw Error(ErrorCode::validation, std::string("field '") + key + "' must be a string"); }
    return j[key].get<std::string>();
}

Dialect dialect_field(const Json& j) { return parse_dialect(string_field(j, "dialect", "gringo")); }

} // namespace

struct Server::Impl {
    Workspace&      ws;
    ServerOptions   options;
    httplib::Server http;

    Impl(Workspace& w, ServerOptions o)
        : ws(w)
        , options(std::move(o)) {}

    template <class Fn>
    auto guarded(Fn fn) {
        return [fn](const httplib::Request& req, httplib::Response& res) {
            try {
                fn(req, res);
            }
            catch (const Error& e) {
                reply_error(res, e);
            }
            catch (const Json::exception& e) {
                reply_error(res, Error(ErrorCode::validation, std::string("malformed request: ") + e.what()));
            }
            catch (const std::exception& e) {
                reply_error(res, Error(ErrorCode::evaluation, std::string("internal error: ") + e.what()));
            }
        };
    }

    Interpretation interpretation_of(const Json& j, const char* label_key, const char* value_key, Dialect d) {
        if (j.contains(label_key) && !j[label_key].is_null()) { return ws.interpretation(string_field(j, label_key)); }
        if (j.contains(value_key) && !j[value_key].is_null()) { return interpretation_from_json(j[value_key], d); }
        throw Error(ErrorCode::validation, std::string("expected '") + label_key + "' or '" + value_key + "'");
    }

    //! A diff side: a label string or an interpretation object.
    Interpretation side(const Json& j, const char* key) {
        if (!j.contains(key)) { throw Error(ErrorCode::validation, std::string("missing '") + key + "'"); }
        if (j[key].is_string()) { return ws.interpretation(j[key].get<std::string>()); }
        return interpretation_from_json(j[key]);
    }

    VisSolver solver_of(const Json& j) {
        VisSolver s;
        s.registry = &ws.registry();
        s.launch   = string_field(j, "launch");
        return s;
    }

    void routes() {
        http.set_payload_max_length(16U << 20U);

        http.Get("/api/health", guarded([](const httplib::Request&, httplib::Response& res) {
            reply(res, {{"status", "ok"}, {"version", "0.1.0"}});
        }));

        http.Post("/api/parse", guarded([](const httplib::Request& req, httplib::Response& res) {
            auto j      = body_of(req);
            auto parsed = parse(string_field(j, "source"), dialect_field(j), string_field(j, "file"));
            auto diags  = lint(parsed);
            reply(res, {{"ok", !has_errors(diags)},
                        {"diagnostics", to_json(diags)},
                        {"outline", to_json(build_outline(parsed.program))}});
        }));

        http.Post("/api/solve", guarded([this](const httplib::Request& req, httplib::Response& res) {
            auto         j = body_of(req);
            SolveRequest r;
            r.source  = string_field(j, "source");
            r.dialect = dialect_field(j);
            r.launch  = string_field(j, "launch");
            if (j.contains("limit") && !j["limit"].is_null()) { r.limit = j["limit"].get<std::size_t>(); }
            auto result = solve_request(ws.registry(), r);
            Json sets   = Json::array();
            for (const auto& I : result.answer_sets) { sets.push_back(to_json(I)); }
            auto store = string_field(j, "store");
            if (!store.empty()) {
                for (std::size_t i = 0; i < result.answer_sets.size(); ++i) {
                    ws.store_interpretation(store + "-" + std::to_string(i + 1), result.answer_sets[i]);
                }
            }
            reply(res, {{"verdict", to_string(result.verdict)}, {"answer_sets", sets}});
        }));

        http.Get("/api/interpretations", guarded([this](const httplib::Request&, httplib::Response& res) {
            reply(res, {{"labels", ws.interpretation_labels()}});
        }));
        http.Get(R"(/api/interpretations/([^/]+))", guarded([this](const httplib::Request& req, httplib::Response& res) {
            auto I = ws.interpretation(req.matches[1]);
            auto j = to_json(I);
            j["tree"] = to_json(to_tree(I));
            reply(res, j);
        }));
        auto store = [this](const std::string& label, const Json& j, httplib::Response& res) {
            check_label(label);
            auto I  = interpretation_from_json(j, dialect_field(j));
            I.label = label;
            ws.store_interpretation(label, I);
            reply(res, to_json(I), 201);
        };
        http.Post("/api/interpretations", guarded([store](const httplib::Request& req, httplib::Response& res) {
            auto j = body_of(req);
            store(string_field(j, "label"), j, res);
        }));
        http.Post(R"(/api/interpretations/([^/]+))", guarded([store](const httplib::Request& req, httplib::Response& res) {
            store(req.matches[1], body_of(req), res);
        }));
        http.Delete(R"(/api/interpretations/([^/]+))", guarded([this](const httplib::Request& req, httplib::Response& res) {
            std::string label = req.matches[1];
            ws.remove_interpretation(label);
            reply(res, {{"deleted", label}});
        }));

        http.Post("/api/diff", guarded([this](const httplib::Request& req, httplib::Response& res) {
            auto j = body_of(req);
            reply(res, to_json(diff(side(j, "left"), side(j, "right"))));
        }));

        http.Post("/api/visualize", guarded([this](const httplib::Request& req, httplib::Response& res) {
            auto j   = body_of(req);
            auto d   = dialect_field(j);
            auto I   = interpretation_of(j, "label", "interpretation", d);
            auto v   = visualize(I, string_field(j, "program"), d, solver_of(j));
            auto doc = v.document();
            auto id  = ws.store_scene(doc);
            Json out{{"id", id}};
            out.update(doc);
            reply(res, out);
        }));

        http.Post("/api/abduce", guarded([this](const httplib::Request& req, httplib::Response& res) {
            auto             j = body_of(req);
            AbductionRequest r;
            r.dialect        = dialect_field(j);
            r.interpretation = interpretation_of(j, "label", "interpretation", r.dialect);
            r.program        = string_field(j, "program");
            if (r.program.empty()) { throw Error(ErrorCode::validation, "abduction needs a visualization 'program'"); }
            if (!j.contains("abducibles") || !j["abducibles"].is_array()) {
                throw Error(ErrorCode::validation, "'abducibles' must be a list of name/arity strings");
            }
            for (const auto& a : j["abducibles"]) { r.abducibles.push_back(predicate_key_from_string(a.get<std::string>())); }
            if (j.contains("edits")) {
                if (!j["edits"].is_array()) { throw Error(ErrorCode::validation, "'edits' must be a list"); }
                for (const auto& e : j["edits"]) { r.edits.push_back(edit_from_json(e)); }
            }
            if (j.contains("domains") && !j["domains"].is_null()) { r.domains = interpretation_from_json(j["domains"], r.dialect); }
            auto result = abduce_request(r, solver_of(j));
            Json target = Json::array();
            for (const auto& a : result.target) { target.push_back(to_string(a)); }
            auto store_as = string_field(j, "store");
            if (!store_as.empty()) { ws.store_interpretation(store_as, result.interpretation); }
            reply(res, {{"interpretation", to_json(result.interpretation)},
                        {"diff", to_json(result.diff)},
                        {"atoms", target}});
        }));

        http.Get(R"(/api/scene/([^/]+))", guarded([this](const httplib::Request& req, httplib::Response& res) {
            std::string id  = req.matches[1];
            auto        doc = ws.scene(id);
            if (req.get_param_value("format") == "svg") {
                res.set_content(export_svg(scene_from_json(doc.at("scene"))), "image/svg+xml");
                return;
            }
            Json out{{"id", id}};
            out.update(doc);
            reply(res, out);
        }));

        std::error_code ec;
        if (!options.static_dir.empty() && std::filesystem::is_directory(options.static_dir, ec)) {
            http.set_mount_point("/", options.static_dir.string());
        }
        else {
            http.Get("/", [](const httplib::Request&, httplib::Response& res) { res.set_content(builtin_index, "text/html"); });
        }

        http.set_error_handler([](const httplib::Request& req, httplib::Response& res) {
            if (!res.body.empty()) { return; }
            if (res.status == 404) {
                reply(res, to_json(Error(ErrorCode::not_found, "no route for " + req.method + " " + req.path)), 404);
                return;
            }
            // rejected by the HTTP layer before any handler ran
            reply(res, to_json(Error(ErrorCode::validation, "bad request (HTTP " + std::to_string(res.status) + ")")),
                  res.status);
        });
    }
};

Server::Server(Workspace& workspace, ServerOptions options)
    : impl_(std::make_unique<Impl>(workspace, std::move(options))) {
    impl_->routes();
}

Server::~Server() = default;

int Server::bind() {
    auto& o = impl_->options;
    if (o.port == 0) {
        int port = impl_->http.bind_to_any_port(o.host);
        if (port < 0) { throw Error(ErrorCode::io, "cannot bind to " + o.host); }
        o.port = port;
        return port;
    }
    if (!impl_->http.bind_to_port(o.host, o.port)) {
        throw Error(ErrorCode::io, "cannot bind to " + o.host + ":" + std::to_string(o.port) + " (port busy?)");
    }
    return o.port;
}

void Server::listen() { impl_->http.listen_after_bind(); }

void Server::stop() { impl_->http.stop(); }

} // namespace aspwb
