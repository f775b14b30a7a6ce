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

#include <aspwb/interpretations.hpp>
#include <aspwb/workspace.hpp>

#include <fstream>
#include <sstream>
#include <thread>

#include <unistd.h>

namespace aspwb {

namespace fs = std::filesystem;

void check_label(const std::string& label) {
    bool ok = !label.empty() && label.size() <= 64 && label[0] != '.';
    for (char c : label) {
        ok = ok && (std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.' || c == '-');
    }
    if (!ok) {
        throw Error(ErrorCode::validation,
                    "invalid label '" + label + "': use 1 to 64 of A-Z a-z 0-9 _ . - and do not start with '.'");
    }
}

Store::Store(fs::path dir, std::string extension)
    : dir_(std::move(dir))
    , extension_(std::move(extension)) {}

fs::path Store::path(const std::string& label) const {
    check_label(label);
    return dir_ / (label + extension_);
}

std::vector<std::string> Store::labels() const {
    std::lock_guard          lock(mutex_);
    std::vector<std::string> out;
    std::error_code          ec;
    if (!fs::is_directory(dir_, ec)) { return out; }
    for (const auto& entry : fs::directory_iterator(dir_)) {
        const auto& p = entry.path();
        if (entry.is_regular_file() && p.extension() == extension_ && p.filename().string()[0] != '.') {
            out.push_back(p.stem().string());
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

bool Store::contains(const std::string& label) const {
    auto            p = path(label);
    std::lock_guard lock(mutex_);
    return fs::is_regular_file(p);
}

std::string Store::read(const std::string& label) const {
    auto            p = path(label);
    std::lock_guard lock(mutex_);
    std::ifstream   in(p, std::ios::binary);
    if (!in) { throw Error(ErrorCode::not_found, "no entry '" + label + "'"); }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void Store::write(const std::string& label, const std::string& content) {
    auto p = path(label);
    {
        std::lock_guard lock(busy_mutex_);
        if (!busy_.insert(label).second) {
            throw Error(ErrorCode::conflict, "'" + label + "' is being written by another request");
        }
    }
    struct Release {
        Store&             s;
        const std::string& label;
        ~Release() {
            std::lock_guard lock(s.busy_mutex_);
            s.busy_.erase(label);
        }
    } release{*this, label};

    std::error_code ec;
    fs::create_directories(dir_, ec);
    static std::atomic<unsigned> counter{0};
    auto tmp = dir_ / ("." + label + "." + std::to_string(::getpid()) + "." + std::to_string(counter++) + ".tmp");
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        out << content;
        if (!out.flush()) { throw Error(ErrorCode::io, "cannot write " + tmp.string()); }
    }
    std::lock_guard lock(mutex_);
    fs::rename(tmp, p, ec);
    if (ec) {
        fs::remove(tmp, ec);
        throw Error(ErrorCode::io, "cannot store '" + label + "' in " + dir_.string());
    }
}

void Store::remove(const std::string& label) {
    auto            p = path(label);
    std::lock_guard lock(mutex_);
    std::error_code ec;
    if (!fs::remove(p, ec)) { throw Error(ErrorCode::not_found, "no entry '" + label + "'"); }
}

Workspace::Workspace(const fs::path& root)
    : root_(fs::absolute(root))
    , interpretations_(root_ / ".aspwb" / "interpretations", ".lp")
    , scenes_(root_ / ".aspwb" / "scenes", ".json") {
    std::error_code ec;
    fs::create_directories(state_dir(), ec);
    if (ec) { throw Error(ErrorCode::io, "cannot create " + state_dir().string() + ": " + ec.message()); }
    registry_ = std::make_unique<Registry>(state_dir() / "tools.ini");
}

Interpretation Workspace::interpretation(const std::string& label) const {
    if (!interpretations_.contains(label)) { throw Error(ErrorCode::not_found, "no interpretation labelled '" + label + "'"); }
    auto I  = parse_interpretation(interpretations_.read(label), Dialect::gringo);
    I.label = label;
    return I;
}

void Workspace::store_interpretation(const std::string& label, const Interpretation& interpretation) {
    auto text = to_facts(interpretation, Dialect::gringo);
    interpretations_.write(label, text.empty() ? text : text + "\n");
}

std::string Workspace::store_scene(const Json& scene_document) {
    auto id = content_hash(scene_document);
    if (scenes_.contains(id)) { return id; }
    try {
        scenes_.write(id, dump_json(scene_document, 2) + "\n");
    }
    catch (const Error& e) {
        if (e.code() != ErrorCode::conflict) { throw; } // same content is being written right now
    }
    return id;
}

Json Workspace::scene(const std::string& id) const {
    bool valid = id.size() == 16 && std::all_of(id.begin(), id.end(), [](char c) { return std::isxdigit(static_cast<unsigned char>(c)); });
    if (!valid || !scenes_.contains(id)) { throw Error(ErrorCode::not_found, "no scene '" + id + "'"); }
    return Json::parse(scenes_.read(id));
}

} // namespace aspwb
