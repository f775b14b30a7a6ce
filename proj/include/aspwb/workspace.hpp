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

#ifndef ASPWB_WORKSPACE_HPP
#define ASPWB_WORKSPACE_HPP

// On-disk state of a workbench session. Everything lives under
// <root>/.aspwb/: tools.ini (the registry), interpretations/<label>.lp and
// scenes/<id>.json.

#include <aspwb/json.hpp>
#include <aspwb/tools.hpp>

#include <filesystem>
#include <mutex>
#include <set>
#include <string>
#include <vector>

namespace aspwb {

//! Labels: 1 to 64 characters from [A-Za-z0-9_.-], not starting with '.'.
//! @throws Error(validation).
void check_label(const std::string& label);

//! A directory of labelled text entries. Writes go through a temporary file
//! and a rename; a write to a label that another write is still busy with
//! fails with Error(conflict) instead of racing it.
class Store {
public:
    Store(std::filesystem::path dir, std::string extension);
    Store(const Store&)            = delete;
    Store& operator=(const Store&) = delete;

    [[nodiscard]] std::vector<std::string> labels() const;
    [[nodiscard]] bool                     contains(const std::string& label) const;
    //! @throws Error(not_found).
    [[nodiscard]] std::string read(const std::string& label) const;
    //! @throws Error(conflict) on a concurrent write to the same label.
    void write(const std::string& label, const std::string& content);
    //! @throws Error(not_found).
    void remove(const std::string& label);

private:
    [[nodiscard]] std::filesystem::path path(const std::string& label) const;

    std::filesystem::path dir_;
    std::string           extension_;
    mutable std::mutex    mutex_; //!< directory changes
    std::mutex            busy_mutex_;
    std::set<std::string> busy_;
};

class Workspace {
public:
    explicit Workspace(const std::filesystem::path& root);
    Workspace(const Workspace&)            = delete;
    Workspace& operator=(const Workspace&) = delete;

    [[nodiscard]] const std::filesystem::path& root() const noexcept { return root_; }
    [[nodiscard]] std::filesystem::path        state_dir() const { return root_ / ".aspwb"; }

    Registry& registry() { return *registry_; }

    [[nodiscard]] std::vector<std::string> interpretation_labels() const { return interpretations_.labels(); }
    //! @throws Error(not_found).
    [[nodiscard]] Interpretation interpretation(const std::string& label) const;
    void                         store_interpretation(const std::string& label, const Interpretation& interpretation);
    void                         remove_interpretation(const std::string& label) { interpretations_.remove(label); }

    //! Stores the JSON under its content hash and returns the hash.
    std::string                store_scene(const Json& scene_document);
    //! @throws Error(not_found).
    [[nodiscard]] Json         scene(const std::string& id) const;
    [[nodiscard]] std::vector<std::string> scene_ids() const { return scenes_.labels(); }

private:
    std::filesystem::path     root_;
    std::unique_ptr<Registry> registry_;
    Store                     interpretations_;
    Store                     scenes_;
};

} // namespace aspwb

#endif
