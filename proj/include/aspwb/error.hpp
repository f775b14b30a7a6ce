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

#ifndef ASPWB_ERROR_HPP
#define ASPWB_ERROR_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace aspwb {

//! Stable error categories. The string form (see to_string) is part of the
//! CLI and HTTP contract and must not change between releases.
enum class ErrorCode {
    unsupported_construct,
    unknown_dialect,
    consistency,
    non_ground,
    syntax,
    safety,
    evaluation,
    capacity,
    cancelled,
    launch,
    tool_failure,
    timeout,
    format,
    integrity,
    conflict,
    validation,
    not_found,
    dangling_reference,
    vocabulary,
    visualization_unsat,
    abduction_unsat,
    io,
};

std::string_view to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message, std::string detail = {})
        : std::runtime_error(message)
        , code_(code)
        , detail_(std::move(detail)) {}

    [[nodiscard]] ErrorCode code() const noexcept { return code_; }
    [[nodiscard]] std::string_view code_name() const noexcept { return to_string(code_); }
    //! Extra payload, e.g. captured standard error of a failed tool.
    [[nodiscard]] const std::string& detail() const noexcept { return detail_; }

private:
    ErrorCode   code_;
    std::string detail_;
};

} // namespace aspwb

#endif
