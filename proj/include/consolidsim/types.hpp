// Copyright 2026 The consolidsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef CONSOLIDSIM_TYPES_HPP
#define CONSOLIDSIM_TYPES_HPP

#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <stdexcept>
#include <string>

namespace consolidsim {

/// Virtual time in seconds. Trace times are integral in practice and stay
/// exact in a double.
using SimTime = double;

using JobId = std::int64_t;
using NodeId = int;

/// Static: dedicated batch and web pools. Dynamic: one shared pool under the
/// cooperative provisioning policy.
enum class Mode { Static, Dynamic };

inline const char* to_string(Mode m) { return m == Mode::Static ? "static" : "dynamic"; }

/// Shortest round-trip text for a number; integral values print without a
/// fraction or exponent.
inline std::string format_number(double v)
{
    char buf[64];
    if (std::isfinite(v) && std::floor(v) == v && std::fabs(v) < 9.0e15) {
        std::snprintf(buf, sizeof buf, "%lld", static_cast<long long>(v));
        return buf;
    }
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

/// Input could not be parsed. Carries the 1-based line number when known.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, std::size_t line)
        : std::runtime_error(line ? "line " + std::to_string(line) + ": " + what : what)
        , line_(line)
    {
    }

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

class EmptyTraceError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

class InsufficientIdleError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

class NotFoundError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

class InfeasibleReclaimError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

class InvariantViolation : public std::logic_error {
    using std::logic_error::logic_error;
};

class IncomparableRunsError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace consolidsim

#endif // CONSOLIDSIM_TYPES_HPP
