// Copyright 2026 The milpenv Authors
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

// Reader and writer for a subset of the CPLEX LP text format.
//
// Supported sections: Minimize/Maximize, Subject To, Bounds, Generals,
// Binaries, End. Backslash starts a comment. Section headers must sit on a
// line of their own; statements may span lines. Numbers are written in
// shortest round-trip decimal form, so write followed by read reproduces
// every coefficient bit for bit. See docs/lp_format.md for the grammar.

#ifndef MILPENV_LP_FORMAT_H_
#define MILPENV_LP_FORMAT_H_

#include <cstddef>
#include <filesystem>
#include <string>
#include <string_view>

#include "milpenv/problem.h"

namespace milpenv {

// Serializes a valid problem. Throws InvalidProblemError otherwise, or if a
// variable name is not a legal LP identifier.
std::string WriteLpString(const Problem& problem);

// Writes the LP text to `path` and returns the number of bytes written.
std::size_t WriteLpFile(const Problem& problem,
                        const std::filesystem::path& path);

// Throws LpParseError (with line/column) on malformed text and
// UnsupportedFeatureError on constructs outside the subset.
Problem ReadLpString(std::string_view text);
Problem ReadLpFile(const std::filesystem::path& path);

// Shortest decimal text that parses back to exactly `value`.
std::string FormatDouble(double value);

}  // namespace milpenv

#endif  // MILPENV_LP_FORMAT_H_
