/*
 *  Copyright (C) 2026  The casp2fzn authors
 *
 *  Licensed under the Apache License, Version 2.0 (the "License");
 *  you may not use this file except in compliance with the License.
 *  You may obtain a copy of the License at
 *
 *    http://www.apache.org/licenses/LICENSE-2.0
 *
 *  Unless required by applicable law or agreed to in writing, software
 *  distributed under the License is distributed on an "AS IS" BASIS,
 *  WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 *  See the License for the specific language governing permissions and
 *  limitations under the License.
 *
 */
#ifndef CASP2FZN_ASPIF_HPP
#define CASP2FZN_ASPIF_HPP

#include <casp2fzn/program.hpp>

#include <iosfwd>
#include <string_view>

namespace casp2fzn {

/// Reads a ground program in ASPIF text format (version 1, non-incremental).
///
/// Weight bodies are normalized while reading: a literal with negative weight w is
/// replaced by its complement with weight -w and the bound is raised by -w, then
/// duplicate literals are merged by adding their weights. Duplicate head atoms and
/// duplicate normal-body literals are removed.
///
/// Throws SyntaxError for malformed input, UnsupportedStatement for projection,
/// external, assumption, heuristic and edge statements as well as incremental
/// programs, and TautologyError if a head atom occurs in the positive body.
[[nodiscard]] GroundProgram parseAspif(std::istream& in);
[[nodiscard]] GroundProgram parseAspif(std::string_view text);

/// Writes p in canonical ASPIF: rules, minimize statements, theory terms/elements/atoms
/// (ordered by id) and output statements, in that order.
void writeAspif(const GroundProgram& p, std::ostream& out);

} // namespace casp2fzn

#endif
