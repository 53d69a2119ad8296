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
#ifndef CASP2FZN_LINEARIZE_HPP
#define CASP2FZN_LINEARIZE_HPP

#include <casp2fzn/ir.hpp>

#include <cstddef>
#include <cstdint>

namespace casp2fzn {

struct LinearizeOptions {
    /// Throw instead of decomposing all-different, disjunctive and cumulative.
    bool rejectGlobals = false;
    /// Upper limit on task/time-point pairs in cumulative decompositions.
    std::size_t maxTimePoints = std::size_t{1} << 20;
};

/// Rewrites m into integer programming standard form: every Boolean becomes a 0..1
/// integer with the same id and name, shadows are tied to their Boolean by equations,
/// and every constraint becomes a Linear with operator Le or Eq. Auxiliary variables
/// are appended after the existing ones, so a solution of the result restricted to the
/// first m.size() variables is a solution of m and vice versa.
///
/// Throws UnboundedError for variables at the 64-bit limits and Error when
/// rejectGlobals is set and a global constraint is present.
[[nodiscard]] ConstraintModel linearize(const ConstraintModel& m, const LinearizeOptions& opts = {});

/// Big-M that switches off sum(terms) <= rhs: the largest violation under the declared bounds.
[[nodiscard]] std::int64_t bigM(const ConstraintModel& m, const std::vector<LinTerm>& terms, std::int64_t rhs);

} // namespace casp2fzn

#endif
