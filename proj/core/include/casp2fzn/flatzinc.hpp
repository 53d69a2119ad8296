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
#ifndef CASP2FZN_FLATZINC_HPP
#define CASP2FZN_FLATZINC_HPP

#include <casp2fzn/ir.hpp>
#include <casp2fzn/program.hpp>
#include <casp2fzn/translate.hpp>

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace casp2fzn {

inline constexpr std::string_view kObjectiveName = "objective";

/// Maps a registry name to a FlatZinc identifier. Names of the form
/// [A-Za-z][A-Za-z0-9_]* that are not keywords stay as they are; anything else
/// becomes "q_" followed by the name with every other byte written as _XX (hex).
[[nodiscard]] std::string fznIdentifier(std::string_view name);

/// Identifiers of all variables of m, indexed by VarId. Throws EmitError when two
/// names map to the same identifier or one maps to the objective name.
[[nodiscard]] std::vector<std::string> fznNames(const ConstraintModel& m);

struct EmitOptions {
    /// Only Linear constraints are allowed; anything else raises EmitError.
    bool linearized = false;
    /// Variables annotated with output_var; all when absent.
    std::optional<std::set<VarId>> outputVars;
};

/// FlatZinc text for m. Deterministic: declarations in VarId order, constraints in
/// model order. Throws EmitError.
[[nodiscard]] std::string emitFzn(const ConstraintModel& m, const EmitOptions& opts = {});

/// A #show entry over model variables: printed when every literal holds.
struct ShowEntry {
    std::string name;
    std::vector<BoolLit> condition;
    friend bool operator==(const ShowEntry&, const ShowEntry&) = default;
};

struct LinearShow {
    std::string name;
    VarId var = 0;
    friend bool operator==(const LinearShow&, const LinearShow&) = default;
};

/// Show entries of p over the atom variables of t, in program order.
[[nodiscard]] std::vector<ShowEntry> showEntries(const GroundProgram& p, const Translation& t);
/// All linear variables of t, by name.
[[nodiscard]] std::vector<LinearShow> linearShows(const Translation& t);

/// Output-mapping sidecar, one entry per line:
///   show "<name>" = x_2 !x_3
///   var "<name>" = v_x
///   objective = objective
/// Names are JSON string literals.
[[nodiscard]] std::string emitOutputSpec(const ConstraintModel& m, const std::vector<ShowEntry>& shows,
                                         const std::vector<LinearShow>& vars);

struct OutputSpec {
    struct Show {
        std::string name;
        /// (identifier, negated)
        std::vector<std::pair<std::string, bool>> condition;
        friend bool operator==(const Show&, const Show&) = default;
    };
    std::vector<Show> shows;
    /// (display name, identifier)
    std::vector<std::pair<std::string, std::string>> vars;
    std::optional<std::string> objective;
    friend bool operator==(const OutputSpec&, const OutputSpec&) = default;
};

/// Throws DecodeError.
[[nodiscard]] OutputSpec parseOutputSpec(std::string_view text);

/// Identifiers the decoder needs from the solver.
[[nodiscard]] std::set<std::string> requiredIdentifiers(const OutputSpec& spec);

struct Solution {
    std::vector<std::string> atoms;
    std::map<std::string, std::int64_t> linVars;
    std::optional<std::int64_t> cost;
    friend bool operator==(const Solution&, const Solution&) = default;
};

enum class SolveStatus : std::uint8_t {
    Unknown,       // stream ended without a final status
    Satisfiable,   // at least one solution, search not complete
    Complete,      // all solutions found, or the last one is optimal
    Unsatisfiable,
    Unbounded,
    Error,
};

[[nodiscard]] std::string_view toString(SolveStatus s) noexcept;

/// Reads a FlatZinc solver's solution stream: "id = value;" lines, solutions ended by
/// "----------", final status "==========" or "=====UNSATISFIABLE=====" and friends.
/// Lines starting with '%' and empty lines are skipped, as are assignments to
/// identifiers the output spec does not mention.
class SolutionDecoder {
public:
    explicit SolutionDecoder(OutputSpec spec);

    /// Feeds one line (without newline); returns the solution it completes, if any.
    /// Throws DecodeError.
    std::optional<Solution> feed(std::string_view line);
    [[nodiscard]] SolveStatus status() const noexcept { return status_; }
    [[nodiscard]] std::size_t solutions() const noexcept { return count_; }

private:
    OutputSpec spec_;
    std::set<std::string> wanted_;
    std::map<std::string, std::int64_t> values_;
    SolveStatus status_ = SolveStatus::Unknown;
    std::size_t count_ = 0;
    std::size_t line_ = 0;
    bool finished_ = false;
};

/// Decodes a whole stream, calling onSolution for each solution.
SolveStatus decodeSolutions(std::istream& in, const OutputSpec& spec, const std::function<void(const Solution&)>& onSolution);

/// "a b val(x,1) " as printed between separators: every atom followed by a space.
[[nodiscard]] std::string formatAnswerSet(const Solution& s);

} // namespace casp2fzn

#endif
