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
#ifndef CASP2FZN_ORACLE_HPP
#define CASP2FZN_ORACLE_HPP

#include <casp2fzn/analysis.hpp>
#include <casp2fzn/ir.hpp>
#include <casp2fzn/program.hpp>
#include <casp2fzn/theory.hpp>
#include <casp2fzn/translate.hpp>

#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace casp2fzn {

/// <I, delta>: true atoms and values of the linear variables.
struct EInterpretation {
    std::set<Atom> atoms;
    std::map<std::string, std::int64_t> assignment;
    friend bool operator==(const EInterpretation&, const EInterpretation&) = default;
    friend auto operator<=>(const EInterpretation&, const EInterpretation&) = default;
};

[[nodiscard]] std::string toString(const EInterpretation& e, const std::map<Atom, std::string>& names = {});

inline constexpr std::uint64_t kDefaultOracleCap = std::uint64_t{1} << 22;

/// I is a subset-minimal model of the reduct of p w.r.t. I, where the atoms in
/// freeAtoms are additionally given the rule {a} <-.
///
/// The reduct keeps, for each rule whose body I satisfies, the positive part of the
/// body; negative literals are evaluated in I, which for weighted bodies lowers the
/// bound to max(0, l - sum of weights of negative literals false in I).
[[nodiscard]] bool isAnswerSet(const GroundProgram& p, const std::set<Atom>& I, const std::set<Atom>& freeAtoms = {});

[[nodiscard]] bool isModel(const GroundProgram& p, const std::set<Atom>& I);

/// All answer sets over p.atoms, sorted. Throws SearchSpaceTooLarge if 2^|atoms| > cap.
[[nodiscard]] std::vector<std::set<Atom>> enumerateAspAnswerSets(const GroundProgram& p, const std::set<Atom>& freeAtoms = {},
                                                               std::uint64_t cap = kDefaultOracleCap);

/// All constraint answer sets, sorted. Every linear variable needs a domain.
/// Throws SearchSpaceTooLarge if 2^|atoms| times the domain product exceeds cap,
/// UnboundedError for variables without domain.
[[nodiscard]] std::vector<EInterpretation> enumerateAnswerSets(const GroundProgram& p, const CaspSpec& spec,
                                                               std::uint64_t cap = kDefaultOracleCap);

/// c_P(I) of the compiled minimize statement plus the linear objective.
[[nodiscard]] std::int64_t cost(const GroundProgram& p, const CaspSpec& spec, const EInterpretation& e);

/// Rank of an atom; kInfinity (or absence) stands for atoms outside I.
using Ranks = std::map<Atom, std::int64_t>;
inline constexpr std::int64_t kInfinity = std::numeric_limits<std::int64_t>::max();

struct SupportReport {
    bool ok = true;
    std::vector<std::string> problems;
    explicit operator bool() const noexcept { return ok; }
};

/// Ranked supported model: I |= p, ranks are finite exactly on I, every a in I is
/// supported by a rule whose positive body atoms have smaller rank.
[[nodiscard]] SupportReport checkRankedSupported(const GroundProgram& p, const std::set<Atom>& I, const Ranks& ranks,
                                                 const std::set<Atom>& freeAtoms = {});

/// Modular ranked scc-supported model: additionally rank(a) <= |SCC(a)| for a in I,
/// and only body atoms in the component of a need a smaller rank.
[[nodiscard]] SupportReport checkModularSccSupported(const GroundProgram& p, const SccInfo& scc, const std::set<Atom>& I,
                                                     const Ranks& ranks, const std::set<Atom>& freeAtoms = {});

/// Searches ranks in [1, maxRank] for the atoms of I that pass the respective check.
[[nodiscard]] std::optional<Ranks> findRanks(const GroundProgram& p, const std::set<Atom>& I, bool modular,
                                             const std::set<Atom>& freeAtoms = {});

struct IrEnumerateOptions {
    /// Limit on search nodes.
    std::uint64_t cap = std::uint64_t{1} << 26;
    /// When set, one model per distinct assignment of these variables; the values of the
    /// other variables are those of some completion.
    std::optional<std::vector<VarId>> projection;
};

/// Exhaustive model enumeration with bound propagation, sorted by assignment.
[[nodiscard]] std::vector<Assignment> enumerateIrModels(const ConstraintModel& m, const IrEnumerateOptions& opts = {});

/// Plain generate-and-test over the full domain product, sorted; for cross-checking.
/// Throws SearchSpaceTooLarge if the product exceeds cap.
[[nodiscard]] std::vector<Assignment> enumerateIrModelsBruteForce(const ConstraintModel& m, std::uint64_t cap = std::uint64_t{1} << 22);

/// Projection of a model of a translation onto atoms and linear variables.
[[nodiscard]] EInterpretation project(const Translation& t, const Assignment& a);

struct Verdict {
    enum class Kind { OneToOne, ProjectionEqual, Mismatch };
    Kind kind = Kind::Mismatch;
    std::size_t answerSets = 0;
    std::size_t models = 0;
    /// Present on one side only.
    std::optional<EInterpretation> witness;
    std::string detail;
};

[[nodiscard]] std::string_view toString(Verdict::Kind k) noexcept;

/// Compares AS(p) with the projected models of t.
/// OneToOne: projection is a bijection onto AS(p). ProjectionEqual: same sets, some
/// answer set has several models. Non-strict checks only compare the sets.
[[nodiscard]] Verdict checkCorrespondence(const GroundProgram& p, const CaspSpec& spec, const Translation& t, bool strict,
                                          std::uint64_t cap = kDefaultOracleCap);

} // namespace casp2fzn

#endif
