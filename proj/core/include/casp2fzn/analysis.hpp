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
#ifndef CASP2FZN_ANALYSIS_HPP
#define CASP2FZN_ANALYSIS_HPP

#include <casp2fzn/program.hpp>

#include <cstdint>
#include <map>
#include <set>
#include <vector>

namespace casp2fzn {

using SccId = std::uint32_t;

/// Positive dependency graph and its strongly connected components.
///
/// Component ids are assigned in order of the smallest atom of each component,
/// so they only depend on the program, not on traversal details.
struct SccInfo {
    /// a -> sorted positive body atoms b of rules with a in the head.
    std::map<Atom, std::vector<Atom>> edges;
    std::map<Atom, SccId> sccId;
    std::vector<std::uint32_t> sccSize;
    std::set<SccId> nontrivial;

    [[nodiscard]] bool tight() const noexcept { return nontrivial.empty(); }
    [[nodiscard]] SccId scc(Atom a) const { return sccId.at(a); }
    /// |SCC_P(a)|, 1 for atoms not in the graph.
    [[nodiscard]] std::uint32_t sizeOf(Atom a) const;
    [[nodiscard]] bool sameScc(Atom a, Atom b) const;
    [[nodiscard]] bool inNontrivialScc(Atom a) const { return sizeOf(a) > 1; }
    /// Edges (a,b) with a and b in the same component, sorted.
    [[nodiscard]] std::vector<std::pair<Atom, Atom>> internalEdges() const;

    friend bool operator==(const SccInfo&, const SccInfo&) = default;
};

[[nodiscard]] SccInfo buildDepGraph(const GroundProgram& p);

/// No two distinct atoms of a disjunctive head share a component. Choice heads are
/// not restricted since a choice rule is equivalent to one choice rule per head atom.
[[nodiscard]] bool isHcf(const GroundProgram& p, const SccInfo& s);

/// True if some head atom of a proper disjunction shares a component with a positive body atom.
[[nodiscard]] bool violatesPartialShift(const Rule& r, const SccInfo& s);

/// Shifts every proper disjunctive rule whose head meets the component of a positive
/// body atom. Normal bodies are shifted in place (a_i <- B, not a_j for j != i); weight
/// bodies first move to a fresh atom aux <- B, then a_i <- aux, not a_j.
/// Fresh atoms are numbered upwards from maxAtom() + 1 in rule order.
/// Returns p unchanged when nothing violates. Throws NotHcfError for non-HCF input.
[[nodiscard]] GroundProgram partiallyShift(const GroundProgram& p, const SccInfo& s);

} // namespace casp2fzn

#endif
