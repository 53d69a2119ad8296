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
#ifndef CASP2FZN_PROGRAM_HPP
#define CASP2FZN_PROGRAM_HPP

#include <cstdint>
#include <cstdlib>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

namespace casp2fzn {

/// Propositional atom. Id 0 is reserved and never names an atom.
using Atom = std::uint32_t;
/// Signed literal in ASPIF convention: a positive value is the atom, a negative one its default negation.
using Lit = std::int32_t;
using Weight = std::int64_t;

inline constexpr Atom atomOf(Lit l) noexcept { return static_cast<Atom>(l < 0 ? -l : l); }
inline constexpr bool isNegative(Lit l) noexcept { return l < 0; }
inline constexpr Lit posLit(Atom a) noexcept { return static_cast<Lit>(a); }
inline constexpr Lit negLit(Atom a) noexcept { return -static_cast<Lit>(a); }

struct WeightLit {
    Lit lit{};
    Weight weight{};
    friend bool operator==(const WeightLit&, const WeightLit&) = default;
    friend auto operator<=>(const WeightLit&, const WeightLit&) = default;
};

enum class HeadKind : std::uint8_t { Disjunctive, Choice };

/// b_1, ..., b_k, not b_{k+1}, ..., not b_n
struct NormalBody {
    std::vector<Atom> pos;
    std::vector<Atom> neg;
    friend bool operator==(const NormalBody&, const NormalBody&) = default;
};

/// bound <= { l_1 : w_1, ..., l_n : w_n }. After parsing all weights are non-negative and
/// every literal occurs at most once.
struct WeightBody {
    Weight bound{};
    std::vector<WeightLit> lits;
    friend bool operator==(const WeightBody&, const WeightBody&) = default;
};

using Body = std::variant<NormalBody, WeightBody>;

struct Rule {
    HeadKind headKind = HeadKind::Disjunctive;
    std::vector<Atom> head;
    Body body;

    [[nodiscard]] bool isChoice() const noexcept { return headKind == HeadKind::Choice; }
    /// Disjunctive rule with an empty head.
    [[nodiscard]] bool isConstraint() const noexcept { return headKind == HeadKind::Disjunctive && head.empty(); }
    [[nodiscard]] bool isWeighted() const noexcept { return std::holds_alternative<WeightBody>(body); }
    /// B^+(r), sorted and duplicate free.
    [[nodiscard]] std::vector<Atom> positiveBody() const;
    /// B^-(r), sorted and duplicate free.
    [[nodiscard]] std::vector<Atom> negativeBody() const;

    friend bool operator==(const Rule&, const Rule&) = default;
};

struct MinimizeStatement {
    int priority = 0;
    std::vector<WeightLit> terms;
    friend bool operator==(const MinimizeStatement&, const MinimizeStatement&) = default;
};

// Raw theory data, kept as the grounder emitted it. Interpretation happens in theory.hpp.

struct TheoryTerm {
    enum class Kind : std::uint8_t { Number, Symbol, Compound };
    // Functor ids of compound terms that denote parenthesized collections.
    static constexpr std::int32_t Tuple = -1;
    static constexpr std::int32_t Set = -2;
    static constexpr std::int32_t List = -3;

    Kind kind = Kind::Number;
    std::int64_t number = 0;
    std::string symbol;
    std::int32_t functor = 0; ///< term id of the function name, or Tuple/Set/List
    std::vector<std::uint32_t> args;
    friend bool operator==(const TheoryTerm&, const TheoryTerm&) = default;
};

struct TheoryElement {
    std::vector<std::uint32_t> terms;
    std::vector<Lit> condition;
    friend bool operator==(const TheoryElement&, const TheoryElement&) = default;
};

struct TheoryGuard {
    std::uint32_t op = 0; ///< term id of the operator symbol
    std::uint32_t rhs = 0;
    friend bool operator==(const TheoryGuard&, const TheoryGuard&) = default;
};

struct TheoryAtom {
    Atom atom = 0; ///< 0 for directives
    std::uint32_t name = 0;
    std::vector<std::uint32_t> elements;
    std::optional<TheoryGuard> guard;
    friend bool operator==(const TheoryAtom&, const TheoryAtom&) = default;
};

struct TheoryData {
    std::map<std::uint32_t, TheoryTerm> terms;
    std::map<std::uint32_t, TheoryElement> elements;
    std::vector<TheoryAtom> atoms;

    [[nodiscard]] bool empty() const noexcept { return terms.empty() && elements.empty() && atoms.empty(); }
    /// Renders a term in gringo syntax, e.g. "start(1)" or "0..2".
    [[nodiscard]] std::string render(std::uint32_t term) const;
    friend bool operator==(const TheoryData&, const TheoryData&) = default;
};

/// #show entry: the name is printed whenever every condition literal holds.
struct OutputEntry {
    std::string name;
    std::vector<Lit> condition;
    friend bool operator==(const OutputEntry&, const OutputEntry&) = default;
};

/// A ground (C)ASP program.
class GroundProgram {
public:
    std::set<Atom> atoms;
    std::vector<Rule> rules;
    std::vector<MinimizeStatement> minimize;
    TheoryData theory;
    std::vector<OutputEntry> shows;

    void addAtom(Atom a);
    /// Registers every atom referenced by r and appends it.
    void addRule(Rule r);
    [[nodiscard]] Atom maxAtom() const noexcept { return atoms.empty() ? 0 : *atoms.rbegin(); }
    /// Output entries with exactly one positive condition literal, keyed by that atom.
    [[nodiscard]] std::map<Atom, std::string> atomNames() const;

    friend bool operator==(const GroundProgram&, const GroundProgram&) = default;
};

/// I |= B(r) for an interpretation given as a sorted or hashed membership predicate.
template <class Contains>
bool bodyHolds(const Rule& r, Contains&& in) {
    if (const auto* nb = std::get_if<NormalBody>(&r.body)) {
        for (Atom b : nb->pos) {
            if (!in(b)) return false;
        }
        for (Atom b : nb->neg) {
            if (in(b)) return false;
        }
        return true;
    }
    const auto& wb = std::get<WeightBody>(r.body);
    Weight sum = 0;
    for (const auto& wl : wb.lits) {
        if (in(atomOf(wl.lit)) != isNegative(wl.lit)) sum += wl.weight;
    }
    return sum >= wb.bound;
}

/// Merges priority levels into one objective with lexicographic semantics.
/// A term at level p is scaled by F_p, F_0 = 1 (lowest level) and
/// F_{p+1} = F_p * (1 + sum of |w| over levels <= p). Returns nullopt for no statements.
/// Throws OverflowError when a scaled weight leaves the int64 range.
[[nodiscard]] std::optional<MinimizeStatement> compilePriorities(const std::vector<MinimizeStatement>& statements);

/// Cost of an interpretation under a (single-level) minimize statement.
template <class Contains>
Weight minimizeCost(const MinimizeStatement& m, Contains&& in) {
    Weight c = 0;
    for (const auto& t : m.terms) {
        if (in(atomOf(t.lit)) != isNegative(t.lit)) c += t.weight;
    }
    return c;
}

} // namespace casp2fzn

#endif
