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
#ifndef CASP2FZN_IR_HPP
#define CASP2FZN_IR_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace casp2fzn {

using VarId = std::uint32_t;

enum class VarKind : std::uint8_t { Bool, Int };

struct Variable {
    std::string name;
    VarKind kind = VarKind::Bool;
    std::int64_t lb = 0;
    std::int64_t ub = 1;
    friend bool operator==(const Variable&, const Variable&) = default;
};

/// A Boolean variable or its negation.
struct BoolLit {
    VarId var = 0;
    bool negated = false;
    [[nodiscard]] BoolLit operator~() const noexcept { return {var, !negated}; }
    friend bool operator==(const BoolLit&, const BoolLit&) = default;
};

/// Integer-valued term: coeff * var, var is an integer variable.
struct LinTerm {
    std::int64_t coeff = 1;
    VarId var = 0;
    friend bool operator==(const LinTerm&, const LinTerm&) = default;
};

enum class LinOp : std::uint8_t { Le, Eq, Ne };

/// sum(terms) op rhs
struct LinExpr {
    std::vector<LinTerm> terms;
    LinOp op = LinOp::Le;
    std::int64_t rhs = 0;
    friend bool operator==(const LinExpr&, const LinExpr&) = default;
};

struct Clause {
    std::vector<BoolLit> lits;
    friend bool operator==(const Clause&, const Clause&) = default;
};

/// target <-> lits[0] /\ ... /\ lits[n-1]
struct ReifAnd {
    VarId target = 0;
    std::vector<BoolLit> lits;
    friend bool operator==(const ReifAnd&, const ReifAnd&) = default;
};

/// target <-> lits[0] \/ ... \/ lits[n-1]
struct ReifOr {
    VarId target = 0;
    std::vector<BoolLit> lits;
    friend bool operator==(const ReifOr&, const ReifOr&) = default;
};

struct Implies {
    BoolLit from;
    BoolLit to;
    friend bool operator==(const Implies&, const Implies&) = default;
};

struct Linear {
    LinExpr expr;
    friend bool operator==(const Linear&, const Linear&) = default;
};

/// target <-> expr
struct ReifLinear {
    VarId target = 0;
    LinExpr expr;
    friend bool operator==(const ReifLinear&, const ReifLinear&) = default;
};

struct IntOperand {
    std::optional<VarId> var;
    std::int64_t value = 0;
    static IntOperand of(VarId v) { return {v, 0}; }
    static IntOperand constant(std::int64_t c) { return {std::nullopt, c}; }
    friend bool operator==(const IntOperand&, const IntOperand&) = default;
};

struct Task {
    IntOperand start;
    IntOperand duration;
    IntOperand resource = IntOperand::constant(1);
    friend bool operator==(const Task&, const Task&) = default;
};

struct AllDifferent {
    std::vector<VarId> vars;
    friend bool operator==(const AllDifferent&, const AllDifferent&) = default;
};

/// Non-overlapping tasks; tasks of duration 0 never conflict, negative durations are infeasible.
struct Disjunctive {
    std::vector<Task> tasks;
    friend bool operator==(const Disjunctive&, const Disjunctive&) = default;
};

/// Resource usage of running tasks stays at or below capacity; negative durations
/// or resources are infeasible.
struct Cumulative {
    std::vector<Task> tasks;
    std::int64_t capacity = 0;
    friend bool operator==(const Cumulative&, const Cumulative&) = default;
};

using Constraint = std::variant<Clause, ReifAnd, ReifOr, Implies, Linear, ReifLinear, AllDifferent, Disjunctive, Cumulative>;

/// Which part of the translation produced a constraint.
enum class Origin : std::uint8_t {
    RankFalse,           // l_a <= |SCC| <-> a
    RankDep,             // l_a - l_b >= 1 <-> dep
    RankGapAux,          // l_a - l_b >= 2 <-> y
    RankGap,             // a /\ b /\ y <-> gap
    ConstraintNormal,
    ConstraintWeighted,
    BodyCompletion,      // body <-> bd
    BodyRankOne,         // s*bd + s*a + l_a <= 2s+1
    BodyInternal,        // normal body over dep vars <-> bda
    BodyGapClause,
    BodyExternal,        // weighted, outside the SCC <-> ext
    BodyInternalWeighted,
    BodyGapAux,          // weighted, over gap vars <= l-1 <-> aux
    BodyGapAuxClause,
    BodyWeightedRankOne,
    BodyUnion,           // ext \/ int <-> bda
    HeadDisjunctiveSupport,
    HeadSatisfaction,
    HeadSupport,         // sp <-> bd or bda
    HeadImplies,         // sp -> a
    Supported,           // support clause
    LinearAtom,
    Global,
    Link,                // internal helpers (negations, zero-one views)
    Linearization,
};

[[nodiscard]] std::string_view toString(Origin o) noexcept;
[[nodiscard]] bool isRanking(Origin o) noexcept;

struct Objective {
    std::vector<LinTerm> terms;
    std::int64_t offset = 0;
    friend bool operator==(const Objective&, const Objective&) = default;
};

/// Value of every variable, indexed by VarId. Booleans are 0 or 1.
using Assignment = std::vector<std::int64_t>;

/// Solver-neutral constraint model.
///
/// Linear expressions range over integer variables only. A Boolean takes part in
/// sums through its zero-one shadow, an integer variable kept equal to it.
class ConstraintModel {
public:
    VarId addBool(std::string name);
    VarId addInt(std::string name, std::int64_t lb, std::int64_t ub);
    /// Zero-one integer view of a Boolean, created on first use.
    VarId shadow(VarId boolVar);
    void add(Constraint c, Origin origin);
    /// Narrows the bounds of v, e.g. to fix a Boolean.
    void restrict(VarId v, std::int64_t lb, std::int64_t ub);

    [[nodiscard]] const std::vector<Variable>& vars() const noexcept { return vars_; }
    [[nodiscard]] const Variable& var(VarId v) const { return vars_.at(v); }
    [[nodiscard]] std::size_t size() const noexcept { return vars_.size(); }
    [[nodiscard]] std::optional<VarId> find(std::string_view name) const;
    [[nodiscard]] const std::vector<Constraint>& constraints() const noexcept { return constraints_; }
    [[nodiscard]] const std::vector<Origin>& origins() const noexcept { return origins_; }
    [[nodiscard]] std::size_t count(Origin o) const;
    [[nodiscard]] std::size_t countRanking() const;

    /// Boolean to shadow.
    [[nodiscard]] const std::map<VarId, VarId>& shadows() const noexcept { return shadowOf_; }
    [[nodiscard]] std::optional<VarId> shadowOf(VarId boolVar) const;
    [[nodiscard]] std::optional<VarId> baseOf(VarId shadowVar) const;
    [[nodiscard]] bool isShadow(VarId v) const { return boolOf_.count(v) != 0; }

    std::optional<Objective> objective;

    /// Checks the model invariants: references in range, kinds match, bounds ordered.
    /// Throws Error.
    void validate() const;

    /// All constraints and shadow links hold and every value lies within bounds.
    [[nodiscard]] bool satisfies(const Assignment& a) const;
    [[nodiscard]] bool holds(const Constraint& c, const Assignment& a) const;
    [[nodiscard]] std::int64_t objectiveValue(const Assignment& a) const;

    /// Turns a Boolean into a zero-one integer variable with the same id and name.
    /// Used by linearization; the caller is responsible for dropping Boolean constraints.
    void makeInt(VarId v);
    void replaceConstraints(std::vector<Constraint> cs, std::vector<Origin> origins);
    void clearShadows();

    friend bool operator==(const ConstraintModel&, const ConstraintModel&) = default;

private:
    std::vector<Variable> vars_;
    std::map<std::string, VarId, std::less<>> byName_;
    std::vector<Constraint> constraints_;
    std::vector<Origin> origins_;
    std::map<VarId, VarId> shadowOf_; // bool -> shadow
    std::map<VarId, VarId> boolOf_;   // shadow -> bool
};

/// Smallest and largest value of sum(terms) under the declared bounds.
[[nodiscard]] std::pair<std::int64_t, std::int64_t> linearRange(const ConstraintModel& m, const std::vector<LinTerm>& terms);

[[nodiscard]] bool holds(const LinExpr& e, const Assignment& a);

} // namespace casp2fzn

#endif
