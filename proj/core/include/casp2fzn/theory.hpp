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
#ifndef CASP2FZN_THEORY_HPP
#define CASP2FZN_THEORY_HPP

#include <casp2fzn/program.hpp>

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace casp2fzn {

enum class CmpOp : std::uint8_t { Lt, Gt, Eq, Ne, Le, Ge };

[[nodiscard]] std::string_view toString(CmpOp op) noexcept;
[[nodiscard]] std::optional<CmpOp> parseCmpOp(std::string_view s) noexcept;
[[nodiscard]] bool compare(std::int64_t lhs, CmpOp op, std::int64_t rhs) noexcept;

struct Interval {
    std::int64_t lo = 0;
    std::int64_t hi = 0;
    [[nodiscard]] bool empty() const noexcept { return lo > hi; }
    [[nodiscard]] bool contains(std::int64_t v) const noexcept { return lo <= v && v <= hi; }
    friend bool operator==(const Interval&, const Interval&) = default;
};

struct LinearTerm {
    std::string var;
    std::int64_t coeff = 1;
    friend bool operator==(const LinearTerm&, const LinearTerm&) = default;
    friend auto operator<=>(const LinearTerm&, const LinearTerm&) = default;
};

/// sum(coeff_i * var_i) op rhs. Terms are sorted by variable name, one per variable.
struct LinearConstraint {
    std::vector<LinearTerm> terms;
    CmpOp op = CmpOp::Eq;
    std::int64_t rhs = 0;
    friend bool operator==(const LinearConstraint&, const LinearConstraint&) = default;
};

/// Either a linear variable or an integer constant.
struct Operand {
    std::optional<std::string> var;
    std::int64_t value = 0;

    static Operand variable(std::string name) { return Operand{std::move(name), 0}; }
    static Operand constant(std::int64_t v) { return Operand{std::nullopt, v}; }
    friend bool operator==(const Operand&, const Operand&) = default;
};

struct TaskSpec {
    Operand start;
    Operand length;
    Operand resource = Operand::constant(1);
    friend bool operator==(const TaskSpec&, const TaskSpec&) = default;
};

struct DistinctSpec {
    std::vector<std::string> vars;
    friend bool operator==(const DistinctSpec&, const DistinctSpec&) = default;
};

/// Tasks [start, start+length) never overlap; zero-length tasks never conflict.
struct DisjointSpec {
    std::vector<TaskSpec> tasks;
    friend bool operator==(const DisjointSpec&, const DisjointSpec&) = default;
};

/// At every time point the resources of running tasks sum to at most bound.
struct CumulativeSpec {
    std::vector<TaskSpec> tasks;
    std::int64_t bound = 0;
    friend bool operator==(const CumulativeSpec&, const CumulativeSpec&) = default;
};

using GlobalSpec = std::variant<DistinctSpec, DisjointSpec, CumulativeSpec>;

/// The constraint part of a CASP program.
struct CaspSpec {
    std::set<std::string> vars;
    std::map<std::string, Interval> domains;
    std::map<Atom, LinearConstraint> linAtoms;
    std::vector<GlobalSpec> globals;
    /// Sorted by variable, merged.
    std::vector<LinearTerm> objective;

    [[nodiscard]] bool empty() const noexcept {
        return vars.empty() && domains.empty() && linAtoms.empty() && globals.empty() && objective.empty();
    }
    friend bool operator==(const CaspSpec&, const CaspSpec&) = default;
};

/// Interprets the theory statements of p according to the cp theory:
///   &sum{...} op g     (body, reified by its atom)
///   &dom{l..u} = v     (head)
///   &minimize{...}     (directive)
///   &distinct{...}, &disjoint{s@l; ...}, &cumulative{s@l@r; ...} <= g   (head)
/// Head atoms must be unconditional, i.e. heads of facts. Elements with conditions are rejected.
/// Throws TheoryError.
[[nodiscard]] CaspSpec extractCasp(const GroundProgram& p);

struct DefaultedSpec {
    CaspSpec spec;
    std::vector<std::string> defaulted;
};

/// Gives every variable without a domain the fallback interval.
[[nodiscard]] DefaultedSpec boundOrDefault(const CaspSpec& spec, Interval fallback);

inline constexpr Interval kDefaultFallback{-(std::int64_t{1} << 20), std::int64_t{1} << 20};

/// Value of a linear constraint under an assignment; missing variables throw std::out_of_range.
[[nodiscard]] bool evaluate(const LinearConstraint& c, const std::map<std::string, std::int64_t>& values);
[[nodiscard]] bool evaluate(const GlobalSpec& g, const std::map<std::string, std::int64_t>& values);

} // namespace casp2fzn

#endif
