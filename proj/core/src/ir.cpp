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
#include <casp2fzn/ir.hpp>

#include <casp2fzn/error.hpp>

#include <algorithm>
#include <limits>

namespace casp2fzn {

std::string_view toString(Origin o) noexcept {
    switch (o) {
        case Origin::RankFalse: return "rank-false";
        case Origin::RankDep: return "rank-dep";
        case Origin::RankGapAux: return "rank-gap-aux";
        case Origin::RankGap: return "rank-gap";
        case Origin::ConstraintNormal: return "constraint-normal";
        case Origin::ConstraintWeighted: return "constraint-weighted";
        case Origin::BodyCompletion: return "body-completion";
        case Origin::BodyRankOne: return "body-rank-one";
        case Origin::BodyInternal: return "body-internal";
        case Origin::BodyGapClause: return "body-gap-clause";
        case Origin::BodyExternal: return "body-external";
        case Origin::BodyInternalWeighted: return "body-internal-weighted";
        case Origin::BodyGapAux: return "body-gap-aux";
        case Origin::BodyGapAuxClause: return "body-gap-aux-clause";
        case Origin::BodyWeightedRankOne: return "body-weighted-rank-one";
        case Origin::BodyUnion: return "body-union";
        case Origin::HeadDisjunctiveSupport: return "head-disjunctive-support";
        case Origin::HeadSatisfaction: return "head-satisfaction";
        case Origin::HeadSupport: return "head-support";
        case Origin::HeadImplies: return "head-implies";
        case Origin::Supported: return "supported";
        case Origin::LinearAtom: return "linear-atom";
        case Origin::Global: return "global";
        case Origin::Link: return "link";
        case Origin::Linearization: return "linearization";
    }
    return "?";
}

bool isRanking(Origin o) noexcept {
    return o == Origin::RankFalse || o == Origin::RankDep || o == Origin::RankGapAux || o == Origin::RankGap;
}

VarId ConstraintModel::addBool(std::string name) {
    auto id = static_cast<VarId>(vars_.size());
    if (!byName_.emplace(name, id).second) throw Error("duplicate variable name " + name);
    vars_.push_back({std::move(name), VarKind::Bool, 0, 1});
    return id;
}

VarId ConstraintModel::addInt(std::string name, std::int64_t lb, std::int64_t ub) {
    auto id = static_cast<VarId>(vars_.size());
    if (!byName_.emplace(name, id).second) throw Error("duplicate variable name " + name);
    vars_.push_back({std::move(name), VarKind::Int, lb, ub});
    return id;
}

VarId ConstraintModel::shadow(VarId boolVar) {
    if (auto it = shadowOf_.find(boolVar); it != shadowOf_.end()) return it->second;
    if (var(boolVar).kind != VarKind::Bool) throw Error("shadow of non-Boolean " + var(boolVar).name);
    VarId s = addInt("i_" + var(boolVar).name, var(boolVar).lb, var(boolVar).ub);
    shadowOf_[boolVar] = s;
    boolOf_[s] = boolVar;
    return s;
}

void ConstraintModel::add(Constraint c, Origin origin) {
    constraints_.push_back(std::move(c));
    origins_.push_back(origin);
}

void ConstraintModel::restrict(VarId v, std::int64_t lb, std::int64_t ub) {
    auto& x = vars_.at(v);
    x.lb = std::max(x.lb, lb);
    x.ub = std::min(x.ub, ub);
}

std::optional<VarId> ConstraintModel::find(std::string_view name) const {
    auto it = byName_.find(name);
    if (it == byName_.end()) return std::nullopt;
    return it->second;
}

std::size_t ConstraintModel::count(Origin o) const { return static_cast<std::size_t>(std::count(origins_.begin(), origins_.end(), o)); }

std::size_t ConstraintModel::countRanking() const {
    return static_cast<std::size_t>(std::count_if(origins_.begin(), origins_.end(), isRanking));
}

std::optional<VarId> ConstraintModel::shadowOf(VarId boolVar) const {
    auto it = shadowOf_.find(boolVar);
    if (it == shadowOf_.end()) return std::nullopt;
    return it->second;
}

std::optional<VarId> ConstraintModel::baseOf(VarId shadowVar) const {
    auto it = boolOf_.find(shadowVar);
    if (it == boolOf_.end()) return std::nullopt;
    return it->second;
}

void ConstraintModel::makeInt(VarId v) {
    auto& x = vars_.at(v);
    x.kind = VarKind::Int;
}

void ConstraintModel::replaceConstraints(std::vector<Constraint> cs, std::vector<Origin> origins) {
    if (cs.size() != origins.size()) throw Error("constraint and origin counts differ");
    constraints_ = std::move(cs);
    origins_ = std::move(origins);
}

void ConstraintModel::clearShadows() {
    shadowOf_.clear();
    boolOf_.clear();
}

namespace {

class Validator {
public:
    explicit Validator(const ConstraintModel& m) : m_(m) {}

    void var(VarId v) const {
        if (v >= m_.size()) throw Error("reference to undeclared variable " + std::to_string(v));
    }
    void boolVar(VarId v) const {
        var(v);
        if (m_.var(v).kind != VarKind::Bool) throw Error("Boolean expected: " + m_.var(v).name);
    }
    void intVar(VarId v) const {
        var(v);
        if (m_.var(v).kind != VarKind::Int) throw Error("integer expected: " + m_.var(v).name);
    }
    void lits(const std::vector<BoolLit>& ls) const {
        for (const auto& l : ls) boolVar(l.var);
    }
    void expr(const LinExpr& e) const {
        for (const auto& t : e.terms) intVar(t.var);
    }
    void operand(const IntOperand& o) const {
        if (o.var) intVar(*o.var);
    }
    void tasks(const std::vector<Task>& ts) const {
        for (const auto& t : ts) {
            operand(t.start);
            operand(t.duration);
            operand(t.resource);
        }
    }

    void operator()(const Clause& c) const { lits(c.lits); }
    void operator()(const ReifAnd& c) const {
        boolVar(c.target);
        lits(c.lits);
    }
    void operator()(const ReifOr& c) const {
        boolVar(c.target);
        lits(c.lits);
    }
    void operator()(const Implies& c) const {
        boolVar(c.from.var);
        boolVar(c.to.var);
    }
    void operator()(const Linear& c) const { expr(c.expr); }
    void operator()(const ReifLinear& c) const {
        boolVar(c.target);
        expr(c.expr);
    }
    void operator()(const AllDifferent& c) const {
        for (VarId v : c.vars) intVar(v);
    }
    void operator()(const Disjunctive& c) const { tasks(c.tasks); }
    void operator()(const Cumulative& c) const { tasks(c.tasks); }

private:
    const ConstraintModel& m_;
};

bool litValue(const BoolLit& l, const Assignment& a) { return (a[l.var] != 0) != l.negated; }

std::int64_t operandValue(const IntOperand& o, const Assignment& a) { return o.var ? a[*o.var] : o.value; }

bool disjunctiveHolds(const std::vector<Task>& ts, const Assignment& a) {
    for (std::size_t i = 0; i < ts.size(); ++i) {
        std::int64_t si = operandValue(ts[i].start, a);
        std::int64_t di = operandValue(ts[i].duration, a);
        if (di < 0) return false;
        for (std::size_t j = i + 1; j < ts.size(); ++j) {
            std::int64_t sj = operandValue(ts[j].start, a);
            std::int64_t dj = operandValue(ts[j].duration, a);
            if (dj < 0) return false;
            if (di == 0 || dj == 0) continue;
            if (si + di > sj && sj + dj > si) return false;
        }
    }
    return true;
}

bool cumulativeHolds(const Cumulative& c, const Assignment& a) {
    for (const auto& t : c.tasks) {
        if (operandValue(t.duration, a) < 0 || operandValue(t.resource, a) < 0) return false;
    }
    for (const auto& p : c.tasks) {
        std::int64_t at = operandValue(p.start, a);
        __int128 load = 0;
        for (const auto& t : c.tasks) {
            std::int64_t s = operandValue(t.start, a);
            std::int64_t d = operandValue(t.duration, a);
            if (s <= at && at < s + d) load += operandValue(t.resource, a);
        }
        if (load > c.capacity) return false;
    }
    return true;
}

} // namespace

bool holds(const LinExpr& e, const Assignment& a) {
    __int128 sum = 0;
    for (const auto& t : e.terms) sum += static_cast<__int128>(t.coeff) * a[t.var];
    switch (e.op) {
        case LinOp::Le: return sum <= e.rhs;
        case LinOp::Eq: return sum == e.rhs;
        case LinOp::Ne: return sum != e.rhs;
    }
    return false;
}

void ConstraintModel::validate() const {
    for (const auto& v : vars_) {
        if (v.lb > v.ub) throw Error("empty domain for " + v.name);
        if (v.kind == VarKind::Bool && (v.lb < 0 || v.ub > 1)) throw Error("Boolean with bounds outside 0..1: " + v.name);
    }
    Validator check(*this);
    for (const auto& c : constraints_) std::visit(check, c);
    for (const auto& [b, s] : shadowOf_) {
        check.boolVar(b);
        check.intVar(s);
        if (vars_[s].lb < 0 || vars_[s].ub > 1) throw Error("shadow with bounds outside 0..1: " + vars_[s].name);
    }
    if (objective) {
        for (const auto& t : objective->terms) check.intVar(t.var);
    }
}

bool ConstraintModel::holds(const Constraint& c, const Assignment& a) const {
    return std::visit(
        [&](const auto& k) -> bool {
            using T = std::decay_t<decltype(k)>;
            if constexpr (std::is_same_v<T, Clause>) {
                return std::any_of(k.lits.begin(), k.lits.end(), [&](const BoolLit& l) { return litValue(l, a); });
            }
            else if constexpr (std::is_same_v<T, ReifAnd>) {
                bool v = std::all_of(k.lits.begin(), k.lits.end(), [&](const BoolLit& l) { return litValue(l, a); });
                return v == (a[k.target] != 0);
            }
            else if constexpr (std::is_same_v<T, ReifOr>) {
                bool v = std::any_of(k.lits.begin(), k.lits.end(), [&](const BoolLit& l) { return litValue(l, a); });
                return v == (a[k.target] != 0);
            }
            else if constexpr (std::is_same_v<T, Implies>) {
                return !litValue(k.from, a) || litValue(k.to, a);
            }
            else if constexpr (std::is_same_v<T, Linear>) {
                return casp2fzn::holds(k.expr, a);
            }
            else if constexpr (std::is_same_v<T, ReifLinear>) {
                return casp2fzn::holds(k.expr, a) == (a[k.target] != 0);
            }
            else if constexpr (std::is_same_v<T, AllDifferent>) {
                std::vector<std::int64_t> vs;
                for (VarId v : k.vars) vs.push_back(a[v]);
                std::sort(vs.begin(), vs.end());
                return std::adjacent_find(vs.begin(), vs.end()) == vs.end();
            }
            else if constexpr (std::is_same_v<T, Disjunctive>) {
                return disjunctiveHolds(k.tasks, a);
            }
            else {
                return cumulativeHolds(k, a);
            }
        },
        c);
}

bool ConstraintModel::satisfies(const Assignment& a) const {
    if (a.size() != vars_.size()) return false;
    for (std::size_t i = 0; i < vars_.size(); ++i) {
        if (a[i] < vars_[i].lb || a[i] > vars_[i].ub) return false;
    }
    for (const auto& [b, s] : shadowOf_) {
        if (a[b] != a[s]) return false;
    }
    return std::all_of(constraints_.begin(), constraints_.end(), [&](const Constraint& c) { return holds(c, a); });
}

std::int64_t ConstraintModel::objectiveValue(const Assignment& a) const {
    if (!objective) return 0;
    std::int64_t v = objective->offset;
    for (const auto& t : objective->terms) v += t.coeff * a[t.var];
    return v;
}

std::pair<std::int64_t, std::int64_t> linearRange(const ConstraintModel& m, const std::vector<LinTerm>& terms) {
    __int128 lo = 0;
    __int128 hi = 0;
    for (const auto& t : terms) {
        const auto& v = m.var(t.var);
        __int128 a = static_cast<__int128>(t.coeff) * v.lb;
        __int128 b = static_cast<__int128>(t.coeff) * v.ub;
        lo += std::min(a, b);
        hi += std::max(a, b);
    }
    constexpr __int128 kMin = std::numeric_limits<std::int64_t>::min();
    constexpr __int128 kMax = std::numeric_limits<std::int64_t>::max();
    if (lo < kMin || hi > kMax) throw OverflowError("linear expression range exceeds 64 bits");
    return {static_cast<std::int64_t>(lo), static_cast<std::int64_t>(hi)};
}

} // namespace casp2fzn
