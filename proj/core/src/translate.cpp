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
#include <casp2fzn/translate.hpp>

#include <casp2fzn/error.hpp>

#include <algorithm>
#include <limits>

namespace casp2fzn {

namespace {

std::int64_t add(std::int64_t a, std::int64_t b) {
    std::int64_t r = 0;
    if (__builtin_add_overflow(a, b, &r)) throw OverflowError("translation overflows 64 bits");
    return r;
}

std::int64_t neg(std::int64_t a) {
    if (a == std::numeric_limits<std::int64_t>::min()) throw OverflowError("translation overflows 64 bits");
    return -a;
}

/// Pseudo-Boolean sum over zero-one shadows plus a constant.
struct Sum {
    std::map<VarId, std::int64_t> coeffs;
    std::int64_t constant = 0;

    void term(VarId v, std::int64_t c) { coeffs[v] = add(coeffs[v], c); }

    [[nodiscard]] std::vector<LinTerm> terms() const {
        std::vector<LinTerm> out;
        for (const auto& [v, c] : coeffs) {
            if (c != 0) out.push_back({c, v});
        }
        return out;
    }
    /// sum <= rhs
    [[nodiscard]] LinExpr le(std::int64_t rhs) const { return {terms(), LinOp::Le, add(rhs, neg(constant))}; }
    /// sum >= rhs
    [[nodiscard]] LinExpr ge(std::int64_t rhs) const {
        LinExpr e{terms(), LinOp::Le, add(neg(rhs), constant)};
        for (auto& t : e.terms) t.coeff = neg(t.coeff);
        return e;
    }
};

class Translator {
public:
    Translator(const GroundProgram& p, const CaspSpec& spec, const TranslateOptions& opts)
        : p_(p), spec_(spec), opts_(opts) {}

    Translation run() {
        out_.scc = buildDepGraph(p_);
        if (!isHcf(p_, out_.scc)) throw NotHcfError("program is not head-cycle free");
        for (std::size_t i = 0; i < p_.rules.size(); ++i) {
            if (violatesPartialShift(p_.rules[i], out_.scc)) {
                throw PartialShiftViolation("rule " + std::to_string(i) + " is a disjunction with a head atom in the component of a positive body atom");
            }
        }

        for (Atom a : p_.atoms) out_.atomVars[a] = m().addBool("x_" + std::to_string(a));
        declareLinearVars();
        ranking();
        for (std::size_t i = 0; i < p_.rules.size(); ++i) rule(i, p_.rules[i]);
        support();
        linearAtoms();
        globals();
        objective();
        return std::move(out_);
    }

private:
    ConstraintModel& m() { return out_.model; }
    const SccInfo& scc() const { return out_.scc; }
    VarId x(Atom a) const { return out_.atomVars.at(a); }
    BoolLit pos(VarId v) const { return {v, false}; }
    BoolLit negLitOf(VarId v) const { return {v, true}; }

    static std::string pair(Atom a, Atom b) { return std::to_string(a) + "_" + std::to_string(b); }
    static std::string ruleAtom(std::size_t r, Atom a) { return std::to_string(r) + "_" + std::to_string(a); }

    /// c * [l] added to s, with [not b] = 1 - b.
    void addLit(Sum& s, BoolLit l, std::int64_t c) {
        VarId sh = m().shadow(l.var);
        if (l.negated) {
            s.constant = add(s.constant, c);
            s.term(sh, neg(c));
        }
        else {
            s.term(sh, c);
        }
    }

    void declareLinearVars() {
        std::set<std::string> names = spec_.vars;
        for (const auto& [v, d] : spec_.domains) names.insert(v);
        for (const auto& v : names) {
            auto it = spec_.domains.find(v);
            if (it == spec_.domains.end()) throw UnboundedError("linear variable " + v + " has no domain");
            out_.linVars[v] = m().addInt("v_" + v, it->second.lo, it->second.hi);
        }
    }

    std::int64_t s(Atom a) const { return static_cast<std::int64_t>(scc().sizeOf(a)) + 1; }

    void ranking() {
        for (Atom a : p_.atoms) {
            if (!scc().inNontrivialScc(a)) continue;
            out_.rankVars[a] = m().addInt("l_" + std::to_string(a), 1, s(a));
        }
        for (Atom a : p_.atoms) {
            if (!scc().inNontrivialScc(a)) continue;
            m().add(ReifLinear{x(a), {{{1, out_.rankVars[a]}}, LinOp::Le, s(a) - 1}}, Origin::RankFalse);
        }
        for (const auto& [a, b] : scc().internalEdges()) {
            VarId la = out_.rankVars.at(a);
            VarId lb = out_.rankVars.at(b);
            VarId dep = m().addBool("dep_" + pair(a, b));
            dep_[{a, b}] = dep;
            // l_a - l_b >= 1  <=>  l_b - l_a <= -1
            m().add(ReifLinear{dep, {{{1, lb}, {-1, la}}, LinOp::Le, -1}}, Origin::RankDep);
            if (!opts_.strict) continue;
            VarId y = m().addBool("y_" + pair(a, b));
            m().add(ReifLinear{y, {{{1, lb}, {-1, la}}, LinOp::Le, -2}}, Origin::RankGapAux);
            VarId gap = m().addBool("gap_" + pair(a, b));
            gap_[{a, b}] = gap;
            m().add(ReifAnd{gap, {pos(x(a)), pos(x(b)), pos(y)}}, Origin::RankGap);
        }
    }

    /// Sum of the weighted body with the positive atoms in the component of a replaced
    /// by the given per-edge variables; without a replacement map they are dropped.
    Sum weightedSum(const WeightBody& wb, const std::optional<Atom>& head, const std::map<std::pair<Atom, Atom>, VarId>* internal) {
        Sum sum;
        for (const auto& wl : wb.lits) {
            Atom b = atomOf(wl.lit);
            if (isNegative(wl.lit)) {
                addLit(sum, negLitOf(x(b)), wl.weight);
            }
            else if (head && scc().sameScc(*head, b)) {
                if (internal) addLit(sum, pos(internal->at({*head, b})), wl.weight);
            }
            else {
                addLit(sum, pos(x(b)), wl.weight);
            }
        }
        return sum;
    }

    std::vector<BoolLit> bodyLits(const NormalBody& nb) {
        std::vector<BoolLit> lits;
        for (Atom b : nb.pos) lits.push_back(pos(x(b)));
        for (Atom b : nb.neg) lits.push_back(negLitOf(x(b)));
        return lits;
    }

    /// s_a * c + s_a * a + l_a <= 2 s_a + 1
    void rankOne(VarId c, Atom a, Origin o) {
        std::int64_t sa = s(a);
        Sum sum;
        addLit(sum, pos(c), sa);
        addLit(sum, pos(x(a)), sa);
        sum.term(out_.rankVars.at(a), 1);
        m().add(Linear{sum.le(2 * sa + 1)}, o);
    }

    void rule(std::size_t idx, const Rule& r) {
        const auto* nb = std::get_if<NormalBody>(&r.body);
        const auto* wb = std::get_if<WeightBody>(&r.body);
        if (r.isConstraint()) {
            if (nb) {
                std::vector<BoolLit> lits;
                for (Atom b : nb->pos) lits.push_back(negLitOf(x(b)));
                for (Atom b : nb->neg) lits.push_back(pos(x(b)));
                m().add(Clause{std::move(lits)}, Origin::ConstraintNormal);
            }
            else {
                m().add(Linear{weightedSum(*wb, std::nullopt, nullptr).le(add(wb->bound, -1))}, Origin::ConstraintWeighted);
            }
            return;
        }

        auto bplus = r.positiveBody();
        std::vector<Atom> tight;
        std::vector<Atom> nontight;
        for (Atom a : r.head) {
            bool meets = std::any_of(bplus.begin(), bplus.end(), [&](Atom b) { return scc().sameScc(a, b); });
            (meets ? nontight : tight).push_back(a);
        }
        bool proper = !r.isChoice() && r.head.size() > 1;

        std::optional<VarId> bd;
        if (!tight.empty()) {
            bd = m().addBool("bd_" + std::to_string(idx));
            if (nb && nb->pos.empty() && nb->neg.empty()) {
                m().restrict(*bd, 1, 1);
            }
            else if (nb) {
                m().add(ReifAnd{*bd, bodyLits(*nb)}, Origin::BodyCompletion);
            }
            else {
                m().add(ReifLinear{*bd, weightedSum(*wb, std::nullopt, nullptr).ge(wb->bound)}, Origin::BodyCompletion);
            }
        }

        std::map<Atom, VarId> bda;
        for (Atom a : nontight) {
            VarId v = m().addBool("bda_" + ruleAtom(idx, a));
            bda[a] = v;
            if (nb) {
                std::vector<BoolLit> lits;
                for (Atom b : nb->pos) lits.push_back(pos(scc().sameScc(a, b) ? dep_.at({a, b}) : x(b)));
                for (Atom b : nb->neg) lits.push_back(negLitOf(x(b)));
                m().add(ReifAnd{v, std::move(lits)}, Origin::BodyInternal);
                if (opts_.strict) {
                    std::vector<BoolLit> clause{negLitOf(v)};
                    for (Atom b : nb->pos) {
                        if (scc().sameScc(a, b)) clause.push_back(negLitOf(gap_.at({a, b})));
                    }
                    m().add(Clause{std::move(clause)}, Origin::BodyGapClause);
                }
                continue;
            }
            VarId ext = m().addBool("ext_" + ruleAtom(idx, a));
            m().add(ReifLinear{ext, weightedSum(*wb, a, nullptr).ge(wb->bound)}, Origin::BodyExternal);
            VarId in = m().addBool("int_" + ruleAtom(idx, a));
            m().add(ReifLinear{in, weightedSum(*wb, a, &dep_).ge(wb->bound)}, Origin::BodyInternalWeighted);
            if (opts_.strict) {
                VarId aux = m().addBool("aux_" + ruleAtom(idx, a));
                m().add(ReifLinear{aux, weightedSum(*wb, a, &gap_).le(add(wb->bound, -1))}, Origin::BodyGapAux);
                m().add(Clause{{pos(ext), pos(aux), negLitOf(in)}}, Origin::BodyGapAuxClause);
                rankOne(ext, a, Origin::BodyWeightedRankOne);
            }
            m().add(ReifOr{v, {pos(ext), pos(in)}}, Origin::BodyUnion);
        }

        // Head.
        std::map<Atom, VarId> sp;
        for (Atom a : r.head) sp[a] = m().addBool("sp_" + ruleAtom(idx, a));
        if (proper) {
            for (Atom a : r.head) {
                std::vector<BoolLit> lits{pos(*bd)};
                for (Atom o : r.head) {
                    if (o != a) lits.push_back(negLitOf(x(o)));
                }
                m().add(ReifAnd{sp[a], std::move(lits)}, Origin::HeadDisjunctiveSupport);
            }
            std::vector<BoolLit> sat;
            for (Atom a : r.head) sat.push_back(pos(x(a)));
            sat.push_back(negLitOf(*bd));
            m().add(Clause{std::move(sat)}, Origin::HeadSatisfaction);
        }
        else {
            for (Atom a : r.head) {
                VarId body = bda.count(a) ? bda[a] : *bd;
                m().add(ReifAnd{sp[a], {pos(body)}}, Origin::HeadSupport);
                if (!r.isChoice()) m().add(Implies{pos(sp[a]), pos(x(a))}, Origin::HeadImplies);
            }
        }

        // External support pins the rank to 1. A proper disjunction only supports the
        // head atom that is true alone, so its support variable stands in for the body.
        if (opts_.strict) {
            for (Atom a : tight) {
                if (!scc().inNontrivialScc(a)) continue;
                rankOne(proper ? sp[a] : *bd, a, Origin::BodyRankOne);
            }
        }
        for (Atom a : r.head) support_[a].push_back(sp[a]);
    }

    void support() {
        for (Atom a : p_.atoms) {
            if (spec_.linAtoms.count(a)) continue;
            std::vector<BoolLit> lits;
            for (VarId v : support_[a]) lits.push_back(pos(v));
            lits.push_back(negLitOf(x(a)));
            m().add(Clause{std::move(lits)}, Origin::Supported);
        }
    }

    void linearAtoms() {
        for (const auto& [a, c] : spec_.linAtoms) {
            LinExpr e;
            for (const auto& t : c.terms) e.terms.push_back({t.coeff, out_.linVars.at(t.var)});
            e.rhs = c.rhs;
            auto negate = [&] {
                for (auto& t : e.terms) t.coeff = neg(t.coeff);
                e.rhs = neg(e.rhs);
            };
            switch (c.op) {
                case CmpOp::Le: e.op = LinOp::Le; break;
                case CmpOp::Lt:
                    e.op = LinOp::Le;
                    e.rhs = add(e.rhs, -1);
                    break;
                case CmpOp::Ge:
                    negate();
                    e.op = LinOp::Le;
                    break;
                case CmpOp::Gt:
                    negate();
                    e.op = LinOp::Le;
                    e.rhs = add(e.rhs, -1);
                    break;
                case CmpOp::Eq: e.op = LinOp::Eq; break;
                case CmpOp::Ne: e.op = LinOp::Ne; break;
            }
            m().add(ReifLinear{x(a), std::move(e)}, Origin::LinearAtom);
        }
    }

    IntOperand operand(const Operand& o) const {
        if (o.var) return IntOperand::of(out_.linVars.at(*o.var));
        return IntOperand::constant(o.value);
    }

    std::vector<Task> tasks(const std::vector<TaskSpec>& ts) const {
        std::vector<Task> out;
        for (const auto& t : ts) out.push_back({operand(t.start), operand(t.length), operand(t.resource)});
        return out;
    }

    void globals() {
        for (const auto& g : spec_.globals) {
            if (const auto* d = std::get_if<DistinctSpec>(&g)) {
                AllDifferent c;
                for (const auto& v : d->vars) c.vars.push_back(out_.linVars.at(v));
                m().add(std::move(c), Origin::Global);
            }
            else if (const auto* d = std::get_if<DisjointSpec>(&g)) {
                m().add(Disjunctive{tasks(d->tasks)}, Origin::Global);
            }
            else {
                const auto& c = std::get<CumulativeSpec>(g);
                m().add(Cumulative{tasks(c.tasks), c.bound}, Origin::Global);
            }
        }
    }

    void objective() {
        auto compiled = compilePriorities(p_.minimize);
        if (!compiled && spec_.objective.empty()) return;
        Sum sum;
        if (compiled) {
            for (const auto& t : compiled->terms) addLit(sum, {x(atomOf(t.lit)), isNegative(t.lit)}, t.weight);
        }
        for (const auto& t : spec_.objective) sum.term(out_.linVars.at(t.var), t.coeff);
        m().objective = Objective{sum.terms(), sum.constant};
    }

    const GroundProgram& p_;
    const CaspSpec& spec_;
    TranslateOptions opts_;
    Translation out_;
    std::map<std::pair<Atom, Atom>, VarId> dep_;
    std::map<std::pair<Atom, Atom>, VarId> gap_;
    std::map<Atom, std::vector<VarId>> support_;
};

} // namespace

Translation translate(const GroundProgram& p, const CaspSpec& spec, const TranslateOptions& opts) {
    return Translator(p, spec, opts).run();
}

} // namespace casp2fzn
