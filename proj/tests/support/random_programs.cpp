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
#include "random_programs.hpp"

#include <casp2fzn/analysis.hpp>

#include <algorithm>
#include <numeric>

namespace casp2fzn::test {

namespace {

int uniform(std::mt19937_64& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }
bool coin(std::mt19937_64& rng, double p = 0.5) { return std::bernoulli_distribution(p)(rng); }

std::vector<Atom> sample(std::mt19937_64& rng, std::vector<Atom> pool, std::size_t k) {
    std::shuffle(pool.begin(), pool.end(), rng);
    pool.resize(std::min(k, pool.size()));
    std::sort(pool.begin(), pool.end());
    return pool;
}

std::vector<Atom> range(Atom from, Atom to) {
    std::vector<Atom> out;
    for (Atom a = from; a <= to; ++a) out.push_back(a);
    return out;
}

Body randomBody(std::mt19937_64& rng, const std::vector<Atom>& pool, const std::vector<Atom>& head, bool weightedBody) {
    auto usable = [&](Atom a, bool positive) { return !positive || std::find(head.begin(), head.end(), a) == head.end(); };
    if (!weightedBody) {
        NormalBody nb;
        for (Atom a : sample(rng, pool, static_cast<std::size_t>(uniform(rng, 0, 3)))) {
            bool positive = coin(rng, 0.6);
            if (!usable(a, positive)) positive = false;
            (positive ? nb.pos : nb.neg).push_back(a);
        }
        return nb;
    }
    WeightBody wb;
    Weight total = 0;
    for (Atom a : sample(rng, pool, static_cast<std::size_t>(uniform(rng, 1, 4)))) {
        bool positive = coin(rng, 0.6);
        if (!usable(a, positive)) positive = false;
        Weight w = uniform(rng, 1, 3);
        total += w;
        wb.lits.push_back({positive ? posLit(a) : negLit(a), w});
    }
    wb.bound = uniform(rng, 0, static_cast<int>(total) + 1);
    return wb;
}

LinearConstraint randomLinear(std::mt19937_64& rng, const std::vector<std::string>& vars, const std::map<std::string, Interval>& doms) {
    LinearConstraint c;
    std::int64_t lo = 0;
    std::int64_t hi = 0;
    for (const auto& v : vars) {
        if (vars.size() > 1 && coin(rng, 0.3)) continue;
        static constexpr int coeffs[] = {-2, -1, 1, 2};
        int k = coeffs[uniform(rng, 0, 3)];
        c.terms.push_back({v, k});
        const auto& d = doms.at(v);
        lo += std::min(k * d.lo, k * d.hi);
        hi += std::max(k * d.lo, k * d.hi);
    }
    if (c.terms.empty()) {
        c.terms.push_back({vars.front(), 1});
        lo = doms.at(vars.front()).lo;
        hi = doms.at(vars.front()).hi;
    }
    c.op = static_cast<CmpOp>(uniform(rng, 0, 5));
    c.rhs = uniform(rng, static_cast<int>(lo) - 1, static_cast<int>(hi) + 1);
    return c;
}

} // namespace

Instance randomInstance(std::mt19937_64& rng, const RandomOptions& opts) {
    while (true) {
        Instance inst;
        auto& p = inst.program;
        Atom n = static_cast<Atom>(uniform(rng, 1, opts.maxAtoms));
        int nVars = opts.maxLinearVars > 0 ? uniform(rng, 0, opts.maxLinearVars) : 0;
        Atom nLin = nVars > 0 ? static_cast<Atom>(uniform(rng, 1, 2)) : 0;
        auto heads = range(1, n);
        auto pool = range(1, n + nLin);
        for (Atom a : pool) p.addAtom(a);

        int budget = uniform(rng, 1, opts.maxRules);
        if (opts.requireShiftViolation && n >= 2 && budget >= 2) {
            // a | b <- l <= {c : w, ...} together with c <- a puts a and c in one component.
            auto ab = sample(rng, heads, 2);
            Atom c = heads[static_cast<std::size_t>(uniform(rng, 0, static_cast<int>(n) - 1))];
            if (c != ab[0] && c != ab[1]) {
                auto extra = randomBody(rng, pool, ab, true);
                auto& wb = std::get<WeightBody>(extra);
                wb.lits.erase(std::remove_if(wb.lits.begin(), wb.lits.end(), [&](const WeightLit& l) { return atomOf(l.lit) == c; }),
                              wb.lits.end());
                wb.lits.push_back({posLit(c), uniform(rng, 1, 3)});
                p.addRule(Rule{HeadKind::Disjunctive, ab, extra});
                p.addRule(Rule{HeadKind::Disjunctive, {c}, NormalBody{{ab[0]}, {}}});
                budget -= 2;
            }
        }
        if (!opts.requireTight && n >= 2 && budget >= 2 && coin(rng, opts.cycleProbability)) {
            auto cyc = sample(rng, heads, static_cast<std::size_t>(uniform(rng, 2, std::min<int>(3, static_cast<int>(n)))));
            std::shuffle(cyc.begin(), cyc.end(), rng);
            for (std::size_t i = 0; i < cyc.size() && budget > 0; ++i, --budget) {
                Atom h = cyc[i];
                Atom b = cyc[(i + 1) % cyc.size()];
                if (coin(rng, 0.3)) {
                    WeightBody wb{uniform(rng, 1, 2), {{posLit(b), uniform(rng, 1, 2)}}};
                    Atom other = pool[static_cast<std::size_t>(uniform(rng, 0, static_cast<int>(pool.size()) - 1))];
                    if (other != h && other != b) wb.lits.push_back({coin(rng) ? posLit(other) : negLit(other), uniform(rng, 1, 2)});
                    p.addRule(Rule{coin(rng, 0.3) ? HeadKind::Choice : HeadKind::Disjunctive, {h}, wb});
                }
                else {
                    NormalBody nb{{b}, {}};
                    Atom other = pool[static_cast<std::size_t>(uniform(rng, 0, static_cast<int>(pool.size()) - 1))];
                    if (other != h && other != b && coin(rng, 0.4)) (coin(rng) ? nb.pos : nb.neg).push_back(other);
                    p.addRule(Rule{coin(rng, 0.3) ? HeadKind::Choice : HeadKind::Disjunctive, {h}, nb});
                }
            }
        }
        for (; budget > 0; --budget) {
            Rule r;
            int kind = uniform(rng, 0, 19);
            if (kind < 6) {
                r.headKind = HeadKind::Choice;
                r.head = sample(rng, heads, static_cast<std::size_t>(uniform(rng, 1, 2)));
            }
            else if (kind < 9) {
                r.headKind = HeadKind::Disjunctive; // constraint
            }
            else {
                r.headKind = HeadKind::Disjunctive;
                r.head = sample(rng, heads, static_cast<std::size_t>(kind < 14 ? 2 : 1));
            }
            r.body = randomBody(rng, pool, r.head, coin(rng, 0.35));
            p.addRule(std::move(r));
        }
        for (Atom a = 1; a <= n; ++a) p.shows.push_back({"p" + std::to_string(a), {posLit(a)}});

        auto scc = buildDepGraph(p);
        if (!isHcf(p, scc)) continue;
        if (opts.requireTight && !scc.tight()) continue;
        if (opts.requireShiftViolation &&
            std::none_of(p.rules.begin(), p.rules.end(), [&](const Rule& r) { return r.isWeighted() && violatesPartialShift(r, scc); })) {
            continue;
        }

        if (nVars > 0) {
            std::vector<std::string> vars;
            for (int i = 0; i < nVars; ++i) {
                std::string v = i == 0 ? "x" : "y";
                int lo = uniform(rng, -1, 1);
                int w = uniform(rng, 1, opts.maxDomainWidth);
                vars.push_back(v);
                inst.spec.vars.insert(v);
                inst.spec.domains[v] = {lo, lo + w - 1};
            }
            for (Atom a = n + 1; a <= n + nLin; ++a) inst.spec.linAtoms[a] = randomLinear(rng, vars, inst.spec.domains);
            if (opts.linearObjective) {
                for (const auto& v : vars) {
                    int k = uniform(rng, -2, 2);
                    if (k != 0) inst.spec.objective.push_back({v, k});
                }
            }
        }
        if (opts.minimize) {
            int levels = uniform(rng, 1, 2);
            for (int l = 0; l < levels; ++l) {
                MinimizeStatement m;
                m.priority = l == 0 ? uniform(rng, 0, 1) : 2;
                for (Atom a : sample(rng, pool, static_cast<std::size_t>(uniform(rng, 1, 3)))) {
                    m.terms.push_back({coin(rng, 0.7) ? posLit(a) : negLit(a), uniform(rng, 1, 3)});
                }
                p.minimize.push_back(std::move(m));
            }
        }
        return inst;
    }
}

ConstraintModel randomModel(std::mt19937_64& rng, const RandomModelOptions& opts) {
    while (true) {
        ConstraintModel m;
        int nb = uniform(rng, 1, opts.maxBools);
        int ni = uniform(rng, 0, opts.maxInts);
        std::vector<VarId> bools;
        std::vector<VarId> ints;
        std::int64_t product = 1;
        for (int i = 0; i < nb; ++i) {
            bools.push_back(m.addBool("b" + std::to_string(i)));
            product *= 2;
        }
        for (int i = 0; i < ni; ++i) {
            int lo = uniform(rng, -2, 1);
            int hi = lo + uniform(rng, 0, 3);
            ints.push_back(m.addInt("n" + std::to_string(i), lo, hi));
            product *= hi - lo + 1;
        }
        if (product > opts.maxProduct) continue;
        auto lit = [&]() { return BoolLit{bools[static_cast<std::size_t>(uniform(rng, 0, nb - 1))], coin(rng)}; };
        auto lits = [&](int lo, int hi) {
            std::vector<BoolLit> out;
            for (int k = uniform(rng, lo, hi); k > 0; --k) out.push_back(lit());
            return out;
        };
        // Integer-valued operands: ints and shadows of bools.
        auto intVar = [&]() -> VarId {
            if (!ints.empty() && coin(rng, 0.7)) return ints[static_cast<std::size_t>(uniform(rng, 0, ni - 1))];
            return m.shadow(bools[static_cast<std::size_t>(uniform(rng, 0, nb - 1))]);
        };
        auto expr = [&]() {
            LinExpr e;
            for (int k = uniform(rng, 1, 3); k > 0; --k) e.terms.push_back({uniform(rng, -3, 3), intVar()});
            e.op = static_cast<LinOp>(uniform(rng, 0, 2));
            auto [lo, hi] = linearRange(m, e.terms);
            e.rhs = uniform(rng, static_cast<int>(lo) - 1, static_cast<int>(hi) + 1);
            return e;
        };
        auto operand = [&](int lo, int hi) {
            if (coin(rng, 0.6)) return IntOperand::of(intVar());
            return IntOperand::constant(uniform(rng, lo, hi));
        };
        auto target = [&]() { return bools[static_cast<std::size_t>(uniform(rng, 0, nb - 1))]; };
        int nc = uniform(rng, 1, opts.maxConstraints);
        for (int i = 0; i < nc; ++i) {
            int kind = uniform(rng, 0, opts.globals ? 8 : 5);
            switch (kind) {
                case 0: m.add(Clause{lits(0, 3)}, Origin::Supported); break;
                case 1: m.add(ReifAnd{target(), lits(0, 3)}, Origin::BodyCompletion); break;
                case 2: m.add(ReifOr{target(), lits(0, 3)}, Origin::BodyUnion); break;
                case 3: m.add(Implies{lit(), lit()}, Origin::HeadImplies); break;
                case 4: m.add(Linear{expr()}, Origin::ConstraintWeighted); break;
                case 5: m.add(ReifLinear{target(), expr()}, Origin::LinearAtom); break;
                case 6: {
                    std::vector<VarId> vs;
                    for (int k = uniform(rng, 2, 3); k > 0; --k) vs.push_back(intVar());
                    m.add(AllDifferent{vs}, Origin::Global);
                    break;
                }
                case 7: {
                    std::vector<Task> ts;
                    for (int k = uniform(rng, 2, 3); k > 0; --k) ts.push_back({operand(-1, 3), operand(0, 2), IntOperand::constant(1)});
                    m.add(Disjunctive{ts}, Origin::Global);
                    break;
                }
                default: {
                    std::vector<Task> ts;
                    for (int k = uniform(rng, 1, 3); k > 0; --k) ts.push_back({operand(-1, 3), operand(0, 2), operand(0, 2)});
                    m.add(Cumulative{ts, uniform(rng, 0, 3)}, Origin::Global);
                    break;
                }
            }
        }
        m.validate();
        return m;
    }
}

} // namespace casp2fzn::test
