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
#include <casp2fzn/linearize.hpp>

#include <casp2fzn/error.hpp>

#include <algorithm>
#include <limits>
#include <map>

namespace casp2fzn {

std::int64_t bigM(const ConstraintModel& m, const std::vector<LinTerm>& terms, std::int64_t rhs) {
    auto [lo, hi] = linearRange(m, terms);
    (void)lo;
    std::int64_t excess = 0;
    if (__builtin_sub_overflow(hi, rhs, &excess)) throw OverflowError("big-M exceeds 64 bits");
    return std::max<std::int64_t>(0, excess);
}

namespace {

std::int64_t add(std::int64_t a, std::int64_t b) {
    std::int64_t r = 0;
    if (__builtin_add_overflow(a, b, &r)) throw OverflowError("linearization overflows 64 bits");
    return r;
}

std::int64_t mul(std::int64_t a, std::int64_t b) {
    std::int64_t r = 0;
    if (__builtin_mul_overflow(a, b, &r)) throw OverflowError("linearization overflows 64 bits");
    return r;
}

/// sum(coeff * var) + constant
struct Sum {
    std::map<VarId, std::int64_t> coeffs;
    std::int64_t constant = 0;

    Sum& term(VarId v, std::int64_t c) {
        coeffs[v] = add(coeffs[v], c);
        return *this;
    }
    /// c * [l], with [not x] = 1 - x.
    Sum& lit(BoolLit l, std::int64_t c) {
        if (l.negated) {
            constant = add(constant, c);
            return term(l.var, -c);
        }
        return term(l.var, c);
    }
    Sum& operand(const IntOperand& o, std::int64_t c) {
        if (o.var) return term(*o.var, c);
        constant = add(constant, mul(o.value, c));
        return *this;
    }
    Sum& expr(const std::vector<LinTerm>& ts, std::int64_t c) {
        for (const auto& t : ts) term(t.var, mul(t.coeff, c));
        return *this;
    }
    [[nodiscard]] Sum negated() const {
        Sum s;
        for (const auto& [v, c] : coeffs) s.coeffs[v] = mul(c, -1);
        s.constant = mul(constant, -1);
        return s;
    }
    [[nodiscard]] std::vector<LinTerm> terms() const {
        std::vector<LinTerm> out;
        for (const auto& [v, c] : coeffs) {
            if (c != 0) out.push_back({c, v});
        }
        return out;
    }
};

Sum sumOf(const LinExpr& e) {
    Sum s;
    s.expr(e.terms, 1);
    return s;
}

class Linearizer {
public:
    Linearizer(const ConstraintModel& m, const LinearizeOptions& opts) : out_(m), opts_(opts) {}

    ConstraintModel run() {
        for (const auto& v : out_.vars()) {
            if (v.lb == std::numeric_limits<std::int64_t>::min() || v.ub == std::numeric_limits<std::int64_t>::max()) {
                throw UnboundedError("variable " + v.name + " has no finite bounds");
            }
        }
        for (VarId v = 0; v < out_.size(); ++v) out_.makeInt(v);
        for (const auto& [b, s] : out_.shadows()) eq(Sum{}.term(s, 1).term(b, -1), 0, Origin::Link);
        out_.clearShadows();

        const auto& cs = out_.constraints();
        const auto& os = out_.origins();
        // Copy: the originals are replaced at the end.
        std::vector<Constraint> input(cs.begin(), cs.end());
        std::vector<Origin> origins(os.begin(), os.end());
        for (std::size_t i = 0; i < input.size(); ++i) {
            origin_ = origins[i];
            std::visit([this](const auto& c) { this->rewrite(c); }, input[i]);
        }
        out_.replaceConstraints(std::move(cs_), std::move(os_));
        return std::move(out_);
    }

private:
    VarId fresh(std::int64_t lb, std::int64_t ub) {
        std::string name;
        do {
            name = "lz_" + std::to_string(counter_++);
        } while (out_.find(name));
        return out_.addInt(std::move(name), lb, ub);
    }

    void le(const Sum& s, std::int64_t rhs, Origin o) {
        cs_.emplace_back(Linear{{s.terms(), LinOp::Le, add(rhs, mul(s.constant, -1))}});
        os_.push_back(o);
    }
    void le(const Sum& s, std::int64_t rhs) { le(s, rhs, origin_); }

    void eq(const Sum& s, std::int64_t rhs, Origin o) {
        cs_.emplace_back(Linear{{s.terms(), LinOp::Eq, add(rhs, mul(s.constant, -1))}});
        os_.push_back(o);
    }
    void eq(const Sum& s, std::int64_t rhs) { eq(s, rhs, origin_); }

    /// premises -> s <= rhs, i.e. s - M * [not p] <= rhs for each premise p.
    void impliedLe(const std::vector<BoolLit>& premises, const Sum& s, std::int64_t rhs) {
        if (premises.empty()) {
            le(s, rhs);
            return;
        }
        std::int64_t m = bigM(out_, s.terms(), add(rhs, mul(s.constant, -1)));
        if (m == 0) return;
        Sum t = s;
        for (const auto& p : premises) t.lit(~p, mul(m, -1));
        le(t, rhs);
    }

    /// premises -> s != rhs
    void impliedNe(const std::vector<BoolLit>& premises, const Sum& s, std::int64_t rhs) {
        std::int64_t r = add(rhs, mul(s.constant, -1));
        auto terms = s.terms();
        auto [lo, hi] = linearRange(out_, terms);
        if (r < lo || r > hi) return;
        if (premises.empty() && terms.size() == 2 && r == 0 && terms[0].coeff == -terms[1].coeff &&
            (terms[0].coeff == 1 || terms[0].coeff == -1) && isZeroOne(terms[0].var) && isZeroOne(terms[1].var)) {
            eq(Sum{}.term(terms[0].var, 1).term(terms[1].var, 1), 1);
            return;
        }
        Sum plain;
        plain.expr(terms, 1);
        if (lo == hi) {
            // Always equal: the premises must fail.
            if (premises.empty()) {
                le(Sum{}, -1);
            }
            else {
                Sum t;
                for (const auto& p : premises) t.lit(p, 1);
                le(t, static_cast<std::int64_t>(premises.size()) - 1);
            }
            return;
        }
        BoolLit z{fresh(0, 1), false};
        auto below = premises;
        below.push_back(~z);
        impliedLe(below, plain, r - 1);
        auto above = premises;
        above.push_back(z);
        impliedLe(above, plain.negated(), mul(r + 1, -1));
    }

    bool isZeroOne(VarId v) const { return out_.var(v).lb == 0 && out_.var(v).ub == 1; }

    void nonNegative(const IntOperand& o) {
        if (o.var) {
            if (out_.var(*o.var).lb < 0) le(Sum{}.term(*o.var, -1), 0);
        }
        else if (o.value < 0) {
            le(Sum{}, -1);
        }
    }

    void rewrite(const Clause& c) {
        Sum s;
        for (const auto& l : c.lits) s.lit(l, -1);
        le(s, -1);
    }

    void rewrite(const ReifAnd& c) {
        BoolLit t{c.target, false};
        for (const auto& l : c.lits) le(Sum{}.lit(t, 1).lit(l, -1), 0);
        Sum s;
        for (const auto& l : c.lits) s.lit(l, 1);
        s.lit(t, -1);
        le(s, static_cast<std::int64_t>(c.lits.size()) - 1);
    }

    void rewrite(const ReifOr& c) {
        BoolLit t{c.target, false};
        for (const auto& l : c.lits) le(Sum{}.lit(l, 1).lit(t, -1), 0);
        Sum s;
        for (const auto& l : c.lits) s.lit(l, -1);
        s.lit(t, 1);
        le(s, 0);
    }

    void rewrite(const Implies& c) { le(Sum{}.lit(c.from, 1).lit(c.to, -1), 0); }

    void rewrite(const Linear& c) {
        switch (c.expr.op) {
            case LinOp::Le:
            case LinOp::Eq:
                cs_.emplace_back(c);
                os_.push_back(origin_);
                return;
            case LinOp::Ne: impliedNe({}, sumOf(c.expr), c.expr.rhs); return;
        }
    }

    void rewrite(const ReifLinear& c) {
        BoolLit t{c.target, false};
        Sum s = sumOf(c.expr);
        std::int64_t r = c.expr.rhs;
        switch (c.expr.op) {
            case LinOp::Le:
                impliedLe({t}, s, r);
                impliedLe({~t}, s.negated(), mul(add(r, 1), -1));
                return;
            case LinOp::Eq:
                impliedLe({t}, s, r);
                impliedLe({t}, s.negated(), mul(r, -1));
                impliedNe({~t}, s, r);
                return;
            case LinOp::Ne:
                impliedNe({t}, s, r);
                impliedLe({~t}, s, r);
                impliedLe({~t}, s.negated(), mul(r, -1));
                return;
        }
    }

    void rejectGlobal(const char* what) const {
        if (opts_.rejectGlobals) throw Error(std::string("global constraint ") + what + " is not supported by the linear backend");
    }

    void rewrite(const AllDifferent& c) {
        rejectGlobal("all_different");
        for (std::size_t i = 0; i < c.vars.size(); ++i) {
            for (std::size_t j = i + 1; j < c.vars.size(); ++j) impliedNe({}, Sum{}.term(c.vars[i], 1).term(c.vars[j], -1), 0);
        }
    }

    static bool fixedZero(const IntOperand& o) { return !o.var && o.value == 0; }

    void rewrite(const Disjunctive& c) {
        rejectGlobal("disjunctive");
        for (const auto& t : c.tasks) nonNegative(t.duration);
        for (std::size_t i = 0; i < c.tasks.size(); ++i) {
            for (std::size_t j = i + 1; j < c.tasks.size(); ++j) {
                const Task& a = c.tasks[i];
                const Task& b = c.tasks[j];
                if (fixedZero(a.duration) || fixedZero(b.duration)) continue;
                Sum choice;
                BoolLit before{fresh(0, 1), false};
                impliedLe({before}, Sum{}.operand(a.start, 1).operand(a.duration, 1).operand(b.start, -1), 0);
                choice.lit(before, -1);
                BoolLit after{fresh(0, 1), false};
                impliedLe({after}, Sum{}.operand(b.start, 1).operand(b.duration, 1).operand(a.start, -1), 0);
                choice.lit(after, -1);
                for (const Task* t : {&a, &b}) {
                    if (t->duration.var && out_.var(*t->duration.var).lb <= 0) {
                        BoolLit empty{fresh(0, 1), false};
                        impliedLe({empty}, Sum{}.operand(t->duration, 1), 0);
                        choice.lit(empty, -1);
                    }
                }
                le(choice, -1);
            }
        }
    }

    std::pair<std::int64_t, std::int64_t> bounds(const IntOperand& o) const {
        if (o.var) return {out_.var(*o.var).lb, out_.var(*o.var).ub};
        return {o.value, o.value};
    }

    /// Boolean equal to [s <= rhs].
    BoolLit reifyLe(const Sum& s, std::int64_t rhs) {
        BoolLit b{fresh(0, 1), false};
        impliedLe({b}, s, rhs);
        impliedLe({~b}, s.negated(), mul(add(rhs, 1), -1));
        return b;
    }

    void rewrite(const Cumulative& c) {
        rejectGlobal("cumulative");
        for (const auto& t : c.tasks) {
            nonNegative(t.duration);
            nonNegative(t.resource);
        }
        if (c.tasks.empty()) return;
        std::int64_t from = std::numeric_limits<std::int64_t>::max();
        std::int64_t to = std::numeric_limits<std::int64_t>::min();
        for (const auto& t : c.tasks) {
            auto [slo, shi] = bounds(t.start);
            auto [dlo, dhi] = bounds(t.duration);
            (void)dlo;
            from = std::min(from, slo);
            to = std::max(to, add(shi, dhi) - 1);
        }
        if (to < from) return;
        __int128 points = static_cast<__int128>(to) - from + 1;
        if (points * static_cast<__int128>(c.tasks.size()) > static_cast<__int128>(opts_.maxTimePoints)) {
            throw Error("cumulative horizon too large to decompose");
        }
        for (std::int64_t time = from; time <= to; ++time) {
            Sum load;
            for (const auto& t : c.tasks) {
                auto [slo, shi] = bounds(t.start);
                auto [dlo, dhi] = bounds(t.duration);
                auto [rlo, rhi] = bounds(t.resource);
                (void)dlo;
                (void)rlo;
                if (slo > time || add(shi, dhi) <= time || rhi <= 0) continue;
                // run <-> start <= time /\ start + duration >= time + 1
                BoolLit started = reifyLe(Sum{}.operand(t.start, 1), time);
                BoolLit ended = reifyLe(Sum{}.operand(t.start, 1).operand(t.duration, 1), time);
                BoolLit run{fresh(0, 1), false};
                le(Sum{}.lit(run, 1).lit(started, -1), 0);
                le(Sum{}.lit(run, 1).lit(ended, 1), 1);
                le(Sum{}.lit(started, 1).lit(ended, -1).lit(run, -1), 0);
                if (!t.resource.var) {
                    load.lit(run, t.resource.value);
                    continue;
                }
                // use = resource * run
                VarId r = *t.resource.var;
                VarId use = fresh(0, rhi);
                le(Sum{}.term(use, 1).term(r, -1), 0);
                le(Sum{}.term(use, 1).lit(run, -rhi), 0);
                le(Sum{}.term(r, 1).term(use, -1).lit(run, rhi), rhi);
                load.term(use, 1);
            }
            le(load, c.capacity);
        }
    }

    ConstraintModel out_;
    LinearizeOptions opts_;
    std::vector<Constraint> cs_;
    std::vector<Origin> os_;
    Origin origin_ = Origin::Linearization;
    std::size_t counter_ = 0;
};

} // namespace

ConstraintModel linearize(const ConstraintModel& m, const LinearizeOptions& opts) { return Linearizer(m, opts).run(); }

} // namespace casp2fzn
