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
#include <casp2fzn/theory.hpp>

#include <casp2fzn/error.hpp>

#include <algorithm>

namespace casp2fzn {

std::string_view toString(CmpOp op) noexcept {
    switch (op) {
        case CmpOp::Lt: return "<";
        case CmpOp::Gt: return ">";
        case CmpOp::Eq: return "=";
        case CmpOp::Ne: return "!=";
        case CmpOp::Le: return "<=";
        case CmpOp::Ge: return ">=";
    }
    return "?";
}

std::optional<CmpOp> parseCmpOp(std::string_view s) noexcept {
    if (s == "<") return CmpOp::Lt;
    if (s == ">") return CmpOp::Gt;
    if (s == "=" || s == "==") return CmpOp::Eq;
    if (s == "!=") return CmpOp::Ne;
    if (s == "<=") return CmpOp::Le;
    if (s == ">=") return CmpOp::Ge;
    return std::nullopt;
}

bool compare(std::int64_t lhs, CmpOp op, std::int64_t rhs) noexcept {
    switch (op) {
        case CmpOp::Lt: return lhs < rhs;
        case CmpOp::Gt: return lhs > rhs;
        case CmpOp::Eq: return lhs == rhs;
        case CmpOp::Ne: return lhs != rhs;
        case CmpOp::Le: return lhs <= rhs;
        case CmpOp::Ge: return lhs >= rhs;
    }
    return false;
}

namespace {

std::int64_t checkedAdd(std::int64_t a, std::int64_t b, const std::string& where) {
    std::int64_t r = 0;
    if (__builtin_add_overflow(a, b, &r)) throw TheoryError(where, "integer overflow");
    return r;
}

std::int64_t checkedMul(std::int64_t a, std::int64_t b, const std::string& where) {
    std::int64_t r = 0;
    if (__builtin_mul_overflow(a, b, &r)) throw TheoryError(where, "integer overflow");
    return r;
}

class Interpreter {
public:
    explicit Interpreter(const GroundProgram& p) : p_(p), th_(p.theory) {}

    CaspSpec run() {
        for (const auto& a : th_.atoms) {
            std::string name = symbolOf(a.name);
            std::string stmt = describe(a);
            if (name == "sum") {
                sum(a, stmt);
            }
            else if (name == "dom") {
                requireFact(a, stmt);
                dom(a, stmt);
            }
            else if (name == "minimize") {
                minimize(a, stmt);
            }
            else if (name == "distinct") {
                requireFact(a, stmt);
                distinct(a, stmt);
            }
            else if (name == "disjoint") {
                requireFact(a, stmt);
                disjoint(a, stmt);
            }
            else if (name == "cumulative") {
                requireFact(a, stmt);
                cumulative(a, stmt);
            }
            else {
                throw TheoryError(stmt, "unknown theory atom &" + name);
            }
        }
        for (const auto& [v, d] : spec_.domains) {
            if (d.empty()) throw TheoryError("&dom{..}=" + v, "empty domain");
        }
        std::map<std::string, std::int64_t> obj;
        for (const auto& t : spec_.objective) obj[t.var] = checkedAdd(obj[t.var], t.coeff, "&minimize");
        spec_.objective.clear();
        for (const auto& [v, c] : obj) {
            if (c != 0) spec_.objective.push_back({v, c});
        }
        return std::move(spec_);
    }

private:
    struct Linear {
        std::map<std::string, std::int64_t> coeffs;
        std::int64_t constant = 0;
    };

    const TheoryTerm& term(std::uint32_t id, const std::string& stmt) const {
        auto it = th_.terms.find(id);
        if (it == th_.terms.end()) throw TheoryError(stmt, "undefined theory term " + std::to_string(id));
        return it->second;
    }

    std::string symbolOf(std::uint32_t id) const {
        auto it = th_.terms.find(id);
        if (it == th_.terms.end() || it->second.kind != TheoryTerm::Kind::Symbol) return th_.render(id);
        return it->second.symbol;
    }

    /// Operator name of a compound with a named functor, empty otherwise.
    std::string functorOf(const TheoryTerm& t) const {
        if (t.kind != TheoryTerm::Kind::Compound || t.functor < 0) return {};
        return symbolOf(static_cast<std::uint32_t>(t.functor));
    }

    std::string describe(const TheoryAtom& a) const {
        std::string s = "&" + symbolOf(a.name) + "{";
        for (std::size_t i = 0; i < a.elements.size(); ++i) {
            if (i) s += "; ";
            auto it = th_.elements.find(a.elements[i]);
            if (it == th_.elements.end()) continue;
            for (std::size_t j = 0; j < it->second.terms.size(); ++j) {
                if (j) s += ",";
                s += th_.render(it->second.terms[j]);
            }
        }
        s += "}";
        if (a.guard) s += " " + symbolOf(a.guard->op) + " " + th_.render(a.guard->rhs);
        return s;
    }

    const TheoryElement& element(std::uint32_t id, const std::string& stmt) const {
        auto it = th_.elements.find(id);
        if (it == th_.elements.end()) throw TheoryError(stmt, "undefined theory element " + std::to_string(id));
        if (!it->second.condition.empty()) throw TheoryError(stmt, "conditional theory elements are not supported");
        if (it->second.terms.empty()) throw TheoryError(stmt, "empty theory element");
        return it->second;
    }

    void requireFact(const TheoryAtom& a, const std::string& stmt) const {
        if (a.atom == 0) throw TheoryError(stmt, "expected in a rule head");
        bool fact = false;
        for (const auto& r : p_.rules) {
            bool inHead = std::find(r.head.begin(), r.head.end(), a.atom) != r.head.end();
            if (!inHead) continue;
            const auto* nb = std::get_if<NormalBody>(&r.body);
            if (!r.isChoice() && r.head.size() == 1 && nb && nb->pos.empty() && nb->neg.empty()) {
                fact = true;
            }
            else {
                throw TheoryError(stmt, "head theory atoms must be unconditional");
            }
        }
        if (!fact) throw TheoryError(stmt, "head theory atoms must be unconditional");
    }

    std::optional<std::int64_t> constant(std::uint32_t id, const std::string& stmt) const {
        const TheoryTerm& t = term(id, stmt);
        if (t.kind == TheoryTerm::Kind::Number) return t.number;
        if (t.kind != TheoryTerm::Kind::Compound) return std::nullopt;
        if (t.functor == TheoryTerm::Tuple && t.args.size() == 1) return constant(t.args[0], stmt);
        std::string f = functorOf(t);
        if (f == "-" && t.args.size() == 1) {
            auto v = constant(t.args[0], stmt);
            if (!v) return std::nullopt;
            return checkedMul(*v, -1, stmt);
        }
        if ((f == "*" || f == "+" || f == "-") && t.args.size() == 2) {
            auto x = constant(t.args[0], stmt);
            auto y = constant(t.args[1], stmt);
            if (!x || !y) return std::nullopt;
            if (f == "*") return checkedMul(*x, *y, stmt);
            if (f == "+") return checkedAdd(*x, *y, stmt);
            return checkedAdd(*x, checkedMul(*y, -1, stmt), stmt);
        }
        return std::nullopt;
    }

    std::int64_t requireConstant(std::uint32_t id, const std::string& stmt) const {
        auto v = constant(id, stmt);
        if (!v) throw TheoryError(stmt, "integer constant expected, got " + th_.render(id));
        return *v;
    }

    /// Name of a linear variable: a symbol, a function term or a tuple, never a number or operator.
    std::string variable(std::uint32_t id, const std::string& stmt) const {
        const TheoryTerm& t = term(id, stmt);
        if (t.kind == TheoryTerm::Kind::Compound && t.functor == TheoryTerm::Tuple) {
            if (t.args.size() == 1) return variable(t.args[0], stmt);
            return th_.render(id);
        }
        if (t.kind == TheoryTerm::Kind::Symbol) {
            if (t.symbol.empty() || t.symbol.front() == '"') throw TheoryError(stmt, "variable expected, got " + t.symbol);
            return t.symbol;
        }
        if (t.kind == TheoryTerm::Kind::Compound && t.functor >= 0) {
            std::string f = functorOf(t);
            if (!f.empty() && (std::isalpha(static_cast<unsigned char>(f.front())) || f.front() == '_')) return th_.render(id);
        }
        throw TheoryError(stmt, "variable expected, got " + th_.render(id));
    }

    void addLinear(std::uint32_t id, std::int64_t factor, Linear& out, const std::string& stmt) {
        if (auto c = constant(id, stmt)) {
            out.constant = checkedAdd(out.constant, checkedMul(*c, factor, stmt), stmt);
            return;
        }
        const TheoryTerm& t = term(id, stmt);
        if (t.kind == TheoryTerm::Kind::Compound && t.functor == TheoryTerm::Tuple && t.args.size() == 1) {
            addLinear(t.args[0], factor, out, stmt);
            return;
        }
        std::string f = functorOf(t);
        if (f == "-" && t.args.size() == 1) {
            addLinear(t.args[0], checkedMul(factor, -1, stmt), out, stmt);
            return;
        }
        if (f == "*" && t.args.size() == 2) {
            if (auto c = constant(t.args[0], stmt)) {
                addLinear(t.args[1], checkedMul(factor, *c, stmt), out, stmt);
                return;
            }
            if (auto c = constant(t.args[1], stmt)) {
                addLinear(t.args[0], checkedMul(factor, *c, stmt), out, stmt);
                return;
            }
            throw TheoryError(stmt, "non-linear term " + th_.render(id));
        }
        if ((f == "+" || f == "-") && t.args.size() == 2) {
            addLinear(t.args[0], factor, out, stmt);
            addLinear(t.args[1], f == "+" ? factor : checkedMul(factor, -1, stmt), out, stmt);
            return;
        }
        std::string v = variable(id, stmt);
        spec_.vars.insert(v);
        out.coeffs[v] = checkedAdd(out.coeffs[v], factor, stmt);
    }

    Linear elementsToLinear(const TheoryAtom& a, const std::string& stmt) {
        Linear lin;
        // Only the first term of an element tuple carries a value.
        for (auto e : a.elements) addLinear(element(e, stmt).terms.front(), 1, lin, stmt);
        return lin;
    }

    static std::vector<LinearTerm> termsOf(const Linear& lin) {
        std::vector<LinearTerm> out;
        for (const auto& [v, c] : lin.coeffs) {
            if (c != 0) out.push_back({v, c});
        }
        return out;
    }

    void sum(const TheoryAtom& a, const std::string& stmt) {
        if (a.atom == 0) throw TheoryError(stmt, "&sum must occur in a rule body");
        for (const auto& r : p_.rules) {
            if (std::find(r.head.begin(), r.head.end(), a.atom) != r.head.end()) {
                throw TheoryError(stmt, "&sum must occur in rule bodies, not heads");
            }
        }
        if (!a.guard) throw TheoryError(stmt, "&sum requires a guard");
        auto op = parseCmpOp(symbolOf(a.guard->op));
        if (!op) throw TheoryError(stmt, "unknown comparison " + symbolOf(a.guard->op));
        Linear lin = elementsToLinear(a, stmt);
        // lhs op rhs  ==>  lhs - rhs_vars op rhs_const - lhs_const
        Linear rhs;
        addLinear(a.guard->rhs, 1, rhs, stmt);
        for (const auto& [v, c] : rhs.coeffs) lin.coeffs[v] = checkedAdd(lin.coeffs[v], checkedMul(c, -1, stmt), stmt);
        LinearConstraint c;
        c.terms = termsOf(lin);
        c.op = *op;
        c.rhs = checkedAdd(rhs.constant, checkedMul(lin.constant, -1, stmt), stmt);
        auto [it, fresh] = spec_.linAtoms.emplace(a.atom, c);
        if (!fresh && it->second != c) throw TheoryError(stmt, "atom reifies two different linear constraints");
    }

    void dom(const TheoryAtom& a, const std::string& stmt) {
        if (!a.guard || symbolOf(a.guard->op) != "=") throw TheoryError(stmt, "&dom requires guard '= variable'");
        std::string v = variable(a.guard->rhs, stmt);
        std::vector<Interval> parts;
        for (auto e : a.elements) {
            std::uint32_t t = element(e, stmt).terms.front();
            const TheoryTerm& tt = term(t, stmt);
            if (functorOf(tt) == ".." && tt.args.size() == 2) {
                parts.push_back({requireConstant(tt.args[0], stmt), requireConstant(tt.args[1], stmt)});
            }
            else {
                std::int64_t c = requireConstant(t, stmt);
                parts.push_back({c, c});
            }
        }
        std::erase_if(parts, [](const Interval& i) { return i.empty(); });
        std::sort(parts.begin(), parts.end(), [](const Interval& x, const Interval& y) { return x.lo < y.lo; });
        Interval hull{1, 0};
        for (const auto& i : parts) {
            if (hull.empty()) {
                hull = i;
            }
            else if (i.lo <= hull.hi || i.lo - 1 == hull.hi) {
                hull.hi = std::max(hull.hi, i.hi);
            }
            else {
                throw TheoryError(stmt, "domains must be contiguous intervals");
            }
        }
        if (hull.empty()) throw TheoryError(stmt, "empty domain");
        spec_.vars.insert(v);
        auto [it, fresh] = spec_.domains.emplace(v, hull);
        if (!fresh) {
            it->second.lo = std::max(it->second.lo, hull.lo);
            it->second.hi = std::min(it->second.hi, hull.hi);
        }
    }

    void minimize(const TheoryAtom& a, const std::string& stmt) {
        if (a.guard) throw TheoryError(stmt, "&minimize takes no guard");
        // Constant summands shift every cost equally and are dropped.
        Linear lin = elementsToLinear(a, stmt);
        for (auto& t : termsOf(lin)) spec_.objective.push_back(std::move(t));
    }

    Operand operand(std::uint32_t id, const std::string& stmt) {
        if (auto c = constant(id, stmt)) return Operand::constant(*c);
        std::string v = variable(id, stmt);
        spec_.vars.insert(v);
        return Operand::variable(std::move(v));
    }

    /// Splits a left-associative chain s@l@r into its operands.
    std::vector<std::uint32_t> atChain(std::uint32_t id, const std::string& stmt) const {
        const TheoryTerm& t = term(id, stmt);
        if (functorOf(t) == "@" && t.args.size() == 2) {
            auto left = atChain(t.args[0], stmt);
            left.push_back(t.args[1]);
            return left;
        }
        return {id};
    }

    void distinct(const TheoryAtom& a, const std::string& stmt) {
        if (a.guard) throw TheoryError(stmt, "&distinct takes no guard");
        DistinctSpec d;
        for (auto e : a.elements) {
            std::string v = variable(element(e, stmt).terms.front(), stmt);
            spec_.vars.insert(v);
            d.vars.push_back(std::move(v));
        }
        spec_.globals.emplace_back(std::move(d));
    }

    void disjoint(const TheoryAtom& a, const std::string& stmt) {
        if (a.guard) throw TheoryError(stmt, "&disjoint takes no guard");
        DisjointSpec d;
        for (auto e : a.elements) {
            auto parts = atChain(element(e, stmt).terms.front(), stmt);
            if (parts.size() != 2) throw TheoryError(stmt, "&disjoint elements have the form start@length");
            d.tasks.push_back({operand(parts[0], stmt), operand(parts[1], stmt), Operand::constant(1)});
        }
        spec_.globals.emplace_back(std::move(d));
    }

    void cumulative(const TheoryAtom& a, const std::string& stmt) {
        if (!a.guard || symbolOf(a.guard->op) != "<=") throw TheoryError(stmt, "&cumulative requires guard '<= bound'");
        CumulativeSpec c;
        c.bound = requireConstant(a.guard->rhs, stmt);
        if (c.bound < 0) throw TheoryError(stmt, "negative capacity");
        for (auto e : a.elements) {
            auto parts = atChain(element(e, stmt).terms.front(), stmt);
            if (parts.size() != 3) throw TheoryError(stmt, "&cumulative elements have the form start@length@resource");
            c.tasks.push_back({operand(parts[0], stmt), operand(parts[1], stmt), operand(parts[2], stmt)});
        }
        spec_.globals.emplace_back(std::move(c));
    }

    const GroundProgram& p_;
    const TheoryData& th_;
    CaspSpec spec_;
};

std::int64_t valueOf(const Operand& o, const std::map<std::string, std::int64_t>& values) {
    return o.var ? values.at(*o.var) : o.value;
}

} // namespace

CaspSpec extractCasp(const GroundProgram& p) { return Interpreter(p).run(); }

DefaultedSpec boundOrDefault(const CaspSpec& spec, Interval fallback) {
    DefaultedSpec out{spec, {}};
    for (const auto& v : spec.vars) {
        if (!spec.domains.count(v)) {
            out.spec.domains.emplace(v, fallback);
            out.defaulted.push_back(v);
        }
    }
    return out;
}

bool evaluate(const LinearConstraint& c, const std::map<std::string, std::int64_t>& values) {
    std::int64_t sum = 0;
    for (const auto& t : c.terms) sum += t.coeff * values.at(t.var);
    return compare(sum, c.op, c.rhs);
}

bool evaluate(const GlobalSpec& g, const std::map<std::string, std::int64_t>& values) {
    if (const auto* d = std::get_if<DistinctSpec>(&g)) {
        std::vector<std::int64_t> vs;
        for (const auto& v : d->vars) vs.push_back(values.at(v));
        std::sort(vs.begin(), vs.end());
        return std::adjacent_find(vs.begin(), vs.end()) == vs.end();
    }
    if (const auto* d = std::get_if<DisjointSpec>(&g)) {
        for (std::size_t i = 0; i < d->tasks.size(); ++i) {
            std::int64_t si = valueOf(d->tasks[i].start, values);
            std::int64_t li = valueOf(d->tasks[i].length, values);
            if (li < 0) return false;
            for (std::size_t j = i + 1; j < d->tasks.size(); ++j) {
                std::int64_t sj = valueOf(d->tasks[j].start, values);
                std::int64_t lj = valueOf(d->tasks[j].length, values);
                if (lj < 0) return false;
                if (li == 0 || lj == 0) continue;
                if (si + li > sj && sj + lj > si) return false;
            }
        }
        return true;
    }
    const auto& c = std::get<CumulativeSpec>(g);
    std::vector<std::int64_t> starts;
    for (const auto& t : c.tasks) {
        if (valueOf(t.length, values) < 0 || valueOf(t.resource, values) < 0) return false;
        starts.push_back(valueOf(t.start, values));
    }
    // The load only increases at task starts, so checking those points suffices.
    for (std::int64_t p : starts) {
        std::int64_t load = 0;
        for (const auto& t : c.tasks) {
            std::int64_t s = valueOf(t.start, values);
            std::int64_t l = valueOf(t.length, values);
            if (s <= p && p < s + l) load += valueOf(t.resource, values);
        }
        if (load > c.bound) return false;
    }
    return true;
}

} // namespace casp2fzn
