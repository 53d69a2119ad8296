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
#include <casp2fzn/oracle.hpp>

#include <casp2fzn/error.hpp>

#include <algorithm>
#include <limits>
#include <sstream>

namespace casp2fzn {

std::string toString(const EInterpretation& e, const std::map<Atom, std::string>& names) {
    std::ostringstream os;
    os << '{';
    bool first = true;
    for (Atom a : e.atoms) {
        if (!first) os << ',';
        first = false;
        auto it = names.find(a);
        if (it != names.end()) {
            os << it->second;
        }
        else {
            os << a;
        }
    }
    os << '}';
    for (const auto& [v, x] : e.assignment) os << ' ' << v << '=' << x;
    return os.str();
}

namespace {

using Mask = std::uint64_t;

/// Rules over atom indices.
struct IndexedRule {
    bool choice = false;
    bool weighted = false;
    std::vector<int> head;
    std::vector<int> pos;
    std::vector<int> neg;
    std::vector<std::pair<int, Weight>> wpos;
    std::vector<std::pair<int, Weight>> wneg;
    Weight bound = 0;
};

class Indexed {
public:
    Indexed(const GroundProgram& p, const std::set<Atom>& freeAtoms) {
        for (Atom a : p.atoms) {
            index_[a] = static_cast<int>(atoms_.size());
            atoms_.push_back(a);
        }
        for (Atom a : freeAtoms) {
            if (!index_.count(a)) {
                index_[a] = static_cast<int>(atoms_.size());
                atoms_.push_back(a);
            }
        }
        if (atoms_.size() > 62) throw SearchSpaceTooLarge("too many atoms for the oracle");
        for (Atom a : freeAtoms) free_ |= bit(index_[a]);
        for (const auto& r : p.rules) {
            IndexedRule ir;
            ir.choice = r.isChoice();
            for (Atom a : r.head) ir.head.push_back(index_.at(a));
            if (const auto* nb = std::get_if<NormalBody>(&r.body)) {
                for (Atom b : nb->pos) ir.pos.push_back(index_.at(b));
                for (Atom b : nb->neg) ir.neg.push_back(index_.at(b));
            }
            else {
                const auto& wb = std::get<WeightBody>(r.body);
                ir.weighted = true;
                ir.bound = wb.bound;
                for (const auto& wl : wb.lits) {
                    (isNegative(wl.lit) ? ir.wneg : ir.wpos).emplace_back(index_.at(atomOf(wl.lit)), wl.weight);
                }
            }
            rules_.push_back(std::move(ir));
        }
    }

    static Mask bit(int i) { return Mask{1} << i; }
    static bool has(Mask m, int i) { return (m >> i) & 1U; }

    [[nodiscard]] std::size_t size() const { return atoms_.size(); }
    [[nodiscard]] const std::vector<Atom>& atoms() const { return atoms_; }

    Mask mask(const std::set<Atom>& I) const {
        Mask m = 0;
        for (Atom a : I) {
            auto it = index_.find(a);
            if (it == index_.end()) return ~Mask{0};
            m |= bit(it->second);
        }
        return m;
    }

    std::set<Atom> atomsOf(Mask m) const {
        std::set<Atom> out;
        for (std::size_t i = 0; i < atoms_.size(); ++i) {
            if (has(m, static_cast<int>(i))) out.insert(atoms_[i]);
        }
        return out;
    }

    static bool body(const IndexedRule& r, Mask I) {
        if (!r.weighted) {
            for (int b : r.pos) {
                if (!has(I, b)) return false;
            }
            for (int b : r.neg) {
                if (has(I, b)) return false;
            }
            return true;
        }
        Weight sum = 0;
        for (const auto& [b, w] : r.wpos) {
            if (has(I, b)) sum += w;
        }
        for (const auto& [b, w] : r.wneg) {
            if (!has(I, b)) sum += w;
        }
        return sum >= r.bound;
    }

    static bool headHolds(const IndexedRule& r, Mask I) {
        if (r.choice) return true;
        return std::any_of(r.head.begin(), r.head.end(), [&](int a) { return has(I, a); });
    }

    bool model(Mask I) const {
        return std::all_of(rules_.begin(), rules_.end(), [&](const IndexedRule& r) { return !body(r, I) || headHolds(r, I); });
    }

    /// Positive rules of the reduct w.r.t. I: head set, body atoms, bound, weights.
    struct ReductRule {
        Mask head = 0;
        bool weighted = false;
        Mask pos = 0;
        std::vector<std::pair<int, Weight>> wpos;
        Weight bound = 0;
    };

    std::vector<ReductRule> reduct(Mask I) const {
        std::vector<ReductRule> out;
        for (const auto& r : rules_) {
            if (!body(r, I)) continue;
            ReductRule base;
            base.weighted = r.weighted;
            if (r.weighted) {
                Weight negSat = 0;
                for (const auto& [b, w] : r.wneg) {
                    if (!has(I, b)) negSat += w;
                }
                base.bound = std::max<Weight>(0, r.bound - negSat);
                base.wpos = r.wpos;
            }
            else {
                for (int b : r.pos) base.pos |= bit(b);
            }
            if (r.choice) {
                for (int a : r.head) {
                    if (!has(I, a)) continue;
                    ReductRule c = base;
                    c.head = bit(a);
                    out.push_back(std::move(c));
                }
            }
            else {
                for (int a : r.head) base.head |= bit(a);
                out.push_back(std::move(base));
            }
        }
        // {a} <- for free atoms
        for (std::size_t i = 0; i < atoms_.size(); ++i) {
            if (has(free_, static_cast<int>(i)) && has(I, static_cast<int>(i))) {
                ReductRule c;
                c.head = bit(static_cast<int>(i));
                out.push_back(c);
            }
        }
        return out;
    }

    static bool reductModel(const std::vector<ReductRule>& rs, Mask J) {
        for (const auto& r : rs) {
            bool b = false;
            if (r.weighted) {
                Weight sum = 0;
                for (const auto& [x, w] : r.wpos) {
                    if (has(J, x)) sum += w;
                }
                b = sum >= r.bound;
            }
            else {
                b = (r.pos & J) == r.pos;
            }
            if (b && (r.head & J) == 0) return false;
        }
        return true;
    }

    bool answerSet(Mask I) const {
        auto rs = reduct(I);
        if (!reductModel(rs, I)) return false;
        if (I == 0) return true;
        for (Mask J = (I - 1) & I;; J = (J - 1) & I) {
            if (reductModel(rs, J)) return false;
            if (J == 0) break;
        }
        return true;
    }

private:
    std::vector<Atom> atoms_;
    std::map<Atom, int> index_;
    std::vector<IndexedRule> rules_;
    Mask free_ = 0;
};

std::vector<std::string> linearVarNames(const CaspSpec& spec) {
    std::set<std::string> names = spec.vars;
    for (const auto& [v, d] : spec.domains) names.insert(v);
    return {names.begin(), names.end()};
}

} // namespace

bool isModel(const GroundProgram& p, const std::set<Atom>& I) {
    Indexed ix(p, {});
    Mask m = ix.mask(I);
    if (m == ~Mask{0}) return false;
    return ix.model(m);
}

bool isAnswerSet(const GroundProgram& p, const std::set<Atom>& I, const std::set<Atom>& freeAtoms) {
    Indexed ix(p, freeAtoms);
    Mask m = ix.mask(I);
    if (m == ~Mask{0}) return false;
    return ix.answerSet(m);
}

std::vector<std::set<Atom>> enumerateAspAnswerSets(const GroundProgram& p, const std::set<Atom>& freeAtoms, std::uint64_t cap) {
    Indexed ix(p, freeAtoms);
    if (ix.size() >= 63 || (std::uint64_t{1} << ix.size()) > cap) throw SearchSpaceTooLarge("2^" + std::to_string(ix.size()) + " interpretations exceed the cap");
    std::vector<std::set<Atom>> out;
    Mask end = Mask{1} << ix.size();
    for (Mask I = 0; I < end; ++I) {
        if (ix.answerSet(I)) out.push_back(ix.atomsOf(I));
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<EInterpretation> enumerateAnswerSets(const GroundProgram& p, const CaspSpec& spec, std::uint64_t cap) {
    auto names = linearVarNames(spec);
    std::vector<Interval> doms;
    __int128 space = 1;
    for (const auto& v : names) {
        auto it = spec.domains.find(v);
        if (it == spec.domains.end()) throw UnboundedError("linear variable " + v + " has no domain");
        doms.push_back(it->second);
        space *= static_cast<__int128>(it->second.hi) - it->second.lo + 1;
        if (space > cap) throw SearchSpaceTooLarge("domain product exceeds the cap");
    }
    std::set<Atom> freeAtoms;
    for (const auto& [a, c] : spec.linAtoms) freeAtoms.insert(a);
    std::size_t n = p.atoms.size();
    for (Atom a : freeAtoms) n += p.atoms.count(a) ? 0 : 1;
    if (n >= 62 || (static_cast<__int128>(1) << n) * space > cap) throw SearchSpaceTooLarge("search space exceeds the cap");

    std::vector<EInterpretation> out;
    for (const auto& I : enumerateAspAnswerSets(p, freeAtoms, cap)) {
        std::map<std::string, std::int64_t> delta;
        for (std::size_t i = 0; i < names.size(); ++i) delta[names[i]] = doms[i].lo;
        while (true) {
            bool ok = true;
            for (const auto& [a, c] : spec.linAtoms) {
                if ((I.count(a) != 0) != evaluate(c, delta)) {
                    ok = false;
                    break;
                }
            }
            if (ok) {
                for (const auto& g : spec.globals) {
                    if (!evaluate(g, delta)) {
                        ok = false;
                        break;
                    }
                }
            }
            if (ok) out.push_back({I, delta});
            std::size_t k = 0;
            for (; k < names.size(); ++k) {
                auto& x = delta[names[k]];
                if (x < doms[k].hi) {
                    ++x;
                    break;
                }
                x = doms[k].lo;
            }
            if (k == names.size()) break;
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::int64_t cost(const GroundProgram& p, const CaspSpec& spec, const EInterpretation& e) {
    std::int64_t c = 0;
    if (auto m = compilePriorities(p.minimize)) c = minimizeCost(*m, [&](Atom a) { return e.atoms.count(a) != 0; });
    for (const auto& t : spec.objective) c += t.coeff * e.assignment.at(t.var);
    return c;
}

namespace {

std::int64_t rankOf(const Ranks& ranks, Atom a) {
    auto it = ranks.find(a);
    return it == ranks.end() ? kInfinity : it->second;
}

struct SupportContext {
    const GroundProgram& p;
    const std::set<Atom>& I;
    const Ranks& ranks;
    const std::set<Atom>& freeAtoms;
    const SccInfo* scc; // modular variant when set

    bool in(Atom a) const { return I.count(a) != 0; }

    bool supports(const Rule& r, Atom a) const {
        if (std::find(r.head.begin(), r.head.end(), a) == r.head.end()) return false;
        if (!r.isChoice()) {
            for (Atom h : r.head) {
                if (h != a && in(h)) return false;
            }
        }
        std::int64_t ra = rankOf(ranks, a);
        auto smaller = [&](Atom b) { return rankOf(ranks, b) < ra; };
        auto internal = [&](Atom b) { return scc && scc->sameScc(a, b); };
        if (const auto* nb = std::get_if<NormalBody>(&r.body)) {
            for (Atom b : nb->pos) {
                if (scc ? !(in(b) && (!internal(b) || smaller(b))) : !smaller(b)) return false;
            }
            for (Atom b : nb->neg) {
                if (in(b)) return false;
            }
            return true;
        }
        const auto& wb = std::get<WeightBody>(r.body);
        Weight sum = 0;
        for (const auto& wl : wb.lits) {
            Atom b = atomOf(wl.lit);
            if (isNegative(wl.lit)) {
                if (!in(b)) sum += wl.weight;
            }
            else if (scc ? (internal(b) ? smaller(b) : in(b)) : smaller(b)) {
                sum += wl.weight;
            }
        }
        return sum >= wb.bound;
    }

    SupportReport check() const {
        SupportReport rep;
        auto fail = [&](std::string s) {
            rep.ok = false;
            rep.problems.push_back(std::move(s));
        };
        std::set<Atom> all = p.atoms;
        all.insert(freeAtoms.begin(), freeAtoms.end());
        for (Atom a : I) {
            if (!all.count(a)) fail("atom " + std::to_string(a) + " does not occur in the program");
        }
        if (!isModel(p, I)) fail("I is not a model");
        for (Atom a : all) {
            std::int64_t r = rankOf(ranks, a);
            if (in(a) && r == kInfinity) fail("atom " + std::to_string(a) + " is true with infinite rank");
            if (!in(a) && r != kInfinity) fail("atom " + std::to_string(a) + " is false with finite rank");
            if (in(a) && scc && r > static_cast<std::int64_t>(scc->sizeOf(a))) {
                fail("atom " + std::to_string(a) + " has rank above its component size");
            }
        }
        for (Atom a : I) {
            if (freeAtoms.count(a)) continue;
            bool ok = std::any_of(p.rules.begin(), p.rules.end(), [&](const Rule& r) { return supports(r, a); });
            if (!ok) fail("atom " + std::to_string(a) + " is unsupported");
        }
        return rep;
    }
};

} // namespace

SupportReport checkRankedSupported(const GroundProgram& p, const std::set<Atom>& I, const Ranks& ranks, const std::set<Atom>& freeAtoms) {
    return SupportContext{p, I, ranks, freeAtoms, nullptr}.check();
}

SupportReport checkModularSccSupported(const GroundProgram& p, const SccInfo& scc, const std::set<Atom>& I, const Ranks& ranks,
                                       const std::set<Atom>& freeAtoms) {
    return SupportContext{p, I, ranks, freeAtoms, &scc}.check();
}

std::optional<Ranks> findRanks(const GroundProgram& p, const std::set<Atom>& I, bool modular, const std::set<Atom>& freeAtoms) {
    SccInfo scc = buildDepGraph(p);
    std::vector<Atom> atoms(I.begin(), I.end());
    std::vector<std::int64_t> maxRank;
    for (Atom a : atoms) maxRank.push_back(modular ? scc.sizeOf(a) : static_cast<std::int64_t>(std::max<std::size_t>(1, atoms.size())));
    Ranks ranks;
    for (Atom a : atoms) ranks[a] = 1;
    while (true) {
        bool ok = modular ? checkModularSccSupported(p, scc, I, ranks, freeAtoms).ok : checkRankedSupported(p, I, ranks, freeAtoms).ok;
        if (ok) return ranks;
        std::size_t k = 0;
        for (; k < atoms.size(); ++k) {
            auto& r = ranks[atoms[k]];
            if (r < maxRank[k]) {
                ++r;
                break;
            }
            r = 1;
        }
        if (k == atoms.size()) return std::nullopt;
    }
}

namespace {

std::int64_t floorDiv(__int128 a, std::int64_t b) {
    __int128 q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return static_cast<std::int64_t>(std::clamp<__int128>(q, std::numeric_limits<std::int64_t>::min(), std::numeric_limits<std::int64_t>::max()));
}

std::int64_t ceilDiv(__int128 a, std::int64_t b) {
    __int128 q = a / b;
    if ((a % b != 0) && ((a < 0) == (b < 0))) ++q;
    return static_cast<std::int64_t>(std::clamp<__int128>(q, std::numeric_limits<std::int64_t>::min(), std::numeric_limits<std::int64_t>::max()));
}

class Search {
public:
    Search(const ConstraintModel& m, const IrEnumerateOptions& opts) : m_(m), opts_(opts) {
        std::size_t n = m.size();
        lo_.resize(n);
        hi_.resize(n);
        for (VarId v = 0; v < n; ++v) {
            lo_[v] = m.var(v).lb;
            hi_[v] = m.var(v).ub;
        }
        watch_.resize(n);
        const auto& cs = m.constraints();
        for (std::size_t i = 0; i < cs.size(); ++i) {
            for (VarId v : varsOf(cs[i])) watch_[v].push_back(i);
        }
        for (const auto& [b, s] : m.shadows()) {
            std::size_t i = cs.size() + links_.size();
            links_.emplace_back(b, s);
            watch_[b].push_back(i);
            watch_[s].push_back(i);
        }
        queued_.assign(cs.size() + links_.size(), false);

        std::vector<bool> seen(n, false);
        if (opts.projection) {
            for (VarId v : *opts.projection) {
                if (!seen[v]) order_.push_back(v);
                seen[v] = true;
            }
            projCount_ = order_.size();
        }
        for (VarId v = 0; v < n; ++v) {
            if (!seen[v] && !m.isShadow(v)) order_.push_back(v);
        }
        for (VarId v = 0; v < n; ++v) {
            if (!seen[v] && m.isShadow(v)) order_.push_back(v);
        }
        if (!opts.projection) projCount_ = order_.size();
    }

    std::vector<Assignment> run() {
        for (std::size_t i = 0; i < queued_.size(); ++i) enqueue(i);
        if (propagate()) enumerate();
        std::sort(out_.begin(), out_.end());
        out_.erase(std::unique(out_.begin(), out_.end()), out_.end());
        return std::move(out_);
    }

private:
    static std::vector<VarId> varsOf(const Constraint& c) {
        std::vector<VarId> out;
        std::visit(
            [&](const auto& k) {
                using T = std::decay_t<decltype(k)>;
                if constexpr (std::is_same_v<T, Clause>) {
                    for (const auto& l : k.lits) out.push_back(l.var);
                }
                else if constexpr (std::is_same_v<T, ReifAnd> || std::is_same_v<T, ReifOr>) {
                    out.push_back(k.target);
                    for (const auto& l : k.lits) out.push_back(l.var);
                }
                else if constexpr (std::is_same_v<T, Implies>) {
                    out.push_back(k.from.var);
                    out.push_back(k.to.var);
                }
                else if constexpr (std::is_same_v<T, Linear>) {
                    for (const auto& t : k.expr.terms) out.push_back(t.var);
                }
                else if constexpr (std::is_same_v<T, ReifLinear>) {
                    out.push_back(k.target);
                    for (const auto& t : k.expr.terms) out.push_back(t.var);
                }
                else if constexpr (std::is_same_v<T, AllDifferent>) {
                    out = k.vars;
                }
                else {
                    for (const auto& t : k.tasks) {
                        for (const auto* o : {&t.start, &t.duration, &t.resource}) {
                            if (o->var) out.push_back(*o->var);
                        }
                    }
                }
            },
            c);
        std::sort(out.begin(), out.end());
        out.erase(std::unique(out.begin(), out.end()), out.end());
        return out;
    }

    bool fixed(VarId v) const { return lo_[v] == hi_[v]; }

    void enqueue(std::size_t c) {
        if (!queued_[c]) {
            queued_[c] = true;
            queue_.push_back(c);
        }
    }

    void changed(VarId v) {
        for (std::size_t c : watch_[v]) enqueue(c);
    }

    bool setLo(VarId v, std::int64_t x) {
        if (x <= lo_[v]) return true;
        if (x > hi_[v]) return false;
        trail_.push_back({v, lo_[v], hi_[v]});
        lo_[v] = x;
        changed(v);
        return true;
    }

    bool setHi(VarId v, std::int64_t x) {
        if (x >= hi_[v]) return true;
        if (x < lo_[v]) return false;
        trail_.push_back({v, lo_[v], hi_[v]});
        hi_[v] = x;
        changed(v);
        return true;
    }

    bool assign(VarId v, std::int64_t x) { return setLo(v, x) && setHi(v, x); }

    // Literal state: 1 true, 0 false, -1 open.
    int lit(const BoolLit& l) const {
        if (!fixed(l.var)) return -1;
        return (lo_[l.var] != 0) != l.negated ? 1 : 0;
    }
    bool makeTrue(const BoolLit& l) { return assign(l.var, l.negated ? 0 : 1); }
    bool makeFalse(const BoolLit& l) { return assign(l.var, l.negated ? 1 : 0); }

    bool clause(const std::vector<BoolLit>& lits) {
        const BoolLit* open = nullptr;
        int nOpen = 0;
        for (const auto& l : lits) {
            int s = lit(l);
            if (s == 1) return true;
            if (s == -1) {
                ++nOpen;
                open = &l;
            }
        }
        if (nOpen == 0) return false;
        if (nOpen == 1) return makeTrue(*open);
        return true;
    }

    bool reifAnd(const BoolLit& target, const std::vector<BoolLit>& lits) {
        int t = lit(target);
        int nTrue = 0;
        const BoolLit* open = nullptr;
        int nOpen = 0;
        for (const auto& l : lits) {
            int s = lit(l);
            if (s == 0) return makeFalse(target);
            if (s == 1) ++nTrue;
            else {
                ++nOpen;
                open = &l;
            }
        }
        if (nOpen == 0) return makeTrue(target);
        if (t == 1) {
            for (const auto& l : lits) {
                if (!makeTrue(l)) return false;
            }
        }
        else if (t == 0 && nOpen == 1) {
            return makeFalse(*open);
        }
        return true;
    }

    std::pair<__int128, __int128> range(const std::vector<LinTerm>& ts) const {
        __int128 mn = 0;
        __int128 mx = 0;
        for (const auto& t : ts) {
            __int128 a = static_cast<__int128>(t.coeff) * lo_[t.var];
            __int128 b = static_cast<__int128>(t.coeff) * hi_[t.var];
            mn += std::min(a, b);
            mx += std::max(a, b);
        }
        return {mn, mx};
    }

    /// sum(c_i x_i) <= rhs, with coefficients scaled by sign.
    bool le(const std::vector<LinTerm>& ts, __int128 rhs, std::int64_t sign) {
        __int128 mn = 0;
        for (const auto& t : ts) {
            std::int64_t c = t.coeff * sign;
            mn += std::min(static_cast<__int128>(c) * lo_[t.var], static_cast<__int128>(c) * hi_[t.var]);
        }
        if (mn > rhs) return false;
        for (const auto& t : ts) {
            std::int64_t c = t.coeff * sign;
            if (c == 0) continue;
            __int128 own = std::min(static_cast<__int128>(c) * lo_[t.var], static_cast<__int128>(c) * hi_[t.var]);
            __int128 slack = rhs - (mn - own);
            if (c > 0) {
                if (!setHi(t.var, floorDiv(slack, c))) return false;
            }
            else if (!setLo(t.var, ceilDiv(slack, c))) {
                return false;
            }
        }
        return true;
    }

    bool ne(const std::vector<LinTerm>& ts, std::int64_t rhs) {
        const LinTerm* open = nullptr;
        __int128 rest = 0;
        for (const auto& t : ts) {
            if (fixed(t.var)) {
                rest += static_cast<__int128>(t.coeff) * lo_[t.var];
            }
            else if (open) {
                return true;
            }
            else {
                open = &t;
            }
        }
        if (!open) return rest != rhs;
        __int128 r = static_cast<__int128>(rhs) - rest;
        if (open->coeff == 0 || r % open->coeff != 0) return true;
        __int128 v = r / open->coeff;
        if (v == lo_[open->var]) return setLo(open->var, lo_[open->var] + 1);
        if (v == hi_[open->var]) return setHi(open->var, hi_[open->var] - 1);
        return true;
    }

    bool expr(const LinExpr& e, bool positive) {
        switch (e.op) {
            case LinOp::Le: return positive ? le(e.terms, e.rhs, 1) : le(e.terms, -static_cast<__int128>(e.rhs) - 1, -1);
            case LinOp::Eq: return positive ? le(e.terms, e.rhs, 1) && le(e.terms, -static_cast<__int128>(e.rhs), -1) : ne(e.terms, e.rhs);
            case LinOp::Ne: return positive ? ne(e.terms, e.rhs) : le(e.terms, e.rhs, 1) && le(e.terms, -static_cast<__int128>(e.rhs), -1);
        }
        return true;
    }

    /// Truth value of e under current bounds: 1 entailed, 0 disentailed, -1 open.
    int entailed(const LinExpr& e) const {
        auto [mn, mx] = range(e.terms);
        switch (e.op) {
            case LinOp::Le:
                if (mx <= e.rhs) return 1;
                if (mn > e.rhs) return 0;
                return -1;
            case LinOp::Eq:
                if (mn == mx && mn == e.rhs) return 1;
                if (e.rhs < mn || e.rhs > mx) return 0;
                return -1;
            case LinOp::Ne:
                if (mn == mx && mn == e.rhs) return 0;
                if (e.rhs < mn || e.rhs > mx) return 1;
                return -1;
        }
        return -1;
    }

    bool allFixed(const Constraint& c) const {
        for (VarId v : varsOf(c)) {
            if (!fixed(v)) return false;
        }
        return true;
    }

    bool run(std::size_t ci) {
        const auto& cs = m_.constraints();
        if (ci >= cs.size()) {
            auto [b, s] = links_[ci - cs.size()];
            return setLo(b, lo_[s]) && setHi(b, hi_[s]) && setLo(s, lo_[b]) && setHi(s, hi_[b]);
        }
        const Constraint& c = cs[ci];
        if (const auto* k = std::get_if<Clause>(&c)) return clause(k->lits);
        if (const auto* k = std::get_if<ReifAnd>(&c)) return reifAnd({k->target, false}, k->lits);
        if (const auto* k = std::get_if<ReifOr>(&c)) {
            // t <-> or(l)  ==  not t <-> and(not l)
            std::vector<BoolLit> negs;
            for (const auto& l : k->lits) negs.push_back(~l);
            return reifAnd({k->target, true}, negs);
        }
        if (const auto* k = std::get_if<Implies>(&c)) return clause({~k->from, k->to});
        if (const auto* k = std::get_if<Linear>(&c)) return expr(k->expr, true);
        if (const auto* k = std::get_if<ReifLinear>(&c)) {
            int t = lit({k->target, false});
            if (t == 1) return expr(k->expr, true);
            if (t == 0) return expr(k->expr, false);
            int e = entailed(k->expr);
            if (e == 1) return assign(k->target, 1);
            if (e == 0) return assign(k->target, 0);
            return true;
        }
        if (!allFixed(c)) return true;
        return m_.holds(c, current());
    }

    bool propagate() {
        while (!queue_.empty()) {
            std::size_t c = queue_.back();
            queue_.pop_back();
            queued_[c] = false;
            if (!run(c)) {
                for (std::size_t q : queue_) queued_[q] = false;
                queue_.clear();
                return false;
            }
        }
        return true;
    }

    Assignment current() const { return lo_; }

    void undo(std::size_t mark) {
        while (trail_.size() > mark) {
            auto [v, l, h] = trail_.back();
            trail_.pop_back();
            lo_[v] = l;
            hi_[v] = h;
        }
    }

    void count() {
        if (++nodes_ > opts_.cap) throw SearchSpaceTooLarge("IR enumeration exceeds the node cap");
    }

    std::optional<std::size_t> nextOpen(std::size_t from) const {
        for (std::size_t k = from; k < order_.size(); ++k) {
            if (!fixed(order_[k])) return k;
        }
        return std::nullopt;
    }

    /// Branches on order_[k..]; with firstOnly stops at the first model.
    bool dfs(std::size_t from, bool firstOnly) {
        count();
        auto k = nextOpen(from);
        if (!firstOnly && opts_.projection && (!k || *k >= projCount_)) {
            std::size_t mark = trail_.size();
            bool found = dfs(projCount_, true);
            undo(mark);
            return found;
        }
        if (!k) {
            Assignment a = current();
            if (!m_.satisfies(a)) return false;
            // Under projection this is the one completion searched for its projected values.
            out_.push_back(std::move(a));
            return true;
        }
        VarId v = order_[*k];
        bool any = false;
        for (std::int64_t x = lo_[v], h = hi_[v]; x <= h; ++x) {
            std::size_t mark = trail_.size();
            if (assign(v, x) && propagate()) {
                bool found = dfs(*k + 1, firstOnly);
                any = any || found;
            }
            else {
                for (std::size_t q : queue_) queued_[q] = false;
                queue_.clear();
            }
            undo(mark);
            if (firstOnly && any) return true;
        }
        return any;
    }

    void enumerate() { dfs(0, false); }

    struct Entry {
        VarId var;
        std::int64_t lo;
        std::int64_t hi;
    };

    const ConstraintModel& m_;
    IrEnumerateOptions opts_;
    std::vector<std::int64_t> lo_;
    std::vector<std::int64_t> hi_;
    std::vector<std::vector<std::size_t>> watch_;
    std::vector<std::pair<VarId, VarId>> links_;
    std::vector<bool> queued_;
    std::vector<std::size_t> queue_;
    std::vector<Entry> trail_;
    std::vector<VarId> order_;
    std::size_t projCount_ = 0;
    std::uint64_t nodes_ = 0;
    std::vector<Assignment> out_;
};

} // namespace

std::vector<Assignment> enumerateIrModels(const ConstraintModel& m, const IrEnumerateOptions& opts) { return Search(m, opts).run(); }

std::vector<Assignment> enumerateIrModelsBruteForce(const ConstraintModel& m, std::uint64_t cap) {
    __int128 space = 1;
    for (const auto& v : m.vars()) {
        space *= static_cast<__int128>(v.ub) - v.lb + 1;
        if (space > cap) throw SearchSpaceTooLarge("domain product exceeds the cap");
    }
    std::vector<Assignment> out;
    Assignment a;
    for (const auto& v : m.vars()) a.push_back(v.lb);
    if (std::any_of(m.vars().begin(), m.vars().end(), [](const Variable& v) { return v.lb > v.ub; })) return out;
    while (true) {
        if (m.satisfies(a)) out.push_back(a);
        std::size_t k = 0;
        for (; k < a.size(); ++k) {
            if (a[k] < m.var(static_cast<VarId>(k)).ub) {
                ++a[k];
                break;
            }
            a[k] = m.var(static_cast<VarId>(k)).lb;
        }
        if (k == a.size()) break;
    }
    std::sort(out.begin(), out.end());
    return out;
}

EInterpretation project(const Translation& t, const Assignment& a) {
    EInterpretation e;
    for (const auto& [atom, v] : t.atomVars) {
        if (a.at(v) != 0) e.atoms.insert(atom);
    }
    for (const auto& [name, v] : t.linVars) e.assignment[name] = a.at(v);
    return e;
}

std::string_view toString(Verdict::Kind k) noexcept {
    switch (k) {
        case Verdict::Kind::OneToOne: return "OneToOne";
        case Verdict::Kind::ProjectionEqual: return "ProjectionEqual";
        case Verdict::Kind::Mismatch: return "Mismatch";
    }
    return "?";
}

Verdict checkCorrespondence(const GroundProgram& p, const CaspSpec& spec, const Translation& t, bool strict, std::uint64_t cap) {
    Verdict v;
    auto as = enumerateAnswerSets(p, spec, cap);
    IrEnumerateOptions opts;
    if (!strict) {
        std::vector<VarId> proj;
        for (const auto& [a, x] : t.atomVars) proj.push_back(x);
        for (const auto& [n, x] : t.linVars) proj.push_back(x);
        opts.projection = std::move(proj);
    }
    auto models = enumerateIrModels(t.model, opts);
    std::map<EInterpretation, std::size_t> seen;
    for (const auto& m : models) ++seen[project(t, m)];
    v.answerSets = as.size();
    v.models = models.size();

    std::set<EInterpretation> left(as.begin(), as.end());
    for (const auto& e : left) {
        if (!seen.count(e)) {
            v.kind = Verdict::Kind::Mismatch;
            v.witness = e;
            v.detail = "answer set without model: " + toString(e);
            return v;
        }
    }
    for (const auto& [e, n] : seen) {
        if (!left.count(e)) {
            v.kind = Verdict::Kind::Mismatch;
            v.witness = e;
            v.detail = "model that is no answer set: " + toString(e);
            return v;
        }
    }
    bool bijective = std::all_of(seen.begin(), seen.end(), [](const auto& kv) { return kv.second == 1; });
    v.kind = strict && bijective ? Verdict::Kind::OneToOne : Verdict::Kind::ProjectionEqual;
    if (strict && !bijective) v.detail = "some answer set has several models";
    return v;
}

} // namespace casp2fzn
