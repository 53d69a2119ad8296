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
#include <casp2fzn/analysis.hpp>

#include <casp2fzn/error.hpp>

#include <algorithm>
#include <unordered_map>

namespace casp2fzn {

std::uint32_t SccInfo::sizeOf(Atom a) const {
    auto it = sccId.find(a);
    return it == sccId.end() ? 1u : sccSize[it->second];
}

bool SccInfo::sameScc(Atom a, Atom b) const {
    auto ia = sccId.find(a);
    auto ib = sccId.find(b);
    return ia != sccId.end() && ib != sccId.end() && ia->second == ib->second;
}

std::vector<std::pair<Atom, Atom>> SccInfo::internalEdges() const {
    std::vector<std::pair<Atom, Atom>> out;
    for (const auto& [a, succ] : edges) {
        for (Atom b : succ) {
            if (sameScc(a, b)) out.emplace_back(a, b);
        }
    }
    return out;
}

SccInfo buildDepGraph(const GroundProgram& p) {
    SccInfo info;
    for (Atom a : p.atoms) info.edges[a];
    for (const auto& r : p.rules) {
        auto pos = r.positiveBody();
        for (Atom a : r.head) {
            auto& succ = info.edges[a];
            succ.insert(succ.end(), pos.begin(), pos.end());
        }
    }
    for (auto& [a, succ] : info.edges) {
        std::sort(succ.begin(), succ.end());
        succ.erase(std::unique(succ.begin(), succ.end()), succ.end());
        for (Atom b : succ) info.edges[b];
    }

    // Iterative Tarjan over atoms in increasing order.
    std::unordered_map<Atom, std::uint32_t> index;
    std::unordered_map<Atom, std::uint32_t> low;
    std::unordered_map<Atom, bool> onStack;
    std::vector<Atom> stack;
    std::vector<std::vector<Atom>> components;
    std::uint32_t next = 0;
    struct Frame {
        Atom atom;
        std::size_t child;
    };
    for (const auto& [root, unused] : info.edges) {
        if (index.count(root)) continue;
        std::vector<Frame> call{{root, 0}};
        index[root] = low[root] = next++;
        stack.push_back(root);
        onStack[root] = true;
        while (!call.empty()) {
            auto& f = call.back();
            const auto& succ = info.edges[f.atom];
            if (f.child < succ.size()) {
                Atom w = succ[f.child++];
                if (!index.count(w)) {
                    index[w] = low[w] = next++;
                    stack.push_back(w);
                    onStack[w] = true;
                    call.push_back({w, 0});
                }
                else if (onStack[w]) {
                    low[f.atom] = std::min(low[f.atom], index[w]);
                }
                continue;
            }
            Atom v = f.atom;
            call.pop_back();
            if (!call.empty()) low[call.back().atom] = std::min(low[call.back().atom], low[v]);
            if (low[v] == index[v]) {
                std::vector<Atom> comp;
                Atom w = 0;
                do {
                    w = stack.back();
                    stack.pop_back();
                    onStack[w] = false;
                    comp.push_back(w);
                } while (w != v);
                std::sort(comp.begin(), comp.end());
                components.push_back(std::move(comp));
            }
        }
    }
    std::sort(components.begin(), components.end(), [](const auto& x, const auto& y) { return x.front() < y.front(); });
    for (SccId id = 0; id < components.size(); ++id) {
        for (Atom a : components[id]) info.sccId[a] = id;
        info.sccSize.push_back(static_cast<std::uint32_t>(components[id].size()));
        if (components[id].size() > 1) info.nontrivial.insert(id);
    }
    return info;
}

bool isHcf(const GroundProgram& p, const SccInfo& s) {
    for (const auto& r : p.rules) {
        if (r.isChoice()) continue;
        for (std::size_t i = 0; i < r.head.size(); ++i) {
            for (std::size_t j = i + 1; j < r.head.size(); ++j) {
                if (s.sameScc(r.head[i], r.head[j])) return false;
            }
        }
    }
    return true;
}

bool violatesPartialShift(const Rule& r, const SccInfo& s) {
    if (r.isChoice() || r.head.size() <= 1) return false;
    auto pos = r.positiveBody();
    for (Atom a : r.head) {
        for (Atom b : pos) {
            if (s.sameScc(a, b)) return true;
        }
    }
    return false;
}

GroundProgram partiallyShift(const GroundProgram& p, const SccInfo& s) {
    if (!isHcf(p, s)) throw NotHcfError("program is not head-cycle free");
    if (std::none_of(p.rules.begin(), p.rules.end(), [&](const Rule& r) { return violatesPartialShift(r, s); })) return p;

    GroundProgram out = p;
    out.rules.clear();
    Atom fresh = p.maxAtom();
    for (const auto& r : p.rules) {
        if (!violatesPartialShift(r, s)) {
            out.rules.push_back(r);
            continue;
        }
        NormalBody base;
        if (const auto* nb = std::get_if<NormalBody>(&r.body)) {
            base = *nb;
        }
        else {
            Atom aux = ++fresh;
            out.addRule(Rule{HeadKind::Disjunctive, {aux}, r.body});
            base.pos = {aux};
        }
        for (Atom a : r.head) {
            NormalBody b = base;
            for (Atom other : r.head) {
                if (other != a && std::find(b.neg.begin(), b.neg.end(), other) == b.neg.end()) b.neg.push_back(other);
            }
            out.addRule(Rule{HeadKind::Disjunctive, {a}, std::move(b)});
        }
    }
    return out;
}

} // namespace casp2fzn
