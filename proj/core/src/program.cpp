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
#include <casp2fzn/program.hpp>

#include <casp2fzn/error.hpp>

#include <algorithm>
#include <sstream>

namespace casp2fzn {

namespace {
std::vector<Atom> sortedUnique(std::vector<Atom> v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v;
}

bool isOperatorSymbol(const std::string& s) {
    return !s.empty() && std::none_of(s.begin(), s.end(), [](unsigned char c) { return std::isalnum(c) || c == '_' || c == '\''; });
}
} // namespace

std::vector<Atom> Rule::positiveBody() const {
    if (const auto* nb = std::get_if<NormalBody>(&body)) return sortedUnique(nb->pos);
    std::vector<Atom> out;
    for (const auto& wl : std::get<WeightBody>(body).lits) {
        if (!isNegative(wl.lit)) out.push_back(atomOf(wl.lit));
    }
    return sortedUnique(std::move(out));
}

std::vector<Atom> Rule::negativeBody() const {
    if (const auto* nb = std::get_if<NormalBody>(&body)) return sortedUnique(nb->neg);
    std::vector<Atom> out;
    for (const auto& wl : std::get<WeightBody>(body).lits) {
        if (isNegative(wl.lit)) out.push_back(atomOf(wl.lit));
    }
    return sortedUnique(std::move(out));
}

std::string TheoryData::render(std::uint32_t id) const {
    auto it = terms.find(id);
    if (it == terms.end()) return "#" + std::to_string(id);
    const TheoryTerm& t = it->second;
    switch (t.kind) {
        case TheoryTerm::Kind::Number: return std::to_string(t.number);
        case TheoryTerm::Kind::Symbol: return t.symbol;
        case TheoryTerm::Kind::Compound: break;
    }
    std::ostringstream os;
    auto list = [&](const char* open, const char* close) {
        os << open;
        for (std::size_t i = 0; i < t.args.size(); ++i) {
            if (i) os << ',';
            os << render(t.args[i]);
        }
        if (t.functor == TheoryTerm::Tuple && t.args.size() == 1) os << ',';
        os << close;
    };
    if (t.functor == TheoryTerm::Tuple) {
        list("(", ")");
    }
    else if (t.functor == TheoryTerm::Set) {
        list("{", "}");
    }
    else if (t.functor == TheoryTerm::List) {
        list("[", "]");
    }
    else {
        std::string name = render(static_cast<std::uint32_t>(t.functor));
        if (isOperatorSymbol(name) && t.args.size() == 2) {
            os << render(t.args[0]) << name << render(t.args[1]);
        }
        else if (isOperatorSymbol(name) && t.args.size() == 1) {
            os << name << render(t.args[0]);
        }
        else {
            os << name;
            list("(", ")");
        }
    }
    return os.str();
}

void GroundProgram::addAtom(Atom a) {
    if (a != 0) atoms.insert(a);
}

void GroundProgram::addRule(Rule r) {
    for (Atom a : r.head) addAtom(a);
    if (const auto* nb = std::get_if<NormalBody>(&r.body)) {
        for (Atom a : nb->pos) addAtom(a);
        for (Atom a : nb->neg) addAtom(a);
    }
    else {
        for (const auto& wl : std::get<WeightBody>(r.body).lits) addAtom(atomOf(wl.lit));
    }
    rules.push_back(std::move(r));
}

std::map<Atom, std::string> GroundProgram::atomNames() const {
    std::map<Atom, std::string> names;
    for (const auto& s : shows) {
        if (s.condition.size() == 1 && !isNegative(s.condition.front())) names.emplace(atomOf(s.condition.front()), s.name);
    }
    return names;
}

std::optional<MinimizeStatement> compilePriorities(const std::vector<MinimizeStatement>& statements) {
    if (statements.empty()) return std::nullopt;
    std::vector<int> levels;
    for (const auto& s : statements) levels.push_back(s.priority);
    std::sort(levels.begin(), levels.end());
    levels.erase(std::unique(levels.begin(), levels.end()), levels.end());

    // Per level: sum of |w|, then the scale factors bottom-up.
    std::map<int, Weight> span;
    for (const auto& s : statements) {
        for (const auto& t : s.terms) {
            Weight a = t.weight < 0 ? -t.weight : t.weight;
            if (__builtin_add_overflow(span[s.priority], a, &span[s.priority])) throw OverflowError("minimize weights overflow");
        }
    }
    std::map<int, Weight> factor;
    Weight f = 1;
    Weight upTo = 1; // 1 + sum of |w| at levels <= p
    for (int p : levels) {
        factor[p] = f;
        if (__builtin_add_overflow(upTo, span[p], &upTo) || __builtin_mul_overflow(f, upTo, &f)) {
            throw OverflowError("priority compilation overflows");
        }
    }

    MinimizeStatement out;
    std::map<Lit, std::size_t> pos;
    for (const auto& s : statements) {
        for (const auto& t : s.terms) {
            Weight w = 0;
            if (__builtin_mul_overflow(t.weight, factor[s.priority], &w)) throw OverflowError("scaled minimize weight overflows");
            auto [it, fresh] = pos.emplace(t.lit, out.terms.size());
            if (fresh) {
                out.terms.push_back({t.lit, w});
            }
            else if (__builtin_add_overflow(out.terms[it->second].weight, w, &out.terms[it->second].weight)) {
                throw OverflowError("scaled minimize weight overflows");
            }
        }
    }
    std::erase_if(out.terms, [](const WeightLit& t) { return t.weight == 0; });
    return out;
}

} // namespace casp2fzn
