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
#include "fixtures.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace casp2fzn::test {

Rule normal(std::vector<Atom> head, std::vector<Atom> pos, std::vector<Atom> neg) {
    return Rule{HeadKind::Disjunctive, std::move(head), NormalBody{std::move(pos), std::move(neg)}};
}

Rule choice(std::vector<Atom> head, std::vector<Atom> pos, std::vector<Atom> neg) {
    return Rule{HeadKind::Choice, std::move(head), NormalBody{std::move(pos), std::move(neg)}};
}

Rule weighted(HeadKind kind, std::vector<Atom> head, Weight bound, std::vector<WeightLit> lits) {
    return Rule{kind, std::move(head), WeightBody{bound, std::move(lits)}};
}

GroundProgram program(std::initializer_list<Rule> rules) {
    GroundProgram p;
    for (const auto& r : rules) p.addRule(r);
    return p;
}

void showAbcd(GroundProgram& p) {
    for (Atom a : {A, B, C, D}) p.shows.push_back({std::string(1, static_cast<char>('a' + a - 1)), {posLit(a)}});
}

GroundProgram p1() {
    auto p = program({choice({A, B}, {C}), weighted(HeadKind::Disjunctive, {}, 3, {{posLit(A), 1}, {posLit(B), 2}}), normal({C}, {}, {D})});
    showAbcd(p);
    return p;
}

std::pair<GroundProgram, CaspSpec> p2() {
    auto p = p1();
    CaspSpec spec;
    spec.vars = {"x", "y"};
    spec.domains = {{"x", {0, 2}}, {"y", {0, 1}}};
    spec.linAtoms[D] = LinearConstraint{{{"x", 1}, {"y", 1}}, CmpOp::Ne, 3};
    return {p, spec};
}

GroundProgram q() {
    auto p = program({normal({A}, {B}), normal({B}, {A})});
    p.shows.push_back({"a", {posLit(A)}});
    p.shows.push_back({"b", {posLit(B)}});
    return p;
}

std::string readData(const std::string& name) {
    std::ifstream f(std::string(CASP2FZN_TEST_DATA) + "/" + name, std::ios::binary);
    if (!f) throw std::runtime_error("missing test data " + name);
    std::ostringstream os;
    os << f.rdbuf();
    return os.str();
}

} // namespace casp2fzn::test
