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

#include <casp2fzn/aspif.hpp>
#include <casp2fzn/error.hpp>
#include <casp2fzn/theory.hpp>

#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <array>
#include <random>

using namespace casp2fzn;
using namespace casp2fzn::test;

namespace {

Atom atomNamed(const GroundProgram& p, const std::string& name) {
    for (const auto& [a, n] : p.atomNames()) {
        if (n == name) return a;
    }
    FAIL("no atom " << name);
    return 0;
}

/// The linear constraint atom in the body of "name :- &sum{...} op k."
Atom sumAtomOf(const GroundProgram& p, const std::string& name) {
    Atom h = atomNamed(p, name);
    for (const auto& r : p.rules) {
        const auto* nb = std::get_if<NormalBody>(&r.body);
        if (!r.isChoice() && r.head == std::vector<Atom>{h} && nb && nb->pos.size() == 1) return nb->pos.front();
    }
    FAIL("no rule for " << name);
    return 0;
}

CaspSpec load(const std::string& file) { return extractCasp(parseAspif(readData(file))); }

} // namespace

TEST_CASE("constraint part of Listing 1", "[theory]") {
    auto p = parseAspif(readData("listing1.aspif"));
    auto spec = extractCasp(p);
    CHECK(spec.vars == std::set<std::string>{"x", "y"});
    CHECK(spec.domains.at("x") == Interval{0, 2});
    CHECK(spec.domains.at("y") == Interval{0, 1});
    CHECK(spec.linAtoms.at(sumAtomOf(p, "d")) == LinearConstraint{{{"x", 1}, {"y", 1}}, CmpOp::Ne, 3});
    CHECK(spec.linAtoms.size() == 4);
    CHECK(spec.globals.empty());
    CHECK(spec.objective.empty());
}

TEST_CASE("sums are normalized", "[theory]") {
    auto p = parseAspif(readData("sums.aspif"));
    auto spec = extractCasp(p);
    // x - y + 3 >= 2
    CHECK(spec.linAtoms.at(sumAtomOf(p, "a")) == LinearConstraint{{{"x", 1}, {"y", -1}}, CmpOp::Ge, -1});
    // Elements form a set, so {x; x} contributes x once.
    CHECK(spec.linAtoms.at(sumAtomOf(p, "b")) == LinearConstraint{{{"x", 1}, {"y", 2}}, CmpOp::Le, 4});
    CHECK(spec.linAtoms.at(sumAtomOf(p, "c")) == LinearConstraint{{}, CmpOp::Eq, 0});
    CHECK(spec.objective == std::vector<LinearTerm>{{"x", 2}, {"y", -1}});
}

TEST_CASE("domain statements", "[theory]") {
    auto spec = load("domains.aspif");
    CHECK(spec.domains.at("x") == Interval{3, 5});
    CHECK(spec.domains.at("y") == Interval{7, 7});
    CHECK(spec.vars == std::set<std::string>{"x", "y", "z"});
    CHECK_FALSE(spec.domains.count("z"));

    auto d = boundOrDefault(spec, kDefaultFallback);
    CHECK(d.defaulted == std::vector<std::string>{"z"});
    CHECK(d.spec.domains.at("z") == kDefaultFallback);
    CHECK(d.spec.domains.at("x") == Interval{3, 5});
    CHECK(boundOrDefault(spec, {-1, 1}).spec.domains.at("z") == Interval{-1, 1});
}

TEST_CASE("global constraints", "[theory]") {
    auto spec = load("globals_small.aspif");
    REQUIRE(spec.globals.size() == 3);
    auto task = [](const char* s, std::int64_t l, std::int64_t r) {
        return TaskSpec{Operand::variable(s), Operand::constant(l), Operand::constant(r)};
    };
    std::vector<GlobalSpec> expected{
        CumulativeSpec{{task("s(1)", 2, 1), task("s(2)", 1, 2), TaskSpec{Operand::constant(0), Operand::constant(1), Operand::constant(1)}}, 3},
        DisjointSpec{{task("s(1)", 2, 1), task("s(2)", 1, 1)}},
        DistinctSpec{{"s(1)", "s(2)"}},
    };
    for (const auto& g : expected) {
        CHECK(std::find(spec.globals.begin(), spec.globals.end(), g) != spec.globals.end());
    }
    CHECK(spec.vars == std::set<std::string>{"s(1)", "s(2)"});
}

TEST_CASE("unsupported theory input is rejected", "[theory]") {
    for (const char* f : {"bad/noncontiguous.aspif", "bad/conditional_element.aspif", "bad/conditional_head.aspif",
                          "bad/nonlinear.aspif", "bad/empty_domain.aspif", "bad/disjoint_arity.aspif"}) {
        INFO(f);
        CHECK_THROWS_AS(load(f), TheoryError);
    }
}

TEST_CASE("cumulative capacity must be non-negative", "[theory]") {
    auto p = parseAspif(readData("cumulative.aspif"));
    CHECK_NOTHROW(extractCasp(p));
    std::uint32_t fresh = p.theory.terms.rbegin()->first + 1;
    p.theory.terms[fresh] = TheoryTerm{TheoryTerm::Kind::Number, -1, {}, 0, {}};
    for (auto& a : p.theory.atoms) {
        if (a.guard && p.theory.render(a.guard->op) == "<=") a.guard->rhs = fresh;
    }
    CHECK_THROWS_AS(extractCasp(p), TheoryError);
}

TEST_CASE("theory statement order does not matter", "[theory][property]") {
    for (const char* f : {"listing1.aspif", "globals.aspif", "sums.aspif", "domains.aspif", "globals_small.aspif"}) {
        auto p = parseAspif(readData(f));
        auto spec = extractCasp(p);
        std::mt19937_64 rng(3);
        for (int i = 0; i < 20; ++i) {
            std::shuffle(p.theory.atoms.begin(), p.theory.atoms.end(), rng);
            auto shuffled = extractCasp(p);
            CHECK(shuffled.vars == spec.vars);
            CHECK(shuffled.domains == spec.domains);
            CHECK(shuffled.linAtoms == spec.linAtoms);
            CHECK(shuffled.objective == spec.objective);
            CHECK(std::is_permutation(shuffled.globals.begin(), shuffled.globals.end(), spec.globals.begin(), spec.globals.end()));
        }
    }
}

TEST_CASE("linear atoms of Listing 1 evaluate as their sums", "[theory][property]") {
    auto p = parseAspif(readData("listing1.aspif"));
    auto spec = extractCasp(p);
    for (std::int64_t x = 0; x <= 2; ++x) {
        for (std::int64_t y = 0; y <= 1; ++y) {
            std::map<std::string, std::int64_t> v{{"x", x}, {"y", y}};
            CHECK(evaluate(spec.linAtoms.at(sumAtomOf(p, "d")), v) == (x + y != 3));
            // val(x,V) :- &sum{x} = V, for V = 1..2.
            for (const auto& show : p.shows) {
                if (show.name.rfind("val(", 0) != 0) continue;
                std::string var(1, show.name[4]);
                std::int64_t value = show.name[6] - '0';
                Atom lin = 0;
                for (const auto& r : p.rules) {
                    if (r.head == std::vector<Atom>{atomOf(show.condition.front())}) lin = std::get<NormalBody>(r.body).pos.front();
                }
                REQUIRE(lin != 0);
                CHECK(evaluate(spec.linAtoms.at(lin), v) == (v.at(var) == value));
            }
        }
    }
}

TEST_CASE("comparison operators", "[theory]") {
    for (std::int64_t l = -2; l <= 2; ++l) {
        for (std::int64_t r = -2; r <= 2; ++r) {
            CHECK(compare(l, CmpOp::Lt, r) == (l < r));
            CHECK(compare(l, CmpOp::Gt, r) == (l > r));
            CHECK(compare(l, CmpOp::Le, r) == (l <= r));
            CHECK(compare(l, CmpOp::Ge, r) == (l >= r));
            CHECK(compare(l, CmpOp::Eq, r) == (l == r));
            CHECK(compare(l, CmpOp::Ne, r) == (l != r));
        }
    }
    for (CmpOp op : {CmpOp::Lt, CmpOp::Gt, CmpOp::Eq, CmpOp::Ne, CmpOp::Le, CmpOp::Ge}) CHECK(parseCmpOp(toString(op)) == op);
    CHECK(parseCmpOp("=<") == std::nullopt);
}

TEST_CASE("cumulative with capacity one and unit resources is disjoint", "[theory][property]") {
    std::mt19937_64 rng(17);
    std::uniform_int_distribution<int> start(-3, 6);
    std::uniform_int_distribution<int> len(-1, 4);
    for (int round = 0; round < 2000; ++round) {
        int n = std::uniform_int_distribution<int>(1, 4)(rng);
        DisjointSpec d;
        CumulativeSpec c;
        c.bound = 1;
        std::map<std::string, std::int64_t> values;
        for (int i = 0; i < n; ++i) {
            std::string s = "s" + std::to_string(i);
            values[s] = start(rng);
            auto l = Operand::constant(len(rng));
            d.tasks.push_back({Operand::variable(s), l, Operand::constant(1)});
            c.tasks.push_back({Operand::variable(s), l, Operand::constant(1)});
        }
        CHECK(evaluate(GlobalSpec{d}, values) == evaluate(GlobalSpec{c}, values));
    }
}

TEST_CASE("cumulative load is checked at every time point", "[theory][property]") {
    std::mt19937_64 rng(19);
    for (int round = 0; round < 2000; ++round) {
        int n = std::uniform_int_distribution<int>(1, 4)(rng);
        CumulativeSpec c;
        c.bound = std::uniform_int_distribution<int>(0, 4)(rng);
        std::vector<std::array<std::int64_t, 3>> tasks;
        std::map<std::string, std::int64_t> values;
        for (int i = 0; i < n; ++i) {
            std::array<std::int64_t, 3> t{std::uniform_int_distribution<int>(0, 5)(rng), std::uniform_int_distribution<int>(0, 3)(rng),
                                          std::uniform_int_distribution<int>(0, 3)(rng)};
            tasks.push_back(t);
            values["s" + std::to_string(i)] = t[0];
            c.tasks.push_back({Operand::variable("s" + std::to_string(i)), Operand::constant(t[1]), Operand::constant(t[2])});
        }
        bool ok = true;
        for (std::int64_t time = 0; time <= 9; ++time) {
            std::int64_t load = 0;
            for (const auto& t : tasks) {
                if (t[0] <= time && time < t[0] + t[1]) load += t[2];
            }
            ok = ok && load <= c.bound;
        }
        CHECK(evaluate(GlobalSpec{c}, values) == ok);
    }
}
