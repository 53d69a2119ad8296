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
#ifndef CASP2FZN_TESTS_FIXTURES_HPP
#define CASP2FZN_TESTS_FIXTURES_HPP

#include <casp2fzn/program.hpp>
#include <casp2fzn/theory.hpp>

#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

namespace casp2fzn::test {

inline constexpr Atom A = 1;
inline constexpr Atom B = 2;
inline constexpr Atom C = 3;
inline constexpr Atom D = 4;

Rule normal(std::vector<Atom> head, std::vector<Atom> pos = {}, std::vector<Atom> neg = {});
Rule choice(std::vector<Atom> head, std::vector<Atom> pos = {}, std::vector<Atom> neg = {});
Rule weighted(HeadKind kind, std::vector<Atom> head, Weight bound, std::vector<WeightLit> lits);

GroundProgram program(std::initializer_list<Rule> rules);
/// #show entries for atoms 1..4 named a..d.
void showAbcd(GroundProgram& p);

/// {a;b} <- c.   <- 3 <= {a:1, b:2}.   c <- not d.
GroundProgram p1();
/// P1 with x in [0,2], y in [0,1] and d <-> x + y != 3.
std::pair<GroundProgram, CaspSpec> p2();
/// a <- b.  b <- a.
GroundProgram q();

/// Contents of a file below tests/data.
std::string readData(const std::string& name);

} // namespace casp2fzn::test

#endif
