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
#ifndef CASP2FZN_TESTS_RANDOM_PROGRAMS_HPP
#define CASP2FZN_TESTS_RANDOM_PROGRAMS_HPP

#include <casp2fzn/ir.hpp>
#include <casp2fzn/program.hpp>
#include <casp2fzn/theory.hpp>

#include <cstdint>
#include <random>

namespace casp2fzn::test {

struct RandomOptions {
    int maxAtoms = 8;
    int maxRules = 10;
    int maxLinearVars = 2;
    int maxDomainWidth = 3;
    /// Probability of a rule set that closes a positive cycle.
    double cycleProbability = 0.6;
    bool minimize = false;
    bool linearObjective = false;
    /// Only accept programs with a proper weighted disjunction that is not partially shifted.
    bool requireShiftViolation = false;
    /// Only accept tight programs.
    bool requireTight = false;
};

struct Instance {
    GroundProgram program;
    CaspSpec spec;
};

/// A random HCF program, not necessarily partially shifted. Ordinary atoms are
/// 1..n and shown as p<i>; atoms reifying linear constraints come after them and
/// occur in bodies only.
Instance randomInstance(std::mt19937_64& rng, const RandomOptions& opts = {});

struct RandomModelOptions {
    int maxBools = 5;
    int maxInts = 3;
    int maxConstraints = 5;
    std::int64_t maxProduct = 100000;
    bool globals = true;
};

/// A random valid constraint model with a small domain product.
ConstraintModel randomModel(std::mt19937_64& rng, const RandomModelOptions& opts = {});

} // namespace casp2fzn::test

#endif
