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
#ifndef CASP2FZN_TRANSLATE_HPP
#define CASP2FZN_TRANSLATE_HPP

#include <casp2fzn/analysis.hpp>
#include <casp2fzn/ir.hpp>
#include <casp2fzn/program.hpp>
#include <casp2fzn/theory.hpp>

#include <map>
#include <string>

namespace casp2fzn {

struct TranslateOptions {
    /// Emit the constraints that make the level ranking unique, giving a one-to-one
    /// correspondence between answer sets and models.
    bool strict = true;
};

struct Translation {
    ConstraintModel model;
    SccInfo scc;
    std::map<Atom, VarId> atomVars;
    std::map<std::string, VarId> linVars;
    std::map<Atom, VarId> rankVars;
};

/// Translates a partially shifted HCF program with its constraint part into a model
/// whose solutions, projected on atomVars and linVars, are the constraint answer sets.
///
/// Variable names: x_<atom>, l_<atom>, dep_<a>_<b>, y_<a>_<b>, gap_<a>_<b>, bd_<rule>,
/// bda_<rule>_<atom>, ext_<rule>_<atom>, int_<rule>_<atom>, aux_<rule>_<atom>,
/// sp_<rule>_<atom>, v_<linear variable>, and i_<name> for zero-one shadows.
/// Rules are numbered by position in p.rules.
///
/// Throws NotHcfError, PartialShiftViolation when a proper disjunction has a head atom
/// in the component of a positive body atom, UnboundedError for a linear variable
/// without domain and OverflowError from priority compilation.
[[nodiscard]] Translation translate(const GroundProgram& p, const CaspSpec& spec, const TranslateOptions& opts = {});

} // namespace casp2fzn

#endif
