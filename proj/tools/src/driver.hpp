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
#ifndef CASP2FZN_TOOLS_DRIVER_HPP
#define CASP2FZN_TOOLS_DRIVER_HPP

#include <casp2fzn/flatzinc.hpp>
#include <casp2fzn/program.hpp>
#include <casp2fzn/theory.hpp>
#include <casp2fzn/translate.hpp>

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace casp2fzn::tools {

inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitUnsat = 20;

inline constexpr std::string_view kVersion = "1.0.0";

struct Options {
    std::vector<std::string> inputFiles;
    std::string fznFile;
    std::string oznFile;
    bool nonStrict = false;
    bool linearize = false;
    bool verbose = false;
    std::string solverId;
    std::optional<double> timeLimit; // seconds
    std::optional<int> parallel;
    bool allSolutions = false;
    bool solutionJson = false;
    std::string solverArgs;
    std::string gringoPath = "gringo";
    std::string minizincPath = "minizinc";
    bool verify = false;
    bool enumerateOracle = false;
    std::uint64_t oracleCap = std::uint64_t{1} << 22;
    std::string defaultBounds;
    bool requireBounds = false;
    bool rejectGlobals = false;
};

/// Backends reached through MiniZinc's MIP wrapper; they get linearized input.
[[nodiscard]] bool isMipSolver(std::string_view solverId);

/// The MiniZinc executable: minizincPath itself, or minizinc inside it when it is a directory.
[[nodiscard]] std::string minizincExecutable(const std::string& minizincPath);

/// Command line for solving fznPath with the selected backend.
[[nodiscard]] std::vector<std::string> solverCommand(const Options& o, const std::string& fznPath);

/// Everything derived from one input program.
struct Pipeline {
    GroundProgram program; // after partial shifting
    CaspSpec spec;
    std::vector<std::string> defaulted;
    Translation translation;
    ConstraintModel model; // translation.model, linearized on request
    std::string fzn;
    std::string ozn;
};

/// Shifts, interprets, translates and emits p. Throws casp2fzn::Error.
[[nodiscard]] Pipeline buildPipeline(const GroundProgram& p, const Options& o);

/// Names of the show entries of p that hold in atoms, in program order.
[[nodiscard]] std::vector<std::string> shownAtoms(const GroundProgram& p, const std::set<Atom>& atoms);

/// One JSON object per line: {"atoms": [...], "lin_vars": {...}, "cost": n|null}.
[[nodiscard]] std::string solutionJson(const Solution& s);

/// Entry point of the command line tool. args excludes the program name.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

} // namespace casp2fzn::tools

#endif
