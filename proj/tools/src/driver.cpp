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
#include "driver.hpp"

#include "subprocess.hpp"

#include <casp2fzn/analysis.hpp>
#include <casp2fzn/aspif.hpp>
#include <casp2fzn/error.hpp>
#include <casp2fzn/linearize.hpp>
#include <casp2fzn/oracle.hpp>

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cctype>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <unistd.h>

namespace casp2fzn::tools {

namespace {

namespace fs = std::filesystem;

class Stopwatch {
public:
    double seconds() const { return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count(); }

private:
    std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

Interval parseBounds(const std::string& s) {
    auto dots = s.find("..");
    if (dots == std::string::npos) throw CLI::ValidationError("--default-bounds", "expected LO..HI");
    try {
        std::size_t n1 = 0;
        std::size_t n2 = 0;
        std::string a = s.substr(0, dots);
        std::string b = s.substr(dots + 2);
        Interval iv{std::stoll(a, &n1), std::stoll(b, &n2)};
        if (n1 != a.size() || n2 != b.size() || iv.empty()) throw std::invalid_argument(s);
        return iv;
    }
    catch (const std::logic_error&) {
        throw CLI::ValidationError("--default-bounds", "expected LO..HI with LO <= HI");
    }
}

/// Temporary file removed on scope exit.
class TempFile {
public:
    explicit TempFile(const std::string& content) {
        std::string tmpl = (fs::temp_directory_path() / "casp2fzn-XXXXXX.fzn").string();
        int fd = mkstemps(tmpl.data(), 4);
        if (fd < 0) throw Error("cannot create a temporary file in " + fs::temp_directory_path().string());
        close(fd);
        path_ = tmpl;
        std::ofstream f(path_, std::ios::binary);
        f << content;
        if (!f) throw Error("cannot write " + path_);
    }
    ~TempFile() {
        std::error_code ec;
        fs::remove(path_, ec);
    }
    TempFile(const TempFile&) = delete;
    TempFile& operator=(const TempFile&) = delete;
    [[nodiscard]] const std::string& path() const { return path_; }

private:
    std::string path_;
};

void writeFile(const std::string& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary);
    f << content;
    if (!f) throw Error("cannot write " + path);
}

GroundProgram ground(const Options& o, std::istream& in, std::ostream& err) {
    if (o.inputFiles.empty()) return parseAspif(in);
    std::vector<std::string> cmd{o.gringoPath, "--output=intermediate"};
    cmd.insert(cmd.end(), o.inputFiles.begin(), o.inputFiles.end());
    std::string aspif;
    ProcessResult res;
    try {
        res = runProcess(cmd, [&](std::string_view line) {
            aspif.append(line);
            aspif += '\n';
        });
    }
    catch (const ProcessError& e) {
        throw ProcessError(std::string(e.what()) + " (use --gringo-path to point to the grounder)");
    }
    if (res.signaled || res.exitCode != 0) {
        err << res.err;
        throw Error("grounder failed with " + std::string(res.signaled ? "signal " : "exit code ") + std::to_string(res.exitCode));
    }
    if (o.verbose) err << res.err;
    return parseAspif(std::string_view(aspif));
}

void printStats(const Pipeline& pl, std::ostream& err) {
    const auto& m = pl.model;
    std::size_t ranking = pl.translation.model.countRanking();
    err << "atoms: " << pl.program.atoms.size() << ", rules: " << pl.program.rules.size()
        << ", non-trivial components: " << pl.translation.scc.nontrivial.size() << '\n'
        << "linear variables: " << pl.translation.linVars.size() << ", linear atoms: " << pl.spec.linAtoms.size()
        << ", globals: " << pl.spec.globals.size() << '\n'
        << "model variables: " << m.size() << ", constraints: " << m.constraints().size() << " (ranking: " << ranking << ")\n";
    for (const auto& v : pl.defaulted) err << "warning: variable " << v << " has no domain, using the default bounds\n";
}

int enumerateWithOracle(const Pipeline& pl, const Options& o, std::ostream& out) {
    auto as = enumerateAnswerSets(pl.program, pl.spec, o.oracleCap);
    bool hasObjective = pl.translation.model.objective.has_value();
    for (const auto& e : as) {
        Solution s;
        s.atoms = shownAtoms(pl.program, e.atoms);
        s.linVars = e.assignment;
        if (hasObjective) s.cost = cost(pl.program, pl.spec, e);
        if (o.solutionJson) {
            out << solutionJson(s) << '\n';
        }
        else {
            out << formatAnswerSet(s) << '\n';
            if (s.cost) out << "Optimization: " << *s.cost << '\n';
            out << "----------\n";
        }
    }
    if (as.empty()) {
        if (!o.solutionJson) out << "UNSATISFIABLE\n";
        return kExitUnsat;
    }
    return kExitOk;
}

int verify(const Pipeline& pl, const Options& o, std::ostream& out) {
    bool strict = !o.nonStrict;
    auto v = checkCorrespondence(pl.program, pl.spec, pl.translation, strict, o.oracleCap);
    auto names = pl.program.atomNames();
    auto report = [&](std::string_view what, const Verdict& v) {
        out << what << ": " << toString(v.kind) << " (answer sets: " << v.answerSets << ", models: " << v.models << ")\n";
        if (!v.detail.empty()) out << "  " << v.detail << '\n';
        if (v.witness) out << "  witness: " << toString(*v.witness, names) << '\n';
    };
    report(strict ? "strict translation" : "non-strict translation", v);
    bool ok = strict ? v.kind == Verdict::Kind::OneToOne : v.kind != Verdict::Kind::Mismatch;
    if (o.linearize) {
        Translation lin = pl.translation;
        lin.model = pl.model;
        auto w = checkCorrespondence(pl.program, pl.spec, lin, false, o.oracleCap);
        report("linearized model", w);
        ok = ok && w.kind != Verdict::Kind::Mismatch;
    }
    return ok ? kExitOk : kExitError;
}

int solve(const Pipeline& pl, const Options& o, std::ostream& out, std::ostream& err) {
    TempFile fzn(pl.fzn);
    auto cmd = solverCommand(o, fzn.path());
    if (o.verbose) {
        err << "running:";
        for (const auto& c : cmd) err << ' ' << c;
        err << '\n';
    }
    SolutionDecoder dec(parseOutputSpec(pl.ozn));
    std::optional<Solution> last;
    auto print = [&](const Solution& s) {
        if (o.solutionJson) {
            out << solutionJson(s) << '\n';
        }
        else {
            out << formatAnswerSet(s) << '\n';
            if (s.cost) out << "Optimization: " << *s.cost << '\n';
            out << "----------\n";
        }
        out.flush();
    };
    ProcessResult res;
    try {
        res = runProcess(cmd, [&](std::string_view line) {
            if (auto s = dec.feed(line)) {
                if (o.allSolutions) {
                    print(*s);
                }
                else {
                    last = std::move(s);
                }
            }
        });
    }
    catch (const ProcessError& e) {
        throw ProcessError(std::string(e.what()) + " (use --minizinc-path to point to MiniZinc)");
    }
    if (res.signaled || res.exitCode != 0) {
        err << res.err;
        throw Error("solver failed with " + std::string(res.signaled ? "signal " : "exit code ") + std::to_string(res.exitCode));
    }
    if (o.verbose) err << res.err;
    if (last) print(*last);
    switch (dec.status()) {
        case SolveStatus::Unsatisfiable:
            if (!o.solutionJson) out << "UNSATISFIABLE\n";
            return kExitUnsat;
        case SolveStatus::Complete:
            if (pl.model.objective && !o.solutionJson) out << "OPTIMUM FOUND\n";
            return kExitOk;
        case SolveStatus::Satisfiable: return kExitOk;
        case SolveStatus::Unknown:
            if (dec.solutions() == 0 && !o.solutionJson) out << "UNKNOWN\n";
            return kExitOk;
        case SolveStatus::Unbounded: throw Error("the solver reports an unbounded problem");
        case SolveStatus::Error: throw Error("the solver reports an error");
    }
    return kExitOk;
}

} // namespace

bool isMipSolver(std::string_view solverId) {
    std::string id(solverId);
    std::transform(id.begin(), id.end(), id.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    for (std::string_view prefix : {"org.minizinc.mip.", "org.minizinc."}) {
        if (id.rfind(prefix, 0) == 0) id.erase(0, prefix.size());
    }
    static const std::set<std::string, std::less<>> mip{"cbc", "coin-bc", "coinbc", "cplex", "gurobi", "highs", "mip", "osicbc", "scip", "xpress"};
    return mip.count(id) != 0;
}

std::string minizincExecutable(const std::string& minizincPath) {
    std::error_code ec;
    if (fs::is_directory(minizincPath, ec)) {
        for (const auto& cand : {fs::path(minizincPath) / "bin" / "minizinc", fs::path(minizincPath) / "minizinc"}) {
            if (fs::exists(cand, ec)) return cand.string();
        }
    }
    return minizincPath;
}

std::vector<std::string> solverCommand(const Options& o, const std::string& fznPath) {
    std::vector<std::string> cmd{minizincExecutable(o.minizincPath), "--solver", o.solverId};
    if (o.allSolutions) cmd.emplace_back("-a");
    if (o.timeLimit) cmd.insert(cmd.end(), {"--time-limit", std::to_string(static_cast<std::int64_t>(*o.timeLimit * 1000))});
    if (o.parallel) cmd.insert(cmd.end(), {"-p", std::to_string(*o.parallel)});
    std::istringstream extra(o.solverArgs);
    for (std::string a; extra >> a;) cmd.push_back(a);
    cmd.push_back(fznPath);
    return cmd;
}

Pipeline buildPipeline(const GroundProgram& p, const Options& o) {
    Pipeline pl;
    auto scc = buildDepGraph(p);
    if (!isHcf(p, scc)) throw NotHcfError("the program is not head-cycle free");
    pl.program = partiallyShift(p, scc);
    CaspSpec spec = extractCasp(pl.program);
    if (o.requireBounds) {
        pl.spec = std::move(spec);
    }
    else {
        auto d = boundOrDefault(spec, o.defaultBounds.empty() ? kDefaultFallback : parseBounds(o.defaultBounds));
        pl.spec = std::move(d.spec);
        pl.defaulted = std::move(d.defaulted);
    }
    pl.translation = translate(pl.program, pl.spec, {!o.nonStrict});
    bool lin = o.linearize || (!o.solverId.empty() && isMipSolver(o.solverId));
    pl.model = lin ? linearize(pl.translation.model, {o.rejectGlobals}) : pl.translation.model;
    std::set<VarId> outputs;
    for (const auto& [a, v] : pl.translation.atomVars) outputs.insert(v);
    for (const auto& [n, v] : pl.translation.linVars) outputs.insert(v);
    pl.fzn = emitFzn(pl.model, {lin, outputs});
    pl.ozn = emitOutputSpec(pl.model, showEntries(pl.program, pl.translation), linearShows(pl.translation));
    return pl;
}

std::vector<std::string> shownAtoms(const GroundProgram& p, const std::set<Atom>& atoms) {
    std::vector<std::string> out;
    for (const auto& s : p.shows) {
        bool on = std::all_of(s.condition.begin(), s.condition.end(), [&](Lit l) { return (atoms.count(atomOf(l)) != 0) != isNegative(l); });
        if (on) out.push_back(s.name);
    }
    return out;
}

std::string solutionJson(const Solution& s) {
    nlohmann::ordered_json j;
    j["atoms"] = s.atoms;
    j["lin_vars"] = nlohmann::ordered_json::object();
    for (const auto& [k, v] : s.linVars) j["lin_vars"][k] = v;
    j["cost"] = s.cost ? nlohmann::ordered_json(*s.cost) : nlohmann::ordered_json(nullptr);
    return j.dump();
}

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
    Options o;
    CLI::App app{"Translates ground (C)ASP programs into FlatZinc and solves them with FlatZinc solvers.", "casp2fzn"};
    app.add_option("input-files", o.inputFiles,
                   "Input ASP files, passed on to gringo for grounding. Without files, ASPIF is read from stdin");
    auto* fzn = app.add_option("-f,--output-fzn", o.fznFile, "Write the FlatZinc model to this file. Cannot be used with --solver-id");
    auto* ozn = app.add_option("-o,--output-ozn", o.oznFile, "Write the output mapping to this file. Cannot be used with --solver-id");
    app.add_flag("--non-strict-ranking", o.nonStrict, "Disable strict ranking in the translation");
    app.add_flag("--linearize", o.linearize, "Linearize constraints. Always on for MIP solvers given with --solver-id");
    app.add_flag("-v,--verbose", o.verbose, "Print statistics to stderr");
    auto* solver = app.add_option("-s,--solver-id", o.solverId, "MiniZinc solver id (e.g. cp-sat, org.chuffed.chuffed) to solve with");
    app.add_option("-t,--time-limit", o.timeLimit, "Time limit in seconds. Only relevant with --solver-id")->check(CLI::PositiveNumber);
    app.add_option("-p,--parallel", o.parallel, "Number of solver threads. Only relevant with --solver-id")->check(CLI::PositiveNumber);
    app.add_flag("-a,--all-solutions", o.allSolutions,
                 "Print all solutions, or every improving solution of optimization problems. Only relevant with --solver-id");
    app.add_flag("--solution-json", o.solutionJson, "Print solutions as a stream of JSON objects");
    app.add_option("--solver-args", o.solverArgs, "Additional arguments passed on to the solver. Only relevant with --solver-id");
    app.add_option("--gringo-path", o.gringoPath, "gringo executable used for grounding input files");
    app.add_option("--minizinc-path", o.minizincPath, "MiniZinc executable or installation directory");
    auto* ver = app.add_flag("--verify", o.verify, "Compare answer sets and translation models by exhaustive enumeration");
    auto* orc = app.add_flag("--enumerate-oracle", o.enumerateOracle, "Print the answer sets found by exhaustive enumeration");
    app.add_option("--oracle-cap", o.oracleCap, "Search space limit of --verify and --enumerate-oracle");
    auto* bounds = app.add_option("--default-bounds", o.defaultBounds, "Domain LO..HI for variables without &dom (default -1048576..1048576)");
    app.add_flag("--require-bounds", o.requireBounds, "Reject variables without &dom")->excludes(bounds);
    app.add_flag("--reject-globals", o.rejectGlobals, "With --linearize, fail on global constraints instead of decomposing them");
    app.set_version_flag("-V,--version", std::string("casp2fzn ") + std::string(kVersion));
    solver->excludes(fzn)->excludes(ozn)->excludes(ver)->excludes(orc);
    ver->excludes(orc);

    std::vector<std::string> argv{"casp2fzn"};
    argv.insert(argv.end(), args.begin(), args.end());
    std::vector<const char*> cargv;
    for (const auto& a : argv) cargv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(cargv.size()), cargv.data());
        if (!o.defaultBounds.empty()) (void)parseBounds(o.defaultBounds);
    }
    catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    }
    catch (const CLI::CallForVersion& e) {
        out << e.what() << '\n';
        return kExitOk;
    }
    catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\nRun with --help for usage.\n";
        return kExitUsage;
    }

    try {
        Stopwatch clock;
        GroundProgram p = ground(o, in, err);
        Pipeline pl = buildPipeline(p, o);
        if (o.verbose) {
            printStats(pl, err);
            err << "translation time: " << clock.seconds() << "s\n";
        }
        if (o.verify) return verify(pl, o, out);
        if (o.enumerateOracle) return enumerateWithOracle(pl, o, out);
        if (!o.solverId.empty()) return solve(pl, o, out, err);
        if (!o.fznFile.empty()) writeFile(o.fznFile, pl.fzn);
        if (!o.oznFile.empty()) writeFile(o.oznFile, pl.ozn);
        if (o.fznFile.empty() && o.oznFile.empty()) out << pl.fzn;
        return kExitOk;
    }
    catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kExitError;
    }
}

} // namespace casp2fzn::tools
