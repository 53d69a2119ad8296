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
#include <casp2fzn/flatzinc.hpp>

#include <casp2fzn/error.hpp>

#include <json.hpp>

#include <algorithm>
#include <limits>
#include <cctype>
#include <charconv>
#include <istream>
#include <sstream>

namespace casp2fzn {

namespace {

const std::set<std::string_view>& keywords() {
    static const std::set<std::string_view> k{"ann",   "annotation", "any",     "array",   "bool",   "case",    "constraint",
                                              "else",  "elseif",     "endif",   "enum",    "false",  "float",   "function",
                                              "if",    "in",         "include", "int",     "let",    "list",    "maximize",
                                              "minimize", "of",      "opt",     "output",  "par",    "predicate", "record",
                                              "satisfy", "set",      "solve",   "string",  "test",   "then",    "true",
                                              "tuple", "type",       "var",     "where"};
    return k;
}

bool plainIdentifier(std::string_view s) {
    if (s.empty() || !std::isalpha(static_cast<unsigned char>(s[0]))) return false;
    return std::all_of(s.begin(), s.end(), [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; });
}

std::string negationName(const std::string& id) { return "not_" + id; }

std::string join(const std::vector<std::string>& xs) {
    std::string out = "[";
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (i) out += ", ";
        out += xs[i];
    }
    return out + "]";
}

class Emitter {
public:
    Emitter(const ConstraintModel& m, const EmitOptions& opts) : m_(m), opts_(opts), names_(fznNames(m)) {
        for (const auto& n : names_) taken_.insert(n);
    }

    std::string run() {
        m_.validate();
        std::vector<std::string> body;
        for (const auto& c : m_.constraints()) {
            if (auto s = constraint(c)) body.push_back(std::move(*s));
        }
        std::ostringstream os;
        if (usesAllDifferent_) os << "predicate fzn_all_different_int(array [int] of var int: x);\n";
        if (usesDisjunctive_) os << "predicate fzn_disjunctive(array [int] of var int: s, array [int] of var int: d);\n";
        if (usesCumulative_) {
            os << "predicate fzn_cumulative(array [int] of var int: s, array [int] of var int: d, "
                  "array [int] of var int: r, var int: b);\n";
        }
        for (VarId v = 0; v < m_.size(); ++v) os << declaration(v) << '\n';
        for (VarId v : negated_) os << "var bool: " << negationName(names_[v]) << ";\n";
        std::optional<std::string> objective;
        if (m_.objective) {
            const auto& o = *m_.objective;
            auto [lo, hi] = linearRange(m_, o.terms);
            __int128 l = static_cast<__int128>(lo) + o.offset;
            __int128 h = static_cast<__int128>(hi) + o.offset;
            if (l < std::numeric_limits<std::int64_t>::min() || h > std::numeric_limits<std::int64_t>::max()) {
                throw OverflowError("objective range exceeds 64 bits");
            }
            os << "var " << static_cast<std::int64_t>(l) << ".." << static_cast<std::int64_t>(h) << ": " << kObjectiveName
               << " :: output_var;\n";
            std::vector<std::string> cs;
            std::vector<std::string> xs;
            for (const auto& t : o.terms) {
                cs.push_back(std::to_string(t.coeff));
                xs.push_back(names_[t.var]);
            }
            cs.emplace_back("-1");
            xs.emplace_back(kObjectiveName);
            objective = "constraint int_lin_eq(" + join(cs) + ", " + join(xs) + ", " + std::to_string(-o.offset) + ");";
        }
        for (VarId v : negated_) os << "constraint bool_not(" << names_[v] << ", " << negationName(names_[v]) << ");\n";
        for (const auto& [b, s] : m_.shadows()) os << "constraint bool2int(" << names_[b] << ", " << names_[s] << ");\n";
        for (const auto& s : body) os << s << '\n';
        if (objective) {
            os << *objective << '\n' << "solve minimize " << kObjectiveName << ";\n";
        }
        else {
            os << "solve satisfy;\n";
        }
        return os.str();
    }

private:
    std::string declaration(VarId v) const {
        const auto& x = m_.var(v);
        std::string out = "var ";
        if (x.kind == VarKind::Bool) {
            out += "bool";
        }
        else {
            out += std::to_string(x.lb) + ".." + std::to_string(x.ub);
        }
        out += ": " + names_[v];
        if (!opts_.outputVars || opts_.outputVars->count(v)) out += " :: output_var";
        if (x.kind == VarKind::Bool && x.lb == x.ub) out += x.lb ? " = true" : " = false";
        return out + ";";
    }

    std::string boolRef(const BoolLit& l) {
        if (!l.negated) return names_[l.var];
        if (negated_.insert(l.var).second) {
            if (!taken_.insert(negationName(names_[l.var])).second) {
                throw EmitError("identifier " + negationName(names_[l.var]) + " is already taken");
            }
        }
        return negationName(names_[l.var]);
    }

    std::vector<std::string> boolRefs(const std::vector<BoolLit>& ls) {
        std::vector<std::string> out;
        for (const auto& l : ls) out.push_back(boolRef(l));
        return out;
    }

    std::string clause(const std::vector<BoolLit>& ls) const {
        std::vector<std::string> pos;
        std::vector<std::string> neg;
        for (const auto& l : ls) (l.negated ? neg : pos).push_back(names_[l.var]);
        return "constraint bool_clause(" + join(pos) + ", " + join(neg) + ");";
    }

    std::string operand(const IntOperand& o) const { return o.var ? names_[*o.var] : std::to_string(o.value); }

    std::string linear(const LinExpr& e, const std::optional<VarId>& target) const {
        std::string pred = e.op == LinOp::Le ? "int_lin_le" : e.op == LinOp::Eq ? "int_lin_eq" : "int_lin_ne";
        std::vector<std::string> cs;
        std::vector<std::string> xs;
        for (const auto& t : e.terms) {
            cs.push_back(std::to_string(t.coeff));
            xs.push_back(names_[t.var]);
        }
        std::string out = "constraint " + pred + (target ? "_reif(" : "(") + join(cs) + ", " + join(xs) + ", " + std::to_string(e.rhs);
        if (target) out += ", " + names_[*target];
        return out + ");";
    }

    std::optional<std::string> constraint(const Constraint& c) {
        if (opts_.linearized && !std::holds_alternative<Linear>(c)) {
            throw EmitError("linearized output requested for a model with non-linear constraints");
        }
        return std::visit(
            [&](const auto& k) -> std::optional<std::string> {
                using T = std::decay_t<decltype(k)>;
                if constexpr (std::is_same_v<T, Clause>) {
                    return clause(k.lits);
                }
                else if constexpr (std::is_same_v<T, ReifAnd>) {
                    return "constraint array_bool_and(" + join(boolRefs(k.lits)) + ", " + names_[k.target] + ");";
                }
                else if constexpr (std::is_same_v<T, ReifOr>) {
                    return "constraint array_bool_or(" + join(boolRefs(k.lits)) + ", " + names_[k.target] + ");";
                }
                else if constexpr (std::is_same_v<T, Implies>) {
                    return clause({~k.from, k.to});
                }
                else if constexpr (std::is_same_v<T, Linear>) {
                    if (k.expr.terms.empty()) {
                        if (holds(k.expr, {})) return std::nullopt;
                        return "constraint int_lin_le([], [], -1);";
                    }
                    return linear(k.expr, std::nullopt);
                }
                else if constexpr (std::is_same_v<T, ReifLinear>) {
                    if (k.expr.terms.empty()) {
                        return "constraint bool_eq(" + names_[k.target] + ", " + (holds(k.expr, {}) ? "true" : "false") + ");";
                    }
                    return linear(k.expr, k.target);
                }
                else if constexpr (std::is_same_v<T, AllDifferent>) {
                    usesAllDifferent_ = true;
                    std::vector<std::string> xs;
                    for (VarId v : k.vars) xs.push_back(names_[v]);
                    return "constraint fzn_all_different_int(" + join(xs) + ");";
                }
                else if constexpr (std::is_same_v<T, Disjunctive>) {
                    usesDisjunctive_ = true;
                    std::vector<std::string> s;
                    std::vector<std::string> d;
                    for (const auto& t : k.tasks) {
                        s.push_back(operand(t.start));
                        d.push_back(operand(t.duration));
                    }
                    return "constraint fzn_disjunctive(" + join(s) + ", " + join(d) + ");";
                }
                else {
                    usesCumulative_ = true;
                    std::vector<std::string> s;
                    std::vector<std::string> d;
                    std::vector<std::string> r;
                    for (const auto& t : k.tasks) {
                        s.push_back(operand(t.start));
                        d.push_back(operand(t.duration));
                        r.push_back(operand(t.resource));
                    }
                    return "constraint fzn_cumulative(" + join(s) + ", " + join(d) + ", " + join(r) + ", " +
                           std::to_string(k.capacity) + ");";
                }
            },
            c);
    }

    const ConstraintModel& m_;
    const EmitOptions& opts_;
    std::vector<std::string> names_;
    std::set<std::string> taken_;
    std::set<VarId> negated_;
    bool usesAllDifferent_ = false;
    bool usesDisjunctive_ = false;
    bool usesCumulative_ = false;
};

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

bool startsWith(std::string_view s, std::string_view p) { return s.substr(0, p.size()) == p; }

/// Reads a JSON string literal at the start of s; returns its value and the rest.
std::pair<std::string, std::string_view> jsonString(std::string_view s, std::string_view line) {
    if (s.empty() || s[0] != '"') throw DecodeError(std::string(line), "expected a quoted name");
    std::size_t i = 1;
    for (; i < s.size(); ++i) {
        if (s[i] == '\\') {
            ++i;
        }
        else if (s[i] == '"') {
            break;
        }
    }
    if (i >= s.size()) throw DecodeError(std::string(line), "unterminated name");
    auto j = nlohmann::json::parse(s.substr(0, i + 1), nullptr, false);
    if (!j.is_string()) throw DecodeError(std::string(line), "malformed name");
    return {j.get<std::string>(), s.substr(i + 1)};
}

std::string_view expectEquals(std::string_view s, std::string_view line) {
    s = trim(s);
    if (s.empty() || s[0] != '=') throw DecodeError(std::string(line), "expected '='");
    return trim(s.substr(1));
}

std::vector<std::string_view> words(std::string_view s) {
    std::vector<std::string_view> out;
    while (true) {
        s = trim(s);
        if (s.empty()) return out;
        std::size_t e = 0;
        while (e < s.size() && !std::isspace(static_cast<unsigned char>(s[e]))) ++e;
        out.push_back(s.substr(0, e));
        s.remove_prefix(e);
    }
}

std::string checkedIdentifier(std::string_view s, std::string_view line) {
    if (!plainIdentifier(s)) throw DecodeError(std::string(line), "malformed identifier");
    return std::string(s);
}

} // namespace

std::string fznIdentifier(std::string_view name) {
    if (plainIdentifier(name) && !keywords().count(name)) return std::string(name);
    static constexpr char hex[] = "0123456789abcdef";
    std::string out = "q_";
    for (char ch : name) {
        auto c = static_cast<unsigned char>(ch);
        if (std::isalnum(c)) {
            out += ch;
        }
        else {
            out += '_';
            out += hex[c >> 4];
            out += hex[c & 15];
        }
    }
    return out;
}

std::vector<std::string> fznNames(const ConstraintModel& m) {
    std::vector<std::string> out;
    std::map<std::string, std::string> seen{{std::string(kObjectiveName), std::string(kObjectiveName)}};
    for (const auto& v : m.vars()) {
        auto id = fznIdentifier(v.name);
        auto [it, fresh] = seen.emplace(id, v.name);
        if (!fresh) throw EmitError("identifier " + id + " of " + v.name + " collides with " + it->second);
        out.push_back(std::move(id));
    }
    return out;
}

std::string emitFzn(const ConstraintModel& m, const EmitOptions& opts) { return Emitter(m, opts).run(); }

std::vector<ShowEntry> showEntries(const GroundProgram& p, const Translation& t) {
    std::vector<ShowEntry> out;
    for (const auto& s : p.shows) {
        ShowEntry e{s.name, {}};
        bool never = false;
        for (Lit l : s.condition) {
            auto it = t.atomVars.find(atomOf(l));
            if (it == t.atomVars.end()) {
                // Atoms outside the program are false.
                never = never || !isNegative(l);
                continue;
            }
            e.condition.push_back({it->second, isNegative(l)});
        }
        if (!never) out.push_back(std::move(e));
    }
    return out;
}

std::vector<LinearShow> linearShows(const Translation& t) {
    std::vector<LinearShow> out;
    for (const auto& [name, v] : t.linVars) out.push_back({name, v});
    return out;
}

std::string emitOutputSpec(const ConstraintModel& m, const std::vector<ShowEntry>& shows, const std::vector<LinearShow>& vars) {
    auto names = fznNames(m);
    std::ostringstream os;
    for (const auto& s : shows) {
        os << "show " << nlohmann::json(s.name).dump() << " =";
        for (const auto& l : s.condition) os << ' ' << (l.negated ? "!" : "") << names.at(l.var);
        os << '\n';
    }
    for (const auto& v : vars) os << "var " << nlohmann::json(v.name).dump() << " = " << names.at(v.var) << '\n';
    if (m.objective) os << "objective = " << kObjectiveName << '\n';
    return os.str();
}

OutputSpec parseOutputSpec(std::string_view text) {
    OutputSpec spec;
    std::istringstream in{std::string(text)};
    std::string raw;
    while (std::getline(in, raw)) {
        std::string_view line = trim(raw);
        if (line.empty() || line[0] == '%') continue;
        if (startsWith(line, "show ")) {
            auto [name, rest] = jsonString(trim(line.substr(5)), line);
            OutputSpec::Show s{name, {}};
            for (auto w : words(expectEquals(rest, line))) {
                bool neg = w[0] == '!';
                if (neg) w.remove_prefix(1);
                s.condition.emplace_back(checkedIdentifier(w, line), neg);
            }
            spec.shows.push_back(std::move(s));
        }
        else if (startsWith(line, "var ")) {
            auto [name, rest] = jsonString(trim(line.substr(4)), line);
            spec.vars.emplace_back(name, checkedIdentifier(expectEquals(rest, line), line));
        }
        else if (startsWith(line, "objective")) {
            spec.objective = checkedIdentifier(expectEquals(line.substr(9), line), line);
        }
        else {
            throw DecodeError(std::string(line), "unknown output spec entry");
        }
    }
    return spec;
}

std::set<std::string> requiredIdentifiers(const OutputSpec& spec) {
    std::set<std::string> out;
    for (const auto& s : spec.shows) {
        for (const auto& [id, neg] : s.condition) out.insert(id);
    }
    for (const auto& [name, id] : spec.vars) out.insert(id);
    if (spec.objective) out.insert(*spec.objective);
    return out;
}

std::string_view toString(SolveStatus s) noexcept {
    switch (s) {
        case SolveStatus::Unknown: return "UNKNOWN";
        case SolveStatus::Satisfiable: return "SATISFIABLE";
        case SolveStatus::Complete: return "COMPLETE";
        case SolveStatus::Unsatisfiable: return "UNSATISFIABLE";
        case SolveStatus::Unbounded: return "UNBOUNDED";
        case SolveStatus::Error: return "ERROR";
    }
    return "?";
}

SolutionDecoder::SolutionDecoder(OutputSpec spec) : spec_(std::move(spec)), wanted_(requiredIdentifiers(spec_)) {}

std::optional<Solution> SolutionDecoder::feed(std::string_view raw) {
    ++line_;
    std::string_view line = trim(raw);
    if (line.empty() || line[0] == '%') return std::nullopt;
    if (finished_) throw DecodeError(std::string(line), "output after the final status line");
    if (line == "----------") {
        Solution s;
        auto value = [&](const std::string& id) {
            auto it = values_.find(id);
            if (it == values_.end()) throw DecodeError(std::string(line), "solution lacks a value for " + id);
            return it->second;
        };
        for (const auto& sh : spec_.shows) {
            bool on = std::all_of(sh.condition.begin(), sh.condition.end(), [&](const auto& c) { return (value(c.first) != 0) != c.second; });
            if (on) s.atoms.push_back(sh.name);
        }
        for (const auto& [name, id] : spec_.vars) s.linVars[name] = value(id);
        if (spec_.objective) s.cost = value(*spec_.objective);
        values_.clear();
        ++count_;
        status_ = SolveStatus::Satisfiable;
        return s;
    }
    if (startsWith(line, "=====")) {
        if (line == "==========") {
            status_ = SolveStatus::Complete;
        }
        else if (line == "=====UNSATISFIABLE=====") {
            status_ = SolveStatus::Unsatisfiable;
        }
        else if (line == "=====UNBOUNDED=====" || line == "=====UNSATorUNBOUNDED=====") {
            status_ = SolveStatus::Unbounded;
        }
        else if (line == "=====UNKNOWN=====") {
            status_ = count_ ? SolveStatus::Satisfiable : SolveStatus::Unknown;
        }
        else if (line == "=====ERROR=====") {
            status_ = SolveStatus::Error;
        }
        else {
            throw DecodeError(std::string(line), "unknown status line");
        }
        if (!values_.empty()) throw DecodeError(std::string(line), "status line inside a solution");
        finished_ = true;
        return std::nullopt;
    }
    auto eq = line.find('=');
    if (eq == std::string_view::npos || line.back() != ';') throw DecodeError(std::string(line), "expected 'identifier = value;'");
    std::string id(trim(line.substr(0, eq)));
    std::string_view val = trim(line.substr(eq + 1, line.size() - eq - 2));
    if (!wanted_.count(id)) return std::nullopt;
    std::int64_t x = 0;
    if (val == "true") {
        x = 1;
    }
    else if (val == "false") {
        x = 0;
    }
    else {
        auto [p, ec] = std::from_chars(val.data(), val.data() + val.size(), x);
        if (ec != std::errc{} || p != val.data() + val.size()) throw DecodeError(std::string(line), "expected an integer or Boolean value");
    }
    values_[id] = x;
    return std::nullopt;
}

SolveStatus decodeSolutions(std::istream& in, const OutputSpec& spec, const std::function<void(const Solution&)>& onSolution) {
    SolutionDecoder d(spec);
    std::string line;
    while (std::getline(in, line)) {
        if (auto s = d.feed(line)) onSolution(*s);
    }
    return d.status();
}

std::string formatAnswerSet(const Solution& s) {
    std::string out;
    for (const auto& a : s.atoms) out += a + ' ';
    return out;
}

} // namespace casp2fzn
