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
#include <casp2fzn/aspif.hpp>

#include <casp2fzn/error.hpp>

#include <algorithm>
#include <charconv>
#include <istream>
#include <iterator>
#include <limits>
#include <ostream>
#include <string>

namespace casp2fzn {

namespace {

enum class Directive : int {
    End = 0,
    Rule = 1,
    Minimize = 2,
    Project = 3,
    Output = 4,
    External = 5,
    Assume = 6,
    Heuristic = 7,
    Edge = 8,
    Theory = 9,
    Comment = 10
};

class Reader {
public:
    explicit Reader(std::string_view text) : text_(text) {}

    [[noreturn]] void fail(const std::string& reason) const { throw SyntaxError(line_, reason); }

    [[nodiscard]] bool atEnd() const { return pos_ >= text_.size(); }
    [[nodiscard]] std::size_t line() const { return line_; }

    void skipBlanks() {
        while (pos_ < text_.size() && text_[pos_] == ' ') ++pos_;
    }

    bool match(std::string_view s) {
        if (text_.substr(pos_, s.size()) != s) return false;
        pos_ += s.size();
        return true;
    }

    std::int64_t integer(const char* what) {
        skipBlanks();
        const char* first = text_.data() + pos_;
        const char* last = text_.data() + text_.size();
        std::int64_t v = 0;
        auto [ptr, ec] = std::from_chars(first, last, v);
        if (ec != std::errc{} || ptr == first) fail(std::string(what) + " expected");
        pos_ += static_cast<std::size_t>(ptr - first);
        return v;
    }

    std::int64_t integer(const char* what, std::int64_t lo, std::int64_t hi) {
        auto v = integer(what);
        if (v < lo || v > hi) fail(std::string(what) + " out of range");
        return v;
    }

    std::uint32_t count(const char* what) {
        return static_cast<std::uint32_t>(integer(what, 0, std::numeric_limits<std::int32_t>::max()));
    }

    Atom atom() { return static_cast<Atom>(integer("atom", 1, std::numeric_limits<std::int32_t>::max())); }

    Lit lit() {
        auto v = integer("literal", -std::numeric_limits<std::int32_t>::max(), std::numeric_limits<std::int32_t>::max());
        if (v == 0) fail("literal expected");
        return static_cast<Lit>(v);
    }

    Weight weight() { return integer("weight"); }

    /// Length-prefixed string: "<n> <n bytes>".
    std::string string() {
        auto n = count("string length");
        if (!match(" ")) fail("string expected");
        if (pos_ + n > text_.size()) fail("string exceeds input");
        std::string s(text_.substr(pos_, n));
        if (s.find('\n') != std::string::npos) fail("newline in string");
        pos_ += n;
        return s;
    }

    void endLine() {
        skipBlanks();
        if (match("\r\n") || match("\n")) {
            ++line_;
            return;
        }
        if (atEnd()) return;
        fail("end of statement expected");
    }

    void skipLine() {
        while (pos_ < text_.size() && text_[pos_] != '\n') ++pos_;
        if (pos_ < text_.size()) ++pos_;
        ++line_;
    }

    void skipWhitespace() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) {
            if (text_[pos_] == '\n') ++line_;
            ++pos_;
        }
    }

private:
    std::string_view text_;
    std::size_t pos_ = 0;
    std::size_t line_ = 1;
};

template <class T>
void dedupeStable(std::vector<T>& v) {
    std::vector<T> out;
    out.reserve(v.size());
    for (const auto& x : v) {
        if (std::find(out.begin(), out.end(), x) == out.end()) out.push_back(x);
    }
    v.swap(out);
}

WeightBody normalizeWeightBody(Reader& in, Weight bound, const std::vector<WeightLit>& raw) {
    WeightBody body{bound, {}};
    for (auto wl : raw) {
        if (wl.weight < 0) {
            if (wl.weight == std::numeric_limits<Weight>::min() || __builtin_add_overflow(body.bound, -wl.weight, &body.bound)) {
                in.fail("weight out of range");
            }
            wl = WeightLit{-wl.lit, -wl.weight};
        }
        auto it = std::find_if(body.lits.begin(), body.lits.end(), [&](const WeightLit& x) { return x.lit == wl.lit; });
        if (it == body.lits.end()) {
            body.lits.push_back(wl);
        }
        else if (__builtin_add_overflow(it->weight, wl.weight, &it->weight)) {
            in.fail("weight out of range");
        }
    }
    return body;
}

void readRule(Reader& in, GroundProgram& out) {
    Rule r;
    auto ht = in.integer("head type", 0, 1);
    r.headKind = ht == 0 ? HeadKind::Disjunctive : HeadKind::Choice;
    for (auto n = in.count("head size"); n; --n) r.head.push_back(in.atom());
    dedupeStable(r.head);

    auto bt = in.integer("body type", 0, 1);
    if (bt == 0) {
        NormalBody nb;
        for (auto n = in.count("body size"); n; --n) {
            Lit l = in.lit();
            (isNegative(l) ? nb.neg : nb.pos).push_back(atomOf(l));
        }
        dedupeStable(nb.pos);
        dedupeStable(nb.neg);
        r.body = std::move(nb);
    }
    else {
        Weight bound = in.weight();
        std::vector<WeightLit> raw;
        for (auto n = in.count("body size"); n; --n) {
            Lit l = in.lit();
            raw.push_back({l, in.weight()});
        }
        r.body = normalizeWeightBody(in, bound, raw);
    }
    for (Atom a : r.positiveBody()) {
        if (std::find(r.head.begin(), r.head.end(), a) != r.head.end()) {
            throw TautologyError("line " + std::to_string(in.line()) + ": atom " + std::to_string(a) +
                                 " occurs in the head and the positive body of a rule");
        }
    }
    out.addRule(std::move(r));
}

void readMinimize(Reader& in, GroundProgram& out) {
    MinimizeStatement m;
    auto prio = in.integer("priority", std::numeric_limits<int>::min(), std::numeric_limits<int>::max());
    m.priority = static_cast<int>(prio);
    for (auto n = in.count("minimize size"); n; --n) {
        Lit l = in.lit();
        m.terms.push_back({l, in.weight()});
        out.addAtom(atomOf(l));
    }
    out.minimize.push_back(std::move(m));
}

void readOutput(Reader& in, GroundProgram& out) {
    OutputEntry e;
    e.name = in.string();
    for (auto n = in.count("condition size"); n; --n) {
        Lit l = in.lit();
        e.condition.push_back(l);
        out.addAtom(atomOf(l));
    }
    out.shows.push_back(std::move(e));
}

void readTheory(Reader& in, GroundProgram& out) {
    auto& th = out.theory;
    auto kind = in.integer("theory statement type");
    auto termId = [&](const char* what) { return static_cast<std::uint32_t>(in.integer(what, 0, std::numeric_limits<std::int32_t>::max())); };
    auto ids = [&](const char* what) {
        std::vector<std::uint32_t> v;
        for (auto n = in.count("size"); n; --n) v.push_back(termId(what));
        return v;
    };
    switch (kind) {
        case 0: {
            auto id = termId("term id");
            TheoryTerm t;
            t.kind = TheoryTerm::Kind::Number;
            t.number = in.integer("number");
            th.terms[id] = std::move(t);
            break;
        }
        case 1: {
            auto id = termId("term id");
            TheoryTerm t;
            t.kind = TheoryTerm::Kind::Symbol;
            t.symbol = in.string();
            th.terms[id] = std::move(t);
            break;
        }
        case 2: {
            auto id = termId("term id");
            TheoryTerm t;
            t.kind = TheoryTerm::Kind::Compound;
            t.functor = static_cast<std::int32_t>(in.integer("functor", -3, std::numeric_limits<std::int32_t>::max()));
            t.args = ids("term id");
            th.terms[id] = std::move(t);
            break;
        }
        case 4: {
            auto id = termId("element id");
            TheoryElement e;
            e.terms = ids("term id");
            for (auto n = in.count("condition size"); n; --n) {
                Lit l = in.lit();
                e.condition.push_back(l);
                out.addAtom(atomOf(l));
            }
            th.elements[id] = std::move(e);
            break;
        }
        case 5:
        case 6: {
            TheoryAtom a;
            a.atom = static_cast<Atom>(in.integer("atom", 0, std::numeric_limits<std::int32_t>::max()));
            a.name = termId("term id");
            a.elements = ids("element id");
            if (kind == 6) {
                TheoryGuard g;
                g.op = termId("term id");
                g.rhs = termId("term id");
                a.guard = g;
            }
            out.addAtom(a.atom);
            th.atoms.push_back(std::move(a));
            break;
        }
        default: in.fail("unknown theory statement type " + std::to_string(kind));
    }
}

GroundProgram parse(Reader& in) {
    GroundProgram out;
    if (!in.match("asp")) in.fail("ASPIF header expected");
    if (in.integer("major version") != 1) in.fail("unsupported major version");
    if (in.integer("minor version") != 0) in.fail("unsupported minor version");
    in.integer("revision");
    in.skipBlanks();
    if (in.match("incremental")) throw UnsupportedStatement("incremental ASPIF programs are not supported");
    in.endLine();

    for (;;) {
        if (in.atEnd()) in.fail("missing terminating 0");
        auto type = static_cast<Directive>(in.integer("statement type", 0, 10));
        switch (type) {
            case Directive::End:
                in.endLine();
                in.skipWhitespace();
                if (!in.atEnd()) throw UnsupportedStatement("line " + std::to_string(in.line()) + ": input continues after end of program (incremental ASPIF?)");
                return out;
            case Directive::Rule: readRule(in, out); break;
            case Directive::Minimize: readMinimize(in, out); break;
            case Directive::Output: readOutput(in, out); break;
            case Directive::Theory: readTheory(in, out); break;
            case Directive::Comment: in.skipLine(); continue;
            case Directive::Project:
            case Directive::External:
            case Directive::Assume:
            case Directive::Heuristic:
            case Directive::Edge: {
                static constexpr const char* names[] = {"", "", "", "projection", "", "external", "assumption", "heuristic", "edge"};
                throw UnsupportedStatement("line " + std::to_string(in.line()) + ": " + names[static_cast<int>(type)] +
                                           " statements are not supported");
            }
        }
        in.endLine();
    }
}

void writeLits(std::ostream& os, const std::vector<Lit>& lits) {
    os << ' ' << lits.size();
    for (Lit l : lits) os << ' ' << l;
}

void writeIds(std::ostream& os, const std::vector<std::uint32_t>& v) {
    os << ' ' << v.size();
    for (auto x : v) os << ' ' << x;
}

} // namespace

GroundProgram parseAspif(std::string_view text) {
    Reader in(text);
    return parse(in);
}

GroundProgram parseAspif(std::istream& in) {
    std::string text{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
    return parseAspif(std::string_view(text));
}

void writeAspif(const GroundProgram& p, std::ostream& os) {
    os << "asp 1 0 0\n";
    for (const auto& r : p.rules) {
        os << "1 " << (r.isChoice() ? 1 : 0) << ' ' << r.head.size();
        for (Atom a : r.head) os << ' ' << a;
        if (const auto* nb = std::get_if<NormalBody>(&r.body)) {
            os << " 0 " << nb->pos.size() + nb->neg.size();
            for (Atom a : nb->pos) os << ' ' << a;
            for (Atom a : nb->neg) os << ' ' << negLit(a);
        }
        else {
            const auto& wb = std::get<WeightBody>(r.body);
            os << " 1 " << wb.bound << ' ' << wb.lits.size();
            for (const auto& wl : wb.lits) os << ' ' << wl.lit << ' ' << wl.weight;
        }
        os << '\n';
    }
    for (const auto& m : p.minimize) {
        os << "2 " << m.priority << ' ' << m.terms.size();
        for (const auto& t : m.terms) os << ' ' << t.lit << ' ' << t.weight;
        os << '\n';
    }
    for (const auto& [id, t] : p.theory.terms) {
        switch (t.kind) {
            case TheoryTerm::Kind::Number: os << "9 0 " << id << ' ' << t.number << '\n'; break;
            case TheoryTerm::Kind::Symbol: os << "9 1 " << id << ' ' << t.symbol.size() << ' ' << t.symbol << '\n'; break;
            case TheoryTerm::Kind::Compound:
                os << "9 2 " << id << ' ' << t.functor;
                writeIds(os, t.args);
                os << '\n';
                break;
        }
    }
    for (const auto& [id, e] : p.theory.elements) {
        os << "9 4 " << id;
        writeIds(os, e.terms);
        writeLits(os, e.condition);
        os << '\n';
    }
    for (const auto& a : p.theory.atoms) {
        os << (a.guard ? "9 6 " : "9 5 ") << a.atom << ' ' << a.name;
        writeIds(os, a.elements);
        if (a.guard) os << ' ' << a.guard->op << ' ' << a.guard->rhs;
        os << '\n';
    }
    for (const auto& s : p.shows) {
        os << "4 " << s.name.size() << ' ' << s.name;
        writeLits(os, s.condition);
        os << '\n';
    }
    os << "0\n";
}

} // namespace casp2fzn
