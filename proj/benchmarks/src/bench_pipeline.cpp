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
#include <casp2fzn/analysis.hpp>
#include <casp2fzn/aspif.hpp>
#include <casp2fzn/flatzinc.hpp>
#include <casp2fzn/linearize.hpp>
#include <casp2fzn/oracle.hpp>
#include <casp2fzn/translate.hpp>

#include <benchmark/benchmark.h>

#include <sstream>

using namespace casp2fzn;

namespace {

/// Reachability in a ring of n nodes with optional edges:
///   {e(i)}.  r(1).  r(i+1) <- r(i), e(i).  r(1) <- r(n), e(n).  <- not r(n).
/// plus a weighted rule over all edges. Atoms: e(i) = i, r(i) = n + i.
GroundProgram ring(Atom n) {
    GroundProgram p;
    auto e = [](Atom i) { return i; };
    auto r = [n](Atom i) { return n + i; };
    std::vector<WeightLit> edges;
    for (Atom i = 1; i <= n; ++i) {
        p.addRule({HeadKind::Choice, {e(i)}, NormalBody{}});
        edges.push_back({posLit(e(i)), 1});
    }
    p.addRule({HeadKind::Disjunctive, {r(1)}, NormalBody{}});
    for (Atom i = 1; i < n; ++i) p.addRule({HeadKind::Disjunctive, {r(i + 1)}, NormalBody{{r(i), e(i)}, {}}});
    p.addRule({HeadKind::Disjunctive, {r(1)}, NormalBody{{r(n), e(n)}, {}}});
    p.addRule({HeadKind::Disjunctive, {}, NormalBody{{}, {r(n)}}});
    p.addRule({HeadKind::Disjunctive, {}, WeightBody{static_cast<Weight>(n), edges}});
    p.minimize.push_back({0, edges});
    for (Atom i = 1; i <= n; ++i) p.shows.push_back({"r(" + std::to_string(i) + ")", {posLit(r(i))}});
    return p;
}

void BM_ParseAspif(benchmark::State& state) {
    std::ostringstream os;
    writeAspif(ring(static_cast<Atom>(state.range(0))), os);
    std::string text = os.str();
    for (auto _ : state) benchmark::DoNotOptimize(parseAspif(text));
    state.SetBytesProcessed(static_cast<std::int64_t>(state.iterations() * text.size()));
}
BENCHMARK(BM_ParseAspif)->RangeMultiplier(4)->Range(16, 4096);

void BM_Translate(benchmark::State& state) {
    auto p = ring(static_cast<Atom>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(translate(p, {}));
}
BENCHMARK(BM_Translate)->RangeMultiplier(4)->Range(16, 4096);

void BM_TranslateNonStrict(benchmark::State& state) {
    auto p = ring(static_cast<Atom>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(translate(p, {}, {false}));
}
BENCHMARK(BM_TranslateNonStrict)->RangeMultiplier(4)->Range(16, 4096);

void BM_EmitFzn(benchmark::State& state) {
    auto t = translate(ring(static_cast<Atom>(state.range(0))), {});
    for (auto _ : state) benchmark::DoNotOptimize(emitFzn(t.model));
}
BENCHMARK(BM_EmitFzn)->RangeMultiplier(4)->Range(16, 4096);

void BM_Linearize(benchmark::State& state) {
    auto t = translate(ring(static_cast<Atom>(state.range(0))), {});
    for (auto _ : state) benchmark::DoNotOptimize(linearize(t.model));
}
BENCHMARK(BM_Linearize)->RangeMultiplier(4)->Range(16, 4096);

void BM_OracleAnswerSets(benchmark::State& state) {
    auto p = ring(static_cast<Atom>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(enumerateAspAnswerSets(p));
}
BENCHMARK(BM_OracleAnswerSets)->DenseRange(2, 8, 2);

void BM_EnumerateModels(benchmark::State& state) {
    auto t = translate(ring(static_cast<Atom>(state.range(0))), {});
    for (auto _ : state) benchmark::DoNotOptimize(enumerateIrModels(t.model));
}
BENCHMARK(BM_EnumerateModels)->DenseRange(2, 8, 2);

} // namespace

BENCHMARK_MAIN();
