/* bench.cpp -- microbenchmarks for membership, pair relations, word problem. */

#include <benchmark/benchmark.h>

#include <random>

#include "ppd/registry.hpp"

using namespace ppd;

namespace {

Word random_word(const Alphabet& a, size_t len, std::mt19937& rng) {
    std::uniform_int_distribution<size_t> pick(0, a.size() - 1);
    Word w;
    for (size_t i = 0; i < len; ++i) w.push_back(a.at(pick(rng)));
    return w;
}

void BM_AibiciMember(benchmark::State& state) {
    PplLanguage L = aibici_language();
    Word w;
    for (int k = 0; k < 3; ++k)
        for (long i = 0; i < state.range(0); ++i)
            w.push_back(L.alphabet.at(k));
    for (auto _ : state) benchmark::DoNotOptimize(member(L, w));
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_AibiciMember)->RangeMultiplier(4)->Range(4, 256)->Complexity();

void BM_RelationMember(benchmark::State& state) {
    PStructure s = shipped_structure("z");
    const AtpplRelation& rel = s.multipliers.at(Symbol::intern("x"));
    Symbol x = Symbol::intern("x");
    Word u, v;
    for (long i = 0; i < state.range(0); ++i) u.push_back(x);
    v = u;
    v.push_back(x);
    for (auto _ : state) benchmark::DoNotOptimize(relation_member(rel, u, v));
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_RelationMember)->RangeMultiplier(4)->Range(4, 256)->Complexity();

void BM_WordProblem(benchmark::State& state, const char* id) {
    PStructure s = shipped_structure(id);
    std::mt19937 rng(17);
    std::vector<Word> words;
    for (int i = 0; i < 64; ++i)
        words.push_back(random_word(s.alphabet, 6, rng));
    size_t i = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(word_problem(s, words[i]));
        i = (i + 1) % words.size();
    }
}
BENCHMARK_CAPTURE(BM_WordProblem, h3, "h3");
BENCHMARK_CAPTURE(BM_WordProblem, u4, "u4");
BENCHMARK_CAPTURE(BM_WordProblem, lamplighter, "lamplighter");

void BM_CheckStructure(benchmark::State& state, const char* id, int radius) {
    PStructure s = shipped_structure(id);
    for (auto _ : state)
        benchmark::DoNotOptimize(check_structure(s, radius).ok());
}
BENCHMARK_CAPTURE(BM_CheckStructure, z2_r3, "z2", 3);
BENCHMARK_CAPTURE(BM_CheckStructure, lamplighter_r2, "lamplighter", 2);

void BM_Ball(benchmark::State& state, const char* id, int radius) {
    PStructure s = shipped_structure(id);
    for (auto _ : state)
        benchmark::DoNotOptimize(ball(*s.oracle, radius).elements.size());
}
BENCHMARK_CAPTURE(BM_Ball, f2_r6, "f2", 6);
BENCHMARK_CAPTURE(BM_Ball, h3_r4, "h3", 4);

}  // namespace

BENCHMARK_MAIN();
