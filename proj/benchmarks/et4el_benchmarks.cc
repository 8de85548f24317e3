// Copyright 2026 The ET4EL Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include <benchmark/benchmark.h>

#include <string>
#include <vector>

#include "et4el/category_system.h"
#include "et4el/features.h"
#include "et4el/linker.h"
#include "et4el/prior_store.h"
#include "et4el/random.h"
#include "et4el/typing_model.h"

namespace et4el {
namespace {

MentionExample SampleMention(size_t context) {
  MentionExample e;
  e.mention = "Apache Ant";
  for (size_t i = 0; i < context; ++i) e.tokens.push_back("w" + std::to_string(i));
  e.span = {context / 2, context / 2 + 2};
  e.tokens[e.span.start] = "Apache";
  e.tokens[e.span.start + 1] = "Ant";
  return e;
}

CategoryVocab Vocab(size_t n) {
  std::vector<std::string> entries;
  for (size_t i = 0; i < n; ++i) entries.push_back("c" + std::to_string(i));
  return CategoryVocab(std::move(entries));
}

void BM_Featurize(benchmark::State &state) {
  MentionExample e = SampleMention(static_cast<size_t>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(Featurize(e, 1u << 20, 7));
  }
}
BENCHMARK(BM_Featurize)->Arg(20)->Arg(70);

void BM_Predict(benchmark::State &state) {
  const size_t categories = static_cast<size_t>(state.range(0));
  TypingModel model(Vocab(categories), 1u << 14, 7);
  Rng rng(1);
  for (double &w : model.MutableWeights()) w = rng.UniformDouble() - 0.5;
  FeatureVector x = model.Featurize(SampleMention(40));
  for (auto _ : state) {
    benchmark::DoNotOptimize(model.Predict(x));
  }
}
BENCHMARK(BM_Predict)->Arg(100)->Arg(1000);

void BM_ScoreCandidates(benchmark::State &state) {
  const size_t candidates = static_cast<size_t>(state.range(0));
  Rng rng(2);
  TypePosterior t;
  for (int i = 0; i < 1000; ++i) t.probs.push_back(rng.UniformDouble());
  EntityCategoryIndex index;
  CandidateSet set{"m", {}};
  for (size_t k = 0; k < candidates; ++k) {
    std::vector<uint32_t> ids;
    for (int j = 0; j < 20; ++j) {
      ids.push_back(static_cast<uint32_t>(rng.UniformIndex(1000)));
    }
    index.Set("e" + std::to_string(k), ids);
    set.candidates.push_back({"e" + std::to_string(k), 1.0 / candidates});
  }
  for (auto _ : state) {
    benchmark::DoNotOptimize(Link(t, set, index, nullptr));
  }
}
BENCHMARK(BM_ScoreCandidates)->Arg(5)->Arg(30);

void BM_ExpandCategory(benchmark::State &state) {
  auto preps = PrepositionList::Default();
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        ExpandCategory("Populated places established in 1624", preps));
  }
}
BENCHMARK(BM_ExpandCategory);

void BM_Accumulate(benchmark::State &state) {
  Rng rng(3);
  std::vector<AnchorLink> links;
  for (int i = 0; i < 100000; ++i) {
    links.emplace_back("m" + std::to_string(rng.UniformIndex(2000)),
                       "e" + std::to_string(rng.UniformIndex(50)));
  }
  const int workers = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(AccumulateParallel(links, workers));
  }
  state.SetItemsProcessed(state.iterations() * links.size());
}
BENCHMARK(BM_Accumulate)->Arg(1)->Arg(4);

}  // namespace
}  // namespace et4el

BENCHMARK_MAIN();
