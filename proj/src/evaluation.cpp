// Copyright 2026 The ngs Authors
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

#include "ngs/evaluation.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <ostream>
#include <thread>

#include <fmt/format.h>
#include <spdlog/spdlog.h>

#include <json.hpp>

#include "ngs/count_table.hpp"
#include "ngs/error.hpp"

namespace ngs {
namespace {

std::string describe(const Vocabulary& vocab, std::span<const WordId> history, WordId word) {
  std::string out;
  for (WordId id : history) out += vocab.token(id) + " ";
  return out + vocab.token(word);
}

FoldResult run_fold(const TokenCorpus& corpus, const FoldAssignment& folds, int fold,
                    const CrossValOptions& options) {
  TokenCorpus train;
  TokenCorpus test;
  for (std::size_t i = 0; i < corpus.sentences.size(); ++i) {
    (folds.fold_of[i] == fold ? test : train).sentences.push_back(corpus.sentences[i]);
  }
  auto vocab = std::make_shared<const Vocabulary>(
      Vocabulary::build(train, options.min_count, options.order));
  std::vector<Sentence> padded;
  for (const Sentence& s : apply_vocabulary(train, *vocab).sentences) {
    padded.push_back(pad_sentence(s, options.order, *vocab));
  }
  const CountTable table = count_ngrams(padded, options.order, *vocab);
  ModelOptions model_options = options.model;
  model_options.support_floor = true;
  const SmoothedModel model = build_model(options.method, table, vocab, model_options);
  const EvalReport report = evaluate(model, apply_vocabulary(test, *vocab));

  FoldResult r;
  r.fold = fold;
  r.train_sentences = train.sentences.size();
  r.test_sentences = test.sentences.size();
  r.vocab_size = vocab->size();
  r.token_count = report.token_count;
  r.total_log2prob = report.total_log2prob;
  r.entropy = report.entropy;
  r.perplexity = report.perplexity;
  spdlog::info("fold {}: {} tokens, entropy {:.4f}, perplexity {:.2f}", fold, r.token_count,
               r.entropy, r.perplexity);
  return r;
}

}  // namespace

SentenceScore sentence_logprob(const SmoothedModel& model, std::span<const WordId> padded) {
  const Vocabulary& vocab = model.vocab();
  const std::size_t context = static_cast<std::size_t>(model.order() - 1);
  if (padded.size() <= context) {
    throw ArgumentError("sentence is shorter than the model order");
  }
  SentenceScore score;
  for (std::size_t i = context; i < padded.size(); ++i) {
    const WordId word = padded[i];
    if (vocab.is_bos(word)) continue;
    const auto history = padded.subspan(i - context, context);
    const double p = model.prob(history, word);
    if (!(p > 0.0) || !std::isfinite(p)) {
      throw EvaluationError(fmt::format("zero probability for n-gram '{}'",
                                        describe(vocab, history, word)));
    }
    score.log2prob += std::log2(p);
    ++score.predicted;
  }
  return score;
}

EvalReport EvalReport::from_totals(std::size_t tokens, double log2prob) {
  if (tokens == 0) throw ArgumentError("no predicted tokens to evaluate");
  EvalReport r;
  r.token_count = tokens;
  r.total_log2prob = log2prob;
  r.entropy = -log2prob / static_cast<double>(tokens);
  r.perplexity = std::exp2(r.entropy);
  return r;
}

void EvalReport::write_tsv(std::ostream& out) const {
  out << "fold\ttokens\tentropy\tperplexity\n";
  for (const auto& f : folds) {
    out << fmt::format("{}\t{}\t{:.6f}\t{:.6f}\n", f.fold, f.token_count, f.entropy,
                       f.perplexity);
  }
  out << fmt::format("all\t{}\t{:.6f}\t{:.6f}\n", token_count, entropy, perplexity);
}

std::string EvalReport::to_json() const {
  nlohmann::ordered_json j;
  j["tokens"] = token_count;
  j["log2prob"] = total_log2prob;
  j["entropy"] = entropy;
  j["perplexity"] = perplexity;
  j["folds"] = nlohmann::ordered_json::array();
  for (const auto& f : folds) {
    j["folds"].push_back({{"fold", f.fold},
                          {"train_sentences", f.train_sentences},
                          {"test_sentences", f.test_sentences},
                          {"vocab_size", f.vocab_size},
                          {"tokens", f.token_count},
                          {"log2prob", f.total_log2prob},
                          {"entropy", f.entropy},
                          {"perplexity", f.perplexity}});
  }
  return j.dump();
}

EvalReport evaluate(const SmoothedModel& model, const SentenceCorpus& test) {
  if (test.sentences.empty()) throw ArgumentError("empty test corpus");
  std::size_t tokens = 0;
  double log2prob = 0.0;
  for (const Sentence& s : test.sentences) {
    const SentenceScore score = sentence_logprob(model, pad_sentence(s, model.order(), model.vocab()));
    tokens += score.predicted;
    log2prob += score.log2prob;
  }
  return EvalReport::from_totals(tokens, log2prob);
}

EvalReport cross_validate(const TokenCorpus& corpus, const CrossValOptions& options) {
  if (corpus.sentences.empty()) throw ArgumentError("empty corpus");
  const FoldAssignment folds =
      split_folds(corpus.sentences.size(), options.folds, options.seed, options.shuffle);
  unsigned jobs = options.jobs == 0 ? std::max(1u, std::thread::hardware_concurrency())
                                    : options.jobs;
  jobs = std::min<unsigned>(jobs, static_cast<unsigned>(options.folds));

  std::vector<FoldResult> results(options.folds);
  std::vector<std::exception_ptr> errors(options.folds);
  std::atomic<int> next{0};
  auto worker = [&] {
    for (int f = next++; f < options.folds; f = next++) {
      try {
        results[f] = run_fold(corpus, folds, f, options);
      } catch (...) {
        errors[f] = std::current_exception();
      }
    }
  };
  {
    std::vector<std::jthread> pool;
    for (unsigned i = 1; i < jobs; ++i) pool.emplace_back(worker);
    worker();
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }

  std::size_t tokens = 0;
  double log2prob = 0.0;
  for (const auto& r : results) {
    tokens += r.token_count;
    log2prob += r.total_log2prob;
  }
  EvalReport report = EvalReport::from_totals(tokens, log2prob);
  report.folds = std::move(results);
  return report;
}

}  // namespace ngs
