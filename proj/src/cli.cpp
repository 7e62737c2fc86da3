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

#include "ngs/cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <memory>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <spdlog/sinks/stdout_sinks.h>
#include <spdlog/spdlog.h>

#include "ngs/audit.hpp"
#include "ngs/corpus.hpp"
#include "ngs/count_table.hpp"
#include "ngs/error.hpp"
#include "ngs/evaluation.hpp"
#include "ngs/model_io.hpp"
#include "ngs/smoothing.hpp"

namespace ngs::cli {
namespace {

struct RunConfig {
  std::string corpus;
  std::string counts;
  std::string model;
  std::string test;
  std::string out;
  std::optional<int> order;
  std::string method = "mdknspomd";
  int folds = 10;
  std::uint64_t seed = 0;
  bool shuffle = false;
  int min_count = 1;
  double delta = 1.0;
  std::string discounts;
  std::string lower_discounts;
  double tolerance = kDefaultMarginalTolerance;
  bool table = false;
  int decimals = 2;
  unsigned jobs = 0;
};

std::ifstream open_input(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError(fmt::format("cannot open '{}'", path));
  return in;
}

TokenCorpus read_corpus(const std::string& path) {
  auto in = open_input(path);
  return tokenize_and_normalize(in);
}

// Writes through a buffer so a failing command leaves no partial output.
class Output {
 public:
  Output(const std::string& path, std::ostream& fallback) : path_(path), fallback_(fallback) {}
  std::ostream& stream() { return buffer_; }
  void commit() {
    if (path_.empty()) {
      fallback_ << buffer_.str();
      return;
    }
    std::ofstream file(path_, std::ios::binary);
    if (!file) throw DataError(fmt::format("cannot write '{}'", path_));
    file << buffer_.str();
    if (!file) throw DataError(fmt::format("write to '{}' failed", path_));
  }

 private:
  std::string path_;
  std::ostream& fallback_;
  std::ostringstream buffer_;
};

int checked_order(const RunConfig& cfg, int fallback) {
  const int order = cfg.order.value_or(fallback);
  if (order < 1 || order > kMaxOrder) throw ArgumentError("--order must be 1, 2 or 3");
  return order;
}

ModelOptions model_options(const RunConfig& cfg, bool support_floor) {
  ModelOptions o;
  if (!cfg.discounts.empty()) o.discounts = DiscountSet::parse(cfg.discounts);
  if (!cfg.lower_discounts.empty()) o.lower_discounts = DiscountSet::parse(cfg.lower_discounts);
  if (!(cfg.delta > 0.0)) throw ArgumentError("--delta must be positive");
  o.delta = cfg.delta;
  o.support_floor = support_floor;
  return o;
}

struct TrainingData {
  VocabPtr vocab;
  CountTable table;
};

// Counts from --counts (order read from the file) or from --corpus.
TrainingData training_data(const RunConfig& cfg, int default_order) {
  if (cfg.corpus.empty() == cfg.counts.empty()) {
    throw ArgumentError("exactly one of --corpus and --counts is required");
  }
  if (!cfg.counts.empty()) {
    auto in = open_input(cfg.counts);
    LoadedCounts loaded = read_count_tsv(in);
    if (cfg.order && *cfg.order != loaded.table.order()) {
      throw ArgumentError(fmt::format("--order {} but '{}' holds order-{} counts", *cfg.order,
                                      cfg.counts, loaded.table.order()));
    }
    return {std::make_shared<const Vocabulary>(std::move(loaded.vocab)), std::move(loaded.table)};
  }
  const int order = checked_order(cfg, default_order);
  const TokenCorpus corpus = read_corpus(cfg.corpus);
  auto vocab = std::make_shared<const Vocabulary>(Vocabulary::build(corpus, cfg.min_count, order));
  std::vector<Sentence> padded;
  for (const Sentence& s : apply_vocabulary(corpus, *vocab).sentences) {
    padded.push_back(pad_sentence(s, order, *vocab));
  }
  CountTable table = count_ngrams(padded, order, *vocab);
  spdlog::info("{} sentences, {} tokens, vocabulary {}, {} distinct {}-grams",
               corpus.sentences.size(), corpus.token_total(), vocab->size(), table.size(), order);
  return {std::move(vocab), std::move(table)};
}

SmoothedModel train(const RunConfig& cfg, const TrainingData& data, bool support_floor) {
  SmoothedModel model = build_model(parse_method(cfg.method), data.table, data.vocab,
                                    model_options(cfg, support_floor));
  for (const ModelLevel& level : model.levels()) {
    if (level.discounts) {
      spdlog::info("history length {}: discounts {}, floored {}", level.history_length,
                   level.discounts->to_string(), level.floored);
    }
  }
  return model;
}

void cmd_vocab(const RunConfig& cfg, std::ostream& out) {
  if (cfg.corpus.empty()) throw ArgumentError("vocab needs --corpus");
  const Vocabulary vocab =
      Vocabulary::build(read_corpus(cfg.corpus), cfg.min_count, checked_order(cfg, 2));
  Output o(cfg.out, out);
  vocab.write(o.stream());
  o.commit();
}

void cmd_count(const RunConfig& cfg, std::ostream& out) {
  if (cfg.corpus.empty()) throw ArgumentError("count needs --corpus");
  const TrainingData data = training_data(cfg, 2);
  Output o(cfg.out, out);
  data.table.write_tsv(o.stream(), *data.vocab);
  o.commit();
}

void cmd_train(const RunConfig& cfg, std::ostream& out) {
  const TrainingData data = training_data(cfg, 2);
  const SmoothedModel model = train(cfg, data, true);
  Output o(cfg.out, out);
  write_model(o.stream(), model);
  o.commit();
}

void cmd_score(const RunConfig& cfg, std::ostream& out) {
  if (cfg.test.empty()) throw ArgumentError("score needs --test");
  std::optional<SmoothedModel> model;
  if (!cfg.model.empty()) {
    if (!cfg.corpus.empty() || !cfg.counts.empty()) {
      throw ArgumentError("--model excludes --corpus and --counts");
    }
    auto in = open_input(cfg.model);
    model.emplace(read_model(in));
  } else {
    model.emplace(train(cfg, training_data(cfg, 2), true));
  }
  const SentenceCorpus test = apply_vocabulary(read_corpus(cfg.test), model->vocab());
  const EvalReport report = evaluate(*model, test);
  Output o(cfg.out, out);
  report.write_tsv(o.stream());
  o.commit();
  out << report.to_json() << '\n';
}

void cmd_crossval(const RunConfig& cfg, std::ostream& out) {
  if (cfg.corpus.empty()) throw ArgumentError("crossval needs --corpus");
  CrossValOptions options;
  options.folds = cfg.folds;
  options.order = checked_order(cfg, 2);
  options.method = parse_method(cfg.method);
  options.seed = cfg.seed;
  options.shuffle = cfg.shuffle;
  options.min_count = cfg.min_count;
  options.model = model_options(cfg, true);
  options.jobs = cfg.jobs;
  if (options.folds < 2) throw ArgumentError("--folds must be at least 2");
  const EvalReport report = cross_validate(read_corpus(cfg.corpus), options);
  Output o(cfg.out, out);
  report.write_tsv(o.stream());
  o.commit();
  out << report.to_json() << '\n';
}

void cmd_audit(const RunConfig& cfg, std::ostream& out) {
  const TrainingData data = training_data(cfg, 2);
  const SmoothedModel model = train(cfg, data, false);
  const MarginalReport report = highest_level_marginals(model, data.table, cfg.tolerance);
  Output o(cfg.out, out);
  if (cfg.table) {
    o.stream() << render_table(smoothed_joint_counts(model, data.table), cfg.decimals) << '\n';
  }
  report.write_tsv(o.stream());
  o.commit();
  spdlog::info("max deviation {} at '{}'", report.max_abs_deviation, report.worst_token);
}

void cmd_render(const RunConfig& cfg, std::ostream& out, bool method_given) {
  const TrainingData data = training_data(cfg, 2);
  JointCountMatrix matrix = method_given
                                ? smoothed_joint_counts(train(cfg, data, false), data.table)
                                : joint_counts(data.table, *data.vocab);
  Output o(cfg.out, out);
  o.stream() << render_table(matrix, cfg.decimals);
  o.commit();
}

}  // namespace

void configure_logging() {
  auto logger = spdlog::stderr_logger_mt("ngs");
  logger->set_pattern("[%l] %v");
  const char* env = std::getenv("NGS_LOG");
  const std::string level = env ? env : "";
  if (level == "quiet") {
    logger->set_level(spdlog::level::off);
  } else if (level == "info") {
    logger->set_level(spdlog::level::info);
  } else if (level == "debug") {
    logger->set_level(spdlog::level::debug);
  } else {
    logger->set_level(spdlog::level::warn);
    if (!level.empty()) logger->warn("ignoring NGS_LOG={} (expected quiet, info or debug)", level);
  }
  spdlog::set_default_logger(logger);
}

int run(std::span<const std::string> args, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"n-gram smoothing toolkit", "ngs"};
  app.require_subcommand(1);

  auto add_order = [&](CLI::App* c) { c->add_option("--order", cfg.order, "n-gram order (1-3)"); };
  auto add_model_flags = [&](CLI::App* c) {
    c->add_option("--method", cfg.method, "smoothing method")
        ->check(CLI::IsMember({"addk", "gt", "abs", "kns", "mkns", "mdknspomd"}));
    c->add_option("--delta", cfg.delta, "add-k constant");
    c->add_option("--discounts", cfg.discounts, "highest-level discounts: D or D1,D2,D3");
    c->add_option("--lower-discounts", cfg.lower_discounts, "bigram-level discounts of a trigram");
  };
  auto add_inputs = [&](CLI::App* c) {
    c->add_option("--corpus", cfg.corpus, "training text, one sentence per line");
    c->add_option("--counts", cfg.counts, "count TSV");
    c->add_option("--min-count", cfg.min_count, "vocabulary frequency threshold");
  };

  auto* vocab = app.add_subcommand("vocab", "build a vocabulary");
  vocab->add_option("--corpus", cfg.corpus)->required();
  vocab->add_option("--min-count", cfg.min_count);
  add_order(vocab);

  auto* count = app.add_subcommand("count", "count n-grams");
  count->add_option("--corpus", cfg.corpus)->required();
  count->add_option("--min-count", cfg.min_count);
  add_order(count);

  auto* train_cmd = app.add_subcommand("train", "estimate and dump a model");
  add_inputs(train_cmd);
  add_order(train_cmd);
  add_model_flags(train_cmd);

  auto* score = app.add_subcommand("score", "entropy and perplexity of held-out text");
  add_inputs(score);
  add_order(score);
  add_model_flags(score);
  score->add_option("--model", cfg.model, "model dump written by train");
  score->add_option("--test", cfg.test, "held-out text")->required();

  auto* crossval = app.add_subcommand("crossval", "k-fold cross-validation");
  crossval->add_option("--corpus", cfg.corpus)->required();
  crossval->add_option("--min-count", cfg.min_count);
  add_order(crossval);
  add_model_flags(crossval);
  crossval->add_option("--folds", cfg.folds, "number of folds");
  crossval->add_option("--seed", cfg.seed, "shuffle seed");
  crossval->add_flag("--shuffle", cfg.shuffle, "permute sentences before folding");
  crossval->add_option("--jobs", cfg.jobs, "worker threads (0: all processors)");

  auto* audit = app.add_subcommand("audit", "check marginal preservation");
  add_inputs(audit);
  add_order(audit);
  add_model_flags(audit);
  audit->add_option("--tolerance", cfg.tolerance, "allowed deviation per unit of count");
  audit->add_flag("--table", cfg.table, "also render the pseudo-count matrix");
  audit->add_option("--decimals", cfg.decimals);

  auto* render = app.add_subcommand("render", "render a (pseudo-)count matrix");
  add_inputs(render);
  add_order(render);
  add_model_flags(render);
  render->add_option("--decimals", cfg.decimals);

  for (auto* c : app.get_subcommands({})) c->add_option("--out", cfg.out, "output path");

  try {
    std::vector<std::string> argv(args.begin(), args.end());
    std::reverse(argv.begin(), argv.end());
    app.parse(argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n' << app.help();
    return 1;
  }

  try {
    if (*vocab) cmd_vocab(cfg, out);
    if (*count) cmd_count(cfg, out);
    if (*train_cmd) cmd_train(cfg, out);
    if (*score) cmd_score(cfg, out);
    if (*crossval) cmd_crossval(cfg, out);
    if (*audit) cmd_audit(cfg, out);
    if (*render) cmd_render(cfg, out, render->count("--method") > 0);
    return 0;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
  } catch (const std::logic_error& e) {
    err << "error: internal: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
  }
  return 1;
}

}  // namespace ngs::cli
