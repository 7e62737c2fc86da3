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

// Acceptance suite: one PASS/FAIL line per criterion.
// Usage: ngs_acceptance <path to the >= 1M-token cross-validation corpus>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "ngs/audit.hpp"
#include "ngs/cli.hpp"
#include "ngs/evaluation.hpp"
#include "ngs/smoothing.hpp"
#include "support/fixtures.hpp"
#include "support/table1.hpp"

namespace ngs {
namespace {

namespace fs = std::filesystem;

struct Outcome {
  bool pass = false;
  std::string detail;
};

struct Sample {
  VocabPtr vocab;
  CountTable table;
};

Sample load_sample() {
  std::ifstream in(testing::data_path("table1.tsv"));
  LoadedCounts loaded = read_count_tsv(in);
  return {std::make_shared<const Vocabulary>(std::move(loaded.vocab)), std::move(loaded.table)};
}

// Random small corpus: vocabulary <= 30 words, <= 500 sentences.
testing::Trained small_corpus(std::uint64_t seed, int order) {
  std::mt19937_64 rng(seed * 7919 + 1);
  testing::RandomCorpusSpec spec;
  spec.vocab_size = std::uniform_int_distribution<int>(8, 30)(rng);
  spec.sentences = std::uniform_int_distribution<int>(150, 500)(rng);
  spec.max_length = std::uniform_int_distribution<int>(4, 12)(rng);
  spec.skew = std::uniform_real_distribution<double>(0.6, 1.4)(rng);
  return testing::count_corpus(testing::random_corpus(spec, seed), order);
}

double max_rel_dev(const MarginalReport& r) {
  double worst = 0.0;
  for (const auto& e : r.entries) {
    worst = std::max(worst, e.abs_dev / std::max(1.0, e.original));
  }
  return worst;
}

double row_sum(const SmoothedModel& m, const NGram& h) {
  double s = 0.0;
  for (WordId w : m.vocab().predictable()) s += m.prob(h, w);
  return s;
}

Outcome criterion1() {
  const Sample s = load_sample();
  struct Case {
    Method method;
    const testing::SampleMatrix* published;
  };
  double worst = 0.0;
  std::string where;
  std::map<Method, JointCountMatrix> built;
  for (const Case& c : {Case{Method::kKns, &testing::kPublishedKns},
                        Case{Method::kMkns, &testing::kPublishedMkns},
                        Case{Method::kMdknspomd, &testing::kPublishedMdknspomd}}) {
    const JointCountMatrix m =
        smoothed_joint_counts(build_model(c.method, s.table, s.vocab), s.table);
    if (m.size() != 7) return {false, "unexpected matrix labels"};
    for (std::size_t i = 0; i < 7; ++i) {
      for (std::size_t j = 0; j < 7; ++j) {
        const double dev = std::abs(m.cells[i][j] - (*c.published)[i][j]);
        if (dev > worst) {
          worst = dev;
          where = fmt::format("{} ({},{})", method_name(c.method), m.labels[i], m.labels[j]);
        }
      }
    }
    built.emplace(c.method, m);
  }
  double sums = 0.0;
  for (std::size_t j = 0; j < 7; ++j) {
    sums = std::max(sums, std::abs(built.at(Method::kMkns).column_totals[j] -
                                   testing::kPublishedMknsColumnSums[j]));
    const auto& mdk = built.at(Method::kMdknspomd);
    sums = std::max(sums, std::abs(mdk.column_totals[j] -
                                   static_cast<double>(s.table.final_total(mdk.ids[j]))));
  }
  const std::string kns = render_table(built.at(Method::kKns), 2);
  const bool anchor = kns.find(" 0.84 ") != std::string::npos;
  return {worst <= 0.005 && sums <= 0.005 && anchor,
          fmt::format("147 cells, max deviation {:.4f} at {}; column sums within {:.4f}", worst,
                      where, sums)};
}

Outcome criterion2() {
  const int corpora = 25;
  int mkns_violations = 0;
  double worst_preserving = 0.0;
  double weakest_violation = 1e300;
  for (int seed = 1; seed <= corpora; ++seed) {
    const testing::Trained t = small_corpus(seed, 2);
    for (Method method : {Method::kKns, Method::kMdknspomd}) {
      const MarginalReport r =
          highest_level_marginals(build_model(method, t.table, t.vocab), t.table);
      for (const auto& e : r.entries) {
        const double rel = e.original > 0 ? e.abs_dev / e.original : e.abs_dev;
        worst_preserving = std::max(worst_preserving, rel);
      }
    }
    const MarginalReport mkns =
        highest_level_marginals(build_mkns(t.table, t.vocab), t.table);
    double rel = 0.0;
    for (const auto& e : mkns.entries) {
      if (e.original > 0) rel = std::max(rel, e.abs_dev / e.original);
    }
    weakest_violation = std::min(weakest_violation, rel);
    mkns_violations += rel > 1e-3;
  }
  const bool pass = worst_preserving <= 1e-9 && mkns_violations >= 0.95 * corpora;
  return {pass, fmt::format("{} corpora; KNS/MDKNSPOMD max rel dev {:.2e}; MKNS > 1e-3 on {}/{} "
                            "(smallest max rel dev {:.2e})",
                            corpora, worst_preserving, mkns_violations, corpora,
                            weakest_violation)};
}

Outcome criterion3() {
  int unfloored = 0, floored = 0;
  double worst_marginal = 0.0, worst_norm = 0.0;
  for (int seed = 1; seed <= 200 && (unfloored < 20 || floored < 20); ++seed) {
    const testing::Trained t = small_corpus(seed + 1000, 3);
    const SmoothedModel m = build_mdknspomd_trigram(t.table, t.vocab);
    if (m.levels()[1].floored == 0) {
      if (unfloored >= 20) continue;
      ++unfloored;
      worst_marginal = std::max(worst_marginal, max_rel_dev(highest_level_marginals(m, t.table)));
    } else {
      if (floored >= 20) continue;
      ++floored;
      for (const NGram& h : t.table.histories()) {
        worst_norm = std::max(worst_norm, std::abs(row_sum(m, h) - 1.0));
      }
    }
  }
  const bool pass = unfloored >= 20 && floored >= 1 && worst_marginal <= 1e-6 && worst_norm <= 1e-9;
  return {pass, fmt::format("{} unfloored corpora: max rel marginal dev {:.2e}; {} floored "
                            "corpora: max |row sum - 1| {:.2e}",
                            unfloored, worst_marginal, floored, worst_norm)};
}

Outcome criterion4() {
  double worst = 0.0;
  int rows = 0;
  for (std::uint64_t seed : {101, 202, 303}) {
    const TokenCorpus corpus = testing::random_corpus(testing::kLongTailSpec, seed);
    for (int order = 1; order <= 3; ++order) {
      const testing::Trained t = testing::count_corpus(corpus, order);
      std::vector<NGram> histories = t.table.histories();
      if (order > 1) {
        const NGram never(std::vector<WordId>(order - 1, t.vocab->unk()));
        if (t.table.context_total(never) != 0) return {false, "probe history was observed"};
        histories.push_back(never);
      }
      for (Method method : {Method::kAddK, Method::kGoodTuring, Method::kAbs, Method::kKns,
                            Method::kMkns, Method::kMdknspomd}) {
        if (method == Method::kMdknspomd && order == 1) continue;
        const SmoothedModel m = build_model(method, t.table, t.vocab);
        for (const NGram& h : histories) {
          worst = std::max(worst, std::abs(row_sum(m, h) - 1.0));
          ++rows;
        }
      }
    }
  }
  return {worst <= 1e-9,
          fmt::format("{} (method, order, history) rows, max |sum - 1| {:.2e}", rows, worst)};
}

Outcome criterion5() {
  double worst = 0.0;
  std::size_t checks = 0;
  for (int seed = 1; seed <= 10; ++seed) {
    const double d = 0.3 + 0.06 * seed;
    const double lower = 0.25 + 0.05 * seed;
    const int order = seed % 2 == 0 ? 2 : 3;
    const testing::Trained t = small_corpus(seed + 500, order);
    ModelOptions kns_o, mkns_o, mdk_o;
    kns_o.discounts = DiscountSet::single(d);
    mkns_o.discounts = DiscountSet::triple(d, d, d);
    mdk_o.discounts = DiscountSet::triple(d, d, d);
    if (order == 3) {
      kns_o.lower_discounts = DiscountSet::single(lower);
      mkns_o.lower_discounts = DiscountSet::triple(lower, lower, lower);
      // Pseudo-counts under equal discounts are d times the continuation counts.
      mdk_o.lower_discounts = DiscountSet::single(d * lower);
    }
    const SmoothedModel kns = build_kns(t.table, t.vocab, kns_o);
    const SmoothedModel mkns = build_mkns(t.table, t.vocab, mkns_o);
    const SmoothedModel mdk = build_model(Method::kMdknspomd, t.table, t.vocab, mdk_o);
    for (const NGram& h : t.table.histories()) {
      for (WordId w : t.vocab->predictable()) {
        const double p = kns.prob(h, w);
        worst = std::max({worst, std::abs(p - mkns.prob(h, w)), std::abs(p - mdk.prob(h, w))});
        ++checks;
      }
    }
  }
  return {worst <= 1e-12,
          fmt::format("10 random tables (orders 2 and 3), {} probabilities, max diff {:.2e}",
                      checks, worst)};
}

Outcome criterion6(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return {false, fmt::format("corpus '{}' not found", path)};
  const TokenCorpus corpus = tokenize_and_normalize(in);
  const std::size_t tokens = corpus.token_total();
  if (tokens < 1000000) return {false, fmt::format("corpus has only {} tokens", tokens)};
  const auto start = std::chrono::steady_clock::now();
  std::map<std::pair<int, Method>, double> ppl;
  for (int order : {2, 3}) {
    for (Method method : {Method::kAbs, Method::kKns, Method::kMkns, Method::kMdknspomd}) {
      CrossValOptions o;
      o.folds = 10;
      o.order = order;
      o.method = method;
      o.min_count = 10;
      ppl[{order, method}] = cross_validate(corpus, o).perplexity;
    }
  }
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  bool a = true, b = true, c = true;
  std::string table;
  for (int order : {2, 3}) {
    const double abs = ppl[{order, Method::kAbs}], kns = ppl[{order, Method::kKns}];
    const double mkns = ppl[{order, Method::kMkns}], mdk = ppl[{order, Method::kMdknspomd}];
    a = a && kns < abs && mkns <= kns * 1.005;
    b = b && std::abs(mdk - mkns) / mkns <= 0.02;
    table += fmt::format(" {}-gram abs {:.2f} kns {:.2f} mkns {:.2f} mdknspomd {:.2f};", order,
                         abs, kns, mkns, mdk);
  }
  for (Method method : {Method::kAbs, Method::kKns, Method::kMkns, Method::kMdknspomd}) {
    c = c && ppl[{3, method}] < ppl[{2, method}];
  }
  return {a && b && c,
          fmt::format("{} tokens, 10 folds, min count 10:{} ordering {} closeness {} "
                      "3<2 {}; {:.0f} s",
                      tokens, table, a ? "ok" : "violated", b ? "ok" : "violated",
                      c ? "ok" : "violated", secs)};
}

Outcome criterion7() {
  const fs::path dir = fs::temp_directory_path() / "ngs_acceptance_determinism";
  fs::remove_all(dir);
  fs::create_directories(dir);
  const std::string corpus = (dir / "corpus.txt").string();
  {
    std::ofstream out(corpus);
    for (const auto& s :
         testing::random_corpus(testing::kLongTailSpec, 4242).sentences) {
      for (std::size_t i = 0; i < s.size(); ++i) out << (i ? " " : "") << s[i];
      out << '\n';
    }
  }
  const std::string counts = (dir / "counts.tsv").string();
  const std::string model = (dir / "model.txt").string();
  const std::string table = testing::data_path("table1.tsv");
  const std::vector<std::vector<std::string>> invocations{
      {"vocab", "--corpus", corpus, "--min-count", "2"},
      {"count", "--corpus", corpus, "--order", "3", "--out", counts},
      {"train", "--counts", counts, "--method", "mdknspomd", "--out", model},
      {"score", "--model", model, "--test", corpus},
      {"crossval", "--corpus", corpus, "--order", "3", "--method", "mkns", "--folds", "5",
       "--seed", "42", "--shuffle"},
      {"audit", "--counts", table, "--method", "mdknspomd", "--table"},
      {"render", "--counts", table, "--method", "kns"},
  };
  int identical = 0;
  std::string failed;
  for (const auto& args : invocations) {
    std::string runs[2];
    for (std::string& text : runs) {
      std::ostringstream out, err;
      const int status = cli::run(args, out, err);
      text = fmt::format("{}\n{}\n{}", status, out.str(), err.str());
      for (const auto& p : {counts, model}) {
        std::ifstream f(p, std::ios::binary);
        text += std::string(std::istreambuf_iterator<char>(f), {});
      }
    }
    if (runs[0] == runs[1] && runs[0].rfind("0\n", 0) == 0) {
      ++identical;
    } else {
      failed += " " + args[0];
    }
  }
  fs::remove_all(dir);
  const int total = static_cast<int>(invocations.size());
  return {identical == total,
          fmt::format("{}/{} subcommands byte-identical across two runs{}", identical, total,
                      failed.empty() ? "" : "; differing:" + failed)};
}

}  // namespace
}  // namespace ngs

int main(int argc, char** argv) {
  ngs::cli::configure_logging();
  const std::string corpus = argc > 1 ? argv[1] : "";
  struct Criterion {
    int id;
    const char* name;
    std::function<ngs::Outcome()> check;
  };
  const std::vector<Criterion> criteria{
      {1, "sample table reproduction", ngs::criterion1},
      {2, "bigram marginal preservation", ngs::criterion2},
      {3, "trigram highest-level marginals", ngs::criterion3},
      {4, "normalization", ngs::criterion4},
      {5, "equal-discount collapse", ngs::criterion5},
      {6, "cross-validated perplexity ordering", [&] { return ngs::criterion6(corpus); }},
      {7, "determinism", ngs::criterion7},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    ngs::Outcome o;
    try {
      o = c.check();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failures += !o.pass;
    std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << c.id << " (" << c.name
              << "): " << o.detail << std::endl;
  }
  return failures == 0 ? 0 : 1;
}
