//
// Project ocsrbench
// SPDX-License-Identifier: Apache-2.0
//

#include "ocsrbench/ensemble/ensemble.hpp"

#include <sstream>

#include <gtest/gtest.h>

#include "ocsrbench/chemgraph/canonical.hpp"
#include "ocsrbench/chemgraph/smiles.hpp"
#include "ocsrbench/error.hpp"
#include "ocsrbench/evaluate/scoring.hpp"
#include "ocsrbench/harness/runner.hpp"
#include "test_support.hpp"

namespace ocsrbench::ensemble {
namespace {

using harness::AdapterConfig;
using harness::FailureReason;

RecognitionOutcome ok(const char *smiles) {
  return RecognitionOutcome::success("img", chemgraph::parse_smiles(smiles));
}

RecognitionOutcome failed(FailureReason why = FailureReason::kTimeout) {
  return RecognitionOutcome::failed("img", why);
}

struct CountingFallback {
  RecognitionOutcome result = ok("N");
  int calls = 0;

  FallbackSupplier supplier() {
    return [this] {
      ++calls;
      return result;
    };
  }
};

AdapterConfig mock(std::string name, std::vector<std::string> args) {
  AdapterConfig cfg;
  cfg.name = std::move(name);
  cfg.command.push_back(test::mock_adapter().string());
  cfg.command.insert(cfg.command.end(), args.begin(), args.end());
  cfg.timeout_secs = 30;
  return cfg;
}

std::vector<std::string> log_lines(const std::filesystem::path &p) {
  std::vector<std::string> out;
  if (!std::filesystem::exists(p)) {
    return out;
  }
  std::istringstream in(test::read_file(p));
  for (std::string line; std::getline(in, line);) {
    out.push_back(line);
  }
  std::sort(out.begin(), out.end());
  return out;
}

TEST(CombineTest, AgreementSkipsFallback) {
  CountingFallback fb;
  const RecognitionOutcome r = combine(ok("CCO"), ok("OCC"), fb.supplier());
  EXPECT_EQ(fb.calls, 0);
  EXPECT_EQ(chemgraph::canonical_id(r.molecule),
            chemgraph::canonical_id(chemgraph::parse_smiles("CCO")));
}

TEST(CombineTest, AgreementAcrossKekuleForms) {
  CountingFallback fb;
  combine(ok("c1ccccc1"), ok("C1=CC=CC=C1"), fb.supplier());
  EXPECT_EQ(fb.calls, 0);
}

TEST(CombineTest, DisagreementUsesFallback) {
  CountingFallback fb;
  const RecognitionOutcome r = combine(ok("CCO"), ok("COC"), fb.supplier());
  EXPECT_EQ(fb.calls, 1);
  EXPECT_EQ(r.molecule.atom(0).element, "N");
}

TEST(CombineTest, FailureCountsAsDisagreement) {
  for (auto why: { FailureReason::kTimeout, FailureReason::kNonzeroExit,
                   FailureReason::kEmptyOutput, FailureReason::kParseError }) {
    CountingFallback fb;
    combine(ok("CCO"), failed(why), fb.supplier());
    combine(failed(why), ok("CCO"), fb.supplier());
    combine(failed(why), failed(why), fb.supplier());
    EXPECT_EQ(fb.calls, 3);
  }
}

TEST(CombineTest, FallbackFailurePropagates) {
  CountingFallback fb;
  fb.result = failed(FailureReason::kNonzeroExit);
  const RecognitionOutcome r = combine(ok("C"), ok("CC"), fb.supplier());
  ASSERT_FALSE(r.recognized());
  EXPECT_EQ(*r.failure, FailureReason::kNonzeroExit);
}

TEST(CombineTest, Symmetric) {
  std::mt19937_64 rng(8);
  for (int i = 0; i < 200; ++i) {
    const auto m = test::random_molecule(rng, 8);
    const RecognitionOutcome a = RecognitionOutcome::success("img", m);
    const RecognitionOutcome b =
        i % 3 == 0 ? failed()
                   : RecognitionOutcome::success(
                         "img", i % 3 == 1 ? test::relabeled(m, rng)
                                           : test::random_molecule(rng, 8));
    CountingFallback f1, f2;
    const RecognitionOutcome ab = combine(a, b, f1.supplier());
    const RecognitionOutcome ba = combine(b, a, f2.supplier());
    ASSERT_EQ(f1.calls, f2.calls);
    ASSERT_EQ(ab.recognized(), ba.recognized());
    if (ab.recognized()) {
      EXPECT_EQ(chemgraph::canonical_id(ab.molecule),
                chemgraph::canonical_id(ba.molecule));
    }
  }
}

TEST(EnsembleConfigTest, NameAndValidate) {
  EnsembleConfig cfg { { "molvec", { "x" } }, { "osra", { "y" } },
                       { "molscribe", { "z" } } };
  EXPECT_EQ(cfg.name(), "ensemble(molvec+osra|molscribe)");
  EXPECT_NO_THROW(validate(cfg));
  cfg.fallback.name = "osra";
  EXPECT_THROW(validate(cfg), HarnessError);
  cfg.fallback.name = "z";
  cfg.fast_a.command.clear();
  EXPECT_THROW(validate(cfg), HarnessError);
}

TEST(CombineRunsTest, CountsAndAlignment) {
  std::vector<RecognitionOutcome> a, b;
  for (int i = 0; i < 100; ++i) {
    const std::string id = std::to_string(i);
    a.push_back(RecognitionOutcome::success(id, chemgraph::parse_smiles("CCO")));
    b.push_back(RecognitionOutcome::success(
        id, chemgraph::parse_smiles(i < 60 ? "OCC" : "COC")));
  }
  int calls = 0;
  const EnsembleRun run = combine_runs(a, b, [&](std::size_t i) {
    ++calls;
    return RecognitionOutcome::failed(a[i].image_id, FailureReason::kTimeout);
  });
  EXPECT_EQ(calls, 40);
  EXPECT_EQ(run.fallback_invocations, 40u);
  EXPECT_EQ(std::count(run.used_fallback.begin(), run.used_fallback.end(),
                       true),
            40);
  EXPECT_EQ(run.outcomes[70].image_id, "70");

  b[5].image_id = "other";
  EXPECT_THROW(combine_runs(a, b, [](std::size_t) { return failed(); }),
               HarnessError);
  b.pop_back();
  EXPECT_THROW(combine_runs(a, b, [](std::size_t) { return failed(); }),
               HarnessError);
}

class MockEnsemble : public ::testing::Test {
 protected:
  void SetUp() override {
    test::copy_corpus_subset(dir_ / "mols", 10);
    manifest_ = harness::build_corpus(dir_ / "mols", dir_ / "corpus", {}, {},
                                      1);
  }

  EnsembleConfig config(bool lazy) {
    return { mock("oracle", { "--mode", "oracle" }),
             mock("corrupt", { "--mode", "corrupt" }),
             mock("third", { "--mode", "oracle", "--log",
                             (dir_ / (lazy ? "lazy.log" : "eager.log"))
                                 .string() }),
             lazy };
  }

  test::TempDir dir_;
  harness::CorpusManifest manifest_;
};

TEST_F(MockEnsemble, LazyFallbackRunsOnlyOnDisagreement) {
  const EnsembleRun run = run_ensemble_subset(config(true), manifest_, "base",
                                              4);
  EXPECT_EQ(run.fallback_invocations, 4u);
  const auto log = log_lines(dir_ / "lazy.log");
  ASSERT_EQ(log.size(), 4u);
  // corrupt mode damages ids whose numeric prefix n has n % 5 < 2
  for (const std::string &id: log) {
    const int n = std::stoi(id.substr(0, 3));
    EXPECT_LT(n % 5, 2) << id;
  }
  const auto refs = evaluate::load_references(manifest_);
  const auto scored =
      evaluate::score_subset("e", "base", run.outcomes, refs);
  EXPECT_EQ(scored.matches, 10u);
}

TEST_F(MockEnsemble, EagerFallbackRunsEverywhere) {
  const EnsembleRun run = run_ensemble_subset(config(false), manifest_,
                                              "base", 2);
  EXPECT_EQ(run.fallback_invocations, 10u);
  EXPECT_EQ(log_lines(dir_ / "eager.log").size(), 10u);
  EXPECT_EQ(std::count(run.used_fallback.begin(), run.used_fallback.end(),
                       true),
            4);
}

TEST_F(MockEnsemble, ReusesStoredFastResults) {
  EnsembleConfig cfg = config(true);
  const auto a = harness::run_subset(cfg.fast_a, manifest_, "base", 1);
  const auto b = harness::run_subset(cfg.fast_b, manifest_, "base", 1);
  cfg.fast_a.command = { "/no/such/binary" };
  cfg.fast_b.command = { "/no/such/binary" };
  const EnsembleRun run = run_ensemble_subset(cfg, manifest_, "base", 1, a, b);
  EXPECT_EQ(run.fallback_invocations, 4u);
  EXPECT_THROW(run_ensemble_subset(cfg, manifest_, "blend_20", 1, a, b),
               HarnessError);
}

}  // namespace
}  // namespace ocsrbench::ensemble
