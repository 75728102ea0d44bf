//
// Project ocsrbench
// SPDX-License-Identifier: Apache-2.0
//

#include "ocsrbench/harness/adapter.hpp"

#include <cstdlib>
#include <fstream>

#include <gtest/gtest.h>

#include "ocsrbench/chemgraph/canonical.hpp"
#include "ocsrbench/chemgraph/molfile.hpp"
#include "ocsrbench/chemgraph/smiles.hpp"
#include "ocsrbench/error.hpp"
#include "ocsrbench/harness/corpus.hpp"
#include "ocsrbench/harness/process.hpp"
#include "ocsrbench/harness/runner.hpp"
#include "ocsrbench/io/png.hpp"
#include "test_support.hpp"

namespace ocsrbench::harness {
namespace {

namespace fs = std::filesystem;
using degrade::DamageKind;
using degrade::DamageSpec;

AdapterConfig mock(std::string name, std::vector<std::string> args,
                   double timeout = 30) {
  AdapterConfig cfg;
  cfg.name = std::move(name);
  cfg.command.push_back(test::mock_adapter().string());
  cfg.command.insert(cfg.command.end(), args.begin(), args.end());
  cfg.timeout_secs = timeout;
  return cfg;
}

std::string ethanol_molfile() {
  return chemgraph::write_molfile(chemgraph::parse_smiles("CCO"), "x");
}

// A small corpus built once and shared by the read-only tests.
class SmallCorpus : public ::testing::Test {
 protected:
  static void SetUpTestSuite() {
    dir_ = new test::TempDir;
    test::copy_corpus_subset(*dir_ / "mols", 6);
    manifest_ = new CorpusManifest(build_corpus(
        *dir_ / "mols", *dir_ / "corpus",
        { { DamageKind::kBlend, 40, 0 }, { DamageKind::kNoise, 10, 0 },
          { DamageKind::kDistort, 30, 0 } },
        {}, 7));
  }
  static void TearDownTestSuite() {
    delete manifest_;
    delete dir_;
  }

  static test::TempDir *dir_;
  static CorpusManifest *manifest_;
};

test::TempDir *SmallCorpus::dir_ = nullptr;
CorpusManifest *SmallCorpus::manifest_ = nullptr;

TEST(AdapterConfigTest, ExpandCommand) {
  AdapterConfig cfg { "a", { "tool", "--in={image}", "-x" } };
  EXPECT_EQ(expand_command(cfg, "/d/1.png"),
            (std::vector<std::string> { "tool", "--in=/d/1.png", "-x" }));
  cfg.command = { "tool", "{image}", "{image}.out" };
  EXPECT_EQ(expand_command(cfg, "p.png"),
            (std::vector<std::string> { "tool", "p.png", "p.png.out" }));
  cfg.command = { "tool", "-v" };
  EXPECT_EQ(expand_command(cfg, "p.png"),
            (std::vector<std::string> { "tool", "-v", "p.png" }));
}

TEST(AdapterConfigTest, Validate) {
  EXPECT_THROW(validate({ "", { "x" } }), HarnessError);
  EXPECT_THROW(validate({ "a", {} }), HarnessError);
  EXPECT_THROW(validate({ "a", { "" } }), HarnessError);
  EXPECT_THROW(validate({ "a", { "x" }, OutputKind::kMolfile, 0 }),
               HarnessError);
  EXPECT_NO_THROW(validate({ "a", { "x" } }));
  EXPECT_EQ(AdapterConfig {}.timeout_secs, 60.0);
}

TEST(AdapterConfigTest, Names) {
  EXPECT_EQ(parse_output_kind("smiles"), OutputKind::kSmiles);
  EXPECT_EQ(output_kind_name(OutputKind::kMolfile), "molfile");
  EXPECT_THROW(parse_output_kind("inchi"), HarnessError);
  for (auto r: { FailureReason::kNonzeroExit, FailureReason::kTimeout,
                 FailureReason::kEmptyOutput, FailureReason::kParseError }) {
    EXPECT_EQ(parse_reason(reason_name(r)), r);
  }
  EXPECT_EQ(reason_name(FailureReason::kTimeout), "timeout");
  EXPECT_THROW(parse_reason("crash"), HarnessError);
}

TEST(AdapterConfigTest, TimeoutEnvOverride) {
  AdapterConfig cfg { "a", { "x" } };
  ::setenv("OCSR_TIMEOUT_SECS", "2.5", 1);
  apply_timeout_env(cfg);
  EXPECT_EQ(cfg.timeout_secs, 2.5);
  ::setenv("OCSR_TIMEOUT_SECS", "soon", 1);
  EXPECT_THROW(apply_timeout_env(cfg), HarnessError);
  ::setenv("OCSR_TIMEOUT_SECS", "-1", 1);
  EXPECT_THROW(apply_timeout_env(cfg), HarnessError);
  ::unsetenv("OCSR_TIMEOUT_SECS");
  cfg.timeout_secs = 9;
  apply_timeout_env(cfg);
  EXPECT_EQ(cfg.timeout_secs, 9.0);
}

TEST(InterpretOutputTest, Molfile) {
  const auto o = interpret_output("1", ethanol_molfile(), OutputKind::kMolfile);
  ASSERT_TRUE(o.recognized());
  EXPECT_EQ(o.molecule.num_atoms(), 3u);
  EXPECT_EQ(o.image_id, "1");
}

TEST(InterpretOutputTest, MolfileWithTrailingText) {
  const auto o = interpret_output("1", ethanol_molfile() + "$$$$\n",
                                  OutputKind::kMolfile);
  EXPECT_TRUE(o.recognized());
}

TEST(InterpretOutputTest, Empty) {
  for (const char *text: { "", "\n", "  \t\n\n" }) {
    const auto o = interpret_output("1", text, OutputKind::kMolfile);
    ASSERT_FALSE(o.recognized());
    EXPECT_EQ(*o.failure, FailureReason::kEmptyOutput);
    EXPECT_TRUE(o.molecule.is_placeholder());
  }
}

TEST(InterpretOutputTest, Garbage) {
  auto o = interpret_output("1", "no molecule here\n", OutputKind::kMolfile);
  EXPECT_EQ(*o.failure, FailureReason::kParseError);
  std::string broken = ethanol_molfile();
  broken.replace(broken.find("  3  2"), 6, "  4  2");
  o = interpret_output("1", broken, OutputKind::kMolfile);
  EXPECT_EQ(*o.failure, FailureReason::kParseError);
  EXPECT_EQ(o.raw_output, broken);
}

TEST(InterpretOutputTest, Smiles) {
  auto o = interpret_output("1", "banner\nSMILES: C1=CC=CC=C1\n",
                            OutputKind::kSmiles);
  ASSERT_TRUE(o.recognized());
  EXPECT_EQ(chemgraph::canonical_id(o.molecule),
            chemgraph::canonical_id(chemgraph::parse_smiles("c1ccccc1")));
  o = interpret_output("1", "SMILES: C1CC\n", OutputKind::kSmiles);
  EXPECT_EQ(*o.failure, FailureReason::kParseError);
  o = interpret_output("1", "SMILES:   \n", OutputKind::kSmiles);
  EXPECT_EQ(*o.failure, FailureReason::kEmptyOutput);
  o = interpret_output("1", "CCO\n", OutputKind::kSmiles);
  EXPECT_EQ(*o.failure, FailureReason::kParseError);
}

TEST(ProcessTest, CapturesStdoutAndExitCode) {
  const auto r = run_process({ "/bin/sh", "-c", "echo hi; exit 3" }, 10);
  EXPECT_EQ(r.exit_code, 3);
  EXPECT_FALSE(r.timed_out);
  EXPECT_EQ(r.stdout_text, "hi\n");
}

TEST(ProcessTest, KillsOnTimeoutIncludingChildren) {
  const auto r = run_process({ "/bin/sh", "-c", "sleep 30 & sleep 30" }, 0.3);
  EXPECT_TRUE(r.timed_out);
  EXPECT_LT(r.wall_time, 5.0);
}

TEST(ProcessTest, MissingExecutable) {
  const auto r = run_process({ "/no/such/binary" }, 5);
  EXPECT_EQ(r.exit_code, 127);
  EXPECT_FALSE(r.timed_out);
}

TEST_F(SmallCorpus, ManifestShape) {
  const CorpusManifest &m = *manifest_;
  ASSERT_EQ(m.entries.size(), 6u);
  ASSERT_EQ(m.subsets.size(), 4u);
  EXPECT_EQ(m.subsets[0].label, "base");
  EXPECT_FALSE(m.subsets[0].damage);
  EXPECT_EQ(m.subsets[1].label, "blend_40");
  EXPECT_EQ(m.corpus_seed, 7u);
  EXPECT_TRUE(std::is_sorted(
      m.entries.begin(), m.entries.end(),
      [](const auto &a, const auto &b) { return a.image_id < b.image_id; }));
  for (const CorpusSubset &s: m.subsets) {
    for (const CorpusEntry &e: m.entries) {
      EXPECT_TRUE(fs::is_regular_file(m.image_path(s, e))) << s.label;
    }
  }
  for (const CorpusEntry &e: m.entries) {
    EXPECT_TRUE(fs::is_regular_file(m.reference_path(e)));
  }
  EXPECT_TRUE(fs::is_regular_file(m.root / "manifest.json"));
  EXPECT_EQ(m.find_subset("noise_10")->label, "noise_10");
  EXPECT_EQ(m.find_subset("noise_15"), nullptr);
}

TEST_F(SmallCorpus, SubsetImagesAreTheDamagedBase) {
  const CorpusManifest &m = *manifest_;
  const CorpusSubset &base = m.subsets[0];
  for (const CorpusEntry &e: m.entries) {
    const RasterImage img = io::read_png(m.image_path(base, e));
    EXPECT_EQ(io::read_png(m.image_path(*m.find_subset("blend_40"), e)),
              degrade::blend_black(img, 40));
    const auto seed = degrade::derive_seed(7, "noise_10", e.image_id);
    EXPECT_EQ(io::read_png(m.image_path(*m.find_subset("noise_10"), e)),
              degrade::impulse_noise(img, 10, seed));
  }
}

TEST_F(SmallCorpus, ManifestRoundTrip) {
  const std::string text = manifest_to_json(*manifest_);
  const CorpusManifest back = manifest_from_json(text, manifest_->root);
  EXPECT_EQ(manifest_to_json(back), text);
  const CorpusManifest read = read_manifest(manifest_->root);
  EXPECT_EQ(manifest_to_json(read), text);
  EXPECT_NE(text.find("\"distort\""), std::string::npos);
}

TEST(ManifestTest, RejectsMalformed) {
  EXPECT_THROW(manifest_from_json("{", "/x"), HarnessError);
  EXPECT_THROW(manifest_from_json("{\"format\":\"other\"}", "/x"),
               HarnessError);
  EXPECT_THROW(read_manifest("/definitely/not/here"), HarnessError);
}

TEST_F(SmallCorpus, RunSubsetOracle) {
  const auto outcomes =
      run_subset(mock("oracle", { "--mode", "oracle" }), *manifest_,
                 "blend_40", 3);
  ASSERT_EQ(outcomes.size(), 6u);
  for (std::size_t i = 0; i < outcomes.size(); ++i) {
    EXPECT_EQ(outcomes[i].image_id, manifest_->entries[i].image_id);
    ASSERT_TRUE(outcomes[i].recognized());
    const auto ref = chemgraph::parse_molfile(
        test::read_file(manifest_->reference_path(manifest_->entries[i])));
    EXPECT_TRUE(chemgraph::same_structure(outcomes[i].molecule, ref));
  }
  EXPECT_THROW(run_subset(mock("o", {}), *manifest_, "blend_99", 1),
               HarnessError);
}

TEST_F(SmallCorpus, RunSubsetParallelismInvariant) {
  const AdapterConfig cfg = mock("fe", { "--mode", "fail-every", "--every",
                                         "2" });
  const auto one = run_subset(cfg, *manifest_, "base", 1);
  const auto eight = run_subset(cfg, *manifest_, "base", 8);
  EXPECT_EQ(results_to_json({ "fe", "base", one }),
            results_to_json({ "fe", "base", eight }));
  std::size_t failed = 0;
  for (const auto &o: one) {
    failed += o.recognized() ? 0 : 1;
  }
  EXPECT_EQ(failed, 3u);  // ids 002, 004, 006
}

TEST_F(SmallCorpus, RunAdapterOutcomes) {
  const fs::path img = manifest_->image_path(manifest_->subsets[0],
                                             manifest_->entries[0]);
  auto o = run_adapter(mock("x", { "--mode", "exit", "--exit-code", "4" }),
                       img);
  EXPECT_EQ(*o.failure, FailureReason::kNonzeroExit);
  EXPECT_EQ(o.image_id, manifest_->entries[0].image_id);
  o = run_adapter(mock("x", { "--mode", "empty" }), img);
  EXPECT_EQ(*o.failure, FailureReason::kEmptyOutput);
  o = run_adapter(mock("x", { "--mode", "sleep" }, 0.3), img);
  EXPECT_EQ(*o.failure, FailureReason::kTimeout);
  EXPECT_LT(o.wall_time, 5.0);
  o = run_adapter(mock("x", { "--mode", "sleep", "--seconds", "0.01" }), img);
  EXPECT_TRUE(o.recognized());
  AdapterConfig smi = mock("x", { "--mode", "smiles", "--smiles", "CCO" });
  smi.output_kind = OutputKind::kSmiles;
  EXPECT_TRUE(run_adapter(smi, img).recognized());
  o = run_adapter(mock("x", { "--mode", "oracle" }), img.parent_path() / "nope.png");
  EXPECT_EQ(*o.failure, FailureReason::kEmptyOutput);
  AdapterConfig missing { "m", { "/no/such/adapter" } };
  EXPECT_EQ(*run_adapter(missing, img).failure, FailureReason::kNonzeroExit);
}

TEST_F(SmallCorpus, Conformance) {
  const fs::path img = manifest_->image_path(manifest_->subsets[0],
                                             manifest_->entries[0]);
  EXPECT_TRUE(check_conformance(mock("o", { "--mode", "oracle" }), img).ok());
  EXPECT_FALSE(check_conformance(mock("n", { "--mode", "noisy" }), img).ok());
  EXPECT_FALSE(
      check_conformance(mock("s", { "--mode", "sleep" }, 0.3), img).ok());
  EXPECT_FALSE(check_conformance(mock("e", { "--mode", "exit" }), img).ok());
  AdapterConfig bad = mock("b", { "--mode", "smiles", "--smiles", "C1CC" });
  bad.output_kind = OutputKind::kSmiles;
  const ConformanceReport r = check_conformance(bad, img);
  EXPECT_FALSE(r.ok());
  EXPECT_EQ(*r.outcome.failure, FailureReason::kParseError);
}

TEST_F(SmallCorpus, ResultsRoundTrip) {
  SubsetRun run { "my tool/v2", "base",
                  run_subset(mock("c", { "--mode", "corrupt" }), *manifest_,
                             "base", 2) };
  run.outcomes[1] = RecognitionOutcome::failed(run.outcomes[1].image_id,
                                               FailureReason::kTimeout,
                                               "partial \xff output");
  const std::string text = results_to_json(run);
  EXPECT_EQ(text.find("wall_time"), std::string::npos);
  const SubsetRun back = results_from_json(text);
  EXPECT_EQ(back.adapter, run.adapter);
  ASSERT_EQ(back.outcomes.size(), run.outcomes.size());
  for (std::size_t i = 0; i < run.outcomes.size(); ++i) {
    EXPECT_EQ(back.outcomes[i].image_id, run.outcomes[i].image_id);
    EXPECT_EQ(back.outcomes[i].failure, run.outcomes[i].failure);
    if (run.outcomes[i].recognized()) {
      EXPECT_EQ(chemgraph::canonical_id(back.outcomes[i].molecule),
                chemgraph::canonical_id(run.outcomes[i].molecule));
    }
  }
  EXPECT_EQ(results_to_json(back), text);

  test::TempDir out;
  const fs::path file = write_results(out.path(), run);
  EXPECT_EQ(file, out / "my_tool_v2" / "base.json");
  EXPECT_TRUE(fs::exists(out / "my_tool_v2" / "base.timing.json"));
  EXPECT_EQ(results_to_json(read_results(file)), text);
  EXPECT_EQ(list_results(out.path()), std::vector<fs::path> { file });
}

TEST(ResultsTest, SanitizeName) {
  EXPECT_EQ(sanitize_name("ensemble(a+b|c)"), "ensemble_a_b_c_");
  EXPECT_EQ(sanitize_name("ok-1.2_x"), "ok-1.2_x");
  EXPECT_THROW(results_from_json("[]"), HarnessError);
}

TEST(ParallelForTest, RunsEveryIndexAndRethrows) {
  std::vector<int> hits(100, 0);
  parallel_for(100, 4, [&](std::size_t i) { hits[i] += 1; });
  EXPECT_EQ(std::count(hits.begin(), hits.end(), 1), 100);
  EXPECT_THROW(parallel_for(10, 3,
                            [](std::size_t i) {
                              if (i == 7) {
                                throw std::runtime_error("boom");
                              }
                            }),
               std::runtime_error);
}

TEST(BuildCorpusTest, SingleFile) {
  test::TempDir dir;
  test::copy_corpus_subset(dir / "mols", 1);
  const auto m = build_corpus(dir / "mols", dir / "c", {}, {}, 1);
  EXPECT_EQ(m.entries.size(), 1u);
  EXPECT_EQ(m.subsets.size(), 1u);
}

TEST(BuildCorpusTest, SkipsUnusableInputs) {
  test::TempDir dir;
  test::copy_corpus_subset(dir / "mols", 2);
  test::write_file(dir / "mols" / "900_broken.mol", "not a molfile\n");
  chemgraph::Molecule stacked;
  stacked.add_atom({ "C", 0, 1, 1 });
  stacked.add_atom({ "C", 0, 1, 1 });
  stacked.add_bond(0, 1, chemgraph::BondOrder::kSingle);
  test::write_file(dir / "mols" / "901_stacked.mol",
                   chemgraph::write_molfile(stacked));
  test::write_file(dir / "mols" / "readme.txt", "ignored");
  const auto m = build_corpus(dir / "mols", dir / "c",
                              { { DamageKind::kBlend, 20, 0 } }, {}, 1);
  EXPECT_EQ(m.entries.size(), 2u);
  ASSERT_EQ(m.skipped.size(), 2u);
  EXPECT_EQ(m.skipped[0].file.filename(), "900_broken.mol");
  EXPECT_NE(m.skipped[0].reason.find("line"), std::string::npos);
  EXPECT_EQ(m.skipped[1].file.filename(), "901_stacked.mol");
}

TEST(BuildCorpusTest, Errors) {
  test::TempDir dir;
  EXPECT_THROW(build_corpus(dir / "none", dir / "c", {}, {}, 1), HarnessError);
  fs::create_directories(dir / "empty");
  EXPECT_THROW(build_corpus(dir / "empty", dir / "c", {}, {}, 1),
               HarnessError);
  fs::create_directories(dir / "bad");
  test::write_file(dir / "bad" / "1.mol", "junk");
  EXPECT_THROW(build_corpus(dir / "bad", dir / "c", {}, {}, 1), HarnessError);
  test::copy_corpus_subset(dir / "ok", 1);
  const DamageSpec b { DamageKind::kBlend, 20, 0 };
  EXPECT_THROW(build_corpus(dir / "ok", dir / "c", { b, b }, {}, 1),
               HarnessError);
}

TEST(BuildCorpusTest, RebuildRemovesStaleImages) {
  test::TempDir dir;
  test::copy_corpus_subset(dir / "mols", 3);
  build_corpus(dir / "mols", dir / "c", {}, {}, 1);
  fs::remove(dir / "mols" / (test::corpus_molecules()[2].id + ".mol"));
  const auto m = build_corpus(dir / "mols", dir / "c", {}, {}, 1);
  EXPECT_EQ(m.entries.size(), 2u);
  std::size_t pngs = 0;
  for (const auto &e: fs::directory_iterator(dir / "c" / "base")) {
    pngs += e.path().extension() == ".png" ? 1 : 0;
  }
  EXPECT_EQ(pngs, 2u);
}

TEST(BuildCorpusTest, DistortGetsMarginWhenPaddingIsSmall) {
  test::TempDir dir;
  test::copy_corpus_subset(dir / "mols", 1);
  CorpusOptions opts;
  opts.render.padding = 2;
  const auto m = build_corpus(dir / "mols", dir / "c",
                              { { DamageKind::kDistort, 10, 0 } }, opts, 1);
  const RasterImage base =
      io::read_png(m.image_path(m.subsets[0], m.entries[0]));
  const RasterImage warped =
      io::read_png(m.image_path(m.subsets[1], m.entries[0]));
  EXPECT_EQ(warped.width(), base.width() + 2 * (kDistortMargin - 2));
}

TEST(BuildCorpusTest, ParallelismDoesNotChangeOutput) {
  test::TempDir dir;
  test::copy_corpus_subset(dir / "mols", 5);
  const std::vector<DamageSpec> specs = { { DamageKind::kNoise, 20, 0 },
                                          { DamageKind::kDistort, 50, 0 } };
  CorpusOptions serial;
  CorpusOptions wide;
  wide.parallelism = 6;
  build_corpus(dir / "mols", dir / "a", specs, serial, 3);
  build_corpus(dir / "mols", dir / "b", specs, wide, 3);
  auto a = test::snapshot_tree(dir / "a");
  auto b = test::snapshot_tree(dir / "b");
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].first, b[i].first);
    EXPECT_TRUE(a[i].second == b[i].second) << a[i].first;
  }
}

}  // namespace
}  // namespace ocsrbench::harness
