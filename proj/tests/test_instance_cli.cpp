#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>

#include "golden_support.hpp"
#include "mrc/cli.hpp"
#include "mrc/errors.hpp"
#include "mrc/instance.hpp"
#include "mrc/oracle.hpp"

namespace mrc {
namespace {

using cli::run;

TEST(Instance, Deterministic) {
  const InstanceRequest req{ModuliSpec::make(5, 3, {2, 2}), 7, 42};
  const auto a = instance_to_json(generate_instance(req)).dump(2);
  const auto b = instance_to_json(generate_instance(req)).dump(2);
  EXPECT_EQ(a, b);
  const InstanceRequest other{ModuliSpec::make(5, 3, {2, 2}), 7, 43};
  EXPECT_NE(a, instance_to_json(generate_instance(other)).dump(2));
}

TEST(Instance, TwoQuadricsInP5) {
  const auto inst = generate_instance({ModuliSpec::make(5, 3, {2, 2}), 11, 5});
  ASSERT_EQ(inst.forms.size(), 2u);
  for (const auto& f : inst.forms.polys()) {
    EXPECT_EQ(f.num_vars(), 6u);
    EXPECT_EQ(f.degree(), 2u);
  }
  ASSERT_EQ(inst.points.size(), 3u);
  for (const auto& p : inst.points)
    for (const auto& f : inst.forms.polys()) EXPECT_EQ(poly_eval(f, std::span<const std::uint32_t>(p.coords())), 0u);
}

TEST(Instance, SplitQuadricFamily) {
  const auto inst = generate_instance({ModuliSpec::make(3, 1, {2}), 5, 3, InstanceFamily::SplitQuadricSurface});
  EXPECT_EQ(variety_points(inst.forms).size(), 36u);  // (q+1)^2
  EXPECT_EQ(lines_through_point(inst.forms, inst.points.front()).count(), 2u);
}

TEST(Instance, ImpossibleRequestFails) {
  // The comb system would need 6 independent linear forms in 5 variables.
  try {
    generate_instance({ModuliSpec::make(4, 2, {2, 2, 2}), 3, 1});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::GenerationFailed);
  }
  EXPECT_EQ(run({"instance", "--q", "3", "--n", "4", "--m", "2", "--degrees", "2,2,2", "--seed", "1"}).exit_code, 1);
}

TEST(Instance, JsonRoundTrip) {
  const auto inst = generate_instance({ModuliSpec::make(4, 2, {3}), 5, 8});
  const auto doc = instance_to_json(inst);
  const auto back = instance_from_json(doc);
  EXPECT_EQ(instance_to_json(back).dump(), doc.dump());
  EXPECT_EQ(back.forms, inst.forms);
  EXPECT_EQ(back.points, inst.points);
}

TEST(DegreeList, StrictParsing) {
  EXPECT_EQ(cli::parse_degree_list("2,2,3"), (std::vector<std::int64_t>{2, 2, 3}));
  EXPECT_EQ(cli::parse_degree_list("5"), (std::vector<std::int64_t>{5}));
  for (const char* bad : {"", ",", "2,", ",2", "2,,3", "2;3", " 2", "2 ", "x", "2.5"})
    EXPECT_THROW(cli::parse_degree_list(bad), Error) << "'" << bad << "'";
}

TEST(Cli, GoldenFiles) {
  for (const auto& c : testing::golden_cases()) {
    const auto outcome = testing::run_golden(c, MRC_GOLDEN_DIR);
    EXPECT_TRUE(outcome.matches) << outcome.detail;
    EXPECT_EQ(outcome.exit_code, c.exit_code) << c.file;
  }
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(run({"check", "--n", "8", "--m", "3", "--degrees", "3"}).exit_code, 0);
  EXPECT_EQ(run({"check", "--n", "10", "--m", "4", "--degrees", "2"}).exit_code, 1);
  EXPECT_EQ(run({"type", "--n", "7", "--m", "3", "--degrees", "2,2"}).exit_code, 1);
  EXPECT_EQ(run({"type", "--n", "9", "--m", "3", "--degrees", "2,2"}).exit_code, 0);
  EXPECT_EQ(run({"check", "--n", "8", "--m", "3", "--degrees", "3,,2"}).exit_code, 2);
  EXPECT_EQ(run({"check", "--n", "8", "--m", "3", "--degrees", "1"}).exit_code, 2);
  EXPECT_EQ(run({"check", "--n", "8", "--m", "3", "--degrees", "3", "--bogus"}).exit_code, 2);
  EXPECT_EQ(run({"frobnicate"}).exit_code, 2);
  EXPECT_EQ(run({}).exit_code, 2);
  EXPECT_EQ(run({"--help"}).exit_code, 0);
  EXPECT_EQ(run({"verify", "combs", "--help"}).exit_code, 0);
  EXPECT_EQ(run({"count", "--kind", "quartics", "--degrees", "3"}).exit_code, 2);
  EXPECT_EQ(run({"count", "--kind", "fiber-degree", "--degrees", "3"}).exit_code, 2);
  EXPECT_EQ(run({"count", "--kind", "fiber-degree", "--degrees", "3", "--m", "4"}).out, "48\n");
  // Field and box handling.
  EXPECT_EQ(run({"verify", "lines", "--q", "9", "--n", "3", "--degrees", "2", "--seed", "1"}).exit_code, 2);
  EXPECT_EQ(run({"verify", "lines", "--q", "17", "--n", "3", "--degrees", "2", "--seed", "1"}).exit_code, 3);
  EXPECT_EQ(run({"verify", "lines", "--q", "3", "--n", "7", "--degrees", "2", "--seed", "1"}).exit_code, 3);
  EXPECT_EQ(run({"verify", "combs", "--q", "3", "--n", "6", "--m", "5", "--degrees", "2", "--seed", "1"}).exit_code, 3);
  EXPECT_EQ(run({"verify", "lines", "--q", "3", "--n", "6", "--degrees", "2,2,2,2", "--seed", "1"}).exit_code, 3);
  EXPECT_EQ(run({"verify", "lines", "--q", "3", "--n", "4", "--degrees", "5", "--seed", "1"}).exit_code, 2);
  EXPECT_EQ(run({"verify", "lines", "--q", "3", "--n", "4", "--seed", "1"}).exit_code, 2);
}

TEST(Cli, UsageErrorsGoToStandardError) {
  const auto r = run({"check", "--n", "8", "--m", "3", "--degrees", "x"});
  EXPECT_EQ(r.exit_code, 2);
  EXPECT_TRUE(r.out.empty());
  EXPECT_FALSE(r.err.empty());
}

TEST(Cli, VerifySubcommandsPass) {
  EXPECT_EQ(run({"verify", "lines", "--q", "5", "--n", "3", "--degrees", "2", "--seed", "1", "--trials", "3",
                 "--family", "split-quadric"})
                .exit_code,
            0);
  EXPECT_EQ(run({"verify", "reduce", "--q", "7", "--n", "5", "--m", "3", "--degrees", "2,2", "--seed", "2"}).exit_code,
            0);
  EXPECT_EQ(run({"verify", "reduce", "--system", "lines", "--q", "7", "--n", "4", "--degrees", "3", "--seed", "2"})
                .exit_code,
            0);
}

TEST(Cli, InstanceFileRoundTrip) {
  const auto dir = std::filesystem::temp_directory_path() / "mrc_cli_test";
  std::filesystem::create_directories(dir);
  const auto path = (dir / "inst.json").string();
  const std::vector<std::string> gen{"instance", "--q", "5", "--n", "3", "--m", "2", "--degrees", "2", "--seed", "9"};
  auto with_out = gen;
  with_out.insert(with_out.end(), {"--out", path});
  ASSERT_EQ(run(with_out).exit_code, 0);
  EXPECT_EQ(testing::read_file(path), run(gen).out);

  const auto from_file = run({"verify", "combs", "--instance", path, "--json"});
  const auto direct = run({"verify", "combs", "--q", "5", "--n", "3", "--m", "2", "--degrees", "2", "--seed", "9", "--json"});
  EXPECT_EQ(from_file.exit_code, 0);
  EXPECT_EQ(testing::normalize_output(from_file.out, true), testing::normalize_output(direct.out, true));
  std::filesystem::remove_all(dir);
}

TEST(Cli, ReportsIndependentOfThreadCount) {
  const std::vector<std::string> args{"verify", "combs", "--q", "7", "--n", "5", "--m", "3", "--degrees", "2,2",
                                      "--seed", "4", "--json"};
  setenv("MRC_THREADS", "1", 1);
  const auto one = testing::normalize_output(run(args).out, true);
  setenv("MRC_THREADS", "4", 1);
  const auto four = testing::normalize_output(run(args).out, true);
  unsetenv("MRC_THREADS");
  EXPECT_EQ(one, four);
}

}  // namespace
}  // namespace mrc
