#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

#include "reembed/job.hpp"
#include "reembed/report.hpp"

using namespace reembed;

namespace {

std::string job_file(const std::string& stem) {
  std::ifstream in(std::string(REEMBED_JOBS_DIR) + "/" + stem + ".job");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::pair<std::size_t, std::size_t> error_position(std::string_view text) {
  try {
    parse_job(text);
  } catch (const ParseError& e) {
    return {e.line(), e.column()};
  }
  return {0, 0};
}

}  // namespace

TEST(JobParser, ReadsEveryKey) {
  auto job = parse_job(
      "command reembed;\n"
      "ring x, y, z;\n"
      "gens x - y^2, z - x*y;\n"
      "ordering lex;\n"
      "alg cotangent; size 2; optimal_only; all false; sugar true;\n"
      "budget 500; threads 3; wall 4; format json;\n");
  EXPECT_EQ(job.command, Command::reembed);
  EXPECT_EQ(job.ring.arity(), 3U);
  EXPECT_EQ(job.gens.size(), 2U);
  EXPECT_EQ(job.ordering_name, "lex");
  EXPECT_EQ(job.alg, SearchAlg::cotangent);
  EXPECT_EQ(job.size, std::optional<std::size_t>(2));
  EXPECT_TRUE(job.optimal_only);
  EXPECT_FALSE(job.all);
  EXPECT_TRUE(job.sugar);
  EXPECT_EQ(job.budget, std::optional<std::uint64_t>(500));
  EXPECT_EQ(job.threads, std::optional<std::size_t>(3));
  EXPECT_EQ(job.wall_seconds, std::optional<double>(4.0));
  EXPECT_EQ(job.format, OutputFormat::json);
}

TEST(JobParser, CommentsAndOrderings) {
  auto job = parse_job("# leading comment\ncommand gb; # trailing\nring a, b;\ngens a - b^2;\nordering elim(a);\n");
  EXPECT_EQ(job.ordering_name, "elim(a)");
  ASSERT_TRUE(job.ordering);
  EXPECT_TRUE(job.ordering->is_elimination_for(std::vector<Indet>{0}));
  job = parse_job("command gb; ring a, b; gens a; ordering matrix((1, 1), (0, -1));");
  EXPECT_EQ(job.ordering_name, "matrix");
  EXPECT_EQ(job.ordering->rows().size(), 2U);
}

TEST(JobParser, ErrorPositions) {
  EXPECT_EQ(error_position(""), std::make_pair(std::size_t{1}, std::size_t{1}));
  EXPECT_EQ(error_position("ring x;"), std::make_pair(std::size_t{1}, std::size_t{1}));
  EXPECT_EQ(error_position("command gb;\nring x, y;\ngens x + * y;"), std::make_pair(std::size_t{3}, std::size_t{10}));
  EXPECT_EQ(error_position("command gb;\nring x;\ngens x;\nbogus 1;"), std::make_pair(std::size_t{4}, std::size_t{1}));
  EXPECT_EQ(error_position("command gb;\nring x;\nring y;"), std::make_pair(std::size_t{3}, std::size_t{1}));
  EXPECT_EQ(error_position("command gb;\nring x;\ngens x + q;"), std::make_pair(std::size_t{3}, std::size_t{10}));
  EXPECT_EQ(error_position("command gb;\nring x, y;\ngens x;\nordering matrix((1, 1), (1, 1));").first, 4U);
  EXPECT_EQ(error_position("command gfan-linear;\nring x, y;\ngens x^2;"), std::make_pair(std::size_t{3}, std::size_t{1}));
  EXPECT_EQ(error_position("command gb;\ngens x;"), std::make_pair(std::size_t{2}, std::size_t{1}));
  EXPECT_EQ(error_position("command gb;\nring x, x;"), std::make_pair(std::size_t{2}, std::size_t{9}));
  EXPECT_EQ(error_position("command gb;\nring x;\ngens x\n"), std::make_pair(std::size_t{4}, std::size_t{1}));
}

TEST(JobParser, OrderingOverride) {
  auto job = parse_job("command gb; ring x, y; gens x - y^2;");
  set_ordering(job, "elim(y)");
  EXPECT_EQ(job.ordering_name, "elim(y)");
  EXPECT_TRUE(job.ordering->is_elimination_for(std::vector<Indet>{1}));
  EXPECT_THROW(set_ordering(job, "elim(q)"), ParseError);
  EXPECT_THROW(set_ordering(job, "lex extra"), ParseError);
}

TEST(Report, JsonIsDeterministicAndVersioned) {
  for (const char* stem : {"ten_generators_gb", "two_forms_gfan", "curve_cotangent", "curve_reembed"}) {
    auto job = parse_job(job_file(stem));
    auto a = run_job(job), b = run_job(job);
    EXPECT_EQ(a.json["schema"], report_schema_version) << stem;
    EXPECT_EQ(a.render(OutputFormat::json), b.render(OutputFormat::json)) << stem;
    EXPECT_EQ(a.text, b.text) << stem;
    EXPECT_EQ(a.exit_code, exit_ok) << stem;
  }
}

TEST(Report, ReembedJson) {
  auto r = run_job(parse_job(job_file("curve_reembed")));
  const auto& j = r.json;
  EXPECT_EQ(j["status"], "found");
  EXPECT_EQ(j["candidates"], 2);
  ASSERT_EQ(j["trace"].size(), 2U);
  EXPECT_EQ(j["trace"][0]["verdict"], "no");
  EXPECT_EQ(j["trace"][1]["verdict"], "yes");
  const auto& f = j["results"][0];
  EXPECT_EQ(f["substitution"]["x"], "1/2*z^6 + z^4 + z^2");
  EXPECT_EQ(f["affine_cell"], true);
  EXPECT_EQ(f["optimal"], true);
}

TEST(Report, GfanTextMarksPairs) {
  auto r = run_job(parse_job(job_file("two_forms_gfan")));
  EXPECT_NE(r.text.find("1: {(x, x - z + 2*w), (y, y + 2*w)}"), std::string::npos);
  EXPECT_NE(r.text.find("5: {(z, z - x + y), (w, w + 1/2*y)}"), std::string::npos);
}

TEST(Report, ExhaustedBudgetExitsInconclusive) {
  auto job = parse_job(job_file("curve_reembed"));
  job.budget = 3;
  auto r = run_job(job);
  EXPECT_EQ(r.exit_code, exit_inconclusive);
  EXPECT_EQ(r.json["status"], "inconclusive");
  EXPECT_EQ(r.json["unverified"].size(), 2U);

  auto gb = parse_job("command gb; ring x, y, z; gens x - y - z^2, x + y - z^3; ordering lex; budget 1;");
  EXPECT_EQ(run_job(gb).exit_code, exit_inconclusive);
}
