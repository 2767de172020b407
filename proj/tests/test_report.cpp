#include "liebasis/report.hpp"

#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace liebasis;

namespace {

RunConfig config(int n, RepKind r1, RepKind r2, BasisKind basis = BasisKind::coupled, bool exchange = false) {
  RunConfig cfg;
  cfg.n = n;
  cfg.rep1 = r1;
  cfg.rep2 = r2;
  cfg.basis = basis;
  cfg.with_exchange = exchange;
  return cfg;
}

std::filesystem::path fresh_dir(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / name;
  std::filesystem::remove_all(dir);
  return dir;
}

struct EnvGuard {
  explicit EnvGuard(const char* value) {
    if (value)
      ::setenv("LIEBASIS_CACHE_DIR", value, 1);
    else
      ::unsetenv("LIEBASIS_CACHE_DIR");
  }
  ~EnvGuard() { ::unsetenv("LIEBASIS_CACHE_DIR"); }
};

}  // namespace

TEST(CanonicalJson, SortedKeysAndStableFloats) {
  const json j = {{"b", 1}, {"a", {0.1, -0.0, 1.0 / 3.0}}, {"c", {{"z", true}, {"y", nullptr}}}};
  const std::string s = to_canonical_json(j);
  EXPECT_EQ(s,
            "{\n"
            "  \"a\": [0.1, 0, 0.333333333333],\n"
            "  \"b\": 1,\n"
            "  \"c\": {\n"
            "    \"y\": null,\n"
            "    \"z\": true\n"
            "  }\n"
            "}\n");
}

TEST(CanonicalJson, ParseAndReemitIsByteIdentical) {
  auto cfg = config(3, RepKind::adjoint, RepKind::adjoint);
  for (const auto& res : {cmd_counts(6), cmd_verify(cfg), cmd_decompose(cfg)}) {
    const std::string first = to_canonical_json(res.report);
    EXPECT_EQ(to_canonical_json(json::parse(first)), first);
  }
}

TEST(CanonicalJson, Rounding) {
  EXPECT_EQ(canonical_double(-0.0), 0.0);
  EXPECT_FALSE(std::signbit(canonical_double(-1e-300 * 1e-300)));
  EXPECT_EQ(round_eigenvalue(2.0000000000004), 2.0);
  EXPECT_EQ(round_eigenvalue(-1e-12), 0.0);
  EXPECT_FALSE(std::signbit(round_eigenvalue(-1e-12)));
}

TEST(Commands, CountsTable) {
  const auto res = cmd_counts(4);
  EXPECT_EQ(res.exit_code, exit_code::ok);
  const auto& rows = res.report.at("rows");
  ASSERT_EQ(rows.size(), 3u);
  const int expected[3][3] = {{4, 4, 0}, {10, 9, 1}, {18, 15, 3}};
  for (int i = 0; i < 3; ++i) {
    EXPECT_EQ(rows[static_cast<std::size_t>(i)].at("product").at("enumerated"), expected[i][0]);
    EXPECT_EQ(rows[static_cast<std::size_t>(i)].at("coupled").at("enumerated"), expected[i][1]);
    EXPECT_EQ(rows[static_cast<std::size_t>(i)].at("difference").at("enumerated"), expected[i][2]);
  }
  EXPECT_THROW(cmd_counts(1), ConfigError);
}

TEST(Commands, VerifyVerdicts) {
  EnvGuard env(nullptr);
  const auto plain = cmd_verify(config(3, RepKind::adjoint, RepKind::adjoint));
  EXPECT_EQ(plain.exit_code, exit_code::ok);
  EXPECT_EQ(plain.report.at("verdict").at("result"), "incomplete");
  EXPECT_EQ(plain.report.at("verdict").at("block_dim_histogram"), (json{{"1", 48}, {"2", 8}}));
  EXPECT_TRUE(plain.report.at("verdict").at("failures").empty());

  const auto ex = cmd_verify(config(3, RepKind::adjoint, RepKind::adjoint, BasisKind::coupled, true));
  EXPECT_EQ(ex.report.at("verdict").at("result"), "complete");
  EXPECT_EQ(ex.report.at("meta").at("labels").back(), "P");
  EXPECT_EQ(ex.report.at("blocks").size(), 64u);
}

TEST(Commands, DecomposeOctetOctet) {
  EnvGuard env(nullptr);
  const auto res = cmd_decompose(config(3, RepKind::adjoint, RepKind::adjoint));
  EXPECT_EQ(res.exit_code, exit_code::ok);
  EXPECT_TRUE(res.report.at("conservation").at("pass").get<bool>());
  EXPECT_EQ(res.report.at("conservation").at("sum_sigma_dim"), 64);
  bool found = false;
  for (const auto& c : res.report.at("components"))
    if (c.at("su3_labels") == json{1, 1}) {
      found = true;
      EXPECT_EQ(c.at("multiplicity"), 2);
    }
  EXPECT_TRUE(found);
}

TEST(Commands, DeterministicAcrossRuns) {
  EnvGuard env(nullptr);
  const auto cfg = config(3, RepKind::defining, RepKind::conjugate, BasisKind::product);
  EXPECT_EQ(render(cmd_verify(cfg), OutputFormat::json), render(cmd_verify(cfg), OutputFormat::json));
  EXPECT_EQ(render(cmd_decompose(cfg), OutputFormat::json), render(cmd_decompose(cfg), OutputFormat::json));
  EXPECT_EQ(render(cmd_counts(8), OutputFormat::markdown), render(cmd_counts(8), OutputFormat::markdown));
}

TEST(Commands, WarmCacheMatchesColdBytewise) {
  EnvGuard env(nullptr);
  auto cfg = config(3, RepKind::adjoint, RepKind::adjoint, BasisKind::coupled, true);
  const std::string uncached = render(cmd_verify(cfg), OutputFormat::json);
  cfg.cache_dir = fresh_dir("liebasis_test_report_cache");
  const std::string cold = render(cmd_verify(cfg), OutputFormat::json);
  EXPECT_FALSE(std::filesystem::is_empty(*cfg.cache_dir));
  const std::string warm = render(cmd_verify(cfg), OutputFormat::json);
  EXPECT_EQ(cold, uncached);
  EXPECT_EQ(warm, cold);
  std::filesystem::remove_all(*cfg.cache_dir);
}

TEST(Config, Validation) {
  EXPECT_THROW(config(3, RepKind::defining, RepKind::conjugate, BasisKind::coupled, true).validate(), ConfigError);
  EXPECT_THROW(config(1, RepKind::defining, RepKind::defining).validate(), ConfigError);
  EXPECT_THROW(config(3, RepKind::product, RepKind::defining).validate(), ConfigError);
  EXPECT_THROW(config(3, RepKind::defining, RepKind::defining, BasisKind::single_ir).validate(), ConfigError);
  auto cfg = config(3, RepKind::defining, RepKind::defining);
  cfg.tolerances.commute_tol = 0.0;
  EXPECT_THROW(cfg.validate(), ConfigError);
  EXPECT_NO_THROW(config(3, RepKind::defining, RepKind::defining, BasisKind::coupled, true).validate());
}

TEST(Config, CacheDirPrecedence) {
  {
    EnvGuard env(nullptr);
    EXPECT_FALSE(resolve_cache_dir(std::nullopt).has_value());
    EXPECT_EQ(resolve_cache_dir(std::filesystem::path("/tmp/flag")), std::filesystem::path("/tmp/flag"));
  }
  {
    EnvGuard env("/tmp/from_env");
    EXPECT_EQ(resolve_cache_dir(std::nullopt), std::filesystem::path("/tmp/from_env"));
    EXPECT_EQ(resolve_cache_dir(std::filesystem::path("/tmp/flag")), std::filesystem::path("/tmp/flag"));
  }
}

TEST(CacheContainer, RoundTripAndRejection) {
  Matrix m(2, 3);
  m << cplx(1, 2), cplx(-0.5, 0), cplx(0, 1e-300), cplx(3, 4), cplx(5, 6), cplx(7, -8);
  std::stringstream ss;
  write_matrix(ss, "key", m);
  const std::string bytes = ss.str();
  EXPECT_EQ(bytes.substr(0, 4), "LBOP");
  EXPECT_EQ(bytes.size(), 4u + 1 + 4 + 3 + 16 + 6 * 16);

  std::istringstream in(bytes);
  const std::string key = "key";
  const auto back = read_matrix(in, &key);
  ASSERT_TRUE(back.has_value());
  EXPECT_EQ(*back, m);

  std::istringstream wrong_key(bytes);
  const std::string other = "other";
  EXPECT_FALSE(read_matrix(wrong_key, &other).has_value());

  std::string bad = bytes;
  bad[0] = 'X';
  std::istringstream bad_magic(bad);
  EXPECT_FALSE(read_matrix(bad_magic).has_value());

  std::istringstream truncated(bytes.substr(0, bytes.size() - 5));
  EXPECT_FALSE(read_matrix(truncated).has_value());
}

TEST(CacheContainer, CorruptFileIsRecomputed) {
  const auto dir = fresh_dir("liebasis_test_corrupt_cache");
  const OperatorCache cache(dir);
  Matrix m = Matrix::Identity(3, 3);
  ASSERT_TRUE(cache.store("k", m));
  EXPECT_EQ(*cache.load("k"), m);
  std::ofstream(cache.path_for("k"), std::ios::binary | std::ios::trunc) << "garbage";
  EXPECT_FALSE(cache.load("k").has_value());
  EXPECT_FALSE(cache.load("missing").has_value());
  std::filesystem::remove_all(dir);
}

TEST(Markdown, RendersTables) {
  EnvGuard env(nullptr);
  const std::string counts = to_markdown(cmd_counts(3).report);
  EXPECT_NE(counts.find("| 3 | 5 | 10 | 9 | 1 |"), std::string::npos);
  const auto cfg = config(2, RepKind::defining, RepKind::defining);
  const std::string verify = to_markdown(cmd_verify(cfg).report);
  EXPECT_NE(verify.find("verdict: **complete**"), std::string::npos);
  const std::string dec = to_markdown(cmd_decompose(config(3, RepKind::defining, RepKind::defining)).report);
  EXPECT_NE(dec.find("(2, 0)"), std::string::npos);
  EXPECT_NE(dec.find("sum sigma * dim = 9 of 9"), std::string::npos);
}
