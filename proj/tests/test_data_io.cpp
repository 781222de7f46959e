#include <cmath>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <vector>

#include <gtest/gtest.h>

#include "mabbp/datagen.hpp"
#include "mabbp/errors.hpp"
#include "mabbp/io.hpp"

namespace mabbp {
namespace {

namespace fs = std::filesystem;

class TempDir : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("mabbp_io_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  fs::path dir_;
};

TEST(Adversarial, OnesRounding) {
  EXPECT_EQ(adversarial_ones(0.3, 10), 3u);
  EXPECT_EQ(adversarial_ones(0.0, 10), 0u);
  EXPECT_EQ(adversarial_ones(1.0, 10), 10u);
  EXPECT_EQ(adversarial_ones(0.25, 10), 3u);  // 2.5 rounds up
  EXPECT_EQ(adversarial_ones(0.24, 10), 2u);
  EXPECT_THROW(adversarial_ones(1.5, 10), DomainError);
}

TEST(Adversarial, ListsHoldOnesThenZeros) {
  AdversarialInstance inst;
  inst.dim = 10;
  inst.target_means = {0.3, 0.0, 1.0};
  inst.ones = {3, 0, 10};
  EXPECT_EQ(inst.reward_list(0), (std::vector<double>{1, 1, 1, 0, 0, 0, 0, 0, 0, 0}));
  EXPECT_EQ(inst.reward_list(1), std::vector<double>(10, 0.0));
  EXPECT_EQ(inst.reward_list(2), std::vector<double>(10, 1.0));
  EXPECT_EQ(inst.true_means(), (std::vector<double>{0.3, 0.0, 1.0}));
  const auto vs = inst.as_vectors();
  EXPECT_EQ(vs.at(0, 2), 1.0f);
  EXPECT_EQ(vs.at(0, 3), 0.0f);
  auto sources = inst.sources();
  EXPECT_EQ(sources[0].kind(), RewardKind::adversarial_stream);
}

TEST(Adversarial, SameSeedSameInstance) {
  const auto a = gen_adversarial({Distribution::adversarial, 50, 200, 4});
  const auto b = gen_adversarial({Distribution::adversarial, 50, 200, 4});
  const auto c = gen_adversarial({Distribution::adversarial, 50, 200, 5});
  EXPECT_EQ(a.ones, b.ones);
  EXPECT_EQ(a.target_means, b.target_means);
  EXPECT_NE(a.target_means, c.target_means);
  for (std::size_t i = 0; i < a.arms(); ++i) {
    EXPECT_GE(a.target_means[i], 0.0);
    EXPECT_LT(a.target_means[i], 1.0);
    EXPECT_EQ(a.ones[i], adversarial_ones(a.target_means[i], 200));
  }
  EXPECT_THROW(gen_adversarial({Distribution::gaussian, 5, 5, 0}), ConfigError);
}

TEST(GenVectors, Deterministic) {
  for (auto dist : {Distribution::gaussian, Distribution::uniform}) {
    const auto a = gen_vectors({dist, 2, 3, 77});
    const auto b = gen_vectors({dist, 2, 3, 77});
    EXPECT_EQ(a.data(), b.data());
  }
  EXPECT_THROW(gen_vectors({Distribution::gaussian, 0, 3, 1}), ConfigError);
}

TEST(GenVectors, RowsDependOnlyOnSeedAndIndex) {
  const auto small = gen_vectors({Distribution::gaussian, 3, 16, 9});
  const auto large = gen_vectors({Distribution::gaussian, 10, 16, 9});
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = 0; j < 16; ++j) ASSERT_EQ(small.at(i, j), large.at(i, j));
  }
}

TEST(GenVectors, GaussianSampleMean) {
  const auto vs = gen_vectors({Distribution::gaussian, 1000, 1000, 31});
  double sum = 0.0, sq = 0.0;
  for (float x : vs.data()) {
    sum += x;
    sq += static_cast<double>(x) * x;
  }
  const double count = 1e6;
  EXPECT_LE(std::fabs(sum / count), 5.0 / std::sqrt(count));
  EXPECT_NEAR(sq / count, 1.0, 0.01);
}

TEST(GenVectors, UniformInUnitInterval) {
  const auto vs = gen_vectors({Distribution::uniform, 200, 500, 2});
  double sum = 0.0;
  for (float x : vs.data()) {
    ASSERT_GE(x, 0.0f);
    ASSERT_LT(x, 1.0f);
    sum += x;
  }
  EXPECT_NEAR(sum / 1e5, 0.5, 5.0 * std::sqrt(1.0 / 12.0 / 1e5));
}

TEST(Distributions, Names) {
  for (auto d : {Distribution::adversarial, Distribution::gaussian, Distribution::uniform}) {
    EXPECT_EQ(parse_distribution(distribution_name(d)), d);
  }
  EXPECT_THROW(parse_distribution("cauchy"), ConfigError);
}

TEST(BinaryFormat, RoundTripIsBitIdentical) {
  std::mt19937_64 rng(1);
  std::vector<float> data(7 * 5);
  std::normal_distribution<float> normal;
  for (auto& x : data) x = normal(rng);
  data[3] = -0.0f;
  data[4] = 1e-40f;  // subnormal
  const VectorSet vs(7, 5, data);
  std::stringstream buf;
  write_binary(buf, vs);
  EXPECT_EQ(buf.str().size(), 12u + 4u * 35u);
  const auto back = read_binary(buf);
  ASSERT_EQ(back.rows(), 7u);
  ASSERT_EQ(back.dim(), 5u);
  EXPECT_EQ(std::memcmp(back.data().data(), data.data(), data.size() * sizeof(float)), 0);
}

TEST(BinaryFormat, LittleEndianHeader) {
  std::stringstream buf;
  write_binary(buf, VectorSet(2, 1, {1.0f, 2.0f}));
  const std::string s = buf.str();
  EXPECT_EQ(s.substr(0, 4), "MEB1");
  EXPECT_EQ(static_cast<unsigned char>(s[4]), 2);
  EXPECT_EQ(static_cast<unsigned char>(s[8]), 1);
  // 1.0f = 0x3f800000 stored low byte first.
  EXPECT_EQ(static_cast<unsigned char>(s[12]), 0x00);
  EXPECT_EQ(static_cast<unsigned char>(s[15]), 0x3f);
}

IoErrorKind binary_error(const std::string& bytes) {
  std::stringstream in(bytes);
  try {
    read_binary(in);
  } catch (const IoError& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no error";
  return IoErrorKind::parse;
}

TEST(BinaryFormat, Errors) {
  EXPECT_EQ(binary_error("XXXX"), IoErrorKind::bad_magic);
  EXPECT_EQ(binary_error("ME"), IoErrorKind::truncated);
  EXPECT_EQ(binary_error("MEB1\x01"), IoErrorKind::truncated);
  std::stringstream full;
  write_binary(full, VectorSet(2, 2, {1, 2, 3, 4}));
  const std::string s = full.str();
  EXPECT_EQ(binary_error(s.substr(0, s.size() - 1)), IoErrorKind::truncated);
  EXPECT_EQ(binary_error(std::string("MEB1") + std::string(8, '\0')), IoErrorKind::dimension_mismatch);
}

TEST(CsvFormat, SingleRow) {
  std::stringstream in("1,2,3\n");
  const auto vs = read_csv(in);
  EXPECT_EQ(vs.rows(), 1u);
  EXPECT_EQ(vs.dim(), 3u);
  EXPECT_EQ(vs.data(), (std::vector<float>{1, 2, 3}));
}

TEST(CsvFormat, RoundTrip) {
  std::mt19937_64 rng(2);
  std::vector<float> data(4 * 6);
  std::normal_distribution<float> normal;
  for (auto& x : data) x = normal(rng);
  std::stringstream buf;
  write_csv(buf, VectorSet(4, 6, data));
  EXPECT_EQ(read_csv(buf).data(), data);
}

TEST(CsvFormat, Errors) {
  std::stringstream ragged("1,2,3\n4,5\n");
  try {
    read_csv(ragged);
    FAIL();
  } catch (const IoError& e) {
    EXPECT_EQ(e.kind(), IoErrorKind::dimension_mismatch);
  }
  std::stringstream junk("1,abc\n");
  try {
    read_csv(junk);
    FAIL();
  } catch (const IoError& e) {
    EXPECT_EQ(e.kind(), IoErrorKind::parse);
  }
  std::stringstream empty("\n\n");
  EXPECT_THROW(read_csv(empty), IoError);
}

TEST_F(TempDir, DatasetFilesByExtension) {
  const VectorSet vs(2, 3, {1.5f, -2, 3, 4, 5, 6});
  for (const char* name : {"d.bin", "d.csv"}) {
    write_dataset(dir_ / name, vs);
    EXPECT_EQ(read_dataset(dir_ / name).data(), vs.data());
  }
  std::ifstream csv(dir_ / "d.csv");
  std::string first;
  std::getline(csv, first);
  EXPECT_EQ(first, "1.5,-2,3");
}

TEST_F(TempDir, ErrorsNameThePath) {
  const auto missing = dir_ / "missing.bin";
  try {
    read_dataset(missing);
    FAIL();
  } catch (const IoError& e) {
    EXPECT_EQ(e.kind(), IoErrorKind::open_failed);
    EXPECT_NE(std::string(e.what()).find("missing.bin"), std::string::npos);
  }
  std::ofstream(dir_ / "bad.bin") << "NOPE0000000000";
  try {
    read_dataset(dir_ / "bad.bin");
    FAIL();
  } catch (const IoError& e) {
    EXPECT_EQ(e.kind(), IoErrorKind::bad_magic);
    EXPECT_NE(std::string(e.what()).find("bad.bin"), std::string::npos);
  }
}

TEST_F(TempDir, QueryFilesHoldOneVector) {
  write_query(dir_ / "q.bin", Query({1, 2, 3}));
  const auto q = read_query(dir_ / "q.bin");
  EXPECT_EQ(q.dim(), 3u);
  EXPECT_EQ(q.coord_bound(), 3.0);
  write_dataset(dir_ / "two.bin", VectorSet(2, 1, {1, 2}));
  try {
    read_query(dir_ / "two.bin");
    FAIL();
  } catch (const IoError& e) {
    EXPECT_EQ(e.kind(), IoErrorKind::dimension_mismatch);
  }
}

}  // namespace
}  // namespace mabbp
