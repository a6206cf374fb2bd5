#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <sstream>
#include <vector>

#include "test_support.hpp"
#include "zofw/dataio.hpp"

using namespace zofw;

namespace {

bool same_matrix(const Matrix& a, const Matrix& b) {
  return a.rows == b.rows && a.cols == b.cols && a.data == b.data;
}

Dataset random_sparse_dataset(std::int64_t n, std::int64_t d, SeededRng& rng) {
  Dataset ds;
  ds.features = Matrix(n, d);
  ds.labels.resize(static_cast<std::size_t>(n));
  for (std::int64_t i = 0; i < n; ++i) {
    ds.labels[static_cast<std::size_t>(i)] = rng.uniform01() < 0.5 ? -1.0 : 1.0;
    for (std::int64_t j = 0; j < d; ++j) {
      if (rng.uniform01() < 0.3) {
        ds.features.at(i, j) = rng.normal();
      }
    }
  }
  // keep the last column occupied so the parsed width matches
  ds.features.at(0, d - 1) = 1.25;
  ds.name = "random";
  return ds;
}

}  // namespace

TEST_CASE("libsvm parsing fills missing indices with zeros") {
  std::stringstream in("+1 1:0.5 3:2.0\n-1 2:1.0\n");
  const Dataset ds = parse_libsvm(in);
  CHECK(ds.features.rows == 2);
  CHECK(ds.features.cols == 3);
  CHECK(ds.features.at(0, 0) == 0.5);
  CHECK(ds.features.at(0, 1) == 0.0);
  CHECK(ds.features.at(0, 2) == 2.0);
  CHECK(ds.features.at(1, 0) == 0.0);
  CHECK(ds.features.at(1, 1) == 1.0);
  CHECK(ds.features.at(1, 2) == 0.0);
  CHECK(ds.labels == std::vector<double>{1.0, -1.0});
}

TEST_CASE("a bare label line is an all-zero row") {
  std::stringstream in("+1\n-1 2:3.5\n");
  const Dataset ds = parse_libsvm(in);
  CHECK(ds.features.rows == 2);
  CHECK(ds.features.cols == 2);
  CHECK(ds.features.at(0, 0) == 0.0);
  CHECK(ds.features.at(0, 1) == 0.0);
}

TEST_CASE("label encodings found in the wild are normalized") {
  std::stringstream zero_one("0 1:1\n1 1:2\n");
  CHECK(parse_libsvm(zero_one).labels == std::vector<double>{-1.0, 1.0});
  std::stringstream one_two("2 1:1\n1 1:2\n");
  CHECK(parse_libsvm(one_two).labels == std::vector<double>{1.0, -1.0});
  std::stringstream pm("-1 1:1\n+1 1:2\n");
  CHECK(parse_libsvm(pm).labels == std::vector<double>{-1.0, 1.0});
}

TEST_CASE("parse errors carry line numbers") {
  std::stringstream bad_token("+1 1:0.5\n-1 2:abc\n");
  CHECK_THROWS_WITH_AS(parse_libsvm(bad_token),
                       doctest::Contains("line 2"), DataFormatError);

  std::stringstream three_labels("1 1:1\n2 1:1\n3 1:1\n");
  CHECK_THROWS_AS(parse_libsvm(three_labels), DataFormatError);

  std::stringstream descending("+1 3:1 2:1\n");
  CHECK_THROWS_AS(parse_libsvm(descending), DataFormatError);

  std::stringstream empty("");
  CHECK_THROWS_AS(parse_libsvm(empty), DataFormatError);
}

TEST_CASE("serialization canonicalizes: explicit zeros are dropped") {
  std::stringstream in("+1 1:0 2:3\n-1 1:1 3:0\n");
  const Dataset ds = parse_libsvm(in);
  std::stringstream out;
  serialize_libsvm(ds, out);
  CHECK(out.str() == "+1 2:3\n-1 1:1\n");
}

TEST_CASE("serialize then parse reproduces the matrix exactly") {
  SeededRng rng(1111);
  for (int trial = 0; trial < 30; ++trial) {
    const Dataset ds = random_sparse_dataset(40, 8, rng);
    std::stringstream buf;
    serialize_libsvm(ds, buf);
    const Dataset back = parse_libsvm(buf);
    CHECK(same_matrix(ds.features, back.features));
    CHECK(ds.labels == back.labels);
  }
}

TEST_CASE("synthetic labels follow the hyperplane and the noise rate") {
  SeededRng rng0(5);
  const Dataset clean = synthesize_classification(400, 6, 0.0, rng0);
  SeededRng rng1(5);
  const Dataset flipped = synthesize_classification(400, 6, 1.0, rng1);
  // noise = 1 negates every noiseless label (same seed, same draws)
  for (std::size_t i = 0; i < clean.labels.size(); ++i) {
    CHECK(flipped.labels[i] == -clean.labels[i]);
  }

  SeededRng rng2(6);
  const Dataset noisy = synthesize_classification(10000, 4, 0.1, rng2);
  SeededRng rng3(6);
  const Dataset base = synthesize_classification(10000, 4, 0.0, rng3);
  std::int64_t flips = 0;
  for (std::size_t i = 0; i < noisy.labels.size(); ++i) {
    if (noisy.labels[i] != base.labels[i]) ++flips;
  }
  const double rate = static_cast<double>(flips) / 10000.0;
  CHECK(std::abs(rate - 0.1) <= 3.0 * std::sqrt(0.1 * 0.9 / 10000.0));
}

TEST_CASE("split is a seeded permutation with exact sizes") {
  SeededRng data_rng(31);
  const Dataset ds = random_sparse_dataset(10, 3, data_rng);

  SeededRng rng_a(77), rng_b(77);
  const auto [train_a, test_a] = split(ds, 0.5, rng_a);
  const auto [train_b, test_b] = split(ds, 0.5, rng_b);
  CHECK(train_a.features.rows == 5);
  CHECK(test_a.features.rows == 5);
  CHECK(same_matrix(train_a.features, train_b.features));
  CHECK(same_matrix(test_a.features, test_b.features));

  // multiset of rows is preserved: compare sorted row signatures
  auto signatures = [](const Dataset& d1, const Dataset& d2) {
    std::vector<std::vector<double>> rows;
    for (const Dataset* part : {&d1, &d2}) {
      for (std::int64_t i = 0; i < part->features.rows; ++i) {
        std::vector<double> row;
        row.push_back(part->labels[static_cast<std::size_t>(i)]);
        for (std::int64_t j = 0; j < part->features.cols; ++j) {
          row.push_back(part->features.at(i, j));
        }
        rows.push_back(std::move(row));
      }
    }
    std::sort(rows.begin(), rows.end());
    return rows;
  };
  const Dataset whole_as_half = ds;
  auto original = signatures(whole_as_half, Dataset{Matrix(0, 3), {}, ""});
  auto recombined = signatures(train_a, test_a);
  CHECK(original == recombined);

  SeededRng rng_c(1);
  CHECK_THROWS_AS(split(ds, 0.0, rng_c), std::invalid_argument);
  CHECK_THROWS_AS(split(ds, 1.0, rng_c), std::invalid_argument);
}

TEST_CASE("trace csv layout") {
  RunTrace empty;
  std::stringstream out;
  write_trace_csv(empty, out);
  CHECK(out.str() == "t,loss,gap,queries,diag_queries,dist_z_step,dist_xz\n");

  RunTrace one;
  TraceRecord rec;
  rec.t = 0;
  rec.mean_loss = 0.125;
  rec.cumulative_queries = 10;
  rec.diagnostic_queries = 2;
  rec.dist_z_step = 0.5;
  rec.dist_xz = 0.25;
  one.records.push_back(rec);
  std::stringstream out1;
  write_trace_csv(one, out1);
  std::string text = out1.str();
  CHECK(std::count(text.begin(), text.end(), '\n') == 2);
  CHECK(text.find("0,0.125,,10,2,0.5,0.25\n") != std::string::npos);
}

TEST_CASE("trace csv round trip is bit exact") {
  SeededRng rng(909);
  RunTrace trace;
  std::uint64_t queries = 0;
  for (std::int64_t t = 0; t < 100; ++t) {
    TraceRecord rec;
    rec.t = t;
    rec.mean_loss = rng.normal() * std::pow(10.0, rng.uniform_index(7) - 3);
    if (rng.uniform01() < 0.5) rec.fw_gap = std::abs(rng.normal());
    queries += 1 + static_cast<std::uint64_t>(rng.uniform_index(1000));
    rec.cumulative_queries = queries;
    rec.diagnostic_queries = static_cast<std::uint64_t>(rng.uniform_index(50));
    rec.dist_z_step = std::abs(rng.normal()) * 1e-3;
    rec.dist_xz = std::abs(rng.normal()) * 1e-3;
    trace.records.push_back(rec);
  }
  std::stringstream buf;
  write_trace_csv(trace, buf);
  const RunTrace back = read_trace_csv(buf);
  REQUIRE(back.records.size() == trace.records.size());
  for (std::size_t i = 0; i < trace.records.size(); ++i) {
    const auto& a = trace.records[i];
    const auto& b = back.records[i];
    CHECK(a.t == b.t);
    CHECK(a.mean_loss == b.mean_loss);
    CHECK(a.fw_gap.has_value() == b.fw_gap.has_value());
    if (a.fw_gap) CHECK(*a.fw_gap == *b.fw_gap);
    CHECK(a.cumulative_queries == b.cumulative_queries);
    CHECK(a.diagnostic_queries == b.diagnostic_queries);
    CHECK(a.dist_z_step == b.dist_z_step);
    CHECK(a.dist_xz == b.dist_xz);
  }

  std::stringstream bad_header("x,y\n");
  CHECK_THROWS_AS(read_trace_csv(bad_header), DataFormatError);
}
