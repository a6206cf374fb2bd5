#include "zofw/dataio.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <istream>
#include <map>
#include <numeric>
#include <ostream>
#include <sstream>

namespace zofw {

namespace {

struct SparseRow {
  double label = 0.0;
  std::vector<std::pair<std::int64_t, double>> entries;  // 1-based indices
};

[[noreturn]] void fail_at(std::int64_t line_no, const std::string& what) {
  throw DataFormatError("line " + std::to_string(line_no) + ": " + what);
}

double parse_real(const std::string& token, std::int64_t line_no) {
  const char* begin = token.data();
  const char* end = begin + token.size();
  if (begin != end && *begin == '+') ++begin;  // from_chars rejects '+'
  double v = 0.0;
  const auto res = std::from_chars(begin, end, v);
  if (begin == end || res.ec != std::errc{} || res.ptr != end) {
    fail_at(line_no, "non-numeric token '" + token + "'");
  }
  return v;
}

std::uint64_t parse_u64(const std::string& token, std::int64_t line_no) {
  std::uint64_t v = 0;
  const auto res = std::from_chars(token.data(), token.data() + token.size(), v);
  if (res.ec != std::errc{} || res.ptr != token.data() + token.size()) {
    fail_at(line_no, "bad integer '" + token + "'");
  }
  return v;
}

std::int64_t parse_index(const std::string& token, std::int64_t line_no) {
  std::int64_t v = 0;
  const auto* begin = token.data();
  const auto* end = token.data() + token.size();
  const auto res = std::from_chars(begin, end, v);
  if (res.ec != std::errc{} || res.ptr != end || v < 1) {
    fail_at(line_no, "bad feature index '" + token + "'");
  }
  return v;
}

void format_real(std::string& out, double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  out += buf;
}

}  // namespace

Dataset parse_libsvm(std::istream& in, std::string name) {
  std::vector<SparseRow> rows;
  std::int64_t max_index = 0;
  std::string line;
  std::int64_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream ls(line);
    std::string token;
    if (!(ls >> token)) continue;  // blank line
    SparseRow row;
    row.label = parse_real(token, line_no);
    std::int64_t prev_index = 0;
    while (ls >> token) {
      const auto colon = token.find(':');
      if (colon == std::string::npos) {
        fail_at(line_no, "expected index:value, got '" + token + "'");
      }
      const std::int64_t idx = parse_index(token.substr(0, colon), line_no);
      const double val = parse_real(token.substr(colon + 1), line_no);
      if (idx <= prev_index) {
        fail_at(line_no, "feature indices must be ascending");
      }
      if (!std::isfinite(val)) fail_at(line_no, "non-finite feature value");
      prev_index = idx;
      row.entries.emplace_back(idx, val);
    }
    max_index = std::max(max_index, prev_index);
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw DataFormatError("empty dataset");

  std::map<double, std::int64_t> classes;
  for (const auto& r : rows) ++classes[r.label];
  if (classes.size() > 2) {
    throw DataFormatError("more than two distinct labels (" +
                          std::to_string(classes.size()) + ")");
  }

  // Two classes: smaller raw label -> -1, larger -> +1. A single class maps
  // by its sign.
  double neg_raw = 0.0, pos_raw = 0.0;
  bool have_two = classes.size() == 2;
  if (have_two) {
    neg_raw = classes.begin()->first;
    pos_raw = std::next(classes.begin())->first;
  } else {
    pos_raw = classes.begin()->first;
  }
  auto map_label = [&](double raw) {
    if (have_two) return raw == neg_raw ? -1.0 : 1.0;
    return raw > 0.0 ? 1.0 : -1.0;
  };

  const std::int64_t n = static_cast<std::int64_t>(rows.size());
  const std::int64_t d = std::max<std::int64_t>(max_index, 1);
  Dataset ds;
  ds.features = Matrix(n, d);
  ds.labels.resize(static_cast<std::size_t>(n));
  for (std::int64_t i = 0; i < n; ++i) {
    const auto& r = rows[static_cast<std::size_t>(i)];
    ds.labels[static_cast<std::size_t>(i)] = map_label(r.label);
    for (const auto& [idx, val] : r.entries) {
      ds.features.at(i, idx - 1) = val;
    }
  }
  std::string mapping = have_two
                            ? " [labels " + std::to_string(neg_raw) + "->-1, " +
                                  std::to_string(pos_raw) + "->+1]"
                            : " [single raw label]";
  ds.name = std::move(name) + mapping;
  return ds;
}

void serialize_libsvm(const Dataset& ds, std::ostream& out) {
  std::string buf;
  for (std::int64_t i = 0; i < ds.features.rows; ++i) {
    buf.clear();
    buf += ds.labels[static_cast<std::size_t>(i)] > 0.0 ? "+1" : "-1";
    for (std::int64_t j = 0; j < ds.features.cols; ++j) {
      const double v = ds.features.at(i, j);
      if (v == 0.0) continue;
      buf += ' ';
      buf += std::to_string(j + 1);
      buf += ':';
      format_real(buf, v);
    }
    buf += '\n';
    out << buf;
    if (!out) throw DataFormatError("serialize_libsvm: write failure");
  }
}

Dataset synthesize_classification(std::int64_t n, std::int64_t d, double noise,
                                  SeededRng& rng) {
  if (n < 1 || d < 1) {
    throw std::invalid_argument("synthesize_classification: n, d must be >= 1");
  }
  if (noise < 0.0 || noise > 1.0) {
    throw std::invalid_argument("synthesize_classification: noise outside [0, 1]");
  }
  DenseVector normal_dir(static_cast<std::size_t>(d));
  double nrm = 0.0;
  for (auto& v : normal_dir) {
    v = rng.normal();
    nrm += v * v;
  }
  nrm = std::sqrt(nrm);
  if (nrm == 0.0) {
    normal_dir[0] = 1.0;
    nrm = 1.0;
  }
  for (auto& v : normal_dir) v /= nrm;

  Dataset ds;
  ds.features = Matrix(n, d);
  ds.labels.resize(static_cast<std::size_t>(n));
  for (std::int64_t i = 0; i < n; ++i) {
    double margin = 0.0;
    for (std::int64_t j = 0; j < d; ++j) {
      const double v = rng.normal();
      ds.features.at(i, j) = v;
      margin += v * normal_dir[static_cast<std::size_t>(j)];
    }
    double label = margin >= 0.0 ? 1.0 : -1.0;
    if (rng.uniform01() < noise) label = -label;
    ds.labels[static_cast<std::size_t>(i)] = label;
  }
  ds.name = "synthetic(n=" + std::to_string(n) + ",d=" + std::to_string(d) +
            ",noise=" + std::to_string(noise) + ")";
  return ds;
}

std::pair<Dataset, Dataset> split(const Dataset& ds, double train_fraction,
                                  SeededRng& rng) {
  if (!(train_fraction > 0.0 && train_fraction < 1.0)) {
    throw std::invalid_argument("split: fraction outside (0, 1)");
  }
  const std::int64_t n = ds.features.rows;
  const std::int64_t d = ds.features.cols;
  std::vector<std::int64_t> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), std::int64_t{0});
  for (std::int64_t i = n - 1; i > 0; --i) {
    const std::int64_t j = rng.uniform_index(i + 1);
    std::swap(order[static_cast<std::size_t>(i)],
              order[static_cast<std::size_t>(j)]);
  }
  const std::int64_t n_train =
      static_cast<std::int64_t>(static_cast<double>(n) * train_fraction);

  auto take = [&](std::int64_t from, std::int64_t count, const char* tag) {
    Dataset part;
    part.features = Matrix(count, d);
    part.labels.resize(static_cast<std::size_t>(count));
    for (std::int64_t i = 0; i < count; ++i) {
      const std::int64_t src = order[static_cast<std::size_t>(from + i)];
      for (std::int64_t j = 0; j < d; ++j) {
        part.features.at(i, j) = ds.features.at(src, j);
      }
      part.labels[static_cast<std::size_t>(i)] =
          ds.labels[static_cast<std::size_t>(src)];
    }
    part.name = ds.name + tag;
    return part;
  };
  return {take(0, n_train, " [train]"), take(n_train, n - n_train, " [test]")};
}

void write_trace_csv(const RunTrace& trace, std::ostream& out) {
  out << "t,loss,gap,queries,diag_queries,dist_z_step,dist_xz\n";
  std::string buf;
  for (const auto& r : trace.records) {
    buf.clear();
    buf += std::to_string(r.t);
    buf += ',';
    format_real(buf, r.mean_loss);
    buf += ',';
    if (r.fw_gap) format_real(buf, *r.fw_gap);
    buf += ',';
    buf += std::to_string(r.cumulative_queries);
    buf += ',';
    buf += std::to_string(r.diagnostic_queries);
    buf += ',';
    format_real(buf, r.dist_z_step);
    buf += ',';
    format_real(buf, r.dist_xz);
    buf += '\n';
    out << buf;
    if (!out) throw DataFormatError("write_trace_csv: write failure");
  }
}

RunTrace read_trace_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw DataFormatError("trace csv: empty stream");
  if (line != "t,loss,gap,queries,diag_queries,dist_z_step,dist_xz") {
    throw DataFormatError("trace csv: unexpected header '" + line + "'");
  }
  RunTrace trace;
  std::int64_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::vector<std::string> fields;
    std::size_t pos = 0;
    while (true) {
      const auto comma = line.find(',', pos);
      if (comma == std::string::npos) {
        fields.push_back(line.substr(pos));
        break;
      }
      fields.push_back(line.substr(pos, comma - pos));
      pos = comma + 1;
    }
    if (fields.size() != 7) fail_at(line_no, "expected 7 fields");
    TraceRecord rec;
    rec.t = static_cast<std::int64_t>(parse_u64(fields[0], line_no));
    rec.mean_loss = parse_real(fields[1], line_no);
    if (!fields[2].empty()) rec.fw_gap = parse_real(fields[2], line_no);
    rec.cumulative_queries = parse_u64(fields[3], line_no);
    rec.diagnostic_queries = parse_u64(fields[4], line_no);
    rec.dist_z_step = parse_real(fields[5], line_no);
    rec.dist_xz = parse_real(fields[6], line_no);
    trace.records.push_back(std::move(rec));
  }
  return trace;
}

}  // namespace zofw
