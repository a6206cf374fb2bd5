#ifndef ZOFW_DATAIO_HPP
#define ZOFW_DATAIO_HPP

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "zofw/rng.hpp"
#include "zofw/solvers.hpp"
#include "zofw/vector_ops.hpp"

namespace zofw {

/// Two-class dataset, densified. Labels are normalized to {-1, +1}; the
/// name records where the rows came from and how raw labels were mapped.
struct Dataset {
  Matrix features;
  std::vector<double> labels;
  std::string name;
};

/// Error raised by malformed input files (reported with the line number).
class DataFormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Reads "<label> <index>:<value> ..." lines, indices 1-based and ascending
/// per row. d is the largest index seen, missing entries are zero, row order
/// is preserved. Raw labels may use any two numeric classes ({0,1}, {-1,+1},
/// {1,2}, ...); the smaller class maps to -1, the larger to +1, and the
/// mapping is appended to the dataset name.
Dataset parse_libsvm(std::istream& in, std::string name = "libsvm");

/// Canonical form: ascending indices, zeros omitted, labels +1/-1, 17
/// significant digits. parse(serialize(ds)) reproduces ds exactly whenever
/// the last column holds at least one nonzero.
void serialize_libsvm(const Dataset& ds, std::ostream& out);

/// Linearly separable draws with label noise: rows are standard normal, the
/// clean label is the sign of the inner product with a random unit vector,
/// and each label flips independently with probability noise.
Dataset synthesize_classification(std::int64_t n, std::int64_t d, double noise,
                                  SeededRng& rng);

/// Seeded shuffle then prefix split; sizes floor(n * fraction) and the rest.
std::pair<Dataset, Dataset> split(const Dataset& ds, double train_fraction,
                                  SeededRng& rng);

/// Header "t,loss,gap,queries,diag_queries,dist_z_step,dist_xz", one row per
/// record, reals at 17 significant digits (lossless for doubles), missing
/// gap as an empty field.
void write_trace_csv(const RunTrace& trace, std::ostream& out);

RunTrace read_trace_csv(std::istream& in);

}  // namespace zofw

#endif  // ZOFW_DATAIO_HPP
