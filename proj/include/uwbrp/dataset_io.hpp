#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "uwbrp/pose.hpp"
#include "uwbrp/range_matrix.hpp"

namespace uwbrp {

/// One 50 Hz dataset row: timestamp, optional ground-truth world poses of
/// both robots, and the N^2 raw ranges (NaN = dropped sample).
struct DatasetRecord {
  double t = 0.0;
  std::optional<Pose2D> gt_a;
  std::optional<Pose2D> gt_b;
  RangeMatrix ranges{4};
};

// CSV column layout:
//   t,gtA_x,gtA_y,gtA_theta,gtB_x,gtB_y,gtB_theta,z_11,...,z_NN
// with the range block row-major in (i, j). Ground-truth cells may be
// empty; empty range cells read back as NaN.
std::string dataset_csv_header(int antenna_count);
std::string format_dataset_csv(const std::vector<DatasetRecord>& records);

void write_dataset_csv(const std::filesystem::path& path,
                       const std::vector<DatasetRecord>& records);

// Accepts files with or without the header line; throws ParseError with
// the offending 1-based line number.
std::vector<DatasetRecord> read_dataset_csv(const std::filesystem::path& path);
std::vector<DatasetRecord> parse_dataset_csv(const std::string& text);

}  // namespace uwbrp
