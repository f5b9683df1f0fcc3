#include "uwbrp/dataset_io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "uwbrp/errors.hpp"

namespace uwbrp {

namespace {

std::string format_double(double v) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  (void)ec;
  return std::string(buf, ptr);
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    if (comma == std::string::npos) {
      out.push_back(line.substr(start));
      break;
    }
    out.push_back(line.substr(start, comma - start));
    start = comma + 1;
  }
  return out;
}

std::optional<double> parse_cell(const std::string& cell, std::size_t line_no) {
  std::size_t a = cell.find_first_not_of(" \t\r");
  if (a == std::string::npos) {
    return std::nullopt;  // empty cell
  }
  std::size_t b = cell.find_last_not_of(" \t\r");
  double v = 0.0;
  const char* begin = cell.data() + a;
  const char* end = cell.data() + b + 1;
  auto [ptr, ec] = std::from_chars(begin, end, v);
  if (ec != std::errc{} || ptr != end) {
    throw ParseError("cannot parse number \"" + cell + "\"", line_no);
  }
  return v;
}

}  // namespace

std::string dataset_csv_header(int antenna_count) {
  std::ostringstream out;
  out << "t,gtA_x,gtA_y,gtA_theta,gtB_x,gtB_y,gtB_theta";
  for (int i = 1; i <= antenna_count; ++i) {
    for (int j = 1; j <= antenna_count; ++j) {
      out << ",z_" << i << j;
    }
  }
  return out.str();
}

std::string format_dataset_csv(const std::vector<DatasetRecord>& records) {
  if (records.empty()) {
    throw NoDataError("cannot format an empty dataset");
  }
  const int n = records.front().ranges.antenna_count();
  std::ostringstream out;
  out << dataset_csv_header(n) << "\n";
  for (const auto& rec : records) {
    if (rec.ranges.antenna_count() != n) {
      throw ShapeError("dataset records have inconsistent antenna counts");
    }
    out << format_double(rec.t);
    for (const auto& gt : {rec.gt_a, rec.gt_b}) {
      if (gt) {
        out << ',' << format_double(gt->x) << ',' << format_double(gt->y) << ','
            << format_double(gt->theta);
      } else {
        out << ",,,";
      }
    }
    for (int i = 1; i <= n; ++i) {
      for (int j = 1; j <= n; ++j) {
        const double v = rec.ranges.at(i, j);
        out << ',';
        if (!std::isnan(v)) {
          out << format_double(v);
        }
      }
    }
    out << "\n";
  }
  return out.str();
}

void write_dataset_csv(const std::filesystem::path& path,
                       const std::vector<DatasetRecord>& records) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw IoError("cannot write dataset: " + path.string());
  }
  out << format_dataset_csv(records);
}

std::vector<DatasetRecord> parse_dataset_csv(const std::string& text) {
  std::vector<DatasetRecord> records;
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  int n = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') {
      line.pop_back();
    }
    if (line.empty() || line[0] == '#') {
      continue;
    }
    if (line.rfind("t,", 0) == 0) {
      continue;  // header
    }
    const auto cells = split_csv(line);
    if (n == 0) {
      const int range_cols = static_cast<int>(cells.size()) - 7;
      const int guess = static_cast<int>(std::lround(std::sqrt(std::max(0, range_cols))));
      if (range_cols < 1 || guess * guess != range_cols) {
        throw ParseError("expected 7 + N^2 columns, got " + std::to_string(cells.size()),
                         line_no);
      }
      n = guess;
    }
    if (cells.size() != static_cast<std::size_t>(7 + n * n)) {
      throw ParseError("expected " + std::to_string(7 + n * n) + " columns, got " +
                       std::to_string(cells.size()),
                       line_no);
    }

    DatasetRecord rec;
    rec.ranges = RangeMatrix(n);
    const auto t = parse_cell(cells[0], line_no);
    if (!t) {
      throw ParseError("missing timestamp", line_no);
    }
    rec.t = *t;

    auto read_pose = [&](int base) -> std::optional<Pose2D> {
      const auto px = parse_cell(cells[base], line_no);
      const auto py = parse_cell(cells[base + 1], line_no);
      const auto pt = parse_cell(cells[base + 2], line_no);
      if (!px && !py && !pt) {
        return std::nullopt;
      }
      if (!px || !py || !pt) {
        throw ParseError("ground truth pose must be fully present or fully empty", line_no);
      }
      return Pose2D(*px, *py, *pt);
    };
    rec.gt_a = read_pose(1);
    rec.gt_b = read_pose(4);

    int col = 7;
    for (int i = 1; i <= n; ++i) {
      for (int j = 1; j <= n; ++j, ++col) {
        const auto v = parse_cell(cells[col], line_no);
        rec.ranges.at(i, j) = v ? *v : std::numeric_limits<double>::quiet_NaN();
      }
    }
    records.push_back(std::move(rec));
  }
  return records;
}

std::vector<DatasetRecord> read_dataset_csv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw IoError("cannot read dataset: " + path.string());
  }
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return parse_dataset_csv(text);
}

}  // namespace uwbrp
