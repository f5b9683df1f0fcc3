#include "uwbrp/calibration_table.hpp"

#include <cmath>
#include <fstream>

#include <json.hpp>

#include "uwbrp/errors.hpp"

namespace uwbrp {

CalibrationTable::CalibrationTable(int antenna_count) : n_(antenna_count) {
  if (antenna_count < 1) {
    throw ParameterError("CalibrationTable antenna count must be >= 1");
  }
  mu_.assign(static_cast<std::size_t>(n_) * n_, 0.0);
}

CalibrationTable::CalibrationTable(int antenna_count, const std::vector<double>& row_major_mu)
    : CalibrationTable(antenna_count) {
  if (row_major_mu.size() != mu_.size()) {
    throw ShapeError("CalibrationTable values size " + std::to_string(row_major_mu.size()) +
                     " does not match N^2 = " + std::to_string(mu_.size()));
  }
  for (double v : row_major_mu) {
    if (!std::isfinite(v)) {
      throw ParameterError("CalibrationTable entries must be finite");
    }
  }
  mu_ = row_major_mu;
}

std::size_t CalibrationTable::flat(int i, int j) const {
  if (i < 1 || i > n_ || j < 1 || j > n_) {
    throw IndexError("bias pair (" + std::to_string(i) + ", " + std::to_string(j) +
                     ") outside [1, " + std::to_string(n_) + "]");
  }
  return static_cast<std::size_t>(i - 1) * n_ + (j - 1);
}

std::string CalibrationTable::to_json() const {
  nlohmann::json rows = nlohmann::json::array();
  for (int i = 1; i <= n_; ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (int j = 1; j <= n_; ++j) {
      row.push_back(mu(i, j));
    }
    rows.push_back(row);
  }
  nlohmann::json doc;
  doc["N"] = n_;
  doc["mu"] = rows;
  return doc.dump(2) + "\n";
}

CalibrationTable CalibrationTable::from_json(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("calibration table JSON: ") + e.what(), 0);
  }
  if (!doc.contains("N") || !doc.contains("mu")) {
    throw ParameterError("calibration table JSON needs keys \"N\" and \"mu\"");
  }
  const int n = doc["N"].get<int>();
  std::vector<double> flat;
  flat.reserve(static_cast<std::size_t>(n) * n);
  const auto& rows = doc["mu"];
  if (!rows.is_array() || static_cast<int>(rows.size()) != n) {
    throw ShapeError("calibration table \"mu\" must be an NxN array");
  }
  for (const auto& row : rows) {
    if (!row.is_array() || static_cast<int>(row.size()) != n) {
      throw ShapeError("calibration table \"mu\" must be an NxN array");
    }
    for (const auto& v : row) {
      flat.push_back(v.get<double>());
    }
  }
  return CalibrationTable(n, flat);
}

void CalibrationTable::save(const std::filesystem::path& path) const {
  std::ofstream out(path);
  if (!out) {
    throw IoError("cannot write calibration table: " + path.string());
  }
  out << to_json();
}

CalibrationTable CalibrationTable::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw IoError("cannot read calibration table: " + path.string());
  }
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return from_json(text);
}

}  // namespace uwbrp
