#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace uwbrp {

/// Per antenna-pair mean range bias mu_ij [m], subtracted from the moving
/// average when forming calibrated measurements. Indexed like RangeMatrix.
class CalibrationTable {
 public:
  explicit CalibrationTable(int antenna_count);
  CalibrationTable(int antenna_count, const std::vector<double>& row_major_mu);

  int antenna_count() const { return n_; }

  double mu(int i, int j) const { return mu_[flat(i, j)]; }
  double& mu(int i, int j) { return mu_[flat(i, j)]; }

  const std::vector<double>& values() const { return mu_; }

  // JSON schema: {"N": 4, "mu": [[...], [...], [...], [...]]}
  std::string to_json() const;
  static CalibrationTable from_json(const std::string& text);

  void save(const std::filesystem::path& path) const;
  static CalibrationTable load(const std::filesystem::path& path);

 private:
  std::size_t flat(int i, int j) const;

  int n_ = 0;
  std::vector<double> mu_;
};

}  // namespace uwbrp
