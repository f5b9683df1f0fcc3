#pragma once

#include <string>

namespace uwbrp {

/// The five estimation algorithms, distinguished by which measurement
/// preprocessing feeds the objective and whether residuals are weighted.
enum class Variant {
  Raw,            // latest raw sample, no bias shift, unweighted objective
  ShiftOnly,      // latest raw sample minus mu, unweighted
  MovingAvgOnly,  // window mean, no bias shift, unweighted
  Unweighted,     // window mean minus mu, unweighted
  Weighted,       // window mean minus mu, obstruction-weighted objective
};

std::string to_string(Variant v);
Variant variant_from_string(const std::string& name);  // ParameterError on unknown

inline bool uses_weighted_objective(Variant v) { return v == Variant::Weighted; }

}  // namespace uwbrp
