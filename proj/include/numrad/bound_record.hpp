#pragma once

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <limits>
#include <string>
#include <utility>

namespace numrad {

/// One evaluated inequality lhs ≤ rhs.
struct BoundRecord {
  std::string bound_id;
  double lhs = 0.0;
  double rhs = 0.0;
  double slack = 0.0;      // rhs - lhs
  double tightness = 0.0;  // lhs / rhs, 0 for 0/0
  bool preconditions_met = true;
  std::string notes;
};

struct TolerancePolicy {
  double abs = 1e-9;
  double rel = 1e-9;
};

/// Shortest text that round-trips a double.
inline std::string format_real(double v) {
  char buf[32];
  for (int prec = 15; prec <= 17; ++prec) {
    std::snprintf(buf, sizeof buf, "%.*g", prec, v);
    if (std::strtod(buf, nullptr) == v) break;
  }
  return buf;
}

inline double tightness_ratio(double lhs, double rhs) {
  if (rhs == 0.0) {
    if (lhs == 0.0) return 0.0;
    return lhs > 0.0 ? std::numeric_limits<double>::infinity() : -std::numeric_limits<double>::infinity();
  }
  return lhs / rhs;
}

inline BoundRecord make_record(std::string id, double lhs, double rhs, bool preconditions_met = true,
                               std::string notes = {}) {
  BoundRecord r;
  r.bound_id = std::move(id);
  r.lhs = lhs;
  r.rhs = rhs;
  r.slack = rhs - lhs;
  r.tightness = tightness_ratio(lhs, rhs);
  r.preconditions_met = preconditions_met;
  r.notes = std::move(notes);
  return r;
}

/// lhs ≤ rhs + abs + rel·|rhs|.
inline bool holds(const BoundRecord& r, TolerancePolicy tol = {}) {
  return r.lhs <= r.rhs + tol.abs + tol.rel * std::abs(r.rhs);
}

/// Holds only thanks to the tolerance band: rhs < lhs ≤ rhs + band.
inline bool near_miss(const BoundRecord& r, TolerancePolicy tol = {}) { return holds(r, tol) && r.lhs > r.rhs; }

inline void append_note(BoundRecord& r, const std::string& note) {
  if (!r.notes.empty()) r.notes += "; ";
  r.notes += note;
}

}  // namespace numrad
