#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <string>

#include "mcd/error.hpp"
#include "mcd/io.hpp"

namespace mcd {

/// Tunable constants of the constructions. C2 and c default to the values
/// measured by `calibrate` with the reference calibration seed; the rest are
/// fixed choices or derived through C1 = 9 C2 C3^2 and C4 = 9 C1.
struct Constants {
  static constexpr long kCalibratedC2 = 2;
  static constexpr long kCalibratedC = 16;

  long C1 = 9 * kCalibratedC2 * 4 * 4;
  long C2 = kCalibratedC2;
  long C3 = 4;
  long C4 = 9 * 9 * kCalibratedC2 * 4 * 4;
  long c = kCalibratedC;
  long n0 = 8;
  long m0 = 20;
  long max_trials = 100;
  std::map<std::string, std::string> provenance{
      {"C1", "default"}, {"C2", "calibrated"}, {"C3", "default"}, {"C4", "default"},
      {"c", "calibrated"}, {"n0", "default"}, {"m0", "default"}, {"max_trials", "default"}};

  /// Re-derives C1 and C4 from C2 and C3 unless they were set by the user.
  void derive() {
    if (provenance["C1"] != "user") C1 = 9 * C2 * C3 * C3;
    if (provenance["C4"] != "user") C4 = 9 * C1;
  }

  void validate() const {
    for (long v : {C1, C2, C3, C4, c, n0, m0, max_trials})
      if (v < 1) throw Error(ErrorCode::ValidationError, "constants must be positive");
    if (c < 2) throw Error(ErrorCode::ValidationError, "increment divisor c must be at least 2");
  }
};

/// max(t, 2): the logarithms below are meaningless at t = 1.
inline int t_hat(int t) { return std::max(t, 2); }

inline double log2_t_hat(int t) { return std::log2(static_cast<double>(t_hat(t))); }

namespace io {

inline Json constants_json(const Constants& k) {
  Json j;
  j["version"] = "constants/1";
  const std::pair<const char*, long> fields[] = {{"C1", k.C1}, {"C2", k.C2}, {"C3", k.C3}, {"C4", k.C4},
                                                 {"c", k.c},   {"n0", k.n0}, {"m0", k.m0}, {"max_trials", k.max_trials}};
  for (const auto& [name, value] : fields) {
    Json f;
    f["value"] = value;
    f["provenance"] = k.provenance.at(name);
    j[name] = std::move(f);
  }
  return j;
}

/// Fields missing from the document keep their defaults; present fields are
/// taken with the provenance recorded in the file ("user" if absent).
inline Constants constants_from_json(const Json& j) {
  require_version(j, "constants/1");
  Constants k;
  std::pair<const char*, long*> fields[] = {{"C1", &k.C1}, {"C2", &k.C2}, {"C3", &k.C3}, {"C4", &k.C4},
                                            {"c", &k.c},   {"n0", &k.n0}, {"m0", &k.m0}, {"max_trials", &k.max_trials}};
  for (auto& [name, slot] : fields) {
    if (!j.contains(name)) continue;
    const Json& f = j[name];
    if (f.is_number_integer()) {
      *slot = f.get<long>();
      k.provenance[name] = "user";
    } else if (f.is_object() && f.contains("value") && f["value"].is_number_integer()) {
      *slot = f["value"].get<long>();
      k.provenance[name] = f.value("provenance", std::string("user"));
    } else {
      throw Error(ErrorCode::FormatError, std::string("bad constant ") + name);
    }
  }
  k.derive();
  k.validate();
  return k;
}

}  // namespace io

}  // namespace mcd
