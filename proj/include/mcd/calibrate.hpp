#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include "mcd/constants.hpp"
#include "mcd/generate.hpp"
#include "mcd/trapezoidal.hpp"
#include "mcd/two_color.hpp"

namespace mcd {

inline constexpr std::uint64_t kCalibrationSeed = 1;

struct DecompositionSample {
  std::string kind;
  int n = 0, t = 1;
  std::size_t cells = 0;
  double ratio = 0;  // cells / (n^2 + n t)
};

struct TwoColorSample {
  int t = 1, n = 0;
  std::size_t blue_out = 0, red_out = 0;
  double ratio = 0;  // n / min(|blue_out|, |red_out|)
};

struct Calibration {
  Constants constants;
  std::vector<DecompositionSample> decomposition;
  std::vector<TwoColorSample> two_color;
  double max_cell_ratio = 0;
  std::vector<double> max_realized_ratio;  // per t = 1..4
};

/// Measures C2 as the largest cells / (n^2 + n t) ratio over a suite of full
/// decompositions (all-crossing bundles included, since they maximise the
/// vertex count), and c as the largest realized n / min-side ratio of
/// two_color, per t in 1..4. Both are rounded up, c to at least 2.
inline Calibration calibrate(std::uint64_t seed = kCalibrationSeed, int runs = 4) {
  Calibration out;
  auto spec = [&](GeneratorKind kind, int n, int t, std::uint64_t s) {
    GeneratorSpec g;
    g.kind = kind;
    g.n = n;
    g.t = t;
    g.seed = derive_seed(seed, stream::kCalibrate, s);
    return g;
  };
  std::uint64_t counter = 0;
  for (int t = 1; t <= 4; ++t)
    for (int n : {8, 16, 32, 64})
      for (int r = 0; r < runs; ++r) {
        GeneratorKind kind = r == 0 ? GeneratorKind::AllCrossing : t == 1 ? GeneratorKind::RandomSegments : GeneratorKind::RandomTMonotone;
        if (kind == GeneratorKind::AllCrossing && t > 1) kind = GeneratorKind::RandomTMonotone;
        CurveFamily f = generate_family(spec(kind, n, t, counter++));
        std::size_t cells = vertical_decomposition(f).size();
        double ratio = static_cast<double>(cells) / static_cast<double>(n * n + n * f.t);
        out.decomposition.push_back({to_string(kind), n, f.t, cells, ratio});
        out.max_cell_ratio = std::max(out.max_cell_ratio, ratio);
      }
  out.max_realized_ratio.assign(4, 0);
  for (int t = 1; t <= 4; ++t)
    for (int r = 0; r < runs; ++r) {
      GeneratorSpec g = spec(t == 1 ? GeneratorKind::RandomSegments : GeneratorKind::RandomTMonotone, 64, t, counter++);
      Bicolored in = generate_bicolored(g);
      auto cfg = SamplerConfig::from(out.constants, derive_seed(seed, stream::kCalibrate, counter++));
      TwoColorCertificate c = two_color(in.blue, in.red, cfg, out.constants.C4);
      out.two_color.push_back({t, 64, c.blue_out.size(), c.red_out.size(), c.realized_ratio()});
      out.max_realized_ratio[static_cast<std::size_t>(t - 1)] =
          std::max(out.max_realized_ratio[static_cast<std::size_t>(t - 1)], c.realized_ratio());
    }
  Constants& k = out.constants;
  k.C2 = std::max(1L, static_cast<long>(std::ceil(out.max_cell_ratio - 1e-12)));
  double worst = *std::max_element(out.max_realized_ratio.begin(), out.max_realized_ratio.end());
  k.c = std::max(2L, static_cast<long>(std::ceil(worst - 1e-12)));
  k.provenance["C2"] = "calibrated";
  k.provenance["c"] = "calibrated";
  k.derive();
  return out;
}

namespace io {

inline Json calibration_json(const Calibration& c) {
  Json j;
  j["version"] = "calibration/1";
  j["constants"] = constants_json(c.constants);
  Json d = Json::array();
  for (const auto& s : c.decomposition)
    d.push_back({{"kind", s.kind}, {"n", s.n}, {"t", s.t}, {"cells", s.cells}, {"ratio", s.ratio}});
  Json t = Json::array();
  for (const auto& s : c.two_color)
    t.push_back({{"t", s.t}, {"n", s.n}, {"blue_out", s.blue_out}, {"red_out", s.red_out}, {"ratio", s.ratio}});
  j["decomposition"] = std::move(d);
  j["two_color"] = std::move(t);
  j["max_cell_ratio"] = c.max_cell_ratio;
  j["max_realized_ratio"] = c.max_realized_ratio;
  return j;
}

}  // namespace io

}  // namespace mcd
