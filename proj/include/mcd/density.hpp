#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "mcd/constants.hpp"
#include "mcd/curve.hpp"
#include "mcd/random.hpp"
#include "mcd/two_color.hpp"

namespace mcd {

enum class Mode { Crossing, Disjoint };

inline const char* to_string(Mode m) { return m == Mode::Crossing ? "crossing" : "disjoint"; }

inline Mode mode_from(const std::string& s) {
  if (s == "crossing") return Mode::Crossing;
  if (s == "disjoint") return Mode::Disjoint;
  throw Error(ErrorCode::ValidationError, "mode must be crossing or disjoint");
}

/// The mode relation on a family, read off its intersection matrix.
class ModeRelation {
 public:
  ModeRelation(RelationMatrix meet, Mode mode) : meet_(std::move(meet)), mode_(mode) {}
  ModeRelation(const CurveFamily& f, Mode mode) : ModeRelation(intersection_matrix(f), mode) {}

  bool operator()(std::size_t i, std::size_t j) const { return i != j && meet_(i, j) == (mode_ == Mode::Crossing); }
  Mode mode() const { return mode_; }
  std::size_t size() const { return meet_.size(); }

 private:
  RelationMatrix meet_;
  Mode mode_;
};

using Block = std::vector<std::size_t>;

inline std::size_t related_pairs(const ModeRelation& rel, std::span<const std::size_t> a, std::span<const std::size_t> b) {
  std::size_t c = 0;
  for (auto i : a)
    for (auto j : b) c += rel(i, j);
  return c;
}

/// Fraction of pairs in a x b having the mode relation.
inline Rational pair_density(const ModeRelation& rel, std::span<const std::size_t> a, std::span<const std::size_t> b) {
  if (a.empty() || b.empty()) throw Error(ErrorCode::EmptySide, "pair density of an empty side");
  return ratio(static_cast<long>(related_pairs(rel, a, b)), static_cast<long>(a.size() * b.size()));
}

inline Block minus(std::span<const std::size_t> a, std::span<const std::size_t> z) {
  Block out;
  for (auto i : a)
    if (std::find(z.begin(), z.end(), i) == z.end()) out.push_back(i);
  return out;
}

/// Densest of (z1, b\z2), (a\z1, z2), (a\z1, b\z2); first listed on ties,
/// empty blocks skipped.
inline std::pair<Block, Block> increment_step(const ModeRelation& rel, std::span<const std::size_t> a,
                                              std::span<const std::size_t> b, std::span<const std::size_t> z1,
                                              std::span<const std::size_t> z2) {
  Block ra = minus(a, z1), rb = minus(b, z2);
  std::pair<Block, Block> blocks[] = {{Block(z1.begin(), z1.end()), rb}, {ra, Block(z2.begin(), z2.end())}, {ra, rb}};
  std::optional<std::size_t> best;
  Rational best_d;
  for (std::size_t k = 0; k < 3; ++k) {
    if (blocks[k].first.empty() || blocks[k].second.empty()) continue;
    Rational d = pair_density(rel, blocks[k].first, blocks[k].second);
    if (!best || d > best_d) {
      best = k;
      best_d = d;
    }
  }
  if (!best) throw Error(ErrorCode::EmptySide, "every increment block is empty");
  return blocks[*best];
}

struct TraceStep {
  std::size_t size_a = 0, size_b = 0;
  Rational density;
  std::string outcome;  // "increment", "certified", "exhaustive"
  long c_used = 0;
};

struct DensityCertificate {
  Mode mode = Mode::Crossing;
  Block f1, f2;  // indices into the input family
  std::vector<TraceStep> trace;
  Rational epsilon_in;       // related pairs / C(n, 2)
  Rational epsilon_ordered;  // related pairs / n^2
  double delta_out = 0;      // min(|f1|, |f2|) / n
  int halving_attempts = 0;
};

inline bool verify_density_certificate(const CurveFamily& f, const DensityCertificate& c) {
  if (c.f1.empty() || c.f2.empty()) return false;
  for (auto i : c.f1)
    if (std::find(c.f2.begin(), c.f2.end(), i) != c.f2.end()) return false;
  for (auto i : c.f1)
    for (auto j : c.f2)
      if (curves_meet(f[i], f[j]) != (c.mode == Mode::Crossing)) return false;
  return true;
}

namespace detail {

/// Largest min(|S1|, |S2|) complete pair inside a x b, by enumerating the
/// subsets of the smaller side; first found on ties.
inline std::pair<Block, Block> exhaustive_biclique(const ModeRelation& rel, const Block& a, const Block& b) {
  bool swap = a.size() > b.size();
  const Block& small = swap ? b : a;
  const Block& big = swap ? a : b;
  if (small.size() > 20) throw Error(ErrorCode::TooLarge, "exhaustive biclique side too large");
  std::pair<Block, Block> best;
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << small.size()); ++mask) {
    Block s1, s2;
    for (std::size_t k = 0; k < small.size(); ++k)
      if (mask >> k & 1) s1.push_back(small[k]);
    for (auto j : big)
      if (std::all_of(s1.begin(), s1.end(), [&](std::size_t i) { return rel(i, j); })) s2.push_back(j);
    if (std::min(s1.size(), s2.size()) > std::min(best.first.size(), best.second.size())) best = {s1, s2};
  }
  if (best.first.empty()) throw Error(ErrorCode::NoWitness, "no related pair in the current block");
  if (swap) std::swap(best.first, best.second);
  return best;
}

/// Drops minimum-degree members of the larger side until both sides match.
inline void equalize(const ModeRelation& rel, Block& a, Block& b) {
  while (a.size() != b.size()) {
    Block& big = a.size() > b.size() ? a : b;
    const Block& other = a.size() > b.size() ? b : a;
    std::size_t worst = 0, worst_deg = SIZE_MAX;
    for (std::size_t k = 0; k < big.size(); ++k) {
      std::size_t deg = 0;
      for (auto j : other) deg += rel(big[k], j);
      if (deg < worst_deg) {
        worst = k;
        worst_deg = deg;
      }
    }
    big.erase(big.begin() + static_cast<std::ptrdiff_t>(worst));
  }
}

/// Adds members of a (then b) related to everything on the other side.
inline void extend(const ModeRelation& rel, const Block& a, const Block& b, Block& s1, Block& s2) {
  auto grow = [&](const Block& pool, Block& mine, const Block& theirs) {
    for (auto i : pool) {
      if (std::find(mine.begin(), mine.end(), i) != mine.end()) continue;
      if (std::all_of(theirs.begin(), theirs.end(), [&](std::size_t j) { return rel(i, j); })) mine.push_back(i);
    }
  };
  grow(a, s1, s2);
  grow(b, s2, s1);
}

inline long ceil_div(std::size_t a, std::size_t b) { return static_cast<long>((a + b - 1) / b); }

}  // namespace detail

/// Two disjoint subfamilies with the complete mode relation, found by a
/// density-increment loop around two_color. `f` must be simple and in general
/// position with at least one related pair.
inline DensityCertificate extract(const CurveFamily& f, Mode mode, const Constants& k, std::uint64_t seed) {
  const std::size_t n = f.size();
  if (n < 2) throw Error(ErrorCode::ValidationError, "need at least two curves");
  if (!validate_family(f).ok()) throw Error(ErrorCode::ValidationError, "family not simple / in general position");
  const ModeRelation rel(f, mode);
  DensityCertificate cert;
  cert.mode = mode;
  std::size_t pairs = 0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) pairs += rel(i, j);
  if (pairs == 0) throw Error(ErrorCode::NoWitness, "no related pair");
  cert.epsilon_in = ratio(static_cast<long>(pairs), static_cast<long>(n * (n - 1) / 2));
  cert.epsilon_ordered = ratio(static_cast<long>(pairs), static_cast<long>(n * n));

  Block a, b;
  for (long attempt = 0;; ++attempt) {
    if (attempt >= k.max_trials) throw Error(ErrorCode::RetriesExhausted, "no halving reached half the input density");
    Rng rng(derive_seed(seed, stream::kDensity, 0, static_cast<std::uint64_t>(attempt)));
    Block order = f.all_indices();
    rng.shuffle(order);
    a.assign(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(n / 2));
    b.assign(order.begin() + static_cast<std::ptrdiff_t>(n / 2), order.end());
    cert.halving_attempts = static_cast<int>(attempt + 1);
    if (pair_density(rel, a, b) * 2 >= cert.epsilon_in) break;
  }

  for (std::uint64_t step = 0;; ++step) {
    detail::equalize(rel, a, b);
    TraceStep ts{a.size(), b.size(), pair_density(rel, a, b), "", 0};
    Block s1, s2;
    if (static_cast<long>(a.size()) < k.n0) {
      std::tie(s1, s2) = detail::exhaustive_biclique(rel, a, b);
      ts.outcome = "exhaustive";
    } else {
      SamplerConfig cfg = SamplerConfig::from(k, derive_seed(seed, stream::kDensity, 1, step));
      TwoColorCertificate tc = two_color(f.subfamily(a), f.subfamily(b), cfg, k.C4);
      for (auto i : tc.blue_out) s1.push_back(a[i]);
      for (auto j : tc.red_out) s2.push_back(b[j]);
      bool match = (tc.relation == Relation::AllCross) == (mode == Mode::Crossing);
      if (match) {
        ts.outcome = "certified";
      } else {
        long c = std::max({k.c, detail::ceil_div(a.size(), s1.size()), detail::ceil_div(b.size(), s2.size())});
        s1.resize(static_cast<std::size_t>(detail::ceil_div(a.size(), static_cast<std::size_t>(c))));
        s2.resize(static_cast<std::size_t>(detail::ceil_div(b.size(), static_cast<std::size_t>(c))));
        ts.outcome = "increment";
        ts.c_used = c;
        cert.trace.push_back(ts);
        std::tie(a, b) = increment_step(rel, a, b, s1, s2);
        continue;
      }
    }
    cert.trace.push_back(ts);
    detail::extend(rel, a, b, s1, s2);
    std::sort(s1.begin(), s1.end());
    std::sort(s2.begin(), s2.end());
    cert.f1 = std::move(s1);
    cert.f2 = std::move(s2);
    break;
  }
  cert.delta_out = static_cast<double>(std::min(cert.f1.size(), cert.f2.size())) / static_cast<double>(n);
  if (!verify_density_certificate(f, cert)) throw Error(ErrorCode::CaseAnalysisBreach, "density certificate failed verification");
  return cert;
}

}  // namespace mcd
