#pragma once

#include "latslice/harness/checks.hpp"
#include "latslice/harness/parallel.hpp"

namespace latslice {

struct FuzzParams {
  std::string probe = "discrete_meyer";  // discrete_meyer | translation | dilate | wills
  long n = 3;
  long s = 6;
  long R = 3;
  long budget = 100;
  std::uint64_t seed = 0;
  std::size_t top = 10;
  unsigned jobs = 1;
};

struct FuzzEntry {
  std::size_t index = 0;
  Rational ratio = 0;
  Json instance;
};

struct FuzzResult {
  FuzzParams params;
  Rational conjectured = 0;
  std::size_t evaluated = 0;
  std::size_t above_conjecture = 0;
  std::vector<FuzzEntry> leaderboard;
};

inline std::vector<std::string> fuzz_probes() { return {"discrete_meyer", "translation", "dilate", "wills"}; }

namespace detail {

inline Rational fuzz_conjecture(const FuzzParams& p) {
  if (p.probe == "discrete_meyer") return Rational(pow_z(3, p.n - 1));
  if (p.probe == "translation") return p.n >= 2 ? Rational(pow_z(2, p.n - 2)) : Rational(1);
  if (p.probe == "dilate") return Rational(pow_z(3, p.n));
  if (p.probe == "wills") return 1;
  throw std::invalid_argument("unknown fuzz probe '" + p.probe + "'");
}

/// Ratio of one random instance; higher is closer to (or beyond) the conjectured bound.
inline FuzzEntry fuzz_instance(const FuzzParams& p, std::size_t index) {
  std::uint64_t seed = derive_seed(p.seed, index);
  FuzzEntry e;
  e.index = index;
  FamilySpec spec{p.probe == "wills" ? "random_polytope" : "random_sym", p.probe == "wills" ? 2 : p.n, 1, 1, 2,
                  p.s, p.R, seed};
  Body k = make_family(spec);
  e.instance = {{"family", spec.family}, {"params", describe(spec)}, {"seed", seed}};
  Integer total = count_points(k);
  const std::size_t n = k.ambient_dim();
  if (p.probe == "discrete_meyer") {
    e.ratio = make_rational(product(coordinate_sections(k)), ipow(total, static_cast<long>(n) - 1));
  } else if (p.probe == "translation") {
    Rational best = 0;
    QVector best_t;
    for (std::size_t mask = 1; mask < (std::size_t{1} << n); ++mask) {
      QVector t(n, Rational(0));
      for (std::size_t i = 0; i < n; ++i)
        if (mask >> i & 1) t[i] = Rational(1, 2);
      Rational q = make_rational(count_points(translated(k, t)), total);
      if (q > best) {
        best = q;
        best_t = t;
      }
    }
    e.ratio = best;
    e.instance["translate"] = to_json(best_t);
  } else if (p.probe == "dilate") {
    e.ratio = make_rational(count_points(scaled(k, 2)), total);
    e.instance["m"] = 2;
  } else {
    QVector t = random_translation(2, seed);
    e.ratio = make_rational(count_points(translated(k, t)), total);
    e.instance["translate"] = to_json(t);
  }
  e.instance["ratio"] = to_string(e.ratio);
  return e;
}

}  // namespace detail

/// Random search for instances with a large conjecture ratio. Evidence only: nothing is asserted.
inline FuzzResult fuzz_extremal(const FuzzParams& p) {
  FuzzResult res;
  res.params = p;
  res.conjectured = detail::fuzz_conjecture(p);
  const std::size_t count = static_cast<std::size_t>(std::max(0L, p.budget));
  std::vector<FuzzEntry> all = parallel_map<FuzzEntry>(
      count, p.jobs, [&](std::size_t i) { return detail::fuzz_instance(p, i); });
  res.evaluated = all.size();
  for (const auto& e : all)
    if (e.ratio > res.conjectured) ++res.above_conjecture;
  std::stable_sort(all.begin(), all.end(), [](const FuzzEntry& a, const FuzzEntry& b) {
    if (a.ratio != b.ratio) return a.ratio > b.ratio;
    return a.index < b.index;
  });
  if (all.size() > p.top) all.resize(p.top);
  res.leaderboard = std::move(all);
  return res;
}

inline Json to_json(const FuzzResult& r) {
  Json j;
  j["probe"] = r.params.probe;
  j["n"] = r.params.probe == "wills" ? 2 : r.params.n;
  j["s"] = r.params.s;
  j["R"] = r.params.R;
  j["budget"] = r.params.budget;
  j["seed"] = r.params.seed;
  j["conjectured_bound"] = to_string(r.conjectured);
  j["evaluated"] = r.evaluated;
  j["above_conjectured_bound"] = r.above_conjecture;
  Json board = Json::array();
  for (std::size_t i = 0; i < r.leaderboard.size(); ++i) {
    const auto& e = r.leaderboard[i];
    board.push_back({{"rank", i + 1},
                     {"index", e.index},
                     {"ratio", to_string(e.ratio)},
                     {"ratio_approx", CheckReport::json_double(e.ratio.get_d())},
                     {"instance", e.instance}});
  }
  j["leaderboard"] = board;
  return j;
}

}  // namespace latslice
