#pragma once

#include "latslice/cli/config.hpp"
#include "latslice/harness/fuzz.hpp"

#include <iostream>

namespace latslice {

namespace cli {

inline const std::vector<std::string>& commands() {
  static const std::vector<std::string> c = {"count", "section", "project",  "minima",      "polar",
                                             "check", "sweep",   "fuzz",     "scan-slicing"};
  return c;
}

inline const std::vector<std::string>& check_ids() {
  static const std::vector<std::string> c = {
      "discrete_lw",  "discrete_meyer", "simplex",   "brunn",        "reverse_meyer",
      "slicing",      "reverse_lw",     "preimages", "affine_image", "translation",
      "sumset",       "unconditional_dilate", "unconditional_meyer", "toolbox", "vol_approx", "wills"};
  return c;
}

inline bool is_random_family(const std::string& f) { return f.rfind("random", 0) == 0; }

inline QVector parse_qvector(const std::string& field, const std::string& text) {
  QVector v;
  try {
    for (const auto& part : detail::split(text, ',')) v.push_back(parse_rational(part));
  } catch (const std::exception& e) {
    throw ConfigError(field, std::string("bad rational vector '") + text + "': " + e.what());
  }
  return v;
}

inline ZVector parse_zvector(const std::string& field, const std::string& text) {
  ZVector z;
  for (const auto& q : parse_qvector(field, text)) {
    if (!is_integer(q)) throw ConfigError(field, "expected integer entries, got '" + text + "'");
    z.push_back(q.get_num());
  }
  return z;
}

inline std::vector<QVector> parse_vector_list(const std::string& field, const std::string& text) {
  std::vector<QVector> out;
  for (const auto& part : detail::split(text, ';')) out.push_back(parse_qvector(field, part));
  return out;
}

inline Lattice d4_lattice() {
  return Lattice(QMatrix::from_columns({QVector{1, 1, 0, 0}, QVector{1, -1, 0, 0}, QVector{0, 1, -1, 0}, QVector{0, 0, 1, -1}}));
}

/// Lattice from the config: empty or "Z" gives Z^n, "D4" the checkerboard lattice, otherwise basis vectors.
inline Lattice make_lattice(const ExperimentConfig& c, std::size_t n) {
  if (c.lattice.empty() || c.lattice == "Z") return Lattice::integer(n);
  if (c.lattice == "D4") {
    if (n != 4) throw ConfigError("lattice", "D4 needs n = 4");
    return d4_lattice();
  }
  std::vector<QVector> cols = parse_vector_list("lattice", c.lattice);
  for (const auto& v : cols)
    if (v.size() != n) throw ConfigError("lattice", "basis vectors must have length " + std::to_string(n));
  QMatrix b = QMatrix::from_columns(cols, n);
  if (cols.size() != n || rank(b) != n) throw ConfigError("lattice", "basis must consist of n independent vectors");
  return Lattice(b);
}

inline std::size_t lattice_dim(const ExperimentConfig& c) {
  if (c.lattice.empty() || c.lattice == "Z") return static_cast<std::size_t>(c.n);
  if (c.lattice == "D4") return 4;
  return parse_vector_list("lattice", c.lattice).front().size();
}

/// One instance of a sweep: the family parameters plus the position in the sweep.
struct Instance {
  FamilySpec spec;
  std::size_t index = 0;
};

inline std::string rerun_args(const ExperimentConfig& c, const FamilySpec& f) {
  std::ostringstream o;
  o << "check " << c.target << " --family " << f.family << " --n " << f.n << " --k " << f.k << " --h " << f.h
    << " --m " << f.m;
  if (is_random_family(f.family) || c.target == "sumset" || c.target == "wills")
    o << " --s " << f.s << " --R " << f.R << " --seed " << f.seed;
  if (!c.normal.empty()) o << " --normal " << c.normal;
  if (!c.translate.empty()) o << " --translate " << c.translate;
  if (!c.lattice.empty()) o << " --lattice '" << c.lattice << "'";
  if (!c.matrix.empty()) o << " --matrix '" << c.matrix << "'";
  if (!c.r_list.empty()) o << " --r " << format_long_list(c.r_list);
  o << " --normal-bound " << c.normal_bound;
  return o.str();
}

inline Body make_body(const ExperimentConfig& c, const FamilySpec& f) {
  if (f.family == "ball") {
    long r = c.r_list.empty() ? 1 : c.r_list.front();
    return Body::ball(static_cast<std::size_t>(f.n), Rational(r * r));
  }
  try {
    return make_family(f);
  } catch (const std::invalid_argument& e) {
    throw ConfigError("family", e.what());
  }
}

inline FamilySpec base_spec(const ExperimentConfig& c) {
  FamilySpec f;
  f.family = c.family;
  f.n = c.family == "cross_h" ? 2 : c.n;
  f.k = c.k;
  f.h = c.h;
  f.m = c.m;
  f.s = c.s;
  f.R = c.R;
  f.seed = c.seed.value_or(0);
  return f;
}

inline void validate(const ExperimentConfig& c) {
  auto known = [](const std::vector<std::string>& xs, const std::string& x) {
    return std::find(xs.begin(), xs.end(), x) != xs.end();
  };
  if (!known(commands(), c.command)) throw ConfigError("command", "unknown command '" + c.command + "'");
  if (c.command == "check" || c.command == "sweep") {
    if (!known(check_ids(), c.target)) throw ConfigError("target", "unknown check id '" + c.target + "'");
  }
  if (c.command == "fuzz" && !known(fuzz_probes(), c.target))
    throw ConfigError("target", "unknown fuzz probe '" + c.target + "'");
  auto fams = family_names();
  fams.push_back("ball");
  if (!known(fams, c.family)) throw ConfigError("family", "unknown family '" + c.family + "'");
  if (c.n < 1) throw ConfigError("n", "must be positive");
  if (c.n > c.dim_cap) throw ConfigError("n", "exceeds dim_cap " + std::to_string(c.dim_cap));
  if (c.normal_bound < 1) throw ConfigError("normal_bound", "must be at least 1");
  if (c.jobs < 1) throw ConfigError("jobs", "must be at least 1");
  if (c.budget < 0) throw ConfigError("budget", "must be non-negative");
  if (c.top < 1) throw ConfigError("top", "must be positive");
  if (c.format != "json" && c.format != "csv") throw ConfigError("format", "expected json or csv");
  if ((is_random_family(c.family) && c.command != "scan-slicing") || c.command == "fuzz")
    if (!c.seed) throw ConfigError("seed", "required for random families and fuzzing");
  for (long r : c.r_list)
    if (r < 1) throw ConfigError("r", "dilation factors must be positive");
}

inline CheckReport run_check(const ExperimentConfig& c, const FamilySpec& f) {
  const std::string& id = c.target;
  CheckReport r;
  if (id == "simplex") {
    r = check_simplex_counterexample(f.k, f.n);
    r.family = "T_k";
    r.params = describe(FamilySpec{"T_k", f.n, f.k});
    r.witnesses["rerun"] = rerun_args(c, f);
    return r;
  }
  if (id == "sumset") {
    std::mt19937_64 rng(f.seed);
    std::uniform_int_distribution<long> d(-f.R, f.R);
    std::vector<ZVector> a, b;
    for (long i = 0; i < f.s; ++i) {
      ZVector x, y;
      for (long j = 0; j < f.n; ++j) {
        x.push_back(d(rng));
        y.push_back(d(rng));
      }
      a.push_back(x);
      b.push_back(y);
    }
    r = check_sumset(a, b);
    r.family = "random_sets";
    r.params = "sets(n=" + std::to_string(f.n) + ",s=" + std::to_string(f.s) + ",R=" + std::to_string(f.R) +
               ",seed=" + std::to_string(f.seed) + ")";
    r.witnesses["rerun"] = rerun_args(c, f);
    return r;
  }
  Body k = make_body(c, f);
  const std::size_t n = k.ambient_dim();
  std::string extra;
  if (id == "discrete_lw") {
    r = check_discrete_lw(k);
  } else if (id == "discrete_meyer") {
    r = check_discrete_meyer(k);
  } else if (id == "brunn") {
    std::vector<ZVector> span;
    for (long i = 0; i < std::min<long>(f.k, static_cast<long>(n)); ++i) span.push_back(detail::unit_z(n, i));
    ZVector t = c.translate.empty() ? detail::unit_z(n, n - 1) : parse_zvector("translate", c.translate);
    if (t.size() != n) throw ConfigError("translate", "wrong dimension");
    r = check_brunn(k, span, t);
    extra = ",L=span(e1..e" + std::to_string(span.size()) + ")";
  } else if (id == "reverse_meyer") {
    r = reverse_meyer_construct(k, make_lattice(c, n)).report;
  } else if (id == "slicing") {
    r = check_slicing(k, c.normal_bound);
  } else if (id == "reverse_lw") {
    r = check_reverse_lw(k);
  } else if (id == "preimages") {
    ZVector v = c.normal.empty() ? detail::unit_z(n, n - 1) : parse_zvector("normal", c.normal);
    if (v.size() != n) throw ConfigError("normal", "wrong dimension");
    r = check_preimages(k, v);
  } else if (id == "affine_image" || id == "translation") {
    QVector t = c.translate.empty() ? QVector(n, id == "translation" ? Rational(1, 2) : Rational(0))
                                    : parse_qvector("translate", c.translate);
    if (t.size() != n) throw ConfigError("translate", "wrong dimension");
    ZMatrix a = ZMatrix::identity(n);
    if (id == "affine_image" && !c.matrix.empty()) {
      std::vector<ZVector> rows;
      for (const auto& row : detail::split(c.matrix, ';')) rows.push_back(parse_zvector("matrix", row));
      if (rows.size() != n) throw ConfigError("matrix", "needs n rows");
      for (const auto& row : rows)
        if (row.size() != n) throw ConfigError("matrix", "needs n columns");
      a = ZMatrix::from_rows(rows);
    }
    r = id == "translation" ? check_translation(k, t) : check_affine_image(k, a, t);
    r.check_id = id;
  } else if (id == "unconditional_dilate") {
    r = check_unconditional_dilate(k, f.m);
    extra = ",m=" + std::to_string(f.m);
  } else if (id == "unconditional_meyer") {
    r = check_unconditional_meyer(k);
  } else if (id == "toolbox") {
    r = check_toolbox(k, make_lattice(c, n));
  } else if (id == "vol_approx") {
    std::vector<long> rs = c.r_list.empty() ? std::vector<long>{1, 2, 4, 8, 16, 32} : c.r_list;
    r = check_vol_approx(k, rs);
  } else if (id == "wills") {
    QVector t = c.translate.empty() ? random_translation(2, f.seed) : parse_qvector("translate", c.translate);
    r = check_wills(k, t);
  } else {
    throw ConfigError("target", "unknown check id '" + id + "'");
  }
  r.family = f.family;
  std::string d = describe(f);
  if (!extra.empty()) d.insert(d.size() - 1, extra);
  r.params = d;
  r.witnesses["rerun"] = rerun_args(c, f);
  return r;
}

/// Instances of a sweep: product of k, h and m ranges, and `budget` seeds for random families.
inline std::vector<FamilySpec> sweep_instances(const ExperimentConfig& c) {
  FamilySpec base = base_spec(c);
  std::vector<long> ks = c.k_range.empty() ? std::vector<long>{c.k} : c.k_range;
  std::vector<long> hs = c.h_range.empty() ? std::vector<long>{c.h} : c.h_range;
  std::vector<long> ms = c.m_range.empty() ? std::vector<long>{c.m} : c.m_range;
  bool seeded = is_random_family(c.family) || c.target == "sumset" || c.target == "wills";
  long seeds = seeded ? c.budget : 1;
  std::vector<FamilySpec> out;
  for (long k : ks)
    for (long h : hs)
      for (long m : ms)
        for (long s = 0; s < seeds; ++s) {
          FamilySpec f = base;
          f.k = k;
          f.h = h;
          f.m = m;
          if (seeded) f.seed = base.seed + static_cast<std::uint64_t>(s);
          out.push_back(f);
        }
  return out;
}

inline Json number_or_string(const Integer& z) {
  if (z.fits_slong_p()) return z.get_si();
  return to_string(z);
}

struct Summary {
  std::size_t holds = 0, fails = 0, inapplicable = 0;
  void add(Verdict v) {
    if (v == Verdict::holds) ++holds;
    else if (v == Verdict::fails) ++fails;
    else ++inapplicable;
  }
  Json to_json(const ExperimentConfig& c) const {
    return {{"summary",
             {{"command", c.command}, {"check_id", c.target}, {"instances", holds + fails + inapplicable},
              {"holds", holds}, {"fails", fails}, {"inapplicable", inapplicable}}}};
  }
};

inline int run_reports(const ExperimentConfig& c, const std::vector<FamilySpec>& specs, std::ostream& out,
                       std::ostream& err) {
  Summary sum;
  if (c.format == "csv") out << csv_header();
  parallel_ordered<CheckReport>(
      specs.size(), static_cast<unsigned>(c.jobs), [&](std::size_t i) { return run_check(c, specs[i]); },
      [&](std::size_t, CheckReport& r) {
        sum.add(r.verdict);
        if (c.format == "csv")
          out << csv_row(r);
        else
          out << r.to_json().dump() << "\n";
        out.flush();
        if (r.failed()) err << "FAIL " << r.check_id << " " << r.params << "\n";
      });
  if (c.format == "json")
    out << sum.to_json(c).dump() << "\n";
  else
    err << sum.to_json(c).dump() << "\n";
  return sum.fails > 0 ? 2 : 0;
}

inline int run_single(const ExperimentConfig& c, std::ostream& out) {
  FamilySpec f = base_spec(c);
  Body k = make_body(c, f);
  const std::size_t n = k.ambient_dim();
  Json j;
  j["command"] = c.command;
  j["family"] = f.family;
  j["params"] = f.family == "ball" ? "ball(n=" + std::to_string(n) + ",r=" + std::to_string(c.r_list.empty() ? 1 : c.r_list.front()) + ")"
                                   : describe(f);
  if (c.command == "count") {
    Lattice l = make_lattice(c, n);
    j["count"] = number_or_string(count(k, AffineLattice{l, QVector(n, Rational(0))}).count);
    if (!c.lattice.empty()) j["lattice"] = c.lattice;
  } else if (c.command == "section") {
    if (c.normal.empty()) throw ConfigError("normal", "section needs --normal");
    ZVector b = parse_zvector("normal", c.normal);
    if (b.size() != n) throw ConfigError("normal", "wrong dimension");
    j["normal"] = to_json(b);
    if (!c.level.empty()) {
      Integer lv = detail::parse_long("level", c.level);
      j["level"] = number_or_string(lv);
      j["count"] = number_or_string(count_section(k, b, lv));
    } else {
      SectionScan s = max_section_over_levels(k, b);
      Json levels = Json::object();
      for (const auto& [lv, ct] : s.counts) levels[to_string(lv)] = number_or_string(ct);
      j["levels"] = levels;
      j["best_level"] = number_or_string(s.best_level);
      j["best_count"] = number_or_string(s.best_count);
    }
  } else if (c.command == "project") {
    ZVector v = c.normal.empty() ? detail::unit_z(n, n - 1) : parse_zvector("normal", c.normal);
    if (v.size() != n) throw ConfigError("normal", "wrong dimension");
    j["direction"] = to_json(v);
    j["projection_count"] = number_or_string(count_projection(k, v));
    j["projected_points"] = number_or_string(count_projected_points(k, v));
  } else if (c.command == "minima") {
    Lattice l = make_lattice(c, n);
    MinimaProfile m = successive_minima(k, l);
    MahlerBasis b = mahler_basis(k, l, m);
    j["minima"] = to_json_list(m.minima);
    j["witnesses"] = to_json_list(m.witnesses);
    j["mahler_basis"] = to_json_list(b.vectors);
    j["mahler_gauges"] = to_json_list(b.gauge_values);
  } else if (c.command == "polar") {
    Body p = polar(k);
    if (p.is_polytope()) {
      j["vertices"] = to_json_list(p.polytope().vertices());
    } else {
      j["level"] = to_string(p.ellipsoid().level());
    }
    if (!c.lattice.empty()) {
      Lattice d = polar_lattice(make_lattice(c, n));
      Json cols = Json::array();
      for (std::size_t i = 0; i < d.basis().cols(); ++i) cols.push_back(to_json(d.basis().col(i)));
      j["polar_lattice_basis"] = cols;
    }
  }
  out << j.dump() << "\n";
  return 0;
}

}  // namespace cli

/// Executes one configured command. Exit status: 0 when no verdict fails, 2 on a failing
/// verdict, 1 on a usage or configuration error.
inline int run(const ExperimentConfig& c, std::ostream& out, std::ostream& err) {
  try {
    cli::validate(c);
    set_hull_dimension_cap(static_cast<std::size_t>(c.dim_cap));
    std::ofstream file;
    std::ostream* sink = &out;
    if (!c.out.empty()) {
      file.open(c.out, std::ios::binary);
      if (!file) throw ConfigError("out", "cannot open '" + c.out + "' for writing");
      sink = &file;
    }
    if (c.command == "check") return cli::run_reports(c, {cli::base_spec(c)}, *sink, err);
    if (c.command == "sweep") return cli::run_reports(c, cli::sweep_instances(c), *sink, err);
    if (c.command == "fuzz") {
      FuzzParams p;
      p.probe = c.target;
      p.n = c.n;
      p.s = c.s;
      p.R = c.R;
      p.budget = c.budget;
      p.seed = *c.seed;
      p.top = static_cast<std::size_t>(c.top);
      p.jobs = static_cast<unsigned>(c.jobs);
      *sink << to_json(fuzz_extremal(p)).dump() << "\n";
      return 0;
    }
    if (c.command == "scan-slicing") {
      const std::size_t n = cli::lattice_dim(c);
      ExperimentConfig cc = c;
      cc.n = static_cast<long>(n);
      if (cc.n > cc.dim_cap) throw ConfigError("lattice", "dimension exceeds dim_cap");
      Lattice l = cli::make_lattice(cc, n);
      std::vector<long> rs = c.r_list.empty() ? std::vector<long>{1, 2, 3, 4, 5} : c.r_list;
      CheckReport r = slicing_ratio_scan(l, rs, c.normal_bound);
      r.family = "ball";
      r.params = "lattice=" + (c.lattice.empty() ? std::string("Z") : c.lattice) + ",r=" + format_long_list(rs);
      if (c.format == "csv") {
        *sink << csv_header();
        for (const auto& row : r.parts) {
          CheckReport labelled = row;
          labelled.family = r.family;
          labelled.params = r.params;
          *sink << csv_row(labelled);
        }
      } else {
        *sink << r.to_json().dump() << "\n";
      }
      return r.failed() ? 2 : 0;
    }
    return cli::run_single(c, *sink);
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace latslice
