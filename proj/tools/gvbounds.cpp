// Command-line front end: rate-bound curves to CSV, exact-oracle validation
// reports, and single critical-point queries to JSON.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "l1gv/acsv.hpp"
#include "l1gv/bounds.hpp"
#include "l1gv/gf.hpp"
#include "l1gv/oracle.hpp"
#include "l1gv/poly.hpp"
#include "l1gv/spaces.hpp"

using json = nlohmann::json;
using namespace l1gv;

namespace {

enum class LogLevel { Error = 0, Info = 1, Debug = 2 };

LogLevel log_level() {
  const char* env = std::getenv("GV_LOG_LEVEL");
  if (!env) return LogLevel::Error;
  std::string v(env);
  if (v == "debug") return LogLevel::Debug;
  if (v == "info") return LogLevel::Info;
  return LogLevel::Error;
}

void log_info(const std::string& msg) {
  if (log_level() >= LogLevel::Info) std::cerr << "[info] " << msg << "\n";
}
void log_debug(const std::string& msg) {
  if (log_level() >= LogLevel::Debug) std::cerr << "[debug] " << msg << "\n";
}

std::string fmt17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

struct GridSpec {
  double start = 0, stop = 0, step = 0;
};

GridSpec parse_grid(const std::string& s) {
  GridSpec g;
  char c1, c2;
  std::istringstream is(s);
  if (!(is >> g.start >> c1 >> g.stop >> c2 >> g.step) || c1 != ':' || c2 != ':')
    throw CLI::ValidationError("--delta", "expected start:stop:step");
  if (g.step <= 0 || g.stop < g.start)
    throw CLI::ValidationError("--delta", "need step > 0 and stop >= start");
  return g;
}

std::vector<double> expand_grid(const GridSpec& g) {
  std::vector<double> out;
  for (long i = 0;; ++i) {
    double d = g.start + i * g.step;
    if (d > g.stop + 1e-12) break;
    out.push_back(std::min(d, g.stop));
  }
  return out;
}

SpaceKind parse_space(const std::string& s) {
  if (s == "std-simplex") return SpaceKind::StdSimplex;
  if (s == "std-simplex-zeros") return SpaceKind::StdSimplexZeros;
  if (s == "pos-simplex") return SpaceKind::PosSimplex;
  if (s == "pos-simplex-ones") return SpaceKind::PosSimplexOnes;
  if (s == "inv-simplex") return SpaceKind::InvSimplex;
  if (s == "hypercube") return SpaceKind::Hypercube;
  if (s == "hypercube-zeros") return SpaceKind::HypercubeZeros;
  throw CLI::ValidationError("--space", "unknown space: " + s);
}

BoundKind parse_bound(const std::string& s) {
  if (s == "gv") return BoundKind::GV;
  if (s == "gvmr") return BoundKind::GVMR;
  if (s == "sp") return BoundKind::SpherePacking;
  if (s == "cw") return BoundKind::ConstantWeightGV;
  if (s == "kk") return BoundKind::KolesnikKrachkovsky;
  if (s == "lee") return BoundKind::Lee;
  if (s == "cap") return BoundKind::Capacity;
  throw CLI::ValidationError("--bounds", "unknown bound: " + s);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      if (!cur.empty()) out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

struct CurveConfig {
  std::string space;
  double rho = -1, tau = -1;
  int q = 0;
  bool opt_rho = false;
  std::string bounds = "gv";
  std::string delta = "0:1:0.01";
  std::string out_path;
  std::string preset;
};

void apply_preset(CurveConfig& cfg) {
  if (cfg.preset == "fig1") {
    cfg.space = "std-simplex";
    cfg.rho = 2;
    cfg.opt_rho = false;
    cfg.bounds = "gv,gvmr,sp,cw";
    cfg.delta = "0:2:0.01";
  } else if (cfg.preset == "fig2") {
    cfg.space = "pos-simplex";
    cfg.opt_rho = true;
    cfg.rho = -1;
    cfg.bounds = "gv,gvmr,kk";
    cfg.delta = "0:0.6:0.005";
  } else if (cfg.preset == "fig3") {
    cfg.space = "hypercube";
    cfg.q = 4;
    cfg.opt_rho = false;
    cfg.bounds = "gv,gvmr,lee";
    cfg.delta = "0:1.3:0.005";
  } else {
    throw CLI::ValidationError("--preset", "unknown preset: " + cfg.preset);
  }
  log_info("preset " + cfg.preset + " -> --space " + cfg.space + " --bounds " + cfg.bounds +
           " --delta " + cfg.delta);
}

SpaceFamily family_from(const std::string& space, double rho, double tau, int q, bool opt_rho) {
  SpaceKind kind = parse_space(space);
  double r = rho < 0 ? 0 : rho;
  double t = tau < 0 ? 0 : tau;
  if (tau >= 0 && !is_constrained(kind)) kind = constrained_kind(kind);
  if (opt_rho) {
    if (kind != SpaceKind::PosSimplex && kind != SpaceKind::InvSimplex)
      throw CLI::ValidationError("--opt-rho", "rho optimization applies to pos/inv simplex");
    r = 0.25;  // placeholder; optimized evaluators ignore the family rho
  }
  return make_family(kind, r, t, q);
}

std::string params_string(const CurveConfig& cfg) {
  std::ostringstream os;
  if (cfg.opt_rho) {
    os << "rho=opt";
  } else if (parse_space(cfg.space) == SpaceKind::Hypercube ||
             parse_space(cfg.space) == SpaceKind::HypercubeZeros) {
    os << "q=" << cfg.q;
  } else {
    os << "rho=" << fmt17(cfg.rho);
  }
  if (cfg.tau >= 0) os << ";tau=" << fmt17(cfg.tau);
  return os.str();
}

int run_curve(const CurveConfig& cfg_in) {
  CurveConfig cfg = cfg_in;
  if (!cfg.preset.empty()) apply_preset(cfg);
  SpaceFamily fam = family_from(cfg.space, cfg.rho, cfg.tau, cfg.q, cfg.opt_rho);
  auto grid = expand_grid(parse_grid(cfg.delta));
  if (grid.empty()) throw CLI::ValidationError("--delta", "grid is empty");

  std::ostringstream csv;
  csv << "space,params,bound,delta,rate,aux\n";
  const std::string params = params_string(cfg);
  long emitted = 0, gaps = 0;
  for (const auto& bname : split(cfg.bounds, ',')) {
    BoundKind kind = parse_bound(bname);
    RateCurve curve = rate_curve(fam, kind, grid, cfg.opt_rho);
    for (const auto& p : curve.samples) {
      csv << kind_name(fam.kind) << "," << params << "," << bound_name(kind) << ","
          << fmt17(p.delta) << "," << fmt17(p.rate) << ",";
      bool first = true;
      for (const auto& [k, v] : p.aux) {
        if (!first) csv << ";";
        csv << k << "=" << fmt17(v);
        first = false;
      }
      csv << "\n";
      ++emitted;
    }
    for (const auto& g : curve.gaps) {
      log_debug("gap at " + bname + " delta=" + fmt17(g.delta) + ": " + g.reason);
      ++gaps;
    }
  }
  if (emitted == 0) {
    std::cerr << "error: no curve point evaluated successfully (" << gaps << " gaps)\n";
    return 2;
  }
  if (cfg.out_path.empty()) {
    std::cout << csv.str();
  } else {
    std::ofstream f(cfg.out_path, std::ios::binary);
    if (!f) {
      std::cerr << "error: cannot open output file " << cfg.out_path << "\n";
      return 1;
    }
    f << csv.str();
  }
  log_info("curve: " + std::to_string(emitted) + " rows, " + std::to_string(gaps) + " gaps");
  return 0;
}

struct ValidateConfig {
  std::string space;
  long n_max = 6;
  long r_max = -1;
  double rho = -1, tau = -1;
  int q = 3;
  long p_max = -1;
  long enum_cap = 1000000;
  long dp_cap = 40;
  std::string format = "text";
};

struct ValidateRow {
  std::string label;
  bool ok;
  std::string detail;
};

// Exact triple agreement: brute force == DP == series coefficient of the
// family's full multi-index generating function.
int run_validate(const ValidateConfig& cfg) {
  SpaceKind kind = parse_space(cfg.space);
  if (cfg.tau >= 0 && !is_constrained(kind)) kind = constrained_kind(kind);
  const bool hyper = is_hypercube(kind);
  const bool constrained = is_constrained(kind);
  SpaceFamily fam = make_family(kind, hyper ? 0.0 : std::max(cfg.rho, 0.0),
                                std::max(cfg.tau, 0.0), hyper ? cfg.q : 0);
  OracleCaps caps{cfg.enum_cap, cfg.dp_cap};
  const long rmax = hyper ? 0 : (cfg.r_max >= 0 ? cfg.r_max : std::min<long>(cfg.n_max, 4));
  const long pmax = constrained ? (cfg.p_max >= 0 ? cfg.p_max : std::min<long>(rmax > 0 ? rmax : cfg.n_max, 4)) : 0;

  // series table from the full generating function (inv-simplex has none)
  std::map<Exponents, Int> series;
  bool have_series = kind != SpaceKind::InvSimplex;
  if (have_series) {
    auto gf = pair_count_gf(kind, fam.q);
    std::vector<int> box;
    long smax_box = hyper ? (fam.q - 1) * cfg.n_max : 2 * cfg.n_max;
    if (hyper) {
      box = {static_cast<int>(cfg.n_max), static_cast<int>(smax_box)};
      if (constrained) {
        box.push_back(static_cast<int>(pmax));
        box.push_back(static_cast<int>(pmax));
      }
    } else {
      box = {static_cast<int>(cfg.n_max), static_cast<int>(cfg.n_max), static_cast<int>(rmax),
             static_cast<int>(smax_box)};
      if (constrained) {
        box.push_back(static_cast<int>(pmax));
        box.push_back(static_cast<int>(pmax));
      }
    }
    series = series_coeffs_box(gf.numer, gf.denom, box);
  }

  std::vector<ValidateRow> rows;
  long mismatches = 0;
  auto check_combo = [&](long n1, long n2, long r, long p1, long p2) {
    PairParams pp{r, p1, p2};
    auto bf = count_table_bruteforce(fam, n1, n2, pp, -1, caps);
    long smax = static_cast<long>(bf.counts.size()) - 1;
    auto dp = count_table_dp(fam, n1, n2, pp, smax, caps);
    bool ok = true;
    std::ostringstream detail;
    for (long s = 0; s <= smax; ++s) {
      Int b = bf.at(s), d = dp.at(s);
      Int se = b;
      if (have_series) {
        Exponents key;
        if (hyper)
          key = constrained ? Exponents{static_cast<int>(n1), static_cast<int>(s),
                                        static_cast<int>(p1), static_cast<int>(p2)}
                            : Exponents{static_cast<int>(n1), static_cast<int>(s)};
        else
          key = constrained
                    ? Exponents{static_cast<int>(n1), static_cast<int>(n2), static_cast<int>(r),
                                static_cast<int>(s), static_cast<int>(p1), static_cast<int>(p2)}
                    : Exponents{static_cast<int>(n1), static_cast<int>(n2), static_cast<int>(r),
                                static_cast<int>(s)};
        se = series.at(key);
      }
      if (b != d || b != se) {
        ok = false;
        detail << " s=" << s << " bf=" << b.str() << " dp=" << d.str()
               << " series=" << se.str() << ";";
      }
    }
    // completeness: sum over all distances equals |S1| x |S2|
    Finite f1{n1, r, p1}, f2{n2, r, p2};
    Int expect = space_size(fam, f1) * space_size(fam, f2);
    if (bf.total_all() != expect || dp.total_all() != expect) {
      ok = false;
      detail << " total bf=" << bf.total_all().str() << " dp=" << dp.total_all().str()
             << " expect=" << expect.str() << ";";
    }
    std::ostringstream label;
    label << "n1=" << n1 << " n2=" << n2;
    if (!hyper) label << " r=" << r;
    if (constrained) label << " p1=" << p1 << " p2=" << p2;
    rows.push_back({label.str(), ok, detail.str()});
    if (!ok) ++mismatches;
  };

  if (hyper) {
    for (long n = 0; n <= cfg.n_max; ++n)
      for (long p1 = 0; p1 <= (constrained ? pmax : 0); ++p1)
        for (long p2 = 0; p2 <= (constrained ? pmax : 0); ++p2) check_combo(n, n, 0, p1, p2);
  } else {
    for (long n1 = 0; n1 <= cfg.n_max; ++n1)
      for (long n2 = n1; n2 <= cfg.n_max; ++n2)
        for (long r = 0; r <= rmax; ++r)
          for (long p1 = 0; p1 <= (constrained ? pmax : 0); ++p1)
            for (long p2 = 0; p2 <= (constrained ? pmax : 0); ++p2)
              check_combo(n1, n2, r, p1, p2);
  }

  // inverted simplex: side-by-side totals against the positive simplex (the
  // two families share asymptotics; the finite-n exponent gap must shrink)
  std::vector<std::string> extra;
  if (kind == SpaceKind::InvSimplex) {
    SpaceFamily pos = make_family(SpaceKind::PosSimplex, 0.5);
    double prev_gap = -1;
    bool shrink = true;
    for (long n = 4; n <= cfg.n_max * 2; n += 2) {
      long r = n / 2, d = std::max<long>(1, n / 4);
      SpaceFamily inv = make_family(SpaceKind::InvSimplex, 0.5);
      Int ti = total_ball(inv, n, d, caps);
      Int tp = total_ball(pos, n, d, caps);
      double gap = std::fabs(log2_int(ti) - log2_int(tp)) / n;
      std::ostringstream os;
      os << "inv-vs-pos total ball n=" << n << " r=" << r << " d=" << d << " T_inv=" << ti.str()
         << " T_pos=" << tp.str() << " exponent-gap=" << gap;
      extra.push_back(os.str());
      if (prev_gap >= 0 && gap > prev_gap + 1e-9) shrink = false;
      prev_gap = gap;
    }
    if (!shrink) {
      ++mismatches;
      extra.push_back("inv-vs-pos exponent gap failed to shrink");
    }
  }

  if (cfg.format == "json") {
    json j;
    j["space"] = kind_name(kind);
    j["n_max"] = cfg.n_max;
    j["mismatches"] = mismatches;
    j["rows"] = json::array();
    for (const auto& row : rows)
      j["rows"].push_back({{"case", row.label}, {"ok", row.ok}, {"detail", row.detail}});
    for (const auto& e : extra) j["notes"].push_back(e);
    std::cout << j.dump(2) << "\n";
  } else {
    for (const auto& row : rows)
      std::cout << (row.ok ? "ok      " : "MISMATCH") << "  " << row.label << row.detail << "\n";
    for (const auto& e : extra) std::cout << "note      " << e << "\n";
    std::cout << (mismatches ? "FAIL" : "PASS") << ": " << rows.size() << " cases validated, "
              << mismatches << " mismatches, max n = " << cfg.n_max << "\n";
  }
  return mismatches == 0 ? 0 : 2;
}

struct CriticalConfig {
  std::string space;
  double rho = -1, tau = -1, delta = 0;
  int q = 0;
};

int run_critical(const CriticalConfig& cfg) {
  SpaceKind kind = parse_space(cfg.space);
  if (cfg.tau >= 0 && !is_constrained(kind)) kind = constrained_kind(kind);
  SpaceFamily fam = make_family(kind, std::max(cfg.rho, 0.0), std::max(cfg.tau, 0.0), cfg.q);
  json j;
  j["space"] = kind_name(kind);
  j["delta"] = cfg.delta;
  std::vector<std::string> names;
  if (is_hypercube(kind))
    names = is_constrained(kind) ? std::vector<std::string>{"x", "y", "w"}
                                 : std::vector<std::string>{"x", "y"};
  else
    names = is_constrained(kind) ? std::vector<std::string>{"x", "y", "z", "w"}
                                 : std::vector<std::string>{"x", "y", "z"};
  if (cfg.delta == 0) {
    j["point"] = json::object();
    j["rate"] = capacity(fam);
    j["residual_H"] = 0.0;
    j["residual_prop"] = 0.0;
    j["source"] = "closed_form";
    std::cout << j.dump(2) << "\n";
    return 0;
  }
  try {
    CriticalValues cf = closed_form_point(fam, cfg.delta);
    auto dir = diagonal_direction(fam, cfg.delta);
    SparsePoly H = diagonal_denominator(kind, fam.q);
    CriticalProblem prob(H, dir);
    auto newton = solve_critical_point(prob, cf.coords);
    double agree = 0;
    for (size_t i = 0; i < cf.coords.size(); ++i)
      agree = std::max(agree, std::fabs(cf.coords[i] - newton.point[i]));
    // residuals of the closed-form point, evaluated on the exact polynomials
    std::vector<double> resid(dir.size());
    {
      solvedetail::PolySystem sys(prob);
      sys.eval_f(cf.coords, resid);
    }
    double rh = std::fabs(resid[0]), rp = 0;
    for (size_t i = 1; i < resid.size(); ++i) rp = std::max(rp, std::fabs(resid[i]));
    j["point"] = json::object();
    for (size_t i = 0; i < names.size(); ++i) j["point"][names[i]] = cf.coords[i];
    for (const auto& [k, v] : cf.aux) j["point"][k] = v;
    j["rate"] = rate_exponent(cf.coords, dir);
    j["residual_H"] = rh;
    j["residual_prop"] = rp;
    j["source"] = "closed_form";
    j["newton"] = json::object();
    for (size_t i = 0; i < names.size(); ++i) j["newton"][names[i]] = newton.point[i];
    j["newton"]["rate"] = newton.rate;
    j["newton"]["residual_H"] = newton.residual_H;
    j["newton"]["residual_prop"] = newton.residual_prop;
    j["agreement"] = agree;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  std::cout << j.dump(2) << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Gilbert-Varshamov-type rate bounds for L1-metric code spaces"};
  app.require_subcommand(1);

  CurveConfig curve_cfg;
  auto* curve = app.add_subcommand("curve", "emit rate-vs-delta curves as CSV");
  curve->add_option("--space", curve_cfg.space, "space family");
  curve->add_option("--rho", curve_cfg.rho, "dimension/weight ratio");
  curve->add_option("--tau", curve_cfg.tau, "constraint fraction (selects the constrained family)");
  curve->add_option("--q", curve_cfg.q, "hypercube alphabet size");
  curve->add_flag("--opt-rho", curve_cfg.opt_rho, "optimize rho per point (pos/inv simplex)");
  curve->add_option("--bounds", curve_cfg.bounds, "comma list: gv,gvmr,sp,cw,kk,lee,cap");
  curve->add_option("--delta", curve_cfg.delta, "grid start:stop:step");
  curve->add_option("--out", curve_cfg.out_path, "output CSV path (default stdout)");
  curve->add_option("--preset", curve_cfg.preset, "fig1|fig2|fig3");

  ValidateConfig val_cfg;
  auto* val = app.add_subcommand("validate", "exact oracle agreement report");
  val->add_option("--space", val_cfg.space)->required();
  val->add_option("--n-max", val_cfg.n_max, "largest weight/length");
  val->add_option("--r", val_cfg.r_max, "largest simplex dimension (default min(n-max,4))");
  val->add_option("--q", val_cfg.q, "hypercube alphabet size");
  val->add_option("--tau", val_cfg.tau, "constraint fraction (selects the constrained family)");
  val->add_option("--p", val_cfg.p_max, "largest constraint count");
  val->add_option("--enum-cap", val_cfg.enum_cap, "enumeration size cap");
  val->add_option("--dp-cap", val_cfg.dp_cap, "DP n cap");
  val->add_option("--format", val_cfg.format, "text|json");

  CriticalConfig crit_cfg;
  auto* crit = app.add_subcommand("critical", "critical point query as JSON");
  crit->add_option("--space", crit_cfg.space)->required();
  crit->add_option("--rho", crit_cfg.rho);
  crit->add_option("--tau", crit_cfg.tau);
  crit->add_option("--q", crit_cfg.q);
  crit->add_option("--delta", crit_cfg.delta)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (curve->parsed()) return run_curve(curve_cfg);
    if (val->parsed()) return run_validate(val_cfg);
    if (crit->parsed()) return run_critical(crit_cfg);
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 2;
  }
  return 1;
}
