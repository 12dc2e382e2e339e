// minmod: workbench CLI for minimum/maximum modulus experiments on canonical
// products with negative real zeros.
//
// Subcommands: profile | mtilde | criterion | orbit | construct | verify
// Range flags take log10 radii; all emitted columns are natural logs.
// Exit codes: 0 ok, 2 spec error, 3 numerical nonconvergence, 4 invariant
// suite failure.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "minmod/dynamics.hpp"
#include "minmod/function_spec.hpp"
#include "minmod/growth_analysis.hpp"

using namespace minmod;
using nlohmann::json;

namespace {

constexpr double kLn10 = 2.302585092994046;

std::string fmt17(double v) {
  if (is_neg_inf(v)) return "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string now_utc() {
  std::time_t t = std::time(nullptr);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
  return buf;
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw SpecParseError("cannot write file: " + path);
  out << text;
}

void emit(const std::string& out_path, const std::string& text) {
  if (out_path.empty())
    std::cout << text;
  else
    write_text(out_path, text);
}

// --- cache ------------------------------------------------------------------

std::string cache_dir_from(const std::string& flag) {
  if (!flag.empty()) return flag;
  const char* env = std::getenv("MINMOD_CACHE_DIR");
  return env ? env : "";
}

std::string cache_key(const FunctionSpec& spec, const std::string& command,
                      const json& args) {
  return fnv1a64_hex(spec.to_json().dump() + "\n" + command + "\n" +
                     args.dump() + "\n" + kToolVersion);
}

std::optional<json> cache_load(const std::string& dir, const std::string& key) {
  if (dir.empty()) return std::nullopt;
  const std::filesystem::path p = std::filesystem::path(dir) / (key + ".json");
  std::ifstream in(p);
  if (!in) return std::nullopt;
  json j;
  try {
    in >> j;
  } catch (...) {
    return std::nullopt;
  }
  return j;
}

void cache_store(const std::string& dir, const std::string& key,
                 const json& bundle) {
  if (dir.empty()) return;
  std::filesystem::create_directories(dir);
  const std::filesystem::path p = std::filesystem::path(dir) / (key + ".json");
  std::ofstream out(p);
  out << bundle.dump(2) << "\n";
}

// Runs a command through the cache: on a hit the stored bundle is reused
// byte for byte, otherwise compute() builds the outputs object.
json run_cached(const FunctionSpec& spec, const std::string& command,
                const json& args, const std::string& cache_dir,
                const std::function<json()>& compute) {
  const std::string key = cache_key(spec, command, args);
  if (auto hit = cache_load(cache_dir, key)) {
    std::cerr << "cache: hit " << key << "\n";
    return *hit;
  }
  ResultBundle bundle;
  bundle.spec_digest = spec.digest();
  bundle.command = command;
  bundle.args = args;
  bundle.outputs = compute();
  bundle.timestamp = now_utc();
  const json j = bundle.to_json();
  cache_store(cache_dir, key, j);
  return j;
}

// --- plotting ---------------------------------------------------------------

std::string svg_profile_plot(const std::vector<GrowthSample>& samples) {
  double x_lo = 1e308, x_hi = -1e308, y_lo = 1e308, y_hi = -1e308;
  for (const auto& s : samples) {
    x_lo = std::min(x_lo, s.lr);
    x_hi = std::max(x_hi, s.lr);
    y_hi = std::max(y_hi, s.log_M);
    if (std::isfinite(s.log_m)) y_lo = std::min(y_lo, s.log_m);
    y_lo = std::min(y_lo, 0.0);
  }
  if (!(x_hi > x_lo)) return "<svg xmlns='http://www.w3.org/2000/svg'/>";
  y_hi = std::max(y_hi, x_hi);  // keep the identity line visible
  const double w = 720, h = 480, mgn = 50;
  auto px = [&](double x) {
    return mgn + (x - x_lo) / (x_hi - x_lo) * (w - 2 * mgn);
  };
  auto py = [&](double y) {
    return h - mgn - (y - y_lo) / (y_hi - y_lo) * (h - 2 * mgn);
  };
  auto polyline = [&](const std::string& color, bool dashed, auto value) {
    std::ostringstream os;
    os << "<polyline fill='none' stroke='" << color << "'"
       << (dashed ? " stroke-dasharray='6 4'" : "") << " points='";
    bool first = true;
    for (const auto& s : samples) {
      const double v = value(s);
      if (!std::isfinite(v)) continue;
      os << (first ? "" : " ") << px(s.lr) << "," << py(v);
      first = false;
    }
    os << "'/>\n";
    return os.str();
  };
  std::ostringstream os;
  os << "<svg xmlns='http://www.w3.org/2000/svg' width='" << w << "' height='"
     << h << "' viewBox='0 0 " << w << " " << h << "'>\n"
     << "<rect width='100%' height='100%' fill='white'/>\n"
     << "<line x1='" << mgn << "' y1='" << h - mgn << "' x2='" << w - mgn
     << "' y2='" << h - mgn << "' stroke='black'/>\n"
     << "<line x1='" << mgn << "' y1='" << mgn << "' x2='" << mgn << "' y2='"
     << h - mgn << "' stroke='black'/>\n";
  os << polyline("#888888", true, [](const GrowthSample& s) { return s.lr; });
  os << polyline("#1f77b4", false,
                 [](const GrowthSample& s) { return s.log_M; });
  os << polyline("#d62728", false,
                 [](const GrowthSample& s) { return s.log_m; });
  os << "<text x='" << w / 2 << "' y='" << h - 12
     << "' font-size='13'>log r</text>\n"
     << "<text x='" << mgn << "' y='" << mgn - 12 << "' font-size='13'>"
     << "log M (blue), log m (red), identity (dashed)</text>\n"
     << "</svg>\n";
  return os.str();
}

// --- command implementations -------------------------------------------------

struct CommonArgs {
  std::string spec_path;
  std::string out_path;
  std::string cache_dir_flag;
  double tolerance = 0.0;  // 0: spec default
};

FunctionSpec load_spec(const CommonArgs& c) {
  FunctionSpec s = FunctionSpec::from_file(c.spec_path);
  if (c.tolerance > 0.0) {
    EvalSettings es = s.settings();
    es.rel_tolerance = c.tolerance;
    s.eval_overrides = es;
  }
  return s;
}

std::string profile_csv(const GrowthProfile& prof) {
  std::ostringstream csv;
  csv << "# schema: minmod-profile-csv-v1\n";
  csv << "log_r,log_M,log_m,eps,k,log_M_over_sqrt_r\n";
  for (const auto& s : prof.samples)
    csv << fmt17(s.lr) << "," << fmt17(s.log_M) << "," << fmt17(s.log_m) << ","
        << fmt17(s.eps) << "," << fmt17(s.k) << "," << fmt17(s.trend) << "\n";
  return csv.str();
}

int cmd_profile(const CommonArgs& c, double from_log10, double to_log10,
                int ppd, const std::string& plot_path) {
  FunctionSpec spec = load_spec(c);
  const json args = {{"from", from_log10}, {"to", to_log10}, {"ppd", ppd}};
  json bundle =
      run_cached(spec, "profile", args, cache_dir_from(c.cache_dir_flag), [&] {
        auto f = spec.build();
        auto prof = build_profile(f, from_log10 * kLn10, to_log10 * kLn10, ppd,
                                  spec.settings());
        json out;
        out["csv"] = profile_csv(prof);
        out["rho_hat"] = prof.rho_hat;
        out["lambda_hat"] = prof.lambda_hat;
        return out;
      });
  emit(c.out_path, bundle.at("outputs").at("csv").get<std::string>());
  if (!plot_path.empty()) {
    auto f = spec.build();
    auto prof = build_profile(f, from_log10 * kLn10, to_log10 * kLn10, ppd,
                              spec.settings());
    write_text(plot_path, svg_profile_plot(prof.samples));
  }
  return 0;
}

int cmd_mtilde(const CommonArgs& c, double from_log10, double to_log10,
               int points) {
  FunctionSpec spec = load_spec(c);
  const json args = {
      {"from", from_log10}, {"to", to_log10}, {"points", points}};
  json bundle =
      run_cached(spec, "mtilde", args, cache_dir_from(c.cache_dir_flag), [&] {
        auto f = spec.build();
        auto prof = m_tilde_profile(f, from_log10 * kLn10, to_log10 * kLn10,
                                    points, ScanSettings{}, spec.settings());
        std::ostringstream csv;
        csv << "# schema: minmod-mtilde-csv-v1\n";
        csv << "log_r,log_mtilde,argmax_log_r\n";
        for (const auto& cp : prof.checkpoints)
          csv << fmt17(cp.lr) << "," << fmt17(cp.log_mtilde) << ","
              << fmt17(cp.argmax_lr) << "\n";
        return json{{"csv", csv.str()}};
      });
  emit(c.out_path, bundle.at("outputs").at("csv").get<std::string>());
  return 0;
}

int cmd_criterion(const CommonArgs& c, const std::vector<double>& radii_log10) {
  FunctionSpec spec = load_spec(c);
  const json args = {{"radii", radii_log10}};
  json bundle = run_cached(
      spec, "criterion", args, cache_dir_from(c.cache_dir_flag), [&] {
        auto f = spec.build();
        std::ostringstream csv;
        csv << "# schema: minmod-criterion-csv-v1\n";
        csv << "log_r,witness_found,witness_log_s,margin,side_condition_ok\n";
        json reports = json::array();
        for (double r10 : radii_log10) {
          auto rep = criterion_witness(f, r10 * kLn10, SearchSettings{},
                                       spec.settings());
          csv << fmt17(rep.lr) << "," << (rep.witness_lr_s ? 1 : 0) << ","
              << (rep.witness_lr_s ? fmt17(*rep.witness_lr_s) : "nan") << ","
              << fmt17(rep.margin) << "," << (rep.side_condition_ok ? 1 : 0)
              << "\n";
          reports.push_back({{"log_r", rep.lr},
                             {"witness_found", rep.witness_lr_s.has_value()},
                             {"margin", rep.margin},
                             {"side_condition_ok", rep.side_condition_ok}});
        }
        return json{{"csv", csv.str()}, {"reports", reports}};
      });
  emit(c.out_path, bundle.at("outputs").at("csv").get<std::string>());
  return 0;
}

int cmd_orbit(const CommonArgs& c, const std::vector<double>& starts_log10,
              const std::string& map_name, int budget,
              double threshold_log10) {
  FunctionSpec spec = load_spec(c);
  if (map_name != "min" && map_name != "max")
    throw SpecParseError("--map must be 'min' or 'max'");
  const json args = {{"starts", starts_log10},
                     {"map", map_name},
                     {"budget", budget},
                     {"threshold", threshold_log10}};
  json bundle =
      run_cached(spec, "orbit", args, cache_dir_from(c.cache_dir_flag), [&] {
        auto f = spec.build();
        const MapKind kind = map_name == "min" ? MapKind::Min : MapKind::Max;
        std::ostringstream csv;
        csv << "# schema: minmod-orbit-csv-v1\n";
        csv << "orbit,start_log_r,step,value,verdict\n";
        json records = json::array();
        int idx = 0;
        for (double s10 : starts_log10) {
          auto rec = iterate_modulus(f, s10 * kLn10, kind, budget,
                                     threshold_log10 * kLn10, spec.settings());
          const char* verdict =
              rec.verdict == OrbitVerdict::Escaped   ? "escaped"
              : rec.verdict == OrbitVerdict::Trapped ? "trapped"
              : rec.verdict == OrbitVerdict::HitZero ? "hit-zero"
                                                     : "undecided";
          for (std::size_t i = 0; i < rec.steps.size(); ++i)
            csv << idx << "," << fmt17(rec.start_lr) << "," << i << ","
                << fmt17(rec.steps[i]) << "," << verdict << "\n";
          json steps = json::array();
          for (double v : rec.steps)
            steps.push_back(is_neg_inf(v) ? json("-inf") : json(v));
          records.push_back({{"start_log_r", rec.start_lr},
                             {"verdict", verdict},
                             {"steps", steps}});
          ++idx;
        }
        return json{{"csv", csv.str()}, {"records", records}};
      });
  emit(c.out_path, bundle.at("outputs").at("csv").get<std::string>());
  return 0;
}

int cmd_construct(const std::string& kind, double seed_a, double seed_b,
                  int n_bands, double p, const std::string& delta_kind,
                  double gamma, const std::string& shape_name,
                  std::int64_t budget, const std::string& emit_spec_path,
                  const std::string& out_path,
                  const std::string& cache_dir_flag) {
  FunctionSpec spec;
  spec.kind = kind;
  spec.seed_log_a0 = seed_a;
  spec.seed_log_b0 = seed_b;
  spec.n_bands = n_bands;
  spec.moderation_p = p;
  if (delta_kind == "one-over-log") {
    spec.delta_spec.kind = DeltaSpec::Kind::OneOverLog;
  } else if (delta_kind == "power") {
    spec.delta_spec.kind = DeltaSpec::Kind::PowerLaw;
    spec.delta_spec.gamma = gamma;
  } else {
    throw SpecParseError("--delta must be 'one-over-log' or 'power'");
  }
  if (shape_name == "arcsine")
    spec.density.shape = BandShape::Arcsine;
  else if (shape_name == "sqrt-radius")
    spec.density.shape = BandShape::SqrtRadius;
  else if (shape_name == "uniform-log")
    spec.density.shape = BandShape::UniformLog;
  else
    throw SpecParseError(
        "--shape must be 'arcsine', 'sqrt-radius' or 'uniform-log'");
  spec.density.enumeration_budget = budget;

  const json args = {{"kind", kind}};
  json bundle = run_cached(
      spec, "construct", args, cache_dir_from(cache_dir_flag), [&] {
        auto bands = spec.build_bands();
        if (!bands) throw SpecParseError("--kind must be a bands-* kind");
        std::ostringstream csv;
        csv << "# schema: minmod-bands-csv-v1\n";
        csv << "band,log_a,log_b,a_two_level,log_log_a,b_two_level,log_log_b\n";
        for (std::size_t i = 0; i < bands->bands.size(); ++i) {
          const Band& b = bands->bands[i];
          csv << i << "," << fmt17(b.log_a) << "," << fmt17(b.log_b) << ","
              << (b.a_two_level ? 1 : 0) << "," << fmt17(b.log_log_a) << ","
              << (b.b_two_level ? 1 : 0) << "," << fmt17(b.log_log_b) << "\n";
        }
        json out;
        out["csv"] = csv.str();
        out["function_spec"] = spec.to_json();
        out["bands_built"] = bands->bands.size();
        out["bands_requested"] = bands->requested_bands;
        out["hit_overflow_horizon"] = bands->hit_overflow_horizon;
        return out;
      });
  const json& outs = bundle.at("outputs");
  emit(out_path, outs.at("csv").get<std::string>());
  if (outs.at("hit_overflow_horizon").get<bool>())
    std::cerr << "note: overflow horizon after "
              << outs.at("bands_built").get<int>() << " of "
              << outs.at("bands_requested").get<int>() << " bands\n";
  if (!emit_spec_path.empty())
    write_text(emit_spec_path, outs.at("function_spec").dump(2) + "\n");
  return 0;
}

int cmd_verify(const CommonArgs& c, const std::string& suite,
               double from_log10, double to_log10,
               const std::string& bundle_path) {
  FunctionSpec spec = load_spec(c);
  auto f = spec.build();
  const double lr_lo = from_log10 * kLn10;
  const double lr_hi = to_log10 * kLn10;
  const EvalSettings es = spec.settings();
  int failures = 0;
  auto report = [&](const std::string& name, bool ok, const std::string& why) {
    std::cout << (ok ? "PASS " : "FAIL ") << name
              << (why.empty() ? "" : ": " + why) << "\n";
    if (!ok) ++failures;
  };

  if (suite.empty())
    throw SpecParseError("--suite must name an invariant suite");
  const bool all = suite == "all";
  if (!all && suite != "sandwich" && suite != "beurling" &&
      suite != "angular" && suite != "trap")
    throw SpecParseError("unknown suite '" + suite + "'");

  if (all || suite == "sandwich") {
    bool ok = true;
    std::string why;
    for (int i = 0; i < 40 && ok; ++i) {
      const double lr = lr_lo + (lr_hi - lr_lo) * i / 39.0;
      auto rep = sandwich_check(f, lr, es);
      if (!rep.ok) {
        ok = false;
        why = "violated at log_r = " + fmt17(lr);
      }
    }
    report("sandwich", ok, why);
  }
  if (all || suite == "beurling") {
    bool ok = true;
    std::string why;
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> ur(lr_lo, lr_hi);
    std::uniform_real_distribution<double> uq(0.05, 0.95);
    for (int i = 0; i < 20 && ok; ++i) {
      double a = ur(rng), b = ur(rng);
      if (a > b) std::swap(a, b);
      if (b - a < 0.2) continue;
      const double cap = log_max_modulus(f, a, es);
      const double thresh = cap - uq(rng) * (std::abs(cap) + 3.0) - 0.05;
      auto rep = beurling_verify(f, a, b, thresh, ScanSettings{}, es);
      if (!rep.holds) {
        ok = false;
        why = "violated on [" + fmt17(a) + ", " + fmt17(b) + "]";
      }
    }
    report("beurling", ok, why);
  }
  if (all || suite == "angular") {
    bool ok = true;
    std::string why;
    for (int i = 0; i < 10 && ok; ++i) {
      const double lr = lr_lo + (lr_hi - lr_lo) * i / 9.0;
      double prev = 1e308;
      for (int j = 0; j <= 32; ++j) {
        const double theta = std::numbers::pi * j / 32.0;
        const double v = log_abs_at_angle(f, lr, theta, es);
        if (v > prev + 1e-8 * (1.0 + std::abs(prev))) {
          ok = false;
          why = "not monotone at log_r = " + fmt17(lr);
          break;
        }
        prev = v;
      }
    }
    report("angular", ok, why);
  }
  if (all || suite == "trap") {
    bool ok = true;
    std::string why;
    double trap_lr = 0.0;
    bool found = false;
    for (int i = 9; i >= 0 && !found; --i) {
      const double lr = lr_lo + (lr_hi - lr_lo) * i / 9.0;
      if (trap_check(f, lr, ScanSettings{}, es)) {
        trap_lr = lr;
        found = true;
      }
    }
    if (!found) {
      report("trap", true, "no certified trap in range (vacuous)");
    } else {
      std::mt19937 rng(11);
      std::uniform_real_distribution<double> ur(trap_lr - 5.0, trap_lr);
      for (int i = 0; i < 20 && ok; ++i) {
        auto rec = iterate_modulus(f, ur(rng), MapKind::Min, 40,
                                   kDefaultEscapeLogRadius, es, ScanSettings{},
                                   false);
        for (double v : rec.steps) {
          if (is_neg_inf(v)) break;
          if (v > trap_lr + 1e-9) {
            ok = false;
            why = "orbit crossed certified trap at log_r = " + fmt17(trap_lr);
            break;
          }
        }
      }
      report("trap", ok, why);
    }
  }
  if (!bundle_path.empty()) {
    // recompute a stored profile bundle and compare byte for byte
    std::ifstream in(bundle_path);
    if (!in) throw SpecParseError("cannot open bundle: " + bundle_path);
    json stored;
    try {
      in >> stored;
    } catch (const json::parse_error& e) {
      throw SpecParseError(std::string("bundle parse error: ") + e.what());
    }
    bool ok = true;
    std::string why;
    try {
      const std::string cmd = stored.at("command").get<std::string>();
      if (cmd != "profile") {
        ok = false;
        why = "only profile bundles are re-checkable";
      } else if (stored.at("spec_digest").get<std::string>() !=
                 spec.digest()) {
        ok = false;
        why = "spec digest mismatch";
      } else {
        const json& args = stored.at("args");
        auto prof = build_profile(f, args.at("from").get<double>() * kLn10,
                                  args.at("to").get<double>() * kLn10,
                                  args.at("ppd").get<int>(), es);
        if (stored.at("outputs").at("csv").get<std::string>() !=
            profile_csv(prof)) {
          ok = false;
          why = "stored profile differs from recomputation";
        }
      }
    } catch (const json::exception& e) {
      ok = false;
      why = std::string("bundle malformed: ") + e.what();
    }
    report("bundle-consistency", ok, why);
  }
  return failures == 0 ? 0 : 4;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"minimum/maximum modulus workbench for canonical products"};
  app.require_subcommand(1);

  CommonArgs common;
  std::string plot_path, map_name = "min", suite = "all", bundle_path;
  std::string kind = "bands-minimal-type", delta_kind = "one-over-log";
  std::string shape_name = "arcsine", emit_spec_path;
  double from10 = 0.0, to10 = 4.0, threshold10 = 12.0;
  double seed_a = 1.0, seed_b = 2.0, p_exp = 10.0, gamma = 1.0;
  int ppd = 16, points = 33, budget = 100, n_bands = 3;
  std::int64_t enum_budget = 250'000;
  std::vector<double> radii10, starts10;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--spec", common.spec_path, "function spec JSON file")
        ->required();
    sub->add_option("--out", common.out_path, "output file (default stdout)");
    sub->add_option("--cache-dir", common.cache_dir_flag,
                    "result cache directory (or MINMOD_CACHE_DIR)");
    sub->add_option("--tolerance", common.tolerance,
                    "relative evaluation tolerance override");
  };

  auto* profile = app.add_subcommand(
      "profile", "sample log M, log m and the eps/k transforms on a log grid");
  add_common(profile);
  profile->add_option("--from", from10, "lower radius, log10")->required();
  profile->add_option("--to", to10, "upper radius, log10")->required();
  profile->add_option("--points-per-decade", ppd, "grid density");
  profile->add_option("--plot", plot_path, "write an SVG line plot here");

  auto* mtilde = app.add_subcommand(
      "mtilde", "running maximum of the minimum modulus with its argmax");
  add_common(mtilde);
  mtilde->add_option("--from", from10, "lower radius, log10")->required();
  mtilde->add_option("--to", to10, "upper radius, log10")->required();
  mtilde->add_option("--points", points, "number of checkpoints");

  auto* criterion = app.add_subcommand(
      "criterion", "witness search for the growth-regularity criterion");
  add_common(criterion);
  criterion->add_option("--radii", radii10, "radii to test, log10")
      ->required()
      ->delimiter(',');

  auto* orbit =
      app.add_subcommand("orbit", "iterate the minimum or maximum modulus");
  add_common(orbit);
  orbit->add_option("--starts", starts10, "start radii, log10")
      ->required()
      ->delimiter(',');
  orbit->add_option("--map", map_name, "min | max");
  orbit->add_option("--budget", budget, "iteration budget");
  orbit->add_option("--threshold", threshold10, "escape radius, log10");

  auto* construct = app.add_subcommand(
      "construct", "build a band sequence and emit a function spec");
  construct->add_option("--kind", kind, "bands-minimal-type | bands-lower-half");
  construct->add_option("--seed-log-a", seed_a, "log a_0 (natural log)");
  construct->add_option("--seed-log-b", seed_b, "log b_0 (natural log)");
  construct->add_option("--bands", n_bands, "number of bands");
  construct->add_option("--p", p_exp, "moderation exponent (>= 2)");
  construct->add_option("--delta", delta_kind, "one-over-log | power");
  construct->add_option("--gamma", gamma, "power-law delta exponent");
  construct->add_option("--shape", shape_name,
                        "arcsine | sqrt-radius | uniform-log");
  construct->add_option("--budget", enum_budget, "zero enumeration budget");
  construct->add_option("--emit-spec", emit_spec_path,
                        "write the function spec JSON here");
  construct->add_option("--out", common.out_path, "band table output file");
  construct->add_option("--cache-dir", common.cache_dir_flag,
                        "result cache directory (or MINMOD_CACHE_DIR)");

  auto* verify = app.add_subcommand(
      "verify", "run invariant suites: sandwich, beurling, angular, trap");
  add_common(verify);
  verify->add_option("--suite", suite,
                     "all | sandwich | beurling | angular | trap");
  verify->add_option("--from", from10, "lower radius, log10");
  verify->add_option("--to", to10, "upper radius, log10");
  verify->add_option("--bundle", bundle_path,
                     "re-check a stored profile bundle for consistency");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (profile->parsed())
      return cmd_profile(common, from10, to10, ppd, plot_path);
    if (mtilde->parsed()) return cmd_mtilde(common, from10, to10, points);
    if (criterion->parsed()) return cmd_criterion(common, radii10);
    if (orbit->parsed())
      return cmd_orbit(common, starts10, map_name, budget, threshold10);
    if (construct->parsed())
      return cmd_construct(kind, seed_a, seed_b, n_bands, p_exp, delta_kind,
                           gamma, shape_name, enum_budget, emit_spec_path,
                           common.out_path, common.cache_dir_flag);
    if (verify->parsed())
      return cmd_verify(common, suite, from10, to10, bundle_path);
  } catch (const SpecParseError& e) {
    std::cerr << "spec error: " << e.what() << "\n";
    return 2;
  } catch (const NumericError& e) {
    std::cerr << "numerical error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
