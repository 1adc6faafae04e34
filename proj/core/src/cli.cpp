#include "bellscope/cli.hpp"

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "bellscope/bell.hpp"
#include "bellscope/errors.hpp"
#include "bellscope/families.hpp"
#include "bellscope/io.hpp"
#include "bellscope/multipartite.hpp"
#include "bellscope/realization.hpp"
#include "bellscope/tightness.hpp"
#include "bellscope/version.hpp"

namespace bellscope {

const char* version() {
#ifdef BELLSCOPE_VERSION_STRING
  return BELLSCOPE_VERSION_STRING;
#else
  return "0.0.0";
#endif
}

}  // namespace bellscope

namespace bellscope::cli {

namespace {

// Reports print reals with 12 significant digits.
std::string fmt_real(double x) {
  if (!std::isfinite(x)) return "null";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

std::string escape(const std::string& s) {
  std::string out;
  out.reserve(s.size() + 2);
  for (char ch : s) {
    switch (ch) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      case '\r': out += "\\r"; break;
      default:
        if (static_cast<unsigned char>(ch) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof buf, "\\u%04x", ch);
          out += buf;
        } else {
          out += ch;
        }
    }
  }
  return out;
}

/// Minimal ordered JSON assembler; keys appear exactly in insertion order.
class JsonObject {
 public:
  JsonObject& real(const std::string& key, double value) {
    return raw(key, fmt_real(value));
  }
  JsonObject& integer(const std::string& key, std::int64_t value) {
    return raw(key, std::to_string(value));
  }
  JsonObject& boolean(const std::string& key, bool value) {
    return raw(key, value ? "true" : "false");
  }
  JsonObject& text(const std::string& key, const std::string& value) {
    return raw(key, "\"" + escape(value) + "\"");
  }
  JsonObject& raw(const std::string& key, const std::string& value) {
    if (!first_) out_ += ",";
    first_ = false;
    out_ += "\"" + escape(key) + "\":" + value;
    return *this;
  }
  std::string str() const { return "{" + out_ + "}"; }

 private:
  std::string out_;
  bool first_ = true;
};

std::string matrix_json(const Eigen::MatrixXd& m) {
  std::string out = "[";
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    if (i > 0) out += ",";
    out += "[";
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (j > 0) out += ",";
      out += fmt_real(m(i, j));
    }
    out += "]";
  }
  return out + "]";
}

std::string int_list_json(const std::vector<int>& values) {
  std::string out = "[";
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i > 0) out += ",";
    out += std::to_string(values[i]);
  }
  return out + "]";
}

void emit(const std::string& body) { std::cout << body << "\n"; }

struct ToleranceOptions {
  double degeneracy_tol = 1e-9;
  double solve_tol = 1e-7;

  TightnessOptions tightness() const {
    TightnessOptions opt;
    opt.degeneracy_tol = degeneracy_tol;
    opt.solve_tol = solve_tol;
    return opt;
  }
};

void add_tolerance_options(CLI::App* cmd, ToleranceOptions& tols) {
  cmd->add_option("--tol", tols.degeneracy_tol,
                  "Relative tolerance defining the degeneracy d")
      ->capture_default_str();
  cmd->add_option("--solve-tol", tols.solve_tol,
                  "Acceptance threshold on ||Qc - 1||_inf")
      ->capture_default_str();
}

std::string realization_json(const realization::RealizationReport& report,
                             bool with_correlations) {
  JsonObject obj;
  obj.integer("D", report.local_dimension)
      .real("bell_value", report.bell_value)
      .real("max_corr_error", report.max_corr_error);
  if (with_correlations) {
    obj.raw("correlations", matrix_json(report.correlations));
  }
  return obj.str();
}

void run_analyze(const std::string& path, bool with_seesaw, std::uint64_t seed,
                 const ToleranceOptions& tols, std::uint64_t max_enum) {
  const BellMatrix bm = io::parse_matrix(path);
  const double t = quantum_bound(bm);
  const double b = local_bound(bm, max_enum);

  const TightnessResult tr = solve_alpha(bm, tols.tightness());

  JsonObject input;
  input.integer("rows", bm.settings_1())
      .integer("cols", bm.settings_2())
      .text("label", bm.label);

  JsonObject report;
  report.raw("input", input.str());
  report.real("T", t).real("B", b);
  if (b > 0.0) {
    report.real("ratio", t / b);
  }
  report.boolean("bell_candidate", t - b > 1e-9 * std::max(1.0, t));
  report.boolean("tight", tr.tight);
  report.integer("d", tr.degeneracy);
  if (tr.min_dimension) {
    report.integer("d_prime", *tr.min_dimension);
  }
  report.real("residuals", tr.residual);
  if (with_seesaw) {
    const int dim = SeesawDefaults::dim(bm);
    const VectorStrategy best = seesaw_lower_bound(
        bm, dim, SeesawDefaults::restarts, SeesawDefaults::iters, seed);
    JsonObject seesaw;
    seesaw.real("value", best.value)
        .integer("dim", dim)
        .integer("restarts", SeesawDefaults::restarts)
        .integer("iters", SeesawDefaults::iters);
    report.raw("seesaw", seesaw.str());
  }
  if (tr.tight && tr.min_dimension && *tr.min_dimension <= 12) {
    const auto real_report = realization::verify_realization(bm, tr);
    report.raw("realization", realization_json(real_report, false));
  }
  report.text("version", bellscope::version());
  report.integer("seed", static_cast<std::int64_t>(seed));
  emit(report.str());
}

void run_tight(const std::string& path, const ToleranceOptions& tols) {
  const BellMatrix bm = io::parse_matrix(path);
  const TightnessResult tr = solve_alpha(bm, tols.tightness());
  JsonObject report;
  report.boolean("tight", tr.tight).integer("d", tr.degeneracy);
  if (tr.min_dimension) {
    report.integer("d_prime", *tr.min_dimension);
  }
  report.real("residuals", tr.residual);
  if (tr.failure_reason) {
    report.text("failure_reason", to_string(*tr.failure_reason));
  }
  emit(report.str());
}

void run_multi(const std::string& path, const std::optional<std::pair<int, int>>& pair,
               bool scan, std::uint64_t max_enum) {
  const BellTensor tensor = io::parse_tensor(path);
  JsonObject report;
  report.raw("shape", int_list_json(tensor.shape));
  int p = 1;
  int q = 2;
  if (scan) {
    auto [bp, bq, bound] = best_pair_bound(tensor);
    p = bp;
    q = bq;
    std::string pairs = "[";
    bool first = true;
    for (int a = 1; a <= tensor.parties(); ++a) {
      for (int b = a + 1; b <= tensor.parties(); ++b) {
        if (!first) pairs += ",";
        first = false;
        JsonObject entry;
        entry.raw("pair", int_list_json({a, b}))
            .real("T", multipartite_bound(tensor, a, b));
        pairs += entry.str();
      }
    }
    pairs += "]";
    report.raw("pairs", pairs);
    report.raw("best_pair", int_list_json({p, q}));
    report.real("T", bound);
  } else {
    if (pair) {
      p = pair->first;
      q = pair->second;
    }
    report.raw("pair", int_list_json({p, q}));
    report.real("T", multipartite_bound(tensor, p, q));
  }
  try {
    report.real("B", multipartite_local_bound(tensor, max_enum));
  } catch (const EnumerationLimitError&) {
    std::cerr << "note: local bound skipped, enumeration exceeds guard\n";
  }
  emit(report.str());
}

void run_ellipsoid(const std::string& path, const std::string& out_csv,
                   const ToleranceOptions& tols) {
  const BellMatrix bm = io::parse_matrix(path);
  const EllipsoidData data = ellipsoid_data(bm, tols.tightness());

  std::ostringstream csv;
  const Eigen::Index d = data.points_v.cols();
  csv << "set,index";
  for (Eigen::Index c = 0; c < d; ++c) {
    csv << ",c" << c;
  }
  csv << "\n";
  auto dump_points = [&](const char* name, const Eigen::MatrixXd& pts) {
    for (Eigen::Index i = 0; i < pts.rows(); ++i) {
      csv << name << "," << (i + 1);
      for (Eigen::Index c = 0; c < pts.cols(); ++c) {
        csv << "," << fmt_real(pts(i, c));
      }
      csv << "\n";
    }
  };
  dump_points("V", data.points_v);
  dump_points("W", data.points_w);
  io::write_file(out_csv, csv.str());

  if (data.quadric) {
    JsonObject quadric;
    quadric.raw("X", matrix_json(*data.quadric));
    io::write_file(out_csv + ".quadric.json", quadric.str() + "\n");
  } else {
    std::cerr << "note: bound not tight, no quadric sidecar written\n";
  }
}

families::FamilyInstance make_family(const std::string& family,
                                     const std::optional<std::int64_t>& param,
                                     std::uint64_t seed, double s44) {
  auto need_param = [&](const char* what) {
    if (!param) {
      throw ParseError(std::string("gen ") + family + ": missing parameter (" +
                       what + ")");
    }
    return static_cast<int>(*param);
  };
  using namespace families;
  if (family == "chsh-power") return chsh_power(need_param("k"));
  if (family == "bc") return braunstein_caves(need_param("M"));
  if (family == "geq") return greater_equal(need_param("M"));
  if (family == "bits") return binary_digits(need_param("M2"));
  if (family == "fr") return fishburn_reeds(need_param("k"));
  if (family == "mermin") return mermin(need_param("n"));
  if (family == "qubit") return qubit_inequality(s44);
  if (family == "witness") {
    return random_dimension_witness(need_param("d"), seed);
  }
  throw ParseError("gen: unknown family '" + family +
                   "' (expected chsh-power, bc, geq, bits, fr, mermin, qubit, "
                   "witness)");
}

void run_gen(const std::string& family, const std::optional<std::int64_t>& param,
             std::uint64_t seed, double s44, const std::string& out) {
  const families::FamilyInstance fi = make_family(family, param, seed, s44);
  if (fi.is_matrix()) {
    io::write_file(out, io::matrix_to_json(fi.matrix()));
  } else {
    io::write_file(out, io::tensor_to_json(fi.tensor()));
  }
}

void run_realize(const std::string& path, const ToleranceOptions& tols) {
  const BellMatrix bm = io::parse_matrix(path);
  const TightnessResult tr = solve_alpha(bm, tols.tightness());
  if (!tr.tight) {
    throw PreconditionError("realize: bound is not tight for this input");
  }
  const auto report = realization::verify_realization(bm, tr);
  emit(realization_json(report, true));
}

}  // namespace

int run(int argc, const char* const* argv) {
  CLI::App app{"Analyze correlation-type Bell inequalities: quantum and "
               "local bounds, tightness, optimal vectors, realizations."};
  app.set_version_flag("--version", bellscope::version());
  app.require_subcommand(1);

  std::string file;
  std::string out;
  std::uint64_t seed = 0;
  std::uint64_t max_enum = kDefaultMaxEnumeration;
  ToleranceOptions tols;
  bool with_seesaw = false;

  auto* bound = app.add_subcommand("bound", "Quantum bound T");
  bound->add_option("file", file, "Matrix file (JSON or CSV)")->required();

  auto* local = app.add_subcommand("local", "Local hidden variable bound B");
  local->add_option("file", file, "Matrix file (JSON or CSV)")->required();
  local->add_option("--max-enum", max_enum, "Enumeration guard in evaluations")
      ->capture_default_str();

  auto* tight = app.add_subcommand("tight", "Decide whether T is attained");
  tight->add_option("file", file, "Matrix file (JSON or CSV)")->required();
  add_tolerance_options(tight, tols);

  auto* analyze = app.add_subcommand("analyze", "Full analysis report");
  analyze->add_option("file", file, "Matrix file (JSON or CSV)")->required();
  analyze->add_flag("--seesaw", with_seesaw, "Include the see-saw lower bound");
  analyze->add_option("--seed", seed, "Seed for the see-saw restarts")
      ->capture_default_str();
  analyze->add_option("--max-enum", max_enum, "Enumeration guard in evaluations")
      ->capture_default_str();
  add_tolerance_options(analyze, tols);

  std::string family;
  std::optional<std::int64_t> family_param;
  std::int64_t family_param_raw = 0;
  double s44 = 1.0;
  auto* gen = app.add_subcommand("gen", "Generate an inequality family instance");
  gen->add_option("family", family,
                  "chsh-power | bc | geq | bits | fr | mermin | qubit | witness")
      ->required();
  auto* param_opt = gen->add_option("param", family_param_raw,
                                    "Family parameter (k, M, M2, n or d)");
  gen->add_option("--seed", seed, "Seed (witness family)")->capture_default_str();
  gen->add_option("--s44", s44, "Free singular value of the qubit family")
      ->capture_default_str();
  gen->add_option("-o,--output", out, "Output file")->required();

  std::vector<int> pair_values;
  bool scan = false;
  auto* multi = app.add_subcommand("multi", "Multipartite bound");
  multi->add_option("file", file, "Tensor file (JSON)")->required();
  auto* pair_opt =
      multi->add_option("--pair", pair_values, "Party pair p q (1-based)")
          ->expected(2);
  multi->add_flag("--scan", scan, "Minimize over all party pairs")
      ->excludes(pair_opt);
  multi->add_option("--max-enum", max_enum, "Enumeration guard in evaluations")
      ->capture_default_str();

  auto* realize = app.add_subcommand("realize", "Explicit quantum realization");
  realize->add_option("file", file, "Matrix file (JSON or CSV)")->required();
  add_tolerance_options(realize, tols);

  auto* ellipsoid =
      app.add_subcommand("ellipsoid", "Export the ellipsoid picture as CSV");
  ellipsoid->add_option("file", file, "Matrix file (JSON or CSV)")->required();
  ellipsoid->add_option("-o,--output", out, "Output CSV path")->required();
  add_tolerance_options(ellipsoid, tols);

  try {
    app.parse(argc, argv);
    if (param_opt->count() > 0) {
      family_param = family_param_raw;
    }

    if (bound->parsed()) {
      const BellMatrix bm = io::parse_matrix(file);
      emit(JsonObject().real("T", quantum_bound(bm)).str());
    } else if (local->parsed()) {
      const BellMatrix bm = io::parse_matrix(file);
      emit(JsonObject().real("B", local_bound(bm, max_enum)).str());
    } else if (tight->parsed()) {
      run_tight(file, tols);
    } else if (analyze->parsed()) {
      run_analyze(file, with_seesaw, seed, tols, max_enum);
    } else if (gen->parsed()) {
      run_gen(family, family_param, seed, s44, out);
    } else if (multi->parsed()) {
      std::optional<std::pair<int, int>> pair;
      if (pair_values.size() == 2) {
        pair = std::make_pair(pair_values[0], pair_values[1]);
      }
      run_multi(file, pair, scan, max_enum);
    } else if (realize->parsed()) {
      run_realize(file, tols);
    } else if (ellipsoid->parsed()) {
      run_ellipsoid(file, out, tols);
    }
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsageOrParse;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsageOrParse;
  } catch (const EnumerationLimitError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kEnumerationGuard;
  } catch (const PreconditionError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kPreconditionViolation;
  } catch (const NumericalError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kNumericalFailure;
  }
  return kOk;
}

}  // namespace bellscope::cli
