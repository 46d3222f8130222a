// dhmu: experiment harness around the derivative-Hilbert operator toolkit.
//
// Subcommands map one-to-one onto library entry points and emit CSV or JSON
// reports. All floating-point output is printed with 17 significant digits so
// doubles round-trip exactly; reports carry no timestamps or locale-dependent
// text, which makes identical runs byte-identical.
//
// Exit codes: 0 success, 1 domain error (invalid parameter values), 2 parse
// error (bad flags or malformed measure files), 3 numerics did not converge
// (the report is still written).

#include <charconv>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "dhmu/analysis.hpp"
#include "dhmu/hankel_operator.hpp"
#include "dhmu/measure.hpp"
#include "dhmu/spaces.hpp"
#include "dhmu/specialfn.hpp"
#include "dhmu/types.hpp"

namespace {

using dhmu::Index;
using Measure = dhmu::Measure<double>;

// Distinguishes malformed input files from domain errors: parse problems exit
// with code 2, invalid parameter values with code 1.
struct ParseFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string fmt(double x) {
  char buf[48];
  auto res = std::to_chars(buf, buf + sizeof(buf), x, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

std::string fmt(Index n) { return std::to_string(static_cast<long long>(n)); }

std::string fmt(bool b) { return b ? "true" : "false"; }

// CSV fields are quoted only when they contain a delimiter, quote, or newline.
std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::string json_string(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      case '\r': out += "\\r"; break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof(buf), "\\u%04x", c);
          out += buf;
        } else {
          out += c;
        }
    }
  }
  out += '"';
  return out;
}

std::string json_array(const dhmu::Vector<double>& v) {
  std::string out = "[";
  for (Index i = 0; i < v.size(); ++i) {
    if (i) out += ", ";
    out += fmt(v[i]);
  }
  return out + "]";
}

std::string json_array(const std::vector<Index>& v) {
  std::string out = "[";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ", ";
    out += fmt(v[i]);
  }
  return out + "]";
}

std::string json_array(const std::vector<bool>& v) {
  std::string out = "[";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ", ";
    out += fmt(bool(v[i]));
  }
  return out + "]";
}

double require_number(const nlohmann::json& j, const char* key, const char* where) {
  if (!j.contains(key) || !j.at(key).is_number())
    throw ParseFailure(std::string("measure file: ") + where + " needs numeric field '" + key +
                       "'");
  return j.at(key).get<double>();
}

Measure parse_measure_json(const nlohmann::json& j) {
  if (j.is_string()) {
    if (j.get<std::string>() == "lebesgue") return Measure::lebesgue();
    throw ParseFailure("measure file: unknown preset '" + j.get<std::string>() + "'");
  }
  if (!j.is_object()) throw ParseFailure("measure file: top level must be an object or preset");
  for (const auto& item : j.items()) {
    if (item.key() != "atoms" && item.key() != "densities")
      throw ParseFailure("measure file: unknown key '" + item.key() + "'");
  }
  std::vector<dhmu::PointMass<double>> atoms;
  std::vector<dhmu::JacobiDensity<double>> densities;
  if (j.contains("atoms")) {
    if (!j.at("atoms").is_array()) throw ParseFailure("measure file: 'atoms' must be an array");
    for (const auto& a : j.at("atoms")) {
      if (!a.is_object()) throw ParseFailure("measure file: atom entries must be objects");
      atoms.push_back({require_number(a, "t", "atom"), require_number(a, "c", "atom")});
    }
  }
  if (j.contains("densities")) {
    if (!j.at("densities").is_array())
      throw ParseFailure("measure file: 'densities' must be an array");
    for (const auto& d : j.at("densities")) {
      if (!d.is_object()) throw ParseFailure("measure file: density entries must be objects");
      densities.push_back({require_number(d, "a", "density"), require_number(d, "b", "density"),
                           require_number(d, "scale", "density")});
    }
  }
  // value-range validation lives in the Measure constructor (domain error)
  return Measure(std::move(atoms), std::move(densities));
}

Measure load_measure(const std::string& source) {
  if (source == "lebesgue") return Measure::lebesgue();
  std::ifstream in(source);
  if (!in) throw ParseFailure("cannot open measure file: " + source);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ParseFailure("measure file '" + source + "' is not valid JSON: " + e.what());
  }
  return parse_measure_json(j);
}

std::string measure_to_json(const Measure& m) {
  std::string out = "{\n  \"atoms\": [";
  const auto& atoms = m.atoms();
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    out += (i ? ",\n    " : "\n    ");
    out += "{\"t\": " + fmt(atoms[i].position) + ", \"c\": " + fmt(atoms[i].mass) + "}";
  }
  if (!atoms.empty()) out += "\n  ";
  out += "],\n  \"densities\": [";
  const auto& ds = m.densities();
  for (std::size_t i = 0; i < ds.size(); ++i) {
    out += (i ? ",\n    " : "\n    ");
    out += "{\"a\": " + fmt(ds[i].a) + ", \"b\": " + fmt(ds[i].b) +
           ", \"scale\": " + fmt(ds[i].scale) + "}";
  }
  if (!ds.empty()) out += "\n  ";
  out += "]\n}\n";
  return out;
}

// Splits a comma-separated numeric tuple such as "0.5,1" or "0,1.5,1".
std::vector<double> parse_tuple(const std::string& s, std::size_t arity, const char* what) {
  std::vector<double> vals;
  std::stringstream ss(s);
  std::string part;
  while (std::getline(ss, part, ',')) {
    double v = 0;
    const char* b = part.data();
    const char* e = b + part.size();
    auto res = std::from_chars(b, e, v);
    if (res.ec != std::errc() || res.ptr != e)
      throw ParseFailure(std::string(what) + ": expected a number, got '" + part + "'");
    vals.push_back(v);
  }
  if (vals.size() != arity)
    throw ParseFailure(std::string(what) + ": expected " + std::to_string(arity) +
                       " comma-separated values, got '" + s + "'");
  return vals;
}

struct Options {
  std::string measure;
  double alpha = 2.0;
  double beta = 2.0;
  double s = 1.0;
  Index n = 32;
  std::vector<Index> trunc = {128, 256, 512, 1024};
  std::vector<Index> cuts = {16, 32, 64, 128};
  std::vector<double> tgrid = {0.5, 0.9, 0.99, 0.999};
  Index levels = 24;
  Index decay_n = 4096;
  Index quad_levels = 48;
  Index quad_nodes = 16;
  double quad_tol = 1e-6;
  Index trials = 200;
  Index k = 4096;
  unsigned long long seed = 1;
  double tol = 1e-10;
  Index max_iter = 10000;
  std::string format = "csv";
  std::string out;
  std::vector<std::string> atom_args;
  std::vector<std::string> density_args;
  std::string preset;
};

struct Report {
  std::string text;
  int code = 0;
};

Report run_moments(const Options& o) {
  const Measure m = load_measure(o.measure);
  const auto seq = dhmu::moment_sequence(m, o.n);
  std::string text;
  if (o.format == "csv") {
    text = "n,moment\n";
    for (Index i = 0; i < seq.values.size(); ++i) text += fmt(i) + "," + fmt(seq.values[i]) + "\n";
  } else {
    text = "{\n  \"moments\": " + json_array(seq.values) + "\n}\n";
  }
  return {text, 0};
}

Report run_carleson(const Options& o) {
  const Measure m = load_measure(o.measure);
  const auto rep =
      dhmu::carleson_report(m, o.s, dhmu::default_carleson_grid<double>(o.levels));
  std::string text;
  if (o.format == "csv") {
    text = "t,tail,ratio\n";
    for (Index i = 0; i < rep.grid.size(); ++i)
      text += fmt(rep.grid[i]) + "," + fmt(rep.tails[i]) + "," + fmt(rep.ratios[i]) + "\n";
  } else {
    text = "{\n";
    text += "  \"exponent\": " + fmt(rep.exponent) + ",\n";
    text += "  \"grid\": " + json_array(rep.grid) + ",\n";
    text += "  \"tails\": " + json_array(rep.tails) + ",\n";
    text += "  \"ratios\": " + json_array(rep.ratios) + ",\n";
    text += "  \"sup_ratio\": " + fmt(rep.sup_ratio) + ",\n";
    text += "  \"vanishing_trend\": " + fmt(rep.vanishing_trend) + "\n}\n";
  }
  return {text, 0};
}

Report run_decay(const Options& o) {
  const Measure m = load_measure(o.measure);
  const auto rep = dhmu::moment_decay_report(m, o.s, o.decay_n);
  std::string text;
  if (o.format == "csv") {
    text = "n,moment,weighted\n";
    for (Index i = 0; i < rep.moments.size(); ++i)
      text += fmt(i) + "," + fmt(rep.moments[i]) + "," + fmt(rep.weighted[i]) + "\n";
  } else {
    text = "{\n";
    text += "  \"exponent\": " + fmt(rep.exponent) + ",\n";
    text += "  \"moments\": " + json_array(rep.moments) + ",\n";
    text += "  \"weighted\": " + json_array(rep.weighted) + ",\n";
    text += "  \"sup_weighted\": " + fmt(rep.sup_weighted) + ",\n";
    text += "  \"trend\": " + fmt(rep.trend) + "\n}\n";
  }
  return {text, 0};
}

std::string norm_curve_json(const dhmu::NormCurve<double>& curve, const std::string& indent) {
  std::string text = "{\n";
  text += indent + "  \"truncations\": " + json_array(curve.truncations) + ",\n";
  text += indent + "  \"estimates\": " + json_array(curve.estimates) + ",\n";
  text += indent + "  \"growth_ratios\": " + json_array(curve.growth_ratios) + ",\n";
  text += indent + "  \"iterations\": " + json_array(curve.iterations) + ",\n";
  text += indent + "  \"converged\": " + json_array(curve.converged) + ",\n";
  text += indent + "  \"all_converged\": " + fmt(curve.all_converged) + "\n";
  text += indent + "}";
  return text;
}

std::string norm_curve_csv(const dhmu::NormCurve<double>& curve) {
  std::string text = "N,estimate,growth_ratio,converged\n";
  for (std::size_t i = 0; i < curve.truncations.size(); ++i) {
    text += fmt(curve.truncations[i]) + "," + fmt(curve.estimates[Index(i)]) + ",";
    if (i > 0) text += fmt(curve.growth_ratios[Index(i) - 1]);
    text += "," + fmt(bool(curve.converged[i])) + "\n";
  }
  return text;
}

Report run_norm(const Options& o) {
  const Measure m = load_measure(o.measure);
  const dhmu::KernelParams<double> p(o.alpha, o.beta);
  const auto curve = dhmu::operator_norm_curve(m, p, o.trunc, o.tol, o.max_iter);
  std::string text;
  if (o.format == "csv")
    text = norm_curve_csv(curve);
  else
    text = norm_curve_json(curve, "") + "\n";
  return {text, curve.all_converged ? 0 : 3};
}

Report run_kernel(const Options& o) {
  const dhmu::KernelParams<double> p(o.alpha, o.beta);
  const double constant = dhmu::hardy_constant(p);
  const dhmu::QuadratureSpec<double> spec{o.quad_levels, o.quad_nodes, o.quad_tol};
  const auto qx = dhmu::kernel_integral_check(p, spec, dhmu::KernelAxis::x);
  const auto qy = dhmu::kernel_integral_check(p, spec, dhmu::KernelAxis::y);
  std::string text;
  if (o.format == "csv") {
    text = "axis,constant,integral,error_estimate,converged\n";
    text += "x," + fmt(constant) + "," + fmt(qx.value) + "," + fmt(qx.error_estimate) + "," +
            fmt(qx.converged) + "\n";
    text += "y," + fmt(constant) + "," + fmt(qy.value) + "," + fmt(qy.error_estimate) + "," +
            fmt(qy.converged) + "\n";
  } else {
    text = "{\n  \"constant\": " + fmt(constant) + ",\n";
    text += "  \"x\": {\"integral\": " + fmt(qx.value) +
            ", \"error_estimate\": " + fmt(qx.error_estimate) +
            ", \"converged\": " + fmt(qx.converged) + "},\n";
    text += "  \"y\": {\"integral\": " + fmt(qy.value) +
            ", \"error_estimate\": " + fmt(qy.error_estimate) +
            ", \"converged\": " + fmt(qy.converged) + "}\n}\n";
  }
  return {text, (qx.converged && qy.converged) ? 0 : 3};
}

Report run_schur(const Options& o) {
  const dhmu::KernelParams<double> p(o.alpha, o.beta);
  const auto rep = dhmu::schur_inequality_check(p, o.trials, o.k, o.seed);
  std::string text;
  if (o.format == "csv") {
    text = "trial,ratio\n";
    for (Index i = 0; i < rep.ratios.size(); ++i) text += fmt(i) + "," + fmt(rep.ratios[i]) + "\n";
  } else {
    text = "{\n  \"constant\": " + fmt(rep.constant) + ",\n";
    text += "  \"max_ratio\": " + fmt(rep.max_ratio) + ",\n";
    text += "  \"ratios\": " + json_array(rep.ratios) + "\n}\n";
  }
  return {text, 0};
}

Report run_equivalence(const Options& o) {
  const Measure m = load_measure(o.measure);
  const dhmu::KernelParams<double> p(o.alpha, o.beta);
  dhmu::DiagnosticConfig<double> config;
  config.truncations = o.trunc;
  config.decay_length = o.decay_n;
  config.carleson_levels = o.levels;
  config.tol = o.tol;
  config.max_iter = o.max_iter;
  const auto rep = dhmu::boundedness_diagnostic(m, p, config);
  const Index last = rep.norm_curve.estimates.size() - 1;
  const double final_estimate = rep.norm_curve.estimates[last];
  const double final_growth =
      (last >= 1) ? rep.norm_curve.growth_ratios[last - 1] : 1.0;
  std::string text;
  if (o.format == "csv") {
    text = "quantity,value\n";
    text += "exponent," + fmt(rep.exponent) + "\n";
    text += "carleson_sup_ratio," + fmt(rep.carleson.sup_ratio) + "\n";
    text += "carleson_vanishing_trend," + fmt(rep.carleson.vanishing_trend) + "\n";
    text += "decay_sup_weighted," + fmt(rep.moment_decay.sup_weighted) + "\n";
    text += "decay_trend," + fmt(rep.moment_decay.trend) + "\n";
    text += "c_mu," + fmt(rep.c_mu) + "\n";
    text += "hardy_bound," + fmt(rep.hardy_bound) + "\n";
    text += "norm_final," + fmt(final_estimate) + "\n";
    text += "norm_final_growth," + fmt(final_growth) + "\n";
    text += "all_converged," + fmt(rep.norm_curve.all_converged) + "\n";
    text += "verdict," + csv_field(rep.verdict_notes) + "\n";
  } else {
    text = "{\n  \"exponent\": " + fmt(rep.exponent) + ",\n";
    text += "  \"carleson\": {\n";
    text += "    \"exponent\": " + fmt(rep.carleson.exponent) + ",\n";
    text += "    \"grid\": " + json_array(rep.carleson.grid) + ",\n";
    text += "    \"tails\": " + json_array(rep.carleson.tails) + ",\n";
    text += "    \"ratios\": " + json_array(rep.carleson.ratios) + ",\n";
    text += "    \"sup_ratio\": " + fmt(rep.carleson.sup_ratio) + ",\n";
    text += "    \"vanishing_trend\": " + fmt(rep.carleson.vanishing_trend) + "\n  },\n";
    text += "  \"moment_decay\": {\n";
    text += "    \"exponent\": " + fmt(rep.moment_decay.exponent) + ",\n";
    text += "    \"moments\": " + json_array(rep.moment_decay.moments) + ",\n";
    text += "    \"weighted\": " + json_array(rep.moment_decay.weighted) + ",\n";
    text += "    \"sup_weighted\": " + fmt(rep.moment_decay.sup_weighted) + ",\n";
    text += "    \"trend\": " + fmt(rep.moment_decay.trend) + "\n  },\n";
    text += "  \"norm_curve\": " + norm_curve_json(rep.norm_curve, "  ") + ",\n";
    text += "  \"c_mu\": " + fmt(rep.c_mu) + ",\n";
    text += "  \"hardy_bound\": " + fmt(rep.hardy_bound) + ",\n";
    text += "  \"verdict\": " + json_string(rep.verdict_notes) + "\n}\n";
  }
  return {text, rep.norm_curve.all_converged ? 0 : 3};
}

Report run_compactness(const Options& o) {
  const Measure m = load_measure(o.measure);
  const dhmu::KernelParams<double> p(o.alpha, o.beta);
  const auto pts = dhmu::compactness_diagnostic(m, p, o.n, o.cuts, o.tol, o.max_iter);
  bool all = true;
  std::string text;
  if (o.format == "csv") {
    text = "mcut,estimate,converged\n";
    for (const auto& pt : pts) {
      text += fmt(pt.mcut) + "," + fmt(pt.estimate.value) + "," + fmt(pt.estimate.converged) +
              "\n";
      all = all && pt.estimate.converged;
    }
  } else {
    text = "{\n  \"n\": " + fmt(o.n) + ",\n  \"points\": [";
    for (std::size_t i = 0; i < pts.size(); ++i) {
      text += (i ? ",\n    " : "\n    ");
      text += "{\"mcut\": " + fmt(pts[i].mcut) + ", \"estimate\": " + fmt(pts[i].estimate.value) +
              ", \"converged\": " + fmt(pts[i].estimate.converged) + "}";
      all = all && pts[i].estimate.converged;
    }
    text += "\n  ]\n}\n";
  }
  return {text, all ? 0 : 3};
}

Report run_lowerbound(const Options& o) {
  const Measure m = load_measure(o.measure);
  const dhmu::KernelParams<double> p(o.alpha, o.beta);
  dhmu::Vector<double> grid(Index(o.tgrid.size()));
  for (Index i = 0; i < grid.size(); ++i) grid[i] = o.tgrid[std::size_t(i)];
  const auto pts = dhmu::lower_bound_check(m, p, grid);
  std::string text;
  if (o.format == "csv") {
    text = "t,ratio\n";
    for (const auto& pt : pts) text += fmt(pt.t) + "," + fmt(pt.ratio) + "\n";
  } else {
    text = "{\n  \"points\": [";
    for (std::size_t i = 0; i < pts.size(); ++i) {
      text += (i ? ",\n    " : "\n    ");
      text += "{\"t\": " + fmt(pts[i].t) + ", \"ratio\": " + fmt(pts[i].ratio) + "}";
    }
    text += "\n  ]\n}\n";
  }
  return {text, 0};
}

Report run_init_measure(const Options& o) {
  std::vector<dhmu::PointMass<double>> atoms;
  std::vector<dhmu::JacobiDensity<double>> densities;
  for (const auto& s : o.atom_args) {
    const auto v = parse_tuple(s, 2, "--atom");
    atoms.push_back({v[0], v[1]});
  }
  for (const auto& s : o.density_args) {
    const auto v = parse_tuple(s, 3, "--density");
    densities.push_back({v[0], v[1], v[2]});
  }
  if (!o.preset.empty()) {
    if (o.preset != "lebesgue") throw ParseFailure("unknown preset '" + o.preset + "'");
    densities.push_back({0.0, 0.0, 1.0});
  }
  const Measure m(std::move(atoms), std::move(densities));
  return {measure_to_json(m), 0};
}

int write_report(const Report& rep, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << rep.text;
    std::cout.flush();
  } else {
    std::ofstream out(out_path, std::ios::binary);
    if (!out) {
      std::cerr << "cannot open output file: " << out_path << "\n";
      return 1;
    }
    out << rep.text;
    if (!out) {
      std::cerr << "failed writing output file: " << out_path << "\n";
      return 1;
    }
  }
  return rep.code;
}

}  // namespace

int main(int argc, char** argv) {
  Options o;
  CLI::App app{"derivative-Hilbert operator experiment harness"};
  app.require_subcommand(1);

  const auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--format", o.format, "Report format: csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
    cmd->add_option("--out", o.out, "Output file (default: stdout)");
  };
  const auto add_measure = [&](CLI::App* cmd) {
    cmd->add_option("--measure", o.measure,
                    "Measure file (JSON) or the preset string 'lebesgue'")
        ->required();
  };
  const auto add_params = [&](CLI::App* cmd) {
    cmd->add_option("--alpha", o.alpha, "Source space exponent, in (0, 2]")->required();
    cmd->add_option("--beta", o.beta, "Target space exponent, in [2, 4)")->required();
  };
  const auto add_iteration = [&](CLI::App* cmd) {
    cmd->add_option("--tol", o.tol, "Power iteration relative tolerance");
    cmd->add_option("--max-iter", o.max_iter, "Power iteration cap");
  };

  CLI::App* moments = app.add_subcommand("moments", "Moment table mu_0 .. mu_n");
  add_measure(moments);
  moments->add_option("--n", o.n, "Largest moment index");
  add_common(moments);

  CLI::App* carleson = app.add_subcommand("carleson", "Tail masses and Carleson ratios");
  add_measure(carleson);
  carleson->add_option("--s", o.s, "Carleson exponent s > 0")->required();
  carleson->add_option("--levels", o.levels, "Dyadic grid depth (t = 1 - 2^-j)");
  add_common(carleson);

  CLI::App* decay = app.add_subcommand("decay", "Weighted moment decay mu_n (n+1)^s");
  add_measure(decay);
  decay->add_option("--s", o.s, "Decay exponent s > 0")->required();
  decay->add_option("--n", o.decay_n, "Sequence length (>= 16)");
  add_common(decay);

  CLI::App* norm = app.add_subcommand("norm", "Operator norm estimates across truncations");
  add_measure(norm);
  add_params(norm);
  norm->add_option("--trunc", o.trunc, "Truncation sizes, comma separated")->delimiter(',');
  add_iteration(norm);
  add_common(norm);

  CLI::App* kernel = app.add_subcommand("kernel", "Schur-test constant and kernel integrals");
  add_params(kernel);
  kernel->add_option("--levels", o.quad_levels, "Quadrature grading depth");
  kernel->add_option("--nodes", o.quad_nodes, "Gauss-Legendre nodes per panel");
  kernel->add_option("--quad-tol", o.quad_tol, "Convergence tolerance for the check");
  add_common(kernel);

  CLI::App* schur = app.add_subcommand("schur", "Schur inequality ratios on random vectors");
  add_params(schur);
  schur->add_option("--trials", o.trials, "Number of random vectors");
  schur->add_option("--k", o.k, "Vector length (>= 16)");
  schur->add_option("--seed", o.seed, "Random seed");
  add_common(schur);

  CLI::App* equivalence =
      app.add_subcommand("equivalence", "Combined boundedness diagnostic");
  add_measure(equivalence);
  add_params(equivalence);
  equivalence->add_option("--trunc", o.trunc, "Truncation sizes, comma separated")
      ->delimiter(',');
  equivalence->add_option("--decay-n", o.decay_n, "Moment decay length");
  equivalence->add_option("--levels", o.levels, "Carleson grid depth");
  add_iteration(equivalence);
  add_common(equivalence);

  CLI::App* compactness =
      app.add_subcommand("compactness", "Tail-block norms after removing leading rows");
  add_measure(compactness);
  add_params(compactness);
  compactness->add_option("--n", o.n, "Truncation size");
  compactness->add_option("--cuts", o.cuts, "Row cuts, comma separated")->delimiter(',');
  add_iteration(compactness);
  add_common(compactness);

  CLI::App* lowerbound = app.add_subcommand("lowerbound", "Test-function lower-bound ratios");
  add_measure(lowerbound);
  add_params(lowerbound);
  lowerbound->add_option("--t", o.tgrid, "Evaluation points in (0, 1), comma separated")
      ->delimiter(',');
  add_common(lowerbound);

  CLI::App* init = app.add_subcommand("init-measure", "Write a measure file");
  init->add_option("--atom", o.atom_args, "Point mass as 't,c' (repeatable)");
  init->add_option("--density", o.density_args, "Density as 'a,b,scale' (repeatable)");
  init->add_option("--preset", o.preset, "Named preset: lebesgue");
  init->add_option("--out", o.out, "Output file (default: stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n" << app.help();
    return 2;
  }

  // moments uses o.n as the largest index; compactness reuses it as the
  // truncation size, so give compactness its own default when not set
  if (compactness->parsed() && compactness->count("--n") == 0) o.n = 512;

  try {
    Report rep;
    if (moments->parsed()) rep = run_moments(o);
    else if (carleson->parsed()) rep = run_carleson(o);
    else if (decay->parsed()) rep = run_decay(o);
    else if (norm->parsed()) rep = run_norm(o);
    else if (kernel->parsed()) rep = run_kernel(o);
    else if (schur->parsed()) rep = run_schur(o);
    else if (equivalence->parsed()) rep = run_equivalence(o);
    else if (compactness->parsed()) rep = run_compactness(o);
    else if (lowerbound->parsed()) rep = run_lowerbound(o);
    else if (init->parsed()) rep = run_init_measure(o);
    return write_report(rep, o.out);
  } catch (const ParseFailure& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const std::domain_error& e) {
    std::cerr << e.what() << "\n";
    return 1;
  } catch (const std::length_error& e) {
    std::cerr << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << e.what() << "\n";
    return 1;
  }
}
