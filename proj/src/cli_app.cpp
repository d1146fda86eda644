#include "nclass/cli_app.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <json.hpp>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "nclass/errors.hpp"
#include "nclass/filters.hpp"
#include "nclass/fock_core.hpp"
#include "nclass/nfp.hpp"
#include "nclass/version.hpp"
#include "nclass/witness.hpp"

namespace nclass {

namespace {

constexpr double k_pi = 3.14159265358979323846;

std::string fmt12(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

struct Options {
  std::string state = "vacuum";
  double nbar = 1.0;
  double eta = 1.0;
  int dim = 256;
  int fock_n = 1;
  double state_re = 1.0, state_im = 0.0;
  double w_min = 0.5, w_max = 6.0, w_step = 0.1;
  double w = 2.0;
  double alpha_re = 0.0, alpha_im = 0.0;
  std::string grid = "41:3";
  std::string out = "-";
  std::string format = "csv";
  bool normalized = true;
  std::string family = "disc";
};

// Tabular result: one header, rows of doubles, named summary values.
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
  std::vector<std::pair<std::string, std::string>> summary;
};

// Plain key=value configuration file; keys are the long flag names without
// the leading dashes. Flags given on the command line override file values.
void load_config_file(const std::string& path, Options& opt) {
  std::ifstream file(path);
  if (!file) throw std::invalid_argument("cannot open config file: " + path);
  auto as_double = [](const std::string& v, int line) {
    try {
      std::size_t used = 0;
      const double parsed = std::stod(v, &used);
      if (used != v.size()) throw std::invalid_argument(v);
      return parsed;
    } catch (const std::exception&) {
      throw std::invalid_argument("config line " + std::to_string(line) +
                                  ": bad numeric value '" + v + "'");
    }
  };
  auto as_int = [&](const std::string& v, int line) {
    const double d = as_double(v, line);
    return static_cast<int>(d);
  };
  auto as_bool = [](const std::string& v, int line) {
    if (v == "true" || v == "1") return true;
    if (v == "false" || v == "0") return false;
    throw std::invalid_argument("config line " + std::to_string(line) +
                                ": bad boolean value '" + v + "'");
  };
  std::string line;
  int number = 0;
  while (std::getline(file, line)) {
    ++number;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    while (!line.empty() && (line.back() == ' ' || line.back() == '\r' ||
                             line.back() == '\t'))
      line.pop_back();
    std::size_t start = line.find_first_not_of(" \t");
    if (start == std::string::npos) continue;
    const auto eq = line.find('=', start);
    if (eq == std::string::npos)
      throw std::invalid_argument("config line " + std::to_string(number) +
                                  ": expected key=value");
    const std::string key = line.substr(start, eq - start);
    const std::string value = line.substr(eq + 1);
    if (key == "state") opt.state = value;
    else if (key == "nbar") opt.nbar = as_double(value, number);
    else if (key == "eta") opt.eta = as_double(value, number);
    else if (key == "dim") opt.dim = as_int(value, number);
    else if (key == "n") opt.fock_n = as_int(value, number);
    else if (key == "state-re") opt.state_re = as_double(value, number);
    else if (key == "state-im") opt.state_im = as_double(value, number);
    else if (key == "w-min") opt.w_min = as_double(value, number);
    else if (key == "w-max") opt.w_max = as_double(value, number);
    else if (key == "w-step") opt.w_step = as_double(value, number);
    else if (key == "w") opt.w = as_double(value, number);
    else if (key == "alpha-re") opt.alpha_re = as_double(value, number);
    else if (key == "alpha-im") opt.alpha_im = as_double(value, number);
    else if (key == "grid") opt.grid = value;
    else if (key == "out") opt.out = value;
    else if (key == "format") opt.format = value;
    else if (key == "normalized") opt.normalized = as_bool(value, number);
    else if (key == "family") opt.family = value;
    else
      throw std::invalid_argument("config line " + std::to_string(number) +
                                  ": unknown key '" + key + "'");
  }
}

void parse_grid(const std::string& spec, int& n, double& half_width) {
  const auto colon = spec.find(':');
  if (colon == std::string::npos)
    throw CLI::ValidationError("--grid", "expected N:HALFWIDTH, e.g. 41:3");
  try {
    n = std::stoi(spec.substr(0, colon));
    half_width = std::stod(spec.substr(colon + 1));
  } catch (const std::exception&) {
    throw CLI::ValidationError("--grid", "expected N:HALFWIDTH, e.g. 41:3");
  }
  if (n < 1 || !(half_width > 0.0))
    throw CLI::ValidationError("--grid", "need N >= 1 and HALFWIDTH > 0");
}

std::vector<double> width_grid(const Options& opt) {
  if (!(opt.w_step > 0.0))
    throw std::invalid_argument("w-step must be > 0");
  if (!(opt.w_min > 0.0) || opt.w_max < opt.w_min)
    throw std::invalid_argument("need 0 < w-min <= w-max");
  std::vector<double> ws;
  for (int i = 0;; ++i) {
    const double w = opt.w_min + i * opt.w_step;
    if (w > opt.w_max + 1e-12) break;
    ws.push_back(w);
  }
  return ws;
}

DensityMatrix build_state(const Options& opt) {
  if (opt.state == "vacuum") return make_fock(0, opt.dim);
  if (opt.state == "fock") return make_fock(opt.fock_n, opt.dim);
  if (opt.state == "coherent")
    return make_coherent({opt.state_re, opt.state_im}, opt.dim);
  if (opt.state == "thermal") return make_thermal(opt.nbar, opt.dim);
  if (opt.state == "spats") return make_spats(opt.nbar, opt.eta, opt.dim);
  throw std::invalid_argument("unknown state kind: " + opt.state);
}

void echo_config(const Options& opt, nlohmann::ordered_json& cfg) {
  cfg["state"] = opt.state;
  cfg["nbar"] = opt.nbar;
  cfg["eta"] = opt.eta;
  cfg["dim"] = opt.dim;
  cfg["fock_n"] = opt.fock_n;
  cfg["state_re"] = opt.state_re;
  cfg["state_im"] = opt.state_im;
  cfg["w_min"] = opt.w_min;
  cfg["w_max"] = opt.w_max;
  cfg["w_step"] = opt.w_step;
  cfg["w"] = opt.w;
  cfg["alpha_re"] = opt.alpha_re;
  cfg["alpha_im"] = opt.alpha_im;
  cfg["grid"] = opt.grid;
  cfg["normalized"] = opt.normalized;
  cfg["family"] = opt.family;
}

void write_table(const Table& table, const std::string& command,
                 const Options& opt, std::ostream& sink) {
  if (opt.format == "json") {
    nlohmann::ordered_json doc;
    doc["tool"] = "nclass";
    doc["version"] = k_version;
    doc["command"] = command;
    echo_config(opt, doc["config"]);
    doc["columns"] = table.columns;
    doc["rows"] = table.rows;
    for (const auto& [key, value] : table.summary) doc["summary"][key] = value;
    sink << doc.dump(2) << "\n";
    return;
  }
  for (std::size_t i = 0; i < table.columns.size(); ++i)
    sink << (i ? "," : "") << table.columns[i];
  sink << "\n";
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i)
      sink << (i ? "," : "") << fmt12(row[i]);
    sink << "\n";
  }
  for (const auto& [key, value] : table.summary)
    sink << "# " << key << "=" << value << "\n";
}

Table cmd_state_info(const Options& opt) {
  const DensityMatrix rho = build_state(opt);
  Table table;
  table.columns = {"n", "p_n"};

  auto add = [&table](const std::string& name, double value) {
    table.summary.emplace_back(name, fmt12(value));
  };
  add("dim", rho.dim());
  add("tail_mass", rho.tail_mass);
  add("mean_photon", mean_photon_number(rho));
  double q = std::nan("");
  try {
    q = mandel_q(rho);
  } catch (const std::domain_error&) {
  }
  add("mandel_q", q);

  double var_min = std::numeric_limits<double>::max();
  for (int i = 0; i < 64; ++i)
    var_min = std::min(var_min, quadrature_variance(rho, k_pi * i / 64.0));
  add("quadrature_variance_min", var_min);

  const FirstOrderTestResult first = first_order_char_test(rho);
  add("char_max_modulus", first.max_modulus);
  add("first_order_witnessed", first.witnessed ? 1.0 : 0.0);

  int n = 0;
  double half_width = 0.0;
  parse_grid(opt.grid, n, half_width);
  const WignerGrid wg = wigner_grid(rho, half_width, n);
  add("wigner_min", wg.min_value);
  add("wigner_argmin_re", wg.min_location.real());
  add("wigner_argmin_im", wg.min_location.imag());

  const PhotonStatistics stats = photon_statistics(rho);
  const int shown = std::min<int>(32, static_cast<int>(stats.probs.size()));
  for (int i = 0; i < shown; ++i)
    table.rows.push_back({double(i), stats.probs[i]});
  return table;
}

Table cmd_witness_scan(const Options& opt) {
  const DensityMatrix rho = build_state(opt);
  const std::vector<double> ws = width_grid(opt);
  const WidthScanResult scan =
      scan_width(rho, {opt.alpha_re, opt.alpha_im}, ws);
  Table table;
  table.columns = {"w", "value", "truncation_bound", "certified"};
  for (const auto& point : scan.points)
    table.rows.push_back({point.w, point.report.value,
                          point.report.truncation_bound,
                          point.report.sign_certified ? 1.0 : 0.0});
  table.summary.emplace_back("detected", scan.detected ? "true" : "false");
  table.summary.emplace_back("w_star",
                             scan.detected ? fmt12(scan.w_star) : "nan");
  return table;
}

Table cmd_fig2(const Options& opt) {
  const std::vector<double> nbars = {0.8, 1.0, 1.2};
  const std::vector<double> ws = width_grid(opt);
  Table table;
  table.columns = {"w"};
  std::vector<WidthScanResult> scans;
  for (double nbar : nbars) {
    table.columns.push_back("nbar_" + fmt12(nbar));
    const DensityMatrix rho = make_spats(nbar, 0.5, opt.dim);
    scans.push_back(scan_width(rho, {0.0, 0.0}, ws));
  }
  for (std::size_t i = 0; i < ws.size(); ++i) {
    std::vector<double> row{ws[i]};
    for (const auto& scan : scans) row.push_back(scan.points[i].report.value);
    table.rows.push_back(std::move(row));
  }
  for (std::size_t s = 0; s < scans.size(); ++s) {
    const std::string tag = "nbar_" + fmt12(nbars[s]);
    table.summary.emplace_back("detected_" + tag,
                               scans[s].detected ? "true" : "false");
    table.summary.emplace_back(
        "w_star_" + tag, scans[s].detected ? fmt12(scans[s].w_star) : "nan");
  }
  return table;
}

Table cmd_nfp_grid(const Options& opt) {
  const DensityMatrix rho = build_state(opt);
  const FilterFamily family = disc_family(opt.normalized);
  int n = 0;
  double half_width = 0.0;
  parse_grid(opt.grid, n, half_width);
  const NfpGrid grid = nfp_grid(rho, family, opt.w, {n, half_width});
  Table table;
  table.columns = {"re_alpha", "im_alpha", "value"};
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i)
      table.rows.push_back({grid.re_axis[i], grid.im_axis[j],
                            grid.values[std::size_t(j) * n + i]});
  table.summary.emplace_back("min", fmt12(grid.min_value));
  table.summary.emplace_back("argmin_re", fmt12(grid.min_location.real()));
  table.summary.emplace_back("argmin_im", fmt12(grid.min_location.imag()));
  table.summary.emplace_back("max_abs_imag",
                             fmt12(grid.quad_report.max_abs_imag));
  return table;
}

Table cmd_verify_filter(const Options& opt) {
  FilterFamily family;
  if (opt.family == "disc")
    family = disc_family(false);
  else if (opt.family == "disc-normalized")
    family = disc_family(true);
  else if (opt.family == "quartic")
    family = quartic_reference_family();
  else if (opt.family == "appendix")
    family = witness_filter_family(disc_witness_char_fn(),
                                   quartic_reference_family());
  else
    throw std::invalid_argument("unknown family: " + opt.family);
  const std::vector<double> ws = width_grid(opt);
  const auto reports = verify_filter_conditions(family, ws);
  Table table;
  table.columns = {"w",          "c1_pass", "c1_tail_over_peak",
                   "c2_pass",    "c2_min",  "omega_at_zero",
                   "c3_normalized", "c3_limit_pass", "all_pass"};
  for (const auto& rep : reports)
    table.rows.push_back({rep.w, rep.c1_pass ? 1.0 : 0.0,
                          rep.c1_tail_over_peak, rep.c2_pass ? 1.0 : 0.0,
                          rep.c2_min, rep.value_at_zero,
                          rep.c3_normalized ? 1.0 : 0.0,
                          rep.c3_limit_pass ? 1.0 : 0.0,
                          rep.all_pass() ? 1.0 : 0.0});
  return table;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out,
            std::ostream& err) {
  Options opt;
  std::string config_path;

  // the config file seeds the option values; command-line flags override
  for (int i = 1; i + 1 < argc; ++i)
    if (std::string(argv[i]) == "--config") config_path = argv[i + 1];
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg.rfind("--config=", 0) == 0) config_path = arg.substr(9);
  }
  if (!config_path.empty()) {
    try {
      load_config_file(config_path, opt);
    } catch (const std::invalid_argument& e) {
      err << "config error: " << e.what() << "\n";
      return 2;
    }
  }

  CLI::App app{"nonclassicality witness toolkit for harmonic-oscillator states"};
  app.require_subcommand(1);

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--config", config_path, "key=value configuration file");
    cmd->add_option("--state", opt.state,
                    "state kind: vacuum|fock|coherent|thermal|spats");
    cmd->add_option("--nbar", opt.nbar, "thermal mean photon number");
    cmd->add_option("--eta", opt.eta, "quantum efficiency in [0,1]");
    cmd->add_option("--dim", opt.dim, "Fock truncation dimension");
    cmd->add_option("--n", opt.fock_n, "Fock state index");
    cmd->add_option("--state-re", opt.state_re, "coherent amplitude, real part");
    cmd->add_option("--state-im", opt.state_im, "coherent amplitude, imag part");
    cmd->add_option("--w-min", opt.w_min, "width grid start");
    cmd->add_option("--w-max", opt.w_max, "width grid end");
    cmd->add_option("--w-step", opt.w_step, "width grid step");
    cmd->add_option("--w", opt.w, "single filter width");
    cmd->add_option("--alpha-re", opt.alpha_re, "witness displacement, real part");
    cmd->add_option("--alpha-im", opt.alpha_im, "witness displacement, imag part");
    cmd->add_option("--grid", opt.grid, "phase-space grid as N:HALFWIDTH");
    cmd->add_option("--out", opt.out, "output path, '-' for stdout");
    cmd->add_option("--format", opt.format, "output format: csv|json")
        ->check(CLI::IsMember({"csv", "json"}));
    cmd->add_option("--normalized", opt.normalized,
                    "use the origin-normalized filter for display");
    cmd->add_option("--family", opt.family,
                    "filter family: disc|disc-normalized|quartic|appendix");
  };

  CLI::App* state_info = app.add_subcommand("state-info", "state diagnostics");
  CLI::App* witness_scan =
      app.add_subcommand("witness-scan", "witness expectation vs filter width");
  CLI::App* nfp_cmd =
      app.add_subcommand("nfp-grid", "filtered P function on a phase-space grid");
  CLI::App* fig2 = app.add_subcommand(
      "fig2", "width scans for photon-added thermal states, eta = 0.5");
  CLI::App* verify =
      app.add_subcommand("verify-filter", "sampled filter-condition report");
  for (CLI::App* cmd : {state_info, witness_scan, nfp_cmd, fig2, verify})
    add_common(cmd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    Table table;
    std::string command;
    if (state_info->parsed()) {
      command = "state-info";
      table = cmd_state_info(opt);
    } else if (witness_scan->parsed()) {
      command = "witness-scan";
      table = cmd_witness_scan(opt);
    } else if (nfp_cmd->parsed()) {
      command = "nfp-grid";
      table = cmd_nfp_grid(opt);
    } else if (fig2->parsed()) {
      command = "fig2";
      table = cmd_fig2(opt);
    } else if (verify->parsed()) {
      command = "verify-filter";
      table = cmd_verify_filter(opt);
    }

    std::ostringstream buffer;
    write_table(table, command, opt, buffer);
    if (opt.out == "-") {
      out << buffer.str();
    } else {
      std::ofstream file(opt.out, std::ios::binary);
      if (!file) throw std::invalid_argument("cannot open output file: " + opt.out);
      file << buffer.str();
    }
    return 0;
  } catch (const NumericsError& e) {
    err << "numerical rejection: " << e.what() << "\n";
    return 3;
  } catch (const std::invalid_argument& e) {
    err << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::domain_error& e) {
    err << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::out_of_range& e) {
    err << "config error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace nclass
