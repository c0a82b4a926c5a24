#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "splb/constants.hpp"
#include "splb/errors.hpp"
#include "splb/experiment.hpp"
#include "splb/knots.hpp"
#include "splb/opnorm.hpp"
#include "splb/spline_space.hpp"

namespace {

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

int write_or_print(const std::string& text, const std::string& out) {
  if (out.empty()) {
    std::cout << text;
    return 0;
  }
  std::ofstream f(out);
  if (!f) {
    std::cerr << "cannot open output file \"" << out << "\"\n";
    return 2;
  }
  f << text;
  return 0;
}

std::string breakdown_json(const splb::BoundBreakdown& b) {
  std::string s = "{\n  \"candidates\": {";
  bool first = true;
  for (const auto& [name, value] : b.candidates) {
    s += first ? "" : ", ";
    s += "\"" + name + "\": " + fmt(value);
    first = false;
  }
  s += "},\n  \"minimum\": " + fmt(b.minimum) + ",\n  \"argmin\": \"" + b.argmin + "\"";
  if (!b.flags.empty()) {
    s += ",\n  \"flags\": {";
    first = true;
    for (const auto& [name, value] : b.flags) {
      s += first ? "" : ", ";
      s += "\"" + name + "\": " + (value ? "true" : "false");
      first = false;
    }
    s += "}";
  }
  s += "\n}\n";
  return s;
}

std::string table_csv(const splb::FigureTable& t) {
  std::string s;
  for (std::size_t i = 0; i < t.columns.size(); ++i)
    s += (i ? "," : "") + t.columns[i];
  s += "\n";
  for (const std::vector<double>& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i)
      s += (i ? "," : "") + fmt(row[i]);
    s += "\n";
  }
  return s;
}

std::string read_file(const std::string& path) {
  std::ifstream f(path);
  if (!f)
    throw splb::Error("invalid-config", "cannot read config file \"" + path + "\"");
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spline projection error constants and verification experiments"};
  app.require_subcommand(1);

  CLI::App* cmd_constants = app.add_subcommand("constants", "Emit a precomputed constant table as CSV");
  int figure = 0;
  std::string out;
  cmd_constants->add_option("--figure", figure, "table id, 1 to 4")->required();
  cmd_constants->add_option("--out", out, "output file (default stdout)");

  CLI::App* cmd_bound = app.add_subcommand("bound", "Print an error-bound breakdown as JSON");
  cmd_bound->set_help_flag("--help", "print help");
  int bp = 0, bk = -2;
  double bh = 0, blength = 1;
  int br = 1, bq = -1, bell = 0;
  bool max_smooth = false;
  cmd_bound->add_option("--p", bp, "degree")->required();
  cmd_bound->add_option("--k", bk, "smoothness (default p - 1)");
  cmd_bound->add_option("--r", br, "derivative order on the bound side")->required();
  cmd_bound->add_option("--q", bq, "energy-projection order (switches to the energy bound)");
  cmd_bound->add_option("--ell", bell, "measured derivative order (with --q)");
  cmd_bound->add_option("--h", bh, "mesh width")->required();
  cmd_bound->add_option("--length", blength, "domain length")->required();
  cmd_bound->add_flag("--max-smooth", max_smooth, "all maximal-smoothness candidates");

  CLI::App* cmd_project = app.add_subcommand("project", "Run a verification experiment from a config");
  std::string config_path, project_out;
  cmd_project->add_option("--config", config_path, "JSON config file")->required();
  cmd_project->add_option("--out", project_out, "output CSV file (default stdout)");

  CLI::App* cmd_convergence = app.add_subcommand("convergence", "Run a convergence experiment from a config");
  std::string conv_path, conv_out;
  cmd_convergence->add_option("--config", conv_path, "JSON config file")->required();
  cmd_convergence->add_option("--out", conv_out, "output CSV file (default stdout)");

  CLI::App* cmd_opnorm = app.add_subcommand("opnorm", "Estimate an error constant by discretized operator norm");
  int op = 0, ok = -1, oN = 0, oR = 1, ogrid = 400;
  cmd_opnorm->add_option("--p", op, "degree")->required();
  cmd_opnorm->add_option("--k", ok, "smoothness")->required();
  cmd_opnorm->add_option("--N", oN, "interior breakpoints of the uniform mesh on (0,1)")->required();
  cmd_opnorm->add_option("--r", oR, "derivative order")->required();
  cmd_opnorm->add_option("--grid", ogrid, "minimum quadrature grid size");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (app.got_subcommand(cmd_constants))
      return write_or_print(table_csv(splb::figure_table(figure)), out);

    if (app.got_subcommand(cmd_bound)) {
      if (bk == -2)
        bk = bp - 1;
      splb::BoundBreakdown b;
      if (bq >= 0)
        b = splb::ritz_bound(bh, bp, bk, bq, bell, br, blength);
      else if (max_smooth)
        b = splb::max_smooth_bounds(bh, bp, br, blength);
      else
        b = splb::projection_bound(bh, bp, bk, br, blength);
      std::cout << breakdown_json(b);
      return 0;
    }

    if (app.got_subcommand(cmd_project)) {
      const splb::ErrorReport rep = splb::run_verify(splb::parse_config(read_file(config_path)));
      const int rc = write_or_print(rep.csv(), project_out);
      return rc != 0 ? rc : (rep.pass ? 0 : 1);
    }

    if (app.got_subcommand(cmd_convergence)) {
      const splb::ErrorReport rep = splb::run_convergence(splb::parse_config(read_file(conv_path)));
      const int rc = write_or_print(rep.csv(), conv_out);
      return rc != 0 ? rc : (rep.pass ? 0 : 1);
    }

    const splb::SplineSpace space(splb::uniform_knots(0.0, 1.0, oN), op, ok);
    const splb::ConstantEstimate est = splb::estimate_constant(space, oR, ogrid);
    std::cout << "{\"t\": " << est.t << ", \"r\": " << est.r << ", \"grid\": " << est.grid
              << ", \"value\": " << fmt(est.value) << "}\n";
    return 0;
  } catch (const splb::Error& e) {
    std::cerr << e.what() << "\n";
    return 2;
  }
}
