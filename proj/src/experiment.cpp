#include "splb/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <set>

#include "json.hpp"
#include "splb/constants.hpp"
#include "splb/errors.hpp"
#include "splb/geometry.hpp"
#include "splb/mapped.hpp"
#include "splb/multipatch.hpp"
#include "splb/projectors.hpp"
#include "splb/reduced.hpp"
#include "splb/tensor.hpp"

namespace splb {

namespace {

constexpr double kPi = 3.14159265358979323846;

using nlohmann::json;

[[noreturn]] void bad(const std::string& what) { throw Error("invalid-config", what); }

void check_keys(const json& obj, const char* ctx, const std::set<std::string>& allowed) {
  for (auto it = obj.begin(); it != obj.end(); ++it)
    if (!allowed.count(it.key()))
      bad(std::string(ctx) + " has unknown key \"" + it.key() + "\"");
}

int get_int(const json& obj, const char* key, int fallback) {
  if (!obj.contains(key))
    return fallback;
  if (!obj[key].is_number_integer())
    bad(std::string("key \"") + key + "\" must be an integer");
  return obj[key].get<int>();
}

double get_num(const json& obj, const char* key, double fallback) {
  if (!obj.contains(key))
    return fallback;
  if (!obj[key].is_number())
    bad(std::string("key \"") + key + "\" must be a number");
  return obj[key].get<double>();
}

std::vector<std::string> split_colons(const std::string& s) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = s.find(':', start);
    parts.push_back(s.substr(start, pos - start));
    if (pos == std::string::npos)
      return parts;
    start = pos + 1;
  }
}

void parse_projector(const json& root, ExperimentConfig& c) {
  if (!root.contains("projector"))
    bad("missing key \"projector\"");
  if (!root["projector"].is_string())
    bad("key \"projector\" must be a string");
  const std::vector<std::string> parts = split_colons(root["projector"].get<std::string>());
  c.kind = parts[0];
  if (c.kind == "l2" || c.kind == "q" || c.kind == "multipatch") {
    if (parts.size() != 1)
      bad("projector \"" + c.kind + "\" takes no parameters");
  } else if (c.kind == "ritz") {
    if (parts.size() > 2)
      bad("projector \"ritz\" takes at most one parameter");
    if (parts.size() == 2) {
      if (root.contains("q"))
        bad("projection order given both in \"projector\" and in \"q\"");
      try {
        c.q = std::stoi(parts[1]);
      } catch (...) {
        bad("projector \"ritz:<q>\" needs an integer order");
      }
    } else {
      c.q = get_int(root, "q", 1);
    }
  } else if (c.kind == "reduced") {
    if (parts.size() > 3)
      bad("projector \"reduced\" takes at most two parameters");
    if (parts.size() >= 2) {
      if (root.contains("parity"))
        bad("parity given both in \"projector\" and in \"parity\"");
      if (parts[1] == "even" || parts[1] == "0")
        c.parity = 0;
      else if (parts[1] == "odd" || parts[1] == "1")
        c.parity = 1;
      else
        bad("parity must be even/0 or odd/1");
    } else {
      c.parity = get_int(root, "parity", 0);
    }
    if (parts.size() == 3) {
      if (root.contains("variant"))
        bad("variant given both in \"projector\" and in \"variant\"");
      c.variant = parts[2];
    } else if (root.contains("variant")) {
      if (!root["variant"].is_string())
        bad("key \"variant\" must be a string");
      c.variant = root["variant"].get<std::string>();
    }
    if (c.variant != "strict" && c.variant != "relaxed")
      bad("variant must be \"strict\" or \"relaxed\"");
    if (c.parity != 0 && c.parity != 1)
      bad("parity must be 0 or 1");
  } else if (c.kind == "tensor" || c.kind == "mapped") {
    if (parts.size() != 2)
      bad("projector \"" + c.kind + "\" needs a sub-kind, e.g. \"" + c.kind + ":l2\"");
    c.subkind = parts[1];
    if (c.subkind != "l2" && c.subkind != "ritz" && c.subkind != "q")
      bad("sub-kind must be l2, ritz or q");
  } else {
    bad("unknown projector \"" + c.kind + "\"");
  }
}

void parse_target(const json& root, ExperimentConfig& c, bool planar) {
  if (!root.contains("target"))
    bad("missing key \"target\"");
  const json& t = root["target"];
  if (!t.is_object() || !t.contains("id") || !t["id"].is_string())
    bad("key \"target\" must be an object with an \"id\"");
  c.target_id = t["id"].get<std::string>();

  if (planar) {
    if (c.target_id != "sin2d")
      bad("planar kinds need the \"sin2d\" target");
    check_keys(t, "target", {"id", "omega", "phase", "omega2", "phase2"});
    c.target.omega = get_num(t, "omega", kPi);
    c.target.phase = get_num(t, "phase", 0.0);
    c.omega2 = get_num(t, "omega2", kPi);
    c.phase2 = get_num(t, "phase2", 0.0);
    return;
  }
  if (c.target_id == "sin") {
    check_keys(t, "target", {"id", "omega", "phase"});
    c.target.omega = get_num(t, "omega", c.target.omega);
    c.target.phase = get_num(t, "phase", 0.0);
  } else if (c.target_id == "poly") {
    check_keys(t, "target", {"id", "coefficients"});
    if (t.contains("coefficients")) {
      if (!t["coefficients"].is_array())
        bad("key \"coefficients\" must be an array of numbers");
      c.target.coefficients.clear();
      for (const json& v : t["coefficients"]) {
        if (!v.is_number())
          bad("key \"coefficients\" must be an array of numbers");
        c.target.coefficients.push_back(v.get<double>());
      }
    }
  } else if (c.target_id == "exp") {
    check_keys(t, "target", {"id", "rate"});
    c.target.rate = get_num(t, "rate", c.target.rate);
  } else if (c.target_id == "runge") {
    check_keys(t, "target", {"id", "scale"});
    c.target.scale = get_num(t, "scale", c.target.scale);
  } else if (c.target_id == "piecewise_c1") {
    check_keys(t, "target", {"id", "kink"});
    c.target.kink = get_num(t, "kink", c.target.kink);
  } else {
    bad("unknown target id \"" + c.target_id + "\"");
  }
}

ReducedVariant string_to_variant(const std::string& name) {
  if (name == "strict")
    return ReducedVariant::strict;
  if (name == "relaxed")
    return ReducedVariant::relaxed;
  throw Error("invalid-config", "variant must be \"strict\" or \"relaxed\"");
}

double target_seminorm(const TestFunction& u, int r) {
  if (u.seminorm)
    return u.seminorm(r);
  std::vector<double> cuts;
  for (int i = 1; i < 64; ++i)
    cuts.push_back(u.a + (u.b - u.a) * i / 64.0);
  return function_norm(u, r, cuts, 16);
}

TensorTestFunction sin2d_target(const ExperimentConfig& c) {
  TensorTestFunction t;
  t.max_order = 24;
  const double w1 = c.target.omega, f1 = c.target.phase, w2 = c.omega2, f2 = c.phase2;
  t.eval = [w1, f1, w2, f2](double x, double y, int d1, int d2) {
    return std::pow(w1, d1) * std::sin(w1 * x + f1 + d1 * kPi / 2) * std::pow(w2, d2) *
           std::sin(w2 * y + f2 + d2 * kPi / 2);
  };
  return t;
}

PhysicalTestFunction sin2d_physical(const ExperimentConfig& c) {
  PhysicalTestFunction t;
  t.max_order = 24;
  const double w1 = c.target.omega, f1 = c.target.phase, w2 = c.omega2, f2 = c.phase2;
  t.eval = [w1, f1, w2, f2](double x, double y, int d1, int d2) {
    return std::pow(w1, d1) * std::sin(w1 * x + f1 + d1 * kPi / 2) * std::pow(w2, d2) *
           std::sin(w2 * y + f2 + d2 * kPi / 2);
  };
  return t;
}

void finish_row(ReportRow& row, double err, double bound) {
  if (bound <= 0) {
    // A vanishing bound side leaves no effectivity to report.
    row.skipped = true;
    row.reason = "invalid-data";
    return;
  }
  row.error = err;
  row.bound = bound;
  row.effectivity = err / bound;
}

ReportRow univariate_row(const ExperimentConfig& c, const KnotSequence& ks, int N) {
  ReportRow row;
  row.p = c.degree;
  row.k = c.smoothness;
  row.r = c.kind == "reduced" ? 1 : c.r;
  row.ell = c.kind == "reduced" ? 0 : c.ell;
  row.N = N;
  row.h = ks.h();
  if (c.kind == "ritz")
    row.q = c.q;
  else if (c.kind == "q" || c.kind == "reduced")
    row.q = 1;
  try {
    const SplineSpace space(ks, c.degree, c.smoothness);
    CorpusParams params = c.target;
    params.a = c.a;
    params.b = c.b;
    const TestFunction u = corpus(c.target_id, params);
    const double L = ks.length();
    if (c.kind == "l2") {
      const ProjectionResult res = l2_project(space, u, c.oversample);
      const double err = error_norm(u, res.spline, 0);
      const double bound = projection_bound(row.h, c.degree, c.smoothness, c.r, L).minimum *
                           target_seminorm(u, c.r);
      finish_row(row, err, bound);
    } else if (c.kind == "ritz") {
      const ProjectionResult res = ritz_project(space, u, c.q, c.oversample);
      const double err = error_norm(u, res.spline, c.ell);
      const double bound = ritz_bound(row.h, c.degree, c.smoothness, c.q, c.ell, c.r, L).minimum *
                           target_seminorm(u, c.r);
      finish_row(row, err, bound);
    } else if (c.kind == "q") {
      const ProjectionResult res = q_project(space, u, c.oversample);
      const double err = error_norm(u, res.spline, c.ell);
      const double low = projection_bound(row.h, c.degree - 1, c.smoothness - 1, c.r - 1, L).minimum;
      const double first =
          c.ell == 0 ? projection_bound(row.h, c.degree - 1, c.smoothness - 1, 1, L).minimum : 1.0;
      finish_row(row, err, first * low * target_seminorm(u, c.r));
    } else {
      const ReducedSpace rs = build_reduced_space(space, c.parity, string_to_variant(c.variant));
      const ProjectionResult res = ritz_reduced(rs, u);
      const double err = error_norm(u, res.spline, 0);
      const ReducedBound rb =
          reduced_bound(c.parity, string_to_variant(c.variant), c.degree, ks.h(), ks.h_hat());
      finish_row(row, err, rb.value * target_seminorm(u, 1));
    }
  } catch (const Error& e) {
    row.skipped = true;
    row.reason = e.reason();
  }
  return row;
}

double tensor_factor(double h, int p, int k, int s, double length) {
  if (s == 0)
    return 1.0;
  return projection_bound(h, p, k, s, length).minimum;
}

double tensor_bound(const ExperimentConfig& c, const TensorSpace& ts, const TensorTestFunction& u) {
  const SplineSpace& s1 = ts.spaces[0];
  const SplineSpace& s2 = ts.spaces[1];
  const double h1 = s1.knots().h(), h2 = s2.knots().h();
  const double L1 = s1.knots().length(), L2 = s2.knots().length();
  const int r = c.r;
  if (c.subkind == "l2") {
    const double b1 = projection_bound(h1, s1.degree(), s1.smoothness(), r, L1).minimum;
    const double b2 = projection_bound(h2, s2.degree(), s2.smoothness(), r, L2).minimum;
    return b1 * tensor_function_norm(u, r, 0) + b2 * tensor_function_norm(u, 0, r);
  }
  if (r < 2)
    throw Error("invalid-order", "the derivative bounds need r >= 2");
  auto C1 = [&](int s) { return tensor_factor(h1, s1.degree() - 1, s1.smoothness() - 1, s, L1); };
  auto C2 = [&](int s) { return tensor_factor(h2, s2.degree() - 1, s2.smoothness() - 1, s, L2); };
  const double A = tensor_function_norm(u, r, 0);
  const double B = tensor_function_norm(u, 0, r);
  const double M12 = tensor_function_norm(u, 1, r - 1);
  const double M21 = tensor_function_norm(u, r - 1, 1);
  if (c.ell1 == 0 && c.ell2 == 0)
    return C1(1) * C1(r - 1) * A + C2(1) * C2(r - 1) * B +
           C1(1) * C2(1) * std::min(C2(r - 2) * M12, C1(r - 2) * M21);
  if (c.ell1 == 1 && c.ell2 == 0)
    return C1(r - 1) * A + C2(1) * C2(r - 2) * M12;
  if (c.ell1 == 0 && c.ell2 == 1)
    return C2(r - 1) * B + C1(1) * C1(r - 2) * M21;
  return C1(r - 2) * M21 + C2(r - 2) * M12;
}

ReportRow tensor_row(const ExperimentConfig& c, int N) {
  ReportRow row;
  row.p = c.degree;
  row.k = c.smoothness;
  row.q = c.subkind == "l2" ? 0 : 1;
  row.ell = c.ell1 + c.ell2;
  row.r = c.r;
  row.N = N;
  try {
    const KnotSequence ks = uniform_knots(0.0, 1.0, N);
    const TensorSpace ts{{SplineSpace(ks, c.degree, c.smoothness), SplineSpace(ks, c.degree2, c.smoothness2)}};
    row.h = std::max(ts.spaces[0].knots().h(), ts.spaces[1].knots().h());
    const TensorTestFunction u = sin2d_target(c);
    TensorSpline s = c.subkind == "l2"   ? tensor_l2_project(ts, u, c.oversample)
                     : c.subkind == "ritz" ? tensor_ritz_project(ts, u, c.oversample)
                                           : tensor_q_project(ts, u, c.oversample);
    const double err = tensor_error_norm(u, s, c.ell1, c.ell2);
    finish_row(row, err, tensor_bound(c, ts, u));
  } catch (const Error& e) {
    row.skipped = true;
    row.reason = e.reason();
  }
  return row;
}

ReportRow mapped_row(const ExperimentConfig& c, int N) {
  ReportRow row;
  row.p = c.degree;
  row.k = c.smoothness;
  row.q = c.subkind == "l2" ? 0 : 1;
  row.ell = c.ell1 + c.ell2;
  row.r = c.r;
  row.N = N;
  try {
    if (c.r != 2)
      throw Error("invalid-order", "the mapped bound is second order");
    const GeometryMap G = geometry_catalog(c.map);
    const KnotSequence ks = uniform_knots(0.0, 1.0, N);
    const TensorSpace ts{{SplineSpace(ks, c.degree, c.smoothness), SplineSpace(ks, c.degree2, c.smoothness2)}};
    row.h = std::max(ts.spaces[0].knots().h(), ts.spaces[1].knots().h());
    const PhysicalTestFunction u = sin2d_physical(c);
    const TensorSpline s = mapped_project(G, ts, u, c.subkind, c.oversample);
    const double err = mapped_error_norm(G, u, s, c.ell1, c.ell2);
    finish_row(row, err, mapped_bound(G, ts, u, c.ell1, c.ell2));
  } catch (const Error& e) {
    row.skipped = true;
    row.reason = e.reason();
  }
  return row;
}

std::vector<ReportRow> multipatch_rows(const ExperimentConfig& c, int N) {
  ReportRow base;
  base.p = c.degree;
  base.k = c.degree - 1;
  base.q = 1;
  base.ell = c.ell1 + c.ell2;
  base.r = c.r;
  base.N = N;
  try {
    if (c.r != 2)
      throw Error("invalid-order", "the mapped bound is second order");
    const MultiPatch mp = multipatch_catalog(c.layout, N, c.degree);
    const PhysicalTestFunction u = sin2d_physical(c);
    const std::vector<PhysicalTestFunction> targets(mp.patches.size(), u);
    const std::vector<TensorSpline> projs = multipatch_q_project(mp, targets);
    std::vector<ReportRow> rows;
    for (std::size_t i = 0; i < mp.patches.size(); ++i) {
      ReportRow row = base;
      row.h = std::max(mp.patches[i].space.spaces[0].knots().h(), mp.patches[i].space.spaces[1].knots().h());
      const double err = mapped_error_norm(mp.patches[i].map, u, projs[i], c.ell1, c.ell2);
      finish_row(row, err, mapped_bound(mp.patches[i].map, mp.patches[i].space, u, c.ell1, c.ell2));
      rows.push_back(row);
    }
    return rows;
  } catch (const Error& e) {
    base.skipped = true;
    base.reason = e.reason();
    return {base};
  }
}

ErrorReport run_rows(const ExperimentConfig& c) {
  ErrorReport rep;
  std::vector<double> hs, errs;
  std::vector<int> counts;
  if (!c.knots.empty())
    counts.push_back(static_cast<int>(c.knots.size()) - 2);
  else
    counts = std::vector<int>(c.schedule.begin(), c.schedule.end());
  for (const int N : counts) {
    std::vector<ReportRow> rows;
    if (c.kind == "tensor")
      rows = {tensor_row(c, N)};
    else if (c.kind == "mapped")
      rows = {mapped_row(c, N)};
    else if (c.kind == "multipatch")
      rows = multipatch_rows(c, N);
    else {
      const KnotSequence ks = c.knots.empty() ? uniform_knots(c.a, c.b, N) : KnotSequence(c.knots);
      rows = {univariate_row(c, ks, N)};
    }
    double worst = 0, h = 0;
    bool any = false;
    for (const ReportRow& row : rows)
      if (!row.skipped) {
        any = true;
        worst = std::max(worst, row.error);
        h = row.h;
      }
    if (any) {
      hs.push_back(h);
      errs.push_back(worst);
    }
    const double order = fit_order(hs, errs);
    for (ReportRow& row : rows) {
      row.order = order;
      if (!row.skipped && row.effectivity > 1 + 1e-9)
        rep.pass = false;
      rep.rows.push_back(std::move(row));
    }
  }
  return rep;
}

} // namespace

ExperimentConfig parse_config(const std::string& json_text) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::exception& e) {
    bad(std::string("not valid JSON: ") + e.what());
  }
  if (!root.is_object())
    bad("the configuration must be a JSON object");
  check_keys(root, "configuration",
             {"projector", "domain", "degree", "smoothness", "degree2", "smoothness2", "q", "parity",
              "variant", "r", "ell", "ell1", "ell2", "target", "schedule", "knots", "map", "layout",
              "oversample"});

  ExperimentConfig c;
  parse_projector(root, c);
  const bool planar = c.kind == "tensor" || c.kind == "mapped" || c.kind == "multipatch";

  if (root.contains("domain")) {
    if (planar)
      bad("planar kinds run on the fixed parametric unit square");
    const json& d = root["domain"];
    if (!d.is_object())
      bad("key \"domain\" must be an object");
    check_keys(d, "domain", {"a", "b"});
    c.a = get_num(d, "a", 0.0);
    c.b = get_num(d, "b", 1.0);
    if (!(c.b > c.a))
      bad("the domain must have positive length");
  }

  if (!root.contains("degree"))
    bad("missing key \"degree\"");
  c.degree = get_int(root, "degree", 1);
  if (c.degree < 0)
    bad("degree must be nonnegative");
  c.smoothness = get_int(root, "smoothness", c.degree - 1);
  if (c.smoothness < -1 || c.smoothness > c.degree - 1)
    bad("smoothness must lie in [-1, degree - 1]");
  if (root.contains("degree2") || root.contains("smoothness2")) {
    if (!planar || c.kind == "multipatch")
      bad("per-direction spaces apply to tensor and mapped kinds only");
  }
  c.degree2 = get_int(root, "degree2", c.degree);
  c.smoothness2 = get_int(root, "smoothness2", root.contains("degree2") ? c.degree2 - 1 : c.smoothness);
  if (c.smoothness2 < -1 || c.smoothness2 > c.degree2 - 1)
    bad("smoothness2 must lie in [-1, degree2 - 1]");

  c.r = get_int(root, "r", 1);
  if (c.r < 0)
    bad("r must be nonnegative");
  if (c.kind == "reduced" && c.r != 1)
    bad("the reduced estimate fixes r = 1");

  if (root.contains("ell") && planar)
    bad("planar kinds use \"ell1\" and \"ell2\"");
  if ((root.contains("ell1") || root.contains("ell2")) && !planar)
    bad("univariate kinds use \"ell\"");
  c.ell = get_int(root, "ell", 0);
  c.ell1 = get_int(root, "ell1", 0);
  c.ell2 = get_int(root, "ell2", 0);
  if (c.ell < 0 || c.ell1 < 0 || c.ell2 < 0)
    bad("derivative orders must be nonnegative");
  if (c.kind == "l2" && c.ell != 0)
    bad("the l2 estimate is stated in the L2 norm; ell must be 0");
  if (c.kind == "q" && c.ell > 1)
    bad("the anchored estimate covers ell <= 1");
  if (planar && (c.ell1 > 1 || c.ell2 > 1))
    bad("planar estimates cover ell1, ell2 <= 1");
  if (c.kind == "tensor" && c.subkind == "l2" && (c.ell1 != 0 || c.ell2 != 0))
    bad("the tensor l2 estimate is stated in the L2 norm");

  parse_target(root, c, planar);

  const bool has_schedule = root.contains("schedule");
  const bool has_knots = root.contains("knots");
  if (has_schedule == has_knots)
    bad("exactly one of \"schedule\" and \"knots\" is required");
  if (has_knots && planar)
    bad("planar kinds use \"schedule\"");
  if (has_schedule) {
    if (!root["schedule"].is_array() || root["schedule"].empty())
      bad("key \"schedule\" must be a nonempty array of integers");
    int prev = -1;
    for (const json& v : root["schedule"]) {
      if (!v.is_number_integer())
        bad("key \"schedule\" must be a nonempty array of integers");
      const int n = v.get<int>();
      if (n < 0 || n <= prev)
        bad("the schedule must be strictly increasing and nonnegative");
      c.schedule.push_back(n);
      prev = n;
    }
  } else {
    if (!root["knots"].is_array() || root["knots"].size() < 2)
      bad("key \"knots\" must be an array of at least two numbers");
    double prev = 0;
    bool first = true;
    for (const json& v : root["knots"]) {
      if (!v.is_number())
        bad("key \"knots\" must be an array of numbers");
      const double z = v.get<double>();
      if (!first && z <= prev)
        bad("the knot list must be strictly increasing");
      c.knots.push_back(z);
      prev = z;
      first = false;
    }
  }

  if (root.contains("map") && c.kind != "mapped")
    bad("key \"map\" applies to the mapped kind only");
  if (root.contains("layout") && c.kind != "multipatch")
    bad("key \"layout\" applies to the multipatch kind only");
  if (root.contains("map")) {
    if (!root["map"].is_string())
      bad("key \"map\" must be a string");
    c.map = root["map"].get<std::string>();
  }
  if (root.contains("layout")) {
    if (!root["layout"].is_string())
      bad("key \"layout\" must be a string");
    c.layout = root["layout"].get<std::string>();
  }
  if (root.contains("q") && c.kind != "ritz")
    bad("key \"q\" applies to the ritz kind only");
  if ((root.contains("parity") || root.contains("variant")) && c.kind != "reduced")
    bad("keys \"parity\" and \"variant\" apply to the reduced kind only");
  c.oversample = get_int(root, "oversample", 4);
  if (c.oversample < 0 || c.oversample > 16)
    bad("oversample must lie in [0, 16]");
  return c;
}

std::string ErrorReport::csv() const {
  std::string out = "p,k,q,ell,r,N,h,error,bound,effectivity,order\n";
  char buf[512];
  for (const ReportRow& row : rows) {
    if (row.skipped)
      std::snprintf(buf, sizeof buf, "# skipped p=%d k=%d q=%d ell=%d r=%d N=%d reason=%s\n", row.p,
                    row.k, row.q, row.ell, row.r, row.N, row.reason.c_str());
    else
      std::snprintf(buf, sizeof buf, "%d,%d,%d,%d,%d,%d,%.17g,%.17g,%.17g,%.17g,%.17g\n", row.p, row.k,
                    row.q, row.ell, row.r, row.N, row.h, row.error, row.bound, row.effectivity,
                    row.order);
    out += buf;
  }
  return out;
}

double fit_order(const std::vector<double>& hs, const std::vector<double>& errors) {
  const int n = static_cast<int>(hs.size());
  if (n < 2)
    return 0.0;
  const auto slope_r2 = [&](int s) {
    const int m = n - s;
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (int i = s; i < n; ++i) {
      const double x = std::log(hs[i]);
      const double y = std::log(std::max(errors[i], 1e-300));
      sx += x;
      sy += y;
      sxx += x * x;
      sxy += x * y;
    }
    const double den = m * sxx - sx * sx;
    const double beta = den != 0 ? (m * sxy - sx * sy) / den : 0.0;
    const double alpha = (sy - beta * sx) / m;
    double ss_res = 0, ss_tot = 0;
    for (int i = s; i < n; ++i) {
      const double x = std::log(hs[i]);
      const double y = std::log(std::max(errors[i], 1e-300));
      ss_res += (y - alpha - beta * x) * (y - alpha - beta * x);
      ss_tot += (y - sy / m) * (y - sy / m);
    }
    const double r2 = ss_tot > 0 ? 1 - ss_res / ss_tot : 1.0;
    return std::pair<double, double>(beta, r2);
  };
  const int start = std::max(0, n - 4);
  const auto [beta, r2] = slope_r2(start);
  if (r2 < 0.999 && n - start > 2)
    return slope_r2(start + 1).first;
  return beta;
}

ErrorReport run_verify(const ExperimentConfig& config) { return run_rows(config); }

ErrorReport run_convergence(const ExperimentConfig& config) {
  if (config.schedule.size() < 4)
    throw Error("invalid-config", "convergence needs a schedule of at least four refinements");
  ErrorReport rep = run_rows(config);
  std::set<double> widths;
  for (const ReportRow& row : rep.rows)
    if (!row.skipped)
      widths.insert(row.h);
  const int ell_total = config.kind == "tensor" || config.kind == "mapped" || config.kind == "multipatch"
                            ? config.ell1 + config.ell2
                            : (config.kind == "reduced" ? 0 : config.ell);
  const int r = config.kind == "reduced" ? 1 : config.r;
  const double target = r - ell_total - 0.2;
  // The last row carries the fit over the full schedule.
  rep.pass = widths.size() >= 2 && rep.rows.back().order >= target;
  return rep;
}

} // namespace splb
