#include "cli.hpp"

#include <algorithm>
#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "annulus_green.hpp"

namespace annulus_green::cli {
namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  int dim = 3;
  double a = 0.5;
  std::string x;
  std::string y;
  int trunc_max = Truncation{}.max_order;
  double trunc_tol = Truncation{}.rel_tol;
  std::string format = "json";
  std::string out;
  std::uint64_t seed = VerificationConfig{}.seed;
  unsigned threads = 1;

  // robin
  std::optional<double> rho_min, rho_max;
  int robin_points = 50;
  // verify
  int boundary_samples = VerificationConfig{}.boundary_samples;
  bool inject_c0_sign_flip = false;
  // scan
  std::string u, v;
  int grid = 101;
  double extent = 1.0;
  // coeffs
  std::string rho_list;
  int m_max = 10;
};

std::vector<double> parse_list(const std::string& text, const char* what) {
  std::vector<double> values;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const char* begin = item.c_str();
    char* end = nullptr;
    errno = 0;
    const double v = std::strtod(begin, &end);
    while (end && *end == ' ') ++end;
    if (item.empty() || end == begin || *end != '\0' || errno == ERANGE || !std::isfinite(v)) {
      throw UsageError(std::string("malformed ") + what + ": '" + text + "'");
    }
    values.push_back(v);
  }
  if (values.empty() || (!text.empty() && text.back() == ',')) {
    throw UsageError(std::string("malformed ") + what + ": '" + text + "'");
  }
  return values;
}

EvalPoint parse_point(const std::string& text, int dim, const char* what) {
  if (text.empty()) throw UsageError(std::string("missing ") + what);
  const auto coords = parse_list(text, what);
  if (static_cast<int>(coords.size()) != dim) {
    throw UsageError(std::string(what) + " has " + std::to_string(coords.size()) + " coordinates but --dim is " +
                     std::to_string(dim));
  }
  return EvalPoint(coords);
}

Truncation truncation(const RunConfig& c) {
  Truncation tr;
  tr.max_order = c.trunc_max;
  tr.rel_tol = c.trunc_tol;
  tr.validate();
  return tr;
}

/// Rows of named numeric columns, written as CSV or as a JSON array of
/// objects. A missing value is an empty CSV cell and a JSON null.
struct Table {
  std::vector<std::string> columns;
  struct Cell {
    std::optional<double> number;
    std::string text;
    bool is_text = false;
    bool is_integer = false;
  };
  std::vector<std::vector<Cell>> rows;

  static Cell num(double v) { return {v, {}, false, false}; }
  static Cell integer(int v) { return {static_cast<double>(v), {}, false, true}; }
  static Cell none() { return {std::nullopt, {}, false, false}; }
  static Cell str(std::string s) { return {std::nullopt, std::move(s), true, false}; }

  void write(std::ostream& os, const std::string& format) const {
    if (format == "csv") {
      for (std::size_t i = 0; i < columns.size(); ++i) os << (i ? "," : "") << columns[i];
      os << '\n';
      for (const auto& row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
          if (i) os << ',';
          if (row[i].is_text) os << row[i].text;
          else if (row[i].number) os << format_double(*row[i].number);
        }
        os << '\n';
      }
      return;
    }
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& row : rows) {
      nlohmann::ordered_json rec = nlohmann::ordered_json::object();
      for (std::size_t i = 0; i < row.size(); ++i) {
        if (row[i].is_text) rec[columns[i]] = row[i].text;
        else if (row[i].is_integer) rec[columns[i]] = static_cast<long long>(*row[i].number);
        else if (row[i].number && std::isfinite(*row[i].number)) rec[columns[i]] = *row[i].number;
        else rec[columns[i]] = nullptr;
      }
      arr.push_back(std::move(rec));
    }
    os << (arr.size() == 1 ? arr[0] : arr).dump(2) << '\n';
  }
};

template <class Writer>
void emit(const RunConfig& c, std::ostream& out, Writer&& write) {
  if (c.out.empty()) {
    write(out);
    return;
  }
  std::ofstream file(c.out, std::ios::binary);
  if (!file) throw IoError("cannot open output file '" + c.out + "'");
  write(file);
  file.flush();
  if (!file) throw IoError("failed writing output file '" + c.out + "'");
}

int cmd_eval(const RunConfig& c, std::ostream& out) {
  const Annulus dom(c.dim, c.a);
  const EvalPoint x = parse_point(c.x, c.dim, "--x");
  const EvalPoint y = parse_point(c.y, c.dim, "--y");
  const GreenEvaluation g = green(x, y, dom, truncation(c));
  Table t;
  t.columns = {"G", "H", "Gamma", "tail", "terms"};
  t.rows.push_back({Table::num(g.green), Table::num(g.regular_part), Table::num(g.singular_part),
                    Table::num(g.tail_estimate), Table::integer(g.terms_used)});
  emit(c, out, [&](std::ostream& os) { t.write(os, c.format); });
  return ok;
}

int cmd_robin(const RunConfig& c, std::ostream& out) {
  const Annulus dom(c.dim, c.a);
  const Truncation tr = truncation(c);
  const double lo = c.rho_min.value_or(c.a + 0.1 * (1.0 - c.a));
  const double hi = c.rho_max.value_or(1.0 - 0.1 * (1.0 - c.a));
  if (c.robin_points < 1) throw UsageError("--points must be at least 1");
  if (!(lo <= hi)) throw UsageError("--rho-min must not exceed --rho-max");
  std::vector<double> e(c.dim, 0.0);
  e[0] = 1.0;
  const UnitDirection dir(e);
  Table t;
  t.columns = {"rho", "tau", "tail"};
  for (int i = 0; i < c.robin_points; ++i) {
    const double rho = c.robin_points == 1 ? lo : lo + (hi - lo) * i / (c.robin_points - 1.0);
    const SeriesValue tau = robin(EvalPoint::polar(rho, dir), dom, tr);
    t.rows.push_back({Table::num(rho), Table::num(tau.value), Table::num(tau.tail_estimate)});
  }
  emit(c, out, [&](std::ostream& os) { t.write(os, c.format); });
  return ok;
}

int cmd_verify(const RunConfig& c, std::ostream& out) {
  Annulus dom(c.dim, c.a);
  if (c.inject_c0_sign_flip) dom = dom.with_c0_scale(-1.0);
  VerificationConfig cfg;
  cfg.seed = c.seed;
  cfg.threads = c.threads;
  cfg.boundary_samples = c.boundary_samples;
  QuadratureSpec q;
  q.monte_carlo_seed = c.seed;
  const VerificationReport report = run_full_verification(dom, q, truncation(c), cfg);

  RunConfig file_cfg = c;
  if (file_cfg.out.empty()) file_cfg.out = "verification_report." + c.format;
  std::ostringstream sink;
  emit(file_cfg, sink, [&](std::ostream& os) {
    if (c.format == "csv") report.write_csv(os);
    else report.write_json(os);
  });
  out << "pass " << report.count(CheckStatus::pass) << ", fail " << report.count(CheckStatus::fail) << ", flagged "
      << report.count(CheckStatus::flagged) << ", info " << report.count(CheckStatus::info) << '\n';
  for (const auto& [name, check] : report.checks()) {
    if (check.status == CheckStatus::fail || check.status == CheckStatus::flagged) {
      out << to_string(check.status) << ' ' << name << " measured=" << format_double(check.measured)
          << " target=" << format_double(check.target) << " tol=" << format_double(check.tolerance) << '\n';
    }
  }
  out << "report written to " << file_cfg.out << '\n';
  return report.has_hard_failure() ? verification_failed : ok;
}

UnitDirection slice_direction(const std::string& text, int dim, int axis, const char* what) {
  if (text.empty()) {
    std::vector<double> e(dim, 0.0);
    e[axis] = 1.0;
    return UnitDirection(e);
  }
  const auto v = parse_list(text, what);
  if (static_cast<int>(v.size()) != dim) throw UsageError(std::string(what) + " does not match --dim");
  try {
    return UnitDirection(v);
  } catch (const std::exception&) {
    throw UsageError(std::string(what) + " must be a non-zero vector");
  }
}

int cmd_scan(const RunConfig& c, std::ostream& out) {
  const Annulus dom(c.dim, c.a);
  const Truncation tr = truncation(c);
  const EvalPoint x = c.x.empty() ? EvalPoint::polar(0.5 * (1.0 + c.a), slice_direction("", c.dim, 0, "--x"))
                                  : parse_point(c.x, c.dim, "--x");
  if (c.dim < 2) throw UsageError("malformed slice: need two directions");
  const UnitDirection u = slice_direction(c.u, c.dim, 0, "--u");
  const UnitDirection v = slice_direction(c.v, c.dim, 1, "--v");
  if (std::abs(cosine(u, v)) > 1e-12) throw UsageError("malformed slice: --u and --v must be orthogonal");
  if (c.grid < 2) throw UsageError("malformed slice: --n must be at least 2");
  if (!(c.extent > 0.0)) throw UsageError("malformed slice: --extent must be positive");
  detail::require_in_annulus(x, dom, "scan");

  const int n = c.grid;
  std::vector<std::optional<std::vector<Table::Cell>>> cells(static_cast<std::size_t>(n) * n);
  parallel_for(cells.size(), c.threads, [&](std::size_t idx) {
    const double s = -c.extent + 2.0 * c.extent * static_cast<double>(idx / n) / (n - 1);
    const double w = -c.extent + 2.0 * c.extent * static_cast<double>(idx % n) / (n - 1);
    std::vector<double> y(c.dim);
    for (int k = 0; k < c.dim; ++k) y[k] = s * u.components()[k] + w * v.components()[k] + 0.0;
    const EvalPoint p(y);
    if (!(p.radius() > dom.inner_radius() && p.radius() < 1.0)) return;
    std::vector<Table::Cell> row;
    for (double coord : y) row.push_back(Table::num(coord));
    if (distance(p, x) < 1e-3) {
      row.insert(row.end(), {Table::none(), Table::none(), Table::none(), Table::str("near-singular")});
    } else {
      const GreenEvaluation g = green(x, p, dom, tr);
      row.insert(row.end(), {Table::num(g.green), Table::num(g.regular_part), Table::num(g.tail_estimate),
                             Table::str(g.reliable ? "" : "unreliable")});
    }
    cells[idx] = std::move(row);
  });
  Table t;
  for (int k = 1; k <= c.dim; ++k) t.columns.push_back("y" + std::to_string(k));
  t.columns.insert(t.columns.end(), {"G", "H", "tail", "flag"});
  for (auto& cell : cells) {
    if (cell) t.rows.push_back(std::move(*cell));
  }
  emit(c, out, [&](std::ostream& os) { t.write(os, c.format); });
  return ok;
}

int cmd_coeffs(const RunConfig& c, std::ostream& out) {
  const Annulus dom(c.dim, c.a);
  if (c.m_max < 1) throw UsageError("--m-max must be at least 1");
  std::vector<double> rhos;
  if (c.rho_list.empty()) {
    for (int i = 0; i < 9; ++i) rhos.push_back(c.a + (1.0 - c.a) * i / 8.0);
  } else {
    rhos = parse_list(c.rho_list, "--rho");
  }
  const double c0 = coeff_C0(dom);
  Table t;
  t.columns = {"rho", "m", "A", "B", "C0"};
  for (double rho : rhos) {
    for (int m = 1; m <= c.m_max; ++m) {
      t.rows.push_back({Table::num(rho), Table::integer(m), Table::num(coeff_A(m, dom, rho)),
                        Table::num(coeff_B(m, dom, rho)), Table::num(c0)});
    }
  }
  emit(c, out, [&](std::ostream& os) { t.write(os, c.format); });
  return ok;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig c;
  CLI::App app{"Neumann Green function of the annulus a < |x| < 1 in R^N", "annulus-green"};
  app.require_subcommand(1, 1);
  app.add_option("--dim", c.dim, "space dimension N >= 3")->capture_default_str();
  app.add_option("--a", c.a, "inner radius, 0 < a < 1")->capture_default_str();
  app.add_option("--x", c.x, "point x as comma-separated coordinates");
  app.add_option("--y", c.y, "point y as comma-separated coordinates");
  app.add_option("--trunc-max", c.trunc_max, "highest series order")->capture_default_str();
  app.add_option("--trunc-tol", c.trunc_tol, "relative stopping tolerance")->capture_default_str();
  app.add_option("--format", c.format, "output format")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
  app.add_option("--out", c.out, "output file (default: stdout; verify: verification_report.<format>)");
  app.add_option("--seed", c.seed, "seed for sampled point sets")->capture_default_str();
  app.add_option("--threads", c.threads, "worker threads; output does not depend on it")
      ->check(CLI::Range(1u, 256u))
      ->capture_default_str();

  auto* eval = app.add_subcommand("eval", "G, H, Gamma, tail estimate and terms used at (x, y)");
  auto* robin_cmd = app.add_subcommand("robin", "Robin function on a radius grid");
  robin_cmd->add_option("--rho-min", c.rho_min, "first grid radius (default a + (1-a)/10)");
  robin_cmd->add_option("--rho-max", c.rho_max, "last grid radius (default 1 - (1-a)/10)");
  robin_cmd->add_option("--points", c.robin_points, "grid size")->capture_default_str();
  auto* verify = app.add_subcommand("verify", "run every verification suite and write the report");
  verify->add_option("--samples", c.boundary_samples, "boundary directions per sphere and probe point")
      ->capture_default_str();
  verify->add_flag("--inject-c0-sign-flip", c.inject_c0_sign_flip)->group("");
  auto* scan = app.add_subcommand("scan", "G and H on a planar grid of y with x fixed");
  scan->add_option("--u", c.u, "first slice direction (default e1)");
  scan->add_option("--v", c.v, "second slice direction, orthogonal to --u (default e2)");
  scan->add_option("--n", c.grid, "grid points per side")->capture_default_str();
  scan->add_option("--extent", c.extent, "grid covers [-extent, extent]^2")->capture_default_str();
  auto* coeffs = app.add_subcommand("coeffs", "A_m, B_m and C_0 tables on a radius grid");
  coeffs->add_option("--rho", c.rho_list, "comma-separated radii (default 9 points on [a, 1])");
  coeffs->add_option("--m-max", c.m_max, "highest order")->capture_default_str();
  for (auto* sub : {eval, robin_cmd, verify, scan, coeffs}) sub->fallthrough();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << (e.get_name() == "CallForAllHelp" ? app.help("", CLI::AppFormatMode::All)
                                               : (app.get_subcommands().empty() ? app.help()
                                                                                : app.get_subcommands()[0]->help()));
      return ok;
    }
    err << "error: " << e.what() << '\n';
    return usage_error;
  }

  try {
    if (*eval) return cmd_eval(c, out);
    if (*robin_cmd) return cmd_robin(c, out);
    if (*verify) return cmd_verify(c, out);
    if (*scan) return cmd_scan(c, out);
    return cmd_coeffs(c, out);
  } catch (const IoError& e) {
    err << "error: " << e.what() << '\n';
    return io_error;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return usage_error;
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << '\n';
    return usage_error;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return usage_error;
  }
}

}  // namespace annulus_green::cli
