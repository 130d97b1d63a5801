#include "nonnoether/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "nonnoether/catalog.hpp"
#include "nonnoether/json_writer.hpp"
#include "nonnoether/reports.hpp"

namespace nonnoether {

namespace fs = std::filesystem;

SystemSpecDocument resolve_system(const std::string& name_or_path) {
  if (find_catalog_entry(name_or_path)) return catalog_document(name_or_path);
  if (!fs::exists(name_or_path)) {
    throw SpecFormatError("'" + name_or_path + "' is neither a catalog system nor a readable file");
  }
  return read_spec_file(name_or_path);
}

namespace {

struct UsageError : Error {
  using Error::Error;
};

struct Flags {
  std::string system;
  int points = 20;
  std::uint64_t seed = 1;
  double dt = 1e-3;
  long steps = 1000;
  long stride = 10;
  double tol_scale = 1.0;
  std::string out_dir = ".";
  std::string format = "json";
  std::vector<double> x0;
  std::string show;
};

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw UsageError("cannot write " + path.string());
  f << text;
}

fs::path prepare_out(const Flags& flags) {
  fs::path dir(flags.out_dir);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw UsageError("cannot create output directory " + dir.string() + ": " + ec.message());
  return dir;
}

std::optional<PhasePoint> parse_x0(const Flags& flags, const HamiltonianSystem& sys) {
  if (flags.x0.empty()) return std::nullopt;
  if (static_cast<int>(flags.x0.size()) != sys.dim()) {
    throw UsageError("--x0 needs " + std::to_string(sys.dim()) + " values");
  }
  return PhasePoint(Eigen::Map<const Vector>(flags.x0.data(), sys.dim()));
}

std::string format_value(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string invariants_csv(const LoadedSystem& loaded, const std::vector<PhasePoint>& points) {
  const HamiltonianSystem& sys = loaded.system;
  const int n = sys.n();
  std::ostringstream os;
  for (std::size_t i = 0; i < loaded.doc.coordinates.size(); ++i) os << (i ? "," : "") << loaded.doc.coordinates[i];
  for (int k = 1; k <= n; ++k) os << ",l_" << k;
  for (int k = 1; k <= 2 * n; ++k) os << ",mu_" << k;
  for (int k = 1; k <= n; ++k) os << ",lambda_" << k;
  os << ",pairing_gap\n";
  for (const auto& x : points) {
    const InvariantBundle b = invariant_bundle(sys, x, 2 * n);
    for (int j = 0; j < x.dim(); ++j) os << (j ? "," : "") << format_value(x[j]);
    for (double v : b.l) os << ',' << format_value(v);
    for (double v : b.mu_hat) os << ',' << format_value(v);
    for (int k = 0; k < n; ++k) os << ',' << format_value(b.lambda[k].real());
    os << ',' << format_value(b.pairing_gap) << '\n';
  }
  return os.str();
}

int run_check(const Flags& flags, std::ostream& out) {
  const LoadedSystem loaded = load_system(resolve_system(flags.system));
  CheckOptions opts;
  opts.points = flags.points;
  opts.seed = flags.seed;
  opts.tol = Tolerances{}.scaled(flags.tol_scale);
  const Report report = check_report(loaded, opts);
  const fs::path path = prepare_out(flags) / "check.json";
  write_file(path, to_json_text(report.json));
  out << loaded.doc.name << ": " << (report.pass ? "pass" : "FAIL") << " (" << path.string() << ")\n";
  return report.pass ? 0 : 2;
}

int run_invariants(const Flags& flags, std::ostream& out) {
  const LoadedSystem loaded = load_system(resolve_system(flags.system));
  loaded.system.require_symmetry();
  std::vector<PhasePoint> points;
  if (auto x = parse_x0(flags, loaded.system)) {
    points.push_back(*x);
  } else {
    points = sample_points(loaded.system, flags.points, flags.seed);
  }
  CheckOptions opts;
  opts.points = static_cast<int>(points.size());
  opts.seed = flags.seed;
  opts.tol = Tolerances{}.scaled(flags.tol_scale);
  const Report report = invariants_report(loaded, points, opts);
  const fs::path dir = prepare_out(flags);
  fs::path path;
  if (flags.format == "csv") {
    path = dir / "invariants.csv";
    write_file(path, invariants_csv(loaded, points));
  } else {
    path = dir / "invariants.json";
    write_file(path, to_json_text(report.json));
  }
  out << loaded.doc.name << ": " << (report.pass ? "pass" : "FAIL") << " (" << path.string() << ")\n";
  return report.pass ? 0 : 2;
}

int run_integrate(const Flags& flags, std::ostream& out) {
  const LoadedSystem loaded = load_system(resolve_system(flags.system));
  IntegrateOptions opts;
  opts.cfg.dt = flags.dt;
  opts.cfg.steps = flags.steps;
  opts.cfg.stride = flags.stride;
  opts.seed = flags.seed;
  opts.tol = Tolerances{}.scaled(flags.tol_scale);
  opts.x0 = parse_x0(flags, loaded.system);
  if (!(flags.dt != 0.0 && std::isfinite(flags.dt)) || flags.steps < 1 || flags.stride < 1) {
    throw UsageError("--dt must be finite and nonzero, --steps and --stride at least 1");
  }
  const IntegrateRun run = integrate_report(loaded, opts);
  const fs::path dir = prepare_out(flags);
  write_file(dir / "integrate.json", to_json_text(run.report.json));
  std::ostringstream csv;
  // h is already the energy column; CSV columns follow the report order.
  write_trajectory_csv(csv, run.trajectory, loaded.doc.coordinates, run.columns);
  write_file(dir / "trajectory.csv", csv.str());
  out << loaded.doc.name << ": " << (run.report.pass ? "pass" : "FAIL") << " (" << (dir / "integrate.json").string()
      << ", " << (dir / "trajectory.csv").string() << ")\n";
  return run.report.pass ? 0 : 2;
}

int run_catalog(const Flags& flags, std::ostream& out) {
  if (!flags.show.empty()) {
    const CatalogEntry* e = find_catalog_entry(flags.show);
    if (!e) throw UsageError("unknown catalog system '" + flags.show + "'");
    out << e->source;
    return 0;
  }
  std::size_t width = 0;
  for (const auto& e : catalog()) width = std::max(width, e.name.size());
  for (const auto& e : catalog()) out << std::left << std::setw(static_cast<int>(width + 2)) << e.name << e.summary << '\n';
  return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Non-Noether symmetry invariants and structural checks", "sysdsl"};
  app.require_subcommand(1);
  Flags flags;

  auto add_system = [&](CLI::App* sub) {
    sub->add_option("--system", flags.system, "catalog name or spec file")->required();
    sub->add_option("--seed", flags.seed, "sampling seed");
    sub->add_option("--tol-scale", flags.tol_scale, "multiplier on every tolerance")->check(CLI::PositiveNumber);
    sub->add_option("--out", flags.out_dir, "report directory");
  };

  CLI::App* check = app.add_subcommand("check", "structural gates, torsion, Lenard and involution");
  add_system(check);
  check->add_option("--points", flags.points, "random sample points")->check(CLI::PositiveNumber);

  CLI::App* inv = app.add_subcommand("invariants", "invariant bundle at given or random points");
  add_system(inv);
  inv->add_option("--points", flags.points, "random sample points")->check(CLI::PositiveNumber);
  inv->add_option("--x0", flags.x0, "evaluate at this point instead")->delimiter(',');
  inv->add_option("--format", flags.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));

  CLI::App* integ = app.add_subcommand("integrate", "implicit-midpoint trajectory and drift report");
  add_system(integ);
  integ->add_option("--dt", flags.dt, "time step");
  integ->add_option("--steps", flags.steps, "number of steps");
  integ->add_option("--stride", flags.stride, "store every stride-th step");
  integ->add_option("--x0", flags.x0, "initial point")->delimiter(',');

  CLI::App* cat = app.add_subcommand("catalog", "list built-in systems");
  cat->add_option("--show", flags.show, "print a system's spec document");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "sysdsl: " << e.what() << '\n';
    if (const CLI::App* sub = app.get_subcommands().empty() ? nullptr : app.get_subcommands().front()) {
      err << sub->help();
    }
    return 1;
  }

  try {
    if (check->parsed()) return run_check(flags, out);
    if (inv->parsed()) return run_invariants(flags, out);
    if (integ->parsed()) return run_integrate(flags, out);
    return run_catalog(flags, out);
  } catch (const ValidationError& e) {
    err << "sysdsl: validation failed: " << e.what() << '\n';
    for (const auto& f : e.failures()) {
      err << "  " << f.gate << " residual " << f.residual << " at [";
      for (std::size_t i = 0; i < f.point.size(); ++i) err << (i ? ", " : "") << f.point[i];
      err << "] " << f.detail << '\n';
    }
    return 2;
  } catch (const UsageError& e) {
    err << "sysdsl: " << e.what() << '\n';
    return 1;
  } catch (const SpecFormatError& e) {
    err << "sysdsl: " << e.what() << '\n';
    return 1;
  } catch (const expr::SyntaxError& e) {
    err << "sysdsl: " << e.what() << '\n';
    return 1;
  } catch (const expr::UnknownIdentifier& e) {
    err << "sysdsl: " << e.what() << '\n';
    return 1;
  } catch (const MissingSymmetryError& e) {
    err << "sysdsl: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    err << "sysdsl: " << e.what() << '\n';
    return 2;
  }
}

}  // namespace nonnoether
