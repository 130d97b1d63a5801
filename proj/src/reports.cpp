#include "nonnoether/reports.hpp"

#include <cmath>
#include <random>
#include <string>

#include "nonnoether/engine.hpp"
#include "nonnoether/parallel.hpp"

namespace nonnoether {

using ojson = nlohmann::ordered_json;

std::vector<PhasePoint> sample_points(const HamiltonianSystem& sys, int count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<PhasePoint> out;
  out.reserve(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) out.push_back(sys.domain().sample(rng));
  return out;
}

namespace {

ojson vec_json(const std::vector<double>& v) {
  ojson a = ojson::array();
  for (double x : v) a.push_back(x);
  return a;
}

ojson matrix_json(const Matrix& m) {
  ojson rows = ojson::array();
  for (int i = 0; i < m.rows(); ++i) {
    ojson r = ojson::array();
    for (int j = 0; j < m.cols(); ++j) r.push_back(m(i, j));
    rows.push_back(std::move(r));
  }
  return rows;
}

ojson complex_json(const std::vector<std::complex<double>>& v) {
  ojson a = ojson::array();
  for (const auto& c : v) a.push_back({{"re", c.real()}, {"im", c.imag()}});
  return a;
}

ojson load_gate_json(const LoadGateReport& g) {
  ojson j;
  j["points"] = g.points;
  j["max_antisymmetry"] = g.max_antisymmetry;
  j["min_abs_det"] = g.min_abs_det;
  j["max_closedness"] = g.max_closedness;
  j["max_symmetry_commutator"] = g.max_symmetry_commutator ? ojson(*g.max_symmetry_commutator) : ojson(nullptr);
  j["min_symmetry_witness"] = g.min_symmetry_witness ? ojson(*g.min_symmetry_witness) : ojson(nullptr);
  j["warnings"] = static_cast<int>(g.warnings.size());
  j["pass"] = true;
  return j;
}

ojson meta_json(std::uint64_t seed, const Tolerances& tol) {
  ojson m;
  m["seed"] = seed;
  m["tolerances"] = tol.to_json();
  m["version"] = kVersion;
  return m;
}

double max_of(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, x);
  return m;
}

// Per-point measurements for the check report.
struct PointMeasurements {
  LiouvilleResiduals liouville;
  std::optional<SymmetryResidual> symmetry;
  double trace_residual = 0.0;
  double pairing_gap = 0.0;
  bool complex_spectrum = false;
  std::vector<double> lutzky_bracket;
  std::vector<double> trace_bracket;
  double cross_formula = 0.0;
  double torsion = 0.0;
  std::vector<double> lenard_normalized;
  std::vector<double> lenard_unnormalized;
};

}  // namespace

ojson system_json(const LoadedSystem& loaded) {
  const SystemSpecDocument& d = loaded.doc;
  ojson j;
  j["name"] = d.name;
  j["description"] = d.description;
  j["n"] = d.n;
  j["coordinates"] = d.coordinates;
  j["role"] = std::string(to_string(d.role));
  if (d.omega.empty()) {
    j["omega"] = "canonical";
  } else {
    j["omega"] = d.omega;
  }
  j["h"] = d.h;
  j["E"] = d.symmetry ? ojson(*d.symmetry) : ojson(nullptr);
  j["domain"] = {{"lo", vec_json(d.lo)}, {"hi", vec_json(d.hi)}};
  return j;
}

ojson bundle_json(const InvariantBundle& b) {
  ojson j;
  j["point"] = vec_json(b.point);
  j["l"] = vec_json(b.l);
  j["lambda"] = complex_json(b.lambda);
  j["mu_hat"] = vec_json(b.mu_hat);
  j["cross_residuals"] = vec_json(b.cross_residuals);
  j["pairing_gap"] = b.pairing_gap;
  j["pairing_ok"] = b.pairing_ok;
  j["complex_spectrum"] = b.has_complex;
  return j;
}

Report check_report(const LoadedSystem& loaded, const CheckOptions& opts) {
  const HamiltonianSystem& sys = loaded.system;
  const Tolerances& tol = opts.tol;
  const SymmetryRole role = loaded.doc.role;
  const bool has_e = sys.symmetry().has_value();
  const int n = sys.n();
  const std::vector<PhasePoint> points = sample_points(sys, opts.points, opts.seed);

  std::vector<ScalarField> lutzky_fields;
  std::vector<ScalarField> trace_fields;
  MatrixField r_field;
  if (has_e) {
    for (int k = 1; k <= n; ++k) {
      lutzky_fields.push_back(lutzky_field(sys, k));
      trace_fields.push_back(power_trace_field(sys, k));
    }
    r_field = recursion_field(sys);
  }

  std::vector<PointMeasurements> per_point(points.size());
  parallel_for(points.size(), [&](std::size_t i) {
    const PhasePoint& x = points[i];
    PointMeasurements& m = per_point[i];
    m.liouville = liouville_residuals(sys, x);
    if (!has_e) return;
    m.symmetry = symmetry_residual(sys, x);
    const Matrix r = r_field(x);
    const Spectrum spec = spectrum(r);
    m.pairing_gap = spec.pairing_gap;
    m.complex_spectrum = spec.has_complex;
    const std::vector<double> traces = power_traces(r, 2 * n);
    for (int k = 1; k <= 2 * n; ++k) {
      std::complex<double> sum = 0.0;
      for (const auto& lam : spec.raw) sum += std::pow(lam, k);
      const double tr = traces[k - 1];
      m.trace_residual = std::max(m.trace_residual, std::abs(tr - sum.real()) / (1.0 + std::abs(tr)));
    }
    const Matrix w = omega_inverse_matrix(sys, x);
    const Vector dh = gradient(sys.hamiltonian(), x);
    for (int k = 0; k < n; ++k) {
      m.lutzky_bracket.push_back(std::abs(poisson_from_gradients(w, gradient(lutzky_fields[k], x), dh)));
      m.trace_bracket.push_back(std::abs(poisson_from_gradients(w, gradient(trace_fields[k], x), dh)));
    }
    const InvariantBundle b = invariant_bundle(sys, x, 2 * n);
    for (int k = 0; k < n; ++k) {
      m.cross_formula = std::max(m.cross_formula, b.cross_residuals[k] / (1.0 + std::abs(b.l[k])));
    }
    m.torsion = fn_torsion(r_field, x).max_residual;
    const LenardResidual lr = lenard_residual(sys, x, opts.lenard_count);
    m.lenard_normalized = lr.normalized;
    m.lenard_unnormalized = lr.unnormalized;
  });

  bool pass = true;
  ojson gates;
  gates["load"] = load_gate_json(loaded.gate);

  {
    double form = 0.0, bivector = 0.0;
    for (const auto& m : per_point) {
      form = std::max(form, m.liouville.form);
      bivector = std::max(bivector, m.liouville.bivector);
    }
    const bool ok = form <= tol.liouville && bivector <= tol.liouville;
    pass = pass && ok;
    gates["liouville"] = {{"max_form", form}, {"max_bivector", bivector}, {"tolerance", tol.liouville}, {"pass", ok}};
  }

  if (!has_e) {
    for (const char* key : {"symmetry", "spectrum", "conservation", "cross_formula", "torsion", "lenard", "involution"}) {
      gates[key] = nullptr;
    }
  } else {
    double commutator = 0.0;
    double witness = std::numeric_limits<double>::infinity();
    for (const auto& m : per_point) {
      commutator = std::max(commutator, m.symmetry->commutator);
      witness = std::min(witness, m.symmetry->witness);
    }
    const bool symmetric = role == SymmetryRole::non_noether;
    bool sym_ok;
    if (symmetric) {
      sym_ok = commutator <= tol.symmetry && witness >= tol.witness_min;
    } else {
      sym_ok = commutator >= tol.negative_control_min;
    }
    pass = pass && sym_ok;
    gates["symmetry"] = {{"expectation", symmetric ? "commuting" : "non-commuting"},
                         {"max_commutator", commutator},
                         {"min_witness", witness},
                         {"tolerance", symmetric ? tol.symmetry : tol.negative_control_min},
                         {"witness_min", tol.witness_min},
                         {"pass", sym_ok}};

    double trace_res = 0.0, gap = 0.0;
    int complex_points = 0;
    for (const auto& m : per_point) {
      trace_res = std::max(trace_res, m.trace_residual);
      gap = std::max(gap, m.pairing_gap);
      complex_points += m.complex_spectrum ? 1 : 0;
    }
    const bool spec_ok = trace_res <= tol.trace_spectrum && gap <= tol.pairing_gap;
    pass = pass && spec_ok;
    gates["spectrum"] = {{"max_trace_residual", trace_res},
                         {"max_pairing_gap", gap},
                         {"complex_points", complex_points},
                         {"pass", spec_ok}};

    std::vector<double> lb(n, 0.0), tb(n, 0.0);
    for (const auto& m : per_point) {
      for (int k = 0; k < n; ++k) {
        lb[k] = std::max(lb[k], m.lutzky_bracket[k]);
        tb[k] = std::max(tb[k], m.trace_bracket[k]);
      }
    }
    const bool cons_ok = max_of(lb) <= tol.conservation && max_of(tb) <= tol.conservation;
    if (symmetric) pass = pass && cons_ok;
    gates["conservation"] = {{"max_lutzky_bracket", vec_json(lb)},
                             {"max_trace_bracket", vec_json(tb)},
                             {"tolerance", tol.conservation},
                             {"gated", symmetric},
                             {"pass", symmetric ? cons_ok : true}};

    double cross = 0.0;
    for (const auto& m : per_point) cross = std::max(cross, m.cross_formula);
    const bool cross_ok = cross <= tol.cross_formula;
    pass = pass && cross_ok;
    ojson constants = ojson::array();
    for (int k = 1; k <= n; ++k) constants.push_back(convention_constant(n, k));
    gates["cross_formula"] = {{"max_relative_residual", cross},
                              {"convention_constants", constants},
                              {"tolerance", tol.cross_formula},
                              {"pass", cross_ok}};

    double torsion = 0.0;
    for (const auto& m : per_point) torsion = std::max(torsion, m.torsion);
    const bool torsion_free = torsion <= tol.torsion;
    gates["torsion"] = {{"max_residual", torsion}, {"tolerance", tol.torsion}, {"vanishes", torsion_free}};

    const bool gated = symmetric && torsion_free;
    std::vector<double> ln(opts.lenard_count - 1, 0.0), lu(opts.lenard_count - 1, 0.0);
    for (const auto& m : per_point) {
      for (int k = 0; k + 1 < opts.lenard_count; ++k) {
        ln[k] = std::max(ln[k], m.lenard_normalized[k]);
        lu[k] = std::max(lu[k], m.lenard_unnormalized[k]);
      }
    }
    const bool lenard_ok = max_of(ln) <= tol.lenard;
    if (gated) pass = pass && lenard_ok;
    gates["lenard"] = {{"normalized", vec_json(ln)},
                       {"unnormalized", vec_json(lu)},
                       {"tolerance", tol.lenard},
                       {"gated", gated},
                       {"pass", gated ? lenard_ok : true}};

    const Matrix inv = involution_matrix(sys, points, opts.involution_count);
    const double inv_max = inv.cwiseAbs().maxCoeff();
    const bool inv_ok = inv_max <= tol.involution;
    if (gated) pass = pass && inv_ok;
    gates["involution"] = {{"matrix", matrix_json(inv)},
                           {"max", inv_max},
                           {"tolerance", tol.involution},
                           {"gated", gated},
                           {"pass", gated ? inv_ok : true}};
  }

  Report out;
  out.pass = pass;
  out.json["system"] = system_json(loaded);
  out.json["gates"] = std::move(gates);
  if (has_e) {
    const PhasePoint x = loaded.doc.x0 ? PhasePoint(Eigen::Map<const Vector>(loaded.doc.x0->data(), sys.dim()))
                                       : sys.domain().center();
    out.json["invariants"] = bundle_json(invariant_bundle(sys, x, 2 * n));
  } else {
    out.json["invariants"] = nullptr;
  }
  out.json["drift"] = nullptr;
  ojson meta = meta_json(opts.seed, tol);
  meta["points"] = opts.points;
  out.json["meta"] = std::move(meta);
  out.json["pass"] = pass;
  return out;
}

Report invariants_report(const LoadedSystem& loaded, const std::vector<PhasePoint>& points, const CheckOptions& opts) {
  const HamiltonianSystem& sys = loaded.system;
  sys.require_symmetry();
  std::vector<InvariantBundle> bundles(points.size());
  parallel_for(points.size(), [&](std::size_t i) { bundles[i] = invariant_bundle(sys, points[i], 2 * sys.n()); });

  bool pass = true;
  double worst = 0.0;
  ojson list = ojson::array();
  for (const auto& b : bundles) {
    for (int k = 0; k < sys.n(); ++k) worst = std::max(worst, b.cross_residuals[k] / (1.0 + std::abs(b.l[k])));
    list.push_back(bundle_json(b));
  }
  const bool cross_ok = worst <= opts.tol.cross_formula;
  pass = pass && cross_ok;

  Report out;
  out.pass = pass;
  out.json["system"] = system_json(loaded);
  out.json["gates"] = {{"load", load_gate_json(loaded.gate)},
                       {"cross_formula", {{"max_relative_residual", worst},
                                          {"tolerance", opts.tol.cross_formula},
                                          {"pass", cross_ok}}}};
  out.json["invariants"] = std::move(list);
  out.json["drift"] = nullptr;
  ojson meta = meta_json(opts.seed, opts.tol);
  meta["points"] = static_cast<int>(points.size());
  out.json["meta"] = std::move(meta);
  out.json["pass"] = pass;
  return out;
}

IntegrateRun integrate_report(const LoadedSystem& loaded, const IntegrateOptions& opts) {
  const HamiltonianSystem& sys = loaded.system;
  const int n = sys.n();
  const PhasePoint x0 = opts.x0                ? *opts.x0
                        : loaded.doc.x0        ? PhasePoint(Eigen::Map<const Vector>(loaded.doc.x0->data(), sys.dim()))
                                               : sys.domain().center();

  IntegrateRun run;
  run.columns.push_back({"h", sys.hamiltonian()});
  std::vector<NamedInvariant> tracked;
  if (sys.symmetry()) {
    for (int k = 1; k <= n; ++k) tracked.push_back({"l_" + std::to_string(k), lutzky_field(sys, k)});
    for (int k = 1; k <= n; ++k) tracked.push_back({"mu_" + std::to_string(k), power_trace_field(sys, k)});
    for (int k = 1; k <= n; ++k) tracked.push_back({"lambda_" + std::to_string(k), eigenvalue_field(sys, k)});
  }
  run.columns.insert(run.columns.end(), tracked.begin(), tracked.end());

  run.trajectory = integrate(sys, x0, opts.cfg);
  const DriftReport drift = drift_report(sys, run.trajectory, tracked);

  const bool gate_invariants = loaded.doc.role == SymmetryRole::non_noether;
  bool pass = true;
  ojson entries = ojson::array();
  for (const auto& e : drift.entries) {
    const bool is_energy = e.name == "energy";
    const double limit = is_energy ? opts.tol.energy_drift : opts.tol.drift_relative;
    const bool gated = is_energy || gate_invariants;
    const bool ok = !e.error && e.max_rel_drift <= limit;
    if (gated) pass = pass && ok;
    ojson j;
    j["name"] = e.name;
    j["initial"] = e.initial;
    j["max_abs_drift"] = e.max_abs_drift;
    j["max_rel_drift"] = e.max_rel_drift;
    j["time_of_max"] = e.time_of_max;
    j["error"] = e.error ? ojson(*e.error) : ojson(nullptr);
    j["tolerance"] = limit;
    j["gated"] = gated;
    j["pass"] = gated ? ok : true;
    entries.push_back(std::move(j));
  }

  ojson& out = run.report.json;
  out["system"] = system_json(loaded);
  out["gates"] = {{"load", load_gate_json(loaded.gate)}, {"drift", {{"pass", pass}}}};
  out["invariants"] = sys.symmetry() ? bundle_json(invariant_bundle(sys, x0, 2 * n)) : ojson(nullptr);
  ojson d;
  d["x0"] = vec_json(x0.to_vector());
  d["final"] = vec_json(run.trajectory.points.back().to_vector());
  d["stored_points"] = static_cast<int>(run.trajectory.points.size());
  d["domain_exit_step"] =
      run.trajectory.domain_exit_step ? ojson(*run.trajectory.domain_exit_step) : ojson(nullptr);
  d["entries"] = std::move(entries);
  out["drift"] = std::move(d);
  ojson meta = meta_json(opts.seed, opts.tol);
  meta["dt"] = opts.cfg.dt;
  meta["steps"] = opts.cfg.steps;
  meta["stride"] = opts.cfg.stride;
  out["meta"] = std::move(meta);
  out["pass"] = pass;
  run.report.pass = pass;
  return run;
}

}  // namespace nonnoether
