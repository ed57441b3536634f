// Scenario runner and report emitter for the boundary-relation toolkit.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "monorel/arens.hpp"
#include "monorel/semigroup.hpp"
#include "monorel/systemnode.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace monorel;

namespace {

constexpr const char* kVersion = "1.0.0";

struct CheckRecord {
  std::string check;
  bool pass;
  double measured;
  double tolerance;
};

struct Report {
  std::string name;
  std::uint64_t seed = 0;
  double tol_scale = 1.0;
  std::vector<CheckRecord> records;

  void add(const std::string& check, double measured, double tolerance) {
    records.push_back({check, measured <= tolerance, measured, tolerance});
  }
  void add_flag(const std::string& check, bool pass) {
    records.push_back({check, pass, pass ? 0.0 : 1.0, 0.5});
  }
  bool verdict() const {
    for (const auto& r : records)
      if (!r.pass) return false;
    return true;
  }
};

void write_atomic(const fs::path& path, const std::string& content) {
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary);
    out << content;
  }
  fs::rename(tmp, path);
}

void write_report(const Report& rep, const fs::path& out_dir) {
  json j;
  j["name"] = rep.name;
  j["seed"] = rep.seed;
  j["version"] = kVersion;
  j["tol_scale"] = rep.tol_scale;
  j["verdict"] = rep.verdict() ? "pass" : "fail";
  j["records"] = json::array();
  for (const auto& r : rep.records)
    j["records"].push_back({{"check", r.check},
                            {"pass", r.pass},
                            {"measured", r.measured},
                            {"tolerance", r.tolerance}});
  fs::create_directories(out_dir);
  write_atomic(out_dir / (rep.name + "_report.json"), j.dump(2) + "\n");
}

Complex parse_complex(const json& j) {
  if (!j.is_array() || j.size() != 2)
    throw MalformedScenarioError("complex numbers must be [re, im] pairs");
  return Complex(j[0].get<double>(), j[1].get<double>());
}

Matrix parse_matrix(const json& j, int cols) {
  Matrix m(j.size(), cols);
  int r = 0;
  for (const auto& row : j) {
    if (!row.is_array() || static_cast<int>(row.size()) != cols)
      throw MalformedScenarioError("matrix rows must all have the same length");
    for (int c = 0; c < cols; ++c) m(r, c) = parse_complex(row[c]);
    ++r;
  }
  return m;
}

struct ScenarioConfig {
  std::string name;
  std::string kind;  // trace_system | boundary_relation
  std::optional<TraceSystem> ts;
  std::optional<LinearRelation> h;
  bool expect_reject = false;
  std::optional<EvolutionConfig> evolution;
  std::string initial = "bump";
};

ScenarioConfig load_scenario(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw MalformedScenarioError("cannot open config: " + path.string());
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw MalformedScenarioError(std::string("config parse error: ") + e.what());
  }
  ScenarioConfig cfg;
  cfg.name = j.value("name", path.stem().string());
  cfg.kind = j.value("kind", "");
  cfg.expect_reject = j.value("expect_reject", false);
  if (cfg.kind == "trace_system") {
    if (!j.contains("V") || j.contains("h_basis"))
      throw MalformedScenarioError("trace_system needs V and must not carry h_basis");
    Matrix v = parse_matrix(j["V"], 2).transpose();  // rows are C^2 vectors
    Matrix m = j.contains("M") ? parse_matrix(j["M"], 2) : Matrix(0, 2);
    cfg.ts = make_trace_system(v, m);
  } else if (cfg.kind == "boundary_relation") {
    if (!j.contains("h_basis") || j.contains("V"))
      throw MalformedScenarioError("boundary_relation needs h_basis and must not carry V");
    Matrix span = parse_matrix(j["h_basis"], 4).transpose();
    cfg.h = make_relation(bd_hilbert(), bd_hilbert(), span);
  } else {
    throw MalformedScenarioError("kind must be trace_system or boundary_relation");
  }
  if (j.contains("evolution")) {
    const auto& e = j["evolution"];
    EvolutionConfig ec;
    ec.tau = e.value("tau", 0.01);
    ec.steps = e.value("steps", 100);
    ec.n = e.value("n", 256);
    if (ec.tau <= 0 || ec.steps < 1 || ec.n < 8)
      throw MalformedScenarioError("invalid evolution block");
    cfg.evolution = ec;
    cfg.initial = e.value("initial", "bump");
  }
  return cfg;
}

GridFunction initial_bump(int n) {
  // 16 x^2 (1-x)^2, peak value 1 at x = 1/2, zero endpoint traces.
  return grid_sample(TestFunction1D::polynomial({0, 0, 16, -32, 16}), n);
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void run_evolution(const ScenarioConfig& cfg, const BlockOperator& b,
                   Report& rep, const fs::path& out_dir, double tol_scale) {
  const EvolutionConfig& ec = *cfg.evolution;
  GridFunction u0 = cfg.initial == "zero" ? zero_grid(ec.n) : initial_bump(ec.n);
  GridFunction w0 = zero_grid(ec.n);
  Trajectory traj = evolve(b, ec, u0, w0);

  double worst_growth = 0.0;
  std::ostringstream csv;
  csv << "step,t,energy,energy_ratio\n";
  for (size_t k = 0; k < traj.records.size(); ++k) {
    const auto& r = traj.records[k];
    const double prev = k > 0 ? traj.records[k - 1].energy : r.energy;
    const double ratio = prev > 0 ? r.energy / prev : 1.0;
    if (k > 0) worst_growth = std::max(worst_growth, ratio - 1.0);
    csv << r.step << ',' << format_double(r.t) << ',' << format_double(r.energy)
        << ',' << format_double(ratio) << '\n';
  }
  fs::create_directories(out_dir);
  write_atomic(out_dir / (cfg.name + "_energy.csv"), csv.str());
  rep.add("energy_non_increasing", worst_growth, 1e-3 * tol_scale);
}

int run_scenario(const fs::path& config, const fs::path& out_dir,
                 std::uint64_t seed, double tol_scale) {
  ScenarioConfig cfg = load_scenario(config);
  Report rep;
  rep.name = cfg.name;
  rep.seed = seed;
  rep.tol_scale = tol_scale;

  BlockOperator b = cfg.ts ? forward_h(*cfg.ts) : block_operator_from_h(*cfg.h);
  if (cfg.ts) {
    HypothesisReport hyp = check_hypothesis(*cfg.ts, seed);
    rep.add_flag("hypothesis_valid", hyp.valid);
  }

  bool rejected = false;
  std::optional<TraceSystem> recovered;
  try {
    recovered = reverse_construct(b.h);
  } catch (const NotSelfadjointError&) {
    rejected = true;
  } catch (const NotMaximalMonotoneError&) {
    rejected = true;
  }
  rep.add_flag(cfg.expect_reject ? "reverse_construct_rejected"
                                 : "reverse_construct_admitted",
               rejected == cfg.expect_reject);

  if (recovered && !cfg.expect_reject) {
    rep.add_flag("h_maximal_monotone", is_maximal_monotone(b.h).maximal);
    rep.add_flag("h_selfadjoint", is_selfadjoint(b.h));
    BlockOperator rt = forward_h(*recovered);
    rep.add("round_trip_angle", largest_principal_angle(rt.h.graph, b.h.graph),
            1e-9 * tol_scale);

    // Key identity Re<x|y> = |M xi_x|^2 on random graph samples.
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> dist(0.0, 1.0);
    const Eigen::Matrix2cd p = trace_matrix();
    double worst = 0.0;
    for (int i = 0; i < 50; ++i) {
      CVector c(b.h.graph_dim());
      for (int k = 0; k < c.size(); ++k) c(k) = Complex(dist(rng), dist(rng));
      CVector x = b.h.first_block() * c, y = b.h.second_block() * c;
      const double lhs = (x.adjoint() * bd_hilbert()->gram() * y)(0).real();
      const double rhs = (recovered->m * (p * x)).squaredNorm();
      worst = std::max(worst, std::abs(lhs - rhs) /
                                  std::max(1.0, std::abs(lhs)));
    }
    rep.add("key_identity", worst, 1e-10 * tol_scale);

    // Domain characterizations (i) and (ii) agree, members and not.
    int disagreements = 0;
    for (int i = 0; i < 100; ++i) {
      auto [u, w] = sample_domain_pair(b, rng, i % 5 != 0);
      auto [first, second] = domain_membership(b, recovered, u, w);
      if (first != second) ++disagreements;
    }
    rep.add("domain_agreement_disagreements", disagreements, 0.5);

    if (cfg.evolution) run_evolution(cfg, b, rep, out_dir, tol_scale);
  }

  write_report(rep, out_dir);
  for (const auto& r : rep.records)
    std::cout << (r.pass ? "PASS " : "FAIL ") << r.check << " measured="
              << r.measured << " tol=" << r.tolerance << "\n";
  return rep.verdict() ? 0 : 1;
}

int run_property_suites(const std::vector<int>& dims, int trials,
                        std::uint64_t seed, double tol_scale,
                        const fs::path& out_dir) {
  Report rep;
  rep.name = "property_suites";
  rep.seed = seed;
  rep.tol_scale = tol_scale;

  json offender;
  int minty_disagreements = 0;
  double worst_resolvent = 0.0, worst_involution = 0.0;
  double worst_arens = 0.0, worst_psd = 0.0;
  int idx = 0;
  for (int dim : dims) {
    for (int t = 0; t < trials; ++t, ++idx) {
      const std::uint64_t s = seed + 1000 * idx;
      const RandomKind kind = (t % 2 == 0) ? RandomKind::Operator : RandomKind::Relation;
      LinearRelation c = random_monotone(dim, kind, s);
      try {
        MonotonicityReport mm = is_maximal_monotone(c);
        if (mm.maximal)
          worst_resolvent = std::max(
              worst_resolvent,
              operator_norm(c.src, resolvent_matrix(c, 1.0)) - 1.0);
      } catch (const InconsistencyError&) {
        ++minty_disagreements;
        offender = {{"dim", dim}, {"kind", t % 2}, {"seed", s}};
      }
      worst_involution = std::max(
          worst_involution,
          largest_principal_angle(adjoint(adjoint(c)).graph, c.graph));
      worst_involution = std::max(
          worst_involution,
          largest_principal_angle(inverse(inverse(c)).graph, c.graph));

      LinearRelation sa = random_monotone(dim, RandomKind::Selfadjoint, s);
      ArensDecomposition dec = decompose(sa);
      worst_arens = std::max(
          worst_arens,
          largest_principal_angle(reconstruct(dec).graph, sa.graph));
      if (dec.u_space.dim() > 0) {
        Eigen::SelfAdjointEigenSolver<Matrix> es(dec.s_matrix);
        worst_psd = std::max(worst_psd, -es.eigenvalues().minCoeff());
      }
    }
  }
  rep.add("minty_equivalence_disagreements", minty_disagreements, 0.5);
  rep.add("resolvent_norm_excess", worst_resolvent, 1e-10 * tol_scale);
  rep.add("adjoint_inverse_involution_angle", worst_involution, 1e-10 * tol_scale);
  rep.add("arens_round_trip_angle", worst_arens, 1e-10 * tol_scale);
  rep.add("arens_psd_defect", worst_psd, 1e-12 * tol_scale);
  if (!offender.is_null()) {
    fs::create_directories(out_dir);
    write_atomic(out_dir / "offending_relation.json", offender.dump(2) + "\n");
  }
  write_report(rep, out_dir);
  for (const auto& r : rep.records)
    std::cout << (r.pass ? "PASS " : "FAIL ") << r.check << " measured="
              << r.measured << " tol=" << r.tolerance << "\n";
  return rep.verdict() ? 0 : 1;
}

int run_verify_bd(std::uint64_t seed, double tol_scale, const fs::path& out_dir) {
  Report rep;
  rep.name = "boundary_space";
  rep.seed = seed;
  rep.tol_scale = tol_scale;

  // Gram matrix against the quadrature oracle.
  const TestFunction1D ch = TestFunction1D::cosh_fn(), sh = TestFunction1D::sinh_fn();
  Eigen::Matrix2d oracle;
  oracle << graph_inner(ch, ch).real(), graph_inner(ch, sh).real(),
      graph_inner(sh, ch).real(), graph_inner(sh, sh).real();
  rep.add("gram_vs_quadrature", (bd_gram() - oracle).cwiseAbs().maxCoeff(),
          1e-13 * tol_scale);

  Eigen::Matrix2d j;
  j << 0, 1, 1, 0;
  rep.add("gdot_unitary", (j.transpose() * bd_gram() * j - bd_gram()).cwiseAbs().maxCoeff(),
          1e-14 * tol_scale);

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> dist(0.0, 1.0);
  double worst_adj = 0.0, worst_proj = 0.0;
  for (int i = 0; i < 50; ++i) {
    BDVector x{BoundaryKind::G,
               Eigen::Vector2cd(Complex(dist(rng), dist(rng)), Complex(dist(rng), dist(rng)))};
    BDVector z{BoundaryKind::D,
               Eigen::Vector2cd(Complex(dist(rng), dist(rng)), Complex(dist(rng), dist(rng)))};
    const Complex lhs = apply_gdot(x).coords.adjoint() *
                        (bd_gram().cast<Complex>() * z.coords);
    const Complex rhs = x.coords.adjoint() *
                        (bd_gram().cast<Complex>() * apply_ddot(z).coords);
    worst_adj = std::max(worst_adj, std::abs(lhs - rhs));

    const Complex t0(dist(rng), dist(rng)), t1(dist(rng), dist(rng));
    BDVector pv = project_boundary(BoundaryKind::G, t0, t1);
    worst_proj = std::max(worst_proj,
                          std::abs(boundary_eval(pv, EvalWhat::Value, 0) - t0));
    worst_proj = std::max(worst_proj,
                          std::abs(boundary_eval(pv, EvalWhat::Value, 1) - t1));
  }
  rep.add("gdot_ddot_adjoint", worst_adj, 1e-12 * tol_scale);
  rep.add("projection_traces", worst_proj, 1e-12 * tol_scale);

  write_report(rep, out_dir);
  for (const auto& r : rep.records)
    std::cout << (r.pass ? "PASS " : "FAIL ") << r.check << " measured="
              << r.measured << " tol=" << r.tolerance << "\n";
  return rep.verdict() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Numerical toolkit for maximal monotone boundary relations"};
  app.require_subcommand(1);

  std::uint64_t seed = 42;
  std::string out = ".";
  double tol_scale = 1.0;
  app.add_option("--seed", seed, "random seed")->capture_default_str();
  app.add_option("--out", out, "output directory")->capture_default_str();
  app.add_option("--tol-scale", tol_scale, "global tolerance multiplier")
      ->capture_default_str();

  auto* rel = app.add_subcommand("verify-relations", "relation/Arens property suites");
  int min_dim = 1, max_dim = 6, trials = 200;
  rel->add_option("--min-dim", min_dim)->capture_default_str();
  rel->add_option("--max-dim", max_dim)->capture_default_str();
  rel->add_option("--trials", trials, "trials per dimension")->capture_default_str();

  auto* bd = app.add_subcommand("verify-bd", "1D boundary space checks");

  std::string config;
  auto* sc = app.add_subcommand("scenario", "run one scenario config");
  sc->add_option("--config", config, "scenario JSON")->required();

  auto* ev = app.add_subcommand("evolve", "run the evolution of a scenario");
  ev->add_option("--config", config, "scenario JSON with evolution block")->required();

  auto* cv = app.add_subcommand("convergence", "resolvent grid-convergence study");
  std::vector<int> grids{64, 128, 256};
  double tau = 0.05;
  cv->add_option("--config", config, "scenario JSON")->required();
  cv->add_option("--grids", grids, "grid sizes")->capture_default_str();
  cv->add_option("--tau", tau)->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  try {
    if (rel->parsed()) {
      if (trials < 1 || min_dim < 1 || max_dim > 8 || min_dim > max_dim) {
        std::cerr << "invalid dims/trials\n";
        return 2;
      }
      std::vector<int> dims;
      for (int d = min_dim; d <= max_dim; ++d) dims.push_back(d);
      return run_property_suites(dims, trials, seed, tol_scale, out);
    }
    if (bd->parsed()) return run_verify_bd(seed, tol_scale, out);
    if (sc->parsed() || ev->parsed()) {
      if (ev->parsed()) {
        ScenarioConfig c = load_scenario(config);
        if (!c.evolution) {
          std::cerr << "config has no evolution block\n";
          return 2;
        }
      }
      return run_scenario(config, out, seed, tol_scale);
    }
    if (cv->parsed()) {
      ScenarioConfig c = load_scenario(config);
      BlockOperator b = c.ts ? forward_h(*c.ts) : block_operator_from_h(*c.h);
      const double order = convergence_order(b, tau, grids);
      std::cout << "observed_order " << order << "\n";
      Report rep;
      rep.name = c.name + "_convergence";
      rep.seed = seed;
      rep.tol_scale = tol_scale;
      rep.add("order_deviation", std::abs(order - 2.0), 0.2 * tol_scale);
      write_report(rep, out);
      return rep.verdict() ? 0 : 1;
    }
  } catch (const MalformedScenarioError& e) {
    std::cerr << "malformed scenario: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
