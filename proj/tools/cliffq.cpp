// Command-line front end: build, verify, decompose, sweep, export, import.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "cliffq/cliffq.hpp"

using namespace cliffq;

namespace {

constexpr int exit_ok = 0;
constexpr int exit_check_failed = 1;
constexpr int exit_usage = 2;

const char* default_grid = "1,1,2,1; 2,1,3,1; 1,2,3,1; 2,2,2,1; 1,1,5,2; 1,0,4,3; 0,2,2,1";

struct Options {
  int m = 1, n = 1, k = 2, l = 1;
  std::string backend = "exact";
  std::string suites = "all";
  double tolerance = 1e-10;
  std::string format = "json";
  std::string output;
  std::string grid = default_grid;
  std::string timing;
  std::string basis = "raw";
  std::string input;
  bool check_params = false;
};

RunConfig config_from(const Options& o) {
  RunConfig c;
  c.point = {o.m, o.n, o.k, o.l};
  c.backend = parse_backend(o.backend);
  c.suites = parse_suites(o.suites);
  c.tolerance = o.tolerance;
  return c;
}

void emit(const Options& o, const std::string& text) {
  if (o.output.empty() || o.output == "-") {
    std::cout << text;
    return;
  }
  std::ofstream f(o.output, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open " + o.output + " for writing");
  f << text;
  if (!f) throw std::runtime_error("write to " + o.output + " failed");
}

void require_format(const Options& o) {
  if (o.format != "json" && o.format != "csv") throw UsageError("format must be json or csv");
}

int do_build(const Options& o) {
  const RunConfig c = config_from(o);
  validate(c);
  const FockModule mod = FockModule::quotient(o.m, o.n, o.k, o.l);
  const Backend be = o.backend == "float" ? Backend::floating : Backend::exact;
  const BasisKind bk = o.basis == "orthonormal" ? BasisKind::orthonormal : BasisKind::raw;
  const AnyBundle any = build_clifford(mod, be, bk);
  json gens = json::array();
  std::visit(
      [&](const auto& b) {
        for (int i = 1; i <= b.modes(); ++i)
          for (int s : {+1, -1})
            gens.push_back({{"name", std::string(s > 0 ? "c+" : "c-") + std::to_string(i)},
                            {"parity", to_int(*b.c(s, i).parity())},
                            {"nnz", b.c(s, i).nnz()}});
      },
      any);
  json out = {{"schema", schema_version}, {"provenance", provenance_json(c.point)}, {"dim", mod.dim()},
              {"backend", to_string(be)}, {"basis", to_string(bk)}, {"generators", gens}};
  emit(o, out.dump(2) + "\n");
  return exit_ok;
}

int do_verify(const Options& o) {
  require_format(o);
  const RunResult r = run(config_from(o));
  emit(o, o.format == "csv" ? report_csv(r.point, r.report) : run_json(r).dump(2) + "\n");
  for (const auto& e : r.report.failures()) std::cerr << "FAILED " << e.id() << " [" << e.backend << "] residual " << e.residual << "\n";
  return r.ok() ? exit_ok : exit_check_failed;
}

int do_decompose(const Options& o) {
  const RunConfig c = config_from(o);
  validate(c);
  const FockModule mod = FockModule::quotient(o.m, o.n, o.k, o.l);
  const auto d = decompose_sl(build_cartan_weyl(build_clifford_raw(mod, CyclotomicField(o.k, o.l))));
  json out = decomposition_json(d.record);
  out["summary"] = summary_json(d.report);
  emit(o, out.dump(2) + "\n");
  return d.report.all_passed() ? exit_ok : exit_check_failed;
}

int do_sweep(const Options& o) {
  require_format(o);
  RunConfig base = config_from(o);
  const auto grid = parse_grid(o.grid);
  const auto rows = sweep(grid, base);
  emit(o, o.format == "csv" ? sweep_csv(rows) : sweep_json(rows).dump(2) + "\n");
  // wall times go to their own stream so the report stays reproducible
  std::ostringstream timing;
  for (const auto& r : rows)
    timing << r.point.m << ',' << r.point.n << ',' << r.point.k << ',' << r.point.l << ',' << r.seconds << '\n';
  if (!o.timing.empty()) {
    std::ofstream f(o.timing);
    f << "m,n,k,l,seconds\n" << timing.str();
  } else {
    std::cerr << "timing (m,n,k,l,seconds)\n" << timing.str();
  }
  return sweep_ok(rows) ? exit_ok : exit_check_failed;
}

int do_export(const Options& o) {
  const RunConfig c = config_from(o);
  validate(c);
  const FockModule mod = FockModule::quotient(o.m, o.n, o.k, o.l);
  const Backend be = o.backend == "float" ? Backend::floating : Backend::exact;
  const BasisKind bk = o.basis == "orthonormal" ? BasisKind::orthonormal : BasisKind::raw;
  const AnyBundle any = build_clifford(mod, be, bk);
  std::visit([&](const auto& b) { emit(o, export_bundle(b).dump() + "\n"); }, any);
  return exit_ok;
}

int do_import(const Options& o) {
  if (o.input.empty()) throw UsageError("import needs --input");
  std::ifstream f(o.input);
  if (!f) throw std::runtime_error("cannot open " + o.input);
  json doc;
  try {
    doc = json::parse(f);
  } catch (const json::exception& e) {
    throw SchemaError(std::string("not valid JSON: ") + e.what());
  }
  std::optional<PointParams> expected;
  if (o.check_params) expected = PointParams{o.m, o.n, o.k, o.l};
  const AnyBundle any = import_bundle(doc, expected);
  return std::visit(
      [&](const auto& b) {
        const VerificationReport rep = verify_clifford_relations(b, o.tolerance);
        const PointParams p{b.module.m(), b.module.n(), b.module.k(), b.module.l()};
        json out = report_json(p, rep);
        out["basis"] = to_string(b.basis);
        emit(o, out.dump(2) + "\n");
        return rep.all_passed() ? exit_ok : exit_check_failed;
      },
      any);
}

void add_point_options(CLI::App* app, Options& o) {
  app->add_option("--m", o.m, "number of bosonic modes");
  app->add_option("--n", o.n, "number of fermionic modes");
  app->add_option("--k", o.k, "root of unity order, q = exp(i pi l / k)");
  app->add_option("--l", o.l, "numerator, coprime to k");
  app->add_option("--backend", o.backend, "exact | float | both");
  app->add_option("--tolerance", o.tolerance, "float residual tolerance");
  app->add_option("--output,-o", o.output, "output file (default stdout)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Root-of-unity Fock representations: build, verify and decompose"};
  app.set_config("--config", "", "key = value file mirroring the flags; flags win");
  app.require_subcommand(1);
  Options o;

  add_point_options(&app, o);
  app.add_option("--suites", o.suites, "comma list of clifford,gram,osp,sl,decomp or all");
  app.add_option("--format", o.format, "json | csv");
  app.add_option("--basis", o.basis, "raw | orthonormal (build, export)");
  app.add_option("--grid", o.grid, "sweep points as m,n,k,l;m,n,k,l;...");
  app.add_option("--timing", o.timing, "sweep: file for per-point wall times (default stderr)");
  app.add_option("--input,-i", o.input, "import: file written by export");
  app.add_flag("--check-params", o.check_params, "import: reject files whose (m,n,k,l) differ from the flags");

  auto* build = app.add_subcommand("build", "build the generator matrices and summarize them");
  auto* verify = app.add_subcommand("verify", "run the verification suites at one point");
  auto* decompose = app.add_subcommand("decompose", "grade decomposition under the sl action");
  auto* sweep_cmd = app.add_subcommand("sweep", "verify every point of a grid");
  auto* export_cmd = app.add_subcommand("export", "write the Clifford generator matrices");
  auto* import_cmd = app.add_subcommand("import", "read exported matrices and re-verify them");
  for (auto* sub : {build, verify, decompose, sweep_cmd, export_cmd, import_cmd}) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? exit_ok : exit_usage;
  }

  try {
    if (*build) return do_build(o);
    if (*verify) return do_verify(o);
    if (*decompose) return do_decompose(o);
    if (*sweep_cmd) return do_sweep(o);
    if (*export_cmd) return do_export(o);
    if (*import_cmd) return do_import(o);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return exit_usage;
  } catch (const AdmissibilityError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return exit_usage;
  } catch (const SchemaError& e) {
    std::cerr << "import error: " << e.what() << "\n";
    return exit_usage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_check_failed;
  }
  return exit_usage;
}
