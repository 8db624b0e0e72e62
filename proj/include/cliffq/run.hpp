#pragma once

// One verification run per parameter point, and parallel sweeps over a grid.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <set>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "clifford.hpp"
#include "decomp.hpp"
#include "gram.hpp"
#include "io.hpp"
#include "osp.hpp"
#include "slmn.hpp"

namespace cliffq {

class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class BackendChoice { exact, floating, both };

inline const std::vector<std::string>& all_suites() {
  static const std::vector<std::string> s{"clifford", "gram", "osp", "sl", "decomp"};
  return s;
}

struct RunConfig {
  PointParams point;
  BackendChoice backend = BackendChoice::exact;
  std::set<std::string> suites{all_suites().begin(), all_suites().end()};
  double tolerance = 1e-10;
};

/// Throws UsageError with the reason; admissibility violations keep the
/// explanation from check_admissible.
inline void validate(const RunConfig& c) {
  if (c.point.m < 0 || c.point.n < 0 || c.point.m + c.point.n < 1) throw UsageError("need m, n >= 0 and m + n >= 1");
  try {
    check_admissible(c.point.k, c.point.l);
  } catch (const AdmissibilityError& e) {
    throw UsageError(std::string("inadmissible (k, l): ") + e.what());
  }
  if (!(c.tolerance > 0)) throw UsageError("tolerance must be positive");
  if (c.suites.empty()) throw UsageError("no suites selected");
  for (const auto& s : c.suites)
    if (std::find(all_suites().begin(), all_suites().end(), s) == all_suites().end()) throw UsageError("unknown suite '" + s + "'");
}

inline std::set<std::string> parse_suites(const std::string& text) {
  std::set<std::string> out;
  std::string item;
  for (std::size_t p = 0; p <= text.size(); ++p) {
    if (p == text.size() || text[p] == ',') {
      if (item == "all") {
        out.insert(all_suites().begin(), all_suites().end());
      } else if (!item.empty()) {
        out.insert(item);
      }
      item.clear();
    } else if (text[p] != ' ') {
      item += text[p];
    }
  }
  return out;
}

inline BackendChoice parse_backend(const std::string& s) {
  if (s == "exact") return BackendChoice::exact;
  if (s == "float") return BackendChoice::floating;
  if (s == "both") return BackendChoice::both;
  throw UsageError("backend must be exact, float or both");
}

struct RunResult {
  PointParams point;
  VerificationReport report;
  json extras = json::object();  // positivity, decomposition
  [[nodiscard]] bool ok() const { return report.all_passed(); }
};

namespace detail {

template <class Field>
void run_backend(const RunConfig& c, const FockModule& mod, const Field& F, RunResult& out) {
  const double tol = c.tolerance;
  VerificationReport& rep = out.report;
  const auto raw = build_clifford_raw(mod, F);
  const bool orthonormal = mod.l() == 1;

  if (c.suites.count("clifford")) {
    rep.append(verify_clifford_relations(raw, tol));
    rep.append(check_pair_closed_forms(raw, tol));
    rep.append(verify_q_sum_identities(F, 2 * mod.k(), tol));
    for (int i = 1; i <= mod.m(); ++i)
      for (int p = 1; p <= mod.k() - 1; ++p) rep.append(verify_power_exchange(raw, i, p, tol));
  }
  if (c.suites.count("gram")) {
    const auto gram = build_gram(mod, F);
    rep.append(verify_contravariance(raw, gram, tol));
    if constexpr (Field::is_exact) {
      const auto pos = positivity_analysis(gram);
      out.extras["positivity"] = positivity_json(pos);
      // Positive definite exactly when l = 1; either outcome confirming that passes.
      const bool expected = (mod.l() == 1) == pos.positive_definite;
      std::string note = pos.positive_definite ? "positive definite" : "indefinite";
      if (pos.first_negative) note += ", first negative " + occupation_label(*pos.first_negative);
      VerificationReport d("gram", tol);
      d.check_true("gram.dichotomy", {}, expected, "exact", note);
      rep.append(d);
    } else if (orthonormal) {
      rep.append(orthonormality_check(build_clifford_orthonormal(mod), tol));
    }
  }
  if (c.suites.count("osp") || c.suites.count("sl")) {
    const auto osp = build_osp(raw);
    if (c.suites.count("osp")) {
      rep.append(verify_green_relations(osp, tol));
      rep.append(verify_chevalley_relations(osp, tol));
      rep.append(reconstruct_green(osp, tol));
    }
    if (c.suites.count("sl")) {
      const auto sl = build_sl_chevalley(osp);
      const auto cw = build_cartan_weyl(raw);
      rep.append(verify_sl_chevalley_relations(sl, tol));
      rep.append(verify_sl_embedding(sl, cw, tol));
      rep.append(verify_cartan_weyl_relations(cw, tol));
      if (!Field::is_exact && orthonormal) {
        const auto ladder = build_cartan_weyl_ladder(build_clifford_orthonormal(mod));
        VerificationReport r = verify_cartan_weyl_relations(ladder, tol);
        VerificationReport tagged("sl", tol);
        for (auto e : r.entries()) {
          e.backend = "float-ladder";
          tagged.append_entry(std::move(e));
        }
        rep.append(tagged);
        rep.append(crosscheck_realizations(mod, tol));
      }
    }
  }
  if (c.suites.count("decomp")) {
    rep.append(module_irreducibility(raw));
    const auto d = decompose_sl(build_cartan_weyl(raw));
    rep.append(d.report);
    if constexpr (Field::is_exact) {
      rep.append(structural_irreducibility(raw));
      out.extras["decomposition"] = decomposition_json(d.record);
    } else if (orthonormal) {
      rep.append(crosscheck_orbit_backends(mod));
    }
  }
}

}  // namespace detail

/// Builds field, module and bundles for the requested suites and runs every
/// check. Throws UsageError on an invalid configuration.
inline RunResult run(const RunConfig& c) {
  validate(c);
  const PointParams& p = c.point;
  const FockModule mod = FockModule::quotient(p.m, p.n, p.k, p.l);
  RunResult out{p, VerificationReport("all", c.tolerance), json::object()};
  if (c.backend != BackendChoice::floating) detail::run_backend(c, mod, CyclotomicField(p.k, p.l), out);
  if (c.backend != BackendChoice::exact) detail::run_backend(c, mod, FloatField(p.k, p.l), out);
  out.report.sort();
  return out;
}

inline json run_json(const RunResult& r) {
  json j = report_json(r.point, r.report);
  for (const auto& [key, v] : r.extras.items()) j[key] = v;
  return j;
}

struct SweepRow {
  PointParams point;
  std::string status;  // "pass", "fail" or "usage_error"
  std::string message;
  std::size_t passed = 0;
  std::size_t failed = 0;
  std::vector<CheckEntry> failures;
  json extras = json::object();
  double seconds = 0.0;  // kept out of the report
};

/// Worker count from CLIFFQ_WORKERS (default 1).
inline unsigned worker_count() {
  if (const char* env = std::getenv("CLIFFQ_WORKERS")) {
    const int v = std::atoi(env);
    if (v >= 1) return static_cast<unsigned>(v);
  }
  return 1;
}

/// Runs every point; failures and usage errors become rows without
/// stopping the sweep. Row order follows the grid regardless of scheduling.
inline std::vector<SweepRow> sweep(const std::vector<PointParams>& grid, const RunConfig& base, unsigned workers = worker_count()) {
  std::vector<SweepRow> rows(grid.size());
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t t = next++; t < grid.size(); t = next++) {
      SweepRow& row = rows[t];
      row.point = grid[t];
      RunConfig c = base;
      c.point = grid[t];
      const auto start = std::chrono::steady_clock::now();
      try {
        const RunResult r = run(c);
        row.status = r.ok() ? "pass" : "fail";
        row.passed = r.report.passed();
        row.failed = r.report.failed();
        row.failures = r.report.failures();
        row.extras = r.extras;
      } catch (const UsageError& e) {
        row.status = "usage_error";
        row.message = e.what();
      } catch (const std::exception& e) {
        row.status = "fail";
        row.message = e.what();
      }
      row.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    }
  };
  workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(std::max<std::size_t>(grid.size(), 1))));
  std::vector<std::thread> pool;
  for (unsigned w = 1; w < workers; ++w) pool.emplace_back(work);
  work();
  for (auto& th : pool) th.join();
  return rows;
}

/// Usage errors count as neither pass nor fail of a check; the sweep fails
/// only on check failures.
inline bool sweep_ok(const std::vector<SweepRow>& rows) {
  return std::none_of(rows.begin(), rows.end(), [](const SweepRow& r) { return r.status == "fail"; });
}

inline json sweep_json(const std::vector<SweepRow>& rows) {
  json arr = json::array();
  std::size_t pass = 0, fail = 0, usage = 0;
  for (const auto& r : rows) {
    json row = {{"m", r.point.m}, {"n", r.point.n}, {"k", r.point.k}, {"l", r.point.l}, {"status", r.status}};
    if (r.status == "usage_error") {
      row["error"] = r.message;
      ++usage;
    } else {
      row["passed"] = r.passed;
      row["failed"] = r.failed;
      if (!r.message.empty()) row["error"] = r.message;
      json f = json::array();
      for (const auto& e : r.failures) f.push_back(entry_json(e));
      row["failures"] = std::move(f);
      for (const auto& [key, v] : r.extras.items()) row[key] = v;
      (r.status == "pass" ? pass : fail)++;
    }
    arr.push_back(std::move(row));
  }
  return {{"schema", schema_version}, {"rows", std::move(arr)},
          {"summary", {{"points", rows.size()}, {"pass", pass}, {"fail", fail}, {"usage_error", usage}}}};
}

inline std::string sweep_csv(const std::vector<SweepRow>& rows) {
  std::string out = "m,n,k,l,status,passed,failed,error\n";
  for (const auto& r : rows)
    out += std::to_string(r.point.m) + "," + std::to_string(r.point.n) + "," + std::to_string(r.point.k) + "," + std::to_string(r.point.l) +
           "," + r.status + "," + std::to_string(r.passed) + "," + std::to_string(r.failed) + "," + csv_quote(r.message) + "\n";
  return out;
}

/// "m,n,k,l;m,n,k,l;..." (whitespace ignored).
inline std::vector<PointParams> parse_grid(const std::string& text) {
  std::vector<PointParams> out;
  std::string cleaned;
  for (char ch : text)
    if (ch != ' ' && ch != '\n' && ch != '\t' && ch != '(' && ch != ')') cleaned += ch;
  std::size_t start = 0;
  while (start < cleaned.size()) {
    std::size_t end = cleaned.find(';', start);
    if (end == std::string::npos) end = cleaned.size();
    const std::string item = cleaned.substr(start, end - start);
    start = end + 1;
    if (item.empty()) continue;
    int v[4];
    char tail = 0;
    if (std::sscanf(item.c_str(), "%d,%d,%d,%d%c", &v[0], &v[1], &v[2], &v[3], &tail) != 4)
      throw UsageError("grid point '" + item + "' is not m,n,k,l");
    out.push_back({v[0], v[1], v[2], v[3]});
  }
  return out;
}

}  // namespace cliffq
