#pragma once

// Batch front end: count, verify, ybe, enumerate, partition.
// Exit codes: 0 ok / all pass, 1 verification failure, 2 usage or input error.

#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "latticeforms/latticeforms.hpp"
#include "latticeforms/json_io.hpp"
#include "latticeforms/suites.hpp"

namespace latticeforms::cli {

enum ExitCode : int { kOk = 0, kFailure = 1, kUsage = 2 };

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Small counts stay JSON numbers; anything past int64 becomes a decimal string.
inline Json count_json(const BigInt& v) {
  if (v.fits_slong_p()) return v.get_si();
  return v.get_str();
}

inline void flatten_csv(const Json& j, const std::string& prefix, std::vector<std::pair<std::string, std::string>>& rows) {
  if (j.is_object()) {
    for (auto it = j.begin(); it != j.end(); ++it)
      flatten_csv(it.value(), prefix.empty() ? it.key() : prefix + "." + it.key(), rows);
  } else if (j.is_array()) {
    for (std::size_t k = 0; k < j.size(); ++k) flatten_csv(j[k], prefix + "." + std::to_string(k), rows);
  } else {
    rows.emplace_back(prefix, j.is_string() ? j.get<std::string>() : j.dump());
  }
}

/// JSON is pretty-printed; CSV is a two-column key,value table with dotted paths.
inline void emit(std::ostream& out, const Json& j, const std::string& format) {
  if (format == "csv") {
    std::vector<std::pair<std::string, std::string>> rows;
    flatten_csv(j, "", rows);
    out << "key,value\n";
    for (const auto& [k, v] : rows) {
      const bool quote = v.find_first_of(",\"\n") != std::string::npos;
      if (!quote) {
        out << k << ',' << v << '\n';
        continue;
      }
      std::string esc;
      for (char c : v) esc += c == '"' ? std::string("\"\"") : std::string(1, c);
      out << k << ",\"" << esc << "\"\n";
    }
  } else {
    out << j.dump(2) << '\n';
  }
}

struct Common {
  int m = 2, n = 2;
  std::string format = "json";
  bool force = false;
  std::uint64_t seed = 0;
  std::size_t samples = 1000;

  SizeGuard guard() const { return {26.0, force}; }
};

inline void add_shape(CLI::App* app, Common& c) {
  app->add_option("--m", c.m, "columns of vertices (>= 2)")->required();
  app->add_option("--n", c.n, "rows of vertices (>= 2)")->required();
}

inline void add_format(CLI::App* app, Common& c) {
  app->add_option("--format", c.format, "output format")->check(CLI::IsMember({"json", "csv"}));
}

inline BoundarySpec load_boundary(const std::string& path, GridShape shape) {
  auto b = boundary_from_json(read_json_file(path));
  if (b.shape != shape)
    throw ParseError(path + ": boundary is for " + std::to_string(b.shape.m()) + "x" + std::to_string(b.shape.n()) +
                     " but --m/--n give " + std::to_string(shape.m()) + "x" + std::to_string(shape.n()));
  return b;
}

// ---- count -----------------------------------------------------------------------

inline int cmd_count(const Common& c, const std::string& model, const std::string& boundary_path, bool check_colorings,
                     bool oracle, std::ostream& out) {
  Json rep{{"model", model}, {"m", c.m}, {"n", c.n}};
  bool ok = true;
  if (model == "toroidal") {
    const TorusShape shape(c.m, c.n);
    rep["states"] = enumerate_toroidal_six(shape, c.guard()).size();
    emit(out, rep, c.format);
    return kOk;
  }
  const GridShape shape(c.m, c.n);
  std::optional<BoundarySpec> boundary;
  if (!boundary_path.empty()) boundary = load_boundary(boundary_path, shape);

  if (model == "six") {
    if (boundary) {
      std::uint64_t n = 0;
      for_each_six_vertex_state(shape, [&](const LatticeState& s) { n += has_boundary(s, *boundary) ? 1 : 0; }, c.guard());
      rep["count"] = n;
    } else {
      const auto states = count_six(shape, c.guard());
      rep["states"] = states;
      if (check_colorings) {
        const auto col = count_colorings(static_cast<std::size_t>(c.m + 1), static_cast<std::size_t>(c.n + 1), c.guard());
        rep["colorings"] = col;
        rep["match"] = 3 * states == col;
        ok = 3 * states == col;
      }
    }
  } else {
    if (boundary) {
      const auto count = count_with_boundary(*boundary);
      rep["parity"] = boundary_parity(*boundary).value();
      rep["count"] = count_json(count);
      if (oracle) {
        const auto brute = enumerate_eight(shape, boundary, EnumerationStrategy::brute_force, c.guard()).size();
        rep["brute_force"] = brute;
        rep["match"] = count == BigInt(static_cast<unsigned long>(brute));
        ok = rep["match"].get<bool>();
      }
    } else {
      const auto total = count_total(shape);
      rep["total"] = count_json(total);
      rep["valid_boundaries"] = count_json(count_valid_boundaries(shape));
      rep["per_valid_boundary"] = count_json(pow2(static_cast<unsigned long>((c.m - 1) * (c.n - 1))));
      if (oracle) {
        const auto brute = enumerate_eight(shape, std::nullopt, EnumerationStrategy::brute_force, c.guard()).size();
        rep["brute_force"] = brute;
        rep["match"] = total == BigInt(static_cast<unsigned long>(brute));
        ok = rep["match"].get<bool>();
      }
    }
  }
  emit(out, rep, c.format);
  return ok ? kOk : kFailure;
}

// ---- verify ----------------------------------------------------------------------

inline int cmd_verify_state(const Common& c, const std::string& path, const std::string& model, std::ostream& out) {
  const auto s = state_from_json(read_json_file(path));
  Json rep{{"m", s.shape().m()}, {"n", s.shape().n()}, {"model", model}};
  bool admissible = false;
  if (model == "eight") {
    if (s.field() != FieldTag::F2) throw ParseError(path + ": eight-vertex states must use field F2");
    admissible = is_admissible_eight(s);
  } else {
    for (auto v : s.edges())
      if (v > 1) throw ParseError(path + ": six-vertex states carry labels 0 and 1 only");
    admissible = is_admissible_six(s);
  }
  rep["admissible"] = admissible;
  rep["toroidal_boundary"] = has_toroidal_boundary(s);
  if (!admissible) {
    Json bad = Json::array();
    for (int i = 1; i <= s.shape().m(); ++i)
      for (int j = 1; j <= s.shape().n(); ++j) {
        const auto e = edges_at_vertex(s, i, j);
        const bool vertex_ok =
            model == "eight" ? (e.left + e.top + e.right + e.bottom) % 2 == 0 : e.right + e.bottom == e.left + e.top;
        if (!vertex_ok) bad.push_back(Json{{"i", i}, {"j", j}, {"left", e.left}, {"top", e.top}, {"right", e.right}, {"bottom", e.bottom}});
      }
    rep["counterexample"] = Json{{"bad_vertices", bad}};
  }
  emit(out, rep, c.format);
  return admissible ? kOk : kFailure;
}

inline int cmd_verify(const Common& c, const std::string& suite, const std::string& mode, std::ostream& out) {
  SuiteOptions opt;
  opt.seed = c.seed;
  opt.samples = c.samples;
  opt.guard = c.guard();
  if (mode == "exhaustive") opt.mode = SuiteOptions::Mode::exhaustive;
  if (mode == "random") opt.mode = SuiteOptions::Mode::random;

  std::vector<std::string> names;
  if (suite == "all")
    names = {"boundary-law", "bijection", "cohomology", "construct", "counting", "defect-rank", "poincare", "sparse-fibers"};
  else
    names = {suite};

  Json results = Json::array();
  bool pass = true;
  for (const auto& name : names) {
    SuiteResult r;
    const GridShape shape(c.m, c.n);
    if (name == "poincare") r = suite_poincare(shape, opt);
    else if (name == "bijection") r = suite_bijection(shape, opt);
    else if (name == "counting") r = suite_counting(shape, opt);
    else if (name == "cohomology") r = suite_cohomology(TorusShape(c.m, c.n), opt);
    else if (name == "sparse-fibers") r = suite_sparse_fibers(TorusShape(c.m, c.n), opt);
    else if (name == "defect-rank") r = suite_defect_rank(shape, opt);
    else if (name == "boundary-law") r = suite_boundary_law(shape, opt);
    else if (name == "construct") r = suite_construct(shape, opt);
    else throw UsageError("unknown suite '" + name + "'");
    pass = pass && r.pass;
    Json j = to_json(r);
    j["m"] = c.m;
    j["n"] = c.n;
    if (name == "cohomology" || name == "poincare" || name == "bijection") j["seed"] = c.seed;
    results.push_back(j);
  }
  emit(out, names.size() == 1 ? results[0] : Json{{"pass", pass}, {"suites", results}}, c.format);
  return pass ? kOk : kFailure;
}

// ---- ybe -------------------------------------------------------------------------

inline VertexWeights load_weights(const std::string& path, const char* flag) {
  if (path.empty()) throw UsageError(std::string(flag) + " is required");
  return weights_from_json(read_json_file(path));
}

inline Json residual_list(const std::array<Rational, 64>& res) {
  Json out = Json::array();
  for (unsigned k = 0; k < 64; ++k) {
    const auto x = BoundaryHex::from_index(k);
    out.push_back(Json{{"sigma", x.sigma}, {"tau", x.tau}, {"beta", x.beta}, {"theta", x.theta},
                       {"rho", x.rho}, {"alpha", x.alpha}, {"residual", to_string(res[k])}});
  }
  return out;
}

inline int cmd_ybe(const Common& c, const std::string& action, const std::string& rp, const std::string& sp,
                   const std::string& tp, int scan_bound, std::ostream& out) {
  if (action == "check" || action == "residuals") {
    const auto R = load_weights(rp, "--r"), S = load_weights(sp, "--s"), T = load_weights(tp, "--t");
    const bool comm_zero = yb_commutator(R, S, T).is_zero();
    const auto st = star_triangle_residuals(R, S, T);
    const auto r28 = residuals28(R, S, T);
    bool st_zero = true, r28_zero = true;
    for (const auto& x : st) st_zero = st_zero && sgn(x) == 0;
    for (const auto& x : r28) r28_zero = r28_zero && sgn(x) == 0;
    const bool consistent = comm_zero == st_zero && st_zero == r28_zero;
    Json rep{{"commutator_zero", comm_zero}, {"star_triangle_zero", st_zero}, {"residuals28_zero", r28_zero},
             {"consistent", consistent}};
    Json nz = Json::array();
    for (std::size_t k = 0; k < 28; ++k)
      if (sgn(r28[k]) != 0) nz.push_back(k);
    rep["nonzero_residuals28"] = nz;
    if (action == "residuals") {
      rep["star_triangle"] = residual_list(st);
      const auto labels = residual28_labels();
      Json list = Json::array();
      for (std::size_t k = 0; k < 28; ++k)
        list.push_back(Json{{"index", k}, {"equation", labels[k]}, {"residual", to_string(r28[k])}});
      rep["residuals28"] = list;
    }
    emit(out, rep, c.format);
    return consistent ? kOk : kFailure;
  }
  const auto S = load_weights(sp, "--s"), T = load_weights(tp, "--t");
  if (action == "conditions") {
    emit(out, to_json(check_necessary_conditions(S, T)), c.format);
    return kOk;
  }
  if (action == "solve") {
    const auto rep = solve_R(S, T, scan_bound);
    Json basis = Json::array();
    bool verified = true;
    for (const auto& b : rep.basis) {
      basis.push_back(to_json(b));
      verified = verified && yb_commutator(b, S, T).is_zero();
    }
    Json j{{"dimension", rep.basis.size()}, {"basis", basis}, {"basis_verified", verified},
           {"scan_bound", rep.scan_bound}, {"combinations_scanned", rep.combinations_scanned}};
    if (rep.nonzero_cd_witness) {
      const bool ok = yb_commutator(*rep.nonzero_cd_witness, S, T).is_zero();
      verified = verified && ok;
      j["nonzero_cd_witness"] = to_json(*rep.nonzero_cd_witness);
      j["witness_verified"] = ok;
    } else {
      j["nonzero_cd_witness"] = "none found in scan";
    }
    emit(out, j, c.format);
    return verified ? kOk : kFailure;
  }
  throw UsageError("unknown ybe action '" + action + "'");
}

// ---- enumerate / partition --------------------------------------------------------

inline int cmd_enumerate(const Common& c, const std::string& model, const std::string& boundary_path,
                         const std::string& strategy, std::ostream& out) {
  std::vector<LatticeState> states;
  std::optional<BoundarySpec> boundary;
  if (model == "toroidal") {
    if (!boundary_path.empty()) throw UsageError("--boundary does not apply to toroidal enumeration");
    states = enumerate_toroidal_six(TorusShape(c.m, c.n), c.guard());
  } else {
    const GridShape shape(c.m, c.n);
    if (!boundary_path.empty()) boundary = load_boundary(boundary_path, shape);
    if (model == "six") {
      for_each_six_vertex_state(
          shape, [&](const LatticeState& s) { if (!boundary || has_boundary(s, *boundary)) states.push_back(s); },
          c.guard());
    } else {
      const auto strat = strategy == "brute" ? EnumerationStrategy::brute_force : EnumerationStrategy::kernel;
      states = enumerate_eight(shape, boundary, strat, c.guard());
    }
  }
  Json list = Json::array();
  for (const auto& s : states) list.push_back(to_json(s));
  Json rep{{"shape", {{"m", c.m}, {"n", c.n}}}, {"model", model},
           {"boundary", boundary ? to_json(*boundary) : Json(nullptr)}, {"count", states.size()}, {"states", list}};
  emit(out, rep, c.format);
  return kOk;
}

inline int cmd_partition(const Common& c, const std::string& model, const std::string& weights_path,
                         const std::string& boundary_path, std::ostream& out) {
  const GridShape shape(c.m, c.n);
  const auto w = load_weights(weights_path, "--weights");
  std::optional<BoundarySpec> boundary;
  if (!boundary_path.empty()) boundary = load_boundary(boundary_path, shape);
  const auto z = partition_function(w, shape, model == "six" ? VertexModel::six : VertexModel::eight, boundary, c.guard());
  emit(out, Json{{"model", model}, {"m", c.m}, {"n", c.n}, {"boundary", boundary ? to_json(*boundary) : Json(nullptr)},
                 {"weights", to_json(w)}, {"Z", to_string(z)}},
       c.format);
  return kOk;
}

// ---- dispatcher ------------------------------------------------------------------

inline int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact six- and eight-vertex lattice model toolkit", "latticeforms"};
  app.require_subcommand(1);
  Common c;

  std::string model, boundary, mode = "auto", strategy = "kernel", suite, action, in_path, rp, sp, tp, weights;
  bool check_colorings = false, oracle = false;
  int scan_bound = 2;

  auto* count = app.add_subcommand("count", "count admissible states");
  count->add_option("--model", model)->required()->check(CLI::IsMember({"six", "eight", "toroidal"}));
  add_shape(count, c);
  count->add_option("--boundary", boundary, "boundary JSON file");
  count->add_flag("--check-colorings", check_colorings, "also count 3-colourings of the dual grid");
  count->add_flag("--oracle", oracle, "cross-check against brute force");
  count->add_flag("--force", c.force, "lift the 2^26 size guard");
  add_format(count, c);

  auto* verify = app.add_subcommand("verify", "run a property suite");
  verify->add_option("suite", suite, "poincare|bijection|counting|cohomology|sparse-fibers|defect-rank|boundary-law|construct|state|all")
      ->required()
      ->check(CLI::IsMember({"poincare", "bijection", "counting", "cohomology", "sparse-fibers", "defect-rank",
                             "boundary-law", "construct", "state", "all"}));
  verify->add_option("--m", c.m);
  verify->add_option("--n", c.n);
  verify->add_option("--in", in_path, "state JSON (for `verify state`)");
  verify->add_option("--model", model, "six|eight (for `verify state`)")->check(CLI::IsMember({"six", "eight"}));
  verify->add_option("--seed", c.seed);
  verify->add_option("--samples", c.samples);
  verify->add_option("--mode", mode)->check(CLI::IsMember({"auto", "exhaustive", "random"}));
  verify->add_flag("--force", c.force);
  add_format(verify, c);

  auto* ybe = app.add_subcommand("ybe", "Yang-Baxter analysis");
  ybe->add_option("action", action, "check|residuals|conditions|solve")
      ->required()
      ->check(CLI::IsMember({"check", "residuals", "conditions", "solve"}));
  ybe->add_option("--r", rp, "weights JSON for R");
  ybe->add_option("--s", sp, "weights JSON for S");
  ybe->add_option("--t", tp, "weights JSON for T");
  ybe->add_option("--scan-bound", scan_bound, "coefficient bound for the nonzero-c,d scan")->check(CLI::Range(1, 5));
  add_format(ybe, c);

  auto* enumerate = app.add_subcommand("enumerate", "list admissible states");
  enumerate->add_option("--model", model)->required()->check(CLI::IsMember({"six", "eight", "toroidal"}));
  add_shape(enumerate, c);
  enumerate->add_option("--boundary", boundary);
  enumerate->add_option("--strategy", strategy)->check(CLI::IsMember({"kernel", "brute"}));
  enumerate->add_flag("--force", c.force);
  add_format(enumerate, c);

  auto* partition = app.add_subcommand("partition", "exact partition function");
  partition->add_option("--model", model)->required()->check(CLI::IsMember({"six", "eight"}));
  add_shape(partition, c);
  partition->add_option("--weights", weights)->required();
  partition->add_option("--boundary", boundary);
  partition->add_flag("--force", c.force);
  add_format(partition, c);

  std::vector<std::string> argv_store{"latticeforms"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& a : argv_store) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }

  try {
    if (count->parsed()) return cmd_count(c, model, boundary, check_colorings, oracle, out);
    if (verify->parsed()) {
      if (suite == "state") {
        if (in_path.empty()) throw UsageError("verify state needs --in");
        return cmd_verify_state(c, in_path, model.empty() ? "six" : model, out);
      }
      return cmd_verify(c, suite, mode, out);
    }
    if (ybe->parsed()) return cmd_ybe(c, action, rp, sp, tp, scan_bound, out);
    if (enumerate->parsed()) return cmd_enumerate(c, model, boundary, strategy, out);
    if (partition->parsed()) return cmd_partition(c, model, weights, boundary, out);
  } catch (const ParseError& e) {
    err << "input error: " << e.what() << '\n';
    return kUsage;
  } catch (const SizeGuardError& e) {
    err << "size guard: " << e.what() << '\n';
    return kUsage;
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::invalid_argument& e) {
    err << "invalid input: " << e.what() << '\n';
    return kUsage;
  } catch (const std::domain_error& e) {
    err << "precondition not met: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}

}  // namespace latticeforms::cli
