#include "cubescore/cli.hpp"

#include <chrono>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <sstream>

#include <CLI11.hpp>

#include "cubescore/constructors.hpp"
#include "cubescore/errors.hpp"
#include "cubescore/matrix_io.hpp"
#include "cubescore/permanent.hpp"
#include "cubescore/report_json.hpp"
#include "cubescore/score.hpp"
#include "cubescore/structure.hpp"

namespace cubescore::cli {

namespace {

struct GlobalOptions {
  double tol = 1e-9;
  std::uint64_t seed = 0;
  unsigned threads = 1;
  bool pretty = false;
};

/// What a subcommand hands back: the report, its echoed inputs, and whether
/// the seed influenced the result.
struct Outcome {
  Json report;
  Json inputs = Json::object();
  bool seeded = false;
};

template <class T>
std::vector<T> parse_list(const std::string& text, const char* what) {
  std::vector<T> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::istringstream is(item);
    T v{};
    if (!(is >> v) || !(is >> std::ws).eof()) throw PreconditionError(std::string("bad entry '") + item + "' in " + what);
    out.push_back(v);
  }
  return out;
}

Mode parse_mode(const std::string& s) {
  if (s == "exact") return Mode::exact;
  if (s == "mc" || s == "monte_carlo") return Mode::monte_carlo;
  throw PreconditionError("mode must be exact or mc");
}

/// "col:sign" per row, '-' for an empty row.
std::vector<std::optional<SignedEntry>> parse_assignment(const std::string& text) {
  std::vector<std::optional<SignedEntry>> out;
  if (text.empty()) return out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item == "-") {
      out.emplace_back();
      continue;
    }
    const auto colon = item.find(':');
    if (colon == std::string::npos) throw PreconditionError("selector entries must be col:sign or '-'");
    const auto col = parse_list<std::size_t>(item.substr(0, colon), "selector column");
    const auto sign = parse_list<int>(item.substr(colon + 1), "selector sign");
    if (col.size() != 1 || sign.size() != 1) throw PreconditionError("selector entries must be col:sign or '-'");
    out.push_back(SignedEntry{col[0], sign[0]});
  }
  return out;
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw PreconditionError("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw PreconditionError("invalid JSON in " + path + ": " + e.what());
  }
}

void flatten(const Json& j, const std::string& prefix, std::vector<std::pair<std::string, std::string>>& rows) {
  if (j.is_object()) {
    for (auto it = j.begin(); it != j.end(); ++it) flatten(it.value(), prefix.empty() ? it.key() : prefix + "." + it.key(), rows);
  } else if (j.is_array() && !j.empty() && (j.front().is_object() || j.front().is_array())) {
    for (std::size_t i = 0; i < j.size(); ++i) flatten(j[i], prefix + "[" + std::to_string(i) + "]", rows);
  } else {
    rows.emplace_back(prefix, j.dump());
  }
}

void render_pretty(const Json& result, std::ostream& out) {
  std::vector<std::pair<std::string, std::string>> rows;
  flatten(result, "", rows);
  std::size_t width = 0;
  for (const auto& [k, v] : rows) width = std::max(width, k.size());
  for (const auto& [k, v] : rows) out << k << std::string(width - k.size() + 2, ' ') << v << '\n';
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Hypercube score, permanent and structure analysis", "cubescore"};
  app.fallthrough();
  app.require_subcommand(1);

  GlobalOptions g;
  app.add_option("--tol", g.tol, "hypercube membership / grouping tolerance")->capture_default_str();
  app.add_option("--seed", g.seed, "seed for every randomized step")->capture_default_str();
  app.add_option("--threads", g.threads, "worker threads (0 = all cores); never changes results")->capture_default_str();
  app.add_flag("--pretty", g.pretty, "render a key/value table instead of JSON");

  std::string matrix_path;
  std::uint64_t samples = 100000;
  std::string mode = "exact";
  double theta = 0.5;
  std::map<std::string, std::function<Outcome()>> handlers;

  auto add_matrix = [&](CLI::App* sub) { sub->add_option("--matrix", matrix_path, "matrix file")->required(); };

  // score-exact
  {
    auto* sub = app.add_subcommand("score-exact", "exact s0(M) by Gray-code enumeration");
    add_matrix(sub);
    handlers["score-exact"] = [&] {
      const auto m = load_matrix(matrix_path);
      return Outcome{to_json(exact_score(m, g.tol, g.threads)), {{"matrix", matrix_path}, {"tol", g.tol}}};
    };
  }
  // score-mc
  {
    auto* sub = app.add_subcommand("score-mc", "Monte Carlo estimate of s0(M)");
    add_matrix(sub);
    sub->add_option("--samples", samples)->capture_default_str();
    handlers["score-mc"] = [&] {
      const auto m = load_matrix(matrix_path);
      return Outcome{to_json(mc_score(m, g.tol, samples, g.seed, g.threads)),
                     {{"matrix", matrix_path}, {"tol", g.tol}, {"samples", samples}},
                     true};
    };
  }
  // threshold-score
  {
    auto* sub = app.add_subcommand("threshold-score", "fraction of x with prod |(Mx)_i| >= theta");
    add_matrix(sub);
    sub->add_option("--theta", theta)->capture_default_str();
    sub->add_option("--mode", mode, "exact or mc")->capture_default_str();
    sub->add_option("--samples", samples)->capture_default_str();
    handlers["threshold-score"] = [&] {
      const auto m = load_matrix(matrix_path);
      const Mode md = parse_mode(mode);
      return Outcome{to_json(threshold_score(m, theta, md, samples, g.seed, g.threads)),
                     {{"matrix", matrix_path}, {"theta", theta}, {"mode", to_string(md)}, {"samples", samples}},
                     md == Mode::monte_carlo};
    };
  }
  // perm
  std::string perm_method = "ryser";
  {
    auto* sub = app.add_subcommand("perm", "exact permanent");
    add_matrix(sub);
    sub->add_option("--method", perm_method, "ryser or naive")->capture_default_str();
    handlers["perm"] = [&] {
      const auto m = load_matrix(matrix_path);
      PermanentReport r;
      if (perm_method == "ryser")
        r = ryser_permanent(m, g.threads);
      else if (perm_method == "naive")
        r = naive_permanent(m);
      else
        throw PreconditionError("method must be ryser or naive");
      return Outcome{to_json(r), {{"matrix", matrix_path}, {"method", perm_method}}};
    };
  }
  // perm-bernoulli
  {
    auto* sub = app.add_subcommand("perm-bernoulli", "permanent as E prod x_i (Mx)_i");
    add_matrix(sub);
    sub->add_option("--mode", mode, "exact or mc")->capture_default_str();
    sub->add_option("--samples", samples)->capture_default_str();
    handlers["perm-bernoulli"] = [&] {
      const auto m = load_matrix(matrix_path);
      const Mode md = parse_mode(mode);
      return Outcome{to_json(bernoulli_permanent(m, md, samples, g.seed, g.threads)),
                     {{"matrix", matrix_path}, {"mode", to_string(md)}, {"samples", samples}},
                     md == Mode::monte_carlo};
    };
  }
  // bins
  {
    auto* sub = app.add_subcommand("bins", "balls-in-bins estimate of per(A) for column-stochastic A");
    add_matrix(sub);
    sub->add_option("--samples", samples)->capture_default_str();
    handlers["bins"] = [&] {
      const auto m = load_matrix(matrix_path);
      return Outcome{to_json(balls_in_bins_estimate(m, samples, g.seed, g.threads)),
                     {{"matrix", matrix_path}, {"samples", samples}},
                     true};
    };
  }
  // construct
  std::string family;
  std::size_t n = 0;
  std::size_t r = 1;
  std::string perm_text, signs_text, assign_text, t_text, d_path, a_path, f0_path, gen_path, bounds_text, lower_text,
      upper_text, out_path, cert_path;
  {
    auto* sub = app.add_subcommand("construct", "build a matrix family with large score");
    sub->add_option("--family", family, "perm, selector, rank1, rankr or example2")
        ->required()
        ->check(CLI::IsMember({"perm", "selector", "rank1", "rankr", "example2"}));
    sub->add_option("--n", n, "dimension");
    sub->add_option("--perm", perm_text, "perm: 0-based permutation, comma separated");
    sub->add_option("--signs", signs_text, "perm/rankr: +-1 list");
    sub->add_option("--assign", assign_text, "selector: col:sign per row, '-' for a zero row");
    sub->add_option("--t", t_text, "rank1: t vector with t_1 = 1 (default all ones)");
    sub->add_option("--r", r, "rankr: perturbation rank")->capture_default_str();
    sub->add_option("--D", d_path, "rankr: (n-r) x r matrix file (default Gaussian from --seed)");
    sub->add_option("--A", a_path, "rankr: r x r antisymmetric matrix file (default zero)");
    sub->add_option("--F0", f0_path, "example2: full selector matrix file (default identity)");
    sub->add_option("--generators", gen_path, "example2: n x r matrix file, one generator per column");
    sub->add_option("--bounds", bounds_text, "example2: symmetric bounds K_i");
    sub->add_option("--lower", lower_text, "example2: lower bounds K_i");
    sub->add_option("--upper", upper_text, "example2: upper bounds K_i'");
    sub->add_option("--out", out_path, "matrix output file")->required();
    sub->add_option("--cert", cert_path, "also write the certificate JSON here");
    handlers["construct"] = [&] {
      Json inputs{{"family", family}, {"out", out_path}};
      bool seeded = false;
      std::optional<ConstructionCertificate> cert;
      if (family == "perm") {
        const auto pi = parse_list<std::size_t>(perm_text, "--perm");
        const std::size_t dim = pi.size();
        const auto signs = signs_text.empty() ? std::vector<int>(dim, 1) : parse_list<int>(signs_text, "--signs");
        cert = perm_reflection(dim, pi, signs);
        inputs["perm"] = pi;
        inputs["signs"] = signs;
      } else if (family == "selector") {
        if (n == 0) throw PreconditionError("selector needs --n");
        const auto assignment = parse_assignment(assign_text);
        cert = selector_certificate(n, assignment);
        inputs["n"] = n;
        inputs["assign"] = assign_text;
      } else if (family == "rank1") {
        auto t = t_text.empty() ? std::vector<double>(n, 1.0) : parse_list<double>(t_text, "--t");
        const std::size_t dim = n == 0 ? t.size() : n;
        if (dim == 0) throw PreconditionError("rank1 needs --n or --t");
        cert = rank_one_orthogonal(dim, t, g.tol);
        inputs["n"] = dim;
        inputs["t"] = t;
      } else if (family == "rankr") {
        if (n == 0) throw PreconditionError("rankr needs --n");
        if (r == 0 || r >= n) throw PreconditionError("rankr needs 1 <= r < n");
        DenseMatrix D(n - r, r);
        if (d_path.empty()) {
          std::mt19937_64 rng(g.seed);
          std::normal_distribution<double> normal;
          for (std::size_t i = 0; i < n - r; ++i)
            for (std::size_t j = 0; j < r; ++j) D(i, j) = normal(rng);
          seeded = true;
        } else {
          D = load_matrix(d_path);
        }
        const DenseMatrix A = a_path.empty() ? DenseMatrix(r, r) : load_matrix(a_path);
        const auto signs = signs_text.empty() ? std::vector<int>(n, 1) : parse_list<int>(signs_text, "--signs");
        cert = rank_r_orthogonal(n, r, D, A, signs, g.tol);
        inputs["n"] = n;
        inputs["r"] = r;
        inputs["D"] = d_path.empty() ? Json(nullptr) : Json(d_path);
        inputs["A"] = a_path.empty() ? Json(nullptr) : Json(a_path);
      } else {
        const DenseMatrix F0 = f0_path.empty() ? DenseMatrix::identity(n == 0 ? 1 : n) : load_matrix(f0_path);
        if (f0_path.empty() && n == 0) throw PreconditionError("example2 needs --n or --F0");
        GapDescriptor q;
        q.ambient_dim = F0.rows();
        if (!gen_path.empty()) {
          const DenseMatrix gens = load_matrix(gen_path);
          if (gens.rows() != F0.rows()) throw ShapeError("generators must have n rows");
          for (std::size_t j = 0; j < gens.cols(); ++j) q.generators.push_back(gens.column(j));
        }
        if (!bounds_text.empty()) {
          for (auto k : parse_list<std::int64_t>(bounds_text, "--bounds")) {
            q.lower.push_back(-k);
            q.upper.push_back(k);
          }
          q.symmetric = true;
        } else {
          if (!lower_text.empty()) q.lower = parse_list<std::int64_t>(lower_text, "--lower");
          if (!upper_text.empty()) q.upper = parse_list<std::int64_t>(upper_text, "--upper");
        }
        cert = example2_perturbed(F0, q, g.seed, g.tol);
        seeded = true;
        inputs["F0"] = f0_path.empty() ? Json(nullptr) : Json(f0_path);
        inputs["generators"] = gen_path.empty() ? Json(nullptr) : Json(gen_path);
        inputs["n"] = F0.rows();
      }
      save_matrix(cert->matrix, out_path);
      Json report = to_json(*cert);
      if (!cert_path.empty()) {
        std::ofstream c(cert_path);
        if (!c) throw PreconditionError("cannot write " + cert_path);
        c << report.dump(2) << '\n';
      }
      return Outcome{report, inputs, seeded};
    };
  }
  // analyze
  double epsilon = 0.5, snap_tol = 0.1, rank_tol = 1e-8;
  {
    auto* sub = app.add_subcommand("analyze", "dominance report and M = F + residual decomposition");
    add_matrix(sub);
    sub->add_option("--epsilon", epsilon)->capture_default_str();
    sub->add_option("--snap-tol", snap_tol)->capture_default_str();
    sub->add_option("--rank-tol", rank_tol)->capture_default_str();
    handlers["analyze"] = [&] {
      const auto m = load_matrix(matrix_path);
      Json report{{"dominance", to_json(dominance_analysis(m, epsilon))},
                  {"decomposition", to_json(decompose(m, snap_tol, rank_tol))}};
      return Outcome{report,
                     {{"matrix", matrix_path}, {"epsilon", epsilon}, {"snap_tol", snap_tol}, {"rank_tol", rank_tol}}};
    };
  }
  // rho
  std::string vectors_path;
  {
    auto* sub = app.add_subcommand("rho", "concentration probability of the columns of a matrix");
    sub->add_option("--vectors", vectors_path, "matrix file whose columns are a_1..a_n")->required();
    handlers["rho"] = [&] {
      const auto v = load_matrix(vectors_path);
      return Outcome{to_json(concentration_probability(v, g.tol, g.threads)),
                     {{"vectors", vectors_path}, {"group_tol", g.tol}}};
    };
  }
  // classify-stochastic
  {
    auto* sub = app.add_subcommand("classify-stochastic", "little/splittable/dominated rows and permanent bounds");
    add_matrix(sub);
    handlers["classify-stochastic"] = [&] {
      const auto m = load_matrix(matrix_path);
      return Outcome{to_json(stochastic_certificate(m, g.tol, g.threads)), {{"matrix", matrix_path}}};
    };
  }
  // verify-rankr
  std::string u_path;
  {
    auto* sub = app.add_subcommand("verify-rankr", "orthogonality identities of a rank-r block (U, D)");
    sub->add_option("--U", u_path, "r x r matrix file");
    sub->add_option("--D", d_path, "(n-r) x r matrix file");
    sub->add_option("--cert", cert_path, "rank_r certificate JSON written by construct");
    handlers["verify-rankr"] = [&] {
      Json inputs;
      std::optional<DenseMatrix> U, D;
      if (!cert_path.empty()) {
        const Json c = read_json_file(cert_path);
        if (c.value("family", "") != "rank_r") throw PreconditionError("certificate is not a rank_r construction");
        U = matrix_from_json(c.at("parameters").at("U"));
        D = matrix_from_json(c.at("parameters").at("D"));
        inputs["cert"] = cert_path;
      } else {
        if (u_path.empty() || d_path.empty()) throw PreconditionError("verify-rankr needs --U and --D, or --cert");
        U = load_matrix(u_path);
        D = load_matrix(d_path);
        inputs["U"] = u_path;
        inputs["D"] = d_path;
      }
      return Outcome{to_json(verify_rank_r_structure(*U, *D)), inputs};
    };
  }
  // trace-claim
  std::string e_text, b_path;
  std::size_t trials = 1000;
  double b_scale = 100.0;
  {
    auto* sub = app.add_subcommand("trace-claim", "tr((I + E - B)^-1) in [0, r]");
    sub->add_option("--E", e_text, "positive diagonal, comma separated");
    sub->add_option("--B", b_path, "antisymmetric r x r matrix file (default zero)");
    sub->add_option("--r", r, "random mode: order")->capture_default_str();
    sub->add_option("--trials", trials, "random mode: number of draws")->capture_default_str();
    sub->add_option("--scale", b_scale, "random mode: entry scale of B")->capture_default_str();
    handlers["trace-claim"] = [&] {
      if (!e_text.empty()) {
        const auto e = parse_list<double>(e_text, "--E");
        const DenseMatrix B = b_path.empty() ? DenseMatrix(e.size(), e.size()) : load_matrix(b_path);
        const double v = trace_claim_check(e, B);
        return Outcome{{{"value", v}, {"r", e.size()}, {"in_range", true}},
                       {{"E", e}, {"B", b_path.empty() ? Json(nullptr) : Json(b_path)}}};
      }
      if (r == 0) throw PreconditionError("--r must be positive");
      std::mt19937_64 rng(g.seed);
      std::uniform_real_distribution<double> pos(0.0, 10.0);
      std::uniform_real_distribution<double> sym(-1.0, 1.0);
      double lo = std::numeric_limits<double>::infinity(), hi = -lo;
      for (std::size_t t = 0; t < trials; ++t) {
        std::vector<double> e(r);
        for (auto& v : e) v = pos(rng) + 1e-12;
        DenseMatrix B(r, r);
        for (std::size_t i = 0; i < r; ++i)
          for (std::size_t j = i + 1; j < r; ++j) {
            B(i, j) = b_scale * sym(rng);
            B(j, i) = -B(i, j);
          }
        const double v = trace_claim_check(e, B);
        lo = std::min(lo, v);
        hi = std::max(hi, v);
      }
      return Outcome{{{"trials", trials}, {"r", r}, {"min", lo}, {"max", hi}, {"in_range", true}},
                     {{"r", r}, {"trials", trials}, {"scale", b_scale}},
                     true};
    };
  }
  // fit-map
  std::string pairs_path;
  {
    auto* sub = app.add_subcommand("fit-map", "orthogonal fit of a partial hypercube map");
    sub->add_option("--pairs", pairs_path, "JSON file: [{\"x\": [...], \"y\": [...]}, ...]")->required();
    handlers["fit-map"] = [&] {
      const Json j = read_json_file(pairs_path);
      if (!j.is_array()) throw PreconditionError("pairs file must hold a JSON array");
      std::vector<SignPair> pairs;
      for (const auto& p : j) {
        const auto x = p.at("x").get<std::vector<int>>();
        const auto y = p.at("y").get<std::vector<int>>();
        pairs.push_back({SignVector::from_signs(x), SignVector::from_signs(y)});
      }
      bool preserving = true;
      for (std::size_t a = 0; a < pairs.size(); ++a)
        for (std::size_t b = a + 1; b < pairs.size(); ++b)
          preserving &= hamming_check(pairs[a].x, pairs[b].x).delta == hamming_check(pairs[a].y, pairs[b].y).delta;
      Json report = to_json(procrustes_fit(pairs));
      report["distance_preserving"] = preserving;
      return Outcome{report, {{"pairs", pairs_path}, {"count", pairs.size()}}};
    };
  }

  std::vector<std::string> argv_rev(args.rbegin(), args.rend() - (args.empty() ? 0 : 1));
  try {
    app.parse(argv_rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return kExitUsage;
  }

  const std::string command = app.get_subcommands().front()->get_name();
  try {
    const auto start = std::chrono::steady_clock::now();
    Outcome outcome = handlers.at(command)();
    const auto stop = std::chrono::steady_clock::now();
    Json result{{"command", command},
                {"inputs", outcome.inputs},
                {"seed", outcome.seeded ? Json(g.seed) : Json(nullptr)},
                {"report", outcome.report},
                {"wall_time_ms", std::chrono::duration<double, std::milli>(stop - start).count()}};
    if (g.pretty)
      render_pretty(result, out);
    else
      out << result.dump() << '\n';
    return kExitOk;
  } catch (const InternalError& e) {
    out << Json{{"command", command}, {"error", {{"kind", e.kind()}, {"message", e.what()}}}}.dump() << '\n';
    return kExitInternal;
  } catch (const Error& e) {
    out << Json{{"command", command}, {"error", {{"kind", e.kind()}, {"message", e.what()}}}}.dump() << '\n';
    return kExitUsage;
  } catch (const Json::exception& e) {
    out << Json{{"command", command}, {"error", {{"kind", "precondition"}, {"message", e.what()}}}}.dump() << '\n';
    return kExitUsage;
  }
}

}  // namespace cubescore::cli
