#include <pybind11/pybind11.h>
#include <pybind11/numpy.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>
#include <vector>

#include "cubescore/constructors.hpp"
#include "cubescore/errors.hpp"
#include "cubescore/permanent.hpp"
#include "cubescore/report_json.hpp"
#include "cubescore/score.hpp"
#include "cubescore/structure.hpp"

namespace py = pybind11;
using namespace cubescore;

namespace {

using Array = py::array_t<double, py::array::c_style | py::array::forcecast>;

DenseMatrix to_matrix(const Array& a) {
  if (a.ndim() != 2) throw ShapeError("expected a 2-d array");
  const auto rows = static_cast<std::size_t>(a.shape(0));
  const auto cols = static_cast<std::size_t>(a.shape(1));
  return DenseMatrix(rows, cols, std::vector<double>(a.data(), a.data() + rows * cols));
}

py::array_t<double> to_array(const DenseMatrix& m) {
  py::array_t<double> out({m.rows(), m.cols()});
  std::copy(m.data().begin(), m.data().end(), out.mutable_data());
  return out;
}

// Reports cross the boundary in the same shape the CLI prints.
py::object to_py(const Json& j) { return py::module_::import("json").attr("loads")(j.dump()); }

Mode parse_mode(const std::string& s) {
  if (s == "exact") return Mode::exact;
  if (s == "mc" || s == "monte_carlo") return Mode::monte_carlo;
  throw PreconditionError("mode must be 'exact' or 'mc'");
}

py::dict certificate(const ConstructionCertificate& c) {
  py::dict d = to_py(to_json(c));
  d["matrix"] = to_array(c.matrix);
  return d;
}

}  // namespace

PYBIND11_MODULE(_cubescore, m) {
  m.doc() = "Hypercube scores, permanents and orthogonal constructions.";

  auto base = py::register_exception<Error>(m, "CubescoreError", PyExc_ValueError);
  py::register_exception<CapacityError>(m, "CapacityError", base.ptr());
  py::register_exception<ShapeError>(m, "ShapeError", base.ptr());
  py::register_exception<ParseError>(m, "ParseError", base.ptr());
  py::register_exception<PreconditionError>(m, "PreconditionError", base.ptr());
  py::register_exception<ConstructionError>(m, "ConstructionError", base.ptr());
  py::register_exception<DegenerateGeneratorError>(m, "DegenerateGeneratorError", base.ptr());
  py::register_exception<InternalError>(m, "InternalError", PyExc_RuntimeError);

  m.def(
      "score_exact",
      [](const Array& a, double tol, unsigned threads) { return to_py(to_json(exact_score(to_matrix(a), tol, threads))); },
      py::arg("matrix"), py::arg("tol") = 1e-9, py::arg("threads") = 1);
  m.def(
      "score_mc",
      [](const Array& a, std::uint64_t samples, std::uint64_t seed, double tol, unsigned threads) {
        return to_py(to_json(mc_score(to_matrix(a), tol, samples, seed, threads)));
      },
      py::arg("matrix"), py::arg("samples"), py::arg("seed"), py::arg("tol") = 1e-9, py::arg("threads") = 1);
  m.def(
      "threshold_score",
      [](const Array& a, double theta, const std::string& mode, std::uint64_t samples, std::uint64_t seed,
         unsigned threads) {
        return to_py(to_json(threshold_score(to_matrix(a), theta, parse_mode(mode), samples, seed, threads)));
      },
      py::arg("matrix"), py::arg("theta"), py::arg("mode") = "exact", py::arg("samples") = 0, py::arg("seed") = 0,
      py::arg("threads") = 1);

  m.def(
      "permanent", [](const Array& a, unsigned threads) { return to_py(to_json(ryser_permanent(to_matrix(a), threads))); },
      py::arg("matrix"), py::arg("threads") = 1);
  m.def(
      "permanent_naive", [](const Array& a) { return to_py(to_json(naive_permanent(to_matrix(a)))); },
      py::arg("matrix"));
  m.def(
      "permanent_bernoulli",
      [](const Array& a, const std::string& mode, std::uint64_t samples, std::uint64_t seed, unsigned threads) {
        return to_py(to_json(bernoulli_permanent(to_matrix(a), parse_mode(mode), samples, seed, threads)));
      },
      py::arg("matrix"), py::arg("mode") = "exact", py::arg("samples") = 0, py::arg("seed") = 0,
      py::arg("threads") = 1);
  m.def(
      "balls_in_bins",
      [](const Array& a, std::uint64_t samples, std::uint64_t seed, unsigned threads) {
        return to_py(to_json(balls_in_bins_estimate(to_matrix(a), samples, seed, threads)));
      },
      py::arg("matrix"), py::arg("samples"), py::arg("seed"), py::arg("threads") = 1);

  m.def(
      "perm_reflection",
      [](const std::vector<std::size_t>& pi, const std::vector<int>& signs) {
        return certificate(perm_reflection(pi.size(), pi, signs));
      },
      py::arg("permutation"), py::arg("signs"));
  m.def(
      "rank_one", [](const std::vector<double>& t) { return certificate(rank_one_orthogonal(t.size(), t)); },
      py::arg("t"));
  m.def(
      "rank_r",
      [](const Array& D, const Array& A, const std::vector<int>& signs) {
        const DenseMatrix d = to_matrix(D);
        return certificate(rank_r_orthogonal(signs.size(), d.cols(), d, to_matrix(A), signs));
      },
      py::arg("D"), py::arg("A"), py::arg("signs"));
  m.def(
      "example2",
      [](const Array& F0, const Array& u) { return certificate(example2_from_columns(to_matrix(F0), to_matrix(u))); },
      py::arg("F0"), py::arg("u"));

  m.def(
      "dominance",
      [](const Array& a, double epsilon) { return to_py(to_json(dominance_analysis(to_matrix(a), epsilon))); },
      py::arg("matrix"), py::arg("epsilon") = 0.5);
  m.def(
      "decompose",
      [](const Array& a, double snap_tol, double rank_tol) {
        return to_py(to_json(decompose(to_matrix(a), snap_tol, rank_tol)));
      },
      py::arg("matrix"), py::arg("snap_tol") = 0.25, py::arg("rank_tol") = 1e-8);
  m.def(
      "rho",
      [](const Array& vectors, double tol, unsigned threads) {
        return to_py(to_json(concentration_probability(to_matrix(vectors), tol, threads)));
      },
      py::arg("vectors"), py::arg("tol") = 1e-9, py::arg("threads") = 1);
  m.def(
      "classify_row", [](const std::vector<double>& row) { return to_py(to_json(classify_row(row))); },
      py::arg("row"));
  m.def(
      "classify_stochastic",
      [](const Array& a, unsigned threads) { return to_py(to_json(stochastic_certificate(to_matrix(a), 1e-9, threads))); },
      py::arg("matrix"), py::arg("threads") = 1);
  m.def(
      "verify_rank_r",
      [](const Array& U, const Array& D) { return to_py(to_json(verify_rank_r_structure(to_matrix(U), to_matrix(D)))); },
      py::arg("U"), py::arg("D"));
  m.def(
      "trace_claim", [](const std::vector<double>& e, const Array& B) { return trace_claim_check(e, to_matrix(B)); },
      py::arg("E"), py::arg("B"));
  m.def(
      "fit_map",
      [](const std::vector<std::pair<std::vector<int>, std::vector<int>>>& pairs) {
        std::vector<SignPair> sp;
        for (const auto& [x, y] : pairs) sp.push_back({SignVector::from_signs(x), SignVector::from_signs(y)});
        const ProcrustesFit fit = procrustes_fit(sp);
        py::dict d = to_py(to_json(fit));
        d["M"] = to_array(fit.M);
        return d;
      },
      py::arg("pairs"));
  m.def(
      "hamming",
      [](const std::vector<int>& x, const std::vector<int>& y) {
        return to_py(to_json(hamming_check(SignVector::from_signs(x), SignVector::from_signs(y))));
      },
      py::arg("x"), py::arg("y"));
}
