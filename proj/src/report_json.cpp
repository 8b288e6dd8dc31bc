#include "cubescore/report_json.hpp"

#include <string>

#include "cubescore/errors.hpp"

namespace cubescore {

namespace {

Json optional_json(const std::optional<double>& v) { return v ? Json(*v) : Json(nullptr); }

Json entry_json(const std::optional<SignedEntry>& e) {
  if (!e) return nullptr;
  return Json{{"col", e->col}, {"sign", e->sign}};
}

struct ParamsVisitor {
  Json operator()(const PermReflectionParams& p) const {
    return {{"permutation", p.permutation}, {"signs", p.signs}};
  }
  Json operator()(const SelectorParams& p) const {
    Json rows = Json::array();
    for (const auto& e : p.assignment) rows.push_back(entry_json(e));
    return {{"assignment", rows}};
  }
  Json operator()(const RankOneParams& p) const { return {{"t", p.t}, {"x", p.x}}; }
  Json operator()(const RankRParams& p) const {
    return {{"U", to_json(p.U)}, {"D", to_json(p.D)}, {"A", to_json(p.A)}, {"signs", p.signs}};
  }
  Json operator()(const Example2Params& p) const {
    Json j{{"F0", to_json(p.F0)}, {"U", to_json(p.U)}};
    j["gap"] = p.gap.ambient_dim ? to_json(p.gap) : Json(nullptr);
    j["drawn_coefficients"] = p.drawn_coefficients;
    j["modal_multiplicity"] = p.modal_multiplicity;
    j["modal_value"] = p.modal_value;
    j["seed"] = p.seed;
    return j;
  }
};

}  // namespace

Json to_json(const DenseMatrix& m) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    const auto r = m.row(i);
    rows.push_back(std::vector<double>(r.begin(), r.end()));
  }
  return rows;
}

DenseMatrix matrix_from_json(const Json& j) {
  if (!j.is_array() || j.empty() || !j.front().is_array()) throw PreconditionError("matrix must be a nonempty array of rows");
  const std::size_t rows = j.size();
  const std::size_t cols = j.front().size();
  std::vector<double> entries;
  entries.reserve(rows * cols);
  for (const auto& r : j) {
    if (!r.is_array() || r.size() != cols) throw ShapeError("matrix rows must share one length");
    for (const auto& v : r) {
      if (!v.is_number()) throw PreconditionError("matrix entries must be numbers");
      entries.push_back(v.get<double>());
    }
  }
  return DenseMatrix(rows, cols, std::move(entries));
}

Json to_json(const ScoreReport& r) {
  return {{"hit_count", r.hit_count}, {"total", r.total},           {"score", r.score},
          {"stderr", r.std_error},    {"method", to_string(r.method)}, {"tolerance", r.tolerance}};
}

Json to_json(const ThresholdScoreReport& r) {
  return {{"hit_count", r.hit_count}, {"total", r.total},
          {"score", r.score},         {"stderr", r.std_error},
          {"method", to_string(r.method)}, {"tolerance", r.tolerance},
          {"threshold", r.threshold}};
}

Json to_json(const PermanentReport& r) {
  return {{"value", r.value},
          {"method", to_string(r.method)},
          {"samples", r.samples ? Json(*r.samples) : Json(nullptr)},
          {"stderr", optional_json(r.std_error)}};
}

Json to_json(const GapDescriptor& q) {
  return {{"ambient_dim", q.ambient_dim}, {"rank", q.rank()},   {"generators", q.generators},
          {"lower_bounds", q.lower},      {"upper_bounds", q.upper}, {"offset", q.offset},
          {"symmetric", q.symmetric}};
}

Json to_json(const ConstructionCertificate& c) {
  return {{"matrix", to_json(c.matrix)},
          {"family", to_string(c.family)},
          {"claimed_score_lower_bound", c.claimed_score_lower_bound},
          {"orthogonal", c.orthogonal},
          {"parameters", std::visit(ParamsVisitor{}, c.parameters)}};
}

Json to_json(const SparseSignMatrix& f) {
  Json entries = Json::array();
  for (const auto& e : f.entries) entries.push_back(entry_json(e));
  return {{"rows", f.rows}, {"cols", f.cols}, {"entries", entries}};
}

Json to_json(const DecompositionReport& r) {
  Json j{{"F", to_json(r.F)},
         {"residual", to_json(r.residual)},
         {"residual_rank", r.residual_rank},
         {"kept_rows", r.kept_rows},
         {"kept_cols", r.kept_cols}};
  if (r.gap_fit) {
    j["gap_fit"] = {{"gap", to_json(r.gap_fit->gap)},
                    {"generator_columns", r.gap_fit->generator_columns},
                    {"coefficients", r.gap_fit->coefficients},
                    {"max_residual", r.gap_fit->max_residual}};
  } else {
    j["gap_fit"] = nullptr;
  }
  return j;
}

Json to_json(const DominanceReport& r) {
  Json rows = Json::array();
  for (const auto& m : r.rows) rows.push_back({{"max_abs", m.abs_value}, {"col", m.col}});
  return {{"rows", rows},
          {"epsilon", r.epsilon},
          {"threshold", r.threshold},
          {"dominated_count", r.dominated_count},
          {"column_injective", r.column_injective}};
}

Json to_json(const ConcentrationReport& r) {
  return {{"rho", r.rho}, {"multiplicity", r.multiplicity}, {"total", r.total}, {"mode", r.mode}};
}

Json to_json(const RowClass& c) {
  Json j{{"class", to_string(c.kind)}, {"tail_sum", c.tail_sum}};
  if (c.kind == RowKind::dominated) {
    j["col"] = c.col;
    j["entry"] = c.entry;
  }
  return j;
}

Json to_json(const StochasticReport& r) {
  Json rows = Json::array();
  for (const auto& c : r.rows) rows.push_back(to_json(c));
  return {{"rows", rows},
          {"little_count", r.little_count},
          {"splittable_count", r.splittable_count},
          {"dominated_count", r.dominated_count},
          {"dominated_columns_injective", r.dominated_columns_injective},
          {"azuma_bounds", {r.little_bound, r.splittable_bound}},
          {"permanent", optional_json(r.permanent)}};
}

Json to_json(const RankRVerification& v) {
  return {{"identity_residual", v.identity_residual},
          {"max_eig_sym", v.max_eig_sym},
          {"max_diag_dud", v.max_diag_dud},
          {"trace_dud", v.trace_dud},
          {"trace_bound", v.trace_bound},
          {"identity_ok", v.identity_ok},
          {"negative_semidefinite", v.negative_semidefinite},
          {"diag_nonpositive", v.diag_nonpositive},
          {"trace_ok", v.trace_ok},
          {"all_ok", v.all_ok()}};
}

Json to_json(const ProcrustesFit& f) { return {{"M", to_json(f.M)}, {"max_residual", f.max_residual}}; }

Json to_json(const HammingCheck& h) { return {{"delta", h.delta}, {"euclid_identity_ok", h.euclid_identity_ok}}; }

}  // namespace cubescore
