#include "ravopt/problems/instance_io.hpp"

#include "ravopt/problems/sampling.hpp"
#include "ravopt/rng.hpp"

namespace ravopt {

using nlohmann::json;

json matrix_to_json(const Matrix& M) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < M.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < M.cols(); ++j) row.push_back(M(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

Matrix matrix_from_json(const json& j) {
  if (!j.is_array()) throw Error(ErrorCode::ShapeMismatch, "matrix must be a list of rows");
  const auto rows = static_cast<Eigen::Index>(j.size());
  const auto cols = rows == 0 ? Eigen::Index{0} : static_cast<Eigen::Index>(j.at(0).size());
  Matrix M(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    const json& row = j.at(static_cast<std::size_t>(i));
    if (static_cast<Eigen::Index>(row.size()) != cols)
      throw Error(ErrorCode::ShapeMismatch, "ragged matrix rows");
    for (Eigen::Index c = 0; c < cols; ++c) M(i, c) = row.at(static_cast<std::size_t>(c)).get<double>();
  }
  return M;
}

json vector_to_json(const Vector& v) { return json(std::vector<double>(v.data(), v.data() + v.size())); }

Vector vector_from_json(const json& j) {
  const auto values = j.get<std::vector<double>>();
  return Eigen::Map<const Vector>(values.data(), static_cast<Eigen::Index>(values.size()));
}

namespace problems {

Vector sample_init(const Vector& base, double radius, std::uint64_t seed) {
  if (!(radius > 0.0)) throw Error(ErrorCode::InvalidArgument, "radius must be positive");
  Rng rng = make_rng(seed, 0x1a17);
  return base + radius * random_direction(rng, base.size());
}

void to_json(json& j, const FactorizationInstance& inst) {
  j = json{{"d", inst.d},
           {"k", inst.k},
           {"r", inst.r},
           {"seed", inst.seed},
           {"generator", inst.generator},
           {"X", matrix_to_json(inst.X)}};
}

void from_json(const json& j, FactorizationInstance& inst) {
  FactorizationInstance out = factorization_instance_from_matrix(
      matrix_from_json(j.at("X")), j.at("r").get<int>(), j.at("k").get<int>());
  if (out.d != j.at("d").get<int>()) throw Error(ErrorCode::ShapeMismatch, "d does not match X");
  out.seed = j.value("seed", std::uint64_t{0});
  out.generator = j.value("generator", std::string("explicit"));
  inst = std::move(out);
}

void to_json(json& j, const SensingInstance& inst) {
  j = json{{"factorization", inst.fac},
           {"m", inst.m},
           {"norm_constant", inst.norm_constant},
           {"rip_scale", inst.rip_scale},
           {"seed", inst.seed},
           {"model", inst.model},
           {"y", vector_to_json(inst.y)}};
  if (inst.factored()) {
    j["a"] = matrix_to_json(inst.a);
    j["a_tilde"] = matrix_to_json(inst.a_tilde);
  } else {
    json list = json::array();
    for (const Matrix& Ai : inst.A) list.push_back(matrix_to_json(Ai));
    j["A"] = std::move(list);
  }
}

void from_json(const json& j, SensingInstance& inst) {
  SensingInstance out;
  out.fac = j.at("factorization").get<FactorizationInstance>();
  out.m = j.at("m").get<int>();
  out.norm_constant = j.at("norm_constant").get<double>();
  out.rip_scale = j.value("rip_scale", 1.0);
  out.seed = j.value("seed", std::uint64_t{0});
  out.model = j.value("model", std::string("dense"));
  if (j.contains("A")) {
    for (const json& Ai : j.at("A")) out.A.push_back(matrix_from_json(Ai));
    if (static_cast<int>(out.A.size()) != out.m) throw Error(ErrorCode::ShapeMismatch, "m does not match A");
  } else {
    out.a = matrix_from_json(j.at("a"));
    out.a_tilde = matrix_from_json(j.at("a_tilde"));
    if (out.a.rows() != out.m || out.a_tilde.rows() != out.m)
      throw Error(ErrorCode::ShapeMismatch, "m does not match the factor matrices");
  }
  out.y = vector_from_json(j.at("y"));
  if (out.y.size() != out.m) throw Error(ErrorCode::ShapeMismatch, "m does not match y");
  inst = std::move(out);
}

void to_json(json& j, const NeuronInstance& inst) {
  j = json{{"d", inst.d}, {"n", inst.n}, {"seed", inst.seed}, {"v", vector_to_json(inst.v)}};
}

void from_json(const json& j, NeuronInstance& inst) {
  NeuronInstance out = neuron_instance_from_teacher(vector_from_json(j.at("v")));
  if (out.d != j.at("d").get<int>()) throw Error(ErrorCode::ShapeMismatch, "d does not match v");
  out.seed = j.value("seed", std::uint64_t{0});
  inst = std::move(out);
}

}  // namespace problems
}  // namespace ravopt
