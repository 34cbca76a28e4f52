#pragma once

#include "ravopt/problems/factorization.hpp"
#include "ravopt/problems/neuron.hpp"
#include "ravopt/problems/sensing.hpp"

#include <json.hpp>

namespace ravopt {

nlohmann::json matrix_to_json(const Matrix& M);
Matrix matrix_from_json(const nlohmann::json& j);
nlohmann::json vector_to_json(const Vector& v);
Vector vector_from_json(const nlohmann::json& j);

namespace problems {

void to_json(nlohmann::json& j, const FactorizationInstance& inst);
void from_json(const nlohmann::json& j, FactorizationInstance& inst);
void to_json(nlohmann::json& j, const SensingInstance& inst);
void from_json(const nlohmann::json& j, SensingInstance& inst);
void to_json(nlohmann::json& j, const NeuronInstance& inst);
void from_json(const nlohmann::json& j, NeuronInstance& inst);

}  // namespace problems
}  // namespace ravopt
