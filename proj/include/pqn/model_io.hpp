#pragma once

#include <iosfwd>
#include <string>

#include "pqn/models.hpp"

namespace pqn {

/// Model file schema (single JSON document):
///   {"name": str,
///    "coordinates": [str, ...],
///    "poisson": [[expr, ...], ...],        full m x m antisymmetric matrix
///    "endomorphism": [[expr, ...], ...],   row-major, (N X)^i = sum_j N^i_j X^j
///    "phi": {"i,j,k": expr, ...},          1-based strictly increasing triples
///    "scalars": {name: expr, ...},         optional
///    "two_forms": {name: {"i,j": expr}}}   optional, 1-based increasing pairs
/// Expression strings use the expression grammar; everything is
/// canonicalized on load, and load(save(x)) = x.
ModelDescriptor load_model(const std::string& path);
ModelDescriptor read_model(std::istream& in, const std::string& origin);
void save_model(const ModelDescriptor& model, const std::string& path);
std::string model_to_json(const ModelDescriptor& model);

}  // namespace pqn
