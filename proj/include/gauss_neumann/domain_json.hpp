#pragma once

#include <string>

#include "json.hpp"

#include "gauss_neumann/fem2d.hpp"
#include "gauss_neumann/geometry.hpp"
#include "gauss_neumann/profile.hpp"
#include "gauss_neumann/sl1d.hpp"
#include "gauss_neumann/weights.hpp"

namespace gauss_neumann {

using Json = nlohmann::json;

/// Throws ParameterError on malformed input.
Profile profile_from_json(const Json& j);
Json to_json(const Profile& p);

Domain domain_from_json(const Json& j);
Json to_json(const Domain& d);

/// Reads {"x0": .., "y0": ..}; missing keys default to zero.
WeightSpec weight_from_json(const Json& j);
Json to_json(const WeightSpec& w);

/// {eigenvalues, residuals, grid: {R, h, n_nodes}}
Json to_json(const Spectrum1D& s);

/// {eigenvalues, residuals, multiplicities, mesh: {...}}
Json to_json(const Spectrum2D& s);

Json mesh_summary(const TriMesh& m);

Json read_json_file(const std::string& path);

/// Non-finite values become the strings "inf", "-inf", "nan".
Json finite_or_string(double v);

} // namespace gauss_neumann
