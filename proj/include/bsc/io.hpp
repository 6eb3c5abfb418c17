#pragma once

#include <complex>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "bsc/lifting.hpp"
#include "bsc/parameters.hpp"
#include "bsc/quadrature.hpp"
#include "bsc/symmetric.hpp"
#include "bsc/trig_transforms.hpp"

namespace bsc::io {

using Json = nlohmann::ordered_json;

/// "P,M" -> BoundaryFlags{plus = P, minus = M}.
BoundaryFlags parse_flags(const std::string& text);

struct ParsedParameters {
  std::vector<std::complex<double>> values;
  /// Non-real entries whose conjugate was missing and got appended.
  std::vector<std::complex<double>> completed;
};

/// Parses "a1;a2;..." where each entry is "re" or "re,im". Missing conjugates are appended.
ParsedParameters parse_parameters(const std::string& text);

/// Parses a term "l1,l2,...:coeff".
std::pair<Partition, double> parse_term(const std::string& text);

/// Number formatting shared by the CSV writers (17 significant digits).
std::string format_number(double v);

Json spec_to_json(const QuadratureSpecd& spec);
Json parameters_to_json(const ParameterSetd& params);

Json quadrature_to_json(const QuadratureRule<double>& rule, bool include_weights);
std::string quadrature_to_csv(const QuadratureRule<double>& rule, bool include_weights);

Json cubature_to_json(const CubatureRule<double>& rule);
CubatureRule<double> cubature_from_json(const Json& j);
std::string cubature_to_csv(const CubatureRule<double>& rule);

Json dxt_report_to_json(const DxtReport& r);

/// Writes text to path through a temporary file and a rename.
void write_atomically(const std::string& path, const std::string& text);

} // namespace bsc::io
