#include "bsc/io.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace bsc::io {

namespace {

std::string trim(const std::string& s)
{
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos)
    return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep)
{
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep))
    out.push_back(trim(item));
  if (!s.empty() && s.back() == sep)
    out.emplace_back();
  return out;
}

double parse_double(const std::string& text, const std::string& context)
{
  std::size_t used = 0;
  double v = 0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    throw ConfigurationError(context + ": cannot parse number '" + text + "'");
  }
  if (used != text.size())
    throw ConfigurationError(context + ": trailing characters in number '" + text + "'");
  return v;
}

int parse_flag(const std::string& text, const std::string& context)
{
  if (text == "0")
    return 0;
  if (text == "1")
    return 1;
  throw ConfigurationError(context + ": flag must be 0 or 1, got '" + text + "'");
}

Json complex_list(const std::vector<std::complex<double>>& values)
{
  Json arr = Json::array();
  for (const auto& v : values)
    arr.push_back(Json::array({v.real(), v.imag()}));
  return arr;
}

ParameterSetd parameters_from_json(const Json& j)
{
  std::vector<std::complex<double>> values;
  for (const auto& e : j)
    values.emplace_back(e.at(0).get<double>(), e.at(1).get<double>());
  return ParameterSetd(values);
}

Json flags_json(const BoundaryFlags& f) { return Json::array({f.plus, f.minus}); }

BoundaryFlags flags_from_json(const Json& j) { return BoundaryFlags(j.at(0).get<int>(), j.at(1).get<int>()); }

template <typename Vec>
Json vector_json(const Vec& v)
{
  Json arr = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i)
    arr.push_back(static_cast<double>(v[i]));
  return arr;
}

Vector<double> vector_from_json(const Json& j)
{
  Vector<double> v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i)
    v[static_cast<Eigen::Index>(i)] = j[i].get<double>();
  return v;
}

} // namespace

BoundaryFlags parse_flags(const std::string& text)
{
  const auto parts = split(text, ',');
  if (parts.size() != 2)
    throw ConfigurationError("flags must be given as 'P,M', got '" + text + "'");
  return BoundaryFlags(parse_flag(parts[0], "eps_plus"), parse_flag(parts[1], "eps_minus"));
}

ParsedParameters parse_parameters(const std::string& text)
{
  ParsedParameters out;
  if (trim(text).empty())
    return out;
  for (const auto& entry : split(text, ';')) {
    if (entry.empty())
      throw ConfigurationError("empty parameter entry in '" + text + "'");
    const auto nums = split(entry, ',');
    if (nums.size() == 1)
      out.values.emplace_back(parse_double(nums[0], "parameter"), 0.0);
    else if (nums.size() == 2)
      out.values.emplace_back(parse_double(nums[0], "parameter"), parse_double(nums[1], "parameter"));
    else
      throw ConfigurationError("parameter entry must be 're' or 're,im', got '" + entry + "'");
  }

  const std::size_t given = out.values.size();
  std::vector<bool> used(given, false);
  for (std::size_t i = 0; i < given; ++i) {
    if (used[i])
      continue;
    used[i] = true;
    const auto z = out.values[i];
    if (2 * std::abs(z.imag()) <= kConjugateMatchTolerance)
      continue;
    bool matched = false;
    for (std::size_t k = i + 1; k < given && !matched; ++k)
      if (!used[k] && std::abs(out.values[k] - std::conj(z)) <= kConjugateMatchTolerance)
        used[k] = matched = true;
    if (!matched) {
      out.values.push_back(std::conj(z));
      out.completed.push_back(z);
    }
  }
  return out;
}

std::pair<Partition, double> parse_term(const std::string& text)
{
  const auto colon = text.find(':');
  if (colon == std::string::npos)
    throw ConfigurationError("term must look like 'l1,l2,...:coeff', got '" + text + "'");
  return {Partition::parse(trim(text.substr(0, colon))), parse_double(trim(text.substr(colon + 1)), "coefficient")};
}

std::string format_number(double v)
{
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

Json parameters_to_json(const ParameterSetd& params) { return complex_list(params.values()); }

Json spec_to_json(const QuadratureSpecd& spec)
{
  Json j;
  j["eps"] = flags_json(spec.eps);
  j["eps_tilde"] = flags_json(spec.eps_tilde);
  j["poles"] = parameters_to_json(spec.poles);
  j["aux"] = parameters_to_json(spec.aux);
  j["m"] = spec.m;
  return j;
}

Json quadrature_to_json(const QuadratureRule<double>& rule, bool include_weights)
{
  Json j;
  j["spec"] = spec_to_json(rule.spec);
  j["degree_of_exactness"] = rule.degree_of_exactness;
  j["degree_gap"] = rule.degree_gap;
  j["nodes"] = vector_json(rule.nodes);
  if (include_weights) {
    j["weights"] = vector_json(rule.weights);
    j["total_weights"] = vector_json(rule.total_weights);
  }
  return j;
}

std::string quadrature_to_csv(const QuadratureRule<double>& rule, bool include_weights)
{
  std::ostringstream os;
  os << (include_weights ? "index,node,weight,total_weight\n" : "index,node\n");
  for (int l = 0; l < rule.size(); ++l) {
    os << l << ',' << format_number(rule.nodes[l]);
    if (include_weights)
      os << ',' << format_number(rule.weights[l]) << ',' << format_number(rule.total_weights[l]);
    os << '\n';
  }
  return os.str();
}

Json cubature_to_json(const CubatureRule<double>& rule)
{
  Json j;
  j["n"] = rule.n;
  j["m"] = rule.m;
  j["coordinates"] = rule.coordinates == NodeCoordinates::angular ? "angular" : "algebraic";
  j["eps"] = flags_json(rule.eps);
  j["poles"] = parameters_to_json(rule.poles);
  j["degree_of_exactness"] = rule.exact_degree;
  Json parts = Json::array();
  Json nodes = Json::array();
  for (int i = 0; i < rule.size(); ++i) {
    parts.push_back(rule.partitions[static_cast<std::size_t>(i)].to_string());
    Json row = Json::array();
    for (double x : rule.node(i))
      row.push_back(x);
    nodes.push_back(std::move(row));
  }
  j["partitions"] = std::move(parts);
  j["nodes"] = std::move(nodes);
  j["weights"] = vector_json(rule.weights);
  j["base_rule"] = {{"nodes", vector_json(rule.base_rule.nodes)},
                    {"weights", vector_json(rule.base_rule.weights)},
                    {"lower", rule.base_rule.lower},
                    {"upper", rule.base_rule.upper},
                    {"degree_of_exactness", rule.base_rule.exact_degree}};
  return j;
}

CubatureRule<double> cubature_from_json(const Json& j)
{
  CubatureRule<double> rule;
  try {
    rule.n = j.at("n").get<int>();
    rule.m = j.at("m").get<int>();
    const auto coords = j.at("coordinates").get<std::string>();
    if (coords != "angular" && coords != "algebraic")
      throw ConfigurationError("unknown coordinates '" + coords + "'");
    rule.coordinates = coords == "angular" ? NodeCoordinates::angular : NodeCoordinates::algebraic;
    rule.eps = flags_from_json(j.at("eps"));
    rule.poles = parameters_from_json(j.at("poles"));
    rule.exact_degree = j.at("degree_of_exactness").get<int>();
    const auto& parts = j.at("partitions");
    const auto& nodes = j.at("nodes");
    const auto& weights = j.at("weights");
    if (parts.size() != nodes.size() || parts.size() != weights.size())
      throw ConfigurationError("partitions, nodes and weights differ in length");
    rule.nodes.resize(static_cast<Eigen::Index>(parts.size()), rule.n);
    for (std::size_t i = 0; i < parts.size(); ++i) {
      rule.partitions.push_back(Partition::parse(parts[i].get<std::string>()));
      if (nodes[i].size() != static_cast<std::size_t>(rule.n))
        throw ConfigurationError("node " + std::to_string(i) + " has the wrong dimension");
      for (int c = 0; c < rule.n; ++c)
        rule.nodes(static_cast<Eigen::Index>(i), c) = nodes[i][static_cast<std::size_t>(c)].get<double>();
    }
    rule.weights = vector_from_json(weights);
    const auto& base = j.at("base_rule");
    rule.base_rule.nodes = vector_from_json(base.at("nodes"));
    rule.base_rule.weights = vector_from_json(base.at("weights"));
    rule.base_rule.lower = base.at("lower").get<double>();
    rule.base_rule.upper = base.at("upper").get<double>();
    rule.base_rule.exact_degree = base.at("degree_of_exactness").get<int>();
  } catch (const nlohmann::json::exception& e) {
    throw ConfigurationError(std::string("malformed cubature JSON: ") + e.what());
  }
  return rule;
}

std::string cubature_to_csv(const CubatureRule<double>& rule)
{
  std::ostringstream os;
  os << "partition";
  for (int j = 1; j <= rule.n; ++j)
    os << ",coord_" << j;
  os << ",weight\n";
  for (int i = 0; i < rule.size(); ++i) {
    os << '"' << rule.partitions[static_cast<std::size_t>(i)].to_string() << '"';
    for (double x : rule.node(i))
      os << ',' << format_number(x);
    os << ',' << format_number(rule.weights[i]) << '\n';
  }
  return os.str();
}

Json dxt_report_to_json(const DxtReport& r)
{
  return {{"eps", flags_json(r.eps)},
          {"eps_tilde", flags_json(r.eps_tilde)},
          {"m", r.m},
          {"name", r.name},
          {"orth_residual", r.orth_residual},
          {"eigen_residual", r.eigen_residual}};
}

void write_atomically(const std::string& path, const std::string& text)
{
  const std::string tmp = path + ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f)
      throw ConfigurationError("cannot open '" + tmp + "' for writing");
    f << text;
    if (!f)
      throw ConfigurationError("failed writing '" + tmp + "'");
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec)
    throw ConfigurationError("cannot move output into place at '" + path + "': " + ec.message());
}

} // namespace bsc::io
