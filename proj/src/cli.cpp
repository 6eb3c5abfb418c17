#include "bsc/cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <sstream>

#include "bsc/identities.hpp"
#include "bsc/io.hpp"
#include "bsc/lifting.hpp"
#include "bsc/oracle.hpp"
#include "bsc/quadrature.hpp"
#include "bsc/trig_transforms.hpp"

namespace bsc::cli {

namespace {

using io::Json;

struct Options {
  std::string eps = "0,0";
  std::string eps_tilde = "0,0";
  std::string poles;
  std::string aux;
  int m = -1;
  int n = 1;
  std::vector<std::string> terms;
  std::string basis = "schur";
  bool check = false;
  double tol = -1;
  std::string output = "json";
  std::string out_file;
  int cb_instances = 1000;
  int andreief_instances = 200;
  std::uint64_t seed = 20200601;
};

class CheckFailed : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

ParameterSetd parameters(const std::string& text, const char* what, std::ostream& err)
{
  auto parsed = io::parse_parameters(text);
  for (const auto& z : parsed.completed)
    err << "warning: " << what << " (" << z.real() << "," << z.imag()
        << ") given without its conjugate; conjugate appended\n";
  return ParameterSetd(parsed.values);
}

QuadratureSpecd make_spec(const Options& o, std::ostream& err)
{
  QuadratureSpecd spec;
  spec.eps = io::parse_flags(o.eps);
  spec.eps_tilde = io::parse_flags(o.eps_tilde);
  spec.poles = parameters(o.poles, "pole", err);
  spec.aux = parameters(o.aux, "auxiliary parameter", err);
  spec.m = o.m;
  return spec;
}

SymmetricIntegrand<double> make_integrand(const Options& o, const ParameterSetd& poles)
{
  SymmetricBasis basis;
  if (o.basis == "schur")
    basis = SymmetricBasis::schur;
  else if (o.basis == "monomial")
    basis = SymmetricBasis::monomial;
  else
    throw ConfigurationError("--basis must be 'schur' or 'monomial', got '" + o.basis + "'");
  if (o.terms.empty())
    throw ConfigurationError("integrate needs at least one --f term");
  SymmetricIntegrand<double> f(o.n, basis, poles);
  for (const auto& t : o.terms) {
    auto [mu, c] = io::parse_term(t);
    f.add_term(mu, c);
  }
  return f;
}

/// Relative error, or absolute error when the reference is below 1e-3 in magnitude.
double relative_error(double value, double reference)
{
  const double diff = std::abs(value - reference);
  return std::abs(reference) < 1e-3 ? diff : diff / std::abs(reference);
}

std::string render_rows(const std::vector<std::pair<std::string, std::string>>& rows)
{
  std::string s = "field,value\n";
  for (const auto& [k, v] : rows)
    s += k + "," + v + "\n";
  return s;
}

std::string cmd_rule(const Options& o, const std::string& command, std::ostream& err)
{
  const auto spec = make_spec(o, err);
  spec.validate();
  const auto rule = build_quadrature(spec);
  const bool with_weights = command == "weights";
  if (o.output == "csv")
    return io::quadrature_to_csv(rule, with_weights);
  Json j;
  j["command"] = command;
  const Json body = io::quadrature_to_json(rule, with_weights);
  for (const auto& [k, v] : body.items())
    j[k] = v;
  return j.dump(2) + "\n";
}

std::string cmd_cubature(const Options& o, std::ostream& err)
{
  const auto spec = make_spec(o, err);
  const auto rule = jacobi_cubature(spec, o.n);
  if (o.output == "csv")
    return io::cubature_to_csv(rule);
  Json j;
  j["command"] = "cubature";
  j["spec"] = io::spec_to_json(spec);
  const Json body = io::cubature_to_json(rule);
  for (const auto& [k, v] : body.items())
    j[k] = v;
  return j.dump(2) + "\n";
}

std::string cmd_integrate(const Options& o, std::ostream& err, bool& passed)
{
  const auto spec = make_spec(o, err);
  const auto rule = jacobi_cubature(spec, o.n);
  const auto integrand = make_integrand(o, spec.poles);
  const auto result = apply_cubature(rule, integrand);
  if (result.degree_exceeded)
    err << "warning: integrand degree " << integrand.max_degree() << " exceeds the degree of exactness "
        << rule.exact_degree << "; the value is not guaranteed exact\n";

  std::vector<std::pair<std::string, std::string>> rows{{"value", io::format_number(result.value)}};
  Json j;
  j["command"] = "integrate";
  j["spec"] = io::spec_to_json(spec);
  j["spec"]["n"] = o.n;
  j["degree_of_exactness"] = rule.exact_degree;
  j["value"] = result.value;
  j["degree_exceeded"] = result.degree_exceeded;
  if (o.check) {
    const double oracle_value = oracle::jacobi_integral(integrand, spec.eps);
    const double rel = relative_error(result.value, oracle_value);
    const double tol = o.tol > 0 ? o.tol : 1e-9;
    passed = rel < tol;
    j["oracle"] = oracle_value;
    j["relative_error"] = rel;
    j["passed"] = passed;
    rows.emplace_back("oracle", io::format_number(oracle_value));
    rows.emplace_back("relative_error", io::format_number(rel));
    rows.emplace_back("passed", passed ? "true" : "false");
  }
  return o.output == "csv" ? render_rows(rows) : j.dump(2) + "\n";
}

std::string cmd_verify_dxt(const Options& o, bool& passed)
{
  if (o.m < 1)
    throw ConfigurationError("verify-dxt needs -m >= 1");
  const double tol = o.tol > 0 ? o.tol : 1e-12;
  Json rows = Json::array();
  std::string csv = "eps_plus,eps_minus,eps_tilde_plus,eps_tilde_minus,name,orth_residual,eigen_residual\n";
  passed = true;
  for (const auto& [eps, eps_tilde] : all_flag_combinations()) {
    const auto r = verify_dxt(eps, eps_tilde, o.m);
    passed = passed && r.orth_residual < tol && r.eigen_residual < tol;
    rows.push_back(io::dxt_report_to_json(r));
    csv += std::to_string(eps.plus) + "," + std::to_string(eps.minus) + "," + std::to_string(eps_tilde.plus) +
           "," + std::to_string(eps_tilde.minus) + "," + r.name + "," + io::format_number(r.orth_residual) +
           "," + io::format_number(r.eigen_residual) + "\n";
  }
  if (o.output == "csv")
    return csv;
  Json j;
  j["command"] = "verify-dxt";
  j["m"] = o.m;
  j["tolerance"] = tol;
  j["residuals"] = std::move(rows);
  j["passed"] = passed;
  return j.dump(2) + "\n";
}

std::string cmd_verify_identities(const Options& o, bool& passed)
{
  const double tol = o.tol > 0 ? o.tol : 1e-10;
  const std::vector<identities::SuiteResult> suites = {
      identities::cauchy_binet_suite(o.cb_instances, o.seed),
      identities::discrete_andreief_suite(o.andreief_instances, o.seed + 1),
      identities::continuous_andreief_suite(),
  };
  // the continuous suite compares two quadrature-based integrals; it is held to 1e-9
  auto threshold = [&](const identities::SuiteResult& s) {
    return s.name == "continuous_andreief" ? std::max(tol, 1e-9) : tol;
  };
  passed = true;
  Json rows = Json::array();
  std::string csv = "suite,instances,max_residual,tolerance,passed\n";
  for (const auto& s : suites) {
    const bool ok = s.max_residual < threshold(s);
    passed = passed && ok;
    rows.push_back({{"suite", s.name},
                    {"instances", s.instances},
                    {"max_residual", s.max_residual},
                    {"tolerance", threshold(s)},
                    {"passed", ok}});
    csv += s.name + "," + std::to_string(s.instances) + "," + io::format_number(s.max_residual) + "," +
           io::format_number(threshold(s)) + "," + (ok ? "true" : "false") + "\n";
  }
  if (o.output == "csv")
    return csv;
  Json j;
  j["command"] = "verify-identities";
  j["seed"] = o.seed;
  j["residuals"] = std::move(rows);
  j["passed"] = passed;
  return j.dump(2) + "\n";
}

void add_spec_options(CLI::App* cmd, Options& o, bool with_dimension)
{
  cmd->add_option("--eps", o.eps, "density flags eps_+,eps_-")->capture_default_str();
  cmd->add_option("--eps-tilde", o.eps_tilde, "auxiliary flags eps~_+,eps~_-")->capture_default_str();
  cmd->add_option("--poles", o.poles, "poles a1;a2;... each 're' or 're,im'");
  cmd->add_option("--aux", o.aux, "auxiliary parameters, same syntax as --poles");
  cmd->add_option("-m", o.m, "rule order")->required();
  if (with_dimension)
    cmd->add_option("-n", o.n, "number of variables")->capture_default_str();
}

void add_output_options(CLI::App* cmd, Options& o)
{
  cmd->add_option("--output", o.output, "report format")->check(CLI::IsMember({"json", "csv"}))->capture_default_str();
  cmd->add_option("--out", o.out_file, "write the report to FILE instead of stdout");
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
  Options o;
  CLI::App app{"Bernstein-Szego quadrature and unitary Jacobi ensemble cubature"};
  app.require_subcommand(1);

  auto* nodes = app.add_subcommand("nodes", "nodes of the one-dimensional rule");
  auto* weights = app.add_subcommand("weights", "nodes and Christoffel weights of the one-dimensional rule");
  auto* cubature = app.add_subcommand("cubature", "partition-indexed cubature nodes and weights");
  auto* integrate = app.add_subcommand("integrate", "apply the cubature to a symmetric integrand");
  auto* vdxt = app.add_subcommand("verify-dxt", "DCT/DST kernel orthogonality and eigenrelation residuals");
  auto* vid = app.add_subcommand("verify-identities", "Cauchy-Binet and Andreief identity suites");

  for (auto* c : {nodes, weights})
    add_spec_options(c, o, false);
  for (auto* c : {cubature, integrate})
    add_spec_options(c, o, true);
  integrate->add_option("--f", o.terms, "term 'l1,l2,...:coeff' (repeatable)")->required();
  integrate->add_option("--basis", o.basis, "basis of the --f terms: schur or monomial")->capture_default_str();
  integrate->add_flag("--check", o.check, "compare with the moment-determinant oracle");
  integrate->add_option("--tol", o.tol, "pass threshold for --check (default 1e-9)");
  vdxt->add_option("-m", o.m, "kernel order (size m+1)")->required();
  vdxt->add_option("--tol", o.tol, "residual threshold (default 1e-12)");
  vid->add_option("--tol", o.tol, "residual threshold (default 1e-10)");
  vid->add_option("--cauchy-binet", o.cb_instances, "random Cauchy-Binet instances")->capture_default_str();
  vid->add_option("--andreief", o.andreief_instances, "random discrete Andreief instances")->capture_default_str();
  vid->add_option("--seed", o.seed, "random seed")->capture_default_str();
  for (auto* c : {nodes, weights, cubature, integrate, vdxt, vid})
    add_output_options(c, o);

  std::vector<std::string> argv_store{"bscubature"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& s : argv_store)
    argv.push_back(s.data());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    std::ostringstream os;
    app.exit(e, os, err);
    return kInvalidConfig;
  }

  try {
    bool passed = true;
    std::string report;
    if (nodes->parsed())
      report = cmd_rule(o, "nodes", err);
    else if (weights->parsed())
      report = cmd_rule(o, "weights", err);
    else if (cubature->parsed())
      report = cmd_cubature(o, err);
    else if (integrate->parsed())
      report = cmd_integrate(o, err, passed);
    else if (vdxt->parsed())
      report = cmd_verify_dxt(o, passed);
    else
      report = cmd_verify_identities(o, passed);

    if (o.out_file.empty())
      out << report;
    else
      io::write_atomically(o.out_file, report);
    return passed ? kOk : kCheckFailed;
  } catch (const ConvergenceError& e) {
    err << "error: " << e.what() << "\n";
    return kConvergenceFailure;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kInvalidConfig;
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << "\n";
    return kInvalidConfig;
  }
}

} // namespace bsc::cli
