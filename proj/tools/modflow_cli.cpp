// modflow command line front end.
//
//   modflow sf <model> ...      flow report for one modular element
//   modflow table <model> ...   equivariant chi-polynomial as CSV
//   modflow verify <suite> ...  identity suites with residual tables
//
// Exit codes: 0 ok, 1 numerical disagreement/failure, 2 input error.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <iostream>
#include <optional>
#include <random>
#include <string>

#include "modflow/cocycle.hpp"
#include "modflow/cuntz.hpp"
#include "modflow/fermion.hpp"
#include "modflow/runtime.hpp"
#include "modflow/spectral_flow.hpp"
#include "modflow/trace_table.hpp"

namespace {

using nlohmann::json;
using namespace modflow;

constexpr int kExitOk = 0;
constexpr int kExitNumerical = 1;
constexpr int kExitInput = 2;

// All floating output passes through here: 12 significant digits, parsed
// back so JSON consumers still see numbers.
double num12(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", x);
  return std::stod(buf);
}

std::string fmt12(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", x);
  return buf;
}

struct RunConfig {
  std::string model;  // cuntz | fermion | suq2 | table
  int n = 2;
  double lambda = 0.25;
  int modes = 4;
  double q = 0.5;
  int k = 1;
  std::string word;
  std::string table_path;
  std::string routes = "trace,laurent,residue";
  std::string format = "json";
  double tol = 1e-3;
  std::uint32_t seed = 1;
  int trials = 100;
  int max_word_len = 2;

  bool wants(const std::string& route) const {
    return routes.find(route) != std::string::npos;
  }
};

struct PreparedInput {
  flow::ModularTraceData data;
  std::optional<double> closed_form;
  std::optional<std::string> exact;  // "p/q" for word models
  std::string describe;
};

PreparedInput prepare_input(const RunConfig& cfg) {
  if (cfg.model == "cuntz") {
    cuntz::Model m(cfg.n);
    const auto w = cuntz::parse_word(cfg.word, cfg.n);
    const auto v = cuntz::word_element(m, w);
    PreparedInput out{flow::extract_trace_data(m, v), {}, {}, "cuntz n=" + std::to_string(cfg.n) + " " + cuntz::to_string(w)};
    const Rational exact = cuntz::exact_spectral_flow(m, v);
    out.exact = to_string(exact);
    out.closed_form =
        (double(w.beta.size()) - double(w.alpha.size())) *
        std::pow(double(cfg.n), -double(w.alpha.size()));
    return out;
  }
  if (cfg.model == "fermion") {
    fermion::Model m(cfg.modes, cfg.lambda);
    const auto v = fermion::parse_word(m, cfg.word);
    PreparedInput out{flow::extract_trace_data(m, v), {}, {},
                      "fermion modes=" + std::to_string(cfg.modes) +
                          " lambda=" + fmt12(cfg.lambda) + " " + cfg.word};
    // closed form for products of distinct unstarred generators
    bool distinct_product = true;
    {
      std::string tokens = cfg.word;
      if (tokens.find('*') != std::string::npos) distinct_product = false;
    }
    if (distinct_product && !v.is_zero() && v.min_degree() == v.max_degree() &&
        v.min_degree() >= 1) {
      const int deg = v.min_degree();
      out.closed_form = -double(deg) * std::pow(cfg.lambda, deg);
    }
    return out;
  }
  if (cfg.model == "suq2") {
    const auto iso = tables::suq2_isometry(cfg.q, cfg.k);
    return {flow::from_isometry(iso), tables::suq2_closed_form(cfg.q, cfg.k), {},
            "suq2 q=" + fmt12(cfg.q) + " k=" + std::to_string(cfg.k)};
  }
  if (cfg.model == "table") {
    const auto iso = tables::load_isometry_file(cfg.table_path);
    return {flow::from_isometry(iso), {}, {}, "table " + cfg.table_path};
  }
  throw std::invalid_argument("unknown model '" + cfg.model + "'");
}

json laurent_json(const LaurentPolynomial& p) {
  json arr = json::array();
  for (const auto& [n, c] : p.coeffs()) arr.push_back({{"n", n}, {"coeff", num12(c)}});
  return arr;
}

int cmd_sf(const RunConfig& cfg) {
  PreparedInput input = prepare_input(cfg);
  flow::SfOptions options;
  options.run_residue = cfg.wants("residue");
  const auto rep = flow::compute_report(input.data, options, input.closed_form);

  if (cfg.format == "json") {
    json doc;
    doc["schema"] = "modflow/1";
    doc["input"] = input.describe;
    doc["sf_trace"] = num12(rep.sf_trace);
    if (input.exact) {
      doc["sf_trace_exact"] = *input.exact;
      doc["sf_trace_exact_decimal"] = fmt12(rep.sf_trace);
    }
    doc["sf_laurent"] = laurent_json(rep.sf_laurent);
    doc["sf_laurent_at_exp_minus_beta"] = num12(rep.sf_laurent_at_exp_minus_beta);
    if (rep.sf_residue) {
      doc["sf_residue"] = num12(rep.sf_residue->value);
      doc["sf_residue_error"] = num12(rep.sf_residue->error);
      doc["eta_contribution"] = num12(rep.eta_contribution);
    }
    doc["kernel_correction"] = num12(rep.kernel_correction);
    if (rep.closed_form) {
      doc["closed_form"] = num12(*rep.closed_form);
      doc["closed_form_provenance"] =
          cfg.model == "suq2" ? "k q^2" : (cfg.model == "cuntz" ? "(|beta|-|alpha|) n^-|alpha|"
                                                                : "-n (1+e^beta)^-n");
      doc["closed_form_deviation"] = num12(*rep.closed_form_deviation);
    }
    doc["route_agreement"] = num12(rep.route_agreement);
    doc["extrapolation_dependent"] = rep.extrapolation_dependent;
    std::cout << doc.dump(2) << "\n";
  } else {
    std::cout << "field,value\n";
    std::cout << "sf_trace," << fmt12(rep.sf_trace) << "\n";
    if (input.exact) std::cout << "sf_trace_exact," << *input.exact << "\n";
    std::cout << "sf_laurent_at_exp_minus_beta," << fmt12(rep.sf_laurent_at_exp_minus_beta)
              << "\n";
    if (rep.sf_residue) {
      std::cout << "sf_residue," << fmt12(rep.sf_residue->value) << "\n";
      std::cout << "sf_residue_error," << fmt12(rep.sf_residue->error) << "\n";
      std::cout << "eta_contribution," << fmt12(rep.eta_contribution) << "\n";
    }
    std::cout << "kernel_correction," << fmt12(rep.kernel_correction) << "\n";
    if (rep.closed_form) std::cout << "closed_form," << fmt12(*rep.closed_form) << "\n";
    std::cout << "route_agreement," << fmt12(rep.route_agreement) << "\n";
  }

  const double allowed =
      rep.sf_residue ? std::max(cfg.tol, 10.0 * rep.sf_residue->error) : cfg.tol;
  return rep.route_agreement <= allowed ? kExitOk : kExitNumerical;
}

int cmd_table(const RunConfig& cfg) {
  PreparedInput input = prepare_input(cfg);
  const auto poly = flow::sf_equivariant(input.data);
  const double at = input.data.chi();
  std::cout << "n,coefficient\n";
  for (const auto& [n, c] : poly.coeffs()) std::cout << n << "," << fmt12(c) << "\n";
  std::cout << "eval@" << fmt12(at) << "," << fmt12(poly.empty() ? 0.0 : poly.evaluate(at))
            << "\n";
  return kExitOk;
}

// ---------------------------------------------------------------------------
// verify suites
// ---------------------------------------------------------------------------

struct SuiteResult {
  json rows = json::array();
  bool ok = true;

  void add(const std::string& name, double residual, double bound) {
    const bool pass = residual <= bound;
    ok = ok && pass;
    rows.push_back({{"case", name},
                    {"residual", num12(residual)},
                    {"bound", num12(bound)},
                    {"pass", pass}});
  }
};

void print_suite(const std::string& name, const SuiteResult& res, const RunConfig& cfg) {
  if (cfg.format == "json") {
    json doc;
    doc["schema"] = "modflow/1";
    doc["suite"] = name;
    doc["cases"] = res.rows;
    doc["pass"] = res.ok;
    std::cout << doc.dump(2) << "\n";
  } else {
    std::cout << "case,residual,bound,pass\n";
    for (const auto& row : res.rows)
      std::cout << row["case"].get<std::string>() << ","
                << fmt12(row["residual"].get<double>()) << ","
                << fmt12(row["bound"].get<double>()) << ","
                << (row["pass"].get<bool>() ? "1" : "0") << "\n";
    std::cout << "suite " << name << ": " << (res.ok ? "PASS" : "FAIL") << "\n";
  }
}

cuntz::Word random_cuntz_word(std::mt19937& rng, int n, int max_len) {
  cuntz::Word w;
  for (int i = int(rng() % unsigned(max_len + 1)); i > 0; --i)
    w.alpha.push_back(int(rng() % unsigned(n)) + 1);
  for (int i = int(rng() % unsigned(max_len + 1)); i > 0; --i)
    w.beta.push_back(int(rng() % unsigned(n)) + 1);
  return w;
}

fermion::Element random_fermion_monomial(const fermion::Model& m, std::mt19937& rng,
                                         int max_factors) {
  auto acc = fermion::Element::unit(m);
  const int count = 1 + int(rng() % unsigned(max_factors));
  for (int i = 0; i < count; ++i) {
    auto g = fermion::generator_element(m, 1 + int(rng() % unsigned(m.modes())));
    if (rng() % 2) g = adj(m, g);
    acc = mul(m, acc, g);
  }
  return acc;
}

int verify_kms(const RunConfig& cfg) {
  SuiteResult res;
  std::mt19937 rng(cfg.seed);
  if (cfg.model == "fermion" || cfg.model == "all") {
    fermion::Model m(cfg.modes, cfg.lambda);
    for (int t = 0; t < cfg.trials; ++t) {
      const auto a = random_fermion_monomial(m, rng, 4);
      const auto b = random_fermion_monomial(m, rng, 4);
      res.add("fermion pair " + std::to_string(t), kms_identity_residual(m, a, b), 1e-10);
    }
  }
  if (cfg.model == "cuntz" || cfg.model == "all") {
    cuntz::Model m(cfg.n);
    for (int t = 0; t < cfg.trials; ++t) {
      const auto a = cuntz::word_element(m, random_cuntz_word(rng, cfg.n, 3));
      const auto b = cuntz::word_element(m, random_cuntz_word(rng, cfg.n, 3));
      res.add("cuntz pair " + std::to_string(t), kms_identity_residual(m, a, b), 1e-10);
    }
  }
  print_suite("kms", res, cfg);
  return res.ok ? kExitOk : kExitNumerical;
}

int verify_cocycle(const RunConfig& cfg) {
  SuiteResult res;
  std::mt19937 rng(cfg.seed);
  cuntz::Model oc(cfg.n);
  for (int t = 0; t < cfg.trials; ++t) {
    const auto a0 = cuntz::word_element(oc, random_cuntz_word(rng, cfg.n, 3));
    const auto a1 = cuntz::word_element(oc, random_cuntz_word(rng, cfg.n, 3));
    const auto a2 = cuntz::word_element(oc, random_cuntz_word(rng, cfg.n, 3));
    const auto b_val = cocycle::phi1_exact(oc, mul(oc, a0, a1), a2) -
                       cocycle::phi1_exact(oc, a0, mul(oc, a1, a2)) +
                       cocycle::phi1_exact(oc, mul(oc, twist(oc, a2), a0), a1);
    res.add("b phi1 cuntz " + std::to_string(t), b_val.magnitude1(), 0.0);
  }
  fermion::Model fm(cfg.modes, cfg.lambda);
  const auto psi = cocycle::psi_cochain(fm);
  const auto B = cocycle::connes_B(fm, psi);
  for (int t = 0; t < cfg.trials; ++t) {
    const auto a0 = random_fermion_monomial(fm, rng, 4);
    const auto a1 = random_fermion_monomial(fm, rng, 4);
    res.add("cyclicity fermion " + std::to_string(t),
            cocycle::cyclicity_residual(fm, a0, a1), 1e-10);
    if (t < 20)
      res.add("B psi fermion " + std::to_string(t), std::abs(B.eval({a0}, 0.75)), 1e-10);
  }
  print_suite("cocycle", res, cfg);
  return res.ok ? kExitOk : kExitNumerical;
}

int verify_routes(const RunConfig& cfg) {
  SuiteResult res;
  if (cfg.model == "cuntz" || cfg.model == "all") {
    cuntz::Model m(cfg.n);
    std::vector<std::vector<int>> lists{{}};
    for (std::size_t i = 0; i < lists.size(); ++i) {
      if (int(lists[i].size()) >= cfg.max_word_len) continue;
      for (int g = 1; g <= cfg.n; ++g) {
        auto copy = lists[i];
        copy.push_back(g);
        lists.push_back(copy);
      }
    }
    for (const auto& a : lists) {
      for (const auto& b : lists) {
        const cuntz::Word w{a, b};
        const auto v = cuntz::word_element(m, w);
        const auto rep = flow::compute_report(flow::extract_trace_data(m, v));
        res.add("cuntz " + cuntz::to_string(w), rep.route_agreement,
                std::max(cfg.tol, 10.0 * rep.sf_residue->error));
      }
    }
  }
  if (cfg.model == "fermion" || cfg.model == "all") {
    fermion::Model m(cfg.modes, cfg.lambda);
    for (int mask = 1; mask < (1 << cfg.modes); ++mask) {
      auto v = fermion::Element::unit(m);
      for (int j = 1; j <= cfg.modes; ++j)
        if (mask & (1 << (j - 1))) v = mul(m, v, fermion::generator_element(m, j));
      const auto rep = flow::compute_report(flow::extract_trace_data(m, v));
      res.add("fermion mask " + std::to_string(mask), rep.route_agreement,
              std::max(cfg.tol, 10.0 * rep.sf_residue->error));
    }
  }
  if (cfg.model == "suq2" || cfg.model == "all") {
    for (int k = 1; k <= cfg.k; ++k) {
      const auto rep = flow::compute_report(flow::from_isometry(tables::suq2_isometry(cfg.q, k)),
                                            {}, tables::suq2_closed_form(cfg.q, k));
      res.add("suq2 k=" + std::to_string(k), rep.route_agreement,
              std::max(cfg.tol, 10.0 * rep.sf_residue->error));
    }
  }
  print_suite("routes", res, cfg);
  return res.ok ? kExitOk : kExitNumerical;
}

int verify_dixmier(const RunConfig& cfg) {
  SuiteResult res;
  {
    fermion::Model m(1, cfg.lambda);
    const auto g = fermion::generator_element(m, 1);
    const auto a = mul(m, g, adj(m, g));
    const auto lim = cocycle::dixmier_limit(m, a);
    res.add("fermion a1 a1* vs 2 phi", std::abs(lim.value - 2.0 * cfg.lambda), 1e-3);
  }
  {
    cuntz::Model m(cfg.n);
    const auto a = cuntz::word_element(m, cuntz::Word{{1}, {1}});
    const auto lim = cocycle::dixmier_limit(m, a);
    res.add("cuntz S1 S1* vs 2 phi", std::abs(lim.value - 2.0 / double(cfg.n)), 1e-3);
  }
  print_suite("dixmier", res, cfg);
  return res.ok ? kExitOk : kExitNumerical;
}

int verify_modular(const RunConfig& cfg) {
  SuiteResult res;
  fermion::Model m(cfg.modes, cfg.lambda);
  const auto a1 = fermion::generator_element(m, 1);
  {
    const auto v = add(m, a1, adj(m, a1));
    const auto rep = classify_modular(m, v, 1e-10);
    res.add("a1 + a1* modular", rep.is_modular ? rep.max_violation : 1.0, 1e-10);
    // invariance oracle
    double worst = 0.0;
    for (double t : {0.3, 1.1, 2.7}) {
      const auto w = mul(m, v, gauge_rotate(m, adj(m, v), t));
      for (const auto& [k, c] : w.parts())
        if (k != 0) worst = std::max(worst, m.norm(c));
    }
    res.add("a1 + a1* gauge invariance oracle", worst, 1e-10);
  }
  {
    Mat2Model<fermion::Model> m2(m);
    const auto u = doubling_unitary(m2, a1);
    const auto rep = classify_modular(m2, u, 1e-10);
    res.add("doubling unitary modular", rep.is_modular ? rep.max_violation : 1.0, 1e-10);
  }
  {
    const auto bad = add(m, a1, mul(m, fermion::generator_element(m, 2),
                                    adj(m, fermion::generator_element(m, 2))));
    const auto rep = classify_modular(m, bad, 1e-10);
    res.add("overlapping sources rejected", rep.is_modular ? 1.0 : 0.0, 0.5);
  }
  print_suite("modular", res, cfg);
  return res.ok ? kExitOk : kExitNumerical;
}

int verify_inequality(const RunConfig& cfg) {
  SuiteResult res;
  {
    const auto iso = tables::suq2_isometry(cfg.q, cfg.k);
    double worst = 0.0;
    const double tau = iso.range.tau();
    for (long n = -20; n <= 20; ++n) {
      const double bound = std::exp(double(n) * iso.range.beta()) * tau;
      worst = std::max(worst, iso.range.value(n) - bound * (1.0 + 1e-12));
    }
    res.add("suq2 trace bound over [-20,20]", std::max(worst, 0.0), 0.0);
  }
  {
    fermion::Model m(cfg.modes, cfg.lambda);
    const auto g = fermion::generator_element(m, 1);
    const auto f = mul(m, g, adj(m, g));
    double worst = 0.0;
    for (long n = -10; n <= 10; ++n) {
      const double lhs = fermion::spectral_trace(m, f, n);
      const double rhs = std::exp(double(n) * m.beta()) * cfg.lambda;
      worst = std::max(worst, std::abs(lhs - rhs));
    }
    res.add("fermion full-subspace equality", worst, 1e-12);
  }
  {
    bool rejected = false;
    try {
      tables::SpectralTraceTable(std::log(2.0), {{0, 1.0}, {1, 3.0}},
                                 {tables::TailRule::Kind::Zero, {}, {}});
    } catch (const std::invalid_argument&) {
      rejected = true;
    }
    res.add("violating table rejected at load", rejected ? 0.0 : 1.0, 0.0);
  }
  print_suite("inequality", res, cfg);
  return res.ok ? kExitOk : kExitNumerical;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"modular spectral flow toolkit"};
  app.require_subcommand(1);

  RunConfig cfg;

  auto add_model_options = [&cfg](CLI::App* cmd, bool with_word) {
    cmd->add_option("--n", cfg.n, "generator count of O_n")->check(CLI::Range(2, 16));
    cmd->add_option("--lambda", cfg.lambda, "fermion state parameter in (0, 1/2)");
    cmd->add_option("--modes", cfg.modes, "fermion mode count")->check(CLI::Range(1, 10));
    cmd->add_option("--q", cfg.q, "deformation parameter in (0,1)");
    cmd->add_option("--k", cfg.k, "isometry index k >= 1");
    if (with_word) cmd->add_option("--word", cfg.word, "word literal");
    cmd->add_option("--table", cfg.table_path, "trace table JSON path");
    cmd->add_option("--routes", cfg.routes, "comma list: trace,laurent,residue");
    cmd->add_option("--format", cfg.format, "json | csv")
        ->check(CLI::IsMember({"json", "csv"}));
    cmd->add_option("--tol", cfg.tol, "route agreement tolerance");
    cmd->add_option("--seed", cfg.seed, "sampling seed");
    cmd->add_option("--trials", cfg.trials, "sample count");
    cmd->add_option("--max-word-len", cfg.max_word_len, "word length cap for sweeps");
  };

  std::string sf_model, table_model, suite;
  auto* sf = app.add_subcommand("sf", "spectral flow of one modular element");
  sf->add_option("model", sf_model, "cuntz | fermion | suq2 | table")->required();
  add_model_options(sf, true);

  auto* table = app.add_subcommand("table", "equivariant chi-polynomial as CSV");
  table->add_option("model", table_model, "cuntz | fermion | suq2 | table")->required();
  add_model_options(table, true);

  auto* verify = app.add_subcommand("verify", "identity suites");
  verify->add_option("suite", suite, "kms | cocycle | routes | dixmier | modular | inequality")
      ->required();
  verify->add_option("--model", cfg.model, "model filter (cuntz|fermion|suq2|all)");
  add_model_options(verify, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInput;
  }

  try {
    if (sf->parsed()) {
      cfg.model = sf_model;
      return cmd_sf(cfg);
    }
    if (table->parsed()) {
      cfg.model = table_model;
      return cmd_table(cfg);
    }
    if (verify->parsed()) {
      if (cfg.model.empty()) cfg.model = "all";
      if (suite == "kms") return verify_kms(cfg);
      if (suite == "cocycle") return verify_cocycle(cfg);
      if (suite == "routes") return verify_routes(cfg);
      if (suite == "dixmier") return verify_dixmier(cfg);
      if (suite == "modular") return verify_modular(cfg);
      if (suite == "inequality") return verify_inequality(cfg);
      std::cerr << "unknown suite '" << suite << "'\n";
      return kExitInput;
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::exception& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return kExitNumerical;
  }
  return kExitInput;
}
