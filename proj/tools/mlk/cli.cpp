#include "cli.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <random>
#include <sstream>

#include <openssl/evp.h>

#include "CLI11.hpp"
#include "json.hpp"
#include "mlk/bounds.hpp"
#include "mlk/lattice.hpp"
#include "mlk/oracle.hpp"
#include "mlk/sampling.hpp"
#include "mlk/siegel.hpp"

#ifndef MLK_VERSION
#define MLK_VERSION "unknown"
#endif

namespace mlk::cli {

namespace {

using nlohmann::json;

// ---------------------------------------------------------------------------
// Input

void RequireOnly(json const& object, std::initializer_list<std::string_view> allowed,
                 std::string const& where) {
  for (auto const& [key, value] : object.items()) {
    bool known = false;
    for (std::string_view a : allowed) known = known || key == a;
    if (!known) throw ParseError(where + ": unknown field '" + key + "'");
  }
}

std::int64_t Integer(json const& v, std::string const& where) {
  if (!v.is_number_integer()) throw ParseError(where + " must be an integer");
  return v.get<std::int64_t>();
}

double Real(json const& v, std::string const& where) {
  if (!v.is_number()) throw ParseError(where + " must be a number");
  return v.get<double>();
}

Eigen::MatrixXd Matrix(json const& v, int g, std::string const& where) {
  if (!v.is_array() || static_cast<int>(v.size()) != g) {
    throw ParseError(where + " must be an array of " + std::to_string(g) + " rows");
  }
  Eigen::MatrixXd m(g, g);
  for (int i = 0; i < g; ++i) {
    json const& row = v[i];
    if (!row.is_array() || static_cast<int>(row.size()) != g) {
      throw ParseError(where + " row " + std::to_string(i) + " must have " + std::to_string(g) +
                       " entries");
    }
    for (int j = 0; j < g; ++j) {
      m(i, j) = Real(row[j], where + "[" + std::to_string(i) + "][" + std::to_string(j) + "]");
    }
  }
  return m;
}

std::string ReadFile(std::string const& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot read '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

// ---------------------------------------------------------------------------
// Output

double Finite(double v) {
  if (!std::isfinite(v)) throw std::runtime_error("non-finite value in report");
  return v;
}

json Header(std::string_view command, std::string const& digest) {
  return json{{"tool", "mlk"},
              {"version", MLK_VERSION},
              {"command", command},
              {"input_sha256", digest}};
}

void Emit(json const& report, std::ostream& out) { out << report.dump(2) << '\n'; }

// ---------------------------------------------------------------------------
// Turning documents into library objects

EmbeddingSet BuildEmbeddings(InputDocument const& doc) {
  std::vector<PeriodMatrix> periods;
  for (std::size_t i = 0; i < doc.embeddings.size(); ++i) {
    try {
      periods.push_back(ValidatePeriodMatrix(doc.embeddings[i].re, doc.embeddings[i].im));
    } catch (std::invalid_argument const& e) {
      throw InputError("embedding " + std::to_string(i) + ": " + e.what());
    }
  }
  int const degree = doc.degree.value_or(static_cast<int>(periods.size()));
  if (static_cast<int>(periods.size()) < degree) {
    throw InputError("incomplete embedding data: " + std::to_string(periods.size()) +
                     " period matrices for degree " + std::to_string(degree));
  }
  try {
    return EmbeddingSet(degree, std::move(periods));
  } catch (std::invalid_argument const& e) {
    throw InputError(e.what());
  }
}

struct Options {
  double epsilon = kDefaultEpsilon;
  QuadratureBudget budget;
};

Options ResolveOptions(InputDocument const* doc, std::optional<double> epsilon,
                       std::optional<std::int64_t> budget) {
  Options o;
  if (doc != nullptr) {
    if (doc->epsilon) o.epsilon = *doc->epsilon;
    if (doc->budget) budget = budget.value_or(*doc->budget);
    if (doc->scheme) o.budget.scheme = *doc->scheme;
  }
  if (epsilon) o.epsilon = *epsilon;
  if (!(o.epsilon > 0 && o.epsilon < 1)) throw ParseError("epsilon must lie in (0, 1)");
  if (budget) {
    if (o.budget.scheme == Scheme::kQmcShifted) {
      if (*budget < 1) throw ParseError("budget must be ≥ 1");
      o.budget.qmc_points = *budget;
    } else {
      if (*budget < 1 || *budget > 256) {
        throw ParseError("tensor-gauss budget (nodes per axis) must lie in [1, 256]");
      }
      o.budget.nodes = static_cast<int>(*budget);
    }
  }
  return o;
}

// ---------------------------------------------------------------------------
// Commands

int CmdBound(InputDocument const& doc, std::string const& digest, Options const& options,
             std::ostream& out) {
  EmbeddingSet const e = BuildEmbeddings(doc);
  BoundReport const report = MatrixLemmaBound(e, options.epsilon);
  json result = Header("bound", digest);
  result["g"] = e.dim();
  result["degree"] = e.degree();
  result["epsilon"] = Finite(report.epsilon);
  result["kappa"] = Finite(report.kappa);
  json embeddings = json::array();
  for (std::size_t i = 0; i < report.per_embedding.size(); ++i) {
    EmbeddingTerm const& t = report.per_embedding[i];
    embeddings.push_back({{"index", i},
                          {"rho", Finite(t.rho)},
                          {"rho_clamped", Finite(t.rho_clamped)},
                          {"term", Finite(t.term)}});
  }
  result["embeddings"] = embeddings;
  result["clamped_count"] = report.clamped_count;
  result["thm11_total"] = Finite(report.matrix_lemma_total);
  result["cor14_total"] = Finite(report.simplified_total);
  Emit(result, out);
  return kExitOk;
}

int CmdRho(InputDocument const& doc, std::string const& digest, std::ostream& out) {
  EmbeddingSet const e = BuildEmbeddings(doc);
  json result = Header("rho", digest);
  result["g"] = e.dim();
  result["degree"] = e.degree();
  json embeddings = json::array();
  for (std::size_t i = 0; i < e.periods().size(); ++i) {
    PeriodMatrix const& omega = e.periods()[i];
    ClampedMinimum const c = LambdaClamped(omega);
    embeddings.push_back({{"index", i},
                          {"rho", Finite(c.rho)},
                          {"rho_clamped", Finite(c.rho_clamped)},
                          {"lambda", Finite(c.lambda)},
                          {"lemma32_ok", c.lambda_equals_rho},
                          {"re_normalized", omega.flags().re_normalized},
                          {"im_lll", omega.flags().im_lll},
                          {"lambda1_ok", omega.flags().lambda1_ok}});
  }
  result["embeddings"] = embeddings;
  Emit(result, out);
  return kExitOk;
}

struct Check {
  std::string suite;
  std::string name;
  int index = 0;
  double lhs = 0;
  double rhs = 0;
  double slack = 0;
  double tolerance = 0;
  bool pass() const { return std::isfinite(slack) && slack >= -tolerance; }
};

Check FromEntry(std::string suite, int index, ChainEntry const& entry) {
  return {std::move(suite), entry.name, index, entry.lhs, entry.rhs, entry.slack, entry.tolerance};
}

// What a verify run works on: matrices from a file, or random draws.
struct VerifySource {
  InputDocument const* doc = nullptr;
  std::int64_t random_count = 0;
  int dim = 1;
  std::uint64_t seed = 0;
};

constexpr double kLatticeTolerance = 1e-9;
constexpr double kOracleTolerance = 1e-10;

std::vector<GramMatrix> LatticeInputs(VerifySource const& source, bool reduced) {
  std::vector<GramMatrix> result;
  if (source.doc != nullptr) {
    EmbeddingSet const e = BuildEmbeddings(*source.doc);
    for (PeriodMatrix const& omega : e.periods()) result.push_back(omega.im());
    return result;
  }
  std::mt19937_64 rng(source.seed);
  for (std::int64_t i = 0; i < source.random_count; ++i) {
    result.push_back(reduced ? RandomReducedPeriodMatrix(source.dim, rng).im()
                             : GramMatrix(RandomSpd(source.dim, rng)));
  }
  return result;
}

void LatticeSuite(VerifySource const& source, std::vector<Check>& checks) {
  std::vector<GramMatrix> const inputs = LatticeInputs(source, false);
  for (std::size_t i = 0; i < inputs.size(); ++i) {
    GramMatrix const& y = inputs[i];
    int const index = static_cast<int>(i);
    double const dual_min = ShortestVector(y.Inverse()).length;
    DeepPoint const p = BezoutDeepPoint(y);
    double const product = 2 * ClosestVector(y, p.x).length * dual_min;
    checks.push_back({"lattice", "bezout_deep_point", index, product, 1, product - 1,
                      kLatticeTolerance});
    IntervalEstimate const mu = MuInterval(y);
    checks.push_back({"lattice", "mu_enclosure", index, mu.hi, mu.lo, mu.hi - mu.lo, 0});
    double const lo_product = 2 * mu.lo * dual_min;
    checks.push_back({"lattice", "mu_lower_bound", index, lo_product, 1, lo_product - 1,
                      kLatticeTolerance});
  }
}

void IntegralsSuite(VerifySource const& source, Options const& options, std::vector<Check>& checks) {
  std::vector<GramMatrix> const inputs = LatticeInputs(source, true);
  for (std::size_t i = 0; i < inputs.size(); ++i) {
    GramMatrix const& y = inputs[i];
    int const g = y.dim();
    int const index = static_cast<int>(i);
    QuadratureBudget const budget = DefaultBudgetFor(g, options.budget);

    QuadratureResult const psi = IntegralPsiSquared(y, budget);
    double const lo = MuInterval(y).lo;
    checks.push_back(FromEntry("integrals", index,
                               MakeEntry("psi_sq_vs_mu", psi.value, lo * lo / 3,
                                         psi.value - lo * lo / 3, psi.error_estimate)));
    for (double t : {0.5, 1.0, 2.0, 4.0}) {
      QuadratureResult const r = IntegralLogF(y, t, budget);
      double const rhs = -0.5 * g * std::log(t);
      std::ostringstream name;
      name << "log_f_vs_t_" << t;
      checks.push_back(FromEntry(
          "integrals", index, MakeEntry(name.str(), r.value, rhs, rhs - r.value, r.error_estimate)));
    }
    double const lambda = std::min(ShortestVector(y.Inverse()).length, ClampRadius(g));
    QuadratureResult const at_two = IntegralLogF(y, 2, budget);
    double const rhs = LogFIntegralBound(lambda, g);
    checks.push_back(FromEntry("integrals", index,
                               MakeEntry("log_f_vs_lambda", at_two.value, rhs, rhs - at_two.value,
                                         at_two.error_estimate)));
  }
}

void ChainSuite(VerifySource const& source, Options const& options, std::vector<Check>& checks) {
  std::vector<EmbeddingSet> sets;
  if (source.doc != nullptr) {
    sets.push_back(BuildEmbeddings(*source.doc));
  } else {
    std::mt19937_64 rng(source.seed);
    for (std::int64_t i = 0; i < source.random_count; ++i) {
      sets.emplace_back(1, std::vector<PeriodMatrix>{RandomReducedPeriodMatrix(source.dim, rng)});
    }
  }
  ChainBudget budget;
  budget.quadrature = options.budget;
  for (std::size_t s = 0; s < sets.size(); ++s) {
    for (std::size_t i = 0; i < sets[s].periods().size(); ++i) {
      if (!sets[s].periods()[i].IsReduced()) {
        throw InputError("embedding " + std::to_string(i) +
                         ": period matrix is not reduced (need |Re Ω| ≤ 1/2 and λ₁(Im Ω)² ≥ √3/2)");
      }
    }
    ChainReport const report = VerifyChain(sets[s], budget);
    int const offset = source.doc != nullptr ? 0 : static_cast<int>(s);
    for (EmbeddingChain const& chain : report.embeddings) {
      for (ChainEntry const& entry : chain.entries) {
        checks.push_back(FromEntry("chain", offset + chain.index, entry));
      }
      double const target = -0.25 * sets[s].dim() * std::log(2.0);
      checks.push_back({"chain", "norm_sq_normalization", offset + chain.index,
                        chain.half_log_norm_sq, target, -std::abs(chain.half_log_norm_sq - target),
                        kChainTolerance + chain.invariant_error});
    }
    checks.push_back(FromEntry("chain", offset, report.total));
  }
}

void OracleSuite(VerifySource const& source, std::vector<Check>& checks) {
  std::vector<std::complex<double>> taus;
  if (source.doc != nullptr) {
    if (source.doc->g != 1) throw InputError("the oracle suite needs g = 1");
    EmbeddingSet const e = BuildEmbeddings(*source.doc);
    for (PeriodMatrix const& omega : e.periods()) taus.push_back(omega.omega()(0, 0));
  } else if (source.random_count > 0) {
    std::mt19937_64 rng(source.seed);
    for (std::int64_t i = 0; i < source.random_count; ++i) {
      taus.push_back(RandomReducedPeriodMatrix(1, rng).omega()(0, 0));
    }
  } else {
    for (double y : {1.0, 2.0, 3.0, 5.0, 10.0, 20.0, 50.0, 100.0}) taus.emplace_back(0, y);
  }
  std::mt19937_64 rng(source.seed);
  for (std::size_t i = 0; i < taus.size(); ++i) {
    int const index = static_cast<int>(i);
    double const h = FaltingsHeightEc(EllipticTau(taus[i]));
    double const term = MatrixLemmaTerm(InjectivityDiameter(PeriodMatrixFromTau(taus[i])), 1);
    double const gap = h - term;
    checks.push_back({"oracle", "height_above_bound", index, h, term, gap, kOracleTolerance});
    checks.push_back({"oracle", "gap_at_most_one", index, gap, 1, 1 - gap, kOracleTolerance});
    double worst = 0;
    for (int k = 0; k < 10; ++k) {
      Sl2 const m = RandomSl2(20, rng);
      std::complex<double> const image = MoebiusTransform(m.a, m.b, m.c, m.d, taus[i]);
      if (image.imag() < 1e-3) continue;  // Im γτ tiny: Δ needs too many terms
      worst = std::max(worst, std::abs(FaltingsHeightEc(EllipticTau(image)) - h));
    }
    checks.push_back({"oracle", "modular_invariance", index, worst, 0, -worst, kOracleTolerance});
  }
}

int CmdVerify(VerifySource const& source, std::string const& suite, std::string const& digest,
              Options const& options, std::ostream& out) {
  std::vector<Check> checks;
  bool const all = suite == "all";
  if (all || suite == "lattice") LatticeSuite(source, checks);
  if (all || suite == "integrals") IntegralsSuite(source, options, checks);
  if (all || suite == "chain") ChainSuite(source, options, checks);
  if (all || suite == "oracle") {
    // Oracle inputs must have g = 1; in a combined run on other data skip them.
    if (!all || source.doc == nullptr || source.doc->g == 1) OracleSuite(source, checks);
  }
  json list = json::array();
  int failed = 0;
  for (Check const& c : checks) {
    if (!c.pass()) ++failed;
    list.push_back({{"suite", c.suite},
                    {"name", c.name},
                    {"index", c.index},
                    {"lhs", Finite(c.lhs)},
                    {"rhs", Finite(c.rhs)},
                    {"slack", Finite(c.slack)},
                    {"tolerance", Finite(c.tolerance)},
                    {"pass", c.pass()}});
  }
  json result = Header("verify", digest);
  result["suite"] = suite;
  result["scheme"] = SchemeName(options.budget.scheme);
  if (source.doc == nullptr) {
    result["random"] = {{"count", source.random_count}, {"dim", source.dim}, {"seed", source.seed}};
  }
  result["checks"] = list;
  result["n_checks"] = checks.size();
  result["n_failed"] = failed;
  result["pass"] = failed == 0;
  Emit(result, out);
  return failed == 0 ? kExitOk : kExitCheckFailed;
}

}  // namespace

InputDocument ParseInput(std::string_view text) {
  json root;
  try {
    root = json::parse(text);
  } catch (json::parse_error const& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
  if (!root.is_object()) throw ParseError("document must be a JSON object");
  RequireOnly(root, {"g", "degree", "embeddings", "options"}, "document");

  InputDocument doc;
  if (!root.contains("g")) throw ParseError("missing field 'g'");
  std::int64_t const g = Integer(root["g"], "g");
  if (g < 1 || g > 16) throw ParseError("g must lie in [1, 16]");
  doc.g = static_cast<int>(g);
  if (root.contains("degree")) {
    std::int64_t const degree = Integer(root["degree"], "degree");
    if (degree < 1 || degree > 1'000'000) throw ParseError("degree must be ≥ 1");
    doc.degree = static_cast<int>(degree);
  }
  if (!root.contains("embeddings")) throw ParseError("missing field 'embeddings'");
  json const& embeddings = root["embeddings"];
  if (!embeddings.is_array()) throw ParseError("'embeddings' must be an array");
  if (embeddings.empty()) throw ParseError("'embeddings' is empty");
  for (std::size_t i = 0; i < embeddings.size(); ++i) {
    std::string const where = "embedding " + std::to_string(i);
    json const& e = embeddings[i];
    if (!e.is_object()) throw ParseError(where + " must be an object");
    RequireOnly(e, {"re", "im"}, where);
    if (!e.contains("re") || !e.contains("im")) throw ParseError(where + " needs 're' and 'im'");
    doc.embeddings.push_back(
        {Matrix(e["re"], doc.g, where + " re"), Matrix(e["im"], doc.g, where + " im")});
  }
  if (root.contains("options")) {
    json const& options = root["options"];
    if (!options.is_object()) throw ParseError("'options' must be an object");
    RequireOnly(options, {"epsilon", "budget", "scheme"}, "options");
    if (options.contains("epsilon")) doc.epsilon = Real(options["epsilon"], "options.epsilon");
    if (options.contains("budget")) doc.budget = Integer(options["budget"], "options.budget");
    if (options.contains("scheme")) {
      if (!options["scheme"].is_string()) throw ParseError("options.scheme must be a string");
      try {
        doc.scheme = ParseScheme(options["scheme"].get<std::string>());
      } catch (std::invalid_argument const& e) {
        throw ParseError(e.what());
      }
    }
  }
  return doc;
}

std::string Sha256Hex(std::string_view bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int length = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest, &length, EVP_sha256(), nullptr) != 1) {
    throw std::runtime_error("SHA-256 failed");
  }
  std::ostringstream hex;
  for (unsigned int i = 0; i < length; ++i) {
    hex << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(digest[i]);
  }
  return hex.str();
}

int Run(std::vector<std::string> const& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Matrix-lemma lower bounds on the Faltings height", "mlk"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(MLK_VERSION));

  std::string file;
  std::optional<double> epsilon;
  std::optional<std::int64_t> budget;
  std::string suite;
  std::optional<std::int64_t> random_count;
  std::uint64_t seed = 20130101;
  int dim = 1;

  CLI::App* bound = app.add_subcommand("bound", "Matrix-lemma bound and its simplified form");
  bound->add_option("file", file, "Input document (JSON)")->required();
  bound->add_option("--epsilon", epsilon, "ε for the simplified bound, in (0, 1)");

  CLI::App* rho = app.add_subcommand("rho", "Injectivity diameters and clamped minima");
  rho->add_option("file", file, "Input document (JSON)")->required();

  CLI::App* verify = app.add_subcommand("verify", "Run an invariant suite");
  verify->add_option("file", file, "Input document (JSON)");
  verify->add_option("--suite", suite, "lattice, integrals, chain, oracle or all")
      ->required()
      ->check(CLI::IsMember({"lattice", "integrals", "chain", "oracle", "all"}));
  verify->add_option("--random", random_count, "Number of random inputs instead of a file");
  verify->add_option("--seed", seed, "Seed for random inputs and modular transforms");
  verify->add_option("--dim", dim, "Dimension g of random inputs")->check(CLI::Range(1, 8));
  verify->add_option("--budget", budget,
                     "Nodes per axis (tensor-gauss) or points per shift (qmc-shifted)");
  verify->add_option("--epsilon", epsilon, "ε for the simplified bound, in (0, 1)");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (CLI::ParseError const& e) {
    int const code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitParseError;
  }

  try {
    InputDocument doc;
    std::string digest;
    bool const has_file = !file.empty();
    if (has_file) {
      std::string const text = ReadFile(file);
      digest = Sha256Hex(text);
      doc = ParseInput(text);
    }
    if (bound->parsed()) return CmdBound(doc, digest, ResolveOptions(&doc, epsilon, budget), out);
    if (rho->parsed()) return CmdRho(doc, digest, out);

    VerifySource source;
    source.seed = seed;
    source.dim = dim;
    if (has_file && random_count) throw ParseError("give either an input file or --random");
    if (has_file) {
      source.doc = &doc;
    } else if (random_count) {
      if (*random_count < 1) throw ParseError("--random needs a positive count");
      source.random_count = *random_count;
      std::ostringstream canonical;
      canonical << "random count=" << *random_count << " dim=" << dim << " seed=" << seed;
      digest = Sha256Hex(canonical.str());
    } else if (suite == "oracle") {
      digest = Sha256Hex("");
    } else {
      throw ParseError("verify needs an input file or --random");
    }
    return CmdVerify(source, suite, digest, ResolveOptions(has_file ? &doc : nullptr, epsilon, budget),
                     out);
  } catch (ParseError const& e) {
    err << "mlk: " << e.what() << '\n';
    return kExitParseError;
  } catch (InputError const& e) {
    err << "mlk: " << e.what() << '\n';
    return kExitInvalidInput;
  } catch (std::invalid_argument const& e) {
    err << "mlk: " << e.what() << '\n';
    return kExitInvalidInput;
  } catch (std::exception const& e) {
    err << "mlk: error: " << e.what() << '\n';
    return kExitCheckFailed;
  }
}

}  // namespace mlk::cli
