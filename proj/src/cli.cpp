#include "srf/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include "srf/capacity.hpp"
#include "srf/errors.hpp"
#include "srf/privacy.hpp"
#include "srf/repkit.hpp"
#include "srf/workspace.hpp"

namespace srf {

namespace {

struct CommandName {
  Command command;
  const char* name;
};

constexpr CommandName kCommands[] = {
    {Command::Decompose, "decompose"},       {Command::TwirlCheck, "twirl-check"},
    {Command::Workspace, "workspace"},       {Command::MeanF, "mean-f"},
    {Command::Concentration, "concentration"}, {Command::Lipschitz, "lipschitz"},
    {Command::HaarMoments, "haar-moments"},  {Command::Theorem1, "theorem1"},
    {Command::Capacity, "capacity"},         {Command::Net, "net"},
};

constexpr int kMaxSweepN = 64;
constexpr int kMaxSchurCheckN = 8;

std::vector<double> resolved_gammas(const RunConfig& c) {
  if (!c.gammas.empty()) return c.gammas;
  return {0.05, 0.1, 0.2, 0.3};
}

double resolved_cprime(const RunConfig& c) { return c.cPrime.value_or(cprime_from_levy(c.levyC)); }

nlohmann::json config_echo(const RunConfig& c) {
  nlohmann::json j{{"command", to_string(c.command)},
                   {"N", c.n},
                   {"alpha", c.alpha},
                   {"delta", c.delta},
                   {"nSamples", c.nSamples.value_or(default_samples(c.command))},
                   {"seed", c.seed.value},
                   {"format", c.format == OutputFormat::Json ? "json" : "csv"},
                   {"cPrime", resolved_cprime(c)},
                   {"levyC", c.levyC},
                   {"dimS", c.dimS},
                   {"epsilon", c.epsilon}};
  j["jMin"] = c.jMinTwice ? nlohmann::json(0.5 * *c.jMinTwice) : nlohmann::json(nullptr);
  j["k"] = c.k ? nlohmann::json(*c.k) : nlohmann::json(nullptr);
  if (c.command == Command::Concentration) j["gammas"] = resolved_gammas(c);
  if (c.command == Command::TwirlCheck) {
    const QuadratureSpec q = c.quadrature.value_or(QuadratureSpec::defaults(c.n));
    j["quadrature"] = {q.nAlpha, q.nBeta, q.nGamma};
  }
  return j;
}

nlohmann::json infeasible(const std::string& reason) { return {{"status", "infeasible"}, {"reason", reason}}; }

double label_j(IrrepLabel j) { return j.j(); }

nlohmann::json run_decompose(const RunConfig& c) {
  nlohmann::json irreps = nlohmann::json::array();
  BigInt total = 0;
  for (const IrrepLabel j : irrep_labels(c.n)) {
    const BigInt dp = dim_multiplicity(c.n, j);
    total += BigInt(dim_irrep(j)) * dp;
    irreps.push_back({{"j", label_j(j)}, {"dimR", dim_irrep(j)}, {"dimP", big_to_json(dp)}});
  }
  const BigInt expected = BigInt(1) << c.n;
  nlohmann::json out{{"status", "ok"},
                     {"N", c.n},
                     {"irreps", irreps},
                     {"totalDimension", big_to_json(total)},
                     {"dimensionComplete", total == expected},
                     {"rankChain", to_json(rank_chain(c.n))}};
  if (c.n <= kMaxSchurCheckN) {
    const SchurTransform st = schur_transform(c.n);
    const std::size_t rotations = c.nSamples.value_or(default_samples(c.command));
    Rng rng = make_rng(c.seed, 0);
    double worst = 0.0;
    for (std::size_t i = 0; i < rotations; ++i) {
      const EulerAngles omega = random_euler_angles(rng);
      const ComplexMatrix lhs = st.v.adjoint() * rotation_tensor_power(omega, c.n) * st.v;
      worst = std::max(worst, (lhs - block_rotation(st.layout, omega)).norm());
    }
    out["schurRotations"] = rotations;
    out["schurMaxDeviation"] = worst;
  }
  return out;
}

nlohmann::json run_twirl_check(const RunConfig& c) {
  const QuadratureSpec q = c.quadrature.value_or(QuadratureSpec::defaults(c.n));
  const SchurTransform st = schur_transform(c.n);
  const std::size_t count = c.nSamples.value_or(default_samples(c.command));
  const auto block = [&](const ComplexMatrix& rho) {
    const DensityMatrix coupled(st.v.adjoint() * rho * st.v, Validation::Structure);
    return ComplexMatrix(st.v * twirl_block(coupled, st.layout).matrix() * st.v.adjoint());
  };
  double worstOracle = 0.0, worstIdem = 0.0, worstCov = 0.0;
  for (std::size_t i = 0; i < count; ++i) {
    Rng rng = make_rng(c.seed, i);
    const DensityMatrix rho = random_density_matrix(st.layout.dimension(), rng);
    const ComplexMatrix viaBlocks = block(rho.matrix());
    const TwirlOracleResult oracle = twirl_oracle(rho, q);
    worstOracle = std::max(worstOracle, trace_norm(viaBlocks - oracle.rho.matrix()));
    worstIdem = std::max(worstIdem, trace_norm(block(viaBlocks) - viaBlocks));
    const ComplexMatrix r = rotation_tensor_power(random_euler_angles(rng), c.n);
    worstCov = std::max(worstCov, trace_norm(block(r * rho.matrix() * r.adjoint()) - r * viaBlocks * r.adjoint()));
  }
  return {{"status", "ok"},
          {"N", c.n},
          {"nStates", count},
          {"quadrature", {{"nAlpha", q.nAlpha}, {"nBeta", q.nBeta}, {"nGamma", q.nGamma}}},
          {"quadratureExact", q.exact_for(c.n)},
          {"maxOracleTraceDistance", worstOracle},
          {"maxIdempotenceDefect", worstIdem},
          {"maxCovarianceDefect", worstCov},
          {"agreement", worstOracle < 1e-8}};
}

nlohmann::json run_capacity(const RunConfig& c) {
  nlohmann::json out = to_json(capacity_bounds(c.n, c.delta, resolved_cprime(c)));
  out["status"] = "ok";
  out["rankChain"] = to_json(rank_chain(c.n));
  return out;
}

nlohmann::json run_haar(const RunConfig& c) {
  nlohmann::json out = to_json(haar_moment_check(*c.k, c.nSamples.value_or(default_samples(c.command)), c.seed));
  out["status"] = "ok";
  return out;
}

nlohmann::json run_net(const RunConfig& c) {
  nlohmann::json out = to_json(build_eps_net(static_cast<int>(c.dimS), c.epsilon, c.seed));
  out["status"] = "ok";
  return out;
}

nlohmann::json run_theorem1(const RunConfig& c, std::optional<nlohmann::json>& descriptor) {
  PrivacyParams params = PrivacyParams::for_delta(c.delta, c.levyC, c.cPrime);
  const Theorem1Report r =
      theorem1_experiment(c.n, c.delta, params, c.nSamples.value_or(default_samples(c.command)), c.seed);
  descriptor = r.workspace;
  return to_json(r);
}

nlohmann::json run_with_workspace(const RunConfig& c, std::optional<nlohmann::json>& descriptor) {
  std::optional<WorkingSpace> ws;
  std::optional<IrrepLabel> jMin;
  if (c.jMinTwice) jMin = IrrepLabel{*c.jMinTwice};
  if (!(c.alpha > 1.0) || !std::isfinite(c.alpha)) throw DomainError("alpha must be a finite real > 1");
  try {
    ws = build_working_space(c.n, c.alpha, jMin);
  } catch (const DomainError& e) {
    return infeasible(e.what());
  }
  descriptor = to_json(*ws);
  const std::size_t samples = c.nSamples.value_or(default_samples(c.command));
  nlohmann::json out;
  switch (c.command) {
    case Command::Workspace:
      out = to_json(*ws);
      out["asymptoticK"] = asymptotic_K(c.n, c.alpha);
      out["exactK"] = exact_K(c.n, c.alpha);
      break;
    case Command::MeanF:
      out = to_json(mean_f_experiment(*ws, samples, c.seed));
      break;
    case Command::Concentration: {
      PrivacyParams params;
      params.levyC = c.levyC;
      params.cPrime = resolved_cprime(c);
      out = to_json(concentration_experiment(*ws, samples, resolved_gammas(c), params, c.seed));
      break;
    }
    case Command::Lipschitz:
      out = to_json(lipschitz_check(*ws, samples, c.seed));
      break;
    default:
      throw std::logic_error("run_with_workspace: command has no working space");
  }
  out["status"] = "ok";
  out["N"] = c.n;
  out["alpha"] = c.alpha;
  return out;
}

std::string csv_cell(const nlohmann::json& v) {
  std::string s = v.is_string() ? v.get<std::string>() : v.dump();
  if (s.find_first_of(",\"\r\n") != std::string::npos) {
    std::string quoted = "\"";
    for (char ch : s) {
      if (ch == '"') quoted += '"';
      quoted += ch;
    }
    return quoted + "\"";
  }
  return s;
}

double sort_key(const nlohmann::json& v) {
  if (v.is_number()) return v.get<double>();
  if (v.is_string()) {
    try {
      return std::stod(v.get<std::string>());
    } catch (const std::exception&) {
    }
  }
  throw UsageError("emit_curve: x values must be numeric");
}

std::vector<int> parse_int_list(const std::string& text, const char* what) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(item, &used);
    } catch (const std::exception&) {
      throw UsageError(std::string(what) + ": '" + item + "' is not an integer");
    }
    if (used != item.size()) throw UsageError(std::string(what) + ": '" + item + "' is not an integer");
    out.push_back(v);
  }
  if (out.empty()) throw UsageError(std::string(what) + ": empty list");
  return out;
}

std::vector<double> parse_real_list(const std::string& text, const char* what) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      throw UsageError(std::string(what) + ": '" + item + "' is not a number");
    }
    if (used != item.size()) throw UsageError(std::string(what) + ": '" + item + "' is not a number");
    out.push_back(v);
  }
  if (out.empty()) throw UsageError(std::string(what) + ": empty list");
  return out;
}

std::pair<std::string, std::string> default_curve(Command c) {
  switch (c) {
    case Command::Capacity: return {"N", "qPerfect"};
    case Command::Concentration: return {"gamma", "tail"};
    case Command::MeanF: return {"K", "meanF"};
    case Command::Workspace: return {"N", "K"};
    case Command::Lipschitz: return {"N", "maxRatio"};
    default: throw UsageError("--format csv for this command needs --curve x,y");
  }
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw UsageError("cannot open output file " + path);
  f << text;
}

}  // namespace

std::optional<Command> parse_command(std::string_view name) {
  for (const auto& c : kCommands) {
    if (name == c.name) return c.command;
  }
  return std::nullopt;
}

std::string to_string(Command c) {
  for (const auto& e : kCommands) {
    if (e.command == c) return e.name;
  }
  return "unknown";
}

std::size_t default_samples(Command c) {
  switch (c) {
    case Command::Decompose: return 20;
    case Command::TwirlCheck: return 50;
    case Command::MeanF: return 2000;
    case Command::Concentration: return 5000;
    case Command::Lipschitz: return 10000;
    case Command::HaarMoments: return 100000;
    case Command::Theorem1: return 4;
    default: return 0;
  }
}

void validate(const RunConfig& c) {
  if (c.n < 2 || c.n % 2 != 0) throw UsageError("N must be a positive even integer, got " + std::to_string(c.n));
  const std::size_t samples = c.nSamples.value_or(default_samples(c.command));
  switch (c.command) {
    case Command::Decompose:
    case Command::Capacity:
      if (c.n > kMaxSweepN) throw UsageError("N above 64 is not supported");
      if (c.command == Command::Capacity && c.delta < 0.0) throw UsageError("delta must be non-negative");
      break;
    case Command::TwirlCheck:
      if (c.n > kMaxOracleN) throw UsageError("twirl-check: the quadrature oracle is limited to N <= 8");
      if (samples < 1) throw UsageError("twirl-check: need at least one state");
      if (c.quadrature && (c.quadrature->nAlpha < 1 || c.quadrature->nBeta < 1 || c.quadrature->nGamma < 1)) {
        throw UsageError("--quadrature sizes must be positive");
      }
      break;
    case Command::Workspace:
    case Command::MeanF:
    case Command::Concentration:
    case Command::Lipschitz:
      if (c.n > kMaxSweepN) throw UsageError("N above 64 is not supported");
      if (c.command == Command::MeanF && samples < 100) throw UsageError("mean-f: need at least 100 samples");
      if (c.command == Command::Concentration && samples < 1000) {
        throw UsageError("concentration: need at least 1000 samples");
      }
      if (c.command == Command::Lipschitz && samples < 1) throw UsageError("lipschitz: need at least one pair");
      for (double g : c.gammas) {
        if (!(g > 0.0)) throw UsageError("--gammas must be positive");
      }
      if (!(c.levyC > 0.0)) throw UsageError("--levy-c must be positive");
      break;
    case Command::HaarMoments:
      if (!c.k) throw UsageError("haar-moments: --k is required");
      if (*c.k < 2) throw UsageError("haar-moments: --k must be at least 2");
      if (samples < 2) throw UsageError("haar-moments: need at least two samples");
      break;
    case Command::Theorem1:
      if (c.n > kMaxSweepN) throw UsageError("N above 64 is not supported");
      if (!(c.delta > 0.0 && c.delta <= 2.0)) throw UsageError("theorem1: delta must lie in (0, 2]");
      if (!(c.levyC > 0.0)) throw UsageError("--levy-c must be positive");
      break;
    case Command::Net:
      if (c.dimS < 1 || c.dimS > kMaxNetDim) throw UsageError("net: --dim-s must lie in [1, 3]");
      if (!(c.epsilon > 0.0 && c.epsilon <= 1.0)) throw UsageError("net: --epsilon must lie in (0, 1]");
      break;
  }
}

RunResult run(const RunConfig& config) {
  validate(config);
  const auto start = std::chrono::steady_clock::now();
  RunResult r;
  r.config = config_echo(config);
  switch (config.command) {
    case Command::Decompose: r.payload = run_decompose(config); break;
    case Command::TwirlCheck: r.payload = run_twirl_check(config); break;
    case Command::Capacity: r.payload = run_capacity(config); break;
    case Command::HaarMoments: r.payload = run_haar(config); break;
    case Command::Net: r.payload = run_net(config); break;
    case Command::Theorem1: r.payload = run_theorem1(config, r.workspaceDescriptor); break;
    default: r.payload = run_with_workspace(config, r.workspaceDescriptor); break;
  }
  if (config.timing) {
    r.wallClockSeconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  }
  return r;
}

nlohmann::json to_json(const RunResult& r) {
  nlohmann::json j{{"config", r.config}, {"toolVersion", r.toolVersion}, {"payload", r.payload}};
  if (r.workspaceDescriptor) j["workspaceDescriptor"] = *r.workspaceDescriptor;
  if (r.wallClockSeconds) j["wallClockSeconds"] = *r.wallClockSeconds;
  return j;
}

std::string emit_curve(const std::vector<RunResult>& results, const std::string& xField, const std::string& yField) {
  std::vector<std::pair<nlohmann::json, nlohmann::json>> rows;
  for (const auto& r : results) {
    const auto x = r.payload.find(xField);
    const auto y = r.payload.find(yField);
    if (x == r.payload.end()) throw UsageError("emit_curve: payload has no field '" + xField + "'");
    if (y == r.payload.end()) throw UsageError("emit_curve: payload has no field '" + yField + "'");
    if (x->is_array() != y->is_array()) throw UsageError("emit_curve: fields mix scalars and arrays");
    if (x->is_array()) {
      if (x->size() != y->size()) throw UsageError("emit_curve: array fields differ in length");
      for (std::size_t i = 0; i < x->size(); ++i) rows.emplace_back((*x)[i], (*y)[i]);
    } else {
      rows.emplace_back(*x, *y);
    }
  }
  for (const auto& [x, y] : rows) {
    if (x.is_structured() || y.is_structured()) throw UsageError("emit_curve: fields must hold scalars or arrays of scalars");
  }
  std::vector<std::pair<double, std::size_t>> order;
  for (std::size_t i = 0; i < rows.size(); ++i) order.emplace_back(sort_key(rows[i].first), i);
  std::stable_sort(order.begin(), order.end(), [](const auto& a, const auto& b) { return a.first < b.first; });

  std::string out = csv_cell(xField) + "," + csv_cell(yField) + "\r\n";
  for (const auto& [key, i] : order) out += csv_cell(rows[i].first) + "," + csv_cell(rows[i].second) + "\r\n";
  return out;
}

nlohmann::json error_json(const std::string& kind, const std::string& message) {
  return {{"error", {{"kind", kind}, {"message", message}}}};
}

int cli_main(int argc, char** argv) {
  CLI::App app{"Shared-reference-frame privacy experiments"};
  app.set_config("--config", "", "TOML/INI file with option values");

  std::string command, nList = "12", output, format = "json", quadrature, gammas, curve;
  double alpha = 2.0, delta = 0.5, levyC = 1.0, epsilon = 0.5;
  std::optional<double> cPrime, jMin;
  std::optional<std::size_t> samples;
  std::optional<Index> k;
  std::uint64_t seed = 1;
  Index dimS = 1;
  bool timing = false;

  std::vector<std::string> names;
  for (const auto& c : kCommands) names.emplace_back(c.name);
  app.add_option("--command", command, "Experiment to run")->required()->check(CLI::IsMember(names));
  app.add_option("--n", nList, "Even qubit count, or a comma list for a sweep");
  app.add_option("--alpha", alpha, "Working-space parameter alpha > 1");
  app.add_option("--delta", delta, "Privacy level");
  app.add_option("--samples", samples, "Sample count (command specific)");
  app.add_option("--seed", seed, "RNG seed");
  app.add_option("--out", output, "Output file (stdout if absent)");
  app.add_option("--format", format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--c-prime", cPrime, "Additive constant of the dimension bound");
  app.add_option("--levy-c", levyC, "Levy constant C");
  app.add_option("--j-min", jMin, "Override of the smallest retained j");
  app.add_option("--quadrature", quadrature, "Quadrature sizes a,b,g");
  app.add_option("--k", k, "Unitary dimension for haar-moments");
  app.add_option("--gammas", gammas, "Comma list of deviation thresholds");
  app.add_option("--dim-s", dimS, "Subspace dimension for net");
  app.add_option("--epsilon", epsilon, "Net spacing");
  app.add_option("--curve", curve, "CSV projection fields x,y");
  app.add_flag("--timing", timing, "Record wall-clock seconds in the JSON");

  const auto fail = [&](const std::string& kind, const std::string& message, int code) {
    const std::string text = error_json(kind, message).dump(2) + "\n";
    std::cerr << message << "\n";
    try {
      write_text(output, text);
    } catch (const std::exception&) {
      std::cout << text;
    }
    return code;
  };

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    return fail("usage", e.what(), 2);
  }

  try {
    RunConfig base;
    base.command = *parse_command(command);
    base.alpha = alpha;
    base.delta = delta;
    base.nSamples = samples;
    base.seed = RngSeed{seed};
    base.outputPath = output;
    base.format = format == "csv" ? OutputFormat::Csv : OutputFormat::Json;
    base.cPrime = cPrime;
    base.levyC = levyC;
    if (jMin) {
      const double twice = 2.0 * *jMin;
      if (std::abs(twice - std::round(twice)) > 1e-12) throw UsageError("--j-min must be an integer or half-integer");
      base.jMinTwice = static_cast<int>(std::lround(twice));
    }
    if (!quadrature.empty()) {
      const auto q = parse_int_list(quadrature, "--quadrature");
      if (q.size() != 3) throw UsageError("--quadrature takes three sizes a,b,g");
      base.quadrature = QuadratureSpec{q[0], q[1], q[2]};
    }
    base.k = k;
    if (!gammas.empty()) base.gammas = parse_real_list(gammas, "--gammas");
    base.dimS = dimS;
    base.epsilon = epsilon;
    base.timing = timing;

    std::vector<RunResult> results;
    for (int n : parse_int_list(nList, "--n")) {
      RunConfig c = base;
      c.n = n;
      results.push_back(run(c));
    }

    std::string text;
    if (base.format == OutputFormat::Csv) {
      std::pair<std::string, std::string> fields;
      if (!curve.empty()) {
        const auto comma = curve.find(',');
        if (comma == std::string::npos) throw UsageError("--curve takes two fields x,y");
        fields = {curve.substr(0, comma), curve.substr(comma + 1)};
      } else {
        fields = default_curve(base.command);
      }
      text = emit_curve(results, fields.first, fields.second);
    } else if (results.size() == 1) {
      text = to_json(results.front()).dump(2) + "\n";
    } else {
      nlohmann::json all = nlohmann::json::array();
      for (const auto& r : results) all.push_back(to_json(r));
      text = all.dump(2) + "\n";
    }
    write_text(output, text);
    return 0;
  } catch (const UsageError& e) {
    return fail("usage", e.what(), 2);
  } catch (const DimensionError& e) {
    return fail("dimension", e.what(), 3);
  } catch (const DomainError& e) {
    return fail("domain", e.what(), 3);
  } catch (const ResourceError& e) {
    return fail("resource", e.what(), 3);
  } catch (const std::exception& e) {
    return fail("internal", e.what(), 4);
  }
}

}  // namespace srf
