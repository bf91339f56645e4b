#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "clearnet/centrality.hpp"
#include "clearnet/clearing.hpp"
#include "clearnet/equivalence.hpp"
#include "clearnet/error.hpp"
#include "clearnet/io.hpp"
#include "clearnet/random_system.hpp"
#include "clearnet/shocks.hpp"
#include "clearnet/spectral.hpp"
#include "json.hpp"

namespace clearnet::cli {

namespace {

using Json = nlohmann::ordered_json;

Json to_json(const Vector& v) {
  Json out = Json::array();
  for (Index i = 0; i < v.size(); ++i) out.push_back(v[i]);
  return out;
}

Json to_json(const DefaultIndicator& d) {
  Json out = Json::array();
  for (bool f : d.flags()) out.push_back(f);
  return out;
}

Json to_json(const Rate& rate) {
  return rate.is_scalar() ? Json(rate.scalar()) : to_json(*rate.per_node());
}

Json indices(const std::vector<Index>& v) {
  Json out = Json::array();
  for (Index i : v) out.push_back(i);
  return out;
}

Json to_json(const SpectralReport& report) {
  return Json{{"radius_estimate", report.radius_estimate},
              {"collatz_wielandt_lower", report.collatz_wielandt_lower},
              {"invertible_for_r",
               {{"lower", report.invertible_for_r.lower},
                {"upper", report.invertible_for_r.upper},
                {"upper_closed", report.invertible_for_r.upper_closed}}}};
}

Json to_json(const ClearingSolution& sol, const FinancialSystem& system) {
  Json history = Json::array();
  for (const auto& d : sol.default_history) history.push_back(indices(d.defaulted()));
  return Json{{"payments", to_json(sol.payments)},
              {"defaults", to_json(sol.defaults)},
              {"losses", to_json(systemic_loss(sol, system.total_liabilities()))},
              {"iterations", sol.iterations},
              {"residual", sol.residual},
              {"default_history", std::move(history)},
              {"uniqueness_condition_met", sol.uniqueness_condition_met}};
}

std::string kind_name(ShockKind kind) {
  return kind == ShockKind::FullDefault ? "full" : "relaxed";
}

Json to_json(const ShockScenario& sc) {
  Json out{{"kind", kind_name(sc.kind)},
           {"interpolation", to_json(sc.interpolation)},
           {"shock", to_json(sc.shock)},
           {"post_shock_assets", to_json(sc.post_shock_assets)}};
  if (sc.search_steps) out["search_steps"] = *sc.search_steps;
  if (sc.max_steps) out["max_steps"] = *sc.max_steps;
  return out;
}

Json to_json(const EquivalenceReport& rep) {
  Json out{{"kind", kind_name(rep.kind)},
           {"passed", rep.passed()},
           {"tolerance", rep.tolerance},
           {"max_abs_gap", rep.max_abs_gap},
           {"one_step", rep.one_step},
           {"all_defaulted", rep.all_defaulted},
           {"iterations", rep.iterations},
           {"sigma_clearing", to_json(rep.sigma_clearing)},
           {"sigma_katz", to_json(rep.sigma_katz)},
           {"gap", to_json(rep.details)}};
  if (rep.printed_form_gap) {
    out["alternative_form_gap"] = *rep.printed_form_gap;
    out["alternative_form_details"] = to_json(*rep.printed_form_details);
  }
  return out;
}

// Options shared by every subcommand that reads a system.
struct InputOptions {
  std::string path;
  std::string assets;
  std::string format;

  void attach(CLI::App& app) {
    app.add_option("--input,-i", path, "System file (.json or .csv)")->required();
    app.add_option("--assets", assets,
                   "One-column CSV of assets: pre-shock assets for CSV input, "
                   "external assets for JSON input");
    app.add_option("--format", format, "Input format, overriding the extension")
        ->check(CLI::IsMember({"csv", "json"}));
  }

  SystemDocument load() const {
    std::optional<FileFormat> fmt;
    if (format == "csv") fmt = FileFormat::Csv;
    if (format == "json") fmt = FileFormat::Json;
    std::optional<std::filesystem::path> side;
    if (!assets.empty()) side = assets;
    return load_document(path, fmt, side);
  }

  Json echo(const FinancialSystem& system) const {
    Json out{{"path", path}, {"nodes", system.size()}};
    if (!assets.empty()) out["assets"] = assets;
    return out;
  }
};

struct Names {
  std::vector<std::string> labels;
  static Names from(const SystemDocument& doc, Index n) {
    Names out;
    out.labels = doc.names;
    if (static_cast<Index>(out.labels.size()) != n) {
      out.labels.clear();
      for (Index i = 0; i + 1 < n; ++i) out.labels.push_back(std::to_string(i));
      out.labels.emplace_back(kSinkLabel);
    }
    return out;
  }
};

std::string format_number(double v) {
  std::ostringstream os;
  os << std::setprecision(8) << v;
  return os.str();
}

std::string format_scalar(const Json& v) {
  if (v.is_number_float()) return format_number(v.get<double>());
  if (v.is_string()) return v.get<std::string>();
  return v.dump();
}

bool is_node_column(const Json& v, std::size_t n) {
  if (!v.is_array() || v.size() != n || n == 0) return false;
  return std::all_of(v.begin(), v.end(),
                     [](const Json& x) { return x.is_number() || x.is_boolean(); });
}

// Scalars as "key: value" lines, per-node arrays gathered into one table.
void render(const Json& obj, const Names& names, std::ostream& out, int depth) {
  const std::string indent(static_cast<std::size_t>(2 * depth), ' ');
  std::vector<std::pair<std::string, const Json*>> columns;
  for (const auto& [key, value] : obj.items()) {
    if (value.is_object()) {
      out << indent << key << ":\n";
      render(value, names, out, depth + 1);
    } else if (is_node_column(value, names.labels.size())) {
      columns.emplace_back(key, &value);
    } else if (value.is_array()) {
      out << indent << key << ": " << value.dump() << "\n";
    } else {
      out << indent << key << ": " << format_scalar(value) << "\n";
    }
  }
  if (columns.empty()) return;

  std::vector<std::vector<std::string>> cells(names.labels.size() + 1);
  cells[0].push_back("node");
  for (std::size_t i = 0; i < names.labels.size(); ++i) cells[i + 1].push_back(names.labels[i]);
  for (const auto& [key, col] : columns) {
    cells[0].push_back(key);
    for (std::size_t i = 0; i < names.labels.size(); ++i) {
      cells[i + 1].push_back(format_scalar((*col)[i]));
    }
  }
  std::vector<std::size_t> width(cells[0].size(), 0);
  for (const auto& row : cells)
    for (std::size_t c = 0; c < row.size(); ++c) width[c] = std::max(width[c], row[c].size());
  for (const auto& row : cells) {
    out << indent;
    for (std::size_t c = 0; c < row.size(); ++c) {
      out << (c == 0 ? std::left : std::right) << std::setw(static_cast<int>(width[c]))
          << row[c] << (c + 1 < row.size() ? "  " : "\n");
    }
  }
}

void emit(const Json& report, bool pretty, const Names& names, std::ostream& out) {
  if (pretty) {
    render(report, names, out, 0);
  } else {
    out << report.dump(2) << "\n";
  }
}

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::IoError:
    case ErrorCode::ParseError:
    case ErrorCode::ValidationError:
    case ErrorCode::NegativeEntry:
    case ErrorCode::NonFiniteEntry:
    case ErrorCode::DimensionMismatch:
    case ErrorCode::NonzeroSinkRow:
    case ErrorCode::NonzeroDiagonal:
    case ErrorCode::NonpositiveSinkAssets:
      return kInputError;
    default:
      return kPreconditionViolated;
  }
}

ClearingParams make_params(double r, double r_a) {
  ClearingParams params;
  params.r = r;
  params.r_a = r_a;
  return params;
}

double default_tolerance(const FinancialSystem& system) {
  return 1e-8 * std::max(1.0, max_abs_head(system.total_liabilities(), system.bank_count()));
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Clearing payments, shock scenarios and loss centrality for obligation networks",
               "clearnet"};
  app.require_subcommand(1);
  bool pretty = false;
  app.add_flag("--pretty", pretty, "Human-readable table instead of JSON");

  InputOptions input;
  double r = 1.0;
  double r_a = 1.0;
  double m = 0.5;
  std::optional<double> tol;
  std::string kind = "full";
  std::optional<int> max_steps;
  std::string strategy = "linear";
  std::uint64_t seed = 0;
  Index n_banks = 0;
  double density = 0.5;
  double weight_scale = 1.0;
  std::string out_path;

  CLI::App* clear = app.add_subcommand("clear", "Clearing vector via the fictitious default sequence");
  input.attach(*clear);
  clear->add_option("--r", r, "Recovery rate on interbank claims")->capture_default_str();
  clear->add_option("--ra", r_a, "Recovery rate on external assets")->capture_default_str();

  CLI::App* shock = app.add_subcommand("shock", "Build a shock scenario and clear under it");
  input.attach(*shock);
  shock->add_option("--kind", kind, "full or relaxed")
      ->check(CLI::IsMember({"full", "relaxed"}))
      ->capture_default_str();
  shock->add_option("--m", m, "Interpolation coefficient in (0,1)")->capture_default_str();
  shock->add_option("--r", r, "Recovery rate on interbank claims")->capture_default_str();
  shock->add_option("--ra", r_a, "Recovery rate on external assets")->capture_default_str();
  shock->add_option("--max-steps", max_steps,
                    "Relaxed kind: step search over this many steps instead of the "
                    "self-consistent shock");
  shock->add_option("--strategy", strategy, "Step search strategy: linear or bisection")
      ->check(CLI::IsMember({"linear", "bisection"}))
      ->capture_default_str();

  CLI::App* katz = app.add_subcommand("katz", "beta vector and loss centrality");
  input.attach(*katz);
  katz->add_option("--r", r, "Recovery rate")->capture_default_str();
  katz->add_option("--m", m, "Interpolation coefficient")->capture_default_str();

  CLI::App* verify = app.add_subcommand(
      "verify", "Compare clearing losses with the loss centrality (exit 2 on mismatch)");
  input.attach(*verify);
  verify->add_option("--r", r, "Recovery rate")->capture_default_str();
  verify->add_option("--ra", r_a, "Recovery rate on external assets")->capture_default_str();
  verify->add_option("--m", m, "Interpolation coefficient in (0,1)")->capture_default_str();
  verify->add_option("--kind", kind, "full or relaxed")
      ->check(CLI::IsMember({"full", "relaxed"}))
      ->capture_default_str();
  verify->add_option("--tol", tol, "Gap tolerance (default 1e-8 * max(1, max l))");

  CLI::App* gen = app.add_subcommand("gen", "Write a seeded random system");
  gen->add_option("--seed", seed, "Generator seed")->required();
  gen->add_option("--n", n_banks, "Number of banks (sink excluded)")
      ->required()
      ->check(CLI::PositiveNumber);
  gen->add_option("--density", density, "Edge probability in (0,1]")
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();
  gen->add_option("--weight-scale", weight_scale, "Median edge weight")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  gen->add_option("--out,-o", out_path, "Output JSON file ('-' for standard output)")
      ->required();

  CLI::App* spectral = app.add_subcommand("spectral", "Spectral radius and invertibility of I - rC");
  input.attach(*spectral);
  spectral->add_option("--r", r, "Recovery rate")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kInputError;
  }

  try {
    if (gen->parsed()) {
      if (!(density > 0.0)) throw Error(ErrorCode::InvalidParameter, "density must lie in (0,1]");
      const FinancialSystem system = generate_random_system(seed, n_banks, density, weight_scale);
      const std::string text = serialize_system_json(to_document(system));
      if (out_path == "-") {
        out << text;
      } else {
        write_text_file(out_path, text);
        const Json report{{"command", "gen"},
                          {"seed", seed},
                          {"banks", n_banks},
                          {"density", density},
                          {"weight_scale", weight_scale},
                          {"out", out_path}};
        emit(report, pretty, Names{}, out);
      }
      return kOk;
    }

    const SystemDocument doc = input.load();
    const FinancialSystem system = to_system(doc);
    const Names names = Names::from(doc, system.size());
    const ClearingParams params = make_params(r, r_a);

    if (clear->parsed()) {
      const ClearingSolution sol = fictitious_default_sequence(system, params);
      const Vector oracle = picard_clearing_oracle(system, params);
      const InvertibilityCheck inv = check_invertibility(system.claims(), r, true);
      Json report{{"command", "clear"},
                  {"inputs", input.echo(system)},
                  {"parameters", {{"r", r}, {"r_a", r_a}}},
                  {"liabilities", to_json(system.total_liabilities())},
                  {"external_assets", to_json(system.external_assets())},
                  {"clearing", to_json(sol, system)},
                  {"oracle_gap", max_abs_head(oracle - sol.payments, system.bank_count())},
                  {"spectral", to_json(inv.report)}};
      emit(report, pretty, names, out);
      return kOk;
    }

    if (shock->parsed()) {
      Json report{{"command", "shock"},
                  {"inputs", input.echo(system)},
                  {"parameters", {{"r", r}, {"r_a", r_a}, {"m", m}, {"kind", kind}}}};
      ShockScenario scenario;
      if (kind == "full") {
        scenario = full_default_shock(system, m);
      } else if (max_steps) {
        scenario = relaxed_shock_search(system, params, *max_steps,
                                        strategy == "bisection" ? SearchStrategy::Bisection
                                                                : SearchStrategy::LinearScan);
      } else {
        const RelaxedShockCertificate cert = relaxed_interpolated_shock(system, params, m);
        scenario = cert.scenario;
        report["certificate"] = {{"candidate", to_json(cert.candidate)},
                                 {"candidate_gap", cert.candidate_gap},
                                 {"alternative_form", to_json(cert.printed_closed_form)},
                                 {"alternative_form_gap", cert.printed_form_gap}};
      }
      const FinancialSystem shocked = scenario.apply_to(system);
      report["scenario"] = to_json(scenario);
      report["clearing"] = to_json(fictitious_default_sequence(shocked, params), shocked);
      emit(report, pretty, names, out);
      return kOk;
    }

    if (katz->parsed()) {
      const CentralityResult res = loss_centrality(system, r, m);
      const Json report{{"command", "katz"},
                        {"inputs", input.echo(system)},
                        {"parameters", {{"r", r}, {"m", m}}},
                        {"beta", to_json(res.beta)},
                        {"sigma", to_json(res.sigma)},
                        {"residual", res.residual}};
      emit(report, pretty, names, out);
      return kOk;
    }

    if (verify->parsed()) {
      const double tolerance = tol ? *tol : default_tolerance(system);
      const EquivalenceReport rep =
          kind == "full" ? verify_full_shock_equivalence(system, params, m, tolerance)
                         : verify_relaxed_equivalence(system, params, m, tolerance);
      const Json report{{"command", "verify"},
                        {"inputs", input.echo(system)},
                        {"parameters", {{"r", r}, {"r_a", r_a}, {"m", m}, {"kind", kind}}},
                        {"report", to_json(rep)}};
      emit(report, pretty, names, out);
      if (rep.printed_form_gap && *rep.printed_form_gap > tolerance) {
        err << "warning: the alternative relaxed closed form differs from the clearing vector by "
            << format_number(*rep.printed_form_gap) << " (informational)\n";
      }
      return rep.passed() ? kOk : kVerifyFailed;
    }

    if (spectral->parsed()) {
      const InvertibilityCheck inv = check_invertibility(system.claims(), r, true);
      Json report{{"command", "spectral"},
                  {"inputs", input.echo(system)},
                  {"r", r},
                  {"invertible", inv.invertible}};
      report["report"] = to_json(inv.report);
      emit(report, pretty, names, out);
      return kOk;
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }
  return kInputError;
}

}  // namespace clearnet::cli
