#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <filesystem>
#include <fstream>
#include <map>
#include <nlohmann/json.hpp>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <thread>
#include <tuple>
#include <variant>

#include "lpsparse/classical.hpp"
#include "lpsparse/errors.hpp"
#include "lpsparse/generator.hpp"
#include "lpsparse/instance_io.hpp"
#include "lpsparse/quantum.hpp"

namespace lpsparse::cli {
namespace {

namespace fs = std::filesystem;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Algorithm { Clarkson, LowPrec, Mpc, QClarkson, QLowPrec1, QLowPrec2, QMpc };

const std::map<std::string, Algorithm> kAlgorithms{
    {"clarkson", Algorithm::Clarkson},   {"lowprec", Algorithm::LowPrec},
    {"mpc", Algorithm::Mpc},             {"qclarkson", Algorithm::QClarkson},
    {"qlowprec1", Algorithm::QLowPrec1}, {"qlowprec2", Algorithm::QLowPrec2},
    {"qmpc", Algorithm::QMpc},
};

bool needs_eps(Algorithm a) { return a != Algorithm::Clarkson && a != Algorithm::QClarkson; }
bool wants_mpc(Algorithm a) { return a == Algorithm::Mpc || a == Algorithm::QMpc; }

std::string format_number(double value) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

std::string format_ms(double value) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", value);
  return buf;
}

struct SolveSettings {
  std::string algorithm_name;
  Algorithm algorithm = Algorithm::Clarkson;
  std::optional<double> eps;
  QueryCostModel model;
};

struct TrialResult {
  ReportRecord record;
  std::vector<LedgerRecord> ledger;
};

TrialResult run_trial(const SolveSettings& settings, const Instance& inst, std::string kind,
                      std::uint64_t seed) {
  const bool is_mpc = std::holds_alternative<MpcInstance>(inst);
  if (wants_mpc(settings.algorithm) != is_mpc) {
    throw UsageError("algorithm " + settings.algorithm_name + " needs " +
                     (wants_mpc(settings.algorithm) ? "a packing/covering" : "a plain LP") +
                     " instance");
  }
  Rng rng = Rng(seed).split(1);
  QueryLedger ledger;
  const auto start = std::chrono::steady_clock::now();
  SolveOutcome out;
  const double eps = settings.eps.value_or(0.0);
  if (is_mpc) {
    const auto& mpc = std::get<MpcInstance>(inst);
    out = settings.algorithm == Algorithm::Mpc ? mpc_solve(mpc, eps, rng, ledger)
                                                : quantum_mpc(mpc, eps, settings.model, rng, ledger);
  } else {
    const auto& lp = std::get<LpInstance>(inst);
    switch (settings.algorithm) {
      case Algorithm::Clarkson: out = clarkson_solve(lp, rng, ledger); break;
      case Algorithm::LowPrec: out = low_precision_solve(lp, eps, rng, ledger); break;
      case Algorithm::QClarkson: out = quantum_clarkson(lp, settings.model, rng, ledger); break;
      case Algorithm::QLowPrec1:
        out = quantum_lp_one_sided(lp, eps, settings.model, rng, ledger);
        break;
      case Algorithm::QLowPrec2:
        out = quantum_lp_two_sided(lp, eps, settings.model, rng, ledger);
        break;
      default: break;
    }
  }
  const double wall =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();

  TrialResult result;
  ReportRecord& r = result.record;
  r.algorithm = settings.algorithm_name;
  r.kind = std::move(kind);
  r.n = is_mpc ? std::get<MpcInstance>(inst).n_c() : std::get<LpInstance>(inst).n();
  r.d = std::visit([](const auto& i) { return i.d(); }, inst);
  r.eps = needs_eps(settings.algorithm) ? settings.eps : std::nullopt;
  r.seed = seed;
  r.status = std::string(to_string(out.status));
  r.objective = out.objective;
  r.iterations = out.stats.iterations;
  r.max_sublp = out.stats.max_sublp;
  r.row_reads = ledger.classical_row_reads();
  r.q_charge = ledger.quantum_query_charge();
  r.wall_ms = wall;
  result.ledger = ledger.records();
  return result;
}

// Runs job(i) for i in [0, count) on up to `parallel` threads. Results keep
// their index; the first failure by index is rethrown.
template <class Job>
std::vector<TrialResult> run_all(std::size_t count, std::size_t parallel, const Job& job) {
  std::vector<TrialResult> results(count);
  std::vector<std::exception_ptr> errors(count);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < count;) {
      try {
        results[i] = job(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const std::size_t threads = std::clamp<std::size_t>(parallel, 1, std::max<std::size_t>(count, 1));
  std::vector<std::thread> pool;
  for (std::size_t t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return results;
}

fs::path output_path(const std::string& given) {
  fs::path path(given);
  if (path.is_relative()) {
    if (const char* dir = std::getenv(kOutDirEnv); dir != nullptr && *dir != '\0') {
      path = fs::path(dir) / path;
    }
  }
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  return path;
}

void append_report(const fs::path& path, const std::vector<TrialResult>& results) {
  const bool fresh = !fs::exists(path) || fs::file_size(path) == 0;
  std::ofstream file(path, std::ios::app);
  if (!file) throw UsageError("cannot open report file " + path.string());
  if (fresh) file << csv_header() << '\n';
  for (const auto& r : results) file << to_csv(r.record) << '\n';
}

nlohmann::json record_json(const ReportRecord& r) {
  nlohmann::json j{{"algorithm", r.algorithm}, {"kind", r.kind},
                   {"n", r.n},                 {"d", r.d},
                   {"seed", r.seed},           {"status", r.status},
                   {"iterations", r.iterations}, {"max_sublp", r.max_sublp},
                   {"row_reads", r.row_reads}, {"q_charge", r.q_charge},
                   {"wall_ms", r.wall_ms}};
  j["eps"] = r.eps ? nlohmann::json(*r.eps) : nlohmann::json(nullptr);
  j["objective"] = r.objective ? nlohmann::json(*r.objective) : nlohmann::json(nullptr);
  return j;
}

void write_json(const fs::path& path, const std::vector<TrialResult>& results,
                const std::optional<nlohmann::json>& summary) {
  nlohmann::json doc;
  doc["records"] = nlohmann::json::array();
  for (const auto& r : results) doc["records"].push_back(record_json(r.record));
  if (summary) doc["summary"] = *summary;
  std::ofstream file(path);
  if (!file) throw UsageError("cannot open json file " + path.string());
  file << doc.dump(2) << '\n';
}

void write_ledger(const fs::path& path, const std::vector<TrialResult>& results) {
  std::ofstream file(path);
  if (!file) throw UsageError("cannot open ledger file " + path.string());
  file << "n,seed,procedure,iteration,charge,row_cost\n";
  for (const auto& r : results) {
    for (const auto& e : r.ledger) {
      file << r.record.n << ',' << r.record.seed << ',' << e.procedure << ',' << e.iteration << ','
           << e.charge << ',' << e.row_cost << '\n';
    }
  }
}

struct OutputFlags {
  std::string report;
  std::string json;
  std::string ledger;
};

void emit(std::ostream& out, const OutputFlags& flags, const std::vector<TrialResult>& results,
          const std::optional<nlohmann::json>& summary = std::nullopt) {
  out << csv_header() << '\n';
  for (const auto& r : results) out << to_csv(r.record) << '\n';
  std::string report = flags.report;
  if (report.empty() && std::getenv(kOutDirEnv) != nullptr) report = "report.csv";
  if (!report.empty()) append_report(output_path(report), results);
  if (!flags.json.empty()) write_json(output_path(flags.json), results, summary);
  if (!flags.ledger.empty()) write_ledger(output_path(flags.ledger), results);
}

void add_solver_flags(CLI::App& cmd, SolveSettings& settings, OutputFlags& flags,
                      std::size_t& trials, std::size_t& parallel, std::uint64_t& seed) {
  std::vector<std::string> names;
  for (const auto& [name, a] : kAlgorithms) names.push_back(name);
  cmd.add_option("--algorithm", settings.algorithm_name, "Solver to run")
      ->required()
      ->check(CLI::IsMember(names));
  cmd.add_option("--eps", settings.eps, "Accuracy for the approximate solvers")
      ->check(CLI::PositiveNumber);
  cmd.add_option("--seed", seed, "Base seed; trial k uses seed + k");
  cmd.add_option("--trials", trials, "Independent trials")->check(CLI::PositiveNumber);
  cmd.add_option("--parallel", parallel, "Worker threads")->check(CLI::PositiveNumber);
  cmd.add_option("--charge-constant", settings.model.charge_constant,
                 "Constant in front of every quantum charge")
      ->check(CLI::PositiveNumber);
  cmd.add_option("--polylog-exponent", settings.model.polylog_exponent,
                 "Exponent of ln n in the sampling charge")
      ->check(CLI::NonNegativeNumber);
  cmd.add_flag("--record-actual", settings.model.record_actual,
               "Also count the rows the simulation reads");
  cmd.add_option("--report", flags.report, "Append CSV records to this file");
  cmd.add_option("--json", flags.json, "Write records as JSON");
  cmd.add_option("--ledger", flags.ledger, "Write the quantum charge records as CSV");
}

void finish_settings(SolveSettings& settings) {
  settings.algorithm = kAlgorithms.at(settings.algorithm_name);
  if (needs_eps(settings.algorithm) && !settings.eps) {
    throw UsageError("--eps is required for " + settings.algorithm_name);
  }
}

std::vector<std::size_t> parse_sizes(const std::string& list) {
  std::vector<std::size_t> sizes;
  std::stringstream ss(list);
  for (std::string item; std::getline(ss, item, ',');) {
    std::size_t used = 0;
    double value = 0.0;
    try {
      value = std::stod(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != item.size() || !(value >= 1.0) || value != std::floor(value) || value > 1e12) {
      throw UsageError("--n expects positive integers, got '" + item + "'");
    }
    sizes.push_back(static_cast<std::size_t>(value));
  }
  if (sizes.empty()) throw UsageError("--n is empty");
  return sizes;
}

InstanceKind kind_for(const std::optional<std::string>& name, Algorithm algorithm) {
  if (!name) return wants_mpc(algorithm) ? InstanceKind::Mixed : InstanceKind::FeasibleNondegenerate;
  const auto kind = parse_instance_kind(*name);
  if (!kind) throw UsageError("unknown kind '" + *name + "'");
  if (is_mpc_kind(*kind) != wants_mpc(algorithm)) {
    throw UsageError("kind " + *name + " does not match the chosen algorithm");
  }
  return *kind;
}

}  // namespace

std::string csv_header() {
  return "algorithm,kind,n,d,eps,seed,status,objective,iterations,max_sublp,row_reads,q_charge,"
         "wall_ms";
}

std::string to_csv(const ReportRecord& r) {
  std::ostringstream s;
  s << r.algorithm << ',' << r.kind << ',' << r.n << ',' << r.d << ','
    << (r.eps ? format_number(*r.eps) : "") << ',' << r.seed << ',' << r.status << ','
    << (r.objective ? format_number(*r.objective) : "") << ',' << r.iterations << ','
    << r.max_sublp << ',' << r.row_reads << ',' << r.q_charge << ',' << format_ms(r.wall_ms);
  return s.str();
}

std::optional<double> loglog_slope(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.empty()) return std::nullopt;
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] > 0.0) || !(y[i] > 0.0)) return std::nullopt;
    mx += std::log(x[i]);
    my += std::log(y[i]);
  }
  mx /= static_cast<double>(x.size());
  my /= static_cast<double>(x.size());
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = std::log(x[i]) - mx;
    sxy += dx * (std::log(y[i]) - my);
    sxx += dx * dx;
  }
  if (sxx <= 1e-12) return std::nullopt;
  return sxy / sxx;
}

int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Sampling-based LP solvers and their query accounting", "lpsparse"};
  app.require_subcommand(1);

  // gen
  auto* gen = app.add_subcommand("gen", "Generate an instance file");
  std::string gen_kind, gen_out, gen_format = "dense";
  std::size_t gen_n = 0, gen_d = 0;
  std::uint64_t gen_seed = 0;
  gen->add_option("--kind", gen_kind, "Instance family")->required();
  gen->add_option("--n", gen_n, "Constraint count (covering rows for mixed kinds)")->required();
  gen->add_option("--d", gen_d, "Dimension")->required();
  gen->add_option("--seed", gen_seed, "Generator seed");
  gen->add_option("--out", gen_out, "Output file; stdout when omitted");
  gen->add_option("--format", gen_format, "Matrix layout")
      ->check(CLI::IsMember({"dense", "triplets"}));

  // solve
  auto* solve = app.add_subcommand("solve", "Solve an instance file");
  SolveSettings solve_settings;
  OutputFlags solve_flags;
  std::size_t solve_trials = 1, solve_parallel = 1;
  std::uint64_t solve_seed = 0;
  std::string solve_in;
  solve->add_option("--in", solve_in, "Instance file")->required()->check(CLI::ExistingFile);
  add_solver_flags(*solve, solve_settings, solve_flags, solve_trials, solve_parallel, solve_seed);

  // sweep
  auto* sweep = app.add_subcommand("sweep", "Generate and solve across sizes");
  SolveSettings sweep_settings;
  OutputFlags sweep_flags;
  std::size_t sweep_trials = 1, sweep_parallel = 1, sweep_d = 0;
  std::uint64_t sweep_seed = 0;
  std::string sweep_n;
  std::optional<std::string> sweep_kind;
  sweep->add_option("--n", sweep_n, "Comma-separated sizes, e.g. 1e3,1e4")->required();
  sweep->add_option("--d", sweep_d, "Dimension")->required()->check(CLI::PositiveNumber);
  sweep->add_option("--kind", sweep_kind, "Instance family");
  add_solver_flags(*sweep, sweep_settings, sweep_flags, sweep_trials, sweep_parallel, sweep_seed);

  try {
    std::reverse(args.begin(), args.end());
    app.parse(args);

    if (gen->parsed()) {
      const auto kind = parse_instance_kind(gen_kind);
      if (!kind) throw UsageError("unknown kind '" + gen_kind + "'");
      if (gen_n == 0 || gen_d == 0) throw UsageError("--n and --d must be positive");
      const Instance inst = generate_instance(*kind, gen_n, gen_d, gen_seed);
      const MatrixFormat format = gen_format == "dense" ? MatrixFormat::Dense : MatrixFormat::Triplets;
      const InstanceHeader header{gen_kind, gen_seed};
      if (gen_out.empty()) {
        out << serialize_instance(inst, format, header);
      } else {
        write_instance(output_path(gen_out), inst, format, header);
      }
      return kExitOk;
    }

    if (solve->parsed()) {
      finish_settings(solve_settings);
      InstanceHeader header;
      const Instance inst = read_instance(solve_in, &header);
      const std::string kind = header.kind.value_or("");
      const auto results = run_all(solve_trials, solve_parallel, [&](std::size_t k) {
        return run_trial(solve_settings, inst, kind, solve_seed + k);
      });
      emit(out, solve_flags, results);
      return kExitOk;
    }

    finish_settings(sweep_settings);
    const InstanceKind kind = kind_for(sweep_kind, sweep_settings.algorithm);
    const std::vector<std::size_t> sizes = parse_sizes(sweep_n);
    const std::size_t jobs = sizes.size() * sweep_trials;
    auto results = run_all(jobs, sweep_parallel, [&](std::size_t job) {
      const std::size_t n = sizes[job / sweep_trials];
      const std::uint64_t seed = sweep_seed + job % sweep_trials;
      return run_trial(sweep_settings, generate_instance(kind, n, sweep_d, seed),
                       std::string(to_string(kind)), seed);
    });
    std::stable_sort(results.begin(), results.end(), [](const auto& a, const auto& b) {
      return std::tie(a.record.n, a.record.seed) < std::tie(b.record.n, b.record.seed);
    });

    const bool quantum = sweep_settings.algorithm_name.front() == 'q';
    std::vector<double> xs, ys;
    for (const auto& r : results) {
      xs.push_back(static_cast<double>(r.record.n));
      ys.push_back(static_cast<double>(quantum ? r.record.q_charge : r.record.row_reads));
    }
    const auto slope = loglog_slope(xs, ys);
    const std::string metric = quantum ? "q_charge" : "row_reads";
    nlohmann::json summary{{"metric", metric}};
    summary["slope"] = slope ? nlohmann::json(*slope) : nlohmann::json("n/a");
    emit(out, sweep_flags, results, summary);
    out << "summary,slope," << metric << ',' << (slope ? format_number(*slope) : "n/a") << '\n';
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kExitOk : kExitUsage;
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const ParseError& e) {
    err << "bad instance file: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitInternal;
  }
}

}  // namespace lpsparse::cli
