#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <ctime>
#include <exception>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "planecurve/chain_boltzmann.hpp"
#include "planecurve/chain_wanglandau.hpp"
#include "planecurve/fitting.hpp"
#include "planecurve/observables.hpp"
#include "planecurve/oracle.hpp"

using namespace planecurve;
namespace fs = std::filesystem;

namespace {

constexpr int kUsageError = 1;
constexpr int kVerificationFailed = 2;
constexpr const char* kOutDirEnv = "PLANECURVE_OUT_DIR";

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Counts such as --steps 1e6 arrive as doubles and must be exact integers.
std::string integer_from_scientific(std::string s) {
  std::size_t used = 0;
  double v = 0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw CLI::ValidationError("'" + s + "' is not a number");
  }
  if (used != s.size() || !(v >= 0) || v != std::floor(v) || v > 9.007199254740992e15) {
    throw CLI::ValidationError("'" + s + "' is not a non-negative integer");
  }
  std::ostringstream out;
  out << std::fixed << std::setprecision(0) << v;
  return out.str();
}

template <class T>
CLI::Option* add_count(CLI::App* app, const std::string& name, T& value, const std::string& desc) {
  return app->add_option(name, value, desc)->transform(integer_from_scientific);
}

struct MixOptions {
  MoveMix mix;
  bool no_reroot = false;

  void add(CLI::App* app) {
    app->add_option("--p1", mix.p1, "probability of an RI move");
    app->add_option("--p2", mix.p2, "probability of an RII move");
    app->add_option("--p3", mix.p3, "probability of an RIII move");
    app->add_flag("--no-reroot", no_reroot, "keep the root fixed between moves");
  }
  MoveMix resolve() const {
    MoveMix m = mix;
    m.reroot_every_step = !no_reroot;
    return m;
  }
};

std::string utc_now() {
  const auto t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  std::ostringstream out;
  out << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return out.str();
}

struct Metadata {
  std::string command;
  std::vector<std::pair<std::string, std::string>> config;
  std::string wall_clock;

  static Metadata of(const CLI::App* sub) {
    Metadata m;
    m.command = sub->get_name();
    for (const CLI::Option* opt : sub->get_options()) {
      if (opt->get_lnames().empty()) continue;
      const auto& key = opt->get_lnames().front();
      if (key == "help" || key == "config") continue;
      std::string value;
      if (opt->get_expected_min() == 0) {
        value = opt->count() > 0 ? "true" : "false";
      } else if (opt->count() > 0) {
        value = opt->as<std::string>();
      } else {
        value = opt->get_default_str();
      }
      m.config.emplace_back(key, value);
    }
    m.wall_clock = utc_now();
    return m;
  }

  void write_comment(std::ostream& out) const {
    out << "# planecurve " << PLANECURVE_VERSION << ' ' << command << '\n';
    for (const auto& [k, v] : config) out << "# " << k << '=' << v << '\n';
    out << "# wall_clock=" << wall_clock << '\n';
  }

  void write_json(std::ostream& out) const {
    nlohmann::ordered_json meta;
    meta["version"] = PLANECURVE_VERSION;
    meta["command"] = command;
    nlohmann::ordered_json cfg = nlohmann::ordered_json::object();
    for (const auto& [k, v] : config) cfg[k] = v;
    meta["config"] = cfg;
    out << nlohmann::ordered_json{{"meta", meta}}.dump() << '\n';
    out << nlohmann::ordered_json{{"wall_clock", wall_clock}}.dump() << '\n';
  }
};

// "-" is stdout; relative paths and the default name live under
// $PLANECURVE_OUT_DIR when it is set.
class Output {
 public:
  Output(const std::string& given, const std::string& default_name) {
    if (given == "-") return;
    fs::path p = given.empty() ? fs::path(default_name) : fs::path(given);
    if (p.is_relative()) {
      if (const char* dir = std::getenv(kOutDirEnv); dir && *dir) p = fs::path(dir) / p;
    }
    if (p.has_parent_path()) fs::create_directories(p.parent_path());
    file_.open(p);
    if (!file_) throw std::runtime_error("cannot open " + p.string() + " for writing");
    path_ = p;
  }
  std::ostream& stream() { return path_.empty() ? std::cout : file_; }
  const fs::path& path() const { return path_; }

 private:
  std::ofstream file_;
  fs::path path_;
};

std::ifstream open_input(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return in;
}

LogDensity load_g(const std::string& path) {
  auto in = open_input(path);
  return read_g_file(in);
}

// Writes text after its first line, so file-specific headers stay first.
void write_with_metadata(std::ostream& out, const std::string& text, const Metadata& meta) {
  const auto eol = text.find('\n');
  out << text.substr(0, eol + 1);
  meta.write_comment(out);
  out << text.substr(eol + 1);
}

RecordFormat parse_format(const std::string& s) { return s == "jsonl" ? RecordFormat::jsonl : RecordFormat::csv; }

// Runs k chains on their own threads and returns each chain's output.
template <class Body>
std::vector<std::string> run_chains(int k, Body body) {
  std::vector<std::string> out(static_cast<std::size_t>(k));
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(k));
  std::vector<std::thread> threads;
  for (int i = 0; i < k; ++i) {
    threads.emplace_back([&, i] {
      try {
        std::ostringstream buffer;
        body(i, buffer);
        out[static_cast<std::size_t>(i)] = buffer.str();
      } catch (...) {
        errors[static_cast<std::size_t>(i)] = std::current_exception();
      }
    });
  }
  for (auto& t : threads) t.join();
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return out;
}

void write_samples(Output& output, const Metadata& meta, RecordFormat format,
                   const std::vector<std::string>& chains) {
  auto& out = output.stream();
  if (format == RecordFormat::jsonl) {
    meta.write_json(out);
  } else {
    meta.write_comment(out);
  }
  write_record_header(out, format);
  for (const auto& c : chains) out << c;
}

struct SamplingOptions {
  std::uint64_t steps = 1000000;
  std::uint64_t interval = 1000;
  std::uint64_t seed = 1;
  int chains = 1;
  std::string out;
  std::string format = "csv";

  void add(CLI::App* app) {
    add_count(app, "--steps", steps, "steps per chain");
    add_count(app, "--interval", interval, "steps between recorded samples");
    add_count(app, "--seed", seed, "random seed");
    add_count(app, "--chains", chains, "independent chains, run in parallel")
        ->check(CLI::Range(1, 1024));
    app->add_option("--out", out, "output path, '-' for stdout");
    app->add_option("--format", format, "record format")->check(CLI::IsMember({"csv", "jsonl"}));
  }
};

// Subcommands. Each returns the process exit code.

struct TuneCommand {
  WangLandauParams params;
  MixOptions mix;
  std::string g_out;
  std::uint64_t progress_every = 10000000;
  bool checkpoint = false;

  void add(CLI::App* app) {
    add_count(app, "--max-size", params.L, "largest size L")->check(CLI::PositiveNumber);
    app->add_option("--epsilon", params.epsilon, "stop once f falls below this");
    app->add_option("--delta", params.delta, "flatness tolerance");
    add_count(app, "--s0", params.S0, "steps between histogram updates");
    add_count(app, "--s1", params.S1, "steps between flatness checks");
    add_count(app, "--seed", params.seed, "random seed");
    app->add_option("--g-out", g_out, "G file path, '-' for stdout");
    add_count(app, "--progress-every", progress_every, "steps between progress lines, 0 for none");
    app->add_flag("--checkpoint", checkpoint, "rewrite the G file after every halving of f");
    mix.add(app);
  }

  int operator()(const CLI::App* sub) {
    params.mix = mix.resolve();
    params.check();
    const auto meta = Metadata::of(sub);
    Output output(g_out, "g.txt");
    const GFileHeader header{params.epsilon, params.delta};
    auto emit = [&](const LogDensity& g, std::ostream& out) {
      std::ostringstream text;
      write_g_file(text, g, header);
      write_with_metadata(out, text.str(), meta);
    };

    const auto start = std::chrono::steady_clock::now();
    auto elapsed = [&] {
      return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    };
    TuneCallbacks cb;
    cb.progress_every = progress_every;
    cb.progress = [&](const WangLandauState& s) {
      std::cerr << "tune: step=" << s.steps << " f=" << s.f << " halvings=" << s.halvings
                << " flatness=" << histogram_flatness(s.H) << " elapsed=" << elapsed() << "s\n";
    };
    cb.on_halving = [&](const WangLandauState& s) {
      std::cerr << "tune: halving " << s.halvings << " f=" << s.f << " step=" << s.steps << '\n';
      if (checkpoint && !output.path().empty()) {
        LogDensity g = s.G;
        const double shift = g.G.front();
        for (double& x : g.G) x -= shift;
        std::ofstream out(output.path(), std::ios::trunc);
        emit(g, out);
      }
    };
    const auto wl = tune(params, cb);
    if (!output.path().empty()) {
      std::ofstream out(output.path(), std::ios::trunc);
      emit(wl.G, out);
    } else {
      emit(wl.G, std::cout);
    }
    std::cerr << "tune: done steps=" << wl.steps << " halvings=" << wl.halvings
              << " elapsed=" << elapsed() << "s\n";
    return 0;
  }
};

struct SampleWlCommand {
  std::string g_in;
  MixOptions mix;
  SamplingOptions sampling;

  void add(CLI::App* app) {
    app->add_option("--g-in", g_in, "tuned G file")->required();
    sampling.add(app);
    mix.add(app);
  }

  int operator()(const CLI::App* sub) {
    const auto g = load_g(g_in);
    const auto m = mix.resolve();
    m.check();
    if (sampling.interval == 0) throw UsageError("--interval must be positive");
    const auto meta = Metadata::of(sub);
    Output output(sampling.out, "samples-wl." + sampling.format);
    const auto format = parse_format(sampling.format);
    std::vector<std::uint64_t> hist(g.G.size(), 0);
    std::vector<std::vector<std::uint64_t>> per_chain(static_cast<std::size_t>(sampling.chains),
                                                      hist);
    const auto chains = run_chains(sampling.chains, [&](int i, std::ostream& out) {
      Rng rng(sampling.seed, static_cast<std::uint64_t>(i));
      CombMap state = CombMap::figure_eight();
      auto& h = per_chain[static_cast<std::size_t>(i)];
      sample(g, m, state, sampling.steps, sampling.interval, rng,
             [&](std::uint64_t step, const CombMap& x) {
               ++h[static_cast<std::size_t>(x.size() - g.ell)];
               write_record(out, make_record(x, step, i), format);
             });
    });
    write_samples(output, meta, format, chains);
    for (const auto& h : per_chain) {
      for (std::size_t j = 0; j < h.size(); ++j) hist[j] += h[j];
    }
    std::cerr << "sample-wl: flatness=" << histogram_flatness(hist) << '\n';
    return 0;
  }
};

struct SampleBoltzmannCommand {
  BoltzmannParams params;
  int max_size = 0;
  MixOptions mix;
  SamplingOptions sampling;

  void add(CLI::App* app) {
    app->add_option("--z", params.z, "fugacity per vertex");
    add_count(app, "--max-size", max_size, "size cap, 0 for none");
    sampling.add(app);
    mix.add(app);
  }

  int operator()(const CLI::App* sub) {
    params.mix = mix.resolve();
    if (max_size > 0) params.max_size = max_size;
    params.seed = sampling.seed;
    params.check();
    if (sampling.interval == 0) throw UsageError("--interval must be positive");
    if (!params.max_size && params.z >= kCriticalFugacity) {
      std::cerr << "warning: z >= " << kCriticalFugacity
                << " without --max-size; the size distribution is not normalisable\n";
    }
    const auto meta = Metadata::of(sub);
    Output output(sampling.out, "samples-boltzmann." + sampling.format);
    const auto format = parse_format(sampling.format);
    const auto chains = run_chains(sampling.chains, [&](int i, std::ostream& out) {
      Rng rng(sampling.seed, static_cast<std::uint64_t>(i));
      CombMap state = CombMap::figure_eight();
      run(params, state, sampling.steps, sampling.interval, rng,
          [&](std::uint64_t step, const CombMap& x) {
            write_record(out, make_record(x, step, i), format);
          });
    });
    write_samples(output, meta, format, chains);
    return 0;
  }
};

struct EnumerateCommand {
  int max_size = 5;
  bool codes = false;
  bool cross_check = false;
  std::string out;

  void add(CLI::App* app) {
    add_count(app, "--max-size", max_size, "largest size, at most 7")
        ->check(CLI::Range(1, kOracleMaxSize));
    app->add_flag("--codes", codes, "include the canonical code of every rooted class");
    app->add_flag("--cross-check", cross_check,
                  "recount sizes up to 4 by raw generation; exit 2 on disagreement");
    app->add_option("--out", out, "table path, '-' for stdout");
  }

  int operator()(const CLI::App* sub) {
    const auto meta = Metadata::of(sub);
    const auto table = enumerate_rooted_plane_curves(max_size);
    Output output(out, "enum.txt");
    std::ostringstream text;
    write_enum_table(text, table, codes);
    write_with_metadata(output.stream(), text.str(), meta);

    std::ostream& summary = output.path().empty() ? std::cerr : std::cout;
    for (int n = 1; n <= max_size; ++n) summary << n << ' ' << table.count(n) << '\n';
    summary << "total " << table.total() << '\n';
    if (cross_check) {
      bool ok = true;
      for (int n = 1; n <= std::min(max_size, 4); ++n) {
        const auto raw = count_by_raw_generation(n);
        if (raw != table.count(n)) {
          std::cerr << "cross-check: n=" << n << " raw=" << raw << " bfs=" << table.count(n) << '\n';
          ok = false;
        }
      }
      summary << "cross-check " << (ok ? "PASS" : "FAIL") << '\n';
      if (!ok) return kVerificationFailed;
    }
    return 0;
  }
};

struct VerifyChainCommand {
  std::string chain = "boltzmann";
  int max_size = 3;
  double z = 0.05;
  std::string g_in;
  double tol = 1e-10;
  MixOptions mix;
  std::string out = "-";

  void add(CLI::App* app) {
    app->add_option("--chain", chain, "chain to verify")->check(CLI::IsMember({"boltzmann", "wl"}));
    add_count(app, "--max-size", max_size, "state space is every curve up to this size")
        ->check(CLI::Range(1, 5));
    app->add_option("--z", z, "fugacity for the Boltzmann chain");
    app->add_option("--g-in", g_in, "G file for the WL chain, truncated to --max-size; flat if absent");
    app->add_option("--tol", tol, "residual tolerance");
    app->add_option("--out", out, "report path, '-' for stdout");
    mix.add(app);
  }

  int operator()(const CLI::App* sub) {
    const auto m = mix.resolve();
    m.check();
    const auto meta = Metadata::of(sub);
    const StateSpace space(enumerate_rooted_plane_curves(max_size));
    ChainKernels k;
    Eigen::VectorXd w;
    if (chain == "boltzmann") {
      BoltzmannParams p;
      p.z = z;
      p.mix = m;
      p.max_size = max_size;
      p.check();
      k = boltzmann_kernels(space, p);
      w = boltzmann_weights(space, z);
    } else {
      LogDensity g = LogDensity::flat(max_size);
      if (!g_in.empty()) {
        const auto full = load_g(g_in);
        if (full.ell != 1 || full.L < max_size) throw UsageError("G file does not cover 1.." + std::to_string(max_size));
        for (int n = 1; n <= max_size; ++n) g[n] = full(n);
      }
      k = wanglandau_kernels(space, g, m);
      w = wanglandau_weights(space, g);
    }
    const auto balance = check_balance(k.balanced, w);
    const auto stationary = check_balance(k.step, w);
    const bool ok = balance.row_sum_residual < tol && balance.balance_residual < tol &&
                    stationary.fixed_point_residual < tol && stationary.row_sum_residual < tol &&
                    balance.min_self_loop > 0;

    Output output(out, "verify.txt");
    auto& os = output.stream();
    meta.write_comment(os);
    os << std::setprecision(3);
    os << "chain=" << chain << " max_size=" << max_size << " states=" << space.size() << '\n';
    os << "row_sum_residual=" << std::max(balance.row_sum_residual, stationary.row_sum_residual) << '\n';
    os << "detailed_balance_residual=" << balance.balance_residual << " worst_pair=("
       << balance.worst_i << ',' << balance.worst_j << ")\n";
    os << "stationary_residual=" << stationary.fixed_point_residual << '\n';
    os << "min_self_loop=" << balance.min_self_loop << '\n';
    os << "result=" << (ok ? "PASS" : "FAIL") << '\n';
    return ok ? 0 : kVerificationFailed;
  }
};

std::pair<int, int> parse_range(const std::string& s) {
  const auto dots = s.find("..");
  if (dots == std::string::npos) throw UsageError("expected a..b, got '" + s + "'");
  try {
    return {std::stoi(s.substr(0, dots)), std::stoi(s.substr(dots + 2))};
  } catch (const std::exception&) {
    throw UsageError("expected a..b, got '" + s + "'");
  }
}

struct FitCommand {
  std::string g_in;
  int n_min = 10;
  std::string n_max_sweep;
  std::string out = "-";

  void add(CLI::App* app) {
    app->add_option("--g-in", g_in, "tuned G file")->required();
    add_count(app, "--n-min", n_min, "smallest size in every fit window");
    app->add_option("--n-max-sweep", n_max_sweep, "range a..b of window ends; default n-min+3..L");
    app->add_option("--out", out, "CSV path, '-' for stdout");
  }

  int operator()(const CLI::App* sub) {
    const auto g = load_g(g_in);
    auto [first, last] = n_max_sweep.empty() ? std::pair{n_min + 3, g.L} : parse_range(n_max_sweep);
    if (first > last) throw UsageError("empty --n-max-sweep range");
    const auto fits = sweep(g, n_min, first, last);
    const auto meta = Metadata::of(sub);
    Output output(out, "fit.csv");
    meta.write_comment(output.stream());
    write_sweep_csv(output.stream(), fits);
    const auto& f = fits.back();
    std::cerr << "fit: n=" << f.n_min << ".." << f.n_max << " mu=" << f.mu << " gamma=" << f.gamma
              << '\n';
    return 0;
  }
};

struct ExportDiagramsCommand {
  std::string g_in;
  double z = 0.05;
  int max_size = 0;
  std::uint64_t steps = 100000;
  std::uint64_t interval = 1000;
  std::uint64_t seed = 1;
  MixOptions mix;
  std::string out;

  void add(CLI::App* app) {
    app->add_option("--g-in", g_in, "sample with the WL chain on this G; Boltzmann otherwise");
    app->add_option("--z", z, "fugacity for the Boltzmann chain");
    add_count(app, "--max-size", max_size, "Boltzmann size cap, 0 for none");
    add_count(app, "--steps", steps, "chain steps");
    add_count(app, "--interval", interval, "steps between exported diagrams");
    add_count(app, "--seed", seed, "random seed");
    app->add_option("--out", out, "PD code path, '-' for stdout");
    mix.add(app);
  }

  int operator()(const CLI::App* sub) {
    if (interval == 0) throw UsageError("--interval must be positive");
    const auto meta = Metadata::of(sub);
    Output output(out, "diagrams.pd");
    auto& os = output.stream();
    meta.write_comment(os);
    Rng chain_rng(seed, 0);
    Rng sign_rng(seed, 1);
    CombMap state = CombMap::figure_eight();
    auto visit = [&](std::uint64_t, const CombMap& x) {
      os << pd_code(assign_crossings(x, sign_rng)) << '\n';
    };
    if (!g_in.empty()) {
      const auto m = mix.resolve();
      m.check();
      sample(load_g(g_in), m, state, steps, interval, chain_rng, visit);
    } else {
      BoltzmannParams p;
      p.z = z;
      p.mix = mix.resolve();
      if (max_size > 0) p.max_size = max_size;
      p.check();
      run(p, state, steps, interval, chain_rng, visit);
    }
    return 0;
  }
};

// Keys from a --config file become leading arguments of the subcommand, so
// anything given on the command line overrides them.
std::vector<std::string> expand_config(CLI::App& app, std::vector<std::string> args) {
  const auto sub_at = std::find_if(args.begin(), args.end(), [&](const std::string& a) {
    return app.get_subcommand_no_throw(a) != nullptr;
  });
  if (sub_at == args.end()) return args;
  CLI::App* sub = app.get_subcommand(*sub_at);
  std::string path;
  for (auto it = sub_at + 1; it != args.end(); ++it) {
    if (*it == "--config" && it + 1 != args.end()) path = *(it + 1);
    if (it->rfind("--config=", 0) == 0) path = it->substr(9);
  }
  if (path.empty()) return args;

  std::vector<std::string> injected;
  for (const auto& item : CLI::ConfigTOML().from_file(path)) {
    if (!item.parents.empty() && item.parents.front() != sub->get_name()) continue;
    const CLI::Option* opt = sub->get_option_no_throw("--" + item.name);
    if (!opt || item.name == "config") {
      throw CLI::ConversionError("config file " + path + ": unknown key '" + item.name + "'");
    }
    if (opt->get_expected_min() == 0) {
      const auto v = item.inputs.empty() ? std::string("true") : CLI::detail::to_lower(item.inputs.front());
      if (v == "true" || v == "1" || v == "yes" || v == "on") injected.push_back("--" + item.name);
    } else {
      injected.push_back("--" + item.name);
      injected.insert(injected.end(), item.inputs.begin(), item.inputs.end());
    }
  }
  args.insert(sub_at + 1, injected.begin(), injected.end());
  return args;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Random plane curves via flat Reidemeister-move Markov chains", "planecurve"};
  app.set_version_flag("--version", PLANECURVE_VERSION);
  app.require_subcommand(1);

  TuneCommand tune_cmd;
  SampleWlCommand sample_wl;
  SampleBoltzmannCommand sample_boltzmann;
  EnumerateCommand enumerate;
  VerifyChainCommand verify;
  FitCommand fit;
  ExportDiagramsCommand export_diagrams;

  std::vector<std::pair<CLI::App*, std::function<int(const CLI::App*)>>> commands;
  auto add = [&](const std::string& name, const std::string& desc, auto& cmd) {
    CLI::App* sub = app.add_subcommand(name, desc);
    sub->option_defaults()->always_capture_default()->multi_option_policy(
        CLI::MultiOptionPolicy::TakeLast);
    sub->add_option("--config", "key = value file; flags given on the command line win");
    cmd.add(sub);
    commands.emplace_back(sub, [&cmd](const CLI::App* s) { return cmd(s); });
  };
  add("tune", "Wang-Landau tuning of the log density of states", tune_cmd);
  add("sample-wl", "flat-histogram sampling with a tuned G", sample_wl);
  add("sample-boltzmann", "Boltzmann sampling at fugacity z", sample_boltzmann);
  add("enumerate", "exact enumeration of small rooted plane curves", enumerate);
  add("verify-chain", "exact detailed-balance and stationarity check", verify);
  add("fit", "fit mu and gamma to a tuned G over a window sweep", fit);
  add("export-diagrams", "PD codes of sampled curves with random crossings", export_diagrams);

  try {
    auto args = expand_config(app, std::vector<std::string>(argv + 1, argv + argc));
    std::reverse(args.begin(), args.end());
    app.parse(args);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::FileError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsageError;
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n\n";
    const auto parsed = app.get_subcommands();
    std::cerr << (parsed.empty() ? app.help() : parsed.back()->help());
    return kUsageError;
  }

  for (auto& [sub, run_command] : commands) {
    if (!sub->parsed()) continue;
    try {
      return run_command(sub);
    } catch (const std::exception& e) {
      std::cerr << "error: " << e.what() << '\n';
      return kUsageError;
    }
  }
  return kUsageError;
}
