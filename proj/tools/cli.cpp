#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "sjlt/chaos.hpp"
#include "sjlt/graphs.hpp"
#include "sjlt/random.hpp"
#include "sjlt/transform.hpp"
#include "sjlt/vector_io.hpp"

namespace sjlt::cli {

namespace {

using Params = std::map<std::string, std::string>;

// Keys that never appear in report headers: they steer I/O, not results.
bool is_io_key(const std::string& key) { return key == "out" || key == "verify"; }

struct Schema {
  std::vector<std::string> required;
  Params defaults;
};

const Schema& schema_for(Command c) {
  static const Params kappa = {{"kappa-m", "1"}, {"kappa-k", "4"}, {"kappa-c", "2"}, {"independence-degree", "auto"}};
  auto with_kappa = [](Params p) {
    p.insert(kappa.begin(), kappa.end());
    return p;
  };
  static const Schema transform{{"d", "epsilon", "delta", "bucket-seed", "sign-seed", "in"}, with_kappa({})};
  static const Schema distortion{
      {"d", "epsilon", "delta"},
      with_kappa({{"bucket-seed", "1"}, {"sign-seed", "2"}, {"trials", "10000"}, {"x", "uniform"}, {"x-seed", "0"},
                  {"method", "sparse"}})};
  static const Schema moment{{"d", "k", "m"},
                             {{"x", "uniform"}, {"x-seed", "0"}, {"C", "auto"}, {"mc-trials", "10000"},
                              {"mc-seed", "1"}, {"independence-degree", "auto"}, {"budget", "100000000"}}};
  static const Schema graph{{"m", "i-max"}, {{"i-min", "1"}, {"budget", "1000000000"}, {"timing", "on"}}};
  static const Schema tail{
      {"d", "epsilon", "delta"},
      with_kappa({{"bucket-seed", "1"}, {"sign-seed", "2"}, {"trials", "100000"}, {"x", "uniform"}, {"x-seed", "0"}})};
  switch (c) {
    case Command::transform: return transform;
    case Command::distortion_bench: return distortion;
    case Command::moment_report: return moment;
    case Command::graph_count: return graph;
    case Command::tail_estimate: return tail;
  }
  return transform;
}

[[noreturn]] void invalid(const std::string& msg) { throw CliError("invalid_parameter", msg, kExitInvalid); }

class Reader {
 public:
  explicit Reader(Params p) : p_(std::move(p)) {}

  const std::string& str(const std::string& key) const {
    auto it = p_.find(key);
    if (it == p_.end()) invalid("missing --" + key);
    return it->second;
  }

  bool is_auto(const std::string& key) const { return str(key) == "auto"; }

  std::uint64_t u64(const std::string& key) const {
    const std::string& s = str(key);
    std::size_t pos = 0;
    unsigned long long v = 0;
    try {
      if (!s.empty() && s.front() == '-') throw std::invalid_argument("negative");
      v = std::stoull(s, &pos, 10);
    } catch (const std::exception&) {
      invalid("--" + key + " expects a non-negative integer, got '" + s + "'");
    }
    if (pos != s.size()) invalid("--" + key + " expects a non-negative integer, got '" + s + "'");
    return v;
  }

  std::uint64_t positive(const std::string& key) const {
    const std::uint64_t v = u64(key);
    if (v == 0) invalid("--" + key + " must be positive");
    return v;
  }

  double real(const std::string& key) const {
    try {
      return io::parse_double(str(key));
    } catch (const std::invalid_argument&) {
      invalid("--" + key + " expects a finite number, got '" + str(key) + "'");
    }
  }

  const Params& params() const { return p_; }

 private:
  Params p_;
};

Params effective(const RunConfig& cfg) {
  const Schema& s = schema_for(cfg.command);
  Params p = s.defaults;
  for (const auto& [k, v] : cfg.params) p[k] = v;
  for (const auto& key : s.required) {
    if (!p.count(key)) invalid("missing required --" + key + " for " + command_name(cfg.command));
  }
  for (const auto& [k, v] : p) {
    if (is_io_key(k)) continue;
    if (!s.defaults.count(k) && std::find(s.required.begin(), s.required.end(), k) == s.required.end()) {
      invalid("unknown parameter --" + k + " for " + command_name(cfg.command));
    }
  }
  return p;
}

std::string header_line(Command c, const Params& p) {
  std::string out = "# sjlt " + command_name(c);
  for (const auto& [k, v] : p) {
    if (!is_io_key(k)) out += " " + k + "=" + v;
  }
  return out;
}

std::string fmt(long double v) { return io::format_double(static_cast<double>(v)); }

template <class F>
auto guarded(F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const CliError&) {
    throw;
  } catch (const BudgetExceeded& e) {
    throw CliError("budget_exceeded", e.what(), kExitBudget);
  } catch (const std::invalid_argument& e) {
    throw CliError("invalid_parameter", e.what(), kExitInvalid);
  } catch (const std::out_of_range& e) {
    throw CliError("invalid_parameter", e.what(), kExitInvalid);
  }
}

TransformSpec spec_from(const Reader& r) {
  Kappa kappa{r.real("kappa-m"), r.real("kappa-k"), r.real("kappa-c")};
  std::optional<std::size_t> degree;
  if (!r.is_auto("independence-degree")) degree = r.positive("independence-degree");
  return guarded([&] {
    return derive_spec(r.positive("d"), r.real("epsilon"), r.real("delta"), r.u64("bucket-seed"), r.u64("sign-seed"),
                       kappa, degree);
  });
}

/// Unit vectors by name: uniform (all 1/sqrt d), signed (random +-1/sqrt d),
/// spike (e_1), gaussian (normalized i.i.d. normals).
DenseVector make_x(const std::string& kind, std::uint64_t d, std::uint64_t seed) {
  DenseVector x(d, 0.0);
  const double u = 1.0 / std::sqrt(static_cast<double>(d));
  if (kind == "uniform") {
    std::fill(x.begin(), x.end(), u);
  } else if (kind == "signed") {
    for (std::uint64_t i = 0; i < d; ++i) x[i] = (stream_word(seed, i) >> 63) ? -u : u;
  } else if (kind == "spike") {
    x[0] = 1.0;
  } else if (kind == "gaussian") {
    for (std::uint64_t i = 0; i < d; ++i) x[i] = gaussian_at(seed, i);
    const double n = norm2(x);
    if (n == 0.0) invalid("gaussian x drew the zero vector");
    for (double& v : x) v /= n;
  } else {
    invalid("--x must be one of uniform, signed, spike, gaussian; got '" + kind + "'");
  }
  return x;
}

std::string render_transform(const Reader& r) {
  const TransformSpec spec = spec_from(r);
  std::ifstream in(r.str("in"));
  if (!in) throw CliError("missing_input", "cannot open input file '" + r.str("in") + "'", kExitIo);
  std::vector<SparseVector> xs;
  try {
    xs = io::read_sparse_vectors(in);
  } catch (const io::ParseError& e) {
    throw CliError("parse_error", r.str("in") + ": " + e.what(), kExitIo);
  }
  const auto ys = guarded([&] { return apply_batch(spec, xs); });
  std::ostringstream out;
  io::write_dense_vectors(out, ys);
  return out.str();
}

std::string render_distortion(const Reader& r, const Params& p) {
  const TransformSpec spec = spec_from(r);
  const std::uint64_t trials = r.positive("trials");
  const SparseVector x = SparseVector::from_dense(make_x(r.str("x"), spec.d, r.u64("x-seed")));
  const std::string& method = r.str("method");
  DistortionReport rep;
  if (method == "sparse") {
    rep = guarded([&] { return distortion_bench(spec, x, trials); });
  } else if (method == "rademacher" || method == "gaussian") {
    const auto kind = method == "rademacher" ? BaselineKind::rademacher : BaselineKind::gaussian;
    rep = guarded([&] { return baseline_distortion_bench(kind, spec, x, trials); });
  } else {
    invalid("--method must be sparse, rademacher or gaussian");
  }
  std::ostringstream out;
  out << header_line(Command::distortion_bench, p) << '\n'
      << "method,d,epsilon,delta,m,k,c,trials,failures,failure_rate,wilson_lo,wilson_hi,mean_ratio,min_ratio,max_ratio\n"
      << method << ',' << spec.d << ',' << fmt(spec.epsilon) << ',' << fmt(spec.delta) << ',' << spec.m << ','
      << spec.k << ',' << spec.c << ',' << rep.trials << ',' << rep.failures << ',' << fmt(rep.failure_rate) << ','
      << fmt(rep.wilson.lo) << ',' << fmt(rep.wilson.hi) << ',' << fmt(rep.mean_ratio) << ',' << fmt(rep.min_ratio)
      << ',' << fmt(rep.max_ratio) << '\n';
  return out.str();
}

std::string render_moment(const Reader& r, const Params& p) {
  const std::uint64_t d = r.positive("d");
  const std::uint64_t k = r.positive("k");
  const std::uint64_t m = r.positive("m");
  if (m > 64) invalid("--m is too large");
  const chaos::ChaosInstance inst = guarded([&] { return chaos::ChaosInstance(k, make_x(r.str("x"), d, r.u64("x-seed"))); });
  double C = inst.max_C();
  if (!r.is_auto("C")) {
    C = r.real("C");
    if (!(C > 0.0)) invalid("--C must be positive");
  }
  const std::size_t degree = r.is_auto("independence-degree") ? 4 * m : r.positive("independence-degree");
  const auto rep = guarded([&] {
    return chaos::moment_report(inst, static_cast<int>(m), C, r.u64("mc-trials"), r.u64("mc-seed"), degree,
                                r.positive("budget"));
  });
  std::ostringstream out;
  out << header_line(Command::moment_report, p) << '\n'
      << "d,k,m,exact,graph_expansion,mc_mean,mc_se,rhs_bound\n"
      << rep.d << ',' << rep.k << ',' << rep.m << ',' << fmt(rep.exact_moment) << ','
      << fmt(rep.graph_expansion_moment) << ',' << fmt(rep.monte_carlo.mean) << ','
      << fmt(rep.monte_carlo.standard_error) << ',' << fmt(rep.rhs_bound) << '\n';
  return out.str();
}

std::string render_graph_count(const Reader& r, const Params& p) {
  const std::uint64_t m = r.positive("m");
  const std::uint64_t i_max = r.positive("i-max");
  const std::uint64_t i_min = r.positive("i-min");
  const std::string& timing = r.str("timing");
  if (timing != "on" && timing != "off") invalid("--timing must be on or off");
  if (i_max > static_cast<std::uint64_t>(graphs::kMaxVertices) || m > 64) invalid("--i-max or --m too large");
  const std::uint64_t budget = r.positive("budget");
  std::ostringstream out;
  out << header_line(Command::graph_count, p) << '\n' << "m,i,t,count,elapsed_ms\n";
  for (std::uint64_t i = i_min; i <= i_max; ++i) {
    const auto start = std::chrono::steady_clock::now();
    const auto hist = guarded([&] { return graphs::class_histogram(static_cast<int>(i), static_cast<int>(m), budget); });
    const double ms =
        timing == "on" ? std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count()
                       : 0.0;
    char elapsed[32];
    std::snprintf(elapsed, sizeof elapsed, "%.3f", ms);
    for (std::uint64_t t = 1; t <= i / 2; ++t) {
      out << m << ',' << i << ',' << t << ',' << hist[t].str() << ',' << elapsed << '\n';
    }
  }
  return out.str();
}

std::string render_tail(const Reader& r, const Params& p) {
  const TransformSpec spec = spec_from(r);
  const std::uint64_t trials = r.positive("trials");
  const DenseVector x = make_x(r.str("x"), spec.d, r.u64("x-seed"));
  const auto est = guarded([&] { return chaos::tail_estimate(spec, x, trials); });
  std::ostringstream out;
  out << header_line(Command::tail_estimate, p) << '\n'
      << "d,epsilon,delta,m,k,c,trials,failures,failure_rate,wilson_lo,wilson_hi\n"
      << spec.d << ',' << fmt(spec.epsilon) << ',' << fmt(spec.delta) << ',' << spec.m << ',' << spec.k << ','
      << spec.c << ',' << est.trials << ',' << est.failures << ',' << fmt(est.failure_rate) << ','
      << fmt(est.wilson.lo) << ',' << fmt(est.wilson.hi) << '\n';
  return out.str();
}

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

std::string drop_last_field(const std::string& line) {
  const auto comma = line.rfind(',');
  return comma == std::string::npos ? line : line.substr(0, comma);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CliError("missing_input", "cannot open '" + path + "'", kExitIo);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Recomputes `path` and compares. Reports carry their config in the header;
// transform outputs are recomputed from the flags given alongside --verify.
void verify(const RunConfig& cfg, const std::string& path) {
  const std::string existing = read_file(path);
  RunConfig replay = cfg;
  if (cfg.command != Command::transform) {
    const auto lines = lines_of(existing);
    if (lines.empty()) throw CliError("verify_mismatch", path + " is empty", kExitVerify);
    replay = parse_report_header(lines.front());
    if (replay.command != cfg.command) {
      throw CliError("verify_mismatch", path + " was written by " + command_name(replay.command), kExitVerify);
    }
  }
  replay.params.erase("verify");
  replay.params.erase("out");
  const auto want = lines_of(render(replay));
  const auto have = lines_of(existing);
  if (want.size() != have.size()) {
    throw CliError("verify_mismatch", path + ": expected " + std::to_string(want.size()) + " lines, found " +
                                          std::to_string(have.size()), kExitVerify);
  }
  const bool timed = cfg.command == Command::graph_count;
  for (std::size_t n = 0; n < want.size(); ++n) {
    const bool data_row = timed && n >= 2;
    const std::string a = data_row ? drop_last_field(want[n]) : want[n];
    const std::string b = data_row ? drop_last_field(have[n]) : have[n];
    if (a != b) {
      throw CliError("verify_mismatch", path + ":" + std::to_string(n + 1) + ": expected '" + a + "', found '" + b + "'",
                     kExitVerify);
    }
  }
}

}  // namespace

std::string command_name(Command c) {
  switch (c) {
    case Command::transform: return "transform";
    case Command::distortion_bench: return "distortion-bench";
    case Command::moment_report: return "moment-report";
    case Command::graph_count: return "graph-count";
    case Command::tail_estimate: return "tail-estimate";
  }
  return "?";
}

Command parse_command(const std::string& name) {
  for (Command c : {Command::transform, Command::distortion_bench, Command::moment_report, Command::graph_count,
                    Command::tail_estimate}) {
    if (command_name(c) == name) return c;
  }
  invalid("unknown command '" + name + "'");
}

RunConfig parse_report_header(const std::string& line) {
  std::istringstream in(line);
  std::string hash, tool, name;
  in >> hash >> tool >> name;
  if (hash != "#" || tool != "sjlt") {
    throw CliError("verify_mismatch", "first line is not an sjlt report header", kExitVerify);
  }
  RunConfig cfg;
  cfg.command = parse_command(name);
  for (std::string kv; in >> kv;) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos) throw CliError("verify_mismatch", "malformed header field '" + kv + "'", kExitVerify);
    cfg.params[kv.substr(0, eq)] = kv.substr(eq + 1);
  }
  return cfg;
}

std::string render(const RunConfig& config) {
  const Params p = effective(config);
  const Reader r(p);
  switch (config.command) {
    case Command::transform: return render_transform(r);
    case Command::distortion_bench: return render_distortion(r, p);
    case Command::moment_report: return render_moment(r, p);
    case Command::graph_count: return render_graph_count(r, p);
    case Command::tail_estimate: return render_tail(r, p);
  }
  return {};
}

RunConfig parse_args(int argc, const char* const* argv) {
  CLI::App app{"Sparse Johnson-Lindenstrauss transform and chaos-moment verification tool", "sjlt"};
  app.require_subcommand(1);

  struct Opt {
    std::string key;
    std::string desc;
  };
  const std::vector<Opt> spec_opts = {
      {"d", "ambient dimension"},
      {"epsilon", "distortion"},
      {"delta", "failure probability"},
      {"bucket-seed", "seed of the bucket hash"},
      {"sign-seed", "seed of the sign hash"},
      {"kappa-m", "multiplier in m = ceil(kappa_m ln(1/delta))"},
      {"kappa-k", "multiplier in k = ceil(kappa_k m / eps^2)"},
      {"kappa-c", "multiplier in c = ceil(kappa_c (m/F(m))^2 / eps)"},
      {"independence-degree", "polynomial degree of both hash families, or auto"},
  };
  const std::map<Command, std::vector<Opt>> per_command = {
      {Command::transform, {{"in", "sparse vector file"}}},
      {Command::distortion_bench,
       {{"trials", "number of seeds"},
        {"x", "uniform | signed | spike | gaussian"},
        {"x-seed", "seed for random x"},
        {"method", "sparse | rademacher | gaussian"}}},
      {Command::moment_report,
       {{"k", "number of buckets"},
        {"m", "moment order (reports E Z^{2m})"},
        {"x", "uniform | signed | spike | gaussian"},
        {"x-seed", "seed for random x"},
        {"C", "cap constant in the bound, or auto for 1/||x||_inf^2"},
        {"mc-trials", "Monte Carlo trials"},
        {"mc-seed", "Monte Carlo seed"},
        {"budget", "enumeration budget"}}},
      {Command::graph_count,
       {{"m", "half the sequence length"},
        {"i-min", "smallest vertex count"},
        {"i-max", "largest vertex count"},
        {"budget", "enumeration budget"}}},
      {Command::tail_estimate,
       {{"trials", "number of seeds"}, {"x", "uniform | signed | spike | gaussian"}, {"x-seed", "seed for random x"}}},
  };

  std::map<Command, CLI::App*> subs;
  std::map<Command, std::map<std::string, std::string>> values;
  std::map<Command, bool> no_timing;
  auto add = [&](Command c, const std::string& description) {
    CLI::App* sub = app.add_subcommand(command_name(c), description);
    subs[c] = sub;
    auto& vals = values[c];
    std::vector<Opt> opts = per_command.at(c);
    if (c != Command::moment_report && c != Command::graph_count) opts.insert(opts.begin(), spec_opts.begin(), spec_opts.end());
    if (c == Command::moment_report) opts.insert(opts.begin(), {{"d", "dimension"}, {"independence-degree", "hash degree, or auto for 4m"}});
    for (const Opt& o : opts) sub->add_option("--" + o.key, vals[o.key], o.desc);
    sub->add_option("--out", vals["out"], "output path, - for stdout");
    sub->add_option("--verify", vals["verify"], "recompute and compare against this file");
    if (c == Command::graph_count) sub->add_flag("--no-timing", no_timing[c], "write 0 in elapsed_ms");
  };
  add(Command::transform, "apply the transform to every vector in a file");
  add(Command::distortion_bench, "failure rate of ||Mx||/||x|| over many seeds");
  add(Command::moment_report, "exact, graph-expansion and Monte Carlo moments of Z");
  add(Command::graph_count, "exact |W_[i],t| counts");
  add(Command::tail_estimate, "empirical P(|Z| >= epsilon)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    throw CliError("help", app.help(), 0);
  } catch (const CLI::ParseError& e) {
    throw CliError("invalid_parameter", e.what(), kExitInvalid);
  }

  RunConfig cfg;
  for (const auto& [c, sub] : subs) {
    if (!sub->parsed()) continue;
    cfg.command = c;
    for (const auto& [key, value] : values[c]) {
      if (sub->get_option("--" + key)->count() > 0) cfg.params[key] = value;
    }
    if (no_timing[c]) cfg.params["timing"] = "off";
  }
  return cfg;
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  try {
    if (auto it = config.params.find("verify"); it != config.params.end()) {
      verify(config, it->second);
      err << "verify,ok," << it->second << '\n';
      return 0;
    }
    const std::string text = render(config);
    if (config.command == Command::transform) {
      const Params p = effective(config);
      const TransformSpec spec = spec_from(Reader(p));
      for (const auto& w : spec.warnings) err << "warning,assumption," << w << '\n';
    }
    auto it = config.params.find("out");
    if (it == config.params.end() || it->second == "-") {
      out << text;
    } else {
      std::ofstream f(it->second, std::ios::binary);
      if (!f) throw CliError("io_error", "cannot write '" + it->second + "'", kExitIo);
      f << text;
      if (!f) throw CliError("io_error", "write to '" + it->second + "' failed", kExitIo);
    }
    return 0;
  } catch (const CliError& e) {
    err << "error," << e.code() << ',' << e.what() << '\n';
    return e.exit_status();
  } catch (const std::exception& e) {
    err << "error,internal," << e.what() << '\n';
    return 1;
  }
}

}  // namespace sjlt::cli
