#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <numeric>
#include <random>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "eloc/electrical.hpp"
#include "eloc/errors.hpp"
#include "eloc/generators.hpp"
#include "eloc/graph_io.hpp"
#include "eloc/localization.hpp"
#include "eloc/routing.hpp"
#include "eloc/schur.hpp"

namespace eloc::cli {

namespace {

using nlohmann::json;

constexpr double kSlackTol = 1e-8;
constexpr double kProbTol = 1e-8;
constexpr double kDistTol = 1e-9;
constexpr double kRelTol = 1e-8;

/// Where command output goes: the caller's stream or the --out file.
class Sink {
 public:
  Sink(std::ostream& fallback, const std::string& path) : fallback_(fallback) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw IoError("cannot open output file '" + path + "'");
    }
  }
  std::ostream& stream() { return file_.is_open() ? file_ : fallback_; }

 private:
  std::ostream& fallback_;
  std::ofstream file_;
};

json nullable(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

EdgeVector load_weights(const std::string& spec, const Graph& g) {
  if (spec == "ones") return EdgeVector::ones(g.n_edges());
  std::ifstream in(spec);
  if (!in) throw IoError("cannot open weight file '" + spec + "'");
  std::vector<double> values;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    values.push_back(parse_real_field(line, line_no));
  }
  if (values.size() != g.n_edges())
    throw InvalidArgument("weight file has " + std::to_string(values.size()) +
                          " values, graph has " + std::to_string(g.n_edges()) + " edges");
  return EdgeVector(EdgeRole::Weights,
                    Eigen::Map<Eigen::VectorXd>(values.data(), static_cast<Eigen::Index>(values.size())));
}

// ---------------------------------------------------------------- analyze

struct AnalyzeArgs {
  std::string graph;
  std::string format = "json";
  std::string mode = "auto";
  bool skip_spectral = false;
};

int run_analyze(const AnalyzeArgs& a, std::ostream& out) {
  const Graph g = load_graph_arg(a.graph);
  ImpedanceMode mode = auto_mode(g);
  if (a.mode == "dense") mode = ImpedanceMode::Dense;
  if (a.mode == "streaming") mode = ImpedanceMode::Streaming;
  const TransferImpedance pi = transfer_impedance(g, mode);
  const bool unweighted = g.is_unweighted();

  std::vector<EdgeDelta> rows;
  double sum = NAN, mean = NAN, max = NAN;
  if (unweighted) {
    FlowSummary s = delta_summary(g);
    rows = std::move(s.per_edge);
    sum = s.sum_delta;
    mean = s.mean_delta;
    max = s.max_delta;
  } else {
    const ElectricalNetwork& net = pi.network();
    for (const Edge& e : g.edges())
      rows.push_back({e.tail, e.head, NAN, net.unit_flow(e.tail, e.head).values().lpNorm<1>(),
                      net.effective_resistance(e.tail, e.head)});
  }

  if (a.format == "csv") {
    out << "tail,head,delta,l1,reff\n";
    for (const EdgeDelta& r : rows)
      out << r.tail << ',' << r.head << ',' << (std::isfinite(r.delta) ? format_real(r.delta) : "")
          << ',' << format_real(r.l1) << ',' << format_real(r.reff) << '\n';
    return kOk;
  }

  json doc;
  doc["n"] = g.n_vertices();
  doc["m"] = g.n_edges();
  doc["trace_pi"] = pi.trace();
  doc["spectral_norm_abs_pi"] = a.skip_spectral ? json(nullptr) : json(pi.abs_spectral_norm().value);
  doc["max_colsum_abs_pi"] = pi.max_abs_colsum();
  doc["sum_delta"] = nullable(sum);
  doc["mean_delta"] = nullable(mean);
  doc["max_delta"] = nullable(max);
  json per_edge = json::array();
  for (const EdgeDelta& r : rows)
    per_edge.push_back({{"tail", r.tail}, {"head", r.head}, {"delta", nullable(r.delta)},
                        {"l1", r.l1}, {"reff", r.reff}});
  doc["per_edge"] = std::move(per_edge);
  out << doc.dump() << '\n';
  return kOk;
}

// -------------------------------------------------------------- eliminate

struct EliminateArgs {
  std::string graph;
  std::string weights = "ones";
  bool skip_vi = false;
};

int run_eliminate(const EliminateArgs& a, std::ostream& out) {
  const Graph g = load_graph_arg(a.graph);
  const EdgeVector w = load_weights(a.weights, g);
  EliminationOptions opts;
  opts.skip_values = a.skip_vi;
  const EliminationTrace trace = run_elimination(g, w, opts);

  bool ok = true;
  double max_slack = -INFINITY, max_rank_one_gap = 0.0;
  for (const EliminationStep& s : trace.steps) {
    const double gap = std::abs(s.rank_one - s.degree);
    max_rank_one_gap = std::max(max_rank_one_gap, gap);
    if (gap > kRelTol * std::max(1.0, s.degree)) ok = false;
    if (trace.values_recorded) {
      max_slack = std::max(max_slack, s.slack);
      if (s.slack > kSlackTol) ok = false;
    }
    out << json{{"type", "step"},        {"i", s.index},
                {"retained", s.retained}, {"pivot", s.pivot},
                {"degree", s.degree},     {"rank_one", s.rank_one},
                {"V_i", nullable(s.v_value)}, {"V_next", nullable(s.v_next)},
                {"slack", nullable(s.slack)}, {"split_error", nullable(s.split_error)}}
               .dump()
        << '\n';
  }
  if (trace.values_recorded && trace.terminal.v_value > trace.w_norm_sq + kSlackTol) ok = false;
  out << json{{"type", "summary"},
              {"steps", trace.steps.size()},
              {"terminal", {trace.terminal.a, trace.terminal.b}},
              {"V_0", nullable(trace.initial_value())},
              {"V_T", nullable(trace.terminal.v_value)},
              {"w_norm_sq", trace.w_norm_sq},
              {"max_slack", nullable(max_slack)},
              {"max_rank_one_gap", max_rank_one_gap},
              {"ok", ok}}
             .dump()
      << '\n';
  return ok ? kOk : kContractFailed;
}

// ----------------------------------------------------------------- verify

struct VerifyArgs {
  std::string graph;
  std::string prop = "all";
  int samples = 20;
  std::uint64_t seed = 1;
};

class Verifier {
 public:
  Verifier(const VerifyArgs& a, std::ostream& out)
      : args_(a), out_(out), g_(load_graph_arg(a.graph)), rng_(a.seed) {}

  int run() {
    static const std::vector<std::string> all = {
        "projection", "probabilities", "sum_potentials", "norm_energy",
        "schur_conductance", "local_energy", "elimination", "theorem4"};
    if (args_.prop == "all") {
      for (const auto& p : all) dispatch(p);
    } else {
      if (std::find(all.begin(), all.end(), args_.prop) == all.end())
        throw InvalidArgument("unknown proposition '" + args_.prop + "'");
      dispatch(args_.prop);
    }
    return failures_ == 0 ? kOk : kContractFailed;
  }

 private:
  void dispatch(const std::string& p) {
    if (p == "projection") projection();
    if (p == "probabilities") probabilities();
    if (p == "sum_potentials") sum_potentials();
    if (p == "norm_energy") norm_energy();
    if (p == "schur_conductance") schur_conductance();
    if (p == "local_energy") local_energy();
    if (p == "elimination") elimination();
    if (p == "theorem4") theorem4();
  }

  void emit(const std::string& prop, json params, double lhs, double rhs, bool ok) {
    if (!ok) ++failures_;
    out_ << json{{"prop", prop}, {"graph", args_.graph}, {"params", std::move(params)},
                 {"lhs", nullable(lhs)}, {"rhs", nullable(rhs)}, {"ok", ok}}
                .dump()
         << '\n';
  }

  std::vector<VertexId> random_subset() {
    const std::size_t n = g_.n_vertices();
    std::uniform_int_distribution<std::size_t> size_dist(2, n);
    std::vector<VertexId> all(n);
    std::iota(all.begin(), all.end(), VertexId{0});
    std::shuffle(all.begin(), all.end(), rng_);
    all.resize(size_dist(rng_));
    std::sort(all.begin(), all.end());
    return all;
  }

  VertexId pick(const std::vector<VertexId>& s) {
    return s[std::uniform_int_distribution<std::size_t>(0, s.size() - 1)(rng_)];
  }

  EdgeVector random_weights() {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    Eigen::VectorXd w(static_cast<Eigen::Index>(g_.n_edges()));
    for (Eigen::Index i = 0; i < w.size(); ++i) w[i] = u(rng_);
    return EdgeVector(EdgeRole::Weights, std::move(w));
  }

  void projection() {
    const TransferImpedance pi = transfer_impedance(g_, auto_mode(g_));
    const double target = static_cast<double>(g_.n_vertices()) - 1.0;
    const double trace = pi.trace();
    emit("projection", {{"check", "trace"}}, trace, target, std::abs(trace - target) <= 1e-8);
    if (pi.mode() == ImpedanceMode::Dense) {
      const Eigen::MatrixXd& p = pi.dense();
      const double err = (p * p - p).cwiseAbs().maxCoeff();
      emit("projection", {{"check", "idempotent"}}, err, 1e-8, err <= 1e-8);
    }
  }

  void probabilities() {
    for (int i = 0; i < args_.samples; ++i) {
      const auto s = random_subset();
      const Eigen::MatrixXd block = hitting_probabilities(g_, s, ProbabilityMethod::Block);
      const Eigen::MatrixXd ident = hitting_probabilities(g_, s, ProbabilityMethod::Identify);
      const Eigen::MatrixXd walk = hitting_probabilities(g_, s, ProbabilityMethod::WalkOracle);
      const double gap = std::max({(block - ident).cwiseAbs().maxCoeff(),
                                   (block - walk).cwiseAbs().maxCoeff(),
                                   (ident - walk).cwiseAbs().maxCoeff()});
      const double dist = (block.colwise().sum().array() - 1.0).abs().maxCoeff();
      emit("probabilities", {{"S", s}, {"check", "method_agreement"}}, gap, kProbTol,
           gap <= kProbTol);
      emit("probabilities", {{"S", s}, {"check", "distribution"}}, dist, kDistTol,
           dist <= kDistTol);
    }
  }

  void sum_potentials() {
    for (int i = 0; i < args_.samples; ++i) {
      const auto s = random_subset();
      const SchurSystem sys = schur_complement(g_, s);
      for (EdgeId e = 0; e < g_.n_edges(); ++e) {
        const double v = check_sum_potentials(sys, e);
        emit("sum_potentials", {{"S", s}, {"edge", e}}, v, 3.0, v <= 3.0 + 1e-9);
      }
    }
  }

  void norm_energy() {
    std::uniform_real_distribution<double> thr(0.0, 1.0);
    for (int i = 0; i < args_.samples; ++i) {
      const auto s = random_subset();
      const VertexId v = pick(s);
      double p = thr(rng_);
      if (p <= 0.0) p = 0.5;
      const InequalityCheck c = check_norm_energy(schur_complement(g_, s), v, p);
      emit("norm_energy", {{"S", s}, {"v", v}, {"p", p}}, c.lhs, c.rhs,
           c.lhs <= c.rhs * (1.0 + 1e-9) + 1e-12);
    }
  }

  void schur_conductance() {
    for (int i = 0; i < args_.samples; ++i) {
      const auto s = random_subset();
      const VertexId v = pick(s);
      const InequalityCheck c = check_schur_conductance(schur_complement(g_, s), v);
      emit("schur_conductance", {{"S", s}, {"v", v}}, c.lhs, c.rhs,
           std::abs(c.lhs - c.rhs) <= kRelTol * c.rhs);
    }
  }

  void local_energy() {
    for (int i = 0; i < args_.samples; ++i) {
      const auto s = random_subset();
      const bool ones = i % 2 == 0;
      const EdgeVector w = ones ? EdgeVector::ones(g_.n_edges()) : random_weights();
      const DegreeProfile prof = degree_profile(schur_complement(g_, s), w);
      emit("local_energy", {{"S", s}, {"w", ones ? "ones" : "random"}, {"T", prof.buckets}},
           prof.sum, prof.bound, prof.holds());
    }
  }

  void elimination() {
    const EdgeVector w = EdgeVector::ones(g_.n_edges());
    const EliminationTrace trace = run_elimination(g_, w);
    double max_slack = -INFINITY, max_gap = 0.0;
    bool gap_ok = true;
    for (const EliminationStep& s : trace.steps) {
      max_slack = std::max(max_slack, s.slack);
      const double gap = std::abs(s.rank_one - s.degree);
      max_gap = std::max(max_gap, gap);
      gap_ok = gap_ok && gap <= kRelTol * std::max(1.0, s.degree);
    }
    if (!trace.steps.empty()) {
      emit("elimination", {{"check", "slack"}, {"steps", trace.steps.size()}}, max_slack,
           kSlackTol, max_slack <= kSlackTol);
      emit("elimination", {{"check", "rank_one"}}, max_gap, kRelTol, gap_ok);
    }
    emit("elimination", {{"check", "terminal"}}, trace.terminal.v_value,
         trace.w_norm_sq + kSlackTol, trace.terminal.v_value <= trace.w_norm_sq + kSlackTol);
  }

  void theorem4() {
    const EdgeVector w = EdgeVector::ones(g_.n_edges());
    const Theorem4Result r = theorem4_check(g_, w);
    emit("theorem4", {{"check", "bound"}}, r.lhs, r.harmonic_bound, r.ok);
    const double rel = std::abs(r.lhs - r.cross_check) / std::max(1.0, std::abs(r.cross_check));
    emit("theorem4", {{"check", "cross_check"}, {"quadratic_form_abs", r.cross_check}}, r.lhs,
         r.cross_check, rel <= 1e-6);
  }

  const VerifyArgs& args_;
  std::ostream& out_;
  Graph g_;
  std::mt19937_64 rng_;
  int failures_ = 0;
};

// ------------------------------------------------------------------ route

struct RouteArgs {
  std::string graph;
  std::string demands;
  std::string demands_file;
};

int run_route(const RouteArgs& a, std::ostream& out) {
  const Graph g = load_graph_arg(a.graph);
  DemandSet demands;
  if (!a.demands_file.empty()) {
    std::ifstream in(a.demands_file);
    if (!in) throw IoError("cannot open demand file '" + a.demands_file + "'");
    demands = parse_demands(in);
  } else {
    std::string text = a.demands;
    std::replace(text.begin(), text.end(), ';', '\n');
    demands = parse_demands(text);
  }
  if (demands.size() == 0) throw InvalidArgument("no demands given");
  const RoutingReport report = route_demands(g, demands);
  json per_edge = json::array();
  for (const EdgeLoad& l : report.per_edge)
    per_edge.push_back(
        {{"tail", l.tail}, {"head", l.head}, {"flow", l.flow}, {"congestion", l.congestion}});
  json doc{{"max_congestion", report.max_congestion},
           {"competitive_ratio_bound", report.competitive_ratio_bound
                                           ? json(*report.competitive_ratio_bound)
                                           : json(nullptr)},
           {"per_edge", std::move(per_edge)}};
  out << doc.dump() << '\n';
  return kOk;
}

}  // namespace

int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Electrical flows, transfer impedance and Schur-complement elimination traces"};
  app.require_subcommand(1);
  app.fallthrough();
  std::string out_path;
  app.add_option("--out", out_path, "Write output to this file instead of stdout");

  auto* generate = app.add_subcommand("generate", "Write a generated graph as an edge list");
  std::string family;
  generate->add_option("family", family, "Family spec, e.g. torus:8 or expander:64:4:7")
      ->required();

  AnalyzeArgs analyze_args;
  auto* analyze = app.add_subcommand("analyze", "Delta statistics and transfer impedance norms");
  analyze->add_option("--graph", analyze_args.graph, "Edge-list file or family:<spec>")->required();
  analyze->add_option("--format", analyze_args.format)->check(CLI::IsMember({"json", "csv"}));
  analyze->add_option("--mode", analyze_args.mode, "Transfer impedance storage")
      ->check(CLI::IsMember({"auto", "dense", "streaming"}));
  analyze->add_flag("--skip-spectral", analyze_args.skip_spectral,
                    "Do not run power iteration on |Pi|");

  EliminateArgs elim_args;
  auto* eliminate = app.add_subcommand("eliminate", "Greedy elimination trace as JSON lines");
  eliminate->add_option("--graph", elim_args.graph)->required();
  eliminate->add_option("--w", elim_args.weights, "'ones' or a file with one weight per line");
  eliminate->add_flag("--skip-vi", elim_args.skip_vi, "Record pivots and degrees only");

  VerifyArgs verify_args;
  auto* verify = app.add_subcommand("verify", "Run proposition checks, one JSON record each");
  verify->add_option("--graph", verify_args.graph)->required();
  verify->add_option("--prop", verify_args.prop,
                     "projection, probabilities, sum_potentials, norm_energy, "
                     "schur_conductance, local_energy, elimination, theorem4 or all");
  verify->add_option("--samples", verify_args.samples, "Random instances per sweep")
      ->check(CLI::PositiveNumber);
  verify->add_option("--seed", verify_args.seed);

  RouteArgs route_args;
  auto* route = app.add_subcommand("route", "Electrical oblivious routing of a demand set");
  route->add_option("--graph", route_args.graph)->required();
  auto* demands_opt =
      route->add_option("--demands", route_args.demands, "'s t amount' triples, ';'-separated");
  auto* demands_file_opt = route->add_option("--demands-file", route_args.demands_file);
  demands_opt->excludes(demands_file_opt);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }

  try {
    Sink sink(out, out_path);
    std::ostream& o = sink.stream();
    if (*generate) {
      format_graph(generate_family(family), o);
      return kOk;
    }
    if (*analyze) return run_analyze(analyze_args, o);
    if (*eliminate) return run_eliminate(elim_args, o);
    if (*verify) return Verifier(verify_args, o).run();
    if (*route) {
      if (route_args.demands.empty() && route_args.demands_file.empty())
        throw InvalidArgument("route needs --demands or --demands-file");
      return run_route(route_args, o);
    }
  } catch (const InvalidArgument& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const IoError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const NumericalError& e) {
    err << "numerical failure: " << e.what() << '\n';
    return kNumerical;
  }
  return kUsage;
}

}  // namespace eloc::cli
