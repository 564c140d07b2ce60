// Copyright 2026 The dyncoh Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


// Command-line front end: instance generation, validation, membership,
// distances, measures and property-suite runs.

#include <chrono>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "dyncoh/channel_io.hpp"
#include "dyncoh/divergences.hpp"
#include "dyncoh/free_sets.hpp"
#include "dyncoh/measures.hpp"
#include "json.hpp"

namespace {

using namespace dyncoh;
using nlohmann::json;

enum Exit : int { kPass = 0, kViolation = 1, kInputError = 2, kSolverFailure = 3 };

struct Globals {
  std::uint64_t seed = 0;
  double tol = kTolMember;
  std::string dims = "2x2";
  int trials = 10;
  std::string json_path;
  bool quiet = false;
  std::vector<std::string> argv;
};

std::pair<Index, Index> parse_dims(const std::string& s) {
  const auto x = s.find('x');
  if (x == std::string::npos) throw FormatError("--dims must look like <dIn>x<dOut>, got '" + s + "'");
  try {
    std::size_t used_a = 0, used_b = 0;
    const long a = std::stol(s.substr(0, x), &used_a);
    const long b = std::stol(s.substr(x + 1), &used_b);
    if (used_a != x || used_b != s.size() - x - 1 || a < 1 || b < 1 || a > 64 || b > 64) {
      throw FormatError("");
    }
    return {a, b};
  } catch (const std::exception&) {
    throw FormatError("--dims must look like <dIn>x<dOut>, got '" + s + "'");
  }
}

json encode(const ComplexMatrix& m) {
  json rows = json::array();
  for (Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Index j = 0; j < m.cols(); ++j) row.push_back({m(i, j).real(), m(i, j).imag()});
    rows.push_back(std::move(row));
  }
  return rows;
}

json encode(const CheckRecord& c) {
  return {{"name", c.name},
          {"status", !c.asserted ? "logged" : (c.passed() ? "pass" : "fail")},
          {"max_violation", c.max_violation},
          {"tolerance", c.tolerance},
          {"trials", c.trials},
          {"solver_failures", c.solver_failures},
          {"worst", c.worst()},
          {"witnesses", c.witnesses},
          {"note", c.note}};
}

json report_header(const Globals& g) {
  json r;
  r["command"] = g.argv;
  r["seed"] = g.seed;
  r["tolerances"] = {{"membership", g.tol},
                     {"certificate", kCertTol},
                     {"diamond_certificate", kDiamondCertTol},
                     {"trace_grid", kGridTol}};
  return r;
}

void emit_json(const Globals& g, json report, double seconds) {
  if (g.json_path.empty()) return;
  // The only non-deterministic field.
  report["wall_time_seconds"] = seconds;
  const std::string text = report.dump(1) + "\n";
  if (g.json_path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(g.json_path, std::ios::binary);
  if (!out) throw FormatError("cannot write " + g.json_path);
  out << text;
}

class Timer {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

// --- gen ---------------------------------------------------------------------

struct GenArgs {
  std::string kind;
  std::string name;
  std::string free_class = "DCI";
  double p = 0.5;
  std::string out;
};

Channel named_channel(const std::string& name, Index din, Index dout, double p) {
  const auto square = [&] {
    if (din != dout) throw FormatError("'" + name + "' needs dim_in == dim_out");
  };
  if (name == "identity") {
    square();
    return identity_channel(din);
  }
  if (name == "hadamard") {
    if (din != 2 || dout != 2) throw FormatError("'hadamard' needs --dims 2x2");
    return hadamard_channel();
  }
  if (name == "dephasing") {
    square();
    return dephasing_channel(din);
  }
  if (name == "replacer-maximally-mixed") {
    return replacer_channel(ComplexMatrix::Identity(dout, dout) / double(dout), din);
  }
  if (name == "depolarizing") {
    square();
    if (!(p >= 0.0 && p <= 1.0)) throw FormatError("--p must lie in [0, 1]");
    return depolarizing_channel(din, p);
  }
  throw FormatError("unknown named channel '" + name + "'");
}

int cmd_gen(const Globals& g, const GenArgs& a) {
  const auto [din, dout] = parse_dims(g.dims);
  std::optional<Channel> n;
  if (a.kind == "random") {
    n = random_channel(g.seed, din, dout);
  } else if (a.kind == "free") {
    n = sample_free(parse_free_class(a.free_class), g.seed, din, dout);
  } else if (a.kind == "named") {
    n = named_channel(a.name, din, dout, a.p);
  } else {
    throw FormatError("--kind must be random, free or named");
  }
  const std::string text = to_json_text(ChannelFile{kChannelFormatVersion, *n, {}, {}});
  // Anything emitted must load again.
  (void)from_json_text(text);
  if (a.out.empty() || a.out == "-") {
    std::cout << text;
  } else {
    std::ofstream out(a.out, std::ios::binary);
    if (!out) throw FormatError("cannot write " + a.out);
    out << text;
    if (!g.quiet) std::cerr << "wrote " << a.out << "\n";
  }
  return kPass;
}

// --- validate / membership -----------------------------------------------------

int cmd_validate(const Globals& g, const std::string& in) {
  const Timer timer;
  const ChannelFile f = load_channel_file(in);
  if (!g.quiet) {
    std::cout << "ok " << in << " dim_in=" << f.channel.dim_in() << " dim_out=" << f.channel.dim_out()
              << (f.kraus ? " kraus" : "") << (f.basis ? " basis" : "") << "\n";
  }
  json r = report_header(g);
  r["input"] = in;
  r["dim_in"] = f.channel.dim_in();
  r["dim_out"] = f.channel.dim_out();
  r["valid"] = true;
  emit_json(g, r, timer.seconds());
  return kPass;
}

int cmd_membership(const Globals& g, const std::string& in, const std::string& cls) {
  const Timer timer;
  const ChannelFile f = load_channel_file(in);
  const Bases bases = f.basis ? *f.basis : Bases::computational(f.channel.dim_in(), f.channel.dim_out());
  std::vector<FreeClass> classes(std::begin(kAllClasses), std::end(kAllClasses));
  if (!cls.empty()) classes = {parse_free_class(cls)};

  json r = report_header(g);
  r["input"] = in;
  json checks = json::array();
  bool all_members = true;
  for (FreeClass c : classes) {
    const MembershipReport m = membership(f.channel, c, bases, g.tol);
    all_members = all_members && m.is_member;
    if (!g.quiet) {
      std::cout << to_string(c) << ": " << (m.is_member ? "member" : "not member")
                << " (violation " << format_double(m.violation) << ")\n";
    }
    checks.push_back({{"class", to_string(c)}, {"member", m.is_member}, {"violation", m.violation}});
  }
  r["checks"] = std::move(checks);
  emit_json(g, r, timer.seconds());
  // Only an explicitly requested class turns non-membership into a failure.
  return (!cls.empty() && !all_members) ? kViolation : kPass;
}

// --- distance --------------------------------------------------------------------

int cmd_distance(const Globals& g, const std::string& a, const std::string& b,
                 const std::string& kind_name) {
  const Timer timer;
  const Channel n = load_channel_file(a).channel;
  const Channel m = load_channel_file(b).channel;
  if (n.dim_in() != m.dim_in() || n.dim_out() != m.dim_out()) {
    throw FormatError("channels have different dimensions");
  }
  std::vector<DivergenceKind> kinds = {DivergenceKind::ChannelTrace, DivergenceKind::Diamond,
                                       DivergenceKind::ChannelRelEnt};
  if (kind_name != "all") kinds = {parse_divergence_kind(kind_name)};

  json r = report_header(g);
  r["inputs"] = {a, b};
  json values = json::object();
  for (DivergenceKind k : kinds) {
    const double v = divergence(k, n, m, g.seed);
    values[to_string(k)] = v;
    if (!g.quiet) std::cout << to_string(k) << " " << format_double(v) << "\n";
  }
  r["values"] = std::move(values);
  emit_json(g, r, timer.seconds());
  return kPass;
}

// --- measure ---------------------------------------------------------------------

struct MeasureArgs {
  std::string in;
  std::string free_class = "DCI";
  std::string divergence = "diamond";
  std::string optimizer_out;
  bool generic = false;
};

std::string sidecar_path(const std::string& in) {
  std::filesystem::path p(in);
  p.replace_extension();
  return p.string() + ".optimizer.json";
}

int cmd_measure(const Globals& g, const MeasureArgs& a) {
  const Timer timer;
  const ChannelFile f = load_channel_file(a.in);
  const FreeClass c = parse_free_class(a.free_class);
  const DivergenceKind k = parse_divergence_kind(a.divergence);
  MeasureOptions o;
  o.seed = g.seed;
  o.use_reduction = !a.generic;
  o.bases = f.basis;
  const MeasureResult res = coherence_measure(f.channel, c, k, o);

  const std::string side = a.optimizer_out.empty() ? sidecar_path(a.in) : a.optimizer_out;
  if (res.optimizer) save_channel_file(side, ChannelFile{kChannelFormatVersion, *res.optimizer, {}, f.basis});

  if (!g.quiet) {
    std::cout << to_string(c) << " " << to_string(k) << " value " << format_double(res.value)
              << " bracket [" << format_double(res.lower) << ", " << format_double(res.upper) << "]"
              << (res.certified ? " certified" : " uncertified") << "\n";
    if (res.optimizer) std::cout << "optimizer written to " << side << "\n";
    if (!res.note.empty()) std::cout << "note: " << res.note << "\n";
  }

  json r = report_header(g);
  r["input"] = a.in;
  r["class"] = to_string(c);
  r["divergence"] = to_string(k);
  r["use_reduction"] = o.use_reduction;
  r["value"] = res.value;
  r["lower"] = res.lower;
  r["upper"] = res.upper;
  r["certified"] = res.certified;
  r["iterations"] = res.iterations;
  r["solver_status"] = sdp::to_string(res.report.status);
  r["note"] = res.note;
  if (res.optimizer) r["optimizer_file"] = side;
  if (res.stochastic) {
    json e = json::array();
    for (Index i = 0; i < res.stochastic->rows(); ++i) {
      json row = json::array();
      for (Index j = 0; j < res.stochastic->cols(); ++j) row.push_back((*res.stochastic)(i, j));
      e.push_back(std::move(row));
    }
    r["stochastic"] = std::move(e);
  }
  if (res.witness.state.size() > 0) {
    r["witness"] = {{"dim_in", res.witness.dim_in},
                    {"dim_anc", res.witness.dim_anc},
                    {"achieved_value", res.witness.achieved_value},
                    {"state", encode(ComplexMatrix(res.witness.state))}};
  }
  emit_json(g, r, timer.seconds());
  return kPass;
}

// --- suite -----------------------------------------------------------------------

SuiteReport run_suite(const std::string& name, std::uint64_t seed, int trials, Index din, Index dout) {
  const std::vector<DivergenceKind> measured = {DivergenceKind::Diamond, DivergenceKind::ChannelTrace};
  SuiteReport all{name, {}};
  const bool every = name == "all";
  bool known = every;
  if (every || name == "closure") {
    known = true;
    all.append(closure_suite(seed, trials, din, dout));
  }
  if (every || name == "axioms") {
    known = true;
    for (DivergenceKind k : {DivergenceKind::ChannelTrace, DivergenceKind::Diamond,
                             DivergenceKind::ChannelRelEnt}) {
      all.append(f_axiom_suite(k, seed, trials, din, dout));
    }
  }
  if (every || name == "pinsker") {
    known = true;
    all.append(pinsker_suite(seed, trials, din, dout));
  }
  if (every || name == "faithfulness") {
    known = true;
    for (FreeClass c : kAllClasses) {
      for (DivergenceKind k : {DivergenceKind::Diamond, DivergenceKind::ChannelTrace,
                               DivergenceKind::ChannelRelEnt}) {
        all.append(faithfulness_suite(c, k, seed, trials, din, dout));
      }
    }
  }
  if (every || name == "monotonicity") {
    known = true;
    for (FreeClass c : kAllClasses) {
      for (DivergenceKind k : measured) all.append(monotonicity_suite(c, k, seed, trials, din, dout));
    }
  }
  if (every || name == "convexity") {
    known = true;
    for (FreeClass c : kAllClasses) {
      for (DivergenceKind k : measured) all.append(convexity_suite(c, k, seed, trials, din, dout));
    }
  }
  if (every) {
    for (DivergenceKind k : measured) all.append(reduction_suite(k, seed, trials, din, dout));
  }
  if (!known) throw FormatError("unknown suite '" + name + "'");
  return all;
}

int cmd_suite(const Globals& g, const std::string& name) {
  const Timer timer;
  const auto [din, dout] = parse_dims(g.dims);
  if (g.trials < 1) throw FormatError("--trials must be positive");
  const SuiteReport rep = run_suite(name, g.seed, g.trials, din, dout);

  if (!g.quiet) {
    for (const auto& c : rep.checks) {
      std::cout << (!c.asserted ? "LOG " : (c.passed() ? "PASS" : "FAIL")) << " " << c.name
                << " max_violation=" << format_double(c.max_violation)
                << " tol=" << format_double(c.tolerance) << " trials=" << c.trials;
      if (c.solver_failures > 0) std::cout << " solver_failures=" << c.solver_failures;
      if (!c.passed() && !c.witnesses.empty()) std::cout << " witness=" << c.witnesses.front();
      std::cout << "\n";
    }
    std::cout << (rep.passed() ? "suite passed" : "suite FAILED") << "\n";
  }

  json r = report_header(g);
  r["suite"] = name;
  r["dims"] = g.dims;
  r["trials"] = g.trials;
  json checks = json::array();
  for (const auto& c : rep.checks) checks.push_back(encode(c));
  r["checks"] = std::move(checks);
  r["passed"] = rep.passed();
  emit_json(g, r, timer.seconds());

  bool violated = false;
  for (const auto& c : rep.checks) violated = violated || (c.asserted && c.max_violation > c.tolerance);
  if (violated) return kViolation;
  return rep.solver_failure() ? kSolverFailure : kPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Dynamical coherence of quantum channels"};
  app.require_subcommand(1);
  app.fallthrough();

  Globals g;
  for (int i = 1; i < argc; ++i) g.argv.emplace_back(argv[i]);
  app.add_option("--seed", g.seed, "Random seed");
  app.add_option("--tol", g.tol, "Membership tolerance");
  app.add_option("--dims", g.dims, "Dimensions as <dIn>x<dOut>");
  app.add_option("--trials", g.trials, "Trials per suite check");
  app.add_option("--json", g.json_path, "Write a JSON report to this path ('-' for stdout)");
  app.add_flag("--quiet", g.quiet, "Suppress text output");

  GenArgs gen;
  auto* s_gen = app.add_subcommand("gen", "Write a channel file");
  s_gen->add_option("--kind", gen.kind, "random, free or named")->required();
  s_gen->add_option("--name", gen.name,
                    "identity, hadamard, dephasing, replacer-maximally-mixed, depolarizing");
  s_gen->add_option("--class", gen.free_class, "Free class for --kind free");
  s_gen->add_option("--p", gen.p, "Depolarizing probability");
  s_gen->add_option("--out", gen.out, "Output path (stdout when omitted)");

  std::string in;
  auto* s_validate = app.add_subcommand("validate", "Check a channel file");
  s_validate->add_option("file", in)->required();

  std::string member_class;
  auto* s_member = app.add_subcommand("membership", "Test membership in the free classes");
  s_member->add_option("file", in)->required();
  s_member->add_option("--class", member_class, "DI, CI or DCI (all when omitted)");

  std::string first, second, kind = "diamond";
  auto* s_dist = app.add_subcommand("distance", "Channel divergence between two files");
  s_dist->add_option("first", first)->required();
  s_dist->add_option("second", second)->required();
  s_dist->add_option("--divergence", kind, "trace, diamond, relent or all");

  MeasureArgs meas;
  auto* s_meas = app.add_subcommand("measure", "Coherence measure of a channel");
  s_meas->add_option("file", meas.in)->required();
  s_meas->add_option("--class", meas.free_class, "DI, CI or DCI");
  s_meas->add_option("--divergence", meas.divergence, "trace, diamond or relent");
  s_meas->add_option("--optimizer", meas.optimizer_out, "Where to write the optimal free channel");
  s_meas->add_flag("--generic", meas.generic, "Skip the stochastic-matrix reduction");

  std::string suite;
  auto* s_suite = app.add_subcommand("suite", "Run property suites");
  s_suite->add_option("name", suite, "axioms|faithfulness|monotonicity|convexity|pinsker|closure|all")
      ->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kPass : kInputError;
  }

  try {
    if (s_gen->parsed()) return cmd_gen(g, gen);
    if (s_validate->parsed()) return cmd_validate(g, in);
    if (s_member->parsed()) return cmd_membership(g, in, member_class);
    if (s_dist->parsed()) return cmd_distance(g, first, second, kind);
    if (s_meas->parsed()) return cmd_measure(g, meas);
    if (s_suite->parsed()) return cmd_suite(g, suite);
  } catch (const SolverFailure& e) {
    std::cerr << "solver failure: " << e.what() << "\n";
    return kSolverFailure;
  } catch (const InvariantViolation& e) {
    std::cerr << "invalid input: " << e.invariant() << " residual " << format_double(e.residual())
              << "\n";
    return kInputError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  }
  return kInputError;
}
