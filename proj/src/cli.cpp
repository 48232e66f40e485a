#include "hardylab/cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "hardylab/continuous.hpp"
#include "hardylab/discrete.hpp"
#include "hardylab/harness.hpp"
#include "hardylab/kernels.hpp"
#include "hardylab/muckenhoupt.hpp"
#include "hardylab/report_io.hpp"
#include "hardylab/sharpness.hpp"
#include "hardylab/weight_parse.hpp"

namespace hardylab::cli {

namespace {

enum class Format { kTable, kCsv, kJson };

struct Common {
  std::string format = "table";
  std::string output;
  std::string kernel;
};

struct Tolerances {
  std::optional<double> rel_tol;
  std::optional<double> refine_tol;
  std::optional<int> bands;
  std::optional<int> cells;
  bool force_numeric = false;

  void attach(CLI::App* app) {
    app->add_option("--rel-tol", rel_tol, "relative tolerance on the margin");
    app->add_option("--refine-tol", refine_tol, "quadrature refinement tolerance");
    app->add_option("--bands", bands, "graded quadrature bands");
    app->add_option("--cells", cells, "cells per quadrature band");
    app->add_flag("--force-numeric", force_numeric, "bypass closed-form integrals");
  }

  ToleranceConfig make(ToleranceConfig base) const {
    if (rel_tol) base.rel_tol = *rel_tol;
    if (refine_tol) base.quadrature.refine_tol = *refine_tol;
    if (bands) base.quadrature.bands = *bands;
    if (cells) base.quadrature.cells_per_band = *cells;
    base.quadrature.force_numeric = force_numeric;
    base.validate();
    return base;
  }
};

struct CheckArgs {
  std::string ineq;
  std::optional<double> p;
  std::optional<double> q;
  std::string lambda;
  std::string a;
  std::string sequence_file;
  std::optional<std::size_t> N;
  std::string weight;
  std::string interval = "0,1";
  std::optional<double> y;
  std::optional<double> an;
  std::optional<double> mean;
  std::optional<double> M;
  double t = 1.0;
  std::optional<double> alpha;
  std::optional<double> u;
  std::optional<int> k;
  Tolerances tol;
};

struct P0Args {
  std::optional<double> q;
  std::optional<double> M;
  double tol = 1e-12;
};

struct SweepArgs {
  std::string kind;
  std::optional<double> p;
  std::optional<double> q;
  double ell = 1.0;
  int steps = 12;
  double delta0 = 0.0;
  double tolerance = 1e-3;
  std::string a_values;
  bool no_cross_check = false;
};

struct BatchArgs {
  std::string ineq;
  std::string generator = "lognormal_sequence";
  std::uint64_t seed = 0;
  std::size_t count = 1000;
  std::size_t size = 16;
  std::string p = "1,3";
  std::string q = "0.25,3";
  std::string a = "-1,1";
  std::string extremal = "g";
  unsigned threads = 0;
  std::optional<double> rel_tol;
};

struct MuckArgs {
  std::string weight;
  std::optional<double> q;
  std::optional<double> M;
};

Format parse_format(const std::string& s) {
  if (s == "table") return Format::kTable;
  if (s == "csv") return Format::kCsv;
  if (s == "json") return Format::kJson;
  throw DomainError("unknown format '" + s + "'");
}

template <typename T>
T need(const std::optional<T>& v, const char* flag) {
  if (!v) throw DomainError(std::string("missing required option ") + flag);
  return *v;
}

harness::Range parse_range(const std::string& s, const char* flag) {
  const auto v = text::parse_list(s);
  if (v.size() == 1) return {v[0], v[0]};
  if (v.size() == 2) return {v[0], v[1]};
  throw DomainError(std::string(flag) + " takes a value or lo,hi");
}

std::string emit_report(const InequalityReport& r, Format f) {
  std::ostringstream os;
  if (f == Format::kJson) {
    os << io::to_json(r).dump(2) << '\n';
  } else if (f == Format::kCsv) {
    io::write_csv(os, std::vector<InequalityReport>{r});
  } else {
    io::write_table(os, r);
  }
  return os.str();
}

// ---- check ---------------------------------------------------------------

SequenceData sequence_source(const CheckArgs& c) {
  if (!c.sequence_file.empty()) {
    if (!c.a.empty() || !c.lambda.empty()) throw DomainError("give either --sequence-file or --a, not both");
    return text::read_sequence(c.sequence_file);
  }
  if (c.a.empty()) throw DomainError("this inequality needs --a or --sequence-file");
  auto a = text::parse_list(c.a);
  auto lambda = c.lambda.empty() ? std::vector<double>(a.size(), 1.0) : text::parse_list(c.lambda);
  return SequenceData(std::move(lambda), std::move(a));
}

void require_single_source(const CheckArgs& c, bool wants_sequence, bool wants_weight) {
  const bool has_sequence = !c.a.empty() || !c.lambda.empty() || !c.sequence_file.empty();
  const bool has_weight = !c.weight.empty();
  if (has_sequence && has_weight) throw DomainError("give either a sequence or a weight, not both");
  if (has_sequence && !wants_sequence) throw DomainError(c.ineq + " does not take a sequence");
  if (has_weight && !wants_weight) throw DomainError(c.ineq + " does not take a weight");
  if (wants_weight && !has_weight) throw DomainError(c.ineq + " needs --weight");
}

InequalityReport run_check(const CheckArgs& c) {
  static const std::vector<std::string> sequence_checks{"copson", "hardy", "theoremF", "theorem2",
                                                        "lemma2"};
  static const std::vector<std::string> weight_checks{
      "hardy-cont", "theoremD", "theoremE",    "theorem1", "theorem3",
      "corollary",  "power-bound", "lemmaA", "bridge"};
  const auto in = [&](const std::vector<std::string>& names) {
    return std::find(names.begin(), names.end(), c.ineq) != names.end();
  };
  const bool seq_check = in(sequence_checks);
  const bool weight_check = in(weight_checks);
  if (!seq_check && !weight_check && c.ineq != "lemma1" && c.ineq != "young") {
    throw DomainError("unknown inequality '" + c.ineq + "'");
  }
  require_single_source(c, seq_check, weight_check);

  const ToleranceConfig closed = c.tol.make(ToleranceConfig{});
  if (seq_check) {
    const SequenceData seq = sequence_source(c);
    const std::size_t N = c.N.value_or(seq.size());
    const double p = need(c.p, "--p");
    if (c.ineq == "copson") return discrete::check_copson(seq, p, N, closed.rel_tol);
    if (c.ineq == "hardy") {
      if (!c.lambda.empty()) throw DomainError("hardy uses unit weights; drop --lambda");
      return discrete::check_hardy_discrete(seq.a, p, N, closed.rel_tol);
    }
    if (c.ineq == "lemma2") return discrete::check_lemma2(seq, p, N, closed.rel_tol);
    const Exponents e(p, need(c.q, "--q"));
    if (c.ineq == "theoremF") return discrete::check_theorem_F(seq, e, N, closed.rel_tol);
    return discrete::check_theorem_2(seq, e, N, closed.rel_tol);
  }
  if (c.ineq == "lemma1") {
    return discrete::check_lemma1_term(need(c.an, "--an"), need(c.mean, "--mean"),
                                       Exponents(need(c.p, "--p"), need(c.q, "--q")), closed.rel_tol);
  }
  if (c.ineq == "young") {
    return discrete::check_young_pointwise(need(c.y, "--y"), need(c.p, "--p"), closed.rel_tol);
  }

  const WeightFamily w = text::parse_weight(c.weight);
  if (c.ineq == "theorem3" || c.ineq == "corollary" || c.ineq == "power-bound") {
    const ToleranceConfig tol = c.tol.make(ToleranceConfig::quadrature_path());
    const auto params = muckenhoupt::make_params(need(c.q, "--q"), need(c.M, "--M"));
    const double p = need(c.p, "--p");
    if (c.ineq == "theorem3") return muckenhoupt::check_theorem_3(w, p, params, c.t, tol);
    if (c.ineq == "corollary") return muckenhoupt::check_corollary(w, p, params, c.t, tol);
    return muckenhoupt::check_power_bound(w, p, params, c.t, tol);
  }
  if (c.ineq == "lemmaA") {
    const ToleranceConfig tol = c.tol.make(ToleranceConfig{});
    return continuous::check_lemmaA_identity(w, need(c.alpha, "--alpha"), need(c.u, "--u"),
                                             tol.quadrature, c.tol.rel_tol.value_or(1e-8));
  }
  const Interval iv = text::parse_interval(c.interval);
  if (c.ineq == "hardy-cont") return continuous::check_hardy_continuous(w, iv, need(c.p, "--p"), closed);
  if (c.ineq == "theoremD") return continuous::check_theorem_D(w, iv, need(c.p, "--p"), closed);
  const Exponents e(need(c.p, "--p"), need(c.q, "--q"));
  if (c.ineq == "theoremE") return continuous::check_theorem_E(w, iv, e, closed);
  if (c.ineq == "theorem1") return continuous::check_theorem_1(w, iv, e, closed);

  // bridge: dyadic Theorem 2 sums against the continuous Theorem 1 sides.
  if (iv.lo != 0.0 || iv.hi != 1.0) throw DomainError("bridge runs on [0, 1]");
  const int k = need(c.k, "--k");
  const auto b = continuous::riemann_bridge(w, k, e, closed.quadrature);
  InequalityReport r = make_report("bridge", Relation::kLessEqual, b.lhs, b.rhs, closed.rel_tol,
                                   {{"p", e.p()}, {"q", e.q()}, {"k", static_cast<double>(k)}});
  r.diagnostics = {{"ell", b.ell}};
  return r;
}

// ---- sweep ---------------------------------------------------------------

io::SweepTable sweep_theorem1(const SweepArgs& s, std::string& failure) {
  const Exponents e(need(s.p, "--p"), need(s.q, "--q"));
  sharpness::SweepOptions opts;
  opts.steps = s.steps;
  opts.delta0 = s.delta0;
  opts.tolerance = s.tolerance;
  opts.cross_check = !s.no_cross_check;
  const double p = e.p();
  const double K = std::pow((p + 1.0) / p, e.q());
  const double delta0 = s.delta0 > 0.0 ? s.delta0 : 0.5 / p;

  io::SweepTable table{"theorem1", false, s.tolerance, {}};
  const double limit = sharpness::L_a_limit(e, s.ell);
  for (int j = 0; j < s.steps; ++j) {
    const double a = -1.0 / p + std::ldexp(delta0, -j);
    const double value = sharpness::L_a_closed_form(a, e, s.ell);
    const double lhs = std::pow(s.ell, -p) / (1.0 + a * p);
    const double rhs = K * std::pow(1.0 - a, -e.q()) * lhs;
    table.rows.push_back({"theorem1", static_cast<std::size_t>(j), a, lhs, rhs, value, limit,
                          std::abs(value - limit)});
  }
  try {
    table.converged = sharpness::sharpness_sweep_theorem1(e, s.ell, opts).converged;
  } catch (const ConvergenceError& ex) {
    failure = ex.what();
  }
  return table;
}

io::SweepTable sweep_theorem3(const SweepArgs& s, std::string& failure) {
  const double p = need(s.p, "--p");
  const double q = need(s.q, "--q");
  const auto schedule =
      s.a_values.empty() ? muckenhoupt::default_a_schedule(p, s.steps) : text::parse_list(s.a_values);
  io::SweepTable table{"theorem3", false, s.tolerance, {}};
  for (std::size_t j = 0; j < schedule.size(); ++j) {
    const double a = schedule[j];
    const double value = muckenhoupt::sharpness_ratio(p, q, a);
    const double c_a = muckenhoupt::phi_a_c(q, a);
    const double r = (p - 1.0) / (q - 1.0);
    const double rhs = c_a * (q / p) * r * r;
    table.rows.push_back({"theorem3", j, a, value * rhs, rhs, value, 1.0, std::abs(value - 1.0)});
  }
  try {
    table.converged = muckenhoupt::sharpness_t1_sweep(p, q, schedule, s.tolerance).converged;
  } catch (const ConvergenceError& ex) {
    failure = ex.what();
  }
  return table;
}

io::SweepTable sweep_theorem_D(const SweepArgs& s, std::string& failure) {
  const double p = need(s.p, "--p");
  if (s.steps < 3) throw DomainError("a sharpness sweep needs at least 3 steps");
  const double delta0 = s.delta0 > 0.0 ? s.delta0 : 0.5 / p;
  if (delta0 >= 1.0 / p) throw DomainError("initial offset must be below 1/p");
  io::SweepTable table{"theoremD", false, s.tolerance, {}};
  for (int j = 0; j < s.steps; ++j) {
    const double a = -1.0 / p + std::ldexp(delta0, -j);
    const auto r = continuous::check_theorem_D(make_extremal_g(a, s.ell), Interval(0.0, 1.0), p);
    const double ratio = r.lhs / r.rhs;
    table.rows.push_back({"theoremD", static_cast<std::size_t>(j), a, r.lhs, r.rhs, ratio, 1.0,
                          std::abs(ratio - 1.0)});
  }
  table.converged = table.rows.back().deviation <= s.tolerance;
  if (!table.converged) {
    std::ostringstream os;
    os << "theoremD ratio ended " << table.rows.back().deviation << " from 1 (tolerance "
       << s.tolerance << ")";
    failure = os.str();
  }
  return table;
}

// ---- output --------------------------------------------------------------

void deliver(const std::string& text, const Common& common, std::ostream& out) {
  if (common.output.empty()) {
    out << text;
    return;
  }
  std::ofstream file(common.output, std::ios::binary);
  if (!file) throw DomainError("cannot write '" + common.output + "'");
  file << text;
}

// Restores the process-wide kernel choice after an in-process run.
class KernelScope {
 public:
  KernelScope() : saved_(kernels::active_backend()) {}
  ~KernelScope() { kernels::set_active_backend(saved_); }
  KernelScope(const KernelScope&) = delete;
  KernelScope& operator=(const KernelScope&) = delete;

 private:
  kernels::Backend saved_;
};

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Numerical checks of Hardy-type inequalities with negative exponents"};
  app.name("hardylab");
  app.set_config("--config", "", "TOML or INI file with option values");
  app.require_subcommand(1);

  Common common;
  app.add_option("--format", common.format, "table, csv or json")->check(CLI::IsMember({"table", "csv", "json"}));
  app.add_option("--output,-o", common.output, "write to this file instead of stdout");
  app.add_option("--kernel", common.kernel, "scalar, avx2 or auto")->check(CLI::IsMember({"scalar", "avx2", "auto"}));

  CheckArgs check;
  CLI::App* cmd_check = app.add_subcommand("check", "evaluate one inequality");
  cmd_check->add_option("--ineq", check.ineq, "inequality identifier")->required();
  cmd_check->add_option("--p", check.p);
  cmd_check->add_option("--q", check.q);
  cmd_check->add_option("--lambda", check.lambda, "comma separated weights lambda_n");
  cmd_check->add_option("--a", check.a, "comma separated terms a_n");
  cmd_check->add_option("--sequence-file", check.sequence_file, "two columns lambda, a");
  cmd_check->add_option("--N", check.N, "truncation index");
  cmd_check->add_option("--weight", check.weight, "weight definition, e.g. const:1 or step:0.5;1,2");
  cmd_check->add_option("--interval", check.interval, "lo,hi");
  cmd_check->add_option("--y", check.y, "point for the Young inequality");
  cmd_check->add_option("--an", check.an, "a_n for the single-term inequality");
  cmd_check->add_option("--mean", check.mean, "A_n/Lambda_n for the single-term inequality");
  cmd_check->add_option("--M", check.M, "condition constant bound");
  cmd_check->add_option("--t", check.t, "right endpoint in (0, 1]");
  cmd_check->add_option("--alpha", check.alpha, "power in the integration-by-parts identity");
  cmd_check->add_option("--u", check.u, "upper limit in the integration-by-parts identity");
  cmd_check->add_option("--k", check.k, "dyadic level for the bridge");
  check.tol.attach(cmd_check);

  P0Args p0;
  CLI::App* cmd_p0 = app.add_subcommand("p0", "solve for the critical exponent");
  cmd_p0->add_option("--q", p0.q)->required();
  cmd_p0->add_option("--M", p0.M)->required();
  cmd_p0->add_option("--tol", p0.tol, "residual tolerance");

  SweepArgs sweep;
  CLI::App* cmd_sweep = app.add_subcommand("sweep", "approach an extremal limit");
  cmd_sweep->add_option("--kind", sweep.kind, "theorem1, theorem3 or theoremD")
      ->required()
      ->check(CLI::IsMember({"theorem1", "theorem3", "theoremD"}));
  cmd_sweep->add_option("--p", sweep.p);
  cmd_sweep->add_option("--q", sweep.q);
  cmd_sweep->add_option("--ell", sweep.ell, "mean of the extremal weight");
  cmd_sweep->add_option("--steps", sweep.steps);
  cmd_sweep->add_option("--delta0", sweep.delta0, "first offset from the critical parameter");
  cmd_sweep->add_option("--tolerance", sweep.tolerance, "allowed final distance to the limit");
  cmd_sweep->add_option("--a-values", sweep.a_values, "explicit schedule for theorem3");
  cmd_sweep->add_flag("--no-cross-check", sweep.no_cross_check, "skip the quadrature cross-check");

  BatchArgs batch;
  CLI::App* cmd_batch = app.add_subcommand("batch", "run a checker on seeded random instances");
  cmd_batch->add_option("--ineq", batch.ineq)->required();
  cmd_batch->add_option("--generator", batch.generator);
  cmd_batch->add_option("--seed", batch.seed);
  cmd_batch->add_option("--count", batch.count);
  cmd_batch->add_option("--size", batch.size);
  cmd_batch->add_option("--p", batch.p, "value or lo,hi");
  cmd_batch->add_option("--q", batch.q, "value or lo,hi");
  cmd_batch->add_option("--a", batch.a, "power exponent range lo,hi");
  cmd_batch->add_option("--extremal", batch.extremal, "g or phi")->check(CLI::IsMember({"g", "phi"}));
  cmd_batch->add_option("--threads", batch.threads);
  cmd_batch->add_option("--rel-tol", batch.rel_tol);

  MuckArgs muck;
  CLI::App* cmd_muck = app.add_subcommand("muck-const", "condition constant of a weight on (0, 1]");
  cmd_muck->add_option("--weight", muck.weight)->required();
  cmd_muck->add_option("--q", muck.q)->required();
  cmd_muck->add_option("--M", muck.M, "exit 1 if the constant exceeds this bound");

  for (CLI::App* sub : {cmd_check, cmd_p0, cmd_sweep, cmd_batch, cmd_muck}) sub->fallthrough();

  std::vector<std::string> argv_store{"hardylab"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& s : argv_store) argv.push_back(s.data());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitDomain;
  }

  KernelScope kernel_scope;
  try {
    if (!common.kernel.empty()) kernels::set_active_backend(kernels::parse_backend(common.kernel));
    const Format format = parse_format(common.format);

    if (cmd_check->parsed()) {
      const InequalityReport r = run_check(check);
      deliver(emit_report(r, format), common, out);
      return r.satisfied ? kExitOk : kExitViolated;
    }

    if (cmd_p0->parsed()) {
      const double q = *p0.q;
      const double M = *p0.M;
      const auto sol = muckenhoupt::solve_p0(q, M, p0.tol);
      std::ostringstream os;
      if (format == Format::kJson) {
        os << io::to_json(sol, q, M).dump(2) << '\n';
      } else if (format == Format::kCsv) {
        os << "schema_version,q,M,p0,gap,residual,iterations\n"
           << io::kSchemaVersion << ',' << io::format_number(q) << ',' << io::format_number(M) << ','
           << io::format_number(sol.p0) << ',' << io::format_number(sol.gap) << ','
           << io::format_number(sol.residual) << ',' << sol.iterations << '\n';
      } else {
        char line[160];
        std::snprintf(line, sizeof line, "p0 = %.12g  (q - p0 = %.6g, residual %.3g, %d iterations)\n",
                      sol.p0, sol.gap, sol.residual, sol.iterations);
        os << line;
      }
      deliver(os.str(), common, out);
      return kExitOk;
    }

    if (cmd_sweep->parsed()) {
      std::string failure;
      io::SweepTable table;
      if (sweep.kind == "theorem1") {
        table = sweep_theorem1(sweep, failure);
      } else if (sweep.kind == "theorem3") {
        table = sweep_theorem3(sweep, failure);
      } else {
        table = sweep_theorem_D(sweep, failure);
      }
      std::ostringstream os;
      if (format == Format::kJson) {
        os << io::to_json(table).dump(2) << '\n';
      } else if (format == Format::kCsv) {
        io::write_csv(os, table);
      } else {
        io::write_table(os, table);
      }
      deliver(os.str(), common, out);
      if (!failure.empty()) {
        err << "convergence failure: " << failure << '\n';
        return kExitConvergence;
      }
      return kExitOk;
    }

    if (cmd_batch->parsed()) {
      harness::GeneratorSpec spec;
      spec.seed = batch.seed;
      spec.kind = harness::parse_kind(batch.generator);
      spec.size = batch.size;
      spec.p = parse_range(batch.p, "--p");
      spec.q = parse_range(batch.q, "--q");
      spec.a = parse_range(batch.a, "--a");
      spec.extremal = batch.extremal == "phi" ? harness::ExtremalTarget::kPhi : harness::ExtremalTarget::kG;
      harness::BatchParams params;
      params.rel_tol = batch.rel_tol.value_or(0.0);
      params.threads = batch.threads;
      const harness::Checker checker = harness::parse_checker(batch.ineq);
      const auto result = harness::run_batch(checker, spec, batch.count, params);

      std::ostringstream os;
      if (format == Format::kJson) {
        io::Json j;
        j["checker"] = batch.ineq;
        j["generator"] = batch.generator;
        j["seed"] = batch.seed;
        j["count"] = batch.count;
        const io::Json body = io::to_json(result);
        for (const auto& [key, value] : body.items()) j[key] = value;
        os << j.dump(2) << '\n';
      } else if (format == Format::kCsv) {
        os << "schema_version,checker,generator,seed,count,total,satisfied,worst_relative_margin,"
              "worst_index\n"
           << io::kSchemaVersion << ',' << batch.ineq << ',' << batch.generator << ',' << batch.seed
           << ',' << batch.count << ',' << result.total << ',' << result.satisfied << ','
           << io::format_number(result.worst_relative_margin) << ',' << result.worst_index << '\n';
      } else {
        char line[200];
        std::snprintf(line, sizeof line, "%s on %s: %zu/%zu satisfied, worst relative margin %.6g (instance %zu)\n",
                      batch.ineq.c_str(), batch.generator.c_str(), result.satisfied, result.total,
                      result.worst_relative_margin, result.worst_index);
        os << line;
        if (result.worst_case) io::write_table(os, result.worst_case->report);
      }
      deliver(os.str(), common, out);
      return result.satisfied == result.total ? kExitOk : kExitViolated;
    }

    // muck-const
    const WeightFamily phi = text::parse_weight(muck.weight);
    const double q = *muck.q;
    const auto profile = muckenhoupt::muckenhoupt_constant(phi, q);
    const auto at = std::max_element(profile.values.begin(), profile.values.end());
    const double t_max = profile.t[static_cast<std::size_t>(at - profile.values.begin())];
    const bool within = !muck.M || profile.constant <= *muck.M * (1.0 + 1e-9);
    std::ostringstream os;
    if (format == Format::kJson) {
      io::Json j;
      j["schema_version"] = io::kSchemaVersion;
      j["q"] = io::number_json(q);
      j["constant"] = io::number_json(profile.constant);
      j["t_at_max"] = io::number_json(t_max);
      if (muck.M) {
        j["M"] = io::number_json(*muck.M);
        j["satisfied"] = within;
      }
      os << j.dump(2) << '\n';
    } else if (format == Format::kCsv) {
      os << "schema_version,q,constant,t_at_max,M,satisfied\n"
         << io::kSchemaVersion << ',' << io::format_number(q) << ','
         << io::format_number(profile.constant) << ',' << io::format_number(t_max) << ','
         << (muck.M ? io::format_number(*muck.M) : "") << ',' << (within ? "true" : "false") << '\n';
    } else {
      char line[160];
      std::snprintf(line, sizeof line, "condition constant %.12g (max at t = %.6g)\n",
                    profile.constant, t_max);
      os << line;
      if (muck.M) os << (within ? "within M\n" : "exceeds M\n");
    }
    deliver(os.str(), common, out);
    return within ? kExitOk : kExitViolated;
  } catch (const ConvergenceError& e) {
    err << "convergence failure: " << e.what() << '\n';
    return kExitConvergence;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitDomain;
  }
}

}  // namespace hardylab::cli
