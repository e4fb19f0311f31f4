#include <gmp.h>

#include <CLI11.hpp>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <optional>
#include <sstream>

#include "kohnen/cli_support.hpp"
#include "kohnen/csv.hpp"
#include "kohnen/error.hpp"
#include "kohnen/experiments.hpp"
#include "kohnen/form_io.hpp"
#include "kohnen/forms.hpp"
#include "kohnen/lambda.hpp"
#include "kohnen/lcentral.hpp"
#include "kohnen/parallel.hpp"
#include "kohnen/sieve.hpp"
#include "kohnen/vaughan.hpp"

namespace {

using namespace kohnen;
using json = nlohmann::ordered_json;

constexpr const char* kVersion = "1.0.0";

struct Common {
  unsigned threads = 0;
  std::string out;
  std::string manifest;
  std::uint64_t seed = 0;
};

// Options shared by the experiment commands; numbers stay strings until
// validation so that "10^5" style input is accepted everywhere.
struct Options {
  std::string form_path;
  int ell = 6;
  std::string prec;
  unsigned r = 3;
  std::string mode = "distinct";
  std::string xmin = "1000";
  std::string xmax = "100000";
  std::string samples = "20";
  std::string character = "none";
  std::string smoothing = "none";
  std::string ratio = "0.9";
  std::string cutoff = "1";
  std::string ys = "10^4,3*10^4,10^5";
  std::string delta = "0.1";
  std::string primes = "2,3,5,7";
  std::string trials = "1000";
  std::string nmax = "10^6";
  std::string r_max = "4";
  std::string D = "1";
  std::string T;
  std::string kernel = "incomplete_gamma";
  std::string balance = "1";
  std::string dmax = "200";
  std::string d_exponent = "0";
  std::string pmax = "200";
  std::string trunc_factor = "30";
};

sieve::CountMode parse_mode(const std::string& s) {
  if (s == "distinct") return sieve::CountMode::distinct;
  if (s == "multiplicity" || s == "with_multiplicity") return sieve::CountMode::with_multiplicity;
  throw ValidationError("unknown mode '" + s + "' (distinct|multiplicity)");
}

experiments::Character parse_character(const std::string& s) {
  if (s == "none") return experiments::Character::none;
  if (s == "principal4") return experiments::Character::principal_mod4;
  if (s == "chi4") return experiments::Character::nonprincipal_mod4;
  throw ValidationError("unknown character '" + s + "' (none|principal4|chi4)");
}

experiments::Smoothing parse_smoothing(const std::string& s) {
  if (s == "none") return experiments::Smoothing::none;
  if (s == "linear") return experiments::Smoothing::linear;
  throw ValidationError("unknown smoothing '" + s + "' (none|linear)");
}

lcentral::Kernel parse_kernel(const std::string& s) {
  if (s == "incomplete_gamma") return lcentral::Kernel::incomplete_gamma;
  if (s == "gaussian") return lcentral::Kernel::gaussian;
  throw ValidationError("unknown kernel '" + s + "' (incomplete_gamma|gaussian)");
}

std::int64_t parse_signed(const std::string& s) {
  const double v = cli::parse_number(s);
  if (v != std::floor(v) || std::fabs(v) > 9e15) throw ValidationError("expected an integer, got '" + s + "'");
  return static_cast<std::int64_t>(v);
}

class Run {
 public:
  Run(std::string command, const Common& common, json config)
      : command_(std::move(command)), common_(common), config_(std::move(config)),
        start_(std::chrono::steady_clock::now()) {
    if (common_.out.empty()) throw ValidationError("--out is required");
    set_max_threads(common_.threads);
  }

  std::ofstream open_output() {
    std::ofstream out(common_.out, std::ios::binary);
    if (!out) throw ValidationError("cannot open output file " + common_.out);
    return out;
  }

  json& result() { return result_; }

  void finish() {
    json m;
    m["command"] = command_;
    m["config"] = config_;
    m["threads"] = common_.threads;
    m["seed"] = common_.seed;
    m["output"] = common_.out;
    m["versions"] = {{"kohnen", kVersion}, {"gmp", gmp_version}, {"compiler", __VERSION__}};
    m["result"] = result_;
    m["wall_time_seconds"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    const std::string path = common_.manifest.empty() ? common_.out + ".manifest.json" : common_.manifest;
    std::ofstream f(path, std::ios::binary);
    if (!f) throw ValidationError("cannot open manifest file " + path);
    f << m.dump(2) << "\n";
  }

 private:
  std::string command_;
  Common common_;
  json config_;
  json result_ = json::object();
  std::chrono::steady_clock::time_point start_;
};

// Loads --form, or builds the ell form at --prec (default: min_precision).
forms::HalfIntegralForm obtain_form(const Options& o, std::uint64_t min_precision, json& config) {
  if (!o.form_path.empty()) {
    config["form"] = o.form_path;
    return forms::load_form(o.form_path);
  }
  const std::uint64_t prec = o.prec.empty() ? std::max<std::uint64_t>(min_precision, 200) : cli::parse_count(o.prec);
  config["ell"] = o.ell;
  config["prec"] = prec;
  return forms::build_plus_cusp_form(o.ell, prec);
}

void require_precision(const forms::HalfIntegralForm& f, std::uint64_t x) {
  if (x >= f.precision()) {
    throw PrecisionError("x = " + std::to_string(x) + " needs form precision " + std::to_string(x + 1) +
                             "; max usable x = " + std::to_string(f.precision() - 1),
                         f.precision() - 1);
  }
}

void form_build(const Common& c, const Options& o) {
  if (o.prec.empty()) throw ValidationError("--prec is required");
  const std::uint64_t prec = cli::parse_count(o.prec);
  Run run("form build", c, {{"ell", o.ell}, {"prec", prec}});
  const auto form = forms::build_plus_cusp_form(o.ell, prec);
  auto out = run.open_output();
  out << forms::to_json(form);
  run.result() = {{"weight", form.weight()}, {"precision", form.precision()}, {"dimension", 1}};
  run.finish();
}

void form_check(const Common& c, const Options& o) {
  json config = {{"primes", o.primes}};
  const auto form = obtain_form(o, 5000, config);
  Run run("form check", c, config);
  std::vector<std::uint64_t> primes;
  for (double p : cli::parse_list(o.primes)) primes.push_back(static_cast<std::uint64_t>(p));
  const forms::ShimuraLiftOracle oracle(*std::max_element(primes.begin(), primes.end()) + 1);
  auto out = run.open_output();
  csv::Writer w(out, {"p", "eigenvalue", "checked", "ok"});
  bool all = true;
  for (auto p : primes) {
    const auto rep = forms::eigenvalue_check(form, p, oracle);
    w.field(p).field(std::string_view(rep.eigenvalue.get_str())).field(std::uint64_t{rep.checked}).field(rep.ok);
    w.end_row();
    all = all && rep.ok;
  }
  run.result() = {{"certified", all}};
  run.finish();
  if (!all) throw AssertionFailure("Hecke eigenvalue check failed");
}

void lambda_table(const Common& c, const Options& o) {
  const std::uint64_t xmax = cli::parse_count(o.xmax);
  Run run("lambda table", c, {{"r", o.r}, {"xmax", xmax}});
  if (o.r == 0) throw ValidationError("r must be at least 1");
  const auto sv = sieve::build_factor_sieve(std::max<std::uint64_t>(xmax, 2));
  const auto table = sieve::lambda_r_table(o.r, xmax, sv);
  auto out = run.open_output();
  csv::Writer w(out, {"n", "omega", "lambda_r"});
  for (std::uint64_t n = 1; n <= xmax; ++n) {
    w.field(n).field(n < 2 ? 0u : sv.omega(n)).field(table[n]);
    w.end_row();
  }
  run.finish();
}

void vaughan_verify(const Common& c, const Options& o) {
  const std::uint64_t trials = cli::parse_count(o.trials);
  const std::uint64_t nmax = cli::parse_count(o.nmax);
  const std::uint64_t r_max = cli::parse_count(o.r_max);
  if (nmax < 2) throw ValidationError("--nmax must be at least 2");
  if (o.r == 0 && (r_max == 0 || r_max > 8)) throw ValidationError("--rmax must lie in [1, 8]");
  Run run("vaughan verify", c, {{"r", o.r}, {"rmax", r_max}, {"trials", trials}, {"nmax", nmax}, {"seed", c.seed}});
  const auto sv = sieve::build_factor_sieve(nmax);

  struct Case {
    std::uint64_t n;
    unsigned r;
    double Q, R;
  };
  cli::Rng rng(c.seed);
  std::vector<Case> cases(trials);
  for (auto& k : cases) {
    k.n = rng.between(2, nmax);
    k.r = o.r != 0 ? o.r : static_cast<unsigned>(rng.between(1, r_max));
    const double log_n = std::log(static_cast<double>(k.n));
    k.Q = std::exp(rng.uniform() * log_n);
    k.R = std::exp(rng.uniform() * log_n);
  }
  struct Row {
    sieve::VaughanTerms terms;
    double lambda = 0, residual = 0, tolerance = 0;
    bool two_term_zero = true, ok = true;
  };
  std::vector<Row> rows(trials);
  parallel_for(cases.size(), [&](std::size_t i) {
    const auto& k = cases[i];
    const auto f = sv.factorize(k.n);
    const auto params = sieve::VaughanParams::custom(k.Q, k.R, k.r);
    Row& row = rows[i];
    row.terms = sieve::vaughan_terms(f, params);
    row.lambda = sieve::lambda_r_exact(k.r, f).value;
    row.residual = std::fabs(row.terms.reassembled() - row.lambda);
    row.tolerance = 1e-9 * std::pow(std::log(static_cast<double>(k.n)), k.r);
    const double n = static_cast<double>(k.n);
    if (k.Q < n && n <= k.Q * k.R) row.two_term_zero = row.terms.s3 == 0.0 && row.terms.s4 == 0.0;
    row.ok = row.residual <= row.tolerance && row.two_term_zero;
  });
  auto out = run.open_output();
  csv::Writer w(out, {"trial", "n", "r", "Q", "R", "s1", "s2", "s3", "s4", "lambda_r", "residual", "ok"});
  std::uint64_t failures = 0;
  double worst = 0.0;
  for (std::size_t i = 0; i < cases.size(); ++i) {
    const auto& k = cases[i];
    const auto& row = rows[i];
    w.field(std::uint64_t{i}).field(k.n).field(k.r).field(k.Q).field(k.R);
    w.field(row.terms.s1).field(row.terms.s2).field(row.terms.s3).field(row.terms.s4);
    w.field(row.lambda).field(row.residual).field(row.ok);
    w.end_row();
    if (!row.ok) ++failures;
    worst = std::max(worst, row.residual / std::max(row.tolerance, 1e-300) * 1e-9);
  }
  run.result() = {{"failures", failures}, {"max_scaled_residual", worst}};
  run.finish();
  if (failures > 0) throw AssertionFailure(std::to_string(failures) + " Vaughan identity cases failed");
}

void sums_partial(const Common& c, const Options& o) {
  const double xmin = cli::parse_number(o.xmin), xmax = cli::parse_number(o.xmax);
  const std::uint64_t samples = cli::parse_count(o.samples);
  if (!(xmin >= 1.0 && xmax >= xmin)) throw ValidationError("need 1 <= xmin <= xmax");
  if (samples == 0) throw ValidationError("--samples must be positive");
  json config = {{"r", o.r}, {"mode", o.mode}, {"xmin", xmin}, {"xmax", xmax}, {"samples", samples},
                 {"character", o.character}, {"smoothing", o.smoothing}};
  const auto mode = parse_mode(o.mode);
  const auto character = parse_character(o.character);
  const auto smoothing = parse_smoothing(o.smoothing);
  const auto n_max = static_cast<std::uint64_t>(std::floor(xmax));
  const auto form = obtain_form(o, n_max + 1, config);
  require_precision(form, n_max);
  Run run("sums partial", c, config);
  const auto a = form.normalized_table();
  const auto sv = sieve::build_factor_sieve(std::max<std::uint64_t>(n_max, 2));
  const auto xs = experiments::log_spaced(xmin, xmax, samples);
  const auto series = experiments::partial_sum_series(a, sv, o.r, mode, xs, character, smoothing);
  auto out = run.open_output();
  csv::Writer w(out, {"x", "S", "count", "theta_hat"});
  std::optional<double> last;
  for (std::size_t i = 0; i < series.size(); ++i) {
    w.field(series[i].x).field(series[i].value).field(series[i].count);
    std::size_t usable = 0;
    for (std::size_t j = 0; j <= i; ++j) usable += series[j].value != 0.0;
    if (usable >= 2 && series[0].x != series[i].x) {
      last = experiments::exponent_fit(std::span(series).first(i + 1)).theta_hat;
      w.field(*last);
    } else {
      w.field(std::string_view());
    }
    w.end_row();
  }
  if (last) run.result()["theta_hat"] = *last;
  run.finish();
}

void signs(const Common& c, const Options& o, bool primes_only) {
  const std::uint64_t xmax = cli::parse_count(o.xmax);
  experiments::IntervalOptions io;
  io.ratio = cli::parse_number(o.ratio);
  io.lower_cutoff = cli::parse_number(o.cutoff);
  json config = {{"xmax", xmax}, {"ratio", io.ratio}, {"cutoff", io.lower_cutoff}};
  if (!primes_only) {
    config["r"] = o.r;
    config["mode"] = o.mode;
  }
  const auto mode = parse_mode(o.mode);
  const auto form = obtain_form(o, xmax + 1, config);
  require_precision(form, xmax);
  Run run(primes_only ? "signs primes" : "signs count", c, config);
  const auto a = form.normalized_table();
  const auto sv = sieve::build_factor_sieve(std::max<std::uint64_t>(xmax, 2));
  const auto rep = primes_only ? experiments::prime_sign_changes(a, sv, xmax, io)
                               : experiments::sign_change_count(a, sv, o.r, mode, xmax, io);
  auto out = run.open_output();
  csv::Writer w(out, {"n1", "n2", "sign1", "sign2"});
  for (const auto& ch : rep.changes) {
    w.field(ch.n1).field(ch.n2).field(ch.sign1).field(ch.sign2);
    w.end_row();
  }
  json intervals = json::array();
  for (const auto& iv : rep.intervals) intervals.push_back({{"lo", iv.lo}, {"hi", iv.hi}, {"has_change", iv.has_change}});
  run.result() = {{"total_changes", rep.total_changes},
                  {"scanned", rep.scanned},
                  {"intervals", rep.intervals.size()},
                  {"intervals_with_change", rep.intervals_with_change()},
                  {"interval_flags", intervals}};
  run.finish();
}

void moment_second(const Common& c, const Options& o) {
  const auto ys = cli::parse_list(o.ys);
  const double delta = cli::parse_number(o.delta);
  json config = {{"r", o.r}, {"mode", o.mode}, {"Y", ys}, {"delta", delta}};
  const auto mode = parse_mode(o.mode);
  const double y_max = *std::max_element(ys.begin(), ys.end());
  const auto n_max = static_cast<std::uint64_t>(std::max(2.0, std::ceil(y_max) - 1));
  const auto form = obtain_form(o, n_max + 1, config);
  require_precision(form, n_max);
  Run run("moment second", c, config);
  const auto a = form.normalized_table();
  const auto sv = sieve::build_factor_sieve(n_max);
  auto out = run.open_output();
  csv::Writer w(out, {"Y", "delta", "sum", "ratio", "count"});
  for (double Y : ys) {
    const auto m = experiments::second_moment(a, sv, o.r, mode, Y, delta);
    w.field(m.Y).field(m.delta).field(m.sum).field(m.ratio).field(m.count);
    w.end_row();
  }
  run.finish();
}

void growth(const Common& c, const Options& o) {
  const std::uint64_t xmax = cli::parse_count(o.xmax);
  const std::uint64_t samples = cli::parse_count(o.samples);
  json config = {{"xmax", xmax}, {"samples", samples}};
  const auto form = obtain_form(o, xmax + 1, config);
  require_precision(form, xmax);
  Run run("growth ramanujan", c, config);
  const auto rep = experiments::ramanujan_growth(form.normalized_table(), xmax, samples);
  auto out = run.open_output();
  csv::Writer w(out, {"x", "running_max"});
  for (const auto& p : rep.samples) {
    w.field(p.x).field(p.running_max);
    w.end_row();
  }
  run.result() = {{"exponent", rep.exponent}, {"threshold", rep.threshold}, {"below_threshold", rep.below_threshold}};
  run.finish();
}

lcentral::CentralOptions central_options(const Options& o) {
  lcentral::CentralOptions co;
  co.kernel = parse_kernel(o.kernel);
  co.balance = cli::parse_number(o.balance);
  return co;
}

void lvalue_central(const Common& c, const Options& o) {
  const std::int64_t D = parse_signed(o.D);
  const auto co = central_options(o);
  const std::uint64_t T = o.T.empty() ? lcentral::required_truncation(D) : cli::parse_count(o.T);
  Run run("lvalue central", c, {{"D", D}, {"T", T}, {"kernel", o.kernel}, {"balance", co.balance}});
  const auto lift = lcentral::LiftTable::delta(T + 1);
  const auto v = lcentral::central_value(lift, D, T, co);
  auto out = run.open_output();
  csv::Writer w(out, {"D", "L_value", "error_estimate", "truncation", "root_number", "forced_zero"});
  w.field(v.D).field(v.value).field(v.error_estimate).field(v.truncation).field(v.root_number).field(v.forced_zero);
  w.end_row();
  run.finish();
}

void lvalue_waldspurger(const Common& c, const Options& o) {
  const std::int64_t dmax = parse_signed(o.dmax);
  lcentral::WaldspurgerOptions wo;
  wo.d_exponent = cli::parse_number(o.d_exponent);
  wo.truncation_factor = cli::parse_count(o.trunc_factor);
  wo.central = central_options(o);
  json config = {{"dmax", dmax}, {"d_exponent", wo.d_exponent}, {"truncation_factor", wo.truncation_factor},
                 {"kernel", o.kernel}, {"balance", wo.central.balance}};
  if (dmax < 1) throw ValidationError("--dmax must be at least 1");
  const auto form = obtain_form(o, static_cast<std::uint64_t>(dmax) + 1, config);
  Run run("lvalue waldspurger", c, config);
  const auto lift = lcentral::LiftTable::delta(2 * wo.truncation_factor * static_cast<std::uint64_t>(dmax) + 1);
  const auto scan = lcentral::waldspurger_ratio_scan(form, lift, dmax, wo);
  auto out = run.open_output();
  csv::Writer w(out, {"D", "L_value", "error_estimate", "a_f_sq", "ratio", "L_value_2T", "included"});
  for (const auto& row : scan.rows) {
    w.field(row.D).field(row.L.value).field(row.L.error_estimate).field(row.a_f_sq).field(row.ratio);
    w.field(row.L_doubled).field(row.included);
    w.end_row();
  }
  run.result() = {{"included", scan.included()},
                  {"min_ratio", scan.min_ratio},
                  {"max_ratio", scan.max_ratio},
                  {"spread", scan.spread()}};
  run.finish();
}

void lvalue_siegel(const Common& c, const Options& o) {
  const std::uint64_t pmax = cli::parse_count(o.pmax);
  const std::uint64_t factor = cli::parse_count(o.trunc_factor);
  const auto co = central_options(o);
  Run run("lvalue siegel", c, {{"pmax", pmax}, {"truncation_factor", factor}, {"kernel", o.kernel}});
  const auto lift = lcentral::LiftTable::delta(factor * std::max<std::uint64_t>(pmax, 5) + 1);
  const auto probe = lcentral::siegel_probe(lift, pmax, factor, co);
  auto out = run.open_output();
  csv::Writer w(out, {"p", "L_value", "error_estimate", "nonzero", "p^-0.05", "p^-0.1", "p^-0.2"});
  for (const auto& row : probe.rows) {
    w.field(row.p).field(row.L.value).field(row.L.error_estimate).field(row.nonzero);
    for (double ref : row.reference) w.field(ref);
    w.end_row();
  }
  run.result() = {{"min_nonzero", probe.min_nonzero},
                  {"argmin", probe.argmin},
                  {"above_p^-0.05", probe.all_above[0]},
                  {"above_p^-0.1", probe.all_above[1]},
                  {"above_p^-0.2", probe.all_above[2]}};
  run.finish();
}

void add_form_source(CLI::App* app, Options& o) {
  app->add_option("--form", o.form_path, "form JSON file (otherwise the form is built)");
  app->add_option("--ell", o.ell, "ell when building the form");
  app->add_option("--prec", o.prec, "precision when building the form");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Kohnen plus-space form experiments"};
  app.require_subcommand(1);
  app.fallthrough();
  Common common;
  Options o;
  app.add_option("--threads", common.threads, "worker cap (0 = all cores)");
  app.add_option("--out", common.out, "output file");
  app.add_option("--manifest", common.manifest, "run manifest path (default <out>.manifest.json)");
  app.add_option("--seed", common.seed, "random seed");

  std::function<void()> action;
  auto leaf = [&](CLI::App* parent, const char* name, const char* help, std::function<void()> fn) {
    auto* cmd = parent->add_subcommand(name, help);
    cmd->callback([&action, fn] { action = fn; });
    return cmd;
  };

  auto* form = app.add_subcommand("form", "construct and certify the form")->require_subcommand(1);
  auto* build = leaf(form, "build", "build the plus-space cusp form", [&] { form_build(common, o); });
  build->add_option("--ell", o.ell);
  build->add_option("--prec", o.prec);
  auto* check = leaf(form, "check", "Hecke certification against Delta", [&] { form_check(common, o); });
  add_form_source(check, o);
  check->add_option("--primes", o.primes);

  auto* lambda = app.add_subcommand("lambda", "generalized von Mangoldt values")->require_subcommand(1);
  auto* table = leaf(lambda, "table", "Lambda_r(n) for n <= xmax", [&] { lambda_table(common, o); });
  table->add_option("--r", o.r);
  table->add_option("--xmax", o.xmax);

  auto* vaughan = app.add_subcommand("vaughan", "combinatorial identity checks")->require_subcommand(1);
  auto* verify = leaf(vaughan, "verify", "random identity trials", [&] { vaughan_verify(common, o); });
  verify->add_option("--r", o.r, "fixed r (0 = random in [1, rmax])");
  verify->add_option("--rmax", o.r_max);
  verify->add_option("--trials", o.trials);
  verify->add_option("--nmax", o.nmax);

  auto* sums = app.add_subcommand("sums", "partial sums over almost primes")->require_subcommand(1);
  auto* partial = leaf(sums, "partial", "S(x) at log-spaced x", [&] { sums_partial(common, o); });
  add_form_source(partial, o);
  partial->add_option("--r", o.r);
  partial->add_option("--mode", o.mode);
  partial->add_option("--xmin", o.xmin);
  partial->add_option("--xmax", o.xmax);
  partial->add_option("--samples", o.samples);
  partial->add_option("--character", o.character);
  partial->add_option("--smoothing", o.smoothing);

  auto* sign = app.add_subcommand("signs", "sign changes")->require_subcommand(1);
  auto* count = leaf(sign, "count", "over almost primes", [&] { signs(common, o, false); });
  auto* primes = leaf(sign, "primes", "over primes", [&] { signs(common, o, true); });
  for (auto* cmd : {count, primes}) {
    add_form_source(cmd, o);
    cmd->add_option("--xmax", o.xmax);
    cmd->add_option("--ratio", o.ratio);
    cmd->add_option("--cutoff", o.cutoff);
  }
  count->add_option("--r", o.r);
  count->add_option("--mode", o.mode);

  auto* moment = app.add_subcommand("moment", "second moments")->require_subcommand(1);
  auto* second = leaf(moment, "second", "sum of a(n)^2 over almost primes", [&] { moment_second(common, o); });
  add_form_source(second, o);
  second->add_option("--r", o.r);
  second->add_option("--mode", o.mode);
  second->add_option("--Y", o.ys, "comma-separated Y values");
  second->add_option("--delta", o.delta);

  auto* grow = app.add_subcommand("growth", "coefficient growth")->require_subcommand(1);
  auto* ram = leaf(grow, "ramanujan", "running maxima of |a(n)|", [&] { growth(common, o); });
  add_form_source(ram, o);
  ram->add_option("--xmax", o.xmax);
  ram->add_option("--samples", o.samples);

  auto* lvalue = app.add_subcommand("lvalue", "central L-values of Delta twists")->require_subcommand(1);
  auto* central = leaf(lvalue, "central", "one central value", [&] { lvalue_central(common, o); });
  central->add_option("--D", o.D);
  central->add_option("--T", o.T);
  auto* wald = leaf(lvalue, "waldspurger", "ratio scan", [&] { lvalue_waldspurger(common, o); });
  add_form_source(wald, o);
  wald->add_option("--dmax", o.dmax);
  wald->add_option("--d-exponent", o.d_exponent);
  auto* siegel = leaf(lvalue, "siegel", "lower-bound probe", [&] { lvalue_siegel(common, o); });
  siegel->add_option("--pmax", o.pmax);
  for (auto* cmd : {central, wald, siegel}) {
    cmd->add_option("--kernel", o.kernel);
    cmd->add_option("--balance", o.balance);
  }
  for (auto* cmd : {wald, siegel}) cmd->add_option("--truncation-factor", o.trunc_factor);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    action();
    return 0;
  } catch (const PrecisionError& e) {
    std::cerr << "precision error: " << e.what() << " (max usable " << e.max_usable() << ")\n";
    return 3;
  } catch (const AssertionFailure& e) {
    std::cerr << "assertion failed: " << e.what() << "\n";
    return 4;
  } catch (const ValidationError& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
