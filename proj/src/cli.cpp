#include "aasum/cli.hpp"

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "aasum/aa_sums.hpp"
#include "aasum/averages.hpp"
#include "aasum/errors.hpp"
#include "aasum/verifier.hpp"

namespace aasum::cli {

namespace {

const std::map<std::string, ReportFormat> kFormats = {
    {"json", ReportFormat::json}, {"csv", ReportFormat::csv}, {"plain", ReportFormat::plain}};

/// Parses one function expression, reporting the offending column.
ArithFn parse_fn(const std::string& flag, const std::string& text) {
  try {
    return ArithFn::parse(text);
  } catch (const ParseError& e) {
    std::ostringstream msg;
    msg << flag << ": " << e.what() << "\n  " << text << "\n  " << std::string(e.position(), ' ') << '^';
    throw ConfigError(msg.str());
  }
}

/// One function per slot, or a single function broadcast to every slot.
std::vector<ArithFn> parse_fns(const std::string& flag, const std::vector<std::string>& texts,
                               std::size_t slots) {
  std::vector<ArithFn> out;
  for (const auto& t : texts) {
    out.push_back(parse_fn(flag, t));
  }
  if (out.size() == 1 && slots > 1) {
    out.assign(slots, out.front());
  }
  if (out.size() != slots) {
    throw ConfigError(flag + ": expected 1 or " + std::to_string(slots) + " expressions");
  }
  return out;
}

struct ComputeArgs {
  std::string quantity;
  u64 k = 1;
  u64 j = 1;
  u64 n = 1;
  unsigned a = 1;
  unsigned r = 1;
  unsigned m = 1;
  std::vector<u64> ks;
  std::vector<std::string> f{"one"};
  std::vector<std::string> g{"one"};
  std::vector<std::string> h{"one"};
  std::string w = "one";
  std::string form = "direct";
  u64 budget = kDefaultTermBudget;
};

struct VerifyArgs {
  std::vector<std::string> suites{"all"};
  u64 max_k = 0;
  unsigned workers = 1;
  u64 budget = kDefaultTermBudget;
  std::string out;
  std::string format = "json";
};

struct BenchArgs {
  std::vector<u64> ks{4, 6, 10};
  unsigned a = 2;
  unsigned r = 3;
  std::vector<std::string> f{"phi"};
  std::vector<std::string> g{"one"};
  u64 budget = kDefaultTermBudget;
  std::string format = "plain";
};

TupleInstance make_tuple(const ComputeArgs& c) {
  if (c.ks.empty()) {
    throw ConfigError("--ks is required");
  }
  const auto fs = parse_fns("--f", c.f, c.ks.size());
  const auto gs = parse_fns("--g", c.g, c.ks.size());
  const auto hs = parse_fns("--h", c.h, c.ks.size());
  std::vector<Slot> slots;
  for (std::size_t i = 0; i < c.ks.size(); ++i) {
    slots.push_back({fs[i], gs[i], hs[i]});
  }
  return TupleInstance(c.a, c.ks, std::move(slots), parse_fn("--w", c.w));
}

std::string compute(const ComputeArgs& c) {
  const std::string& q = c.quantity;
  if (q == "ramanujan") {
    return std::to_string(ramanujan(c.k, c.j));
  }
  if (q == "cohen") {
    return to_string(cohen(c.a, c.k, c.j));
  }
  if (q == "aa") {
    return anderson_apostol(parse_fn("--f", c.f.front()), parse_fn("--g", c.g.front()), c.k, c.j).to_string();
  }
  if (q == "gen-aa") {
    const SumSpec spec{c.a, parse_fn("--f", c.f.front()), parse_fn("--g", c.g.front()),
                       parse_fn("--h", c.h.front()), c.k};
    return gen_aa(spec, c.j).to_string();
  }
  if (q == "fn") {
    return parse_fn("--f", c.f.front())(c.n).to_string();
  }
  if (q == "E") {
    if (c.ks.empty()) {
      throw ConfigError("--ks is required");
    }
    return e_function_direct(c.ks).to_string();
  }
  if (q == "S") {
    if (c.ks.empty()) {
      throw ConfigError("--ks is required");
    }
    return s_r_direct(c.ks, c.r).to_string();
  }
  if (q == "U") {
    const TupleInstance t = make_tuple(c);
    if (c.form == "direct") {
      return u_direct(t, c.budget).to_string();
    }
    if (c.form == "conv") {
      return conv_repr(t).to_string();
    }
    if (c.form == "lattice") {
      const ArithFn& w = t.weight();
      return (w.is_completely_multiplicative() ? u_thm1_rhs(t) : u_thm2_rhs(t)).to_string();
    }
    throw ConfigError("--form must be direct, conv or lattice");
  }
  if (q == "power-average") {
    const TupleInstance t = make_tuple(c);
    if (c.form == "direct") {
      return u_direct_power_moments(t, c.r, c.budget)[c.r].to_string();
    }
    if (c.form == "lattice") {
      return u_tilde_idr_closed(t, c.r).to_string();
    }
    if (c.form == "conv") {
      return u_tilde_idr_conv_closed(t, c.r).to_string();
    }
    throw ConfigError("--form must be direct, conv or lattice");
  }
  if (q == "bernoulli") {
    return bernoulli_number(c.m).to_string();
  }
  throw ConfigError("unknown quantity: " + q);
}

int verify(const VerifyArgs& v, std::ostream& out, std::ostream& err) {
  VerifyConfig config;
  config.suites = v.suites;
  config.max_k = v.max_k;
  config.workers = v.workers;
  config.budget = v.budget;
  const VerificationReport report = run_all(config);
  const ReportFormat format = kFormats.at(v.format);
  if (v.out.empty()) {
    out << render_report(report, format);
  } else {
    std::ofstream file(v.out);
    if (!file) {
      throw ConfigError("cannot write " + v.out);
    }
    file << render_report(report, format);
    out << render_report(report, ReportFormat::plain);
  }
  if (report.failures() != 0) {
    err << report.failures() << " verification failure(s)\n";
    return kExitVerificationFailed;
  }
  return kExitOk;
}

struct BenchRow {
  std::string identity;
  std::optional<double> direct_ms;
  double closed_ms = 0.0;
  std::string direct_value;
  std::string closed_value;
  std::optional<bool> equal;
  std::string note;
};

std::string ms_text(double ms) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", ms);
  return buf;
}

template <typename F>
auto timed(F&& fn, double& ms) {
  const auto t0 = std::chrono::steady_clock::now();
  auto value = fn();
  ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  return value;
}

BenchRow bench_row(const std::string& identity, const std::function<Value()>& direct,
                   const std::function<Value()>& closed) {
  BenchRow row;
  row.identity = identity;
  const Value c = timed(closed, row.closed_ms);
  row.closed_value = c.to_string();
  try {
    double ms = 0.0;
    const Value d = timed(direct, ms);
    row.direct_ms = ms;
    row.direct_value = d.to_string();
    row.equal = d == c;
  } catch (const BudgetExceededError& e) {
    row.note = std::string("direct skipped: ") + e.what();
  }
  return row;
}

int bench(const BenchArgs& b, std::ostream& out, std::ostream& err) {
  const auto fs = parse_fns("--f", b.f, b.ks.size());
  const auto gs = parse_fns("--g", b.g, b.ks.size());
  std::vector<Slot> slots;
  for (std::size_t i = 0; i < b.ks.size(); ++i) {
    slots.push_back({fs[i], gs[i], ArithFn::one()});
  }
  const TupleInstance t(b.a, b.ks, slots, ArithFn::id_power(b.r));
  const u64 budget = b.budget;
  const unsigned r = b.r;

  std::vector<BenchRow> rows;
  rows.push_back(bench_row(
      "power_weight_lattice", [&] { return u_direct_power_moments(t, r, budget)[r]; },
      [&] { return u_tilde_idr_closed(t, r); }));
  rows.push_back(bench_row(
      "power_weight_convolution", [&] { return u_direct(t, budget); }, [&] { return conv_repr(t); }));
  rows.push_back(bench_row(
      "power_weight_jordan", [&] { return u_direct_power_moments(t, r, budget)[r]; },
      [&] { return u_tilde_idr_conv_closed(t, r); }));

  bool mismatch = false;
  if (b.format == "json") {
    nlohmann::ordered_json j;
    j["ks"] = b.ks;
    j["a"] = b.a;
    j["r"] = b.r;
    j["rows"] = nlohmann::ordered_json::array();
    for (const auto& row : rows) {
      nlohmann::ordered_json jr;
      jr["identity"] = row.identity;
      jr["closed_ms"] = row.closed_ms;
      jr["closed"] = row.closed_value;
      if (row.direct_ms) {
        jr["direct_ms"] = *row.direct_ms;
        jr["direct"] = row.direct_value;
        jr["equal"] = *row.equal;
      } else {
        jr["note"] = row.note;
      }
      j["rows"].push_back(jr);
    }
    out << j.dump(1) << '\n';
  } else {
    const char sep = b.format == "csv" ? ',' : '\t';
    out << "identity" << sep << "direct_ms" << sep << "closed_ms" << sep << "equal" << sep << "value\n";
    for (const auto& row : rows) {
      out << row.identity << sep << (row.direct_ms ? ms_text(*row.direct_ms) : "skipped") << sep
          << ms_text(row.closed_ms) << sep << (row.equal ? (*row.equal ? "yes" : "NO") : "-") << sep
          << row.closed_value << '\n';
    }
  }
  for (const auto& row : rows) {
    if (row.equal && !*row.equal) {
      err << row.identity << ": direct " << row.direct_value << " != closed " << row.closed_value << '\n';
      mismatch = true;
    }
  }
  return mismatch ? kExitVerificationFailed : kExitOk;
}

u64 default_budget() {
  if (const char* env = std::getenv("AASUM_BUDGET")) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      throw ConfigError(std::string("AASUM_BUDGET is not a number: ") + env);
    }
  }
  return kDefaultTermBudget;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Generalized Anderson-Apostol sums: point evaluation, identity verification, benchmarks"};
  app.require_subcommand(1);

  u64 budget = 0;
  try {
    budget = default_budget();
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  ComputeArgs c;
  c.budget = budget;
  auto* compute_cmd = app.add_subcommand("compute", "evaluate a single quantity");
  compute_cmd->set_help_flag("--help", "print this help");  // -h would shadow --h
  compute_cmd->add_option("quantity", c.quantity,
                          "ramanujan | cohen | aa | gen-aa | fn | E | S | U | power-average | bernoulli")
      ->required();
  compute_cmd->add_option("--k", c.k, "modulus");
  compute_cmd->add_option("--j", c.j, "argument");
  compute_cmd->add_option("--n", c.n, "argument of fn");
  compute_cmd->add_option("--a", c.a, "exponent a >= 1");
  compute_cmd->add_option("--r", c.r, "power r");
  compute_cmd->add_option("--m", c.m, "Bernoulli index");
  compute_cmd->add_option("--ks", c.ks, "moduli k_1,...,k_n")->delimiter(',');
  compute_cmd->add_option("--f", c.f, "f expression(s), one per modulus or one for all")->delimiter(',');
  compute_cmd->add_option("--g", c.g, "g expression(s)")->delimiter(',');
  compute_cmd->add_option("--h", c.h, "h expression(s)")->delimiter(',');
  compute_cmd->add_option("--w", c.w, "weight expression");
  compute_cmd->add_option("--form", c.form, "direct | lattice | conv");
  compute_cmd->add_option("--budget", c.budget, "direct-sum term budget (default: AASUM_BUDGET or 10^6)");

  VerifyArgs v;
  v.budget = budget;
  auto* verify_cmd = app.add_subcommand("verify", "run identity suites");
  verify_cmd->add_option("--suite", v.suites, "suite id(s) or 'all'")->delimiter(',');
  verify_cmd->add_option("--max-k", v.max_k, "cap on tuple moduli (0 keeps suite defaults)");
  verify_cmd->add_option("--workers", v.workers, "worker threads")->check(CLI::PositiveNumber);
  verify_cmd->add_option("--budget", v.budget, "direct-sum term budget");
  verify_cmd->add_option("--out", v.out, "report path (stdout when omitted)");
  verify_cmd->add_option("--format", v.format, "json | csv | plain")->check(CLI::IsMember({"json", "csv", "plain"}));

  BenchArgs b;
  b.budget = budget;
  auto* bench_cmd = app.add_subcommand("bench", "time direct summation against closed forms");
  bench_cmd->add_option("--ks", b.ks, "moduli")->delimiter(',');
  bench_cmd->add_option("--a", b.a, "exponent a");
  bench_cmd->add_option("--r", b.r, "power r >= 1");
  bench_cmd->add_option("--f", b.f, "f expression(s)")->delimiter(',');
  bench_cmd->add_option("--g", b.g, "g expression(s)")->delimiter(',');
  bench_cmd->add_option("--budget", b.budget, "direct-sum term budget");
  bench_cmd->add_option("--format", b.format, "plain | csv | json")->check(CLI::IsMember({"json", "csv", "plain"}));

  std::vector<std::string> argv_rev(args.rbegin(), args.rend() - (args.empty() ? 0 : 1));
  try {
    app.parse(argv_rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    if (compute_cmd->parsed()) {
      out << compute(c) << '\n';
      return kExitOk;
    }
    if (verify_cmd->parsed()) {
      return verify(v, out, err);
    }
    return bench(b, out, err);
  } catch (const BudgetExceededError& e) {
    err << "budget error: " << e.what() << '\n';
    return kExitBudget;
  } catch (const std::overflow_error& e) {
    err << "budget error: " << e.what() << '\n';
    return kExitBudget;
  } catch (const std::invalid_argument& e) {
    // ConfigError, ParseError, PreconditionError
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
}

}  // namespace aasum::cli
