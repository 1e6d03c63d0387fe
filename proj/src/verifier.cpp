#include "aasum/verifier.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <ctime>
#include <functional>
#include <numbers>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "aasum/aa_sums.hpp"
#include "aasum/errors.hpp"

namespace aasum {

const char* to_string(CompareMode mode) {
  switch (mode) {
    case CompareMode::exact:
      return "exact";
    case CompareMode::absolute:
      return "absolute";
    case CompareMode::relative:
      return "relative";
    case CompareMode::scaled_absolute:
      return "scaled_absolute";
    case CompareMode::bracket:
      return "bracket";
  }
  return "?";
}

const char* to_string(CaseStatus status) {
  switch (status) {
    case CaseStatus::pass:
      return "pass";
    case CaseStatus::fail:
      return "fail";
    case CaseStatus::skipped:
      return "skipped";
    case CaseStatus::recorded:
      return "recorded";
  }
  return "?";
}

std::size_t VerificationReport::failures() const {
  std::size_t n = 0;
  for (const auto& s : summaries) {
    n += s.failed;
  }
  return n;
}

namespace {

// ---------------------------------------------------------------------------
// Comparison

struct Row {
  Params params;
  std::string lhs;
  std::string rhs;
  double error = 0.0;
  CompareMode mode = CompareMode::exact;
  double tolerance = 0.0;
  CaseStatus status = CaseStatus::pass;
  Params extras;
};

std::string render(const Value& v) {
  return v.is_exact() ? v.exact().to_fraction_string() : format_real(v.to_double());
}

std::string render(const BigRational& q) { return q.to_fraction_string(); }

bool within(CompareMode mode, double lhs, double rhs, double tol, double& error) {
  const double diff = std::fabs(lhs - rhs);
  switch (mode) {
    case CompareMode::absolute:
      error = diff;
      return diff < tol;
    case CompareMode::relative: {
      const double scale = std::max({1.0, std::fabs(lhs), std::fabs(rhs)});
      error = diff / scale;
      return diff <= tol * scale;
    }
    case CompareMode::scaled_absolute:
      error = diff;
      return diff <= tol * (1.0 + std::fabs(lhs));
    default:
      error = diff;
      return diff == 0.0;
  }
}

Row real_row(Params params, double lhs, double rhs, CompareMode mode, double tol) {
  Row row;
  row.params = std::move(params);
  row.lhs = format_real(lhs);
  row.rhs = format_real(rhs);
  row.mode = mode;
  row.tolerance = tol;
  row.status = within(mode, lhs, rhs, tol, row.error) ? CaseStatus::pass : CaseStatus::fail;
  return row;
}

/// Exact comparison when both sides are exact, the suite's real mode otherwise.
Row value_row(Params params, const Value& lhs, const Value& rhs, const SuiteInfo& info) {
  if (lhs.is_exact() && rhs.is_exact()) {
    Row row;
    row.params = std::move(params);
    row.lhs = render(lhs);
    row.rhs = render(rhs);
    row.mode = CompareMode::exact;
    const BigRational diff = (lhs.exact() - rhs.exact()).abs();
    row.error = diff.to_double();
    row.status = diff.is_zero() ? CaseStatus::pass : CaseStatus::fail;
    return row;
  }
  Row row = real_row(std::move(params), lhs.to_double(), rhs.to_double(), info.real_mode,
                     info.tolerance);
  row.lhs = render(lhs);
  row.rhs = render(rhs);
  return row;
}

Row exact_row(Params params, const BigRational& lhs, const BigRational& rhs) {
  Row row;
  row.params = std::move(params);
  row.lhs = render(lhs);
  row.rhs = render(rhs);
  row.mode = CompareMode::exact;
  row.error = (lhs - rhs).abs().to_double();
  row.status = lhs == rhs ? CaseStatus::pass : CaseStatus::fail;
  return row;
}

/// A witness that a formula is wrong: passes iff the two sides differ.
Row inverted_row(Params params, const BigRational& printed, const BigRational& truth) {
  Row row = exact_row(std::move(params), printed, truth);
  row.status = printed == truth ? CaseStatus::fail : CaseStatus::pass;
  row.extras.emplace_back("assertion", "inverted: printed form must disagree");
  return row;
}

Row with_status_if(Row row, bool record_only) {
  if (record_only && row.status != CaseStatus::skipped) {
    row.extras.emplace_back("verdict", to_string(row.status));
    row.status = CaseStatus::recorded;
  }
  return row;
}

// ---------------------------------------------------------------------------
// Grids

struct Task {
  Params params;
  std::function<std::vector<Row>()> run;
};

std::string join(std::span<const u64> ks) {
  std::string s;
  for (std::size_t i = 0; i < ks.size(); ++i) {
    s += (i ? "," : "") + std::to_string(ks[i]);
  }
  return s;
}

std::vector<std::vector<u64>> multisets(std::size_t n, u64 kmax) {
  std::vector<std::vector<u64>> out;
  std::vector<u64> cur(n, 1);
  if (n == 0 || kmax == 0) {
    return out;
  }
  while (true) {
    out.push_back(cur);
    std::size_t i = n;
    while (i > 0 && cur[i - 1] == kmax) {
      --i;
    }
    if (i == 0) {
      return out;
    }
    ++cur[i - 1];
    for (std::size_t j = i; j < n; ++j) {
      cur[j] = cur[i - 1];
    }
  }
}

std::vector<std::vector<u64>> ordered_tuples(std::size_t n, u64 kmax) {
  std::vector<std::vector<u64>> out;
  std::vector<u64> cur(n, 1);
  while (true) {
    out.push_back(cur);
    std::size_t i = n;
    while (i > 0 && cur[i - 1] == kmax) {
      cur[i - 1] = 1;
      --i;
    }
    if (i == 0) {
      return out;
    }
    ++cur[i - 1];
  }
}

struct FgPair {
  ArithFn f;
  ArithFn g;
};

std::vector<FgPair> signed_menu() {
  return {{ArithFn::euler_phi(), ArithFn::one()},
          {ArithFn::id_power(1), ArithFn::mobius()},
          {ArithFn::one(), ArithFn::one()}};
}

std::vector<ArithFn> h_menu() { return {ArithFn::one(), ArithFn::id_power(1)}; }

std::string slot_label(const std::vector<Slot>& slots, bool with_h) {
  std::string s;
  for (std::size_t i = 0; i < slots.size(); ++i) {
    s += i ? ";" : "";
    s += slots[i].f.to_string() + "|" + slots[i].g.to_string();
    if (with_h) {
      s += "|" + slots[i].h.to_string();
    }
  }
  return s;
}

/// Slot assignments for an n-tuple: every ordered combination of the menu
/// for n <= 2, the same entry in every slot for n >= 3.
std::vector<std::vector<Slot>> slot_assignments(std::size_t n, const std::vector<FgPair>& fg,
                                                const std::vector<ArithFn>& hs) {
  std::vector<Slot> menu;
  for (const auto& p : fg) {
    for (const auto& h : hs) {
      menu.push_back({p.f, p.g, h});
    }
  }
  std::vector<std::vector<Slot>> out;
  if (n >= 3) {
    for (const auto& s : menu) {
      out.emplace_back(n, s);
    }
    return out;
  }
  std::vector<std::size_t> idx(n, 0);
  while (true) {
    std::vector<Slot> slots;
    for (std::size_t i : idx) {
      slots.push_back(menu[i]);
    }
    out.push_back(std::move(slots));
    std::size_t i = n;
    while (i > 0 && idx[i - 1] + 1 == menu.size()) {
      idx[i - 1] = 0;
      --i;
    }
    if (i == 0) {
      return out;
    }
    ++idx[i - 1];
  }
}

struct GridPoint {
  unsigned a;
  std::vector<u64> ks;
  std::vector<Slot> slots;
};

/// n = 1..n_max, multiset moduli <= kmax, a in `as`, slot assignments from the menu.
std::vector<GridPoint> tuple_grid(std::size_t n_max, u64 kmax, const std::vector<unsigned>& as,
                                  const std::vector<FgPair>& fg, const std::vector<ArithFn>& hs) {
  std::vector<GridPoint> out;
  for (unsigned a : as) {
    for (std::size_t n = 1; n <= n_max; ++n) {
      const auto assignments = slot_assignments(n, fg, hs);
      for (const auto& ks : multisets(n, kmax)) {
        for (const auto& slots : assignments) {
          out.push_back({a, ks, slots});
        }
      }
    }
  }
  return out;
}

Params point_params(const GridPoint& p, bool with_h) {
  return {{"a", std::to_string(p.a)}, {"ks", join(p.ks)}, {"slots", slot_label(p.slots, with_h)}};
}

Params extend(Params base, Params more) {
  base.insert(base.end(), more.begin(), more.end());
  return base;
}

bool ka_within(const GridPoint& p, u64 limit) {
  u64 ka = 0;
  return try_pow(lcm_list(p.ks), p.a, ka) && ka <= limit;
}

struct Context {
  const SuiteInfo& info;
  const VerifyConfig& config;

  u64 kbound(u64 suite_default) const {
    return config.max_k == 0 ? suite_default : std::min(suite_default, config.max_k);
  }
};

// ---------------------------------------------------------------------------
// Suites

std::vector<Task> cross_form_sums(const Context& ctx) {
  std::vector<Task> tasks;
  constexpr u64 kJMax = 50;
  for (u64 k = 1; k <= 50; ++k) {
    tasks.push_back({{{"sum", "ramanujan"}, {"k", std::to_string(k)}, {"j", "1.." + std::to_string(kJMax)}},
                     [k] {
                       double worst = 0.0;
                       u64 worst_j = 1;
                       for (u64 j = 1; j <= kJMax; ++j) {
                         const double dev = std::abs(ramanujan_exp(k, j) -
                                                     std::complex<double>(static_cast<double>(ramanujan(k, j)), 0.0));
                         if (dev > worst) {
                           worst = dev;
                           worst_j = j;
                         }
                       }
                       Row row = real_row({}, static_cast<double>(ramanujan(k, worst_j)),
                                          ramanujan_exp(k, worst_j).real(), CompareMode::absolute, 1e-6);
                       row.error = worst;
                       row.status = worst < 1e-6 ? CaseStatus::pass : CaseStatus::fail;
                       row.extras.emplace_back("worst_j", std::to_string(worst_j));
                       return std::vector<Row>{row};
                     }});
  }
  // Cohen rows: every (a, k) with k^a <= 10^4. k = 1 is admissible for any
  // a; it is enumerated up to the largest a that admits k = 2.
  constexpr u64 kCohenLimit = 10'000;
  for (unsigned a = 1; a <= 13; ++a) {
    for (u64 k = 1;; ++k) {
      u64 ka = 0;
      if (!try_pow(k, a, ka) || ka > kCohenLimit) {
        break;
      }
      tasks.push_back({{{"sum", "cohen"}, {"a", std::to_string(a)}, {"k", std::to_string(k)},
                        {"j", "1.." + std::to_string(kJMax)}},
                       [a, k] {
                         const auto row_exp = cohen_exp_row(a, k, kJMax);
                         double worst = 0.0;
                         u64 worst_j = 1;
                         std::vector<double> exact(kJMax);
                         for (u64 j = 1; j <= kJMax; ++j) {
                           exact[j - 1] = cohen(a, k, j).get_d();
                           const double dev = std::abs(row_exp[j - 1] - std::complex<double>(exact[j - 1], 0.0));
                           if (dev > worst) {
                             worst = dev;
                             worst_j = j;
                           }
                         }
                         Row row = real_row({}, exact[worst_j - 1], row_exp[worst_j - 1].real(),
                                            CompareMode::absolute, 1e-6);
                         row.error = worst;
                         row.status = worst < 1e-6 ? CaseStatus::pass : CaseStatus::fail;
                         row.extras.emplace_back("worst_j", std::to_string(worst_j));
                         return std::vector<Row>{row};
                       }});
    }
  }
  for (u64 k = 1; k <= 100; ++k) {
    tasks.push_back({{{"sum", "ramanujan_at_k"}, {"k", std::to_string(k)}}, [k] {
                       return std::vector<Row>{exact_row({}, BigRational(static_cast<long long>(ramanujan(k, k))),
                                                         to_rational(euler_phi(k)))};
                     }});
  }
  (void)ctx;
  return tasks;
}

enum class LatticeForm { cm_weight, cm_weight_cm_h, ca_weight, ca_weight_cm_h };

std::vector<Task> lattice_weight_suite(const Context& ctx, LatticeForm which) {
  std::vector<ArithFn> weights;
  if (which == LatticeForm::cm_weight || which == LatticeForm::cm_weight_cm_h) {
    weights = {ArithFn::id_power(1), ArithFn::id_power(2)};
  } else {
    weights = {ArithFn::big_omega(), ArithFn::log()};
  }
  std::vector<Task> tasks;
  const SuiteInfo& info = ctx.info;
  const u64 budget = ctx.config.budget;
  for (const auto& p : tuple_grid(2, ctx.kbound(8), {1, 2}, signed_menu(), h_menu())) {
    for (const auto& w : weights) {
      Params params = extend(point_params(p, true), {{"w", w.to_string()}});
      tasks.push_back({params, [p, w, which, &info, budget] {
                         const TupleInstance t(p.a, p.ks, p.slots, w);
                         const Value direct = u_direct(t, budget);
                         Value rhs;
                         switch (which) {
                           case LatticeForm::cm_weight:
                             rhs = u_thm1_rhs(t);
                             break;
                           case LatticeForm::cm_weight_cm_h:
                             rhs = u_thm1_cm_rhs(t);
                             break;
                           case LatticeForm::ca_weight:
                             rhs = u_thm2_rhs(t);
                             break;
                           case LatticeForm::ca_weight_cm_h:
                             rhs = u_thm2_cm_rhs(t);
                             break;
                         }
                         return std::vector<Row>{value_row({}, direct, rhs, info)};
                       }});
    }
  }
  return tasks;
}

constexpr unsigned kMaxPowerR = 5;

std::vector<Task> power_weight_suite(const Context& ctx) {
  std::vector<Task> tasks;
  const SuiteInfo& info = ctx.info;
  const u64 budget = ctx.config.budget;
  const u64 kmax = ctx.kbound(12);
  for (const auto& p : tuple_grid(3, kmax, {1, 2}, signed_menu(), {ArithFn::one()})) {
    tasks.push_back({point_params(p, false), [p, &info, budget] {
                       const TupleInstance t(p.a, p.ks, p.slots);
                       const auto moments = u_direct_power_moments(t, kMaxPowerR, budget);
                       std::vector<Row> rows;
                       for (unsigned r = 1; r <= kMaxPowerR; ++r) {
                         rows.push_back(value_row({{"form", "multi"}, {"r", std::to_string(r)}}, moments[r],
                                                  u_tilde_idr_closed(t, r), info));
                       }
                       if (p.ks.size() == 1) {
                         const BigRational norm = to_rational(t.Ka());
                         for (unsigned r = 1; r <= kMaxPowerR; ++r) {
                           rows.push_back(value_row(
                               {{"form", "single_modulus"}, {"r", std::to_string(r)}},
                               moments[r] / Value(norm.pow(r)),
                               single_power_average_closed(p.a, p.slots[0].f, p.slots[0].g, p.ks[0], r), info));
                         }
                       }
                       return rows;
                     }});
  }
  // Ramanujan-sum power averages S_r and their Anderson-Apostol analogues.
  for (std::size_t n = 1; n <= 3; ++n) {
    for (const auto& ks : multisets(n, kmax)) {
      tasks.push_back({{{"form", "ramanujan_power_average"}, {"ks", join(ks)}}, [ks] {
                         std::vector<Row> rows;
                         for (unsigned r = 1; r <= kMaxPowerR; ++r) {
                           rows.push_back(
                               exact_row({{"r", std::to_string(r)}}, s_r_direct(ks, r), s_r_closed(ks, r)));
                         }
                         return rows;
                       }});
    }
  }
  for (const auto& p : tuple_grid(2, ctx.kbound(8), {1}, signed_menu(), {ArithFn::one()})) {
    Params params = point_params(p, false);
    params.insert(params.begin(), {"form", "aa_power_average"});
    tasks.push_back({params, [p, &info] {
                       std::vector<Row> rows;
                       for (unsigned r = 1; r <= kMaxPowerR; ++r) {
                         rows.push_back(value_row({{"r", std::to_string(r)}}, s_tilde_r_direct(p.ks, p.slots, r),
                                                  s_tilde_r_closed(p.ks, p.slots, r), info));
                       }
                       return rows;
                     }});
  }
  return tasks;
}

std::vector<Task> gcd_sum_suite(const Context& ctx) {
  std::vector<Task> tasks;
  const SuiteInfo& info = ctx.info;
  const u64 budget = ctx.config.budget;
  // The substituted functions: F in place of f (f-side) or G in place of g.
  const std::vector<FgPair> bases = {{ArithFn::id_power(1), ArithFn::id_power(1)},
                                     {ArithFn::euler_phi(), ArithFn::euler_phi()}};
  for (GcdSumSide side : {GcdSumSide::f, GcdSumSide::g}) {
    for (const auto& p : tuple_grid(3, ctx.kbound(12), {1, 2}, bases, {ArithFn::one()})) {
      Params params = point_params(p, false);
      params[2] = {"base", slot_label(p.slots, false)};
      params.insert(params.begin(), {"side", side == GcdSumSide::f ? "f" : "g"});
      tasks.push_back({params, [p, side, &info, budget] {
                         const TupleInstance t(p.a, p.ks, p.slots);
                         std::vector<Row> rows;
                         const auto direct_all = gcdsum_weighted_direct_moments(t, kMaxPowerR, side, budget);
                         for (unsigned r = 1; r <= kMaxPowerR; ++r) {
                           const Value& direct = direct_all[r];
                           rows.push_back(
                               value_row({{"r", std::to_string(r)}}, direct, gcdsum_weighted(t, r, side), info));
                           if (p.a == 1 && side == GcdSumSide::f) {
                             rows.push_back(value_row({{"r", std::to_string(r)}, {"form", "gcd"}},
                                                      gcdsum_weighted_gcd_form(t, r), direct, info));
                           }
                         }
                         return rows;
                       }});
    }
  }
  return tasks;
}

std::vector<Task> log_bracket_suite(const Context& ctx) {
  std::vector<Task> tasks;
  const u64 budget = ctx.config.budget;
  for (const auto& p : tuple_grid(2, ctx.kbound(8), {1, 2}, signed_menu(), {ArithFn::one()})) {
    tasks.push_back({point_params(p, false), [p, budget] {
                       const TupleInstance t(p.a, p.ks, p.slots, ArithFn::log());
                       const double direct = u_direct(t, budget).to_double();
                       const ThetaBracket bracket = u_tilde_log_bracket(t);
                       Row row;
                       row.lhs = format_real(direct);
                       row.rhs = format_real(bracket.main);
                       row.mode = CompareMode::bracket;
                       row.extras.emplace_back("width", format_real(bracket.width));
                       if (bracket.width == 0.0) {
                         row.error = std::fabs(direct - bracket.main);
                         row.status = direct == bracket.main ? CaseStatus::pass : CaseStatus::fail;
                         row.extras.emplace_back("degenerate", "width = 0, exact equality");
                       } else {
                         const double theta = *bracket.theta(direct);
                         row.extras.emplace_back("theta", format_real(theta));
                         row.error = theta <= 0.0 ? -theta : (theta >= 1.0 ? theta - 1.0 : 0.0);
                         const bool inside = theta > 0.0 && theta < 1.0;
                         row.status = inside ? CaseStatus::pass : CaseStatus::fail;
                       }
                       // The bracket is only claimed for nonnegative coefficients.
                       return std::vector<Row>{with_status_if(row, !t.coefficients_nonnegative())};
                     }});
  }
  return tasks;
}

std::vector<Task> conv_cm_suite(const Context& ctx) {
  std::vector<Task> tasks;
  const SuiteInfo& info = ctx.info;
  const u64 budget = ctx.config.budget;
  for (const auto& p : tuple_grid(2, ctx.kbound(8), {1, 2}, signed_menu(), {ArithFn::one()})) {
    tasks.push_back({point_params(p, false), [p, &info, budget] {
                       std::vector<Row> rows;
                       for (unsigned r = 0; r <= 4; ++r) {
                         const TupleInstance t(p.a, p.ks, p.slots, ArithFn::id_power(r));
                         const Value direct = u_direct(t, budget);
                         const Value conv = conv_repr(t);
                         Row row = value_row({{"r", std::to_string(r)}}, direct, conv, info);
                         if (r >= 1) {
                           const Value lattice = u_tilde_idr_closed(t, r);
                           row.extras.emplace_back("lattice_form", render(lattice));
                           if (!(lattice == direct)) {
                             row.status = CaseStatus::fail;
                           }
                         }
                         rows.push_back(std::move(row));
                       }
                       return rows;
                     }});
  }
  return tasks;
}

std::vector<Task> conv_ca_suite(const Context& ctx) {
  std::vector<Task> tasks;
  const SuiteInfo& info = ctx.info;
  const u64 budget = ctx.config.budget;
  for (const auto& p : tuple_grid(2, ctx.kbound(8), {1, 2}, signed_menu(), {ArithFn::one()})) {
    for (const ArithFn& w : {ArithFn::big_omega(), ArithFn::log()}) {
      tasks.push_back({extend(point_params(p, false), {{"w", w.to_string()}}), [p, w, &info, budget] {
                         const TupleInstance t(p.a, p.ks, p.slots, w);
                         return std::vector<Row>{value_row({}, u_direct(t, budget), conv_repr(t), info)};
                       }});
    }
  }
  return tasks;
}

std::vector<Task> remark_variants(const Context& ctx) {
  std::vector<Task> tasks;
  const SuiteInfo& info = ctx.info;
  const std::vector<ArithFn> weights = {ArithFn::id_power(1), ArithFn::id_power(2), ArithFn::big_omega(),
                                        ArithFn::log()};
  for (const auto& p : tuple_grid(2, ctx.kbound(8), {1, 2}, signed_menu(), {ArithFn::one()})) {
    for (const auto& w : weights) {
      tasks.push_back({extend(point_params(p, false), {{"w", w.to_string()}}), [p, w, &info] {
                         const TupleInstance t(p.a, p.ks, p.slots, w);
                         return std::vector<Row>{value_row({}, conv_repr_remark(t), conv_repr(t), info)};
                       }});
    }
  }
  return tasks;
}

std::vector<Task> jordan_conv_suite(const Context& ctx) {
  std::vector<Task> tasks;
  const SuiteInfo& info = ctx.info;
  const u64 budget = ctx.config.budget;
  for (const auto& p : tuple_grid(2, ctx.kbound(10), {1, 2}, signed_menu(), {ArithFn::one()})) {
    tasks.push_back({point_params(p, false), [p, &info, budget] {
                       const TupleInstance t(p.a, p.ks, p.slots);
                       const auto moments = u_direct_power_moments(t, 4, budget);
                       std::vector<Row> rows;
                       for (unsigned r = 1; r <= 4; ++r) {
                         rows.push_back(value_row({{"r", std::to_string(r)}}, moments[r],
                                                  u_tilde_idr_conv_closed(t, r), info));
                       }
                       return rows;
                     }});
  }
  for (const auto& p : tuple_grid(2, ctx.kbound(10), {1, 2}, {{ArithFn::euler_phi(), ArithFn::one()}},
                                  {ArithFn::one()})) {
    tasks.push_back({{{"form", "phi"}, {"a", std::to_string(p.a)}, {"ks", join(p.ks)}}, [p, budget] {
                       const TupleInstance t(p.a, p.ks, p.slots);
                       const auto moments = u_direct_power_moments(t, 4, budget);
                       std::vector<Row> rows;
                       for (unsigned r = 1; r <= 4; ++r) {
                         const BigRational direct =
                             moments[r].exact() / to_rational(t.K()).pow(static_cast<long>(p.a) * r);
                         rows.push_back(exact_row({{"r", std::to_string(r)}}, direct,
                                                  gcdsum_phi_conv_closed(p.ks, p.a, r)));
                       }
                       return rows;
                     }});
  }
  return tasks;
}

std::vector<Task> jordan_conv_printed_suite(const Context&) {
  std::vector<Task> tasks;
  // Witness: n = 1, k = 2, a = 1, r = 1, f = phi, g = 1. Normalized values.
  tasks.push_back({{{"form", "general"}, {"a", "1"}, {"ks", "2"}, {"slots", "phi|one"}, {"r", "1"}}, [] {
                     const TupleInstance t = TupleInstance::uniform(
                         1, {2}, Slot{ArithFn::euler_phi(), ArithFn::one(), ArithFn::one()});
                     const BigRational norm = to_rational(t.K());
                     const BigRational truth = u_direct_power_moments(t, 1)[1].exact() / norm;
                     const BigRational printed =
                         u_tilde_idr_conv_closed(t, 1, ConvForm::misprinted).exact() / norm;
                     const BigRational corrected = u_tilde_idr_conv_closed(t, 1).exact() / norm;
                     Row row = inverted_row({}, printed, truth);
                     row.extras.emplace_back("corrected", render(corrected));
                     if (!(corrected == truth)) {
                       row.status = CaseStatus::fail;
                     }
                     return std::vector<Row>{row};
                   }});
  tasks.push_back({{{"form", "phi"}, {"a", "1"}, {"ks", "2"}, {"r", "1"}}, [] {
                     const std::vector<u64> ks{2};
                     const TupleInstance t = TupleInstance::uniform(
                         1, ks, Slot{ArithFn::euler_phi(), ArithFn::one(), ArithFn::one()});
                     const BigRational truth = u_direct_power_moments(t, 1)[1].exact() / to_rational(t.K());
                     Row row = inverted_row({}, gcdsum_phi_conv_closed(ks, 1, 1, ConvForm::misprinted), truth);
                     row.extras.emplace_back("corrected", render(gcdsum_phi_conv_closed(ks, 1, 1)));
                     return std::vector<Row>{row};
                   }});
  return tasks;
}

std::vector<Task> log_conv_suite(const Context& ctx) {
  std::vector<Task> tasks;
  const SuiteInfo& info = ctx.info;
  const u64 budget = ctx.config.budget;
  for (const auto& p : tuple_grid(2, ctx.kbound(10), {1, 2}, signed_menu(), {ArithFn::one()})) {
    tasks.push_back({point_params(p, false), [p, &info, budget] {
                       const TupleInstance t(p.a, p.ks, p.slots, ArithFn::log());
                       const double direct = u_direct(t, budget).to_double();
                       return std::vector<Row>{
                           real_row({}, direct, u_tilde_log_conv(t), info.real_mode, info.tolerance)};
                     }});
  }
  return tasks;
}

constexpr u64 kGammaKaLimit = 10'000;

std::vector<Task> gamma_weight_suite(const Context& ctx) {
  std::vector<Task> tasks;
  const SuiteInfo& info = ctx.info;
  for (const auto& p : tuple_grid(2, ctx.kbound(12), {1, 2, 3}, signed_menu(), {ArithFn::one()})) {
    if (!ka_within(p, kGammaKaLimit)) {
      continue;
    }
    tasks.push_back({point_params(p, false), [p, &info] {
                       const TupleInstance t(p.a, p.ks, p.slots);
                       const RealPair pair = gamma_weight_check(t, p.a == 1);
                       std::vector<Row> rows;
                       rows.push_back(with_status_if(
                           real_row({}, pair.lhs, pair.rhs, info.real_mode, info.tolerance), p.a == 1));
                       const bool phi_menu = std::all_of(p.slots.begin(), p.slots.end(), [](const Slot& s) {
                         return s.f.kind() == ArithFn::Kind::euler_phi && s.g.is_identically_one();
                       });
                       if (phi_menu && p.a >= 2) {
                         rows.push_back(real_row({{"form", "phi"}}, pair.lhs, gamma_weight_phi_closed(p.ks, p.a),
                                                 info.real_mode, info.tolerance));
                       }
                       return rows;
                     }});
  }
  return tasks;
}

std::vector<Task> binom_weight_suite(const Context& ctx) {
  std::vector<Task> tasks;
  const SuiteInfo& info = ctx.info;
  for (const auto& p : tuple_grid(2, ctx.kbound(12), {1, 2, 3}, signed_menu(), {ArithFn::one()})) {
    if (!ka_within(p, kMaxBinomialWeightKa)) {
      continue;
    }
    tasks.push_back({point_params(p, false), [p, &info] {
                       const TupleInstance t(p.a, p.ks, p.slots);
                       const BinomCheck check = binom_weight_check(t, p.a == 1);
                       Row row = real_row({}, check.lhs.to_double(), check.rhs, info.real_mode, info.tolerance);
                       row.lhs = render(check.lhs);
                       return std::vector<Row>{with_status_if(row, p.a == 1)};
                     }});
  }
  return tasks;
}

std::vector<Task> bernoulli_weight_suite(const Context& ctx) {
  std::vector<Task> tasks;
  const SuiteInfo& info = ctx.info;
  const u64 budget = ctx.config.budget;
  for (const auto& p : tuple_grid(2, ctx.kbound(8), {1, 2, 3}, signed_menu(), {ArithFn::one()})) {
    if (!ka_within(p, kGammaKaLimit)) {
      continue;
    }
    tasks.push_back({point_params(p, false), [p, &info, budget] {
                       const TupleInstance t(p.a, p.ks, p.slots);
                       std::vector<Row> rows;
                       const bool phi_menu = std::all_of(p.slots.begin(), p.slots.end(), [](const Slot& s) {
                         return s.f.kind() == ArithFn::Kind::euler_phi && s.g.is_identically_one();
                       });
                       for (unsigned m = 0; m <= 6; ++m) {
                         const Value closed = bernoulli_weight_closed(t, m, p.a == 1);
                         rows.push_back(with_status_if(
                             value_row({{"m", std::to_string(m)}}, bernoulli_weight_direct(t, m, budget), closed, info),
                             p.a == 1));
                         if (m == 1 && phi_menu && p.a >= 2) {
                           BigRational expected(-1);
                           for (u64 k : p.ks) {
                             expected *= to_rational(k);
                           }
                           rows.push_back(exact_row({{"m", "1"}, {"form", "phi"}}, closed.exact(),
                                                    expected / BigRational(2)));
                         }
                       }
                       return rows;
                     }});
  }
  tasks.push_back({{{"form", "witness"}, {"a", "2"}, {"ks", "2"}, {"slots", "phi|one"}, {"m", "1"}}, [] {
                     const TupleInstance t = TupleInstance::uniform(
                         2, {2}, Slot{ArithFn::euler_phi(), ArithFn::one(), ArithFn::one()});
                     return std::vector<Row>{exact_row({}, bernoulli_weight_direct(t, 1).exact(), BigRational(-1))};
                   }});
  return tasks;
}

std::vector<Task> e_integrality(const Context& ctx) {
  std::vector<Task> tasks;
  const std::vector<std::pair<std::vector<u64>, long long>> named = {{{2, 2}, 1}, {{2, 3}, 0}, {{1}, 1}};
  for (const auto& [ks, expected] : named) {
    tasks.push_back({{{"form", "value"}, {"ks", join(ks)}}, [ks, expected] {
                       return std::vector<Row>{exact_row({}, e_function_direct(ks), BigRational(expected))};
                     }});
  }
  for (std::size_t n = 1; n <= 3; ++n) {
    for (const auto& ks : multisets(n, ctx.kbound(12))) {
      tasks.push_back({{{"ks", join(ks)}}, [ks] {
                         const BigRational direct = e_function_direct(ks);
                         Row row = exact_row({}, direct, e_function_divisor_form(ks));
                         if (!direct.is_integer() || direct.sign() < 0) {
                           row.status = CaseStatus::fail;
                         }
                         if (direct.is_zero()) {
                           row.extras.emplace_back("positive", "false");
                         }
                         return std::vector<Row>{row};
                       }});
    }
  }
  return tasks;
}

std::vector<Task> e_multiplicativity(const Context& ctx) {
  std::vector<Task> tasks;
  const u64 bound = ctx.kbound(8);
  const std::vector<FgPair> pairs = {{ArithFn::euler_phi(), ArithFn::one()},
                                     {ArithFn::id_power(1), ArithFn::mobius()},
                                     {ArithFn::one(), ArithFn::one()},
                                     {ArithFn::id_power(1), ArithFn::id_power(1)}};
  for (std::size_t n = 1; n <= 2; ++n) {
    for (const auto& ms : multisets(n, bound)) {
      for (const auto& ns : ordered_tuples(n, bound)) {
        u64 pm = 1;
        u64 pn = 1;
        for (std::size_t i = 0; i < n; ++i) {
          pm *= ms[i];
          pn *= ns[i];
        }
        if (gcd(pm, pn) != 1) {
          continue;
        }
        std::vector<u64> prod(n);
        for (std::size_t i = 0; i < n; ++i) {
          prod[i] = ms[i] * ns[i];
        }
        tasks.push_back({{{"m", join(ms)}, {"n", join(ns)}}, [ms, ns, prod, pairs] {
                           std::vector<Row> rows;
                           rows.push_back(exact_row({{"fn", "E"}}, e_function_direct(prod),
                                                    e_function_direct(ms) * e_function_direct(ns)));
                           for (const auto& fg : pairs) {
                             const std::vector<Slot> slots(ms.size(), Slot{fg.f, fg.g, ArithFn::one()});
                             const Value lhs = e_tilde(prod, slots);
                             const Value rhs = e_tilde(ms, slots) * e_tilde(ns, slots);
                             rows.push_back(exact_row({{"fn", "E~"}, {"pair", slot_label({slots[0]}, false)}},
                                                      lhs.exact(), rhs.exact()));
                           }
                           return rows;
                         }});
      }
    }
  }
  return tasks;
}

std::vector<Task> s1_special_suite(const Context& ctx) {
  std::vector<Task> tasks;
  for (u64 k = 1; k <= 50; ++k) {
    tasks.push_back({{{"ks", std::to_string(k)}}, [k] {
                       const std::vector<u64> ks{k};
                       const BigRational rhs = to_rational(euler_phi(k)) / (BigRational(2) * to_rational(k)) +
                                               e_function_direct(ks) / BigRational(2);
                       return std::vector<Row>{exact_row({}, s_r_direct(ks, 1), rhs)};
                     }});
  }
  for (std::size_t n = 2; n <= 3; ++n) {
    for (const auto& ks : multisets(n, ctx.kbound(12))) {
      tasks.push_back({{{"ks", join(ks)}}, [ks] {
                         return std::vector<Row>{exact_row({}, s_r_direct(ks, 1), s1_special(ks))};
                       }});
    }
  }
  return tasks;
}

BigRational brute_power_sum(u64 n, unsigned r, bool coprime_only) {
  BigInt acc = 0;
  for (u64 m = 1; m <= n; ++m) {
    if (coprime_only && gcd(m, n) != 1) {
      continue;
    }
    BigInt p;
    mpz_ui_pow_ui(p.get_mpz_t(), m, r);
    acc += p;
  }
  return BigRational(acc);
}

std::vector<Task> lemma_pool(const Context& ctx) {
  std::vector<Task> tasks;
  const SuiteInfo& info = ctx.info;
  for (unsigned r = 0; r <= 8; ++r) {
    tasks.push_back({{{"lemma", "faulhaber"}, {"r", std::to_string(r)}}, [r] {
                       std::vector<Row> rows;
                       for (u64 n = 1; n <= 100; ++n) {
                         rows.push_back(exact_row({{"N", std::to_string(n)}}, faulhaber_sum(n, r),
                                                  brute_power_sum(n, r, false)));
                       }
                       return rows;
                     }});
  }
  for (unsigned r = 0; r <= 6; ++r) {
    tasks.push_back({{{"lemma", "coprime_power_sum"}, {"r", std::to_string(r)}}, [r] {
                       std::vector<Row> rows;
                       for (u64 n = 1; n <= 200; ++n) {
                         rows.push_back(exact_row({{"N", std::to_string(n)}}, coprime_power_sum(n, r),
                                                  brute_power_sum(n, r, true)));
                       }
                       return rows;
                     }});
  }
  tasks.push_back({{{"lemma", "coprime_power_sum_printed"}, {"N", "6"}, {"r", "1"}}, [] {
                     return std::vector<Row>{
                         inverted_row({}, coprime_power_sum_misprinted(6, 1), brute_power_sum(6, 1, true))};
                   }});
  tasks.push_back({{{"lemma", "coprime_log_sum"}}, [] {
                     std::vector<Row> rows;
                     for (u64 n = 1; n <= 500; ++n) {
                       CompensatedSum brute;
                       for (u64 l = 1; l <= n; ++l) {
                         if (gcd(l, n) == 1) {
                           brute.add(std::log(static_cast<double>(l)));
                         }
                       }
                       rows.push_back(real_row({{"N", std::to_string(n)}}, coprime_log_sum(n), brute.value(),
                                               CompareMode::relative, 1e-10));
                     }
                     return rows;
                   }});
  tasks.push_back({{{"lemma", "gauss_legendre"}}, [&info] {
                     std::vector<Row> rows;
                     for (u64 n = 1; n <= 200; ++n) {
                       CompensatedSum lhs;
                       for (u64 j = 1; j <= n; ++j) {
                         lhs.add(log_gamma(static_cast<double>(j) / static_cast<double>(n)));
                       }
                       const double nd = static_cast<double>(n);
                       const double rhs = 0.5 * (nd - 1.0) * std::log(2.0 * std::numbers::pi) - 0.5 * std::log(nd);
                       rows.push_back(real_row({{"n", std::to_string(n)}}, lhs.value(), rhs, CompareMode::absolute,
                                               info.tolerance));
                     }
                     return rows;
                   }});
  tasks.push_back({{{"lemma", "binomial_cosine"}}, [] {
                     std::vector<Row> rows;
                     for (u64 n = 0; n <= 40; ++n) {
                       for (u64 r = 1; r <= 12; ++r) {
                         Row row = real_row({{"n", std::to_string(n)}, {"r", std::to_string(r)}},
                                            multisection_binomial_sum(n, r).get_d(),
                                            multisection_cosine_form(n, r), CompareMode::relative, 1e-9);
                         row.lhs = to_string(multisection_binomial_sum(n, r));
                         rows.push_back(std::move(row));
                       }
                     }
                     return rows;
                   }});
  tasks.push_back({{{"lemma", "binomial_bernoulli_sum"}}, [] {
                     std::vector<Row> rows;
                     for (unsigned r = 0; r <= 40; ++r) {
                       // r = 0: the sum is B_0 = 1; (r+1)/2 needs the B_1 term.
                       rows.push_back(with_status_if(
                           exact_row({{"r", std::to_string(r)}}, sum_binom_bernoulli(r),
                                     BigRational(static_cast<long long>(r) + 1) / BigRational(2)),
                           r == 0));
                     }
                     return rows;
                   }});
  tasks.push_back({{{"lemma", "bernoulli_multiplication"}}, [] {
                     std::vector<Row> rows;
                     for (u64 k = 1; k <= 30; ++k) {
                       for (unsigned m = 0; m <= 8; ++m) {
                         BigRational lhs;
                         for (u64 l = 0; l < k; ++l) {
                           lhs += bernoulli_poly(m, to_rational(l) / to_rational(k));
                         }
                         const BigRational rhs = bernoulli_number(m) * to_rational(k).pow(1 - static_cast<long>(m));
                         rows.push_back(exact_row({{"k", std::to_string(k)}, {"m", std::to_string(m)}}, lhs, rhs));
                       }
                     }
                     return rows;
                   }});
  tasks.push_back({{{"lemma", "stirling"}}, [] {
                     std::vector<Row> rows;
                     for (u64 n = 1; n <= 200; ++n) {
                       const auto [lower, upper] = stirling_bracket(n);
                       const double value = log_factorial(n);
                       Row row;
                       row.params = {{"n", std::to_string(n)}};
                       row.lhs = format_real(value);
                       row.rhs = format_real(lower);
                       row.mode = CompareMode::bracket;
                       const double theta = (value - lower) / (upper - lower);
                       row.extras.emplace_back("theta", format_real(theta));
                       row.error = theta <= 0.0 ? -theta : (theta >= 1.0 ? theta - 1.0 : 0.0);
                       row.status = theta > 0.0 && theta < 1.0 ? CaseStatus::pass : CaseStatus::fail;
                       rows.push_back(std::move(row));
                     }
                     return rows;
                   }});
  return tasks;
}

using Generator = std::vector<Task> (*)(const Context&);

struct SuiteDef {
  SuiteInfo info;
  Generator generate;
};

const std::vector<SuiteDef>& definitions() {
  using M = CompareMode;
  static const std::vector<SuiteDef> defs = {
      {{"cross_form_sums", "Ramanujan and Cohen sums: divisor form vs exponential form; c_k(k) = phi(k)",
        M::exact, M::absolute, 1e-6, Expectation::holds},
       cross_form_sums},
      {{"thm1_eq1", "completely multiplicative weight, general h", M::exact, M::relative, 1e-9,
        Expectation::holds},
       [](const Context& c) { return lattice_weight_suite(c, LatticeForm::cm_weight); }},
      {{"thm1_eq2", "completely multiplicative weight and h", M::exact, M::relative, 1e-9, Expectation::holds},
       [](const Context& c) { return lattice_weight_suite(c, LatticeForm::cm_weight_cm_h); }},
      {{"thm2_eq3", "completely additive weight, general h", M::exact, M::relative, 1e-9, Expectation::holds},
       [](const Context& c) { return lattice_weight_suite(c, LatticeForm::ca_weight); }},
      {{"thm2_eq4", "completely additive weight, completely multiplicative h", M::exact, M::relative, 1e-9,
        Expectation::holds},
       [](const Context& c) { return lattice_weight_suite(c, LatticeForm::ca_weight_cm_h); }},
      {{"cor_eq5", "power weights j^r: lattice closed form, single-modulus and Ramanujan specializations",
        M::exact, M::relative, 1e-9, Expectation::holds},
       power_weight_suite},
      {{"cor_eq8", "gcd-sum substitutions F*mu and G*mu", M::exact, M::relative, 1e-9, Expectation::holds},
       gcd_sum_suite},
      {{"cor_eq10_theta", "log weight inside its Stirling bracket", M::bracket, M::bracket, 0.0,
        Expectation::holds},
       log_bracket_suite},
      {{"thm4_eq16", "convolution form, completely multiplicative weight id_r (three-way)", M::exact,
        M::relative, 1e-9, Expectation::holds},
       conv_cm_suite},
      {{"thm4_eq17", "convolution form, completely additive weight", M::exact, M::relative, 1e-9,
        Expectation::holds},
       conv_ca_suite},
      {{"remark_variants", "convolution forms through the a = 1 sums at divisors of K", M::exact, M::relative,
        1e-9, Expectation::holds},
       remark_variants},
      {{"cor_eq18_corrected", "power weights through Jordan totients, corrected", M::exact, M::relative, 1e-9,
        Expectation::holds},
       jordan_conv_suite},
      {{"cor_eq18_printed_regression", "the printed Jordan-totient form must disagree on the witness",
        M::exact, M::exact, 0.0, Expectation::fails},
       jordan_conv_printed_suite},
      {{"cor_eq19", "log weight through the coprime log sum", M::relative, M::relative, 1e-9,
        Expectation::holds},
       log_conv_suite},
      {{"thm3_eq13", "log Gamma weight", M::scaled_absolute, M::scaled_absolute, 1e-8, Expectation::holds},
       gamma_weight_suite},
      {{"thm3_eq14", "binomial weight vs cosine form", M::relative, M::relative, 1e-9, Expectation::holds},
       binom_weight_suite},
      {{"thm3_eq15", "Bernoulli polynomial weight", M::exact, M::relative, 1e-9, Expectation::holds},
       bernoulli_weight_suite},
      {{"e_integrality", "E direct vs divisor form; nonnegative integer", M::exact, M::exact, 0.0,
        Expectation::holds},
       e_integrality},
      {{"e_multiplicativity", "E and E~ multiplicative on coprime tuples", M::exact, M::exact, 0.0,
        Expectation::holds},
       e_multiplicativity},
      {{"toth_s1", "S_1 = prod phi(k_i)/(2K) + E/2", M::exact, M::exact, 0.0, Expectation::holds}, s1_special_suite},
      {{"lemma_pool",
        "Faulhaber, coprime power and log sums, Gauss-Legendre, binomial-cosine, Bernoulli sums, Stirling",
        M::exact, M::absolute, 1e-9, Expectation::holds},
       lemma_pool},
  };
  return defs;
}

const SuiteDef& definition(const std::string& id) {
  for (const auto& d : definitions()) {
    if (d.info.id == id) {
      return d;
    }
  }
  throw ConfigError("unknown suite: " + id);
}

/// Runs `tasks` on `workers` threads; results keep the task order.
std::vector<std::vector<Row>> execute(const std::vector<Task>& tasks, unsigned workers) {
  std::vector<std::vector<Row>> results(tasks.size());
  auto run_one = [&](std::size_t i) {
    try {
      results[i] = tasks[i].run();
    } catch (const BudgetExceededError& e) {
      Row row;
      row.status = CaseStatus::skipped;
      row.extras.emplace_back("reason", e.what());
      results[i] = {row};
    } catch (const std::exception& e) {
      Row row;
      row.status = CaseStatus::fail;
      row.extras.emplace_back("error", e.what());
      results[i] = {row};
    }
  };
  if (workers <= 1 || tasks.size() <= 1) {
    for (std::size_t i = 0; i < tasks.size(); ++i) {
      run_one(i);
    }
    return results;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::jthread> pool;
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < tasks.size(); i = next++) {
        run_one(i);
      }
    });
  }
  pool.clear();
  return results;
}

}  // namespace

const std::vector<SuiteInfo>& suite_catalog() {
  static const std::vector<SuiteInfo> catalog = [] {
    std::vector<SuiteInfo> out;
    for (const auto& d : definitions()) {
      out.push_back(d.info);
    }
    return out;
  }();
  return catalog;
}

const SuiteInfo& suite_info(const std::string& id) { return definition(id).info; }

std::vector<std::string> resolve_suites(const std::vector<std::string>& requested) {
  if (requested.empty()) {
    throw ConfigError("no suites selected");
  }
  std::vector<std::string> out;
  for (const auto& id : requested) {
    if (id == "all") {
      for (const auto& s : suite_catalog()) {
        out.push_back(s.id);
      }
      continue;
    }
    definition(id);
    out.push_back(id);
  }
  // Catalog order, no duplicates.
  std::vector<std::string> ordered;
  for (const auto& s : suite_catalog()) {
    if (std::find(out.begin(), out.end(), s.id) != out.end()) {
      ordered.push_back(s.id);
    }
  }
  return ordered;
}

std::vector<CaseResult> run_suite(const std::string& id, const VerifyConfig& config) {
  const SuiteDef& def = definition(id);
  const Context ctx{def.info, config};
  const std::vector<Task> tasks = def.generate(ctx);
  const auto results = execute(tasks, config.workers);

  std::vector<CaseResult> out;
  for (std::size_t i = 0; i < tasks.size(); ++i) {
    for (const Row& row : results[i]) {
      CaseResult c;
      c.suite = id;
      c.ordinal = out.size();
      c.params = extend(tasks[i].params, row.params);
      c.lhs = row.lhs;
      c.rhs = row.rhs;
      c.error = row.error;
      c.mode = row.mode;
      c.tolerance = row.tolerance;
      c.status = row.status;
      c.extras = row.extras;
      out.push_back(std::move(c));
    }
  }
  return out;
}

SuiteSummary summarize(const std::string& id, const std::vector<CaseResult>& cases) {
  SuiteSummary s;
  s.id = id;
  for (const auto& c : cases) {
    if (c.suite != id) {
      continue;
    }
    ++s.cases;
    switch (c.status) {
      case CaseStatus::pass:
        ++s.passed;
        break;
      case CaseStatus::fail:
        ++s.failed;
        break;
      case CaseStatus::skipped:
        ++s.skipped;
        break;
      case CaseStatus::recorded:
        ++s.recorded;
        break;
    }
    if (c.status == CaseStatus::pass || c.status == CaseStatus::fail) {
      // Inverted rows carry the size of the expected disagreement.
      const bool inverted = std::any_of(c.extras.begin(), c.extras.end(),
                                        [](const auto& e) { return e.first == "assertion"; });
      if (!inverted) {
        s.max_error = std::max(s.max_error, c.error);
      }
    }
  }
  return s;
}

namespace {

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace

VerificationReport run_all(const VerifyConfig& config) {
  if (config.workers == 0) {
    throw ConfigError("workers must be at least 1");
  }
  if (config.budget == 0) {
    throw ConfigError("budget must be positive");
  }
  VerificationReport report;
  report.config = config;
  report.suite_ids = resolve_suites(config.suites);
  report.timestamp = utc_timestamp();
  for (const auto& id : report.suite_ids) {
    auto cases = run_suite(id, config);
    report.summaries.push_back(summarize(id, cases));
    report.cases.insert(report.cases.end(), std::make_move_iterator(cases.begin()),
                        std::make_move_iterator(cases.end()));
  }
  return report;
}

namespace {

using nlohmann::ordered_json;

ordered_json params_json(const Params& params) {
  ordered_json j = ordered_json::object();
  for (const auto& [k, v] : params) {
    j[k] = v;
  }
  return j;
}

ordered_json environment_json() {
  ordered_json env;
#if defined(__clang__)
  env["compiler"] = std::string("clang ") + __clang_version__;
#elif defined(__GNUC__)
  env["compiler"] = std::string("gcc ") + __VERSION__;
#else
  env["compiler"] = "unknown";
#endif
  env["cxx_standard"] = static_cast<long>(__cplusplus);
  env["gmp"] = gmp_version;
  env["double_digits"] = 17;
  return env;
}

std::string render_json(const VerificationReport& report) {
  ordered_json root;
  root["schema"] = kReportSchema;
  root["timestamp"] = report.timestamp;
  root["environment"] = environment_json();
  ordered_json cfg;
  cfg["suites"] = report.suite_ids;
  cfg["max_k"] = report.config.max_k;
  cfg["workers"] = report.config.workers;
  cfg["budget"] = report.config.budget;
  root["config"] = cfg;

  std::size_t total = 0;
  std::size_t skipped = 0;
  for (const auto& s : report.summaries) {
    total += s.cases;
    skipped += s.skipped;
  }
  root["summary"] = {{"suites", report.summaries.size()},
                     {"cases", total},
                     {"failed", report.failures()},
                     {"skipped", skipped}};

  ordered_json suites = ordered_json::array();
  std::size_t cursor = 0;
  for (const auto& s : report.summaries) {
    const SuiteInfo& info = suite_info(s.id);
    ordered_json js;
    js["id"] = s.id;
    js["description"] = info.description;
    js["mode"] = to_string(info.mode);
    js["expectation"] = info.expectation == Expectation::holds ? "holds" : "fails";
    js["cases_run"] = s.cases;
    js["passed"] = s.passed;
    js["failed"] = s.failed;
    js["skipped"] = s.skipped;
    js["recorded"] = s.recorded;
    js["max_error"] = format_real(s.max_error);
    ordered_json cases = ordered_json::array();
    for (; cursor < report.cases.size() && report.cases[cursor].suite == s.id; ++cursor) {
      const CaseResult& c = report.cases[cursor];
      ordered_json jc;
      jc["params"] = params_json(c.params);
      jc["lhs"] = c.lhs;
      jc["rhs"] = c.rhs;
      jc["error"] = format_real(c.error);
      jc["mode"] = to_string(c.mode);
      if (c.mode != CompareMode::exact && c.mode != CompareMode::bracket) {
        jc["tolerance"] = format_real(c.tolerance);
      }
      jc["pass"] = c.status == CaseStatus::pass;
      jc["status"] = to_string(c.status);
      jc["extras"] = params_json(c.extras);
      cases.push_back(std::move(jc));
    }
    js["cases"] = std::move(cases);
    suites.push_back(std::move(js));
  }
  root["suites"] = std::move(suites);
  return root.dump(1) + "\n";
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) {
    return s;
  }
  std::string out = "\"";
  for (char ch : s) {
    out += ch == '"' ? "\"\"" : std::string(1, ch);
  }
  return out + "\"";
}

std::string params_text(const Params& params) {
  std::string s;
  for (const auto& [k, v] : params) {
    s += (s.empty() ? "" : " ") + k + "=" + v;
  }
  return s;
}

std::string render_csv(const VerificationReport& report) {
  std::ostringstream os;
  os << "suite,params,lhs,rhs,error,mode,status\n";
  for (const auto& c : report.cases) {
    os << c.suite << ',' << csv_field(params_text(c.params)) << ',' << csv_field(c.lhs) << ','
       << csv_field(c.rhs) << ',' << format_real(c.error) << ',' << to_string(c.mode) << ','
       << to_string(c.status) << '\n';
  }
  return os.str();
}

std::string render_plain(const VerificationReport& report) {
  std::ostringstream os;
  char line[160];
  std::snprintf(line, sizeof line, "%-30s %8s %8s %8s %8s %8s  %s\n", "suite", "cases", "passed", "failed",
                "skipped", "recorded", "max_error");
  os << line;
  for (const auto& s : report.summaries) {
    std::snprintf(line, sizeof line, "%-30s %8zu %8zu %8zu %8zu %8zu  %s\n", s.id.c_str(), s.cases, s.passed,
                  s.failed, s.skipped, s.recorded, format_real(s.max_error).c_str());
    os << line;
  }
  for (const auto& c : report.cases) {
    if (c.status == CaseStatus::fail) {
      os << "FAIL " << c.suite << " " << params_text(c.params) << ": " << c.lhs << " vs " << c.rhs;
      for (const auto& [k, v] : c.extras) {
        os << " [" << k << ": " << v << "]";
      }
      os << '\n';
    }
  }
  os << (report.failures() == 0 ? "all suites passed" : std::to_string(report.failures()) + " failing case(s)")
     << '\n';
  return os.str();
}

}  // namespace

std::string render_report(const VerificationReport& report, ReportFormat format) {
  switch (format) {
    case ReportFormat::json:
      return render_json(report);
    case ReportFormat::csv:
      return render_csv(report);
    case ReportFormat::plain:
      return render_plain(report);
  }
  return {};
}

}  // namespace aasum
