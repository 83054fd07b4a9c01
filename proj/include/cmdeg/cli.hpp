#pragma once

// Command-line front end. `run` takes the argument list without the program
// name and returns the process exit code: 0 success, 1 computation error,
// 2 usage error.

#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cmdeg/bernoulli.hpp"
#include "cmdeg/degree.hpp"
#include "cmdeg/errors.hpp"
#include "cmdeg/kernel.hpp"
#include "cmdeg/polygamma.hpp"
#include "cmdeg/real.hpp"
#include "cmdeg/remainders.hpp"
#include "cmdeg/report_io.hpp"

namespace cmdeg::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitComputation = 1;
inline constexpr int kExitUsage = 2;
inline constexpr long kDefaultPrecision = 128;

enum class Format { json, csv, text };

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Validated settings shared by every subcommand.
struct RunConfig {
  long precision_bits = kDefaultPrecision;
  Format format = Format::json;
  std::optional<std::string> out_path;
  Grid grid{};
  int max_order = 12;
  Rational lattice_step{1, 20};
  int threads = 1;

  PrecisionPolicy policy() const {
    PrecisionPolicy p;
    p.working_bits = precision_bits;
    return p;
  }
};

using EnvLookup = std::function<const char*(const char*)>;

inline long default_precision(const EnvLookup& env) {
  const char* raw = env ? env("CMDEG_DEFAULT_PREC") : nullptr;
  if (raw == nullptr || *raw == '\0') return kDefaultPrecision;
  try {
    size_t used = 0;
    long bits = std::stol(raw, &used);
    if (used != std::string(raw).size()) throw std::invalid_argument("trailing");
    return bits;
  } catch (const std::exception&) {
    throw UsageError(std::string("CMDEG_DEFAULT_PREC is not an integer: '") + raw + "'");
  }
}

inline Rational parse_number(const std::string& text, const char* flag) {
  try {
    return parse_rational(text);
  } catch (const Error&) {
    throw UsageError(std::string(flag) + " expects a decimal or a/b rational, got '" + text + "'");
  }
}

inline std::pair<int, int> parse_pair(const std::string& text, char sep, const char* flag) {
  const auto pos = text.find(sep);
  if (pos == std::string::npos) throw UsageError(std::string(flag) + " expects a" + sep + "b, got '" + text + "'");
  try {
    size_t u1 = 0, u2 = 0;
    const std::string a = text.substr(0, pos), b = text.substr(pos + 1);
    int x = std::stoi(a, &u1), y = std::stoi(b, &u2);
    if (u1 != a.size() || u2 != b.size()) throw std::invalid_argument("trailing");
    return {x, y};
  } catch (const std::exception&) {
    throw UsageError(std::string(flag) + " expects integers, got '" + text + "'");
  }
}

inline Json error_record(const std::string& kind, const std::string& message) {
  return Json{{"schema", kSchemaVersion}, {"kind", "error"}, {"error", kind}, {"message", message}};
}

namespace detail {

struct Args {
  // global
  std::optional<long> prec;
  std::string format = "json";
  std::string out;
  // eval, cmcheck, degree
  std::string spec;
  std::string special;
  std::optional<int> psi;
  bool lgamma = false;
  std::string t;
  std::string r = "0";
  std::optional<int> max_order;
  std::string grid;
  std::string step;
  int threads = 1;
  // bernoulli
  std::optional<long> bern_n;
  std::optional<long> bern_max;
  // kernel
  std::optional<int> order;
  std::string s;
  long from = 7;
  long to = 11;
  long scan_to = 200;
  double tolerance = 1e-20;
  int max_level = 12;
  // conjectures
  std::string n_range = "0:3";
  std::string m_range = "0:3";
};

inline RemainderSpec resolve_spec(const Args& a, const RemainderLimits& limits) {
  if (!a.spec.empty() && !a.special.empty()) throw UsageError("--spec and --special are mutually exclusive");
  RemainderSpec s;
  if (!a.special.empty()) {
    auto sp = parse_special(a.special);
    if (!sp) throw UsageError("--special must be one of Q, PsiGap, TrigammaGap3");
    s = RemainderSpec::named(*sp);
  } else if (!a.spec.empty()) {
    auto [n, m] = parse_pair(a.spec, ',', "--spec");
    s = RemainderSpec::of(n, m);
  } else {
    throw UsageError("one of --spec n,m or --special NAME is required");
  }
  try {
    s.validate(limits);
  } catch (const Error& e) {
    throw UsageError(e.what());
  }
  return s;
}

inline Real require_positive_arg(const char* flag, const std::string& text, long bits) {
  if (text.empty()) throw UsageError(std::string(flag) + " is required");
  Rational q = parse_number(text, flag);
  if (q <= 0) throw UsageError(std::string(flag) + " must be > 0");
  return Real(q, bits);
}

class Output {
 public:
  explicit Output(std::ostream& out) : out_(out) {}
  std::ostream& stream() { return buffer_; }
  void flush_to(const std::optional<std::string>& path) {
    if (!path) {
      out_ << buffer_.str();
      out_.flush();
      return;
    }
    std::ofstream file(*path, std::ios::binary | std::ios::trunc);
    if (!file) throw Error("IOError", "cannot open '" + *path + "' for writing");
    file << buffer_.str();
    if (!file) throw Error("IOError", "failed writing '" + *path + "'");
  }

 private:
  std::ostream& out_;
  std::ostringstream buffer_;
};

inline void write_json(std::ostream& os, const Json& j) { os << j.dump(2) << '\n'; }

inline void print_bracket_text(std::ostream& os, const DegreeBracket& b) {
  os << b.spec.label() << ": cmdeg in [" << (b.lower ? rational_to_decimal(*b.lower) : std::string("none")) << ", "
     << rational_to_decimal(b.upper) << "]  (" << CmCheckReport::kEvidenceLabel << ")\n";
  os << "  upper method: " << to_string(b.upper_method) << "\n";
  os << "  small-t pole bound: " << rational_to_decimal(b.small_t_upper);
  if (b.small_t_numeric) os << "  extrapolated: " << b.small_t_numeric->to_string(10);
  os << "\n";
  if (!b.small_t_note.empty()) os << "  note: " << b.small_t_note << "\n";
  os << "  lattice step: " << rational_to_decimal(b.lattice_step) << "  scans: " << b.checks_run << "\n";
  if (!b.inconclusive_r.empty()) {
    os << "  inconclusive r:";
    for (const Rational& r : b.inconclusive_r) os << ' ' << rational_to_decimal(r);
    os << "\n";
  }
}

}  // namespace detail

/// Parses argv, validates the configuration, runs one subcommand.
inline int run(const std::vector<std::string>& args, std::ostream& out = std::cout, std::ostream& err = std::cerr,
               const EnvLookup& env = [](const char* name) -> const char* { return std::getenv(name); }) {
  detail::Args a;
  CLI::App app{"High-precision gamma/polygamma remainders and completely monotonic degrees", "cmdeg"};
  app.fallthrough();
  app.require_subcommand(1);
  app.add_option("--prec", a.prec, "Working precision in bits (default $CMDEG_DEFAULT_PREC or 128)");
  app.add_option("--format", a.format, "Output format")->check(CLI::IsMember({"json", "csv", "text"}));
  app.add_option("--out", a.out, "Write output to this file instead of stdout");

  auto add_spec = [&](CLI::App* sub) {
    sub->add_option("--spec", a.spec, "Remainder phi_{n,m} as n,m");
    sub->add_option("--special", a.special, "Q, PsiGap or TrigammaGap3");
  };
  auto add_scan = [&](CLI::App* sub) {
    sub->add_option("--max-order", a.max_order, "Highest derivative order K (default 12)");
    sub->add_option("--grid", a.grid, "log:<min>:<max>:<points> (default log:1e-3:1e4:200)");
    sub->add_option("--threads", a.threads, "Worker threads; output does not depend on this")->check(CLI::PositiveNumber);
  };

  CLI::App* eval = app.add_subcommand("eval", "Evaluate a remainder, polygamma or log-gamma at t");
  add_spec(eval);
  eval->add_option("--psi", a.psi, "Polygamma order k (psi^(k))");
  eval->add_flag("--lgamma", a.lgamma, "Evaluate ln Gamma");
  eval->add_option("--t", a.t, "Argument t > 0 (decimal or a/b)");

  CLI::App* bern = app.add_subcommand("bernoulli", "Exact Bernoulli numbers");
  bern->add_option("--n", a.bern_n, "Single index");
  bern->add_option("--max", a.bern_max, "Table B_0..B_max");

  CLI::App* kernel = app.add_subcommand("kernel", "Laplace kernel h and the h'''' series");
  kernel->require_subcommand(0, 1);
  kernel->add_option("--order", a.order, "Derivative order j in 0..4");
  kernel->add_option("--s", a.s, "Argument s > 0");
  CLI::App* coeffs = kernel->add_subcommand("coeffs", "Exact series coefficients c_k of h''''");
  coeffs->add_option("--from", a.from, "First k (>= 7)");
  coeffs->add_option("--to", a.to, "Last k");
  CLI::App* scan = kernel->add_subcommand("scan", "Exact positivity scan of c_k for 7 <= k <= K");
  scan->add_option("--to", a.scan_to, "Last k (default 200)");
  CLI::App* laplace = kernel->add_subcommand("laplace", "Reconstruct Q(t) as the Laplace transform of h");
  laplace->add_option("--t", a.t, "Argument t > 0");
  laplace->add_option("--tolerance", a.tolerance, "Absolute quadrature tolerance (default 1e-20)");
  laplace->add_option("--max-level", a.max_level, "Refinement levels before giving up (default 12)");

  CLI::App* cmcheck = app.add_subcommand("cmcheck", "Sign scan of (-1)^k [t^r phi]^(k) on a grid");
  add_spec(cmcheck);
  add_scan(cmcheck);
  cmcheck->add_option("--r", a.r, "Exponent r >= 0 (decimal or a/b)");

  CLI::App* degree = app.add_subcommand("degree", "Bracket the completely monotonic degree");
  add_spec(degree);
  add_scan(degree);
  degree->add_option("--step", a.step, "Lattice step in (0, 1] (default 0.05)");

  CLI::App* conj = app.add_subcommand("conjectures", "Brackets versus conjectured degrees over an (n, m) range");
  add_scan(conj);
  conj->add_option("--step", a.step, "Lattice step in (0, 1] (default 0.05)");
  conj->add_option("--n-range", a.n_range, "first:last (default 0:3)");
  conj->add_option("--m-range", a.m_range, "first:last (default 0:3)");

  std::vector<std::string> storage{"cmdeg"};
  storage.insert(storage.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const std::string& s : storage) argv.push_back(s.c_str());

  auto usage = [&](const std::string& message) {
    err << "error: " << message << "\n\n" << app.help();
    return kExitUsage;
  };

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    return usage(e.what());
  }

  // Validate everything before computing.
  RunConfig cfg;
  RemainderLimits limits;
  try {
    cfg.precision_bits = a.prec ? *a.prec : default_precision(env);
    try {
      cfg.policy().validate();
    } catch (const Error& e) {
      throw UsageError(e.what());
    }
    cfg.format = a.format == "csv" ? Format::csv : a.format == "text" ? Format::text : Format::json;
    if (!a.out.empty()) cfg.out_path = a.out;
    if (!a.grid.empty()) {
      try {
        cfg.grid = Grid::parse(a.grid, cfg.precision_bits);
      } catch (const Error& e) {
        throw UsageError(e.what());
      }
    }
    if (a.max_order) {
      if (*a.max_order < 1) throw UsageError("--max-order must be >= 1");
      cfg.max_order = *a.max_order;
    }
    if (!a.step.empty()) {
      cfg.lattice_step = parse_number(a.step, "--step");
      if (cfg.lattice_step <= 0 || cfg.lattice_step > 1) throw UsageError("--step must lie in (0, 1]");
    }
    cfg.threads = a.threads;
  } catch (const UsageError& e) {
    return usage(e.what());
  }

  const long bits = cfg.precision_bits;
  const PrecisionPolicy policy = cfg.policy();
  detail::Output output(out);
  std::ostream& os = output.stream();

  // Each branch validates its own flags (usage errors) and then computes.
  std::function<void()> compute;
  try {
    if (eval->parsed()) {
      const int chosen = (!a.spec.empty() || !a.special.empty()) + (a.psi ? 1 : 0) + (a.lgamma ? 1 : 0);
      if (chosen != 1) throw UsageError("eval needs exactly one of --spec, --special, --psi, --lgamma");
      const Real t = detail::require_positive_arg("--t", a.t, bits);
      std::optional<RemainderSpec> spec;
      if (!a.spec.empty() || !a.special.empty()) spec = detail::resolve_spec(a, limits);
      if (a.psi && *a.psi < 0) throw UsageError("--psi must be >= 0");
      compute = [&, t, spec] {
        std::string quantity;
        Real value(bits);
        if (spec) {
          quantity = spec->label();
          value = remainder_value(*spec, t, policy, limits);
        } else if (a.psi) {
          quantity = "psi" + std::to_string(*a.psi);
          value = polygamma(*a.psi, t, policy);
        } else {
          quantity = "lgamma";
          value = log_gamma(t, policy);
        }
        if (cfg.format == Format::json) {
          Json j{{"schema", kSchemaVersion}, {"kind", "eval"}, {"quantity", quantity}};
          if (spec) j["spec"] = spec_to_json(*spec);
          j["t"] = real_to_json(t);
          j["value"] = real_to_json(value);
          j["precision_bits"] = bits;
          detail::write_json(os, j);
        } else if (cfg.format == Format::csv) {
          os << "quantity,t,value,precision_bits\n"
             << quantity << ',' << t.to_decimal() << ',' << value.to_decimal() << ',' << bits << '\n';
        } else {
          os << quantity << "(" << t.to_decimal() << ") = " << value.to_decimal() << "  [" << bits << " bits, "
             << value.round_trip_digits() << " digits]\n";
        }
      };
    } else if (bern->parsed()) {
      if (a.bern_n.has_value() == a.bern_max.has_value()) throw UsageError("bernoulli needs exactly one of --n, --max");
      const long lo = a.bern_n ? *a.bern_n : 0;
      const long hi = a.bern_n ? *a.bern_n : *a.bern_max;
      if (lo < 0 || hi < 0) throw UsageError("Bernoulli index must be >= 0");
      compute = [&, lo, hi] {
        std::vector<Rational> table = bernoulli_table(hi);
        if (cfg.format == Format::json) {
          Json values = Json::array();
          for (long k = lo; k <= hi; ++k) values.push_back({{"n", k}, {"value", rational_to_string(table[static_cast<size_t>(k)])}});
          detail::write_json(os, Json{{"schema", kSchemaVersion}, {"kind", "bernoulli"}, {"exact", true}, {"values", values}});
        } else {
          if (cfg.format == Format::csv) os << "n,value\n";
          for (long k = lo; k <= hi; ++k) {
            if (cfg.format == Format::csv) os << k << ',' << table[static_cast<size_t>(k)].get_str() << '\n';
            else os << "B_" << k << " = " << table[static_cast<size_t>(k)].get_str() << '\n';
          }
        }
      };
    } else if (kernel->parsed()) {
      if (coeffs->parsed()) {
        if (a.from < 7 || a.to < a.from) throw UsageError("coeffs needs 7 <= --from <= --to");
        compute = [&] {
          std::vector<KernelCoefficient> cs;
          for (long k = a.from; k <= a.to; ++k) cs.push_back(h4_series_coefficient(k));
          if (cfg.format == Format::json) {
            Json rows = Json::array();
            for (const auto& c : cs)
              rows.push_back({{"k", c.k}, {"c", rational_to_string(c.value)}, {"two_c", rational_to_string(2 * c.value)}});
            detail::write_json(os, Json{{"schema", kSchemaVersion}, {"kind", "kernel_coeffs"}, {"exact", true}, {"coefficients", rows}});
          } else {
            if (cfg.format == Format::csv) os << "k,c,two_c\n";
            for (const auto& c : cs) {
              Rational two = 2 * c.value;
              if (cfg.format == Format::csv) os << c.k << ',' << c.value.get_str() << ',' << two.get_str() << '\n';
              else os << "c_" << c.k << " = " << c.value.get_str() << "   2c_" << c.k << " = " << two.get_str() << '\n';
            }
          }
        };
      } else if (scan->parsed()) {
        if (a.scan_to < 7) throw UsageError("scan needs --to >= 7");
        compute = [&] {
          PositivityScan s = h4_positivity_scan(a.scan_to);
          if (cfg.format == Format::json) {
            Json j{{"schema", kSchemaVersion}, {"kind", "kernel_scan"}, {"k_min", 7}, {"k_max", s.k_max},
                   {"checked", s.checked}, {"all_positive", s.all_positive}};
            j["first_failure"] = s.first_failure ? Json(*s.first_failure) : Json(nullptr);
            detail::write_json(os, j);
          } else if (cfg.format == Format::csv) {
            os << "k_min,k_max,checked,all_positive,first_failure\n7," << s.k_max << ',' << s.checked << ','
               << (s.all_positive ? "true" : "false") << ',' << (s.first_failure ? std::to_string(*s.first_failure) : "") << '\n';
          } else {
            os << "c_k > 0 for 7 <= k <= " << s.k_max << ": " << (s.all_positive ? "yes" : "no");
            if (s.first_failure) os << " (first failure at k = " << *s.first_failure << ")";
            os << "  [exact]\n";
          }
        };
      } else if (laplace->parsed()) {
        const Real t = detail::require_positive_arg("--t", a.t, bits);
        if (!(a.tolerance > 0)) throw UsageError("--tolerance must be > 0");
        if (a.max_level < 1) throw UsageError("--max-level must be >= 1");
        compute = [&, t] {
          QuadratureParams quad;
          quad.tolerance = a.tolerance;
          quad.max_level = a.max_level;
          LaplaceResult r = laplace_reconstruct(t, quad, policy);
          Real q = q_value(t, policy);
          Real diff = abs(r.value - q);
          if (cfg.format == Format::json) {
            detail::write_json(os, Json{{"schema", kSchemaVersion}, {"kind", "kernel_laplace"}, {"t", real_to_json(t)},
                                        {"value", real_to_json(r.value)}, {"q_value", real_to_json(q)},
                                        {"abs_difference", real_to_json(diff.rounded(64))},
                                        {"error_estimate", real_to_json(r.error_estimate)},
                                        {"tail_bound", real_to_json(r.tail_bound)}, {"cutoff", real_to_json(r.cutoff)},
                                        {"levels", r.levels}, {"evaluations", r.evaluations}, {"precision_bits", bits}});
          } else if (cfg.format == Format::csv) {
            os << "t,value,q_value,abs_difference,error_estimate\n"
               << t.to_decimal() << ',' << r.value.to_decimal() << ',' << q.to_decimal() << ','
               << diff.to_string(6) << ',' << r.error_estimate.to_string(6) << '\n';
          } else {
            os << "laplace(" << t.to_decimal() << ") = " << r.value.to_decimal() << "\nQ(t)            = " << q.to_decimal()
               << "\n|difference|    = " << diff.to_string(6) << "  (estimate " << r.error_estimate.to_string(6) << ", "
               << r.levels << " levels, " << r.evaluations << " evaluations)\n";
          }
        };
      } else {
        if (!a.order) throw UsageError("kernel needs --order with --s, or one of coeffs, scan, laplace");
        if (*a.order < 0 || *a.order > 4) throw UsageError("--order must lie in 0..4");
        const Real s = detail::require_positive_arg("--s", a.s, bits);
        compute = [&, s] {
          Real v = kernel_h(*a.order, s, policy);
          if (cfg.format == Format::json) {
            detail::write_json(os, Json{{"schema", kSchemaVersion}, {"kind", "kernel_h"}, {"order", *a.order},
                                        {"s", real_to_json(s)}, {"value", real_to_json(v)}, {"precision_bits", bits}});
          } else if (cfg.format == Format::csv) {
            os << "order,s,value\n" << *a.order << ',' << s.to_decimal() << ',' << v.to_decimal() << '\n';
          } else {
            os << "h^(" << *a.order << ")(" << s.to_decimal() << ") = " << v.to_decimal() << "  [" << bits << " bits]\n";
          }
        };
      }
    } else if (cmcheck->parsed()) {
      const RemainderSpec spec = detail::resolve_spec(a, limits);
      const Rational r = parse_number(a.r, "--r");
      if (r < 0) throw UsageError("--r must be >= 0");
      compute = [&, spec, r] {
        CheckOptions opts;
        opts.keep_samples = true;
        opts.threads = cfg.threads;
        CmCheckReport rep = cm_check(spec, r, cfg.max_order, cfg.grid, policy, opts);
        if (cfg.format == Format::json) {
          detail::write_json(os, to_json(rep));
        } else if (cfg.format == Format::csv) {
          emit_plot_data(rep, os);
        } else {
          os << spec.label() << " with r = " << rational_to_decimal(r) << ", K = " << rep.max_order << ", grid "
             << rep.grid.describe() << ": " << to_string(rep.verdict) << "  (" << CmCheckReport::kEvidenceLabel << ")\n"
             << "  violations: " << rep.violations.size() << "  inconclusive: " << rep.inconclusive_points.size() << '\n';
          for (size_t i = 0; i < std::min<size_t>(rep.violations.size(), 10); ++i)
            os << "  k=" << rep.violations[i].k << " t=" << rep.violations[i].t.to_string(12)
               << " value=" << rep.violations[i].value.to_string(12) << '\n';
        }
      };
    } else if (degree->parsed()) {
      const RemainderSpec spec = detail::resolve_spec(a, limits);
      compute = [&, spec] {
        BracketOptions opts;
        opts.lattice_step = cfg.lattice_step;
        opts.max_order = cfg.max_order;
        opts.grid = cfg.grid;
        opts.check.threads = cfg.threads;
        DegreeBracket b = degree_bracket(spec, opts, policy);
        if (cfg.format == Format::json) {
          detail::write_json(os, to_json(b));
        } else if (cfg.format == Format::csv) {
          ConjectureTable t;
          ConjectureRow row;
          row.n = spec.n;
          row.m = spec.m;
          row.conjectured = conjectured_degree(spec.n, spec.m);
          row.status = conjecture_status(spec.n, spec.m);
          row.bracket = b;
          t.rows.push_back(std::move(row));
          emit_plot_data(t, os);
        } else {
          detail::print_bracket_text(os, b);
        }
      };
    } else if (conj->parsed()) {
      auto [n0, n1] = parse_pair(a.n_range, ':', "--n-range");
      auto [m0, m1] = parse_pair(a.m_range, ':', "--m-range");
      if (n0 < 0 || m0 < 0 || n1 < n0 || m1 < m0) throw UsageError("ranges must satisfy 0 <= first <= last");
      if (n1 > limits.max_n || m1 > limits.max_m) throw UsageError("range exceeds configured maxima");
      compute = [&, n0, n1, m0, m1] {
        BracketOptions opts;
        opts.lattice_step = cfg.lattice_step;
        opts.max_order = cfg.max_order;
        opts.grid = cfg.grid;
        opts.check.threads = cfg.threads;
        ConjectureTable table = conjecture_scan({n0, n1}, {m0, m1}, opts, policy);
        if (cfg.format == Format::json) {
          detail::write_json(os, to_json(table));
        } else if (cfg.format == Format::csv) {
          emit_plot_data(table, os);
        } else {
          os << "n m  conjectured  status            bracket              contains\n";
          for (const ConjectureRow& row : table.rows) {
            os << row.n << ' ' << row.m << "  " << row.conjectured << "            " << to_string(row.status) << "  ";
            if (row.error) {
              os << "error: " << *row.error << '\n';
              continue;
            }
            os << '[' << (row.bracket->lower ? rational_to_decimal(*row.bracket->lower) : std::string("none")) << ", "
               << rational_to_decimal(row.bracket->upper) << "]  " << (row.contains_conjecture() ? "yes" : "no") << '\n';
          }
          os << "(" << CmCheckReport::kEvidenceLabel << ")\n";
        }
      };
    }
  } catch (const UsageError& e) {
    return usage(e.what());
  }

  try {
    compute();
    output.flush_to(cfg.out_path);
  } catch (const Error& e) {
    err << error_record(e.kind(), e.what()).dump() << '\n';
    return kExitComputation;
  } catch (const std::exception& e) {
    err << error_record("InternalError", e.what()).dump() << '\n';
    return kExitComputation;
  }
  return kExitOk;
}

}  // namespace cmdeg::cli
