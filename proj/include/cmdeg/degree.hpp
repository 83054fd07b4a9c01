#pragma once

// Completely monotonic degree machinery.
//
// phi is completely monotonic (CM) on (0, inf) when (-1)^k phi^(k)(t) >= 0
// for every k >= 0. Its CM degree is the largest r for which t^r phi(t) is
// CM. Everything here is numerical evidence over a finite grid and a finite
// number of derivative orders; none of it certifies CM.
//
// Lower evidence comes from sign scans of
//   (-1)^k d^k/dt^k [t^r phi(t)]
//     = (-1)^k sum_{j=0}^{k} C(k,j) r(r-1)...(r-j+1) t^(r-j) phi^(k-j)(t),
// with every phi^(i) evaluated symbolically. Upper bounds come from the
// small-t criterion: if t^r phi is CM it is nonincreasing, which forces
// r + t phi'(t)/phi(t) <= 0 near 0+, so r <= lim (-t phi'/phi).

#include <algorithm>
#include <cmath>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "cmdeg/errors.hpp"
#include "cmdeg/real.hpp"
#include "cmdeg/remainders.hpp"

namespace cmdeg {

/// Log-spaced evaluation grid t_min = t_0 < ... < t_{points-1} = t_max.
struct Grid {
  Real t_min{Real(Rational(1, 1000), 128)};
  Real t_max{Real(10000L, 128)};
  int points = 200;

  static Grid log_spaced(Real t_min, Real t_max, int points) {
    Grid g{std::move(t_min), std::move(t_max), points};
    g.validate();
    return g;
  }

  /// Parses "log:<min>:<max>:<points>".
  static Grid parse(const std::string& text, long bits = 128) {
    std::vector<std::string> parts;
    std::stringstream ss(text);
    for (std::string item; std::getline(ss, item, ':');) parts.push_back(item);
    if (parts.size() != 4 || parts[0] != "log")
      throw InvalidArgument("grid must look like log:<min>:<max>:<points>, got '" + text + "'");
    int n = 0;
    try {
      size_t used = 0;
      n = std::stoi(parts[3], &used);
      if (used != parts[3].size()) throw std::invalid_argument("trailing");
    } catch (const std::exception&) {
      throw InvalidArgument("grid point count '" + parts[3] + "' is not an integer");
    }
    return log_spaced(Real(parse_rational(parts[1]), bits), Real(parse_rational(parts[2]), bits), n);
  }

  void validate() const {
    if (!(t_min > 0L)) throw InvalidArgument("grid t_min must be > 0");
    if (!(t_max > t_min)) throw InvalidArgument("grid t_max must exceed t_min");
    if (points < 2) throw InvalidArgument("grid needs at least 2 points");
  }

  std::vector<Real> nodes(long bits) const {
    validate();
    std::vector<Real> out;
    out.reserve(static_cast<size_t>(points));
    const Real lo = log(t_min.rounded(bits));
    const Real step = (log(t_max.rounded(bits)) - lo) / static_cast<long>(points - 1);
    for (int i = 0; i < points; ++i) {
      if (i == 0) out.push_back(t_min.rounded(bits));
      else if (i == points - 1) out.push_back(t_max.rounded(bits));
      else out.push_back(exp(lo + step * static_cast<long>(i)));
    }
    return out;
  }

  std::string describe() const {
    return "log:" + t_min.to_string(17) + ":" + t_max.to_string(17) + ":" + std::to_string(points);
  }
};

enum class Verdict { pass, violation, inconclusive };

inline std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::pass: return "pass";
    case Verdict::violation: return "violation";
    case Verdict::inconclusive: return "inconclusive";
  }
  return "?";
}

enum class SampleStatus { ok, violation, inconclusive };

inline std::string to_string(SampleStatus s) {
  switch (s) {
    case SampleStatus::ok: return "ok";
    case SampleStatus::violation: return "violation";
    case SampleStatus::inconclusive: return "inconclusive";
  }
  return "?";
}

struct Sample {
  Real t;
  int k = 0;
  Real value;
  SampleStatus status = SampleStatus::ok;
};

struct Violation {
  Real t;
  int k = 0;
  Real value;
};

struct InconclusivePoint {
  Real t;
  int k = 0;
  std::string note;
};

/// Result of a finite-order, finite-grid CM scan of t^r phi(t).
struct CmCheckReport {
  RemainderSpec spec;
  Rational r;
  int max_order = 0;
  Grid grid;
  long precision_bits = 0;
  Verdict verdict = Verdict::pass;
  std::vector<Violation> violations;
  std::vector<InconclusivePoint> inconclusive_points;
  std::vector<Sample> samples;  // ordered by (t, k); empty unless requested

  static constexpr const char* kEvidenceLabel = "numerical evidence";

  /// Recomputes the verdict from the violation and inconclusive lists.
  void finalize() {
    if (!violations.empty()) verdict = Verdict::violation;
    else if (!inconclusive_points.empty()) verdict = Verdict::inconclusive;
    else verdict = Verdict::pass;
  }

  bool consistent() const {
    if (verdict == Verdict::violation) return !violations.empty();
    if (verdict == Verdict::inconclusive) return violations.empty() && !inconclusive_points.empty();
    return violations.empty() && inconclusive_points.empty();
  }
};

struct CheckOptions {
  bool keep_samples = false;
  int threads = 1;
  Rational scale_factor = 1;  // evaluates c * phi; must be > 0
  RemainderLimits limits{};
};

namespace detail {

inline Rational falling_factorial(const Rational& r, int j) {
  Rational out = 1;
  for (int i = 0; i < j; ++i) out *= r - i;
  return out;
}

struct SignedValue {
  Real value;
  Real scale;  // largest product-rule summand, the local magnitude
};

// (-1)^k d^k/dt^k [c t^r phi(t)] for k = 0..max_order at one t.
inline std::vector<SignedValue> signed_derivatives(const RemainderSpec& spec, const Rational& r, int max_order,
                                                   const Real& t, const PrecisionPolicy& policy,
                                                   const CheckOptions& options) {
  const long bits = policy.working_bits;
  std::vector<Real> phi = remainder_derivatives(spec, max_order, t, policy, options.limits);
  const Real tt = t.rounded(std::max(bits, t.precision()));
  // t^(r-j) for j = 0..max_order
  std::vector<Real> powers;
  powers.reserve(static_cast<size_t>(max_order + 1));
  if (r.get_den() == 1 && r.get_num().fits_slong_p()) powers.push_back(pow(tt, r.get_num().get_si()));
  else powers.push_back(exp(Real(r, bits + 16) * log(tt.rounded(bits + 16))).rounded(bits));
  for (int j = 1; j <= max_order; ++j) powers.push_back(powers.back() / tt);

  std::vector<Rational> falling;
  falling.reserve(static_cast<size_t>(max_order + 1));
  for (int j = 0; j <= max_order; ++j) falling.push_back(falling_factorial(r, j) * options.scale_factor);

  std::vector<SignedValue> out;
  out.reserve(static_cast<size_t>(max_order + 1));
  for (int k = 0; k <= max_order; ++k) {
    Real sum(bits), scale(bits);
    Integer binom = 1;
    for (int j = 0; j <= k; ++j) {
      const Rational w = Rational(binom) * falling[static_cast<size_t>(j)];
      if (w != 0) {
        Real term = Real(w, bits) * powers[static_cast<size_t>(j)] * phi[static_cast<size_t>(k - j)];
        if (abs(term) > scale) scale = abs(term);
        sum += term;
      }
      binom = binom * (k - j) / (j + 1);
    }
    if (k % 2 == 1) sum = -sum;
    out.push_back({std::move(sum), std::move(scale)});
  }
  return out;
}

}  // namespace detail

/// (-1)^k d^k/dt^k [t^r phi(t)] with phi = phi_{n,m}.
inline Real signed_derivative(const RemainderSpec& spec, const Rational& r, int k, const Real& t,
                              const PrecisionPolicy& policy = {}, const CheckOptions& options = {}) {
  policy.validate();
  if (k < 0) throw InvalidIndex("derivative order must be >= 0");
  return std::move(detail::signed_derivatives(spec, r, k, t, policy, options).back().value);
}

/// Sign scan of (-1)^k [t^r phi]^(k) for k <= max_order over the grid.
///
/// A value at least 2^(-w/2) times its local magnitude is decisive at w
/// working bits. Anything closer to zero is recomputed at 2w bits and, if it
/// is still within 2^-w of the magnitude, recorded as inconclusive rather
/// than as a violation.
inline CmCheckReport cm_check(const RemainderSpec& spec, const Rational& r, int max_order, const Grid& grid,
                              const PrecisionPolicy& policy = {}, const CheckOptions& options = {}) {
  policy.validate();
  spec.validate(options.limits);
  if (max_order < 1) throw InvalidArgument("cm_check needs max_order >= 1");
  if (r < 0) throw InvalidArgument("cm_check needs r >= 0");
  if (options.scale_factor <= 0) throw InvalidArgument("scale factor must be > 0");

  CmCheckReport report;
  report.spec = spec;
  report.r = r;
  report.max_order = max_order;
  report.grid = grid;
  report.precision_bits = policy.working_bits;

  const std::vector<Real> nodes = grid.nodes(policy.working_bits);
  const long w = policy.working_bits;

  struct PointResult {
    std::vector<Sample> samples;
    std::vector<Violation> violations;
    std::vector<InconclusivePoint> inconclusive;
  };
  std::vector<PointResult> results(nodes.size());

  auto classify_point = [&](size_t idx) {
    PointResult& out = results[idx];
    const Real& t = nodes[idx];
    std::vector<detail::SignedValue> values;
    try {
      values = detail::signed_derivatives(spec, r, max_order, t, policy, options);
    } catch (const Error& e) {
      for (int k = 0; k <= max_order; ++k) {
        out.inconclusive.push_back({t, k, e.kind() + ": " + e.what()});
        if (options.keep_samples) out.samples.push_back({t, k, Real(w), SampleStatus::inconclusive});
      }
      return;
    }
    std::optional<std::vector<detail::SignedValue>> refined;
    for (int k = 0; k <= max_order; ++k) {
      Real value = values[static_cast<size_t>(k)].value;
      const Real& scale = values[static_cast<size_t>(k)].scale;
      SampleStatus status = SampleStatus::ok;
      if (abs(value) < ldexp(scale, -w / 2)) {
        // Too close to zero to decide at w bits.
        try {
          if (!refined) refined = detail::signed_derivatives(spec, r, max_order, t, policy.with_working(2 * w), options);
          const detail::SignedValue& fine = (*refined)[static_cast<size_t>(k)];
          value = fine.value.rounded(w);
          if (abs(fine.value) < ldexp(fine.scale, -w)) status = SampleStatus::inconclusive;
          else status = fine.value.sign() < 0 ? SampleStatus::violation : SampleStatus::ok;
        } catch (const Error&) {
          status = SampleStatus::inconclusive;
        }
      } else if (value.sign() < 0) {
        status = SampleStatus::violation;
      }
      if (status == SampleStatus::violation) out.violations.push_back({t, k, value});
      if (status == SampleStatus::inconclusive) out.inconclusive.push_back({t, k, "below the doubled-precision floor"});
      if (options.keep_samples) out.samples.push_back({t, k, std::move(value), status});
    }
  };

  const int threads = std::max(1, std::min<int>(options.threads, static_cast<int>(nodes.size())));
  if (threads == 1) {
    for (size_t i = 0; i < nodes.size(); ++i) classify_point(i);
  } else {
    std::vector<std::jthread> pool;
    for (int tid = 0; tid < threads; ++tid)
      pool.emplace_back([&, tid] {
        for (size_t i = static_cast<size_t>(tid); i < nodes.size(); i += static_cast<size_t>(threads)) classify_point(i);
      });
  }

  for (PointResult& pr : results) {
    std::move(pr.samples.begin(), pr.samples.end(), std::back_inserter(report.samples));
    std::move(pr.violations.begin(), pr.violations.end(), std::back_inserter(report.violations));
    std::move(pr.inconclusive.begin(), pr.inconclusive.end(), std::back_inserter(report.inconclusive_points));
  }
  report.finalize();
  return report;
}

/// Richardson (Neville) extrapolation of -base_r - t phi'(t)/phi(t) to t = 0.
struct SmallTBound {
  Rational base_r;
  Real limit;                       // extrapolated lim_{t->0+} (-base_r - t phi'/phi)
  Real upper;                       // base_r + limit, the degree upper bound
  std::vector<Real> t_values;
  std::vector<Real> estimates;      // raw -base_r - t phi'/phi at each t
  std::vector<Real> extrapolants;   // extrapolated value using the first i+1 points
};

inline SmallTBound small_t_bound(const RemainderSpec& spec, const std::vector<Real>& t_sequence, const Rational& base_r,
                                 const PrecisionPolicy& policy = {}, const RemainderLimits& limits = {}) {
  policy.validate();
  if (t_sequence.size() < 2) throw InvalidArgument("small_t_bound needs at least two t values");
  for (size_t i = 0; i < t_sequence.size(); ++i) {
    if (!(t_sequence[i] > 0L)) throw InvalidArgument("small_t_bound: t values must be > 0");
    if (i > 0 && !(t_sequence[i] < t_sequence[i - 1]))
      throw InvalidArgument("small_t_bound: t values must be strictly decreasing");
  }
  const long bits = policy.working_bits;
  SmallTBound out;
  out.base_r = base_r;
  for (const Real& t : t_sequence) {
    std::vector<Real> d = remainder_derivatives(spec, 1, t, policy, limits);
    Real g = Real(-base_r, bits) - t.rounded(bits) * d[1] / d[0];
    out.t_values.push_back(t.rounded(bits));
    out.estimates.push_back(std::move(g));
  }
  // Neville's table evaluated at 0: P[i] holds the interpolant through
  // points (i - level .. i).
  const size_t n = out.estimates.size();
  std::vector<Real> p = out.estimates;
  out.extrapolants.push_back(p[0]);
  for (size_t level = 1; level < n; ++level) {
    for (size_t i = n - 1; i >= level; --i) {
      const Real& ti = out.t_values[i];
      const Real& tj = out.t_values[i - level];
      // value at 0 of the line through (tj, p[i-1]) and (ti, p[i])
      p[i] = (ti * p[i - 1] - tj * p[i]) / (ti - tj);
      if (i == level) break;
    }
    out.extrapolants.push_back(p[level]);
  }
  // Successive extrapolants must tighten; logarithmic singularities make
  // the t-power model fail and show up here.
  for (size_t i = 2; i < out.extrapolants.size(); ++i) {
    Real d_prev = abs(out.extrapolants[i - 1] - out.extrapolants[i - 2]);
    Real d_cur = abs(out.extrapolants[i] - out.extrapolants[i - 1]);
    if (d_cur > ldexp(d_prev, -2) && d_cur > Real(1e-6, 64))
      throw ExtrapolationUnstable("small_t_bound for " + spec.label() + ": extrapolants do not settle (" +
                                  d_prev.to_string(6) + " then " + d_cur.to_string(6) + ")");
  }
  out.limit = out.extrapolants.back();
  out.upper = Real(base_r, bits) + out.limit;
  return out;
}

enum class UpperMethod { small_t_criterion, scan_violation };

inline std::string to_string(UpperMethod m) {
  return m == UpperMethod::small_t_criterion ? "small_t_criterion" : "scan_violation";
}

/// Numerically evidenced interval for the CM degree of phi_{n,m}.
struct DegreeBracket {
  RemainderSpec spec;
  Rational lattice_step;
  std::optional<Rational> lower;  // empty if even r = 0 fails the scan
  Rational upper;
  UpperMethod upper_method = UpperMethod::small_t_criterion;
  std::optional<CmCheckReport> lower_evidence;
  std::optional<CmCheckReport> violation_evidence;
  Rational small_t_upper;             // exact pole-order bound
  std::optional<Real> small_t_numeric;  // Richardson estimate of the same limit
  std::string small_t_note;
  std::vector<Rational> inconclusive_r;
  int checks_run = 0;
};

struct BracketOptions {
  Rational lattice_step{1, 20};
  int max_order = 12;
  Grid grid{};
  std::vector<Real> small_t_sequence{};  // empty: 10^-1 .. 10^-4
  CheckOptions check{};
};

inline std::vector<Real> default_small_t_sequence(long bits = 128) {
  return {Real(Rational(1, 10), bits), Real(Rational(1, 100), bits), Real(Rational(1, 1000), bits),
          Real(Rational(1, 10000), bits)};
}

/// Lower end: largest lattice r <= the small-t bound whose scan passes,
/// found by bisection. Upper end: the smaller of the small-t bound and the
/// first lattice r with a scan violation. Inconclusive lattice points count
/// as neither.
inline DegreeBracket degree_bracket(const RemainderSpec& spec, const BracketOptions& options = {},
                                    const PrecisionPolicy& policy = {}) {
  policy.validate();
  spec.validate(options.check.limits);
  if (options.lattice_step <= 0 || options.lattice_step > 1)
    throw InvalidArgument("lattice step must lie in (0, 1]");

  DegreeBracket b;
  b.spec = spec;
  b.lattice_step = options.lattice_step;

  const SmallTAsymptotics asym = small_t_asymptotics(spec, options.check.limits);
  b.small_t_upper = asym.limit();
  try {
    auto seq = options.small_t_sequence.empty() ? default_small_t_sequence(policy.working_bits) : options.small_t_sequence;
    SmallTBound numeric = small_t_bound(spec, seq, 0, policy, options.check.limits);
    if (abs(numeric.limit - Real(b.small_t_upper, 64)) > Real(1e-2, 64))
      b.small_t_note = "extrapolated limit " + numeric.limit.to_string(8) + " differs from the exact pole order";
    b.small_t_numeric = std::move(numeric.limit);
  } catch (const ExtrapolationUnstable& e) {
    b.small_t_note = std::string(e.what()) + (asym.logarithmic ? " (logarithmic singularity at 0)" : "");
  }
  b.upper = b.small_t_upper;
  b.upper_method = UpperMethod::small_t_criterion;

  // Lattice indices 0..top, all at or below the small-t bound.
  Rational ratio = b.small_t_upper / options.lattice_step;
  Integer top_z;
  mpz_fdiv_q(top_z.get_mpz_t(), ratio.get_num_mpz_t(), ratio.get_den_mpz_t());
  const long top = top_z.get_si();
  auto r_at = [&](long i) { return Rational(options.lattice_step * i); };

  std::vector<std::optional<CmCheckReport>> cache(static_cast<size_t>(std::max(0L, top) + 1));
  auto check = [&](long i) -> const CmCheckReport& {
    auto& slot = cache[static_cast<size_t>(i)];
    if (!slot) {
      slot = cm_check(spec, r_at(i), options.max_order, options.grid, policy, options.check);
      ++b.checks_run;
      if (slot->verdict == Verdict::inconclusive) b.inconclusive_r.push_back(r_at(i));
    }
    return *slot;
  };
  auto passes = [&](long i) { return check(i).verdict == Verdict::pass; };

  if (top < 0) return b;
  long first_fail = -1;
  if (passes(top)) {
    b.lower = r_at(top);
    b.lower_evidence = check(top);
  } else if (!passes(0)) {
    first_fail = 0;
  } else {
    long lo = 0, hi = top;  // lo passes, hi does not
    while (hi - lo > 1) {
      long mid = lo + (hi - lo) / 2;
      if (passes(mid)) lo = mid;
      else hi = mid;
    }
    b.lower = r_at(lo);
    b.lower_evidence = check(lo);
    first_fail = hi;
  }
  if (first_fail >= 0) {
    for (long i = first_fail; i <= top; ++i) {
      if (check(i).verdict == Verdict::violation) {
        if (r_at(i) < b.upper) {
          b.upper = r_at(i);
          b.upper_method = UpperMethod::scan_violation;
        }
        b.violation_evidence = check(i);
        break;
      }
    }
  }
  std::sort(b.inconclusive_r.begin(), b.inconclusive_r.end());
  return b;
}

enum class ConjectureStatus { proven, partially_proven, open };

inline std::string to_string(ConjectureStatus s) {
  switch (s) {
    case ConjectureStatus::proven: return "proven";
    case ConjectureStatus::partially_proven: return "partially_proven";
    case ConjectureStatus::open: return "open";
  }
  return "?";
}

/// Conjectured CM degree of (-1)^m R_n^(m): m for n = 0, m + 1 for n = 1,
/// m + 2(n - 1) for n >= 2.
inline long conjectured_degree(int n, int m) {
  if (n == 0) return m;
  if (n == 1) return m + 1;
  return m + 2L * (n - 1);
}

/// Cells of the conjecture family with known degrees:
/// R_0, R_1, -R_0', -R_1', -R_n' (n >= 2), R_0'', R_1''. The (2, 2) cell is
/// only bracketed, 4 <= cmdeg <= 5.
inline ConjectureStatus conjecture_status(int n, int m) {
  if (n <= 1 && m <= 2) return ConjectureStatus::proven;
  if (m == 1) return ConjectureStatus::proven;
  if (n == 2 && m == 2) return ConjectureStatus::partially_proven;
  return ConjectureStatus::open;
}

struct ConjectureRow {
  int n = 0;
  int m = 0;
  long conjectured = 0;
  ConjectureStatus status = ConjectureStatus::open;
  std::optional<DegreeBracket> bracket;
  std::optional<std::string> error;

  bool contains_conjecture() const {
    if (!bracket || !bracket->lower) return false;
    return *bracket->lower <= conjectured && Rational(conjectured) <= bracket->upper;
  }
};

struct ConjectureTable {
  std::vector<ConjectureRow> rows;
};

struct IndexRange {
  int first = 0;
  int last = 0;
};

inline ConjectureTable conjecture_scan(IndexRange n_range, IndexRange m_range, const BracketOptions& options = {},
                                       const PrecisionPolicy& policy = {}) {
  policy.validate();
  if (n_range.first < 0 || m_range.first < 0 || n_range.last < n_range.first || m_range.last < m_range.first)
    throw InvalidArgument("conjecture_scan: invalid index range");
  if (n_range.last > options.check.limits.max_n || m_range.last > options.check.limits.max_m)
    throw InvalidSpec("conjecture_scan: range exceeds configured maxima");
  ConjectureTable table;
  for (int n = n_range.first; n <= n_range.last; ++n) {
    for (int m = m_range.first; m <= m_range.last; ++m) {
      ConjectureRow row;
      row.n = n;
      row.m = m;
      row.conjectured = conjectured_degree(n, m);
      row.status = conjecture_status(n, m);
      try {
        row.bracket = degree_bracket(RemainderSpec::of(n, m), options, policy);
      } catch (const Error& e) {
        row.error = e.kind() + ": " + e.what();
      }
      table.rows.push_back(std::move(row));
    }
  }
  return table;
}

}  // namespace cmdeg
