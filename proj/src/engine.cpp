#include "magnetic/engine.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <set>
#include <sstream>

#include "engine_detail.hpp"
#include "fast_tail.hpp"
#include "magnetic/arith.hpp"
#include "magnetic/bessel.hpp"
#include "magnetic/error.hpp"
#include "magnetic/expsums.hpp"
#include "magnetic/qforms.hpp"

namespace magnetic {

namespace {

constexpr double kIntegerTarget = 0.4;
constexpr double kBallTarget = 1e-6;
constexpr double kLog2e = 1.4426950408889634;
constexpr std::int64_t kMaxDiscriminant = 10000000;
constexpr std::int64_t kMaxCutoff = 2000000000;
constexpr long kMaxPrecision = 1L << 22;

std::string residue_list(const FormSpec& s) {
  std::ostringstream out;
  std::map<std::int64_t, long> sorted;
  for (const auto& [r, w] : s.residues) sorted[mod_floor(r, 2 * s.level)] += w;
  bool first = true;
  for (const auto& [r, w] : sorted) {
    out << (first ? "" : ",") << r << ":" << w;
    first = false;
  }
  return out.str();
}

}  // namespace

FormSpec FormSpec::level_one(int k, std::int64_t d, std::int64_t D) {
  FormSpec s;
  s.k = k;
  s.d = d;
  s.D = D;
  s.validate();
  return s;
}

FormSpec FormSpec::all_signed(int k, std::int64_t d, std::int64_t level) {
  FormSpec s;
  s.k = k;
  s.d = d;
  s.D = 1;
  s.level = level;
  if (level == 6) {
    for (const std::int64_t r : {1, 5, 7, 11}) s.residues.emplace_back(r, kronecker(12, r));
  } else if (level == 8) {
    std::int64_t r0 = 0;
    for (std::int64_t r = 1; r <= 8 && r0 == 0; ++r) {
      if (mod_floor(r * r - d, 32) == 0) r0 = r;
    }
    if (r0 == 0) throw InvalidArgument("all-signed at level 8: no r with r^2 = d mod 32");
    if (r0 == 8) throw InvalidArgument("all-signed at level 8: r and -r coincide, the combination vanishes");
    s.residues = {{r0, 1}, {16 - r0, -1}};
  } else {
    throw InvalidArgument("all-signed combinations exist for level 6 and level 8 only");
  }
  s.validate();
  return s;
}

void FormSpec::validate() const {
  if (k < 2 || k > 100) throw InvalidArgument("FormSpec: k must satisfy 2 <= k <= 100");
  if (!is_discriminant(d)) throw InvalidArgument("FormSpec: d must be a nonzero integer = 0 or 1 mod 4");
  if (!is_fundamental_discriminant(D)) throw InvalidArgument("FormSpec: D must be a fundamental discriminant");
  if (std::llabs(d) > kMaxDiscriminant || std::llabs(D) > kMaxDiscriminant ||
      std::llabs(d) * std::llabs(D) > kMaxDiscriminant) {
    throw InvalidArgument("FormSpec: |d D| must not exceed 10^7");
  }
  if (d * D >= 0) throw InvalidArgument("FormSpec: d D must be negative");
  if (level < 1) throw InvalidArgument("FormSpec: level must be positive");
  if (level == 1) {
    if (!residues.empty()) throw InvalidArgument("FormSpec: residue classes r require level > 1");
    return;
  }
  if (level > 1000) throw InvalidArgument("FormSpec: level must not exceed 1000");
  if (D != 1) throw InvalidArgument("FormSpec: level > 1 requires D = 1");
  if (residues.empty()) throw InvalidArgument("FormSpec: level > 1 requires at least one residue class r");
  std::set<std::int64_t> seen;
  for (const auto& [r, w] : residues) {
    if (w == 0) throw InvalidArgument("FormSpec: residue weights must be nonzero");
    if (mod_floor(r * r - d, 4 * level) != 0) {
      throw InvalidArgument("FormSpec: r^2 must be congruent to d D mod 4 level (r = " + std::to_string(r) + ")");
    }
    if (!seen.insert(mod_floor(r, 2 * level)).second) {
      throw InvalidArgument("FormSpec: residue classes must be distinct mod 2 level");
    }
  }
}

std::string FormSpec::key() const {
  std::ostringstream out;
  out << k << "," << d << "," << D << "," << level;
  if (level > 1) out << "," << residue_list(*this);
  return out.str();
}

std::string FormSpec::describe() const {
  std::ostringstream out;
  out << "f[k=" << k << ",d=" << d << ",D=" << D;
  if (level > 1) out << ",level=" << level << ",r=" << residue_list(*this);
  out << "]";
  return out.str();
}

long FormSpec::weight_of(std::int64_t b) const {
  if (level == 1) return 1;
  const std::int64_t m = 2 * level;
  const std::int64_t rb = mod_floor(b, m);
  long w = 0;
  for (const auto& [r, wr] : residues) {
    if (mod_floor(r, m) == rb) w += wr;
  }
  return w;
}

bool FormSpec::is_symmetric() const {
  if (level == 1) return true;
  for (const auto& [r, w] : residues) {
    if (weight_of(-r) != weight_of(r)) return false;
  }
  return true;
}

bool FormSpec::is_antisymmetric() const {
  if (level == 1) return false;
  for (const auto& [r, w] : residues) {
    if (weight_of(-r) != -weight_of(r)) return false;
  }
  return true;
}

namespace {

// Y with C_{k,d,D} = (k-1)!/(2 pi)^k * Y.
Ball y_factor(const FormSpec& s, mpfr_prec_t prec) {
  const bool plus = (s.k % 2 == 0 ? s.d : -s.d) > 0;
  const std::int64_t base = plus ? std::llabs(s.d) : std::llabs(s.D);
  Ball y = pow_rational(Ball::from_int(base, prec), mpq_class(2 * s.k - 1, 2));
  if (!plus) {
    const std::int64_t ell = split_discriminant(s.d).conductor;
    mpz_class e;
    mpz_ui_pow_ui(e.get_mpz_t(), static_cast<unsigned long>(ell), static_cast<unsigned long>(2 * s.k - 1));
    y = y.mul_mpz(e);
  }
  return y;
}

double log2_y_factor(const FormSpec& s) {
  const bool plus = (s.k % 2 == 0 ? s.d : -s.d) > 0;
  if (plus) return (s.k - 0.5) * std::log2(static_cast<double>(std::llabs(s.d)));
  const double ell = static_cast<double>(split_discriminant(s.d).conductor);
  return (2 * s.k - 1) * std::log2(ell) + (s.k - 0.5) * std::log2(static_cast<double>(std::llabs(s.D)));
}

}  // namespace

Ball normalizing_constant(const FormSpec& spec, mpfr_prec_t prec) {
  spec.validate();
  const mpfr_prec_t p = prec + 16;
  mpz_class fact = 1;
  for (int i = 2; i < spec.k; ++i) fact *= i;
  Ball two_pi_k = Ball::from_int(1, p);
  const Ball two_pi = Ball::pi(p).mul_si(2);
  for (int i = 0; i < spec.k; ++i) two_pi_k *= two_pi;
  return (Ball::from_mpz(fact, p) * y_factor(spec, p) / two_pi_k).with_precision(prec);
}

std::string CoefficientValue::value_string() const {
  if (!certified) {
    std::string out = ball.re.to_string(25);
    if (!ball.im.is_exact() || !ball.im.contains(mpz_class(0))) out += " + i*(" + ball.im.to_string(25) + ")";
    return out;
  }
  if (imag == 0) return real.get_str();
  const std::string im = imag.get_str() + "i";
  if (real == 0) return im;
  return real.get_str() + (imag > 0 ? "+" : "") + im;
}

namespace detail {

namespace {

struct SpecData {
  FormSpec spec;
  std::int64_t disc = 0;
  std::int64_t abs_disc = 0;
  std::int64_t conductor = 1;
  long max_weight = 1;
  std::int64_t tau_level = 1;
  bool need_re = true;
  bool need_im = false;
  double log2_y = 0;
  double nu = 1.5;

  explicit SpecData(const FormSpec& s) : spec(s) {
    spec.validate();
    disc = s.d * s.D;
    abs_disc = -disc;
    conductor = split_discriminant(disc).conductor;
    for (const auto& [r, w] : s.residues) max_weight = std::max(max_weight, std::labs(w));
    tau_level = divisor_count(s.level);
    if (s.level > 1 && !s.is_symmetric()) {
      need_re = !s.is_antisymmetric();
      need_im = true;
    }
    log2_y = log2_y_factor(s);
    nu = s.k - 0.5;
  }

  double x_of(std::int64_t n) const { return std::numbers::pi * static_cast<double>(n) * std::sqrt(static_cast<double>(abs_disc)); }

  // log2 |pref(n)|, pref = Y sqrt2 pi (-1)^k |disc|^(1/4 - k/2) n^(k - 1/2)
  double log2_pref(std::int64_t n) const {
    return log2_y + 0.5 + std::log2(std::numbers::pi) + (0.25 - spec.k / 2.0) * std::log2(static_cast<double>(abs_disc)) +
           nu * std::log2(static_cast<double>(n));
  }

  // natural log of the a-priori truncation bound for cutoff A.
  double log_tail_bound(std::int64_t n, std::int64_t A) const {
    const double x = x_of(n);
    const double k = spec.k;
    const double T = static_cast<double>(A) / static_cast<double>(spec.level);
    const double log_pg = log2_pref(n) * std::numbers::ln2 + nu * std::log(x / 2) - std::lgamma(nu + 1);
    return log_pg + std::log(static_cast<double>(max_weight * conductor * tau_level)) + x / static_cast<double>(A) -
           k * std::log(static_cast<double>(spec.level)) + std::log(k) + (1 - k) * std::log(T) +
           std::log((std::log(T) + 1) / (k - 1) + 1 / ((k - 1) * (k - 1)));
  }
};

struct Plan {
  std::int64_t n = 0;
  double target = 0;
  double x = 0;
  long prec = 0;
  std::int64_t head = 0;
  std::int64_t cutoff = 0;
};

Plan make_plan(const SpecData& sd, std::int64_t n, double target, const EngineOptions& opt, int round) {
  Plan p;
  p.n = n;
  p.target = target;
  p.x = sd.x_of(n);
  const std::int64_t N = sd.spec.level;
  const auto half = static_cast<std::int64_t>(std::ceil(p.x / 2));
  p.head = std::max<std::int64_t>(N, ((half + N - 1) / N) * N);

  long prec;
  if (opt.precision_bits) {
    prec = *opt.precision_bits;
  } else {
    prec = static_cast<long>(std::ceil(sd.log2_pref(n) + p.x * kLog2e + std::log2(1 / target) +
                                       2 * std::log2(static_cast<double>(p.head) + 2) + 80));
  }
  prec = std::max<long>(prec, 64) * std::max<long>(1, opt.precision_multiplier);
  p.prec = std::min(kMaxPrecision, prec << round);

  const double log_budget = std::log(0.75 * target);
  std::int64_t lo = std::max<std::int64_t>(64, p.head + N);
  lo = ((lo + N - 1) / N) * N;
  std::int64_t hi = lo;
  while (sd.log_tail_bound(n, hi) > log_budget) {
    if (hi > kMaxCutoff) throw CertificationFailure(sd.spec.describe() + ": truncation cutoff for n = " +
                                                    std::to_string(n) + " exceeds 2*10^9");
    lo = hi;
    hi *= 2;
  }
  if (hi != lo) {
    // smallest multiple of N in (lo, hi] meeting the budget
    std::int64_t tl = lo / N, th = hi / N;
    while (th - tl > 1) {
      const std::int64_t mid = tl + (th - tl) / 2;
      if (sd.log_tail_bound(n, mid * N) > log_budget) {
        tl = mid;
      } else {
        th = mid;
      }
    }
    hi = th * N;
  }
  const std::int64_t scale = std::max<long>(1, opt.cutoff_multiplier) << round;
  if (hi > kMaxCutoff / scale) {
    throw CertificationFailure(sd.spec.describe() + ": truncation cutoff for n = " + std::to_string(n) +
                               " exceeds 2*10^9");
  }
  p.cutoff = hi * scale;
  return p;
}

using RootList = std::vector<std::pair<std::int64_t, long>>;  // (b, weight * chi)

class RootCache {
 public:
  explicit RootCache(const SpecData& sd) : sd_(sd) {}
  const RootList& get(std::int64_t a) {
    auto it = cache_.find(a);
    if (it != cache_.end()) return it->second;
    RootList out;
    for (const auto b : square_roots_mod_4a(sd_.disc, a)) {
      const long w = sd_.spec.weight_of(b);
      if (w == 0) continue;
      const int chi = genus_character(QuadraticForm{a, b, (b * b - sd_.disc) / (4 * a)}, sd_.spec.D);
      if (chi != 0) out.emplace_back(b, w * chi);
    }
    return cache_.emplace(a, std::move(out)).first->second;
  }

 private:
  const SpecData& sd_;
  std::map<std::int64_t, RootList> cache_;
};

// sum over a in (lo, hi], level | a, of a^-1/2 S_a(n) I_nu(x/a) in ball arithmetic.
ComplexBall ball_range(const SpecData& sd, RootCache& roots, std::int64_t n, const Ball& x, std::int64_t lo,
                       std::int64_t hi, mpfr_prec_t prec) {
  const std::int64_t N = sd.spec.level;
  ComplexBall sum(Ball::from_int(0, prec), Ball::from_int(0, prec));
  auto& counter = N > 1 ? salie_coverage().level_n_ball : salie_coverage().level_one_ball;
  for (std::int64_t a = ((lo / N) + 1) * N; a <= hi; a += N) {
    const RootList& list = roots.get(a);
    if (list.empty()) continue;
    ++counter;
    ComplexBall s(Ball::from_int(0, prec), Ball::from_int(0, prec));
    const std::int64_t mod = 2 * a;
    for (const auto& [b, c] : list) s += unit_root(mod_floor(n, mod) * b % mod, mod, prec).mul_si(c);
    const Ball factor = bessel_i_half(sd.spec.k - 1, x.div_si(a)) / sqrt(Ball::from_int(a, prec));
    sum += s.scaled(factor);
  }
  return sum;
}

struct Evaluated {
  ComplexBall value;
  Certificate cert;
};

std::vector<Evaluated> evaluate(const SpecData& sd, const std::vector<Plan>& plans, const EngineOptions& opt) {
  const int k = sd.spec.k;
  const std::int64_t N = sd.spec.level;
  RootCache roots(sd);
  std::vector<Evaluated> out(plans.size());

  // far ranges in double precision, one shared sweep
  std::vector<detail::TailRange> fast;
  std::vector<std::size_t> fast_owner;
  for (std::size_t i = 0; i < plans.size(); ++i) {
    const auto& p = plans[i];
    if ((p.cutoff - p.head) / N > opt.fast_tail_threshold) {
      detail::TailRange r;
      r.n = p.n;
      r.x = p.x;
      r.lo = p.head;
      r.hi = p.cutoff;
      fast.push_back(r);
      fast_owner.push_back(i);
    }
  }
  if (!fast.empty()) {
    detail::TailForm form;
    form.disc = sd.disc;
    form.D = sd.spec.D;
    form.level = N;
    form.k = k;
    form.need_re = sd.need_re;
    form.need_im = sd.need_im;
    const FormSpec& spec = sd.spec;
    form.weight = [&spec](std::int64_t b) { return spec.weight_of(b); };
    detail::run_fast_tail(form, fast);
  }

  for (std::size_t i = 0; i < plans.size(); ++i) {
    const auto& p = plans[i];
    const mpfr_prec_t prec = p.prec;
    const Ball x = Ball::pi(prec).mul_si(p.n) * sqrt(Ball::from_int(sd.abs_disc, prec));
    // pref = Y sqrt2 pi (-1)^k |disc|^(1/4-k/2) n^(k-1/2)
    Ball pref = y_factor(sd.spec, prec) * sqrt(Ball::from_int(2, prec)) * Ball::pi(prec) *
                pow_rational(Ball::from_int(sd.abs_disc, prec), mpq_class(1 - 2 * k, 4)) *
                pow_rational(Ball::from_int(p.n, prec), mpq_class(2 * k - 1, 2));
    if (k % 2) pref = -pref;
    const Ball G = pow_rational(x.div_si(2), mpq_class(2 * k - 1, 2)) / gamma_half_integer_plus_one(k - 1, prec);

    ComplexBall sum = ball_range(sd, roots, p.n, x, 0, p.head, prec);
    auto it = std::find(fast_owner.begin(), fast_owner.end(), i);
    double kernel_error = 0;
    if (it == fast_owner.end()) {
      // short far range: ball arithmetic at a working precision sized to the terms
      const long tail_prec = std::max<long>(
          96, static_cast<long>(std::ceil(sd.log2_pref(p.n) + std::log2(1 / p.target) +
                                          std::log2(static_cast<double>(p.cutoff) + 2) + 64)));
      const Ball xt = x.with_precision(tail_prec);
      sum += ball_range(sd, roots, p.n, xt, p.head, p.cutoff, tail_prec);
    } else {
      const auto& r = fast[static_cast<std::size_t>(it - fast_owner.begin())];
      kernel_error = r.error;
      ComplexBall t(Ball::from_double(r.re, r.error, prec), Ball::from_double(r.im, r.error, prec));
      sum += t.scaled(G);
    }
    ComplexBall value = sum.scaled(pref);
    if (!sd.need_im) value.im = Ball::from_int(0, prec);
    if (!sd.need_re) value.re = Ball::from_int(0, prec);

    // a-priori bound on the omitted a > A
    const mpfr_prec_t bp = 64;
    const Ball T = Ball::from_int(p.cutoff / N, bp);
    const Ball logT = log(T);
    const Ball km1 = Ball::from_int(k - 1, bp);
    Ball bound = abs(pref.with_precision(bp)) * G.with_precision(bp) *
                 Ball::from_int(sd.max_weight * sd.conductor * sd.tau_level, bp) *
                 exp(x.with_precision(bp).div_si(p.cutoff)) * Ball::from_int(k, bp) *
                 pow_rational(T, mpq_class(1 - k)) *
                 ((logT + Ball::from_int(1, bp)) / km1 + Ball::from_int(1, bp) / (km1 * km1));
    for (int j = 0; j < k; ++j) bound = bound.div_si(N);
    const Mpfr bound_up = bound.upper();
    if (sd.need_re) value.re.add_error(bound_up);
    if (sd.need_im) value.im.add_error(bound_up);

    auto& e = out[i];
    e.value = value;
    e.cert.cutoff = p.cutoff;
    e.cert.ball_limit = it == fast_owner.end() ? p.cutoff : p.head;
    e.cert.precision_bits = p.prec;
    e.cert.truncation_bound = mpfr_get_d(bound_up.get(), MPFR_RNDU);
    e.cert.kernel_error = kernel_error;
    e.cert.radius = std::max(value.re.rad_upper_double(), value.im.rad_upper_double());
  }
  return out;
}

struct MemoEntry {
  ComplexBall value;
  Certificate cert;
};

std::mutex& memo_mutex() {
  static std::mutex m;
  return m;
}

std::map<std::string, MemoEntry>& memo() {
  static std::map<std::string, MemoEntry> m;
  return m;
}

std::string memo_key(const FormSpec& spec, std::int64_t n, const EngineOptions& opt) {
  std::ostringstream out;
  out << spec.key() << "|" << n << "|" << (opt.precision_bits ? *opt.precision_bits : 0) << "|"
      << opt.precision_multiplier << "|" << opt.cutoff_multiplier;
  return out.str();
}

}  // namespace

std::vector<CoefficientValue> compute_values(const FormSpec& spec, const std::vector<std::int64_t>& ns,
                                             const std::vector<double>& targets, const EngineOptions& options) {
  if (ns.size() != targets.size()) throw InvalidArgument("compute_values: one target per n required");
  for (const auto n : ns) {
    if (n < 1) throw InvalidArgument("coefficient index n must be positive");
  }
  for (const auto t : targets) {
    if (!(t > 0)) throw InvalidArgument("target radius must be positive");
  }
  const SpecData sd(spec);
  std::vector<CoefficientValue> out(ns.size());
  std::vector<std::size_t> pending;
  for (std::size_t i = 0; i < ns.size(); ++i) {
    out[i].n = ns[i];
    if (options.use_memo) {
      std::lock_guard<std::mutex> lock(memo_mutex());
      auto it = memo().find(memo_key(spec, ns[i], options));
      if (it != memo().end() && it->second.cert.radius <= targets[i]) {
        out[i].ball = it->second.value;
        out[i].certificate = it->second.cert;
        continue;
      }
    }
    pending.push_back(i);
  }
  const int rounds = std::max(1, options.max_rounds);
  for (int round = 0; round < rounds && !pending.empty(); ++round) {
    std::vector<Plan> plans;
    for (const auto i : pending) plans.push_back(make_plan(sd, ns[i], targets[i], options, round));
    const auto results = evaluate(sd, plans, options);
    std::vector<std::size_t> next;
    for (std::size_t j = 0; j < pending.size(); ++j) {
      const auto i = pending[j];
      out[i].ball = results[j].value;
      out[i].certificate = results[j].cert;
      out[i].certificate.rounds = round + 1;
      if (results[j].cert.radius <= targets[i]) {
        if (options.use_memo) {
          std::lock_guard<std::mutex> lock(memo_mutex());
          auto& slot = memo()[memo_key(spec, ns[i], options)];
          if (slot.cert.cutoff == 0 || slot.cert.radius > results[j].cert.radius) {
            slot = MemoEntry{results[j].value, out[i].certificate};
          }
        }
      } else {
        next.push_back(i);
      }
    }
    pending.swap(next);
  }
  return out;
}

bool certify_integer(CoefficientValue& value, const EngineOptions& options) {
  const auto re = value.ball.re.unique_integer();
  const auto im = value.ball.im.unique_integer();
  if (!re || !im) {
    value.certified = false;
    return false;
  }
  value.real = *re + options.test_perturbation;
  value.imag = *im;
  value.certified = true;
  return true;
}

ComplexBall scale_mpz(const ComplexBall& z, const mpz_class& w) { return {z.re.mul_mpz(w), z.im.mul_mpz(w)}; }

}  // namespace detail

std::vector<CoefficientValue> coefficient_balls(const FormSpec& spec, std::int64_t n_max,
                                                const std::vector<double>& target_radius,
                                                const EngineOptions& options) {
  spec.validate();
  if (n_max <= 0) return {};
  if (static_cast<std::int64_t>(target_radius.size()) < n_max) {
    throw InvalidArgument("coefficient_balls: one target radius per n required");
  }
  std::vector<std::int64_t> ns;
  for (std::int64_t n = 1; n <= n_max; ++n) ns.push_back(n);
  return detail::compute_values(spec, ns, std::vector<double>(target_radius.begin(), target_radius.begin() + n_max),
                                options);
}

namespace {

std::vector<CoefficientValue> finish(const FormSpec& spec, std::vector<CoefficientValue> values,
                                     const EngineOptions& options, bool integral) {
  if (!integral) return values;
  for (auto& v : values) {
    if (!detail::certify_integer(v, options)) {
      std::ostringstream msg;
      msg << spec.describe() << ": coefficient n = " << v.n << " not certified after "
          << v.certificate.rounds << " rounds (radius " << v.certificate.radius << ")";
      throw CertificationFailure(msg.str());
    }
  }
  return values;
}

}  // namespace

std::vector<CoefficientValue> coefficient_block(const FormSpec& spec, std::int64_t n_max,
                                                const EngineOptions& options, bool assert_integral) {
  spec.validate();
  if (n_max <= 0) return {};
  const bool integral = assert_integral || cusp_form_dimension(2 * spec.k) == 0;
  const std::vector<double> targets(static_cast<std::size_t>(n_max), integral ? kIntegerTarget : kBallTarget);
  return finish(spec, coefficient_balls(spec, n_max, targets, options), options, integral);
}

CoefficientValue coefficient(const FormSpec& spec, std::int64_t n, const EngineOptions& options) {
  spec.validate();
  if (n < 1) throw InvalidArgument("coefficient index n must be positive");
  const bool integral = cusp_form_dimension(2 * spec.k) == 0;
  auto values = detail::compute_values(spec, {n}, {integral ? kIntegerTarget : kBallTarget}, options);
  return finish(spec, std::move(values), options, integral).front();
}

void clear_engine_memo() {
  std::lock_guard<std::mutex> lock(detail::memo_mutex());
  detail::memo().clear();
}

}  // namespace magnetic
