#include "omegalab/fixedpoint.hpp"

#include <algorithm>
#include <limits>

namespace omegalab {

namespace {

mpz_class pow2z(std::size_t k) {
  mpz_class r;
  mpz_setbit(r.get_mpz_t(), k);
  return r;
}

mpq_class pow2q(std::int64_t k) {
  mpq_class r(1);
  if (k >= 0) {
    mpq_mul_2exp(r.get_mpq_t(), r.get_mpq_t(), k);
  } else {
    mpq_div_2exp(r.get_mpq_t(), r.get_mpq_t(), -k);
  }
  return r;
}

mpz_class floor_q(const mpq_class& q) {
  mpz_class r;
  mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

DyadicInterval partial_sum(const CompressibleStream& stream, std::size_t k, const Temperature& x,
                           std::size_t prec, bool weighted) {
  if (k > stream.size()) throw std::out_of_range("partial sum index beyond the stream");
  DyadicInterval total;
  for (std::size_t i = 0; i < k; ++i) {
    const std::size_t len = stream.entries[i].value.size();
    DyadicInterval term = temperature_term(len, x).enclosure(prec);
    total += weighted ? scale(term, mpz_class(len)) : term;
  }
  return total;
}

}  // namespace

DyadicInterval z_k(const CompressibleStream& stream, std::size_t k, const Temperature& x,
                   std::size_t prec) {
  return partial_sum(stream, k, x, prec, false);
}

DyadicInterval w_k(const CompressibleStream& stream, std::size_t k, const Temperature& x,
                   std::size_t prec) {
  return partial_sum(stream, k, x, prec, true);
}

BitString leading_bits(const mpq_class& x, std::size_t n) {
  if (x < 0 || x >= 1) throw std::domain_error("leading_bits: value outside [0, 1)");
  return BitString::from_numeral(floor_q(x * mpq_class(pow2z(n))), n);
}

// ---------------------------------------------------------------------------

std::size_t derive_n0(const Temperature& T, const Temperature& t) {
  if (!(T < t)) throw std::invalid_argument("derive_n0: need T < t");
  // (floor(T 2^n) + 1) / 2^n is nonincreasing in n, so the first n that
  // satisfies the bound satisfies it for all larger n too.
  for (std::size_t n = 1;; ++n) {
    const mpq_class upper = mpq_class(leading_bits(T, n).numeral() + 1) / mpq_class(pow2z(n));
    if (upper < t.value()) return n;
  }
}

std::size_t derive_n1(std::size_t c) {
  // (m - c) 2^-m <= m 2^-m <= 1/2 for every m >= 1; the scan is a formality
  // over the range where m - c is positive.
  std::size_t last_violation = 0;
  for (std::size_t m = 1; m <= c + 64; ++m) {
    if (m > c && mpz_class(m - c) > pow2z(m)) last_violation = m;
  }
  return last_violation + 1;
}

GapConstants derive_constants(const Temperature& T, const Temperature& t, const Enumeration& run,
                              std::size_t prec) {
  if (!(T < t) || !t.below_one()) throw std::invalid_argument("derive_constants: need T < t < 1");
  const CompressibleStream stream = compressible_stream(run, Temperature(1));
  if (stream.entries.empty()) throw std::domain_error("derive_constants: no compressible string yet");

  GapConstants k;
  k.T = T;
  k.t = t;
  k.w_t = w_k(stream, stream.size(), t, prec);
  const RationalInterval ln2 = ln2_enclosure(prec);

  const mpq_class upper_slope = k.w_t.hi.to_rational() * ln2.hi / (T.value() * T.value());
  while (upper_slope > mpq_class(pow2z(k.c_upper))) ++k.c_upper;

  k.s1_length = stream.entries.front().value.size();
  const DyadicInterval s1_term = temperature_term(k.s1_length, T).enclosure(prec);
  const mpq_class lower_slope = ln2.lo * mpq_class(k.s1_length) * s1_term.lo.to_rational();
  k.c_lower = 1;
  while (lower_slope < pow2q(-static_cast<std::int64_t>(k.c_lower))) ++k.c_lower;

  k.n0 = derive_n0(T, t);
  k.n1 = derive_n1(k.c_upper);
  k.n2 = std::max({k.n0, k.n1, k.c_upper + 1});
  return k;
}

bool check_upper_gap(const CompressibleStream& stream, std::size_t k, const GapConstants& constants,
                     const Temperature& x, std::size_t prec) {
  if (!(constants.T < x && x < constants.t)) throw std::invalid_argument("check_upper_gap: need T < x < t");
  const Dyadic diff_hi = z_k(stream, k, x, prec).hi - z_k(stream, k, constants.T, prec).lo;
  return diff_hi < pow2q(constants.c_upper) * (x.value() - constants.T.value());
}

std::optional<std::size_t> first_upper_gap_failure(const CompressibleStream& stream,
                                                   const GapConstants& constants,
                                                   const Temperature& x, std::size_t prec) {
  if (!(constants.T < x && x < constants.t)) throw std::invalid_argument("check_upper_gap: need T < x < t");
  const mpq_class bound = pow2q(constants.c_upper) * (x.value() - constants.T.value());
  if (!(Dyadic(0) < bound)) return 0;
  const auto at_x = temperature_prefix_sums(stream, x, prec);
  const auto at_T = temperature_prefix_sums(stream, constants.T, prec);
  for (std::size_t k = 1; k <= stream.size(); ++k) {
    if (!(at_x[k - 1].hi - at_T[k - 1].lo < bound)) return k;
  }
  return std::nullopt;
}

bool check_lower_gap(const CompressibleStream& stream, std::size_t k, const GapConstants& constants,
                     const Temperature& t, std::size_t prec) {
  if (k == 0) throw std::invalid_argument("check_lower_gap: k must be >= 1");
  if (!(constants.T < t) || !t.below_one()) throw std::invalid_argument("check_lower_gap: need T < t < 1");
  const Dyadic diff_lo = z_k(stream, k, t, prec).lo - z_k(stream, k, constants.T, prec).hi;
  return pow2q(-static_cast<std::int64_t>(constants.c_lower)) * (t.value() - constants.T.value()) < diff_lo;
}

std::optional<std::size_t> first_lower_gap_failure(const CompressibleStream& stream,
                                                   const GapConstants& constants,
                                                   const Temperature& t, std::size_t prec) {
  if (!(constants.T < t) || !t.below_one()) throw std::invalid_argument("check_lower_gap: need T < t < 1");
  const mpq_class bound =
      pow2q(-static_cast<std::int64_t>(constants.c_lower)) * (t.value() - constants.T.value());
  const auto at_t = temperature_prefix_sums(stream, t, prec);
  const auto at_T = temperature_prefix_sums(stream, constants.T, prec);
  for (std::size_t k = 1; k <= stream.size(); ++k) {
    if (!(bound < at_t[k - 1].lo - at_T[k - 1].hi)) return k;
  }
  return std::nullopt;
}

std::pair<bool, bool> check_floor_sandwich(const Temperature& T, std::size_t n, std::size_t c) {
  const mpq_class truncated = mpq_class(leading_bits(T, n).numeral()) / mpq_class(pow2z(n));
  const mpq_class span = mpq_class(static_cast<long>(n) - static_cast<long>(c));
  const mpq_class floored(floor_q(truncated * span));
  const mpq_class exact = T.value() * span;
  return {floored <= exact, exact - 2 <= floored};
}

// ---------------------------------------------------------------------------

mpz_class candidate_count(std::size_t c) { return pow2z(c + 1) + 3; }

mpz_class candidate_offset(const mpz_class& index) {
  if (index == 0) return 0;
  if (mpz_odd_p(index.get_mpz_t())) return (index + 1) / 2;
  return -(index / 2);
}

std::optional<BitString> candidate_at(const BitString& t_n, std::size_t c, const mpz_class& index) {
  if (index < 0 || index >= candidate_count(c)) throw std::out_of_range("candidate_at: bad slot");
  const mpz_class value = t_n.numeral() + candidate_offset(index);
  if (value < 0 || value >= pow2z(t_n.size())) return std::nullopt;
  return BitString::from_numeral(value, t_n.size());
}

std::vector<Candidate> candidate_set(const BitString& t_n, std::size_t c) {
  if (c > 24) throw std::length_error("candidate_set: too many candidates to list; use candidate_at");
  std::vector<Candidate> out;
  const mpz_class count = candidate_count(c);
  out.reserve(count.get_ui());
  for (mpz_class i = 0; i < count; ++i) out.push_back({candidate_offset(i), candidate_at(t_n, c, i)});
  return out;
}

std::optional<BitString> selector_for(const BitString& t_n, const BitString& target, std::size_t c) {
  if (t_n.size() != target.size()) throw std::invalid_argument("selector_for: length mismatch");
  const mpz_class offset = target.numeral() - t_n.numeral();
  if (abs(offset) > pow2z(c) + 1) return std::nullopt;
  const mpz_class index = offset == 0 ? mpz_class(0) : offset > 0 ? mpz_class(2 * offset - 1) : mpz_class(-2 * offset);
  return BitString::from_numeral(index, c + 2);
}

// ---------------------------------------------------------------------------

PhiContext make_phi_context(const Enumeration& run, const Temperature& T, std::size_t c,
                            std::size_t table_len, std::size_t prec) {
  if (!T.below_one()) throw std::invalid_argument("make_phi_context: need T < 1");
  PhiContext ctx;
  ctx.stream = compressible_stream(run, Temperature(1));
  ctx.c = c;
  ctx.prec = prec;
  const mpq_class gap = 1 - T.value();
  for (std::size_t l = 1; l <= table_len; ++l) {
    ctx.f.emplace_back(T.value() + gap / mpq_class(pow2z(l)));
  }
  const Dyadic cs_lo = cs_T_lower(run, T, std::max(prec, table_len + 8)).lo;
  for (std::size_t m = 1; m <= table_len; ++m) {
    const auto bits = static_cast<std::int64_t>(m);
    ctx.g.push_back(Dyadic::scaled(cs_lo.floor_scaled(bits), bits));
  }
  return ctx;
}

PhiTrace phi_trace(std::size_t n, const BitString& cs_prefix, const BitString& selector,
                   const PhiContext& ctx) {
  if (n == 0) throw ReconstructFailed("phi: n must be positive");
  if (selector.size() != ctx.c + 2) throw ReconstructFailed("phi: selector must have c+2 bits");
  PhiTrace trace;

  // k0: first partial sum of 2^-|s_i| strictly above 0.cs_prefix.
  const Dyadic prefix = Dyadic::scaled(cs_prefix.numeral(), static_cast<std::int64_t>(cs_prefix.size()));
  Dyadic running;
  for (std::size_t i = 0; i < ctx.stream.size(); ++i) {
    running += Dyadic::pow2(static_cast<std::int64_t>(ctx.stream.entries[i].value.size()));
    if (running > prefix) {
      trace.k0 = i + 1;
      break;
    }
  }
  if (trace.k0 == 0) throw ReconstructFailed("phi: no partial sum exceeds the CS prefix");

  // (l0, m0): dovetail over l + m, looking for Z_k0(f(l)) < g(m).
  const std::size_t F = ctx.f.size();
  const std::size_t G = ctx.g.size();
  std::vector<std::optional<Dyadic>> z_upper(F);
  bool found = false;
  for (std::size_t d = 0; d + 1 < F + G && !found; ++d) {
    for (std::size_t l = d >= G ? d - G + 1 : 0; l <= std::min(d, F - 1); ++l) {
      const std::size_t m = d - l;
      if (!z_upper[l]) z_upper[l] = z_k(ctx.stream, trace.k0, ctx.f[l], ctx.prec).hi;
      if (*z_upper[l] < ctx.g[m]) {
        trace.l0 = l + 1;
        trace.m0 = m + 1;
        found = true;
        break;
      }
    }
  }
  if (!found) throw ReconstructFailed("phi: no (l, m) with Z_k0(f(l)) < g(m) in the tables");

  trace.t_n = leading_bits(ctx.f[trace.l0 - 1].value(), n);
  const mpz_class index = selector.numeral();
  if (index >= candidate_count(ctx.c)) throw ReconstructFailed("phi: selector beyond the candidate list");
  auto candidate = candidate_at(trace.t_n, ctx.c, index);
  if (!candidate) throw ReconstructFailed("phi: selected candidate is out of the n-bit range");
  trace.result = std::move(*candidate);
  return trace;
}

bool tail_certificate(const CompressibleStream& stream, const Temperature& T, std::size_t k0,
                      std::size_t n, std::size_t prec) {
  const Dyadic tail_hi = z_k(stream, stream.size(), T, prec).hi - z_k(stream, k0, T, prec).lo;
  return tail_hi < Dyadic::pow2(static_cast<std::int64_t>(n));
}

// ---------------------------------------------------------------------------

DMachine::DMachine(Machine u, PhiContext context) : u_(std::move(u)), context_(std::move(context)) {}

MachineOutcome DMachine::decode(const BitString& input, std::uint64_t step_budget) const {
  MachineOutcome out;
  std::size_t pos = 0;

  // Delimit one U-program at pos; U's own exact-consumption rule decides
  // where it ends.
  auto next_program = [&](BitString& value) -> bool {
    const std::uint64_t left = step_budget - out.steps;
    MachineOutcome sub = u_.run(input.substr(pos), left);
    out.steps += sub.steps;
    switch (sub.kind) {
      case OutcomeKind::HaltedEarly:
        pos += sub.consumed;
        value = std::move(sub.output);
        return true;
      case OutcomeKind::Halt:  // nothing left for the remaining fields
        out.kind = OutcomeKind::NeedsMoreInput;
        out.consumed = input.size();
        return false;
      default:
        out.kind = sub.kind;
        out.consumed = pos + sub.consumed;
        return false;
    }
  };

  BitString n_code, length_code;
  if (!next_program(n_code) || !next_program(length_code)) return out;

  const mpz_class n = n_code.to_natural();
  const mpz_class v_len = length_code.to_natural();
  const std::size_t available = input.size() - pos;
  const std::uint64_t left = step_budget - out.steps;
  const mpz_class needed = v_len + context_.c + 2;

  if (needed > available) {
    // Reading runs off the end of the input unless the budget runs out first.
    const bool budget_first = mpz_class(available) + 1 > mpz_class(static_cast<unsigned long>(left));
    out.kind = budget_first ? OutcomeKind::OutOfBudget : OutcomeKind::NeedsMoreInput;
    out.steps += budget_first ? left : available + 1;
    out.consumed = budget_first ? pos + left : input.size();
    return out;
  }
  const std::size_t need = needed.get_ui();
  if (need > left) {
    out.kind = OutcomeKind::OutOfBudget;
    out.steps = step_budget;
    out.consumed = pos + left;
    return out;
  }
  out.steps += need;
  const BitString v = input.substr(pos, v_len.get_ui());
  const BitString s = input.substr(pos + v_len.get_ui(), context_.c + 2);
  pos += need;
  out.consumed = pos;

  // Phi is partial: where it is undefined D searches forever.
  if (n == 0 || !n.fits_ulong_p() || n > mpz_class(step_budget - out.steps)) {
    out.kind = OutcomeKind::OutOfBudget;
    out.steps = step_budget;
    return out;
  }
  try {
    out.output = phi_reconstruct(n.get_ui(), v, s, context_);
  } catch (const ReconstructFailed&) {
    out.kind = OutcomeKind::OutOfBudget;
    out.steps = step_budget;
    return out;
  }
  out.steps += n.get_ui();
  out.kind = pos == input.size() ? OutcomeKind::Halt : OutcomeKind::HaltedEarly;
  return out;
}

}  // namespace omegalab
