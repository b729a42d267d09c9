#include "omegalab/artifacts.hpp"

#include <istream>
#include <ostream>
#include <sstream>

#include "omegalab/measures.hpp"

namespace omegalab {

namespace {

Json provenance_fields(const Enumeration& run, const Provenance& provenance) {
  return Json{{"machine", run.machine_digest()},
              {"registry", provenance.registry},
              {"budget", budget_json(run.budget())},
              {"exhaustive", run.exhaustive()},
              {"command", provenance.command}};
}

template <typename T>
T field(const Json& j, const char* key) {
  if (!j.contains(key)) throw MalformedLog(std::string("log: missing field \"") + key + "\"");
  try {
    return j.at(key).get<T>();
  } catch (const Json::exception& e) {
    throw MalformedLog(std::string("log: bad field \"") + key + "\": " + e.what());
  }
}

BitString bits_field(const Json& j, const char* key) {
  try {
    return BitString(field<std::string>(j, key));
  } catch (const std::invalid_argument&) {
    throw MalformedLog(std::string("log: field \"") + key + "\" is not a bit string");
  }
}

}  // namespace

Json budget_json(const Budget& budget) {
  return Json{{"max_len", budget.max_len}, {"rounds", budget.rounds}};
}

void write_log(std::ostream& out, const Enumeration& run, const Provenance& provenance) {
  Json header{{"kind", "header"},
              {"machine_identity", run.machine_identity()},
              {"machine", run.machine_digest()},
              {"registry", provenance.registry},
              {"budget", budget_json(run.budget())},
              {"exhaustive", run.exhaustive()},
              {"out_of_budget", run.out_of_budget()},
              {"programs_run", run.programs_run()},
              {"events", run.events().size()},
              {"command", provenance.command}};
  out << header.dump() << '\n';
  for (const auto& e : run.events()) {
    Json line{{"seq", e.seq},
              {"round", e.round},
              {"program", e.program.str()},
              {"output", e.output.str()},
              {"steps", e.steps}};
    out << line.dump() << '\n';
  }
}

std::string log_text(const Enumeration& run, const Provenance& provenance) {
  std::ostringstream out;
  write_log(out, run, provenance);
  return out.str();
}

LoadedLog read_log(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw MalformedLog("log: empty");
  Json header;
  try {
    header = Json::parse(line);
  } catch (const Json::parse_error& e) {
    throw MalformedLog(std::string("log: header is not JSON: ") + e.what());
  }
  if (!header.is_object() || header.value("kind", "") != "header") {
    throw MalformedLog("log: first line is not a header");
  }
  const Json budget_j = field<Json>(header, "budget");
  const Budget budget{field<std::size_t>(budget_j, "max_len"), field<std::size_t>(budget_j, "rounds")};

  std::vector<HaltEvent> events;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    Json j;
    try {
      j = Json::parse(line);
    } catch (const Json::parse_error&) {
      throw MalformedLog("log: line " + std::to_string(line_no) + " is not JSON");
    }
    HaltEvent e;
    e.seq = field<std::size_t>(j, "seq");
    e.round = field<std::size_t>(j, "round");
    e.program = bits_field(j, "program");
    e.output = bits_field(j, "output");
    e.steps = field<std::uint64_t>(j, "steps");
    events.push_back(std::move(e));
  }
  if (events.size() != field<std::size_t>(header, "events")) {
    throw MalformedLog("log: event count does not match header (truncated?)");
  }

  Provenance provenance{field<std::string>(header, "registry"), field<std::string>(header, "command")};
  try {
    Enumeration run(field<std::string>(header, "machine_identity"), field<std::string>(header, "machine"),
                    budget, std::move(events), field<std::size_t>(header, "out_of_budget"),
                    field<std::size_t>(header, "programs_run"));
    return {std::move(run), std::move(provenance)};
  } catch (const std::invalid_argument& e) {
    throw MalformedLog(std::string("log: ") + e.what());
  }
}

LoadedLog read_log(std::istream& in, const Machine& machine) {
  LoadedLog loaded = read_log(in);
  if (loaded.run.machine_digest() != machine.digest() ||
      loaded.run.machine_identity() != machine.identity()) {
    throw MalformedLog("log: machine digest " + loaded.run.machine_digest() +
                       " does not match this machine (" + machine.digest() + ")");
  }
  return loaded;
}

Json measure_report(const std::string& quantity, const std::optional<Temperature>& T,
                    const DyadicInterval& value, std::size_t prec, const Enumeration& run,
                    const Provenance& provenance) {
  Json report{{"quantity", quantity},
              {"T", T ? Json(T->str()) : Json(nullptr)},
              {"budget", budget_json(run.budget())},
              {"lo", value.lo.to_decimal()},
              {"hi", value.hi.to_decimal()},
              {"exact", value.exact()},
              {"prec", prec},
              {"machine", run.machine_digest()},
              {"divergent_family", T ? divergent_family(*T) : false},
              {"exhaustive", run.exhaustive()},
              {"command", provenance.command}};
  if (T && divergent_family(*T)) {
    report["note"] = "T > 1: the full sum diverges; this finite value is a growth trend only";
  }
  return report;
}

Json extraction_report(const Extraction& extraction, std::size_t n, const Temperature& T,
                       SumMode mode, bool verified, const Enumeration& run,
                       const Provenance& provenance) {
  Json report{{"n", n},
              {"T", T.str()},
              {"mode", std::string(to_string(mode))},
              {"value", extraction.value.str()},
              {"target_length", extraction.target_length},
              {"alpha_prefix", extraction.alpha_prefix ? Json(extraction.alpha_prefix->str()) : Json(nullptr)},
              {"cutoff", extraction.cutoff},
              {"verified_incompressible", verified},
              {"advisory", extraction.advisory}};
  report.update(provenance_fields(run, provenance));
  return report;
}

std::vector<Temperature> gap_grid(const Temperature& T, const Temperature& t) {
  std::vector<Temperature> grid;
  const mpq_class step = (t.value() - T.value()) / 17;
  for (int j = 1; j <= 16; ++j) grid.emplace_back(T.value() + step * j);
  mpq_class tiny(1);
  mpq_div_2exp(tiny.get_mpq_t(), tiny.get_mpq_t(), 40);
  grid.emplace_back(T.value() + tiny);
  return grid;
}

FixedpointSummary run_fixedpoint_suite(const Enumeration& run, const Temperature& T,
                                       const Temperature& t, std::size_t nmax, std::size_t prec) {
  FixedpointSummary summary;
  summary.nmax = nmax;
  summary.constants = derive_constants(T, t, run, prec);
  const GapConstants& k = summary.constants;
  const CompressibleStream stream = compressible_stream(run, Temperature(1));
  summary.stream_size = stream.size();

  const auto grid = gap_grid(T, t);
  summary.upper_gap = true;
  for (const auto& x : grid) {
    if (first_upper_gap_failure(stream, k, x, prec)) summary.upper_gap = false;
  }
  summary.lower_gap = !first_lower_gap_failure(stream, k, t, prec);
  for (const auto& x : grid) {
    if (first_lower_gap_failure(stream, k, x, prec)) summary.lower_gap = false;
  }
  summary.floor_sandwich = true;
  for (std::size_t n = k.n2; n <= 64; ++n) {
    const auto [left, right] = check_floor_sandwich(T, n, k.c_upper);
    if (!left || !right) summary.floor_sandwich = false;
  }

  const PhiContext ctx = make_phi_context(run, T, k.c_lower, 256, prec);
  for (std::size_t n = 1; n <= nmax; ++n) {
    try {
      const std::size_t m = mpz_class((n * T.num() + T.den() - 1) / T.den()).get_ui();  // ceil(Tn)
      const BitString v = sum_prefix(run, m, Temperature(1), SumMode::CS, prec);
      const BitString target = leading_bits(T, n);
      const PhiTrace probe = phi_trace(n, v, BitString::zeros(k.c_lower + 2), ctx);
      const auto selector = selector_for(probe.t_n, target, k.c_lower);
      if (selector && phi_reconstruct(n, v, *selector, ctx) == target) ++summary.roundtrip_ok;
      if (tail_certificate(stream, T, probe.k0, n, prec)) ++summary.certificate_ok;
    } catch (const std::exception&) {
      // counted as a failure
    }
  }
  return summary;
}

Json fixedpoint_report(const FixedpointSummary& s, const Enumeration& run, const Provenance& provenance) {
  const GapConstants& k = s.constants;
  Json report{{"T", k.T.str()},
              {"t", k.t.str()},
              {"constants",
               {{"c_upper", k.c_upper},
                {"c_lower", k.c_lower},
                {"n0", k.n0},
                {"n1", k.n1},
                {"n2", k.n2},
                {"s1_length", k.s1_length},
                {"w_t_hi", k.w_t.hi.to_decimal()}}},
              {"stream_size", s.stream_size},
              {"checks",
               {{"upper_gap", s.upper_gap}, {"lower_gap", s.lower_gap}, {"floor_sandwich", s.floor_sandwich}}},
              {"selector_bits", k.c_lower + 2},
              {"roundtrip", {{"nmax", s.nmax}, {"exact", s.roundtrip_ok}, {"tail_certified", s.certificate_ok}}}};
  report.update(provenance_fields(run, provenance));
  return report;
}

}  // namespace omegalab
