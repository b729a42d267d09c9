#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "omegalab/enumerator.hpp"
#include "omegalab/extractor.hpp"
#include "omegalab/fixedpoint.hpp"

namespace omegalab {

using Json = nlohmann::ordered_json;

class MalformedLog : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Metadata carried by every artifact.
struct Provenance {
  std::string registry = "default";
  std::string command;
};

Json budget_json(const Budget& budget);

/// Header line, then one event per line:
///   {"seq":..,"round":..,"program":"..","output":"..","steps":..}
void write_log(std::ostream& out, const Enumeration& run, const Provenance& provenance);
std::string log_text(const Enumeration& run, const Provenance& provenance);

struct LoadedLog {
  Enumeration run;
  Provenance provenance;
};

/// Parses a log and rebuilds the enumeration. When a machine is given its
/// digest must match the header.
LoadedLog read_log(std::istream& in);
LoadedLog read_log(std::istream& in, const Machine& machine);

/// {"quantity","T","budget","lo","hi","exact","prec","machine",...}
Json measure_report(const std::string& quantity, const std::optional<Temperature>& T,
                    const DyadicInterval& value, std::size_t prec, const Enumeration& run,
                    const Provenance& provenance);

Json extraction_report(const Extraction& extraction, std::size_t n, const Temperature& T,
                       SumMode mode, bool verified, const Enumeration& run,
                       const Provenance& provenance);

struct FixedpointSummary {
  GapConstants constants;
  std::size_t stream_size = 0;
  bool upper_gap = false;
  bool lower_gap = false;
  bool floor_sandwich = false;
  std::size_t nmax = 0;
  std::size_t roundtrip_ok = 0;     // n in 1..nmax that reconstructed exactly
  std::size_t certificate_ok = 0;   // n whose tail certificate passed
};

/// Runs every fixed-point check for (T, t) and the reconstruction for
/// n = 1..nmax.
FixedpointSummary run_fixedpoint_suite(const Enumeration& run, const Temperature& T,
                                       const Temperature& t, std::size_t nmax, std::size_t prec);

Json fixedpoint_report(const FixedpointSummary& summary, const Enumeration& run,
                       const Provenance& provenance);

/// The grid x_j = T + j (t - T) / 17, j = 1..16, plus T + 2^-40.
std::vector<Temperature> gap_grid(const Temperature& T, const Temperature& t);

}  // namespace omegalab
