#pragma once

// Table verification: every catalog row is checked for its conductor, its
// classification round trip and the consistency of its equation; rows of the
// same name are swept for distinctness, and gate-rejected orders are checked
// to classify as not simple.

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "singclass/classify.hpp"

namespace singclass {

struct RowCheck {
  std::uint32_t p = 0;
  std::string key;
  std::string param;
  std::string equation;
  int conductor = 0;

  bool conductor_ok = false;
  std::string conductor_detail;
  bool round_trip_ok = false;
  std::string round_trip_detail;  // key classification returned
  bool consistent = false;
  int vanishing_order = 0;
  int required_order = 0;
  std::string consistency_detail;
  // soft: a random left-right move of the row classifies to the same key
  std::optional<bool> orbit_stable;
  std::string orbit_detail;

  bool hard_ok() const { return conductor_ok && round_trip_ok && consistent; }
};

struct GateCheck {
  int m = 0, n = 0;
  std::string expected;  // NotSimple(<condition>)
  std::string got;
  bool ok = false;
};

struct DistinctCheck {
  std::string a, b;
  std::string method;             // "normal form" or "orbit k=<level>"
  std::optional<bool> distinct;   // nullopt: undecided within the budget
  std::string detail;
};

struct CharacteristicReport {
  std::uint32_t p = 0;
  std::vector<RowCheck> rows;
  std::vector<GateCheck> gate;
  std::vector<DistinctCheck> distinctness;
  // p = 2, 3: the catalog key set against the table as printed
  std::optional<bool> row_set_ok;
  std::vector<std::string> missing_rows, extra_rows;
};

struct TablesReport {
  int k_max = 0, q_max = 0;
  std::vector<CharacteristicReport> characteristics;

  int hard_failures() const;
  int soft_failures() const;
};

struct VerifyOptions {
  int k_max = 6;
  int q_max = 6;
  unsigned threads = 0;  // 0: hardware concurrency
  std::uint64_t seed = 1;
  int orbit_samples = 0;  // random moves per row
  std::uint64_t max_orbit_nodes = 200000;
};

/// Keys of the characteristic 2 and 3 tables as printed, for the bounds.
std::set<std::string> printed_table_keys(std::uint32_t p, int k_max, int q_max);

/// Rows are checked in parallel; the result does not depend on the thread
/// count.
TablesReport verify_tables(const std::vector<std::uint32_t>& chars, const VerifyOptions& opt);

}  // namespace singclass
