#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "mstc/instance.hpp"
#include "mstc/kernel_search.hpp"

namespace mstc {

struct NamedInstance {
  std::string id;
  Instance instance;
};

struct RunRecord {
  std::string id;
  int n = 0;
  int m = 0;
  int c = 0;
  std::uint64_t seed = 0;
  std::optional<Weight> ub;
  double ub_time = 0;
  double total_time = 0;
  double gap = 100;  // percent vs the reference UB; 100 when no solution was found
  std::string status;
  std::int64_t violations = 0;  // incumbents or heuristic trees failing the checker
};

// Reference upper bounds keyed by instance id.
using ReferenceTable = std::map<std::string, Weight>;

/// CSV with a header row containing at least the columns "id" and "ub".
ReferenceTable read_reference(std::istream& in);

double gap_percent(Weight ub, Weight reference);

struct BenchOptions {
  KsParams params;
  std::vector<std::uint64_t> seeds{1};
  int workers = 1;
};

/// Runs every instance x seed pair on a worker pool. Records come back in
/// (instance, seed) input order regardless of completion order. Without a
/// reference UB, the best UB over the seeds of that instance is used.
/// Per-run failures are recorded in the status column.
std::vector<RunRecord> run_benchmark(const std::vector<NamedInstance>& instances, const BenchOptions& options,
                                     const ReferenceTable& reference = {});

/// id,n,m,C,seed,ub,ub_time_s,total_time_s,gap_pct,status
void write_csv(std::ostream& out, const std::vector<RunRecord>& records);

/// Per-instance summary (best over seeds), followed by "Average values" and
/// "%best" rows, as an aligned text table.
void write_table(std::ostream& out, const std::vector<RunRecord>& records);

}  // namespace mstc
