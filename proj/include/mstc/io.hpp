#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>

#include "mstc/instance.hpp"
#include "mstc/kernel_search.hpp"

namespace mstc {

enum class FileFormat { kNative, kZkp, kCcpr };
enum class Family { kZkp, kCcpr };

FileFormat parse_format(const std::string& name);
Family parse_family(const std::string& name);

/// Native layout:
///
///   n m c
///   u v w      (m lines, 1-based nodes)
///   i j        (c lines, 1-based edge ids)
///
/// Blank lines and text after '#' are ignored. Errors carry the line number.
Instance read_native(std::istream& in);
void write_native(std::ostream& out, const Instance& inst);

/// Benchmark archive adapter. The header holds n and m and optionally the
/// conflict count; edge lines are "u v w" or "id u v w"; conflict lines are
/// edge-id pairs or endpoint quadruples "u1 v1 u2 v2". Node and edge ids may
/// be 0- or 1-based; the base is inferred from the ranges present.
Instance read_archive(std::istream& in);

Instance parse_instance(const std::string& path, FileFormat format = FileFormat::kNative);

/// Parameter presets of the two benchmark families.
KsParams default_params(Family family);

/// Applies MSTC_GLOBAL_TL (seconds) when it is set and positive.
void apply_env_overrides(KsParams& params);

struct GeneratorOptions {
  int nodes = 10;
  int edges = 20;            // clamped to [n-1, n(n-1)/2]
  double conflict_rate = 0;  // fraction of all edge pairs in conflict
  int min_weight = 1;
  int max_weight = 100;
  std::uint64_t seed = 1;
  // Keeps a random spanning tree free of conflicts so the instance is feasible.
  bool plant_feasible_tree = false;
};

/// Connected random instance: a random spanning tree plus uniformly chosen
/// extra edges, then uniformly chosen conflict pairs.
Instance generate_instance(const GeneratorOptions& options);

}  // namespace mstc
