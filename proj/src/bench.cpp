#include "mstc/bench.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <thread>

namespace mstc {

namespace {

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream ss(line);
  while (std::getline(ss, field, ',')) {
    field.erase(0, field.find_first_not_of(" \t\r"));
    field.erase(field.find_last_not_of(" \t\r") + 1);
    out.push_back(field);
  }
  return out;
}

std::string fixed(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

std::string format_weight(Weight w) {
  char buf[64];
  if (w == std::floor(w) && std::fabs(w) < 1e15) {
    std::snprintf(buf, sizeof buf, "%.0f", w);
  } else {
    std::snprintf(buf, sizeof buf, "%.10g", w);
  }
  return buf;
}

}  // namespace

ReferenceTable read_reference(std::istream& in) {
  ReferenceTable table;
  std::string line;
  int number = 0;
  int id_col = -1, ub_col = -1;
  while (std::getline(in, line)) {
    ++number;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const std::vector<std::string> fields = split_csv(line);
    if (id_col < 0) {
      for (std::size_t i = 0; i < fields.size(); ++i) {
        if (fields[i] == "id") id_col = static_cast<int>(i);
        if (fields[i] == "ub") ub_col = static_cast<int>(i);
      }
      if (id_col < 0 || ub_col < 0) throw InputError("reference header needs 'id' and 'ub' columns", number);
      continue;
    }
    if (static_cast<int>(fields.size()) <= std::max(id_col, ub_col)) throw InputError("short reference row", number);
    char* end = nullptr;
    const std::string& ub = fields[static_cast<std::size_t>(ub_col)];
    const double v = std::strtod(ub.c_str(), &end);
    if (ub.empty() || *end != '\0') throw InputError("bad reference ub '" + ub + "'", number);
    table[fields[static_cast<std::size_t>(id_col)]] = v;
  }
  return table;
}

double gap_percent(Weight ub, Weight reference) {
  if (reference == 0) return ub == 0 ? 0.0 : 100.0;
  return 100.0 * (ub - reference) / std::fabs(reference);
}

std::vector<RunRecord> run_benchmark(const std::vector<NamedInstance>& instances, const BenchOptions& options,
                                     const ReferenceTable& reference) {
  const std::size_t seeds = options.seeds.size();
  const std::size_t total = instances.size() * seeds;
  std::vector<RunRecord> records(total);
  std::atomic<std::size_t> next{0};

  auto worker = [&] {
    for (std::size_t job = next++; job < total; job = next++) {
      const NamedInstance& ni = instances[job / seeds];
      RunRecord& r = records[job];
      r.id = ni.id;
      r.n = ni.instance.num_nodes();
      r.m = ni.instance.num_edges();
      r.c = ni.instance.num_conflicts();
      r.seed = options.seeds[job % seeds];
      try {
        KsParams params = options.params;
        params.greedy.rng_seed = r.seed;
        const KsRunResult res = run_kernel_search(ni.instance, params);
        r.status = to_string(res.status);
        if (res.best) r.ub = res.best->weight;
        r.ub_time = res.time_to_best;
        r.total_time = res.total_time;
        r.violations = res.incumbent_violations;
        if (res.start_tree && !res.start_tree->feasible()) ++r.violations;
      } catch (const std::exception& e) {
        r.status = std::string("error: ") + e.what();
        std::replace(r.status.begin(), r.status.end(), ',', ';');
      }
    }
  };
  const int workers = std::max(1, std::min<int>(options.workers, static_cast<int>(std::max<std::size_t>(total, 1))));
  std::vector<std::thread> pool;
  for (int i = 1; i < workers; ++i) pool.emplace_back(worker);
  worker();
  for (std::thread& t : pool) t.join();

  for (std::size_t i = 0; i < instances.size(); ++i) {
    std::optional<Weight> ref;
    if (auto it = reference.find(instances[i].id); it != reference.end()) {
      ref = it->second;
    } else {
      for (std::size_t s = 0; s < seeds; ++s) {
        const auto& ub = records[i * seeds + s].ub;
        if (ub && (!ref || *ub < *ref)) ref = ub;
      }
    }
    for (std::size_t s = 0; s < seeds; ++s) {
      RunRecord& r = records[i * seeds + s];
      r.gap = (r.ub && ref) ? gap_percent(*r.ub, *ref) : 100.0;
    }
  }
  return records;
}

void write_csv(std::ostream& out, const std::vector<RunRecord>& records) {
  out << "id,n,m,C,seed,ub,ub_time_s,total_time_s,gap_pct,status\n";
  for (const RunRecord& r : records) {
    out << r.id << ',' << r.n << ',' << r.m << ',' << r.c << ',' << r.seed << ',' << (r.ub ? format_weight(*r.ub) : "")
        << ',' << fixed(r.ub_time, 3) << ',' << fixed(r.total_time, 3) << ',' << fixed(r.gap, 2) << ',' << r.status
        << '\n';
  }
}

void write_table(std::ostream& out, const std::vector<RunRecord>& records) {
  struct Row {
    std::string id;
    int n, m, c;
    std::optional<Weight> ub;
    double ub_time, total_time, gap;
  };
  std::vector<Row> rows;
  for (const RunRecord& r : records) {
    if (rows.empty() || rows.back().id != r.id) rows.push_back({r.id, r.n, r.m, r.c, std::nullopt, 0, 0, 100});
    Row& row = rows.back();
    row.total_time = std::max(row.total_time, r.total_time);
    if (r.ub && (!row.ub || *r.ub < *row.ub)) {
      row.ub = r.ub;
      row.ub_time = r.ub_time;
      row.gap = r.gap;
    }
  }

  std::vector<std::vector<std::string>> cells;
  cells.push_back({"ID", "n", "m", "|C|", "UB", "UB_time", "time", "gap"});
  double sum_ub_time = 0, sum_time = 0, sum_gap = 0;
  int best = 0;
  for (const Row& r : rows) {
    cells.push_back({r.id, std::to_string(r.n), std::to_string(r.m), std::to_string(r.c),
                     r.ub ? format_weight(*r.ub) : "-", fixed(r.ub_time, 2), fixed(r.total_time, 2), fixed(r.gap, 2)});
    sum_ub_time += r.ub_time;
    sum_time += r.total_time;
    sum_gap += r.gap;
    if (r.ub && r.gap <= 0.005) ++best;
  }
  const double k = rows.empty() ? 1.0 : static_cast<double>(rows.size());
  cells.push_back({"Average values", "", "", "", "", fixed(sum_ub_time / k, 2), fixed(sum_time / k, 2), fixed(sum_gap / k, 2)});
  cells.push_back({"%best", "", "", "", "", "", "", fixed(100.0 * best / k, 2)});

  std::vector<std::size_t> width(cells[0].size(), 0);
  for (const auto& row : cells) {
    for (std::size_t j = 0; j < row.size(); ++j) width[j] = std::max(width[j], row[j].size());
  }
  for (const auto& row : cells) {
    for (std::size_t j = 0; j < row.size(); ++j) {
      if (j == 0) {
        out << row[j] << std::string(width[j] - row[j].size(), ' ');
      } else {
        out << "  " << std::string(width[j] - row[j].size(), ' ') << row[j];
      }
    }
    out << '\n';
  }
}

}  // namespace mstc
