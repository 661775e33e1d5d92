#include "mstc/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <map>
#include <istream>
#include <ostream>
#include <random>
#include <set>
#include <sstream>
#include <vector>

namespace mstc {

FileFormat parse_format(const std::string& name) {
  if (name == "native") return FileFormat::kNative;
  if (name == "zkp") return FileFormat::kZkp;
  if (name == "ccpr") return FileFormat::kCcpr;
  throw InputError("unknown format '" + name + "'");
}

Family parse_family(const std::string& name) {
  if (name == "zkp") return Family::kZkp;
  if (name == "ccpr") return Family::kCcpr;
  throw InputError("unknown family '" + name + "'");
}

namespace {

struct Line {
  int number;
  std::vector<std::string> tokens;
};

std::vector<Line> tokenize(std::istream& in) {
  std::vector<Line> lines;
  std::string text;
  int number = 0;
  while (std::getline(in, text)) {
    ++number;
    if (auto hash = text.find('#'); hash != std::string::npos) text.erase(hash);
    std::istringstream ss(text);
    Line line{number, {}};
    for (std::string tok; ss >> tok;) line.tokens.push_back(tok);
    if (!line.tokens.empty()) lines.push_back(std::move(line));
  }
  return lines;
}

long long to_int(const std::string& tok, int line) {
  long long v = 0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc() || ptr != tok.data() + tok.size()) throw InputError("expected an integer, got '" + tok + "'", line);
  return v;
}

double to_real(const std::string& tok, int line) {
  char* end = nullptr;
  const double v = std::strtod(tok.c_str(), &end);
  if (end != tok.c_str() + tok.size() || !std::isfinite(v)) throw InputError("expected a number, got '" + tok + "'", line);
  return v;
}

void expect_tokens(const Line& line, std::size_t count, const char* what) {
  if (line.tokens.size() != count) {
    throw InputError(std::string(what) + " needs " + std::to_string(count) + " fields, got " +
                         std::to_string(line.tokens.size()),
                     line.number);
  }
}

}  // namespace

Instance read_native(std::istream& in) {
  const std::vector<Line> lines = tokenize(in);
  if (lines.empty()) throw InputError("empty instance file", 1);
  expect_tokens(lines[0], 3, "header");
  const long long n = to_int(lines[0].tokens[0], lines[0].number);
  const long long m = to_int(lines[0].tokens[1], lines[0].number);
  const long long c = to_int(lines[0].tokens[2], lines[0].number);
  if (n < 1 || m < 0 || c < 0) throw InputError("header counts must be n >= 1, m >= 0, c >= 0", lines[0].number);
  if (static_cast<long long>(lines.size()) - 1 != m + c) {
    const int at = lines.size() > static_cast<std::size_t>(m + c) + 1 ? lines[static_cast<std::size_t>(m + c) + 1].number
                                                                      : lines.back().number;
    throw InputError("header announces " + std::to_string(m) + " edges and " + std::to_string(c) +
                         " conflicts but the file holds " + std::to_string(lines.size() - 1) + " data lines",
                     at);
  }

  std::vector<Edge> edges;
  std::set<std::pair<long long, long long>> seen_edges;
  for (long long i = 0; i < m; ++i) {
    const Line& line = lines[static_cast<std::size_t>(i) + 1];
    expect_tokens(line, 3, "edge line");
    const long long u = to_int(line.tokens[0], line.number);
    const long long v = to_int(line.tokens[1], line.number);
    const double w = to_real(line.tokens[2], line.number);
    if (u < 1 || u > n || v < 1 || v > n) throw InputError("endpoint outside [1, n]", line.number);
    if (u == v) throw InputError("self-loop", line.number);
    if (!seen_edges.emplace(std::min(u, v), std::max(u, v)).second) throw InputError("duplicate edge", line.number);
    edges.push_back({static_cast<NodeId>(u), static_cast<NodeId>(v), w});
  }

  std::vector<ConflictPair> conflicts;
  std::set<std::pair<long long, long long>> seen_pairs;
  for (long long k = 0; k < c; ++k) {
    const Line& line = lines[static_cast<std::size_t>(m + k) + 1];
    expect_tokens(line, 2, "conflict line");
    long long i = to_int(line.tokens[0], line.number);
    long long j = to_int(line.tokens[1], line.number);
    if (i < 1 || i > m || j < 1 || j > m) throw InputError("conflict references a missing edge", line.number);
    if (i == j) throw InputError("edge conflicts with itself", line.number);
    if (i > j) std::swap(i, j);
    if (!seen_pairs.emplace(i, j).second) throw InputError("duplicate conflict", line.number);
    conflicts.push_back({static_cast<EdgeId>(i), static_cast<EdgeId>(j)});
  }
  return Instance(static_cast<int>(n), std::move(edges), std::move(conflicts));
}

void write_native(std::ostream& out, const Instance& inst) {
  out << inst.num_nodes() << ' ' << inst.num_edges() << ' ' << inst.num_conflicts() << '\n';
  const auto old_precision = out.precision(17);
  for (const Edge& e : inst.edges()) out << e.u << ' ' << e.v << ' ' << e.w << '\n';
  out.precision(old_precision);
  for (const ConflictPair& c : inst.conflicts()) out << c.first << ' ' << c.second << '\n';
}

Instance read_archive(std::istream& in) {
  const std::vector<Line> lines = tokenize(in);
  if (lines.empty()) throw InputError("empty instance file", 1);
  const Line& head = lines[0];
  if (head.tokens.size() < 2 || head.tokens.size() > 3) {
    throw InputError("header needs 2 or 3 fields (n m [c])", head.number);
  }
  const long long n = to_int(head.tokens[0], head.number);
  const long long m = to_int(head.tokens[1], head.number);
  if (n < 1 || m < 0) throw InputError("bad header counts", head.number);
  if (static_cast<long long>(lines.size()) - 1 < m) throw InputError("fewer edge lines than announced", lines.back().number);
  long long c = static_cast<long long>(lines.size()) - 1 - m;
  if (head.tokens.size() == 3) {
    const long long announced = to_int(head.tokens[2], head.number);
    if (announced != c) {
      throw InputError("header announces " + std::to_string(announced) + " conflicts, file holds " + std::to_string(c),
                       head.number);
    }
  }

  struct RawEdge {
    long long u, v;
    double w;
    int line;
  };
  std::vector<RawEdge> raw;
  long long min_node = n + 1, max_node = -1;
  for (long long i = 0; i < m; ++i) {
    const Line& line = lines[static_cast<std::size_t>(i) + 1];
    const std::size_t k = line.tokens.size();
    if (k != 3 && k != 4) throw InputError("edge line needs 3 or 4 fields", line.number);
    const std::size_t off = k - 3;
    RawEdge r{to_int(line.tokens[off], line.number), to_int(line.tokens[off + 1], line.number),
              to_real(line.tokens[off + 2], line.number), line.number};
    min_node = std::min({min_node, r.u, r.v});
    max_node = std::max({max_node, r.u, r.v});
    raw.push_back(r);
  }
  if (m > 0 && min_node < 0) throw InputError("negative node id", head.number);
  const long long node_base = min_node == 0 ? 0 : 1;
  if (m > 0 && max_node - node_base >= n) throw InputError("node ids do not fit in n = " + std::to_string(n), head.number);

  std::vector<Edge> edges;
  std::set<std::pair<long long, long long>> seen;
  for (const RawEdge& r : raw) {
    const long long u = r.u - node_base + 1, v = r.v - node_base + 1;
    if (u == v) throw InputError("self-loop", r.line);
    if (!seen.emplace(std::min(u, v), std::max(u, v)).second) throw InputError("duplicate edge", r.line);
    edges.push_back({static_cast<NodeId>(u), static_cast<NodeId>(v), r.w});
  }
  std::map<std::pair<long long, long long>, EdgeId> edge_ids;
  for (std::size_t i = 0; i < edges.size(); ++i) {
    edge_ids[{std::min(edges[i].u, edges[i].v), std::max(edges[i].u, edges[i].v)}] = static_cast<EdgeId>(i + 1);
  }
  auto edge_by_endpoints = [&](long long a, long long b, int line) -> EdgeId {
    a = a - node_base + 1;
    b = b - node_base + 1;
    auto it = edge_ids.find({std::min(a, b), std::max(a, b)});
    if (it == edge_ids.end()) throw InputError("conflict names a missing edge", line);
    return it->second;
  };

  std::vector<std::pair<long long, long long>> ids;
  std::vector<int> id_lines;
  std::vector<ConflictPair> conflicts;
  long long min_id = m + 1, max_id = -1;
  for (long long k = 0; k < c; ++k) {
    const Line& line = lines[static_cast<std::size_t>(m + k) + 1];
    if (line.tokens.size() == 4) {
      const EdgeId a = edge_by_endpoints(to_int(line.tokens[0], line.number), to_int(line.tokens[1], line.number), line.number);
      const EdgeId b = edge_by_endpoints(to_int(line.tokens[2], line.number), to_int(line.tokens[3], line.number), line.number);
      if (a == b) throw InputError("edge conflicts with itself", line.number);
      conflicts.push_back({std::min(a, b), std::max(a, b)});
    } else if (line.tokens.size() == 2) {
      const long long a = to_int(line.tokens[0], line.number);
      const long long b = to_int(line.tokens[1], line.number);
      min_id = std::min({min_id, a, b});
      max_id = std::max({max_id, a, b});
      ids.emplace_back(a, b);
      id_lines.push_back(line.number);
    } else {
      throw InputError("conflict line needs 2 or 4 fields", line.number);
    }
  }
  const long long id_base = min_id == 0 ? 0 : 1;
  for (std::size_t k = 0; k < ids.size(); ++k) {
    const long long a = ids[k].first - id_base + 1, b = ids[k].second - id_base + 1;
    if (a < 1 || a > m || b < 1 || b > m) throw InputError("conflict references a missing edge", id_lines[k]);
    if (a == b) throw InputError("edge conflicts with itself", id_lines[k]);
    conflicts.push_back({static_cast<EdgeId>(std::min(a, b)), static_cast<EdgeId>(std::max(a, b))});
  }
  return Instance(static_cast<int>(n), std::move(edges), std::move(conflicts));
}

Instance parse_instance(const std::string& path, FileFormat format) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  return format == FileFormat::kNative ? read_native(in) : read_archive(in);
}

KsParams default_params(Family family) {
  KsParams p;
  p.outer_iterations = 4;
  p.beta = 0.2;
  p.global_time_limit = 3600;
  p.greedy.h_max = 20;
  p.greedy.t_max = 500;
  if (family == Family::kZkp) {
    p.alpha = 1.1;
    p.delta = 0.6;
    p.inner_time_limit = 420;
  } else {
    p.alpha = 1.2;
    p.delta = 0.4;
    p.inner_time_limit = 180;
  }
  return p;
}

void apply_env_overrides(KsParams& params) {
  const char* tl = std::getenv("MSTC_GLOBAL_TL");
  if (tl == nullptr || *tl == '\0') return;
  char* end = nullptr;
  const double v = std::strtod(tl, &end);
  if (*end != '\0' || !(v > 0)) throw InputError(std::string("MSTC_GLOBAL_TL must be a positive number, got '") + tl + "'");
  params.global_time_limit = v;
  params.inner_time_limit = std::min(params.inner_time_limit, v);
}

Instance generate_instance(const GeneratorOptions& o) {
  if (o.nodes < 1) throw InputError("generator needs at least one node");
  if (o.min_weight > o.max_weight) throw InputError("generator weight range is empty");
  if (!(o.conflict_rate >= 0 && o.conflict_rate <= 1)) throw InputError("conflict rate must lie in [0, 1]");
  std::mt19937_64 rng(o.seed);
  const int n = o.nodes;
  const long long max_m = static_cast<long long>(n) * (n - 1) / 2;
  const int m = static_cast<int>(std::clamp<long long>(o.edges, n - 1, max_m));

  std::vector<int> perm(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) perm[static_cast<std::size_t>(i)] = i + 1;
  std::shuffle(perm.begin(), perm.end(), rng);

  std::set<std::pair<int, int>> present;
  std::vector<std::pair<int, int>> pairs;
  auto add = [&](int a, int b) {
    if (present.emplace(std::min(a, b), std::max(a, b)).second) pairs.emplace_back(a, b);
  };
  for (int i = 1; i < n; ++i) {
    std::uniform_int_distribution<int> pick(0, i - 1);
    add(perm[static_cast<std::size_t>(pick(rng))], perm[static_cast<std::size_t>(i)]);
  }
  if (m > n - 1) {
    std::vector<std::pair<int, int>> rest;
    for (int a = 1; a <= n; ++a) {
      for (int b = a + 1; b <= n; ++b) {
        if (!present.count({a, b})) rest.emplace_back(a, b);
      }
    }
    std::shuffle(rest.begin(), rest.end(), rng);
    for (int i = 0; i < m - (n - 1); ++i) add(rest[static_cast<std::size_t>(i)].first, rest[static_cast<std::size_t>(i)].second);
  }
  // Shuffle so the planted tree is not simply edges 1..n-1.
  std::vector<int> order(pairs.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
  std::shuffle(order.begin(), order.end(), rng);
  std::vector<char> tree_edge(pairs.size(), 0);
  std::uniform_int_distribution<int> weight(o.min_weight, o.max_weight);
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < order.size(); ++i) {
    const auto [a, b] = pairs[static_cast<std::size_t>(order[i])];
    if (order[i] < n - 1) tree_edge[i] = 1;
    edges.push_back({a, b, static_cast<Weight>(weight(rng))});
  }

  std::vector<ConflictPair> conflicts;
  const long long total_pairs = static_cast<long long>(m) * (m - 1) / 2;
  const auto target = static_cast<long long>(std::llround(o.conflict_rate * static_cast<double>(total_pairs)));
  if (target > 0) {
    std::vector<ConflictPair> all;
    for (int i = 1; i <= m; ++i) {
      for (int j = i + 1; j <= m; ++j) {
        if (o.plant_feasible_tree && tree_edge[static_cast<std::size_t>(i - 1)] && tree_edge[static_cast<std::size_t>(j - 1)]) {
          continue;
        }
        all.push_back({i, j});
      }
    }
    std::shuffle(all.begin(), all.end(), rng);
    all.resize(static_cast<std::size_t>(std::min<long long>(target, static_cast<long long>(all.size()))));
    conflicts = std::move(all);
  }
  return Instance(n, std::move(edges), std::move(conflicts));
}

}  // namespace mstc
