#include "ospfw/net.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <deque>
#include <set>
#include <sstream>

#include "ospfw/format.hpp"

namespace ospfw {

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kMalformedInput: return "MalformedInput";
    case ErrorCode::kNodeOutOfRange: return "NodeOutOfRange";
    case ErrorCode::kDuplicateArc: return "DuplicateArc";
    case ErrorCode::kNonPositiveCapacity: return "NonPositiveCapacity";
    case ErrorCode::kNegativeDemand: return "NegativeDemand";
    case ErrorCode::kSelfDemand: return "SelfDemand";
    case ErrorCode::kSelfLoop: return "SelfLoop";
    case ErrorCode::kUnknownLink: return "UnknownLink";
    case ErrorCode::kBadWeight: return "BadWeight";
    case ErrorCode::kBadParams: return "BadParams";
    case ErrorCode::kUnroutableDemand: return "UnroutableDemand";
    case ErrorCode::kZeroUncap: return "ZeroUncap";
    case ErrorCode::kEmptyDemand: return "EmptyDemand";
    case ErrorCode::kPairAlreadyLinked: return "PairAlreadyLinked";
    case ErrorCode::kScenarioMismatch: return "ScenarioMismatch";
    case ErrorCode::kTooLarge: return "TooLarge";
    case ErrorCode::kUnconnectable: return "Unconnectable";
    case ErrorCode::kMissingStrategy: return "MissingStrategy";
    case ErrorCode::kMissingTrace: return "MissingTrace";
    case ErrorCode::kConfigError: return "ConfigError";
    case ErrorCode::kIoError: return "IoError";
  }
  return "Unknown";
}

// --- Topology --------------------------------------------------------------

Topology::Topology(uint32_t node_count, std::vector<Arc> arcs)
    : node_count_(node_count), arcs_(std::move(arcs)) {
  std::set<std::pair<NodeId, NodeId>> seen;
  for (size_t i = 0; i < arcs_.size(); ++i) {
    const Arc& a = arcs_[i];
    if (a.src >= node_count_ || a.dst >= node_count_)
      fail(ErrorCode::kNodeOutOfRange,
           "arc " + std::to_string(i) + " references node outside [0, " +
               std::to_string(node_count_) + ")");
    if (a.src == a.dst)
      fail(ErrorCode::kSelfLoop, "arc " + std::to_string(i) + " is a self-loop");
    if (!(a.capacity > 0.0) || !std::isfinite(a.capacity))
      fail(ErrorCode::kNonPositiveCapacity,
           "arc " + std::to_string(i) + " has non-positive capacity");
    if (!seen.insert({a.src, a.dst}).second)
      fail(ErrorCode::kDuplicateArc,
           "duplicate arc (" + std::to_string(a.src) + ", " +
               std::to_string(a.dst) + ")");
    max_capacity_ = std::max(max_capacity_, a.capacity);
  }

  out_start_.assign(node_count_ + 1, 0);
  in_start_.assign(node_count_ + 1, 0);
  for (const Arc& a : arcs_) {
    ++out_start_[a.src + 1];
    ++in_start_[a.dst + 1];
  }
  for (uint32_t n = 0; n < node_count_; ++n) {
    out_start_[n + 1] += out_start_[n];
    in_start_[n + 1] += in_start_[n];
  }
  out_idx_.resize(arcs_.size());
  in_idx_.resize(arcs_.size());
  std::vector<uint32_t> out_fill(out_start_.begin(), out_start_.end() - 1);
  std::vector<uint32_t> in_fill(in_start_.begin(), in_start_.end() - 1);
  for (uint32_t i = 0; i < arcs_.size(); ++i) {
    out_idx_[out_fill[arcs_[i].src]++] = i;
    in_idx_[in_fill[arcs_[i].dst]++] = i;
  }
}

std::span<const uint32_t> Topology::out_arcs(NodeId u) const {
  return {out_idx_.data() + out_start_[u], out_start_[u + 1] - out_start_[u]};
}

std::span<const uint32_t> Topology::in_arcs(NodeId v) const {
  return {in_idx_.data() + in_start_[v], in_start_[v + 1] - in_start_[v]};
}

int32_t Topology::find_arc(NodeId u, NodeId v) const {
  if (u >= node_count_ || v >= node_count_) return -1;
  for (uint32_t idx : out_arcs(u))
    if (arcs_[idx].dst == v) return static_cast<int32_t>(idx);
  return -1;
}

// --- DemandMatrix ----------------------------------------------------------

DemandMatrix::DemandMatrix(uint32_t node_count, std::vector<Entry> entries)
    : node_count_(node_count) {
  for (const Entry& e : entries) {
    if (e.src >= node_count_ || e.dst >= node_count_)
      fail(ErrorCode::kNodeOutOfRange, "demand entry references unknown node");
    if (e.src == e.dst)
      fail(ErrorCode::kSelfDemand,
           "demand from node " + std::to_string(e.src) + " to itself");
    if (e.value < 0.0 || !std::isfinite(e.value))
      fail(ErrorCode::kNegativeDemand, "demand value must be >= 0 and finite");
  }
  // Zero entries are equivalent to absent ones; keep the canonical form.
  std::erase_if(entries, [](const Entry& e) { return e.value == 0.0; });
  std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) {
    return std::tie(a.src, a.dst) < std::tie(b.src, b.dst);
  });
  for (size_t i = 1; i < entries.size(); ++i)
    if (entries[i].src == entries[i - 1].src &&
        entries[i].dst == entries[i - 1].dst)
      fail(ErrorCode::kMalformedInput, "duplicate demand pair");
  entries_ = std::move(entries);

  by_dest_ = entries_;
  std::sort(by_dest_.begin(), by_dest_.end(),
            [](const Entry& a, const Entry& b) {
              return std::tie(a.dst, a.src) < std::tie(b.dst, b.src);
            });
  dest_start_.assign(node_count_ + 1, 0);
  for (const Entry& e : by_dest_) ++dest_start_[e.dst + 1];
  for (uint32_t n = 0; n < node_count_; ++n) dest_start_[n + 1] += dest_start_[n];
  for (uint32_t n = 0; n < node_count_; ++n)
    if (dest_start_[n + 1] > dest_start_[n]) destinations_.push_back(n);
  for (const Entry& e : entries_) total_ += e.value;
}

double DemandMatrix::at(NodeId src, NodeId dst) const {
  auto it = std::lower_bound(
      entries_.begin(), entries_.end(), std::make_pair(src, dst),
      [](const Entry& e, const std::pair<NodeId, NodeId>& key) {
        return std::tie(e.src, e.dst) < std::tie(key.first, key.second);
      });
  if (it != entries_.end() && it->src == src && it->dst == dst)
    return it->value;
  return 0.0;
}

std::span<const DemandMatrix::Entry> DemandMatrix::to_destination(
    NodeId dst) const {
  return {by_dest_.data() + dest_start_[dst],
          dest_start_[dst + 1] - dest_start_[dst]};
}

DemandMatrix DemandMatrix::scaled(double factor) const {
  if (!(factor > 0.0) || !std::isfinite(factor))
    fail(ErrorCode::kBadParams, "demand scale factor must be positive");
  std::vector<Entry> scaled_entries = entries_;
  for (Entry& e : scaled_entries) e.value *= factor;
  return DemandMatrix(node_count_, std::move(scaled_entries));
}

// --- weights ---------------------------------------------------------------

void validate_weights(const WeightVector& w, const Topology& topo) {
  if (w.w_max < 1)
    fail(ErrorCode::kBadWeight, "w_max must be >= 1");
  if (w.values.size() != topo.arc_count())
    fail(ErrorCode::kBadWeight,
         "weight vector has " + std::to_string(w.values.size()) +
             " entries for " + std::to_string(topo.arc_count()) + " arcs");
  for (size_t i = 0; i < w.values.size(); ++i)
    if (w.values[i] < 1 || w.values[i] > w.w_max)
      fail(ErrorCode::kBadWeight,
           "weight " + std::to_string(w.values[i]) + " at arc " +
               std::to_string(i) + " outside [1, " + std::to_string(w.w_max) +
               "]");
}

// --- parsing ---------------------------------------------------------------

namespace {

struct Line {
  size_t number;
  std::vector<std::string> tokens;
};

std::vector<Line> tokenize(const std::string& text) {
  std::vector<Line> lines;
  std::istringstream in(text);
  std::string raw;
  size_t number = 0;
  while (std::getline(in, raw)) {
    ++number;
    if (auto hash = raw.find('#'); hash != std::string::npos)
      raw.erase(hash);
    std::istringstream ls(raw);
    Line line{number, {}};
    std::string tok;
    while (ls >> tok) line.tokens.push_back(tok);
    if (!line.tokens.empty()) lines.push_back(std::move(line));
  }
  return lines;
}

[[noreturn]] void malformed(const Line& line, const std::string& what) {
  fail(ErrorCode::kMalformedInput,
       "line " + std::to_string(line.number) + ": " + what);
}

int64_t parse_int(const Line& line, const std::string& tok) {
  int64_t v = 0;
  auto res = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (res.ec != std::errc{} || res.ptr != tok.data() + tok.size())
    malformed(line, "expected integer, got '" + tok + "'");
  return v;
}

double parse_real(const Line& line, const std::string& tok) {
  double v = 0.0;
  auto res = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (res.ec != std::errc{} || res.ptr != tok.data() + tok.size())
    malformed(line, "expected number, got '" + tok + "'");
  return v;
}

NodeId parse_node(const Line& line, const std::string& tok,
                  uint32_t node_count) {
  int64_t v = parse_int(line, tok);
  if (v < 0 || v >= static_cast<int64_t>(node_count))
    fail(ErrorCode::kNodeOutOfRange,
         "line " + std::to_string(line.number) + ": node " + tok +
             " outside [0, " + std::to_string(node_count) + ")");
  return static_cast<NodeId>(v);
}

}  // namespace

Topology parse_topology(const std::string& text) {
  const auto lines = tokenize(text);
  if (lines.empty())
    fail(ErrorCode::kMalformedInput, "empty topology file");

  const Line& head = lines.front();
  if (head.tokens[0] != "nodes" || head.tokens.size() != 2)
    malformed(head, "expected 'nodes <N>' as first statement");
  int64_t n = parse_int(head, head.tokens[1]);
  if (n < 0) malformed(head, "node count must be >= 0");
  const uint32_t node_count = static_cast<uint32_t>(n);

  std::vector<Arc> arcs;
  for (size_t i = 1; i < lines.size(); ++i) {
    const Line& line = lines[i];
    if (line.tokens[0] != "arc")
      malformed(line, "expected 'arc <src> <dst> <capacity>'");
    if (line.tokens.size() != 4)
      malformed(line, "'arc' takes exactly 3 fields");
    Arc a;
    a.src = parse_node(line, line.tokens[1], node_count);
    a.dst = parse_node(line, line.tokens[2], node_count);
    a.capacity = parse_real(line, line.tokens[3]);
    if (a.src == a.dst)
      fail(ErrorCode::kSelfLoop,
           "line " + std::to_string(line.number) + ": self-loop arc");
    if (!(a.capacity > 0.0) || !std::isfinite(a.capacity))
      fail(ErrorCode::kNonPositiveCapacity,
           "line " + std::to_string(line.number) +
               ": capacity must be positive");
    arcs.push_back(a);
  }
  return Topology(node_count, std::move(arcs));
}

std::string serialize_topology(const Topology& topo) {
  std::string out = "nodes " + std::to_string(topo.node_count()) + "\n";
  for (const Arc& a : topo.arcs())
    out += "arc " + std::to_string(a.src) + " " + std::to_string(a.dst) + " " +
           fmt_g9(a.capacity) + "\n";
  return out;
}

DemandMatrix parse_demands(const std::string& text, const Topology& topo) {
  std::vector<DemandMatrix::Entry> entries;
  std::set<std::pair<NodeId, NodeId>> seen;
  for (const Line& line : tokenize(text)) {
    if (line.tokens[0] != "demand")
      malformed(line, "expected 'demand <src> <dst> <value>'");
    if (line.tokens.size() != 4)
      malformed(line, "'demand' takes exactly 3 fields");
    DemandMatrix::Entry e;
    e.src = parse_node(line, line.tokens[1], topo.node_count());
    e.dst = parse_node(line, line.tokens[2], topo.node_count());
    e.value = parse_real(line, line.tokens[3]);
    if (e.src == e.dst)
      fail(ErrorCode::kSelfDemand,
           "line " + std::to_string(line.number) + ": demand to self");
    if (e.value < 0.0 || !std::isfinite(e.value))
      fail(ErrorCode::kNegativeDemand,
           "line " + std::to_string(line.number) + ": demand must be >= 0");
    if (!seen.insert({e.src, e.dst}).second)
      malformed(line, "duplicate demand pair");
    entries.push_back(e);
  }
  return DemandMatrix(topo.node_count(), std::move(entries));
}

std::string serialize_demands(const DemandMatrix& dm) {
  std::string out;
  for (const auto& e : dm.entries())
    out += "demand " + std::to_string(e.src) + " " + std::to_string(e.dst) +
           " " + fmt_g9(e.value) + "\n";
  return out;
}

WeightVector parse_weights(const std::string& text, const Topology& topo,
                           int w_max) {
  std::vector<int> values(topo.arc_count(), 0);
  std::vector<bool> assigned(topo.arc_count(), false);
  for (const Line& line : tokenize(text)) {
    if (line.tokens[0] != "weight")
      malformed(line, "expected 'weight <arc_index> <w>'");
    if (line.tokens.size() != 3)
      malformed(line, "'weight' takes exactly 2 fields");
    int64_t idx = parse_int(line, line.tokens[1]);
    if (idx < 0 || idx >= static_cast<int64_t>(topo.arc_count()))
      fail(ErrorCode::kBadWeight,
           "line " + std::to_string(line.number) + ": arc index out of range");
    if (assigned[static_cast<size_t>(idx)])
      malformed(line, "duplicate weight for arc " + line.tokens[1]);
    int64_t w = parse_int(line, line.tokens[2]);
    if (w < 1 || w > w_max)
      fail(ErrorCode::kBadWeight,
           "line " + std::to_string(line.number) + ": weight outside [1, " +
               std::to_string(w_max) + "]");
    values[static_cast<size_t>(idx)] = static_cast<int>(w);
    assigned[static_cast<size_t>(idx)] = true;
  }
  for (size_t i = 0; i < assigned.size(); ++i)
    if (!assigned[i])
      fail(ErrorCode::kBadWeight, "no weight for arc " + std::to_string(i));
  return WeightVector{std::move(values), w_max};
}

std::string serialize_weights(const WeightVector& w) {
  std::string out;
  for (size_t i = 0; i < w.values.size(); ++i)
    out += "weight " + std::to_string(i) + " " + std::to_string(w.values[i]) +
           "\n";
  return out;
}

// --- surgery ---------------------------------------------------------------

AddLinkResult add_link(const Topology& topo, NodeId u, NodeId v,
                       double capacity) {
  if (u >= topo.node_count() || v >= topo.node_count())
    fail(ErrorCode::kNodeOutOfRange, "add_link endpoint out of range");
  if (u == v) fail(ErrorCode::kSelfLoop, "add_link endpoints must differ");
  if (topo.find_arc(u, v) >= 0 || topo.find_arc(v, u) >= 0)
    fail(ErrorCode::kDuplicateArc,
         "arcs between " + std::to_string(u) + " and " + std::to_string(v) +
             " already exist");
  if (!(capacity > 0.0) || !std::isfinite(capacity))
    fail(ErrorCode::kNonPositiveCapacity, "added link capacity must be > 0");

  std::vector<Arc> arcs = topo.arcs();
  const uint32_t first = static_cast<uint32_t>(arcs.size());
  arcs.push_back({u, v, capacity});
  arcs.push_back({v, u, capacity});
  return AddLinkResult{Topology(topo.node_count(), std::move(arcs)), first};
}

FailLinkResult fail_link(const Topology& topo, LinkId link) {
  bool found = false;
  std::vector<Arc> arcs;
  std::vector<int32_t> remap(topo.arc_count(), -1);
  for (uint32_t i = 0; i < topo.arc_count(); ++i) {
    const Arc& a = topo.arc(i);
    if (LinkId::of(a.src, a.dst) == link) {
      found = true;
      continue;
    }
    remap[i] = static_cast<int32_t>(arcs.size());
    arcs.push_back(a);
  }
  if (!found)
    fail(ErrorCode::kUnknownLink,
         "no arcs between " + std::to_string(link.lo) + " and " +
             std::to_string(link.hi));
  return FailLinkResult{Topology(topo.node_count(), std::move(arcs)),
                        std::move(remap)};
}

WeightVector remap_weights(const WeightVector& w,
                           const std::vector<int32_t>& arc_remap) {
  size_t surviving = 0;
  for (int32_t m : arc_remap)
    if (m >= 0) ++surviving;
  std::vector<int> values(surviving, 0);
  for (size_t i = 0; i < arc_remap.size(); ++i)
    if (arc_remap[i] >= 0) values[static_cast<size_t>(arc_remap[i])] = w.values[i];
  return WeightVector{std::move(values), w.w_max};
}

std::vector<std::pair<NodeId, NodeId>> check_connectivity(
    const Topology& topo, const DemandMatrix& dm) {
  std::vector<std::pair<NodeId, NodeId>> unroutable;
  std::vector<char> reaches(topo.node_count(), 0);
  std::deque<NodeId> queue;
  for (NodeId dst : dm.destinations()) {
    std::fill(reaches.begin(), reaches.end(), 0);
    reaches[dst] = 1;
    queue.assign(1, dst);
    while (!queue.empty()) {
      NodeId v = queue.front();
      queue.pop_front();
      for (uint32_t idx : topo.in_arcs(v)) {
        NodeId u = topo.arc(idx).src;
        if (!reaches[u]) {
          reaches[u] = 1;
          queue.push_back(u);
        }
      }
    }
    for (const auto& e : dm.to_destination(dst))
      if (!reaches[e.src]) unroutable.emplace_back(e.src, e.dst);
  }
  std::sort(unroutable.begin(), unroutable.end());
  return unroutable;
}

}  // namespace ospfw
