#include "assocperc/joint_table_io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <map>
#include <sstream>

#include "assocperc/error.hpp"

namespace assocperc {
namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

}  // namespace

EdgeLaw parse_edge_law(std::istream& in) {
  EdgeLaw law;
  std::map<std::string, int> index;
  std::vector<std::vector<int>> dist;
  std::vector<std::vector<bool>> seen;
  std::map<std::uint32_t, double> entries;
  std::string raw;
  int line_no = 0;
  auto fail = [&](const std::string& msg) {
    throw InvalidParameter("line " + std::to_string(line_no) + ": " + msg);
  };
  while (std::getline(in, raw)) {
    ++line_no;
    std::string line = trim(raw.substr(0, raw.find('#')));
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string head;
    ls >> head;
    if (head == "edges:") {
      if (!law.names.empty()) fail("duplicate edges header");
      std::string name;
      while (ls >> name) {
        if (index.count(name)) fail("duplicate edge name '" + name + "'");
        index[name] = static_cast<int>(law.names.size());
        law.names.push_back(name);
      }
      const int m = static_cast<int>(law.names.size());
      if (m == 0) fail("edges header lists no edges");
      if (m > kMaxTableEdges) {
        throw GuardExceeded("joint tables are limited to " + std::to_string(kMaxTableEdges) +
                            " edges");
      }
      dist.assign(m, std::vector<int>(m, 0));
      seen.assign(m, std::vector<bool>(m, false));
    } else if (head == "dist:") {
      if (law.names.empty()) fail("dist line before edges header");
      std::string a, b, d;
      if (!(ls >> a >> b >> d)) fail("dist line needs two edges and a distance");
      if (!index.count(a) || !index.count(b)) fail("unknown edge in dist line");
      const int i = index[a], j = index[b];
      if (i == j) fail("dist line must name two distinct edges");
      int value = SmallGraph::kUnreachable;
      if (d != "inf") {
        const auto [end, ec] = std::from_chars(d.data(), d.data() + d.size(), value);
        if (ec != std::errc() || end != d.data() + d.size() || value < 0) {
          fail("bad distance '" + d + "'");
        }
      }
      if (seen[i][j]) fail("duplicate dist line for " + a + " " + b);
      seen[i][j] = seen[j][i] = true;
      dist[i][j] = dist[j][i] = value;
    } else {
      if (law.names.empty()) fail("configuration line before edges header");
      const int m = static_cast<int>(law.names.size());
      if (static_cast<int>(head.size()) != m) fail("bitstring length must equal |E|");
      std::uint32_t config = 0;
      for (int k = 0; k < m; ++k) {
        if (head[k] == '1') {
          config |= 1U << k;
        } else if (head[k] != '0') {
          fail("bitstring may only contain 0 and 1");
        }
      }
      std::string prob_text;
      if (!(ls >> prob_text)) fail("configuration line needs a probability");
      double prob = 0.0;
      const char* last = prob_text.data() + prob_text.size();
      const auto [end, ec] = std::from_chars(prob_text.data(), last, prob);
      if (ec != std::errc() || end != last) fail("bad probability '" + prob_text + "'");
      if (!(prob >= 0.0)) fail("probabilities must be nonnegative");
      if (entries.count(config)) fail("duplicate configuration " + head);
      entries[config] = prob;
    }
  }
  const int m = static_cast<int>(law.names.size());
  if (m == 0) throw InvalidParameter("missing edges header");
  for (int i = 0; i < m; ++i) {
    for (int j = i + 1; j < m; ++j) {
      if (!seen[i][j]) {
        throw InvalidParameter("missing dist line for " + law.names[i] + " " + law.names[j]);
      }
    }
  }
  law.graph = SmallGraph::from_distances(dist);
  law.table.num_edges = m;
  law.table.probs.assign(std::size_t{1} << m, 0.0);
  double total = 0.0;
  for (const auto& [config, prob] : entries) {
    law.table.probs[config] = prob;
    total += prob;
  }
  if (std::abs(total - 1.0) > kTableMassTolerance) {
    throw InvalidParameter("probabilities sum to " + std::to_string(total) + ", not 1");
  }
  for (double& q : law.table.probs) q /= total;
  return law;
}

EdgeLaw read_edge_law(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open table file '" + path + "'");
  return parse_edge_law(in);
}

void write_edge_law(std::ostream& out, const EdgeLaw& law) {
  const int m = law.table.num_edges;
  out << "edges:";
  for (const auto& name : law.names) out << ' ' << name;
  out << '\n';
  for (int i = 0; i < m; ++i) {
    for (int j = i + 1; j < m; ++j) {
      const int d = law.graph.edge_distance[i][j];
      out << "dist: " << law.names[i] << ' ' << law.names[j] << ' ';
      if (d >= SmallGraph::kUnreachable) {
        out << "inf\n";
      } else {
        out << d << '\n';
      }
    }
  }
  out << std::setprecision(std::numeric_limits<double>::max_digits10);
  for (std::uint32_t x = 0; x < law.table.probs.size(); ++x) {
    for (int k = 0; k < m; ++k) out << (((x >> k) & 1U) ? '1' : '0');
    out << ' ' << law.table.probs[x] << '\n';
  }
}

}  // namespace assocperc
