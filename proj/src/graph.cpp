#include "pursuit/graph.hpp"

#include <algorithm>
#include <charconv>
#include <numeric>
#include <queue>
#include <set>
#include <sstream>

namespace pursuit {

namespace {

bool parse_int(std::string_view token, long long& out) {
  const char* first = token.data();
  const char* last = token.data() + token.size();
  auto [ptr, ec] = std::from_chars(first, last, out);
  return ec == std::errc{} && ptr == last;
}

std::vector<std::string_view> significant_lines(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    while (!line.empty() && (line.back() == '\r' || line.back() == ' ' || line.back() == '\t'))
      line.remove_suffix(1);
    while (!line.empty() && (line.front() == ' ' || line.front() == '\t'))
      line.remove_prefix(1);
    if (!line.empty() && line.front() != '#') lines.push_back(line);
    if (end == text.size()) break;
    pos = end + 1;
  }
  return lines;
}

bool connected(int n, const std::vector<std::vector<vertex_t>>& adj) {
  if (n <= 1) return true;
  std::vector<char> seen(n, 0);
  std::queue<vertex_t> q;
  q.push(0);
  seen[0] = 1;
  int reached = 1;
  while (!q.empty()) {
    vertex_t v = q.front();
    q.pop();
    for (vertex_t w : adj[v]) {
      if (!seen[w]) {
        seen[w] = 1;
        ++reached;
        q.push(w);
      }
    }
  }
  return reached == n;
}

}  // namespace

graph_family parse_family(std::string_view name) {
  if (name == "star") return graph_family::star;
  if (name == "path") return graph_family::path;
  if (name == "cycle") return graph_family::cycle;
  if (name == "random_tree") return graph_family::random_tree;
  if (name == "gnp_connected") return graph_family::gnp_connected;
  raise(errc::invalid_parameter, "unknown graph family: " + std::string(name));
}

std::string_view family_name(graph_family f) {
  switch (f) {
    case graph_family::star: return "star";
    case graph_family::path: return "path";
    case graph_family::cycle: return "cycle";
    case graph_family::random_tree: return "random_tree";
    case graph_family::gnp_connected: return "gnp_connected";
  }
  return "?";
}

graph graph::from_edges(int n,
                        const std::vector<std::pair<vertex_t, vertex_t>>& edges) {
  if (n < 1) raise(errc::empty_graph, "graph needs at least one vertex");
  graph g;
  g.n_ = n;
  g.adj_.assign(n, {});
  std::set<std::pair<vertex_t, vertex_t>> seen;
  for (auto [u, v] : edges) {
    if (u < 0 || u >= n || v < 0 || v >= n)
      raise(errc::invalid_parameter,
            "edge endpoint out of range: " + std::to_string(u) + " " + std::to_string(v));
    if (u == v) raise(errc::self_loop, "self loop at vertex " + std::to_string(u));
    auto key = std::minmax(u, v);
    if (!seen.insert(key).second)
      raise(errc::duplicate_edge,
            "duplicate edge " + std::to_string(key.first) + " " + std::to_string(key.second));
    g.adj_[u].push_back(v);
    g.adj_[v].push_back(u);
  }
  for (auto& nbrs : g.adj_) std::sort(nbrs.begin(), nbrs.end());
  if (!connected(n, g.adj_)) raise(errc::disconnected, "graph is not connected");
  return g;
}

graph graph::parse(std::string_view edge_list_text) {
  auto lines = significant_lines(edge_list_text);
  if (lines.empty()) raise(errc::empty_graph, "empty edge-list document");
  long long n = 0;
  if (!parse_int(lines[0], n))
    raise(errc::malformed_line, "first line must be the vertex count, got: " + std::string(lines[0]));
  if (n < 1) raise(errc::empty_graph, "vertex count must be at least 1");
  if (n > (1 << 26)) raise(errc::invalid_parameter, "vertex count too large");
  std::vector<std::pair<vertex_t, vertex_t>> edges;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    std::string_view line = lines[i];
    std::size_t sp = line.find_first_of(" \t");
    if (sp == std::string_view::npos)
      raise(errc::malformed_line, "expected \"u v\", got: " + std::string(line));
    std::string_view left = line.substr(0, sp);
    std::string_view right = line.substr(sp);
    while (!right.empty() && (right.front() == ' ' || right.front() == '\t'))
      right.remove_prefix(1);
    long long u = 0, v = 0;
    if (!parse_int(left, u) || !parse_int(right, v))
      raise(errc::malformed_line, "expected \"u v\", got: " + std::string(line));
    if (u < 0 || u >= n || v < 0 || v >= n)
      raise(errc::malformed_line,
            "vertex out of range on line: " + std::string(line));
    edges.emplace_back(static_cast<vertex_t>(u), static_cast<vertex_t>(v));
  }
  return from_edges(static_cast<int>(n), edges);
}

graph graph::generate(graph_family family, int n, std::uint64_t seed, double edge_prob) {
  if (n < 1) raise(errc::invalid_parameter, "family graphs need n >= 1");
  std::vector<std::pair<vertex_t, vertex_t>> edges;
  switch (family) {
    case graph_family::star:
      for (vertex_t v = 1; v < n; ++v) edges.emplace_back(0, v);
      return from_edges(n, edges);
    case graph_family::path:
      for (vertex_t v = 0; v + 1 < n; ++v) edges.emplace_back(v, v + 1);
      return from_edges(n, edges);
    case graph_family::cycle:
      // C_1 and C_2 degenerate to the single vertex and the single edge.
      for (vertex_t v = 0; v + 1 < n; ++v) edges.emplace_back(v, v + 1);
      if (n >= 3) edges.emplace_back(n - 1, 0);
      return from_edges(n, edges);
    case graph_family::random_tree: {
      rng64 rng(seed);
      for (vertex_t v = 1; v < n; ++v)
        edges.emplace_back(static_cast<vertex_t>(rng.next_below(v)), v);
      return from_edges(n, edges);
    }
    case graph_family::gnp_connected: {
      if (!(edge_prob > 0.0) || edge_prob > 1.0)
        raise(errc::invalid_parameter, "gnp_connected needs edge probability in (0,1]");
      rng64 rng(seed);
      for (int attempt = 0; attempt < 100000; ++attempt) {
        edges.clear();
        for (vertex_t u = 0; u < n; ++u)
          for (vertex_t v = u + 1; v < n; ++v)
            if (rng.next_double() < edge_prob) edges.emplace_back(u, v);
        try {
          return from_edges(n, edges);
        } catch (const game_error& e) {
          if (e.code() != errc::disconnected) throw;
        }
      }
      raise(errc::non_termination, "gnp_connected rejection sampling did not converge");
    }
  }
  raise(errc::invalid_parameter, "unknown graph family");
}

bool graph::has_edge(vertex_t u, vertex_t v) const {
  const auto& nbrs = adj_[u];
  return std::binary_search(nbrs.begin(), nbrs.end(), v);
}

long long graph::edge_count() const {
  long long deg_sum = 0;
  for (const auto& nbrs : adj_) deg_sum += static_cast<long long>(nbrs.size());
  return deg_sum / 2;
}

std::string graph::to_edge_list() const {
  std::ostringstream out;
  out << n_ << '\n';
  for (vertex_t u = 0; u < n_; ++u)
    for (vertex_t v : adj_[u])
      if (u < v) out << u << ' ' << v << '\n';
  return out.str();
}

spanning_tree bfs_spanning_tree(const graph& g, vertex_t root) {
  const int n = g.n();
  if (root < 0 || root >= n) raise(errc::invalid_parameter, "root out of range");
  spanning_tree t;
  t.root = root;
  t.parent.assign(n, -1);
  t.children.assign(n, {});
  std::vector<char> seen(n, 0);
  std::queue<vertex_t> q;
  q.push(root);
  seen[root] = 1;
  while (!q.empty()) {
    vertex_t v = q.front();
    q.pop();
    for (vertex_t w : g.neighbors(v)) {
      if (!seen[w]) {
        seen[w] = 1;
        t.parent[w] = v;
        t.children[v].push_back(w);
        q.push(w);
      }
    }
  }
  // Adjacency lists are sorted, so children come out sorted as well.
  return t;
}

std::vector<vertex_t> leaves(const spanning_tree& t) {
  std::vector<vertex_t> out;
  for (vertex_t v = 0; v < t.n(); ++v)
    if (v != t.root && t.children[v].empty()) out.push_back(v);
  return out;
}

}  // namespace pursuit
