#include "eppa/verifier.hpp"

#include <algorithm>
#include <bit>
#include <deque>
#include <map>
#include <numeric>
#include <sstream>

#include "eppa/errors.hpp"
#include "eppa/pipeline.hpp"

namespace eppa {

namespace {

// Dense n x n table of label ids; 0 means "no edge", the diagonal is 0.
class LabelTable {
 public:
  explicit LabelTable(const EdgeLabelledGraph& g) : n_(g.size()), ids_(n_ * n_, 0) {
    std::map<Label, std::uint16_t> index;
    for (VertexIndex u = 0; u < n_; ++u)
      for (const auto& nb : g.neighbors(u)) index.emplace(nb.label, 0);
    for (auto& [label, id] : index) {
      labels_.push_back(label);
      id = static_cast<std::uint16_t>(labels_.size());
    }
    for (VertexIndex u = 0; u < n_; ++u)
      for (const auto& nb : g.neighbors(u)) ids_[u * n_ + nb.vertex] = index.at(nb.label);
  }

  std::size_t size() const { return n_; }
  std::uint16_t at(VertexIndex u, VertexIndex v) const { return ids_[u * n_ + v]; }
  /// Number of distinct labels; ids run 1..label_count().
  std::size_t label_count() const { return labels_.size(); }
  const Label& label(std::uint16_t id) const { return labels_[id - 1]; }

 private:
  std::size_t n_;
  std::vector<std::uint16_t> ids_;
  std::vector<Label> labels_;
};

nlohmann::json names_of(const EdgeLabelledGraph& g, const std::vector<VertexIndex>& vs) {
  nlohmann::json out = nlohmann::json::array();
  for (auto v : vs) out.push_back(g.name(v));
  return out;
}

nlohmann::json map_json(const EdgeLabelledGraph& g, const IndexMap& f) {
  nlohmann::json out = nlohmann::json::array();
  for (VertexIndex v = 0; v < f.size(); ++v)
    if (f[v] != kUnmapped) out.push_back({g.name(v), g.name(f[v])});
  return out;
}

bool partial_ok(const LabelTable& t, const IndexMap& f) {
  const std::size_t n = t.size();
  if (f.size() != n) return false;
  std::vector<char> hit(n, 0);
  std::vector<VertexIndex> dom;
  for (VertexIndex v = 0; v < n; ++v) {
    if (f[v] == kUnmapped) continue;
    if (f[v] >= n || hit[f[v]]) return false;
    hit[f[v]] = 1;
    dom.push_back(v);
  }
  for (std::size_t i = 0; i < dom.size(); ++i)
    for (std::size_t j = i + 1; j < dom.size(); ++j)
      if (t.at(dom[i], dom[j]) != t.at(f[dom[i]], f[dom[j]])) return false;
  return true;
}

class ExtensionSearch {
 public:
  ExtensionSearch(const LabelTable& t, std::uint64_t budget)
      : t_(t), n_(t.size()), words_((n_ + 63) / 64), budget_(budget) {
    const std::size_t labels = t.label_count() + 1;
    rows_.assign(n_ * labels * words_, 0);
    for (VertexIndex c = 0; c < n_; ++c)
      for (VertexIndex w = 0; w < n_; ++w)
        if (w != c) rows_[(c * labels + t.at(w, c)) * words_ + w / 64] |= bit(w);

    // Candidates must have the same number of neighbours under each label.
    std::vector<std::vector<std::uint32_t>> signature(n_, std::vector<std::uint32_t>(labels, 0));
    for (VertexIndex v = 0; v < n_; ++v)
      for (VertexIndex u = 0; u < n_; ++u)
        if (u != v) ++signature[v][t.at(v, u)];
    domains_.assign(n_ * words_, 0);
    for (VertexIndex v = 0; v < n_; ++v)
      for (VertexIndex c = 0; c < n_; ++c)
        if (signature[v] == signature[c]) domains_[v * words_ + c / 64] |= bit(c);
    image_.assign(n_, kUnmapped);
  }

  SearchResult run(const IndexMap& phi) {
    SearchResult result;
    bool ok = true;
    for (VertexIndex v = 0; v < n_ && ok; ++v) {
      if (phi[v] == kUnmapped) continue;
      ok = (domains_[v * words_ + phi[v] / 64] & bit(phi[v])) != 0 && assign(v, phi[v]);
    }
    if (ok) {
      try {
        ok = descend(0);
      } catch (const BudgetExhausted&) {
        result.status = SearchStatus::exhausted;
        result.nodes = nodes_;
        return result;
      }
    }
    result.nodes = nodes_;
    if (ok) {
      result.status = SearchStatus::found;
      result.extension = image_;
    }
    return result;
  }

 private:
  static std::uint64_t bit(std::size_t i) { return std::uint64_t{1} << (i % 64); }

  // Restricts every unassigned domain by v -> c, then assigns every vertex
  // left with a single candidate. Changes are trailed so a failed branch
  // can be undone.
  bool assign(VertexIndex v, VertexIndex c) {
    const std::size_t labels = t_.label_count() + 1;
    std::vector<std::pair<VertexIndex, VertexIndex>> pending{{v, c}};
    while (!pending.empty()) {
      const auto [x, y] = pending.back();
      pending.pop_back();
      if (image_[x] != kUnmapped) {
        if (image_[x] != y) return false;
        continue;
      }
      image_[x] = y;
      assigned_.push_back(x);
      for (VertexIndex u = 0; u < n_; ++u) {
        if (image_[u] != kUnmapped) continue;
        const std::uint64_t* row = &rows_[(y * labels + t_.at(u, x)) * words_];
        std::uint64_t* dom = &domains_[u * words_];
        int count = 0;
        std::size_t last = 0;
        for (std::size_t k = 0; k < words_; ++k) {
          const std::uint64_t next = dom[k] & row[k];
          if (next != dom[k]) {
            trail_.push_back({u * words_ + k, dom[k]});
            dom[k] = next;
          }
          if (next) {
            count += std::popcount(next);
            last = k;
          }
        }
        if (count == 0) return false;
        if (count == 1)
          pending.push_back({u, last * 64 + static_cast<VertexIndex>(std::countr_zero(dom[last]))});
      }
    }
    return true;
  }

  void undo(std::size_t mark, std::size_t assigned_mark) {
    while (trail_.size() > mark) {
      domains_[trail_.back().first] = trail_.back().second;
      trail_.pop_back();
    }
    while (assigned_.size() > assigned_mark) {
      image_[assigned_.back()] = kUnmapped;
      assigned_.pop_back();
    }
  }

  bool descend(VertexIndex v) {
    while (v < n_ && image_[v] != kUnmapped) ++v;
    if (v == n_) return true;
    for (std::size_t k = 0; k < words_; ++k) {
      std::uint64_t word = domains_[v * words_ + k];
      while (word) {
        const VertexIndex c = k * 64 + static_cast<VertexIndex>(std::countr_zero(word));
        word &= word - 1;
        if (++nodes_ > budget_) throw BudgetExhausted("extension search");
        const std::size_t mark = trail_.size();
        const std::size_t assigned_mark = assigned_.size();
        if (assign(v, c) && descend(v + 1)) return true;
        undo(mark, assigned_mark);
      }
    }
    return false;
  }

  const LabelTable& t_;
  std::size_t n_;
  std::size_t words_;
  std::uint64_t budget_;
  std::uint64_t nodes_ = 0;
  std::vector<std::uint64_t> rows_;
  std::vector<std::uint64_t> domains_;
  std::vector<std::pair<std::size_t, std::uint64_t>> trail_;
  std::vector<VertexIndex> assigned_;
  IndexMap image_;
};

void partial_autos(const LabelTable& t, const std::vector<VertexIndex>& copy, std::size_t pos,
                   IndexMap& f, std::vector<char>& used, std::vector<IndexMap>& out) {
  if (pos == copy.size()) {
    out.push_back(f);
    return;
  }
  const VertexIndex x = copy[pos];
  partial_autos(t, copy, pos + 1, f, used, out);
  for (auto y : copy) {
    if (used[y]) continue;
    bool ok = true;
    for (std::size_t q = 0; q < pos && ok; ++q) {
      const VertexIndex z = copy[q];
      if (f[z] != kUnmapped) ok = t.at(x, z) == t.at(y, f[z]);
    }
    if (!ok) continue;
    f[x] = y;
    used[y] = 1;
    partial_autos(t, copy, pos + 1, f, used, out);
    used[y] = 0;
    f[x] = kUnmapped;
  }
}

// Depth-first search for a path from `from` to `to` with at least two edges,
// at most `max_edges` edges and total weight below `limit`.
template <class W>
class ShortPathSearch {
 public:
  ShortPathSearch(const EdgeLabelledGraph& g, const LabelTable& t, std::vector<W> weights,
                  std::uint64_t budget)
      : g_(g), t_(t), weights_(std::move(weights)), budget_(budget), on_path_(g.size(), 0) {
    min_ = *std::min_element(weights_.begin() + 1, weights_.end());
  }

  std::optional<std::vector<VertexIndex>> find(VertexIndex from, VertexIndex to, W limit,
                                               std::size_t max_edges) {
    to_ = to;
    limit_ = limit;
    max_edges_ = max_edges;
    path_.assign(1, from);
    on_path_[from] = 1;
    const bool found = dfs(from, W{});
    on_path_[from] = 0;
    if (!found) return std::nullopt;
    path_.push_back(to);
    return path_;
  }

  std::uint64_t nodes() const { return nodes_; }

 private:
  bool dfs(VertexIndex x, W sum) {
    const std::size_t edges = path_.size() - 1;
    if (edges >= 1) {
      const auto close = t_.at(x, to_);
      if (close && sum + weights_[close] < limit_) return true;
    }
    if (edges + 2 > max_edges_ || !(sum + min_ + min_ < limit_)) return false;
    for (const auto& nb : g_.neighbors(x)) {
      const VertexIndex y = nb.vertex;
      if (y == to_ || on_path_[y]) continue;
      const W next = sum + weights_[t_.at(x, y)];
      if (!(next + min_ < limit_)) continue;
      if (++nodes_ > budget_) throw BudgetExhausted("cycle search");
      path_.push_back(y);
      on_path_[y] = 1;
      if (dfs(y, next)) return true;
      on_path_[y] = 0;
      path_.pop_back();
    }
    return false;
  }

  const EdgeLabelledGraph& g_;
  const LabelTable& t_;
  std::vector<W> weights_;
  std::uint64_t budget_;
  std::uint64_t nodes_ = 0;
  W min_{};
  W limit_{};
  VertexIndex to_ = 0;
  std::size_t max_edges_ = 0;
  std::vector<VertexIndex> path_;
  std::vector<char> on_path_;
};

template <class W>
std::optional<std::vector<VertexIndex>> nonmetric_cycle_with(const EdgeLabelledGraph& g,
                                                             const LabelTable& t,
                                                             std::vector<W> weights,
                                                             std::size_t max_vertices,
                                                             std::uint64_t budget) {
  ShortPathSearch<W> search(g, t, weights, budget);
  for (VertexIndex u = 0; u < g.size(); ++u)
    for (const auto& nb : g.neighbors(u)) {
      if (nb.vertex < u) continue;
      if (auto path = search.find(u, nb.vertex, weights[t.at(u, nb.vertex)], max_vertices - 1))
        return path;
    }
  return std::nullopt;
}

}  // namespace

// ---------------------------------------------------------------------------

bool VerificationReport::passed() const {
  return !budget_exhausted && first_failure() == nullptr;
}

const CheckResult* VerificationReport::first_failure() const {
  for (const auto& c : checks)
    if (!c.passed) return &c;
  return nullptr;
}

void VerificationReport::add(std::string name, bool ok, nlohmann::json counterexample) {
  checks.push_back({std::move(name), ok, ok ? nlohmann::json(nullptr) : std::move(counterexample)});
}

nlohmann::json VerificationReport::to_json() const {
  nlohmann::json cs = nlohmann::json::array();
  for (const auto& c : checks) {
    nlohmann::json entry = {{"name", c.name}, {"passed", c.passed}};
    if (!c.passed) entry["counterexample"] = c.counterexample;
    cs.push_back(std::move(entry));
  }
  return {{"passed", passed()},
          {"checks", std::move(cs)},
          {"totals", {{"maps_examined", maps_examined}, {"search_nodes", search_nodes}}},
          {"budget_exhausted", budget_exhausted}};
}

std::string VerificationReport::to_text() const {
  std::ostringstream os;
  for (const auto& c : checks) {
    os << (c.passed ? "ok    " : "FAIL  ") << c.name << '\n';
    if (!c.passed) os << "      counterexample: " << c.counterexample.dump() << '\n';
  }
  os << maps_examined << " maps examined, " << search_nodes << " search nodes";
  if (budget_exhausted) os << ", budget exhausted";
  os << '\n';
  if (first_failure())
    os << "verification FAILED\n";
  else if (budget_exhausted)
    os << "verification incomplete: budget exhausted\n";
  else
    os << "verification passed\n";
  return os.str();
}

bool verifier_is_automorphism(const EdgeLabelledGraph& b, const IndexMap& f) {
  if (f.size() != b.size()) return false;
  for (auto v : f)
    if (v == kUnmapped) return false;
  return partial_ok(LabelTable(b), f);
}

bool verifier_is_partial_automorphism(const EdgeLabelledGraph& b, const IndexMap& f) {
  return partial_ok(LabelTable(b), f);
}

SearchResult search_extension(const EdgeLabelledGraph& b, const IndexMap& phi,
                              std::uint64_t budget) {
  LabelTable t(b);
  if (!partial_ok(t, phi)) throw PreconditionError("not a partial automorphism");
  return ExtensionSearch(t, budget).run(phi);
}

std::optional<PartialMap> search_extension(const EdgeLabelledGraph& b, const PartialMap& phi,
                                           std::uint64_t budget, SearchStatus* status) {
  IndexMap f(b.size(), kUnmapped);
  for (const auto& [x, y] : phi.pairs()) {
    const VertexIndex i = b.index_of(x);
    if (f[i] != kUnmapped) throw PreconditionError("not a partial automorphism");
    f[i] = b.index_of(y);
  }
  const auto r = search_extension(b, f, budget);
  if (status) *status = r.status;
  if (r.status == SearchStatus::exhausted) throw BudgetExhausted("extension search");
  if (r.status == SearchStatus::absent) return std::nullopt;
  std::vector<PartialMap::Pair> pairs;
  for (VertexIndex v = 0; v < b.size(); ++v) pairs.emplace_back(b.name(v), b.name(r.extension[v]));
  return PartialMap(std::move(pairs));
}

std::vector<IndexMap> verifier_partial_automorphisms(const EdgeLabelledGraph& b,
                                                     const std::vector<VertexIndex>& copy) {
  LabelTable t(b);
  std::vector<IndexMap> out;
  IndexMap f(b.size(), kUnmapped);
  std::vector<char> used(b.size(), 0);
  partial_autos(t, copy, 0, f, used, out);
  return out;
}

VerificationReport verify_eppa(const EdgeLabelledGraph& b, const std::vector<VertexIndex>& copy,
                               std::uint64_t budget) {
  VerificationReport report;
  LabelTable t(b);
  nlohmann::json missing = nullptr;
  for (const auto& phi : verifier_partial_automorphisms(b, copy)) {
    ++report.maps_examined;
    const auto r = ExtensionSearch(t, budget).run(phi);
    report.search_nodes += r.nodes;
    if (r.status == SearchStatus::exhausted) {
      report.budget_exhausted = true;
    } else if (r.status == SearchStatus::absent && missing.is_null()) {
      missing = {{"map", map_json(b, phi)}, {"reason", "no automorphism extends this map"}};
    }
  }
  report.add("every partial automorphism of the copy extends", missing.is_null(), missing);
  return report;
}

std::optional<std::vector<VertexIndex>> verifier_metric_violation(const EdgeLabelledGraph& g) {
  LabelTable t(g);
  const std::size_t n = g.size();
  const std::size_t l = t.label_count() + 1;
  // fits[a][b][c]: label c <= label a + label b.
  std::vector<char> fits(l * l * l, 0);
  for (std::uint16_t a = 1; a < l; ++a)
    for (std::uint16_t b = 1; b < l; ++b)
      for (std::uint16_t c = 1; c < l; ++c)
        fits[(a * l + b) * l + c] = t.label(c) <= t.label(a) + t.label(b);
  for (VertexIndex x = 0; x < n; ++x)
    for (VertexIndex y = x + 1; y < n; ++y)
      if (!t.at(x, y)) return std::vector<VertexIndex>{x, y, x};
  for (VertexIndex x = 0; x < n; ++x)
    for (VertexIndex y = x + 1; y < n; ++y) {
      const std::size_t c = t.at(x, y);
      for (VertexIndex z = 0; z < n; ++z) {
        if (z == x || z == y) continue;
        if (!fits[(t.at(x, z) * l + t.at(z, y)) * l + c]) return std::vector<VertexIndex>{x, y, z};
      }
    }
  return std::nullopt;
}

std::optional<std::vector<VertexIndex>> verifier_nonmetric_cycle(const EdgeLabelledGraph& g,
                                                                 std::size_t max_vertices,
                                                                 std::uint64_t budget,
                                                                 bool& exhausted) {
  exhausted = false;
  if (max_vertices < 3 || g.edge_count() == 0) return std::nullopt;
  LabelTable t(g);
  try {
    // Exact integer weights when the common denominator allows it.
    std::int64_t den = 1;
    bool fits = true;
    for (std::uint16_t id = 1; id <= t.label_count() && fits; ++id) {
      const __int128 next = static_cast<__int128>(den) / std::gcd(den, t.label(id).denominator()) *
                            t.label(id).denominator();
      fits = next < (std::int64_t{1} << 40);
      if (fits) den = static_cast<std::int64_t>(next);
    }
    std::vector<__int128> scaled(t.label_count() + 1, 0);
    for (std::uint16_t id = 1; id <= t.label_count() && fits; ++id) {
      scaled[id] = static_cast<__int128>(t.label(id).numerator()) * (den / t.label(id).denominator());
      fits = scaled[id] < (static_cast<__int128>(1) << 80);
    }
    if (fits) return nonmetric_cycle_with<__int128>(g, t, std::move(scaled), max_vertices, budget);
    std::vector<Label> exact(t.label_count() + 1);
    for (std::uint16_t id = 1; id <= t.label_count(); ++id) exact[id] = t.label(id);
    return nonmetric_cycle_with<Label>(g, t, std::move(exact), max_vertices, budget);
  } catch (const BudgetExhausted&) {
    exhausted = true;
    return std::nullopt;
  }
}

void verify_level(VerificationReport& report, int upper_level, const EdgeLabelledGraph& a,
                  const EdgeLabelledGraph& lower, const IndexMap& lower_copy,
                  const EdgeLabelledGraph& upper, const IndexMap& upper_copy,
                  const std::vector<VertexIndex>& projection, std::uint64_t budget) {
  const std::string tag = "level " + std::to_string(upper_level) + ": ";

  nlohmann::json bad = nullptr;
  if (projection.size() != upper.size()) bad = "projection has the wrong size";
  for (VertexIndex v = 0; v < upper.size() && bad.is_null(); ++v) {
    if (projection[v] >= lower.size()) {
      bad = {{"vertex", upper.name(v)}, {"reason", "projects outside the lower level"}};
      break;
    }
    for (const auto& nb : upper.neighbors(v)) {
      const auto below = lower.label(projection[v], projection[nb.vertex]);
      if (!below || *below != nb.label) {
        bad = {{"edge", {upper.name(v), upper.name(nb.vertex), nb.label.to_string()}},
               {"reason", "edge does not project onto an edge with the same label"}};
        break;
      }
    }
  }
  report.add(tag + "projection preserves labels", bad.is_null(), bad);

  bad = nullptr;
  for (VertexIndex x = 0; x < a.size() && bad.is_null(); ++x) {
    if (upper_copy[x] >= upper.size()) {
      bad = {{"vertex", a.name(x)}, {"reason", "not embedded"}};
    } else if (bad.is_null() && projection.size() == upper.size() &&
               projection[upper_copy[x]] != lower_copy[x]) {
      bad = {{"vertex", a.name(x)},
             {"copy", upper.name(upper_copy[x])},
             {"reason", "copy does not project onto the lower copy"}};
    }
    for (VertexIndex y = x + 1; y < a.size() && bad.is_null(); ++y) {
      if (upper_copy[y] >= upper.size()) continue;
      const auto want = a.label(x, y);
      const auto got = upper.label(upper_copy[x], upper_copy[y]);
      if (want != got)
        bad = {{"pair", {upper.name(upper_copy[x]), upper.name(upper_copy[y])}},
               {"expected", want ? want->to_string() : "none"},
               {"found", got ? got->to_string() : "none"},
               {"reason", "copy of A is not isometric to A"}};
    }
  }
  report.add(tag + "copy of A embedded", bad.is_null(), bad);

  bool exhausted = false;
  const auto cycle = verifier_nonmetric_cycle(upper, static_cast<std::size_t>(upper_level),
                                              budget, exhausted);
  if (exhausted) report.budget_exhausted = true;
  report.add(tag + "no non-metric cycle on at most " + std::to_string(upper_level) + " vertices",
             !cycle.has_value(), cycle ? nlohmann::json{{"cycle", names_of(upper, *cycle)}}
                                       : nlohmann::json(nullptr));
}

VerificationReport cross_check(const Witness& w, std::uint64_t budget) {
  VerificationReport report;
  const auto& a = w.input;

  auto metric = [&](const char* what, const EdgeLabelledGraph& g) {
    const auto v = verifier_metric_violation(g);
    report.add(std::string(what) + " is a metric space", !v.has_value(),
               v ? nlohmann::json{{"triple", names_of(g, *v)}} : nlohmann::json(nullptr));
  };
  metric("input", a);
  metric("final", w.final);

  // The copy of A in the final space.
  nlohmann::json bad = nullptr;
  if (w.final_embedding.size() != a.size()) bad = "final embedding has the wrong size";
  for (VertexIndex x = 0; x < a.size() && bad.is_null(); ++x)
    for (VertexIndex y = x + 1; y < a.size() && bad.is_null(); ++y) {
      const auto fx = w.final_embedding[x], fy = w.final_embedding[y];
      if (fx >= w.final.size() || fy >= w.final.size() || a.label(x, y) != w.final.label(fx, fy))
        bad = {{"pair", {a.name(x), a.name(y)}}, {"reason", "distance not preserved in final"}};
    }
  report.add("final embedding is an isometric copy of A", bad.is_null(), bad);

  if (!w.degenerate()) {
    if (w.top_level != static_cast<int>(w.levels.size()) + 2) {
      report.add("level count matches N", false, {{"N", w.top_level}, {"levels", w.levels.size() + 1}});
      return report;
    }
    // Level 2 only needs the copy; cycles on two vertices do not exist.
    bad = nullptr;
    const auto& c2 = w.level_graph(2);
    const auto& e2 = w.level_embedding(2);
    for (VertexIndex x = 0; x < a.size() && bad.is_null(); ++x)
      for (VertexIndex y = x + 1; y < a.size() && bad.is_null(); ++y)
        if (a.label(x, y) != c2.label(e2[x], e2[y]))
          bad = {{"pair", {a.name(x), a.name(y)}}, {"reason", "copy of A is not isometric to A"}};
    report.add("level 2: copy of A embedded", bad.is_null(), bad);

    for (int i = 3; i <= w.top_level; ++i)
      verify_level(report, i, a, w.level_graph(i - 1), w.level_embedding(i - 1), w.level_graph(i),
                   w.level_embedding(i), w.levels[static_cast<std::size_t>(i - 3)].projection(),
                   budget);

    // Component of the copy, recomputed by breadth-first search.
    const auto& top = w.level_graph(w.top_level);
    const auto& copy = w.level_embedding(w.top_level);
    std::vector<char> seen(top.size(), 0);
    std::deque<VertexIndex> queue{copy.front()};
    seen[copy.front()] = 1;
    while (!queue.empty()) {
      const auto v = queue.front();
      queue.pop_front();
      for (const auto& nb : top.neighbors(v))
        if (!seen[nb.vertex]) {
          seen[nb.vertex] = 1;
          queue.push_back(nb.vertex);
        }
    }
    std::vector<VertexIndex> component;
    for (VertexIndex v = 0; v < top.size(); ++v)
      if (seen[v]) component.push_back(v);
    const bool same = component == w.component;
    report.add("component of the copy of A", same,
               same ? nlohmann::json(nullptr)
                    : nlohmann::json{{"expected_size", component.size()},
                                     {"stored_size", w.component.size()}});

    bad = nullptr;
    if (w.component.size() != w.final.size()) bad = "final and component differ in size";
    for (VertexIndex p = 0; p < w.component.size() && bad.is_null(); ++p) {
      if (w.component[p] >= top.size()) {
        bad = "component vertex out of range";
        break;
      }
      for (const auto& nb : top.neighbors(w.component[p])) {
        auto it = std::lower_bound(w.component.begin(), w.component.end(), nb.vertex);
        if (it == w.component.end() || *it != nb.vertex) continue;
        const auto q = static_cast<VertexIndex>(it - w.component.begin());
        if (w.final.label(p, q) != nb.label) {
          bad = {{"edge", {top.name(w.component[p]), top.name(nb.vertex), nb.label.to_string()}},
                 {"reason", "edge label changed by the completion"}};
          break;
        }
      }
    }
    for (VertexIndex x = 0; x < a.size() && bad.is_null(); ++x) {
      auto it = std::lower_bound(w.component.begin(), w.component.end(), copy[x]);
      if (it == w.component.end() || *it != copy[x] ||
          static_cast<VertexIndex>(it - w.component.begin()) != w.final_embedding[x])
        bad = {{"vertex", a.name(x)}, {"reason", "final embedding does not follow the top copy"}};
    }
    report.add("completion keeps the edges of the component", bad.is_null(), bad);
  }

  // A fresh construction from the input must reproduce the witness.
  try {
    const auto fresh = witness_to_json(build_witness(a, w.config));
    const auto stored = witness_to_json(w);
    nlohmann::json diff = nullptr;
    for (const auto& [key, value] : fresh.items())
      if (!stored.contains(key) || stored.at(key) != value) {
        diff = {{"field", key}, {"reason", "differs from a fresh construction"}};
        break;
      }
    report.add("witness matches a fresh construction", diff.is_null(), diff);
  } catch (const std::exception& ex) {
    report.add("witness matches a fresh construction", false, {{"reason", ex.what()}});
  }

  // Every partial isometry of the copy: the constructive extension and the
  // oracle search.
  std::vector<VertexIndex> copy(w.final_embedding.begin(), w.final_embedding.end());
  for (auto v : copy)
    if (v >= w.final.size()) return report;
  std::sort(copy.begin(), copy.end());
  LabelTable t(w.final);
  nlohmann::json constructive = nullptr;
  nlohmann::json oracle = nullptr;
  for (const auto& phi : verifier_partial_automorphisms(w.final, copy)) {
    ++report.maps_examined;
    if (constructive.is_null()) {
      try {
        const auto ext = extend_isometry(w, phi);
        bool agrees = ext.size() == phi.size();
        for (VertexIndex v = 0; v < phi.size() && agrees; ++v)
          agrees = phi[v] == kUnmapped || ext[v] == phi[v];
        bool total = ext.size() == w.final.size();
        for (auto v : ext) total = total && v != kUnmapped;
        if (!agrees || !total || !partial_ok(t, ext))
          constructive = {{"map", map_json(w.final, phi)},
                          {"reason", "extension is not an automorphism extending the map"}};
      } catch (const std::exception& ex) {
        constructive = {{"map", map_json(w.final, phi)}, {"reason", ex.what()}};
      }
    }
    const auto r = ExtensionSearch(t, budget).run(phi);
    report.search_nodes += r.nodes;
    if (r.status == SearchStatus::exhausted) report.budget_exhausted = true;
    if (r.status == SearchStatus::absent && oracle.is_null())
      oracle = {{"map", map_json(w.final, phi)}, {"reason", "no automorphism extends this map"}};
  }
  report.add("extend_isometry extends every partial isometry of the copy", constructive.is_null(),
             constructive);
  report.add("search finds an extension for every partial isometry of the copy", oracle.is_null(),
             oracle);
  return report;
}

}  // namespace eppa
