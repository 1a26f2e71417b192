// Copyright 2026 The zpi Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "zpi/surgery/surgery.hpp"

#include <algorithm>
#include <chrono>
#include <exception>
#include <functional>
#include <numeric>
#include <thread>

#include "zpi/error.hpp"
#include "zpi/linking/pairing.hpp"
#include "zpi/trace/trace.hpp"

namespace zpi::surgery {

using diagrams::DecoratedGraph;

namespace {

std::string cell(const char* kind, const Leaf& x) {
  return std::string(kind) + std::to_string(x.first) + "_" + std::to_string(x.second);
}

constexpr std::array<std::array<int, 3>, 6> kPerms{{{0, 1, 2}, {1, 2, 0}, {2, 0, 1}, {0, 2, 1}, {2, 1, 0}, {1, 0, 2}}};
constexpr std::array<int, 6> kPermSign{1, 1, 1, -1, -1, -1};

// Linking tables per edge label, flattened to leaf indices 3v + s.
struct DenseTables {
  std::size_t leaves = 0;
  std::vector<std::vector<const LaurentPoly*>> by_label;

  const LaurentPoly* at(std::size_t label, int x, int y) const {
    return by_label[label][static_cast<std::size_t>(x) * leaves + static_cast<std::size_t>(y)];
  }
};

DenseTables densify(const YLinkSurgeryData& data, const std::vector<const LinkingTable*>& tables) {
  DenseTables d;
  const int nv = data.n_vertices();
  d.leaves = static_cast<std::size_t>(3 * nv);
  const std::size_t labels = static_cast<std::size_t>(3 * nv / 2);
  std::map<const LinkingTable*, std::vector<const LaurentPoly*>> cache;
  for (std::size_t i = 0; i < labels; ++i) {
    const LinkingTable* t = tables.empty() ? &data.lk_hat : tables.at(i);
    auto it = cache.find(t);
    if (it == cache.end()) {
      std::vector<const LaurentPoly*> flat(d.leaves * d.leaves, nullptr);
      for (const auto& [pair, value] : *t) {
        const auto& [x, y] = pair;
        if (value.is_zero()) continue;
        if (x.first < 0 || x.first >= nv || y.first < 0 || y.first >= nv || x.second < 0 || x.second > 2 ||
            y.second < 0 || y.second > 2) {
          throw InvalidInput("linking table entry refers to a leaf outside the Y-link");
        }
        flat[static_cast<std::size_t>(3 * x.first + x.second) * d.leaves +
             static_cast<std::size_t>(3 * y.first + y.second)] = &value;
      }
      it = cache.emplace(t, std::move(flat)).first;
    }
    d.by_label.push_back(it->second);
  }
  return d;
}

class Matcher {
 public:
  Matcher(const LabeledGraphH& h, const YLinkSurgeryData& data, const DenseTables& tables, const GraphSpaceBasis& basis)
      : h_(h), data_(data), tables_(tables), basis_(basis), slot_(h.edges.size() * 2, -1) {
    closing_.resize(static_cast<std::size_t>(h.n_vertices));
    for (std::size_t i = 0; i < h.edges.size(); ++i) {
      const auto [u, v] = h.edges[i];
      closing_[static_cast<std::size_t>(std::max(u, v))].push_back(i);
    }
    for (int v = 0; v < h.n_vertices; ++v) halves_.push_back(h.halves_at(v));
  }

  SHResult run(const std::vector<int>& sigma) {
    sigma_ = &sigma;
    result_ = SHResult{basis_.zero(), 0};
    values_.assign(h_.edges.size(), nullptr);
    visit(0, 1);
    return std::move(result_);
  }

 private:
  void visit(int v, int sign) {
    if (v == h_.n_vertices) {
      finish(sign);
      return;
    }
    const auto& halves = halves_[static_cast<std::size_t>(v)];
    for (std::size_t p = 0; p < kPerms.size(); ++p) {
      for (std::size_t k = 0; k < 3; ++k) slot_[static_cast<std::size_t>(halves[k])] = kPerms[p][k];
      bool alive = true;
      for (std::size_t e : closing_[static_cast<std::size_t>(v)]) {
        const auto [u, w] = h_.edges[e];
        const int x = 3 * (*sigma_)[static_cast<std::size_t>(u)] + slot_[2 * e];
        const int y = 3 * (*sigma_)[static_cast<std::size_t>(w)] + slot_[2 * e + 1];
        values_[e] = tables_.at(e, x, y);
        if (values_[e] == nullptr) {
          alive = false;
          break;
        }
      }
      if (alive) visit(v + 1, sign * kPermSign[p]);
    }
  }

  void finish(int sign) {
    Rational coefficient = sign;
    for (int v = 0; v < h_.n_vertices; ++v) {
      coefficient *= data_.triple[static_cast<std::size_t>((*sigma_)[static_cast<std::size_t>(v)])];
    }
    if (coefficient == 0) return;
    std::vector<LaurentPoly> decorations;
    decorations.reserve(values_.size());
    for (const LaurentPoly* x : values_) decorations.push_back(*x);
    const Coordinates term = basis_.reduce(h_.with_decorations(std::move(decorations)));
    ++result_.nonzero_assignments;
    for (std::size_t i = 0; i < term.size(); ++i) {
      if (term[i] != 0) result_.value[i] += coefficient * term[i];
    }
  }

  const LabeledGraphH& h_;
  const YLinkSurgeryData& data_;
  const DenseTables& tables_;
  const GraphSpaceBasis& basis_;
  std::vector<std::vector<std::size_t>> closing_;
  std::vector<std::array<int, 3>> halves_;
  std::vector<int> slot_;
  std::vector<const LaurentPoly*> values_;
  const std::vector<int>* sigma_ = nullptr;
  SHResult result_;
};

void check_inputs(const YLinkSurgeryData& data, const GraphSpaceBasis& basis) {
  if (data.n_vertices() != basis.options().degree) {
    throw InvalidInput("Y-link of degree " + std::to_string(data.n_vertices()) + " evaluated in a basis of degree " +
                       std::to_string(basis.options().degree));
  }
  if (data.group != basis.group()) throw DomainMismatch("Y-link over " + data.group.name() + ", basis over " + basis.group().name());
  if (data.triple.size() != static_cast<std::size_t>(data.n_vertices())) {
    throw InvalidInput("one triple product per vertex required");
  }
}

EvalReport evaluate(const YLinkSurgeryData& data, const GraphSpaceBasis& basis, const EvalOptions& options,
                    const std::vector<const LinkingTable*>& tables) {
  check_inputs(data, basis);
  const auto start = std::chrono::steady_clock::now();
  const int nv = data.n_vertices();
  const DenseTables dense = densify(data, tables);
  EvalReport report;
  const std::vector<LabeledGraphH> graphs = enumerate_graphs_h(nv);
  report.graphs_h = graphs.size();

  std::vector<std::vector<int>> sigmas;
  std::vector<int> sigma(static_cast<std::size_t>(nv));
  std::iota(sigma.begin(), sigma.end(), 0);
  do sigmas.push_back(sigma);
  while (std::next_permutation(sigma.begin(), sigma.end()));
  report.pairs = static_cast<std::uint64_t>(graphs.size()) * sigmas.size();
  if (report.pairs > options.max_pairs) {
    throw ResourceLimit(std::to_string(report.pairs) + " (H, sigma) pairs exceed the bound " +
                        std::to_string(options.max_pairs));
  }

  const unsigned jobs = std::max(1U, std::min<unsigned>(options.jobs, static_cast<unsigned>(graphs.size())));
  struct Partial {
    Coordinates raw;
    std::uint64_t matched = 0;
    std::uint64_t terms = 0;
    std::exception_ptr error;
  };
  std::vector<Partial> partials(jobs);
  auto work = [&](unsigned t) {
    Partial& out = partials[t];
    out.raw = basis.zero();
    try {
      for (std::size_t g = t; g < graphs.size(); g += jobs) {
        if (options.time_budget > 0) {
          const std::chrono::duration<double> spent = std::chrono::steady_clock::now() - start;
          if (spent.count() > options.time_budget) throw ResourceLimit("surgery enumeration exceeded its time budget");
        }
        Matcher m(graphs[g], data, dense, basis);
        for (const auto& s : sigmas) {
          SHResult r = m.run(s);
          if (r.nonzero_assignments == 0) continue;
          ++out.matched;
          out.terms += r.nonzero_assignments;
          out.raw = trace::add(out.raw, r.value);
        }
      }
    } catch (...) {
      out.error = std::current_exception();
    }
  };
  if (jobs == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < jobs; ++t) pool.emplace_back(work, t);
    for (auto& th : pool) th.join();
  }
  report.raw = basis.zero();
  for (auto& p : partials) {
    if (p.error) std::rethrow_exception(p.error);
    report.raw = trace::add(report.raw, p.raw);
    report.matched_pairs += p.matched;
    report.nonzero_terms += p.terms;
  }
  report.value = trace::scale(trace::prefactor(nv), report.raw);
  return report;
}

std::vector<const LinkingTable*> tables_for(const LeafModel& model, const std::vector<int>& signs, std::size_t labels) {
  if (signs.size() != labels) {
    throw InvalidInput("sign vector of length " + std::to_string(signs.size()) + " for " + std::to_string(labels) +
                       " edges");
  }
  const bool same = model.forward == model.adjoint;
  std::vector<const LinkingTable*> out;
  for (int s : signs) {
    if (s != 1 && s != -1) throw InvalidInput("signs must be +1 or -1");
    out.push_back(s == 1 || same ? &model.forward : &model.adjoint);
  }
  return out;
}

}  // namespace

const LaurentPoly* YLinkSurgeryData::lk(const Leaf& a, const Leaf& b) const {
  auto it = lk_hat.find({a, b});
  return it == lk_hat.end() ? nullptr : &it->second;
}

bool YLinkSurgeryData::is_bar_symmetric() const {
  for (const auto& [pair, value] : lk_hat) {
    const LaurentPoly* mirror = lk(pair.second, pair.first);
    const LaurentPoly expected = group.normalize(value.involute());
    if (mirror == nullptr ? !expected.is_zero() : group.normalize(*mirror) != expected) return false;
  }
  return true;
}

YLinkSurgeryData realize_ylink(const DecoratedGraph& gamma, const GroupSpec& group) {
  gamma.validate();
  YLinkSurgeryData data{gamma, group, {}, std::vector<Rational>(static_cast<std::size_t>(gamma.n_vertices), 1)};
  const auto owner = gamma.vertex_of();
  auto leaf_of = [&](int half) {
    const int v = owner[static_cast<std::size_t>(half)];
    const auto& c = gamma.cyclic[static_cast<std::size_t>(v)];
    return Leaf{v, static_cast<int>(std::find(c.begin(), c.end(), half) - c.begin())};
  };
  for (std::size_t i = 0; i < gamma.edges.size(); ++i) {
    const LaurentPoly alpha = group.normalize(gamma.decorations[i]);
    if (!alpha.is_monomial() || alpha.terms().begin()->second != 1) {
      throw InvalidInput("edge " + std::to_string(i) + " decoration " + alpha.to_string() +
                         " is not a single group element");
    }
    const Leaf x = leaf_of(gamma.edges[i].first);
    const Leaf y = leaf_of(gamma.edges[i].second);
    data.lk_hat[{x, y}] = alpha;
    data.lk_hat[{y, x}] = group.normalize(alpha.involute());
  }
  return data;
}

YLinkSurgeryData realize_ylink(const diagrams::MonomialGraph& gamma, const GroupSpec& group) {
  return realize_ylink(diagrams::to_decorated(gamma, group), group);
}

LaurentPoly edge_factor(const YLinkSurgeryData& data, int j, int k) {
  LaurentPoly sum = LaurentPoly::constant(data.group.arity(), 0);
  for (int a = 0; a < 3; ++a) {
    for (int b = 0; b < 3; ++b) {
      if (const LaurentPoly* x = data.lk({j, a}, {k, b})) sum += *x;
    }
  }
  return data.group.normalize(sum);
}

std::array<int, 3> LabeledGraphH::halves_at(int v) const {
  std::array<int, 3> out{};
  std::size_t n = 0;
  for (std::size_t i = 0; i < edges.size(); ++i) {
    for (int end = 0; end < 2; ++end) {
      if ((end == 0 ? edges[i].first : edges[i].second) != v) continue;
      if (n == 3) throw InvalidInput("vertex " + std::to_string(v) + " has degree above 3");
      out[n++] = static_cast<int>(2 * i) + end;
    }
  }
  if (n != 3) throw InvalidInput("vertex " + std::to_string(v) + " has degree " + std::to_string(n));
  return out;
}

DecoratedGraph LabeledGraphH::with_decorations(std::vector<LaurentPoly> decorations) const {
  DecoratedGraph g;
  g.n_vertices = n_vertices;
  for (int v = 0; v < n_vertices; ++v) g.cyclic.push_back(halves_at(v));
  for (std::size_t i = 0; i < edges.size(); ++i) {
    g.edges.emplace_back(static_cast<int>(2 * i), static_cast<int>(2 * i + 1));
  }
  g.decorations = std::move(decorations);
  return g;
}

std::vector<LabeledGraphH> enumerate_graphs_h(int n_vertices, std::size_t cap) {
  if (n_vertices <= 0 || n_vertices % 2 != 0) throw InvalidInput("H needs an even, positive number of vertices");
  const std::size_t n_edges = static_cast<std::size_t>(3 * n_vertices / 2);
  std::vector<LabeledGraphH> out;
  LabeledGraphH h{n_vertices, {}};
  std::vector<int> degree(static_cast<std::size_t>(n_vertices), 0);
  std::function<void()> extend = [&] {
    if (h.edges.size() == n_edges) {
      if (out.size() == cap) throw ResourceLimit("more than " + std::to_string(cap) + " graphs H");
      out.push_back(h);
      return;
    }
    for (int u = 0; u < n_vertices; ++u) {
      for (int v = 0; v < n_vertices; ++v) {
        const std::size_t su = static_cast<std::size_t>(u);
        const std::size_t sv = static_cast<std::size_t>(v);
        if (u == v ? degree[su] > 1 : degree[su] > 2 || degree[sv] > 2) continue;
        ++degree[su];
        ++degree[sv];
        h.edges.emplace_back(u, v);
        extend();
        h.edges.pop_back();
        --degree[su];
        --degree[sv];
      }
    }
  };
  extend();
  return out;
}

LeafModel LeafModel::build(const YLinkSurgeryData& data) {
  const int nv = data.n_vertices();
  const auto field = complex::FieldSpec::rational_functions(data.group.arity());
  complex::BasedChainComplex c{field, {{}, {}, {}}, {}};
  for (int v = 0; v < nv; ++v) {
    for (int s = 0; s < 3; ++s) {
      c.basis[1].push_back(cell("c", {v, s}));
      c.basis[2].push_back(cell("D", {v, s}));
    }
  }
  const std::size_t leaves = c.basis[1].size();
  c.boundary = {complex::Matrix(field, 0, 0), complex::Matrix(field, 0, leaves), complex::Matrix::identity(field, leaves)};
  const complex::Propagator g = complex::solve_propagator(c);
  const complex::Propagator g_star = complex::adjoint_propagator(c, g);

  // Each disk meets the other leaves with the given linking numbers.
  linking::IntersectionTable table;
  table.arity = data.group.arity();
  for (const auto& [pair, w] : data.lk_hat) {
    const auto& [x, y] = pair;
    table.pairs.push_back({cell("D", x), cell("c", y), w});
    table.pairs.push_back({cell("c", x), cell("D", y), w});
  }
  LeafModel model;
  for (const auto& [pair, w] : data.lk_hat) {
    const auto& [x, y] = pair;
    const auto fwd = linking::lkhat_from_propagator(table, c, g, cell("c", x), cell("c", y));
    const auto adj = linking::lkhat_from_propagator(table, c, g_star, cell("D", x), cell("D", y));
    model.forward[pair] = trace::to_group_ring(fwd, data.group);
    model.adjoint[pair] = trace::to_group_ring(adj, data.group);
  }
  return model;
}

SHResult match_SH(const LabeledGraphH& h, const std::vector<int>& sigma, const YLinkSurgeryData& data,
                  const GraphSpaceBasis& basis, const std::vector<const LinkingTable*>& tables) {
  check_inputs(data, basis);
  if (h.n_vertices != data.n_vertices() || sigma.size() != static_cast<std::size_t>(h.n_vertices)) {
    throw InvalidInput("H, sigma and the Y-link must have the same number of vertices");
  }
  std::vector<int> sorted = sigma;
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    if (sorted[i] != static_cast<int>(i)) throw InvalidInput("sigma is not a permutation");
  }
  const DenseTables dense = densify(data, tables);
  Matcher m(h, data, dense, basis);
  return m.run(sigma);
}

EvalReport eval_Z_bracket(const YLinkSurgeryData& data, const GraphSpaceBasis& basis, const EvalOptions& options) {
  if (options.signs.empty()) return evaluate(data, basis, options, {});
  const LeafModel model = LeafModel::build(data);
  return evaluate(data, basis, options,
                  tables_for(model, options.signs, static_cast<std::size_t>(3 * data.n_vertices() / 2)));
}

Coordinates eval_Ztilde_bracket(const YLinkSurgeryData& data, const GraphSpaceBasis& basis,
                                const EvalOptions& options) {
  check_inputs(data, basis);
  const LeafModel model = LeafModel::build(data);
  const std::size_t labels = static_cast<std::size_t>(3 * data.n_vertices() / 2);
  std::map<std::vector<const LinkingTable*>, Coordinates> memo;
  return trace::sum_over_signs(static_cast<int>(labels), [&](const std::vector<int>& signs) {
    const auto tables = tables_for(model, signs, labels);
    auto it = memo.find(tables);
    if (it == memo.end()) it = memo.emplace(tables, evaluate(data, basis, options, tables).value).first;
    return it->second;
  });
}

}  // namespace zpi::surgery
