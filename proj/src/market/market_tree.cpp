#include "attainrisk/market/market_tree.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <unordered_map>

#include "attainrisk/detail/first_accepted.hpp"
#include "attainrisk/errors.hpp"
#include "attainrisk/lp/linear_algebra.hpp"
#include "attainrisk/lp/vertex_enumeration.hpp"

namespace attainrisk {

MarketTree::MarketTree(std::vector<MarketNode> nodes,
                       const std::map<std::string, Rational>& leaf_weights)
    : nodes_(std::move(nodes)) {
  if (nodes_.empty()) throw ValidationError("market tree has no nodes");
  const auto count = nodes_.size();
  std::unordered_map<std::string, std::size_t> index;
  for (std::size_t v = 0; v < count; ++v) {
    if (!index.emplace(nodes_[v].id, v).second) {
      throw ValidationError("duplicate node id \"" + nodes_[v].id + "\"");
    }
  }
  assets_ = nodes_.front().prices.size();
  children_.assign(count, {});
  parent_.assign(count, count);
  std::size_t roots = 0;
  for (std::size_t v = 0; v < count; ++v) {
    const auto& node = nodes_[v];
    if (node.prices.size() != assets_) {
      throw ValidationError("node \"" + node.id + "\" has " + std::to_string(node.prices.size()) +
                            " prices, expected " + std::to_string(assets_));
    }
    if (!node.parent) {
      ++roots;
      root_ = v;
      continue;
    }
    const auto it = index.find(*node.parent);
    if (it == index.end()) {
      throw ValidationError("node \"" + node.id + "\" has unknown parent \"" + *node.parent + "\"");
    }
    parent_[v] = it->second;
    children_[it->second].push_back(v);
  }
  if (roots != 1) throw ValidationError("market tree needs exactly one root, found " + std::to_string(roots));
  if (nodes_[root_].time != 0) throw ValidationError("root must be at time 0");

  // Breadth-first from the root; also detects cycles and unreachable nodes.
  std::vector<std::size_t> order;
  std::deque<std::size_t> queue{root_};
  while (!queue.empty()) {
    const auto v = queue.front();
    queue.pop_front();
    order.push_back(v);
    for (auto c : children_[v]) {
      if (nodes_[c].time != nodes_[v].time + 1) {
        throw ValidationError("node \"" + nodes_[c].id + "\" time is not its parent's time + 1");
      }
      queue.push_back(c);
    }
  }
  if (order.size() != count) throw ValidationError("market tree is not connected to its root");

  std::optional<int> terminal;
  for (auto v : order) {
    if (children_[v].empty()) continue;
    if (children_[v].size() < 2) {
      throw ValidationError("internal node \"" + nodes_[v].id + "\" has fewer than two children");
    }
    internal_.push_back(v);
  }
  for (std::size_t v = 0; v < count; ++v) {
    if (!children_[v].empty()) continue;
    if (terminal && *terminal != nodes_[v].time) {
      throw ValidationError("leaves are not all at the same terminal time");
    }
    terminal = nodes_[v].time;
    leaves_.push_back(v);
  }

  std::vector<std::string> labels;
  RationalVector weights;
  for (auto leaf : leaves_) {
    const auto it = leaf_weights.find(nodes_[leaf].id);
    if (it == leaf_weights.end()) {
      throw ValidationError("leaf \"" + nodes_[leaf].id + "\" has no weight");
    }
    labels.push_back(nodes_[leaf].id);
    weights.push_back(it->second);
  }
  if (leaf_weights.size() != leaves_.size()) {
    throw ValidationError("leaf_weights names nodes that are not leaves");
  }
  space_ = FiniteProbabilitySpace::create(std::move(labels), std::move(weights));

  atoms_below_.assign(count, {});
  for (std::size_t atom = 0; atom < leaves_.size(); ++atom) {
    for (auto v = leaves_[atom]; v != count; v = parent_[v]) atoms_below_[v].push_back(atom);
  }
}

std::size_t MarketTree::child_towards(std::size_t node, std::size_t atom) const {
  for (auto c : children_[node]) {
    const auto& below = atoms_below_[c];
    if (std::find(below.begin(), below.end(), atom) != below.end()) return c;
  }
  throw PreconditionError("atom is not below node \"" + nodes_[node].id + "\"");
}

MartingaleMeasureSet::MartingaleMeasureSet(SpacePtr space, std::vector<lp::Constraint> equalities)
    : space_(std::move(space)), equalities_(std::move(equalities)) {}

bool MartingaleMeasureSet::contains(const Measure& q) const {
  if (!same_space(space_, q.space())) return false;
  for (const auto& row : equalities_) {
    Rational lhs = 0;
    for (std::size_t i = 0; i < q.weights().size(); ++i) lhs += row.coefficients[i] * q[i];
    if (lhs != row.rhs) return false;
  }
  return true;  // Measure already guarantees non-negativity
}

std::size_t MartingaleMeasureSet::affine_dimension() const {
  lp::Matrix rows;
  for (const auto& row : equalities_) rows.push_back(row.coefficients);
  return space_->size() - lp::rank(rows);
}

std::optional<std::pair<Extremum, Extremum>> MartingaleMeasureSet::expectation_range(
    const RandomVariable& xi) const {
  if (!same_space(space_, xi.space())) throw SpaceMismatch();
  const auto n = space_->size();
  lp::LinearProgram p(n);
  std::fill(p.bounds.begin(), p.bounds.end(), lp::VariableBound::non_negative());
  p.constraints = equalities_;

  p.objective = xi.values();
  const auto low = lp::solve(p);
  if (!low.optimal()) return std::nullopt;
  for (auto& c : p.objective) c = -c;
  const auto high = lp::solve(p);
  return std::make_pair(Extremum{low.value, Measure(space_, low.point)},
                        Extremum{Rational(-high.value), Measure(space_, high.point)});
}

MartingaleMeasureSet emm_set(const MarketTree& tree) {
  const auto n = tree.space()->size();
  std::vector<lp::Constraint> rows;
  for (auto v : tree.internal_nodes()) {
    for (std::size_t k = 0; k < tree.asset_count(); ++k) {
      RationalVector row(n, Rational(0));
      bool nonzero = false;
      for (auto atom : tree.atoms_below(v)) {
        const auto c = tree.child_towards(v, atom);
        row[atom] = tree.nodes()[c].prices[k] - tree.nodes()[v].prices[k];
        nonzero = nonzero || row[atom] != 0;
      }
      if (nonzero) rows.push_back({std::move(row), lp::Relation::kEqual, Rational(0)});
    }
  }
  rows.push_back({RationalVector(n, Rational(1)), lp::Relation::kEqual, Rational(1)});
  return MartingaleMeasureSet(tree.space(), std::move(rows));
}

Viability viability(const MarketTree& tree) {
  const auto set = emm_set(tree);
  const auto n = tree.space()->size();
  // Variables Q_0..Q_{n-1}, t; maximize t subject to Q_i >= t.
  lp::LinearProgram p(n + 1);
  for (std::size_t i = 0; i < n; ++i) p.bounds[i] = lp::VariableBound::non_negative();
  p.objective[n] = -1;
  for (const auto& row : set.equalities()) {
    auto coeffs = row.coefficients;
    coeffs.push_back(0);
    p.add(std::move(coeffs), lp::Relation::kEqual, row.rhs);
  }
  for (std::size_t i = 0; i < n; ++i) {
    RationalVector row(n + 1, Rational(0));
    row[i] = 1;
    row[n] = -1;
    p.add(std::move(row), lp::Relation::kGreaterEqual, Rational(0));
  }
  const auto out = lp::solve(p);
  Viability v;
  if (!out.optimal()) return v;
  v.margin = Rational(-out.value);
  v.viable = *v.margin > 0;
  v.maximizer = Measure(tree.space(), RationalVector(out.point.begin(), out.point.begin() + n));
  return v;
}

StrategyBasis strategy_basis(const MarketTree& tree) {
  StrategyBasis basis;
  basis.gains.push_back(RandomVariable::constant(tree.space(), Rational(1)));
  const auto n = tree.space()->size();
  for (auto v : tree.internal_nodes()) {
    for (std::size_t k = 0; k < tree.asset_count(); ++k) {
      RationalVector gain(n, Rational(0));
      for (auto atom : tree.atoms_below(v)) {
        gain[atom] = tree.nodes()[tree.child_towards(v, atom)].prices[k] - tree.nodes()[v].prices[k];
      }
      basis.gains.emplace_back(tree.space(), std::move(gain));
    }
  }
  return basis;
}

RandomVariable replicate(const MarketTree& tree, const Replication& replication) {
  const auto n = tree.space()->size();
  RationalVector value(n, replication.initial);
  for (auto v : tree.internal_nodes()) {
    const auto& h = replication.holdings[v];
    for (auto atom : tree.atoms_below(v)) {
      const auto& next = tree.nodes()[tree.child_towards(v, atom)].prices;
      for (std::size_t k = 0; k < tree.asset_count(); ++k) {
        value[atom] += h[k] * (next[k] - tree.nodes()[v].prices[k]);
      }
    }
  }
  return RandomVariable(tree.space(), std::move(value));
}

namespace {

void require_viable(const MarketTree& tree, const char* operation) {
  if (!viability(tree).viable) {
    throw PreconditionError(std::string(operation) +
                            ": market is not viable (no equivalent martingale measure)");
  }
}

// Backward induction: at each internal node solve V(c) = V(v) + H(v) . dS(c)
// for all children c.
Replication backward_replication(const MarketTree& tree, const RandomVariable& xi) {
  const auto count = tree.nodes().size();
  const auto d = tree.asset_count();
  std::vector<Rational> value(count);
  for (std::size_t atom = 0; atom < tree.leaves().size(); ++atom) value[tree.leaves()[atom]] = xi[atom];
  Replication rep{Rational(0), std::vector<RationalVector>(count)};
  const auto& internal = tree.internal_nodes();
  for (auto it = internal.rbegin(); it != internal.rend(); ++it) {
    const auto v = *it;
    lp::Matrix a;
    RationalVector b;
    for (auto c : tree.children(v)) {
      RationalVector row{Rational(1)};
      for (std::size_t k = 0; k < d; ++k) {
        row.push_back(tree.nodes()[c].prices[k] - tree.nodes()[v].prices[k]);
      }
      a.push_back(std::move(row));
      b.push_back(value[c]);
    }
    const auto x = lp::solve_linear(a, b);
    if (!x) {
      throw PreconditionError("attainable: claim has constant EMM price but no one-step hedge at node \"" +
                              tree.nodes()[v].id + "\"");
    }
    value[v] = (*x)[0];
    rep.holdings[v].assign(x->begin() + 1, x->end());
  }
  rep.initial = value[tree.root()];
  return rep;
}

}  // namespace

Attainability attainable(const MarketTree& tree, const RandomVariable& xi) {
  if (!same_space(tree.space(), xi.space())) throw SpaceMismatch();
  require_viable(tree, "attainable");
  const auto range = emm_set(tree).expectation_range(xi);
  Attainability out;
  out.lower = range->first.value;
  out.upper = range->second.value;
  out.attainable = out.lower == out.upper;
  if (out.attainable) out.replication = backward_replication(tree, xi);
  return out;
}

AttainableBall attainable_ball(const MarketTree& tree, ExecutionPolicy policy) {
  require_viable(tree, "attainable_ball");
  const auto gains = strategy_basis(tree).gains;
  lp::Matrix rows;
  for (const auto& g : gains) rows.push_back(g.values());
  std::vector<RandomVariable> basis;
  for (auto k : lp::independent_subset(rows)) basis.push_back(gains[k]);
  const auto r = basis.size();
  if (r > lp::kMaxVertexDimension) {
    throw PreconditionError("attainable_ball: attainable subspace has dimension " +
                            std::to_string(r) + ", above the vertex-enumeration cap of " +
                            std::to_string(lp::kMaxVertexDimension));
  }

  // -1 <= (B y)_i <= 1 in coordinates y of the strategy basis B.
  const auto n = tree.space()->size();
  lp::HalfspaceSystem box{r, {}};
  for (std::size_t i = 0; i < n; ++i) {
    RationalVector row(r);
    for (std::size_t k = 0; k < r; ++k) row[k] = basis[k][i];
    box.rows.push_back({row, lp::Relation::kLessEqual, Rational(1)});
    box.rows.push_back({row, lp::Relation::kGreaterEqual, Rational(-1)});
  }
  std::set<RationalVector> generators;
  for (const auto& y : lp::vertex_enumeration(box, policy)) {
    RationalVector f(n, Rational(0));
    for (std::size_t k = 0; k < r; ++k) {
      for (std::size_t i = 0; i < n; ++i) f[i] += y[k] * basis[k][i];
    }
    // The vertex set is symmetric; keep the representative whose first
    // nonzero entry is positive.
    const auto lead = std::find_if(f.begin(), f.end(), [](const Rational& x) { return x != 0; });
    if (lead != f.end() && *lead < 0) {
      for (auto& x : f) x = -x;
    }
    generators.insert(std::move(f));
  }
  std::vector<RandomVariable> body;
  for (const auto& g : generators) body.emplace_back(tree.space(), g);
  return {AbsolutelyConvexBody(tree.space(), std::move(body)), Subspace(tree.space(), std::move(basis))};
}

std::vector<std::vector<std::size_t>> event_scan_order(std::size_t atoms) {
  std::vector<std::vector<std::size_t>> events;
  for (std::size_t size = 1; size < atoms; ++size) {
    std::vector<bool> chosen(atoms, false);
    std::fill(chosen.begin(), chosen.begin() + static_cast<std::ptrdiff_t>(size), true);
    do {
      std::vector<std::size_t> event;
      for (std::size_t i = 0; i < atoms; ++i) {
        if (chosen[i]) event.push_back(i);
      }
      events.push_back(std::move(event));
    } while (std::prev_permutation(chosen.begin(), chosen.end()));
  }
  return events;
}

std::optional<NonSolidityWitness> nonsolidity_witness(const MarketTree& tree,
                                                      ExecutionPolicy policy) {
  require_viable(tree, "nonsolidity_witness");
  const auto n = tree.space()->size();
  if (n > kMaxPatternAtoms) {
    throw PreconditionError("nonsolidity_witness: event scan is capped at " +
                            std::to_string(kMaxPatternAtoms) + " atoms");
  }
  const auto set = emm_set(tree);
  const auto events = event_scan_order(n);
  auto range_of = [&](std::size_t k) {
    return set.expectation_range(RandomVariable::indicator(tree.space(), events[k]));
  };
  const auto first = detail::first_accepted(events.size(), policy, [&](std::size_t k) {
    const auto range = range_of(k);
    return range->first.value != range->second.value;
  });
  if (!first) return std::nullopt;
  auto range = range_of(*first);
  return NonSolidityWitness{events[*first], RandomVariable::indicator(tree.space(), events[*first]),
                            std::move(range->first), std::move(range->second)};
}

}  // namespace attainrisk
