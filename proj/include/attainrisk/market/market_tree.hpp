#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "attainrisk/core/probability_space.hpp"
#include "attainrisk/execution.hpp"
#include "attainrisk/geometry/convex_body.hpp"
#include "attainrisk/lp/linear_program.hpp"

namespace attainrisk {

struct MarketNode {
  std::string id;
  std::optional<std::string> parent;
  int time = 0;
  RationalVector prices;  // discounted price of each asset at this node
};

// A finite event tree with adapted prices. Leaves are the atoms of the
// underlying probability space, in the order they appear in the node list.
class MarketTree {
 public:
  MarketTree(std::vector<MarketNode> nodes, const std::map<std::string, Rational>& leaf_weights);

  const SpacePtr& space() const { return space_; }
  std::size_t asset_count() const { return assets_; }
  const std::vector<MarketNode>& nodes() const { return nodes_; }
  std::size_t root() const { return root_; }
  const std::vector<std::size_t>& children(std::size_t node) const { return children_[node]; }
  bool is_leaf(std::size_t node) const { return children_[node].empty(); }
  // Node index of each atom.
  const std::vector<std::size_t>& leaves() const { return leaves_; }
  // Internal nodes, parents before children.
  const std::vector<std::size_t>& internal_nodes() const { return internal_; }
  const std::vector<std::size_t>& atoms_below(std::size_t node) const { return atoms_below_[node]; }
  // The child of `node` whose subtree holds `atom`.
  std::size_t child_towards(std::size_t node, std::size_t atom) const;

 private:
  std::vector<MarketNode> nodes_;
  std::size_t assets_ = 0;
  std::size_t root_ = 0;
  std::vector<std::vector<std::size_t>> children_;
  std::vector<std::size_t> parent_;
  std::vector<std::size_t> leaves_;
  std::vector<std::size_t> internal_;
  std::vector<std::vector<std::size_t>> atoms_below_;
  SpacePtr space_;
};

struct Extremum {
  Rational value;
  Measure measure;
};

// Closure of the equivalent martingale measures: Q >= 0 on the atoms, sum 1,
// and at every internal node and asset sum_{l below} Q_l (S(child) - S(node)) = 0.
class MartingaleMeasureSet {
 public:
  MartingaleMeasureSet(SpacePtr space, std::vector<lp::Constraint> equalities);

  const SpacePtr& space() const { return space_; }
  // Includes the normalization row.
  const std::vector<lp::Constraint>& equalities() const { return equalities_; }

  bool contains(const Measure& q) const;
  // Dimension of the affine hull; exact when the market is viable.
  std::size_t affine_dimension() const;
  // min and max of E_Q[xi] over the closed set; nullopt when it is empty.
  std::optional<std::pair<Extremum, Extremum>> expectation_range(const RandomVariable& xi) const;

 private:
  SpacePtr space_;
  std::vector<lp::Constraint> equalities_;
};

MartingaleMeasureSet emm_set(const MarketTree& tree);

struct Viability {
  bool viable = false;
  // max over the closed set of min_i Q_i.
  std::optional<Rational> margin;
  std::optional<Measure> maximizer;
};

Viability viability(const MarketTree& tree);

// Terminal gains of one unit of one asset held over one node's step, after the constant 1.
struct StrategyBasis {
  std::vector<RandomVariable> gains;
};

StrategyBasis strategy_basis(const MarketTree& tree);

struct Replication {
  Rational initial;
  // Holdings per node index; empty vector at leaves.
  std::vector<RationalVector> holdings;
};

// a + sum over the path of H(node) . (S(child) - S(node)).
RandomVariable replicate(const MarketTree& tree, const Replication& replication);

struct Attainability {
  bool attainable = false;
  Rational lower;  // min E_Q[xi]
  Rational upper;  // max E_Q[xi]
  std::optional<Replication> replication;
};

// Throws PreconditionError when the market is not viable.
Attainability attainable(const MarketTree& tree, const RandomVariable& xi);

struct AttainableBall {
  AbsolutelyConvexBody body;  // attainable claims with sup norm <= 1
  Subspace span;              // attainable claims
};

// Throws PreconditionError when not viable or when span dimension exceeds the
// vertex-enumeration cap.
AttainableBall attainable_ball(const MarketTree& tree, ExecutionPolicy policy = kDefaultPolicy);

struct NonSolidityWitness {
  std::vector<std::size_t> event;  // atom indices of A
  RandomVariable indicator;        // 1_A
  Extremum lower;                  // min Q(A)
  Extremum upper;                  // max Q(A)
};

// First event, by cardinality then atom order, whose probability is not
// constant over the martingale measures; nullopt iff the market is complete.
// Throws PreconditionError when the market is not viable.
std::optional<NonSolidityWitness> nonsolidity_witness(const MarketTree& tree,
                                                      ExecutionPolicy policy = kDefaultPolicy);

// Events with 1 <= |A| <= n - 1, singletons first, then increasing size,
// lexicographic within a size.
std::vector<std::vector<std::size_t>> event_scan_order(std::size_t atoms);

}  // namespace attainrisk
