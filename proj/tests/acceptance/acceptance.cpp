// Acceptance harness: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails. All comparisons are exact.

#include <array>
#include <cstdio>
#include <functional>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "attainrisk/cli/cli.hpp"
#include "attainrisk/core/probability_space.hpp"
#include "attainrisk/geometry/convex_body.hpp"
#include "attainrisk/io/json_io.hpp"
#include "attainrisk/lp/linear_program.hpp"
#include "attainrisk/market/market_tree.hpp"
#include "attainrisk/risk/risk_function.hpp"
#include "sampler.hpp"

namespace attainrisk {
namespace {

using testing::Sampler;

const std::string kFixtures = ATTAINRISK_FIXTURE_DIR;
const std::string kCliBinary = ATTAINRISK_CLI_BINARY;

struct Verdict {
  bool pass = true;
  std::ostringstream detail;

  // Records a failed check; keeps the first few messages.
  void check(bool ok, const std::string& what) {
    if (ok) return;
    if (pass || ++extra_failures_ < 3) detail << " [" << what << "]";
    pass = false;
  }

 private:
  int extra_failures_ = 0;
};

RandomVariable Rv(const SpacePtr& s, std::initializer_list<Rational> v) {
  return RandomVariable(s, RationalVector(v));
}

SpacePtr Halves() { return FiniteProbabilitySpace::create({"a", "b"}, {Rational(1, 2), Rational(1, 2)}); }

// f supported on the union of generator supports: an element of the ideal
// generated by K.
RandomVariable PointInIdeal(Sampler& rng, const AbsolutelyConvexBody& k) {
  RationalVector v(k.atoms(), Rational(0));
  for (std::size_t i = 0; i < k.atoms(); ++i) {
    for (const auto& g : k.generators()) {
      if (g[i] != 0) {
        v[i] = rng.rational();
        break;
      }
    }
  }
  return RandomVariable(k.space(), std::move(v));
}

// f_n = f + h / (8 n), n = 1..16, with f and h in K: K-bounded, converging
// to f in probability with nonincreasing Ky-Fan distance.
std::vector<RandomVariable> AdmissibleSequence(const RandomVariable& f, const RandomVariable& h) {
  std::vector<RandomVariable> seq;
  for (int n = 1; n <= 16; ++n) seq.push_back(f + Rational(1, 8 * n) * h);
  return seq;
}

// Mixture of random points, sign-changed boxes of members and of generators,
// scalings near 1 and midpoints, so that instances land on both sides of the solid hull boundary.
RandomVariable SolidHullProbe(Sampler& rng, const AbsolutelyConvexBody& k) {
  auto box_point = [&] {
    const auto g = rng.point_in(k);
    RationalVector v(k.atoms());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = (rng.coin() ? 1 : -1) * abs(g[i]);
    return RandomVariable(k.space(), std::move(v));
  };
  // s (.) |v_j| for a generator v_j: an extreme point of the box it spans.
  auto corner = [&] {
    const auto& g = k.generators()[rng.index(k.generators().size())];
    RationalVector v(k.atoms());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = (rng.coin() ? 1 : -1) * abs(g[i]);
    return RandomVariable(k.space(), std::move(v));
  };
  switch (rng.index(6)) {
    case 0: return rng.variable(k.space(), 3, 3);
    case 1: return box_point();
    case 2: return Rational(static_cast<int>(rng.between(2, 6)), 4) * box_point();
    case 3: return Rational(1, 2) * (box_point() + box_point());
    case 4: return Rational(static_cast<int>(rng.between(3, 5)), 4) * corner();
    default: return Rational(1, 2) * (corner() + corner());
  }
}

void Criterion1(Verdict& v) {
  Sampler rng(1001);
  int instances = 0, disagreements = 0, members = 0, outside_bipolar = 0, convex_agree = 0;
  std::string first;
  for (int trial = 0; trial < 400; ++trial) {
    const auto s = rng.space(rng.between(1, 4));
    const auto k = rng.body(s, rng.between(1, 4));
    const auto f = SolidHullProbe(rng, k);
    const bool solid = solid_hull_member(k, f).member;
    const bool bipolar = bipolar_member(k, f);
    ++instances;
    members += solid;
    convex_agree += convex_solid_hull_member(k, f) == bipolar;
    if (solid != bipolar) {
      ++disagreements;
      outside_bipolar += solid && !bipolar;
      if (first.empty()) {
        std::ostringstream os;
        os << "K=" << io::to_json(k)["generators"].dump() << " f=" << io::to_json(f).dump()
           << " solid_hull=" << solid << " bipolar=" << bipolar;
        first = os.str();
      }
    }
  }
  v.detail << instances << " instances, " << members << " in sol(K), " << disagreements
           << " disagreements (" << outside_bipolar << " with f in sol(K) but not in the bipolar)";
  if (!first.empty()) v.detail << "; first: " << first;
  v.check(disagreements == 0, "solid_hull_member and bipolar_member differ");
  v.detail << "; info: convex_solid_hull_member agrees with bipolar_member on " << convex_agree << "/"
           << instances;
  // The pinned two-generator instance from the unit suite.
  const auto h = Halves();
  const AbsolutelyConvexBody tilted(h, {Rv(h, {2, 1}), Rv(h, {1, -2})});
  const auto mid = Rv(h, {Rational(3, 2), Rational(3, 2)});
  v.detail << "; pinned K=absconv{(2,1),(1,-2)}, f=(3/2,3/2): solid_hull=" << solid_hull_member(tilted, mid).member
           << " bipolar=" << bipolar_member(tilted, mid);
}

void Criterion2(Verdict& v) {
  Sampler rng(1002);
  int functions = 0, points = 0;
  for (int trial = 0; trial < 120; ++trial) {
    const auto s = rng.space(rng.between(1, 5));
    const auto phi = rng.risk(rng.body(s, rng.between(1, 4)), rng.between(1, 5));
    std::vector<RandomVariable> g;
    for (const auto& sc : phi.scenarios()) g.push_back(sc.density);
    ++functions;
    for (int p = 0; p < 10; ++p) {
      const auto f = rng.point_in_span(phi.body());
      const auto value = evaluate(phi, f);
      ++points;
      v.check(extend(phi, f, ExtensionMode::kFull) == value, "extend(full) != evaluate");
      v.check(dual_rep_evaluate(phi, f, g) == value, "dual_rep_evaluate != evaluate");
    }
  }
  v.detail << functions << " risk functions, " << points << " points in E_K";
}

void Criterion3(Verdict& v) {
  Sampler rng(1003);
  int restriction = 0, segments = 0, sequences = 0;
  for (int trial = 0; trial < 120; ++trial) {
    const auto s = rng.space(rng.between(1, 4));
    const auto k = rng.body(s, rng.between(1, 3));
    const auto phi = rng.risk(k, rng.between(1, 4));
    const auto e = rng.point_in_span(k);
    v.check(extend(phi, e, ExtensionMode::kFull) == evaluate(phi, e), "restriction identity");
    ++restriction;

    const auto a = PointInIdeal(rng, k);
    const auto b = PointInIdeal(rng, k);
    const auto psi_mid = extend(phi, Rational(1, 2) * (a + b), ExtensionMode::kFull);
    const auto pa = extend(phi, a, ExtensionMode::kFull);
    const auto pb = extend(phi, b, ExtensionMode::kFull);
    if (pa.is_finite() && pb.is_finite()) {
      v.check(psi_mid <= ExtendedValue(Rational(1, 2) * (pa.value() + pb.value())), "midpoint convexity");
    }
    ++segments;

    const auto f = rng.point_in(k);
    const auto h = rng.point_in(k);
    const Evaluator psi = [&phi](const RandomVariable& x) { return extend(phi, x, ExtensionMode::kFull); };
    v.check(fatou_probe(psi, k, AdmissibleSequence(f, h), f, Rational(2)).passed, "fatou_probe(psi) failed");
    ++sequences;
  }
  v.detail << restriction << " restriction points, " << segments << " segments in the ideal, " << sequences
           << " admissible sequences";
}

void Criterion4(Verdict& v) {
  const auto s = Halves();
  const PolyhedralRiskFunction phi(AbsolutelyConvexBody(s, {Rv(s, {1, 1})}), {{Rv(s, {1, 1}), Rational(0)}});
  const auto m1 = extend(phi, Rv(s, {1, 0}), ExtensionMode::kMonotone);
  const auto m2 = extend(phi, Rv(s, {-2, 0}), ExtensionMode::kMonotone);
  const auto full = extend(phi, Rv(s, {1, 0}), ExtensionMode::kFull);
  v.check(m1 == ExtendedValue(Rational(1)), "extend((1,0),monotone) != 1");
  v.check(m2 == ExtendedValue(Rational(0)), "extend((-2,0),monotone) != 0");
  v.check(full.is_infinite(), "extend((1,0),full) != +inf");
  v.detail << "fixture values " << to_string(m1) << ", " << to_string(m2) << ", " << to_string(full);

  Sampler rng(1004);
  int pairs = 0;
  for (int trial = 0; trial < 150; ++trial) {
    const auto sp = rng.space(rng.between(1, 4));
    const auto psi = rng.risk(rng.body(sp, rng.between(1, 3)), rng.between(1, 3));
    if (!monotone_certifiable(psi)) continue;
    const auto f = rng.variable(sp);
    RationalVector up = f.values();
    for (auto& x : up) {
      if (rng.coin()) x += rng.positive();
    }
    const RandomVariable h(sp, up);
    v.check(extend(psi, f, ExtensionMode::kMonotone) <= extend(psi, h, ExtensionMode::kMonotone),
            "monotone extension not monotone");
    ++pairs;
  }
  // The fixture itself, on a grid of ordered pairs.
  for (int a = -3; a <= 3; ++a) {
    for (int b = -3; b <= 3; ++b) {
      const auto f = Rv(s, {a, b});
      const auto h = Rv(s, {a + 1, b});
      v.check(extend(phi, f, ExtensionMode::kMonotone) <= extend(phi, h, ExtensionMode::kMonotone),
              "fixture not monotone");
      ++pairs;
    }
  }
  v.detail << "; " << pairs << " ordered pairs";
  v.check(pairs >= 100, "fewer than 100 pairs");
}

void Criterion5(Verdict& v) {
  const auto binomial = io::market_from_json(io::load_file(kFixtures + "/binomial.json"));
  const auto bset = emm_set(binomial);
  const auto bv = viability(binomial);
  v.check(bv.viable && bset.affine_dimension() == 0, "binomial EMM not unique");
  v.check(bv.maximizer && *bv.maximizer == Measure(binomial.space(), {Rational(1, 3), Rational(2, 3)}),
          "binomial EMM != (1/3,2/3)");
  v.check(!nonsolidity_witness(binomial), "binomial has a witness");
  v.detail << "binomial EMM " << io::to_json(*bv.maximizer).dump();

  const auto tri = io::market_from_json(io::load_file(kFixtures + "/trinomial.json"));
  const auto w = nonsolidity_witness(tri);
  v.check(w.has_value(), "trinomial has no witness");
  if (!w) return;
  v.check(tri.space()->labels()[w->event.at(0)] == "u" && w->event.size() == 1, "witness event != {u}");
  v.check(w->lower.value == 0 && w->upper.value == Rational(1, 3), "Q(A) range != [0,1/3]");
  const auto ball = attainable_ball(tri);
  const bool in_hull = solid_hull_member(ball.body, w->indicator).member;
  const bool in_k = member(ball.body, w->indicator);
  v.check(in_hull && !in_k, "cross-module check");
  const bool solid = solid_check(ball.body).solid;
  v.check(!solid, "attainable ball reported solid");
  v.detail << "; trinomial witness A={" << tri.space()->labels()[w->event[0]] << "}, Q(A) in ["
           << to_string(w->lower.value) << "," << to_string(w->upper.value) << "], 1_A in sol(K)=" << in_hull
           << ", 1_A in K=" << in_k << ", solid_check=" << (solid ? "solid" : "not solid");
}

void Criterion6(Verdict& v) {
  const auto s = Halves();
  const AbsolutelyConvexBody k(s, {Rv(s, {1, 0}), Rv(s, {0, 1})});
  const auto target = Rv(s, {1, 0});
  const Evaluator open_sublevel = [&k](const RandomVariable& f) {
    return gauge(k, f) < ExtendedValue(Rational(1)) ? ExtendedValue(Rational(0)) : ExtendedValue::infinity();
  };
  std::vector<RandomVariable> approach;
  for (int n = 1; n <= 16; ++n) approach.push_back(Rational(n - 1, n) * target);
  const auto negative = fatou_probe(open_sublevel, k, approach, target, Rational(1));
  v.check(!negative.passed, "negative control passed");
  v.detail << "negative control " << (negative.passed ? "passed" : "failed") << " (limit "
           << to_string(negative.limit_value) << ", tail min " << to_string(negative.tail_minimum) << ")";

  Sampler rng(1006);
  int sequences = 0;
  for (int trial = 0; trial < 60; ++trial) {
    const auto sp = rng.space(rng.between(1, 5));
    const auto body = rng.body(sp, rng.between(1, 4));
    const auto phi = rng.risk(body, rng.between(1, 5));
    const Evaluator eval = [&phi](const RandomVariable& f) { return evaluate(phi, f); };
    const auto f = rng.point_in(body);
    const auto h = rng.point_in(body);
    v.check(fatou_probe(eval, body, AdmissibleSequence(f, h), f, Rational(2)).passed, "polyhedral phi failed");
    ++sequences;
  }
  v.detail << "; " << sequences << " polyhedral sequences";
}

void Criterion7(Verdict& v) {
  Sampler rng(1007);
  int instances = 0;
  for (int trial = 0; trial < 250; ++trial) {
    const auto s = rng.space(rng.between(1, 4));
    const auto k = rng.body(s, rng.between(1, 4));
    const auto x = rng.point_in_span(k);
    const auto y = rng.point_in_span(k);
    const auto a = rng.rational();
    const auto px = gauge(k, x);
    v.check(px.is_finite() && gauge(k, a * x) == ExtendedValue(abs(a) * px.value()), "homogeneity");
    v.check(gauge(k, x + y) <= px + gauge(k, y), "subadditivity");
    const auto z = rng.variable(s);
    v.check(gauge(k, z).is_finite() == span_basis(k).contains(z), "finite gauge vs span");
    ++instances;
  }
  v.detail << instances << " instances";
}

void Criterion9(Verdict& v) {
  Sampler rng(1009);
  int samples = 0;
  for (int trial = 0; trial < 60; ++trial) {
    const auto s = rng.space(rng.between(1, 6));
    const auto nu = compactifying_measure(rng.positive_variable(s));
    v.check(nu.is_probability() && nu.is_equivalent(), "not an equivalent probability");
    ++samples;
  }
  const auto h = Halves();
  const auto nu = compactifying_measure(Rv(h, {2, Rational(1, 2)}));
  v.check(nu == Measure(h, {Rational(2, 3), Rational(1, 3)}), "fixture nu != (2/3,1/3)");
  v.detail << samples << " random xi; fixture nu=" << io::to_json(nu).dump();
}

const std::vector<std::vector<std::string>>& FixtureSuite() {
  static const std::vector<std::vector<std::string>> suite = {
      {"set-gauge", "cube_body.json", "--point", "0,0,0"},
      {"set-gauge", "tilted_body.json", "--point", "3/2,3/2"},
      {"set-gauge", "diamond_halfspaces.json", "--point", "1/2,-1/2"},
      {"set-polar", "cube_body.json", "--point", "1,-1/2,0"},
      {"set-solid-hull", "tilted_body.json", "--point", "3/2,3/2"},
      {"set-solid-hull", "tilted_body.json", "--point", "1,2"},
      {"set-solid-check", "cube_body.json"},
      {"set-solid-check", "tilted_body.json"},
      {"risk-eval", "cvar_risk.json", "--point", "1,-1,2"},
      {"risk-conjugate", "cvar_risk.json", "--point", "1,1,1"},
      {"risk-extend", "span_one_risk.json", "--point", "1,0", "--mode", "monotone"},
      {"risk-extend", "span_one_risk.json", "--point", "1,0", "--mode", "full"},
      {"risk-extend", "cvar_risk.json", "--point", "3,0,-1", "--mode", "monotone"},
      {"risk-fatou", "span_one_fatou.json"},
      {"market-emm", "binomial.json"},
      {"market-emm", "trinomial.json"},
      {"market-emm", "arbitrage.json"},
      {"market-complete", "binomial.json"},
      {"market-complete", "trinomial.json"},
      {"market-complete", "arbitrage.json"},
      {"market-witness", "binomial.json"},
      {"market-witness", "trinomial.json"},
      {"market-witness", "two_period.json"},
      {"market-attainable", "trinomial.json", "--point", "1,0,0"},
      {"market-attainable", "two_period.json", "--point", "10,0,0,0"},
      {"market-ball", "binomial.json"},
      {"market-ball", "trinomial.json"},
  };
  return suite;
}

std::vector<std::string> FixtureArgs(const std::vector<std::string>& run) {
  std::vector<std::string> args{run[0], "--input", kFixtures + "/" + run[1], "--format", "json"};
  args.insert(args.end(), run.begin() + 2, run.end());
  return args;
}

std::string InProcessSuite() {
  std::ostringstream all;
  for (const auto& run : FixtureSuite()) {
    auto args = FixtureArgs(run);
    args.insert(args.begin(), "attainrisk");
    std::ostringstream out, err;
    all << cli::main_entry(args, out, err) << "\n" << out.str();
  }
  return all.str();
}

std::string SubprocessSuite() {
  std::string all;
  for (const auto& run : FixtureSuite()) {
    std::string command = "'" + kCliBinary + "'";
    for (const auto& a : FixtureArgs(run)) command += " '" + a + "'";
    command += " 2>/dev/null";
    std::unique_ptr<FILE, int (*)(FILE*)> pipe(popen(command.c_str(), "r"), pclose);
    if (!pipe) return "popen failed";
    std::array<char, 4096> buffer{};
    std::size_t n;
    while ((n = fread(buffer.data(), 1, buffer.size(), pipe.get())) > 0) all.append(buffer.data(), n);
  }
  return all;
}

void Criterion10(Verdict& v) {
  const auto a = InProcessSuite();
  const auto b = InProcessSuite();
  const auto c = SubprocessSuite();
  const auto d = SubprocessSuite();
  v.check(a == b, "in-process runs differ");
  v.check(c == d, "subprocess runs differ");
  v.check(!c.empty(), "subprocess produced no output");
  v.detail << FixtureSuite().size() << " fixture invocations, " << c.size()
           << " bytes of JSON per run, two in-process and two subprocess runs";
}

}  // namespace
}  // namespace attainrisk

int main() {
  using attainrisk::Verdict;
  struct Criterion {
    int id;
    const char* name;
    std::function<void(Verdict&)> run;
  };
  std::optional<attainrisk::lp::Audit> audit(std::in_place);
  attainrisk::lp::AuditTally tally;
  const std::vector<Criterion> criteria = {
      {1, "solid hull and bipolar membership agree", attainrisk::Criterion1},
      {2, "Fenchel-Moreau round trip", attainrisk::Criterion2},
      {3, "extension: restriction, convexity, Fatou probe", attainrisk::Criterion3},
      {4, "monotone extension", attainrisk::Criterion4},
      {5, "canonical non-solidity", attainrisk::Criterion5},
      {6, "Fatou negative control and polyhedral sequences", attainrisk::Criterion6},
      {7, "gauge axioms", attainrisk::Criterion7},
      {8, "LP certificates",
       [&](Verdict& v) {
         tally = audit->tally();
         audit.reset();
         v.check(tally.total() > 0, "no LPs audited");
         v.check(tally.failures == 0, "certificate failure: " + tally.first_failure);
         v.detail << tally.total() << " LPs from criteria 1-7 (" << tally.optimal << " optimal, "
                  << tally.infeasible << " infeasible, " << tally.unbounded << " unbounded), " << tally.failures
                  << " certificate failures";
       }},
      {9, "compactifying measure", attainrisk::Criterion9},
      {10, "CLI determinism", attainrisk::Criterion10},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    Verdict v;
    try {
      c.run(v);
    } catch (const std::exception& e) {
      v.check(false, std::string("exception: ") + e.what());
    }
    failed += !v.pass;
    std::cout << (v.pass ? "PASS" : "FAIL") << "  criterion " << c.id << ": " << c.name << ": " << v.detail.str()
              << std::endl;
  }
  std::cout << (criteria.size() - failed) << "/" << criteria.size() << " criteria passed" << std::endl;
  return failed == 0 ? 0 : 1;
}
