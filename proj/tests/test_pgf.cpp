#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <string>

#include "stablepgf/pgf.hpp"

using namespace stablepgf;

namespace {

Rational Q(long n, long d = 1) {
  Rational q(n, d);
  q.canonicalize();
  return q;
}

/// (1/4)(1 + z1)(1 + z2): independent Bernoulli(1/2) pair.
JointPGF bernoulli_pair() {
  return make_pgf(2, {{{0, 0}, Q(1, 4)},
                      {{1, 0}, Q(1, 4)},
                      {{0, 1}, Q(1, 4)},
                      {{1, 1}, Q(1, 4)}});
}

/// (z1 + z2)/2: one ball dropped in one of two urns.
JointPGF one_ball() {
  return make_pgf(2, {{{1, 0}, Q(1, 2)}, {{0, 1}, Q(1, 2)}});
}

}  // namespace

TEST_CASE("construction and validation") {
  const JointPGF f = bernoulli_pair();
  CHECK(f.dim() == 2);
  CHECK(f.mass() == 1);
  CHECK(f.degree_bounds() == std::vector<int>{1, 1});

  SUBCASE("duplicate entries are merged") {
    const JointPGF g = make_pgf(1, {{{0}, Q(1, 4)}, {{0}, Q(1, 4)}, {{1}, Q(1, 2)}});
    CHECK(g.terms().at({0}) == Q(1, 2));
  }
  SUBCASE("mass deficit is reported") {
    try {
      make_pgf(1, {{{0}, Q(1, 2)}, {{1}, Q(1, 4)}});
      FAIL("expected InputError");
    } catch (const InputError& e) {
      CHECK(std::string(e.what()).find("1/4") != std::string::npos);
    }
  }
  SUBCASE("nonpositive probabilities rejected") {
    CHECK_THROWS_AS(make_pgf(1, {{{0}, Q(3, 2)}, {{1}, Q(-1, 2)}}), InputError);
  }
  SUBCASE("negative exponents rejected") {
    CHECK_THROWS_AS(make_pgf(1, {{{-1}, Q(1)}}), InputError);
  }
  SUBCASE("wrong arity rejected") {
    CHECK_THROWS_AS(make_pgf(2, {{{0}, Q(1)}}), InputError);
  }
}

TEST_CASE("project") {
  const JointPGF f = one_ball();
  SUBCASE("direction (1,2) gives (z + z^2)/2") {
    const Polynomial p = project(f, {1, 2});
    CHECK(p == Polynomial({Q(0), Q(1, 2), Q(1, 2)}));
  }
  SUBCASE("direction (1,1) gives z") {
    CHECK(project(f, {1, 1}) == Polynomial({Q(0), Q(1)}));
  }
  SUBCASE("zero entries marginalize") {
    CHECK(project(bernoulli_pair(), {1, 0}) == Polynomial({Q(1, 2), Q(1, 2)}));
  }
  CHECK_THROWS_AS(project(f, {0, 0}), InputError);
  CHECK_THROWS_AS(project(f, {1, -1}), InputError);
  CHECK_THROWS_AS(project(f, {1}), InputError);
}

TEST_CASE("aggregate") {
  const JointPGF f = bernoulli_pair();
  const JointPGF g = aggregate(f, {0, 0}, 1);
  CHECK(g.dim() == 1);
  CHECK(g.terms().at({0}) == Q(1, 4));
  CHECK(g.terms().at({1}) == Q(1, 2));
  CHECK(g.terms().at({2}) == Q(1, 4));
  CHECK_THROWS_AS(aggregate(f, {0, 0}, 2), InputError);  // not surjective
  CHECK_THROWS_AS(aggregate(f, {0, 2}, 2), InputError);  // out of range
}

TEST_CASE("polarize") {
  SUBCASE("binomial(2,1/2) polarizes to the Bernoulli pair") {
    const JointPGF b2 =
        make_pgf(1, {{{0}, Q(1, 4)}, {{1}, Q(1, 2)}, {{2}, Q(1, 4)}});
    const JointPGF pol = polarize(b2, {2});
    CHECK(pol == bernoulli_pair());
  }
  SUBCASE("aggregate . polarize is the identity") {
    const JointPGF f =
        make_pgf(1, {{{0}, Q(1, 6)}, {{1}, Q(1, 2)}, {{3}, Q(1, 3)}});
    const JointPGF pol = polarize(f, {4});
    CHECK(pol.dim() == 4);
    CHECK(aggregate(pol, {0, 0, 0, 0}, 1) == f);
  }
  SUBCASE("bivariate polarization stays exact") {
    const JointPGF f = one_ball();
    const JointPGF pol = polarize(f, {2, 1});
    CHECK(pol.dim() == 3);
    CHECK(aggregate(pol, {0, 0, 1}, 2) == f);
    // e_1(w11, w12)/2 carries probability 1/2: each slot gets 1/4.
    CHECK(pol.terms().at({1, 0, 0}) == Q(1, 4));
    CHECK(pol.terms().at({0, 0, 1}) == Q(1, 2));
  }
  SUBCASE("degree cap and bound violations") {
    const JointPGF b2 =
        make_pgf(1, {{{0}, Q(1, 4)}, {{1}, Q(1, 2)}, {{2}, Q(1, 4)}});
    CHECK_THROWS_AS(polarize(b2, {1}), InputError);
    CHECK_THROWS_AS(polarize(b2, {25}), InputError);
  }
}

TEST_CASE("smear") {
  SUBCASE("thinning a point mass") {
    const JointPGF f = make_pgf(1, {{{1}, Q(1)}});
    const JointPGF g = smear(f, {Q(1, 3)});
    CHECK(g.terms().at({0}) == Q(2, 3));
    CHECK(g.terms().at({1}) == Q(1, 3));
  }
  SUBCASE("thinning binomial(2,1/2) by 1/2 gives binomial(2,1/4)") {
    const JointPGF b2 =
        make_pgf(1, {{{0}, Q(1, 4)}, {{1}, Q(1, 2)}, {{2}, Q(1, 4)}});
    const JointPGF g = smear(b2, {Q(1, 2)});
    CHECK(g.terms().at({0}) == Q(9, 16));
    CHECK(g.terms().at({1}) == Q(6, 16));
    CHECK(g.terms().at({2}) == Q(1, 16));
  }
  SUBCASE("product structure is preserved") {
    const JointPGF f = make_pgf(2, {{{1, 1}, Q(1)}});
    const JointPGF g = smear(f, {Q(1, 2), Q(1, 3)});
    CHECK(g.terms().at({0, 0}) == Q(1, 2) * Q(2, 3));
    CHECK(g.terms().at({1, 1}) == Q(1, 2) * Q(1, 3));
  }
  SUBCASE("a = 1 is the identity, a = 0 collapses") {
    const JointPGF f = one_ball();
    CHECK(smear(f, {Q(1), Q(1)}) == f);
    const JointPGF z = smear(f, {Q(0), Q(0)});
    CHECK(z.terms().size() == 1);
    CHECK(z.terms().at({0, 0}) == Q(1));
  }
  CHECK_THROWS_AS(smear(one_ball(), {Q(2), Q(1)}), InputError);
}

TEST_CASE("marginal") {
  const JointPGF f = one_ball();
  const JointPGF m0 = marginal(f, {0});
  CHECK(m0.dim() == 1);
  CHECK(m0.terms().at({0}) == Q(1, 2));
  CHECK(m0.terms().at({1}) == Q(1, 2));
  CHECK(marginal(bernoulli_pair(), {1}).terms().at({1}) == Q(1, 2));
  CHECK_THROWS_AS(marginal(f, {}), InputError);
  CHECK_THROWS_AS(marginal(f, {0, 0}), InputError);
  CHECK_THROWS_AS(marginal(f, {2}), InputError);
}

TEST_CASE("mean_cov") {
  SUBCASE("independent pair") {
    const MomentSummary ms = mean_cov(bernoulli_pair());
    CHECK(ms.mean == std::vector<Rational>{Q(1, 2), Q(1, 2)});
    CHECK(ms.cov[0][0] == Q(1, 4));
    CHECK(ms.cov[1][1] == Q(1, 4));
    CHECK(ms.cov[0][1] == Q(0));
  }
  SUBCASE("rank-one (one ball squared)") {
    // ((z1+z2)/2)^2 = (z1^2 + 2 z1 z2 + z2^2)/4
    const JointPGF f = make_pgf(
        2, {{{2, 0}, Q(1, 4)}, {{1, 1}, Q(1, 2)}, {{0, 2}, Q(1, 4)}});
    const MomentSummary ms = mean_cov(f);
    CHECK(ms.mean == std::vector<Rational>{Q(1), Q(1)});
    CHECK(ms.cov[0][0] == Q(1, 2));
    CHECK(ms.cov[0][1] == Q(-1, 2));
    CHECK(ms.cov[1][0] == Q(-1, 2));
    CHECK(ms.cov[1][1] == Q(1, 2));
  }
  SUBCASE("thinning moment identity") {
    // X ~ Bin(2,1/2) thinned by 1/2 -> Bin(2,1/4): mean 1/2, var 3/8.
    const JointPGF b2 =
        make_pgf(1, {{{0}, Q(1, 4)}, {{1}, Q(1, 2)}, {{2}, Q(1, 4)}});
    const MomentSummary ms = mean_cov(smear(b2, {Q(1, 2)}));
    CHECK(ms.mean[0] == Q(1, 2));
    CHECK(ms.cov[0][0] == Q(3, 8));
  }
}
