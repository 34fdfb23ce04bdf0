#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "mpa/homology.hpp"

using namespace mpa;

namespace {

void report_failures(const CheckReport &rep) {
  for (const auto &it : rep.items) {
    INFO(it.name << " residual: " << it.residual);
    CHECK(it.pass);
  }
}

} // namespace

TEST_CASE("beta on the Jordan quiver has the two-term shape") {
  Presentation p = cycle_system(1, false);
  HomologyContext h(p);
  BimodElement b = h.beta(0);
  CHECK(b.terms().size() == 2);
}

TEST_CASE("alpha(eta_v) collects one Delta per arrow with tail v") {
  Presentation p = cycle_system(2, false);
  HomologyContext h(p);
  // On A~1 every vertex has two outgoing doubled arrows, each Delta
  // contributing two generators.
  BimodElement a0 = h.alpha(0);
  std::set<int> gens;
  for (const auto &[k, c] : a0.terms()) gens.insert(std::get<0>(k).idx);
  CHECK(gens.size() == 4);
}

TEST_CASE("gamma(eta_v) = e_v evaluates gamma(beta) to a - a") {
  Presentation p = cycle_system(2, false);
  HomologyContext h(p);
  for (int d = 0; d < p.dq.arrows(); ++d) CHECK(h.gamma_of_beta(d).is_zero());
}

TEST_CASE("phi0 scales the dual vertex generator by q") {
  Presentation p = cycle_system(1, false);
  HomologyContext h(p);
  BimodElement f = h.phi0(0);
  REQUIRE(f.terms().size() == 1);
  CHECK(f.terms().begin()->second == Laurent::monomial(1, 0, 1));
}

TEST_CASE("phi1 coefficient pair matches the case formula for original arrows") {
  Presentation p = cycle_system(2, false);
  HomologyContext h(p);
  OrderedContext ctx = OrderedContext::engine_order(p);
  for (int d = 0; d < p.dq.m; ++d) { // epsilon = +1
    auto [cl, cr] = h.phi1_coeffs(d);
    CHECK(cl == -ctx.r_inv(p.dq.star(d)));
    CHECK(cr == ctx.r_prod(d));
  }
}

TEST_CASE("homology suite: complex, dual tables, and both squares") {
  for (int n : {1, 2, 3}) {
    CAPTURE(n);
    Presentation p = cycle_system(n, false);
    report_failures(verify_homology_suite(p));
  }
}

TEST_CASE("double twist with opposite orders is the identity on tables") {
  Presentation p = cycle_system(2, false);
  HomologyContext h(p);
  OrderedContext fwd = OrderedContext::engine_order(p);
  OrderedContext bwd = fwd.reversed();
  for (int d = 0; d < p.dq.arrows(); ++d) {
    Element a = p.arr_el(d);
    CHECK(p.normal_form(fwd.theta(bwd.theta(a)) - a, true).is_zero());
  }
}
