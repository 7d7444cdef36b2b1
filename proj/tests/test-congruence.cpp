#include <functional>

#include "esli/congruence.hpp"
#include "esli/constructors.hpp"
#include "test-helpers.hpp"

namespace esli {

  namespace {
    // All set partitions of [0, n) as restricted growth strings.
    std::vector<Partition> set_partitions(std::size_t n) {
      std::vector<Partition>                          out;
      std::vector<elem>                               labels(n, 0);
      std::function<void(std::size_t, elem)>          rec;
      rec = [&](std::size_t i, elem max_label) {
        if (i == n) {
          out.emplace_back(labels);
          return;
        }
        for (elem l = 0; l <= max_label + 1; ++l) {
          labels[i] = l;
          rec(i + 1, std::max(max_label, l));
        }
      };
      labels[0] = 0;
      rec(1, 0);
      return out;
    }

    bool compatible(FiniteSemigroup const& S, Partition const& p) {
      for (elem a = 0; a < S.order(); ++a) {
        for (elem b = 0; b < S.order(); ++b) {
          if (!p.same(a, b)) {
            continue;
          }
          for (elem c = 0; c < S.order(); ++c) {
            if (!p.same(S.product(c, a), S.product(c, b))
                || !p.same(S.product(a, c), S.product(b, c))) {
              return false;
            }
          }
        }
      }
      return true;
    }

    std::vector<FiniteSemigroup> regular_universe() {
      StrongSemilatticeSpec groups;
      groups.semilattice = named_small("chain", {2});
      groups.components  = {named_small("cyclic_group", {3}), named_small("cyclic_group", {2})};
      groups.homs[{0, 1}] = {0, 0, 0};
      StrongSemilatticeSpec bands;
      bands.semilattice  = named_small("chain", {2});
      bands.components   = {named_small("rectangular_band", {1, 2}),
                            named_small("rectangular_band", {2, 2})};
      bands.homs[{0, 1}] = {0, 1};
      return {named_small("cyclic_group", {4}),
              named_small("chain", {3}),
              named_small("diamond"),
              named_small("brandt_2"),
              named_small("symmetric_inverse_2"),
              named_small("rectangular_band", {2, 2}),
              named_small("left_zero", {3}),
              rees_matrix({named_small("cyclic_group", {2}), 2, 1, {0, 1}}),
              rees_matrix({named_small("cyclic_group", {2}), 2, 2, {0, 0, 0, 1}}),
              strong_semilattice(groups),
              strong_semilattice(bands),
              named_small("partial_transformations_2"),
              direct_product(named_small("chain", {2}), named_small("left_zero", {2}))};
    }
  }  // namespace

  TEST_CASE("congruence_generated", "[congruence]") {
    auto Z4 = named_small("cyclic_group", {4});
    REQUIRE(congruence_generated(Z4, {}) == Congruence::identity(Z4));
    // Hand closure: the subgroup {0, 2} and its coset.
    REQUIRE(congruence_generated(Z4, {{0, 2}}).partition().labels()
            == std::vector<elem>{0, 1, 0, 1});
    REQUIRE(congruence_generated(Z4, {{0, 1}}).num_classes() == 1);
    REQUIRE(congruence_generated(named_small("chain", {2}), {{0, 1}}).num_classes() == 1);
    auto S3 = named_small("symmetric_group_3");
    for (elem g = 1; g < 6; ++g) {
      auto rho = congruence_generated(S3, {{0, g}});
      // A transposition generates everything, a 3-cycle only A3.
      REQUIRE(rho.num_classes() == (S3.product(g, g) == 0 ? 1u : 2u));
    }
  }

  TEST_CASE("Congruence rejects incompatible partitions", "[congruence]") {
    auto Y = named_small("chain", {3});
    REQUIRE_THROWS_CODE(Congruence(Y, Partition({0, 1, 0})), ErrorCode::not_a_congruence);
  }

  TEST_CASE("quotient", "[congruence]") {
    auto S  = named_small("symmetric_inverse_2");
    auto q1 = quotient(S, Congruence::identity(S));
    REQUIRE(find_isomorphism(q1.quotient, S).has_value());
    auto q2 = quotient(S, Congruence::universal(S));
    REQUIRE(q2.quotient.order() == 1);
    for (auto const& T : regular_universe()) {
      auto rho = least_inverse_congruence(T);
      auto q   = quotient(T, rho);
      for (elem a = 0; a < T.order(); ++a) {
        for (elem b = 0; b < T.order(); ++b) {
          REQUIRE(q.projection[T.product(a, b)]
                  == q.quotient.product(q.projection[a], q.projection[b]));
        }
      }
    }
  }

  TEST_CASE("kernel", "[congruence]") {
    auto B2 = named_small("brandt_2");
    REQUIRE(kernel(B2, Congruence::identity(B2)) == idempotents(B2));
    auto Z4 = named_small("cyclic_group", {4});
    REQUIRE(kernel(Z4, Congruence::universal(Z4)).count() == 4);
    auto R = named_small("rectangular_band", {2, 2});
    REQUIRE_THROWS_CODE(kernel(R, Congruence::identity(R)), ErrorCode::quotient_not_inverse);
  }

  TEST_CASE("is_congruence_over_cs", "[congruence]") {
    auto Z4 = named_small("cyclic_group", {4});
    REQUIRE(is_congruence_over_cs(Z4, Congruence::identity(Z4)));
    StrongSemilatticeSpec spec;
    spec.semilattice   = named_small("chain", {2});
    spec.components    = {named_small("cyclic_group", {2}), named_small("cyclic_group", {2})};
    spec.homs[{0, 1}]  = {0, 1};
    auto S             = strong_semilattice(spec);
    REQUIRE(!is_congruence_over_cs(S, Congruence::universal(S)));
    REQUIRE(is_congruence_over_cs(S, Congruence::identity(S)));
    auto R = named_small("rectangular_band", {2, 2});
    REQUIRE(is_congruence_over_cs(R, Congruence::universal(R)));
    REQUIRE(!is_congruence_over_cs(R, Congruence::identity(R)));
  }

  TEST_CASE("least_inverse_congruence", "[congruence]") {
    auto I2 = named_small("symmetric_inverse_2");
    REQUIRE(least_inverse_congruence(I2) == Congruence::identity(I2));
    auto R = named_small("rectangular_band", {2, 3});
    REQUIRE(least_inverse_congruence(R).num_classes() == 1);
    auto M = rees_matrix({named_small("cyclic_group", {2}), 2, 2, {0, 0, 0, 1}});
    REQUIRE(least_inverse_congruence(M).num_classes() == 1);
    REQUIRE_THROWS_CODE(least_inverse_congruence(named_small("null", {2})),
                        ErrorCode::not_regular);
  }

  TEST_CASE("least_inverse_congruence matches the intersection oracle", "[congruence]") {
    for (auto const& S : regular_universe()) {
      if (S.order() > 8) {
        continue;
      }
      Partition meet_all = Partition::universal(S.order());
      for (auto const& rho : all_congruences(S)) {
        if (is_inverse(quotient(S, rho).quotient)) {
          meet_all = meet(meet_all, rho.partition());
        }
      }
      REQUIRE(least_inverse_congruence(S).partition() == meet_all);
    }
  }

  TEST_CASE("all_congruences", "[congruence]") {
    REQUIRE(all_congruences(named_small("chain", {2})).size() == 2);
    REQUIRE(all_congruences(named_small("cyclic_group", {4})).size() == 3);
    for (auto const& S : {named_small("rectangular_band", {2, 2}), named_small("brandt_2"),
                          named_small("chain", {3}), named_small("symmetric_group_3")}) {
      std::size_t brute = 0;
      for (auto const& p : set_partitions(S.order())) {
        brute += compatible(S, p);
      }
      REQUIRE(all_congruences(S).size() == brute);
    }
    REQUIRE_THROWS_CODE(all_congruences(named_small("cyclic_group", {9})), ErrorCode::order_bound);
  }

  TEST_CASE("Yamada: E-solid iff least inverse congruence is over CS", "[congruence]") {
    for (auto const& S : regular_universe()) {
      REQUIRE(is_e_solid(S) == is_congruence_over_cs(S, least_inverse_congruence(S)));
    }
  }

  TEST_CASE("projections respect wedge", "[congruence]") {
    for (auto const& S : regular_universe()) {
      if (!is_locally_inverse(S)) {
        continue;
      }
      for (auto const& rho : all_congruences(S, 16)) {
        auto q = quotient(S, rho);
        for (elem s = 0; s < S.order(); ++s) {
          for (elem t = 0; t < S.order(); ++t) {
            REQUIRE(q.projection[wedge(S, s, t)]
                    == wedge(q.quotient, q.projection[s], q.projection[t]));
          }
        }
      }
    }
  }

}  // namespace esli
