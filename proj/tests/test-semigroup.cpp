#include "esli/constructors.hpp"
#include "esli/semigroup.hpp"
#include "test-helpers.hpp"

namespace esli {
  using test::table;

  namespace {
    FiniteSemigroup m_z2_p() {
      return rees_matrix({named_small("cyclic_group", {2}), 2, 2, {0, 0, 0, 1}});
    }

    FiniteSemigroup rect_band_sslat() {
      // Y2 = {0 > 1}, both components 2x2 rectangular bands, hom collapsing columns.
      StrongSemilatticeSpec spec;
      spec.semilattice = named_small("chain", {2});
      spec.components  = {named_small("rectangular_band", {2, 2}),
                          named_small("rectangular_band", {2, 2})};
      spec.homs[{0, 1}] = {0, 0, 2, 2};
      return strong_semilattice(spec);
    }

    std::vector<FiniteSemigroup> universe() {
      return {named_small("cyclic_group", {4}),
              named_small("symmetric_group_3"),
              named_small("chain", {3}),
              named_small("diamond"),
              named_small("brandt_2"),
              named_small("symmetric_inverse_2"),
              named_small("partial_transformations_2"),
              named_small("left_zero", {2}),
              named_small("rectangular_band", {2, 3}),
              named_small("null", {3}),
              m_z2_p(),
              rect_band_sslat(),
              direct_product(named_small("brandt_2"), named_small("left_zero", {2}))};
    }
  }  // namespace

  TEST_CASE("from_table", "[core]") {
    auto Z2 = table(2, {0, 1, 1, 0});
    REQUIRE(is_group(Z2));
    auto L2 = table(2, {0, 0, 1, 1});
    REQUIRE(L2.product(1, 0) == 1);
    auto R2 = table(2, {0, 1, 0, 1});
    REQUIRE(R2.product(1, 0) == 0);
    // Checked by hand over all 8 triples: 0 is an identity and 1 a zero.
    REQUIRE_NOTHROW(table(2, {0, 1, 1, 1}));
    try {
      table(2, {1, 0, 0, 0});
      FAIL("expected NonAssociative");
    } catch (Error const& e) {
      REQUIRE(e.code() == ErrorCode::non_associative);
      auto const& w = e.witness();
      REQUIRE(w.size() == 3);
      REQUIRE(w[0] == 0);
      REQUIRE(w[1] == 0);
      REQUIRE(w[2] == 1);
    }
    REQUIRE_THROWS_CODE(table(2, {0, 1, 2, 0}), ErrorCode::out_of_range);
    REQUIRE_THROWS_CODE(table(2, {0, 1, 1}), ErrorCode::out_of_range);
  }

  TEST_CASE("idempotents", "[core]") {
    REQUIRE(idempotents(named_small("cyclic_group", {2})).members() == std::vector<elem>{0});
    REQUIRE(idempotents(named_small("left_zero", {2})).count() == 2);
    auto S = m_z2_p();
    REQUIRE(S.order() == 8);
    std::size_t brute = 0;
    for (elem x = 0; x < 8; ++x) {
      brute += S.product(x, x) == x;
    }
    REQUIRE(brute == 4);
    REQUIRE(idempotents(S).count() == 4);
  }

  TEST_CASE("inverses_of", "[core]") {
    auto Z4 = named_small("cyclic_group", {4});
    for (elem g = 0; g < 4; ++g) {
      REQUIRE(inverses_of(Z4, g).members() == std::vector<elem>{(4 - g) % 4});
    }
    REQUIRE(inverses_of(named_small("left_zero", {2}), 0).members() == std::vector<elem>{0, 1});
    REQUIRE(inverses_of(named_small("null", {3}), 1).empty());
  }

  TEST_CASE("green", "[core]") {
    auto G = green(named_small("symmetric_group_3"));
    REQUIRE(G.r_classes.num_classes() == 1);
    REQUIRE(G.l_classes.num_classes() == 1);
    REQUIRE(G.h_classes.num_classes() == 1);
    REQUIRE(G.d_classes.num_classes() == 1);

    auto B  = named_small("rectangular_band", {2, 2});
    auto GB = green(B);
    // Element a = 2 * row + column.
    REQUIRE(GB.r_related(0, 1));
    REQUIRE(!GB.r_related(0, 2));
    REQUIRE(GB.l_related(0, 2));
    REQUIRE(!GB.l_related(0, 1));
    REQUIRE(GB.d_classes.num_classes() == 1);
    REQUIRE(GB.h_classes.num_classes() == 4);

    auto GC = green(named_small("chain", {2}));
    REQUIRE(GC.d_classes.num_classes() == 2);

    for (auto const& S : universe()) {
      auto const Gr = green(S);
      for (elem a = 0; a < S.order(); ++a) {
        for (elem b = 0; b < S.order(); ++b) {
          REQUIRE(Gr.r_related(a, b) == test::r_oracle(S, a, b));
          REQUIRE(Gr.l_related(a, b) == test::l_oracle(S, a, b));
          REQUIRE(Gr.h_related(a, b) == (Gr.r_related(a, b) && Gr.l_related(a, b)));
        }
      }
      if (is_regular(S)) {
        auto const E = idempotents(S);
        for (auto const& cls : Gr.r_classes.classes()) {
          bool has = false;
          for (elem x : cls) {
            has = has || E.contains(x);
          }
          REQUIRE(has);
        }
      }
    }
  }

  TEST_CASE("natural_leq", "[core]") {
    auto Y = named_small("chain", {2});
    REQUIRE(natural_leq(Y, 1, 0));
    REQUIRE(!natural_leq(Y, 0, 1));
    auto B = named_small("rectangular_band", {2, 3});
    for (elem a = 0; a < B.order(); ++a) {
      for (elem b = 0; b < B.order(); ++b) {
        REQUIRE(natural_leq(B, a, b) == (a == b));
      }
    }
    for (auto const& S : universe()) {
      auto const below = natural_order(S);
      for (elem a = 0; a < S.order(); ++a) {
        for (elem b = 0; b < S.order(); ++b) {
          REQUIRE(below[b].contains(a) == natural_leq(S, a, b));
        }
      }
    }
  }

  TEST_CASE("natural order is a compatible partial order on locally inverse S", "[core]") {
    for (auto const& S : universe()) {
      if (!is_regular(S) || S.order() > 12) {
        continue;
      }
      auto const n     = S.order();
      auto const below = natural_order(S);
      for (elem a = 0; a < n; ++a) {
        REQUIRE(below[a].contains(a));
        for (elem b = 0; b < n; ++b) {
          if (a != b && below[b].contains(a)) {
            REQUIRE(!below[a].contains(b));
          }
          for (elem c = 0; c < n; ++c) {
            if (below[b].contains(a) && below[c].contains(b)) {
              REQUIRE(below[c].contains(a));
            }
          }
        }
      }
      if (!is_locally_inverse(S)) {
        continue;
      }
      for (elem b = 0; b < n; ++b) {
        for (elem a : below[b].members()) {
          for (elem d = 0; d < n; ++d) {
            for (elem c : below[d].members()) {
              REQUIRE(below[S.product(b, d)].contains(S.product(a, c)));
            }
          }
        }
      }
    }
  }

  TEST_CASE("sandwich_set", "[core]") {
    auto B2 = named_small("brandt_2");
    for (elem e : idempotents(B2).members()) {
      REQUIRE(sandwich_set(B2, e, e).members() == std::vector<elem>{e});
      for (elem f : idempotents(B2).members()) {
        REQUIRE(sandwich_set(B2, e, f).members() == std::vector<elem>{B2.product(f, e)});
      }
    }
    auto S = m_z2_p();
    auto G = green(S);
    for (elem e : idempotents(S).members()) {
      for (elem f : idempotents(S).members()) {
        auto sw = sandwich_set(S, e, f).members();
        REQUIRE(sw.size() == 1);
        REQUIRE(G.l_related(sw[0], e));
        REQUIRE(G.r_related(sw[0], f));
      }
    }
    REQUIRE_THROWS_CODE(sandwich_set(named_small("cyclic_group", {2}), 1, 0),
                        ErrorCode::not_idempotent);
  }

  TEST_CASE("wedge", "[core]") {
    auto I2 = named_small("symmetric_inverse_2");
    for (elem s = 0; s < I2.order(); ++s) {
      for (elem t = 0; t < I2.order(); ++t) {
        elem si = inverses_of(I2, s).front(), ti = inverses_of(I2, t).front();
        REQUIRE(wedge(I2, s, t) == I2.product(I2.product(s, si), I2.product(ti, t)));
      }
    }
    auto S = m_z2_p();
    auto G = green(S);
    for (elem s = 0; s < 8; ++s) {
      for (elem t = 0; t < 8; ++t) {
        elem w = wedge(S, s, t);
        REQUIRE(S.product(w, w) == w);
        REQUIRE(G.h_related(w, S.product(s, t)));
        REQUIRE(G.r_related(w, s));
        REQUIRE(G.l_related(w, t));
      }
    }
    for (elem e : idempotents(S).members()) {
      REQUIRE(wedge(S, e, e) == e);
    }
    REQUIRE_THROWS_CODE(wedge(named_small("null", {3}), 1, 1), ErrorCode::not_locally_inverse);
    // PT_2 has sandwich sets with two elements.
    auto PT = named_small("partial_transformations_2");
    REQUIRE_THROWS_CODE(wedge_table(PT), ErrorCode::non_singleton_sandwich);
  }

  TEST_CASE("wedge is idempotent and independent of chosen inverses", "[core]") {
    for (auto const& S : universe()) {
      if (!is_locally_inverse(S)) {
        continue;
      }
      auto const table = wedge_table(S);
      for (elem s = 0; s < S.order(); ++s) {
        for (elem t = 0; t < S.order(); ++t) {
          elem w = wedge(S, s, t);
          REQUIRE(table[s * S.order() + t] == w);
          REQUIRE(S.product(w, w) == w);
          for (elem ss : inverses_of(S, s).members()) {
            for (elem tt : inverses_of(S, t).members()) {
              REQUIRE(wedge(S, S.product(s, ss), S.product(tt, t)) == w);
            }
          }
        }
      }
    }
  }

  TEST_CASE("predicates", "[core]") {
    for (auto const& G : {named_small("cyclic_group", {4}), named_small("symmetric_group_3")}) {
      REQUIRE(is_regular(G));
      REQUIRE(is_inverse(G));
      REQUIRE(is_completely_regular(G));
      REQUIRE(is_completely_simple(G));
      REQUIRE(is_locally_inverse(G));
      REQUIRE(is_e_solid(G));
    }
    auto S = m_z2_p();
    REQUIRE(is_completely_simple(S));
    REQUIRE(!is_group(S));
    REQUIRE(!is_band(S));
    REQUIRE(!is_orthodox(S));
    auto Y = named_small("chain", {2});
    REQUIRE(is_inverse(Y));
    REQUIRE(is_locally_inverse(Y));
    REQUIRE(is_e_solid(Y));
    REQUIRE(!is_completely_simple(Y));
    REQUIRE(is_inverse(named_small("brandt_2")));
    REQUIRE(!is_completely_regular(named_small("brandt_2")));
    REQUIRE(!is_regular(named_small("null", {3})));
    // The full partial transformation monoid on two points is regular but not locally inverse.
    auto PT = named_small("partial_transformations_2");
    REQUIRE(is_regular(PT));
    REQUIRE(!is_locally_inverse(PT));
  }

  TEST_CASE("locally inverse: three-way agreement", "[core]") {
    for (auto const& S : universe()) {
      bool by_sandwich   = is_locally_inverse(S);
      bool by_submonoids = is_locally_inverse_by_submonoids(S);
      REQUIRE(by_sandwich == by_submonoids);
      if (!is_regular(S)) {
        continue;
      }
      // Third leg: the definition with every pair of idempotents.
      bool singletons = true;
      for (elem e : idempotents(S).members()) {
        for (elem f : idempotents(S).members()) {
          std::size_t count = 0;
          for (elem g : idempotents(S).members()) {
            count += S.product(g, e) == g && S.product(f, g) == g
                     && S.product(S.product(e, g), f) == S.product(e, f);
          }
          singletons = singletons && count == 1;
        }
      }
      REQUIRE(singletons == by_sandwich);
    }
  }

  TEST_CASE("local_submonoid", "[core]") {
    auto G = named_small("symmetric_group_3");
    REQUIRE(local_submonoid(G, 0).semigroup == G);
    auto B = named_small("rectangular_band", {2, 2});
    for (elem e = 0; e < 4; ++e) {
      auto M = local_submonoid(B, e);
      REQUIRE(M.semigroup.order() == 1);
      REQUIRE(M.embedding == std::vector<elem>{e});
    }
    REQUIRE(local_submonoid(named_small("chain", {3}), 2).semigroup.order() == 1);
    REQUIRE_THROWS_CODE(local_submonoid(named_small("cyclic_group", {2}), 1),
                        ErrorCode::not_idempotent);
  }

  TEST_CASE("unique_below_in_R", "[core]") {
    auto S = rect_band_sslat();
    REQUIRE(is_locally_inverse(S));
    auto const G = green(S);
    for (elem b = 0; b < S.order(); ++b) {
      REQUIRE(unique_below_in_R(S, b, b, b) == b);
    }
    for (elem t = 0; t < S.order(); ++t) {
      for (elem s = 0; s < S.order(); ++s) {
        if (!natural_leq(S, s, t)) {
          continue;
        }
        for (elem b = 0; b < S.order(); ++b) {
          if (!G.r_related(b, t)) {
            continue;
          }
          elem a = unique_below_in_R(S, s, t, b);
          std::vector<elem> scan;
          for (elem x = 0; x < S.order(); ++x) {
            if (G.r_related(x, s) && natural_leq(S, x, b)) {
              scan.push_back(x);
            }
          }
          REQUIRE(scan == std::vector<elem>{a});
          if (s == t) {
            REQUIRE(a == b);
          }
        }
      }
    }
    REQUIRE_THROWS_CODE(unique_below_in_R(S, 0, 4, 0), ErrorCode::precondition_violated);
  }

  TEST_CASE("R restricted to the core is the core's own R", "[core]") {
    for (auto const& S : universe()) {
      auto const C = restrict_to(S, core(S));
      if (!is_regular(C.semigroup)) {
        continue;
      }
      if (!is_regular(S)) {
        continue;
      }
      auto const GS = green(S);
      auto const GC = green(C.semigroup);
      auto const& m = C.embedding;
      for (elem i = 0; i < m.size(); ++i) {
        for (elem j = 0; j < m.size(); ++j) {
          REQUIRE(GC.r_related(i, j) == GS.r_related(m[i], m[j]));
        }
      }
    }
  }

  TEST_CASE("partition meet and join", "[core]") {
    Partition x({0, 0, 1, 1}), y({0, 1, 1, 2});
    REQUIRE(meet(x, y).num_classes() == 4);
    REQUIRE(join(x, y).num_classes() == 1);
    REQUIRE(Partition({5, 5, 3}).labels() == std::vector<elem>{0, 0, 1});
    REQUIRE(Partition::discrete(3).refines(x.size() == 3 ? Partition::universal(3) : x));
  }

}  // namespace esli
