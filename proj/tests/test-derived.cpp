#include "esli/congruence.hpp"
#include "esli/constructors.hpp"
#include "esli/corpus.hpp"
#include "esli/derived.hpp"
#include "test-helpers.hpp"

namespace esli {

  namespace {
    // A2: the combinatorial Rees matrix semigroup over {1} with P = [[1,1],[1,0]].
    FiniteSemigroup a2() {
      // (i, j) -> 2i + j for i, j in {0, 1}; zero is 4.
      std::vector<elem> t(25, 4);
      for (elem x = 0; x < 4; ++x) {
        for (elem y = 0; y < 4; ++y) {
          elem const j = x % 2, k = y / 2;
          if (!(j == 1 && k == 1)) {
            t[x * 5 + y] = (x / 2) * 2 + y % 2;
          }
        }
      }
      return FiniteSemigroup::from_table(5, std::move(t));
    }

    DerivedSemigroupoid derived(FiniteSemigroup const& S, Congruence const& rho,
                                DaggerPolicy p = DaggerPolicy::lowest) {
      return DerivedSemigroupoid(ExtensionContext::build(S, rho, p));
    }

    void require_lemmas(DerivedSemigroupoid const& c) {
      for (auto const& r : check_lemmas(c)) {
        INFO(r.name << ": " << r.detail);
        REQUIRE(r.pass);
      }
    }

    FiniteSemigroup m_z2_p() {
      return rees_matrix({named_small("cyclic_group", {2}), 2, 2, {0, 0, 0, 1}});
    }
  }  // namespace

  TEST_CASE("build_context", "[derived]") {
    auto B2 = named_small("brandt_2");
    REQUIRE(ExtensionContext::build(B2, Congruence::identity(B2)).t().order() == 5);

    auto K = m_z2_p();
    auto c = ExtensionContext::build(K, Congruence::universal(K));
    REQUIRE(c.t().order() == 1);

    auto acts = enumerate_actions(K, named_small("chain", {2}), 30);
    REQUIRE(!acts.empty());
    for (auto const& a : acts) {
      auto L = lambda_sdp(a);
      REQUIRE_NOTHROW(ExtensionContext::build(L.semigroup(), L.theta2()));
    }

    REQUIRE_THROWS_CODE(ExtensionContext::build(a2(), Congruence::universal(a2())),
                        ErrorCode::not_e_solid);
    auto N = named_small("null", {2});
    REQUIRE_THROWS_CODE(ExtensionContext::build(N, Congruence::universal(N)),
                        ErrorCode::not_locally_inverse);
    auto Y2 = named_small("chain", {2});
    REQUIRE_THROWS_CODE(ExtensionContext::build(Y2, Congruence::universal(Y2)),
                        ErrorCode::rho_not_over_cs);
    REQUIRE_THROWS_CODE(ExtensionContext::build(Y2, Congruence::identity(B2)),
                        ErrorCode::precondition_violated);
  }

  TEST_CASE("dagger policies", "[derived]") {
    auto K  = m_z2_p();
    auto lo = ExtensionContext::build(K, Congruence::universal(K), DaggerPolicy::lowest);
    auto hi = ExtensionContext::build(K, Congruence::universal(K), DaggerPolicy::highest);
    bool differ = false;
    for (elem s = 0; s < K.order(); ++s) {
      REQUIRE(inverses_of(K, s).contains(lo.dagger(s)));
      REQUIRE(inverses_of(K, s).contains(hi.dagger(s)));
      REQUIRE(lo.dagger(s) <= hi.dagger(s));
      differ = differ || lo.dagger(s) != hi.dagger(s);
    }
    REQUIRE(differ);
  }

  TEST_CASE("arrows", "[derived]") {
    auto K = m_z2_p();
    auto c = derived(K, Congruence::universal(K));
    REQUIRE(c.arrows().size() == K.order());
    for (elem s = 0; s < K.order(); ++s) {
      REQUIRE(c.is_arrow({0, s, 0}));
      REQUIRE(c.id_of({0, s, 0}) == s);
    }
    REQUIRE(!c.is_arrow({1, 0, 0}));
    REQUIRE_THROWS_CODE(c.require_id({0, 99, 0}), ErrorCode::precondition_violated);

    // Brandt B2 with identity rho: objects are the elements of B2 itself.
    auto B2 = named_small("brandt_2");
    auto d  = derived(B2, Congruence::identity(B2));
    auto T  = d.context().t();
    for (auto const& a : d.arrows()) {
      REQUIRE(T.product(a.source, d.context().project(a.label)) == a.target);
    }
  }

  TEST_CASE("compose, inverses, wedge", "[derived]") {
    auto S = named_small("symmetric_inverse_2");
    auto c = derived(S, Congruence::identity(S));
    auto const& A = c.arrows();
    std::size_t pairs = 0;
    for (auto const& a : A) {
      auto const vs = c.arrow_inverses(a);
      REQUIRE(vs.size() == inverses_of(S, a.label).count());
      REQUIRE(std::find(vs.begin(), vs.end(), c.dagger(a)) != vs.end());
      auto const loop = c.compose(a, c.dagger(a));
      REQUIRE(loop.source == loop.target);
      REQUIRE(loop.label == S.product(a.label, c.context().dagger(a.label)));
      for (auto const& b : A) {
        if (b.source == a.target) {
          REQUIRE(c.is_arrow(c.compose(a, b)));
          ++pairs;
          for (auto const& d : A) {
            if (d.source == b.target) {
              REQUIRE(c.compose(c.compose(a, b), d) == c.compose(a, c.compose(b, d)));
            }
          }
        } else {
          REQUIRE_THROWS_CODE(c.compose(a, b), ErrorCode::not_consecutive);
        }
        if (a.source == b.target) {
          auto const w = c.arrow_wedge(a, b);
          REQUIRE(w.source == a.source);
          REQUIRE(w.target == a.source);
          REQUIRE(c.compose(w, w) == w);
        } else {
          REQUIRE_THROWS_CODE(c.arrow_wedge(a, b), ErrorCode::not_adjacent);
        }
      }
    }
    REQUIRE(pairs > 0);
    // The wedge of an idempotent loop with itself.
    for (auto const& a : A) {
      if (a.source == a.target && S.product(a.label, a.label) == a.label) {
        REQUIRE(c.arrow_wedge(a, a) == a);
      }
    }
  }

  TEST_CASE("action on arrows", "[derived]") {
    auto S = named_small("brandt_2");
    auto c = derived(S, Congruence::identity(S));
    auto const& T = c.context().t();
    for (auto const& a : c.arrows()) {
      elem const e = T.product(a.source, c.context().t_inverse(a.source));
      REQUIRE(c.act(e, a) == a);
      for (elem pi = 0; pi < T.order(); ++pi) {
        REQUIRE(c.is_arrow(c.act(pi, a)));
      }
    }
  }

  TEST_CASE("stable arrows and hat", "[derived]") {
    for (auto const& S : {named_small("brandt_2"), named_small("symmetric_inverse_2")}) {
      auto c   = derived(S, Congruence::identity(S));
      auto ctx = c.context();
      auto const& T = ctx.t();
      for (elem s = 0; s < S.order(); ++s) {
        elem const sigma = ctx.project(s);
        Arrow      a{T.product(sigma, ctx.t_inverse(sigma)), s, sigma};
        REQUIRE(c.is_arrow(a));
        REQUIRE(c.is_stable(a));
        REQUIRE(c.hat(a) == a);
      }
      for (auto const& a : c.arrows()) {
        auto const h = c.hat(a);
        REQUIRE(c.is_stable(h));
        REQUIRE(c.leq(h, a));
        // Anything strictly above a stable arrow is unstable.
        if (h != a) {
          REQUIRE(!c.is_stable(a));
        }
      }
    }
    // Identity rho on an inverse semigroup: stable arrows have labels alpha^-1 beta.
    auto B2 = named_small("brandt_2");
    auto c  = derived(B2, Congruence::identity(B2));
    for (auto const& a : c.stable_arrows()) {
      REQUIRE(a.label == B2.product(c.context().t_inverse(a.source), a.target));
    }
  }

  TEST_CASE("semigroupoid Green relations on loops", "[derived]") {
    auto const corpus = generate_corpus();
    auto const ctxs   = context_corpus(corpus, 12);
    std::size_t compared = 0;
    for (auto const& entry : ctxs) {
      auto c = derived(entry.semigroup, entry.rho);
      auto const& S = c.context().s();
      for (elem alpha = 0; alpha < c.context().t().order(); ++alpha) {
        std::vector<Arrow> loops;
        for (auto const& a : c.arrows()) {
          if (a.source == alpha && a.target == alpha) {
            loops.push_back(a);
          }
        }
        // R in the hom-set semigroup C(alpha, alpha), by brute force over S^1.
        auto reach = [&](Arrow const& x, Arrow const& y) {
          if (x == y) {
            return true;
          }
          for (auto const& u : loops) {
            if (S.product(x.label, u.label) == y.label) {
              return true;
            }
          }
          return false;
        };
        auto lreach = [&](Arrow const& x, Arrow const& y) {
          if (x == y) {
            return true;
          }
          for (auto const& u : loops) {
            if (S.product(u.label, x.label) == y.label) {
              return true;
            }
          }
          return false;
        };
        for (auto const& a : loops) {
          for (auto const& b : loops) {
            REQUIRE(c.r_related(a, b) == (reach(a, b) && reach(b, a)));
            REQUIRE(c.l_related(a, b) == (lreach(a, b) && lreach(b, a)));
            ++compared;
          }
        }
      }
    }
    REQUIRE(compared > 1000);
  }

  TEST_CASE("arrow lemmas on small contexts", "[derived]") {
    auto const corpus = generate_corpus();
    auto const ctxs   = context_corpus(corpus, 10);
    REQUIRE(ctxs.size() > 30);
    for (auto const& entry : ctxs) {
      INFO(entry.name);
      require_lemmas(derived(entry.semigroup, entry.rho));
      require_lemmas(derived(entry.semigroup, entry.rho, DaggerPolicy::highest));
    }
  }

}  // namespace esli
