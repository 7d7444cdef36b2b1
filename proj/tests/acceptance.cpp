// Acceptance suite: one PASS/FAIL line per criterion. Pass criterion numbers
// as arguments to run a subset. Exit status 1 when any selected criterion fails.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "esli/congruence.hpp"
#include "esli/constructors.hpp"
#include "esli/corpus.hpp"
#include "esli/derived.hpp"
#include "esli/embedding.hpp"
#include "esli/error.hpp"
#include "esli/lambda_product.hpp"
#include "esli/semigroup.hpp"
#include "esli/term.hpp"
#include "esli/upsilon.hpp"

namespace {

  using namespace esli;

  struct Outcome {
    bool        pass = true;
    std::string detail;
  };

  //! Collects the first failure and counts what was checked.
  class Tally {
   public:
    void fail(std::string const& why) {
      if (_pass) {
        _first = why;
      }
      _pass = false;
      ++_failures;
    }
    void require(bool ok, std::function<std::string()> const& why) {
      if (!ok) {
        fail(why());
      }
    }
    [[nodiscard]] bool pass() const noexcept {
      return _pass;
    }
    [[nodiscard]] Outcome outcome(std::string summary) const {
      if (!_pass) {
        summary += "; " + std::to_string(_failures) + " failure(s), first: " + _first;
      }
      return {_pass, summary};
    }

   private:
    bool        _pass     = true;
    std::size_t _failures = 0;
    std::string _first;
  };

  std::vector<CorpusEntry> const& corpus() {
    static auto const c = generate_corpus();
    return c;
  }

  std::vector<ContextEntry> const& contexts() {
    static auto const c = context_corpus(corpus());
    return c;
  }

  ArrowAlphabet alphabet_of(ContextEntry const& e) {
    return ArrowAlphabet(DerivedSemigroupoid(ExtensionContext::build(e.semigroup, e.rho)));
  }

  Term random_term(std::mt19937_64& rng, std::size_t ops, std::vector<letter> const& letters) {
    if (ops == 0) {
      return Term::make_letter(letters[rng() % letters.size()]);
    }
    std::size_t const left = rng() % ops;
    auto const        u    = random_term(rng, left, letters);
    auto const        v    = random_term(rng, ops - 1 - left, letters);
    return rng() % 2 ? Term::make_wedge(u, v) : Term::make_concat({u, v});
  }

  //! All words of X~+ with 1 to max_len symbols over the given letters.
  std::vector<TildeWord> all_words(std::vector<letter> const& letters, std::size_t max_len) {
    std::vector<Sym> symbols;
    for (letter x : letters) {
      symbols.push_back(Sym::single(x));
    }
    for (letter x : letters) {
      for (letter y : letters) {
        symbols.push_back(Sym::wedge_of(x, y));
      }
    }
    std::vector<TildeWord> out, layer{{}};
    for (std::size_t len = 1; len <= max_len; ++len) {
      std::vector<TildeWord> next;
      for (auto const& w : layer) {
        for (auto const& s : symbols) {
          auto v = w;
          v.push_back(s);
          next.push_back(v);
        }
      }
      out.insert(out.end(), next.begin(), next.end());
      layer = std::move(next);
    }
    return out;
  }

  // ------------------------------------------------------------------ 1

  Outcome reduction_uniqueness() {
    Tally                     t;
    std::vector<letter> const two = DoubledAlphabet::standard(2).letters();
    auto const                X   = DoubledAlphabet::standard(2);
    std::size_t               terms = 0;
    for (std::size_t ops = 0; ops <= 5; ++ops) {
      for_each_term(ops, two, [&](Term const& term) {
        ++terms;
        auto const nf = all_normal_forms(term);
        t.require(nf.size() == 1, [&] {
          return to_string(term, X) + " has " + std::to_string(nf.size()) + " normal forms";
        });
        // Independent of the enumeration: the leftmost-innermost result, irreducible.
        t.require(nf.size() == 1 && nf[0] == reduce(term) && redexes(nf[0]).empty(),
                  [&] { return to_string(term, X) + ": enumeration disagrees with reduce"; });
      });
    }
    return t.outcome(std::to_string(terms) + " terms with <= 5 operation nodes over |X| = 2");
  }

  // ------------------------------------------------------------------ 2

  //! The derivation from `to` back to `from`, given a derivation from `from` to `to`.
  Derivation reversed(TildeWord const& from, Derivation const& d) {
    std::vector<TildeWord> words{from};
    for (auto const& s : d) {
      words.push_back(apply_upsilon_step(words.back(), s));
    }
    Derivation out;
    for (std::size_t k = d.size(); k-- > 0;) {
      out.push_back(inverse_step(words[k], d[k]));
    }
    return out;
  }

  Outcome generators() {
    Tally      t;
    auto const X       = DoubledAlphabet::standard(2);
    auto const letters = X.letters();
    auto const words   = all_words(letters, 3);

    // Soundness: every applicable I or Upsilon step keeps the reduced form.
    std::size_t steps = 0;
    for (auto const& w : words) {
      for (auto const& s : upsilon_steps(w, letters, 5)) {
        auto const v = apply_upsilon_step(w, s);
        ++steps;
        t.require(reduce(word_to_term(v)) == reduce(word_to_term(w)),
                  [&] { return to_string(s) + " changes the reduced form of " + to_string(w, X); });
        t.require(apply_upsilon_step(v, inverse_step(w, s)) == w,
                  [&] { return to_string(s) + " is not undone on " + to_string(w, X); });
      }
    }

    // Completeness: classes of equal reduced forms, each joined through a hub.
    std::map<Term, std::vector<std::size_t>> classes;
    for (std::size_t k = 0; k < words.size(); ++k) {
      classes[reduce(word_to_term(words[k]))].push_back(k);
    }
    std::size_t pairs = 0, direct = 0, longest = 0;
    for (auto const& [nf, members] : classes) {
      std::size_t hub = members.front();
      for (auto k : members) {
        if (words[k].size() < words[hub].size()) {
          hub = k;
        }
      }
      std::vector<std::optional<Derivation>> to_hub(members.size());
      for (std::size_t i = 0; i < members.size(); ++i) {
        to_hub[i] = derivation_search(words[members[i]], words[hub], letters, 8, 5);
      }
      for (std::size_t i = 0; i < members.size(); ++i) {
        for (std::size_t j = 0; j < members.size(); ++j) {
          if (i == j) {
            continue;
          }
          ++pairs;
          auto const& u = words[members[i]];
          auto const& v = words[members[j]];
          std::optional<Derivation> d;
          if (to_hub[i] && to_hub[j] && to_hub[i]->size() + to_hub[j]->size() <= 12) {
            d = *to_hub[i];
            auto const back = reversed(v, *to_hub[j]);
            d->insert(d->end(), back.begin(), back.end());
          } else {
            ++direct;
            d = derivation_search(u, v, letters, 12, 5);
          }
          t.require(d.has_value() && d->size() <= 12, [&] {
            return "no derivation within 12 steps from " + to_string(u, X) + " to " + to_string(v, X);
          });
          if (d) {
            longest = std::max(longest, d->size());
            t.require(replay(u, *d) == v, [&] {
              return "witness from " + to_string(u, X) + " does not replay to " + to_string(v, X);
            });
          }
        }
      }
    }
    return t.outcome(std::to_string(steps) + " steps on " + std::to_string(words.size())
                     + " words; " + std::to_string(pairs) + " equal pairs witnessed, "
                     + std::to_string(direct) + " by direct search, longest "
                     + std::to_string(longest) + " steps");
  }

  // ------------------------------------------------------------------ 3

  Outcome matched_maps_sound() {
    Tally           t;
    auto const      X       = DoubledAlphabet::standard(3);
    auto const      letters = X.letters();
    std::mt19937_64 rng(3);
    std::size_t     members = 0, pairs = 0, evaluations = 0, min_maps = SIZE_MAX;
    std::vector<std::string> few;
    for (auto const& e : corpus()) {
      auto const& S = e.semigroup;
      if (S.order() > 8 || !is_completely_simple(S)) {
        continue;
      }
      ++members;
      auto const maps   = matched_maps(S, 3);
      auto const wedges = wedge_table(S);
      min_maps          = std::min(min_maps, maps.size());
      if (maps.size() < 20) {
        few.push_back(e.name + ":" + std::to_string(maps.size()));
      }
      for (std::size_t n = 0; n < 1000; ++n) {
        Term const u = random_term(rng, rng() % 7, letters);
        Term       v = reduce(u);
        switch (rng() % 3) {
          case 0:
            break;
          case 1: {  // a partial reduction
            v = u;
            for (auto r = redexes(v); !r.empty() && rng() % 3 != 0; r = redexes(v)) {
              v = apply_redex(v, r[rng() % r.size()]);
            }
            break;
          }
          default: {  // a random I / Upsilon walk from the flattened word
            TildeWord w = r0_flatten(u);
            for (std::size_t k = rng() % 6 + 1; k-- > 0;) {
              auto const steps = upsilon_steps(w, letters, 8);
              if (steps.empty()) {
                break;
              }
              w = apply_upsilon_step(w, steps[rng() % steps.size()]);
            }
            v = word_to_term(w);
          }
        }
        t.require(theta_cs_equal(u, v), [&] {
          return to_string(u, X) + " and " + to_string(v, X) + " were built equal but compare unequal";
        });
        ++pairs;
        for (auto const& nu : maps) {
          ++evaluations;
          t.require(evaluate(u, S, nu, wedges) == evaluate(v, S, nu, wedges), [&] {
            return e.name + ": " + to_string(u, X) + " and " + to_string(v, X) + " evaluate differently";
          });
        }
      }
    }
    t.require(pairs >= 10'000, [] { return "fewer than 10^4 pairs"; });
    std::string summary = std::to_string(members) + " completely simple members, "
                          + std::to_string(pairs) + " equal pairs, " + std::to_string(evaluations)
                          + " evaluations; members with < 20 maps over 3 letters use all of them:";
    for (auto const& f : few) {
      summary += " " + f;
    }
    return t.outcome(summary);
  }

  // ------------------------------------------------------------------ 4

  struct ActionSet {
    std::vector<Action> actions;
    std::size_t         pairs = 0;
  };

  //! Every action of an inverse corpus member of order <= 5 on a completely
  //! simple corpus member of order <= 8.
  ActionSet const& all_small_actions() {
    static ActionSet const set = [] {
      ActionSet out;
      for (auto const& k : corpus()) {
        if (k.semigroup.order() > 8 || !is_completely_simple(k.semigroup)) {
          continue;
        }
        for (auto const& t : corpus()) {
          if (t.semigroup.order() > 5 || !is_inverse(t.semigroup)) {
            continue;
          }
          ++out.pairs;
          auto acts = enumerate_actions(k.semigroup, t.semigroup, SIZE_MAX, 50'000'000);
          out.actions.insert(out.actions.end(), acts.begin(), acts.end());
        }
      }
      return out;
    }();
    return set;
  }

  Outcome lsdtul() {
    Tally       t;
    auto const& set = all_small_actions();
    for (std::size_t n = 0; n < set.actions.size(); ++n) {
      auto const rep = verify_lsdtul(LambdaProduct(set.actions[n]));
      t.require(rep.precondition, [&] { return "action " + std::to_string(n) + ": K not completely simple"; });
      for (std::size_t c = 0; c < rep.clauses.size(); ++c) {
        t.require(rep.clauses[c].pass, [&] {
          return "action " + std::to_string(n) + " clause " + std::to_string(c) + ": " + rep.clauses[c].detail;
        });
      }
    }
    return t.outcome(std::to_string(set.actions.size()) + " actions over "
                     + std::to_string(set.pairs) + " (K, T) pairs, five clauses each");
  }

  // ------------------------------------------------------------------ 5

  Outcome arrow_lemmas() {
    Tally                              t;
    std::map<std::string, std::size_t> instances;
    std::size_t                        n = 0;
    for (auto const& e : contexts()) {
      if (e.semigroup.order() > 20) {
        continue;
      }
      for (auto policy : {DaggerPolicy::lowest, DaggerPolicy::highest}) {
        ++n;
        DerivedSemigroupoid const c(ExtensionContext::build(e.semigroup, e.rho, policy));
        for (auto const& l : check_lemmas(c)) {
          instances[l.name] += l.instances;
          t.require(l.pass, [&] { return e.name + " " + l.name + ": " + l.detail; });
        }
      }
    }
    std::size_t total = 0;
    for (auto const& [name, k] : instances) {
      total += k;
      t.require(k > 0, [&] { return name + " never instantiated"; });
    }
    return t.outcome(std::to_string(n) + " context/dagger pairs, " + std::to_string(instances.size())
                     + " lemma checks, " + std::to_string(total) + " instances");
  }

  // ------------------------------------------------------------------ 6 and 7

  //! A lengthening step that stays within max_len, drawn from the least used
  //! kinds half of the time so that rare kinds are not starved.
  std::optional<DerivationStep> stratified_step(TildeWord const& w, ArrowAlphabet const& A,
                                                std::size_t max_len, std::map<StepKind, std::size_t> const& seen,
                                                std::mt19937_64& rng) {
    std::vector<std::vector<DerivationStep>> options;
    for (auto k : all_step_kinds()) {
      std::vector<DerivationStep> ok;
      for (auto const& s : applicable_steps(w, k, A)) {
        if (apply_step(w, s, A).size() <= max_len) {
          ok.push_back(s);
        }
      }
      if (!ok.empty()) {
        options.push_back(std::move(ok));
      }
    }
    if (options.empty()) {
      return std::nullopt;
    }
    std::size_t pick = rng() % options.size();
    if (rng() % 2 == 0) {
      auto count = [&](std::size_t i) {
        auto it = seen.find(options[i].front().kind);
        return it == seen.end() ? 0 : it->second;
      };
      for (std::size_t i = 0; i < options.size(); ++i) {
        if (count(i) < count(pick)) {
          pick = i;
        }
      }
    }
    auto const& list = options[pick];
    return list[rng() % list.size()];
  }

  struct Sweep {
    std::size_t derivations = 0;
    std::size_t max_steps   = 0;
    std::size_t max_len     = 0;
    std::uint64_t seed      = 0;
  };

  //! Lifts stratified random derivations from every kappa letter; calls
  //! each_step(before, step, lifted, A) after the invariant checks.
  void sweep(Sweep const& cfg, Tally& t, std::map<StepKind, std::size_t>& kinds,
             std::map<LiftCase, std::size_t>& cases,
             std::function<void(BracketedWord const&, DerivationStep const&, BracketedWord const&,
                                ArrowAlphabet const&, std::string const&)> const& each_step) {
    for (auto const& e : contexts()) {
      auto const      A = alphabet_of(e);
      auto const&     S = e.semigroup;
      std::mt19937_64 rng(cfg.seed);
      for (std::size_t d = 0; d < cfg.derivations; ++d) {
        elem const  s      = static_cast<elem>(rng() % S.order());
        auto const  start  = kappa(A, s).word;
        Arrow const target = A.arrow(start.front().first);
        auto        bw     = BracketedWord::from_word(start);
        std::string transcript = e.name + " seed " + std::to_string(cfg.seed) + " derivation "
                                 + std::to_string(d) + " start " + to_string(start, A);
        for (std::size_t k = 0; k < cfg.max_steps && t.pass(); ++k) {
          TildeWord const w  = bw.strip();
          auto const      st = stratified_step(w, A, cfg.max_len, kinds, rng);
          if (!st) {
            break;
          }
          transcript += " ; " + to_string(*st, A);
          Lift lifted;
          try {
            lifted = lift_step_traced(bw, *st, A);
          } catch (Error const& err) {
            t.fail(transcript + " : " + err.what());
            break;
          }
          t.require(lifted.word.strip() == apply_step(w, *st, A),
                    [&] { return transcript + " : lift does not strip to the derived word"; });
          t.require(classify_bracketed(lifted.word, A).has(BracketClass::w),
                    [&] { return transcript + " : lifted word left W"; });
          t.require(wp_hat(lifted.word, BracketClass::w, A) == target,
                    [&] { return transcript + " : wp_hat changed"; });
          ++kinds[st->kind];
          ++cases[lifted.rule];
          if (each_step) {
            each_step(bw, *st, lifted.word, A, transcript);
          }
          bw = std::move(lifted.word);
        }
      }
    }
  }

  std::string unseen_cases(std::map<LiftCase, std::size_t> const& cases) {
    std::string out;
    for (std::size_t c = 0; c < lift_case_count; ++c) {
      if (!cases.contains(static_cast<LiftCase>(c))) {
        out += (out.empty() ? " (never: " : ", ") + std::string(lift_case_name(static_cast<LiftCase>(c)));
      }
    }
    return out.empty() ? out : out + ")";
  }

  Outcome invariance() {
    Tally                           t;
    std::map<StepKind, std::size_t> kinds;
    std::map<LiftCase, std::size_t> cases;
    sweep({40, 80, 14, 6}, t, kinds, cases, nullptr);
    std::size_t total = 0, rarest = SIZE_MAX;
    for (auto k : all_step_kinds()) {
      total += kinds[k];
      rarest = std::min(rarest, kinds[k]);
      t.require(kinds[k] >= 500, [&] {
        return std::string(step_kind_name(k)) + " lifted only " + std::to_string(kinds[k]) + " times";
      });
    }
    t.require(total >= 10'000, [] { return "fewer than 10^4 lifted steps"; });
    t.require(cases.size() == lift_case_count, [&] { return "lift cases missed" + unseen_cases(cases); });
    return t.outcome(std::to_string(total) + " lifted steps over " + std::to_string(contexts().size())
                     + " contexts, " + std::to_string(kinds.size()) + " kinds (rarest "
                     + std::to_string(rarest) + "), " + std::to_string(cases.size()) + " of "
                     + std::to_string(lift_case_count) + " lift cases" + unseen_cases(cases));
  }

  Outcome oracle_agreement() {
    Tally                           t;
    std::map<StepKind, std::size_t> kinds;
    std::map<LiftCase, std::size_t> cases;
    std::size_t                     compared = 0;
    sweep({12, 20, 6, 8}, t, kinds, cases,
          [&](BracketedWord const& before, DerivationStep const& st, BracketedWord const& lifted,
              ArrowAlphabet const& A, std::string const& transcript) {
            TildeWord const next = lifted.strip();
            if (next.size() > 6) {
              return;
            }
            ++compared;
            try {
              auto const oracle = lift_step_oracle(before, st, A, non_loop_wedges(next, A));
              t.require(classify_bracketed(oracle, A).has(BracketClass::w)
                            == classify_bracketed(lifted, A).has(BracketClass::w),
                        [&] { return transcript + " : W-membership differs from the oracle"; });
              t.require(wp_hat(oracle, BracketClass::w, A) == wp_hat(lifted, BracketClass::w, A),
                        [&] { return transcript + " : wp_hat differs from the oracle"; });
            } catch (Error const& err) {
              t.fail(transcript + " : oracle " + err.what());
            }
          });
    return t.outcome(std::to_string(compared) + " lifted steps compared with the brute-force oracle, "
                     + std::to_string(kinds.size()) + " kinds");
  }

  // ------------------------------------------------------------------ 8

  bool idempotent_separating(FiniteSemigroup const& S, Congruence const& rho) {
    auto const E = idempotents(S).members();
    for (std::size_t i = 0; i < E.size(); ++i) {
      for (std::size_t j = i + 1; j < E.size(); ++j) {
        if (rho.related(E[i], E[j])) {
          return false;
        }
      }
    }
    return true;
  }

  Outcome embedding() {
    Tally       t;
    std::size_t inverse_sep = 0, theta2 = 0, steps = 0, pairs = 0;
    for (auto const& e : contexts()) {
      auto const A = alphabet_of(e);
      auto const& c = A.semigroupoid();
      try {
        auto const rep = verify_embedding(A, 60, 30, 8);
        steps += rep.lifted_steps;
        t.require(rep.ok(), [&] { return e.name + ": " + rep.failure; });
      } catch (Error const& err) {
        t.fail(e.name + ": " + err.what());
      }
      // Independent of the verifier: kappa letters are stable arrows over s and
      // their hats differ inside each rho-class.
      std::vector<Arrow> k(e.semigroup.order());
      for (elem s = 0; s < e.semigroup.order(); ++s) {
        k[s] = A.arrow(kappa(A, s).word.front().first);
        t.require(k[s].label == s && c.is_stable(k[s]) && c.hat(k[s]) == k[s],
                  [&] { return e.name + ": kappa(" + std::to_string(s) + ") is not a stable arrow over it"; });
      }
      for (elem s = 0; s < k.size(); ++s) {
        for (elem u = s + 1; u < k.size(); ++u) {
          if (e.rho.related(s, u)) {
            ++pairs;
            t.require(c.hat(k[s]) != c.hat(k[u]), [&] {
              return e.name + ": kappa(" + std::to_string(s) + ") and kappa(" + std::to_string(u) + ") share wp_hat";
            });
          }
        }
      }
      if (is_inverse(e.semigroup) && idempotent_separating(e.semigroup, e.rho)
          && e.rho.num_classes() < e.semigroup.order()) {
        ++inverse_sep;
      }
      if (e.name.find("theta2") != std::string::npos) {
        ++theta2;
      }
    }
    t.require(inverse_sep > 0, [] { return "no inverse idempotent-separating instance with nontrivial rho"; });
    t.require(theta2 > 0, [] { return "no lambda-semidirect theta2 instance"; });
    return t.outcome(std::to_string(contexts().size()) + " contexts (" + std::to_string(inverse_sep)
                     + " inverse idempotent-separating, " + std::to_string(theta2) + " theta2), "
                     + std::to_string(steps) + " lifted steps, " + std::to_string(pairs)
                     + " rho-related kappa pairs separated");
  }

  // ------------------------------------------------------------------ 9

  Outcome least_inverse() {
    Tally       t;
    std::size_t oracle = 0, yamada = 0;
    for (auto const& e : corpus()) {
      auto const& S = e.semigroup;
      if (S.order() > 8 || !is_regular(S)) {
        continue;
      }
      auto const least = least_inverse_congruence(S);
      if (S.order() <= 6) {
        // Meet of every congruence with an inverse quotient.
        Partition meet_all = Partition::universal(S.order());
        for (auto const& c : all_congruences(S, 6)) {
          if (is_inverse(quotient(S, c).quotient)) {
            meet_all = meet(meet_all, c.partition());
          }
        }
        ++oracle;
        t.require(least.partition() == meet_all, [&] { return e.name + ": differs from the intersection"; });
      }
      ++yamada;
      t.require(is_e_solid(S) == is_congruence_over_cs(S, least),
                [&] { return e.name + ": is_e_solid disagrees with the least inverse congruence"; });
    }
    return t.outcome(std::to_string(oracle) + " members against the intersection oracle, "
                     + std::to_string(yamada) + " against the criterion on E-solidity");
  }

  // ------------------------------------------------------------------ 10

  //! E-solid: the core is completely regular. Locally inverse: every eSe is inverse.
  bool solid_and_li_by_oracle(FiniteSemigroup const& S) {
    return is_completely_regular(restrict_to(S, core(S)).semigroup)
           && is_locally_inverse_by_submonoids(S);
  }

  Outcome lsdp_forward() {
    Tally                        t;
    std::vector<FiniteSemigroup> products;
    for (auto const& a : all_small_actions().actions) {
      products.push_back(LambdaProduct(a).semigroup());
    }
    for (auto const& e : corpus()) {
      if (e.action && is_completely_simple(e.action->k)) {
        products.push_back(e.semigroup);
      }
    }
    for (std::size_t n = 0; n < products.size(); ++n) {
      auto const& P = products[n];
      t.require(is_e_solid(P) && is_locally_inverse(P) && solid_and_li_by_oracle(P),
                [&] { return "product " + std::to_string(n) + " fails"; });
    }
    std::mt19937_64 rng(10);
    std::size_t     regular = 0, tried = 0;
    while (regular < 200 && tried < 200'000) {
      ++tried;
      auto const&       P = products[rng() % products.size()];
      std::vector<elem> seed;
      for (std::size_t k = rng() % 3 + 1; k-- > 0;) {
        seed.push_back(static_cast<elem>(rng() % P.order()));
      }
      auto const sub = generated_subsemigroup(P, seed).semigroup;
      if (!is_regular(sub) || sub.order() == P.order()) {
        continue;
      }
      ++regular;
      t.require(is_e_solid(sub) && is_locally_inverse(sub) && solid_and_li_by_oracle(sub),
                [&] { return "a regular subsemigroup of order " + std::to_string(sub.order()) + " fails"; });
    }
    t.require(regular >= 100, [] { return "fewer than 100 regular proper subsemigroups"; });
    return t.outcome(std::to_string(products.size()) + " products, " + std::to_string(regular)
                     + " random regular proper subsemigroups");
  }

  struct Criterion {
    int                      id;
    char const*              title;
    std::function<Outcome()> run;
  };

}  // namespace

int main(int argc, char** argv) {
  std::vector<Criterion> const all{
      {1, "reduction uniqueness", reduction_uniqueness},
      {2, "generator soundness and completeness", generators},
      {3, "matched-map soundness", matched_maps_sound},
      {4, "lambda-semidirect structure clauses", lsdtul},
      {5, "arrow lemmas", arrow_lemmas},
      {6, "wp_hat invariance under lifted steps", invariance},
      {7, "lift agrees with the brute-force oracle", oracle_agreement},
      {8, "embedding mechanism", embedding},
      {9, "least inverse congruence and E-solidity", least_inverse},
      {10, "lambda-semidirect products are E-solid and locally inverse", lsdp_forward}};
  std::set<int> selected;
  for (int i = 1; i < argc; ++i) {
    selected.insert(std::stoi(argv[i]));
  }
  bool all_pass = true;
  for (auto const& c : all) {
    if (!selected.empty() && !selected.contains(c.id)) {
      continue;
    }
    auto const start = std::chrono::steady_clock::now();
    Outcome    o;
    try {
      o = c.run();
    } catch (std::exception const& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    double const secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    all_pass &= o.pass;
    std::printf("criterion %2d: %s  %s [%s] (%.1f s)\n", c.id, o.pass ? "PASS" : "FAIL", c.title,
                o.detail.c_str(), secs);
    std::fflush(stdout);
  }
  return all_pass ? 0 : 1;
}
