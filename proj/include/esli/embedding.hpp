#ifndef ESLI_EMBEDDING_HPP_
#define ESLI_EMBEDDING_HPP_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "esli/derived.hpp"
#include "esli/tilde_word.hpp"

namespace esli {

  //! How a primed letter a' is sent into the stable arrows.
  //! hat_of_dagger: hat(a dagger). dagger_of_hat: (hat a) dagger, which is not
  //! invariant under a' <-> a dagger when dagger does not respect the order.
  enum class PrimePolicy : std::uint8_t { hat_of_dagger, dagger_of_hat };

  //! Reading direction. Mirrored swaps source and target, R and L, and the
  //! order of composition; it is how T3 steps reuse the T4 case analysis.
  enum class Orientation : std::uint8_t { forward, mirrored };

  //! Letters over the arrows of a derived semigroupoid: letter 2i is arrow i,
  //! 2i + 1 its formal prime. Words over it are TildeWords.
  class ArrowAlphabet {
   public:
    explicit ArrowAlphabet(DerivedSemigroupoid c, PrimePolicy policy = PrimePolicy::hat_of_dagger);

    [[nodiscard]] DerivedSemigroupoid const& semigroupoid() const noexcept {
      return _c;
    }
    [[nodiscard]] PrimePolicy policy() const noexcept {
      return _policy;
    }
    [[nodiscard]] std::size_t arrow_count() const noexcept {
      return _c.arrows().size();
    }
    //! The underlying arrow of x, ignoring a prime.
    [[nodiscard]] Arrow  arrow(letter x) const;
    [[nodiscard]] letter letter_of(Arrow const& a) const;
    [[nodiscard]] std::vector<letter> letters() const;

    [[nodiscard]] elem alpha(letter x, Orientation o = Orientation::forward) const;
    [[nodiscard]] elem omega(letter x, Orientation o = Orientation::forward) const;
    [[nodiscard]] elem alpha(Sym const& s, Orientation o = Orientation::forward) const;
    [[nodiscard]] elem omega(Sym const& s, Orientation o = Orientation::forward) const;
    //! Letters always qualify; a wedge letter when alpha(first) = omega(second).
    [[nodiscard]] bool is_path_symbol(Sym const& s, Orientation o = Orientation::forward) const;

    //! The stable arrow assigned to a letter.
    [[nodiscard]] Arrow delta(letter x) const;
    //! Letters and wedge loops; throws NotAPath on other wedge letters.
    [[nodiscard]] Arrow delta(Sym const& s, Orientation o = Orientation::forward) const;

    [[nodiscard]] bool r_related(Arrow const& a, Arrow const& b, Orientation o = Orientation::forward) const;
    [[nodiscard]] bool l_related(Arrow const& a, Arrow const& b, Orientation o = Orientation::forward) const;
    [[nodiscard]] bool is_idempotent(Arrow const& a) const;

    //! Arrows a with a dagger = c.
    [[nodiscard]] std::vector<Arrow> const& dagger_preimages(Arrow const& c) const;
    //! Pairs (a, b) with a o b = c.
    [[nodiscard]] std::vector<std::pair<Arrow, Arrow>> const& factorizations(Arrow const& c) const;
    [[nodiscard]] std::vector<Arrow> const& arrows_from(elem object) const {
      return _from[object];
    }
    [[nodiscard]] std::vector<Arrow> const& arrows_to(elem object) const {
      return _to[object];
    }

    //! Names are a0, a1, ... by arrow id.
    [[nodiscard]] DoubledAlphabet const& names() const noexcept {
      return _names;
    }

   private:
    [[nodiscard]] std::size_t id(Arrow const& a) const {
      return _c.require_id(a);
    }

    DerivedSemigroupoid                                 _c;
    PrimePolicy                                         _policy;
    DoubledAlphabet                                     _names;
    std::vector<Arrow>                                  _delta;  // by letter
    std::vector<std::vector<std::uint64_t>>             _r_reach;
    std::vector<std::vector<std::uint64_t>>             _l_reach;
    std::vector<std::vector<Arrow>>                     _dagger_pre;
    std::vector<std::vector<std::pair<Arrow, Arrow>>>   _fact;
    std::vector<std::vector<Arrow>>                     _from;
    std::vector<std::vector<Arrow>>                     _to;
    mutable std::unordered_map<std::uint64_t, Arrow>    _wedge_memo;
  };

  std::string to_string(TildeWord const& w, ArrowAlphabet const& A);
  TildeWord   parse_arrow_word(std::string_view text, ArrowAlphabet const& A);

  [[nodiscard]] bool is_path(TildeWord const& w, ArrowAlphabet const& A);
  //! (alpha, omega) of a path; absent for non-paths.
  [[nodiscard]] std::optional<std::pair<elem, elem>> path_endpoints(TildeWord const& w,
                                                                    ArrowAlphabet const& A);
  //! Composite of the letter images; throws NotAPath.
  [[nodiscard]] Arrow hat_eval(TildeWord const&   path,
                               ArrowAlphabet const& A,
                               Orientation        o = Orientation::forward);

  struct KappaImage {
    TildeWord word;   // the one-letter word (s rho (s rho)^-1, s, s rho)
    elem      sigma;  // s rho
  };
  [[nodiscard]] KappaImage kappa(ArrowAlphabet const& A, elem s);

  // ---- derivation steps ----

  enum class StepKind : std::uint8_t {
    s1a, s1b, s21a, s21b, s22a, s22b, t3a, t3b, t4a, t4b, t5a, t5b, ia, ib
  };
  inline constexpr std::size_t step_kind_count = 14;
  std::string_view             step_kind_name(StepKind k) noexcept;
  std::optional<StepKind>      parse_step_kind(std::string_view name) noexcept;
  std::vector<StepKind>        all_step_kinds();

  //! Which component of a wedge letter an S22 step rewrites.
  enum class Side : std::uint8_t { left, right };

  //! Parameters by kind (letters, primes allowed where the rule allows):
  //!   S1a a' -> a dagger, S1b back; x = a.
  //!   S21a ab -> c, S21b back; x = a, y = b, z = c with a o b = c.
  //!   S22a (a^u) -> (c^u) on the left, (u^b) -> (u^c) on the right; S22b back;
  //!        x = a, y = b, z = c with a o b = c.
  //!   T3a (x^y)(x^z) -> (x^z), T3b back.
  //!   T4a (z^x)(y^x) -> (z^x), T4b back.
  //!   T5a x'x -> (x'^x), T5b back. Ia xx'x -> x, Ib back.
  struct DerivationStep {
    StepKind    kind     = StepKind::s1a;
    std::size_t position = 0;
    Side        side     = Side::left;
    letter      x        = 0;
    letter      y        = 0;
    letter      z        = 0;

    bool operator==(DerivationStep const&) const = default;
  };

  std::string    to_string(DerivationStep const& s, ArrowAlphabet const& A);
  DerivationStep parse_step(std::string_view text, ArrowAlphabet const& A);

  //! Throws NoMatch, or BadComposition for S21/S22 parameters with a o b != c.
  [[nodiscard]] TildeWord apply_step(TildeWord const& w, DerivationStep const& s, ArrowAlphabet const& A);
  //! Every instance of the kind that applies to w.
  [[nodiscard]] std::vector<DerivationStep> applicable_steps(TildeWord const& w,
                                                             StepKind         kind,
                                                             ArrowAlphabet const& A);
  //! Uniform over kinds with an instance, then uniform over instances; steps
  //! that lengthen the word are skipped once it has max_len symbols.
  [[nodiscard]] std::optional<DerivationStep> random_step(TildeWord const&    w,
                                                          ArrowAlphabet const& A,
                                                          std::size_t         max_len,
                                                          std::mt19937_64&    rng);

  // ---- bracketed words ----

  enum class ItemKind : std::uint8_t { letter, floor, ceil };

  //! floor is the [ ] bracket holding W^right words, ceil the { } bracket
  //! holding W^left words.
  struct BracketItem {
    ItemKind                 kind = ItemKind::letter;
    Sym                      sym{};
    std::vector<BracketItem> inner;

    bool operator==(BracketItem const&) const = default;
  };

  struct BracketedWord {
    std::vector<BracketItem> items;

    static BracketedWord from_word(TildeWord const& w);
    //! w with all brackets deleted.
    [[nodiscard]] TildeWord   strip() const;
    [[nodiscard]] std::size_t bracket_count() const;
    [[nodiscard]] std::size_t depth() const;
    [[nodiscard]] bool        empty() const noexcept {
      return items.empty();
    }

    bool operator==(BracketedWord const&) const = default;
  };

  //! Reverses the word, swaps the components of wedge letters and swaps the
  //! two bracket kinds.
  BracketedWord mirror(BracketedWord const& w);

  std::string   to_string(BracketedWord const& w, ArrowAlphabet const& A);
  BracketedWord parse_bracketed(std::string_view text, ArrowAlphabet const& A);

  //! W^emptyset| is empty_w, W^emptyset|right is empty_right, W^left|emptyset is
  //! left_empty and W^|emptyset is w_empty.
  enum class BracketClass : std::uint8_t { w, right, left, empty_w, empty_right, left_empty, w_empty };
  inline constexpr std::size_t bracket_class_count = 7;
  std::string_view             bracket_class_name(BracketClass c) noexcept;

  struct Classification {
    std::uint8_t bits = 0;

    [[nodiscard]] bool has(BracketClass c) const noexcept {
      return (bits >> static_cast<unsigned>(c) & 1U) != 0;
    }
    void set(BracketClass c) noexcept {
      bits = static_cast<std::uint8_t>(bits | 1U << static_cast<unsigned>(c));
    }
    [[nodiscard]] bool none() const noexcept {
      return bits == 0;
    }
    [[nodiscard]] std::string to_string() const;
    bool operator==(Classification const&) const = default;
  };

  //! The right/left counterpart of each class under mirroring.
  BracketClass   dual(BracketClass c) noexcept;
  Classification dual(Classification c) noexcept;

  [[nodiscard]] Classification classify_bracketed(BracketedWord const& w,
                                                  ArrowAlphabet const& A,
                                                  Orientation          o = Orientation::forward);

  //! The path of w read in class c; absent when it is empty. Throws
  //! Unclassified when w is not in c.
  [[nodiscard]] std::optional<TildeWord> wp(BracketedWord const& w,
                                            BracketClass         c,
                                            ArrowAlphabet const& A,
                                            Orientation          o = Orientation::forward);
  [[nodiscard]] std::optional<Arrow> wp_hat(BracketedWord const& w,
                                            BracketClass         c,
                                            ArrowAlphabet const& A,
                                            Orientation          o = Orientation::forward);
  //! Reads w in the first class it belongs to, in declaration order.
  [[nodiscard]] std::optional<Arrow> wp_hat(BracketedWord const& w, ArrowAlphabet const& A);

  // ---- lifting ----

  enum class LiftCase : std::uint8_t {
    path_section,         // S1, S21, T5 and I: a path section is replaced
    wedge_letter,         // S22: one wedge letter is replaced in place
    insert_after_letter,  // T4b on a loop or on the first letter of a { } group
    insert_after_floor,   // T4b on the last letter of a [ ] group
    drop_in_run,          // T4a, both letters in one run
    drop_floor_letter,    // T4a, the dropped letter is a whole [ ] group
    unwrap_ceil_prefix,   // T4a, [ {(z^x)u} w ] becomes u [ w ]
    drop_after_floor,     // T4a, a loop right after a [ ] group
    unwrap_last_ceil,     // T4a, { (y^x) } (z^x) becomes (y^x)
    split_ceil_suffix,    // T4a, the W^right group is cut before the suffix of its last { } group
    merge_ceils           // T4a, two adjacent { } groups are joined
  };
  inline constexpr std::size_t lift_case_count = 11;
  std::string_view             lift_case_name(LiftCase c) noexcept;

  struct Lift {
    BracketedWord word;
    LiftCase      rule     = LiftCase::path_section;
    bool          mirrored = false;  // T3 steps run the T4 surgery on the mirror
  };

  //! Requires w in W and the step to apply to the stripped word; throws
  //! PreconditionViolated otherwise and CaseNotCovered when no case fits.
  [[nodiscard]] Lift          lift_step_traced(BracketedWord const& w, DerivationStep const& s, ArrowAlphabet const& A);
  [[nodiscard]] BracketedWord lift_step(BracketedWord const& w, DerivationStep const& s, ArrowAlphabet const& A);

  //! Calls f on every bracketing of w with at most max_brackets bracket pairs
  //! where [ ] groups end and { } groups start with a non-loop wedge letter.
  //! Stops early when f returns false.
  void for_each_bracketing(TildeWord const&                                 w,
                           std::size_t                                      max_brackets,
                           ArrowAlphabet const&                             A,
                           std::function<bool(BracketedWord const&)> const& f);

  //! Brute force: the first bracketing of the result in W with the same
  //! wp_hat. Throws NoWitnessInBudget.
  [[nodiscard]] BracketedWord lift_step_oracle(BracketedWord const&  w,
                                               DerivationStep const& s,
                                               ArrowAlphabet const&  A,
                                               std::size_t           max_brackets);

  //! Number of non-loop wedge letters, an upper bound on the brackets any
  //! member of W over the word can carry.
  [[nodiscard]] std::size_t non_loop_wedges(TildeWord const& w, ArrowAlphabet const& A);

  // ---- checks and the verifier ----

  //! Lemma cut, Lemma deformedlemma(3) and Corollary e-r-l-disjoint on w and
  //! all of its bracket groups, accumulated into the given checks.
  void check_bracket_lemmas(BracketedWord const& w, ArrowAlphabet const& A, std::vector<LemmaCheck>& checks);

  struct EmbeddingReport {
    std::size_t                   derivations      = 0;
    std::size_t                   lifted_steps     = 0;
    std::map<StepKind, std::size_t> per_kind;
    std::map<LiftCase, std::size_t> per_case;
    std::size_t                   max_brackets     = 0;
    bool                          invariance_ok    = true;
    std::size_t                   rho_pairs        = 0;
    bool                          separation_ok    = true;
    std::size_t                   homomorphism_checks = 0;
    bool                          homomorphism_ok  = true;
    std::string                   failure;

    [[nodiscard]] bool ok() const noexcept {
      return invariance_ok && separation_ok && homomorphism_ok;
    }
  };

  //! Part (i) lifts `trials` random derivations of up to max_steps steps from
  //! kappa letters and throws InvarianceViolated, carrying the replayable
  //! transcript, if a lifted word leaves W or changes wp_hat. Parts (ii) and
  //! (iii) test separation of kappa letters inside rho-classes and the
  //! homomorphism condition on all pairs.
  EmbeddingReport verify_embedding(ArrowAlphabet const& A,
                                   std::size_t          trials,
                                   std::size_t          max_steps,
                                   std::uint64_t        seed,
                                   std::size_t          max_len = 10);

}  // namespace esli

#endif  // ESLI_EMBEDDING_HPP_
