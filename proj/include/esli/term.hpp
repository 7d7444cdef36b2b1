#ifndef ESLI_TERM_HPP_
#define ESLI_TERM_HPP_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "esli/semigroup.hpp"
#include "esli/tilde_word.hpp"

namespace esli {

  //! A term of the free binary semigroup over a doubled alphabet, stored
  //! in prefix order. Concatenation nodes are kept flat.
  class Term {
   public:
    enum class Kind : std::uint8_t { letter, wedge, concat };

    static Term make_letter(letter x);
    static Term make_wedge(Term const& u, Term const& v);
    //! Flattens nested concatenations; a single factor is returned as is.
    static Term make_concat(std::vector<Term> const& factors);
    static Term from_tokens(std::vector<std::uint32_t> tokens);

    [[nodiscard]] Kind              kind() const;
    [[nodiscard]] letter            as_letter() const;
    [[nodiscard]] std::vector<Term> children() const;
    [[nodiscard]] std::size_t       operation_count() const;
    [[nodiscard]] std::size_t       letter_count() const;

    [[nodiscard]] std::vector<std::uint32_t> const& tokens() const noexcept {
      return _tokens;
    }

    bool operator==(Term const&) const = default;
    auto operator<=>(Term const&) const = default;

   private:
    std::vector<std::uint32_t> _tokens;
  };

  struct TermHash {
    std::size_t operator()(Term const& t) const noexcept;
  };

  Term        parse_term(std::string_view text, DoubledAlphabet const& alphabet);
  std::string to_string(Term const& t, DoubledAlphabet const& alphabet);

  letter iota(Term const& t);
  letter tau(Term const& t);

  TildeWord r0_flatten(Term const& t);
  Term      word_to_term(TildeWord const& w);
  //! Defined when t already lies in X~+, i.e. every wedge has letter children.
  TildeWord term_to_word(Term const& t);

  enum class Rule : std::uint8_t { r0, r1, r2, r3, r4, r5 };

  struct Redex {
    Rule        rule;
    std::size_t node;   // token index of the wedge or concatenation node
    std::size_t index;  // first factor of the segment, for R1 to R5
  };

  //! Every applicable redex, innermost nodes first, left to right within a node.
  std::vector<Redex> redexes(Term const& t);
  Term               apply_redex(Term const& t, Redex const& r);

  //! Leftmost-innermost normal form.
  Term reduce(Term const& t);
  bool theta_cs_equal(Term const& u, Term const& v);
  bool theta_cs_equal(TildeWord const& u, TildeWord const& v);

  //! Normal forms over every maximal sequence of redex choices.
  std::vector<Term> all_normal_forms(Term const& t);

  //! Calls f on every term with exactly `ops` operation nodes over the letters.
  void for_each_term(std::size_t ops, std::vector<letter> const& letters,
                     std::function<void(Term const&)> const& f);

  //! Interprets letters via nu (indexed by letter) and wedge via a wedge table of S.
  elem evaluate(Term const& t, FiniteSemigroup const& S, std::vector<elem> const& nu,
                std::vector<elem> const& wedges);

  //! Maps on the doubled alphabet sending x' to an inverse of the image of x.
  std::vector<std::vector<elem>> matched_maps(FiniteSemigroup const& S, std::size_t base_size,
                                              std::size_t limit = SIZE_MAX);

}  // namespace esli

#endif  // ESLI_TERM_HPP_
