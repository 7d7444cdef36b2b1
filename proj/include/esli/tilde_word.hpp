#ifndef ESLI_TILDE_WORD_HPP_
#define ESLI_TILDE_WORD_HPP_

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace esli {

  //! Letters of a doubled alphabet: 2 * i is the i-th base letter, 2 * i + 1 its prime.
  using letter = std::uint32_t;

  constexpr letter prime(letter x) noexcept {
    return x ^ 1U;
  }
  constexpr bool is_primed(letter x) noexcept {
    return (x & 1U) != 0;
  }
  constexpr letter base_letter(std::uint32_t i) noexcept {
    return 2 * i;
  }

  class DoubledAlphabet {
   public:
    explicit DoubledAlphabet(std::vector<std::string> base_names);
    //! Base letters x, y, z, w, then v4, v5, ...
    static DoubledAlphabet standard(std::size_t base_size);

    [[nodiscard]] std::size_t base_size() const noexcept {
      return _names.size();
    }
    [[nodiscard]] std::size_t size() const noexcept {
      return 2 * _names.size();
    }
    [[nodiscard]] std::vector<letter> letters() const;
    [[nodiscard]] std::string         name(letter x) const;
    //! Longest base name matching at the start of text.
    [[nodiscard]] std::optional<std::pair<letter, std::size_t>> match(std::string_view text) const;

   private:
    std::vector<std::string> _names;
  };

  //! A symbol of the alphabet X~: a letter, or a wedge letter (first ^ second).
  struct Sym {
    letter first  = 0;
    letter second = 0;
    bool   wedge  = false;

    static constexpr Sym single(letter x) noexcept {
      return Sym{x, 0, false};
    }
    static constexpr Sym wedge_of(letter x, letter y) noexcept {
      return Sym{x, y, true};
    }
    [[nodiscard]] constexpr letter iota() const noexcept {
      return first;
    }
    [[nodiscard]] constexpr letter tau() const noexcept {
      return wedge ? second : first;
    }
    auto operator<=>(Sym const&) const = default;
  };

  using TildeWord = std::vector<Sym>;

  letter    iota(TildeWord const& w);
  letter    tau(TildeWord const& w);
  //! (u ^ v) = (iota u ^ v tau), read as two-letter strings.
  TildeWord tilde_wedge(TildeWord const& u, TildeWord const& v);

  std::string to_string(TildeWord const& w, DoubledAlphabet const& alphabet);
  //! Words use the term grammar with letter-level wedges only, e.g. "x(x'^y)".
  TildeWord parse_tilde_word(std::string_view text, DoubledAlphabet const& alphabet);

  struct TildeWordHash {
    std::size_t operator()(TildeWord const& w) const noexcept;
  };

}  // namespace esli

#endif  // ESLI_TILDE_WORD_HPP_
