#ifndef ESLI_UPSILON_HPP_
#define ESLI_UPSILON_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "esli/tilde_word.hpp"

namespace esli {

  //! The generators I and Upsilon_3, Upsilon_4, Upsilon_5 of the congruence on X~+.
  enum class UpsilonRule : std::uint8_t { i, u3, u4, u5 };
  //! Forward rewrites the left side of a generating pair into its right side.
  enum class Direction : std::uint8_t { forward, backward };

  struct UpsilonStep {
    UpsilonRule rule      = UpsilonRule::i;
    Direction   direction = Direction::forward;
    std::size_t position  = 0;
    letter      param     = 0;  // the inserted y of backward Upsilon_3 and Upsilon_4

    bool operator==(UpsilonStep const&) const = default;
  };

  using Derivation = std::vector<UpsilonStep>;

  //! Bitmask over UpsilonRule values.
  using RuleSet                       = std::uint8_t;
  constexpr RuleSet all_upsilon_rules = 0xF;

  constexpr RuleSet rule_bit(UpsilonRule r) noexcept {
    return static_cast<RuleSet>(1U << static_cast<unsigned>(r));
  }

  //! Throws NoMatch when the rule's side does not occur at the position.
  TildeWord apply_upsilon_step(TildeWord const& w, UpsilonStep const& step);
  //! The step undoing `step`, which must apply to `before`.
  UpsilonStep inverse_step(TildeWord const& before, UpsilonStep const& step);
  std::vector<UpsilonStep> upsilon_steps(TildeWord const&           w,
                                         std::vector<letter> const& alphabet,
                                         std::size_t                max_len,
                                         RuleSet                    rules = all_upsilon_rules);
  TildeWord                replay(TildeWord const& start, Derivation const& d);

  std::string to_string(UpsilonStep const& step);

  //! Shortest derivation within max_steps using words of length <= max_len;
  //! absent when none exists in bounds, BudgetExceeded past node_budget.
  std::optional<Derivation> derivation_search(TildeWord const&           u,
                                              TildeWord const&           v,
                                              std::vector<letter> const& alphabet,
                                              std::size_t                max_steps,
                                              std::size_t                max_len,
                                              RuleSet     rules       = all_upsilon_rules,
                                              std::size_t node_budget = 2'000'000);

}  // namespace esli

#endif  // ESLI_UPSILON_HPP_
