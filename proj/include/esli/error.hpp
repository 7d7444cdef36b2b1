#ifndef ESLI_ERROR_HPP_
#define ESLI_ERROR_HPP_

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace esli {

  //! Every failure raised by the library carries one of these codes.
  enum class ErrorCode : std::uint8_t {
    non_associative,
    out_of_range,
    not_idempotent,
    not_locally_inverse,
    non_singleton_sandwich,
    precondition_violated,
    uniqueness_failure,
    not_a_congruence,
    quotient_not_inverse,
    not_regular,
    order_bound,
    not_a_group,
    incompatible_homs,
    unknown_kind,
    action_invalid,
    search_budget_exceeded,
    syntax_error,
    no_match,
    budget_exceeded,
    not_consecutive,
    not_adjacent,
    tul3_disagreement,
    not_e_solid,
    rho_not_over_cs,
    not_a_path,
    bad_composition,
    unclassified,
    case_not_covered,
    no_witness_in_budget,
    invariance_violated,
    parse_error
  };

  std::string_view error_code_name(ErrorCode code) noexcept;

  class Error : public std::runtime_error {
   public:
    Error(ErrorCode code, std::string const& what, std::vector<std::uint64_t> witness = {});

    [[nodiscard]] ErrorCode code() const noexcept {
      return _code;
    }

    //! Elements, positions or indices that exhibit the failure.
    [[nodiscard]] std::vector<std::uint64_t> const& witness() const noexcept {
      return _witness;
    }

   private:
    ErrorCode                  _code;
    std::vector<std::uint64_t> _witness;
  };

}  // namespace esli

#endif  // ESLI_ERROR_HPP_
