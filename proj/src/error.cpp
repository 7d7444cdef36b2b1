#include "esli/error.hpp"

namespace esli {

  std::string_view error_code_name(ErrorCode code) noexcept {
    switch (code) {
      case ErrorCode::non_associative: return "NonAssociative";
      case ErrorCode::out_of_range: return "OutOfRange";
      case ErrorCode::not_idempotent: return "NotIdempotent";
      case ErrorCode::not_locally_inverse: return "NotLocallyInverse";
      case ErrorCode::non_singleton_sandwich: return "NonSingletonSandwich";
      case ErrorCode::precondition_violated: return "PreconditionViolated";
      case ErrorCode::uniqueness_failure: return "UniquenessFailure";
      case ErrorCode::not_a_congruence: return "NotACongruence";
      case ErrorCode::quotient_not_inverse: return "QuotientNotInverse";
      case ErrorCode::not_regular: return "NotRegular";
      case ErrorCode::order_bound: return "OrderBound";
      case ErrorCode::not_a_group: return "NotAGroup";
      case ErrorCode::incompatible_homs: return "IncompatibleHoms";
      case ErrorCode::unknown_kind: return "UnknownKind";
      case ErrorCode::action_invalid: return "ActionInvalid";
      case ErrorCode::search_budget_exceeded: return "SearchBudgetExceeded";
      case ErrorCode::syntax_error: return "SyntaxError";
      case ErrorCode::no_match: return "NoMatch";
      case ErrorCode::budget_exceeded: return "BudgetExceeded";
      case ErrorCode::not_consecutive: return "NotConsecutive";
      case ErrorCode::not_adjacent: return "NotAdjacent";
      case ErrorCode::tul3_disagreement: return "Tul3Disagreement";
      case ErrorCode::not_e_solid: return "NotESolid";
      case ErrorCode::rho_not_over_cs: return "RhoNotOverCS";
      case ErrorCode::not_a_path: return "NotAPath";
      case ErrorCode::bad_composition: return "BadComposition";
      case ErrorCode::unclassified: return "Unclassified";
      case ErrorCode::case_not_covered: return "CaseNotCovered";
      case ErrorCode::no_witness_in_budget: return "NoWitnessInBudget";
      case ErrorCode::invariance_violated: return "InvarianceViolated";
      case ErrorCode::parse_error: return "ParseError";
    }
    return "Unknown";
  }

  Error::Error(ErrorCode code, std::string const& what, std::vector<std::uint64_t> witness)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + what),
        _code(code),
        _witness(std::move(witness)) {}

}  // namespace esli
