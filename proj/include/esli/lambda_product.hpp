#ifndef ESLI_LAMBDA_PRODUCT_HPP_
#define ESLI_LAMBDA_PRODUCT_HPP_

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "esli/congruence.hpp"
#include "esli/semigroup.hpp"

namespace esli {

  //! A left action of an inverse semigroup T on K by endomorphisms.
  struct Action {
    FiniteSemigroup                t;
    FiniteSemigroup                k;
    std::vector<std::vector<elem>> eps;  // eps[t][a] is the image of a under t

    [[nodiscard]] elem act(elem t_elem, elem a) const {
      return eps[t_elem][a];
    }
  };

  struct ActionViolation {
    std::string       what;
    std::vector<elem> witness;
  };

  std::optional<ActionViolation> check_action(Action const& action);

  //! Unique inverses of an inverse semigroup; throws PreconditionViolated otherwise.
  std::vector<elem> unique_inverses(FiniteSemigroup const& T);

  class LambdaProduct {
   public:
    //! Throws ActionInvalid when check_action fails.
    explicit LambdaProduct(Action action);

    [[nodiscard]] Action const& action() const noexcept {
      return _action;
    }
    //! Pairs (a, t), sorted by t then a.
    [[nodiscard]] std::vector<std::pair<elem, elem>> const& carrier() const noexcept {
      return _carrier;
    }
    [[nodiscard]] FiniteSemigroup const& semigroup() const noexcept {
      return _product;
    }
    [[nodiscard]] std::vector<elem> const& t_inverse() const noexcept {
      return _t_inverse;
    }
    [[nodiscard]] std::optional<elem> index_of(elem a, elem t) const;
    //! The second projection as an element map onto T.
    [[nodiscard]] std::vector<elem> second_projection() const;
    [[nodiscard]] Congruence        theta2() const;

   private:
    Action                             _action;
    std::vector<std::pair<elem, elem>> _carrier;
    std::vector<std::int64_t>          _index;  // t * |K| + a -> carrier index or -1
    std::vector<elem>                  _t_inverse;
    FiniteSemigroup                    _product;
  };

  LambdaProduct lambda_sdp(Action action);

  struct ClauseResult {
    bool        pass = false;
    std::string detail;
  };

  struct LsdtulReport {
    bool                        precondition = false;  // K completely simple
    std::array<ClauseResult, 5> clauses;

    [[nodiscard]] bool all_pass() const {
      if (!precondition) {
        return false;
      }
      for (auto const& c : clauses) {
        if (!c.pass) {
          return false;
        }
      }
      return true;
    }
  };

  LsdtulReport verify_lsdtul(LambdaProduct const& product);

  //! Actions of T on K; stops after `limit` actions and throws
  //! SearchBudgetExceeded after `budget` generator-image trials.
  std::vector<Action> enumerate_actions(FiniteSemigroup const& k,
                                        FiniteSemigroup const& t,
                                        std::size_t            limit  = SIZE_MAX,
                                        std::size_t            budget = 5'000'000);

  Action trivial_action(FiniteSemigroup const& k, FiniteSemigroup const& t);

}  // namespace esli

#endif  // ESLI_LAMBDA_PRODUCT_HPP_
