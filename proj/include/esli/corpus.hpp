#ifndef ESLI_CORPUS_HPP_
#define ESLI_CORPUS_HPP_

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "esli/congruence.hpp"
#include "esli/lambda_product.hpp"
#include "esli/semigroup.hpp"

namespace esli {

  struct CorpusEntry {
    std::string           name;
    std::string           kind;  // named, rees, sslat or lsdp
    FiniteSemigroup       semigroup;
    std::optional<Action> action;  // set for lsdp entries
  };

  struct CorpusConfig {
    std::size_t actions_per_pair = 6;
    std::size_t max_lsdp_order   = 40;
  };

  //! Deterministic: named small semigroups, a Rees matrix sweep, strong
  //! semilattices and lambda-semidirect products over enumerated actions.
  std::vector<CorpusEntry> generate_corpus(CorpusConfig const& config = {});

  struct ContextEntry {
    std::string     name;
    FiniteSemigroup semigroup;
    Congruence      rho;
  };

  //! Extensions over completely simple semigroups drawn from the corpus: least
  //! inverse congruences, identity on inverse members, universal on completely
  //! simple members, theta2 on lambda-semidirect products, and every congruence
  //! over completely simple semigroups for members of order <= exhaustive_order.
  std::vector<ContextEntry> context_corpus(std::vector<CorpusEntry> const& corpus,
                                           std::size_t                     max_order = 20,
                                           std::size_t exhaustive_order            = 6);

}  // namespace esli

#endif  // ESLI_CORPUS_HPP_
