#ifndef ESLI_CONSTRUCTORS_HPP_
#define ESLI_CONSTRUCTORS_HPP_

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "esli/semigroup.hpp"

namespace esli {

  struct ReesMatrixSpec {
    FiniteSemigroup   group;
    std::size_t       i_size      = 1;
    std::size_t       lambda_size = 1;
    std::vector<elem> sandwich;  // row-major lambda_size x i_size, entry p_{lambda,i}

    [[nodiscard]] elem p(std::size_t lambda, std::size_t i) const {
      return sandwich[lambda * i_size + i];
    }
  };

  struct StrongSemilatticeSpec {
    FiniteSemigroup              semilattice;
    std::vector<FiniteSemigroup> components;  // indexed by semilattice element
    //! Key (e, f) with f <= e; the identity homs (e, e) may be omitted.
    std::map<std::pair<elem, elem>, std::vector<elem>> homs;
  };

  //! Elements (i, g, lambda) are numbered (i * |G| + g) * |Lambda| + lambda.
  FiniteSemigroup rees_matrix(ReesMatrixSpec const& spec);
  //! Components are laid out consecutively in semilattice order.
  FiniteSemigroup strong_semilattice(StrongSemilatticeSpec const& spec);
  //! Element (a, b) is numbered a * |T| + b.
  FiniteSemigroup direct_product(FiniteSemigroup const& S, FiniteSemigroup const& T);
  Subsemigroup    generated_subsemigroup(FiniteSemigroup const& S, std::vector<elem> const& seed);

  //! Kinds: trivial, cyclic_group n, symmetric_group_3, chain n, diamond, brandt_2,
  //! symmetric_inverse_2, left_zero n, right_zero n, rectangular_band m n, null n.
  FiniteSemigroup named_small(std::string const& kind, std::vector<std::size_t> const& params = {});

  //! Greedy small generating set, in increasing order of first use.
  std::vector<elem> generating_set(FiniteSemigroup const& S);

  //! Every homomorphism S -> T as an element map, by backtracking on generator images.
  std::vector<std::vector<elem>> homomorphisms(FiniteSemigroup const& S,
                                               FiniteSemigroup const& T,
                                               std::size_t            limit = SIZE_MAX);
  bool is_homomorphism(FiniteSemigroup const& S, FiniteSemigroup const& T,
                       std::vector<elem> const& map);

  std::optional<std::vector<elem>> find_isomorphism(FiniteSemigroup const& S,
                                                    FiniteSemigroup const& T);

}  // namespace esli

#endif  // ESLI_CONSTRUCTORS_HPP_
