#ifndef ESLI_CONGRUENCE_HPP_
#define ESLI_CONGRUENCE_HPP_

#include <utility>
#include <vector>

#include "esli/semigroup.hpp"

namespace esli {

  //! A partition of a semigroup compatible with multiplication on both sides.
  class Congruence {
   public:
    Congruence() = default;
    //! Throws NotACongruence with a witness when compatibility fails.
    Congruence(FiniteSemigroup const& parent, Partition classes);

    static Congruence identity(FiniteSemigroup const& S);
    static Congruence universal(FiniteSemigroup const& S);

    [[nodiscard]] Partition const& partition() const noexcept {
      return _classes;
    }
    [[nodiscard]] std::size_t num_classes() const noexcept {
      return _classes.num_classes();
    }
    [[nodiscard]] elem class_of(elem x) const {
      return _classes.class_of(x);
    }
    [[nodiscard]] bool related(elem x, elem y) const {
      return _classes.same(x, y);
    }
    [[nodiscard]] std::vector<std::vector<elem>> classes() const {
      return _classes.classes();
    }

    bool operator==(Congruence const&) const = default;

   private:
    Partition _classes;
  };

  struct QuotientMap {
    Congruence        congruence;
    FiniteSemigroup   quotient;
    std::vector<elem> projection;
  };

  Congruence congruence_generated(FiniteSemigroup const&                   S,
                                  std::vector<std::pair<elem, elem>> const& pairs);
  //! Least congruence containing both; the join in the congruence lattice.
  Congruence  congruence_join(FiniteSemigroup const& S, Congruence const& x, Congruence const& y);
  QuotientMap quotient(FiniteSemigroup const& S, Congruence const& rho);
  ElementSubset kernel(FiniteSemigroup const& S, Congruence const& rho);
  bool          is_congruence_over_cs(FiniteSemigroup const& S, Congruence const& rho);
  Congruence    least_inverse_congruence(FiniteSemigroup const& S);
  //! Every congruence of S, sorted; throws OrderBound when |S| > max_order.
  std::vector<Congruence> all_congruences(FiniteSemigroup const& S, std::size_t max_order = 8);
  //! Congruence induced by a homomorphism given as an element map.
  Congruence kernel_of_map(FiniteSemigroup const& S, std::vector<elem> const& map);

}  // namespace esli

#endif  // ESLI_CONGRUENCE_HPP_
