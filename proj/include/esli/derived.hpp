#ifndef ESLI_DERIVED_HPP_
#define ESLI_DERIVED_HPP_

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "esli/congruence.hpp"
#include "esli/semigroup.hpp"

namespace esli {

  enum class DaggerPolicy : std::uint8_t { lowest, highest };

  //! An extension (S, rho) of an E-solid locally inverse semigroup by the
  //! inverse semigroup T = S/rho, with rho over completely simple semigroups.
  class ExtensionContext {
   public:
    //! Throws NotESolid, NotLocallyInverse or RhoNotOverCS.
    static ExtensionContext build(FiniteSemigroup S,
                                  Congruence      rho,
                                  DaggerPolicy    policy = DaggerPolicy::lowest);

    [[nodiscard]] FiniteSemigroup const& s() const noexcept {
      return _s;
    }
    [[nodiscard]] Congruence const& rho() const noexcept {
      return _rho;
    }
    [[nodiscard]] FiniteSemigroup const& t() const noexcept {
      return _t.quotient;
    }
    [[nodiscard]] DaggerPolicy policy() const noexcept {
      return _policy;
    }
    //! s rho as an element of T.
    [[nodiscard]] elem project(elem s) const {
      return _t.projection[s];
    }
    [[nodiscard]] elem t_inverse(elem alpha) const {
      return _t_inverse[alpha];
    }
    [[nodiscard]] elem dagger(elem s) const {
      return _dagger[s];
    }
    [[nodiscard]] std::vector<elem> const& daggers() const noexcept {
      return _dagger;
    }
    [[nodiscard]] bool s_leq(elem a, elem b) const {
      return _s_below[b].contains(a);
    }
    [[nodiscard]] std::vector<elem> const& s_below(elem b) const {
      return _s_below_list[b];
    }
    [[nodiscard]] bool t_leq(elem a, elem b) const {
      return _t_below[b].contains(a);
    }
    [[nodiscard]] std::vector<elem> const& s_wedges() const noexcept {
      return _s_wedge;
    }
    [[nodiscard]] GreenData const& s_green() const noexcept {
      return _s_green;
    }

   private:
    FiniteSemigroup                _s;
    Congruence                     _rho;
    QuotientMap                    _t;
    DaggerPolicy                   _policy = DaggerPolicy::lowest;
    std::vector<elem>              _t_inverse;
    std::vector<elem>              _dagger;
    std::vector<ElementSubset>     _s_below;
    std::vector<std::vector<elem>> _s_below_list;
    std::vector<ElementSubset>     _t_below;
    std::vector<elem>              _s_wedge;
    GreenData                      _s_green;
  };

  struct Arrow {
    elem source = 0;
    elem label  = 0;
    elem target = 0;

    auto operator<=>(Arrow const&) const = default;
  };

  std::string to_string(Arrow const& a);

  //! The derived semigroupoid of an extension: objects T, arrows (alpha, s, beta)
  //! with alpha . s rho = beta and beta . (s rho)^-1 = alpha.
  class DerivedSemigroupoid {
   public:
    explicit DerivedSemigroupoid(ExtensionContext ctx);

    [[nodiscard]] ExtensionContext const& context() const noexcept {
      return _ctx;
    }
    //! Sorted by (source, label, target); positions are arrow ids.
    [[nodiscard]] std::vector<Arrow> const& arrows() const noexcept {
      return _arrows;
    }
    [[nodiscard]] bool                       is_arrow(Arrow const& a) const;
    [[nodiscard]] std::optional<std::size_t> id_of(Arrow const& a) const;
    [[nodiscard]] std::size_t                require_id(Arrow const& a) const;

    //! Throws NotConsecutive.
    [[nodiscard]] Arrow              compose(Arrow const& a, Arrow const& b) const;
    [[nodiscard]] std::vector<Arrow> arrow_inverses(Arrow const& a) const;
    [[nodiscard]] Arrow              dagger(Arrow const& a) const;
    //! Sandwich inside the hom-set C(source a, source a); throws NotAdjacent.
    [[nodiscard]] Arrow              arrow_wedge(Arrow const& a, Arrow const& b) const;
    [[nodiscard]] Arrow              act(elem pi, Arrow const& a) const;
    [[nodiscard]] bool               leq(Arrow const& a, Arrow const& b) const;

    //! Evaluates the three clauses of Lemma tul(3); throws Tul3Disagreement.
    [[nodiscard]] bool               is_stable(Arrow const& a) const;
    [[nodiscard]] std::vector<Arrow> stable_arrows() const;
    //! The unique stable arrow below a; throws UniquenessFailure.
    [[nodiscard]] Arrow              hat(Arrow const& a) const;

    //! Green's relations from the semigroupoid definition, by search.
    [[nodiscard]] bool r_related(Arrow const& a, Arrow const& b) const;
    [[nodiscard]] bool l_related(Arrow const& a, Arrow const& b) const;

   private:
    [[nodiscard]] std::size_t key(Arrow const& a) const;

    ExtensionContext                 _ctx;
    std::vector<Arrow>               _arrows;
    std::vector<std::int32_t>        _ids;
    std::vector<std::vector<Arrow>>  _out;   // arrows by source
    std::vector<std::vector<Arrow>>  _in;    // arrows by target
    mutable std::vector<std::int32_t> _hat;  // memo by arrow id, -1 when unset
  };

  struct LemmaCheck {
    std::string               name;
    bool                      pass      = true;
    std::size_t               instances = 0;
    std::string               detail;
  };

  //! Exhaustive checks of the arrow lemmas: tul(1)-(3), Sro-basic, li-basic,
  //! tomorit, ujall(1)-(3), komp(1)-(3), the action laws and hat monotonicity.
  std::vector<LemmaCheck> check_lemmas(DerivedSemigroupoid const& c);

}  // namespace esli

#endif  // ESLI_DERIVED_HPP_
