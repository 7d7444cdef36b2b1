#ifndef ESLI_SEMIGROUP_HPP_
#define ESLI_SEMIGROUP_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace esli {

  //! Elements of a finite semigroup are the indices 0, ..., n - 1.
  using elem = std::uint32_t;

  class ElementSubset {
   public:
    ElementSubset() = default;
    explicit ElementSubset(std::size_t universe) : _bits(universe, false) {}
    ElementSubset(std::size_t universe, std::vector<elem> const& members);

    [[nodiscard]] std::size_t universe() const noexcept {
      return _bits.size();
    }
    [[nodiscard]] bool contains(elem x) const {
      return x < _bits.size() && _bits[x];
    }
    void insert(elem x);
    void erase(elem x);

    [[nodiscard]] std::size_t count() const;
    [[nodiscard]] bool        empty() const {
      return count() == 0;
    }
    [[nodiscard]] std::vector<elem> members() const;
    //! Smallest member, requires a nonempty subset.
    [[nodiscard]] elem front() const;

    bool operator==(ElementSubset const&) const = default;

   private:
    std::vector<bool> _bits;
  };

  //! A partition of [0, n) stored as class labels, numbered by first occurrence.
  class Partition {
   public:
    Partition() = default;
    explicit Partition(std::vector<elem> labels);

    static Partition discrete(std::size_t n);
    static Partition universal(std::size_t n);

    [[nodiscard]] std::size_t size() const noexcept {
      return _labels.size();
    }
    [[nodiscard]] std::size_t num_classes() const noexcept {
      return _num_classes;
    }
    [[nodiscard]] elem class_of(elem x) const {
      return _labels[x];
    }
    [[nodiscard]] bool same(elem x, elem y) const {
      return _labels[x] == _labels[y];
    }
    [[nodiscard]] std::vector<elem> const& labels() const noexcept {
      return _labels;
    }
    [[nodiscard]] std::vector<std::vector<elem>> classes() const;
    //! True when every class of *this is contained in a class of that.
    [[nodiscard]] bool refines(Partition const& that) const;

    bool operator==(Partition const& that) const {
      return _labels == that._labels;
    }
    bool operator<(Partition const& that) const {
      return _labels < that._labels;
    }

   private:
    std::vector<elem> _labels;
    std::size_t       _num_classes = 0;
  };

  Partition meet(Partition const& x, Partition const& y);
  Partition join(Partition const& x, Partition const& y);

  class FiniteSemigroup {
   public:
    FiniteSemigroup() = default;

    //! Validates range and associativity; throws NonAssociative or OutOfRange.
    static FiniteSemigroup from_table(std::size_t              order,
                                      std::vector<elem>        table,
                                      std::vector<std::string> names = {});

    [[nodiscard]] std::size_t order() const noexcept {
      return _n;
    }
    [[nodiscard]] elem product(elem a, elem b) const {
      return _table[a * _n + b];
    }
    [[nodiscard]] std::vector<elem> const& table() const noexcept {
      return _table;
    }
    [[nodiscard]] std::vector<std::string> const& names() const noexcept {
      return _names;
    }
    //! Display name; falls back to the index.
    [[nodiscard]] std::string name(elem a) const;

    bool operator==(FiniteSemigroup const& that) const {
      return _n == that._n && _table == that._table;
    }

   private:
    std::size_t              _n = 0;
    std::vector<elem>        _table;
    std::vector<std::string> _names;
  };

  //! Green's relations, principal ideals computed over S with an identity adjoined.
  struct GreenData {
    Partition                  r_classes;
    Partition                  l_classes;
    Partition                  h_classes;
    Partition                  d_classes;
    std::vector<ElementSubset> right_ideals;  // aS^1
    std::vector<ElementSubset> left_ideals;   // S^1a

    [[nodiscard]] bool r_related(elem a, elem b) const {
      return r_classes.same(a, b);
    }
    [[nodiscard]] bool l_related(elem a, elem b) const {
      return l_classes.same(a, b);
    }
    [[nodiscard]] bool h_related(elem a, elem b) const {
      return h_classes.same(a, b);
    }
    [[nodiscard]] bool d_related(elem a, elem b) const {
      return d_classes.same(a, b);
    }
  };

  //! The sub-semigroup on a subset together with its inclusion map.
  struct Subsemigroup {
    FiniteSemigroup   semigroup;
    std::vector<elem> embedding;  // local index -> parent element
  };

  ElementSubset idempotents(FiniteSemigroup const& S);
  ElementSubset inverses_of(FiniteSemigroup const& S, elem s);
  GreenData     green(FiniteSemigroup const& S);

  bool natural_leq(FiniteSemigroup const& S, elem a, elem b);
  //! Row b holds every a with a <= b.
  std::vector<ElementSubset> natural_order(FiniteSemigroup const& S);

  ElementSubset sandwich_set(FiniteSemigroup const& S, elem e, elem f);
  elem          wedge(FiniteSemigroup const& S, elem s, elem t);
  //! All wedges at once, row-major; requires a locally inverse S.
  std::vector<elem> wedge_table(FiniteSemigroup const& S);

  bool is_regular(FiniteSemigroup const& S);
  bool is_inverse(FiniteSemigroup const& S);
  bool is_completely_regular(FiniteSemigroup const& S);
  bool is_completely_simple(FiniteSemigroup const& S);
  bool is_locally_inverse(FiniteSemigroup const& S);
  bool is_e_solid(FiniteSemigroup const& S);

  //! Locally inverse via the local submonoids, used to cross-check is_locally_inverse.
  bool is_locally_inverse_by_submonoids(FiniteSemigroup const& S);

  bool is_band(FiniteSemigroup const& S);
  bool is_semilattice(FiniteSemigroup const& S);
  bool is_group(FiniteSemigroup const& S);
  bool is_orthodox(FiniteSemigroup const& S);
  bool is_commutative(FiniteSemigroup const& S);
  std::optional<elem> identity_element(FiniteSemigroup const& S);

  ElementSubset closure(FiniteSemigroup const& S, std::vector<elem> const& seed);
  ElementSubset core(FiniteSemigroup const& S);
  //! Restriction to a subset closed under multiplication; throws PreconditionViolated otherwise.
  Subsemigroup restrict_to(FiniteSemigroup const& S, ElementSubset const& subset);

  Subsemigroup local_submonoid(FiniteSemigroup const& S, elem e);
  elem         unique_below_in_R(FiniteSemigroup const& S, elem s, elem t, elem b);

}  // namespace esli

#endif  // ESLI_SEMIGROUP_HPP_
