#ifndef ESLI_IO_HPP_
#define ESLI_IO_HPP_

#include <cstddef>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "esli/congruence.hpp"
#include "esli/constructors.hpp"
#include "esli/corpus.hpp"
#include "esli/lambda_product.hpp"
#include "esli/semigroup.hpp"

//! Line-oriented text formats. Every file opens with a header line
//! "esli-<format> <version>"; the grammar is in docs/formats.md.
//! Readers skip blank lines and lines starting with '#'. Writers emit the
//! canonical form, so write(read(f)) == f for canonical f.
namespace esli {

  struct CayleyFile {
    std::string     kind = "custom";
    FiniteSemigroup semigroup;
  };

  //! Congruence classes as they appear in a file; validated against a
  //! semigroup by to_congruence.
  struct CongruenceFile {
    Partition classes;
  };

  CayleyFile  read_cayley(std::string_view text);
  std::string write_cayley(CayleyFile const& file);
  std::string write_cayley(FiniteSemigroup const& S, std::string const& kind = "custom");

  CongruenceFile read_congruence(std::string_view text);
  std::string    write_congruence(Partition const& classes);
  //! Throws PreconditionViolated on an order mismatch and NotACongruence otherwise.
  Congruence     to_congruence(FiniteSemigroup const& S, CongruenceFile const& file);

  ReesMatrixSpec read_rees(std::string_view text);
  std::string    write_rees(ReesMatrixSpec const& spec);

  StrongSemilatticeSpec read_sslat(std::string_view text);
  std::string           write_sslat(StrongSemilatticeSpec const& spec);

  //! Validated only for shape; check_action decides whether it is an action.
  Action      read_action(std::string_view text);
  std::string write_action(Action const& action);

  std::string read_file(std::filesystem::path const& path);
  void        write_file(std::filesystem::path const& path, std::string const& text);

  struct CorpusFile {
    std::string           name;
    std::filesystem::path path;
    std::string           format;  // cayley, action or index
  };

  //! Writes <name>.cayley for every entry, <name>.action for lambda-semidirect
  //! entries and an index file listing "name kind order" per entry.
  std::vector<CorpusFile> write_corpus(std::filesystem::path const& dir,
                                       std::vector<CorpusEntry> const& corpus);

}  // namespace esli

#endif  // ESLI_IO_HPP_
