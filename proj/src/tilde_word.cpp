#include "esli/tilde_word.hpp"

#include "esli/error.hpp"
#include "esli/term.hpp"

namespace esli {

  DoubledAlphabet::DoubledAlphabet(std::vector<std::string> base_names)
      : _names(std::move(base_names)) {
    if (_names.empty()) {
      throw Error(ErrorCode::precondition_violated, "alphabet needs at least one letter");
    }
    for (auto const& n : _names) {
      if (n.empty() || n.find_first_of("()^' \t[]{}") != std::string::npos) {
        throw Error(ErrorCode::precondition_violated, "bad letter name '" + n + "'");
      }
    }
  }

  DoubledAlphabet DoubledAlphabet::standard(std::size_t base_size) {
    std::vector<std::string> names;
    std::string const        first = "xyzw";
    for (std::size_t i = 0; i < base_size; ++i) {
      names.push_back(i < first.size() ? std::string(1, first[i]) : "v" + std::to_string(i));
    }
    return DoubledAlphabet(std::move(names));
  }

  std::vector<letter> DoubledAlphabet::letters() const {
    std::vector<letter> out;
    for (letter x = 0; x < size(); ++x) {
      out.push_back(x);
    }
    return out;
  }

  std::string DoubledAlphabet::name(letter x) const {
    if (x / 2 >= _names.size()) {
      throw Error(ErrorCode::out_of_range, "letter outside the alphabet", {x});
    }
    return _names[x / 2] + (is_primed(x) ? "'" : "");
  }

  std::optional<std::pair<letter, std::size_t>> DoubledAlphabet::match(
      std::string_view text) const {
    std::optional<std::pair<letter, std::size_t>> best;
    for (std::uint32_t i = 0; i < _names.size(); ++i) {
      auto const& n = _names[i];
      if (text.substr(0, n.size()) == n && (!best || n.size() > best->second)) {
        best = std::pair{base_letter(i), n.size()};
      }
    }
    return best;
  }

  letter iota(TildeWord const& w) {
    return w.front().iota();
  }

  letter tau(TildeWord const& w) {
    return w.back().tau();
  }

  TildeWord tilde_wedge(TildeWord const& u, TildeWord const& v) {
    return {Sym::wedge_of(iota(u), tau(v))};
  }

  std::string to_string(TildeWord const& w, DoubledAlphabet const& alphabet) {
    std::string out;
    for (auto const& s : w) {
      out += s.wedge ? "(" + alphabet.name(s.first) + "^" + alphabet.name(s.second) + ")"
                     : alphabet.name(s.first);
    }
    return out;
  }

  TildeWord parse_tilde_word(std::string_view text, DoubledAlphabet const& alphabet) {
    auto t = parse_term(text, alphabet);
    try {
      return term_to_word(t);
    } catch (Error const&) {
      throw Error(ErrorCode::syntax_error, "wedges in a word must join two letters", {0});
    }
  }

  std::size_t TildeWordHash::operator()(TildeWord const& w) const noexcept {
    std::size_t h = 1469598103934665603ULL;
    for (auto const& s : w) {
      std::size_t x = (static_cast<std::size_t>(s.first) << 33)
                      ^ (static_cast<std::size_t>(s.second) << 1) ^ (s.wedge ? 1 : 0);
      h             = (h ^ x) * 1099511628211ULL;
    }
    return h;
  }

}  // namespace esli
