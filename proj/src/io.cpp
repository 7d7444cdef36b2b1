#include "esli/io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "esli/error.hpp"

namespace esli {

  namespace {

    constexpr std::string_view version = "1";

    [[noreturn]] void fail(std::size_t line, std::string const& what) {
      throw Error(ErrorCode::parse_error, "line " + std::to_string(line) + ": " + what, {line});
    }

    class LineReader {
     public:
      LineReader(std::string_view text, std::string const& format) {
        std::size_t number = 0;
        while (!text.empty()) {
          auto const nl   = text.find('\n');
          auto       line = text.substr(0, nl);
          text            = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
          ++number;
          if (!line.empty() && line.back() == '\r') {
            line.remove_suffix(1);
          }
          std::vector<std::string> tokens;
          std::istringstream       in{std::string(line)};
          for (std::string tok; in >> tok;) {
            tokens.push_back(std::move(tok));
          }
          if (tokens.empty() || tokens.front().front() == '#') {
            continue;
          }
          _lines.push_back({number, std::move(tokens)});
        }
        auto const header = next();
        if (header.size() != 2 || header[0] != "esli-" + format) {
          fail(_last, "expected header 'esli-" + format + " " + std::string(version) + "'");
        }
        if (header[1] != version) {
          fail(_last, "unsupported " + format + " version " + header[1]);
        }
      }

      [[nodiscard]] bool done() const noexcept {
        return _pos == _lines.size();
      }
      [[nodiscard]] std::size_t line() const noexcept {
        return _last;
      }
      [[nodiscard]] std::string const* peek_key() const {
        return done() ? nullptr : &_lines[_pos].tokens.front();
      }

      std::vector<std::string> next() {
        if (done()) {
          fail(_last + 1, "unexpected end of input");
        }
        _last = _lines[_pos].number;
        return _lines[_pos++].tokens;
      }

      //! A line "key a b ..." with exactly `arity` arguments.
      std::vector<std::string> expect(std::string const& key, std::size_t arity) {
        auto tokens = next();
        if (tokens.front() != key) {
          fail(_last, "expected '" + key + "', found '" + tokens.front() + "'");
        }
        if (tokens.size() != arity + 1) {
          fail(_last, "'" + key + "' takes " + std::to_string(arity) + " argument(s)");
        }
        tokens.erase(tokens.begin());
        return tokens;
      }

      std::size_t number(std::string const& tok) const {
        std::size_t value = 0;
        auto const [end, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
        if (ec != std::errc{} || end != tok.data() + tok.size()) {
          fail(_last, "expected a non-negative integer, found '" + tok + "'");
        }
        return value;
      }

      std::size_t expect_number(std::string const& key) {
        return number(expect(key, 1).front());
      }

      //! One line of exactly `width` integers, each below `bound`.
      std::vector<elem> row(std::size_t width, std::size_t bound) {
        auto const tokens = next();
        if (tokens.size() != width) {
          fail(_last, "expected " + std::to_string(width) + " entries, found "
                          + std::to_string(tokens.size()));
        }
        std::vector<elem> out;
        out.reserve(width);
        for (auto const& tok : tokens) {
          auto const v = number(tok);
          if (v >= bound) {
            fail(_last, "entry " + tok + " out of range");
          }
          out.push_back(static_cast<elem>(v));
        }
        return out;
      }

      FiniteSemigroup table(std::size_t n, std::vector<std::string> names = {}) {
        std::vector<elem> t;
        t.reserve(n * n);
        for (std::size_t r = 0; r < n; ++r) {
          auto const row_values = row(n, n);
          t.insert(t.end(), row_values.begin(), row_values.end());
        }
        try {
          return FiniteSemigroup::from_table(n, std::move(t), std::move(names));
        } catch (Error const& e) {
          fail(_last, std::string("table rejected: ") + e.what());
        }
      }

      void finish() {
        if (!done()) {
          next();
          fail(_last, "trailing content");
        }
      }

     private:
      struct Line {
        std::size_t              number;
        std::vector<std::string> tokens;
      };
      std::vector<Line> _lines;
      std::size_t       _pos  = 0;
      std::size_t       _last = 0;
    };

    void require_token(std::string const& s, char const* what) {
      if (s.empty() || s.front() == '#'
          || s.find_first_of(" \t\r\n") != std::string::npos) {
        throw Error(ErrorCode::precondition_violated,
                    std::string(what) + " must be a single token: '" + s + "'");
      }
    }

    void put_row(std::ostringstream& out, std::vector<elem> const& v, std::size_t from,
                 std::size_t width) {
      for (std::size_t j = 0; j < width; ++j) {
        out << (j == 0 ? "" : " ") << v[from + j];
      }
      out << '\n';
    }

    void put_table(std::ostringstream& out, FiniteSemigroup const& S) {
      for (std::size_t r = 0; r < S.order(); ++r) {
        put_row(out, S.table(), r * S.order(), S.order());
      }
    }

    std::ostringstream header(char const* format) {
      std::ostringstream out;
      out << "esli-" << format << ' ' << version << '\n';
      return out;
    }

  }  // namespace

  CayleyFile read_cayley(std::string_view text) {
    LineReader in(text, "cayley");
    CayleyFile file;
    if (auto const* key = in.peek_key(); key != nullptr && *key == "kind") {
      file.kind = in.expect("kind", 1).front();
    }
    auto const n = in.expect_number("order");
    if (n == 0) {
      fail(in.line(), "order must be positive");
    }
    std::vector<std::string> names;
    if (auto const* key = in.peek_key(); key != nullptr && *key == "names") {
      names = in.expect("names", n);
    }
    in.expect("table", 0);
    file.semigroup = in.table(n, std::move(names));
    in.finish();
    return file;
  }

  std::string write_cayley(CayleyFile const& file) {
    require_token(file.kind, "kind");
    auto const& S   = file.semigroup;
    auto        out = header("cayley");
    out << "kind " << file.kind << '\n' << "order " << S.order() << '\n';
    if (!S.names().empty()) {
      out << "names";
      for (auto const& name : S.names()) {
        require_token(name, "element name");
        out << ' ' << name;
      }
      out << '\n';
    }
    out << "table\n";
    put_table(out, S);
    return out.str();
  }

  std::string write_cayley(FiniteSemigroup const& S, std::string const& kind) {
    return write_cayley(CayleyFile{kind, S});
  }

  CongruenceFile read_congruence(std::string_view text) {
    LineReader in(text, "congruence");
    auto const n = in.expect_number("order");
    auto const k = in.expect_number("classes");
    std::vector<elem> labels(n, static_cast<elem>(n));
    for (std::size_t c = 0; c < k; ++c) {
      auto const members = in.next();
      for (auto const& tok : members) {
        auto const x = in.number(tok);
        if (x >= n) {
          fail(in.line(), "element " + tok + " out of range");
        }
        if (labels[x] != n) {
          fail(in.line(), "element " + tok + " listed twice");
        }
        labels[x] = static_cast<elem>(c);
      }
    }
    for (elem x = 0; x < n; ++x) {
      if (labels[x] == n) {
        fail(in.line(), "element " + std::to_string(x) + " missing from every class");
      }
    }
    in.finish();
    return {Partition(std::move(labels))};
  }

  std::string write_congruence(Partition const& classes) {
    auto out = header("congruence");
    out << "order " << classes.size() << '\n' << "classes " << classes.num_classes() << '\n';
    for (auto const& c : classes.classes()) {
      put_row(out, c, 0, c.size());
    }
    return out.str();
  }

  Congruence to_congruence(FiniteSemigroup const& S, CongruenceFile const& file) {
    if (file.classes.size() != S.order()) {
      throw Error(ErrorCode::precondition_violated, "congruence order differs from the semigroup",
                  {file.classes.size(), S.order()});
    }
    return Congruence(S, file.classes);
  }

  ReesMatrixSpec read_rees(std::string_view text) {
    LineReader     in(text, "rees");
    ReesMatrixSpec spec;
    auto const     g = in.expect_number("group");
    spec.group       = in.table(g);
    auto const size  = in.expect("size", 2);
    spec.i_size      = in.number(size[0]);
    spec.lambda_size = in.number(size[1]);
    in.expect("sandwich", 0);
    for (std::size_t l = 0; l < spec.lambda_size; ++l) {
      auto const r = in.row(spec.i_size, g);
      spec.sandwich.insert(spec.sandwich.end(), r.begin(), r.end());
    }
    in.finish();
    return spec;
  }

  std::string write_rees(ReesMatrixSpec const& spec) {
    auto out = header("rees");
    out << "group " << spec.group.order() << '\n';
    put_table(out, spec.group);
    out << "size " << spec.i_size << ' ' << spec.lambda_size << '\n' << "sandwich\n";
    for (std::size_t l = 0; l < spec.lambda_size; ++l) {
      put_row(out, spec.sandwich, l * spec.i_size, spec.i_size);
    }
    return out.str();
  }

  StrongSemilatticeSpec read_sslat(std::string_view text) {
    LineReader            in(text, "sslat");
    StrongSemilatticeSpec spec;
    auto const            m = in.expect_number("semilattice");
    spec.semilattice        = in.table(m);
    for (std::size_t e = 0; e < m; ++e) {
      auto const args = in.expect("component", 2);
      if (in.number(args[0]) != e) {
        fail(in.line(), "components must be listed in order, expected " + std::to_string(e));
      }
      spec.components.push_back(in.table(in.number(args[1])));
    }
    while (!in.done()) {
      auto tokens = in.next();
      if (tokens.front() != "hom" || tokens.size() < 3) {
        fail(in.line(), "expected 'hom e f images...'");
      }
      auto const e = in.number(tokens[1]);
      auto const f = in.number(tokens[2]);
      if (e >= m || f >= m) {
        fail(in.line(), "semilattice element out of range");
      }
      if (tokens.size() != 3 + spec.components[e].order()) {
        fail(in.line(), "hom needs one image per element of component " + tokens[1]);
      }
      std::vector<elem> images;
      for (std::size_t j = 3; j < tokens.size(); ++j) {
        auto const v = in.number(tokens[j]);
        if (v >= spec.components[f].order()) {
          fail(in.line(), "image " + tokens[j] + " out of range");
        }
        images.push_back(static_cast<elem>(v));
      }
      if (!spec.homs.emplace(std::pair<elem, elem>(e, f), std::move(images)).second) {
        fail(in.line(), "duplicate hom");
      }
    }
    return spec;
  }

  std::string write_sslat(StrongSemilatticeSpec const& spec) {
    auto out = header("sslat");
    out << "semilattice " << spec.semilattice.order() << '\n';
    put_table(out, spec.semilattice);
    for (std::size_t e = 0; e < spec.components.size(); ++e) {
      out << "component " << e << ' ' << spec.components[e].order() << '\n';
      put_table(out, spec.components[e]);
    }
    for (auto const& [key, images] : spec.homs) {
      out << "hom " << key.first << ' ' << key.second;
      for (auto const x : images) {
        out << ' ' << x;
      }
      out << '\n';
    }
    return out.str();
  }

  Action read_action(std::string_view text) {
    LineReader in(text, "action");
    Action     a;
    auto const m = in.expect_number("t");
    a.t          = in.table(m);
    auto const n = in.expect_number("k");
    a.k          = in.table(n);
    in.expect("eps", 0);
    for (std::size_t t = 0; t < m; ++t) {
      a.eps.push_back(in.row(n, n));
    }
    in.finish();
    return a;
  }

  std::string write_action(Action const& action) {
    auto out = header("action");
    out << "t " << action.t.order() << '\n';
    put_table(out, action.t);
    out << "k " << action.k.order() << '\n';
    put_table(out, action.k);
    out << "eps\n";
    for (auto const& images : action.eps) {
      put_row(out, images, 0, images.size());
    }
    return out.str();
  }

  std::string read_file(std::filesystem::path const& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
      throw Error(ErrorCode::parse_error, "cannot open " + path.string());
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
  }

  void write_file(std::filesystem::path const& path, std::string const& text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    out << text;
    if (!out.flush()) {
      throw Error(ErrorCode::precondition_violated, "cannot write " + path.string());
    }
  }

  std::vector<CorpusFile> write_corpus(std::filesystem::path const&    dir,
                                       std::vector<CorpusEntry> const& corpus) {
    std::filesystem::create_directories(dir);
    std::vector<CorpusFile> files;
    std::ostringstream      index;
    index << "esli-index " << version << '\n';
    for (auto const& entry : corpus) {
      auto const cayley = dir / (entry.name + ".cayley");
      write_file(cayley, write_cayley(entry.semigroup, entry.kind));
      files.push_back({entry.name, cayley, "cayley"});
      if (entry.action) {
        auto const action = dir / (entry.name + ".action");
        write_file(action, write_action(*entry.action));
        files.push_back({entry.name, action, "action"});
      }
      index << "entry " << entry.name << ' ' << entry.kind << ' ' << entry.semigroup.order()
            << '\n';
    }
    auto const index_path = dir / "corpus.index";
    write_file(index_path, index.str());
    files.push_back({"corpus", index_path, "index"});
    return files;
  }

}  // namespace esli
