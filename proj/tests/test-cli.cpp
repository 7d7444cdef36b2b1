#include <cstdlib>
#include <filesystem>
#include <sstream>
#include <unistd.h>

#include "cli.hpp"
#include "esli/io.hpp"
#include "json.hpp"
#include "test-helpers.hpp"

namespace esli {

  namespace {
    using json = nlohmann::json;

    struct Outcome {
      int         code = -1;
      json        report;
      std::string err;
    };

    Outcome esli_run(std::vector<std::string> args) {
      args.insert(args.begin(), "esli");
      std::ostringstream out, err;
      Outcome            o;
      o.code = cli::run(args, out, err);
      o.err  = err.str();
      if (o.code != cli::exit_usage && !out.str().empty() && out.str().front() == '{') {
        o.report = json::parse(out.str());
      }
      return o;
    }

    std::string data(char const* name) {
      return (std::filesystem::path(ESLI_TEST_DATA) / name).string();
    }

    std::filesystem::path scratch(char const* name) {
      auto dir = std::filesystem::temp_directory_path() / ("esli-cli-" + std::to_string(::getpid()));
      std::filesystem::create_directories(dir);
      return dir / name;
    }

    //! Instance results with timings removed, for comparing runs.
    json without_timings(json instances) {
      for (auto& i : instances) {
        i["result"].erase("elapsed_ms");
      }
      return instances;
    }

    bool holds(json const& report, std::string const& flag) {
      for (auto const& f : report["result"]["holds"]) {
        if (f == flag) {
          return true;
        }
      }
      return false;
    }

    class SeedEnv {
     public:
      explicit SeedEnv(char const* value) {
        ::setenv("ESLI_SEED", value, 1);
      }
      ~SeedEnv() {
        ::unsetenv("ESLI_SEED");
      }
      SeedEnv(SeedEnv const&)            = delete;
      SeedEnv& operator=(SeedEnv const&) = delete;
    };
  }  // namespace

  TEST_CASE("classify Z2", "[cli]") {
    auto const o = esli_run({"classify", data("z2.cayley")});
    REQUIRE(o.code == cli::exit_pass);
    for (auto const* f : {"group", "inverse", "completely-simple", "e-solid", "locally-inverse"}) {
      INFO(f);
      REQUIRE(holds(o.report, f));
    }
    REQUIRE(!holds(o.report, "band"));
    REQUIRE(o.report["command"] == "classify");
    REQUIRE(o.report["seed"].is_null());

    auto const need = esli_run({"classify", data("z2.cayley"), "--require", "group", "--require",
                                "band"});
    REQUIRE(need.code == cli::exit_verdict);
    REQUIRE(need.report["pass"] == false);
    REQUIRE(need.report["verdicts"][0]["pass"] == true);
    REQUIRE(need.report["verdicts"][1]["pass"] == false);
  }

  TEST_CASE("term commands", "[cli]") {
    auto const r = esli_run({"term-reduce", "x(y^x)"});
    REQUIRE(r.code == cli::exit_pass);
    REQUIRE(r.report["result"]["reduced"] == "x");

    REQUIRE(esli_run({"term-equal", "x(y^x)", "x"}).code == cli::exit_pass);
    auto const ne = esli_run({"term-equal", "x", "y"});
    REQUIRE(ne.code == cli::exit_verdict);
    REQUIRE(ne.report["verdicts"][0]["witness"] == json::array({"x", "y"}));

    auto const d = esli_run({"derive-search", "x", "xx'x"});
    REQUIRE(d.code == cli::exit_pass);
    REQUIRE(d.report["result"]["words"].back() == "xx'x");
    REQUIRE(esli_run({"derive-search", "x", "y", "--max-steps", "3"}).code == cli::exit_verdict);
    REQUIRE(esli_run({"term-reduce", "x(y"}).code == cli::exit_usage);
  }

  TEST_CASE("semigroup commands and output files", "[cli]") {
    auto const rees_out = scratch("mz2p.cayley").string();
    auto const rees     = esli_run({"rees", data("mz2p.rees"), "-o", rees_out});
    REQUIRE(rees.code == cli::exit_pass);
    REQUIRE(rees.report["result"]["order"] == 8);
    auto const S = read_cayley(read_file(rees_out));
    REQUIRE(S.kind == "rees");
    REQUIRE(S.semigroup.order() == 8);

    auto const green = esli_run({"green", rees_out});
    REQUIRE(green.code == cli::exit_pass);
    REQUIRE(green.report["result"]["d"].size() == 1);

    auto const congs = esli_run({"congruences", rees_out});
    REQUIRE(congs.code == cli::exit_pass);
    REQUIRE(congs.report["result"]["count"].get<std::size_t>() >= 2);
    REQUIRE(esli_run({"congruences", rees_out, "--max-order", "4"}).code == cli::exit_usage);

    auto const cong_out = scratch("mz2p.congruence").string();
    auto const li       = esli_run({"least-inv", rees_out, "-o", cong_out});
    REQUIRE(li.code == cli::exit_pass);
    REQUIRE(read_congruence(read_file(cong_out)).classes.num_classes()
            == li.report["result"]["quotient_order"].get<std::size_t>());

    auto const built = esli_run({"derived-build", "--cayley", rees_out, "--rho", cong_out});
    REQUIRE(built.code == cli::exit_pass);
    REQUIRE(built.report["instances"].size() == 1);
    REQUIRE(built.report["verdicts"].size() > 5);

    auto const ss = esli_run({"sslat", data("rb22_over_l2.sslat")});
    REQUIRE(ss.code == cli::exit_pass);
    REQUIRE(ss.report["result"]["order"] == 6);
  }

  TEST_CASE("lambda-semidirect commands", "[cli]") {
    auto const b = esli_run({"lsdp-build", data("rb22_b2.action")});
    REQUIRE(b.code == cli::exit_pass);
    REQUIRE(b.report["result"]["order"] == 20);
    auto const v = esli_run({"lsdp-verify", data("rb22_b2.action")});
    REQUIRE(v.code == cli::exit_pass);
    REQUIRE(v.report["verdicts"].size() == 6);

    // eps_1 = (3 0 0 0) is not an endomorphism: f(0 1) = 0 but f(0) f(1) = 2.
    auto text = read_file(data("rb22_y2.action"));
    text.replace(text.rfind("0 0 0 0"), 7, "3 0 0 0");
    auto const bad_path = scratch("bad.action");
    write_file(bad_path, text);
    auto const bad = esli_run({"lsdp-verify", bad_path.string()});
    REQUIRE(bad.code == cli::exit_verdict);
    REQUIRE(bad.report["verdicts"][0]["check"] == "action");
  }

  TEST_CASE("hat-check and derived-build on corpus contexts", "[cli]") {
    auto const h = esli_run({"hat-check", "--instance", "brandt_2/least+identity+mu"});
    REQUIRE(h.code == cli::exit_pass);
    REQUIRE(h.report["verdicts"].size() == 4);
    auto const hh = esli_run({"hat-check", "--action", data("rb22_b2.action"), "--rho", "theta2",
                              "--dagger", "highest"});
    REQUIRE(hh.code == cli::exit_pass);
    // S = A2 is not E-solid: the context is rejected with a verdict failure.
    auto const a2 = scratch("a2.cayley");
    write_file(a2, "esli-cayley 1\norder 5\ntable\n0 1 0 1 4\n0 1 4 4 4\n2 3 2 3 4\n2 3 4 4 4\n"
                   "4 4 4 4 4\n");
    auto const rejected = esli_run({"derived-build", "--cayley", a2.string(), "--rho", "universal"});
    REQUIRE(rejected.code == cli::exit_verdict);
    REQUIRE(rejected.report["verdicts"][0]["witness"]["code"] == "NotESolid");
  }

  TEST_CASE("embed-verify", "[cli]") {
    auto const o = esli_run({"embed-verify", "--seed", "7", "--trials", "500"});
    REQUIRE(o.code == cli::exit_pass);
    REQUIRE(o.report["seed"] == 7);
    auto const& inst = o.report["instances"][0];
    REQUIRE(inst["name"] == "lsdp_rb22_B2_a3/least+theta2");
    REQUIRE(inst["result"]["lifted_steps"].get<std::size_t>() > 1000);

    // Same inputs and seed reproduce the verdicts and counts.
    auto const again = esli_run({"embed-verify", "--seed", "7", "--trials", "500"});
    REQUIRE(without_timings(again.report["instances"]) == without_timings(o.report["instances"]));

    // The dagger-of-hat image of primes fails with a replayable transcript.
    auto const lit = esli_run({"embed-verify", "--instance", "lsdp_MZ2p_Y2_a12/least+theta2",
                               "--policy", "dagger-of-hat", "--trials", "200", "--max-steps", "30"});
    REQUIRE(lit.code == cli::exit_verdict);
    auto const& w = lit.report["verdicts"][0];
    REQUIRE(w["check"] == "wp_hat invariance");
    REQUIRE(w["witness"]["transcript"].get<std::string>().find("seed 1 trial") != std::string::npos);
  }

  TEST_CASE("seed from the environment", "[cli]") {
    SeedEnv const env("42");
    auto const from_env = esli_run({"embed-verify", "--trials", "20"});
    REQUIRE(from_env.code == cli::exit_pass);
    REQUIRE(from_env.report["seed"] == 42);
    auto const explicit_seed = esli_run({"embed-verify", "--trials", "20", "--seed", "42"});
    REQUIRE(without_timings(explicit_seed.report["instances"])
            == without_timings(from_env.report["instances"]));
    REQUIRE(esli_run({"embed-verify", "--trials", "20", "--seed", "5"}).report["seed"] == 5);
    SeedEnv const bad("forty");
    REQUIRE(esli_run({"embed-verify", "--trials", "1"}).code == cli::exit_usage);
  }

  TEST_CASE("batch runs are independent of --jobs", "[cli]") {
    auto const one  = esli_run({"--jobs", "1", "embed-verify", "--all", "--trials", "3"});
    auto const four = esli_run({"--jobs", "4", "embed-verify", "--all", "--trials", "3"});
    REQUIRE(one.code == cli::exit_pass);
    REQUIRE(four.code == cli::exit_pass);
    REQUIRE(one.report["instances"].size() > 80);
    REQUIRE(without_timings(one.report["instances"]) == without_timings(four.report["instances"]));
    auto const& list = one.report["instances"];
    for (std::size_t k = 1; k < list.size(); ++k) {
      REQUIRE(list[k - 1]["name"].get<std::string>() < list[k]["name"].get<std::string>());
    }
  }

  TEST_CASE("corpus-gen and report file", "[cli]") {
    auto const dir    = scratch("corpus");
    auto const report = scratch("report.json");
    auto const o = esli_run({"--report", report.string(), "corpus-gen", "--out", dir.string()});
    REQUIRE(o.code == cli::exit_pass);
    REQUIRE(o.report["result"]["files"].get<std::size_t>() >= 30);
    REQUIRE(json::parse(read_file(report)) == o.report);
    std::filesystem::remove_all(dir.parent_path());
  }

  TEST_CASE("usage errors", "[cli]") {
    REQUIRE(esli_run({}).code == cli::exit_usage);
    REQUIRE(esli_run({"frobnicate"}).code == cli::exit_usage);
    REQUIRE(esli_run({"classify"}).code == cli::exit_usage);
    REQUIRE(esli_run({"classify", data("z2.cayley"), "--require", "shiny"}).code == cli::exit_usage);
    REQUIRE(esli_run({"classify", "/nonexistent/file"}).code == cli::exit_usage);
    REQUIRE(esli_run({"classify", data("mz2p.rees")}).code == cli::exit_usage);
    REQUIRE(esli_run({"--jobs", "0", "hat-check", "--all"}).code == cli::exit_usage);
    REQUIRE(esli_run({"hat-check"}).code == cli::exit_usage);
    REQUIRE(esli_run({"hat-check", "--instance", "no/such"}).code == cli::exit_usage);
    REQUIRE(esli_run({"hat-check", "--cayley", data("z2.cayley"), "--rho", "theta2"}).code
            == cli::exit_usage);
    REQUIRE(esli_run({"hat-check", "--cayley", data("z2.cayley"), "--instance", "x"}).code
            == cli::exit_usage);
    auto const help = esli_run({"--help"});
    REQUIRE(help.code == cli::exit_pass);
  }

}  // namespace esli
