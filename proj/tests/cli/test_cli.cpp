#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "cli/app.hpp"
#include "cli/output.hpp"

using namespace ubdm::cli;
namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

namespace {

fs::path scratch(const std::string& name) {
  const char* env = std::getenv("UBDM_TEST_TMP");
  const fs::path root = env ? fs::path(env) : fs::temp_directory_path() / "ubdm_cli_tests";
  const fs::path dir = root / "cli" / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

struct Run {
  int code;
  std::string out, err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

json read_json(const fs::path& path) { return json::parse(slurp(path)); }

//! Every file under dir except manifests, keyed by relative path.
std::map<std::string, std::string> outputs(const fs::path& dir) {
  std::map<std::string, std::string> files;
  for (const auto& e : fs::recursive_directory_iterator(dir)) {
    if (!e.is_regular_file() || e.path().filename() == kManifestName) continue;
    files[fs::relative(e.path(), dir).string()] = slurp(e.path());
  }
  return files;
}

// small, fast settings for each verb
const std::map<std::string, std::vector<std::string>> kVerbArgs{
    {"neff", {}},
    {"markov", {"--preset", "admx"}},
    {"lindblad", {"--set", "lindblad.T=2", "--set", "lindblad.samples=11"}},
    {"psd", {"--set", "psd.points=1024"}},
    {"g1", {"--set", "coherence.points=21", "--set", "coherence.mc_samples=20000"}},
    {"g2", {"--set", "coherence.points=21"}},
    {"counting", {"--set", "haloscope.Q_c=1e3", "--set", "counting.points=5"}},
    {"sweep", {"--set", "sweep.values=1e-6,1e-5,1e-4"}},
};

Run run_verb(const std::string& verb, const fs::path& out, std::vector<std::string> extra = {}) {
  std::vector<std::string> args{verb, "--out", out.string()};
  const auto& base = kVerbArgs.at(verb);
  args.insert(args.end(), base.begin(), base.end());
  args.insert(args.end(), extra.begin(), extra.end());
  return run(args);
}

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("help, version and key listing") {
    auto r = run({"--version"});
    CHECK(r.code == kOk);
    CHECK(r.out.rfind("ubdm ", 0) == 0);
    r = run({"--help"});
    CHECK(r.code == kOk);
    CHECK(r.out.find("--preset") != std::string::npos);
    r = run({"--list-keys"});
    CHECK(r.code == kOk);
    CHECK(r.out.find("lindblad.N_max = 30") != std::string::npos);
    CHECK(r.out.find("axion.f_a_GeV = <unset>") != std::string::npos);
  }

  TEST_CASE("usage errors exit 2") {
    CHECK(run({}).code == kConfigError);
    CHECK(run({"frobnicate"}).code == kConfigError);
    CHECK(run({"neff", "--bogus"}).code == kConfigError);
    CHECK(run({"neff", "--workers", "many"}).code == kConfigError);
    const auto dir = scratch("usage");
    auto r = run({"neff", "--out", dir.string(), "--set", "axion.mass_eV=-1"});
    CHECK(r.code == kConfigError);
    CHECK(r.err.find("mass") != std::string::npos);
    r = run({"neff", "--out", dir.string(), "--set", "nope.key=1"});
    CHECK(r.code == kConfigError);
    CHECK(r.err.find("unknown") != std::string::npos);
    r = run({"neff", "--out", dir.string(), "--config", UBDM_TEST_DATA_DIR "/malformed.ini"});
    CHECK(r.code == kConfigError);
    CHECK(r.err.find("config error") != std::string::npos);
    // omega_b below the Compton frequency has no propagating mode
    r = run({"neff", "--out", dir.string(), "--set", "haloscope.omega_b=1e9"});
    CHECK(r.code == kConfigError);
    CHECK(fs::is_empty(dir));
  }

  TEST_CASE("numerical and validity failures exit 3") {
    const auto dir = scratch("validity");
    // the default Q_c = 1e4 leaves no delta_t satisfying the hierarchy
    auto r = run({"counting", "--out", dir.string()});
    CHECK(r.code == kNumericalError);
    CHECK(r.err.find("time-scale hierarchy") != std::string::npos);
    r = run({"counting", "--out", dir.string(), "--set", "haloscope.Q_c=1e3", "--set",
             "counting.delta_t=1e-7"});
    CHECK(r.code == kNumericalError);
    CHECK(r.err.find("delta_t >> 1/delta_omega_b") != std::string::npos);
    r = run({"counting", "--out", dir.string(), "--set", "haloscope.Q_c=1e3", "--set",
             "counting.delta_t=1e-3"});
    CHECK(r.code == kNumericalError);
    CHECK(r.err.find("delta_t << 1/delta_omega_a") != std::string::npos);
    CHECK(fs::is_empty(dir));
  }

  TEST_CASE("truncation failures exit 4, or warn on request") {
    const auto dir = scratch("truncation");
    const std::vector<std::string> hot{"lindblad", "--out", dir.string(), "--set",
                                       "lindblad.n_eff=5", "--set", "lindblad.N_max=10"};
    auto r = run(hot);
    CHECK(r.code == kTruncationError);
    CHECK(r.err.find("truncation") != std::string::npos);
    auto warn = hot;
    warn.insert(warn.end(), {"--set", "lindblad.truncation=warn"});
    r = run(warn);
    CHECK(r.code == kOk);
    CHECK(r.err.find("warning: Fock truncation") != std::string::npos);
    CHECK(read_json(dir / "lindblad.json")["truncation_warning"] == true);
  }

  TEST_CASE("every verb writes its outputs and a manifest") {
    const std::map<std::string, std::vector<std::string>> expected{
        {"neff", {"neff.json"}},
        {"markov", {"markov.json"}},
        {"lindblad", {"trajectory.csv", "lindblad.json"}},
        {"psd", {"psd.csv", "psd_g1.csv", "psd.json"}},
        {"g1", {"g1_curves.csv", "g1_curves.json"}},
        {"g2", {"g2_curves.csv", "g2_curves.json"}},
        {"counting", {"counting.json"}},
        {"sweep", {"summary.csv", "point_000/neff.json", "point_002/manifest.json"}},
    };
    for (const auto& [verb, files] : expected) {
      CAPTURE(verb);
      const auto dir = scratch("verb_" + verb);
      const auto r = run_verb(verb, dir);
      REQUIRE_MESSAGE(r.code == kOk, r.err);
      CHECK(r.out.find(verb + ": wrote") != std::string::npos);
      const auto manifest = read_json(dir / "manifest.json");
      CHECK(manifest["tool"] == "ubdm");
      CHECK(manifest["verb"] == verb);
      CHECK(manifest["wall_time_s"].get<double>() >= 0.0);
      std::map<std::string, std::string> listed;
      for (const auto& o : manifest["outputs"]) listed[o["file"]] = o["fnv1a64"];
      for (const auto& f : files) {
        REQUIRE(fs::exists(dir / f));
        const std::string text = slurp(dir / f);
        if (fs::path(f).filename() == kManifestName) continue;
        CHECK(listed.at(f) == hex64(fnv1a64(text)));
        if (f.ends_with(".csv")) {
          CHECK(text.rfind("# manifest: manifest.json\n", 0) == 0);
        } else {
          const auto doc = json::parse(text);
          CHECK(doc.begin().key() == "manifest");
          CHECK(doc["manifest"] == "manifest.json");
        }
      }
    }
  }

  TEST_CASE("verb results") {
    const auto dir = scratch("results");
    REQUIRE(run_verb("neff", dir / "neff").code == kOk);
    const auto neff = read_json(dir / "neff" / "neff.json");
    CHECK(neff["n_eff"].get<double>() > 1e20);
    CHECK(neff["omega_b_rad_s"] == neff["omega_phi_prime_rad_s"]);

    REQUIRE(run_verb("markov", dir / "markov").code == kOk);
    const auto markov = read_json(dir / "markov" / "markov.json");
    CHECK(markov["valid"] == true);
    CHECK(markov["f_a_GeV"].get<double>() == 1e12);
    CHECK(markov["margin"].get<double>() < 1.0);

    REQUIRE(run_verb("lindblad", dir / "lindblad").code == kOk);
    const auto lb = read_json(dir / "lindblad" / "lindblad.json");
    CHECK(lb["relative_error"].get<double>() < 1e-6);
    CHECK(lb["trace_error_T"].get<double>() < 1e-10);
    CHECK(lb["min_eigenvalue_T"].get<double>() > -1e-10);
    const std::string traj = slurp(dir / "lindblad" / "trajectory.csv");
    CHECK(std::count(traj.begin(), traj.end(), '\n') == 2 + 11);

    REQUIRE(run_verb("psd", dir / "psd").code == kOk);
    const auto psd = read_json(dir / "psd" / "psd.json");
    CHECK(psd["small_coupling"] == true);
    CHECK(psd["mean_occupation"].get<double>() > 0.0);
    CHECK(psd["points"] == 1024);

    REQUIRE(run_verb("g2", dir / "g2").code == kOk);
    const auto g2 = read_json(dir / "g2" / "g2_curves.json");
    REQUIRE(g2["states"].size() == 3);
    CHECK(g2["states"][0]["label"] == "shm");
    CHECK(g2["states"][0]["statistics"] == "bunched");
    CHECK(g2["states"][0]["g2_at_zero"] == 2.0);
    CHECK(g2["states"][2]["statistics"] == "coherent-like");
    CHECK(g2["max_abs_g2_shm_minus_shmpp"].get<double>() > 1e-8);

    REQUIRE(run_verb("g1", dir / "g1").code == kOk);
    const std::string g1 = slurp(dir / "g1" / "g1_curves.csv");
    CHECK(g1.find("shm:mc_abs_g1") != std::string::npos);
    CHECK(g1.find("coherent:abs_g1") != std::string::npos);

    REQUIRE(run_verb("counting", dir / "counting").code == kOk);
    const auto cnt = read_json(dir / "counting" / "counting.json");
    CHECK(cnt["validity"]["satisfied"] == true);
    CHECK(cnt["max_identity_relative_error"].get<double>() < 1e-12);
    CHECK(cnt["joint"].size() == 5);
    CHECK(cnt["P_single"].get<double>() > 0.0);
  }

  TEST_CASE("sweeps") {
    const auto dir = scratch("sweep");
    REQUIRE(run_verb("sweep", dir / "s").code == kOk);
    std::istringstream summary(slurp(dir / "s" / "summary.csv"));
    std::string line;
    std::getline(summary, line);
    std::getline(summary, line);
    CHECK(line == "index,value,n_eff,k_b_per_m");
    std::vector<double> n;
    while (std::getline(summary, line)) {
      const auto a = line.find(',', line.find(',') + 1);
      n.push_back(std::stod(line.substr(a + 1)));
    }
    REQUIRE(n.size() == 3);
    CHECK(n[0] > n[1]);
    CHECK(n[1] > n[2]);

    // each point equals the corresponding single run
    REQUIRE(run({"neff", "--out", (dir / "single").string(), "--set", "axion.mass_eV=1e-5"}).code ==
            kOk);
    CHECK(slurp(dir / "single" / "neff.json") == slurp(dir / "s" / "point_001" / "neff.json"));
    const auto pm = read_json(dir / "s" / "point_001" / "manifest.json");
    CHECK(pm["config"]["axion.mass_eV"]["value"] == "1e-5");

    // other verbs along other axes
    REQUIRE(run({"sweep", "--out", (dir / "m").string(), "--preset", "haystac", "--set",
                 "sweep.command=markov", "--set", "sweep.axis=haloscope.B0", "--set",
                 "sweep.values=1,3,9"})
                .code == kOk);
    CHECK(fs::exists(dir / "m" / "point_002" / "markov.json"));

    auto r = run({"sweep", "--out", (dir / "e").string()});
    CHECK(r.code == kConfigError);
    CHECK(r.err.find("sweep.values is empty") != std::string::npos);
    r = run({"sweep", "--out", (dir / "e").string(), "--set", "sweep.axis=halo.model", "--set",
             "sweep.values=shm,shmpp"});
    CHECK(r.code == kConfigError);
    CHECK(r.err.find("not numeric") != std::string::npos);
    r = run({"sweep", "--out", (dir / "e").string(), "--set", "sweep.values=1e-5,abc"});
    CHECK(r.code == kConfigError);
    r = run({"sweep", "--out", (dir / "e").string(), "--set", "sweep.command=sweep", "--set",
             "sweep.values=1"});
    CHECK(r.code == kConfigError);
    r = run({"sweep", "--out", (dir / "e").string(), "--set", "sweep.axis=axion.nothing", "--set",
             "sweep.values=1"});
    CHECK(r.code == kConfigError);
  }

  TEST_CASE("outputs do not depend on the worker count") {
    for (const auto& verb : {"g1", "g2", "sweep"}) {
      CAPTURE(verb);
      const auto dir = scratch(std::string("workers_") + verb);
      REQUIRE(run_verb(verb, dir / "w1", {"--workers", "1", "--seed", "11"}).code == kOk);
      REQUIRE(run_verb(verb, dir / "w4", {"--workers", "4", "--seed", "11"}).code == kOk);
      const auto a = outputs(dir / "w1");
      const auto b = outputs(dir / "w4");
      CHECK(a.size() >= 2);
      CHECK(a == b);
    }
    // the Monte Carlo column does depend on the seed
    const auto dir = scratch("seeds");
    REQUIRE(run_verb("g1", dir / "s1", {"--seed", "1"}).code == kOk);
    REQUIRE(run_verb("g1", dir / "s2", {"--seed", "2"}).code == kOk);
    CHECK(slurp(dir / "s1" / "g1_curves.csv") != slurp(dir / "s2" / "g1_curves.csv"));
  }

  TEST_CASE("output formatting") {
    CHECK(format_double(1.0) == "1.0000000000000000e+00");
    CHECK(format_double(-0.1) == "-1.0000000000000001e-01");
    CHECK(format_double(std::nan("")) == "nan");
    CHECK(csv({"a", "b"}, {{1.0, 2.0}, {3.0, 4.0}}) ==
          "# manifest: manifest.json\na,b\n1.0000000000000000e+00,3.0000000000000000e+00\n"
          "2.0000000000000000e+00,4.0000000000000000e+00\n");
    CHECK_THROWS(csv({"a"}, {{1.0}, {2.0}}));
    CHECK_THROWS(csv({"a", "b"}, {{1.0}, {2.0, 3.0}}));
    CHECK(hex64(fnv1a64("")) == "cbf29ce484222325");
    CHECK(hex64(fnv1a64("a")) == "af63dc4c8601ec8c");
  }
}
