#include <doctest.h>

#include <atomic>
#include <cmath>
#include <filesystem>
#include <fstream>

#include "graphrd/config.hpp"
#include "graphrd/error.hpp"
#include "graphrd/profiles.hpp"
#include "graphrd/studies.hpp"

using namespace graphrd;

namespace {

ErrorCode code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return ErrorCode::InvalidArgument;
}

const char* kRdConfig = R"(
# comment line
[experiment]
kind = rd_convergence
seed = 5

[kernel]
family = smooth_cosine
c = 0.4

[sequence]
n = 2, 4
reference_factor = 4

[reaction]
family = logistic
r = 1

[time]
T = 0.5
dt = 0.01
outputs = 6

[bounds]
p = 1, 2, inf
)";

const char* kLlnConfig = R"(
[experiment]
kind = lln
replicas = 20

[kernel]
family = constant
c = 0.5

[sequence]
n = 2, 4
ell = 20, 40
reference_factor = 4

[reaction]
family = birth_death
birth = linear:1
death = quadratic:1

[time]
T = 0.3
dt = 0.01
)";

}  // namespace

TEST_CASE("config parsing") {
  const auto cfg = parse_config(kRdConfig);
  CHECK(cfg.kind == ExperimentKind::RdConvergence);
  CHECK(cfg.seed == 5);
  CHECK(cfg.kernel_params.at("c") == 0.4);
  CHECK(cfg.n_values == std::vector<std::size_t>{2, 4});
  CHECK(cfg.reference_n() == 16);
  REQUIRE(cfg.p_values.size() == 3);
  CHECK(cfg.p_values[2].is_infinite());
  CHECK(cfg.reaction().kind() == ReactionTerm::Kind::Logistic);
  CHECK(cfg.outputs == 6);

  const auto over = parse_config(kRdConfig, {"kernel.c=0.2", "sequence.n=8"});
  CHECK(over.kernel_params.at("c") == 0.2);
  CHECK(over.n_values == std::vector<std::size_t>{8});
}

TEST_CASE("config errors") {
  const std::string base = kRdConfig;
  CHECK(code_of([&] { parse_config(base + "\n[extra]\nx = 1\n"); }) == ErrorCode::ConfigError);
  CHECK(code_of([&] { parse_config(base, {"time.colour=red"}); }) == ErrorCode::ConfigError);
  CHECK(code_of([&] { parse_config(base, {"sequence.n=4, 2"}); }) == ErrorCode::ConfigError);
  CHECK(code_of([&] { parse_config(base, {"bounds.p=0.5"}); }) == ErrorCode::ConfigError);
  CHECK(code_of([&] { parse_config(base, {"kernel.family=wavelet"}); }) == ErrorCode::ConfigError);
  CHECK(code_of([&] { parse_config(base, {"reaction.family=cubic"}); }) == ErrorCode::ConfigError);
  CHECK(code_of([&] { parse_config(base, {"time.T=-1"}); }) == ErrorCode::ConfigError);
  CHECK(code_of([&] { parse_config(base, {"no_equals_sign"}); }) == ErrorCode::ConfigError);
  CHECK(code_of([&] { parse_config(kLlnConfig, {"sequence.ell=20"}); }) == ErrorCode::ConfigError);
  CHECK(code_of([&] { parse_config(kLlnConfig, {"sequence.ell=40, 20"}); }) == ErrorCode::ConfigError);
  CHECK(code_of([&] { parse_config(kLlnConfig, {"reaction.family=logistic"}); }) == ErrorCode::ConfigError);
  CHECK(code_of([] { load_config("/nonexistent/graphrd.ini"); }) == ErrorCode::ConfigError);
}

TEST_CASE("config echo round-trips and hashes stably") {
  const auto cfg = parse_config(kRdConfig);
  const auto echo = config_echo(cfg);
  const auto again = parse_config(echo);
  CHECK(config_echo(again) == echo);
  CHECK(config_hash(again) == config_hash(cfg));
  CHECK(config_hash(parse_config(kRdConfig, {"experiment.threads=3"})) == config_hash(cfg));
  CHECK(config_hash(parse_config(kRdConfig, {"experiment.seed=6"})) != config_hash(cfg));
  CHECK(config_hash(cfg).size() == 16);
}

TEST_CASE("config files resolve kernel files relative to the config") {
  const auto cfg = load_config(std::filesystem::path(GRAPHRD_TEST_DATA) / "rd_small.ini");
  CHECK(cfg.kind == ExperimentKind::RdConvergence);
  CHECK(cfg.n_values == std::vector<std::size_t>{4, 8});

  const auto dir = std::filesystem::temp_directory_path() / "graphrd_cfg_test";
  std::filesystem::create_directories(dir);
  std::ofstream(dir / "k.txt") << "0 1\n1 0\n";
  std::ofstream(dir / "run.ini") << "[experiment]\nkind = single_run\n[kernel]\nfile = k.txt\n";
  const auto file_cfg = load_config(dir / "run.ini");
  REQUIRE(file_cfg.kernel_file.has_value());
  CHECK(std::get<StepGraphon>(file_cfg.kernel()).size() == 2);
  std::filesystem::remove_all(dir);
}

TEST_CASE("profiles") {
  const auto s = parse_profile("sine(0.3,0.5)");
  CHECK(s(0.25) == doctest::Approx(0.8));
  CHECK(s.sup() == doctest::Approx(0.8));
  CHECK(s.inf() == doctest::Approx(0.2));
  CHECK(mean(s.cell_averages(7)) == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(parse_profile(s.to_string()).cell_averages(5) == s.cell_averages(5));

  const auto st = parse_profile("step(1,0,0.3)");
  const auto avg = st.cell_averages(2);
  CHECK(avg[0] == doctest::Approx(0.6));
  CHECK(avg[1] == doctest::Approx(0.0));
  CHECK(parse_profile("constant(0.25)").cell_averages(3) == GridFunction(3, 0.25));
  CHECK(code_of([] { parse_profile("gaussian(1)"); }) == ErrorCode::InvalidArgument);
  CHECK(code_of([] { parse_profile("sine(1,2,3)"); }) == ErrorCode::InvalidArgument);

  CHECK(counts_from_density(GridFunction({0.5, 0.26, 0.0}), 10.0) == std::vector<Count>{5, 3, 0});
  CHECK(code_of([] { counts_from_density(GridFunction({-0.5}), 10.0); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("Wilson interval") {
  const auto w = wilson_interval(0, 200);
  CHECK(w.lo == 0.0);
  CHECK(wilson_interval(200, 200).hi == 1.0);
  CHECK(w.hi == doctest::Approx(0.018845).epsilon(1e-3));
  const auto half = wilson_interval(50, 100);
  CHECK(half.lo == doctest::Approx(0.40383).epsilon(1e-4));
  CHECK(half.hi == doctest::Approx(0.59617).epsilon(1e-4));
  for (std::size_t k = 0; k <= 20; ++k) {
    const auto i = wilson_interval(k, 20);
    const double p = static_cast<double>(k) / 20.0;
    CHECK(i.lo <= p + 1e-15);
    CHECK(i.hi >= p - 1e-15);
  }
}

TEST_CASE("parallel_for visits every index once") {
  for (std::size_t threads : {0u, 1u, 3u, 8u}) {
    std::vector<std::atomic<int>> hits(57);
    parallel_for(hits.size(), threads, [&](std::size_t i) { hits[i]++; });
    for (const auto& h : hits) CHECK(h.load() == 1);
  }
  CHECK_NOTHROW(parallel_for(0, 4, [](std::size_t) { FAIL("no work expected"); }));
  CHECK_THROWS_AS(parallel_for(10, 2,
                               [](std::size_t i) {
                                 if (i == 7) fail(ErrorCode::InvalidArgument, "boom");
                               }),
                  Error);
}

TEST_CASE("trend check") {
  auto row = [](double p, std::size_t exceed) {
    LlnRow r;
    r.p_hat = p;
    r.wilson = wilson_interval(exceed, 200);
    return r;
  };
  CHECK(lln_trend_ok({row(0.5, 100), row(0.2, 40), row(0.0, 0)}));
  // A small uptick between adjacent rungs with overlapping intervals is allowed.
  CHECK(lln_trend_ok({row(0.10, 20), row(0.11, 22), row(0.0, 0)}));
  CHECK(!lln_trend_ok({row(0.10, 20), row(0.05, 10), row(0.11, 22)}));
  CHECK(!lln_trend_ok({row(0.0, 0), row(0.5, 100)}));
}

TEST_CASE("convergence study self-comparison") {
  auto cfg = parse_config(kRdConfig, {"sequence.n=16", "sequence.reference_factor=1"});
  const auto study = run_convergence_study(cfg);
  REQUIRE(study.rows.size() == 3);
  for (const auto& r : study.rows) {
    CHECK(r.error.empty());
    CHECK(r.report.lhs <= 1e-6);
    CHECK(r.passed());
  }
}

TEST_CASE("convergence study rows and determinism") {
  const auto cfg = parse_config(kRdConfig);
  const auto a = run_convergence_study(cfg);
  REQUIRE(a.rows.size() == 6);
  CHECK(a.passed());
  for (std::size_t i = 1; i < a.rows.size(); ++i) {
    CHECK(a.rows[i - 1].n <= a.rows[i].n);
  }
  auto threaded = cfg;
  threaded.threads = 3;
  CHECK(run_convergence_study(threaded).csv() == a.csv());
  const auto header = a.csv().substr(0, a.csv().find('\n'));
  CHECK(header.find("cut_norm_mode") != std::string::npos);
  CHECK(header.find("advisory") != std::string::npos);
}

TEST_CASE("lln study") {
  const auto cfg = parse_config(kLlnConfig, {"lln.epsilon=1000"});
  const auto study = run_lln_study(cfg);
  REQUIRE(study.rows.size() == 2);
  for (const auto& r : study.rows) {
    CHECK(r.exceed == 0);
    CHECK(r.p_hat == 0.0);
    CHECK(r.capped == 0);
  }
  CHECK(!study.control);
  CHECK(study.label() == "lln trend");
  CHECK(study.passed());

  auto threaded = cfg;
  threaded.threads = 4;
  const auto again = run_lln_study(threaded);
  CHECK(again.csv() == study.csv());
  CHECK(again.replicas_csv() == study.replicas_csv());

  const auto fixed = run_lln_study(parse_config(kLlnConfig, {"sequence.ell=5, 5"}));
  CHECK(fixed.control);
  CHECK(fixed.label() == "hypothesis-violating control");
}

TEST_CASE("study output files") {
  const auto dir = std::filesystem::temp_directory_path() / "graphrd_out_test";
  std::filesystem::remove_all(dir);
  const auto csv = write_study(dir, "demo", "a,b\n1,2\n", "{}", true, ExperimentKind::Lln);
  CHECK(std::filesystem::exists(csv));
  CHECK(std::filesystem::exists(dir / "demo.json"));
  std::size_t scripts = 0;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (entry.path().extension() == ".py") ++scripts;
  }
  CHECK(scripts == 1);
  std::filesystem::remove_all(dir);
}
