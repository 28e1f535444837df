// Acceptance suite: one PASS/FAIL line per criterion, exit status 0 only if
// every criterion passes.

#include <chrono>
#include <cmath>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "superselect/basis_builder.hpp"
#include "superselect/cli.hpp"
#include "superselect/entanglement.hpp"
#include "superselect/io.hpp"
#include "superselect/measurement.hpp"
#include "superselect/scenarios.hpp"

using namespace superselect;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      if (pass) detail = what;
      pass = false;
    }
  }
};

struct CliRun {
  int code;
  std::string out;
};

CliRun cli_run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str()};
}

fs::path scratch(const std::string& name) {
  const auto p = fs::temp_directory_path() / ("superselect_acceptance_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

std::string without_timestamp(const std::string& text) {
  std::istringstream in(text);
  std::string line, kept;
  while (std::getline(in, line)) {
    if (line.find("\"timestamp\"") == std::string::npos) kept += line + "\n";
  }
  return kept;
}

std::string sci(double x) {
  std::ostringstream os;
  os.precision(2);
  os << std::scientific << x;
  return os.str();
}

// Photon plus neutral kaons: every state lies in the electric-neutral sector.
SpeciesRegistry neutral_registry() {
  return SpeciesRegistry(
      {{"electric", ChargeKind::gauged, "e"},
       {"strangeness", ChargeKind::global, ""}},
      {{"gamma", ChargeVector{0, 0}, 2, "gamma"},
       {"K0", ChargeVector{0, +1}, 1, "K0bar"},
       {"K0bar", ChargeVector{0, -1}, 1, "K0"}});
}

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

// ---------------------------------------------------------------------------

Outcome bell_pairs() {
  Outcome o;
  const auto t0 = Clock::now();
  const auto plus = build_scenario({ScenarioKind::bell_plus});
  const auto minus = build_scenario({ScenarioKind::bell_minus});
  o.require(std::abs(inner_product(plus.state, minus.state)) <= 1e-9, "overlap");
  const double h = std::numbers::sqrt2 / 2.0;
  for (const auto* sc : {&plus, &minus}) {
    o.require(std::abs(sc->state.norm() - 1.0) <= 1e-9, "norm");
    const Bipartition cut(2, {0});
    const auto r = schmidt(sc->state, cut);
    o.require(r.singular_values.size() == 2 &&
                  std::abs(r.singular_values[0] - h) <= 1e-9 &&
                  std::abs(r.singular_values[1] - h) <= 1e-9,
              "schmidt values");
    o.require(std::abs(entanglement_entropy(sc->state, cut) - std::numbers::ln2) <= 1e-9,
              "entropy");
  }
  o.require(max_deviation(charge_conjugate(plus.registry, plus.state), plus.state) <= 1e-12,
            "C psi+ != psi+");
  o.require(max_deviation(charge_conjugate(minus.registry, minus.state),
                          minus.state.scaled(-1.0)) <= 1e-12,
            "C psi- != -psi-");

  for (const std::string name : {"bell_plus", "bell_minus"}) {
    const auto r = cli_run({"demo", name, "--json"});
    o.require(r.code == 0, "demo " + name + " exit code");
    const auto j = json::parse(r.out);
    o.require(j["results"]["verified"] == true, "demo " + name + " not verified");
    const auto& cut = j["results"]["observed"]["cuts"][0];
    o.require(std::abs(cut["entropy"].get<double>() - std::numbers::ln2) <= 1e-9,
              "demo " + name + " entropy");
    for (const auto& s : cut["singular_values"]) {
      o.require(std::abs(s.get<double>() - h) <= 1e-9, "demo " + name + " schmidt");
    }
    const auto& c = j["results"]["observed"]["conjugation_overlap"];
    const double expected = name == "bell_plus" ? 1.0 : -1.0;
    o.require(std::abs(c[0].get<double>() - expected) <= 1e-12 &&
                  std::abs(c[1].get<double>()) <= 1e-12,
              "demo " + name + " conjugation");
  }
  const double t = seconds_since(t0);
  o.require(t < 1.0, "runtime " + std::to_string(t) + " s");
  if (o.pass) o.detail = "entropy ln 2, C-parity +1/-1, " + std::to_string(t) + " s";
  return o;
}

Outcome superselection() {
  Outcome o;
  const auto t0 = Clock::now();
  const auto dir = scratch("forbidden");
  o.require(cli_run({"demo", "forbidden_pm2e", "--export-dir", dir.string()}).code == 0,
            "export");
  const auto r = cli_run({"validate", "--registry", (dir / "registry.json").string(),
                          "--state", (dir / "state.json").string(), "--json"});
  o.require(r.code == 2, "forbidden state exit code " + std::to_string(r.code));
  const auto j = json::parse(r.out);
  const auto& sectors = j["results"]["sectors"];
  o.require(sectors.size() == 2 && sectors[0]["sector"] == json::array({-2}) &&
                sectors[1]["sector"] == json::array({2}),
            "listed sectors");

  const auto kdir = scratch("kaon");
  o.require(cli_run({"demo", "meson_superposition", "--export-dir", kdir.string()}).code == 0,
            "kaon export");
  const auto k = cli_run({"validate", "--registry", (kdir / "registry.json").string(),
                          "--state", (kdir / "state.json").string(), "--json"});
  o.require(k.code == 0, "kaon exit code " + std::to_string(k.code));
  o.require(json::parse(k.out)["results"]["sector"] == json::array({0}), "kaon sector");

  const auto meson = build_scenario({ScenarioKind::meson_superposition});
  const auto check = validate_superselection(meson.registry, meson.state);
  o.require(check.valid() && *check.sector == SectorIndex{{0}}, "kaon library check");
  fs::remove_all(dir);
  fs::remove_all(kdir);
  const double t = seconds_since(t0);
  o.require(t < 1.0, "runtime " + std::to_string(t) + " s");
  if (o.pass) o.detail = "exit 2 with sectors (-2),(+2); K0 mix accepted at (0)";
  return o;
}

Outcome gauge_covariance() {
  Outcome o;
  std::mt19937_64 rng(20240301);
  const std::vector<SpeciesRegistry> registries{
      electron_positron_registry(1), electron_positron_registry(2),
      color_toy_registry(), neutral_registry(), neutral_kaon_registry()};
  constexpr int kStates = 600;
  constexpr int kAngles = 24;
  double worst = 0.0, worst_weight = 0.0;
  std::uniform_real_distribution<double> angle(-2.0 * std::numbers::pi,
                                               2.0 * std::numbers::pi);
  for (int i = 0; i < kStates; ++i) {
    const auto& reg = registries[static_cast<std::size_t>(i) % registries.size()];
    const std::size_t n = 1 + static_cast<std::size_t>(rng() % 4);
    const auto s = oracle::random_sector_state(reg, n, rng);
    const auto before = validate_superselection(reg, s);
    const double q = static_cast<double>(before.sector->gauged_charges.at(0));
    for (int a = 0; a < kAngles; ++a) {
      const double theta = angle(rng);
      const auto g = apply_u1_gauge(reg, s, "electric", theta);
      worst = std::max(worst, max_deviation(g, s.scaled(std::polar(1.0, q * theta))));
      const auto after = validate_superselection(reg, g);
      if (after.weights.size() != before.weights.size()) {
        worst_weight = 1.0;
        continue;
      }
      for (std::size_t k = 0; k < after.weights.size(); ++k) {
        worst_weight = std::max(
            worst_weight, std::abs(after.weights[k].second - before.weights[k].second));
      }
    }
  }
  o.require(worst <= 1e-12, "max deviation " + sci(worst));
  o.require(worst_weight <= 1e-12, "weight drift " + sci(worst_weight));
  if (o.pass) {
    o.detail = std::to_string(kStates) + " states x " + std::to_string(kAngles) +
               " angles, max deviation " + sci(worst);
  }
  return o;
}

Outcome entangled_bases() {
  Outcome o;
  const auto t0 = Clock::now();
  const auto reg = electron_positron_registry(1);
  int sectors = 0, vectors = 0, degenerate = 0;
  double worst_gram = 0.0, worst_span = 0.0;
  for (std::size_t n = 2; n <= 6; ++n) {
    for (int q = -static_cast<int>(n); q <= static_cast<int>(n); q += 2) {
      const SectorIndex sector{{q}};
      const auto b = build_packaged_entangled_basis(reg, n, sector);
      const auto basis = sector_basis(reg, n, sector);
      const std::string tag = "n=" + std::to_string(n) + " Q=" + std::to_string(q);
      ++sectors;
      if (basis.size() == 1) {
        ++degenerate;
        o.require(b.degenerate, tag + " d=1 not flagged");
        continue;
      }
      o.require(!b.degenerate, tag + " flagged degenerate");
      o.require(b.vectors.size() == basis.size(), tag + " vector count");
      for (std::size_t i = 0; i < b.vectors.size(); ++i) {
        for (std::size_t j = 0; j < b.vectors.size(); ++j) {
          const auto g = inner_product(b.vectors[i], b.vectors[j]);
          worst_gram = std::max(worst_gram, std::abs(g - Amplitude(i == j ? 1.0 : 0.0)));
        }
        o.require(sector_of(reg, b.vectors[i].terms().begin()->first) == sector,
                  tag + " vector outside sector");
        o.require(is_packaged_entangled(reg, b.vectors[i]), tag + " separable vector");
        o.require(oracle::entangled_every_cut(b.vectors[i]),
                  tag + " oracle finds a rank-1 cut");
        ++vectors;
      }
      worst_span = std::max(worst_span, span_deviation(b.vectors, basis));
    }
  }
  o.require(worst_gram <= 1e-9, "gram deviation " + sci(worst_gram));
  o.require(worst_span <= 1e-8, "span deviation " + sci(worst_span));
  const double t = seconds_since(t0);
  o.require(t < 60.0, "runtime " + std::to_string(t) + " s");
  if (o.pass) {
    std::ostringstream os;
    os << sectors << " sectors, " << vectors << " vectors all entangled, " << degenerate
       << " d=1 flagged, gram " << sci(worst_gram) << ", span " << sci(worst_span) << ", "
       << t << " s";
    o.detail = os.str();
  }
  return o;
}

// Product state of one random spin vector per register, each register holding
// a single species, so the result lies in one sector.
StateVector sector_product_state(const SpeciesRegistry& reg, std::size_t n,
                                 std::mt19937_64& rng) {
  const auto ids = reg.sorted_ids();
  std::vector<std::pair<BasisState, Amplitude>> terms{{BasisState{}, 1.0}};
  for (std::size_t k = 0; k < n; ++k) {
    const auto& sp = reg.at(ids[rng() % ids.size()]);
    std::vector<std::pair<BasisState, Amplitude>> next;
    for (const auto& [b, a] : terms) {
      for (int s = 0; s < sp.spin_multiplicity; ++s) {
        BasisState e = b;
        e.labels.push_back({sp.id, s});
        next.emplace_back(std::move(e), a * oracle::gaussian_amplitude(rng));
      }
    }
    terms = std::move(next);
  }
  return StateVector(n, terms).normalized();
}

// Register 0 in a product with a random entangled state of registers 1 and 2,
// or registers 0,1 entangled with register 2 in a product.
StateVector partial_product_state(const SpeciesRegistry& reg, std::mt19937_64& rng) {
  const auto pair = oracle::random_sector_state(reg, 2, rng, 1.0);
  const auto single = sector_product_state(reg, 1, rng);
  const bool single_first = rng() % 2;
  std::vector<std::pair<BasisState, Amplitude>> terms;
  for (const auto& [b1, a1] : pair.terms()) {
    for (const auto& [b2, a2] : single.terms()) {
      BasisState e;
      if (single_first) {
        e.labels = {b2[0], b1[0], b1[1]};
      } else {
        e.labels = {b1[0], b1[1], b2[0]};
      }
      terms.emplace_back(std::move(e), a1 * a2);
    }
  }
  return StateVector(3, terms);
}

Outcome oracle_equivalence() {
  Outcome o;
  std::mt19937_64 rng(7771);
  const std::vector<SpeciesRegistry> registries{neutral_registry(),
                                                electron_positron_registry(2)};
  constexpr int kStates = 1200;
  int disagreements = 0, entangled = 0;
  int counts[4] = {0, 0, 0, 0};
  for (int i = 0; i < kStates; ++i) {
    const auto& reg = registries[static_cast<std::size_t>(i) % 2];
    const int family = (i / 2) % 4;
    const std::size_t n = 2 + static_cast<std::size_t>(rng() % 2);
    StateVector s(1);
    switch (family) {
      case 0: s = sector_product_state(reg, n, rng); break;
      case 1: s = partial_product_state(reg, rng); break;
      case 2: s = oracle::random_sector_state(reg, n, rng, 0.15); break;
      default: s = oracle::random_sector_state(reg, n, rng, 1.0); break;
    }
    ++counts[family];
    const bool lib = is_packaged_entangled(reg, s);
    const bool ref = oracle::entangled_every_cut(s);
    entangled += ref;
    if (lib != ref) ++disagreements;
  }
  o.require(disagreements == 0, std::to_string(disagreements) + " disagreements");
  if (o.pass) {
    std::ostringstream os;
    os << kStates << " states (product " << counts[0] << ", partial " << counts[1]
       << ", sparse " << counts[2] << ", generic " << counts[3] << "), " << entangled
       << " entangled, 0 disagreements";
    o.detail = os.str();
  }
  return o;
}

std::vector<std::pair<Amplitude, Amplitude>> hybrid_draws(std::uint64_t seed, int count) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> mix(0.05, std::numbers::pi / 2 - 0.05);
  std::uniform_real_distribution<double> phase(0.0, 2.0 * std::numbers::pi);
  std::vector<std::pair<Amplitude, Amplitude>> out;
  for (int i = 0; i < count; ++i) {
    const double phi = mix(rng);
    out.emplace_back(std::polar(std::cos(phi), phase(rng)),
                     std::polar(std::sin(phi), phase(rng)));
  }
  return out;
}

Outcome measurement_collapse() {
  Outcome o;
  const auto reg = electron_positron_registry(2);
  const auto obs = SpinObservable::spin_z(reg, 0);
  const SectorIndex zero{{0}};
  constexpr int kSamples = 100000;
  double worst_p = 0.0, worst_z = 0.0;
  std::mt19937_64 sampler(99);
  for (const auto& [alpha, beta] : hybrid_draws(424242, 50)) {
    const auto s = hybrid_pair_state(alpha, beta);
    const auto records = measure_spin(reg, s, obs);
    o.require(records.size() == 2, "outcome count");
    if (records.size() != 2) continue;
    worst_p = std::max({worst_p, std::abs(records[0].probability - std::norm(alpha)),
                        std::abs(records[1].probability - std::norm(beta))});
    for (const auto& r : records) {
      o.require(oracle::rank_one(r.post_state, 1u), "post state not a product");
      o.require(!entanglement_report(r.post_state).some_cut, "post state entangled");
      o.require(read_total_charge(reg, r.post_state) == zero, "sector changed");
    }
    int zeros = 0;
    for (int k = 0; k < kSamples; ++k) {
      const auto r = sample_measurement(reg, s, obs, sampler);
      zeros += r.outcome == 0;
    }
    const double p = std::norm(alpha);
    const double sigma = std::sqrt(kSamples * p * (1.0 - p));
    worst_z = std::max(worst_z, std::abs(zeros - kSamples * p) / sigma);
  }
  o.require(worst_p <= 1e-12, "probability error " + sci(worst_p));
  o.require(worst_z <= 3.0, "sample deviation " + std::to_string(worst_z) + " sigma");
  if (o.pass) {
    std::ostringstream os;
    os << "50 draws, probability error " << sci(worst_p) << ", worst sample z "
       << worst_z;
    o.detail = os.str();
  }
  return o;
}

Outcome internal_marginal() {
  Outcome o;
  const auto reg = electron_positron_registry(2);
  const Bipartition cut(2, {0});
  auto draws = hybrid_draws(515151, 50);
  const double h = std::numbers::sqrt2 / 2.0;
  draws.emplace_back(h, h);
  double worst_gap = 0.0;
  for (const auto& [alpha, beta] : draws) {
    const auto anti = ppt_check(
        internal_charge_marginal(reg, hybrid_pair_state(alpha, beta, false)), cut);
    o.require(anti.verdict == PptVerdict::separable_consistent && anti.conclusive,
              "anti-correlated marginal not PPT-separable");
    const auto aligned = ppt_check(
        internal_charge_marginal(reg, hybrid_pair_state(alpha, beta, true)), cut);
    const double bound = -std::abs(alpha * beta);
    o.require(aligned.verdict == PptVerdict::entangled, "aligned marginal not entangled");
    o.require(aligned.min_eigenvalue <= bound + 1e-9,
              "aligned min eigenvalue " + std::to_string(aligned.min_eigenvalue));
    worst_gap = std::max(worst_gap, std::abs(aligned.min_eigenvalue - bound));
  }
  const auto maximal = ppt_check(
      internal_charge_marginal(reg, hybrid_pair_state(h, h, true)), cut);
  o.require(std::abs(maximal.min_eigenvalue + 0.5) <= 1e-9,
            "alpha=beta min eigenvalue " + std::to_string(maximal.min_eigenvalue));
  if (o.pass) {
    o.detail = "51 draws, min eigenvalue -|ab| within " + sci(worst_gap) +
               ", -1/2 at alpha=beta";
  }
  return o;
}

Outcome round_trip_determinism() {
  Outcome o;
  const auto dir = scratch("determinism");
  std::mt19937_64 rng(31337);
  const std::vector<SpeciesRegistry> registries{electron_positron_registry(2),
                                                neutral_registry(), color_toy_registry()};
  int states = 0;
  for (int i = 0; i < 300; ++i) {
    const auto& reg = registries[static_cast<std::size_t>(i) % registries.size()];
    const auto s = oracle::random_sector_state(reg, 1 + static_cast<std::size_t>(rng() % 3), rng)
                       .scaled(std::ldexp(1.0, static_cast<int>(rng() % 40) - 20));
    io::save_state(dir / "s.json", s);
    const auto back = io::load_state(dir / "s.json", &reg);
    bool exact = back.size() == s.size() && back.registers() == s.registers();
    for (const auto& [b, a] : s.terms()) {
      const auto c = back.amplitude(b);
      exact = exact && std::memcmp(&a, &c, sizeof a) == 0;
    }
    o.require(exact, "state round trip not bit-exact");
    ++states;
  }

  const auto eplus = electron_positron_registry(2);
  for (std::uint64_t seed : {0ull, 5ull, 123456789ull}) {
    BuilderConfig cfg;
    cfg.rng_seed = seed;
    const auto a = build_packaged_entangled_basis(eplus, 3, SectorIndex{{1}}, cfg);
    const auto b = build_packaged_entangled_basis(eplus, 3, SectorIndex{{1}}, cfg);
    o.require(a.vectors == b.vectors, "builder output differs for seed " + std::to_string(seed));
    for (std::size_t k = 0; k < a.vectors.size(); ++k) {
      o.require(a.diagnostics[k].repairs.size() == b.diagnostics[k].repairs.size(),
                "repair log differs");
    }
  }

  io::save_registry(dir / "registry.json", electron_positron_registry(1));
  std::vector<std::string> reports, diagnostics, vectors;
  for (int run = 0; run < 2; ++run) {
    const auto out = dir / ("basis" + std::to_string(run));
    const auto r = cli_run({"basis", "--registry", (dir / "registry.json").string(),
                            "--registers", "5", "--charge", "1", "--seed", "42",
                            "--out", out.string(), "--json"});
    o.require(r.code == 0, "basis exit code");
    auto j = json::parse(r.out);
    j["command"] = nullptr;  // differs only in the --out path
    reports.push_back(without_timestamp(j.dump(2)));
    std::ifstream d(out / "diagnostics.json");
    diagnostics.push_back(json::parse(d)["results"].dump());
    std::string all;
    for (std::size_t k = 0; k < 10; ++k) {
      char name[32];
      std::snprintf(name, sizeof name, "vector_%03zu.json", k);
      std::ifstream v(out / name);
      std::stringstream ss;
      ss << v.rdbuf();
      all += ss.str();
    }
    vectors.push_back(all);
  }
  o.require(reports[0] == reports[1], "basis reports differ");
  o.require(diagnostics[0] == diagnostics[1], "diagnostics differ");
  o.require(vectors[0] == vectors[1], "vector files differ");

  o.require(cli_run({"demo", "hybrid_pair", "--export-dir", dir.string()}).code == 0,
            "hybrid export");
  const std::vector<std::string> measure{"measure", "--registry",
                                         (dir / "registry.json").string(), "--state",
                                         (dir / "state.json").string(), "--register", "1",
                                         "--sample", "--seed", "8", "--json"};
  o.require(without_timestamp(cli_run(measure).out) == without_timestamp(cli_run(measure).out),
            "measure reports differ");
  fs::remove_all(dir);
  if (o.pass) {
    o.detail = std::to_string(states) +
               " states bit-exact; builder, basis and measure reports reproducible";
  }
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"1 Bell-pair reproduction", bell_pairs},
      {"2 superselection enforcement", superselection},
      {"3 gauge covariance", gauge_covariance},
      {"4 entangled sector bases", entangled_bases},
      {"5 entanglement oracle equivalence", oracle_equivalence},
      {"6 measurement collapse", measurement_collapse},
      {"7 internal-marginal distinction", internal_marginal},
      {"8 round trip and determinism", round_trip_determinism},
  };
  int failures = 0;
  for (const auto& [name, check] : criteria) {
    const auto t0 = Clock::now();
    Outcome o;
    try {
      o = check();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    const double ms = seconds_since(t0) * 1000.0;
    failures += !o.pass;
    std::cout << (o.pass ? "PASS " : "FAIL ") << name << " (" << static_cast<long>(ms)
              << " ms): " << o.detail << std::endl;
  }
  std::cout << (failures == 0 ? "all criteria passed"
                              : std::to_string(failures) + " criterion(s) failed")
            << std::endl;
  return failures == 0 ? 0 : 1;
}
