#include "superselect/cli.hpp"

#include <unistd.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <iomanip>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "superselect/basis_builder.hpp"
#include "superselect/entanglement.hpp"
#include "superselect/io.hpp"
#include "superselect/measurement.hpp"
#include "superselect/report.hpp"
#include "superselect/scenarios.hpp"

namespace superselect::cli {

namespace {

namespace fs = std::filesystem;

struct Options {
  bool json = false;
  std::uint64_t seed = 0;
  std::string registry;
  std::string state;
  std::string out;
  bool normalize = false;

  std::string scenario;
  std::string alpha;
  std::string beta;
  std::string export_dir;

  std::size_t registers = 0;
  std::string charge;
  std::string species;
  int max_repairs = 64;

  std::string cut;
  bool marginal = false;

  std::size_t reg = 0;
  std::string observable = "spin-z";
  bool sample = false;

  double theta = 0.0;
  std::string component;
};

class Style {
 public:
  explicit Style(bool color) : color_(color) {}
  std::string good(const std::string& s) const { return wrap("32", s); }
  std::string bad(const std::string& s) const { return wrap("31", s); }
  std::string bold(const std::string& s) const { return wrap("1", s); }

 private:
  std::string wrap(const char* code, const std::string& s) const {
    return color_ ? "\x1b[" + std::string(code) + "m" + s + "\x1b[0m" : s;
  }
  bool color_;
};

bool want_color(const std::ostream& out, bool json) {
  if (json || std::getenv("SUPERSELECT_NO_COLOR") != nullptr) return false;
  return &out == &std::cout && ::isatty(STDOUT_FILENO) == 1;
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, sep)) parts.push_back(item);
  return parts;
}

std::int64_t parse_integer(const std::string& s, const std::string& what) {
  std::size_t used = 0;
  long long v = 0;
  try {
    v = std::stoll(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != s.size()) {
    throw ConfigurationError(what + ": '" + s + "' is not an integer");
  }
  return v;
}

double parse_real(const std::string& s, const std::string& what) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != s.size()) {
    throw ConfigurationError(what + ": '" + s + "' is not a number");
  }
  return v;
}

Amplitude parse_amplitude(const std::string& s, const std::string& what) {
  const auto parts = split(s, ',');
  if (parts.size() == 1) return {parse_real(parts[0], what), 0.0};
  if (parts.size() == 2) {
    return {parse_real(parts[0], what), parse_real(parts[1], what)};
  }
  throw ConfigurationError(what + ": expected RE or RE,IM");
}

std::string fixed(double x, int digits = 6) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(digits) << x;
  return os.str();
}

json sector_json(const SectorIndex& q) { return q.gauged_charges; }

json weights_json(const std::vector<std::pair<SectorIndex, double>>& w) {
  json out = json::array();
  for (const auto& [q, weight] : w) {
    out.push_back({{"sector", sector_json(q)}, {"weight", weight}});
  }
  return out;
}

json cut_json(const CutReport& c) {
  return {{"left", c.cut.left()},
          {"right", c.cut.right()},
          {"singular_values", c.schmidt.singular_values},
          {"rank", c.schmidt.rank},
          {"entropy", c.entropy},
          {"factorizes", c.schmidt.rank == 1}};
}

json ppt_json(const PptResult& r) {
  return {{"verdict", r.verdict == PptVerdict::entangled ? "entangled"
                                                          : "separable-consistent"},
          {"min_eigenvalue", r.min_eigenvalue},
          {"conclusive", r.conclusive},
          {"left_dimension", r.left_dimension},
          {"right_dimension", r.right_dimension}};
}

std::string values_text(const std::vector<double>& v) {
  std::string out = "[";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ", ";
    out += fixed(v[i]);
  }
  return out + "]";
}

SpeciesRegistry load_checked_registry(const Options& o, RunReport& report) {
  if (o.registry.empty()) throw ConfigurationError("--registry is required");
  report.add_input("registry", o.registry);
  auto registry = io::load_registry(o.registry);
  const auto violations = validate_registry(registry);
  if (!violations.empty()) {
    const auto& v = violations.front();
    throw SchemaError(o.registry + ": species '" + v.species + "' breaks '" +
                      v.invariant + "': " + v.detail);
  }
  return registry;
}

StateVector load_checked_state(const Options& o, const SpeciesRegistry& registry,
                               RunReport& report) {
  if (o.state.empty()) throw ConfigurationError("--state is required");
  report.add_input("state", o.state);
  return io::load_state(o.state, &registry, o.normalize);
}

Bipartition parse_cut(const std::string& text, std::size_t registers) {
  std::vector<std::size_t> left;
  for (const auto& part : split(text, ',')) {
    const auto k = parse_integer(part, "--cut");
    if (k < 0) throw DomainError("--cut: register indices are non-negative");
    left.push_back(static_cast<std::size_t>(k));
  }
  return Bipartition(registers, std::move(left));
}

// Each handler fills the report and appends a human summary to `text`.

int cmd_demo(const Options& o, RunReport& report, std::string& text,
             const Style& style) {
  ScenarioId id{parse_scenario(o.scenario)};
  if (!o.alpha.empty()) id.alpha = parse_amplitude(o.alpha, "--alpha");
  if (!o.beta.empty()) id.beta = parse_amplitude(o.beta, "--beta");
  const Scenario sc = build_scenario(id);
  const auto& ex = sc.expected;

  json expected = {{"entanglement_defined", ex.entanglement_defined},
                   {"flags", ex.flags}};
  expected["sector"] = ex.sector ? sector_json(*ex.sector) : json(nullptr);
  json violation = json::array();
  for (const auto& q : ex.violation_sectors) violation.push_back(sector_json(q));
  expected["violation_sectors"] = violation;
  expected["packaged_entangled"] =
      ex.packaged_entangled ? json(*ex.packaged_entangled) : json(nullptr);

  std::vector<std::string> mismatches;
  json observed;
  text += style.bold("scenario " + o.scenario) + "\n";

  const auto check = validate_superselection(sc.registry, sc.state);
  observed["superselection"] = {{"valid", check.valid()},
                                {"sectors", weights_json(check.weights)}};
  if (check.valid()) {
    observed["sector"] = sector_json(*check.sector);
    text += "  sector " + to_string(*check.sector) + "\n";
    if (!ex.sector || *ex.sector != *check.sector) {
      mismatches.push_back("sector");
    }
  } else {
    std::vector<SectorIndex> seen;
    text += "  superselection violation:";
    for (const auto& [q, w] : check.weights) {
      seen.push_back(q);
      text += " " + to_string(q) + " weight " + fixed(w);
    }
    text += "\n";
    if (seen != ex.violation_sectors) mismatches.push_back("violation_sectors");
  }

  if (check.valid() && sc.state.registers() >= 2) {
    const auto rep = analyze_entanglement(sc.registry, sc.state);
    json cuts = json::array();
    for (const auto& c : rep.cuts) {
      cuts.push_back(cut_json(c));
      text += "  cut " + c.cut.to_string() + ": schmidt " +
              values_text(c.schmidt.singular_values) + " rank " +
              std::to_string(c.schmidt.rank) + " entropy " + fixed(c.entropy) +
              "\n";
    }
    observed["cuts"] = cuts;
    observed["packaged_entangled"] = rep.every_cut;
    observed["entangled_somewhere"] = rep.some_cut;
    text += std::string("  packaged entangled: ") +
            (rep.every_cut ? "yes" : "no") + "\n";
    if (!ex.entanglement_defined || ex.packaged_entangled != rep.every_cut) {
      mismatches.push_back("packaged_entangled");
    }

    const auto marginal = internal_charge_marginal(sc.registry, sc.state);
    const auto ppt = ppt_check(marginal, Bipartition(sc.state.registers(), {0}));
    observed["internal_marginal_ppt"] = ppt_json(ppt);
  } else if (check.valid()) {
    observed["packaged_entangled"] = nullptr;
    text += "  entanglement undefined (single register)\n";
    if (ex.entanglement_defined) mismatches.push_back("entanglement_defined");
  }

  const auto conj = charge_conjugate(sc.registry, sc.state);
  const auto overlap = inner_product(sc.state, conj);
  observed["conjugation_overlap"] = {overlap.real(), overlap.imag()};

  if (!o.export_dir.empty()) {
    fs::create_directories(o.export_dir);
    io::save_registry(fs::path(o.export_dir) / "registry.json", sc.registry);
    io::save_state(fs::path(o.export_dir) / "state.json", sc.state);
    observed["exported"] = {"registry.json", "state.json"};
  }

  const bool verified = mismatches.empty();
  report.results() = {{"scenario", o.scenario},
                      {"expected", expected},
                      {"observed", observed},
                      {"mismatches", mismatches},
                      {"verified", verified}};
  text += verified ? "  " + style.good("verified") + "\n"
                   : "  " + style.bad("MISMATCH") + "\n";
  return verified ? kExitOk : kExitError;
}

int cmd_validate(const Options& o, RunReport& report, std::string& text,
                 const Style& style) {
  const auto registry = load_checked_registry(o, report);
  const auto s = load_checked_state(o, registry, report);
  const auto check = validate_superselection(registry, s);
  report.results() = {{"valid", check.valid()},
                      {"sectors", weights_json(check.weights)}};
  if (check.valid()) {
    report.results()["sector"] = sector_json(*check.sector);
    text += style.good("valid") + ": sector " + to_string(*check.sector) + "\n";
    return kExitOk;
  }
  report.results()["sector"] = nullptr;
  text += style.bad("superselection violation") + ":\n";
  for (const auto& [q, w] : check.weights) {
    text += "  sector " + to_string(q) + " weight " + fixed(w) + "\n";
  }
  return kExitSuperselection;
}

int cmd_basis(const Options& o, RunReport& report, std::string& text,
              const Style& style) {
  const auto registry = load_checked_registry(o, report);
  SectorIndex q;
  for (const auto& part : split(o.charge, ',')) {
    q.gauged_charges.push_back(parse_integer(part, "--charge"));
  }
  SpeciesSubset allowed;
  if (!o.species.empty()) allowed = split(o.species, ',');

  BuilderConfig cfg;
  cfg.rng_seed = o.seed;
  cfg.max_repair_attempts = o.max_repairs;
  const auto basis =
      build_packaged_entangled_basis(registry, o.registers, q, cfg, allowed);
  const auto findings = verify_basis(basis, registry);

  std::string charge_tag;
  for (auto c : q.gauged_charges) {
    charge_tag += (charge_tag.empty() ? "" : "_") + std::to_string(c);
  }
  const fs::path dir = o.out.empty()
                           ? fs::path("basis_n" + std::to_string(o.registers) +
                                      "_q" + charge_tag)
                           : fs::path(o.out);
  fs::create_directories(dir);

  json vectors = json::array();
  for (std::size_t k = 0; k < basis.vectors.size(); ++k) {
    std::ostringstream name;
    name << "vector_" << std::setw(3) << std::setfill('0') << k << ".json";
    io::save_state(dir / name.str(), basis.vectors[k]);
    const auto& d = basis.diagnostics[k];
    json repairs = json::array();
    for (const auto& r : d.repairs) {
      repairs.push_back({{"partner", r.partner},
                         {"angle", r.angle},
                         {"accepted", r.accepted}});
    }
    vectors.push_back({{"file", name.str()},
                       {"seeded_entangled", d.seeded_entangled},
                       {"entangled", d.entangled},
                       {"repairs", repairs}});
  }
  json found = json::array();
  for (const auto& f : findings) {
    found.push_back({{"kind", to_string(f.kind)},
                     {"index", f.index ? json(*f.index) : json(nullptr)},
                     {"detail", f.detail}});
  }
  report.results() = {{"sector", sector_json(q)},
                      {"registers", o.registers},
                      {"dimension", basis.vectors.size()},
                      {"degenerate", basis.degenerate},
                      {"separable", basis.separable},
                      {"vectors", vectors},
                      {"findings", found}};
  report.set_seed(o.seed);
  io::write_json_file(dir / "diagnostics.json", report.to_json(false));

  text += "sector " + to_string(q) + " over " + std::to_string(o.registers) +
          " registers: " + std::to_string(basis.vectors.size()) +
          " vectors written to " + dir.string() + "\n";
  if (basis.degenerate) {
    text += "  " + style.bad("degenerate sector") + ": " +
            std::to_string(basis.separable.size()) + " separable vector(s)\n";
  }
  text += findings.empty() ? "  " + style.good("verified") + "\n"
                           : "  " + style.bad(std::to_string(findings.size()) +
                                              " finding(s)") + "\n";
  return findings.empty() ? kExitOk : kExitError;
}

int cmd_entangle(const Options& o, RunReport& report, std::string& text,
                 const Style& style) {
  const auto registry = load_checked_registry(o, report);
  const auto s = load_checked_state(o, registry, report);
  const auto rep = analyze_entanglement(registry, s);

  json cuts = json::array();
  std::optional<Bipartition> chosen;
  if (!o.cut.empty()) {
    chosen = parse_cut(o.cut, s.registers());
    const auto r = schmidt(s, *chosen);
    CutReport c{*chosen, r, entanglement_entropy(s, *chosen)};
    cuts.push_back(cut_json(c));
  } else {
    for (const auto& c : rep.cuts) cuts.push_back(cut_json(c));
  }
  for (const auto& c : cuts) {
    text += "cut " + Bipartition(s.registers(), c["left"].get<std::vector<std::size_t>>()).to_string() +
            ": schmidt " + values_text(c["singular_values"].get<std::vector<double>>()) +
            " rank " + std::to_string(c["rank"].get<std::size_t>()) +
            " entropy " + fixed(c["entropy"].get<double>()) + "\n";
  }

  report.results() = {{"sector", sector_json(require_single_sector(registry, s))},
                      {"defined", rep.defined},
                      {"predicate", "every_cut"},
                      {"packaged_entangled", rep.every_cut},
                      {"entangled_somewhere", rep.some_cut},
                      {"cuts", cuts}};
  if (!rep.defined) {
    text += "entanglement undefined for a single register\n";
  } else {
    text += std::string("packaged entangled (every cut): ") +
            (rep.every_cut ? style.good("yes") : style.bad("no")) +
            "; entangled across some cut: " + (rep.some_cut ? "yes" : "no") + "\n";
  }

  if (o.marginal) {
    if (s.registers() < 2) {
      throw DomainError("--marginal needs at least two registers");
    }
    const auto cut = chosen ? *chosen : Bipartition(s.registers(), {0});
    const auto rho = internal_charge_marginal(registry, s);
    const auto ppt = ppt_check(rho, cut);
    report.results()["internal_marginal"] = {
        {"cut", cut.to_string()}, {"dimension", rho.dimension()}, {"ppt", ppt_json(ppt)}};
    text += "internal marginal across " + cut.to_string() + ": " +
            (ppt.verdict == PptVerdict::entangled ? "entangled" : "separable-consistent") +
            " (min partial-transpose eigenvalue " + fixed(ppt.min_eigenvalue) + ")" +
            (ppt.conclusive ? "" : " [inconclusive]") + "\n";
  }
  return kExitOk;
}

int cmd_measure(const Options& o, RunReport& report, std::string& text,
                const Style&) {
  const auto registry = load_checked_registry(o, report);
  const auto s = load_checked_state(o, registry, report);
  SpinObservable obs;
  if (o.observable == "spin-z") {
    obs = SpinObservable::spin_z(registry, o.reg);
  } else if (o.observable == "spin-x") {
    obs = SpinObservable::spin_x(registry, o.reg);
  } else {
    throw ConfigurationError("--observable: expected spin-z or spin-x, got '" +
                             o.observable + "'");
  }

  auto record_json = [&](const MeasurementRecord& r, const std::string& tag) {
    json j = {{"outcome", r.outcome},
              {"probability", r.probability},
              {"post_sector", sector_json(read_total_charge(registry, r.post_state))}};
    if (!o.out.empty()) {
      fs::create_directories(o.out);
      const std::string name = tag + std::to_string(r.outcome) + ".json";
      io::save_state(fs::path(o.out) / name, r.post_state);
      j["post_state_file"] = name;
    } else {
      j["post_state"] = io::state_to_json(r.post_state);
    }
    return j;
  };

  const auto records = measure_spin(registry, s, obs);
  json list = json::array();
  for (const auto& r : records) {
    list.push_back(record_json(r, "post_outcome_"));
    text += "outcome " + std::to_string(r.outcome) + ": p = " +
            fixed(r.probability, 9) + ", post state " +
            std::to_string(r.post_state.size()) + " term(s)\n";
  }
  report.results() = {{"register", o.reg},
                      {"observable", o.observable},
                      {"sector", sector_json(read_total_charge(registry, s))},
                      {"records", list}};
  if (o.sample) {
    const auto r = sample_measurement(registry, s, obs, o.seed);
    report.results()["sample"] = record_json(r, "sample_outcome_");
    text += "sampled outcome " + std::to_string(r.outcome) + " (seed " +
            std::to_string(o.seed) + ")\n";
  }
  return kExitOk;
}

void emit_state(const Options& o, RunReport& report, const StateVector& s,
                std::string& text) {
  if (!o.out.empty()) {
    io::save_state(o.out, s);
    report.results()["state_file"] = o.out;
    text += "wrote " + o.out + "\n";
  } else {
    report.results()["state"] = io::state_to_json(s);
    for (const auto& [b, a] : s.terms()) {
      text += "  " + to_string(b) + "  " + fixed(a.real(), 9) + " " +
              fixed(a.imag(), 9) + "i\n";
    }
  }
}

int cmd_conjugate(const Options& o, RunReport& report, std::string& text,
                  const Style&) {
  const auto registry = load_checked_registry(o, report);
  const auto s = load_checked_state(o, registry, report);
  const auto c = charge_conjugate(registry, s);
  const auto overlap = inner_product(s, c);
  report.results() = {{"overlap", {overlap.real(), overlap.imag()}}};
  text += "<psi|C psi> = " + fixed(overlap.real(), 9) + " " +
          fixed(overlap.imag(), 9) + "i\n";
  emit_state(o, report, c, text);
  return kExitOk;
}

int cmd_gauge(const Options& o, RunReport& report, std::string& text,
              const Style&) {
  const auto registry = load_checked_registry(o, report);
  const auto s = load_checked_state(o, registry, report);
  const auto g = apply_u1_gauge(registry, s, o.component, o.theta);
  report.results() = {{"component", o.component}, {"theta", o.theta}};
  text += "gauge rotation by " + fixed(o.theta) + " in '" + o.component + "'\n";
  emit_state(o, report, g, text);
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  Options o;
  CLI::App app{"Superselection-aware simulator of packaged multi-particle states",
               std::string(kToolName)};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_flag("--json", o.json, "Emit the full JSON run report");

  auto add_io = [&](CLI::App* sub) {
    sub->add_option("--registry", o.registry, "Registry JSON file")->required();
    sub->add_option("--state", o.state, "State JSON file")->required();
    sub->add_flag("--normalize", o.normalize, "Renormalize the loaded state");
  };

  auto* demo = app.add_subcommand("demo", "Build a canned scenario and verify it");
  demo->add_option("scenario", o.scenario, "Scenario name")->required();
  demo->add_option("--alpha", o.alpha, "First amplitude, RE or RE,IM");
  demo->add_option("--beta", o.beta, "Second amplitude, RE or RE,IM");
  demo->add_option("--export-dir", o.export_dir,
                   "Write registry.json and state.json here");

  auto* validate = app.add_subcommand("validate", "Check superselection");
  add_io(validate);

  auto* basis = app.add_subcommand("basis", "Build an entangled sector basis");
  basis->add_option("--registry", o.registry, "Registry JSON file")->required();
  basis->add_option("--registers", o.registers, "Register count")->required();
  basis->add_option("--charge", o.charge, "Gauged charges, comma separated")
      ->required();
  basis->add_option("--species", o.species, "Allowed species, comma separated");
  basis->add_option("--seed", o.seed, "Random seed");
  basis->add_option("--max-repairs", o.max_repairs, "Repair attempts per vector");
  basis->add_option("--out", o.out, "Output directory");

  auto* entangle = app.add_subcommand("entangle", "Schmidt analysis");
  add_io(entangle);
  entangle->add_option("--cut", o.cut, "Left registers, comma separated");
  entangle->add_flag("--marginal", o.marginal,
                     "PPT test of the internal-charge marginal");

  auto* measure = app.add_subcommand("measure", "Projective spin measurement");
  add_io(measure);
  measure->add_option("--register", o.reg, "Measured register")->required();
  measure->add_option("--observable", o.observable, "spin-z or spin-x");
  measure->add_flag("--sample", o.sample, "Draw one outcome");
  measure->add_option("--seed", o.seed, "Random seed");
  measure->add_option("--out", o.out, "Directory for post-measurement states");

  auto* conjugate = app.add_subcommand("conjugate", "Apply charge conjugation");
  add_io(conjugate);
  conjugate->add_option("--out", o.out, "Output state file");

  auto* gauge = app.add_subcommand("gauge", "Apply a U(1) gauge rotation");
  add_io(gauge);
  gauge->add_option("--theta", o.theta, "Angle in radians")->required();
  gauge->add_option("--component", o.component, "Gauged component name")
      ->required();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitError;
  }

  std::vector<std::string> command{std::string(kToolName)};
  command.insert(command.end(), args.begin(), args.end());
  RunReport report(command, o.seed);
  const Style style(want_color(out, o.json));
  std::string text;

  int code = kExitError;
  try {
    if (*demo) code = cmd_demo(o, report, text, style);
    else if (*validate) code = cmd_validate(o, report, text, style);
    else if (*basis) code = cmd_basis(o, report, text, style);
    else if (*entangle) code = cmd_entangle(o, report, text, style);
    else if (*measure) code = cmd_measure(o, report, text, style);
    else if (*conjugate) code = cmd_conjugate(o, report, text, style);
    else if (*gauge) code = cmd_gauge(o, report, text, style);
  } catch (const SuperselectionError& e) {
    code = kExitSuperselection;
    report.results() = {{"superselection_violation", weights_json(e.weights())}};
    text = style.bad("superselection violation") + ": " + e.what() + "\n";
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitError;
  } catch (const fs::filesystem_error& e) {
    err << "error: " << e.what() << "\n";
    return kExitError;
  }

  report.set_exit_code(code);
  if (o.json) {
    out << report.dump() << "\n";
  } else {
    out << text;
  }
  return code;
}

}  // namespace superselect::cli
