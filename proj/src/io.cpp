#include "superselect/io.hpp"

#include <fstream>
#include <set>
#include <sstream>

namespace superselect::io {

namespace {

[[noreturn]] void fail(const std::string& field, const std::string& what) {
  throw SchemaError(field + ": " + what);
}

const json& member(const json& obj, const char* key, const std::string& path) {
  if (!obj.is_object()) fail(path, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) fail(path + "." + key, "missing");
  return *it;
}

std::string text(const json& obj, const char* key, const std::string& path) {
  const auto& v = member(obj, key, path);
  if (!v.is_string()) fail(path + "." + key, "expected a string");
  return v.get<std::string>();
}

std::int64_t integer(const json& v, const std::string& path) {
  if (!v.is_number_integer()) fail(path, "expected an integer");
  return v.get<std::int64_t>();
}

double real(const json& v, const std::string& path) {
  if (!v.is_number()) fail(path, "expected a number");
  return v.get<double>();
}

}  // namespace

SpeciesRegistry registry_from_json(const json& j) {
  const auto& specs = member(j, "charge_specs", "registry");
  if (!specs.is_array()) fail("charge_specs", "expected an array");
  std::vector<ChargeComponentSpec> components;
  for (std::size_t i = 0; i < specs.size(); ++i) {
    const std::string path = "charge_specs[" + std::to_string(i) + "]";
    ChargeComponentSpec c;
    c.name = text(specs[i], "name", path);
    const auto kind = text(specs[i], "kind", path);
    if (kind == "gauged") {
      c.kind = ChargeKind::gauged;
    } else if (kind == "global") {
      c.kind = ChargeKind::global;
    } else {
      fail(path + ".kind", "expected \"gauged\" or \"global\", got \"" + kind + "\"");
    }
    if (specs[i].contains("unit")) c.unit = text(specs[i], "unit", path);
    components.push_back(std::move(c));
  }

  const auto& list = member(j, "species", "registry");
  if (!list.is_array()) fail("species", "expected an array");
  std::vector<Species> species;
  for (std::size_t i = 0; i < list.size(); ++i) {
    const std::string path = "species[" + std::to_string(i) + "]";
    Species s;
    s.id = text(list[i], "id", path);
    const auto& charges = member(list[i], "charges", path);
    if (!charges.is_array()) fail(path + ".charges", "expected an array");
    std::vector<std::int64_t> q;
    for (std::size_t c = 0; c < charges.size(); ++c) {
      q.push_back(integer(charges[c], path + ".charges[" + std::to_string(c) + "]"));
    }
    if (q.size() != components.size()) {
      fail(path + ".charges", "has " + std::to_string(q.size()) +
                                  " entries, expected " +
                                  std::to_string(components.size()));
    }
    s.charges = ChargeVector(std::move(q));
    const auto mult = integer(member(list[i], "spin_multiplicity", path),
                              path + ".spin_multiplicity");
    if (mult < 1) fail(path + ".spin_multiplicity", "must be at least 1");
    s.spin_multiplicity = static_cast<int>(mult);
    s.conjugate_id = text(list[i], "conjugate_id", path);
    species.push_back(std::move(s));
  }
  return SpeciesRegistry(std::move(components), std::move(species));
}

json registry_to_json(const SpeciesRegistry& registry) {
  json specs = json::array();
  for (const auto& c : registry.charge_specs()) {
    specs.push_back({{"name", c.name},
                     {"kind", std::string(to_string(c.kind))},
                     {"unit", c.unit}});
  }
  json species = json::array();
  for (const auto& s : registry.species()) {
    species.push_back({{"id", s.id},
                       {"charges", s.charges.components()},
                       {"spin_multiplicity", s.spin_multiplicity},
                       {"conjugate_id", s.conjugate_id}});
  }
  return {{"charge_specs", specs}, {"species", species}};
}

StateVector state_from_json(const json& j, const SpeciesRegistry* registry,
                            bool normalize) {
  const auto n_raw = integer(member(j, "n", "state"), "n");
  if (n_raw < 1) fail("n", "must be at least 1");
  const auto n = static_cast<std::size_t>(n_raw);

  const auto& list = member(j, "terms", "state");
  if (!list.is_array()) fail("terms", "expected an array");
  std::vector<std::pair<BasisState, Amplitude>> terms;
  std::set<BasisState> seen;
  for (std::size_t i = 0; i < list.size(); ++i) {
    const std::string path = "terms[" + std::to_string(i) + "]";
    const auto& labels = member(list[i], "labels", path);
    if (!labels.is_array()) fail(path + ".labels", "expected an array");
    if (labels.size() != n) {
      fail(path + ".labels", "has " + std::to_string(labels.size()) +
                                 " registers, expected n = " + std::to_string(n));
    }
    BasisState b;
    for (std::size_t k = 0; k < labels.size(); ++k) {
      const std::string lpath = path + ".labels[" + std::to_string(k) + "]";
      RegisterLabel label;
      label.species = text(labels[k], "species", lpath);
      label.spin = static_cast<int>(integer(member(labels[k], "spin", lpath),
                                            lpath + ".spin"));
      if (registry != nullptr) {
        if (!registry->contains(label.species)) {
          fail(lpath + ".species", "unknown species '" + label.species + "'");
        }
        const int mult = registry->at(label.species).spin_multiplicity;
        if (label.spin < 0 || label.spin >= mult) {
          fail(lpath + ".spin", "outside multiplicity " + std::to_string(mult));
        }
      }
      b.labels.push_back(std::move(label));
    }
    if (!seen.insert(b).second) fail(path, "duplicate basis state " + to_string(b));
    const double re = real(member(list[i], "re", path), path + ".re");
    const double im = real(member(list[i], "im", path), path + ".im");
    terms.emplace_back(std::move(b), Amplitude{re, im});
  }
  StateVector s(n, terms);
  if (normalize) {
    if (s.empty()) fail("terms", "cannot normalize the zero state");
    s = s.normalized();
  }
  return s;
}

json state_to_json(const StateVector& s) {
  json terms = json::array();
  for (const auto& [b, a] : s.terms()) {
    json labels = json::array();
    for (const auto& l : b.labels) {
      labels.push_back({{"species", l.species}, {"spin", l.spin}});
    }
    terms.push_back({{"labels", labels}, {"re", a.real()}, {"im", a.imag()}});
  }
  return {{"n", s.registers()}, {"terms", terms}};
}

json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw SchemaError(path.string() + ": cannot open file");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw SchemaError(path.string() + ": " + e.what());
  }
}

void write_json_file(const std::filesystem::path& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw SchemaError(path.string() + ": cannot write file");
  out << j.dump(2) << '\n';
}

SpeciesRegistry load_registry(const std::filesystem::path& path) {
  return registry_from_json(read_json_file(path));
}

void save_registry(const std::filesystem::path& path,
                   const SpeciesRegistry& registry) {
  write_json_file(path, registry_to_json(registry));
}

StateVector load_state(const std::filesystem::path& path,
                       const SpeciesRegistry* registry, bool normalize) {
  return state_from_json(read_json_file(path), registry, normalize);
}

void save_state(const std::filesystem::path& path, const StateVector& s) {
  write_json_file(path, state_to_json(s));
}

}  // namespace superselect::io
