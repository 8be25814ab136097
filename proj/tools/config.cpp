#include "config.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <set>
#include <sstream>

#include "hecke/error.hpp"

namespace hecke::cli {

namespace {

std::string child(const std::string& ptr, const std::string& key) { return ptr + "/" + key; }
std::string child(const std::string& ptr, std::size_t i) { return ptr + "/" + std::to_string(i); }

long get_long(const Json& j, const std::string& ptr) {
  if (!j.is_number_integer()) throw ConfigError(ptr, "expected an integer, got " + j.dump());
  return j.get<long>();
}

const Json& get_array(const Json& j, const std::string& ptr) {
  if (!j.is_array()) throw ConfigError(ptr, "expected an array, got " + j.dump());
  return j;
}

void only_keys(const Json& j, const std::string& ptr, std::initializer_list<const char*> keys) {
  if (!j.is_object()) throw ConfigError(ptr, "expected an object, got " + j.dump());
  for (const auto& [key, value] : j.items()) {
    if (std::none_of(keys.begin(), keys.end(), [&](const char* k) { return key == k; })) {
      throw ConfigError(child(ptr, key), "unknown key");
    }
  }
}

std::vector<Elem> get_elements(const Json& j, const std::string& ptr, const FiniteGroup& g) {
  std::vector<Elem> out;
  get_array(j, ptr);
  for (std::size_t i = 0; i < j.size(); ++i) {
    long x = get_long(j[i], child(ptr, i));
    if (x < 0 || x >= g.order()) throw ConfigError(child(ptr, i), "element " + std::to_string(x) + " out of range");
    out.push_back(static_cast<Elem>(x));
  }
  return out;
}

// Library errors raised while building an object become ConfigErrors at ptr.
template <class F>
auto at(const std::string& ptr, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const ConfigError&) {
    throw;
  } catch (const Error& e) {
    throw ConfigError(ptr, e.what());
  }
}

GroupPtr parse_group(const Json& j, const std::string& ptr) {
  if (!j.is_object() || j.size() != 1) {
    throw ConfigError(ptr, "a group is an object with one of cyclic, symmetric, table, product, semidirect");
  }
  const std::string kind = j.begin().key();
  const Json& body = j.begin().value();
  const std::string p = child(ptr, kind);
  if (kind == "cyclic") {
    long n = get_long(body, p);
    if (n < 1 || n > kMaxGroupOrder) throw ConfigError(p, "order must be in 1.." + std::to_string(kMaxGroupOrder));
    return FiniteGroup::cyclic(static_cast<int>(n));
  }
  if (kind == "symmetric") {
    long n = get_long(body, p);
    return at(p, [&] { return FiniteGroup::symmetric(static_cast<int>(n)); });
  }
  if (kind == "table") {
    get_array(body, p);
    std::vector<std::vector<Elem>> rows;
    const long n = static_cast<long>(body.size());
    if (n < 1 || n > kMaxGroupOrder) throw ConfigError(p, "table size out of range");
    for (std::size_t r = 0; r < body.size(); ++r) {
      const std::string pr = child(p, r);
      get_array(body[r], pr);
      if (static_cast<long>(body[r].size()) != n) throw ConfigError(pr, "row length != table size");
      std::vector<Elem> row;
      for (std::size_t c = 0; c < body[r].size(); ++c) {
        long x = get_long(body[r][c], child(pr, c));
        if (x < 0 || x >= n) throw ConfigError(child(pr, c), "entry out of range");
        row.push_back(static_cast<Elem>(x));
      }
      rows.push_back(std::move(row));
    }
    return at(p, [&] { return FiniteGroup::from_table(std::move(rows)); });
  }
  if (kind == "product") {
    get_array(body, p);
    if (body.size() != 2) throw ConfigError(p, "a product takes two groups");
    GroupPtr a = parse_group(body[0], child(p, 0));
    GroupPtr b = parse_group(body[1], child(p, 1));
    return at(p, [&] { return FiniteGroup::product(*a, *b); });
  }
  if (kind == "semidirect") {
    only_keys(body, p, {"base", "automorphism", "order"});
    if (!body.contains("base") || !body.contains("automorphism") || !body.contains("order")) {
      throw ConfigError(p, "semidirect needs base, automorphism and order");
    }
    GroupPtr base = parse_group(body["base"], child(p, "base"));
    std::vector<Elem> aut = get_elements(body["automorphism"], child(p, "automorphism"), *base);
    long n = get_long(body["order"], child(p, "order"));
    if (n < 1) throw ConfigError(child(p, "order"), "order must be positive");
    return at(p, [&] { return FiniteGroup::semidirect(*base, aut, static_cast<int>(n)); });
  }
  throw ConfigError(p, "unknown group kind");
}

Subgroup parse_subgroup(const Json& j, const std::string& ptr, const GroupPtr& g) {
  if (j.is_string()) {
    if (j == "trivial") return Subgroup::trivial(g);
    if (j == "whole") return Subgroup::whole(g);
    throw ConfigError(ptr, "expected \"trivial\", \"whole\", a member list or {\"generators\": [...]}");
  }
  if (j.is_array()) {
    std::vector<Elem> members = get_elements(j, ptr, *g);
    return at(ptr, [&] { return Subgroup(g, members); });
  }
  if (j.is_object()) {
    only_keys(j, ptr, {"generators"});
    if (!j.contains("generators")) throw ConfigError(ptr, "missing generators");
    std::vector<Elem> gens = get_elements(j["generators"], child(ptr, "generators"), *g);
    return Subgroup::generated(g, gens);
  }
  throw ConfigError(ptr, "bad subgroup " + j.dump());
}

FieldElement parse_value(const Json& j, const std::string& ptr, const CyclotomicField& f) {
  if (j.is_number_integer()) return FieldElement(f, j.get<long>());
  if (j.is_string()) {
    return at(ptr, [&] { return FieldElement(f, parse_rational(j.get<std::string>())); });
  }
  if (j.is_object() && j.contains("root")) {
    only_keys(j, ptr, {"root"});
    const Json& r = get_array(j["root"], child(ptr, "root"));
    if (r.size() != 2) throw ConfigError(child(ptr, "root"), "root is [order, exponent]");
    long order = get_long(r[0], child(child(ptr, "root"), 0));
    long k = get_long(r[1], child(child(ptr, "root"), 1));
    if (order < 1) throw ConfigError(child(ptr, "root"), "order must be positive");
    return at(ptr, [&] { return root_of_unity(f, order).pow(((k % order) + order) % order); });
  }
  if (j.is_object() && j.contains("coefficients")) {
    only_keys(j, ptr, {"coefficients"});
    const std::string p = child(ptr, "coefficients");
    const Json& c = get_array(j["coefficients"], p);
    if (static_cast<int>(c.size()) != f.degree()) {
      throw ConfigError(p, "expected " + std::to_string(f.degree()) + " coefficients for Q(zeta_" +
                               std::to_string(f.conductor()) + ")");
    }
    std::vector<Rational> q;
    for (std::size_t i = 0; i < c.size(); ++i) {
      if (c[i].is_number_integer()) {
        q.push_back(Rational(c[i].get<long>()));
      } else if (c[i].is_string()) {
        q.push_back(at(child(p, i), [&] { return parse_rational(c[i].get<std::string>()); }));
      } else {
        throw ConfigError(child(p, i), "expected a rational");
      }
    }
    return FieldElement::from_coefficients(f, q);
  }
  throw ConfigError(ptr, "expected a rational, {\"root\": [order, k]} or {\"coefficients\": [...]}");
}

long cyclic_order(long p, long depth, const std::string& ptr) {
  long order = 1;
  for (long i = 0; i < depth; ++i) {
    order *= p;
    if (order > kMaxGroupOrder) throw ConfigError(ptr, "p^depth exceeds the group order cap");
  }
  return order;
}

bool is_prime(long p) {
  if (p < 2) return false;
  for (long d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

}  // namespace

bool RunConfig::wants(const std::string& suite) const {
  return suites.empty() || std::find(suites.begin(), suites.end(), suite) != suites.end();
}

InstancePtr RunConfig::instance() const {
  if (tower) return tower->ambient();
  if (!instance_) instance_ = HeckeInstance::create(normal, omega, rho, measure, name);
  return instance_;
}

std::uint64_t fnv1a(const std::string& text) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char ch : text) {
    h ^= ch;
    h *= 1099511628211ULL;
  }
  return h;
}

std::uint64_t RunConfig::hash() const { return fnv1a(echo.dump()); }

RunConfig parse_config(Json config, const Overrides& overrides) {
  only_keys(config, "", {"name", "description", "field", "group", "normal_subgroup", "omega", "rho", "measure",
                         "levels", "inclusions", "tower", "depth", "suites"});
  if (overrides.field_conductor) {
    if (*overrides.field_conductor < 1) throw ConfigError("/field/conductor", "conductor must be positive");
    config["field"] = Json::object({{"conductor", *overrides.field_conductor}});
  }
  if (overrides.depth) {
    if (*overrides.depth < 0) throw ConfigError("/depth", "depth must be nonnegative");
    config["depth"] = *overrides.depth;
  }

  RunConfig cfg;
  cfg.name = config.value("name", std::string("unnamed"));
  if (config.contains("suites")) {
    const Json& s = get_array(config["suites"], "/suites");
    for (std::size_t i = 0; i < s.size(); ++i) {
      if (!s[i].is_string()) throw ConfigError(child("/suites", i), "expected a suite name");
      cfg.suites.push_back(s[i].get<std::string>());
    }
  }
  std::optional<long> depth;
  if (config.contains("depth")) {
    depth = get_long(config["depth"], "/depth");
    if (*depth < 0) throw ConfigError("/depth", "depth must be nonnegative");
  }

  const std::optional<Json> tower = config.contains("tower") ? std::optional<Json>(config["tower"]) : std::nullopt;
  if (tower) only_keys(*tower, "/tower", {"cyclic", "chain", "twist"});
  const bool cyclic = tower && tower->contains("cyclic");

  if (cyclic) {
    for (const char* key : {"group", "normal_subgroup", "omega", "rho", "levels", "inclusions"}) {
      if (config.contains(key)) throw ConfigError(std::string("/") + key, "cyclic towers define their own instance");
    }
    const Json& c = (*tower)["cyclic"];
    only_keys(c, "/tower/cyclic", {"p", "depth"});
    if (!c.contains("p")) throw ConfigError("/tower/cyclic", "missing p");
    const long p = get_long(c["p"], "/tower/cyclic/p");
    if (!is_prime(p)) throw ConfigError("/tower/cyclic/p", std::to_string(p) + " is not prime");
    long d = c.contains("depth") ? get_long(c["depth"], "/tower/cyclic/depth") : 1;
    if (depth) d = *depth;
    if (d < 0) throw ConfigError("/tower/cyclic/depth", "depth must be nonnegative");
    const long order = cyclic_order(p, d, depth ? "/depth" : "/tower/cyclic/depth");
    if (!config.contains("field")) config["field"] = Json::object({{"conductor", order}});
    only_keys(config["field"], "/field", {"conductor"});
    const long m = get_long(config["field"]["conductor"], "/field/conductor");
    if (m < 1) throw ConfigError("/field/conductor", "conductor must be positive");
    cfg.field = &CyclotomicField::get(m);
    if (config.contains("measure")) throw ConfigError("/measure", "cyclic towers use the default measure");
    TowerPtr t = at("/tower/cyclic", [&] { return cyclic_tower(static_cast<int>(p), static_cast<int>(d), m); });
    if (tower->contains("twist")) {
      const Json& tw = (*tower)["twist"];
      only_keys(tw, "/tower/twist", {"unit"});
      if (!tw.contains("unit")) throw ConfigError("/tower/twist", "cyclic towers take {\"unit\": u}");
      const long u = get_long(tw["unit"], "/tower/twist/unit");
      if (u % p == 0) throw ConfigError("/tower/twist/unit", std::to_string(u) + " is not a unit mod " + std::to_string(p));
      cfg.unit = u;
      t = at("/tower/twist", [&] { return attach_unit_twist(t, u); });
    }
    cfg.tower = t;
    const InstancePtr& inst = t->ambient();
    cfg.group = inst->group_ptr();
    cfg.normal = inst->normal_subgroup();
    cfg.omega = inst->omega();
    cfg.rho = inst->rho();
    cfg.measure = inst->quotient_measure();
    cfg.levels = t->chain();
    cfg.echo = std::move(config);
    return cfg;
  }

  if (!config.contains("group")) throw ConfigError("/group", "missing group");
  cfg.group = parse_group(config["group"], "/group");
  long m = 1;
  if (config.contains("field")) {
    only_keys(config["field"], "/field", {"conductor"});
    if (config["field"].contains("conductor")) m = get_long(config["field"]["conductor"], "/field/conductor");
  }
  if (m < 1) throw ConfigError("/field/conductor", "conductor must be positive");
  cfg.field = &CyclotomicField::get(m);
  const CyclotomicField& f = *cfg.field;

  cfg.normal = config.contains("normal_subgroup")
                   ? parse_subgroup(config["normal_subgroup"], "/normal_subgroup", cfg.group)
                   : Subgroup::trivial(cfg.group);
  if (!cfg.normal.is_normal()) throw ConfigError("/normal_subgroup", cfg.normal.to_string() + " is not normal");

  std::vector<FieldElement> omega_values(cfg.normal.members().size(), FieldElement(f, 1));
  if (config.contains("omega")) {
    const Json& om = config["omega"];
    if (!om.is_object()) throw ConfigError("/omega", "omega maps element labels to values");
    for (const auto& [key, value] : om.items()) {
      const std::string p = child("/omega", key);
      long x = 0;
      try {
        std::size_t used = 0;
        x = std::stol(key, &used);
        if (used != key.size()) throw std::invalid_argument(key);
      } catch (const std::exception&) {
        throw ConfigError(p, "keys are element labels");
      }
      auto it = std::find(cfg.normal.members().begin(), cfg.normal.members().end(), static_cast<Elem>(x));
      if (it == cfg.normal.members().end()) throw ConfigError(p, "element " + key + " is not in N");
      omega_values[it - cfg.normal.members().begin()] = parse_value(value, p, f);
    }
  }
  cfg.omega = at("/omega", [&] { return NormalCharacter(cfg.normal, f, omega_values); });

  if (config.contains("rho")) {
    const Json& r = get_array(config["rho"], "/rho");
    if (static_cast<int>(r.size()) != cfg.group->order()) throw ConfigError("/rho", "one exponent per element");
    std::vector<long> exps;
    for (std::size_t i = 0; i < r.size(); ++i) exps.push_back(get_long(r[i], child("/rho", i)));
    cfg.rho = at("/rho", [&] { return RhoAction(cfg.group, f, exps); });
  } else {
    cfg.rho = RhoAction::trivial(cfg.group, f);
  }

  if (config.contains("measure")) {
    cfg.measure = parse_value(config["measure"], "/measure", CyclotomicField::get(1)).to_rational();
    if (cfg.measure <= 0) throw ConfigError("/measure", "the measure of Q must be positive");
  }

  if (config.contains("levels")) {
    const Json& ls = get_array(config["levels"], "/levels");
    for (std::size_t i = 0; i < ls.size(); ++i) cfg.levels.push_back(parse_subgroup(ls[i], child("/levels", i), cfg.group));
  } else if (!tower) {
    cfg.levels.push_back(Subgroup::trivial(cfg.group));
  }
  if (config.contains("inclusions")) {
    const Json& ls = get_array(config["inclusions"], "/inclusions");
    for (std::size_t i = 0; i < ls.size(); ++i) {
      Subgroup h = parse_subgroup(ls[i], child("/inclusions", i), cfg.group);
      if (!cfg.normal.is_subset_of(h)) throw ConfigError(child("/inclusions", i), "the subgroup must contain N");
      cfg.inclusions.push_back(std::move(h));
    }
  }

  if (tower) {
    if (config.contains("levels")) throw ConfigError("/levels", "a tower config takes its levels from the chain");
    if (!tower->contains("chain")) throw ConfigError("/tower", "missing chain");
    const Json& ch = get_array((*tower)["chain"], "/tower/chain");
    std::vector<Subgroup> chain;
    for (std::size_t i = 0; i < ch.size(); ++i) chain.push_back(parse_subgroup(ch[i], child("/tower/chain", i), cfg.group));
    if (chain.empty()) throw ConfigError("/tower/chain", "a tower needs at least one level");
    if (depth) {
      if (*depth >= static_cast<long>(chain.size())) throw ConfigError("/depth", "deeper than the configured chain");
      chain.resize(static_cast<std::size_t>(*depth) + 1);
    }
    std::optional<Twist> twist;
    if (tower->contains("twist")) {
      const Json& tw = (*tower)["twist"];
      only_keys(tw, "/tower/twist", {"phi", "rho_t"});
      if (!tw.contains("phi")) throw ConfigError("/tower/twist", "missing phi");
      std::vector<Elem> images = get_elements(tw["phi"], "/tower/twist/phi", *cfg.group);
      if (static_cast<int>(images.size()) != cfg.group->order()) throw ConfigError("/tower/twist/phi", "one image per element");
      GroupHom phi = at("/tower/twist/phi", [&] { return GroupHom(cfg.group, cfg.group, images); });
      const long rho_t = tw.contains("rho_t") ? get_long(tw["rho_t"], "/tower/twist/rho_t") : 1;
      twist = Twist{phi, rho_t};
    }
    InstancePtr inst = at("/omega", [&] { return cfg.instance(); });
    cfg.tower = at("/tower", [&] { return TowerSpec::create(inst, chain, twist, cfg.name); });
    cfg.levels = cfg.tower->chain();
  } else if (depth) {
    throw ConfigError("/depth", "depth applies to tower configurations only");
  }
  cfg.echo = std::move(config);
  return cfg;
}

Json load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path, "cannot open config file");
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    return Json::parse(buf.str());
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError(path + "@" + std::to_string(e.byte), e.what());
  }
}

namespace {

std::map<std::string, long> parse_params(const std::string& name, const std::string& text,
                                         const std::set<std::string>& allowed) {
  std::map<std::string, long> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    auto eq = item.find('=');
    if (eq == std::string::npos) throw ConfigError(name, "expected key=value, got '" + item + "'");
    std::string key = item.substr(0, eq);
    if (!allowed.count(key)) throw ConfigError(name, "unknown parameter '" + key + "'");
    try {
      std::size_t used = 0;
      out[key] = std::stol(item.substr(eq + 1), &used);
      if (used != item.size() - eq - 1) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw ConfigError(name, "parameter '" + key + "' is not an integer");
    }
  }
  return out;
}

}  // namespace

Json builtin_config(const std::string& name) {
  if (name == "plain-z4") {
    return Json::parse(R"({
      "name": "plain-z4",
      "description": "F[Z/4] over Q: trivial N, omega and rho",
      "field": {"conductor": 1},
      "group": {"cyclic": 4},
      "levels": ["whole", [0, 2], "trivial"],
      "inclusions": [[0, 2]]
    })");
  }
  if (name == "omega-sign") {
    return Json::parse(R"({
      "name": "omega-sign",
      "description": "Z/4 with N = {0,2} and omega(2) = -1",
      "field": {"conductor": 1},
      "group": {"cyclic": 4},
      "normal_subgroup": [0, 2],
      "omega": {"2": "-1"},
      "levels": ["trivial"],
      "inclusions": [[0, 2]]
    })");
  }
  if (name == "galois-twist") {
    return Json::parse(R"({
      "name": "galois-twist",
      "description": "Z/4 acting on Q(zeta_4) through complex conjugation",
      "field": {"conductor": 4},
      "group": {"cyclic": 4},
      "rho": [1, 3, 1, 3],
      "levels": [[0, 2], "trivial"]
    })");
  }
  if (name == "s3-invalid-omega") {
    return Json::parse(R"({
      "name": "s3-invalid-omega",
      "description": "omega on A_3 inside S_3 that is not conjugation invariant",
      "field": {"conductor": 3},
      "group": {"symmetric": 3},
      "normal_subgroup": {"generators": [3]},
      "omega": {"3": {"root": [3, 1]}, "4": {"root": [3, 2]}},
      "levels": ["trivial"]
    })");
  }
  for (const char* prefix : {"zp-twist:", "zp:"}) {
    const std::string pre(prefix);
    if (name.rfind(pre, 0) != 0) continue;
    const bool twisted = pre == "zp-twist:";
    auto params = twisted ? parse_params(name, name.substr(pre.size()), {"p", "u", "depth"})
                          : parse_params(name, name.substr(pre.size()), {"p", "depth"});
    if (!params.count("p")) throw ConfigError(name, "missing p");
    if (twisted && !params.count("u")) throw ConfigError(name, "missing u");
    Json cyc = Json::object({{"p", params["p"]}, {"depth", params.count("depth") ? params["depth"] : 1}});
    Json tower = Json::object({{"cyclic", cyc}});
    if (twisted) tower["twist"] = Json::object({{"unit", params["u"]}});
    return Json::object({{"name", name}, {"tower", tower}});
  }
  throw ConfigError(name, "unknown built-in example; known: plain-z4, omega-sign, galois-twist, s3-invalid-omega, "
                          "zp:p=P,depth=N, zp-twist:p=P,u=U,depth=N");
}

std::vector<std::string> builtin_names() {
  return {"plain-z4", "omega-sign", "galois-twist", "s3-invalid-omega", "zp:p=3,depth=2", "zp-twist:p=3,u=2,depth=3"};
}

}  // namespace hecke::cli
