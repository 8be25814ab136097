// Acceptance run: one [PASS]/[FAIL] line per criterion, nonzero exit on any failure.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "commands.hpp"
#include "fixtures.hpp"
#include "hecke/laurent.hpp"
#include "oracles.hpp"

using namespace hecke;
using Clock = std::chrono::steady_clock;

namespace {

/// Collects the first few failures of a criterion.
class Findings {
 public:
  void expect(bool ok, const std::string& what) {
    ++checks_;
    if (ok) return;
    if (failures_.size() < 5) failures_.push_back(what);
    ++failed_;
  }
  int checks() const { return checks_; }
  std::optional<std::string> verdict() const {
    if (failed_ == 0) return std::nullopt;
    std::ostringstream out;
    out << failed_ << " of " << checks_ << " checks failed";
    for (const auto& f : failures_) out << "; " << f;
    return out.str();
  }

 private:
  int checks_ = 0, failed_ = 0;
  std::vector<std::string> failures_;
};

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string label(const Subgroup& k) {
  std::ostringstream out;
  out << '{';
  for (std::size_t i = 0; i < k.members().size(); ++i) out << (i ? "," : "") << k.members()[i];
  out << '}';
  return out.str();
}

std::vector<Elem> largest_transversal(const Subgroup& nk) {
  LeftCosets c = left_cosets(nk);
  std::vector<Elem> out(c.transversal.size(), -1);
  for (Elem g = 0; g < nk.group().order(); ++g) out[c.coset_of[g]] = std::max(out[c.coset_of[g]], g);
  return out;
}

struct Corpus {
  InstancePtr instance;
  std::vector<Subgroup> levels;
  std::string name;
};

Corpus from_builtin(const std::string& name, cli::Overrides ov = {}) {
  cli::RunConfig cfg = cli::parse_config(cli::builtin_config(name), ov);
  return {cfg.instance(), cfg.levels, name};
}

/// Finite instances of the corpus: the valid built-ins plus the S_3 cases.
std::vector<Corpus> finite_corpus() {
  std::vector<Corpus> out = {from_builtin("plain-z4"), from_builtin("omega-sign"),
                             from_builtin("omega-sign", cli::Overrides{4, std::nullopt}), from_builtin("galois-twist")};
  out[2].name = "omega-sign@4";
  InstancePtr s3 = fixture::plain(FiniteGroup::symmetric(3), fixture::Qz(3));
  out.push_back({s3, {Subgroup::whole(s3->group_ptr()), Subgroup(s3->group_ptr(), {0, 3, 4}), Subgroup::trivial(s3->group_ptr())},
                 "s3-plain"});
  InstancePtr sign = fixture::s3_sign(fixture::Q());
  out.push_back({sign, {Subgroup::trivial(sign->group_ptr())}, "s3-sign"});
  return out;
}

/// Every level algebra of the corpus, including the Z_3 tower to depth 3.
std::vector<std::pair<std::string, LevelPtr>> corpus_levels(const TowerPtr& tower) {
  std::vector<std::pair<std::string, LevelPtr>> out;
  for (const Corpus& c : finite_corpus())
    for (const Subgroup& k : c.levels) out.emplace_back(c.name + " K=" + label(k), build_level(c.instance, k));
  for (int n = 0; n <= tower->depth(); ++n) out.emplace_back("zp-twist level " + std::to_string(n), tower->level_algebra(n));
  return out;
}

// 1 -------------------------------------------------------------------------

std::optional<std::string> ring_axioms(Findings& f) {
  for (const char* name : {"plain-z4", "omega-sign", "galois-twist"}) {
    const Corpus c = from_builtin(name);
    const InstancePtr& inst = c.instance;
    const FieldElement z = FieldElement::zeta(inst->field());
    for (const Subgroup& k : c.levels) {
      const std::string where = std::string(name) + " K=" + label(k);
      std::vector<HeckeElement> basis = fixture::coset_basis(inst, k);
      std::vector<HeckeElement> scaled;
      for (const auto& b : basis) scaled.push_back(scalar_act(z, b));
      for (const auto& a : basis)
        for (const auto& b : scaled)
          for (const auto& d : basis)
            f.expect(convolve(convolve(a, b), d) == convolve(a, convolve(b, d)), where + ": associativity");
      const HeckeElement one = unit_1k(inst, k);
      for (const auto& b : scaled) {
        f.expect(convolve(one, b) == b, where + ": left unit");
        f.expect(convolve(b, one) == b, where + ": right unit");
      }
      // two admissible levels and two transversals, and the defining sum
      for (const auto& a : basis)
        for (const auto& b : scaled) {
          const HeckeElement ref = convolve(a, b);
          const std::vector<FieldElement> naive = oracle::naive_product(*inst, a.values(), b.values());
          for (Elem x = 0; x < inst->group().order(); ++x) f.expect(ref(x) == naive[x], where + ": naive sum");
          for (const Subgroup& k2 : c.levels) {
            if (!k2.is_subset_of(k)) continue;
            const Subgroup nk = join(inst->normal_subgroup(), k2);
            f.expect(convolve_with(a, b, k2, left_cosets(nk).transversal) == ref, where + ": smallest transversal");
            f.expect(convolve_with(a, b, k2, largest_transversal(nk)) == ref, where + ": largest transversal");
          }
        }
    }
  }
  return f.verdict();
}

// 2 -------------------------------------------------------------------------

std::optional<std::string> crossed_product(Findings& f, const TowerPtr& tower) {
  for (const auto& [where, level] : corpus_levels(tower)) {
    IsoReport r = iso_check(*level);
    f.expect(r.ok && r.basis_independent && r.mismatches.empty(), where + ": iso_check");
  }
  const Corpus sign = from_builtin("omega-sign");
  const CPPtr a = build_level(sign.instance, sign.levels.front())->algebra();
  f.expect(a->order() == 2 && a->w(1, 1) == FieldElement(a->field(), -1), "omega-sign: w(1,1) = -1");
  const Corpus gal = from_builtin("galois-twist");
  for (const Subgroup& k : gal.levels) {
    const CPPtr g = build_level(gal.instance, k)->algebra();
    f.expect(!g->coefficients_central(), "galois-twist K=" + label(k) + ": c nontrivial");
  }
  return f.verdict();
}

// 3 -------------------------------------------------------------------------

std::optional<std::string> xi_multiplicative(Findings& f) {
  const TowerPtr t = attach_unit_twist(cyclic_tower(3, 2, 3), 2);
  const LevelAutPtr alpha = std::make_shared<const LevelAutomorphism>(t, 1);
  const CPPtr& a = alpha->algebra();
  const FieldElement z = FieldElement::zeta(a->field());
  std::vector<TwistedLaurentElement> ms;
  for (long n = -2; n <= 2; ++n)
    for (Elem d = 0; d < a->order(); ++d) {
      ms.push_back(TwistedLaurentElement::monomial(alpha, a->basis(d), n));
      ms.push_back(TwistedLaurentElement::monomial(alpha, z * a->basis(d), n));
    }
  for (const auto& x : ms)
    for (const auto& y : ms) f.expect(direct_convolve(xi(x), xi(y)) == xi(laurent_mul(x, y)), x.to_string() + " * " + y.to_string());
  return f.verdict();
}

// 4 -------------------------------------------------------------------------

std::optional<std::string> filtration(Findings& f, const TowerK0& tk) {
  const TowerPtr& t = tk.tower();
  for (int n = 0; n < t->depth(); ++n) {
    EmbeddingReport r = verify_embedding(t->embedding(n));
    f.expect(r.ok(), "embedding " + std::to_string(n) + ": " + r.first_failure);
  }
  for (int n = 0; n <= t->depth(); ++n) {
    auto v = decomposition_violation(*tk.decomposition(n));
    f.expect(!v, "level " + std::to_string(n) + ": " + v.value_or(""));
  }
  ColimitK0 c = colim_k0(tk, t->depth());
  f.expect(c.all_split, "colimit: some step is not split");
  for (const ColimitStep& s : c.steps) {
    const std::string where = "step " + std::to_string(s.from);
    bool unit_diagonal = s.snf.rank() == s.map.cols();
    for (const Integer& v : s.snf.diagonal())
      if (v != 0) unit_diagonal = unit_diagonal && v == 1;
    f.expect(unit_diagonal, where + ": SNF invariants are not all 1");
    f.expect(s.snf.left * s.map * s.snf.right == s.snf.S, where + ": SNF certificate");
    f.expect(s.left_inverse && IntegerMatrix(*s.left_inverse * s.map) == integer_identity(s.map.cols()),
             where + ": left inverse");
  }
  return f.verdict();
}

// 5 -------------------------------------------------------------------------

std::optional<std::string> maschke(Findings& f, const TowerPtr& tower) {
  for (const auto& [where, level] : corpus_levels(tower)) {
    MaschkeReport r = maschke_section(*level->algebra());
    f.expect(r.ok && r.vectors_checked > 0, where + ": " + r.first_failure);
  }
  return f.verdict();
}

// 6 -------------------------------------------------------------------------

std::optional<std::string> wang(Findings& f, const TowerK0& tk, WangResult& out) {
  out = wang_assemble(tk, 3);
  const int expected[] = {1, 2, 3, 4};
  long pn = 1;
  for (int n = 0; n <= 3; ++n) {
    const WangDepth& d = out.depths.at(n);
    const int orbits = oracle::dual_orbit_count(static_cast<int>(pn), 2);
    f.expect(orbits == expected[n], "oracle at depth " + std::to_string(n));
    f.expect(d.k0.free_rank == orbits,
             "depth " + std::to_string(n) + ": rank " + std::to_string(d.k0.free_rank) + " vs " + std::to_string(orbits));
    f.expect(d.k0.torsion.empty(), "depth " + std::to_string(n) + ": torsion");
    pn *= 3;
  }
  f.expect(out.torsion_free && out.bookkeeping_ok, "torsion-free / bookkeeping");
  return f.verdict();
}

// 7 -------------------------------------------------------------------------

std::optional<std::string> negative_k(Findings& f, const WangResult& depth3) {
  for (const char* name : {"plain-z4", "omega-sign", "galois-twist", "zp:p=3,depth=2", "zp-twist:p=3,u=2,depth=2"}) {
    for (const char* cmd : {"verify", "wang"}) {
      const bool tower = std::string(name).rfind("zp-twist", 0) == 0;
      if (std::string(cmd) == "wang" && !tower) continue;
      cli::Report r = cli::run_command(cmd, cli::parse_config(cli::builtin_config(name)), {});
      const Json& neg = r.results()["negative_k"];
      const std::string where = std::string(cmd) + " " + name;
      f.expect(r.exit_code() == 0, where + ": exit " + std::to_string(r.exit_code()));
      f.expect(neg.is_object() && neg.value("value", -1) == 0 && neg.value("range", "") == "n <= -1",
               where + ": record");
      f.expect(neg.is_object() && !neg.value("reason", "").empty() && !neg.value("anchor", "").empty(),
               where + ": reason and anchor");
    }
  }
  f.expect(depth3.negative.value == 0 && depth3.negative.range == "n <= -1" && !depth3.negative.reason.empty(),
           "wang_assemble depth 3 record");
  return f.verdict();
}

// 8 -------------------------------------------------------------------------

std::optional<std::string> functoriality(Findings& f) {
  GroupPtr z4 = FiniteGroup::cyclic(4), z2 = FiniteGroup::cyclic(2);
  for (const auto* field : {&fixture::Q(), &fixture::Qz(4)}) {
    InstancePtr target = fixture::plain(z4, *field);
    InstancePtr source = fixture::plain(z2, *field);
    GroupHom phi = GroupHom::inclusion(Subgroup(z4, {0, 2}), z2);
    auto v = pushforward_violation(phi, *source, *target);
    f.expect(!v, "precondition: " + v.value_or(""));
    const FieldElement z = FieldElement::zeta(*field);
    for (const Subgroup& k : {Subgroup::whole(z2), Subgroup::trivial(z2)}) {
      const Subgroup image = phi.image(k);
      f.expect(pushforward(phi, target, unit_1k(source, k)) == unit_1k(target, image), "unit of " + label(k));
      for (const Subgroup& k2 : {Subgroup::whole(z2), Subgroup::trivial(z2)})
        for (const auto& a : fixture::coset_basis(source, k))
          for (const auto& b0 : fixture::coset_basis(source, k2)) {
            const HeckeElement b = scalar_act(z, b0);
            f.expect(pushforward(phi, target, convolve(a, b)) ==
                         convolve(pushforward(phi, target, a), pushforward(phi, target, b)),
                     "basis pair at " + label(k) + ", " + label(k2));
          }
    }
  }
  return f.verdict();
}

// 9 -------------------------------------------------------------------------

std::optional<std::string> invalid_omega(Findings& f) {
  cli::RunConfig cfg = cli::parse_config(cli::builtin_config("s3-invalid-omega"));
  CharacterReport r = validate_normal_character(cfg.omega, cfg.rho);
  f.expect(!r.ok, "accepted");
  bool found = false;
  for (const CharacterViolation& v : r.violations) {
    if (v.condition != "conjugation-invariant") continue;
    found = true;
    f.expect(v.witness.size() == 2, "witness shape");
    if (v.witness.size() != 2) continue;
    const Elem g = v.witness[0], n = v.witness[1];
    f.expect(cfg.omega(cfg.group->conj(g, n)) != cfg.omega(n), "witness does not violate the identity");
  }
  f.expect(found, "no conjugation-invariance violation reported");
  f.expect(oracle::conjugation_counterexample(cfg.omega).has_value(), "brute-force scan finds no counterexample");
  f.expect(cli::run_command("verify", cfg, {}).exit_code() == 1, "verify does not exit 1");
  return f.verdict();
}

struct Outcome {
  bool pass;
  std::string line;
};

Outcome run(int id, const std::string& title, double limit_seconds, const std::function<std::optional<std::string>(Findings&)>& body) {
  Findings f;
  const auto t0 = Clock::now();
  std::optional<std::string> failure;
  try {
    failure = body(f);
  } catch (const std::exception& e) {
    failure = std::string("exception: ") + e.what();
  }
  const double secs = seconds_since(t0);
  if (!failure && limit_seconds > 0 && secs > limit_seconds) {
    std::ostringstream out;
    out << "took " << secs << " s, limit " << limit_seconds << " s";
    failure = out.str();
  }
  char timing[64];
  std::snprintf(timing, sizeof timing, "%.2f s", secs);
  std::ostringstream line;
  line << (failure ? "[FAIL] " : "[PASS] ") << id << ". " << title << " (" << f.checks() << " checks, " << timing << ")";
  if (failure) line << ": " << *failure;
  return {!failure, line.str()};
}

}  // namespace

int main() {
  const TowerPtr tower = attach_unit_twist(cyclic_tower(3, 3, 27), 2);
  const TowerK0 tk(tower);
  WangResult depth3;

  std::vector<Outcome> outcomes;
  const auto report = [&](Outcome o) {
    std::cout << o.line << std::endl;
    outcomes.push_back(std::move(o));
  };
  report(run(1, "Hecke ring axioms on plain-z4, omega-sign, galois-twist", 60, ring_axioms));
  report(run(2, "crossed-product identification on the corpus", 0, [&](Findings& f) { return crossed_product(f, tower); }));
  report(run(3, "xi multiplicative on level-1 monomials, |n| <= 2, u = 2", 10, xi_multiplicative));
  // the depth-3 decompositions are computed here and reused by criterion 6
  const auto shared_start = Clock::now();
  report(run(4, "filtration, corners and split injectivity in the Z_3 tower to depth 3", 0,
             [&](Findings& f) { return filtration(f, tk); }));
  const double decomposition_seconds = seconds_since(shared_start);
  report(run(5, "Maschke splitting on every corpus crossed product", 0, [&](Findings& f) { return maschke(f, tower); }));
  report(run(6, "Wang ranks 2, 3, 4 at depths 1, 2, 3 for u = 2 over Q(zeta_27)", 300 - decomposition_seconds,
             [&](Findings& f) { return wang(f, tk, depth3); }));
  report(run(7, "K_n = 0 for n <= -1 reported with its record", 0, [&](Findings& f) { return negative_k(f, depth3); }));
  report(run(8, "pushforward along {0,2} in Z/4 is multiplicative and unital on levels", 0, functoriality));
  report(run(9, "s3-invalid-omega rejected with a conjugation witness", 0, invalid_omega));

  int failed = 0;
  for (const Outcome& o : outcomes) failed += !o.pass;
  std::cout << (outcomes.size() - failed) << "/" << outcomes.size() << " criteria passed" << std::endl;
  return failed == 0 ? 0 : 1;
}
